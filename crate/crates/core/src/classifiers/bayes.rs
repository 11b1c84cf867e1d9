use serde::{Deserialize, Serialize};

use super::{argmax, TrainedModel};
use crate::corpus_io::SentimentLabel;
use crate::error::{Error, Result};
use crate::features::{Dataset, SparseVector};

const VARIANCE_FLOOR: f64 = 1e-9;

/// Most frequent training label; ties go to the earlier label.
pub fn train_majority(dataset: &Dataset) -> Result<TrainedModel> {
    if dataset.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let counts = dataset.label_counts();
    let mut best = 0;
    for i in 1..counts.len() {
        if counts[i] > counts[best] {
            best = i;
        }
    }
    Ok(TrainedModel::Majority {
        label: SentimentLabel::ALL[best],
        dims: dataset.dims(),
    })
}

/// Log priors and per-class log term likelihoods.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultinomialModel {
    pub classes: Vec<SentimentLabel>,
    pub dims: usize,
    pub log_prior: Vec<f64>,
    /// `log_likelihood[c][term]`
    pub log_likelihood: Vec<Vec<f64>>,
}

impl MultinomialModel {
    /// Unnormalized log posterior per class.
    pub fn joint_log_likelihood(&self, v: &SparseVector) -> Vec<f64> {
        self.log_prior
            .iter()
            .zip(&self.log_likelihood)
            .map(|(prior, table)| {
                prior
                    + v.entries
                        .iter()
                        .map(|&(id, n)| n as f64 * table[id])
                        .sum::<f64>()
            })
            .collect()
    }

    pub fn predict(&self, v: &SparseVector) -> SentimentLabel {
        self.classes[argmax(&self.joint_log_likelihood(v))]
    }
}

fn check_non_empty(dataset: &Dataset) -> Result<Vec<SentimentLabel>> {
    if dataset.is_empty() {
        return Err(Error::EmptyDataset);
    }
    Ok(dataset.classes())
}

/// Row index -> position in `classes`.
fn class_positions(dataset: &Dataset, classes: &[SentimentLabel]) -> Vec<usize> {
    let mut pos = [usize::MAX; 4];
    for (i, c) in classes.iter().enumerate() {
        pos[c.index()] = i;
    }
    dataset.rows.iter().map(|r| pos[r.label.index()]).collect()
}

/// Multinomial naive Bayes with additive smoothing `alpha`.
pub fn train_mnb(dataset: &Dataset, alpha: f64) -> Result<TrainedModel> {
    let classes = check_non_empty(dataset)?;
    let dims = dataset.dims();
    let positions = class_positions(dataset, &classes);
    let mut docs = vec![0usize; classes.len()];
    let mut term_counts = vec![vec![0.0f64; dims]; classes.len()];
    for (row, &c) in dataset.rows.iter().zip(&positions) {
        docs[c] += 1;
        for &(id, n) in &row.vector.entries {
            term_counts[c][id] += n as f64;
        }
    }
    let n = dataset.len() as f64;
    let log_prior = docs.iter().map(|&d| (d as f64 / n).ln()).collect();
    let log_likelihood = term_counts
        .iter()
        .map(|counts| smoothed_log_table(counts, alpha))
        .collect();
    Ok(TrainedModel::Mnb(MultinomialModel {
        classes,
        dims,
        log_prior,
        log_likelihood,
    }))
}

fn smoothed_log_table(counts: &[f64], alpha: f64) -> Vec<f64> {
    let total: f64 = counts.iter().sum();
    let denom = (total + alpha * counts.len() as f64).ln();
    counts.iter().map(|&c| (c + alpha).ln() - denom).collect()
}

/// Pseudo-counts learned by the discriminative frequency estimate.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscriminativeCounts {
    pub classes: Vec<SentimentLabel>,
    /// `terms[c][term]`
    pub terms: Vec<Vec<f64>>,
    pub term_totals: Vec<f64>,
    pub class_weights: Vec<f64>,
}

impl DiscriminativeCounts {
    fn new(classes: Vec<SentimentLabel>, dims: usize) -> Self {
        let k = classes.len();
        DiscriminativeCounts {
            classes,
            terms: vec![vec![0.0; dims]; k],
            term_totals: vec![0.0; k],
            class_weights: vec![0.0; k],
        }
    }

    /// Class posteriors under the current pseudo-counts with add-one smoothing.
    fn posterior(&self, v: &SparseVector) -> Vec<f64> {
        let dims = self.terms.first().map_or(0, Vec::len) as f64;
        let k = self.classes.len() as f64;
        let weight_total: f64 = self.class_weights.iter().sum();
        let scores: Vec<f64> = (0..self.classes.len())
            .map(|c| {
                let prior = ((self.class_weights[c] + 1.0) / (weight_total + k)).ln();
                let denom = (self.term_totals[c] + dims).ln();
                prior
                    + v.entries
                        .iter()
                        .map(|&(id, n)| n as f64 * ((self.terms[c][id] + 1.0).ln() - denom))
                        .sum::<f64>()
            })
            .collect();
        let max = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let exp: Vec<f64> = scores.iter().map(|s| (s - max).exp()).collect();
        let z: f64 = exp.iter().sum();
        exp.into_iter().map(|e| e / z).collect()
    }

    /// One pass over the data in row order.
    fn pass(&mut self, dataset: &Dataset, positions: &[usize]) {
        for (row, &c) in dataset.rows.iter().zip(positions) {
            let weight = 1.0 - self.posterior(&row.vector)[c];
            if weight <= 0.0 {
                continue;
            }
            for &(id, n) in &row.vector.entries {
                self.terms[c][id] += weight * n as f64;
            }
            self.term_totals[c] += weight * row.vector.total() as f64;
            self.class_weights[c] += weight;
        }
    }

    pub fn train(dataset: &Dataset, iterations: usize) -> Result<Self> {
        let classes = check_non_empty(dataset)?;
        if iterations == 0 {
            return Err(Error::InvalidArgument("iterations must be >= 1".into()));
        }
        let positions = class_positions(dataset, &classes);
        let mut state = DiscriminativeCounts::new(classes, dataset.dims());
        for _ in 0..iterations {
            state.pass(dataset, &positions);
        }
        Ok(state)
    }

    pub fn to_model(&self) -> MultinomialModel {
        let k = self.classes.len() as f64;
        let weight_total: f64 = self.class_weights.iter().sum();
        MultinomialModel {
            classes: self.classes.clone(),
            dims: self.terms.first().map_or(0, Vec::len),
            log_prior: self
                .class_weights
                .iter()
                .map(|w| ((w + 1.0) / (weight_total + k)).ln())
                .collect(),
            log_likelihood: self
                .terms
                .iter()
                .map(|t| smoothed_log_table(t, 1.0))
                .collect(),
        }
    }
}

/// Discriminative multinomial naive Bayes.
///
/// Starting from zero pseudo-counts, each training document of class `c`
/// adds `(1 - P(c|d)) * count(w, d)` to the class-`c` count of every term
/// `w`, and `1 - P(c|d)` to the class weight, with `P(c|d)` taken from the
/// current counts. Documents already classified with certainty change nothing.
pub fn train_dmnb(dataset: &Dataset, iterations: usize) -> Result<TrainedModel> {
    Ok(TrainedModel::Dmnb(
        DiscriminativeCounts::train(dataset, iterations)?.to_model(),
    ))
}

/// Gaussian naive Bayes over raw counts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaussianModel {
    pub classes: Vec<SentimentLabel>,
    pub log_prior: Vec<f64>,
    pub means: Vec<Vec<f64>>,
    pub variances: Vec<Vec<f64>>,
}

impl GaussianModel {
    /// Log prior plus the sum of per-feature log densities, per class.
    pub fn joint_log_likelihood(&self, v: &SparseVector) -> Vec<f64> {
        let ln_2pi = (2.0 * std::f64::consts::PI).ln();
        (0..self.classes.len())
            .map(|c| {
                let (mu, var) = (&self.means[c], &self.variances[c]);
                let mut score = self.log_prior[c];
                let mut next = v.entries.iter().peekable();
                for j in 0..mu.len() {
                    let x = match next.peek() {
                        Some(&&(id, n)) if id == j => {
                            next.next();
                            n as f64
                        }
                        _ => 0.0,
                    };
                    score -= 0.5 * (ln_2pi + var[j].ln()) + (x - mu[j]).powi(2) / (2.0 * var[j]);
                }
                score
            })
            .collect()
    }

    pub fn predict(&self, v: &SparseVector) -> SentimentLabel {
        self.classes[argmax(&self.joint_log_likelihood(v))]
    }
}

pub fn train_gnb(dataset: &Dataset) -> Result<TrainedModel> {
    let classes = check_non_empty(dataset)?;
    let dims = dataset.dims();
    let positions = class_positions(dataset, &classes);
    let k = classes.len();
    let mut docs = vec![0usize; k];
    let mut sums = vec![vec![0.0f64; dims]; k];
    let mut squares = vec![vec![0.0f64; dims]; k];
    for (row, &c) in dataset.rows.iter().zip(&positions) {
        docs[c] += 1;
        for &(id, n) in &row.vector.entries {
            let x = n as f64;
            sums[c][id] += x;
            squares[c][id] += x * x;
        }
    }
    let n = dataset.len() as f64;
    let mut means = Vec::with_capacity(k);
    let mut variances = Vec::with_capacity(k);
    for c in 0..k {
        let nc = docs[c] as f64;
        let mu: Vec<f64> = sums[c].iter().map(|s| s / nc).collect();
        let var = squares[c]
            .iter()
            .zip(&mu)
            .map(|(sq, m)| (sq / nc - m * m).max(0.0).max(VARIANCE_FLOOR))
            .collect();
        means.push(mu);
        variances.push(var);
    }
    Ok(TrainedModel::Gnb(GaussianModel {
        classes,
        log_prior: docs.iter().map(|&d| (d as f64 / n).ln()).collect(),
        means,
        variances,
    }))
}
