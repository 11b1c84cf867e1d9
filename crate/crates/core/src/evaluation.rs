//! Confusion matrices, support-weighted precision/recall/F, stratified
//! cross-validation, cross-corpus evaluation and the two-corpus protocol.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classifiers::{predict, ClassifierConfig};
use crate::corpus_io::{Corpus, SentimentLabel};
use crate::error::{Error, Result};
use crate::features::{build_space, Dataset, FeatureConfig, FeatureSpace};
use crate::stats::{student_t_unpaired, TTestResult};

pub const DEFAULT_FOLDS: usize = 10;
pub const DEFAULT_SEED: u64 = 1;

/// Counts indexed `[gold][predicted]` in `SentimentLabel` order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub counts: [[u64; 4]; 4],
}

impl ConfusionMatrix {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (SentimentLabel, SentimentLabel)>) -> Self {
        let mut cm = Self::new();
        for (gold, predicted) in pairs {
            cm.record(gold, predicted);
        }
        cm
    }

    pub fn record(&mut self, gold: SentimentLabel, predicted: SentimentLabel) {
        self.counts[gold.index()][predicted.index()] += 1;
    }

    pub fn get(&self, gold: SentimentLabel, predicted: SentimentLabel) -> u64 {
        self.counts[gold.index()][predicted.index()]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    pub fn merge(&mut self, other: &ConfusionMatrix) {
        for (row, other_row) in self.counts.iter_mut().zip(&other.counts) {
            for (c, o) in row.iter_mut().zip(other_row) {
                *c += o;
            }
        }
    }

    pub fn accuracy(&self) -> f64 {
        let total = self.total();
        if total == 0 {
            return 0.0;
        }
        (0..4).map(|i| self.counts[i][i]).sum::<u64>() as f64 / total as f64
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ClassScores {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub support: u64,
}

/// Support-weighted averages.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct WeightedPrf {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

fn harmonic(p: f64, r: f64) -> f64 {
    if p + r > 0.0 {
        2.0 * p * r / (p + r)
    } else {
        0.0
    }
}

/// Per-class and weighted scores of a square count matrix (rows gold).
pub fn prf_from_counts(counts: &[Vec<u64>]) -> Result<(Vec<ClassScores>, WeightedPrf)> {
    let k = counts.len();
    if counts.iter().any(|row| row.len() != k) {
        return Err(Error::InvalidArgument(
            "confusion matrix must be square".into(),
        ));
    }
    let total: u64 = counts.iter().flatten().sum();
    if total == 0 {
        return Err(Error::EmptyMatrix);
    }
    let mut per_class = Vec::with_capacity(k);
    let mut weighted = WeightedPrf::default();
    for c in 0..k {
        let tp = counts[c][c];
        let support: u64 = counts[c].iter().sum();
        let predicted: u64 = counts.iter().map(|row| row[c]).sum();
        let precision = if predicted > 0 {
            tp as f64 / predicted as f64
        } else {
            0.0
        };
        let recall = if support > 0 {
            tp as f64 / support as f64
        } else {
            0.0
        };
        let f1 = harmonic(precision, recall);
        let w = support as f64 / total as f64;
        weighted.precision += w * precision;
        weighted.recall += w * recall;
        weighted.f1 += w * f1;
        per_class.push(ClassScores {
            precision,
            recall,
            f1,
            support,
        });
    }
    Ok((per_class, weighted))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LabeledScores {
    pub label: SentimentLabel,
    #[serde(flatten)]
    pub scores: ClassScores,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrfSummary {
    pub per_class: Vec<LabeledScores>,
    pub weighted: WeightedPrf,
}

pub fn weighted_prf(cm: &ConfusionMatrix) -> Result<PrfSummary> {
    let counts: Vec<Vec<u64>> = cm.counts.iter().map(|r| r.to_vec()).collect();
    let (per_class, weighted) = prf_from_counts(&counts)?;
    Ok(PrfSummary {
        per_class: SentimentLabel::ALL
            .into_iter()
            .zip(per_class)
            .map(|(label, scores)| LabeledScores { label, scores })
            .collect(),
        weighted,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    Cv,
    CrossCorpus,
}

impl Scheme {
    pub fn as_str(self) -> &'static str {
        match self {
            Scheme::Cv => "cv",
            Scheme::CrossCorpus => "cross_corpus",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub scheme: Scheme,
    pub train_name: String,
    pub test_name: String,
    pub classifier: String,
    pub feature_set: String,
    pub confusion: ConfusionMatrix,
    pub per_class: Vec<LabeledScores>,
    pub weighted: WeightedPrf,
}

struct Labels<'a> {
    scheme: Scheme,
    train: &'a str,
    test: &'a str,
    classifier: &'a str,
    feature_set: &'a str,
}

fn report(cm: ConfusionMatrix, labels: Labels) -> Result<EvalReport> {
    let summary = weighted_prf(&cm)?;
    Ok(EvalReport {
        scheme: labels.scheme,
        train_name: labels.train.to_string(),
        test_name: labels.test.to_string(),
        classifier: labels.classifier.to_string(),
        feature_set: labels.feature_set.to_string(),
        confusion: cm,
        per_class: summary.per_class,
        weighted: summary.weighted,
    })
}

/// Fold index of every row.
///
/// Rows are shuffled with `seed`, stably grouped by label and dealt round
/// robin, so fold sizes differ by at most one overall and per class. When the
/// smallest class has fewer than `k` rows the grouping step is skipped.
pub fn stratified_folds(labels: &[SentimentLabel], k: usize, seed: u64) -> Result<Vec<usize>> {
    if k < 2 || labels.len() < k {
        return Err(Error::InvalidFolds {
            folds: k,
            posts: labels.len(),
        });
    }
    let mut order: Vec<usize> = (0..labels.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));

    let mut counts = [0usize; 4];
    for l in labels {
        counts[l.index()] += 1;
    }
    let smallest = counts.iter().copied().filter(|&c| c > 0).min().unwrap_or(0);
    if smallest >= k {
        order.sort_by_key(|&i| labels[i].index());
    } else {
        log::warn!(
            "smallest class has {smallest} posts, fewer than {k} folds; using unstratified folds"
        );
    }
    let mut folds = vec![0; labels.len()];
    for (pos, &i) in order.iter().enumerate() {
        folds[i] = pos % k;
    }
    Ok(folds)
}

fn train_and_test(
    train: &Dataset,
    test: &Dataset,
    classifier: &ClassifierConfig,
) -> Result<ConfusionMatrix> {
    let model = classifier.train(train)?;
    let mut cm = ConfusionMatrix::new();
    for row in &test.rows {
        cm.record(row.label, predict(&model, &row.vector)?);
    }
    Ok(cm)
}

fn cv_matrix(
    dataset: &Dataset,
    classifier: &ClassifierConfig,
    k: usize,
    seed: u64,
) -> Result<ConfusionMatrix> {
    let labels: Vec<SentimentLabel> = dataset.rows.iter().map(|r| r.label).collect();
    let folds = stratified_folds(&labels, k, seed)?;
    let matrices = (0..k)
        .into_par_iter()
        .map(|fold| {
            let (test_idx, train_idx): (Vec<usize>, Vec<usize>) =
                (0..dataset.len()).partition(|&i| folds[i] == fold);
            train_and_test(
                &dataset.select(&train_idx),
                &dataset.select(&test_idx),
                classifier,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let mut pooled = ConfusionMatrix::new();
    for m in &matrices {
        pooled.merge(m);
    }
    Ok(pooled)
}

/// `k`-fold CV on an already vectorized dataset; metrics from the pooled matrix.
pub fn cross_validate_dataset(
    dataset: &Dataset,
    name: &str,
    feature_set: &str,
    classifier: &ClassifierConfig,
    k: usize,
    seed: u64,
) -> Result<EvalReport> {
    let cm = cv_matrix(dataset, classifier, k, seed)?;
    report(
        cm,
        Labels {
            scheme: Scheme::Cv,
            train: name,
            test: name,
            classifier: classifier.name(),
            feature_set,
        },
    )
}

/// `k`-fold CV with the feature space built over the whole corpus.
pub fn cross_validate(
    corpus: &Corpus,
    features: &FeatureConfig,
    classifier: &ClassifierConfig,
    k: usize,
    seed: u64,
) -> Result<EvalReport> {
    let space = build_space(features, &[corpus])?;
    let dataset = Dataset::from_corpora(&[corpus], &space)?;
    cross_validate_dataset(
        &dataset,
        &corpus.name,
        features.set.as_str(),
        classifier,
        k,
        seed,
    )
}

/// Train on one vectorized dataset, test on another over the same space.
pub fn cross_corpus_dataset(
    train: (&Dataset, &str),
    test: (&Dataset, &str),
    feature_set: &str,
    classifier: &ClassifierConfig,
) -> Result<EvalReport> {
    if train.0.space != test.0.space {
        return Err(Error::InvalidArgument(
            "train and test data use different feature spaces".into(),
        ));
    }
    let cm = train_and_test(train.0, test.0, classifier)?;
    report(
        cm,
        Labels {
            scheme: Scheme::CrossCorpus,
            train: train.1,
            test: test.1,
            classifier: classifier.name(),
            feature_set,
        },
    )
}

/// Train on all of `train`, test on all of `test`; the feature space is
/// built over both corpora.
pub fn cross_corpus_eval(
    train: &Corpus,
    test: &Corpus,
    features: &FeatureConfig,
    classifier: &ClassifierConfig,
) -> Result<EvalReport> {
    let space = build_space(features, &[train, test])?;
    let train_data = Dataset::from_corpora(&[train], &space)?;
    let test_data = Dataset::from_corpora(&[test], &space)?;
    cross_corpus_dataset(
        (&train_data, &train.name),
        (&test_data, &test.name),
        features.set.as_str(),
        classifier,
    )
}

/// The four train/test arrangements over corpora A and B.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProtocolScheme {
    AToB,
    ACv,
    BToA,
    BCv,
}

impl ProtocolScheme {
    pub const ALL: [ProtocolScheme; 4] = [
        ProtocolScheme::AToB,
        ProtocolScheme::ACv,
        ProtocolScheme::BToA,
        ProtocolScheme::BCv,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ProtocolScheme::AToB => "a_to_b",
            ProtocolScheme::ACv => "a_cv",
            ProtocolScheme::BToA => "b_to_a",
            ProtocolScheme::BCv => "b_cv",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ProtocolConfig {
    pub feature_sets: Vec<FeatureConfig>,
    pub classifiers: Vec<ClassifierConfig>,
    pub folds: usize,
    pub seed: u64,
}

impl Default for ProtocolConfig {
    fn default() -> Self {
        ProtocolConfig {
            feature_sets: Vec::new(),
            classifiers: ClassifierConfig::learners().to_vec(),
            folds: DEFAULT_FOLDS,
            seed: DEFAULT_SEED,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProtocolRow {
    pub scheme: ProtocolScheme,
    #[serde(flatten)]
    pub report: EvalReport,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignificanceTest {
    pub name: String,
    pub description: String,
    pub result: TTestResult,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProtocolReport {
    pub seed: u64,
    pub folds: usize,
    /// Majority baselines, one per scheme.
    pub baselines: Vec<ProtocolRow>,
    /// Every scheme × feature set × classifier cell.
    pub rows: Vec<ProtocolRow>,
    /// Highest weighted F per scheme and feature set.
    pub best: Vec<ProtocolRow>,
    pub significance: Vec<SignificanceTest>,
}

/// Best weighted scores per feature set (in feature-set order) for each scheme.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SchemeScores {
    pub a_to_b: Vec<WeightedPrf>,
    pub a_cv: Vec<WeightedPrf>,
    pub b_to_a: Vec<WeightedPrf>,
    pub b_cv: Vec<WeightedPrf>,
}

/// Unpaired t-tests comparing the corpora on precomputed best scores:
/// CV F of A vs B, CV F and precision pooled, cross-corpus F A→B vs B→A,
/// and cross-corpus recall B→A vs A→B.
pub fn significance_battery(scores: &SchemeScores) -> Result<Vec<SignificanceTest>> {
    let f = |v: &[WeightedPrf]| v.iter().map(|s| s.f1).collect::<Vec<_>>();
    let f_pr = |v: &[WeightedPrf]| {
        v.iter()
            .map(|s| s.f1)
            .chain(v.iter().map(|s| s.precision))
            .collect::<Vec<_>>()
    };
    let r = |v: &[WeightedPrf]| v.iter().map(|s| s.recall).collect::<Vec<_>>();
    let tests = [
        (
            "cv_f",
            "CV F-score, A vs B",
            f(&scores.a_cv),
            f(&scores.b_cv),
        ),
        (
            "cv_f_precision",
            "CV F-score and precision pooled, A vs B",
            f_pr(&scores.a_cv),
            f_pr(&scores.b_cv),
        ),
        (
            "cross_f",
            "cross-corpus F-score, A->B vs B->A",
            f(&scores.a_to_b),
            f(&scores.b_to_a),
        ),
        (
            "cross_recall",
            "cross-corpus recall, B->A vs A->B",
            r(&scores.b_to_a),
            r(&scores.a_to_b),
        ),
    ];
    tests
        .into_iter()
        .map(|(name, description, xs, ys)| {
            Ok(SignificanceTest {
                name: name.to_string(),
                description: description.to_string(),
                result: student_t_unpaired(&xs, &ys)?,
            })
        })
        .collect()
}

struct ProtocolData<'a> {
    a: Dataset,
    b: Dataset,
    a_name: &'a str,
    b_name: &'a str,
}

impl ProtocolData<'_> {
    fn run(
        &self,
        scheme: ProtocolScheme,
        feature_set: &str,
        classifier: &ClassifierConfig,
        folds: usize,
        seed: u64,
    ) -> Result<ProtocolRow> {
        let (a, b) = ((&self.a, self.a_name), (&self.b, self.b_name));
        let report = match scheme {
            ProtocolScheme::AToB => cross_corpus_dataset(a, b, feature_set, classifier),
            ProtocolScheme::BToA => cross_corpus_dataset(b, a, feature_set, classifier),
            ProtocolScheme::ACv => {
                cross_validate_dataset(a.0, a.1, feature_set, classifier, folds, seed)
            }
            ProtocolScheme::BCv => {
                cross_validate_dataset(b.0, b.1, feature_set, classifier, folds, seed)
            }
        }?;
        Ok(ProtocolRow { scheme, report })
    }
}

fn split(a: &Corpus, b: &Corpus, space: &FeatureSpace) -> Result<(Dataset, Dataset)> {
    Ok((
        Dataset::from_corpora(&[a], space)?,
        Dataset::from_corpora(&[b], space)?,
    ))
}

/// Runs the four schemes for every feature set and classifier, plus the
/// majority baselines. Each feature space is built once over both corpora.
pub fn run_protocol(a: &Corpus, b: &Corpus, config: &ProtocolConfig) -> Result<ProtocolReport> {
    let majority = ClassifierConfig::Majority;
    let empty = FeatureSpace::default();
    let (base_a, base_b) = split(a, b, &empty)?;
    let base = ProtocolData {
        a: base_a,
        b: base_b,
        a_name: &a.name,
        b_name: &b.name,
    };
    let baselines = ProtocolScheme::ALL
        .par_iter()
        .map(|&s| base.run(s, "none", &majority, config.folds, config.seed))
        .collect::<Result<Vec<_>>>()?;

    let mut rows = Vec::new();
    let mut best = Vec::new();
    let mut scores = SchemeScores::default();
    let learners: Vec<&ClassifierConfig> = config
        .classifiers
        .iter()
        .filter(|c| **c != ClassifierConfig::Majority)
        .collect();
    if !learners.is_empty() {
        for features in &config.feature_sets {
            let space = build_space(features, &[a, b])?;
            let (data_a, data_b) = split(a, b, &space)?;
            let data = ProtocolData {
                a: data_a,
                b: data_b,
                a_name: &a.name,
                b_name: &b.name,
            };
            let cells: Vec<(ProtocolScheme, &ClassifierConfig)> = ProtocolScheme::ALL
                .iter()
                .flat_map(|&s| learners.iter().map(move |&c| (s, c)))
                .collect();
            let results = cells
                .par_iter()
                .map(|&(s, c)| data.run(s, features.set.as_str(), c, config.folds, config.seed))
                .collect::<Result<Vec<_>>>()?;
            for scheme in ProtocolScheme::ALL {
                let top = results
                    .iter()
                    .filter(|r| r.scheme == scheme)
                    .fold(None::<&ProtocolRow>, |acc, r| match acc {
                        Some(b) if b.report.weighted.f1 >= r.report.weighted.f1 => Some(b),
                        _ => Some(r),
                    })
                    .expect("at least one learner");
                let slot = match scheme {
                    ProtocolScheme::AToB => &mut scores.a_to_b,
                    ProtocolScheme::ACv => &mut scores.a_cv,
                    ProtocolScheme::BToA => &mut scores.b_to_a,
                    ProtocolScheme::BCv => &mut scores.b_cv,
                };
                slot.push(top.report.weighted);
                best.push(top.clone());
            }
            rows.extend(results);
        }
    }
    let significance = if config.feature_sets.len() >= 2 && !learners.is_empty() {
        significance_battery(&scores)?
    } else {
        if !learners.is_empty() {
            log::warn!("significance tests need at least two feature sets; skipped");
        }
        Vec::new()
    };
    Ok(ProtocolReport {
        seed: config.seed,
        folds: config.folds,
        baselines,
        rows,
        best,
        significance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus_io::Post;
    use SentimentLabel::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn hand_computed_weighted_scores() {
        let cm = ConfusionMatrix::from_pairs([
            (Confusion, Confusion),
            (Confusion, Facts),
            (Facts, Facts),
        ]);
        let s = weighted_prf(&cm).unwrap();
        assert!(close(s.weighted.precision, 5.0 / 6.0));
        assert!(close(s.weighted.recall, 2.0 / 3.0));
        assert!(close(s.weighted.f1, 2.0 / 3.0));
        assert_eq!(
            s.per_class[Gratitude.index()].scores,
            ClassScores::default()
        );
    }

    #[test]
    fn perfect_predictions() {
        let cm = ConfusionMatrix::from_pairs(SentimentLabel::ALL.map(|l| (l, l)));
        let w = weighted_prf(&cm).unwrap().weighted;
        assert_eq!((w.precision, w.recall, w.f1), (1.0, 1.0, 1.0));
    }

    #[test]
    fn majority_rows_from_distributions() {
        let mut cm = ConfusionMatrix::new();
        for (label, n) in SentimentLabel::ALL.into_iter().zip([146u64, 494, 69, 261]) {
            cm.counts[label.index()][Facts.index()] = n;
        }
        let w = weighted_prf(&cm).unwrap().weighted;
        let got = format!("{:.3} {:.3} {:.3}", w.f1, w.precision, w.recall);
        assert_eq!(got, "0.114 0.072 0.269");
    }

    #[test]
    fn empty_matrix_is_an_error() {
        assert!(matches!(
            weighted_prf(&ConfusionMatrix::new()),
            Err(Error::EmptyMatrix)
        ));
        assert!(prf_from_counts(&[vec![1, 0]]).is_err());
    }

    #[test]
    fn folds_are_balanced_and_stratified() {
        let labels: Vec<SentimentLabel> = [(Confusion, 17), (Encouragement, 31), (Facts, 12)]
            .iter()
            .flat_map(|&(l, n)| std::iter::repeat_n(l, n))
            .collect();
        let folds = stratified_folds(&labels, 10, 7).unwrap();
        let mut sizes = [0usize; 10];
        let mut per_class = [[0usize; 10]; 4];
        for (i, &f) in folds.iter().enumerate() {
            sizes[f] += 1;
            per_class[labels[i].index()][f] += 1;
        }
        assert!(sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1);
        for class in [Confusion, Encouragement, Facts] {
            let c = per_class[class.index()];
            assert!(c.iter().max().unwrap() - c.iter().min().unwrap() <= 1);
        }
        assert_eq!(folds, stratified_folds(&labels, 10, 7).unwrap());
    }

    #[test]
    fn fold_errors_and_degradation() {
        assert!(stratified_folds(&[Facts; 5], 1, 0).is_err());
        assert!(stratified_folds(&[Facts; 5], 6, 0).is_err());
        let labels = [Facts, Facts, Facts, Facts, Gratitude];
        let folds = stratified_folds(&labels, 4, 0).unwrap();
        let mut sizes = [0; 4];
        for f in folds {
            sizes[f] += 1;
        }
        assert_eq!(sizes.iter().sum::<usize>(), 5);
        assert!(sizes.iter().all(|&s| s >= 1));
    }

    fn corpus(name: &str, counts: [usize; 4]) -> Corpus {
        let mut posts = Vec::new();
        for (label, n) in SentimentLabel::ALL.into_iter().zip(counts) {
            for i in 0..n {
                posts.push(Post {
                    id: format!("{name}-{label}-{i}"),
                    author_id: "u".into(),
                    topic_id: "t".into(),
                    text: format!("{label} word"),
                    label: Some(label),
                    annotations: None,
                });
            }
        }
        Corpus::new(name, posts).unwrap()
    }

    #[test]
    fn single_class_cv_is_perfect() {
        let c = corpus("one", [0, 0, 0, 12]);
        let r = cross_validate(
            &c,
            &FeatureConfig::new(crate::features::FeatureSet::Bow),
            &ClassifierConfig::Majority,
            10,
            1,
        )
        .unwrap();
        assert_eq!(r.weighted.f1, 1.0);
        assert_eq!(r.confusion.total(), 12);
    }

    #[test]
    fn baselines_only_without_learners() {
        let a = corpus("a", [11, 31, 12, 43]);
        let b = corpus("b", [14, 49, 10, 26]);
        let config = ProtocolConfig {
            feature_sets: vec![FeatureConfig::new(crate::features::FeatureSet::Bow)],
            classifiers: Vec::new(),
            ..ProtocolConfig::default()
        };
        let report = run_protocol(&a, &b, &config).unwrap();
        assert_eq!(report.baselines.len(), 4);
        assert!(report.rows.is_empty() && report.significance.is_empty());
        let a_to_b = &report.baselines[0].report;
        assert_eq!(a_to_b.confusion.get(Encouragement, Facts), 49);
    }

    #[test]
    fn protocol_is_deterministic() {
        let a = corpus("a", [11, 21, 12, 13]);
        let b = corpus("b", [14, 19, 10, 16]);
        let config = ProtocolConfig {
            feature_sets: vec![
                FeatureConfig::new(crate::features::FeatureSet::Bow),
                FeatureConfig::new(crate::features::FeatureSet::Selected),
            ],
            classifiers: vec![ClassifierConfig::Mnb { alpha: 1.0 }, ClassifierConfig::Gnb],
            folds: 5,
            seed: 3,
        };
        let r1 = run_protocol(&a, &b, &config).unwrap();
        let r2 = run_protocol(&a, &b, &config).unwrap();
        assert_eq!(r1, r2);
        assert_eq!(r1.rows.len(), 2 * 4 * 2);
        assert_eq!(r1.best.len(), 2 * 4);
        assert_eq!(r1.significance.len(), 4);
    }
}
