//! Linear soft-margin SVM, one machine per class pair, solved by dual
//! coordinate descent on standardized features.
//!
//! Standardization `z = (x - mean) * scale` would make every row dense. The
//! solver keeps rows sparse by tracking the weight vector as
//! `v = a + beta * g` with `g_j = -mean_j * scale_j^2`, where only `a` gets
//! sparse updates, so one coordinate step costs `O(nnz)` of the row.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{argmax, TrainedModel};
use crate::corpus_io::SentimentLabel;
use crate::error::{Error, Result};
use crate::features::{Dataset, SparseVector};

/// Required duality gap of every binary problem.
pub const SVM_GAP_TOLERANCE: f64 = 1e-3;
const MAX_EPOCHS: usize = 20_000;

/// Decision function `f(x) = weights . x + bias` on raw counts, voting for
/// `positive` when `f(x) >= 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BinaryMachine {
    pub positive: SentimentLabel,
    pub negative: SentimentLabel,
    pub weights: Vec<f64>,
    pub bias: f64,
    pub duality_gap: f64,
    pub epochs: usize,
}

impl BinaryMachine {
    pub fn decision(&self, v: &SparseVector) -> f64 {
        self.bias
            + v.entries
                .iter()
                .map(|&(id, n)| self.weights[id] * n as f64)
                .sum::<f64>()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinearSvmModel {
    pub classes: Vec<SentimentLabel>,
    pub dims: usize,
    pub machines: Vec<BinaryMachine>,
}

impl LinearSvmModel {
    /// Pairwise vote counts, aligned with `classes`.
    pub fn votes(&self, v: &SparseVector) -> Vec<f64> {
        let mut votes = vec![0.0; self.classes.len()];
        for m in &self.machines {
            let winner = if m.decision(v) >= 0.0 {
                m.positive
            } else {
                m.negative
            };
            let pos = self.classes.iter().position(|&c| c == winner).unwrap();
            votes[pos] += 1.0;
        }
        votes
    }

    pub fn predict(&self, v: &SparseVector) -> SentimentLabel {
        self.classes[argmax(&self.votes(v))]
    }
}

/// Per-feature mean and inverse standard deviation (1 for constant features).
struct Standardizer {
    mean: Vec<f64>,
    scale: Vec<f64>,
}

impl Standardizer {
    fn fit(dataset: &Dataset) -> Self {
        let dims = dataset.dims();
        let n = dataset.len() as f64;
        let mut sum = vec![0.0; dims];
        let mut sq = vec![0.0; dims];
        for row in &dataset.rows {
            for &(id, c) in &row.vector.entries {
                let x = c as f64;
                sum[id] += x;
                sq[id] += x * x;
            }
        }
        let mean: Vec<f64> = sum.iter().map(|s| s / n).collect();
        let scale = sq
            .iter()
            .zip(&mean)
            .map(|(s, m)| {
                let var = (s / n - m * m).max(0.0);
                if var > 1e-12 {
                    1.0 / var.sqrt()
                } else {
                    1.0
                }
            })
            .collect();
        Standardizer { mean, scale }
    }
}

struct PairRow<'a> {
    x: &'a SparseVector,
    y: f64,
    // sum over nonzeros of g_j * x_j
    g_dot: f64,
    // |z|^2 + 1 (bias column)
    q: f64,
}

/// Solves one binary problem; returns (weights on raw counts, bias, gap, epochs).
fn solve_pair(
    rows: &[PairRow],
    st: &Standardizer,
    c: f64,
    seed: u64,
) -> (Vec<f64>, f64, f64, usize) {
    let dims = st.mean.len();
    let s2: Vec<f64> = st.scale.iter().map(|s| s * s).collect();
    let g: Vec<f64> = st.mean.iter().zip(&s2).map(|(m, s)| -m * s).collect();
    // sum_j mean_j^2 scale_j^2
    let m_sq: f64 = st.mean.iter().zip(&s2).map(|(m, s)| m * m * s).sum();

    let mut a = vec![0.0; dims];
    let (mut beta, mut a_dot_mean, mut b) = (0.0, 0.0, 0.0);
    let mut alpha = vec![0.0; rows.len()];

    let decision = |a: &[f64], beta: f64, a_dot_mean: f64, b: f64, r: &PairRow| {
        let sparse: f64 = r.x.entries.iter().map(|&(id, n)| a[id] * n as f64).sum();
        sparse + beta * r.g_dot - a_dot_mean + beta * m_sq + b
    };

    let mut order: Vec<usize> = (0..rows.len()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gap = f64::INFINITY;
    let mut epochs = 0;
    while epochs < MAX_EPOCHS {
        epochs += 1;
        order.shuffle(&mut rng);
        for &i in &order {
            let r = &rows[i];
            let grad = r.y * decision(&a, beta, a_dot_mean, b, r) - 1.0;
            let projected = if alpha[i] <= 0.0 {
                grad.min(0.0)
            } else if alpha[i] >= c {
                grad.max(0.0)
            } else {
                grad
            };
            if projected.abs() < 1e-14 {
                continue;
            }
            let new = (alpha[i] - grad / r.q).clamp(0.0, c);
            let step = (new - alpha[i]) * r.y;
            alpha[i] = new;
            for &(id, n) in &r.x.entries {
                a[id] += step * n as f64 * s2[id];
            }
            a_dot_mean -= step * r.g_dot;
            beta += step;
            b += step;
        }

        // w_j = v_j / scale_j with v = a + beta * g
        let w_norm: f64 = (0..dims)
            .map(|j| ((a[j] + beta * g[j]) / st.scale[j]).powi(2))
            .sum::<f64>()
            + b * b;
        let hinge: f64 = rows
            .iter()
            .map(|r| (1.0 - r.y * decision(&a, beta, a_dot_mean, b, r)).max(0.0))
            .sum();
        let primal = 0.5 * w_norm + c * hinge;
        let dual = alpha.iter().sum::<f64>() - 0.5 * w_norm;
        gap = primal - dual;
        if gap <= SVM_GAP_TOLERANCE {
            break;
        }
    }
    if gap > SVM_GAP_TOLERANCE {
        log::warn!("svm pair did not reach duality gap {SVM_GAP_TOLERANCE}: {gap}");
    }
    let weights: Vec<f64> = (0..dims).map(|j| a[j] + beta * g[j]).collect();
    let bias = b - a_dot_mean + beta * m_sq;
    (weights, bias, gap, epochs)
}

/// Pairwise linear SVMs with regularization `c`, majority vote on prediction.
pub fn train_svm(dataset: &Dataset, c: f64) -> Result<TrainedModel> {
    if dataset.is_empty() {
        return Err(Error::EmptyDataset);
    }
    if c.is_nan() || c <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "svm C must be positive, got {c}"
        )));
    }
    let classes = dataset.classes();
    if classes.len() < 2 {
        return Err(Error::TooFewClasses(classes.len()));
    }
    for row in &dataset.rows {
        if let Some(id) = row.vector.max_id().filter(|&id| id >= dataset.dims()) {
            return Err(Error::FeatureOutOfRange {
                id,
                len: dataset.dims(),
            });
        }
    }
    let st = Standardizer::fit(dataset);
    let s2: Vec<f64> = st.scale.iter().map(|s| s * s).collect();
    let m_sq: f64 = st.mean.iter().zip(&s2).map(|(m, s)| m * m * s).sum();

    let pairs: Vec<(SentimentLabel, SentimentLabel)> = classes
        .iter()
        .enumerate()
        .flat_map(|(i, &p)| classes[i + 1..].iter().map(move |&n| (p, n)))
        .collect();
    let machines = pairs
        .par_iter()
        .enumerate()
        .map(|(k, &(positive, negative))| {
            let rows: Vec<PairRow> = dataset
                .rows
                .iter()
                .filter(|r| r.label == positive || r.label == negative)
                .map(|r| {
                    let mut g_dot = 0.0;
                    let mut z_sq = m_sq;
                    for &(id, n) in &r.vector.entries {
                        let x = n as f64;
                        let m = st.mean[id];
                        g_dot -= m * s2[id] * x;
                        z_sq += ((x - m).powi(2) - m * m) * s2[id];
                    }
                    PairRow {
                        x: &r.vector,
                        y: if r.label == positive { 1.0 } else { -1.0 },
                        g_dot,
                        q: z_sq.max(0.0) + 1.0,
                    }
                })
                .collect();
            let (weights, bias, duality_gap, epochs) = solve_pair(&rows, &st, c, k as u64);
            BinaryMachine {
                positive,
                negative,
                weights,
                bias,
                duality_gap,
                epochs,
            }
        })
        .collect();
    Ok(TrainedModel::Svm(LinearSvmModel {
        classes,
        dims: dataset.dims(),
        machines,
    }))
}

#[cfg(test)]
mod tests {
    use super::super::predict;
    use super::super::test_support::*;
    use super::*;
    use SentimentLabel::*;

    fn machines(model: &TrainedModel) -> &LinearSvmModel {
        match model {
            TrainedModel::Svm(m) => m,
            _ => unreachable!(),
        }
    }

    #[test]
    fn two_point_separable() {
        let d = dense_dataset(&[(vec![1, 0], Confusion), (vec![0, 1], Facts)]);
        let model = train_svm(&d, 1.0).unwrap();
        assert_eq!(predict(&model, &sparse(&[1, 0])).unwrap(), Confusion);
        assert_eq!(predict(&model, &sparse(&[0, 1])).unwrap(), Facts);
        assert!(machines(&model).machines[0].duality_gap <= SVM_GAP_TOLERANCE);
    }

    #[test]
    fn four_one_hot_clusters() {
        let mut rows = Vec::new();
        for (k, &label) in SentimentLabel::ALL.iter().enumerate() {
            for extra in 1..=5u32 {
                let mut v = vec![0u32; 8];
                v[2 * k] = extra;
                v[2 * k + 1] = 6 - extra;
                rows.push((v, label));
            }
        }
        let d = dense_dataset(&rows);
        let model = train_svm(&d, 1.0).unwrap();
        assert_eq!(machines(&model).machines.len(), 6);
        for m in &machines(&model).machines {
            assert!(m.duality_gap <= SVM_GAP_TOLERANCE, "{}", m.duality_gap);
        }
        for r in &d.rows {
            assert_eq!(predict(&model, &r.vector).unwrap(), r.label);
        }
    }

    #[test]
    fn decision_matches_dense_standardized_formulation() {
        let d = dense_dataset(&[
            (vec![2, 0, 1, 3], Confusion),
            (vec![1, 1, 0, 3], Confusion),
            (vec![0, 2, 1, 3], Facts),
            (vec![0, 3, 2, 3], Facts),
            (vec![1, 2, 2, 3], Facts),
        ]);
        let st = Standardizer::fit(&d);
        let model = train_svm(&d, 1.0).unwrap();
        let m = &machines(&model).machines[0];
        // recover the standardized-space weights and check f on raw vs z
        let w_std: Vec<f64> = m
            .weights
            .iter()
            .zip(&st.scale)
            .map(|(v, s)| v / s)
            .collect();
        let offset: f64 = m.weights.iter().zip(&st.mean).map(|(v, mu)| v * mu).sum();
        let b_std = m.bias + offset;
        for r in &d.rows {
            let dense: Vec<f64> = (0..4).map(|j| r.vector.get(j) as f64).collect();
            let z: f64 = dense
                .iter()
                .enumerate()
                .map(|(j, x)| w_std[j] * (x - st.mean[j]) * st.scale[j])
                .sum();
            assert!((z + b_std - m.decision(&r.vector)).abs() < 1e-9);
        }
        // the constant feature gets no weight
        assert!(m.weights[3].abs() < 1e-12);
    }

    #[test]
    fn label_permutation_permutes_predictions() {
        let rows = vec![
            (vec![3, 0, 1], Confusion),
            (vec![2, 1, 0], Confusion),
            (vec![0, 3, 1], Encouragement),
            (vec![1, 3, 0], Encouragement),
            (vec![0, 0, 3], Gratitude),
            (vec![1, 0, 4], Gratitude),
        ];
        let swap = |l: SentimentLabel| match l {
            Confusion => Gratitude,
            Gratitude => Confusion,
            other => other,
        };
        let permuted: Vec<_> = rows.iter().map(|(v, l)| (v.clone(), swap(*l))).collect();
        let m1 = train_svm(&dense_dataset(&rows), 1.0).unwrap();
        let m2 = train_svm(&dense_dataset(&permuted), 1.0).unwrap();
        for probe in [[3, 0, 0], [0, 3, 0], [0, 0, 3], [1, 1, 1], [2, 0, 2]] {
            let v = sparse(&probe);
            assert_eq!(swap(predict(&m1, &v).unwrap()), predict(&m2, &v).unwrap());
        }
    }

    #[test]
    fn needs_two_classes() {
        let d = dense_dataset(&[(vec![1], Facts), (vec![2], Facts)]);
        assert!(matches!(train_svm(&d, 1.0), Err(Error::TooFewClasses(1))));
    }
}
