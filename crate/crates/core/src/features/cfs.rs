//! Correlation-based feature subset selection with best-first search.
//!
//! The merit of a subset `S` of `k` features is
//!
//! ```text
//! merit(S) = sum_{f in S} r_cf / sqrt(k + 2 * sum_{f<g in S} r_fg)
//! ```
//!
//! which equals `k * mean(r_cf) / sqrt(k + k(k-1) * mean(r_ff))`. Correlations
//! are symmetric uncertainties between binarized presence features and the
//! class. The search grows subsets forward from the empty set, always
//! expanding the best open subset, and stops after a fixed number of
//! consecutive expansions that do not improve the best merit.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap, HashSet};

use rayon::prelude::*;

use super::{Dataset, FeatureSpace};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CfsOptions {
    /// Consecutive non-improving expansions before the search stops.
    pub stale_limit: usize,
    /// Open-list capacity; the lowest-merit subsets are dropped beyond it.
    pub max_open: usize,
}

impl Default for CfsOptions {
    fn default() -> Self {
        CfsOptions {
            stale_limit: 5,
            max_open: 100_000,
        }
    }
}

fn entropy(counts: impl IntoIterator<Item = usize>, n: f64) -> f64 {
    counts
        .into_iter()
        .filter(|&c| c > 0)
        .map(|c| {
            let p = c as f64 / n;
            -p * p.ln()
        })
        .sum()
}

fn symmetric_uncertainty(h_x: f64, h_y: f64, h_xy: f64) -> f64 {
    let denom = h_x + h_y;
    if denom <= 0.0 {
        return 0.0;
    }
    (2.0 * (h_x + h_y - h_xy) / denom).clamp(0.0, 1.0)
}

fn intersection_len(a: &[u32], b: &[u32]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// Symmetric-uncertainty correlations of a dataset's presence features.
pub struct CfsEvaluator {
    rows: usize,
    // rows (ascending) in which each feature is present
    postings: Vec<Vec<u32>>,
    feature_entropy: Vec<f64>,
    class_correlation: Vec<f64>,
}

impl CfsEvaluator {
    pub fn new(dataset: &Dataset) -> Result<Self> {
        if dataset.is_empty() {
            return Err(Error::EmptyDataset);
        }
        let classes = dataset.classes();
        if classes.len() < 2 {
            return Err(Error::TooFewClasses(classes.len()));
        }
        let rows = dataset.len();
        let n = rows as f64;
        let dims = dataset.dims();
        let labels: Vec<usize> = dataset.rows.iter().map(|r| r.label.index()).collect();
        let class_counts = dataset.label_counts();
        let class_entropy = entropy(class_counts, n);

        let mut postings = vec![Vec::new(); dims];
        for (i, row) in dataset.rows.iter().enumerate() {
            for &(id, _) in &row.vector.entries {
                if id >= dims {
                    return Err(Error::FeatureOutOfRange { id, len: dims });
                }
                postings[id].push(i as u32);
            }
        }
        let feature_entropy: Vec<f64> = postings
            .iter()
            .map(|p| entropy([p.len(), rows - p.len()], n))
            .collect();
        let class_correlation = postings
            .par_iter()
            .zip(&feature_entropy)
            .map(|(p, &h_f)| {
                let mut present = [0usize; 4];
                for &r in p {
                    present[labels[r as usize]] += 1;
                }
                let joint = (0..4).flat_map(|c| [present[c], class_counts[c] - present[c]]);
                symmetric_uncertainty(h_f, class_entropy, entropy(joint, n))
            })
            .collect();
        Ok(CfsEvaluator {
            rows,
            postings,
            feature_entropy,
            class_correlation,
        })
    }

    pub fn dims(&self) -> usize {
        self.postings.len()
    }

    /// Feature-class correlation `r_cf`.
    pub fn class_correlation(&self, f: usize) -> f64 {
        self.class_correlation[f]
    }

    /// Feature-feature correlation `r_fg`.
    pub fn feature_correlation(&self, f: usize, g: usize) -> f64 {
        let (a, b) = (&self.postings[f], &self.postings[g]);
        let both = intersection_len(a, b);
        let joint = [
            both,
            a.len() - both,
            b.len() - both,
            self.rows + both - a.len() - b.len(),
        ];
        symmetric_uncertainty(
            self.feature_entropy[f],
            self.feature_entropy[g],
            entropy(joint, self.rows as f64),
        )
    }

    /// Merit of an arbitrary subset (0 for the empty set).
    pub fn merit(&self, subset: &[usize]) -> f64 {
        let num: f64 = subset.iter().map(|&f| self.class_correlation[f]).sum();
        let mut pairs = 0.0;
        for (i, &f) in subset.iter().enumerate() {
            for &g in &subset[i + 1..] {
                pairs += self.feature_correlation(f, g);
            }
        }
        merit_from_sums(subset.len(), num, pairs)
    }

    fn correlation_column(&self, g: usize) -> Vec<f64> {
        (0..self.dims())
            .into_par_iter()
            .map(|f| {
                if f == g {
                    1.0
                } else {
                    self.feature_correlation(f, g)
                }
            })
            .collect()
    }
}

fn merit_from_sums(k: usize, class_sum: f64, pair_sum: f64) -> f64 {
    if k == 0 {
        return 0.0;
    }
    let denom = (k as f64 + 2.0 * pair_sum).sqrt();
    if denom > 0.0 {
        class_sum / denom
    } else {
        0.0
    }
}

struct Node {
    subset: Vec<usize>,
    merit: f64,
    class_sum: f64,
    pair_sum: f64,
    seq: u64,
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Node {}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Node {
    // max-heap: higher merit first, then earlier insertion
    fn cmp(&self, other: &Self) -> Ordering {
        self.merit
            .total_cmp(&other.merit)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

/// Best-first correlation-based subset selection with default options.
pub fn cfs_select(dataset: &Dataset) -> Result<FeatureSpace> {
    cfs_select_with(dataset, &CfsOptions::default())
}

pub fn cfs_select_with(dataset: &Dataset, options: &CfsOptions) -> Result<FeatureSpace> {
    let evaluator = CfsEvaluator::new(dataset)?;
    let selected = best_first(&evaluator, options);
    Ok(dataset.space.subspace(&selected))
}

fn best_first(eval: &CfsEvaluator, options: &CfsOptions) -> Vec<usize> {
    // Adding a feature with zero class correlation can only lower the merit,
    // so such features are never candidates.
    let candidates: Vec<usize> = (0..eval.dims())
        .filter(|&f| eval.class_correlation(f) > 0.0)
        .collect();
    let mut columns: HashMap<usize, Vec<f64>> = HashMap::new();
    let mut visited: HashSet<Vec<usize>> = HashSet::new();
    let mut open = BinaryHeap::new();
    let mut seq = 0u64;

    let mut best_subset: Vec<usize> = Vec::new();
    let mut best_merit = 0.0;
    open.push(Node {
        subset: Vec::new(),
        merit: 0.0,
        class_sum: 0.0,
        pair_sum: 0.0,
        seq,
    });
    visited.insert(Vec::new());
    let mut stale = 0;

    while let Some(node) = open.pop() {
        for &g in &node.subset {
            columns
                .entry(g)
                .or_insert_with(|| eval.correlation_column(g));
        }
        let cols: Vec<&Vec<f64>> = node.subset.iter().map(|g| &columns[g]).collect();
        let children: Vec<(usize, f64, f64, f64)> = candidates
            .par_iter()
            .filter(|f| node.subset.binary_search(f).is_err())
            .map(|&f| {
                let class_sum = node.class_sum + eval.class_correlation(f);
                let pair_sum = node.pair_sum + cols.iter().map(|c| c[f]).sum::<f64>();
                let merit = merit_from_sums(node.subset.len() + 1, class_sum, pair_sum);
                (f, merit, class_sum, pair_sum)
            })
            .collect();

        let mut improved = false;
        for (f, merit, class_sum, pair_sum) in children {
            let mut subset = node.subset.clone();
            let pos = subset.binary_search(&f).unwrap_err();
            subset.insert(pos, f);
            if !visited.insert(subset.clone()) {
                continue;
            }
            if merit > best_merit {
                best_merit = merit;
                best_subset = subset.clone();
                improved = true;
            }
            seq += 1;
            open.push(Node {
                subset,
                merit,
                class_sum,
                pair_sum,
                seq,
            });
        }
        if improved {
            stale = 0;
        } else {
            stale += 1;
            if stale >= options.stale_limit {
                break;
            }
        }
        if open.len() > options.max_open {
            let mut kept = open.into_sorted_vec();
            kept.drain(..kept.len() - options.max_open);
            open = kept.into();
        }
    }
    best_subset
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus_io::SentimentLabel::{self, *};
    use crate::features::{Instance, SparseVector};

    fn dataset(rows: &[(&[u32], SentimentLabel)]) -> Dataset {
        let dims = rows[0].0.len();
        let space = FeatureSpace::new((0..dims).map(|i| format!("f{i}")).collect()).unwrap();
        Dataset {
            space,
            rows: rows
                .iter()
                .enumerate()
                .map(|(i, (values, label))| Instance {
                    vector: SparseVector {
                        entries: values
                            .iter()
                            .enumerate()
                            .filter(|(_, &v)| v > 0)
                            .map(|(j, &v)| (j, v))
                            .collect(),
                    },
                    label: *label,
                    post_id: i.to_string(),
                })
                .collect(),
        }
    }

    #[test]
    fn picks_the_correlated_feature_over_a_constant_one() {
        let d = dataset(&[
            (&[1, 1], Facts),
            (&[1, 1], Facts),
            (&[0, 1], Gratitude),
            (&[0, 1], Gratitude),
        ]);
        assert_eq!(cfs_select(&d).unwrap().features(), ["f0"]);
    }

    #[test]
    fn single_class_is_degenerate() {
        let d = dataset(&[(&[1, 0], Facts), (&[0, 1], Facts)]);
        assert!(matches!(cfs_select(&d), Err(Error::TooFewClasses(1))));
    }

    #[test]
    fn merit_matches_incremental_sums() {
        let d = dataset(&[
            (&[1, 0, 1, 0], Facts),
            (&[1, 1, 0, 0], Facts),
            (&[0, 1, 1, 1], Gratitude),
            (&[0, 0, 1, 1], Confusion),
            (&[1, 0, 0, 1], Gratitude),
        ]);
        let e = CfsEvaluator::new(&d).unwrap();
        let subset = [0, 2, 3];
        let class_sum: f64 = subset.iter().map(|&f| e.class_correlation(f)).sum();
        let col0 = e.correlation_column(0);
        let col2 = e.correlation_column(2);
        let pair_sum = col0[2] + col0[3] + col2[3];
        assert!((merit_from_sums(3, class_sum, pair_sum) - e.merit(&subset)).abs() < 1e-12);
        for f in 0..4 {
            assert!(
                (e.feature_correlation(f, f) - 1.0).abs() < 1e-12 || e.feature_entropy[f] == 0.0
            );
        }
    }

    #[test]
    fn stale_limit_stops_search() {
        // no feature correlates with the class: only the root is expanded
        let d = dataset(&[
            (&[1, 0], Facts),
            (&[1, 0], Gratitude),
            (&[0, 1], Facts),
            (&[0, 1], Gratitude),
        ]);
        assert!(cfs_select(&d).unwrap().is_empty());
    }
}
