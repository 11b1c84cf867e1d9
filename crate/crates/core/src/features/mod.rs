//! Feature spaces: bag of words, merged sentiment lexicons and selected subsets.

mod cfs;

use std::collections::{BTreeSet, HashMap};
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus_io::{Corpus, Post, SentimentLabel};
use crate::error::{Error, Result};
use crate::spectrum::build_spectrum;
use crate::tokenizer::{tokenize_corpus, tokenize_text};

pub use cfs::{cfs_select, cfs_select_with, CfsEvaluator, CfsOptions};

/// Ordered feature terms. A term is a token or a space-joined token phrase.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct FeatureSpace {
    features: Vec<String>,
    index: HashMap<String, usize>,
    // first token -> (phrase tokens, feature id), longest phrase first
    phrases: HashMap<String, Vec<(Vec<String>, usize)>>,
}

impl PartialEq for FeatureSpace {
    fn eq(&self, other: &Self) -> bool {
        self.features == other.features
    }
}

impl FeatureSpace {
    pub fn new(features: Vec<String>) -> Result<Self> {
        let mut index = HashMap::with_capacity(features.len());
        let mut phrases: HashMap<String, Vec<(Vec<String>, usize)>> = HashMap::new();
        for (id, term) in features.iter().enumerate() {
            if term.is_empty() {
                return Err(Error::InvalidArgument("empty feature term".into()));
            }
            if index.insert(term.clone(), id).is_some() {
                return Err(Error::InvalidArgument(format!(
                    "duplicate feature {term:?}"
                )));
            }
            let parts: Vec<String> = term.split(' ').map(str::to_string).collect();
            if parts.len() > 1 {
                phrases
                    .entry(parts[0].clone())
                    .or_default()
                    .push((parts, id));
            }
        }
        for list in phrases.values_mut() {
            list.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.1.cmp(&b.1)));
        }
        Ok(FeatureSpace {
            features,
            index,
            phrases,
        })
    }

    pub fn len(&self) -> usize {
        self.features.len()
    }

    pub fn is_empty(&self) -> bool {
        self.features.is_empty()
    }

    pub fn features(&self) -> &[String] {
        &self.features
    }

    pub fn id(&self, term: &str) -> Option<usize> {
        self.index.get(term).copied()
    }

    pub fn term(&self, id: usize) -> Option<&str> {
        self.features.get(id).map(String::as_str)
    }

    /// Terms of `self` followed by the terms of `other` not already present.
    pub fn union(&self, other: &FeatureSpace) -> FeatureSpace {
        let mut features = self.features.clone();
        features.extend(
            other
                .features
                .iter()
                .filter(|t| !self.index.contains_key(*t))
                .cloned(),
        );
        FeatureSpace::new(features).expect("union of valid spaces")
    }

    /// Sub-space with the given ids, kept in original order.
    pub fn subspace(&self, ids: &[usize]) -> FeatureSpace {
        let ids: BTreeSet<usize> = ids.iter().copied().collect();
        FeatureSpace::new(ids.into_iter().map(|i| self.features[i].clone()).collect())
            .expect("subset of a valid space")
    }
}

impl TryFrom<Vec<String>> for FeatureSpace {
    type Error = Error;

    fn try_from(features: Vec<String>) -> Result<Self> {
        FeatureSpace::new(features)
    }
}

impl From<FeatureSpace> for Vec<String> {
    fn from(space: FeatureSpace) -> Self {
        space.features
    }
}

/// A named set of normalized terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lexicon {
    pub name: String,
    pub entries: BTreeSet<String>,
}

/// Normalizes a term the way post text is tokenized; phrases are space-joined.
pub fn normalize_term(term: &str) -> Option<String> {
    let tokens = tokenize_text(term);
    (!tokens.is_empty()).then(|| tokens.join(" "))
}

impl Lexicon {
    pub fn from_terms<'a>(
        name: impl Into<String>,
        terms: impl IntoIterator<Item = &'a str>,
    ) -> Self {
        Lexicon {
            name: name.into(),
            entries: terms.into_iter().filter_map(normalize_term).collect(),
        }
    }

    /// Parses a lexicon file: one entry per line, optionally followed by a TAB
    /// and a polarity field, which is ignored.
    pub fn parse(name: impl Into<String>, text: &str) -> Self {
        Self::from_terms(
            name,
            text.lines().map(|l| l.split('\t').next().unwrap_or("")),
        )
    }

    /// Loads a lexicon file, named after the file stem.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        Ok(Self::parse(name, &text))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Set union of all entries.
pub fn merge_lexicons(lexicons: &[Lexicon]) -> Lexicon {
    let name = lexicons
        .iter()
        .map(|l| l.name.as_str())
        .collect::<Vec<_>>()
        .join("+");
    let entries = lexicons
        .iter()
        .flat_map(|l| l.entries.iter().cloned())
        .collect();
    Lexicon { name, entries }
}

/// Sparse term counts with strictly increasing feature ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseVector {
    pub entries: Vec<(usize, u32)>,
}

impl SparseVector {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, id: usize) -> u32 {
        self.entries
            .binary_search_by_key(&id, |e| e.0)
            .map(|i| self.entries[i].1)
            .unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.entries.iter().map(|e| e.1 as u64).sum()
    }

    pub fn max_id(&self) -> Option<usize> {
        self.entries.last().map(|e| e.0)
    }
}

/// Counts the features of `space` in a token sequence.
///
/// Scanning left to right, the longest phrase feature starting at the
/// current token wins and consumes its tokens; otherwise the single token
/// is counted if it is a feature.
pub fn vectorize_tokens(tokens: &[String], space: &FeatureSpace) -> SparseVector {
    let mut counts: HashMap<usize, u32> = HashMap::new();
    let mut i = 0;
    while i < tokens.len() {
        let phrase = space.phrases.get(&tokens[i]).and_then(|cands| {
            cands
                .iter()
                .find(|(parts, _)| tokens[i..].starts_with(parts))
        });
        if let Some((parts, id)) = phrase {
            *counts.entry(*id).or_insert(0) += 1;
            i += parts.len();
            continue;
        }
        if let Some(id) = space.id(&tokens[i]) {
            *counts.entry(id).or_insert(0) += 1;
        }
        i += 1;
    }
    let mut entries: Vec<(usize, u32)> = counts.into_iter().collect();
    entries.sort_unstable();
    SparseVector { entries }
}

pub fn vectorize(post: &Post, space: &FeatureSpace) -> SparseVector {
    vectorize_tokens(&tokenize_text(&post.text), space)
}

/// Frequency dictionary over all posts of all corpora, keeping types that
/// occur at least `min_count` times. Ordered by descending frequency, ties
/// alphabetical.
pub fn build_bow_space(corpora: &[&Corpus], min_count: usize) -> Result<FeatureSpace> {
    let tokenized: Vec<_> = corpora.iter().flat_map(|c| tokenize_corpus(c)).collect();
    if tokenized.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let spectrum = build_spectrum(&tokenized)?;
    let mut kept: Vec<(&String, usize)> = spectrum
        .freq
        .iter()
        .filter(|(_, &c)| c >= min_count)
        .map(|(t, &c)| (t, c))
        .collect();
    kept.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    FeatureSpace::new(kept.into_iter().map(|(t, _)| t.clone()).collect())
}

/// Lexicon entries that occur as a contiguous token sequence in at least
/// one post, in lexicon (alphabetical) order.
pub fn build_lexicon_space(merged: &Lexicon, corpora: &[&Corpus]) -> Result<FeatureSpace> {
    if merged.is_empty() {
        return Err(Error::InvalidArgument("lexicon has no entries".into()));
    }
    let mut by_first: HashMap<&str, Vec<Vec<&str>>> = HashMap::new();
    for entry in &merged.entries {
        let parts: Vec<&str> = entry.split(' ').collect();
        by_first.entry(parts[0]).or_default().push(parts);
    }
    let mut found: BTreeSet<String> = BTreeSet::new();
    for corpus in corpora {
        for post in tokenize_corpus(corpus) {
            let tokens = &post.tokens;
            for i in 0..tokens.len() {
                let Some(cands) = by_first.get(tokens[i].as_str()) else {
                    continue;
                };
                for parts in cands {
                    let matches = tokens.len() - i >= parts.len()
                        && parts
                            .iter()
                            .zip(&tokens[i..])
                            .all(|(p, t)| *p == t.as_str());
                    if matches {
                        found.insert(parts.join(" "));
                    }
                }
            }
        }
    }
    FeatureSpace::new(found.into_iter().collect())
}

/// One labeled, vectorized post.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub vector: SparseVector,
    pub label: SentimentLabel,
    pub post_id: String,
}

/// Labeled vectors over a feature space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    pub space: FeatureSpace,
    pub rows: Vec<Instance>,
}

impl Dataset {
    /// Vectorizes every post of the given corpora. Posts must carry a label.
    pub fn from_corpora(corpora: &[&Corpus], space: &FeatureSpace) -> Result<Self> {
        let mut rows = Vec::new();
        for corpus in corpora {
            for post in &corpus.posts {
                let label = post
                    .label
                    .ok_or_else(|| Error::Unlabeled(post.id.clone()))?;
                rows.push(Instance {
                    vector: vectorize(post, space),
                    label,
                    post_id: post.id.clone(),
                });
            }
        }
        Ok(Dataset {
            space: space.clone(),
            rows,
        })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn dims(&self) -> usize {
        self.space.len()
    }

    /// Rows at `indices`, in that order.
    pub fn select(&self, indices: &[usize]) -> Dataset {
        Dataset {
            space: self.space.clone(),
            rows: indices.iter().map(|&i| self.rows[i].clone()).collect(),
        }
    }

    /// Labels present in the data, in declaration order.
    pub fn classes(&self) -> Vec<SentimentLabel> {
        let mut seen = [false; 4];
        for r in &self.rows {
            seen[r.label.index()] = true;
        }
        SentimentLabel::ALL
            .into_iter()
            .filter(|l| seen[l.index()])
            .collect()
    }

    pub fn label_counts(&self) -> [usize; 4] {
        let mut counts = [0; 4];
        for r in &self.rows {
            counts[r.label.index()] += 1;
        }
        counts
    }
}

/// Which representation to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FeatureSet {
    Bow,
    Lexicon,
    Selected,
}

impl FeatureSet {
    pub fn as_str(self) -> &'static str {
        match self {
            FeatureSet::Bow => "bow",
            FeatureSet::Lexicon => "lexicon",
            FeatureSet::Selected => "selected",
        }
    }
}

impl FromStr for FeatureSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bow" => Ok(FeatureSet::Bow),
            "lexicon" | "lexicons" => Ok(FeatureSet::Lexicon),
            "selected" => Ok(FeatureSet::Selected),
            other => Err(Error::InvalidArgument(format!(
                "unknown feature set {other:?} (expected bow, lexicon or selected)"
            ))),
        }
    }
}

pub const DEFAULT_MIN_COUNT: usize = 2;

/// Everything needed to build a feature space.
#[derive(Clone, Debug)]
pub struct FeatureConfig {
    pub set: FeatureSet,
    pub min_count: usize,
    /// Merged lexicon; required for `Lexicon`, optional for `Selected`.
    pub lexicon: Option<Lexicon>,
    pub cfs: CfsOptions,
}

impl FeatureConfig {
    pub fn new(set: FeatureSet) -> Self {
        FeatureConfig {
            set,
            min_count: DEFAULT_MIN_COUNT,
            lexicon: None,
            cfs: CfsOptions::default(),
        }
    }

    pub fn with_lexicon(mut self, lexicon: Lexicon) -> Self {
        self.lexicon = Some(lexicon);
        self
    }
}

/// Builds the configured space over all posts of `corpora`.
///
/// `Selected` runs subset selection on the union of the bag-of-words space
/// and (when a lexicon is configured) the lexicon space, using the labels
/// of all supplied posts.
pub fn build_space(config: &FeatureConfig, corpora: &[&Corpus]) -> Result<FeatureSpace> {
    match config.set {
        FeatureSet::Bow => build_bow_space(corpora, config.min_count),
        FeatureSet::Lexicon => {
            let lexicon = config.lexicon.as_ref().ok_or_else(|| {
                Error::InvalidArgument("the lexicon feature set needs at least one lexicon".into())
            })?;
            build_lexicon_space(lexicon, corpora)
        }
        FeatureSet::Selected => {
            let mut space = build_bow_space(corpora, config.min_count)?;
            if let Some(lexicon) = &config.lexicon {
                space = space.union(&build_lexicon_space(lexicon, corpora)?);
            }
            let dataset = Dataset::from_corpora(corpora, &space)?;
            cfs_select_with(&dataset, &config.cfs)
        }
    }
}
