//! Word-frequency spectra, corpus descriptives and post-length series.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus_io::Corpus;
use crate::error::{Error, Result};
use crate::tokenizer::{tokenize_corpus, TokenizedPost};

/// Token count `N`, type count `V`, per-type frequencies and `V(m, N)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrequencySpectrum {
    /// `N`
    pub tokens: usize,
    /// `V`
    pub types: usize,
    /// type -> occurrence count `m`
    pub freq: BTreeMap<String, usize>,
    /// `m` -> number of types occurring exactly `m` times. Only nonzero entries are stored.
    pub types_by_frequency: BTreeMap<usize, usize>,
}

impl FrequencySpectrum {
    /// Builds a spectrum from a type -> count table. Zero counts are dropped.
    pub fn from_counts<I, S>(counts: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, usize)>,
        S: Into<String>,
    {
        let mut freq = BTreeMap::new();
        for (t, c) in counts {
            if c > 0 {
                *freq.entry(t.into()).or_insert(0) += c;
            }
        }
        if freq.is_empty() {
            return Err(Error::EmptySpectrum);
        }
        let mut types_by_frequency = BTreeMap::new();
        let mut tokens = 0;
        for &c in freq.values() {
            *types_by_frequency.entry(c).or_insert(0) += 1;
            tokens += c;
        }
        Ok(FrequencySpectrum {
            tokens,
            types: freq.len(),
            freq,
            types_by_frequency,
        })
    }

    /// `V(m, N)`
    pub fn types_with_frequency(&self, m: usize) -> usize {
        self.types_by_frequency.get(&m).copied().unwrap_or(0)
    }

    pub fn frequency(&self, token: &str) -> Option<usize> {
        self.freq.get(token).copied()
    }

    pub fn max_frequency(&self) -> usize {
        self.types_by_frequency
            .keys()
            .next_back()
            .copied()
            .unwrap_or(0)
    }

    /// Spectrum of the concatenation of both inputs.
    pub fn merge(&self, other: &FrequencySpectrum) -> FrequencySpectrum {
        let mut counts = self.freq.clone();
        for (t, c) in &other.freq {
            *counts.entry(t.clone()).or_insert(0) += c;
        }
        FrequencySpectrum::from_counts(counts).expect("merge of non-empty spectra")
    }
}

/// Exact counts over all tokens of all posts.
pub fn build_spectrum(tokenized: &[TokenizedPost]) -> Result<FrequencySpectrum> {
    let counts = tokenized
        .par_iter()
        .fold(HashMap::new, |mut acc: HashMap<&str, usize>, post| {
            for t in &post.tokens {
                *acc.entry(t.as_str()).or_insert(0) += 1;
            }
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            for (t, c) in b {
                *a.entry(t).or_insert(0) += c;
            }
            a
        });
    FrequencySpectrum::from_counts(counts)
}

/// Size and length statistics of one corpus.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusDescriptives {
    pub posts: usize,
    pub words: usize,
    pub types: usize,
    pub sentences: usize,
    pub words_per_post: f64,
    pub sentences_per_post: f64,
    pub words_per_sentence: f64,
}

impl CorpusDescriptives {
    /// Ratios from raw counts.
    pub fn from_counts(words: usize, types: usize, posts: usize, sentences: usize) -> Result<Self> {
        if posts == 0 {
            return Err(Error::EmptyCorpus);
        }
        if sentences == 0 {
            return Err(Error::ZeroSentences);
        }
        Ok(CorpusDescriptives {
            posts,
            words,
            types,
            sentences,
            words_per_post: words as f64 / posts as f64,
            sentences_per_post: sentences as f64 / posts as f64,
            words_per_sentence: words as f64 / sentences as f64,
        })
    }
}

pub fn descriptives_of(tokenized: &[TokenizedPost]) -> Result<CorpusDescriptives> {
    if tokenized.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let spectrum = build_spectrum(tokenized)?;
    let sentences = tokenized.iter().map(|p| p.sentence_count).sum();
    CorpusDescriptives::from_counts(spectrum.tokens, spectrum.types, tokenized.len(), sentences)
}

pub fn corpus_descriptives(corpus: &Corpus) -> Result<CorpusDescriptives> {
    descriptives_of(&tokenize_corpus(corpus))
}

/// Per-post token counts, longest first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PostLengthSeries {
    pub lengths: Vec<usize>,
}

impl PostLengthSeries {
    pub fn total(&self) -> usize {
        self.lengths.iter().sum()
    }
}

pub fn post_length_series(tokenized: &[TokenizedPost]) -> PostLengthSeries {
    let mut lengths: Vec<usize> = tokenized.iter().map(|p| p.tokens.len()).collect();
    lengths.sort_unstable_by(|a, b| b.cmp(a));
    PostLengthSeries { lengths }
}
