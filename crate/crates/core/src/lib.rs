//! Corpus comparability statistics and cross-corpus sentiment classification.
//!
//! The crate covers the whole pipeline from labeled JSONL corpora to
//! report tables:
//!
//! - [`corpus_io`]: loading, ambiguity filtering and data-set summaries
//! - [`tokenizer`]: lowercase alphabetic tokens and sentence counts
//! - [`spectrum`]: frequency spectra `V(m, N)`, descriptives, post lengths
//! - [`lexical`]: type/token ratio, hapax/dis/tris ratios, mid-range density, divergences
//! - [`stats`]: unpaired Student's t-test on top of the incomplete beta function
//! - [`features`]: bag-of-words and lexicon feature spaces, correlation-based subset selection
//! - [`classifiers`]: majority baseline, multinomial / discriminative / Gaussian naive Bayes, linear SVM
//! - [`evaluation`]: confusion matrices, weighted P/R/F, stratified CV, the two-corpus protocol
//! - [`cli`]: the `corpuscope` command-line surface

pub mod classifiers;
pub mod cli;
pub mod corpus_io;
pub mod error;
pub mod evaluation;
pub mod features;
pub mod lexical;
pub mod report;
pub mod spectrum;
pub mod stats;
pub mod tokenizer;

pub use error::{Error, Result};

/// Crate version embedded in every report header.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
