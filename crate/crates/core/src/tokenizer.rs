//! Text normalization: lowercase alphabetic tokens and sentence counts.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus_io::Corpus;

/// Tokens and sentence count of one post.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenizedPost {
    pub post_id: String,
    pub tokens: Vec<String>,
    pub sentence_count: usize,
}

/// Splits `text` into lowercase runs of alphabetic characters.
///
/// Every non-alphabetic character acts as a separator. Lowercasing happens
/// per character before the letter test, so a multi-character lowercase
/// expansion keeps only its alphabetic parts.
pub fn tokenize_text(text: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    let mut current = String::new();
    for c in text.chars() {
        for lc in c.to_lowercase() {
            if lc.is_alphabetic() {
                current.push(lc);
            } else if !current.is_empty() {
                tokens.push(std::mem::take(&mut current));
            }
        }
    }
    if !current.is_empty() {
        tokens.push(current);
    }
    tokens
}

fn is_terminator(c: char) -> bool {
    matches!(c, '.' | '!' | '?')
}

/// Counts segments separated by runs of `.`, `!` and `?`.
///
/// Blank segments are not counted. Text with visible content but no
/// countable segment (e.g. `"..."`) counts as one sentence; blank text as zero.
pub fn count_sentences(text: &str) -> usize {
    let segments = text
        .split(is_terminator)
        .filter(|s| !s.trim().is_empty())
        .count();
    if segments == 0 && !text.trim().is_empty() {
        1
    } else {
        segments
    }
}

pub fn tokenize_post(id: &str, text: &str) -> TokenizedPost {
    TokenizedPost {
        post_id: id.to_string(),
        tokens: tokenize_text(text),
        sentence_count: count_sentences(text),
    }
}

/// Tokenizes every post, preserving corpus order.
pub fn tokenize_corpus(corpus: &Corpus) -> Vec<TokenizedPost> {
    corpus
        .posts
        .par_iter()
        .map(|p| tokenize_post(&p.id, &p.text))
        .collect()
}
