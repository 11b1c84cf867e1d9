//! Labeled corpora: JSONL loading, ambiguity filtering and data-set summaries.
//!
//! A corpus file holds one post per line:
//!
//! ```text
//! {"id": "p1", "author": "u7", "topic": "t3", "text": "...", "label": "facts"}
//! {"id": "p2", "author": "u9", "topic": "t3", "text": "...", "annotations": ["gratitude", "gratitude", "facts"]}
//! ```

use std::collections::HashSet;
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The four sentiment classes. Declaration order is the tie-break order
/// everywhere a deterministic choice between classes is needed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SentimentLabel {
    Confusion,
    Encouragement,
    Gratitude,
    Facts,
}

impl SentimentLabel {
    pub const ALL: [SentimentLabel; 4] = [
        SentimentLabel::Confusion,
        SentimentLabel::Encouragement,
        SentimentLabel::Gratitude,
        SentimentLabel::Facts,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SentimentLabel::Confusion => "confusion",
            SentimentLabel::Encouragement => "encouragement",
            SentimentLabel::Gratitude => "gratitude",
            SentimentLabel::Facts => "facts",
        }
    }

    /// Position in [`SentimentLabel::ALL`].
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Self> {
        Self::ALL.get(i).copied()
    }
}

impl fmt::Display for SentimentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SentimentLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "confusion" => Ok(SentimentLabel::Confusion),
            "encouragement" => Ok(SentimentLabel::Encouragement),
            "gratitude" => Ok(SentimentLabel::Gratitude),
            "facts" => Ok(SentimentLabel::Facts),
            other => Err(Error::UnknownLabel(other.to_string())),
        }
    }
}

/// One forum post.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Post {
    pub id: String,
    #[serde(rename = "author")]
    pub author_id: String,
    #[serde(rename = "topic")]
    pub topic_id: String,
    pub text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<SentimentLabel>,
    /// Per-annotator labels, in annotator order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub annotations: Option<Vec<SentimentLabel>>,
}

impl Post {
    /// Annotations, treating an empty list as absent.
    fn annotation_list(&self) -> Option<&[SentimentLabel]> {
        self.annotations.as_deref().filter(|a| !a.is_empty())
    }
}

/// A named, ordered collection of posts with unique ids.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Corpus {
    pub name: String,
    pub posts: Vec<Post>,
}

impl Corpus {
    /// Builds a corpus, rejecting empty and duplicate ids.
    pub fn new(name: impl Into<String>, posts: Vec<Post>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(posts.len());
        for post in &posts {
            if post.id.is_empty() {
                return Err(Error::InvalidArgument("post id must be non-empty".into()));
            }
            if !seen.insert(post.id.as_str()) {
                return Err(Error::DuplicateId(post.id.clone()));
            }
        }
        Ok(Corpus {
            name: name.into(),
            posts,
        })
    }

    pub fn len(&self) -> usize {
        self.posts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.posts.is_empty()
    }

    pub fn authors(&self) -> HashSet<&str> {
        self.posts.iter().map(|p| p.author_id.as_str()).collect()
    }

    pub fn topics(&self) -> HashSet<&str> {
        self.posts.iter().map(|p| p.topic_id.as_str()).collect()
    }

    /// Gold-label counts in [`SentimentLabel::ALL`] order; unlabeled posts are skipped.
    pub fn label_counts(&self) -> [usize; 4] {
        let mut counts = [0; 4];
        for label in self.posts.iter().filter_map(|p| p.label) {
            counts[label.index()] += 1;
        }
        counts
    }
}

// Raw line shape; labels stay strings so that errors can name them.
#[derive(Deserialize)]
struct RawPost {
    id: String,
    author: String,
    topic: String,
    text: String,
    #[serde(default)]
    label: Option<String>,
    #[serde(default)]
    annotations: Option<Vec<String>>,
}

/// Loads a JSONL corpus file. Posts keep file order.
pub fn load_corpus(path: impl AsRef<Path>, name: &str) -> Result<Corpus> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_corpus(file, path, name)
}

/// Reads JSONL from any reader; `origin` is only used in error messages.
pub fn read_corpus(reader: impl Read, origin: &Path, name: &str) -> Result<Corpus> {
    let mut posts = Vec::new();
    let mut seen: HashSet<String> = HashSet::new();
    for (i, line) in BufReader::new(reader).lines().enumerate() {
        let line_no = i + 1;
        let line = line.map_err(|e| Error::io(origin, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let parse_err = |message: String| Error::Parse {
            path: origin.to_path_buf(),
            line: line_no,
            message,
        };
        let raw: RawPost = serde_json::from_str(&line).map_err(|e| parse_err(e.to_string()))?;
        if raw.id.is_empty() {
            return Err(parse_err("post id must be non-empty".into()));
        }
        let label = raw
            .label
            .as_deref()
            .map(str::parse)
            .transpose()
            .map_err(|e: Error| parse_err(e.to_string()))?;
        let annotations = raw
            .annotations
            .map(|a| a.iter().map(|s| s.parse()).collect::<Result<Vec<_>>>())
            .transpose()
            .map_err(|e| parse_err(e.to_string()))?;
        if !seen.insert(raw.id.clone()) {
            return Err(parse_err(Error::DuplicateId(raw.id).to_string()));
        }
        posts.push(Post {
            id: raw.id,
            author_id: raw.author,
            topic_id: raw.topic,
            text: raw.text,
            label,
            annotations,
        });
    }
    if posts.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    Ok(Corpus {
        name: name.to_string(),
        posts,
    })
}

/// How annotator disagreement decides whether a post is kept.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AmbiguityRule {
    /// Every annotator gave the same label.
    #[default]
    Unanimous,
    /// One label was given by more than half of the annotators.
    StrictMajority,
}

impl FromStr for AmbiguityRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unanimous" => Ok(AmbiguityRule::Unanimous),
            "strict-majority" => Ok(AmbiguityRule::StrictMajority),
            other => Err(Error::InvalidArgument(format!(
                "unknown ambiguity rule {other:?} (expected unanimous or strict-majority)"
            ))),
        }
    }
}

impl AmbiguityRule {
    /// The agreed label of a post, or `None` if it is ambiguous under this rule.
    pub fn resolve(self, post: &Post) -> Result<Option<SentimentLabel>> {
        let Some(annotations) = post.annotation_list() else {
            return post
                .label
                .map(Some)
                .ok_or_else(|| Error::Unlabeled(post.id.clone()));
        };
        let mut counts = [0usize; 4];
        for a in annotations {
            counts[a.index()] += 1;
        }
        let n = annotations.len();
        let agreed = SentimentLabel::ALL.into_iter().find(|l| match self {
            AmbiguityRule::Unanimous => counts[l.index()] == n,
            AmbiguityRule::StrictMajority => 2 * counts[l.index()] > n,
        });
        Ok(agreed)
    }

    fn is_ambiguous(self, post: &Post) -> bool {
        post.annotation_list().is_some() && matches!(self.resolve(post), Ok(None))
    }
}

/// Keeps the posts on which the annotators agree under `rule`, with `label`
/// set to the agreed value. Posts with a label and no annotations pass unchanged.
pub fn filter_unambiguous(corpus: &Corpus, rule: AmbiguityRule) -> Result<Corpus> {
    let mut posts = Vec::with_capacity(corpus.posts.len());
    for post in &corpus.posts {
        if let Some(label) = rule.resolve(post)? {
            posts.push(Post {
                label: Some(label),
                ..post.clone()
            });
        }
    }
    Ok(Corpus {
        name: corpus.name.clone(),
        posts,
    })
}

/// Data-set parameters of one corpus.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub authors: usize,
    pub topics: usize,
    pub posts: usize,
    pub posts_per_topic: f64,
    pub posts_per_author: f64,
    pub ambiguous: usize,
    pub unambiguous: usize,
}

/// Counts authors, topics and posts of `corpus`.
///
/// A post is ambiguous when it carries annotations that fail `rule`; posts
/// without annotations count as unambiguous.
pub fn corpus_summary(corpus: &Corpus, rule: AmbiguityRule) -> Result<CorpusSummary> {
    if corpus.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let authors = corpus.authors().len();
    let topics = corpus.topics().len();
    let posts = corpus.len();
    let ambiguous = corpus.posts.iter().filter(|p| rule.is_ambiguous(p)).count();
    Ok(CorpusSummary {
        authors,
        topics,
        posts,
        posts_per_topic: posts as f64 / topics as f64,
        posts_per_author: posts as f64 / authors as f64,
        ambiguous,
        unambiguous: posts - ambiguous,
    })
}

/// Number of authors who posted in both corpora.
pub fn author_overlap(a: &Corpus, b: &Corpus) -> usize {
    let b_authors = b.authors();
    a.authors().intersection(&b_authors).count()
}
