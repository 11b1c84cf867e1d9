//! Majority baseline, naive Bayes variants and a pairwise linear SVM behind
//! one train/predict contract.

mod bayes;
mod svm;

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus_io::SentimentLabel;
use crate::error::{Error, Result};
use crate::features::{Dataset, SparseVector};

pub use bayes::{
    train_dmnb, train_gnb, train_majority, train_mnb, DiscriminativeCounts, GaussianModel,
    MultinomialModel,
};
pub use svm::{train_svm, BinaryMachine, LinearSvmModel, SVM_GAP_TOLERANCE};

/// A trained classifier. Serialized as JSON with a `kind` tag.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TrainedModel {
    Majority { label: SentimentLabel, dims: usize },
    Mnb(MultinomialModel),
    Dmnb(MultinomialModel),
    Gnb(GaussianModel),
    Svm(LinearSvmModel),
}

impl TrainedModel {
    pub fn classes(&self) -> Vec<SentimentLabel> {
        match self {
            TrainedModel::Majority { label, .. } => vec![*label],
            TrainedModel::Mnb(m) | TrainedModel::Dmnb(m) => m.classes.clone(),
            TrainedModel::Gnb(m) => m.classes.clone(),
            TrainedModel::Svm(m) => m.classes.clone(),
        }
    }

    fn dims(&self) -> usize {
        match self {
            TrainedModel::Majority { dims, .. } => *dims,
            TrainedModel::Mnb(m) | TrainedModel::Dmnb(m) => m.dims,
            TrainedModel::Gnb(m) => m.means[0].len(),
            TrainedModel::Svm(m) => m.dims,
        }
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let json = serde_json::to_string(self)?;
        fs::write(path, json).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(serde_json::from_str(&text)?)
    }
}

/// Deterministic label for one vector.
pub fn predict(model: &TrainedModel, vector: &SparseVector) -> Result<SentimentLabel> {
    let dims = model.dims();
    if let Some(id) = vector.max_id().filter(|&id| id >= dims) {
        return Err(Error::FeatureOutOfRange { id, len: dims });
    }
    Ok(match model {
        TrainedModel::Majority { label, .. } => *label,
        TrainedModel::Mnb(m) | TrainedModel::Dmnb(m) => m.predict(vector),
        TrainedModel::Gnb(m) => m.predict(vector),
        TrainedModel::Svm(m) => m.predict(vector),
    })
}

/// Index of the largest score; ties go to the earliest index.
pub(crate) fn argmax(scores: &[f64]) -> usize {
    let mut best = 0;
    for (i, &s) in scores.iter().enumerate().skip(1) {
        if s > scores[best] {
            best = i;
        }
    }
    best
}

/// Learner choice and hyper-parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ClassifierConfig {
    Majority,
    Mnb { alpha: f64 },
    Dmnb { iterations: usize },
    Gnb,
    Svm { c: f64 },
}

impl ClassifierConfig {
    pub fn name(&self) -> &'static str {
        match self {
            ClassifierConfig::Majority => "majority",
            ClassifierConfig::Mnb { .. } => "mnb",
            ClassifierConfig::Dmnb { .. } => "dmnb",
            ClassifierConfig::Gnb => "gnb",
            ClassifierConfig::Svm { .. } => "svm",
        }
    }

    /// The four learners with default parameters.
    pub fn learners() -> [ClassifierConfig; 4] {
        [
            ClassifierConfig::Mnb { alpha: 1.0 },
            ClassifierConfig::Dmnb { iterations: 1 },
            ClassifierConfig::Gnb,
            ClassifierConfig::Svm { c: 1.0 },
        ]
    }

    pub fn train(&self, dataset: &Dataset) -> Result<TrainedModel> {
        match *self {
            ClassifierConfig::Majority => train_majority(dataset),
            ClassifierConfig::Mnb { alpha } => train_mnb(dataset, alpha),
            ClassifierConfig::Dmnb { iterations } => train_dmnb(dataset, iterations),
            ClassifierConfig::Gnb => train_gnb(dataset),
            ClassifierConfig::Svm { c } => train_svm(dataset, c),
        }
    }
}

impl fmt::Display for ClassifierConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClassifierConfig {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "majority" => Ok(ClassifierConfig::Majority),
            "mnb" => Ok(ClassifierConfig::Mnb { alpha: 1.0 }),
            "dmnb" => Ok(ClassifierConfig::Dmnb { iterations: 1 }),
            "gnb" | "nb" => Ok(ClassifierConfig::Gnb),
            "svm" => Ok(ClassifierConfig::Svm { c: 1.0 }),
            other => Err(Error::InvalidArgument(format!(
                "unknown classifier {other:?} (expected majority, mnb, dmnb, gnb or svm)"
            ))),
        }
    }
}
