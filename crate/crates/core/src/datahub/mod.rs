//! Dataset ingestion, client partitioning, and PU labeling.
//!
//! The flow is: load a [`Dataset`] (MNIST, CIFAR-10, or synthetic), build a
//! [`PartitionPlan`] assigning samples to clients, give each client its
//! positive-class set, then split each client's data into a labeled part
//! (positive classes only, a fraction of each) and an unlabeled remainder.
//!
//! True class labels survive partitioning but are only reachable through
//! explicit `oracle_label` accessors, so training code cannot use them by
//! accident.

mod cifar;
mod idx;
mod labeling;
mod partition;
mod synth;

pub use cifar::load_cifar10_bin;
pub use idx::load_mnist_idx;
pub use labeling::label_fraction_split;
pub use partition::{assign_positive_classes, partition_iid, partition_noniid_shards};
pub use synth::synth_gaussian;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which half of a dataset this is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Split {
    Train,
    Test,
}

/// One sample: a feature vector plus its hidden true class.
///
/// The true label is deliberately not a public field; evaluation and the
/// labeling step reach it through [`Example::oracle_label`], which keeps
/// every use greppable.
#[derive(Debug, Clone, Copy)]
pub struct Example<'a> {
    features: &'a [f32],
    true_label: u16,
}

impl<'a> Example<'a> {
    pub fn features(&self) -> &'a [f32] {
        self.features
    }

    /// True class index. For evaluation and oracles only.
    pub fn oracle_label(&self) -> usize {
        self.true_label as usize
    }
}

/// A loaded dataset: flat row-major features in `[0,1]` plus hidden labels.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    feats: Vec<f32>,
    labels: Vec<u16>,
    dim: usize,
    num_classes: usize,
    split: Split,
}

impl Dataset {
    pub fn new(
        feats: Vec<f32>,
        labels: Vec<u16>,
        dim: usize,
        num_classes: usize,
        split: Split,
    ) -> Result<Self> {
        if dim == 0 || feats.len() != labels.len() * dim {
            return Err(Error::consistency(format!(
                "feature buffer ({}) does not match {} examples x dim {}",
                feats.len(),
                labels.len(),
                dim
            )));
        }
        if let Some(&l) = labels.iter().find(|&&l| (l as usize) >= num_classes) {
            return Err(Error::format(format!(
                "label {l} out of range for {num_classes} classes"
            )));
        }
        if feats.iter().any(|v| !(0.0..=1.0).contains(v)) {
            return Err(Error::format("feature component outside [0,1]".to_string()));
        }
        Ok(Dataset {
            feats,
            labels,
            dim,
            num_classes,
            split,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn split(&self) -> Split {
        self.split
    }

    pub fn with_split(mut self, split: Split) -> Self {
        self.split = split;
        self
    }

    pub fn features_of(&self, index: usize) -> &[f32] {
        &self.feats[index * self.dim..(index + 1) * self.dim]
    }

    /// True class of `index`. For evaluation, labeling, and oracles only.
    pub fn oracle_label(&self, index: usize) -> usize {
        self.labels[index] as usize
    }

    pub fn example(&self, index: usize) -> Example<'_> {
        Example {
            features: self.features_of(index),
            true_label: self.labels[index],
        }
    }

    /// Count of samples per class.
    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.num_classes];
        for &l in &self.labels {
            counts[l as usize] += 1;
        }
        counts
    }
}

/// How labeled samples are budgeted per positive class within a client.
///
/// Serialized as a bare number: values in `(0, 1]` are a fraction of the
/// class's samples, integral values `>= 2` are an absolute per-class count
/// (a value of exactly 1 always means "label everything").
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LabelBudget {
    Fraction(f64),
    PerClassCount(usize),
}

impl LabelBudget {
    pub fn validate(&self) -> Result<()> {
        match *self {
            LabelBudget::Fraction(f) if f > 0.0 && f <= 1.0 => Ok(()),
            LabelBudget::Fraction(f) => Err(Error::config(format!(
                "labeled fraction {f} outside (0, 1]"
            ))),
            LabelBudget::PerClassCount(c) if c >= 1 => Ok(()),
            LabelBudget::PerClassCount(_) => {
                Err(Error::config("per-class labeled count must be >= 1".into()))
            }
        }
    }
}

impl Serialize for LabelBudget {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            LabelBudget::Fraction(f) => s.serialize_f64(f),
            LabelBudget::PerClassCount(c) => s.serialize_f64(c as f64),
        }
    }
}

impl<'de> Deserialize<'de> for LabelBudget {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = f64::deserialize(d)?;
        if v > 0.0 && v <= 1.0 {
            Ok(LabelBudget::Fraction(v))
        } else if v > 1.0 && v.fract() == 0.0 {
            Ok(LabelBudget::PerClassCount(v as usize))
        } else {
            Err(serde::de::Error::custom(format!(
                "labeled_fraction {v} is neither a fraction in (0,1] nor an integral count >= 2"
            )))
        }
    }
}

/// Sample-to-client distribution scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PartitionMode {
    Iid,
    NoniidShards {
        shards_per_client: usize,
        total_shards: usize,
    },
}

/// One client's slice of a partition plan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClientPlan {
    pub id: usize,
    pub indices: Vec<usize>,
    pub positive_classes: Vec<usize>,
    pub labeled_fraction: LabelBudget,
}

/// Full description of how a training set is split into clients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionPlan {
    pub num_clients: usize,
    pub mode: PartitionMode,
    pub seed: u64,
    pub overlap: bool,
    pub clients: Vec<ClientPlan>,
}

impl PartitionPlan {
    /// Set the same label budget on every client.
    pub fn set_uniform_label_budget(&mut self, budget: LabelBudget) {
        for c in &mut self.clients {
            c.labeled_fraction = budget;
        }
    }

    /// Union of all client positive-class sets.
    pub fn covered_classes(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self
            .clients
            .iter()
            .flat_map(|c| c.positive_classes.iter().copied())
            .collect();
        all.sort_unstable();
        all.dedup();
        all
    }

    /// All clients' positive sets, indexed by client id.
    pub fn positive_sets(&self) -> Vec<Vec<usize>> {
        self.clients.iter().map(|c| c.positive_classes.clone()).collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// One client's PU training data: labeled positives plus an unlabeled pool.
///
/// Holds indices into the shared [`Dataset`] rather than feature copies.
#[derive(Debug, Clone, PartialEq)]
pub struct ClientDataset {
    pub client_id: usize,
    pub num_classes: usize,
    /// Sorted positive-class set C_P of this client.
    pub positive_set: Vec<usize>,
    /// Labeled samples as (dataset index, label); every label is in
    /// `positive_set`.
    labeled: Vec<(usize, usize)>,
    /// Unlabeled samples as dataset indices. Their classes are only
    /// reachable through [`ClientDataset::oracle_label`].
    unlabeled: Vec<usize>,
    /// Labeled count per class, aligned with `positive_set`.
    pub labeled_counts: Vec<usize>,
    /// Positive classes that had zero samples in this client (warning).
    pub empty_positive_classes: Vec<usize>,
}

impl ClientDataset {
    pub(crate) fn new(
        client_id: usize,
        num_classes: usize,
        positive_set: Vec<usize>,
        labeled: Vec<(usize, usize)>,
        unlabeled: Vec<usize>,
        empty_positive_classes: Vec<usize>,
    ) -> Self {
        let labeled_counts = positive_set
            .iter()
            .map(|&c| labeled.iter().filter(|&&(_, l)| l == c).count())
            .collect();
        ClientDataset {
            client_id,
            num_classes,
            positive_set,
            labeled,
            unlabeled,
            labeled_counts,
            empty_positive_classes,
        }
    }

    pub fn labeled(&self) -> &[(usize, usize)] {
        &self.labeled
    }

    pub fn unlabeled(&self) -> &[usize] {
        &self.unlabeled
    }

    /// Negative classes C_N = complement of the positive set.
    pub fn negative_set(&self) -> Vec<usize> {
        (0..self.num_classes)
            .filter(|c| !self.positive_set.contains(c))
            .collect()
    }

    pub fn n_labeled(&self) -> usize {
        self.labeled.len()
    }

    pub fn n_unlabeled(&self) -> usize {
        self.unlabeled.len()
    }

    /// Total sample count n^k = labeled + unlabeled.
    pub fn n_total(&self) -> usize {
        self.labeled.len() + self.unlabeled.len()
    }

    /// True class of an unlabeled sample. For evaluation and the
    /// fully-supervised baseline only; PU losses never see this.
    pub fn oracle_label(&self, ds: &Dataset, unlabeled_pos: usize) -> usize {
        ds.oracle_label(self.unlabeled[unlabeled_pos])
    }
}

/// Class prior vector: each entry positive, summing to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassPriorVector(Vec<f64>);

impl ClassPriorVector {
    pub fn new(pi: Vec<f64>) -> Result<Self> {
        if pi.iter().any(|&p| p <= 0.0) {
            return Err(Error::config("class priors must all be positive".into()));
        }
        let sum: f64 = pi.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::config(format!(
                "class priors sum to {sum}, expected 1 within 1e-9"
            )));
        }
        Ok(ClassPriorVector(pi))
    }

    pub fn uniform(num_classes: usize) -> Self {
        ClassPriorVector(vec![1.0 / num_classes as f64; num_classes])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, class: usize) -> f64 {
        self.0[class]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn priors_validate_sum_and_positivity() {
        assert!(ClassPriorVector::new(vec![0.5, 0.5]).is_ok());
        assert!(ClassPriorVector::new(vec![0.6, 0.5]).is_err());
        assert!(ClassPriorVector::new(vec![1.0, 0.0]).is_err());
        let u = ClassPriorVector::uniform(10);
        assert!((u.as_slice().iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn label_budget_roundtrip() {
        let f: LabelBudget = serde_json::from_str("0.5").unwrap();
        assert_eq!(f, LabelBudget::Fraction(0.5));
        let c: LabelBudget = serde_json::from_str("5").unwrap();
        assert_eq!(c, LabelBudget::PerClassCount(5));
        let one: LabelBudget = serde_json::from_str("1.0").unwrap();
        assert_eq!(one, LabelBudget::Fraction(1.0));
        assert!(serde_json::from_str::<LabelBudget>("1.5").is_err());
    }

    #[test]
    fn dataset_rejects_out_of_range_features() {
        let err = Dataset::new(vec![0.5, 1.5], vec![0], 2, 2, Split::Train);
        assert!(err.is_err());
    }
}
