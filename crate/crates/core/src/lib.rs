//! Core library for federated positive-unlabeled (PU) learning simulation.
//!
//! The crate is organized around the lifecycle of an experiment:
//!
//! - [`datahub`] ingests datasets (MNIST IDX, CIFAR-10 binary, synthetic
//!   Gaussians), partitions them across clients (iid or label-sorted
//!   shards), and applies PU labeling (positive-class assignment plus a
//!   labeled-fraction split).
//! - [`model`] is a small differentiable MLP classifier with an
//!   SGD-with-momentum optimizer and a finite-difference gradient checker.
//! - [`purisk`] implements the federated PU risk estimator with its
//!   cross-client correction table, the three baseline losses, and exact
//!   population oracles used for unbiasedness testing.
//! - [`fedsim`] runs communication rounds: client updates, FedAvg /
//!   FedSGD / FedProx aggregation, straggler scheduling, and evaluation.
//! - [`theory`] evaluates the generalization-bound expressions and audits
//!   the risk-decomposition lemma numerically.
//!
//! All randomness flows through explicit 64-bit seeds (see [`rng`]); every
//! operation is deterministic given its inputs and seed.

pub mod datahub;
pub mod error;
pub mod fedsim;
pub mod model;
pub mod purisk;
pub mod rng;
pub mod theory;

pub use datahub::{ClassPriorVector, ClientDataset, Dataset, Example, PartitionPlan};
pub use error::{Error, Result};
pub use fedsim::{ClientRunConfig, RoundLog, ServerState};
pub use model::{ArchitectureSpec, BatchOutput, OptimizerState, ParamVector};
pub use purisk::{CrossClientTermTable, RiskBreakdown, SurrogateSpec};
