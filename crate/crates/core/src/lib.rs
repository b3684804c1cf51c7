//! Path partitions of regular graphs with an exact discharging certificate.
//!
//! The pipeline: build a [`graph::Graph`], grow an initial
//! [`partition::PathPartition`], drive it to a locally canonical state with
//! the [`moves`] catalog ([`canonical::canonicalize`]), then redistribute
//! unit charges by the transfer rules and check every component holds
//! enough ([`discharge`]). Small graphs can be solved exactly with
//! [`oracle`].

pub mod canonical;
pub mod cli;
pub mod discharge;
pub mod graph;
pub mod moves;
pub mod oracle;
pub mod partition;
