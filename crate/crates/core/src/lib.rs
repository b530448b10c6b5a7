//! Clique and independent-set counting for graphs with a maximum-degree cap.

pub mod bounds;
pub mod counting;
pub mod enumerate;
pub mod error;
pub mod fixed_loss;
pub mod graph;
pub mod record;
pub mod structure;
pub mod transform;

pub use counting::{clique_vector, independent_vector, CliqueVector};
pub use error::{Error, Result};
pub use graph::{canonical_form, graph6_decode, graph6_encode, CanonicalForm, Graph, VertexSet, MAX_VERTICES};
