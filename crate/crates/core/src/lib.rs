//! Tensor-product and branching multiplicities along the diagram sequences
//! `Z_k(X₁, X₂)` obtained by joining two marked Dynkin diagrams with a chain
//! of `k` nodes, with stabilization checks in `k` and the stable
//! representation ring.

pub mod diagram;
pub mod error;
pub mod hweights;
pub mod lattice;
pub mod linalg;
pub mod oracle;
pub mod parse;
pub mod paths;
pub mod ring;
pub mod stab;

pub use diagram::{DynkinDiagram, MarkedDiagram, MarkedPair, TypeClass, ZkDiagram};
pub use error::{Error, Result};
pub use hweights::{HVector, TwoSidedWeight};
pub use lattice::Weight;
pub use linalg::Q;
