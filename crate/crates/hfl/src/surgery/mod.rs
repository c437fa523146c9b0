//! Surgery complexes of links from abstract system data.

pub mod assemble;
pub mod lattice;
pub mod model;

pub use assemble::{assemble, homology, towers, ClassHomology, Mode, SpinClass, SurgeryComplex, SurgeryGenerator, Truncation};
pub use lattice::{hnf, Framing};
pub use model::{hopf_framing, hopf_model, unknot_model, SystemModel};
