//! Coefficient rings, sparse matrices, finite complexes and their homology.

pub mod cancel;
pub mod complex;
pub mod linalg;
pub mod matrix;
pub mod ring;
pub mod spectral;
pub mod towers;

pub use cancel::{reduce_units, stable_rank};
pub use complex::{FlatComplex, GradedComplex, HomologyRanks};
pub use matrix::{EntryJson, SparseMatrix};
pub use ring::{elem_mul, Monomial, RingElement, TruncatedRing};
pub use spectral::{spectral_sequence, FilteredComplex, FilteredGeneratorJson, FilteredJson, Page, SpectralSequence};
pub use towers::{infer_towers, synthetic_complex, TowerProfile};
