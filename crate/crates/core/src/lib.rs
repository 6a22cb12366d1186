//! Exact computer algebra for Jacobian Poisson structures on ℝ⁴.
//!
//! Everything is computed over ℚ with polynomial coefficients; no floating
//! point enters any algebraic decision. Sign conventions for the anchor and
//! the Schouten bracket are fixed in [`exterior`] and inherited everywhere.

pub mod cohomology;
pub mod error;
pub mod exterior;
pub mod linalg;
pub mod mapping_class;
pub mod poisson;
pub mod singularity;
pub mod symbolic;

pub use cohomology::{CohomologyReport, FormalImage, LeafTubeData};
pub use error::Error;
pub use exterior::{DiffForm, Indices, Multivector, VolumeForm};
pub use mapping_class::{H1Lattice, IMatrix, TwistWord};
pub use poisson::{CasimirPair, PoissonBivector};
pub use singularity::{GermKind, MapGerm, SingularLocus, SingularityClass};
pub use symbolic::{parse_expr, Poly, RationalFn, VarSet, WeightVector, Q};
