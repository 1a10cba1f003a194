//! Exact computational kernel for cubical homotopy theory.
//!
//! The crate is organized bottom-up:
//!
//! * [`cube`]: morphisms of the cube categories with and without connections,
//!   their normal forms and a truth-table oracle;
//! * [`presheaf`]: finite truncated presheaves over a generator-presented
//!   [`site::Site`], with maps, colimits and exhaustive map search;
//! * [`cubical`]: cubical sets (representables, boundaries, caps, Day tensor);
//! * [`simplicial`]: simplicial sets, nerves and the triangulation adjunction;
//! * [`chain`]: chain complexes, the interval `C[1]`, chain realization,
//!   integer homology and the dg-singular functor;
//! * [`enriched`]: cubical categories, the cosimplicial object `W` and the
//!   homotopy coherent nerve.

pub mod chain;
pub mod cube;
pub mod cubical;
pub mod enriched;
pub mod error;
pub mod format;
pub mod presheaf;
pub mod selftest;
pub mod simplicial;
pub mod site;
mod util;

pub use cube::{CubeFunction, CubeMap, CubeWord, Flavor, Generator, RawWord};
pub use cubical::{CubicalMap, CubicalSet, TruncatedCubicalSet};
pub use error::{Error, Result};
pub use presheaf::{Presheaf, PresheafMap, SearchLimits};
pub use simplicial::{FinCategory, SimplicialSet, TruncatedSimplicialSet};
