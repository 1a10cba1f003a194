//! Shared fixtures for the benchmarks.

use cubical_core::cubical::{boundary, day_tensor};
use cubical_core::enriched::{discrete_enrich, CubicalCategory};
use cubical_core::{FinCategory, Flavor, RawWord, TruncatedCubicalSet};

/// The square of the circle `∂□[2]`.
pub fn torus(flavor: Flavor) -> TruncatedCubicalSet {
    let circle = boundary(flavor, 2, 2).expect("boundary of the square").0;
    day_tensor(&circle, &circle).expect("tensor of circles")
}

/// A long word on `□^4` that normalizes to something short.
pub fn long_word() -> RawWord {
    RawWord::parse(
        "s@0 . g@0 . d1@1 . g@1 . d0@0 . d1@2 . s@1 . g@0",
        Flavor::Connections,
        Some(4),
    )
    .expect("word parses")
}

/// `i([n])` with homs truncated at 2.
pub fn enriched_ordinal(n: usize) -> CubicalCategory {
    discrete_enrich(&FinCategory::ordinal(n), Flavor::Connections, 2).expect("ordinal enriches")
}
