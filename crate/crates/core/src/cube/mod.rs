//! Morphisms of the cube categories.
//!
//! Two flavors are supported: the reduced cube category, generated by the
//! cofaces `δ^ε_i` and codegeneracies `σ_i`, and the cube category with
//! connections, which adds the max-connections `γ_i`. Indices are 0-based:
//! `δ^ε_i = Id^i × δ^ε × Id^{n-i}` on `□^n` with `0 <= i <= n`.
//!
//! Three representations live here:
//!
//! * [`CubeWord`], the normal-form generator word exposed to users,
//! * [`CubeFunction`], an explicit truth table used as the semantic oracle,
//! * [`CubeMap`], a compact coordinate description used by the presheaf code.

pub(crate) mod enumerate;
mod function;
mod map;
pub mod relations;
pub mod rewrite;
mod word;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

pub use enumerate::{enumerate_homs, factorize, hom_count};
pub use function::CubeFunction;
pub use map::CubeMap;
pub use word::{CubeWord, Generator, RawWord};

/// Largest cube dimension accepted by enumerative operations.
pub const DIM_GUARD: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Flavor {
    /// Cofaces and codegeneracies only.
    #[serde(rename = "r")]
    Reduced,
    /// Cofaces, codegeneracies and max-connections.
    #[serde(rename = "c")]
    Connections,
}

impl Flavor {
    pub const ALL: [Flavor; 2] = [Flavor::Reduced, Flavor::Connections];

    pub fn has_connections(self) -> bool {
        matches!(self, Flavor::Connections)
    }

    pub fn short(self) -> &'static str {
        match self {
            Flavor::Reduced => "r",
            Flavor::Connections => "c",
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Reduced => "reduced",
            Flavor::Connections => "connections",
        })
    }
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "r" | "reduced" => Ok(Flavor::Reduced),
            "c" | "connections" => Ok(Flavor::Connections),
            other => Err(Error::Parse(format!("unknown flavor `{other}`"))),
        }
    }
}
