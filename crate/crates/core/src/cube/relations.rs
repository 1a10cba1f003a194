//! The defining relations among the cube generators, instantiated at every
//! valid index.
//!
//! Words are written outermost first, so `[σ_i, δ^ε_j]` is `σ_i ∘ δ^ε_j`.

use super::{Flavor, Generator, RawWord};

use Generator::{Conn as G, Degen as S};

fn d(eps: bool, i: usize) -> Generator {
    Generator::face(eps, i)
}

/// One relation family: given `(i, j, ε, ε')` it yields the two sides, or
/// `None` when the side condition fails.
pub struct Family {
    pub name: &'static str,
    pub needs_connections: bool,
    sides: fn(usize, usize, bool, bool) -> Option<(Vec<Generator>, Vec<Generator>)>,
}

/// A single instance `lhs = rhs` of a relation, both read on `□^src_dim`.
#[derive(Clone, Debug)]
pub struct Instance {
    pub family: &'static str,
    pub lhs: RawWord,
    pub rhs: RawWord,
}

pub const FAMILIES: &[Family] = &[
    Family {
        name: "d_i d_j = d_(j+1) d_i (i <= j)",
        needs_connections: false,
        sides: |i, j, e, f| (i <= j).then(|| (vec![d(e, i), d(f, j)], vec![d(f, j + 1), d(e, i)])),
    },
    Family {
        name: "s_i s_j = s_j s_(i+1) (i >= j)",
        needs_connections: false,
        sides: |i, j, _, _| (i >= j).then(|| (vec![S(i), S(j)], vec![S(j), S(i + 1)])),
    },
    Family {
        name: "s_i d_j = d_(j-1) s_i (i < j)",
        needs_connections: false,
        sides: |i, j, e, _| (i < j).then(|| (vec![S(i), d(e, j)], vec![d(e, j - 1), S(i)])),
    },
    Family {
        name: "s_i d_i = id",
        needs_connections: false,
        sides: |i, j, e, _| (i == j).then(|| (vec![S(i), d(e, i)], vec![])),
    },
    Family {
        name: "s_i d_j = d_j s_(i-1) (i > j)",
        needs_connections: false,
        sides: |i, j, e, _| (i > j).then(|| (vec![S(i), d(e, j)], vec![d(e, j), S(i - 1)])),
    },
    Family {
        name: "g_i g_i = g_i g_(i+1)",
        needs_connections: true,
        sides: |i, j, _, _| (i == j).then(|| (vec![G(i), G(i)], vec![G(i), G(i + 1)])),
    },
    Family {
        name: "g_i g_j = g_j g_(i+1) (i > j)",
        needs_connections: true,
        sides: |i, j, _, _| (i > j).then(|| (vec![G(i), G(j)], vec![G(j), G(i + 1)])),
    },
    Family {
        name: "s_i g_i = s_i s_i",
        needs_connections: true,
        sides: |i, j, _, _| (i == j).then(|| (vec![S(i), G(i)], vec![S(i), S(i)])),
    },
    Family {
        name: "s_i g_j = g_(j-1) s_i (i < j)",
        needs_connections: true,
        sides: |i, j, _, _| (i < j).then(|| (vec![S(i), G(j)], vec![G(j - 1), S(i)])),
    },
    Family {
        name: "s_i g_j = g_j s_(i+1) (i > j)",
        needs_connections: true,
        sides: |i, j, _, _| (i > j).then(|| (vec![S(i), G(j)], vec![G(j), S(i + 1)])),
    },
    Family {
        name: "g_i d0_i = id",
        needs_connections: true,
        sides: |i, j, _, _| (i == j).then(|| (vec![G(i), d(false, i)], vec![])),
    },
    Family {
        name: "g_i d0_(i+1) = id",
        needs_connections: true,
        sides: |i, j, _, _| (i == j).then(|| (vec![G(i), d(false, i + 1)], vec![])),
    },
    Family {
        name: "g_i d1_i = d1_i s_i",
        needs_connections: true,
        sides: |i, j, _, _| (i == j).then(|| (vec![G(i), d(true, i)], vec![d(true, i), S(i)])),
    },
    Family {
        name: "g_i d1_(i+1) = d1_i s_i",
        needs_connections: true,
        sides: |i, j, _, _| (i == j).then(|| (vec![G(i), d(true, i + 1)], vec![d(true, i), S(i)])),
    },
    Family {
        name: "g_i d_j = d_(j-1) g_i (i+1 < j)",
        needs_connections: true,
        sides: |i, j, e, _| (i + 1 < j).then(|| (vec![G(i), d(e, j)], vec![d(e, j - 1), G(i)])),
    },
    Family {
        name: "g_i d_j = d_j g_(i-1) (i > j)",
        needs_connections: true,
        sides: |i, j, e, _| (i > j).then(|| (vec![G(i), d(e, j)], vec![d(e, j), G(i - 1)])),
    },
];

/// The literal printed variant `γ_i γ_j = γ_{i+1} γ_j (i > j)`, kept so the
/// test suite can show that it is not sound under any index reading.
pub const MISPRINTED_CONNECTION_RELATION: Family = Family {
    name: "g_i g_j = g_(i+1) g_j (i > j), as printed",
    needs_connections: true,
    sides: |i, j, _, _| (i > j).then(|| (vec![G(i), G(j)], vec![G(i + 1), G(j)])),
};

impl Family {
    /// Every instance whose words stay within dimensions `<= max_dim`.
    pub fn instances(&self, flavor: Flavor, max_dim: usize) -> Vec<Instance> {
        let mut out = Vec::new();
        let mut seen = std::collections::HashSet::new();
        if self.needs_connections && !flavor.has_connections() {
            return out;
        }
        for src in 0..=max_dim {
            for i in 0..=max_dim {
                for j in 0..=max_dim {
                    for (e, f) in [(false, false), (false, true), (true, false), (true, true)] {
                        let Some((l, r)) = (self.sides)(i, j, e, f) else {
                            continue;
                        };
                        let lhs = RawWord::new(flavor, src, l);
                        let rhs = RawWord::new(flavor, src, r);
                        let (Ok(ld), Ok(rd)) = (lhs.dims(), rhs.dims()) else {
                            continue;
                        };
                        if ld.iter().chain(&rd).any(|&k| k > max_dim) {
                            continue;
                        }
                        if ld.last() != rd.last() {
                            continue;
                        }
                        let uses_eps = lhs
                            .gens
                            .iter()
                            .chain(&rhs.gens)
                            .any(|g| matches!(g, Generator::Face { .. }));
                        // Families without faces do not depend on the signs.
                        if !uses_eps && (e || f) {
                            continue;
                        }
                        if seen.insert((lhs.clone(), rhs.clone())) {
                            out.push(Instance {
                                family: self.name,
                                lhs,
                                rhs,
                            });
                        }
                    }
                }
            }
        }
        out
    }
}

/// All relation instances of a flavor up to the given ambient dimension.
pub fn instances(flavor: Flavor, max_dim: usize) -> Vec<Instance> {
    FAMILIES
        .iter()
        .flat_map(|fam| fam.instances(flavor, max_dim))
        .collect()
}
