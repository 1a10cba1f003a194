use std::fmt;

use super::{CubeFunction, Flavor};

/// Marker for a coordinate that is constantly 1.
const ONE: u32 = u32::MAX;

/// Compact description of a cube morphism `□^src -> □^tgt`.
///
/// Every morphism of either cube category sends each target coordinate to
/// either the constant 1 or the maximum of a set of source coordinates (the
/// empty maximum being the constant 0). `coords[k]` stores that set as a
/// bitmask, or [`ONE`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubeMap {
    src: usize,
    coords: Vec<u32>,
}

impl CubeMap {
    pub fn identity(n: usize) -> Self {
        CubeMap {
            src: n,
            coords: (0..n).map(|k| 1 << k).collect(),
        }
    }

    /// The unique map `□^n -> □^0`.
    pub fn terminal(n: usize) -> Self {
        CubeMap {
            src: n,
            coords: Vec::new(),
        }
    }

    /// The vertex `□^0 -> □^n` with the given coordinates.
    pub fn vertex(bits: &[bool]) -> Self {
        CubeMap {
            src: 0,
            coords: bits.iter().map(|&b| if b { ONE } else { 0 }).collect(),
        }
    }

    /// `δ^ε_i : □^n -> □^{n+1}`.
    pub fn face(eps: bool, i: usize, n: usize) -> Self {
        assert!(i <= n, "face index {i} out of range on dimension {n}");
        let mut coords: Vec<u32> = (0..n).map(|k| 1 << k).collect();
        coords.insert(i, if eps { ONE } else { 0 });
        CubeMap { src: n, coords }
    }

    /// `σ_i : □^n -> □^{n-1}`.
    pub fn degeneracy(i: usize, n: usize) -> Self {
        assert!(i < n, "degeneracy index {i} out of range on dimension {n}");
        CubeMap {
            src: n,
            coords: (0..n).filter(|&k| k != i).map(|k| 1 << k).collect(),
        }
    }

    /// `γ_i : □^n -> □^{n-1}`, merging coordinates `i` and `i + 1` by max.
    pub fn connection(i: usize, n: usize) -> Self {
        assert!(
            i + 1 < n,
            "connection index {i} out of range on dimension {n}"
        );
        let mut coords = Vec::with_capacity(n - 1);
        for k in 0..n {
            if k == i {
                coords.push((1 << i) | (1 << (i + 1)));
            } else if k != i + 1 {
                coords.push(1 << k);
            }
        }
        CubeMap { src: n, coords }
    }

    /// Builds a map from raw coordinate data: `None` is the constant 1,
    /// `Some(mask)` the max over `mask` (so `Some(0)` is the constant 0).
    pub fn from_coords(src: usize, coords: impl IntoIterator<Item = Option<u32>>) -> Self {
        let coords = coords
            .into_iter()
            .map(|c| c.unwrap_or(ONE))
            .collect::<Vec<_>>();
        debug_assert!(coords.iter().all(|&c| c == ONE || c >> src == 0));
        CubeMap { src, coords }
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn tgt(&self) -> usize {
        self.coords.len()
    }

    /// Coordinate `k`: `None` for constant 1, otherwise the source mask.
    pub fn coord(&self, k: usize) -> Option<u32> {
        match self.coords[k] {
            ONE => None,
            m => Some(m),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.src == self.tgt() && self.coords.iter().enumerate().all(|(k, &c)| c == 1 << k)
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &CubeMap) -> CubeMap {
        assert_eq!(f.tgt(), self.src, "composing {f:?} into {self:?}");
        let coords = self
            .coords
            .iter()
            .map(|&c| {
                if c == ONE {
                    return ONE;
                }
                let mut acc = 0u32;
                let mut bits = c;
                while bits != 0 {
                    let s = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    match f.coords[s] {
                        ONE => return ONE,
                        m => acc |= m,
                    }
                }
                acc
            })
            .collect();
        CubeMap { src: f.src, coords }
    }

    /// Cartesian product `self × g`, with `self` on the leading coordinates.
    pub fn tensor(&self, g: &CubeMap) -> CubeMap {
        let shift = self.src;
        let coords = self
            .coords
            .iter()
            .copied()
            .chain(
                g.coords
                    .iter()
                    .map(|&c| if c == ONE { ONE } else { c << shift }),
            )
            .collect();
        CubeMap {
            src: self.src + g.src,
            coords,
        }
    }

    /// Image of a source vertex (bit `k` of `x` is coordinate `k`).
    pub fn apply(&self, x: u32) -> u32 {
        let mut out = 0;
        for (k, &c) in self.coords.iter().enumerate() {
            if c == ONE || c & x != 0 {
                out |= 1 << k;
            }
        }
        out
    }

    /// Whether the map belongs to the cube category of the given flavor:
    /// the non-constant coordinates use disjoint, increasing source blocks,
    /// which are singletons in the reduced flavor.
    pub fn in_flavor(&self, flavor: Flavor) -> bool {
        let mut floor = 0u32;
        for &c in &self.coords {
            if c == ONE || c == 0 {
                continue;
            }
            if c.trailing_zeros() < floor {
                return false;
            }
            let top = 32 - c.leading_zeros();
            if !flavor.has_connections() && c.count_ones() != 1 {
                return false;
            }
            floor = top;
        }
        true
    }

    pub fn to_function(&self) -> CubeFunction {
        let m = self.src;
        let n = self.tgt();
        let table = (0..1u32 << m)
            .map(|row| {
                let x = reverse_bits(row, m);
                reverse_bits(self.apply(x), n)
            })
            .collect();
        CubeFunction::from_table(m, n, table).expect("table has the right shape")
    }
}

/// Converts between "bit k is coordinate k" and the lexicographic encoding
/// used by truth tables, where coordinate 0 is the most significant bit.
pub(crate) fn reverse_bits(x: u32, width: usize) -> u32 {
    let mut out = 0;
    for k in 0..width {
        if x >> k & 1 == 1 {
            out |= 1 << (width - 1 - k);
        }
    }
    out
}

impl fmt::Debug for CubeMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "□^{}->(", self.src)?;
        for (k, &c) in self.coords.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            match c {
                ONE => f.write_str("1")?,
                0 => f.write_str("0")?,
                m => {
                    let vars: Vec<String> = (0..32)
                        .filter(|s| m >> s & 1 == 1)
                        .map(|s| format!("x{s}"))
                        .collect();
                    if vars.len() == 1 {
                        f.write_str(&vars[0])?;
                    } else {
                        write!(f, "max({})", vars.join(","))?;
                    }
                }
            }
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_shapes() {
        assert_eq!(CubeMap::face(false, 0, 0).apply(0), 0);
        assert_eq!(CubeMap::face(true, 0, 0).apply(0), 1);
        let g = CubeMap::connection(0, 2);
        assert_eq!(
            (0..4).map(|x| g.apply(x)).collect::<Vec<_>>(),
            vec![0, 1, 1, 1]
        );
        assert!(g.in_flavor(Flavor::Connections));
        assert!(!g.in_flavor(Flavor::Reduced));
    }

    #[test]
    fn swap_is_in_neither_flavor() {
        let swap = CubeMap::from_coords(2, [Some(0b10), Some(0b01)]);
        assert!(!swap.in_flavor(Flavor::Reduced));
        assert!(!swap.in_flavor(Flavor::Connections));
    }

    #[test]
    fn composition_matches_pointwise() {
        let f = CubeMap::face(true, 1, 2);
        let g = CubeMap::connection(1, 3);
        let gf = g.after(&f);
        for x in 0..4 {
            assert_eq!(gf.apply(x), g.apply(f.apply(x)));
        }
    }
}
