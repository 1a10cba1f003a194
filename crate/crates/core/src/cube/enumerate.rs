use crate::error::{ensure, Result};

use super::{CubeFunction, CubeMap, CubeWord, Flavor, DIM_GUARD};

/// All morphisms `□^m -> □^n` of the given flavor as compact maps, in
/// increasing order.
///
/// Target coordinates are filled left to right with a constant or with a
/// nonempty block of source coordinates lying strictly above every block
/// used so far (a singleton in the reduced flavor).
pub(crate) fn hom_maps(flavor: Flavor, m: usize, n: usize) -> Vec<CubeMap> {
    fn go(
        flavor: Flavor,
        m: usize,
        n: usize,
        floor: usize,
        coords: &mut Vec<Option<u32>>,
        out: &mut Vec<CubeMap>,
    ) {
        if coords.len() == n {
            out.push(CubeMap::from_coords(m, coords.iter().copied()));
            return;
        }
        coords.push(Some(0));
        go(flavor, m, n, floor, coords, out);
        coords.pop();
        coords.push(None);
        go(flavor, m, n, floor, coords, out);
        coords.pop();
        for lo in floor..m {
            if flavor.has_connections() {
                // Blocks with minimum `lo`: `lo` plus any subset of the higher coordinates.
                let rest = m - lo - 1;
                for sub in 0..1u32 << rest {
                    let mask = 1 << lo | sub << (lo + 1);
                    let top = 32 - mask.leading_zeros() as usize;
                    coords.push(Some(mask));
                    go(flavor, m, n, top, coords, out);
                    coords.pop();
                }
            } else {
                coords.push(Some(1 << lo));
                go(flavor, m, n, lo + 1, coords, out);
                coords.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(flavor, m, n, 0, &mut Vec::with_capacity(n), &mut out);
    out.sort();
    out
}

/// All normal forms `□^m -> □^n`.
pub fn enumerate_homs(flavor: Flavor, m: usize, n: usize) -> Result<Vec<CubeWord>> {
    ensure!(
        m <= DIM_GUARD && n <= DIM_GUARD,
        Guard,
        "hom-set enumeration limited to dimensions <= {DIM_GUARD}, got {m} and {n}"
    );
    hom_maps(flavor, m, n)
        .iter()
        .map(|f| CubeWord::from_map(f, flavor))
        .collect()
}

/// `|hom(□^m, □^n)|` without materializing the words.
pub fn hom_count(flavor: Flavor, m: usize, n: usize) -> Result<usize> {
    ensure!(
        m <= DIM_GUARD && n <= DIM_GUARD,
        Guard,
        "hom-set enumeration limited to dimensions <= {DIM_GUARD}, got {m} and {n}"
    );
    Ok(hom_maps(flavor, m, n).len())
}

/// Decides whether a function between cubes is a morphism of the given
/// cube category, returning its normal form if so.
///
/// Each target coordinate must be constant or the maximum of the source
/// coordinates it depends on; the result is confirmed by evaluating the
/// returned word back to a truth table.
pub fn factorize(f: &CubeFunction, flavor: Flavor) -> Result<Option<CubeWord>> {
    let m = f.src_dim();
    let n = f.tgt_dim();
    ensure!(
        m <= DIM_GUARD && n <= DIM_GUARD,
        Guard,
        "factorization limited to dimensions <= {DIM_GUARD}, got {m} and {n}"
    );
    let rows = 1usize << m;
    // Truth-table bit of target coordinate k at source row r.
    let out_bit = |r: usize, k: usize| f.table()[r] >> (n - 1 - k) & 1 == 1;
    // Source coordinate s flips row bit (m - 1 - s).
    let src_bit = |r: usize, s: usize| r >> (m - 1 - s) & 1 == 1;

    let mut coords = Vec::with_capacity(n);
    for k in 0..n {
        let first = out_bit(0, k);
        if (0..rows).all(|r| out_bit(r, k) == first) {
            coords.push(if first { None } else { Some(0) });
            continue;
        }
        let mut mask = 0u32;
        for s in 0..m {
            let flip = 1 << (m - 1 - s);
            if (0..rows).any(|r| out_bit(r, k) != out_bit(r ^ flip, k)) {
                mask |= 1 << s;
            }
        }
        let is_max =
            (0..rows).all(|r| out_bit(r, k) == (0..m).any(|s| mask >> s & 1 == 1 && src_bit(r, s)));
        if !is_max {
            return Ok(None);
        }
        coords.push(Some(mask));
    }
    let map = CubeMap::from_coords(m, coords);
    if !map.in_flavor(flavor) {
        return Ok(None);
    }
    let word = CubeWord::from_map(&map, flavor)?;
    ensure!(
        word.eval()? == *f,
        Validation,
        "factorization of {f:?} does not evaluate back"
    );
    Ok(Some(word))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(hom_count(Flavor::Reduced, 1, 1).unwrap(), 3);
        assert_eq!(hom_count(Flavor::Connections, 2, 1).unwrap(), 5);
        for n in 0..5 {
            assert_eq!(hom_count(Flavor::Reduced, 0, n).unwrap(), 1 << n);
        }
        assert_eq!(hom_count(Flavor::Connections, 1, 2).unwrap(), 8);
        assert_eq!(hom_count(Flavor::Connections, 2, 2).unwrap(), 17);
        assert_eq!(hom_count(Flavor::Connections, 4, 4).unwrap(), 961);
    }

    #[test]
    fn guard() {
        assert!(enumerate_homs(Flavor::Reduced, 7, 1)
            .unwrap_err()
            .is_guard());
    }

    #[test]
    fn factorize_examples() {
        let swap = CubeFunction::from_fn(2, 2, |x| vec![x[1], x[0]]);
        assert_eq!(factorize(&swap, Flavor::Reduced).unwrap(), None);
        assert_eq!(factorize(&swap, Flavor::Connections).unwrap(), None);
        let max = CubeFunction::from_fn(2, 1, |x| vec![x[0] || x[1]]);
        assert_eq!(factorize(&max, Flavor::Reduced).unwrap(), None);
        let w = factorize(&max, Flavor::Connections).unwrap().unwrap();
        assert_eq!(w.to_string(), "g@0 : 2 -> 1");
        let min = CubeFunction::from_fn(2, 1, |x| vec![x[0] && x[1]]);
        assert_eq!(factorize(&min, Flavor::Connections).unwrap(), None);
        let id = factorize(&CubeFunction::identity(3), Flavor::Reduced)
            .unwrap()
            .unwrap();
        assert!(id.is_identity());
    }
}
