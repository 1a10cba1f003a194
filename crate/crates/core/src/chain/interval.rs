//! The chain interval `C[1]`: `(0)`, `(1)` in degree 0, `(01)` in degree 1,
//! `d(01) = (1) - (0)`, with its monoidal segment and coalgebra structure.

use serde::Serialize;

use super::{
    associator, left_unitor, right_unitor, ChainMap, FinChainComplex, Matrix, Ring, TensorLayout,
};

/// Basis letters of `C[1]`: vertex 0, vertex 1 and the edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Letter {
    Zero,
    One,
    Edge,
}

impl Letter {
    pub(crate) fn degree(self) -> usize {
        (self == Letter::Edge) as usize
    }

    /// Position in the basis of `C[1]` in its degree.
    pub(crate) fn position(self) -> usize {
        match self {
            Letter::Zero | Letter::Edge => 0,
            Letter::One => 1,
        }
    }

    pub(crate) fn from_position(degree: usize, k: usize) -> Letter {
        match (degree, k) {
            (0, 0) => Letter::Zero,
            (0, _) => Letter::One,
            _ => Letter::Edge,
        }
    }

    pub(crate) fn symbol(self) -> char {
        match self {
            Letter::Zero => '0',
            Letter::One => '1',
            Letter::Edge => 'e',
        }
    }
}

/// `γ` on basis letters; `None` is zero.
pub(crate) fn gamma_letters(a: Letter, b: Letter) -> Option<Letter> {
    use Letter::*;
    match (a, b) {
        (Zero, x) | (x, Zero) => Some(x),
        (One, One) => Some(One),
        _ => None,
    }
}

/// `σ` on basis letters: vertices go to the unit, the edge to zero.
pub(crate) fn sigma_letter(a: Letter) -> bool {
    a != Letter::Edge
}

pub struct Interval {
    pub complex: FinChainComplex,
    pub unit: FinChainComplex,
    pub delta0: ChainMap,
    pub delta1: ChainMap,
    pub sigma: ChainMap,
    /// `C[1] ⊗ C[1] -> C[1]`.
    pub gamma: ChainMap,
    /// Comultiplication `C[1] -> C[1] ⊗ C[1]`.
    pub w: ChainMap,
    /// Counit `C[1] -> 1`.
    pub tau: ChainMap,
}

pub fn interval_c1(ring: Ring) -> Interval {
    let complex = FinChainComplex::new(
        ring,
        vec![vec!["(0)".into(), "(1)".into()], vec!["(01)".into()]],
        vec![
            Matrix::zeros(0, 2),
            Matrix::from_rows(vec![vec![-1], vec![1]], 1),
        ],
    )
    .expect("C[1] is a complex");
    let unit = FinChainComplex::unit(ring);
    let cc = complex.tensor(&complex).expect("same ring");
    let layout = TensorLayout::new(&complex, &complex);
    let delta0 = ChainMap::from_basis(&unit, &complex, |_, _| vec![(0, 1)]);
    let delta1 = ChainMap::from_basis(&unit, &complex, |_, _| vec![(1, 1)]);
    let sigma = ChainMap::from_basis(
        &complex,
        &unit,
        |n, _| if n == 0 { vec![(0, 1)] } else { vec![] },
    );
    let gamma = ChainMap::from_basis(&cc, &complex, |n, k| {
        let (i, a, j, b) = layout.split(n, k);
        let (a, b) = (Letter::from_position(i, a), Letter::from_position(j, b));
        gamma_letters(a, b)
            .map(|c| (c.position(), 1))
            .into_iter()
            .collect()
    });
    let w = ChainMap::from_basis(&complex, &cc, |n, k| match Letter::from_position(n, k) {
        Letter::Zero => vec![(layout.index(0, 0, 0, 0), 1)],
        Letter::One => vec![(layout.index(0, 1, 0, 1), 1)],
        Letter::Edge => vec![(layout.index(0, 0, 1, 0), 1), (layout.index(1, 0, 0, 1), 1)],
    });
    let tau = sigma.clone();
    Interval {
        complex,
        unit,
        delta0,
        delta1,
        sigma,
        gamma,
        w,
        tau,
    }
}

/// One named axiom and whether it holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub name: String,
    pub holds: bool,
}

fn check(name: &str, holds: bool) -> AxiomCheck {
    AxiomCheck {
        name: name.to_string(),
        holds,
    }
}

/// The monoidal segment axioms for `C[1]`, each checked as an equation of
/// matrices.
pub fn interval_axioms(ring: Ring) -> Vec<AxiomCheck> {
    let iv = interval_c1(ring);
    let (c, k) = (&iv.complex, &iv.unit);
    let cc = c.tensor(c).unwrap();
    let ccc = cc.tensor(c).unwrap();
    let c_cc = c.tensor(&cc).unwrap();
    let id = ChainMap::identity(c);
    let alpha = associator(c, c, c).unwrap();
    let (lam, rho) = (left_unitor(c).unwrap(), right_unitor(c).unwrap());
    let mu_k = left_unitor(k).unwrap();

    let gamma_left = iv
        .gamma
        .after(&iv.gamma.tensor(&id, (&cc, c), (c, c)).unwrap(), ring);
    let gamma_right = iv
        .gamma
        .after(&id.tensor(&iv.gamma, (c, &cc), (c, c)).unwrap(), ring)
        .after(&alpha, ring);

    let kc = k.tensor(c).unwrap();
    let ck = c.tensor(k).unwrap();
    let d0_left = iv
        .gamma
        .after(&iv.delta0.tensor(&id, (k, c), (c, c)).unwrap(), ring);
    let d0_right = iv
        .gamma
        .after(&id.tensor(&iv.delta0, (c, k), (c, c)).unwrap(), ring);
    let d1_left = iv
        .gamma
        .after(&iv.delta1.tensor(&id, (k, c), (c, c)).unwrap(), ring);
    let d1_right = iv
        .gamma
        .after(&id.tensor(&iv.delta1, (c, k), (c, c)).unwrap(), ring);
    let collapse_left = iv.delta1.after(&iv.sigma, ring).after(&lam, ring);
    let collapse_right = iv.delta1.after(&iv.sigma, ring).after(&rho, ring);
    let sigma_gamma = iv.sigma.after(&iv.gamma, ring);
    let sigma_sigma = mu_k.after(&iv.sigma.tensor(&iv.sigma, (c, c), (k, k)).unwrap(), ring);
    let id_k = ChainMap::identity(k);

    vec![
        check("delta0 is a chain map", iv.delta0.check(k, c).is_ok()),
        check("delta1 is a chain map", iv.delta1.check(k, c).is_ok()),
        check("sigma is a chain map", iv.sigma.check(c, k).is_ok()),
        check("gamma is a chain map", iv.gamma.check(&cc, c).is_ok()),
        check(
            "sigma delta0 = id",
            iv.sigma.after(&iv.delta0, ring).same_as(&id_k),
        ),
        check(
            "sigma delta1 = id",
            iv.sigma.after(&iv.delta1, ring).same_as(&id_k),
        ),
        check(
            "gamma is associative",
            gamma_left.check(&ccc, c).is_ok()
                && gamma_right.check(&ccc, c).is_ok()
                && gamma_left.same_as(&gamma_right),
        ),
        check(
            "delta0 is a left unit",
            d0_left.check(&kc, c).is_ok() && d0_left.same_as(&lam),
        ),
        check(
            "delta0 is a right unit",
            d0_right.check(&ck, c).is_ok() && d0_right.same_as(&rho),
        ),
        check(
            "sigma preserves products",
            sigma_gamma.same_as(&sigma_sigma),
        ),
        check(
            "delta1 absorbs on the left",
            d1_left.same_as(&collapse_left),
        ),
        check(
            "delta1 absorbs on the right",
            d1_right.same_as(&collapse_right),
        ),
        check("associator is invertible", alpha.is_iso(&ccc, &c_cc)),
    ]
}

/// Outcome of the coalgebra checks, with the two expansions of the
/// coassociativity law on `(01)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoalgebraReport {
    pub checks: Vec<AxiomCheck>,
    /// Terms of `(w ⊗ id) w (01)`, sorted.
    pub left_expansion: Vec<(String, i64)>,
    /// Terms of `(id ⊗ w) w (01)`, sorted.
    pub right_expansion: Vec<(String, i64)>,
}

impl CoalgebraReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds) && self.left_expansion == self.right_expansion
    }
}

/// Comultiplication of `A ⊗ B` from those of `A` and `B`:
/// `w(a ⊗ b) = Σ ± (a' ⊗ b') ⊗ (a'' ⊗ b'')` with the Koszul sign
/// `(-1)^{|a''| |b'|}` of the middle swap.
fn tensor_comultiplication(
    (a, wa): (&FinChainComplex, &ChainMap),
    (b, wb): (&FinChainComplex, &ChainMap),
) -> (FinChainComplex, ChainMap) {
    let ring = a.ring();
    let ab = a.tensor(b).unwrap();
    let abab = ab.tensor(&ab).unwrap();
    let (l_ab, l_aa, l_bb, l_out) = (
        TensorLayout::new(a, b),
        TensorLayout::new(a, a),
        TensorLayout::new(b, b),
        TensorLayout::new(&ab, &ab),
    );
    let map = ChainMap::from_basis(&ab, &abab, |n, k| {
        let (i, x, j, y) = l_ab.split(n, k);
        let mut out = Vec::new();
        let (wx, wy) = (wa.component(i).unwrap(), wb.component(j).unwrap());
        for r in 0..wx.rows() {
            let cx = wx.get(r, x);
            if cx == 0 {
                continue;
            }
            let (i1, x1, i2, x2) = l_aa.split(i, r);
            for s in 0..wy.rows() {
                let cy = wy.get(s, y);
                if cy == 0 {
                    continue;
                }
                let (j1, y1, j2, y2) = l_bb.split(j, s);
                let sign = if (i2 * j1) % 2 == 0 { 1 } else { -1 };
                let left = l_ab.index(i1, x1, j1, y1);
                let right = l_ab.index(i2, x2, j2, y2);
                out.push((
                    l_out.index(i1 + j1, left, i2 + j2, right),
                    ring.reduce(sign * cx * cy),
                ));
            }
        }
        out
    });
    (ab, map)
}

/// Terms of the image of basis element `k` in degree `n`, labelled by the
/// target basis.
fn expand(f: &ChainMap, tgt: &FinChainComplex, n: usize, k: usize) -> Vec<(String, i64)> {
    let m = f.component(n).unwrap();
    let mut terms: Vec<_> = (0..m.rows())
        .filter(|&r| m.get(r, k) != 0)
        .map(|r| (tgt.basis(n)[r].clone(), m.get(r, k)))
        .collect();
    terms.sort();
    terms
}

/// The counital coalgebra structure of `C[1]` and the coalgebra-morphism
/// property of `δ^0`, `δ^1`, `σ` and `γ`.
pub fn coalgebra_check_c1(ring: Ring) -> CoalgebraReport {
    let iv = interval_c1(ring);
    let (c, k) = (&iv.complex, &iv.unit);
    let cc = c.tensor(c).unwrap();
    let id = ChainMap::identity(c);
    let (lam, rho) = (left_unitor(c).unwrap(), right_unitor(c).unwrap());
    let alpha = associator(c, c, c).unwrap();

    let left =
        iv.w.tensor(&id, (c, c), (&cc, c))
            .unwrap()
            .after(&iv.w, ring);
    let right = id
        .tensor(&iv.w, (c, c), (c, &cc))
        .unwrap()
        .after(&iv.w, ring);
    let counit_left = lam
        .after(&iv.tau.tensor(&id, (c, c), (k, c)).unwrap(), ring)
        .after(&iv.w, ring);
    let counit_right = rho
        .after(&id.tensor(&iv.tau, (c, c), (c, k)).unwrap(), ring)
        .after(&iv.w, ring);

    // The unit complex as a coalgebra: 1 -> 1 ⊗ 1 and the identity counit.
    let kk = k.tensor(k).unwrap();
    let wk = ChainMap::from_basis(k, &kk, |_, _| vec![(0, 1)]);
    let id_k = ChainMap::identity(k);
    let (_, wcc) = tensor_comultiplication((c, &iv.w), (c, &iv.w));
    let tau_cc = left_unitor(k)
        .unwrap()
        .after(&iv.tau.tensor(&iv.tau, (c, c), (k, k)).unwrap(), ring);

    let morphism =
        |f: &ChainMap,
         (src, w_src, t_src): (&FinChainComplex, &ChainMap, &ChainMap),
         (tgt, w_tgt, t_tgt): (&FinChainComplex, &ChainMap, &ChainMap)| {
            let ff = f.tensor(f, (src, src), (tgt, tgt)).unwrap();
            w_tgt.after(f, ring).same_as(&ff.after(w_src, ring))
                && t_tgt.after(f, ring).same_as(t_src)
        };
    let c_data = (c, &iv.w, &iv.tau);
    let k_data = (k, &wk, &id_k);
    let cc_data = (&cc, &wcc, &tau_cc);

    let checks = vec![
        check("w is a chain map", iv.w.check(c, &cc).is_ok()),
        check("tau is a chain map", iv.tau.check(c, k).is_ok()),
        check(
            "w is coassociative",
            alpha.after(&left, ring).same_as(&right),
        ),
        check("tau is a left counit", counit_left.same_as(&id)),
        check("tau is a right counit", counit_right.same_as(&id)),
        check(
            "tensor comultiplication is a chain map",
            wcc.check(&cc, &cc.tensor(&cc).unwrap()).is_ok(),
        ),
        check(
            "delta0 is a coalgebra morphism",
            morphism(&iv.delta0, k_data, c_data),
        ),
        check(
            "delta1 is a coalgebra morphism",
            morphism(&iv.delta1, k_data, c_data),
        ),
        check(
            "sigma is a coalgebra morphism",
            morphism(&iv.sigma, c_data, k_data),
        ),
        check(
            "gamma is a coalgebra morphism",
            morphism(&iv.gamma, cc_data, c_data),
        ),
    ];
    let ccc = cc.tensor(c).unwrap();
    let c_cc = c.tensor(&cc).unwrap();
    CoalgebraReport {
        checks,
        left_expansion: expand(&left, &ccc, 1, 0),
        right_expansion: expand(&right, &c_cc, 1, 0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_formulas() {
        let iv = interval_c1(Ring::Integers);
        assert_eq!(iv.complex.d(1).column(0), vec![-1, 1]);
        let g0 = iv.gamma.component(0).unwrap();
        // (1) ⊗ (1) is the last degree-0 basis element.
        assert_eq!(g0.column(3), vec![0, 1]);
        assert!(iv.gamma.component(2).unwrap().is_zero());
    }

    #[test]
    fn axioms_hold() {
        for ring in [Ring::Integers, Ring::Prime(2), Ring::Prime(3)] {
            for c in interval_axioms(ring) {
                assert!(c.holds, "{} fails over {ring}", c.name);
            }
            let report = coalgebra_check_c1(ring);
            for c in &report.checks {
                assert!(c.holds, "{} fails over {ring}", c.name);
            }
            assert!(report.all_hold());
        }
    }

    #[test]
    fn comultiplication_of_the_edge() {
        let r = coalgebra_check_c1(Ring::Integers);
        let labels: Vec<&str> = r.left_expansion.iter().map(|t| t.0.as_str()).collect();
        assert_eq!(labels, ["(0)⊗(0)⊗(01)", "(0)⊗(01)⊗(1)", "(01)⊗(1)⊗(1)"]);
    }
}
