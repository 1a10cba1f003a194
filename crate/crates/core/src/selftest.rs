//! Invariant suites, run by `selftest` and by the test harness.
//!
//! Every check is a small function returning `Ok(detail)` on success. A
//! returned error or a panic counts as a failure. `quick` shrinks the
//! dimensions so the whole run stays under a few seconds.

use std::panic::{self, AssertUnwindSafe};
use std::time::Instant;

use serde::Serialize;

use crate::chain::{
    chain_realization, coalgebra_check_c1, dg_singular, homology, interval_axioms,
    normalized_cubical_chains, simplicial_chains, ChainRealization, FinChainComplex, Matrix, Ring,
};
use crate::cube::{enumerate_homs, relations, CubeMap, Flavor, Generator, RawWord};
use crate::cubical::{
    boundary, boundary_decomposition, cap, cap_decomposition, day_tensor, point, representable,
    CapSplit, DayTensor, TruncatedCubicalSet,
};
use crate::enriched::{
    arrow_category, check_cosimplicial_identities, discrete_enrich, enumerate_functors,
    free_category, pairs, point_category, w_category, CubicalCategory, CubicalQuiver, DgCategory,
    HcNerve,
};
use crate::error::{ensure, Error, Result};
use crate::format::Payload;
use crate::presheaf::{generated_by, hom_maps, is_isomorphic, SearchLimits};
use crate::simplicial::{
    adjunction_unit, boundary_simplex, horn, inner_horn_fill_probe, nerve_of_category, product,
    simplex, triangulate, triangulate_map, FinCategory, Triangulation,
};
use crate::site::{CubeSite, Site};

/// Result of one named check.
#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub suite: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub outcomes: Vec<Outcome>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Outcome> {
        self.outcomes.iter().filter(|o| !o.passed)
    }
}

pub const SUITES: [&str; 6] = [
    "cube",
    "presheaf",
    "simplicial",
    "chain",
    "enriched",
    "format",
];

type Check = fn(bool) -> Result<String>;

fn checks() -> Vec<(&'static str, &'static str, Check)> {
    vec![
        ("cube", "relation soundness", relation_soundness),
        ("cube", "normal forms are faithful", faithfulness),
        (
            "cube",
            "normalize is idempotent and preserves the function",
            normalize_idempotent,
        ),
        ("cube", "interchange law", interchange),
        ("cube", "tensor is not symmetric", non_symmetry),
        ("presheaf", "validators on the corpus", presheaf_validators),
        ("presheaf", "Yoneda counts", yoneda),
        (
            "presheaf",
            "Day tensor unit and associativity",
            day_coherence,
        ),
        (
            "presheaf",
            "boundary and cap decompositions",
            decompositions,
        ),
        (
            "presheaf",
            "pushout-product of boundaries is mono",
            pushout_product_mono,
        ),
        (
            "simplicial",
            "validators on constructed simplicial sets",
            simplicial_validators,
        ),
        (
            "simplicial",
            "triangulation is strong monoidal",
            triangulation_monoidal,
        ),
        (
            "simplicial",
            "triangulation is natural",
            triangulation_natural,
        ),
        (
            "simplicial",
            "adjunction unit is a cubical map",
            adjunction_units,
        ),
        (
            "chain",
            "d^2 = 0 on constructed complexes",
            chain_validators,
        ),
        (
            "chain",
            "chain realization is strong monoidal",
            realization_monoidal,
        ),
        ("chain", "cubes realize to a point", cube_homology),
        (
            "chain",
            "realization agrees with normalized chains",
            realization_vs_normalized,
        ),
        ("chain", "interval and coalgebra axioms", interval_checks),
        (
            "chain",
            "dg-singular validity and multiplicativity",
            dg_singular_checks,
        ),
        (
            "enriched",
            "validators on constructed categories",
            enriched_validators,
        ),
        ("enriched", "cosimplicial identities of W", cosimplicial),
        (
            "enriched",
            "coherent nerve matches functors out of W",
            nerve_vs_functors,
        ),
        (
            "enriched",
            "coherent nerve of a discrete category",
            nerve_of_discrete,
        ),
        ("enriched", "inner horns fill", inner_horns),
        ("format", "round trip", round_trip),
        ("format", "deterministic output", determinism),
    ]
}

/// Runs the named suites, or all of them when `only` is empty.
pub fn run(quick: bool, only: &[String]) -> Report {
    let mut report = Report::default();
    for (suite, name, check) in checks() {
        if !only.is_empty() && !only.iter().any(|s| s == suite) {
            continue;
        }
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(|| check(quick)));
        let (passed, detail) = match result {
            Ok(Ok(d)) => (true, d),
            Ok(Err(e)) => (false, e.to_string()),
            Err(p) => (false, format!("panic: {}", panic_message(&p))),
        };
        report.outcomes.push(Outcome {
            suite,
            name,
            passed,
            detail,
            millis: start.elapsed().as_millis(),
        });
    }
    report
}

fn panic_message(p: &Box<dyn std::any::Any + Send>) -> String {
    p.downcast_ref::<&str>()
        .map(|s| s.to_string())
        .or_else(|| p.downcast_ref::<String>().cloned())
        .unwrap_or_else(|| "unknown".into())
}

fn fail(msg: String) -> Error {
    Error::Validation(msg)
}

// ---------------------------------------------------------------- corpora

/// Small cubical sets of dimension at most 2, truncated at 2: cubes,
/// boundaries, caps, every sub-object of `□[2]` generated by edges, and two
/// tensors.
pub fn cubical_corpus(flavor: Flavor, quick: bool) -> Result<Vec<(String, TruncatedCubicalSet)>> {
    let t = 2;
    let mut out = vec![("empty".to_string(), crate::cubical::empty(flavor, t))];
    for n in 0..=2 {
        out.push((format!("box {n}"), representable(flavor, n, t)?));
    }
    for n in 1..=2 {
        out.push((format!("boundary box {n}"), boundary(flavor, n, t)?.0));
    }
    for (eps, i) in [(false, 0), (true, 1)] {
        out.push((
            format!("cap 2 {} {i}", eps as u8),
            cap(flavor, 2, eps, i, t)?.0,
        ));
    }
    let sq = representable(flavor, 2, t)?;
    let edges = sq.nondegenerate(1);
    let subsets = if quick {
        vec![0b0011, 0b0101, 0b1110]
    } else {
        (1..1u32 << edges.len()).collect()
    };
    for mask in subsets {
        let gens: Vec<(usize, usize)> = edges
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &e)| (1, e))
            .collect();
        out.push((
            format!("edges {mask:04b} of box 2"),
            generated_by(&sq, &gens)?.0,
        ));
    }
    let b1 = representable(flavor, 1, t)?;
    let db1 = boundary(flavor, 1, t)?.0;
    out.push(("box 1 (x) box 1".into(), day_tensor(&b1, &b1)?));
    out.push(("boundary box 1 (x) box 1".into(), day_tensor(&db1, &b1)?));
    Ok(out)
}

fn idempotent_monoid() -> Result<FinCategory> {
    FinCategory::new(
        vec!["*".into()],
        vec![(0, 0, "id".into()), (0, 0, "e".into())],
        vec![0],
        vec![vec![Some(0), Some(1)], vec![Some(1), Some(1)]],
    )
}

/// Finite categories with at most four objects.
pub fn category_corpus() -> Result<Vec<(String, FinCategory)>> {
    Ok(vec![
        ("[0]".into(), FinCategory::ordinal(0)),
        ("[1]".into(), FinCategory::ordinal(1)),
        ("[2]".into(), FinCategory::ordinal(2)),
        ("[3]".into(), FinCategory::ordinal(3)),
        ("square".into(), FinCategory::commutative_square()),
        ("discrete 2".into(), FinCategory::discrete(2)),
        ("idempotent".into(), idempotent_monoid()?),
    ])
}

/// Cubical categories with connections, truncated at 2.
fn enriched_corpus(quick: bool) -> Result<Vec<(String, CubicalCategory)>> {
    let f = Flavor::Connections;
    let t = 2;
    let mut out = vec![("point".to_string(), point_category(f, t)?)];
    for (name, c) in category_corpus()? {
        if quick && c.object_count() > 3 {
            continue;
        }
        out.push((format!("i({name})"), discrete_enrich(&c, f, t)?));
    }
    out.push((
        "arrow box 1".into(),
        arrow_category(&representable(f, 1, t)?)?,
    ));
    out.push((
        "arrow boundary box 2".into(),
        arrow_category(&boundary(f, 2, t)?.0)?,
    ));
    out.push(("W 2".into(), w_category(2, t)?));
    let lin = DgCategory::linearize(&FinCategory::ordinal(1), Ring::Prime(2))?;
    out.push(("dg F2[1]".into(), lin.cubical(t)?));
    Ok(out)
}

// ---------------------------------------------------------------- cube

fn relation_soundness(quick: bool) -> Result<String> {
    let max_dim = if quick { 3 } else { 5 };
    let mut n = 0;
    for f in Flavor::ALL {
        for inst in relations::instances(f, max_dim) {
            ensure!(
                inst.lhs.eval()? == inst.rhs.eval()?,
                Validation,
                "{} fails: {} vs {}",
                inst.family,
                inst.lhs,
                inst.rhs
            );
            n += 1;
        }
    }
    Ok(format!("{n} instances"))
}

fn faithfulness(quick: bool) -> Result<String> {
    let max = if quick { 3 } else { 4 };
    let mut n = 0;
    for f in Flavor::ALL {
        for a in 0..=max {
            for b in 0..=max {
                let words = enumerate_homs(f, a, b)?;
                let mut tables = std::collections::HashSet::new();
                for w in &words {
                    ensure!(w.is_normal(), Validation, "{w} is not in normal form");
                    ensure!(
                        tables.insert(w.eval()?),
                        Validation,
                        "two normal forms for the function of {w}"
                    );
                }
                n += words.len();
            }
        }
    }
    Ok(format!("{n} normal forms"))
}

/// All well-formed words of the given length whose dimensions stay `<= max_dim`.
fn words(flavor: Flavor, len: usize, max_dim: usize, mut visit: impl FnMut(RawWord)) {
    fn gens_at(flavor: Flavor, d: usize, max_dim: usize) -> Vec<Generator> {
        let mut out = Vec::new();
        if d < max_dim {
            for i in 0..=d {
                out.push(Generator::face(false, i));
                out.push(Generator::face(true, i));
            }
        }
        out.extend((0..d).map(Generator::Degen));
        if flavor.has_connections() {
            out.extend((0..d.saturating_sub(1)).map(Generator::Conn));
        }
        out
    }
    fn go(
        flavor: Flavor,
        src: usize,
        d: usize,
        left: usize,
        max_dim: usize,
        inner_first: &mut Vec<Generator>,
        visit: &mut dyn FnMut(RawWord),
    ) {
        if left == 0 {
            let outer_first: Vec<Generator> = inner_first.iter().rev().copied().collect();
            visit(RawWord::new(flavor, src, outer_first));
            return;
        }
        for g in gens_at(flavor, d, max_dim) {
            let e = g.target_dim(d).expect("listed generators are defined");
            inner_first.push(g);
            go(flavor, src, e, left - 1, max_dim, inner_first, visit);
            inner_first.pop();
        }
    }
    for src in 0..=max_dim {
        go(flavor, src, src, len, max_dim, &mut Vec::new(), &mut visit);
    }
}

fn normalize_idempotent(quick: bool) -> Result<String> {
    let (max_len, max_dim) = if quick { (3, 3) } else { (6, 4) };
    let mut n = 0usize;
    let mut err: Option<Error> = None;
    for f in Flavor::ALL {
        for len in 0..=max_len {
            words(f, len, max_dim, |w| {
                if err.is_some() {
                    return;
                }
                let check = || -> Result<()> {
                    let nf = w.normalize()?;
                    ensure!(
                        nf.eval()? == w.eval()?,
                        Validation,
                        "normal form of {w} changes the function"
                    );
                    ensure!(
                        nf.to_raw().normalize()? == nf,
                        Validation,
                        "normalizing {w} twice moves it"
                    );
                    Ok(())
                };
                if let Err(e) = check() {
                    err = Some(e);
                }
                n += 1;
            });
        }
    }
    match err {
        Some(e) => Err(e),
        None => Ok(format!("{n} words")),
    }
}

fn interchange(_quick: bool) -> Result<String> {
    let mut n = 0;
    for flavor in Flavor::ALL {
        let site = CubeSite::new(flavor);
        for a in 0..=3 {
            for a2 in 0..=3 - a {
                for c in 0..=3 {
                    for c2 in 0..=3 - c {
                        for b in 0..=3 {
                            for b2 in 0..=3 - b {
                                for f in &site.homs(c, a).maps {
                                    for f2 in &site.homs(c2, a2).maps {
                                        for g in &site.homs(a, b).maps {
                                            for g2 in &site.homs(a2, b2).maps {
                                                let lhs = g.tensor(g2).after(&f.tensor(f2));
                                                let rhs = g.after(f).tensor(&g2.after(f2));
                                                ensure!(
                                                    lhs == rhs,
                                                    Validation,
                                                    "interchange fails"
                                                );
                                                n += 1;
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{n} quadruples"))
}

fn non_symmetry(_quick: bool) -> Result<String> {
    let d0 = CubeMap::face(false, 0, 0);
    let id = CubeMap::identity(1);
    let (l, r) = (d0.tensor(&id).to_function(), id.tensor(&d0).to_function());
    ensure!(l != r, Validation, "δ^0 ⊗ id and id ⊗ δ^0 agree");
    Ok(format!("{:?} vs {:?}", l.rows(), r.rows()))
}

// ---------------------------------------------------------------- presheaf

fn presheaf_validators(quick: bool) -> Result<String> {
    let mut n = 0;
    for f in Flavor::ALL {
        for (name, x) in cubical_corpus(f, quick)? {
            x.validate().map_err(|e| fail(format!("{name}: {e}")))?;
            n += 1;
        }
        for m in 0..=3 {
            let (b, incl) = boundary(f, m, 3)?;
            b.validate()?;
            incl.check(&b, &representable(f, m, 3)?)?;
            n += 1;
        }
    }
    Ok(format!("{n} objects"))
}

fn yoneda(quick: bool) -> Result<String> {
    let mut n = 0;
    for f in Flavor::ALL {
        for (name, x) in cubical_corpus(f, quick)? {
            for d in 0..=x.trunc() {
                let maps = hom_maps(
                    &representable(f, d, x.trunc())?,
                    &x,
                    SearchLimits::default(),
                )?;
                ensure!(
                    maps.len() == x.count(d),
                    Validation,
                    "{name}: |hom(□[{d}], X)| != |X({d})|"
                );
                n += 1;
            }
        }
    }
    Ok(format!("{n} pairs"))
}

fn iso(x: &TruncatedCubicalSet, y: &TruncatedCubicalSet) -> Result<bool> {
    Ok(is_isomorphic(x, y, SearchLimits::default())?.is_some())
}

fn day_coherence(quick: bool) -> Result<String> {
    let mut n = 0;
    for f in Flavor::ALL {
        let corpus = cubical_corpus(f, quick)?;
        let unit = point(f, 2)?;
        for (name, x) in &corpus {
            ensure!(
                iso(&day_tensor(&unit, x)?, x)?,
                Validation,
                "□[0] ⊗ {name} is not {name}"
            );
            ensure!(
                iso(&day_tensor(x, &unit)?, x)?,
                Validation,
                "{name} ⊗ □[0] is not {name}"
            );
            n += 2;
        }
        let small: Vec<&(String, TruncatedCubicalSet)> = corpus
            .iter()
            .filter(|(_, x)| x.computed_skeleton() <= 1)
            .collect();
        for (nx, x) in &small {
            for (ny, y) in &small {
                for (nz, z) in &small {
                    if x.computed_skeleton() + y.computed_skeleton() + z.computed_skeleton() > 2 {
                        continue;
                    }
                    let l = day_tensor(&day_tensor(x, y)?, z)?;
                    let r = day_tensor(x, &day_tensor(y, z)?)?;
                    ensure!(
                        iso(&l, &r)?,
                        Validation,
                        "associativity fails on ({nx}, {ny}, {nz})"
                    );
                    n += 1;
                }
            }
        }
    }
    Ok(format!("{n} isomorphisms"))
}

fn decompositions(quick: bool) -> Result<String> {
    let (nb, nc) = if quick { (3, 2) } else { (4, 3) };
    let mut n = 0;
    for f in Flavor::ALL {
        for m in 0..=nb {
            for i in 0..=m {
                let d = boundary_decomposition(f, i, m - i)?;
                ensure!(d.holds(), Validation, "{} fails: {d:?}", d.name);
                n += 1;
            }
        }
        for m in 1..=nc {
            for eps in [false, true] {
                let mut splits = vec![CapSplit::Last, CapSplit::First];
                splits.extend((1..m).map(CapSplit::Split));
                for s in splits {
                    let d = cap_decomposition(f, m, eps, s)?;
                    ensure!(d.holds(), Validation, "{} fails: {d:?}", d.name);
                    n += 1;
                }
            }
        }
    }
    Ok(format!("{n} decompositions"))
}

fn pushout_product_mono(_quick: bool) -> Result<String> {
    let mut n = 0;
    for f in Flavor::ALL {
        for i in 0..=2 {
            for j in 0..=2 {
                let d = boundary_decomposition(f, i, j)?;
                ensure!(d.injective, Validation, "∂□[{i}] □ ∂□[{j}] is not mono");
                n += 1;
            }
        }
    }
    Ok(format!("{n} pairs"))
}

// ---------------------------------------------------------------- simplicial

fn simplicial_validators(quick: bool) -> Result<String> {
    let mut n = 0;
    for k in 0..=3 {
        simplex(k, 3)?.validate()?;
        if k > 0 {
            boundary_simplex(k, 3)?.0.validate()?;
            for j in 0..=k {
                horn(k, j, 3)?.0.validate()?;
            }
        }
        n += 1;
    }
    for (_, c) in category_corpus()? {
        nerve_of_category(&c, 3)?.validate()?;
        n += 1;
    }
    for f in Flavor::ALL {
        for (name, x) in cubical_corpus(f, quick)? {
            triangulate(&x)
                .and_then(|l| l.validate())
                .map_err(|e| fail(format!("L({name}): {e}")))?;
            n += 1;
        }
    }
    Ok(format!("{n} objects"))
}

fn triangulation_monoidal(_quick: bool) -> Result<String> {
    let mut n = 0;
    for f in Flavor::ALL {
        for p in 0..=3 {
            for q in 0..=3 - p {
                let t = p + q;
                let (bp, bq) = (representable(f, p, t)?, representable(f, q, t)?);
                let l = triangulate(&day_tensor(&bp, &bq)?)?;
                let r = product(&triangulate(&bp)?, &triangulate(&bq)?)?;
                ensure!(
                    is_isomorphic(&l, &r, SearchLimits::default())?.is_some(),
                    Validation,
                    "L(□[{p}] ⊗ □[{q}]) is not L(□[{p}]) × L(□[{q}])"
                );
                n += 1;
            }
        }
    }
    Ok(format!("{n} pairs"))
}

fn triangulation_natural(quick: bool) -> Result<String> {
    let mut n = 0;
    for f in Flavor::ALL {
        let sq = representable(f, 2, 2)?;
        let lsq = Triangulation::new(&sq)?;
        for (name, x) in cubical_corpus(f, quick)? {
            // Every corpus object either sits in □[2] or is mapped onto
            // by the maps into □[2] that hom_maps finds.
            let lx = Triangulation::new(&x)?;
            let maps = hom_maps(
                &x,
                &sq,
                SearchLimits {
                    max_results: 64,
                    max_nodes: 5_000_000,
                },
            )
            .or_else(|e| if e.is_guard() { Ok(Vec::new()) } else { Err(e) })?;
            for m in maps.iter().take(8) {
                let lm = triangulate_map(m, &lx, &lsq)
                    .map_err(|e| fail(format!("L(map from {name}): {e}")))?;
                lm.check(&lx.object, &lsq.object)?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} maps"))
}

fn adjunction_units(quick: bool) -> Result<String> {
    let mut n = 0;
    for f in Flavor::ALL {
        for (name, x) in cubical_corpus(f, quick)? {
            if x.computed_skeleton() > 1 && quick {
                continue;
            }
            let (rl, unit) = adjunction_unit(&x).map_err(|e| fail(format!("{name}: {e}")))?;
            rl.validate()?;
            unit.check(&x, &rl)?;
            n += 1;
        }
    }
    Ok(format!("{n} units"))
}

// ---------------------------------------------------------------- chain

fn chain_validators(quick: bool) -> Result<String> {
    let mut n = 0;
    for f in Flavor::ALL {
        for (name, x) in cubical_corpus(f, quick)? {
            chain_realization(&x, Ring::Integers)
                .and_then(|c| c.validate())
                .map_err(|e| fail(format!("L({name}): {e}")))?;
            n += 1;
        }
    }
    for k in 0..=3 {
        simplicial_chains(&simplex(k, 3)?, Ring::Integers)?.validate()?;
        n += 1;
    }
    Ok(format!("{n} complexes"))
}

fn realization_monoidal(_quick: bool) -> Result<String> {
    let mut n = 0;
    for f in Flavor::ALL {
        for p in 0..=3 {
            for q in 0..=3 - p {
                let t = p + q;
                let (bp, bq) = (representable(f, p, t)?, representable(f, q, t)?);
                let tensor = DayTensor::new(f, t, &[&bp, &bq])?;
                let lp = ChainRealization::new(&bp, Ring::Integers)?;
                let lq = ChainRealization::new(&bq, Ring::Integers)?;
                let lpq = ChainRealization::new(&tensor.object, Ring::Integers)?;
                let m = ChainRealization::monoidal_comparison(&lp, &lq, &tensor, &lpq)?;
                let src = lp.complex.tensor(&lq.complex)?;
                ensure!(
                    m.is_iso(&src, &lpq.complex),
                    Validation,
                    "comparison for ({p}, {q}) is not an iso"
                );
                n += 1;
            }
        }
    }
    Ok(format!("{n} pairs"))
}

fn is_point(hs: &[crate::chain::HomologyGroup]) -> bool {
    hs.iter().all(|h| {
        if h.degree == 0 {
            h.betti == 1 && h.torsion.is_empty()
        } else {
            h.is_zero()
        }
    })
}

fn cube_homology(_quick: bool) -> Result<String> {
    for f in Flavor::ALL {
        for m in 0..=3 {
            let hs = homology(&chain_realization(
                &representable(f, m, m)?,
                Ring::Integers,
            )?)?;
            ensure!(is_point(&hs), Validation, "H(L(□[{m}])) is not a point");
        }
    }
    Ok("n <= 3".into())
}

fn realization_vs_normalized(quick: bool) -> Result<String> {
    let mut n = 0;
    for f in Flavor::ALL {
        for (name, x) in cubical_corpus(f, quick)? {
            let a = homology(&chain_realization(&x, Ring::Integers)?)?;
            let b = homology(&normalized_cubical_chains(&x, Ring::Integers)?)?;
            let strip = |v: Vec<crate::chain::HomologyGroup>| -> Vec<_> {
                v.into_iter()
                    .filter(|h| !h.is_zero())
                    .map(|h| (h.degree, h.betti, h.torsion))
                    .collect()
            };
            ensure!(
                strip(a) == strip(b),
                Validation,
                "homologies of {name} disagree"
            );
            n += 1;
        }
    }
    Ok(format!("{n} objects"))
}

fn interval_checks(_quick: bool) -> Result<String> {
    for ring in [Ring::Integers, Ring::Prime(2), Ring::Prime(3)] {
        for a in interval_axioms(ring) {
            ensure!(a.holds, Validation, "{} fails over {ring:?}", a.name);
        }
        let c = coalgebra_check_c1(ring);
        ensure!(
            c.all_hold(),
            Validation,
            "coalgebra axioms fail over {ring:?}"
        );
    }
    Ok("segment and coalgebra axioms".into())
}

/// `F_p^k` in degree 0.
fn flat(ring: Ring, k: usize) -> Result<FinChainComplex> {
    FinChainComplex::new(
        ring,
        vec![(0..k).map(|i| format!("e{i}")).collect()],
        vec![Matrix::zeros(0, k)],
    )
}

fn dg_singular_checks(quick: bool) -> Result<String> {
    let t = if quick { 1 } else { 2 };
    let mut n = 0;
    for p in [2, 3] {
        let ring = Ring::Prime(p);
        for (a, b) in [(1, 1), (1, 2), (0, 1)] {
            let (ca, cb) = (flat(ring, a)?, flat(ring, b)?);
            let (ra, rb) = (dg_singular(&ca, t)?, dg_singular(&cb, t)?);
            let rab = dg_singular(&ca.direct_sum(&cb)?, t)?;
            for x in [&ra, &rb, &rab] {
                x.validate()?;
            }
            for d in 0..=t {
                ensure!(
                    rab.count(d) == ra.count(d) * rb.count(d),
                    Validation,
                    "|R(F{p}^{a} ⊕ F{p}^{b})({d})| is not multiplicative"
                );
            }
            n += 1;
        }
    }
    let iv = crate::chain::interval_c1(Ring::Prime(2));
    dg_singular(&iv.complex, t)?.validate()?;
    Ok(format!("{n} sums"))
}

// ---------------------------------------------------------------- enriched

fn enriched_validators(quick: bool) -> Result<String> {
    let mut n = 0;
    for (name, c) in enriched_corpus(quick)? {
        c.validate().map_err(|e| fail(format!("{name}: {e}")))?;
        n += 1;
    }
    for k in 0..=if quick { 3 } else { 5 } {
        w_category(k, k.max(1) - 1)?.validate()?;
        n += 1;
    }
    for f in Flavor::ALL {
        let q = CubicalQuiver::new(
            vec!["a".into(), "b".into()],
            vec![
                vec![crate::cubical::empty(f, 2), representable(f, 1, 2)?],
                vec![crate::cubical::empty(f, 2), crate::cubical::empty(f, 2)],
            ],
        )?;
        free_category(&q, 2)?.validate()?;
        n += 1;
    }
    Ok(format!("{n} categories"))
}

fn cosimplicial(quick: bool) -> Result<String> {
    let n = check_cosimplicial_identities(if quick { 3 } else { 4 })?;
    Ok(format!("{n} identities"))
}

fn nerve_vs_functors(quick: bool) -> Result<String> {
    let k_max = if quick { 2 } else { 3 };
    let site = CubeSite::new(Flavor::Connections);
    let mut n = 0;
    for (name, c) in enriched_corpus(quick)? {
        let nerve = HcNerve::new(&c, k_max)?;
        nerve
            .object
            .validate()
            .map_err(|e| fail(format!("N({name}): {e}")))?;
        for k in 0..=k_max {
            let w = w_category(k, c.trunc())?;
            let fs = enumerate_functors(&w, &c, SearchLimits::default())?;
            ensure!(
                fs.len() == nerve.object.count(k),
                Validation,
                "{name}: {} functors out of W_{k} but {} simplices",
                fs.len(),
                nerve.object.count(k)
            );
            let mut hit = vec![false; fs.len()];
            for f in &fs {
                let cells: Vec<usize> = pairs(k)
                    .into_iter()
                    .map(|(i, j)| {
                        let d = j - i - 1;
                        let top = site.homs(d, d).position(&CubeMap::identity(d)).unwrap();
                        f.homs[i][j].apply(d, top)
                    })
                    .collect();
                let s = nerve.find(k, &f.objects, &cells).ok_or_else(|| {
                    fail(format!("{name}: a functor out of W_{k} has no simplex"))
                })?;
                ensure!(
                    !std::mem::replace(&mut hit[s], true),
                    Validation,
                    "{name}: two functors share a simplex"
                );
            }
            n += fs.len();
        }
    }
    Ok(format!("{n} simplices"))
}

fn nerve_of_discrete(_quick: bool) -> Result<String> {
    let mut n = 0;
    for (name, c) in category_corpus()? {
        let ic = discrete_enrich(&c, Flavor::Connections, 2)?;
        let hc = crate::enriched::hc_nerve(&ic, 3)?;
        let classical = nerve_of_category(&c, 3)?;
        ensure!(
            is_isomorphic(&hc, &classical, SearchLimits::default())?.is_some(),
            Validation,
            "N^c(i({name})) is not N({name})"
        );
        n += 1;
    }
    Ok(format!("{n} categories"))
}

fn inner_horns(_quick: bool) -> Result<String> {
    let mut n = 0;
    for (name, c) in category_corpus()? {
        let hc = crate::enriched::hc_nerve(&discrete_enrich(&c, Flavor::Connections, 2)?, 3)?;
        for m in 2..=3 {
            for k in 1..m {
                let r = inner_horn_fill_probe(&hc, m, k)?;
                ensure!(
                    r.unfillable == 0,
                    Validation,
                    "{name}: {} unfillable Λ^{k}[{m}]",
                    r.unfillable
                );
                n += r.total_maps;
            }
        }
    }
    Ok(format!("{n} horns"))
}

// ---------------------------------------------------------------- format

fn payloads(quick: bool) -> Result<Vec<(String, Payload)>> {
    let mut out = Vec::new();
    for f in Flavor::ALL {
        for (name, x) in cubical_corpus(f, quick)? {
            out.push((format!("{} {name}", f.short()), Payload::Cubical(x)));
        }
    }
    out.push((
        "nerve [2]".into(),
        Payload::Simplicial(nerve_of_category(&FinCategory::ordinal(2), 3)?),
    ));
    let circle = boundary(Flavor::Reduced, 2, 2)?.0;
    out.push((
        "L(torus)".into(),
        Payload::Complex(chain_realization(
            &day_tensor(&circle, &circle)?,
            Ring::Integers,
        )?),
    ));
    for (name, c) in enriched_corpus(quick)? {
        out.push((name, Payload::Category(c)));
    }
    out.push((
        "square".into(),
        Payload::FinCategory(FinCategory::commutative_square()),
    ));
    out.push((
        "dg F3[2]".into(),
        Payload::DgCategory(DgCategory::linearize(
            &FinCategory::ordinal(2),
            Ring::Prime(3),
        )?),
    ));
    Ok(out)
}

fn same_payload(a: &Payload, b: &Payload) -> Result<bool> {
    Ok(match (a, b) {
        (Payload::Cubical(x), Payload::Cubical(y)) => iso(x, y)?,
        (Payload::Simplicial(x), Payload::Simplicial(y)) => {
            is_isomorphic(x, y, SearchLimits::default())?.is_some()
        }
        (Payload::Complex(x), Payload::Complex(y)) => x == y,
        (Payload::Category(x), Payload::Category(y)) => {
            x.objects() == y.objects()
                && (0..x.object_count()).all(|i| {
                    (0..x.object_count()).all(|j| x.hom(i, j) == y.hom(i, j))
                        && x.unit(i) == y.unit(i)
                })
        }
        (Payload::FinCategory(x), Payload::FinCategory(y)) => x == y,
        (Payload::DgCategory(x), Payload::DgCategory(y)) => {
            x.objects == y.objects && x.units == y.units
        }
        _ => false,
    })
}

fn round_trip(quick: bool) -> Result<String> {
    let mut n = 0;
    for (name, p) in payloads(quick)? {
        let text = p.to_json();
        let back = Payload::from_json(&text).map_err(|e| fail(format!("{name}: {e}")))?;
        ensure!(
            same_payload(&p, &back)?,
            Validation,
            "{name} does not reload to an isomorphic object"
        );
        ensure!(
            back.to_json() == text,
            Validation,
            "{name} re-emits different text"
        );
        n += 1;
    }
    Ok(format!("{n} payloads"))
}

fn determinism(quick: bool) -> Result<String> {
    let a: Vec<String> = payloads(quick)?.iter().map(|(_, p)| p.to_json()).collect();
    let b: Vec<String> = payloads(quick)?.iter().map(|(_, p)| p.to_json()).collect();
    ensure!(
        a == b,
        Validation,
        "two builds of the corpus emit different text"
    );
    Ok(format!("{} payloads", a.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suite_passes() {
        let r = run(true, &[]);
        for o in &r.outcomes {
            assert!(o.passed, "{} / {}: {}", o.suite, o.name, o.detail);
        }
    }
}
