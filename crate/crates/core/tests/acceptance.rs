//! The acceptance criteria, one line each. Run with `--nocapture` to see
//! the report.

mod common;

use std::collections::HashSet;
use std::error::Error;
use std::time::{Duration, Instant};

use cubical_core::chain::{
    chain_realization, coalgebra_check_c1, homology, interval_axioms, interval_c1,
    normalized_cubical_chains, DgSingular, HomologyGroup, Ring, DEFAULT_MAX_CELLS,
};
use cubical_core::cube::relations::{self, FAMILIES, MISPRINTED_CONNECTION_RELATION};
use cubical_core::cube::{enumerate_homs, hom_count};
use cubical_core::cubical::{
    boundary, boundary_decomposition, cap, cap_decomposition, day_tensor, representable, CapSplit,
    DayTensor,
};
use cubical_core::enriched::{
    arrow_category, check_cosimplicial_identities, discrete_enrich, enumerate_functors, hc_nerve,
    pairs, w_category, DgCategory, HcNerve,
};
use cubical_core::presheaf::{hom_maps, is_isomorphic, subpresheaf};
use cubical_core::simplicial::{
    adjunct, boundary_simplex, cube_poset_nerve, cubical_singular, horn, inner_horn_fill_probe,
    nerve_of_category, product, simplex, triangulate, Triangulation,
};
use cubical_core::site::{CubeSite, GenKind, Site};
use cubical_core::{
    selftest, CubeMap, CubicalMap, FinCategory, Flavor, SearchLimits, TruncatedCubicalSet,
};

type Outcome = Result<String, Box<dyn Error>>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*).into());
        }
    };
}

fn iso<S: Site>(
    x: &cubical_core::Presheaf<S>,
    y: &cubical_core::Presheaf<S>,
) -> Result<bool, Box<dyn Error>> {
    Ok(is_isomorphic(x, y, SearchLimits::default())?.is_some())
}

// 1
fn relation_soundness() -> Outcome {
    ensure!(
        FAMILIES.len() == 16,
        "expected 16 relation families, found {}",
        FAMILIES.len()
    );
    let mut n = 0;
    for f in Flavor::ALL {
        let all = relations::instances(f, 5);
        for fam in FAMILIES {
            let count = all.iter().filter(|i| i.family == fam.name).count();
            ensure!(
                count > 0 || (fam.needs_connections && f == Flavor::Reduced),
                "no instance of {}",
                fam.name
            );
        }
        for inst in &all {
            let l = common::eval_word(&inst.lhs.gens, inst.lhs.src_dim)
                .ok_or("lhs does not compose")?;
            let r = common::eval_word(&inst.rhs.gens, inst.rhs.src_dim)
                .ok_or("rhs does not compose")?;
            ensure!(
                l == r,
                "{} fails: {} vs {}",
                inst.family,
                inst.lhs,
                inst.rhs
            );
            // The crate's truth tables agree with the oracle.
            let table = inst.lhs.eval()?;
            for (p, v) in common::points(inst.lhs.src_dim).iter().zip(&l) {
                ensure!(
                    &table.at(p) == v,
                    "evaluation of {} disagrees at {p:?}",
                    inst.lhs
                );
            }
            ensure!(
                inst.lhs.to_map()? == inst.rhs.to_map()?,
                "{}: maps differ",
                inst.family
            );
            n += 1;
        }
    }
    let bad = MISPRINTED_CONNECTION_RELATION
        .instances(Flavor::Connections, 5)
        .iter()
        .filter(|i| {
            common::eval_word(&i.lhs.gens, i.lhs.src_dim)
                != common::eval_word(&i.rhs.gens, i.rhs.src_dim)
        })
        .count();
    ensure!(
        bad > 0,
        "the printed connection relation should fail somewhere"
    );
    Ok(format!("{n} instances; printed γγ variant fails on {bad}"))
}

// 2
fn normal_form_counts() -> Outcome {
    let mut table = Vec::new();
    for f in Flavor::ALL {
        for m in 0..=3 {
            for n in 0..=3 {
                let words = enumerate_homs(f, m, n)?;
                let oracle = common::closure_hom_count(f, m, n);
                ensure!(
                    hom_count(f, m, n)? == oracle,
                    "{f} hom({m},{n}): {} vs oracle {oracle}",
                    words.len()
                );
                ensure!(
                    words.len() == oracle,
                    "{f} hom({m},{n}) lists {} words",
                    words.len()
                );
                let mut maps = HashSet::new();
                for w in &words {
                    ensure!(w.is_normal(), "{w} is not normal");
                    ensure!(maps.insert(w.to_map()), "{w} repeats a map");
                }
                table.push(oracle);
            }
        }
    }
    ensure!(
        hom_count(Flavor::Connections, 2, 1)? == 5,
        "hom_c(2,1) should be 5"
    );
    ensure!(
        hom_count(Flavor::Reduced, 2, 1)? == 4,
        "hom_r(2,1) should be 4"
    );
    Ok(format!(
        "32 hom-sets, largest {}",
        table.iter().max().unwrap()
    ))
}

fn small_maps(f: Flavor, max: usize) -> Vec<CubeMap> {
    let site = CubeSite::new(f);
    let mut out = Vec::new();
    for m in 0..=max {
        for n in 0..=max {
            out.extend(site.homs(m, n).maps.iter().cloned());
        }
    }
    out
}

// 3
fn monoidal_structure() -> Outcome {
    let mut n = 0;
    for f in Flavor::ALL {
        let maps = small_maps(f, 2);
        let id0 = CubeMap::identity(0);
        for a in &maps {
            ensure!(
                id0.tensor(a) == *a && a.tensor(&id0) == *a,
                "unit is not strict"
            );
            for b in &maps {
                // (a ⊗ b)(x, y) = (a(x), b(y))
                let ab = a.tensor(b).to_function();
                let (fa, fb) = (a.to_function(), b.to_function());
                for p in common::points(a.src() + b.src()) {
                    let (x, y) = p.split_at(a.src());
                    let mut want = fa.at(x);
                    want.extend(fb.at(y));
                    ensure!(ab.at(&p) == want, "tensor is not the product of functions");
                }
                for c in maps.iter().step_by(7) {
                    ensure!(
                        a.tensor(b).tensor(c) == a.tensor(&b.tensor(c)),
                        "tensor is not strictly associative"
                    );
                }
            }
        }
        // interchange on composable pairs
        for g in &maps {
            for g2 in maps.iter().filter(|x| x.src() == g.tgt()) {
                for h in maps.iter().step_by(3) {
                    for h2 in maps.iter().filter(|x| x.src() == h.tgt()).step_by(2) {
                        let lhs = g2.after(g).tensor(&h2.after(h));
                        let rhs = g2.tensor(h2).after(&g.tensor(h));
                        ensure!(lhs == rhs, "interchange fails");
                        n += 1;
                    }
                }
            }
        }
        let d0 = CubeMap::face(false, 0, 0);
        let id1 = CubeMap::identity(1);
        let (l, r) = (d0.tensor(&id1), id1.tensor(&d0));
        ensure!(l != r, "δ^0 ⊗ id equals id ⊗ δ^0");
        ensure!(
            l == CubeMap::face(false, 0, 1) && r == CubeMap::face(false, 1, 1),
            "δ^0 ⊗ id, id ⊗ δ^0 misplaced"
        );
    }
    Ok(format!("{n} interchange squares; δ^0⊗id ≠ id⊗δ^0"))
}

/// The comparison `□[p] ⊗ □[q] -> □[p+q]`, `(a, b, w) ↦ (a ⊗ b) ∘ w`.
fn comparison(f: Flavor, t: &DayTensor, (p, q): (usize, usize)) -> CubicalMap {
    let site = CubeSite::new(f);
    CubicalMap::new(
        (0..=p + q)
            .map(|n| {
                (0..t.object.count(n))
                    .map(|c| {
                        let (cells, w) = t.representative(n, c);
                        let ((i, a), (j, b)) = (cells[0], cells[1]);
                        let fa = &site.homs(i, p).maps[a];
                        let fb = &site.homs(j, q).maps[b];
                        site.homs(n, p + q)
                            .position(&fa.tensor(fb).after(&w))
                            .unwrap()
                    })
                    .collect()
            })
            .collect(),
    )
}

// 4
fn tensor_of_representables() -> Outcome {
    let mut n = 0;
    for f in Flavor::ALL {
        for p in 0..=4 {
            for q in 0..=4 - p {
                let t = p + q;
                let (bp, bq) = (representable(f, p, t)?, representable(f, q, t)?);
                let tensor = DayTensor::new(f, t, &[&bp, &bq])?;
                let whole = representable(f, t, t)?;
                let map = comparison(f, &tensor, (p, q));
                map.check(&tensor.object, &whole)?;
                ensure!(
                    map.is_iso_onto(whole.counts()),
                    "{f} □[{p}]⊗□[{q}] -> □[{t}] is not bijective"
                );
                let inv = map.inverse().ok_or("no inverse")?;
                inv.check(&whole, &tensor.object)?;
                ensure!(
                    iso(&tensor.object, &whole)?,
                    "{f} search finds no iso for ({p},{q})"
                );
                n += 1;
            }
        }
    }
    Ok(format!("{n} pairs, iso (a,b,w) ↦ (a⊗b)∘w"))
}

// 5
fn decompositions() -> Outcome {
    let mut n = 0;
    for f in Flavor::ALL {
        for total in 0..=4 {
            for i in 0..=total {
                let d = boundary_decomposition(f, i, total - i)?;
                ensure!(d.holds(), "{f} {}: {d:?}", d.name);
                n += 1;
            }
        }
        for size in 1..=3 {
            for eps in [false, true] {
                let mut splits = vec![CapSplit::Last, CapSplit::First];
                splits.extend((1..size).map(CapSplit::Split));
                for s in splits {
                    let d = cap_decomposition(f, size, eps, s)?;
                    ensure!(d.holds(), "{f} {}: {d:?}", d.name);
                    n += 1;
                }
            }
        }
    }
    Ok(format!("{n} decompositions"))
}

// 6
fn triangulation() -> Outcome {
    for f in Flavor::ALL {
        for n in 0..=3 {
            let l = triangulate(&representable(f, n, n)?)?;
            let poset = nerve_of_category(&FinCategory::cube_poset(n), l.trunc())?;
            ensure!(
                iso(&l, &cube_poset_nerve(n, l.trunc())?)?,
                "{f} L(□[{n}]) is not N({{0<1}}^{n})"
            );
            ensure!(
                iso(&l, &poset)?,
                "{f} L(□[{n}]) is not the nerve of the cube poset"
            );
            for k in 0..=l.trunc() {
                let want = common::chain_count(&FinCategory::cube_poset(n), k);
                ensure!(
                    l.count(k) == want,
                    "{f} |L(□[{n}])_{k}| = {} vs {want}",
                    l.count(k)
                );
            }
        }
        let l2 = triangulate(&representable(f, 2, 2)?)?;
        ensure!(
            l2.nondegenerate_counts() == [4, 5, 2],
            "{f} L(□[2]) has {:?}",
            l2.nondegenerate_counts()
        );
        for p in 0..=3 {
            for q in 0..=3 - p {
                let t = p + q;
                let (bp, bq) = (representable(f, p, t)?, representable(f, q, t)?);
                let l = triangulate(&day_tensor(&bp, &bq)?)?;
                let r = product(&triangulate(&bp)?, &triangulate(&bq)?)?;
                ensure!(iso(&l, &r)?, "{f} L(□[{p}]⊗□[{q}]) ≇ L(□[{p}])×L(□[{q}])");
            }
        }
    }
    // hom(L X, Y) ≅ hom(X, R Y)
    let f = Flavor::Connections;
    let cases: Vec<(
        &str,
        TruncatedCubicalSet,
        cubical_core::TruncatedSimplicialSet,
    )> = vec![
        ("□[1], Δ[1]", representable(f, 1, 2)?, simplex(1, 2)?),
        (
            "□[1], ∂Δ[2]",
            representable(f, 1, 2)?,
            boundary_simplex(2, 2)?.0,
        ),
        ("∂□[2], Δ[1]", boundary(f, 2, 2)?.0, simplex(1, 2)?),
        ("□[2], Δ[2]", representable(f, 2, 2)?, simplex(2, 2)?),
        ("cap, Λ^1[2]", cap(f, 2, false, 0, 2)?.0, horn(2, 1, 2)?.0),
        (
            "∂□[2], ∂Δ[2]",
            boundary(f, 2, 2)?.0,
            boundary_simplex(2, 2)?.0,
        ),
    ];
    let mut sizes = Vec::new();
    for (name, x, y) in &cases {
        let lx = Triangulation::new(x)?;
        let left = hom_maps(&lx.object, y, SearchLimits::default())?;
        let ry = cubical_singular(y, f, x.trunc())?;
        let right = hom_maps(x, &ry, SearchLimits::default())?;
        ensure!(
            left.len() == right.len(),
            "{name}: {} vs {}",
            left.len(),
            right.len()
        );
        let right: HashSet<_> = right.into_iter().collect();
        let mut image = HashSet::new();
        for m in &left {
            let (ry2, t) = adjunct(x, &lx, m, y)?;
            ensure!(ry2 == ry, "{name}: adjunct lands in another R(Y)");
            ensure!(right.contains(&t), "{name}: adjunct is not a listed map");
            ensure!(image.insert(t), "{name}: two maps share an adjunct");
        }
        sizes.push(left.len());
    }
    Ok(format!(
        "L(□[2]) nondegenerate (4,5,2); adjunction homs {sizes:?}"
    ))
}

fn groups(hs: &[HomologyGroup]) -> Vec<usize> {
    common::trim(hs.iter().map(|h| h.betti).collect())
}

fn torsion_free(hs: &[HomologyGroup]) -> bool {
    hs.iter().all(|h| h.torsion.is_empty())
}

// 7
fn homology_checks() -> Outcome {
    for f in Flavor::ALL {
        let circle = boundary(f, 2, 2)?.0;
        let mut cases: Vec<(String, TruncatedCubicalSet, Vec<usize>)> = (0..=3)
            .map(|n| Ok((format!("□[{n}]"), representable(f, n, n)?, vec![1])))
            .collect::<Result<_, Box<dyn Error>>>()?;
        cases.push(("∂□[2]".into(), circle.clone(), vec![1, 1]));
        cases.push(("torus".into(), day_tensor(&circle, &circle)?, vec![1, 2, 1]));
        for (name, x, want) in cases {
            let c = chain_realization(&x, Ring::Integers)?;
            let hs = homology(&c)?;
            ensure!(
                torsion_free(&hs) && groups(&hs) == want,
                "{f} H({name}) = {hs:?}"
            );
            let oracle =
                common::torsion_free_betti(&c).ok_or(format!("{name}: oracle sees torsion"))?;
            ensure!(
                common::trim(oracle.clone()) == want,
                "{f} oracle H({name}) = {oracle:?}"
            );
            let normalized = homology(&normalized_cubical_chains(&x, Ring::Integers)?)?;
            ensure!(
                groups(&normalized) == want && torsion_free(&normalized),
                "{f} normalized H({name}) differs"
            );
        }
    }
    Ok("points, (Z,Z), (Z,Z²,Z)".into())
}

// 8
fn interval_structure() -> Outcome {
    for ring in [Ring::Integers, Ring::Prime(2), Ring::Prime(3)] {
        let axioms = interval_axioms(ring);
        for a in &axioms {
            ensure!(a.holds, "{} fails over {ring}", a.name);
        }
        ensure!(
            axioms
                .iter()
                .filter(|a| a.name.contains("delta1 absorbs"))
                .count()
                == 2,
            "absorption not checked"
        );
        let co = coalgebra_check_c1(ring);
        ensure!(co.all_hold(), "coalgebra axioms fail over {ring}");
        ensure!(
            co.left_expansion.len() == 3 && co.left_expansion.iter().all(|t| t.1 == 1),
            "(w⊗id)w(01) wrong"
        );
    }
    // The structure maps on basis elements.
    let iv = interval_c1(Ring::Integers);
    let cc = iv.complex.tensor(&iv.complex)?;
    let expect = |label: &str| match label {
        "(0)⊗(0)" => Some("(0)"),
        "(0)⊗(1)" | "(1)⊗(0)" | "(1)⊗(1)" => Some("(1)"),
        "(0)⊗(01)" | "(01)⊗(0)" => Some("(01)"),
        _ => None,
    };
    for n in 0..=cc.top() {
        for (k, label) in cc.basis(n).iter().enumerate() {
            let image: Vec<&str> = match iv.gamma.component(n) {
                Some(m) => (0..m.rows())
                    .filter(|&r| m.get(r, k) != 0)
                    .map(|r| iv.complex.basis(n)[r].as_str())
                    .collect(),
                None => vec![],
            };
            ensure!(
                image == expect(label).into_iter().collect::<Vec<_>>(),
                "γ({label}) = {image:?}"
            );
        }
    }
    let w = iv.w.component(1).ok_or("w has no degree-1 part")?;
    let mut terms: Vec<(&str, i64)> = (0..w.rows())
        .filter(|&r| w.get(r, 0) != 0)
        .map(|r| (cc.basis(1)[r].as_str(), w.get(r, 0)))
        .collect();
    terms.sort();
    ensure!(
        terms == [("(0)⊗(01)", 1), ("(01)⊗(1)", 1)],
        "w(01) = {terms:?}"
    );
    Ok("segment axioms with absorbing δ^1, coalgebra over Z, F2, F3".into())
}

// 9
fn w_construction() -> Outcome {
    for n in 0..=5 {
        w_category(n, n.max(1) - 1)?.validate()?;
    }
    let ids = check_cosimplicial_identities(4)?;
    let w3 = w_category(3, 2)?;
    let f = Flavor::Connections;
    ensure!(
        *w3.hom(0, 3) == representable(f, 2, 2)?,
        "W_3(0,3) is not □_c[2]"
    );
    let site = CubeSite::new(f);
    let vertex = |a: bool, b: bool| site.homs(0, 2).position(&CubeMap::vertex(&[a, b])).unwrap();
    let v1 = |a: bool| site.homs(0, 1).position(&CubeMap::vertex(&[a])).unwrap();
    let via_1 = w3.compose(0, 1, 3, (0, 0), (0, v1(false)));
    let via_2 = w3.compose(0, 2, 3, (0, v1(false)), (0, 0));
    let via_12 = w3.compose(0, 1, 3, (0, 0), (0, w3.compose(1, 2, 3, (0, 0), (0, 0))));
    let via_12b = w3.compose(0, 2, 3, (0, w3.compose(0, 1, 2, (0, 0), (0, 0))), (0, 0));
    ensure!(via_1 == vertex(true, false), "(01)(13) is not (1,0)");
    ensure!(via_2 == vertex(false, true), "(02)(23) is not (0,1)");
    ensure!(
        via_12 == vertex(true, true) && via_12b == via_12,
        "(01)(12)(23) is not (1,1)"
    );
    let all: HashSet<usize> = [via_1, via_2, via_12, vertex(false, false)].into();
    ensure!(all.len() == 4, "vertices are not distinct");
    Ok(format!(
        "W_0..W_5 valid, {ids} cosimplicial identities, W_3(0,3) = □_c[2]"
    ))
}

// 10
fn nerve_correctness() -> Outcome {
    let f = Flavor::Connections;
    let cats = [
        ("[1]", FinCategory::ordinal(1)),
        ("[2]", FinCategory::ordinal(2)),
        ("[3]", FinCategory::ordinal(3)),
        ("square", FinCategory::commutative_square()),
    ];
    let mut corpus = Vec::new();
    for (name, c) in &cats {
        let ic = discrete_enrich(c, f, 2)?;
        let hc = hc_nerve(&ic, 3)?;
        ensure!(
            iso(&hc, &nerve_of_category(c, 3)?)?,
            "N^c(i({name})) ≇ N({name})"
        );
        for k in 0..=3 {
            ensure!(
                hc.count(k) == common::chain_count(c, k),
                "N^c(i({name}))_{k} miscounted"
            );
        }
        corpus.push((name.to_string(), ic));
    }
    corpus.push((
        "arrow □[1]".into(),
        arrow_category(&representable(f, 1, 2)?)?,
    ));
    corpus.push(("W_2".into(), w_category(2, 2)?));
    let site = CubeSite::new(f);
    let mut total = 0;
    for (name, c) in &corpus {
        let nerve = HcNerve::new(c, 3)?;
        for k in 0..=3 {
            let fs = enumerate_functors(&w_category(k, c.trunc())?, c, SearchLimits::default())?;
            ensure!(
                fs.len() == nerve.object.count(k),
                "{name}: {} functors from W_{k}, {} simplices",
                fs.len(),
                nerve.object.count(k)
            );
            let mut hit = HashSet::new();
            for func in &fs {
                let cells: Vec<usize> = pairs(k)
                    .into_iter()
                    .map(|(i, j)| {
                        let d = j - i - 1;
                        let top = site.homs(d, d).position(&CubeMap::identity(d)).unwrap();
                        func.homs[i][j].apply(d, top)
                    })
                    .collect();
                let s = nerve
                    .find(k, &func.objects, &cells)
                    .ok_or(format!("{name}: functor without simplex"))?;
                ensure!(hit.insert(s), "{name}: two functors share a simplex");
            }
            total += fs.len();
        }
    }
    let n2 = hc_nerve(&discrete_enrich(&FinCategory::ordinal(2), f, 2)?, 3)?;
    let mut horns = 0;
    for (m, k) in [(2, 1), (3, 1), (3, 2)] {
        let r = inner_horn_fill_probe(&n2, m, k)?;
        ensure!(
            r.total_maps > 0 && r.unfillable == 0,
            "Λ^{k}[{m}] -> N^c(i([2])): {} of {} unfillable",
            r.unfillable,
            r.total_maps
        );
        horns += r.total_maps;
    }
    Ok(format!(
        "{total} functors matched; {horns} inner horns fill"
    ))
}

// 11
fn dg_nerve() -> Outcome {
    let c = FinCategory::ordinal(1);
    let d = DgCategory::linearize(&c, Ring::Prime(2))?;
    let nerve = HcNerve::new(&d.cubical(1)?, 2)?;
    let x = &nerve.object;
    let want = common::linear_nerve_counts(&c, 2);
    ensure!(
        x.counts() == want,
        "counts {:?}, oracle {want:?}",
        x.counts()
    );
    // Edges carrying the zero morphism, found from the chain maps themselves.
    let zero_edge = |e: usize| -> Result<bool, Box<dyn Error>> {
        let (objs, cells) = nerve.simplex(1, e);
        let r = DgSingular::new(&d.homs[objs[0]][objs[1]], 1, DEFAULT_MAX_CELLS)?;
        Ok(r.cell(0, cells[0]).components().iter().all(|m| m.is_zero()))
    };
    let mut keep: Vec<Vec<bool>> = vec![vec![true; x.count(0)], vec![], vec![]];
    for e in 0..x.count(1) {
        keep[1].push(!zero_edge(e)?);
    }
    for s in 0..x.count(2) {
        let faces = x
            .actions_from(2)
            .filter(|(g, _)| matches!(g.kind, GenKind::Face(_)));
        let ok = faces.into_iter().all(|(_, t)| keep[1][t[s]]);
        keep[2].push(ok);
    }
    let (support, _) = subpresheaf(x, &keep)?;
    ensure!(
        iso(&support, &simplex(1, 2)?)?,
        "nonzero part {:?} is not Δ[1]",
        support.counts()
    );
    let zeros = keep[1].iter().filter(|k| !**k).count();
    Ok(format!(
        "nonzero part ≅ Δ[1]; full counts {:?} include {zeros} zero edges",
        x.counts()
    ))
}

// 12
fn validators() -> Outcome {
    let report = selftest::run(false, &[]);
    let failed: Vec<String> = report
        .failures()
        .map(|o| format!("{} {}: {}", o.suite, o.name, o.detail))
        .collect();
    ensure!(failed.is_empty(), "{}", failed.join("; "));
    Ok(format!("{} selftest checks", report.outcomes.len()))
}

type Criterion = (u8, &'static str, u64, fn() -> Outcome);

const CRITERIA: &[Criterion] = &[
    (1, "relation soundness", 10, relation_soundness),
    (2, "normal-form counts", 60, normal_form_counts),
    (3, "monoidal structure", 5, monoidal_structure),
    (4, "□[p]⊗□[q] ≅ □[p+q]", 60, tensor_of_representables),
    (5, "boundary and cap decompositions", 120, decompositions),
    (6, "triangulation", 120, triangulation),
    (7, "homology", 120, homology_checks),
    (8, "C[1] segment and coalgebra", 5, interval_structure),
    (9, "W construction", 60, w_construction),
    (10, "coherent nerve", 300, nerve_correctness),
    (11, "dg nerve of F2[1]", 60, dg_nerve),
    (12, "validators", 600, validators),
];

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    for &(id, name, limit, check) in CRITERIA {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()).into())
        });
        let took = start.elapsed();
        let result = result.and_then(|d| {
            if took > Duration::from_secs(limit) {
                Err(format!("took {:.1}s, limit {limit}s", took.as_secs_f64()).into())
            } else {
                Ok(d)
            }
        });
        match result {
            Ok(detail) => println!(
                "PASS criterion {id:>2} {name}: {detail} [{:.2}s / {limit}s]",
                took.as_secs_f64()
            ),
            Err(e) => {
                println!(
                    "FAIL criterion {id:>2} {name}: {e} [{:.2}s / {limit}s]",
                    took.as_secs_f64()
                );
                failed.push(id);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
