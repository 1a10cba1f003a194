use cubical_core::chain::{
    chain_realization, field_homology, homology, simplicial_chains, FinChainComplex, Ring,
};
use cubical_core::cube::{enumerate_homs, factorize, hom_count, CubeFunction, RawWord};
use cubical_core::cubical::{self, cap_fill_check};
use cubical_core::enriched::{dg_category_nerve, discrete_enrich, hc_nerve};
use cubical_core::format::{Payload, Workspace};
use cubical_core::presheaf::{hom_maps, is_isomorphic, pushout, SearchLimits};
use cubical_core::simplicial::{horn_fill_probe, triangulate};
use cubical_core::{selftest, Error, Flavor, Presheaf, Result};
use serde_json::json;

use crate::expr::{parse, Env, Expr};
use crate::{Cli, Command};

macro_rules! say {
    ($o:expr, $($t:tt)*) => {{
        use std::fmt::Write as _;
        let _ = writeln!($o, $($t)*);
    }};
}

/// Runs a command and returns its exit code; errors carry their own.
pub fn run(cli: &Cli, o: &mut String) -> Result<u8> {
    let flavor: Flavor = cli.flavor.into();
    let workspace = cli.workspace.as_deref().map(Workspace::load).transpose()?;
    let mut env = Env::new(flavor, cli.trunc, cli.prime, cli.max_dim, workspace);
    let limits = SearchLimits {
        max_results: cli.max_enum,
        ..SearchLimits::default()
    };
    match &cli.command {
        Command::Normalize { word, src } => {
            let raw = RawWord::parse(word, flavor, *src)?;
            let nf = raw.normalize()?;
            let rows = nf.eval()?.rows();
            if cli.json {
                let v = json!({
                    "input": word,
                    "normal_form": nf.to_string(),
                    "src": nf.to_map().src(),
                    "tgt": nf.to_map().tgt(),
                    "table": rows,
                });
                say!(o, "{}", serde_json::to_string_pretty(&v).unwrap());
            } else {
                say!(o, "{nf}");
                for r in rows {
                    say!(o, "  {r}");
                }
            }
        }
        Command::Homset { m, n, list } => {
            env.guard(*m.max(n))?;
            let count = hom_count(flavor, *m, *n)?;
            let words: Vec<String> = if *list {
                enumerate_homs(flavor, *m, *n)?
                    .iter()
                    .map(|w| w.to_string())
                    .collect()
            } else {
                Vec::new()
            };
            if cli.json {
                let mut v = json!({ "flavor": flavor.short(), "m": m, "n": n, "count": count });
                if *list {
                    v["maps"] = json!(words);
                }
                say!(o, "{}", serde_json::to_string_pretty(&v).unwrap());
            } else {
                say!(o, "{count}");
                for w in words {
                    say!(o, "  {w}");
                }
            }
        }
        Command::Factorize { src, tgt, rows } => {
            env.guard(*src.max(tgt))?;
            let table = rows
                .iter()
                .map(|r| {
                    if r.len() != *tgt || !r.chars().all(|c| c == '0' || c == '1') {
                        return Err(Error::Parse(format!(
                            "row {r:?} is not a bit string of length {tgt}"
                        )));
                    }
                    Ok(if r.is_empty() {
                        0
                    } else {
                        u32::from_str_radix(r, 2).unwrap()
                    })
                })
                .collect::<Result<Vec<u32>>>()?;
            let f = CubeFunction::from_table(*src, *tgt, table)?;
            match factorize(&f, flavor)? {
                Some(w) => {
                    if cli.json {
                        say!(
                            o,
                            "{}",
                            serde_json::to_string_pretty(&json!({ "word": w.to_string() }))
                                .unwrap()
                        );
                    } else {
                        say!(o, "{w}");
                    }
                }
                None => {
                    return Err(Error::Validation(format!(
                        "the function is not a map of the cube category of flavor {}",
                        flavor.short()
                    )))
                }
            }
        }
        Command::Build { expr } => {
            let e = parse_args(expr)?;
            let p = env.eval_top(&e)?;
            emit(cli, &p, o)?;
        }
        Command::Tensor { left, right } => {
            let (a, b) = (parse(left)?, parse(right)?);
            let e = Expr::Tensor(Box::new(a), Box::new(b));
            let p = env.eval_top(&e)?;
            emit(cli, &p, o)?;
        }
        Command::Boundary { n } => {
            let p = env.eval_top(&Expr::Boundary(*n))?;
            emit(cli, &p, o)?;
        }
        Command::Cap { n, eps, i } => {
            if *eps > 1 {
                return Err(Error::Parse(format!("eps must be 0 or 1, not {eps}")));
            }
            let p = env.eval_top(&Expr::Cap(*n, *eps == 1, *i))?;
            emit(cli, &p, o)?;
        }
        Command::Pushout {
            a,
            x,
            y,
            left,
            right,
        } => {
            let es = [parse(a)?, parse(x)?, parse(y)?];
            let n = match cli.trunc {
                Some(n) => n,
                None => {
                    let mut m = 0;
                    for e in &es {
                        m = m.max(env.natural(e)?);
                    }
                    m
                }
            };
            let a = env.cubical(&es[0], n)?;
            let x = env.cubical(&es[1], n)?;
            let y = env.cubical(&es[2], n)?;
            let pick =
                |to: &Presheaf<_>, k: Option<usize>, side: &str| -> Result<cubical::CubicalMap> {
                    let maps = hom_maps(&a, to, limits)?;
                    match k {
                        Some(k) => maps.get(k).cloned().ok_or_else(|| {
                            Error::Validation(format!(
                                "only {} maps on the {side}, no map {k}",
                                maps.len()
                            ))
                        }),
                        None => maps.into_iter().find(|m| m.is_mono()).ok_or_else(|| {
                            Error::Validation(format!("no monomorphism on the {side}"))
                        }),
                    }
                };
            let f = pick(&x, *left, "left")?;
            let g = pick(&y, *right, "right")?;
            let p = pushout(&a, &x, &y, &f, &g)?;
            emit(cli, &Payload::Cubical(p.object), o)?;
        }
        Command::Iso { left, right } => {
            let (a, b) = (parse(left)?, parse(right)?);
            let n = match cli.trunc {
                Some(n) => n,
                None => env.natural(&a)?.max(env.natural(&b)?),
            };
            let (pa, pb) = (env.eval(&a, n)?, env.eval(&b, n)?);
            let found = match (&pa, &pb) {
                (Payload::Cubical(x), Payload::Cubical(y)) => {
                    is_isomorphic(x, y, limits)?.map(|m| m.components().to_vec())
                }
                (Payload::Simplicial(x), Payload::Simplicial(y)) => {
                    is_isomorphic(x, y, limits)?.map(|m| m.components().to_vec())
                }
                _ => {
                    return Err(Error::Unsupported(format!(
                        "isomorphism test between a {} and a {}",
                        pa.kind(),
                        pb.kind()
                    )))
                }
            };
            if cli.json {
                say!(
                    o,
                    "{}",
                    serde_json::to_string_pretty(
                        &json!({ "isomorphic": found.is_some(), "map": found })
                    )
                    .unwrap()
                );
            } else if let Some(m) = found {
                say!(o, "isomorphic");
                for (d, c) in m.iter().enumerate() {
                    say!(
                        o,
                        "  dim {d}: {}",
                        c.iter()
                            .map(|x| x.to_string())
                            .collect::<Vec<_>>()
                            .join(" ")
                    );
                }
            } else {
                say!(o, "not isomorphic");
            }
        }
        Command::Triangulate { expr } => {
            let e = parse_args(expr)?;
            let n = env.trunc.map_or_else(|| env.natural(&e), Ok)?;
            let x = env.cubical(&e, n)?;
            emit(cli, &Payload::Simplicial(triangulate(&x)?), o)?;
        }
        Command::Homology { expr, field } => {
            let e = parse_args(expr)?;
            let ring = if *field { env.ring()? } else { Ring::Integers };
            let complex = match env.eval_top(&e)? {
                Payload::Cubical(x) => chain_realization(&x, ring)?,
                Payload::Simplicial(x) => simplicial_chains(&x, ring)?,
                Payload::Complex(c) => c,
                p => return Err(Error::Unsupported(format!("homology of a {}", p.kind()))),
            };
            print_homology(cli, &complex, o)?;
        }
        Command::Nerve { expr } => {
            let e = parse_args(expr)?;
            let k = cli.trunc.unwrap_or(3);
            env.guard(k)?;
            let t = k.saturating_sub(1);
            let nerve = match env.eval(&e, t)? {
                Payload::FinCategory(c) => {
                    hc_nerve(&discrete_enrich(&c, Flavor::Connections, t)?, k)?
                }
                Payload::Category(c) => hc_nerve(&c, k)?,
                Payload::DgCategory(d) => dg_category_nerve(&d, k)?,
                p => {
                    return Err(Error::Unsupported(format!(
                        "the coherent nerve of a {}",
                        p.kind()
                    )))
                }
            };
            emit(cli, &Payload::Simplicial(nerve), o)?;
        }
        Command::Fill { expr, inner } => {
            let e = parse_args(expr)?;
            let mut lines = Vec::new();
            match env.eval_top(&e)? {
                Payload::Cubical(x) => {
                    for n in 1..=x.trunc() {
                        for i in 0..n {
                            for eps in [false, true] {
                                let r = cap_fill_check(&x, n, eps, i)?;
                                lines.push((
                                    format!("cap {n} {} {i}", eps as u8),
                                    r.unfillable,
                                    r.total_maps,
                                ));
                            }
                        }
                    }
                }
                Payload::Simplicial(x) => {
                    for n in 1..=x.trunc() {
                        for k in 0..=n {
                            if *inner && (k == 0 || k == n) {
                                continue;
                            }
                            let r = horn_fill_probe(&x, n, k)?;
                            lines.push((format!("horn {n} {k}"), r.unfillable, r.total_maps));
                        }
                    }
                }
                p => {
                    return Err(Error::Unsupported(format!(
                        "filling probes on a {}",
                        p.kind()
                    )))
                }
            }
            let total: usize = lines.iter().map(|l| l.1).sum();
            if cli.json {
                let probes: Vec<_> = lines
                    .iter()
                    .map(|(s, u, t)| json!({ "shape": s, "unfillable": u, "maps": t }))
                    .collect();
                say!(
                    o,
                    "{}",
                    serde_json::to_string_pretty(&json!({ "probes": probes, "unfillable": total }))
                        .unwrap()
                );
            } else {
                for (s, u, t) in &lines {
                    say!(o, "{s}: {u} of {t} unfillable");
                }
                say!(o, "unfillable: {total}");
            }
        }
        Command::Selftest { quick, suites } => {
            for s in suites {
                if !selftest::SUITES.contains(&s.as_str()) {
                    return Err(Error::Parse(format!(
                        "unknown suite {s:?}; choose from {}",
                        selftest::SUITES.join(", ")
                    )));
                }
            }
            let report = selftest::run(*quick, suites);
            if cli.json {
                let outcomes: Vec<_> = report
                    .outcomes
                    .iter()
                    .map(|o| json!({ "suite": o.suite, "name": o.name, "passed": o.passed, "detail": o.detail }))
                    .collect();
                say!(
                    o,
                    "{}",
                    serde_json::to_string_pretty(
                        &json!({ "passed": report.passed(), "checks": outcomes })
                    )
                    .unwrap()
                );
            } else {
                for c in &report.outcomes {
                    let tag = if c.passed { "pass" } else { "FAIL" };
                    say!(o, "{tag}  {:<10} {} ({})", c.suite, c.name, c.detail);
                }
                let failed = report.failures().count();
                say!(o, "{} checks, {failed} failed", report.outcomes.len());
            }
            return Ok(if report.passed() { 0 } else { 3 });
        }
    }
    Ok(0)
}

fn parse_args(args: &[String]) -> Result<Expr> {
    if args.is_empty() {
        return Err(Error::Parse("missing expression".into()));
    }
    parse(&args.join(" "))
}

fn emit(cli: &Cli, p: &Payload, o: &mut String) -> Result<()> {
    if cli.summary {
        let v = summary(p);
        if cli.json {
            say!(o, "{}", serde_json::to_string_pretty(&v).unwrap());
        } else {
            print_summary(&v, o);
        }
    }
    let text = p.to_json();
    match &cli.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Validation(format!("cannot write {}: {e}", path.display())))?,
        None if !cli.summary => o.push_str(&text),
        None => {}
    }
    Ok(())
}

fn presheaf_summary<S: cubical_core::site::Site>(kind: &str, x: &Presheaf<S>) -> serde_json::Value {
    json!({
        "kind": kind,
        "trunc": x.trunc(),
        "skeleton": x.computed_skeleton(),
        "counts": x.counts(),
        "nondegenerate": x.nondegenerate_counts(),
    })
}

fn summary(p: &Payload) -> serde_json::Value {
    match p {
        Payload::Cubical(x) => {
            let mut v = presheaf_summary("cubical", x);
            v["flavor"] = json!(x.site().flavor.short());
            v
        }
        Payload::Simplicial(x) => presheaf_summary("simplicial", x),
        Payload::Complex(c) => json!({ "kind": "complex", "ranks": c.ranks() }),
        Payload::Category(c) => {
            let n = c.object_count();
            let homs: Vec<Vec<Vec<usize>>> = (0..n)
                .map(|x| (0..n).map(|y| c.hom(x, y).counts().to_vec()).collect())
                .collect();
            json!({ "kind": "category", "objects": c.objects(), "trunc": c.trunc(), "hom_counts": homs })
        }
        Payload::FinCategory(c) => {
            json!({ "kind": "fincategory", "objects": c.objects, "morphisms": c.morphisms.len() })
        }
        Payload::DgCategory(d) => {
            let n = d.objects.len();
            let ranks: Vec<Vec<Vec<usize>>> = (0..n)
                .map(|x| (0..n).map(|y| d.homs[x][y].ranks()).collect())
                .collect();
            json!({ "kind": "dg-category", "objects": d.objects, "hom_ranks": ranks })
        }
    }
}

fn print_summary(v: &serde_json::Value, o: &mut String) {
    let list = |key: &str| {
        v[key]
            .as_array()
            .map(|a| {
                a.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .unwrap_or_default()
    };
    say!(o, "kind: {}", v["kind"].as_str().unwrap_or("?"));
    for key in ["flavor", "trunc", "skeleton"] {
        if let Some(x) = v.get(key) {
            say!(
                o,
                "{key}: {}",
                x.as_str()
                    .map(str::to_string)
                    .unwrap_or_else(|| x.to_string())
            );
        }
    }
    for key in ["counts", "nondegenerate", "ranks", "objects"] {
        if v.get(key).is_some() {
            say!(o, "{key}: {}", list(key));
        }
    }
    for key in ["hom_counts", "hom_ranks", "morphisms"] {
        if let Some(x) = v.get(key) {
            say!(o, "{key}: {x}");
        }
    }
}

fn print_homology(cli: &Cli, c: &FinChainComplex, o: &mut String) -> Result<()> {
    let (labels, ring_name): (Vec<String>, String) = match c.ring() {
        Ring::Integers => (
            homology(c)?.iter().map(|h| h.to_string()).collect(),
            "Z".into(),
        ),
        Ring::Prime(p) => (
            field_homology(c)?
                .iter()
                .map(|&b| match b {
                    0 => "0".to_string(),
                    1 => format!("F{p}"),
                    b => format!("F{p}^{b}"),
                })
                .collect(),
            format!("F{p}"),
        ),
    };
    // Trailing zero groups only reflect the truncation.
    let keep = labels.iter().rposition(|s| s != "0").map_or(1, |k| k + 1);
    let labels = &labels[..keep.min(labels.len())];
    if cli.json {
        let groups: Vec<_> = match c.ring() {
            Ring::Integers => homology(c)?
                .into_iter()
                .take(labels.len())
                .map(|h| json!({ "degree": h.degree, "betti": h.betti, "torsion": h.torsion }))
                .collect(),
            Ring::Prime(_) => field_homology(c)?
                .into_iter()
                .take(labels.len())
                .enumerate()
                .map(|(d, b)| json!({ "degree": d, "betti": b, "torsion": [] }))
                .collect(),
        };
        say!(
            o,
            "{}",
            serde_json::to_string_pretty(&json!({ "ring": ring_name, "groups": groups })).unwrap()
        );
    } else {
        let parts: Vec<String> = labels
            .iter()
            .enumerate()
            .map(|(d, s)| format!("H{d}={s}"))
            .collect();
        say!(o, "{}", parts.join(" "));
    }
    Ok(())
}
