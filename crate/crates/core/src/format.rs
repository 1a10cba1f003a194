//! Versioned JSON file formats.
//!
//! Objects list their cell ids by dimension and every generator action as
//! `{gen, index, at_dim, cell, image}`: the generator acts on cell number
//! `cell` of dimension `at_dim` and lands on cell number `image`. Cubical
//! generators are `d0`, `d1` (faces), `s` (degeneracies) and `g`
//! (connections); simplicial ones are `d` and `s`. Cap indices are 0-based
//! everywhere.

use std::collections::{BTreeMap, HashSet};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::chain::{ChainMap, FinChainComplex, Matrix, Ring};
use crate::cube::Flavor;
use crate::enriched::{CubicalCategory, CubicalQuiver, DgCategory};
use crate::error::{bail, ensure, Error, Result};
use crate::presheaf::Presheaf;
use crate::simplicial::{FinCategory, SimplexSite};
use crate::site::{CubeSite, Gen, GenKind, Site};
use crate::{TruncatedCubicalSet, TruncatedSimplicialSet};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Action {
    pub gen: String,
    pub index: usize,
    pub at_dim: usize,
    pub cell: usize,
    pub image: usize,
}

/// A cubical or simplicial set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectFile {
    pub format_version: u32,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flavor: Option<String>,
    pub trunc: usize,
    pub skeleton: usize,
    pub cells: BTreeMap<usize, Vec<String>>,
    pub actions: Vec<Action>,
}

fn gen_name(g: Gen) -> &'static str {
    match g.kind {
        GenKind::Face(false) => "d0",
        GenKind::Face(true) => "d1",
        GenKind::Degen => "s",
        GenKind::Conn => "g",
    }
}

fn to_file<S: Site>(
    x: &Presheaf<S>,
    kind: &str,
    flavor: Option<Flavor>,
    simplicial: bool,
) -> ObjectFile {
    let cells = (0..=x.trunc())
        .map(|n| (n, (0..x.count(n)).map(|c| x.label(n, c)).collect()))
        .collect();
    let mut actions = Vec::new();
    for &g in x.generators() {
        let name = if simplicial && matches!(g.kind, GenKind::Face(_)) {
            "d"
        } else {
            gen_name(g)
        };
        for (cell, &image) in x.table(g).iter().enumerate() {
            actions.push(Action {
                gen: name.to_string(),
                index: g.index,
                at_dim: g.tgt(),
                cell,
                image,
            });
        }
    }
    ObjectFile {
        format_version: FORMAT_VERSION,
        kind: kind.to_string(),
        flavor: flavor.map(|f| f.short().to_string()),
        trunc: x.trunc(),
        skeleton: x.skeleton(),
        cells,
        actions,
    }
}

fn gen_of(a: &Action, simplicial: bool) -> Result<Gen> {
    let kind = match (a.gen.as_str(), simplicial) {
        ("d", true) => GenKind::Face(false),
        ("d0", false) => GenKind::Face(false),
        ("d1", false) => GenKind::Face(true),
        ("s", _) => GenKind::Degen,
        ("g", false) => GenKind::Conn,
        (other, _) => bail!(Parse, "unknown generator {other:?}"),
    };
    let src = match kind {
        GenKind::Face(_) => a.at_dim.checked_sub(1),
        _ => Some(a.at_dim + 1),
    }
    .ok_or_else(|| Error::Parse(format!("{} cannot act on dimension {}", a.gen, a.at_dim)))?;
    Ok(Gen {
        kind,
        index: a.index,
        src,
    })
}

fn from_file<S: Site>(f: &ObjectFile, site: S, simplicial: bool) -> Result<Presheaf<S>> {
    ensure!(
        f.format_version == FORMAT_VERSION,
        Parse,
        "unsupported format version {}",
        f.format_version
    );
    let counts: Vec<usize> = (0..=f.trunc)
        .map(|n| f.cells.get(&n).map_or(0, Vec::len))
        .collect();
    ensure!(
        f.cells.keys().all(|&n| n <= f.trunc),
        Parse,
        "cells listed above the truncation {}",
        f.trunc
    );
    let mut tables: BTreeMap<Gen, Vec<Option<usize>>> = site
        .generators(f.trunc)
        .into_iter()
        .map(|g| (g, vec![None; counts[g.tgt()]]))
        .collect();
    for a in &f.actions {
        let g = gen_of(a, simplicial)?;
        let Some(table) = tables.get_mut(&g) else {
            bail!(
                Validation,
                "{} {} on dimension {} is not a generator here",
                a.gen,
                a.index,
                a.at_dim
            );
        };
        ensure!(
            a.cell < table.len(),
            Validation,
            "action on missing cell {} in dimension {}",
            a.cell,
            a.at_dim
        );
        ensure!(
            table[a.cell].is_none(),
            Validation,
            "action of {g} on cell {} given twice",
            a.cell
        );
        table[a.cell] = Some(a.image);
    }
    for (g, t) in &tables {
        ensure!(
            t.iter().all(Option::is_some),
            Validation,
            "action of {g} is incomplete"
        );
    }
    let x = Presheaf::from_fn(site, f.trunc, f.skeleton, counts, |g, c| {
        tables[&g][c].unwrap()
    })?;
    ensure!(
        x.computed_skeleton() <= f.skeleton,
        Validation,
        "declared skeleton {} is below the computed skeleton {}",
        f.skeleton,
        x.computed_skeleton()
    );
    let labels = (0..=f.trunc)
        .map(|n| f.cells.get(&n).cloned().unwrap_or_default())
        .collect();
    Ok(x.with_labels(labels))
}

pub fn cubical_to_file(x: &TruncatedCubicalSet) -> ObjectFile {
    to_file(x, "cubical", Some(x.site().flavor), false)
}

pub fn cubical_from_file(f: &ObjectFile) -> Result<TruncatedCubicalSet> {
    ensure!(
        f.kind == "cubical",
        Parse,
        "expected a cubical object, found {:?}",
        f.kind
    );
    let flavor: Flavor = f
        .flavor
        .as_deref()
        .ok_or_else(|| Error::Parse("missing flavor".into()))?
        .parse()?;
    from_file(f, CubeSite::new(flavor), false)
}

pub fn simplicial_to_file(x: &TruncatedSimplicialSet) -> ObjectFile {
    to_file(x, "simplicial", None, true)
}

pub fn simplicial_from_file(f: &ObjectFile) -> Result<TruncatedSimplicialSet> {
    ensure!(
        f.kind == "simplicial",
        Parse,
        "expected a simplicial object, found {:?}",
        f.kind
    );
    from_file(f, SimplexSite, true)
}

/// A matrix as sparse `(row, col, value)` triples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, i64)>,
}

impl SparseMatrix {
    pub fn from_matrix(m: &Matrix) -> Self {
        SparseMatrix {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.triples(),
        }
    }

    pub fn to_matrix(&self) -> Result<Matrix> {
        let mut m = Matrix::zeros(self.rows, self.cols);
        for &(i, j, v) in &self.entries {
            ensure!(
                i < self.rows && j < self.cols,
                Parse,
                "entry ({i},{j}) outside a {}x{} matrix",
                self.rows,
                self.cols
            );
            m.add(i, j, v);
        }
        Ok(m)
    }
}

/// A chain complex: `boundaries[n]` is `d_n: C_n -> C_{n-1}` for `n >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub format_version: u32,
    pub kind: String,
    pub ring: String,
    pub degrees: usize,
    pub bases: Vec<Vec<String>>,
    pub boundaries: Vec<SparseMatrix>,
}

pub fn complex_to_file(a: &FinChainComplex) -> ComplexFile {
    ComplexFile {
        format_version: FORMAT_VERSION,
        kind: "complex".into(),
        ring: a.ring().to_string(),
        degrees: a.top() + 1,
        bases: (0..=a.top()).map(|n| a.basis(n).to_vec()).collect(),
        boundaries: (1..=a.top())
            .map(|n| SparseMatrix::from_matrix(&a.d(n)))
            .collect(),
    }
}

pub fn complex_from_file(f: &ComplexFile) -> Result<FinChainComplex> {
    ensure!(
        f.format_version == FORMAT_VERSION,
        Parse,
        "unsupported format version {}",
        f.format_version
    );
    ensure!(
        f.kind == "complex",
        Parse,
        "expected a complex, found {:?}",
        f.kind
    );
    ensure!(
        f.degrees >= 1 && f.bases.len() == f.degrees,
        Parse,
        "expected {} bases",
        f.degrees
    );
    ensure!(
        f.boundaries.len() + 1 == f.degrees,
        Parse,
        "expected {} boundary matrices",
        f.degrees - 1
    );
    let ring: Ring = f.ring.parse()?;
    let mut diffs = vec![Matrix::zeros(0, f.bases[0].len())];
    for m in &f.boundaries {
        diffs.push(m.to_matrix()?);
    }
    FinChainComplex::new(ring, f.bases.clone(), diffs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomEntry {
    pub src: usize,
    pub tgt: usize,
    pub object: ObjectFile,
}

/// `m(a ⊗ b) = c` for `a` of dimension `p` in `hom(x,y)`, `b` of dimension
/// `q` in `hom(y,z)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionEntry {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    /// `[p, a, q, b, c]`
    pub table: Vec<[usize; 5]>,
}

/// A cubical category. Homs missing from `homs` are empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryFile {
    pub format_version: u32,
    pub kind: String,
    pub flavor: String,
    pub trunc: usize,
    pub objects: Vec<String>,
    pub homs: Vec<HomEntry>,
    pub units: Vec<usize>,
    pub composition: Vec<CompositionEntry>,
}

pub fn category_to_file(c: &CubicalCategory) -> CategoryFile {
    let n = c.object_count();
    let t = c.trunc();
    let mut homs = Vec::new();
    let mut composition = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if !c.hom(x, y).is_empty() {
                homs.push(HomEntry {
                    src: x,
                    tgt: y,
                    object: cubical_to_file(c.hom(x, y)),
                });
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let mut table = Vec::new();
                for p in 0..=t {
                    for q in 0..=t - p {
                        for a in 0..c.hom(x, y).count(p) {
                            for b in 0..c.hom(y, z).count(q) {
                                table.push([p, a, q, b, c.compose(x, y, z, (p, a), (q, b))]);
                            }
                        }
                    }
                }
                if !table.is_empty() {
                    composition.push(CompositionEntry { x, y, z, table });
                }
            }
        }
    }
    CategoryFile {
        format_version: FORMAT_VERSION,
        kind: "category".into(),
        flavor: c.flavor().short().into(),
        trunc: t,
        objects: c.objects().to_vec(),
        homs,
        units: (0..n).map(|x| c.unit(x)).collect(),
        composition,
    }
}

pub fn category_from_file(f: &CategoryFile) -> Result<CubicalCategory> {
    ensure!(
        f.format_version == FORMAT_VERSION,
        Parse,
        "unsupported format version {}",
        f.format_version
    );
    ensure!(
        f.kind == "category",
        Parse,
        "expected a category, found {:?}",
        f.kind
    );
    let flavor: Flavor = f.flavor.parse()?;
    let n = f.objects.len();
    let mut homs: Vec<Vec<TruncatedCubicalSet>> =
        vec![vec![Presheaf::empty(CubeSite::new(flavor), f.trunc); n]; n];
    let mut seen = HashSet::new();
    for h in &f.homs {
        ensure!(
            h.src < n && h.tgt < n,
            Parse,
            "hom ({},{}) names a missing object",
            h.src,
            h.tgt
        );
        ensure!(
            seen.insert((h.src, h.tgt)),
            Parse,
            "hom ({},{}) given twice",
            h.src,
            h.tgt
        );
        homs[h.src][h.tgt] = cubical_from_file(&h.object)?;
    }
    let quiver = CubicalQuiver::new(f.objects.clone(), homs)?;
    let mut table = std::collections::HashMap::new();
    for e in &f.composition {
        for &[p, a, q, b, c] in &e.table {
            ensure!(
                table.insert((e.x, e.y, e.z, p, a, q, b), c).is_none(),
                Parse,
                "composite of ({},{},{}) given twice",
                e.x,
                e.y,
                e.z
            );
        }
    }
    CubicalCategory::from_fn(quiver, f.units.clone(), |x, y, z, (p, a), (q, b)| {
        table.get(&(x, y, z, p, a, q, b)).copied().ok_or_else(|| {
            Error::Validation(format!(
                "composite of ({x},{y},{z}) on ({p},{a}) and ({q},{b}) is missing"
            ))
        })
    })
}

/// A dg category: per object triple the composition as one sparse matrix
/// per degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DgCategoryFile {
    pub format_version: u32,
    pub kind: String,
    pub objects: Vec<String>,
    pub homs: Vec<Vec<ComplexFile>>,
    pub composition: Vec<Vec<Vec<Vec<SparseMatrix>>>>,
    pub units: Vec<Vec<i64>>,
}

pub fn dg_category_to_file(d: &DgCategory) -> DgCategoryFile {
    DgCategoryFile {
        format_version: FORMAT_VERSION,
        kind: "dg-category".into(),
        objects: d.objects.clone(),
        homs: d
            .homs
            .iter()
            .map(|r| r.iter().map(complex_to_file).collect())
            .collect(),
        composition: d
            .composition
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| {
                        s.iter()
                            .map(|m| {
                                m.components()
                                    .iter()
                                    .map(SparseMatrix::from_matrix)
                                    .collect()
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect(),
        units: d.units.clone(),
    }
}

pub fn dg_category_from_file(f: &DgCategoryFile) -> Result<DgCategory> {
    ensure!(
        f.format_version == FORMAT_VERSION,
        Parse,
        "unsupported format version {}",
        f.format_version
    );
    ensure!(
        f.kind == "dg-category",
        Parse,
        "expected a dg category, found {:?}",
        f.kind
    );
    let homs = f
        .homs
        .iter()
        .map(|r| r.iter().map(complex_from_file).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let composition = f
        .composition
        .iter()
        .map(|r| {
            r.iter()
                .map(|s| {
                    s.iter()
                        .map(|m| {
                            Ok(ChainMap::new(
                                m.iter()
                                    .map(SparseMatrix::to_matrix)
                                    .collect::<Result<_>>()?,
                            ))
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    DgCategory::new(f.objects.clone(), homs, composition, f.units.clone())
}

/// Anything that can be stored in a file.
#[derive(Clone, Debug)]
pub enum Payload {
    Cubical(TruncatedCubicalSet),
    Simplicial(TruncatedSimplicialSet),
    Complex(FinChainComplex),
    Category(CubicalCategory),
    FinCategory(FinCategory),
    DgCategory(DgCategory),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Cubical(_) => "cubical",
            Payload::Simplicial(_) => "simplicial",
            Payload::Complex(_) => "complex",
            Payload::Category(_) => "category",
            Payload::FinCategory(_) => "fincategory",
            Payload::DgCategory(_) => "dg-category",
        }
    }

    /// Pretty JSON with a trailing newline; deterministic.
    pub fn to_json(&self) -> String {
        let v = match self {
            Payload::Cubical(x) => serde_json::to_value(cubical_to_file(x)),
            Payload::Simplicial(x) => serde_json::to_value(simplicial_to_file(x)),
            Payload::Complex(a) => serde_json::to_value(complex_to_file(a)),
            Payload::Category(c) => serde_json::to_value(category_to_file(c)),
            Payload::FinCategory(c) => serde_json::to_value(FinCategoryFile::new(c)),
            Payload::DgCategory(d) => serde_json::to_value(dg_category_to_file(d)),
        }
        .expect("file formats serialize");
        let mut s = serde_json::to_string_pretty(&v).expect("file formats serialize");
        s.push('\n');
        s
    }

    /// Parses any supported format, dispatching on `kind`, and validates.
    pub fn from_json(text: &str) -> Result<Payload> {
        let v: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let kind = v
            .get("kind")
            .and_then(|k| k.as_str())
            .ok_or_else(|| Error::Parse("missing kind".into()))?;
        let parse_err = |e: serde_json::Error| Error::Parse(e.to_string());
        Ok(match kind {
            "cubical" => Payload::Cubical(cubical_from_file(
                &serde_json::from_value(v).map_err(parse_err)?,
            )?),
            "simplicial" => Payload::Simplicial(simplicial_from_file(
                &serde_json::from_value(v).map_err(parse_err)?,
            )?),
            "complex" => Payload::Complex(complex_from_file(
                &serde_json::from_value(v).map_err(parse_err)?,
            )?),
            "category" => Payload::Category(category_from_file(
                &serde_json::from_value(v).map_err(parse_err)?,
            )?),
            "fincategory" => {
                let f: FinCategoryFile = serde_json::from_value(v).map_err(parse_err)?;
                ensure!(
                    f.format_version == FORMAT_VERSION,
                    Parse,
                    "unsupported format version {}",
                    f.format_version
                );
                Payload::FinCategory(FinCategory::new(
                    f.objects,
                    f.morphisms,
                    f.identities,
                    f.compose,
                )?)
            }
            "dg-category" => Payload::DgCategory(dg_category_from_file(
                &serde_json::from_value(v).map_err(parse_err)?,
            )?),
            other => bail!(Parse, "unknown kind {other:?}"),
        })
    }

    pub fn load(path: &Path) -> Result<Payload> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct FinCategoryFile {
    format_version: u32,
    kind: String,
    objects: Vec<String>,
    morphisms: Vec<(usize, usize, String)>,
    identities: Vec<usize>,
    compose: Vec<Vec<Option<usize>>>,
}

impl FinCategoryFile {
    fn new(c: &FinCategory) -> Self {
        FinCategoryFile {
            format_version: FORMAT_VERSION,
            kind: "fincategory".into(),
            objects: c.objects.clone(),
            morphisms: c.morphisms.clone(),
            identities: c.identities.clone(),
            compose: c.compose.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Binding {
    pub name: String,
    pub kind: String,
    pub file: PathBuf,
}

/// Named payload files. Paths are relative to the workspace file.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorkspaceFile {
    pub format_version: u32,
    pub bindings: Vec<Binding>,
}

/// A loaded workspace: every binding validated.
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub entries: BTreeMap<String, Payload>,
}

impl Workspace {
    pub fn load(path: &Path) -> Result<Workspace> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        let f: WorkspaceFile =
            serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
        ensure!(
            f.format_version == FORMAT_VERSION,
            Parse,
            "unsupported workspace version {}",
            f.format_version
        );
        let base = path.parent().unwrap_or(Path::new("."));
        let mut entries = BTreeMap::new();
        for b in &f.bindings {
            ensure!(
                !entries.contains_key(&b.name),
                Validation,
                "binding {} defined twice",
                b.name
            );
            let payload = Payload::load(&base.join(&b.file))?;
            ensure!(
                payload.kind() == b.kind,
                Validation,
                "binding {} declares kind {} but its file holds {}",
                b.name,
                b.kind,
                payload.kind()
            );
            entries.insert(b.name.clone(), payload);
        }
        Ok(Workspace { entries })
    }

    pub fn get(&self, name: &str) -> Option<&Payload> {
        self.entries.get(name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubical::{boundary, representable};
    use crate::presheaf::is_isomorphic;

    #[test]
    fn cubical_round_trip() {
        let (b, _) = boundary(Flavor::Connections, 2, 3).unwrap();
        let text = Payload::Cubical(b.clone()).to_json();
        let Payload::Cubical(back) = Payload::from_json(&text).unwrap() else {
            panic!()
        };
        assert_eq!(back, b);
        assert!(is_isomorphic(&back, &b, Default::default())
            .unwrap()
            .is_some());
        assert_eq!(Payload::Cubical(back).to_json(), text);
    }

    #[test]
    fn rejects_bad_files() {
        let x = representable(Flavor::Reduced, 1, 1).unwrap();
        let mut f = cubical_to_file(&x);
        f.actions.pop();
        assert!(matches!(cubical_from_file(&f), Err(Error::Validation(_))));
        let mut f = cubical_to_file(&x);
        f.actions[0].image = 99;
        assert!(cubical_from_file(&f).is_err());
        assert!(matches!(Payload::from_json("{"), Err(Error::Parse(_))));
    }

    #[test]
    fn category_round_trip() {
        let w = crate::enriched::w_category(2, 1).unwrap();
        let text = Payload::Category(w.clone()).to_json();
        let Payload::Category(back) = Payload::from_json(&text).unwrap() else {
            panic!()
        };
        assert_eq!(back, w);
    }
}
