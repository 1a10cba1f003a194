//! Finite truncated presheaves on a [`Site`].
//!
//! A presheaf is stored levelwise up to a truncation bound `N`: the cells of
//! dimension `n` are `0..count(n)`, and every generator `g: a -> b` with
//! `a, b <= N` carries its action `X(b) -> X(a)` as a lookup table. The
//! skeleton bound `M <= N` records that every cell above dimension `M` is
//! degenerate, which is what makes the truncation a faithful description.

mod colimit;
mod map;
mod search;

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{bail, ensure, Result};
use crate::site::{Gen, Site};

pub use colimit::{coproduct, pushout, Coproduct, Pushout};
pub use map::PresheafMap;
pub use search::{hom_maps, is_isomorphic, SearchLimits};

#[derive(Clone, Debug)]
pub struct Presheaf<S: Site> {
    site: S,
    trunc: usize,
    skeleton: usize,
    counts: Vec<usize>,
    gens: Arc<Vec<Gen>>,
    /// Action tables, parallel to `gens`.
    actions: Vec<Vec<usize>>,
    gen_pos: Arc<HashMap<Gen, usize>>,
    labels: Option<Vec<Vec<String>>>,
}

impl<S: Site> Presheaf<S> {
    /// Builds a presheaf from cell counts and a function giving the action of
    /// each generator on each cell, then validates it.
    pub fn from_fn(
        site: S,
        trunc: usize,
        skeleton: usize,
        counts: Vec<usize>,
        mut act: impl FnMut(Gen, usize) -> usize,
    ) -> Result<Self> {
        let x = Self::from_fn_unchecked(site, trunc, skeleton, counts, &mut act)?;
        x.validate()?;
        Ok(x)
    }

    /// As [`Presheaf::from_fn`] without the relation check; the shape of the
    /// tables is still verified.
    pub(crate) fn from_fn_unchecked(
        site: S,
        trunc: usize,
        skeleton: usize,
        counts: Vec<usize>,
        mut act: impl FnMut(Gen, usize) -> usize,
    ) -> Result<Self> {
        ensure!(
            counts.len() == trunc + 1,
            Validation,
            "expected cell counts for dimensions 0..={trunc}, got {}",
            counts.len()
        );
        ensure!(
            skeleton <= trunc,
            Validation,
            "skeleton {skeleton} above truncation {trunc}"
        );
        let gens = Arc::new(site.generators(trunc));
        let gen_pos = Arc::new(gens.iter().enumerate().map(|(k, &g)| (g, k)).collect());
        let mut actions = Vec::with_capacity(gens.len());
        for &g in gens.iter() {
            let table: Vec<usize> = (0..counts[g.tgt()]).map(|x| act(g, x)).collect();
            if let Some(bad) = table.iter().find(|&&y| y >= counts[g.src]) {
                bail!(Validation, "action of {g} lands on missing cell {bad}");
            }
            actions.push(table);
        }
        Ok(Presheaf {
            site,
            trunc,
            skeleton,
            counts,
            gens,
            actions,
            gen_pos,
            labels: None,
        })
    }

    pub fn empty(site: S, trunc: usize) -> Self {
        Self::from_fn_unchecked(site, trunc, 0, vec![0; trunc + 1], |_, _| unreachable!())
            .expect("empty presheaf is well formed")
    }

    pub fn with_labels(mut self, labels: Vec<Vec<String>>) -> Self {
        debug_assert!(labels.iter().map(Vec::len).eq(self.counts.iter().copied()));
        self.labels = Some(labels);
        self
    }

    pub fn site(&self) -> &S {
        &self.site
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn skeleton(&self) -> usize {
        self.skeleton
    }

    pub(crate) fn set_skeleton(&mut self, m: usize) {
        self.skeleton = m.min(self.trunc);
    }

    pub fn count(&self, n: usize) -> usize {
        self.counts.get(n).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn total_cells(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.total_cells() == 0
    }

    pub fn generators(&self) -> &[Gen] {
        &self.gens
    }

    pub fn label(&self, n: usize, x: usize) -> String {
        match &self.labels {
            Some(l) => l[n][x].clone(),
            None => format!("c{n}_{x}"),
        }
    }

    pub fn labels(&self) -> Option<&Vec<Vec<String>>> {
        self.labels.as_ref()
    }

    /// The action table of a generator (cells of `g.tgt()` to cells of `g.src`).
    pub fn table(&self, g: Gen) -> &[usize] {
        &self.actions[self.gen_pos[&g]]
    }

    pub fn act(&self, g: Gen, x: usize) -> usize {
        self.table(g)[x]
    }

    /// Action of an arbitrary morphism `f: m -> n` on a cell of dimension `n`.
    pub fn act_mor(&self, f: &S::Mor, x: usize) -> usize {
        self.site
            .factor(f)
            .into_iter()
            .fold(x, |y, g| self.act(g, y))
    }

    /// Pairs `(generator, table)` whose action starts from dimension `n`.
    pub fn actions_from(&self, n: usize) -> impl Iterator<Item = (Gen, &[usize])> + '_ {
        self.gens
            .iter()
            .zip(&self.actions)
            .filter(move |(g, _)| g.tgt() == n)
            .map(|(&g, t)| (g, t.as_slice()))
    }

    /// Cells of dimension `n` not in the image of any degenerating action.
    pub fn nondegenerate(&self, n: usize) -> Vec<usize> {
        let mut degenerate = vec![false; self.count(n)];
        for (g, t) in self.gens.iter().zip(&self.actions) {
            if g.src == n && g.is_degenerating() {
                for &y in t {
                    degenerate[y] = true;
                }
            }
        }
        (0..self.count(n)).filter(|&x| !degenerate[x]).collect()
    }

    pub fn nondegenerate_counts(&self) -> Vec<usize> {
        (0..=self.trunc)
            .map(|n| self.nondegenerate(n).len())
            .collect()
    }

    /// Checks every relation between generators and the skeleton bound.
    ///
    /// Relations are taken semantically: any two composable words of length
    /// at most two with the same composite must act identically. Every
    /// defining relation of the supported sites has this shape.
    pub fn validate(&self) -> Result<()> {
        let n_max = self.trunc;
        // Words of length <= 2 grouped by composite; values are
        // (outer, inner) with `None` meaning the identity.
        let mut groups: HashMap<S::Mor, Vec<(Option<Gen>, Option<Gen>)>> = HashMap::new();
        for &g in self.gens.iter() {
            groups
                .entry(self.site.gen_mor(g))
                .or_default()
                .push((Some(g), None));
            for &h in self.gens.iter().filter(|h| h.tgt() == g.src) {
                let mor = self
                    .site
                    .compose(&self.site.gen_mor(g), &self.site.gen_mor(h));
                groups.entry(mor).or_default().push((Some(g), Some(h)));
            }
        }
        for (mor, words) in &groups {
            let n = self.site.mor_tgt(mor);
            let is_id = *mor == self.site.identity(n);
            for x in 0..self.count(n) {
                let eval = |w: &(Option<Gen>, Option<Gen>)| {
                    let mut y = x;
                    if let Some(g) = w.0 {
                        y = self.act(g, y);
                    }
                    if let Some(h) = w.1 {
                        y = self.act(h, y);
                    }
                    y
                };
                let first = if is_id { x } else { eval(&words[0]) };
                for w in words {
                    if eval(w) != first {
                        bail!(
                            Validation,
                            "relation failure at cell {} of dimension {n}: {:?} vs {:?}",
                            self.label(n, x),
                            words[0],
                            w
                        );
                    }
                }
            }
        }
        for n in self.skeleton + 1..=n_max {
            if let Some(&x) = self.nondegenerate(n).first() {
                bail!(
                    Validation,
                    "cell {} of dimension {n} is nondegenerate above the skeleton {}",
                    self.label(n, x),
                    self.skeleton
                );
            }
        }
        Ok(())
    }

    /// Checks functoriality against every morphism of the site up to the
    /// truncation: the action of `f ∘ g` is the action of `g` after that of
    /// `f`, for every generator `g`. Exhaustive and slower than
    /// [`Presheaf::validate`].
    pub fn validate_functorial(&self) -> Result<()> {
        for n in 0..=self.trunc {
            for m in 0..=self.trunc {
                let homs = self.site.homs(m, n);
                for f in &homs.maps {
                    for &g in self.gens.iter().filter(|g| g.tgt() == m) {
                        let fg = self.site.compose(f, &self.site.gen_mor(g));
                        for x in 0..self.count(n) {
                            let lhs = self.act_mor(&fg, x);
                            let rhs = self.act(g, self.act_mor(f, x));
                            ensure!(
                                lhs == rhs,
                                Validation,
                                "functoriality failure for {:?} and {g} at cell {x}",
                                f
                            );
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// For every cell above dimension `m`, a degenerating generator `g` and a
    /// cell `z` with `X(g)(z)` equal to it. Indexed by `d - m - 1`, then cell.
    /// Panics if some cell above `m` is nondegenerate.
    pub(crate) fn degeneracy_witnesses(&self, m: usize) -> Vec<Vec<(Gen, usize)>> {
        (m + 1..=self.trunc)
            .map(|d| {
                let mut w = vec![None; self.count(d)];
                for (g, table) in self.actions_from(d - 1) {
                    if g.is_degenerating() && g.src == d {
                        for (z, &y) in table.iter().enumerate() {
                            w[y].get_or_insert((g, z));
                        }
                    }
                }
                w.into_iter()
                    .map(|o| o.expect("cells above the skeleton are degenerate"))
                    .collect()
            })
            .collect()
    }

    /// Smallest `M` such that every cell above `M` is degenerate.
    pub fn computed_skeleton(&self) -> usize {
        (0..=self.trunc)
            .rev()
            .find(|&n| !self.nondegenerate(n).is_empty())
            .unwrap_or(0)
    }

    /// Keeps only dimensions `<= n`.
    pub fn truncate(&self, n: usize) -> Result<Self> {
        ensure!(
            n <= self.trunc,
            Dimension,
            "cannot truncate at {n} above {}",
            self.trunc
        );
        let mut y = Self::from_fn_unchecked(
            self.site.clone(),
            n,
            self.skeleton.min(n),
            self.counts[..=n].to_vec(),
            |g, x| self.act(g, x),
        )?;
        if let Some(l) = &self.labels {
            y.labels = Some(l[..=n].to_vec());
        }
        Ok(y)
    }
}

impl<S: Site> PartialEq for Presheaf<S> {
    /// Equality of the stored data; use [`is_isomorphic`] for isomorphism.
    fn eq(&self, other: &Self) -> bool {
        self.site == other.site
            && self.trunc == other.trunc
            && self.skeleton == other.skeleton
            && self.counts == other.counts
            && self.gens == other.gens
            && self.actions == other.actions
    }
}

/// The representable presheaf on `n`, truncated at `trunc`. Cells of
/// dimension `m` are the morphisms `m -> n`; actions are precomposition.
pub fn representable<S: Site>(site: &S, n: usize, trunc: usize) -> Result<Presheaf<S>> {
    ensure!(
        n <= trunc,
        Dimension,
        "representable on {n} needs truncation >= {n}"
    );
    let homs: Vec<_> = (0..=trunc).map(|m| site.homs(m, n)).collect();
    let counts = homs.iter().map(|h| h.len()).collect();
    let x = Presheaf::from_fn_unchecked(site.clone(), trunc, n, counts, |g, x| {
        let f = &homs[g.tgt()].maps[x];
        let fg = site.compose(f, &site.gen_mor(g));
        homs[g.src]
            .position(&fg)
            .expect("hom-sets are closed under composition")
    })?;
    let labels = homs
        .iter()
        .map(|h| h.maps.iter().map(|f| site.describe(f)).collect())
        .collect();
    Ok(x.with_labels(labels))
}

/// The smallest sub-presheaf of `x` containing the given `(dim, cell)`
/// pairs, with its inclusion.
pub fn generated_by<S: Site>(
    x: &Presheaf<S>,
    cells: &[(usize, usize)],
) -> Result<(Presheaf<S>, PresheafMap)> {
    let mut keep: Vec<Vec<bool>> = (0..=x.trunc()).map(|n| vec![false; x.count(n)]).collect();
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for &(n, c) in cells {
        ensure!(
            n <= x.trunc() && c < x.count(n),
            Validation,
            "no cell {c} in dimension {n}"
        );
        stack.push((n, c));
    }
    while let Some((n, c)) = stack.pop() {
        if std::mem::replace(&mut keep[n][c], true) {
            continue;
        }
        for g in x.generators().iter().filter(|g| g.tgt() == n) {
            let y = x.act(*g, c);
            if !keep[g.src][y] {
                stack.push((g.src, y));
            }
        }
    }
    subpresheaf(x, &keep)
}

/// The sub-presheaf of `x` on the cells marked in `keep`, together with its
/// inclusion. Fails if the marked cells are not closed under the actions.
pub fn subpresheaf<S: Site>(
    x: &Presheaf<S>,
    keep: &[Vec<bool>],
) -> Result<(Presheaf<S>, PresheafMap)> {
    let mut new_id: Vec<Vec<usize>> = Vec::new();
    let mut old_id: Vec<Vec<usize>> = Vec::new();
    for n in 0..=x.trunc() {
        let mut ids = vec![usize::MAX; x.count(n)];
        let mut olds = Vec::new();
        for c in 0..x.count(n) {
            if keep[n][c] {
                ids[c] = olds.len();
                olds.push(c);
            }
        }
        new_id.push(ids);
        old_id.push(olds);
    }
    let counts = old_id.iter().map(Vec::len).collect();
    let mut closed = true;
    let mut sub =
        Presheaf::from_fn_unchecked(x.site.clone(), x.trunc, x.skeleton, counts, |g, c| {
            let y = x.act(g, old_id[g.tgt()][c]);
            let id = new_id[g.src][y];
            if id == usize::MAX {
                closed = false;
                0
            } else {
                id
            }
        })?;
    ensure!(
        closed,
        Validation,
        "selected cells are not closed under the actions"
    );
    if let Some(l) = &x.labels {
        sub.labels = Some(
            old_id
                .iter()
                .enumerate()
                .map(|(n, ids)| ids.iter().map(|&c| l[n][c].clone()).collect())
                .collect(),
        );
    }
    let m = sub.computed_skeleton();
    sub.set_skeleton(m.min(x.skeleton));
    sub.validate()?;
    Ok((sub, PresheafMap::new(old_id)))
}
