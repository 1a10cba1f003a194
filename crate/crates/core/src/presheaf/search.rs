//! Exhaustive search for presheaf maps.
//!
//! A map out of `X` is determined by the images of its nondegenerate cells.
//! The search assigns those images from the top dimension down and
//! propagates every assignment along all generator actions, so faces and
//! degeneracies of an assigned cell are forced. Conflicts prune the branch.

use crate::error::{bail, ensure, Result};
use crate::site::Site;

use super::{Presheaf, PresheafMap};

/// Bounds on the exhaustive searches.
#[derive(Clone, Copy, Debug)]
pub struct SearchLimits {
    /// Maximum number of maps returned by [`hom_maps`].
    pub max_results: usize,
    /// Maximum number of branching nodes visited.
    pub max_nodes: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_results: 1_000_000,
            max_nodes: 50_000_000,
        }
    }
}

const UNSET: usize = usize::MAX;

struct Search<'a, S: Site> {
    x: &'a Presheaf<S>,
    y: &'a Presheaf<S>,
    /// Per dimension: (x-table, y-table, target dimension) of each action.
    moves: Vec<Vec<(&'a [usize], &'a [usize], usize)>>,
    assign: Vec<Vec<usize>>,
    inverse: Option<Vec<Vec<usize>>>,
    trail: Vec<(usize, usize)>,
    order: Vec<(usize, usize)>,
    candidates: Vec<Vec<usize>>,
    nodes: u64,
    limits: SearchLimits,
}

impl<'a, S: Site> Search<'a, S> {
    fn new(x: &'a Presheaf<S>, y: &'a Presheaf<S>, injective: bool, limits: SearchLimits) -> Self {
        let trunc = x.trunc();
        let moves = (0..=trunc)
            .map(|n| {
                x.actions_from(n)
                    .map(|(g, t)| (t, y.table(g), g.src))
                    .collect()
            })
            .collect();
        let assign = (0..=trunc).map(|n| vec![UNSET; x.count(n)]).collect();
        let inverse = injective.then(|| (0..=trunc).map(|n| vec![UNSET; y.count(n)]).collect());
        let mut order = Vec::new();
        for n in (0..=trunc).rev() {
            for c in x.nondegenerate(n) {
                order.push((n, c));
            }
        }
        let candidates = (0..=trunc)
            .map(|n| {
                if injective {
                    y.nondegenerate(n)
                } else {
                    (0..y.count(n)).collect()
                }
            })
            .collect();
        Search {
            x,
            y,
            moves,
            assign,
            inverse,
            trail: Vec::new(),
            order,
            candidates,
            nodes: 0,
            limits,
        }
    }

    fn set(&mut self, n: usize, c: usize, v: usize) -> bool {
        if let Some(inv) = &mut self.inverse {
            if inv[n][v] != UNSET {
                return false;
            }
            inv[n][v] = c;
        }
        self.assign[n][c] = v;
        self.trail.push((n, c));
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (n, c) = self.trail.pop().unwrap();
            let v = self.assign[n][c];
            if let Some(inv) = &mut self.inverse {
                inv[n][v] = UNSET;
            }
            self.assign[n][c] = UNSET;
        }
    }

    /// Assigns `c -> v` in dimension `n` and propagates; false on conflict.
    fn assign_and_propagate(&mut self, n: usize, c: usize, v: usize) -> bool {
        if !self.set(n, c, v) {
            return false;
        }
        let mut stack = vec![(n, c)];
        while let Some((dim, cell)) = stack.pop() {
            let image = self.assign[dim][cell];
            for k in 0..self.moves[dim].len() {
                let (xt, yt, to) = self.moves[dim][k];
                let (c2, v2) = (xt[cell], yt[image]);
                match self.assign[to][c2] {
                    UNSET => {
                        if !self.set(to, c2, v2) {
                            return false;
                        }
                        stack.push((to, c2));
                    }
                    w if w != v2 => return false,
                    _ => {}
                }
            }
        }
        true
    }

    fn next_branch(&self) -> Option<(usize, usize)> {
        if let Some(&p) = self
            .order
            .iter()
            .find(|&&(n, c)| self.assign[n][c] == UNSET)
        {
            return Some(p);
        }
        (0..=self.x.trunc()).rev().find_map(|n| {
            self.assign[n]
                .iter()
                .position(|&v| v == UNSET)
                .map(|c| (n, c))
        })
    }

    fn run(&mut self, found: &mut Vec<PresheafMap>, stop_at_first: bool) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.limits.max_nodes {
            bail!(Guard, "map search exceeded {} nodes", self.limits.max_nodes);
        }
        let Some((n, c)) = self.next_branch() else {
            found.push(PresheafMap::new(self.assign.clone()));
            if found.len() > self.limits.max_results {
                bail!(Guard, "more than {} maps", self.limits.max_results);
            }
            return Ok(());
        };
        let cands = if self.inverse.is_some() && self.order.iter().all(|&p| p != (n, c)) {
            (0..self.y.count(n)).collect()
        } else {
            self.candidates[n].clone()
        };
        for v in cands {
            let mark = self.trail.len();
            if self.assign_and_propagate(n, c, v) {
                self.run(found, stop_at_first)?;
                if stop_at_first && !found.is_empty() {
                    return Ok(());
                }
            }
            self.undo(mark);
        }
        Ok(())
    }
}

/// Every map `X -> Y`, in lexicographic order of the images of the
/// nondegenerate cells of `X` (top dimension first).
pub fn hom_maps<S: Site>(
    x: &Presheaf<S>,
    y: &Presheaf<S>,
    limits: SearchLimits,
) -> Result<Vec<PresheafMap>> {
    ensure!(
        x.site() == y.site(),
        Validation,
        "maps must stay within one site"
    );
    ensure!(
        x.trunc() <= y.trunc(),
        Dimension,
        "source truncation {} exceeds target truncation {}",
        x.trunc(),
        y.trunc()
    );
    let mut search = Search::new(x, y, false, limits);
    let mut found = Vec::new();
    search.run(&mut found, false)?;
    if cfg!(debug_assertions) {
        for f in &found {
            f.check(x, y)?;
        }
    }
    Ok(found)
}

/// Searches for an isomorphism `X -> Y`.
pub fn is_isomorphic<S: Site>(
    x: &Presheaf<S>,
    y: &Presheaf<S>,
    limits: SearchLimits,
) -> Result<Option<PresheafMap>> {
    ensure!(
        x.site() == y.site(),
        Validation,
        "isomorphism test needs one site"
    );
    if x.trunc() != y.trunc() || x.counts() != y.counts() {
        return Ok(None);
    }
    if x.nondegenerate_counts() != y.nondegenerate_counts() {
        return Ok(None);
    }
    let mut search = Search::new(x, y, true, limits);
    let mut found = Vec::new();
    search.run(&mut found, true)?;
    let iso = found.pop();
    if let Some(f) = &iso {
        f.check(x, y)?;
        ensure!(
            f.is_iso_onto(y.counts()),
            Validation,
            "search returned a non-bijective map"
        );
    }
    Ok(iso)
}
