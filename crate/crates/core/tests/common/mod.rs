//! Independent oracles. Nothing here goes through the crate's own
//! evaluation, normal forms or homology code.
#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use cubical_core::chain::{FinChainComplex, Matrix};
use cubical_core::{FinCategory, Flavor, Generator};

/// Applies one generator to a point of `{0,1}^n`, straight from the
/// coordinate formulas: faces insert a constant, degeneracies drop a
/// coordinate, connections replace two neighbours by their max.
pub fn apply_gen(g: Generator, x: &[bool]) -> Option<Vec<bool>> {
    let mut y = x.to_vec();
    match g {
        Generator::Face { eps, index } => {
            if index > y.len() {
                return None;
            }
            y.insert(index, eps);
        }
        Generator::Degen(i) => {
            if i >= y.len() {
                return None;
            }
            y.remove(i);
        }
        Generator::Conn(i) => {
            if i + 1 >= y.len() {
                return None;
            }
            let m = y[i] || y[i + 1];
            y.remove(i + 1);
            y[i] = m;
        }
    }
    Some(y)
}

pub fn points(n: usize) -> Vec<Vec<bool>> {
    (0..1u32 << n)
        .map(|v| (0..n).map(|k| v >> (n - 1 - k) & 1 == 1).collect())
        .collect()
}

/// Truth table of a word read outermost first, or `None` if it does not
/// compose on `{0,1}^src`.
pub fn eval_word(gens: &[Generator], src: usize) -> Option<Vec<Vec<bool>>> {
    points(src)
        .into_iter()
        .map(|p| gens.iter().rev().try_fold(p, |acc, &g| apply_gen(g, &acc)))
        .collect()
}

pub fn gens_on(flavor: Flavor, n: usize, max_dim: usize) -> Vec<Generator> {
    let mut out = Vec::new();
    if n < max_dim {
        for i in 0..=n {
            out.push(Generator::Face {
                eps: false,
                index: i,
            });
            out.push(Generator::Face {
                eps: true,
                index: i,
            });
        }
    }
    for i in 0..n {
        out.push(Generator::Degen(i));
    }
    if flavor == Flavor::Connections {
        for i in 0..n.saturating_sub(1) {
            out.push(Generator::Conn(i));
        }
    }
    out
}

/// `|hom(□^m, □^n)|`, by closing the identity of `□^m` under
/// post-composition with generators while staying in dimensions
/// `<= max(m, n) + 1`.
pub fn closure_hom_count(flavor: Flavor, m: usize, n: usize) -> usize {
    let bound = m.max(n) + 1;
    let start = points(m);
    let mut seen: HashSet<Vec<Vec<bool>>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(f) = queue.pop_front() {
        let dim = f[0].len();
        for g in gens_on(flavor, dim, bound) {
            let h: Vec<Vec<bool>> = f.iter().map(|p| apply_gen(g, p).unwrap()).collect();
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    seen.iter().filter(|f| f[0].len() == n).count()
}

/// Rank of an integer matrix reduced mod `p`, by plain row reduction.
pub fn rank_mod(m: &Matrix, p: i64) -> usize {
    let mut a: Vec<Vec<i64>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).rem_euclid(p)).collect())
        .collect();
    let mut rank = 0;
    for col in 0..m.cols() {
        let Some(piv) = (rank..a.len()).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = pow_mod(a[rank][col], p - 2, p);
        for x in a[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..a.len() {
            if r != rank && a[r][col] != 0 {
                let f = a[r][col];
                for c in 0..a[r].len() {
                    a[r][c] = (a[r][c] - f * a[rank][c]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: i64, mut e: i64, p: i64) -> i64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Betti numbers of an integral complex over `F_p`.
pub fn betti_mod(a: &FinChainComplex, p: i64) -> Vec<usize> {
    let ranks: Vec<usize> = (0..=a.top() + 1)
        .map(|n| if n == 0 { 0 } else { rank_mod(&a.d(n), p) })
        .collect();
    (0..=a.top())
        .map(|n| a.rank(n) - ranks[n] - ranks.get(n + 1).copied().unwrap_or(0))
        .collect()
}

/// Integral Betti numbers, provided there is no torsion at small primes:
/// the ranks over a large prime agree with those over 2, 3, 5 and 7.
pub fn torsion_free_betti(a: &FinChainComplex) -> Option<Vec<usize>> {
    let big = betti_mod(a, 1_000_003);
    [2, 3, 5, 7]
        .iter()
        .all(|&p| betti_mod(a, p) == big)
        .then_some(big)
}

pub fn trim(mut v: Vec<usize>) -> Vec<usize> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Number of `k`-simplices of the classical nerve: composable strings of
/// `k` morphisms.
pub fn chain_count(c: &FinCategory, k: usize) -> usize {
    let objs = c.object_count();
    // ends[x] = number of strings of the current length ending at x
    let mut ends = vec![1usize; objs];
    for _ in 0..k {
        let mut next = vec![0; objs];
        for a in 0..objs {
            for b in 0..objs {
                next[b] += ends[a] * c.hom(a, b).len();
            }
        }
        ends = next;
    }
    ends.iter().sum()
}

/// Simplex counts of the nerve of a linearized category over `F_q`, up to
/// dimension 2: a vertex is an object, an edge a vector of a hom space, and
/// a 2-simplex a pair of composable vectors (its long edge and its filler are
/// forced because the homs sit in degree 0).
pub fn linear_nerve_counts(c: &FinCategory, q: usize) -> [usize; 3] {
    let objs = c.object_count();
    let h = |a: usize, b: usize| q.pow(c.hom(a, b).len() as u32);
    let edges = (0..objs)
        .flat_map(|a| (0..objs).map(move |b| (a, b)))
        .map(|(a, b)| h(a, b))
        .sum();
    let mut tri = 0;
    for x in 0..objs {
        let into: usize = (0..objs).map(|a| h(a, x)).sum();
        let out: usize = (0..objs).map(|b| h(x, b)).sum();
        tri += into * out;
    }
    [objs, edges, tri]
}
