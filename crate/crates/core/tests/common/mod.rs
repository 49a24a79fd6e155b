//! Brute-force oracles shared by the integration tests. None of these call
//! into the elimination or lattice code they are used to check.

#![allow(dead_code)]

use std::collections::BTreeSet;

use formality::linalg::{int, Scalar};
use formality::{Arrangement, Graph, Matrix};
use num_traits::{One, Zero};

/// Determinant by cofactor expansion along the first row.
pub fn det(m: &[Vec<Scalar>]) -> Scalar {
    let n = m.len();
    if n == 0 {
        return Scalar::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut total = Scalar::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Scalar>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Rank as the size of the largest nonvanishing minor.
pub fn minor_rank(m: &Matrix) -> usize {
    let (r, c) = (m.rows(), m.cols());
    for k in (1..=r.min(c)).rev() {
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                let sub: Vec<Vec<Scalar>> = rows
                    .iter()
                    .map(|&i| cols.iter().map(|&j| m[(i, j)].clone()).collect())
                    .collect();
                if !det(&sub).is_zero() {
                    return k;
                }
            }
        }
    }
    0
}

/// All set partitions of `0..n` as block-label vectors (restricted growth
/// strings).
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..=max {
            cur.push(b);
            go(i + 1, n, if b == max { max + 1 } else { max }, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
    } else {
        go(0, n, 0, &mut Vec::new(), &mut out);
    }
    out
}

/// Cliques of every size found by testing every vertex subset.
pub fn brute_force_clique_counts(g: &Graph) -> Vec<usize> {
    let n = g.num_vertices();
    let mut counts = vec![0usize; n];
    for mask in 1u32..(1 << n) {
        let vs: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).map(|i| i + 1).collect();
        let complete = vs
            .iter()
            .enumerate()
            .all(|(a, &u)| vs[a + 1..].iter().all(|&v| g.has_edge(u, v)));
        if complete {
            counts[vs.len() - 1] += 1;
        }
    }
    while counts.last() == Some(&0) {
        counts.pop();
    }
    counts
}

/// Vertex-edge boundary of a cycle `1-2-...-m-1`, written out directly:
/// edge `[i, j]` maps to `[j] - [i]`.
pub fn cycle_boundary(m: usize) -> Matrix {
    let mut edges: Vec<(usize, usize)> = (1..=m).map(|i| (i.min(i % m + 1), i.max(i % m + 1))).collect();
    edges.sort();
    let mut out = Matrix::zeros(m, m);
    for (c, &(i, j)) in edges.iter().enumerate() {
        out[(i - 1, c)] = int(-1);
        out[(j - 1, c)] = int(1);
    }
    out
}

/// Whether `v` is in the span of `basis` (all length `n`), by checking that
/// appending it does not increase the largest nonvanishing minor.
pub fn in_span_by_minors(basis: &[Vec<Scalar>], v: &[Scalar]) -> bool {
    let n = v.len();
    let m0 = Matrix::from_columns(n, basis);
    let mut with = basis.to_vec();
    with.push(v.to_vec());
    minor_rank(&Matrix::from_columns(n, &with)) == minor_rank(&m0)
}

pub fn forms(rows: &[&[i64]]) -> Vec<Vec<Scalar>> {
    rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
}

pub fn arrangement(dim: usize, rows: &[&[i64]]) -> Arrangement {
    Arrangement::new(dim, &forms(rows)).unwrap()
}

/// Connected components counted by repeated search.
pub fn components(g: &Graph) -> usize {
    let n = g.num_vertices();
    let mut seen = BTreeSet::new();
    let mut count = 0;
    for s in 1..=n {
        if seen.insert(s) {
            count += 1;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for v in 1..=n {
                    if g.has_edge(u, v) && seen.insert(v) {
                        stack.push(v);
                    }
                }
            }
        }
    }
    count
}
