//! Independent oracles for the integration suites. Nothing here calls into
//! the library's linear algebra or rewriting code.

#![allow(dead_code)]

use std::collections::HashMap;

/// All `k`-tuples over `0..n`.
pub fn all_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| (0..n).map(move |x| {
                let mut t = t.clone();
                t.push(x);
                t
            }))
            .collect();
    }
    out
}

/// Rack boundary with trivial coefficients, straight from the tuple formula:
/// `∂(x₁…x_k) = Σ (−1)^{i+1} [(…x̂_i…) − (x₁◁x_i, …, x_{i−1}◁x_i, x_{i+1}, …)]`.
pub fn rack_boundary(op: &[Vec<usize>], t: &[usize]) -> HashMap<Vec<usize>, i128> {
    let mut out = HashMap::new();
    for i in 0..t.len() {
        let s: i128 = if i % 2 == 0 { 1 } else { -1 };
        let mut a = t.to_vec();
        a.remove(i);
        let mut b: Vec<usize> = (0..i).map(|j| op[t[j]][t[i]]).collect();
        b.extend_from_slice(&t[i + 1..]);
        *out.entry(a).or_insert(0) += s;
        *out.entry(b).or_insert(0) -= s;
    }
    out
}

/// Quandle (normalized) boundary matrix: tuples with equal neighbours dropped.
pub fn quandle_matrix(op: &[Vec<usize>], k: usize) -> Vec<Vec<i128>> {
    let n = op.len();
    let nondeg = |t: &Vec<usize>| t.windows(2).all(|w| w[0] != w[1]);
    let rows: Vec<Vec<usize>> = all_tuples(n, k - 1).into_iter().filter(nondeg).collect();
    let cols: Vec<Vec<usize>> = all_tuples(n, k).into_iter().filter(nondeg).collect();
    let index: HashMap<&Vec<usize>, usize> = rows.iter().enumerate().map(|(i, r)| (r, i)).collect();
    let mut m = vec![vec![0i128; cols.len()]; rows.len()];
    for (j, c) in cols.iter().enumerate() {
        for (t, v) in rack_boundary(op, c) {
            if let Some(&i) = index.get(&t) {
                m[i][j] += v;
            }
        }
    }
    m
}

pub fn quandle_dim(n: usize, k: usize) -> usize {
    if k == 0 { 1 } else { n * (n - 1).pow(k as u32 - 1) }
}

/// Nonzero invariant factors by the textbook algorithm: pick the smallest
/// nonzero entry, clear its row and column by division with remainder,
/// repeat; then fix divisibility.
pub fn smith_invariants(mut a: Vec<Vec<i128>>) -> Vec<i128> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t];
            let mut dirty = false;
            for i in t + 1..rows {
                let q = a[i][t] / p;
                if q != 0 {
                    for j in t..cols {
                        a[i][j] -= q * a[t][j];
                    }
                }
                dirty |= a[i][t] != 0;
            }
            for j in t + 1..cols {
                let q = a[t][j] / p;
                if q != 0 {
                    for i in t..rows {
                        a[i][j] -= q * a[i][t];
                    }
                }
                dirty |= a[t][j] != 0;
            }
            if !dirty {
                // divisibility of the remaining block
                if let Some(i) = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0)) {
                    for j in t..cols {
                        a[t][j] += a[i][j];
                    }
                    continue;
                }
                break;
            }
            // move a smaller remainder to the pivot
            let mut best = (t, t);
            for i in t..rows {
                if a[i][t] != 0 && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if a[t][j] != 0 && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

/// `(free rank, torsion)` per degree `0..=max`, from dense boundaries.
pub fn quandle_homology(op: &[Vec<usize>], max: usize) -> Vec<(usize, Vec<i128>)> {
    let n = op.len();
    let invariants: Vec<Vec<i128>> = (0..=max + 1)
        .map(|k| if k == 0 { Vec::new() } else { smith_invariants(quandle_matrix(op, k)) })
        .collect();
    (0..=max)
        .map(|k| {
            let free = quandle_dim(n, k) - invariants[k].len() - invariants[k + 1].len();
            let torsion = invariants[k + 1].iter().copied().filter(|&d| d > 1).collect();
            (free, torsion)
        })
        .collect()
}

pub fn dihedral_op(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|x| (0..n).map(|y| (2 * y + n - x) % n).collect()).collect()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Discrete logarithm table of a cyclic `GF(p)*` for a given generator.
pub fn discrete_log(p: u64, generator: u64) -> HashMap<u64, u64> {
    let mut out = HashMap::new();
    let mut v = 1;
    for e in 0..p - 1 {
        out.insert(v, e);
        v = v * generator % p;
    }
    out
}
