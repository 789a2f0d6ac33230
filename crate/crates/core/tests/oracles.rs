//! Library results against the dense oracles in `common`.

mod common;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ybx_core::braidshuffle::nichols_dims;
use ybx_core::complex::{
    full_boundary_matrix, homology_of, tuple_index, Cochain, CoefficientSystem, ComplexVariant,
};
use ybx_core::cup::cup;
use ybx_core::exactlin::ExactMatrix;
use ybx_core::solution::STANDARD_BUILTINS;
use ybx_core::{Ring, Solution};

fn as_pairs(h: &ybx_core::exactlin::HomologyResult) -> Vec<(usize, Vec<i128>)> {
    h.degrees
        .iter()
        .map(|d| (d.free_rank, d.torsion.iter().map(|t| i128::try_from(t).unwrap()).collect()))
        .collect()
}

#[test]
fn dihedral_quandle_homology_matches_dense_smith() {
    for n in 3..=5 {
        let op = common::dihedral_op(n);
        let sol = Solution::from_rack(&op).unwrap();
        let h = homology_of(&sol, &CoefficientSystem::Trivial, &ComplexVariant::FixPairs, Ring::Integers, 3).unwrap();
        assert_eq!(as_pairs(&h), common::quandle_homology(&op, 3), "R{n}");
    }
}

#[test]
fn full_rack_homology_matches_dense_smith() {
    // a rack that is not a quandle: x◁y = x+1 mod 3
    let shift: Vec<Vec<usize>> = (0..3).map(|x| vec![(x + 1) % 3; 3]).collect();
    for op in [common::dihedral_op(3), shift] {
        let n = op.len();
        let sol = Solution::from_rack(&op).unwrap();
        let matrix = |k: usize| -> Vec<Vec<i128>> {
            let rows = common::all_tuples(n, k - 1);
            let cols = common::all_tuples(n, k);
            let mut m = vec![vec![0i128; cols.len()]; rows.len()];
            for (j, c) in cols.iter().enumerate() {
                for (t, v) in common::rack_boundary(&op, c) {
                    m[tuple_index(n, &t)][j] += v;
                }
            }
            m
        };
        let inv: Vec<Vec<i128>> =
            (0..=4).map(|k| if k == 0 { vec![] } else { common::smith_invariants(matrix(k)) }).collect();
        let oracle: Vec<(usize, Vec<i128>)> = (0..=3)
            .map(|k| {
                let free = n.pow(k as u32) - inv[k].len() - inv[k + 1].len();
                (free, inv[k + 1].iter().copied().filter(|&d| d > 1).collect())
            })
            .collect();
        let h = homology_of(&sol, &CoefficientSystem::Trivial, &ComplexVariant::Full, Ring::Integers, 3).unwrap();
        assert_eq!(as_pairs(&h), oracle);
    }
}

/// Twisted rack boundary: the deleted-entry face carries `t`, the acted face does not.
#[test]
fn twisted_boundary_matches_rack_formula() {
    let zt = Ring::IntPolys;
    let coeff = CoefficientSystem::Twisted(zt.variable().unwrap());
    for op in [common::dihedral_op(3), common::dihedral_op(4)] {
        let n = op.len();
        let sol = Solution::from_rack(&op).unwrap();
        for k in 1..=4 {
            let m = full_boundary_matrix(&sol, &coeff, zt, k);
            for t in [2i64, -3] {
                let mut expected = vec![vec![0i128; n.pow(k as u32)]; n.pow(k as u32 - 1)];
                for (j, c) in common::all_tuples(n, k).iter().enumerate() {
                    for i in 0..k {
                        let s: i128 = if i % 2 == 0 { 1 } else { -1 };
                        let mut a = c.clone();
                        a.remove(i);
                        let mut b: Vec<usize> = (0..i).map(|j| op[c[j]][c[i]]).collect();
                        b.extend_from_slice(&c[i + 1..]);
                        expected[tuple_index(n, &a)][j] += s * t as i128;
                        expected[tuple_index(n, &b)][j] -= s;
                    }
                }
                let tb = BigInt::from(t);
                for (r, row) in expected.iter().enumerate() {
                    for (c, &v) in row.iter().enumerate() {
                        let got = m.get(r, c).specialize(&tb).to_bigint().unwrap();
                        assert_eq!(got, BigInt::from(v), "n={n} k={k} t={t} at ({r},{c})");
                    }
                }
            }
        }
    }
}

#[test]
fn smith_form_agrees_with_textbook_algorithm() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let (r, c) = (rng.gen_range(1..7), rng.gen_range(1..7));
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-6..=6)).collect()).collect();
        let ours: Vec<BigInt> = ExactMatrix::from_rows_i64(Ring::Integers, &rows)
            .smith_normal_form()
            .unwrap()
            .into_iter()
            .filter(|d| *d != BigInt::from(0))
            .collect();
        let oracle: Vec<BigInt> = common::smith_invariants(
            rows.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect(),
        )
        .into_iter()
        .map(BigInt::from)
        .collect();
        assert_eq!(ours, oracle, "{rows:?}");
    }
}

#[test]
fn degree_one_cup_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let ring = Ring::Integers;
    for name in STANDARD_BUILTINS {
        let sol = Solution::builtin(name).unwrap();
        let n = sol.n();
        for _ in 0..10 {
            let fv: Vec<i64> = (0..n).map(|_| rng.gen_range(-5..=5)).collect();
            let gv: Vec<i64> = (0..n).map(|_| rng.gen_range(-5..=5)).collect();
            let f = Cochain::from_fn(n, 1, ring, |t| ring.from_i64(fv[t[0]]));
            let g = Cochain::from_fn(n, 1, ring, |t| ring.from_i64(gv[t[0]]));
            let p = cup(&f, &g, &sol).unwrap();
            for x in 0..n {
                for y in 0..n {
                    let (z, t) = sol.sigma(x, y);
                    let expected = fv[t] * gv[z] - fv[y] * gv[x];
                    assert_eq!(p.get(&[x, y]), ring.from_i64(expected), "{name} ({x},{y})");
                }
            }
        }
    }
}

#[test]
fn nichols_dimensions_of_flip_and_identity() {
    for n in 2..=4 {
        let flip: Vec<usize> = nichols_dims(&Solution::flip(n), n + 1, Ring::Rationals)
            .unwrap()
            .iter()
            .map(|d| d.dim)
            .collect();
        assert_eq!(flip, (0..=n + 1).map(|k| common::binomial(n, k)).collect::<Vec<_>>());
        // −id: the degree-2 symmetrizer vanishes
        let id: Vec<usize> = nichols_dims(&Solution::builtin(&format!("id_{n}")).unwrap(), 3, Ring::Rationals)
            .unwrap()
            .iter()
            .map(|d| d.dim)
            .collect();
        assert_eq!(id, vec![1, n, 0, 0]);
    }
}
