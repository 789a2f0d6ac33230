//! Exact linear algebra: ranks over ℚ and GF(p), Smith normal form over ℤ,
//! and homology of finite chain complexes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::LinAlgError;
use crate::scalar::{Ring, Scalar};

/// Sparse matrix stored by columns; stored entries are nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    ring: Ring,
    data: Vec<BTreeMap<usize, Scalar>>,
}

impl ExactMatrix {
    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, ring, data: vec![BTreeMap::new(); cols] }
    }

    pub fn identity(ring: Ring, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_rows_i64(ring: Ring, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(ring, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, ring.from_i64(v));
            }
        }
        m
    }

    /// Columns given as sparse maps; zero entries are dropped.
    pub fn from_columns(ring: Ring, rows: usize, columns: Vec<BTreeMap<usize, Scalar>>) -> Self {
        let cols = columns.len();
        let data = columns
            .into_iter()
            .map(|c| {
                debug_assert!(c.keys().all(|&r| r < rows));
                c.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        ExactMatrix { rows, cols, ring, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.data[c].get(&r).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        if v.is_zero() {
            self.data[c].remove(&r);
        } else {
            self.data[c].insert(r, v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &Scalar) {
        let cur = self.get(r, c);
        self.set(r, c, &cur + v);
    }

    pub fn column(&self, c: usize) -> &BTreeMap<usize, Scalar> {
        &self.data[c]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_empty())
    }

    pub fn transpose(&self) -> Self {
        let mut data = vec![BTreeMap::new(); self.rows];
        for (c, col) in self.data.iter().enumerate() {
            for (&r, v) in col {
                data[r].insert(c, v.clone());
            }
        }
        ExactMatrix { rows: self.cols, cols: self.rows, ring: self.ring, data }
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix, LinAlgError> {
        if self.cols != other.rows {
            return Err(LinAlgError::DimensionMismatch(format!(
                "{}×{} times {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = other
            .data
            .par_iter()
            .map(|col| {
                let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
                for (&k, b) in col {
                    for (&r, a) in &self.data[k] {
                        let prod = a * b;
                        let e = acc.entry(r).or_insert_with(|| self.ring.zero());
                        *e = &*e + &prod;
                    }
                }
                acc.retain(|_, v| !v.is_zero());
                acc
            })
            .collect();
        Ok(ExactMatrix { rows: self.rows, cols: other.cols, ring: self.ring, data })
    }

    /// Applies `f` entrywise, landing in `ring`.
    pub fn map(&self, ring: Ring, f: impl Fn(&Scalar) -> Scalar) -> ExactMatrix {
        let data = self
            .data
            .iter()
            .map(|c| {
                c.iter()
                    .map(|(&r, v)| (r, f(v)))
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        ExactMatrix { rows: self.rows, cols: self.cols, ring, data }
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![self.ring.zero(); self.cols]; self.rows];
        for (c, col) in self.data.iter().enumerate() {
            for (&r, v) in col {
                out[r][c] = v.clone();
            }
        }
        out
    }

    /// Applies the matrix to a sparse vector.
    pub fn apply(&self, v: &BTreeMap<usize, Scalar>) -> BTreeMap<usize, Scalar> {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (&k, b) in v {
            for (&r, a) in &self.data[k] {
                let e = acc.entry(r).or_insert_with(|| self.ring.zero());
                *e = &*e + &(a * b);
            }
        }
        acc.retain(|_, v| !v.is_zero());
        acc
    }

    /// MatrixMarket coordinate text (1-based indices).
    pub fn to_matrix_market(&self) -> String {
        let field = match self.ring {
            Ring::Integers | Ring::PrimeField(_) => "integer",
            _ => "real",
        };
        let mut s = format!("%%MatrixMarket matrix coordinate {field} general\n% ring {}\n", self.ring);
        let _ = writeln!(s, "{} {} {}", self.rows, self.cols, self.nnz());
        for (c, col) in self.data.iter().enumerate() {
            for (&r, v) in col {
                let _ = writeln!(s, "{} {} {}", r + 1, c + 1, v);
            }
        }
        s
    }

    pub fn rank(&self) -> Result<usize, LinAlgError> {
        match self.ring {
            Ring::PrimeField(p) => Ok(rank_generic(&Fp(p), self)),
            Ring::Rationals => Ok(rank_generic(&Qf, self)),
            r => Err(LinAlgError::NotAField(r)),
        }
    }

    /// Basis of `{v : Av = 0}` over a field.
    pub fn nullspace(&self) -> Result<Vec<Vec<Scalar>>, LinAlgError> {
        match self.ring {
            Ring::PrimeField(p) => Ok(nullspace_generic(&Fp(p), self)),
            Ring::Rationals => Ok(nullspace_generic(&Qf, self)),
            r => Err(LinAlgError::NotAField(r)),
        }
    }

    /// Indices of a maximal independent set of columns (pivot columns),
    /// over a field.
    pub fn pivot_columns(&self) -> Result<Vec<usize>, LinAlgError> {
        match self.ring {
            Ring::PrimeField(p) => Ok(pivot_columns_generic(&Fp(p), self)),
            Ring::Rationals => Ok(pivot_columns_generic(&Qf, self)),
            r => Err(LinAlgError::NotAField(r)),
        }
    }

    /// Nonzero elementary divisors `d₁ | d₂ | …`, all positive.
    pub fn smith_normal_form(&self) -> Result<Vec<BigInt>, LinAlgError> {
        if self.ring != Ring::Integers {
            return Err(LinAlgError::NotIntegers(self.ring));
        }
        Ok(smith_divisors(self))
    }
}

// ---------------------------------------------------------------------------
// field elimination

trait FieldOps: Sync {
    type E: Clone + PartialEq + Send + Sync + std::fmt::Debug;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn from_scalar(&self, s: &Scalar) -> Self::E;
    fn to_scalar(&self, a: &Self::E) -> Scalar;
}

struct Fp(u64);

impl FieldOps for Fp {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.0 - b) % self.0
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.0 as u128) as u64
    }
    fn inv(&self, a: &u64) -> u64 {
        let mut base = *a as u128;
        let p = self.0 as u128;
        let mut e = self.0 - 2;
        let mut acc = 1u128;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc as u64
    }
    fn from_scalar(&self, s: &Scalar) -> u64 {
        match s {
            Scalar::Mod { value, .. } => *value,
            other => panic!("expected GF({}) scalar, got {}", self.0, other.ring()),
        }
    }
    fn to_scalar(&self, a: &u64) -> Scalar {
        Scalar::Mod { value: *a, modulus: self.0 }
    }
}

struct Qf;

impl FieldOps for Qf {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn from_scalar(&self, s: &Scalar) -> BigRational {
        match s {
            Scalar::Rat(v) => v.clone(),
            other => panic!("expected rational scalar, got {}", other.ring()),
        }
    }
    fn to_scalar(&self, a: &BigRational) -> Scalar {
        Scalar::Rat(a.clone())
    }
}

const DENSE_FILL: f64 = 0.3;

fn rank_generic<F: FieldOps>(f: &F, m: &ExactMatrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    let area = (m.rows * m.cols) as f64;
    if m.nnz() as f64 > DENSE_FILL * area {
        return dense_rank(f, m.rows, m.data.iter().map(|c| to_field_col(f, c)).collect());
    }
    // online echelon: each pivot vector is normalized and its pivot is its least row
    let mut pivots: BTreeMap<usize, BTreeMap<usize, F::E>> = BTreeMap::new();
    let mut stored = 0usize;
    for (j, col) in m.data.iter().enumerate() {
        let mut v = to_field_col(f, col);
        while let Some((&r, a)) = v.iter().next() {
            let Some(p) = pivots.get(&r) else { break };
            let a = a.clone();
            for (&k, b) in p {
                let e = v.entry(k).or_insert_with(|| f.zero());
                *e = f.sub(e, &f.mul(&a, b));
                if f.is_zero(e) {
                    v.remove(&k);
                }
            }
        }
        if let Some((&r, a)) = v.iter().next() {
            let inv = f.inv(a);
            let v: BTreeMap<usize, F::E> = v.iter().map(|(&k, b)| (k, f.mul(b, &inv))).collect();
            stored += v.len();
            pivots.insert(r, v);
        }
        if pivots.len() > 32 && stored as f64 > DENSE_FILL * (m.rows * pivots.len()) as f64 {
            let mut rest: Vec<BTreeMap<usize, F::E>> = pivots.into_values().collect();
            rest.extend(m.data[j + 1..].iter().map(|c| to_field_col(f, c)));
            return dense_rank(f, m.rows, rest);
        }
    }
    pivots.len()
}

fn to_field_col<F: FieldOps>(f: &F, col: &BTreeMap<usize, Scalar>) -> BTreeMap<usize, F::E> {
    col.iter().map(|(&r, v)| (r, f.from_scalar(v))).collect()
}

fn dense_rank<F: FieldOps>(f: &F, rows: usize, cols: Vec<BTreeMap<usize, F::E>>) -> usize {
    // rows of the transpose are the columns
    let mut a: Vec<Vec<F::E>> = cols
        .into_iter()
        .map(|c| {
            let mut row = vec![f.zero(); rows];
            for (r, v) in c {
                row[r] = v;
            }
            row
        })
        .collect();
    rref_in_place(f, &mut a).len()
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref_in_place<F: FieldOps>(f: &F, a: &mut [Vec<F::E>]) -> Vec<usize> {
    let nrows = a.len();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !f.is_zero(&a[i][c])) else { continue };
        a.swap(r, p);
        let inv = f.inv(&a[r][c]);
        for v in a[r].iter_mut() {
            *v = f.mul(v, &inv);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || f.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !f.is_zero(pv) {
                    *v = f.sub(v, &f.mul(&factor, pv));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn dense_field<F: FieldOps>(f: &F, m: &ExactMatrix) -> Vec<Vec<F::E>> {
    let mut a = vec![vec![f.zero(); m.cols]; m.rows];
    for (c, col) in m.data.iter().enumerate() {
        for (&r, v) in col {
            a[r][c] = f.from_scalar(v);
        }
    }
    a
}

fn nullspace_generic<F: FieldOps>(f: &F, m: &ExactMatrix) -> Vec<Vec<Scalar>> {
    let mut a = dense_field(f, m);
    let pivots = rref_in_place(f, &mut a);
    let pivot_set: BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|c| !pivot_set.contains(c)) {
        let mut v = vec![f.zero(); m.cols];
        v[free] = f.one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = f.sub(&f.zero(), &a[i][free]);
        }
        basis.push(v.iter().map(|x| f.to_scalar(x)).collect());
    }
    basis
}

fn pivot_columns_generic<F: FieldOps>(f: &F, m: &ExactMatrix) -> Vec<usize> {
    let mut a = dense_field(f, m);
    rref_in_place(f, &mut a)
}

// ---------------------------------------------------------------------------
// Smith normal form

fn smith_divisors(m: &ExactMatrix) -> Vec<BigInt> {
    let mut cols: Vec<BTreeMap<usize, BigInt>> = m
        .data
        .iter()
        .map(|c| c.iter().map(|(&r, v)| (r, v.to_bigint().unwrap())).collect())
        .collect();
    let mut row_index: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.rows];
    for (c, col) in cols.iter().enumerate() {
        for &r in col.keys() {
            row_index[r].insert(c);
        }
    }
    let mut alive_cols: BTreeSet<usize> = (0..m.cols).filter(|&c| !cols[c].is_empty()).collect();
    let mut divisors = Vec::new();

    // Phase 1: sparse elimination of unit pivots.
    loop {
        let mut best: Option<(usize, usize, usize)> = None; // (cost, row, col)
        for &c in &alive_cols {
            for (&r, v) in &cols[c] {
                if v.abs().is_one() {
                    let cost = (cols[c].len() - 1) * (row_index[r].len() - 1);
                    if best.is_none_or(|b| cost < b.0) {
                        best = Some((cost, r, c));
                    }
                }
            }
            if best.is_some_and(|b| b.0 == 0) {
                break;
            }
        }
        let Some((_, r, c)) = best else { break };
        let unit = cols[c][&r].clone();
        let pivot_col = cols[c].clone();
        let others: Vec<usize> = row_index[r].iter().copied().filter(|&j| j != c).collect();
        for j in others {
            // col_j -= (a_rj / u) col_c
            let factor = &cols[j][&r] * &unit;
            for (&k, v) in &pivot_col {
                let e = cols[j].entry(k).or_insert_with(BigInt::zero);
                *e -= &factor * v;
                if e.is_zero() {
                    cols[j].remove(&k);
                    row_index[k].remove(&j);
                } else {
                    row_index[k].insert(j);
                }
            }
            if cols[j].is_empty() {
                alive_cols.remove(&j);
            }
        }
        // row r now only meets column c; row operations clear column c
        for &k in pivot_col.keys() {
            row_index[k].remove(&c);
        }
        cols[c].clear();
        alive_cols.remove(&c);
        divisors.push(BigInt::one());
    }

    // Phase 2: dense elimination on what remains.
    let live_rows: Vec<usize> = (0..m.rows).filter(|&r| !row_index[r].is_empty()).collect();
    let live_cols: Vec<usize> = alive_cols.into_iter().collect();
    if !live_rows.is_empty() && !live_cols.is_empty() {
        let pos: BTreeMap<usize, usize> = live_rows.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let mut a = vec![vec![BigInt::zero(); live_cols.len()]; live_rows.len()];
        for (j, &c) in live_cols.iter().enumerate() {
            for (r, v) in &cols[c] {
                a[pos[r]][j] = v.clone();
            }
        }
        divisors.extend(dense_smith(a));
    }
    normalize_chain(divisors)
}

/// Diagonal entries (nonzero, positive) of a dense Smith reduction.
fn dense_smith(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let nr = a.len();
    let nc = a[0].len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nr.min(nc) {
        // least nonzero magnitude in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..nr {
            for j in t..nc {
                if !a[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
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
            let mut again = false;
            let p = a[t][t].clone();
            for i in t + 1..nr {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&p);
                let pivot_row = a[t].clone();
                for (v, pv) in a[i].iter_mut().zip(&pivot_row).skip(t) {
                    *v -= &q * pv;
                }
                again |= !a[i][t].is_zero();
            }
            for j in t + 1..nc {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&p);
                for row in a.iter_mut().skip(t) {
                    let pv = row[t].clone();
                    row[j] -= &q * &pv;
                }
                again |= !a[t][j].is_zero();
            }
            if !again {
                // pivot must divide the trailing block
                let bad = (t + 1..nr)
                    .flat_map(|i| (t + 1..nc).map(move |j| (i, j)))
                    .find(|&(i, j)| !a[i][j].is_multiple_of(&p));
                match bad {
                    None => break,
                    Some((i, _)) => {
                        let row_i = a[i].clone();
                        for (v, w) in a[t].iter_mut().zip(&row_i).skip(t) {
                            *v += w;
                        }
                    }
                }
            }
            // move the least remaining entry of row/column t to the pivot
            let mut best = (t, t);
            for i in t..nr {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..nc {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                a.swap(t, best.0);
            } else if best.1 != t {
                for row in a.iter_mut() {
                    row.swap(t, best.1);
                }
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

/// Rearranges nonzero diagonal entries into a divisibility chain.
fn normalize_chain(mut d: Vec<BigInt>) -> Vec<BigInt> {
    d.retain(|x| !x.is_zero());
    for x in d.iter_mut() {
        *x = x.abs();
    }
    let n = d.len();
    for i in 0..n {
        for j in i + 1..n {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

// ---------------------------------------------------------------------------
// homology

fn serialize_bigints<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        match x.to_u64() {
            Some(u) => seq.serialize_element(&u)?,
            None => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyDegree {
    pub degree: usize,
    /// Free rank over ℤ, or the dimension over a field.
    pub free_rank: usize,
    #[serde(serialize_with = "serialize_bigints")]
    pub torsion: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyResult {
    pub ring: Ring,
    pub degrees: Vec<HomologyDegree>,
}

impl HomologyResult {
    pub fn ranks(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.free_rank).collect()
    }

    pub fn truncate(&mut self, max_degree: usize) {
        self.degrees.truncate(max_degree + 1);
    }
}

/// Homology of `C_top → ⋯ → C_0` where `boundaries[k]` is `∂_{k+1}:
/// C_{k+1} → C_k` (shape `dims[k] × dims[k+1]`).
pub fn homology(
    ring: Ring,
    dims: &[usize],
    boundaries: &[ExactMatrix],
) -> Result<HomologyResult, LinAlgError> {
    if boundaries.len() + 1 != dims.len().max(1) {
        return Err(LinAlgError::DimensionMismatch(format!(
            "{} degrees but {} boundaries",
            dims.len(),
            boundaries.len()
        )));
    }
    for (k, b) in boundaries.iter().enumerate() {
        if b.rows() != dims[k] || b.cols() != dims[k + 1] {
            return Err(LinAlgError::DimensionMismatch(format!(
                "∂_{} is {}×{}, expected {}×{}",
                k + 1,
                b.rows(),
                b.cols(),
                dims[k],
                dims[k + 1]
            )));
        }
        if b.ring() != ring {
            return Err(LinAlgError::DimensionMismatch(format!("∂_{} over {}", k + 1, b.ring())));
        }
    }
    for k in 1..boundaries.len() {
        if !boundaries[k - 1].mul(&boundaries[k])?.is_zero() {
            return Err(LinAlgError::NotAComplex(k + 1));
        }
    }
    // per boundary: rank and torsion divisors
    let per: Vec<(usize, Vec<BigInt>)> = boundaries
        .par_iter()
        .map(|b| match ring {
            Ring::Integers => {
                let d = b.smith_normal_form()?;
                let tors = d.iter().filter(|x| !x.is_one()).cloned().collect();
                Ok((d.len(), tors))
            }
            Ring::Rationals | Ring::PrimeField(_) => Ok((b.rank()?, Vec::new())),
            r => Err(LinAlgError::Unsupported(r)),
        })
        .collect::<Result<_, _>>()?;
    let degrees = (0..dims.len())
        .map(|n| {
            let out_rank = if n == 0 { 0 } else { per[n - 1].0 };
            let (in_rank, torsion) = per.get(n).cloned().unwrap_or((0, Vec::new()));
            HomologyDegree { degree: n, free_rank: dims[n] - out_rank - in_rank, torsion }
        })
        .collect();
    Ok(HomologyResult { ring, degrees })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn ranks() {
        let q = Ring::Rationals;
        assert_eq!(ExactMatrix::identity(q, 2).rank().unwrap(), 2);
        assert_eq!(ExactMatrix::zeros(Ring::PrimeField(5), 3, 4).rank().unwrap(), 0);
        assert_eq!(ExactMatrix::from_rows_i64(q, &[vec![1, 2], vec![2, 4]]).rank().unwrap(), 1);
        assert!(ExactMatrix::identity(Ring::Integers, 2).rank().is_err());
        let m = ExactMatrix::from_rows_i64(Ring::PrimeField(2), &[vec![1, 1], vec![1, 1]]);
        assert_eq!(m.rank().unwrap(), 1);
    }

    #[test]
    fn smith_examples() {
        let z = Ring::Integers;
        let snf = |rows: &[Vec<i64>]| ExactMatrix::from_rows_i64(z, rows).smith_normal_form().unwrap();
        assert_eq!(snf(&[vec![2, 0], vec![0, 3]]), ints(&[1, 6]));
        assert_eq!(snf(&[vec![0, 0], vec![0, 0]]), ints(&[]));
        assert_eq!(snf(&[vec![2, 0], vec![0, 2]]), ints(&[2, 2]));
        assert_eq!(snf(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]), ints(&[2, 6, 12]));
        assert_eq!(snf(&[vec![1, 2], vec![3, 4]]), ints(&[1, 2]));
    }

    #[test]
    fn homology_examples() {
        let z = Ring::Integers;
        let h = homology(z, &[3, 9, 27], &[ExactMatrix::zeros(z, 3, 9), ExactMatrix::zeros(z, 9, 27)])
            .unwrap();
        assert_eq!(h.ranks(), vec![3, 9, 27]);
        let one = ExactMatrix::from_rows_i64(z, &[vec![1]]);
        assert_eq!(homology(z, &[1, 1], &[one]).unwrap().ranks(), vec![0, 0]);
        let two = ExactMatrix::from_rows_i64(z, &[vec![2]]);
        let h = homology(z, &[1, 1], &[two]).unwrap();
        assert_eq!(h.degrees[0].torsion, ints(&[2]));
        assert_eq!(h.ranks(), vec![0, 0]);
        let a = ExactMatrix::from_rows_i64(z, &[vec![1]]);
        assert!(matches!(homology(z, &[1, 1, 1], &[a.clone(), a]), Err(LinAlgError::NotAComplex(2))));
    }

    #[test]
    fn nullspace_and_pivots() {
        let q = Ring::Rationals;
        let m = ExactMatrix::from_rows_i64(q, &[vec![1, 2, 3], vec![2, 4, 6]]);
        let ns = m.nullspace().unwrap();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let col: BTreeMap<usize, Scalar> =
                v.iter().cloned().enumerate().filter(|(_, s)| !s.is_zero()).collect();
            assert!(m.apply(&col).is_empty());
        }
        assert_eq!(m.pivot_columns().unwrap(), vec![0]);
    }

    #[test]
    fn matrix_market_dump() {
        let m = ExactMatrix::from_rows_i64(Ring::Integers, &[vec![0, 5]]);
        let s = m.to_matrix_market();
        assert!(s.contains("1 2 1\n1 2 5"));
    }
}
