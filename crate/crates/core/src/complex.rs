//! Yang-Baxter (co)homology complexes `k ⊗_{A′} B ⊗_A k` and
//! `Hom_{A′-A}(B,k)`, with trivial or twisted coefficients, their quotients
//! by degenerate subspaces, and cochain-level tools.
//!
//! Degree-`n` chains are functions on `Xⁿ`; the tuple `(x₁,…,x_n)` stands for
//! the class of `e_{x₁}⋯e_{x_n}`. `C₀` is spanned by the empty tuple and
//! `∂₁(x) = (t − 1)·()`, which vanishes for trivial coefficients.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::bialgebra::Bialgebra;
use crate::error::{AlgebraError, ComplexError, LinAlgError};
use crate::exactlin::{homology, ExactMatrix, HomologyResult};
use crate::lincomb::Combination;
use crate::rewrite::{monoid_classes, NormalMonomial};
use crate::scalar::{Ring, Scalar};
use crate::solution::Solution;

pub type Chain = Combination<Vec<usize>>;

/// All `k`-tuples over `0..n` in lexicographic order.
pub fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let total = n.checked_pow(k as u32).expect("too many tuples");
    (0..total)
        .map(|mut i| {
            let mut t = vec![0; k];
            for slot in t.iter_mut().rev() {
                *slot = i % n;
                i /= n;
            }
            t
        })
        .collect()
}

/// Position of `t` in [`tuples`].
pub fn tuple_index(n: usize, t: &[usize]) -> usize {
    t.iter().fold(0, |acc, &x| acc * n + x)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoefficientSystem {
    Trivial,
    /// `x′·m = m`, `m·x = t·m`.
    Twisted(Scalar),
}

impl CoefficientSystem {
    pub fn check(&self, ring: Ring) -> Result<(), ComplexError> {
        match self {
            CoefficientSystem::Twisted(t) if t.ring() != ring => Err(ComplexError::CoefficientInadmissible(
                format!("twist {t} lives in {} but the complex is over {ring}", t.ring()),
            )),
            _ => Ok(()),
        }
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, CoefficientSystem::Trivial)
    }

    /// Scalar picked up by a term with `plain_len` plain letters on the right.
    pub fn weight(&self, ring: Ring, plain_len: usize) -> Scalar {
        match self {
            CoefficientSystem::Trivial => ring.one(),
            CoefficientSystem::Twisted(t) => t.pow(plain_len as u32),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplexVariant {
    Full,
    /// Degenerate span generated by `e_xe_y` for every fixed pair.
    FixPairs,
    /// Generated by `e_xe_y + e_ze_t`, `σ(x,y) = (z,t)`; σ must be involutive.
    Involutive,
    /// Generated by `Σ_{i<N} e_{σⁱ(x,y)}` for every `(x,y)` with `σᴺ(x,y) = (x,y)`.
    OrbitSums(usize),
    /// Explicit degree-2 vectors, indexed by `x·n + y`.
    CustomW(Vec<Vec<i64>>),
}

impl FromStr for ComplexVariant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "full" => Ok(ComplexVariant::Full),
            "fixpairs" | "fix" => Ok(ComplexVariant::FixPairs),
            "invo" | "involutive" => Ok(ComplexVariant::Involutive),
            other => other
                .strip_prefix("orbitsums:")
                .and_then(|n| n.parse().ok())
                .filter(|&n: &usize| n >= 1)
                .map(ComplexVariant::OrbitSums)
                .ok_or_else(|| format!("unknown variant `{s}` (full, fixpairs, invo, orbitsums:N)")),
        }
    }
}

/// `∂(x₁,…,x_n)`: the e-parts of `d(e_{x₁}⋯e_{x_n})` weighted by the
/// coefficient action.
pub fn boundary(sol: &Solution, coeff: &CoefficientSystem, ring: Ring, tuple: &[usize]) -> Chain {
    let b = Bialgebra::new(sol, ring);
    let mut out = Chain::zero(ring);
    for (m, c) in &b.d_monomial(&NormalMonomial::e_word(tuple)) {
        out.add_term(m.evec.clone(), c * &coeff.weight(ring, m.plain.len()));
    }
    out
}

/// `∂_k : C_k → C_{k−1}` on the full tuple bases.
pub fn full_boundary_matrix(
    sol: &Solution,
    coeff: &CoefficientSystem,
    ring: Ring,
    k: usize,
) -> ExactMatrix {
    assert!(k >= 1);
    let n = sol.n();
    let columns: Vec<BTreeMap<usize, Scalar>> = tuples(n, k)
        .par_iter()
        .map(|t| {
            boundary(sol, coeff, ring, t)
                .into_iter()
                .map(|(u, c)| (tuple_index(n, &u), c))
                .collect()
        })
        .collect();
    ExactMatrix::from_columns(ring, n.pow(k as u32 - 1), columns)
}

// ---------------------------------------------------------------------------
// degenerate subspaces

/// A subspace `D ⊆ k^{Xⁿ}` in reduced echelon form with unit pivots, and
/// the complementary basis of non-pivot tuples.
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    ring: Ring,
    degree: usize,
    /// pivot tuple ↦ basis vector (coefficient 1 at its pivot, 0 at other pivots)
    pivots: HashMap<Vec<usize>, Chain>,
    complement: Vec<Vec<usize>>,
    complement_index: HashMap<Vec<usize>, usize>,
}

impl QuotientSpace {
    fn build(
        ring: Ring,
        n: usize,
        degree: usize,
        generators: impl Iterator<Item = Chain>,
    ) -> Result<Self, ComplexError> {
        let mut pivots: HashMap<Vec<usize>, Chain> = HashMap::new();
        // tuple ↦ pivots whose vector mentions it
        let mut mentions: HashMap<Vec<usize>, HashSet<Vec<usize>>> = HashMap::new();
        let mut pending: Vec<Chain> = Vec::new();
        let insert = |v: Chain,
                          pivots: &mut HashMap<Vec<usize>, Chain>,
                          mentions: &mut HashMap<Vec<usize>, HashSet<Vec<usize>>>|
         -> Option<Chain> {
            let v = reduce_by(&v, pivots);
            if v.is_zero() {
                return None;
            }
            let Some((p, c)) = v.iter().rev().find(|(_, c)| c.is_unit()).map(|(p, c)| (p.clone(), c.clone()))
            else {
                return Some(v);
            };
            let v = v.scaled(&c.inverse().unwrap());
            // clear p from the existing basis vectors
            if let Some(users) = mentions.remove(&p) {
                for q in users {
                    let old = pivots.get(&q).unwrap();
                    let factor = old.coeff(&p);
                    let mut new = old.clone();
                    new.add_scaled(&v, &-&factor);
                    for t in new.keys() {
                        mentions.entry(t.clone()).or_default().insert(q.clone());
                    }
                    pivots.insert(q, new);
                }
            }
            for t in v.keys() {
                if *t != p {
                    mentions.entry(t.clone()).or_default().insert(p.clone());
                }
            }
            pivots.insert(p, v);
            None
        };
        for g in generators {
            if let Some(stuck) = insert(g, &mut pivots, &mut mentions) {
                pending.push(stuck);
            }
        }
        let mut progress = true;
        while progress && !pending.is_empty() {
            progress = false;
            for v in std::mem::take(&mut pending) {
                match insert(v, &mut pivots, &mut mentions) {
                    Some(stuck) => pending.push(stuck),
                    None => progress = true,
                }
            }
        }
        if let Some(v) = pending.first() {
            return Err(ComplexError::VariantInadmissible(format!(
                "degenerate span in degree {degree} is not a direct summand over {ring} (stuck at {})",
                show_chain(v)
            )));
        }
        let complement: Vec<Vec<usize>> =
            tuples(n, degree).into_iter().filter(|t| !pivots.contains_key(t)).collect();
        let complement_index = complement.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        Ok(QuotientSpace { ring, degree, pivots, complement, complement_index })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim_degenerate(&self) -> usize {
        self.pivots.len()
    }

    /// Non-pivot tuples: a basis of the quotient.
    pub fn complement(&self) -> &[Vec<usize>] {
        &self.complement
    }

    pub fn complement_index(&self, t: &[usize]) -> Option<usize> {
        self.complement_index.get(t).copied()
    }

    /// Echelon basis of the degenerate span, ordered by pivot.
    pub fn basis(&self) -> Vec<Chain> {
        let mut keys: Vec<&Vec<usize>> = self.pivots.keys().collect();
        keys.sort();
        keys.into_iter().map(|k| self.pivots[k].clone()).collect()
    }

    /// The representative of `v` supported on complement tuples.
    pub fn reduce(&self, v: &Chain) -> Chain {
        reduce_by(v, &self.pivots)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }
}

pub fn show_chain(c: &Chain) -> String {
    if c.is_zero() {
        return "0".into();
    }
    c.iter().map(|(t, v)| format!("{v}·{t:?}")).collect::<Vec<_>>().join(" + ")
}

fn reduce_by(v: &Chain, pivots: &HashMap<Vec<usize>, Chain>) -> Chain {
    let mut out = v.clone();
    for (t, c) in v {
        if let Some(p) = pivots.get(t) {
            out.add_scaled(p, &-c);
        }
    }
    out
}

/// The degree-wise degenerate spans `D_k = Σ V^{⊗i}⊗W⊗V^{⊗(k−2−i)}` of a
/// variant, for `k ≤ max_degree`.
#[derive(Clone, Debug)]
pub struct DegenerateSpans {
    ring: Ring,
    n: usize,
    w: Vec<Chain>,
    spaces: Vec<QuotientSpace>,
}

impl DegenerateSpans {
    pub fn new(
        sol: &Solution,
        variant: &ComplexVariant,
        ring: Ring,
        max_degree: usize,
    ) -> Result<Self, ComplexError> {
        let w = degree_two_generators(sol, variant, ring)?;
        let n = sol.n();
        let mut spans = DegenerateSpans { ring, n, w, spaces: Vec::new() };
        for k in 0..=max_degree {
            let space = QuotientSpace::build(ring, n, k, spans.generators(k).into_iter())?;
            spans.spaces.push(space);
        }
        Ok(spans)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn max_degree(&self) -> usize {
        self.spaces.len() - 1
    }

    pub fn w(&self) -> &[Chain] {
        &self.w
    }

    /// Spanning set of `D_k`: `u ⊗ g ⊗ v` over tuples `u`, `v` and `g ∈ W`.
    pub fn generators(&self, k: usize) -> Vec<Chain> {
        let mut out = Vec::new();
        if k < 2 {
            return out;
        }
        for i in 0..=k - 2 {
            let lefts = tuples(self.n, i);
            let rights = tuples(self.n, k - 2 - i);
            for u in &lefts {
                for g in &self.w {
                    for v in &rights {
                        out.push(g.map_keys(|pair| {
                            u.iter().chain(pair).chain(v).copied().collect::<Vec<usize>>()
                        }));
                    }
                }
            }
        }
        out
    }

    pub fn space(&self, k: usize) -> &QuotientSpace {
        self.spaces
            .get(k)
            .unwrap_or_else(|| panic!("degenerate spans built up to degree {} only", self.max_degree()))
    }

    pub fn reduce(&self, v: &Chain, k: usize) -> Chain {
        self.space(k).reduce(v)
    }

    pub fn reduce_tuple(&self, t: &[usize]) -> Chain {
        self.space(t.len()).reduce(&Chain::from_key(self.ring, t.to_vec()))
    }
}

fn degree_two_generators(
    sol: &Solution,
    variant: &ComplexVariant,
    ring: Ring,
) -> Result<Vec<Chain>, ComplexError> {
    let n = sol.n();
    let pairs = (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)));
    let pair_chain = |x: usize, y: usize| Chain::from_key(ring, vec![x, y]);
    let mut out = Vec::new();
    match variant {
        ComplexVariant::Full => {}
        ComplexVariant::FixPairs => {
            for (x, y) in pairs {
                if sol.sigma(x, y) == (x, y) {
                    out.push(pair_chain(x, y));
                }
            }
        }
        ComplexVariant::Involutive => {
            if let Some((x, y)) = sol.first_non_involutive_pair() {
                return Err(AlgebraError::NotInvolutive(x, y).into());
            }
            for (x, y) in pairs {
                let (z, t) = sol.sigma(x, y);
                let mut g = pair_chain(x, y);
                g.add_assign(&pair_chain(z, t));
                out.push(g);
            }
        }
        ComplexVariant::OrbitSums(order) => {
            if *order == 0 {
                return Err(ComplexError::VariantInadmissible("orbit order must be ≥ 1".into()));
            }
            for (x, y) in pairs {
                if sol.sigma_pow(x, y, *order) != (x, y) {
                    continue;
                }
                let mut g = Chain::zero(ring);
                for i in 0..*order {
                    let (a, b) = sol.sigma_pow(x, y, i);
                    g.add_assign(&pair_chain(a, b));
                }
                out.push(g);
            }
        }
        ComplexVariant::CustomW(vectors) => {
            for v in vectors {
                if v.len() != n * n {
                    return Err(ComplexError::VariantInadmissible(format!(
                        "custom vector has {} entries, expected {}",
                        v.len(),
                        n * n
                    )));
                }
                let mut g = Chain::zero(ring);
                for (i, &c) in v.iter().enumerate() {
                    g.add_int(vec![i / n, i % n], c);
                }
                out.push(g);
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// complexes

#[derive(Clone, Debug)]
pub struct ChainComplexData {
    pub ring: Ring,
    /// `bases[k]` lists the tuples (or quotient representatives) of degree `k`.
    pub bases: Vec<Vec<Vec<usize>>>,
    /// `boundaries[k]` is `∂_{k+1} : C_{k+1} → C_k`.
    pub boundaries: Vec<ExactMatrix>,
}

impl ChainComplexData {
    pub fn dims(&self) -> Vec<usize> {
        self.bases.iter().map(|b| b.len()).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.bases.len() - 1
    }

    /// Degree of the first failure of `∂∂ = 0`, if any.
    pub fn square_zero_failure(&self) -> Option<usize> {
        (1..self.boundaries.len())
            .find(|&k| !self.boundaries[k - 1].mul(&self.boundaries[k]).unwrap().is_zero())
            .map(|k| k + 1)
    }

    pub fn homology(&self) -> Result<HomologyResult, LinAlgError> {
        homology(self.ring, &self.dims(), &self.boundaries)
    }

    /// Cohomology of the dual complex (`δ_k = ∂_{k+1}ᵀ`). Over ℤ the torsion
    /// of `H^k` is that of `H_{k−1}`.
    pub fn cohomology(&self) -> Result<HomologyResult, LinAlgError> {
        let mut h = self.homology()?;
        let torsion: Vec<_> = h.degrees.iter().map(|d| d.torsion.clone()).collect();
        for (k, d) in h.degrees.iter_mut().enumerate() {
            d.torsion = if k == 0 { Vec::new() } else { torsion[k - 1].clone() };
        }
        Ok(h)
    }
}

pub fn build_complex(
    sol: &Solution,
    coeff: &CoefficientSystem,
    variant: &ComplexVariant,
    ring: Ring,
    max_degree: usize,
) -> Result<ChainComplexData, ComplexError> {
    coeff.check(ring)?;
    let n = sol.n();
    let full: Vec<ExactMatrix> =
        (1..=max_degree).map(|k| full_boundary_matrix(sol, coeff, ring, k)).collect();
    if *variant == ComplexVariant::Full {
        return Ok(ChainComplexData {
            ring,
            bases: (0..=max_degree).map(|k| tuples(n, k)).collect(),
            boundaries: full,
        });
    }
    let spans = DegenerateSpans::new(sol, variant, ring, max_degree)?;
    check_stability(&spans, &full, n)?;
    let mut boundaries = Vec::new();
    for k in 1..=max_degree {
        let (src, dst) = (spans.space(k), spans.space(k - 1));
        let columns: Vec<BTreeMap<usize, Scalar>> = src
            .complement()
            .par_iter()
            .map(|t| {
                let col = full[k - 1].column(tuple_index(n, t));
                let image = dst.reduce(&chain_from_column(ring, n, k - 1, col));
                image
                    .into_iter()
                    .map(|(u, c)| (dst.complement_index(&u).expect("reduced to complement"), c))
                    .collect()
            })
            .collect();
        boundaries.push(ExactMatrix::from_columns(ring, dst.complement().len(), columns));
    }
    Ok(ChainComplexData {
        ring,
        bases: (0..=max_degree).map(|k| spans.space(k).complement().to_vec()).collect(),
        boundaries,
    })
}

fn chain_from_column(ring: Ring, n: usize, k: usize, col: &BTreeMap<usize, Scalar>) -> Chain {
    let mut out = Chain::zero(ring);
    for (&i, c) in col {
        out.add_term(tuple_from_index(n, k, i), c.clone());
    }
    out
}

pub fn tuple_from_index(n: usize, k: usize, mut i: usize) -> Vec<usize> {
    let mut t = vec![0; k];
    for slot in t.iter_mut().rev() {
        *slot = i % n;
        i /= n;
    }
    t
}

fn apply_full(m: &ExactMatrix, n: usize, k: usize, v: &Chain) -> Chain {
    let sparse: BTreeMap<usize, Scalar> = v.iter().map(|(t, c)| (tuple_index(n, t), c.clone())).collect();
    chain_from_column(v.ring(), n, k, &m.apply(&sparse))
}

/// `∂(D_k) ⊆ D_{k−1}` for every generator.
fn check_stability(spans: &DegenerateSpans, full: &[ExactMatrix], n: usize) -> Result<(), ComplexError> {
    for k in 2..=full.len() {
        let gens = spans.generators(k);
        let bad = gens.par_iter().find_map_first(|g| {
            let image = spans.reduce(&apply_full(&full[k - 1], n, k - 1, g), k - 1);
            (!image.is_zero()).then(|| format!("{} ↦ {}", show_chain(g), show_chain(&image)))
        });
        if let Some(witness) = bad {
            return Err(ComplexError::QuotientNotStable { degree: k, witness });
        }
    }
    Ok(())
}

/// Homology in degrees `0..=max_degree` (the complex is built one degree
/// higher so that the top group is exact).
pub fn homology_of(
    sol: &Solution,
    coeff: &CoefficientSystem,
    variant: &ComplexVariant,
    ring: Ring,
    max_degree: usize,
) -> Result<HomologyResult, ComplexError> {
    if !(ring.is_field() || ring == Ring::Integers) {
        return Err(LinAlgError::Unsupported(ring).into());
    }
    let data = build_complex(sol, coeff, variant, ring, max_degree + 1)?;
    let mut h = data.homology()?;
    h.truncate(max_degree);
    Ok(h)
}

pub fn cohomology_of(
    sol: &Solution,
    coeff: &CoefficientSystem,
    variant: &ComplexVariant,
    ring: Ring,
    max_degree: usize,
) -> Result<HomologyResult, ComplexError> {
    if !(ring.is_field() || ring == Ring::Integers) {
        return Err(LinAlgError::Unsupported(ring).into());
    }
    let data = build_complex(sol, coeff, variant, ring, max_degree + 1)?;
    let mut h = data.cohomology()?;
    h.truncate(max_degree);
    Ok(h)
}

/// Basis (as columns over the full tuple basis) of the cochains vanishing on
/// the degenerate span of degree `k`.
fn annihilator(spans: &DegenerateSpans, n: usize, k: usize) -> Result<ExactMatrix, ComplexError> {
    let ring = spans.ring();
    let size = n.pow(k as u32);
    let basis = spans.space(k).basis();
    if basis.is_empty() {
        return Ok(ExactMatrix::identity(ring, size));
    }
    // rows of Gᵀ are the degenerate basis vectors
    let gt_cols: Vec<BTreeMap<usize, Scalar>> = {
        let mut cols = vec![BTreeMap::new(); size];
        for (r, v) in basis.iter().enumerate() {
            for (t, c) in v {
                cols[tuple_index(n, t)].insert(r, c.clone());
            }
        }
        cols
    };
    let gt = ExactMatrix::from_columns(ring, basis.len(), gt_cols);
    let ns = gt.nullspace()?;
    let columns = ns
        .into_iter()
        .map(|v| v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect())
        .collect();
    Ok(ExactMatrix::from_columns(ring, size, columns))
}

/// Cohomology dimensions of the annihilator subcomplex
/// `{f : f(D_k) = 0}` of the full cochain complex, over a field.
pub fn annihilator_cohomology_dims(
    sol: &Solution,
    coeff: &CoefficientSystem,
    variant: &ComplexVariant,
    ring: Ring,
    max_degree: usize,
) -> Result<Vec<usize>, ComplexError> {
    if !ring.is_field() {
        return Err(LinAlgError::NotAField(ring).into());
    }
    coeff.check(ring)?;
    let n = sol.n();
    let spans = DegenerateSpans::new(sol, variant, ring, max_degree + 1)?;
    let ann: Vec<ExactMatrix> =
        (0..=max_degree + 1).map(|k| annihilator(&spans, n, k)).collect::<Result<_, _>>()?;
    // δ_k A_k with δ_k = ∂_{k+1}ᵀ
    let restricted_rank = |k: usize| -> Result<usize, ComplexError> {
        let delta = full_boundary_matrix(sol, coeff, ring, k + 1).transpose();
        Ok(delta.mul(&ann[k])?.rank()?)
    };
    let ranks: Vec<usize> = (0..=max_degree).map(restricted_rank).collect::<Result<_, _>>()?;
    Ok((0..=max_degree)
        .map(|k| ann[k].cols() - ranks[k] - if k == 0 { 0 } else { ranks[k - 1] })
        .collect())
}

// ---------------------------------------------------------------------------
// cochains

/// A function on degree-`n` tuples; unset tuples are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    ring: Ring,
    values: BTreeMap<Vec<usize>, Scalar>,
}

impl Cochain {
    pub fn zero(ring: Ring, degree: usize) -> Self {
        Cochain { degree, ring, values: BTreeMap::new() }
    }

    pub fn from_fn(n: usize, degree: usize, ring: Ring, mut f: impl FnMut(&[usize]) -> Scalar) -> Self {
        let mut c = Self::zero(ring, degree);
        for t in tuples(n, degree) {
            let v = f(&t);
            c.set(t, v);
        }
        c
    }

    /// Values listed in the order of [`tuples`].
    pub fn from_vector(n: usize, degree: usize, values: &[Scalar], ring: Ring) -> Self {
        let mut c = Self::zero(ring, degree);
        for (t, v) in tuples(n, degree).into_iter().zip(values) {
            c.set(t, v.clone());
        }
        c
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn values(&self) -> &BTreeMap<Vec<usize>, Scalar> {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, t: &[usize]) -> Scalar {
        self.values.get(t).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn set(&mut self, t: Vec<usize>, v: Scalar) {
        assert_eq!(t.len(), self.degree, "tuple length differs from cochain degree");
        if v.is_zero() {
            self.values.remove(&t);
        } else {
            self.values.insert(t, v);
        }
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        let mut out = self.clone();
        for (t, v) in &other.values {
            let s = &out.get(t) + v;
            out.set(t.clone(), s);
        }
        out
    }

    pub fn scaled(&self, c: &Scalar) -> Cochain {
        let mut out = Cochain::zero(self.ring, self.degree);
        for (t, v) in &self.values {
            out.set(t.clone(), v * c);
        }
        out
    }

    pub fn evaluate(&self, chain: &Chain) -> Scalar {
        let mut acc = self.ring.zero();
        for (t, c) in chain {
            if let Some(v) = self.values.get(t) {
                acc = &acc + &(v * c);
            }
        }
        acc
    }

    /// `(δf)(τ) = f(∂τ)` on all `(degree+1)`-tuples.
    pub fn coboundary(&self, sol: &Solution, coeff: &CoefficientSystem) -> Cochain {
        let ring = self.ring;
        let values: Vec<(Vec<usize>, Scalar)> = tuples(sol.n(), self.degree + 1)
            .into_par_iter()
            .map(|t| {
                let v = self.evaluate(&boundary(sol, coeff, ring, &t));
                (t, v)
            })
            .collect();
        let mut out = Cochain::zero(ring, self.degree + 1);
        for (t, v) in values {
            out.set(t, v);
        }
        out
    }

    pub fn to_vector(&self, n: usize) -> Vec<Scalar> {
        tuples(n, self.degree).iter().map(|t| self.get(t)).collect()
    }

    /// Whether `f` vanishes on the degenerate span of its degree.
    pub fn vanishes_on(&self, spans: &DegenerateSpans) -> bool {
        spans.space(self.degree).basis().iter().all(|v| self.evaluate(v).is_zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocycleStatus {
    pub is_cocycle: bool,
    /// First `(degree+1)`-tuple on which `δf` is nonzero.
    pub witness: Option<Vec<usize>>,
}

pub fn is_cocycle(f: &Cochain, sol: &Solution, coeff: &CoefficientSystem) -> CocycleStatus {
    let witness = tuples(sol.n(), f.degree() + 1)
        .into_par_iter()
        .find_first(|t| !f.evaluate(&boundary(sol, coeff, f.ring(), t)).is_zero());
    CocycleStatus { is_cocycle: witness.is_none(), witness }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BraidingCheck {
    /// `c(x⊗y) = f(x,y)·σ¹(x,y)⊗σ²(x,y)` satisfies the braid equation.
    pub braid_holds: bool,
    /// The multiplicative 2-cocycle identity holds on every triple.
    pub cocycle_holds: bool,
    pub braid_witness: Option<[usize; 3]>,
    pub cocycle_witness: Option<[usize; 3]>,
}

pub fn two_cocycle_braiding_check(f: &Cochain, sol: &Solution) -> Result<BraidingCheck, ComplexError> {
    if f.degree() != 2 {
        return Err(ComplexError::DegreeMismatch(f.degree(), 2));
    }
    let n = sol.n();
    let pairs: Vec<Vec<usize>> = tuples(n, 2);
    if let Some(t) = pairs.iter().find(|t| f.get(t).is_zero()) {
        return Err(ComplexError::ZeroValue(t.clone()));
    }
    let fv = |a: usize, b: usize| f.get(&[a, b]);
    let (s1, s2) = (|a, b| sol.s1(a, b), |a, b| sol.s2(a, b));
    let mut braid_witness = None;
    let mut cocycle_witness = None;
    for t in tuples(n, 3) {
        let (x, y, z) = (t[0], t[1], t[2]);
        // c₁c₂c₁ on x⊗y⊗z
        let mut scal_a = fv(x, y);
        let (p, q) = sol.sigma(x, y);
        scal_a = &scal_a * &fv(q, z);
        let (r, w) = sol.sigma(q, z);
        scal_a = &scal_a * &fv(p, r);
        let (u, v) = sol.sigma(p, r);
        let out_a = [u, v, w];
        // c₂c₁c₂
        let mut scal_b = fv(y, z);
        let (p2, q2) = sol.sigma(y, z);
        scal_b = &scal_b * &fv(x, p2);
        let (r2, w2) = sol.sigma(x, p2);
        scal_b = &scal_b * &fv(w2, q2);
        let (u2, v2) = sol.sigma(w2, q2);
        let out_b = [r2, u2, v2];
        if braid_witness.is_none() && (out_a != out_b || scal_a != scal_b) {
            braid_witness = Some([x, y, z]);
        }
        let lhs = &(&fv(s1(x, y), s1(s2(x, y), z)) * &fv(s2(x, y), z)) * &fv(x, y);
        let rhs = &(&fv(y, z) * &fv(x, s1(y, z))) * &fv(s2(x, s1(y, z)), s2(y, z));
        if cocycle_witness.is_none() && lhs != rhs {
            cocycle_witness = Some([x, y, z]);
        }
    }
    Ok(BraidingCheck {
        braid_holds: braid_witness.is_none(),
        cocycle_holds: cocycle_witness.is_none(),
        braid_witness,
        cocycle_witness,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleSpaces {
    pub degree: usize,
    pub cocycles: Vec<Cochain>,
    pub coboundaries: Vec<Cochain>,
}

impl CocycleSpaces {
    pub fn dim_h(&self) -> usize {
        self.cocycles.len() - self.coboundaries.len()
    }
}

/// Bases of `Zⁿ` and `Bⁿ` over a field, inside the annihilator of the
/// variant's degenerate span.
pub fn enumerate_cocycles(
    sol: &Solution,
    coeff: &CoefficientSystem,
    variant: &ComplexVariant,
    ring: Ring,
    degree: usize,
) -> Result<CocycleSpaces, ComplexError> {
    if !ring.is_field() {
        return Err(LinAlgError::NotAField(ring).into());
    }
    coeff.check(ring)?;
    let n = sol.n();
    let spans = DegenerateSpans::new(sol, variant, ring, degree + 1)?;
    let ann_k = annihilator(&spans, n, degree)?;
    let delta_k = full_boundary_matrix(sol, coeff, ring, degree + 1).transpose();
    let restricted = delta_k.mul(&ann_k)?;
    let to_cochain = |col: &BTreeMap<usize, Scalar>| {
        let mut c = Cochain::zero(ring, degree);
        for (&i, v) in col {
            c.set(tuple_from_index(n, degree, i), v.clone());
        }
        c
    };
    let cocycles = restricted
        .nullspace()?
        .into_iter()
        .map(|v| {
            let sparse = v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
            to_cochain(&ann_k.apply(&sparse))
        })
        .collect();
    let coboundaries = if degree == 0 {
        Vec::new()
    } else {
        let ann_prev = annihilator(&spans, n, degree - 1)?;
        let delta_prev = full_boundary_matrix(sol, coeff, ring, degree).transpose();
        let image = delta_prev.mul(&ann_prev)?;
        image.pivot_columns()?.into_iter().map(|j| to_cochain(image.column(j))).collect()
    };
    Ok(CocycleSpaces { degree, cocycles, coboundaries })
}

// ---------------------------------------------------------------------------
// the quotient algebra itself, as a bimodule complex

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LengthPiece {
    /// Total number of letters `|a| + k + |b|` in `a′ e_τ b`.
    pub length: usize,
    pub dims: Vec<usize>,
    pub homology: Vec<usize>,
}

/// Homology of `(B/I, d)` for the ideal generated by the variant's degenerate
/// span, split by word length (which `d` preserves), over a field. Basis in
/// degree `k`: `a′ e_τ b` with `a`, `b` canonical monoid words and `τ` a
/// complement tuple.
pub fn bimodule_homology(
    sol: &Solution,
    variant: &ComplexVariant,
    ring: Ring,
    max_length: usize,
) -> Result<Vec<LengthPiece>, ComplexError> {
    if !ring.is_field() {
        return Err(LinAlgError::NotAField(ring).into());
    }
    let spans = DegenerateSpans::new(sol, variant, ring, max_length)?;
    let b = Bialgebra::new(sol, ring);
    let classes: Vec<Vec<Vec<usize>>> = (0..=max_length).map(|l| monoid_classes(sol, l)).collect();
    let mut pieces = Vec::new();
    for length in 0..=max_length {
        let bases: Vec<Vec<NormalMonomial>> = (0..=length)
            .map(|k| {
                let mut basis = Vec::new();
                for a in 0..=length - k {
                    let c = length - k - a;
                    for pa in &classes[a] {
                        for tau in spans.space(k).complement() {
                            for pc in &classes[c] {
                                basis.push(NormalMonomial {
                                    primed: pa.clone(),
                                    evec: tau.clone(),
                                    plain: pc.clone(),
                                });
                            }
                        }
                    }
                }
                basis
            })
            .collect();
        let index: Vec<HashMap<&NormalMonomial, usize>> =
            bases.iter().map(|bs| bs.iter().enumerate().map(|(i, m)| (m, i)).collect()).collect();
        // ideal stability on generators a′ g c
        for k in 2..=length {
            for a in 0..=length - k {
                let c = length - k - a;
                for g in spans.generators(k) {
                    for pa in &classes[a] {
                        for pc in &classes[c] {
                            let elt = g.map_keys(|t| NormalMonomial {
                                primed: pa.clone(),
                                evec: t.clone(),
                                plain: pc.clone(),
                            });
                            let image = b.reduce_mod(&b.d(&elt), &spans);
                            if !image.is_zero() {
                                return Err(ComplexError::QuotientNotStable {
                                    degree: k,
                                    witness: format!("d({elt}) ≡ {image}"),
                                });
                            }
                        }
                    }
                }
            }
        }
        let mut boundaries = Vec::new();
        for k in 1..=length {
            let columns: Vec<BTreeMap<usize, Scalar>> = bases[k]
                .par_iter()
                .map(|m| {
                    let image = b.reduce_mod(&b.d_monomial(m), &spans);
                    image.into_iter().map(|(t, c)| (index[k - 1][&t], c)).collect()
                })
                .collect();
            boundaries.push(ExactMatrix::from_columns(ring, bases[k - 1].len(), columns));
        }
        let dims: Vec<usize> = bases.iter().map(|b| b.len()).collect();
        let h = homology(ring, &dims, &boundaries)?;
        pieces.push(LengthPiece { length, dims, homology: h.ranks() });
    }
    Ok(pieces)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Ring {
        Ring::Rationals
    }

    #[test]
    fn tuple_enumeration() {
        assert_eq!(tuples(2, 2), vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(tuples(3, 0), vec![Vec::<usize>::new()]);
        for (i, t) in tuples(3, 3).iter().enumerate() {
            assert_eq!(tuple_index(3, t), i);
            assert_eq!(&tuple_from_index(3, 3, i), t);
        }
    }

    #[test]
    fn degree_two_boundary_formula() {
        let s = Solution::builtin("dihedral_3").unwrap();
        let z = Ring::Integers;
        for t in tuples(3, 2) {
            let (x, y) = (t[0], t[1]);
            let (a, b) = s.sigma(x, y);
            let mut expected = Chain::zero(z);
            for (u, c) in [(a, 1), (b, 1), (x, -1), (y, -1)] {
                expected.add_int(vec![u], c);
            }
            assert_eq!(boundary(&s, &CoefficientSystem::Trivial, z, &t), expected);
        }
    }

    #[test]
    fn trivial_quandle_boundaries_vanish() {
        let s = Solution::builtin("trivial_3").unwrap();
        for k in 1..=3 {
            assert!(full_boundary_matrix(&s, &CoefficientSystem::Trivial, Ring::Integers, k).is_zero());
        }
    }

    #[test]
    fn degree_one_twisted() {
        let s = Solution::builtin("id_1").unwrap();
        let r = Ring::IntPolys;
        let t = r.variable().unwrap();
        let c = boundary(&s, &CoefficientSystem::Twisted(t.clone()), r, &[0]);
        assert_eq!(c.coeff(&vec![]), &t - &r.one());
    }

    #[test]
    fn fixpairs_quotient_for_quandle() {
        let s = Solution::builtin("dihedral_3").unwrap();
        let spans = DegenerateSpans::new(&s, &ComplexVariant::FixPairs, q(), 3).unwrap();
        assert_eq!(spans.w().len(), 3);
        assert_eq!(spans.space(2).dim_degenerate(), 3);
        // tuples with some repeated neighbour: 27 − 3·2·2 = 15
        assert_eq!(spans.space(3).dim_degenerate(), 15);
        let data = build_complex(&s, &CoefficientSystem::Trivial, &ComplexVariant::FixPairs, q(), 3).unwrap();
        assert_eq!(data.dims(), vec![1, 3, 6, 12]);
        assert!(data.square_zero_failure().is_none());
    }

    #[test]
    fn involutive_requires_involutive() {
        let s = Solution::builtin("perm_cycle3").unwrap();
        assert!(matches!(
            DegenerateSpans::new(&s, &ComplexVariant::Involutive, q(), 2),
            Err(ComplexError::Algebra(AlgebraError::NotInvolutive(..)))
        ));
        // 2·e_xe_x is not a unit multiple over ℤ
        let f = Solution::flip(2);
        assert!(matches!(
            DegenerateSpans::new(&f, &ComplexVariant::Involutive, Ring::Integers, 2),
            Err(ComplexError::VariantInadmissible(_))
        ));
    }

    #[test]
    fn flip_involutive_quotient_is_exterior() {
        let s = Solution::flip(2);
        let h = homology_of(&s, &CoefficientSystem::Trivial, &ComplexVariant::Involutive, q(), 4).unwrap();
        assert_eq!(h.ranks(), vec![1, 2, 1, 0, 0]);
    }

    #[test]
    fn unstable_custom_span_is_reported() {
        let s = Solution::builtin("dihedral_3").unwrap();
        // e_0 e_1 alone is not closed under ∂ in degree 3
        let mut v = vec![0i64; 9];
        v[1] = 1;
        let err = build_complex(
            &s,
            &CoefficientSystem::Trivial,
            &ComplexVariant::CustomW(vec![v]),
            q(),
            3,
        )
        .unwrap_err();
        assert!(matches!(err, ComplexError::QuotientNotStable { .. }), "{err}");
    }

    #[test]
    fn cocycles_on_flip() {
        let s = Solution::flip(2);
        let f = Cochain::from_fn(2, 1, Ring::PrimeField(5), |t| Ring::PrimeField(5).from_i64(t[0] as i64 + 3));
        assert!(is_cocycle(&f, &s, &CoefficientSystem::Trivial).is_cocycle);
        let sp = enumerate_cocycles(&s, &CoefficientSystem::Trivial, &ComplexVariant::Full, Ring::PrimeField(5), 1)
            .unwrap();
        assert_eq!(sp.cocycles.len(), 2);
        assert!(sp.coboundaries.is_empty());
        assert!(is_cocycle(&Cochain::zero(Ring::PrimeField(5), 2), &s, &CoefficientSystem::Trivial).is_cocycle);
    }

    #[test]
    fn identity_on_one_point_alternates() {
        let s = Solution::builtin("id_1").unwrap();
        let r = Ring::PrimeField(7);
        let twist = CoefficientSystem::Twisted(r.from_i64(3));
        for k in 1..=4 {
            let m = full_boundary_matrix(&s, &twist, r, k);
            let expected = if k % 2 == 1 { r.from_i64(2) } else { r.zero() };
            assert_eq!(m.get(0, 0), expected, "degree {k}");
        }
        let sp = enumerate_cocycles(&s, &twist, &ComplexVariant::Full, r, 1).unwrap();
        assert_eq!((sp.cocycles.len(), sp.coboundaries.len()), (1, 1));
        let sp = enumerate_cocycles(&s, &twist, &ComplexVariant::Full, r, 2).unwrap();
        assert_eq!((sp.cocycles.len(), sp.coboundaries.len()), (0, 0));
    }

    #[test]
    fn braiding_check_basics() {
        let s = Solution::flip(2);
        let r = Ring::PrimeField(3);
        let one = Cochain::from_fn(2, 2, r, |_| r.one());
        let c = two_cocycle_braiding_check(&one, &s).unwrap();
        assert!(c.braid_holds && c.cocycle_holds);
        let f = Cochain::from_fn(2, 2, r, |t| r.from_i64(if t[0] == t[1] { -1 } else { 1 }));
        let c = two_cocycle_braiding_check(&f, &s).unwrap();
        assert_eq!(c.braid_holds, c.cocycle_holds);
        let zero = Cochain::zero(r, 2);
        assert!(matches!(two_cocycle_braiding_check(&zero, &s), Err(ComplexError::ZeroValue(_))));
    }

    #[test]
    fn flip_bimodule_quotient_is_acyclic() {
        let s = Solution::flip(2);
        let pieces = bimodule_homology(&s, &ComplexVariant::Involutive, q(), 4).unwrap();
        for p in &pieces {
            assert!(p.homology.iter().skip(1).all(|&h| h == 0), "{p:?}");
        }
    }
}
