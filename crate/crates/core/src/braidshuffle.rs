//! Braid lifts on `V^{⊗n}`, quantum shuffles and symmetrizers, Nichols
//! algebra dimensions, the bar complex `A ⊗ TA ⊗ A` of `A = k[M]` and the
//! comparison map from `B`.
//!
//! A permutation `s` is a vector with `s[i]` the target position of the
//! `i`-th tensor factor.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bialgebra::Bialgebra;
use crate::error::{BraidError, LinAlgError};
use crate::exactlin::ExactMatrix;
use crate::lincomb::Combination;
use crate::report::{Check, Report};
use crate::rewrite::{m_canonical, monoid_classes, Letter, NormalMonomial, Word};
use crate::scalar::{Ring, Scalar};
use crate::solution::Solution;
use crate::complex::tuples;

/// `+σ` or `−σ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BraidSign {
    Plus,
    Minus,
}

impl BraidSign {
    fn scalar(self, ring: Ring) -> Scalar {
        match self {
            BraidSign::Plus => ring.one(),
            BraidSign::Minus => ring.from_i64(-1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorVector {
    pub degree: usize,
    pub coeffs: Combination<Vec<usize>>,
}

impl TensorVector {
    pub fn basis(ring: Ring, t: &[usize]) -> Self {
        TensorVector { degree: t.len(), coeffs: Combination::from_key(ring, t.to_vec()) }
    }

    pub fn zero(ring: Ring, degree: usize) -> Self {
        TensorVector { degree, coeffs: Combination::zero(ring) }
    }

    pub fn ring(&self) -> Ring {
        self.coeffs.ring()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    pub fn add_assign(&mut self, other: &TensorVector) {
        assert_eq!(self.degree, other.degree);
        self.coeffs.add_assign(&other.coeffs);
    }

    /// `u ⊗ v` by concatenation.
    pub fn concat(&self, other: &TensorVector) -> TensorVector {
        let mut out = Combination::zero(self.ring());
        for (a, c) in &self.coeffs {
            for (b, d) in &other.coeffs {
                out.add_term(a.iter().chain(b).copied().collect(), c * d);
            }
        }
        TensorVector { degree: self.degree + other.degree, coeffs: out }
    }
}

/// Adjacent transpositions (0-based positions `i ↔ i+1`, in the order they
/// are applied) of a reduced word for `s`, by bubble sort on target positions.
pub fn reduced_word(s: &[usize]) -> Vec<usize> {
    let mut keys = s.to_vec();
    let mut word = Vec::new();
    let n = keys.len();
    for pass in 0..n {
        for i in 0..n.saturating_sub(1 + pass) {
            if keys[i] > keys[i + 1] {
                keys.swap(i, i + 1);
                word.push(i);
            }
        }
    }
    word
}

/// A second reduced word for `s`: place the factor bound for the leftmost
/// position first, walking it leftwards.
pub fn reduced_word_alt(s: &[usize]) -> Vec<usize> {
    let mut keys = s.to_vec();
    let mut word = Vec::new();
    for target in 0..keys.len() {
        let mut pos = keys.iter().position(|&k| k == target).unwrap();
        while pos > target {
            keys.swap(pos - 1, pos);
            word.push(pos - 1);
            pos -= 1;
        }
    }
    word
}

pub fn is_permutation(s: &[usize]) -> bool {
    let mut seen = vec![false; s.len()];
    s.iter().all(|&i| i < s.len() && !std::mem::replace(&mut seen[i], true))
}

/// Applies `σ_{i₁}, σ_{i₂}, …` in order; each acts on positions `(i, i+1)`.
pub fn apply_word(sol: &Solution, word: &[usize], v: &TensorVector, sign: BraidSign) -> TensorVector {
    let ring = v.ring();
    let eps = sign.scalar(ring);
    let mut out = Combination::zero(ring);
    for (t, c) in &v.coeffs {
        let mut t = t.clone();
        for &i in word {
            let (z, w) = sol.sigma(t[i], t[i + 1]);
            t[i] = z;
            t[i + 1] = w;
        }
        let c = if word.len() % 2 == 1 { c * &eps } else { c.clone() };
        out.add_term(t, c);
    }
    TensorVector { degree: v.degree, coeffs: out }
}

/// `T_s^{±σ}(v)` along the bubble-sort reduced word of `s`.
pub fn lift_apply(sol: &Solution, s: &[usize], v: &TensorVector, sign: BraidSign) -> Result<TensorVector, BraidError> {
    if s.len() != v.degree || !is_permutation(s) {
        return Err(BraidError::DegreeMismatch(s.len(), v.degree));
    }
    Ok(apply_word(sol, &reduced_word(s), v, sign))
}

/// `(p,q)`-shuffles: the first `p` factors go to the chosen positions, in order.
pub fn shuffles(p: usize, q: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let n = p + q;
    for mask in 0u64..(1 << n) {
        if mask.count_ones() as usize != p {
            continue;
        }
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for pos in 0..n {
            if mask >> pos & 1 == 1 { a.push(pos) } else { b.push(pos) }
        }
        a.extend(b);
        out.push(a);
    }
    out
}

pub fn shuffle_product(sol: &Solution, u: &TensorVector, v: &TensorVector, sign: BraidSign) -> TensorVector {
    let uv = u.concat(v);
    let mut out = TensorVector::zero(u.ring(), uv.degree);
    for s in shuffles(u.degree, v.degree) {
        out.add_assign(&apply_word(sol, &reduced_word(&s), &uv, sign));
    }
    out
}

/// `x₁ ⧢ x₂ ⧢ ⋯ ⧢ x_n`, left associated.
pub fn quantum_symmetrizer(sol: &Solution, xs: &[usize], ring: Ring, sign: BraidSign) -> TensorVector {
    let mut acc = TensorVector::basis(ring, &[]);
    for &x in xs {
        acc = shuffle_product(sol, &acc, &TensorVector::basis(ring, &[x]), sign);
    }
    acc
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// `Σ_{s ∈ S_n} T_s` evaluated directly.
pub fn symmetrizer_brute_force(sol: &Solution, xs: &[usize], ring: Ring, sign: BraidSign) -> TensorVector {
    let v = TensorVector::basis(ring, xs);
    let mut out = TensorVector::zero(ring, xs.len());
    for s in permutations(xs.len()) {
        out.add_assign(&apply_word(sol, &reduced_word(&s), &v, sign));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NicholsDim {
    pub degree: usize,
    pub dim: usize,
}

/// Rank of `QS_{−σ}` on `V^{⊗k}` for `k ≤ max_degree`.
pub fn nichols_dims(sol: &Solution, max_degree: usize, ring: Ring) -> Result<Vec<NicholsDim>, LinAlgError> {
    if !ring.is_field() {
        return Err(LinAlgError::NotAField(ring));
    }
    let n = sol.n();
    (0..=max_degree)
        .map(|k| {
            let cols = tuples(n, k)
                .par_iter()
                .map(|t| {
                    quantum_symmetrizer(sol, t, ring, BraidSign::Minus)
                        .coeffs
                        .into_iter()
                        .map(|(u, c)| (crate::complex::tuple_index(n, &u), c))
                        .collect()
                })
                .collect();
            let m = ExactMatrix::from_columns(ring, n.pow(k as u32), cols);
            Ok(NicholsDim { degree: k, dim: m.rank()? })
        })
        .collect()
}

// ---------------------------------------------------------------------------
// bar complex

/// `left ⊗ m₁ ⊗ ⋯ ⊗ m_k ⊗ right` in `A ⊗ A^{⊗k} ⊗ A`, each entry a canonical
/// word of `M`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BarChain {
    pub left: Vec<usize>,
    pub middle: Vec<Vec<usize>>,
    pub right: Vec<usize>,
}

pub type BarElement = Combination<BarChain>;

impl BarChain {
    pub fn new(sol: &Solution, left: &[usize], middle: &[Vec<usize>], right: &[usize]) -> Self {
        BarChain {
            left: m_canonical(sol, left),
            middle: middle.iter().map(|w| m_canonical(sol, w)).collect(),
            right: m_canonical(sol, right),
        }
    }

    pub fn degree(&self) -> usize {
        self.middle.len()
    }

    pub fn length(&self) -> usize {
        self.left.len() + self.right.len() + self.middle.iter().map(Vec::len).sum::<usize>()
    }
}

impl std::fmt::Display for BarChain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let w = |v: &[usize]| {
            if v.is_empty() { "1".to_string() } else { v.iter().map(|x| format!("x{x}")).collect::<String>() }
        };
        let mut parts = vec![w(&self.left)];
        parts.extend(self.middle.iter().map(|m| w(m)));
        parts.push(w(&self.right));
        write!(f, "{}", parts.join("⊗"))
    }
}

fn concat(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().chain(b).copied().collect()
}

/// `b′(a₀⊗⋯⊗a_{k+1}) = Σ_{i=0}^{k} (−1)^i a₀⊗⋯⊗a_ia_{i+1}⊗⋯`, and zero on
/// `A ⊗ A` (the complex stops before the augmentation).
pub fn bar_differential(sol: &Solution, c: &BarChain, ring: Ring) -> BarElement {
    let mut out = BarElement::zero(ring);
    if c.middle.is_empty() {
        return out;
    }
    let mut full: Vec<Vec<usize>> = vec![c.left.clone()];
    full.extend(c.middle.iter().cloned());
    full.push(c.right.clone());
    for i in 0..full.len() - 1 {
        let mut parts = full.clone();
        let merged = concat(&parts[i], &parts[i + 1]);
        parts.splice(i..=i + 1, [merged]);
        let chain = BarChain::new(sol, &parts[0], &parts[1..parts.len() - 1], &parts[parts.len() - 1]);
        out.add_int(chain, if i % 2 == 0 { 1 } else { -1 });
    }
    out
}

pub fn bar_differential_element(sol: &Solution, a: &BarElement) -> BarElement {
    a.flat_map(|c| bar_differential(sol, c, a.ring()))
}

/// `a′ e_{x₁}⋯e_{x_n} b ↦ a ⊗ (x₁ ⧢_{−σ} ⋯ ⧢_{−σ} x_n) ⊗ b`.
pub fn comparison_map(sol: &Solution, m: &NormalMonomial, ring: Ring) -> BarElement {
    let qs = quantum_symmetrizer(sol, &m.evec, ring, BraidSign::Minus);
    let mut out = BarElement::zero(ring);
    for (t, c) in qs.coeffs {
        let middle: Vec<Vec<usize>> = t.iter().map(|&x| vec![x]).collect();
        out.add_term(BarChain::new(sol, &m.primed, &middle, &m.plain), c);
    }
    out
}

pub fn comparison_element(sol: &Solution, a: &Combination<NormalMonomial>) -> BarElement {
    a.flat_map(|m| comparison_map(sol, m, a.ring()))
}

/// Moves the entries of `s` leftwards across the entries of `t` in every
/// shuffle pattern, each crossing braiding the two words with sign `−1`.
fn shuffle_words(sol: &Solution, t: &[Vec<usize>], s: &[Vec<usize>], ring: Ring) -> Combination<Vec<Vec<usize>>> {
    let (p, q) = (t.len(), s.len());
    let mut out = Combination::zero(ring);
    for pattern in shuffles(p, q) {
        // pattern[p + j] is the target of s_j
        let mut seq: Vec<Vec<usize>> = t.iter().chain(s).cloned().collect();
        let mut crossings = 0;
        for j in 0..q {
            let mut pos = p + j;
            let target = pattern[p + j];
            while pos > target {
                let (moved, stayed) = sol.braid_words(&seq[pos - 1], &seq[pos]);
                seq[pos - 1] = moved;
                seq[pos] = stayed;
                pos -= 1;
                crossings += 1;
            }
        }
        let seq: Vec<Vec<usize>> = seq.iter().map(|w| m_canonical(sol, w)).collect();
        out.add_int(seq, if crossings % 2 == 0 { 1 } else { -1 });
    }
    out
}

/// Product in `A ⊗_σ (TA, ⧢_{−σ}) ⊗_σ A`.
pub fn braided_product(sol: &Solution, a: &BarChain, b: &BarChain, ring: Ring) -> BarElement {
    // a₁·b₀ = c·p with c moving left across a's middle and p right across b's
    let (mut c, mut p) = sol.braid_words(&a.right, &b.left);
    let mut t = a.middle.clone();
    for entry in t.iter_mut().rev() {
        let (c_new, e_new) = sol.braid_words(entry, &c);
        *entry = e_new;
        c = c_new;
    }
    let mut s = b.middle.clone();
    for entry in s.iter_mut() {
        let (e_new, p_new) = sol.braid_words(&p, entry);
        *entry = e_new;
        p = p_new;
    }
    let left = concat(&a.left, &c);
    let right = concat(&p, &b.right);
    let mut out = BarElement::zero(ring);
    for (middle, coeff) in shuffle_words(sol, &t, &s, ring) {
        out.add_term(BarChain::new(sol, &left, &middle, &right), coeff);
    }
    out
}

pub fn braided_product_elements(sol: &Solution, a: &BarElement, b: &BarElement) -> BarElement {
    let ring = a.ring();
    let mut out = BarElement::zero(ring);
    for (x, c) in a {
        for (y, d) in b {
            out.add_scaled(&braided_product(sol, x, y, ring), &(c * d));
        }
    }
    out
}

fn random_letters(rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> Vec<usize> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| rng.gen_range(0..n)).collect()
}

fn random_chain(rng: &mut ChaCha8Rng, sol: &Solution, max_middle: usize) -> BarChain {
    let n = sol.n();
    let k = rng.gen_range(0..=max_middle);
    let middle: Vec<Vec<usize>> = (0..k).map(|_| random_letters(rng, n, 2)).collect();
    BarChain::new(sol, &random_letters(rng, n, 2), &middle, &random_letters(rng, n, 2))
}

fn random_monomial(rng: &mut ChaCha8Rng, sol: &Solution, max_len: usize) -> NormalMonomial {
    let n = sol.n();
    let len = rng.gen_range(0..=max_len);
    let word = Word(
        (0..len)
            .map(|_| {
                let x = rng.gen_range(0..n);
                match rng.gen_range(0..3) {
                    0 => Letter::plain(x),
                    1 => Letter::primed(x),
                    _ => Letter::e(x),
                }
            })
            .collect(),
    );
    Bialgebra::new(sol, Ring::Integers).normalize(&word)
}

/// Comparison map against the differentials, `b′∘b′ = 0`, `m∘σ = m`,
/// associativity of the braided product and multiplicativity of the
/// comparison map. All over ℤ.
pub fn verify_chain_map(sol: &Solution, max_degree: usize, samples: usize, seed: u64) -> Report {
    let ring = Ring::Integers;
    let n = sol.n();
    let b = Bialgebra::new(sol, ring);
    let mut report = Report::new("comparison map");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut monomials: Vec<NormalMonomial> =
        (0..=max_degree).flat_map(|k| tuples(n, k)).map(|t| NormalMonomial::e_word(&t)).collect();
    let e_count = monomials.len();
    monomials.extend((0..samples).map(|_| random_monomial(&mut rng, sol, 5)));
    let witness = monomials.par_iter().find_map_first(|m| {
        let lhs = comparison_element(sol, &b.d_monomial(m));
        let rhs = bar_differential_element(sol, &comparison_map(sol, m, ring)).negated();
        (lhs != rhs).then(|| format!("{}", m.to_word()))
    });
    report.push(Check::from_witness(
        format!("comparison ∘ d = −b′ ∘ comparison ({e_count} e-monomials + sampled)"),
        monomials.len(),
        witness,
    ));

    let chains: Vec<BarChain> = (0..samples).map(|_| random_chain(&mut rng, sol, 4)).collect();
    let witness = chains.par_iter().find_map_first(|c| {
        let dd = bar_differential_element(sol, &bar_differential(sol, c, ring));
        (!dd.is_zero()).then(|| c.to_string())
    });
    report.push(Check::from_witness("b′ ∘ b′ = 0", chains.len(), witness));

    let pairs = tuples(n, 2);
    let witness = pairs.iter().find_map(|t| {
        let (z, w) = sol.sigma(t[0], t[1]);
        (m_canonical(sol, t) != m_canonical(sol, &[z, w])).then(|| format!("({},{})", t[0], t[1]))
    });
    report.push(Check::from_witness("m ∘ σ = m", pairs.len(), witness));

    let triples: Vec<[BarChain; 3]> = (0..samples / 4)
        .map(|_| [random_chain(&mut rng, sol, 2), random_chain(&mut rng, sol, 2), random_chain(&mut rng, sol, 2)])
        .collect();
    let witness = triples.par_iter().find_map_first(|[x, y, z]| {
        let xy = braided_product(sol, x, y, ring);
        let lhs = braided_product_elements(sol, &xy, &BarElement::from_key(ring, z.clone()));
        let yz = braided_product(sol, y, z, ring);
        let rhs = braided_product_elements(sol, &BarElement::from_key(ring, x.clone()), &yz);
        (lhs != rhs).then(|| format!("{x} · {y} · {z}"))
    });
    report.push(Check::from_witness("braided product associative", triples.len(), witness));

    let mpairs: Vec<(NormalMonomial, NormalMonomial)> = (0..samples)
        .map(|_| (random_monomial(&mut rng, sol, 4), random_monomial(&mut rng, sol, 4)))
        .collect();
    let witness = mpairs.par_iter().find_map_first(|(x, y)| {
        let lhs = comparison_map(sol, &b.mul_monomials(x, y), ring);
        let rhs = braided_product_elements(sol, &comparison_map(sol, x, ring), &comparison_map(sol, y, ring));
        (lhs != rhs).then(|| format!("{} · {}", x.to_word(), y.to_word()))
    });
    report.push(Check::from_witness("comparison map is multiplicative", mpairs.len(), witness));
    report
}

/// Reduced-word independence of lifts on `S_k`, shuffle associativity and
/// the symmetrizer against its brute-force sum.
pub fn verify_symmetrizer(sol: &Solution, max_k: usize, ring: Ring) -> Report {
    let n = sol.n();
    let mut report = Report::new("quantum symmetrizer");
    for sign in [BraidSign::Plus, BraidSign::Minus] {
        let mut cases = 0;
        let mut witness = None;
        for s in permutations(max_k) {
            let (w1, w2) = (reduced_word(&s), reduced_word_alt(&s));
            for t in tuples(n, max_k) {
                cases += 1;
                let v = TensorVector::basis(ring, &t);
                if witness.is_none() && apply_word(sol, &w1, &v, sign) != apply_word(sol, &w2, &v, sign) {
                    witness = Some(format!("{s:?} on {t:?}"));
                }
            }
        }
        report.push(Check::from_witness(format!("{sign:?}: lifts independent of reduced word"), cases, witness));
    }
    let mut cases = 0;
    let mut witness = None;
    for total in 0..=max_k {
        for t in tuples(n, total) {
            for i in 0..=total {
                for j in i..=total {
                    cases += 1;
                    let part = |a: usize, b: usize| TensorVector::basis(ring, &t[a..b]);
                    let (u, v, w) = (part(0, i), part(i, j), part(j, total));
                    let lhs = shuffle_product(sol, &shuffle_product(sol, &u, &v, BraidSign::Minus), &w, BraidSign::Minus);
                    let rhs = shuffle_product(sol, &u, &shuffle_product(sol, &v, &w, BraidSign::Minus), BraidSign::Minus);
                    if witness.is_none() && lhs != rhs {
                        witness = Some(format!("{t:?} split at {i},{j}"));
                    }
                }
            }
        }
    }
    report.push(Check::from_witness("shuffle product associative", cases, witness));
    let mut cases = 0;
    let mut witness = None;
    for k in 0..=max_k {
        for t in tuples(n, k) {
            cases += 1;
            let a = quantum_symmetrizer(sol, &t, ring, BraidSign::Minus);
            if witness.is_none() && a != symmetrizer_brute_force(sol, &t, ring, BraidSign::Minus) {
                witness = Some(format!("{t:?}"));
            }
        }
    }
    report.push(Check::from_witness("shuffle symmetrizer = Σ over S_n", cases, witness));
    report
}

// ---------------------------------------------------------------------------
// the image complex f(B) ⊆ A ⊗ TA ⊗ A

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImageRow {
    pub length: usize,
    pub degree: usize,
    pub rank_image: usize,
    pub homology: usize,
}

/// Homology of `(f(B), b′)` by word length, over a field:
/// `H_k = rk F_k − rk(F_{k−1}D_k) − rk(F_k D_{k+1})`.
pub fn image_complex_homology(sol: &Solution, ring: Ring, max_length: usize) -> Result<Vec<ImageRow>, LinAlgError> {
    if !ring.is_field() {
        return Err(LinAlgError::NotAField(ring));
    }
    let b = Bialgebra::new(sol, ring);
    let n = sol.n();
    let classes: Vec<Vec<Vec<usize>>> = (0..=max_length).map(|l| monoid_classes(sol, l)).collect();
    let mut rows = Vec::new();
    for length in 0..=max_length {
        let basis = |k: usize| -> Vec<NormalMonomial> {
            let mut out = Vec::new();
            if k > length {
                return out;
            }
            for a in 0..=length - k {
                for pa in &classes[a] {
                    for tau in tuples(n, k) {
                        for pc in &classes[length - k - a] {
                            out.push(NormalMonomial { primed: pa.clone(), evec: tau.clone(), plain: pc.clone() });
                        }
                    }
                }
            }
            out
        };
        let bases: Vec<Vec<NormalMonomial>> = (0..=length + 1).map(basis).collect();
        let mut index: Vec<HashMap<BarChain, usize>> = vec![HashMap::new(); length + 2];
        let matrix = |k: usize, images: Vec<BarElement>, index: &mut Vec<HashMap<BarChain, usize>>| {
            let cols: Vec<_> = images
                .into_iter()
                .map(|e| {
                    e.into_iter()
                        .map(|(c, v)| {
                            let next = index[k].len();
                            (*index[k].entry(c).or_insert(next), v)
                        })
                        .collect()
                })
                .collect();
            cols
        };
        let mut f_cols = Vec::new();
        let mut fd_cols = Vec::new();
        for k in 0..=length + 1 {
            let f_images: Vec<BarElement> = bases[k].par_iter().map(|m| comparison_map(sol, m, ring)).collect();
            f_cols.push(matrix(k, f_images, &mut index));
            let fd_images: Vec<BarElement> = if k == 0 {
                Vec::new()
            } else {
                bases[k].par_iter().map(|m| comparison_element(sol, &b.d_monomial(m))).collect()
            };
            fd_cols.push(if k == 0 { Vec::new() } else { matrix(k - 1, fd_images, &mut index) });
        }
        let rank = |cols: &Vec<std::collections::BTreeMap<usize, Scalar>>, rows: usize| -> Result<usize, LinAlgError> {
            ExactMatrix::from_columns(ring, rows, cols.clone()).rank()
        };
        let rf: Vec<usize> =
            (0..=length + 1).map(|k| rank(&f_cols[k], index[k].len())).collect::<Result<_, _>>()?;
        let rfd: Vec<usize> = (0..=length + 1)
            .map(|k| if k == 0 { Ok(0) } else { rank(&fd_cols[k], index[k - 1].len()) })
            .collect::<Result<_, _>>()?;
        for k in 0..=length {
            rows.push(ImageRow { length, degree: k, rank_image: rf[k], homology: rf[k] - rfd[k] - rfd[k + 1] });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Ring {
        Ring::Rationals
    }

    #[test]
    fn reduced_words_have_inversion_length() {
        for s in permutations(4) {
            let inv = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| s[i] > s[j]).count();
            assert_eq!(reduced_word(&s).len(), inv);
            assert_eq!(reduced_word_alt(&s).len(), inv);
        }
    }

    #[test]
    fn lift_moves_factors_for_flip() {
        let f = Solution::flip(4);
        let v = TensorVector::basis(q(), &[0, 1, 2, 3]);
        let s = vec![2, 0, 3, 1];
        let out = lift_apply(&f, &s, &v, BraidSign::Plus).unwrap();
        assert_eq!(out, TensorVector::basis(q(), &[1, 3, 0, 2]));
        assert!(lift_apply(&f, &[0, 1], &v, BraidSign::Plus).is_err());
    }

    #[test]
    fn degree_two_shuffles() {
        let s = Solution::builtin("dihedral_3").unwrap();
        let (x, y) = (0, 1);
        let (z, t) = s.sigma(x, y);
        let got = quantum_symmetrizer(&s, &[x, y], q(), BraidSign::Minus);
        let mut expected = Combination::from_key(q(), vec![x, y]);
        expected.add_int(vec![z, t], -1);
        assert_eq!(got.coeffs, expected);
        let f = Solution::flip(2);
        assert!(quantum_symmetrizer(&f, &[1, 1], q(), BraidSign::Minus).is_zero());
        let one = TensorVector::basis(q(), &[]);
        let v = TensorVector::basis(q(), &[0, 1]);
        assert_eq!(shuffle_product(&s, &one, &v, BraidSign::Minus), v);
    }

    #[test]
    fn exterior_algebra_dims() {
        let dims: Vec<usize> = nichols_dims(&Solution::flip(3), 4, q()).unwrap().iter().map(|d| d.dim).collect();
        assert_eq!(dims, vec![1, 3, 3, 1, 0]);
        let dims: Vec<usize> =
            nichols_dims(&Solution::builtin("id_2").unwrap(), 2, q()).unwrap().iter().map(|d| d.dim).collect();
        assert_eq!(dims, vec![1, 2, 0]);
    }

    #[test]
    fn bar_examples() {
        let f = Solution::flip(2);
        let c = BarChain::new(&f, &[], &[vec![0], vec![1]], &[]);
        let d = bar_differential(&f, &c, Ring::Integers);
        let mut expected = BarElement::zero(Ring::Integers);
        expected.add_int(BarChain::new(&f, &[0], &[vec![1]], &[]), 1);
        expected.add_int(BarChain::new(&f, &[], &[vec![0, 1]], &[]), -1);
        expected.add_int(BarChain::new(&f, &[], &[vec![0]], &[1]), 1);
        assert_eq!(d, expected);
        assert!(bar_differential_element(&f, &d).is_zero());
    }

    #[test]
    fn comparison_degree_one() {
        let s = Solution::builtin("dihedral_3").unwrap();
        let z = Ring::Integers;
        let m = NormalMonomial::e_word(&[2]);
        let fm = comparison_map(&s, &m, z);
        assert_eq!(fm, BarElement::from_key(z, BarChain::new(&s, &[], &[vec![2]], &[])));
        let lhs = comparison_element(&s, &Bialgebra::new(&s, z).d_monomial(&m));
        assert_eq!(lhs, bar_differential_element(&s, &fm).negated());
        assert_eq!(
            comparison_map(&s, &NormalMonomial::one(), z),
            BarElement::from_key(z, BarChain::new(&s, &[], &[], &[]))
        );
    }

    #[test]
    fn chain_map_suite_small() {
        for name in ["flip_2", "dihedral_3", "perm_cycle3"] {
            let s = Solution::builtin(name).unwrap();
            let rep = verify_chain_map(&s, 3, 60, 5);
            assert!(rep.all_passed(), "{name}: {rep}");
        }
    }

    #[test]
    fn flip_image_complex_is_a_resolution() {
        let rows = image_complex_homology(&Solution::flip(2), q(), 3).unwrap();
        assert!(rows.iter().filter(|r| r.degree >= 1).all(|r| r.homology == 0), "{rows:?}");
    }
}
