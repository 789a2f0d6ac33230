//! The differential graded bialgebra `B(X,σ)` in normal coordinates.
//!
//! Every defining relation of `B` equates two monomials, so products of
//! normal monomials are again single normal monomials and the normal
//! monomials form a basis. Super-degree is 1 on `e_x` and 0 on `x`, `x′`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::complex::{tuples, ComplexVariant, DegenerateSpans};
use crate::error::AlgebraError;
use crate::lincomb::Combination;
use crate::report::{Check, Report};
use crate::rewrite::{normal_form, Letter, LetterKind, NormalMonomial, Word};
use crate::scalar::{Ring, Scalar};
use crate::solution::Solution;

pub type Element = Combination<NormalMonomial>;
pub type Tensor2 = Combination<(NormalMonomial, NormalMonomial)>;
pub type Tensor3 = Combination<(NormalMonomial, NormalMonomial, NormalMonomial)>;

#[derive(Clone, Copy, Debug)]
pub struct Bialgebra<'a> {
    sol: &'a Solution,
    ring: Ring,
}

fn sign(ring: Ring, odd: bool) -> Scalar {
    ring.from_i64(if odd { -1 } else { 1 })
}

impl<'a> Bialgebra<'a> {
    pub fn new(sol: &'a Solution, ring: Ring) -> Self {
        Bialgebra { sol, ring }
    }

    pub fn solution(&self) -> &'a Solution {
        self.sol
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn one(&self) -> Element {
        Element::from_key(self.ring, NormalMonomial::one())
    }

    pub fn normalize(&self, w: &Word) -> NormalMonomial {
        normal_form(self.sol, w)
    }

    pub fn word(&self, w: &Word) -> Element {
        Element::from_key(self.ring, self.normalize(w))
    }

    pub fn letter(&self, l: Letter) -> Element {
        self.word(&Word(vec![l]))
    }

    pub fn e_word(&self, evec: &[usize]) -> Element {
        Element::from_key(self.ring, NormalMonomial::e_word(evec))
    }

    pub fn mul_monomials(&self, a: &NormalMonomial, b: &NormalMonomial) -> NormalMonomial {
        self.normalize(&a.to_word().concat(&b.to_word()))
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element, AlgebraError> {
        for r in [a.ring(), b.ring()] {
            if r != self.ring {
                return Err(AlgebraError::RingMismatch(self.ring, r));
            }
        }
        let mut out = Element::zero(self.ring);
        for (ma, ca) in a {
            for (mb, cb) in b {
                out.add_term(self.mul_monomials(ma, mb), ca * cb);
            }
        }
        Ok(out)
    }

    /// `d` on an arbitrary word, as the super-derivation with `d(e_x) = x − x′`.
    pub fn d_word(&self, w: &Word) -> Element {
        let mut out = Element::zero(self.ring);
        let mut parity = false;
        for (i, l) in w.letters().iter().enumerate() {
            if l.kind != LetterKind::E {
                continue;
            }
            let s = sign(self.ring, parity);
            let mut plain = w.clone();
            plain.0[i] = Letter::plain(l.idx);
            out.add_term(self.normalize(&plain), s.clone());
            let mut primed = w.clone();
            primed.0[i] = Letter::primed(l.idx);
            out.add_term(self.normalize(&primed), -&s);
            parity = !parity;
        }
        out
    }

    pub fn d_monomial(&self, m: &NormalMonomial) -> Element {
        self.d_word(&m.to_word())
    }

    pub fn d(&self, a: &Element) -> Element {
        a.flat_map(|m| self.d_monomial(m))
    }

    /// `Δ(a′ e_{x₁}⋯e_{x_n} b) = (a′⊗a′)·Π(x_i′⊗e_{x_i} + e_{x_i}⊗x_i)·(b⊗b)`.
    pub fn comultiply_monomial(&self, m: &NormalMonomial) -> Tensor2 {
        let n = m.evec.len();
        let mut out = Tensor2::zero(self.ring);
        for mask in 0u64..(1u64 << n) {
            // bit i set: e_{x_i} goes to the right factor
            let mut inversions = 0usize;
            let mut right_es = 0usize;
            let mut left = Word(m.primed.iter().map(|&i| Letter::primed(i)).collect());
            let mut right = left.clone();
            for (i, &x) in m.evec.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    left.0.push(Letter::primed(x));
                    right.0.push(Letter::e(x));
                    right_es += 1;
                } else {
                    left.0.push(Letter::e(x));
                    right.0.push(Letter::plain(x));
                    inversions += right_es;
                }
            }
            for &b in &m.plain {
                left.0.push(Letter::plain(b));
                right.0.push(Letter::plain(b));
            }
            out.add_term(
                (self.normalize(&left), self.normalize(&right)),
                sign(self.ring, inversions % 2 == 1),
            );
        }
        out
    }

    pub fn comultiply(&self, a: &Element) -> Tensor2 {
        a.flat_map(|m| self.comultiply_monomial(m))
    }

    /// `(a₁⊗a₂)(b₁⊗b₂) = (−1)^{|a₂||b₁|} a₁b₁⊗a₂b₂`.
    pub fn tensor_mul(&self, s: &Tensor2, t: &Tensor2) -> Tensor2 {
        let mut out = Tensor2::zero(self.ring);
        for ((a1, a2), ca) in s {
            for ((b1, b2), cb) in t {
                let c = &(ca * cb) * &sign(self.ring, a2.degree() * b1.degree() % 2 == 1);
                out.add_term((self.mul_monomials(a1, b1), self.mul_monomials(a2, b2)), c);
            }
        }
        out
    }

    /// `(d⊗1 + 1⊗d)` with `(1⊗d)(a⊗b) = (−1)^{|a|} a⊗db`.
    pub fn d_tensor(&self, t: &Tensor2) -> Tensor2 {
        let mut out = Tensor2::zero(self.ring);
        for ((a, b), c) in t {
            for (da, cd) in &self.d_monomial(a) {
                out.add_term((da.clone(), b.clone()), c * cd);
            }
            let s = &sign(self.ring, a.degree() % 2 == 1) * c;
            for (db, cd) in &self.d_monomial(b) {
                out.add_term((a.clone(), db.clone()), &s * cd);
            }
        }
        out
    }

    pub fn delta_left(&self, t: &Tensor2) -> Tensor3 {
        let mut out = Tensor3::zero(self.ring);
        for ((a, b), c) in t {
            for ((a1, a2), c2) in &self.comultiply_monomial(a) {
                out.add_term((a1.clone(), a2.clone(), b.clone()), c * c2);
            }
        }
        out
    }

    pub fn delta_right(&self, t: &Tensor2) -> Tensor3 {
        let mut out = Tensor3::zero(self.ring);
        for ((a, b), c) in t {
            for ((b1, b2), c2) in &self.comultiply_monomial(b) {
                out.add_term((a.clone(), b1.clone(), b2.clone()), c * c2);
            }
        }
        out
    }

    /// `h` on the free algebra: odd derivation with `h(x) = e_x`,
    /// `h(x′) = −e_x`, `h(e_x) = 0`; summands normalized in `B`.
    pub fn h_word(&self, w: &Word) -> Element {
        let mut out = Element::zero(self.ring);
        let mut parity = false;
        for (i, l) in w.letters().iter().enumerate() {
            let s = match l.kind {
                LetterKind::E => {
                    parity = !parity;
                    continue;
                }
                LetterKind::Plain => sign(self.ring, parity),
                LetterKind::Primed => sign(self.ring, !parity),
            };
            let mut v = w.clone();
            v.0[i] = Letter::e(l.idx);
            out.add_term(self.normalize(&v), s);
        }
        out
    }

    /// `h` on `B/Invo`, reduced modulo the degree-wise spans.
    pub fn homotopy_h(
        &self,
        m: &NormalMonomial,
        spans: &DegenerateSpans,
    ) -> Result<Element, AlgebraError> {
        if let Some((x, y)) = self.sol.first_non_involutive_pair() {
            return Err(AlgebraError::NotInvolutive(x, y));
        }
        Ok(self.reduce_mod(&self.h_word(&m.to_word()), spans))
    }

    /// Reduces the e-part of each term modulo the degenerate span of its degree.
    pub fn reduce_mod(&self, a: &Element, spans: &DegenerateSpans) -> Element {
        let mut out = Element::zero(self.ring);
        for (m, c) in a {
            for (tuple, c2) in &spans.reduce_tuple(&m.evec) {
                let key = NormalMonomial {
                    primed: m.primed.clone(),
                    evec: tuple.clone(),
                    plain: m.plain.clone(),
                };
                out.add_term(key, c * c2);
            }
        }
        out
    }
}

fn random_word(rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word(
        (0..len)
            .map(|_| {
                let idx = rng.gen_range(0..n);
                match rng.gen_range(0..3) {
                    0 => Letter::plain(idx),
                    1 => Letter::primed(idx),
                    _ => Letter::e(idx),
                }
            })
            .collect(),
    )
}

fn first_failure<T: Send + Sync>(items: &[T], f: impl Fn(&T) -> Option<String> + Sync + Send) -> Option<String> {
    items.par_iter().find_map_first(f)
}

/// Every defining relation `lhs ∼ rhs` of `B` for the pair `(x,y)`.
pub fn relations(sol: &Solution, x: usize, y: usize) -> Vec<(Word, Word)> {
    let (z, t) = sol.sigma(x, y);
    use Letter as L;
    vec![
        (Word(vec![L::plain(x), L::plain(y)]), Word(vec![L::plain(z), L::plain(t)])),
        (Word(vec![L::plain(x), L::primed(y)]), Word(vec![L::primed(z), L::plain(t)])),
        (Word(vec![L::primed(x), L::primed(y)]), Word(vec![L::primed(z), L::primed(t)])),
        (Word(vec![L::plain(x), L::e(y)]), Word(vec![L::e(z), L::plain(t)])),
        (Word(vec![L::e(x), L::primed(y)]), Word(vec![L::primed(z), L::e(t)])),
    ]
}

/// Structural identities of `B(X,σ)` over ℤ: `d² = 0`, coassociativity,
/// the coderivation rule, multiplicativity, associativity, Leibniz, and in
/// the involutive case the homotopy checks over ℚ.
pub fn verify_structure(sol: &Solution, max_e_degree: usize, seed: u64) -> Report {
    let ring = Ring::Integers;
    let b = Bialgebra::new(sol, ring);
    let n = sol.n();
    let mut report = Report::new("bialgebra structure");

    let mut emons: Vec<NormalMonomial> = Vec::new();
    for k in 0..=max_e_degree {
        emons.extend(tuples(n, k).into_iter().map(|t| NormalMonomial::e_word(&t)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mixed: Vec<NormalMonomial> =
        (0..200).map(|_| b.normalize(&random_word(&mut rng, n, 5))).collect();

    let dd = |m: &NormalMonomial| {
        let v = b.d(&b.d_monomial(m));
        (!v.is_zero()).then(|| format!("d²({m}) = {v}"))
    };
    let cases: Vec<NormalMonomial> = emons.iter().chain(&mixed).cloned().collect();
    report.push(Check::from_witness("d∘d = 0", cases.len(), first_failure(&cases, dd)));

    let low: Vec<NormalMonomial> =
        emons.iter().filter(|m| m.degree() <= 3.min(max_e_degree)).cloned().collect();
    let letters: Vec<NormalMonomial> = (0..n)
        .flat_map(|x| [Letter::plain(x), Letter::primed(x), Letter::e(x)])
        .map(|l| b.normalize(&Word(vec![l])))
        .collect();
    let coassoc_cases: Vec<NormalMonomial> =
        low.iter().chain(&letters).chain(mixed.iter().take(50)).cloned().collect();
    let coassoc = |m: &NormalMonomial| {
        let delta = b.comultiply_monomial(m);
        let (l, r) = (b.delta_left(&delta), b.delta_right(&delta));
        (l != r).then(|| format!("(Δ⊗1)Δ ≠ (1⊗Δ)Δ on {m}"))
    };
    report.push(Check::from_witness(
        "Δ coassociative",
        coassoc_cases.len(),
        first_failure(&coassoc_cases, coassoc),
    ));

    let coder = |m: &NormalMonomial| {
        let lhs = b.comultiply(&b.d_monomial(m));
        let rhs = b.d_tensor(&b.comultiply_monomial(m));
        (lhs != rhs).then(|| format!("Δd ≠ (d⊗1+1⊗d)Δ on {m}"))
    };
    report.push(Check::from_witness(
        "d is a coderivation",
        coassoc_cases.len(),
        first_failure(&coassoc_cases, coder),
    ));

    let triples: Vec<[NormalMonomial; 3]> = (0..200)
        .map(|_| {
            [0, 1, 2].map(|_| b.normalize(&random_word(&mut rng, n, 3)))
        })
        .collect();
    let mult = |[p, q, _]: &[NormalMonomial; 3]| {
        let lhs = b.comultiply_monomial(&b.mul_monomials(p, q));
        let rhs = b.tensor_mul(&b.comultiply_monomial(p), &b.comultiply_monomial(q));
        (lhs != rhs).then(|| format!("Δ({p}·{q}) ≠ Δ({p})Δ({q})"))
    };
    report.push(Check::from_witness("Δ multiplicative", triples.len(), first_failure(&triples, mult)));

    let assoc = |[p, q, r]: &[NormalMonomial; 3]| {
        let lhs = b.mul_monomials(&b.mul_monomials(p, q), r);
        let rhs = b.mul_monomials(p, &b.mul_monomials(q, r));
        (lhs != rhs).then(|| format!("({p}·{q})·{r} = {lhs} but {p}·({q}·{r}) = {rhs}"))
    };
    report.push(Check::from_witness("product associative", triples.len(), first_failure(&triples, assoc)));

    let leibniz = |[p, q, _]: &[NormalMonomial; 3]| {
        let mp = Element::from_key(ring, p.clone());
        let mq = Element::from_key(ring, q.clone());
        let lhs = b.d_monomial(&b.mul_monomials(p, q));
        let mut rhs = b.multiply(&b.d_monomial(p), &mq).unwrap();
        let second = b.multiply(&mp, &b.d_monomial(q)).unwrap();
        rhs.add_scaled(&second, &sign(ring, p.degree() % 2 == 1));
        (lhs != rhs).then(|| format!("Leibniz fails on {p}·{q}"))
    };
    report.push(Check::from_witness("d Leibniz rule", triples.len(), first_failure(&triples, leibniz)));

    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect();
    let d_rel = |&(x, y): &(usize, usize)| {
        relations(sol, x, y).into_iter().find_map(|(l, r)| {
            (b.d_word(&l) != b.d_word(&r)).then(|| format!("d({l}) ≠ d({r})"))
        })
    };
    report.push(Check::from_witness("d respects relations", pairs.len(), first_failure(&pairs, d_rel)));

    if sol.is_involutive() {
        report.extend(verify_involutive(sol, 500, seed));
    }
    report
}

/// Homotopy checks on `B/Invo` over ℚ: `h` and `d` descend to the
/// quotient, and `hd + dh` is the Euler operator of the grading
/// `deg e_x = deg x₋ = 2`, `deg x₊ = 0` on `samples` seeded monomials.
pub fn verify_involutive(sol: &Solution, samples: usize, seed: u64) -> Report {
    let ring = Ring::Rationals;
    let mut report = Report::new("");
    let spans = match DegenerateSpans::new(sol, &ComplexVariant::Involutive, ring, 6) {
        Ok(s) => s,
        Err(e) => {
            report.push(Check::fail("Invo spans", 0, e.to_string()));
            return report;
        }
    };
    let b = Bialgebra::new(sol, ring);
    let n = sol.n();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect();

    let h_rel = |&(x, y): &(usize, usize)| {
        relations(sol, x, y).into_iter().find_map(|(l, r)| {
            let diff = b.h_word(&l).difference(&b.h_word(&r));
            (!b.reduce_mod(&diff, &spans).is_zero()).then(|| format!("h({l}) ≠ h({r})"))
        })
    };
    report.push(Check::from_witness("h respects relations", pairs.len(), first_failure(&pairs, h_rel)));

    let invo_d = |&(x, y): &(usize, usize)| {
        let (z, t) = sol.sigma(x, y);
        let mut w = b.e_word(&[x, y]);
        w.add_assign(&b.e_word(&[z, t]));
        let dw = b.reduce_mod(&b.d(&w), &spans);
        let hw = b.reduce_mod(&w.flat_map(|m| b.h_word(&m.to_word())), &spans);
        (!dw.is_zero() || !hw.is_zero()).then(|| format!("e{x} e{y} + e{z} e{t}"))
    };
    report.push(Check::from_witness(
        "Invo generators killed by d and h",
        pairs.len(),
        first_failure(&pairs, invo_d),
    ));

    // generators: 0 = e_x, 1 = x₊ = x + x′, 2 = x₋ = x − x′
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let words: Vec<Vec<(u8, usize)>> = (0..samples)
        .map(|_| {
            let len = rng.gen_range(1..=4);
            (0..len).map(|_| (rng.gen_range(0..3u8), rng.gen_range(0..n))).collect()
        })
        .collect();
    let gen = |kind: u8, x: usize| -> Element {
        match kind {
            0 => b.letter(Letter::e(x)),
            k => {
                let mut v = b.letter(Letter::plain(x));
                let p = b.letter(Letter::primed(x));
                if k == 1 {
                    v.add_assign(&p);
                } else {
                    v.sub_assign(&p);
                }
                v
            }
        }
    };
    let euler = |w: &Vec<(u8, usize)>| {
        let mut m = b.one();
        for &(k, x) in w {
            m = b.multiply(&m, &gen(k, x)).unwrap();
        }
        let weight = 2 * w.iter().filter(|(k, _)| *k != 1).count() as i64;
        let h = |a: &Element| a.flat_map(|mono| b.h_word(&mono.to_word()));
        let mut lhs = b.d(&h(&m));
        lhs.add_assign(&h(&b.d(&m)));
        lhs.sub_assign(&m.scaled(&ring.from_i64(weight)));
        let residue = b.reduce_mod(&lhs, &spans);
        (!residue.is_zero()).then(|| {
            let names: Vec<String> = w
                .iter()
                .map(|&(k, x)| match k {
                    0 => format!("e{x}"),
                    1 => format!("x{x}+"),
                    _ => format!("x{x}-"),
                })
                .collect();
            format!("(hd+dh−{weight})({}) = {residue}", names.join(" "))
        })
    };
    report.push(Check::from_witness("hd+dh = Euler operator", words.len(), first_failure(&words, euler)));
    report
}

/// Checks for `ω_O = Σ e_{x_i}e_{y_i}` over each σ-orbit `O`: `dω = 0`,
/// `Δω = x′₀y′₀⊗ω + ω⊗x₀y₀`, and that pushing any `u` through an orbit pair
/// lands in an orbit of the same order.
pub fn omega_checks(sol: &Solution) -> Report {
    let ring = Ring::Integers;
    let b = Bialgebra::new(sol, ring);
    let mut report = Report::new("orbit sums ω");
    let orbits = sol.orbits();

    let omega = |orbit: &Vec<(usize, usize)>| {
        let mut w = Element::zero(ring);
        for &(x, y) in orbit {
            w.add_assign(&b.e_word(&[x, y]));
        }
        w
    };
    let closed = |orbit: &Vec<(usize, usize)>| {
        let dw = b.d(&omega(orbit));
        (!dw.is_zero()).then(|| format!("orbit of {:?}: dω = {dw}", orbit[0]))
    };
    report.push(Check::from_witness("dω = 0", orbits.len(), first_failure(&orbits, closed)));

    let coproduct = |orbit: &Vec<(usize, usize)>| {
        let w = omega(orbit);
        let (x0, y0) = orbit[0];
        let primed = b.normalize(&Word(vec![Letter::primed(x0), Letter::primed(y0)]));
        let plain = b.normalize(&Word(vec![Letter::plain(x0), Letter::plain(y0)]));
        let mut expected = Tensor2::zero(ring);
        for (m, c) in &w {
            expected.add_term((primed.clone(), m.clone()), c.clone());
            expected.add_term((m.clone(), plain.clone()), c.clone());
        }
        let got = b.comultiply(&w);
        (got != expected).then(|| format!("orbit of {:?}: Δω = {}", orbit[0], show_tensor(&got)))
    };
    report.push(Check::from_witness(
        "Δω = x′₀y′₀⊗ω + ω⊗x₀y₀",
        orbits.len(),
        first_failure(&orbits, coproduct),
    ));

    let n = sol.n();
    let conj = |orbit: &Vec<(usize, usize)>| {
        let order = orbit.len();
        let (x0, y0) = orbit[0];
        (0..n).find_map(|u| {
            // u from the left: (Id×σ)(σ×Id)(u,x₀,y₀) = (x̃,ỹ,ũ)
            let (a, c) = sol.sigma(u, x0);
            let (d, _) = sol.sigma(c, y0);
            let left = sol.orbit_order(a, d);
            // u from the right: (σ×Id)(Id×σ)(x₀,y₀,u) = (ũ,x̃,ỹ)
            let (p, q) = sol.sigma(y0, u);
            let (_, r) = sol.sigma(x0, p);
            let right = sol.orbit_order(r, q);
            (left != Some(order) || right != Some(order))
                .then(|| format!("u={u}, pair ({x0},{y0}) of order {order}: {left:?}/{right:?}"))
        })
    };
    report.push(Check::from_witness(
        "conjugates of orbit pairs keep the order",
        orbits.len() * n,
        first_failure(&orbits, conj),
    ));
    report
}

pub fn show_tensor(t: &Tensor2) -> String {
    if t.is_zero() {
        return "0".into();
    }
    t.iter()
        .map(|((a, b), c)| format!("({c})·{a}⊗{b}"))
        .collect::<Vec<_>>()
        .join(" + ")
}
