//! Cup product on `Hom_{A′-A}(B,k)` with trivial coefficients:
//! `(f⌣g)(τ) = Σ c·f(l)·g(r)` over the terms `c·l⊗r` of `Δ(e_τ)` whose left
//! factor has degree `deg f`.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bialgebra::Bialgebra;
use crate::complex::{
    enumerate_cocycles, full_boundary_matrix, is_cocycle, tuples, Cochain, CoefficientSystem,
    ComplexVariant, DegenerateSpans,
};
use crate::error::CupError;
use crate::exactlin::ExactMatrix;
use crate::report::{Check, Report};
use crate::rewrite::NormalMonomial;
use crate::scalar::{Ring, Scalar};
use crate::solution::Solution;

type Split = (Vec<usize>, Vec<usize>, Scalar);

/// The e-parts of `Δ(e_τ)`, cached per tuple.
pub struct CupTable<'a> {
    sol: &'a Solution,
    ring: Ring,
    cache: std::sync::RwLock<HashMap<Vec<usize>, std::sync::Arc<Vec<Split>>>>,
}

impl<'a> CupTable<'a> {
    pub fn new(sol: &'a Solution, ring: Ring) -> Self {
        CupTable { sol, ring, cache: Default::default() }
    }

    fn splits(&self, tau: &[usize]) -> std::sync::Arc<Vec<Split>> {
        if let Some(s) = self.cache.read().unwrap().get(tau) {
            return s.clone();
        }
        let b = Bialgebra::new(self.sol, self.ring);
        let delta = b.comultiply_monomial(&NormalMonomial::e_word(tau));
        let splits: Vec<Split> = delta
            .into_iter()
            .map(|((l, r), c)| (l.evec, r.evec, c))
            .collect();
        let splits = std::sync::Arc::new(splits);
        self.cache.write().unwrap().insert(tau.to_vec(), splits.clone());
        splits
    }

    pub fn cup(&self, f: &Cochain, g: &Cochain) -> Result<Cochain, CupError> {
        if f.ring() != self.ring || g.ring() != self.ring {
            let other = if f.ring() != self.ring { f.ring() } else { g.ring() };
            return Err(CupError::RingMismatch(self.ring, other));
        }
        let p = f.degree();
        let values: Vec<(Vec<usize>, Scalar)> = tuples(self.sol.n(), p + g.degree())
            .into_par_iter()
            .map(|tau| {
                let mut acc = self.ring.zero();
                for (l, r, c) in self.splits(&tau).iter() {
                    if l.len() == p {
                        acc = &acc + &(&(c * &f.get(l)) * &g.get(r));
                    }
                }
                (tau, acc)
            })
            .collect();
        let mut out = Cochain::zero(self.ring, p + g.degree());
        for (t, v) in values {
            out.set(t, v);
        }
        Ok(out)
    }
}

pub fn cup(f: &Cochain, g: &Cochain, sol: &Solution) -> Result<Cochain, CupError> {
    CupTable::new(sol, f.ring()).cup(f, g)
}

/// As [`cup`], refusing non-trivial coefficient systems.
pub fn cup_with(
    f: &Cochain,
    g: &Cochain,
    sol: &Solution,
    coeff: &CoefficientSystem,
) -> Result<Cochain, CupError> {
    if !coeff.is_trivial() {
        return Err(CupError::NonTrivialCoefficients);
    }
    cup(f, g, sol)
}

fn sign(p: usize, ring: Ring) -> Scalar {
    ring.from_i64(if p.is_multiple_of(2) { 1 } else { -1 })
}

/// Either every cochain of each degree ≤ `max_degree` (when `samples` is
/// `None`) or `samples` seeded random choices, over a prime field.
#[derive(Clone, Copy, Debug)]
pub struct CupConfig {
    pub ring: Ring,
    pub max_degree: usize,
    pub samples: Option<usize>,
    pub seed: u64,
}

fn all_cochains(n: usize, degree: usize, ring: Ring) -> Vec<Cochain> {
    let Ring::PrimeField(p) = ring else { panic!("exhaustive enumeration needs a prime field") };
    let size = n.pow(degree as u32);
    let total = (p as usize).checked_pow(size as u32).filter(|&t| t <= 1 << 16).expect("too many cochains");
    (0..total)
        .map(|mut code| {
            let vals: Vec<Scalar> = (0..size)
                .map(|_| {
                    let v = code % p as usize;
                    code /= p as usize;
                    ring.from_i64(v as i64)
                })
                .collect();
            Cochain::from_vector(n, degree, &vals, ring)
        })
        .collect()
}

fn random_cochain(rng: &mut ChaCha8Rng, n: usize, degree: usize, ring: Ring) -> Cochain {
    let Ring::PrimeField(p) = ring else { panic!("random cochains need a prime field") };
    Cochain::from_fn(n, degree, ring, |_| ring.from_i64(rng.gen_range(0..p) as i64))
}

fn random_combination(rng: &mut ChaCha8Rng, basis: &[Cochain], degree: usize, ring: Ring) -> Cochain {
    let Ring::PrimeField(p) = ring else { unreachable!() };
    basis.iter().fold(Cochain::zero(ring, degree), |acc, b| {
        acc.add(&b.scaled(&ring.from_i64(rng.gen_range(0..p) as i64)))
    })
}

/// Membership in the image of `δ_{k−1}`.
struct CoboundaryTest {
    delta: ExactMatrix,
    rank: usize,
}

impl CoboundaryTest {
    fn new(sol: &Solution, ring: Ring, k: usize) -> Self {
        let delta = if k == 0 {
            ExactMatrix::zeros(ring, 1, 0)
        } else {
            full_boundary_matrix(sol, &CoefficientSystem::Trivial, ring, k).transpose()
        };
        let rank = delta.rank().expect("field");
        CoboundaryTest { delta, rank }
    }

    fn contains(&self, c: &Cochain, n: usize) -> bool {
        let mut columns: Vec<_> = (0..self.delta.cols()).map(|j| self.delta.column(j).clone()).collect();
        columns.push(
            c.to_vector(n).into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect(),
        );
        let m = ExactMatrix::from_columns(self.delta.ring(), self.delta.rows(), columns);
        m.rank().expect("field") == self.rank
    }
}

/// Leibniz rule, associativity, closure of cocycles and well-definedness on
/// classes, plus the degree-(1,1) closed form and the subalgebra property of
/// degenerate annihilators.
pub fn verify_cup(sol: &Solution, cfg: CupConfig) -> Report {
    let ring = cfg.ring;
    let n = sol.n();
    let triv = CoefficientSystem::Trivial;
    let table = CupTable::new(sol, ring);
    let cupf = |f: &Cochain, g: &Cochain| table.cup(f, g).expect("same ring");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let top = cfg.max_degree;
    let mut report = Report::new(format!("cup product over {ring}"));

    // cochain pools per degree
    let pool: Vec<Vec<Cochain>> = (0..=top + 1)
        .map(|k| match cfg.samples {
            None if k <= top => all_cochains(n, k, ring),
            _ => Vec::new(),
        })
        .collect();
    let pick = |rng: &mut ChaCha8Rng, k: usize| -> Cochain {
        match cfg.samples {
            None => unreachable!(),
            Some(_) => random_cochain(rng, n, k, ring),
        }
    };
    let degree_pairs: Vec<(usize, usize)> =
        (0..=top).flat_map(|p| (0..=top - p).map(move |q| (p, q))).collect();

    // (a) Leibniz
    let mut pairs: Vec<(Cochain, Cochain)> = Vec::new();
    match cfg.samples {
        None => {
            for &(p, q) in &degree_pairs {
                for f in &pool[p] {
                    for g in &pool[q] {
                        pairs.push((f.clone(), g.clone()));
                    }
                }
            }
        }
        Some(s) => {
            for i in 0..s {
                let (p, q) = degree_pairs[i % degree_pairs.len()];
                pairs.push((pick(&mut rng, p), pick(&mut rng, q)));
            }
        }
    }
    let witness = pairs.iter().find_map(|(f, g)| {
        let lhs = cupf(f, g).coboundary(sol, &triv);
        let rhs = cupf(&f.coboundary(sol, &triv), g)
            .add(&cupf(f, &g.coboundary(sol, &triv)).scaled(&sign(f.degree(), ring)));
        (lhs != rhs).then(|| format!("f={:?} g={:?}", f.values(), g.values()))
    });
    report.push(Check::from_witness("graded Leibniz rule", pairs.len(), witness));

    // (b) associativity
    let mut triples: Vec<(Cochain, Cochain, Cochain)> = Vec::new();
    let degree_triples: Vec<(usize, usize, usize)> = degree_pairs
        .iter()
        .flat_map(|&(p, q)| (0..=top - p - q).map(move |r| (p, q, r)))
        .collect();
    match cfg.samples {
        None => {
            for &(p, q, r) in &degree_triples {
                for f in &pool[p] {
                    for g in &pool[q] {
                        for h in &pool[r] {
                            triples.push((f.clone(), g.clone(), h.clone()));
                        }
                    }
                }
            }
        }
        Some(s) => {
            for i in 0..s {
                let (p, q, r) = degree_triples[i % degree_triples.len()];
                triples.push((pick(&mut rng, p), pick(&mut rng, q), pick(&mut rng, r)));
            }
        }
    }
    let witness = triples.iter().find_map(|(f, g, h)| {
        (cupf(&cupf(f, g), h) != cupf(f, &cupf(g, h)))
            .then(|| format!("f={:?} g={:?} h={:?}", f.values(), g.values(), h.values()))
    });
    report.push(Check::from_witness("associativity", triples.len(), witness));

    // cocycles per degree
    let cocycles: Vec<Vec<Cochain>> = (0..=top)
        .map(|k| match cfg.samples {
            None => pool[k].iter().filter(|f| is_cocycle(f, sol, &triv).is_cocycle).cloned().collect(),
            Some(s) => {
                let basis = enumerate_cocycles(sol, &triv, &ComplexVariant::Full, ring, k)
                    .expect("field")
                    .cocycles;
                (0..s / (top + 1)).map(|_| random_combination(&mut rng, &basis, k, ring)).collect()
            }
        })
        .collect();

    // (c) closure
    let mut cases = 0;
    let mut witness = None;
    for &(p, q) in &degree_pairs {
        for (i, f) in cocycles[p].iter().enumerate() {
            let gs: Vec<&Cochain> = match cfg.samples {
                None => cocycles[q].iter().collect(),
                Some(_) => cocycles[q].iter().skip(i % cocycles[q].len().max(1)).take(1).collect(),
            };
            for g in gs {
                cases += 1;
                let prod = cupf(f, g);
                if witness.is_none() && !is_cocycle(&prod, sol, &triv).is_cocycle {
                    witness = Some(format!("f={:?} g={:?}", f.values(), g.values()));
                }
            }
        }
    }
    report.push(Check::from_witness("cocycle ⌣ cocycle is a cocycle", cases, witness));

    // (d) cocycle ⌣ coboundary and coboundary ⌣ cocycle are coboundaries
    let tests: Vec<CoboundaryTest> = (0..=top).map(|k| CoboundaryTest::new(sol, ring, k)).collect();
    let mut cases = 0;
    let mut witness = None;
    for &(p, q) in degree_pairs.iter().filter(|&&(_, q)| q >= 1) {
        let us: Vec<Cochain> = match cfg.samples {
            None => pool[q - 1].clone(),
            Some(s) => (0..(s / degree_pairs.len()).max(1)).map(|_| pick(&mut rng, q - 1)).collect(),
        };
        for (i, f) in cocycles[p].iter().enumerate() {
            let chosen: Vec<&Cochain> = match cfg.samples {
                None => us.iter().collect(),
                Some(_) => us.iter().skip(i % us.len()).take(1).collect(),
            };
            for u in chosen {
                cases += 1;
                let du = u.coboundary(sol, &triv);
                for prod in [cupf(f, &du), cupf(&du, f)] {
                    if witness.is_none() && !tests[p + q].contains(&prod, n) {
                        witness = Some(format!("f={:?} u={:?}", f.values(), u.values()));
                    }
                }
            }
        }
    }
    report.push(Check::from_witness("cocycle ⌣ coboundary is a coboundary", cases, witness));

    // degree (1,1) closed form
    if top >= 2 {
        let fs: Vec<Cochain> = match cfg.samples {
            None => pool[1].clone(),
            Some(_) => (0..8).map(|_| pick(&mut rng, 1)).collect(),
        };
        let mut witness = None;
        let mut cases = 0;
        for f in &fs {
            for g in &fs {
                let prod = cupf(f, g);
                for t in tuples(n, 2) {
                    cases += 1;
                    let (x, y) = (t[0], t[1]);
                    let (z, w) = sol.sigma(x, y);
                    let expected = &(&f.get(&[w]) * &g.get(&[z])) - &(&f.get(&[y]) * &g.get(&[x]));
                    if witness.is_none() && prod.get(&t) != expected {
                        witness = Some(format!("({x},{y})"));
                    }
                }
            }
        }
        report.push(Check::from_witness("degree (1,1) closed form", cases, witness));
    }

    // annihilators of degenerate spans form subalgebras
    let mut variants = vec![ComplexVariant::FixPairs];
    if sol.is_involutive() {
        variants.push(ComplexVariant::Involutive);
    }
    for variant in variants {
        let Ok(spans) = DegenerateSpans::new(sol, &variant, ring, top) else { continue };
        let mut cases = 0;
        let mut witness = None;
        for &(p, q) in &degree_pairs {
            for _ in 0..8 {
                let f = random_annihilating(&mut rng, &spans, n, p);
                let g = random_annihilating(&mut rng, &spans, n, q);
                cases += 1;
                if witness.is_none() && !cupf(&f, &g).vanishes_on(&spans) {
                    witness = Some(format!("f={:?} g={:?}", f.values(), g.values()));
                }
            }
        }
        report.push(Check::from_witness(
            format!("{variant:?} annihilator is a subalgebra"),
            cases,
            witness,
        ));
    }
    report
}

/// A random cochain vanishing on the degenerate span: free values on the
/// complement, pivot values forced by the echelon basis.
fn random_annihilating(rng: &mut ChaCha8Rng, spans: &DegenerateSpans, n: usize, k: usize) -> Cochain {
    let ring = spans.ring();
    let Ring::PrimeField(p) = ring else { unreachable!() };
    let mut f = Cochain::zero(ring, k);
    let space = spans.space(k);
    for t in space.complement() {
        f.set(t.clone(), ring.from_i64(rng.gen_range(0..p) as i64));
    }
    for v in space.basis() {
        let pivot = v.keys().find(|t| space.complement_index(t).is_none()).unwrap().clone();
        let rest = f.evaluate(&v);
        f.set(pivot, -&rest);
    }
    let _ = n;
    f
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flip_degree_one_product() {
        let s = Solution::flip(3);
        let r = Ring::PrimeField(7);
        let f = Cochain::from_fn(3, 1, r, |t| r.from_i64(t[0] as i64 + 1));
        let g = Cochain::from_fn(3, 1, r, |t| r.from_i64(2 * t[0] as i64 + 5));
        let c = cup(&f, &g, &s).unwrap();
        for t in tuples(3, 2) {
            let e = &(&f.get(&[t[0]]) * &g.get(&[t[1]])) - &(&f.get(&[t[1]]) * &g.get(&[t[0]]));
            assert_eq!(c.get(&t), e);
        }
    }

    #[test]
    fn zero_and_unit() {
        let s = Solution::builtin("dihedral_3").unwrap();
        let r = Ring::PrimeField(3);
        let f = Cochain::from_fn(3, 1, r, |t| r.from_i64(t[0] as i64));
        assert!(cup(&f, &Cochain::zero(r, 1), &s).unwrap().is_zero());
        let one = Cochain::from_fn(3, 0, r, |_| r.one());
        assert_eq!(cup(&one, &f, &s).unwrap(), f);
        assert_eq!(cup(&f, &one, &s).unwrap(), f);
    }

    #[test]
    fn twisted_is_refused() {
        let s = Solution::flip(2);
        let r = Ring::PrimeField(3);
        let f = Cochain::zero(r, 1);
        assert_eq!(
            cup_with(&f, &f, &s, &CoefficientSystem::Twisted(r.from_i64(2))),
            Err(CupError::NonTrivialCoefficients)
        );
    }

    #[test]
    fn small_suite_passes() {
        let s = Solution::flip(2);
        let rep = verify_cup(&s, CupConfig { ring: Ring::PrimeField(2), max_degree: 2, samples: None, seed: 0 });
        assert!(rep.all_passed(), "{rep}");
    }
}
