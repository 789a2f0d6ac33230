//! The reduction system on words in the letters `x`, `x′`, `e_x`:
//!
//! ```text
//! r1: x y′  → z′ t
//! r2: x e_y → e_z t
//! r3: e_x y′ → z′ e_t        where σ(x,y) = (z,t)
//! ```
//!
//! Irreducible words have the shape `(primed word)(e-word)(plain word)`. The
//! primed and plain segments are further reduced to a canonical
//! representative of their class in the monoid `M = ⟨X | xy = zt⟩`, the
//! lexicographically least word in the σ-orbit.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::solution::Solution;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum LetterKind {
    Primed,
    E,
    Plain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Letter {
    pub kind: LetterKind,
    pub idx: usize,
}

impl Letter {
    pub fn plain(idx: usize) -> Self {
        Letter { kind: LetterKind::Plain, idx }
    }

    pub fn primed(idx: usize) -> Self {
        Letter { kind: LetterKind::Primed, idx }
    }

    pub fn e(idx: usize) -> Self {
        Letter { kind: LetterKind::E, idx }
    }

    /// Super-degree: 1 for `e_x`, 0 otherwise.
    pub fn parity(&self) -> usize {
        usize::from(self.kind == LetterKind::E)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            LetterKind::Plain => write!(f, "x{}", self.idx),
            LetterKind::Primed => write!(f, "x{}'", self.idx),
            LetterKind::E => write!(f, "e{}", self.idx),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(&other.0).copied().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Rule {
    R1,
    R2,
    R3,
}

/// An irreducible word `a′ · e_B · c`, with `a` and `c` canonical in `M`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct NormalMonomial {
    pub primed: Vec<usize>,
    pub evec: Vec<usize>,
    pub plain: Vec<usize>,
}

impl NormalMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn e_word(evec: &[usize]) -> Self {
        NormalMonomial { evec: evec.to_vec(), ..Default::default() }
    }

    /// Number of `e` letters.
    pub fn degree(&self) -> usize {
        self.evec.len()
    }

    pub fn len(&self) -> usize {
        self.primed.len() + self.evec.len() + self.plain.len()
    }

    pub fn is_one(&self) -> bool {
        self.len() == 0
    }

    pub fn is_empty(&self) -> bool {
        self.is_one()
    }

    pub fn to_word(&self) -> Word {
        Word(
            self.primed
                .iter()
                .map(|&i| Letter::primed(i))
                .chain(self.evec.iter().map(|&i| Letter::e(i)))
                .chain(self.plain.iter().map(|&i| Letter::plain(i)))
                .collect(),
        )
    }
}

impl fmt::Display for NormalMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_word())
    }
}

/// Applies the rule matching the factor starting at `pos`, if any.
pub fn reduce_at(sol: &Solution, w: &Word, pos: usize) -> Option<(Word, Rule)> {
    let letters = w.letters();
    let (a, b) = (*letters.get(pos)?, *letters.get(pos + 1)?);
    let (rule, new) = match (a.kind, b.kind) {
        (LetterKind::Plain, LetterKind::Primed) => {
            let (z, t) = sol.sigma(a.idx, b.idx);
            (Rule::R1, [Letter::primed(z), Letter::plain(t)])
        }
        (LetterKind::Plain, LetterKind::E) => {
            let (z, t) = sol.sigma(a.idx, b.idx);
            (Rule::R2, [Letter::e(z), Letter::plain(t)])
        }
        (LetterKind::E, LetterKind::Primed) => {
            let (z, t) = sol.sigma(a.idx, b.idx);
            (Rule::R3, [Letter::primed(z), Letter::e(t)])
        }
        _ => return None,
    };
    let mut out = letters.to_vec();
    out[pos] = new[0];
    out[pos + 1] = new[1];
    Some((Word(out), rule))
}

fn reducible_at(w: &[Letter], pos: usize) -> bool {
    matches!(
        (w[pos].kind, w[pos + 1].kind),
        (LetterKind::Plain, LetterKind::Primed)
            | (LetterKind::Plain, LetterKind::E)
            | (LetterKind::E, LetterKind::Primed)
    )
}

/// Positions where some rule applies.
pub fn redexes(w: &Word) -> Vec<usize> {
    (0..w.len().saturating_sub(1)).filter(|&i| reducible_at(&w.0, i)).collect()
}

pub fn is_irreducible(w: &Word) -> bool {
    redexes(w).is_empty()
}

/// One leftmost reduction step.
pub fn reduce_once(sol: &Solution, w: &Word) -> Option<(Word, Rule, usize)> {
    let pos = (0..w.len().saturating_sub(1)).find(|&i| reducible_at(&w.0, i))?;
    let (out, rule) = reduce_at(sol, w, pos)?;
    Some((out, rule, pos))
}

/// Sum of right-to-left positions of plain letters plus left-to-right
/// positions of primed letters (positions are 1-based).
pub fn disdeg(w: &Word) -> usize {
    let n = w.len();
    w.0.iter()
        .enumerate()
        .map(|(i, l)| match l.kind {
            LetterKind::Plain => n - i,
            LetterKind::Primed => i + 1,
            LetterKind::E => 0,
        })
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionStep {
    pub rule: Rule,
    pub pos: usize,
    pub disdeg_before: usize,
    pub disdeg_after: usize,
}

#[derive(Clone, Copy, Debug)]
pub enum Strategy {
    Leftmost,
    Rightmost,
    Random(u64),
}

/// Reduces to an irreducible word with the given strategy, recording every step.
pub fn reduce_with(sol: &Solution, w: &Word, strategy: Strategy) -> (Word, Vec<ReductionStep>) {
    let mut rng = match strategy {
        Strategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let mut cur = w.clone();
    let mut steps = Vec::new();
    loop {
        let spots = redexes(&cur);
        if spots.is_empty() {
            return (cur, steps);
        }
        let pos = match strategy {
            Strategy::Leftmost => spots[0],
            Strategy::Rightmost => *spots.last().unwrap(),
            Strategy::Random(_) => spots[rng.as_mut().unwrap().gen_range(0..spots.len())],
        };
        let before = disdeg(&cur);
        let (next, rule) = reduce_at(sol, &cur, pos).expect("redex");
        let after = disdeg(&next);
        debug_assert!(after < before, "disorder degree must drop");
        steps.push(ReductionStep { rule, pos, disdeg_before: before, disdeg_after: after });
        cur = next;
    }
}

/// Leftmost reduction to an irreducible word. After a step at `pos` nothing
/// left of `pos-1` can have become reducible, so the scan resumes there.
pub fn reduce_to_irreducible(sol: &Solution, w: &Word) -> Word {
    let mut letters = w.0.clone();
    let mut i = 0;
    while i + 1 < letters.len() {
        if reducible_at(&letters, i) {
            let (a, b) = (letters[i], letters[i + 1]);
            let (z, t) = sol.sigma(a.idx, b.idx);
            let (l, r) = match (a.kind, b.kind) {
                (LetterKind::Plain, LetterKind::Primed) => (Letter::primed(z), Letter::plain(t)),
                (LetterKind::Plain, LetterKind::E) => (Letter::e(z), Letter::plain(t)),
                _ => (Letter::primed(z), Letter::e(t)),
            };
            letters[i] = l;
            letters[i + 1] = r;
            i = i.saturating_sub(1);
        } else {
            i += 1;
        }
    }
    Word(letters)
}

/// Splits an irreducible word into its three segments (no canonicalization).
pub fn split_irreducible(w: &Word) -> NormalMonomial {
    let mut m = NormalMonomial::default();
    for l in &w.0 {
        match l.kind {
            LetterKind::Primed => m.primed.push(l.idx),
            LetterKind::E => m.evec.push(l.idx),
            LetterKind::Plain => m.plain.push(l.idx),
        }
    }
    m
}

pub fn normal_form(sol: &Solution, w: &Word) -> NormalMonomial {
    let mut m = split_irreducible(&reduce_to_irreducible(sol, w));
    m.primed = m_canonical(sol, &m.primed);
    m.plain = m_canonical(sol, &m.plain);
    m
}

/// Same as [`normal_form`], also returning the reduction trace.
pub fn normal_form_traced(sol: &Solution, w: &Word) -> (NormalMonomial, Vec<ReductionStep>) {
    let (irr, steps) = reduce_with(sol, w, Strategy::Leftmost);
    let mut m = split_irreducible(&irr);
    m.primed = m_canonical(sol, &m.primed);
    m.plain = m_canonical(sol, &m.plain);
    (m, steps)
}

/// All words reachable from `w` by adjacent moves `σ_i^{±1}`.
pub fn m_orbit(sol: &Solution, w: &[usize]) -> BTreeSet<Vec<usize>> {
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(w.to_vec());
    queue.push_back(w.to_vec());
    while let Some(cur) = queue.pop_front() {
        for i in 0..cur.len().saturating_sub(1) {
            let (z, t) = sol.sigma(cur[i], cur[i + 1]);
            let mut next = cur.clone();
            next[i] = z;
            next[i + 1] = t;
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
            for (x, y) in sol.preimages(cur[i], cur[i + 1]) {
                let mut prev = cur.clone();
                prev[i] = x;
                prev[i + 1] = y;
                if seen.insert(prev.clone()) {
                    queue.push_back(prev);
                }
            }
        }
    }
    seen.into_iter().collect()
}

/// Canonical representative of the class of `w` in `M`: the least word of
/// its orbit. Whole orbits are memoized on the solution.
pub fn m_canonical(sol: &Solution, w: &[usize]) -> Vec<usize> {
    if w.len() < 2 {
        return w.to_vec();
    }
    if let Some(c) = sol.canon_cache().read().unwrap().get(w) {
        return c.clone();
    }
    let orbit = m_orbit(sol, w);
    let min = orbit.iter().next().unwrap().clone();
    let mut cache = sol.canon_cache().write().unwrap();
    for member in orbit {
        cache.insert(member, min.clone());
    }
    min
}

/// Canonical words of every class of `M` of the given length.
pub fn monoid_classes(sol: &Solution, len: usize) -> Vec<Vec<usize>> {
    let n = sol.n();
    let mut classes = BTreeSet::new();
    let mut word = vec![0usize; len];
    loop {
        classes.insert(m_canonical(sol, &word));
        // odometer
        let mut i = len;
        loop {
            if i == 0 {
                return classes.into_iter().collect();
            }
            i -= 1;
            word[i] += 1;
            if word[i] < n {
                break;
            }
            word[i] = 0;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ambiguity {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub via_r2_first: NormalMonomial,
    pub via_r3_first: NormalMonomial,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ConfluenceReport {
    pub checked: usize,
    pub unresolvable: Vec<Ambiguity>,
    /// Steps in either route that did not lower the disorder degree.
    pub non_decreasing_steps: usize,
}

impl ConfluenceReport {
    pub fn is_confluent(&self) -> bool {
        self.unresolvable.is_empty() && self.non_decreasing_steps == 0
    }
}

/// Resolves every overlap `x e_y z′` both ways: r3∘r1∘r2 and r2∘r1∘r3.
pub fn check_confluence(sol: &Solution) -> ConfluenceReport {
    let n = sol.n();
    let mut report = ConfluenceReport::default();
    let run = |w: &Word, positions: [usize; 3], report: &mut ConfluenceReport| -> Word {
        let mut cur = w.clone();
        for pos in positions {
            let before = disdeg(&cur);
            cur = reduce_at(sol, &cur, pos).expect("route step applies").0;
            if disdeg(&cur) >= before {
                report.non_decreasing_steps += 1;
            }
        }
        debug_assert!(is_irreducible(&cur));
        cur
    };
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let w = Word(vec![Letter::plain(x), Letter::e(y), Letter::primed(z)]);
                // r2 at 0 gives e t z′; r1 at 1 gives e c′ d; r3 at 0
                let a = run(&w, [0, 1, 0], &mut report);
                // r3 at 1 gives x p′ e; r1 at 0 gives r′ s e; r2 at 1
                let b = run(&w, [1, 0, 1], &mut report);
                report.checked += 1;
                if a != b {
                    report.unresolvable.push(Ambiguity {
                        x,
                        y,
                        z,
                        via_r2_first: split_irreducible(&a),
                        via_r3_first: split_irreducible(&b),
                    });
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word(
            s.split_whitespace()
                .map(|t| {
                    if let Some(r) = t.strip_prefix('e') {
                        Letter::e(r.parse().unwrap())
                    } else if let Some(r) = t.strip_suffix('\'') {
                        Letter::primed(r[1..].parse().unwrap())
                    } else {
                        Letter::plain(t[1..].parse().unwrap())
                    }
                })
                .collect(),
        )
    }

    #[test]
    fn single_steps() {
        let r3 = Solution::builtin("dihedral_3").unwrap();
        let (z, t) = r3.sigma(0, 1);
        let (out, rule, pos) = reduce_once(&r3, &w("x0 e1")).unwrap();
        assert_eq!((out, rule, pos), (Word(vec![Letter::e(z), Letter::plain(t)]), Rule::R2, 0));
        assert!(reduce_once(&r3, &w("x0' e1")).is_none());

        let flip = Solution::flip(3);
        let (out, rule, _) = reduce_once(&flip, &w("x1 x2'")).unwrap();
        assert_eq!(out, w("x2' x1"));
        assert_eq!(rule, Rule::R1);
    }

    #[test]
    fn disorder_degree_examples() {
        assert_eq!(disdeg(&w("x0 e1 x2'")), 6);
        assert_eq!(disdeg(&w("x0' e1 x2")), 2);
        assert_eq!(disdeg(&w("x1 e1 x2 x1' x3 x2'")), 22);
        // n(n+1)/2 + k(k+1)/2 for sorted words
        assert_eq!(disdeg(&w("x0' x1' x2' e0 x1 x2")), 6 + 3);
    }

    #[test]
    fn overlap_matches_closed_form() {
        let s = Solution::builtin("dihedral_5").unwrap();
        let (s1, s2) = (|a, b| s.s1(a, b), |a, b| s.s2(a, b));
        for (x, y, z) in [(0, 1, 2), (3, 3, 1), (4, 0, 2)] {
            let nf = normal_form(&s, &w(&format!("x{x} e{y} x{z}'")));
            let a = s1(s1(x, y), s1(s2(x, y), z));
            let b = s2(s1(x, y), s1(s2(x, y), z));
            let c = s2(s2(x, y), z);
            assert_eq!(nf, NormalMonomial { primed: vec![a], evec: vec![b], plain: vec![c] });
            let d = s1(x, s1(y, z));
            let e = s1(s2(x, s1(y, z)), s2(y, z));
            let f = s2(s2(x, s1(y, z)), s2(y, z));
            assert_eq!((a, b, c), (d, e, f));
        }
    }

    #[test]
    fn normal_forms() {
        let flip = Solution::flip(3);
        let m = normal_form(&flip, &w("x1 x2'"));
        assert_eq!(m, NormalMonomial { primed: vec![2], evec: vec![], plain: vec![1] });
        let r3 = Solution::builtin("dihedral_3").unwrap();
        let irr = w("x0' e1 x2");
        assert_eq!(normal_form(&r3, &irr).to_word(), irr);
    }

    #[test]
    fn canonical_words() {
        let flip = Solution::flip(3);
        assert_eq!(m_canonical(&flip, &[2, 0, 1]), vec![0, 1, 2]);
        let id = Solution::builtin("id_3").unwrap();
        assert_eq!(m_canonical(&id, &[2, 0, 1]), vec![2, 0, 1]);
        let r3 = Solution::builtin("dihedral_3").unwrap();
        let (z, t) = r3.sigma(1, 0);
        let (x, y) = r3.sigma_inv(1, 0).unwrap();
        let expected = [vec![1, 0], vec![z, t], vec![x, y]].into_iter().min().unwrap();
        assert_eq!(m_canonical(&r3, &[1, 0]), expected);
        assert_eq!(monoid_classes(&flip, 2).len(), 6);
    }

    #[test]
    fn confluence_on_valid_and_corrupted() {
        for name in ["dihedral_3", "flip_3"] {
            let s = Solution::builtin(name).unwrap();
            let rep = check_confluence(&s);
            assert_eq!(rep.checked, 27);
            assert!(rep.is_confluent(), "{name}");
        }
        let (s1, mut s2) = Solution::builtin("dihedral_3").unwrap().tables();
        s2[0][1] = 0;
        let bad = Solution::from_tables(&s1, &s2, false).unwrap();
        assert!(!check_confluence(&bad).unresolvable.is_empty());
    }

    #[test]
    fn traced_steps_drop_disorder_degree() {
        let s = Solution::builtin("conj_s3").unwrap();
        let word = w("x1 e2 x3 x4' e5 x0 x2' x1'");
        let (nf, steps) = normal_form_traced(&s, &word);
        assert!(steps.iter().all(|st| st.disdeg_after < st.disdeg_before));
        assert!(steps.len() <= disdeg(&word));
        assert_eq!(nf, normal_form(&s, &word));
    }
}
