//! Finite set-theoretic solutions of the Yang-Baxter equation.
//!
//! Elements of `X` are `0..n`. The map `σ(x,y) = (σ¹(x,y), σ²(x,y))` is stored
//! as two dense `n×n` tables, so lookups in the rewriting loops are O(1).

use std::collections::HashMap;
use std::sync::RwLock;

use serde::Serialize;

use crate::error::SolutionError;

/// Built-ins exercised by the "every built-in" verification suites.
pub const STANDARD_BUILTINS: &[&str] = &[
    "flip_2",
    "flip_3",
    "id_2",
    "id_3",
    "dihedral_3",
    "dihedral_5",
    "conj_s3",
    "perm_cycle3",
    "perm_inv3",
    "perm_swap2",
];

/// Involutive built-ins (σ² = Id).
pub const INVOLUTIVE_BUILTINS: &[&str] = &["flip_2", "flip_3", "perm_inv3", "perm_swap2"];

#[derive(Debug)]
pub struct Solution {
    n: usize,
    s1: Vec<usize>,
    s2: Vec<usize>,
    /// For each pair index `x*n+y`, the pair indices mapped onto it.
    preimages: Vec<Vec<usize>>,
    canon: RwLock<HashMap<Vec<usize>, Vec<usize>>>,
}

impl Clone for Solution {
    fn clone(&self) -> Self {
        Solution {
            n: self.n,
            s1: self.s1.clone(),
            s2: self.s2.clone(),
            preimages: self.preimages.clone(),
            canon: RwLock::new(HashMap::new()),
        }
    }
}

impl PartialEq for Solution {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.s1 == other.s1 && self.s2 == other.s2
    }
}

impl Eq for Solution {}

/// What is wrong with a table pair, if anything.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Diagnostics {
    /// Two distinct pairs with the same image.
    pub collision: Option<[usize; 4]>,
    /// A triple on which the two Yang-Baxter composites differ.
    pub ybe_violation: Option<[usize; 3]>,
}

impl Diagnostics {
    pub fn is_valid(&self) -> bool {
        self.collision.is_none() && self.ybe_violation.is_none()
    }

    pub fn first_error(&self) -> Option<SolutionError> {
        if let Some([a, b, c, d]) = self.collision {
            return Some(SolutionError::NotBijective(a, b, c, d));
        }
        self.ybe_violation.map(|[x, y, z]| SolutionError::YbeViolated(x, y, z))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub square_free: bool,
    pub left_invertible: bool,
    pub right_invertible: bool,
    pub birack: bool,
    /// The map `s` with `σ(x, s(x)) = (x, s(x))`, present iff every `x` has
    /// exactly one partner fixed with it.
    pub biquandle_s: Option<Vec<usize>>,
    pub involutive: bool,
    pub fixed_pairs: Vec<(usize, usize)>,
    /// `orbit_orders[x][y]` is the least `N ≥ 1` with `σᴺ(x,y) = (x,y)`.
    pub orbit_orders: Vec<Vec<usize>>,
}

impl Classification {
    pub fn is_biquandle(&self) -> bool {
        self.birack && self.biquandle_s.is_some()
    }
}

impl Solution {
    /// Builds a solution from `σ¹` and `σ²` tables. With `strict`, invalid
    /// tables are rejected; otherwise only the shape is checked and
    /// [`Solution::diagnose`] reports what is wrong.
    pub fn from_tables(
        s1: &[Vec<usize>],
        s2: &[Vec<usize>],
        strict: bool,
    ) -> Result<Solution, SolutionError> {
        let n = s1.len();
        if n == 0 {
            return Err(SolutionError::ShapeMismatch("empty table".into()));
        }
        if s2.len() != n {
            return Err(SolutionError::ShapeMismatch(format!("{} rows vs {} rows", n, s2.len())));
        }
        let mut t1 = Vec::with_capacity(n * n);
        let mut t2 = Vec::with_capacity(n * n);
        for (which, table, flat) in [(1, s1, &mut t1), (2, s2, &mut t2)] {
            for (x, row) in table.iter().enumerate() {
                if row.len() != n {
                    return Err(SolutionError::ShapeMismatch(format!(
                        "row {x} of table {which} has {} entries, expected {n}",
                        row.len()
                    )));
                }
                for &v in row {
                    if v >= n {
                        return Err(SolutionError::ShapeMismatch(format!(
                            "entry {v} in table {which} out of range 0..{n}"
                        )));
                    }
                    flat.push(v);
                }
            }
        }
        let sol = Self::from_flat(n, t1, t2);
        if strict {
            if let Some(err) = sol.diagnose().first_error() {
                return Err(err);
            }
        }
        Ok(sol)
    }

    fn from_flat(n: usize, s1: Vec<usize>, s2: Vec<usize>) -> Solution {
        let mut preimages = vec![Vec::new(); n * n];
        for p in 0..n * n {
            preimages[s1[p] * n + s2[p]].push(p);
        }
        Solution { n, s1, s2, preimages, canon: RwLock::new(HashMap::new()) }
    }

    /// `σ(x,y) = (y, x◁y)` for a rack `(X,◁)`.
    pub fn from_rack(op: &[Vec<usize>]) -> Result<Solution, SolutionError> {
        let n = op.len();
        if n == 0 || op.iter().any(|r| r.len() != n) || op.iter().flatten().any(|&v| v >= n) {
            return Err(SolutionError::ShapeMismatch("rack table must be n×n with entries < n".into()));
        }
        for y in 0..n {
            let mut seen = vec![None; n];
            for x in 0..n {
                if let Some(x0) = seen[op[x][y]] {
                    return Err(SolutionError::NotARack {
                        axiom: "right translation -◁y bijective",
                        witness: vec![x0, x, y],
                    });
                }
                seen[op[x][y]] = Some(x);
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if op[op[x][y]][z] != op[op[x][z]][op[y][z]] {
                        return Err(SolutionError::NotARack {
                            axiom: "self-distributivity",
                            witness: vec![x, y, z],
                        });
                    }
                }
            }
        }
        let s1: Vec<Vec<usize>> = (0..n).map(|_| (0..n).collect()).collect();
        Self::from_tables(&s1, op, true)
    }

    /// `σ(x,y) = (f(y), g(x))`; a solution exactly when `f` and `g` commute.
    pub fn from_permutations(f: &[usize], g: &[usize]) -> Result<Solution, SolutionError> {
        let n = f.len();
        if g.len() != n {
            return Err(SolutionError::ShapeMismatch("permutations of different sizes".into()));
        }
        let s1: Vec<Vec<usize>> = (0..n).map(|_| (0..n).map(|y| f[y]).collect()).collect();
        let s2: Vec<Vec<usize>> = (0..n).map(|x| vec![g[x]; n]).collect();
        Self::from_tables(&s1, &s2, true)
    }

    pub fn builtin(name: &str) -> Result<Solution, SolutionError> {
        let unknown = || SolutionError::UnknownName(name.to_string());
        let sized = |prefix: &str| -> Option<usize> {
            name.strip_prefix(prefix)
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|&n| n >= 1)
        };
        if let Some(n) = sized("flip_") {
            return Ok(Self::flip(n));
        }
        if let Some(n) = sized("trivial_") {
            // trivial rack x◁y = x
            let op: Vec<Vec<usize>> = (0..n).map(|x| vec![x; n]).collect();
            return Self::from_rack(&op);
        }
        if let Some(n) = sized("id_") {
            let s1: Vec<Vec<usize>> = (0..n).map(|x| vec![x; n]).collect();
            let s2: Vec<Vec<usize>> = (0..n).map(|_| (0..n).collect()).collect();
            return Self::from_tables(&s1, &s2, true);
        }
        if let Some(n) = sized("dihedral_") {
            let op: Vec<Vec<usize>> =
                (0..n).map(|x| (0..n).map(|y| (2 * y + n - x) % n).collect()).collect();
            return Self::from_rack(&op);
        }
        match name {
            "conj_s3" => Self::from_rack(&conjugation_s3()),
            "perm_cycle3" => Self::from_permutations(&[1, 2, 0], &[1, 2, 0]),
            "perm_inv3" => Self::from_permutations(&[1, 2, 0], &[2, 0, 1]),
            "perm_swap2" => Self::from_permutations(&[1, 0], &[1, 0]),
            _ => Err(unknown()),
        }
    }

    pub fn flip(n: usize) -> Solution {
        let s1: Vec<Vec<usize>> = (0..n).map(|_| (0..n).collect()).collect();
        let s2: Vec<Vec<usize>> = (0..n).map(|x| vec![x; n]).collect();
        Self::from_tables(&s1, &s2, true).expect("flip is a solution")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn sigma(&self, x: usize, y: usize) -> (usize, usize) {
        let p = x * self.n + y;
        (self.s1[p], self.s2[p])
    }

    #[inline]
    pub fn s1(&self, x: usize, y: usize) -> usize {
        self.s1[x * self.n + y]
    }

    #[inline]
    pub fn s2(&self, x: usize, y: usize) -> usize {
        self.s2[x * self.n + y]
    }

    /// All pairs mapped to `(z,t)`; exactly one for a valid solution.
    pub fn preimages(&self, z: usize, t: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.preimages[z * self.n + t].iter().map(move |&p| (p / self.n, p % self.n))
    }

    pub fn sigma_inv(&self, z: usize, t: usize) -> Option<(usize, usize)> {
        let pre = &self.preimages[z * self.n + t];
        (pre.len() == 1).then(|| (pre[0] / self.n, pre[0] % self.n))
    }

    pub fn sigma_pow(&self, mut x: usize, mut y: usize, k: usize) -> (usize, usize) {
        for _ in 0..k {
            (x, y) = self.sigma(x, y);
        }
        (x, y)
    }

    /// Least `N ≥ 1` with `σᴺ(x,y) = (x,y)`; `None` if `(x,y)` is not periodic
    /// (only possible when σ is not bijective).
    pub fn orbit_order(&self, x: usize, y: usize) -> Option<usize> {
        let (mut a, mut b) = self.sigma(x, y);
        for k in 1..=self.n * self.n {
            if (a, b) == (x, y) {
                return Some(k);
            }
            (a, b) = self.sigma(a, b);
        }
        None
    }

    /// The two sides `(Id×σ)(σ×Id)(Id×σ)` and `(σ×Id)(Id×σ)(σ×Id)` on a triple.
    pub fn ybe_sides(&self, x: usize, y: usize, z: usize) -> ([usize; 3], [usize; 3]) {
        let (a, b) = self.sigma(y, z);
        let (c, d) = self.sigma(x, a);
        let (e, f) = self.sigma(d, b);
        let left = [c, e, f];
        let (a, b) = self.sigma(x, y);
        let (c, d) = self.sigma(b, z);
        let (e, f) = self.sigma(a, c);
        (left, [e, f, d])
    }

    pub fn diagnose(&self) -> Diagnostics {
        let n = self.n;
        let mut diag = Diagnostics::default();
        for pre in &self.preimages {
            if pre.len() > 1 {
                diag.collision = Some([pre[0] / n, pre[0] % n, pre[1] / n, pre[1] % n]);
                break;
            }
        }
        'outer: for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (l, r) = self.ybe_sides(x, y, z);
                    if l != r {
                        diag.ybe_violation = Some([x, y, z]);
                        break 'outer;
                    }
                }
            }
        }
        diag
    }

    pub fn is_valid(&self) -> bool {
        self.diagnose().is_valid()
    }

    pub fn is_involutive(&self) -> bool {
        self.first_non_involutive_pair().is_none()
    }

    pub fn first_non_involutive_pair(&self) -> Option<(usize, usize)> {
        (0..self.n)
            .flat_map(|x| (0..self.n).map(move |y| (x, y)))
            .find(|&(x, y)| self.sigma_pow(x, y, 2) != (x, y))
    }

    pub fn classify(&self) -> Classification {
        let n = self.n;
        let pairs = || (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)));
        let square_free = (0..n).all(|x| self.sigma(x, x) == (x, x));
        let left_invertible = (0..n).all(|x| {
            let mut hit = vec![0usize; n];
            (0..n).for_each(|y| hit[self.s1(x, y)] += 1);
            hit.iter().all(|&h| h == 1)
        });
        let right_invertible = (0..n).all(|y| {
            let mut hit = vec![0usize; n];
            (0..n).for_each(|x| hit[self.s2(x, y)] += 1);
            hit.iter().all(|&h| h == 1)
        });
        let fixed_pairs: Vec<(usize, usize)> =
            pairs().filter(|&(x, y)| self.sigma(x, y) == (x, y)).collect();
        let mut partners = vec![Vec::new(); n];
        for &(x, y) in &fixed_pairs {
            partners[x].push(y);
        }
        let biquandle_s = partners
            .iter()
            .all(|p| p.len() == 1)
            .then(|| partners.iter().map(|p| p[0]).collect());
        let orbit_orders: Vec<Vec<usize>> = (0..n)
            .map(|x| (0..n).map(|y| self.orbit_order(x, y).unwrap_or(0)).collect())
            .collect();
        let involutive = orbit_orders.iter().flatten().all(|&k| k == 1 || k == 2);
        Classification {
            square_free,
            left_invertible,
            right_invertible,
            birack: left_invertible && right_invertible,
            biquandle_s,
            involutive,
            fixed_pairs,
            orbit_orders,
        }
    }

    /// The σ-orbits on `X×X` in order of their least pair; each orbit lists
    /// `(x₀,y₀), σ(x₀,y₀), …`. Non-periodic pairs are skipped.
    pub fn orbits(&self) -> Vec<Vec<(usize, usize)>> {
        let n = self.n;
        let mut seen = vec![false; n * n];
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if seen[x * n + y] || self.orbit_order(x, y).is_none() {
                    continue;
                }
                let mut orbit = vec![(x, y)];
                seen[x * n + y] = true;
                let mut cur = self.sigma(x, y);
                while cur != (x, y) {
                    seen[cur.0 * n + cur.1] = true;
                    orbit.push(cur);
                    cur = self.sigma(cur.0, cur.1);
                }
                out.push(orbit);
            }
        }
        out
    }

    /// σ extended to words: moves the block `v` leftwards across `u`,
    /// returning `(ṽ, ũ)` with `|ṽ| = |v|`, `|ũ| = |u|`.
    pub fn braid_words(&self, u: &[usize], v: &[usize]) -> (Vec<usize>, Vec<usize>) {
        let mut w: Vec<usize> = u.iter().chain(v).copied().collect();
        let p = u.len();
        for j in 0..v.len() {
            // letter at p+j walks left to position j
            let mut pos = p + j;
            while pos > j {
                let (a, b) = self.sigma(w[pos - 1], w[pos]);
                w[pos - 1] = a;
                w[pos] = b;
                pos -= 1;
            }
        }
        let rest = w.split_off(v.len());
        (w, rest)
    }

    pub fn tables(&self) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        let n = self.n;
        let rows = |t: &[usize]| t.chunks(n).map(|r| r.to_vec()).collect::<Vec<_>>();
        (rows(&self.s1), rows(&self.s2))
    }

    pub(crate) fn canon_cache(&self) -> &RwLock<HashMap<Vec<usize>, Vec<usize>>> {
        &self.canon
    }
}

/// Conjugation quandle `x◁y = y⁻¹xy` on the symmetric group on three
/// letters, elements in lexicographic order of their one-line notation.
fn conjugation_s3() -> Vec<Vec<usize>> {
    let perms: Vec<[usize; 3]> = vec![
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
    let compose = |a: [usize; 3], b: [usize; 3]| [a[b[0]], a[b[1]], a[b[2]]];
    let inverse = |a: [usize; 3]| {
        let mut r = [0; 3];
        for i in 0..3 {
            r[a[i]] = i;
        }
        r
    };
    perms
        .iter()
        .map(|&x| perms.iter().map(|&y| index(compose(inverse(y), compose(x, y)))).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flip_tables(n: usize) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        Solution::flip(n).tables()
    }

    #[test]
    fn flip_and_identity_are_solutions() {
        let (s1, s2) = flip_tables(3);
        assert!(Solution::from_tables(&s1, &s2, true).is_ok());
        let id = Solution::builtin("id_3").unwrap();
        assert_eq!(id.sigma(1, 2), (1, 2));
    }

    #[test]
    fn collision_is_reported_before_ybe() {
        let (s1, mut s2) = flip_tables(2);
        s2[0][1] = 1;
        match Solution::from_tables(&s1, &s2, true) {
            Err(SolutionError::NotBijective(..)) => {}
            other => panic!("expected NotBijective, got {other:?}"),
        }
    }

    #[test]
    fn shape_errors() {
        let s1 = vec![vec![0, 1], vec![0]];
        let s2 = vec![vec![0, 1], vec![0, 1]];
        assert!(matches!(
            Solution::from_tables(&s1, &s2, true),
            Err(SolutionError::ShapeMismatch(_))
        ));
        let s1 = vec![vec![0, 5], vec![0, 1]];
        assert!(matches!(
            Solution::from_tables(&s1, &s2, false),
            Err(SolutionError::ShapeMismatch(_))
        ));
    }

    #[test]
    fn rack_constructions() {
        let trivial = Solution::builtin("trivial_2").unwrap();
        assert_eq!(trivial, Solution::flip(2));
        let r3 = Solution::builtin("dihedral_3").unwrap();
        assert_eq!(r3.sigma(0, 1), (1, 2));
        assert!(r3.classify().square_free);
        // x◁y = x+1 mod 2 satisfies both axioms
        assert!(Solution::from_rack(&[vec![1, 1], vec![0, 0]]).is_ok());
        let bad = vec![vec![0, 0, 0], vec![1, 1, 2], vec![2, 2, 1]];
        assert!(matches!(Solution::from_rack(&bad), Err(SolutionError::NotARack { .. })));
    }

    #[test]
    fn classification_examples() {
        let c = Solution::flip(3).classify();
        assert!(c.involutive);
        assert_eq!(c.fixed_pairs, vec![(0, 0), (1, 1), (2, 2)]);
        assert_eq!(c.biquandle_s, Some(vec![0, 1, 2]));
        assert!(c.is_biquandle());

        let r3 = Solution::builtin("dihedral_3").unwrap().classify();
        assert_eq!(r3.biquandle_s, Some(vec![0, 1, 2]));
        assert!(r3.square_free);

        let id = Solution::builtin("id_2").unwrap().classify();
        assert_eq!(id.fixed_pairs.len(), 4);
        assert!(id.involutive);
        assert_eq!(id.biquandle_s, None);
    }

    #[test]
    fn permutation_solutions() {
        let c = Solution::builtin("perm_cycle3").unwrap();
        assert!(!c.is_involutive());
        // σ³(x,y) = (y,x)
        let orders = c.classify().orbit_orders;
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(orders[x][y], if x == y { 3 } else { 6 });
            }
        }
        assert!(Solution::builtin("perm_inv3").unwrap().is_involutive());
        assert!(Solution::from_permutations(&[1, 0, 2], &[1, 2, 0]).is_err());
    }

    #[test]
    fn conjugation_quandle_is_a_quandle() {
        let s = Solution::builtin("conj_s3").unwrap();
        let c = s.classify();
        assert!(c.square_free);
        assert!(c.is_biquandle());
        assert!(!c.involutive);
    }

    #[test]
    fn unknown_builtin() {
        assert!(matches!(Solution::builtin("flip_0"), Err(SolutionError::UnknownName(_))));
        assert!(matches!(Solution::builtin("nope"), Err(SolutionError::UnknownName(_))));
    }

    #[test]
    fn braid_words_respects_lengths_and_monoid_product() {
        let s = Solution::builtin("dihedral_3").unwrap();
        let (v, u) = s.braid_words(&[0, 1], &[2]);
        assert_eq!((v.len(), u.len()), (1, 2));
        // single letters agree with sigma
        let (v, u) = s.braid_words(&[1], &[2]);
        assert_eq!((v[0], u[0]), s.sigma(1, 2));
    }
}
