//! Finite formal linear combinations with exact coefficients.

use std::collections::btree_map::{self, BTreeMap};
use std::fmt;

use crate::scalar::{Ring, Scalar};

/// `Σ c_k · k` with keys ordered and zero coefficients never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Combination<K: Ord> {
    ring: Ring,
    terms: BTreeMap<K, Scalar>,
}

impl<K: Ord + Clone> Combination<K> {
    pub fn zero(ring: Ring) -> Self {
        Combination { ring, terms: BTreeMap::new() }
    }

    pub fn from_key(ring: Ring, key: K) -> Self {
        let mut c = Self::zero(ring);
        c.terms.insert(key, ring.one());
        c
    }

    pub fn from_term(key: K, coeff: Scalar) -> Self {
        let mut c = Self::zero(coeff.ring());
        c.add_term(key, coeff);
        c
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, key: &K) -> Option<&Scalar> {
        self.terms.get(key)
    }

    pub fn coeff(&self, key: &K) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, Scalar> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, Scalar> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, key: K, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_int(&mut self, key: K, coeff: i64) {
        let c = self.ring.from_i64(coeff);
        self.add_term(key, c);
    }

    pub fn add_scaled(&mut self, other: &Self, factor: &Scalar) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c * factor);
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &Self) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), -c);
        }
    }

    pub fn scaled(&self, factor: &Scalar) -> Self {
        let mut out = Self::zero(self.ring);
        out.add_scaled(self, factor);
        out
    }

    pub fn negated(&self) -> Self {
        self.scaled(&self.ring.from_i64(-1))
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.sub_assign(other);
        out
    }

    /// Applies a linear map given on keys.
    pub fn flat_map<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> Combination<L>) -> Combination<L> {
        let mut out = Combination::zero(self.ring);
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Relabels keys; colliding keys are summed.
    pub fn map_keys<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> L) -> Combination<L> {
        let mut out = Combination::zero(self.ring);
        for (k, c) in &self.terms {
            out.add_term(f(k), c.clone());
        }
        out
    }

    pub fn map_coeffs(&self, ring: Ring, mut f: impl FnMut(&Scalar) -> Scalar) -> Self {
        let mut out = Self::zero(ring);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), f(c));
        }
        out
    }
}

impl<K: Ord + Clone> IntoIterator for Combination<K> {
    type Item = (K, Scalar);
    type IntoIter = btree_map::IntoIter<K, Scalar>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<'a, K: Ord + Clone> IntoIterator for &'a Combination<K> {
    type Item = (&'a K, &'a Scalar);
    type IntoIter = btree_map::Iter<'a, K, Scalar>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl<K: Ord + Clone + fmt::Display> fmt::Display for Combination<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{k}")?;
            } else {
                write!(f, "({c})·{k}")?;
            }
        }
        Ok(())
    }
}
