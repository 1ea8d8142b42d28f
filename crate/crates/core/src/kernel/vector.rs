use std::collections::BTreeMap;

use super::{Rational, Scalar};

/// Sparse coordinate vector; absent coordinates are zero and zeros are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseVec<S> {
    entries: BTreeMap<usize, S>,
}

impl<S> Default for SparseVec<S> {
    fn default() -> Self {
        SparseVec {
            entries: BTreeMap::new(),
        }
    }
}

impl<S: Scalar> SparseVec<S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(i: usize, c: S) -> Self {
        let mut v = Self::new();
        v.add_at(i, &c);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&S> {
        self.entries.get(&i)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &S)> {
        self.entries.iter().map(|(&i, c)| (i, c))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.keys().next_back().copied()
    }

    pub fn add_at(&mut self, i: usize, c: &S) {
        if c.is_zero() {
            return;
        }
        match self.entries.get_mut(&i) {
            Some(e) => {
                e.accumulate(c);
                if e.is_zero() {
                    self.entries.remove(&i);
                }
            }
            None => {
                self.entries.insert(i, c.clone());
            }
        }
    }

    pub fn sub_at(&mut self, i: usize, c: &S) {
        self.add_at(i, &c.negated());
    }

    pub fn add_vec(&mut self, other: &SparseVec<S>) {
        for (i, c) in other.iter() {
            self.add_at(i, c);
        }
    }

    pub fn sub_vec(&mut self, other: &SparseVec<S>) {
        for (i, c) in other.iter() {
            self.sub_at(i, c);
        }
    }

    pub fn add_scaled(&mut self, other: &SparseVec<S>, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (i, a) in other.iter() {
            self.add_at(i, &a.scaled(c));
        }
    }

    pub fn add_times(&mut self, other: &SparseVec<S>, c: &S) {
        for (i, a) in other.iter() {
            self.add_at(i, &a.times(c));
        }
    }

    pub fn plus(mut self, other: &SparseVec<S>) -> Self {
        self.add_vec(other);
        self
    }

    pub fn minus(mut self, other: &SparseVec<S>) -> Self {
        self.sub_vec(other);
        self
    }

    pub fn negated(&self) -> Self {
        SparseVec {
            entries: self.entries.iter().map(|(&i, c)| (i, c.negated())).collect(),
        }
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        let mut out = Self::new();
        out.add_scaled(self, c);
        out
    }

    /// Adds `offset` to every index.
    pub fn shifted(&self, offset: usize) -> Self {
        SparseVec {
            entries: self.entries.iter().map(|(&i, c)| (i + offset, c.clone())).collect(),
        }
    }

    /// Keeps indices in `lo..hi`, re-indexed from zero.
    pub fn window(&self, lo: usize, hi: usize) -> Self {
        SparseVec {
            entries: self.entries.range(lo..hi).map(|(&i, c)| (i - lo, c.clone())).collect(),
        }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> SparseVec<T> {
        let mut out = SparseVec::new();
        for (i, c) in self.iter() {
            out.add_at(i, &f(c));
        }
        out
    }
}

impl SparseVec<Rational> {
    pub fn basis(i: usize) -> Self {
        Self::single(i, Rational::one())
    }

    /// Multiplies every coefficient into `S` by scaling `c`.
    pub fn scale_into<S: Scalar>(&self, c: &S) -> SparseVec<S> {
        self.map(|a| c.scaled(a))
    }
}

impl<S: Scalar> FromIterator<(usize, S)> for SparseVec<S> {
    fn from_iter<I: IntoIterator<Item = (usize, S)>>(iter: I) -> Self {
        let mut v = SparseVec::new();
        for (i, c) in iter {
            v.add_at(i, &c);
        }
        v
    }
}
