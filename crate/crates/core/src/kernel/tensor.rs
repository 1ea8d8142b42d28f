use std::collections::BTreeMap;

use super::{LinearMap, Matrix, Rational, Scalar};
use crate::error::{Error, Result};

/// `r = Σ r[a][b] e_a ⊗ f_b` in `V ⊗ W`, stored as the `dim V × dim W` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    pub matrix: Matrix,
}

impl TensorElement {
    pub fn new(matrix: Matrix) -> Self {
        TensorElement { matrix }
    }

    pub fn zeros(left: usize, right: usize) -> Self {
        TensorElement {
            matrix: Matrix::zeros(left, right),
        }
    }

    pub fn left_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn right_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn get(&self, a: usize, b: usize) -> &Rational {
        self.matrix.get(a, b)
    }

    /// Nonzero coefficients `(a, b, r[a][b])`.
    pub fn nonzero(&self) -> Vec<(usize, usize, Rational)> {
        let mut out = Vec::new();
        for a in 0..self.left_dim() {
            for b in 0..self.right_dim() {
                let c = self.get(a, b);
                if !c.is_zero() {
                    out.push((a, b, c.clone()));
                }
            }
        }
        out
    }

    pub fn add(&self, o: &TensorElement) -> Result<TensorElement> {
        Ok(TensorElement::new(self.matrix.add(&o.matrix)?))
    }

    pub fn sub(&self, o: &TensorElement) -> Result<TensorElement> {
        Ok(TensorElement::new(self.matrix.sub(&o.matrix)?))
    }

    pub fn scale(&self, c: &Rational) -> TensorElement {
        TensorElement::new(self.matrix.scale(c))
    }

    /// Flip `σ(a ⊗ b) = b ⊗ a`.
    pub fn twist(&self) -> Result<TensorElement> {
        if self.left_dim() != self.right_dim() {
            return Err(Error::Dimension("twist needs equal tensor factors".into()));
        }
        Ok(TensorElement::new(self.matrix.transpose()))
    }

    /// `(r + σ r) / 2`.
    pub fn symmetric_part(&self) -> Result<TensorElement> {
        Ok(self.add(&self.twist()?)?.scale(&Rational::new(1, 2)))
    }

    /// `(r − σ r) / 2`.
    pub fn skew_part(&self) -> Result<TensorElement> {
        Ok(self.sub(&self.twist()?)?.scale(&Rational::new(1, 2)))
    }

    /// `Σ v ⊗ w ↦ Σ (v,0) ⊗ (0,w)` in `(V⊕W) ⊗ (V⊕W)`.
    pub fn eta_embed(&self) -> TensorElement {
        let (v, w) = (self.left_dim(), self.right_dim());
        let mut m = Matrix::zeros(v + w, v + w);
        m.put_block(0, v, &self.matrix);
        TensorElement::new(m)
    }
}

/// `r^♯ : W* → V`, with the same coordinates as `r` in dual bases.
pub fn sharp(r: &TensorElement) -> LinearMap {
    r.matrix.clone()
}

/// Inverse of [`sharp`]: a map `W* → V` (or `W → V` read through `W ≅ W**`) as a tensor.
pub fn unsharp(f: &LinearMap) -> TensorElement {
    TensorElement::new(f.clone())
}

/// Sparse two-index tensor with coefficients in any scalar ring.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor2<S> {
    pub dims: [usize; 2],
    entries: BTreeMap<(usize, usize), S>,
}

impl<S: Scalar> Tensor2<S> {
    pub fn new(dims: [usize; 2]) -> Self {
        Tensor2 {
            dims,
            entries: BTreeMap::new(),
        }
    }

    pub fn add_at(&mut self, a: usize, b: usize, c: &S) {
        add_entry(&mut self.entries, (a, b), c);
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, a: usize, b: usize) -> Option<&S> {
        self.entries.get(&(a, b))
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &S)> {
        self.entries.iter().map(|(&(a, b), c)| (a, b, c))
    }
}

/// Sparse three-index tensor with coefficients in any scalar ring.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor3<S> {
    pub dims: [usize; 3],
    entries: BTreeMap<(usize, usize, usize), S>,
}

impl<S: Scalar> Tensor3<S> {
    pub fn new(dims: [usize; 3]) -> Self {
        Tensor3 {
            dims,
            entries: BTreeMap::new(),
        }
    }

    pub fn add_at(&mut self, i: usize, j: usize, k: usize, c: &S) {
        add_entry(&mut self.entries, (i, j, k), c);
    }

    pub fn add_tensor(&mut self, o: &Tensor3<S>) {
        for (&key, c) in &o.entries {
            add_entry(&mut self.entries, key, c);
        }
    }

    pub fn sub_tensor(&mut self, o: &Tensor3<S>) {
        for (&key, c) in &o.entries {
            add_entry(&mut self.entries, key, &c.negated());
        }
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

    pub fn get(&self, i: usize, j: usize, k: usize) -> Option<&S> {
        self.entries.get(&(i, j, k))
    }

    /// Entries in lexicographic index order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &S)> {
        self.entries.iter().map(|(&(i, j, k), c)| (i, j, k, c))
    }

    pub fn lowest_order(&self) -> Option<usize> {
        self.entries.values().filter_map(Scalar::lowest_order).min()
    }
}

fn add_entry<K: Ord + Copy, S: Scalar>(m: &mut BTreeMap<K, S>, key: K, c: &S) {
    if c.is_zero() {
        return;
    }
    match m.get_mut(&key) {
        Some(e) => {
            e.accumulate(c);
            if e.is_zero() {
                m.remove(&key);
            }
        }
        None => {
            m.insert(key, c.clone());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sharp_of_basis_tensor() {
        let mut m = Matrix::zeros(2, 2);
        m.set(0, 0, Rational::one());
        let r = TensorElement::new(m);
        assert_eq!(sharp(&r), Matrix::from_ints(&[&[1, 0], &[0, 0]]));
        assert_eq!(unsharp(&sharp(&r)), r);
    }

    #[test]
    fn identity_unsharp_is_canonical_element() {
        let t = unsharp(&Matrix::identity(3));
        let nz = t.nonzero();
        assert_eq!(nz, (0..3).map(|i| (i, i, Rational::one())).collect::<Vec<_>>());
    }

    #[test]
    fn eta_places_block_top_right() {
        let r = TensorElement::new(Matrix::from_ints(&[&[1, 2, 3]]));
        let e = r.eta_embed();
        assert_eq!(e.left_dim(), 4);
        assert_eq!(e.matrix.block(0, 1, 1, 3), r.matrix);
        assert_eq!(e.nonzero().len(), 3);
        assert!(TensorElement::zeros(2, 3).eta_embed().is_zero());
    }

    #[test]
    fn twist_swaps_factors() {
        let r = TensorElement::new(Matrix::from_ints(&[&[0, 1], &[0, 0]]));
        assert_eq!(r.twist().unwrap().matrix, Matrix::from_ints(&[&[0, 0], &[1, 0]]));
        assert!(TensorElement::zeros(1, 2).twist().is_err());
    }
}
