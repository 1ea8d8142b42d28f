use std::collections::BTreeSet;

use super::{Jet, Rational, Scalar, SparseVec};
use crate::error::{Error, Result};

/// Structure constants of a bilinear map `U × V → W`: `e_i * f_j = Σ_k c[i][j][k] g_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct BilinearOp<S> {
    left: usize,
    right: usize,
    out: usize,
    table: Vec<SparseVec<S>>,
}

impl<S: Scalar> BilinearOp<S> {
    pub fn zero(left: usize, right: usize, out: usize) -> Self {
        BilinearOp {
            left,
            right,
            out,
            table: vec![SparseVec::new(); left * right],
        }
    }

    /// Rejects out-of-range indices and repeated `(i, j, k)`; drops zero coefficients.
    pub fn from_entries(
        left: usize,
        right: usize,
        out: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, S)>,
    ) -> Result<Self> {
        let mut op = BilinearOp::zero(left, right, out);
        let mut seen = BTreeSet::new();
        for (i, j, k, c) in entries {
            for (idx, dim) in [(i, left), (j, right), (k, out)] {
                if idx >= dim {
                    return Err(Error::IndexOutOfRange { index: idx, dim });
                }
            }
            if !seen.insert((i, j, k)) {
                return Err(Error::DuplicateEntry(vec![i, j, k]));
            }
            op.table[i * right + j].add_at(k, &c);
        }
        Ok(op)
    }

    /// Builds the table from a function on basis pairs.
    pub fn from_fn(left: usize, right: usize, out: usize, f: impl Fn(usize, usize) -> SparseVec<S>) -> Self {
        let mut table = Vec::with_capacity(left * right);
        for i in 0..left {
            for j in 0..right {
                let v = f(i, j);
                debug_assert!(v.max_index().is_none_or(|k| k < out));
                table.push(v);
            }
        }
        BilinearOp {
            left,
            right,
            out,
            table,
        }
    }

    pub fn square(dim: usize) -> Self {
        BilinearOp::zero(dim, dim, dim)
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.left, self.right, self.out)
    }

    pub fn left_dim(&self) -> usize {
        self.left
    }

    pub fn right_dim(&self) -> usize {
        self.right
    }

    pub fn out_dim(&self) -> usize {
        self.out
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(SparseVec::is_zero)
    }

    /// Sorted entries `(i, j, k, c)`.
    pub fn entries(&self) -> Vec<(usize, usize, usize, S)> {
        let mut out = Vec::new();
        for i in 0..self.left {
            for j in 0..self.right {
                for (k, c) in self.product(i, j).iter() {
                    out.push((i, j, k, c.clone()));
                }
            }
        }
        out
    }

    pub fn nnz(&self) -> usize {
        self.table.iter().map(SparseVec::len).sum()
    }

    pub fn product(&self, i: usize, j: usize) -> &SparseVec<S> {
        &self.table[i * self.right + j]
    }

    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> Option<&S> {
        self.product(i, j).get(k)
    }

    pub fn set_product(&mut self, i: usize, j: usize, v: SparseVec<S>) {
        self.table[i * self.right + j] = v;
    }

    pub fn add_to_product(&mut self, i: usize, j: usize, v: &SparseVec<S>) {
        self.table[i * self.right + j].add_vec(v);
    }

    /// `e_i * e_j`.
    pub fn bb(&self, i: usize, j: usize) -> SparseVec<S> {
        self.product(i, j).clone()
    }

    /// `x * e_j`.
    pub fn vb(&self, x: &SparseVec<S>, j: usize) -> SparseVec<S> {
        let mut out = SparseVec::new();
        for (a, c) in x.iter() {
            out.add_times(self.product(a, j), c);
        }
        out
    }

    /// `e_i * y`.
    pub fn bv(&self, i: usize, y: &SparseVec<S>) -> SparseVec<S> {
        let mut out = SparseVec::new();
        for (b, c) in y.iter() {
            out.add_times(self.product(i, b), c);
        }
        out
    }

    /// `x * y`.
    pub fn vv(&self, x: &SparseVec<S>, y: &SparseVec<S>) -> SparseVec<S> {
        let mut out = SparseVec::new();
        for (a, c) in x.iter() {
            for (b, d) in y.iter() {
                out.add_times(self.product(a, b), &c.times(d));
            }
        }
        out
    }

    /// `x * y` for ground-field vectors `x`, `y`.
    pub fn rr(&self, x: &SparseVec<Rational>, y: &SparseVec<Rational>) -> SparseVec<S> {
        let mut out = SparseVec::new();
        for (a, c) in x.iter() {
            for (b, d) in y.iter() {
                out.add_scaled(self.product(a, b), &(c * d));
            }
        }
        out
    }

    /// `x * y` for a ground-field vector `x`.
    pub fn rv(&self, x: &SparseVec<Rational>, y: &SparseVec<S>) -> SparseVec<S> {
        let mut out = SparseVec::new();
        for (a, c) in x.iter() {
            for (b, d) in y.iter() {
                out.add_times(self.product(a, b), &d.scaled(c));
            }
        }
        out
    }

    /// `(x, y) ↦ y * x`.
    pub fn opposite(&self) -> Self {
        BilinearOp::from_fn(self.right, self.left, self.out, |i, j| self.bb(j, i))
    }

    pub fn sum(&self, o: &BilinearOp<S>) -> Result<Self> {
        self.same_dims(o)?;
        Ok(BilinearOp::from_fn(self.left, self.right, self.out, |i, j| {
            self.bb(i, j).plus(o.product(i, j))
        }))
    }

    pub fn difference(&self, o: &BilinearOp<S>) -> Result<Self> {
        self.same_dims(o)?;
        Ok(BilinearOp::from_fn(self.left, self.right, self.out, |i, j| {
            self.bb(i, j).minus(o.product(i, j))
        }))
    }

    pub fn negated(&self) -> Self {
        BilinearOp::from_fn(self.left, self.right, self.out, |i, j| self.product(i, j).negated())
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        BilinearOp::from_fn(self.left, self.right, self.out, |i, j| self.product(i, j).scaled(c))
    }

    /// `x * y − y * x`.
    pub fn antisymmetrized(&self) -> Result<Self> {
        self.difference(&self.opposite())
    }

    /// Transposes each action matrix: `(i, v) ↦ Σ_w c[i][w][v] f_w`.
    pub fn transpose_action(&self) -> Result<Self> {
        if self.right != self.out {
            return Err(Error::Dimension("action tables must be square in the carrier".into()));
        }
        let mut t = BilinearOp::zero(self.left, self.right, self.out);
        for i in 0..self.left {
            for w in 0..self.right {
                for (v, c) in self.product(i, w).iter() {
                    t.table[i * self.right + v].add_at(w, c);
                }
            }
        }
        Ok(t)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> BilinearOp<T> {
        BilinearOp {
            left: self.left,
            right: self.right,
            out: self.out,
            table: self.table.iter().map(|v| v.map(&f)).collect(),
        }
    }

    /// Embeds the table into a larger one with index offsets.
    pub fn place_into(&self, target: &mut BilinearOp<S>, di: usize, dj: usize, dk: usize) {
        for i in 0..self.left {
            for j in 0..self.right {
                let v = self.product(i, j);
                if !v.is_zero() {
                    target.add_to_product(i + di, j + dj, &v.shifted(dk));
                }
            }
        }
    }

    /// The sub-table with `i ∈ [i0, i0+l)`, `j ∈ [j0, j0+r)`, `k ∈ [k0, k0+o)`.
    pub fn extract(&self, (i0, l): (usize, usize), (j0, r): (usize, usize), (k0, o): (usize, usize)) -> BilinearOp<S> {
        BilinearOp::from_fn(l, r, o, |i, j| self.product(i + i0, j + j0).window(k0, k0 + o))
    }

    fn same_dims(&self, o: &BilinearOp<S>) -> Result<()> {
        if self.dims() != o.dims() {
            return Err(Error::Dimension(format!(
                "operation shapes {:?} and {:?}",
                self.dims(),
                o.dims()
            )));
        }
        Ok(())
    }
}

impl BilinearOp<Rational> {
    /// The layer-constant jet extension ("scalar deformation").
    pub fn scalar_deformation(&self, order: usize) -> BilinearOp<Jet> {
        self.map(|c| Jet::constant(c.clone(), order))
    }
}

impl BilinearOp<Jet> {
    /// Assembles `Σ_s layers[s] h^s`.
    pub fn from_layers(layers: &[BilinearOp<Rational>]) -> Result<Self> {
        let first = layers.first().ok_or_else(|| Error::Invalid("no layers".into()))?;
        let (l, r, o) = first.dims();
        if layers.iter().any(|x| x.dims() != (l, r, o)) {
            return Err(Error::Dimension("layers of different shapes".into()));
        }
        let order = layers.len() - 1;
        let mut op = BilinearOp::zero(l, r, o);
        for (s, layer) in layers.iter().enumerate() {
            for (idx, v) in layer.table.iter().enumerate() {
                for (k, c) in v.iter() {
                    let mut jet = Jet::zero(order);
                    jet.set_coeff(s, c.clone());
                    op.table[idx].add_at(k, &jet);
                }
            }
        }
        Ok(op)
    }

    /// Coefficient of `h^s`.
    pub fn layer(&self, s: usize) -> BilinearOp<Rational> {
        self.map(|j| j.coeff(s).clone())
    }

    /// Order of the jets in the table, `None` if the table is empty.
    pub fn jet_order(&self) -> Option<usize> {
        self.table.iter().flat_map(|v| v.iter().map(|(_, j)| j.order())).next()
    }

    /// Division of every coefficient by `h`.
    pub fn div_h(&self) -> Result<Self> {
        let mut op = BilinearOp::zero(self.left, self.right, self.out);
        for (idx, v) in self.table.iter().enumerate() {
            for (k, c) in v.iter() {
                op.table[idx].add_at(k, &c.div_h()?);
            }
        }
        Ok(op)
    }
}
