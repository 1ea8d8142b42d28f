use std::collections::BTreeMap;

use super::{Algebraic, DeformationJet};
use crate::error::{Error, Result};
use crate::kernel::{BilinearOp, Matrix, Rational, SparseVec};
use crate::structures::{ModuleData, StructureKind, StructurePresentation};

/// Two commuting derivations of the total space (base block first for modules).
#[derive(Clone, Debug, PartialEq)]
pub struct DerivationPair {
    pub d1: Matrix,
    pub d2: Matrix,
}

impl DerivationPair {
    pub fn new(d1: Matrix, d2: Matrix) -> Self {
        DerivationPair { d1, d2 }
    }

    /// The same pair acting diagonally on `base ⊕ carrier`.
    pub fn block_diagonal(base: &DerivationPair, carrier: &DerivationPair) -> Result<Self> {
        let glue = |a: &Matrix, c: &Matrix| {
            let mut m = Matrix::zeros(a.rows() + c.rows(), a.cols() + c.cols());
            m.put_block(0, 0, a);
            m.put_block(a.rows(), a.cols(), c);
            m
        };
        Ok(DerivationPair {
            d1: glue(&base.d1, &carrier.d1),
            d2: glue(&base.d2, &carrier.d2),
        })
    }
}

fn is_derivation(op: &BilinearOp<Rational>, d: &Matrix) -> bool {
    let n = op.left_dim();
    (0..n).all(|x| {
        (0..n).all(|y| {
            let lhs = d.apply(op.product(x, y));
            let rhs = op
                .rr(&d.column(x), &SparseVec::basis(y))
                .plus(&op.rr(&SparseVec::basis(x), &d.column(y)));
            lhs == rhs
        })
    })
}

fn preserves_blocks(d: &Matrix, a: usize) -> bool {
    let n = d.rows();
    (0..n).all(|r| (0..n).all(|c| (r < a) == (c < a) || d.get(r, c).is_zero()))
}

/// `x ∗_h y = Σ_s d1^s(x) ∗ d2^s(y) h^s / s!` for every operation, truncated at `h^order`.
///
/// A commutative associative target deforms to an associative jet.
pub fn derive_deformation(target: &Algebraic<Rational>, d: &DerivationPair, order: usize) -> Result<DeformationJet> {
    let mut total = target.total()?;
    if total.kind == StructureKind::CommutativeAssociative {
        total = total.with_kind(StructureKind::Associative)?;
    }
    let n = total.dim();
    for m in [&d.d1, &d.d2] {
        if m.rows() != n || m.cols() != n {
            return Err(Error::Dimension(format!("derivations must be {n}x{n}")));
        }
    }
    if !d.d1.commutes_with(&d.d2)? {
        return Err(Error::NonCommuting);
    }
    if let Algebraic::Module(m) = target {
        let a = m.base.dim();
        if !preserves_blocks(&d.d1, a) || !preserves_blocks(&d.d2, a) {
            return Err(Error::BlockMixing);
        }
    }
    for (role, op) in &total.ops {
        if !is_derivation(op, &d.d1) || !is_derivation(op, &d.d2) {
            return Err(Error::NotDerivation(role.name().to_string()));
        }
    }
    let mut layers = Vec::with_capacity(order + 1);
    let (mut p1, mut p2) = (Matrix::identity(n), Matrix::identity(n));
    for s in 0..=order {
        let f = Rational::inv_factorial(s);
        let cols1: Vec<SparseVec<Rational>> = (0..n).map(|i| p1.column(i)).collect();
        let cols2: Vec<SparseVec<Rational>> = (0..n).map(|i| p2.column(i)).collect();
        let ops: BTreeMap<_, _> = total
            .ops
            .iter()
            .map(|(role, op)| {
                (
                    *role,
                    BilinearOp::from_fn(n, n, n, |i, j| op.rr(&cols1[i], &cols2[j]).scaled(&f)),
                )
            })
            .collect();
        layers.push(StructurePresentation::new(total.space.clone(), total.kind, ops)?);
        p1 = p1.mul(&d.d1)?;
        p2 = p2.mul(&d.d2)?;
    }
    let jet_total = StructurePresentation::from_layers(&layers)?;
    let jet = match target {
        Algebraic::Structure(_) => Algebraic::Structure(jet_total),
        Algebraic::Module(m) => Algebraic::Module(ModuleData::from_semidirect(
            &jet_total,
            m.base.space.clone(),
            m.carrier.clone(),
        )?),
    };
    let exact = d.d1.nilpotent_within(order)? || d.d2.nilpotent_within(order)?;
    Ok(DeformationJet {
        order,
        target: jet,
        exact,
    })
}
