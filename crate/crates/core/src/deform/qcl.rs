use std::collections::BTreeMap;

use super::{Algebraic, DeformationJet};
use crate::error::{Error, Result};
use crate::kernel::{BilinearOp, Jet, Rational};
use crate::structures::{ModuleData, Role, Side, StructureKind, StructurePresentation};

fn commutative(op: &BilinearOp<Rational>, what: &str) -> Result<()> {
    if *op == op.opposite() {
        Ok(())
    } else {
        Err(Error::NotCommutative(what.into()))
    }
}

/// `(a − b)/h` at order 0.
fn first_order(a: &BilinearOp<Jet>, b: &BilinearOp<Jet>) -> Result<BilinearOp<Rational>> {
    Ok(a.difference(b)?.div_h()?.layer(0))
}

fn structure_qcl(p: &StructurePresentation<Jet>) -> Result<StructurePresentation<Rational>> {
    let zero = p.layer(0);
    let ops = match p.kind {
        StructureKind::Associative | StructureKind::CommutativeAssociative => {
            let c = p.op(Role::Circ)?;
            commutative(zero.op(Role::Circ)?, "circ")?;
            let bracket = first_order(c, &c.opposite())?;
            (
                StructureKind::Poisson,
                BTreeMap::from([(Role::Bracket, bracket), (Role::Circ, zero.op(Role::Circ)?.clone())]),
            )
        }
        StructureKind::Tridendriform | StructureKind::Dendriform => {
            let succ = p.op(Role::Succ)?;
            let prec_op = p.op(Role::Prec)?.opposite();
            if *zero.op(Role::Succ)? != prec_op.layer(0) {
                return Err(Error::NotCommutative("succ and prec".into()));
            }
            let triangle = first_order(succ, &prec_op)?;
            let mut ops = BTreeMap::from([(Role::Triangle, triangle), (Role::Succ, zero.op(Role::Succ)?.clone())]);
            let dot = p.op_or_zero(Role::Dot);
            if p.kind == StructureKind::Tridendriform || !dot.is_zero() {
                commutative(&dot.layer(0), "dot")?;
                ops.insert(Role::Bracket, first_order(&dot, &dot.opposite())?);
                ops.insert(Role::Dot, dot.layer(0));
                (StructureKind::PostPoisson, ops)
            } else {
                (StructureKind::PrePoisson, ops)
            }
        }
        k => return Err(Error::Unsupported(format!("quasiclassical limit of a {k} deformation"))),
    };
    StructurePresentation::new(p.space.clone(), ops.0, ops.1)
}

fn module_qcl(m: &ModuleData<Jet>) -> Result<ModuleData<Rational>> {
    if !matches!(
        m.base.kind,
        StructureKind::Associative | StructureKind::CommutativeAssociative
    ) {
        return Err(Error::Unsupported(format!(
            "quasiclassical limit of a {} module deformation",
            m.base.kind
        )));
    }
    let base = structure_qcl(&m.base)?;
    let l = m.action(Role::Circ, Side::Left)?;
    let r = m.action(Role::Circ, Side::Right)?;
    if l.layer(0) != r.layer(0) {
        return Err(Error::NotCommutative("left and right actions".into()));
    }
    let left = BTreeMap::from([(Role::Bracket, first_order(l, r)?), (Role::Circ, l.layer(0))]);
    let mut carrier_ops = BTreeMap::new();
    if let Some(c) = m.carrier_ops.get(&Role::Circ) {
        commutative(&c.layer(0), "carrier circ")?;
        carrier_ops.insert(Role::Bracket, first_order(c, &c.opposite())?);
        carrier_ops.insert(Role::Circ, c.layer(0));
    }
    ModuleData::from_left_actions(base, m.carrier.clone(), carrier_ops, left)
}

/// First-order antisymmetrized data of a deformation with commutative layer 0:
/// a Poisson algebra, a module Poisson algebra, or a post-/pre-Poisson algebra.
pub fn qcl(j: &DeformationJet) -> Result<Algebraic<Rational>> {
    if j.order == 0 {
        return Err(Error::Invalid("the quasiclassical limit needs order at least 1".into()));
    }
    match &j.target {
        Algebraic::Structure(p) => Ok(Algebraic::Structure(structure_qcl(p)?)),
        Algebraic::Module(m) => Ok(Algebraic::Module(module_qcl(m)?)),
    }
}

pub fn qcl_structure(j: &DeformationJet) -> Result<StructurePresentation<Rational>> {
    qcl(j)?.structure().cloned()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deform::{derive_deformation, monomial_basis, truncated_polynomial_algebra, DerivationPair};
    use crate::kernel::Matrix;
    use crate::structures::{check_module, check_structure, regular_module};

    fn euler(var: usize, d: u32) -> Matrix {
        Matrix::diagonal(
            &monomial_basis(2, d)
                .iter()
                .map(|m| Rational::from_int(m.exps[var] as i64))
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn equal_derivations_give_zero_bracket() {
        let a = truncated_polynomial_algebra(2, 3);
        let d = DerivationPair::new(euler(0, 3), euler(0, 3));
        let j = derive_deformation(&Algebraic::Structure(a), &d, 2).unwrap();
        let p = qcl_structure(&j).unwrap();
        assert_eq!(p.kind, StructureKind::Poisson);
        assert!(p.op(Role::Bracket).unwrap().is_zero());
    }

    #[test]
    fn euler_bracket_is_a_poisson_structure() {
        let a = truncated_polynomial_algebra(2, 3);
        let d = DerivationPair::new(euler(0, 3), euler(1, 3));
        let j = derive_deformation(&Algebraic::Structure(a), &d, 2).unwrap();
        let p = qcl_structure(&j).unwrap();
        assert!(check_structure(&p).unwrap().passed());
        assert!(!p.op(Role::Bracket).unwrap().is_zero());
    }

    #[test]
    fn regular_module_qcl_is_a_module_poisson_algebra() {
        let a = truncated_polynomial_algebra(2, 2);
        let m = regular_module(&a).unwrap();
        let d = DerivationPair::block_diagonal(
            &DerivationPair::new(euler(0, 2), euler(1, 2)),
            &DerivationPair::new(euler(0, 2), euler(1, 2)),
        )
        .unwrap();
        let j = derive_deformation(&Algebraic::Module(m), &d, 2).unwrap();
        let q = qcl(&j).unwrap();
        let q = q.module().unwrap();
        assert_eq!(q.base.kind, StructureKind::Poisson);
        assert!(check_module(q).unwrap().passed());
    }

    #[test]
    fn noncommutative_or_order_zero_is_rejected() {
        let a = truncated_polynomial_algebra(2, 2);
        let mut c = a.op(Role::Circ).unwrap().clone();
        c.set_product(0, 1, crate::kernel::SparseVec::new());
        let p = StructurePresentation::single(a.space.clone(), StructureKind::Associative, Role::Circ, c).unwrap();
        let j = DeformationJet::trivial(&Algebraic::Structure(p), 1);
        assert!(matches!(qcl(&j), Err(Error::NotCommutative(_))));
        let j = DeformationJet::trivial(&Algebraic::Structure(a), 0);
        assert!(qcl(&j).is_err());
    }
}
