//! Yang-Baxter residuals (associative in both forms, classical, Poisson), invariance
//! of symmetric parts, the dual algebras induced by a tensor, solution constructors,
//! and the transfer from deformations to Poisson solutions.

mod solutions;

pub use solutions::{
    alpha_operators, construct_solutions, module_dual_ambient, poisson_dual_ambient, regular_dual_ambient, skew_tensor,
    splitting_dual_ambient, splitting_semidirect, SolutionBundle, SolutionInputs, SolutionSource,
};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::deform::{qcl, DeformationJet};
use crate::error::{Error, Result};
use crate::kernel::{BilinearOp, Jet, Rational, Scalar, SparseVec, Tensor2, Tensor3, TensorElement};
use crate::operators::o_operator_report;
use crate::structures::{
    dualize_module, regular_module, AxiomReport, Failure, ModuleData, Role, Side, StructureKind, StructurePresentation,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum YbeKind {
    Aybe,
    AybeOp,
    Cybe,
    Pybe,
}

impl YbeKind {
    pub fn tag(self) -> &'static str {
        match self {
            YbeKind::Aybe => "aybe",
            YbeKind::AybeOp => "aybe-op",
            YbeKind::Cybe => "cybe",
            YbeKind::Pybe => "pybe",
        }
    }
}

impl std::str::FromStr for YbeKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        [YbeKind::Aybe, YbeKind::AybeOp, YbeKind::Cybe, YbeKind::Pybe]
            .into_iter()
            .find(|k| k.tag() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown Yang-Baxter kind {s:?}")))
    }
}

/// Residual tensors by name: `A`, `A-op`, `C`.
#[derive(Clone, Debug, PartialEq)]
pub struct YbeResidual<S> {
    pub kind: YbeKind,
    pub parts: Vec<(&'static str, Tensor3<S>)>,
}

impl<S: Scalar> YbeResidual<S> {
    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|(_, t)| t.is_zero())
    }

    pub fn part(&self, name: &str) -> Option<&Tensor3<S>> {
        self.parts.iter().find(|(n, _)| *n == name).map(|(_, t)| t)
    }

    pub fn lowest_order(&self) -> Option<usize> {
        self.parts.iter().filter_map(|(_, t)| t.lowest_order()).min()
    }

    /// One failure per nonzero coefficient, indexed `[i, j]` with the third index as coordinate.
    pub fn report(&self, prefix: &str) -> AxiomReport {
        let mut r = AxiomReport::default();
        for (name, t) in &self.parts {
            let id = format!("{prefix}{name}");
            r.checked.push(id.clone());
            for (i, j, k, c) in t.entries() {
                r.record(Failure::from_residual(
                    &id,
                    vec![i, j],
                    &SparseVec::single(k, c.clone()),
                ));
            }
        }
        r
    }
}

fn square_tensor(r: &TensorElement, n: usize) -> Result<Vec<(usize, usize, Rational)>> {
    if r.left_dim() != n || r.right_dim() != n {
        return Err(Error::Dimension(format!(
            "tensor is {}x{}, algebra has dimension {n}",
            r.left_dim(),
            r.right_dim()
        )));
    }
    Ok(r.nonzero())
}

#[derive(Clone, Copy)]
enum Slot {
    /// `r12 ∗ r13`: product in the first factor.
    P12x13,
    /// `r13 ∗ r23`: product in the third factor.
    P13x23,
    /// `r23 ∗ r12`: product in the second factor, `r12` on the right.
    P23x12,
    /// `r13 ∗ r12`.
    P13x12,
    /// `r23 ∗ r13`.
    P23x13,
    /// `r12 ∗ r23`.
    P12x23,
}

/// The term named by `slot`, with `r = Σ a⊗b` in the first position and `Σ c⊗d` in the second.
fn contraction<S: Scalar>(slot: Slot, nz: &[(usize, usize, Rational)], op: &BilinearOp<S>, n: usize) -> Tensor3<S> {
    let mut t = Tensor3::new([n; 3]);
    for &(a, b, ref r1) in nz {
        for &(c, d, ref r2) in nz {
            let w = r1 * r2;
            let (x, y) = match slot {
                Slot::P12x13 | Slot::P13x12 => (a, c),
                Slot::P13x23 | Slot::P23x13 => (b, d),
                Slot::P23x12 => (a, d),
                Slot::P12x23 => (b, c),
            };
            for (k, v) in op.product(x, y).iter() {
                let (i, j, l) = match slot {
                    Slot::P12x13 => (k, b, d),
                    Slot::P13x23 => (a, c, k),
                    Slot::P23x12 => (c, k, b),
                    Slot::P13x12 => (k, d, b),
                    Slot::P23x13 => (c, a, k),
                    Slot::P12x23 => (a, k, d),
                };
                t.add_at(i, j, l, &v.scaled(&w));
            }
        }
    }
    t
}

fn combine<S: Scalar>(terms: [(Tensor3<S>, bool); 3], n: usize) -> Tensor3<S> {
    let mut t = Tensor3::new([n; 3]);
    for (term, plus) in &terms {
        if *plus {
            t.add_tensor(term);
        } else {
            t.sub_tensor(term);
        }
    }
    t
}

/// `r12∘r13 + r13∘r23 − r23∘r12`.
fn aybe<S: Scalar>(nz: &[(usize, usize, Rational)], c: &BilinearOp<S>, n: usize) -> Tensor3<S> {
    combine(
        [
            (contraction(Slot::P12x13, nz, c, n), true),
            (contraction(Slot::P13x23, nz, c, n), true),
            (contraction(Slot::P23x12, nz, c, n), false),
        ],
        n,
    )
}

/// `r13∘r12 + r23∘r13 − r12∘r23`.
fn aybe_op<S: Scalar>(nz: &[(usize, usize, Rational)], c: &BilinearOp<S>, n: usize) -> Tensor3<S> {
    combine(
        [
            (contraction(Slot::P13x12, nz, c, n), true),
            (contraction(Slot::P23x13, nz, c, n), true),
            (contraction(Slot::P12x23, nz, c, n), false),
        ],
        n,
    )
}

/// `[r12,r13] + [r12,r23] + [r13,r23]`.
fn cybe<S: Scalar>(nz: &[(usize, usize, Rational)], b: &BilinearOp<S>, n: usize) -> Tensor3<S> {
    combine(
        [
            (contraction(Slot::P12x13, nz, b, n), true),
            (contraction(Slot::P12x23, nz, b, n), true),
            (contraction(Slot::P13x23, nz, b, n), true),
        ],
        n,
    )
}

/// Residual of `r` for the chosen equation; `pybe` returns `A` and `C`.
pub fn ybe_residual<S: Scalar>(
    kind: YbeKind,
    r: &TensorElement,
    p: &StructurePresentation<S>,
) -> Result<YbeResidual<S>> {
    let n = p.dim();
    let nz = square_tensor(r, n)?;
    let parts = match kind {
        YbeKind::Aybe => vec![("A", aybe(&nz, p.op(Role::Circ)?, n))],
        YbeKind::AybeOp => vec![("A-op", aybe_op(&nz, p.op(Role::Circ)?, n))],
        YbeKind::Cybe => vec![("C", cybe(&nz, p.op(Role::Bracket)?, n))],
        YbeKind::Pybe => vec![
            ("A", aybe(&nz, p.op(Role::Circ)?, n)),
            ("C", cybe(&nz, p.op(Role::Bracket)?, n)),
        ],
    };
    Ok(YbeResidual { kind, parts })
}

/// Which invariance condition to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvarianceKind {
    /// `(id⊗L(x) − R(x)⊗id) b = 0`.
    Associative,
    /// `(ad(x)⊗id + id⊗ad(x)) b = 0`.
    Lie,
}

/// The invariance defect of `b` at each basis element `x`.
pub fn invariance_residual<S: Scalar>(
    kind: InvarianceKind,
    b: &TensorElement,
    p: &StructurePresentation<S>,
) -> Result<Vec<Tensor2<S>>> {
    let n = p.dim();
    let nz = square_tensor(b, n)?;
    let op = p.op(match kind {
        InvarianceKind::Associative => Role::Circ,
        InvarianceKind::Lie => Role::Bracket,
    })?;
    Ok((0..n)
        .map(|x| {
            let mut t = Tensor2::new([n, n]);
            for (i, j, c) in &nz {
                match kind {
                    InvarianceKind::Associative => {
                        for (k, v) in op.product(x, *j).iter() {
                            t.add_at(*i, k, &v.scaled(c));
                        }
                        for (k, v) in op.product(*i, x).iter() {
                            t.add_at(k, *j, &v.scaled(c).negated());
                        }
                    }
                    InvarianceKind::Lie => {
                        for (k, v) in op.product(x, *i).iter() {
                            t.add_at(k, *j, &v.scaled(c));
                        }
                        for (k, v) in op.product(x, *j).iter() {
                            t.add_at(*i, k, &v.scaled(c));
                        }
                    }
                }
            }
            t
        })
        .collect())
}

/// Invariance for every operation present: `circ` associatively, `bracket` as a Lie bracket.
pub fn invariance_report<S: Scalar>(b: &TensorElement, p: &StructurePresentation<S>) -> Result<AxiomReport> {
    let mut report = AxiomReport::default();
    for (role, kind, id) in [
        (Role::Circ, InvarianceKind::Associative, "Invariance-circ"),
        (Role::Bracket, InvarianceKind::Lie, "Invariance-bracket"),
    ] {
        if !p.has(role) {
            continue;
        }
        report.checked.push(id.to_string());
        for (x, t) in invariance_residual(kind, b, p)?.iter().enumerate() {
            for (i, j, c) in t.entries() {
                report.record(Failure::from_residual(id, vec![x, i], &SparseVec::single(j, c.clone())));
            }
        }
    }
    Ok(report)
}

/// The bimodule algebra on the dual space induced by `r`, and both sides of the
/// equivalence between `r` solving the Yang-Baxter equation and `r^♯` being an O-operator.
#[derive(Clone, Debug, PartialEq)]
pub struct InducedDual<S> {
    pub module: ModuleData<S>,
    pub residual: YbeResidual<S>,
    pub operator: AxiomReport,
}

impl<S: Scalar> InducedDual<S> {
    pub fn solves(&self) -> bool {
        self.residual.is_zero()
    }

    pub fn is_operator(&self) -> bool {
        self.operator.passed()
    }

    pub fn agree(&self) -> bool {
        self.solves() == self.is_operator()
    }
}

/// `a*·b* = 2R*(β^♯a*)b*` on `A*` with actions `(−R*, −L*)`; over a Poisson algebra also
/// `[a*,b*] = −2ad*(β^♯a*)b*` with actions `(ad*, −R*)`.
pub fn induce_dual_algebra<S: Scalar>(r: &TensorElement, p: &StructurePresentation<S>) -> Result<InducedDual<S>> {
    let n = p.dim();
    square_tensor(r, n)?;
    let kind = match p.kind {
        StructureKind::Associative | StructureKind::CommutativeAssociative => YbeKind::Aybe,
        StructureKind::Poisson => YbeKind::Pybe,
        k => return Err(Error::Unsupported(format!("induced dual algebra over {k}"))),
    };
    let beta = r.symmetric_part()?;
    let inv = invariance_report(&beta, p)?;
    if !inv.passed() {
        return Err(Error::Hypothesis {
            name: "invariance".into(),
            report: inv,
        });
    }
    let dual = dualize_module(&regular_module(p)?.without_carrier_ops())?;
    let two = Rational::from_int(-2);
    let induced = |role: Role| -> Result<BilinearOp<S>> {
        let l = dual.action(role, Side::Left)?;
        Ok(BilinearOp::from_fn(n, n, n, |a, b| {
            l.rr(&beta.matrix.column(a), &SparseVec::basis(b)).scaled(&two)
        }))
    };
    let mut carrier_ops = BTreeMap::new();
    for role in p.ops.keys() {
        carrier_ops.insert(*role, induced(*role)?);
    }
    let module = ModuleData::new(p.clone(), dual.carrier.clone(), carrier_ops, dual.actions.clone())?;
    let residual = ybe_residual(kind, r, p)?;
    let operator = o_operator_report(&r.matrix, &Rational::one(), &module)?;
    Ok(InducedDual {
        module,
        residual,
        operator,
    })
}

/// What [`deformation_transfer`] verifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransferMode {
    Full,
    /// Only invariance of `r̂ + σr̂` and its Poisson consequence.
    InvarianceOnly,
}

/// Checks the jet hypotheses on `r̂` orderwise, then the Poisson conclusions in the
/// quasiclassical limit; hypothesis failures are errors, conclusion failures are in the report.
pub fn deformation_transfer(r: &TensorElement, j: &DeformationJet, mode: TransferMode) -> Result<AxiomReport> {
    let total = j.target.total()?;
    if !matches!(
        total.kind,
        StructureKind::Associative | StructureKind::CommutativeAssociative
    ) {
        return Err(Error::Unsupported(format!(
            "transfer from a {} deformation",
            total.kind
        )));
    }
    let sym = r.add(&r.twist()?)?;
    let mut report = AxiomReport::default();
    if mode == TransferMode::Full {
        let a = ybe_residual(YbeKind::Aybe, r, &total)?.report("");
        if !a.passed() {
            return Err(Error::Hypothesis {
                name: "aybe".into(),
                report: a,
            });
        }
        report.merge(a.prefixed("hypothesis"));
    }
    let b = invariance_report(&sym, &total)?;
    if !b.passed() {
        return Err(Error::Hypothesis {
            name: "invariance".into(),
            report: b,
        });
    }
    report.merge(b.prefixed("hypothesis"));
    let limit = qcl(j)?.total()?;
    if mode == TransferMode::Full {
        report.merge(
            ybe_residual(YbeKind::Pybe, r, &limit)?
                .report("")
                .prefixed("conclusion"),
        );
    }
    report.merge(invariance_report(&sym, &limit)?.prefixed("conclusion"));
    Ok(report)
}

/// The dual module deformation, layer by layer.
pub fn dualize_deformation(j: &DeformationJet) -> Result<DeformationJet> {
    let m: &ModuleData<Jet> = j.target.module()?;
    Ok(DeformationJet {
        order: j.order,
        target: crate::deform::Algebraic::Module(dualize_module(m)?),
        exact: j.exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{Matrix, Space};

    fn one_dim(c: i64) -> StructurePresentation<Rational> {
        let mut op = BilinearOp::square(1);
        op.set_product(0, 0, SparseVec::single(0, Rational::from_int(c)));
        StructurePresentation::single(Space::indexed("e", 1), StructureKind::Associative, Role::Circ, op).unwrap()
    }

    #[test]
    fn one_dimensional_residual_is_one() {
        let p = one_dim(1);
        let r = TensorElement::new(Matrix::identity(1));
        let a = ybe_residual(YbeKind::Aybe, &r, &p).unwrap();
        assert_eq!(a.part("A").unwrap().get(0, 0, 0), Some(&Rational::one()));
        let z = ybe_residual(YbeKind::Aybe, &TensorElement::zeros(1, 1), &p).unwrap();
        assert!(z.is_zero());
        assert!(ybe_residual(YbeKind::Cybe, &r, &p).is_err());
    }

    #[test]
    fn residual_terms_against_direct_sums() {
        // e1∘e1 = e2 in dimension 2, r = e1⊗e1 + e1⊗e2.
        let mut op = BilinearOp::square(2);
        op.set_product(0, 0, SparseVec::basis(1));
        let p =
            StructurePresentation::single(Space::indexed("e", 2), StructureKind::Associative, Role::Circ, op).unwrap();
        let r = TensorElement::new(Matrix::from_ints(&[&[1, 1], &[0, 0]]));
        let a = ybe_residual(YbeKind::Aybe, &r, &p).unwrap();
        let t = a.part("A").unwrap();
        let want = [
            ((1, 0, 0), 1),
            ((1, 0, 1), 1),
            ((1, 1, 0), 1),
            ((1, 1, 1), 1),
            ((0, 0, 1), 1),
            ((0, 1, 0), -1),
            ((0, 1, 1), -1),
        ];
        assert_eq!(t.len(), want.len());
        for ((i, j, k), c) in want {
            assert_eq!(t.get(i, j, k), Some(&Rational::from_int(c)));
        }
        let o = ybe_residual(YbeKind::AybeOp, &r, &p).unwrap();
        assert_eq!(o.part("A-op").unwrap(), t);
    }

    #[test]
    fn invariance_examples() {
        let p = one_dim(1);
        let b = TensorElement::new(Matrix::identity(1));
        assert!(invariance_residual(InvarianceKind::Associative, &b, &p)
            .unwrap()
            .iter()
            .all(Tensor2::is_zero));
        let mut op = BilinearOp::square(2);
        op.set_product(0, 0, SparseVec::basis(1));
        let p =
            StructurePresentation::single(Space::indexed("e", 2), StructureKind::Associative, Role::Circ, op).unwrap();
        let b = TensorElement::new(Matrix::from_ints(&[&[1, 0], &[0, 0]]));
        let res = invariance_residual(InvarianceKind::Associative, &b, &p).unwrap();
        assert_eq!(res[0].get(0, 1), Some(&Rational::one()));
        assert_eq!(res[0].get(1, 0), Some(&Rational::from_int(-1)));
        assert!(res[1].is_zero());
    }

    #[test]
    fn skew_zero_beta_gives_zero_dual_product() {
        let p = crate::deform::truncated_polynomial_algebra(1, 3);
        let r = TensorElement::new(Matrix::from_ints(&[&[0, 1, 0], &[-1, 0, 0], &[0, 0, 0]]));
        let d = induce_dual_algebra(&r, &p).unwrap();
        assert!(d.module.has_trivial_carrier());
        assert!(d.agree());
    }
}
