//! O-operators of arbitrary weight, their scalar deformations, induced splitting
//! structures, transfer to quasiclassical limits, and commuting-diagram checks.

mod diagram;

pub use diagram::{
    compare_matrices, compare_modules, compare_ops, compare_presentations, verify_diagram, DiagramId, DiagramInputs,
};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::deform::{check_deformation, qcl, Algebraic, DeformationJet};
use crate::error::{Error, Result};
use crate::kernel::{BilinearOp, Jet, Matrix, Rational, Scalar, SparseVec};
use crate::structures::laws::{run_laws, Law};
use crate::structures::{
    check_module, regular_module, splitting_module, AxiomReport, ModuleData, Role, Side, StructureKind,
    StructurePresentation,
};

/// Which O-operator identity applies, read off the base of the context.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OperatorKind {
    Associative,
    Poisson,
    Lie,
}

impl OperatorKind {
    pub fn for_base(kind: StructureKind) -> Result<Self> {
        match kind {
            StructureKind::Associative | StructureKind::CommutativeAssociative => Ok(OperatorKind::Associative),
            StructureKind::Poisson => Ok(OperatorKind::Poisson),
            StructureKind::Lie => Ok(OperatorKind::Lie),
            k => Err(Error::Unsupported(format!("O-operators over a {k} base"))),
        }
    }
}

/// A linear map `T: V → A` with a weight and the module data `(V, ·, l, r)` over `A`.
#[derive(Clone, Debug, PartialEq)]
pub struct OOperatorSpec {
    pub t: Matrix,
    pub weight: Rational,
    pub context: ModuleData<Rational>,
    pub kind: OperatorKind,
}

impl OOperatorSpec {
    pub fn new(t: Matrix, weight: Rational, context: ModuleData<Rational>) -> Result<Self> {
        let kind = OperatorKind::for_base(context.base.kind)?;
        check_shape(&t, &context)?;
        Ok(OOperatorSpec {
            t,
            weight,
            context,
            kind,
        })
    }

    /// Rota-Baxter operator: the context is the regular module of `p`.
    pub fn rota_baxter(p: &StructurePresentation<Rational>, t: Matrix, weight: Rational) -> Result<Self> {
        OOperatorSpec::new(t, weight, regular_module(p)?)
    }

    /// Checks the context is valid module data.
    pub fn validate_context(&self) -> Result<()> {
        let r = check_module(&self.context)?;
        if r.passed() {
            Ok(())
        } else {
            Err(Error::Hypothesis {
                name: "module".into(),
                report: r,
            })
        }
    }
}

fn check_shape<S: Scalar>(t: &Matrix, m: &ModuleData<S>) -> Result<()> {
    if t.rows() != m.base.dim() || t.cols() != m.carrier.dim() {
        return Err(Error::Dimension(format!(
            "operator is {}x{}, context needs {}x{}",
            t.rows(),
            t.cols(),
            m.base.dim(),
            m.carrier.dim()
        )));
    }
    Ok(())
}

fn law_id(role: Role) -> &'static str {
    match role {
        Role::Circ => "OOperator-circ",
        Role::Bracket => "OOperator-bracket",
        Role::Dot => "OOperator-dot",
        Role::Succ => "OOperator-succ",
        Role::Prec => "OOperator-prec",
        Role::Triangle => "OOperator-triangle",
    }
}

/// `T(u)∗T(v) − T(l∗(Tu)v + r∗(Tv)u + λ u∗v)` for every role of the base.
///
/// For a bracket `r = −ρ`, so the same expression is the Lie identity.
pub fn o_operator_report<S: Scalar>(t: &Matrix, weight: &Rational, m: &ModuleData<S>) -> Result<AxiomReport> {
    check_shape(t, m)?;
    let v = m.carrier.dim();
    let cols: Vec<SparseVec<Rational>> = (0..v).map(|u| t.column(u)).collect();
    let cols = &cols;
    let mut data = Vec::new();
    for (role, op) in &m.base.ops {
        data.push((
            *role,
            op,
            m.action(*role, Side::Left)?,
            m.action(*role, Side::Right)?,
            m.carrier_op_or_zero(*role),
        ));
    }
    let laws: Vec<Law<S>> = data
        .iter()
        .map(|(role, op, l, r, dot)| {
            Law::binary(law_id(*role), v, move |u, w| {
                let mut inner = l.rr(&cols[u], &SparseVec::basis(w));
                inner.add_vec(&r.rr(&cols[w], &SparseVec::basis(u)));
                inner.add_scaled(dot.product(u, w), weight);
                op.rr(&cols[u], &cols[w]).minus(&t.apply(&inner))
            })
        })
        .collect();
    Ok(run_laws(&laws))
}

pub fn check_o_operator(s: &OOperatorSpec) -> Result<AxiomReport> {
    o_operator_report(&s.t, &s.weight, &s.context)
}

/// The module data an operator acts against: module data as is, the attached module
/// of a splitting structure, or the regular module otherwise.
pub fn operator_context<S: Scalar>(a: &Algebraic<S>) -> Result<ModuleData<S>> {
    match a {
        Algebraic::Module(m) => Ok(m.clone()),
        Algebraic::Structure(p) if p.kind.is_splitting() => splitting_module(p),
        Algebraic::Structure(p) => regular_module(p),
    }
}

/// The same module over a base tagged associative instead of commutative associative.
pub(crate) fn loosen(c: &ModuleData<Rational>) -> Result<ModuleData<Rational>> {
    let mut c = c.clone();
    if c.base.kind == StructureKind::CommutativeAssociative {
        c.base = c.base.with_kind(StructureKind::Associative)?;
    }
    Ok(c)
}

fn jet_context(s: &OOperatorSpec, j: &DeformationJet) -> Result<ModuleData<Jet>> {
    let m = operator_context(&j.target)?;
    if !loosen(&m.layer(0))?.same_constants(&loosen(&s.context)?) {
        return Err(Error::Invalid(
            "layer 0 of the deformation differs from the operator context".into(),
        ));
    }
    Ok(m)
}

/// Orderwise O-operator identity for the layer-constant extension of `T`.
pub fn check_scalar_deformation(s: &OOperatorSpec, j: &DeformationJet) -> Result<AxiomReport> {
    let m = jet_context(s, j)?;
    let d = check_deformation(&DeformationJet {
        order: j.order,
        target: Algebraic::Module(m.clone()),
        exact: j.exact,
    })?;
    if !d.passed() {
        return Err(Error::Hypothesis {
            name: "deformation".into(),
            report: d,
        });
    }
    o_operator_report(&s.t, &s.weight, &m)
}

/// Splitting structure on the carrier: `u≻v = l(Tu)v`, `u≺v = r(Tv)u`, `λ·` for an
/// associative base; `u▷v = ρ_{,}(Tu)v`, `u≻v = ρ_∘(Tu)v`, `λ[,]`, `λ·` for a Poisson base;
/// `u▷v = ρ(Tu)v`, `λ[,]` for a Lie base.
pub fn induce_splitting_from<S: Scalar>(
    t: &Matrix,
    weight: &Rational,
    m: &ModuleData<S>,
) -> Result<StructurePresentation<S>> {
    check_shape(t, m)?;
    let v = m.carrier.dim();
    let left = |role: Role| -> Result<BilinearOp<S>> {
        let l = m.action(role, Side::Left)?;
        Ok(BilinearOp::from_fn(v, v, v, |a, b| {
            l.rr(&t.column(a), &SparseVec::basis(b))
        }))
    };
    let scaled = |role: Role| m.carrier_op_or_zero(role).scaled(weight);
    let mut ops = BTreeMap::new();
    let kind = match OperatorKind::for_base(m.base.kind)? {
        OperatorKind::Associative => {
            let r = m.action(Role::Circ, Side::Right)?;
            ops.insert(Role::Succ, left(Role::Circ)?);
            ops.insert(
                Role::Prec,
                BilinearOp::from_fn(v, v, v, |a, b| r.rr(&t.column(b), &SparseVec::basis(a))),
            );
            let dot = scaled(Role::Circ);
            if dot.is_zero() {
                StructureKind::Dendriform
            } else {
                ops.insert(Role::Dot, dot);
                StructureKind::Tridendriform
            }
        }
        OperatorKind::Poisson => {
            ops.insert(Role::Triangle, left(Role::Bracket)?);
            ops.insert(Role::Succ, left(Role::Circ)?);
            let (bracket, dot) = (scaled(Role::Bracket), scaled(Role::Circ));
            if bracket.is_zero() && dot.is_zero() {
                StructureKind::PrePoisson
            } else {
                ops.insert(Role::Bracket, bracket);
                ops.insert(Role::Dot, dot);
                StructureKind::PostPoisson
            }
        }
        OperatorKind::Lie => {
            ops.insert(Role::Triangle, left(Role::Bracket)?);
            let bracket = scaled(Role::Bracket);
            if bracket.is_zero() {
                StructureKind::PreLie
            } else {
                ops.insert(Role::Bracket, bracket);
                StructureKind::PostLie
            }
        }
    };
    StructurePresentation::new(m.carrier.clone(), kind, ops)
}

pub fn induce_splitting(s: &OOperatorSpec) -> Result<StructurePresentation<Rational>> {
    let r = check_o_operator(s)?;
    if !r.passed() {
        return Err(Error::Hypothesis {
            name: "o-operator".into(),
            report: r,
        });
    }
    induce_splitting_from(&s.t, &s.weight, &s.context)
}

/// The O-operator identity for `T` against the quasiclassical limit of the deformed
/// context, after confirming the orderwise identity holds.
pub fn transfer_qcl_operator(s: &OOperatorSpec, j: &DeformationJet) -> Result<AxiomReport> {
    let hyp = check_scalar_deformation(s, j)?;
    if !hyp.passed() {
        return Err(Error::Hypothesis {
            name: "scalar-deformation".into(),
            report: hyp,
        });
    }
    let m = jet_context(s, j)?;
    let limit = qcl(&DeformationJet {
        order: j.order,
        target: Algebraic::Module(m),
        exact: j.exact,
    })?;
    let report = o_operator_report(&s.t, &s.weight, limit.module()?)?;
    if !report.passed() {
        return Err(Error::Consistency {
            name: "qcl-o-operator".into(),
            report,
        });
    }
    Ok(report)
}
