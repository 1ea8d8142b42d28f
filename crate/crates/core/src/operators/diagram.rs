use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{
    check_o_operator, check_scalar_deformation, induce_splitting, induce_splitting_from, o_operator_report,
    transfer_qcl_operator, OOperatorSpec,
};
use crate::deform::{
    check_deformation, derive_deformation, gen_truncated_poly_example, gen_zinbiel_poly_example, qcl, Algebraic,
    DeformationJet, DerivationPair,
};
use crate::error::{Error, Result};
use crate::kernel::{unsharp, BilinearOp, Jet, Matrix, Rational, Scalar, SparseVec, TensorElement};
use crate::structures::{
    check_module, check_structure, dualize_module, regular_module, splitting_module, AxiomReport, Failure, ModuleData,
    Role, StructureKind, StructurePresentation,
};
use crate::yangbaxter::{
    construct_solutions, deformation_transfer, dualize_deformation, induce_dual_algebra, invariance_report,
    poisson_dual_ambient, regular_dual_ambient, skew_tensor, splitting_dual_ambient, ybe_residual, SolutionInputs,
    SolutionSource, TransferMode, YbeKind,
};

/// The commuting diagrams that can be verified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiagramId {
    /// Deforming an O-operator context then splitting, against splitting then deforming,
    /// and both quasiclassical limits.
    OperatorSplitting,
    /// The identity operator on the module attached to a splitting deformation.
    IdentitySplitting,
    /// The dual algebra induced by a tensor, before and after the quasiclassical limit.
    InducedDual,
    /// Yang-Baxter solutions from a tridendriform deformation and from its limit.
    SplittingSolutions,
    /// Skew-symmetric solutions from an O-operator, deformed and in the limit.
    SkewSolutions,
    /// The identity-operator chain from a dendriform deformation to pre-Poisson data.
    DendriformChain,
}

impl DiagramId {
    pub const ALL: [DiagramId; 6] = [
        DiagramId::OperatorSplitting,
        DiagramId::IdentitySplitting,
        DiagramId::InducedDual,
        DiagramId::SplittingSolutions,
        DiagramId::SkewSolutions,
        DiagramId::DendriformChain,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            DiagramId::OperatorSplitting => "operator-splitting",
            DiagramId::IdentitySplitting => "identity-splitting",
            DiagramId::InducedDual => "induced-dual",
            DiagramId::SplittingSolutions => "splitting-solutions",
            DiagramId::SkewSolutions => "skew-solutions",
            DiagramId::DendriformChain => "dendriform-chain",
        }
    }

    /// The generated instance each diagram is verified on by default.
    pub fn default_inputs(self) -> Result<DiagramInputs> {
        let (q1, q2) = (Rational::from_int(2), Rational::from_int(3));
        match self {
            DiagramId::OperatorSplitting => {
                let ex = gen_truncated_poly_example(&q1, &q2, 3, 3)?;
                let spec = OOperatorSpec::rota_baxter(&ex.dot_algebra, ex.rota_baxter.clone(), Rational::one())?;
                let jet = regular_module_jet(&ex.dot_algebra, &ex.derivations, 3)?;
                Ok(DiagramInputs::Operator { spec, jet })
            }
            DiagramId::IdentitySplitting | DiagramId::SplittingSolutions => Ok(DiagramInputs::Splitting {
                jet: gen_truncated_poly_example(&q1, &q2, 3, 3)?.jet,
            }),
            DiagramId::InducedDual => {
                let ex = gen_truncated_poly_example(&q1, &q2, 2, 3)?;
                let a = derive_deformation(&Algebraic::Structure(ex.dot_algebra.clone()), &ex.derivations, 3)?;
                let ambient = regular_dual_ambient(a.target.structure()?)?;
                let jet = DeformationJet {
                    order: 3,
                    target: Algebraic::Structure(ambient),
                    exact: a.exact,
                };
                let r = unsharp(&Matrix::identity(ex.basis.len())).eta_embed();
                Ok(DiagramInputs::Tensor { r, jet })
            }
            DiagramId::SkewSolutions => {
                let ex = gen_zinbiel_poly_example(3, 3)?;
                let spec = OOperatorSpec::new(ex.operator.clone(), Rational::zero(), regular_module(&ex.dot_algebra)?)?;
                let jet = regular_module_jet(&ex.dot_algebra, &ex.derivations, 3)?;
                Ok(DiagramInputs::Operator { spec, jet })
            }
            DiagramId::DendriformChain => Ok(DiagramInputs::Splitting {
                jet: gen_zinbiel_poly_example(3, 3)?.jet,
            }),
        }
    }
}

impl std::fmt::Display for DiagramId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

impl std::str::FromStr for DiagramId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        DiagramId::ALL
            .into_iter()
            .find(|d| d.tag() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown diagram {s:?}")))
    }
}

fn regular_module_jet(a: &StructurePresentation<Rational>, d: &DerivationPair, order: usize) -> Result<DeformationJet> {
    derive_deformation(
        &Algebraic::Module(regular_module(a)?),
        &DerivationPair::block_diagonal(d, d)?,
        order,
    )
}

#[derive(Clone, Debug)]
pub enum DiagramInputs {
    /// An operator and a deformation of its context module.
    Operator { spec: OOperatorSpec, jet: DeformationJet },
    /// A deformation of a commutative splitting algebra.
    Splitting { jet: DeformationJet },
    /// A tensor over a deformation of a commutative associative algebra.
    Tensor { r: TensorElement, jet: DeformationJet },
}

fn difference<S: Scalar>(name: &str, indices: Vec<usize>, a: &SparseVec<S>, b: &SparseVec<S>) -> Option<Failure> {
    (a != b).then(|| Failure::from_residual(name, indices, &a.clone().minus(b)))
}

/// Equality of two tables, reporting the first differing product.
pub fn compare_ops<S: Scalar>(name: &str, a: &BilinearOp<S>, b: &BilinearOp<S>) -> Result<AxiomReport> {
    if a.dims() != b.dims() {
        return Err(Error::Dimension(format!(
            "{name}: shapes {:?} and {:?}",
            a.dims(),
            b.dims()
        )));
    }
    let (l, r, _) = a.dims();
    let first = (0..l)
        .flat_map(|i| (0..r).map(move |j| (i, j)))
        .find_map(|(i, j)| difference(name, vec![i, j], a.product(i, j), b.product(i, j)));
    Ok(AxiomReport::single(name, first))
}

fn kind_check(name: &str, a: StructureKind, b: StructureKind) -> AxiomReport {
    let id = format!("{name}/kind");
    AxiomReport::single(
        &id,
        (a != b).then(|| Failure {
            axiom: id.clone(),
            indices: vec![],
            order: 0,
            residual: vec![],
        }),
    )
}

/// Role-by-role equality, with missing roles read as zero.
pub fn compare_presentations<S: Scalar>(
    name: &str,
    a: &StructurePresentation<S>,
    b: &StructurePresentation<S>,
) -> Result<AxiomReport> {
    let mut report = kind_check(name, a.kind, b.kind);
    let roles: BTreeSet<Role> = a.ops.keys().chain(b.ops.keys()).copied().collect();
    for role in roles {
        report.merge(compare_ops(
            &format!("{name}/{role}"),
            &a.op_or_zero(role),
            &b.op_or_zero(role),
        )?);
    }
    Ok(report)
}

pub fn compare_modules<S: Scalar>(name: &str, a: &ModuleData<S>, b: &ModuleData<S>) -> Result<AxiomReport> {
    let mut report = compare_presentations(&format!("{name}/base"), &a.base, &b.base)?;
    let roles: BTreeSet<Role> = a.carrier_ops.keys().chain(b.carrier_ops.keys()).copied().collect();
    for role in roles {
        let id = format!("{name}/carrier-{role}");
        report.merge(compare_ops(
            &id,
            &a.carrier_op_or_zero(role),
            &b.carrier_op_or_zero(role),
        )?);
    }
    let keys: BTreeSet<_> = a.actions.keys().chain(b.actions.keys()).copied().collect();
    for (role, side) in keys {
        let id = format!("{name}/{}", crate::structures::action_name(role, side));
        let zero = BilinearOp::zero(a.base.dim(), a.carrier.dim(), a.carrier.dim());
        report.merge(compare_ops(
            &id,
            a.actions.get(&(role, side)).unwrap_or(&zero),
            b.actions.get(&(role, side)).unwrap_or(&zero),
        )?);
    }
    Ok(report)
}

pub fn compare_matrices(name: &str, a: &Matrix, b: &Matrix) -> Result<AxiomReport> {
    if (a.rows(), a.cols()) != (b.rows(), b.cols()) {
        return Err(Error::Dimension(format!("{name}: matrix shapes differ")));
    }
    let first = (0..a.rows())
        .flat_map(|r| (0..a.cols()).map(move |c| (r, c)))
        .find_map(|(r, c)| {
            difference(
                name,
                vec![r, c],
                &SparseVec::single(0, a.get(r, c).clone()),
                &SparseVec::single(0, b.get(r, c).clone()),
            )
        });
    Ok(AxiomReport::single(name, first))
}

fn require(name: &str, report: AxiomReport) -> Result<AxiomReport> {
    if report.passed() {
        Ok(report)
    } else {
        Err(Error::Hypothesis {
            name: name.into(),
            report,
        })
    }
}

fn passes(name: &str, report: AxiomReport) -> AxiomReport {
    let mut r = report.prefixed(name);
    r.checked.insert(0, name.to_string());
    r
}

fn jet_of(order: usize, target: Algebraic<Jet>) -> DeformationJet {
    DeformationJet {
        order,
        target,
        exact: false,
    }
}

fn need_order(j: &DeformationJet) -> Result<()> {
    if j.order == 0 {
        return Err(Error::Invalid(
            "diagrams through the quasiclassical limit need order at least 1".into(),
        ));
    }
    Ok(())
}

fn operator_splitting(spec: &OOperatorSpec, jet: &DeformationJet) -> Result<AxiomReport> {
    need_order(jet)?;
    require("module", check_module(&spec.context)?)?;
    require("o-operator", check_o_operator(spec)?)?;
    require("scalar-deformation", check_scalar_deformation(spec, jet)?)?;
    let m = jet.target.module()?;
    let (deformed, limit) = rayon::join(
        || -> Result<_> {
            let split = induce_splitting_from(&spec.t, &spec.weight, m)?;
            let j = jet_of(jet.order, Algebraic::Structure(split));
            Ok((check_deformation(&j)?, j.clone(), qcl(&j)?.structure()?.clone()))
        },
        || -> Result<_> {
            let limit_module = qcl(jet)?;
            induce_splitting_from(&spec.t, &spec.weight, limit_module.module()?)
        },
    );
    let (deformation, split_jet, split_limit) = deformed?;
    let limit = limit?;
    let mut report = passes("induced-jet-is-deformation", deformation);
    report.merge(compare_presentations(
        "layer-zero",
        split_jet.layer(0).structure()?,
        &induce_splitting(spec)?,
    )?);
    report.merge(compare_presentations("quasiclassical", &split_limit, &limit)?);
    report.merge(passes("quasiclassical-axioms", check_structure(&limit)?));
    Ok(report)
}

fn splitting_jet(jet: &DeformationJet) -> Result<&StructurePresentation<Jet>> {
    let p = jet.target.structure()?;
    if !matches!(p.kind, StructureKind::Tridendriform | StructureKind::Dendriform) {
        return Err(Error::Unsupported(format!(
            "this diagram needs a tridendriform or dendriform deformation, got {}",
            p.kind
        )));
    }
    Ok(p)
}

fn identity_splitting(jet: &DeformationJet) -> Result<AxiomReport> {
    need_order(jet)?;
    let p = splitting_jet(jet)?;
    require("deformation", check_deformation(jet)?)?;
    let zero = jet.layer(0).structure()?.clone();
    let module_jet = splitting_module(p)?;
    let mut report = passes(
        "module-deformation",
        check_deformation(&jet_of(jet.order, Algebraic::Module(module_jet.clone())))?,
    );
    report.merge(compare_modules(
        "module-layer-zero",
        &module_jet.layer(0),
        &splitting_module(&zero)?,
    )?);
    let (lhs, limit) = rayon::join(
        || qcl(&jet_of(jet.order, Algebraic::Module(module_jet.clone()))),
        || qcl(jet),
    );
    let limit = limit?.structure()?.clone();
    let limit_module = splitting_module(&limit)?;
    report.merge(compare_modules("quasiclassical", lhs?.module()?, &limit_module)?);

    let n = p.dim();
    let id = OOperatorSpec::new(Matrix::identity(n), Rational::one(), splitting_module(&zero)?)?;
    report.merge(passes(
        "identity-scalar-deformation",
        check_scalar_deformation(&id, jet)?,
    ));
    let induced = induce_splitting_from(&id.t, &id.weight, &module_jet)?;
    report.merge(compare_presentations("identity-induced", &induced, p)?);
    report.merge(passes("identity-quasiclassical", transfer_qcl_operator(&id, jet)?));
    let back = induce_splitting_from(&id.t, &id.weight, &limit_module)?;
    report.merge(compare_presentations(
        "identity-quasiclassical-splitting",
        &back,
        &limit,
    )?);
    Ok(report)
}

fn induced_dual(r: &TensorElement, jet: &DeformationJet) -> Result<AxiomReport> {
    need_order(jet)?;
    require("deformation", check_deformation(jet)?)?;
    let total = jet.target.total()?;
    require("invariance", invariance_report(&r.symmetric_part()?, &total)?)?;
    let zero = jet.layer(0).total()?;
    let deformed = induce_dual_algebra(r, &total)?;
    let plain = induce_dual_algebra(r, &zero)?;
    let dual_jet = jet_of(jet.order, Algebraic::Module(deformed.module.clone()));
    let mut report = passes("dual-deformation", check_deformation(&dual_jet)?);
    report.merge(compare_modules(
        "dual-layer-zero",
        &deformed.module.layer(0),
        &plain.module,
    )?);
    let limit = induce_dual_algebra(r, &qcl(jet)?.total()?)?;
    report.merge(compare_modules(
        "dual-quasiclassical",
        qcl(&dual_jet)?.module()?,
        &limit.module,
    )?);
    for (name, d) in [
        ("equivalence-layer-zero", plain.agree()),
        ("equivalence-deformed", deformed.agree()),
        ("equivalence-quasiclassical", limit.agree()),
    ] {
        let f = (!d).then(|| Failure {
            axiom: name.into(),
            indices: vec![],
            order: 0,
            residual: vec![],
        });
        report.merge(AxiomReport::single(name, f));
    }
    Ok(report)
}

fn splitting_solutions(jet: &DeformationJet) -> Result<AxiomReport> {
    need_order(jet)?;
    let p = splitting_jet(jet)?;
    require("deformation", check_deformation(jet)?)?;
    let zero = jet.layer(0).structure()?.clone();
    let limit = qcl(jet)?.structure()?.clone();
    let ambient = splitting_dual_ambient(p)?;
    let ambient_jet = jet_of(jet.order, Algebraic::Structure(ambient.clone()));
    let mut report = passes("ambient-deformation", check_deformation(&ambient_jet)?);
    report.merge(compare_presentations(
        "ambient-layer-zero",
        ambient_jet.layer(0).structure()?,
        &splitting_dual_ambient(&zero)?,
    )?);
    report.merge(compare_presentations(
        "ambient-quasiclassical",
        &qcl(&ambient_jet)?.total()?,
        &poisson_dual_ambient(&limit)?,
    )?);

    let (plain, poisson) = rayon::join(
        || construct_solutions(SolutionSource::Tridendriform, &SolutionInputs::Splitting(zero.clone())),
        || construct_solutions(SolutionSource::PostPoisson, &SolutionInputs::Splitting(limit.clone())),
    );
    let (plain, poisson) = (plain?, poisson?);
    let double = 2 * p.dim();
    let id = unsharp(&Matrix::identity(double)).eta_embed();
    report.merge(passes(
        "identity-invariance",
        invariance_report(&id.symmetric_part()?, &ambient)?,
    ));
    for ((name, r), (_, s)) in plain.tensors().iter().zip(poisson.tensors()) {
        report.merge(compare_matrices(&format!("{name}/tensor"), &r.matrix, &s.matrix)?);
        report.merge(ybe_residual(YbeKind::Aybe, r, &ambient)?.report(&format!("{name}/deformed-")));
        report.merge(passes(
            &format!("{name}/transfer"),
            deformation_transfer(r, &ambient_jet, TransferMode::Full)?,
        ));
    }
    report.merge(passes(
        "invariance-only-transfer",
        deformation_transfer(&id, &ambient_jet, TransferMode::InvarianceOnly)?,
    ));
    Ok(report)
}

fn skew_solutions(spec: &OOperatorSpec, jet: &DeformationJet) -> Result<AxiomReport> {
    need_order(jet)?;
    let context = super::loosen(&spec.context.without_carrier_ops())?;
    require("module", check_module(&context)?)?;
    let m = jet.target.module()?.without_carrier_ops();
    let plain_jet = jet_of(jet.order, Algebraic::Module(m));
    let zero_weight = OOperatorSpec::new(spec.t.clone(), Rational::zero(), context.clone())?;
    let plain = construct_solutions(
        SolutionSource::SkewFromOperator,
        &SolutionInputs::Operator(zero_weight.clone()),
    )?;
    let deformed_op = check_scalar_deformation(&zero_weight, &plain_jet)?;

    let dual_jet = dualize_deformation(&plain_jet)?;
    let mut report = passes("dual-deformation", check_deformation(&dual_jet)?);
    report.merge(compare_modules(
        "dual-layer-zero",
        dual_jet.layer(0).module()?,
        &dualize_module(&context)?,
    )?);
    let limit_module = qcl(&plain_jet)?.module()?.clone();
    report.merge(compare_modules(
        "dual-quasiclassical",
        qcl(&dual_jet)?.module()?,
        &dualize_module(&limit_module)?,
    )?);

    let r = skew_tensor(&spec.t)?;
    report.merge(compare_matrices(
        "tensor",
        &r.matrix,
        &plain.tensor("skew").expect("skew tensor").matrix,
    )?);
    let ambient = dual_jet.target.total()?;
    let ambient_jet = jet_of(jet.order, Algebraic::Structure(ambient.clone()));
    let residual = ybe_residual(YbeKind::Aybe, &r, &ambient)?;
    let equivalent = residual.is_zero() == deformed_op.passed();
    report.merge(residual.report("deformed-"));
    report.merge(AxiomReport::single(
        "deformed-equivalence",
        (!equivalent).then(|| Failure {
            axiom: "deformed-equivalence".into(),
            indices: vec![],
            order: 0,
            residual: vec![],
        }),
    ));
    let limit_spec = OOperatorSpec::new(spec.t.clone(), Rational::zero(), limit_module)?;
    let poisson = construct_solutions(SolutionSource::SkewFromOperator, &SolutionInputs::Operator(limit_spec))?;
    report.merge(compare_presentations(
        "quasiclassical-ambient",
        &qcl(&ambient_jet)?.total()?,
        poisson.ambient(),
    )?);
    report.merge(passes(
        "transfer",
        deformation_transfer(&r, &ambient_jet, TransferMode::Full)?,
    ));
    Ok(report)
}

fn dendriform_chain(jet: &DeformationJet) -> Result<AxiomReport> {
    let p = splitting_jet(jet)?;
    if p.has(Role::Dot) && !p.op(Role::Dot)?.is_zero() {
        return Err(Error::Invalid(
            "the dendriform chain needs a deformation without a dot operation".into(),
        ));
    }
    let mut report = identity_splitting(jet)?.prefixed("identity");
    let limit = qcl(jet)?.structure()?.clone();
    report.merge(kind_check("pre-poisson", limit.kind, StructureKind::PrePoisson));
    report.merge(passes("pre-poisson-axioms", check_structure(&limit)?));
    let zero = jet.layer(0).structure()?.clone();
    let id = OOperatorSpec::new(Matrix::identity(p.dim()), Rational::zero(), splitting_module(&zero)?)?;
    let module_jet = jet_of(jet.order, Algebraic::Module(splitting_module(p)?));
    report.merge(skew_solutions(&id, &module_jet)?.prefixed("skew"));
    report.merge(passes(
        "limit-identity",
        o_operator_report(
            &id.t,
            &Rational::zero(),
            &splitting_module(&limit)?.without_carrier_ops(),
        )?,
    ));
    Ok(report)
}

/// Computes both composite paths of diagram `d` on `inputs` and compares them coefficientwise.
pub fn verify_diagram(d: DiagramId, inputs: &DiagramInputs) -> Result<AxiomReport> {
    match (d, inputs) {
        (DiagramId::OperatorSplitting, DiagramInputs::Operator { spec, jet }) => operator_splitting(spec, jet),
        (DiagramId::SkewSolutions, DiagramInputs::Operator { spec, jet }) => skew_solutions(spec, jet),
        (DiagramId::IdentitySplitting, DiagramInputs::Splitting { jet }) => identity_splitting(jet),
        (DiagramId::SplittingSolutions, DiagramInputs::Splitting { jet }) => splitting_solutions(jet),
        (DiagramId::DendriformChain, DiagramInputs::Splitting { jet }) => dendriform_chain(jet),
        (DiagramId::InducedDual, DiagramInputs::Tensor { r, jet }) => induced_dual(r, jet),
        _ => Err(Error::Invalid(format!("diagram {d} does not take these inputs"))),
    }
}
