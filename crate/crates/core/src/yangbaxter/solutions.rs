use serde::{Deserialize, Serialize};

use super::{ybe_residual, YbeKind};
use crate::error::{Error, Result};
use crate::kernel::{unsharp, Matrix, Rational, Scalar, TensorElement};
use crate::operators::{o_operator_report, OOperatorSpec, OperatorKind};
use crate::structures::{
    check_structure, dualize_module, regular_module, splitting_module, ModuleData, StructureKind, StructurePresentation,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolutionSource {
    Tridendriform,
    PostPoisson,
    SkewFromOperator,
}

impl SolutionSource {
    pub fn tag(self) -> &'static str {
        match self {
            SolutionSource::Tridendriform => "tridendriform",
            SolutionSource::PostPoisson => "post-poisson",
            SolutionSource::SkewFromOperator => "skew-from-operator",
        }
    }
}

impl std::str::FromStr for SolutionSource {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        [
            SolutionSource::Tridendriform,
            SolutionSource::PostPoisson,
            SolutionSource::SkewFromOperator,
        ]
        .into_iter()
        .find(|k| k.tag() == s)
        .ok_or_else(|| Error::Invalid(format!("unknown solution source {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub enum SolutionInputs {
    /// A tridendriform or post-Poisson algebra.
    Splitting(StructurePresentation<Rational>),
    Operator(OOperatorSpec),
}

/// Verified solutions together with the algebra they solve the equation in.
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionBundle {
    ambient: StructurePresentation<Rational>,
    tensors: Vec<(String, TensorElement)>,
    source: SolutionSource,
    kind: YbeKind,
}

impl SolutionBundle {
    pub fn ambient(&self) -> &StructurePresentation<Rational> {
        &self.ambient
    }

    pub fn tensors(&self) -> &[(String, TensorElement)] {
        &self.tensors
    }

    pub fn tensor(&self, name: &str) -> Option<&TensorElement> {
        self.tensors.iter().find(|(n, _)| n == name).map(|(_, t)| t)
    }

    pub fn source(&self) -> SolutionSource {
        self.source
    }

    pub fn kind(&self) -> YbeKind {
        self.kind
    }
}

/// `α1(x,y) = (y−x, 0)`, `α2(x,y) = −(y,y)`, `α3(x,y) = −(x,x)`, `α4(x,y) = (0, x−y)` on `A ⊕ A`.
pub fn alpha_operators(n: usize) -> [Matrix; 4] {
    let i = Matrix::identity(n);
    let m = i.neg();
    let z = Matrix::zeros(n, n);
    let b = |g: [[&Matrix; 2]; 2]| Matrix::from_blocks(&[&g[0][..], &g[1][..]]).expect("square blocks");
    [
        b([[&m, &i], [&z, &z]]),
        b([[&z, &m], [&z, &m]]),
        b([[&m, &z], [&m, &z]]),
        b([[&z, &z], [&i, &m]]),
    ]
}

/// The semidirect product of a splitting algebra with its attached module.
pub fn splitting_semidirect<S: Scalar>(p: &StructurePresentation<S>) -> Result<StructurePresentation<S>> {
    splitting_module(p)?.semidirect()
}

/// `B ⋉ B*` for the dual of the regular module of `b`.
pub fn regular_dual_ambient<S: Scalar>(b: &StructurePresentation<S>) -> Result<StructurePresentation<S>> {
    module_dual_ambient(&regular_module(b)?)
}

/// `A ⋉ V*` for the dual of a module with its carrier operations dropped.
pub fn module_dual_ambient<S: Scalar>(m: &ModuleData<S>) -> Result<StructurePresentation<S>> {
    dualize_module(&m.without_carrier_ops())?.semidirect()
}

/// The ambient for tridendriform-type input: `Â ⋉ (A⊕A)*`.
pub fn splitting_dual_ambient<S: Scalar>(p: &StructurePresentation<S>) -> Result<StructurePresentation<S>> {
    regular_dual_ambient(&splitting_semidirect(p)?)
}

/// The ambient for post-Poisson input: `Ǎ ⋉ (A⊕A)*`.
pub fn poisson_dual_ambient<S: Scalar>(p: &StructurePresentation<S>) -> Result<StructurePresentation<S>> {
    if !matches!(p.kind, StructureKind::PostPoisson | StructureKind::PrePoisson) {
        return Err(Error::Unsupported(format!("Poisson ambient for {}", p.kind)));
    }
    splitting_dual_ambient(p)
}

/// `η(α̃) − σ(η(α̃)) + η(ĩd)` and `η(α̃) − σ(η(α̃)) − σ(η(ĩd))` for the four α.
fn alpha_tensors(n: usize) -> Result<Vec<(String, TensorElement)>> {
    let id = unsharp(&Matrix::identity(2 * n)).eta_embed();
    let mut out = Vec::new();
    for (k, a) in alpha_operators(n).iter().enumerate() {
        let e = unsharp(a).eta_embed();
        let skew = e.sub(&e.twist()?)?;
        out.push((format!("alpha{}-plus", k + 1), skew.add(&id)?));
        out.push((format!("alpha{}-minus", k + 1), skew.sub(&id.twist()?)?));
    }
    Ok(out)
}

/// `η(T̃) − σ(η(T̃))`.
pub fn skew_tensor(t: &Matrix) -> Result<TensorElement> {
    let e = unsharp(t).eta_embed();
    e.sub(&e.twist()?)
}

fn verified(
    ambient: StructurePresentation<Rational>,
    tensors: Vec<(String, TensorElement)>,
    source: SolutionSource,
    kind: YbeKind,
) -> Result<SolutionBundle> {
    for (name, r) in &tensors {
        let res = ybe_residual(kind, r, &ambient)?;
        if !res.is_zero() {
            return Err(Error::Consistency {
                name: name.clone(),
                report: res.report(""),
            });
        }
    }
    Ok(SolutionBundle {
        ambient,
        tensors,
        source,
        kind,
    })
}

pub fn construct_solutions(source: SolutionSource, inputs: &SolutionInputs) -> Result<SolutionBundle> {
    match (source, inputs) {
        (SolutionSource::Tridendriform | SolutionSource::PostPoisson, SolutionInputs::Splitting(p)) => {
            let (kinds, ybe): (&[StructureKind], _) = match source {
                SolutionSource::Tridendriform => (
                    &[StructureKind::Tridendriform, StructureKind::Dendriform],
                    YbeKind::Aybe,
                ),
                _ => (&[StructureKind::PostPoisson, StructureKind::PrePoisson], YbeKind::Pybe),
            };
            if !kinds.contains(&p.kind) {
                return Err(Error::Unsupported(format!(
                    "{} solutions from a {} algebra",
                    source.tag(),
                    p.kind
                )));
            }
            let r = check_structure(p)?;
            if !r.passed() {
                return Err(Error::Hypothesis {
                    name: p.kind.tag().into(),
                    report: r,
                });
            }
            verified(splitting_dual_ambient(p)?, alpha_tensors(p.dim())?, source, ybe)
        }
        (SolutionSource::SkewFromOperator, SolutionInputs::Operator(s)) => {
            let m = s.context.without_carrier_ops();
            let r = o_operator_report(&s.t, &Rational::zero(), &m)?;
            if !r.passed() {
                return Err(Error::Hypothesis {
                    name: "o-operator".into(),
                    report: r,
                });
            }
            let ybe = match s.kind {
                OperatorKind::Associative => YbeKind::Aybe,
                OperatorKind::Poisson => YbeKind::Pybe,
                OperatorKind::Lie => YbeKind::Cybe,
            };
            verified(
                module_dual_ambient(&m)?,
                vec![("skew".into(), skew_tensor(&s.t)?)],
                source,
                ybe,
            )
        }
        _ => Err(Error::Invalid(format!(
            "{} needs {} input",
            source.tag(),
            match source {
                SolutionSource::SkewFromOperator => "operator",
                _ => "splitting-algebra",
            }
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deform::{gen_product_shift, gen_truncated_poly_example, unit_algebra};
    use crate::kernel::SparseVec;
    use crate::operators::check_o_operator;
    use crate::structures::{Role, Side};

    fn product_shift() -> StructurePresentation<Rational> {
        gen_product_shift(&unit_algebra().with_kind(StructureKind::Associative).unwrap(), 2).unwrap()
    }

    #[test]
    fn alpha_blocks() {
        let [a1, _, _, a4] = alpha_operators(1);
        assert_eq!(a1, Matrix::from_ints(&[&[-1, 1], &[0, 0]]));
        assert_eq!(a4, Matrix::from_ints(&[&[0, 0], &[1, -1]]));
    }

    #[test]
    fn alphas_are_rota_baxter_on_the_splitting_semidirect() {
        let p = product_shift();
        let hat = splitting_semidirect(&p).unwrap();
        for a in alpha_operators(p.dim()) {
            let s = OOperatorSpec::rota_baxter(&hat, a, Rational::one()).unwrap();
            assert!(check_o_operator(&s).unwrap().passed());
        }
    }

    #[test]
    fn alphas_are_lie_rota_baxter_for_post_poisson_input() {
        let ex = gen_truncated_poly_example(&Rational::from_int(2), &Rational::from_int(3), 2, 1).unwrap();
        let m = splitting_module(&ex.qcl).unwrap();
        let lie = ModuleData::new(
            StructurePresentation::single(
                m.base.space.clone(),
                StructureKind::Lie,
                Role::Bracket,
                m.base.op(Role::Bracket).unwrap().clone(),
            )
            .unwrap(),
            m.carrier.clone(),
            m.carrier_ops
                .iter()
                .filter(|(r, _)| **r == Role::Bracket)
                .map(|(r, o)| (*r, o.clone()))
                .collect(),
            [Side::Left, Side::Right]
                .into_iter()
                .map(|side| ((Role::Bracket, side), m.action(Role::Bracket, side).unwrap().clone()))
                .collect(),
        )
        .unwrap();
        let g = lie.semidirect().unwrap();
        for a in alpha_operators(ex.basis.len()) {
            let s = OOperatorSpec::rota_baxter(&g, a, Rational::one()).unwrap();
            assert!(check_o_operator(&s).unwrap().passed());
        }
    }

    #[test]
    fn tridendriform_bundle_on_product_shift() {
        let b = construct_solutions(
            SolutionSource::Tridendriform,
            &SolutionInputs::Splitting(product_shift()),
        )
        .unwrap();
        assert_eq!(b.ambient().dim(), 8);
        assert_eq!(b.tensors().len(), 8);
        for (_, r) in b.tensors() {
            assert!(ybe_residual(YbeKind::AybeOp, r, b.ambient()).unwrap().is_zero());
        }
    }

    #[test]
    fn eta_blocks_are_disjoint_and_swapped_by_the_twist() {
        let n = 3;
        let id = unsharp(&Matrix::identity(2 * n)).eta_embed();
        for (r, c, _) in id.nonzero() {
            assert!(r < 2 * n && c >= 2 * n);
        }
        for (r, c, _) in id.twist().unwrap().nonzero() {
            assert!(r >= 2 * n && c < 2 * n);
        }
    }

    #[test]
    fn zero_operator_gives_zero_skew_solution() {
        let a = crate::deform::truncated_polynomial_algebra(1, 2);
        let s = OOperatorSpec::rota_baxter(&a, Matrix::zeros(2, 2), Rational::one()).unwrap();
        let b = construct_solutions(SolutionSource::SkewFromOperator, &SolutionInputs::Operator(s)).unwrap();
        assert!(b.tensor("skew").unwrap().is_zero());
    }

    #[test]
    fn mismatched_inputs_are_rejected() {
        let a = crate::deform::truncated_polynomial_algebra(1, 2);
        assert!(construct_solutions(SolutionSource::Tridendriform, &SolutionInputs::Splitting(a.clone())).is_err());
        let mut bad = product_shift();
        let succ = bad.ops.get_mut(&Role::Succ).unwrap();
        succ.set_product(0, 0, SparseVec::basis(0));
        assert!(matches!(
            construct_solutions(SolutionSource::Tridendriform, &SolutionInputs::Splitting(bad)),
            Err(Error::Hypothesis { .. })
        ));
    }
}
