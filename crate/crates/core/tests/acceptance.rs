mod common;

use std::time::{Duration, Instant};

use qclab_core::deform::{
    check_deformation, derive_deformation, gen_product_shift, gen_truncated_poly_example, gen_zinbiel_poly_example,
    qcl, truncated_polynomial_algebra, unit_algebra, Algebraic, DeformationJet, DerivationPair, PolyExample,
};
use qclab_core::kernel::{unsharp, Matrix, Rational, SparseVec, TensorElement};
use qclab_core::operators::{
    check_o_operator, check_scalar_deformation, o_operator_report, transfer_qcl_operator, verify_diagram, DiagramId,
    OOperatorSpec,
};
use qclab_core::structures::{
    check_structure, dualize_module, regular_module, splitting_module, AxiomReport, Role, StructureKind,
    StructurePresentation,
};
use qclab_core::yangbaxter::{
    construct_solutions, deformation_transfer, dualize_deformation, induce_dual_algebra, invariance_report,
    module_dual_ambient, skew_tensor, splitting_dual_ambient, ybe_residual, SolutionBundle, SolutionInputs,
    SolutionSource, TransferMode, YbeKind,
};

use common::{assoc_residual, dense_aybe, dense_cybe, dense_vec, is_zero, tri_residual};

type Outcome = Result<(), String>;

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn passes(name: &str, r: &AxiomReport) -> Outcome {
    ensure(r.passed(), || format!("{name}: {:?}", r.failing_axioms()))
}

fn q() -> (Rational, Rational) {
    (Rational::from_int(2), Rational::from_int(3))
}

fn poly(degree: u32, order: usize) -> Result<PolyExample, String> {
    let (q1, q2) = q();
    gen_truncated_poly_example(&q1, &q2, degree, order).map_err(|e| e.to_string())
}

fn e<T>(r: qclab_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// A perturbed tridendriform instance must fail with each reported residual reproduced densely.
fn perturbed_tri_fails(name: &str, p: &StructurePresentation<Rational>) -> Outcome {
    let mut bad = p.clone();
    bad.ops
        .get_mut(&Role::Prec)
        .unwrap()
        .add_to_product(0, 0, &SparseVec::single(0, Rational::one()));
    let r = e(check_structure(&bad))?;
    let f = r
        .failures
        .first()
        .ok_or_else(|| format!("{name}: perturbation not detected"))?;
    let [x, y, z] = f.indices[..] else {
        return Err(format!("{name}: no triple"));
    };
    let oracle = tri_residual(&bad, &f.axiom, x, y, z);
    ensure(
        oracle.iter().any(|c| !c.is_zero()) && dense_vec(bad.dim(), &f.residual) == oracle,
        || {
            format!(
                "{name}: reported {} at {:?} disagrees with direct expansion",
                f.axiom, f.indices
            )
        },
    )
}

fn criterion_1() -> Vec<(String, Outcome, Duration)> {
    let mut out = Vec::new();
    let mut run = |name: &str, f: &dyn Fn() -> Outcome| {
        let t = Instant::now();
        let r = f();
        out.push((name.to_string(), r, t.elapsed()));
    };
    let base = truncated_polynomial_algebra(1, 3);
    run("t-truncated commutative associative", &|| {
        ensure(
            base.dim() == 3 && base.kind == StructureKind::CommutativeAssociative,
            || "base shape".into(),
        )?;
        passes("base", &e(check_structure(&base))?)?;
        let mut bad = base.clone();
        bad.ops
            .get_mut(&Role::Circ)
            .unwrap()
            .add_to_product(0, 1, &SparseVec::single(2, Rational::one()));
        let r = e(check_structure(&bad))?;
        let f = r.first_failure("Assoc").ok_or("perturbation not caught by Assoc")?;
        let [x, y, z] = f.indices[..] else {
            return Err("no triple".into());
        };
        let oracle = assoc_residual(bad.op(Role::Circ).unwrap(), x, y, z);
        ensure(
            dense_vec(3, &f.residual) == oracle && oracle.iter().any(|c| !c.is_zero()),
            || "Assoc residual".into(),
        )
    });
    for n in [2, 3] {
        run(&format!("product-shift n={n} over the t-truncated base"), &|| {
            let p = e(gen_product_shift(&e(base.with_kind(StructureKind::Associative))?, n))?;
            ensure(p.kind == StructureKind::Tridendriform && p.dim() == 3 * n, || {
                "shape".into()
            })?;
            passes("tridendriform", &e(check_structure(&p))?)?;
            perturbed_tri_fails("product-shift", &p)
        });
    }
    run("truncated polynomial tridendriform q=(2,3) D=3", &|| {
        let ex = poly(3, 0)?;
        passes("tridendriform", &e(check_structure(&ex.tridendriform))?)?;
        perturbed_tri_fails("polynomial", &ex.tridendriform)
    });
    out
}

/// `(i1 j2 − i2 j1)` and `(i1 j2 − i2 j1) τ(i)` with `τ(i) = q^i / (1 − q^i)`, on `x^(i+j)` when in range.
fn closed_form_check(ex: &PolyExample, limit: &StructurePresentation<Rational>) -> Outcome {
    let (q1, q2) = q();
    let bracket = e(limit.op(Role::Bracket))?;
    let triangle = e(limit.op(Role::Triangle))?;
    for (a, ma) in ex.basis.iter().enumerate() {
        for (b, mb) in ex.basis.iter().enumerate() {
            let (i1, i2, j1, j2) = (
                ma.exps[0] as i64,
                ma.exps[1] as i64,
                mb.exps[0] as i64,
                mb.exps[1] as i64,
            );
            let skew = Rational::from_int(i1 * j2 - i2 * j1);
            let qi = q1.pow(ma.exps[0]) * q2.pow(ma.exps[1]);
            let tau = qi.clone() * (Rational::one() - qi).recip().ok_or("degenerate q")?;
            let target = ex
                .basis
                .iter()
                .position(|m| m.exps == vec![ma.exps[0] + mb.exps[0], ma.exps[1] + mb.exps[1]]);
            let expect = |c: Rational| match target {
                Some(k) if !c.is_zero() => SparseVec::single(k, c),
                _ => SparseVec::new(),
            };
            ensure(bracket.product(a, b) == &expect(skew.clone()), || {
                format!("bracket at ({}, {})", ma.label(), mb.label())
            })?;
            ensure(triangle.product(a, b) == &expect(skew * tau), || {
                format!("triangle at ({}, {})", ma.label(), mb.label())
            })?;
        }
    }
    Ok(())
}

fn criterion_2() -> Outcome {
    let ex = poly(3, 3)?;
    passes("tridendriform deformation", &e(check_deformation(&ex.jet))?)?;
    let limit = e(qcl(&ex.jet))?;
    let limit = e(limit.structure())?.clone();
    ensure(limit.kind == StructureKind::PostPoisson, || {
        format!("limit kind {}", limit.kind)
    })?;
    passes("post-poisson", &e(check_structure(&limit))?)?;
    closed_form_check(&ex, &limit)?;
    let zero = ex.jet.layer(0);
    let zero = e(zero.structure())?;
    for role in [Role::Succ, Role::Dot] {
        ensure(limit.op(role).ok() == zero.op(role).ok(), || {
            format!("{role} differs from layer 0")
        })?;
    }
    Ok(())
}

fn regular_jet(ex: &PolyExample, order: usize, carrier_ops: bool) -> Result<DeformationJet, String> {
    let d = e(DerivationPair::block_diagonal(&ex.derivations, &ex.derivations))?;
    let m = e(regular_module(&ex.dot_algebra))?;
    let m = if carrier_ops { m } else { m.without_carrier_ops() };
    e(derive_deformation(&Algebraic::Module(m), &d, order))
}

fn criterion_3() -> Outcome {
    let ex = poly(3, 3)?;
    let t = e(OOperatorSpec::rota_baxter(
        &ex.dot_algebra,
        ex.rota_baxter.clone(),
        Rational::one(),
    ))?;
    let id = e(OOperatorSpec::new(
        Matrix::identity(ex.basis.len()),
        Rational::one(),
        e(splitting_module(&ex.tridendriform))?,
    ))?;
    passes("T at order 0", &e(check_o_operator(&t))?)?;
    passes("identity at order 0", &e(check_o_operator(&id))?)?;
    let t_jet = regular_jet(&ex, 3, true)?;
    let id_jet = DeformationJet {
        order: 3,
        target: Algebraic::Module(e(splitting_module(e(ex.jet.target.structure())?))?),
        exact: ex.jet.exact,
    };
    passes("T orderwise", &e(check_scalar_deformation(&t, &t_jet))?)?;
    passes("identity orderwise", &e(check_scalar_deformation(&id, &id_jet))?)?;
    passes("T on the Poisson limit", &e(transfer_qcl_operator(&t, &t_jet))?)?;
    passes(
        "identity on the post-Poisson limit",
        &e(transfer_qcl_operator(&id, &id_jet))?,
    )?;
    let limit = e(qcl(&t_jet))?;
    ensure(e(limit.module())?.base.kind == StructureKind::Poisson, || {
        "T limit is not over a Poisson algebra".into()
    })?;
    let limit = e(qcl(&id_jet))?;
    let post = e(e(qcl(&ex.jet))?.structure())?.clone();
    ensure(post.kind == StructureKind::PostPoisson, || {
        "splitting limit kind".into()
    })?;
    ensure(e(limit.module())?.same_constants(&e(splitting_module(&post))?), || {
        "identity context limit is not the module of the post-Poisson limit".into()
    })
}

fn criterion_4() -> Vec<(String, Outcome, Duration)> {
    DiagramId::ALL
        .iter()
        .map(|d| {
            let t = Instant::now();
            let r = e(d.default_inputs())
                .and_then(|i| e(verify_diagram(*d, &i)))
                .and_then(|r| passes(d.tag(), &r));
            (d.tag().to_string(), r, t.elapsed())
        })
        .collect()
}

fn bundle_solves_densely(b: &SolutionBundle) -> Outcome {
    let circ = e(b.ambient().op(Role::Circ))?;
    for (name, r) in b.tensors() {
        ensure(is_zero(&dense_aybe(r, circ)), || {
            format!("{name}: A(r) nonzero by direct expansion")
        })?;
        if b.kind() == YbeKind::Pybe {
            ensure(is_zero(&dense_cybe(r, e(b.ambient().op(Role::Bracket))?)), || {
                format!("{name}: C(r) nonzero")
            })?;
        }
        ensure(e(ybe_residual(b.kind(), r, b.ambient()))?.is_zero(), || {
            format!("{name}: library residual")
        })?;
    }
    Ok(())
}

fn skew_biconditional(
    t: &Matrix,
    m: &qclab_core::structures::ModuleData<Rational>,
    kind: YbeKind,
) -> Result<bool, String> {
    let ambient = e(module_dual_ambient(m))?;
    let r = e(skew_tensor(t))?;
    let solves = match kind {
        YbeKind::Pybe => {
            is_zero(&dense_aybe(&r, e(ambient.op(Role::Circ))?))
                && is_zero(&dense_cybe(&r, e(ambient.op(Role::Bracket))?))
        }
        _ => is_zero(&dense_aybe(&r, e(ambient.op(Role::Circ))?)),
    };
    let operator = e(o_operator_report(t, &Rational::zero(), m))?.passed();
    let induced = e(induce_dual_algebra(&r, &ambient))?;
    ensure(
        solves == operator && induced.agree() && induced.solves() == solves,
        || format!("skew equivalence breaks: solves={solves} operator={operator}"),
    )?;
    Ok(solves)
}

fn criterion_5() -> Outcome {
    let ps = e(gen_product_shift(
        &e(unit_algebra().with_kind(StructureKind::Associative))?,
        2,
    ))?;
    let b = e(construct_solutions(
        SolutionSource::Tridendriform,
        &SolutionInputs::Splitting(ps),
    ))?;
    ensure(b.tensors().len() == 8 && b.ambient().dim() == 8, || {
        "expected 8 tensors in dimension 8".into()
    })?;
    bundle_solves_densely(&b)?;

    let ex = poly(2, 1)?;
    let limit = e(e(qcl(&ex.jet))?.structure())?.clone();
    let b = e(construct_solutions(
        SolutionSource::PostPoisson,
        &SolutionInputs::Splitting(limit),
    ))?;
    ensure(
        b.kind() == YbeKind::Pybe && b.ambient().kind == StructureKind::Poisson,
        || "Poisson ambient".into(),
    )?;
    bundle_solves_densely(&b)?;

    let z = e(gen_zinbiel_poly_example(3, 1))?;
    let plain = e(regular_module(&z.dot_algebra))?.without_carrier_ops();
    let d = e(DerivationPair::block_diagonal(&z.derivations, &z.derivations))?;
    let jet = e(derive_deformation(
        &Algebraic::Module(e(regular_module(&z.dot_algebra))?),
        &d,
        1,
    ))?;
    let poisson = e(e(qcl(&jet))?.module())?.without_carrier_ops();
    for (m, kind, source_kind) in [
        (&plain, YbeKind::Aybe, YbeKind::Aybe),
        (&poisson, YbeKind::Pybe, YbeKind::Pybe),
    ] {
        let spec = e(OOperatorSpec::new(z.operator.clone(), Rational::zero(), m.clone()))?;
        let b = e(construct_solutions(
            SolutionSource::SkewFromOperator,
            &SolutionInputs::Operator(spec),
        ))?;
        ensure(b.kind() == source_kind, || format!("skew source kind {:?}", b.kind()))?;
        bundle_solves_densely(&b)?;
        ensure(skew_biconditional(&z.operator, m, kind)?, || {
            "operator side fails".into()
        })?;
        let mut bad = z.operator.clone();
        bad.set(0, 1, Rational::one());
        ensure(!skew_biconditional(&bad, m, kind)?, || {
            "perturbed operator still solves".into()
        })?;
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    let ex = poly(3, 3)?;
    let ambient = e(splitting_dual_ambient(e(ex.jet.target.structure())?))?;
    let jet = DeformationJet {
        order: 3,
        target: Algebraic::Structure(ambient.clone()),
        exact: false,
    };
    passes("ambient deformation", &e(check_deformation(&jet))?)?;
    let id = unsharp(&Matrix::identity(2 * ex.basis.len())).eta_embed();
    passes(
        "invariance of the symmetric part of the identity tensor",
        &e(invariance_report(&e(id.symmetric_part())?, &ambient))?,
    )?;
    let b = e(construct_solutions(
        SolutionSource::Tridendriform,
        &SolutionInputs::Splitting(ex.tridendriform.clone()),
    ))?;
    for (name, r) in b.tensors() {
        passes(name, &e(deformation_transfer(r, &jet, TransferMode::Full))?)?;
    }
    let sym: TensorElement = e(id.add(&e(id.twist())?))?;
    passes(
        "invariance-only",
        &e(deformation_transfer(&sym, &jet, TransferMode::InvarianceOnly))?,
    )
}

fn criterion_7() -> Outcome {
    let ex = poly(3, 3)?;
    let jet = regular_jet(&ex, 3, false)?;
    let dual = e(dualize_deformation(&jet))?;
    passes("dual bimodule deformation", &e(check_deformation(&dual))?)?;
    let dual_of_limit = e(dualize_module(e(e(qcl(&jet))?.module())?))?;
    let limit_of_dual = e(e(qcl(&dual))?.module())?.clone();
    ensure(limit_of_dual.same_constants(&dual_of_limit), || {
        "quasiclassical limit of the dual differs from the dual of the limit".into()
    })?;
    let zero = dual.layer(0);
    let base = e(ex.dot_algebra.with_kind(StructureKind::Associative))?;
    let plain = e(regular_module(&base))?.without_carrier_ops();
    ensure(e(zero.module())?.same_constants(&e(dualize_module(&plain))?), || {
        "dual layer 0".into()
    })
}

fn main() {
    let mut lines: Vec<(usize, String, Outcome, Duration, Duration)> = Vec::new();
    for (name, r, t) in criterion_1() {
        lines.push((1, format!("axiom suite: {name}"), r, t, Duration::from_secs(1)));
    }
    let timed = |f: fn() -> Outcome| {
        let t = Instant::now();
        let r = f();
        (r, t.elapsed())
    };
    let (r, t) = timed(criterion_2);
    lines.push((
        2,
        "deformation and quasiclassical limit chain".into(),
        r,
        t,
        Duration::from_secs(5),
    ));
    let (r, t) = timed(criterion_3);
    lines.push((3, "O-operator suite".into(), r, t, Duration::from_secs(5)));
    for (name, r, t) in criterion_4() {
        lines.push((4, format!("diagram {name}"), r, t, Duration::from_secs(10)));
    }
    let (r, t) = timed(criterion_5);
    lines.push((5, "Yang-Baxter constructions".into(), r, t, Duration::from_secs(30)));
    let (r, t) = timed(criterion_6);
    lines.push((6, "deformation to PYBE transfer".into(), r, t, Duration::from_secs(30)));
    let (r, t) = timed(criterion_7);
    lines.push((
        7,
        "dual and quasiclassical limit commute".into(),
        r,
        t,
        Duration::from_secs(5),
    ));

    let mut failed = 0;
    for (n, name, r, t, limit) in &lines {
        let ok = r.is_ok() && t <= limit;
        failed += usize::from(!ok);
        let why = match r {
            Err(m) => format!(" ({m})"),
            Ok(()) if t > limit => format!(" (over the {limit:?} limit)"),
            Ok(()) => String::new(),
        };
        println!(
            "criterion {n} {}: {name} [{:.1} ms]{why}",
            if ok { "PASS" } else { "FAIL" },
            t.as_secs_f64() * 1e3
        );
    }
    if failed > 0 {
        println!("{failed} acceptance checks failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria pass");
}
