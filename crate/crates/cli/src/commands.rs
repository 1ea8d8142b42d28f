use std::path::Path;

use qclab_core::deform::{
    check_deformation, derive_deformation, gen_product_shift, gen_truncated_poly_example, qcl, unit_algebra, Algebraic,
    DeformationJet,
};
use qclab_core::io;
use qclab_core::kernel::{Rational, Scalar};
use qclab_core::operators::{
    check_o_operator, check_scalar_deformation, compare_presentations, induce_splitting, transfer_qcl_operator,
    verify_diagram, DiagramId, DiagramInputs, OOperatorSpec,
};
use qclab_core::structures::{check_module, check_structure, AxiomReport, StructureKind};
use qclab_core::yangbaxter::{
    construct_solutions, deformation_transfer, ybe_residual, SolutionInputs, SolutionSource, TransferMode, YbeKind,
};
use qclab_core::{Error, Result};

use crate::report::Report;
use crate::{Command, DeformCmd, DiagramCmd, DiagramFiles, GenCmd, ModuleCmd, OopCmd, YbeCmd};

pub fn name(c: &Command) -> String {
    match c {
        Command::Check { .. } => "check".into(),
        Command::Module(ModuleCmd::Check { .. }) => "module check".into(),
        Command::Deform(d) => format!(
            "deform {}",
            match d {
                DeformCmd::Check { .. } => "check",
                DeformCmd::Derive { .. } => "derive",
                DeformCmd::Qcl { .. } => "qcl",
            }
        ),
        Command::Gen(g) => format!(
            "gen {}",
            match g {
                GenCmd::ProductShift { .. } => "product-shift",
                GenCmd::PolyExample { .. } => "poly-example",
            }
        ),
        Command::Oop(o) => format!(
            "oop {}",
            match o {
                OopCmd::Check { .. } => "check",
                OopCmd::DeformCheck { .. } => "deform-check",
                OopCmd::Induce { .. } => "induce",
            }
        ),
        Command::Diagram(DiagramCmd::Verify { tag, .. }) => format!("diagram verify {tag}"),
        Command::Ybe(y) => format!(
            "ybe {}",
            match y {
                YbeCmd::Residual { .. } => "residual",
                YbeCmd::Construct { .. } => "construct",
                YbeCmd::Transfer { .. } => "transfer",
            }
        ),
    }
}

pub fn run(c: &Command, out: &mut Report) -> Result<()> {
    match c {
        Command::Check { file, kind } => check(file, kind.as_deref(), out),
        Command::Module(ModuleCmd::Check { file }) => {
            let m = io::read_module(file)?;
            out.push("module axioms", check_module(&m)?);
            Ok(())
        }
        Command::Deform(d) => deform(d, out),
        Command::Gen(g) => generate(g, out),
        Command::Oop(o) => oop(o, out),
        Command::Diagram(DiagramCmd::Verify { tag, inputs }) => diagram(tag, inputs, out),
        Command::Ybe(y) => ybe(y, out),
    }
}

fn write(path: &Path, text: &str, out: &mut Report) -> Result<()> {
    io::write_text(path, text)?;
    out.artifact(path);
    Ok(())
}

fn target_check<S: Scalar>(a: &Algebraic<S>) -> Result<AxiomReport> {
    match a {
        Algebraic::Structure(p) => check_structure(p),
        Algebraic::Module(m) => check_module(m),
    }
}

fn deformation_statement(j: &DeformationJet, out: &mut Report) -> Result<bool> {
    let r = check_deformation(j)?;
    Ok(out.push(format!("{} deformation through order {}", j.kind(), j.order), r))
}

fn check(file: &Path, kind: Option<&str>, out: &mut Report) -> Result<()> {
    let text = io::read_text(file)?;
    if io::is_deformation_text(&text)? {
        if kind.is_some() {
            return Err(Error::Invalid("--kind applies to structure files".into()));
        }
        deformation_statement(&io::parse_deformation(&text)?, out)?;
        return Ok(());
    }
    match io::parse_algebraic(&text)? {
        Algebraic::Structure(mut p) => {
            if let Some(k) = kind {
                p = p.with_kind(k.parse()?)?;
            }
            let r = check_structure(&p)?;
            out.push(format!("{} axioms", p.kind), r);
        }
        Algebraic::Module(m) => {
            if kind.is_some() {
                return Err(Error::Invalid("--kind applies to structure files".into()));
            }
            out.push("module axioms", check_module(&m)?);
        }
    }
    Ok(())
}

fn deform(d: &DeformCmd, out: &mut Report) -> Result<()> {
    match d {
        DeformCmd::Check { file } => {
            deformation_statement(&io::read_deformation(file)?, out)?;
        }
        DeformCmd::Derive {
            file,
            derivations,
            order,
            out: path,
        } => {
            let a = io::read_algebraic(file)?;
            let pair = io::read_derivations(derivations)?;
            let j = derive_deformation(&a, &pair, *order)?;
            write(path, &io::deformation_json(&j), out)?;
            deformation_statement(&j, out)?;
        }
        DeformCmd::Qcl { file, out: path } => {
            let j = io::read_deformation(file)?;
            if deformation_statement(&j, out)? {
                let limit = qcl(&j)?;
                write(path, &io::algebraic_json(&limit), out)?;
                out.push(
                    format!("quasiclassical limit is {}", limit.kind()),
                    target_check(&limit)?,
                );
            }
        }
    }
    Ok(())
}

fn generate(g: &GenCmd, out: &mut Report) -> Result<()> {
    match g {
        GenCmd::ProductShift { base, n, out: path } => {
            let b = match base {
                Some(f) => io::read_structure(f)?,
                None => unit_algebra().with_kind(StructureKind::Associative)?,
            };
            let b_report = check_structure(&b)?;
            if !out.push(format!("base {} axioms", b.kind), b_report) {
                return Ok(());
            }
            let p = gen_product_shift(&b, *n)?;
            write(path, &io::structure_json(&p), out)?;
            out.push(format!("{} axioms", p.kind), check_structure(&p)?);
        }
        GenCmd::PolyExample {
            q1,
            q2,
            degree,
            order,
            out_dir,
        } => {
            let (q1, q2): (Rational, Rational) = (q1.parse()?, q2.parse()?);
            let ex = gen_truncated_poly_example(&q1, &q2, *degree, *order)?;
            std::fs::create_dir_all(out_dir).map_err(|e| Error::Io(format!("{}: {e}", out_dir.display())))?;
            let rb = OOperatorSpec::rota_baxter(&ex.dot_algebra, ex.rota_baxter.clone(), Rational::one())?;
            let limit = qcl(&ex.jet)?;
            write(
                &out_dir.join("dot-algebra.json"),
                &io::structure_json(&ex.dot_algebra),
                out,
            )?;
            write(
                &out_dir.join("tridendriform.json"),
                &io::structure_json(&ex.tridendriform),
                out,
            )?;
            write(&out_dir.join("rota-baxter.json"), &io::operator_json(&rb), out)?;
            write(
                &out_dir.join("derivations.json"),
                &io::derivations_json(&ex.derivations),
                out,
            )?;
            write(&out_dir.join("deformation.json"), &io::deformation_json(&ex.jet), out)?;
            write(
                &out_dir.join("closed-form.json"),
                &io::structure_json(&ex.closed_form),
                out,
            )?;
            out.push("commutative associative base axioms", check_structure(&ex.dot_algebra)?);
            out.push("weight-1 Rota-Baxter operator", check_o_operator(&rb)?);
            out.push("tridendriform axioms", check_structure(&ex.tridendriform)?);
            deformation_statement(&ex.jet, out)?;
            out.push("quasiclassical limit is post-poisson", target_check(&limit)?);
            out.push(
                "limit matches closed form",
                compare_presentations("qcl", limit.structure()?, &ex.closed_form)?,
            );
        }
    }
    Ok(())
}

fn oop(o: &OopCmd, out: &mut Report) -> Result<()> {
    match o {
        OopCmd::Check { file } => {
            let s = io::read_operator(file)?;
            out.push(format!("weight {} O-operator", s.weight), check_o_operator(&s)?);
        }
        OopCmd::DeformCheck { file, deformation } => {
            let s = io::read_operator(file)?;
            let j = io::read_deformation(deformation)?;
            let r = check_scalar_deformation(&s, &j)?;
            if out.push(format!("scalar deformation through order {}", j.order), r) {
                out.push("O-operator on the quasiclassical limit", transfer_qcl_operator(&s, &j)?);
            }
        }
        OopCmd::Induce { file, out: path } => {
            let s = io::read_operator(file)?;
            let p = induce_splitting(&s)?;
            write(path, &io::structure_json(&p), out)?;
            out.push(format!("induced {} axioms", p.kind), check_structure(&p)?);
        }
    }
    Ok(())
}

fn diagram_inputs(d: DiagramId, files: &DiagramFiles) -> Result<DiagramInputs> {
    if files.operator.is_none() && files.deformation.is_none() && files.tensor.is_none() {
        return d.default_inputs();
    }
    fn need<'a>(d: DiagramId, p: &'a Option<std::path::PathBuf>, flag: &str) -> Result<&'a Path> {
        p.as_deref()
            .ok_or_else(|| Error::Invalid(format!("diagram {d} needs --{flag}")))
    }
    let jet = io::read_deformation(need(d, &files.deformation, "deformation")?)?;
    Ok(match d {
        DiagramId::OperatorSplitting | DiagramId::SkewSolutions => DiagramInputs::Operator {
            spec: io::read_operator(need(d, &files.operator, "operator")?)?,
            jet,
        },
        DiagramId::InducedDual => DiagramInputs::Tensor {
            r: io::read_tensor(need(d, &files.tensor, "tensor")?)?,
            jet,
        },
        _ => DiagramInputs::Splitting { jet },
    })
}

fn diagram(tag: &str, files: &DiagramFiles, out: &mut Report) -> Result<()> {
    let ids: Vec<DiagramId> = if tag == "all" {
        DiagramId::ALL.to_vec()
    } else {
        vec![tag.parse()?]
    };
    for d in ids {
        let r = verify_diagram(d, &diagram_inputs(d, files)?)?;
        out.push(format!("diagram {d} commutes"), r);
    }
    Ok(())
}

fn ybe_kind(s: &str) -> Result<YbeKind> {
    s.parse()
}

fn ybe(y: &YbeCmd, out: &mut Report) -> Result<()> {
    match y {
        YbeCmd::Residual {
            tensor,
            structure,
            kind,
        } => {
            let r = io::read_tensor(tensor)?;
            let kind = ybe_kind(kind)?;
            let text = io::read_text(structure)?;
            let report = if io::is_deformation_text(&text)? {
                ybe_residual(kind, &r, &io::parse_deformation(&text)?.target.total()?)?.report("")
            } else {
                ybe_residual(kind, &r, &io::parse_algebraic(&text)?.total()?)?.report("")
            };
            out.push(format!("{} residual vanishes", kind.tag()), report);
        }
        YbeCmd::Construct { source, input, out_dir } => {
            let source: SolutionSource = source.parse()?;
            let inputs = match source {
                SolutionSource::SkewFromOperator => SolutionInputs::Operator(io::read_operator(input)?),
                _ => SolutionInputs::Splitting(io::read_structure(input)?),
            };
            let b = construct_solutions(source, &inputs)?;
            for (name, r) in b.tensors() {
                let res = ybe_residual(b.kind(), r, b.ambient())?;
                out.push(
                    format!(
                        "tensor {name} solves {} in dimension {}",
                        b.kind().tag(),
                        b.ambient().dim()
                    ),
                    res.report(""),
                );
            }
            if let Some(dir) = out_dir {
                std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
                write(&dir.join("ambient.json"), &io::structure_json(b.ambient()), out)?;
                for (name, r) in b.tensors() {
                    write(&dir.join(format!("{name}.json")), &io::tensor_json(r), out)?;
                }
            }
        }
        YbeCmd::Transfer {
            tensor,
            deformation,
            invariance_only,
        } => {
            let r = io::read_tensor(tensor)?;
            let j = io::read_deformation(deformation)?;
            let mode = if *invariance_only {
                TransferMode::InvarianceOnly
            } else {
                TransferMode::Full
            };
            out.push(
                "transfer to the quasiclassical limit",
                deformation_transfer(&r, &j, mode)?,
            );
        }
    }
    Ok(())
}
