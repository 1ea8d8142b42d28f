use std::path::Path;
use std::process::Command;

use qclab_core::deform::{gen_truncated_poly_example, Algebraic, DeformationJet};
use qclab_core::io;
use qclab_core::kernel::Rational;
use qclab_core::operators::{DiagramId, DiagramInputs};
use qclab_core::yangbaxter::{construct_solutions, splitting_dual_ambient, SolutionInputs, SolutionSource};
use serde_json::Value;

fn qclab(dir: &Path, args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_qclab"))
        .current_dir(dir)
        .arg("--format")
        .arg("json")
        .args(args)
        .output()
        .expect("binary runs");
    let code = out.status.code().expect("exit code");
    let report = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, report)
}

fn statements(r: &Value) -> &Vec<Value> {
    r["statements"].as_array().expect("statements")
}

fn write(dir: &Path, name: &str, text: &str) {
    std::fs::write(dir.join(name), text).unwrap();
}

#[test]
fn poly_example_pipeline_ends_post_poisson() {
    let d = tempfile::tempdir().unwrap();
    let (c, r) = qclab(
        d.path(),
        &[
            "gen",
            "poly-example",
            "--q1",
            "2",
            "--q2",
            "3",
            "--D",
            "3",
            "--N",
            "3",
            "--out-dir",
            "ex",
        ],
    );
    assert_eq!(c, 0, "{r}");
    assert!(statements(&r).iter().all(|s| s["passed"] == true));
    let (c, r) = qclab(d.path(), &["deform", "qcl", "ex/deformation.json", "--out", "qcl.json"]);
    assert_eq!(c, 0, "{r}");
    let (c, r) = qclab(d.path(), &["check", "qcl.json", "--kind", "post-poisson"]);
    assert_eq!(c, 0, "{r}");
    assert_eq!(statements(&r)[0]["name"], "post-poisson axioms");
    assert_eq!(
        io::read_structure(&d.path().join("qcl.json")).unwrap(),
        io::read_structure(&d.path().join("ex/closed-form.json")).unwrap()
    );
}

#[test]
fn product_shift_gives_eight_solutions() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(
        qclab(d.path(), &["gen", "product-shift", "--n", "2", "--out", "ps.json"]).0,
        0
    );
    let (c, r) = qclab(
        d.path(),
        &[
            "ybe",
            "construct",
            "--source",
            "tridendriform",
            "--input",
            "ps.json",
            "--out-dir",
            "sol",
        ],
    );
    assert_eq!(c, 0, "{r}");
    let st = statements(&r);
    assert_eq!(st.len(), 8);
    assert!(st
        .iter()
        .all(|s| s["passed"] == true && s["name"].as_str().unwrap().contains("dimension 8")));
    for s in ["alpha1-plus", "alpha4-minus"] {
        let (c, r) = qclab(
            d.path(),
            &[
                "ybe",
                "residual",
                &format!("sol/{s}.json"),
                "--structure",
                "sol/ambient.json",
            ],
        );
        assert_eq!(c, 0, "{r}");
    }
}

#[test]
fn perturbed_file_fails_naming_axiom_and_triple() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(
        qclab(d.path(), &["gen", "product-shift", "--n", "2", "--out", "ps.json"]).0,
        0
    );
    let mut f: Value = serde_json::from_str(&std::fs::read_to_string(d.path().join("ps.json")).unwrap()).unwrap();
    f["ops"]["dot"]
        .as_array_mut()
        .unwrap()
        .push(serde_json::json!([1, 1, 0, "1"]));
    write(d.path(), "bad.json", &f.to_string());
    let (c, r) = qclab(d.path(), &["check", "bad.json"]);
    assert_eq!(c, 1, "{r}");
    let fail = &statements(&r)[0]["report"]["failures"][0];
    assert!(fail["axiom"].as_str().unwrap().starts_with("Tri"));
    assert_eq!(fail["indices"].as_array().unwrap().len(), 3);
}

#[test]
fn input_errors_exit_two_with_the_reason() {
    let d = tempfile::tempdir().unwrap();
    write(
        d.path(),
        "zero.json",
        r#"{"dim": 1, "kind": "associative", "ops": {"circ": [[0, 0, 0, "1/0"]]}}"#,
    );
    let (c, r) = qclab(d.path(), &["check", "zero.json"]);
    assert_eq!(c, 2);
    assert!(r["error"].as_str().unwrap().contains("ops.circ[0]"));
    write(
        d.path(),
        "roles.json",
        r#"{"dim": 1, "kind": "tridendriform", "ops": {"dot": []}}"#,
    );
    let (c, r) = qclab(d.path(), &["check", "roles.json"]);
    assert_eq!(c, 2);
    let e = r["error"].as_str().unwrap();
    assert!(e.contains("prec") && e.contains("succ"), "{e}");
    assert_eq!(qclab(d.path(), &["check", "missing.json"]).0, 2);
    assert_eq!(qclab(d.path(), &["diagram", "verify", "no-such-diagram"]).0, 2);
    assert_eq!(
        qclab(
            d.path(),
            &["ybe", "construct", "--source", "x", "--input", "missing.json"]
        )
        .0,
        2
    );
}

#[test]
fn reports_are_reproducible_from_artifacts() {
    let d = tempfile::tempdir().unwrap();
    let args = ["gen", "poly-example", "--D", "2", "--N", "2", "--out-dir", "ex"];
    let (_, first) = qclab(d.path(), &args);
    let files: Vec<String> = ["deformation.json", "rota-baxter.json"]
        .iter()
        .map(|f| std::fs::read_to_string(d.path().join("ex").join(f)).unwrap())
        .collect();
    let (_, second) = qclab(d.path(), &args);
    assert_eq!(first, second);
    for (f, before) in ["deformation.json", "rota-baxter.json"].iter().zip(&files) {
        assert_eq!(&std::fs::read_to_string(d.path().join("ex").join(f)).unwrap(), before);
    }
    let a = qclab(d.path(), &["deform", "check", "ex/deformation.json"]);
    let b = qclab(d.path(), &["deform", "check", "ex/deformation.json"]);
    assert_eq!(a, b);
}

#[test]
fn operator_commands() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(
        qclab(
            d.path(),
            &["gen", "poly-example", "--D", "2", "--N", "2", "--out-dir", "ex"]
        )
        .0,
        0
    );
    let (c, r) = qclab(
        d.path(),
        &[
            "deform",
            "derive",
            "ex/dot-algebra.json",
            "--derivations",
            "ex/derivations.json",
            "--N",
            "2",
            "--out",
            "dj.json",
        ],
    );
    assert_eq!(c, 0, "{r}");
    let (c, r) = qclab(d.path(), &["oop", "deform-check", "ex/rota-baxter.json", "dj.json"]);
    assert_eq!(c, 0, "{r}");
    assert_eq!(statements(&r).len(), 2);
    let (c, _) = qclab(
        d.path(),
        &["oop", "induce", "ex/rota-baxter.json", "--out", "induced.json"],
    );
    assert_eq!(c, 0);
    assert_eq!(
        io::read_structure(&d.path().join("induced.json")).unwrap(),
        io::read_structure(&d.path().join("ex/tridendriform.json")).unwrap()
    );
    let mut f: Value =
        serde_json::from_str(&std::fs::read_to_string(d.path().join("ex/rota-baxter.json")).unwrap()).unwrap();
    f["weight"] = Value::from("2");
    write(d.path(), "w2.json", &f.to_string());
    assert_eq!(qclab(d.path(), &["oop", "check", "w2.json"]).0, 1);
}

#[test]
fn diagrams_and_transfer() {
    let d = tempfile::tempdir().unwrap();
    let (c, r) = qclab(d.path(), &["diagram", "verify", "all"]);
    assert_eq!(c, 0, "{r}");
    assert_eq!(statements(&r).len(), DiagramId::ALL.len());
    let DiagramInputs::Tensor { r: t, jet } = DiagramId::InducedDual.default_inputs().unwrap() else {
        panic!()
    };
    write(d.path(), "r.json", &io::tensor_json(&t));
    write(d.path(), "jet.json", &io::deformation_json(&jet));
    let (c, r) = qclab(
        d.path(),
        &[
            "diagram",
            "verify",
            "induced-dual",
            "--tensor",
            "r.json",
            "--deformation",
            "jet.json",
        ],
    );
    assert_eq!(c, 0, "{r}");
    let (c, r) = qclab(
        d.path(),
        &["ybe", "transfer", "r.json", "jet.json", "--invariance-only"],
    );
    assert_eq!(c, 0, "{r}");
    let (c, r) = qclab(
        d.path(),
        &["diagram", "verify", "induced-dual", "--deformation", "jet.json"],
    );
    assert_eq!(c, 2, "{r}");
}

#[test]
fn full_transfer_of_a_splitting_solution() {
    let d = tempfile::tempdir().unwrap();
    let two = Rational::from_int(2);
    let ex = gen_truncated_poly_example(&two, &Rational::from_int(3), 2, 2).unwrap();
    let ambient = splitting_dual_ambient(ex.jet.target.structure().unwrap()).unwrap();
    let jet = DeformationJet {
        order: 2,
        target: Algebraic::Structure(ambient),
        exact: false,
    };
    let inputs = SolutionInputs::Splitting(ex.jet.layer(0).structure().unwrap().clone());
    let bundle = construct_solutions(SolutionSource::Tridendriform, &inputs).unwrap();
    write(d.path(), "jet.json", &io::deformation_json(&jet));
    write(
        d.path(),
        "r.json",
        &io::tensor_json(bundle.tensor("alpha3-minus").unwrap()),
    );
    let (c, r) = qclab(d.path(), &["ybe", "transfer", "r.json", "jet.json"]);
    assert_eq!(c, 0, "{r}");
    let names: Vec<&str> = statements(&r)[0]["report"]["checked"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert!(names.iter().any(|n| n.starts_with("conclusion")));
    write(d.path(), "t.json", r#"{"matrix": [["1"]]}"#);
    assert_eq!(qclab(d.path(), &["ybe", "transfer", "t.json", "jet.json"]).0, 2);
}
