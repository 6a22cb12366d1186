use jacpoisson::mapping_class::{dehn_twist_matrix, is_primitive, H1Lattice};
use jacpoisson_cli::{run, Outcome};
use proptest::prelude::*;
use serde_json::{json, Value};

fn cli(args: &[&str]) -> Outcome {
    run(std::iter::once("jacpoisson").chain(args.iter().copied()))
}

fn ok(args: &[&str]) -> Value {
    let out = cli(args);
    assert_eq!(out.code, 0, "{}", out.stdout);
    serde_json::from_str(&out.stdout).unwrap()
}

const FOLD: [&str; 4] = ["-F", "t", "-G", "-x^2+y^2+z^2"];

#[test]
fn every_document_is_versioned() {
    assert_eq!(ok(&["twist", "--genus", "1", "--curve", "0,1"])["schema_version"], json!(1));
    let err: Value = serde_json::from_str(&cli(&["twist"]).stdout).unwrap();
    assert_eq!(err["schema_version"], json!(1));
}

#[test]
fn usage_errors_exit_two_with_hint() {
    for args in [&["frobnicate"][..], &["twist", "--genus", "1"], &["bivector", "-F", "t"], &["bivector"]] {
        let out = cli(args);
        assert_eq!(out.code, 2, "{args:?}");
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["error"]["kind"], json!("usage"), "{args:?}");
    }
    let v: Value = serde_json::from_str(&cli(&["twist", "--genus", "1"]).stdout).unwrap();
    assert!(v["error"]["hint"].as_str().unwrap().contains("--curve"));
}

#[test]
fn domain_errors_exit_one_and_name_the_module() {
    let cases: [(&[&str], &str); 5] = [
        (&["twist", "--genus", "1", "--curve", "2,0"], "mapping_class"),
        (&["bivector", "-F", "t+", "-G", "x"], "symbolic_core"),
        (&["classify", "--germ", "fold", "--point", "0,1,0,0"], "singularity_catalog"),
        (&["cohomology", "--term", "0,1:x", "--term", "2,3:t", "--term", "1,2:z", "--cutoff", "1"], "cohomology_engine"),
        (&["glue", "-F", "t", "-G", "x", "--piece", "U_C=1,2:1", "--overlap"], "jacobian_poisson"),
    ];
    for (args, module) in cases {
        let out = cli(args);
        assert_eq!(out.code, 1, "{args:?}: {}", out.stdout);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["error"]["module"], json!(module), "{args:?}");
        assert!(v["error"]["message"].as_str().is_some());
    }
}

#[test]
fn fold_bivector_terms() {
    let v = ok(&["bivector", "-F", "t", "-G", "-x^2+y^2+z^2"]);
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 3);
    assert_eq!(terms[2], json!({"indices": [2, 3], "coef": "-2*x"}));
    assert_eq!(v["provenance"]["G"], json!("-x^2 + y^2 + z^2"));
    let raw = ok(&["bivector", "--term", "1,2:2*z"]);
    assert_eq!(raw["provenance"], Value::Null);
}

#[test]
fn casimir_and_jacobi() {
    let mut args = vec!["casimir"];
    args.extend(FOLD);
    assert_eq!(ok(&[&args[..], &["-f", "t^2 - x^2 + y^2 + z^2"]].concat())["is_casimir"], json!(true));
    assert_eq!(ok(&[&args[..], &["-f", "x"]].concat())["is_casimir"], json!(false));
    let bad = ok(&["jacobi", "--term", "0,1:y", "--term", "2,3:1"]);
    assert_eq!(bad["is_poisson"], json!(false));
    assert_eq!(bad["obstruction"].as_array().unwrap().len(), 1);
}

#[test]
fn modular_reports_both_paths() {
    let v = ok(&["modular", "--term", "1,2:x"]);
    assert_eq!(v["definition"], json!([{"index": 2, "coef": "1"}]));
    assert_eq!(v["rot_formula"], json!([{"index": 2, "coef": "-1"}]));
    assert_eq!((v["agree"].clone(), v["agree_up_to_sign"].clone()), (json!(false), json!(true)));
    let lef = ok(&["modular", "-F", "t^2-x^2+y^2-z^2", "-G", "2*t*x+2*y*z", "-k", "1+x^2"]);
    assert_eq!(lef["unimodular"], json!(true));
    assert_eq!(lef["rot_formula"], Value::Null);
    assert!(lef["rot_formula_error"].is_string());
}

#[test]
fn cohomology_blocks() {
    let v = ok(&["cohomology", "--term", "1,2:1", "--cutoff", "1"]);
    assert_eq!(v["cutoff"], json!(1));
    let blocks = v["blocks"].as_array().unwrap();
    let h0: u64 = blocks.iter().filter(|b| b["p"] == json!(0)).map(|b| b["h"].as_u64().unwrap()).sum();
    assert_eq!(h0, 3);
    let cusp = ok(&["cohomology", "-F", "t", "-G", "x^3+t*x+y^2-z^2", "--weights", "4,2,3,3", "--cutoff", "2"]);
    assert_eq!(cusp["flags"], json!([]));
}

#[test]
fn locus_and_classify() {
    let v = ok(&["locus", "--germ", "fold"]);
    assert_eq!(v["bound"], json!({"kind": "within", "zero_coordinates": [1, 2, 3]}));
    assert_eq!(v["samples"].as_array().unwrap().len(), 11);
    let empty = ok(&["locus", "--move", "birth", "--s", "-1"]);
    assert_eq!(empty["bound"]["kind"], json!("empty"));
    let c = ok(&["classify", "--move", "birth", "--s", "1", "--point", "3/5,4/5,0,0"]);
    assert_eq!(c["class"], json!("fold"));
    assert_eq!(c["point"], json!(["3/5", "4/5", "0", "0"]));
    let custom = ok(&["classify", "--f1", "t", "--f2", "x^3+t*x+y^2+z^2", "--point", "0,0,0,0"]);
    assert_eq!(custom["class"], json!("cusp"));
}

#[test]
fn lattice_commands() {
    let h = ok(&["hurwitz", "--genus", "1", "--word", "1,0;0,1;1,0;0,1;1,0;0,1", "--curve", "1,0"]);
    assert_eq!(h["matrix"], json!([[-1, 0], [0, -1]]));
    assert_eq!(h["fixes_c"], json!(false));
    let w = ok(&["word", "--genus", "1", "--word", "1,0;1,0^-1"]);
    assert_eq!(w["matrix"], json!([[1, 0], [0, 1]]));
    let inv = ok(&["twist", "--genus", "1", "--curve", "1,0", "--inverse"]);
    assert_eq!(inv["matrix"], json!([[1, 1], [0, 1]]));
    let r = ok(&["reduce", "--genus", "2", "--curve", "0,0,1,0"]);
    assert_eq!(r["matrix"], json!([[1, 0, 0, 0], [0, 1, 0, 0]]));
}

#[test]
fn leaf_images() {
    let model = ["--term", "0,1:1", "--term", "2,3:1", "--t1", "0,0,1,0", "--t2", "0,0,0,1"];
    let pd = ok(&[&["thom"][..], &model].concat());
    assert_eq!(pd["terms"], json!([{"indices": [2, 3], "coef": "1"}]));
    let top = ok(&[&["thom", "--top"][..], &model].concat());
    assert_eq!(top["terms"], json!([{"indices": [0, 1, 2, 3], "coef": "1"}]));
    assert_eq!(top["flags"].as_array().unwrap().len(), 1);
    let mon = ok(&[&["monpi"][..], &model, &["--genus", "1", "--word", "1,0", "--alpha", "0,1", "--basis", "1,0,0,0;0,1,0,0"]].concat());
    assert_eq!(
        mon["terms"],
        json!([{"indices": [0, 2, 3], "coef": "1"}, {"indices": [1, 2, 3], "coef": "1"}])
    );
    let fr = ok(&["thom", "-F", "t", "-G", "-x^2+y^2+z^2", "--t1", "1,0,0,0", "--t2", "0,-2*x,2*y,2*z"]);
    assert_eq!(fr["terms"], json!([]));
    assert_eq!(fr["flags"].as_array().unwrap().len(), 1);
}

#[test]
fn glue_report() {
    let v = ok(&[
        "glue", "-F", "t", "-G", "-x^2+y^2+z^2",
        "--piece", "U_C=1,2:4*z;1,3:-4*y;2,3:-4*x",
    ]);
    assert_eq!(v["expression"], json!("2*sigma + tau"));
    assert_eq!(v["relation"], json!("sigma + lambda + tau = 1"));
}

#[test]
fn text_mode() {
    let out = cli(&["--text", "twist", "--genus", "1", "--curve", "1,0"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "[[1,-1],[0,1]]\n"));
    let out = cli(&["jacobi", "--text", "-F", "t", "-G", "x"]);
    assert_eq!(out.stdout, "Poisson: [pi, pi] = 0\n");
}

proptest! {
    #[test]
    fn twist_command_matches_engine(c in prop::collection::vec(-3i64..=3, 4)) {
        prop_assume!(is_primitive(&c));
        let curve = c.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        let out = cli(&["twist", "--genus", "2", "--curve", &curve]);
        prop_assert_eq!(out.code, 0);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        let want = dehn_twist_matrix(&H1Lattice::new(2), &c).unwrap().to_rows();
        prop_assert_eq!(v["matrix"].clone(), json!(want));
        prop_assert_eq!(cli(&["twist", "--genus", "2", "--curve", &curve]), out);
    }
}

