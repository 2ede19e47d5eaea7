use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn ikp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ikp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    ikp(args).status.code().expect("exit code")
}

fn report(args: &[&str]) -> Value {
    serde_json::from_slice(&ikp(args).stdout).expect("JSON on stdout")
}

#[test]
fn exit_codes() {
    let prop = data("chain2-prop.json");
    let fo = data("cd-fo.json");
    let set = data("v3-chain.json");
    let cases: &[(&[&str], i32)] = &[
        (&["parse", "--lang", "prop", "p -> ~~p"], 0),
        (&["check", "--model", &prop, "--formula", "p | ~p"], 1),
        (&["check", "--model", &prop, "--formula", "~~(p | ~p)"], 0),
        (&["decide", "p | ~p"], 1),
        (&["decide", "~~(p -> p)"], 0),
        (
            &[
                "check-fo",
                "--model",
                &fo,
                "--formula",
                "forall x (P(x) | q) -> (forall x P(x)) | q",
            ],
            1,
        ),
        (
            &[
                "audit",
                "--axioms",
                "EmptySet,Extensionality",
                "--model",
                &set,
            ],
            0,
        ),
        (&["exp-failure", "--chain", "2"], 1),
        (&["equality-collapse", "--two-element"], 1),
        (&["equality-collapse", "--model", &set], 0),
        (
            &["dejongh", "prop", "--model", &prop, "--formula", "p | ~p"],
            0,
        ),
        (
            &[
                "dejongh",
                "relative",
                "--model",
                &fo,
                "--formula",
                "forall x (P(x) | q) -> (forall x P(x)) | q",
            ],
            0,
        ),
        (
            &[
                "dejongh", "mimic", "--model", &fo, "--depth", "1", "--random", "5",
            ],
            0,
        ),
        (&["frame", "export", "--frame", &prop, "--dot"], 0),
        (
            &["check", "--model", "no-such-file.json", "--formula", "p"],
            3,
        ),
        (&["parse", "--lang", "prop", "p &"], 3),
        (&["decide"], 3),
    ];
    for (args, want) in cases {
        assert_eq!(code(args), *want, "ikp {}", args.join(" "));
    }
}

#[test]
fn reports_carry_seed_and_hash() {
    let fo = data("cd-fo.json");
    let args = [
        "--seed", "5", "dejongh", "mimic", "--model", &fo, "--depth", "1", "--random", "5",
    ];
    let r = report(&args);
    assert_eq!(r["command"], "dejongh mimic");
    assert_eq!(r["seed"], 5);
    assert_eq!(r["verdict"], "pass");
    assert!(r["report"]["model_hash"]
        .as_str()
        .is_some_and(|h| !h.is_empty()));
}

#[test]
fn reruns_are_byte_identical() {
    let fo = data("cd-fo.json");
    let set = data("v3-chain.json");
    let runs: [&[&str]; 3] = [
        &[
            "--seed", "9", "dejongh", "mimic", "--model", &fo, "--depth", "1", "--random", "8",
        ],
        &["audit", "--model", &set],
        &["decide", "((p -> q) -> p) -> p"],
    ];
    for args in runs {
        assert_eq!(ikp(args).stdout, ikp(args).stdout, "ikp {}", args.join(" "));
    }
}

#[test]
fn failures_name_a_counterexample() {
    let prop = data("chain2-prop.json");
    let r = report(&["check", "--model", &prop, "--formula", "p | ~p"]);
    assert_eq!(r["verdict"], "refuted");
    let text = r["report"].to_string();
    assert!(text.contains("\"r\""), "{text}");
}

#[test]
fn frame_export_lists_covers() {
    let out = ikp(&[
        "frame",
        "export",
        "--frame",
        &data("chain2-prop.json"),
        "--dot",
    ]);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(
        dot.starts_with("digraph") && dot.contains("\"r\" -> \"t\""),
        "{dot}"
    );
}
