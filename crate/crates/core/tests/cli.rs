use std::process::{Command, Output};

fn autop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_autop"))
        .args(args)
        .env("NO_COLOR", "1")
        .output()
        .unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = autop(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn documented_outputs() {
    assert_eq!(
        stdout(&["autonomous", "apply", "--ring", "z", "--seq", "[1,1,1,1,1]"]),
        "[1,1,2,6,24]\n"
    );
    assert_eq!(
        stdout(&[
            "flow",
            "closed",
            "--ring",
            "q",
            "--field",
            "affine:0,1",
            "--x0",
            "1",
            "--order",
            "4"
        ]),
        "[1,1,1,1,1]\n"
    );
    let solved: serde_json::Value = serde_json::from_str(&stdout(&[
        "homogeneity",
        "solve",
        "--ring",
        "gauss",
        "--k",
        "3",
    ]))
    .unwrap();
    assert_eq!(solved["pairs"].as_array().unwrap().len(), 4);
    assert_eq!(solved["exponent"].to_string(), "4");
    assert_eq!(solved["agreement"], serde_json::Value::Bool(false));
}

#[test]
fn verify_rationals_exits_zero() {
    let out = autop(&["verify", "all", "--ring", "q", "--order", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().last().unwrap().contains("0 fail"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["verify", "all", "--ring", "gauss", "--order", "5"][..],
        &[
            "flow",
            "orbit",
            "--ring",
            "q",
            "--field",
            "expfield:1/2",
            "--order",
            "8",
            "--grid",
            "-1:1:9",
        ][..],
        &["homogeneity", "solve", "--ring", "eisen", "--k", "7"][..],
    ] {
        assert_eq!(autop(args).stdout, autop(args).stdout);
    }
}

#[test]
fn apply_then_invert_round_trips() {
    for (ring, seq) in [
        ("z", "[1,2,3,4,5,6]"),
        ("gauss", "[\"1i\",\"2-1i\",0,3,\"1+1i\"]"),
        ("eisen", "[-1,\"1w\",2,0]"),
    ] {
        let image = stdout(&["autonomous", "apply", "--ring", ring, "--seq", seq]);
        let back: serde_json::Value = serde_json::from_str(&stdout(&[
            "autonomous",
            "invert",
            "--ring",
            ring,
            "--seq",
            image.trim(),
        ]))
        .unwrap();
        let original: serde_json::Value = serde_json::from_str(seq).unwrap();
        assert_eq!(back["seq"], original, "{ring}");
        assert_eq!(back["in_ring"], serde_json::Value::Bool(true));
    }
}

#[test]
fn bell_subcommands() {
    assert_eq!(
        stdout(&["bell", "partial", "--n", "4", "--k", "2", "--b", "[1,1,1]"]),
        "7\n"
    );
    assert_eq!(
        stdout(&["bell", "complete", "--n", "3", "--b", "[1,2,3]", "--a", "[1,1,1]"]),
        "10\n"
    );
    assert_eq!(
        stdout(&["bell", "partial", "--ring", "gauss", "--n", "2", "--k", "2", "--b", "[\"1i\"]"]),
        "-1\n"
    );
}

#[test]
fn orbit_csv_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("orbit.csv");
    let p = path.to_str().unwrap();
    stdout(&[
        "flow", "orbit", "--ring", "q", "--field", "const:2", "--x0", "1", "--order", "3",
        "--grid", "0:1:3", "--out", p,
    ]);
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t_re,t_im,phi_re,phi_im,tail_bound"));
    assert_eq!(
        lines.next(),
        Some("0.000000000000,0.000000000000,1.000000000000,0.000000000000,0.000000000000")
    );
    assert_eq!(
        lines.next(),
        Some("0.500000000000,0.000000000000,2.000000000000,0.000000000000,0.000000000000")
    );
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| autop(args).status.code();
    assert_eq!(
        code(&["autonomous", "apply", "--ring", "nope", "--seq", "[1]"]),
        Some(2)
    );
    assert_eq!(code(&["autonomous", "apply", "--ring", "z"]), Some(2));
    assert_eq!(
        code(&["flow", "series", "--ring", "q", "--field", "wave:1"]),
        Some(2)
    );
    assert_eq!(
        code(&["autonomous", "invert", "--ring", "z", "--seq", "[0,1]"]),
        Some(3)
    );
    assert_eq!(
        code(&[
            "flow",
            "closed",
            "--ring",
            "q",
            "--field",
            "series:[1,2]",
            "--order",
            "1"
        ]),
        Some(3)
    );
    let out = autop(&["flow", "series", "--ring", "q", "--field", "affine:1"]);
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.lines().count(), 1);
    assert!(err.contains("--field"));
}
