use std::io::Cursor;
use std::process::Command;

use serde_json::Value;

struct Outcome {
    code: i32,
    out: String,
    err: String,
}

fn run_with_stdin(args: &[&str], stdin: &str) -> Outcome {
    let mut input = Cursor::new(stdin.as_bytes().to_vec());
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("sweepmap").chain(args.iter().copied());
    let code = sweepmap::cli::run(argv, &mut input, &mut out, &mut err);
    Outcome {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn run(args: &[&str]) -> Outcome {
    run_with_stdin(args, "")
}

fn json(args: &[&str]) -> Value {
    let o = run(args);
    assert_eq!(o.code, 0, "{args:?}: {}", o.err);
    serde_json::from_str(&o.out).unwrap()
}

fn keys(v: &Value) -> Vec<&str> {
    v.as_object().unwrap().keys().map(String::as_str).collect()
}

#[test]
fn sweep_and_invert_round_trip() {
    let o = run(&["sweep", "-m", "7", "-n", "5", "SSSWWWWSSWWW"]);
    assert_eq!((o.code, o.out.as_str()), (0, "SSWWSSWWSWWW\n"));
    for alg in ["weak", "strong"] {
        let o = run(&[
            "invert",
            "-m",
            "7",
            "-n",
            "5",
            "--algorithm",
            alg,
            "SSWWSSWWSWWW",
        ]);
        assert_eq!((o.code, o.out.as_str()), (0, "SSSWWWWSSWWW\n"));
    }
}

#[test]
fn area_and_enumerate() {
    assert_eq!(
        run(&["area", "-m", "7", "-n", "5", "SSSWWWWSSWWW"]).out,
        "4\n"
    );
    assert_eq!(
        run(&["enumerate", "-m", "7", "-n", "5", "--count-only"]).out,
        "66\n"
    );
    let o = run(&["enumerate", "-m", "3", "-n", "2"]);
    assert_eq!(o.out, "SSWWW\nSWSWW\n");
}

#[test]
fn json_outputs_have_stable_keys() {
    let v = json(&["--json", "sweep", "-m", "3", "-n", "2", "SSWWW"]);
    assert_eq!(keys(&v), ["m", "n", "word", "image"]);
    assert_eq!(v["image"], "SWSWW");

    let v = json(&["--json", "invert", "-m", "3", "-n", "2", "SWSWW"]);
    assert_eq!(
        keys(&v),
        [
            "m",
            "n",
            "word",
            "preimage",
            "algorithm",
            "step_count",
            "lifts"
        ]
    );
    assert_eq!(v["preimage"], "SSWWW");

    let v = json(&["--json", "area", "-m", "7", "-n", "5", "SSSWWWWSSWWW"]);
    assert_eq!(v["area"], v["cell_area"]);

    let v = json(&["--json", "verify", "-m", "3", "-n", "4"]);
    assert_eq!(v["bijection_ok"], true);
    assert_eq!(v["path_count"], 5);
}

#[test]
fn trace_document_shape() {
    let v = json(&[
        "invert",
        "-m",
        "7",
        "-n",
        "5",
        "--trace",
        "full",
        "SSWWSSWWSWWW",
    ]);
    assert_eq!(keys(&v), ["header", "steps", "footer"]);
    assert_eq!(
        keys(&v["header"]),
        ["m", "n", "word", "algorithm", "start_ranks"]
    );
    assert_eq!(
        keys(&v["footer"]),
        ["final_ranks", "normalized_ranks", "preimage", "step_count"]
    );
    let steps = v["steps"].as_array().unwrap();
    assert_eq!(
        steps.len() as u64,
        v["footer"]["step_count"].as_u64().unwrap()
    );
    assert!(steps.iter().all(|s| s.get("ranks_after").is_some()));

    let v = json(&[
        "invert",
        "-m",
        "7",
        "-n",
        "5",
        "--trace",
        "rows",
        "SSWWSSWWSWWW",
    ]);
    assert!(v["steps"]
        .as_array()
        .unwrap()
        .iter()
        .all(|s| s.get("ranks_after").is_none()));
}

#[test]
fn trace_file_is_written() {
    let path = std::env::temp_dir().join(format!("sweepmap-trace-{}.json", std::process::id()));
    let o = run(&[
        "invert",
        "-m",
        "3",
        "-n",
        "2",
        "--trace",
        "full",
        "--trace-file",
        path.to_str().unwrap(),
        "SWSWW",
    ]);
    assert_eq!((o.code, o.out.as_str()), (0, "SSWWW\n"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["footer"]["preimage"], "SSWWW");
    std::fs::remove_file(path).unwrap();
}

#[test]
fn word_from_stdin() {
    let o = run_with_stdin(&["sweep", "-m", "3", "-n", "2", "-"], "SSWWW\n");
    assert_eq!((o.code, o.out.as_str()), (0, "SWSWW\n"));
}

#[test]
fn north_east_alphabet() {
    let o = run(&["--alphabet", "ne", "sweep", "-m", "3", "-n", "2", "NNEEE"]);
    assert_eq!((o.code, o.out.as_str()), (0, "NENEE\n"));
    // input alphabet is detected independently of the output alphabet
    let o = run(&["--alphabet", "ne", "invert", "-m", "3", "-n", "2", "SWSWW"]);
    assert_eq!(o.out, "NNEEE\n");
    let o = run(&["sweep", "-m", "3", "-n", "2", "NSWEE"]);
    assert_eq!(o.code, 1);
}

#[test]
fn invalid_input_exits_one() {
    for args in [
        &["sweep", "-m", "4", "-n", "2", "SSWWWW"][..],
        &["sweep", "-m", "3", "-n", "2", "WSSWW"],
        &["sweep", "-m", "3", "-n", "2", "SSWW"],
        &["sweep", "-m", "3", "-n", "2", "SXWWW"],
        &["area", "-m", "0", "-n", "2", "SSWWW"],
        &["invert", "-m", "3", "-n", "2", "--start", "0,1,x", "SWSWW"],
        &["frobnicate"],
    ] {
        let o = run(args);
        assert_eq!(o.code, 1, "{args:?}");
        assert!(!o.err.is_empty());
        assert!(o.out.is_empty());
    }
    assert!(run(&["sweep", "-m", "4", "-n", "2", "SSWWWW"])
        .err
        .starts_with("error: "));
}

#[test]
fn help_exits_zero() {
    assert_eq!(run(&["--help"]).code, 0);
}

#[test]
fn verify_text_lines() {
    let o = run(&["verify", "--max-sum", "6"]);
    assert_eq!(o.code, 0, "{}", o.err);
    let lines: Vec<_> = o.out.lines().collect();
    assert_eq!(lines.len(), sweepmap::CoprimePair::all_up_to(6).len());
    assert!(lines.iter().all(|l| l.contains(" ok ")), "{lines:?}");
}

#[test]
fn render_writes_requested_format() {
    let o = run(&["render", "path", "-m", "3", "-n", "2", "SSWWW"]);
    assert!(o.out.starts_with("(3,2)-Dyck path SSWWW"));
    let o = run(&[
        "render",
        "diagram",
        "--format",
        "svg",
        "-m",
        "7",
        "-n",
        "5",
        "SSSWWWWSSWWW",
    ]);
    assert!(roxmltree::Document::parse(&o.out).is_ok());
    let o = run(&[
        "render", "trace", "--format", "svg", "--layout", "overlay", "-m", "3", "-n", "2", "SWSWW",
    ]);
    assert!(roxmltree::Document::parse(&o.out).is_ok());
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_sweepmap");
    let ok = Command::new(bin)
        .args(["sweep", "-m", "3", "-n", "2", "SSWWW"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "SWSWW\n");
    let bad = Command::new(bin)
        .args(["sweep", "-m", "2", "-n", "4", "SSSSWW"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("coprime"));
}
