use std::process::Command;

use comvar::cli::main_with_args;
use proptest::prelude::*;
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_comvar"))
}

fn run_in_process(args: &[String]) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = main_with_args(
        std::iter::once("comvar".to_string()).chain(args.iter().cloned()),
        &mut out,
        &mut err,
    );
    (code, out)
}

#[test]
fn exit_codes() {
    let ok = bin()
        .args(["verify", "--n", "2", "--coeff", "Q", "--max-degree", "8"])
        .output()
        .unwrap();
    assert_eq!(
        ok.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&ok.stderr)
    );
    let bad = bin()
        .args(["relations", "--n", "2", "--coeff", "Fp:2"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("does not invert"));
}

#[test]
fn relations_n2_payload() {
    let out = bin()
        .args(["relations", "--n", "2", "--coeff", "Q"])
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["payload"]["total_dimension"], 10);
    let texts: Vec<&str> = v["payload"]["blocks"]["(2,1)"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["text"].as_str().unwrap())
        .collect();
    assert_eq!(texts, ["2*X2*W1 + X1*X2*Y1", "X1*X2*Y2"]);
    // exact coefficients travel as strings
    assert_eq!(v["payload"]["blocks"]["(2,1)"][0]["terms"][0]["coeff"], "2");
}

#[test]
fn env_cache_dir_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("present.json");
    let status = bin()
        .args([
            "present",
            "--n",
            "2",
            "--coeff",
            "Z",
            "--max-degree",
            "6",
            "--out",
        ])
        .arg(&out)
        .env("COMVAR_CACHE_DIR", dir.path().join("cache"))
        .output()
        .unwrap();
    assert!(status.status.success());
    let v: Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(v["payload"]["relations"].as_array().unwrap().len(), 2);
    assert_eq!(v["payload"]["ranks"][6]["kernel_dim"], 11);
    assert_eq!(
        std::fs::read_dir(dir.path().join("cache")).unwrap().count(),
        1
    );
}

fn config() -> impl Strategy<Value = Vec<String>> {
    let cmd = prop_oneof![
        Just("present"),
        Just("oracle"),
        Just("relations"),
        Just("hh")
    ];
    let coeff = prop_oneof![
        Just("Z"),
        Just("Q"),
        Just("Fp:3"),
        Just("Fp:5"),
        Just("Fp:7")
    ];
    let base = prop_oneof![Just("poly2"), Just("ext1"), Just("poly4"), Just("ext3")];
    let space = prop_oneof![Just("circle"), Just("torus")];
    (cmd, 0usize..=2, coeff, 0u32..=5, base, space).prop_map(|(cmd, n, coeff, d, base, space)| {
        let mut args: Vec<String> = vec![
            cmd.into(),
            "--coeff".into(),
            coeff.into(),
            "--max-degree".into(),
            d.to_string(),
        ];
        if cmd == "hh" {
            args.extend(["--base".into(), base.into(), "--space".into(), space.into()]);
        } else {
            args.extend(["--n".into(), n.to_string()]);
        }
        args
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn cached_equals_fresh(args in config()) {
        let dir = tempfile::tempdir().unwrap();
        let mut cached_args = args.clone();
        cached_args.extend(["--cache-dir".into(), dir.path().to_str().unwrap().into()]);
        let fresh = run_in_process(&args);
        let first = run_in_process(&cached_args);
        let second = run_in_process(&cached_args);
        prop_assert_eq!(&fresh, &first);
        prop_assert_eq!(&fresh, &second);
    }
}
