use std::io::Cursor;
use std::process::Command;

use baker_cli::commands::PlayArgs;
use baker_cli::play::cmd_play;
use baker_core::{mutation_corpus, Termination, Transcript};

fn baker(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_baker")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn simulate_writes_a_replayable_transcript() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.json");
    let (code, _, err) = baker(&[
        "simulate",
        "--order",
        "Q",
        "--payoff",
        "enumerated(e,256)",
        "--p1",
        "random(7,3)",
        "--p2",
        "sigma(enumerated(e,256))",
        "--horizon",
        "64",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let t = Transcript::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(t.moves.len(), 128);
    assert!(t.replay().is_ok());
    let (code, report, _) = baker(&["verify", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{report}");
    let report: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert_eq!(report["failures"], serde_json::json!([]));
    assert_eq!(report["complete"], true);
}

#[test]
fn simulate_is_byte_identical() {
    let args = [
        "simulate", "--order", "lex(rev(ord(w^2)), Q)", "--p1", "random(3, 4, (w, 0))", "--p2", "universal",
        "--horizon", "32", "--seed", "11",
    ];
    let (c1, a, _) = baker(&args);
    let (c2, b, _) = baker(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
}

#[test]
fn exit_codes() {
    let (code, _, err) = baker(&["simulate", "--order", "R", "--p1", "random(1,3)", "--p2", "sigma(finite{1})"]);
    assert_eq!(code, 2);
    assert!(err.contains("--order"), "{err}");
    let (code, out, _) = baker(&["simulate", "--order", "Q", "--p1", "random(1,3)", "--p2", "sigma(finite{1})", "--horizon", "0"]);
    assert_eq!(code, 0);
    let t = Transcript::from_json(&out).unwrap();
    assert!(t.moves.is_empty());
    assert_eq!(t.termination, Termination::Horizon);
    let (code, _, _) = baker(&["verify", "/nonexistent/transcript.json"]);
    assert_eq!(code, 2);
    let (code, _, _) = baker(&["frobnicate"]);
    assert_eq!(code, 2);
}

#[test]
fn illegal_strategy_move_exits_3() {
    // The scripted Player I point 5 falls outside (0, b0).
    let (code, out, _) = baker(&["simulate", "--order", "Q", "--p1", "scripted(0, 5)", "--p2", "sigma(finite{1})", "--horizon", "4"]);
    assert_eq!(code, 3);
    let t = Transcript::from_json(&out).unwrap();
    assert!(matches!(t.termination, Termination::IllegalMove { .. }));
}

#[test]
fn verify_flags_mutants() {
    let dir = tempfile::tempdir().unwrap();
    for (i, m) in mutation_corpus().unwrap().into_iter().enumerate() {
        let clean = dir.path().join(format!("clean{i}.json"));
        let bad = dir.path().join(format!("bad{i}.json"));
        std::fs::write(&clean, m.clean.to_json()).unwrap();
        std::fs::write(&bad, m.mutated.to_json()).unwrap();
        assert_eq!(baker(&["verify", clean.to_str().unwrap()]).0, 0, "{}", m.name);
        assert_eq!(baker(&["verify", bad.to_str().unwrap()]).0, 1, "{}", m.name);
    }
}

#[test]
fn verify_exhaustive() {
    let (code, out, _) = baker(&[
        "verify", "--exhaustive", "--order", "Q", "--p2", "sigma(enumerated(e, 32))", "--width", "2", "--depth", "4",
    ]);
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["branches"], 16);
    let (code, out, _) = baker(&[
        "verify", "--exhaustive", "--order", "Q", "--p2", "sigma(enumerated(e, 32))", "--width", "3", "--depth", "4",
        "--budget", "5",
    ]);
    assert_eq!(code, 1);
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["complete"], false);
}

fn play(order: &str, p2: &str, horizon: u32, input: &str, save: Option<std::path::PathBuf>) -> String {
    let args = PlayArgs {
        order: order.into(),
        p2: p2.into(),
        payoff: None,
        horizon,
        save,
    };
    let mut out = Vec::new();
    let code = cmd_play(&args, &mut Cursor::new(input.as_bytes().to_vec()), &mut out).unwrap();
    assert_eq!(code, 0);
    String::from_utf8(out).unwrap()
}

#[test]
fn play_session() {
    // x0 = 0 is not above a0 = 0, so b0 is the filler.
    let out = play("Q", "sigma(enumerated(e, 256))", 3, "0\n1/2\n", None);
    assert!(out.contains("Player II: b0 = 1\n"), "{out}");
    assert!(out.contains("misses piece S_0"), "{out}");
    assert!(out.contains("Player II: b1 = "), "{out}");
}

#[test]
fn play_reprompts() {
    let out = play("Q", "sigma(finite{1})", 2, "zzz\n0\n7\n1/2\n", None);
    assert!(out.contains("cannot read `zzz`"), "{out}");
    assert!(out.contains("illegal: a1 must be < 1"), "{out}");
    assert!(out.contains("game over: horizon reached"), "{out}");
}

#[test]
fn play_quit_saves() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("game.json");
    let out = play("lex(rev(ord(w^2)), Q)", "universal", 8, "(3, 0)\nquit\n", Some(path.clone()));
    assert!(out.contains("delegating to the strategy of block 3"), "{out}");
    let t = Transcript::from_json(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(t.moves.len(), 2);
    assert_eq!(t.termination, Termination::Abandoned);
}
