//! End-to-end tests of the `necklace` binary: frozen outputs on the
//! two-vertex loop-plus-framing quiver, JSON report shape, exit codes.

use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_necklace");
const JORDAN: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/jordan.quiver");

fn necklace(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env("NECKLACE_COLOR", "never")
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = necklace(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

#[test]
fn bracket_of_the_loop_against_the_framed_cycle() {
    let out = stdout_of(&["bracket", "--quiver", JORDAN, "a a*", "b* b a* a*"]);
    assert_eq!(out, "2 * a* a* b* b\n");
}

#[test]
fn cobracket_of_the_framed_cycle() {
    let out = stdout_of(&["cobracket", "--quiver", JORDAN, "b* b a* a*"]);
    assert_eq!(out, "[v2] (x) a* a* - a* a* (x) [v2]\n");
}

#[test]
fn coproduct_prints_one_term_per_line() {
    let out = stdout_of(&["nq-coproduct", "--quiver", JORDAN, "--n", "2", "(a,1)(a*,2)"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(
        lines,
        vec![
            "1 : 1 | (a,1)(a*,2)",
            "hbar : [v1] | [v1]",
            "1 : (a,1)(a*,2) | 1",
        ]
    );
}

#[test]
fn normalize_emits_the_frozen_rewrite() {
    let out = stdout_of(&["normalize", "--quiver", JORDAN, "(a,2)(a*,1)"]);
    assert_eq!(out, "-hbar * [v1] & [v1] + (a,1)(a*,2)\n");
}

#[test]
fn normalize_is_idempotent_through_the_text_round_trip() {
    let once = stdout_of(&["normalize", "--quiver", JORDAN, "(a,2)(a*,1) & (b*,3)(b,4)"]);
    let twice = stdout_of(&["normalize", "--quiver", JORDAN, once.trim()]);
    assert_eq!(once, twice);
}

#[test]
fn product_stacks_and_normalizes() {
    let out = stdout_of(&["nq-mul", "--quiver", JORDAN, "(a,1)(a*,2)", "(b*,1)(b,2)(a*,3)(a*,4)"]);
    assert_eq!(out, "(a,1)(a*,2) & (a*,3)(a*,4)(b*,5)(b,6)\n");
}

#[test]
fn structure_maps_agree_with_the_worked_example() {
    let y = "(b*,1)(b,2)(a*,3)(a*,4)";
    assert_eq!(
        stdout_of(&["map", "--quiver", JORDAN, "--which", "p_hbar", y]),
        "-1/2*hbar * [v2] · a* a* + a* a* b* b\n"
    );
    assert_eq!(
        stdout_of(&["map", "--quiver", JORDAN, "--which", "J", "(a,1)(a*,2)"]),
        "hbar * [v1] (x) [v1] + (a a*)\n"
    );
    assert_eq!(
        stdout_of(&["map", "--quiver", JORDAN, "--which", "p_h", y]),
        "(a* a* b* b)\n"
    );
    assert_eq!(stdout_of(&["map", "--quiver", JORDAN, "--which", "p", y]), "a* a* b* b\n");
    let via_sym = stdout_of(&["map", "--quiver", JORDAN, "--which", "q_h", y]);
    let via_env = stdout_of(&["map", "--quiver", JORDAN, "--which", "q_hbar", y]);
    assert_eq!(via_sym, via_env);
    assert_eq!(via_sym, "a* a* b* b\n");
    assert_eq!(
        stdout_of(&["map", "--quiver", JORDAN, "--which", "q", y]),
        "a* a* b* b\n"
    );
}

#[test]
fn verify_emits_a_versioned_json_report() {
    let out = necklace(&["verify", "--suite", "diagram", "--samples", "25", "--seed", "1"]);
    assert!(out.status.success());
    let report: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    assert_eq!(report["schema"], 1);
    assert_eq!(report["suite"], "diagram");
    assert_eq!(report["samples"], 25);
    assert_eq!(report["seed"], 1);
    assert_eq!(report["passed"], true);
    assert!(report["failures"].as_array().unwrap().is_empty());
    assert!(report["identity"].as_str().unwrap().contains("p"));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("ok"));
    assert!(!stderr.contains('\x1b'), "NECKLACE_COLOR=never must strip styling");
}

#[test]
fn verify_is_deterministic_under_a_fixed_seed() {
    let a = stdout_of(&["verify", "--suite", "confluence", "--samples", "10", "--seed", "7"]);
    let b = stdout_of(&["verify", "--suite", "confluence", "--samples", "10", "--seed", "7"]);
    assert_eq!(a, b);
}

#[test]
fn emit_dot_draws_the_double_quiver() {
    let out = stdout_of(&["emit-dot", "--quiver", JORDAN, "quiver"]);
    assert!(out.starts_with("digraph quiver {"));
    assert_eq!(out.matches("label=\"v").count(), 2);
    for e in ["\"a\"", "\"a*\"", "\"b\"", "\"b*\""] {
        assert!(out.contains(&format!("label={e}")), "missing edge {e}");
    }
}

#[test]
fn emit_dot_draws_links_with_height_labels() {
    let out = stdout_of(&["emit-dot", "--quiver", JORDAN, "link", "(a,1)(a*,2) & [v2]"]);
    assert!(out.starts_with("digraph link {"));
    assert!(out.contains("label=\"a (1)\""));
    assert!(out.contains("label=\"a* (2)\""));
    assert!(out.contains("label=\"v2\""));
}

#[test]
fn usage_and_parse_errors_exit_two() {
    // Unknown subcommand (handled by the argument parser).
    assert_eq!(necklace(&["frobnicate"]).status.code(), Some(2));
    // Unknown suite name.
    assert_eq!(
        necklace(&["verify", "--suite", "nonsense"]).status.code(),
        Some(2)
    );
    // Element that does not parse.
    assert_eq!(
        necklace(&["bracket", "--quiver", JORDAN, "a a* (", "a"]).status.code(),
        Some(2)
    );
    // Element over the wrong quiver.
    assert_eq!(
        necklace(&["bracket", "--quiver", JORDAN, "zz", "a"]).status.code(),
        Some(2)
    );
    // Heights must be distinct.
    assert_eq!(
        necklace(&["normalize", "--quiver", JORDAN, "(a,1)(a*,1)"]).status.code(),
        Some(2)
    );
    // A combination is not a single drawable link.
    assert_eq!(
        necklace(&["emit-dot", "--quiver", JORDAN, "link", "2 * (a,1)(a*,2)"])
            .status
            .code(),
        Some(2)
    );
}
