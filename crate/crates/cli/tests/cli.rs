use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use paramword::structure::{parse_structure, write_structure};
use paramword::{validate, Alphabet};

fn paramword(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_paramword")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = paramword(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn envelope_worked_example() {
    assert_eq!(
        stdout(&["envelope", "--alphabet", "0", "--params", "0", "0", "000"]),
        "envelope 0<0>0\ndim 1\ntype @empty 0\n"
    );
}

#[test]
fn envelope_rejects_wrong_parameter_count() {
    let out = paramword(&["envelope", "--params", "1", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exhaustive_envelopes_show_both_minimal_words() {
    let text = stdout(&["envelope", "--exhaustive", "0", "000"]);
    assert!(text.contains("minimal 0<0>0\n"));
    assert!(text.contains("minimal 0<0><0>\n"));
}

#[test]
fn malformed_word_is_an_error() {
    let out = paramword(&["word", "validate", "0<1>"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("0<1>"));
}

#[test]
fn edge_and_leq() {
    assert_eq!(stdout(&["edge", "<0>", "0<0>"]), "true\n");
    assert_eq!(stdout(&["edge", "<0>", "<0><0>"]), "false\n");
    assert_eq!(stdout(&["leq", "LR", "RRLR"]), "true witness 0\n");
    assert_eq!(stdout(&["leq", "RRLR", "LR"]), "false\n");
}

#[test]
fn printed_words_reparse() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write(dir.path(), "c5.txt", "structure graph 5\nedge 0 1\nedge 1 2\nedge 2 3\nedge 3 4\nedge 0 4\n");
    let poset = write(dir.path(), "v.txt", "structure poset 3\nle 0 2\nle 1 2\n");
    for (args, alphabet) in [
        (vec!["encode", "graph", graph.as_str()], Alphabet::zero()),
        (vec!["encode", "poset", poset.as_str()], Alphabet::lxr()),
        (vec!["word", "enumerate", "--alphabet", "01", "--len", "3", "--params", "1"], Alphabet::parse("01").unwrap()),
    ] {
        let text = stdout(&args);
        assert!(!text.is_empty());
        for line in text.lines() {
            assert_eq!(validate(line, &alphabet).unwrap().render_token(&alphabet), line);
        }
    }
    let grn = stdout(&["grn", "poset", &poset]);
    let lines: Vec<&str> = grn.lines().collect();
    assert!(lines[0].starts_with("d ") && lines[1].starts_with("n "));
    for line in &lines[2..] {
        validate(line, &Alphabet::lxr()).unwrap();
    }
}

#[test]
fn printed_structures_reparse() {
    let dir = tempfile::tempdir().unwrap();
    let p3 = write(dir.path(), "p3.txt", "structure graph 3\nedge 0 1\nedge 1 2\n");
    let u = write(dir.path(), "u.txt", "structure unary 2\nunary U\n");
    let chains = write(dir.path(), "chains.txt", "structure poset 2\nle 0 1\nchain 0 0\nchain 0 1\nchain 1 1\n");
    let tuples = write(dir.path(), "tuples.txt", "0 0\n0 1\n1 0\n1 1\n");
    for args in [
        vec!["interpret", "gp", p3.as_str()],
        vec!["interpret", "superpose", p3.as_str(), u.as_str()],
        vec!["interpret", "metric", "--d", "2", chains.as_str()],
        vec!["interpret", "ultra", "--d", "2", tuples.as_str()],
    ] {
        let text = stdout(&args);
        let s = parse_structure(&text).unwrap();
        let body: String = text.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
        assert_eq!(write_structure(&s), body, "{args:?}");
    }
}

#[test]
fn copy_words_report_their_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let b = write(dir.path(), "b.txt", "structure poset 3\nle 0 1\nle 1 2\nle 0 2\n");
    let a = write(dir.path(), "a.txt", "structure poset 2\nle 0 1\n");
    let ok = stdout(&["grn", "copyword", &b, &a, "--map", "0:1,1:2"]);
    assert!(ok.starts_with("W <0><1><2><2>R<3><4><5>\n"));
    assert!(ok.contains("verified true"));

    let gapped = paramword(&["grn", "copyword", &b, &a, "--map", "0:0,1:2"]);
    assert_eq!(gapped.status.code(), Some(1));
    let text = String::from_utf8(gapped.stdout).unwrap();
    assert!(text.contains("verified false"));
    assert!(text.contains("W = "), "{text}");

    let missing = paramword(&["grn", "copyword", &b, &a, "--map", "0:1"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn copy_word_table_has_three_sections() {
    let dir = tempfile::tempdir().unwrap();
    let b = write(dir.path(), "b.txt", "structure graph 4\nedge 0 1\nedge 1 2\nedge 2 3\n");
    let a = write(dir.path(), "a.txt", "structure graph 3\nedge 0 1\nedge 1 2\n");
    let table = stdout(&["render", "copyword", &b, &a, "--map", "0:1,1:2,2:3"]);
    let titles: Vec<&str> = table.lines().filter(|l| l.starts_with("# ")).collect();
    assert_eq!(titles, ["# phi(B)", "# phi'(A)", "# W"]);
    assert_eq!(table.lines().filter(|l| l.starts_with('B')).count(), 4);
    assert!(table.lines().last().unwrap().starts_with("W  | <0>"));
}

#[test]
fn poset_two_chain_table() {
    assert_eq!(
        stdout(&["render", "words", "--alphabet", "LXR", "LR", "RRLR"]),
        "  | 0 1 2 3\n--+--------\n0 | L R\n1 | R R L R\n"
    );
}

#[test]
fn seeded_output_is_reproducible() {
    let args = ["--seed", "7", "word", "random", "--len", "6", "--params", "2", "--count", "5"];
    assert_eq!(stdout(&args), stdout(&args));
    let other = ["--seed", "8", "word", "random", "--len", "6", "--params", "2", "--count", "5"];
    assert_ne!(stdout(&args), stdout(&other));
}

#[test]
fn degrees_table_and_bound() {
    let table = stdout(&["degrees", "--kind", "graph", "--ell", "2", "--show", "0"]);
    assert_eq!(table, stdout(&["degrees", "--kind", "graph", "--ell", "2", "--show", "0", "--strategy", "filtered"]));
    assert!(table.starts_with("kind graph ell 2 dim-cap 5 total 37\n"));
    assert!(table.contains("graph n=2 0-1 | 3\n"));
    let dir = tempfile::tempdir().unwrap();
    let edge = write(dir.path(), "edge.txt", "structure graph 2\nedge 0 1\n");
    assert_eq!(stdout(&["degrees", "bound", &edge]), "3\n");
}

#[test]
fn gr_minimal_appends_to_results() {
    let dir = tempfile::tempdir().unwrap();
    let results = dir.path().join("gr.txt");
    let results = results.to_str().unwrap();
    let text = stdout(&["gr", "minimal", "--sigma", "1", "--k", "0", "--n", "1", "--r", "2", "--results", results]);
    assert!(text.ends_with("minimal N 2\n"));
    let ledger = fs::read_to_string(results).unwrap();
    assert_eq!(ledger.lines().count(), 3);
    assert!(ledger.lines().last().unwrap().contains("N=2 verdict=holds method=enumerated searched=8"));
}

#[test]
fn suites_are_deterministic_and_end_with_a_summary() {
    let first = stdout(&["suite", "envelopes"]);
    assert_eq!(first, stdout(&["suite", "envelopes"]));
    assert_eq!(first.lines().last().unwrap(), "SUITE envelopes PASS checks=4 failures=0");
    assert!(first.contains("PASS worked-example n=1 envelope 0<0>0 type @empty 0"));
}

#[test]
fn gr_suite_reports_the_trivial_instance() {
    let text = stdout(&["suite", "gr"]);
    assert!(text.contains("minimalN(1,0,1,2) = 2"));
    assert!(text.ends_with("SUITE gr PASS checks=4 failures=0\n"));
}

#[test]
fn encodings_suite_passes_with_sweep_counts() {
    let text = stdout(&["suite", "encodings"]);
    assert!(text.ends_with("SUITE encodings PASS checks=4 failures=0\n"));
    assert!(text.contains("PASS encoder-round-trips n="));
}

#[test]
fn failing_suite_lists_a_counterexample() {
    let out = paramword(&["suite", "grn"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("FAIL poset-copy-words"));
    assert!(text.contains("    B: poset n=3"), "{text}");
    assert!(text.ends_with("SUITE grn FAIL checks=3 failures=1\n"));
}

#[test]
fn unknown_suite() {
    let out = paramword(&["suite", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown suite"));
}

#[test]
fn results_ledger_matches_a_fresh_run() {
    let dir = tempfile::tempdir().unwrap();
    let fresh = dir.path().join("gr.txt");
    let fresh = fresh.to_str().unwrap();
    stdout(&["gr", "minimal", "--sigma", "1", "--k", "0", "--n", "1", "--r", "2", "--results", fresh]);
    stdout(&["gr", "minimal", "--sigma", "2", "--k", "0", "--n", "1", "--r", "2", "--results", fresh]);
    stdout(&["gr", "verify", "--sigma", "2", "--k", "0", "--n", "1", "--r", "2", "--N", "4", "--results", fresh]);
    let committed = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../results/gr.txt");
    assert_eq!(fs::read_to_string(committed).unwrap(), fs::read_to_string(fresh).unwrap());
}
