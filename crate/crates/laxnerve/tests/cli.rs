use std::path::{Path, PathBuf};

use laxnerve::cli::format::{parse, parse_str, Document};
use laxnerve::cli::{run, Outcome};

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn laxnerve(args: &[&str]) -> Outcome {
    run(std::iter::once("laxnerve").chain(args.iter().copied()))
}

#[test]
fn gnerve_reports_counts_and_homology() {
    let out = laxnerve(&["gnerve", &fixture("walking_two_cell.tc"), "--cap", "4", "--homology"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.contains("simplices per dimension 0..=4: 2 4 8 16 32"));
    assert!(out.stdout.contains("INFO H_0 = Z\n"));
    assert!(out.stdout.contains("INFO H_3 = 0\n"));
}

#[test]
fn compare_double_and_geometric_nerve() {
    let e = fixture("walking_two_cell.tc");
    let out = laxnerve(&["compare", "--a", &format!("dnerve:{e}"), "--b", &format!("gnerve:{e}"), "--cap", "4"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.contains("OK agree through degree 3"));
}

#[test]
fn compare_reports_disagreement_with_exit_one() {
    let out = laxnerve(&[
        "compare",
        "--a",
        &format!("gnerve:{}", fixture("cyclic2.mon")),
        "--b",
        "point",
        "--cap",
        "3",
    ]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("FAIL H_1 differ: Z/2 vs 0"));
}

#[test]
fn thomason_variants_verify_bijections() {
    for (variant, diagram) in [
        ("ii", "cyclic2_self_action.2d"),
        ("i", "cyclic2_self_action.2d"),
        ("ii", "flip_over_interval.2d"),
        ("i", "flip_over_interval.2d"),
    ] {
        let out = laxnerve(&["thomason", "--variant", variant, &fixture(diagram), "--cap", "3"]);
        assert_eq!(out.code, 0, "{variant} {diagram}: {}", out.stdout);
        assert!(out.stdout.contains("OK bijection verified at all dimensions <= 3"));
    }
}

#[test]
fn exit_codes_distinguish_failures_from_usage_errors() {
    let invalid = laxnerve(&["validate", &fixture("dangling.tc")]);
    assert_eq!(invalid.code, 1);
    assert!(invalid.stdout.contains("FAIL") && invalid.stdout.contains("BoundaryMismatch"));

    let unresolved = laxnerve(&["validate", &fixture("missing_fibre.2d")]);
    assert_eq!(unresolved.code, 2);
    assert!(unresolved.stderr.contains("absent.cat"));

    assert_eq!(laxnerve(&["gnerve"]).code, 2);
    assert_eq!(laxnerve(&["frobnicate"]).code, 2);
    assert_eq!(laxnerve(&["thomason", "--variant", "iii", &fixture("flip_over_interval.2d")]).code, 2);
    assert_eq!(laxnerve(&["homology", "nonsense:x"]).code, 2);
    assert_eq!(laxnerve(&["--help"]).code, 0);
}

#[test]
fn reports_are_deterministic() {
    let args = ["grothendieck", &fixture("cyclic2_self_action.2d"), "--homology"];
    let a = laxnerve(&args);
    let b = laxnerve(&args);
    assert_eq!(a, b);
    for l in a.stdout.lines() {
        assert!(l.starts_with("OK ") || l.starts_with("FAIL ") || l.starts_with("INFO "), "{l}");
    }
}

#[test]
fn audit_on_point_into_cyclic_group() {
    let out = laxnerve(&["audit-theorem-b", &fixture("terminal_to_cyclic2.fn"), "--cap", "4"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.contains("OK precondition: every w* is a homology equivalence"));
    assert!(out.stdout.contains("H_0..H_3 = Z^2, 0, 0, 0"));
}

#[test]
fn comma_under_compares_with_hom_diagram() {
    let out = laxnerve(&["comma", &fixture("walking_two_cell.tc"), "--under", "0", "--homology"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.contains("cellwise isomorphism valid"));
    assert!(out.stdout.contains("INFO H_2 = 0"));
}

#[test]
fn fibre_emits_parseable_canonical_text() {
    let dir = std::env::temp_dir().join(format!("laxnerve-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let target = dir.join("fibre.tc");
    let out = laxnerve(&[
        "fibre",
        &fixture("terminal_to_cyclic2.fn"),
        "--over",
        "*",
        "--emit",
        &target.display().to_string(),
    ]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    let doc = parse(&target).unwrap();
    assert_eq!(doc.canonical_text(), std::fs::read_to_string(&target).unwrap());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn every_fixture_round_trips_canonically() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut seen = 0;
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        let Ok(doc) = parse(&path) else { continue };
        let once = doc.canonical_text();
        let again = parse_str(&once, &path).unwrap().canonical_text();
        assert_eq!(once, again, "{}", path.display());
        if let Document::Diagram(d) = &doc {
            assert_eq!(d.fibre_paths.len(), d.diagram.base.num_objects());
        }
        seen += 1;
    }
    assert!(seen >= 12);
}

#[test]
fn eta_induces_isomorphisms_in_low_degrees() {
    let out = laxnerve(&["eta", &fixture("walking_two_cell.tc"), "--cap", "4"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.contains("OK map induces iso on H_0"));
    assert!(out.stdout.contains("OK map induces iso on H_1"));
}
