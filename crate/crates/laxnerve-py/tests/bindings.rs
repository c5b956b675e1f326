use laxnerve_py::{run_cli, PyDiagram, PyTwoCategory};

fn fixture(name: &str) -> String {
    format!("{}/../laxnerve/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn walking_cell_nerves_agree() {
    let e = PyTwoCategory::walking_two_cell();
    assert!(e.validate().is_empty());
    assert_eq!(e.counts("geometric", 4).unwrap(), vec![2, 4, 8, 16, 32]);
    assert!(e.nerves_agree("diag", "geometric", 4).unwrap());
    assert_eq!(e.homology("geometric", 4).unwrap(), vec!["Z", "0", "0", "0"]);
}

#[test]
fn cyclic_group_homology_crosses_as_text() {
    let c = PyTwoCategory::suspended_cyclic(3).unwrap();
    assert_eq!(c.homology("geometric", 4).unwrap(), vec!["Z", "Z/3", "0", "Z/3"]);
    assert!(PyTwoCategory::suspended_cyclic(0).is_err());
    assert!(c.homology("sideways", 4).is_err());
}

#[test]
fn files_and_text_load_the_same_category() {
    let from_file = PyTwoCategory::from_file(&fixture("walking_two_cell.tc")).unwrap();
    let from_text = PyTwoCategory::from_text(&from_file.canonical_text()).unwrap();
    assert_eq!(from_file.canonical_text(), from_text.canonical_text());
    assert!(PyTwoCategory::from_text("format 1\nkind twocat\ncell1 u : 0 -> 1\n").is_err());
}

#[test]
fn comma_fibres_are_contractible() {
    let e = PyTwoCategory::walking_two_cell();
    for x in e.object_names() {
        for fibre in [e.fibre_over(&x).unwrap(), e.fibre_under(&x).unwrap()] {
            assert_eq!(fibre.homology("geometric", 4).unwrap(), vec!["Z", "0", "0", "0"]);
        }
    }
    assert!(e.fibre_over("nowhere").is_err());
}

#[test]
fn diagram_total_and_thomason() {
    let d = PyDiagram::from_file(&fixture("cyclic2_self_action.2d")).unwrap();
    assert!(d.validate().is_empty());
    assert!(d.grothendieck().unwrap().validate().is_empty());
    assert!(d.thomason("i", 3).unwrap().is_empty());
    assert!(d.thomason("ii", 3).unwrap().is_empty());
    assert!(d.thomason("iii", 3).is_err());
    assert!(PyDiagram::from_file(&fixture("terminal.tc")).is_err());
}

#[test]
fn cli_runs_in_process() {
    let (code, stdout, _) = run_cli(vec!["validate".into(), fixture("terminal.tc")]);
    assert_eq!(code, 0, "{stdout}");
    let (code, _, _) = run_cli(vec!["frobnicate".into()]);
    assert_eq!(code, 2);
}
