use serde_json::Value;
use starlab_web::{analysis_json_for, equivalence_json_for, gallery_json_string, lattice_dot_for, lattice_svg_for};

#[test]
fn z6_hasse_svg_has_four_nodes_and_four_edges() {
    let svg = lattice_svg_for("zn:6", "perp").unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("class=\"node\"").count(), 4);
    assert_eq!(svg.matches("<line").count(), 4);
    assert!(svg.contains(">{0,2,4}<"));
    assert_eq!(svg, lattice_svg_for("zn:6", "perp").unwrap());
}

#[test]
fn bottom_is_drawn_below_top() {
    let svg = lattice_svg_for("zn:6", "perp").unwrap();
    let y = |label: &str| -> f64 {
        let at = svg.find(&format!(">{label}<")).unwrap();
        let head = &svg[..at];
        let y = head.rfind(" y=\"").unwrap() + 4;
        head[y..].split('"').next().unwrap().parse().unwrap()
    };
    assert!(y("{0}") > y("{0,1,2,3,4,5}"));
}

#[test]
fn dot_matches_library_output() {
    let dot = lattice_dot_for("zn:6", "perp").unwrap();
    assert!(dot.contains("n0 -> n1;"));
}

#[test]
fn analysis_and_equivalence_are_json() {
    let a: Value = serde_json::from_str(&analysis_json_for("bool:2").unwrap()).unwrap();
    assert_eq!(a["totals"]["fail"], 0);
    let e: Value = serde_json::from_str(&equivalence_json_for("zn:6").unwrap()).unwrap();
    assert_eq!(e["proper"], true);
    assert_eq!(e["decompositions"]["results"].as_array().unwrap().len(), 4);
    assert!(!e["equivalence"]["classes"].as_array().unwrap().is_empty());
}

#[test]
fn bad_input_is_an_error() {
    assert!(lattice_svg_for("zz:3", "perp").is_err());
    assert!(lattice_svg_for("zn:6", "sideways").is_err());
    let e = analysis_json_for("zn:300").unwrap_err();
    assert!(e.contains("at most"), "{e}");
}

#[test]
fn gallery_lists_specs() {
    let g: Value = serde_json::from_str(&gallery_json_string()).unwrap();
    assert!(g.as_array().unwrap().iter().any(|e| e["spec"] == "zn:6"));
}
