use gentle::families::{build_family, FamilySpec, Tag};
use gentle::quiver::{
    canonical_form, canonical_key, classify_arrows, is_isomorphic, parse, serialize, validate,
    validate_connected, ArrowClass, BoundQuiver, ParseError, Violation,
};

const THETA: &str = "quiver theta
vertex x
vertex y
arrow a y x
arrow b x y
arrow c x y
rel a b
rel c a
end
";

fn theta() -> BoundQuiver {
    parse(THETA).unwrap()
}

#[test]
fn parse_serialize_round_trip() {
    let bq = theta();
    assert_eq!(serialize(&bq), THETA);
    assert_eq!(parse(&serialize(&bq)).unwrap(), bq);
}

#[test]
fn comments_and_blank_lines_are_skipped() {
    let text = "# header\nquiver q\n\nvertex x # a vertex\nend\n";
    assert_eq!(parse(text).unwrap().vertex_count(), 1);
}

#[test]
fn parse_rejects_malformed_input() {
    let bad = [
        "vertex x\nend\n",
        "quiver q\nvertex x\nvertex x\nend\n",
        "quiver q\nvertex x\narrow a x z\nend\n",
        "quiver q\nvertex x\narrow a x x\nrel a b\nend\n",
        "quiver q\nvertex x\nfrobnicate\nend\n",
    ];
    for text in bad {
        assert!(parse(text).is_err(), "{text:?} parsed");
    }
    assert!(matches!(parse("quiver q\nvertex x\n"), Err(ParseError::MissingEnd)));
    assert_eq!(parse("# nothing\n"), Err(ParseError::MissingHeader));
}

#[test]
fn relation_must_compose() {
    // a: x -> y and b: x -> y never compose
    let r = parse("quiver q\nvertex x\nvertex y\narrow a x y\narrow b x y\nrel a b\nend\n");
    assert!(r.is_err());
}

#[test]
fn theta_is_gentle_with_two_cycles() {
    let bq = theta();
    assert!(validate_connected(&bq).is_ok());
    assert_eq!(bq.cycle_rank().unwrap(), 2);
}

#[test]
fn unbounded_loop_is_reported() {
    let bq = parse("quiver q\nvertex x\narrow a x x\nend\n").unwrap();
    let v = validate(&bq).unwrap_err();
    assert!(v.iter().any(|x| matches!(x, Violation::InfinitePath { cycle } if cycle == &["a"])));
    let bounded = parse("quiver q\nvertex x\narrow a x x\nrel a a\nend\n").unwrap();
    assert!(validate(&bounded).is_ok());
}

#[test]
fn two_loops_at_a_vertex_are_never_finite() {
    for rels in ["rel a a\nrel b b\n", "rel a b\nrel b a\n"] {
        let bq = parse(&format!("quiver q\nvertex x\narrow a x x\narrow b x x\n{rels}end\n")).unwrap();
        assert!(validate(&bq).is_err(), "{rels}");
    }
}

#[test]
fn degree_and_gentle_conditions() {
    let three_out = parse(
        "quiver q\nvertex x\nvertex y\narrow a x y\narrow b x y\narrow c x y\nend\n",
    )
    .unwrap();
    let v = validate(&three_out).unwrap_err();
    assert!(v.iter().any(|x| matches!(x, Violation::Degree { .. })));

    // b then a and b then c both unrelated
    let free = parse("quiver q\nvertex x\nvertex y\nvertex z\narrow b z x\narrow a x y\narrow c x y\nend\n")
        .unwrap();
    let v = validate(&free).unwrap_err();
    assert!(v.iter().any(|x| matches!(x, Violation::FreeContinuation { .. })));

    let related = parse(
        "quiver q\nvertex x\nvertex y\nvertex z\narrow b z x\narrow a x y\narrow c x y\nrel a b\nrel c b\nend\n",
    )
    .unwrap();
    let v = validate(&related).unwrap_err();
    assert!(v.iter().any(|x| matches!(x, Violation::RelatedContinuation { .. })));
}

#[test]
fn disconnected_only_fails_the_connected_check() {
    let bq = parse("quiver q\nvertex x\nvertex y\nend\n").unwrap();
    assert!(validate(&bq).is_ok());
    let v = validate_connected(&bq).unwrap_err();
    assert_eq!(v, vec![Violation::Disconnected { components: 2 }]);
}

#[test]
fn canonical_form_is_isomorphic_and_stable() {
    let bq = theta();
    let c = canonical_form(&bq);
    assert!(is_isomorphic(&bq, &c));
    assert_eq!(canonical_form(&c), c);
    let renamed = bq.relabel(&|v| format!("v{}", 9 - v), &|a| format!("z{a}"));
    assert_eq!(canonical_key(&renamed), canonical_key(&bq));
}

#[test]
fn opposite_is_not_always_isomorphic() {
    let bq = theta();
    assert_eq!(bq.opposite().opposite(), bq);
    let one_arrow = BoundQuiver::new("p", &["x", "y", "z"], &[("f", "x", "y"), ("g", "z", "y")], &[]).unwrap();
    assert!(!is_isomorphic(&one_arrow, &one_arrow.opposite()));
}

#[test]
fn classification_of_families() {
    let l0 = build_family(&FamilySpec::new(Tag::L0, &[1, 0])).unwrap();
    let c = classify_arrows(&l0).unwrap();
    assert!(c.arrows.values().all(|&k| k == ArrowClass::Cycle));
    assert_eq!(c.connecting_vertices, vec!["w0", "w1"]);

    // two loops joined by an arrow
    let l2 = build_family(&FamilySpec::new(Tag::L2, &[1, 1, 1, 0, 0])).unwrap();
    let c = classify_arrows(&l2).unwrap();
    assert_eq!(c.arrows["alpha1"], ArrowClass::Cycle);
    assert_eq!(c.arrows["beta1"], ArrowClass::Cycle);
    assert_eq!(c.arrows["gamma1"], ArrowClass::Connecting);
}

#[test]
fn branch_arrows() {
    let bq = parse(
        "quiver q\nvertex x\nvertex y\nvertex t\narrow a x x\narrow b y y\narrow g x y\narrow h y t\nrel a a\nrel b b\nend\n",
    )
    .unwrap();
    let c = classify_arrows(&bq).unwrap();
    assert_eq!(c.arrows["h"], ArrowClass::Branch);
    assert_eq!(c.arrows["g"], ArrowClass::Connecting);
}

#[test]
fn classification_needs_two_cycles() {
    let bq = parse("quiver q\nvertex x\nvertex y\narrow a x y\nend\n").unwrap();
    assert!(classify_arrows(&bq).is_err());
}
