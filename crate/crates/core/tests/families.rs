use gentle::families::{
    build_family, phi_formula, recognize, specs_with_vertices, canonical_list, Catalog, FamilyError,
    FamilySpec, Tag,
};
use gentle::invariant::phi;
use gentle::quiver::{canonical_key, validate_connected};

#[test]
fn tag_names_round_trip() {
    for t in Tag::ALL {
        assert_eq!(t.name().parse::<Tag>().unwrap(), t);
        assert_eq!(t.name().to_lowercase().parse::<Tag>().unwrap(), t);
    }
    assert!(matches!("L9".parse::<Tag>(), Err(FamilyError::UnknownTag(_))));
}

#[test]
fn spec_parse_and_display() {
    let s = FamilySpec::parse(" L2( 2, 1,0,1,0) ").unwrap();
    assert_eq!(s, FamilySpec::new(Tag::L2, &[2, 1, 0, 1, 0]));
    assert_eq!(s.to_string(), "L2(2,1,0,1,0)");
    assert!(FamilySpec::parse("L2").is_err());
    assert!(FamilySpec::parse("L2(1,x)").is_err());
}

#[test]
fn constraints() {
    let wrong = FamilySpec::new(Tag::L0, &[1]);
    assert!(matches!(build_family(&wrong), Err(FamilyError::WrongArity { expected: 2, got: 1, .. })));
    let bad = FamilySpec::parse("L2(1,1,0,0,0)").unwrap();
    assert!(matches!(bad.check(), Err(FamilyError::ConstraintViolation { .. })));
    assert!(build_family(&bad).is_err());
    let out = FamilySpec::parse("G1(2,1,0,1)").unwrap();
    assert!(matches!(phi_formula(&out), Err(FamilyError::OutOfLemmaScope(_))));
}

#[test]
fn built_families_are_two_cycle_gentle() {
    for n in 1..=6 {
        for tag in Tag::ALL {
            for s in specs_with_vertices(tag, n) {
                let bq = build_family(&s).unwrap();
                assert!(validate_connected(&bq).is_ok(), "{s}");
                assert_eq!(bq.vertex_count(), n, "{s}");
                assert_eq!(bq.cycle_rank().unwrap(), 2, "{s}");
            }
        }
    }
}

#[test]
fn names_depend_only_on_the_spec() {
    let s = FamilySpec::parse("L1(2,1,1,0,1)").unwrap();
    assert_eq!(build_family(&s).unwrap(), build_family(&s).unwrap());
    assert_eq!(build_family(&s).unwrap().name(), "L1_2_1_1_0_1");
}

#[test]
fn closed_form_matches_on_small_specs() {
    for n in 1..=6 {
        for tag in [Tag::L0, Tag::L0p, Tag::L1, Tag::L2] {
            for s in specs_with_vertices(tag, n) {
                if let Ok(want) = phi_formula(&s) {
                    assert_eq!(phi(&build_family(&s).unwrap()).unwrap(), want, "{s}");
                }
            }
        }
    }
}

#[test]
fn canonical_list_is_sorted_and_canonical() {
    let list = canonical_list(5);
    assert!(list.windows(2).all(|w| w[0] < w[1]));
    assert!(list.iter().all(|s| s.is_canonical() && s.vertex_count() <= 5));
    assert!(list.contains(&FamilySpec::parse("L0p(1,0)").unwrap()));
    assert!(!list.contains(&FamilySpec::parse("L0p(2,1)").unwrap()));
}

#[test]
fn catalog_lookup_and_recognize() {
    let cat = Catalog::canonical(3);
    assert!(!cat.is_empty());
    for s in canonical_list(3).into_iter().filter(|s| s.vertex_count() == 3) {
        let bq = build_family(&s).unwrap();
        assert_eq!(cat.lookup(&canonical_key(&bq)), Some(&s));
    }
    let all = Catalog::all_families(3);
    assert!(all.len() >= cat.len());
    let g = build_family(&FamilySpec::parse("G0(1,1,0)").unwrap()).unwrap();
    assert!(recognize(&g).is_some());
    let a2 = gentle::quiver::parse("quiver a2\nvertex x\nvertex y\narrow a x y\nend\n").unwrap();
    assert_eq!(recognize(&a2), None);
}
