use gentle::families::{build_family, FamilySpec};
use gentle::invariant::phi;
use gentle::moves::{
    applicable_moves, apply, apply_all, apply_move, shift_relation, shift_relation_block,
    shift_relation_block_direct, shift_relation_direct, Direction, Move, MoveError, MoveKind,
};
use gentle::orbit::{enumerate, fuzz_shift, SizeClass};
use gentle::quiver::{canonical_key, parse, validate, BoundQuiver};

fn fam(s: &str) -> BoundQuiver {
    build_family(&FamilySpec::parse(s).unwrap()).unwrap()
}

fn classes(max: usize) -> Vec<BoundQuiver> {
    (1..=max).flat_map(|n| enumerate(SizeClass::two_cycle(n), true).unwrap()).collect()
}

#[test]
fn moves_keep_size_and_invariant() {
    for bq in classes(4) {
        let before = phi(&bq).unwrap();
        for mv in applicable_moves(&bq) {
            let out = apply(&bq, &mv).unwrap();
            assert!(validate(&out).is_ok(), "{mv}");
            assert_eq!(out.vertex_count(), bq.vertex_count());
            assert_eq!(out.arrow_count(), bq.arrow_count());
            assert_eq!(phi(&out).unwrap(), before, "{mv}");
        }
    }
}

#[test]
fn dual_move_on_the_opposite() {
    for bq in classes(3) {
        let op = bq.opposite();
        let mut here: Vec<Move> = applicable_moves(&bq);
        let mut there: Vec<Move> = applicable_moves(&op).iter().map(Move::dual).collect();
        here.sort();
        there.sort();
        assert_eq!(here, there);
        for mv in here {
            let a = apply(&bq, &mv).unwrap().opposite();
            let b = apply(&op, &mv.dual()).unwrap();
            assert_eq!(canonical_key(&a), canonical_key(&b), "{mv}");
        }
    }
}

#[test]
fn apr_reflection_at_a_sink() {
    let bq = parse("quiver q\nvertex x\nvertex y\narrow a x y\nend\n").unwrap();
    let out = apply(&bq, &Move::at(MoveKind::AprReflect, "y")).unwrap();
    let a = out.arrow_index("a").unwrap();
    assert_eq!(out.vertex_id(out.source(a)), "y");
    assert_eq!(out.vertex_id(out.target(a)), "x");
    assert!(apply(&bq, &Move::at(MoveKind::AprReflect, "x")).is_err());
}

#[test]
fn receipt_records_the_rewrite() {
    let bq = fam("L0(1,0)");
    let mv = Move::at(MoveKind::GenAprReflect, "w1");
    let (out, r) = apply_move(&bq, &mv).unwrap();
    assert_eq!(r.mv, mv);
    assert_eq!(r.input, canonical_key(&bq));
    assert_eq!(r.output, canonical_key(&out));
    assert_eq!(r.arrows.len(), 3);
}

#[test]
fn move_errors() {
    let bq = fam("L0(1,0)");
    let no_vertex = Move { kind: MoveKind::AprReflect, vertex: None };
    assert_eq!(apply(&bq, &no_vertex), Err(MoveError::VertexRequired(MoveKind::AprReflect)));
    assert_eq!(
        apply(&bq, &Move::at(MoveKind::AprReflect, "nowhere")),
        Err(MoveError::UnknownVertex("nowhere".into()))
    );
    let op_at = Move { kind: MoveKind::Opposite, vertex: Some("w0".into()) };
    assert_eq!(apply(&bq, &op_at), Err(MoveError::UnexpectedVertex));
    assert!(matches!(
        apply(&bq, &Move::at(MoveKind::AprReflect, "w0")),
        Err(MoveError::NotApplicable { .. })
    ));
}

#[test]
fn kind_names_round_trip() {
    for k in MoveKind::ALL {
        assert_eq!(k.name().parse::<MoveKind>().unwrap(), k);
        assert_eq!(k.dual().dual(), k);
    }
    assert!("apr".parse::<MoveKind>().is_err());
}

#[test]
fn opposite_twice_is_identity() {
    let bq = fam("L2(2,1,1,0,0)");
    assert_eq!(apply_all(&bq, &[Move::opposite(), Move::opposite()]).unwrap(), bq);
}

#[test]
fn basic_shift_both_ways() {
    let bq = fam("L2(2,1,1,0,0)");
    for dir in [Direction::Left, Direction::Right] {
        let sh = shift_relation(&bq, ("alpha2", "alpha1"), dir).unwrap();
        let direct = shift_relation_direct(&bq, ("alpha2", "alpha1"), dir).unwrap();
        assert_eq!(canonical_key(&sh.quiver), canonical_key(&direct), "{dir}");
        assert_eq!(apply_all(&bq, &sh.moves).unwrap(), sh.quiver);
    }
}

#[test]
fn shift_pattern_mismatch() {
    let bq = fam("L2(1,1,1,0,0)");
    assert!(matches!(
        shift_relation(&bq, ("alpha1", "alpha1"), Direction::Right),
        Err(MoveError::PatternMismatch(_))
    ));
    assert!(matches!(
        shift_relation(&bq, ("nope", "alpha1"), Direction::Right),
        Err(MoveError::UnknownArrow(_))
    ));
    assert!(shift_relation_block(&bq, "gamma1", Direction::Left).is_err());
}

#[test]
fn block_shifts_agree_wherever_they_apply() {
    let mut seen = 0;
    for bq in classes(4) {
        for a in bq.arrows() {
            for dir in [Direction::Left, Direction::Right] {
                if let Ok(direct) = shift_relation_block_direct(&bq, &a.id, dir) {
                    let sh = shift_relation_block(&bq, &a.id, dir).unwrap();
                    assert_eq!(canonical_key(&sh.quiver), canonical_key(&direct));
                    seen += 1;
                }
            }
        }
    }
    assert!(seen > 0);
}

#[test]
fn fuzz_smoke() {
    let r = fuzz_shift(7, 120);
    assert!(r.passed(), "{r}");
}
