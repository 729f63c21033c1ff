use gentle::families::{build_family, FamilySpec};
use gentle::invariant::{
    cartan_matrix, characteristic_sequences, degeneracy_class, euler_data, forbidden_threads, phi,
    permitted_threads, Degeneracy, PhiInvariant, ThreadKind,
};
use gentle::orbit::{enumerate, SizeClass};
use gentle::quiver::{parse, BoundQuiver};

fn fam(s: &str) -> BoundQuiver {
    build_family(&FamilySpec::parse(s).unwrap()).unwrap()
}

/// Walks every nonzero path explicitly.
fn naive_cartan(bq: &BoundQuiver) -> Vec<Vec<i64>> {
    let n = bq.vertex_count();
    let mut c = vec![vec![0i64; n]; n];
    fn extend(bq: &BoundQuiver, start: usize, last: usize, c: &mut Vec<Vec<i64>>) {
        c[start][bq.target(last)] += 1;
        for next in bq.out_arrows(bq.target(last)) {
            if !bq.has_relation(next, last) {
                extend(bq, start, next, c);
            }
        }
    }
    for v in 0..n {
        c[v][v] += 1;
        for a in bq.out_arrows(v) {
            extend(bq, v, a, &mut c);
        }
    }
    c
}

#[test]
fn anchored_values() {
    assert_eq!(phi(&fam("L0(1,0)")).unwrap(), PhiInvariant::from_pairs(&[(1, 3)]));
    assert_eq!(phi(&fam("L2(1,1,1,0,0)")).unwrap(), PhiInvariant::from_pairs(&[(0, 1), (0, 1), (1, 1)]));
    assert_eq!(
        phi(&fam("L1(1,2,0,1,0)")).unwrap(),
        PhiInvariant::from_pairs(&[(0, 3), (1, 0), (1, 1)])
    );
    let a2 = parse("quiver a2\nvertex x\nvertex y\narrow a x y\nend\n").unwrap();
    assert_eq!(phi(&a2).unwrap(), PhiInvariant::from_pairs(&[(3, 1)]));
}

#[test]
fn threads_of_a2() {
    let a2 = parse("quiver a2\nvertex x\nvertex y\narrow a x y\nend\n").unwrap();
    let p = permitted_threads(&a2);
    let f = forbidden_threads(&a2);
    // the arrow plus a trivial thread at each end
    assert_eq!(p.len(), 3);
    assert!(p.iter().all(|t| t.kind == ThreadKind::Permitted));
    assert_eq!(f.iter().filter(|t| !t.is_trivial()).count(), 1);
}

#[test]
fn sequences_pair_threads() {
    let bq = fam("L2(2,1,1,0,0)");
    let seqs = characteristic_sequences(&bq).unwrap();
    let total: usize = seqs.iter().map(|s| s.kind().0 as usize).sum();
    assert_eq!(total, permitted_threads(&bq).len());
}

#[test]
fn cartan_matches_path_count() {
    for n in 1..=4 {
        for a in n - 1..=n + 1 {
            for bq in enumerate(SizeClass { vertices: n, arrows: a }, false).unwrap() {
                assert_eq!(cartan_matrix(&bq).entries, naive_cartan(&bq), "{bq:?}");
            }
        }
    }
}

#[test]
fn cartan_of_l0() {
    let bq = fam("L0(1,0)");
    let c = cartan_matrix(&bq);
    assert_eq!(c.vertices, vec!["w0", "w1"]);
    assert_eq!(c.entries, vec![vec![2, 3], vec![1, 2]]);
    let e = euler_data(&bq).unwrap();
    assert_eq!(e.det_cartan, 1);
}

#[test]
fn singular_cartan_has_no_euler_data() {
    let bq = fam("L2(2,1,0,1,0)");
    assert_eq!(cartan_matrix(&bq).entries, vec![vec![2, 2], vec![2, 2]]);
    assert!(euler_data(&bq).is_none());
}

#[test]
fn opposite_keeps_the_invariant() {
    for n in 1..=4 {
        for bq in enumerate(SizeClass::two_cycle(n), true).unwrap() {
            assert_eq!(phi(&bq).unwrap(), phi(&bq.opposite()).unwrap());
        }
    }
}

#[test]
fn degeneracy() {
    assert_eq!(degeneracy_class(&fam("L0(2,1)")).unwrap(), Degeneracy::Degenerate);
    assert_eq!(degeneracy_class(&fam("L0p(1,0)")).unwrap(), Degeneracy::Degenerate);
    assert_eq!(degeneracy_class(&fam("L2(2,1,0,1,0)")).unwrap(), Degeneracy::Nondegenerate);
    let tree = parse("quiver a2\nvertex x\nvertex y\narrow a x y\nend\n").unwrap();
    assert!(degeneracy_class(&tree).is_err());
}

#[test]
fn display_format() {
    assert_eq!(phi(&fam("L0(1,0)")).unwrap().to_string(), "(1,3): 1\nsum: 1\n");
}
