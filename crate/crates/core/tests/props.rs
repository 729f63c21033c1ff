use std::sync::OnceLock;

use gentle::invariant::phi;
use gentle::moves::{applicable_moves, apply};
use gentle::orbit::{enumerate, SizeClass};
use gentle::quiver::{canonical_form, canonical_key, parse, serialize, BoundQuiver};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn pool() -> &'static [BoundQuiver] {
    static POOL: OnceLock<Vec<BoundQuiver>> = OnceLock::new();
    POOL.get_or_init(|| {
        (1..=4)
            .flat_map(|n| (n - 1..=n + 1).map(move |a| SizeClass { vertices: n, arrows: a }))
            .flat_map(|s| enumerate(s, false).unwrap())
            .collect()
    })
}

fn shuffled(bq: &BoundQuiver, seed: u64) -> BoundQuiver {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut vs: Vec<usize> = (0..bq.vertex_count()).collect();
    let mut arrs: Vec<usize> = (0..bq.arrow_count()).collect();
    vs.shuffle(&mut rng);
    arrs.shuffle(&mut rng);
    bq.relabel(&|v| format!("n{}", vs[v]), &|a| format!("e{}", arrs[a]))
}

fn quiver() -> impl Strategy<Value = BoundQuiver> {
    (0..pool().len(), any::<u64>()).prop_map(|(i, seed)| shuffled(&pool()[i], seed))
}

proptest! {
    #[test]
    fn key_ignores_names(bq in quiver(), seed in any::<u64>()) {
        prop_assert_eq!(canonical_key(&shuffled(&bq, seed)), canonical_key(&bq));
    }

    #[test]
    fn text_round_trip(bq in quiver()) {
        prop_assert_eq!(parse(&serialize(&bq)).unwrap(), bq);
    }

    #[test]
    fn opposite_is_an_involution(bq in quiver()) {
        prop_assert_eq!(bq.opposite().opposite(), bq);
    }

    #[test]
    fn canonical_form_is_idempotent(bq in quiver()) {
        let c = canonical_form(&bq);
        prop_assert_eq!(canonical_key(&c), canonical_key(&bq));
        prop_assert_eq!(canonical_form(&c), c);
    }

    #[test]
    fn moves_commute_with_renaming(bq in quiver(), seed in any::<u64>()) {
        prop_assume!(bq.cycle_rank().ok() == Some(2));
        let renamed = shuffled(&bq, seed);
        prop_assert_eq!(applicable_moves(&bq).len(), applicable_moves(&renamed).len());
        let before = phi(&bq).unwrap();
        for mv in applicable_moves(&renamed) {
            prop_assert_eq!(phi(&apply(&renamed, &mv).unwrap()).unwrap(), before.clone());
        }
    }
}
