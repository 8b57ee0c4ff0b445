mod common;

use complexforge::builtins::builtin;
use complexforge::thickening::boundary_complex;
use proptest::prelude::*;

#[test]
fn seeded_foldings_are_not_immersions() {
    let mut r = common::rng(12);
    let mut folds = 0;
    while folds < 100 {
        let Some(f) = common::random_fold(&mut r) else { continue };
        folds += 1;
        let (ok, witness) = f.is_immersion();
        assert!(!ok);
        let w = witness.expect("a witness accompanies every failure");
        assert!(common::witness_is_valid(&f, &w), "{w:?}");
        assert!(!f.is_covering().is_covering);
    }
}

#[test]
fn retraction_immersions_where_links_do_not_fold() {
    for name in ["bing_house", "sphere", "torus"] {
        let b = builtin(name).unwrap();
        let r = boundary_complex(&b.complex, b.embedding.as_ref().unwrap()).unwrap();
        assert_eq!(r.retraction_immersion.is_immersion(), (true, None), "{name}");
    }
}

#[test]
fn dunce_hat_retraction_folds_with_a_valid_witness() {
    let b = builtin("dunce_hat").unwrap();
    let r = boundary_complex(&b.complex, b.embedding.as_ref().unwrap()).unwrap();
    let (ok, w) = r.retraction_immersion.is_immersion();
    assert!(!ok);
    assert!(common::witness_is_valid(&r.retraction_immersion, &w.unwrap()));
    assert!(r.immersion_witness.is_some());
}

proptest! {
    #[test]
    fn any_fold_is_caught(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        if let Some(f) = common::random_fold(&mut r) {
            let (ok, w) = f.is_immersion();
            prop_assert!(!ok);
            prop_assert!(common::witness_is_valid(&f, &w.unwrap()));
        }
    }
}
