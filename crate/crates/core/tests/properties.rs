mod common;

use std::sync::OnceLock;

use ipo_core::canon::{canonical_key, find_isomorphism};
use ipo_core::duality::{dual_isomorphic, random_dual};
use ipo_core::io::{parse, serialize, AlgebraDocument};
use ipo_core::{check_ipo, classify, decompose, dualize, glue, primalize, Class, FiniteIpoAlgebra};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{random_system, representatives, shuffle};

/// Every ipo-semigroup with at most five elements, plus a few larger
/// locally integral ones.
fn pool() -> &'static [FiniteIpoAlgebra] {
    static POOL: OnceLock<Vec<FiniteIpoAlgebra>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut v: Vec<_> = (1..=5).flat_map(|n| representatives(Class::IpoSemigroup, n)).collect();
        v.extend(representatives(Class::LocIntIpoSemigroup, 7));
        v.extend(representatives(Class::IpoSemilattice, 8));
        v
    })
}

fn relabel(alg: &FiniteIpoAlgebra, seed: u64) -> FiniteIpoAlgebra {
    let perm = shuffle(&mut ChaCha8Rng::seed_from_u64(seed), alg.n());
    alg.permuted(&perm)
}

fn any_algebra() -> impl Strategy<Value = FiniteIpoAlgebra> {
    (0..pool().len(), any::<u64>()).prop_map(|(i, seed)| relabel(&pool()[i], seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn canonical_key_ignores_labels(alg in any_algebra(), seed in any::<u64>()) {
        let other = relabel(&alg, seed);
        prop_assert_eq!(canonical_key(&alg), canonical_key(&other));
        let iso = find_isomorphism(&alg, &other).expect("isomorphic");
        prop_assert!(alg.permuted(&iso).same_tables(&other));
    }

    #[test]
    fn verdicts_ignore_labels(alg in any_algebra(), seed in any::<u64>()) {
        let other = relabel(&alg, seed);
        prop_assert_eq!(classify(&alg), classify(&other));
        let (a, b) = (check_ipo(&alg).unwrap(), check_ipo(&other).unwrap());
        for ((f, va), (_, vb)) in a.iter().zip(b.iter()) {
            prop_assert_eq!(va.is_ok(), vb.is_ok(), "{}", f.name());
        }
    }

    #[test]
    fn residuals_are_adjoint(alg in any_algebra()) {
        prop_assert!(alg.check_residuation().is_ok());
        for x in 0..alg.n() {
            prop_assert_eq!(alg.tilde(alg.minus(x)), x);
            prop_assert_eq!(alg.minus(alg.tilde(x)), x);
        }
    }

    #[test]
    fn documents_round_trip(alg in any_algebra(), strict in any::<bool>()) {
        let doc = AlgebraDocument::algebra(alg);
        let text = serialize(&doc);
        let back = parse(&text, strict).unwrap();
        prop_assert_eq!(serialize(&back), text);
        prop_assert_eq!(back.payload, doc.payload);
    }

    #[test]
    fn decompose_then_glue_is_identity(alg in any_algebra()) {
        if let Ok(sys) = decompose(&alg) {
            prop_assert!(alg.check_locally_integral().is_ok());
            let out = glue(&sys);
            prop_assert!(out.is_defect_free());
            prop_assert!(out.algebra.same_tables(&alg));
        } else {
            prop_assert!(alg.check_locally_integral().is_err());
        }
    }

    #[test]
    fn glued_systems_decompose_back(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sys = random_system(&mut rng, 4, 4);
        let out = glue(&sys);
        if out.is_defect_free() {
            let again = decompose(&out.algebra).expect("locally integral");
            prop_assert_eq!(again.d(), sys.d());
            prop_assert_eq!(canonical_key(&glue(&again).algebra), canonical_key(&out.algebra));
        } else {
            prop_assert!(out.algebra.check_ipo_semigroup().is_err() || out.algebra.check_locally_integral().is_err());
        }
    }

    #[test]
    fn duals_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_dual(&mut rng, 4, 3);
        let alg = primalize(&d).unwrap();
        prop_assert!(Class::IpoSemilattice.contains(&alg));
        prop_assert_eq!(alg.n(), d.primal_size());
        prop_assert!(dual_isomorphic(&dualize(&alg).unwrap(), &d));
    }
}
