use num_bigint::BigUint;
use num_traits::Zero;
use qma_core::qcoeff::{CycRing, LaurentRing};
use qma_core::rootdata::AlgebraSpec;
use qma_core::semidirect::*;
use qma_core::skewform::{closed_forms, degree, skew_normal_form};

#[test]
fn extended_matrix_examples() {
    let m = extended_defining_matrix(&AlgebraSpec::standard(2).unwrap());
    assert_eq!(m.dim, 7);
    assert_eq!(skew_normal_form(&m).blocks_u64(), vec![1, 1, 1]);
    assert_eq!(degree(&m, 3).unwrap(), BigUint::from(27u32));
    for a in 4..7 {
        for b in 4..7 {
            assert!(m.get(a, b).is_zero());
        }
    }
    let m3 = extended_defining_matrix(&AlgebraSpec::standard(3).unwrap());
    assert_eq!(m3.dim, 14);
    assert_eq!(degree(&m3, 3).unwrap(), BigUint::from(729u32));
}

#[test]
fn extended_degree_theorem() {
    for n in 2..=4 {
        for m in [3u32, 5] {
            let d = degree(&extended_defining_matrix(&AlgebraSpec::standard(n).unwrap()), m).unwrap();
            assert_eq!(d, closed_forms::extended(n, m), "n={} m={}", n, m);
        }
    }
    // for n >= 3 the normal form has S(2) blocks beyond those of M_q(n-1)
    let cf = skew_normal_form(&extended_defining_matrix(&AlgebraSpec::standard(3).unwrap()));
    assert_eq!(cf.blocks_u64(), vec![1, 1, 1, 1, 1, 2]);
    let d = degree(&extended_defining_matrix(&AlgebraSpec::standard(3).unwrap()), 4).unwrap();
    assert_eq!(d, BigUint::from(2048u32));
    assert_eq!(closed_forms::extended(3, 4), BigUint::from(4096u32));
}

#[test]
fn coproduct_is_algebra_map_and_coassociative() {
    for n in 2..=3 {
        for rule in [CoproductRule::LEFT, CoproductRule::RIGHT] {
            let r = coproduct_report(n, rule).unwrap();
            assert!(r.failed_relations.is_empty(), "{:?}", r);
            assert!(r.coassociativity_failures.is_empty(), "{:?}", r);
        }
    }
}

#[test]
fn coproduct_negative_controls() {
    let r = coproduct_report(2, CoproductRule::new(2, 0)).unwrap();
    assert!(!r.pass());
    assert_eq!(r.failed_relations.len(), 4);
    assert_eq!(r.coassociativity_failures, vec!["L1".to_string()]);
    let r = coproduct_report(2, CoproductRule::new(1, 1)).unwrap();
    assert!(!r.failed_relations.is_empty());
    assert!(coproduct_report(4, CoproductRule::LEFT).is_err());
}

#[test]
fn counit_with_unit_values_on_l_is_not_a_counit() {
    // ε(L) = 1 cannot undo Δ(L_μ) = L_μ ⊗ 1 on the left factor
    for n in 2..=3 {
        for rule in [CoproductRule::LEFT, CoproductRule::RIGHT] {
            let r = coproduct_report(n, rule).unwrap();
            assert_eq!(r.counit_failures.len(), 2 * n - 1);
            assert!(r.counit_failures.iter().all(|g| g.starts_with('L')));
            assert!(!coproduct_check(n, rule).unwrap());
            // nor is ε multiplicative: L_β Z_{11} = q Z_{11} L_β
            assert!(r.counit_relation_failures.contains(&"L1·Z11".to_string()));
        }
    }
}

#[test]
fn power_coproduct() {
    assert!(coproduct_power_check(2, 3).unwrap());
    assert!(coproduct_power_check(2, 5).unwrap());
    assert!(!coproduct_power_entry(2, 3, 1, 1, LaurentRing).unwrap());
    assert!(coproduct_power_entry(3, 3, 1, 1, CycRing::new(3).unwrap()).unwrap());
    assert!(coproduct_power_check(3, 3).unwrap());
    // q² has order m' = 2 at m = 4
    assert!(!coproduct_power_check(2, 4).unwrap());
    assert!(coproduct_power_entry(2, 3, 3, 1, LaurentRing).is_err());
}

#[test]
fn cross_sections() {
    for n in 2..=3 {
        for (f, ok) in named_cross_sections(n).unwrap() {
            assert!(ok, "{} n={}", f, n);
        }
    }
}
