use std::sync::Arc;

use qma_core::error::QmaError;
use qma_core::ncengine::checks::diamond_failures;
use qma_core::ncengine::Engine;
use qma_core::qcoeff::{CycScalar, LaurentRing};
use qma_core::rootdata::{AlgebraSpec, Family};
use qma_core::skewform::{closed_forms, defining_matrix, degree};
use qma_core::verma::*;

fn spec(f: Family, n: usize) -> AlgebraSpec {
    AlgebraSpec::named(f, n).unwrap()
}

#[test]
fn restricted_examples() {
    let r = build_restricted_verma(&spec(Family::Standard, 2), 3, &HighestWeight::from_ints(3, &[1, 1])).unwrap();
    assert_eq!(r.dimension, 3);
    assert!(irreducible(&r));
    let r = build_restricted_verma(&spec(Family::Standard, 3), 3, &HighestWeight::ones(3, 3)).unwrap();
    assert_eq!(r.dimension, 27);
    let d = degree(&defining_matrix(&spec(Family::Standard, 3), false), 3).unwrap();
    assert_eq!(d, 27u32.into());
    assert!(matches!(
        build_restricted_verma(&spec(Family::Dipper, 2), 3, &HighestWeight::ones(2, 3)),
        Err(QmaError::ConditionCommuFailed)
    ));
    assert!(matches!(
        build_restricted_verma(&spec(Family::Jn, 3), 3, &HighestWeight::ones(3, 3)),
        Err(QmaError::ConditionCommuFailed)
    ));
    assert!(build_restricted_verma(&spec(Family::Standard, 2), 2, &HighestWeight::ones(2, 3)).is_err());
    assert!(build_restricted_verma(&spec(Family::Standard, 2), 3, &HighestWeight::from_ints(3, &[1])).is_err());
}

#[test]
fn minimal_j0_examples() {
    for (n, m, d) in [(2, 3, 3), (3, 3, 27), (3, 4, 16), (2, 4, 4)] {
        let r = build_min_generalized_verma_j0(n, m, &HighestWeight::ones(n, m)).unwrap();
        assert_eq!(r.dimension, d, "n={} m={}", n, m);
        assert!(irreducible(&r), "n={} m={}", n, m);
    }
    assert!(build_min_generalized_verma_j0(2, 2, &HighestWeight::ones(2, 3)).is_err());
}

#[test]
fn dimension_formulas() {
    for n in 2..=3 {
        for m in [3u32, 4, 5] {
            for f in [Family::Standard, Family::J0, Family::Jz] {
                let r = build_restricted_verma(&spec(f, n), m, &HighestWeight::ones(n, m)).unwrap();
                assert_eq!(r.dimension.to_string(), closed_forms::verma_restricted(n, m).to_string());
            }
            let r = build_min_generalized_verma_j0(n, m, &HighestWeight::ones(n, m)).unwrap();
            assert_eq!(r.dimension.to_string(), closed_forms::verma_j0_minimal(n, m).to_string());
        }
    }
}

#[test]
fn dimension_matches_degree_for_odd_m() {
    for n in 2..=3 {
        for m in [3u32, 5] {
            for f in [Family::Standard, Family::J0, Family::Jz] {
                let s = spec(f, n);
                let d = degree(&defining_matrix(&s, false), m).unwrap();
                let r = build_restricted_verma(&s, m, &HighestWeight::ones(n, m)).unwrap();
                assert_eq!(d.to_string(), r.dimension.to_string(), "{} n={} m={}", f, n, m);
            }
            let d = degree(&defining_matrix(&spec(Family::J0, n), false), m).unwrap();
            let r = build_min_generalized_verma_j0(n, m, &HighestWeight::ones(n, m)).unwrap();
            assert_eq!(d.to_string(), r.dimension.to_string());
        }
    }
}

#[test]
fn irreducible_iff_weights_nonzero() {
    let s = spec(Family::Standard, 2);
    for m in [3u32, 4] {
        for lam in [[1, 1], [1, 0], [0, 1], [0, 0], [2, -1], [-3, 5]] {
            let r = build_restricted_verma(&s, m, &HighestWeight::from_ints(m, &lam)).unwrap();
            assert_eq!(irreducible(&r), lam.iter().all(|l| *l != 0), "m={} {:?}", m, lam);
        }
        let z = CycScalar::zeta_pow(m, 1);
        let r = build_restricted_verma(&s, m, &HighestWeight::new(vec![z.clone(), &z + &CycScalar::one(m)])).unwrap();
        assert!(irreducible(&r));
    }
    let r = build_restricted_verma(&spec(Family::Standard, 3), 3, &HighestWeight::from_ints(3, &[1, 0, 1])).unwrap();
    assert!(!irreducible(&r));
}

#[test]
fn verify_and_negative_control() {
    let s = spec(Family::Standard, 2);
    let r = build_restricted_verma(&s, 3, &HighestWeight::from_ints(3, &[1, 1])).unwrap();
    assert!(verify_rep(&r, &s, 3));
    assert!(!verify_rep(&r, &s, 4));
    let mut bad = r.clone();
    let a = bad.matrices.get_mut(&(1, 1)).unwrap();
    let v = &a.get(1, 0) + &CycScalar::one(3);
    a.set(1, 0, v);
    assert!(!verify_rep(&bad, &s, 3));
    // the matrices of one algebra do not represent another
    assert!(!verify_rep(&r, &spec(Family::Jz, 2), 3));
}

#[test]
fn diagonal_action_invertible_iff_weights_nonzero() {
    let s = spec(Family::Jz, 3);
    for lam in [[1, 2, 3], [1, 0, 1], [0, 0, 0]] {
        let r = build_restricted_verma(&s, 3, &HighestWeight::from_ints(3, &lam)).unwrap();
        let full = (1..=3).all(|k| r.matrix(k, 4 - k).rank() == r.dimension);
        assert_eq!(full, lam.iter().all(|l| *l != 0), "{:?}", lam);
    }
}

#[test]
fn even_m_primitive_vector() {
    let r = build_min_generalized_verma_j0(2, 4, &HighestWeight::ones(2, 4)).unwrap();
    assert_eq!(annihilated_by_lowering(&r, &[2]), Some(true));
    assert_eq!(annihilated_by_lowering(&r, &[1]), Some(false));
    let r = build_min_generalized_verma_j0(3, 4, &HighestWeight::ones(3, 4)).unwrap();
    assert_eq!(annihilated_by_lowering(&r, &[0, 0, 2]), Some(true));
    assert_eq!(annihilated_by_lowering(&r, &[0, 0, 1]), Some(false));
}

#[test]
fn truncation_and_zone_order() {
    for f in [Family::Standard, Family::J0, Family::Jz, Family::Jn] {
        for m in [3u32, 4, 5] {
            assert!(truncation_is_submodule(&spec(f, 2), m).unwrap());
        }
        for n in 2..=3 {
            let eng = Engine::new(Arc::new(zone_presentation(&spec(f, n)).unwrap()), LaurentRing);
            assert!(diamond_failures(&eng).is_empty(), "{} n={}", f, n);
        }
    }
}

#[test]
fn json_export() {
    let r = build_restricted_verma(&spec(Family::Standard, 2), 3, &HighestWeight::ones(2, 3)).unwrap();
    let v = r.to_json();
    assert_eq!(v["dimension"], 3);
    assert_eq!(v["matrices"].as_array().unwrap().len(), 4);
    assert_eq!(v["matrices"][0]["matrix"].as_array().unwrap().len(), 3);
}
