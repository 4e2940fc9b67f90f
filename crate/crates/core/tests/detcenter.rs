use qma_core::detcenter::*;
use qma_core::ncengine::checks::{central_check, covariance_check, cyc_engine, laurent_engine};
use qma_core::ncengine::Poly;
use qma_core::qcoeff::CoeffRing;
use qma_core::rootdata::{AlgebraSpec, Family};

fn spec(f: Family, n: usize) -> AlgebraSpec {
    AlgebraSpec::named(f, n).unwrap()
}

#[test]
fn modified_minors_agree_with_l_realization() {
    for f in Family::NAMED {
        for n in 2..=3 {
            let s = spec(f, n);
            let eng = laurent_engine(&s, true);
            let mut minors = vec![MinorSpec::full(n)];
            if n == 3 {
                minors.push(MinorSpec::range(1..=2, 2..=3).unwrap());
                minors.push(MinorSpec::new(vec![1, 3], vec![1, 2]).unwrap());
            }
            for mi in minors {
                assert_eq!(qdet(&eng, &s, &mi).unwrap(), qdet_via_l(&eng, &s, &mi).unwrap(), "{} {:?}", f, mi);
            }
        }
    }
}

#[test]
fn det_central_generic() {
    for n in 2..=3 {
        let s = AlgebraSpec::standard(n).unwrap();
        let eng = laurent_engine(&s, false);
        let d = qdet(&eng, &s, &MinorSpec::full(n)).unwrap();
        assert!(central_check(&eng, &d));
        if n == 2 {
            // its square has no leftover correction terms
            let sq = eng.mul(&d, &d);
            assert_eq!(sq, eng.power(&d, 2).unwrap());
            assert!(central_check(&eng, &sq));
        }
    }
}

#[test]
fn modified_det_covariant_plain_not() {
    let s = spec(Family::Jz, 2);
    let eng = laurent_engine(&s, false);
    assert!(covariance_check(&eng, &qdet(&eng, &s, &MinorSpec::full(2)).unwrap()).is_ok());
    assert!(covariance_check(&eng, &qdet_plain(&eng, &MinorSpec::full(2)).unwrap()).is_err());
}

#[test]
fn corner_generators_covariant() {
    for f in Family::NAMED {
        for n in 2..=4 {
            let s = spec(f, n);
            let eng = laurent_engine(&s, false);
            for (i, j) in [(1, n), (n, 1)] {
                assert!(covariance_check(&eng, &eng.z(i, j)).is_ok(), "{} n={} Z{}{}", f, n, i, j);
            }
        }
    }
}

#[test]
fn generator_powers_central_at_roots() {
    for f in Family::NAMED {
        for n in 2..=3 {
            for m in [3u32, 4, 5] {
                let s = spec(f, n);
                let eng = cyc_engine(&s, false, m).unwrap();
                for (i, j) in s.pairs() {
                    let p = eng.gen_pow(eng.presentation().z(i, j), m as i32);
                    assert!(central_check(&eng, &p), "{} n={} m={} ({},{})", f, n, m, i, j);
                }
            }
        }
    }
}

#[test]
fn laplace_standard_all_cases() {
    for n in 2..=3 {
        let s = AlgebraSpec::standard(n).unwrap();
        for i in 1..=n {
            for k in 1..=n {
                for mode in [LaplaceMode::Row, LaplaceMode::Column] {
                    let r = laplace_check(&s, mode, i, k).unwrap();
                    assert!(r.pass, "n={} {:?} {} {}", n, mode, i, k);
                    assert!(r.exponents.values().all(|e| *e == 0));
                }
            }
        }
    }
}

#[test]
fn laplace_solver_modified() {
    for f in [Family::J0, Family::Jz, Family::Jn, Family::Dipper] {
        for i in 1..=2 {
            for k in 1..=2 {
                for mode in [LaplaceMode::Row, LaplaceMode::Column] {
                    let r = laplace_check(&spec(f, 2), mode, i, k).unwrap();
                    assert!(r.pass && r.matches_weight_formula, "{} {:?} {} {} {:?}", f, mode, i, k, r);
                }
            }
        }
    }
    let r = laplace_check(&spec(Family::J0, 2), LaplaceMode::Row, 1, 1).unwrap();
    assert_eq!(r.exponents.values().copied().collect::<Vec<_>>(), vec![4, 4, 4, 4]);
    let r = laplace_check(&spec(Family::J0, 3), LaplaceMode::Row, 2, 2).unwrap();
    assert!(r.pass && r.matches_weight_formula);
    assert!(laplace_check(&spec(Family::J0, 2), LaplaceMode::Row, 3, 1).is_err());
}

#[test]
fn center_lists() {
    let s = spec(Family::Jz, 2);
    let eng = cyc_engine(&s, false, 3).unwrap();
    let labels: Vec<String> = center_generators(&eng, &s, 3, OmegaReading::PhiStar)
        .unwrap()
        .into_iter()
        .map(|(l, _)| l)
        .collect();
    assert!(labels.contains(&"M12".to_string()) && labels.contains(&"M21".to_string()));

    let s = spec(Family::J0, 2);
    let eng = cyc_engine(&s, false, 3).unwrap();
    let labels: Vec<String> = center_generators(&eng, &s, 3, OmegaReading::PhiStar)
        .unwrap()
        .into_iter()
        .map(|(l, _)| l)
        .collect();
    for r in 1..=3 {
        assert!(labels.contains(&format!("J12^{}·J21^{}", 3 - r, r)));
    }
    for (i, j) in s.pairs() {
        assert!(labels.contains(&format!("J{}{}^3", i, j)));
    }
    assert!(center_generators(&eng, &spec(Family::Standard, 2), 3, OmegaReading::PhiStar).is_err());
}

#[test]
fn listed_centers_certify() {
    for (f, m) in [(Family::J0, 3), (Family::J0, 4), (Family::Jz, 3), (Family::Jz, 4)] {
        for n in 2..=3 {
            for (label, ok) in certify_family_center(f, n, m).unwrap() {
                assert!(ok, "{} n={} m={} {}", f, n, m, label);
            }
        }
    }
}

#[test]
fn non_central_controls() {
    let s = spec(Family::J0, 2);
    let eng = cyc_engine(&s, false, 3).unwrap();
    let res = center_certify(&eng, &[("J11".into(), eng.z(1, 1))]);
    assert!(!res[0].1);
    let s = AlgebraSpec::standard(2).unwrap();
    let eng = cyc_engine(&s, false, 3).unwrap();
    let d = qdet(&eng, &s, &MinorSpec::full(2)).unwrap();
    assert!(center_certify(&eng, &[("det".into(), d)])[0].1);
}

#[test]
fn omega_as_printed_is_not_central() {
    for m in [3u32, 5] {
        let s = spec(Family::Jn, 3);
        let eng = cyc_engine(&s, false, m).unwrap();
        for reading in [OmegaReading::PhiStar, OmegaReading::Phi] {
            let om = omega_element(&eng, &s, m, reading).unwrap();
            assert!(!central_check(&eng, &om));
        }
        let b = jn_quasipolynomial_exponents(3, m);
        assert!(quasipolynomial_central(&s, &b, m).unwrap());
    }
}

#[test]
fn transpose_is_automorphism_not_anti() {
    for n in 2..=3 {
        let s = spec(Family::Jz, n);
        let eng = laurent_engine(&s, false);
        let tau = transpose_map(&eng);
        assert!(generator_map_preserves_relations(&eng, &tau, false));
        assert!(!generator_map_preserves_relations(&eng, &tau, true));
    }
}

#[test]
fn quasipolynomial_lemma_exponents() {
    // x_{s,t} X(1) = q^{(n-2)(n+1-s-t)} X(1) x_{s,t}, X(j) with n-1
    for n in 2..=4 {
        let s = spec(Family::J0, n);
        for j in 1..=n {
            let b = x_diagonal(n, j);
            let c = if j == 1 { n as i64 - 2 } else { n as i64 - 1 };
            for (a, t) in s.pairs() {
                let e = qma_core::ncengine::checks::monomial_exchange_exponent(&s, &b, (a, t)).unwrap();
                assert_eq!(e, c * (n as i64 + 1 - a as i64 - t as i64), "n={} j={} ({},{})", n, j, a, t);
            }
        }
    }
}

#[test]
fn quasipolynomial_center_lists() {
    for n in 2..=4 {
        let s = spec(Family::J0, n);
        for m in [3u32, 4, 5, 6] {
            for (label, b) in quasipolynomial_center_j0(n, m, QuasiReading::Uniform) {
                assert!(quasipolynomial_central(&s, &b, m).unwrap(), "n={} m={} {}", n, m, label);
            }
        }
    }
    // the printed even-m exponents n-1, n-2 fail already for n = 2, m = 4
    let s = spec(Family::J0, 2);
    let bad: Vec<_> = quasipolynomial_center_j0(2, 4, QuasiReading::Literal)
        .into_iter()
        .filter(|(_, b)| !quasipolynomial_central(&s, b, 4).unwrap())
        .collect();
    assert_eq!(bad.len(), 1);
}

#[test]
fn power_identity() {
    assert!(qprop_check(2, 3).unwrap());
    assert!(!qprop_generic(2, 3).unwrap());
    assert!(qprop_check(3, 3).unwrap());
}

#[test]
fn minor_of_single_entry_and_zero() {
    let s = spec(Family::Jn, 3);
    let eng = laurent_engine(&s, false);
    let one = MinorSpec::new(vec![3], vec![1]).unwrap();
    assert_eq!(qdet(&eng, &s, &one).unwrap(), eng.z(3, 1));
    assert!(MinorSpec::new(vec![1, 2], vec![1]).is_err());
    let p: Poly<_> = qdet(&eng, &s, &MinorSpec::full(3)).unwrap();
    assert_eq!(p.len(), 6);
    assert!(!eng.ring().is_zero(p.terms.values().next().unwrap()));
}
