use std::sync::Arc;

use qma_core::families::{explicit_presentation, explicit_relation, realization};
use qma_core::ncengine::checks::{
    central_check, covariance_check, cyc_engine, laurent_engine, monomial_exchange_exponent,
};
use qma_core::ncengine::{Engine, Poly, Presentation, Word};
use qma_core::qcoeff::{CycRing, LaurentRing, LaurentScalar};
use qma_core::rootdata::{index_pairs, AlgebraSpec, Family};

fn std2() -> Engine<LaurentRing> {
    laurent_engine(&AlgebraSpec::standard(2).unwrap(), false)
}

fn word(e: &Engine<LaurentRing>, s: &str) -> Poly<LaurentScalar> {
    e.straighten(&Word::parse(e.presentation(), s).unwrap())
}

#[test]
fn straighten_examples() {
    let e = std2();
    let lhs = word(&e, "Z12 Z11");
    let rhs = word(&e, "Z11 Z12").scale(&LaurentRing, &LaurentScalar::q_pow(-1));
    assert_eq!(lhs, rhs);
    let lhs = word(&e, "Z22 Z11");
    let mut rhs = word(&e, "Z11 Z22");
    rhs.add_scaled(&LaurentRing, &word(&e, "Z12 Z21"), &-LaurentScalar::q_minus_qinv());
    assert_eq!(lhs, rhs);
    assert_eq!(lhs.len(), 2);
    let ordered = word(&e, "Z11 Z12 Z21 Z22");
    assert_eq!(ordered.len(), 1);
    assert_eq!(ordered.terms.values().next().unwrap(), &LaurentScalar::one());
}

#[test]
fn commutator_and_power_examples() {
    let e = std2();
    let c = e.commutator(&e.z(1, 1), &e.z(2, 2));
    assert_eq!(c, word(&e, "Z12 Z21").scale(&LaurentRing, &LaurentScalar::q_minus_qinv()));
    assert!(e.commutator(&e.z(1, 2), &e.z(2, 1)).is_zero());
    let p = e.power(&e.z(1, 1), 3).unwrap();
    assert_eq!(p, word(&e, "Z11^3"));
    assert!(e.power(&e.z(1, 1), -1).is_err());
}

#[test]
fn negative_powers_of_l() {
    let spec = AlgebraSpec::standard(2).unwrap();
    let e = laurent_engine(&spec, true);
    let p = word(&e, "L1 Z11 L1^-1");
    assert_eq!(p, word(&e, "Z11").scale(&LaurentRing, &LaurentScalar::q_pow(1)));
    let inv = e.power(&word(&e, "L1 L2^2"), -1).unwrap();
    assert_eq!(e.mul(&inv, &word(&e, "L1 L2^2")), e.one());
}

#[test]
fn covariance_examples() {
    let e = std2();
    let cov = covariance_check(&e, &e.z(1, 2)).unwrap();
    assert_eq!(cov[&(1, 1)], -1);
    assert_eq!(cov[&(1, 2)], 0);
    assert_eq!(cov[&(2, 1)], 0);
    assert_eq!(cov[&(2, 2)], 1);
    assert!(covariance_check(&e, &e.z(1, 1)).is_err());
    assert!(covariance_check(&e, &Poly::zero()).is_err());
}

#[test]
fn central_examples() {
    let spec = AlgebraSpec::standard(2).unwrap();
    let c3 = cyc_engine(&spec, false, 3).unwrap();
    let z3 = c3.power(&c3.z(1, 1), 3).unwrap();
    assert!(central_check(&c3, &z3));
    let e = std2();
    assert!(!central_check(&e, &e.power(&e.z(1, 1), 3).unwrap()));
    assert!(central_check(&e, &e.one()));
}

#[test]
fn monomial_exchange_examples() {
    let spec = AlgebraSpec::named(Family::J0, 3).unwrap();
    let mut b = vec![vec![0i64; 3]; 3];
    for (i, j) in [(1, 2), (2, 3), (2, 1), (3, 2)] {
        b[i - 1][j - 1] += 1;
    }
    assert_eq!(monomial_exchange_exponent(&spec, &b, (1, 1)).unwrap(), 4);
    let mut x1 = vec![vec![0i64; 3]; 3];
    for k in 0..3 {
        x1[k][k] = 1;
    }
    assert_eq!(monomial_exchange_exponent(&spec, &x1, (2, 2)).unwrap(), 0);
    assert_eq!(monomial_exchange_exponent(&spec, &vec![vec![0; 3]; 3], (2, 2)).unwrap(), 0);
}

#[test]
fn family_exponents_match_explicit_relations() {
    for family in [Family::Standard, Family::J0, Family::Jz, Family::Jn] {
        for n in 2..=4 {
            let spec = AlgebraSpec::named(family, n).unwrap();
            let pairs = index_pairs(n);
            for (x, a) in pairs.iter().enumerate() {
                for b in pairs.iter().skip(x + 1) {
                    let (h, corr) = explicit_relation(family, *a, *b);
                    assert_eq!(spec.exchange_exponent(*a, *b).unwrap(), h, "{} n={} {:?} {:?}", family, n, a, b);
                    if let Some(c) = corr {
                        let hp = spec.extra_exponent(*a, *b).unwrap();
                        assert_eq!(LaurentScalar::q_minus_qinv().shift(hp), c, "{} {:?} {:?}", family, a, b);
                    }
                }
            }
        }
    }
}

#[test]
fn family_relations_hold_in_modified_algebras() {
    for family in Family::NAMED {
        for n in 2..=3 {
            let spec = AlgebraSpec::named(family, n).unwrap();
            let eng = laurent_engine(&spec, false);
            let explicit = explicit_presentation(family, n);
            let (map, k) = realization(family, n);
            let rels: Vec<_> = explicit
                .relations()
                .into_iter()
                .map(|mut r| {
                    for t in r.terms.iter_mut() {
                        t.0 = t.0.substitute_power(k);
                    }
                    r
                })
                .collect();
            let images = eng.relation_images(&rels, &|g| eng.gen(map[g]));
            for (r, img) in rels.iter().zip(images) {
                assert!(img.is_zero(), "{} n={} relation {:?}", family, n, r);
            }
        }
    }
}

#[test]
fn cross_sections_inside_extended_algebra() {
    // Z̃_{i,j} = Z_{i,j} L_{ζ_i + ξ_j} inside the extended standard algebra
    for family in Family::NAMED {
        for n in 2..=3 {
            let spec = AlgebraSpec::named(family, n).unwrap();
            let ext = laurent_engine(&AlgebraSpec::standard(n).unwrap(), true);
            let pres = ext.presentation().clone();
            let image = |g: usize| {
                let (i, j) = index_pairs(n)[g];
                let w = spec.shift(i, j);
                let mut p = ext.z(i, j);
                for (k, c) in w.0.iter().enumerate() {
                    p = ext.mul_poly_gen_pow(&p, pres.l(k + 1), *c as i32);
                }
                p
            };
            let target = Presentation::modified(&spec, false);
            for (r, img) in target.relations().iter().zip(ext.relation_images(&target.relations(), &image)) {
                assert!(img.is_zero(), "{} n={} {:?}", family, n, r);
            }
        }
    }
}

#[test]
fn specialization_commutes_with_straightening() {
    let spec = AlgebraSpec::named(Family::J0, 3).unwrap();
    let lau = laurent_engine(&spec, false);
    let cyc = cyc_engine(&spec, false, 5).unwrap();
    let pres = lau.presentation().clone();
    let w = Word::from_gens(&[pres.z(3, 3), pres.z(1, 1), pres.z(2, 3), pres.z(1, 2), pres.z(3, 1)]);
    let a = lau.straighten(&w).specialize(&CycRing { m: 5 });
    let b = cyc.straighten(&w);
    assert_eq!(a, b);
}

#[test]
fn quantum_plane_tensor_parses() {
    let plane = Presentation::quantum_plane();
    let jz = Presentation::modified(&AlgebraSpec::named(Family::Jz, 2).unwrap(), false);
    let t = Arc::new(Presentation::tensor(&[&plane, &jz]));
    let e = Engine::new(t.clone(), LaurentRing);
    let p = e.straighten(&Word::parse(&t, "y x 2:Z11").unwrap());
    assert_eq!(p.len(), 1);
    assert_eq!(p.terms.values().next().unwrap(), &LaurentScalar::q_pow(1));
}
