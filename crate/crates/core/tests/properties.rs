use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;

use qma_core::ncengine::checks::laurent_engine;
use qma_core::ncengine::{Engine, Letter, Poly, Word};
use qma_core::poissonleaf::{bracket_table, poisson_bracket, PoissonPoly};
use qma_core::qcoeff::{rat, specialize, CoeffRing, CycRing, LaurentRing, LaurentScalar};
use qma_core::rootdata::{AlgebraSpec, Family};
use qma_core::skewform::{defining_matrix, degree, determinant, skew_normal_form, SkewIntMatrix};

fn family() -> impl Strategy<Value = Family> {
    prop::sample::select(Family::NAMED.to_vec())
}

fn skew(dim: usize, entries: &[i64]) -> SkewIntMatrix {
    let mut rows = vec![vec![0i64; dim]; dim];
    let mut it = entries.iter();
    for i in 0..dim {
        for j in (i + 1)..dim {
            let v = *it.next().unwrap();
            rows[i][j] = v;
            rows[j][i] = -v;
        }
    }
    SkewIntMatrix::from_i64(&rows).unwrap()
}

/// Product of elementary row operations `r_i += c r_j` and swaps.
fn unimodular(dim: usize, ops: &[(usize, usize, i64)]) -> Vec<Vec<BigInt>> {
    let mut w: Vec<Vec<BigInt>> =
        (0..dim).map(|i| (0..dim).map(|j| BigInt::from((i == j) as i64)).collect()).collect();
    for (a, b, c) in ops {
        let (a, b) = (a % dim, b % dim);
        if a == b {
            continue;
        }
        if *c == 0 {
            w.swap(a, b);
        } else {
            let row_b = w[b].clone();
            for (x, y) in w[a].iter_mut().zip(row_b) {
                *x += y * c;
            }
        }
    }
    w
}

fn word(eng_len: usize, invertible: &dyn Fn(usize) -> bool, letters: &[(usize, i32)]) -> Word {
    let mut w = Word::new();
    for (g, p) in letters {
        let g = g % eng_len;
        let p = if invertible(g) { *p } else { p.abs().max(1) };
        w.push(g, p);
    }
    w
}

fn z_degree(eng: &Engine<LaurentRing>, p: &Poly<LaurentScalar>) -> Vec<i64> {
    let pres = eng.presentation();
    let mut out: Vec<i64> = p
        .terms
        .keys()
        .map(|m| m.0.iter().enumerate().filter(|(g, _)| !pres.is_invertible(*g)).map(|(_, e)| *e as i64).sum())
        .collect();
    out.dedup();
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn normal_form_invariant_under_congruence(
        dim in 2usize..7,
        entries in prop::collection::vec(-4i64..=4, 21),
        ops in prop::collection::vec((0usize..7, 0usize..7, -2i64..=2), 0..12),
    ) {
        let m = skew(dim, &entries);
        let w = unimodular(dim, &ops);
        let moved = SkewIntMatrix::new(m.congruence(&w)).unwrap();
        let (a, b) = (skew_normal_form(&m), skew_normal_form(&moved));
        prop_assert_eq!(&a.blocks, &b.blocks);
        prop_assert_eq!(a.zeros, b.zeros);
        for order in [3u32, 4, 6] {
            prop_assert_eq!(degree(&m, order).unwrap(), degree(&moved, order).unwrap());
        }
    }

    #[test]
    fn certificate_always_holds(dim in 1usize..8, entries in prop::collection::vec(-6i64..=6, 28)) {
        let m = skew(dim, &entries);
        let cf = skew_normal_form(&m);
        prop_assert_eq!(m.congruence(&cf.transform), cf.block_matrix());
        let det = determinant(&cf.transform);
        prop_assert!(det == BigInt::from(1) || det == BigInt::from(-1));
        for pair in cf.blocks.windows(2) {
            prop_assert!(&pair[1] % &pair[0] == BigInt::from(0));
        }
    }

    #[test]
    fn straightening_is_graded_and_associative(
        f in family(),
        n in 2usize..=3,
        left in prop::collection::vec((0usize..16, 1i32..=2), 1..3),
        right in prop::collection::vec((0usize..16, 1i32..=2), 1..3),
    ) {
        let spec = AlgebraSpec::named(f, n).unwrap();
        let eng = laurent_engine(&spec, false);
        let k = eng.presentation().len();
        let (u, v) = (word(k, &|_| false, &left), word(k, &|_| false, &right));
        let mut uv = u.clone();
        uv.0.extend(v.0.iter().cloned());
        let whole = eng.straighten(&uv);
        prop_assert_eq!(&whole, &eng.mul(&eng.straighten(&u), &eng.straighten(&v)));
        let total: i64 = uv.0.iter().map(|l| l.pow as i64).sum();
        if !whole.is_zero() {
            prop_assert_eq!(z_degree(&eng, &whole), vec![total]);
        }
    }

    #[test]
    fn specialization_commutes_with_straightening(
        f in family(),
        n in 2usize..=3,
        m in prop::sample::select(vec![3u32, 4, 5, 6]),
        letters in prop::collection::vec((0usize..16, 1i32..=2), 1..5),
    ) {
        let spec = AlgebraSpec::named(f, n).unwrap();
        let generic = laurent_engine(&spec, false);
        let ring = CycRing::new(m).unwrap();
        let root = Engine::new(Arc::new(generic.presentation().as_ref().clone()), ring);
        let w = word(generic.presentation().len(), &|_| false, &letters);
        prop_assert_eq!(generic.straighten(&w).specialize(&ring), root.straighten(&w));
    }

    #[test]
    fn extended_algebra_words_straighten(
        n in 2usize..=3,
        letters in prop::collection::vec((0usize..20, -2i32..=2), 1..6),
        cut in 0usize..6,
        insert in (0usize..6, 1usize..=5, 1i32..=3),
    ) {
        let spec = AlgebraSpec::standard(n).unwrap();
        let eng = laurent_engine(&spec, true);
        let pres = eng.presentation().clone();
        let letters: Vec<(usize, i32)> = letters.into_iter().filter(|(_, p)| *p != 0).collect();
        let w = word(pres.len(), &|g| pres.is_invertible(g), &letters);
        let p = eng.straighten(&w);
        let cut = cut.min(w.0.len());
        let (u, v) = (Word(w.0[..cut].to_vec()), Word(w.0[cut..].to_vec()));
        prop_assert_eq!(&p, &eng.mul(&eng.straighten(&u), &eng.straighten(&v)));
        // L_k^e L_k^{-e} spliced in anywhere changes nothing
        let (at, k, e) = insert;
        let mut spliced = w.clone();
        let at = at.min(spliced.0.len());
        let lk = pres.l(k.min(2 * n - 1));
        spliced.0.insert(at, Letter { gen: lk, pow: -e });
        spliced.0.insert(at, Letter { gen: lk, pow: e });
        prop_assert_eq!(eng.straighten(&spliced), p);
    }

    #[test]
    fn specialization_is_a_ring_map(
        a in prop::collection::vec((-4i64..=4, -3i64..=3), 0..4),
        b in prop::collection::vec((-4i64..=4, -3i64..=3), 0..4),
        m in 3u32..=8,
    ) {
        let lift = |t: &[(i64, i64)]| LaurentScalar::from_terms(t.iter().map(|(e, c)| (*e, rat(*c))));
        let (x, y) = (lift(&a), lift(&b));
        let ring = CycRing::new(m).unwrap();
        let prod = LaurentRing.mul(&x, &y);
        prop_assert_eq!(specialize(&prod, m).unwrap(), ring.mul(&specialize(&x, m).unwrap(), &specialize(&y, m).unwrap()));
        let mut sum = x.clone();
        LaurentRing.add_assign(&mut sum, &y);
        let mut s2 = specialize(&x, m).unwrap();
        ring.add_assign(&mut s2, &specialize(&y, m).unwrap());
        prop_assert_eq!(specialize(&sum, m).unwrap(), s2);
    }

    #[test]
    fn degree_divides_power_of_m(f in family(), n in 2usize..=4, m in 3u32..=7) {
        let d = degree(&defining_matrix(&AlgebraSpec::named(f, n).unwrap(), false), m).unwrap();
        let bound = num_bigint::BigUint::from(m).pow((n * n / 2) as u32);
        prop_assert!(bound % d == num_bigint::BigUint::from(0u32));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn brackets_antisymmetric_and_leibniz(
        f in family(),
        a in prop::collection::vec((prop::collection::vec(0i32..=2, 4), -3i64..=3), 1..3),
        b in prop::collection::vec((prop::collection::vec(0i32..=2, 4), -3i64..=3), 1..3),
        c in prop::collection::vec((prop::collection::vec(0i32..=1, 4), -3i64..=3), 1..3),
    ) {
        let table = bracket_table(&AlgebraSpec::named(f, 2).unwrap(), 3).unwrap();
        let poly = |t: &[(Vec<i32>, i64)]| {
            let mut p = PoissonPoly::zero(4);
            for (e, k) in t {
                p.add_term(e.clone(), rat(*k));
            }
            p
        };
        let (x, y, z) = (poly(&a), poly(&b), poly(&c));
        let xy = poisson_bracket(&table, &x, &y);
        prop_assert_eq!(&xy + &poisson_bracket(&table, &y, &x), PoissonPoly::zero(4));
        let lhs = poisson_bracket(&table, &x, &(&y * &z));
        let rhs = &(&xy * &z) + &(&y * &poisson_bracket(&table, &x, &z));
        prop_assert_eq!(lhs, rhs);
    }
}
