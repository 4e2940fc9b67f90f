//! The named families written in their own generators, with relations
//! transcribed directly (rather than derived from a modification vector).

use crate::ncengine::{Correction, GenKind, GenLabel, Presentation};
use crate::qcoeff::LaurentScalar;
use crate::rootdata::{index_pairs, Family};

fn z_labels(n: usize) -> Vec<GenLabel> {
    index_pairs(n)
        .into_iter()
        .map(|(i, j)| GenLabel { slot: 1, kind: GenKind::Z(i, j) })
        .collect()
}

fn idx(n: usize, (i, j): (usize, usize)) -> usize {
    (i - 1) * n + (j - 1)
}

/// Exchange exponent `h` and correction coefficient (if any) of the explicit
/// relation `z_a z_b = q^h z_b z_a + c z_{i,t} z_{s,j}` for `a < b` lexicographically.
pub fn explicit_relation(family: Family, a: (usize, usize), b: (usize, usize)) -> (i64, Option<LaurentScalar>) {
    assert!(a < b);
    let (i, j) = (a.0 as i64, a.1 as i64);
    let (s, t) = (b.0 as i64, b.1 as i64);
    let qq = LaurentScalar::q_minus_qinv;
    match family {
        Family::Standard | Family::Custom => {
            if i == s || j == t {
                (1, None)
            } else if t < j {
                (0, None)
            } else {
                (0, Some(qq()))
            }
        }
        Family::J0 => {
            if (s - i) * (t - j) <= 0 {
                (s + t - i - j, None)
            } else {
                // q^{1-t+j} J_a J_b = q^{s-i-1} J_b J_a + (q - q^{-1}) J_{it} J_{sj}
                (s - i - 1 - (1 - t + j), Some(qq().shift(-(1 - t + j))))
            }
        }
        Family::Jz => {
            if (s - i) * (t - j) <= 0 {
                (0, None)
            } else {
                (-2, Some(qq().shift(-1)))
            }
        }
        Family::Jn => {
            if s == i {
                // N_{i,t} N_{i,j} = q^{t-j-2} N_{i,j} N_{i,t}
                (-(t - j - 2), None)
            } else if t < j {
                (s - t - i + j - 2, None)
            } else if t == j {
                (s - i, None)
            } else {
                // q^{t-j-1} N_a N_b = q^{s-i-1} N_b N_a + (q - q^{-1}) N_{it} N_{sj}
                (s - i - 1 - (t - j - 1), Some(qq().shift(-(t - j - 1))))
            }
        }
        Family::Dipper => {
            // D_q(n): D_{ij}D_{st} = q D_{st}D_{ij} (i>s, j<=t);
            // D_{ij}D_{st} = D_{st}D_{ij} + (q-1) D_{sj}D_{it} (i>s, j>t); rows commute
            if i == s {
                (0, None)
            } else if t <= j {
                (-1, None)
            } else {
                (0, Some(LaurentScalar::from_terms([(0, crate::qcoeff::rat(1)), (1, crate::qcoeff::rat(-1))])))
            }
        }
    }
}

/// The family's algebra in its own generators (`D_q(n)` for `dipper`).
pub fn explicit_presentation(family: Family, n: usize) -> Presentation {
    let labels = z_labels(n);
    let mut p = Presentation::new(labels, vec![false; n * n]);
    let pairs = index_pairs(n);
    for (x, a) in pairs.iter().enumerate() {
        for b in pairs.iter().skip(x + 1) {
            let (h, corr) = explicit_relation(family, *a, *b);
            p.set_exchange(idx(n, *a), idx(n, *b), h);
            if let Some(c) = corr {
                p.add_correction(
                    idx(n, *a),
                    idx(n, *b),
                    Correction {
                        coeff: c,
                        first: idx(n, (a.0, b.1)),
                        second: idx(n, (b.0, a.1)),
                    },
                );
            }
        }
    }
    p
}

/// For `dipper`, the modified algebra realizes `D_{q^{-2}}(n)` with indices
/// transposed: `D_{i,j} ↦ Z̃_{j,i}`. Returns the image generator and the
/// exponent `k` of the parameter substitution `q ↦ q^k`.
pub fn realization(family: Family, n: usize) -> (Vec<usize>, i64) {
    let pairs = index_pairs(n);
    match family {
        Family::Dipper => (pairs.iter().map(|(i, j)| idx(n, (*j, *i))).collect(), -2),
        _ => ((0..n * n).collect(), 1),
    }
}
