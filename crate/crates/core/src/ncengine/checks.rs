//! Structural checks built on the engine: covariance, centrality and
//! exchange exponents of monomials.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{QmaError, Result};
use crate::qcoeff::{CoeffRing, CycRing, LaurentRing, LaurentScalar};
use crate::rootdata::AlgebraSpec;

use rayon::prelude::*;

use super::{Engine, GenKind, Poly, Presentation, Word};

/// Engine over ℚ[q, q⁻¹] for `M_q^℘(n)` (extended by the `L_k` if requested).
pub fn laurent_engine(spec: &AlgebraSpec, with_l: bool) -> Engine<LaurentRing> {
    Engine::new(Arc::new(Presentation::modified(spec, with_l)), LaurentRing)
}

/// Engine over ℚ(ζ_m).
pub fn cyc_engine(spec: &AlgebraSpec, with_l: bool, m: u32) -> Result<Engine<CycRing>> {
    Ok(Engine::new(Arc::new(Presentation::modified(spec, with_l)), CycRing::new(m)?))
}

/// Exponents `n_g` with `P z_g = q^{n_g} z_g P` for every `Z`-generator `g`.
pub fn covariance_check(
    eng: &Engine<LaurentRing>,
    p: &Poly<LaurentScalar>,
) -> Result<BTreeMap<(usize, usize), i64>> {
    if p.is_zero() {
        return Err(QmaError::ZeroInput);
    }
    let pres = eng.presentation();
    let mut out = BTreeMap::new();
    for g in 0..pres.len() {
        let (i, j) = match pres.label(g).kind {
            GenKind::Z(i, j) if pres.label(g).slot == 1 => (i, j),
            _ => continue,
        };
        let zg = eng.gen(g);
        let left = eng.mul(p, &zg);
        let right = eng.mul(&zg, p);
        let fail = || QmaError::NotCovariant(pres.label(g).to_string());
        let (mono, cr) = right.terms.iter().next().ok_or_else(fail)?;
        let cl = left.terms.get(mono).ok_or_else(fail)?;
        let k = cl.min_exp().ok_or_else(fail)? - cr.min_exp().ok_or_else(fail)?;
        let shifted = right.scale(&LaurentRing, &LaurentScalar::q_pow(k));
        if shifted != left {
            return Err(fail());
        }
        out.insert((i, j), k);
    }
    Ok(out)
}

/// True iff `P` commutes with every generator of the presentation.
pub fn central_check<R: CoeffRing>(eng: &Engine<R>, p: &Poly<R::Elem>) -> bool {
    (0..eng.presentation().len()).all(|g| eng.commutator(p, &eng.gen(g)).is_zero())
}

/// Generators failing to commute with `P`.
pub fn central_failures<R: CoeffRing>(eng: &Engine<R>, p: &Poly<R::Elem>) -> Vec<usize> {
    (0..eng.presentation().len())
        .filter(|g| !eng.commutator(p, &eng.gen(*g)).is_zero())
        .collect()
}

/// `E` with `x_{s,t} x^B = q^E x^B x_{s,t}` in the quasipolynomial algebra.
pub fn monomial_exchange_exponent(spec: &AlgebraSpec, b: &[Vec<i64>], st: (usize, usize)) -> Result<i64> {
    let mut e = 0;
    for (i, row) in b.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            let ij = (i + 1, j + 1);
            if *v != 0 && ij != st {
                e += v * spec.exchange_exponent(st, ij)?;
            }
        }
    }
    Ok(e)
}

/// Overlap `z_a z_b z_c` with `a > b > c` reduced on the left pair first and
/// on the right pair first; both results in normal form.
pub fn overlap_resolutions<R: CoeffRing>(
    eng: &Engine<R>,
    a: usize,
    b: usize,
    c: usize,
) -> (Poly<R::Elem>, Poly<R::Elem>) {
    let pres = eng.presentation();
    let ring = eng.ring();
    let reduce = |x: usize, y: usize, left: &[usize], right: &[usize]| {
        let (coef, corr) = pres.swap(x, y);
        let mut terms = vec![(ring.from_laurent(&coef), [left, &[y, x], right].concat())];
        for (k, u, v) in corr {
            terms.push((ring.from_laurent(&k), [left, &[u, v], right].concat()));
        }
        let words: Vec<_> = terms.into_iter().map(|(k, w)| (k, Word::from_gens(&w))).collect();
        eng.eval_words(&words)
    };
    (reduce(a, b, &[], &[c]), reduce(b, c, &[a], &[]))
}

/// Descending triples whose overlap does not resolve.
pub fn diamond_failures<R: CoeffRing>(eng: &Engine<R>) -> Vec<(usize, usize, usize)> {
    let k = eng.presentation().len();
    let triples: Vec<_> = (0..k)
        .flat_map(|a| (0..a).flat_map(move |b| (0..b).map(move |c| (a, b, c))))
        .collect();
    triples
        .into_par_iter()
        .filter(|(a, b, c)| {
            let (l, r) = overlap_resolutions(eng, *a, *b, *c);
            l != r
        })
        .collect()
}
