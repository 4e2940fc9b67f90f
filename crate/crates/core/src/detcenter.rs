//! Quantum minors of the modified algebras, Laplace expansions, central
//! elements at roots of unity and the power identity for `det_q`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::Serialize;

use crate::error::{QmaError, Result};
use crate::ncengine::checks::{central_check, cyc_engine, laurent_engine, monomial_exchange_exponent};
use crate::ncengine::{Engine, Mono, Poly, Word};
use crate::qcoeff::{rat, CoeffRing, LaurentRing, LaurentScalar};
use crate::rootdata::{rank_of, AlgebraSpec, Family, RootSupport, Weight};
use crate::skewform::m_prime;

/// Row and column index sets of a minor, both sorted and 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MinorSpec {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl MinorSpec {
    pub fn new(mut rows: Vec<usize>, mut cols: Vec<usize>) -> Result<Self> {
        rows.sort_unstable();
        cols.sort_unstable();
        rows.dedup();
        cols.dedup();
        if rows.len() != cols.len() {
            return Err(QmaError::DimensionMismatch { expected: rows.len(), got: cols.len() });
        }
        Ok(MinorSpec { rows, cols })
    }

    pub fn range(rows: std::ops::RangeInclusive<usize>, cols: std::ops::RangeInclusive<usize>) -> Result<Self> {
        Self::new(rows.collect(), cols.collect())
    }

    pub fn full(n: usize) -> Self {
        MinorSpec { rows: (1..=n).collect(), cols: (1..=n).collect() }
    }

    /// `A(i, j)`: row `i` and column `j` removed.
    pub fn cofactor(n: usize, i: usize, j: usize) -> Self {
        MinorSpec {
            rows: (1..=n).filter(|r| *r != i).collect(),
            cols: (1..=n).filter(|c| *c != j).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    fn check(&self, n: usize) -> Result<()> {
        for x in self.rows.iter().chain(&self.cols) {
            if *x == 0 || *x > n {
                return Err(QmaError::IndexOutOfRange(*x, *x, n));
            }
        }
        Ok(())
    }

    /// The bijections `I → J` as column lists, with their inversion counts.
    pub fn bijections(&self) -> Vec<(Vec<usize>, usize)> {
        permutations(self.size())
            .into_iter()
            .map(|p| {
                let inv = inversions(&p);
                (p.iter().map(|k| self.cols[*k]).collect(), inv)
            })
            .collect()
    }
}

pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                rec(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

pub fn inversions(p: &[usize]) -> usize {
    (0..p.len()).map(|a| (a + 1..p.len()).filter(|b| p[a] > p[*b]).count()).sum()
}

/// Root-lattice coordinates of the weight of `det_q^℘(I, J)`.
pub fn minor_weight(n: usize, minor: &MinorSpec) -> Vec<i64> {
    let mut w = vec![0i64; rank_of(n)];
    for (i, j) in minor.rows.iter().zip(&minor.cols) {
        let alpha = RootSupport::of(n, *i, *j);
        for (node, c) in w.iter_mut().enumerate() {
            if alpha.contains(node) {
                *c += 1;
            }
        }
    }
    w
}

/// `(w | λ)` for a root-lattice vector `w`.
pub fn pair_root_weight(w: &[i64], lam: &Weight) -> i64 {
    w.iter().zip(&lam.0).map(|(a, b)| a * b).sum()
}

fn shift_sum(spec: &AlgebraSpec, rows: &[usize], cols: &[usize]) -> Weight {
    let mut w = Weight::zero(spec.n);
    for r in rows {
        w = w.add(&spec.wp.zetas[r - 1]);
    }
    for c in cols {
        w = w.add(&spec.wp.xis[c - 1]);
    }
    w
}

/// `e_σ = Σ_{r<s} (α_{i_s,σ(i_s)} | ζ_{i_r} + ξ_{σ(i_r)})`; the `σ` term of
/// the modified minor carries `q^{-e_σ}`.
pub fn modified_exponent(spec: &AlgebraSpec, rows: &[usize], image: &[usize]) -> i64 {
    let mut e = 0;
    for s in 0..rows.len() {
        for r in 0..s {
            e += spec.pair_shift((rows[s], image[s]), (rows[r], image[r]));
        }
    }
    e
}

fn signed_q_pow<R: CoeffRing>(ring: &R, sign_exp: usize, q_exp: i64) -> R::Elem {
    let c = ring.q_pow(q_exp);
    if sign_exp % 2 == 1 {
        ring.neg(&c)
    } else {
        c
    }
}

fn ordered_product<R: CoeffRing>(eng: &Engine<R>, rows: &[usize], image: &[usize]) -> Poly<R::Elem> {
    let pres = eng.presentation();
    let gens: Vec<usize> = rows.iter().zip(image).map(|(i, j)| pres.z(*i, *j)).collect();
    eng.straighten(&Word::from_gens(&gens))
}

/// The modified minor `det_q^℘(I, J) = det_q(I, J) · Π_{i∈I, j∈J} L_{ζ_i} L_{ξ_j}`,
/// written in the `Z̃`.
pub fn qdet<R: CoeffRing>(eng: &Engine<R>, spec: &AlgebraSpec, minor: &MinorSpec) -> Result<Poly<R::Elem>> {
    minor.check(spec.n)?;
    let ring = eng.ring();
    let mut out = eng.zero();
    for (image, l) in minor.bijections() {
        let e = modified_exponent(spec, &minor.rows, &image);
        let c = signed_q_pow(ring, l, l as i64 - e);
        out.add_scaled(ring, &ordered_product(eng, &minor.rows, &image), &c);
    }
    Ok(out)
}

/// `Σ_σ (-q)^{l(σ)} Z̃_{i_1,σ(i_1)} ⋯ Z̃_{i_p,σ(i_p)}` without the modification factors.
pub fn qdet_plain<R: CoeffRing>(eng: &Engine<R>, minor: &MinorSpec) -> Result<Poly<R::Elem>> {
    minor.check(eng.presentation().n())?;
    let ring = eng.ring();
    let mut out = eng.zero();
    for (image, l) in minor.bijections() {
        let c = signed_q_pow(ring, l, l as i64);
        out.add_scaled(ring, &ordered_product(eng, &minor.rows, &image), &c);
    }
    Ok(out)
}

/// Applies the algebra map sending generator `g` to generator `map(g)`,
/// keeping factor order.
pub fn apply_generator_map<R: CoeffRing>(
    eng: &Engine<R>,
    p: &Poly<R::Elem>,
    map: &dyn Fn(usize) -> usize,
) -> Poly<R::Elem> {
    let mut out = eng.zero();
    for (mono, c) in &p.terms {
        let mut w = Word::new();
        for (g, e) in mono.letters() {
            w.push(map(g), e);
        }
        out.add_scaled(eng.ring(), &eng.straighten(&w), c);
    }
    out
}

/// `M_{i,j} ↦ M_{j,i}`.
pub fn transpose_map<R: CoeffRing>(eng: &Engine<R>) -> impl Fn(usize) -> usize + '_ {
    let pres = eng.presentation().clone();
    move |g| match pres.label(g).kind {
        crate::ncengine::GenKind::Z(i, j) => pres.z(j, i),
        _ => g,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LaplaceMode {
    Row,
    Column,
}

#[derive(Clone, Debug, Serialize)]
pub struct LaplaceReport {
    pub pass: bool,
    /// Solved exponents keyed `left.j` / `right.j`.
    pub exponents: BTreeMap<String, i64>,
    /// Exponents predicted from the weights of the two factors.
    pub predicted: BTreeMap<String, i64>,
    /// Solved and predicted exponents agree (up to one common shift when `i ≠ k`).
    pub matches_weight_formula: bool,
}

struct ExpansionTerm {
    sign_exp: i64,
    first: Factor,
    second: Factor,
}

enum Factor {
    Gen(usize, usize),
    Minor(MinorSpec),
}

impl Factor {
    fn poly(&self, eng: &Engine<LaurentRing>, spec: &AlgebraSpec) -> Result<Poly<LaurentScalar>> {
        match self {
            Factor::Gen(i, j) => Ok(eng.z(*i, *j)),
            Factor::Minor(mi) => qdet(eng, spec, mi),
        }
    }

    fn weight(&self, n: usize) -> Vec<i64> {
        match self {
            Factor::Gen(i, j) => minor_weight(n, &MinorSpec { rows: vec![*i], cols: vec![*j] }),
            Factor::Minor(mi) => minor_weight(n, mi),
        }
    }

    fn shift(&self, spec: &AlgebraSpec) -> Weight {
        match self {
            Factor::Gen(i, j) => spec.shift(*i, *j),
            Factor::Minor(mi) => shift_sum(spec, &mi.rows, &mi.cols),
        }
    }
}

fn expansion(n: usize, mode: LaplaceMode, left: bool, i: usize, k: usize) -> Vec<ExpansionTerm> {
    (1..=n)
        .map(|j| {
            let (ji, jk) = (j as i64, k as i64);
            let ii = i as i64;
            match (mode, left) {
                (LaplaceMode::Row, true) => ExpansionTerm {
                    sign_exp: ji - jk,
                    first: Factor::Gen(i, j),
                    second: Factor::Minor(MinorSpec::cofactor(n, k, j)),
                },
                (LaplaceMode::Row, false) => ExpansionTerm {
                    sign_exp: ii - ji,
                    first: Factor::Minor(MinorSpec::cofactor(n, i, j)),
                    second: Factor::Gen(k, j),
                },
                (LaplaceMode::Column, true) => ExpansionTerm {
                    sign_exp: ji - jk,
                    first: Factor::Gen(j, i),
                    second: Factor::Minor(MinorSpec::cofactor(n, j, k)),
                },
                (LaplaceMode::Column, false) => ExpansionTerm {
                    sign_exp: ii - ji,
                    first: Factor::Minor(MinorSpec::cofactor(n, j, i)),
                    second: Factor::Gen(j, k),
                },
            }
        })
        .collect()
}

fn neg_q_pow(k: i64) -> LaurentScalar {
    let c = LaurentScalar::q_pow(k);
    if k.rem_euclid(2) == 1 {
        -c
    } else {
        c
    }
}

/// Finds exponents `e_j` with `Σ_j q^{e_j} T_j = target`.
fn solve_exponents(terms: &[Poly<LaurentScalar>], target: &Poly<LaurentScalar>) -> Result<Vec<i64>> {
    let ring = LaurentRing;
    // node 0 is -target (fixed exponent 0) when the target is nonzero
    let mut nodes: Vec<Poly<LaurentScalar>> = Vec::new();
    let anchored = !target.is_zero();
    nodes.push(target.neg(&ring));
    nodes.extend(terms.iter().cloned());
    let monos: BTreeSet<Mono> = nodes.iter().flat_map(|p| p.terms.keys().cloned()).collect();
    let mut assigned: Vec<Option<i64>> = vec![None; nodes.len()];
    assigned[0] = Some(0);
    if !anchored {
        assigned[1] = Some(0);
    }
    // a monomial shared by assigned nodes and exactly one unassigned node fixes the latter
    let mut progress = true;
    while progress {
        progress = false;
        for mono in &monos {
            let present: Vec<usize> = (0..nodes.len()).filter(|x| nodes[*x].coeff(mono).is_some()).collect();
            let open: Vec<usize> = present.iter().copied().filter(|x| assigned[*x].is_none()).collect();
            if open.len() != 1 {
                continue;
            }
            let x = open[0];
            let mut known = LaurentScalar::zero();
            for y in &present {
                if let Some(e) = assigned[*y] {
                    known.add_assign_ref(&nodes[*y].coeff(mono).expect("present").shift(e));
                }
            }
            let cx = nodes[x].coeff(mono).expect("present");
            if known.is_zero() {
                continue;
            }
            let d = known.min_exp().expect("nonzero") - cx.min_exp().expect("nonzero");
            if cx.shift(d) == -&known {
                assigned[x] = Some(d);
                progress = true;
            }
        }
    }
    let check = |ex: &[i64]| {
        let mut acc = Poly::zero();
        for (t, e) in terms.iter().zip(ex) {
            acc.add_scaled(&ring, t, &LaurentScalar::q_pow(*e));
        }
        acc == *target
    };
    if assigned.iter().all(|a| a.is_some()) {
        let ex: Vec<i64> = assigned[1..].iter().map(|a| a.expect("assigned")).collect();
        if check(&ex) {
            return Ok(ex);
        }
    }
    // exhaustive search over a window for the undetermined exponents
    let free: Vec<usize> = (1..nodes.len()).filter(|x| assigned[*x].is_none()).collect();
    if free.len() > 3 {
        return Err(QmaError::Unsolvable);
    }
    let window = 12i64;
    let total = (2 * window + 1).pow(free.len() as u32);
    for code in 0..total {
        let mut ex: Vec<i64> = assigned[1..].iter().map(|a| a.unwrap_or(0)).collect();
        let mut c = code;
        for f in &free {
            ex[f - 1] = c % (2 * window + 1) - window;
            c /= 2 * window + 1;
        }
        if check(&ex) {
            return Ok(ex);
        }
    }
    Err(QmaError::Unsolvable)
}

/// Checks the two Laplace expansions of the given mode. For a standard spec the
/// exponents are all zero; otherwise they are solved from normal forms.
pub fn laplace_check(spec: &AlgebraSpec, mode: LaplaceMode, i: usize, k: usize) -> Result<LaplaceReport> {
    let n = spec.n;
    for x in [i, k] {
        if x == 0 || x > n {
            return Err(QmaError::IndexOutOfRange(i, k, n));
        }
    }
    let eng = laurent_engine(spec, false);
    let det = qdet(&eng, spec, &MinorSpec::full(n))?;
    let target = if i == k { det } else { eng.zero() };
    let mut exponents = BTreeMap::new();
    let mut predicted = BTreeMap::new();
    let mut pass = true;
    let mut matches = true;
    for left in [true, false] {
        let side = if left { "left" } else { "right" };
        let terms = expansion(n, mode, left, i, k);
        let mut polys = Vec::new();
        let mut pred = Vec::new();
        for t in &terms {
            let prod = eng.mul(&t.first.poly(&eng, spec)?, &t.second.poly(&eng, spec)?);
            polys.push(prod.scale(&LaurentRing, &neg_q_pow(t.sign_exp)));
            pred.push(-pair_root_weight(&t.second.weight(n), &t.first.shift(spec)));
        }
        let solved = match solve_exponents(&polys, &target) {
            Ok(s) => s,
            Err(QmaError::Unsolvable) => {
                pass = false;
                continue;
            }
            Err(e) => return Err(e),
        };
        let offset = if i == k { 0 } else { solved[0] - pred[0] };
        if solved.iter().zip(&pred).any(|(s, p)| *s != p + offset) {
            matches = false;
        }
        for (j, (s, p)) in solved.iter().zip(&pred).enumerate() {
            exponents.insert(format!("{}.{}", side, j + 1), *s);
            predicted.insert(format!("{}.{}", side, j + 1), *p);
        }
        if spec.family == Family::Standard && solved.iter().any(|s| *s != 0) {
            pass = false;
        }
    }
    Ok(LaplaceReport { pass, exponents, predicted, matches_weight_formula: pass && matches })
}

/// A labelled element of the engine's algebra.
pub type Labelled<C> = (String, Poly<C>);

/// How the `ψ_j` factors of `Ω(n)` are read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OmegaReading {
    /// `ψ_j = φ*_j`
    PhiStar,
    /// `ψ_j = φ_j`
    Phi,
}

fn gen_power<R: CoeffRing>(eng: &Engine<R>, i: usize, j: usize, e: usize) -> Poly<R::Elem> {
    eng.gen_pow(eng.presentation().z(i, j), e as i32)
}

fn minor_power<R: CoeffRing>(
    eng: &Engine<R>,
    spec: &AlgebraSpec,
    minor: &MinorSpec,
    e: usize,
) -> Result<Poly<R::Elem>> {
    if minor.size() == 0 {
        return Ok(eng.one());
    }
    eng.power(&qdet(eng, spec, minor)?, e as i32)
}

/// Least `s ≥ 1` with `s·m - n + 1 ≥ 0`.
fn least_multiple(n: usize, m: u32) -> usize {
    let m = m as usize;
    let mut s = 1;
    while s * m + 1 < n {
        s += 1;
    }
    s
}

/// The listed generators of the center at a primitive `m`-th root of unity,
/// built in `eng` (an engine for `spec`).
pub fn center_generators<R: CoeffRing>(
    eng: &Engine<R>,
    spec: &AlgebraSpec,
    m: u32,
    omega: OmegaReading,
) -> Result<Vec<Labelled<R::Elem>>> {
    if m < 3 {
        return Err(QmaError::InvalidRootOrder(m));
    }
    let n = spec.n;
    let mu = m as usize;
    let mut out: Vec<Labelled<R::Elem>> = Vec::new();
    match spec.family {
        Family::J0 => {
            let base = least_multiple(n, m) * mu;
            for (i, j) in spec.pairs() {
                if m % 2 == 1 || i == j {
                    out.push((format!("J{}{}^{}", i, j, m), gen_power(eng, i, j, mu)));
                } else if i <= j {
                    let h = m_prime(m) as usize;
                    let p = eng.mul(&gen_power(eng, i, j, h), &gen_power(eng, j, i, h));
                    out.push((format!("J{}{}^{}·J{}{}^{}", i, j, h, j, i, h), p));
                }
            }
            for k in 2..=n {
                let jk = eng.mul(
                    &qdet(eng, spec, &MinorSpec::range(1..=k, n - k + 1..=n)?)?,
                    &qdet(eng, spec, &MinorSpec::range(k..=n, 1..=n - k + 1)?)?,
                );
                let e = base + 1 - n;
                out.push((format!("J({})·J1{}^{}", k, n, e), eng.mul(&jk, &gen_power(eng, 1, n, e))));
            }
            let e = base + 2 - n;
            let det = qdet(eng, spec, &MinorSpec::full(n))?;
            out.push((format!("J1{}^{}·J(1)", n, e), eng.mul(&gen_power(eng, 1, n, e), &det)));
            for r in 1..=mu {
                out.push((
                    format!("J1{}^{}·J{}1^{}", n, mu - r, n, r),
                    eng.mul(&gen_power(eng, 1, n, mu - r), &gen_power(eng, n, 1, r)),
                ));
            }
        }
        Family::Jz => {
            for (i, j) in spec.pairs() {
                out.push((format!("M{}{}^{}", i, j, m), gen_power(eng, i, j, mu)));
            }
            out.push((format!("M1{}", n), eng.z(1, n)));
            out.push((format!("M{}1", n), eng.z(n, 1)));
            let tau = transpose_map(eng);
            for k in 2..n {
                let mk = MinorSpec::range(n - k + 1..=n, 1..=k)?;
                let mk2 = MinorSpec::range(k..=n, 1..=n - k + 1)?;
                for r in 1..mu {
                    let a = minor_power(eng, spec, &mk, r)?;
                    let b = apply_generator_map(eng, &minor_power(eng, spec, &mk2, r)?, &tau);
                    let d = minor_power(eng, spec, &MinorSpec::full(n), mu - r)?;
                    out.push((format!("M({})^{}·τ(M({})^{})·det^{}", k, r, n - k + 1, r, mu - r), eng.mul_all(&[&a, &b, &d])));
                }
            }
        }
        Family::Jn => {
            for (i, j) in spec.pairs() {
                out.push((format!("N{}{}^{}", i, j, m), gen_power(eng, i, j, mu)));
            }
            if n % 2 == 1 {
                out.push(("Ω".to_string(), omega_element(eng, spec, m, omega)?));
            }
        }
        _ => return Err(QmaError::UnsupportedFamily(spec.family.to_string())),
    }
    Ok(out)
}

/// `Ω(n) = Π_i φ_i^{a_i} Π_{j≥2} ψ_j^{a_{n-j+1}}`.
pub fn omega_element<R: CoeffRing>(
    eng: &Engine<R>,
    spec: &AlgebraSpec,
    m: u32,
    reading: OmegaReading,
) -> Result<Poly<R::Elem>> {
    let n = spec.n;
    let a = |i: usize| -> usize {
        if i == 1 {
            n.saturating_sub(3)
        } else if i % 2 == 1 {
            n - 2
        } else {
            (n - 2) * (m as usize - 1)
        }
    };
    let phi = |t: usize| MinorSpec::range(t + 1..=n, 1..=n - t);
    let phi_star = |t: usize| MinorSpec::range(1..=t, n - t + 1..=n);
    let mut acc = eng.one();
    for i in 1..=n {
        acc = eng.mul(&acc, &minor_power(eng, spec, &phi(i)?, a(i))?);
    }
    for j in 2..=n {
        let mi = match reading {
            OmegaReading::PhiStar => phi_star(j)?,
            OmegaReading::Phi => phi(j)?,
        };
        acc = eng.mul(&acc, &minor_power(eng, spec, &mi, a(n - j + 1))?);
    }
    Ok(acc)
}

/// Centrality of each element at `ζ_m`.
pub fn center_certify<R: CoeffRing>(eng: &Engine<R>, elements: &[Labelled<R::Elem>]) -> Vec<(String, bool)> {
    use rayon::prelude::*;
    elements.par_iter().map(|(l, p)| (l.clone(), central_check(eng, p))).collect()
}

/// Builds and certifies the listed center generators of a named family.
pub fn certify_family_center(family: Family, n: usize, m: u32) -> Result<Vec<(String, bool)>> {
    let spec = AlgebraSpec::named(family, n)?;
    let eng = cyc_engine(&spec, false, m)?;
    let gens = center_generators(&eng, &spec, m, OmegaReading::PhiStar)?;
    Ok(center_certify(&eng, &gens))
}

/// How the even-`m` quasipolynomial generators `x_{1,n}^e X(j)` are read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuasiReading {
    /// Exponents `n-1` and `n-2` for even `m`.
    Literal,
    /// Exponents `s·m - n + 1` and `s·m - n + 2` for both parities.
    Uniform,
}

/// `X(1) = x_{11} ⋯ x_{nn}` and `X(j) = x_{1,j} ⋯ x_{n-j+1,n} x_{n-j+1,1} ⋯ x_{n,j}`
/// as exponent matrices.
pub fn x_diagonal(n: usize, j: usize) -> Vec<Vec<i64>> {
    let mut b = vec![vec![0i64; n]; n];
    if j == 1 {
        for i in 0..n {
            b[i][i] += 1;
        }
        return b;
    }
    for r in 0..=(n - j) {
        b[r][j - 1 + r] += 1;
    }
    for r in 0..j {
        b[n - j + r][r] += 1;
    }
    b
}

/// Exponent matrices of the listed center generators of the quasipolynomial
/// algebra associated with `J⁰_q(n)`.
pub fn quasipolynomial_center_j0(n: usize, m: u32, reading: QuasiReading) -> Vec<(String, Vec<Vec<i64>>)> {
    let mi = m as i64;
    let mut out = Vec::new();
    let unit = |i: usize, j: usize, e: i64| {
        let mut b = vec![vec![0i64; n]; n];
        b[i - 1][j - 1] += e;
        b
    };
    let add = |a: &Vec<Vec<i64>>, b: &Vec<Vec<i64>>| -> Vec<Vec<i64>> {
        a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(u, v)| u + v).collect()).collect()
    };
    for i in 1..=n {
        for j in 1..=n {
            if m % 2 == 1 {
                out.push((format!("x{}{}^{}", i, j, m), unit(i, j, mi)));
            } else if i <= j {
                let h = m_prime(m) as i64;
                out.push((format!("x{}{}^{}x{}{}^{}", i, j, h, j, i, h), add(&unit(i, j, h), &unit(j, i, h))));
            }
        }
    }
    for r in 1..mi {
        out.push((format!("x1{}^{}x{}1^{}", n, mi - r, n, r), add(&unit(1, n, mi - r), &unit(n, 1, r))));
    }
    let s = (least_multiple(n, m) as i64) * mi;
    let ni = n as i64;
    let (ej, e1) = match (reading, m % 2) {
        (QuasiReading::Literal, 0) => (ni - 1, ni - 2),
        _ => (s - ni + 1, s - ni + 2),
    };
    for j in 2..=n {
        out.push((format!("x1{}^{}X({})", n, ej, j), add(&unit(1, n, ej), &x_diagonal(n, j))));
    }
    out.push((format!("x1{}^{}X(1)", n, e1), add(&unit(1, n, e1), &x_diagonal(n, 1))));
    out
}

/// Each exponent matrix has exchange exponent `≡ 0 mod m` against every generator.
pub fn quasipolynomial_central(spec: &AlgebraSpec, b: &[Vec<i64>], m: u32) -> Result<bool> {
    for st in spec.pairs() {
        if monomial_exchange_exponent(spec, b, st)?.rem_euclid(m as i64) != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(n-2)A - I` with `a_{st} = 1` for even `s+t` and `m-1` otherwise.
pub fn jn_quasipolynomial_exponents(n: usize, m: u32) -> Vec<Vec<i64>> {
    let ni = n as i64;
    (1..=n)
        .map(|s| {
            (1..=n)
                .map(|t| {
                    let a = if (s + t) % 2 == 0 { 1 } else { m as i64 - 1 };
                    (ni - 2) * a - i64::from(s == t)
                })
                .collect()
        })
        .collect()
}

/// Whether a generator permutation respects every defining relation; with
/// `reverse` the factors of each product are swapped (anti-homomorphism).
pub fn generator_map_preserves_relations<R: CoeffRing>(
    eng: &Engine<R>,
    map: &dyn Fn(usize) -> usize,
    reverse: bool,
) -> bool {
    let pres = eng.presentation().clone();
    pres.relations().iter().all(|rel| {
        let mut acc = eng.zero();
        for (c, x, y) in &rel.terms {
            let (a, b) = if reverse { (map(*y), map(*x)) } else { (map(*x), map(*y)) };
            let prod = eng.straighten(&Word::from_gens(&[a, b]));
            acc.add_scaled(eng.ring(), &prod, &eng.ring().from_laurent(c));
        }
        acc.is_zero()
    })
}

/// `Σ_σ sign(σ) Π_r Z_{r,σ(r)}^m` in the standard algebra.
fn det_of_powers<R: CoeffRing>(eng: &Engine<R>, n: usize, m: u32) -> Poly<R::Elem> {
    let ring = eng.ring();
    let mut out = eng.zero();
    for p in permutations(n) {
        let mut w = Word::new();
        for (r, c) in p.iter().enumerate() {
            w.push(eng.presentation().z(r + 1, c + 1), m as i32);
        }
        let sign = if inversions(&p) % 2 == 1 { ring.from_rational(&rat(-1)) } else { ring.one() };
        out.add_scaled(ring, &eng.straighten(&w), &sign);
    }
    out
}

/// `det_q^m = det(Z_{i,j}^m)` in `M_q(n)` at `ζ_m`.
pub fn qprop_check(n: usize, m: u32) -> Result<bool> {
    let spec = AlgebraSpec::standard(n)?;
    let eng = cyc_engine(&spec, false, m)?;
    let det = qdet(&eng, &spec, &MinorSpec::full(n))?;
    Ok(eng.power(&det, m as i32)? == det_of_powers(&eng, n, m))
}

/// The same identity over ℚ[q, q⁻¹]; expected to fail for `n ≥ 2`.
pub fn qprop_generic(n: usize, m: u32) -> Result<bool> {
    let spec = AlgebraSpec::standard(n)?;
    let eng = laurent_engine(&spec, false);
    let det = qdet(&eng, &spec, &MinorSpec::full(n))?;
    Ok(eng.power(&det, m as i32)? == det_of_powers(&eng, n, m))
}

/// `det_q^℘ Π L_{-ζ_i} L_{-ξ_j}` rebuilt from `Z_{i,j} = Z̃_{i,j} L_{-ζ_i-ξ_j}` inside
/// the algebra extended by the `L_k`; used to cross-check [`qdet`].
pub fn qdet_via_l<R: CoeffRing>(eng: &Engine<R>, spec: &AlgebraSpec, minor: &MinorSpec) -> Result<Poly<R::Elem>> {
    minor.check(spec.n)?;
    let pres = eng.presentation().clone();
    let l_mono = |w: &Weight| -> Poly<R::Elem> {
        let mut mono = Mono::one(pres.len());
        for (k, e) in w.0.iter().enumerate() {
            mono.0[pres.l(k + 1)] = *e as i32;
        }
        Poly::term(mono, eng.ring().one())
    };
    let ring = eng.ring();
    let mut det = eng.zero();
    for (image, l) in minor.bijections() {
        let mut acc = eng.one();
        for (i, j) in minor.rows.iter().zip(&image) {
            acc = eng.mul(&acc, &eng.z(*i, *j));
            acc = eng.mul(&acc, &l_mono(&spec.shift(*i, *j).neg()));
        }
        det.add_scaled(ring, &acc, &signed_q_pow(ring, l, l as i64));
    }
    Ok(eng.mul(&det, &l_mono(&shift_sum(spec, &minor.rows, &minor.cols))))
}

/// True when `p` is a nonzero scalar multiple of `q`.
pub fn proportional(p: &Poly<LaurentScalar>, q: &Poly<LaurentScalar>) -> bool {
    let (mono, cp) = match p.terms.iter().next() {
        Some(t) => t,
        None => return q.is_zero(),
    };
    let cq = match q.coeff(mono) {
        Some(c) => c,
        None => return false,
    };
    match (cp.as_monomial(), cq.as_monomial()) {
        (Some((ep, rp)), Some((eq, rq))) if !rq.is_zero() => {
            let ratio = LaurentScalar::monomial(ep - eq, rp / rq);
            q.scale(&LaurentRing, &ratio) == *p
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncengine::poly_to_string;

    #[test]
    fn det_two_by_two() {
        let spec = AlgebraSpec::standard(2).unwrap();
        let eng = laurent_engine(&spec, false);
        let d = qdet(&eng, &spec, &MinorSpec::full(2)).unwrap();
        let pres = eng.presentation();
        let w = |t: &str| Word::parse(pres, t).unwrap();
        let expect = eng.eval_words(&[
            (LaurentScalar::one(), w("Z11 Z22")),
            (-LaurentScalar::q_pow(1), w("Z12 Z21")),
        ]);
        assert_eq!(d, expect, "{}", poly_to_string(pres, &d));
    }

    #[test]
    fn single_entry_minor() {
        let spec = AlgebraSpec::named(Family::J0, 3).unwrap();
        let eng = laurent_engine(&spec, false);
        let d = qdet(&eng, &spec, &MinorSpec::new(vec![2], vec![3]).unwrap()).unwrap();
        assert_eq!(d, eng.z(2, 3));
    }

    #[test]
    fn minor_weights() {
        assert_eq!(minor_weight(2, &MinorSpec::full(2)), vec![2, 1, 1]);
        assert_eq!(least_multiple(3, 3), 1);
        assert_eq!(least_multiple(6, 3), 2);
    }

    #[test]
    fn x_diagonals() {
        assert_eq!(x_diagonal(2, 2), vec![vec![1, 1], vec![0, 1]]);
        assert_eq!(x_diagonal(3, 1), vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(x_diagonal(3, 2), vec![vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]]);
        assert_eq!(x_diagonal(4, 3), vec![vec![0, 0, 1, 0], vec![1, 0, 0, 1], vec![0, 1, 0, 0], vec![0, 0, 1, 0]]);
    }
}
