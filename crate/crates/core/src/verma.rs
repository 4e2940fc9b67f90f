//! Finite-dimensional highest-weight modules with respect to the opposite
//! diagonal, as exact matrices over ℚ(ζ_m).
//!
//! Generators `Z̃_{i,j}` fall into three zones: raising (`i + j <= n`),
//! diagonal (`i + j = n + 1`) and lowering (`i + j >= n + 2`). Ordering the
//! generators by zone gives a PBW basis `R·D·Lo`, so `g · R^b · v` is read off
//! the normal form of `g · R^b`: lowering letters kill `v`, diagonal letters
//! act by their weights, and the raising part indexes the basis.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{QmaError, Result};
use crate::linalg::{EchelonBasis, Field, Fp};
use crate::ncengine::{Engine, GenKind, Mono, Poly, Presentation};
use crate::qcoeff::{CoeffRing, CycRing, CycScalar};
use crate::rootdata::{AlgebraSpec, Family};
use crate::skewform::{m_prime, satisfies_antidiagonal_commutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Zone {
    Raising,
    Diagonal,
    Lowering,
}

pub fn zone(n: usize, i: usize, j: usize) -> Zone {
    match (i + j).cmp(&(n + 1)) {
        std::cmp::Ordering::Less => Zone::Raising,
        std::cmp::Ordering::Equal => Zone::Diagonal,
        std::cmp::Ordering::Greater => Zone::Lowering,
    }
}

/// Raising generators in zone order.
pub fn raising_generators(n: usize) -> Vec<(usize, usize)> {
    zone_pairs(n).into_iter().filter(|(i, j)| zone(n, *i, *j) == Zone::Raising).collect()
}

fn zone_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut pairs: Vec<_> = (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).collect();
    pairs.sort_by_key(|(i, j)| (i + j, *i));
    pairs
}

/// `M_q^℘(n)` with generators sorted by `(i + j, i)`.
pub fn zone_presentation(spec: &AlgebraSpec) -> Result<Presentation> {
    let n = spec.n;
    let order: Vec<usize> = zone_pairs(n).iter().map(|(i, j)| (i - 1) * n + (j - 1)).collect();
    Presentation::modified(spec, false).reordered(&order)
}

/// Weights `λ_k` of `Z̃_{k,n+1-k}` and, for the minimal `J⁰` module, the value
/// `φ` of `Z̃_{n-1,1}^m`.
#[derive(Clone, Debug, PartialEq)]
pub struct HighestWeight {
    pub lambda: Vec<CycScalar>,
    pub phi: Option<CycScalar>,
}

impl HighestWeight {
    pub fn new(lambda: Vec<CycScalar>) -> Self {
        HighestWeight { lambda, phi: None }
    }

    pub fn from_ints(m: u32, lambda: &[i64]) -> Self {
        Self::new(lambda.iter().map(|l| CycScalar::from_int(m, *l)).collect())
    }

    pub fn with_phi(mut self, phi: CycScalar) -> Self {
        self.phi = Some(phi);
        self
    }

    /// `Λ = (1, .., 1)`, `φ = 1`.
    pub fn ones(n: usize, m: u32) -> Self {
        Self::from_ints(m, &vec![1; n]).with_phi(CycScalar::one(m))
    }
}

/// Square matrix stored by columns as `(row, value)` lists.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    pub dim: usize,
    pub m: u32,
    cols: Vec<Vec<(usize, CycScalar)>>,
}

impl SparseMatrix {
    pub fn zero(dim: usize, m: u32) -> Self {
        SparseMatrix { dim, m, cols: vec![Vec::new(); dim] }
    }

    pub fn identity(dim: usize, m: u32) -> Self {
        let cols = (0..dim).map(|j| vec![(j, CycScalar::one(m))]).collect();
        SparseMatrix { dim, m, cols }
    }

    pub fn get(&self, row: usize, col: usize) -> CycScalar {
        self.cols[col]
            .iter()
            .find(|(r, _)| *r == row)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(|| CycScalar::zero(self.m))
    }

    pub fn set(&mut self, row: usize, col: usize, v: CycScalar) {
        let c = &mut self.cols[col];
        c.retain(|(r, _)| *r != row);
        if !v.is_zero() {
            c.push((row, v));
            c.sort_by_key(|(r, _)| *r);
        }
    }

    pub fn column(&self, col: usize) -> &[(usize, CycScalar)] {
        &self.cols[col]
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    fn from_columns(dim: usize, m: u32, cols: Vec<BTreeMap<usize, CycScalar>>) -> Self {
        let cols = cols
            .into_iter()
            .map(|c| c.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        SparseMatrix { dim, m, cols }
    }

    /// `self · x` for a dense vector.
    pub fn apply(&self, x: &[CycScalar]) -> Vec<CycScalar> {
        let mut out = vec![CycScalar::zero(self.m); self.dim];
        for (j, xj) in x.iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            for (r, v) in &self.cols[j] {
                out[*r].add_assign_ref(&(v * xj));
            }
        }
        out
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        let cols = other
            .cols
            .iter()
            .map(|col| {
                let mut acc: BTreeMap<usize, CycScalar> = BTreeMap::new();
                for (l, b) in col {
                    for (r, a) in &self.cols[*l] {
                        acc.entry(*r).or_insert_with(|| CycScalar::zero(self.m)).add_assign_ref(&(a * b));
                    }
                }
                acc
            })
            .collect();
        Self::from_columns(self.dim, self.m, cols)
    }

    /// `Σ c · A` over the given pairs.
    pub fn combination(dim: usize, m: u32, terms: &[(CycScalar, SparseMatrix)]) -> SparseMatrix {
        let mut cols: Vec<BTreeMap<usize, CycScalar>> = vec![BTreeMap::new(); dim];
        for (c, a) in terms {
            for (j, col) in a.cols.iter().enumerate() {
                for (r, v) in col {
                    cols[j].entry(*r).or_insert_with(|| CycScalar::zero(m)).add_assign_ref(&(c * v));
                }
            }
        }
        Self::from_columns(dim, m, cols)
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut cols: Vec<BTreeMap<usize, CycScalar>> = vec![BTreeMap::new(); self.dim];
        for (j, col) in self.cols.iter().enumerate() {
            for (r, v) in col {
                cols[*r].insert(j, v.clone());
            }
        }
        Self::from_columns(self.dim, self.m, cols)
    }

    pub fn to_dense(&self) -> Vec<Vec<CycScalar>> {
        let mut out = vec![vec![CycScalar::zero(self.m); self.dim]; self.dim];
        for (j, col) in self.cols.iter().enumerate() {
            for (r, v) in col {
                out[*r][j] = v.clone();
            }
        }
        out
    }

    /// Rank over ℚ(ζ_m).
    pub fn rank(&self) -> usize {
        crate::linalg::rank(&self.to_dense())
    }
}

/// A module given by the action matrices of the generators `Z̃_{i,j}` on the
/// basis `R^b · v`.
#[derive(Clone, Debug)]
pub struct ModuleRep {
    pub n: usize,
    pub m: u32,
    pub dimension: usize,
    /// Raising generators; coordinates of the basis exponents.
    pub raising: Vec<(usize, usize)>,
    /// Exponent vectors, in the order of the basis.
    pub basis: Vec<Vec<u32>>,
    pub matrices: BTreeMap<(usize, usize), SparseMatrix>,
}

impl ModuleRep {
    pub fn matrix(&self, i: usize, j: usize) -> &SparseMatrix {
        &self.matrices[&(i, j)]
    }

    /// Position of the basis vector with the given raising exponents.
    pub fn basis_index(&self, exponents: &[u32]) -> Option<usize> {
        self.basis.iter().position(|b| b == exponents)
    }

    pub fn to_json(&self) -> Value {
        let mats: Vec<Value> = self
            .matrices
            .iter()
            .map(|((i, j), a)| {
                let rows: Vec<Value> = a
                    .to_dense()
                    .iter()
                    .map(|r| Value::Array(r.iter().map(|x| x.to_json()).collect()))
                    .collect();
                json!({"generator": format!("Z{}{}", i, j), "matrix": rows})
            })
            .collect();
        json!({
            "n": self.n,
            "m": self.m,
            "dimension": self.dimension,
            "raising": self.raising.iter().map(|(i, j)| format!("Z{}{}", i, j)).collect::<Vec<_>>(),
            "basis": self.basis,
            "matrices": mats,
        })
    }
}

/// Restricted module: every raising exponent below `m'`.
pub fn build_restricted_verma(spec: &AlgebraSpec, m: u32, hw: &HighestWeight) -> Result<ModuleRep> {
    let bounds = vec![m_prime(m); raising_generators(spec.n).len()];
    build(spec, m, hw, &bounds, None)
}

/// Minimal module for `J⁰`: `Z̃_{n-1,1}` up to `m - 1` with `Z̃_{n-1,1}^m = φ`,
/// other raising exponents below `m'`.
pub fn build_min_generalized_verma_j0(n: usize, m: u32, hw: &HighestWeight) -> Result<ModuleRep> {
    let spec = AlgebraSpec::named(Family::J0, n)?;
    let raising = raising_generators(n);
    let special = raising.iter().position(|p| *p == (n - 1, 1)).expect("raising generator");
    let mut bounds = vec![m_prime(m); raising.len()];
    bounds[special] = m;
    let phi = hw.phi.clone().unwrap_or_else(|| CycScalar::one(m));
    build(&spec, m, hw, &bounds, Some((special, phi)))
}

fn build(
    spec: &AlgebraSpec,
    m: u32,
    hw: &HighestWeight,
    bounds: &[u32],
    wrap: Option<(usize, CycScalar)>,
) -> Result<ModuleRep> {
    if m < 3 {
        return Err(QmaError::InvalidRootOrder(m));
    }
    let n = spec.n;
    if hw.lambda.len() != n {
        return Err(QmaError::DimensionMismatch { expected: n, got: hw.lambda.len() });
    }
    if hw.lambda.iter().chain(&hw.phi).any(|x| x.m != m) {
        return Err(QmaError::InvalidArgument("weights live in a different cyclotomic field".into()));
    }
    if !satisfies_antidiagonal_commutation(spec) {
        return Err(QmaError::ConditionCommuFailed);
    }
    let pres = Arc::new(zone_presentation(spec)?);
    let eng = Engine::new(pres.clone(), CycRing::new(m)?);
    let raising = raising_generators(n);
    let r = raising.len();

    let mut basis: Vec<Vec<u32>> = vec![Vec::new()];
    for b in bounds {
        basis = basis
            .into_iter()
            .flat_map(|prefix| {
                (0..*b).map(move |e| {
                    let mut v = prefix.clone();
                    v.push(e);
                    v
                })
            })
            .collect();
    }
    let index: HashMap<Vec<u32>, usize> = basis.iter().cloned().enumerate().map(|(k, b)| (b, k)).collect();
    let dim = basis.len();

    let gens: Vec<(usize, usize)> = (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).collect();
    let ctx = Action { eng: &eng, pres: &pres, n, r, bounds, wrap: wrap.as_ref(), lambda: &hw.lambda, index: &index };
    let matrices: BTreeMap<(usize, usize), SparseMatrix> = gens
        .par_iter()
        .map(|(i, j)| {
            let g = pres.z(*i, *j);
            let cols = basis.iter().map(|b| ctx.act(g, b)).collect();
            ((*i, *j), SparseMatrix::from_columns(dim, m, cols))
        })
        .collect();
    let rep = ModuleRep { n, m, dimension: dim, raising, basis, matrices };
    if !verify_rep(&rep, spec, m) {
        return Err(QmaError::RepresentationInvalid);
    }
    Ok(rep)
}

struct Action<'a> {
    eng: &'a Engine<CycRing>,
    pres: &'a Presentation,
    n: usize,
    r: usize,
    bounds: &'a [u32],
    wrap: Option<&'a (usize, CycScalar)>,
    lambda: &'a [CycScalar],
    index: &'a HashMap<Vec<u32>, usize>,
}

impl Action<'_> {
    /// Column of `g` acting on the basis vector `R^b · v`.
    fn act(&self, g: usize, b: &[u32]) -> BTreeMap<usize, CycScalar> {
        let ring = self.eng.ring();
        let mut mono = Mono::one(self.pres.len());
        for (k, e) in b.iter().enumerate() {
            mono.0[k] = *e as i32;
        }
        let prod = self.eng.mul(&self.eng.gen(g), &Poly::term(mono, ring.one()));
        let mut out: BTreeMap<usize, CycScalar> = BTreeMap::new();
        'terms: for (mono, c) in &prod.terms {
            let mut c = c.clone();
            let mut exps: Vec<u32> = mono.0[..self.r].iter().map(|e| *e as u32).collect();
            for (x, e) in mono.0.iter().enumerate().skip(self.r) {
                if *e == 0 {
                    continue;
                }
                let GenKind::Z(i, j) = self.pres.label(x).kind else { unreachable!() };
                match zone(self.n, i, j) {
                    Zone::Lowering => continue 'terms,
                    Zone::Diagonal => c = &c * &self.lambda[i - 1].pow(*e as u32),
                    Zone::Raising => unreachable!("raising letters come first"),
                }
            }
            if let Some((k, phi)) = self.wrap {
                let m = self.bounds[*k];
                while exps[*k] >= m {
                    exps[*k] -= m;
                    c = &c * phi;
                }
            }
            if exps.iter().zip(self.bounds).any(|(e, b)| e >= b) {
                continue;
            }
            if !c.is_zero() {
                let row = self.index[&exps];
                out.entry(row).or_insert_with(|| ring.zero()).add_assign_ref(&c);
            }
        }
        out
    }
}

/// Every defining relation of `spec` at `q = ζ_m` holds for the matrices.
pub fn verify_rep(rep: &ModuleRep, spec: &AlgebraSpec, m: u32) -> bool {
    if rep.m != m || rep.n != spec.n {
        return false;
    }
    let pres = Presentation::modified(spec, false);
    let ring = match CycRing::new(m) {
        Ok(r) => r,
        Err(_) => return false,
    };
    let mut mats = Vec::new();
    for g in 0..pres.len() {
        let GenKind::Z(i, j) = pres.label(g).kind else { return false };
        match rep.matrices.get(&(i, j)) {
            Some(a) if a.dim == rep.dimension => mats.push(a),
            _ => return false,
        }
    }
    pres.relations().par_iter().all(|rel| {
        let terms: Vec<_> = rel
            .terms
            .iter()
            .map(|(c, x, y)| (ring.from_laurent(c), mats[*x].mul(mats[*y])))
            .collect();
        SparseMatrix::combination(rep.dimension, m, &terms).is_zero()
    })
}

/// Burnside's criterion: the matrices generate the full matrix algebra.
///
/// A full-rank span modulo a prime `p ≡ 1 (mod m)` proves irreducibility; a
/// proper cyclic submodule (of the module or its dual) proves the opposite;
/// otherwise the span is computed exactly.
pub fn irreducible(rep: &ModuleRep) -> bool {
    let gens: Vec<&SparseMatrix> = rep.matrices.values().collect();
    let d = rep.dimension;
    for p in primes_one_mod(rep.m).take(2) {
        if let Some(mats) = gens.iter().map(|a| reduce_mod_p(a, p)).collect::<Option<Vec<_>>>() {
            if burnside_rank(&mats, d, Fp::new(1, p)) == d * d {
                return true;
            }
        }
    }
    let transposed: Vec<SparseMatrix> = gens.iter().map(|a| a.transpose()).collect();
    for side in [gens.clone(), transposed.iter().collect()] {
        for k in 0..d {
            if cyclic_dimension(&side, k, rep.m) < d {
                return false;
            }
        }
    }
    let dense: Vec<Vec<Vec<CycScalar>>> = gens.iter().map(|a| a.to_dense()).collect();
    burnside_rank(&dense, d, CycScalar::one(rep.m)) == d * d
}

/// Dimension of the submodule generated by the `k`-th basis vector.
pub fn cyclic_dimension(gens: &[&SparseMatrix], k: usize, m: u32) -> usize {
    let d = gens.first().map(|a| a.dim).unwrap_or(0);
    let mut e = vec![CycScalar::zero(m); d];
    e[k] = CycScalar::one(m);
    let mut span = EchelonBasis::new(d);
    span.insert(&e);
    let mut queue = vec![e];
    while let Some(v) = queue.pop() {
        for a in gens {
            let w = a.apply(&v);
            if span.insert(&w) {
                queue.push(w);
            }
        }
    }
    span.rank()
}

fn burnside_rank<F: Field>(gens: &[Vec<Vec<F>>], d: usize, one: F) -> usize {
    let zero = one.zero_like();
    let mut id = vec![vec![zero.clone(); d]; d];
    for (k, row) in id.iter_mut().enumerate() {
        row[k] = one.clone();
    }
    let flat = |a: &Vec<Vec<F>>| a.iter().flatten().cloned().collect::<Vec<F>>();
    let mut span = EchelonBasis::new(d * d);
    span.insert(&flat(&id));
    let mut queue = vec![id];
    while let Some(w) = queue.pop() {
        if span.rank() == d * d {
            break;
        }
        for g in gens {
            let prod = crate::linalg::mat_mul(g, &w);
            if span.insert(&flat(&prod)) {
                queue.push(prod);
            }
        }
    }
    span.rank()
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|k| k * k <= p).all(|k| !p.is_multiple_of(k))
}

fn primes_one_mod(m: u32) -> impl Iterator<Item = u64> {
    let m = m as u64;
    let start = (1u64 << 30) / m * m + 1;
    (0..).map(move |k| start + k * m).filter(|p| is_prime(*p))
}

/// An element of order exactly `m` in `F_p^×`.
fn root_of_unity(m: u32, p: u64) -> u64 {
    let m = m as u64;
    let proper_divisors: Vec<u64> = (1..m).filter(|d| m.is_multiple_of(*d)).collect();
    (2..p)
        .map(|g| Fp::new(g, p).pow((p - 1) / m))
        .find(|w| proper_divisors.iter().all(|d| w.pow(*d).v != 1))
        .expect("p = 1 mod m")
        .v
}

fn reduce_mod_p(a: &SparseMatrix, p: u64) -> Option<Vec<Vec<Fp>>> {
    let omega = Fp::new(root_of_unity(a.m, p), p);
    let big_p = BigInt::from(p);
    let to_fp = |x: &num_rational::BigRational| -> Option<Fp> {
        let den = x.denom().mod_floor(&big_p);
        if den.is_zero() {
            return None;
        }
        let num = x.numer().mod_floor(&big_p);
        let (num, den) = (num.abs().to_u64()?, den.to_u64()?);
        Some(Fp::new(num, p).f_mul(&Fp::new(den, p).f_inv()))
    };
    let mut out = vec![vec![Fp::new(0, p); a.dim]; a.dim];
    for (j, col) in a.cols.iter().enumerate() {
        for (r, v) in col {
            let mut acc = Fp::new(0, p);
            let mut w = Fp::new(1, p);
            for c in &v.coeffs {
                acc = acc.f_add(&to_fp(c)?.f_mul(&w));
                w = w.f_mul(&omega);
            }
            out[*r][j] = acc;
        }
    }
    Some(out)
}

/// The basis vector `R^b · v` is killed by every lowering generator.
pub fn annihilated_by_lowering(rep: &ModuleRep, exponents: &[u32]) -> Option<bool> {
    let k = rep.basis_index(exponents)?;
    Some(
        rep.matrices
            .iter()
            .filter(|((i, j), _)| zone(rep.n, *i, *j) == Zone::Lowering)
            .all(|(_, a)| a.column(k).is_empty()),
    )
}

/// For `n = 2`: `g · Z̃_{1,1}^{m'}` lies in the span of words `Z̃_{1,1}^e · D`
/// with `e >= m'` modulo words ending in the lowering generator, for every
/// generator `g`. This is what makes truncating at `m'` consistent.
pub fn truncation_is_submodule(spec: &AlgebraSpec, m: u32) -> Result<bool> {
    if spec.n != 2 {
        return Err(QmaError::InvalidArgument("truncation check is for n = 2".into()));
    }
    if m < 3 {
        return Err(QmaError::InvalidRootOrder(m));
    }
    let pres = Arc::new(zone_presentation(spec)?);
    let eng = Engine::new(pres.clone(), CycRing::new(m)?);
    let x = pres.z(1, 1);
    let lower = pres.z(2, 2);
    let power = eng.gen_pow(x, m_prime(m) as i32);
    Ok((0..pres.len()).all(|g| {
        eng.mul(&eng.gen(g), &power)
            .terms
            .keys()
            .all(|mono| mono.0[lower] > 0 || mono.0[x] >= m_prime(m) as i32)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zones_for_three() {
        assert_eq!(raising_generators(3), vec![(1, 1), (1, 2), (2, 1)]);
        assert_eq!(zone(3, 2, 2), Zone::Diagonal);
        assert_eq!(zone(3, 3, 2), Zone::Lowering);
    }

    #[test]
    fn primes_and_roots() {
        let p = primes_one_mod(4).next().unwrap();
        assert_eq!(p % 4, 1);
        let w = Fp::new(root_of_unity(4, p), p);
        assert_eq!(w.pow(2).v, p - 1);
    }

    #[test]
    fn sparse_products() {
        let mut a = SparseMatrix::zero(2, 3);
        a.set(0, 1, CycScalar::one(3));
        assert!(a.mul(&a).is_zero());
        assert_eq!(a.transpose().get(1, 0), CycScalar::one(3));
        assert_eq!(a.mul(&SparseMatrix::identity(2, 3)), a);
    }
}
