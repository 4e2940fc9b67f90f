//! Exact coefficients: Laurent polynomials in `q` over ℚ, the cyclotomic
//! fields ℚ(ζ_m), and the coefficient-ring abstraction used by the engine.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{QmaError, Result};

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Rejects `m = 0` and `m = 2` where a primitive root of unity is required.
pub fn check_root_order(m: u32) -> Result<()> {
    if m == 0 || m == 2 {
        Err(QmaError::InvalidRootOrder(m))
    } else {
        Ok(())
    }
}

/// A Laurent polynomial `Σ c_e q^e` with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentScalar {
    terms: BTreeMap<i64, BigRational>,
}

impl LaurentScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::q_pow(0)
    }

    pub fn q_pow(e: i64) -> Self {
        Self::monomial(e, BigRational::one())
    }

    pub fn monomial(e: i64, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentScalar { terms }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(0, c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(rat(c))
    }

    /// Builds `Σ c q^e` from `(e, c)` pairs.
    pub fn from_terms<I: IntoIterator<Item = (i64, BigRational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, &c);
        }
        p
    }

    /// `q - q^{-1}`.
    pub fn q_minus_qinv() -> Self {
        Self::from_terms([(1, rat(1)), (-1, rat(-1))])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> BigRational {
        self.terms.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `Some((e, c))` if this is a single term `c q^e`.
    pub fn as_monomial(&self) -> Option<(i64, &BigRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (*e, c))
        } else {
            None
        }
    }

    pub fn add_term(&mut self, e: i64, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        for (e, c) in &other.terms {
            self.add_term(*e, c);
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentScalar {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentScalar {
            terms: self.terms.iter().map(|(e, v)| (e + k, v.clone())).collect(),
        }
    }

    /// Substitution `q ↦ q^k`.
    pub fn substitute_power(&self, k: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, v)| (e * k, v.clone())))
    }

    /// Formal derivative `d/dq`.
    pub fn derivative(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(e, v)| (e - 1, v * BigRational::from_integer(BigInt::from(*e)))),
        )
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluation at a nonzero rational `q`.
    pub fn eval_rational(&self, q: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let p = rational_pow(q, *e);
            acc += c * p;
        }
        acc
    }

    /// JSON form `[[exp, num, den], ...]`.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(e, c)| {
                    Value::Array(vec![Value::from(*e), bigint_json(c.numer()), bigint_json(c.denom())])
                })
                .collect(),
        )
    }
}

pub fn rational_pow(q: &BigRational, e: i64) -> BigRational {
    let base = if e < 0 { q.recip() } else { q.clone() };
    let mut acc = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

pub fn bigint_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(x.to_string()),
    }
}

pub fn rational_json(x: &BigRational) -> Value {
    if x.is_integer() {
        bigint_json(x.numer())
    } else {
        Value::from(x.to_string())
    }
}

impl fmt::Debug for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let coeff = if a.is_one() && *e != 0 { String::new() } else { a.to_string() };
            match *e {
                0 => write!(f, "{}", a)?,
                1 => write!(f, "{}q", coeff)?,
                _ => write!(f, "{}q^{}", coeff, e)?,
            }
        }
        Ok(())
    }
}

impl Add for &LaurentScalar {
    type Output = LaurentScalar;
    fn add(self, rhs: &LaurentScalar) -> LaurentScalar {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub for &LaurentScalar {
    type Output = LaurentScalar;
    fn sub(self, rhs: &LaurentScalar) -> LaurentScalar {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, &-c);
        }
        out
    }
}

impl Neg for &LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        LaurentScalar {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &LaurentScalar {
    type Output = LaurentScalar;
    fn mul(self, rhs: &LaurentScalar) -> LaurentScalar {
        let mut out = LaurentScalar::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}

owned_ops!(LaurentScalar);

// ---------------------------------------------------------------------------
// Cyclotomic fields

/// Integer coefficients of `Φ_m`, lowest degree first.
pub fn cyclotomic_poly(m: u32) -> Vec<BigInt> {
    assert!(m >= 1, "cyclotomic_poly requires m >= 1");
    // Φ_m = (x^m - 1) / Π_{d | m, d < m} Φ_d
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            num = exact_div_monic(&num, &cyclotomic_poly(d));
        }
    }
    num
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (i, dc) in den.iter().enumerate() {
            rem[k + i] -= &c * dc;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

pub fn euler_phi(m: u32) -> usize {
    (1..=m).filter(|k| k.gcd(&m) == 1).count()
}

/// Precomputed data for ℚ(ζ_m): `x^k mod Φ_m` for `0 <= k < 2m`.
#[derive(Debug)]
pub struct CycTables {
    pub m: u32,
    pub phi: usize,
    pub modulus: Vec<BigInt>,
    powers: Vec<Vec<BigRational>>,
}

fn tables(m: u32) -> Arc<CycTables> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<CycTables>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(t) = cache.read().expect("cyclotomic cache").get(&m) {
        return t.clone();
    }
    let modulus = cyclotomic_poly(m);
    let phi = modulus.len() - 1;
    let mut powers = Vec::with_capacity(2 * m as usize);
    let mut cur = vec![BigRational::zero(); phi];
    cur[0] = BigRational::one();
    for _ in 0..(2 * m as usize).max(2 * phi) {
        powers.push(cur.clone());
        // multiply by x, reduce using the monic modulus
        let top = cur[phi - 1].clone();
        let mut next = vec![BigRational::zero(); phi];
        for k in (1..phi).rev() {
            next[k] = cur[k - 1].clone();
        }
        if !top.is_zero() {
            for k in 0..phi {
                next[k] -= &top * BigRational::from_integer(modulus[k].clone());
            }
        }
        cur = next;
    }
    let t = Arc::new(CycTables { m, phi, modulus, powers });
    cache.write().expect("cyclotomic cache").insert(m, t.clone());
    t
}

/// An element of ℚ(ζ_m) in the power basis `1, ζ, .., ζ^{φ(m)-1}`.
#[derive(Clone)]
pub struct CycScalar {
    pub m: u32,
    pub coeffs: Vec<BigRational>,
    ctx: Arc<CycTables>,
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.coeffs == other.coeffs
    }
}

impl Eq for CycScalar {}

impl std::hash::Hash for CycScalar {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.m.hash(state);
        self.coeffs.hash(state);
    }
}

impl CycScalar {
    pub fn zero(m: u32) -> Self {
        let ctx = tables(m);
        CycScalar { m, coeffs: vec![BigRational::zero(); ctx.phi], ctx }
    }

    pub fn one(m: u32) -> Self {
        Self::from_rational(m, BigRational::one())
    }

    pub fn from_rational(m: u32, c: BigRational) -> Self {
        let mut z = Self::zero(m);
        z.coeffs[0] = c;
        z
    }

    pub fn from_int(m: u32, c: i64) -> Self {
        Self::from_rational(m, rat(c))
    }

    /// `ζ_m^k` for any integer `k`.
    pub fn zeta_pow(m: u32, k: i64) -> Self {
        let ctx = tables(m);
        let e = k.rem_euclid(m as i64) as usize;
        CycScalar { m, coeffs: ctx.powers[e].clone(), ctx }
    }

    /// Reduces an arbitrary-length polynomial in ζ.
    pub fn from_poly(m: u32, poly: &[BigRational]) -> Self {
        let ctx = tables(m);
        let mut out = vec![BigRational::zero(); ctx.phi];
        for (k, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let idx = if k < ctx.powers.len() { k } else { k % m as usize };
            for (o, p) in out.iter_mut().zip(&ctx.powers[idx]) {
                if !p.is_zero() {
                    *o += c * p;
                }
            }
        }
        CycScalar { m, coeffs: out, ctx }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// `Some(c)` if the element lies in ℚ.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        CycScalar {
            m: self.m,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            ctx: self.ctx.clone(),
        }
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        assert_eq!(self.m, other.m, "mixed cyclotomic orders");
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }

    /// Multiplication by `ζ^k`.
    pub fn mul_zeta_pow(&self, k: i64) -> Self {
        let e = k.rem_euclid(self.m as i64) as usize;
        if e == 0 {
            return self.clone();
        }
        let mut poly = vec![BigRational::zero(); self.ctx.phi + e];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i + e] = c.clone();
        }
        Self::from_poly(self.m, &poly)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.m);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm over ℚ[x].
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let modulus: Vec<BigRational> = self
            .ctx
            .modulus
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let (g, s) = poly_ext_gcd(&trim(self.coeffs.clone()), &modulus);
        // g is a nonzero constant because Φ_m is irreducible
        if g.len() != 1 {
            return None;
        }
        let inv_g = g[0].recip();
        let s: Vec<BigRational> = s.into_iter().map(|c| c * &inv_g).collect();
        Some(Self::from_poly(self.m, &s))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(rational_json).collect())
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
    if p.is_empty() {
        p.push(BigRational::zero());
    }
    p
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let b = trim(b.to_vec());
    let mut rem = trim(a.to_vec());
    if rem.len() < b.len() {
        return (vec![BigRational::zero()], rem);
    }
    let lead = b.last().expect("nonempty").clone();
    let mut quot = vec![BigRational::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() && !(rem.len() == 1 && rem[0].is_zero()) {
        let shift = rem.len() - b.len();
        let c = rem.last().expect("nonempty") / &lead;
        for (i, bc) in b.iter().enumerate() {
            rem[i + shift] -= &c * bc;
        }
        quot[shift] = c;
        rem.pop();
        rem = trim(rem);
        if rem.len() < b.len() {
            break;
        }
    }
    (trim(quot), rem)
}

/// Returns `(g, s)` with `s·a ≡ g (mod b)`.
fn poly_ext_gcd(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r0 = trim(a.to_vec());
    let mut r1 = trim(b.to_vec());
    let mut s0 = vec![BigRational::one()];
    let mut s1 = vec![BigRational::zero()];
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divmod(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
    }
    (r0, s0)
}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => c.to_string(),
                1 => format!("({})z", c),
                _ => format!("({})z^{}", c, k),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl Add for &CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: &CycScalar) -> CycScalar {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub for &CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: &CycScalar) -> CycScalar {
        let mut out = self.clone();
        out.add_assign_ref(&-rhs);
        out
    }
}

impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            ctx: self.ctx.clone(),
        }
    }
}

impl Mul for &CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: &CycScalar) -> CycScalar {
        assert_eq!(self.m, rhs.m, "mixed cyclotomic orders");
        let phi = self.ctx.phi;
        let mut prod = vec![BigRational::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        CycScalar::from_poly(self.m, &prod)
    }
}

owned_ops!(CycScalar);

/// The ring homomorphism `q ↦ ζ_m`.
pub fn specialize(p: &LaurentScalar, m: u32) -> Result<CycScalar> {
    check_root_order(m)?;
    Ok(specialize_unchecked(p, m))
}

fn specialize_unchecked(p: &LaurentScalar, m: u32) -> CycScalar {
    let mut poly = vec![BigRational::zero(); m as usize];
    for (e, c) in p.terms() {
        poly[e.rem_euclid(m as i64) as usize] += c;
    }
    CycScalar::from_poly(m, &poly)
}

/// `lim_{q→ζ_m} p(q) / (m (q^m - 1)) = p'(ζ_m) ζ_m / m²`.
pub fn divide_limit(p: &LaurentScalar, m: u32) -> Result<CycScalar> {
    check_root_order(m)?;
    if !specialize_unchecked(p, m).is_zero() {
        return Err(QmaError::PoleError);
    }
    let d = specialize_unchecked(&p.derivative(), m).mul_zeta_pow(1);
    let mm = rat(m as i64 * m as i64);
    Ok(d.scale(&mm.recip()))
}

// ---------------------------------------------------------------------------
// Coefficient rings for the engine

/// A commutative coefficient ring together with a distinguished unit `q`.
pub trait CoeffRing: Clone + Send + Sync + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync + 'static;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    fn add_assign(&self, x: &mut Self::Elem, y: &Self::Elem);
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    fn q_pow(&self, k: i64) -> Self::Elem;
    fn from_laurent(&self, p: &LaurentScalar) -> Self::Elem;
    fn from_rational(&self, c: &BigRational) -> Self::Elem;

    fn mul_q_pow(&self, x: &Self::Elem, k: i64) -> Self::Elem {
        self.mul(x, &self.q_pow(k))
    }

    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        let mut out = x.clone();
        self.add_assign(&mut out, &self.neg(y));
        out
    }
}

/// ℚ[q, q⁻¹] with `q` transcendental.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LaurentRing;

impl CoeffRing for LaurentRing {
    type Elem = LaurentScalar;
    fn zero(&self) -> LaurentScalar {
        LaurentScalar::zero()
    }
    fn one(&self) -> LaurentScalar {
        LaurentScalar::one()
    }
    fn is_zero(&self, x: &LaurentScalar) -> bool {
        x.is_zero()
    }
    fn add_assign(&self, x: &mut LaurentScalar, y: &LaurentScalar) {
        x.add_assign_ref(y)
    }
    fn mul(&self, x: &LaurentScalar, y: &LaurentScalar) -> LaurentScalar {
        x * y
    }
    fn neg(&self, x: &LaurentScalar) -> LaurentScalar {
        -x
    }
    fn q_pow(&self, k: i64) -> LaurentScalar {
        LaurentScalar::q_pow(k)
    }
    fn from_laurent(&self, p: &LaurentScalar) -> LaurentScalar {
        p.clone()
    }
    fn from_rational(&self, c: &BigRational) -> LaurentScalar {
        LaurentScalar::constant(c.clone())
    }
    fn mul_q_pow(&self, x: &LaurentScalar, k: i64) -> LaurentScalar {
        x.shift(k)
    }
}

/// ℚ(ζ_m) with `q = ζ_m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CycRing {
    pub m: u32,
}

impl CycRing {
    pub fn new(m: u32) -> Result<Self> {
        check_root_order(m)?;
        Ok(CycRing { m })
    }
}

impl CoeffRing for CycRing {
    type Elem = CycScalar;
    fn zero(&self) -> CycScalar {
        CycScalar::zero(self.m)
    }
    fn one(&self) -> CycScalar {
        CycScalar::one(self.m)
    }
    fn is_zero(&self, x: &CycScalar) -> bool {
        x.is_zero()
    }
    fn add_assign(&self, x: &mut CycScalar, y: &CycScalar) {
        x.add_assign_ref(y)
    }
    fn mul(&self, x: &CycScalar, y: &CycScalar) -> CycScalar {
        x * y
    }
    fn neg(&self, x: &CycScalar) -> CycScalar {
        -x
    }
    fn q_pow(&self, k: i64) -> CycScalar {
        CycScalar::zeta_pow(self.m, k)
    }
    fn from_laurent(&self, p: &LaurentScalar) -> CycScalar {
        specialize_unchecked(p, self.m)
    }
    fn from_rational(&self, c: &BigRational) -> CycScalar {
        CycScalar::from_rational(self.m, c.clone())
    }
    fn mul_q_pow(&self, x: &CycScalar, k: i64) -> CycScalar {
        x.mul_zeta_pow(k)
    }
}

/// ℚ with `q` a fixed nonzero rational number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalAt {
    pub q: BigRational,
}

impl CoeffRing for RationalAt {
    type Elem = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, x: &BigRational) -> bool {
        x.is_zero()
    }
    fn add_assign(&self, x: &mut BigRational, y: &BigRational) {
        *x += y
    }
    fn mul(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x * y
    }
    fn neg(&self, x: &BigRational) -> BigRational {
        -x
    }
    fn q_pow(&self, k: i64) -> BigRational {
        rational_pow(&self.q, k)
    }
    fn from_laurent(&self, p: &LaurentScalar) -> BigRational {
        p.eval_rational(&self.q)
    }
    fn from_rational(&self, c: &BigRational) -> BigRational {
        c.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|x| BigInt::from(*x)).collect()
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic_poly(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_poly(3), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic_poly(12), ints(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_poly(4), ints(&[1, 0, 1]));
        for m in 1..=30 {
            assert_eq!(cyclotomic_poly(m).len() - 1, euler_phi(m));
        }
    }

    #[test]
    fn specialize_examples() {
        let p = &LaurentScalar::q_pow(3) - &LaurentScalar::one();
        assert!(specialize(&p, 3).unwrap().is_zero());
        let z = specialize(&LaurentScalar::q_minus_qinv(), 4).unwrap();
        assert_eq!(z.coeffs, vec![rat(0), rat(2)]);
        let s = specialize(&(&LaurentScalar::q_pow(1) + &LaurentScalar::q_pow(2)), 3).unwrap();
        assert_eq!(s, CycScalar::from_int(3, -1));
        assert!(specialize(&p, 2).is_err());
    }

    #[test]
    fn divide_limit_examples() {
        for m in [1u32, 3, 4, 5, 7] {
            let p = &LaurentScalar::q_pow(m as i64) - &LaurentScalar::one();
            assert_eq!(divide_limit(&p, m).unwrap(), CycScalar::from_rational(m, ratio(1, m as i64)));
        }
        let c = &LaurentScalar::q_pow(3) - &LaurentScalar::one();
        assert!(divide_limit(&(&c * &c), 3).unwrap().is_zero());
        let p6 = &LaurentScalar::q_pow(6) - &LaurentScalar::one();
        assert_eq!(divide_limit(&p6, 3).unwrap(), CycScalar::from_rational(3, ratio(2, 3)));
        assert_eq!(divide_limit(&LaurentScalar::one(), 3), Err(QmaError::PoleError));
    }

    #[test]
    fn phi_vanishes_at_zeta() {
        for m in 1..=24u32 {
            if m == 2 {
                continue;
            }
            let phi = LaurentScalar::from_terms(
                cyclotomic_poly(m)
                    .into_iter()
                    .enumerate()
                    .map(|(k, c)| (k as i64, BigRational::from_integer(c))),
            );
            assert!(specialize(&phi, m).unwrap().is_zero(), "m = {}", m);
        }
    }

    #[test]
    fn inverse_roundtrip() {
        for m in [3u32, 4, 5, 7, 8, 12] {
            let x = &CycScalar::zeta_pow(m, 1) + &CycScalar::from_int(m, 3);
            let inv = x.inverse().unwrap();
            assert!((&x * &inv).is_one(), "m = {}", m);
        }
        assert!(CycScalar::zero(5).inverse().is_none());
        // rational inputs in fields of degree one and two
        for m in [1u32, 3, 4, 6] {
            let x = CycScalar::from_int(m, -2);
            assert!((&x * &x.inverse().unwrap()).is_one(), "m = {}", m);
        }
    }

    #[test]
    fn display() {
        let p = LaurentScalar::from_terms([(1, rat(1)), (-1, rat(-1)), (0, rat(2))]);
        assert_eq!(p.to_string(), "q + 2 - q^-1");
    }
}
