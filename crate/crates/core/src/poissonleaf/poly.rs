//! Commutative Laurent polynomials with rational coefficients.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::qcoeff::rational_json;

/// A polynomial in `nvars` commuting variables; exponents may be negative
/// for variables that stand for invertible coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PoissonPoly {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<i32>, BigRational>,
}

impl PoissonPoly {
    pub fn zero(nvars: usize) -> Self {
        PoissonPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn var(nvars: usize, k: usize) -> Self {
        let mut e = vec![0; nvars];
        e[k] = 1;
        Self::monomial(e, BigRational::one())
    }

    pub fn monomial(exps: Vec<i32>, c: BigRational) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Vec<i32>, c: BigRational) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        PoissonPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `∂/∂x_k`.
    pub fn derivative(&self, k: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[k] != 0 {
                let mut e2 = e.clone();
                e2[k] -= 1;
                out.add_term(e2, c * BigRational::from_integer(e[k].into()));
            }
        }
        out
    }

    /// Total degree of every term, if homogeneous.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut degs = self.terms.keys().map(|e| e.iter().map(|x| *x as i64).sum::<i64>());
        let d = degs.next()?;
        degs.all(|x| x == d).then_some(d)
    }

    /// Replaces `x_k` by `images[k]`. Negative exponents require the image
    /// to be a single monomial.
    pub fn substitute(&self, images: &[PoissonPoly]) -> Option<PoissonPoly> {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map_or(0, |p| p.nvars);
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (k, x) in e.iter().enumerate() {
                let f = if *x >= 0 { images[k].pow(*x as u32) } else { images[k].inverse()?.pow(x.unsigned_abs()) };
                t = &t * &f;
            }
            out = &out + &t;
        }
        Some(out)
    }

    /// Inverse of a single monomial.
    pub fn inverse(&self) -> Option<PoissonPoly> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        Some(Self::monomial(e.iter().map(|x| -x).collect(), c.recip()))
    }

    /// Appends `extra` variables that do not occur.
    pub fn widen(&self, extra: usize) -> Self {
        PoissonPoly {
            nvars: self.nvars + extra,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e2 = e.clone();
                    e2.resize(self.nvars + extra, 0);
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, x)| **x != 0)
                .map(|(k, x)| if *x == 1 { names[k].clone() } else { format!("{}^{}", names[k], x) })
                .collect();
            if mono.is_empty() {
                s.push_str(&a.to_string());
            } else {
                if !a.is_one() {
                    s.push_str(&format!("{}·", a));
                }
                s.push_str(&mono.join("·"));
            }
        }
        s
    }

    pub fn to_json(&self, names: &[String]) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: serde_json::Map<String, Value> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| **x != 0)
                    .map(|(k, x)| (names[k].clone(), json!(x)))
                    .collect();
                json!({ "coeff": rational_json(c), "monomial": mono })
            })
            .collect();
        Value::Array(terms)
    }
}

impl fmt::Debug for PoissonPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|k| format!("x{}", k)).collect();
        write!(f, "{}", self.display_with(&names))
    }
}

impl Add for &PoissonPoly {
    type Output = PoissonPoly;
    fn add(self, rhs: &PoissonPoly) -> PoissonPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &PoissonPoly {
    type Output = PoissonPoly;
    fn sub(self, rhs: &PoissonPoly) -> PoissonPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &PoissonPoly {
    type Output = PoissonPoly;
    fn neg(self) -> PoissonPoly {
        self.scale(&-BigRational::one())
    }
}

impl Mul for &PoissonPoly {
    type Output = PoissonPoly;
    fn mul(self, rhs: &PoissonPoly) -> PoissonPoly {
        let mut out = PoissonPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<i32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}
