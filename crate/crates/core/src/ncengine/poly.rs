use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::qcoeff::{CoeffRing, CycScalar, LaurentScalar};

use super::presentation::{GenKind, Presentation};

/// Exponent vector of an ordered monomial, indexed by generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono(pub Vec<i32>);

impl Mono {
    pub fn one(len: usize) -> Self {
        Mono(vec![0; len])
    }

    pub fn highest(&self) -> Option<usize> {
        self.0.iter().rposition(|e| *e != 0)
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|e| *e as i64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|e| *e == 0)
    }

    /// Expanded reading-order letters `(generator, ±1)`.
    pub fn letters(&self) -> Vec<(usize, i32)> {
        let mut out = Vec::new();
        for (g, e) in self.0.iter().enumerate() {
            for _ in 0..e.unsigned_abs() {
                out.push((g, e.signum()));
            }
        }
        out
    }
}

/// A linear combination of ordered monomials.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<C> {
    pub terms: BTreeMap<Mono, C>,
}

impl<C: Clone> Default for Poly<C> {
    fn default() -> Self {
        Poly { terms: BTreeMap::new() }
    }
}

impl<C: Clone + PartialEq + std::fmt::Debug> Poly<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(mono: Mono, c: C) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(mono, c);
        Poly { terms }
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

    pub fn coeff(&self, mono: &Mono) -> Option<&C> {
        self.terms.get(mono)
    }

    pub fn add_term<R: CoeffRing<Elem = C>>(&mut self, ring: &R, mono: Mono, c: &C) {
        if ring.is_zero(c) {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(v) => {
                ring.add_assign(v, c);
                if ring.is_zero(v) {
                    self.terms.remove(&mono);
                }
            }
            None => {
                self.terms.insert(mono, c.clone());
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled<R: CoeffRing<Elem = C>>(&mut self, ring: &R, other: &Poly<C>, c: &C) {
        if ring.is_zero(c) {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(ring, m.clone(), &ring.mul(v, c));
        }
    }

    pub fn add_poly<R: CoeffRing<Elem = C>>(&mut self, ring: &R, other: &Poly<C>) {
        for (m, v) in &other.terms {
            self.add_term(ring, m.clone(), v);
        }
    }

    pub fn scale<R: CoeffRing<Elem = C>>(&self, ring: &R, c: &C) -> Poly<C> {
        let mut out = Poly::zero();
        out.add_scaled(ring, self, c);
        out
    }

    pub fn neg<R: CoeffRing<Elem = C>>(&self, ring: &R) -> Poly<C> {
        Poly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), ring.neg(v))).collect(),
        }
    }

    pub fn sub<R: CoeffRing<Elem = C>>(&self, ring: &R, other: &Poly<C>) -> Poly<C> {
        let mut out = self.clone();
        out.add_scaled(ring, other, &ring.neg(&ring.one()));
        out
    }

    /// Applies a coefficient map (e.g. specialization) and drops zeros.
    pub fn map_coeffs<S: CoeffRing>(&self, target: &S, f: impl Fn(&C) -> S::Elem) -> Poly<S::Elem> {
        let mut out = Poly::zero();
        for (m, v) in &self.terms {
            out.add_term(target, m.clone(), &f(v));
        }
        out
    }
}

impl Poly<LaurentScalar> {
    /// Specialization `q ↦ ζ_m` (or any other coefficient ring).
    pub fn specialize<S: CoeffRing>(&self, target: &S) -> Poly<S::Elem> {
        self.map_coeffs(target, |c| target.from_laurent(c))
    }
}

/// Coefficients that can be written as JSON.
pub trait JsonCoeff {
    fn coeff_json(&self) -> Value;
}

impl JsonCoeff for LaurentScalar {
    fn coeff_json(&self) -> Value {
        self.to_json()
    }
}

impl JsonCoeff for CycScalar {
    fn coeff_json(&self) -> Value {
        json!({"m": self.m, "zeta_basis": self.to_json()})
    }
}

impl JsonCoeff for num_rational::BigRational {
    fn coeff_json(&self) -> Value {
        crate::qcoeff::rational_json(self)
    }
}

fn slot_json(pres: &Presentation, mono: &Mono, slot: u8) -> Value {
    let n = pres.n();
    let mut lexp = Vec::new();
    let mut zexp = vec![vec![0i32; n]; n];
    let mut plane = Vec::new();
    for (g, e) in mono.0.iter().enumerate() {
        let l = pres.label(g);
        if l.slot != slot {
            continue;
        }
        match l.kind {
            GenKind::L(_) => lexp.push(*e),
            GenKind::Z(i, j) => zexp[i - 1][j - 1] = *e,
            GenKind::Plane(_) => plane.push(*e),
        }
    }
    let mut obj = serde_json::Map::new();
    obj.insert("lexp".into(), json!(lexp));
    if n > 0 {
        obj.insert("zexp".into(), json!(zexp));
    }
    if !plane.is_empty() {
        obj.insert("plane".into(), json!(plane));
    }
    Value::Object(obj)
}

/// JSON list of `{"lexp", "zexp", "coeff"}` objects; tensor algebras list
/// their factors under `"slots"`.
pub fn poly_to_json<C: JsonCoeff>(pres: &Presentation, p: &Poly<C>) -> Value {
    Value::Array(
        p.terms
            .iter()
            .map(|(m, c)| {
                let mut obj = if pres.slots() == 1 {
                    match slot_json(pres, m, 1) {
                        Value::Object(o) => o,
                        _ => unreachable!(),
                    }
                } else {
                    let mut o = serde_json::Map::new();
                    o.insert(
                        "slots".into(),
                        Value::Array((1..=pres.slots()).map(|s| slot_json(pres, m, s)).collect()),
                    );
                    o
                };
                obj.insert("coeff".into(), c.coeff_json());
                Value::Object(obj)
            })
            .collect(),
    )
}

/// Human-readable form such as `(q)·Z11 Z22 + (-1)·Z12 Z21`.
pub fn poly_to_string<C: std::fmt::Display>(pres: &Presentation, p: &Poly<C>) -> String {
    if p.terms.is_empty() {
        return "0".into();
    }
    p.terms
        .iter()
        .map(|(m, c)| {
            let word: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, e)| **e != 0)
                .map(|(g, e)| {
                    if *e == 1 {
                        pres.label(g).to_string()
                    } else {
                        format!("{}^{}", pres.label(g), e)
                    }
                })
                .collect();
            let w = if word.is_empty() { "1".to_string() } else { word.join(" ") };
            format!("({})·{}", c, w)
        })
        .collect::<Vec<_>>()
        .join(" + ")
}
