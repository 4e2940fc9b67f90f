use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::error::{QmaError, Result};
use crate::qcoeff::CoeffRing;

use super::poly::{Mono, Poly};
use super::presentation::Presentation;

/// A factor `z_gen^pow` of a word; negative powers only for invertible generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: usize,
    pub pow: i32,
}

/// An arbitrary (unordered) product of generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn new() -> Self {
        Word(Vec::new())
    }

    pub fn from_gens(gens: &[usize]) -> Self {
        Word(gens.iter().map(|g| Letter { gen: *g, pow: 1 }).collect())
    }

    pub fn push(&mut self, gen: usize, pow: i32) {
        self.0.push(Letter { gen, pow });
    }

    /// Parses whitespace-separated tokens such as `Z22 Z11 L1^-1 2:Z12`.
    pub fn parse(pres: &Presentation, text: &str) -> Result<Self> {
        let mut w = Word::new();
        for tok in text.split_whitespace() {
            let (name, pow) = match tok.split_once('^') {
                Some((a, b)) => (
                    a,
                    b.parse::<i32>()
                        .map_err(|_| QmaError::Parse(format!("bad exponent in `{}`", tok)))?,
                ),
                None => (tok, 1),
            };
            let g = pres.parse_label(name)?;
            if pow < 0 && !pres.is_invertible(g) {
                return Err(QmaError::NegativePower);
            }
            w.push(g, pow);
        }
        Ok(w)
    }
}

type SwapData<E> = (i64, Vec<(E, usize, usize)>);
type CacheKey = (Mono, usize, i8);

/// Normal-ordering engine for a presentation over a coefficient ring.
///
/// Products are formed by inserting one generator at a time into an ordered
/// monomial; insertions are memoized and the memo is shared between threads.
pub struct Engine<R: CoeffRing> {
    pres: Arc<Presentation>,
    ring: R,
    swap_down: HashMap<(usize, usize), SwapData<R::Elem>>,
    cache: RwLock<HashMap<CacheKey, Arc<Poly<R::Elem>>>>,
}

impl<R: CoeffRing> Engine<R> {
    pub fn new(pres: Arc<Presentation>, ring: R) -> Self {
        let mut swap_down = HashMap::new();
        let k = pres.len();
        for g in 0..k {
            for h in (g + 1)..k {
                if pres.has_corrections(g, h) {
                    // z_h z_g = q^e z_g z_h + Σ c z_x z_y
                    let (coef, corr) = pres.swap(h, g);
                    let e = coef.as_monomial().map(|(e, _)| e).expect("pure power");
                    let corr = corr
                        .iter()
                        .map(|(c, x, y)| (ring.from_laurent(c), *x, *y))
                        .collect();
                    swap_down.insert((g, h), (e, corr));
                }
            }
        }
        Engine { pres, ring, swap_down, cache: RwLock::new(HashMap::new()) }
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn zero(&self) -> Poly<R::Elem> {
        Poly::zero()
    }

    pub fn one(&self) -> Poly<R::Elem> {
        Poly::term(Mono::one(self.pres.len()), self.ring.one())
    }

    pub fn constant(&self, c: R::Elem) -> Poly<R::Elem> {
        let mut p = Poly::zero();
        p.add_term(&self.ring, Mono::one(self.pres.len()), &c);
        p
    }

    pub fn gen(&self, g: usize) -> Poly<R::Elem> {
        self.gen_pow(g, 1)
    }

    pub fn gen_pow(&self, g: usize, e: i32) -> Poly<R::Elem> {
        let mut m = Mono::one(self.pres.len());
        m.0[g] = e;
        Poly::term(m, self.ring.one())
    }

    /// `Z̃_{i,j}` in slot 1.
    pub fn z(&self, i: usize, j: usize) -> Poly<R::Elem> {
        self.gen(self.pres.z(i, j))
    }

    pub fn cache_len(&self) -> usize {
        self.cache.read().expect("engine cache").len()
    }

    fn single(&self, mono: &Mono, g: usize, e: i32) -> Poly<R::Elem> {
        let mut m = mono.clone();
        m.0[g] += e;
        Poly::term(m, self.ring.one())
    }

    /// Appends `z_h^k` to every monomial, assuming they only involve
    /// generators `<= h`; otherwise multiplies letter by letter.
    fn append(&self, p: &Poly<R::Elem>, h: usize, k: i32) -> Poly<R::Elem> {
        let ordered = p.terms.keys().all(|m| m.highest().is_none_or(|t| t <= h));
        if ordered {
            let mut out = Poly::zero();
            for (m, c) in &p.terms {
                let mut m2 = m.clone();
                m2.0[h] += k;
                out.add_term(&self.ring, m2, c);
            }
            out
        } else {
            let mut out = p.clone();
            for _ in 0..k.unsigned_abs() {
                out = self.mul_poly_gen(&out, h, k.signum());
            }
            out
        }
    }

    /// Ordered form of `mono · z_g^e` with `e = ±1`.
    pub fn mul_mono_gen(&self, mono: &Mono, g: usize, e: i32) -> Arc<Poly<R::Elem>> {
        let h = match mono.highest() {
            None => return Arc::new(self.single(mono, g, e)),
            Some(h) if h <= g => return Arc::new(self.single(mono, g, e)),
            Some(h) => h,
        };
        let key = (mono.clone(), g, e as i8);
        if let Some(p) = self.cache.read().expect("engine cache").get(&key) {
            return p.clone();
        }
        let result = match self.swap_down.get(&(g, h)) {
            None => {
                // z_h^k z_g^e = q^{x k e} z_g^e z_h^k
                let k = mono.0[h];
                let mut rest = mono.clone();
                rest.0[h] = 0;
                let inner = self.mul_mono_gen(&rest, g, e);
                let x = self.pres.exchange(h, g) * k as i64 * e as i64;
                let moved = self.append(&inner, h, k);
                if x == 0 {
                    moved
                } else {
                    let mut out = Poly::zero();
                    for (m, c) in moved.terms {
                        out.add_term(&self.ring, m, &self.ring.mul_q_pow(&c, x));
                    }
                    out
                }
            }
            Some((x, corr)) => {
                debug_assert!(e == 1 && mono.0[h] > 0);
                let mut rest = mono.clone();
                rest.0[h] -= 1;
                let inner = self.mul_mono_gen(&rest, g, e);
                let mut out = Poly::zero();
                for (m, c) in &self.append(&inner, h, 1).terms {
                    out.add_term(&self.ring, m.clone(), &self.ring.mul_q_pow(c, *x));
                }
                for (c, a, b) in corr {
                    let p = self.mul_mono_gen(&rest, *a, 1);
                    let p = self.mul_poly_gen(&p, *b, 1);
                    out.add_scaled(&self.ring, &p, c);
                }
                out
            }
        };
        let result = Arc::new(result);
        self.cache
            .write()
            .expect("engine cache")
            .insert(key, result.clone());
        result
    }

    /// `P · z_g^e` with `e = ±1`.
    pub fn mul_poly_gen(&self, p: &Poly<R::Elem>, g: usize, e: i32) -> Poly<R::Elem> {
        let mut out = Poly::zero();
        for (m, c) in &p.terms {
            let r = self.mul_mono_gen(m, g, e);
            out.add_scaled(&self.ring, &r, c);
        }
        out
    }

    /// `P · z_g^k` for any integer `k` (negative only for invertible `g`).
    pub fn mul_poly_gen_pow(&self, p: &Poly<R::Elem>, g: usize, k: i32) -> Poly<R::Elem> {
        assert!(k >= 0 || self.pres.is_invertible(g), "negative power of a non-invertible generator");
        let mut out = p.clone();
        for _ in 0..k.unsigned_abs() {
            out = self.mul_poly_gen(&out, g, k.signum());
        }
        out
    }

    /// Normal form of an arbitrary word.
    pub fn straighten(&self, w: &Word) -> Poly<R::Elem> {
        let mut acc = self.one();
        for l in &w.0 {
            acc = self.mul_poly_gen_pow(&acc, l.gen, l.pow);
        }
        acc
    }

    pub fn mul(&self, p: &Poly<R::Elem>, q: &Poly<R::Elem>) -> Poly<R::Elem> {
        let mut out = Poly::zero();
        for (m, c) in &q.terms {
            let mut acc = p.clone();
            for (g, e) in m.0.iter().enumerate() {
                if *e != 0 {
                    acc = self.mul_poly_gen_pow(&acc, g, *e);
                }
            }
            out.add_scaled(&self.ring, &acc, c);
        }
        out
    }

    pub fn mul_all(&self, factors: &[&Poly<R::Elem>]) -> Poly<R::Elem> {
        let mut acc = self.one();
        for f in factors {
            acc = self.mul(&acc, f);
        }
        acc
    }

    pub fn commutator(&self, p: &Poly<R::Elem>, q: &Poly<R::Elem>) -> Poly<R::Elem> {
        self.mul(p, q).sub(&self.ring, &self.mul(q, p))
    }

    /// Iterated product; negative `k` only for a single monomial in invertible
    /// generators with coefficient 1.
    pub fn power(&self, p: &Poly<R::Elem>, k: i32) -> Result<Poly<R::Elem>> {
        if k >= 0 {
            let mut acc = self.one();
            for _ in 0..k {
                acc = self.mul(&acc, p);
            }
            return Ok(acc);
        }
        let (m, c) = match p.terms.iter().next() {
            Some(t) if p.terms.len() == 1 => t,
            _ => return Err(QmaError::NegativePower),
        };
        if *c != self.ring.one()
            || m.0.iter().enumerate().any(|(g, e)| *e != 0 && !self.pres.is_invertible(g))
        {
            return Err(QmaError::NegativePower);
        }
        // (L^v)^{-1} = L^{-v} since invertible generators q-commute among themselves
        let mut inv = self.one();
        for (g, e) in m.0.iter().enumerate() {
            if *e != 0 {
                inv = self.mul(&self.gen_pow_poly(g, -*e), &inv);
            }
        }
        self.power(&inv, -k)
    }

    fn gen_pow_poly(&self, g: usize, e: i32) -> Poly<R::Elem> {
        self.mul_poly_gen_pow(&self.one(), g, e)
    }

    /// Evaluates a linear combination of words.
    pub fn eval_words(&self, terms: &[(R::Elem, Word)]) -> Poly<R::Elem> {
        let mut out = Poly::zero();
        for (c, w) in terms {
            out.add_scaled(&self.ring, &self.straighten(w), c);
        }
        out
    }

    /// `Σ c · image(x) image(y)` for each quadratic relation, where `image`
    /// sends generators of another presentation to elements of this one.
    pub fn relation_images(
        &self,
        relations: &[super::presentation::QuadRelation],
        image: &dyn Fn(usize) -> Poly<R::Elem>,
    ) -> Vec<Poly<R::Elem>> {
        relations
            .iter()
            .map(|rel| {
                let mut out = Poly::zero();
                for (c, x, y) in &rel.terms {
                    let prod = self.mul(&image(*x), &image(*y));
                    out.add_scaled(&self.ring, &prod, &self.ring.from_laurent(c));
                }
                out
            })
            .collect()
    }
}
