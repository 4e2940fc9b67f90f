//! Dense Gaussian elimination over exact fields.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::qcoeff::CycScalar;

pub trait Field: Clone + PartialEq + std::fmt::Debug {
    fn vanishes(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn f_add(&self, other: &Self) -> Self;
    fn f_sub(&self, other: &Self) -> Self;
    fn f_mul(&self, other: &Self) -> Self;
    fn f_inv(&self) -> Self;
}

impl Field for BigRational {
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn f_add(&self, o: &Self) -> Self {
        self + o
    }
    fn f_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn f_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn f_inv(&self) -> Self {
        self.recip()
    }
}

impl Field for CycScalar {
    fn vanishes(&self) -> bool {
        CycScalar::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        CycScalar::zero(self.m)
    }
    fn one_like(&self) -> Self {
        CycScalar::one(self.m)
    }
    fn f_add(&self, o: &Self) -> Self {
        self + o
    }
    fn f_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn f_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn f_inv(&self) -> Self {
        self.inverse().expect("nonzero pivot")
    }
}

/// Residues modulo a prime `p < 2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    pub v: u64,
    pub p: u64,
}

impl Fp {
    pub fn new(v: u64, p: u64) -> Self {
        Fp { v: v % p, p }
    }

    pub fn pow(self, mut e: u64) -> Self {
        let (mut b, mut acc) = (self, Fp::new(1, self.p));
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.f_mul(&b);
            }
            b = b.f_mul(&b);
            e >>= 1;
        }
        acc
    }
}

impl Field for Fp {
    fn vanishes(&self) -> bool {
        self.v == 0
    }
    fn zero_like(&self) -> Self {
        Fp { v: 0, p: self.p }
    }
    fn one_like(&self) -> Self {
        Fp { v: 1, p: self.p }
    }
    fn f_add(&self, o: &Self) -> Self {
        Fp { v: (self.v + o.v) % self.p, p: self.p }
    }
    fn f_sub(&self, o: &Self) -> Self {
        Fp { v: (self.v + self.p - o.v) % self.p, p: self.p }
    }
    fn f_mul(&self, o: &Self) -> Self {
        Fp { v: self.v * o.v % self.p, p: self.p }
    }
    fn f_inv(&self) -> Self {
        assert!(self.v != 0, "inverse of zero");
        self.pow(self.p - 2)
    }
}

/// Incrementally maintained row-echelon basis of a subspace of `F^d`.
#[derive(Clone, Debug)]
pub struct EchelonBasis<F: Field> {
    dim: usize,
    rows: Vec<(usize, Vec<F>)>,
}

impl<F: Field> EchelonBasis<F> {
    pub fn new(dim: usize) -> Self {
        EchelonBasis { dim, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Reduces `v` against the basis; the result is zero iff `v` is in the span.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if !v[*p].vanishes() {
                let f = v[*p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.vanishes() {
                        *x = x.f_sub(&f.f_mul(r));
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v).iter().all(|x| x.vanishes())
    }

    /// Adds `v`; returns `true` if the rank grew.
    pub fn insert(&mut self, v: &[F]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.vanishes()) else {
            return false;
        };
        let inv = r[p].f_inv();
        for x in r.iter_mut() {
            if !x.vanishes() {
                *x = x.f_mul(&inv);
            }
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[p].vanishes() {
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(&r) {
                    if !y.vanishes() {
                        *x = x.f_sub(&f.f_mul(y));
                    }
                }
            }
        }
        self.rows.push((p, r));
        true
    }
}

pub fn rank<F: Field>(rows: &[Vec<F>]) -> usize {
    let Some(first) = rows.first() else {
        return 0;
    };
    let mut b = EchelonBasis::new(first.len());
    for r in rows {
        b.insert(r);
    }
    b.rank()
}

pub fn mat_mul<F: Field>(a: &[Vec<F>], b: &[Vec<F>]) -> Vec<Vec<F>> {
    let zero = a[0][0].zero_like();
    let (n, k, m) = (a.len(), b.len(), b[0].len());
    let mut out = vec![vec![zero; m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].vanishes() {
                continue;
            }
            for j in 0..m {
                if !b[l][j].vanishes() {
                    out[i][j] = out[i][j].f_add(&a[i][l].f_mul(&b[l][j]));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcoeff::rat;

    #[test]
    fn rational_rank() {
        let m = vec![vec![rat(1), rat(2), rat(3)], vec![rat(2), rat(4), rat(6)], vec![rat(0), rat(1), rat(1)]];
        assert_eq!(rank(&m), 2);
        let mut b = EchelonBasis::new(3);
        b.insert(&m[0]);
        assert!(b.contains(&m[1]));
        assert!(!b.contains(&m[2]));
    }

    #[test]
    fn prime_field() {
        let a = Fp::new(3, 7);
        assert_eq!(a.f_mul(&a.f_inv()).v, 1);
        assert_eq!(a.pow(6).v, 1);
        assert_eq!(a.f_sub(&Fp::new(5, 7)).v, 5);
    }

    #[test]
    fn cyclotomic_rank() {
        let z = |k| CycScalar::zeta_pow(3, k);
        let m = vec![vec![z(0), z(1)], vec![z(1), z(2)], vec![z(2), z(0)]];
        assert_eq!(rank(&m), 1);
    }
}
