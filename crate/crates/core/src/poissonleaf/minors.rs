//! Brackets with minors of the generic matrix and Hamiltonian invariance
//! of determinantal ideals, for the standard structure.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::detcenter::{inversions, MinorSpec};
use crate::error::Result;
use crate::linalg::EchelonBasis;
use crate::qcoeff::rat;
use crate::report::Claim;
use crate::rootdata::AlgebraSpec;

use super::{bracket_table, poisson_bracket, BracketTable, PoissonPoly};

fn var(n: usize, i: usize, j: usize) -> PoissonPoly {
    PoissonPoly::var(n * n, (i - 1) * n + (j - 1))
}

/// The classical minor with the given rows and columns.
pub fn minor_poly(n: usize, minor: &MinorSpec) -> PoissonPoly {
    let mut out = PoissonPoly::zero(n * n);
    for (image, _) in minor.bijections() {
        let mut e = vec![0; n * n];
        for (r, c) in minor.rows.iter().zip(&image) {
            e[(r - 1) * n + (c - 1)] += 1;
        }
        let pos: Vec<usize> = image
            .iter()
            .map(|c| minor.cols.iter().position(|x| x == c).expect("column"))
            .collect();
        let sign = if inversions(&pos).is_multiple_of(2) { 1 } else { -1 };
        out.add_term(e, rat(sign));
    }
    out
}

/// `A^i_j`: the minor obtained by deleting row `i` and column `j` (no sign).
pub fn cofactor_poly(n: usize, i: usize, j: usize) -> PoissonPoly {
    if n == 1 {
        return PoissonPoly::one(1);
    }
    minor_poly(n, &MinorSpec::cofactor(n, i, j))
}

fn sign(k: i64) -> BigRational {
    if k.rem_euclid(2) == 0 {
        rat(1)
    } else {
        rat(-1)
    }
}

/// Right-hand side of `{a_{ij}, A^i_j} = 2(Σ_{s<i} (−1)^{i−s} a_{sj} A^s_j − Σ_{t>j} (−1)^{t−j} a_{it} A^i_t)`.
pub fn first_lemma_rhs(n: usize, i: usize, j: usize) -> PoissonPoly {
    let mut out = PoissonPoly::zero(n * n);
    for s in 1..i {
        let t = (&var(n, s, j) * &cofactor_poly(n, s, j)).scale(&sign(i as i64 - s as i64));
        out = &out + &t;
    }
    for t in (j + 1)..=n {
        let u = (&var(n, i, t) * &cofactor_poly(n, i, t)).scale(&sign(t as i64 - j as i64));
        out = &out - &u;
    }
    out.scale(&rat(2))
}

/// Right-hand side of `{a_{ij}, A^n_j} = Σ_{k<j} (−1)^{j−k} a_{ik} A^n_k − Σ_{s>j} (−1)^{j−s} a_{is} A^n_s`.
pub fn second_lemma_rhs(n: usize, i: usize, j: usize) -> PoissonPoly {
    let mut out = PoissonPoly::zero(n * n);
    for k in 1..j {
        let t = (&var(n, i, k) * &cofactor_poly(n, n, k)).scale(&sign(j as i64 - k as i64));
        out = &out + &t;
    }
    for s in (j + 1)..=n {
        let u = (&var(n, i, s) * &cofactor_poly(n, n, s)).scale(&sign(j as i64 - s as i64));
        out = &out - &u;
    }
    out
}

pub fn first_lemma_holds(table: &BracketTable, n: usize, i: usize, j: usize) -> bool {
    poisson_bracket(table, &var(n, i, j), &cofactor_poly(n, i, j)) == first_lemma_rhs(n, i, j)
}

/// The second identity; it is meant for generators inside the minor, `i < n`
/// (for `i = n` the first identity applies).
pub fn second_lemma_holds(table: &BracketTable, n: usize, i: usize, j: usize) -> bool {
    poisson_bracket(table, &var(n, i, j), &cofactor_poly(n, n, j)) == second_lemma_rhs(n, i, j)
}

/// All `r×r` minors of the generic `n×n` matrix.
pub fn all_minors(n: usize, r: usize) -> Vec<(MinorSpec, PoissonPoly)> {
    let subsets = subsets(n, r);
    let mut out = Vec::new();
    for rows in &subsets {
        for cols in &subsets {
            let m = MinorSpec::new(rows.clone(), cols.clone()).expect("valid minor");
            let p = minor_poly(n, &m);
            out.push((m, p));
        }
    }
    out
}

fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for x in start..=n {
            cur.push(x);
            rec(x + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, r, &mut Vec::new(), &mut out);
    out
}

fn leading(p: &PoissonPoly) -> Option<(&Vec<i32>, &BigRational)> {
    p.terms.iter().next_back()
}

/// Remainder of `f` on division by `basis` in the lexicographic order with
/// `a_11 > a_12 > … > a_nn`. For the `r×r` minors this order picks the main
/// diagonal as leading term, and the minors form a Gröbner basis.
pub fn lex_remainder(f: &PoissonPoly, basis: &[PoissonPoly]) -> PoissonPoly {
    let mut p = f.clone();
    let mut rem = PoissonPoly::zero(f.nvars);
    while let Some((e, c)) = leading(&p).map(|(e, c)| (e.clone(), c.clone())) {
        let hit = basis.iter().find_map(|g| {
            let (ge, gc) = leading(g)?;
            let quot: Vec<i32> = e.iter().zip(ge).map(|(a, b)| a - b).collect();
            quot.iter().all(|x| *x >= 0).then(|| (g, quot, &c / gc))
        });
        match hit {
            Some((g, quot, coef)) => {
                let t = PoissonPoly::monomial(quot, coef);
                p = &p - &(&t * g);
            }
            None => {
                rem.add_term(e.clone(), c.clone());
                p.terms.remove(&e);
            }
        }
    }
    rem
}

fn monomials_of_degree(nvars: usize, d: usize) -> Vec<Vec<i32>> {
    fn rec(k: usize, left: usize, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        if k + 1 == cur.len() {
            cur[k] = left as i32;
            out.push(cur.clone());
            return;
        }
        for x in 0..=left {
            cur[k] = x as i32;
            rec(k + 1, left - x, cur, out);
        }
        cur[k] = 0;
    }
    let mut out = Vec::new();
    rec(0, d, &mut vec![0; nvars], &mut out);
    out
}

/// The degree-`d` part of an ideal generated by homogeneous polynomials,
/// as a linear span; membership of homogeneous polynomials of degree `d`
/// is then a linear-algebra question.
pub struct GradedPiece {
    degree: i64,
    index: BTreeMap<Vec<i32>, usize>,
    span: EchelonBasis<BigRational>,
}

impl GradedPiece {
    pub fn new(nvars: usize, degree: usize, gens: &[PoissonPoly]) -> Self {
        let monos = monomials_of_degree(nvars, degree);
        let index: BTreeMap<Vec<i32>, usize> = monos.into_iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut piece = GradedPiece { degree: degree as i64, span: EchelonBasis::new(index.len()), index };
        for g in gens {
            let Some(dg) = g.homogeneous_degree() else { continue };
            if dg > degree as i64 {
                continue;
            }
            for mult in monomials_of_degree(nvars, (degree as i64 - dg) as usize) {
                let t = &PoissonPoly::monomial(mult, rat(1)) * g;
                let v = piece.vector(&t);
                piece.span.insert(&v);
            }
        }
        piece
    }

    fn vector(&self, p: &PoissonPoly) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.index.len()];
        for (e, c) in &p.terms {
            v[self.index[e]] = c.clone();
        }
        v
    }

    pub fn contains(&self, f: &PoissonPoly) -> bool {
        match f.homogeneous_degree() {
            None => f.is_zero(),
            Some(d) if d == self.degree => self.span.contains(&self.vector(f)),
            Some(_) => false,
        }
    }
}

/// Outcome of the bracket-with-minor checks for one `n`.
#[derive(Clone, Debug)]
pub struct MinorIdealReport {
    pub claims: Vec<Claim>,
}

impl MinorIdealReport {
    pub fn pass(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }
}

/// Both minor-bracket identities, `{a_{st}, det} = 0`, and invariance of
/// every `r×r` minor ideal (`r < n`) under all Hamiltonian fields `{a_{st}, ·}`.
pub fn minor_ideal_check(n: usize, m: u32) -> Result<MinorIdealReport> {
    let spec = AlgebraSpec::standard(n)?;
    let table = bracket_table(&spec, m)?;
    Ok(MinorIdealReport { claims: minor_claims(&table, n) })
}

pub fn minor_claims(table: &BracketTable, n: usize) -> Vec<Claim> {
    let mut claims = Vec::new();
    let mut first_bad = Vec::new();
    let mut second_bad = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if !first_lemma_holds(table, n, i, j) {
                first_bad.push((i, j));
            }
            if i < n && !second_lemma_holds(table, n, i, j) {
                second_bad.push((i, j));
            }
        }
    }
    claims.push(Claim::new(format!("minor-lemma-first.n{}", n), first_bad.is_empty(), format!("failing (i,j): {:?}", first_bad)));
    claims.push(Claim::new(
        format!("minor-lemma-second.n{}", n),
        second_bad.is_empty(),
        format!("rows i < n; failing (i,j): {:?}", second_bad),
    ));

    let det = minor_poly(n, &MinorSpec::full(n));
    let det_ok = (0..n * n).all(|x| poisson_bracket(table, &table.var(x), &det).is_zero());
    claims.push(Claim::new(format!("det-casimir.n{}", n), det_ok, "{a_st, det} = 0 for all (s,t)"));

    for r in 1..n {
        let minors = all_minors(n, r);
        let gens: Vec<PoissonPoly> = minors.iter().map(|(_, p)| p.clone()).collect();
        let jobs: Vec<(usize, usize)> = (0..n * n).flat_map(|x| (0..minors.len()).map(move |k| (x, k))).collect();
        let piece = GradedPiece::new(n * n, r + 1, &gens);
        let results: Vec<(bool, bool)> = jobs
            .par_iter()
            .map(|(x, k)| {
                let b = poisson_bracket(table, &table.var(*x), &minors[*k].1);
                (lex_remainder(&b, &gens).is_zero(), piece.contains(&b))
            })
            .collect();
        let by_division = results.iter().all(|r| r.0);
        let agree = results.iter().all(|r| r.0 == r.1);
        claims.push(Claim::new(
            format!("minor-ideal-invariant.n{}.r{}", n, r),
            by_division && agree,
            format!("{} brackets; division and span membership agree: {}", results.len(), agree),
        ));
    }
    claims
}
