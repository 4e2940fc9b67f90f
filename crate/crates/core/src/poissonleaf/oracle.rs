//! The semiclassical limit of commutators of `m`-th powers, and the
//! Poisson tables it produces.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{QmaError, Result};
use crate::families::explicit_presentation;
use crate::ncengine::{Engine, GenKind, Presentation};
use crate::qcoeff::{check_root_order, divide_limit, rat, specialize, LaurentRing};
use crate::rootdata::{pairing, rank_of, AlgebraSpec, Family, Weight};

use super::PoissonPoly;

/// Coordinate name of a generator: `a_ij` for `Z̃_{i,j}`, `l_k` for `L_k`.
pub fn coordinate_name(pres: &Presentation, g: usize) -> String {
    let label = pres.label(g);
    let base = match label.kind {
        GenKind::Z(i, j) => format!("a{}{}", i, j),
        GenKind::L(k) => format!("l{}", k),
        GenKind::Plane(c) => c.to_string(),
    };
    if label.slot > 1 {
        format!("{}:{}", label.slot, base)
    } else {
        base
    }
}

/// `lim 1/(m(q^m-1)) [z_x^m, z_y^m]` with `z^{mB} ↦ a^B`.
pub fn semiclassical_bracket_gens(eng: &Engine<LaurentRing>, m: u32, x: usize, y: usize) -> Result<PoissonPoly> {
    check_root_order(m)?;
    if m < 3 {
        return Err(QmaError::InvalidArgument(format!("semiclassical limit needs m >= 3, got {}", m)));
    }
    let k = eng.presentation().len();
    let c = eng.commutator(&eng.gen_pow(x, m as i32), &eng.gen_pow(y, m as i32));
    let mut out = PoissonPoly::zero(k);
    for (mono, coeff) in &c.terms {
        if !specialize(coeff, m)?.is_zero() {
            return Err(QmaError::NonCentralResidue);
        }
        let v = divide_limit(coeff, m)?;
        if v.is_zero() {
            continue;
        }
        if mono.0.iter().any(|e| e.rem_euclid(m as i32) != 0) {
            return Err(QmaError::NonCentralResidue);
        }
        let r = v.as_rational().ok_or(QmaError::NonRationalBracket)?;
        out.add_term(mono.0.iter().map(|e| e / m as i32).collect(), r);
    }
    Ok(out)
}

/// `{a_{i,j}, a_{s,t}}` for `M_q^℘(n)`.
pub fn semiclassical_bracket(spec: &AlgebraSpec, m: u32, a: (usize, usize), b: (usize, usize)) -> Result<PoissonPoly> {
    for (i, j) in [a, b] {
        if i == 0 || j == 0 || i > spec.n || j > spec.n {
            return Err(QmaError::IndexOutOfRange(i, j, spec.n));
        }
    }
    let pres = Presentation::modified(spec, false);
    let eng = Engine::new(Arc::new(pres), LaurentRing);
    let p = eng.presentation();
    semiclassical_bracket_gens(&eng, m, p.z(a.0, a.1), p.z(b.0, b.1))
}

/// Brackets of all coordinate pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketTable {
    pub names: Vec<String>,
    pub entries: Vec<Vec<PoissonPoly>>,
}

impl BracketTable {
    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn get(&self, x: usize, y: usize) -> &PoissonPoly {
        &self.entries[x][y]
    }

    pub fn var(&self, k: usize) -> PoissonPoly {
        PoissonPoly::var(self.nvars(), k)
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|s| s == name)
    }

    /// Builds a table from the brackets `x < y`, filling in antisymmetry.
    pub fn from_upper(names: Vec<String>, upper: impl Fn(usize, usize) -> PoissonPoly) -> Self {
        let k = names.len();
        let mut entries = vec![vec![PoissonPoly::zero(k); k]; k];
        for x in 0..k {
            for y in (x + 1)..k {
                let b = upper(x, y);
                entries[y][x] = -&b;
                entries[x][y] = b;
            }
        }
        BracketTable { names, entries }
    }

    /// Block sum of two tables; the blocks Poisson-commute.
    pub fn direct_sum(&self, other: &BracketTable, prefixes: (&str, &str)) -> BracketTable {
        let (k1, k2) = (self.nvars(), other.nvars());
        let mut names: Vec<String> = self.names.iter().map(|s| format!("{}{}", prefixes.0, s)).collect();
        names.extend(other.names.iter().map(|s| format!("{}{}", prefixes.1, s)));
        let lift_right = |p: &PoissonPoly| PoissonPoly {
            nvars: k1 + k2,
            terms: p
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e2 = vec![0; k1];
                    e2.extend_from_slice(e);
                    (e2, c.clone())
                })
                .collect(),
        };
        BracketTable::from_upper(names, |x, y| {
            if y < k1 {
                self.entries[x][y].widen(k2)
            } else if x >= k1 {
                lift_right(&other.entries[x - k1][y - k1])
            } else {
                PoissonPoly::zero(k1 + k2)
            }
        })
    }

    pub fn to_json(&self) -> Value {
        let mut rows = Vec::new();
        for x in 0..self.nvars() {
            for y in (x + 1)..self.nvars() {
                rows.push(json!({
                    "left": self.names[x],
                    "right": self.names[y],
                    "bracket": self.entries[x][y].display_with(&self.names),
                    "terms": self.entries[x][y].to_json(&self.names),
                }));
            }
        }
        json!({ "variables": self.names, "brackets": rows })
    }
}

/// The oracle applied to every pair of generators of a presentation.
pub fn bracket_table_pres(pres: Presentation, m: u32) -> Result<BracketTable> {
    let eng = Engine::new(Arc::new(pres), LaurentRing);
    let k = eng.presentation().len();
    let names: Vec<String> = (0..k).map(|g| coordinate_name(eng.presentation(), g)).collect();
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|x| ((x + 1)..k).map(move |y| (x, y))).collect();
    let values: Vec<PoissonPoly> = pairs
        .par_iter()
        .map(|(x, y)| semiclassical_bracket_gens(&eng, m, *x, *y))
        .collect::<Result<_>>()?;
    let mut entries = vec![vec![PoissonPoly::zero(k); k]; k];
    for ((x, y), v) in pairs.into_iter().zip(values) {
        entries[y][x] = -&v;
        entries[x][y] = v;
    }
    Ok(BracketTable { names, entries })
}

pub fn bracket_table(spec: &AlgebraSpec, m: u32) -> Result<BracketTable> {
    bracket_table_pres(Presentation::modified(spec, false), m)
}

/// Table of the family in its own generators (`D_q(n)` for `dipper`).
pub fn explicit_bracket_table(family: Family, n: usize, m: u32) -> Result<BracketTable> {
    if family == Family::Custom {
        return Err(QmaError::CustomFamily);
    }
    if n < 2 {
        return Err(QmaError::InvalidSize(n));
    }
    bracket_table_pres(explicit_presentation(family, n), m)
}

/// Leibniz extension `Σ ∂f/∂x ∂g/∂y {x, y}`.
pub fn poisson_bracket(table: &BracketTable, f: &PoissonPoly, g: &PoissonPoly) -> PoissonPoly {
    let k = table.nvars();
    let df: Vec<PoissonPoly> = (0..k).map(|x| f.derivative(x)).collect();
    let dg: Vec<PoissonPoly> = (0..k).map(|y| g.derivative(y)).collect();
    let mut out = PoissonPoly::zero(k);
    for x in 0..k {
        if df[x].is_zero() {
            continue;
        }
        for y in 0..k {
            if x == y || dg[y].is_zero() || table.entries[x][y].is_zero() {
                continue;
            }
            out = &out + &(&(&df[x] * &dg[y]) * &table.entries[x][y]);
        }
    }
    out
}

/// Triples `(x, y, z)` at which the Jacobi identity fails.
pub fn jacobi_failures(table: &BracketTable) -> Vec<(usize, usize, usize)> {
    let k = table.nvars();
    let triples: Vec<(usize, usize, usize)> = (0..k)
        .flat_map(|x| ((x + 1)..k).flat_map(move |y| ((y + 1)..k).map(move |z| (x, y, z))))
        .collect();
    triples
        .into_par_iter()
        .filter(|(x, y, z)| {
            let (a, b, c) = (table.var(*x), table.var(*y), table.var(*z));
            let t1 = poisson_bracket(table, &a, table.get(*y, *z));
            let t2 = poisson_bracket(table, &b, table.get(*z, *x));
            let t3 = poisson_bracket(table, &c, table.get(*x, *y));
            !(&(&t1 + &t2) + &t3).is_zero()
        })
        .collect()
}

pub fn antisymmetric(table: &BracketTable) -> bool {
    let k = table.nvars();
    (0..k).all(|x| table.entries[x][x].is_zero() && (0..k).all(|y| table.entries[x][y] == -&table.entries[y][x]))
}

/// Weight of `Z̃_{i,j}` under `λ`, i.e. `(α_{i,j} | λ)`.
fn coordinate_weights(spec: &AlgebraSpec, lam: &Weight) -> Vec<i64> {
    spec.pairs()
        .into_iter()
        .map(|(i, j)| pairing(&spec.root(i, j), lam).expect("sizes"))
        .collect()
}

/// Checks that `a_{i,j} ↦ c^{(α_{i,j}|λ_k)} a_{i,j}` preserves the table for
/// every fundamental weight `λ_k`, at the rational value `c`.
pub fn scaling_invariant(spec: &AlgebraSpec, table: &BracketTable, c: &BigRational) -> bool {
    let k = table.nvars();
    (0..rank_of(spec.n)).all(|node| {
        let w = coordinate_weights(spec, &Weight::fundamental(spec.n, node));
        let cp = |e: i64| crate::qcoeff::rational_pow(c, e);
        let images: Vec<PoissonPoly> = (0..k).map(|x| table.var(x).scale(&cp(w[x]))).collect();
        (0..k).all(|x| {
            (0..k).all(|y| {
                let lhs = table.entries[x][y].scale(&cp(w[x] + w[y]));
                let rhs = table.entries[x][y].substitute(&images).expect("polynomial");
                lhs == rhs
            })
        })
    })
}

/// Loaf comparison: the bracket of `M(n) × (ℂ*)^{2n-1}` computed by the
/// oracle (with `L_k^m ↦ l_k`), pulled back along
/// `ã_{i,j} = a_{i,j} Π_k l_k^{(ζ_i+ξ_j)_k}`, against the `℘`-table with
/// `a ↦ ã`. Returns the pairs where they differ.
pub fn loaf_mismatches(spec: &AlgebraSpec, m: u32) -> Result<Vec<((usize, usize), (usize, usize))>> {
    let n = spec.n;
    let ext = bracket_table_pres(Presentation::modified(&AlgebraSpec::standard(n)?, true), m)?;
    let target = bracket_table(spec, m)?;
    let r = rank_of(n);
    let k = ext.nvars();
    let pairs = spec.pairs();
    let tilde: Vec<PoissonPoly> = pairs
        .iter()
        .enumerate()
        .map(|(x, (i, j))| {
            let mut e = vec![0i32; k];
            e[r + x] = 1;
            for (node, v) in spec.shift(*i, *j).0.iter().enumerate() {
                e[node] = *v as i32;
            }
            PoissonPoly::monomial(e, BigRational::one())
        })
        .collect();
    let mut bad = Vec::new();
    for x in 0..pairs.len() {
        for y in (x + 1)..pairs.len() {
            let lhs = poisson_bracket(&ext, &tilde[x], &tilde[y]);
            let rhs = target.entries[x][y].substitute(&tilde).ok_or(QmaError::NonRationalBracket)?;
            if lhs != rhs {
                bad.push((pairs[x], pairs[y]));
            }
        }
    }
    Ok(bad)
}

/// Which reading of the crossing bracket `{a_{i,j}, a_{s,t}}`, `i<s, j<t`,
/// the oracle produces for the standard family.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CrossingVerdict {
    pub pair: ((usize, usize), (usize, usize)),
    pub oracle: String,
    pub matches_displayed: bool,
    pub matches_classical: bool,
}

pub fn crossing_verdict(n: usize, m: u32) -> Result<Vec<CrossingVerdict>> {
    let spec = AlgebraSpec::standard(n)?;
    let table = bracket_table(&spec, m)?;
    let idx = |i: usize, j: usize| (i - 1) * n + (j - 1);
    let mut out = Vec::new();
    for (i, j) in spec.pairs() {
        for (s, t) in spec.pairs() {
            if !(i < s && j < t) {
                continue;
            }
            let got = table.get(idx(i, j), idx(s, t));
            let two = rat(2);
            let displayed = (&table.var(idx(s, t)) * &table.var(idx(i, j))).scale(&two);
            let classical = (&table.var(idx(i, t)) * &table.var(idx(s, j))).scale(&two);
            out.push(CrossingVerdict {
                pair: ((i, j), (s, t)),
                oracle: got.display_with(&table.names),
                matches_displayed: *got == displayed,
                matches_classical: *got == classical,
            });
        }
    }
    Ok(out)
}

/// Zero pattern and values of the standard table as displayed for `℘ = 0`:
/// same row `{a_ij, a_ik} = a_ij a_ik` (`j<k`), same column likewise,
/// `0` for `i<s, t<j`. Returns the pairs that disagree.
pub fn standard_table_mismatches(table: &BracketTable, n: usize) -> Vec<((usize, usize), (usize, usize))> {
    let idx = |i: usize, j: usize| (i - 1) * n + (j - 1);
    let pairs = crate::rootdata::index_pairs(n);
    let mut bad = Vec::new();
    for &(i, j) in &pairs {
        for &(s, t) in &pairs {
            if (i, j) >= (s, t) {
                continue;
            }
            let got = table.get(idx(i, j), idx(s, t));
            let expected = if i == s || j == t {
                &table.var(idx(i, j)) * &table.var(idx(s, t))
            } else if t < j {
                PoissonPoly::zero(table.nvars())
            } else {
                continue;
            };
            if *got != expected {
                bad.push(((i, j), (s, t)));
            }
        }
    }
    bad
}

/// `true` iff the tables for two root orders coincide.
pub fn m_independent(spec: &AlgebraSpec, m1: u32, m2: u32) -> Result<bool> {
    Ok(bracket_table(spec, m1)? == bracket_table(spec, m2)?)
}
