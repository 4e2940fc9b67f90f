//! Poisson property of matrix multiplication between two structures.

use crate::error::Result;
use crate::rootdata::{AlgebraSpec, Family};

use super::{bracket_table, explicit_bracket_table, poisson_bracket, BracketTable, PoissonPoly};

/// Source structures and target of `μ: M × M → M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pairing {
    /// `M_D × M_{J^z} → M_{J^z}`.
    DJz,
    /// `M_{J^n} × M_{J^0} → M_{J^0}`.
    JnJ0,
    /// `M_{J^z} × M_D → M_{J^z}`, the factors swapped.
    JzD,
}

impl Pairing {
    pub fn families(&self) -> (Family, Family, Family) {
        match self {
            Pairing::DJz => (Family::Dipper, Family::Jz, Family::Jz),
            Pairing::JnJ0 => (Family::Jn, Family::J0, Family::J0),
            Pairing::JzD => (Family::Jz, Family::Dipper, Family::Jz),
        }
    }
}

/// Which structure stands for `D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DipperReading {
    /// `D_q(n)` in its own generators.
    Explicit,
    /// The modification `M_q^℘(n)` with the dipper vector.
    Modified,
}

fn table_for(family: Family, n: usize, m: u32, reading: DipperReading) -> Result<BracketTable> {
    if family == Family::Dipper && reading == DipperReading::Explicit {
        explicit_bracket_table(family, n, m)
    } else {
        bracket_table(&AlgebraSpec::named(family, n)?, m)
    }
}

/// Coordinate pairs `(u, v)` of the target with
/// `{μ*a_u, μ*a_v}_{first ⊕ second} ≠ μ*{a_u, a_v}_{target}`.
pub fn multiplicativity_failures(first: &BracketTable, second: &BracketTable, target: &BracketTable, n: usize) -> Vec<(usize, usize)> {
    let prod = first.direct_sum(second, ("x.", "y."));
    let k = 2 * n * n;
    let x = |i: usize, j: usize| PoissonPoly::var(k, (i - 1) * n + (j - 1));
    let y = |i: usize, j: usize| PoissonPoly::var(k, n * n + (i - 1) * n + (j - 1));
    let mu: Vec<PoissonPoly> = (1..=n)
        .flat_map(|i| (1..=n).map(move |j| (i, j)))
        .map(|(i, j)| {
            let mut p = PoissonPoly::zero(k);
            for c in 1..=n {
                p = &p + &(&x(i, c) * &y(c, j));
            }
            p
        })
        .collect();
    let mut bad = Vec::new();
    for u in 0..n * n {
        for v in (u + 1)..n * n {
            let lhs = poisson_bracket(&prod, &mu[u], &mu[v]);
            let rhs = target.entries[u][v].substitute(&mu).expect("polynomial table");
            if lhs != rhs {
                bad.push((u, v));
            }
        }
    }
    bad
}

pub fn poisson_multiplicativity_check(pairing: Pairing, n: usize, m: u32, reading: DipperReading) -> Result<bool> {
    let (f1, f2, ft) = pairing.families();
    let t1 = table_for(f1, n, m, reading)?;
    let t2 = table_for(f2, n, m, reading)?;
    let tt = table_for(ft, n, m, reading)?;
    Ok(multiplicativity_failures(&t1, &t2, &tt, n).is_empty())
}
