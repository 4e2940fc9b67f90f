//! The verification battery: twelve criteria, each a list of named claims.
//!
//! `Quick` restricts every criterion to `n <= 2`; `Full` runs the complete
//! ranges. Reports are ordered by criterion and claim id and contain no
//! timing unless asked for, so they are reproducible byte for byte.

use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::Signed;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::detcenter::{certify_family_center, laplace_check, qprop_check, LaplaceMode};
use crate::error::Result;
use crate::ncengine::checks::{central_check, cyc_engine, diamond_failures, laurent_engine};
use crate::ncengine::{Engine, Presentation};
use crate::poissonleaf::{
    bracket_table, crossing_verdict, family_membership, jacobi_failures, l_omega_rank, longest_rank_prediction,
    minor_ideal_check, perturbations, standard_table_mismatches, antisymmetric, variety_witnesses, RowsReading,
    WeylElement,
};
use crate::qcoeff::{rat, LaurentRing, RationalAt};
use crate::report::Claim;
use crate::rootdata::{AlgebraSpec, Family};
use crate::semidirect::{coproduct_power_check, coproduct_report, extended_defining_matrix, CoproductRule};
use crate::skewform::{
    closed_forms, defining_matrix, degree, determinant, explicit_defining_matrix, rank, skew_normal_form, SkewIntMatrix,
};
use crate::verma::{
    build_min_generalized_verma_j0, build_restricted_verma, irreducible, HighestWeight,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

impl Level {
    fn max_n(self, full: usize) -> usize {
        match self {
            Level::Quick => 2,
            Level::Full => full,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub level: Level,
    pub seed: u64,
    /// Perturbs one exchange exponent of the standard family before the
    /// degree computations (negative control).
    pub corrupt: bool,
}

impl SuiteOptions {
    pub fn new(level: Level) -> Self {
        SuiteOptions { level, seed: 2024, corrupt: false }
    }
}

/// Static description of one criterion.
#[derive(Clone, Copy, Debug)]
pub struct Criterion {
    pub number: usize,
    pub topic: &'static str,
    pub title: &'static str,
    /// Wall-time budget of the full run.
    pub budget: Duration,
}

pub const CRITERIA: [Criterion; 12] = [
    Criterion { number: 1, topic: "degree", title: "closed-form degrees of M_q(n), D_q(n), J0_q(n), A_n", budget: Duration::from_secs(10) },
    Criterion { number: 2, topic: "canonical-form", title: "canonical blocks, ranks and congruence certificates", budget: Duration::from_secs(10) },
    Criterion { number: 3, topic: "pbw", title: "3-letter overlap ambiguities resolve", budget: Duration::from_secs(120) },
    Criterion { number: 4, topic: "laplace", title: "quantum Laplace expansions and modified exponent solver", budget: Duration::from_secs(120) },
    Criterion { number: 5, topic: "center", title: "listed center generators are central at roots of unity", budget: Duration::from_secs(600) },
    Criterion { number: 6, topic: "root-of-unity", title: "central m-th powers, det_q^m, power coproduct", budget: Duration::from_secs(300) },
    Criterion { number: 7, topic: "poisson-oracle", title: "semiclassical bracket table, Jacobi identity, crossing verdict", budget: Duration::from_secs(300) },
    Criterion { number: 8, topic: "leaves", title: "longest-element leaf ranks", budget: Duration::from_secs(1) },
    Criterion { number: 9, topic: "minor-ideal", title: "minor bracket lemmas and minor ideal invariance", budget: Duration::from_secs(120) },
    Criterion { number: 10, topic: "verma", title: "Verma module dimensions, irreducibility, degree match", budget: Duration::from_secs(600) },
    Criterion { number: 11, topic: "variety", title: "variety witnesses and perturbations", budget: Duration::from_secs(60) },
    Criterion { number: 12, topic: "bialgebra", title: "coproduct on the extended algebra", budget: Duration::from_secs(120) },
];

/// Claims that fail on a correct build because the stated value is not what
/// the mathematics gives; each entry is `(claim id, reason)`.
pub const KNOWN_DEVIATIONS: [(&str, &str); 8] = [
    ("degree.extended.n3.m4", "A_3 has a block S(2) (invariant factors 1^10, 2^2), so even m gives 2048, not 4096"),
    ("degree.extended.n4.m4", "A_4 has three blocks S(2), so even m gives 131072, not 524288"),
    ("rank.jn.n2", "the Jn defining matrix at n = 2 has rank 2, not n^2 = 4"),
    ("leaf-longest-rank.jn.n2", "both Jn dressing matrices are symmetric at n = 2, so L vanishes"),
    ("coproduct-counit.n2.a1b0", "no scalar counit undoes L -> L (x) 1"),
    ("coproduct-counit.n2.a0b1", "no scalar counit undoes L -> L (x) 1"),
    ("coproduct-counit.n3.a1b0", "no scalar counit undoes L -> L (x) 1"),
    ("coproduct-counit.n3.a0b1", "no scalar counit undoes L -> L (x) 1"),
];

pub fn known_deviation(id: &str) -> Option<&'static str> {
    KNOWN_DEVIATIONS.iter().find(|(k, _)| *k == id).map(|(_, r)| *r)
}

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub criterion: Criterion,
    pub claims: Vec<Claim>,
    pub elapsed: Duration,
}

impl CriterionReport {
    pub fn pass(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }

    pub fn failing(&self) -> Vec<&str> {
        self.claims.iter().filter(|c| !c.pass).map(|c| c.id.as_str()).collect()
    }

    pub fn to_json(&self, timings: bool) -> Value {
        let claims: Vec<Value> = self
            .claims
            .iter()
            .map(|c| {
                let mut v = json!({"id": c.id, "pass": c.pass, "detail": c.detail, "topic": self.criterion.topic});
                if let (false, Some(r)) = (c.pass, known_deviation(&c.id)) {
                    v["known_deviation"] = json!(r);
                }
                v
            })
            .collect();
        let mut v = json!({
            "criterion": self.criterion.number,
            "topic": self.criterion.topic,
            "title": self.criterion.title,
            "pass": self.pass(),
            "claims": claims,
        });
        if timings {
            v["seconds"] = json!(self.elapsed.as_secs_f64());
        }
        v
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub level: Level,
    pub criteria: Vec<CriterionReport>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.criteria.iter().all(|c| c.pass())
    }

    pub fn failing(&self) -> Vec<&str> {
        self.criteria.iter().flat_map(|c| c.failing()).collect()
    }

    /// Failures not listed in [`KNOWN_DEVIATIONS`].
    pub fn unexpected_failures(&self) -> Vec<&str> {
        self.failing().into_iter().filter(|id| known_deviation(id).is_none()).collect()
    }

    pub fn to_json(&self, timings: bool) -> Value {
        json!({
            "level": match self.level { Level::Quick => "quick", Level::Full => "full" },
            "pass": self.pass(),
            "failing": self.failing(),
            "unexpected_failures": self.unexpected_failures(),
            "criteria": self.criteria.iter().map(|c| c.to_json(timings)).collect::<Vec<_>>(),
        })
    }
}

pub fn run_suite(opts: &SuiteOptions) -> Result<SuiteReport> {
    let criteria = (1..=CRITERIA.len())
        .into_par_iter()
        .map(|k| run_criterion(k, opts))
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport { level: opts.level, criteria })
}

pub fn run_criterion(k: usize, opts: &SuiteOptions) -> Result<CriterionReport> {
    let start = Instant::now();
    let mut claims = match k {
        1 => degrees(opts)?,
        2 => canonical_forms(opts)?,
        3 => confluence(opts)?,
        4 => laplace(opts)?,
        5 => centers(opts)?,
        6 => root_of_unity(opts)?,
        7 => poisson_oracle(opts)?,
        8 => leaves(opts)?,
        9 => minor_ideal(opts)?,
        10 => verma(opts)?,
        11 => varieties(opts)?,
        12 => bialgebra(opts)?,
        _ => return Err(crate::error::QmaError::InvalidArgument(format!("no criterion {}", k))),
    };
    claims.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(CriterionReport { criterion: CRITERIA[k - 1], claims, elapsed: start.elapsed() })
}

fn corrupted(mut m: SkewIntMatrix) -> SkewIntMatrix {
    m.entries[0][1] += 1;
    m.entries[1][0] -= 1;
    m
}

fn degrees(opts: &SuiteOptions) -> Result<Vec<Claim>> {
    let mut claims = Vec::new();
    for n in 2..=opts.level.max_n(4) {
        for m in [3u32, 4, 5] {
            let mut std_matrix = defining_matrix(&AlgebraSpec::standard(n)?, false);
            if opts.corrupt {
                std_matrix = corrupted(std_matrix);
            }
            let cases: [(&str, SkewIntMatrix, BigUint); 4] = [
                ("standard", std_matrix, closed_forms::standard(n, m)),
                ("dipper", explicit_defining_matrix(Family::Dipper, n), closed_forms::dipper_donkin(n, m)),
                ("j0", defining_matrix(&AlgebraSpec::named(Family::J0, n)?, false), closed_forms::j0(n, m)),
                ("extended", extended_defining_matrix(&AlgebraSpec::standard(n)?), closed_forms::extended(n, m)),
            ];
            for (name, mat, expected) in cases {
                claims.push(Claim::eq(format!("degree.{}.n{}.m{}", name, n, m), degree(&mat, m)?, expected));
            }
        }
    }
    Ok(claims)
}

fn canonical_forms(opts: &SuiteOptions) -> Result<Vec<Claim>> {
    let mut claims = Vec::new();
    for n in 2..=opts.level.max_n(5) {
        let nn = n * n;
        for f in [Family::J0, Family::Jz, Family::Jn] {
            let mat = defining_matrix(&AlgebraSpec::named(f, n)?, false);
            let cf = skew_normal_form(&mat);
            let tag = format!("{}.n{}", f, n);
            let w = &cf.transform;
            let det = determinant(w);
            claims.push(Claim::new(
                format!("certificate.{}", tag),
                mat.congruence(w) == cf.block_matrix() && det.abs() == BigInt::from(1),
                format!("W·M·Wᵀ equals the block form; det W = {}", det),
            ));
            let r = rank(&mat);
            match f {
                Family::J0 => {
                    let mut expect = vec![1u64];
                    expect.extend(std::iter::repeat_n(2, (nn - n) / 2 - 1));
                    claims.push(Claim::eq(format!("blocks.{}", tag), cf.blocks_u64(), expect));
                }
                Family::Jz => {
                    claims.push(Claim::eq(format!("blocks.{}", tag), cf.blocks_u64(), vec![2u64; (nn - n) / 2]));
                    claims.push(Claim::eq(format!("rank.{}", tag), r, nn - n));
                }
                _ => {
                    let expect = if n % 2 == 0 { nn } else { nn - 1 };
                    claims.push(Claim::eq(format!("rank.{}", tag), r, expect));
                }
            }
        }
    }
    Ok(claims)
}

fn confluence(opts: &SuiteOptions) -> Result<Vec<Claim>> {
    let mut claims = Vec::new();
    for f in Family::NAMED {
        for n in 2..=opts.level.max_n(3) {
            let spec = AlgebraSpec::named(f, n)?;
            for with_l in [false, true] {
                let bad = diamond_failures(&laurent_engine(&spec, with_l));
                let id = format!("diamond.{}.n{}{}", f, n, if with_l { ".with-l" } else { "" });
                claims.push(Claim::new(id, bad.is_empty(), format!("unresolved overlaps: {:?}", bad)));
            }
        }
    }
    // a perturbed exponent must produce unresolved overlaps
    let n = opts.level.max_n(3);
    let mut bad = Presentation::modified(&AlgebraSpec::standard(n)?, false);
    bad.perturb_exchange(0, n * n - 1, 1);
    let failures = diamond_failures(&Engine::new(std::sync::Arc::new(bad), LaurentRing));
    if n == 3 {
        claims.push(Claim::new(
            "diamond.perturbed-control.n3",
            !failures.is_empty(),
            format!("{} unresolved overlaps", failures.len()),
        ));
    }
    Ok(claims)
}

fn laplace(opts: &SuiteOptions) -> Result<Vec<Claim>> {
    let mut claims = Vec::new();
    for n in 2..=opts.level.max_n(3) {
        let spec = AlgebraSpec::standard(n)?;
        for i in 1..=n {
            for k in 1..=n {
                for mode in [LaplaceMode::Row, LaplaceMode::Column] {
                    let r = laplace_check(&spec, mode, i, k)?;
                    let ok = r.pass && r.exponents.values().all(|e| *e == 0);
                    claims.push(Claim::new(format!("laplace.standard.n{}.{:?}.i{}.k{}", n, mode, i, k).to_lowercase(), ok, ""));
                }
            }
        }
    }
    for f in [Family::J0, Family::Jz] {
        let spec = AlgebraSpec::named(f, 2)?;
        for i in 1..=2 {
            for k in 1..=2 {
                for mode in [LaplaceMode::Row, LaplaceMode::Column] {
                    let (ok, detail) = match laplace_check(&spec, mode, i, k) {
                        Ok(r) => (r.pass, format!("exponents {:?}", r.exponents)),
                        Err(e) => (false, e.to_string()),
                    };
                    claims.push(Claim::new(format!("laplace-solver.{}.n2.{:?}.i{}.k{}", f, mode, i, k).to_lowercase(), ok, detail));
                }
            }
        }
    }
    Ok(claims)
}

fn centers(opts: &SuiteOptions) -> Result<Vec<Claim>> {
    let cases = [(Family::J0, 3u32), (Family::J0, 4), (Family::Jz, 3)];
    let mut claims = Vec::new();
    for (f, m) in cases {
        for n in 2..=opts.level.max_n(3) {
            let results = certify_family_center(f, n, m)?;
            let bad: Vec<_> = results.iter().filter(|(_, ok)| !ok).map(|(l, _)| l.clone()).collect();
            claims.push(Claim::new(
                format!("center.{}.n{}.m{}", f, n, m),
                bad.is_empty() && !results.is_empty(),
                format!("{} generators certified; failing: {:?}", results.len(), bad),
            ));
        }
    }
    Ok(claims)
}

fn root_of_unity(opts: &SuiteOptions) -> Result<Vec<Claim>> {
    let mut claims = Vec::new();
    for f in Family::NAMED {
        for n in 2..=opts.level.max_n(3) {
            for m in [3u32, 4, 5] {
                let spec = AlgebraSpec::named(f, n)?;
                let eng = cyc_engine(&spec, false, m)?;
                let bad: Vec<_> = spec
                    .pairs()
                    .into_iter()
                    .filter(|(i, j)| !central_check(&eng, &eng.gen_pow(eng.presentation().z(*i, *j), m as i32)))
                    .collect();
                claims.push(Claim::new(format!("power-central.{}.n{}.m{}", f, n, m), bad.is_empty(), format!("non-central: {:?}", bad)));
            }
        }
    }
    for n in 2..=opts.level.max_n(3) {
        claims.push(Claim::new(format!("det-power.n{}.m3", n), qprop_check(n, 3)?, "det_q^m = det(Z^m)"));
    }
    claims.push(Claim::new("coproduct-power.n2.m3", coproduct_power_check(2, 3)?, "Δ(Z^m) = Σ Z^m ⊗ Z^m"));
    Ok(claims)
}

fn poisson_oracle(opts: &SuiteOptions) -> Result<Vec<Claim>> {
    let mut claims = Vec::new();
    for n in 2..=opts.level.max_n(3) {
        for m in [3u32, 5] {
            let table = bracket_table(&AlgebraSpec::standard(n)?, m)?;
            let bad = standard_table_mismatches(&table, n);
            claims.push(Claim::new(format!("oracle-table.n{}.m{}", n, m), bad.is_empty(), format!("mismatches: {:?}", bad)));
            let verdicts = crossing_verdict(n, m)?;
            let classical = verdicts.iter().filter(|v| v.matches_classical && !v.matches_displayed).count();
            let displayed = verdicts.iter().filter(|v| v.matches_displayed && !v.matches_classical).count();
            claims.push(Claim::new(
                format!("crossing-verdict.n{}.m{}", n, m),
                classical + displayed == verdicts.len(),
                format!(
                    "{} crossing pairs: {} match 2·a_it·a_sj (classical), {} match 2·a_st·a_ij (as displayed)",
                    verdicts.len(),
                    classical,
                    displayed
                ),
            ));
        }
        for f in Family::NAMED {
            let table = bracket_table(&AlgebraSpec::named(f, n)?, 3)?;
            let bad = jacobi_failures(&table);
            claims.push(Claim::new(
                format!("jacobi.{}.n{}", f, n),
                bad.is_empty() && antisymmetric(&table),
                format!("failing triples: {}", bad.len()),
            ));
        }
    }
    Ok(claims)
}

fn leaves(opts: &SuiteOptions) -> Result<Vec<Claim>> {
    let mut claims = Vec::new();
    for f in [Family::J0, Family::Jz, Family::Dipper, Family::Jn] {
        for n in 2..=opts.level.max_n(6) {
            let r = l_omega_rank(f, &WeylElement::longest(n))?;
            claims.push(Claim::eq(format!("leaf-longest-rank.{}.n{}", f, n), Some(r), longest_rank_prediction(f, n)));
        }
    }
    Ok(claims)
}

fn minor_ideal(opts: &SuiteOptions) -> Result<Vec<Claim>> {
    Ok(minor_ideal_check(opts.level.max_n(3), 3)?.claims)
}

fn verma(opts: &SuiteOptions) -> Result<Vec<Claim>> {
    let mut claims = Vec::new();
    let max_n = opts.level.max_n(3);
    for n in 2..=max_n {
        for m in [3u32, 4, 5] {
            for f in [Family::Standard, Family::J0, Family::Jz] {
                let spec = AlgebraSpec::named(f, n)?;
                let rep = build_restricted_verma(&spec, m, &HighestWeight::ones(n, m))?;
                let expected = closed_forms::verma_restricted(n, m);
                claims.push(Claim::eq(format!("verma-dim.restricted.{}.n{}.m{}", f, n, m), BigUint::from(rep.dimension), expected));
                if m % 2 == 1 {
                    let d = degree(&defining_matrix(&spec, false), m)?;
                    claims.push(Claim::eq(format!("verma-degree.restricted.{}.n{}.m{}", f, n, m), BigUint::from(rep.dimension), d));
                }
            }
            let rep = build_min_generalized_verma_j0(n, m, &HighestWeight::ones(n, m))?;
            claims.push(Claim::eq(
                format!("verma-dim.j0-minimal.n{}.m{}", n, m),
                BigUint::from(rep.dimension),
                closed_forms::verma_j0_minimal(n, m),
            ));
            if m % 2 == 1 {
                let d = degree(&defining_matrix(&AlgebraSpec::named(Family::J0, n)?, false), m)?;
                claims.push(Claim::eq(format!("verma-degree.j0-minimal.n{}.m{}", n, m), BigUint::from(rep.dimension), d));
            }
            if m != 5 {
                claims.push(Claim::new(format!("verma-irreducible.j0-minimal.n{}.m{}", n, m), irreducible(&rep), "Λ = 1, φ = 1"));
            }
        }
    }
    let spec = AlgebraSpec::standard(2)?;
    for m in [3u32, 4] {
        for lam in [[1i64, 1], [2, -1], [1, 0], [0, 1], [0, 0]] {
            let rep = build_restricted_verma(&spec, m, &HighestWeight::from_ints(m, &lam))?;
            let expected = lam.iter().all(|l| *l != 0);
            claims.push(Claim::eq(
                format!("verma-irreducible.restricted.standard.n2.m{}.lambda{}_{}", m, lam[0], lam[1]),
                irreducible(&rep),
                expected,
            ));
        }
    }
    Ok(claims)
}

fn varieties(opts: &SuiteOptions) -> Result<Vec<Claim>> {
    let ring = RationalAt { q: rat(5) };
    let mut claims = Vec::new();
    for f in [Family::Dipper, Family::J0, Family::Jz, Family::Jn] {
        for n in 2..=opts.level.max_n(3) {
            let ws = variety_witnesses(f, n, &ring, opts.seed, RowsReading::Derived)?;
            let mut bad = Vec::new();
            for w in &ws {
                if !family_membership(f, n, &ring, &w.a, &w.b)? {
                    bad.push(w.label.clone());
                }
            }
            claims.push(Claim::new(
                format!("variety-witnesses.{}.n{}", f, n),
                bad.is_empty(),
                format!("{} witnesses; non-members: {:?}", ws.len(), bad),
            ));
            let mut members = Vec::new();
            for w in perturbations(&ws, &ring, 100, opts.seed.wrapping_add(1)) {
                if family_membership(f, n, &ring, &w.a, &w.b)? {
                    members.push(w.label);
                }
            }
            claims.push(Claim::new(
                format!("variety-perturbations.{}.n{}", f, n),
                members.is_empty(),
                format!("100 perturbations at q = 5; members: {:?}", members),
            ));
        }
    }
    Ok(claims)
}

fn bialgebra(opts: &SuiteOptions) -> Result<Vec<Claim>> {
    let mut claims = Vec::new();
    for n in 2..=opts.level.max_n(3) {
        for rule in [CoproductRule::LEFT, CoproductRule::RIGHT] {
            let r = coproduct_report(n, rule)?;
            let tag = format!("n{}.a{}b{}", n, rule.a, rule.b);
            claims.push(Claim::new(
                format!("coproduct-relations.{}", tag),
                r.failed_relations.is_empty(),
                format!("failing: {:?}", r.failed_relations),
            ));
            claims.push(Claim::new(
                format!("coproduct-coassociative.{}", tag),
                r.coassociativity_failures.is_empty(),
                format!("failing: {:?}", r.coassociativity_failures),
            ));
            claims.push(Claim::new(
                format!("coproduct-counit.{}", tag),
                r.counit_failures.is_empty(),
                format!("failing generators: {:?}", r.counit_failures),
            ));
        }
    }
    let control = coproduct_report(2, CoproductRule::new(2, 0))?;
    claims.push(Claim::new("coproduct-control.n2.a2b0", !control.pass(), "a + b = 2 must fail"));
    Ok(claims)
}
