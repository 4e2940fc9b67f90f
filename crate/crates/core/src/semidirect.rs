//! The extended algebra `A_n = ℂ[L_1^{±1}, .., L_{2n-1}^{±1}] ⋉ M_q(n)` and
//! its coproduct.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{QmaError, Result};
use crate::ncengine::{Engine, GenKind, Poly, Presentation};
use crate::qcoeff::{CoeffRing, CycRing, LaurentRing};
use crate::rootdata::{index_pairs, mu, nu, AlgebraSpec, Family, BETA};
use crate::skewform::{defining_matrix, SkewIntMatrix};

/// Defining matrix of `A_n` built over `spec`, `L`-generators last.
pub fn extended_defining_matrix(spec: &AlgebraSpec) -> SkewIntMatrix {
    defining_matrix(spec, true)
}

/// Presentation of `A_n` over the standard algebra.
pub fn extended_presentation(n: usize) -> Result<Presentation> {
    Ok(Presentation::modified(&AlgebraSpec::standard(n)?, true))
}

/// Splitting `Δ(L_β) = L_β^a ⊗ L_β^b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoproductRule {
    pub a: i32,
    pub b: i32,
}

impl CoproductRule {
    pub const LEFT: CoproductRule = CoproductRule { a: 1, b: 0 };
    pub const RIGHT: CoproductRule = CoproductRule { a: 0, b: 1 };

    /// Any pair is accepted so that `a + b != 1` can serve as a control.
    pub fn new(a: i32, b: i32) -> Self {
        CoproductRule { a, b }
    }
}

/// Outcome of the bialgebra checks on `A_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoproductReport {
    pub n: usize,
    pub rule: CoproductRule,
    /// Defining relations whose image under `Δ` does not vanish.
    pub failed_relations: Vec<String>,
    /// Generators on which `(Δ⊗id)Δ ≠ (id⊗Δ)Δ`.
    pub coassociativity_failures: Vec<String>,
    /// Generators `x` with `(ε⊗id)Δ(x) ≠ x` or `(id⊗ε)Δ(x) ≠ x`.
    pub counit_failures: Vec<String>,
    /// Relations not annihilated by `ε` (informational).
    pub counit_relation_failures: Vec<String>,
}

impl CoproductReport {
    pub fn pass(&self) -> bool {
        self.failed_relations.is_empty() && self.coassociativity_failures.is_empty() && self.counit_failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "a": self.rule.a,
            "b": self.rule.b,
            "pass": self.pass(),
            "failed_relations": self.failed_relations,
            "coassociativity_failures": self.coassociativity_failures,
            "counit_failures": self.counit_failures,
            "counit_relation_failures": self.counit_relation_failures,
        })
    }
}

/// Images under an algebra map, evaluated letter by letter on ordered monomials.
fn apply_map<R: CoeffRing>(
    target: &Engine<R>,
    p: &Poly<R::Elem>,
    image: &dyn Fn(usize) -> Poly<R::Elem>,
) -> Poly<R::Elem> {
    let ring = target.ring();
    let mut out = Poly::zero();
    for (mono, c) in &p.terms {
        let mut acc = target.one();
        for (g, e) in mono.0.iter().enumerate() {
            if *e == 0 {
                continue;
            }
            let img = image(g);
            let f = if *e > 0 {
                target.power(&img, *e)
            } else {
                target.power(&target.power(&img, -1).expect("invertible image"), -*e)
            }
            .expect("power");
            acc = target.mul(&acc, &f);
        }
        out.add_scaled(ring, &acc, c);
    }
    out
}

struct Coproduct {
    n: usize,
    rule: CoproductRule,
}

impl Coproduct {
    /// `Δ(g)` with the two tensor factors in slots `s` and `s + 1` of `eng`.
    fn image<R: CoeffRing>(&self, base: &Presentation, eng: &Engine<R>, g: usize, s: u8) -> Poly<R::Elem> {
        let pres = eng.presentation();
        match base.label(g).kind {
            GenKind::Z(i, j) => {
                let mut out = Poly::zero();
                for a in 1..=self.n {
                    let t = eng.mul(&eng.gen(pres.z_in(s, i, a)), &eng.gen(pres.z_in(s + 1, a, j)));
                    out.add_poly(eng.ring(), &t);
                }
                out
            }
            GenKind::L(k) => {
                let node = k - 1;
                let (a, b) = if node == BETA {
                    (self.rule.a, self.rule.b)
                } else if (1..self.n).any(|i| mu(self.n, i) == node) {
                    (1, 0)
                } else {
                    debug_assert!((1..self.n).any(|j| nu(self.n, j) == node));
                    (0, 1)
                };
                let left = eng.mul_poly_gen_pow(&eng.one(), pres.l_in(s, k), a);
                eng.mul_poly_gen_pow(&left, pres.l_in(s + 1, k), b)
            }
            GenKind::Plane(_) => unreachable!("no plane generators in the extended algebra"),
        }
    }
}

fn counit<R: CoeffRing>(base: &Presentation, eng: &Engine<R>, g: usize) -> Poly<R::Elem> {
    match base.label(g).kind {
        GenKind::Z(i, j) if i != j => eng.zero(),
        _ => eng.one(),
    }
}

/// Bialgebra checks for `A_n` under `Δ(Z_{i,j}) = Σ_α Z_{i,α} ⊗ Z_{α,j}`,
/// `Δ(L_μ) = L_μ ⊗ 1`, `Δ(L_ν) = 1 ⊗ L_ν`, `Δ(L_β) = L_β^a ⊗ L_β^b`, and
/// `ε(Z_{i,j}) = δ_{i,j}`, `ε(L) = 1`.
pub fn coproduct_report(n: usize, rule: CoproductRule) -> Result<CoproductReport> {
    if !(2..=3).contains(&n) {
        return Err(QmaError::InvalidArgument(format!("coproduct checks need n in 2..=3, got {}", n)));
    }
    let base = Arc::new(extended_presentation(n)?);
    let one = Engine::new(base.clone(), LaurentRing);
    let two = Engine::new(Arc::new(Presentation::tensor(&[&base, &base])), LaurentRing);
    let three = Engine::new(Arc::new(Presentation::tensor(&[&base, &base, &base])), LaurentRing);
    let cop = Coproduct { n, rule };
    let k = base.len();
    let label = |g: usize| base.label(g).to_string();
    let rel_name = |r: &crate::ncengine::QuadRelation| format!("{}·{}", label(r.terms[0].1), label(r.terms[0].2));

    let relations = base.relations();
    let delta = |g: usize| cop.image(&base, &two, g, 1);
    let failed_relations = relations
        .iter()
        .zip(two.relation_images(&relations, &delta))
        .filter(|(_, img)| !img.is_zero())
        .map(|(r, _)| rel_name(r))
        .collect();
    let eps_images = one.relation_images(&relations, &|g| counit(&base, &one, g));
    let counit_relation_failures = relations
        .iter()
        .zip(eps_images)
        .filter(|(_, img)| !img.is_zero())
        .map(|(r, _)| rel_name(r))
        .collect();

    let mut coassociativity_failures = Vec::new();
    let mut counit_failures = Vec::new();
    for g in 0..k {
        let d = delta(g);
        // slot-1 letters of the tensor square are generators 0..k, slot-2 letters k..2k
        let left = apply_map(&three, &d, &|x| {
            if x < k {
                cop.image(&base, &three, x, 1)
            } else {
                three.gen(three.presentation().index_of(shift_slot(base.label(x - k), 2)).expect("slot 3"))
            }
        });
        let right = apply_map(&three, &d, &|x| {
            if x < k {
                three.gen(x)
            } else {
                cop.image(&base, &three, x - k, 2)
            }
        });
        if left != right {
            coassociativity_failures.push(label(g));
        }
        let eps_left = apply_map(&one, &d, &|x| if x < k { counit(&base, &one, x) } else { one.gen(x - k) });
        let eps_right = apply_map(&one, &d, &|x| if x < k { one.gen(x) } else { counit(&base, &one, x - k) });
        if eps_left != one.gen(g) || eps_right != one.gen(g) {
            counit_failures.push(label(g));
        }
    }
    Ok(CoproductReport {
        n,
        rule,
        failed_relations,
        coassociativity_failures,
        counit_failures,
        counit_relation_failures,
    })
}

fn shift_slot(l: crate::ncengine::GenLabel, by: u8) -> crate::ncengine::GenLabel {
    crate::ncengine::GenLabel { slot: l.slot + by, kind: l.kind }
}

/// `Δ` respects every relation, is coassociative and counital on generators.
pub fn coproduct_check(n: usize, rule: CoproductRule) -> Result<bool> {
    Ok(coproduct_report(n, rule)?.pass())
}

/// `Δ(Z_{i,j})^m = Σ_α Z_{i,α}^m ⊗ Z_{α,j}^m` in `M_q(n)^{⊗2}` over `ring`.
pub fn coproduct_power_entry<R: CoeffRing>(n: usize, m: u32, i: usize, j: usize, ring: R) -> Result<bool> {
    if !(1..=n).contains(&i) || !(1..=n).contains(&j) {
        return Err(QmaError::IndexOutOfRange(i, j, n));
    }
    let base = Presentation::modified(&AlgebraSpec::standard(n)?, false);
    let eng = Engine::new(Arc::new(Presentation::tensor(&[&base, &base])), ring);
    let pres = eng.presentation().clone();
    let mut delta = Poly::zero();
    let mut target = Poly::zero();
    for a in 1..=n {
        let (x, y) = (pres.z_in(1, i, a), pres.z_in(2, a, j));
        delta.add_poly(eng.ring(), &eng.mul(&eng.gen(x), &eng.gen(y)));
        target.add_poly(eng.ring(), &eng.mul(&eng.gen_pow(x, m as i32), &eng.gen_pow(y, m as i32)));
    }
    Ok(eng.power(&delta, m as i32)? == target)
}

/// The power identity for every entry at `q = ζ_m`.
pub fn coproduct_power_check(n: usize, m: u32) -> Result<bool> {
    if m < 3 || !(2..=3).contains(&n) {
        return Err(QmaError::InvalidArgument(format!("need m >= 3 and n in 2..=3, got m={} n={}", m, n)));
    }
    let ring = CycRing::new(m)?;
    for (i, j) in index_pairs(n) {
        if !coproduct_power_entry(n, m, i, j, ring)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Z̃_{i,j} ↦ Z_{i,j} · L^{shift(i,j)}` maps every relation of the family
/// into zero inside `A_n`.
pub fn cross_section_check(spec: &AlgebraSpec) -> Result<bool> {
    let n = spec.n;
    let ext = Engine::new(Arc::new(extended_presentation(n)?), LaurentRing);
    let pres = ext.presentation().clone();
    let image = |g: usize| {
        let (i, j) = index_pairs(n)[g];
        let mut p = ext.z(i, j);
        for (k, c) in spec.shift(i, j).0.iter().enumerate() {
            p = ext.mul_poly_gen_pow(&p, pres.l(k + 1), *c as i32);
        }
        p
    };
    let target = Presentation::modified(spec, false);
    Ok(ext.relation_images(&target.relations(), &image).iter().all(|p| p.is_zero()))
}

/// Cross sections for every named family.
pub fn named_cross_sections(n: usize) -> Result<Vec<(Family, bool)>> {
    Family::NAMED.iter().map(|f| Ok((*f, cross_section_check(&AlgebraSpec::named(*f, n)?)?))).collect()
}
