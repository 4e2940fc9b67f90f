//! Associated varieties: pairs `(A, B)` annihilated by every defining
//! relation read as a bilinear form.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{QmaError, Result};
use crate::families::explicit_presentation;
use crate::ncengine::{GenKind, Presentation};
use crate::qcoeff::{rat, CoeffRing};
use crate::rootdata::Family;

pub type Matrix<E> = Vec<Vec<E>>;

/// `f(A, B) = Σ c A_x B_y` for every relation `Σ c z_x z_y`.
pub fn relation_values<R: CoeffRing>(pres: &Presentation, ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Result<Vec<R::Elem>> {
    if ring.q_pow(2) == ring.one() {
        return Err(QmaError::DegenerateParameter);
    }
    let n = pres.n();
    for mat in [a, b] {
        if mat.len() != n || mat.iter().any(|r| r.len() != n) {
            return Err(QmaError::DimensionMismatch { expected: n, got: mat.len() });
        }
    }
    let entry = |mat: &Matrix<R::Elem>, g: usize| -> R::Elem {
        match pres.label(g).kind {
            GenKind::Z(i, j) => mat[i - 1][j - 1].clone(),
            _ => ring.zero(),
        }
    };
    Ok(pres
        .relations()
        .iter()
        .map(|rel| {
            let mut v = ring.zero();
            for (c, x, y) in &rel.terms {
                let t = ring.mul(&ring.from_laurent(c), &ring.mul(&entry(a, *x), &entry(b, *y)));
                ring.add_assign(&mut v, &t);
            }
            v
        })
        .collect())
}

pub fn variety_membership<R: CoeffRing>(pres: &Presentation, ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Result<bool> {
    Ok(relation_values(pres, ring, a, b)?.iter().all(|v| ring.is_zero(v)))
}

/// Membership for a named family, using its own relations (`D_q(n)` for `dipper`).
pub fn family_membership<R: CoeffRing>(family: Family, n: usize, ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Result<bool> {
    if family == Family::Custom {
        return Err(QmaError::CustomFamily);
    }
    variety_membership(&explicit_presentation(family, n), ring, a, b)
}

/// A point together with whether it is claimed to lie on the variety.
#[derive(Clone, Debug)]
pub struct Witness<E> {
    pub label: String,
    pub a: Matrix<E>,
    pub b: Matrix<E>,
    pub expected: bool,
}

fn int<R: CoeffRing>(ring: &R, k: i64) -> R::Elem {
    ring.from_rational(&rat(k))
}

fn zeros<R: CoeffRing>(ring: &R, n: usize) -> Matrix<R::Elem> {
    vec![vec![ring.zero(); n]; n]
}

fn nonzero(rng: &mut ChaCha8Rng) -> i64 {
    let v = rng.gen_range(1..=5);
    if rng.gen_bool(0.5) {
        v
    } else {
        -v
    }
}

/// `B_{ij} = q^{e(i,j)} A_{ij}`.
fn twist<R: CoeffRing>(ring: &R, a: &Matrix<R::Elem>, e: impl Fn(usize, usize) -> i64) -> Matrix<R::Elem> {
    a.iter()
        .enumerate()
        .map(|(i, row)| row.iter().enumerate().map(|(j, x)| ring.mul_q_pow(x, e(i + 1, j + 1))).collect())
        .collect()
}

/// Rank-one block `u vᵀ` placed at rows `r0..`, columns `c0..`.
fn place_rank_one<R: CoeffRing>(ring: &R, mat: &mut Matrix<R::Elem>, r0: usize, c0: usize, u: &[i64], v: &[i64]) {
    for (x, ux) in u.iter().enumerate() {
        for (y, vy) in v.iter().enumerate() {
            mat[r0 + x][c0 + y] = int(ring, ux * vy);
        }
    }
}

fn random_vec(rng: &mut ChaCha8Rng, len: usize) -> Vec<i64> {
    (0..len).map(|_| nonzero(rng)).collect()
}

/// Two blocks, the second strictly below and to the right of the first:
/// `(rows, cols)` intervals given by their start and length.
type BlockPlacement = ((usize, usize, usize, usize), (usize, usize, usize, usize));

fn block_placements(n: usize) -> Vec<BlockPlacement> {
    let mut out = Vec::new();
    for r1 in 0..n {
        for h1 in 1..=(n - r1) {
            for c1 in 0..n {
                for w1 in 1..=(n - c1) {
                    for r2 in (r1 + h1)..n {
                        for h2 in 1..=(n - r2) {
                            for c2 in (c1 + w1)..n {
                                for w2 in 1..=(n - c2) {
                                    out.push(((r1, h1, c1, w1), (r2, h2, c2, w2)));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Row staircases: `diag(A_1, …, A_k)` with `A_l` a `1×s_l` row, `Σ s_l = n`.
fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Which reading of the `D_q(n)` proportional-rows witness to generate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowsReading {
    /// `B = (qR; qcR)`, as displayed.
    AsDisplayed,
    /// `B = (qR; cR)`: the upper row carries the extra `q`.
    Derived,
}

/// The witness families of the classification theorems at size `n`, with
/// entries drawn from `seed`.
pub fn variety_witnesses<R: CoeffRing>(family: Family, n: usize, ring: &R, seed: u64, rows: RowsReading) -> Result<Vec<Witness<R::Elem>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let zero = Witness { label: "zero".into(), a: zeros(ring, n), b: zeros(ring, n), expected: true };
    out.push(zero);
    match family {
        Family::J0 | Family::Jz => {
            let shift = |k: i64| move |i: usize, j: usize| if family == Family::J0 { (i + j) as i64 + k } else { k };
            let u = random_vec(&mut rng, n);
            let v = random_vec(&mut rng, n);
            let mut a = zeros(ring, n);
            place_rank_one(ring, &mut a, 0, 0, &u, &v);
            let b = twist(ring, &a, shift(0));
            out.push(Witness { label: "rank-one".into(), a, b, expected: true });
            for ((r1, h1, c1, w1), (r2, h2, c2, w2)) in block_placements(n) {
                let mut a1 = zeros(ring, n);
                let mut a2 = zeros(ring, n);
                place_rank_one(ring, &mut a1, r1, c1, &random_vec(&mut rng, h1), &random_vec(&mut rng, w1));
                place_rank_one(ring, &mut a2, r2, c2, &random_vec(&mut rng, h2), &random_vec(&mut rng, w2));
                let b1 = twist(ring, &a1, shift(0));
                let b2 = twist(ring, &a2, shift(-2));
                let sum = |x: &Matrix<R::Elem>, y: &Matrix<R::Elem>| -> Matrix<R::Elem> {
                    x.iter()
                        .zip(y)
                        .map(|(rx, ry)| {
                            rx.iter()
                                .zip(ry)
                                .map(|(p, q)| {
                                    let mut s = p.clone();
                                    ring.add_assign(&mut s, q);
                                    s
                                })
                                .collect()
                        })
                        .collect()
                };
                out.push(Witness {
                    label: format!("two-block rows {}+{} cols {}+{} / rows {}+{} cols {}+{}", r1 + 1, h1, c1 + 1, w1, r2 + 1, h2, c2 + 1, w2),
                    a: sum(&a1, &a2),
                    b: sum(&b1, &b2),
                    expected: true,
                });
            }
        }
        Family::Dipper => {
            for top in 0..n {
                for bottom in (top + 1)..n {
                    let r = random_vec(&mut rng, n);
                    let c = nonzero(&mut rng);
                    let mut a = zeros(ring, n);
                    let mut b = zeros(ring, n);
                    for j in 0..n {
                        a[top][j] = int(ring, r[j]);
                        a[bottom][j] = int(ring, c * r[j]);
                        b[top][j] = ring.mul_q_pow(&int(ring, r[j]), 1);
                        b[bottom][j] = match rows {
                            RowsReading::AsDisplayed => ring.mul_q_pow(&int(ring, c * r[j]), 1),
                            RowsReading::Derived => int(ring, c * r[j]),
                        };
                    }
                    out.push(Witness { label: format!("rows {},{}", top + 1, bottom + 1), a, b, expected: true });
                }
            }
            for comp in compositions(n) {
                let mut a = zeros(ring, n);
                let mut col = 0;
                for (row, s) in comp.iter().enumerate() {
                    for _ in 0..*s {
                        a[row][col] = int(ring, nonzero(&mut rng));
                        col += 1;
                    }
                }
                let b = a.clone();
                out.push(Witness { label: format!("row staircase {:?}", comp), a, b, expected: true });
            }
        }
        Family::Jn => {
            for left in 0..n {
                for right in (left + 1)..n {
                    let r = random_vec(&mut rng, n);
                    let c = nonzero(&mut rng);
                    let mut a = zeros(ring, n);
                    let mut b = zeros(ring, n);
                    for k in 0..n {
                        // R′ is formed with the index of the column it sits in
                        a[k][left] = int(ring, r[k]);
                        a[k][right] = int(ring, c * r[k]);
                        b[k][left] = ring.mul_q_pow(&int(ring, r[k]), k as i64 - left as i64);
                        b[k][right] = ring.mul_q_pow(&int(ring, c * r[k]), k as i64 - right as i64 + 2);
                    }
                    out.push(Witness { label: format!("columns {},{}", left + 1, right + 1), a, b, expected: true });
                }
            }
            for comp in compositions(n) {
                let mut a = zeros(ring, n);
                let mut row = 0;
                for (col, s) in comp.iter().enumerate() {
                    for _ in 0..*s {
                        a[row][col] = int(ring, nonzero(&mut rng));
                        row += 1;
                    }
                }
                let b = twist(ring, &a, |i, j| i as i64 - j as i64);
                out.push(Witness { label: format!("column staircase {:?}", comp), a, b, expected: true });
            }
        }
        Family::Standard | Family::Custom => return Err(QmaError::UnsupportedFamily(family.to_string())),
    }
    Ok(out)
}

/// Perturbs one entry of `A` or `B` of a random nonzero witness by a
/// nonzero integer. (With `B = 0` every `A` is a member, so the zero point
/// is never used as a base.)
pub fn perturbations<R: CoeffRing>(witnesses: &[Witness<R::Elem>], ring: &R, count: usize, seed: u64) -> Vec<Witness<R::Elem>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let witnesses: Vec<&Witness<R::Elem>> = witnesses.iter().filter(|w| w.label != "zero").collect();
    let n = witnesses[0].a.len();
    (0..count)
        .map(|k| {
            let base = witnesses[rng.gen_range(0..witnesses.len())];
            let mut w = base.clone();
            let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let d = int(ring, nonzero(&mut rng));
            let target = if rng.gen_bool(0.5) { &mut w.a } else { &mut w.b };
            ring.add_assign(&mut target[i][j], &d);
            w.label = format!("perturbation {} of {} at ({},{})", k, base.label, i + 1, j + 1);
            w.expected = false;
            w
        })
        .collect()
}
