use std::collections::HashMap;
use std::fmt;

use crate::error::{QmaError, Result};
use crate::qcoeff::LaurentScalar;
use crate::rootdata::{pairing, rank_of, AlgebraSpec, RootSupport, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenKind {
    /// `Z̃_{i,j}`, 1-based.
    Z(usize, usize),
    /// `L_k`, 1-based node index in the order `[β, μ.., ν..]`.
    L(usize),
    /// A generator of the quantum plane (`'x'` or `'y'`).
    Plane(char),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenLabel {
    /// Tensor slot, starting at 1.
    pub slot: u8,
    pub kind: GenKind,
}

impl fmt::Display for GenLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.slot > 1 {
            write!(f, "{}:", self.slot)?;
        }
        match self.kind {
            GenKind::Z(i, j) if i < 10 && j < 10 => write!(f, "Z{}{}", i, j),
            GenKind::Z(i, j) => write!(f, "Z{},{}", i, j),
            GenKind::L(k) => write!(f, "L{}", k),
            GenKind::Plane(c) => write!(f, "{}", c),
        }
    }
}

/// A correction term `coeff · z_first z_second` with `first < second`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Correction {
    pub coeff: LaurentScalar,
    pub first: usize,
    pub second: usize,
}

/// A quadratic relation `Σ c · z_x z_y = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadRelation {
    pub terms: Vec<(LaurentScalar, usize, usize)>,
}

/// A presentation by generators `z_0 < z_1 < ...` with one relation per pair
/// `a < b`: `z_a z_b = q^{h_{ab}} z_b z_a + Σ c z_x z_y`.
#[derive(Clone, Debug)]
pub struct Presentation {
    labels: Vec<GenLabel>,
    invertible: Vec<bool>,
    exch: Vec<i64>,
    corr: HashMap<(usize, usize), Vec<Correction>>,
    index: HashMap<GenLabel, usize>,
    slots: u8,
    n: usize,
}

impl Presentation {
    /// Generators with pure q-commutation and no corrections.
    pub fn new(labels: Vec<GenLabel>, invertible: Vec<bool>) -> Self {
        let k = labels.len();
        let index = labels.iter().enumerate().map(|(i, l)| (*l, i)).collect();
        let slots = labels.iter().map(|l| l.slot).max().unwrap_or(1);
        let n = labels
            .iter()
            .filter_map(|l| match l.kind {
                GenKind::Z(i, _) => Some(i),
                _ => None,
            })
            .max()
            .unwrap_or(0);
        Presentation {
            labels,
            invertible,
            exch: vec![0; k * k],
            corr: HashMap::new(),
            index,
            slots,
            n,
        }
    }

    /// Sets `z_a z_b = q^h z_b z_a` (and the mirrored exponent).
    pub fn set_exchange(&mut self, a: usize, b: usize, h: i64) {
        let k = self.labels.len();
        self.exch[a * k + b] = h;
        self.exch[b * k + a] = -h;
    }

    /// Adds a correction term to the relation of the pair `a < b`.
    pub fn add_correction(&mut self, a: usize, b: usize, corr: Correction) {
        assert!(a < b && corr.first < corr.second, "corrections must be ordered");
        assert!(
            !self.invertible[a] && !self.invertible[b],
            "invertible generators may only q-commute"
        );
        self.corr.entry((a, b)).or_default().push(corr);
    }

    /// `M_q^℘(n)` in the generators `Z̃_{i,j}`, optionally preceded by the
    /// `2n-1` invertible generators `L_k`.
    pub fn modified(spec: &AlgebraSpec, with_l: bool) -> Self {
        let n = spec.n;
        let mut labels = Vec::new();
        let mut invertible = Vec::new();
        if with_l {
            for k in 1..=rank_of(n) {
                labels.push(GenLabel { slot: 1, kind: GenKind::L(k) });
                invertible.push(true);
            }
        }
        let z0 = labels.len();
        for (i, j) in spec.pairs() {
            labels.push(GenLabel { slot: 1, kind: GenKind::Z(i, j) });
            invertible.push(false);
        }
        let mut p = Presentation::new(labels, invertible);
        let pairs = spec.pairs();
        for (x, a) in pairs.iter().enumerate() {
            for (y, b) in pairs.iter().enumerate().skip(x + 1) {
                let h = spec.exchange_exponent(*a, *b).expect("valid pair");
                p.set_exchange(z0 + x, z0 + y, h);
                let ((i, j), (s, t)) = (*a, *b);
                if i < s && j < t {
                    let hp = spec.extra_exponent(*a, *b).expect("crossing pair");
                    let first = z0 + (i - 1) * n + (t - 1);
                    let second = z0 + (s - 1) * n + (j - 1);
                    p.add_correction(
                        z0 + x,
                        z0 + y,
                        Correction {
                            coeff: LaurentScalar::q_minus_qinv().shift(hp),
                            first,
                            second,
                        },
                    );
                }
            }
        }
        if with_l {
            for k in 0..rank_of(n) {
                let lam = Weight::fundamental(n, k);
                for (x, (i, j)) in pairs.iter().enumerate() {
                    let e = pairing(&RootSupport::of(n, *i, *j), &lam).expect("sizes");
                    p.set_exchange(k, z0 + x, e);
                }
            }
        }
        p
    }

    /// The quantum plane `yx = qxy`, generators ordered `x < y`.
    pub fn quantum_plane() -> Self {
        let labels = vec![
            GenLabel { slot: 1, kind: GenKind::Plane('x') },
            GenLabel { slot: 1, kind: GenKind::Plane('y') },
        ];
        let mut p = Presentation::new(labels, vec![false, false]);
        p.set_exchange(0, 1, -1);
        p
    }

    /// The same algebra with generators listed as `order` (new index → old
    /// index). Correction terms that come out of order are rewritten with
    /// their pure q-commutation; fails if such a pair has corrections itself.
    pub fn reordered(&self, order: &[usize]) -> Result<Self> {
        let k = self.labels.len();
        let mut pos = vec![usize::MAX; k];
        for (new, old) in order.iter().enumerate() {
            if *old >= k || pos[*old] != usize::MAX {
                return Err(QmaError::InvalidArgument("order is not a permutation".into()));
            }
            pos[*old] = new;
        }
        if order.len() != k {
            return Err(QmaError::DimensionMismatch { expected: k, got: order.len() });
        }
        let labels = order.iter().map(|o| self.labels[*o]).collect();
        let invertible = order.iter().map(|o| self.invertible[*o]).collect();
        let mut p = Presentation::new(labels, invertible);
        for a in 0..k {
            for b in (a + 1)..k {
                let (oa, ob) = (order[a], order[b]);
                p.set_exchange(a, b, self.exchange(oa, ob));
                let (_, corr) = self.swap(oa, ob);
                let mut terms: Vec<(LaurentScalar, usize, usize)> = Vec::new();
                for (c, x, y) in corr {
                    let (nx, ny) = (pos[x], pos[y]);
                    let t = if nx < ny {
                        (c, nx, ny)
                    } else {
                        if self.has_corrections(x, y) {
                            return Err(QmaError::InvalidArgument(format!(
                                "correction {}·{} cannot be reordered",
                                self.labels[x], self.labels[y]
                            )));
                        }
                        (c.shift(self.exchange(x, y)), ny, nx)
                    };
                    match terms.iter_mut().find(|(_, u, v)| (*u, *v) == (t.1, t.2)) {
                        Some(e) => e.0.add_assign_ref(&t.0),
                        None => terms.push(t),
                    }
                }
                for (coeff, first, second) in terms {
                    if !coeff.is_zero() {
                        p.add_correction(a, b, Correction { coeff, first, second });
                    }
                }
            }
        }
        Ok(p)
    }

    /// Tensor product; generators of different factors commute.
    pub fn tensor(factors: &[&Presentation]) -> Self {
        let mut labels = Vec::new();
        let mut invertible = Vec::new();
        let mut offsets = Vec::new();
        let mut slot_base = 0u8;
        for f in factors {
            offsets.push(labels.len());
            for (l, inv) in f.labels.iter().zip(&f.invertible) {
                labels.push(GenLabel { slot: slot_base + l.slot, kind: l.kind });
                invertible.push(*inv);
            }
            slot_base += f.slots;
        }
        let mut p = Presentation::new(labels, invertible);
        for (f, off) in factors.iter().zip(&offsets) {
            let k = f.labels.len();
            for a in 0..k {
                for b in (a + 1)..k {
                    p.set_exchange(off + a, off + b, f.exchange(a, b));
                }
            }
            for ((a, b), cs) in &f.corr {
                for c in cs {
                    p.add_correction(
                        off + a,
                        off + b,
                        Correction { coeff: c.coeff.clone(), first: off + c.first, second: off + c.second },
                    );
                }
            }
        }
        p
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Matrix size of the `Z`-generators (0 if there are none).
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn slots(&self) -> u8 {
        self.slots
    }

    pub fn label(&self, g: usize) -> GenLabel {
        self.labels[g]
    }

    pub fn labels(&self) -> &[GenLabel] {
        &self.labels
    }

    pub fn is_invertible(&self, g: usize) -> bool {
        self.invertible[g]
    }

    pub fn index_of(&self, label: GenLabel) -> Option<usize> {
        self.index.get(&label).copied()
    }

    /// Index of `Z̃_{i,j}` in slot 1.
    pub fn z(&self, i: usize, j: usize) -> usize {
        self.z_in(1, i, j)
    }

    pub fn z_in(&self, slot: u8, i: usize, j: usize) -> usize {
        self.index_of(GenLabel { slot, kind: GenKind::Z(i, j) })
            .unwrap_or_else(|| panic!("no generator Z{}{} in slot {}", i, j, slot))
    }

    pub fn l(&self, k: usize) -> usize {
        self.l_in(1, k)
    }

    pub fn l_in(&self, slot: u8, k: usize) -> usize {
        self.index_of(GenLabel { slot, kind: GenKind::L(k) })
            .unwrap_or_else(|| panic!("no generator L{} in slot {}", k, slot))
    }

    /// `h` with `z_a z_b = q^h z_b z_a (+ corrections when a < b)`.
    pub fn exchange(&self, a: usize, b: usize) -> i64 {
        self.exch[a * self.labels.len() + b]
    }

    /// Correction terms of the relation for `a < b`.
    pub fn corrections(&self, a: usize, b: usize) -> &[Correction] {
        self.corr.get(&(a, b)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn has_corrections(&self, a: usize, b: usize) -> bool {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        self.corr.contains_key(&(a, b))
    }

    /// `z_a z_b` rewritten as `coef · z_b z_a + Σ c z_x z_y`, for any `a ≠ b`.
    pub fn swap(&self, a: usize, b: usize) -> (LaurentScalar, Vec<(LaurentScalar, usize, usize)>) {
        let h = self.exchange(a, b);
        if a < b {
            let cs = self
                .corrections(a, b)
                .iter()
                .map(|c| (c.coeff.clone(), c.first, c.second))
                .collect();
            (LaurentScalar::q_pow(h), cs)
        } else {
            // z_b z_a = q^{-h} z_a z_b + Σ c z_x z_y  ⇒  z_a z_b = q^{h} z_b z_a - q^{h} Σ c z_x z_y
            let cs = self
                .corrections(b, a)
                .iter()
                .map(|c| (-&c.coeff.shift(h), c.first, c.second))
                .collect();
            (LaurentScalar::q_pow(h), cs)
        }
    }

    /// Every defining relation as `z_a z_b - q^h z_b z_a - Σ c z_x z_y`.
    pub fn relations(&self) -> Vec<QuadRelation> {
        let k = self.labels.len();
        let mut out = Vec::new();
        for a in 0..k {
            for b in (a + 1)..k {
                let mut terms = vec![
                    (LaurentScalar::one(), a, b),
                    (-&LaurentScalar::q_pow(self.exchange(a, b)), b, a),
                ];
                for c in self.corrections(a, b) {
                    terms.push((-&c.coeff, c.first, c.second));
                }
                out.push(QuadRelation { terms });
            }
        }
        out
    }

    /// Adds `delta` to one exchange exponent (used for negative controls).
    pub fn perturb_exchange(&mut self, a: usize, b: usize, delta: i64) {
        let h = self.exchange(a, b);
        self.set_exchange(a, b, h + delta);
    }

    /// Resolves a generator label written as `Zij`, `Lk`, `x`, `y`, with an
    /// optional `s:` slot prefix.
    pub fn parse_label(&self, token: &str) -> Result<usize> {
        let (slot, body) = match token.split_once(':') {
            Some((s, b)) => (
                s.parse::<u8>().map_err(|_| QmaError::Parse(format!("bad slot in `{}`", token)))?,
                b,
            ),
            None => (1, token),
        };
        let kind = if let Some(rest) = body.strip_prefix('Z') {
            let (i, j) = if let Some((a, b)) = rest.split_once(',') {
                (a.parse().ok(), b.parse().ok())
            } else if rest.len() == 2 {
                (rest[..1].parse().ok(), rest[1..].parse().ok())
            } else {
                (None, None)
            };
            match (i, j) {
                (Some(i), Some(j)) => GenKind::Z(i, j),
                _ => return Err(QmaError::Parse(format!("bad generator `{}`", token))),
            }
        } else if let Some(rest) = body.strip_prefix('L') {
            GenKind::L(rest.parse().map_err(|_| QmaError::Parse(format!("bad generator `{}`", token)))?)
        } else if body == "x" || body == "y" {
            GenKind::Plane(body.chars().next().expect("nonempty"))
        } else {
            return Err(QmaError::Parse(format!("bad generator `{}`", token)));
        };
        self.index_of(GenLabel { slot, kind })
            .ok_or_else(|| QmaError::Parse(format!("generator `{}` not in this algebra", token)))
    }
}
