//! Root and weight data for the `A_{2n-1}` diagram underlying the modified
//! matrix algebras, and the modification vectors of the named families.
//!
//! Weights are integer vectors in the fundamental-weight basis, with nodes
//! ordered `[β, μ_1..μ_{n-1}, ν_1..ν_{n-1}]`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{QmaError, Result};

/// Index of the node `β`.
pub const BETA: usize = 0;

/// Index of the node `μ_k`, `1 <= k <= n-1`.
pub fn mu(_n: usize, k: usize) -> usize {
    k
}

/// Index of the node `ν_k`, `1 <= k <= n-1`.
pub fn nu(n: usize, k: usize) -> usize {
    n - 1 + k
}

/// Number of simple roots for matrix size `n`.
pub fn rank_of(n: usize) -> usize {
    2 * n - 1
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(n: usize) -> Self {
        Weight(vec![0; rank_of(n)])
    }

    pub fn fundamental(n: usize, node: usize) -> Self {
        let mut w = Self::zero(n);
        w.0[node] = 1;
        w
    }

    /// `λ_{μ_k}`; the zero weight when `k = n`.
    pub fn lambda_mu(n: usize, k: usize) -> Self {
        if k >= n {
            Self::zero(n)
        } else {
            Self::fundamental(n, mu(n, k))
        }
    }

    /// `λ_{ν_k}`; the zero weight when `k = n`.
    pub fn lambda_nu(n: usize, k: usize) -> Self {
        if k >= n {
            Self::zero(n)
        } else {
            Self::fundamental(n, nu(n, k))
        }
    }

    pub fn lambda_beta(n: usize) -> Self {
        Self::fundamental(n, BETA)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: i64) -> Weight {
        Weight(self.0.iter().map(|a| c * a).collect())
    }

    pub fn neg(&self) -> Weight {
        self.scale(-1)
    }
}

/// The support of a positive root in the simple-root basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootSupport {
    pub n: usize,
    pub support: Vec<bool>,
}

impl RootSupport {
    /// `α_{i,j} = μ^i + β + ν^j`, 1-based indices.
    pub fn of(n: usize, i: usize, j: usize) -> Self {
        let mut support = vec![false; rank_of(n)];
        support[BETA] = true;
        for k in 1..i {
            support[mu(n, k)] = true;
        }
        for k in 1..j {
            support[nu(n, k)] = true;
        }
        RootSupport { n, support }
    }

    pub fn contains(&self, node: usize) -> bool {
        self.support[node]
    }
}

/// `(α | w)`: sum of the coordinates of `w` over the support of `α`.
pub fn pairing(alpha: &RootSupport, w: &Weight) -> Result<i64> {
    if alpha.support.len() != w.len() {
        return Err(QmaError::DimensionMismatch {
            expected: alpha.support.len(),
            got: w.len(),
        });
    }
    Ok(alpha
        .support
        .iter()
        .zip(&w.0)
        .filter(|(s, _)| **s)
        .map(|(_, c)| *c)
        .sum())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Standard,
    Dipper,
    J0,
    Jz,
    Jn,
    Custom,
}

impl Family {
    pub const NAMED: [Family; 5] = [
        Family::Standard,
        Family::Dipper,
        Family::J0,
        Family::Jz,
        Family::Jn,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Family::Standard => "standard",
            Family::Dipper => "dipper",
            Family::J0 => "j0",
            Family::Jz => "jz",
            Family::Jn => "jn",
            Family::Custom => "custom",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = QmaError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "standard" => Ok(Family::Standard),
            "dipper" | "d" => Ok(Family::Dipper),
            "j0" => Ok(Family::J0),
            "jz" => Ok(Family::Jz),
            "jn" => Ok(Family::Jn),
            "custom" => Ok(Family::Custom),
            _ => Err(QmaError::UnknownFamily(s.to_string())),
        }
    }
}

/// The modification vector `℘ = (ζ_1..ζ_n, ξ_1..ξ_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModVector {
    pub zetas: Vec<Weight>,
    pub xis: Vec<Weight>,
}

impl ModVector {
    pub fn zero(n: usize) -> Self {
        ModVector {
            zetas: vec![Weight::zero(n); n],
            xis: vec![Weight::zero(n); n],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.zetas
            .iter()
            .chain(&self.xis)
            .all(|w| w.0.iter().all(|c| *c == 0))
    }
}

/// The modification vector realizing a named family.
pub fn family_to_wp(family: Family, n: usize) -> Result<ModVector> {
    if n < 2 {
        return Err(QmaError::InvalidSize(n));
    }
    let beta = Weight::lambda_beta(n);
    let mut wp = ModVector::zero(n);
    for k in 1..=n {
        let lm = Weight::lambda_mu(n, k);
        let ln = Weight::lambda_nu(n, k);
        let kb = beta.scale(k as i64);
        let (z, x) = match family {
            Family::Standard => (Weight::zero(n), Weight::zero(n)),
            Family::Dipper => (lm.neg(), ln),
            Family::J0 => (kb.add(&lm).neg(), kb.add(&ln).neg()),
            Family::Jz => (lm.neg(), ln.neg()),
            Family::Jn => (kb.add(&lm).neg(), kb.add(&ln)),
            Family::Custom => return Err(QmaError::CustomFamily),
        };
        wp.zetas[k - 1] = z;
        wp.xis[k - 1] = x;
    }
    Ok(wp)
}

/// A modified matrix algebra `M_q^℘(n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraSpec {
    pub n: usize,
    pub family: Family,
    pub wp: ModVector,
}

#[derive(Serialize, Deserialize)]
struct AlgebraSpecJson {
    n: usize,
    family: Family,
    #[serde(default)]
    zetas: Option<Vec<Weight>>,
    #[serde(default)]
    xis: Option<Vec<Weight>>,
}

impl Serialize for AlgebraSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AlgebraSpecJson {
            n: self.n,
            family: self.family,
            zetas: Some(self.wp.zetas.clone()),
            xis: Some(self.wp.xis.clone()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgebraSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let raw = AlgebraSpecJson::deserialize(d)?;
        match (raw.family, raw.zetas, raw.xis) {
            (Family::Custom, Some(z), Some(x)) => {
                AlgebraSpec::custom(raw.n, ModVector { zetas: z, xis: x }).map_err(D::Error::custom)
            }
            (Family::Custom, _, _) => Err(D::Error::custom("custom family requires zetas and xis")),
            (f, _, _) => AlgebraSpec::named(f, raw.n).map_err(D::Error::custom),
        }
    }
}

impl AlgebraSpec {
    pub fn named(family: Family, n: usize) -> Result<Self> {
        let wp = family_to_wp(family, n)?;
        Ok(AlgebraSpec { n, family, wp })
    }

    pub fn standard(n: usize) -> Result<Self> {
        Self::named(Family::Standard, n)
    }

    pub fn custom(n: usize, wp: ModVector) -> Result<Self> {
        if n < 2 {
            return Err(QmaError::InvalidSize(n));
        }
        for list in [&wp.zetas, &wp.xis] {
            if list.len() != n {
                return Err(QmaError::DimensionMismatch {
                    expected: n,
                    got: list.len(),
                });
            }
            for w in list {
                if w.len() != rank_of(n) {
                    return Err(QmaError::DimensionMismatch {
                        expected: rank_of(n),
                        got: w.len(),
                    });
                }
            }
        }
        Ok(AlgebraSpec {
            n,
            family: Family::Custom,
            wp,
        })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| QmaError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec serializes")
    }

    fn check(&self, (i, j): (usize, usize)) -> Result<()> {
        if i == 0 || j == 0 || i > self.n || j > self.n {
            return Err(QmaError::IndexOutOfRange(i, j, self.n));
        }
        Ok(())
    }

    pub fn root(&self, i: usize, j: usize) -> RootSupport {
        RootSupport::of(self.n, i, j)
    }

    /// `ζ_i + ξ_j`, the weight of the `L`-factor attached to `Z̃_{i,j}`.
    pub fn shift(&self, i: usize, j: usize) -> Weight {
        self.wp.zetas[i - 1].add(&self.wp.xis[j - 1])
    }

    /// `(α_{a} | ζ_b.0 + ξ_b.1)`.
    pub fn pair_shift(&self, a: (usize, usize), b: (usize, usize)) -> i64 {
        pairing(&self.root(a.0, a.1), &self.shift(b.0, b.1)).expect("consistent sizes")
    }

    /// The exponent `h` with `x_a x_b = q^h x_b x_a` in the associated
    /// quasipolynomial algebra.
    pub fn exchange_exponent(&self, a: (usize, usize), b: (usize, usize)) -> Result<i64> {
        self.check(a)?;
        self.check(b)?;
        if a == b {
            return Err(QmaError::EqualPairs(a.0, a.1));
        }
        if a > b {
            return Ok(-self.exchange_exponent(b, a)?);
        }
        let (i, j) = a;
        let (s, t) = b;
        let base = if i == s || j == t { 1 } else { 0 };
        Ok(self.pair_shift((s, t), (i, j)) - self.pair_shift((i, j), (s, t)) + base)
    }

    /// The exponent `h'` of the correction term `(q - q^{-1}) q^{h'} Z̃_{i,t} Z̃_{s,j}`.
    pub fn extra_exponent(&self, a: (usize, usize), b: (usize, usize)) -> Result<i64> {
        self.check(a)?;
        self.check(b)?;
        let (i, j) = a;
        let (s, t) = b;
        if !(i < s && j < t) {
            return Err(QmaError::NotCrossing(i, j, s, t));
        }
        Ok(self.pair_shift((s, t), (i, j)) - self.pair_shift((s, j), (i, t)))
    }

    /// All generator index pairs in lexicographic order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        index_pairs(self.n)
    }
}

pub fn index_pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n)
        .flat_map(|i| (1..=n).map(move |j| (i, j)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_examples() {
        let n = 2;
        assert_eq!(pairing(&RootSupport::of(n, 1, 1), &Weight::lambda_beta(n)).unwrap(), 1);
        assert_eq!(
            pairing(&RootSupport::of(n, 2, 1), &Weight::lambda_mu(n, 1).neg()).unwrap(),
            -1
        );
        let w = Weight::lambda_beta(3).scale(2).add(&Weight::lambda_nu(3, 2));
        assert_eq!(pairing(&RootSupport::of(3, 2, 3), &w).unwrap(), 3);
        assert!(pairing(&RootSupport::of(3, 1, 1), &Weight::zero(2)).is_err());
    }

    #[test]
    fn root_support_contains_beta() {
        for (i, j) in index_pairs(4) {
            let r = RootSupport::of(4, i, j);
            assert!(r.contains(BETA));
            assert_eq!(r.support.iter().filter(|s| **s).count(), i + j - 1);
        }
    }

    #[test]
    fn family_vectors() {
        let s = family_to_wp(Family::Standard, 2).unwrap();
        assert!(s.is_zero());
        let d = family_to_wp(Family::Dipper, 2).unwrap();
        assert_eq!(d.zetas, vec![Weight(vec![0, -1, 0]), Weight(vec![0, 0, 0])]);
        assert_eq!(d.xis, vec![Weight(vec![0, 0, 1]), Weight(vec![0, 0, 0])]);
        let j = family_to_wp(Family::J0, 2).unwrap();
        assert_eq!(j.zetas, vec![Weight(vec![-1, -1, 0]), Weight(vec![-2, 0, 0])]);
        assert_eq!(j.xis, vec![Weight(vec![-1, 0, -1]), Weight(vec![-2, 0, 0])]);
        assert!(family_to_wp(Family::Custom, 2).is_err());
    }

    #[test]
    fn exchange_examples() {
        let s = AlgebraSpec::standard(2).unwrap();
        assert_eq!(s.exchange_exponent((1, 1), (1, 2)).unwrap(), 1);
        assert_eq!(s.exchange_exponent((1, 2), (2, 1)).unwrap(), 0);
        assert_eq!(s.extra_exponent((1, 1), (2, 2)).unwrap(), 0);
        let z = AlgebraSpec::named(Family::Jz, 2).unwrap();
        assert_eq!(z.exchange_exponent((1, 1), (2, 2)).unwrap(), -2);
        assert_eq!(z.exchange_exponent((2, 2), (1, 1)).unwrap(), 2);
        assert!(s.exchange_exponent((1, 1), (1, 1)).is_err());
        assert!(s.extra_exponent((1, 2), (2, 1)).is_err());
    }

    #[test]
    fn spec_json_roundtrip() {
        for f in Family::NAMED {
            let s = AlgebraSpec::named(f, 3).unwrap();
            let back = AlgebraSpec::from_json(&s.to_json()).unwrap();
            assert_eq!(back, s);
        }
        let c = AlgebraSpec::custom(2, family_to_wp(Family::Jn, 2).unwrap()).unwrap();
        assert_eq!(AlgebraSpec::from_json(&c.to_json()).unwrap(), c);
        assert!(AlgebraSpec::from_json(r#"{"n":2,"family":"custom"}"#).is_err());
        assert!(AlgebraSpec::from_json(r#"{"n":2,"family":"jq"}"#).is_err());
    }
}
