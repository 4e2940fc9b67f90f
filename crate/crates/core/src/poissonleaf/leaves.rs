//! Dimensions of symplectic leaves through the Bruhat cell of `(ω, ω)`.

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{QmaError, Result};
use crate::linalg;
use crate::qcoeff::rat;
use crate::rootdata::Family;

/// A permutation of `{1..n}`, `ω(k) = images[k-1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    images: Vec<usize>,
}

impl WeylElement {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(QmaError::InvalidArgument(format!("{:?} is not a permutation", images)));
            }
            seen[x - 1] = true;
        }
        Ok(WeylElement { images })
    }

    pub fn identity(n: usize) -> Self {
        WeylElement { images: (1..=n).collect() }
    }

    pub fn longest(n: usize) -> Self {
        WeylElement { images: (1..=n).rev().collect() }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, k: usize) -> usize {
        self.images[k - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let p = &self.images;
        (0..p.len())
            .flat_map(|i| ((i + 1)..p.len()).map(move |j| (i, j)))
            .filter(|(i, j)| p[*i] > p[*j])
            .count()
    }

    /// All permutations of `{1..n}` in lexicographic order.
    pub fn all(n: usize) -> Vec<WeylElement> {
        crate::detcenter::permutations(n)
            .into_iter()
            .map(|p| WeylElement { images: p.into_iter().map(|x| x + 1).collect() })
            .collect()
    }
}

/// A diagonal matrix, coordinates in the basis `d_1..d_n`.
pub type DiagonalVector = Vec<BigRational>;

fn pairing(a: &DiagonalVector, b: &DiagonalVector) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn conjugate(w: &WeylElement, a: &DiagonalVector) -> DiagonalVector {
    (1..=w.n()).map(|k| a[w.apply(k) - 1].clone()).collect()
}

fn basis(n: usize, k: usize) -> DiagonalVector {
    (0..n).map(|l| if l + 1 == k { rat(1) } else { rat(0) }).collect()
}

/// `(x_k, y_k)`, `k = 1..n`, for a named family.
pub fn dressing_vectors(family: Family, n: usize) -> Result<Vec<(DiagonalVector, DiagonalVector)>> {
    if n < 2 {
        return Err(QmaError::InvalidSize(n));
    }
    let h = |k: usize| -> DiagonalVector { (1..=n).map(|l| if l > k { rat(1) } else { rat(0) }).collect() };
    let a = |k: usize| -> DiagonalVector { vec![rat(k as i64); n] };
    let add = |u: &DiagonalVector, v: &DiagonalVector| -> DiagonalVector { u.iter().zip(v).map(|(x, y)| x + y).collect() };
    let neg = |u: &DiagonalVector| -> DiagonalVector { u.iter().map(|x| -x).collect() };
    (1..=n)
        .map(|k| {
            let (hk, ak) = (h(k), a(k));
            Ok(match family {
                Family::Standard => (vec![rat(0); n], vec![rat(0); n]),
                Family::Dipper => (neg(&hk), hk),
                Family::J0 => (neg(&add(&hk, &ak)), neg(&add(&hk, &ak))),
                Family::Jz => (neg(&hk), neg(&hk)),
                Family::Jn => (neg(&add(&hk, &ak)), add(&hk, &ak)),
                Family::Custom => return Err(QmaError::CustomFamily),
            })
        })
        .collect()
}

/// `T(a) = Σ_k ⟨a, d_k⟩ v_k − ⟨a, v_k⟩ d_k`.
fn t_map(vs: &[DiagonalVector], a: &DiagonalVector) -> DiagonalVector {
    let n = a.len();
    let mut out = vec![BigRational::zero(); n];
    for (k, v) in vs.iter().enumerate() {
        let c = &a[k];
        let p = pairing(a, v);
        for l in 0..n {
            out[l] += c * &v[l];
        }
        out[k] -= p;
    }
    out
}

/// Matrix of `L_ω(a) = T_R(ω⁻¹aω) + ω⁻¹ T_L(a) ω`; column `j` is `L_ω(d_j)`.
pub fn l_omega_matrix(family: Family, w: &WeylElement) -> Result<Vec<Vec<BigRational>>> {
    let n = w.n();
    let dv = dressing_vectors(family, n)?;
    let xs: Vec<DiagonalVector> = dv.iter().map(|p| p.0.clone()).collect();
    let ys: Vec<DiagonalVector> = dv.iter().map(|p| p.1.clone()).collect();
    let cols: Vec<DiagonalVector> = (1..=n)
        .map(|j| {
            let d = basis(n, j);
            let r = t_map(&ys, &conjugate(w, &d));
            let l = conjugate(w, &t_map(&xs, &d));
            r.iter().zip(&l).map(|(x, y)| x + y).collect()
        })
        .collect();
    Ok((0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect())
}

pub fn l_omega_rank(family: Family, w: &WeylElement) -> Result<usize> {
    Ok(linalg::rank(&l_omega_matrix(family, w)?))
}

/// `2ℓ(ω) + rank L_ω`.
pub fn leaf_dimension(family: Family, w: &WeylElement) -> Result<usize> {
    Ok(2 * w.length() + l_omega_rank(family, w)?)
}

/// Predicted rank of `L_{ω_ℓ}`: `0` for `j0`/`jz`, `n` or `n-1` (as `n` is
/// even or odd) for `dipper`/`jn`.
pub fn longest_rank_prediction(family: Family, n: usize) -> Option<usize> {
    match family {
        Family::J0 | Family::Jz | Family::Standard => Some(0),
        Family::Dipper | Family::Jn => Some(if n.is_multiple_of(2) { n } else { n - 1 }),
        Family::Custom => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lengths() {
        assert_eq!(WeylElement::longest(4).length(), 6);
        assert_eq!(WeylElement::identity(4).length(), 0);
        assert_eq!(WeylElement::all(3).len(), 6);
        assert!(WeylElement::new(vec![1, 1]).is_err());
    }

    #[test]
    fn standard_is_zero() {
        for w in WeylElement::all(3) {
            assert_eq!(leaf_dimension(Family::Standard, &w).unwrap(), 2 * w.length());
        }
    }
}
