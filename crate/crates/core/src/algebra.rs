//! Real normed division algebras R, C, H and O built by Cayley–Dickson doubling.
//!
//! Elements are stored as fixed-size coordinate arrays over the basis
//! `e0 = 1, e1, …, e_{dim-1}`. The doubling convention is pinned to
//!
//! ```text
//! (a, b)(c, d) = (ac - conj(d) b, d a + b conj(c)),   conj(a, b) = (conj(a), -b)
//! ```
//!
//! applied recursively starting from the reals, so `e1 e2 = e3` in H.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

/// Largest supported algebra dimension (the octonions).
pub const MAX_DIM: usize = 8;

/// Algebra dimensions realised by this module.
pub const SUPPORTED_DIMS: [usize; 4] = [1, 2, 4, 8];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("unsupported algebra dimension {0} (expected 1, 2, 4 or 8)")]
    UnsupportedDimension(usize),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("expected {expected} coordinates, got {found}")]
    CoordinateCount { expected: usize, found: usize },
    #[error("zero element has no inverse")]
    ZeroInverse,
}

pub fn check_dim(dim: usize) -> Result<(), AlgebraError> {
    if SUPPORTED_DIMS.contains(&dim) {
        Ok(())
    } else {
        Err(AlgebraError::UnsupportedDimension(dim))
    }
}

#[derive(Clone, Copy, PartialEq)]
pub struct AlgebraElement {
    dim: usize,
    coords: [f64; MAX_DIM],
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("AlgebraElement").field(&self.coords()).finish()
    }
}

impl AlgebraElement {
    pub fn new(dim: usize, coords: &[f64]) -> Result<Self, AlgebraError> {
        check_dim(dim)?;
        if coords.len() != dim {
            return Err(AlgebraError::CoordinateCount {
                expected: dim,
                found: coords.len(),
            });
        }
        let mut buf = [0.0; MAX_DIM];
        buf[..dim].copy_from_slice(coords);
        Ok(Self { dim, coords: buf })
    }

    /// Builds an element from a slice whose length is the dimension.
    pub fn from_slice(coords: &[f64]) -> Result<Self, AlgebraError> {
        Self::new(coords.len(), coords)
    }

    pub fn zero(dim: usize) -> Result<Self, AlgebraError> {
        check_dim(dim)?;
        Ok(Self {
            dim,
            coords: [0.0; MAX_DIM],
        })
    }

    pub fn real(dim: usize, value: f64) -> Result<Self, AlgebraError> {
        let mut z = Self::zero(dim)?;
        z.coords[0] = value;
        Ok(z)
    }

    pub fn one(dim: usize) -> Result<Self, AlgebraError> {
        Self::real(dim, 1.0)
    }

    /// The basis vector `e_index`.
    pub fn basis(dim: usize, index: usize) -> Result<Self, AlgebraError> {
        let mut z = Self::zero(dim)?;
        if index >= dim {
            return Err(AlgebraError::CoordinateCount {
                expected: dim,
                found: index + 1,
            });
        }
        z.coords[index] = 1.0;
        Ok(z)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords[..self.dim]
    }

    pub fn re(&self) -> f64 {
        self.coords[0]
    }

    pub fn conj(&self) -> Self {
        let mut out = *self;
        for c in &mut out.coords[1..self.dim] {
            *c = -*c;
        }
        out
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coords().iter().map(|c| c * c).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Euclidean inner product of coordinate vectors, `Re(x conj(y))`.
    pub fn dot(&self, other: &Self) -> f64 {
        self.coords().iter().zip(other.coords()).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, factor: f64) -> Self {
        let mut out = *self;
        for c in &mut out.coords[..self.dim] {
            *c *= factor;
        }
        out
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.dim != other.dim {
            return Err(AlgebraError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let mut out = [0.0; MAX_DIM];
        cayley_dickson_mul(self.coords(), other.coords(), &mut out[..self.dim]);
        Ok(Self {
            dim: self.dim,
            coords: out,
        })
    }

    /// `conj(x) / |x|^2`.
    pub fn inv(&self) -> Result<Self, AlgebraError> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            return Err(AlgebraError::ZeroInverse);
        }
        Ok(self.conj().scale(1.0 / n2))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coords()
            .iter()
            .zip(other.coords())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Multiplies two coordinate slices of equal power-of-two length into `out`.
///
/// This is the raw doubling recursion; callers guarantee `x.len() == y.len() == out.len()`
/// and that the length is 1, 2, 4 or 8.
pub fn cayley_dickson_mul(x: &[f64], y: &[f64], out: &mut [f64]) {
    let n = x.len();
    debug_assert!(y.len() == n && out.len() == n);
    if n == 1 {
        out[0] = x[0] * y[0];
        return;
    }
    let h = n / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);

    let mut conj_c = [0.0; MAX_DIM / 2];
    let mut conj_d = [0.0; MAX_DIM / 2];
    conjugate_into(c, &mut conj_c[..h]);
    conjugate_into(d, &mut conj_d[..h]);

    let mut t1 = [0.0; MAX_DIM / 2];
    let mut t2 = [0.0; MAX_DIM / 2];

    // ac - conj(d) b
    cayley_dickson_mul(a, c, &mut t1[..h]);
    cayley_dickson_mul(&conj_d[..h], b, &mut t2[..h]);
    for i in 0..h {
        out[i] = t1[i] - t2[i];
    }
    // d a + b conj(c)
    cayley_dickson_mul(d, a, &mut t1[..h]);
    cayley_dickson_mul(b, &conj_c[..h], &mut t2[..h]);
    for i in 0..h {
        out[h + i] = t1[i] + t2[i];
    }
}

fn conjugate_into(x: &[f64], out: &mut [f64]) {
    out[0] = x[0];
    for i in 1..x.len() {
        out[i] = -x[i];
    }
}

impl Mul for AlgebraElement {
    type Output = AlgebraElement;

    /// Panics when the dimensions differ; use [`AlgebraElement::checked_mul`] to get an error.
    fn mul(self, rhs: Self) -> Self::Output {
        self.checked_mul(&rhs).expect("algebra elements must share a dimension")
    }
}

impl Mul<f64> for AlgebraElement {
    type Output = AlgebraElement;

    fn mul(self, rhs: f64) -> Self::Output {
        self.scale(rhs)
    }
}

impl Add for AlgebraElement {
    type Output = AlgebraElement;

    fn add(self, rhs: Self) -> Self::Output {
        assert_eq!(self.dim, rhs.dim, "algebra elements must share a dimension");
        let mut out = self;
        for i in 0..self.dim {
            out.coords[i] += rhs.coords[i];
        }
        out
    }
}

impl Sub for AlgebraElement {
    type Output = AlgebraElement;

    fn sub(self, rhs: Self) -> Self::Output {
        self + (-rhs)
    }
}

impl Neg for AlgebraElement {
    type Output = AlgebraElement;

    fn neg(self) -> Self::Output {
        self.scale(-1.0)
    }
}

/// `e_i e_j = sign * e_index`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisProduct {
    pub sign: i8,
    pub index: usize,
}

/// The full multiplication table of basis elements, row `i`, column `j` holding `e_i e_j`.
pub fn basis_table(dim: usize) -> Result<Vec<Vec<BasisProduct>>, AlgebraError> {
    check_dim(dim)?;
    let mut table = Vec::with_capacity(dim);
    for i in 0..dim {
        let ei = AlgebraElement::basis(dim, i)?;
        let mut row = Vec::with_capacity(dim);
        for j in 0..dim {
            let p = ei * AlgebraElement::basis(dim, j)?;
            let (index, value) = p
                .coords()
                .iter()
                .enumerate()
                .find(|(_, v)| **v != 0.0)
                .expect("basis products are nonzero");
            row.push(BasisProduct {
                sign: if *value > 0.0 { 1 } else { -1 },
                index,
            });
        }
        table.push(row);
    }
    Ok(table)
}

/// Searches all basis triples for one with `(e_i e_j) e_k != e_i (e_j e_k)`.
pub fn find_nonassociative_triple(dim: usize) -> Result<Option<(usize, usize, usize)>, AlgebraError> {
    check_dim(dim)?;
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                let (ei, ej, ek) = (
                    AlgebraElement::basis(dim, i)?,
                    AlgebraElement::basis(dim, j)?,
                    AlgebraElement::basis(dim, k)?,
                );
                if (ei * ej) * ek != ei * (ej * ek) {
                    return Ok(Some((i, j, k)));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(c: &[f64]) -> AlgebraElement {
        AlgebraElement::from_slice(c).unwrap()
    }

    #[test]
    fn unit_times_i() {
        assert_eq!(el(&[1.0, 0.0]) * el(&[0.0, 1.0]), el(&[0.0, 1.0]));
    }

    #[test]
    fn quaternion_e1_e2_is_e3() {
        let e1 = AlgebraElement::basis(4, 1).unwrap();
        let e2 = AlgebraElement::basis(4, 2).unwrap();
        assert_eq!(e1 * e2, AlgebraElement::basis(4, 3).unwrap());
        assert_eq!(e2 * e1, -AlgebraElement::basis(4, 3).unwrap());
    }

    #[test]
    fn octonion_norm_of_product() {
        let mut x = [0.0; 8];
        x[0] = 1.0;
        x[1] = 1.0;
        let mut y = [0.0; 8];
        y[0] = 1.0;
        y[2] = 1.0;
        let p = el(&x) * el(&y);
        assert!((p.norm() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn conj_norm_inv() {
        assert_eq!(
            AlgebraElement::basis(4, 1).unwrap().conj(),
            -AlgebraElement::basis(4, 1).unwrap()
        );
        assert_eq!(el(&[3.0, 4.0]).norm(), 5.0);
        assert_eq!(el(&[2.0]).inv().unwrap(), el(&[0.5]));
        assert_eq!(el(&[0.0, 0.0]).inv(), Err(AlgebraError::ZeroInverse));
    }

    #[test]
    fn complex_i_squared() {
        let t = basis_table(2).unwrap();
        assert_eq!(t[1][1], BasisProduct { sign: -1, index: 0 });
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn quaternion_table_anticommutes() {
        let t = basis_table(4).unwrap();
        for i in 1..4 {
            for j in 1..4 {
                if i != j {
                    assert_eq!(t[i][j].index, t[j][i].index);
                    assert_eq!(t[i][j].sign, -t[j][i].sign);
                }
            }
        }
    }

    #[test]
    fn associativity_by_dimension() {
        for dim in [1, 2, 4] {
            assert_eq!(find_nonassociative_triple(dim).unwrap(), None);
        }
        assert!(find_nonassociative_triple(8).unwrap().is_some());
    }

    #[test]
    fn rejects_bad_dims() {
        assert_eq!(AlgebraElement::zero(3), Err(AlgebraError::UnsupportedDimension(3)));
        assert_eq!(basis_table(16), Err(AlgebraError::UnsupportedDimension(16)));
        let a = AlgebraElement::one(2).unwrap();
        let b = AlgebraElement::one(4).unwrap();
        assert_eq!(
            a.checked_mul(&b),
            Err(AlgebraError::DimensionMismatch { left: 2, right: 4 })
        );
    }

    #[test]
    #[should_panic]
    fn mul_operator_panics_on_mismatch() {
        let _ = AlgebraElement::one(2).unwrap() * AlgebraElement::one(8).unwrap();
    }
}
