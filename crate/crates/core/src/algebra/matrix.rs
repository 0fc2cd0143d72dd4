//! 3×3 matrices over a commutative ring.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::field::{Coeff, NfElem};
use super::laurent::LaurentPoly;

/// Minimal commutative-ring interface. Elements carry their own context
/// (the number field), so constants are produced from an existing element.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
}

impl Ring for f64 {
    fn zero_like(&self) -> Self {
        0.0
    }
    fn one_like(&self) -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

impl<C: Coeff> Ring for NfElem<C> {
    fn zero_like(&self) -> Self {
        NfElem::zero(self.field())
    }
    fn one_like(&self) -> Self {
        NfElem::one(self.field())
    }
    fn is_zero(&self) -> bool {
        NfElem::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
}

impl Ring for LaurentPoly {
    fn zero_like(&self) -> Self {
        LaurentPoly::zero(self.field())
    }
    fn one_like(&self) -> Self {
        LaurentPoly::one(self.field())
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
}

/// Row-major 3×3 matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat3<R>(pub [[R; 3]; 3]);

impl<R: fmt::Debug> fmt::Debug for Mat3<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

impl<R: Ring> Mat3<R> {
    pub fn from_fn(mut f: impl FnMut(usize, usize) -> R) -> Self {
        Mat3(std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))))
    }

    /// Identity matrix in the ring of `like`.
    pub fn identity_like(like: &R) -> Self {
        let zero = like.zero_like();
        let one = like.one_like();
        Self::from_fn(|i, j| if i == j { one.clone() } else { zero.clone() })
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.0[i][j]
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::from_fn(|i, j| {
            let a = &self.0;
            let b = &rhs.0;
            a[i][0]
                .mul_ref(&b[0][j])
                .add_ref(&a[i][1].mul_ref(&b[1][j]))
                .add_ref(&a[i][2].mul_ref(&b[2][j]))
        })
    }

    pub fn mul_vec(&self, v: &[R; 3]) -> [R; 3] {
        std::array::from_fn(|i| {
            self.0[i][0]
                .mul_ref(&v[0])
                .add_ref(&self.0[i][1].mul_ref(&v[1]))
                .add_ref(&self.0[i][2].mul_ref(&v[2]))
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::identity_like(&self.0[0][0]);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i].clone())
    }

    pub fn trace(&self) -> R {
        self.0[0][0].add_ref(&self.0[1][1]).add_ref(&self.0[2][2])
    }

    /// Sum of principal 2×2 minors (the λ-coefficient of the characteristic polynomial).
    pub fn second_invariant(&self) -> R {
        let m = &self.0;
        let minor = |i: usize, j: usize| m[i][i].mul_ref(&m[j][j]).sub_ref(&m[i][j].mul_ref(&m[j][i]));
        minor(0, 1).add_ref(&minor(0, 2)).add_ref(&minor(1, 2))
    }

    pub fn det(&self) -> R {
        let m = &self.0;
        let c0 = m[1][1].mul_ref(&m[2][2]).sub_ref(&m[1][2].mul_ref(&m[2][1]));
        let c1 = m[1][0].mul_ref(&m[2][2]).sub_ref(&m[1][2].mul_ref(&m[2][0]));
        let c2 = m[1][0].mul_ref(&m[2][1]).sub_ref(&m[1][1].mul_ref(&m[2][0]));
        m[0][0]
            .mul_ref(&c0)
            .sub_ref(&m[0][1].mul_ref(&c1))
            .add_ref(&m[0][2].mul_ref(&c2))
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity_like(&self.0[0][0])
    }

    pub fn map<S>(&self, mut f: impl FnMut(&R) -> S) -> Mat3<S> {
        Mat3(std::array::from_fn(|i| std::array::from_fn(|j| f(&self.0[i][j]))))
    }
}

impl Mat3<f64> {
    pub fn identity() -> Self {
        Self::identity_like(&0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .fold(0.0_f64, |acc, x| acc.max(x.abs()))
    }

    pub fn scale(&self, k: f64) -> Self {
        self.map(|x| x * k)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .fold(0.0_f64, |acc, (a, b)| acc.max((a - b).abs()))
    }
}

impl Mat3<LaurentPoly> {
    /// Specializes every entry at a float parameter value.
    pub fn eval(&self, t: f64) -> Mat3<f64> {
        self.map(|p| p.eval(t))
    }
}

impl<C: Coeff> Mat3<NfElem<C>> {
    pub fn to_f64(&self) -> Mat3<f64> {
        self.map(|e| e.to_f64())
    }
}

/// Exact-integer matrices convert losslessly to rational ones.
impl From<&Mat3<NfElem<BigInt>>> for Mat3<NfElem<BigRational>> {
    fn from(m: &Mat3<NfElem<BigInt>>) -> Self {
        m.map(|e| NfElem::<BigRational>::from(e))
    }
}
