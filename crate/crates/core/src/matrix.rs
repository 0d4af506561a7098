//! Fixed-size 3x3 matrices, real and complex.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_traits::Zero;

use crate::scalar::{c, Real, C};

pub type Real3<T> = [[T; 3]; 3];
pub type Vec3<T> = [T; 3];

/// Dense complex 3x3 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMatrix3<T: Real>(pub [[C<T>; 3]; 3]);

impl<T: Real> ComplexMatrix3<T> {
    pub fn zeros() -> Self {
        Self([[C::zero(); 3]; 3])
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..3 {
            m.0[i][i] = c(T::one(), T::zero());
        }
        m
    }

    /// Builds `re + i im`.
    pub fn from_parts(re: &Real3<T>, im: &Real3<T>) -> Self {
        let mut m = Self::zeros();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = c(re[i][j], im[i][j]);
            }
        }
        m
    }

    pub fn from_real(re: &Real3<T>) -> Self {
        Self::from_parts(re, &[[T::zero(); 3]; 3])
    }

    /// Real part, the `A` of `H = A + iB`.
    pub fn re(&self) -> Real3<T> {
        self.map_parts(|z| z.re)
    }

    /// Imaginary part, the `B` of `H = A + iB`.
    pub fn im(&self) -> Real3<T> {
        self.map_parts(|z| z.im)
    }

    fn map_parts(&self, f: impl Fn(C<T>) -> T) -> Real3<T> {
        let mut out = [[T::zero(); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = f(self.0[i][j]);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &Vec3<C<T>>) -> Vec3<C<T>> {
        let mut out = [C::zero(); 3];
        for (i, row) in self.0.iter().enumerate() {
            out[i] = row[0] * v[0] + row[1] * v[1] + row[2] * v[2];
        }
        out
    }

    pub fn frobenius(&self) -> T {
        self.0
            .iter()
            .flatten()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
            .sqrt()
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros();
        for i in 0..3 {
            for j in 0..3 {
                out.0[j][i] = self.0[i][j];
            }
        }
        out
    }
}

impl<T: Real> Index<(usize, usize)> for ComplexMatrix3<T> {
    type Output = C<T>;
    fn index(&self, (i, j): (usize, usize)) -> &C<T> {
        &self.0[i][j]
    }
}

impl<T: Real> IndexMut<(usize, usize)> for ComplexMatrix3<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C<T> {
        &mut self.0[i][j]
    }
}

impl<T: Real> Mul for ComplexMatrix3<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zeros();
        for i in 0..3 {
            for j in 0..3 {
                out.0[i][j] = (0..3).fold(C::zero(), |acc, k| acc + self.0[i][k] * rhs.0[k][j]);
            }
        }
        out
    }
}

impl<T: Real> Add for ComplexMatrix3<T> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for i in 0..3 {
            for j in 0..3 {
                self.0[i][j] = self.0[i][j] + rhs.0[i][j];
            }
        }
        self
    }
}

impl<T: Real> Sub for ComplexMatrix3<T> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for i in 0..3 {
            for j in 0..3 {
                self.0[i][j] = self.0[i][j] - rhs.0[i][j];
            }
        }
        self
    }
}

pub fn real_mul<T: Real>(a: &Real3<T>, b: &Real3<T>) -> Real3<T> {
    let mut out = [[T::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).fold(T::zero(), |acc, k| acc + a[i][k] * b[k][j]);
        }
    }
    out
}

pub fn real_transpose<T: Real>(a: &Real3<T>) -> Real3<T> {
    let mut out = [[T::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[j][i] = a[i][j];
        }
    }
    out
}

pub fn real_frobenius<T: Real>(a: &Real3<T>) -> T {
    a.iter()
        .flatten()
        .fold(T::zero(), |acc, &x| acc + x * x)
        .sqrt()
}

pub fn real_det<T: Real>(a: &Real3<T>) -> T {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

/// Column `j` of a row-major matrix.
pub fn column<T: Real>(a: &Real3<T>, j: usize) -> Vec3<T> {
    [a[0][j], a[1][j], a[2][j]]
}

pub fn dot<T: Real>(a: &Vec3<T>, b: &Vec3<T>) -> T {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}
