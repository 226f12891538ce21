//! Minkowski linear algebra: the Lorentz form `J = diag(-1, 1, …, 1)`, causal
//! classification, hyperboloid / de Sitter membership and the `SO_0(n,1)`
//! membership predicate.
//!
//! Convention: coordinate 0 is the timelike coordinate, everywhere.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::DEFAULT_TOL;

/// A point or vector of `R^{n,1}`, stored as its `n+1` coordinates.
pub type MinkVector = DVector<f64>;

/// The Lorentz form of `R^{n,1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LorentzForm {
    n: usize,
}

impl LorentzForm {
    pub fn new(n: usize) -> Self {
        assert!((2..=4).contains(&n), "ambient dimension n must be 2, 3 or 4");
        LorentzForm { n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The matrix `diag(-1, 1, …, 1)` of size `(n+1) x (n+1)`.
    pub fn matrix(&self) -> DMatrix<f64> {
        let mut j = DMatrix::identity(self.n + 1, self.n + 1);
        j[(0, 0)] = -1.0;
        j
    }

    /// Applies `J` to a vector (negates the timelike coordinate).
    pub fn apply(&self, v: &MinkVector) -> MinkVector {
        let mut w = v.clone();
        w[0] = -w[0];
        w
    }
}

/// The Lorentz product `u^t J v`.
pub fn lorentz_product(u: &MinkVector, v: &MinkVector) -> Result<f64> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch(u.len(), v.len()));
    }
    let mut s = -u[0] * v[0];
    for i in 1..u.len() {
        s += u[i] * v[i];
    }
    Ok(s)
}

/// Sign of the self Lorentz product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CausalClass {
    Timelike,
    Spacelike,
    Lightlike,
}

/// Membership in the two unit-norm quadrics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadricClass {
    /// `v^t J v = -1` and `v^0 > 0`: a point of hyperbolic space `H^n`.
    OnHyperboloid,
    /// `v^t J v = +1`: a point of de Sitter space, i.e. an oriented hyperplane.
    OnDeSitter,
    Neither,
}

/// Classifies a nonzero vector by the sign of `v^t J v` within `tol`.
pub fn classify_vector(v: &MinkVector, tol: f64) -> Result<(CausalClass, QuadricClass)> {
    if v.amax() == 0.0 {
        return Err(Error::ZeroVector);
    }
    let q = lorentz_product(v, v)?;
    let causal = if q < -tol {
        CausalClass::Timelike
    } else if q > tol {
        CausalClass::Spacelike
    } else {
        CausalClass::Lightlike
    };
    let quadric = if (q + 1.0).abs() <= tol && v[0] > 0.0 {
        QuadricClass::OnHyperboloid
    } else if (q - 1.0).abs() <= tol {
        QuadricClass::OnDeSitter
    } else {
        QuadricClass::Neither
    };
    Ok((causal, quadric))
}

/// Max-norm of `A^t J A - J`, the defect of `A` as a Lorentz matrix.
pub fn lorentz_defect(a: &DMatrix<f64>) -> f64 {
    let n = a.nrows() - 1;
    let j = LorentzForm::new(n).matrix();
    (a.transpose() * &j * a - j).amax()
}

/// True iff `A` lies in the identity component `SO_0(n,1)`:
/// `A^t J A = J`, `det A = 1` and `(A e_0)^0 > 0`, all within `tol`.
pub fn is_special_lorentz(a: &DMatrix<f64>, tol: f64) -> bool {
    if a.nrows() != a.ncols() || a.nrows() < 3 {
        return false;
    }
    if lorentz_defect(a) > tol {
        return false;
    }
    if (a.determinant() - 1.0).abs() > tol {
        return false;
    }
    a[(0, 0)] > 0.0
}

/// `is_special_lorentz` at the default tolerance.
pub fn is_special_lorentz_default(a: &DMatrix<f64>) -> bool {
    is_special_lorentz(a, DEFAULT_TOL)
}

/// The invariant light-cone point `p0 = (1, 1, 0, …, 0)` of `R^{n,1}`.
pub fn light_cone_basepoint(n: usize) -> MinkVector {
    let mut p = DVector::zeros(n + 1);
    p[0] = 1.0;
    p[1] = 1.0;
    p
}
