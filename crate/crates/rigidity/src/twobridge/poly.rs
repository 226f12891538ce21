//! Integer-coefficient polynomials in one variable, exact arithmetic.
//!
//! Used to extract the Riley polynomial by multiplying 2×2 matrices with
//! polynomial entries; roots are then located numerically via the companion
//! matrix and polished by Newton iteration.

use nalgebra::{Complex, DMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense polynomial over Z, coefficients from constant term upwards, no
/// trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn constant(c: i64) -> Self {
        IntPoly::from_i64(&[c])
    }

    /// The variable ω.
    pub fn x() -> Self {
        IntPoly::from_i64(&[0, 1])
    }

    fn normalize(&mut self) {
        while self.coeffs.last().map(Zero::is_zero).unwrap_or(false) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        IntPoly::new(out)
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// GCD of all coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut content = self.content();
        if self.leading().is_negative() {
            content = -content;
        }
        IntPoly::new(self.coeffs.iter().map(|c| c / &content).collect())
    }

    /// Pseudo-remainder of `self` by `other` (primitive PRS step).
    fn pseudo_rem(&self, other: &IntPoly) -> IntPoly {
        assert!(!other.is_zero());
        let mut r = self.clone();
        let d = other.degree();
        let lead = other.leading();
        while !r.is_zero() && r.degree() >= d {
            let shift = r.degree() - d;
            let factor = r.leading();
            // lead·r − factor·x^shift·other kills the top term.
            let mut shifted = vec![BigInt::zero(); shift];
            shifted.extend(other.coeffs.iter().map(|c| c * &factor));
            r = IntPoly::new(
                r.coeffs
                    .iter()
                    .map(|c| c * &lead)
                    .zip(shifted.iter().chain(std::iter::repeat(&BigInt::zero())))
                    .map(|(a, b)| a - b)
                    .collect(),
            );
        }
        r
    }

    /// Primitive GCD over Z.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let mut a = self.primitive();
        let mut b = other.primitive();
        if a.is_zero() {
            return b;
        }
        while !b.is_zero() {
            if a.degree() < b.degree() {
                std::mem::swap(&mut a, &mut b);
                continue;
            }
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a.primitive()
    }

    pub fn eval_complex(&self, z: Complex<f64>) -> Complex<f64> {
        let mut acc = Complex::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + Complex::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
        }
        acc
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// All complex roots (with multiplicity) via the companion matrix,
    /// polished by Newton iteration against the exact coefficients.
    /// Deterministically ordered by (re, im).
    pub fn complex_roots(&self) -> Result<Vec<Complex<f64>>> {
        let n = self.degree();
        if self.is_zero() || n == 0 {
            return Ok(vec![]);
        }
        let lead = self.leading().to_f64().unwrap_or(f64::NAN);
        let mut companion = DMatrix::zeros(n, n);
        for k in 0..n {
            companion[(k, n - 1)] = -self.coeffs[k].to_f64().unwrap_or(f64::NAN) / lead;
            if k + 1 < n {
                companion[(k + 1, k)] = 1.0;
            }
        }
        let eigs = companion.complex_eigenvalues();
        let deriv = self.derivative();
        let mut roots = Vec::with_capacity(n);
        for z0 in eigs.iter() {
            let mut z = *z0;
            for _ in 0..60 {
                let f = self.eval_complex(z);
                let df = deriv.eval_complex(z);
                if df.norm() < 1e-300 {
                    break;
                }
                let step = f / df;
                z -= step;
                if step.norm() < 1e-14 * (1.0 + z.norm()) {
                    break;
                }
            }
            let residual = self.eval_complex(z).norm();
            // Scale against the coefficient size so high-degree knots don't
            // trip the check; multiple roots converge slower but still land
            // well under this bound.
            let scale: f64 = self
                .coeffs
                .iter()
                .map(|c| c.to_f64().unwrap_or(f64::NAN).abs())
                .sum();
            let bound = 1e-8 * scale.max(1.0) * (1.0 + z.norm()).powi(n as i32);
            // NaN residuals must fail too, hence the explicit disjunction.
            if residual.is_nan() || residual > bound {
                return Err(Error::RootRefinementFailed(residual));
            }
            roots.push(z);
        }
        roots.sort_by(|a, b| {
            a.re.partial_cmp(&b.re)
                .unwrap()
                .then(a.im.partial_cmp(&b.im).unwrap())
        });
        Ok(roots)
    }
}

/// 2×2 matrix with polynomial entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    pub entries: [[IntPoly; 2]; 2],
}

impl PolyMatrix {
    pub fn identity() -> Self {
        PolyMatrix {
            entries: [
                [IntPoly::constant(1), IntPoly::zero()],
                [IntPoly::zero(), IntPoly::constant(1)],
            ],
        }
    }

    pub fn new(e: [[IntPoly; 2]; 2]) -> Self {
        PolyMatrix { entries: e }
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        let mut out = [
            [IntPoly::zero(), IntPoly::zero()],
            [IntPoly::zero(), IntPoly::zero()],
        ];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                for k in 0..2 {
                    *cell = cell.add(&self.entries[i][k].mul(&other.entries[k][j]));
                }
            }
        }
        PolyMatrix { entries: out }
    }

    pub fn sub(&self, other: &PolyMatrix) -> PolyMatrix {
        let mut out = self.clone();
        for i in 0..2 {
            for j in 0..2 {
                out.entries[i][j] = out.entries[i][j].sub(&other.entries[i][j]);
            }
        }
        out
    }
}
