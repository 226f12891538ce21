//! Normal form of an R^{3,1}-valued cocycle on the boundary torus.
//!
//! A cocycle on ⟨γ₁, γ₂ | [γ₁,γ₂]⟩ twisted by the lattice translations
//! t₁, t₂ ∈ R² can be corrected by a coboundary so that its rotation data
//! becomes rot(d(γ)) = (φ(γ)·iω)·λ·ω for a unit vector ω ∈ R² and λ ≥ 0,
//! where φ(γ) is the translation vector of γ and iω is ω rotated by π/2.
//! The pair (ω, λ) is the complete invariant of the cohomology class.

use nalgebra::{Complex, DVector, Vector2};

use super::{Cocycle, ModuleTag};
use crate::error::{Error, Result};
use crate::lie::{r31_coords, R31Coordinates};

/// Result of the normal-form reduction.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusNormalForm {
    /// Unit direction of the limiting screw axes; sign-normalized so the
    /// first nonzero component is positive (ω is only defined up to sign).
    pub omega: Vector2<f64>,
    /// Nonnegative magnitude; zero exactly for coboundary classes.
    pub lambda: f64,
    /// Coboundary parameters (A, B, L) added to the input, where the
    /// parametrized coboundary has z_j = L(x_j²+y_j²) − Bx_j + Ay_j and
    /// rotation data (α_j, β_j) = (2Ly_j, −2Lx_j).
    pub correction: (f64, f64, f64),
    /// Input plus the correction coboundary; its rotation data satisfies
    /// the normal-form identity.
    pub reconstruction: Cocycle,
}

/// Rotation of a plane vector by +π/2 (multiplication by i).
pub fn rot90(v: &Vector2<f64>) -> Vector2<f64> {
    Vector2::new(-v[1], v[0])
}

/// The coboundary with parameters (A, B, L) for lattice translations t_j.
pub fn parametrized_coboundary(
    lattice: (Vector2<f64>, Vector2<f64>),
    a: f64,
    b: f64,
    l: f64,
) -> Cocycle {
    let values = [lattice.0, lattice.1]
        .iter()
        .map(|t| {
            let (x, y) = (t[0], t[1]);
            R31Coordinates {
                lambda: 0.0,
                z: l * (x * x + y * y) - b * x + a * y,
                alpha: 2.0 * l * y,
                beta: -2.0 * l * x,
            }
            .to_vector()
        })
        .collect();
    Cocycle::new(ModuleTag::R31, values)
}

/// The model cocycle of the screw-motion family with data (ω, λ): the
/// derivative at t = 0 of the family of screw motions approximating the
/// lattice translations, with rotation data (φ(γ)·iω)λω and vertical part
/// z = λ(φ(γ)·iω)²/2. The vertical part is a coboundary (all rot-free
/// torus cocycles are), so its sign is a frame convention; this is the one
/// produced by the screw family with axes below the lattice plane.
pub fn screw_model_cocycle(
    lattice: (Vector2<f64>, Vector2<f64>),
    omega: &Vector2<f64>,
    lambda: f64,
) -> Cocycle {
    let iw = rot90(omega);
    let values = [lattice.0, lattice.1]
        .iter()
        .map(|t| {
            let s = t.dot(&iw);
            R31Coordinates {
                lambda: 0.0,
                z: lambda * s * s / 2.0,
                alpha: s * lambda * omega[0],
                beta: s * lambda * omega[1],
            }
            .to_vector()
        })
        .collect();
    Cocycle::new(ModuleTag::R31, values)
}

/// Reduces a torus cocycle to its (ω, λ) normal form.
///
/// The reduction first adds the parametrized coboundary killing the real
/// part of E = (x₁−iy₁)(α₂+iβ₂) − (x₂−iy₂)(α₁+iβ₁); the cocycle relation
/// forces Im E = 0, so afterwards both generators share the complex ratio
/// c = (α+iβ)/(x−iy), which factors as (λ/2)·i·ω². A second coboundary
/// with parameter λ/4 then puts the rotation data in the final form
/// (α_j, β_j) = (t_j·iω)·λ·ω.
pub fn torus_normal_form(
    d: &Cocycle,
    lattice: (Vector2<f64>, Vector2<f64>),
) -> Result<TorusNormalForm> {
    assert_eq!(d.module_tag, ModuleTag::R31, "normal form is for R^{{3,1}}");
    assert_eq!(d.values.len(), 2, "torus cocycles have two generator values");
    let (t1, t2) = lattice;
    let det = t1[0] * t2[1] - t1[1] * t2[0];
    let scale = t1.amax().max(t2.amax());
    if det.abs() <= 1e-12 * scale * scale {
        return Err(Error::DegenerateLattice(format!(
            "lattice determinant {det:e} vanishes"
        )));
    }

    let c1 = r31_coords(&d.values[0]);
    let c2 = r31_coords(&d.values[1]);
    let magnitude = d.norm().max(1e-300);
    // Lemma-level structure of torus cocycles: values lie in the λ = 0 slice
    // and the relation below holds; both fail only for non-cocycles.
    if c1.lambda.abs() > 1e-7 * magnitude || c2.lambda.abs() > 1e-7 * magnitude {
        return Err(Error::NotACocycle(c1.lambda.abs().max(c2.lambda.abs())));
    }
    let i = Complex::new(0.0, 1.0);
    let tc1 = Complex::new(t1[0], -t1[1]);
    let tc2 = Complex::new(t2[0], -t2[1]);
    let e = tc1 * Complex::new(c2.alpha, c2.beta) - tc2 * Complex::new(c1.alpha, c1.beta);
    if e.im.abs() > 1e-7 * magnitude * scale {
        return Err(Error::NotACocycle(e.im.abs()));
    }

    // First correction: adding Δα_j = P₁·y_j, Δβ_j = −P₁·x_j (the coboundary
    // with parameter P₁/2) shifts E by 2·P₁·det, so P₁ = −Re E / (2 det)
    // makes E vanish.
    let p1 = -e.re / (2.0 * det);
    let a1 = c1.alpha + p1 * t1[1];
    let b1 = c1.beta - p1 * t1[0];
    let a2 = c2.alpha + p1 * t2[1];
    let b2 = c2.beta - p1 * t2[0];

    // With E = 0 both generators share the ratio (α+iβ)/(x−iy) = (λ/2)iω²;
    // read it from the longer lattice vector.
    let c = if t1.norm() >= t2.norm() {
        Complex::new(a1, b1) / tc1
    } else {
        Complex::new(a2, b2) / tc2
    };
    let mut lambda = 2.0 * c.norm();

    let omega = if lambda <= 1e-12 * magnitude.max(1.0) {
        lambda = 0.0;
        Vector2::new(1.0, 0.0)
    } else {
        let omega_sq = c / (Complex::new(lambda / 2.0, 0.0) * i);
        let w = omega_sq.sqrt();
        let mut omega = Vector2::new(w.re, w.im);
        // ω is defined up to sign: make the first nonzero component positive.
        let lead = if omega[0].abs() > 1e-12 { omega[0] } else { omega[1] };
        if lead < 0.0 {
            omega = -omega;
        }
        omega.normalize()
    };

    // Second correction with P₂ = λ/2 turns the shared ratio into the
    // normal-form identity (α_j, β_j) = (t_j·iω)λω. Net coboundary
    // parameter: L = (P₁ + P₂)/2.
    let total = p1 + lambda / 2.0;
    let correction = (0.0, 0.0, total / 2.0);
    let cob = parametrized_coboundary(lattice, 0.0, 0.0, total / 2.0);
    let reconstruction = Cocycle::new(
        ModuleTag::R31,
        d.values
            .iter()
            .zip(cob.values.iter())
            .map(|(v, c)| v + c)
            .collect::<Vec<DVector<f64>>>(),
    );

    Ok(TorusNormalForm {
        omega,
        lambda,
        correction,
        reconstruction,
    })
}

impl TorusNormalForm {
    /// Largest deviation of the reconstruction's rotation data from the
    /// identity rot(d(γ_j)) = (t_j·iω)·λ·ω.
    pub fn rot_residual(&self, lattice: (Vector2<f64>, Vector2<f64>)) -> f64 {
        let iw = rot90(&self.omega);
        [lattice.0, lattice.1]
            .iter()
            .zip(self.reconstruction.values.iter())
            .map(|(t, v)| {
                let c = r31_coords(v);
                let s = t.dot(&iw) * self.lambda;
                (c.alpha - s * self.omega[0])
                    .abs()
                    .max((c.beta - s * self.omega[1]).abs())
            })
            .fold(0.0, f64::max)
    }
}
