//! Group-level computations in SO₀(3,1) and SO₀(4,1).
//!
//! Explicit parabolic holonomies, the SL(2,C) double cover of SO₀(3,1),
//! the block embedding SO₀(3,1) → SO₀(4,1), eigenvalue/trace classification
//! of isometries of H⁴, and the affine boundary action of elements fixing
//! the light-cone point p₀.

use nalgebra::{Complex, DMatrix, DVector, Matrix2, Matrix3, Vector3};

use crate::error::{Error, Result};
use crate::minkowski::{is_special_lorentz, light_cone_basepoint, lorentz_defect, LorentzForm};
use crate::rank::svd_rank;
use crate::DEFAULT_TOL;

/// Element of SO₀(n,1), n ∈ {3,4}, stored as its (n+1)×(n+1) matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Isometry {
    n: usize,
    matrix: DMatrix<f64>,
}

/// 2×2 complex matrix, a unit-determinant representative of a PSL₂(C) class.
pub type Mobius = Matrix2<Complex<f64>>;

impl Isometry {
    /// Wraps a matrix after checking membership in SO₀(n,1).
    pub fn new(matrix: DMatrix<f64>, tol: f64) -> Result<Self> {
        let n = matrix.nrows().saturating_sub(1);
        if !is_special_lorentz(&matrix, tol) {
            return Err(Error::NotSpecialLorentz { n, tol });
        }
        Ok(Isometry { n, matrix })
    }

    /// Identity of SO₀(n,1).
    pub fn identity(n: usize) -> Self {
        Isometry {
            n,
            matrix: DMatrix::identity(n + 1, n + 1),
        }
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace()
    }

    pub fn inverse(&self) -> Self {
        // A⁻¹ = J Aᵗ J for Lorentz matrices: exact up to the input's own error.
        let j = LorentzForm::new(self.n).matrix();
        Isometry {
            n: self.n,
            matrix: &j * self.matrix.transpose() * &j,
        }
    }

    pub fn compose(&self, other: &Isometry) -> Isometry {
        assert_eq!(self.n, other.n, "composing isometries of different rank");
        Isometry {
            n: self.n,
            matrix: &self.matrix * &other.matrix,
        }
    }

    pub fn apply(&self, v: &DVector<f64>) -> DVector<f64> {
        &self.matrix * v
    }
}

impl std::ops::Mul for &Isometry {
    type Output = Isometry;
    fn mul(self, rhs: &Isometry) -> Isometry {
        self.compose(rhs)
    }
}

/// Nilpotent generator of the planar parabolic family: its exponential is
/// [`parabolic_translation`]`(x, y)` and the series terminates at order 3.
pub fn parabolic_generator(x: f64, y: f64) -> DMatrix<f64> {
    DMatrix::from_row_slice(
        4,
        4,
        &[
            0.0, 0.0, x, y, //
            0.0, 0.0, x, y, //
            x, -x, 0.0, 0.0, //
            y, -y, 0.0, 0.0,
        ],
    )
}

/// Parabolic isometry of H³ fixing p₀ = (1,1,0,0) and translating the
/// boundary plane by (x, y).
pub fn parabolic_translation(x: f64, y: f64) -> Isometry {
    let s = (x * x + y * y) / 2.0;
    Isometry {
        n: 3,
        matrix: DMatrix::from_row_slice(
            4,
            4,
            &[
                1.0 + s, -s, x, y, //
                s, 1.0 - s, x, y, //
                x, -x, 1.0, 0.0, //
                y, -y, 0.0, 1.0,
            ],
        ),
    }
}

/// Block-diagonal inclusion SO₀(3,1) → SO₀(4,1), A ↦ diag(A, 1).
pub fn embed(a: &Isometry) -> Isometry {
    assert_eq!(a.dimension(), 3, "embed expects an isometry of H³");
    let mut m = DMatrix::identity(6, 6);
    m.view_mut((0, 0), (4, 4)).copy_from(&a.matrix);
    Isometry {
        n: 4,
        matrix: m.remove_row(5).remove_column(5),
    }
}

/// Hermitian matrix h(v) = [[v⁰+v¹, v²+iv³], [v²−iv³, v⁰−v¹]] identifying
/// R^{3,1} with 2×2 Hermitian matrices (det h(v) = −v·v).
fn hermitian(v: &DVector<f64>) -> Matrix2<Complex<f64>> {
    let i = Complex::new(0.0, 1.0);
    Matrix2::new(
        Complex::new(v[0] + v[1], 0.0),
        Complex::new(v[2], 0.0) + i * v[3],
        Complex::new(v[2], 0.0) - i * v[3],
        Complex::new(v[0] - v[1], 0.0),
    )
}

fn hermitian_inv(x: &Matrix2<Complex<f64>>) -> DVector<f64> {
    DVector::from_row_slice(&[
        (x[(0, 0)].re + x[(1, 1)].re) / 2.0,
        (x[(0, 0)].re - x[(1, 1)].re) / 2.0,
        x[(0, 1)].re,
        x[(0, 1)].im,
    ])
}

/// The two-to-one homomorphism SL₂(C) → SO₀(3,1) through the action
/// X ↦ MXM† on Hermitian matrices. Calibrated so that [[1, x+iy],[0,1]]
/// maps exactly to `parabolic_translation(x, y)`.
pub fn from_sl2c(m: &Mobius) -> Result<Isometry> {
    let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
    let det_defect = (det - Complex::new(1.0, 0.0)).norm();
    if det_defect > 1e-12 {
        return Err(Error::NonUnitDeterminant(det_defect));
    }
    let mh = m.adjoint();
    let mut out = DMatrix::zeros(4, 4);
    for k in 0..4 {
        let mut e = DVector::zeros(4);
        e[k] = 1.0;
        let col = hermitian_inv(&(m * hermitian(&e) * mh));
        out.set_column(k, &col);
    }
    Ok(Isometry { n: 3, matrix: out })
}

/// Differential of [`from_sl2c`] at the identity: a traceless 2×2 complex
/// matrix u (element of sl₂(C)) maps to the so(3,1) matrix acting by
/// X ↦ uX + Xu†.
pub fn from_sl2c_tangent(u: &Matrix2<Complex<f64>>) -> DMatrix<f64> {
    let uh = u.adjoint();
    let mut out = DMatrix::zeros(4, 4);
    for k in 0..4 {
        let mut e = DVector::zeros(4);
        e[k] = 1.0;
        let h = hermitian(&e);
        let col = hermitian_inv(&(u * h + h * uh));
        out.set_column(k, &col);
    }
    out
}

/// Conjugacy class of an isometry of H⁴ together with its geometric
/// parameters: translation length λ ≥ 0 and rotation angles in [0, π].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IsometryClass {
    Identity,
    ParabolicTranslation,
    ParabolicScrew { alpha: f64 },
    Elliptic { alpha: f64, beta: f64 },
    Loxodromic { lambda: f64, alpha: f64 },
}

impl IsometryClass {
    pub fn kind_name(&self) -> &'static str {
        match self {
            IsometryClass::Identity => "identity",
            IsometryClass::ParabolicTranslation => "parabolic_translation",
            IsometryClass::ParabolicScrew { .. } => "parabolic_screw",
            IsometryClass::Elliptic { .. } => "elliptic",
            IsometryClass::Loxodromic { .. } => "loxodromic",
        }
    }

    /// Trace predicted by the class parameters; classification is validated
    /// against the actual trace with this formula.
    pub fn expected_trace(&self) -> f64 {
        match *self {
            IsometryClass::Identity => 5.0,
            IsometryClass::ParabolicTranslation => 5.0,
            IsometryClass::ParabolicScrew { alpha } => 3.0 + 2.0 * alpha.cos(),
            IsometryClass::Elliptic { alpha, beta } => 1.0 + 2.0 * alpha.cos() + 2.0 * beta.cos(),
            IsometryClass::Loxodromic { lambda, alpha } => {
                1.0 + 2.0 * lambda.cosh() + 2.0 * alpha.cos()
            }
        }
    }
}

// Eigenvalues of a unipotent block of size k perturb like ε^(1/k) under
// roundoff (observed up to ~2e-5 for the 3-blocks of parabolics), so the
// unit-modulus decision must be much coarser than machine precision.
// Loxodromics with translation length below this tolerance are reported as
// unit-modulus (parabolic or elliptic).
const UNIT_MODULUS_TOL: f64 = 1e-4;

/// Classifies an isometry of H⁴ by its eigenvalue structure.
///
/// An eigenvalue of modulus > 1 forces loxodromic (λ = log of the largest
/// modulus, α the rotation angle of the unit-modulus pair). With all
/// eigenvalues on the unit circle, the element is parabolic exactly when the
/// eigenvalue 1 is defective (geometric multiplicity below algebraic), and
/// elliptic otherwise.
pub fn classify(a: &Isometry, tol: f64) -> Result<IsometryClass> {
    assert_eq!(a.dimension(), 4, "classify expects an isometry of H⁴");
    let m = &a.matrix;
    if !is_special_lorentz(m, tol.max(DEFAULT_TOL)) {
        return Err(Error::NotSpecialLorentz { n: 4, tol });
    }

    let id = DMatrix::identity(5, 5);
    if (m - &id).amax() <= tol {
        return Ok(IsometryClass::Identity);
    }

    let eigs = m.clone().complex_eigenvalues();
    let max_mod = eigs.iter().map(|z| z.norm()).fold(0.0f64, f64::max);

    let class = if max_mod > 1.0 + UNIT_MODULUS_TOL {
        let lambda = max_mod.ln();
        // Unit-modulus eigenvalues are {1, e^{±iα}}.
        let alpha = eigs
            .iter()
            .filter(|z| (z.norm() - 1.0).abs() <= UNIT_MODULUS_TOL)
            .map(|z| z.arg().abs())
            .fold(0.0f64, f64::max);
        IsometryClass::Loxodromic { lambda, alpha }
    } else {
        // All eigenvalues on the unit circle: parabolic iff the eigenvalue 1
        // has a nontrivial Jordan block.
        let algebraic_one = eigs
            .iter()
            .filter(|z| (*z - Complex::new(1.0, 0.0)).norm() <= 1e-4)
            .count();
        let geometric_one = 5 - svd_rank(&(m - &id), 1e-8)?;
        let mut args: Vec<f64> = eigs.iter().map(|z| z.arg().abs()).collect();
        args.sort_by(|x, y| y.partial_cmp(x).unwrap());
        if geometric_one < algebraic_one {
            let alpha = args[0];
            if alpha <= 1e-4 {
                IsometryClass::ParabolicTranslation
            } else {
                IsometryClass::ParabolicScrew { alpha }
            }
        } else {
            // Eigenvalues {1, e^{±iα}, e^{±iβ}}: drop the 0 argument, the
            // remaining four pair up as {α, α, β, β}.
            IsometryClass::Elliptic {
                alpha: args[0],
                beta: args[2],
            }
        }
    };

    Ok(class)
}

/// Fixed null frame for the boundary identification ∂H⁴ ∖ {p₀} ≅ R³:
/// (p₀, q₀, e₂, e₃, e₄) with p₀ = (1,1,0,0,0), q₀ = (1,−1,0,0,0)/2,
/// so that p₀·q₀ = −1. The boundary point u ∈ R³ is the null ray through
/// q₀ + u¹e₂ + u²e₃ + u³e₄ + (|u|²/2) p₀.
fn null_frame() -> [DVector<f64>; 5] {
    let p0 = light_cone_basepoint(4);
    let q0 = DVector::from_row_slice(&[0.5, -0.5, 0.0, 0.0, 0.0]);
    let mut frame = [p0, q0, DVector::zeros(5), DVector::zeros(5), DVector::zeros(5)];
    for i in 0..3 {
        frame[2 + i][2 + i] = 1.0;
    }
    frame
}

fn boundary_lift(u: &Vector3<f64>) -> DVector<f64> {
    let f = null_frame();
    &f[1] + u[0] * &f[2] + u[1] * &f[3] + u[2] * &f[4] + (u.norm_squared() / 2.0) * &f[0]
}

/// Similarity u ↦ scale · linear · u + translation of R³ = ∂H⁴ ∖ {p₀}.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundarySimilarity {
    pub linear: Matrix3<f64>,
    pub translation: Vector3<f64>,
    pub scale: f64,
}

/// Induced similarity of the boundary plane for an isometry fixing p₀.
///
/// For parabolic elements scale = 1 and the map is a Euclidean isometry.
pub fn boundary_affine_action(a: &Isometry) -> Result<BoundarySimilarity> {
    assert_eq!(a.dimension(), 4, "boundary action lives on ∂H⁴");
    let j = LorentzForm::new(4).matrix();
    let f = null_frame();
    let p0 = &f[0];

    let ap0 = a.apply(p0);
    let mu = -(&ap0.transpose() * &j * DVector::from(f[1].clone()))[(0, 0)];
    let defect = (&ap0 - mu * p0).amax();
    if mu <= 0.0 || defect > 1e-7 * (1.0 + mu) {
        return Err(Error::DoesNotFixBasepoint(defect));
    }

    // The boundary action is affine; read it off at 0 and the axis points.
    let image = |u: &Vector3<f64>| -> Result<Vector3<f64>> {
        let w = a.apply(&boundary_lift(u));
        let c = -(&w.transpose() * &j * p0)[(0, 0)];
        if c.abs() <= 1e-12 {
            return Err(Error::DoesNotFixBasepoint(c.abs()));
        }
        let w = w / c;
        Ok(Vector3::new(
            (&w.transpose() * &j * &f[2])[(0, 0)],
            (&w.transpose() * &j * &f[3])[(0, 0)],
            (&w.transpose() * &j * &f[4])[(0, 0)],
        ))
    };

    let b = image(&Vector3::zeros())?;
    let mut sl = Matrix3::zeros();
    for i in 0..3 {
        let mut e = Vector3::zeros();
        e[i] = 1.0;
        sl.set_column(i, &(image(&e)? - b));
    }
    let scale = sl.column(0).norm();
    Ok(BoundarySimilarity {
        linear: sl / scale,
        translation: b,
        scale,
    })
}

/// Inverse of [`boundary_affine_action`]: builds the isometry of H⁴ fixing
/// p₀ that acts on the boundary plane as u ↦ scale · linear · u + translation,
/// with `linear` ∈ SO(3).
pub fn from_boundary_similarity(
    linear: &Matrix3<f64>,
    translation: &Vector3<f64>,
    scale: f64,
) -> Result<Isometry> {
    if scale <= 0.0 {
        return Err(Error::Parse("scale must be positive".into()));
    }
    let f = null_frame();
    let p0 = &f[0];
    let b = translation / scale;

    // Euclidean part: q₀ ↦ lift(b), eᵢ ↦ R eᵢ + (b·R eᵢ) p₀, p₀ ↦ p₀.
    let mut frame_mat = DMatrix::zeros(5, 5);
    for (i, v) in f.iter().enumerate() {
        frame_mat.set_column(i, v);
    }
    let mut target = DMatrix::zeros(5, 5);
    target.set_column(0, p0);
    target.set_column(1, &boundary_lift(&b));
    for i in 0..3 {
        let re: Vector3<f64> = linear.column(i).into();
        let mut col = re[0] * &f[2] + re[1] * &f[3] + re[2] * &f[4];
        col += b.dot(&re) * p0;
        target.set_column(2 + i, &col);
    }
    let euclidean = &target
        * frame_mat
            .clone()
            .try_inverse()
            .expect("null frame is a basis");

    // Dilation part: p₀ ↦ s·p₀, q₀ ↦ q₀/s, frame vectors fixed.
    let mut dil_frame = DMatrix::zeros(5, 5);
    dil_frame.set_column(0, &(scale * p0));
    dil_frame.set_column(1, &(&f[1] / scale));
    for i in 0..3 {
        dil_frame.set_column(2 + i, &f[2 + i]);
    }
    let dilation = &dil_frame * frame_mat.try_inverse().expect("null frame is a basis");

    Isometry::new(dilation * euclidean, 1e-7)
}

/// Axis decomposition of a parabolic isometry's boundary action.
#[derive(Debug, Clone, PartialEq)]
pub enum ScrewDecomposition {
    /// Trivial rotation part: no canonical axis, callers must pick a
    /// direction at the cocycle level instead.
    PureTranslation { translation: Vector3<f64> },
    /// Rotation by `angle` about `axis` composed with a translation whose
    /// component along the axis is `trans`.
    Screw {
        trans: f64,
        axis: Vector3<f64>,
        angle: f64,
    },
}

/// Translation length along the screw axis of an isometry of H⁴ whose
/// boundary action at p₀ is a Euclidean screw motion (scale 1). This covers
/// parabolic translations, parabolic screws, and boundary rotations.
pub fn screw_translation_length(a: &Isometry) -> Result<ScrewDecomposition> {
    let sim = boundary_affine_action(a)?;
    if (sim.scale - 1.0).abs() > 1e-8 {
        return Err(Error::NotParabolic(format!(
            "boundary action has scale {}, not a Euclidean motion",
            sim.scale
        )));
    }
    let r = &sim.linear;
    if (r - Matrix3::identity()).amax() <= 1e-8 {
        return Ok(ScrewDecomposition::PureTranslation {
            translation: sim.translation,
        });
    }

    // Axis from the antisymmetric part (sin α ≠ 0), else from ker(R−I).
    let skew = Vector3::new(
        r[(2, 1)] - r[(1, 2)],
        r[(0, 2)] - r[(2, 0)],
        r[(1, 0)] - r[(0, 1)],
    );
    let axis = if skew.norm() > 1e-8 {
        skew.normalize()
    } else {
        // Rotation by π: any unit kernel vector of R−I, sign fixed by the
        // first nonzero component.
        let ri = DMatrix::from_iterator(3, 3, (r - Matrix3::identity()).iter().cloned());
        let ker = crate::rank::kernel_basis(&ri, 1e-8)?;
        let mut v = Vector3::new(ker[(0, 0)], ker[(1, 0)], ker[(2, 0)]);
        if let Some(lead) = v.iter().find(|x| x.abs() > 1e-10) {
            if *lead < 0.0 {
                v = -v;
            }
        }
        v.normalize()
    };
    let cosines: Vec<f64> = (0..3).map(|i| r[(i, i)]).collect();
    let angle = (((cosines.iter().sum::<f64>() - 1.0) / 2.0).clamp(-1.0, 1.0)).acos();
    Ok(ScrewDecomposition::Screw {
        trans: sim.translation.dot(&axis),
        axis,
        angle,
    })
}

/// Lorentz-membership defect of the matrix, used in residual reports.
pub fn lorentz_residual(a: &Isometry) -> f64 {
    lorentz_defect(&a.matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expm::expm;
    use approx::assert_abs_diff_eq;

    fn random_sl2(seed: u64) -> Mobius {
        // Small deterministic pseudo-random SL(2,C) element.
        let mut s = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
        let mut next = || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((s >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        let a = Complex::new(1.0 + 0.3 * next(), 0.3 * next());
        let b = Complex::new(0.5 * next(), 0.5 * next());
        let c = Complex::new(0.5 * next(), 0.5 * next());
        // Solve for d so the determinant is exactly 1.
        let d = (Complex::new(1.0, 0.0) + b * c) / a;
        Matrix2::new(a, b, c, d)
    }

    #[test]
    fn parabolic_at_origin_is_identity() {
        assert_eq!(parabolic_translation(0.0, 0.0), Isometry::identity(3));
    }

    #[test]
    fn parabolic_matrix_at_one_zero() {
        let m = parabolic_translation(1.0, 0.0);
        let expected = DMatrix::from_row_slice(
            4,
            4,
            &[
                1.5, -0.5, 1.0, 0.0, //
                0.5, 0.5, 1.0, 0.0, //
                1.0, -1.0, 1.0, 0.0, //
                0.0, 0.0, 0.0, 1.0,
            ],
        );
        assert_eq!(m.matrix(), &expected);
    }

    #[test]
    fn parabolic_fixes_p0_and_is_lorentz() {
        let m = parabolic_translation(0.7, -1.3);
        let p0 = light_cone_basepoint(3);
        assert!((m.apply(&p0) - &p0).amax() < 1e-14);
        assert!(is_special_lorentz(m.matrix(), 1e-12));
    }

    #[test]
    fn parabolic_equals_exponential_of_generator() {
        for &(x, y) in &[(2.0, 3.0), (-0.4, 0.9), (5.0, -2.5)] {
            let closed = parabolic_translation(x, y);
            let series = expm(&parabolic_generator(x, y));
            assert!((closed.matrix() - series).amax() < 1e-12);
        }
    }

    #[test]
    fn parabolic_is_additive() {
        let lhs = &parabolic_translation(1.2, -0.3) * &parabolic_translation(0.4, 2.0);
        let rhs = parabolic_translation(1.6, 1.7);
        assert!((lhs.matrix() - rhs.matrix()).amax() < 1e-12);
    }

    #[test]
    fn embed_preserves_products_and_trace() {
        let a = parabolic_translation(1.0, 0.0);
        let b = parabolic_translation(-0.5, 2.0);
        let ea = embed(&a);
        assert_abs_diff_eq!(ea.trace(), 5.0, epsilon = 1e-12);
        let lhs = embed(&(&a * &b));
        let rhs = &ea * &embed(&b);
        assert!((lhs.matrix() - rhs.matrix()).amax() < 1e-12);
    }

    #[test]
    fn from_sl2c_calibration() {
        let m = Matrix2::new(
            Complex::new(1.0, 0.0),
            Complex::new(1.0, 0.0),
            Complex::new(0.0, 0.0),
            Complex::new(1.0, 0.0),
        );
        let img = from_sl2c(&m).unwrap();
        assert!((img.matrix() - parabolic_translation(1.0, 0.0).matrix()).amax() < 1e-14);

        let my = Matrix2::new(
            Complex::new(1.0, 0.0),
            Complex::new(0.3, -0.8),
            Complex::new(0.0, 0.0),
            Complex::new(1.0, 0.0),
        );
        let img = from_sl2c(&my).unwrap();
        assert!((img.matrix() - parabolic_translation(0.3, -0.8).matrix()).amax() < 1e-13);
    }

    #[test]
    fn from_sl2c_is_homomorphism_with_trace_identity() {
        for seed in 0..100 {
            let m = random_sl2(seed);
            let n = random_sl2(seed + 1000);
            let lhs = from_sl2c(&(m * n)).unwrap();
            let rhs = &from_sl2c(&m).unwrap() * &from_sl2c(&n).unwrap();
            assert!((lhs.matrix() - rhs.matrix()).amax() < 1e-9);

            let t_sl2 = (m[(0, 0)] + m[(1, 1)]).norm();
            let img = from_sl2c(&m).unwrap();
            assert_abs_diff_eq!(img.trace(), t_sl2 * t_sl2, epsilon = 1e-9);
            assert_abs_diff_eq!(
                embed(&img).trace(),
                t_sl2 * t_sl2 + 1.0,
                epsilon = 1e-9
            );
        }
    }

    #[test]
    fn from_sl2c_rejects_non_unit_determinant() {
        let m = Matrix2::new(
            Complex::new(2.0, 0.0),
            Complex::new(0.0, 0.0),
            Complex::new(0.0, 0.0),
            Complex::new(1.0, 0.0),
        );
        assert!(matches!(from_sl2c(&m), Err(Error::NonUnitDeterminant(_))));
    }

    #[test]
    fn from_sl2c_kernel_is_plus_minus_identity() {
        let m = Matrix2::new(
            Complex::new(-1.0, 0.0),
            Complex::new(0.0, 0.0),
            Complex::new(0.0, 0.0),
            Complex::new(-1.0, 0.0),
        );
        let img = from_sl2c(&m).unwrap();
        assert!((img.matrix() - DMatrix::identity(4, 4)).amax() < 1e-14);
    }

    #[test]
    fn classify_identity_and_parabolic() {
        assert_eq!(
            classify(&Isometry::identity(4), 1e-9).unwrap(),
            IsometryClass::Identity
        );
        let p = embed(&parabolic_translation(1.0, 0.0));
        let c = classify(&p, 1e-9).unwrap();
        assert_eq!(c, IsometryClass::ParabolicTranslation);
        assert_abs_diff_eq!(p.trace(), c.expected_trace(), epsilon = 1e-12);
    }

    #[test]
    fn classify_loxodromic_from_diagonal_sl2() {
        let u: f64 = 1.0;
        let m = Matrix2::new(
            Complex::new((u / 2.0).exp(), 0.0),
            Complex::new(0.0, 0.0),
            Complex::new(0.0, 0.0),
            Complex::new((-u / 2.0).exp(), 0.0),
        );
        let a = embed(&from_sl2c(&m).unwrap());
        match classify(&a, 1e-9).unwrap() {
            IsometryClass::Loxodromic { lambda, alpha } => {
                assert_abs_diff_eq!(lambda, 1.0, epsilon = 1e-9);
                assert_abs_diff_eq!(alpha, 0.0, epsilon = 1e-6);
            }
            other => panic!("expected loxodromic, got {other:?}"),
        }
        assert_abs_diff_eq!(a.trace(), 3.0 + 2.0 * u.cosh(), epsilon = 1e-12);
    }

    #[test]
    fn classify_elliptic_block_rotation() {
        let (alpha, beta) = (std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_3);
        let mut m = DMatrix::identity(5, 5);
        m[(1, 1)] = alpha.cos();
        m[(1, 2)] = -alpha.sin();
        m[(2, 1)] = alpha.sin();
        m[(2, 2)] = alpha.cos();
        m[(3, 3)] = beta.cos();
        m[(3, 4)] = -beta.sin();
        m[(4, 3)] = beta.sin();
        m[(4, 4)] = beta.cos();
        let a = Isometry::new(m, 1e-12).unwrap();
        match classify(&a, 1e-9).unwrap() {
            IsometryClass::Elliptic { alpha: a1, beta: b1 } => {
                assert_abs_diff_eq!(a1, alpha, epsilon = 1e-9);
                assert_abs_diff_eq!(b1, beta, epsilon = 1e-9);
            }
            other => panic!("expected elliptic, got {other:?}"),
        }
        assert_abs_diff_eq!(a.trace(), 2.0, epsilon = 1e-12);
    }

    #[test]
    fn boundary_action_of_embedded_parabolic() {
        let a = embed(&parabolic_translation(0.8, -0.6));
        let sim = boundary_affine_action(&a).unwrap();
        assert!((sim.linear - Matrix3::identity()).amax() < 1e-12);
        assert!((sim.translation - Vector3::new(0.8, -0.6, 0.0)).amax() < 1e-12);
        assert_abs_diff_eq!(sim.scale, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn boundary_action_round_trip() {
        let angle: f64 = 0.9;
        let axis = Vector3::new(0.0, 0.0, 1.0);
        let r = nalgebra::Rotation3::from_axis_angle(&nalgebra::Unit::new_normalize(axis), angle)
            .into_inner();
        let t = Vector3::new(0.4, -1.1, 0.25);
        let a = from_boundary_similarity(&r, &t, 1.7).unwrap();
        let sim = boundary_affine_action(&a).unwrap();
        assert!((sim.linear - r).amax() < 1e-10);
        assert!((sim.translation - t).amax() < 1e-10);
        assert_abs_diff_eq!(sim.scale, 1.7, epsilon = 1e-10);
    }

    #[test]
    fn loxodromic_fixing_origin_has_scale_e_lambda() {
        let a = from_boundary_similarity(&Matrix3::identity(), &Vector3::zeros(), 1.0f64.exp())
            .unwrap();
        match classify(&a, 1e-9).unwrap() {
            IsometryClass::Loxodromic { lambda, .. } => {
                assert_abs_diff_eq!(lambda, 1.0, epsilon = 1e-9)
            }
            other => panic!("expected loxodromic, got {other:?}"),
        }
        let sim = boundary_affine_action(&a).unwrap();
        assert_abs_diff_eq!(sim.scale, 1.0f64.exp(), epsilon = 1e-10);
    }

    #[test]
    fn screw_decomposition_examples() {
        let axis = nalgebra::Unit::new_normalize(Vector3::new(1.0, 0.0, 0.0));
        let r = nalgebra::Rotation3::from_axis_angle(&axis, std::f64::consts::FRAC_PI_2)
            .into_inner();

        let a = from_boundary_similarity(&r, &Vector3::new(3.0, 0.0, 0.0), 1.0).unwrap();
        match screw_translation_length(&a).unwrap() {
            ScrewDecomposition::Screw { trans, axis, angle } => {
                assert_abs_diff_eq!(trans, 3.0, epsilon = 1e-9);
                assert!((axis - Vector3::new(1.0, 0.0, 0.0)).amax() < 1e-9);
                assert_abs_diff_eq!(angle, std::f64::consts::FRAC_PI_2, epsilon = 1e-9);
            }
            other => panic!("expected screw, got {other:?}"),
        }
        assert_abs_diff_eq!(a.trace(), 3.0, epsilon = 1e-9);

        let b = from_boundary_similarity(&r, &Vector3::new(0.0, 4.0, 0.0), 1.0).unwrap();
        match screw_translation_length(&b).unwrap() {
            ScrewDecomposition::Screw { trans, .. } => {
                assert_abs_diff_eq!(trans, 0.0, epsilon = 1e-9)
            }
            other => panic!("expected screw, got {other:?}"),
        }

        let c = embed(&parabolic_translation(2.0, 0.0));
        assert!(matches!(
            screw_translation_length(&c).unwrap(),
            ScrewDecomposition::PureTranslation { .. }
        ));
    }
}
