//! The Lie algebra layer: so(n,1) membership, the module splitting
//! so(4,1) = so(3,1) ⊕ R^{3,1}, adjoint actions, Killing-field evaluation,
//! the (λ, z, β, α) coordinates on R^{3,1}, and the rot projection.

use nalgebra::{DMatrix, DVector, Vector3};

use crate::error::{Error, Result};
use crate::expm::expm;
use crate::isometry::Isometry;
use crate::minkowski::{classify_vector, LorentzForm, QuadricClass};

const LIE_TOL: f64 = 1e-12;

/// Element of so(n,1) = {a : aᵗJ = −Ja}, stored as its (n+1)×(n+1) matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct LieElement {
    n: usize,
    matrix: DMatrix<f64>,
}

impl LieElement {
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        let n = matrix.nrows().saturating_sub(1);
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::DimensionMismatch(matrix.nrows(), matrix.ncols()));
        }
        let j = LorentzForm::new(n).matrix();
        let defect = (matrix.transpose() * &j + &j * &matrix).amax();
        let scale = matrix.amax().max(1.0);
        if defect > LIE_TOL * scale {
            return Err(Error::NotLieElement { n, defect });
        }
        Ok(LieElement { n, matrix })
    }

    pub fn zero(n: usize) -> Self {
        LieElement {
            n,
            matrix: DMatrix::zeros(n + 1, n + 1),
        }
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// Lie bracket [a,b] = ab − ba; closed in so(n,1).
    pub fn bracket(&self, other: &LieElement) -> LieElement {
        assert_eq!(self.n, other.n, "bracket of different algebras");
        LieElement {
            n: self.n,
            matrix: &self.matrix * &other.matrix - &other.matrix * &self.matrix,
        }
    }

    /// One-parameter subgroup exp(t·a) at t = 1.
    pub fn exp(&self) -> Isometry {
        Isometry::new(expm(&self.matrix), 1e-9)
            .expect("exponential of a Lorentz algebra element is in the group")
    }
}

/// Image of an so(4,1) element under the module splitting:
/// block form (a, v; −vᵗJ, 0) with a ∈ so(3,1) and v ∈ R^{3,1}.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitElement {
    pub rot_part: LieElement,
    pub vec_part: DVector<f64>,
}

/// Splits an so(4,1) element into its so(3,1) block and R^{3,1} vector.
pub fn split(a: &LieElement) -> SplitElement {
    assert_eq!(a.dimension(), 4, "split expects so(4,1)");
    let m = &a.matrix;
    let rot = m.view((0, 0), (4, 4)).into_owned();
    let vec = m.view((0, 4), (4, 1)).into_owned();
    SplitElement {
        rot_part: LieElement { n: 3, matrix: rot },
        vec_part: DVector::from_column_slice(vec.as_slice()),
    }
}

/// Inverse of [`split`]: assembles (a, v; −vᵗJ, 0) ∈ so(4,1).
pub fn join(rot_part: &LieElement, vec_part: &DVector<f64>) -> Result<LieElement> {
    assert_eq!(rot_part.dimension(), 3, "join expects an so(3,1) block");
    if vec_part.len() != 4 {
        return Err(Error::DimensionMismatch(vec_part.len(), 4));
    }
    let j3 = LorentzForm::new(3).matrix();
    let bottom = -(vec_part.transpose() * j3);
    let mut m = DMatrix::zeros(5, 5);
    m.view_mut((0, 0), (4, 4)).copy_from(&rot_part.matrix);
    m.view_mut((0, 4), (4, 1)).copy_from(vec_part);
    m.view_mut((4, 0), (1, 4)).copy_from(&bottom);
    LieElement::new(m)
}

/// Adjoint action Ad_g(a) = g a g⁻¹.
pub fn adjoint(g: &Isometry, a: &LieElement) -> LieElement {
    assert_eq!(g.dimension(), a.dimension(), "adjoint dimension mismatch");
    LieElement {
        n: a.n,
        matrix: g.matrix() * &a.matrix * g.inverse().matrix(),
    }
}

/// Killing vector field of `a` evaluated at a hyperboloid point: V_x = a·x,
/// always tangent to the hyperboloid (x·ax = 0).
pub fn killing_eval(a: &LieElement, x: &DVector<f64>) -> Result<DVector<f64>> {
    if x.len() != a.n + 1 {
        return Err(Error::DimensionMismatch(x.len(), a.n + 1));
    }
    let (_, quadric) = classify_vector(x, 1e-9)?;
    if quadric != QuadricClass::OnHyperboloid {
        let j = LorentzForm::new(a.n).matrix();
        let q = (x.transpose() * j * x)[(0, 0)];
        return Err(Error::NotOnHyperboloid(q));
    }
    Ok(&a.matrix * x)
}

/// Coordinates (λ, z, β, α) of a vector v ∈ R^{3,1}:
/// v = (z+λ, z−λ, −β, α)ᵗ. λ measures the infinitesimal displacement of p₀
/// off the light cone; z is an infinitesimal vertical translation; (α, β)
/// assemble into the infinitesimal rotation vector rot(v) = (α, β, 0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct R31Coordinates {
    pub lambda: f64,
    pub z: f64,
    pub beta: f64,
    pub alpha: f64,
}

impl R31Coordinates {
    pub fn to_vector(self) -> DVector<f64> {
        DVector::from_row_slice(&[
            self.z + self.lambda,
            self.z - self.lambda,
            -self.beta,
            self.alpha,
        ])
    }
}

pub fn r31_coords(v: &DVector<f64>) -> R31Coordinates {
    assert_eq!(v.len(), 4, "R^{{3,1}} vector expected");
    R31Coordinates {
        lambda: (v[0] - v[1]) / 2.0,
        z: (v[0] + v[1]) / 2.0,
        beta: -v[2],
        alpha: v[3],
    }
}

/// Projection v ↦ (α, β, 0), the infinitesimal rotation vector of v.
pub fn rot(v: &DVector<f64>) -> Vector3<f64> {
    let c = r31_coords(v);
    Vector3::new(c.alpha, c.beta, 0.0)
}

/// Ordered basis of so(n,1): boosts K_k = e₀e_kᵗ + e_ke₀ᵗ (k = 1..n), then
/// rotations R_ij = e_ie_jᵗ − e_je_iᵗ (1 ≤ i < j ≤ n). Dimension n(n+1)/2.
pub fn so_basis(n: usize) -> Vec<LieElement> {
    let d = n + 1;
    let mut basis = Vec::new();
    for k in 1..=n {
        let mut m = DMatrix::zeros(d, d);
        m[(0, k)] = 1.0;
        m[(k, 0)] = 1.0;
        basis.push(LieElement { n, matrix: m });
    }
    for i in 1..=n {
        for j in (i + 1)..=n {
            let mut m = DMatrix::zeros(d, d);
            m[(i, j)] = 1.0;
            m[(j, i)] = -1.0;
            basis.push(LieElement { n, matrix: m });
        }
    }
    basis
}

/// Coordinates of an so(n,1) element in the [`so_basis`] order; exact
/// inverse of summing coordinate · basis element.
pub fn so_coords(a: &LieElement) -> DVector<f64> {
    let n = a.n;
    let m = &a.matrix;
    let mut coords = Vec::with_capacity(n * (n + 1) / 2);
    for k in 1..=n {
        coords.push(m[(0, k)]);
    }
    for i in 1..=n {
        for j in (i + 1)..=n {
            coords.push(m[(i, j)]);
        }
    }
    DVector::from_vec(coords)
}

/// Reconstructs an so(n,1) element from [`so_basis`] coordinates.
pub fn so_from_coords(n: usize, coords: &DVector<f64>) -> LieElement {
    let basis = so_basis(n);
    assert_eq!(coords.len(), basis.len(), "coordinate count mismatch");
    let mut m = DMatrix::zeros(n + 1, n + 1);
    for (c, b) in coords.iter().zip(basis.iter()) {
        m += *c * &b.matrix;
    }
    LieElement { n, matrix: m }
}

/// True when the Killing field of `a` is nowhere tangent to the H³-slice,
/// i.e. `a` lies in the R^{3,1} summand (used for orthogonality diagnostics).
pub fn is_normal_field(a: &LieElement) -> bool {
    a.dimension() == 4 && split(a).rot_part.matrix.amax() <= 1e-12
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isometry::{embed, parabolic_generator, parabolic_translation};
    use approx::assert_abs_diff_eq;

    fn sample_so41(seed: u64) -> LieElement {
        let mut s = seed.wrapping_mul(2862933555777941757).wrapping_add(3037000493);
        let mut next = || {
            s = s.wrapping_mul(2862933555777941757).wrapping_add(3037000493);
            ((s >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        let basis = so_basis(4);
        let coords = DVector::from_iterator(basis.len(), (0..basis.len()).map(|_| next()));
        so_from_coords(4, &coords)
    }

    #[test]
    fn split_join_round_trip() {
        let a = sample_so41(7);
        let s = split(&a);
        let back = join(&s.rot_part, &s.vec_part).unwrap();
        assert_eq!(a.matrix(), back.matrix());

        let z = LieElement::zero(4);
        let sz = split(&z);
        assert!(sz.rot_part.matrix().amax() == 0.0 && sz.vec_part.amax() == 0.0);
    }

    #[test]
    fn join_of_e0_has_only_border_entries() {
        let e0 = DVector::from_row_slice(&[1.0, 0.0, 0.0, 0.0]);
        let m = join(&LieElement::zero(3), &e0).unwrap();
        // Last column (1,0,0,0,·)ᵗ, bottom row −e₀ᵗJ = (1,0,0,0).
        assert_eq!(m.matrix()[(0, 4)], 1.0);
        assert_eq!(m.matrix()[(4, 0)], 1.0);
        assert_eq!(m.matrix().view((0, 0), (4, 4)).amax(), 0.0);
    }

    #[test]
    fn split_of_embedded_parabolic_generator_has_zero_vector_part() {
        let mut m = DMatrix::zeros(5, 5);
        m.view_mut((0, 0), (4, 4)).copy_from(&parabolic_generator(1.0, 2.0));
        let a = LieElement::new(m).unwrap();
        assert_eq!(split(&a).vec_part.amax(), 0.0);
    }

    #[test]
    fn adjoint_is_equivariant_for_the_splitting() {
        let h = parabolic_translation(0.6, -1.1);
        let g = embed(&h);
        for seed in 0..10 {
            let a = sample_so41(seed);
            let s = split(&a);
            let ad = split(&adjoint(&g, &a));
            let expect_rot = h.matrix() * s.rot_part.matrix() * h.inverse().matrix();
            let expect_vec = h.matrix() * &s.vec_part;
            assert!((ad.rot_part.matrix() - expect_rot).amax() < 1e-9);
            assert!((ad.vec_part - expect_vec).amax() < 1e-9);
        }
    }

    #[test]
    fn adjoint_functoriality_and_identity() {
        let a = sample_so41(3);
        let g1 = embed(&parabolic_translation(1.0, 0.0));
        let g2 = embed(&parabolic_translation(-0.3, 0.7));
        let lhs = adjoint(&(&g1 * &g2), &a);
        let rhs = adjoint(&g1, &adjoint(&g2, &a));
        assert!((lhs.matrix() - rhs.matrix()).amax() < 1e-12);
        assert_eq!(
            adjoint(&Isometry::identity(4), &a).matrix(),
            a.matrix()
        );
    }

    #[test]
    fn killing_field_is_tangent_and_respects_the_slice() {
        // x on H⁴ with x⁴ = 0 (the H³-slice).
        let x = DVector::from_row_slice(&[(1.25f64).sqrt(), 0.5, 0.0, 0.0, 0.0]);
        let j = LorentzForm::new(4).matrix();

        // Vector-part fields point out of the slice.
        let v = DVector::from_row_slice(&[0.2, -0.4, 1.0, 0.3]);
        let a = join(&LieElement::zero(3), &v).unwrap();
        let field = killing_eval(&a, &x).unwrap();
        assert_abs_diff_eq!((field.transpose() * &j * &x)[(0, 0)], 0.0, epsilon = 1e-12);
        for i in 0..4 {
            assert_abs_diff_eq!(field[i], 0.0, epsilon = 1e-12);
        }
        assert!(field[4].abs() > 0.0);

        // so(3,1)-block fields stay in the slice.
        let mut m = DMatrix::zeros(5, 5);
        m.view_mut((0, 0), (4, 4)).copy_from(&parabolic_generator(1.0, -2.0));
        let b = LieElement::new(m).unwrap();
        let field = killing_eval(&b, &x).unwrap();
        assert_eq!(field[4], 0.0);

        assert_eq!(killing_eval(&LieElement::zero(4), &x).unwrap().amax(), 0.0);
        let off = DVector::from_row_slice(&[1.0, 1.0, 0.0, 0.0, 0.0]);
        assert!(killing_eval(&a, &off).is_err());
    }

    #[test]
    fn r31_coordinate_examples() {
        let c = r31_coords(&DVector::from_row_slice(&[1.0, 1.0, 0.0, 0.0]));
        assert_eq!((c.lambda, c.z), (0.0, 1.0));
        let c = r31_coords(&DVector::from_row_slice(&[1.0, -1.0, 0.0, 0.0]));
        assert_eq!((c.lambda, c.z), (1.0, 0.0));
        let r = rot(&DVector::from_row_slice(&[0.0, 0.0, -2.0, 5.0]));
        assert_eq!(r, Vector3::new(5.0, 2.0, 0.0));

        // Reconstruction round-trips to machine precision.
        let v = DVector::from_row_slice(&[0.3, -1.7, 2.2, 0.9]);
        assert!((r31_coords(&v).to_vector() - &v).amax() < 1e-15);
    }

    #[test]
    fn basis_and_coordinates_round_trip() {
        assert_eq!(so_basis(3).len(), 6);
        assert_eq!(so_basis(4).len(), 10);
        for seed in 0..5 {
            let a = sample_so41(seed);
            let back = so_from_coords(4, &so_coords(&a));
            assert_eq!(a.matrix(), back.matrix());
        }
    }

    #[test]
    fn bracket_closure_and_exp_membership() {
        for seed in 0..10 {
            let a = sample_so41(seed);
            let b = sample_so41(seed + 100);
            // new() re-validates the algebra membership.
            LieElement::new(a.bracket(&b).matrix().clone()).unwrap();
        }
        let a = sample_so41(42);
        // exp(t·a) group membership at first order: defect is O(t²).
        let t = 1e-4;
        let small = LieElement::new(t * a.matrix()).unwrap();
        let g = small.exp();
        assert!(crate::minkowski::lorentz_defect(g.matrix()) < 1e-7);
    }
}
