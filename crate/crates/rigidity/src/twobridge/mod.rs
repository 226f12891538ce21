//! Two-bridge knot inputs and the end-to-end excluded-slope computation.
//!
//! A two-bridge knot b(p,q) has group ⟨a, b | w a w⁻¹ b⁻¹⟩ with
//! w = a^{ε₁} b^{ε₂} ⋯ of length p−1, εᵢ = (−1)^⌊iq/p⌋. Parabolic
//! representations into SL(2,C) are indexed by the roots of the Riley
//! polynomial; the geometric one feeds the cohomology pipeline that
//! produces the excluded filling slope l.

pub mod poly;

use nalgebra::{Complex, DMatrix, Matrix2, Rotation3, Unit, Vector2, Vector3};
use num_integer::Integer;

use crate::cohomology::{
    cocycle_space, restrict, torus_normal_form, Cocycle, Letter, ModuleTag, Presentation,
    Representation, Word, RANK_TOL,
};
use crate::error::{Error, Result};
use crate::isometry::{from_boundary_similarity, from_sl2c, Isometry, Mobius};
use poly::{IntPoly, PolyMatrix};

/// Two-bridge knot in canonical normal form (p, q): p odd ≥ 3, 0 < q < p,
/// gcd(p,q) = 1, and q ≤ q⁻¹ mod p (the two describe the same knot).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TwoBridgeKnot {
    p: i64,
    q: i64,
}

impl TwoBridgeKnot {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        let fail = |reason: &str| Error::InvalidKnot {
            p,
            q,
            reason: reason.into(),
        };
        if p < 3 || p % 2 == 0 {
            return Err(fail("p must be an odd integer >= 3"));
        }
        if q <= 0 || q >= p {
            return Err(fail("q must satisfy 0 < q < p"));
        }
        if p.gcd(&q) != 1 {
            return Err(fail("p and q must be coprime"));
        }
        // b(p,q) = b(p,q') for qq' ≡ 1 (mod p): canonicalize to the smaller.
        let q_inv = (1..p).find(|&x| (x * q) % p == 1).expect("q is invertible mod p");
        Ok(TwoBridgeKnot { p, q: q.min(q_inv) })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// Odd representative of q mod 2p used by the exponent formula (the
    /// presentation needs ⌊iq/p⌋ computed for an odd q).
    fn q_odd(&self) -> i64 {
        if self.q % 2 != 0 {
            self.q
        } else {
            self.q - self.p
        }
    }

    /// The word w = a^{ε₁} b^{ε₂} ⋯ (alternating generators, length p−1).
    fn bridge_word(&self) -> Word {
        let q = self.q_odd();
        let letters = (1..self.p).map(|i| {
            let gen = ((i - 1) % 2) as usize;
            let eps = (i * q).div_euclid(self.p) % 2 == 0;
            if eps {
                Letter::new(gen)
            } else {
                Letter::inv(gen)
            }
        });
        Word::new(letters)
    }

    /// Group presentation ⟨a, b | w a w⁻¹ b⁻¹⟩.
    pub fn presentation(&self) -> Presentation {
        let w = self.bridge_word();
        let relator = w
            .concat(&Word::generator_power(0, 1))
            .concat(&w.inverse())
            .concat(&Word::generator_power(1, -1));
        Presentation::new(2, vec![relator]).expect("two-generator relator")
    }

    pub fn meridian_word(&self) -> Word {
        Word::generator_power(0, 1)
    }

    /// Null-homologous longitude ℓ = w̃ w a^{−2e}, where w̃ is w reversed and
    /// e is the exponent sum of w: both generators map to the meridian class
    /// in H₁, so the correction kills the total exponent sum of w̃ w.
    pub fn longitude_word(&self) -> Word {
        let w = self.bridge_word();
        let total = w.reversed().concat(&w);
        total.concat(&Word::generator_power(0, -total.exponent_sum()))
    }

    /// Riley polynomial: the gcd over Z[ω] of the entries of W·A − B·W
    /// for A = [[1,1],[0,1]], B = [[1,0],[−ω,1]].
    pub fn riley_polynomial(&self) -> IntPoly {
        let x = IntPoly::x();
        let a = PolyMatrix::new([
            [IntPoly::constant(1), IntPoly::constant(1)],
            [IntPoly::zero(), IntPoly::constant(1)],
        ]);
        let a_inv = PolyMatrix::new([
            [IntPoly::constant(1), IntPoly::constant(-1)],
            [IntPoly::zero(), IntPoly::constant(1)],
        ]);
        let b = PolyMatrix::new([
            [IntPoly::constant(1), IntPoly::zero()],
            [x.neg(), IntPoly::constant(1)],
        ]);
        let b_inv = PolyMatrix::new([
            [IntPoly::constant(1), IntPoly::zero()],
            [x.clone(), IntPoly::constant(1)],
        ]);
        let mut w = PolyMatrix::identity();
        for l in self.bridge_word().letters() {
            let m = match (l.gen, l.inverse) {
                (0, false) => &a,
                (0, true) => &a_inv,
                (1, false) => &b,
                (1, true) => &b_inv,
                _ => unreachable!("two generators"),
            };
            w = w.mul(m);
        }
        let defect = w.mul(&a).sub(&b.mul(&w));
        let mut g = IntPoly::zero();
        for row in &defect.entries {
            for entry in row {
                g = g.gcd(entry);
            }
        }
        g.primitive()
    }
}

impl std::fmt::Display for TwoBridgeKnot {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// Parabolic representation a ↦ [[1,1],[0,1]], b ↦ [[1,0],[−ω,1]] at a
/// Riley root ω.
#[derive(Debug, Clone)]
pub struct RileyRep {
    pub root: Complex<f64>,
    pub root_index: usize,
    pub matrices: [Mobius; 2],
    /// Cusp shape when the longitude is parabolic fixing ∞ with nonreal
    /// translation (orientation-normalized to Im > 0).
    pub x_longitude: Option<Complex<f64>>,
    pub is_geometric_candidate: bool,
}

impl RileyRep {
    /// Image of a word as a 2×2 complex matrix.
    pub fn evaluate(&self, w: &Word) -> Mobius {
        let mut out = Matrix2::identity();
        for l in w.letters() {
            let m = &self.matrices[l.gen];
            let m = if l.inverse {
                // Exact inverse for det 1: [[d,−b],[−c,a]].
                Matrix2::new(m[(1, 1)], -m[(0, 1)], -m[(1, 0)], m[(0, 0)])
            } else {
                *m
            };
            out *= m;
        }
        out
    }

    /// The lifted SO₀(3,1) representation of the generators.
    pub fn lorentz_rep(&self) -> Result<Representation> {
        Ok(Representation::new(vec![
            from_sl2c(&self.matrices[0])?,
            from_sl2c(&self.matrices[1])?,
        ]))
    }
}

fn longitude_translation(rep: &RileyRep, longitude: &Word) -> Result<Complex<f64>> {
    let l = rep.evaluate(longitude);
    if l[(1, 0)].norm() > 1e-8 {
        return Err(Error::DegenerateLattice(format!(
            "longitude does not fix infinity: lower-left entry {:.3e}",
            l[(1, 0)].norm()
        )));
    }
    let trace = l[(0, 0)] + l[(1, 1)];
    if (trace.norm() - 2.0).abs() > 1e-8 {
        return Err(Error::DegenerateLattice(format!(
            "longitude is not parabolic: |trace| = {}",
            trace.norm()
        )));
    }
    Ok(l[(0, 1)] / l[(0, 0)])
}

/// All parabolic representations of the knot group, ordered by root
/// (deterministic), with the geometric candidate flagged.
pub fn riley_reps(k: &TwoBridgeKnot) -> Result<Vec<RileyRep>> {
    let poly = k.riley_polynomial();
    let roots = poly.complex_roots()?;
    if roots.is_empty() {
        return Err(Error::NoGeometricCandidate);
    }
    let longitude = k.longitude_word();
    let relator = &k.presentation().relators[0];
    let mut reps: Vec<RileyRep> = Vec::with_capacity(roots.len());
    for (root_index, &root) in roots.iter().enumerate() {
        let one = Complex::new(1.0, 0.0);
        let zero = Complex::new(0.0, 0.0);
        let matrices = [
            Matrix2::new(one, one, zero, one),
            Matrix2::new(one, zero, -root, one),
        ];
        let mut rep = RileyRep {
            root,
            root_index,
            matrices,
            x_longitude: None,
            is_geometric_candidate: false,
        };
        // The relator must hold in SL(2,C) (up to the center ±I).
        let r = rep.evaluate(relator);
        let id = Matrix2::identity();
        let defect = (r - id).norm().min((r + id).norm());
        if defect > 1e-8 {
            return Err(Error::RelatorViolated { index: 0, defect });
        }
        if let Ok(x) = longitude_translation(&rep, &longitude) {
            if x.im.abs() > 1e-8 {
                // Orientation convention: report the cusp shape with Im > 0.
                rep.x_longitude = Some(if x.im > 0.0 { x } else { -x });
            }
        }
        reps.push(rep);
    }
    // Geometric candidate: maximal |Im x_longitude|, ties to Im(root) > 0.
    let best = reps
        .iter()
        .enumerate()
        .filter_map(|(i, r)| r.x_longitude.map(|x| (i, x.im, r.root.im)))
        .max_by(|a, b| {
            a.1.partial_cmp(&b.1)
                .unwrap()
                .then(a.2.partial_cmp(&b.2).unwrap())
        });
    if let Some((i, _, _)) = best {
        reps[i].is_geometric_candidate = true;
    }
    Ok(reps)
}

/// Cusp translation lattice of a geometric representation:
/// x(meridian) = 1, x(longitude) = cusp shape; realized vectors t₁, t₂ ∈ R².
#[derive(Debug, Clone, PartialEq)]
pub struct PeripheralLattice {
    pub x_longitude: Complex<f64>,
    pub t1: Vector2<f64>,
    pub t2: Vector2<f64>,
    /// Longitude word after the orientation fix (ℓ or ℓ⁻¹).
    pub longitude: Word,
}

pub fn cusp_lattice(rep: &RileyRep, k: &TwoBridgeKnot) -> Result<PeripheralLattice> {
    let mut longitude = k.longitude_word();
    let mut x = longitude_translation(rep, &longitude)?;
    if x.im.abs() <= 1e-8 {
        return Err(Error::DegenerateLattice(format!(
            "cusp shape {x} is real: representation is not geometric"
        )));
    }
    if x.im < 0.0 {
        longitude = longitude.inverse();
        x = longitude_translation(rep, &longitude)?;
    }
    Ok(PeripheralLattice {
        x_longitude: x,
        t1: Vector2::new(1.0, 0.0),
        t2: Vector2::new(x.re, x.im),
        longitude,
    })
}

/// Cohomology dimensions recorded along the slope pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SlopeAudit {
    /// (Z¹, B¹, H¹) of the knot exterior with R^{3,1} coefficients.
    pub knot_r31: (usize, usize, usize),
    /// (Z¹, B¹, H¹) of the boundary torus with R^{3,1} coefficients.
    pub torus_r31: (usize, usize, usize),
}

/// The excluded-slope data of Theorem-level pipeline output.
#[derive(Debug, Clone, PartialEq)]
pub struct SlopeResult {
    /// Projective slope −(t₂·ω)/(t₁·ω); `None` encodes ∞.
    pub l: Option<f64>,
    pub omega: Vector2<f64>,
    pub lambda: f64,
    pub x_longitude: Complex<f64>,
    pub root: Complex<f64>,
    pub root_index: usize,
    pub audit: SlopeAudit,
    /// Largest numerical defect encountered (relators, cocycle system,
    /// normal-form reconstruction).
    pub residual: f64,
}

/// Integer change of peripheral basis: rows are the exponent vectors of the
/// new generators in (meridian, longitude); determinant must be ±1.
pub type PeripheralBasis = [[i64; 2]; 2];

pub const MERIDIAN_LONGITUDE: PeripheralBasis = [[1, 0], [0, 1]];

fn peripheral_word(k: &TwoBridgeKnot, lattice: &PeripheralLattice, coeffs: [i64; 2]) -> Word {
    let m = k.meridian_word();
    let mut w = Word::empty();
    for _ in 0..coeffs[0].abs() {
        w = w.concat(&if coeffs[0] > 0 { m.clone() } else { m.inverse() });
    }
    for _ in 0..coeffs[1].abs() {
        w = w.concat(&if coeffs[1] > 0 {
            lattice.longitude.clone()
        } else {
            lattice.longitude.inverse()
        });
    }
    w
}

/// Selects the working representation: the geometric candidate, or an
/// explicit root index override.
fn select_rep(k: &TwoBridgeKnot, root_index: Option<usize>) -> Result<RileyRep> {
    let reps = riley_reps(k)?;
    let count = reps.len();
    match root_index {
        Some(i) => reps
            .into_iter()
            .nth(i)
            .ok_or(Error::RootIndexOutOfRange(i, count)),
        None => reps
            .into_iter()
            .find(|r| r.is_geometric_candidate)
            .ok_or(Error::NoGeometricCandidate),
    }
}

/// End-to-end excluded slope in the (meridian, longitude) basis.
pub fn limit_slope(k: &TwoBridgeKnot) -> Result<SlopeResult> {
    limit_slope_with_options(k, None, RANK_TOL, MERIDIAN_LONGITUDE)
}

/// Excluded slope with explicit root override, rank tolerance and
/// peripheral basis.
pub fn limit_slope_with_options(
    k: &TwoBridgeKnot,
    root_index: Option<usize>,
    tol: f64,
    basis: PeripheralBasis,
) -> Result<SlopeResult> {
    let det = basis[0][0] * basis[1][1] - basis[0][1] * basis[1][0];
    if det.abs() != 1 {
        return Err(Error::Parse(format!(
            "peripheral basis has determinant {det}, expected ±1"
        )));
    }
    let rep2 = select_rep(k, root_index)?;
    let lattice = cusp_lattice(&rep2, k)?;
    let pres = k.presentation();
    let rep = rep2.lorentz_rep()?;
    let mut residual = rep.relator_defect(&pres);

    // H¹(M, R^{3,1}) must be a line for the normal form to apply.
    let report = cocycle_space(&pres, &rep, ModuleTag::R31, tol)?;
    if report.dim_h1 != 1 {
        return Err(Error::UnexpectedCohomologyDimension {
            got: report.dim_h1,
            expected: 1,
            z1: report.dim_z1,
            b1: report.dim_b1,
            h1: report.dim_h1,
        });
    }
    let generator = Cocycle::from_stacked(
        ModuleTag::R31,
        &report.h1_representatives()?.column(0).into_owned(),
    );

    // Restrict to the requested peripheral basis and reduce; the generator
    // sign is canonicalized so ω's polar angle falls in [0, π/2): the class
    // is only defined up to sign and d ↦ −d rotates ω by π/2. ω itself does
    // not depend on the basis, so the canonicalization is basis-stable.
    let words = [
        peripheral_word(k, &lattice, basis[0]),
        peripheral_word(k, &lattice, basis[1]),
    ];
    let g1 = basis[0][0] as f64 * lattice.t1 + basis[0][1] as f64 * lattice.t2;
    let g2 = basis[1][0] as f64 * lattice.t1 + basis[1][1] as f64 * lattice.t2;
    let (restricted, boundary_rep) = restrict(&generator, &rep, &words)?;
    let planar = (g1, g2);
    let mut nf = torus_normal_form(&restricted, planar)?;
    let mut canonical = restricted;
    if !(nf.omega[0] > 1e-9 && nf.omega[1] > -1e-9) {
        canonical = canonical.scale(-1.0);
        nf = torus_normal_form(&canonical, planar)?;
    }
    residual = residual.max(nf.rot_residual(planar));
    residual = residual.max(crate::cohomology::cocycle_defect(
        &Presentation::torus(),
        &boundary_rep,
        &canonical,
    )?);

    let boundary_report = cocycle_space(
        &Presentation::torus(),
        &boundary_rep,
        ModuleTag::R31,
        tol,
    )?;

    let num = g2.dot(&nf.omega);
    let den = g1.dot(&nf.omega);
    let l = if den.abs() <= 1e-8 {
        if num.abs() <= 1e-8 {
            return Err(Error::DegenerateLattice(
                "slope numerator and denominator both vanish".into(),
            ));
        }
        None
    } else {
        Some(-num / den)
    };

    Ok(SlopeResult {
        l,
        omega: nf.omega,
        lambda: nf.lambda,
        x_longitude: lattice.x_longitude,
        root: rep2.root,
        root_index: rep2.root_index,
        audit: SlopeAudit {
            knot_r31: (report.dim_z1, report.dim_b1, report.dim_h1),
            torus_r31: (
                boundary_report.dim_z1,
                boundary_report.dim_b1,
                boundary_report.dim_h1,
            ),
        },
        residual,
    })
}

/// The infinitesimal filling equation p·trans(γ₁) + q·trans(γ₂) = 0.
pub fn filling_compatibility(trans1: f64, trans2: f64, p: i64, q: i64, tol: f64) -> bool {
    (p as f64 * trans1 + q as f64 * trans2).abs() <= tol
}

/// Screw-motion family realizing the lattice translations to first order:
/// member(τ; t) rotates by −(τ·iω)λt about the axis in direction ω through
/// the point −e_z/(λt) and translates by (τ·ω)ω along the axis. As t → 0 it
/// converges to the translation by τ; the t-derivative at 0 is the model
/// cocycle of [`crate::cohomology::torus::screw_model_cocycle`].
pub fn screw_family(
    lattice: (Vector2<f64>, Vector2<f64>),
    omega: &Vector2<f64>,
    lambda: f64,
    t: f64,
) -> Result<(Isometry, Isometry)> {
    let m1 = screw_member(lattice.0, omega, lambda, t)?;
    let m2 = screw_member(lattice.1, omega, lambda, t)?;
    Ok((m1, m2))
}

/// One member of the screw family (see [`screw_family`]).
pub fn screw_member(
    tau: Vector2<f64>,
    omega: &Vector2<f64>,
    lambda: f64,
    t: f64,
) -> Result<Isometry> {
    if t <= 0.0 {
        return Err(Error::Parse("screw family needs t > 0".into()));
    }
    let axis_dir = Vector3::new(omega[0], omega[1], 0.0);
    let iw = crate::cohomology::torus::rot90(omega);
    let s = tau.dot(&iw);
    let phi = -s * lambda * t;
    let h = -1.0 / (lambda * t);
    let center = Vector3::new(0.0, 0.0, h);
    let r = Rotation3::from_axis_angle(&Unit::new_normalize(axis_dir), phi).into_inner();
    let along = tau.dot(omega);
    let translation = center - r * center + along * axis_dir;
    from_boundary_similarity(&r, &translation, 1.0)
}

/// Finite-difference derivative of a one-parameter family of isometries at
/// t = 0 against the base point ρ₀: (ρ_t − ρ_{−t})/(2t)·ρ₀⁻¹ — but screw
/// families are only defined for t > 0, so a one-sided second-order stencil
/// (4ρ_t − ρ_{2t} − 3ρ₀)/(2t)·ρ₀⁻¹ is used.
pub fn family_derivative(
    member: impl Fn(f64) -> Result<Isometry>,
    base: &Isometry,
    t: f64,
) -> Result<DMatrix<f64>> {
    let a1 = member(t)?;
    let a2 = member(2.0 * t)?;
    let diff = (4.0 * a1.matrix() - a2.matrix() - 3.0 * base.matrix()) / (2.0 * t);
    Ok(diff * base.inverse().matrix())
}

/// Parses a knot spec "p/q".
pub fn parse_knot_spec(s: &str) -> Result<TwoBridgeKnot> {
    let (p, q) = s
        .trim()
        .split_once('/')
        .ok_or_else(|| Error::Parse(format!("expected p/q, got {s:?}")))?;
    let p: i64 = p
        .trim()
        .parse()
        .map_err(|e| Error::Parse(format!("bad p in {s:?}: {e}")))?;
    let q: i64 = q
        .trim()
        .parse()
        .map_err(|e| Error::Parse(format!("bad q in {s:?}: {e}")))?;
    TwoBridgeKnot::new(p, q)
}

/// Parses a catalog: one "p/q" per line, '#' comments, blank lines ignored.
pub fn parse_catalog(text: &str) -> Result<Vec<TwoBridgeKnot>> {
    let mut knots = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        knots.push(parse_knot_spec(line)?);
    }
    Ok(knots)
}
