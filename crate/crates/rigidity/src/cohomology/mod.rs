//! Twisted group cohomology as numerical linear algebra.
//!
//! Fox calculus turns a group presentation and a representation into a
//! linear system whose kernel is the cocycle space Z¹; coboundaries B¹ are
//! the image of the module under a ↦ (a − γᵢ·a). Dimensions are decided by
//! SVD with a mandatory spectral-gap check.

pub mod torus;
pub mod word;

pub use torus::{torus_normal_form, TorusNormalForm};
pub use word::{Letter, Word};

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::isometry::{embed, Isometry};
use crate::lie::{join, so_basis, so_coords, so_from_coords, LieElement};
use crate::rank::{column_space_basis, distance_to_span, kernel_basis, singular_values, svd_rank};

/// Default relative singular-value threshold for rank decisions.
pub const RANK_TOL: f64 = 1e-8;

/// Coefficient module for the twisted cohomology.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModuleTag {
    /// so(3,1) with the adjoint action (dimension 6); needs an SO₀(3,1) rep.
    So31,
    /// R^{3,1} with the linear action (dimension 4); needs an SO₀(3,1) rep.
    R31,
    /// so(4,1) with the adjoint action (dimension 10); needs an SO₀(4,1) rep.
    So41,
}

impl ModuleTag {
    pub fn dim(self) -> usize {
        match self {
            ModuleTag::So31 => 6,
            ModuleTag::R31 => 4,
            ModuleTag::So41 => 10,
        }
    }

    /// Ambient isometry rank the representation must have.
    pub fn rep_rank(self) -> usize {
        match self {
            ModuleTag::So31 | ModuleTag::R31 => 3,
            ModuleTag::So41 => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ModuleTag::So31 => "so31",
            ModuleTag::R31 => "r31",
            ModuleTag::So41 => "so41",
        }
    }
}

/// Group presentation: `generator_count` generators and a list of relators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generator_count: usize,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generator_count: usize, relators: Vec<Word>) -> Result<Self> {
        for r in &relators {
            if r.alphabet_size() > generator_count {
                return Err(Error::UnknownGenerator(
                    r.alphabet_size() - 1,
                    generator_count,
                ));
            }
        }
        Ok(Presentation {
            generator_count,
            relators,
        })
    }

    /// The torus group ⟨g₁, g₂ | [g₁, g₂]⟩.
    pub fn torus() -> Self {
        let a = Word::generator_power(0, 1);
        let b = Word::generator_power(1, 1);
        Presentation {
            generator_count: 2,
            relators: vec![Word::commutator(&a, &b)],
        }
    }
}

/// Representation: one isometry per generator, common rank.
#[derive(Debug, Clone)]
pub struct Representation {
    images: Vec<Isometry>,
}

impl Representation {
    pub fn new(images: Vec<Isometry>) -> Self {
        assert!(!images.is_empty(), "representations need a generator image");
        let n = images[0].dimension();
        assert!(
            images.iter().all(|g| g.dimension() == n),
            "generator images of mixed rank"
        );
        Representation { images }
    }

    pub fn rank(&self) -> usize {
        self.images[0].dimension()
    }

    pub fn generator_count(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, gen: usize) -> &Isometry {
        &self.images[gen]
    }

    /// Block-diagonal lift of an SO₀(3,1) representation to SO₀(4,1).
    pub fn embedded(&self) -> Representation {
        assert_eq!(self.rank(), 3, "only SO(3,1) representations embed");
        Representation {
            images: self.images.iter().map(embed).collect(),
        }
    }

    /// Image of a word (left-to-right product of generator images).
    pub fn evaluate(&self, w: &Word) -> Isometry {
        let mut out = Isometry::identity(self.rank());
        for l in w.letters() {
            let g = &self.images[l.gen];
            out = if l.inverse {
                out.compose(&g.inverse())
            } else {
                out.compose(g)
            };
        }
        out
    }

    /// Max deviation of each relator image from the identity.
    pub fn relator_defect(&self, pres: &Presentation) -> f64 {
        let id = DMatrix::identity(self.rank() + 1, self.rank() + 1);
        pres.relators
            .iter()
            .map(|r| (self.evaluate(r).matrix() - &id).amax())
            .fold(0.0, f64::max)
    }

    /// Matrix of the module action of a generator image in the module's
    /// coordinate basis: linear action for R^{3,1}, adjoint for so(·).
    pub fn module_action(&self, tag: ModuleTag, g: &Isometry) -> DMatrix<f64> {
        assert_eq!(g.dimension(), tag.rep_rank(), "module/representation rank");
        match tag {
            ModuleTag::R31 => g.matrix().clone(),
            ModuleTag::So31 | ModuleTag::So41 => {
                let n = tag.rep_rank();
                let basis = so_basis(n);
                let dim = basis.len();
                let mut out = DMatrix::zeros(dim, dim);
                let gi = g.inverse();
                for (k, b) in basis.iter().enumerate() {
                    let ad = g.matrix() * b.matrix() * gi.matrix();
                    let col = so_coords(&LieElement::new(ad).expect("adjoint stays in the algebra"));
                    out.set_column(k, &col);
                }
                out
            }
        }
    }

    fn letter_action(&self, tag: ModuleTag, l: Letter) -> DMatrix<f64> {
        let g = if l.inverse {
            self.images[l.gen].inverse()
        } else {
            self.images[l.gen].clone()
        };
        self.module_action(tag, &g)
    }
}

/// Cocycle given by its values on the generators, in module coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Cocycle {
    pub module_tag: ModuleTag,
    pub values: Vec<DVector<f64>>,
}

impl Cocycle {
    pub fn new(module_tag: ModuleTag, values: Vec<DVector<f64>>) -> Self {
        assert!(
            values.iter().all(|v| v.len() == module_tag.dim()),
            "cocycle values must live in the module"
        );
        Cocycle { module_tag, values }
    }

    /// Unstacks a single column vector into per-generator values.
    pub fn from_stacked(module_tag: ModuleTag, stacked: &DVector<f64>) -> Self {
        let d = module_tag.dim();
        assert_eq!(stacked.len() % d, 0, "stacked length not a module multiple");
        let values = (0..stacked.len() / d)
            .map(|k| stacked.rows(k * d, d).into_owned())
            .collect();
        Cocycle { module_tag, values }
    }

    pub fn stacked(&self) -> DVector<f64> {
        let d = self.module_tag.dim();
        let mut out = DVector::zeros(d * self.values.len());
        for (k, v) in self.values.iter().enumerate() {
            out.rows_mut(k * d, d).copy_from(v);
        }
        out
    }

    pub fn norm(&self) -> f64 {
        self.stacked().norm()
    }

    pub fn scale(&self, c: f64) -> Cocycle {
        Cocycle {
            module_tag: self.module_tag,
            values: self.values.iter().map(|v| c * v).collect(),
        }
    }

    /// Value on an arbitrary word via the twisted extension rule
    /// d(uv) = d(u) + ρ(u)·d(v) and d(u⁻¹) = −ρ(u)⁻¹·d(u).
    pub fn evaluate(&self, rep: &Representation, w: &Word) -> DVector<f64> {
        let d = self.module_tag.dim();
        let mut val = DVector::zeros(d);
        let mut prefix = DMatrix::identity(d, d);
        for l in w.letters() {
            if l.inverse {
                prefix *= rep.letter_action(self.module_tag, *l);
                val -= &prefix * &self.values[l.gen];
            } else {
                val += &prefix * &self.values[l.gen];
                prefix *= rep.letter_action(self.module_tag, *l);
            }
        }
        val
    }

    /// Coboundary d_a(γ) = a − γ·a of a module element.
    pub fn coboundary(
        module_tag: ModuleTag,
        rep: &Representation,
        a: &DVector<f64>,
    ) -> Cocycle {
        let values = (0..rep.generator_count())
            .map(|g| {
                let act = rep.module_action(module_tag, rep.image(g));
                a - act * a
            })
            .collect();
        Cocycle { module_tag, values }
    }
}

/// Fox derivative ∂r/∂g evaluated through the module action: the coefficient
/// matrix of d(gᵢ) in the linearized relator equation.
pub fn fox_matrix(
    r: &Word,
    gen: usize,
    rep: &Representation,
    tag: ModuleTag,
) -> Result<DMatrix<f64>> {
    if r.alphabet_size() > rep.generator_count() {
        return Err(Error::UnknownGenerator(
            r.alphabet_size() - 1,
            rep.generator_count(),
        ));
    }
    let d = tag.dim();
    let mut out = DMatrix::zeros(d, d);
    let mut prefix = DMatrix::identity(d, d);
    for l in r.letters() {
        if l.inverse {
            prefix *= rep.letter_action(tag, *l);
            if l.gen == gen {
                out -= &prefix;
            }
        } else {
            if l.gen == gen {
                out += &prefix;
            }
            prefix *= rep.letter_action(tag, *l);
        }
    }
    Ok(out)
}

/// Cocycle and coboundary spaces for a presentation.
#[derive(Debug, Clone)]
pub struct CohomologyReport {
    pub module_tag: ModuleTag,
    pub dim_z1: usize,
    pub dim_b1: usize,
    pub dim_h1: usize,
    /// Orthonormal Z¹ basis, one stacked column per basis cocycle.
    pub basis_z1: DMatrix<f64>,
    /// Orthonormal basis of B¹ (stacked columns).
    pub basis_b1: DMatrix<f64>,
    /// Singular values of the stacked Fox system, non-increasing.
    pub singular_values: Vec<f64>,
    pub tolerance: f64,
}

impl CohomologyReport {
    pub fn z1_cocycle(&self, k: usize) -> Cocycle {
        Cocycle::from_stacked(self.module_tag, &self.basis_z1.column(k).into_owned())
    }

    /// Distance from a stacked cocycle to B¹.
    pub fn distance_to_coboundaries(&self, d: &Cocycle) -> f64 {
        distance_to_span(&self.basis_b1, &d.stacked())
    }

    /// An orthonormal set of Z¹ columns spanning a complement of B¹,
    /// i.e. representatives of an H¹ basis.
    pub fn h1_representatives(&self) -> Result<DMatrix<f64>> {
        let b = &self.basis_b1;
        let proj = &self.basis_z1 - b * (b.transpose() * &self.basis_z1);
        if self.dim_h1 == 0 {
            return Ok(DMatrix::zeros(self.basis_z1.nrows(), 0));
        }
        let basis = column_space_basis(&proj, self.tolerance)?;
        if basis.ncols() != self.dim_h1 {
            return Err(Error::RankAmbiguous {
                sigma: 0.0,
                lo: 0.0,
                hi: 0.0,
            });
        }
        Ok(basis)
    }
}

/// Computes Z¹, B¹ and H¹ = Z¹/B¹ for a presentation and representation.
pub fn cocycle_space(
    pres: &Presentation,
    rep: &Representation,
    tag: ModuleTag,
    tol: f64,
) -> Result<CohomologyReport> {
    assert_eq!(
        rep.rank(),
        tag.rep_rank(),
        "representation rank does not match the module"
    );
    // The Fox system only linearizes relators the representation satisfies.
    for (index, r) in pres.relators.iter().enumerate() {
        let id = DMatrix::identity(rep.rank() + 1, rep.rank() + 1);
        let defect = (rep.evaluate(r).matrix() - id).amax();
        if defect > 1e-9 {
            return Err(Error::RelatorViolated { index, defect });
        }
    }

    let d = tag.dim();
    let gens = pres.generator_count;
    let rows = pres.relators.len() * d;
    let mut system = DMatrix::zeros(rows.max(1), gens * d);
    for (ri, r) in pres.relators.iter().enumerate() {
        for g in 0..gens {
            let block = fox_matrix(r, g, rep, tag)?;
            system.view_mut((ri * d, g * d), (d, d)).copy_from(&block);
        }
    }

    let basis_z1 = kernel_basis(&system, tol)?;
    let dim_z1 = basis_z1.ncols();

    // Coboundary map: module element a ↦ stacked values of d_a.
    let mut cmap = DMatrix::zeros(gens * d, d);
    for g in 0..gens {
        let act = rep.module_action(tag, rep.image(g));
        cmap.view_mut((g * d, 0), (d, d))
            .copy_from(&(DMatrix::identity(d, d) - act));
    }
    let dim_b1 = svd_rank(&cmap, tol)?;
    let basis_b1 = if dim_b1 > 0 {
        column_space_basis(&cmap, tol)?
    } else {
        DMatrix::zeros(gens * d, 0)
    };

    Ok(CohomologyReport {
        module_tag: tag,
        dim_z1,
        dim_b1,
        dim_h1: dim_z1 - dim_b1,
        basis_z1,
        basis_b1,
        singular_values: singular_values(&system),
        tolerance: tol,
    })
}

/// Relator defect of a cocycle against the stacked Fox system.
pub fn cocycle_defect(
    pres: &Presentation,
    rep: &Representation,
    d: &Cocycle,
) -> Result<f64> {
    let mut worst = 0.0f64;
    for r in &pres.relators {
        let mut acc = DVector::zeros(d.module_tag.dim());
        for g in 0..pres.generator_count {
            acc += fox_matrix(r, g, rep, d.module_tag)? * &d.values[g];
        }
        worst = worst.max(acc.amax());
    }
    Ok(worst)
}

/// True iff the cocycle lies in B¹ within `tol·‖d‖`.
pub fn is_coboundary(
    pres: &Presentation,
    rep: &Representation,
    d: &Cocycle,
    tol: f64,
) -> Result<bool> {
    let report = cocycle_space(pres, rep, d.module_tag, RANK_TOL)?;
    let norm = d.norm();
    if norm == 0.0 {
        return Ok(true);
    }
    Ok(report.distance_to_coboundaries(d) <= tol * norm)
}

/// Restriction of a cocycle to a subgroup given by words in the generators.
/// The resulting context is the subgroup presentation on those words; when
/// two words are given their images must commute (peripheral torus).
pub fn restrict(
    d: &Cocycle,
    rep: &Representation,
    subgroup_words: &[Word],
) -> Result<(Cocycle, Representation)> {
    let values: Vec<DVector<f64>> = subgroup_words
        .iter()
        .map(|w| d.evaluate(rep, w))
        .collect();
    let images: Vec<Isometry> = subgroup_words.iter().map(|w| rep.evaluate(w)).collect();
    if images.len() == 2 {
        let comm = images[0]
            .compose(&images[1])
            .compose(&images[0].inverse())
            .compose(&images[1].inverse());
        let n = rep.rank();
        let defect = (comm.matrix() - DMatrix::identity(n + 1, n + 1)).amax();
        if defect > 1e-8 {
            return Err(Error::NonCommutingImages(defect));
        }
    }
    Ok((
        Cocycle::new(d.module_tag, values),
        Representation::new(images),
    ))
}

/// Dimensions of the restriction map H¹(M) → H¹(∂M): returns
/// (dim ker, dim image). `peripheral_words` generate the boundary torus.
pub fn peripheral_restriction_dims(
    pres: &Presentation,
    rep: &Representation,
    peripheral_words: &[Word],
    tag: ModuleTag,
    tol: f64,
) -> Result<(usize, usize)> {
    let report = cocycle_space(pres, rep, tag, tol)?;
    let h1 = report.h1_representatives()?;

    // Boundary cocycle data for the restricted representation.
    let images: Vec<Isometry> = peripheral_words.iter().map(|w| rep.evaluate(w)).collect();
    let boundary_rep = Representation::new(images);
    let boundary_pres = Presentation::torus();
    let boundary = cocycle_space(&boundary_pres, &boundary_rep, tag, tol)?;

    // Restrict each H¹ representative and measure rank modulo boundary B¹.
    let d = tag.dim();
    let mut restricted = DMatrix::zeros(d * peripheral_words.len(), h1.ncols());
    for k in 0..h1.ncols() {
        let c = Cocycle::from_stacked(tag, &h1.column(k).into_owned());
        let (rc, _) = restrict(&c, rep, peripheral_words)?;
        restricted.set_column(k, &rc.stacked());
    }
    let nb = boundary.basis_b1.ncols();
    let mut stacked = DMatrix::zeros(restricted.nrows(), restricted.ncols() + nb);
    stacked
        .view_mut((0, 0), (restricted.nrows(), restricted.ncols()))
        .copy_from(&restricted);
    stacked
        .view_mut((0, restricted.ncols()), (restricted.nrows(), nb))
        .copy_from(&boundary.basis_b1);
    let image_dim = svd_rank(&stacked, tol)? - boundary.dim_b1;
    Ok((report.dim_h1 - image_dim, image_dim))
}

/// Dimension of the parabolic cohomology PH¹ = ker(H¹(M) → H¹(∂M)).
pub fn parabolic_h1(
    pres: &Presentation,
    rep: &Representation,
    peripheral_words: &[Word],
    tag: ModuleTag,
) -> Result<usize> {
    Ok(peripheral_restriction_dims(pres, rep, peripheral_words, tag, RANK_TOL)?.0)
}

type ModuleLift = Box<dyn Fn(&DVector<f64>) -> DMatrix<f64>>;

fn weil_rep_and_module(rep: &Representation, tag: ModuleTag) -> (Representation, ModuleLift) {
    match tag {
        ModuleTag::So41 => (
            rep.clone(),
            Box::new(|v| so_from_coords(4, v).matrix().clone()),
        ),
        ModuleTag::So31 => (
            rep.clone(),
            Box::new(|v| so_from_coords(3, v).matrix().clone()),
        ),
        // R^{3,1} deformations push the representation off the SO(3,1)
        // block, so deform the embedded representation inside SO(4,1).
        ModuleTag::R31 => (
            rep.embedded(),
            Box::new(|v| {
                join(&LieElement::zero(3), v)
                    .expect("R^{3,1} vectors join into so(4,1)")
                    .matrix()
                    .clone()
            }),
        ),
    }
}

/// First-order Weil deformation γ ↦ (1 + t·d(γ))·ρ(γ): returns the largest
/// deviation of a relator image from the identity, which is O(t²) exactly
/// when d is a cocycle.
pub fn weil_deform(
    pres: &Presentation,
    rep: &Representation,
    d: &Cocycle,
    t: f64,
) -> Result<f64> {
    let (lifted, to_matrix) = weil_rep_and_module(rep, d.module_tag);
    let n = lifted.rank();
    let id = DMatrix::identity(n + 1, n + 1);
    let deformed: Vec<DMatrix<f64>> = (0..rep.generator_count())
        .map(|g| (&id + t * to_matrix(&d.values[g])) * lifted.image(g).matrix())
        .collect();

    let mut worst = 0.0f64;
    for r in &pres.relators {
        let mut acc = id.clone();
        for l in r.letters() {
            if l.inverse {
                let inv = deformed[l.gen]
                    .clone()
                    .try_inverse()
                    .expect("deformed generator is invertible for small t");
                acc *= inv;
            } else {
                acc *= &deformed[l.gen];
            }
        }
        worst = worst.max((acc - &id).amax());
    }
    Ok(worst)
}

/// Derivative of the trace function t ↦ tr((1 + t·d(γ))ρ(γ)) at t = 0,
/// namely tr(d(γ)·ρ(γ)); vanishes identically for R^{3,1}-valued cocycles.
pub fn trace_gradient(rep: &Representation, d: &Cocycle, gamma: &Word) -> f64 {
    let (lifted, to_matrix) = weil_rep_and_module(rep, d.module_tag);
    let value = d.evaluate(rep, gamma);
    (to_matrix(&value) * lifted.evaluate(gamma).matrix()).trace()
}
