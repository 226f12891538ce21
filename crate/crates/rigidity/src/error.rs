use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("zero vector has no causal classification")]
    ZeroVector,

    #[error("matrix is not in SO_0({n},1) within tolerance {tol:e}")]
    NotSpecialLorentz { n: usize, tol: f64 },

    #[error("matrix is not in so({n},1): |a^t J + J a| = {defect:e}")]
    NotLieElement { n: usize, defect: f64 },

    #[error("Mobius matrix determinant is not ±1: |det| deviation {0:e}")]
    NonUnitDeterminant(f64),

    #[error("isometry does not fix the reference light-cone point p0 (defect {0:e})")]
    DoesNotFixBasepoint(f64),

    #[error("point is not on the hyperboloid: x^t J x = {0}")]
    NotOnHyperboloid(f64),

    #[error("isometry is not parabolic (kind {0})")]
    NotParabolic(String),

    #[error(
        "numerical rank is ambiguous: singular value {sigma:e} lies in the window \
         ({lo:e}, {hi:e}); refuse to guess a dimension"
    )]
    RankAmbiguous { sigma: f64, lo: f64, hi: f64 },

    #[error("representation violates relator {index}: defect {defect:e}")]
    RelatorViolated { index: usize, defect: f64 },

    #[error("letter refers to generator {0} but the presentation has {1} generators")]
    UnknownGenerator(usize, usize),

    #[error("peripheral images do not commute: defect {0:e}")]
    NonCommutingImages(f64),

    #[error("degenerate peripheral lattice: {0}")]
    DegenerateLattice(String),

    #[error("invalid two-bridge normal form ({p},{q}): {reason}")]
    InvalidKnot { p: i64, q: i64, reason: String },

    #[error("no geometric candidate representation (all cusp lattices degenerate)")]
    NoGeometricCandidate,

    #[error("root index {0} out of range ({1} roots)")]
    RootIndexOutOfRange(usize, usize),

    #[error("root refinement failed to converge: residual {0:e}")]
    RootRefinementFailed(f64),

    #[error("longitude word fails the commutation check: defect {0:e}")]
    LongitudeConvention(f64),

    #[error(
        "cohomology dimension out of contract: dim H^1(M, R^{{3,1}}) = {got}, expected \
         {expected}; dims (Z1, B1, H1) = ({z1}, {b1}, {h1})"
    )]
    UnexpectedCohomologyDimension {
        got: usize,
        expected: usize,
        z1: usize,
        b1: usize,
        h1: usize,
    },

    #[error("cocycle violates the relator system: defect {0:e}")]
    NotACocycle(f64),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
