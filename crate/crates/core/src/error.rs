use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("generator {index} is not orthogonal")]
    NonOrthogonalGenerator { index: usize },
    #[error("group closure exceeded the bound of {bound} elements")]
    GroupTooLarge { bound: usize },
    #[error("the given elements do not generate the group")]
    NotGenerating,
    #[error("{0}")]
    Invalid(String),
    #[error("incomparable faces: {0}")]
    Incomparable(String),
    #[error("unknown representation {0:?}")]
    UnknownRepresentation(String),
    #[error("representation is not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("Wythoff space is zero-dimensional; no realization exists")]
    EmptyWythoffSpace,
    #[error("base point is zero or not fixed by the vertex stabilizer")]
    BadBasePoint,
    #[error("vertices {0} and {1} are realized at the same point")]
    CoincidentVertices(usize, usize),
    #[error("facet {0} is not planar")]
    NonCoplanarFacet(usize),
    #[error("every facet is planar; a skew realization needs a non-planar facet")]
    NoSkewFacet,
    #[error("edge {0} joins antipodal points")]
    AntipodalEdge(usize),
    #[error("Plateau relaxation did not converge after {iterations} iterations (last displacement {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
