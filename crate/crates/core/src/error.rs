use crate::feasibility::ExclusionCertificate;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("degenerate triangle: vertices coincide or are collinear")]
    Degenerate,

    #[error("cannot parse lattice point `{0}` (expected `x,y`)")]
    ParsePoint(String),

    #[error("orthocenter {0} is not a lattice point")]
    OrthocenterNotLattice(String),

    #[error("angle at vertex {0} is not acute")]
    NotAcute(usize),

    #[error("tangent must be positive, got {0}")]
    NonPositiveTangent(String),

    #[error("{family}: {constraint} (got {value})")]
    OutOfDomain {
        family: &'static str,
        constraint: &'static str,
        value: String,
    },

    #[error("perimeter {perimeter} is provably impossible ({} certificate(s))", .certificates.len())]
    ProvenImpossible {
        perimeter: u64,
        certificates: Vec<ExclusionCertificate>,
    },

    #[error("{family}: constructed triangle failed verification: {reason}")]
    Verification { family: String, reason: String },

    #[error("{0} is not the incenter of the triangle")]
    NotIncenter(String),

    #[error("invalid search configuration: {0}")]
    Config(String),

    #[error("search contradicts a certificate: {0}")]
    Contradiction(String),

    #[error("atlas document rejected: {0}")]
    Atlas(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Atlas(e.to_string())
    }
}
