use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial {0} does not lie in the subring Z[Q]")]
    NotInQSubring(String),
    #[error("Cartan matrix is not of finite type: root closure exceeded {bound} roots")]
    InfiniteType { bound: usize },
    #[error("inconsistent root datum: {0}")]
    InconsistentDatum(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("coweight {0} is not dominant")]
    NotDominant(String),
    #[error("coweight {0} is not minuscule")]
    NotMinuscule(String),
    #[error("coweight {0} is not antidominant")]
    NotAntidominant(String),
    #[error("operation requires a GL_n root system")]
    NotGL,
    #[error("interval below an element of length {length} exceeds the enumeration bound {bound} (set HECKE_MAX_INTERVAL to raise it)")]
    IntervalTooLarge { length: usize, bound: usize },
    #[error("bad index: {0}")]
    BadIndex(String),
    #[error("bad deletion position {position}: word has {len} letters")]
    BadPosition { position: usize, len: usize },
    #[error("minuscule chain construction failed: {0}")]
    ChainNotFound(String),
    #[error("signed word is not reduced: {letters} letters but the product has length {length}")]
    NotReduced { letters: usize, length: usize },
    #[error("coweight {lambda} is not in the Weyl orbit of {mu}")]
    NotInOrbit { lambda: String, mu: String },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
