use thiserror::Error;

use crate::arith::Hcf;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("malformed graph input: {0}")]
    Malformed(String),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("operation needs at least one vertex")]
    Empty,
    #[error("invalid generator: {0}")]
    BadGenerator(String),
    #[error("cannot parse graph expression '{expr}': {reason}")]
    BadExpression { expr: String, reason: String },
}

#[derive(Debug, Error)]
pub enum InvariantError {
    #[error("graph has {n} vertices, above the colouring size cap of {cap}")]
    SizeCapExceeded { n: usize, cap: usize },
    #[error("graph has no vertices")]
    Empty,
    #[error("bottlegraph needs chromatic number at least 2, got {0}")]
    ChromaticNumberTooSmall(usize),
    #[error("n = {n} is not divisible by |H| = {order}")]
    NotDivisible { n: usize, order: usize },
}

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error("k must be at least 1")]
    ZeroMultiplier,
    #[error("H must be bipartite, but chi(H) = {0}")]
    NotBipartite(usize),
    #[error("sigma(H) * k = {0} leaves no room for a smallest class")]
    SmallestClassEmpty(usize),
    #[error("materialised minimum degree {actual} differs from the formula value {expected}")]
    DegreeMismatch { expected: usize, actual: usize },
    #[error("no certificate: {0}")]
    Refused(String),
}

#[derive(Debug, Error)]
pub enum PackError {
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error("hcf_chi(H) = {0}, but this construction needs hcf_chi(H) = {1}")]
    WrongHcfChi(Hcf, u64),
    #[error("hcf_c(H) = {0}, but this construction needs hcf_c(H) = 1")]
    ComponentHcf(u64),
    #[error("hcf(H) != 1")]
    HcfNotOne,
    #[error("H must be bipartite, but chi(H) = {0}")]
    NotBipartite(usize),
    #[error("chi_cr(H) = chi(H): no room below the bottle shape")]
    NoCriticalGap,
    #[error("{what} = {value} is not divisible by {modulus}")]
    Divisibility {
        what: &'static str,
        value: i64,
        modulus: i64,
    },
    #[error("host {0}")]
    BadHost(String),
    #[error("deviation {deviation} exceeds |B*| = {bound}")]
    DeviationTooLarge { deviation: i64, bound: i64 },
    #[error("infeasible with D' = {d_prime}: {reason}; D' = {suggested} would suffice")]
    Infeasible {
        d_prime: i64,
        reason: String,
        suggested: i64,
    },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("no parity-compatible colourings found (odd-odd and even-even)")]
    ParityContradiction,
    #[error("stage '{stage}': {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<PackError>,
    },
}

impl PackError {
    pub(crate) fn at(self, stage: &'static str) -> PackError {
        PackError::Stage {
            stage,
            source: Box::new(self),
        }
    }

    /// The innermost error, with stage annotations stripped.
    pub fn root(&self) -> &PackError {
        match self {
            PackError::Stage { source, .. } => source.root(),
            other => other,
        }
    }
}

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("host has {n} vertices, above the search cap of {cap}")]
    SearchCapExceeded { n: usize, cap: usize },
    #[error("pattern graph has no vertices")]
    EmptyPattern,
    #[error("average degree {average} is below 2i = {needed}")]
    StarHypothesis { average: String, needed: usize },
    #[error("star size i must be positive")]
    ZeroStar,
}
