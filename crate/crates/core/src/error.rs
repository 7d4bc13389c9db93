use thiserror::Error;

#[derive(Debug, Error)]
pub enum SacError {
    #[error("graph not connected")]
    NotConnected,
    #[error("identical endpoints")]
    IdenticalEndpoints,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("malformed graph: {0}")]
    MalformedGraph(String),
    #[error("malformed query: {0}")]
    MalformedQuery(String),
    #[error("malformed placement: {0}")]
    MalformedPlacement(String),
    #[error("oracle size limit: {vertices} vertices exceeds {limit}")]
    OracleSizeLimit { vertices: usize, limit: usize },
    #[error("not a cut set")]
    NotACutSet,
    #[error("no witness guaranteed: {0}")]
    NoWitnessGuaranteed(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{what} budget exceeded: required {required}, limit {limit}")]
    Budget {
        what: &'static str,
        required: u64,
        limit: u64,
    },
    #[error("not a junction vertex at level {level}: {vertex}")]
    NotJunctionVertex { vertex: String, level: usize },
    #[error("unknown graph name `{0}`")]
    UnknownGraph(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = SacError> = std::result::Result<T, E>;
