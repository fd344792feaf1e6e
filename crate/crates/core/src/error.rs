use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar `{0}`")]
    ScalarParse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("unsupported root system label `{0}`")]
    UnsupportedLabel(String),
    #[error("rank {rank} exceeds the Weyl enumeration bound {bound}")]
    RankBound { rank: usize, bound: usize },
    #[error("Weyl group not enumerated for {0}")]
    NoWeylGroup(String),
    #[error("torsion of order {needed} does not fit in the field of order {order}; enlarge the field order")]
    FieldTooSmall { needed: u64, order: u32 },
    #[error("point is not regular: e^α = 1 for root {0}")]
    NotRegular(String),
    #[error("singular χ: α(χ) = 0 for root {0}")]
    SingularChi(String),
    #[error("invalid nested set: {0}")]
    NestedSet(String),
    #[error("chart coordinates not generic: r_α(t) = 0 for α = {0}")]
    ChartGenericity(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("polynomial degree {0} exceeds the Hecke degree cap")]
    DegreeCap(u32),
    #[error("subspace does not have the expected shape: {0}")]
    Shape(String),
    #[error("{0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, Error>;
