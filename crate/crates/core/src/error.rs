use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("root of unity of order {0} is not in the field")]
    BadOrder(u64),
    #[error("cannot parse coefficient {input:?} at byte {pos}: {msg}")]
    Parse {
        input: String,
        pos: usize,
        msg: String,
    },
    #[error("group closure exceeded {0} elements")]
    GroupTooLarge(usize),
    #[error("invalid permutation: {0}")]
    BadPerm(String),
    #[error("character table: {0}")]
    CharTable(String),
    #[error("family {family}: {msg}")]
    Family { family: String, msg: String },
    #[error("torus action: {0}")]
    Torus(String),
    #[error("catalog: {0}")]
    Catalog(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
