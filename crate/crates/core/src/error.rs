use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: duplicate generator `{name}`")]
    DuplicateGenerator { line: usize, name: String },
    #[error("line {line}: unknown generator `{name}`")]
    UnknownGenerator { line: usize, name: String },
    #[error("invalid linking data: {0}")]
    Linking(String),
    #[error("generator index {gen} out of range for {count} generators")]
    MalformedWord { gen: usize, count: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("target `{name}` has order {order}, above the bound {bound}")]
    TargetTooLarge {
        name: String,
        order: usize,
        bound: usize,
    },
    #[error("not a group table: {0}")]
    NotAGroup(String),
}

pub type Result<T> = std::result::Result<T, Error>;
