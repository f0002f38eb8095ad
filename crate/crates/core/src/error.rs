use thiserror::Error;

use crate::forms::DifferentialForm;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("operands belong to different field configurations")]
    ConfigMismatch,

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("not a p-th power: the partial derivative in `{witness}` is nonzero")]
    NotPthPower { witness: String },

    /// A K^p-expansion was requested over a basis that does not span the element.
    #[error("element is not in the requested subfield: exponent residue class {residue:?} is not spanned by the basis")]
    NotInSubfield { residue: Vec<u32> },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("form is not closed; its exterior derivative is {differential}")]
    NotClosed { differential: Box<DifferentialForm> },

    /// The class does not lie in the requested filtration step.
    #[error("class lies in U_{level} but not in U_{required}")]
    Filtration { level: i64, required: i64 },

    #[error("unsupported presentation: {0}")]
    Unsupported(String),
}
