use thiserror::Error;

/// Everything that can go wrong across the library.
///
/// Variants map one-to-one onto violated preconditions so that callers (the
/// CLI in particular) can name the predicate that failed.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    CompositeP(u64),
    #[error("extension degree {k} over p = {p} is out of range (q must be at most {bound})")]
    DegreeOutOfRange { p: u64, k: u32, bound: u64 },
    #[error("modulus is not a monic irreducible polynomial of degree {0}")]
    BadModulus(u32),
    #[error("modulus differs from the canonical one")]
    NonCanonicalModulus,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("element index {0} is out of range for the field")]
    ElementOutOfRange(u64),
    #[error("operation requires characteristic 2")]
    OddCharacteristic,
    #[error("operation requires odd characteristic")]
    EvenCharacteristic,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("dimension {0} exceeds the cap of {cap}", cap = crate::linalg::MAX_DIM)]
    DimensionTooLarge(usize),
    #[error("matrix is singular")]
    Singular,
    #[error("form is not symmetric")]
    NotSymmetric,
    #[error("form is not alternating")]
    NotAlternating,
    #[error("alternating nonsingular form in odd dimension")]
    OddDimension,
    #[error("operation requires odd dimension")]
    EvenDimension,
    #[error("quadratic form is degenerate")]
    Degenerate,
    #[error("quadratic form is singular")]
    SingularForm,
    #[error("vector is isotropic")]
    IsotropicVector,
    #[error("vector is singular for the quadratic form")]
    SingularVector,
    #[error("element has determinant -1")]
    NotSpecial,
    #[error("matrix is not an isometry of the form")]
    NotAnIsometry,
    #[error("elements belong to different forms")]
    FormMismatch,
    #[error("forms have different kinds")]
    KindMismatch,
    #[error("unsupported combination: {0}")]
    UnsupportedCombination(String),
    #[error("budget exceeded: {what} needs more than {budget}")]
    BudgetExceeded { what: String, budget: u64 },
    #[error("{0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
