use thiserror::Error;

use crate::solutions::ResidueClass;

/// Every failure the library can report.
///
/// The `Display` form of each variant starts with the variant name so the CLI
/// can surface it verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ZeroSeries: no nonzero coefficient below the truncation order")]
    ZeroSeries,

    #[error("NotDivisible: quotient by Delta has a term q^{exponent} below the admissible order")]
    NotDivisible { exponent: String },

    #[error("IncompatibleGrid: exponent grid 1/{from} cannot be expressed on 1/{to}")]
    IncompatibleGrid { from: u32, to: u32 },

    #[error("InvalidWeight: {0} is not an integer or half an integer")]
    InvalidWeight(String),

    #[error("NegativeWeight: weight {0} is negative")]
    NegativeWeight(String),

    #[error("UnsupportedClass: weight {weight} is in class {class}{}", class_note(.class))]
    UnsupportedClass { weight: String, class: ResidueClass },

    #[error("ForbiddenWeight: descent is undefined at weight {0} (k must avoid 0, 4, 5)")]
    ForbiddenWeight(String),

    #[error("MuUndefined: ladder constant has a vanishing denominator at weight {0}")]
    MuUndefined(String),

    #[error("SeedInconsistent: [F_k, E4] differs from (2/3)(k+1) Delta mu_0 F_(k-6) at q^{exponent}")]
    SeedInconsistent { exponent: String },

    #[error("Resonant: indicial roots of weight {0} differ by a positive integer on this branch")]
    Resonant(String),

    #[error("IndicialDegenerate: indicial roots coincide at weight {0}")]
    IndicialDegenerate(String),

    #[error("UnsupportedBeta: Delta^{0} does not live on the 1/24 exponent grid")]
    UnsupportedBeta(String),

    #[error("InsufficientPrecision: {0}")]
    InsufficientPrecision(String),

    #[error("NotQuasimodular: {0}")]
    NotQuasimodular(String),

    #[error("OddWeight: weight {0} is odd")]
    OddWeight(u32),

    #[error("NotPrime: {0} is not prime")]
    NotPrime(u64),

    #[error("Unexpandable: {0} cannot be written in powers of 1/j")]
    Unexpandable(String),

    #[error("IdentityFailed: {0}")]
    IdentityFailed(String),

    #[error("Parse: {0}")]
    Parse(String),
}

fn class_note(class: &ResidueClass) -> &'static str {
    match class {
        ResidueClass::NoneKnown => ": no known modular solution (conjectured: none exists)",
        _ => "",
    }
}

pub type Result<T> = std::result::Result<T, Error>;
