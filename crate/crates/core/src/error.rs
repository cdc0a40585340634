use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Axiom families enforced when tables are validated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Associativity,
    Involution,
    Antihomomorphism,
    Absorbing,
    AddAssociativity,
    AddCommutativity,
    AddIdentity,
    AddInverse,
    LeftDistributivity,
    RightDistributivity,
    StarAdditive,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Associativity => "associativity",
            Axiom::Involution => "involution",
            Axiom::Antihomomorphism => "antihomomorphism",
            Axiom::Absorbing => "absorbing zero",
            Axiom::AddAssociativity => "additive associativity",
            Axiom::AddCommutativity => "additive commutativity",
            Axiom::AddIdentity => "additive identity",
            Axiom::AddInverse => "additive inverse",
            Axiom::LeftDistributivity => "left distributivity",
            Axiom::RightDistributivity => "right distributivity",
            Axiom::StarAdditive => "additive involution",
        };
        f.write_str(s)
    }
}

/// One failed law with the first witnessing tuple found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<AxiomViolation>,
}

impl ValidationReport {
    pub fn violates(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{} fails at {:?}", v.axiom, v.witness)?;
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("axiom violations: {0}")]
    AxiomViolation(ValidationReport),
    #[error("{table} entry {value} at {position:?} is outside 0..{n}")]
    IndexOutOfRange {
        table: &'static str,
        position: Vec<usize>,
        value: usize,
        n: usize,
    },
    #[error("{table} has shape mismatch: {detail}")]
    Shape { table: &'static str, detail: String },
    #[error("{what} of size {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("integer overflow while computing {0}")]
    ArithmeticOverflow(&'static str),
    #[error("subset {0} is not a member of the lattice")]
    ForeignElement(String),
    #[error("ortholattice axiom `{axiom}` fails: {witness}")]
    OrtholatticeAxiomFailure { axiom: &'static str, witness: String },
    #[error("{kind} decomposition is not unique: candidates {candidates:?}")]
    UniquenessViolation {
        kind: &'static str,
        candidates: Vec<Vec<usize>>,
    },
    #[error("hypotheses not met: {}", .0.join(", "))]
    HypothesisNotMet(Vec<String>),
    #[error("no comparability certificate found for {0}")]
    NoCertificateFound(String),
    #[error("{0} is not a *-subsemigroup containing the zero")]
    NotSubsemigroup(String),
    #[error("bad generator spec `{0}`")]
    GeneratorSpec(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
