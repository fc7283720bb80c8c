use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Axioms of a commutative association scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axiom {
    /// `A_0 = I`.
    As1,
    /// `A_0 + ... + A_d = J`.
    As2,
    /// Closure under transposition.
    As3,
    /// Commutativity and closure of products.
    As4,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Axiom::As1 => "AS1",
            Axiom::As2 => "AS2",
            Axiom::As3 => "AS3",
            Axiom::As4 => "AS4",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    /// Relation indices involved, in the order they were checked.
    pub relations: Vec<usize>,
    pub detail: String,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violated", self.axiom)?;
        if !self.relations.is_empty() {
            write!(f, " at relations {:?}", self.relations)?;
        }
        write!(f, ": {}", self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslationViolation {
    #[error("connection sets do not partition the group: {0}")]
    NotAPartition(String),
    #[error("first connection set must be exactly the identity")]
    IdentityClass,
    #[error("found {found} eigenvalue classes of characters, expected {expected}")]
    EigenClassCount { found: usize, expected: usize },
    #[error("eigen data failed validation: {0}")]
    EigenData(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramViolation {
    #[error("diagram has no nodes")]
    Empty,
    #[error("duplicate node name `{0}`")]
    DuplicateNode(String),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("root `{0}` listed more than once")]
    DuplicateRoot(String),
    #[error("underlying graph is not weakly connected")]
    Disconnected,
    #[error("dart `{0}` is missing from the rotation system")]
    MissingDart(String),
    #[error("dart `{0}` appears more than once in the rotation system")]
    DuplicateDart(String),
    #[error("dart `{dart}` listed at node `{listed}` but belongs to `{actual}`")]
    MisplacedDart {
        dart: String,
        listed: String,
        actual: String,
    },
    #[error("embedding is not planar: V-E+F = {vertices}-{edges}+{faces} != 2")]
    Euler {
        vertices: usize,
        edges: usize,
        faces: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("scheme validation failed: {}", join(.0))]
    SchemeAxioms(Vec<AxiomViolation>),
    #[error("translation scheme validation failed: {0}")]
    Translation(#[from] TranslationViolation),
    #[error("diagram validation failed: {0}")]
    Diagram(#[from] DiagramViolation),
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("resource limit: {what} needs {requested} entries, cap is {cap}")]
    ResourceLimit {
        what: &'static str,
        requested: u128,
        cap: u128,
    },
    #[error("invalid rewrite: {0}")]
    InvalidRewrite(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }

    /// True for the structural failures: scheme axioms, translation
    /// partitions and diagram embeddings.
    pub fn is_validation_failure(&self) -> bool {
        matches!(
            self,
            Error::SchemeAxioms(_) | Error::Translation(_) | Error::Diagram(_)
        )
    }
}

fn join(violations: &[AxiomViolation]) -> String {
    violations
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
