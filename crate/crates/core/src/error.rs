use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("parameter index {index} out of range for arity {arity}")]
    IndexOutOfRange { index: usize, arity: usize },
    #[error("expected {expected} specialization values, got {got}")]
    WrongValueCount { expected: usize, got: usize },
    #[error("not polynomial at this specialization")]
    NotPolynomial,
    #[error("element is not a unit of the ring")]
    NotInvertible,
}

/// What went wrong while checking a Morse word.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramErrorKind {
    #[error("{event} on empty profile")]
    EmptyProfile { event: &'static str },
    #[error("position {position} out of range for {strands} strands")]
    PositionOutOfRange { position: usize, strands: usize },
    #[error("cap orientation mismatch: expected {expected}, found {found}")]
    CapOrientationMismatch { expected: String, found: String },
    #[error("cap joins strands of different colours")]
    CapColourMismatch,
    #[error("nonempty final profile: {found}")]
    NonEmptyFinalProfile { found: String },
    #[error("final profile {found} does not match gluing profile {expected}")]
    ProfileMismatch { expected: String, found: String },
    #[error("plane diagrams have no boundary profile")]
    PlaneWithProfile,
    #[error("radial framing is only defined on the annulus")]
    RadialOnPlane,
}

/// A validation failure, located at an event index when one applies.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind}{}", match .event { Some(i) => alloc::format!(" at event {}", i + 1), None => String::new() })]
pub struct DiagramError {
    pub event: Option<usize>,
    pub kind: DiagramErrorKind,
}

impl DiagramError {
    pub fn at(event: usize, kind: DiagramErrorKind) -> Self {
        DiagramError {
            event: Some(event),
            kind,
        }
    }

    pub fn global(kind: DiagramErrorKind) -> Self {
        DiagramError { event: None, kind }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("diagram is not closed in the plane")]
    NotClosedPlane,
    #[error("diagram mixes colours; expected a single colour")]
    MixedColours,
    #[error("orange strands must be resolved before evaluation")]
    UnresolvedOrange,
    #[error("colour {colour} exceeds the declared number of colours {count}")]
    ColourOutOfRange { colour: u8, count: usize },
    #[error("skein recursion budget of {budget} exceeded on word {word:?}")]
    BudgetExceeded { budget: usize, word: Vec<u8> },
    #[error("unsupported number of slots {0}")]
    UnsupportedSlots(usize),
    #[error("operation requires an annulus diagram")]
    NotAnnulus,
}
