use thiserror::Error;

use crate::algebra::Elem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("algebra must have at least one element")]
    Empty,
    #[error("implication table has {found} entries, expected {expected}")]
    TableShape { expected: usize, found: usize },
    #[error("entry [{row}][{col}] = {value} is outside a carrier of size {size}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        size: usize,
    },
    #[error("element index {index} is outside a carrier of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("one and zero must differ when the carrier has two or more elements")]
    OneEqualsZero,
    #[error("duplicate element name `{0}`")]
    DuplicateName(String),
    #[error("invalid element name `{0}`")]
    BadName(String),
    #[error("unknown element `{0}`")]
    UnknownName(String),
    #[error("not a permutation of the carrier")]
    NotAPermutation,
    #[error("zero is not the bottom element: {zero} -> {x} != {one}")]
    NotBounded { zero: String, x: String, one: String },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown builtin algebra `{0}`")]
    UnknownBuiltin(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AxiomError {
    #[error("{class}: internal inconsistency: {detail}")]
    Inconsistent { class: String, detail: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CenterError {
    #[error("subset does not contain {0}")]
    MissingConstant(&'static str),
    #[error("subset not closed: {x} -> {y} leaves it")]
    NotClosed { x: Elem, y: Elem },
    #[error("input is not an orthomodular lattice: {axiom} fails at {assignment}")]
    InputNotOrthomodular { axiom: String, assignment: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
