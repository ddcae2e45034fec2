//! Terms, statements and their evaluation on finite algebras.

pub mod ast;
pub mod corpus;
pub mod eval;
pub mod parser;

pub use ast::{Atom, BinOp, Statement, Term};
pub use corpus::{builtin_corpus, parse_corpus, run_corpus, CorpusEntry, CorpusResult, CorpusScope};
pub use eval::{eval_term, format_assignment, holds, EvalError, Verdict};
pub use parser::{parse_statement, parse_statement_file, parse_term, ParseError};
