use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use super::ast::Statement;
use super::eval::{holds, EvalError, Verdict};
use super::parser::{parse_statement, ParseError};
use crate::algebra::{FiniteAlgebra, Subset};
use crate::center::{oml_center, wajsberg_center};

pub const BUILTIN_CORPUS: &str = include_str!("../../data/corpus.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CorpusScope {
    All,
    Center,
    OmlCenter,
}

impl CorpusScope {
    pub fn name(self) -> &'static str {
        match self {
            CorpusScope::All => "all",
            CorpusScope::Center => "center",
            CorpusScope::OmlCenter => "omlcenter",
        }
    }

    pub fn subset(self, alg: &FiniteAlgebra) -> Subset {
        match self {
            CorpusScope::All => Subset::full(alg.size()),
            CorpusScope::Center => wajsberg_center(alg),
            CorpusScope::OmlCenter => oml_center(alg),
        }
    }
}

impl fmt::Display for CorpusScope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CorpusScope {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "all" => Ok(CorpusScope::All),
            "center" | "z" => Ok(CorpusScope::Center),
            "omlcenter" | "oml" | "o" => Ok(CorpusScope::OmlCenter),
            _ => Err(format!("unknown scope `{s}` (expected all, center or omlcenter)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusEntry {
    pub id: String,
    pub scope: CorpusScope,
    pub statement: Statement,
    /// Reported but never counted as a failure.
    pub probe: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("corpus line {line}: {message}")]
    Header { line: usize, message: String },
    #[error("corpus line {line}: {source}")]
    Statement { line: usize, source: ParseError },
    #[error("corpus line {line}: duplicate id `{id}`")]
    DuplicateId { line: usize, id: String },
}

/// Parses `[?]id [scope]: statement` lines; `#` starts a comment.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>, CorpusError> {
    let mut entries: Vec<CorpusEntry> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let header = |message: &str| CorpusError::Header {
            line,
            message: message.to_string(),
        };
        let (head, stmt) = body
            .split_once("]:")
            .ok_or_else(|| header("expected `id [scope]: statement`"))?;
        let (id, scope) = head
            .split_once('[')
            .ok_or_else(|| header("missing `[scope]`"))?;
        let scope: CorpusScope = scope.trim().parse().map_err(|e: String| header(&e))?;
        let id = id.trim();
        let (probe, id) = match id.strip_prefix('?') {
            Some(rest) => (true, rest.trim()),
            None => (false, id),
        };
        if id.is_empty() || id.contains(char::is_whitespace) {
            return Err(header("bad entry id"));
        }
        if entries.iter().any(|e| e.id == id) {
            return Err(CorpusError::DuplicateId {
                line,
                id: id.to_string(),
            });
        }
        let statement = parse_statement(stmt.trim()).map_err(|e| CorpusError::Statement {
            line,
            source: ParseError { line, ..e },
        })?;
        entries.push(CorpusEntry {
            id: id.to_string(),
            scope,
            statement,
            probe,
        });
    }
    Ok(entries)
}

pub fn builtin_corpus() -> Vec<CorpusEntry> {
    parse_corpus(BUILTIN_CORPUS).expect("embedded corpus parses")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusResult {
    pub entry: CorpusEntry,
    pub verdict: Verdict,
}

impl CorpusResult {
    /// Failed and not a probe.
    pub fn is_failure(&self) -> bool {
        !self.entry.probe && !self.verdict.holds()
    }
}

/// Evaluates every entry on its scope, in corpus order.
pub fn run_corpus_entries(
    alg: &FiniteAlgebra,
    entries: &[CorpusEntry],
) -> Result<Vec<CorpusResult>, EvalError> {
    let scopes = [CorpusScope::All, CorpusScope::Center, CorpusScope::OmlCenter]
        .map(|s| (s, s.subset(alg)));
    entries
        .iter()
        .map(|e| {
            let scope = &scopes.iter().find(|(s, _)| *s == e.scope).expect("scope").1;
            Ok(CorpusResult {
                entry: e.clone(),
                verdict: holds(alg, &e.statement, scope)?,
            })
        })
        .collect()
}

pub fn run_corpus(alg: &FiniteAlgebra) -> Vec<CorpusResult> {
    run_corpus_entries(alg, &builtin_corpus()).expect("corpus statements are closed under their variables")
}
