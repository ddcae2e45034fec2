//! Isomorph-free enumeration of finite bounded algebras and countermodel search.
//!
//! Zero is index `0` and one is index `n - 1`. Every table satisfies
//! `x -> x = 1`, `x -> 1 = 1`, `1 -> x = x` and `0 -> x = 1` by
//! construction; the remaining cells are searched with class-dependent
//! propagation and every leaf is re-verified by the direct class check.

mod canonical;
mod engine;
mod manifest;

use std::time::Duration;

use serde::Serialize;
use thiserror::Error;

pub use canonical::{canonical_key, default_names, isomorphic, isomorphic_unrestricted, CanonicalKey};
pub use manifest::{sha256_hex, Manifest, ManifestEntry};

use crate::algebra::{FiniteAlgebra, Subset};
use crate::axioms::AlgebraClass;
use crate::error::AxiomError;
use crate::term::{holds, EvalError, Statement, Verdict};

/// Largest size searched without an explicit time budget.
pub const DEFAULT_MAX_SIZE: usize = 5;
/// Time budget applied above [`DEFAULT_MAX_SIZE`] when none is given.
pub const LARGE_SIZE_TIME_BUDGET: Duration = Duration::from_secs(600);

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Limits {
    /// Search nodes across all workers; `None` is unlimited.
    pub nodes: Option<u64>,
    /// Wall-clock budget; `None` applies [`LARGE_SIZE_TIME_BUDGET`] to sizes
    /// above [`DEFAULT_MAX_SIZE`] and nothing below.
    pub time: Option<Duration>,
    /// Worker threads; `0` and `1` both mean sequential.
    pub workers: usize,
}

impl Limits {
    fn time_for(&self, n: usize) -> Option<Duration> {
        self.time
            .or((n > DEFAULT_MAX_SIZE).then_some(LARGE_SIZE_TIME_BUDGET))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSpec {
    pub size: usize,
    pub class: AlgebraClass,
    /// When set, only models refuting the statement are yielded.
    pub statement: Option<Statement>,
    pub limits: Limits,
}

impl SearchSpec {
    pub fn new(size: usize, class: AlgebraClass) -> Self {
        Self {
            size,
            class,
            statement: None,
            limits: Limits::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("size must be at least 1")]
    ZeroSize,
    #[error("size {0} is too large for exhaustive search")]
    TooLarge(usize),
    #[error("budgets must be positive")]
    ZeroBudget,
    #[error(transparent)]
    Axiom(#[from] AxiomError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Largest carrier the search accepts.
pub const MAX_SEARCH_SIZE: usize = 9;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub leaves: u64,
    /// Leaves passing the class check but isomorphic to an earlier one.
    pub duplicates: u64,
}

/// Canonical representatives in increasing [`CanonicalKey`] order.
#[derive(Clone, Debug)]
pub struct ModelStream {
    pub size: usize,
    pub class: AlgebraClass,
    pub models: Vec<(CanonicalKey, FiniteAlgebra)>,
    /// False when a budget ran out; `models` is then a partial result.
    pub complete: bool,
    pub stats: SearchStats,
}

impl ModelStream {
    pub fn len(&self) -> usize {
        self.models.len()
    }

    pub fn is_empty(&self) -> bool {
        self.models.is_empty()
    }

    pub fn algebras(&self) -> impl Iterator<Item = &FiniteAlgebra> {
        self.models.iter().map(|(_, a)| a)
    }
}

impl IntoIterator for ModelStream {
    type Item = (CanonicalKey, FiniteAlgebra);
    type IntoIter = std::vec::IntoIter<(CanonicalKey, FiniteAlgebra)>;

    fn into_iter(self) -> Self::IntoIter {
        self.models.into_iter()
    }
}

fn validate(spec: &SearchSpec) -> Result<(), SearchError> {
    if spec.size == 0 {
        return Err(SearchError::ZeroSize);
    }
    if spec.size > MAX_SEARCH_SIZE {
        return Err(SearchError::TooLarge(spec.size));
    }
    if spec.limits.nodes == Some(0) || spec.limits.time == Some(Duration::ZERO) {
        return Err(SearchError::ZeroBudget);
    }
    Ok(())
}

/// One representative per isomorphism class of bounded algebras of the given
/// size passing the class check (and refuting the statement, when given).
pub fn enumerate_models(spec: &SearchSpec) -> Result<ModelStream, SearchError> {
    validate(spec)?;
    let out = engine::run(spec.size, spec.class, &spec.limits, spec.limits.time_for(spec.size))?;
    let mut models = out.models;
    if let Some(s) = &spec.statement {
        let mut kept = Vec::new();
        for (k, a) in models {
            if !holds(&a, s, &Subset::full(a.size()))?.holds() {
                kept.push((k, a));
            }
        }
        models = kept;
    }
    Ok(ModelStream {
        size: spec.size,
        class: spec.class,
        models,
        complete: out.complete,
        stats: out.stats,
    })
}

#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum Countermodel {
    /// Smallest size first, then least canonical key.
    Found {
        algebra: FiniteAlgebra,
        key: CanonicalKey,
        witness: Vec<(String, usize)>,
    },
    /// Every model of every size up to `max_size` satisfies the statement.
    HoldsUpTo { max_size: usize },
    /// A budget ran out at `size`; smaller sizes were exhausted.
    Exhausted { size: usize },
}

pub fn find_countermodel(
    statement: &Statement,
    class: AlgebraClass,
    max_size: usize,
    limits: &Limits,
) -> Result<Countermodel, SearchError> {
    for n in 1..=max_size {
        let spec = SearchSpec {
            size: n,
            class,
            statement: None,
            limits: limits.clone(),
        };
        let stream = enumerate_models(&spec)?;
        // a partial size cannot certify the canonically-first countermodel
        if !stream.complete {
            return Ok(Countermodel::Exhausted { size: n });
        }
        for (key, alg) in &stream.models {
            if let Verdict::Refuted(witness) = holds(alg, statement, &Subset::full(n))? {
                return Ok(Countermodel::Found {
                    algebra: alg.clone(),
                    key: key.clone(),
                    witness,
                });
            }
        }
    }
    Ok(Countermodel::HoldsUpTo { max_size })
}
