use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use super::ast::{Atom, BinOp, Statement, Term};
use crate::algebra::{Elem, FiniteAlgebra, Subset};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("variable `{0}` is unbound")]
    UnboundVariable(String),
    #[error("element index {index} is outside a carrier of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("scope has universe {found}, algebra has size {expected}")]
    ScopeSize { expected: usize, found: usize },
}

/// Evaluates `t` directly from the implication table.
pub fn eval_term(
    alg: &FiniteAlgebra,
    t: &Term,
    env: &HashMap<String, Elem>,
) -> Result<Elem, EvalError> {
    Ok(match t {
        Term::Var(v) => {
            let x = *env
                .get(v)
                .ok_or_else(|| EvalError::UnboundVariable(v.clone()))?;
            if x >= alg.size() {
                return Err(EvalError::IndexOutOfRange {
                    index: x,
                    size: alg.size(),
                });
            }
            x
        }
        Term::Zero => alg.zero(),
        Term::One => alg.one(),
        Term::Star(s) => alg.star(eval_term(alg, s, env)?),
        Term::Bin(op, l, r) => {
            let (x, y) = (eval_term(alg, l, env)?, eval_term(alg, r, env)?);
            match op {
                BinOp::Imp => alg.imp(x, y),
                BinOp::Meet => alg.inf(x, y),
                BinOp::Join => alg.sup(x, y),
                BinOp::Prod => alg.prod(x, y),
                BinOp::MeetL => alg.inf_l(x, y),
                BinOp::JoinL => alg.sup_l(x, y),
                BinOp::OPlus => alg.oplus(x, y),
                BinOp::SMeet => alg.s_inf(x, y),
                BinOp::SJoin => alg.s_sup(x, y),
            }
        }
    })
}

#[derive(Clone, Copy, Debug)]
enum Node {
    Var(usize),
    Const(Elem),
    Star(usize),
    Bin(BinOp, usize, usize),
}

/// A term flattened into post-order over variable slots; children precede parents.
#[derive(Clone, Debug)]
struct Compiled {
    nodes: Vec<Node>,
}

impl Compiled {
    fn new(alg: &FiniteAlgebra, t: &Term, vars: &[String]) -> Result<Self, EvalError> {
        let mut nodes = Vec::new();
        Self::push(alg, t, vars, &mut nodes)?;
        Ok(Self { nodes })
    }

    fn push(
        alg: &FiniteAlgebra,
        t: &Term,
        vars: &[String],
        nodes: &mut Vec<Node>,
    ) -> Result<usize, EvalError> {
        let node = match t {
            Term::Var(v) => Node::Var(
                vars.iter()
                    .position(|w| w == v)
                    .ok_or_else(|| EvalError::UnboundVariable(v.clone()))?,
            ),
            Term::Zero => Node::Const(alg.zero()),
            Term::One => Node::Const(alg.one()),
            Term::Star(s) => Node::Star(Self::push(alg, s, vars, nodes)?),
            Term::Bin(op, l, r) => {
                let l = Self::push(alg, l, vars, nodes)?;
                let r = Self::push(alg, r, vars, nodes)?;
                Node::Bin(*op, l, r)
            }
        };
        nodes.push(node);
        Ok(nodes.len() - 1)
    }

    fn eval(&self, ev: &Tables<'_>, slots: &[Elem], scratch: &mut Vec<Elem>) -> Elem {
        scratch.clear();
        for node in &self.nodes {
            let v = match *node {
                Node::Var(i) => slots[i],
                Node::Const(c) => c,
                Node::Star(i) => ev.star[scratch[i]],
                Node::Bin(op, l, r) => ev.apply(op, scratch[l], scratch[r]),
            };
            scratch.push(v);
        }
        *scratch.last().expect("non-empty term")
    }
}

struct Tables<'a> {
    n: usize,
    imp: &'a [Elem],
    star: Vec<Elem>,
    d: &'a crate::algebra::DerivedTables,
    s_inf: Vec<Elem>,
    s_sup: Vec<Elem>,
}

impl<'a> Tables<'a> {
    fn new(alg: &'a FiniteAlgebra, needs_s: bool) -> Self {
        let n = alg.size();
        let star: Vec<Elem> = alg.elements().map(|x| alg.star(x)).collect();
        let (s_inf, s_sup) = if needs_s {
            let pairs = || alg.elements().flat_map(|x| alg.elements().map(move |y| (x, y)));
            (
                pairs().map(|(x, y)| alg.s_inf(x, y)).collect(),
                pairs().map(|(x, y)| alg.s_sup(x, y)).collect(),
            )
        } else {
            (Vec::new(), Vec::new())
        };
        Self {
            n,
            imp: alg.imp_table(),
            star,
            d: alg.derived(),
            s_inf,
            s_sup,
        }
    }

    fn apply(&self, op: BinOp, x: Elem, y: Elem) -> Elem {
        let i = x * self.n + y;
        match op {
            BinOp::Imp => self.imp[i],
            BinOp::Meet => self.d.inf(x, y),
            BinOp::Join => self.d.sup(x, y),
            BinOp::Prod => self.d.prod(x, y),
            BinOp::MeetL => self.d.inf_l(x, y),
            BinOp::JoinL => self.d.sup_l(x, y),
            BinOp::OPlus => self.d.oplus(x, y),
            BinOp::SMeet => self.s_inf[i],
            BinOp::SJoin => self.s_sup[i],
        }
    }
}

fn uses_s_ops(t: &Term) -> bool {
    match t {
        Term::Var(_) | Term::Zero | Term::One => false,
        Term::Star(s) => uses_s_ops(s),
        Term::Bin(op, l, r) => {
            matches!(op, BinOp::SMeet | BinOp::SJoin) || uses_s_ops(l) || uses_s_ops(r)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Holds,
    /// First failing assignment, variables in sorted order.
    Refuted(Vec<(String, Elem)>),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&[(String, Elem)]> {
        match self {
            Verdict::Holds => None,
            Verdict::Refuted(w) => Some(w),
        }
    }
}

/// Renders an assignment as `x=a y=b`.
pub fn format_assignment(alg: &FiniteAlgebra, assignment: &[(String, Elem)]) -> String {
    assignment
        .iter()
        .map(|(v, x)| format!("{v}={}", alg.name(*x)))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Scans every assignment of the statement's variables into `scope`.
/// A statement fails at an assignment satisfying all hypotheses but not the
/// conclusion; the first such assignment in lexicographic order is returned.
pub fn holds(alg: &FiniteAlgebra, s: &Statement, scope: &Subset) -> Result<Verdict, EvalError> {
    if scope.universe() != alg.size() {
        return Err(EvalError::ScopeSize {
            expected: alg.size(),
            found: scope.universe(),
        });
    }
    let vars = s.variables();
    let s = s.desugared();
    let pair = |a: &Atom| -> Result<(Compiled, Compiled), EvalError> {
        let Atom::Eq(l, r) = a else { unreachable!("desugared") };
        Ok((Compiled::new(alg, l, &vars)?, Compiled::new(alg, r, &vars)?))
    };
    let hyps = s.hypotheses.iter().map(pair).collect::<Result<Vec<_>, _>>()?;
    let concl = pair(&s.conclusion)?;
    let needs_s = s
        .hypotheses
        .iter()
        .chain(Some(&s.conclusion))
        .any(|a| matches!(a, Atom::Eq(l, r) if uses_s_ops(l) || uses_s_ops(r)));
    let tables = Tables::new(alg, needs_s);
    let domain = scope.to_vec();
    let k = vars.len();

    let fails = |slots: &[Elem], scratch: &mut Vec<Elem>| {
        let sat = |(l, r): &(Compiled, Compiled), scratch: &mut Vec<Elem>| {
            l.eval(&tables, slots, scratch) == r.eval(&tables, slots, scratch)
        };
        hyps.iter().all(|h| sat(h, scratch)) && !sat(&concl, scratch)
    };

    let witness = if k == 0 {
        let mut scratch = Vec::new();
        fails(&[], &mut scratch).then(Vec::new)
    } else {
        // stripes on the first variable; find_map_first keeps the scan order
        domain.par_iter().find_map_first(|&first| {
            let mut scratch = Vec::new();
            let mut idx = vec![0usize; k];
            let mut slots = vec![first; k];
            loop {
                for i in 1..k {
                    slots[i] = domain[idx[i]];
                }
                if fails(&slots, &mut scratch) {
                    return Some(slots);
                }
                let mut i = k;
                loop {
                    i -= 1;
                    if i == 0 {
                        return None;
                    }
                    idx[i] += 1;
                    if idx[i] < domain.len() {
                        break;
                    }
                    idx[i] = 0;
                }
            }
        })
    };
    Ok(match witness {
        None => Verdict::Holds,
        Some(slots) => Verdict::Refuted(vars.into_iter().zip(slots).collect()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::term::parser::{parse_statement, parse_term};
    use proptest::prelude::*;

    fn env(alg: &FiniteAlgebra, pairs: &[(&str, &str)]) -> HashMap<String, Elem> {
        pairs
            .iter()
            .map(|(v, x)| (v.to_string(), alg.element(x).unwrap()))
            .collect()
    }

    fn named(alg: &FiniteAlgebra, v: &Verdict) -> Option<String> {
        v.witness().map(|w| format_assignment(alg, w))
    }

    #[test]
    fn eval_examples() {
        let a = builtin::example_5_13();
        let e = env(&a, &[("x", "a"), ("y", "b")]);
        let ev = |s: &str| a.name(eval_term(&a, &parse_term(s).unwrap(), &e).unwrap()).to_string();
        assert_eq!(ev("x -> y"), "1");
        assert_eq!(ev("1 -> x"), "a");
        assert_eq!(ev("(x' -> y') -> y'"), "d");
        assert_eq!(ev("x & y"), "b");
    }

    #[test]
    fn unbound_variable() {
        let a = builtin::boolean2();
        let r = eval_term(&a, &parse_term("x -> z").unwrap(), &env(&a, &[("x", "0")]));
        assert_eq!(r, Err(EvalError::UnboundVariable("z".into())));
        let mut e = HashMap::new();
        e.insert("x".to_string(), 7);
        assert!(matches!(
            eval_term(&a, &Term::var("x"), &e),
            Err(EvalError::IndexOutOfRange { index: 7, size: 2 })
        ));
    }

    #[test]
    fn holds_examples() {
        let a = builtin::example_5_13();
        let full = Subset::full(a.size());
        let v = holds(&a, &parse_statement("x & y = y & x").unwrap(), &full).unwrap();
        assert_eq!(named(&a, &v).as_deref(), Some("x=a y=b"));
        let v = holds(&a, &parse_statement("x || x' = 1").unwrap(), &full).unwrap();
        assert!(v.holds());
        let qw = "x -> ((x & y) & (z & x)) = (x -> y) & (x -> z)";
        assert!(holds(&a, &parse_statement(qw).unwrap(), &full).unwrap().holds());
    }

    #[test]
    fn quasi_identity_semantics() {
        let a = builtin::example_5_13();
        let full = Subset::full(a.size());
        // commuting pairs only: the hypothesis filters (a,b)
        let s = parse_statement("x & y = y & x |- x | y = y | x").unwrap();
        assert!(holds(&a, &s, &full).unwrap().holds());
        let s = parse_statement("x = 1 |- x = 0").unwrap();
        assert_eq!(named(&a, &holds(&a, &s, &full).unwrap()).as_deref(), Some("x=1"));
    }

    #[test]
    fn closed_statements() {
        let a = builtin::boolean2();
        let full = Subset::full(2);
        assert!(holds(&a, &parse_statement("0' = 1").unwrap(), &full).unwrap().holds());
        assert_eq!(
            holds(&a, &parse_statement("0 = 1").unwrap(), &full).unwrap(),
            Verdict::Refuted(vec![])
        );
    }

    #[test]
    fn scope_must_match() {
        let a = builtin::boolean2();
        let s = parse_statement("x = x").unwrap();
        assert!(matches!(
            holds(&a, &s, &Subset::full(3)),
            Err(EvalError::ScopeSize { .. })
        ));
    }

    #[test]
    fn witness_is_lexicographically_first() {
        let a = builtin::lukasiewicz(4).unwrap();
        let full = Subset::full(a.size());
        let s = parse_statement("x -> y = y -> x").unwrap();
        let v = holds(&a, &s, &full).unwrap();
        assert_eq!(v, Verdict::Refuted(vec![("x".into(), 0), ("y".into(), 1)]));
    }

    fn statements() -> Vec<&'static str> {
        vec![
            "x & y = y & x",
            "x <= y |- y' <= x'",
            "x <=Q y |- x . z <= y . z",
            "x -> (y -> z) = y -> (x -> z)",
            "x || x' = 1",
            "x &s y = x && y",
            "(x | y) | z = x | (y | z)",
        ]
    }

    proptest! {
        #[test]
        fn compiled_matches_direct(
            which in 0usize..7,
            alg_ix in 0usize..3,
            x in 0usize..6, y in 0usize..6, z in 0usize..6,
        ) {
            let a = [builtin::example_5_13(), builtin::lukasiewicz(5).unwrap(), builtin::boolean2()]
                .into_iter().nth(alg_ix).unwrap();
            let n = a.size();
            let s = parse_statement(statements()[which]).unwrap().desugared();
            let vals = [x % n, y % n, z % n];
            let e: HashMap<String, Elem> = ["x", "y", "z"].iter().map(|v| v.to_string()).zip(vals).collect();
            let vars = vec!["x".to_string(), "y".to_string(), "z".to_string()];
            let tables = Tables::new(&a, true);
            let mut scratch = Vec::new();
            for atom in s.hypotheses.iter().chain(Some(&s.conclusion)) {
                let Atom::Eq(l, r) = atom else { unreachable!() };
                for t in [l, r] {
                    let c = Compiled::new(&a, t, &vars).unwrap();
                    prop_assert_eq!(c.eval(&tables, &vals, &mut scratch), eval_term(&a, t, &e).unwrap());
                }
            }
        }

        #[test]
        fn desugaring_is_sound(which in 0usize..7, alg_ix in 0usize..2) {
            let a = [builtin::example_5_13(), builtin::lukasiewicz(4).unwrap()].into_iter().nth(alg_ix).unwrap();
            let full = Subset::full(a.size());
            let s = parse_statement(statements()[which]).unwrap();
            prop_assert_eq!(holds(&a, &s, &full).unwrap(), holds(&a, &s.desugared(), &full).unwrap());
        }

        #[test]
        fn scope_monotonicity(which in 0usize..7, mask in 0u8..64) {
            let a = builtin::example_5_13();
            let s = parse_statement(statements()[which]).unwrap();
            if holds(&a, &s, &Subset::full(6)).unwrap().holds() {
                let sub = Subset::from_predicate(6, |x| mask & (1 << x) != 0);
                prop_assert!(holds(&a, &s, &sub).unwrap().holds());
            }
        }

        #[test]
        fn leq_atom_matches_order(x in 0usize..6, y in 0usize..6) {
            let a = builtin::example_5_13();
            let s = parse_statement("u <= v").unwrap();
            let scope = Subset::from_elems(6, [x, y]);
            let v = holds(&a, &s, &scope).unwrap();
            let all_pairs = [(x, x), (x, y), (y, x), (y, y)].iter().all(|&(p, q)| a.leq(p, q));
            prop_assert_eq!(v.holds(), all_pairs);
        }
    }
}
