use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum BinOp {
    /// `->`
    Imp,
    /// `&`, the meet-like `x ⊓ y`
    Meet,
    /// `|`, the join-like `x ⊔ y`
    Join,
    /// `.`, the product `x ⊙ y`
    Prod,
    /// `&&`, `x ⊓_L y`
    MeetL,
    /// `||`, `x ⊔_L y`
    JoinL,
    /// `(+)`, `x ⊕ y`
    OPlus,
    /// `&s`, `x ⊓_S y`
    SMeet,
    /// `|s`, `x ⊔_S y`
    SJoin,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Imp => "->",
            BinOp::Meet => "&",
            BinOp::Join => "|",
            BinOp::Prod => ".",
            BinOp::MeetL => "&&",
            BinOp::JoinL => "||",
            BinOp::OPlus => "(+)",
            BinOp::SMeet => "&s",
            BinOp::SJoin => "|s",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Term {
    Var(String),
    Zero,
    One,
    Star(Box<Term>),
    Bin(BinOp, Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn star(t: Term) -> Term {
        Term::Star(Box::new(t))
    }

    pub fn bin(op: BinOp, l: Term, r: Term) -> Term {
        Term::Bin(op, Box::new(l), Box::new(r))
    }

    pub fn imp(l: Term, r: Term) -> Term {
        Term::bin(BinOp::Imp, l, r)
    }

    pub fn meet(l: Term, r: Term) -> Term {
        Term::bin(BinOp::Meet, l, r)
    }

    pub fn collect_vars<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Term::Var(v) => {
                out.insert(v);
            }
            Term::Zero | Term::One => {}
            Term::Star(t) => t.collect_vars(out),
            Term::Bin(_, l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    fn is_atomic(&self) -> bool {
        matches!(self, Term::Var(_) | Term::Zero | Term::One | Term::Star(_))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Zero => f.write_str("0"),
            Term::One => f.write_str("1"),
            Term::Star(t) if t.is_atomic() => write!(f, "{t}'"),
            Term::Star(t) => write!(f, "({t})'"),
            Term::Bin(BinOp::Imp, l, r) => {
                if matches!(**l, Term::Bin(BinOp::Imp, ..)) {
                    write!(f, "({l}) -> {r}")
                } else {
                    write!(f, "{l} -> {r}")
                }
            }
            Term::Bin(op, l, r) => {
                let side = |t: &Term| {
                    if t.is_atomic() {
                        t.to_string()
                    } else {
                        format!("({t})")
                    }
                };
                write!(f, "{} {} {}", side(l), op.symbol(), side(r))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Atom {
    Eq(Term, Term),
    /// `s <= t`, sugar for `s -> t = 1`
    Leq(Term, Term),
    /// `s <=Q t`, sugar for `s = s & t`
    LeqQ(Term, Term),
}

impl Atom {
    /// The equation this atom stands for.
    pub fn desugar(&self) -> (Term, Term) {
        match self {
            Atom::Eq(s, t) => (s.clone(), t.clone()),
            Atom::Leq(s, t) => (Term::imp(s.clone(), t.clone()), Term::One),
            Atom::LeqQ(s, t) => (s.clone(), Term::meet(s.clone(), t.clone())),
        }
    }

    fn sides(&self) -> (&Term, &Term) {
        match self {
            Atom::Eq(s, t) | Atom::Leq(s, t) | Atom::LeqQ(s, t) => (s, t),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = match self {
            Atom::Eq(..) => "=",
            Atom::Leq(..) => "<=",
            Atom::LeqQ(..) => "<=Q",
        };
        let (s, t) = self.sides();
        write!(f, "{s} {rel} {t}")
    }
}

/// `h1, ..., hk |- c`: an identity when there are no hypotheses.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Statement {
    pub hypotheses: Vec<Atom>,
    pub conclusion: Atom,
}

impl Statement {
    pub fn identity(conclusion: Atom) -> Self {
        Self {
            hypotheses: Vec::new(),
            conclusion,
        }
    }

    /// Variables in sorted order; assignments are scanned in this order.
    pub fn variables(&self) -> Vec<String> {
        let mut vars = BTreeSet::new();
        for atom in self.hypotheses.iter().chain(Some(&self.conclusion)) {
            let (s, t) = atom.sides();
            s.collect_vars(&mut vars);
            t.collect_vars(&mut vars);
        }
        vars.into_iter().map(str::to_string).collect()
    }

    /// Same statement with every atom desugared to an equation.
    pub fn desugared(&self) -> Statement {
        let eq = |a: &Atom| {
            let (s, t) = a.desugar();
            Atom::Eq(s, t)
        };
        Statement {
            hypotheses: self.hypotheses.iter().map(eq).collect(),
            conclusion: eq(&self.conclusion),
        }
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.hypotheses.is_empty() {
            let hyps: Vec<String> = self.hypotheses.iter().map(|h| h.to_string()).collect();
            write!(f, "{} |- ", hyps.join(", "))?;
        }
        write!(f, "{}", self.conclusion)
    }
}
