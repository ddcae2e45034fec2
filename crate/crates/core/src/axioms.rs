//! Membership checks for the algebra classes built on BE algebras.
//!
//! Every check is an exhaustive scan; the reported witness is the first
//! violating assignment in lexicographic index order, taking axioms in the
//! order they are listed for the class.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::{Elem, FiniteAlgebra};
use crate::error::AxiomError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum AlgebraClass {
    BE,
    BoundedBE,
    InvolutiveBE,
    BCK,
    CommutativeBE,
    Wajsberg,
    MBE,
    SAlgebra,
    QmvOplus,
    Pqmv,
    QW,
    QuasiLinear,
    /// Quasi-linearity with the strict order read as `<_Q`.
    QuasiLinearQ,
}

impl AlgebraClass {
    pub const ALL: [AlgebraClass; 13] = [
        AlgebraClass::BE,
        AlgebraClass::BoundedBE,
        AlgebraClass::InvolutiveBE,
        AlgebraClass::BCK,
        AlgebraClass::CommutativeBE,
        AlgebraClass::Wajsberg,
        AlgebraClass::MBE,
        AlgebraClass::SAlgebra,
        AlgebraClass::QmvOplus,
        AlgebraClass::Pqmv,
        AlgebraClass::QW,
        AlgebraClass::QuasiLinear,
        AlgebraClass::QuasiLinearQ,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlgebraClass::BE => "BE",
            AlgebraClass::BoundedBE => "BoundedBE",
            AlgebraClass::InvolutiveBE => "InvolutiveBE",
            AlgebraClass::BCK => "BCK",
            AlgebraClass::CommutativeBE => "CommutativeBE",
            AlgebraClass::Wajsberg => "Wajsberg",
            AlgebraClass::MBE => "mBE",
            AlgebraClass::SAlgebra => "SAlgebra",
            AlgebraClass::QmvOplus => "QMV_oplus",
            AlgebraClass::Pqmv => "Pqmv",
            AlgebraClass::QW => "QW",
            AlgebraClass::QuasiLinear => "QuasiLinear",
            AlgebraClass::QuasiLinearQ => "QuasiLinear_Q",
        }
    }

    /// Whether every member of the class has `x** = x` by definition.
    pub fn requires_involution(self) -> bool {
        !matches!(
            self,
            AlgebraClass::BE | AlgebraClass::BoundedBE | AlgebraClass::BCK
        )
    }
}

impl fmt::Display for AlgebraClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgebraClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key: String = s
            .chars()
            .filter(|c| !matches!(c, '-' | '_' | ' '))
            .flat_map(char::to_lowercase)
            .collect();
        Ok(match key.as_str() {
            "be" => AlgebraClass::BE,
            "boundedbe" | "bounded" => AlgebraClass::BoundedBE,
            "involutivebe" | "involutive" => AlgebraClass::InvolutiveBE,
            "bck" => AlgebraClass::BCK,
            "commutativebe" | "commutative" => AlgebraClass::CommutativeBE,
            "wajsberg" | "mv" => AlgebraClass::Wajsberg,
            "mbe" => AlgebraClass::MBE,
            "salgebra" | "s" => AlgebraClass::SAlgebra,
            "qmvoplus" | "qmv" => AlgebraClass::QmvOplus,
            "pqmv" => AlgebraClass::Pqmv,
            "qw" => AlgebraClass::QW,
            "quasilinear" => AlgebraClass::QuasiLinear,
            "quasilinearq" => AlgebraClass::QuasiLinearQ,
            _ => return Err(format!("unknown algebra class `{s}`")),
        })
    }
}

/// Axiom labels, grouped by the class that introduces them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Axiom {
    BE1,
    BE2,
    BE3,
    BE4,
    Bound,
    Inv,
    BCK1,
    BCK4,
    Comm,
    W1,
    W2,
    W3,
    W4,
    PU,
    PComm,
    PAss,
    ML,
    MRe,
    S1,
    S2,
    S3,
    S4,
    S5,
    S6,
    S7,
    Qmv,
    Pqmv,
    QW,
    QW1,
    QW2,
    QuasiLinear,
    QuasiLinearQ,
}

impl Axiom {
    pub fn tag(self) -> &'static str {
        use Axiom::*;
        match self {
            BE1 => "BE1",
            BE2 => "BE2",
            BE3 => "BE3",
            BE4 => "BE4",
            Bound => "BOUND",
            Inv => "INV",
            BCK1 => "BCK1",
            BCK4 => "BCK4",
            Comm => "COMM",
            W1 => "W1",
            W2 => "W2",
            W3 => "W3",
            W4 => "W4",
            PU => "PU",
            PComm => "Pcomm",
            PAss => "Pass",
            ML => "m-L",
            MRe => "m-Re",
            S1 => "S1",
            S2 => "S2",
            S3 => "S3",
            S4 => "S4",
            S5 => "S5",
            S6 => "S6",
            S7 => "S7",
            Qmv => "QMV",
            Pqmv => "Pqmv",
            QW => "QW",
            QW1 => "QW1",
            QW2 => "QW2",
            QuasiLinear => "QL",
            QuasiLinearQ => "QL_Q",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Axiom> {
        ALL_AXIOMS.iter().copied().find(|a| a.tag() == tag)
    }

    /// Number of universally quantified variables.
    pub fn arity(self) -> usize {
        use Axiom::*;
        match self {
            BE1 | BE2 | BE3 | Bound | Inv | W1 | PU | ML | MRe | S3 | S4 | S5 | S6 | S7 => 1,
            BCK4 | Comm | W3 | W4 | PComm | S1 | QW1 | QuasiLinear | QuasiLinearQ => 2,
            BE4 | BCK1 | W2 | PAss | S2 | Qmv | Pqmv | QW | QW2 => 3,
        }
    }
}

const ALL_AXIOMS: [Axiom; 32] = {
    use Axiom::*;
    [
        BE1, BE2, BE3, BE4, Bound, Inv, BCK1, BCK4, Comm, W1, W2, W3, W4, PU, PComm, PAss, ML,
        MRe, S1, S2, S3, S4, S5, S6, S7, Qmv, Pqmv, QW, QW1, QW2, QuasiLinear, QuasiLinearQ,
    ]
};

pub const VARIABLES: [&str; 3] = ["x", "y", "z"];

/// A violating assignment of the variables `x, y, z` (as many as the axiom
/// uses) together with the violated axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub axiom: String,
    pub assignment: Vec<(String, Elem)>,
}

impl Witness {
    pub fn new(axiom: impl Into<String>, assignment: Vec<(String, Elem)>) -> Self {
        Self {
            axiom: axiom.into(),
            assignment,
        }
    }

    fn from_axiom(axiom: Axiom, values: &[Elem]) -> Self {
        Self::new(
            axiom.tag(),
            VARIABLES
                .iter()
                .zip(values)
                .map(|(v, &e)| (v.to_string(), e))
                .collect(),
        )
    }

    pub fn values(&self) -> Vec<Elem> {
        self.assignment.iter().map(|&(_, e)| e).collect()
    }

    /// `x=a y=b` using display names.
    pub fn format_assignment(&self, alg: &FiniteAlgebra) -> String {
        self.assignment
            .iter()
            .map(|(v, e)| format!("{v}={}", alg.name(*e)))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn render(&self, alg: &FiniteAlgebra) -> String {
        let vars = self.format_assignment(alg);
        if vars.is_empty() {
            format!("axiom={}", self.axiom)
        } else {
            format!("{vars} axiom={}", self.axiom)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub class: AlgebraClass,
    pub pass: bool,
    pub witness: Option<Witness>,
    /// Set when the failure was inherited from a containing class.
    pub via: Option<AlgebraClass>,
}

impl ClassReport {
    fn pass(class: AlgebraClass) -> Self {
        Self {
            class,
            pass: true,
            witness: None,
            via: None,
        }
    }

    fn fail(class: AlgebraClass, witness: Witness) -> Self {
        Self {
            class,
            pass: false,
            witness: Some(witness),
            via: None,
        }
    }

    /// Failure inherited from a report on a containing class.
    fn inherit(class: AlgebraClass, from: &ClassReport) -> Self {
        debug_assert!(!from.pass);
        Self {
            class,
            pass: false,
            witness: from.witness.clone(),
            via: Some(from.via.unwrap_or(from.class)),
        }
    }

    /// `CLASS <name> PASS` or `CLASS <name> FAIL witness x=.. axiom=..`.
    pub fn render(&self, alg: &FiniteAlgebra) -> String {
        match (&self.witness, self.pass) {
            (None, _) | (_, true) => format!("CLASS {} PASS", self.class),
            (Some(w), false) => format!("CLASS {} FAIL witness {}", self.class, w.render(alg)),
        }
    }
}

/// The tables an axiom may read. Normally all come from one algebra; the
/// m-BE and S-algebra checks swap in a caller-supplied `prod` or `oplus`.
pub struct Ops<'a> {
    n: usize,
    one: Elem,
    zero: Elem,
    alg: &'a FiniteAlgebra,
    prod: &'a [Elem],
    oplus: &'a [Elem],
}

impl<'a> Ops<'a> {
    pub fn of(alg: &'a FiniteAlgebra) -> Self {
        let d = alg.derived();
        Self {
            n: alg.size(),
            one: alg.one(),
            zero: alg.zero(),
            alg,
            prod: &d.prod,
            oplus: &d.oplus,
        }
    }

    fn with_prod(mut self, prod: &'a [Elem]) -> Self {
        self.prod = prod;
        self
    }

    fn with_oplus(mut self, oplus: &'a [Elem]) -> Self {
        self.oplus = oplus;
        self
    }

    #[inline]
    fn imp(&self, x: Elem, y: Elem) -> Elem {
        self.alg.imp(x, y)
    }
    #[inline]
    fn star(&self, x: Elem) -> Elem {
        self.alg.star(x)
    }
    #[inline]
    fn inf(&self, x: Elem, y: Elem) -> Elem {
        self.alg.derived().inf(x, y)
    }
    #[inline]
    fn prod(&self, x: Elem, y: Elem) -> Elem {
        self.prod[x * self.n + y]
    }
    #[inline]
    fn oplus(&self, x: Elem, y: Elem) -> Elem {
        self.oplus[x * self.n + y]
    }

    /// `x -> y` recovered from the product: `(x ⊙ y*)*`.
    fn imp_from_prod(&self, x: Elem, y: Elem) -> Elem {
        self.star(self.prod(x, self.star(y)))
    }
    /// `(x -> y) -> y` with the product-recovered implication.
    fn sup_from_prod(&self, x: Elem, y: Elem) -> Elem {
        self.imp_from_prod(self.imp_from_prod(x, y), y)
    }
    /// `x ⊙ y = (x* ⊕ y*)*` in the S-signature.
    fn prod_from_oplus(&self, x: Elem, y: Elem) -> Elem {
        self.star(self.oplus(self.star(x), self.star(y)))
    }
    /// `x ⊓_S y = (x ⊕ y*) ⊙ y` in the S-signature.
    fn s_inf(&self, x: Elem, y: Elem) -> Elem {
        self.prod_from_oplus(self.oplus(x, self.star(y)), y)
    }

    /// Whether `axiom` holds at the given assignment.
    pub fn holds_at(&self, axiom: Axiom, v: &[Elem]) -> bool {
        use Axiom::*;
        let (one, zero) = (self.one, self.zero);
        let x = v[0];
        let y = v.get(1).copied().unwrap_or(0);
        let z = v.get(2).copied().unwrap_or(0);
        match axiom {
            BE1 => self.imp(x, x) == one,
            BE2 => self.imp(x, one) == one,
            BE3 | W1 => self.imp(one, x) == x,
            BE4 => self.imp(x, self.imp(y, z)) == self.imp(y, self.imp(x, z)),
            Bound => self.imp(zero, x) == one,
            Inv => self.star(self.star(x)) == x,
            BCK1 => self.imp(self.imp(x, y), self.imp(self.imp(y, z), self.imp(x, z))) == one,
            BCK4 => !(self.imp(x, y) == one && self.imp(y, x) == one) || x == y,
            Comm | W3 => self.imp(self.imp(x, y), y) == self.imp(self.imp(y, x), x),
            // (W2) is stated as (y -> z) -> ((z -> x) -> (y -> x)) = 1; with
            // variables renamed to scan order x, y, z.
            W2 => self.imp(self.imp(x, y), self.imp(self.imp(y, z), self.imp(x, z))) == one,
            W4 => self.imp(self.imp(self.star(x), self.star(y)), self.imp(y, x)) == one,
            PU => self.prod(one, x) == x && self.prod(x, one) == x,
            PComm => self.prod(x, y) == self.prod(y, x),
            PAss => self.prod(x, self.prod(y, z)) == self.prod(self.prod(x, y), z),
            ML => self.prod(x, self.star(one)) == self.star(one),
            MRe => self.prod(x, self.star(x)) == self.star(one),
            S1 => self.oplus(x, y) == self.oplus(y, x),
            S2 => self.oplus(x, self.oplus(y, z)) == self.oplus(self.oplus(x, y), z),
            S3 => self.oplus(x, self.star(x)) == one,
            S4 => self.oplus(x, zero) == x,
            S5 => self.star(self.star(x)) == x,
            S6 => self.star(zero) == one,
            S7 => self.oplus(x, one) == one,
            Qmv => {
                let xs = self.star(x);
                let lhs = self.oplus(x, self.s_inf(self.s_inf(xs, y), self.s_inf(z, xs)));
                let rhs = self.s_inf(self.oplus(x, y), self.oplus(x, z));
                lhs == rhs
            }
            Pqmv => {
                let xs = self.star(x);
                let inner = self.sup_from_prod(self.sup_from_prod(xs, y), self.sup_from_prod(z, xs));
                let lhs = self.prod(x, inner);
                let rhs = self.sup_from_prod(self.prod(x, y), self.prod(x, z));
                lhs == rhs
            }
            QW => {
                let lhs = self.imp(x, self.inf(self.inf(x, y), self.inf(z, x)));
                lhs == self.inf(self.imp(x, y), self.imp(x, z))
            }
            QW1 => self.imp(x, self.inf(x, y)) == self.imp(x, y),
            QW2 => {
                let lhs = self.imp(x, self.inf(y, self.inf(z, x)));
                lhs == self.inf(self.imp(x, y), self.imp(x, z))
            }
            QuasiLinear => self.alg.leq_q(x, y) || (self.imp(y, x) == one && y != x),
            QuasiLinearQ => self.alg.leq_q(x, y) || (self.alg.leq_q(y, x) && y != x),
        }
    }

    /// First violating assignment of `axiom`, in lexicographic order.
    pub fn first_violation(&self, axiom: Axiom) -> Option<Vec<Elem>> {
        let k = axiom.arity();
        let mut v = vec![0; k];
        if self.n == 0 {
            return None;
        }
        loop {
            if !self.holds_at(axiom, &v) {
                return Some(v);
            }
            // odometer, last variable fastest
            let mut i = k;
            loop {
                if i == 0 {
                    return None;
                }
                i -= 1;
                v[i] += 1;
                if v[i] < self.n {
                    break;
                }
                v[i] = 0;
            }
        }
    }

    fn check(&self, class: AlgebraClass, axioms: &[Axiom]) -> ClassReport {
        for &ax in axioms {
            if let Some(v) = self.first_violation(ax) {
                return ClassReport::fail(class, Witness::from_axiom(ax, &v));
            }
        }
        ClassReport::pass(class)
    }
}

pub const BE_AXIOMS: &[Axiom] = &[Axiom::BE1, Axiom::BE2, Axiom::BE3, Axiom::BE4];
pub const WAJSBERG_AXIOMS: &[Axiom] = &[Axiom::W1, Axiom::W2, Axiom::W3, Axiom::W4];
pub const M_BE_AXIOMS: &[Axiom] = &[Axiom::PU, Axiom::PComm, Axiom::PAss, Axiom::ML, Axiom::MRe];
pub const S_AXIOMS: &[Axiom] = &[
    Axiom::S1,
    Axiom::S2,
    Axiom::S3,
    Axiom::S4,
    Axiom::S5,
    Axiom::S6,
    Axiom::S7,
];

/// Whether a witness, re-evaluated on `alg`'s own tables, violates its axiom.
pub fn witness_violates(alg: &FiniteAlgebra, w: &Witness) -> bool {
    match Axiom::from_tag(&w.axiom) {
        Some(ax) => !Ops::of(alg).holds_at(ax, &w.values()),
        None => false,
    }
}

pub fn check_be(alg: &FiniteAlgebra) -> ClassReport {
    Ops::of(alg).check(AlgebraClass::BE, BE_AXIOMS)
}

pub fn check_bounded(alg: &FiniteAlgebra) -> ClassReport {
    Ops::of(alg).check(
        AlgebraClass::BoundedBE,
        &[BE_AXIOMS, &[Axiom::Bound]].concat(),
    )
}

/// Bounded BE algebra with `x** = x`.
pub fn check_involutive(alg: &FiniteAlgebra) -> ClassReport {
    Ops::of(alg).check(
        AlgebraClass::InvolutiveBE,
        &[BE_AXIOMS, &[Axiom::Bound, Axiom::Inv]].concat(),
    )
}

/// BE algebra with (BCK1) and antisymmetry.
pub fn check_bck(alg: &FiniteAlgebra) -> ClassReport {
    Ops::of(alg).check(
        AlgebraClass::BCK,
        &[BE_AXIOMS, &[Axiom::BCK1, Axiom::BCK4]].concat(),
    )
}

/// BE algebra with `(x -> y) -> y = (y -> x) -> x`.
pub fn check_commutative(alg: &FiniteAlgebra) -> ClassReport {
    Ops::of(alg).check(
        AlgebraClass::CommutativeBE,
        &[BE_AXIOMS, &[Axiom::Comm]].concat(),
    )
}

/// (W1)-(W4), with `x* = x -> 0`.
pub fn check_wajsberg(alg: &FiniteAlgebra) -> ClassReport {
    Ops::of(alg).check(AlgebraClass::Wajsberg, WAJSBERG_AXIOMS)
}

/// m-BE axioms for a product table, with `alg`'s star and `0 := 1*`.
pub fn check_m_be(alg: &FiniteAlgebra, prod: &[Elem]) -> ClassReport {
    assert_eq!(prod.len(), alg.size() * alg.size(), "product table shape");
    Ops::of(alg)
        .with_prod(prod)
        .check(AlgebraClass::MBE, M_BE_AXIOMS)
}

/// (S1)-(S7) for a sum table, with `alg`'s star and constants.
pub fn check_s_algebra(alg: &FiniteAlgebra, oplus: &[Elem]) -> ClassReport {
    assert_eq!(oplus.len(), alg.size() * alg.size(), "sum table shape");
    Ops::of(alg)
        .with_oplus(oplus)
        .check(AlgebraClass::SAlgebra, S_AXIOMS)
}

/// S-algebra on `x ⊕ y = x* -> y` satisfying (QMV).
pub fn check_qmv_oplus(alg: &FiniteAlgebra) -> ClassReport {
    Ops::of(alg).check(
        AlgebraClass::QmvOplus,
        &[S_AXIOMS, &[Axiom::Qmv]].concat(),
    )
}

/// Involutive m-BE algebra on `x ⊙ y = (x -> y*)*` satisfying (Pqmv), where
/// `⊔` is computed through the implication recovered from `⊙`.
pub fn check_pqmv(alg: &FiniteAlgebra) -> ClassReport {
    Ops::of(alg).check(
        AlgebraClass::Pqmv,
        &[M_BE_AXIOMS, &[Axiom::Inv, Axiom::Pqmv]].concat(),
    )
}

/// (QW) on an involutive BE algebra. (QW1) and (QW2) are evaluated as well
/// and must agree with (QW); a disagreement is reported as an error.
pub fn check_qw(alg: &FiniteAlgebra) -> Result<ClassReport, AxiomError> {
    let inv = check_involutive(alg);
    if !inv.pass {
        return Ok(ClassReport::inherit(AlgebraClass::QW, &inv));
    }
    let report = check_qw_axiom(alg);
    let split = check_qw_split(alg);
    if report.pass != split.pass {
        return Err(AxiomError::Inconsistent {
            class: AlgebraClass::QW.to_string(),
            detail: format!(
                "(QW) {} but (QW1)+(QW2) {}{}",
                pass_word(report.pass),
                pass_word(split.pass),
                split
                    .witness
                    .or(report.witness)
                    .map(|w| format!(" at {}", w.render(alg)))
                    .unwrap_or_default()
            ),
        });
    }
    Ok(report)
}

fn pass_word(p: bool) -> &'static str {
    if p {
        "holds"
    } else {
        "fails"
    }
}

/// (QW) alone, without the involutive-BE precondition.
pub fn check_qw_axiom(alg: &FiniteAlgebra) -> ClassReport {
    Ops::of(alg).check(AlgebraClass::QW, &[Axiom::QW])
}

/// (QW1) and (QW2), without the involutive-BE precondition.
pub fn check_qw_split(alg: &FiniteAlgebra) -> ClassReport {
    Ops::of(alg).check(AlgebraClass::QW, &[Axiom::QW1, Axiom::QW2])
}

/// How the strict order in the quasi-linearity condition is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
pub enum StrictOrder {
    /// `y < x` as `y <= x` and `y != x`.
    #[default]
    Leq,
    /// `y < x` as `y <=_Q x` and `y != x`.
    LeqQ,
}

/// For all `x, y`: `x <=_Q y` or `y < x`. Requires a QW algebra.
pub fn check_quasi_linear(
    alg: &FiniteAlgebra,
    reading: StrictOrder,
) -> Result<ClassReport, AxiomError> {
    let class = match reading {
        StrictOrder::Leq => AlgebraClass::QuasiLinear,
        StrictOrder::LeqQ => AlgebraClass::QuasiLinearQ,
    };
    let qw = check_qw(alg)?;
    if !qw.pass {
        return Ok(ClassReport::inherit(class, &qw));
    }
    let axiom = match reading {
        StrictOrder::Leq => Axiom::QuasiLinear,
        StrictOrder::LeqQ => Axiom::QuasiLinearQ,
    };
    Ok(Ops::of(alg).check(class, &[axiom]))
}

/// Runs one class check directly.
pub fn check_class(alg: &FiniteAlgebra, class: AlgebraClass) -> Result<ClassReport, AxiomError> {
    let d = alg.derived();
    Ok(match class {
        AlgebraClass::BE => check_be(alg),
        AlgebraClass::BoundedBE => check_bounded(alg),
        AlgebraClass::InvolutiveBE => check_involutive(alg),
        AlgebraClass::BCK => check_bck(alg),
        AlgebraClass::CommutativeBE => check_commutative(alg),
        AlgebraClass::Wajsberg => check_wajsberg(alg),
        AlgebraClass::MBE => check_m_be(alg, &d.prod),
        AlgebraClass::SAlgebra => check_s_algebra(alg, &d.oplus),
        AlgebraClass::QmvOplus => check_qmv_oplus(alg),
        AlgebraClass::Pqmv => check_pqmv(alg),
        AlgebraClass::QW => check_qw(alg)?,
        AlgebraClass::QuasiLinear => check_quasi_linear(alg, StrictOrder::Leq)?,
        AlgebraClass::QuasiLinearQ => check_quasi_linear(alg, StrictOrder::LeqQ)?,
    })
}

/// Runs the whole hierarchy. Unless `force` is set, classes contained in a
/// failed class inherit its failure instead of being scanned. The `<_Q`
/// reading of quasi-linearity is listed only when it differs from the `<`
/// reading.
pub fn classify(alg: &FiniteAlgebra, force: bool) -> Result<Vec<ClassReport>, AxiomError> {
    use AlgebraClass::*;
    let mut reports: Vec<ClassReport> = Vec::new();
    let failed = |reports: &[ClassReport], c: AlgebraClass| {
        reports.iter().find(|r| r.class == c && !r.pass).cloned()
    };
    // class -> containing classes whose failure it inherits
    let parents = |c: AlgebraClass| -> &'static [AlgebraClass] {
        match c {
            BoundedBE | BCK | CommutativeBE | Wajsberg => &[BE],
            InvolutiveBE => &[BoundedBE],
            QW => &[InvolutiveBE],
            QuasiLinear | QuasiLinearQ => &[QW],
            _ => &[],
        }
    };
    for class in AlgebraClass::ALL {
        let inherited = if force {
            None
        } else {
            parents(class)
                .iter()
                .find_map(|&p| failed(&reports, p))
        };
        let report = match inherited {
            Some(parent) => ClassReport::inherit(class, &parent),
            None => check_class(alg, class)?,
        };
        reports.push(report);
    }
    let ql = reports.iter().find(|r| r.class == QuasiLinear).cloned();
    let qlq = reports.iter().position(|r| r.class == QuasiLinearQ);
    if let (Some(ql), Some(i)) = (ql, qlq) {
        if reports[i].pass == ql.pass && reports[i].via.is_some() == ql.via.is_some() {
            reports.remove(i);
        }
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    fn example() -> FiniteAlgebra {
        builtin::example_5_13()
    }

    /// Example with `a -> c` replaced by 1.
    pub(crate) fn mutated_example() -> FiniteAlgebra {
        let a = example();
        let (x, y) = (a.element("a").unwrap(), a.element("c").unwrap());
        a.with_entry(x, y, a.one()).unwrap()
    }

    fn gödel3() -> FiniteAlgebra {
        // x -> y = 1 if x <= y else y
        FiniteAlgebra::from_rows(
            &["0", "a", "1"],
            &[&[2, 2, 2], &[0, 2, 2], &[0, 1, 2]],
            2,
            0,
        )
        .unwrap()
    }

    #[test]
    fn be_examples() {
        assert!(check_be(&example()).pass);
        assert!(check_be(&builtin::boolean2()).pass);
        let bad = FiniteAlgebra::from_rows(&["0", "1"], &[&[1, 1], &[1, 1]], 1, 0).unwrap();
        let r = check_be(&bad);
        assert!(!r.pass);
        let w = r.witness.unwrap();
        assert_eq!(w.axiom, "BE3");
        assert_eq!(w.assignment, vec![("x".to_string(), 0)]);
        assert_eq!(
            check_be(&bad).render(&bad),
            "CLASS BE FAIL witness x=0 axiom=BE3"
        );
    }

    #[test]
    fn involutive_examples() {
        assert!(check_involutive(&example()).pass);
        assert!(check_involutive(&builtin::lukasiewicz(3).unwrap()).pass);
        let g = gödel3();
        let r = check_involutive(&g);
        assert!(!r.pass);
        let w = r.witness.unwrap();
        assert_eq!(w.axiom, "INV");
        assert_eq!(w.values(), vec![1]);
    }

    #[test]
    fn bck_examples() {
        assert!(check_bck(&builtin::boolean2()).pass);
        // a -> b = b -> a = 1 with a != b breaks antisymmetry
        let r = check_bck(&example());
        assert!(!r.pass);
        assert!(witness_violates(&example(), r.witness.as_ref().unwrap()));
        let bad = FiniteAlgebra::from_rows(&["0", "1"], &[&[1, 1], &[1, 1]], 1, 0).unwrap();
        let r = check_bck(&bad);
        assert_eq!(r.witness.unwrap().axiom, "BE3");
    }

    #[test]
    fn commutative_examples() {
        let a = example();
        let r = check_commutative(&a);
        assert!(!r.pass);
        let w = r.witness.unwrap();
        assert_eq!(w.axiom, "COMM");
        assert_eq!(w.format_assignment(&a), "x=a y=b");
        assert!(check_commutative(&builtin::boolean2()).pass);
        for n in 1..7 {
            assert!(check_commutative(&builtin::lukasiewicz(n).unwrap()).pass);
        }
    }

    #[test]
    fn wajsberg_examples() {
        assert!(!check_wajsberg(&example()).pass);
        assert!(check_wajsberg(&builtin::boolean2()).pass);
        for n in 1..9 {
            assert!(check_wajsberg(&builtin::lukasiewicz(n).unwrap()).pass, "n={n}");
        }
    }

    #[test]
    fn qw_examples() {
        assert!(check_qw(&example()).unwrap().pass);
        assert!(check_qw(&builtin::boolean2()).unwrap().pass);
        let m = mutated_example();
        let r = check_qw(&m).unwrap();
        assert!(!r.pass);
        let w = r.witness.unwrap();
        assert!(witness_violates(&m, &w), "{w:?}");
        assert_eq!(w.assignment.len(), 3);
    }

    #[test]
    fn qw_requires_involutive() {
        let r = check_qw(&gödel3()).unwrap();
        assert!(!r.pass);
        assert_eq!(r.via, Some(AlgebraClass::InvolutiveBE));
    }

    #[test]
    fn m_be_and_s_algebra() {
        let a = example();
        assert!(check_m_be(&a, &a.derived().prod).pass);
        let b = builtin::boolean2();
        assert!(check_s_algebra(&b, &b.derived().oplus).pass);

        // 4-chain product with a⊙b = b⊙a = a: commutative, unital, not associative
        let l = builtin::lukasiewicz(4).unwrap();
        let mut prod = l.derived().prod.clone();
        prod[4 + 2] = 1;
        prod[2 * 4 + 1] = 1;
        let r = check_m_be(&l, &prod);
        assert!(!r.pass);
        let w = r.witness.unwrap();
        assert_eq!(w.axiom, "Pass");
        let v = w.values();
        let p = |x: usize, y: usize| prod[x * 4 + y];
        assert_ne!(p(v[0], p(v[1], v[2])), p(p(v[0], v[1]), v[2]));
    }

    #[test]
    fn pqmv_and_qmv() {
        for alg in [example(), builtin::boolean2()] {
            assert!(check_pqmv(&alg).pass);
            assert!(check_qmv_oplus(&alg).pass);
        }
        let m = mutated_example();
        assert!(!check_pqmv(&m).pass);
        assert!(!check_qmv_oplus(&m).pass);
    }

    #[test]
    fn quasi_linear_examples() {
        assert!(check_quasi_linear(&builtin::boolean2(), StrictOrder::Leq).unwrap().pass);
        for n in 1..8 {
            let l = builtin::lukasiewicz(n).unwrap();
            assert!(check_quasi_linear(&l, StrictOrder::Leq).unwrap().pass);
        }
        let a = example();
        let r = check_quasi_linear(&a, StrictOrder::Leq).unwrap();
        assert!(!r.pass);
        assert_eq!(r.witness.unwrap().format_assignment(&a), "x=a y=c");
        let r = check_quasi_linear(&a, StrictOrder::LeqQ).unwrap();
        assert_eq!(r.witness.unwrap().format_assignment(&a), "x=a y=b");
    }

    #[test]
    fn classify_example() {
        let a = example();
        let reports = classify(&a, false).unwrap();
        let get = |c| reports.iter().find(|r| r.class == c).unwrap().pass;
        assert!(get(AlgebraClass::InvolutiveBE));
        assert!(get(AlgebraClass::QW));
        assert!(!get(AlgebraClass::CommutativeBE));
        assert!(!get(AlgebraClass::Wajsberg));
        // both quasi-linearity readings fail, with different witnesses
        assert!(reports.iter().all(|r| r.class != AlgebraClass::QuasiLinearQ));
    }

    #[test]
    fn classify_boolean_all_pass() {
        let b = builtin::boolean2();
        for force in [false, true] {
            let reports = classify(&b, force).unwrap();
            assert!(reports.iter().all(|r| r.pass), "{reports:?}");
        }
    }

    #[test]
    fn classify_invalid_table_short_circuits() {
        let bad = FiniteAlgebra::from_rows(&["0", "1"], &[&[1, 1], &[1, 1]], 1, 0).unwrap();
        let reports = classify(&bad, false).unwrap();
        let be = &reports[0];
        assert!(!be.pass);
        for r in &reports {
            if [AlgebraClass::InvolutiveBE, AlgebraClass::QW, AlgebraClass::Wajsberg]
                .contains(&r.class)
            {
                assert!(!r.pass);
                assert_eq!(r.witness, be.witness);
            }
        }
        // forced: every failing class carries its own witness
        for r in classify(&bad, true).unwrap() {
            if let Some(w) = &r.witness {
                assert!(witness_violates(&bad, w), "{r:?}");
            }
        }
    }

    #[test]
    fn trivial_algebra_passes_everything() {
        let t = FiniteAlgebra::new(vec!["0".into()], vec![0], 0, 0).unwrap();
        assert!(classify(&t, true).unwrap().iter().all(|r| r.pass));
    }

    #[test]
    fn class_names_parse() {
        for c in AlgebraClass::ALL {
            assert_eq!(c.name().parse::<AlgebraClass>().unwrap(), c);
        }
        assert_eq!("qw".parse::<AlgebraClass>().unwrap(), AlgebraClass::QW);
        assert_eq!("be".parse::<AlgebraClass>().unwrap(), AlgebraClass::BE);
        assert_eq!("quasi-linear".parse::<AlgebraClass>().unwrap(), AlgebraClass::QuasiLinear);
        assert!("group".parse::<AlgebraClass>().is_err());
    }
}
