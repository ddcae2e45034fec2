//! The commutative center `Z(X)` and the orthomodular center `O(X)`,
//! together with executable versions of their structure theorems.

use std::fmt;

use serde::Serialize;

use crate::algebra::{Elem, FiniteAlgebra, Subset};
use crate::axioms::{Axiom, Ops, WAJSBERG_AXIOMS};
use crate::error::CenterError;

/// `x & y = y & x`.
pub fn commutes(alg: &FiniteAlgebra, x: Elem, y: Elem) -> bool {
    alg.inf(x, y) == alg.inf(y, x)
}

/// Elements commuting with every element.
pub fn wajsberg_center(alg: &FiniteAlgebra) -> Subset {
    Subset::from_predicate(alg.size(), |x| alg.elements().all(|y| commutes(alg, x, y)))
}

/// `{x | x = x' -> x}`.
pub fn oml_center(alg: &FiniteAlgebra) -> Subset {
    Subset::from_predicate(alg.size(), |x| alg.imp(alg.star(x), x) == x)
}

/// Alternative descriptions of `O(X)`; on a QW algebra all of them agree
/// with [`oml_center`].
pub fn oml_center_characterizations(alg: &FiniteAlgebra) -> Vec<(&'static str, Subset)> {
    let n = alg.size();
    vec![
        ("x' -> x = x", oml_center(alg)),
        ("x || x = x", Subset::from_predicate(n, |x| alg.sup_l(x, x) == x)),
        ("x' | x = 1", Subset::from_predicate(n, |x| alg.sup(alg.star(x), x) == alg.one())),
        ("x' & x = 0", Subset::from_predicate(n, |x| alg.inf(alg.star(x), x) == alg.zero())),
        ("x -> x' = x'", Subset::from_predicate(n, |x| alg.imp(x, alg.star(x)) == alg.star(x))),
    ]
}

/// First pair `(x, y)` of members, in index order, with `x -> y` outside `s`.
fn first_escape(alg: &FiniteAlgebra, s: &Subset) -> Option<(Elem, Elem)> {
    s.iter()
        .flat_map(|x| s.iter().map(move |y| (x, y)))
        .find(|&(x, y)| !s.contains(alg.imp(x, y)))
}

/// Restricts the algebra to `s`; elements keep their names and relative order.
pub fn induced_subalgebra(alg: &FiniteAlgebra, s: &Subset) -> Result<FiniteAlgebra, CenterError> {
    if s.universe() != alg.size() {
        return Err(crate::error::AlgebraError::TableShape {
            expected: alg.size(),
            found: s.universe(),
        }
        .into());
    }
    if !s.contains(alg.zero()) {
        return Err(CenterError::MissingConstant("0"));
    }
    if !s.contains(alg.one()) {
        return Err(CenterError::MissingConstant("1"));
    }
    if let Some((x, y)) = first_escape(alg, s) {
        return Err(CenterError::NotClosed { x, y });
    }
    let members = s.to_vec();
    let local = |x: Elem| members.binary_search(&x).expect("closed");
    let names = members.iter().map(|&x| alg.name(x).to_string()).collect();
    let imp = members
        .iter()
        .flat_map(|&x| members.iter().map(move |&y| (x, y)))
        .map(|(x, y)| local(alg.imp(x, y)))
        .collect();
    Ok(FiniteAlgebra::new(names, imp, local(alg.one()), local(alg.zero()))?)
}

/// Lattice signature shared by [`LatticeView`] and the `O(X)` operations of an algebra.
pub trait LatticeOps {
    fn meet(&self, x: Elem, y: Elem) -> Elem;
    fn join(&self, x: Elem, y: Elem) -> Elem;
    fn complement(&self, x: Elem) -> Elem;
    fn bottom(&self) -> Elem;
    fn top(&self) -> Elem;

    fn below(&self, x: Elem, y: Elem) -> bool {
        self.meet(x, y) == x
    }
}

/// Ortholattice and orthomodularity axioms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LatticeAxiom {
    Idempotent,
    Commutative,
    Associative,
    Absorption,
    Bounds,
    Complements,
    DeMorgan,
    Involution,
    Orthomodular,
}

impl LatticeAxiom {
    pub const ORTHOMODULAR: [LatticeAxiom; 9] = [
        LatticeAxiom::Idempotent,
        LatticeAxiom::Commutative,
        LatticeAxiom::Associative,
        LatticeAxiom::Absorption,
        LatticeAxiom::Bounds,
        LatticeAxiom::Complements,
        LatticeAxiom::DeMorgan,
        LatticeAxiom::Involution,
        LatticeAxiom::Orthomodular,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            LatticeAxiom::Idempotent => "Q1-idempotent",
            LatticeAxiom::Commutative => "Q1-commutative",
            LatticeAxiom::Associative => "Q1-associative",
            LatticeAxiom::Absorption => "Q1-absorption",
            LatticeAxiom::Bounds => "Q1-bounds",
            LatticeAxiom::Complements => "Q2",
            LatticeAxiom::DeMorgan => "Q3",
            LatticeAxiom::Involution => "Q4",
            LatticeAxiom::Orthomodular => "Q5",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            LatticeAxiom::Associative => 3,
            LatticeAxiom::Commutative
            | LatticeAxiom::Absorption
            | LatticeAxiom::DeMorgan
            | LatticeAxiom::Orthomodular => 2,
            _ => 1,
        }
    }

    pub fn holds_at<L: LatticeOps + ?Sized>(self, l: &L, v: &[Elem]) -> bool {
        let (m, j, c) = (
            |x, y| l.meet(x, y),
            |x, y| l.join(x, y),
            |x| l.complement(x),
        );
        match self {
            LatticeAxiom::Idempotent => m(v[0], v[0]) == v[0] && j(v[0], v[0]) == v[0],
            LatticeAxiom::Commutative => m(v[0], v[1]) == m(v[1], v[0]) && j(v[0], v[1]) == j(v[1], v[0]),
            LatticeAxiom::Associative => {
                let (x, y, z) = (v[0], v[1], v[2]);
                m(m(x, y), z) == m(x, m(y, z)) && j(j(x, y), z) == j(x, j(y, z))
            }
            LatticeAxiom::Absorption => {
                let (x, y) = (v[0], v[1]);
                m(x, j(x, y)) == x && j(x, m(x, y)) == x
            }
            LatticeAxiom::Bounds => {
                let x = v[0];
                m(x, l.bottom()) == l.bottom() && j(x, l.top()) == l.top() && m(x, l.top()) == x
            }
            LatticeAxiom::Complements => {
                m(v[0], c(v[0])) == l.bottom() && j(v[0], c(v[0])) == l.top()
            }
            LatticeAxiom::DeMorgan => {
                let (x, y) = (v[0], v[1]);
                c(m(x, y)) == j(c(x), c(y)) && c(j(x, y)) == m(c(x), c(y))
            }
            LatticeAxiom::Involution => c(c(v[0])) == v[0],
            LatticeAxiom::Orthomodular => {
                let (x, y) = (v[0], v[1]);
                !l.below(x, y) || j(x, m(c(x), y)) == y
            }
        }
    }
}

/// `(meet, join, complement)` on a subset, re-indexed `0..members.len()`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeView {
    pub names: Vec<String>,
    /// Parent index of each local element; the identity for standalone lattices.
    pub members: Vec<Elem>,
    pub parent_size: usize,
    pub meet: Vec<Elem>,
    pub join: Vec<Elem>,
    pub complement: Vec<Elem>,
    pub zero: Elem,
    pub one: Elem,
}

impl LatticeOps for LatticeView {
    fn meet(&self, x: Elem, y: Elem) -> Elem {
        self.meet[x * self.size() + y]
    }
    fn join(&self, x: Elem, y: Elem) -> Elem {
        self.join[x * self.size() + y]
    }
    fn complement(&self, x: Elem) -> Elem {
        self.complement[x]
    }
    fn bottom(&self) -> Elem {
        self.zero
    }
    fn top(&self) -> Elem {
        self.one
    }
}

impl LatticeView {
    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn base(&self) -> Subset {
        Subset::from_elems(self.parent_size, self.members.iter().copied())
    }

    fn restrict(
        alg: &FiniteAlgebra,
        s: &Subset,
        meet: impl Fn(Elem, Elem) -> Elem,
        join: impl Fn(Elem, Elem) -> Elem,
    ) -> Result<Self, CenterError> {
        let members = s.to_vec();
        let local = |x: Elem| members.binary_search(&x).ok();
        let mut m = Vec::with_capacity(members.len().pow(2));
        let mut j = Vec::with_capacity(members.len().pow(2));
        for &x in &members {
            for &y in &members {
                let (a, b) = (meet(x, y), join(x, y));
                match (local(a), local(b)) {
                    (Some(a), Some(b)) => {
                        m.push(a);
                        j.push(b);
                    }
                    _ => return Err(CenterError::NotClosed { x, y }),
                }
            }
        }
        let complement = members
            .iter()
            .map(|&x| local(alg.star(x)).ok_or(CenterError::NotClosed { x, y: alg.zero() }))
            .collect::<Result<_, _>>()?;
        Ok(Self {
            names: members.iter().map(|&x| alg.name(x).to_string()).collect(),
            parent_size: alg.size(),
            meet: m,
            join: j,
            complement,
            zero: local(alg.zero()).ok_or(CenterError::MissingConstant("0"))?,
            one: local(alg.one()).ok_or(CenterError::MissingConstant("1"))?,
            members,
        })
    }

    /// `(Z(X), &, |, ')`.
    pub fn center(alg: &FiniteAlgebra) -> Result<Self, CenterError> {
        Self::restrict(alg, &wajsberg_center(alg), |x, y| alg.inf(x, y), |x, y| alg.sup(x, y))
    }

    /// `(O(X), &&, ||, ')`.
    pub fn oml(alg: &FiniteAlgebra) -> Result<Self, CenterError> {
        Self::restrict(alg, &oml_center(alg), |x, y| alg.inf_l(x, y), |x, y| alg.sup_l(x, y))
    }

    /// A standalone lattice from its order relation (row-major) and complement.
    /// Meets and joins are computed as greatest lower and least upper bounds.
    pub fn from_order(
        names: &[&str],
        leq: &[bool],
        complement: &[Elem],
    ) -> Result<Self, CenterError> {
        let n = names.len();
        let le = |x: Elem, y: Elem| leq[x * n + y];
        let extreme = |cands: Vec<Elem>, up: bool| {
            cands
                .iter()
                .copied()
                .find(|&b| cands.iter().all(|&c| if up { le(b, c) } else { le(c, b) }))
        };
        let mut meet = Vec::with_capacity(n * n);
        let mut join = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let lower = (0..n).filter(|&z| le(z, x) && le(z, y)).collect();
                let upper = (0..n).filter(|&z| le(x, z) && le(y, z)).collect();
                match (extreme(lower, false), extreme(upper, true)) {
                    (Some(m), Some(j)) => {
                        meet.push(m);
                        join.push(j);
                    }
                    _ => return Err(CenterError::NotClosed { x, y }),
                }
            }
        }
        let zero = (0..n)
            .find(|&b| (0..n).all(|x| le(b, x)))
            .ok_or(CenterError::MissingConstant("0"))?;
        let one = (0..n)
            .find(|&t| (0..n).all(|x| le(x, t)))
            .ok_or(CenterError::MissingConstant("1"))?;
        Ok(Self {
            names: names.iter().map(|s| s.to_string()).collect(),
            members: (0..n).collect(),
            parent_size: n,
            meet,
            join,
            complement: complement.to_vec(),
            zero,
            one,
        })
    }
}

/// The first violated ortholattice or orthomodularity axiom, with its assignment.
pub fn check_orthomodular<L: LatticeOps + ?Sized>(
    l: &L,
    size: usize,
) -> Option<(LatticeAxiom, Vec<Elem>)> {
    let domain: Vec<Elem> = (0..size).collect();
    LatticeAxiom::ORTHOMODULAR.iter().find_map(|&ax| {
        first_violation(&vec![&domain[..]; ax.arity()], |v| !ax.holds_at(l, v)).map(|v| (ax, v))
    })
}

/// `x -> y = x' | y` on an orthomodular lattice.
pub fn oml_to_qw(l: &LatticeView) -> Result<FiniteAlgebra, CenterError> {
    if let Some((ax, v)) = check_orthomodular(l, l.size()) {
        let assignment = ["x", "y", "z"]
            .iter()
            .zip(&v)
            .map(|(var, &e)| format!("{var}={}", l.names[e]))
            .collect::<Vec<_>>()
            .join(" ");
        return Err(CenterError::InputNotOrthomodular {
            axiom: ax.tag().to_string(),
            assignment,
        });
    }
    let n = l.size();
    let imp = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .map(|(x, y)| l.join(l.complement(x), y))
        .collect();
    Ok(FiniteAlgebra::new(l.names.clone(), imp, l.one, l.zero)?)
}

/// `&&`, `||` and `'` of an algebra in its own indices.
struct OmlOps<'a>(&'a FiniteAlgebra);

impl LatticeOps for OmlOps<'_> {
    fn meet(&self, x: Elem, y: Elem) -> Elem {
        self.0.inf_l(x, y)
    }
    fn join(&self, x: Elem, y: Elem) -> Elem {
        self.0.sup_l(x, y)
    }
    fn complement(&self, x: Elem) -> Elem {
        self.0.star(x)
    }
    fn bottom(&self) -> Elem {
        self.0.zero()
    }
    fn top(&self) -> Elem {
        self.0.one()
    }
}

/// First `(x, y, z)` in `O(X)` with `x || (y && z) != (x || y) && (x || z)`.
pub fn oml_distributivity_witness(alg: &FiniteAlgebra) -> Option<(Elem, Elem, Elem)> {
    let o = oml_center(alg).to_vec();
    first_violation(&[&o, &o, &o], |v| {
        let (x, y, z) = (v[0], v[1], v[2]);
        alg.sup_l(x, alg.inf_l(y, z)) != alg.inf_l(alg.sup_l(x, y), alg.sup_l(x, z))
    })
    .map(|v| (v[0], v[1], v[2]))
}

/// Odometer scan over the product of `domains`, last coordinate fastest.
fn first_violation(domains: &[&[Elem]], violated: impl Fn(&[Elem]) -> bool) -> Option<Vec<Elem>> {
    if domains.iter().any(|d| d.is_empty()) {
        return None;
    }
    let k = domains.len();
    let mut idx = vec![0usize; k];
    let mut v: Vec<Elem> = domains.iter().map(|d| d[0]).collect();
    loop {
        if violated(&v) {
            return Some(v);
        }
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < domains[i].len() {
                v[i] = domains[i][idx[i]];
                break;
            }
            idx[i] = 0;
            v[i] = domains[i][0];
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Closure {
    Imp,
    Star,
    Meet,
    Join,
    Prod,
    MeetL,
    JoinL,
}

/// A checked property. Each one is a predicate on a tuple of elements that
/// can be re-evaluated against the algebra and the subset under test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Property {
    ContainsZero,
    ContainsOne,
    Closed(Closure),
    /// A Wajsberg axiom on members of the subset.
    Wajsberg(Axiom),
    SupUpper,
    SupLeast,
    InfLower,
    InfGreatest,
    MeetOverJoin,
    JoinOverMeet,
    K1,
    K2,
    K3,
    KleeneProducts,
    KleeneZero,
    LeqLIsLeqQ,
    JoinLUpper,
    JoinLLeast,
    MeetLLower,
    MeetLGreatest,
    JoinBelowJoinL,
    MeetLBelowMeet,
    Lattice(LatticeAxiom),
    Linear,
}

impl Property {
    pub fn tag(self) -> String {
        match self {
            Property::ContainsZero => "contains-0".into(),
            Property::ContainsOne => "contains-1".into(),
            Property::Closed(c) => format!("closed-{}", match c {
                Closure::Imp => "imp",
                Closure::Star => "star",
                Closure::Meet => "meet",
                Closure::Join => "join",
                Closure::Prod => "prod",
                Closure::MeetL => "meetL",
                Closure::JoinL => "joinL",
            }),
            Property::Wajsberg(a) => format!("wajsberg-{}", a.tag()),
            Property::SupUpper => "join-upper-bound".into(),
            Property::SupLeast => "join-least".into(),
            Property::InfLower => "meet-lower-bound".into(),
            Property::InfGreatest => "meet-greatest".into(),
            Property::MeetOverJoin => "meet-over-join".into(),
            Property::JoinOverMeet => "join-over-meet".into(),
            Property::K1 => "K1".into(),
            Property::K2 => "K2".into(),
            Property::K3 => "K3".into(),
            Property::KleeneProducts => "kleene-products".into(),
            Property::KleeneZero => "kleene-zero".into(),
            Property::LeqLIsLeqQ => "leqL-is-leqQ".into(),
            Property::JoinLUpper => "joinL-upper-bound".into(),
            Property::JoinLLeast => "joinL-least".into(),
            Property::MeetLLower => "meetL-lower-bound".into(),
            Property::MeetLGreatest => "meetL-greatest".into(),
            Property::JoinBelowJoinL => "join-below-joinL".into(),
            Property::MeetLBelowMeet => "meetL-below-meet".into(),
            Property::Lattice(ax) => ax.tag().into(),
            Property::Linear => "linear".into(),
        }
    }

    pub fn arity(self) -> usize {
        use Property::*;
        match self {
            ContainsZero | ContainsOne => 0,
            Closed(Closure::Star) | K1 => 1,
            Wajsberg(a) => a.arity(),
            Lattice(a) => a.arity(),
            SupLeast | InfGreatest | MeetOverJoin | JoinOverMeet | JoinLLeast | MeetLGreatest => 3,
            _ => 2,
        }
    }

    /// True when the property fails at `v`.
    pub fn violated(self, alg: &FiniteAlgebra, s: &Subset, v: &[Elem]) -> bool {
        use Property::*;
        let q = |x, y| alg.leq_q(x, y);
        let (inf, sup, st) = (|x, y| alg.inf(x, y), |x, y| alg.sup(x, y), |x| alg.star(x));
        let holds = match self {
            ContainsZero => s.contains(alg.zero()),
            ContainsOne => s.contains(alg.one()),
            Closed(c) => s.contains(match c {
                Closure::Imp => alg.imp(v[0], v[1]),
                Closure::Star => st(v[0]),
                Closure::Meet => inf(v[0], v[1]),
                Closure::Join => sup(v[0], v[1]),
                Closure::Prod => alg.prod(v[0], v[1]),
                Closure::MeetL => alg.inf_l(v[0], v[1]),
                Closure::JoinL => alg.sup_l(v[0], v[1]),
            }),
            Wajsberg(a) => Ops::of(alg).holds_at(a, v),
            SupUpper => q(v[0], sup(v[0], v[1])) && q(v[1], sup(v[0], v[1])),
            SupLeast => !(q(v[0], v[2]) && q(v[1], v[2])) || q(sup(v[0], v[1]), v[2]),
            InfLower => q(inf(v[0], v[1]), v[0]) && q(inf(v[0], v[1]), v[1]),
            InfGreatest => !(q(v[2], v[0]) && q(v[2], v[1])) || q(v[2], inf(v[0], v[1])),
            MeetOverJoin => {
                let (x, y, z) = (v[0], v[1], v[2]);
                inf(x, sup(y, z)) == sup(inf(x, y), inf(x, z))
            }
            JoinOverMeet => {
                let (x, y, z) = (v[0], v[1], v[2]);
                sup(x, inf(y, z)) == inf(sup(x, y), sup(x, z))
            }
            K1 => st(st(v[0])) == v[0],
            K2 => st(sup(v[0], v[1])) == inf(st(v[0]), st(v[1])),
            K3 => q(inf(v[0], st(v[0])), sup(v[1], st(v[1]))),
            KleeneProducts => {
                let (x, y) = (v[0], v[1]);
                inf(alg.prod(st(x), y), alg.prod(x, st(y))) == alg.zero()
            }
            KleeneZero => {
                let (x, y) = (v[0], v[1]);
                alg.prod(inf(x, st(x)), inf(y, st(y))) == alg.zero()
            }
            LeqLIsLeqQ => alg.leq_l(v[0], v[1]) == q(v[0], v[1]),
            JoinLUpper => q(v[0], alg.sup_l(v[0], v[1])) && q(v[1], alg.sup_l(v[0], v[1])),
            JoinLLeast => !(q(v[0], v[2]) && q(v[1], v[2])) || q(alg.sup_l(v[0], v[1]), v[2]),
            MeetLLower => q(alg.inf_l(v[0], v[1]), v[0]) && q(alg.inf_l(v[0], v[1]), v[1]),
            MeetLGreatest => !(q(v[2], v[0]) && q(v[2], v[1])) || q(v[2], alg.inf_l(v[0], v[1])),
            JoinBelowJoinL => q(sup(v[0], v[1]), alg.sup_l(v[0], v[1])),
            MeetLBelowMeet => q(alg.inf_l(v[0], v[1]), inf(v[0], v[1])),
            Lattice(ax) => ax.holds_at(&OmlOps(alg), v),
            Linear => alg.leq(v[0], v[1]) || alg.leq(v[1], v[0]),
        };
        !holds
    }

    fn is_closure(self) -> bool {
        matches!(self, Property::ContainsZero | Property::ContainsOne | Property::Closed(_))
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub property: Property,
    pub values: Vec<Elem>,
}

impl Failure {
    pub fn render(&self, alg: &FiniteAlgebra) -> String {
        let mut out = self.property.tag();
        for (var, &v) in ["x", "y", "z"].iter().zip(&self.values) {
            out.push_str(&format!(" {var}={}", alg.name(v)));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CenterReport {
    pub center: Subset,
    pub closure_ok: bool,
    pub structure_ok: bool,
    pub failures: Vec<Failure>,
}

impl CenterReport {
    pub fn passed(&self) -> bool {
        self.closure_ok && self.structure_ok
    }

    /// Every recorded failure still evaluates to a violation.
    pub fn failures_recheck(&self, alg: &FiniteAlgebra) -> bool {
        self.failures
            .iter()
            .all(|f| f.property.violated(alg, &self.center, &f.values))
    }
}

/// Where the bound variable of a least/greatest-bound property ranges.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum BoundScope {
    /// Every element of the algebra.
    #[default]
    Ambient,
    /// Only members of the subset.
    Subset,
}

struct Checker<'a> {
    alg: &'a FiniteAlgebra,
    center: Subset,
    members: Vec<Elem>,
    everything: Vec<Elem>,
    failures: Vec<Failure>,
}

impl<'a> Checker<'a> {
    fn new(alg: &'a FiniteAlgebra, center: Subset) -> Self {
        Self {
            alg,
            members: center.to_vec(),
            center,
            everything: alg.elements().collect(),
            failures: Vec::new(),
        }
    }

    /// Checks with every variable ranging over the subset.
    fn check(&mut self, p: Property) {
        self.check_bounded(p, false);
    }

    /// As [`Checker::check`], but the last variable ranges over the whole
    /// algebra when `ambient_last` is set.
    fn check_bounded(&mut self, p: Property, ambient_last: bool) {
        let k = p.arity();
        let mut domains: Vec<&[Elem]> = vec![&self.members; k];
        if ambient_last && k > 0 {
            domains[k - 1] = &self.everything;
        }
        let (alg, center) = (self.alg, &self.center);
        if let Some(values) = first_violation(&domains, |v| p.violated(alg, center, v)) {
            self.failures.push(Failure { property: p, values });
        }
    }

    fn report(self) -> CenterReport {
        let closure_ok = !self.failures.iter().any(|f| f.property.is_closure());
        let structure_ok = self.failures.iter().all(|f| f.property.is_closure());
        CenterReport {
            center: self.center,
            closure_ok,
            structure_ok,
            failures: self.failures,
        }
    }
}

fn closure_checks(c: &mut Checker<'_>, ops: &[Closure]) {
    c.check(Property::ContainsZero);
    c.check(Property::ContainsOne);
    for &op in ops {
        c.check(Property::Closed(op));
    }
}

/// `Z(X)` is a Wajsberg subalgebra closed under `->`, `'`, `&` and `|`.
pub fn verify_wajsberg_center(alg: &FiniteAlgebra) -> CenterReport {
    let mut c = Checker::new(alg, wajsberg_center(alg));
    closure_checks(&mut c, &[Closure::Imp, Closure::Star, Closure::Meet, Closure::Join]);
    for &ax in WAJSBERG_AXIOMS {
        c.check(Property::Wajsberg(ax));
    }
    c.report()
}

fn lattice_checks(c: &mut Checker<'_>, bound: BoundScope) {
    let ambient = bound == BoundScope::Ambient;
    c.check(Property::SupUpper);
    c.check_bounded(Property::SupLeast, ambient);
    c.check(Property::InfLower);
    c.check_bounded(Property::InfGreatest, ambient);
    c.check(Property::MeetOverJoin);
    c.check(Property::JoinOverMeet);
}

/// `Z(X)` is a distributive sublattice of `(X, <=Q)`: `|` and `&` are the
/// least upper and greatest lower bounds, with the bound ranging per `bound`.
pub fn verify_center_lattice(alg: &FiniteAlgebra, bound: BoundScope) -> CenterReport {
    let mut c = Checker::new(alg, wajsberg_center(alg));
    closure_checks(&mut c, &[Closure::Meet, Closure::Join]);
    lattice_checks(&mut c, bound);
    c.report()
}

/// `(Z(X), &, |, ', 0, 1)` is a Kleene algebra.
pub fn verify_kleene_center(alg: &FiniteAlgebra) -> CenterReport {
    let mut c = Checker::new(alg, wajsberg_center(alg));
    closure_checks(&mut c, &[Closure::Star, Closure::Meet, Closure::Join]);
    lattice_checks(&mut c, BoundScope::Subset);
    for p in [
        Property::K1,
        Property::K2,
        Property::K3,
        Property::KleeneProducts,
        Property::KleeneZero,
    ] {
        c.check(p);
    }
    c.report()
}

/// `(O(X), &&, ||, ', 0, 1)` is an orthomodular lattice whose order is `<=Q`.
/// Distributivity is deliberately not checked.
pub fn verify_oml_center(alg: &FiniteAlgebra) -> CenterReport {
    let mut c = Checker::new(alg, oml_center(alg));
    closure_checks(
        &mut c,
        &[
            Closure::Imp,
            Closure::Star,
            Closure::Meet,
            Closure::Join,
            Closure::Prod,
            Closure::MeetL,
            Closure::JoinL,
        ],
    );
    for p in [
        Property::LeqLIsLeqQ,
        Property::JoinLUpper,
        Property::JoinLLeast,
        Property::MeetLLower,
        Property::MeetLGreatest,
    ] {
        c.check(p);
    }
    for ax in LatticeAxiom::ORTHOMODULAR {
        c.check(Property::Lattice(ax));
    }
    c.check(Property::JoinBelowJoinL);
    c.check(Property::MeetLBelowMeet);
    c.report()
}

/// `<=` is total on `Z(X)`.
pub fn verify_quasilinear_center(alg: &FiniteAlgebra) -> CenterReport {
    let mut c = Checker::new(alg, wajsberg_center(alg));
    closure_checks(&mut c, &[Closure::Imp]);
    for &ax in WAJSBERG_AXIOMS {
        c.check(Property::Wajsberg(ax));
    }
    c.check(Property::Linear);
    c.report()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum HasseOrder {
    #[default]
    Leq,
    LeqQ,
}

/// `node` lines in index order, then one `edge A B` per covering pair of the
/// strict part of the order restricted to `s`.
pub fn hasse_export(alg: &FiniteAlgebra, order: HasseOrder, s: &Subset) -> String {
    let rel = |x, y| match order {
        HasseOrder::Leq => alg.leq(x, y),
        HasseOrder::LeqQ => alg.leq_q(x, y),
    };
    let lt = |x, y| rel(x, y) && !rel(y, x);
    let members = s.to_vec();
    let mut out = String::new();
    for &x in &members {
        out.push_str(&format!("node {}\n", alg.name(x)));
    }
    for &x in &members {
        for &y in &members {
            if lt(x, y) && !members.iter().any(|&z| lt(x, z) && lt(z, y)) {
                out.push_str(&format!("edge {} {}\n", alg.name(x), alg.name(y)));
            }
        }
    }
    out
}
