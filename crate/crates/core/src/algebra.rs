//! Finite algebras given by an implication table, and every operation and
//! relation derived from it.
//!
//! Elements are dense indices `0..n`. The only primitive data is the table
//! `imp[x][y] = x -> y` together with the designated elements `one` and
//! `zero`; the star `x* = x -> 0` and every lattice-like operation are
//! computed from it.

use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::AlgebraError;

/// Index of a carrier element.
pub type Elem = usize;

/// Algebras up to this size get their [`DerivedTables`] computed at
/// construction; larger ones compute them on first use.
pub const EAGER_DERIVE_LIMIT: usize = 256;

/// A finite algebra `(X, ->, 0, 1)`.
#[derive(Clone)]
pub struct FiniteAlgebra {
    names: Vec<String>,
    imp: Vec<Elem>,
    one: Elem,
    zero: Elem,
    derived: OnceLock<DerivedTables>,
}

impl FiniteAlgebra {
    /// Builds an algebra from its row-major implication table.
    ///
    /// Only the shape is validated here (sizes, index ranges, distinct
    /// names, `one != zero` when `n >= 2`). Boundedness is checked by the
    /// text loader and by the axiom suite.
    pub fn new(
        names: Vec<String>,
        imp: Vec<Elem>,
        one: Elem,
        zero: Elem,
    ) -> Result<Self, AlgebraError> {
        let n = names.len();
        if n == 0 {
            return Err(AlgebraError::Empty);
        }
        if imp.len() != n * n {
            return Err(AlgebraError::TableShape {
                expected: n * n,
                found: imp.len(),
            });
        }
        let mut seen = HashSet::with_capacity(n);
        for name in &names {
            if name.is_empty() || name.chars().any(char::is_whitespace) {
                return Err(AlgebraError::BadName(name.clone()));
            }
            if !seen.insert(name.as_str()) {
                return Err(AlgebraError::DuplicateName(name.clone()));
            }
        }
        for (&v, cell) in imp.iter().zip(0..) {
            if v >= n {
                return Err(AlgebraError::EntryOutOfRange {
                    row: cell / n,
                    col: cell % n,
                    value: v,
                    size: n,
                });
            }
        }
        for e in [one, zero] {
            if e >= n {
                return Err(AlgebraError::IndexOutOfRange { index: e, size: n });
            }
        }
        if n >= 2 && one == zero {
            return Err(AlgebraError::OneEqualsZero);
        }
        let alg = Self {
            names,
            imp,
            one,
            zero,
            derived: OnceLock::new(),
        };
        if n <= EAGER_DERIVE_LIMIT {
            let _ = alg.derived.set(alg.derive_all());
        }
        Ok(alg)
    }

    /// Builds an algebra with generated names from a table given as rows.
    pub fn from_rows(
        names: &[&str],
        rows: &[&[Elem]],
        one: Elem,
        zero: Elem,
    ) -> Result<Self, AlgebraError> {
        let imp = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Self::new(
            names.iter().map(|s| s.to_string()).collect(),
            imp,
            one,
            zero,
        )
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: Elem) -> &str {
        &self.names[x]
    }

    /// Looks an element up by display name.
    pub fn element(&self, name: &str) -> Result<Elem, AlgebraError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| AlgebraError::UnknownName(name.to_string()))
    }

    pub fn check_index(&self, x: Elem) -> Result<Elem, AlgebraError> {
        if x < self.size() {
            Ok(x)
        } else {
            Err(AlgebraError::IndexOutOfRange {
                index: x,
                size: self.size(),
            })
        }
    }

    /// The raw row-major implication table.
    pub fn imp_table(&self) -> &[Elem] {
        &self.imp
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size()
    }

    /// `x -> y`. Panics when an index is out of range.
    #[inline]
    pub fn imp(&self, x: Elem, y: Elem) -> Elem {
        let n = self.size();
        assert!(x < n && y < n, "element index out of range");
        self.imp[x * n + y]
    }

    /// `x* = x -> 0`
    #[inline]
    pub fn star(&self, x: Elem) -> Elem {
        self.imp(x, self.zero)
    }

    /// `x ⊔ y = (x -> y) -> y`
    pub fn sup(&self, x: Elem, y: Elem) -> Elem {
        self.imp(self.imp(x, y), y)
    }

    /// `x ⊓ y = ((x* -> y*) -> y*)*`
    pub fn inf(&self, x: Elem, y: Elem) -> Elem {
        let ys = self.star(y);
        self.star(self.imp(self.imp(self.star(x), ys), ys))
    }

    /// `x ⊙ y = (x -> y*)*`
    pub fn prod(&self, x: Elem, y: Elem) -> Elem {
        self.star(self.imp(x, self.star(y)))
    }

    /// `x ⊔_L y = x* -> y`
    pub fn sup_l(&self, x: Elem, y: Elem) -> Elem {
        self.imp(self.star(x), y)
    }

    /// `x ⊓_L y = x ⊙ y`
    pub fn inf_l(&self, x: Elem, y: Elem) -> Elem {
        self.prod(x, y)
    }

    /// `x ⊕ y = x* -> y`
    pub fn oplus(&self, x: Elem, y: Elem) -> Elem {
        self.imp(self.star(x), y)
    }

    /// `x ⊓_S y = (x ⊕ y*) ⊙ y`
    pub fn s_inf(&self, x: Elem, y: Elem) -> Elem {
        self.prod(self.oplus(x, self.star(y)), y)
    }

    /// `x ⊔_S y = (x ⊙ y*) ⊕ y`
    pub fn s_sup(&self, x: Elem, y: Elem) -> Elem {
        self.oplus(self.prod(x, self.star(y)), y)
    }

    /// `x <= y` iff `x -> y = 1`
    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.imp(x, y) == self.one
    }

    /// `x <=_Q y` iff `x = x ⊓ y`
    pub fn leq_q(&self, x: Elem, y: Elem) -> bool {
        self.inf(x, y) == x
    }

    /// `x <=_L y` iff `x* -> y = y`
    pub fn leq_l(&self, x: Elem, y: Elem) -> bool {
        self.sup_l(x, y) == y
    }

    /// Recomputes every derived table from the implication table.
    pub fn derive_all(&self) -> DerivedTables {
        let n = self.size();
        let table = |f: &dyn Fn(Elem, Elem) -> Elem| -> Vec<Elem> {
            (0..n * n).map(|c| f(c / n, c % n)).collect()
        };
        let relation = |f: &dyn Fn(Elem, Elem) -> bool| -> Vec<bool> {
            (0..n * n).map(|c| f(c / n, c % n)).collect()
        };
        DerivedTables {
            size: n,
            sup: table(&|x, y| self.sup(x, y)),
            inf: table(&|x, y| self.inf(x, y)),
            prod: table(&|x, y| self.prod(x, y)),
            sup_l: table(&|x, y| self.sup_l(x, y)),
            inf_l: table(&|x, y| self.inf_l(x, y)),
            oplus: table(&|x, y| self.oplus(x, y)),
            leq: relation(&|x, y| self.leq(x, y)),
            leq_q: relation(&|x, y| self.leq_q(x, y)),
        }
    }

    /// Cached derived tables (computed at most once).
    pub fn derived(&self) -> &DerivedTables {
        self.derived.get_or_init(|| self.derive_all())
    }

    /// Whether `zero -> x = one` for every `x`.
    pub fn is_bounded(&self) -> bool {
        self.elements().all(|x| self.leq(self.zero, x))
    }

    /// Relabels the carrier: element `x` of `self` becomes `perm[x]`.
    /// Names travel with their elements.
    pub fn relabel(&self, perm: &[Elem]) -> Result<Self, AlgebraError> {
        let n = self.size();
        if perm.len() != n || !is_permutation(perm) {
            return Err(AlgebraError::NotAPermutation);
        }
        let mut names = vec![String::new(); n];
        let mut imp = vec![0; n * n];
        for x in 0..n {
            names[perm[x]] = self.names[x].clone();
            for y in 0..n {
                imp[perm[x] * n + perm[y]] = perm[self.imp(x, y)];
            }
        }
        Self::new(names, imp, perm[self.one], perm[self.zero])
    }

    /// Same algebra with new display names.
    pub fn with_names(&self, names: Vec<String>) -> Result<Self, AlgebraError> {
        if names.len() != self.size() {
            return Err(AlgebraError::TableShape {
                expected: self.size(),
                found: names.len(),
            });
        }
        Self::new(names, self.imp.clone(), self.one, self.zero)
    }

    /// Same carrier with one implication entry replaced.
    pub fn with_entry(&self, x: Elem, y: Elem, value: Elem) -> Result<Self, AlgebraError> {
        self.check_index(x)?;
        self.check_index(y)?;
        self.check_index(value)?;
        let mut imp = self.imp.clone();
        imp[x * self.size() + y] = value;
        Self::new(self.names.clone(), imp, self.one, self.zero)
    }

    /// Formats a set of elements as `{a,b,c}` in index order.
    pub fn format_set<I: IntoIterator<Item = Elem>>(&self, elems: I) -> String {
        let inner: Vec<&str> = elems.into_iter().map(|e| self.name(e)).collect();
        format!("{{{}}}", inner.join(","))
    }
}

fn is_permutation(perm: &[Elem]) -> bool {
    let mut seen = vec![false; perm.len()];
    perm.iter().all(|&p| {
        p < perm.len() && !std::mem::replace(&mut seen[p], true)
    })
}

impl PartialEq for FiniteAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
            && self.imp == other.imp
            && self.one == other.one
            && self.zero == other.zero
    }
}

impl Eq for FiniteAlgebra {}

impl Hash for FiniteAlgebra {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.names.hash(state);
        self.imp.hash(state);
        self.one.hash(state);
        self.zero.hash(state);
    }
}

impl fmt::Debug for FiniteAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteAlgebra")
            .field("names", &self.names)
            .field("imp", &self.imp)
            .field("one", &self.one)
            .field("zero", &self.zero)
            .finish()
    }
}

/// Precomputed tables for every derived operation, row-major `n x n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivedTables {
    pub size: usize,
    pub sup: Vec<Elem>,
    pub inf: Vec<Elem>,
    pub prod: Vec<Elem>,
    pub sup_l: Vec<Elem>,
    pub inf_l: Vec<Elem>,
    pub oplus: Vec<Elem>,
    pub leq: Vec<bool>,
    pub leq_q: Vec<bool>,
}

impl DerivedTables {
    #[inline]
    fn at<T: Copy>(&self, t: &[T], x: Elem, y: Elem) -> T {
        t[x * self.size + y]
    }

    pub fn sup(&self, x: Elem, y: Elem) -> Elem {
        self.at(&self.sup, x, y)
    }
    pub fn inf(&self, x: Elem, y: Elem) -> Elem {
        self.at(&self.inf, x, y)
    }
    pub fn prod(&self, x: Elem, y: Elem) -> Elem {
        self.at(&self.prod, x, y)
    }
    pub fn sup_l(&self, x: Elem, y: Elem) -> Elem {
        self.at(&self.sup_l, x, y)
    }
    pub fn inf_l(&self, x: Elem, y: Elem) -> Elem {
        self.at(&self.inf_l, x, y)
    }
    pub fn oplus(&self, x: Elem, y: Elem) -> Elem {
        self.at(&self.oplus, x, y)
    }
    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.at(&self.leq, x, y)
    }
    pub fn leq_q(&self, x: Elem, y: Elem) -> bool {
        self.at(&self.leq_q, x, y)
    }
}

/// A set of carrier elements, stored as a membership vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Subset {
    members: Vec<bool>,
}

impl Subset {
    pub fn full(n: usize) -> Self {
        Self {
            members: vec![true; n],
        }
    }

    pub fn empty(n: usize) -> Self {
        Self {
            members: vec![false; n],
        }
    }

    pub fn from_membership(members: Vec<bool>) -> Self {
        Self { members }
    }

    /// Panics if an element is `>= n`.
    pub fn from_elems<I: IntoIterator<Item = Elem>>(n: usize, elems: I) -> Self {
        let mut s = Self::empty(n);
        for e in elems {
            s.members[e] = true;
        }
        s
    }

    pub fn from_predicate(n: usize, pred: impl Fn(Elem) -> bool) -> Self {
        Self {
            members: (0..n).map(pred).collect(),
        }
    }

    /// Size of the ambient carrier.
    pub fn universe(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.get(x).copied().unwrap_or(false)
    }

    pub fn insert(&mut self, x: Elem) {
        self.members[x] = true;
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&m| m).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_full(&self) -> bool {
        self.members.iter().all(|&m| m)
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(i))
    }

    pub fn to_vec(&self) -> Vec<Elem> {
        self.iter().collect()
    }

    pub fn membership(&self) -> &[bool] {
        &self.members
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.iter().all(|x| other.contains(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    fn boolean() -> FiniteAlgebra {
        builtin::boolean2()
    }

    #[test]
    fn star_on_example() {
        let a = builtin::example_5_13();
        let e = |s| a.element(s).unwrap();
        assert_eq!(a.star(e("a")), e("c"));
        assert_eq!(a.star(e("1")), e("0"));
        assert_eq!(a.star(e("0")), e("1"));
        assert_eq!(boolean().star(0), 1);
    }

    #[test]
    fn sup_examples() {
        let a = builtin::example_5_13();
        let e = |s| a.element(s).unwrap();
        assert_eq!(a.sup(e("a"), e("b")), e("b"));
        for x in a.elements() {
            assert_eq!(a.sup(a.zero(), x), x);
            assert_eq!(a.sup(x, a.one()), a.one());
        }
    }

    #[test]
    fn inf_examples() {
        let a = builtin::example_5_13();
        let e = |s| a.element(s).unwrap();
        assert_eq!(a.inf(e("a"), e("b")), e("b"));
        assert_eq!(a.inf(e("b"), e("a")), e("a"));
        for x in a.elements() {
            assert_eq!(a.inf(x, a.one()), x);
            assert_eq!(a.inf(a.zero(), x), a.zero());
        }
    }

    #[test]
    fn prod_examples() {
        let a = builtin::example_5_13();
        let e = |s| a.element(s).unwrap();
        assert_eq!(a.prod(e("a"), e("b")), e("0"));
        for x in a.elements() {
            assert_eq!(a.prod(x, a.one()), x);
            assert_eq!(a.prod(x, a.star(x)), a.zero());
        }
    }

    #[test]
    fn lattice_l_examples() {
        let a = builtin::example_5_13();
        let e = |s| a.element(s).unwrap();
        assert_eq!(a.sup_l(e("a"), e("b")), e("1"));
        assert_eq!(a.inf_l(e("a"), e("b")), e("0"));
        assert_eq!(a.sup_l(e("0"), e("a")), e("a"));
        for x in a.elements() {
            assert_eq!(a.sup_l(x, x), a.imp(a.star(x), x));
        }
    }

    #[test]
    fn oplus_examples() {
        let a = builtin::example_5_13();
        let e = |s| a.element(s).unwrap();
        assert_eq!(a.oplus(e("a"), e("b")), a.imp(e("c"), e("b")));
        assert_eq!(a.oplus(e("a"), e("b")), e("1"));
        for x in a.elements() {
            assert_eq!(a.oplus(x, a.zero()), x);
            assert_eq!(a.oplus(x, a.star(x)), a.one());
        }
    }

    #[test]
    fn s_operations() {
        let a = builtin::example_5_13();
        let e = |s| a.element(s).unwrap();
        for x in a.elements() {
            assert_eq!(a.s_inf(x, a.one()), x);
            assert_eq!(a.s_inf(a.zero(), x), a.zero());
        }
        // (a ⊕ b*) ⊙ b = (a ⊕ d) ⊙ b = (c -> d) ⊙ b = 1 ⊙ b = b
        assert_eq!(a.s_inf(e("a"), e("b")), e("b"));
    }

    #[test]
    fn relations() {
        let a = builtin::example_5_13();
        let e = |s| a.element(s).unwrap();
        assert!(!a.leq_q(e("a"), e("b")));
        for x in a.elements() {
            assert!(a.leq(a.zero(), x));
            assert!(a.leq_q(x, x));
        }
    }

    #[test]
    fn boolean_tables_are_classical() {
        let d = boolean().derive_all();
        assert_eq!(d.sup, vec![0, 1, 1, 1]);
        assert_eq!(d.inf, vec![0, 0, 0, 1]);
        assert_eq!(d.prod, vec![0, 0, 0, 1]);
        assert_eq!(d.oplus, vec![0, 1, 1, 1]);
        assert_eq!(d.leq, vec![true, true, false, true]);
        assert_eq!(d.leq_q, vec![true, true, false, true]);
    }

    #[test]
    fn derive_all_is_reproducible() {
        let a = builtin::example_5_13();
        assert_eq!(a.derive_all(), *a.derived());
        assert_eq!(a.derive_all(), a.derive_all());
    }

    #[test]
    fn shape_errors() {
        let names = vec!["0".to_string(), "1".to_string()];
        assert!(matches!(
            FiniteAlgebra::new(names.clone(), vec![1, 1, 0], 1, 0),
            Err(AlgebraError::TableShape { .. })
        ));
        assert!(matches!(
            FiniteAlgebra::new(names.clone(), vec![1, 1, 0, 2], 1, 0),
            Err(AlgebraError::EntryOutOfRange { .. })
        ));
        assert!(matches!(
            FiniteAlgebra::new(names.clone(), vec![1, 1, 0, 1], 1, 1),
            Err(AlgebraError::OneEqualsZero)
        ));
        assert!(matches!(
            FiniteAlgebra::new(vec!["0".into(), "0".into()], vec![1, 1, 0, 1], 1, 0),
            Err(AlgebraError::DuplicateName(_))
        ));
        assert!(boolean().check_index(2).is_err());
    }

    #[test]
    #[should_panic]
    fn star_out_of_range_panics() {
        boolean().star(7);
    }

    #[test]
    fn trivial_algebra_is_accepted() {
        let t = FiniteAlgebra::new(vec!["0".into()], vec![0], 0, 0).unwrap();
        assert_eq!(t.star(0), 0);
        assert!(t.is_bounded());
    }

    #[test]
    fn relabel_round_trip() {
        let a = builtin::example_5_13();
        let perm = vec![0, 3, 1, 4, 2, 5];
        let b = a.relabel(&perm).unwrap();
        let mut inv = vec![0; 6];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        assert_eq!(b.relabel(&inv).unwrap(), a);
        assert!(a.relabel(&[0, 0, 1, 2, 3, 4]).is_err());
    }

    #[test]
    fn subset_basics() {
        let s = Subset::from_elems(5, [0, 4]);
        assert_eq!(s.to_vec(), vec![0, 4]);
        assert_eq!(s.len(), 2);
        assert!(!s.is_full());
        assert!(s.is_subset_of(&Subset::full(5)));
        assert!(!s.contains(9));
    }
}
