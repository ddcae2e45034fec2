use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::algebra::{Elem, FiniteAlgebra};

/// Lexicographically least row-major implication table over all relabelings
/// that send zero to `0`, one to `n - 1` and permute the rest.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CanonicalKey(pub Vec<Elem>);

impl CanonicalKey {
    pub fn size(&self) -> usize {
        (self.0.len() as f64).sqrt().round() as usize
    }

    /// The canonical representative, with names `0`, `a`, `b`, ..., `1`.
    pub fn to_algebra(&self) -> FiniteAlgebra {
        let n = self.size();
        FiniteAlgebra::new(default_names(n), self.0.clone(), n - 1, 0)
            .expect("canonical keys describe valid tables")
    }
}

impl fmt::Display for CanonicalKey {
    /// Rows separated by `/`, entries by `,`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.size().max(1);
        f.write_str(&self.0.chunks(n).map(|r| r.iter().join(",")).join("/"))
    }
}

/// `0`, `a`, `b`, ..., `1`; letters run out after 26 middle elements and
/// continue as `e26`, `e27`, ...
pub fn default_names(n: usize) -> Vec<String> {
    if n == 1 {
        return vec!["0".into()];
    }
    let mut names = vec!["0".to_string()];
    for i in 0..n - 2 {
        names.push(if i < 26 {
            ((b'a' + i as u8) as char).to_string()
        } else {
            format!("e{i}")
        });
    }
    names.push("1".into());
    names
}

/// Table of `alg` relabeled by `perm` (old index to new index).
pub(crate) fn permuted_table(imp: &[Elem], n: usize, perm: &[Elem]) -> Vec<Elem> {
    let mut out = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            out[perm[x] * n + perm[y]] = perm[imp[x * n + y]];
        }
    }
    out
}

/// Middle elements in index order: everything except zero and one.
fn middles(alg: &FiniteAlgebra) -> Vec<Elem> {
    alg.elements()
        .filter(|&x| x != alg.zero() && x != alg.one())
        .collect()
}

/// Exhaustive over `(n-2)!` relabelings.
pub fn canonical_key(alg: &FiniteAlgebra) -> CanonicalKey {
    let n = alg.size();
    if n == 1 {
        return CanonicalKey(vec![0]);
    }
    let mids = middles(alg);
    let mut perm = vec![0; n];
    perm[alg.zero()] = 0;
    perm[alg.one()] = n - 1;
    let mut best: Option<Vec<Elem>> = None;
    for order in (1..n - 1).permutations(mids.len()) {
        for (&old, &new) in mids.iter().zip(&order) {
            perm[old] = new;
        }
        let t = permuted_table(alg.imp_table(), n, &perm);
        if best.as_ref().is_none_or(|b| t < *b) {
            best = Some(t);
        }
    }
    CanonicalKey(best.expect("at least one relabeling"))
}

/// First bijection `f` (as the sequence `f(0), f(1), ...` in lexicographic
/// order) with `f(x -> y) = f(x) -> f(y)`, `f(1) = 1` and `f(0) = 0`.
pub fn isomorphic(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Option<Vec<Elem>> {
    find_isomorphism(a, b, true)
}

/// As [`isomorphic`] but without requiring the constants to be preserved.
pub fn isomorphic_unrestricted(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Option<Vec<Elem>> {
    find_isomorphism(a, b, false)
}

fn find_isomorphism(a: &FiniteAlgebra, b: &FiniteAlgebra, constants: bool) -> Option<Vec<Elem>> {
    let n = a.size();
    if n != b.size() {
        return None;
    }
    const UNSET: Elem = Elem::MAX;
    let mut f = vec![UNSET; n];
    let mut used = vec![false; n];

    /// Every pair whose arguments and result are all mapped agrees.
    fn consistent(a: &FiniteAlgebra, b: &FiniteAlgebra, f: &[Elem]) -> bool {
        let n = a.size();
        (0..n).filter(|&u| f[u] != UNSET).all(|u| {
            (0..n).filter(|&v| f[v] != UNSET).all(|v| {
                let image = f[a.imp(u, v)];
                image == UNSET || image == b.imp(f[u], f[v])
            })
        })
    }

    fn extend(
        a: &FiniteAlgebra,
        b: &FiniteAlgebra,
        constants: bool,
        f: &mut Vec<Elem>,
        used: &mut Vec<bool>,
        x: Elem,
    ) -> bool {
        if x == a.size() {
            return true;
        }
        for y in 0..b.size() {
            if used[y] {
                continue;
            }
            if constants
                && ((x == a.one()) != (y == b.one()) || (x == a.zero()) != (y == b.zero()))
            {
                continue;
            }
            f[x] = y;
            used[y] = true;
            if consistent(a, b, f) && extend(a, b, constants, f, used, x + 1) {
                return true;
            }
            used[y] = false;
            f[x] = UNSET;
        }
        false
    }

    if extend(a, b, constants, &mut f, &mut used, 0) {
        Some(f)
    } else {
        None
    }
}
