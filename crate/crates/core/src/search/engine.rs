use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use itertools::Itertools;
use rayon::prelude::*;

use super::canonical::{canonical_key, default_names, CanonicalKey};
use super::{Limits, SearchError, SearchStats};
use crate::algebra::{Elem, FiniteAlgebra};
use crate::axioms::{check_class, AlgebraClass};

const UNSET: Elem = Elem::MAX;
/// Frontier size at which the search is handed to the workers.
const SPLIT_TARGET: usize = 256;

/// Constraints enforced on partial tables. Each must be implied by the
/// class check, so pruning never loses a model.
#[derive(Clone, Copy, Debug, Default)]
struct Pruning {
    /// `x -> (y -> z) = y -> (x -> z)`.
    exchange: bool,
    /// `x -> 0` is an involution, fixed up to conjugacy before the search.
    involution: bool,
    /// `y' -> x' = x -> y`, propagated cell by cell.
    contrapositive: bool,
    /// `(x -> y) -> y = (y -> x) -> x`.
    commutative: bool,
    /// `x -> y = 1 = y -> x` only when `x = y`.
    antisymmetric: bool,
    /// `x -> (x & y) = x -> y`.
    qw1: bool,
}

fn pruning(class: AlgebraClass) -> Pruning {
    use AlgebraClass::*;
    let be = Pruning {
        exchange: true,
        ..Pruning::default()
    };
    let inv = Pruning {
        involution: true,
        contrapositive: true,
        ..be
    };
    match class {
        BE | BoundedBE => be,
        BCK => Pruning {
            antisymmetric: true,
            ..be
        },
        CommutativeBE => Pruning {
            commutative: true,
            ..be
        },
        InvolutiveBE => inv,
        Wajsberg => Pruning {
            commutative: true,
            ..inv
        },
        QW | QuasiLinear | QuasiLinearQ => Pruning { qw1: true, ..inv },
        MBE | SAlgebra | QmvOplus | Pqmv => Pruning::default(),
    }
}

/// Involutions of `1..=m` up to conjugacy: fixed points first, then
/// adjacent transpositions.
fn star_forms(n: usize) -> Vec<Vec<Elem>> {
    let m = n - 2;
    (0..=m / 2)
        .map(|pairs| {
            let fixed = m - 2 * pairs;
            let mut star = vec![0; n];
            star[0] = n - 1;
            star[n - 1] = 0;
            for (x, s) in star.iter_mut().enumerate().take(fixed + 1).skip(1) {
                *s = x;
            }
            for p in 0..pairs {
                let (a, b) = (fixed + 1 + 2 * p, fixed + 2 + 2 * p);
                star[a] = b;
                star[b] = a;
            }
            star
        })
        .collect()
}

/// Non-identity permutations of the middle elements commuting with `star`
/// (all of them when `star` is `None`), as full arrays.
fn symmetry_group(n: usize, star: Option<&[Elem]>) -> Vec<Vec<Elem>> {
    (1..n - 1)
        .permutations(n - 2)
        .map(|mid| {
            let mut p = vec![0];
            p.extend(mid);
            p.push(n - 1);
            p
        })
        .filter(|p| p.iter().enumerate().any(|(i, &v)| i != v))
        .filter(|p| star.is_none_or(|s| (0..n).all(|x| p[s[x]] == s[p[x]])))
        .collect()
}

struct Problem {
    n: usize,
    class: AlgebraClass,
    rules: Pruning,
    /// Free cells in row-major order.
    cells: Vec<usize>,
    group: Vec<Vec<Elem>>,
    inverses: Vec<Vec<Elem>>,
}

#[derive(Clone)]
struct State {
    table: Vec<Elem>,
    /// Index into `Problem::cells` from which unset cells are searched.
    next: usize,
}

struct Shared {
    nodes: AtomicU64,
    node_limit: u64,
    deadline: Option<Instant>,
    stop: AtomicBool,
}

impl Shared {
    /// Counts one node; false once a budget is exhausted.
    fn tick(&self) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return false;
        }
        let k = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        let out_of_time = k.is_multiple_of(1024) && self.deadline.is_some_and(|d| Instant::now() >= d);
        if k > self.node_limit || out_of_time {
            self.stop.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }
}

type Leaf = (CanonicalKey, FiniteAlgebra);

#[derive(Default)]
struct Found {
    leaves: u64,
    models: Vec<Leaf>,
}

impl Problem {
    /// Assigns `cell = v` and, under contraposition, its partner. Returns
    /// the cells written, or `None` on a conflict (nothing is written then).
    fn assign(&self, t: &mut [Elem], cell: usize, v: Elem) -> Option<Vec<usize>> {
        let n = self.n;
        let mut written = vec![cell];
        t[cell] = v;
        if self.rules.contrapositive {
            let (x, y) = (cell / n, cell % n);
            let (xs, ys) = (t[x * n], t[y * n]);
            let partner = ys * n + xs;
            if t[partner] == UNSET {
                t[partner] = v;
                written.push(partner);
            } else if t[partner] != v {
                t[cell] = UNSET;
                return None;
            }
        }
        Some(written)
    }

    fn consistent(&self, t: &[Elem]) -> bool {
        let n = self.n;
        let one = n - 1;
        let get = |x: Elem, y: Elem| if x == UNSET || y == UNSET { UNSET } else { t[x * n + y] };
        let r = self.rules;
        if r.exchange {
            for y in 0..n {
                for z in 0..n {
                    let yz = get(y, z);
                    if yz == UNSET {
                        continue;
                    }
                    for x in 0..n {
                        let lhs = get(x, yz);
                        if lhs == UNSET {
                            continue;
                        }
                        let rhs = get(y, get(x, z));
                        if rhs != UNSET && lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if r.commutative {
                    let (a, b) = (get(get(x, y), y), get(get(y, x), x));
                    if a != UNSET && b != UNSET && a != b {
                        return false;
                    }
                }
                if r.antisymmetric && x != y && get(x, y) == one && get(y, x) == one {
                    return false;
                }
                if r.qw1 {
                    let st = |v: Elem| get(v, 0);
                    let ys = st(y);
                    let meet = st(get(get(st(x), ys), ys));
                    let (a, b) = (get(x, meet), get(x, y));
                    if a != UNSET && b != UNSET && a != b {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// False when some symmetry maps the decided part of the table to a
    /// lexicographically smaller one.
    fn lex_minimal(&self, t: &[Elem]) -> bool {
        let n = self.n;
        self.group.iter().zip(&self.inverses).all(|(p, inv)| {
            for pos in 0..n * n {
                let a = t[pos];
                let src = t[inv[pos / n] * n + inv[pos % n]];
                if a == UNSET || src == UNSET {
                    return true;
                }
                let b = p[src];
                if b != a {
                    return b > a;
                }
            }
            true
        })
    }

    fn leaf(&self, t: &[Elem]) -> Result<Option<Leaf>, SearchError> {
        let n = self.n;
        let alg = FiniteAlgebra::new(default_names(n), t.to_vec(), n - 1, 0)
            .expect("search tables are well formed");
        if check_class(&alg, self.class)?.pass {
            let key = canonical_key(&alg);
            let alg = key.to_algebra();
            Ok(Some((key, alg)))
        } else {
            Ok(None)
        }
    }

    fn first_unset(&self, s: &State) -> Option<usize> {
        (s.next..self.cells.len()).find(|&i| s.table[self.cells[i]] == UNSET)
    }

    /// Children of a state, in value order. `None` marks a leaf.
    fn children(&self, s: &State, shared: &Shared) -> Option<Vec<State>> {
        let i = self.first_unset(s)?;
        let cell = self.cells[i];
        let mut out = Vec::new();
        for v in 0..self.n {
            if !shared.tick() {
                break;
            }
            let mut t = s.table.clone();
            if self.assign(&mut t, cell, v).is_none() {
                continue;
            }
            if self.consistent(&t) && self.lex_minimal(&t) {
                out.push(State { table: t, next: i + 1 });
            }
        }
        Some(out)
    }

    fn dfs(&self, s: &mut State, shared: &Shared, found: &mut Found) -> Result<(), SearchError> {
        let Some(i) = self.first_unset(s) else {
            found.leaves += 1;
            if let Some(leaf) = self.leaf(&s.table)? {
                found.models.push(leaf);
            }
            return Ok(());
        };
        let cell = self.cells[i];
        let saved = s.next;
        for v in 0..self.n {
            if !shared.tick() {
                return Ok(());
            }
            let Some(written) = self.assign(&mut s.table, cell, v) else {
                continue;
            };
            if self.consistent(&s.table) && self.lex_minimal(&s.table) {
                s.next = i + 1;
                self.dfs(s, shared, found)?;
                s.next = saved;
            }
            for w in written {
                s.table[w] = UNSET;
            }
        }
        Ok(())
    }
}

pub(super) struct Output {
    pub models: Vec<Leaf>,
    pub complete: bool,
    pub stats: SearchStats,
}

fn base_table(n: usize) -> Vec<Elem> {
    let one = n - 1;
    let mut t = vec![UNSET; n * n];
    for x in 0..n {
        t[x * n + x] = one;
        t[x * n + one] = one;
        t[one * n + x] = x;
        t[x] = one;
    }
    t
}

pub(super) fn run(
    n: usize,
    class: AlgebraClass,
    limits: &Limits,
    time: Option<Duration>,
) -> Result<Output, SearchError> {
    if n == 1 {
        let alg = FiniteAlgebra::new(default_names(1), vec![0], 0, 0).expect("trivial table is well formed");
        let pass = check_class(&alg, class)?.pass;
        let models = if pass {
            vec![(canonical_key(&alg), alg)]
        } else {
            Vec::new()
        };
        return Ok(Output {
            models,
            complete: true,
            stats: SearchStats {
                nodes: 1,
                leaves: 1,
                duplicates: 0,
            },
        });
    }

    let rules = pruning(class);
    let shared = Shared {
        nodes: AtomicU64::new(0),
        node_limit: limits.nodes.unwrap_or(u64::MAX),
        deadline: time.map(|d| Instant::now() + d),
        stop: AtomicBool::new(false),
    };

    // one subproblem per star form under involution, otherwise a single one
    let starts: Vec<(Option<Vec<Elem>>, Vec<Elem>)> = if rules.involution {
        star_forms(n)
            .into_iter()
            .map(|star| {
                let mut t = base_table(n);
                for x in 1..n - 1 {
                    t[x * n] = star[x];
                }
                (Some(star), t)
            })
            .collect()
    } else {
        vec![(None, base_table(n))]
    };

    let mut frontier: Vec<(usize, State)> = Vec::new();
    let mut problems = Vec::new();
    let mut found = Found::default();
    for (star, table) in starts {
        let group = symmetry_group(n, star.as_deref());
        let inverses = group
            .iter()
            .map(|p| {
                let mut inv = vec![0; n];
                for (i, &v) in p.iter().enumerate() {
                    inv[v] = i;
                }
                inv
            })
            .collect();
        let cells = (0..n * n).filter(|&c| table[c] == UNSET).collect();
        let problem = Problem {
            n,
            class,
            rules,
            cells,
            group,
            inverses,
        };
        if problem.consistent(&table) && problem.lex_minimal(&table) {
            frontier.push((problems.len(), State { table, next: 0 }));
        }
        problems.push(problem);
    }

    // breadth-first split until there is enough work to share
    while frontier.len() < SPLIT_TARGET && !shared.stop.load(Ordering::Relaxed) {
        let mut next = Vec::new();
        let mut grew = false;
        for (p, s) in frontier {
            match problems[p].children(&s, &shared) {
                None => {
                    found.leaves += 1;
                    if let Some(leaf) = problems[p].leaf(&s.table)? {
                        found.models.push(leaf);
                    }
                }
                Some(kids) => {
                    grew = true;
                    next.extend(kids.into_iter().map(|k| (p, k)));
                }
            }
        }
        frontier = next;
        if !grew {
            break;
        }
    }

    let search = |(p, mut s): (usize, State)| -> Result<Found, SearchError> {
        let mut f = Found::default();
        problems[p].dfs(&mut s, &shared, &mut f)?;
        Ok(f)
    };
    let parts: Vec<Result<Found, SearchError>> = if limits.workers > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(limits.workers)
            .build()
            .expect("thread pool");
        pool.install(|| frontier.into_par_iter().map(search).collect())
    } else {
        frontier.into_iter().map(search).collect()
    };

    let mut by_key: BTreeMap<CanonicalKey, FiniteAlgebra> = BTreeMap::new();
    let (mut passing, mut leaves) = (0u64, 0u64);
    for part in parts.into_iter().chain(std::iter::once(Ok(found))) {
        let part = part?;
        leaves += part.leaves;
        for (k, a) in part.models {
            passing += 1;
            by_key.entry(k).or_insert(a);
        }
    }
    let models: Vec<Leaf> = by_key.into_iter().collect();
    Ok(Output {
        complete: !shared.stop.load(Ordering::Relaxed),
        stats: SearchStats {
            nodes: shared.nodes.load(Ordering::Relaxed),
            leaves,
            duplicates: passing - models.len() as u64,
        },
        models,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_forms_are_involutions() {
        for n in 2..8 {
            let forms = star_forms(n);
            assert_eq!(forms.len(), (n - 2) / 2 + 1);
            for s in forms {
                assert!((0..n).all(|x| s[s[x]] == x));
            }
        }
    }

    #[test]
    fn group_sizes() {
        assert_eq!(symmetry_group(5, None).len(), 5);
        // centralizer of (1 2) fixing 3 in S3 on {1,2,3}: order 2
        let star = vec![4, 3, 2, 1, 0];
        assert_eq!(symmetry_group(5, Some(&star)).len(), 1);
    }
}
