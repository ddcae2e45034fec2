//! Named algebras shipped with the workbench.

use crate::algebra::FiniteAlgebra;
use crate::error::AlgebraError;
use crate::format::parse_algebra;

/// Text of the six-element non-commutative example.
pub const EXAMPLE_5_13_TEXT: &str = include_str!("../data/example-5.13.alg");

pub const BUILTIN_NAMES: &[&str] = &["example-5.13", "boolean-2", "lukasiewicz-<n>"];

pub fn example_5_13() -> FiniteAlgebra {
    parse_algebra(EXAMPLE_5_13_TEXT).expect("embedded example is well formed")
}

/// The two-element Boolean algebra `{0, 1}`.
pub fn boolean2() -> FiniteAlgebra {
    FiniteAlgebra::from_rows(&["0", "1"], &[&[1, 1], &[0, 1]], 1, 0)
        .expect("boolean table is well formed")
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The `n`-element Łukasiewicz chain `{0, 1/(n-1), ..., 1}` with
/// `x -> y = min(1, 1 - x + y)`.
pub fn lukasiewicz(n: usize) -> Result<FiniteAlgebra, AlgebraError> {
    if n == 0 {
        return Err(AlgebraError::Empty);
    }
    let top = n - 1;
    let names = (0..n)
        .map(|i| match i {
            0 => "0".to_string(),
            i if i == top => "1".to_string(),
            i => {
                let g = gcd(i, top);
                format!("{}/{}", i / g, top / g)
            }
        })
        .collect();
    let imp = (0..n * n)
        .map(|c| {
            let (x, y) = (c / n, c % n);
            (top - x + y).min(top)
        })
        .collect();
    FiniteAlgebra::new(names, imp, top, 0)
}

/// Resolves a builtin by name: `example-5.13`, `boolean-2`, `lukasiewicz-<n>`.
pub fn by_name(name: &str) -> Result<FiniteAlgebra, AlgebraError> {
    match name {
        "example-5.13" => Ok(example_5_13()),
        "boolean-2" => Ok(boolean2()),
        _ => {
            let n = name
                .strip_prefix("lukasiewicz-")
                .and_then(|n| n.parse::<usize>().ok())
                .filter(|&n| (1..=crate::algebra::EAGER_DERIVE_LIMIT).contains(&n))
                .ok_or_else(|| AlgebraError::UnknownBuiltin(name.to_string()))?;
            lukasiewicz(n)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_is_forced_table() {
        let b = by_name("boolean-2").unwrap();
        assert_eq!(b.imp_table(), &[1, 1, 0, 1]);
    }

    #[test]
    fn lukasiewicz_four() {
        let l = by_name("lukasiewicz-4").unwrap();
        assert_eq!(l.names(), &["0", "1/3", "2/3", "1"]);
        // x -> y = min(1, 1 - x + y) on thirds
        #[rustfmt::skip]
        let expected = [
            3, 3, 3, 3,
            2, 3, 3, 3,
            1, 2, 3, 3,
            0, 1, 2, 3,
        ];
        assert_eq!(l.imp_table(), &expected);
    }

    #[test]
    fn unknown_builtins() {
        for name in ["example", "lukasiewicz-0", "lukasiewicz-x", "boolean-3"] {
            assert!(by_name(name).is_err(), "{name}");
        }
    }
}
