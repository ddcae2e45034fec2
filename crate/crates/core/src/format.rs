//! Line-oriented text format for algebras.
//!
//! ```text
//! elements: 0 a 1
//! one: 1
//! zero: 0
//! row 0: 1 1 1
//! row a: a 1 1
//! row 1: 0 a 1
//! ```
//!
//! `#` starts a comment; blank lines are ignored. Rows may appear in any
//! order but each element needs exactly one.

use crate::algebra::{Elem, FiniteAlgebra};
use crate::error::AlgebraError;

fn parse_err(line: usize, message: impl Into<String>) -> AlgebraError {
    AlgebraError::Parse {
        line,
        message: message.into(),
    }
}

/// Parses the text format and checks that `zero` is the bottom element.
pub fn parse_algebra(text: &str) -> Result<FiniteAlgebra, AlgebraError> {
    let mut names: Option<Vec<String>> = None;
    let mut one: Option<(usize, String)> = None;
    let mut zero: Option<(usize, String)> = None;
    let mut rows: Vec<(usize, String, Vec<String>)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (head, rest) = line
            .split_once(':')
            .ok_or_else(|| parse_err(line_no, "expected `<key>: <values>`"))?;
        let head = head.trim();
        let values: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
        match head {
            "elements" => {
                if names.is_some() {
                    return Err(parse_err(line_no, "duplicate `elements` line"));
                }
                if values.is_empty() {
                    return Err(parse_err(line_no, "no elements listed"));
                }
                names = Some(values);
            }
            "one" | "zero" => {
                let [v] = values.as_slice() else {
                    return Err(parse_err(line_no, format!("`{head}` takes one name")));
                };
                let slot = if head == "one" { &mut one } else { &mut zero };
                if slot.is_some() {
                    return Err(parse_err(line_no, format!("duplicate `{head}` line")));
                }
                *slot = Some((line_no, v.clone()));
            }
            _ => {
                let Some(row_name) = head.strip_prefix("row") else {
                    return Err(parse_err(line_no, format!("unknown key `{head}`")));
                };
                let row_name = row_name.trim();
                if row_name.is_empty() || row_name.contains(char::is_whitespace) {
                    return Err(parse_err(line_no, "expected `row <name>:`"));
                }
                rows.push((line_no, row_name.to_string(), values));
            }
        }
    }

    let names = names.ok_or_else(|| parse_err(0, "missing `elements` line"))?;
    let n = names.len();
    let lookup = |line: usize, name: &str| -> Result<Elem, AlgebraError> {
        names
            .iter()
            .position(|x| x == name)
            .ok_or_else(|| parse_err(line, format!("unknown element `{name}`")))
    };
    let (one_line, one_name) = one.ok_or_else(|| parse_err(0, "missing `one` line"))?;
    let (zero_line, zero_name) = zero.ok_or_else(|| parse_err(0, "missing `zero` line"))?;
    let one = lookup(one_line, &one_name)?;
    let zero = lookup(zero_line, &zero_name)?;

    let mut imp: Vec<Option<Elem>> = vec![None; n * n];
    let mut seen = vec![false; n];
    for (line, row_name, values) in &rows {
        let x = lookup(*line, row_name)?;
        if std::mem::replace(&mut seen[x], true) {
            return Err(parse_err(*line, format!("duplicate row `{row_name}`")));
        }
        if values.len() != n {
            return Err(parse_err(
                *line,
                format!("row `{row_name}` has {} entries, expected {n}", values.len()),
            ));
        }
        for (y, v) in values.iter().enumerate() {
            imp[x * n + y] = Some(lookup(*line, v)?);
        }
    }
    if let Some(missing) = seen.iter().position(|s| !s) {
        return Err(parse_err(0, format!("missing row `{}`", names[missing])));
    }
    let imp = imp.into_iter().map(|v| v.expect("all rows present")).collect();

    let alg = FiniteAlgebra::new(names, imp, one, zero)?;
    if let Some(x) = alg.elements().find(|&x| !alg.leq(zero, x)) {
        return Err(AlgebraError::NotBounded {
            zero: alg.name(zero).to_string(),
            x: alg.name(x).to_string(),
            one: alg.name(one).to_string(),
        });
    }
    Ok(alg)
}

/// Serializes an algebra; rows appear in element order.
pub fn write_algebra(alg: &FiniteAlgebra) -> String {
    let mut out = String::new();
    out.push_str("elements: ");
    out.push_str(&alg.names().join(" "));
    out.push('\n');
    out.push_str(&format!("one: {}\n", alg.name(alg.one())));
    out.push_str(&format!("zero: {}\n", alg.name(alg.zero())));
    for x in alg.elements() {
        let row: Vec<&str> = alg.elements().map(|y| alg.name(alg.imp(x, y))).collect();
        out.push_str(&format!("row {}: {}\n", alg.name(x), row.join(" ")));
    }
    out
}
