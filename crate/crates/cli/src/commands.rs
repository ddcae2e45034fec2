use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::time::Duration;

use serde_json::{json, Map, Value};

use qw_core::axioms::{check_class, check_quasi_linear, classify, StrictOrder};
use qw_core::center::{
    hasse_export, oml_center, oml_distributivity_witness, verify_center_lattice,
    verify_kleene_center, verify_oml_center, verify_quasilinear_center, verify_wajsberg_center,
    wajsberg_center, BoundScope, CenterReport, HasseOrder,
};
use qw_core::format::{parse_algebra, write_algebra};
use qw_core::search::{
    enumerate_models, find_countermodel, Countermodel, Limits, Manifest, SearchSpec,
};
use qw_core::term::{format_assignment, holds, parse_statement, run_corpus, Verdict};
use qw_core::{builtin, AlgebraClass, ClassReport, Elem, FiniteAlgebra, Subset};

use crate::{Bound, Budget, Cli, Command, Order, Scope};

pub const PASS: u8 = 0;
pub const FAIL: u8 = 1;
pub const EXHAUSTED: u8 = 3;

pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub code: u8,
}

type Result<T> = std::result::Result<T, String>;

/// A readable file wins over a builtin of the same name.
fn load(arg: &str) -> Result<FiniteAlgebra> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = fs::read_to_string(path).map_err(|e| format!("{arg}: {e}"))?;
        return parse_algebra(&text).map_err(|e| format!("{arg}: {e}"));
    }
    builtin::by_name(arg).map_err(|_| format!("{arg}: no such file or builtin algebra"))
}

fn class(tag: &str) -> Result<AlgebraClass> {
    tag.parse()
}

fn limits(b: &Budget) -> Result<Limits> {
    let time = match b.time {
        Some(t) if !(t > 0.0 && t.is_finite()) => return Err("--time must be positive".into()),
        t => t.map(Duration::from_secs_f64),
    };
    if b.nodes == Some(0) {
        return Err("--nodes must be positive".into());
    }
    Ok(Limits {
        nodes: b.nodes,
        time,
        workers: b.workers,
    })
}

fn scope_set(alg: &FiniteAlgebra, scope: Scope) -> Subset {
    match scope {
        Scope::All => Subset::full(alg.size()),
        Scope::Z => wajsberg_center(alg),
        Scope::O => oml_center(alg),
    }
}

fn assignment_json(alg: &FiniteAlgebra, a: &[(String, Elem)]) -> Value {
    let mut m = Map::new();
    for (v, e) in a {
        m.insert(v.clone(), Value::from(alg.name(*e)));
    }
    Value::Object(m)
}

fn set_json(alg: &FiniteAlgebra, s: &Subset) -> Value {
    s.iter().map(|e| alg.name(e)).collect()
}

fn pass_fail(p: bool) -> &'static str {
    if p {
        "PASS"
    } else {
        "FAIL"
    }
}

fn class_line(alg: &FiniteAlgebra, r: &ClassReport) -> String {
    let mut line = format!("{} {}", pass_fail(r.pass), r.class);
    if let Some(w) = &r.witness {
        write!(line, ": {}", w.render(alg)).unwrap();
    }
    if let Some(via) = r.via {
        write!(line, " (inherited from {via})").unwrap();
    }
    line
}

fn class_json(alg: &FiniteAlgebra, r: &ClassReport) -> Value {
    json!({
        "class": r.class.name(),
        "pass": r.pass,
        "witness": r.witness.as_ref().map(|w| json!({
            "axiom": w.axiom,
            "assignment": assignment_json(alg, &w.assignment),
        })),
        "via": r.via.map(|c| c.name()),
    })
}

fn center_lines(out: &mut String, label: &str, alg: &FiniteAlgebra, r: &CenterReport) {
    writeln!(out, "{} {label}", pass_fail(r.passed())).unwrap();
    for f in &r.failures {
        writeln!(out, "  violated {}", f.render(alg)).unwrap();
    }
}

fn center_json(label: &str, alg: &FiniteAlgebra, r: &CenterReport) -> Value {
    json!({
        "check": label,
        "pass": r.passed(),
        "set": set_json(alg, &r.center),
        "closure_ok": r.closure_ok,
        "structure_ok": r.structure_ok,
        "failures": r.failures.iter().map(|f| f.render(alg)).collect::<Vec<_>>(),
    })
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Check { file, class: tag, force } => check(&load(file)?, tag.as_deref(), *force),
        Command::Centers { file } => centers(&load(file)?),
        Command::Verify { file, bound } => verify(&load(file)?, *bound),
        Command::Eval { file, expr, scope } => eval(&load(file)?, expr, *scope),
        Command::Refute {
            expr,
            class: tag,
            max_size,
            out,
            budget,
        } => refute(expr, class(tag)?, *max_size, out.as_deref(), &limits(budget)?),
        Command::Enumerate {
            size,
            class: tag,
            count_only,
            out,
            budget,
        } => enumerate(*size, class(tag)?, *count_only, out.as_deref(), &limits(budget)?),
        Command::Hasse { file, order, scope } => hasse(&load(file)?, *order, *scope),
        Command::Builtin { name, out } => builtin_cmd(name, out.as_deref()),
    }
}

fn check(alg: &FiniteAlgebra, tag: Option<&str>, force: bool) -> Result<Outcome> {
    let reports = match tag {
        Some(t) => vec![check_class(alg, class(t)?).map_err(|e| e.to_string())?],
        None => classify(alg, force).map_err(|e| e.to_string())?,
    };
    let text = reports.iter().map(|r| class_line(alg, r) + "\n").collect();
    let json = Value::Array(reports.iter().map(|r| class_json(alg, r)).collect());
    // the full hierarchy is a listing, not a verdict
    let code = if tag.is_none() || reports.iter().all(|r| r.pass) {
        PASS
    } else {
        FAIL
    };
    Ok(Outcome { text, json, code })
}

fn centers(alg: &FiniteAlgebra) -> Result<Outcome> {
    let z = verify_wajsberg_center(alg);
    let o = verify_oml_center(alg);
    let mut text = String::new();
    writeln!(text, "Z = {}", alg.format_set(z.center.iter())).unwrap();
    writeln!(text, "O = {}", alg.format_set(o.center.iter())).unwrap();
    center_lines(&mut text, "Z structure", alg, &z);
    center_lines(&mut text, "O structure", alg, &o);
    let json = json!({
        "Z": center_json("wajsberg-center", alg, &z),
        "O": center_json("oml-center", alg, &o),
    });
    let code = if z.passed() && o.passed() { PASS } else { FAIL };
    Ok(Outcome { text, json, code })
}

fn verify(alg: &FiniteAlgebra, bound: Bound) -> Result<Outcome> {
    let bound = match bound {
        Bound::Ambient => BoundScope::Ambient,
        Bound::Subset => BoundScope::Subset,
    };
    let mut text = String::new();
    let mut checks = Vec::new();
    let mut ok = true;

    let qw = check_class(alg, AlgebraClass::QW).map_err(|e| e.to_string())?;
    writeln!(text, "{}", class_line(alg, &qw)).unwrap();
    checks.push(class_json(alg, &qw));
    ok &= qw.pass;

    let mut reports = vec![
        ("wajsberg-center", verify_wajsberg_center(alg)),
        ("center-lattice", verify_center_lattice(alg, bound)),
        ("kleene-center", verify_kleene_center(alg)),
        ("oml-center", verify_oml_center(alg)),
    ];
    // the linear-center theorem presupposes quasi-linearity
    let ql = check_quasi_linear(alg, StrictOrder::Leq).map_err(|e| e.to_string())?;
    if ql.pass {
        reports.push(("quasilinear-center", verify_quasilinear_center(alg)));
    }
    for (label, r) in &reports {
        center_lines(&mut text, label, alg, r);
        checks.push(center_json(label, alg, r));
        ok &= r.passed();
    }
    if !ql.pass {
        writeln!(text, "SKIP quasilinear-center (not quasi-linear)").unwrap();
    }

    let results = run_corpus(alg);
    let failures: Vec<_> = results.iter().filter(|r| r.is_failure()).collect();
    let asserted = results.iter().filter(|r| !r.entry.probe).count();
    writeln!(
        text,
        "{} corpus {}/{asserted}",
        pass_fail(failures.is_empty()),
        asserted - failures.len()
    )
    .unwrap();
    ok &= failures.is_empty();
    let mut corpus = Vec::new();
    for r in &results {
        let witness = r.verdict.witness().map(|w| format_assignment(alg, w));
        if r.entry.probe || !r.verdict.holds() {
            let tag = if r.entry.probe { "probe" } else { "violated" };
            let verdict = match &witness {
                None => "holds".to_string(),
                Some(w) if w.is_empty() => "fails".to_string(),
                Some(w) => format!("fails at {w}"),
            };
            writeln!(text, "  {tag} {} [{}]: {verdict}", r.entry.id, r.entry.scope).unwrap();
        }
        corpus.push(json!({
            "id": r.entry.id,
            "scope": r.entry.scope.name(),
            "probe": r.entry.probe,
            "holds": r.verdict.holds(),
            "witness": r.verdict.witness().map(|w| assignment_json(alg, w)),
        }));
    }

    let note = oml_distributivity_witness(alg).map(|(x, y, z)| {
        let n = |e: Elem| alg.name(e);
        let lhs = alg.sup_l(x, alg.inf_l(y, z));
        let rhs = alg.inf_l(alg.sup_l(x, y), alg.sup_l(x, z));
        format!(
            "O not distributive at x={} y={} z={}: x || (y && z) = {} != {} = (x || y) && (x || z)",
            n(x),
            n(y),
            n(z),
            n(lhs),
            n(rhs)
        )
    });
    if let Some(note) = &note {
        writeln!(text, "NOTE {note}").unwrap();
    }
    let json = json!({
        "pass": ok,
        "checks": checks,
        "corpus": corpus,
        "note": note,
    });
    Ok(Outcome {
        text,
        json,
        code: if ok { PASS } else { FAIL },
    })
}

fn parse(expr: &str) -> Result<qw_core::term::Statement> {
    parse_statement(expr).map_err(|e| format!("in `{expr}`: {e}"))
}

fn eval(alg: &FiniteAlgebra, expr: &str, scope: Scope) -> Result<Outcome> {
    let s = parse(expr)?;
    let verdict = holds(alg, &s, &scope_set(alg, scope)).map_err(|e| e.to_string())?;
    let (text, code) = match &verdict {
        Verdict::Holds => ("holds\n".to_string(), PASS),
        Verdict::Refuted(w) if w.is_empty() => ("fails\n".to_string(), FAIL),
        Verdict::Refuted(w) => (format!("fails at {}\n", format_assignment(alg, w)), FAIL),
    };
    let json = json!({
        "statement": s.to_string(),
        "holds": verdict.holds(),
        "witness": verdict.witness().map(|w| assignment_json(alg, w)),
    });
    Ok(Outcome { text, json, code })
}

fn refute(
    expr: &str,
    class: AlgebraClass,
    max_size: usize,
    out: Option<&Path>,
    limits: &Limits,
) -> Result<Outcome> {
    let s = parse(expr)?;
    let result = find_countermodel(&s, class, max_size, limits).map_err(|e| e.to_string())?;
    Ok(match result {
        Countermodel::Found {
            algebra,
            key,
            witness,
        } => {
            let w = format_assignment(&algebra, &witness);
            let body = write_algebra(&algebra);
            let mut text = format!(
                "countermodel of size {} (key {key})\nfails at {w}\n",
                algebra.size()
            );
            match out {
                Some(p) => {
                    fs::write(p, &body).map_err(|e| format!("{}: {e}", p.display()))?;
                    writeln!(text, "written to {}", p.display()).unwrap();
                }
                None => text.push_str(&body),
            }
            Outcome {
                text,
                json: json!({
                    "result": "countermodel",
                    "size": algebra.size(),
                    "key": key.to_string(),
                    "witness": assignment_json(&algebra, &witness),
                    "algebra": body,
                }),
                code: FAIL,
            }
        }
        Countermodel::HoldsUpTo { max_size } => Outcome {
            text: format!("holds up to size {max_size}\n"),
            json: json!({"result": "holds", "max_size": max_size}),
            code: PASS,
        },
        Countermodel::Exhausted { size } => Outcome {
            text: format!("budget exhausted at size {size}; smaller sizes hold\n"),
            json: json!({"result": "exhausted", "size": size}),
            code: EXHAUSTED,
        },
    })
}

fn enumerate(
    size: usize,
    class: AlgebraClass,
    count_only: bool,
    out: Option<&Path>,
    limits: &Limits,
) -> Result<Outcome> {
    let spec = SearchSpec {
        size,
        class,
        statement: None,
        limits: limits.clone(),
    };
    let stream = enumerate_models(&spec).map_err(|e| e.to_string())?;
    let (manifest, files) = Manifest::from_stream(&stream);
    if let Some(dir) = out {
        fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
        for (name, body) in &files {
            let p = dir.join(name);
            fs::write(&p, body).map_err(|e| format!("{}: {e}", p.display()))?;
        }
        let m = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
        let p = dir.join("manifest.json");
        fs::write(&p, m + "\n").map_err(|e| format!("{}: {e}", p.display()))?;
    }
    let mut text = format!(
        "class {class} size {size} count {}{}\n",
        manifest.count,
        if manifest.complete { "" } else { " (partial: budget exhausted)" }
    );
    if !count_only {
        for m in &manifest.models {
            writeln!(text, "{} {} {}", m.file, m.key, m.sha256).unwrap();
        }
    }
    let json = if count_only {
        json!({"class": class.name(), "size": size, "count": manifest.count, "complete": manifest.complete})
    } else {
        serde_json::to_value(&manifest).expect("manifest serializes")
    };
    let code = if manifest.complete { PASS } else { EXHAUSTED };
    Ok(Outcome { text, json, code })
}

fn hasse(alg: &FiniteAlgebra, order: Order, scope: Scope) -> Result<Outcome> {
    let order = match order {
        Order::Leq => HasseOrder::Leq,
        Order::LeqQ => HasseOrder::LeqQ,
    };
    let text = hasse_export(alg, order, &scope_set(alg, scope));
    let (mut nodes, mut edges) = (Vec::new(), Vec::new());
    for line in text.lines() {
        let parts: Vec<&str> = line.split(' ').collect();
        match parts.as_slice() {
            ["node", x] => nodes.push(json!(x)),
            ["edge", x, y] => edges.push(json!([x, y])),
            _ => {}
        }
    }
    Ok(Outcome {
        json: json!({"nodes": nodes, "edges": edges}),
        text,
        code: PASS,
    })
}

fn builtin_cmd(name: &str, out: Option<&Path>) -> Result<Outcome> {
    let alg = builtin::by_name(name).map_err(|e| {
        format!("{e}; available: {}", builtin::BUILTIN_NAMES.join(", "))
    })?;
    let body = write_algebra(&alg);
    let text = match out {
        Some(p) => {
            fs::write(p, &body).map_err(|e| format!("{}: {e}", p.display()))?;
            format!("written to {}\n", p.display())
        }
        None => body.clone(),
    };
    Ok(Outcome {
        text,
        json: json!({"name": name, "algebra": body}),
        code: PASS,
    })
}
