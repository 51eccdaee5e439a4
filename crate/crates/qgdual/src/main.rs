//! Command-line driver. Exit codes: 0 pass, 1 check failure, 2 input error.

use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand};
use qgdual::corpus::{resolve_group, FILES};
use qgdual::schema::{algebra_from_str, load_algebra, to_json, GroupFile};
use qgdual::suite::run_suite;
use qgdual_core::corpus::{trivial_algebra, z2_algebra};
use qgdual_core::dsl::{check_identity, compile, evaluate, parse, parse_identity, AlgebraSide, Env, Verdict};
use qgdual_core::duality::duality_comparison;
use qgdual_core::forms::{build_ayd, build_yd, paramixed_check, FormComplex};
use qgdual_core::modular::{corpus_pairs, describe, dualize_pair, verify_pair_with, ModularPair};
use qgdual_core::xcomplex::{invariant_report, QuotientComplex, XComplex};
use qgdual_core::{FiniteQuantumGroup, ModuleAlgebra, SparseMatrix};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "qgdual", version, about = "Exact checks for finite quantum groups and their duality")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Highest form degree built.
    #[arg(long, global = true, default_value_t = 2)]
    max_degree: usize,
    /// Include operator matrices in the output.
    #[arg(long, global = true)]
    dump_ops: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Hopf axioms, integrals and biduality.
    Validate { group: String },
    /// Print the dual quantum group as JSON.
    Dual { group: String },
    /// Enumerate modular pairs over the candidate lists.
    Modpairs { group: String },
    /// Build the form complexes and check the paramixed relations.
    Forms {
        group: String,
        #[arg(long)]
        algebra: Option<String>,
    },
    /// The X-complex, optionally restricted to invariants or coinvariants
    /// of the dual action.
    Xcomplex {
        group: String,
        #[arg(long)]
        algebra: Option<String>,
        /// Use the Yetter-Drinfeld picture for this pair.
        #[arg(long)]
        pair: Option<usize>,
        #[arg(long)]
        invariants: bool,
        #[arg(long)]
        coinvariants: bool,
    },
    /// Compare the double duality map with the trace and isomorphism side.
    Duality {
        group: String,
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long, default_value_t = 0)]
        pair: usize,
        #[arg(long, default_value_t = 1)]
        degree: usize,
    },
    /// Run the regression suite.
    Suite {
        /// Comma separated section names or tags; empty runs everything.
        #[arg(long, default_value = "")]
        filter: String,
    },
    /// Evaluate an expression, or check an identity `lhs == rhs`.
    Dsl {
        group: String,
        expr: String,
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long)]
        pair: Option<usize>,
    },
}

/// An input problem, as opposed to a failed check.
struct InputFailure(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for InputFailure {
    fn from(e: E) -> Self {
        InputFailure(e.into())
    }
}

struct Output {
    passed: bool,
    json: Value,
    text: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                print!("{}", to_json(&out.json));
            } else {
                print!("{}", out.text);
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(InputFailure(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn group(arg: &str) -> Result<FiniteQuantumGroup, InputFailure> {
    Ok(resolve_group(arg).with_context(|| format!("loading group {arg}"))?)
}

fn dual(h: &FiniteQuantumGroup) -> Result<FiniteQuantumGroup, InputFailure> {
    Ok(h.dualize()?)
}

/// `trivial`, `z2`, a shipped algebra name, or a file path. Defaults to the
/// trivial algebra.
fn algebra(arg: Option<&str>, h: &FiniteQuantumGroup) -> Result<ModuleAlgebra, InputFailure> {
    match arg {
        None | Some("trivial") => Ok(trivial_algebra(h)),
        Some("z2") => z2_algebra(h).ok_or_else(|| InputFailure(anyhow!("no two-dimensional algebra for {}", h.name))),
        Some(other) => {
            let shipped = FILES
                .iter()
                .flat_map(|(_, _, algs)| algs.iter())
                .filter_map(|t| algebra_from_str(t, h).ok())
                .find(|a| a.name == other);
            match shipped {
                Some(a) => Ok(a),
                None => Ok(load_algebra(other, h).with_context(|| format!("loading algebra {other}"))?),
            }
        }
    }
}

fn pick_pair(h: &FiniteQuantumGroup, k: usize) -> Result<ModularPair, InputFailure> {
    let pairs = corpus_pairs(h)?;
    pairs
        .get(k)
        .cloned()
        .ok_or_else(|| InputFailure(anyhow!("{} has {} modular pairs, no pair {k}", h.name, pairs.len())))
}

fn matrix_json(m: &SparseMatrix) -> Value {
    let entries: Vec<Value> = (0..m.ncols())
        .flat_map(|j| m.col(j).iter().map(move |(i, q)| json!([i, j, q.to_text()])).collect::<Vec<_>>())
        .collect();
    json!({"shape": [m.rows(), m.ncols()], "entries": entries})
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::Equal => String::from("holds"),
        Verdict::NotEqual { witness, outputs, lhs, rhs } => {
            format!("FAILS at {witness:?} -> {outputs:?}: {lhs} vs {rhs}")
        }
    }
}

fn run(cli: &Cli) -> Result<Output, InputFailure> {
    match &cli.command {
        Command::Validate { group: g } => validate(&group(g)?),
        Command::Dual { group: g } => {
            let d = dual(&group(g)?)?;
            let file = GroupFile::from_group(&d);
            Ok(Output {
                passed: true,
                text: to_json(&file),
                json: serde_json::to_value(&file)?,
            })
        }
        Command::Modpairs { group: g } => modpairs(&group(g)?),
        Command::Forms { group: g, algebra: a } => {
            let h = group(g)?;
            let a = algebra(a.as_deref(), &h)?;
            forms(cli, &h, &a)
        }
        Command::Xcomplex {
            group: g,
            algebra: a,
            pair,
            invariants,
            coinvariants,
        } => {
            let h = group(g)?;
            let a = algebra(a.as_deref(), &h)?;
            xcomplex(&h, &a, *pair, *invariants, *coinvariants)
        }
        Command::Duality {
            group: g,
            algebra: a,
            pair,
            degree,
        } => {
            let h = group(g)?;
            let a = algebra(a.as_deref(), &h)?;
            duality(cli, &h, &a, *pair, *degree)
        }
        Command::Suite { filter } => {
            let r = run_suite(filter)?;
            Ok(Output {
                passed: r.passed,
                text: r.render_text(),
                json: serde_json::to_value(&r)?,
            })
        }
        Command::Dsl {
            group: g,
            expr,
            algebra: a,
            pair,
        } => {
            let h = group(g)?;
            let a = algebra(a.as_deref(), &h)?;
            dsl(&h, &a, *pair, expr)
        }
    }
}

fn validate(h: &FiniteQuantumGroup) -> Result<Output, InputFailure> {
    let d = dual(h)?;
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut passed = true;
    for (who, g) in [(h.name.as_str(), h), (d.name.as_str(), &d)] {
        for a in g.validate().axioms {
            passed &= a.passed;
            let w = a.witness.as_ref().map(|w| w.to_string());
            text.push_str(&format!("{:<4} {who}: {}{}\n", if a.passed { "ok" } else { "FAIL" }, a.name, w.as_ref().map(|w| format!(" {w}")).unwrap_or_default()));
            rows.push(json!({"group": who, "axiom": a.name, "passed": a.passed, "witness": w}));
        }
    }
    let bidual = d.dualize()?.same_structure(h);
    passed &= bidual;
    text.push_str(&format!("{:<4} biduality\n", if bidual { "ok" } else { "FAIL" }));
    Ok(Output {
        passed,
        json: json!({"group": h.name, "axioms": rows, "biduality": bidual, "passed": passed}),
        text,
    })
}

fn modpairs(h: &FiniteQuantumGroup) -> Result<Output, InputFailure> {
    let hhat = dual(h)?;
    let pairs = corpus_pairs(h)?;
    let dual_basis: Vec<String> = hhat.basis.clone();
    let mut rows = Vec::new();
    let mut text = format!("{}: {} modular pairs\n", h.name, pairs.len());
    let mut passed = true;
    for (k, p) in pairs.iter().enumerate() {
        let d = dualize_pair(p);
        let ok = verify_pair_with(&hhat, h, &d.sigma, &d.delta)?.passed();
        passed &= ok;
        let (s, c) = (describe(&h.basis, &p.sigma), describe(&dual_basis, &p.delta));
        text.push_str(&format!("  {k}: sigma = {s}, delta = {c}; dual pair {}\n", if ok { "verifies" } else { "FAILS" }));
        rows.push(json!({"sigma": s, "delta": c, "dual_verifies": ok}));
    }
    Ok(Output {
        passed,
        json: json!({"group": h.name, "pairs": rows, "passed": passed}),
        text,
    })
}

fn complex_json(c: &FormComplex, dump: bool) -> Value {
    let mut v = json!({"dims": c.dims()});
    if dump {
        let all = |ms: &[SparseMatrix]| ms.iter().map(matrix_json).collect::<Vec<_>>();
        v["d"] = json!(all(&c.d));
        v["b"] = json!(all(&c.b));
        v["B"] = json!(all(&c.big_b));
        v["T"] = json!(all(&c.t));
    }
    v
}

fn forms(cli: &Cli, h: &FiniteQuantumGroup, a: &ModuleAlgebra) -> Result<Output, InputFailure> {
    let n = cli.max_degree;
    let mut pictures = Vec::new();
    let mut text = String::new();
    let mut passed = true;
    let ayd = build_ayd(h, a, n);
    let mut complexes = vec![(String::from("AYD"), ayd)];
    let hhat = dual(h)?;
    for (k, p) in corpus_pairs(h)?.iter().enumerate() {
        complexes.push((format!("YD pair {k}"), build_yd(h, &hhat, a, p, n)));
    }
    for (name, c) in &complexes {
        text.push_str(&format!("{name}: dims {:?}\n", c.dims()));
        let mut checks = Vec::new();
        for (what, v) in paramixed_check(c) {
            passed &= v.is_equal();
            text.push_str(&format!("  {what}: {}\n", verdict_text(&v)));
            checks.push(json!({"check": what, "passed": v.is_equal()}));
        }
        let mut v = complex_json(c, cli.dump_ops);
        v["picture"] = json!(name);
        v["checks"] = json!(checks);
        pictures.push(v);
    }
    Ok(Output {
        passed,
        json: json!({"group": h.name, "algebra": a.name, "max_degree": n, "complexes": pictures, "passed": passed}),
        text,
    })
}

fn xcomplex(h: &FiniteQuantumGroup, a: &ModuleAlgebra, pair: Option<usize>, inv: bool, coinv: bool) -> Result<Output, InputFailure> {
    let hhat = dual(h)?;
    let x = match pair {
        Some(k) => XComplex::yd(h, &hhat, a, &pick_pair(h, k)?),
        None => XComplex::ayd(h, a),
    };
    let mut passed = true;
    let mut text = format!("X-complex of {} over {}: dims {:?}\n", a.name, h.name, x.dims());
    let mut checks = Vec::new();
    for (what, v) in x.paracomplex_check() {
        passed &= v.is_equal();
        text.push_str(&format!("  {what}: {}\n", verdict_text(&v)));
        checks.push(json!({"check": what, "passed": v.is_equal()}));
    }
    let mut out = json!({"group": h.name, "algebra": a.name, "dims": x.dims(), "checks": checks});
    let report = |label: &str, r: qgdual_core::xcomplex::SubquotientReport, text: &mut String| {
        text.push_str(&format!(
            "{label}: dims {:?}, T = id {}, square zero {}, homology {:?}\n",
            r.dims, r.t_is_identity, r.square_zero, r.homology
        ));
        json!({"dims": r.dims, "t_is_identity": r.t_is_identity, "square_zero": r.square_zero, "homology": r.homology})
    };
    if inv {
        let r = invariant_report(&x, &x.invariants(&hhat.counit));
        out["invariants"] = report("invariants", r, &mut text);
    }
    if coinv {
        let r = QuotientComplex::new(&x, x.coinvariant_relations(&hhat.counit)).report();
        out["coinvariants"] = report("coinvariants", r, &mut text);
    }
    out["passed"] = json!(passed);
    Ok(Output { passed, json: out, text })
}

fn duality(cli: &Cli, h: &FiniteQuantumGroup, a: &ModuleAlgebra, k: usize, n: usize) -> Result<Output, InputFailure> {
    let hhat = dual(h)?;
    let p = pick_pair(h, k)?;
    let c = duality_comparison(h, &hhat, a, &p, n)?;
    let v = c.verdict();
    let passed = v.is_equal();
    let text = format!("{} / {} / pair {k}, degree {n}: composite {}x{}, {}\n", h.name, a.name, c.composite.rows(), c.composite.ncols(), verdict_text(&v));
    let mut out = json!({"group": h.name, "algebra": a.name, "pair": k, "degree": n, "passed": passed});
    if cli.dump_ops {
        out["composite"] = matrix_json(&c.composite);
        out["rhs"] = matrix_json(&c.t.compose(&c.trace).compose(&c.gamma));
    }
    Ok(Output { passed, json: out, text })
}

fn dsl(h: &FiniteQuantumGroup, a: &ModuleAlgebra, pair: Option<usize>, src: &str) -> Result<Output, InputFailure> {
    let hhat = dual(h)?;
    let p = pair.map(|k| pick_pair(h, k)).transpose()?;
    let mut env = Env::new(h, &hhat).with_algebra(a, AlgebraSide::H);
    if let Some(p) = &p {
        env = env.with_pair(&p.sigma, &p.delta);
    }
    if src.contains("==") {
        let (l, r) = parse_identity(src)?;
        let v = check_identity(&l, &r, &env)?;
        let passed = v.is_equal();
        return Ok(Output {
            passed,
            text: format!("{src}: {}\n", verdict_text(&v)),
            json: json!({"identity": src, "passed": passed, "verdict": format!("{v:?}")}),
        });
    }
    let c = compile(&parse(src)?, &env)?;
    let t = evaluate(&c)?;
    let names: Vec<&str> = c.vars.iter().map(|(n, _)| n.as_str()).collect();
    let mut text = format!("{src}: shape {:?} over ({}; outputs {})\n", t.shape(), names.join(", "), c.outputs.len());
    let mut entries = Vec::new();
    for (idx, q) in t.iter() {
        text.push_str(&format!("  {idx:?} = {q}\n"));
        entries.push(json!([idx, q.to_text()]));
    }
    if t.shape().is_empty() && t.is_zero() {
        text.push_str("  [] = 0\n");
    }
    Ok(Output {
        passed: true,
        text,
        json: json!({"expr": src, "vars": names, "shape": t.shape(), "entries": entries}),
    })
}
