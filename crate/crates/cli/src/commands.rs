use std::io::Write;
use std::path::Path;

use serde_json::{json, Value};

use code_ent_core::codes::format::write_generator;
use code_ent_core::entanglement::{
    analyze as analyze_code, css_basis_report, delta_brute_force, j_brute_force, round_sig,
    EntanglementReport, ORACLE_LIMIT,
};
use code_ent_core::statevec::{
    build_coset_state, build_state, flattening_op_norm, injective_norm_numeric, overlap_plus_zero,
    MAX_QUBITS,
};
use code_ent_core::verify::{optimizer, run_suite, Fault, SuiteConfig, BOUND_TOL, NUMERIC_TOL};
use code_ent_core::LinearCode;

use crate::source::{load_file, CodeSource};
use crate::CliError;

/// Coset enumeration in `css` is limited to this many qubits.
const CSS_ENUMERATE_LIMIT: usize = 12;

type Out<'a> = dyn Write + 'a;

fn io(e: std::io::Error) -> CliError {
    CliError::Input(format!("write failed: {e}"))
}

fn num(x: f64) -> Value {
    json!(round_sig(x, 12))
}

fn print_json(out: &mut Out<'_>, value: &Value) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("json value serializes");
    writeln!(out, "{text}").map_err(io)
}

pub fn info(out: &mut Out<'_>, source: &CodeSource, json: bool) -> Result<(), CliError> {
    let code = source.load()?;
    let rows: Vec<String> = code
        .generator()
        .row_vecs()
        .iter()
        .map(|r| r.to_string())
        .collect();
    if json {
        return print_json(
            out,
            &json!({
                "n": code.len(),
                "k": code.dimension(),
                "rate": num(code.rate()),
                "generator": rows,
            }),
        );
    }
    (|| {
        writeln!(out, "code: {}", source.describe())?;
        writeln!(out, "n = {}", code.len())?;
        writeln!(out, "k = {}", code.dimension())?;
        writeln!(out, "R = {:.6}", code.rate())?;
        writeln!(out, "generator (rref):")?;
        for r in &rows {
            writeln!(out, "  {r}")?;
        }
        Ok(())
    })()
    .map_err(io)
}

pub struct AnalyzeOptions {
    /// `(restarts, seed)` when a numeric estimate is requested.
    pub numeric: Option<(usize, u64)>,
    pub oracle: bool,
    pub json: bool,
}

struct NumericCheck {
    value: f64,
    gap: f64,
    converged: bool,
    lower: f64,
    upper: f64,
}

impl NumericCheck {
    fn to_json(&self) -> Value {
        json!({
            "value": num(self.value),
            "gap": num(self.gap),
            "converged": self.converged,
            "lower_bound": num(self.lower),
            "upper_bound": num(self.upper),
        })
    }

    /// Lower bound <= formula <= numeric-consistent upper bound, and the
    /// numeric estimate agrees with the formula.
    fn violation(&self, formula: f64) -> Option<String> {
        if self.lower > formula + BOUND_TOL || (self.upper - formula).abs() > BOUND_TOL {
            Some(format!(
                "bounds {:.12} <= {formula:.12} <= {:.12} violated",
                self.lower, self.upper
            ))
        } else if self.value > self.upper + BOUND_TOL {
            Some(format!(
                "numeric estimate {:.12} exceeds the flattening bound {:.12}",
                self.value, self.upper
            ))
        } else if self.gap > NUMERIC_TOL {
            Some(format!(
                "numeric estimate {:.12} differs from the formula by {:.2e}",
                self.value, self.gap
            ))
        } else {
            None
        }
    }
}

fn numeric_check(
    code: &LinearCode,
    report: &EntanglementReport,
    restarts: usize,
    seed: u64,
) -> Result<NumericCheck, CliError> {
    let state = build_state(code)?;
    let est = injective_norm_numeric(&state, &optimizer(restarts, seed, "numeric"))?;
    Ok(NumericCheck {
        value: est.value,
        gap: (est.value - report.injective_norm).abs(),
        converged: est.converged,
        lower: overlap_plus_zero(code, &report.witness_shortened_support)?,
        upper: flattening_op_norm(&state, &report.witness_partition)?,
    })
}

fn size_guard(code: &LinearCode, limit: usize, flag: &str) -> Result<(), CliError> {
    if code.len() > limit {
        return Err(CliError::Input(format!(
            "{flag} needs n <= {limit}, code has n = {}",
            code.len()
        )));
    }
    Ok(())
}

fn write_report(out: &mut Out<'_>, r: &EntanglementReport) -> std::io::Result<()> {
    writeln!(out, "n = {}", r.n)?;
    writeln!(out, "k = {}", r.k)?;
    writeln!(out, "j = {}", r.j)?;
    writeln!(out, "delta = {}", r.delta)?;
    writeln!(
        out,
        "injective norm = {:.12} (2^-{}/2)",
        r.injective_norm,
        r.k - r.j
    )?;
    writeln!(out, "geometric entanglement = {}", r.geometric_entanglement)?;
    writeln!(out, "groverian = {:.12}", r.groverian)?;
    writeln!(out, "witness partition = {:?}", r.witness_partition)?;
    writeln!(
        out,
        "witness shortened support = {:?}",
        r.witness_shortened_support
    )
}

pub fn analyze(
    out: &mut Out<'_>,
    source: &CodeSource,
    opts: &AnalyzeOptions,
) -> Result<(), CliError> {
    let code = source.load()?;
    if opts.oracle {
        size_guard(&code, ORACLE_LIMIT, "--oracle")?;
    }
    if opts.numeric.is_some() {
        size_guard(&code, MAX_QUBITS, "--numeric")?;
    }
    let report = analyze_code(&code, opts.oracle)?;
    let oracle = if opts.oracle {
        Some((j_brute_force(&code)?, delta_brute_force(&code)?.delta))
    } else {
        None
    };
    let numeric = match opts.numeric {
        Some((restarts, seed)) => Some(numeric_check(&code, &report, restarts, seed)?),
        None => None,
    };

    if opts.json {
        let mut value = serde_json::to_value(&report).expect("report serializes");
        if let Some((jb, db)) = oracle {
            value["oracle"] = json!({ "j_brute_force": jb, "delta_brute_force": db });
        }
        if let Some(n) = &numeric {
            value["numeric"] = n.to_json();
        }
        print_json(out, &value)?;
    } else {
        (|| {
            writeln!(out, "code: {}", source.describe())?;
            write_report(out, &report)?;
            if let Some((jb, db)) = oracle {
                writeln!(
                    out,
                    "oracle: j_brute_force = {jb}, delta_brute_force = {db}"
                )?;
            }
            if let Some(n) = &numeric {
                writeln!(
                    out,
                    "numeric: estimate = {:.12}, |gap| = {:.3e}, converged = {}",
                    n.value, n.gap, n.converged
                )?;
                writeln!(
                    out,
                    "bounds: <+_A 0_B|C> = {:.12} <= norm <= flattening = {:.12}",
                    n.lower, n.upper
                )?;
            }
            Ok(())
        })()
        .map_err(io)?;
    }
    if let Some(msg) = numeric
        .as_ref()
        .and_then(|n| n.violation(report.injective_norm))
    {
        return Err(CliError::Verification(msg));
    }
    Ok(())
}

pub fn css(
    out: &mut Out<'_>,
    c1_path: &Path,
    c2_path: &Path,
    enumerate: Option<(usize, u64)>,
    json: bool,
) -> Result<(), CliError> {
    let c1 = load_file(c1_path)?;
    let c2 = load_file(c2_path)?;
    let report = css_basis_report(&c1, &c2)?;
    let basis_states = c2.coset_representatives(&c1)?;
    let mut per_coset: Vec<(String, f64)> = Vec::new();
    if let Some((restarts, seed)) = enumerate {
        size_guard(&c1, CSS_ENUMERATE_LIMIT, "--enumerate-cosets")?;
        for x in &basis_states {
            let s = build_coset_state(x, &c2)?;
            let est = injective_norm_numeric(&s, &optimizer(restarts, seed, "coset"))?;
            per_coset.push((x.to_string(), est.value));
        }
    }

    if json {
        let mut value = serde_json::to_value(&report).expect("report serializes");
        value["basis_states"] = json!(basis_states.len());
        if enumerate.is_some() {
            value["cosets"] = per_coset
                .iter()
                .map(|(x, v)| json!({ "shift": x, "numeric": num(*v), "gap": num((v - report.injective_norm).abs()) }))
                .collect();
        }
        print_json(out, &value)?;
    } else {
        (|| {
            writeln!(
                out,
                "C1: {} (n = {}, k = {})",
                c1_path.display(),
                c1.len(),
                c1.dimension()
            )?;
            writeln!(
                out,
                "C2: {} (n = {}, k = {})",
                c2_path.display(),
                c2.len(),
                c2.dimension()
            )?;
            writeln!(out, "basis states = {}", basis_states.len())?;
            writeln!(out, "every basis state has:")?;
            write_report(out, &report)?;
            for (x, v) in &per_coset {
                writeln!(
                    out,
                    "coset {x}: numeric = {v:.12}, |gap| = {:.3e}",
                    (v - report.injective_norm).abs()
                )?;
            }
            Ok(())
        })()
        .map_err(io)?;
    }
    if let Some((x, v)) = per_coset
        .iter()
        .find(|(_, v)| (v - report.injective_norm).abs() > NUMERIC_TOL)
    {
        return Err(CliError::Verification(format!(
            "coset {x}: numeric estimate {v:.12} differs from {:.12}",
            report.injective_norm
        )));
    }
    Ok(())
}

pub fn verify(
    out: &mut Out<'_>,
    max_n: usize,
    random_codes: usize,
    seed: u64,
    restarts: usize,
    json: bool,
    fault: Option<&str>,
) -> Result<(), CliError> {
    if max_n == 0 || max_n > 14 {
        return Err(CliError::Input(format!(
            "--max-n must be in 1..=14, got {max_n}"
        )));
    }
    if restarts == 0 {
        return Err(CliError::Input("--restarts must be at least 1".into()));
    }
    let fault = match fault {
        None => None,
        Some("flip-j") => Some(Fault::FlipJ),
        Some(other) => return Err(CliError::Input(format!("unknown fault {other:?}"))),
    };
    let defaults = SuiteConfig::default();
    let config = SuiteConfig {
        max_n,
        random_codes,
        random_max_n: max_n,
        seed,
        numeric_max_n: defaults.numeric_max_n.min(max_n),
        sandwich_max_n: defaults.sandwich_max_n.min(max_n),
        invariance_max_n: defaults.invariance_max_n.min(max_n),
        axioms_max_n: defaults.axioms_max_n.min(max_n),
        restarts,
        fault,
    };
    let summary = run_suite(&config);
    if json {
        let checks: Vec<Value> = summary
            .outcomes
            .iter()
            .map(|o| json!({ "code": o.label, "check": o.check, "passed": o.passed, "detail": o.detail }))
            .collect();
        print_json(
            out,
            &json!({ "passed": summary.all_passed(), "checks": checks }),
        )?;
    } else {
        write!(out, "{}", summary.render()).map_err(io)?;
    }
    if summary.all_passed() {
        Ok(())
    } else {
        Err(CliError::Verification(format!(
            "{} of {} checks failed",
            summary.failures().count(),
            summary.outcomes.len()
        )))
    }
}

pub fn gen(out: &mut Out<'_>, source: &CodeSource, path: Option<&Path>) -> Result<(), CliError> {
    let code = source.load()?;
    let comment = format!(
        "{}\nn = {}, k = {}",
        source.describe(),
        code.len(),
        code.dimension()
    );
    let text = write_generator(&code, Some(&comment));
    match path {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))
        }
        None => out.write_all(text.as_bytes()).map_err(io),
    }
}
