//! Seeded verification suite: oracle equivalences, bound sandwich, numeric
//! agreement, invariance and matroid axioms over a deterministic set of codes.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::codes::{self, complement, format::write_generator, LinearCode};
use crate::entanglement::{
    delta_brute_force, injective_norm_formula, j_brute_force, j_of_code, witness_from,
};
use crate::error::Result;
use crate::matroid::{
    brute_force_intersection, cover_value, matroid_intersection, DualMatroid, LinearColumnMatroid,
    Matroid,
};
use crate::statevec::{
    apply_local_unitaries, build_coset_state, build_state, derive_seed, flattening_op_norm,
    injective_norm_numeric, overlap_plus_zero, random_unitary, suffix_multiplicity_check, Init,
    OptimizerConfig,
};

pub const BOUND_TOL: f64 = 1e-9;
pub const NUMERIC_TOL: f64 = 1e-6;
pub const INVARIANCE_TOL: f64 = 2e-5;
pub const NONNEGATIVE_TOL: f64 = 1e-6;

/// Deliberate defects for exercising the failure path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Reports `j + 1` instead of `j` from the matroid-intersection route.
    FlipJ,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    /// Structured families are generated for `n` in `1..=max_n`.
    pub max_n: usize,
    pub random_codes: usize,
    /// Random codes have length in `1..=random_max_n`.
    pub random_max_n: usize,
    pub seed: u64,
    /// Numeric optimization runs on codes with at most this many qubits.
    pub numeric_max_n: usize,
    /// Bound sandwich (exhaustive bipartitions) up to this length.
    pub sandwich_max_n: usize,
    /// Coset and local-unitary invariance up to this length.
    pub invariance_max_n: usize,
    /// Exhaustive matroid axiom checks up to this ground-set size.
    pub axioms_max_n: usize,
    pub restarts: usize,
    pub fault: Option<Fault>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            max_n: 8,
            random_codes: 40,
            random_max_n: 12,
            seed: 1,
            numeric_max_n: 6,
            sandwich_max_n: 8,
            invariance_max_n: 4,
            axioms_max_n: 8,
            restarts: 100,
            fault: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Case {
    pub label: String,
    pub code: LinearCode,
}

/// Structured families `repetition`, `full`, `even_weight`, `zero` for
/// `n <= max_n`, the Hamming and `L = 2` toric codes, then seeded random codes.
pub fn suite_codes(config: &SuiteConfig) -> Vec<Case> {
    let mut cases = Vec::new();
    for n in 1..=config.max_n {
        for (name, code) in [
            ("repetition", codes::repetition(n)),
            ("full", codes::full(n)),
            ("even_weight", codes::even_weight(n)),
            ("zero", codes::zero(n)),
        ] {
            cases.push(Case {
                label: format!("{name}({n:02})"),
                code: code.expect("families accept n >= 1"),
            });
        }
    }
    cases.push(Case {
        label: "hamming_7_4".into(),
        code: codes::hamming_7_4(),
    });
    cases.push(Case {
        label: "toric(L=2)".into(),
        code: codes::toric_x_code(2).expect("L >= 1"),
    });
    cases.extend(random_cases(
        config.random_codes,
        config.random_max_n,
        config.seed,
    ));
    cases
}

/// `count` random codes, length uniform in `1..=max_n`, dimension uniform in `0..=n`.
pub fn random_cases(count: usize, max_n: usize, seed: u64) -> Vec<Case> {
    (0..count as u64)
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, "random-code", i));
            let n = rng.gen_range(1..=max_n.max(1));
            let k = rng.gen_range(0..=n);
            let code_seed = rng.gen();
            Case {
                label: format!("random#{i:04}(n={n:02},k={k:02})"),
                code: codes::random_code(n, k, code_seed).expect("k <= n"),
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub label: String,
    pub check: &'static str,
    pub passed: bool,
    pub detail: String,
    /// Generator in the text format, for reproducing failures.
    pub generator: String,
}

#[derive(Clone, Debug, Default)]
pub struct SuiteSummary {
    pub outcomes: Vec<CheckOutcome>,
}

impl SuiteSummary {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.outcomes.iter().filter(|o| !o.passed)
    }

    /// Per-check pass/fail counts, then every failure with its generator.
    pub fn render(&self) -> String {
        let mut checks: Vec<&'static str> = self.outcomes.iter().map(|o| o.check).collect();
        checks.sort_unstable();
        checks.dedup();
        let mut out = String::new();
        let _ = writeln!(out, "{:<22} {:>6} {:>6}  status", "check", "pass", "fail");
        for check in checks {
            let (pass, fail) =
                self.outcomes
                    .iter()
                    .filter(|o| o.check == check)
                    .fold(
                        (0, 0),
                        |(p, f), o| if o.passed { (p + 1, f) } else { (p, f + 1) },
                    );
            let status = if fail == 0 { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{check:<22} {pass:>6} {fail:>6}  {status}");
        }
        for o in self.failures() {
            let _ = writeln!(out, "\nFAILED {} on {}: {}", o.check, o.label, o.detail);
            let _ = write!(out, "{}", o.generator);
        }
        let _ = writeln!(
            out,
            "\n{} checks, {} failed",
            self.outcomes.len(),
            self.failures().count()
        );
        out
    }
}

struct Recorder<'a> {
    case: &'a Case,
    generator: String,
    outcomes: Vec<CheckOutcome>,
}

impl<'a> Recorder<'a> {
    fn new(case: &'a Case) -> Self {
        Self {
            case,
            generator: write_generator(&case.code, Some(&case.label)),
            outcomes: Vec::new(),
        }
    }

    fn record(&mut self, check: &'static str, result: Result<std::result::Result<String, String>>) {
        let (passed, detail) = match result {
            Ok(Ok(d)) => (true, d),
            Ok(Err(d)) => (false, d),
            Err(e) => (false, e.to_string()),
        };
        self.outcomes.push(CheckOutcome {
            label: self.case.label.clone(),
            check,
            passed,
            detail,
            generator: self.generator.clone(),
        });
    }
}

fn verdict(ok: bool, detail: String) -> std::result::Result<String, String> {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// `j` from the polynomial route, with the optional injected fault.
fn fast_j(code: &LinearCode, fault: Option<Fault>) -> Result<usize> {
    let j = j_of_code(code)?.j;
    Ok(match fault {
        Some(Fault::FlipJ) => j + 1,
        None => j,
    })
}

pub fn check_main_equality(
    code: &LinearCode,
    fault: Option<Fault>,
) -> Result<std::result::Result<String, String>> {
    let j = fast_j(code, fault)?;
    let jb = j_brute_force(code)?;
    let db = delta_brute_force(code)?.delta;
    Ok(verdict(
        j == jb && jb == db,
        format!("j={j} j_brute={jb} delta_brute={db}"),
    ))
}

pub fn check_witnesses(code: &LinearCode) -> Result<std::result::Result<String, String>> {
    let n = code.len();
    let k = code.dimension();
    let jw = j_of_code(code)?;
    let g = code.generator();
    let ra = g.column_submatrix(&jw.witness_partition)?.rank();
    let rb = g
        .column_submatrix(&complement(&jw.witness_partition, n))?
        .rank();
    let sw = witness_from(code, &jw)?;
    let k0 = sw.code.dimension();
    let ok = ra == k && rb + jw.j == k && sw.support.len() + jw.j == 2 * k0;
    Ok(verdict(
        ok,
        format!(
            "ranks ({ra}, {rb}) for k={k}, j={}; shortened dim {k0} length {}",
            jw.j,
            sw.support.len()
        ),
    ))
}

/// All `size`-subsets of `0..n` with `rank(G_A) = k`.
fn information_sets(code: &LinearCode) -> Vec<Vec<usize>> {
    let n = code.len();
    let k = code.dimension();
    let m = LinearColumnMatroid::new(code.generator());
    (0..1u64 << n)
        .filter(|mask| mask.count_ones() as usize == k)
        .map(|mask| (0..n).filter(|&i| (mask >> i) & 1 == 1).collect::<Vec<_>>())
        .filter(|a| m.rank(a) == k)
        .collect()
}

pub fn check_bound_sandwich(
    code: &LinearCode,
    fault: Option<Fault>,
) -> Result<std::result::Result<String, String>> {
    let n = code.len();
    let k = code.dimension();
    let j = fast_j(code, fault)?;
    let formula = injective_norm_formula(k, j.min(k));
    let mut lower = 0.0f64;
    for mask in 0..1u64 << n {
        let a: Vec<usize> = (0..n).filter(|&i| (mask >> i) & 1 == 1).collect();
        lower = lower.max(overlap_plus_zero(code, &a)?);
    }
    let state = build_state(code)?;
    let mut upper = f64::INFINITY;
    for a in information_sets(code) {
        upper = upper.min(flattening_op_norm(&state, &a)?);
    }
    let ok = lower <= formula + BOUND_TOL
        && formula <= upper + BOUND_TOL
        && (upper - formula).abs() <= BOUND_TOL
        && j <= k;
    Ok(verdict(
        ok,
        format!("lower {lower:.12} <= formula {formula:.12} <= upper {upper:.12}"),
    ))
}

pub fn check_suffix_multiplicity(
    code: &LinearCode,
    fault: Option<Fault>,
) -> Result<std::result::Result<String, String>> {
    let j = fast_j(code, fault)?;
    let r = suffix_multiplicity_check(code)?;
    Ok(verdict(
        r.uniform && r.j == j,
        format!("uniform={} j_count={} j={j}", r.uniform, r.j),
    ))
}

pub fn optimizer(restarts: usize, seed: u64, label: &str) -> OptimizerConfig {
    OptimizerConfig {
        restarts,
        seed: derive_seed(seed, label, 0),
        ..OptimizerConfig::default()
    }
}

pub fn check_numeric(
    code: &LinearCode,
    restarts: usize,
    seed: u64,
    fault: Option<Fault>,
) -> Result<std::result::Result<String, String>> {
    let k = code.dimension();
    let j = fast_j(code, fault)?;
    let formula = injective_norm_formula(k, j.min(k));
    let est = injective_norm_numeric(&build_state(code)?, &optimizer(restarts, seed, "numeric"))?;
    let gap = (est.value - formula).abs();
    Ok(verdict(
        gap <= NUMERIC_TOL && j <= k,
        format!(
            "numeric {:.12} formula {formula:.12} gap {gap:.2e}",
            est.value
        ),
    ))
}

/// Nonnegative real initializations reach the same optimum as complex ones.
pub fn check_nonnegative_init(
    code: &LinearCode,
    restarts: usize,
    seed: u64,
) -> Result<std::result::Result<String, String>> {
    let state = build_state(code)?;
    let complex = injective_norm_numeric(&state, &optimizer(restarts, seed, "numeric"))?.value;
    let real = injective_norm_numeric(
        &state,
        &OptimizerConfig {
            init: Init::NonnegativeReal,
            ..optimizer(restarts, seed, "nonnegative")
        },
    )?
    .value;
    Ok(verdict(
        (complex - real).abs() <= NONNEGATIVE_TOL,
        format!("complex init {complex:.12}, nonnegative init {real:.12}"),
    ))
}

/// Numeric norms of all `2^(n-k)` coset states agree.
pub fn check_coset_invariance(
    code: &LinearCode,
    restarts: usize,
    seed: u64,
) -> Result<std::result::Result<String, String>> {
    let full = codes::full(code.len())?;
    let reps = code.coset_representatives(&full)?;
    let mut values = Vec::with_capacity(reps.len());
    for x in &reps {
        let s = build_coset_state(x, code)?;
        values.push(injective_norm_numeric(&s, &optimizer(restarts, seed, "coset"))?.value);
    }
    let (lo, hi) = min_max(&values);
    Ok(verdict(
        hi - lo <= INVARIANCE_TOL,
        format!("{} cosets, spread {:.2e}", values.len(), hi - lo),
    ))
}

/// Random local unitaries leave the numeric norm unchanged.
pub fn check_lu_invariance(
    code: &LinearCode,
    restarts: usize,
    seed: u64,
) -> Result<std::result::Result<String, String>> {
    let s = build_state(code)?;
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, "unitaries", code.len() as u64));
    let us: Vec<_> = (0..code.len()).map(|_| random_unitary(&mut rng)).collect();
    let t = apply_local_unitaries(&s, &us)?;
    let a = injective_norm_numeric(&s, &optimizer(restarts, seed, "lu"))?.value;
    let b = injective_norm_numeric(&t, &optimizer(restarts, seed, "lu"))?.value;
    Ok(verdict(
        (a - b).abs() <= INVARIANCE_TOL,
        format!("before {a:.12}, after {b:.12}"),
    ))
}

fn min_max(values: &[f64]) -> (f64, f64) {
    values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        })
}

/// Rank and independence axioms, checked over every subset.
pub fn matroid_axioms<M: Matroid>(m: &M) -> std::result::Result<(), String> {
    let n = m.ground_size();
    let all = (1u64 << n) - 1;
    let rank: Vec<usize> = (0..=all).map(|s| m.rank_mask(s)).collect();
    if rank[0] != 0 {
        return Err("rank of the empty set is not 0".into());
    }
    for s in 0..=all {
        let rs = rank[s as usize];
        if rs > s.count_ones() as usize {
            return Err(format!("rank({s:#b}) exceeds its size"));
        }
        for x in (0..n).filter(|&x| (s >> x) & 1 == 0) {
            let rx = rank[(s | 1 << x) as usize];
            if rx < rs || rx > rs + 1 {
                return Err(format!("unit increase fails at {s:#b} + {x}"));
            }
            // Local submodularity over all pairs is equivalent to submodularity.
            for y in (x + 1..n).filter(|&y| (s >> y) & 1 == 0) {
                let ry = rank[(s | 1 << y) as usize];
                let rxy = rank[(s | 1 << x | 1 << y) as usize];
                if rx + ry < rxy + rs {
                    return Err(format!("submodularity fails at {s:#b} with {x}, {y}"));
                }
            }
        }
    }
    let indep: Vec<bool> = (0..=all)
        .map(|s| rank[s as usize] == s.count_ones() as usize)
        .collect();
    for s in 0..=all {
        if !indep[s as usize] {
            continue;
        }
        for x in (0..n).filter(|&x| (s >> x) & 1 == 1) {
            if !indep[(s & !(1 << x)) as usize] {
                return Err(format!("independent sets not hereditary at {s:#b}"));
            }
        }
    }
    // Exchange: for |I| < |J| some x in J \ I extends I.
    for i in (0..=all).filter(|&i| indep[i as usize]) {
        for j in (0..=all).filter(|&j| indep[j as usize] && j.count_ones() > i.count_ones()) {
            let diff = j & !i;
            if !(0..n).any(|x| (diff >> x) & 1 == 1 && indep[(i | 1 << x) as usize]) {
                return Err(format!("exchange fails for {i:#b}, {j:#b}"));
            }
        }
    }
    Ok(())
}

/// Rank of the dual computed from its definition (independent sets are
/// those whose complement contains a basis), compared with the closed form.
pub fn dual_rank_matches_definition<M: Matroid>(m: &M) -> std::result::Result<(), String> {
    let n = m.ground_size();
    let all = (1u64 << n) - 1;
    let r = m.full_rank();
    let dual_indep: Vec<bool> = (0..=all).map(|s| m.rank_mask(all & !s) == r).collect();
    // rank*(S) = |S| if S is co-independent, else max over S - x.
    let mut by_definition = vec![0usize; 1 << n];
    for s in 0..=all {
        by_definition[s as usize] = if dual_indep[s as usize] {
            s.count_ones() as usize
        } else {
            (0..n)
                .filter(|&x| (s >> x) & 1 == 1)
                .map(|x| by_definition[(s & !(1 << x)) as usize])
                .max()
                .unwrap_or(0)
        };
    }
    let dual = DualMatroid::new(m);
    for s in 0..=all {
        if dual.rank_mask(s) != by_definition[s as usize] {
            return Err(format!(
                "dual rank of {s:#b}: formula {} vs definition {}",
                dual.rank_mask(s),
                by_definition[s as usize]
            ));
        }
    }
    Ok(())
}

pub fn check_matroid_axioms(code: &LinearCode) -> Result<std::result::Result<String, String>> {
    let m = LinearColumnMatroid::new(code.generator());
    let outcome = matroid_axioms(&m)
        .and_then(|_| matroid_axioms(&DualMatroid::new(&m)))
        .and_then(|_| dual_rank_matches_definition(&m));
    Ok(outcome.map(|_| format!("|X| = {}", code.len())))
}

/// Edmonds' algorithm against exhaustive evaluation of both min-max sides.
pub fn check_edmonds<M1: Matroid, M2: Matroid>(
    m1: &M1,
    m2: &M2,
) -> Result<std::result::Result<String, String>> {
    let fast = matroid_intersection(m1, m2)?;
    let slow = brute_force_intersection(m1, m2)?;
    let fast_cover = cover_value(m1, m2, &fast.cover);
    let slow_cover = cover_value(m1, m2, &slow.cover);
    let ok = fast.size() == slow.size()
        && fast_cover == slow_cover
        && m1.is_independent(&fast.common_set)
        && m2.is_independent(&fast.common_set);
    Ok(verdict(
        ok,
        format!(
            "size {} vs {}, cover {fast_cover} vs {slow_cover}",
            fast.size(),
            slow.size()
        ),
    ))
}

fn run_case(case: &Case, config: &SuiteConfig) -> Vec<CheckOutcome> {
    let code = &case.code;
    let n = code.len();
    let fault = config.fault;
    let mut rec = Recorder::new(case);
    rec.record("main-equality", check_main_equality(code, fault));
    rec.record("witness", check_witnesses(code));
    let m = LinearColumnMatroid::new(code.generator());
    rec.record("edmonds", check_edmonds(&m, &DualMatroid::new(&m)));
    if n <= 16 {
        rec.record(
            "suffix-multiplicity",
            check_suffix_multiplicity(code, fault),
        );
    }
    if n <= config.sandwich_max_n {
        rec.record("bound-sandwich", check_bound_sandwich(code, fault));
    }
    if n <= config.axioms_max_n {
        rec.record("matroid-axioms", check_matroid_axioms(code));
    }
    if n <= config.numeric_max_n {
        rec.record(
            "numeric",
            check_numeric(code, config.restarts, config.seed, fault),
        );
    }
    if n <= config.invariance_max_n {
        rec.record(
            "coset-invariance",
            check_coset_invariance(code, config.restarts, config.seed),
        );
        rec.record(
            "lu-invariance",
            check_lu_invariance(code, config.restarts, config.seed),
        );
        rec.record(
            "nonnegative-init",
            check_nonnegative_init(code, config.restarts, config.seed),
        );
    }
    rec.outcomes
}

/// Runs every check on every suite code. Output is sorted by case label and
/// check name, so it does not depend on scheduling.
pub fn run_suite(config: &SuiteConfig) -> SuiteSummary {
    let cases = suite_codes(config);
    let mut outcomes: Vec<CheckOutcome> = cases
        .par_iter()
        .flat_map_iter(|case| run_case(case, config))
        .collect();
    outcomes.sort_by(|a, b| (&a.label, a.check).cmp(&(&b.label, b.check)));
    SuiteSummary { outcomes }
}
