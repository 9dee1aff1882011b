//! Machine-readable reports behind the command-line front end.
//!
//! Every JSON report is wrapped in an envelope carrying [`FORMAT_VERSION`]
//! and the command name. Table renderings are for reading only.

use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::affine_weights::{minimal_weight_table, AffineWeight, MinimalTable};
use crate::casimir_audit::{primitive_pair_audit, PairRow};
use crate::error::{Error, Result};
use crate::module_weights::{
    coset_split, dominant_of_level, enumerate_weights, floor_weight, is_weyl_closed, FloorWeight, WeightSupport,
};
use crate::rational::{format_q, frac, parse_q, q, Q};
use crate::root_core::{all_types_up_to_rank, FiniteRoot, FiniteWeight, FormSign, RootSystem, SimpleType};
use crate::super_affine::{
    catalog, check_trace, nonpositive_root_count, nonpositive_root_set, random_closed_candidate, run_obstruction,
    EngineConfig, ObstructionTrace, Outcome, SuperRootData, SupportCandidate, TraceCheck,
};

pub const FORMAT_VERSION: &str = "kacmoody/1";

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    format: &'static str,
    command: &'a str,
    #[serde(flatten)]
    body: &'a T,
}

/// Pretty JSON of `body` inside the versioned envelope.
pub fn to_json<T: Serialize>(command: &str, body: &T) -> String {
    let env = Envelope {
        format: FORMAT_VERSION,
        command,
        body,
    };
    serde_json::to_string_pretty(&env).expect("reports serialize")
}

/// Human-readable rendering.
pub trait Table {
    fn table(&self) -> String;
}

fn render(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = vec![line(headers.to_vec())];
    out.push(line(
        widths
            .iter()
            .map(|w| "-".repeat(*w))
            .collect::<Vec<_>>()
            .iter()
            .map(|s| s.as_str())
            .collect(),
    ));
    for row in rows {
        out.push(line(row.iter().map(|s| s.as_str()).collect()));
    }
    out.join("\n") + "\n"
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

// ---------------------------------------------------------------- parsing

#[derive(Clone, Copy)]
enum Symbol {
    Lambda0,
    Delta,
    Omega,
    Alpha,
}

const SYMBOLS: &[(&str, Symbol)] = &[
    ("Lambda0", Symbol::Lambda0),
    ("Λ0", Symbol::Lambda0),
    ("Λ₀", Symbol::Lambda0),
    ("L0", Symbol::Lambda0),
    ("delta", Symbol::Delta),
    ("δ", Symbol::Delta),
    ("omega", Symbol::Omega),
    ("ω", Symbol::Omega),
    ("w", Symbol::Omega),
    ("alpha", Symbol::Alpha),
    ("α", Symbol::Alpha),
    ("a", Symbol::Alpha),
];

struct Cursor<'a> {
    input: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn rest(&self) -> &'a str {
        &self.input[self.pos..]
    }

    fn skip_ws(&mut self) {
        let r = self.rest();
        self.pos += r.len() - r.trim_start().len();
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let r = self.rest();
        let n = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
        if n == 0 {
            return None;
        }
        self.pos += n;
        Some(&r[..n])
    }

    fn err(&self, position: usize, message: &str) -> Error {
        Error::Parse {
            input: self.input.to_string(),
            position,
            message: message.to_string(),
        }
    }
}

/// Parses a linear combination such as `Λ0 + 2ω1 - 1/2 δ` or `L0+w1-a0`.
///
/// Symbols: `Λ0` (`L0`, `Lambda0`), `δ` (`delta`), `ωi` (`wi`, `omegai`) for
/// `1 ≤ i ≤ n` and `αi` (`ai`, `alphai`) for `0 ≤ i ≤ n`, with `α0 = δ - β`.
/// Coefficients are rationals `p` or `p/q`, optionally followed by `*`.
/// Errors carry the byte offset of the offending token.
pub fn parse_weight_expr(rs: &RootSystem, expr: &str) -> Result<AffineWeight> {
    let n = rs.rank();
    let mut c = Cursor { input: expr, pos: 0 };
    let mut total = AffineWeight::zero(n);
    let mut first = true;
    loop {
        c.skip_ws();
        if c.rest().is_empty() {
            if first {
                return Err(c.err(c.pos, "empty weight expression"));
            }
            return Ok(total);
        }
        let mut sign = q(1);
        if c.eat("-") {
            sign = q(-1);
        } else if !c.eat("+") && !first {
            return Err(c.err(c.pos, "expected '+' or '-'"));
        }
        first = false;
        c.skip_ws();

        let coef_at = c.pos;
        let mut coef = q(1);
        if let Some(num) = c.digits() {
            let mut text = num.to_string();
            if c.eat("/") {
                let den = c.digits().ok_or_else(|| c.err(c.pos, "expected a denominator"))?;
                text = format!("{num}/{den}");
            }
            coef = parse_q(&text).map_err(|_| c.err(coef_at, "invalid coefficient"))?;
            c.skip_ws();
            if c.eat("*") {
                c.skip_ws();
            }
        }

        let sym_at = c.pos;
        let Some(&(name, sym)) = SYMBOLS.iter().find(|(name, _)| c.rest().starts_with(name)) else {
            return Err(c.err(sym_at, "expected one of Λ0, δ, ωi, αi"));
        };
        c.pos += name.len();
        let term = match sym {
            Symbol::Lambda0 => AffineWeight::lambda0(n),
            Symbol::Delta => AffineWeight::delta(n),
            Symbol::Omega | Symbol::Alpha => {
                let idx_at = c.pos;
                let idx: usize = c
                    .digits()
                    .ok_or_else(|| c.err(idx_at, "expected an index"))?
                    .parse()
                    .map_err(|_| c.err(idx_at, "index out of range"))?;
                match sym {
                    Symbol::Omega if (1..=n).contains(&idx) => {
                        AffineWeight::from_finite(FiniteWeight::fundamental(n, idx - 1))
                    }
                    Symbol::Alpha if idx == 0 => {
                        let beta = AffineWeight::from_finite(rs.root_as_weight(rs.highest_root()));
                        &AffineWeight::delta(n) - &beta
                    }
                    Symbol::Alpha if idx <= n => {
                        AffineWeight::from_finite(rs.root_as_weight(&FiniteRoot::simple(n, idx - 1)))
                    }
                    _ => return Err(c.err(idx_at, &format!("index {idx} out of range for rank {n}"))),
                }
            }
        };
        total = &total + &term.scale(&(&sign * &coef));
    }
}

/// Reconciles an optional highest-weight expression with an optional level:
/// a missing `Λ0` part is filled in from the level, a conflicting one is an
/// error. Defaults to `level·Λ0`.
pub fn highest_weight(rs: &RootSystem, expr: Option<&str>, level: Option<i64>) -> Result<AffineWeight> {
    let n = rs.rank();
    let mut w = match expr {
        Some(e) => parse_weight_expr(rs, e)?,
        None => AffineWeight::zero(n),
    };
    if let Some(k) = level {
        if w.level.is_zero() {
            w = &w + &AffineWeight::lambda0(n).scale(&q(k));
        } else if w.level != q(k) {
            return Err(Error::Precondition(format!(
                "expression has level {}, but --level is {k}",
                format_q(&w.level)
            )));
        }
    }
    if w.level.is_zero() && expr.is_none() {
        return Err(Error::Precondition("a highest weight or a level is required".into()));
    }
    Ok(w)
}

// ---------------------------------------------------------------- reports

pub fn minimal_report(t: SimpleType) -> Result<MinimalTable> {
    minimal_weight_table(&RootSystem::build(t, FormSign::Positive)?)
}

impl Table for MinimalTable {
    fn table(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.weight.to_string(),
                    format_q(&r.highest_coroot_value),
                    yes_no(r.within_bound),
                ]
            })
            .collect();
        format!(
            "{}: {} classes, det = {}\n{}bound holds: {}\n",
            self.algebra,
            self.rows.len(),
            self.cartan_determinant,
            render(&["minimal weight", "β∨-value", "in {0,1}"], &rows),
            yes_no(self.holds)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightsReport {
    pub algebra: String,
    pub highest: AffineWeight,
    pub depth: u32,
    pub count: usize,
    pub weyl_closed: bool,
    /// Classes modulo the affine root lattice met by the support.
    pub classes: usize,
    pub support: WeightSupport,
}

pub fn weights_report(rs: &RootSystem, highest: &AffineWeight, depth: u32) -> Result<WeightsReport> {
    let support = enumerate_weights(rs, highest, depth)?;
    Ok(WeightsReport {
        algebra: rs.simple_type().to_string(),
        highest: highest.clone(),
        depth,
        count: support.len(),
        weyl_closed: is_weyl_closed(rs, &support),
        classes: coset_split(rs, &support).len(),
        support,
    })
}

impl Table for WeightsReport {
    fn table(&self) -> String {
        let mut rows: Vec<Vec<String>> = self
            .support
            .iter()
            .map(|(w, m)| vec![w.finite.to_string(), format_q(&(&self.highest.d - &w.d)), m.to_string()])
            .collect();
        rows.reverse();
        format!(
            "{} highest weight {}, depth {}: {} weights, Weyl closed: {}\n{}",
            self.algebra,
            self.highest,
            self.depth,
            self.count,
            yes_no(self.weyl_closed),
            render(&["finite part", "depth", "mult"], &rows)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mu0Report {
    pub algebra: String,
    pub highest: AffineWeight,
    #[serde(flatten)]
    pub floor: FloorWeight,
}

pub fn mu0_report(rs: &RootSystem, highest: &AffineWeight, s: &Q) -> Result<Mu0Report> {
    Ok(Mu0Report {
        algebra: rs.simple_type().to_string(),
        highest: highest.clone(),
        floor: floor_weight(rs, highest, s)?,
    })
}

impl Table for Mu0Report {
    fn table(&self) -> String {
        format!(
            "{} highest weight {}\nμ0 = {}\ns = {}\nin P(λ): {}\n",
            self.algebra,
            self.highest,
            self.floor.weight,
            format_q(&self.floor.s),
            yes_no(self.floor.member)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CasimirReport {
    pub algebra: String,
    pub level: u32,
    pub depth: u32,
    pub highest_weights: Vec<AffineWeight>,
    pub rows: Vec<PairRow>,
    /// Every value is positive.
    pub holds: bool,
}

/// Pair values over the depth-`depth` truncations of every `V(λ)` with `λ`
/// dominant of the given level.
pub fn casimir_report(rs: &RootSystem, level: u32, depth: u32) -> Result<CasimirReport> {
    if level == 0 {
        return Err(Error::NonPositiveLevel("0".into()));
    }
    let highest_weights = dominant_of_level(rs, level)?;
    let audits = highest_weights
        .par_iter()
        .map(|l| primitive_pair_audit(rs, &enumerate_weights(rs, l, depth)?, l))
        .collect::<Result<Vec<_>>>()?;
    let rows: Vec<PairRow> = audits.into_iter().flat_map(|a| a.rows).collect();
    Ok(CasimirReport {
        algebra: rs.simple_type().to_string(),
        level,
        depth,
        holds: rows.iter().all(|r| r.value.is_positive()),
        highest_weights,
        rows,
    })
}

impl Table for CasimirReport {
    fn table(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.lambda.to_string(),
                    r.mu.to_string(),
                    format!("{:?}", r.beta.0),
                    format_q(&r.value),
                ]
            })
            .collect();
        format!(
            "{} level {}, depth {}: {} pairs, all positive: {}\n{}",
            self.algebra,
            self.level,
            self.depth,
            self.rows.len(),
            yes_no(self.holds),
            render(&["λ", "μ", "β", "value"], &rows)
        )
    }
}

// ---------------------------------------------------------------- obstruct

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructReport {
    pub trace: ObstructionTrace,
    pub check: TraceCheck,
}

/// Runs the engine on a candidate and replays the trace through the checker.
/// `spec`, when given, must name the candidate's algebra.
pub fn obstruct_report(candidate: &SupportCandidate, spec: Option<&str>) -> Result<ObstructReport> {
    if let Some(s) = spec {
        let named = catalog(s)?;
        if named != candidate.spec {
            return Err(Error::Precondition(format!(
                "--spec {} differs from the support file's {}",
                named.name(),
                candidate.spec.name()
            )));
        }
    }
    let trace = run_obstruction(candidate, &EngineConfig::default())?;
    let check = check_trace(candidate, &trace)?;
    Ok(ObstructReport { trace, check })
}

impl ObstructReport {
    /// One JSON object per line: a header, every step, then a summary.
    pub fn json_lines(&self) -> Vec<String> {
        let t = &self.trace;
        let header = serde_json::json!({
            "format": FORMAT_VERSION,
            "command": "obstruct",
            "kind": "header",
            "spec": t.spec,
            "level": t.level,
            "depth": t.depth,
            "negative_factor": t.negative_factor,
            "focus": t.focus,
            "delta_size": t.delta_size,
            "r": t.r,
            "p": t.p,
            "lowest": t.lowest,
        });
        let mut out = vec![header.to_string()];
        for step in &t.steps {
            let mut v = serde_json::to_value(step).expect("steps serialize");
            v["kind"] = "step".into();
            out.push(v.to_string());
        }
        let summary = serde_json::json!({
            "kind": "summary",
            "outcome": t.outcome,
            "rule": t.contradiction_rule(),
            "checker": self.check,
        });
        out.push(summary.to_string());
        out
    }
}

impl Table for ObstructReport {
    fn table(&self) -> String {
        let t = &self.trace;
        let show = |x: &Option<i64>| x.map_or("-".to_string(), |v| v.to_string());
        let rows: Vec<Vec<String>> = t
            .steps
            .iter()
            .map(|s| {
                let rule = serde_json::to_value(s.rule).expect("rule serializes");
                vec![
                    s.index.to_string(),
                    rule.as_str().unwrap_or_default().to_string(),
                    s.premises.len().to_string(),
                    s.root.as_ref().map_or("-".into(), |r| r.to_string()),
                    serde_json::to_string(&s.conclusion).expect("conclusion serializes"),
                ]
            })
            .collect();
        format!(
            "{} level {} depth {}\nfocus: {}\n|Δ(λ)| = {}, r = {}, p = {}\n{}outcome: {:?}, checker: {}\n",
            t.spec.name(),
            t.level,
            t.depth,
            t.focus.as_ref().map_or("-".into(), |w| w.to_string()),
            t.delta_size.map_or("-".into(), |v| v.to_string()),
            show(&t.r),
            show(&t.p),
            render(&["#", "rule", "premises", "root", "conclusion"], &rows),
            t.outcome,
            if self.check.valid { "valid" } else { "INVALID" }
        )
    }
}

// ---------------------------------------------------------------- verify-all

pub const CHECK_IDS: [&str; 5] = [
    "minimal-coroot-bound",
    "mu0-membership",
    "casimir-pairs",
    "delta-finiteness",
    "obstruction",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub max_rank: usize,
    pub depth: u32,
    /// Random candidates per superalgebra in the obstruction check.
    pub samples: usize,
    pub seed: u64,
    pub timings: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_rank: 4,
            depth: 2,
            samples: 10,
            seed: 0,
            timings: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub id: String,
    /// One entry per swept cell.
    pub parameters: Vec<String>,
    pub cases: usize,
    pub passed: bool,
    /// Counterexamples and errors found.
    pub witnesses: usize,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub failures: Vec<String>,
    /// Summed wall time of the cells, only with timings on.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub max_rank: usize,
    pub depth: u32,
    pub samples: usize,
    pub seed: u64,
    pub checks: Vec<CheckReport>,
    pub passed: bool,
}

/// Result of one sweep cell: cases examined and a description of each failure.
#[derive(Clone, Debug, Default)]
pub struct CellOutcome {
    pub cases: usize,
    pub failures: Vec<String>,
}

impl CellOutcome {
    fn case(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(describe());
        }
    }
}

type CellFn = Box<dyn Fn() -> Result<CellOutcome> + Send + Sync>;

struct Cell {
    check: usize,
    key: String,
    run: CellFn,
}

const SUPER_SPECS: &[&str] = &[
    "A(1,1)",
    "A(2,1)",
    "B(1,1)",
    "B(1,2)",
    "B(2,1)",
    "D(2,1)",
    "D(3,1)",
    "D(2,1;1/2)",
    "G(3)",
    "F(4)",
];

const OBSTRUCTION_SPECS: &[&str] = &["A(1,1)", "B(1,1)", "D(2,1;1/2)"];

fn cells(config: &VerifyConfig) -> Result<Vec<Cell>> {
    let types = all_types_up_to_rank(config.max_rank);
    let depth = config.depth;
    let mut out = Vec::new();
    for &t in &types {
        out.push(Cell {
            check: 0,
            key: t.to_string(),
            run: Box::new(move || {
                let table = minimal_report(t)?;
                let mut o = CellOutcome::default();
                for r in &table.rows {
                    o.case(r.within_bound, || {
                        format!("{t}: {} has β∨-value {}", r.weight, format_q(&r.highest_coroot_value))
                    });
                }
                Ok(o)
            }),
        });
        out.push(Cell {
            check: 1,
            key: t.to_string(),
            run: Box::new(move || {
                let rs = RootSystem::build(t, FormSign::Positive)?;
                let mut o = CellOutcome::default();
                for level in 1..=3 {
                    for l in dominant_of_level(&rs, level)? {
                        if l.finite.label_height() > q(4) {
                            continue;
                        }
                        for d in [q(0), frac(1, 2)] {
                            let lambda = l.shift_delta(&d);
                            for j in 0..=depth {
                                let s = &d - q(j as i64);
                                let f = floor_weight(&rs, &lambda, &s)?;
                                o.case(f.member, || {
                                    format!("{t}: μ0 for {lambda}, s = {} not in P(λ)", format_q(&s))
                                });
                            }
                        }
                    }
                }
                Ok(o)
            }),
        });
        out.push(Cell {
            check: 2,
            key: t.to_string(),
            run: Box::new(move || {
                let report = casimir_report(&RootSystem::build(t, FormSign::Positive)?, 1, depth)?;
                let mut o = CellOutcome::default();
                for r in &report.rows {
                    o.case(r.value.is_positive(), || {
                        format!("{t}: pair ({}, {}) has value {}", r.lambda, r.mu, format_q(&r.value))
                    });
                }
                Ok(o)
            }),
        });
    }
    for &name in SUPER_SPECS {
        let data = SuperRootData::new(&catalog(name)?)?;
        if data.rank() > config.max_rank {
            continue;
        }
        out.push(Cell {
            check: 3,
            key: name.to_string(),
            run: Box::new(move || delta_finiteness_cell(&data, -5)),
        });
    }
    for (i, &name) in OBSTRUCTION_SPECS.iter().enumerate() {
        let spec = catalog(name)?;
        let (samples, seed) = (config.samples, config.seed);
        out.push(Cell {
            check: 4,
            key: name.to_string(),
            run: Box::new(move || {
                let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
                let mut o = CellOutcome::default();
                for k in 0..samples {
                    let c = random_closed_candidate(&spec, 1, depth, &mut rng)?;
                    let trace = run_obstruction(&c, &EngineConfig::default())?;
                    let valid = check_trace(&c, &trace)?.valid;
                    o.case(trace.outcome == Outcome::Contradiction && valid, || {
                        format!(
                            "{name}: sample {k} ended in {:?}, checker valid: {valid}",
                            trace.outcome
                        )
                    });
                }
                Ok(o)
            }),
        });
    }
    Ok(out)
}

/// `|Δ(λ)|` against its closed form for level-1 weights whose labels on the
/// negative factor range over `lo..=0`.
pub fn delta_finiteness_cell(data: &SuperRootData, lo: i64) -> Result<CellOutcome> {
    let neg = data
        .negative_factor()
        .ok_or_else(|| Error::Hypothesis(format!("{} has no negative factor", data.spec().name())))?;
    let f = &data.factors()[neg];
    let mut o = CellOutcome::default();
    let mut labels = vec![lo; f.rank()];
    loop {
        let mut all = vec![0; data.rank()];
        all[f.offset..f.offset + f.rank()].copy_from_slice(&labels);
        let w = data.weight(&all, 0, 1)?;
        let set = nonpositive_root_set(data, &w, false)?;
        let count = nonpositive_root_count(data, &w)?;
        o.case(set.len() as u64 == count, || {
            format!(
                "{}: labels {labels:?} give {} roots, closed form {count}",
                data.spec().name(),
                set.len()
            )
        });
        // odometer over lo..=0
        let Some(i) = labels.iter().position(|&x| x < 0) else {
            return Ok(o);
        };
        labels[i] += 1;
        for x in &mut labels[..i] {
            *x = lo;
        }
    }
}

/// Sweeps every check over all cells concurrently and assembles the report
/// keyed by check and cell.
pub fn verify_all(config: &VerifyConfig) -> Result<VerificationReport> {
    let cells = cells(config)?;
    let results: Vec<(usize, String, u64, Result<CellOutcome>)> = cells
        .par_iter()
        .map(|c| {
            let start = Instant::now();
            let r = (c.run)();
            (c.check, c.key.clone(), start.elapsed().as_millis() as u64, r)
        })
        .collect();
    let mut grouped: BTreeMap<(usize, String), (u64, Result<CellOutcome>)> = BTreeMap::new();
    for (check, key, ms, r) in results {
        grouped.insert((check, key), (ms, r));
    }
    let mut checks: Vec<CheckReport> = CHECK_IDS
        .iter()
        .map(|id| CheckReport {
            id: id.to_string(),
            parameters: Vec::new(),
            cases: 0,
            passed: true,
            witnesses: 0,
            failures: Vec::new(),
            wall_ms: config.timings.then_some(0),
        })
        .collect();
    for ((check, key), (ms, r)) in grouped {
        let c = &mut checks[check];
        c.parameters.push(key.clone());
        if let Some(w) = c.wall_ms.as_mut() {
            *w += ms;
        }
        match r {
            Ok(o) => {
                c.cases += o.cases;
                c.witnesses += o.failures.len();
                c.failures.extend(o.failures);
            }
            Err(e) => {
                c.witnesses += 1;
                c.failures.push(format!("{key}: {e}"));
            }
        }
        c.passed = c.witnesses == 0;
    }
    Ok(VerificationReport {
        max_rank: config.max_rank,
        depth: config.depth,
        samples: config.samples,
        seed: config.seed,
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

impl Table for VerificationReport {
    fn table(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .checks
            .iter()
            .map(|c| {
                vec![
                    c.id.clone(),
                    c.parameters.len().to_string(),
                    c.cases.to_string(),
                    c.witnesses.to_string(),
                    if c.passed { "pass" } else { "FAIL" }.to_string(),
                    c.wall_ms.map_or("-".into(), |m| m.to_string()),
                ]
            })
            .collect();
        let mut out = format!(
            "rank ≤ {}, depth {}\n{}",
            self.max_rank,
            self.depth,
            render(&["check", "cells", "cases", "witnesses", "status", "ms"], &rows)
        );
        for c in &self.checks {
            for f in &c.failures {
                out.push_str(&format!("{}: {f}\n", c.id));
            }
        }
        out.push_str(if self.passed {
            "all checks pass\n"
        } else {
            "some checks FAIL\n"
        });
        out
    }
}
