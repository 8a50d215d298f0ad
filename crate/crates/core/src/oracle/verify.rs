//! Theorem sweeps: run one verifiable statement over an exhaustive or
//! sampled function space and collect counterexamples.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::brute::{oracle_gap, oracle_quasi_arity_with_budget, DEFAULT_ORACLE_BUDGET};
use super::generate::{
    function_at, gen_nonconstant_unary, gen_oddsupp_determined, gen_quasi_m_ary, gen_salomaa,
    gen_ternary_pattern, sample_function, space_size,
};
use crate::analysis::{ess, essential_part, essential_slots, DiagonalRestriction};
use crate::classify::{classify, classify_pseudo_boolean, ternary_pattern};
use crate::error::{Error, Result};
use crate::function::FiniteFunction;
use crate::gap::{arity_gap, is_semiprojection, quasi_arity, unique_unary_support};
use crate::minors::{diagonal, identification_minor};
use crate::oddsupp::is_restriction_determined_by_oddsupp;
use crate::text::render_line;

/// Default bound on the number of tables a sweep may examine.
pub const DEFAULT_SWEEP_BUDGET: u128 = 10_000_000;

/// Reads `ARITYGAP_BUDGET`, falling back to the default.
pub fn budget_from_env() -> u128 {
    std::env::var("ARITYGAP_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SWEEP_BUDGET)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theorem {
    /// All identification minors constant iff quasi-nullary (`n >= 2`).
    T3_5i,
    /// All identification minors essentially unary iff quasi-unary (`n = 2` or `n >= 4`).
    T3_5ii,
    /// Semiprojection iff every identification minor is a projection (`b = k`, `n >= 4`).
    Swierczkowski,
    /// Quasi-arity equals the brute-force minimum over supports.
    L3_4,
    /// `2 <= n <= k`, `qa = m < n` implies gap `n - m`.
    P4_2,
    /// `n > k` implies gap at most 2.
    T4_1,
    /// `n > 3`, `qa = n` implies gap at most 2.
    T4_3,
    /// For `0 <= m <= n - 3`: gap `n - m` iff `qa = m`.
    T4_4,
    /// Pseudo-Boolean classification agrees with the brute-force gap.
    T5_1,
    /// `n > max(k, 3)` and more than `2^(k-1)` values imply gap 1.
    L5_2,
    /// `n > 3`, `qa = n`, gap 2 imply a totally symmetric restriction and
    /// `f_{i<-j}` depending on exactly the slots other than `i, j`.
    T6_1,
    /// `n > 3`: gap 2 iff `qa = n - 2` or (`qa = n` and the restriction is oddsupp-determined).
    T6_3,
    /// As `T6_3` for every `n != 3`, with the general classifier cross-checked.
    T6_4ii,
    /// `n = 3`: gap 2 iff the ternary pattern exists, with its taxonomy.
    T6_4iii,
}

impl Theorem {
    pub const ALL: [Theorem; 14] = [
        Theorem::T3_5i,
        Theorem::T3_5ii,
        Theorem::Swierczkowski,
        Theorem::L3_4,
        Theorem::P4_2,
        Theorem::T4_1,
        Theorem::T4_3,
        Theorem::T4_4,
        Theorem::T5_1,
        Theorem::L5_2,
        Theorem::T6_1,
        Theorem::T6_3,
        Theorem::T6_4ii,
        Theorem::T6_4iii,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Theorem::T3_5i => "T3.5i",
            Theorem::T3_5ii => "T3.5ii",
            Theorem::Swierczkowski => "SWIER",
            Theorem::L3_4 => "L3.4",
            Theorem::P4_2 => "P4.2",
            Theorem::T4_1 => "T4.1",
            Theorem::T4_3 => "T4.3",
            Theorem::T4_4 => "T4.4",
            Theorem::T5_1 => "T5.1",
            Theorem::L5_2 => "L5.2",
            Theorem::T6_1 => "T6.1",
            Theorem::T6_3 => "T6.3",
            Theorem::T6_4ii => "T6.4ii",
            Theorem::T6_4iii => "T6.4iii",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown theorem id `{s}`")))
    }
}

/// Extra restriction on the instances of a sweep or enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Filter {
    /// Arity gap equals the value (functions with fewer than two essential
    /// variables never match).
    Gap(usize),
    /// Quasi-arity of the essential part equals the value.
    Qa(usize),
}

impl Filter {
    pub fn matches(self, f: &FiniteFunction) -> bool {
        match self {
            Filter::Gap(g) => arity_gap(f).is_ok_and(|r| r.gap == g),
            Filter::Qa(m) => quasi_arity(&essential_part(f).0) == m,
        }
    }
}

impl FromStr for Filter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("filter must be gap=<g> or qa=<m>, got `{s}`"));
        let (key, value) = s.split_once('=').ok_or_else(bad)?;
        let value: usize = value.trim().parse().map_err(|_| bad())?;
        match key.trim() {
            "gap" => Ok(Filter::Gap(value)),
            "qa" => Ok(Filter::Qa(value)),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMode {
    Exhaustive,
    /// Uniform samples plus `witnesses` constructed functions per generator.
    Sampled { count: usize, seed: u64, witnesses: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepSpec {
    pub theorem: Theorem,
    pub k: usize,
    pub n: usize,
    pub b: usize,
    pub mode: SweepMode,
    pub filter: Option<Filter>,
    /// Bound on tables examined; also bounds the support enumeration of `L3.4`.
    pub budget: u128,
}

impl SweepSpec {
    pub fn exhaustive(theorem: Theorem, k: usize, n: usize, b: usize) -> Self {
        SweepSpec {
            theorem,
            k,
            n,
            b,
            mode: SweepMode::Exhaustive,
            filter: None,
            budget: DEFAULT_SWEEP_BUDGET,
        }
    }

    pub fn sampled(theorem: Theorem, k: usize, n: usize, b: usize, count: usize, seed: u64) -> Self {
        SweepSpec {
            theorem,
            k,
            n,
            b,
            mode: SweepMode::Sampled {
                count,
                seed,
                witnesses: DEFAULT_WITNESSES,
            },
            filter: None,
            budget: DEFAULT_SWEEP_BUDGET,
        }
    }
}

pub const DEFAULT_WITNESSES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub function: FiniteFunction,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub theorem: Theorem,
    pub seed: Option<u64>,
    /// Instances generated.
    pub examined: usize,
    /// Instances satisfying the hypotheses, on which the statement was checked.
    pub checked: usize,
    /// Sorted by table.
    pub failures: Vec<Failure>,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn header(&self) -> String {
        let seed = self.seed.map_or_else(|| "none".to_string(), |s| s.to_string());
        format!(
            "theorem={} checked={} failures={} seed={seed}",
            self.theorem,
            self.checked,
            self.failures.len()
        )
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.header())?;
        for failure in &self.failures {
            write!(f, "\n{}", render_line(&failure.function))?;
        }
        Ok(())
    }
}

/// Result of checking one statement on one function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    NotApplicable,
    Holds,
    Fails(String),
}

impl Outcome {
    fn from_bool(ok: bool, detail: impl FnOnce() -> String) -> Outcome {
        if ok {
            Outcome::Holds
        } else {
            Outcome::Fails(detail())
        }
    }
}

fn identification_minors(f: &FiniteFunction) -> impl Iterator<Item = (usize, usize, FiniteFunction)> + '_ {
    let n = f.n();
    (0..n)
        .flat_map(move |i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(move |(i, j)| (i, j, identification_minor(f, i, j).expect("distinct slots")))
}

fn is_projection(f: &FiniteFunction) -> bool {
    (0..f.n()).any(|s| FiniteFunction::projection(f.k(), f.n(), s).is_ok_and(|p| p == *f))
}

/// Checks `theorem` on `f`. Statements about functions that depend on all
/// their variables are applied to the essential part of `f`.
pub fn check(theorem: Theorem, f: &FiniteFunction) -> Outcome {
    check_with_budget(theorem, f, DEFAULT_ORACLE_BUDGET)
}

pub fn check_with_budget(theorem: Theorem, f: &FiniteFunction, budget: u128) -> Outcome {
    let n = f.n();
    match theorem {
        Theorem::T3_5i => {
            if n < 2 {
                return Outcome::NotApplicable;
            }
            let minors_constant = identification_minors(f).all(|(_, _, m)| m.is_constant());
            let qa = quasi_arity(f);
            Outcome::from_bool(minors_constant == (qa == 0), || {
                format!("minors constant = {minors_constant}, qa = {qa}")
            })
        }
        Theorem::T3_5ii => {
            if !(n == 2 || n >= 4) {
                return Outcome::NotApplicable;
            }
            let minors: Vec<_> = identification_minors(f).collect();
            let all_unary = minors.iter().all(|(_, _, m)| ess(m) == 1);
            let qa = quasi_arity(f);
            if all_unary != (qa == 1) {
                return Outcome::Fails(format!("minors essentially unary = {all_unary}, qa = {qa}"));
            }
            // Minors of a quasi-unary (n >= 4) function are equivalent to its unique unary support.
            if qa == 1 && n >= 4 {
                let support = unique_unary_support(f).ok().and_then(|s| s.unique().cloned());
                let Some(support) = support else {
                    return Outcome::Fails("no unique unary support".into());
                };
                let d = diagonal(&support);
                for (i, j, m) in &minors {
                    if ess(m) != ess(&support) || diagonal(m) != d {
                        return Outcome::Fails(format!("minor ({},{}) not equivalent to the support", i + 1, j + 1));
                    }
                }
            }
            Outcome::Holds
        }
        Theorem::Swierczkowski => {
            if f.b() != f.k() || n < 4 {
                return Outcome::NotApplicable;
            }
            let semi = is_semiprojection(f).expect("b = k").is_some();
            let all_proj = identification_minors(f).all(|(_, _, m)| is_projection(&m));
            Outcome::from_bool(semi == all_proj, || {
                format!("semiprojection = {semi}, all minors projections = {all_proj}")
            })
        }
        Theorem::L3_4 => match oracle_quasi_arity_with_budget(f, budget) {
            Ok(expected) => {
                let qa = quasi_arity(f);
                Outcome::from_bool(qa == expected, || format!("qa = {qa}, oracle = {expected}"))
            }
            Err(_) => Outcome::NotApplicable,
        },
        Theorem::T5_1 => {
            if f.k() != 2 {
                return Outcome::NotApplicable;
            }
            let route = classify_pseudo_boolean(f).map(|c| c.gap);
            let oracle = oracle_gap(f);
            let direct = arity_gap(f).map(|r| r.gap);
            Outcome::from_bool(route == oracle && oracle == direct, || {
                format!("classifier {route:?}, oracle {oracle:?}, minors {direct:?}")
            })
        }
        _ => check_essential(theorem, &essential_part(f).0),
    }
}

/// Statements whose hypotheses include dependence on every variable.
fn check_essential(theorem: Theorem, g: &FiniteFunction) -> Outcome {
    let e = ess(g);
    if e < 2 {
        return Outcome::NotApplicable;
    }
    let k = g.k();
    let report = arity_gap(g).expect("at least two essential variables");
    let gap = report.gap;
    let qa = report.qa;
    let det = || {
        is_restriction_determined_by_oddsupp(g)
            .map(|p| p.is_determined())
            .unwrap_or(false)
    };
    match theorem {
        Theorem::P4_2 => {
            if e > k || qa >= e {
                return Outcome::NotApplicable;
            }
            Outcome::from_bool(gap == e - qa, || format!("n = {e}, qa = {qa}, gap = {gap}"))
        }
        Theorem::T4_1 => {
            if e <= k {
                return Outcome::NotApplicable;
            }
            Outcome::from_bool(gap <= 2, || format!("n = {e} > k = {k}, gap = {gap}"))
        }
        Theorem::T4_3 => {
            if e <= 3 || qa != e {
                return Outcome::NotApplicable;
            }
            Outcome::from_bool(gap <= 2, || format!("n = qa = {e}, gap = {gap}"))
        }
        Theorem::T4_4 => {
            for m in 0..=e.saturating_sub(3) {
                if e < 3 {
                    break;
                }
                if (gap == e - m) != (qa == m) {
                    return Outcome::Fails(format!("n = {e}, m = {m}, qa = {qa}, gap = {gap}"));
                }
            }
            Outcome::Holds
        }
        Theorem::L5_2 => {
            let range = g.range().len();
            if e <= k.max(3) || range <= 1 << (k - 1) {
                return Outcome::NotApplicable;
            }
            Outcome::from_bool(gap == 1, || format!("range {range}, gap = {gap}"))
        }
        Theorem::T6_1 => {
            if e <= 3 || qa != e || gap != 2 {
                return Outcome::NotApplicable;
            }
            if !DiagonalRestriction::new(g).is_totally_symmetric() {
                return Outcome::Fails("restriction not totally symmetric".into());
            }
            for (i, j, m) in identification_minors(g) {
                let slots: Vec<usize> = essential_slots(&m).into_iter().map(|w| w.slot).collect();
                let expected: Vec<usize> = (0..e).filter(|&s| s != i && s != j).collect();
                if slots != expected {
                    return Outcome::Fails(format!("minor ({},{}) depends on {slots:?}", i + 1, j + 1));
                }
            }
            Outcome::Holds
        }
        Theorem::T6_3 | Theorem::T6_4ii => {
            if (theorem == Theorem::T6_3 && e <= 3) || e == 3 {
                return Outcome::NotApplicable;
            }
            let predicted = qa + 2 == e || (qa == e && det());
            if (gap == 2) != predicted {
                return Outcome::Fails(format!("n = {e}, qa = {qa}, gap = {gap}"));
            }
            if theorem == Theorem::T6_4ii {
                let c = classify(g).expect("at least two essential variables");
                if c.gap != gap {
                    return Outcome::Fails(format!("classifier gap {} vs {gap}", c.gap));
                }
            }
            Outcome::Holds
        }
        Theorem::T6_4iii => {
            if e != 3 {
                return Outcome::NotApplicable;
            }
            let pattern = ternary_pattern(g).expect("ternary");
            if (gap == 2) != pattern.is_some() {
                return Outcome::Fails(format!("gap = {gap}, pattern = {:?}", pattern.map(|p| p.pattern)));
            }
            if let Some(p) = pattern {
                let expected_qa = if p.ones() == 1 { 1 } else { 3 };
                if qa != expected_qa {
                    return Outcome::Fails(format!("pattern {:?} with qa = {qa}", p.pattern));
                }
                if (p.pattern == [1, 1, 1]) != det() {
                    return Outcome::Fails(format!("pattern {:?}, oddsupp-determined = {}", p.pattern, det()));
                }
            }
            let c = classify(g).expect("at least two essential variables");
            Outcome::from_bool(c.gap == gap, || format!("classifier gap {} vs {gap}", c.gap))
        }
        _ => unreachable!("handled in check"),
    }
}

/// Constructed functions exercising both sides of each biconditional.
pub fn witnesses(k: usize, n: usize, b: usize, seed: u64, per_generator: usize) -> Vec<FiniteFunction> {
    let mut out = Vec::new();
    let mix = |tag: u64, i: usize| seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (tag << 48) ^ i as u64;
    for m in 0..=n {
        if gen_quasi_m_ary(k, n, b, m, mix(1 + m as u64, 0)).is_err() {
            continue;
        }
        for i in 0..per_generator {
            if let Ok(f) = gen_quasi_m_ary(k, n, b, m, mix(1 + m as u64, i)) {
                out.push(f);
            }
        }
    }
    if n >= 4 && gen_oddsupp_determined(k, n, b, mix(100, 0)).is_ok() {
        for i in 0..per_generator {
            if let Ok(f) = gen_oddsupp_determined(k, n, b, mix(100, i)) {
                out.push(f);
            }
        }
    }
    if n == 3 {
        for i in 0..per_generator {
            let h = if b == k && i % 2 == 0 {
                FiniteFunction::projection(k, 1, 0).expect("valid")
            } else {
                gen_nonconstant_unary(k, b, mix(200, i))
            };
            let bits = i % 8;
            let pattern = [(bits >> 2 & 1) as u8, (bits >> 1 & 1) as u8, (bits & 1) as u8];
            if let Ok(f) = gen_ternary_pattern(&h, pattern, mix(300, i)) {
                out.push(f);
            }
        }
    }
    if n == k && b == k {
        out.push(gen_salomaa(k).expect("valid"));
    }
    out
}

fn instances(spec: &SweepSpec) -> Result<Vec<FiniteFunction>> {
    match spec.mode {
        SweepMode::Exhaustive => {
            let count = space_size(spec.k, spec.n, spec.b)?;
            if count > spec.budget {
                return Err(Error::OracleInfeasible {
                    needed: count,
                    budget: spec.budget,
                });
            }
            Ok((0..count)
                .into_par_iter()
                .map(|i| function_at(spec.k, spec.n, spec.b, i))
                .collect())
        }
        SweepMode::Sampled { count, seed, witnesses: per } => {
            if count as u128 > spec.budget {
                return Err(Error::OracleInfeasible {
                    needed: count as u128,
                    budget: spec.budget,
                });
            }
            let mut fs: Vec<FiniteFunction> = (0..count as u64)
                .into_par_iter()
                .map(|i| sample_function(spec.k, spec.n, spec.b, seed, i))
                .collect::<Result<_>>()?;
            fs.extend(witnesses(spec.k, spec.n, spec.b, seed, per));
            Ok(fs)
        }
    }
}

/// Runs a sweep. Output is independent of the rayon thread count.
pub fn verify(spec: &SweepSpec) -> Result<VerificationReport> {
    let start = Instant::now();
    let fs = instances(spec)?;
    let outcomes: Vec<Outcome> = fs
        .par_iter()
        .map(|f| {
            if spec.filter.is_some_and(|flt| !flt.matches(f)) {
                Outcome::NotApplicable
            } else {
                check_with_budget(spec.theorem, f, spec.budget)
            }
        })
        .collect();
    let checked = outcomes.iter().filter(|o| **o != Outcome::NotApplicable).count();
    let mut failures: Vec<Failure> = fs
        .iter()
        .zip(outcomes)
        .filter_map(|(f, o)| match o {
            Outcome::Fails(detail) => Some(Failure {
                function: f.clone(),
                detail,
            }),
            _ => None,
        })
        .collect();
    failures.sort_by(|a, b| a.function.table().cmp(b.function.table()));
    failures.dedup_by(|a, b| a.function == b.function);
    Ok(VerificationReport {
        theorem: spec.theorem,
        seed: match spec.mode {
            SweepMode::Exhaustive => None,
            SweepMode::Sampled { seed, .. } => Some(seed),
        },
        examined: fs.len(),
        checked,
        failures,
        elapsed: start.elapsed(),
    })
}

/// Re-runs a single failure through the public operations.
pub fn replay(theorem: Theorem, f: &FiniteFunction) -> Outcome {
    check(theorem, f)
}
