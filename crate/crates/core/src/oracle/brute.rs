//! Brute-force references. Nothing here calls into the minors, analysis or
//! gap modules: functions are evaluated tuple by tuple through `eval`.

use crate::error::{Error, Result};
use crate::function::{has_repeat, FiniteFunction, Tuples, Value};

/// Essential arity by comparing every tuple with every one-coordinate change.
pub fn brute_ess(f: &FiniteFunction) -> usize {
    (0..f.n())
        .filter(|&i| {
            Tuples::new(f.k(), f.n()).any(|t| {
                let v = f.eval(&t).unwrap();
                (0..f.k()).any(|x| {
                    let mut u = t.clone();
                    u[i] = x;
                    f.eval(&u).unwrap() != v
                })
            })
        })
        .count()
}

/// Restricted growth strings of length `n`: every set partition of `{0..n}`
/// exactly once, block labels in order of first appearance.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, max: usize, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for label in 0..=max {
            prefix.push(label);
            go(prefix, max.max(label + 1), n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(&mut Vec::with_capacity(n), 0, n, &mut out);
    }
    out
}

/// `f(y_{sigma(0)}, ..., y_{sigma(n-1)})` as a function of `arity` variables.
pub fn brute_minor(f: &FiniteFunction, sigma: &[usize], arity: usize) -> FiniteFunction {
    FiniteFunction::from_fn(f.k(), arity, f.b(), |y| {
        let t: Vec<usize> = sigma.iter().map(|&s| y[s]).collect();
        f.eval(&t).unwrap()
    })
    .unwrap()
}

/// `ess f - max ess g` over the strict simple minors `g < f`.
///
/// Every simple minor is equivalent to one obtained from a set partition of
/// the variables (non-surjective substitutions only add inessential
/// variables, and relabeling targets permutes them), so the maximum ranges
/// over all partitions. A minor `g <= f` is strict iff `ess g < ess f`.
pub fn oracle_gap(f: &FiniteFunction) -> Result<usize> {
    let e = brute_ess(f);
    if e < 2 {
        return Err(Error::GapUndefined { ess: e });
    }
    let essl = set_partitions(f.n())
        .into_iter()
        .map(|rgs| {
            let arity = rgs.iter().max().unwrap() + 1;
            brute_ess(&brute_minor(f, &rgs, arity))
        })
        .filter(|&ess| ess < e)
        .max()
        .expect("the one-block partition yields a strict minor");
    Ok(e - essl)
}

/// Number of tuples without a repeated coordinate, `k (k-1) ... (k-n+1)`.
pub fn off_diagonal_count(k: usize, n: usize) -> usize {
    if n == 1 || n > k {
        0
    } else {
        (0..n).map(|i| k - i).product()
    }
}

pub const DEFAULT_ORACLE_BUDGET: u128 = 10_000_000;

pub fn oracle_quasi_arity(f: &FiniteFunction) -> Result<usize> {
    oracle_quasi_arity_with_budget(f, DEFAULT_ORACLE_BUDGET)
}

/// Minimum essential arity over every completion of `f|_{A^n_=}`.
pub fn oracle_quasi_arity_with_budget(f: &FiniteFunction, budget: u128) -> Result<usize> {
    let free: Vec<usize> = if f.n() == 1 {
        Vec::new()
    } else {
        Tuples::new(f.k(), f.n())
            .enumerate()
            .filter(|(_, t)| !has_repeat(t))
            .map(|(i, _)| i)
            .collect()
    };
    let needed = (f.b() as u128).checked_pow(free.len() as u32).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::OracleInfeasible { needed, budget });
    }
    let mut table = f.table().to_vec();
    let mut digits = vec![0 as Value; free.len()];
    let mut best = usize::MAX;
    loop {
        for (&idx, &v) in free.iter().zip(&digits) {
            table[idx] = v;
        }
        let g = FiniteFunction::new(f.k(), f.n(), f.b(), table.clone())?;
        best = best.min(brute_ess(&g));
        if best == 0 {
            break;
        }
        // Next assignment of the free cells.
        let mut pos = digits.len();
        loop {
            if pos == 0 {
                return Ok(best);
            }
            pos -= 1;
            digits[pos] += 1;
            if (digits[pos] as usize) < f.b() {
                break;
            }
            digits[pos] = 0;
        }
    }
    Ok(best)
}
