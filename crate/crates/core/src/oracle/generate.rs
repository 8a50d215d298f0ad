//! Seeded generators for functions with prescribed structure.
//!
//! Each generator takes a single `u64` seed; attempt `i` draws from ChaCha8
//! stream `i`, so outputs depend only on the seed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::{ess, DiagonalRestriction};
use crate::error::{Error, Result};
use crate::function::{has_repeat, FiniteFunction, Tuples, Value};
use crate::gap::quasi_arity;
use crate::oddsupp::{oddsupp, reachable_subsets, Subset};

pub const MAX_ATTEMPTS: u64 = 1000;

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniformly random table.
pub fn random_function(k: usize, n: usize, b: usize, rng: &mut impl Rng) -> Result<FiniteFunction> {
    FiniteFunction::from_fn(k, n, b, |_| rng.random_range(0..b) as Value)
}

/// `count` uniform samples; sample `i` depends only on `(seed, i)`.
pub fn sample_function(k: usize, n: usize, b: usize, seed: u64, index: u64) -> Result<FiniteFunction> {
    random_function(k, n, b, &mut rng_for(seed, index))
}

pub fn sample_functions(k: usize, n: usize, b: usize, count: usize, seed: u64) -> Vec<FiniteFunction> {
    (0..count as u64)
        .map(|i| sample_function(k, n, b, seed, i).expect("valid parameters"))
        .collect()
}

/// The operation on `{0..k}` with value 1 at `(0, 1, ..., k-1)` and 0 elsewhere.
pub fn gen_salomaa(k: usize) -> Result<FiniteFunction> {
    FiniteFunction::from_fn(k, k, k, |t| t.iter().enumerate().all(|(i, &a)| a == i) as Value)
}

/// A function agreeing with `support` on `A^n_=` with uniformly random
/// values on the remaining tuples.
pub fn gen_with_support(support: &FiniteFunction, seed: u64) -> FiniteFunction {
    let mut rng = rng_for(seed, 0);
    let b = support.b();
    let one = support.n() == 1;
    FiniteFunction::from_fn(support.k(), support.n(), b, |t| {
        if one || has_repeat(t) {
            support.eval_unchecked(t)
        } else {
            rng.random_range(0..b) as Value
        }
    })
    .expect("same size as the support")
}

/// An essentially `n`-ary function of quasi-arity `m`: an essentially
/// `m`-ary function on random slots is copied onto `A^n_=` and the other
/// tuples are filled at random until every slot is essential.
pub fn gen_quasi_m_ary(k: usize, n: usize, b: usize, m: usize, seed: u64) -> Result<FiniteFunction> {
    let invalid = |why: &str| Err(Error::UnsupportedDomain(format!("no quasi-{m}-ary essentially {n}-ary function on k = {k}: {why}")));
    if m > n {
        return Err(Error::InvalidArgument(format!("m = {m} exceeds n = {n}")));
    }
    if m < n && n > k {
        return invalid("A^n_= = A^n when n > k, so quasi-arity equals essential arity");
    }
    if n == 1 && m == 0 {
        return invalid("a unary function with an essential slot is not constant");
    }
    if n == 2 && m == 2 {
        return invalid("binary functions have quasi-arity at most 1");
    }
    FiniteFunction::constant(k, n, b, 0)?;
    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = rng_for(seed, attempt);
        let mut slots: Vec<usize> = (0..n).collect();
        slots.shuffle(&mut rng);
        let mut slots = slots[..m].to_vec();
        slots.sort_unstable();
        let core = if m == 0 {
            FiniteFunction::constant(k, 1, b, rng.random_range(0..b) as Value)?
        } else {
            let h = random_function(k, m, b, &mut rng)?;
            if ess(&h) != m {
                continue;
            }
            h
        };
        let f = FiniteFunction::from_fn(k, n, b, |t| {
            if n == 1 || has_repeat(t) {
                if m == 0 {
                    core.at(0)
                } else {
                    let sub: Vec<usize> = slots.iter().map(|&s| t[s]).collect();
                    core.eval_unchecked(&sub)
                }
            } else {
                rng.random_range(0..b) as Value
            }
        })?;
        if ess(&f) == n && quasi_arity(&f) == m {
            return Ok(f);
        }
    }
    Err(Error::InvalidArgument(format!(
        "no quasi-{m}-ary function found for k = {k}, n = {n}, b = {b} after {MAX_ATTEMPTS} attempts"
    )))
}

/// A function of quasi-arity `n` whose restriction to `A^n_=` is `f* . oddsupp`
/// for a random nonconstant `f*`.
pub fn gen_oddsupp_determined(k: usize, n: usize, b: usize, seed: u64) -> Result<FiniteFunction> {
    if n < 4 {
        return Err(Error::InvalidArgument(format!("oddsupp generator needs n >= 4, got {n}")));
    }
    if k > 16 {
        return Err(Error::InvalidArgument(format!("oddsupp generator supports k <= 16, got {k}")));
    }
    let reachable = reachable_subsets(k, n, true);
    if reachable.len() < 2 {
        return Err(Error::InvalidArgument("fewer than two reachable subsets".into()));
    }
    FiniteFunction::constant(k, n, b, 0)?;
    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = rng_for(seed, attempt);
        let fstar: Vec<(Subset, Value)> = reachable
            .iter()
            .map(|&s| (s, rng.random_range(0..b) as Value))
            .collect();
        if fstar.iter().all(|&(_, v)| v == fstar[0].1) {
            continue;
        }
        let f = FiniteFunction::from_fn(k, n, b, |t| {
            if has_repeat(t) {
                let s = oddsupp(t);
                fstar.iter().find(|(r, _)| *r == s).expect("reachable").1
            } else {
                rng.random_range(0..b) as Value
            }
        })?;
        if DiagonalRestriction::new(&f).ess() == n {
            return Ok(f);
        }
    }
    Err(Error::InvalidArgument(format!(
        "no function of quasi-arity {n} found for k = {k}, b = {b} after {MAX_ATTEMPTS} attempts"
    )))
}

/// A ternary function with `f(x1,x0,x0) = h(x_{i1})`, `f(x0,x1,x0) = h(x_{i2})`,
/// `f(x0,x0,x1) = h(x_{i3})` on `A^3_=` and random values elsewhere.
pub fn gen_ternary_pattern(h: &FiniteFunction, pattern: [u8; 3], seed: u64) -> Result<FiniteFunction> {
    if h.n() != 1 {
        return Err(Error::InvalidArgument("h must be unary".into()));
    }
    let mut rng = rng_for(seed, 0);
    let b = h.b();
    FiniteFunction::from_fn(h.k(), 3, b, |t| {
        let odd = if t[0] == t[1] && t[1] == t[2] {
            None
        } else if t[1] == t[2] {
            Some(0)
        } else if t[0] == t[2] {
            Some(1)
        } else if t[0] == t[1] {
            Some(2)
        } else {
            return rng.random_range(0..b) as Value;
        };
        match odd {
            None => h.at(t[0]),
            Some(p) => {
                let x0 = t[(p + 1) % 3];
                let x1 = t[p];
                h.at(if pattern[p] == 1 { x1 } else { x0 })
            }
        }
    })
}

/// A random nonconstant unary function.
pub fn gen_nonconstant_unary(k: usize, b: usize, seed: u64) -> FiniteFunction {
    for attempt in 0.. {
        let f = random_function(k, 1, b, &mut rng_for(seed, attempt)).expect("valid parameters");
        if !f.is_constant() {
            return f;
        }
    }
    unreachable!()
}

/// Every function of the given shape, in lexicographic table order.
pub fn enumerate(k: usize, n: usize, b: usize) -> Result<Vec<FiniteFunction>> {
    enumerate_with_budget(k, n, b, super::verify::DEFAULT_SWEEP_BUDGET)
}

pub fn enumerate_with_budget(k: usize, n: usize, b: usize, budget: u128) -> Result<Vec<FiniteFunction>> {
    let count = space_size(k, n, b)?;
    if count > budget {
        return Err(Error::OracleInfeasible { needed: count, budget });
    }
    Ok((0..count).map(|i| function_at(k, n, b, i)).collect())
}

/// `b^(k^n)`, saturating.
pub fn space_size(k: usize, n: usize, b: usize) -> Result<u128> {
    let len = FiniteFunction::constant(k, n, b, 0)?.table().len();
    Ok((b as u128).checked_pow(len as u32).unwrap_or(u128::MAX))
}

/// The function whose table, read as a base-`b` numeral with the first
/// entry most significant, equals `index`.
pub fn function_at(k: usize, n: usize, b: usize, mut index: u128) -> FiniteFunction {
    let len = Tuples::new(k, n).count();
    let mut table = vec![0; len];
    for cell in table.iter_mut().rev() {
        *cell = (index % b as u128) as Value;
        index /= b as u128;
    }
    FiniteFunction::new(k, n, b, table).expect("valid parameters")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::ternary_pattern;
    use crate::gap::arity_gap;
    use crate::minors::identification_minor;
    use crate::oddsupp::{is_determined_by_oddsupp, is_restriction_determined_by_oddsupp};

    #[test]
    fn salomaa_tables() {
        assert_eq!(gen_salomaa(2).unwrap().table(), &[0, 1, 0, 0]);
        assert_eq!(gen_salomaa(3).unwrap(), crate::samples::salomaa3());
        for k in 2..=4 {
            assert_eq!(arity_gap(&gen_salomaa(k).unwrap()).unwrap().gap, k);
        }
    }

    #[test]
    fn quasi_examples() {
        let f = gen_quasi_m_ary(3, 3, 2, 0, 1).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert!(identification_minor(&f, i, j).unwrap().is_constant());
                }
            }
        }
        let f = gen_quasi_m_ary(4, 3, 2, 1, 2).unwrap();
        assert_eq!(ess(&f), 3);
        assert_eq!(DiagonalRestriction::new(&f).ess(), 1);
        let f = gen_quasi_m_ary(3, 2, 2, 0, 3).unwrap();
        assert!(!f.is_constant() && crate::minors::diagonal(&f).is_constant());
    }

    #[test]
    fn quasi_rejects_contradictions() {
        assert!(gen_quasi_m_ary(3, 4, 2, 1, 0).is_err());
        assert!(gen_quasi_m_ary(3, 2, 2, 2, 0).is_err());
        assert!(gen_quasi_m_ary(3, 2, 2, 3, 0).is_err());
        assert!(gen_quasi_m_ary(3, 1, 2, 0, 0).is_err());
        assert!(gen_quasi_m_ary(3, 4, 2, 4, 0).is_ok());
    }

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(gen_quasi_m_ary(4, 4, 3, 2, 9), gen_quasi_m_ary(4, 4, 3, 2, 9));
        assert_eq!(gen_oddsupp_determined(3, 4, 2, 9), gen_oddsupp_determined(3, 4, 2, 9));
        assert_eq!(sample_functions(3, 3, 2, 5, 1), sample_functions(3, 3, 2, 5, 1));
        assert_ne!(sample_functions(3, 3, 2, 5, 1), sample_functions(3, 3, 2, 5, 2));
    }

    #[test]
    fn oddsupp_examples() {
        let f = gen_oddsupp_determined(3, 4, 2, 0).unwrap();
        assert_eq!(arity_gap(&f).unwrap().gap, 2);
        assert!(DiagonalRestriction::new(&f).is_totally_symmetric());
        assert!(is_restriction_determined_by_oddsupp(&f).unwrap().is_determined());
        let f = gen_oddsupp_determined(2, 4, 2, 0).unwrap();
        assert!(is_determined_by_oddsupp(&f).unwrap().is_determined());
        assert!(gen_oddsupp_determined(3, 3, 2, 0).is_err());
    }

    #[test]
    fn ternary_generator_round_trips() {
        let id = FiniteFunction::projection(3, 1, 0).unwrap();
        for bits in 0..8u8 {
            let p = [bits >> 2 & 1, bits >> 1 & 1, bits & 1];
            let f = gen_ternary_pattern(&id, p, bits as u64).unwrap();
            assert_eq!(ternary_pattern(&f).unwrap().map(|t| t.pattern), Some(p));
        }
    }

    #[test]
    fn enumeration_order() {
        let all = enumerate(2, 1, 2).unwrap();
        let tables: Vec<&[Value]> = all.iter().map(|f| f.table()).collect();
        assert_eq!(tables, vec![&[0, 0][..], &[0, 1], &[1, 0], &[1, 1]]);
        assert_eq!(enumerate(2, 2, 2).unwrap().len(), 16);
        assert!(enumerate_with_budget(2, 3, 2, 100).is_err());
    }
}
