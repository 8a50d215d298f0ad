//! The map `oddsupp`, sending a tuple to the set of values occurring in it an
//! odd number of times, and tests for functions that factor through it.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::analysis::DiagonalRestriction;
use crate::error::{Error, Result};
use crate::function::{FiniteFunction, Value};

/// A subset of `{0..k}` as a bit mask, `k <= 64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(pub u64);

impl Subset {
    pub fn contains(self, a: usize) -> bool {
        a < 64 && self.0 & (1 << a) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn elements(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&a| self.contains(a))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.elements().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}}")
    }
}

pub fn oddsupp(tuple: &[usize]) -> Subset {
    Subset(tuple.iter().fold(0u64, |acc, &a| acc ^ (1 << a)))
}

/// Outcome of an oddsupp test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OddsuppProfile {
    /// `f` is constant on every fiber; `fstar` is the induced map on the
    /// reachable subsets.
    Factors {
        fstar: BTreeMap<Subset, Value>,
        nonconstant: bool,
        restricted: bool,
    },
    /// The lexicographically first pair of tuples with equal oddsupp and
    /// different values.
    Refuted { left: Vec<usize>, right: Vec<usize> },
}

impl OddsuppProfile {
    /// The verdict. The restricted test additionally requires a
    /// nonconstant induced map.
    pub fn is_determined(&self) -> bool {
        match self {
            OddsuppProfile::Factors {
                nonconstant,
                restricted,
                ..
            } => !restricted || *nonconstant,
            OddsuppProfile::Refuted { .. } => false,
        }
    }

    pub fn fstar(&self) -> Option<&BTreeMap<Subset, Value>> {
        match self {
            OddsuppProfile::Factors { fstar, .. } => Some(fstar),
            OddsuppProfile::Refuted { .. } => None,
        }
    }
}

impl fmt::Display for OddsuppProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OddsuppProfile::Factors { fstar, nonconstant, .. } => {
                write!(f, "determined={} nonconstant={nonconstant} fstar=", self.is_determined())?;
                for (i, (s, v)) in fstar.iter().enumerate() {
                    if i > 0 {
                        write!(f, ";")?;
                    }
                    write!(f, "{s}:{v}")?;
                }
                Ok(())
            }
            OddsuppProfile::Refuted { left, right } => {
                let show = |t: &[usize]| t.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",");
                write!(f, "determined=false witness=({})|({})", show(left), show(right))
            }
        }
    }
}

fn check_domain(f: &FiniteFunction) -> Result<()> {
    if f.k() > 64 {
        return Err(Error::UnsupportedDomain(format!(
            "oddsupp supports k <= 64, got {}",
            f.k()
        )));
    }
    Ok(())
}

fn fibers(f: &FiniteFunction, indices: impl Iterator<Item = usize>, restricted: bool) -> OddsuppProfile {
    let c = f.codec();
    let mut t = vec![0; f.n()];
    // Per fiber: first index, its value, and the first later index with another value.
    let mut first: BTreeMap<Subset, (usize, Value, Option<usize>)> = BTreeMap::new();
    for idx in indices {
        c.decode_into(idx, &mut t);
        let v = f.at(idx);
        match first.entry(oddsupp(&t)) {
            Entry::Vacant(e) => {
                e.insert((idx, v, None));
            }
            Entry::Occupied(mut e) => {
                let (_, w, conflict) = e.get_mut();
                if *w != v && conflict.is_none() {
                    *conflict = Some(idx);
                }
            }
        }
    }
    let witness = first
        .values()
        .filter_map(|&(rep, _, conflict)| conflict.map(|other| (rep, other)))
        .min();
    if let Some((left, right)) = witness {
        return OddsuppProfile::Refuted {
            left: c.decode(left),
            right: c.decode(right),
        };
    }
    let fstar: BTreeMap<Subset, Value> = first.into_iter().map(|(s, (_, v, _))| (s, v)).collect();
    let mut values = fstar.values();
    let nonconstant = match values.next() {
        Some(v) => values.any(|w| w != v),
        None => false,
    };
    OddsuppProfile::Factors {
        fstar,
        nonconstant,
        restricted,
    }
}

/// Whether `f = f* . oddsupp` on all of `A^n`.
pub fn is_determined_by_oddsupp(f: &FiniteFunction) -> Result<OddsuppProfile> {
    check_domain(f)?;
    Ok(fibers(f, 0..f.table().len(), false))
}

/// Whether `f|_{A^n_=} = f* . oddsupp` with `f*` nonconstant. The reachable
/// subsets have the parity of `n` and at most `n - 2` elements.
pub fn is_restriction_determined_by_oddsupp(f: &FiniteFunction) -> Result<OddsuppProfile> {
    check_domain(f)?;
    if f.n() < 2 {
        return Err(Error::UnsupportedArity(f.n()));
    }
    Ok(fibers(f, DiagonalRestriction::new(f).indices(), true))
}

/// Subsets of `{0..k}` reachable as `oddsupp` of some tuple in `A^n`, or in
/// `A^n_=` when `restricted`. Computed from cardinalities alone: a subset
/// `S` is reachable iff `|S| <= n`, `|S| = n (mod 2)`, and (restricted)
/// `|S| <= n - 2`, with `|S| <= k` throughout.
pub fn reachable_subsets(k: usize, n: usize, restricted: bool) -> Vec<Subset> {
    let max = if restricted { n.saturating_sub(2) } else { n };
    (0u64..(1 << k))
        .map(Subset)
        .filter(|s| s.len() <= max && s.len() % 2 == n % 2)
        .filter(|_| !restricted || n >= 2)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::Tuples;
    use crate::oracle::sample_functions;
    use crate::samples::*;

    #[test]
    fn oddsupp_examples() {
        assert_eq!(oddsupp(&[0, 1, 1]), Subset(0b1));
        for a in 0..5 {
            assert!(oddsupp(&[a, a]).is_empty());
        }
        assert_eq!(oddsupp(&[0, 1, 2]), Subset(0b111));
        assert_eq!(oddsupp(&[0, 1, 2]).to_string(), "{0,1,2}");
    }

    #[test]
    fn xor3_is_determined() {
        let p = is_determined_by_oddsupp(&xor3()).unwrap();
        assert!(p.is_determined());
        let fs = p.fstar().unwrap();
        assert_eq!(fs.get(&Subset(0b01)), Some(&0));
        assert_eq!(fs.get(&Subset(0b10)), Some(&1));
        assert_eq!(fs.get(&Subset(0b11)), None);
        assert!(fs.keys().all(|s| s.len() % 2 == 1));
    }

    #[test]
    fn maj3_is_refuted() {
        match is_determined_by_oddsupp(&maj3()).unwrap() {
            OddsuppProfile::Refuted { left, right } => {
                assert_eq!(oddsupp(&left), oddsupp(&right));
                assert_ne!(maj3().eval(&left), maj3().eval(&right));
                assert_eq!((left, right), (vec![0, 0, 0], vec![0, 1, 1]));
            }
            p => panic!("{p:?}"),
        }
    }

    #[test]
    fn unary_functions_are_determined() {
        for f in sample_functions(5, 1, 3, 50, 2) {
            assert!(is_determined_by_oddsupp(&f).unwrap().is_determined());
        }
    }

    #[test]
    fn restricted_examples() {
        assert!(is_restriction_determined_by_oddsupp(&xor3()).unwrap().is_determined());
        let p = is_restriction_determined_by_oddsupp(&salomaa3()).unwrap();
        assert!(matches!(p, OddsuppProfile::Factors { nonconstant: false, .. }));
        assert!(!p.is_determined());

        // k = 3, n = 4: f* is 0 on the empty set and 1 on 2-subsets.
        let f = FiniteFunction::from_fn(3, 4, 2, |t| {
            if crate::function::has_repeat(t) {
                Value::from(!oddsupp(t).is_empty())
            } else {
                0
            }
        })
        .unwrap();
        let p = is_restriction_determined_by_oddsupp(&f).unwrap();
        assert!(p.is_determined());
        assert_eq!(p.fstar().unwrap().len(), 4);
        assert!(is_restriction_determined_by_oddsupp(&FiniteFunction::projection(2, 1, 0).unwrap()).is_err());
    }

    #[test]
    fn binary_restriction_is_never_determined() {
        // A^2_= is the pure diagonal and every oddsupp there is empty.
        for f in sample_functions(3, 2, 3, 50, 9) {
            let p = is_restriction_determined_by_oddsupp(&f).unwrap();
            assert!(!p.is_determined());
            match p {
                OddsuppProfile::Factors { fstar, .. } => {
                    assert_eq!(fstar.keys().copied().collect::<Vec<_>>(), vec![Subset(0)]);
                }
                OddsuppProfile::Refuted { left, right } => {
                    assert!(left[0] == left[1] && right[0] == right[1]);
                }
            }
        }
    }

    #[test]
    fn reachable_subsets_match_enumeration() {
        for k in 2..=4 {
            for n in 1..=6 {
                for restricted in [false, true] {
                    let mut seen: Vec<Subset> = Tuples::new(k, n)
                        .filter(|t| !restricted || n == 1 || crate::function::has_repeat(t))
                        .map(|t| oddsupp(&t))
                        .collect();
                    seen.sort();
                    seen.dedup();
                    if restricted && n == 1 {
                        continue;
                    }
                    assert_eq!(seen, reachable_subsets(k, n, restricted), "k={k} n={n} r={restricted}");
                }
            }
        }
    }

    #[test]
    fn witnesses_are_valid() {
        for f in sample_functions(3, 4, 2, 100, 4) {
            for p in [
                is_determined_by_oddsupp(&f).unwrap(),
                is_restriction_determined_by_oddsupp(&f).unwrap(),
            ] {
                if let OddsuppProfile::Refuted { left, right } = p {
                    assert_eq!(oddsupp(&left), oddsupp(&right));
                    assert_ne!(f.eval(&left), f.eval(&right));
                }
            }
        }
    }
}
