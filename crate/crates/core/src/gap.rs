//! Quasi-arity, semiprojections, and the arity gap.
//!
//! A support of `f` is any total function agreeing with `f` on `A^n_=`; the
//! quasi-arity is the least essential arity among supports. The arity gap of
//! a function with at least two essential variables is the least drop in
//! essential arity caused by identifying two of its essential variables.

use std::fmt;

use rayon::prelude::*;

use crate::analysis::{ess, essential_part, DiagonalRestriction};
use crate::error::{Error, Result};
use crate::function::FiniteFunction;
use crate::minors::{diagonal, identification_minor};

pub fn quasi_arity(f: &FiniteFunction) -> usize {
    match f.n() {
        1 => ess(f),
        2 => usize::from(!diagonal(f).is_constant()),
        _ => DiagonalRestriction::new(f).ess(),
    }
}

/// The least slot `t` with `f(a) = a_t` on all of `A^n_=`, if any.
pub fn is_semiprojection(f: &FiniteFunction) -> Result<Option<usize>> {
    if f.b() != f.k() {
        return Err(Error::UnsupportedCodomain { k: f.k(), b: f.b() });
    }
    let r = DiagonalRestriction::new(f);
    let c = f.codec();
    let mut alive: Vec<bool> = vec![true; f.n()];
    let mut t = vec![0; f.n()];
    for idx in r.indices() {
        c.decode_into(idx, &mut t);
        let v = f.at(idx) as usize;
        for (s, ok) in alive.iter_mut().enumerate() {
            *ok &= t[s] == v;
        }
        if !alive.iter().any(|&x| x) {
            return Ok(None);
        }
    }
    Ok(alive.iter().position(|&x| x))
}

/// The essentially at most unary support(s) singled out by the quasi-arity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnarySupport {
    /// The unique constant support of a quasi-nullary function.
    Constant(FiniteFunction),
    /// The unique essentially unary support `diag_f(x_slot)`.
    Unary { slot: usize, support: FiniteFunction },
    /// A quasi-unary binary function has two: `diag_f(x_1)` and `diag_f(x_2)`.
    Ambiguous([FiniteFunction; 2]),
}

impl UnarySupport {
    /// The support when it is unique.
    pub fn unique(&self) -> Option<&FiniteFunction> {
        match self {
            UnarySupport::Constant(g) | UnarySupport::Unary { support: g, .. } => Some(g),
            UnarySupport::Ambiguous(_) => None,
        }
    }
}

fn diag_of_slot(f: &FiniteFunction, slot: usize) -> FiniteFunction {
    let d = diagonal(f);
    FiniteFunction::from_fn(f.k(), f.n(), f.b(), |t| d.at(t[slot])).expect("same size as f")
}

pub fn unique_unary_support(f: &FiniteFunction) -> Result<UnarySupport> {
    let qa = quasi_arity(f);
    match qa {
        0 => {
            let d = diagonal(f);
            Ok(UnarySupport::Constant(FiniteFunction::constant(f.k(), f.n(), f.b(), d.at(0))?))
        }
        1 if f.n() == 2 => Ok(UnarySupport::Ambiguous([diag_of_slot(f, 0), diag_of_slot(f, 1)])),
        1 => {
            let slot = if f.n() == 1 {
                0
            } else {
                DiagonalRestriction::new(f).essential_slots()[0].slot
            };
            Ok(UnarySupport::Unary {
                slot,
                support: diag_of_slot(f, slot),
            })
        }
        _ => Err(Error::NoSuchSupport { qa }),
    }
}

/// Arity gap of a function and the quantities it is computed from.
///
/// Everything except `slots` and `pair` describes the essential part of the
/// input, i.e. the function with its inessential slots removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapReport {
    pub ess: usize,
    pub qa: usize,
    pub essl: usize,
    pub gap: usize,
    /// Lexicographically least pair of original slots `(i, j)`, `i < j`,
    /// whose identification achieves the gap.
    pub pair: (usize, usize),
    /// Essential slots of the input, increasing.
    pub slots: Vec<usize>,
    /// The unique essentially at most unary support of the essential part,
    /// when the quasi-arity admits one.
    pub support: Option<FiniteFunction>,
}

impl fmt::Display for GapReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ess={} qa={} essl={} gap={} pair={},{}",
            self.ess,
            self.qa,
            self.essl,
            self.gap,
            self.pair.0 + 1,
            self.pair.1 + 1
        )
    }
}

pub fn arity_gap(f: &FiniteFunction) -> Result<GapReport> {
    let (g, slots) = essential_part(f);
    let e = slots.len();
    if e < 2 {
        return Err(Error::GapUndefined { ess: e });
    }
    let pairs: Vec<(usize, usize)> = (0..e).flat_map(|i| (i + 1..e).map(move |j| (i, j))).collect();
    let drops: Vec<usize> = if g.table().len() >= 4096 {
        pairs
            .par_iter()
            .map(|&(i, j)| e - ess(&identification_minor(&g, i, j).expect("distinct slots")))
            .collect()
    } else {
        pairs
            .iter()
            .map(|&(i, j)| e - ess(&identification_minor(&g, i, j).expect("distinct slots")))
            .collect()
    };
    let (best, &gap) = drops
        .iter()
        .enumerate()
        .min_by_key(|&(idx, d)| (*d, idx))
        .expect("at least one pair");
    let (i, j) = pairs[best];
    let qa = quasi_arity(&g);
    let support = match unique_unary_support(&g) {
        Ok(s) => s.unique().cloned(),
        Err(_) => None,
    };
    Ok(GapReport {
        ess: e,
        qa,
        essl: e - gap,
        gap,
        pair: (slots[i], slots[j]),
        slots,
        support,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{enumerate, gen_quasi_m_ary, oracle_quasi_arity, sample_functions};
    use crate::samples::*;

    #[test]
    fn quasi_arity_examples() {
        assert_eq!(quasi_arity(&salomaa3()), 0);
        assert_eq!(quasi_arity(&xor2()), 0);
        assert_eq!(quasi_arity(&maj3()), 3);
        assert_eq!(quasi_arity(&and2()), 1);
        assert_eq!(quasi_arity(&x1_with_corner()), 1);
    }

    #[test]
    fn semiprojection_examples() {
        let p = FiniteFunction::projection(3, 3, 1).unwrap();
        assert_eq!(is_semiprojection(&p).unwrap(), Some(1));
        assert_eq!(is_semiprojection(&x1_with_corner()).unwrap(), Some(0));
        assert_eq!(is_semiprojection(&maj3()).unwrap(), None);
        let f = FiniteFunction::constant(3, 3, 2, 0).unwrap();
        assert_eq!(is_semiprojection(&f), Err(Error::UnsupportedCodomain { k: 3, b: 2 }));
        // For n = 1 the diagonal set is A: only the identity qualifies.
        assert_eq!(is_semiprojection(&FiniteFunction::projection(3, 1, 0).unwrap()).unwrap(), Some(0));
    }

    #[test]
    fn gap_examples() {
        let r = arity_gap(&xor2()).unwrap();
        assert_eq!((r.gap, r.essl, r.pair), (2, 0, (0, 1)));
        assert_eq!(r.to_string(), "ess=2 qa=0 essl=0 gap=2 pair=1,2");
        assert_eq!(arity_gap(&and2()).unwrap().gap, 1);
        for k in 2..=4 {
            let r = arity_gap(&salomaa(k)).unwrap();
            assert_eq!((r.gap, r.qa, r.essl), (k, 0, 0));
            assert_eq!(r.support.as_ref().map(|s| s.is_constant()), Some(true));
        }
        assert_eq!(arity_gap(&maj3()).unwrap().gap, 2);
        assert_eq!(arity_gap(&xor3()).unwrap().gap, 2);
    }

    #[test]
    fn gap_undefined_below_two_essential() {
        let f = FiniteFunction::projection(2, 3, 1).unwrap();
        assert_eq!(arity_gap(&f), Err(Error::GapUndefined { ess: 1 }));
        let c = FiniteFunction::constant(3, 2, 2, 0).unwrap();
        assert_eq!(arity_gap(&c), Err(Error::GapUndefined { ess: 0 }));
    }

    #[test]
    fn gap_reports_original_slots() {
        use crate::minors::{simple_minor, MinorMap};
        let padded = simple_minor(&xor2(), &MinorMap::new(vec![1, 3], 4).unwrap()).unwrap();
        let r = arity_gap(&padded).unwrap();
        assert_eq!((r.gap, r.pair, r.slots.clone()), (2, (1, 3), vec![1, 3]));
    }

    #[test]
    fn unary_support_examples() {
        let s = unique_unary_support(&salomaa3()).unwrap();
        assert_eq!(s, UnarySupport::Constant(FiniteFunction::constant(3, 3, 3, 0).unwrap()));
        let s = unique_unary_support(&x1_with_corner()).unwrap();
        assert_eq!(
            s,
            UnarySupport::Unary {
                slot: 0,
                support: FiniteFunction::projection(3, 3, 0).unwrap()
            }
        );
        match unique_unary_support(&and2()).unwrap() {
            UnarySupport::Ambiguous([a, b]) => {
                assert_eq!(a, FiniteFunction::projection(2, 2, 0).unwrap());
                assert_eq!(b, FiniteFunction::projection(2, 2, 1).unwrap());
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(unique_unary_support(&maj3()), Err(Error::NoSuchSupport { qa: 3 }));
    }

    #[test]
    fn quasi_arity_bounded_by_ess() {
        for f in sample_functions(3, 3, 2, 300, 1).into_iter().chain(enumerate(2, 3, 2).unwrap()) {
            assert!(quasi_arity(&f) <= ess(&f));
            if f.n() > f.k() {
                assert_eq!(quasi_arity(&f), ess(&f));
            }
        }
    }

    #[test]
    fn quasi_arity_matches_support_enumeration() {
        for f in enumerate(3, 2, 2).unwrap() {
            assert_eq!(Ok(quasi_arity(&f)), oracle_quasi_arity(&f));
        }
        for f in sample_functions(3, 3, 2, 100, 3) {
            assert_eq!(Ok(quasi_arity(&f)), oracle_quasi_arity(&f));
        }
        for m in 0..=3 {
            for seed in 0..10 {
                let f = gen_quasi_m_ary(3, 3, 2, m, seed).unwrap();
                assert_eq!(oracle_quasi_arity(&f), Ok(m));
            }
        }
    }
}
