//! Classification of functions by arity gap.
//!
//! [`classify`] decides the gap of an arbitrary function from its
//! quasi-arity, the oddsupp test on `A^n_=`, and (for three essential
//! variables) the values on tuples with two equal coordinates. It never
//! computes an identification minor. [`classify_boolean`] and
//! [`classify_pseudo_boolean`] decide the gap of functions on `{0,1}` from
//! explicit normal forms instead.

use std::collections::BTreeSet;
use std::fmt;

use crate::analysis::essential_part;
use crate::anf::{anf, AnfPolynomial, Monomial};
use crate::error::{Error, Result};
use crate::function::{FiniteFunction, Value};
use crate::gap::quasi_arity;
use crate::minors::diagonal;
use crate::oddsupp::is_restriction_determined_by_oddsupp;

/// Why a function has the gap it has.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tag {
    /// Quasi-arity 0: gap equals the essential arity.
    QuasiNullary,
    /// Quasi-arity `m` with `1 <= m <= n - 3`: gap `n - m`.
    QuasiLow { m: usize },
    /// Quasi-arity `n - 2 >= 1`: gap 2.
    QuasiNMinus2 { m: usize },
    /// Quasi-arity `n`, `n != 3`, restriction to `A^n_=` factors through oddsupp: gap 2.
    OddsuppDetermined,
    /// Three essential variables with `f(x1,x0,x0) = h(x_{i1})`,
    /// `f(x0,x1,x0) = h(x_{i2})`, `f(x0,x0,x1) = h(x_{i3})`: gap 2.
    TernaryPattern(TernaryPattern),
    GapOne,
}

impl Tag {
    pub fn name(&self) -> &'static str {
        match self {
            Tag::QuasiNullary => "QuasiNullary",
            Tag::QuasiLow { .. } => "QuasiLow",
            Tag::QuasiNMinus2 { .. } => "QuasiNMinus2",
            Tag::OddsuppDetermined => "OddsuppDetermined",
            Tag::TernaryPattern(_) => "TernaryPattern",
            Tag::GapOne => "GapOne",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TernaryPattern {
    /// `(i1, i2, i3)`, each 0 or 1.
    pub pattern: [u8; 3],
    /// The unary function `h`, necessarily the diagonal of `f`.
    pub h: FiniteFunction,
}

impl TernaryPattern {
    pub fn ones(&self) -> usize {
        self.pattern.iter().filter(|&&p| p == 1).count()
    }
}

/// The Boolean functions of gap 2, up to permutation of variables and
/// inessential variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// `x1 + ... + xm + c`, `m >= 2`.
    Linear,
    /// `x1 x2 + x1 + c`.
    NonImplication,
    /// `x1 x2 + x1 x3 + x2 x3 + c`.
    Majority,
    /// `x1 x2 + x1 x3 + x2 x3 + x1 + x2 + c`.
    TwoThirdsMinority,
}

impl Family {
    pub fn id(self) -> &'static str {
        match self {
            Family::Linear => "linear",
            Family::NonImplication => "nonimplication",
            Family::Majority => "majority",
            Family::TwoThirdsMinority => "two-thirds-minority",
        }
    }

    fn template(self) -> (usize, BTreeSet<Monomial>) {
        let (n, ms): (usize, &[Monomial]) = match self {
            Family::Linear => unreachable!("linear family is matched directly"),
            Family::NonImplication => (2, &[0b11, 0b01]),
            Family::Majority => (3, &[0b011, 0b101, 0b110]),
            Family::TwoThirdsMinority => (3, &[0b011, 0b101, 0b110, 0b001, 0b010]),
        };
        (n, ms.iter().copied().collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyMatch {
    pub family: Family,
    pub c: bool,
    /// Original slot of each family variable: `x_{r+1}` of the family is slot `perm[r]`.
    pub perm: Vec<usize>,
}

/// `f = g . h` with `g: {0,1} -> B` injective and `h` Boolean, `h(0,...,0) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub g: [Value; 2],
    pub h: FiniteFunction,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub gap: usize,
    pub tag: Tag,
    pub family: Option<FamilyMatch>,
    pub decomposition: Option<Decomposition>,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gap={} tag={}", self.gap, self.tag.name())?;
        match &self.tag {
            Tag::QuasiNullary => write!(f, " m=0")?,
            Tag::QuasiLow { m } | Tag::QuasiNMinus2 { m } => write!(f, " m={m}")?,
            Tag::TernaryPattern(p) => {
                write!(f, " pattern={}{}{}", p.pattern[0], p.pattern[1], p.pattern[2])?
            }
            Tag::OddsuppDetermined | Tag::GapOne => {}
        }
        if let Some(m) = &self.family {
            let perm: Vec<String> = m.perm.iter().map(|s| (s + 1).to_string()).collect();
            write!(f, " family={} c={} perm={}", m.family.id(), u8::from(m.c), perm.join(","))?;
        }
        if let Some(d) = &self.decomposition {
            write!(f, " g={},{}", d.g[0], d.g[1])?;
        }
        Ok(())
    }
}

fn normalized(f: &FiniteFunction) -> Result<(FiniteFunction, Vec<usize>)> {
    let (g, slots) = essential_part(f);
    if slots.len() < 2 {
        return Err(Error::GapUndefined { ess: slots.len() });
    }
    Ok((g, slots))
}

/// Checks the three identities for `h = diag_f`. Absent when `diag_f` is
/// constant or some identity fails for both choices of index.
pub fn ternary_pattern(f: &FiniteFunction) -> Result<Option<TernaryPattern>> {
    if f.n() != 3 {
        return Err(Error::InvalidArgument(format!(
            "ternary pattern needs arity 3, got {}",
            f.n()
        )));
    }
    let h = diagonal(f);
    if h.is_constant() {
        return Ok(None);
    }
    let k = f.k();
    let mut pattern = [0u8; 3];
    for (pos, slot) in pattern.iter_mut().enumerate() {
        let mut as_x0 = true;
        let mut as_x1 = true;
        for x0 in 0..k {
            for x1 in 0..k {
                let mut t = [x0; 3];
                t[pos] = x1;
                let v = f.eval_unchecked(&t);
                as_x0 &= v == h.at(x0);
                as_x1 &= v == h.at(x1);
            }
        }
        *slot = match (as_x0, as_x1) {
            (true, _) => 0,
            (false, true) => 1,
            (false, false) => return Ok(None),
        };
    }
    Ok(Some(TernaryPattern { pattern, h }))
}

/// Gap and rationale of any function with at least two essential variables.
pub fn classify(f: &FiniteFunction) -> Result<Classification> {
    let (g, _) = normalized(f)?;
    let n = g.n();
    let qa = quasi_arity(&g);
    let (gap, tag) = if n >= 3 && qa + 3 <= n {
        let tag = if qa == 0 { Tag::QuasiNullary } else { Tag::QuasiLow { m: qa } };
        (n - qa, tag)
    } else if n == 3 {
        match ternary_pattern(&g)? {
            Some(p) => (2, Tag::TernaryPattern(p)),
            None => (1, Tag::GapOne),
        }
    } else if qa + 2 == n {
        let tag = if qa == 0 { Tag::QuasiNullary } else { Tag::QuasiNMinus2 { m: qa } };
        (2, tag)
    } else if qa == n && is_restriction_determined_by_oddsupp(&g)?.is_determined() {
        (2, Tag::OddsuppDetermined)
    } else {
        (1, Tag::GapOne)
    };
    Ok(Classification {
        gap,
        tag,
        family: None,
        decomposition: None,
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Matches the ANF of an essentially `n`-ary Boolean function against the
/// gap-2 families. `slots` maps its variables back to original slots.
fn match_family(p: &AnfPolynomial, slots: &[usize]) -> Option<FamilyMatch> {
    let n = p.n;
    if n >= 2 && p.monomials.len() == n && p.monomials.iter().all(|m| m.count_ones() == 1) {
        return Some(FamilyMatch {
            family: Family::Linear,
            c: p.constant,
            perm: slots.to_vec(),
        });
    }
    for family in [Family::NonImplication, Family::Majority, Family::TwoThirdsMinority] {
        let (arity, monomials) = family.template();
        if arity != n {
            continue;
        }
        let template = AnfPolynomial {
            n,
            monomials,
            constant: p.constant,
        };
        for perm in permutations(n) {
            if template.permuted(&perm) == *p {
                return Some(FamilyMatch {
                    family,
                    c: p.constant,
                    perm: perm.iter().map(|&s| slots[s]).collect(),
                });
            }
        }
    }
    None
}

/// Gap of a Boolean function from the normal form of its essential part.
/// The tag is the one [`classify`] assigns.
pub fn classify_boolean(f: &FiniteFunction) -> Result<Classification> {
    if f.k() != 2 || f.b() != 2 {
        return Err(Error::UnsupportedDomain(format!(
            "Boolean classification needs k = b = 2, got k = {}, b = {}",
            f.k(),
            f.b()
        )));
    }
    let (g, slots) = normalized(f)?;
    let family = match_family(&anf(&g)?, &slots);
    let tag = classify(&g)?.tag;
    Ok(Classification {
        gap: if family.is_some() { 2 } else { 1 },
        tag,
        family,
        decomposition: None,
    })
}

/// Gap of a function `{0,1}^n -> B`: 2 exactly for nonconstant binary
/// functions with `f(0,0) = f(1,1)` and for injective relabelings of Boolean
/// functions of gap 2.
pub fn classify_pseudo_boolean(f: &FiniteFunction) -> Result<Classification> {
    if f.k() != 2 {
        return Err(Error::UnsupportedDomain(format!(
            "pseudo-Boolean classification needs k = 2, got k = {}",
            f.k()
        )));
    }
    let (g, slots) = normalized(f)?;
    let binary_rule = g.n() == 2 && g.at(0) == g.at(3);
    let range = g.range();
    let mut family = None;
    let mut decomposition = None;
    if range.len() == 2 {
        let zero = g.at(0);
        let one = if range[0] == zero { range[1] } else { range[0] };
        let h_table = g.table().iter().map(|&v| Value::from(v != zero)).collect();
        let h = FiniteFunction::new(2, g.n(), 2, h_table)?;
        family = match_family(&anf(&h)?, &slots);
        decomposition = Some(Decomposition { g: [zero, one], h });
    }
    let tag = classify(&g)?.tag;
    Ok(Classification {
        gap: if binary_rule || family.is_some() { 2 } else { 1 },
        tag,
        family,
        decomposition,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::*;

    fn pattern_of(f: &FiniteFunction) -> Option<[u8; 3]> {
        ternary_pattern(f).unwrap().map(|p| p.pattern)
    }

    fn two_thirds_minority() -> FiniteFunction {
        // x1x2 + x1x3 + x2x3 + x1 + x2
        FiniteFunction::from_fn(2, 3, 2, |t| {
            let (a, b, c) = (t[0], t[1], t[2]);
            ((a * b + a * c + b * c + a + b) % 2) as Value
        })
        .unwrap()
    }

    #[test]
    fn classify_examples() {
        let c = classify(&maj3()).unwrap();
        assert_eq!(c.gap, 2);
        assert_eq!(c.to_string(), "gap=2 tag=TernaryPattern pattern=000");
        match c.tag {
            Tag::TernaryPattern(p) => assert_eq!(p.h.table(), &[0, 1]),
            t => panic!("{t:?}"),
        }
        assert_eq!(classify(&xor3()).unwrap().to_string(), "gap=2 tag=TernaryPattern pattern=111");
        assert_eq!(classify(&salomaa(4)).unwrap().to_string(), "gap=4 tag=QuasiNullary m=0");
        assert_eq!(classify(&salomaa3()).unwrap().to_string(), "gap=3 tag=QuasiNullary m=0");
        assert_eq!(classify(&xor2()).unwrap().to_string(), "gap=2 tag=QuasiNullary m=0");
        assert_eq!(classify(&and2()).unwrap().to_string(), "gap=1 tag=GapOne");
        assert_eq!(
            classify(&FiniteFunction::projection(2, 3, 0).unwrap()),
            Err(Error::GapUndefined { ess: 1 })
        );
    }

    #[test]
    fn ternary_pattern_examples() {
        assert_eq!(pattern_of(&maj3()), Some([0, 0, 0]));
        assert_eq!(pattern_of(&x1_with_corner()), Some([1, 0, 0]));
        // The two odd-valued positions are slots 1 and 2, so slot 3 carries the 0.
        assert_eq!(pattern_of(&two_thirds_minority()), Some([1, 1, 0]));
        assert_eq!(pattern_of(&salomaa3()), None);
        assert_eq!(pattern_of(&FiniteFunction::new(2, 3, 2, vec![0, 0, 0, 1, 0, 0, 0, 1]).unwrap()), None);
        assert!(ternary_pattern(&and2()).is_err());
    }

    #[test]
    fn boolean_examples() {
        let c = classify_boolean(&xor2()).unwrap();
        assert_eq!(c.to_string(), "gap=2 tag=QuasiNullary m=0 family=linear c=0 perm=1,2");
        let c = classify_boolean(&FiniteFunction::new(2, 2, 2, vec![0, 0, 1, 0]).unwrap()).unwrap();
        assert_eq!(c.gap, 2);
        let m = c.family.unwrap();
        assert_eq!((m.family, m.c, m.perm), (Family::NonImplication, false, vec![0, 1]));
        // x1x2 + x2 is the same family with the variables swapped.
        let c = classify_boolean(&FiniteFunction::new(2, 2, 2, vec![0, 1, 0, 0]).unwrap()).unwrap();
        assert_eq!(c.family.unwrap().perm, vec![1, 0]);
        let c = classify_boolean(&and2()).unwrap();
        assert_eq!((c.gap, c.family), (1, None));
        let c = classify_boolean(&two_thirds_minority()).unwrap();
        assert_eq!(c.family.unwrap().family, Family::TwoThirdsMinority);
        assert!(classify_boolean(&salomaa3()).is_err());
    }

    #[test]
    fn pseudo_boolean_examples() {
        let f = FiniteFunction::new(2, 2, 3, vec![2, 0, 1, 2]).unwrap();
        let c = classify_pseudo_boolean(&f).unwrap();
        assert_eq!((c.gap, c.decomposition), (2, None));

        let g = FiniteFunction::from_fn(2, 3, 3, |t| if xor3().eval_unchecked(t) == 1 { 2 } else { 0 }).unwrap();
        let c = classify_pseudo_boolean(&g).unwrap();
        assert_eq!(c.gap, 2);
        let d = c.decomposition.unwrap();
        assert_eq!((d.g, d.h), ([0, 2], xor3()));

        let r3 = FiniteFunction::new(2, 3, 3, vec![0, 1, 2, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!(r3.range().len(), 3);
        assert_eq!(classify_pseudo_boolean(&r3).unwrap().gap, 1);
        assert!(classify_pseudo_boolean(&salomaa3()).is_err());
    }

    #[test]
    fn pseudo_boolean_labeling_does_not_matter() {
        for f in crate::oracle::enumerate(2, 3, 2).unwrap() {
            if crate::analysis::ess(&f) < 2 {
                continue;
            }
            let complement = FiniteFunction::from_fn(2, 3, 2, |t| 1 - f.eval_unchecked(t)).unwrap();
            assert_eq!(
                classify_pseudo_boolean(&f).unwrap().gap,
                classify_pseudo_boolean(&complement).unwrap().gap
            );
            assert_eq!(classify_boolean(&f).unwrap().gap, classify_boolean(&complement).unwrap().gap);
        }
    }

    #[test]
    fn permutations_are_lexicographic() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(3)[0], vec![0, 1, 2]);
        assert_eq!(permutations(3)[5], vec![2, 1, 0]);
    }
}
