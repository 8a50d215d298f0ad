//! Essential variables of total functions and of their restriction to the
//! diagonal set `A^n_=`, the tuples with a repeated coordinate.

use crate::error::{Error, Result};
use crate::function::{has_repeat, FiniteFunction, Value};

/// Two tuples that differ only in `slot` and have different values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EssentialityWitness {
    pub slot: usize,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl EssentialityWitness {
    /// Re-evaluates the witness against `f`.
    pub fn is_valid_for(&self, f: &FiniteFunction) -> bool {
        let agree_elsewhere = self
            .left
            .iter()
            .zip(&self.right)
            .enumerate()
            .all(|(i, (a, b))| i == self.slot || a == b);
        agree_elsewhere
            && self.left[self.slot] != self.right[self.slot]
            && f.eval(&self.left).ok() != f.eval(&self.right).ok()
    }
}

/// Scans slot `i` for a witness; tuples are visited in index order.
fn slot_witness(f: &FiniteFunction, i: usize) -> Option<(usize, usize)> {
    let c = f.codec();
    let stride = c.stride(i);
    let block = stride * f.k();
    for hi in (0..f.table().len()).step_by(block) {
        for base in hi..hi + stride {
            let v = f.at(base);
            for x in 1..f.k() {
                if f.at(base + x * stride) != v {
                    return Some((base, base + x * stride));
                }
            }
        }
    }
    None
}

pub fn is_essential(f: &FiniteFunction, slot: usize) -> bool {
    slot_witness(f, slot).is_some()
}

/// Essential slots in increasing order, each with its first witness.
pub fn essential_slots(f: &FiniteFunction) -> Vec<EssentialityWitness> {
    let c = f.codec();
    (0..f.n())
        .filter_map(|i| {
            slot_witness(f, i).map(|(l, r)| EssentialityWitness {
                slot: i,
                left: c.decode(l),
                right: c.decode(r),
            })
        })
        .collect()
}

/// Essential arity.
pub fn ess(f: &FiniteFunction) -> usize {
    (0..f.n()).filter(|&i| is_essential(f, i)).count()
}

/// The restriction `f|_{A^n_=}`. For `n = 1` the diagonal set is all of `A`.
#[derive(Debug, Clone, Copy)]
pub struct DiagonalRestriction<'a> {
    f: &'a FiniteFunction,
}

impl<'a> DiagonalRestriction<'a> {
    pub fn new(f: &'a FiniteFunction) -> Self {
        DiagonalRestriction { f }
    }

    pub fn function(&self) -> &'a FiniteFunction {
        self.f
    }

    pub fn contains(&self, tuple: &[usize]) -> bool {
        self.f.n() == 1 || has_repeat(tuple)
    }

    /// Table indices of the tuples in `A^n_=`, increasing.
    pub fn indices(&self) -> impl Iterator<Item = usize> + 'a {
        let f = self.f;
        let c = f.codec();
        let mut t = vec![0; f.n()];
        (0..f.table().len()).filter(move |&idx| {
            c.decode_into(idx, &mut t);
            f.n() == 1 || has_repeat(&t)
        })
    }

    /// First witness for `slot` with both tuples inside `A^n_=`.
    fn slot_witness(&self, slot: usize) -> Option<(usize, usize)> {
        let f = self.f;
        let k = f.k();
        let c = f.codec();
        let stride = c.stride(slot);
        let mut t = vec![0; f.n()];
        let mut admissible = Vec::with_capacity(k);
        for hi in (0..f.table().len()).step_by(stride * k) {
            for base in hi..hi + stride {
                c.decode_into(base, &mut t);
                admissible.clear();
                let context: Vec<usize> = t
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != slot)
                    .map(|(_, &a)| a)
                    .collect();
                if f.n() == 1 || has_repeat(&context) {
                    admissible.extend(0..k);
                } else {
                    admissible.extend((0..k).filter(|x| context.contains(x)));
                }
                let Some(&first) = admissible.first() else { continue };
                let v = f.at(base + first * stride);
                if let Some(&x) = admissible[1..].iter().find(|&&x| f.at(base + x * stride) != v) {
                    return Some((base + first * stride, base + x * stride));
                }
            }
        }
        None
    }

    pub fn is_essential(&self, slot: usize) -> bool {
        self.slot_witness(slot).is_some()
    }

    pub fn essential_slots(&self) -> Vec<EssentialityWitness> {
        let c = self.f.codec();
        (0..self.f.n())
            .filter_map(|i| {
                self.slot_witness(i).map(|(l, r)| EssentialityWitness {
                    slot: i,
                    left: c.decode(l),
                    right: c.decode(r),
                })
            })
            .collect()
    }

    pub fn ess(&self) -> usize {
        (0..self.f.n()).filter(|&i| self.is_essential(i)).count()
    }

    pub fn is_constant(&self) -> bool {
        let mut it = self.indices().map(|i| self.f.at(i));
        match it.next() {
            Some(v) => it.all(|w| w == v),
            None => true,
        }
    }

    /// Invariance under every permutation of the arguments. Adjacent
    /// transpositions generate the symmetric group and preserve `A^n_=`.
    pub fn is_totally_symmetric(&self) -> bool {
        let f = self.f;
        let c = f.codec();
        let mut t = vec![0; f.n()];
        for idx in self.indices() {
            c.decode_into(idx, &mut t);
            for i in 0..f.n().saturating_sub(1) {
                t.swap(i, i + 1);
                let w = f.at(c.encode(&t));
                t.swap(i, i + 1);
                if w != f.at(idx) {
                    return false;
                }
            }
        }
        true
    }
}

/// Slots essential in `f|_{A^n_=}`, with witnesses inside `A^n_=`.
pub fn essential_slots_on_diagonal(f: &FiniteFunction) -> Vec<EssentialityWitness> {
    DiagonalRestriction::new(f).essential_slots()
}

/// A total function agreeing with `f` on `A^n_=` that depends only on the
/// slots essential in `f|_{A^n_=}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportExtension {
    /// The function `h` on the essential slots, in increasing slot order.
    /// When there are none, a unary constant with `nullary` set.
    pub h: FiniteFunction,
    pub slots: Vec<usize>,
    pub nullary: bool,
    arity: usize,
}

impl SupportExtension {
    pub fn m(&self) -> usize {
        self.slots.len()
    }

    /// `h` padded back to arity `n` with inessential slots: a support of `f`.
    pub fn padded(&self) -> FiniteFunction {
        let h = &self.h;
        FiniteFunction::from_fn(h.k(), self.arity, h.b(), |t| {
            if self.nullary {
                h.at(0)
            } else {
                let sub: Vec<usize> = self.slots.iter().map(|&s| t[s]).collect();
                h.eval_unchecked(&sub)
            }
        })
        .expect("same table size bounds as the source function")
    }
}

/// Builds `h(a_1..a_m) = f(a_1, ..., a_m, a_m, ..., a_m)` with the essential
/// slots of `f|_{A^n_=}` taking the `a_i` and every other slot copying the
/// last essential slot. Undefined for `n = 2`.
pub fn support_extension(f: &FiniteFunction) -> Result<SupportExtension> {
    if f.n() == 2 {
        return Err(Error::UnsupportedArity(2));
    }
    let slots: Vec<usize> = essential_slots_on_diagonal(f).into_iter().map(|w| w.slot).collect();
    let k = f.k();
    let n = f.n();
    if slots.is_empty() {
        // Every diagonal tuple takes the same value; read it at (0, ..., 0).
        let v = f.at(0);
        return Ok(SupportExtension {
            h: FiniteFunction::constant(k, 1, f.b(), v)?,
            slots,
            nullary: true,
            arity: n,
        });
    }
    let last = *slots.last().unwrap();
    let mut full = vec![0; n];
    let h = FiniteFunction::from_fn(k, slots.len(), f.b(), |a| {
        let fill = a[a.len() - 1];
        full.iter_mut().for_each(|x| *x = fill);
        for (&s, &v) in slots.iter().zip(a) {
            full[s] = v;
        }
        debug_assert_eq!(full[last], fill);
        f.eval_unchecked(&full)
    })?;
    Ok(SupportExtension {
        h,
        slots,
        nullary: false,
        arity: n,
    })
}

/// `f` restricted to its essential slots, plus the original slot indices.
/// With no essential slot the result is the unary constant.
pub fn essential_part(f: &FiniteFunction) -> (FiniteFunction, Vec<usize>) {
    let slots: Vec<usize> = (0..f.n()).filter(|&i| is_essential(f, i)).collect();
    if slots.len() == f.n() {
        return (f.clone(), slots);
    }
    if slots.is_empty() {
        let g = FiniteFunction::constant(f.k(), 1, f.b(), f.at(0)).expect("smaller than f");
        return (g, slots);
    }
    let mut full = vec![0; f.n()];
    let g = FiniteFunction::from_fn(f.k(), slots.len(), f.b(), |a| {
        for (&s, &v) in slots.iter().zip(a) {
            full[s] = v;
        }
        f.eval_unchecked(&full)
    })
    .expect("smaller than f");
    (g, slots)
}

/// Distinct values on the diagonal set.
pub fn diagonal_range(f: &FiniteFunction) -> Vec<Value> {
    let r = DiagonalRestriction::new(f);
    let mut v: Vec<Value> = r.indices().map(|i| f.at(i)).collect();
    v.sort_unstable();
    v.dedup();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minors::{simple_minor, MinorMap};
    use crate::oracle::{enumerate, sample_functions};
    use crate::samples::*;

    fn slots(ws: &[EssentialityWitness]) -> Vec<usize> {
        ws.iter().map(|w| w.slot).collect()
    }

    #[test]
    fn essential_examples() {
        assert_eq!(slots(&essential_slots(&and2())), vec![0, 1]);
        for (k, n, b) in [(2, 1, 2), (3, 3, 4), (4, 2, 2)] {
            assert!(essential_slots(&FiniteFunction::constant(k, n, b, 1).unwrap()).is_empty());
        }
        let padded = simple_minor(&xor2(), &MinorMap::new(vec![0, 1], 3).unwrap()).unwrap();
        assert_eq!(slots(&essential_slots(&padded)), vec![0, 1]);
    }

    #[test]
    fn witness_order_is_lexicographic() {
        let w = &essential_slots(&and2())[0];
        assert_eq!((w.slot, w.left.clone(), w.right.clone()), (0, vec![0, 1], vec![1, 1]));
    }

    #[test]
    fn diagonal_examples() {
        assert!(essential_slots_on_diagonal(&salomaa3()).is_empty());
        assert_eq!(slots(&essential_slots_on_diagonal(&x1_with_corner())), vec![0]);
        assert_eq!(ess(&x1_with_corner()), 3);
        for f in enumerate(2, 3, 2).unwrap() {
            assert_eq!(slots(&essential_slots_on_diagonal(&f)), slots(&essential_slots(&f)));
        }
    }

    #[test]
    fn support_extension_examples() {
        let s = support_extension(&salomaa3()).unwrap();
        assert!(s.nullary && s.h.is_constant() && s.h.at(0) == 0);

        let s = support_extension(&x1_with_corner()).unwrap();
        assert_eq!(s.slots, vec![0]);
        assert_eq!(s.h.table(), &[0, 1, 2]);

        let f = maj3();
        let s = support_extension(&f).unwrap();
        assert_eq!(s.h, f);

        let padded = simple_minor(&xor2(), &MinorMap::new(vec![2, 0], 3).unwrap()).unwrap();
        let s = support_extension(&padded).unwrap();
        assert_eq!(s.slots, vec![0, 2]);
        assert_eq!(s.h.table(), &[0, 1, 1, 0]);

        assert_eq!(support_extension(&xor2()), Err(Error::UnsupportedArity(2)));
    }

    fn check_lemma(f: &FiniteFunction) {
        let s = support_extension(f).unwrap();
        let r = DiagonalRestriction::new(f);
        let g = s.padded();
        for idx in r.indices() {
            assert_eq!(f.at(idx), g.at(idx), "{f:?}");
        }
        assert_eq!(ess(&g), s.m());
    }

    #[test]
    fn support_extension_agrees_on_diagonal_set() {
        for (k, n, b) in [(2, 1, 2), (2, 3, 2), (3, 1, 3), (2, 4, 2)] {
            for f in enumerate(k, n, b).unwrap() {
                check_lemma(&f);
            }
        }
        for (k, n, b) in [(3, 3, 2), (3, 3, 3), (3, 4, 2), (3, 4, 3), (2, 3, 3), (2, 4, 3)] {
            for f in sample_functions(k, n, b, 300, 11) {
                check_lemma(&f);
            }
        }
        // Constructed functions with a small restriction, where the lemma has content.
        for m in 0..=3 {
            for seed in 0..20 {
                if let Ok(f) = crate::oracle::gen_quasi_m_ary(3, 3, 3, m, seed) {
                    check_lemma(&f);
                }
            }
        }
    }

    #[test]
    fn diagonal_subset_of_total() {
        for f in sample_functions(3, 3, 3, 500, 5) {
            let d = slots(&essential_slots_on_diagonal(&f));
            let t = slots(&essential_slots(&f));
            assert!(d.iter().all(|s| t.contains(s)));
            for w in essential_slots_on_diagonal(&f) {
                assert!(w.is_valid_for(&f));
                assert!(crate::function::has_repeat(&w.left) && crate::function::has_repeat(&w.right));
            }
            for w in essential_slots(&f) {
                assert!(w.is_valid_for(&f));
            }
        }
    }

    #[test]
    fn essential_part_drops_inessential_slots() {
        let padded = simple_minor(&and2(), &MinorMap::new(vec![2, 0], 3).unwrap()).unwrap();
        let (g, s) = essential_part(&padded);
        assert_eq!(s, vec![0, 2]);
        assert_eq!(g, simple_minor(&and2(), &MinorMap::new(vec![1, 0], 2).unwrap()).unwrap());
        let (c, s) = essential_part(&FiniteFunction::constant(3, 2, 2, 1).unwrap());
        assert!(s.is_empty() && c.n() == 1 && c.is_constant());
    }

    #[test]
    fn symmetry_of_restriction() {
        assert!(DiagonalRestriction::new(&maj3()).is_totally_symmetric());
        assert!(!DiagonalRestriction::new(&x1_with_corner()).is_totally_symmetric());
        assert!(DiagonalRestriction::new(&salomaa3()).is_totally_symmetric());
    }
}
