//! Simple variable substitutions.
//!
//! Slots are 0-based throughout the library; text renderings add one.

use crate::error::{Error, Result};
use crate::function::{FiniteFunction, TupleCodec, Tuples};

/// A substitution `sigma: {0..m} -> {0..n}`: source slot `i` of `g` is fed
/// from target slot `sigma[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MinorMap {
    target_arity: usize,
    sigma: Vec<usize>,
}

impl MinorMap {
    pub fn new(sigma: Vec<usize>, target_arity: usize) -> Result<Self> {
        if target_arity == 0 {
            return Err(Error::InvalidArgument("target arity must be at least 1".into()));
        }
        if let Some(&s) = sigma.iter().find(|&&s| s >= target_arity) {
            return Err(Error::InvalidArgument(format!(
                "substitution entry {} out of range for target arity {target_arity}",
                s + 1
            )));
        }
        Ok(MinorMap { target_arity, sigma })
    }

    pub fn identity(n: usize) -> Self {
        MinorMap {
            target_arity: n,
            sigma: (0..n).collect(),
        }
    }

    /// Identity except that slot `i` is fed from slot `j`.
    pub fn identification(n: usize, i: usize, j: usize) -> Result<Self> {
        if i == j || i >= n || j >= n {
            return Err(Error::InvalidArgument(format!(
                "cannot identify slots {} and {} of an {n}-ary function",
                i + 1,
                j + 1
            )));
        }
        let mut sigma: Vec<usize> = (0..n).collect();
        sigma[i] = j;
        Ok(MinorMap { target_arity: n, sigma })
    }

    pub fn source_arity(&self) -> usize {
        self.sigma.len()
    }

    pub fn target_arity(&self) -> usize {
        self.target_arity
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }
}

/// A partition of the slots `{0..n}` into nonempty blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariablePartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl VariablePartition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::InvalidArgument("partition has an empty block".into()));
            }
            for &s in block {
                if s >= n {
                    return Err(Error::InvalidArgument(format!("slot {} out of range", s + 1)));
                }
                if std::mem::replace(&mut seen[s], true) {
                    return Err(Error::InvalidArgument(format!("slot {} appears twice", s + 1)));
                }
            }
        }
        if let Some(s) = seen.iter().position(|&x| !x) {
            return Err(Error::InvalidArgument(format!("slot {} not covered", s + 1)));
        }
        Ok(VariablePartition { n, blocks })
    }

    /// The partition into singletons.
    pub fn discrete(n: usize) -> Self {
        VariablePartition {
            n,
            blocks: (0..n).map(|i| vec![i]).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Each slot mapped to the least slot of its block.
    pub fn representatives(&self) -> Vec<usize> {
        let mut rep = vec![0; self.n];
        for block in &self.blocks {
            let min = *block.iter().min().expect("blocks are nonempty");
            for &s in block {
                rep[s] = min;
            }
        }
        rep
    }
}

/// `g(x_{sigma(0)}, ..., x_{sigma(m-1)})` as a function of arity `sigma.target_arity()`.
pub fn simple_minor(g: &FiniteFunction, sigma: &MinorMap) -> Result<FiniteFunction> {
    if sigma.source_arity() != g.n() {
        return Err(Error::InvalidArgument(format!(
            "substitution has {} entries but the function has arity {}",
            sigma.source_arity(),
            g.n()
        )));
    }
    let src = g.codec();
    // The source index is linear in the target coordinates.
    let mut weight = vec![0usize; sigma.target_arity()];
    for (i, &s) in sigma.sigma().iter().enumerate() {
        weight[s] += src.stride(i);
    }
    let target = TupleCodec::new(g.k(), sigma.target_arity())?;
    let mut table = Vec::with_capacity(target.len());
    for t in Tuples::new(g.k(), sigma.target_arity()) {
        let idx: usize = t.iter().zip(&weight).map(|(a, w)| a * w).sum();
        table.push(g.at(idx));
    }
    FiniteFunction::new(g.k(), sigma.target_arity(), g.b(), table)
}

/// `f_{i<-j}`: slot `i` fed from slot `j`, arity preserved.
pub fn identification_minor(f: &FiniteFunction, i: usize, j: usize) -> Result<FiniteFunction> {
    simple_minor(f, &MinorMap::identification(f.n(), i, j)?)
}

/// Identifies the slots of each block, feeding them from the block minimum.
pub fn partition_minor(f: &FiniteFunction, delta: &VariablePartition) -> Result<FiniteFunction> {
    if delta.n() != f.n() {
        return Err(Error::InvalidArgument(format!(
            "partition of {} slots applied to an {}-ary function",
            delta.n(),
            f.n()
        )));
    }
    simple_minor(f, &MinorMap::new(delta.representatives(), f.n())?)
}

/// The unary function `a -> f(a, ..., a)`.
pub fn diagonal(f: &FiniteFunction) -> FiniteFunction {
    let c = f.codec();
    let table = (0..f.k())
        .map(|a| f.at(c.encode(&vec![a; f.n()])))
        .collect();
    FiniteFunction::new(f.k(), 1, f.b(), table).expect("diagonal of a valid function")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::ess;
    use crate::samples::*;

    #[test]
    fn xor2_self_identification_is_constant() {
        let m = simple_minor(&xor2(), &MinorMap::new(vec![0, 0], 1).unwrap()).unwrap();
        assert_eq!(m.table(), &[0, 0]);
    }

    #[test]
    fn and2_swap_is_and2() {
        let m = simple_minor(&and2(), &MinorMap::new(vec![1, 0], 2).unwrap()).unwrap();
        assert_eq!(m, and2());
    }

    #[test]
    fn xor2_with_added_slot() {
        // Expansion by definition: value is t1 xor t2 for each (t1, t2, t3).
        let m = simple_minor(&xor2(), &MinorMap::new(vec![0, 1], 3).unwrap()).unwrap();
        assert_eq!(m.table(), &[0, 0, 1, 1, 1, 1, 0, 0]);
    }

    #[test]
    fn identification_examples() {
        assert_eq!(identification_minor(&xor3(), 0, 1).unwrap().table(), &[0, 1, 0, 1, 0, 1, 0, 1]);
        let s3 = salomaa3();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert!(identification_minor(&s3, i, j).unwrap().is_constant());
                }
            }
        }
        assert_eq!(identification_minor(&maj3(), 1, 2).unwrap().table(), &[0, 1, 0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn identification_errors() {
        assert!(identification_minor(&xor3(), 1, 1).is_err());
        assert!(identification_minor(&xor3(), 0, 3).is_err());
        assert!(simple_minor(&xor3(), &MinorMap::identity(2)).is_err());
        assert!(MinorMap::new(vec![0, 2], 2).is_err());
    }

    #[test]
    fn partition_examples() {
        let d = VariablePartition::new(3, vec![vec![0, 1], vec![2]]).unwrap();
        assert_eq!(partition_minor(&xor3(), &d).unwrap(), identification_minor(&xor3(), 1, 0).unwrap());
        assert_eq!(partition_minor(&maj3(), &VariablePartition::discrete(3)).unwrap(), maj3());
        let all = VariablePartition::new(3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(partition_minor(&maj3(), &all).unwrap().table(), &[0, 0, 0, 0, 1, 1, 1, 1]);
    }

    #[test]
    fn malformed_partitions() {
        assert!(VariablePartition::new(3, vec![vec![0, 1]]).is_err());
        assert!(VariablePartition::new(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(VariablePartition::new(2, vec![vec![0], vec![], vec![1]]).is_err());
        assert!(VariablePartition::new(2, vec![vec![0, 2], vec![1]]).is_err());
    }

    #[test]
    fn diagonal_examples() {
        assert!(diagonal(&xor2()).is_constant());
        assert_eq!(diagonal(&maj3()).table(), &[0, 1]);
        assert_eq!(diagonal(&salomaa3()).table(), &[0, 0, 0]);
    }

    fn check_identities(f: &FiniteFunction) {
        let n = f.n();
        for i in 0..n {
            for j in (0..n).filter(|&j| j != i) {
                let m = identification_minor(f, i, j).unwrap();
                assert_eq!(diagonal(&m), diagonal(f));
                let pair = VariablePartition::new(
                    n,
                    (0..n)
                        .filter(|&s| s != i && s != j)
                        .map(|s| vec![s])
                        .chain(std::iter::once(vec![i, j]))
                        .collect(),
                )
                .unwrap();
                let p = partition_minor(f, &pair).unwrap();
                assert_eq!(p, identification_minor(f, i.max(j), i.min(j)).unwrap());
                assert!(ess(&m) <= ess(f));
            }
        }
    }

    #[test]
    fn identification_identities() {
        for (k, n) in [(2, 2), (2, 3), (3, 2), (2, 4)] {
            for f in crate::oracle::enumerate(k, n, 2).unwrap() {
                check_identities(&f);
            }
        }
        for (k, n) in [(3, 3), (3, 4)] {
            for f in crate::oracle::sample_functions(k, n, 3, 200, 4) {
                check_identities(&f);
            }
        }
    }
}
