//! Algebraic normal form of Boolean functions: the unique multilinear
//! polynomial over GF(2) reproducing the table.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::function::FiniteFunction;

/// A monomial as a bit mask over slots: bit `i` is the variable `x_{i+1}`.
pub type Monomial = u32;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AnfPolynomial {
    pub n: usize,
    /// Nonconstant monomials.
    pub monomials: BTreeSet<Monomial>,
    pub constant: bool,
}

impl AnfPolynomial {
    pub fn eval(&self, tuple: &[usize]) -> bool {
        let assignment: Monomial = tuple
            .iter()
            .enumerate()
            .filter(|&(_, &a)| a == 1)
            .fold(0, |m, (i, _)| m | (1 << i));
        self.constant
            ^ self
                .monomials
                .iter()
                .fold(false, |acc, &m| acc ^ (m & assignment == m))
    }

    pub fn degree(&self) -> usize {
        self.monomials.iter().map(|m| m.count_ones() as usize).max().unwrap_or(0)
    }

    /// The polynomial with variables renamed by `perm`: slot `i` becomes `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> AnfPolynomial {
        let monomials = self
            .monomials
            .iter()
            .map(|&m| {
                (0..self.n)
                    .filter(|&i| m & (1 << i) != 0)
                    .fold(0, |acc, i| acc | (1 << perm[i]))
            })
            .collect();
        AnfPolynomial {
            n: self.n,
            monomials,
            constant: self.constant,
        }
    }
}

impl fmt::Display for AnfPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = self
            .monomials
            .iter()
            .rev()
            .map(|&m| {
                (0..self.n)
                    .filter(|&i| m & (1 << i) != 0)
                    .map(|i| format!("x{}", i + 1))
                    .collect::<String>()
            })
            .collect();
        // Higher degree first, then by variable order.
        terms.sort_by(|a, b| b.matches('x').count().cmp(&a.matches('x').count()).then(a.cmp(b)));
        if self.constant {
            terms.push("1".into());
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Möbius transform of the table over the subset lattice.
pub fn anf(f: &FiniteFunction) -> Result<AnfPolynomial> {
    if f.k() != 2 || f.b() != 2 {
        return Err(Error::UnsupportedDomain(format!(
            "ANF needs a Boolean function, got k = {}, b = {}",
            f.k(),
            f.b()
        )));
    }
    let n = f.n();
    if n > 31 {
        return Err(Error::UnsupportedArity(n));
    }
    let mut coeffs: Vec<u8> = f.table().iter().map(|&v| v as u8).collect();
    for bit in 0..n {
        let step = 1 << bit;
        for idx in 0..coeffs.len() {
            if idx & step != 0 {
                coeffs[idx] ^= coeffs[idx ^ step];
            }
        }
    }
    // Table index bit (n-1-i) is slot i.
    let to_monomial = |idx: usize| -> Monomial {
        (0..n)
            .filter(|&i| idx & (1 << (n - 1 - i)) != 0)
            .fold(0, |m, i| m | (1 << i))
    };
    let monomials = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .filter(|&(_, &c)| c == 1)
        .map(|(idx, _)| to_monomial(idx))
        .collect();
    Ok(AnfPolynomial {
        n,
        monomials,
        constant: coeffs[0] == 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::enumerate;
    use crate::samples::*;

    fn set(ms: &[Monomial]) -> BTreeSet<Monomial> {
        ms.iter().copied().collect()
    }

    #[test]
    fn anf_examples() {
        let p = anf(&and2()).unwrap();
        assert_eq!((p.monomials.clone(), p.constant), (set(&[0b11]), false));
        let p = anf(&xor2()).unwrap();
        assert_eq!((p.monomials.clone(), p.constant), (set(&[0b01, 0b10]), false));
        let p = anf(&maj3()).unwrap();
        assert_eq!(p.monomials, set(&[0b011, 0b101, 0b110]));
        assert_eq!(p.to_string(), "x1x2 + x1x3 + x2x3");
        // x1 x2 + x1
        let p = anf(&FiniteFunction::new(2, 2, 2, vec![0, 0, 1, 0]).unwrap()).unwrap();
        assert_eq!(p.to_string(), "x1x2 + x1");
    }

    #[test]
    fn anf_rejects_non_boolean() {
        assert!(anf(&salomaa3()).is_err());
        assert!(anf(&FiniteFunction::constant(2, 2, 3, 0).unwrap()).is_err());
    }

    #[test]
    fn anf_reproduces_every_table_up_to_four_variables() {
        for n in 1..=4 {
            for f in enumerate(2, n, 2).unwrap() {
                let p = anf(&f).unwrap();
                for (idx, t) in f.codec().tuples().enumerate() {
                    assert_eq!(p.eval(&t), f.at(idx) == 1);
                }
            }
        }
    }
}
