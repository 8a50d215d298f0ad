//! Well-known small functions used in examples and tests.

use crate::function::{FiniteFunction, Value};

pub fn and2() -> FiniteFunction {
    FiniteFunction::new(2, 2, 2, vec![0, 0, 0, 1]).unwrap()
}

pub fn xor2() -> FiniteFunction {
    FiniteFunction::new(2, 2, 2, vec![0, 1, 1, 0]).unwrap()
}

pub fn xor3() -> FiniteFunction {
    FiniteFunction::from_fn(2, 3, 2, |t| (t.iter().sum::<usize>() % 2) as Value).unwrap()
}

pub fn maj3() -> FiniteFunction {
    FiniteFunction::new(2, 3, 2, vec![0, 0, 0, 1, 0, 1, 1, 1]).unwrap()
}

/// Value 1 at `(0, 1, ..., k-1)` and 0 elsewhere, as an operation on `{0..k}`.
pub fn salomaa(k: usize) -> FiniteFunction {
    FiniteFunction::from_fn(k, k, k, |t| t.iter().enumerate().all(|(i, &a)| a == i) as Value).unwrap()
}

pub fn salomaa3() -> FiniteFunction {
    salomaa(3)
}

/// The ternary operation on `{0,1,2}` equal to `x1` except `f(0,1,2) = 2`.
pub fn x1_with_corner() -> FiniteFunction {
    FiniteFunction::from_fn(3, 3, 3, |t| if t == [0, 1, 2] { 2 } else { t[0] as Value }).unwrap()
}
