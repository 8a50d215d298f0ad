//! Dense tables of finite functions `f: A^n -> B`.
//!
//! Domain elements are `0..k`, codomain elements are `0..b`. Tuples are
//! indexed big-endian: the first coordinate is the most significant digit,
//! so table order is lexicographic tuple order.

use std::fmt;

use crate::error::{Error, Result};

/// A codomain element.
pub type Value = u32;

/// Default bound on `k^n`, the number of table entries.
pub const DEFAULT_MAX_TABLE_LEN: usize = 100_000_000;

/// `k^n` as an exact integer, or `None` on overflow.
pub fn checked_pow(k: usize, n: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for _ in 0..n {
        acc = acc.checked_mul(k)?;
    }
    Some(acc)
}

/// Big-endian mixed-radix codec between tuples in `{0..k}^n` and `0..k^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleCodec {
    k: usize,
    n: usize,
    strides: Vec<usize>,
}

impl TupleCodec {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidArgument(format!("domain size must be at least 2, got {k}")));
        }
        let len = checked_pow(k, n).ok_or(Error::TableTooLarge {
            requested: u128::MAX,
            limit: usize::MAX,
        })?;
        let mut strides = vec![1; n];
        let mut s = 1;
        for i in (0..n).rev() {
            strides[i] = s;
            s *= k;
        }
        debug_assert_eq!(s, len);
        Ok(TupleCodec { k, n, strides })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of tuples, `k^n`.
    pub fn len(&self) -> usize {
        if self.n == 0 {
            1
        } else {
            self.strides[0] * self.k
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Weight of coordinate `i` in the index.
    pub fn stride(&self, i: usize) -> usize {
        self.strides[i]
    }

    pub fn encode(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.n);
        tuple.iter().zip(&self.strides).map(|(a, s)| a * s).sum()
    }

    pub fn decode(&self, index: usize) -> Vec<usize> {
        let mut out = vec![0; self.n];
        self.decode_into(index, &mut out);
        out
    }

    pub fn decode_into(&self, mut index: usize, out: &mut [usize]) {
        for i in (0..self.n).rev() {
            out[i] = index % self.k;
            index /= self.k;
        }
    }

    /// Coordinate `i` of the tuple with the given index.
    pub fn digit(&self, index: usize, i: usize) -> usize {
        (index / self.strides[i]) % self.k
    }

    pub fn tuples(&self) -> Tuples {
        Tuples::new(self.k, self.n)
    }
}

/// Odometer over `{0..k}^n` in index order.
#[derive(Debug, Clone)]
pub struct Tuples {
    k: usize,
    current: Vec<usize>,
    done: bool,
}

impl Tuples {
    pub fn new(k: usize, n: usize) -> Self {
        Tuples {
            k,
            current: vec![0; n],
            done: k == 0,
        }
    }
}

impl Iterator for Tuples {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let mut i = self.current.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.current[i] += 1;
            if self.current[i] < self.k {
                break;
            }
            self.current[i] = 0;
        }
        Some(out)
    }
}

/// Whether some value occurs twice in `tuple`.
pub fn has_repeat(tuple: &[usize]) -> bool {
    let mut seen: u64 = 0;
    for &a in tuple {
        if a < 64 {
            let bit = 1u64 << a;
            if seen & bit != 0 {
                return true;
            }
            seen |= bit;
        } else if tuple.iter().filter(|&&b| b == a).count() > 1 {
            return true;
        }
    }
    false
}

/// A total function `f: {0..k}^n -> {0..b}` stored as a dense table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteFunction {
    k: usize,
    n: usize,
    b: usize,
    table: Vec<Value>,
}

impl FiniteFunction {
    pub fn new(k: usize, n: usize, b: usize, table: Vec<Value>) -> Result<Self> {
        Self::with_limit(k, n, b, table, DEFAULT_MAX_TABLE_LEN)
    }

    pub fn with_limit(k: usize, n: usize, b: usize, table: Vec<Value>, limit: usize) -> Result<Self> {
        let len = table_len(k, n, b, limit)?;
        if table.len() != len {
            return Err(Error::InvalidArgument(format!(
                "expected {len} table entries, got {}",
                table.len()
            )));
        }
        if let Some(pos) = table.iter().position(|&v| v as usize >= b) {
            return Err(Error::InvalidArgument(format!(
                "table entry {pos} has value {} >= b = {b}",
                table[pos]
            )));
        }
        Ok(FiniteFunction { k, n, b, table })
    }

    /// Builds a function by evaluating `g` on every tuple in index order.
    pub fn from_fn<F>(k: usize, n: usize, b: usize, mut g: F) -> Result<Self>
    where
        F: FnMut(&[usize]) -> Value,
    {
        table_len(k, n, b, DEFAULT_MAX_TABLE_LEN)?;
        let table = Tuples::new(k, n).map(|t| g(&t)).collect();
        Self::new(k, n, b, table)
    }

    pub fn constant(k: usize, n: usize, b: usize, value: Value) -> Result<Self> {
        let len = table_len(k, n, b, DEFAULT_MAX_TABLE_LEN)?;
        Self::new(k, n, b, vec![value; len])
    }

    /// The projection `x_slot` as an operation on `{0..k}` (so `b = k`).
    pub fn projection(k: usize, n: usize, slot: usize) -> Result<Self> {
        if slot >= n {
            return Err(Error::InvalidArgument(format!("slot {slot} out of range for arity {n}")));
        }
        Self::from_fn(k, n, k, |t| t[slot] as Value)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn table(&self) -> &[Value] {
        &self.table
    }

    pub fn into_table(self) -> Vec<Value> {
        self.table
    }

    pub fn codec(&self) -> TupleCodec {
        TupleCodec::new(self.k, self.n).expect("validated at construction")
    }

    /// Value at a table index.
    #[inline]
    pub fn at(&self, index: usize) -> Value {
        self.table[index]
    }

    pub fn eval(&self, tuple: &[usize]) -> Result<Value> {
        if tuple.len() != self.n {
            return Err(Error::InvalidArgument(format!(
                "expected a tuple of length {}, got {}",
                self.n,
                tuple.len()
            )));
        }
        let mut index = 0;
        for (i, &a) in tuple.iter().enumerate() {
            if a >= self.k {
                return Err(Error::InvalidArgument(format!(
                    "coordinate {} has value {a} >= k = {}",
                    i + 1,
                    self.k
                )));
            }
            index = index * self.k + a;
        }
        Ok(self.table[index])
    }

    /// Evaluation without range checks.
    #[inline]
    pub fn eval_unchecked(&self, tuple: &[usize]) -> Value {
        let mut index = 0;
        for &a in tuple {
            index = index * self.k + a;
        }
        self.table[index]
    }

    pub fn is_constant(&self) -> bool {
        self.table.windows(2).all(|w| w[0] == w[1])
    }

    /// Distinct values taken, in increasing order.
    pub fn range(&self) -> Vec<Value> {
        let mut r = self.table.clone();
        r.sort_unstable();
        r.dedup();
        r
    }
}

impl fmt::Debug for FiniteFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteFunction({})", crate::text::render_line(self))
    }
}

fn table_len(k: usize, n: usize, b: usize, limit: usize) -> Result<usize> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("domain size must be at least 2, got {k}")));
    }
    if n < 1 {
        return Err(Error::InvalidArgument("arity must be at least 1".into()));
    }
    if b < 2 {
        return Err(Error::InvalidArgument(format!("codomain size must be at least 2, got {b}")));
    }
    if b > Value::MAX as usize {
        return Err(Error::InvalidArgument(format!("codomain size {b} too large")));
    }
    match checked_pow(k, n) {
        Some(len) if len <= limit => Ok(len),
        _ => Err(Error::TableTooLarge {
            requested: (k as u128).checked_pow(n as u32).unwrap_or(u128::MAX),
            limit,
        }),
    }
}
