//! Sequences and arrays over `Z_q`, and 1-based permutations.

use std::fmt;
use std::str::FromStr;

use crate::error::{out_of_range, Error, Result};

pub(crate) fn check_even_modulus(q: u32) -> Result<()> {
    if q < 2 || !q.is_multiple_of(2) {
        return Err(Error::OddModulus(q));
    }
    Ok(())
}

fn check_entries(values: &[u32], q: u32) -> Result<()> {
    match values.iter().find(|&&v| v >= q) {
        Some(&value) => Err(Error::EntryOutOfRange { value, modulus: q }),
        None => Ok(()),
    }
}

/// A sequence `(a_0, …, a_{L-1})` over `Z_q`; entry `a` stands for `ξ_q^a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZqVector {
    q: u32,
    values: Vec<u32>,
}

impl ZqVector {
    pub fn new(q: u32, values: Vec<u32>) -> Result<Self> {
        check_even_modulus(q)?;
        if values.is_empty() {
            return Err(out_of_range("sequence length", 0, 1, i64::MAX));
        }
        check_entries(&values, q)?;
        Ok(Self { q, values })
    }

    /// Reduces every entry mod `q` first.
    pub fn from_residues(q: u32, values: impl IntoIterator<Item = i64>) -> Result<Self> {
        check_even_modulus(q)?;
        let values = values
            .into_iter()
            .map(|v| v.rem_euclid(q as i64) as u32)
            .collect();
        Self::new(q, values)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `(a_{L-1}, …, a_0)`
    pub fn reversed(&self) -> ZqVector {
        let mut values = self.values.clone();
        values.reverse();
        ZqVector { q: self.q, values }
    }
}

/// An `rows × cols` array over `Z_q`, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Zq2DArray {
    q: u32,
    rows: usize,
    cols: usize,
    values: Vec<u32>,
}

impl Zq2DArray {
    pub fn new(q: u32, rows: usize, cols: usize, values: Vec<u32>) -> Result<Self> {
        check_even_modulus(q)?;
        if rows == 0 || cols == 0 {
            return Err(out_of_range("array dimension", 0, 1, i64::MAX));
        }
        if values.len() != rows * cols {
            return Err(Error::LengthMismatch(values.len(), rows * cols));
        }
        check_entries(&values, q)?;
        Ok(Self {
            q,
            rows,
            cols,
            values,
        })
    }

    pub fn from_rows(q: u32, rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::LengthMismatch(bad.len(), cols));
        }
        Self::new(q, rows.len(), cols, rows.concat())
    }

    /// Builds an array entry by entry; `f(i, g)` is reduced mod `q`.
    pub fn from_fn(
        q: u32,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> i64,
    ) -> Result<Self> {
        check_even_modulus(q)?;
        let mut values = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for g in 0..cols {
                values.push(f(i, g).rem_euclid(q as i64) as u32);
            }
        }
        Self::new(q, rows, cols, values)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn get(&self, i: usize, g: usize) -> u32 {
        self.values[i * self.cols + g]
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.values[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        self.values.chunks(self.cols).map(<[u32]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Zq2DArray {
        let mut values = Vec::with_capacity(self.values.len());
        for g in 0..self.cols {
            for i in 0..self.rows {
                values.push(self.get(i, g));
            }
        }
        Zq2DArray {
            q: self.q,
            rows: self.cols,
            cols: self.rows,
            values,
        }
    }

    /// Row-major flattening into a single sequence.
    pub fn flatten(&self) -> ZqVector {
        ZqVector {
            q: self.q,
            values: self.values.clone(),
        }
    }
}

/// A permutation of `{1, …, m}`, written 1-based as in `π = (2, 1, 3)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m + 1];
        for &p in &images {
            if p == 0 || p > m || seen[p] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} of {{1..{m}}}"
                )));
            }
            seen[p] = true;
        }
        Ok(Self(images))
    }

    pub fn identity(m: usize) -> Self {
        Self((1..=m).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `π(l)` for 1-based `l`.
    pub fn at(&self, l: usize) -> usize {
        self.0[l - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let images = s
            .split(',')
            .map(|t| {
                t.trim().parse::<usize>().map_err(|_| Error::Parse {
                    token: t.trim().to_string(),
                    reason: "expected a positive integer".into(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(images)
    }
}
