//! Generalized Boolean functions `f: Z_2^m → Z_q` in algebraic normal form.
//!
//! The associated sequence of `f` lists `f(i_1, …, i_m)` for
//! `i = Σ i_l 2^{m-l}`, i.e. `i_1` is the most significant bit. Truncation to
//! length `L` keeps the first `L` entries. A 2-D function over
//! `x_1..x_n, y_1..y_m` is a plain function over `n + m` variables ordered
//! `x` first; rows are indexed by the `x` bits and columns by the `y` bits.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{out_of_range, Error, Result};
use crate::zq::{check_even_modulus, Permutation, Zq2DArray, ZqVector};

/// Largest variable count for which value tables are materialized.
pub const MAX_TABLE_VARS: usize = 26;

/// Monomials are bit masks: bit `k` set means variable `k + 1` is a factor.
type Monomial = u64;

/// A `q`-ary generalized Boolean function of `num_vars` variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gbf {
    q: u32,
    num_vars: usize,
    terms: BTreeMap<Monomial, u32>,
}

impl Gbf {
    pub fn zero(q: u32, num_vars: usize) -> Result<Self> {
        check_even_modulus(q)?;
        if num_vars > 63 {
            return Err(out_of_range("variable count", num_vars, 0, 63));
        }
        Ok(Self {
            q,
            num_vars,
            terms: BTreeMap::new(),
        })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Adds `coeff · Π_{l ∈ vars} x_l` (1-based variable indices).
    pub fn add_term(&mut self, vars: &[usize], coeff: i64) -> Result<()> {
        let mut mask = 0;
        for &l in vars {
            if l == 0 || l > self.num_vars {
                return Err(out_of_range("variable index", l, 1, self.num_vars as i64));
            }
            mask |= 1 << (l - 1);
        }
        self.add_monomial(mask, coeff);
        Ok(())
    }

    fn add_monomial(&mut self, mask: Monomial, coeff: i64) {
        let q = self.q as i64;
        let entry = self.terms.entry(mask).or_insert(0);
        *entry = (*entry as i64 + coeff).rem_euclid(q) as u32;
        if *entry == 0 {
            self.terms.remove(&mask);
        }
    }

    /// Coefficient of the monomial over the given 1-based variables.
    pub fn coefficient(&self, vars: &[usize]) -> u32 {
        let mask = vars.iter().fold(0, |m, &l| m | (1 << (l - 1)));
        self.terms.get(&mask).copied().unwrap_or(0)
    }

    /// Terms as (sorted 1-based variable list, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (Vec<usize>, u32)> + '_ {
        self.terms.iter().map(|(&mask, &c)| (mask_vars(mask), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_compatible(&self, other: &Gbf) -> Result<()> {
        if self.q != other.q {
            return Err(Error::ModulusMismatch(self.q, other.q));
        }
        if self.num_vars != other.num_vars {
            return Err(Error::LengthMismatch(self.num_vars, other.num_vars));
        }
        Ok(())
    }

    pub fn add(&self, other: &Gbf) -> Result<Gbf> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (&mask, &c) in &other.terms {
            out.add_monomial(mask, c as i64);
        }
        Ok(out)
    }

    pub fn scale(&self, k: i64) -> Gbf {
        let mut out = Gbf {
            terms: BTreeMap::new(),
            ..self.clone()
        };
        for (&mask, &c) in &self.terms {
            out.add_monomial(mask, c as i64 * k.rem_euclid(self.q as i64));
        }
        out
    }

    /// Product in the ANF ring, using `x_l² = x_l`.
    pub fn mul(&self, other: &Gbf) -> Result<Gbf> {
        self.check_compatible(other)?;
        let mut out = Gbf {
            terms: BTreeMap::new(),
            ..self.clone()
        };
        for (&ma, &ca) in &self.terms {
            for (&mb, &cb) in &other.terms {
                out.add_monomial(ma | mb, ca as i64 * cb as i64);
            }
        }
        Ok(out)
    }

    /// Evaluates at a full binary assignment `(x_1, …, x_m)`.
    pub fn evaluate(&self, point: &[u8]) -> Result<u32> {
        if point.len() < self.num_vars {
            return Err(Error::MissingAssignment(format!("x{}", point.len() + 1)));
        }
        if point.len() > self.num_vars {
            return Err(out_of_range(
                "assignment length",
                point.len(),
                0,
                self.num_vars as i64,
            ));
        }
        let mut assigned: Monomial = 0;
        for (k, &bit) in point.iter().enumerate() {
            match bit {
                0 => {}
                1 => assigned |= 1 << k,
                _ => return Err(out_of_range("assignment bit", bit, 0, 1)),
            }
        }
        Ok(self.eval_mask(assigned))
    }

    fn eval_mask(&self, assigned: Monomial) -> u32 {
        let sum: u64 = self
            .terms
            .iter()
            .filter(|(&mask, _)| mask & assigned == mask)
            .map(|(_, &c)| c as u64)
            .sum();
        (sum % self.q as u64) as u32
    }

    /// Value at the integer `i = Σ i_l 2^{m-l}`.
    pub fn value_at(&self, i: usize) -> u32 {
        self.eval_mask(index_to_mask(i, self.num_vars))
    }

    /// The truncated associated sequence `f^L = (f_0, …, f_{L-1})`.
    pub fn to_sequence(&self, len: usize) -> Result<ZqVector> {
        let full = self.table_len()?;
        if len == 0 || len > full {
            return Err(out_of_range("sequence length", len, 1, full as i64));
        }
        ZqVector::new(self.q, (0..len).map(|i| self.value_at(i)).collect())
    }

    fn table_len(&self) -> Result<usize> {
        if self.num_vars > MAX_TABLE_VARS {
            return Err(out_of_range(
                "variable count",
                self.num_vars,
                0,
                MAX_TABLE_VARS as i64,
            ));
        }
        Ok(1 << self.num_vars)
    }

    /// Recovers the algebraic normal form from a full value table
    /// (indexed most-significant-bit first) by Möbius inversion over `Z_q`.
    pub fn from_truth_table(q: u32, num_vars: usize, table: &[u32]) -> Result<Gbf> {
        let mut f = Gbf::zero(q, num_vars)?;
        let full = f.table_len()?;
        if table.len() != full {
            return Err(Error::LengthMismatch(table.len(), full));
        }
        let qi = q as i64;
        let mut by_mask = vec![0i64; full];
        for (i, &v) in table.iter().enumerate() {
            by_mask[index_to_mask(i, num_vars) as usize] = v as i64 % qi;
        }
        for bit in 0..num_vars {
            for mask in 0..full {
                if mask & (1 << bit) != 0 {
                    by_mask[mask] = (by_mask[mask] - by_mask[mask ^ (1 << bit)]).rem_euclid(qi);
                }
            }
        }
        for (mask, &c) in by_mask.iter().enumerate() {
            f.add_monomial(mask as Monomial, c);
        }
        Ok(f)
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, name: impl Fn(usize) -> String) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(&mask, _)| (mask.count_ones(), mask));
        let rendered: Vec<String> = terms
            .into_iter()
            .map(|(&mask, &c)| {
                let vars: Vec<String> = mask_vars(mask).into_iter().map(&name).collect();
                match (c, vars.is_empty()) {
                    (_, true) => c.to_string(),
                    (1, false) => vars.join("*"),
                    _ => format!("{c}*{}", vars.join("*")),
                }
            })
            .collect();
        f.write_str(&rendered.join(" + "))
    }
}

impl fmt::Display for Gbf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, |l| format!("x{l}"))
    }
}

fn mask_vars(mask: Monomial) -> Vec<usize> {
    (0..64)
        .filter(|k| mask & (1 << k) != 0)
        .map(|k| k + 1)
        .collect()
}

/// Maps `i = Σ i_l 2^{m-l}` to the mask whose bit `l - 1` is `i_l`.
fn index_to_mask(i: usize, num_vars: usize) -> Monomial {
    let mut mask = 0;
    for l in 1..=num_vars {
        if (i >> (num_vars - l)) & 1 == 1 {
            mask |= 1 << (l - 1);
        }
    }
    mask
}

/// A 2-D generalized Boolean function over `x_1..x_n` (rows) and `y_1..y_m`
/// (columns).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gbf2D {
    n: usize,
    m: usize,
    f: Gbf,
}

/// Variable of a 2-D function, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    X(usize),
    Y(usize),
}

impl Gbf2D {
    pub fn zero(q: u32, n: usize, m: usize) -> Result<Self> {
        Ok(Self {
            n,
            m,
            f: Gbf::zero(q, n + m)?,
        })
    }

    /// Views a function over `n + m` variables as 2-D: the first `n`
    /// variables index rows.
    pub fn from_gbf(f: Gbf, n: usize) -> Result<Self> {
        if n > f.num_vars() {
            return Err(out_of_range(
                "row variable count",
                n,
                0,
                f.num_vars() as i64,
            ));
        }
        Ok(Self {
            n,
            m: f.num_vars() - n,
            f,
        })
    }

    pub fn q(&self) -> u32 {
        self.f.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// The same function over the flat variable list `x_1..x_n, y_1..y_m`.
    pub fn as_gbf(&self) -> &Gbf {
        &self.f
    }

    pub fn into_gbf(self) -> Gbf {
        self.f
    }

    fn flat_index(&self, var: Var) -> Result<usize> {
        match var {
            Var::X(s) if (1..=self.n).contains(&s) => Ok(s),
            Var::Y(l) if (1..=self.m).contains(&l) => Ok(self.n + l),
            Var::X(s) => Err(out_of_range("x variable index", s, 1, self.n as i64)),
            Var::Y(l) => Err(out_of_range("y variable index", l, 1, self.m as i64)),
        }
    }

    pub fn add_term(&mut self, vars: &[Var], coeff: i64) -> Result<()> {
        let flat = vars
            .iter()
            .map(|&v| self.flat_index(v))
            .collect::<Result<Vec<_>>>()?;
        self.f.add_term(&flat, coeff)
    }

    pub fn coefficient(&self, vars: &[Var]) -> u32 {
        match vars
            .iter()
            .map(|&v| self.flat_index(v))
            .collect::<Result<Vec<_>>>()
        {
            Ok(flat) => self.f.coefficient(&flat),
            Err(_) => 0,
        }
    }

    pub fn num_terms(&self) -> usize {
        self.f.num_terms()
    }

    pub fn evaluate(&self, x: &[u8], y: &[u8]) -> Result<u32> {
        if x.len() < self.n {
            return Err(Error::MissingAssignment(format!("x{}", x.len() + 1)));
        }
        if y.len() < self.m {
            return Err(Error::MissingAssignment(format!("y{}", y.len() + 1)));
        }
        if x.len() > self.n || y.len() > self.m {
            return Err(Error::InvalidParameters(format!(
                "assignment has {} x and {} y bits, function has {} and {}",
                x.len(),
                y.len(),
                self.n,
                self.m
            )));
        }
        self.f.evaluate(&[x, y].concat())
    }

    /// The truncated associated array `(f_{i,g})`, `0 ≤ i < rows`, `0 ≤ g < cols`.
    pub fn to_array(&self, rows: usize, cols: usize) -> Result<Zq2DArray> {
        self.f.table_len()?;
        let (max_rows, max_cols) = (1usize << self.n, 1usize << self.m);
        if rows == 0 || rows > max_rows {
            return Err(out_of_range("rows", rows, 1, max_rows as i64));
        }
        if cols == 0 || cols > max_cols {
            return Err(out_of_range("cols", cols, 1, max_cols as i64));
        }
        Zq2DArray::from_fn(self.q(), rows, cols, |i, g| {
            self.f.value_at((i << self.m) | g) as i64
        })
    }
}

impl fmt::Display for Gbf2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n;
        self.f.fmt_with(f, |l| {
            if l <= n {
                format!("x{l}")
            } else {
                format!("y{}", l - n)
            }
        })
    }
}

/// Parses a sum of monomials such as `"x1*x2 + 2*x1*y1 + y3 + 1"`.
///
/// Variables are `x1..xn` and `y1..ym`; integer factors multiply the
/// coefficient, which is reduced mod `q`. A `-` between terms negates the
/// following term.
pub fn parse_anf(text: &str, q: u32, n: usize, m: usize) -> Result<Gbf2D> {
    if q < 2 || !q.is_multiple_of(2) {
        return Err(Error::Parse {
            token: q.to_string(),
            reason: "modulus q must be even".into(),
        });
    }
    let mut out = Gbf2D::zero(q, n, m)?;
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse {
            token: String::new(),
            reason: "empty expression".into(),
        });
    }

    let mut terms: Vec<(i64, &str)> = Vec::new();
    let mut sign = 1;
    let mut start = 0;
    for (pos, c) in compact.char_indices() {
        if c == '+' || c == '-' {
            terms.push((sign, &compact[start..pos]));
            sign = if c == '-' { -1 } else { 1 };
            start = pos + 1;
        }
    }
    terms.push((sign, &compact[start..]));
    // a leading '-' produces an empty first term
    if terms.len() > 1 && terms[0].1.is_empty() && compact.starts_with('-') {
        terms.remove(0);
    }

    for (sign, term) in terms {
        if term.is_empty() {
            return Err(Error::Parse {
                token: if sign < 0 { "-".into() } else { "+".into() },
                reason: "missing term".into(),
            });
        }
        let mut coeff = sign.rem_euclid(q as i64);
        let mut vars = Vec::new();
        for factor in term.split('*') {
            coeff = (coeff * parse_factor(factor, q, n, m, &mut vars)?) % q as i64;
        }
        out.add_term(&vars, coeff)?;
    }
    Ok(out)
}

fn parse_factor(factor: &str, q: u32, n: usize, m: usize, vars: &mut Vec<Var>) -> Result<i64> {
    let err = |reason: &str| Error::Parse {
        token: factor.to_string(),
        reason: reason.to_string(),
    };
    if factor.is_empty() {
        return Err(Error::Parse {
            token: "*".into(),
            reason: "empty factor".into(),
        });
    }
    if factor.bytes().all(|b| b.is_ascii_digit()) {
        let big: u128 = factor.parse().map_err(|_| err("integer too large"))?;
        return Ok((big % q as u128) as i64);
    }
    let (kind, digits) = factor.split_at(1);
    let index: usize = if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
        digits.parse().map_err(|_| err("bad variable index"))?
    } else {
        return Err(err("expected an integer or a variable x<k>/y<k>"));
    };
    let var = match kind {
        "x" if (1..=n).contains(&index) => Var::X(index),
        "y" if (1..=m).contains(&index) => Var::Y(index),
        "x" | "y" => return Err(err("unknown variable")),
        _ => return Err(err("expected an integer or a variable x<k>/y<k>")),
    };
    vars.push(var);
    Ok(1)
}

/// Which companion Lemma-1 style pair to emit alongside `f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Companion {
    /// `f + (q/2)·x_{π(1)}`
    #[default]
    First,
    /// `f + (q/2)·x_{π(m)}`
    Last,
}

/// `f = (q/2) Σ_{l<m} x_{π(l)} x_{π(l+1)} + Σ v_l x_l + v_0`, with
/// `coeffs = (v_0, v_1, …, v_m)`.
pub fn gdj_function(q: u32, m: usize, perm: &Permutation, coeffs: &[i64]) -> Result<Gbf> {
    check_even_modulus(q)?;
    if m == 0 {
        return Err(out_of_range("m", 0, 1, MAX_TABLE_VARS as i64));
    }
    if perm.len() != m {
        return Err(Error::InvalidPermutation(format!(
            "{perm} has length {}, expected {m}",
            perm.len()
        )));
    }
    if coeffs.len() != m + 1 {
        return Err(Error::LengthMismatch(coeffs.len(), m + 1));
    }
    let half = (q / 2) as i64;
    let mut f = Gbf::zero(q, m)?;
    for l in 1..m {
        f.add_term(&[perm.at(l), perm.at(l + 1)], half)?;
    }
    for (l, &v) in coeffs.iter().enumerate().skip(1) {
        f.add_term(&[l], v)?;
    }
    f.add_term(&[], coeffs[0])?;
    Ok(f)
}

/// The Golay complementary pair `(f, f + (q/2)x_{π(1)})` of length `2^m`
/// (or with `x_{π(m)}` for [`Companion::Last`]).
pub fn gdj_pair(
    q: u32,
    m: usize,
    perm: &Permutation,
    coeffs: &[i64],
    companion: Companion,
) -> Result<(ZqVector, ZqVector)> {
    if m > MAX_TABLE_VARS {
        return Err(out_of_range("m", m, 1, MAX_TABLE_VARS as i64));
    }
    let f = gdj_function(q, m, perm, coeffs)?;
    let pivot = match companion {
        Companion::First => perm.at(1),
        Companion::Last => perm.at(m),
    };
    let mut g = f.clone();
    g.add_term(&[pivot], (q / 2) as i64)?;
    Ok((f.to_sequence(1 << m)?, g.to_sequence(1 << m)?))
}
