//! Generative constructions: combining a binary pair with a `q`-ary pair into
//! an array pair, the length-14 binary base pair, the parameterized `q`-ary
//! family with truncated lengths, and the direct 2-D Boolean-function family
//! with zero-correlation ratio 6/7.
//!
//! Every construction checks its own output by default.

use crate::arrays::{zcap_check, RootArray};
use crate::error::{out_of_range, Error, Result};
use crate::gbf::{gdj_function, gdj_pair, parse_anf, Companion, Gbf, Gbf2D, MAX_TABLE_VARS};
use crate::sequences::{max_zcz, RootVector};
use crate::zq::{check_even_modulus, Permutation, Zq2DArray, ZqVector};

/// Options shared by the two combiners.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CombineOptions {
    /// Claimed widths `(Z₁, Z₂)` of the row and column pairs; the measured
    /// widths are used when absent.
    pub claimed: Option<(usize, usize)>,
    /// Skip the input ZCP checks.
    pub force: bool,
    /// Check the output as a ZCAP.
    pub verify: bool,
}

impl Default for CombineOptions {
    fn default() -> Self {
        Self {
            claimed: None,
            force: false,
            verify: true,
        }
    }
}

/// Combined pair together with the rectangle it was built for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Combined<T> {
    pub s: T,
    pub t: T,
    pub z1: usize,
    pub z2: usize,
}

fn input_widths(
    a: &RootVector,
    b: &RootVector,
    c: &RootVector,
    d: &RootVector,
    opts: &CombineOptions,
) -> Result<(usize, usize)> {
    let w_ab = max_zcz(a, b)?.width;
    let w_cd = max_zcz(c, d)?.width;
    match opts.claimed {
        None => Ok((w_ab, w_cd)),
        Some(_) if opts.force => Ok((w_ab, w_cd)),
        Some((z1, z2)) => {
            if z1 == 0 || z1 > w_ab {
                return Err(Error::VerificationFailed(format!(
                    "(a, b) is not a ({}, {z1})-ZCP: measured width {w_ab}",
                    a.len()
                )));
            }
            if z2 == 0 || z2 > w_cd {
                return Err(Error::VerificationFailed(format!(
                    "(c, d) is not a ({}, {z2})-ZCP: measured width {w_cd}",
                    c.len()
                )));
            }
            Ok((z1, z2))
        }
    }
}

fn verify_output(s: &RootArray, t: &RootArray, z1: usize, z2: usize) -> Result<()> {
    let cert = zcap_check(s, t, z1, z2)?;
    if !cert.verified {
        return Err(Error::VerificationFailed(format!(
            "output is not a (({}, {}), ({z1}, {z2}))-ZCAP",
            cert.rows, cert.cols
        )));
    }
    Ok(())
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Complex-valued combination of a binary `(L₁, Z₁)`-ZCP `(A, B)` and an
/// `(L₂, Z₂)`-ZCP `(C, D)` into an `L₁ × L₂` array pair over `lcm(2, M)`:
///
/// `S_{i,g} = A_i C_g` and `T_{i,g} = A_i D_g` where `A_i = B_i`, otherwise
/// `S_{i,g} = A_i D*_{L₂-1-g}` and `T_{i,g} = -A_i C*_{L₂-1-g}`.
pub fn theorem1_combine(
    a: &RootVector,
    b: &RootVector,
    c: &RootVector,
    d: &RootVector,
) -> Result<Combined<RootArray>> {
    theorem1_combine_with(a, b, c, d, &CombineOptions::default())
}

pub fn theorem1_combine_with(
    a: &RootVector,
    b: &RootVector,
    c: &RootVector,
    d: &RootVector,
    opts: &CombineOptions,
) -> Result<Combined<RootArray>> {
    let (abits, bbits) = match (a.as_binary(), b.as_binary()) {
        (Some(x), Some(y)) => (x, y),
        _ => {
            return Err(Error::InvalidParameters(
                "(A, B) must be a binary (±1) pair".into(),
            ))
        }
    };
    if abits.len() != bbits.len() {
        return Err(Error::LengthMismatch(abits.len(), bbits.len()));
    }
    let (z1, z2) = input_widths(a, b, c, d, opts)?;
    let q = c.modulus();
    let modulus = 2 * q / gcd(2, q);
    let c = c.lift_to(modulus)?;
    let d = d.lift_to(modulus)?;
    let (rows, cols) = (abits.len(), c.len());
    let half = modulus / 2;
    let (ce, de) = (c.exponents(), d.exponents());
    let mut s = Vec::with_capacity(rows * cols);
    let mut t = Vec::with_capacity(rows * cols);
    for i in 0..rows {
        let ai = abits[i] as u32 * half;
        for g in 0..cols {
            let r = cols - 1 - g;
            let (se, te) = if abits[i] == bbits[i] {
                (ai + ce[g], ai + de[g])
            } else {
                (ai + modulus - de[r], ai + half + modulus - ce[r])
            };
            s.push(se % modulus);
            t.push(te % modulus);
        }
    }
    let s = RootArray::new(modulus, rows, cols, s)?;
    let t = RootArray::new(modulus, rows, cols, t)?;
    if opts.verify {
        verify_output(&s, &t, z1, z2)?;
    }
    Ok(Combined { s, t, z1, z2 })
}

/// `Z_q` form of [`theorem1_combine`] for a binary `(a, b)` and a `q`-ary
/// `(c, d)`, with `x = a_i ⊕ b_i` and `←c`, `←d` the reversals:
///
/// `s_{i,g} = c_g (1 - x) - x ←d_g + (q/2) a_i`,
/// `t_{i,g} = d_g (1 - x) + x (q/2 - ←c_g) + (q/2) a_i`.
pub fn corollary1_combine(
    a: &ZqVector,
    b: &ZqVector,
    c: &ZqVector,
    d: &ZqVector,
) -> Result<Combined<Zq2DArray>> {
    corollary1_combine_with(a, b, c, d, &CombineOptions::default())
}

pub fn corollary1_combine_with(
    a: &ZqVector,
    b: &ZqVector,
    c: &ZqVector,
    d: &ZqVector,
    opts: &CombineOptions,
) -> Result<Combined<Zq2DArray>> {
    if a.q() != 2 || b.q() != 2 {
        return Err(Error::InvalidParameters(
            "(a, b) must be binary (q = 2)".into(),
        ));
    }
    if c.q() != d.q() {
        return Err(Error::ModulusMismatch(c.q(), d.q()));
    }
    let (va, vb, vc, vd) = (
        RootVector::from(a),
        RootVector::from(b),
        RootVector::from(c),
        RootVector::from(d),
    );
    let (z1, z2) = input_widths(&va, &vb, &vc, &vd, opts)?;
    let q = c.q() as i64;
    let half = q / 2;
    let cols = c.len();
    let (av, bv, cv, dv) = (a.values(), b.values(), c.values(), d.values());
    let entry = |i: usize, g: usize, first: bool| -> i64 {
        let x = (av[i] ^ bv[i]) as i64;
        let r = cols - 1 - g;
        let shift = half * av[i] as i64;
        if first {
            cv[g] as i64 * (1 - x) - x * dv[r] as i64 + shift
        } else {
            dv[g] as i64 * (1 - x) + x * (half - cv[r] as i64) + shift
        }
    };
    let s = Zq2DArray::from_fn(c.q(), a.len(), cols, |i, g| entry(i, g, true))?;
    let t = Zq2DArray::from_fn(c.q(), a.len(), cols, |i, g| entry(i, g, false))?;
    if opts.verify {
        verify_output(
            &RootArray::lift(&s, s.q())?,
            &RootArray::lift(&t, t.q())?,
            z1,
            z2,
        )?;
    }
    Ok(Combined { s, t, z1, z2 })
}

/// Parameters of the `q`-ary family with truncated row length
/// `2^{m-1} + Σ_{α=t'+1}^{m-1} d_α 2^{α-1} + 2^v`.
///
/// Variable `k` of the binary pair is the bit of weight `2^{k-1}` of the
/// index. The chain permutation must satisfy `{π₁(1..t')} = {1..t'}`,
/// `{π₁(1..v)} = {1..v}` and `π₁(v+1) = t'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma5Params {
    pub q: u32,
    /// Column variable count (`2^n` columns of the output before transposing).
    pub n: usize,
    pub m: usize,
    pub t_prime: usize,
    pub v: usize,
    pub pi1: Permutation,
    pub pi2: Permutation,
    /// `p_0, …, p_m` over `Z_2`.
    pub p: Vec<u8>,
    /// `v_0, …, v_n` over `Z_q`.
    pub coeffs: Vec<i64>,
    /// `d_{t'+1}, …, d_{m-1}` over `Z_2`.
    pub d: Vec<u8>,
}

impl Lemma5Params {
    /// All-zero affine parts, identity `π₂`, and the smallest chain
    /// permutation meeting the constraints.
    pub fn simple(q: u32, n: usize, m: usize, t_prime: usize, v: usize) -> Result<Self> {
        if !(v < t_prime && t_prime < m) {
            return Err(Error::InvalidParameters(format!(
                "need v < t' < m, got v={v}, t'={t_prime}, m={m}"
            )));
        }
        let mut images: Vec<usize> = (1..=v).collect();
        images.push(t_prime);
        images.extend((v + 1..t_prime).chain(t_prime + 1..=m));
        Ok(Self {
            q,
            n,
            m,
            t_prime,
            v,
            pi1: Permutation::new(images)?,
            pi2: Permutation::identity(n),
            p: vec![0; m + 1],
            coeffs: vec![0; n + 1],
            d: vec![0; m.saturating_sub(t_prime + 1)],
        })
    }

    pub fn validate(&self) -> Result<()> {
        check_even_modulus(self.q)?;
        let (m, tp, v) = (self.m, self.t_prime, self.v);
        if m > MAX_TABLE_VARS {
            return Err(out_of_range("m", m, 2, MAX_TABLE_VARS as i64));
        }
        if self.n == 0 || self.n > MAX_TABLE_VARS {
            return Err(out_of_range("n", self.n, 1, MAX_TABLE_VARS as i64));
        }
        if !(v < tp && tp < m) {
            return Err(Error::InvalidParameters(format!(
                "need v < t' < m, got v={v}, t'={tp}, m={m}"
            )));
        }
        if self.pi1.len() != m {
            return Err(Error::InvalidPermutation(format!(
                "pi1 = {} must permute 1..{m}",
                self.pi1
            )));
        }
        if self.pi2.len() != self.n {
            return Err(Error::InvalidPermutation(format!(
                "pi2 = {} must permute 1..{}",
                self.pi2, self.n
            )));
        }
        let prefix_closed = |k: usize| (1..=k).all(|l| self.pi1.at(l) <= k);
        if !prefix_closed(tp) || !prefix_closed(v) || self.pi1.at(v + 1) != tp {
            return Err(Error::InvalidPermutation(format!(
                "pi1 = {} must map 1..{tp} onto itself, 1..{v} onto itself, and {} to {tp}",
                self.pi1,
                v + 1
            )));
        }
        if self.p.len() != m + 1 {
            return Err(Error::LengthMismatch(self.p.len(), m + 1));
        }
        if self.d.len() != m - tp - 1 {
            return Err(Error::LengthMismatch(self.d.len(), m - tp - 1));
        }
        if let Some(&bit) = self.p.iter().chain(&self.d).find(|&&b| b > 1) {
            return Err(out_of_range("binary coefficient", bit, 0, 1));
        }
        if self.coeffs.len() != self.n + 1 {
            return Err(Error::LengthMismatch(self.coeffs.len(), self.n + 1));
        }
        Ok(())
    }

    /// Row length `L`.
    pub fn length(&self) -> usize {
        let tail: usize = self
            .d
            .iter()
            .enumerate()
            .map(|(k, &bit)| (bit as usize) << (self.t_prime + k))
            .sum();
        (1 << (self.m - 1)) + tail + (1 << self.v)
    }

    /// Claimed zero-correlation width `2^{t'-1} + 2^v` of the binary pair.
    pub fn width(&self) -> usize {
        (1 << (self.t_prime - 1)) + (1 << self.v)
    }
}

/// The binary pair `(a, b)` of length [`Lemma5Params::length`].
pub fn lemma5_base(p: &Lemma5Params) -> Result<(ZqVector, ZqVector)> {
    p.validate()?;
    let m = p.m;
    // weight-2^{k-1} bit is variable m-k+1 in most-significant-first order
    let var = |k: usize| m - k + 1;
    let mut a = Gbf::zero(2, m)?;
    for k in 1..p.t_prime {
        a.add_term(&[var(p.pi1.at(k)), var(p.pi1.at(k + 1))], 1)?;
    }
    for k in 1..=m {
        a.add_term(&[var(k)], p.p[k] as i64)?;
    }
    a.add_term(&[], p.p[0] as i64)?;
    let mut b = a.clone();
    b.add_term(&[var(p.pi1.at(1))], 1)?;
    let len = p.length();
    Ok((a.to_sequence(len)?, b.to_sequence(len)?))
}

/// `2^n × L` array pair, verified on the rectangle `(2^n, 2^{t'-1} + 2^v)`.
pub fn lemma5_construct(p: &Lemma5Params) -> Result<Combined<Zq2DArray>> {
    lemma5_construct_with(p, true)
}

pub fn lemma5_construct_with(p: &Lemma5Params, verify: bool) -> Result<Combined<Zq2DArray>> {
    let (a, b) = lemma5_base(p)?;
    let (c, d) = gdj_pair(p.q, p.n, &p.pi2, &p.coeffs, Companion::First)?;
    let opts = CombineOptions {
        claimed: Some((p.width(), 1 << p.n)),
        force: !verify,
        verify,
    };
    let out = corollary1_combine_with(&a, &b, &c, &d, &opts)?;
    Ok(Combined {
        s: out.s.transpose(),
        t: out.t.transpose(),
        z1: 1 << p.n,
        z2: p.width(),
    })
}

pub const LEMMA6_A: &str = "x1 + x2 + x1*x2 + x1*x3 + x2*x4 + x1*x2*x4";
pub const LEMMA6_B: &str =
    "x2 + x4 + x1*x3 + x2*x3 + x3*x4 + x1*x4 + x1*x2*x3 + x1*x2*x4 + x1*x3*x4";

fn lemma6_functions() -> (Gbf, Gbf) {
    let a = parse_anf(LEMMA6_A, 2, 4, 0).expect("constant polynomial");
    let b = parse_anf(LEMMA6_B, 2, 4, 0).expect("constant polynomial");
    (a.into_gbf(), b.into_gbf())
}

/// The binary `(14, 12)`-ZCP obtained by truncating two 4-variable functions.
pub fn lemma6_base() -> (ZqVector, ZqVector) {
    let (a, b) = lemma6_functions();
    (
        a.to_sequence(14).expect("14 <= 16"),
        b.to_sequence(14).expect("14 <= 16"),
    )
}

/// Parameters of the direct 2-D construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem2Params {
    pub q: u32,
    pub m: usize,
    /// Number of `y` variables folded into the row index, `0 ≤ n ≤ m`.
    pub n: usize,
    pub perm: Permutation,
    /// `v_0, …, v_m` over `Z_q`.
    pub coeffs: Vec<i64>,
}

impl Theorem2Params {
    pub fn new(q: u32, m: usize, n: usize, perm: Permutation, coeffs: Vec<i64>) -> Result<Self> {
        let p = Self {
            q,
            m,
            n,
            perm,
            coeffs,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        check_even_modulus(self.q)?;
        if self.m == 0 || self.m + 4 > MAX_TABLE_VARS {
            return Err(out_of_range("m", self.m, 1, (MAX_TABLE_VARS - 4) as i64));
        }
        if self.n > self.m {
            return Err(out_of_range("n", self.n, 0, self.m as i64));
        }
        if self.perm.len() != self.m {
            return Err(Error::InvalidPermutation(format!(
                "{} must permute 1..{}",
                self.perm, self.m
            )));
        }
        if self.coeffs.len() != self.m + 1 {
            return Err(Error::LengthMismatch(self.coeffs.len(), self.m + 1));
        }
        Ok(())
    }

    /// `(14·2^n, 2^{m-n})`
    pub fn dims(&self) -> (usize, usize) {
        (14 << self.n, 1 << (self.m - self.n))
    }

    /// `(12·2^n, 2^{m-n})`
    pub fn zone(&self) -> (usize, usize) {
        (12 << self.n, 1 << (self.m - self.n))
    }
}

/// Re-indexes a function of `from.num_vars()` variables as one of `total`
/// variables, variable `k` becoming `k + offset`.
fn embed(f: &Gbf, total: usize, offset: usize) -> Result<Gbf> {
    let mut out = Gbf::zero(f.q(), total)?;
    for (vars, c) in f.terms() {
        let shifted: Vec<usize> = vars.iter().map(|&k| k + offset).collect();
        out.add_term(&shifted, c as i64)?;
    }
    Ok(out)
}

/// The two 2-D functions over `x_1..x_4` and `y_1..y_m`:
///
/// `s = c(y) + (q/2) a(x) + K(y)·(a ⊕ b)(x)` with `c` the chain function of
/// the `y` variables, `K(y) = (q/2)m + (q/2)y_{π(m)} - Σ v_l - 2v_0`, and
/// `t = s + (q/2) y_{π(1)}`. Both are returned with all `4 + m` variables
/// in the row set; [`theorem2_direct`] re-splits them.
pub fn theorem2_functions(p: &Theorem2Params) -> Result<(Gbf, Gbf)> {
    p.validate()?;
    let (q, m) = (p.q, p.m);
    let total = 4 + m;
    let half = (q / 2) as i64;
    let (a, b) = lemma6_functions();
    let xor: Vec<u32> = (0..16).map(|i| a.value_at(i) ^ b.value_at(i)).collect();
    let xor_q = Gbf::from_truth_table(q, 4, &xor)?;
    let a_lifted =
        Gbf::from_truth_table(q, 4, &(0..16).map(|i| a.value_at(i)).collect::<Vec<_>>())?;

    let chain = embed(&gdj_function(q, m, &p.perm, &p.coeffs)?, total, 4)?;
    let mut k = Gbf::zero(q, total)?;
    let v_sum: i64 = p.coeffs[1..].iter().sum();
    k.add_term(&[], half * m as i64 - v_sum - 2 * p.coeffs[0])?;
    k.add_term(&[4 + p.perm.at(m)], half)?;

    let s = chain
        .add(&embed(&a_lifted, total, 0)?.scale(half))?
        .add(&k.mul(&embed(&xor_q, total, 0)?)?)?;
    let mut t = s.clone();
    t.add_term(&[4 + p.perm.at(1)], half)?;
    Ok((s, t))
}

/// Direct 2-D construction: a `(14·2^n) × 2^{m-n}` array pair whose rows
/// combine the `x` block index with `y_1..y_n`, verified as a
/// `((14·2^n, 2^{m-n}), (12·2^n, 2^{m-n}))`-ZCAP.
pub fn theorem2_direct(p: &Theorem2Params) -> Result<Combined<Zq2DArray>> {
    theorem2_direct_with(p, true)
}

pub fn theorem2_direct_with(p: &Theorem2Params, verify: bool) -> Result<Combined<Zq2DArray>> {
    let (s, t) = theorem2_functions(p)?;
    let (rows, cols) = p.dims();
    let (z1, z2) = p.zone();
    let to_array = |f: Gbf| Gbf2D::from_gbf(f, 4 + p.n)?.to_array(rows, cols);
    let s = to_array(s)?;
    let t = to_array(t)?;
    if verify {
        verify_output(
            &RootArray::lift(&s, p.q)?,
            &RootArray::lift(&t, p.q)?,
            z1,
            z2,
        )?;
    }
    Ok(Combined { s, t, z1, z2 })
}
