//! Exact arithmetic on integer combinations of roots of unity.
//!
//! A [`CycSum`] over modulus `M` stores one integer weight per `M`-th root of
//! unity. Whether the represented complex number equals a rational integer is
//! decided by reducing the weight polynomial modulo the cyclotomic polynomial
//! `Φ_M`, which is the minimal polynomial of `exp(2πi/M)` over the integers.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Integer polynomial, lowest degree first, without trailing zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<i64>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self { coeffs: vec![1] }
    }

    /// `x^n - 1`
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[0] = -1;
        coeffs[n] += 1;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let prod = a
                    .checked_mul(b)
                    .expect("integer polynomial coefficient overflow");
                out[i + j] = out[i + j]
                    .checked_add(prod)
                    .expect("integer polynomial coefficient overflow");
            }
        }
        IntPoly::new(out)
    }

    /// Quotient and remainder of division by a monic polynomial.
    pub fn div_rem_monic(&self, divisor: &IntPoly) -> (IntPoly, IntPoly) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let d = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= d {
            return (IntPoly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0i64; rem.len() - d];
        for k in (d..rem.len()).rev() {
            let lead = rem[k];
            if lead == 0 {
                continue;
            }
            quot[k - d] = lead;
            for (j, &c) in divisor.coeffs.iter().enumerate() {
                let delta = lead
                    .checked_mul(c)
                    .expect("integer polynomial coefficient overflow");
                rem[k - d + j] = rem[k - d + j]
                    .checked_sub(delta)
                    .expect("integer polynomial coefficient overflow");
            }
        }
        rem.truncate(d);
        (IntPoly::new(quot), IntPoly::new(rem))
    }
}

fn cyclotomic_cache() -> &'static RwLock<HashMap<usize, Arc<IntPoly>>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<IntPoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The `m`-th cyclotomic polynomial `Φ_m`, obtained by exact division of
/// `x^m - 1` by `Φ_d` for every proper divisor `d` of `m`. Results are cached.
///
/// # Panics
/// If `m == 0`.
pub fn cyclotomic_poly(m: usize) -> Arc<IntPoly> {
    assert!(m >= 1, "cyclotomic polynomial index must be positive");
    if let Some(p) = cyclotomic_cache().read().expect("cache poisoned").get(&m) {
        return Arc::clone(p);
    }
    let mut poly = IntPoly::x_pow_minus_one(m);
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        let (q, r) = poly.div_rem_monic(&cyclotomic_poly(d));
        debug_assert!(r.is_zero(), "Φ_{d} does not divide x^{m} - 1");
        poly = q;
    }
    let poly = Arc::new(poly);
    cyclotomic_cache()
        .write()
        .expect("cache poisoned")
        .insert(m, Arc::clone(&poly));
    poly
}

/// Exact value `Σ_k coeffs[k]·ξ_M^k` with `ξ_M = exp(2πi/M)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycSum {
    modulus: u32,
    coeffs: Vec<i64>,
}

impl CycSum {
    pub fn zero(modulus: u32) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        Self {
            modulus,
            coeffs: vec![0; modulus as usize],
        }
    }

    pub fn from_coeffs(modulus: u32, coeffs: Vec<i64>) -> Result<Self> {
        if modulus == 0 {
            return Err(crate::error::out_of_range("modulus", 0, 1, u32::MAX as i64));
        }
        if coeffs.len() != modulus as usize {
            return Err(Error::LengthMismatch(coeffs.len(), modulus as usize));
        }
        Ok(Self { modulus, coeffs })
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Adds `weight · ξ_M^exponent`; the exponent is reduced mod `M`.
    pub fn accumulate(&mut self, exponent: i64, weight: i64) {
        let k = exponent.rem_euclid(self.modulus as i64) as usize;
        self.coeffs[k] = self.coeffs[k]
            .checked_add(weight)
            .expect("correlation coefficient overflow");
    }

    /// Functional form of [`accumulate`](Self::accumulate).
    pub fn accumulated(mut self, exponent: i64, weight: i64) -> Self {
        self.accumulate(exponent, weight);
        self
    }

    pub fn add_assign(&mut self, other: &CycSum) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus, other.modulus));
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a = a.checked_add(*b).expect("correlation coefficient overflow");
        }
        Ok(())
    }

    /// Complex conjugate: every exponent `k` becomes `-k mod M`.
    pub fn conj(&self) -> CycSum {
        let m = self.modulus as usize;
        let mut coeffs = vec![0; m];
        for (k, &c) in self.coeffs.iter().enumerate() {
            coeffs[(m - k) % m] = c;
        }
        CycSum {
            modulus: self.modulus,
            coeffs,
        }
    }

    /// Exactly decides whether the represented value equals the integer `n`.
    pub fn is_integer(&self, n: i64) -> bool {
        let phi = cyclotomic_poly(self.modulus as usize);
        let mut shifted = self.coeffs.clone();
        match shifted[0].checked_sub(n) {
            Some(c0) => {
                shifted[0] = c0;
                divisible_by_monic(&shifted, phi.coeffs())
            }
            None => divisible_by_monic_big(&self.coeffs, n, phi.coeffs()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.is_integer(0)
    }

    /// Floating-point evaluation, for export only.
    pub fn eval(&self) -> Complex64 {
        let m = self.modulus as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| Complex64::from_polar(c as f64, 2.0 * PI * k as f64 / m))
            .sum()
    }
}

/// Remainder test in checked `i128`, falling back to big integers on overflow.
fn divisible_by_monic(poly: &[i64], divisor: &[i64]) -> bool {
    let d = divisor.len() - 1;
    let mut rem: Vec<i128> = poly.iter().map(|&c| c as i128).collect();
    for k in (d..rem.len()).rev() {
        let lead = rem[k];
        if lead == 0 {
            continue;
        }
        for (j, &c) in divisor.iter().enumerate() {
            let Some(next) = lead
                .checked_mul(c as i128)
                .and_then(|delta| rem[k - d + j].checked_sub(delta))
            else {
                return divisible_by_monic_big(poly, 0, divisor);
            };
            rem[k - d + j] = next;
        }
    }
    rem.iter().take(d).all(|&c| c == 0)
}

fn divisible_by_monic_big(poly: &[i64], n: i64, divisor: &[i64]) -> bool {
    let d = divisor.len() - 1;
    let mut rem: Vec<BigInt> = poly.iter().map(|&c| BigInt::from(c)).collect();
    rem[0] -= BigInt::from(n);
    for k in (d..rem.len()).rev() {
        if rem[k].is_zero() {
            continue;
        }
        let lead = rem[k].clone();
        for (j, &c) in divisor.iter().enumerate() {
            rem[k - d + j] -= &lead * c;
        }
    }
    rem.iter().take(d).all(Zero::is_zero)
}
