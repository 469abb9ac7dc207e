//! Floating-point brute-force correlation, independent of the exact engine.

use num_complex::Complex64;
use std::f64::consts::PI;

fn root(e: u32, modulus: u32) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * e as f64 / modulus as f64)
}

/// Σ A_{i+u} B_i^* over all indices where both are defined.
pub fn oracle_accf(a: &[u32], b: &[u32], modulus: u32, u: i64) -> Complex64 {
    let len = a.len() as i64;
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..len {
        let j = i + u;
        if (0..len).contains(&j) {
            acc += root(a[j as usize], modulus) * root(b[i as usize], modulus).conj();
        }
    }
    acc
}

pub fn oracle_max_zcz(a: &[u32], b: &[u32], modulus: u32) -> usize {
    let len = a.len();
    (1..len)
        .find(|&u| {
            let s = oracle_accf(a, a, modulus, u as i64) + oracle_accf(b, b, modulus, u as i64);
            s.norm() > 1e-9
        })
        .unwrap_or(len)
}

/// 2-D version over row-major `rows × cols` exponent arrays.
#[allow(clippy::too_many_arguments)]
pub fn oracle_accf2d(
    c: &[u32],
    d: &[u32],
    rows: usize,
    cols: usize,
    modulus: u32,
    u1: i64,
    u2: i64,
) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..rows as i64 {
        for g in 0..cols as i64 {
            let (i2, g2) = (i + u1, g + u2);
            if (0..rows as i64).contains(&i2) && (0..cols as i64).contains(&g2) {
                let x = c[i2 as usize * cols + g2 as usize];
                let y = d[i as usize * cols + g as usize];
                acc += root(x, modulus) * root(y, modulus).conj();
            }
        }
    }
    acc
}

/// Whether the pair autocorrelation vanishes on the rectangle minus the origin.
pub fn oracle_zcap(
    s: &[u32],
    t: &[u32],
    rows: usize,
    cols: usize,
    modulus: u32,
    z1: usize,
    z2: usize,
) -> bool {
    let (z1, z2) = (z1 as i64, z2 as i64);
    for u1 in 1 - z1..z1 {
        for u2 in 1 - z2..z2 {
            if (u1, u2) == (0, 0) {
                continue;
            }
            let v = oracle_accf2d(s, s, rows, cols, modulus, u1, u2)
                + oracle_accf2d(t, t, rows, cols, modulus, u1, u2);
            if v.norm() > 1e-9 {
                return false;
            }
        }
    }
    true
}
