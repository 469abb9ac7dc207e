//! 2-D aperiodic correlation, Z-complementary array pair verification, the
//! Pareto frontier of zero-correlation rectangles, and surface export.

use std::io::{self, Write};

use num_rational::Ratio;
use rayon::prelude::*;

use crate::algebra::CycSum;
use crate::error::{out_of_range, Error, Result};
use crate::sequences::RootVector;
use crate::zq::Zq2DArray;

/// An `rows × cols` array of roots of unity; entry `e` is `ξ_M^e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootArray {
    modulus: u32,
    rows: usize,
    cols: usize,
    exponents: Vec<u32>,
}

impl RootArray {
    pub fn new(modulus: u32, rows: usize, cols: usize, exponents: Vec<u32>) -> Result<Self> {
        if modulus == 0 {
            return Err(out_of_range("modulus", 0, 1, u32::MAX as i64));
        }
        if rows == 0 || cols == 0 {
            return Err(out_of_range("array dimension", 0, 1, i64::MAX));
        }
        if exponents.len() != rows * cols {
            return Err(Error::LengthMismatch(exponents.len(), rows * cols));
        }
        if let Some(&value) = exponents.iter().find(|&&e| e >= modulus) {
            return Err(Error::EntryOutOfRange { value, modulus });
        }
        Ok(Self {
            modulus,
            rows,
            cols,
            exponents,
        })
    }

    pub fn from_rows(modulus: u32, rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::LengthMismatch(bad.len(), cols));
        }
        Self::new(modulus, rows.len(), cols, rows.concat())
    }

    /// Lifts a `Z_q` array to modulus `M` (`q | M`).
    pub fn lift(a: &Zq2DArray, modulus: u32) -> Result<Self> {
        if modulus == 0 || !modulus.is_multiple_of(a.q()) {
            return Err(Error::InvalidParameters(format!(
                "modulus {modulus} is not a multiple of {}",
                a.q()
            )));
        }
        let k = modulus / a.q();
        Self::new(
            modulus,
            a.rows(),
            a.cols(),
            a.values().iter().map(|&e| e * k).collect(),
        )
    }

    /// A `1 × L` array holding the sequence.
    pub fn from_vector(v: &RootVector) -> Result<Self> {
        Self::new(v.modulus(), 1, v.len(), v.exponents().to_vec())
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn get(&self, i: usize, g: usize) -> u32 {
        self.exponents[i * self.cols + g]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        self.exponents
            .chunks(self.cols)
            .map(<[u32]>::to_vec)
            .collect()
    }

    pub fn transpose(&self) -> RootArray {
        let mut exponents = Vec::with_capacity(self.exponents.len());
        for g in 0..self.cols {
            for i in 0..self.rows {
                exponents.push(self.get(i, g));
            }
        }
        RootArray {
            modulus: self.modulus,
            rows: self.cols,
            cols: self.rows,
            exponents,
        }
    }

    pub fn lift_to(&self, modulus: u32) -> Result<RootArray> {
        if modulus == 0 || !modulus.is_multiple_of(self.modulus) {
            return Err(Error::InvalidParameters(format!(
                "modulus {modulus} is not a multiple of {}",
                self.modulus
            )));
        }
        let k = modulus / self.modulus;
        Ok(RootArray {
            modulus,
            exponents: self.exponents.iter().map(|&e| e * k).collect(),
            ..self.clone()
        })
    }
}

fn check_compatible(a: &RootArray, b: &RootArray) -> Result<()> {
    if a.modulus != b.modulus {
        return Err(Error::ModulusMismatch(a.modulus, b.modulus));
    }
    if (a.rows, a.cols) != (b.rows, b.cols) {
        return Err(Error::DimensionMismatch(a.rows, a.cols, b.rows, b.cols));
    }
    Ok(())
}

fn accumulate_accf2d(sum: &mut CycSum, c: &RootArray, d: &RootArray, u1: i64, u2: i64) {
    let (rows, cols) = (c.rows as i64, c.cols as i64);
    if u1.abs() >= rows || u2.abs() >= cols {
        return;
    }
    let i_range = (-u1).max(0)..rows.min(rows - u1);
    let g_range = (-u2).max(0)..cols.min(cols - u2);
    for i in i_range {
        let c_row = &c.exponents[((i + u1) * cols) as usize..];
        let d_row = &d.exponents[(i * cols) as usize..];
        for g in g_range.clone() {
            let x = c_row[(g + u2) as usize] as i64;
            let y = d_row[g as usize] as i64;
            sum.accumulate(x - y, 1);
        }
    }
}

/// `ρ(C, D; u₁, u₂) = Σ C_{i+u₁, g+u₂} D*_{i,g}` over indices where both
/// entries exist.
pub fn accf2d(c: &RootArray, d: &RootArray, u1: i64, u2: i64) -> Result<CycSum> {
    check_compatible(c, d)?;
    let mut sum = CycSum::zero(c.modulus);
    accumulate_accf2d(&mut sum, c, d, u1, u2);
    Ok(sum)
}

/// `ρ(S; u₁, u₂) + ρ(T; u₁, u₂)`
pub fn pair_autocorrelation2d(s: &RootArray, t: &RootArray, u1: i64, u2: i64) -> Result<CycSum> {
    check_compatible(s, t)?;
    Ok(pair_sum(s, t, u1, u2))
}

fn pair_sum(s: &RootArray, t: &RootArray, u1: i64, u2: i64) -> CycSum {
    let mut sum = CycSum::zero(s.modulus);
    accumulate_accf2d(&mut sum, s, s, u1, u2);
    accumulate_accf2d(&mut sum, t, t, u1, u2);
    sum
}

/// Outcome of checking a claimed zero-correlation rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZcapCertificate {
    pub rows: usize,
    pub cols: usize,
    pub z1: usize,
    pub z2: usize,
    /// Autocorrelation sum at the origin.
    pub peak: i64,
    pub verified: bool,
}

impl ZcapCertificate {
    /// `Z₁Z₂ / (L₁L₂)`
    pub fn zcz_ratio(&self) -> Ratio<u64> {
        Ratio::new((self.z1 * self.z2) as u64, (self.rows * self.cols) as u64)
    }

    pub fn is_gcap(&self) -> bool {
        self.verified && self.z1 == self.rows && self.z2 == self.cols
    }
}

/// Shifts `(u₁, u₂) ≠ 0` in the half-plane `u₁ > 0` or `u₁ = 0, u₂ > 0`
/// with `|u₁| < z1`, `|u₂| < z2`. The other half follows by conjugate symmetry.
fn half_plane(z1: usize, z2: usize) -> Vec<(i64, i64)> {
    let (z1, z2) = (z1 as i64, z2 as i64);
    let mut shifts = Vec::new();
    for u2 in 1..z2 {
        shifts.push((0, u2));
    }
    for u1 in 1..z1 {
        for u2 in 1 - z2..z2 {
            shifts.push((u1, u2));
        }
    }
    shifts
}

/// Checks the ZCAP conditions on the rectangle `|u₁| < z1`, `|u₂| < z2`.
pub fn zcap_check(s: &RootArray, t: &RootArray, z1: usize, z2: usize) -> Result<ZcapCertificate> {
    check_compatible(s, t)?;
    if z1 == 0 || z1 > s.rows {
        return Err(out_of_range("Z1", z1, 1, s.rows as i64));
    }
    if z2 == 0 || z2 > s.cols {
        return Err(out_of_range("Z2", z2, 1, s.cols as i64));
    }
    let peak = 2 * (s.rows * s.cols) as i64;
    let origin_ok = pair_sum(s, t, 0, 0).is_integer(peak);
    let verified = origin_ok
        && half_plane(z1, z2)
            .par_iter()
            .all(|&(u1, u2)| pair_sum(s, t, u1, u2).is_zero());
    Ok(ZcapCertificate {
        rows: s.rows,
        cols: s.cols,
        z1,
        z2,
        peak,
        verified,
    })
}

/// All maximal zero-correlation rectangles of a pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZczFrontier {
    pub rows: usize,
    pub cols: usize,
    /// Pareto-maximal `(Z₁, Z₂)`, increasing in `Z₁` and decreasing in `Z₂`.
    pub rectangles: Vec<(usize, usize)>,
}

impl ZczFrontier {
    /// Largest `Z₁Z₂ / (L₁L₂)` over the frontier; zero if it is empty.
    pub fn best_ratio(&self) -> Ratio<u64> {
        let area = (self.rows * self.cols) as u64;
        self.rectangles
            .iter()
            .map(|&(z1, z2)| Ratio::new((z1 * z2) as u64, area))
            .max()
            .unwrap_or_else(|| Ratio::from_integer(0))
    }

    /// Whether `(z1, z2)` lies inside some frontier rectangle.
    pub fn admits(&self, z1: usize, z2: usize) -> bool {
        z1 >= 1 && z2 >= 1 && self.rectangles.iter().any(|&(a, b)| z1 <= a && z2 <= b)
    }

    pub fn is_gcap(&self) -> bool {
        self.rectangles == [(self.rows, self.cols)]
    }
}

/// Exhaustive scan of all shifts, reduced to the Pareto frontier.
pub fn max_zcz_rect(s: &RootArray, t: &RootArray) -> Result<ZczFrontier> {
    check_compatible(s, t)?;
    let (rows, cols) = (s.rows, s.cols);
    let mut frontier = ZczFrontier {
        rows,
        cols,
        rectangles: Vec::new(),
    };
    if !pair_sum(s, t, 0, 0).is_integer(2 * (rows * cols) as i64) {
        return Ok(frontier);
    }
    // min_bad[u1] = smallest |u2| with a nonzero sum at (±u1, ±u2)
    let min_bad: Vec<usize> = (0..rows as i64)
        .into_par_iter()
        .map(|u1| {
            let (lo, hi) = if u1 == 0 {
                (1, cols as i64)
            } else {
                (1 - cols as i64, cols as i64)
            };
            (lo..hi)
                .filter(|&u2| !pair_sum(s, t, u1, u2).is_zero())
                .map(|u2| u2.unsigned_abs() as usize)
                .min()
                .unwrap_or(cols)
        })
        .collect();
    let mut z2_max = cols;
    let mut best: Vec<(usize, usize)> = Vec::new();
    for z1 in 1..=rows {
        z2_max = z2_max.min(min_bad[z1 - 1]);
        if z2_max == 0 {
            break;
        }
        match best.last_mut() {
            Some(last) if last.1 == z2_max => last.0 = z1,
            _ => best.push((z1, z2_max)),
        }
    }
    frontier.rectangles = best;
    Ok(frontier)
}

/// Magnitudes `|ρ(S; u₁, u₂) + ρ(T; u₁, u₂)|` over every shift.
#[derive(Debug, Clone, PartialEq)]
pub struct Surface {
    rows: usize,
    cols: usize,
    magnitudes: Vec<f64>,
}

impl Surface {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Value at `(u₁, u₂)`, `|u₁| < L₁`, `|u₂| < L₂`.
    pub fn get(&self, u1: i64, u2: i64) -> f64 {
        let width = 2 * self.cols - 1;
        let r = (u1 + self.rows as i64 - 1) as usize;
        let c = (u2 + self.cols as i64 - 1) as usize;
        self.magnitudes[r * width + c]
    }

    /// `(u₁, u₂, magnitude)` in lexicographic shift order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, i64, f64)> + '_ {
        let (l1, l2) = (self.rows as i64, self.cols as i64);
        (1 - l1..l1).flat_map(move |u1| (1 - l2..l2).map(move |u2| (u1, u2, self.get(u1, u2))))
    }

    /// CSV with header `u1,u2,magnitude`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "u1,u2,magnitude")?;
        for (u1, u2, m) in self.iter() {
            writeln!(out, "{u1},{u2},{}", format_magnitude(m))?;
        }
        Ok(())
    }
}

fn format_magnitude(m: f64) -> String {
    // strips float noise such as 1.9999999999999998
    let rounded = (m * 1e12).round() / 1e12;
    format!("{rounded}")
}

pub fn surface(s: &RootArray, t: &RootArray) -> Result<Surface> {
    check_compatible(s, t)?;
    let (l1, l2) = (s.rows as i64, s.cols as i64);
    let shifts: Vec<(i64, i64)> = (1 - l1..l1)
        .flat_map(|u1| (1 - l2..l2).map(move |u2| (u1, u2)))
        .collect();
    let magnitudes = shifts
        .par_iter()
        .map(|&(u1, u2)| {
            let sum = pair_sum(s, t, u1, u2);
            if sum.is_zero() {
                0.0
            } else {
                sum.eval().norm()
            }
        })
        .collect();
    Ok(Surface {
        rows: s.rows,
        cols: s.cols,
        magnitudes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::{accf, max_zcz};
    use crate::testing::{oracle_accf2d, oracle_zcap};
    use proptest::prelude::*;

    fn ra(m: u32, rows: &[Vec<u32>]) -> RootArray {
        RootArray::from_rows(m, rows).unwrap()
    }

    #[test]
    fn origin_and_out_of_range() {
        let c = ra(4, &[vec![0, 1, 2], vec![3, 3, 1]]);
        let d = ra(4, &[vec![1, 1, 2], vec![0, 2, 1]]);
        assert!(accf2d(&c, &c, 0, 0).unwrap().is_integer(6));
        assert!(accf2d(&c, &d, 2, 0)
            .unwrap()
            .coeffs()
            .iter()
            .all(|&x| x == 0));
        assert!(accf2d(&c, &d, 0, -3)
            .unwrap()
            .coeffs()
            .iter()
            .all(|&x| x == 0));
        assert_eq!(
            accf2d(&c, &c, -1, 2).unwrap(),
            accf2d(&c, &c, 1, -2).unwrap().conj()
        );
        let e = ra(4, &[vec![0, 1], vec![3, 3], vec![0, 0]]);
        assert_eq!(
            accf2d(&c, &e, 0, 0),
            Err(Error::DimensionMismatch(2, 3, 3, 2))
        );
    }

    #[test]
    fn trivial_gcap() {
        let one = ra(2, &[vec![0]]);
        let cert = zcap_check(&one, &one, 1, 1).unwrap();
        assert!(cert.verified && cert.is_gcap());
        assert_eq!(cert.peak, 2);
        assert_eq!(cert.zcz_ratio(), Ratio::from_integer(1));
        let f = max_zcz_rect(&one, &one).unwrap();
        assert_eq!(f.rectangles, vec![(1, 1)]);
        assert!(f.is_gcap());
        let surf = surface(&one, &one).unwrap();
        let mut csv = Vec::new();
        surf.write_csv(&mut csv).unwrap();
        assert_eq!(String::from_utf8(csv).unwrap(), "u1,u2,magnitude\n0,0,2\n");
    }

    #[test]
    fn range_errors() {
        let one = ra(2, &[vec![0, 1]]);
        assert!(zcap_check(&one, &one, 0, 1).is_err());
        assert!(zcap_check(&one, &one, 1, 3).is_err());
        assert!(zcap_check(&one, &one, 2, 1).is_err());
    }

    #[test]
    fn frontier_matches_brute_force_on_small_pairs() {
        // 2x2 arrays over M=2: exhaustive over all 256 pairs
        for code in 0..256u32 {
            let bits: Vec<u32> = (0..8).map(|k| (code >> k) & 1).collect();
            let s = RootArray::new(2, 2, 2, bits[..4].to_vec()).unwrap();
            let t = RootArray::new(2, 2, 2, bits[4..].to_vec()).unwrap();
            let f = max_zcz_rect(&s, &t).unwrap();
            for z1 in 1..=2 {
                for z2 in 1..=2 {
                    let expected = oracle_zcap(&bits[..4], &bits[4..], 2, 2, 2, z1, z2);
                    assert_eq!(f.admits(z1, z2), expected, "code {code} ({z1},{z2})");
                    assert_eq!(zcap_check(&s, &t, z1, z2).unwrap().verified, expected);
                }
            }
            for w in f.rectangles.windows(2) {
                assert!(w[0].0 < w[1].0 && w[0].1 > w[1].1);
            }
        }
    }

    fn arb_array_pair() -> impl Strategy<Value = (RootArray, RootArray)> {
        (
            prop::sample::select(vec![2u32, 4, 6, 8, 16]),
            1usize..=6,
            1usize..=6,
        )
            .prop_flat_map(|(m, r, c)| {
                (
                    proptest::collection::vec(0..m, r * c),
                    proptest::collection::vec(0..m, r * c),
                )
                    .prop_map(move |(a, b)| {
                        (
                            RootArray::new(m, r, c, a).unwrap(),
                            RootArray::new(m, r, c, b).unwrap(),
                        )
                    })
            })
    }

    proptest! {
        #[test]
        fn single_row_reduces_to_1d(
            m in prop::sample::select(vec![2u32, 4, 8]),
            a in proptest::collection::vec(0u32..8, 1..20),
            u in -20i64..20,
        ) {
            let a: Vec<u32> = a.into_iter().map(|e| e % m).collect();
            let b: Vec<u32> = a.iter().rev().copied().collect();
            let (va, vb) = (RootVector::new(m, a).unwrap(), RootVector::new(m, b).unwrap());
            let (ca, cb) = (RootArray::from_vector(&va).unwrap(), RootArray::from_vector(&vb).unwrap());
            prop_assert_eq!(accf2d(&ca, &cb, 0, u).unwrap(), accf(&va, &vb, u).unwrap());
        }

        #[test]
        fn exact_matches_float((s, t) in arb_array_pair(), u1 in -6i64..6, u2 in -6i64..6) {
            let exact = accf2d(&s, &t, u1, u2).unwrap().eval();
            let float = oracle_accf2d(s.exponents(), t.exponents(), s.rows(), s.cols(), s.modulus(), u1, u2);
            prop_assert!((exact - float).norm() < 1e-9);
        }

        #[test]
        fn monotone_and_consistent((s, t) in arb_array_pair()) {
            let f = max_zcz_rect(&s, &t).unwrap();
            for z1 in 1..=s.rows() {
                for z2 in 1..=s.cols() {
                    let cert = zcap_check(&s, &t, z1, z2).unwrap();
                    prop_assert_eq!(cert.verified, f.admits(z1, z2));
                    if cert.verified {
                        for a in 1..=z1 {
                            for b in 1..=z2 {
                                prop_assert!(zcap_check(&s, &t, a, b).unwrap().verified);
                            }
                        }
                    }
                }
            }
        }

        #[test]
        fn column_vector_matches_1d((s, t) in arb_array_pair()) {
            let row = |a: &RootArray| RootVector::new(a.modulus(), a.exponents().to_vec()).unwrap();
            let (vs, vt) = (row(&s), row(&t));
            let cs = RootArray::from_vector(&vs).unwrap().transpose();
            let ct = RootArray::from_vector(&vt).unwrap().transpose();
            let width = max_zcz(&vs, &vt).unwrap().width;
            let f = max_zcz_rect(&cs, &ct).unwrap();
            prop_assert_eq!(f.rectangles, vec![(width, 1)]);
        }
    }
}
