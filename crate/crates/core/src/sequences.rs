//! 1-D aperiodic correlation, Z-complementary pair verification, complementary
//! mates, and the length-14L concatenation of a Golay pair.

use crate::algebra::CycSum;
use crate::error::{Error, Result};
use crate::zq::ZqVector;

/// A unimodular sequence: entry `e` is `ξ_M^e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootVector {
    modulus: u32,
    exponents: Vec<u32>,
}

impl RootVector {
    pub fn new(modulus: u32, exponents: Vec<u32>) -> Result<Self> {
        if modulus == 0 {
            return Err(crate::error::out_of_range("modulus", 0, 1, u32::MAX as i64));
        }
        if let Some(&value) = exponents.iter().find(|&&e| e >= modulus) {
            return Err(Error::EntryOutOfRange { value, modulus });
        }
        Ok(Self { modulus, exponents })
    }

    /// A `±1` sequence over modulus 2.
    pub fn from_signs(signs: &[i8]) -> Result<Self> {
        let exponents = signs
            .iter()
            .map(|&s| match s {
                1 => Ok(0),
                -1 => Ok(1),
                other => Err(Error::InvalidParameters(format!("{other} is not ±1"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(2, exponents)
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    /// Re-expresses the same roots over a multiple `modulus` of the current one.
    pub fn lift_to(&self, modulus: u32) -> Result<RootVector> {
        if modulus == 0 || !modulus.is_multiple_of(self.modulus) {
            return Err(Error::InvalidParameters(format!(
                "modulus {modulus} is not a multiple of {}",
                self.modulus
            )));
        }
        let k = modulus / self.modulus;
        Ok(RootVector {
            modulus,
            exponents: self.exponents.iter().map(|&e| e * k).collect(),
        })
    }

    /// Entries of a `±1` sequence, if every root is `1` or `-1`.
    pub fn as_binary(&self) -> Option<Vec<u8>> {
        self.exponents
            .iter()
            .map(|&e| match e {
                0 => Some(0),
                e if 2 * e == self.modulus => Some(1),
                _ => None,
            })
            .collect()
    }

    fn with_even_modulus(&self) -> RootVector {
        if self.modulus.is_multiple_of(2) {
            self.clone()
        } else {
            self.lift_to(2 * self.modulus)
                .expect("doubling is a multiple")
        }
    }

    pub fn transform(&self, kind: Transform) -> RootVector {
        let m = self.modulus;
        match kind {
            Transform::Reverse => RootVector {
                modulus: m,
                exponents: self.exponents.iter().rev().copied().collect(),
            },
            Transform::Conjugate => RootVector {
                modulus: m,
                exponents: self.exponents.iter().map(|&e| (m - e) % m).collect(),
            },
            Transform::Negate => {
                let v = self.with_even_modulus();
                let half = v.modulus / 2;
                RootVector {
                    modulus: v.modulus,
                    exponents: v
                        .exponents
                        .iter()
                        .map(|&e| (e + half) % v.modulus)
                        .collect(),
                }
            }
            Transform::ReverseConjugate => self
                .transform(Transform::Reverse)
                .transform(Transform::Conjugate),
        }
    }

    /// Concatenation `self ‖ other`.
    pub fn concat(&self, other: &RootVector) -> Result<RootVector> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus, other.modulus));
        }
        let mut exponents = self.exponents.clone();
        exponents.extend_from_slice(&other.exponents);
        Ok(RootVector {
            modulus: self.modulus,
            exponents,
        })
    }
}

/// `ZqVector` → `RootVector` over modulus `M`, mapping `e ↦ e·M/q`.
pub fn lift(v: &ZqVector, modulus: u32) -> Result<RootVector> {
    RootVector::new(v.q(), v.values().to_vec())?.lift_to(modulus)
}

impl From<&ZqVector> for RootVector {
    fn from(v: &ZqVector) -> Self {
        RootVector {
            modulus: v.q(),
            exponents: v.values().to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transform {
    Reverse,
    Conjugate,
    Negate,
    ReverseConjugate,
}

fn check_compatible(a: &RootVector, b: &RootVector) -> Result<()> {
    if a.modulus != b.modulus {
        return Err(Error::ModulusMismatch(a.modulus, b.modulus));
    }
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    Ok(())
}

fn accumulate_accf(sum: &mut CycSum, a: &RootVector, b: &RootVector, u: i64) {
    let len = a.len() as i64;
    if u.abs() >= len {
        return;
    }
    let (a_start, b_start) = if u >= 0 {
        (u as usize, 0)
    } else {
        (0, (-u) as usize)
    };
    let count = (len - u.abs()) as usize;
    let a_part = &a.exponents[a_start..a_start + count];
    let b_part = &b.exponents[b_start..b_start + count];
    for (&x, &y) in a_part.iter().zip(b_part) {
        sum.accumulate(x as i64 - y as i64, 1);
    }
}

/// Aperiodic cross-correlation `ρ(A, B; u) = Σ A_{i+u} B_i^*`.
pub fn accf(a: &RootVector, b: &RootVector, u: i64) -> Result<CycSum> {
    check_compatible(a, b)?;
    let mut sum = CycSum::zero(a.modulus);
    accumulate_accf(&mut sum, a, b, u);
    Ok(sum)
}

/// Aperiodic autocorrelation `ρ(A; u)`.
pub fn aacf(a: &RootVector, u: i64) -> CycSum {
    let mut sum = CycSum::zero(a.modulus);
    accumulate_accf(&mut sum, a, a, u);
    sum
}

/// `ρ(A; u) + ρ(B; u)`
pub fn pair_autocorrelation(a: &RootVector, b: &RootVector, u: i64) -> Result<CycSum> {
    check_compatible(a, b)?;
    let mut sum = CycSum::zero(a.modulus);
    accumulate_accf(&mut sum, a, a, u);
    accumulate_accf(&mut sum, b, b, u);
    Ok(sum)
}

/// Measured zero-correlation-zone width of a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZcpCertificate {
    pub length: usize,
    /// Largest `Z` with `ρ(A;u) + ρ(B;u) = 0` for all `0 < |u| < Z`.
    pub width: usize,
    /// `ρ(A;0) + ρ(B;0)`, always `2L` for unimodular entries.
    pub peak: i64,
}

impl ZcpCertificate {
    pub fn is_gcp(&self) -> bool {
        self.width == self.length
    }

    /// Whether the pair is an `(L, z)`-ZCP.
    pub fn supports(&self, z: usize) -> bool {
        z >= 1 && z <= self.width && self.peak == 2 * self.length as i64
    }
}

/// Scans `u = 1, 2, …` and stops at the first nonzero correlation sum.
pub fn max_zcz(a: &RootVector, b: &RootVector) -> Result<ZcpCertificate> {
    check_compatible(a, b)?;
    if a.is_empty() {
        return Err(crate::error::out_of_range(
            "sequence length",
            0,
            1,
            i64::MAX,
        ));
    }
    let len = a.len();
    // at u = 0 every term is ξ^0
    let peak = 2 * len as i64;
    let width = (1..len)
        .find(|&u| {
            !pair_autocorrelation(a, b, u as i64)
                .map(|s| s.is_zero())
                .unwrap_or(false)
        })
        .unwrap_or(len);
    Ok(ZcpCertificate {
        length: len,
        width,
        peak,
    })
}

/// The canonical mate `(D̄*, -C̄*)` of a pair `(C, D)`.
pub fn mate_of(c: &RootVector, d: &RootVector) -> Result<(RootVector, RootVector)> {
    check_compatible(c, d)?;
    let c = c.with_even_modulus();
    let d = d.with_even_modulus();
    Ok((
        d.transform(Transform::ReverseConjugate),
        c.transform(Transform::ReverseConjugate)
            .transform(Transform::Negate),
    ))
}

/// Whether `ρ(A, A₁; u) + ρ(B, B₁; u) = 0` for every `|u| < z`.
pub fn mate_check(
    pair1: (&RootVector, &RootVector),
    pair2: (&RootVector, &RootVector),
    z: usize,
) -> Result<bool> {
    let (a, b) = pair1;
    let (a1, b1) = pair2;
    check_compatible(a, b)?;
    check_compatible(a, a1)?;
    check_compatible(a, b1)?;
    let z = z as i64;
    Ok((-z + 1..z).all(|u| {
        let mut sum = CycSum::zero(a.modulus);
        accumulate_accf(&mut sum, a, a1, u);
        accumulate_accf(&mut sum, b, b1, u);
        sum.is_zero()
    }))
}

/// One block of the 14-block concatenation: `±A` or `±C` (resp. `±B`, `±D`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Block {
    pub negated: bool,
    pub mate: bool,
}

const fn blk(negated: bool, mate: bool) -> Block {
    Block { negated, mate }
}

/// `A C A A -A A -C A -C -C C C -A -C`. Blocks 0,2,3,5,7 agree, as do 1,10,11;
/// 4,12; and 6,8,9,13.
pub const LEMMA4_PATTERN: [Block; 14] = [
    blk(false, false),
    blk(false, true),
    blk(false, false),
    blk(false, false),
    blk(true, false),
    blk(false, false),
    blk(true, true),
    blk(false, false),
    blk(true, true),
    blk(true, true),
    blk(false, true),
    blk(false, true),
    blk(true, false),
    blk(true, true),
];

/// Concatenates blocks of a Golay pair `(A, B)` and its mate
/// `(C, D) = (B̄*, -Ā*)` following `pattern`.
pub fn concat_blocks(
    a: &RootVector,
    b: &RootVector,
    pattern: &[Block],
) -> Result<(RootVector, RootVector)> {
    check_compatible(a, b)?;
    let (c, d) = mate_of(a, b)?;
    let (a, b) = (a.with_even_modulus(), b.with_even_modulus());
    let pick = |base: &RootVector, mate: &RootVector, blk: Block| {
        let v = if blk.mate { mate } else { base };
        if blk.negated {
            v.transform(Transform::Negate)
        } else {
            v.clone()
        }
    };
    let mut s = RootVector {
        modulus: a.modulus,
        exponents: Vec::with_capacity(a.len() * pattern.len()),
    };
    let mut t = s.clone();
    for &blk in pattern {
        s = s.concat(&pick(&a, &c, blk))?;
        t = t.concat(&pick(&b, &d, blk))?;
    }
    Ok((s, t))
}

/// Extends a Golay pair of length `L` to a `(14L, 12L)`-ZCP.
pub fn lemma4_extend(a: &RootVector, b: &RootVector) -> Result<(RootVector, RootVector)> {
    let cert = max_zcz(a, b)?;
    if !cert.is_gcp() {
        return Err(Error::InvalidParameters(format!(
            "input is not a Golay pair: zero zone width {} < length {}",
            cert.width, cert.length
        )));
    }
    concat_blocks(a, b, &LEMMA4_PATTERN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gbf::{gdj_pair, Companion};
    use crate::testing::{oracle_accf, oracle_max_zcz};
    use crate::zq::Permutation;
    use proptest::prelude::*;

    fn rv(m: u32, e: &[u32]) -> RootVector {
        RootVector::new(m, e.to_vec()).unwrap()
    }

    fn quaternary_gcp() -> (RootVector, RootVector) {
        (rv(4, &[0, 0, 1, 3]), rv(4, &[0, 0, 3, 1]))
    }

    fn binary_zcp_12() -> (RootVector, RootVector) {
        (
            RootVector::from_signs(&[-1, 1, -1, -1, 1, -1, 1, 1, 1, -1, 1, 1]).unwrap(),
            RootVector::from_signs(&[-1, 1, 1, 1, 1, -1, -1, -1, 1, -1, -1, -1]).unwrap(),
        )
    }

    #[test]
    fn lifting() {
        let v = ZqVector::new(2, vec![0, 1]).unwrap();
        assert_eq!(lift(&v, 4).unwrap().exponents(), &[0, 2]);
        let v = ZqVector::new(4, vec![0, 0, 1, 3]).unwrap();
        assert_eq!(lift(&v, 4).unwrap().exponents(), &[0, 0, 1, 3]);
        let v = ZqVector::new(2, vec![1]).unwrap();
        assert_eq!(lift(&v, 8).unwrap().exponents(), &[4]);
        assert!(lift(&ZqVector::new(4, vec![1]).unwrap(), 6).is_err());
    }

    #[test]
    fn correlation_basics() {
        let (c, d) = quaternary_gcp();
        assert!(aacf(&c, 0).is_integer(4));
        assert!(accf(&c, &d, 4).unwrap().is_zero());
        assert!(accf(&c, &d, -7).unwrap().coeffs().iter().all(|&x| x == 0));
        for u in 1..4 {
            assert!(pair_autocorrelation(&c, &d, u).unwrap().is_zero());
        }
        assert_eq!(
            accf(&c, &rv(8, &[0; 4]), 1),
            Err(Error::ModulusMismatch(4, 8))
        );
        assert_eq!(
            accf(&c, &rv(4, &[0; 3]), 1),
            Err(Error::LengthMismatch(4, 3))
        );
    }

    #[test]
    fn transforms() {
        assert_eq!(
            rv(4, &[0, 1, 2]).transform(Transform::Reverse).exponents(),
            &[2, 1, 0]
        );
        assert_eq!(
            rv(4, &[0, 1, 3])
                .transform(Transform::Conjugate)
                .exponents(),
            &[0, 3, 1]
        );
        assert_eq!(
            rv(4, &[0, 1]).transform(Transform::Negate).exponents(),
            &[2, 3]
        );
        let odd = rv(3, &[0, 1]).transform(Transform::Negate);
        assert_eq!((odd.modulus(), odd.exponents()), (6, &[3, 5][..]));
    }

    #[test]
    fn zcz_widths() {
        let (a, b) = binary_zcp_12();
        let cert = max_zcz(&a, &b).unwrap();
        assert_eq!(cert.width, 8);
        assert!(cert.supports(8) && !cert.supports(9));
        let (c, d) = quaternary_gcp();
        let cert = max_zcz(&c, &d).unwrap();
        assert_eq!((cert.width, cert.peak), (4, 8));
        assert!(cert.is_gcp());
        let one = max_zcz(&rv(2, &[1]), &rv(2, &[0])).unwrap();
        assert_eq!(one.width, 1);
    }

    #[test]
    fn mates() {
        let (c1, d1) = mate_of(&rv(2, &[0]), &rv(2, &[0])).unwrap();
        assert_eq!((c1.exponents(), d1.exponents()), (&[0][..], &[1][..]));
        assert!(mate_check((&rv(2, &[0]), &rv(2, &[0])), (&c1, &d1), 1).unwrap());

        let (c, d) = quaternary_gcp();
        let (c1, d1) = mate_of(&c, &d).unwrap();
        // reverse-conjugate of (0,0,3,1) is (3,1,0,0); of (0,0,1,3) negated is (3,1,2,2)
        assert_eq!(c1.exponents(), &[3, 1, 0, 0]);
        assert_eq!(d1.exponents(), &[3, 1, 2, 2]);
        assert_eq!(max_zcz(&c1, &d1).unwrap().width, 4);
        assert!(mate_check((&c, &d), (&c1, &d1), 4).unwrap());

        // a pair is never its own mate: the zero-shift sum is 2L
        assert!(!mate_check((&c, &d), (&c, &d), 1).unwrap());
    }

    #[test]
    fn reversed_pair_identity() {
        let (a, b) = gdj_pair(2, 2, &Permutation::identity(2), &[0; 3], Companion::First).unwrap();
        let (c, d) = (RootVector::from(&a), RootVector::from(&b));
        let rd = d.transform(Transform::ReverseConjugate);
        let rc = c.transform(Transform::ReverseConjugate);
        for u in 1..4 {
            assert!(pair_autocorrelation(&rd, &rc, u).unwrap().is_zero());
        }
        assert_eq!(oracle_max_zcz(rd.exponents(), rc.exponents(), 2), 4);
    }

    #[test]
    fn lemma4_small_binary() {
        let (s, t) = lemma4_extend(&rv(2, &[0, 0]), &rv(2, &[0, 1])).unwrap();
        assert_eq!(s.len(), 28);
        let cert = max_zcz(&s, &t).unwrap();
        assert!(cert.width >= 24, "width {}", cert.width);
        assert_eq!(cert.peak, 56);
        assert_eq!(
            oracle_max_zcz(s.exponents(), t.exponents(), s.modulus()),
            cert.width
        );
    }

    #[test]
    fn lemma4_rejects_non_gcp() {
        let (a, b) = binary_zcp_12();
        assert!(matches!(
            lemma4_extend(&a, &b),
            Err(Error::InvalidParameters(_))
        ));
    }

    /// Re-derives the frozen block pattern: enumerate sign/mate choices for
    /// the four equality classes, keep those that verify on several Golay
    /// pairs, then take the one opening with `A ‖ C`.
    #[test]
    fn lemma4_pattern_resolution() {
        let classes: [&[usize]; 4] = [&[0, 2, 3, 5, 7], &[1, 10, 11], &[4, 12], &[6, 8, 9, 13]];
        let pairs: Vec<(RootVector, RootVector)> =
            vec![(rv(2, &[0, 0]), rv(2, &[0, 1])), quaternary_gcp(), {
                let (a, b) =
                    gdj_pair(2, 3, &Permutation::identity(3), &[0; 4], Companion::First).unwrap();
                (RootVector::from(&a), RootVector::from(&b))
            }];
        let choices = [
            blk(false, false),
            blk(true, false),
            blk(false, true),
            blk(true, true),
        ];
        let mut verifying = Vec::new();
        for code in 0..256usize {
            let mut pattern = [blk(false, false); 14];
            for (k, class) in classes.iter().enumerate() {
                for &pos in *class {
                    pattern[pos] = choices[(code >> (2 * k)) & 3];
                }
            }
            let ok = pairs.iter().all(|(a, b)| {
                let (s, t) = concat_blocks(a, b, &pattern).unwrap();
                max_zcz(&s, &t).unwrap().width >= 12 * a.len()
            });
            if ok {
                verifying.push(pattern);
            }
        }
        assert_eq!(verifying.len(), 8);
        let leading: Vec<_> = verifying
            .iter()
            .filter(|p| p[0] == blk(false, false) && p[1] == blk(false, true))
            .collect();
        assert_eq!(leading.len(), 1);
        assert_eq!(*leading[0], LEMMA4_PATTERN);
    }

    fn arb_pair() -> impl Strategy<Value = (RootVector, RootVector)> {
        (prop::sample::select(vec![2u32, 4, 6, 8, 16]), 1usize..=24).prop_flat_map(|(m, len)| {
            (
                proptest::collection::vec(0..m, len),
                proptest::collection::vec(0..m, len),
            )
                .prop_map(move |(a, b)| {
                    (
                        RootVector::new(m, a).unwrap(),
                        RootVector::new(m, b).unwrap(),
                    )
                })
        })
    }

    proptest! {
        #[test]
        fn conjugate_symmetry((a, b) in arb_pair(), u in -30i64..30) {
            prop_assert_eq!(accf(&a, &b, u).unwrap(), accf(&b, &a, -u).unwrap().conj());
        }

        #[test]
        fn zero_shift_peak((a, _b) in arb_pair()) {
            prop_assert!(aacf(&a, 0).is_integer(a.len() as i64));
        }

        #[test]
        fn involutions((a, _b) in arb_pair()) {
            for t in [Transform::Reverse, Transform::Conjugate, Transform::Negate] {
                prop_assert_eq!(a.transform(t).transform(t), a.clone());
            }
        }

        #[test]
        fn exact_matches_float((a, b) in arb_pair(), u in -25i64..25) {
            let exact = accf(&a, &b, u).unwrap().eval();
            let float = oracle_accf(a.exponents(), b.exponents(), a.modulus(), u);
            prop_assert!((exact - float).norm() < 1e-9);
        }
    }
}
