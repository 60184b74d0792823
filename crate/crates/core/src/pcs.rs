//! Pitch-class distributions over `Z_c` and their discrete Fourier transform.
//!
//! A distribution assigns a complex "quantity" to every pitch class. Ordinary
//! pc-sets are 0/1 indicators, chords with doubled notes are multisets, and
//! anything else (fractional or negative weights, complex values) is a
//! generalized distribution. All three flow through the same type; the
//! indicator and multiset properties are checked, not encoded.

use std::collections::BTreeSet;
use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::angle;
use crate::error::{Error, Result};

pub const DEFAULT_MODULUS: usize = 12;

/// Coefficients with magnitude below this have an undefined phase.
pub const ZERO_TOLERANCE: f64 = 1e-9;

/// `e^{-2iπ m / c}` for `m` in `0..c`.
fn twiddles(modulus: usize) -> Vec<Complex64> {
    (0..modulus)
        .map(|m| Complex64::from_polar(1.0, -TAU * m as f64 / modulus as f64))
        .collect()
}

fn reduce(pc: i64, modulus: usize) -> usize {
    pc.rem_euclid(modulus as i64) as usize
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PcDistribution {
    values: Vec<Complex64>,
}

impl PcDistribution {
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::ZeroModulus);
        }
        Ok(Self { values })
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn zeros(modulus: usize) -> Result<Self> {
        Self::new(vec![Complex64::new(0.0, 0.0); modulus])
    }

    /// Characteristic map of a pc-set. Residues are reduced mod `modulus` and
    /// duplicates collapse.
    pub fn indicator<I>(pcs: I, modulus: usize) -> Result<Self>
    where
        I: IntoIterator<Item = i64>,
    {
        let mut d = Self::zeros(modulus)?;
        for pc in pcs {
            d.values[reduce(pc, modulus)] = Complex64::new(1.0, 0.0);
        }
        Ok(d)
    }

    /// Weighted pc-multiset; weights of repeated residues accumulate.
    pub fn weighted<I>(weights: I, modulus: usize) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, f64)>,
    {
        let mut d = Self::zeros(modulus)?;
        for (pc, w) in weights {
            d.values[reduce(pc, modulus)] += w;
        }
        Ok(d)
    }

    pub fn modulus(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn real_parts(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.re).collect()
    }

    pub fn sum(&self) -> Complex64 {
        self.values.iter().sum()
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.values.iter().all(|v| v.im.abs() < tol)
    }

    pub fn is_indicator(&self, tol: f64) -> bool {
        self.is_real(tol)
            && self
                .values
                .iter()
                .all(|v| v.re.abs() < tol || (v.re - 1.0).abs() < tol)
    }

    pub fn is_multiset(&self, tol: f64) -> bool {
        self.is_real(tol)
            && self
                .values
                .iter()
                .all(|v| v.re > -tol && (v.re - v.re.round()).abs() < tol)
    }

    /// Largest componentwise distance to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Cyclic shift: the value at `k` moves to `k + t`.
    pub fn transpose(&self, t: i64) -> Self {
        let c = self.modulus();
        let mut values = vec![Complex64::new(0.0, 0.0); c];
        for (k, v) in self.values.iter().enumerate() {
            values[reduce(k as i64 + t, c)] = *v;
        }
        Self { values }
    }

    /// Inversion `k ↦ axis - k`.
    pub fn invert(&self, axis: i64) -> Self {
        let c = self.modulus();
        let mut values = vec![Complex64::new(0.0, 0.0); c];
        for (k, v) in self.values.iter().enumerate() {
            values[reduce(axis - k as i64, c)] = *v;
        }
        Self { values }
    }

    /// Direct `O(c²)` evaluation of `a_t = Σ_k f(k) e^{-2iπkt/c}`.
    pub fn dft(&self) -> Spectrum {
        let c = self.modulus();
        let w = twiddles(c);
        let coeffs = (0..c)
            .map(|t| {
                self.values
                    .iter()
                    .enumerate()
                    .map(|(k, v)| v * w[(k * t) % c])
                    .sum()
            })
            .collect();
        Spectrum { coeffs }
    }

    /// The pc-set this distribution rounds to, if every value is within `tol`
    /// of 0 or 1 and every imaginary part is below `tol`. `None` means the
    /// distribution is not near any pc-set.
    pub fn nearest_pcset(&self, tol: f64) -> Option<BTreeSet<usize>> {
        let mut set = BTreeSet::new();
        for (k, v) in self.values.iter().enumerate() {
            if v.im.abs() >= tol {
                return None;
            }
            if (v.re - 1.0).abs() <= tol {
                set.insert(k);
            } else if v.re.abs() > tol {
                return None;
            }
        }
        Some(set)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    coeffs: Vec<Complex64>,
}

impl Spectrum {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::ZeroModulus);
        }
        Ok(Self { coeffs })
    }

    pub fn modulus(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient `a_t`, with `t` read modulo the modulus.
    pub fn coeff(&self, t: usize) -> Complex64 {
        self.coeffs[t % self.modulus()]
    }

    pub fn magnitude(&self, t: usize) -> f64 {
        self.coeff(t).norm()
    }

    /// Phase of `a_t` in `(-π, π]`, or `None` when the coefficient vanishes.
    pub fn phase(&self, t: usize) -> Option<f64> {
        let a = self.coeff(t);
        (a.norm() >= ZERO_TOLERANCE).then(|| angle::normalize(a.arg()))
    }

    pub fn magnitudes(&self) -> Vec<f64> {
        self.coeffs.iter().map(|a| a.norm()).collect()
    }

    pub fn phases(&self) -> Vec<Option<f64>> {
        (0..self.modulus()).map(|t| self.phase(t)).collect()
    }

    /// `a_{c-t} = conj(a_t)` for all `t`, i.e. the spectrum of a real map.
    pub fn is_conjugate_symmetric(&self, tol: f64) -> bool {
        let c = self.modulus();
        (0..c).all(|t| (self.coeffs[(c - t) % c] - self.coeffs[t].conj()).norm() <= tol)
    }

    pub fn map_coeffs(&self, mut f: impl FnMut(usize, Complex64) -> Complex64) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(t, &a)| f(t, a))
                .collect(),
        }
    }

    /// Standard inverse `f(k) = (1/c) Σ_t a_t e^{+2iπkt/c}`.
    pub fn idft(&self) -> PcDistribution {
        let c = self.modulus();
        let w = twiddles(c);
        let scale = 1.0 / c as f64;
        let values = (0..c)
            .map(|k| {
                let s: Complex64 = self
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(t, a)| a * w[(k * t) % c].conj())
                    .sum();
                s * scale
            })
            .collect();
        PcDistribution { values }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Counts of unordered pairs per interval class; entry 0 holds the cardinality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntervalVector {
    pub counts: Vec<u32>,
}

impl IntervalVector {
    pub fn cardinality(&self) -> u32 {
        self.counts[0]
    }

    /// Interval classes `1..=⌊c/2⌋`.
    pub fn classes(&self) -> &[u32] {
        &self.counts[1..]
    }
}

pub fn interval_content(pcs: &BTreeSet<usize>, modulus: usize) -> Result<IntervalVector> {
    if modulus == 0 {
        return Err(Error::ZeroModulus);
    }
    let pcs: Vec<usize> = pcs
        .iter()
        .map(|&p| p % modulus)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut counts = vec![0u32; modulus / 2 + 1];
    counts[0] = pcs.len() as u32;
    for (i, &x) in pcs.iter().enumerate() {
        for &y in &pcs[i + 1..] {
            let up = (y + modulus - x) % modulus;
            counts[up.min(modulus - up)] += 1;
        }
    }
    Ok(IntervalVector { counts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn ind(pcs: &[i64]) -> PcDistribution {
        PcDistribution::indicator(pcs.iter().copied(), 12).unwrap()
    }

    fn set(pcs: &[usize]) -> BTreeSet<usize> {
        pcs.iter().copied().collect()
    }

    #[test]
    fn indicator_values() {
        let d = ind(&[0, 3, 7]);
        assert_eq!(d.real_parts(), vec![1., 0., 0., 1., 0., 0., 0., 1., 0., 0., 0., 0.]);
        assert!(ind(&[]).real_parts().iter().all(|&v| v == 0.0));
        assert!(ind(&(0..12).collect::<Vec<_>>()).real_parts().iter().all(|&v| v == 1.0));
        assert_eq!(ind(&[0, 12, -12, 15]), ind(&[0, 3]));
        assert!(PcDistribution::indicator([0], 0).is_err());
    }

    #[test]
    fn diminished_seventh_spectrum() {
        // independent evaluation of the four-term exponential sum
        let s = ind(&[0, 3, 6, 9]).dft();
        for t in 0..12 {
            let (mut re, mut im) = (0.0, 0.0);
            for k in [0.0, 3.0, 6.0, 9.0] {
                let x = -2.0 * PI * k * t as f64 / 12.0;
                re += x.cos();
                im += x.sin();
            }
            let expected = if t % 4 == 0 { 4.0 } else { 0.0 };
            assert!((re - expected).abs() < 1e-12 && im.abs() < 1e-12);
            assert!((s.coeff(t) - Complex64::new(re, im)).norm() < 1e-12, "t = {t}");
        }
    }

    #[test]
    fn minor_triad_coefficients() {
        let s = ind(&[0, 3, 7]).dft();
        assert!((s.coeff(3) - Complex64::new(1.0, 2.0)).norm() < 1e-12);
        assert!((s.magnitude(4) - 3f64.sqrt()).abs() < 1e-12);
        let expected = [3.0, 0.5176, 1.0, 2.236, 1.732, 1.932, 1.0];
        for (t, e) in expected.iter().enumerate() {
            assert!((s.magnitude(t) - e).abs() < 1e-3, "t = {t}");
            assert!((s.magnitude(12 - t) - e).abs() < 1e-3);
        }
    }

    #[test]
    fn augmented_fifth_phase_undefined() {
        let s = ind(&[0, 4, 8]).dft();
        assert_eq!(s.phase(5), None);
        assert!(s.phase(3).is_some());
    }

    #[test]
    fn diatonic_seventh_magnitude() {
        let expected = 2.0 + 3f64.sqrt();
        for t in 0..12 {
            let s = ind(&[0, 2, 4, 5, 7, 9, 11]).transpose(t).dft();
            assert!((s.magnitude(7) - expected).abs() < 1e-12);
            assert!((s.magnitude(5) - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn dc_only_spectrum_inverts_to_ones() {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); 12];
        coeffs[0] = Complex64::new(12.0, 0.0);
        let d = Spectrum::new(coeffs).unwrap().idft();
        for v in d.values() {
            assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn transposition_and_inversion() {
        assert_eq!(ind(&[0, 3, 7]).transpose(4), ind(&[4, 7, 11]));
        assert_eq!(ind(&[0, 3, 7]).transpose(12), ind(&[0, 3, 7]));
        assert_eq!(ind(&[0, 3, 7]).transpose(-1), ind(&[11, 2, 6]));
        assert_eq!(ind(&[0, 3, 7]).invert(0), ind(&[0, 5, 9]));
        let d = ind(&[1, 2, 6, 11]);
        assert_eq!(d.invert(5).invert(5), d);
    }

    #[test]
    fn inversion_conjugates_spectrum() {
        let d = ind(&[0, 1, 4, 6]);
        let (a, b) = (d.dft(), d.invert(0).dft());
        for t in 0..12 {
            assert!((b.coeff(t) - a.coeff(t).conj()).norm() < 1e-12);
        }
    }

    #[test]
    fn diatonic_fifth_phase_steps() {
        let d = ind(&[0, 2, 4, 5, 7, 9, 11]);
        let before = d.dft().phase(5).unwrap();
        let after = d.transpose(1).dft().phase(5).unwrap();
        assert!((angle::wrapped_difference(after, before) + 5.0 * PI / 6.0).abs() < 1e-12);
    }

    #[test]
    fn interval_vectors() {
        assert_eq!(interval_content(&set(&[0, 1, 4, 6]), 12).unwrap().classes(), &[1; 6]);
        assert_eq!(interval_content(&set(&[0, 1, 3, 7]), 12).unwrap().classes(), &[1; 6]);
        assert_eq!(interval_content(&set(&[0]), 12).unwrap().classes(), &[0; 6]);
        assert_eq!(
            interval_content(&set(&[0, 4, 7]), 12).unwrap().counts,
            vec![3, 0, 0, 1, 1, 1, 0]
        );
        // odd modulus has no self-complementary class
        assert_eq!(interval_content(&set(&[0, 1, 3]), 7).unwrap().counts, vec![3, 1, 1, 1]);
    }

    #[test]
    fn nearest_pcset_cases() {
        assert_eq!(ind(&[0, 3, 7]).nearest_pcset(1e-6), Some(set(&[0, 3, 7])));
        let printed = [
            1.0087, 0.0840, -0.00806, -0.0530, 0.943, 0.164, -0.139, 0.999, 0.118, -0.0733,
            0.0776, -0.120,
        ];
        assert_eq!(PcDistribution::from_real(&printed).unwrap().nearest_pcset(1e-2), None);
        let half = PcDistribution::from_real(&[0.5; 12]).unwrap();
        assert_eq!(half.nearest_pcset(0.49), None);
        let mut complex = ind(&[0]).values().to_vec();
        complex[0].im = 0.1;
        assert_eq!(PcDistribution::new(complex).unwrap().nearest_pcset(1e-2), None);
    }

    #[test]
    fn property_predicates() {
        let doubled = PcDistribution::weighted([(0, 2.0), (4, 1.0), (7, 1.0)], 12).unwrap();
        assert!(doubled.is_multiset(1e-12));
        assert!(!doubled.is_indicator(1e-12));
        assert!(ind(&[0, 4, 7]).is_indicator(1e-12));
        assert_eq!(doubled.dft().coeff(0), Complex64::new(4.0, 0.0));
    }
}
