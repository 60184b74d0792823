//! Spectral units: maps whose Fourier coefficients all have modulus one.
//!
//! Two distributions share every Fourier magnitude exactly when some unit
//! multiplies one spectrum termwise into the other. Units form a group under
//! termwise multiplication (a product of circles), so they can be composed,
//! inverted, iterated, and split into roots by dividing phases.

use std::collections::BTreeSet;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::angle;
use crate::error::{Error, Result};
use crate::pcs::{PcDistribution, Spectrum, ZERO_TOLERANCE};

/// Allowed deviation of `|û(t)|` from 1.
pub const UNIT_TOLERANCE: f64 = 1e-12;
/// Two magnitude profiles closer than this (per coefficient) are homometric.
pub const HOMOMETRY_TOLERANCE: f64 = 1e-9;
/// Per-coefficient phase tolerance when testing for the identity.
pub const IDENTITY_TOLERANCE: f64 = 1e-9;
/// Tolerance used to decide whether an orbit element is a genuine pc-set.
pub const ORBIT_TOLERANCE: f64 = 1e-6;

/// A spectral unit, stored by its Fourier coefficients `û`. The pc-space map
/// `u` is `û`'s inverse transform.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralUnit {
    coeffs: Vec<Complex64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum UnitOrder {
    Finite(u64),
    /// No power up to the search bound is the identity. This is as close to
    /// "infinite order" as floating point can get.
    ExceedsMax,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    Genuine(BTreeSet<usize>),
    Generalized,
}

impl Classification {
    pub fn is_genuine(&self) -> bool {
        matches!(self, Classification::Genuine(_))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitStep {
    pub step: usize,
    pub distribution: PcDistribution,
    pub class: Classification,
}

impl SpectralUnit {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::ZeroModulus);
        }
        if let Some((t, z)) = coeffs
            .iter()
            .enumerate()
            .find(|(_, z)| (z.norm() - 1.0).abs() > UNIT_TOLERANCE)
        {
            return Err(Error::InvalidArgument(format!(
                "coefficient {t} has modulus {}, expected 1",
                z.norm()
            )));
        }
        Ok(Self { coeffs })
    }

    pub fn from_phases(phases: &[f64]) -> Result<Self> {
        Self::new(phases.iter().map(|&p| Complex64::from_polar(1.0, p)).collect())
    }

    pub fn identity(modulus: usize) -> Result<Self> {
        Self::new(vec![Complex64::new(1.0, 0.0); modulus])
    }

    /// The unit acting as transposition by `t` semitones.
    pub fn transposition(t: i64, modulus: usize) -> Result<Self> {
        let c = modulus as f64;
        let phases: Vec<f64> = (0..modulus)
            .map(|k| -std::f64::consts::TAU * ((k as i64 * t).rem_euclid(modulus as i64)) as f64 / c)
            .collect();
        Self::from_phases(&phases)
    }

    /// The unit `û = b̂ / â` carrying `a` onto `b`.
    ///
    /// Where both spectra vanish any unit value works; those slots get
    /// `e^{i·zero_policy}` on the lower half of the spectrum and its
    /// conjugate on the mirror, so units between real maps stay Hermitian.
    /// Self-mirrored slots (`t = 0`, `t = c/2`) must be real and take the
    /// sign of `cos(zero_policy)`.
    pub fn between(a: &PcDistribution, b: &PcDistribution, zero_policy: f64) -> Result<Self> {
        if a.modulus() != b.modulus() {
            return Err(Error::ModulusMismatch {
                left: a.modulus(),
                right: b.modulus(),
            });
        }
        let c = a.modulus();
        let (sa, sb) = (a.dft(), b.dft());
        let mut coeffs = Vec::with_capacity(c);
        for t in 0..c {
            let (x, y) = (sa.coeff(t), sb.coeff(t));
            let (mx, my) = (x.norm(), y.norm());
            if (mx - my).abs() > HOMOMETRY_TOLERANCE
                || ((mx < ZERO_TOLERANCE) != (my < ZERO_TOLERANCE))
            {
                return Err(Error::NotHomometric {
                    index: t,
                    left: mx,
                    right: my,
                });
            }
            let z = if mx < ZERO_TOLERANCE {
                let mirror = (c - t) % c;
                if mirror == t {
                    Complex64::new(zero_policy.cos().signum(), 0.0)
                } else if t < mirror {
                    Complex64::from_polar(1.0, zero_policy)
                } else {
                    Complex64::from_polar(1.0, -zero_policy)
                }
            } else {
                let r = y / x;
                r / r.norm()
            };
            coeffs.push(z);
        }
        Ok(Self { coeffs })
    }

    pub fn modulus(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Principal phases in `(-π, π]`.
    pub fn phases(&self) -> Vec<f64> {
        self.coeffs.iter().map(|z| angle::normalize(z.arg())).collect()
    }

    pub fn as_spectrum(&self) -> Spectrum {
        Spectrum::new(self.coeffs.clone()).expect("non-empty")
    }

    /// The pc-space map `u` itself.
    pub fn pc_map(&self) -> PcDistribution {
        self.as_spectrum().idft()
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.modulus() != other.modulus() {
            return Err(Error::ModulusMismatch {
                left: self.modulus(),
                right: other.modulus(),
            });
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| {
                let z = a * b;
                z / z.norm()
            })
            .collect();
        Ok(Self { coeffs })
    }

    pub fn inverse(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|z| z.conj()).collect(),
        }
    }

    /// `û^n` for any integer `n`, computed on phases.
    pub fn power(&self, n: i64) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|z| Complex64::from_polar(1.0, angle::normalize(z.arg() * n as f64)))
            .collect();
        Self { coeffs }
    }

    /// A `k`-th root obtained by dividing each principal phase by `k`.
    pub fn root(&self, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("root index must be at least 1".into()));
        }
        Ok(Self::from_phases(
            &self.phases().iter().map(|p| p / k as f64).collect::<Vec<_>>(),
        )
        .expect("phases give unit coefficients"))
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|z| angle::circular_distance(z.arg(), 0.0) < tol)
    }

    /// Smallest `n ≤ max_order` with `û^n` equal to the identity.
    pub fn order(&self, max_order: u64) -> UnitOrder {
        (1..=max_order)
            .find(|&n| self.power(n as i64).is_identity(IDENTITY_TOLERANCE))
            .map_or(UnitOrder::ExceedsMax, UnitOrder::Finite)
    }

    pub fn apply(&self, d: &PcDistribution) -> Result<PcDistribution> {
        if self.modulus() != d.modulus() {
            return Err(Error::ModulusMismatch {
                left: self.modulus(),
                right: d.modulus(),
            });
        }
        let s = d.dft();
        Ok(s.map_coeffs(|t, a| a * self.coeffs[t]).idft())
    }

    /// `n_steps` elements `idft(û^k × â)` for `k = 0..n_steps`, each tagged
    /// as a genuine pc-set or a generalized distribution.
    pub fn orbit(&self, start: &PcDistribution, n_steps: usize) -> Result<Vec<OrbitStep>> {
        if n_steps == 0 {
            return Err(Error::InvalidArgument("orbit needs at least one step".into()));
        }
        (0..n_steps)
            .map(|k| {
                let distribution = self.power(k as i64).apply(start)?;
                let class = match distribution.nearest_pcset(ORBIT_TOLERANCE) {
                    Some(set) => Classification::Genuine(set),
                    None => Classification::Generalized,
                };
                Ok(OrbitStep {
                    step: k,
                    distribution,
                    class,
                })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ind(pcs: &[i64]) -> PcDistribution {
        PcDistribution::indicator(pcs.iter().copied(), 12).unwrap()
    }

    fn z_pair_unit() -> SpectralUnit {
        SpectralUnit::between(&ind(&[0, 1, 4, 6]), &ind(&[0, 1, 3, 7]), 0.0).unwrap()
    }

    #[test]
    fn c_major_to_a_minor() {
        let u = SpectralUnit::between(&ind(&[0, 4, 7]), &ind(&[0, 4, 9]), 0.0).unwrap();
        assert!((u.coeffs()[3] - Complex64::new(0.6, -0.8)).norm() < 1e-12);
        // the rest of the listed coefficients
        let h = 3f64.sqrt() / 2.0;
        let listed = [
            Complex64::new(1.0, 0.0),
            Complex64::new(-h, 0.5),
            Complex64::new(-0.5, h),
            Complex64::new(0.6, -0.8),
            Complex64::new(0.5, h),
            Complex64::new(h, 0.5),
            Complex64::new(1.0, 0.0),
        ];
        for (t, z) in listed.iter().enumerate() {
            assert!((u.coeffs()[t] - z).norm() < 1e-12, "t = {t}");
        }
        assert_eq!(u.order(10_000), UnitOrder::ExceedsMax);
        assert_eq!(u.apply(&ind(&[0, 4, 7])).unwrap().nearest_pcset(1e-9), Some([0, 4, 9].into()));
    }

    #[test]
    fn z_pair_third_coefficient() {
        let u = z_pair_unit();
        assert!((u.coeffs()[3] - Complex64::new(0.0, 1.0)).norm() < 1e-12);
        assert_eq!(u.order(1000), UnitOrder::Finite(12));
    }

    #[test]
    fn self_ratio_is_identity() {
        let d = ind(&[0, 1, 2, 5, 7]);
        assert!(d.dft().magnitudes().iter().all(|&m| m > ZERO_TOLERANCE));
        let u = SpectralUnit::between(&d, &d, 0.0).unwrap();
        assert!(u.is_identity(1e-12));
        assert_eq!(u.order(5), UnitOrder::Finite(1));
    }

    #[test]
    fn group_axioms() {
        let u = z_pair_unit();
        let id = SpectralUnit::identity(12).unwrap();
        assert!(u.multiply(&id).unwrap().coeffs().iter().zip(u.coeffs()).all(|(a, b)| (a - b).norm() < 1e-15));
        assert!(u.multiply(&u.power(-1)).unwrap().is_identity(1e-12));
        assert!(u.multiply(&u.inverse()).unwrap().is_identity(1e-12));
        assert!(u.power(12).is_identity(1e-12));
        let v = SpectralUnit::identity(7).unwrap();
        assert!(matches!(u.multiply(&v), Err(Error::ModulusMismatch { .. })));
    }

    #[test]
    fn not_homometric() {
        let r = SpectralUnit::between(&ind(&[0, 4, 7]), &ind(&[0, 3, 6]), 0.0);
        assert!(matches!(r, Err(Error::NotHomometric { .. })));
        // same cardinality, different interval content, one spectrum vanishing
        let r = SpectralUnit::between(&ind(&[0, 4, 8]), &ind(&[0, 1, 2]), 0.0);
        assert!(matches!(r, Err(Error::NotHomometric { .. })));
    }

    #[test]
    fn zero_policy_fills_vanishing_slots() {
        let aug = ind(&[0, 4, 8]);
        let u = SpectralUnit::between(&aug, &aug.transpose(1), 0.3).unwrap();
        let s = aug.dft();
        for t in 0..12 {
            if s.magnitude(t) < ZERO_TOLERANCE {
                let expected = match t {
                    6 => Complex64::new(1.0, 0.0),
                    t if t < 6 => Complex64::from_polar(1.0, 0.3),
                    _ => Complex64::from_polar(1.0, -0.3),
                };
                assert!((u.coeffs()[t] - expected).norm() < 1e-12, "t = {t}");
            }
        }
        // still Hermitian, so the orbit stays real
        for t in 0..12 {
            assert!((u.coeffs()[(12 - t) % 12] - u.coeffs()[t].conj()).norm() < 1e-12);
        }
        assert_eq!(u.apply(&aug).unwrap().nearest_pcset(1e-9), Some([1, 5, 9].into()));
    }

    #[test]
    fn roots() {
        let u = z_pair_unit();
        let id = SpectralUnit::identity(12).unwrap();
        assert_eq!(id.root(5).unwrap(), id);
        assert!(u.root(1).unwrap().coeffs().iter().zip(u.coeffs()).all(|(a, b)| (a - b).norm() < 1e-15));
        assert!(u.root(0).is_err());
        let back = u.root(3).unwrap().power(3);
        assert!(back.coeffs().iter().zip(u.coeffs()).all(|(a, b)| (a - b).norm() < 1e-12));
    }

    #[test]
    fn transposition_unit_matches_shift() {
        let d = ind(&[0, 2, 3, 7]);
        let moved = SpectralUnit::transposition(5, 12).unwrap().apply(&d).unwrap();
        assert!(moved.max_abs_diff(&d.transpose(5)) < 1e-12);
    }

    #[test]
    fn identity_orbit() {
        let d = ind(&[0, 4, 7]);
        let steps = SpectralUnit::identity(12).unwrap().orbit(&d, 5).unwrap();
        assert_eq!(steps.len(), 5);
        assert!(steps.iter().all(|s| s.class == Classification::Genuine([0, 4, 7].into())));
        assert!(SpectralUnit::identity(12).unwrap().orbit(&d, 0).is_err());
    }

    #[test]
    fn invalid_unit_rejected() {
        assert!(SpectralUnit::new(vec![Complex64::new(0.5, 0.0)]).is_err());
        assert!(SpectralUnit::new(vec![]).is_err());
    }
}
