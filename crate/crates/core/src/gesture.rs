//! Continuous paths between chords obtained by rotating Fourier coefficients.
//!
//! Rotating every coefficient `a_k` by `e^{-2iπkt/c}` is transposition by `t`
//! semitones, and makes sense for any real `t`. Rotating only two selected
//! coefficients (and their mirrors) moves a chord along the torus while every
//! other coefficient stays put.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::angle;
use crate::error::{Error, Result};
use crate::pcs::{PcDistribution, Spectrum};
use crate::torus::{phase_coords, torus_distance, TorusLocus, TorusSelection};

/// Minimum number of samples for the coarse sweep in [`nearest_on_path`].
pub const NEAREST_SAMPLES: usize = 4096;
const REFINE_TOLERANCE: f64 = 1e-6;

/// Rotates `a_i` by `e^{iθ}` and its mirror `a_{c-i}` by `e^{-iθ}` for every
/// `(i, θ)` given, leaving the other coefficients alone. Repeated indices
/// compose. A self-mirrored coefficient (`a_0`, or `a_{c/2}` for even `c`)
/// must stay real, so it is scaled by `cos θ` instead.
pub fn rotate_spectrum(spectrum: &Spectrum, rotations: &[(usize, f64)]) -> Spectrum {
    let c = spectrum.modulus();
    let mut angles = vec![0.0; c];
    for &(i, theta) in rotations {
        let i = i % c;
        let mirror = (c - i) % c;
        if i == mirror {
            angles[i] += theta;
        } else {
            angles[i] += theta;
            angles[mirror] -= theta;
        }
    }
    spectrum.map_coeffs(|t, a| {
        let theta = angles[t];
        if theta == 0.0 {
            a
        } else if (c - t) % c == t {
            a * theta.cos()
        } else {
            a * Complex64::from_polar(1.0, theta)
        }
    })
}

pub fn rotate_coefficients(d: &PcDistribution, rotations: &[(usize, f64)]) -> PcDistribution {
    rotate_spectrum(&d.dft(), rotations).idft()
}

/// Rotates `a_j` by `θ_j` and `a_k` by `θ_k`, mirrors oppositely.
pub fn restricted_rotation(
    d: &PcDistribution,
    sel: &TorusSelection,
    theta_j: f64,
    theta_k: f64,
) -> PcDistribution {
    rotate_coefficients(d, &[(sel.j, theta_j), (sel.k, theta_k)])
}

fn transposition_angles(modulus: usize, t: f64) -> Vec<(usize, f64)> {
    (1..=modulus / 2)
        .map(|i| (i, -TAU * i as f64 * t / modulus as f64))
        .collect()
}

/// Transposition by a real number of semitones. At integer `t` this is the
/// ordinary cyclic shift; in between, the output stays real, and for even
/// moduli the middle coefficient `a_{c/2}` is scaled by `cos(πt)`.
pub fn continuous_transpose(d: &PcDistribution, t: f64) -> PcDistribution {
    rotate_coefficients(d, &transposition_angles(d.modulus(), t))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PathMode {
    FullRotation,
    /// Only the two selected coefficients turn, at transposition speed.
    Restricted(TorusSelection),
}

/// A closed curve `t ↦ path(t)`, `t ∈ [0, c)` in semitones.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GesturePath {
    base: PcDistribution,
    mode: PathMode,
    resolution: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathSample {
    pub t: f64,
    pub locus: TorusLocus,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NearestPoint {
    pub t: f64,
    pub distance: f64,
}

impl GesturePath {
    pub fn new(base: PcDistribution, mode: PathMode, resolution: usize) -> Result<Self> {
        if resolution < 2 {
            return Err(Error::InvalidArgument(format!(
                "path resolution must be at least 2, got {resolution}"
            )));
        }
        if let PathMode::Restricted(sel) = &mode {
            sel.validate(base.modulus())?;
        }
        Ok(Self {
            base,
            mode,
            resolution,
        })
    }

    pub fn full(base: PcDistribution, resolution: usize) -> Result<Self> {
        Self::new(base, PathMode::FullRotation, resolution)
    }

    pub fn base(&self) -> &PcDistribution {
        &self.base
    }

    pub fn mode(&self) -> &PathMode {
        &self.mode
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn modulus(&self) -> usize {
        self.base.modulus()
    }

    fn angles_at(&self, t: f64) -> Vec<(usize, f64)> {
        let c = self.modulus() as f64;
        match &self.mode {
            PathMode::FullRotation => transposition_angles(self.modulus(), t),
            PathMode::Restricted(sel) => vec![
                (sel.j, -TAU * sel.j as f64 * t / c),
                (sel.k, -TAU * sel.k as f64 * t / c),
            ],
        }
    }

    pub fn spectrum_at(&self, t: f64) -> Spectrum {
        rotate_spectrum(&self.base.dft(), &self.angles_at(t))
    }

    pub fn distribution_at(&self, t: f64) -> PcDistribution {
        self.spectrum_at(t).idft()
    }

    /// Sample parameters `t = i·c/resolution`.
    pub fn parameters(&self) -> impl Iterator<Item = f64> + '_ {
        let step = self.modulus() as f64 / self.resolution as f64;
        (0..self.resolution).map(move |i| i as f64 * step)
    }

    pub fn polyline(&self, sel: &TorusSelection) -> Vec<PathSample> {
        let base = self.base.dft();
        self.parameters()
            .map(|t| PathSample {
                t,
                locus: phase_coords(&rotate_spectrum(&base, &self.angles_at(t)), sel),
            })
            .collect()
    }
}

pub fn path_polyline(path: &GesturePath, sel: &TorusSelection) -> Result<Vec<PathSample>> {
    sel.validate(path.modulus())?;
    Ok(path.polyline(sel))
}

/// Signed number of turns around each coordinate circle made by a closed
/// polyline (the last sample joins back to the first). `None` when the
/// coordinate is undefined somewhere along the way.
pub fn winding_numbers(samples: &[PathSample]) -> (Option<i64>, Option<i64>) {
    fn turns(angles: Option<Vec<f64>>) -> Option<i64> {
        let angles = angles?;
        let n = angles.len();
        let total: f64 = (0..n)
            .map(|i| angle::wrapped_difference(angles[(i + 1) % n], angles[i]))
            .sum();
        Some((total / TAU).round() as i64)
    }
    let js = samples.iter().map(|s| s.locus.angle_j).collect();
    let ks = samples.iter().map(|s| s.locus.angle_k).collect();
    (turns(js), turns(ks))
}

fn golden_section(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = f(x2);
        }
    }
    (lo + hi) / 2.0
}

/// Global minimizer over `t ∈ [0, c)` of the torus distance between the
/// path and `target`: a dense sweep followed by golden-section refinement
/// around the best sample. Ties go to the smallest `t`.
pub fn nearest_on_path(
    target: &PcDistribution,
    path: &GesturePath,
    sel: &TorusSelection,
) -> Result<NearestPoint> {
    if target.modulus() != path.modulus() {
        return Err(Error::ModulusMismatch {
            left: target.modulus(),
            right: path.modulus(),
        });
    }
    sel.validate(path.modulus())?;
    let c = path.modulus() as f64;
    let goal = phase_coords(&target.dft(), sel);
    let base = path.base.dft();
    let objective = |t: f64| {
        let locus = phase_coords(&rotate_spectrum(&base, &path.angles_at(t)), sel);
        torus_distance(&locus, &goal, sel)
    };

    let samples = NEAREST_SAMPLES.max(path.resolution);
    let step = c / samples as f64;
    let (mut best_t, mut best_d) = (0.0, objective(0.0));
    for i in 1..samples {
        let t = i as f64 * step;
        let d = objective(t);
        if d < best_d {
            best_t = t;
            best_d = d;
        }
    }

    let refined = golden_section(objective, best_t - step, best_t + step, REFINE_TOLERANCE);
    let refined_d = objective(refined);
    if refined_d < best_d {
        best_t = refined.rem_euclid(c);
        best_d = refined_d;
    }
    Ok(NearestPoint {
        t: best_t,
        distance: best_d,
    })
}

/// Smallest torus distance between any two samples of two paths.
pub fn path_proximity(a: &GesturePath, b: &GesturePath, sel: &TorusSelection) -> Result<f64> {
    let pa = path_polyline(a, sel)?;
    let pb = path_polyline(b, sel)?;
    Ok(pa
        .iter()
        .flat_map(|p| pb.iter().map(move |q| torus_distance(&p.locus, &q.locus, sel)))
        .fold(f64::INFINITY, f64::min))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn ind(pcs: &[i64]) -> PcDistribution {
        PcDistribution::indicator(pcs.iter().copied(), 12).unwrap()
    }

    #[test]
    fn integer_continuous_transpose_is_discrete() {
        let d = ind(&[0, 3, 7]);
        assert!(continuous_transpose(&d, 4.0).max_abs_diff(&ind(&[4, 7, 11])) < 1e-12);
        assert!(continuous_transpose(&d, 12.0).max_abs_diff(&d) < 1e-12);
        for t in -3..15 {
            assert!(continuous_transpose(&d, t as f64).max_abs_diff(&d.transpose(t)) < 1e-12);
        }
    }

    #[test]
    fn one_semitone_phase_steps() {
        let d = ind(&[0, 4, 7]);
        let (a, b) = (d.dft(), continuous_transpose(&d, 1.0).dft());
        let step = |k: usize| angle::wrapped_difference(b.phase(k).unwrap(), a.phase(k).unwrap());
        assert!((step(5) + 5.0 * PI / 6.0).abs() < 1e-12);
        assert!((step(3) + FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn fractional_transpose_stays_real() {
        let d = ind(&[0, 4, 7]);
        let x = continuous_transpose(&d, 0.37);
        assert!(x.is_real(1e-12));
        let (a, b) = (d.dft(), x.dft());
        for k in [1, 2, 3, 4, 5] {
            assert!((a.magnitude(k) - b.magnitude(k)).abs() < 1e-12);
        }
        assert!((b.coeff(6).re - a.coeff(6).re * (0.37 * PI).cos()).abs() < 1e-12);
    }

    #[test]
    fn restricted_rotation_basics() {
        let d = ind(&[0, 4, 7]);
        let sel = TorusSelection::three_five();
        assert!(restricted_rotation(&d, &sel, 0.0, 0.0).max_abs_diff(&d) < 1e-12);
        let there = restricted_rotation(&d, &sel, 0.4, -1.1);
        assert!(there.is_real(1e-12));
        let back = restricted_rotation(&there, &sel, -0.4, 1.1);
        assert!(back.max_abs_diff(&d) < 1e-12);
        let (a, b) = (d.dft(), there.dft());
        for t in [0, 1, 2, 4, 6, 8, 10, 11] {
            assert!((a.coeff(t) - b.coeff(t)).norm() < 1e-12);
        }
    }

    #[test]
    fn resolution_two() {
        let path = GesturePath::full(ind(&[0, 4, 7]), 2).unwrap();
        let ts: Vec<f64> = path.parameters().collect();
        assert_eq!(ts, vec![0.0, 6.0]);
        assert!(GesturePath::full(ind(&[0, 4, 7]), 1).is_err());
    }

    #[test]
    fn target_on_path() {
        let path = GesturePath::full(ind(&[0, 4, 7]), 120).unwrap();
        let hit = nearest_on_path(&ind(&[3, 7, 10]), &path, &TorusSelection::three_five()).unwrap();
        assert!(hit.distance < 1e-6);
        assert!((hit.t - 3.0).abs() < 1e-5);
    }

    #[test]
    fn undefined_coordinate_has_no_winding() {
        let path = GesturePath::full(ind(&[0, 4, 8]), 48).unwrap();
        let line = path.polyline(&TorusSelection::three_five());
        assert_eq!(winding_numbers(&line), (Some(-3), None));
    }
}
