//! Phase coordinates on a two-coefficient torus and the flat quotient metric.

use serde::{Deserialize, Serialize};

use crate::angle;
use crate::chords::LabeledChord;
use crate::error::{Error, Result};
use crate::pcs::{PcDistribution, Spectrum};

/// Stretch applied to the `a_5` difference so that a triad's three
/// neighbours under L, P and R sit at (nearly) the same distance.
pub const TONNETZ_FIFTH_WEIGHT: f64 = 0.7365;

/// Which two Fourier coefficients span the torus, and how their phase
/// differences are weighted in the metric.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TorusSelection {
    pub j: usize,
    pub k: usize,
    pub weight_j: f64,
    pub weight_k: f64,
}

impl TorusSelection {
    pub fn new(j: usize, k: usize) -> Self {
        Self {
            j,
            k,
            weight_j: 1.0,
            weight_k: 1.0,
        }
    }

    /// `(arg a_3, arg a_5)`, the torus of triads.
    pub fn three_five() -> Self {
        Self::new(3, 5)
    }

    /// `(arg a_4, arg a_5)`, better suited to four-note chords.
    pub fn four_five() -> Self {
        Self::new(4, 5)
    }

    /// The 3-5 torus with the fifth coordinate shrunk by [`TONNETZ_FIFTH_WEIGHT`].
    pub fn three_five_tonnetz() -> Self {
        Self::three_five().with_weights(1.0, TONNETZ_FIFTH_WEIGHT).unwrap()
    }

    pub fn with_weights(mut self, weight_j: f64, weight_k: f64) -> Result<Self> {
        let ok = |w: f64| w.is_finite() && w > 0.0;
        if !ok(weight_j) || !ok(weight_k) {
            return Err(Error::InvalidWeights(weight_j, weight_k));
        }
        self.weight_j = weight_j;
        self.weight_k = weight_k;
        Ok(self)
    }

    pub fn validate(&self, modulus: usize) -> Result<()> {
        let half = modulus / 2;
        let in_range = |i: usize| (1..=half).contains(&i);
        if !in_range(self.j) || !in_range(self.k) || self.j == self.k {
            return Err(Error::InvalidSelection {
                j: self.j,
                k: self.k,
                modulus,
            });
        }
        if !(self.weight_j.is_finite() && self.weight_j > 0.0)
            || !(self.weight_k.is_finite() && self.weight_k > 0.0)
        {
            return Err(Error::InvalidWeights(self.weight_j, self.weight_k));
        }
        Ok(())
    }
}

impl Default for TorusSelection {
    fn default() -> Self {
        Self::three_five()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LocusKind {
    Point,
    /// `a_j` vanishes: a circle running along the j coordinate.
    CircleFreeJ,
    /// `a_k` vanishes: a circle running along the k coordinate.
    CircleFreeK,
    FullTorus,
}

impl LocusKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            LocusKind::Point => "point",
            LocusKind::CircleFreeJ => "circle_free_j",
            LocusKind::CircleFreeK => "circle_free_k",
            LocusKind::FullTorus => "full_torus",
        }
    }
}

/// Where a distribution lives on the torus. A vanishing coefficient has no
/// phase, so that coordinate is free (`None`) and the locus is a circle, or
/// the whole torus when both vanish.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TorusLocus {
    pub angle_j: Option<f64>,
    pub angle_k: Option<f64>,
}

impl TorusLocus {
    pub fn point(angle_j: f64, angle_k: f64) -> Self {
        Self {
            angle_j: Some(angle::normalize(angle_j)),
            angle_k: Some(angle::normalize(angle_k)),
        }
    }

    pub fn kind(&self) -> LocusKind {
        match (self.angle_j, self.angle_k) {
            (Some(_), Some(_)) => LocusKind::Point,
            (None, Some(_)) => LocusKind::CircleFreeJ,
            (Some(_), None) => LocusKind::CircleFreeK,
            (None, None) => LocusKind::FullTorus,
        }
    }
}

pub fn phase_coords(spectrum: &Spectrum, sel: &TorusSelection) -> TorusLocus {
    TorusLocus {
        angle_j: spectrum.phase(sel.j),
        angle_k: spectrum.phase(sel.k),
    }
}

/// Weighted Euclidean distance of wrapped phase differences. A coordinate
/// that is free on either side contributes nothing, which is the minimum
/// over all positions on the circle.
pub fn torus_distance(p: &TorusLocus, q: &TorusLocus, sel: &TorusSelection) -> f64 {
    let gap = |a: Option<f64>, b: Option<f64>| match (a, b) {
        (Some(a), Some(b)) => angle::circular_distance(a.max(b), a.min(b)),
        _ => 0.0,
    };
    let dj = sel.weight_j * gap(p.angle_j, q.angle_j);
    let dk = sel.weight_k * gap(p.angle_k, q.angle_k);
    dj.hypot(dk)
}

fn check_common_modulus(chords: &[&PcDistribution]) -> Result<usize> {
    let first = chords.first().ok_or(Error::EmptyChordList)?.modulus();
    for d in chords {
        if d.modulus() != first {
            return Err(Error::ModulusMismatch {
                left: first,
                right: d.modulus(),
            });
        }
    }
    Ok(first)
}

pub fn loci(chords: &[&PcDistribution], sel: &TorusSelection) -> Result<Vec<TorusLocus>> {
    let modulus = check_common_modulus(chords)?;
    sel.validate(modulus)?;
    Ok(chords.iter().map(|d| phase_coords(&d.dft(), sel)).collect())
}

/// Pairwise torus distances; symmetric with a zero diagonal.
pub fn distance_table(chords: &[&PcDistribution], sel: &TorusSelection) -> Result<Vec<Vec<f64>>> {
    let loci = loci(chords, sel)?;
    let n = loci.len();
    let mut table = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let d = torus_distance(&loci[i], &loci[j], sel);
            table[i][j] = d;
            table[j][i] = d;
        }
    }
    Ok(table)
}

/// The `n` closest chords to `target`, nearest first. Equal distances keep
/// input order.
pub fn nearest_neighbors(
    chords: &[LabeledChord],
    target: &str,
    n: usize,
    sel: &TorusSelection,
) -> Result<Vec<(String, f64)>> {
    let idx = chords
        .iter()
        .position(|c| c.label == target)
        .ok_or_else(|| Error::UnknownLabel(target.to_string()))?;
    let dists: Vec<&PcDistribution> = chords.iter().map(|c| &c.distribution).collect();
    let loci = loci(&dists, sel)?;
    let mut ranked: Vec<(usize, f64)> = loci
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != idx)
        .map(|(i, l)| (i, torus_distance(&loci[idx], l, sel)))
        .collect();
    ranked.sort_by(|a, b| a.1.total_cmp(&b.1));
    Ok(ranked
        .into_iter()
        .take(n)
        .map(|(i, d)| (chords[i].label.clone(), d))
        .collect())
}
