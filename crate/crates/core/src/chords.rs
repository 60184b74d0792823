//! Named chord collections used as fixtures: triads, diatonic scales, and
//! the neo-Riemannian L, P, R moves between consonant triads.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::pcs::PcDistribution;

pub const NOTE_NAMES: [&str; 12] = [
    "C", "C#", "D", "D#", "E", "F", "F#", "G", "G#", "A", "A#", "B",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledChord {
    pub label: String,
    pub distribution: PcDistribution,
}

impl LabeledChord {
    pub fn new(label: impl Into<String>, distribution: PcDistribution) -> Self {
        Self {
            label: label.into(),
            distribution,
        }
    }

    fn pcset(label: String, pcs: impl IntoIterator<Item = usize>) -> Self {
        let d = PcDistribution::indicator(pcs.into_iter().map(|p| p as i64), 12)
            .expect("modulus 12 is valid");
        Self::new(label, d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Quality {
    Major,
    Minor,
    Diminished,
    Augmented,
}

impl Quality {
    fn intervals(self) -> [usize; 3] {
        match self {
            Quality::Major => [0, 4, 7],
            Quality::Minor => [0, 3, 7],
            Quality::Diminished => [0, 3, 6],
            Quality::Augmented => [0, 4, 8],
        }
    }

    fn suffix(self) -> &'static str {
        match self {
            Quality::Major => "maj",
            Quality::Minor => "min",
            Quality::Diminished => "dim",
            Quality::Augmented => "aug",
        }
    }
}

/// A triad in 12-tone equal temperament.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Triad {
    pub root: usize,
    pub quality: Quality,
}

impl Triad {
    pub fn new(root: usize, quality: Quality) -> Self {
        Self {
            root: root % 12,
            quality,
        }
    }

    pub fn major(root: usize) -> Self {
        Self::new(root, Quality::Major)
    }

    pub fn minor(root: usize) -> Self {
        Self::new(root, Quality::Minor)
    }

    pub fn pcs(&self) -> BTreeSet<usize> {
        self.quality
            .intervals()
            .iter()
            .map(|i| (self.root + i) % 12)
            .collect()
    }

    pub fn label(&self) -> String {
        format!("{}{}", NOTE_NAMES[self.root], self.quality.suffix())
    }

    pub fn labeled(&self) -> LabeledChord {
        LabeledChord::pcset(self.label(), self.pcs())
    }

    /// Parallel: C major ↔ C minor. `None` for dissonant triads.
    pub fn parallel(&self) -> Option<Triad> {
        match self.quality {
            Quality::Major => Some(Triad::minor(self.root)),
            Quality::Minor => Some(Triad::major(self.root)),
            _ => None,
        }
    }

    /// Relative: C major ↔ A minor.
    pub fn relative(&self) -> Option<Triad> {
        match self.quality {
            Quality::Major => Some(Triad::minor(self.root + 9)),
            Quality::Minor => Some(Triad::major(self.root + 3)),
            _ => None,
        }
    }

    /// Leading-tone exchange: C major ↔ E minor.
    pub fn leading_tone(&self) -> Option<Triad> {
        match self.quality {
            Quality::Major => Some(Triad::minor(self.root + 4)),
            Quality::Minor => Some(Triad::major(self.root + 8)),
            _ => None,
        }
    }

    pub fn lpr(&self) -> Option<[Triad; 3]> {
        Some([self.leading_tone()?, self.parallel()?, self.relative()?])
    }
}

/// The 12 major triads followed by the 12 minor triads.
pub fn consonant_triads() -> Vec<LabeledChord> {
    let majors = (0..12).map(|r| Triad::major(r).labeled());
    let minors = (0..12).map(|r| Triad::minor(r).labeled());
    majors.chain(minors).collect()
}

pub fn augmented_triads() -> Vec<LabeledChord> {
    (0..4)
        .map(|r| Triad::new(r, Quality::Augmented).labeled())
        .collect()
}

pub fn diminished_triads() -> Vec<LabeledChord> {
    (0..12)
        .map(|r| Triad::new(r, Quality::Diminished).labeled())
        .collect()
}

/// The 12 major scales, labelled by tonic.
pub fn diatonic_scales() -> Vec<LabeledChord> {
    const MAJOR: [usize; 7] = [0, 2, 4, 5, 7, 9, 11];
    (0..12)
        .map(|r| {
            LabeledChord::pcset(
                format!("{}_diatonic", NOTE_NAMES[r]),
                MAJOR.iter().map(|i| (r + i) % 12),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lpr_of_c_major() {
        let c = Triad::major(0);
        let [l, p, r] = c.lpr().unwrap();
        assert_eq!(l.label(), "Emin");
        assert_eq!(p.label(), "Cmin");
        assert_eq!(r.label(), "Amin");
        assert_eq!(r.pcs(), [0, 4, 9].into_iter().collect());
    }

    #[test]
    fn lpr_are_involutions() {
        for t in consonant_triads().iter().enumerate().map(|(i, _)| {
            if i < 12 {
                Triad::major(i)
            } else {
                Triad::minor(i - 12)
            }
        }) {
            assert_eq!(t.parallel().unwrap().parallel().unwrap(), t);
            assert_eq!(t.relative().unwrap().relative().unwrap(), t);
            assert_eq!(t.leading_tone().unwrap().leading_tone().unwrap(), t);
            // each move keeps two common tones
            for n in t.lpr().unwrap() {
                assert_eq!(t.pcs().intersection(&n.pcs()).count(), 2);
            }
        }
        assert!(Triad::new(0, Quality::Augmented).lpr().is_none());
    }

    #[test]
    fn fixture_sizes() {
        assert_eq!(consonant_triads().len(), 24);
        assert_eq!(augmented_triads().len(), 4);
        assert_eq!(diminished_triads().len(), 12);
        assert_eq!(diatonic_scales().len(), 12);
        assert_eq!(consonant_triads()[12].label, "Cmin");
    }
}
