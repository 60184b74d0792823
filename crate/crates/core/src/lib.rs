//! Discrete Fourier transforms of pitch-class distributions, with the phases
//! of two chosen coefficients read as coordinates on a torus.
//!
//! On the `(arg a_3, arg a_5)` torus the 24 consonant triads sit in the
//! arrangement of the dual Tonnetz, transposition becomes a rigid
//! translation that can be run continuously, and homometric pc-sets are
//! connected by spectral units.
//!
//! ```
//! use phasetorus::{PcDistribution, TorusSelection, phase_coords, torus_distance};
//!
//! let c_minor = PcDistribution::indicator([0, 3, 7], 12).unwrap();
//! let d_major = PcDistribution::indicator([2, 6, 9], 12).unwrap();
//! let sel = TorusSelection::three_five();
//! let p = phase_coords(&c_minor.dft(), &sel);
//! let q = phase_coords(&d_major.dft(), &sel);
//! assert!((torus_distance(&p, &q, &sel) - 3.26).abs() < 0.01);
//! ```

pub mod angle;
pub mod chords;
pub mod error;
pub mod gesture;
pub mod pcs;
pub mod report;
pub mod sequence;
pub mod torus;
pub mod units;

pub use chords::{LabeledChord, Quality, Triad};
pub use error::{Error, Result};
pub use gesture::{
    continuous_transpose, nearest_on_path, path_polyline, restricted_rotation,
    rotate_coefficients, winding_numbers, GesturePath, NearestPoint, PathMode, PathSample,
};
pub use pcs::{interval_content, IntervalVector, PcDistribution, Spectrum, DEFAULT_MODULUS, ZERO_TOLERANCE};
pub use report::{recommend_selection, run_analysis, AnalysisOptions, AnalysisReport, AngleUnit};
pub use sequence::{parse_sequence, ChordEntry};
pub use torus::{
    distance_table, nearest_neighbors, phase_coords, torus_distance, LocusKind, TorusLocus,
    TorusSelection, TONNETZ_FIFTH_WEIGHT,
};
pub use units::{Classification, OrbitStep, SpectralUnit, UnitOrder};
