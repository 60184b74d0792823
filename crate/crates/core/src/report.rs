//! Analysis reports for chord sequences and their CSV/JSON renderings.
//!
//! CSV numbers use six decimals; JSON keeps full `f64` precision. Undefined
//! phases are empty CSV cells and `null` in JSON. Angles are radians unless
//! the caller asks for degrees, which only affects CSV output.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::chords::LabeledChord;
use crate::error::{Error, Result};
use crate::gesture::{GesturePath, PathSample};
use crate::pcs::{PcDistribution, ZERO_TOLERANCE};
use crate::torus::{distance_table, phase_coords, LocusKind, TorusLocus, TorusSelection};
use crate::units::{OrbitStep, SpectralUnit, Classification};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientRank {
    pub index: usize,
    /// Smallest `|a_index|` over the chord set.
    pub min_magnitude: f64,
    /// Number of chords on which the coefficient vanishes.
    pub vanishing: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionRecommendation {
    pub selection: TorusSelection,
    pub ranking: Vec<CoefficientRank>,
    pub rationale: String,
}

/// Picks the two coefficients whose weakest magnitude over the chord set is
/// largest, so that as few chords as possible degenerate into circles.
/// Ties (typically several coefficients vanishing somewhere) go to the
/// coefficient vanishing on fewer chords, then to the lower index.
pub fn recommend_selection(chords: &[&PcDistribution]) -> Result<SelectionRecommendation> {
    let first = chords.first().ok_or(Error::EmptyChordList)?;
    let c = first.modulus();
    if chords.iter().any(|d| d.modulus() != c) {
        return Err(Error::InvalidArgument("chords use different moduli".into()));
    }
    if c / 2 < 2 {
        return Err(Error::InvalidSelection { j: 1, k: 2, modulus: c });
    }
    let spectra: Vec<_> = chords.iter().map(|d| d.dft()).collect();
    let mut ranking: Vec<CoefficientRank> = (1..=c / 2)
        .map(|index| {
            let mags = spectra.iter().map(|s| s.magnitude(index));
            CoefficientRank {
                index,
                min_magnitude: mags.clone().fold(f64::INFINITY, f64::min),
                vanishing: mags.filter(|&m| m < ZERO_TOLERANCE).count(),
            }
        })
        .collect();
    ranking.sort_by(|a, b| {
        let key = |r: &CoefficientRank| if r.vanishing > 0 { 0.0 } else { r.min_magnitude };
        key(b)
            .total_cmp(&key(a))
            .then(a.vanishing.cmp(&b.vanishing))
            .then(a.index.cmp(&b.index))
    });
    let selection = TorusSelection::new(ranking[0].index, ranking[1].index);
    let describe = |r: &CoefficientRank| {
        if r.vanishing > 0 {
            format!("a_{} vanishes on {} chord(s)", r.index, r.vanishing)
        } else {
            format!("a_{} has min magnitude {:.4}", r.index, r.min_magnitude)
        }
    };
    let rationale = format!(
        "selected ({}, {}): {}; {}",
        selection.j,
        selection.k,
        describe(&ranking[0]),
        describe(&ranking[1])
    );
    Ok(SelectionRecommendation {
        selection,
        ranking,
        rationale,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChordRow {
    pub label: String,
    /// `|a_0| .. |a_{c/2}|`.
    pub magnitudes: Vec<f64>,
    /// `arg a_0 .. arg a_{c/2}`; `None` where the coefficient vanishes.
    pub phases: Vec<Option<f64>>,
    pub locus: TorusLocus,
    pub kind: LocusKind,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathReport {
    pub label: String,
    pub samples: Vec<PathSample>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub modulus: usize,
    pub selection: TorusSelection,
    pub recommendation: SelectionRecommendation,
    pub chords: Vec<ChordRow>,
    pub distance_matrix: Option<Vec<Vec<f64>>>,
    pub paths: Vec<PathReport>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Default)]
pub struct AnalysisOptions {
    /// Explicit torus; the recommended one is used when absent.
    pub selection: Option<TorusSelection>,
    pub distance_matrix: bool,
    /// Sample a full transposition path of every chord at this resolution.
    pub path_resolution: Option<usize>,
}

pub fn run_analysis(chords: &[LabeledChord], options: &AnalysisOptions) -> Result<AnalysisReport> {
    let dists: Vec<&PcDistribution> = chords.iter().map(|c| &c.distribution).collect();
    let recommendation = recommend_selection(&dists)?;
    let modulus = dists[0].modulus();
    let selection = options.selection.unwrap_or(recommendation.selection);
    selection.validate(modulus)?;

    let half = modulus / 2;
    let mut notes = vec![recommendation.rationale.clone()];
    let rows: Vec<ChordRow> = chords
        .iter()
        .map(|c| {
            let s = c.distribution.dft();
            let locus = phase_coords(&s, &selection);
            let kind = locus.kind();
            match kind {
                LocusKind::Point => {}
                LocusKind::FullTorus => notes.push(format!(
                    "{}: a_{} and a_{} vanish, locus is the whole torus",
                    c.label, selection.j, selection.k
                )),
                LocusKind::CircleFreeJ | LocusKind::CircleFreeK => {
                    let free = if kind == LocusKind::CircleFreeJ { selection.j } else { selection.k };
                    notes.push(format!("{}: a_{free} vanishes, locus is a circle", c.label));
                }
            }
            ChordRow {
                label: c.label.clone(),
                magnitudes: (0..=half).map(|t| s.magnitude(t)).collect(),
                phases: (0..=half).map(|t| s.phase(t)).collect(),
                locus,
                kind,
            }
        })
        .collect();

    let distance_matrix = if options.distance_matrix {
        Some(distance_table(&dists, &selection)?)
    } else {
        None
    };

    let paths = match options.path_resolution {
        Some(res) => chords
            .iter()
            .map(|c| {
                let path = GesturePath::full(c.distribution.clone(), res)?;
                Ok(PathReport {
                    label: c.label.clone(),
                    samples: path.polyline(&selection),
                })
            })
            .collect::<Result<_>>()?,
        None => Vec::new(),
    };

    Ok(AnalysisReport {
        modulus,
        selection,
        recommendation,
        chords: rows,
        distance_matrix,
        paths,
        notes,
    })
}

/// Output angle unit for CSV tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AngleUnit {
    #[default]
    Radians,
    Degrees,
}

impl AngleUnit {
    fn convert(self, radians: f64) -> f64 {
        match self {
            AngleUnit::Radians => radians,
            AngleUnit::Degrees => radians.to_degrees(),
        }
    }
}

pub fn format_number(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

fn format_angle(a: Option<f64>, unit: AngleUnit) -> String {
    a.map(|a| format_number(unit.convert(a))).unwrap_or_default()
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl AnalysisReport {
    /// `label, arg_a1 .. arg_a{c/2}`.
    pub fn phase_table_csv(&self, unit: AngleUnit) -> String {
        let half = self.modulus / 2;
        let mut out = String::from("label");
        for t in 1..=half {
            write!(out, ",arg_a{t}").unwrap();
        }
        out.push('\n');
        for row in &self.chords {
            out.push_str(&csv_field(&row.label));
            for p in &row.phases[1..] {
                write!(out, ",{}", format_angle(*p, unit)).unwrap();
            }
            out.push('\n');
        }
        out
    }

    /// `label, mag_a0 .. mag_a{c/2}`.
    pub fn magnitude_table_csv(&self) -> String {
        let half = self.modulus / 2;
        let mut out = String::from("label");
        for t in 0..=half {
            write!(out, ",mag_a{t}").unwrap();
        }
        out.push('\n');
        for row in &self.chords {
            out.push_str(&csv_field(&row.label));
            for m in &row.magnitudes {
                write!(out, ",{}", format_number(*m)).unwrap();
            }
            out.push('\n');
        }
        out
    }

    /// `label, kind, arg_aj, arg_ak`; free coordinates are empty.
    pub fn loci_csv(&self, unit: AngleUnit) -> String {
        let (j, k) = (self.selection.j, self.selection.k);
        let mut out = format!("label,kind,arg_a{j},arg_a{k}\n");
        for row in &self.chords {
            writeln!(
                out,
                "{},{},{},{}",
                csv_field(&row.label),
                row.kind.as_str(),
                format_angle(row.locus.angle_j, unit),
                format_angle(row.locus.angle_k, unit)
            )
            .unwrap();
        }
        out
    }

    pub fn distance_csv(&self) -> Option<String> {
        let labels: Vec<&str> = self.chords.iter().map(|r| r.label.as_str()).collect();
        self.distance_matrix
            .as_ref()
            .map(|m| distance_matrix_csv(&labels, m))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Square matrix with a label header row and a label first column.
pub fn distance_matrix_csv(labels: &[&str], matrix: &[Vec<f64>]) -> String {
    let mut out = String::from("label");
    for l in labels {
        write!(out, ",{}", csv_field(l)).unwrap();
    }
    out.push('\n');
    for (l, row) in labels.iter().zip(matrix) {
        out.push_str(&csv_field(l));
        for d in row {
            write!(out, ",{}", format_number(*d)).unwrap();
        }
        out.push('\n');
    }
    out
}

/// `t, arg_aj, arg_ak`.
pub fn trajectory_csv(samples: &[PathSample], sel: &TorusSelection, unit: AngleUnit) -> String {
    let mut out = format!("t,arg_a{},arg_a{}\n", sel.j, sel.k);
    for s in samples {
        writeln!(
            out,
            "{},{},{}",
            format_number(s.t),
            format_angle(s.locus.angle_j, unit),
            format_angle(s.locus.angle_k, unit)
        )
        .unwrap();
    }
    out
}

/// `t, re, im, arg` for each unit coefficient.
pub fn unit_csv(unit: &SpectralUnit, angles: AngleUnit) -> String {
    let mut out = String::from("t,re,im,arg\n");
    for (t, (z, p)) in unit.coeffs().iter().zip(unit.phases()).enumerate() {
        writeln!(
            out,
            "{t},{},{},{}",
            format_number(z.re),
            format_number(z.im),
            format_number(angles.convert(p))
        )
        .unwrap();
    }
    out
}

/// `step, class, pcs, v0 .. v{c-1}` (real parts; pcs space-separated).
pub fn orbit_csv(steps: &[OrbitStep]) -> String {
    let c = steps.first().map_or(0, |s| s.distribution.modulus());
    let mut out = String::from("step,class,pcs");
    for k in 0..c {
        write!(out, ",v{k}").unwrap();
    }
    out.push('\n');
    for s in steps {
        let (class, pcs) = match &s.class {
            Classification::Genuine(set) => (
                "genuine",
                set.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" "),
            ),
            Classification::Generalized => ("generalized", String::new()),
        };
        write!(out, "{},{class},{pcs}", s.step).unwrap();
        for v in s.distribution.values() {
            write!(out, ",{}", format_number(v.re)).unwrap();
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chords::{augmented_triads, consonant_triads};

    fn ind(pcs: &[i64]) -> PcDistribution {
        PcDistribution::indicator(pcs.iter().copied(), 12).unwrap()
    }

    #[test]
    fn triads_recommend_three_five() {
        let triads = consonant_triads();
        let dists: Vec<_> = triads.iter().map(|c| &c.distribution).collect();
        let rec = recommend_selection(&dists).unwrap();
        assert_eq!((rec.selection.j, rec.selection.k), (3, 5));
    }

    #[test]
    fn diminished_seventh_excludes_three_and_five() {
        let d = ind(&[0, 3, 6, 9]);
        let rec = recommend_selection(&[&d]).unwrap();
        assert_eq!(rec.selection.j, 4);
        assert!(![3, 5].contains(&rec.selection.k));
        let triads = consonant_triads();
        let mut dists: Vec<_> = triads.iter().map(|c| &c.distribution).collect();
        dists.push(&d);
        let rec = recommend_selection(&dists).unwrap();
        assert_eq!(rec.selection.j, 4);
        assert!(![3, 5].contains(&rec.selection.k));
    }

    #[test]
    fn augmented_keeps_three_and_six() {
        let d = ind(&[0, 4, 8]);
        let rec = recommend_selection(&[&d]).unwrap();
        let mut pair = [rec.selection.j, rec.selection.k];
        pair.sort();
        assert_eq!(pair, [3, 6]);
        for r in &rec.ranking {
            assert_eq!(r.vanishing > 0, [1, 2, 4, 5].contains(&r.index));
        }
    }

    #[test]
    fn report_notes_degenerate_loci() {
        let mut chords = consonant_triads();
        chords.extend(augmented_triads());
        let opts = AnalysisOptions {
            selection: Some(TorusSelection::three_five()),
            ..Default::default()
        };
        let report = run_analysis(&chords, &opts).unwrap();
        assert_eq!(report.chords.len(), 28);
        assert_eq!(report.chords[27].kind, LocusKind::CircleFreeK);
        assert_eq!(report.notes.len(), 5);
        let csv = report.loci_csv(AngleUnit::Radians);
        assert!(csv.starts_with("label,kind,arg_a3,arg_a5\n"));
        assert!(csv.contains("\nCaug,circle_free_k,0.000000,\n"));
    }

    #[test]
    fn phase_table_row() {
        let chords = vec![LabeledChord::new("Cmin", ind(&[0, 3, 7])), LabeledChord::new("Caug", ind(&[0, 4, 8]))];
        let report = run_analysis(&chords, &AnalysisOptions::default()).unwrap();
        let csv = report.phase_table_csv(AngleUnit::Radians);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "label,arg_a1,arg_a2,arg_a3,arg_a4,arg_a5,arg_a6");
        assert!(lines[1].starts_with("Cmin,"));
        assert!(lines[1].contains(",1.107149,"));
        assert!(lines[1].contains(",-0.261799,"));
        // a_1, a_2, a_4 and a_5 vanish on the augmented triad
        assert_eq!(lines[2], "Caug,,,0.000000,,,0.000000");
        let deg = report.phase_table_csv(AngleUnit::Degrees);
        assert!(deg.contains(",180.000000"));
    }

    #[test]
    fn empty_input_rejected() {
        assert!(matches!(run_analysis(&[], &AnalysisOptions::default()), Err(Error::EmptyChordList)));
    }

    #[test]
    fn number_format() {
        assert_eq!(format_number(-1e-12), "0.000000");
        assert_eq!(format_number(3.2599006), "3.259901");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
    }
}
