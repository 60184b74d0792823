use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use phasetorus::chords::{
    augmented_triads, consonant_triads, diatonic_scales, diminished_triads, LabeledChord,
};
use phasetorus::report::{distance_matrix_csv, format_number, orbit_csv, trajectory_csv, unit_csv};
use phasetorus::sequence::parse_pc_list;
use phasetorus::{
    distance_table, nearest_neighbors, nearest_on_path, parse_sequence, run_analysis,
    AnalysisOptions, AngleUnit, GesturePath, PathMode, PcDistribution, SpectralUnit,
    TorusSelection, UnitOrder,
};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

impl From<phasetorus::Error> for CliError {
    fn from(e: phasetorus::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

/// Fourier phase tori of pitch-class sets.
#[derive(Debug, Parser)]
#[command(name = "phasetorus", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Magnitude, phase and locus tables for a chord list
    Analyze(AnalyzeArgs),
    /// Torus distance matrix, or the nearest neighbours of one chord
    Distance(DistanceArgs),
    /// Sample a continuous transposition path on the torus
    Path(PathArgs),
    /// Spectral unit carrying one pc-set onto a homometric one
    Unit(UnitArgs),
    /// Iterate a spectral unit and classify the results
    Orbit(OrbitArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Table {
    Phases,
    Magnitudes,
    Loci,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Number of pitch classes
    #[arg(long, default_value_t = 12)]
    modulus: usize,
    /// Torus coefficients, e.g. `3,5`
    #[arg(long, value_name = "J,K")]
    select: Option<String>,
    /// Metric weights for the two coordinates, e.g. `1,0.7365`
    #[arg(long, value_name = "WJ,WK")]
    weights: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file (stdout when absent)
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Print CSV angles in degrees
    #[arg(long)]
    degrees: bool,
}

#[derive(Debug, Args)]
pub struct ChordSource {
    /// Chord file, one `label: pc[,pc...]` per line
    input: Option<PathBuf>,
    /// The 24 major and minor triads
    #[arg(long)]
    triads: bool,
    /// The 12 major scales
    #[arg(long)]
    diatonic: bool,
    /// The 4 augmented triads
    #[arg(long)]
    augmented: bool,
    /// The 12 diminished triads
    #[arg(long)]
    diminished: bool,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    source: ChordSource,
    #[command(flatten)]
    common: Common,
    /// Which CSV table to write
    #[arg(long, value_enum, default_value_t = Table::Phases)]
    table: Table,
    /// Include the distance matrix (replaces the table in CSV output)
    #[arg(long)]
    distance_matrix: bool,
    /// Sample each chord's transposition path at this resolution (JSON only)
    #[arg(long, value_name = "N")]
    paths: Option<usize>,
}

#[derive(Debug, Args)]
pub struct DistanceArgs {
    #[command(flatten)]
    source: ChordSource,
    #[command(flatten)]
    common: Common,
    /// List the nearest chords to this label instead of the full matrix
    #[arg(long, value_name = "LABEL")]
    neighbors: Option<String>,
    #[arg(long, default_value_t = 3)]
    count: usize,
}

#[derive(Debug, Args)]
pub struct PathArgs {
    #[command(flatten)]
    common: Common,
    /// Base chord, e.g. `0,4,7`
    #[arg(long, default_value = "0,4,7")]
    chord: String,
    /// Rotate only the selected coefficients
    #[arg(long)]
    restricted: bool,
    #[arg(long, default_value_t = 240)]
    resolution: usize,
    /// Report the point of the path closest to this chord instead
    #[arg(long, value_name = "CHORD")]
    nearest: Option<String>,
}

#[derive(Debug, Args)]
pub struct UnitArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    from: String,
    #[arg(long)]
    to: String,
    /// Phase used where both spectra vanish
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    zero_policy: f64,
    /// Take the k-th root of the unit
    #[arg(long)]
    root: Option<u32>,
    #[arg(long, default_value_t = 10_000)]
    max_order: u64,
}

#[derive(Debug, Args)]
pub struct OrbitArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    from: String,
    #[arg(long)]
    to: String,
    /// Starting chord (defaults to --from)
    #[arg(long)]
    start: Option<String>,
    #[arg(long, default_value_t = 12)]
    steps: usize,
    #[arg(long)]
    root: Option<u32>,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    zero_policy: f64,
}

pub fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Analyze(a) => analyze(a),
        Command::Distance(a) => distance(a),
        Command::Path(a) => path(a),
        Command::Unit(a) => unit(a),
        Command::Orbit(a) => orbit(a),
    }
}

fn parse_pair<T: std::str::FromStr>(text: &str, what: &str) -> CliResult<(T, T)> {
    let bad = || CliError::Usage(format!("--{what} expects two comma-separated values, got `{text}`"));
    let (a, b) = text.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

impl Common {
    fn angle_unit(&self) -> AngleUnit {
        if self.degrees {
            AngleUnit::Degrees
        } else {
            AngleUnit::Radians
        }
    }

    fn selection(&self) -> CliResult<Option<TorusSelection>> {
        let base = match &self.select {
            Some(s) => {
                let (j, k) = parse_pair(s, "select")?;
                Some(TorusSelection::new(j, k))
            }
            None => None,
        };
        let sel = match (&self.weights, base) {
            (Some(w), base) => {
                let (wj, wk) = parse_pair(w, "weights")?;
                Some(base.unwrap_or_default().with_weights(wj, wk)?)
            }
            (None, base) => base,
        };
        if let Some(sel) = &sel {
            sel.validate(self.modulus)?;
        }
        Ok(sel)
    }

    fn chord(&self, text: &str) -> CliResult<PcDistribution> {
        let weights = parse_pc_list(text, self.modulus).map_err(CliError::Usage)?;
        Ok(PcDistribution::weighted(
            weights.into_iter().map(|(pc, w)| (pc as i64, w)),
            self.modulus,
        )?)
    }

    fn emit(&self, text: &str) -> CliResult<()> {
        match &self.out {
            Some(path) => fs::write(path, text)
                .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
            None => {
                let mut stdout = io::stdout().lock();
                stdout
                    .write_all(text.as_bytes())
                    .and_then(|_| stdout.flush())
                    .map_err(|e| CliError::Io(e.to_string()))
            }
        }
    }
}

impl ChordSource {
    fn load(&self, modulus: usize) -> CliResult<Vec<LabeledChord>> {
        let mut chords = Vec::new();
        if let Some(path) = &self.input {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
            let entries = parse_sequence(&text, modulus)
                .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            for e in entries {
                chords.push(e.to_labeled(modulus)?);
            }
        }
        let generators = [
            (self.triads, consonant_triads as fn() -> Vec<LabeledChord>),
            (self.diatonic, diatonic_scales),
            (self.augmented, augmented_triads),
            (self.diminished, diminished_triads),
        ];
        for (on, make) in generators {
            if on {
                if modulus != 12 {
                    return Err(CliError::Usage("builtin chord sets need --modulus 12".into()));
                }
                chords.extend(make());
            }
        }
        if chords.is_empty() {
            return Err(CliError::Usage("no chords: give an input file or a generator flag".into()));
        }
        for (i, c) in chords.iter().enumerate() {
            if chords[..i].iter().any(|d| d.label == c.label) {
                return Err(CliError::Usage(format!("duplicate label `{}`", c.label)));
            }
        }
        Ok(chords)
    }
}

fn to_json(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json value serializes");
    s.push('\n');
    s
}

fn analyze(args: AnalyzeArgs) -> CliResult<()> {
    let common = &args.common;
    let chords = args.source.load(common.modulus)?;
    let options = AnalysisOptions {
        selection: common.selection()?,
        distance_matrix: args.distance_matrix,
        path_resolution: args.paths,
    };
    let report = run_analysis(&chords, &options)?;
    let text = match common.format {
        Format::Json => {
            let mut s = report.to_json();
            s.push('\n');
            s
        }
        Format::Csv if args.distance_matrix => report.distance_csv().expect("matrix requested"),
        Format::Csv => match args.table {
            Table::Phases => report.phase_table_csv(common.angle_unit()),
            Table::Magnitudes => report.magnitude_table_csv(),
            Table::Loci => report.loci_csv(common.angle_unit()),
        },
    };
    common.emit(&text)
}

fn distance(args: DistanceArgs) -> CliResult<()> {
    let common = &args.common;
    let chords = args.source.load(common.modulus)?;
    let sel = common.selection()?.unwrap_or_default();
    sel.validate(common.modulus)?;
    let text = if let Some(target) = &args.neighbors {
        let near = nearest_neighbors(&chords, target, args.count, &sel)?;
        match common.format {
            Format::Csv => {
                let mut s = String::from("label,distance\n");
                for (l, d) in &near {
                    s.push_str(&format!("{l},{}\n", format_number(*d)));
                }
                s
            }
            Format::Json => to_json(&json!({
                "target": target,
                "selection": sel,
                "neighbors": near.iter().map(|(l, d)| json!({"label": l, "distance": d})).collect::<Vec<_>>(),
            })),
        }
    } else {
        let dists: Vec<&PcDistribution> = chords.iter().map(|c| &c.distribution).collect();
        let matrix = distance_table(&dists, &sel)?;
        let labels: Vec<&str> = chords.iter().map(|c| c.label.as_str()).collect();
        match common.format {
            Format::Csv => distance_matrix_csv(&labels, &matrix),
            Format::Json => to_json(&json!({
                "selection": sel,
                "labels": labels,
                "matrix": matrix,
            })),
        }
    };
    common.emit(&text)
}

fn path(args: PathArgs) -> CliResult<()> {
    let common = &args.common;
    let sel = common.selection()?.unwrap_or_default();
    let base = common.chord(&args.chord)?;
    let mode = if args.restricted {
        PathMode::Restricted(sel)
    } else {
        PathMode::FullRotation
    };
    let path = GesturePath::new(base, mode, args.resolution)?;

    if let Some(target) = &args.nearest {
        let hit = nearest_on_path(&common.chord(target)?, &path, &sel)?;
        let text = match common.format {
            Format::Csv => format!(
                "t_star,distance\n{},{}\n",
                format_number(hit.t),
                format_number(hit.distance)
            ),
            Format::Json => to_json(&json!({
                "selection": sel,
                "t_star": hit.t,
                "distance": hit.distance,
                "distribution": path.distribution_at(hit.t).real_parts(),
            })),
        };
        return common.emit(&text);
    }

    let samples = phasetorus::path_polyline(&path, &sel)?;
    let text = match common.format {
        Format::Csv => trajectory_csv(&samples, &sel, common.angle_unit()),
        Format::Json => to_json(&json!({
            "selection": sel,
            "mode": path.mode(),
            "samples": samples,
            "winding": phasetorus::winding_numbers(&samples),
        })),
    };
    common.emit(&text)
}

fn build_unit(common: &Common, from: &str, to: &str, zero_policy: f64, root: Option<u32>) -> CliResult<SpectralUnit> {
    let (a, b) = (common.chord(from)?, common.chord(to)?);
    let u = SpectralUnit::between(&a, &b, zero_policy)?;
    Ok(match root {
        Some(k) => u.root(k)?,
        None => u,
    })
}

fn unit(args: UnitArgs) -> CliResult<()> {
    let common = &args.common;
    let u = build_unit(common, &args.from, &args.to, args.zero_policy, args.root)?;
    let order = u.order(args.max_order);
    let text = match common.format {
        Format::Csv => {
            match order {
                UnitOrder::Finite(n) => eprintln!("order: {n}"),
                UnitOrder::ExceedsMax => eprintln!("order: exceeds {}", args.max_order),
            }
            unit_csv(&u, common.angle_unit())
        }
        Format::Json => to_json(&json!({
            "coeffs": u.coeffs().iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
            "phases": u.phases(),
            "order": match order {
                UnitOrder::Finite(n) => json!(n),
                UnitOrder::ExceedsMax => json!(null),
            },
            "max_order": args.max_order,
        })),
    };
    common.emit(&text)
}

fn orbit(args: OrbitArgs) -> CliResult<()> {
    let common = &args.common;
    let u = build_unit(common, &args.from, &args.to, args.zero_policy, args.root)?;
    let start = common.chord(args.start.as_deref().unwrap_or(&args.from))?;
    let steps = u.orbit(&start, args.steps)?;
    let text = match common.format {
        Format::Csv => orbit_csv(&steps),
        Format::Json => to_json(&json!({
            "genuine": steps.iter().filter(|s| s.class.is_genuine()).count(),
            "generalized": steps.iter().filter(|s| !s.class.is_genuine()).count(),
            "steps": steps,
        })),
    };
    common.emit(&text)
}
