//! Experiment runner: loads a circuit file, evaluates it on the unbinned or
//! time-bin back-end over a list of bin counts, and reads and writes the
//! resulting CSV reports.
//!
//! CSV columns are `n,coincidence,bunching,scattered,fidelity,wall_time_ms`,
//! with every number printed to 12 significant digits. With timing disabled
//! the last column is `0` and repeated runs produce byte-identical files.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use bosonsim::circuit::{parse, run_ideal, CircuitError, CircuitIR};
use bosonsim::timebin::{binned_report, fit_power_law, logical_report, BinnedLayout, FitError, PowerFit, ScatteringModel};
use rayon::prelude::*;
use serde::Deserialize;
use thiserror::Error;

pub const CSV_HEADER: [&str; 6] = ["n", "coincidence", "bunching", "scattered", "fidelity", "wall_time_ms"];

#[derive(Debug, Error)]
pub enum XpError {
    #[error("{}: file not found", .0.display())]
    NotFound(PathBuf),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}", render_diagnostics(path, source))]
    Circuit { path: PathBuf, source: CircuitError },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Sim(#[from] bosonsim::Error),
    #[error("{}: {source}", path.display())]
    Csv { path: PathBuf, source: csv::Error },
    #[error("fit failed: {0}")]
    Fit(String),
}

impl XpError {
    /// 2 for missing files, bad circuits and bad configuration, 3 when a
    /// numeric cap is exceeded, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            XpError::NotFound(_) | XpError::Circuit { .. } | XpError::Config(_) => 2,
            XpError::Sim(e) if e.is_cap_exceeded() => 3,
            _ => 1,
        }
    }
}

fn render_diagnostics(path: &Path, err: &CircuitError) -> String {
    let mut out = String::new();
    for (k, d) in err.diagnostics().iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        match d.line {
            Some(line) => write!(out, "{}:{line}: {}", path.display(), d.message),
            None => write!(out, "{}: {}", path.display(), d.message),
        }
        .unwrap();
    }
    out
}

pub type Result<T> = std::result::Result<T, XpError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Ideal,
    Binned,
}

impl FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ideal" => Ok(Backend::Ideal),
            "binned" => Ok(Backend::Binned),
            other => Err(format!("unknown backend '{other}', expected 'ideal' or 'binned'")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub circuit_path: PathBuf,
    pub backend: Backend,
    pub n_list: Vec<usize>,
    pub p_scatter: f64,
    pub output_path: Option<PathBuf>,
    /// Accepted for reproducibility bookkeeping; every run is deterministic.
    pub seed: u64,
    /// When false, `wall_time_ms` is written as 0.
    pub timing: bool,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.p_scatter) {
            return Err(XpError::Config(format!("p-scatter {} is outside [0, 1]", self.p_scatter)));
        }
        if self.backend == Backend::Binned {
            if self.n_list.is_empty() {
                return Err(XpError::Config("the binned backend needs a non-empty n list".into()));
            }
            if self.n_list[0] == 0 {
                return Err(XpError::Config("bin counts must be positive".into()));
            }
            if self.n_list.windows(2).any(|w| w[0] >= w[1]) {
                return Err(XpError::Config("the n list must be strictly ascending".into()));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Deserialize)]
pub struct ReportRow {
    pub n: usize,
    pub coincidence: f64,
    pub bunching: f64,
    pub scattered: f64,
    pub fidelity: f64,
    pub wall_time_ms: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Column {
    Coincidence,
    Bunching,
    Scattered,
    Fidelity,
    WallTime,
}

impl Column {
    pub fn name(self) -> &'static str {
        match self {
            Column::Coincidence => "coincidence",
            Column::Bunching => "bunching",
            Column::Scattered => "scattered",
            Column::Fidelity => "fidelity",
            Column::WallTime => "wall_time_ms",
        }
    }

    pub fn get(self, row: &ReportRow) -> f64 {
        match self {
            Column::Coincidence => row.coincidence,
            Column::Bunching => row.bunching,
            Column::Scattered => row.scattered,
            Column::Fidelity => row.fidelity,
            Column::WallTime => row.wall_time_ms,
        }
    }
}

impl FromStr for Column {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        [Column::Coincidence, Column::Bunching, Column::Scattered, Column::Fidelity, Column::WallTime]
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| format!("unknown column '{s}'"))
    }
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| match source.kind() {
        std::io::ErrorKind::NotFound => XpError::NotFound(path.to_path_buf()),
        _ => XpError::Io { path: path.to_path_buf(), source },
    })
}

pub fn load_circuit(path: &Path) -> Result<CircuitIR> {
    let text = read_text(path)?;
    parse(&text).map_err(|source| XpError::Circuit { path: path.to_path_buf(), source })
}

/// Evaluates the configured experiment. The ideal backend yields a single row
/// with `n = 1`; the binned backend one row per bin count, computed in
/// parallel and returned in the order of `n_list`.
pub fn run(config: &RunConfig) -> Result<Vec<ReportRow>> {
    config.validate()?;
    let ir = load_circuit(&config.circuit_path)?;
    let elapsed = |start: Instant| if config.timing { start.elapsed().as_secs_f64() * 1e3 } else { 0.0 };
    match config.backend {
        Backend::Ideal => {
            let start = Instant::now();
            let state = run_ideal(&ir)?.into_state()?;
            let layout = BinnedLayout::new(ir.mode_count, 1)?;
            let report = logical_report(&state, &state, &layout)?;
            Ok(vec![row(report, elapsed(start))])
        }
        Backend::Binned => {
            let model = ScatteringModel::from_probability(config.p_scatter)?;
            config
                .n_list
                .par_iter()
                .map(|&n| {
                    let start = Instant::now();
                    let report = binned_report(&ir, n, &model)?;
                    Ok(row(report, elapsed(start)))
                })
                .collect()
        }
    }
}

fn row(r: bosonsim::timebin::HomReport, wall_time_ms: f64) -> ReportRow {
    ReportRow {
        n: r.n,
        coincidence: r.coincidence_probability,
        bunching: r.bunching_probability,
        scattered: r.scattered_probability,
        fidelity: r.fidelity_to_ideal,
        wall_time_ms,
    }
}

/// Formats like C's `%.12g`: 12 significant digits, trailing zeros removed,
/// exponent form outside `[1e-4, 1e12)`. Zero of either sign prints `0`.
pub fn format_g12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').unwrap();
    let exp: i32 = exp.parse().unwrap();
    if !(-4..12).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs());
    }
    let decimals = (11 - exp) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn rows_to_csv(rows: &[ReportRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).unwrap();
    for r in rows {
        let fields = [r.coincidence, r.bunching, r.scattered, r.fidelity, r.wall_time_ms].map(format_g12);
        w.write_record(std::iter::once(r.n.to_string()).chain(fields)).unwrap();
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

/// Writes the report in one piece, so a failed run never leaves a partial file.
pub fn write_csv(rows: &[ReportRow], path: &Path) -> Result<()> {
    std::fs::write(path, rows_to_csv(rows)).map_err(|source| XpError::Io { path: path.to_path_buf(), source })
}

pub fn read_csv(path: &Path) -> Result<Vec<ReportRow>> {
    let text = read_text(path)?;
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    reader
        .deserialize()
        .collect::<std::result::Result<Vec<ReportRow>, _>>()
        .map_err(|source| XpError::Csv { path: path.to_path_buf(), source })
}

/// Least-squares fit of `log(column)` against `log(n)`.
pub fn fit_scaling(rows: &[ReportRow], column: Column) -> Result<PowerFit> {
    if rows.len() < 3 {
        return Err(XpError::Fit(format!("need at least 3 rows, found {}", rows.len())));
    }
    let xs: Vec<f64> = rows.iter().map(|r| r.n as f64).collect();
    let ys: Vec<f64> = rows.iter().map(|r| column.get(r)).collect();
    fit_power_law(&xs, &ys).map_err(|e| match e {
        FitError::NonPositive { index, .. } => XpError::Fit(format!(
            "row {} (n = {}): {} = {} is not positive",
            index + 1,
            rows[index].n,
            column.name(),
            ys[index]
        )),
        other => XpError::Fit(other.to_string()),
    })
}

/// Optional TOML configuration. Relative paths resolve against the file's
/// directory.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub circuit: Option<PathBuf>,
    pub backend: Option<Backend>,
    pub n: Option<Vec<usize>>,
    pub p_scatter: Option<f64>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub timing: Option<bool>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = read_text(path)?;
        let mut cfg: FileConfig =
            toml::from_str(&text).map_err(|e| XpError::Config(format!("{}: {}", path.display(), e.message())))?;
        let base = path.parent().unwrap_or(Path::new(""));
        for p in [&mut cfg.circuit, &mut cfg.out].into_iter().flatten() {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g12_matches_printf() {
        let cases = [
            (1.0, "1"),
            (0.5, "0.5"),
            (0.25, "0.25"),
            (1.0 / 3.0, "0.333333333333"),
            (2.0 / 3.0, "0.666666666667"),
            (0.765625, "0.765625"),
            (1e-5, "1e-05"),
            (1.5e-17, "1.5e-17"),
            (0.0001, "0.0001"),
            (123456789012.0, "123456789012"),
            (1234567890123.0, "1.23456789012e+12"),
            (0.99999999999999, "1"),
            (-0.0, "0"),
            (-2.5, "-2.5"),
        ];
        for (x, want) in cases {
            assert_eq!(format_g12(x), want, "{x:e}");
        }
    }

    #[test]
    fn config_validation() {
        let mut c = RunConfig {
            circuit_path: "x".into(),
            backend: Backend::Binned,
            n_list: vec![1, 2, 4],
            p_scatter: 1.0,
            output_path: None,
            seed: 0,
            timing: false,
        };
        assert!(c.validate().is_ok());
        c.n_list = vec![2, 1];
        assert_eq!(c.validate().unwrap_err().exit_code(), 2);
        c.n_list = vec![];
        assert!(c.validate().is_err());
        c.backend = Backend::Ideal;
        assert!(c.validate().is_ok());
        c.p_scatter = 1.5;
        assert!(c.validate().is_err());
    }

    #[test]
    fn csv_round_trip() {
        let rows = vec![
            ReportRow { n: 1, coincidence: 0.0, bunching: 0.0, scattered: 1.0, fidelity: 0.0, wall_time_ms: 0.0 },
            ReportRow { n: 3, coincidence: 1e-20, bunching: 2.0 / 3.0, scattered: 1.0 / 3.0, fidelity: 0.4, wall_time_ms: 1.25 },
        ];
        let text = rows_to_csv(&rows);
        assert!(text.starts_with("n,coincidence,bunching,scattered,fidelity,wall_time_ms\n1,0,0,1,0,0\n3,1e-20,"));
        let back: Vec<ReportRow> = csv::Reader::from_reader(text.as_bytes()).deserialize().collect::<std::result::Result<_, _>>().unwrap();
        assert_eq!(back.len(), 2);
        assert!((back[1].scattered - 1.0 / 3.0).abs() < 1e-12);
    }
}
