//! Angle sweeps of all strategies, with CSV and JSON output.
//!
//! Degrees are used for every angle in a [`SweepRow`]; conversion to radians
//! happens in [`degrees_to_theta`].

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measurements::check_theta;
use crate::strategies::{closed_form, Probes, Strategy};

pub const CSV_HEADER: [&str; 10] = [
    "theta_deg",
    "p_single",
    "p_fixed",
    "p_adaptive",
    "p_entangled",
    "p_feedforward",
    "phi_I_fixed",
    "phi_I_adaptive",
    "phi_II0",
    "phi_II1",
];

/// Digits after the decimal point in emitted files.
pub const DECIMALS: usize = 12;

/// One angle of a sweep. Probabilities are dimensionless, angles in degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub theta_deg: f64,
    pub p_single: f64,
    pub p_fixed: f64,
    pub p_adaptive: f64,
    pub p_entangled: f64,
    pub p_feedforward: f64,
    #[serde(rename = "phi_I_fixed")]
    pub phi_i_fixed: f64,
    #[serde(rename = "phi_I_adaptive")]
    pub phi_i_adaptive: f64,
    #[serde(rename = "phi_II0")]
    pub phi_ii0: f64,
    #[serde(rename = "phi_II1")]
    pub phi_ii1: f64,
}

impl SweepRow {
    pub fn values(&self) -> [f64; 10] {
        [
            self.theta_deg,
            self.p_single,
            self.p_fixed,
            self.p_adaptive,
            self.p_entangled,
            self.p_feedforward,
            self.phi_i_fixed,
            self.phi_i_adaptive,
            self.phi_ii0,
            self.phi_ii1,
        ]
    }

    fn from_values(v: [f64; 10]) -> Self {
        Self {
            theta_deg: v[0],
            p_single: v[1],
            p_fixed: v[2],
            p_adaptive: v[3],
            p_entangled: v[4],
            p_feedforward: v[5],
            phi_i_fixed: v[6],
            phi_i_adaptive: v[7],
            phi_ii0: v[8],
            phi_ii1: v[9],
        }
    }

    /// The row as it reads back from an emitted file.
    pub fn rounded(&self) -> Self {
        Self::from_values(
            self.values()
                .map(|v| format_value(v).parse().expect("formatted float")),
        )
    }
}

/// Output file format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::InvalidArgument(format!("unknown format '{other}'"))),
        }
    }
}

/// Validates an angle in degrees and converts it to radians in `[0, pi/2]`.
pub fn degrees_to_theta(deg: f64) -> Result<f64> {
    if !(0.0..=90.0).contains(&deg) {
        return Err(Error::InvalidArgument(format!(
            "angle {deg} degrees is outside [0, 90]"
        )));
    }
    let theta = deg.to_radians().min(std::f64::consts::FRAC_PI_2);
    check_theta(theta)?;
    Ok(theta)
}

/// `steps` equally spaced angles from `start_deg` to `end_deg` inclusive.
pub fn theta_grid(start_deg: f64, end_deg: f64, steps: usize) -> Result<Vec<f64>> {
    degrees_to_theta(start_deg)?;
    degrees_to_theta(end_deg)?;
    if start_deg > end_deg {
        return Err(Error::InvalidArgument(format!(
            "start {start_deg} exceeds end {end_deg}"
        )));
    }
    if steps < 2 {
        return Err(Error::InvalidArgument("steps must be at least 2".into()));
    }
    if start_deg == end_deg {
        return Err(Error::InvalidArgument(
            "start equals end: the sweep would repeat a single angle".into(),
        ));
    }
    let span = end_deg - start_deg;
    Ok((0..steps)
        .map(|k| {
            if k == steps - 1 {
                end_deg
            } else {
                start_deg + span * k as f64 / (steps - 1) as f64
            }
        })
        .collect())
}

/// Closed-form values and probe angles at one angle.
pub fn sweep_row(theta_deg: f64) -> Result<SweepRow> {
    let theta = degrees_to_theta(theta_deg)?;
    let p = |s: Strategy| closed_form::optimize(s, theta).map(|r| r.p_succ);
    let adaptive = closed_form::optimize(Strategy::Adaptive, theta)?;
    let [phi_ii0, phi_ii1] = match &adaptive.probes {
        Probes::Adaptive { second, .. } => second.map(|s| s.real_angle().to_degrees()),
        _ => unreachable!("adaptive optimizer returns adaptive probes"),
    };
    Ok(SweepRow {
        theta_deg,
        p_single: closed_form::single_use_success(theta),
        p_fixed: p(Strategy::Fixed)?,
        p_adaptive: adaptive.p_succ,
        p_entangled: p(Strategy::Entangled)?,
        p_feedforward: p(Strategy::FeedForward)?,
        phi_i_fixed: closed_form::fixed_probe_angle(theta).to_degrees(),
        phi_i_adaptive: closed_form::adaptive_first_angle(theta).to_degrees(),
        phi_ii0,
        phi_ii1,
    })
}

/// One row per grid angle, ascending.
pub fn sweep(start_deg: f64, end_deg: f64, steps: usize) -> Result<Vec<SweepRow>> {
    theta_grid(start_deg, end_deg, steps)?
        .into_iter()
        .map(sweep_row)
        .collect()
}

/// Fixed-point text with [`DECIMALS`] digits after the point.
pub fn format_value(v: f64) -> String {
    let s = format!("{v:.DECIMALS$}");
    match s.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
        _ => s,
    }
}

fn format_err(e: impl std::fmt::Display) -> Error {
    Error::Format(e.to_string())
}

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_HEADER).map_err(format_err)?;
    for row in rows {
        w.write_record(row.values().map(format_value))
            .map_err(format_err)?;
    }
    w.flush().map_err(format_err)
}

/// JSON array of objects with the CSV column names, values rounded as in CSV.
pub fn write_json<W: Write>(rows: &[SweepRow], mut out: W) -> Result<()> {
    let rounded: Vec<SweepRow> = rows.iter().map(SweepRow::rounded).collect();
    serde_json::to_writer_pretty(&mut out, &rounded).map_err(format_err)?;
    out.write_all(b"\n").map_err(format_err)
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<SweepRow>> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers().map_err(format_err)?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(Error::Format(format!("unexpected header {header:?}")));
    }
    r.deserialize().map(|row| row.map_err(format_err)).collect()
}

pub fn read_json<R: Read>(input: R) -> Result<Vec<SweepRow>> {
    serde_json::from_reader(input).map_err(format_err)
}

/// Writes `rows` to `path`, replacing any existing file.
pub fn write_file(rows: &[SweepRow], path: &Path, format: Format) -> Result<()> {
    let io_err = |e: std::io::Error| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    };
    let file = File::create(path).map_err(io_err)?;
    let mut out = BufWriter::new(file);
    match format {
        Format::Csv => write_csv(rows, &mut out)?,
        Format::Json => write_json(rows, &mut out)?,
    }
    out.flush().map_err(io_err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_endpoints_and_validation() {
        let g = theta_grid(0.0, 90.0, 91).unwrap();
        assert_eq!(g.len(), 91);
        assert_eq!(g[45], 45.0);
        assert_eq!(g[90], 90.0);
        assert!(theta_grid(0.0, 0.0, 2).is_err());
        assert!(theta_grid(0.0, 90.0, 1).is_err());
        assert!(theta_grid(10.0, 5.0, 3).is_err());
        assert!(theta_grid(0.0, 91.0, 3).is_err());
        assert!(theta_grid(-1.0, 10.0, 3).is_err());
    }

    #[test]
    fn right_angle_converts_exactly() {
        assert_eq!(degrees_to_theta(90.0).unwrap(), std::f64::consts::FRAC_PI_2);
    }

    #[test]
    fn formatting() {
        assert_eq!(format_value(1.0), "1.000000000000");
        assert_eq!(format_value(0.9330127018922193), "0.933012701892");
        assert_eq!(format_value(-1e-15), "0.000000000000");
        assert_eq!(format_value(-3.5), "-3.500000000000");
    }

    #[test]
    fn feedforward_is_one_at_forty_five() {
        let row = sweep_row(45.0).unwrap();
        assert_eq!(format_value(row.p_feedforward), "1.000000000000");
    }

    #[test]
    fn csv_layout() {
        let rows = sweep(0.0, 90.0, 3).unwrap();
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.split('\n');
        assert_eq!(lines.next().unwrap(), CSV_HEADER.join(","));
        assert!(!text.contains('\r'));
        assert_eq!(text.lines().count(), 4);
        assert!(text.lines().nth(2).unwrap().starts_with("45.000000000000,"));
    }

    #[test]
    fn json_mirrors_csv() {
        let rows = sweep(10.0, 20.0, 2).unwrap();
        let mut buf = Vec::new();
        write_json(&rows, &mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        let obj = v[0].as_object().unwrap();
        let keys: Vec<&str> = obj.keys().map(String::as_str).collect();
        let mut expected = CSV_HEADER.to_vec();
        expected.sort_unstable();
        let mut keys_sorted = keys.clone();
        keys_sorted.sort_unstable();
        assert_eq!(keys_sorted, expected);
        assert_eq!(read_json(buf.as_slice()).unwrap()[1], rows[1].rounded());
    }

    #[test]
    fn second_probe_angles_differ_inside() {
        for row in sweep(1.0, 89.0, 89).unwrap() {
            assert!(
                (row.phi_ii0 - row.phi_ii1).abs() > 1e-3,
                "{}",
                row.theta_deg
            );
        }
    }

    #[test]
    fn bad_header_rejected() {
        let text = "a,b\n1,2\n";
        assert!(read_csv(text.as_bytes()).is_err());
    }
}
