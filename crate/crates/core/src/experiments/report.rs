//! CSV rendering of sweep summaries.
//!
//! Floats are written in shortest round-trip form, so parsing a report gives
//! back exactly the numbers it was written from. Zero power shows up as
//! `-inf` dBm. A missing brute-force reference leaves the gap cell empty.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::run::SweepPoint;
use super::summary::summarize;

pub const CSV_HEADER: [&str; 9] = [
    "sweep_var",
    "scheme",
    "method",
    "mean_power_dbm",
    "std_dbm",
    "win_rate_vs_tdma",
    "gap_vs_bruteforce_db",
    "trials",
    "seed",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    /// Value of the swept variable at this point.
    pub sweep_var: f64,
    pub scheme: String,
    pub method: String,
    pub mean_power_dbm: f64,
    pub std_dbm: f64,
    pub win_rate_vs_tdma: f64,
    pub gap_vs_bruteforce_db: Option<f64>,
    pub trials: usize,
    pub seed: u64,
}

/// One row per (sweep value, scheme, method), in sweep order, then scheme
/// order, then method order.
pub fn sweep_rows(points: &[SweepPoint], seed: u64) -> Result<Vec<ReportRow>> {
    let mut rows = Vec::new();
    for point in points {
        let summary = summarize(&point.records)?;
        rows.extend(summary.rows.into_iter().map(|s| ReportRow {
            sweep_var: point.value,
            scheme: s.access.name().to_owned(),
            method: s.method.name().to_owned(),
            mean_power_dbm: s.mean_power_dbm,
            std_dbm: s.std_dbm,
            win_rate_vs_tdma: s.win_rate_vs_tdma,
            gap_vs_bruteforce_db: s.gap_vs_bruteforce_db,
            trials: s.trials,
            seed,
        }));
    }
    Ok(rows)
}

fn csv_error(e: csv::Error) -> Error {
    Error::Csv(e.to_string())
}

pub fn write_csv<W: Write>(rows: &[ReportRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    w.write_record(CSV_HEADER).map_err(csv_error)?;
    for row in rows {
        w.serialize(row).map_err(csv_error)?;
    }
    w.flush().map_err(|e| Error::Csv(e.to_string()))
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<ReportRow>> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers().map_err(csv_error)?;
    if header.iter().ne(CSV_HEADER) {
        return Err(Error::Csv(format!("unexpected header {header:?}")));
    }
    r.deserialize().map(|row| row.map_err(csv_error)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::IrsConfig;
    use crate::experiments::run::run_sweep;
    use crate::experiments::scenario::{DeploymentCase, Scenario, SweepSpec, SweepVariable};
    use crate::solvers::Method;

    fn sweep(methods: &[Method]) -> Vec<SweepPoint> {
        let mut s = Scenario::defaults(DeploymentCase::Case1);
        s.irs = IrsConfig::new(12, 3, 4).unwrap();
        s.trials = 6;
        let spec = SweepSpec::new(SweepVariable::CommonRate, vec![0.0, 1.0, 2.5], 4.0).unwrap();
        run_sweep(&s, &spec, methods).unwrap()
    }

    fn render(rows: &[ReportRow]) -> Vec<u8> {
        let mut buf = Vec::new();
        write_csv(rows, &mut buf).unwrap();
        buf
    }

    #[test]
    fn round_trip_is_exact() {
        let rows = sweep_rows(&sweep(&Method::ALL), 7).unwrap();
        let text = render(&rows);
        assert_eq!(read_csv(text.as_slice()).unwrap(), rows);
    }

    #[test]
    fn layout_and_sentinel() {
        let rows = sweep_rows(&sweep(&[Method::BruteForce, Method::LaAo]), 7).unwrap();
        assert_eq!(rows.len(), 3 * 3 * 3);
        let text = String::from_utf8(render(&rows)).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER.join(","));
        let first: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(&first[..4], ["0.0", "noma", "brute", "-inf"]);
        let methods: Vec<&str> = text
            .lines()
            .skip(1)
            .take(3)
            .map(|l| l.split(',').nth(2).unwrap())
            .collect();
        assert_eq!(methods, ["brute", "la-ao", "no-irs"]);
    }

    #[test]
    fn gap_is_blank_without_brute_force() {
        let rows = sweep_rows(&sweep(&[Method::LaAo]), 1).unwrap();
        assert!(rows.iter().all(|r| r.gap_vs_bruteforce_db.is_none()));
        let text = render(&rows);
        assert_eq!(read_csv(text.as_slice()).unwrap(), rows);
        let line = String::from_utf8(text)
            .unwrap()
            .lines()
            .nth(4)
            .unwrap()
            .to_owned();
        assert_eq!(line.split(',').nth(6), Some(""));
    }

    #[test]
    fn bad_header_is_rejected() {
        assert!(read_csv("a,b\n1,2\n".as_bytes()).is_err());
    }
}
