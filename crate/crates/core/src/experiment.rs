//! Experiment records, CSV persistence and grid sweeps.

use std::fs::OpenOptions;
use std::io::{self, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::distance::all_pairs_distances;
use crate::graph::generate_er;
use crate::resolving::Mode;
use crate::solvers::{solve_resolving, Method, SolveResult, SolveWarning};
use crate::theory::{dim_asymptotic, edim_asymptotic, q_of};

pub const SCHEMA_VERSION: u32 = 1;

/// One completed unit of work. Field order is the CSV column order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentRecord {
    pub schema_version: u32,
    pub command: String,
    pub n: usize,
    pub p: f64,
    pub seed: u64,
    pub method: Method,
    pub mode: Mode,
    pub result_size: Option<usize>,
    pub optimal: Option<bool>,
    pub theory_edim_asym: Option<f64>,
    pub theory_dim_asym: Option<f64>,
    pub q: f64,
    /// `result_size` over the asymptotic size for `mode`.
    pub ratio: Option<f64>,
    pub wall_time_ms: f64,
    pub error: String,
    pub extra: String,
}

pub const CSV_HEADER: [&str; 16] = [
    "schema_version",
    "command",
    "n",
    "p",
    "seed",
    "method",
    "mode",
    "result_size",
    "optimal",
    "theory_edim_asym",
    "theory_dim_asym",
    "q",
    "ratio",
    "wall_time_ms",
    "error",
    "extra",
];

pub fn wall_ms(d: std::time::Duration) -> f64 {
    (d.as_secs_f64() * 1e6).round() / 1e3
}

impl ExperimentRecord {
    pub fn from_outcome(
        command: &str,
        n: usize,
        p: f64,
        seed: u64,
        method: Method,
        mode: Mode,
        outcome: Result<&SolveResult, String>,
    ) -> Self {
        let edim = edim_asymptotic(n as u64, p).ok();
        let dim = dim_asymptotic(n as u64, p).ok();
        let asym = match mode {
            Mode::Vertex => dim,
            Mode::Edge => edim,
        };
        let mut record = ExperimentRecord {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            n,
            p,
            seed,
            method,
            mode,
            result_size: None,
            optimal: None,
            theory_edim_asym: edim,
            theory_dim_asym: dim,
            q: q_of(p),
            ratio: None,
            wall_time_ms: 0.0,
            error: String::new(),
            extra: String::new(),
        };
        match outcome {
            Ok(r) => {
                record.result_size = Some(r.size);
                record.optimal = Some(r.optimal);
                record.ratio = asym.map(|a| r.size as f64 / a);
                record.wall_time_ms = wall_ms(r.wall_time);
                let mut extra = format!("nodes_explored={}", r.nodes_explored);
                if r.warnings.contains(&SolveWarning::Disconnected) {
                    extra.push_str(";disconnected");
                }
                record.extra = extra;
            }
            Err(e) => record.error = e,
        }
        record
    }
}

/// Writes records with a header line.
pub fn write_csv<W: Write>(records: &[ExperimentRecord], sink: W) -> Result<(), csv::Error> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(sink);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Appends records to `path`, writing the header first if the file is new or
/// empty.
pub fn append_csv(path: &Path, records: &[ExperimentRecord]) -> Result<(), csv::Error> {
    let fresh = std::fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
    let file = OpenOptions::new().create(true).append(true).open(path)?;
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(file);
    if fresh {
        w.write_record(CSV_HEADER)?;
    }
    for r in records {
        w.serialize(r)?;
    }
    w.flush().map_err(csv::Error::from)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeSelection {
    Vertex,
    Edge,
    Both,
}

impl ModeSelection {
    pub fn modes(self) -> &'static [Mode] {
        match self {
            ModeSelection::Vertex => &[Mode::Vertex],
            ModeSelection::Edge => &[Mode::Edge],
            ModeSelection::Both => &[Mode::Vertex, Mode::Edge],
        }
    }
}

impl std::str::FromStr for ModeSelection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "vertex" => Ok(ModeSelection::Vertex),
            "edge" => Ok(ModeSelection::Edge),
            "both" => Ok(ModeSelection::Both),
            other => Err(format!("unknown mode {other:?} (expected both, vertex or edge)")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub n_list: Vec<usize>,
    pub p_list: Vec<f64>,
    pub seeds: Vec<u64>,
    pub modes: ModeSelection,
    pub method: Method,
    pub max_size: Option<usize>,
}

/// Solves every `(n, p, seed, mode)` cell. Cells run concurrently; records
/// come back in grid order (n, then p, then seed, then vertex before edge).
/// A failing cell yields a record with the `error` column set.
pub fn sweep(cfg: &SweepConfig) -> Vec<ExperimentRecord> {
    let cells: Vec<(usize, f64, u64)> = cfg
        .n_list
        .iter()
        .flat_map(|&n| {
            cfg.p_list
                .iter()
                .flat_map(move |&p| cfg.seeds.iter().map(move |&s| (n, p, s)))
        })
        .collect();
    crate::parallel::install(|| {
        cells
            .par_iter()
            .map(|&(n, p, seed)| sweep_cell(cfg, n, p, seed))
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect()
}

fn sweep_cell(cfg: &SweepConfig, n: usize, p: f64, seed: u64) -> Vec<ExperimentRecord> {
    let graph = generate_er(n, p, seed);
    let dm = graph.as_ref().ok().map(all_pairs_distances);
    cfg.modes
        .modes()
        .iter()
        .map(|&mode| {
            let outcome = match (&graph, &dm) {
                (Ok(g), Some(dm)) => {
                    solve_resolving(g, dm, mode, cfg.method, cfg.max_size).map_err(|e| e.to_string())
                }
                (Err(e), _) => Err(e.to_string()),
                _ => unreachable!("distance matrix exists for every generated graph"),
            };
            ExperimentRecord::from_outcome("sweep", n, p, seed, cfg.method, mode, outcome.as_ref().map_err(|e| e.clone()))
        })
        .collect()
}

/// CSV text with the `wall_time_ms` column blanked, for determinism checks.
pub fn strip_wall_time(csv_text: &str) -> io::Result<String> {
    let col = CSV_HEADER.iter().position(|h| *h == "wall_time_ms").expect("column exists");
    let mut out = Vec::new();
    {
        let mut reader = csv::ReaderBuilder::new().has_headers(false).from_reader(csv_text.as_bytes());
        let mut w = csv::Writer::from_writer(&mut out);
        for rec in reader.records() {
            let rec = rec.map_err(io::Error::other)?;
            let fields: Vec<&str> = rec.iter().enumerate().map(|(i, f)| if i == col { "" } else { f }).collect();
            w.write_record(fields).map_err(io::Error::other)?;
        }
        w.flush()?;
    }
    Ok(String::from_utf8(out).expect("CSV is UTF-8"))
}
