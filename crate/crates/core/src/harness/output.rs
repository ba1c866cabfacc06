//! Output files: `metrics.csv`, `metrics_r<k>.csv`, `snapshot_t<t>.{csv,pgm}`
//! and the resolved `config.toml`.

use std::path::{Path, PathBuf};

use crate::error::{CatError, Result};
use crate::metrics::{CellGrid, MetricsRecord};

use super::run::ExperimentResult;

pub const METRICS_HEADER: [&str; 5] = ["t", "f", "fa", "q0_norm", "w_cell_norm"];

/// Written in place of a normalized value whose reference vanished.
const UNDEFINED: &str = "undefined";

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| UNDEFINED.to_owned(), |x| x.to_string())
}

fn to_csv_string(rows: impl FnOnce(&mut csv::Writer<Vec<u8>>) -> csv::Result<()>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    rows(&mut w).expect("in-memory csv");
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf8 csv")
}

pub fn format_metrics_csv(records: &[MetricsRecord]) -> String {
    to_csv_string(|w| {
        w.write_record(METRICS_HEADER)?;
        for r in records {
            w.write_record([
                r.t.to_string(),
                r.f.to_string(),
                r.fa.to_string(),
                fmt_opt(r.q0_norm),
                fmt_opt(r.w_cell_norm),
            ])?;
        }
        Ok(())
    })
}

/// Long-form exact cell values: `ig,jg,w`.
pub fn format_snapshot_csv(grid: &CellGrid) -> String {
    to_csv_string(|w| {
        w.write_record(["ig", "jg", "w"])?;
        for ig in 0..grid.side() {
            for jg in 0..grid.side() {
                w.write_record([ig.to_string(), jg.to_string(), grid.get(ig, jg).to_string()])?;
            }
        }
        Ok(())
    })
}

/// Cell probabilities as a P2 image: columns are `ig`, rows are `jg` with
/// the largest `jg` on top.
pub fn format_snapshot_pgm(grid: &CellGrid) -> String {
    let side = grid.side();
    crate::pgm::render(side, side, |col, row| grid.get(col, side - 1 - row))
}

pub(crate) fn prepare_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| CatError::io(dir, e))?;
    let probe = dir.join(".write_probe");
    std::fs::write(&probe, b"").map_err(|e| CatError::io(dir, e))?;
    std::fs::remove_file(&probe).map_err(|e| CatError::io(&probe, e))
}

fn write(dir: &Path, name: &str, contents: &str) -> Result<()> {
    let path = dir.join(name);
    std::fs::write(&path, contents).map_err(|e| CatError::io(path, e))
}

pub fn write_outputs(result: &ExperimentResult) -> Result<()> {
    let dir = &result.config.output_dir;
    prepare_dir(dir)?;
    // stored relative to itself so the directory can be re-run in place
    let mut stored = result.config.clone();
    stored.output_dir = PathBuf::from(".");
    write(dir, "config.toml", &stored.to_toml())?;
    write(dir, "metrics.csv", &format_metrics_csv(&result.mean))?;
    for (k, records) in result.per_realization.iter().enumerate() {
        write(
            dir,
            &format!("metrics_r{k}.csv"),
            &format_metrics_csv(records),
        )?;
    }
    for (t, grid) in &result.snapshots {
        write(
            dir,
            &format!("snapshot_t{t}.csv"),
            &format_snapshot_csv(grid),
        )?;
        write(
            dir,
            &format!("snapshot_t{t}.pgm"),
            &format_snapshot_pgm(grid),
        )?;
    }
    Ok(())
}
