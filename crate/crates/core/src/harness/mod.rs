//! Experiment pipelines behind the `eccn` command-line tool.

mod commands;
mod manifest;
mod report;

use std::io::Write;
use std::path::Path;

pub use commands::{
    bounds_output, cmd_eval, cmd_generate, cmd_solve, cmd_train, generate_dataset, read_graphs,
    solve_csv, split_samples, BoundsRequest, EvalReport, EvalRow, Generated, SolveMethod,
    SplitSamples, TrainSummary,
};
pub use manifest::{ExperimentManifest, Scenario, DEFAULT_BUDGET, DEFAULT_SIZE_CAP};
pub use report::{
    kellerman_predictions, report_csv, run_cell, run_report, CellSpec, ReportRow, REPORT_HEADER,
};

use crate::error::{Error, Result};

/// Write `bytes` to a sibling temporary file, then rename it over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let name = path
        .file_name()
        .ok_or_else(|| Error::InvalidArgument(format!("not a file path: {}", path.display())))?;
    let tmp = dir.join(format!(
        ".{}.tmp{}",
        name.to_string_lossy(),
        std::process::id()
    ));
    let result = std::fs::File::create(&tmp)
        .and_then(|mut f| {
            f.write_all(bytes)?;
            f.sync_all()
        })
        .and_then(|_| std::fs::rename(&tmp, path));
    if let Err(e) = result {
        let _ = std::fs::remove_file(&tmp);
        return Err(Error::io(path, e));
    }
    Ok(())
}
