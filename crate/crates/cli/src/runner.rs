//! Executes a run configuration and emits its artifacts: one CSV of
//! snapshots, one JSON manifest, and optional SVG plots. All file writes go
//! through write-temp-then-rename; partial outputs are removed on failure.

use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use mfg_core::solvers::{
    solve_potential_dual, solve_potential_primal, solve_reduced_dual, solve_reduced_primal,
    Diagnostics, ProblemKind, SolutionTrace,
};

use crate::config::{OutputFormat, RunConfig};
use crate::csv::{parse_csv, render_csv};
use crate::svg::{render_svg, PlotOptions};
use crate::{CliError, Result};

/// Provenance record of one run: the fully resolved configuration, the
/// realized snapshot times, a diagnostics summary, the tool version and the
/// wall-clock duration. Everything except `duration_ms` is deterministic,
/// and the embedded configuration reproduces the artifacts bit for bit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub config: RunConfig,
    pub realized_snapshot_times: Vec<f64>,
    pub diagnostics: Diagnostics,
    pub duration_ms: u64,
}

/// Paths of the artifacts a run produced.
#[derive(Clone, Debug)]
pub struct RunOutputs {
    pub csv: PathBuf,
    pub manifest: PathBuf,
    pub svg: Option<PathBuf>,
}

pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    std::fs::write(&tmp, bytes)?;
    std::fs::rename(&tmp, path).map_err(|e| {
        let _ = std::fs::remove_file(&tmp);
        CliError::Io(e)
    })
}

/// Solve the configured problem without touching the filesystem.
pub fn solve_from_config(config: &RunConfig) -> Result<SolutionTrace> {
    let model = config.build_model()?;
    let grid = config.build_grid()?;
    let march = config.build_march()?;
    let terminal = config.sample_terminal(&grid)?;
    let trace = match config.problem {
        ProblemKind::ReducedPrimal => solve_reduced_primal(&model, &grid, &march, &terminal)?,
        ProblemKind::ReducedDual => {
            solve_reduced_dual(&model, &grid, &march, &terminal, &config.boundary)?
        }
        ProblemKind::PotentialPrimal => {
            solve_potential_primal(&model, &grid, &march, &terminal, &config.boundary)?
        }
        ProblemKind::PotentialDual => {
            solve_potential_dual(&model, &grid, &march, &terminal, &config.boundary)?
        }
    };
    Ok(trace)
}

/// Execute a run and write its artifacts under the resolved output
/// directory, named after the problem kind.
pub fn run_from_config(config: &RunConfig) -> Result<(RunManifest, RunOutputs)> {
    let started = Instant::now();
    let resolved = config.resolved();
    let trace = solve_from_config(&resolved)?;
    let csv_text = render_csv(&trace)?;

    let dir = resolved.resolved_output_dir();
    std::fs::create_dir_all(&dir)?;
    let stem = resolved.problem.name();
    let outputs = RunOutputs {
        csv: dir.join(format!("{stem}.csv")),
        manifest: dir.join(format!("{stem}.manifest.json")),
        svg: resolved
            .formats()
            .contains(&OutputFormat::Svg)
            .then(|| dir.join(format!("{stem}.svg"))),
    };

    let mut written: Vec<PathBuf> = Vec::new();
    let emit = |written: &mut Vec<PathBuf>| -> Result<RunManifest> {
        write_atomic(&outputs.csv, csv_text.as_bytes())?;
        written.push(outputs.csv.clone());
        if let Some(svg_path) = &outputs.svg {
            let svg = render_svg(
                &parse_csv(&csv_text)?,
                &PlotOptions {
                    columns: None,
                    title: Some(format!("{stem} snapshots")),
                },
            )?;
            write_atomic(svg_path, svg.as_bytes())?;
            written.push(svg_path.clone());
        }
        let manifest = RunManifest {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            config: resolved.clone(),
            realized_snapshot_times: trace.snapshots.iter().map(|(t, _)| *t).collect(),
            diagnostics: trace.diagnostics,
            duration_ms: started.elapsed().as_millis() as u64,
        };
        let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
        write_atomic(&outputs.manifest, json.as_bytes())?;
        written.push(outputs.manifest.clone());
        Ok(manifest)
    };

    match emit(&mut written) {
        Ok(manifest) => Ok((manifest, outputs)),
        Err(e) => {
            for p in written {
                let _ = std::fs::remove_file(p);
            }
            Err(e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::preset_example;
    use std::sync::atomic::{AtomicU32, Ordering};

    static DIR_SEQ: AtomicU32 = AtomicU32::new(0);

    fn temp_dir(tag: &str) -> PathBuf {
        let k = DIR_SEQ.fetch_add(1, Ordering::Relaxed);
        let dir = std::env::temp_dir().join(format!(
            "mfg-runner-{}-{}-{}",
            std::process::id(),
            tag,
            k
        ));
        std::fs::create_dir_all(&dir).unwrap();
        dir
    }

    #[test]
    fn run_writes_csv_and_manifest() {
        let mut cfg = preset_example(1, ProblemKind::ReducedPrimal).unwrap();
        // shrink the horizon so the unit test stays quick
        cfg.time.t_final = 0.01;
        cfg.snapshots = vec![0.0, 0.01];
        let dir = temp_dir("basic");
        cfg.output.directory = Some(dir.clone());
        let (manifest, outputs) = run_from_config(&cfg).unwrap();
        assert!(outputs.csv.exists());
        assert!(outputs.manifest.exists());
        assert!(outputs.svg.is_none());
        assert_eq!(manifest.realized_snapshot_times.len(), 2);
        // CSV: header plus one row per node
        let text = std::fs::read_to_string(&outputs.csv).unwrap();
        assert_eq!(text.lines().count(), cfg.grid.n + 2);
        // manifest parses back and embeds the resolved config
        let parsed: RunManifest =
            serde_json::from_str(&std::fs::read_to_string(&outputs.manifest).unwrap()).unwrap();
        assert_eq!(parsed.config, cfg.resolved());
        let _ = std::fs::remove_dir_all(dir);
    }

    #[test]
    fn svg_format_adds_plot() {
        let mut cfg = preset_example(1, ProblemKind::ReducedPrimal).unwrap();
        cfg.time.t_final = 0.01;
        cfg.snapshots = vec![0.0];
        let dir = temp_dir("svg");
        cfg.output.directory = Some(dir.clone());
        cfg.output.formats = Some(vec![OutputFormat::Csv, OutputFormat::Svg]);
        let (_, outputs) = run_from_config(&cfg).unwrap();
        let svg_path = outputs.svg.unwrap();
        let svg = std::fs::read_to_string(&svg_path).unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("polyline"));
        let _ = std::fs::remove_dir_all(dir);
    }

    #[test]
    fn invalid_preset_fails_before_solving() {
        let mut cfg = preset_example(1, ProblemKind::ReducedPrimal).unwrap();
        cfg.grid.n = 1; // invalid grid
        let err = run_from_config(&cfg).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }
}
