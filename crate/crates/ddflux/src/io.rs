//! CSV output and the run summary.
//!
//! Floats are written with the shortest representation that parses back
//! to the same value, so the files round-trip exactly.

use std::fmt::Write as _;
use std::fs::File;
use std::io::Write;
use std::path::Path;

use ddflux_core::diagnostics::StepDiagnostics;

use crate::config::render_config;
use crate::error::RunError;
use crate::run::{Refinement, RunReport};

pub const SOLUTION_HEADER: [&str; 2] = ["x", "u"];
pub const DIAGNOSTICS_HEADER: [&str; 9] = [
    "n",
    "t",
    "mass",
    "l1",
    "l2",
    "linf",
    "bv",
    "energy",
    "entropy_residual_max",
];

fn csv_err(path: &Path) -> impl Fn(csv::Error) -> RunError + '_ {
    move |source| RunError::Csv {
        path: path.to_path_buf(),
        source,
    }
}

fn io_err(path: &Path) -> impl Fn(std::io::Error) -> RunError + '_ {
    move |source| RunError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn write_rows<I>(path: &Path, header: &[&str], rows: I) -> Result<(), RunError>
where
    I: IntoIterator<Item = Vec<String>>,
{
    let mut w = csv::Writer::from_path(path).map_err(csv_err(path))?;
    w.write_record(header).map_err(csv_err(path))?;
    for row in rows {
        w.write_record(&row).map_err(csv_err(path))?;
    }
    w.flush().map_err(io_err(path))
}

/// Writes `x,u` with one row per cell centre.
pub fn emit_solution_csv(report: &RunReport, path: &Path) -> Result<(), RunError> {
    let g = &report.grid;
    let rows = report
        .final_field
        .values()
        .iter()
        .enumerate()
        .map(|(j, u)| vec![g.center(j as isize).to_string(), u.to_string()]);
    write_rows(path, &SOLUTION_HEADER, rows)
}

fn diagnostics_row(d: &StepDiagnostics) -> Vec<String> {
    [
        d.t,
        d.mass,
        d.l1,
        d.l2,
        d.linf,
        d.bv,
        d.energy,
        d.entropy_residual_max,
    ]
    .iter()
    .fold(vec![d.n.to_string()], |mut row, v| {
        row.push(v.to_string());
        row
    })
}

/// Writes one row per step, starting with the initial state.
pub fn emit_diagnostics_csv(report: &RunReport, path: &Path) -> Result<(), RunError> {
    write_rows(
        path,
        &DIAGNOSTICS_HEADER,
        report.diagnostics.iter().map(diagnostics_row),
    )
}

fn check_header(
    path: &Path,
    reader: &mut csv::Reader<File>,
    expected: &[&str],
) -> Result<(), RunError> {
    let header = reader.headers().map_err(csv_err(path))?;
    if header.iter().ne(expected.iter().copied()) {
        let got: Vec<_> = header.iter().collect();
        return Err(RunError::Io {
            path: path.to_path_buf(),
            source: std::io::Error::new(
                std::io::ErrorKind::InvalidData,
                format!(
                    "expected header {}, found {}",
                    expected.join(","),
                    got.join(",")
                ),
            ),
        });
    }
    Ok(())
}

fn parse_field(path: &Path, s: &str) -> Result<f64, RunError> {
    s.parse().map_err(|_| RunError::Io {
        path: path.to_path_buf(),
        source: std::io::Error::new(
            std::io::ErrorKind::InvalidData,
            format!("`{s}` is not a number"),
        ),
    })
}

/// Reads a solution file back as `(x, u)` pairs.
pub fn read_solution_csv(path: &Path) -> Result<Vec<(f64, f64)>, RunError> {
    let mut r = csv::Reader::from_path(path).map_err(csv_err(path))?;
    check_header(path, &mut r, &SOLUTION_HEADER)?;
    r.records()
        .map(|rec| {
            let rec = rec.map_err(csv_err(path))?;
            Ok((parse_field(path, &rec[0])?, parse_field(path, &rec[1])?))
        })
        .collect()
}

pub fn read_diagnostics_csv(path: &Path) -> Result<Vec<StepDiagnostics>, RunError> {
    let mut r = csv::Reader::from_path(path).map_err(csv_err(path))?;
    check_header(path, &mut r, &DIAGNOSTICS_HEADER)?;
    r.records()
        .map(|rec| {
            let rec = rec.map_err(csv_err(path))?;
            let v = |i: usize| parse_field(path, &rec[i]);
            Ok(StepDiagnostics {
                n: v(0)? as usize,
                t: v(1)?,
                mass: v(2)?,
                l1: v(3)?,
                l2: v(4)?,
                linf: v(5)?,
                bv: v(6)?,
                energy: v(7)?,
                entropy_residual_max: v(8)?,
            })
        })
        .collect()
}

/// Human-readable summary; not meant to be parsed.
pub fn summary(report: &RunReport) -> String {
    let mut s = String::new();
    let c = &report.cfl;
    let _ = writeln!(s, "# scenario");
    s.push_str(&render_config(&report.scenario));
    let _ = writeln!(s, "\n# run");
    let _ = writeln!(s, "dx={}", report.grid.dx());
    let _ = writeln!(s, "dt={}", report.dt);
    let _ = writeln!(s, "lambda={}", c.lambda);
    let _ = writeln!(s, "cfl_bound={}", c.active.as_str());
    let _ = writeln!(s, "max_speed={}", c.max_speed);
    let _ = writeln!(s, "steps={}", report.steps);
    let _ = writeln!(s, "final_time={}", report.final_field.time());
    let _ = writeln!(s, "wall_clock_s={:.3}", report.wall_clock.as_secs_f64());
    let a = &report.apriori;
    let _ = writeln!(
        s,
        "apriori sup_l2={} gradient={} time_derivative={} mixed={} second_difference={}",
        a.sup_l2, a.gradient, a.time_derivative, a.mixed, a.second_difference
    );
    let _ = writeln!(s, "\n# structure");
    let _ = writeln!(s, "plateaus={}", report.plateaus.len());
    for p in &report.plateaus {
        let (a, b) = (
            report.grid.face(p.start as isize),
            report.grid.face(p.end as isize),
        );
        let _ = writeln!(
            s,
            "plateau value={} cells={}..{} x=[{a}, {b}]",
            p.value, p.start, p.end
        );
    }
    for t in &report.transitions {
        let _ = writeln!(
            s,
            "transition {} -> {} at x={} (face {})",
            t.left_value, t.right_value, t.x, t.face
        );
    }
    s
}

/// Writes `<name>_solution.csv`, `<name>_diagnostics.csv` and
/// `<name>_summary.txt` into `dir`.
pub fn emit_run(report: &RunReport, dir: &Path, name: &str) -> Result<(), RunError> {
    std::fs::create_dir_all(dir).map_err(io_err(dir))?;
    emit_solution_csv(report, &dir.join(format!("{name}_solution.csv")))?;
    emit_diagnostics_csv(report, &dir.join(format!("{name}_diagnostics.csv")))?;
    let path = dir.join(format!("{name}_summary.txt"));
    let mut f = File::create(&path).map_err(io_err(&path))?;
    f.write_all(summary(report).as_bytes())
        .map_err(io_err(&path))
}

/// Writes every level of a refinement study plus `<name>_refinement.csv`.
pub fn emit_refinement(study: &Refinement, dir: &Path, name: &str) -> Result<(), RunError> {
    for r in &study.reports {
        emit_run(r, dir, &format!("{name}_N{}", r.grid.n_cells()))?;
    }
    let path = dir.join(format!("{name}_refinement.csv"));
    let rows = study
        .differences
        .iter()
        .map(|(c, f, d)| vec![c.to_string(), f.to_string(), d.to_string()]);
    write_rows(&path, &["n_coarse", "n_fine", "l1_difference"], rows)
}
