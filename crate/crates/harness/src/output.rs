//! Comma-separated output for profiles, convergence tables and peak tracks.
//!
//! Every file has exactly one header line and a fixed column order. Floats
//! are written with 17 significant digits so that parsing a file gives back
//! the in-memory values bit for bit.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use overrelax::analysis::{ConvergenceTable, PeakSample, Snapshot};

pub const PROFILE_HEADER: [&str; 8] = ["snapshot", "step", "time", "x", "w", "z", "y", "u_exact"];
pub const TABLE_HEADER: [&str; 4] = ["N", "dx", "error", "order"];
pub const PEAK_HEADER: [&str; 3] = ["time", "w_peak", "y_peak"];

fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

/// One row per grid point and snapshot.
pub fn emit_profiles<W: Write>(out: W, grid: &[f64], snapshots: &[Snapshot]) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(PROFILE_HEADER)?;
    for (k, snap) in snapshots.iter().enumerate() {
        for (i, &x) in grid.iter().enumerate() {
            writer.write_record([
                k.to_string(),
                snap.step.to_string(),
                fmt(snap.time),
                fmt(x),
                fmt(snap.w[i]),
                fmt(snap.z[i]),
                fmt(snap.y[i]),
                fmt(snap.u_exact[i]),
            ])?;
        }
    }
    writer.flush()?;
    Ok(())
}

/// Inverse of [`emit_profiles`]: the grid and the snapshots.
pub fn read_profiles<R: Read>(input: R) -> Result<(Vec<f64>, Vec<Snapshot>)> {
    let mut reader = csv::Reader::from_reader(input);
    if reader.headers()?.iter().ne(PROFILE_HEADER) {
        bail!("unexpected profile header {:?}", reader.headers()?);
    }
    let mut grid = Vec::new();
    let mut snapshots: Vec<Snapshot> = Vec::new();
    for record in reader.records() {
        let record = record?;
        let field = |i: usize| -> Result<f64> {
            record[i]
                .parse::<f64>()
                .with_context(|| format!("bad number {:?}", &record[i]))
        };
        let index: usize = record[0].parse()?;
        if index == snapshots.len() {
            snapshots.push(Snapshot {
                step: record[1].parse()?,
                time: field(2)?,
                w: Vec::new(),
                z: Vec::new(),
                y: Vec::new(),
                u_exact: Vec::new(),
            });
        } else if index + 1 != snapshots.len() {
            bail!("snapshot index {index} out of order");
        }
        let snap = snapshots.last_mut().expect("pushed above");
        if index == 0 {
            grid.push(field(3)?);
        }
        snap.w.push(field(4)?);
        snap.z.push(field(5)?);
        snap.y.push(field(6)?);
        snap.u_exact.push(field(7)?);
    }
    Ok((grid, snapshots))
}

/// `N, dx, error, order`; the order column is empty for the coarsest row.
pub fn emit_table<W: Write>(out: W, table: &ConvergenceTable) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(TABLE_HEADER)?;
    for row in &table.rows {
        writer.write_record([
            row.n_interior.to_string(),
            fmt(row.dx),
            fmt(row.error),
            row.order.map(fmt).unwrap_or_default(),
        ])?;
    }
    writer.flush()?;
    Ok(())
}

pub fn emit_peaks<W: Write>(out: W, track: &[PeakSample]) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(PEAK_HEADER)?;
    for s in track {
        writer.write_record([fmt(s.time), fmt(s.w_peak), fmt(s.y_peak)])?;
    }
    writer.flush()?;
    Ok(())
}

/// Create `dir/name` and hand it to `emit`.
pub fn write_file(
    dir: &Path,
    name: &str,
    emit: impl FnOnce(File) -> Result<()>,
) -> Result<std::path::PathBuf> {
    std::fs::create_dir_all(dir)
        .with_context(|| format!("cannot create output directory {}", dir.display()))?;
    let path = dir.join(name);
    let file = File::create(&path).with_context(|| format!("cannot write {}", path.display()))?;
    emit(file).with_context(|| format!("while writing {}", path.display()))?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_profiles_are_header_only() {
        let mut buf = Vec::new();
        emit_profiles(&mut buf, &[0.0, 1.0], &[]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "snapshot,step,time,x,w,z,y,u_exact\n");
    }

    #[test]
    fn five_row_table_has_six_lines() {
        let table = ConvergenceTable::from_measurements(
            (5..10)
                .map(|k| ((1 << k) - 1, (-(k as f64)).exp2(), 1.0 / (1 << k) as f64))
                .collect(),
        );
        let mut buf = Vec::new();
        emit_table(&mut buf, &table).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 6);
        assert_eq!(lines[0], "N,dx,error,order");
        assert!(lines[1].starts_with("31,3.1250000000000000e-2,"));
        assert!(lines[1].ends_with(','));
        assert!(lines[2].ends_with("1.0000000000000000e0"));
    }
}
