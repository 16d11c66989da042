//! Trajectory CSV output.
//!
//! Header plus one row per grid point, comma separated, LF line endings, no
//! padding. Every number is written in scientific notation with 17
//! significant digits, which round-trips `f64` exactly.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::trajectory::{Trajectory, TrajectoryPoint};

pub const COLUMNS: [&str; 14] = [
    "t", "a1_re", "a1_im", "a2_re", "a2_im", "c1_re", "c1_im", "c2_re", "c2_im", "f_re", "f_im",
    "W", "P", "W_over_P",
];

/// One parsed (or to-be-written) row, in [`COLUMNS`] order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CsvRecord(pub [f64; 14]);

impl CsvRecord {
    pub fn from_point(p: &TrajectoryPoint) -> Self {
        Self([
            p.t,
            p.a[0].re,
            p.a[0].im,
            p.a[1].re,
            p.a[1].im,
            p.c[0].re,
            p.c[0].im,
            p.c[1].re,
            p.c[1].im,
            p.f.re,
            p.f.im,
            p.w,
            p.p,
            p.w_over_p(),
        ])
    }

    pub fn t(&self) -> f64 {
        self.0[0]
    }

    pub fn w(&self) -> f64 {
        self.0[11]
    }

    /// Bitwise equality, so `NaN` rows compare equal to themselves.
    pub fn bit_eq(&self, other: &Self) -> bool {
        self.0
            .iter()
            .zip(&other.0)
            .all(|(a, b)| a.to_bits() == b.to_bits())
    }
}

fn write_number<W: Write>(out: &mut W, v: f64) -> std::io::Result<()> {
    write!(out, "{v:.16e}")
}

/// Write `traj` as CSV to `out`.
pub fn write_csv<W: Write>(traj: &Trajectory, out: &mut W) -> std::io::Result<()> {
    writeln!(out, "{}", COLUMNS.join(","))?;
    for p in &traj.points {
        let rec = CsvRecord::from_point(p);
        for (i, v) in rec.0.iter().enumerate() {
            if i > 0 {
                out.write_all(b",")?;
            }
            write_number(out, *v)?;
        }
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn to_csv_string(traj: &Trajectory) -> String {
    let mut buf = Vec::with_capacity(traj.len() * 14 * 24 + 128);
    write_csv(traj, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("CSV output is ASCII")
}

/// Write `traj` to the file at `path`.
pub fn emit_csv(traj: &Trajectory, path: &Path) -> Result<()> {
    let io = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = File::create(path).map_err(io)?;
    let mut out = BufWriter::new(file);
    write_csv(traj, &mut out).map_err(io)?;
    out.flush().map_err(io)
}

/// Parse CSV text produced by [`write_csv`].
pub fn parse_csv(text: &str) -> Result<Vec<CsvRecord>> {
    let mut lines = text.split('\n');
    let header = lines.next().unwrap_or_default();
    if header != COLUMNS.join(",") {
        return Err(Error::Csv {
            line: 1,
            message: format!("unexpected header {header:?}"),
        });
    }
    let mut out = Vec::new();
    for (idx, line) in lines.enumerate() {
        let line_no = idx + 2;
        if line.is_empty() {
            continue;
        }
        let mut rec = [0.0; 14];
        let mut n = 0;
        for field in line.split(',') {
            if n == rec.len() {
                return Err(Error::Csv {
                    line: line_no,
                    message: "too many fields".into(),
                });
            }
            rec[n] = field.parse().map_err(|_| Error::Csv {
                line: line_no,
                message: format!(
                    "field {} ({}) is not a number: {field:?}",
                    n + 1,
                    COLUMNS[n]
                ),
            })?;
            n += 1;
        }
        if n != rec.len() {
            return Err(Error::Csv {
                line: line_no,
                message: format!("expected {} fields, found {n}", rec.len()),
            });
        }
        out.push(CsvRecord(rec));
    }
    Ok(out)
}
