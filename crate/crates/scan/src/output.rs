//! CSV and sidecar writers. Floats use 17 significant digits so a file read
//! back reproduces every value exactly.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use tripod_core::Trajectory64;

use crate::scan::ScanTable;

pub const TRAJECTORY_COLUMNS: [&str; 6] = ["t", "P1", "P2", "P3", "Pi", "norm"];

pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn csv_string(columns: &[&str], rows: &[Vec<f64>]) -> String {
    let mut s = columns.join(",");
    s.push('\n');
    for r in rows {
        for (k, x) in r.iter().enumerate() {
            if k > 0 {
                s.push(',');
            }
            let _ = write!(s, "{}", fmt_float(*x));
        }
        s.push('\n');
    }
    s
}

pub fn trajectory_rows(t: &Trajectory64) -> Vec<Vec<f64>> {
    t.records
        .iter()
        .map(|r| vec![r.t, r.p1, r.p2, r.p3, r.pi, r.norm])
        .collect()
}

pub fn trajectory_csv(t: &Trajectory64) -> String {
    csv_string(&TRAJECTORY_COLUMNS, &trajectory_rows(t))
}

pub fn scan_csv(table: &ScanTable) -> String {
    csv_string(&table.columns, &table.rows)
}

/// `<out>.meta.json` next to `out`.
pub fn meta_path(out: &Path) -> PathBuf {
    let mut name = out
        .file_name()
        .map(|n| n.to_os_string())
        .unwrap_or_default();
    name.push(".meta.json");
    out.with_file_name(name)
}

/// Writes to `out`, or to stdout when `out` is `None`.
pub fn emit(out: Option<&Path>, text: &str) -> std::io::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text),
        None => {
            let mut o = std::io::stdout().lock();
            o.write_all(text.as_bytes())?;
            o.flush()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for x in [0.1, 1.0 / 3.0, 1e-300, -2.5e17, 0.0, 0.9999999999999999] {
            let s = fmt_float(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
    }

    #[test]
    fn csv_layout() {
        let s = csv_string(&["a", "b"], &[vec![1.0, 0.5]]);
        assert_eq!(s, "a,b\n1.0000000000000000e0,5.0000000000000000e-1\n");
    }

    #[test]
    fn sidecar_name() {
        assert_eq!(
            meta_path(Path::new("out/fig4.csv")),
            PathBuf::from("out/fig4.csv.meta.json")
        );
    }
}
