use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

use super::study::{DegreeGroup, RateRow, RateTable};

pub const CSV_HEADER: &str = "degree,resolution,component,l2_error,rate";

/// Shortest round-tripping scientific notation, padded to at least six
/// significant digits (`1.07254e-3`, `5.00000e-1`).
pub fn format_sci(v: f64) -> String {
    let s = format!("{v:e}");
    let mantissa = s.split('e').next().unwrap_or("");
    let digits = mantissa.chars().filter(char::is_ascii_digit).count();
    if digits < 6 {
        format!("{v:.5e}")
    } else {
        s
    }
}

impl RateTable {
    /// CSV text, one line per (degree, resolution, component).
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for g in &self.groups {
            for row in &g.rows {
                for (c, name) in self.components.iter().enumerate() {
                    let (err, rate) = if row.is_failed() {
                        ("failed".to_string(), String::new())
                    } else {
                        (
                            format_sci(row.errors[c]),
                            row.rates[c].map(|r| r.to_string()).unwrap_or_default(),
                        )
                    };
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{}",
                        g.degree,
                        format_sci(row.resolution),
                        name,
                        err,
                        rate
                    );
                }
            }
        }
        out
    }

    /// Parses text written by [`RateTable::to_csv`].
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        match lines.next() {
            Some(h) if h.trim() == CSV_HEADER => {}
            other => {
                return Err(Error::Parse(format!(
                    "expected header '{CSV_HEADER}', got {other:?}"
                )))
            }
        }
        let mut table = RateTable::default();
        for (i, line) in lines.enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let bad = |what: &str| Error::Parse(format!("line {}: {what}: '{line}'", i + 2));
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 5 {
                return Err(bad("expected 5 fields"));
            }
            let degree: usize = fields[0].parse().map_err(|_| bad("bad degree"))?;
            let resolution: f64 = fields[1].parse().map_err(|_| bad("bad resolution"))?;
            let component = fields[2].to_string();
            let comp_idx = match table.component_index(&component) {
                Some(c) => c,
                None => {
                    table.components.push(component);
                    table.components.len() - 1
                }
            };
            if table.groups.last().map(|g| g.degree) != Some(degree) {
                table.groups.push(DegreeGroup {
                    degree,
                    rows: Vec::new(),
                });
            }
            let group = table.groups.last_mut().expect("group pushed above");
            if group.rows.last().map(|r| r.resolution) != Some(resolution) {
                group.rows.push(RateRow {
                    resolution,
                    errors: Vec::new(),
                    rates: Vec::new(),
                    failure: None,
                });
            }
            let row = group.rows.last_mut().expect("row pushed above");
            if fields[3] == "failed" {
                row.failure = Some("failed".into());
                continue;
            }
            if row.errors.len() != comp_idx {
                return Err(bad("components out of order"));
            }
            row.errors.push(fields[3].parse().map_err(|_| bad("bad error"))?);
            row.rates.push(if fields[4].is_empty() {
                None
            } else {
                Some(fields[4].parse().map_err(|_| bad("bad rate"))?)
            });
        }
        Ok(table)
    }
}

/// Writes the table as CSV to `path`.
pub fn emit_csv(table: &RateTable, path: &Path) -> Result<()> {
    std::fs::write(path, table.to_csv()).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Aligned text rendering, one block per component with a column pair per degree.
pub fn render_table(table: &RateTable, resolution_label: &str) -> String {
    let mut out = String::new();
    let resolutions: Vec<f64> = table
        .groups
        .first()
        .map(|g| g.rows.iter().map(|r| r.resolution).collect())
        .unwrap_or_default();
    for (c, name) in table.components.iter().enumerate() {
        let _ = writeln!(out, "component {name}");
        let _ = write!(out, "{:>11}", resolution_label);
        for g in &table.groups {
            let _ = write!(out, " | {:>12} {:>6}", format!("k={} error", g.degree), "rate");
        }
        out.push('\n');
        for (ri, res) in resolutions.iter().enumerate() {
            let _ = write!(out, "{:>11.3e}", res);
            for g in &table.groups {
                let cell = match g.rows.get(ri) {
                    Some(row) if row.is_failed() => format!("{:>12} {:>6}", "failed", "--"),
                    Some(row) => format!(
                        "{:>12.5e} {:>6}",
                        row.errors[c],
                        row.rates[c].map_or("--".to_string(), |r| format!("{r:.2}"))
                    ),
                    None => format!("{:>12} {:>6}", "", ""),
                };
                let _ = write!(out, " | {cell}");
            }
            out.push('\n');
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar_table() -> RateTable {
        RateTable {
            components: vec!["u".into()],
            groups: vec![DegreeGroup {
                degree: 2,
                rows: vec![RateRow {
                    resolution: 0.125,
                    errors: vec![1.07254e-3],
                    rates: vec![Some(2.96)],
                    failure: None,
                }],
            }],
        }
    }

    #[test]
    fn sci_formatting() {
        assert_eq!(format_sci(1.07254e-3), "1.07254e-3");
        assert_eq!(format_sci(0.125), "1.25000e-1");
        assert_eq!(format_sci(0.5), "5.00000e-1");
        let v = 1.0725412345678e-3;
        assert_eq!(format_sci(v).parse::<f64>().unwrap(), v);
    }

    #[test]
    fn empty_table_is_header_only() {
        assert_eq!(RateTable::default().to_csv(), format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn scalar_row_line() {
        let csv = scalar_table().to_csv();
        assert_eq!(csv.lines().nth(1).unwrap(), "2,1.25000e-1,u,1.07254e-3,2.96");
    }

    #[test]
    fn two_components_share_row() {
        let t = RateTable {
            components: vec!["A".into(), "Q".into()],
            groups: vec![DegreeGroup {
                degree: 3,
                rows: vec![RateRow {
                    resolution: 0.5,
                    errors: vec![2.77383e-3, 1.72638e-2],
                    rates: vec![None, None],
                    failure: None,
                }],
            }],
        };
        let csv = t.to_csv();
        let lines: Vec<&str> = csv.lines().skip(1).collect();
        assert_eq!(lines, vec!["3,5.00000e-1,A,2.77383e-3,", "3,5.00000e-1,Q,1.72638e-2,"]);
        assert_eq!(RateTable::from_csv(&csv).unwrap(), t);
    }

    #[test]
    fn bad_csv_rejected() {
        assert!(RateTable::from_csv("nope\n").is_err());
        assert!(RateTable::from_csv(&format!("{CSV_HEADER}\n1,2,u\n")).is_err());
    }

    #[test]
    fn rendering_mentions_every_degree() {
        let s = render_table(&scalar_table(), "h");
        assert!(s.contains("k=2 error"));
        assert!(s.contains("1.07254e-3"));
        assert!(s.contains("2.96"));
    }
}
