use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::config::OutputFormat;
use crate::error::{KgError, Result};
use crate::integrators::SchemeId;

pub const CSV_HEADER: [&str; 5] = ["scheme", "c", "tau", "err_h1", "wall_time_s"];

/// One `(scheme, c, tau)` cell. A failed cell carries `err = NaN`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErrorRow {
    pub scheme: SchemeId,
    pub c: f64,
    pub tau: f64,
    pub err: f64,
    pub wall_time: f64,
}

impl ErrorRow {
    pub fn failed(scheme: SchemeId, c: f64, tau: f64) -> Self {
        Self {
            scheme,
            c,
            tau,
            err: f64::NAN,
            wall_time: 0.0,
        }
    }

    pub fn is_failed(&self) -> bool {
        self.err.is_nan()
    }

    fn key(&self) -> (SchemeId, f64, f64) {
        (self.scheme, self.c, self.tau)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FittedOrder {
    pub scheme: SchemeId,
    pub c: f64,
    pub order: f64,
    /// Number of cells used by the fit.
    pub points: usize,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ErrorTable {
    pub rows: Vec<ErrorRow>,
    pub fitted_orders: Vec<FittedOrder>,
}

/// Least-squares slope of `log2 err` against `log2 tau`.
pub fn fit_order(points: &[(f64, f64)]) -> Result<f64> {
    let usable: Vec<(f64, f64)> = points
        .iter()
        .filter(|(t, e)| *t > 0.0 && *e > 0.0 && t.is_finite() && e.is_finite())
        .map(|(t, e)| (t.log2(), e.log2()))
        .collect();
    if usable.len() < 3 {
        return Err(KgError::InsufficientData {
            needed: 3,
            found: usable.len(),
        });
    }
    let n = usable.len() as f64;
    let mx = usable.iter().map(|p| p.0).sum::<f64>() / n;
    let my = usable.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = usable.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = usable.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(KgError::InsufficientData { needed: 3, found: 1 });
    }
    Ok(sxy / sxx)
}

impl ErrorTable {
    /// Sorts rows by `(scheme, c, tau)` and fitted orders by `(scheme, c)`.
    pub fn normalize(&mut self) {
        self.rows
            .sort_by(|a, b| a.key().partial_cmp(&b.key()).unwrap_or(std::cmp::Ordering::Equal));
        self.fitted_orders.sort_by(|a, b| {
            (a.scheme, a.c)
                .partial_cmp(&(b.scheme, b.c))
                .unwrap_or(std::cmp::Ordering::Equal)
        });
    }

    /// Rows of one `(scheme, c)` pair in increasing `tau`.
    pub fn series(&self, scheme: SchemeId, c: f64) -> Vec<ErrorRow> {
        let mut rows: Vec<ErrorRow> = self
            .rows
            .iter()
            .filter(|r| r.scheme == scheme && r.c == c)
            .copied()
            .collect();
        rows.sort_by(|a, b| a.tau.total_cmp(&b.tau));
        rows
    }

    pub fn order(&self, scheme: SchemeId, c: f64) -> Option<f64> {
        self.fitted_orders
            .iter()
            .find(|f| f.scheme == scheme && f.c == c)
            .map(|f| f.order)
    }

    /// The same table with wall times set to zero, for byte comparisons.
    pub fn without_timings(&self) -> Self {
        let mut t = self.clone();
        for r in &mut t.rows {
            r.wall_time = 0.0;
        }
        t
    }

    pub fn to_csv_string(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_HEADER).expect("write to memory");
        for r in &self.rows {
            w.write_record([
                r.scheme.name().to_string(),
                fmt_f64(r.c),
                fmt_f64(r.tau),
                fmt_f64(r.err),
                fmt_f64(r.wall_time),
            ])
            .expect("write to memory");
        }
        String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8")
    }

    pub fn from_csv_str(text: &str) -> std::result::Result<Self, String> {
        let mut rd = csv::Reader::from_reader(text.as_bytes());
        let header = rd.headers().map_err(|e| e.to_string())?;
        if header.iter().ne(CSV_HEADER.iter().copied()) {
            return Err(format!("expected header {}", CSV_HEADER.join(",")));
        }
        let mut rows = Vec::new();
        for (line, rec) in rd.records().enumerate() {
            let rec = rec.map_err(|e| e.to_string())?;
            let field = |i: usize| -> std::result::Result<f64, String> {
                rec[i]
                    .parse::<f64>()
                    .map_err(|e| format!("row {}: column {}: {e}", line + 1, CSV_HEADER[i]))
            };
            rows.push(ErrorRow {
                scheme: rec[0].parse().map_err(|e: KgError| format!("row {}: {e}", line + 1))?,
                c: field(1)?,
                tau: field(2)?,
                err: field(3)?,
                wall_time: field(4)?,
            });
        }
        Ok(Self {
            rows,
            fitted_orders: Vec::new(),
        })
    }

    pub fn to_json_string(&self) -> String {
        let doc = JsonTable {
            rows: self
                .rows
                .iter()
                .map(|r| JsonRow {
                    scheme: r.scheme,
                    c: r.c,
                    tau: r.tau,
                    err_h1: (!r.is_failed()).then_some(r.err),
                    wall_time_s: r.wall_time,
                })
                .collect(),
            fitted_orders: self.fitted_orders.clone(),
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("table serialises");
        s.push('\n');
        s
    }

    pub fn from_json_str(text: &str) -> std::result::Result<Self, String> {
        let doc: JsonTable = serde_json::from_str(text).map_err(|e| e.to_string())?;
        Ok(Self {
            rows: doc
                .rows
                .into_iter()
                .map(|r| ErrorRow {
                    scheme: r.scheme,
                    c: r.c,
                    tau: r.tau,
                    err: r.err_h1.unwrap_or(f64::NAN),
                    wall_time: r.wall_time_s,
                })
                .collect(),
            fitted_orders: doc.fitted_orders,
        })
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv_string(),
            OutputFormat::Json => self.to_json_string(),
        }
    }

    pub fn parse(text: &str, format: OutputFormat) -> std::result::Result<Self, String> {
        match format {
            OutputFormat::Csv => Self::from_csv_str(text),
            OutputFormat::Json => Self::from_json_str(text),
        }
    }
}

/// Writes `table` to `path`.
pub fn emit(table: &ErrorTable, format: OutputFormat, path: &Path) -> Result<()> {
    let io = |source| KgError::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut f = std::fs::File::create(path).map_err(io)?;
    f.write_all(table.render(format).as_bytes()).map_err(io)?;
    f.flush().map_err(io)
}

/// Reads a table written by [`emit`].
pub fn read_table(path: &Path, format: OutputFormat) -> Result<ErrorTable> {
    let text = std::fs::read_to_string(path).map_err(|source| KgError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    ErrorTable::parse(&text, format).map_err(|message| KgError::Format {
        path: path.to_path_buf(),
        message,
    })
}

/// Shortest representation that parses back to the same value.
fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

#[derive(Serialize, Deserialize)]
struct JsonRow {
    scheme: SchemeId,
    c: f64,
    tau: f64,
    err_h1: Option<f64>,
    wall_time_s: f64,
}

#[derive(Serialize, Deserialize)]
struct JsonTable {
    rows: Vec<JsonRow>,
    fitted_orders: Vec<FittedOrder>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ErrorTable {
        ErrorTable {
            rows: vec![
                ErrorRow {
                    scheme: SchemeId::Uei1Real,
                    c: 10.0,
                    tau: 0.1 / 16.0,
                    err: 3.25e-4,
                    wall_time: 0.012,
                },
                ErrorRow::failed(SchemeId::Uei2Real, 1e4, 0.1 / 1024.0),
            ],
            fitted_orders: vec![FittedOrder {
                scheme: SchemeId::Uei1Real,
                c: 10.0,
                order: 1.0123,
                points: 7,
            }],
        }
    }

    #[test]
    fn exact_power_laws() {
        let taus = [0.1, 0.05, 0.025, 0.0125];
        let one: Vec<_> = taus.iter().map(|&t| (t, t)).collect();
        let two: Vec<_> = taus.iter().map(|&t| (t, t * t)).collect();
        let mixed: Vec<_> = taus.iter().map(|&t: &f64| (t, 3.0 * t.powf(1.5))).collect();
        assert!((fit_order(&one).unwrap() - 1.0).abs() < 1e-14);
        assert!((fit_order(&two).unwrap() - 2.0).abs() < 1e-14);
        assert!((fit_order(&mixed).unwrap() - 1.5).abs() < 1e-12);
    }

    #[test]
    fn fit_needs_three_points() {
        assert!(matches!(
            fit_order(&[(0.1, 0.1), (0.05, 0.05)]),
            Err(KgError::InsufficientData { needed: 3, found: 2 })
        ));
        assert!(fit_order(&[(0.1, 0.1), (0.05, f64::NAN), (0.02, 0.0)]).is_err());
    }

    #[test]
    fn empty_table_is_header_only() {
        assert_eq!(ErrorTable::default().to_csv_string(), "scheme,c,tau,err_h1,wall_time_s\n");
    }

    #[test]
    fn csv_round_trip_keeps_failures() {
        let t = sample();
        let back = ErrorTable::from_csv_str(&t.to_csv_string()).unwrap();
        assert_eq!(back.rows.len(), 2);
        assert_eq!(back.rows[0], t.rows[0]);
        assert!(back.rows[1].is_failed());
        assert!(t.to_csv_string().contains("uei2,10000.0,9.765625e-5,NaN,0.0"));
    }

    #[test]
    fn json_round_trip() {
        let t = sample();
        let text = t.to_json_string();
        assert!(text.contains("\"err_h1\": null"));
        let back = ErrorTable::from_json_str(&text).unwrap();
        assert_eq!(back.fitted_orders, t.fitted_orders);
        assert_eq!(back.rows[0], t.rows[0]);
        assert!(back.rows[1].is_failed());
    }

    #[test]
    fn rejects_wrong_header() {
        assert!(ErrorTable::from_csv_str("a,b\n1,2\n").is_err());
    }
}
