//! CSV tables with a fixed numeric format: nine significant digits in
//! positional notation, `.` as decimal separator, independent of locale.

use crate::frontier::{Frontier, FrontierPoint, Provenance};
use crate::gaussian::{GaussianModel, RatePair, Strategy};
use crate::{Error, Result};

pub const SIGNIFICANT_DIGITS: usize = 9;

/// Formats `x` with nine significant digits and no exponent.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let x = if x == 0.0 { 0.0 } else { x };
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    let n = digits.len() as i32;
    let point = exp + 1;
    let body = if point <= 0 {
        format!("0.{}{digits}", "0".repeat((-point) as usize))
    } else if point >= n {
        format!("{digits}{}", "0".repeat((point - n) as usize))
    } else {
        let (int, frac) = digits.split_at(point as usize);
        format!("{int}.{frac}")
    };
    format!("{sign}{body}")
}

pub fn parse_number(s: &str) -> Result<f64> {
    match s {
        "nan" => Ok(f64::NAN),
        "inf" => Ok(f64::INFINITY),
        "-inf" => Ok(f64::NEG_INFINITY),
        _ if s.bytes().all(|b| b.is_ascii_digit() || b == b'.' || b == b'-') && !s.is_empty() => {
            s.parse().map_err(|_| Error::Parse(format!("not a number: {s:?}")))
        }
        _ => Err(Error::Parse(format!("not a number: {s:?}"))),
    }
}

/// A header row plus string cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn header(&self) -> &[String] {
        &self.header
    }

    pub fn rows(&self) -> &[Vec<String>] {
        &self.rows
    }

    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.header.len(), "row width must match header");
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut w = ::csv::WriterBuilder::new()
            .terminator(::csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.header).expect("writing to memory");
        for r in &self.rows {
            w.write_record(r).expect("writing to memory");
        }
        String::from_utf8(w.into_inner().expect("flushing to memory")).expect("cells are utf-8")
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut r = ::csv::ReaderBuilder::new().has_headers(true).from_reader(s.as_bytes());
        let header: Vec<String> = r.headers().map_err(csv_err)?.iter().map(str::to_owned).collect();
        if header.is_empty() || header.iter().all(String::is_empty) {
            return Err(Error::Parse("csv has no header row".into()));
        }
        let mut rows = Vec::new();
        for rec in r.records() {
            let rec = rec.map_err(csv_err)?;
            rows.push(rec.iter().map(str::to_owned).collect());
        }
        Ok(Self { header, rows })
    }

    pub fn column(&self, name: &str) -> Result<usize> {
        self.header
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::Parse(format!("csv lacks column {name:?}")))
    }

    pub fn number(&self, row: usize, col: usize) -> Result<f64> {
        parse_number(&self.rows[row][col])
            .map_err(|e| Error::Parse(format!("row {}, column {}: {e}", row + 1, self.header[col])))
    }

    pub fn optional_number(&self, row: usize, col: usize) -> Result<Option<f64>> {
        if self.rows[row][col].is_empty() {
            Ok(None)
        } else {
            self.number(row, col).map(Some)
        }
    }
}

fn csv_err(e: ::csv::Error) -> Error {
    match e.position() {
        Some(p) => Error::Parse(format!("csv line {}: {e}", p.line())),
        None => Error::Parse(format!("csv: {e}")),
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(format_number).unwrap_or_default()
}

/// Coordinate names for a model's rate pairs.
pub fn pair_names(model: GaussianModel) -> (&'static str, &'static str) {
    match model {
        GaussianModel::B => ("r1", "r2"),
        GaussianModel::C => ("r0", "r1"),
    }
}

/// One row per frontier point. Columns: `strategy`, the two rate names,
/// `alpha`, `beta` (model B only), `q`, `rstar`, `branch`.
pub fn frontier_table(model: GaussianModel, frontiers: &[Frontier]) -> Table {
    let (a, b) = pair_names(model);
    let with_beta = model == GaussianModel::B;
    let mut header = vec!["strategy", a, b, "alpha"];
    if with_beta {
        header.push("beta");
    }
    header.extend(["q", "rstar", "branch"]);
    let mut t = Table::new(header);
    for f in frontiers {
        for p in &f.points {
            let pv = &p.provenance;
            let mut row = vec![
                f.strategy.id().to_string(),
                format_number(p.rates.first),
                format_number(p.rates.second),
                format_number(pv.alpha),
            ];
            if with_beta {
                row.push(format_number(pv.beta));
            }
            row.extend([opt(pv.q), opt(pv.rstar), pv.active.clone()]);
            t.push(row);
        }
    }
    t
}

/// Inverse of [`frontier_table`], grouping rows by strategy in order of
/// first appearance.
pub fn read_frontier_table(model: GaussianModel, t: &Table) -> Result<Vec<(Strategy, Vec<FrontierPoint>)>> {
    let (a, b) = pair_names(model);
    let cs = t.column("strategy")?;
    let ca = t.column(a)?;
    let cb = t.column(b)?;
    let cal = t.column("alpha")?;
    let cbe = t.column("beta").ok();
    let cq = t.column("q")?;
    let cr = t.column("rstar")?;
    let cbr = t.column("branch")?;
    let mut out: Vec<(Strategy, Vec<FrontierPoint>)> = Vec::new();
    for i in 0..t.rows().len() {
        let s: Strategy = t.rows()[i][cs].parse()?;
        let point = FrontierPoint {
            rates: RatePair {
                first: t.number(i, ca)?,
                second: t.number(i, cb)?,
            },
            provenance: Provenance {
                alpha: t.number(i, cal)?,
                beta: match cbe {
                    Some(c) => t.number(i, c)?,
                    None => 0.0,
                },
                q: t.optional_number(i, cq)?,
                rstar: t.optional_number(i, cr)?,
                active: t.rows()[i][cbr].clone(),
            },
        };
        match out.iter_mut().find(|(x, _)| *x == s) {
            Some((_, v)) => v.push(point),
            None => out.push((s, vec![point])),
        }
    }
    Ok(out)
}
