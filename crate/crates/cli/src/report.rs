//! Report documents and their three renderings.
//!
//! Integers are written as plain digits (unquoted in JSON), rationals always
//! as `"num/den"` in lowest terms. Decimal approximations only appear in
//! columns whose name ends in `_approx`.

use std::io::{self, Write};

use clap::ValueEnum;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use serde_json::{Map, Number, Value as Json};

use icis::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    JsonLines,
    Table,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cell {
    Int(BigInt),
    Rat(Rational),
    Str(String),
    Bool(bool),
}

impl Cell {
    pub fn text(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Rat(v) => format!("{}/{}", v.numer(), v.denom()),
            Cell::Str(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Json {
        match self {
            Cell::Int(v) => Json::Number(
                v.to_string()
                    .parse::<Number>()
                    .expect("integer digits form a JSON number"),
            ),
            Cell::Rat(_) | Cell::Str(_) => Json::String(self.text()),
            Cell::Bool(b) => Json::Bool(*b),
        }
    }
}

impl From<BigInt> for Cell {
    fn from(v: BigInt) -> Self {
        Cell::Int(v)
    }
}

impl From<&BigInt> for Cell {
    fn from(v: &BigInt) -> Self {
        Cell::Int(v.clone())
    }
}

impl From<Rational> for Cell {
    fn from(v: Rational) -> Self {
        Cell::Rat(v)
    }
}

impl From<&Rational> for Cell {
    fn from(v: &Rational) -> Self {
        Cell::Rat(v.clone())
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Str(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Str(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

macro_rules! cell_from_int {
    ($($t:ty),*) => {$(
        impl From<$t> for Cell {
            fn from(v: $t) -> Self {
                Cell::Int(BigInt::from(v))
            }
        }
    )*};
}

cell_from_int!(u32, u64, usize, i64);

/// Fixed 6-digit decimal rendering, rounded half away from zero.
pub fn approx(v: &Rational) -> String {
    let scale = BigInt::from(1_000_000u32);
    let scaled = v.numer().abs() * &scale;
    let (mut q, rem) = scaled.div_rem(v.denom());
    if rem * 2u32 >= *v.denom() {
        q += 1u32;
    }
    let (int_part, frac) = q.div_rem(&scale);
    let sign = if v.is_negative() && q.sign() != num_bigint::Sign::NoSign {
        "-"
    } else {
        ""
    };
    format!("{sign}{int_part}.{frac:0>6}")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportDocument {
    /// The command line as echoed back.
    pub command: String,
    pub meta: Vec<(String, Cell)>,
    pub notes: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl ReportDocument {
    pub fn new(command: impl Into<String>, columns: &[&str]) -> Self {
        let mut doc = ReportDocument {
            command: command.into(),
            meta: Vec::new(),
            notes: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        };
        doc.meta("version", env!("CARGO_PKG_VERSION"));
        doc
    }

    pub fn meta(&mut self, key: impl Into<String>, value: impl Into<Cell>) -> &mut Self {
        self.meta.push((key.into(), value.into()));
        self
    }

    pub fn note(&mut self, note: impl Into<String>) -> &mut Self {
        self.notes.push(note.into());
        self
    }

    pub fn row(&mut self, cells: Vec<Cell>) -> &mut Self {
        assert_eq!(
            cells.len(),
            self.columns.len(),
            "row width must match the header"
        );
        self.rows.push(cells);
        self
    }

    pub fn render(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::JsonLines => self.write_json_lines(out),
            Format::Table => self.write_table(out),
        }
    }

    #[cfg(test)]
    pub fn render_string(&self, format: Format) -> String {
        let mut buf = Vec::new();
        self.render(format, &mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("reports are UTF-8")
    }

    fn write_csv(&self, out: &mut dyn Write) -> io::Result<()> {
        writeln!(out, "# command: {}", self.command)?;
        for (k, v) in &self.meta {
            writeln!(out, "# {k}: {}", v.text())?;
        }
        for note in &self.notes {
            writeln!(out, "# note: {note}")?;
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::text))?;
        }
        w.flush()
    }

    fn write_json_lines(&self, out: &mut dyn Write) -> io::Result<()> {
        let mut head = Map::new();
        head.insert("record".into(), "meta".into());
        head.insert("command".into(), self.command.clone().into());
        for (k, v) in &self.meta {
            head.insert(k.clone(), v.json());
        }
        head.insert(
            "notes".into(),
            Json::Array(self.notes.iter().cloned().map(Json::String).collect()),
        );
        writeln!(out, "{}", Json::Object(head))?;
        for row in &self.rows {
            let mut obj = Map::new();
            obj.insert("record".into(), "row".into());
            for (col, cell) in self.columns.iter().zip(row) {
                obj.insert(col.clone(), cell.json());
            }
            writeln!(out, "{}", Json::Object(obj))?;
        }
        Ok(())
    }

    fn write_table(&self, out: &mut dyn Write) -> io::Result<()> {
        writeln!(out, "$ {}", self.command)?;
        for (k, v) in &self.meta {
            writeln!(out, "  {k} = {}", v.text())?;
        }
        for note in &self.notes {
            writeln!(out, "  note: {note}")?;
        }
        if self.columns.is_empty() {
            return Ok(());
        }
        let texts: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(Cell::text).collect())
            .collect();
        let widths: Vec<usize> = self
            .columns
            .iter()
            .enumerate()
            .map(|(i, c)| {
                texts
                    .iter()
                    .map(|r| r[i].len())
                    .chain([c.len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: &[String]| -> String {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect::<Vec<_>>()
                .join("  ")
        };
        writeln!(out)?;
        writeln!(out, "{}", line(&self.columns))?;
        writeln!(
            out,
            "{}",
            widths
                .iter()
                .map(|w| "-".repeat(*w))
                .collect::<Vec<_>>()
                .join("  ")
        )?;
        for row in &texts {
            writeln!(out, "{}", line(row))?;
        }
        Ok(())
    }
}
