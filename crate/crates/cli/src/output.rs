use std::io::Write;

use num_bigint::BigInt;
use num_complex::Complex64;
use serde_json::{Map, Value};

use crate::args::Format;

/// Emits either a CSV table (header row first) or one JSON object per line.
pub struct Records<'a> {
    out: &'a mut dyn Write,
    format: Format,
    record: &'static str,
    columns: &'static [&'static str],
    header_written: bool,
}

#[derive(Clone, Debug)]
pub enum Field {
    /// Integers cross the boundary as decimal strings.
    Int(BigInt),
    Small(u64),
    Text(String),
    Bool(bool),
    Float(f64),
}

impl Field {
    fn csv(&self) -> String {
        match self {
            Field::Int(v) => v.to_string(),
            Field::Small(v) => v.to_string(),
            Field::Text(s) => s.clone(),
            Field::Bool(b) => b.to_string(),
            Field::Float(x) => x.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Field::Int(v) => Value::String(v.to_string()),
            Field::Small(v) => Value::from(*v),
            Field::Text(s) => Value::String(s.clone()),
            Field::Bool(b) => Value::Bool(*b),
            Field::Float(x) => Value::from(*x),
        }
    }
}

impl<'a> Records<'a> {
    pub fn new(
        out: &'a mut dyn Write,
        format: Format,
        record: &'static str,
        columns: &'static [&'static str],
    ) -> Self {
        Self {
            out,
            format,
            record,
            columns,
            header_written: false,
        }
    }

    pub fn row(&mut self, fields: Vec<Field>) -> std::io::Result<()> {
        debug_assert_eq!(fields.len(), self.columns.len());
        match self.format {
            Format::Csv => {
                if !self.header_written {
                    writeln!(self.out, "{}", self.columns.join(","))?;
                    self.header_written = true;
                }
                let cells: Vec<String> = fields.iter().map(Field::csv).collect();
                writeln!(self.out, "{}", cells.join(","))
            }
            Format::JsonLines => {
                let mut map = Map::new();
                map.insert("record".into(), Value::String(self.record.into()));
                for (name, field) in self.columns.iter().zip(&fields) {
                    map.insert((*name).into(), field.json());
                }
                writeln!(self.out, "{}", Value::Object(map))
            }
        }
    }
}

/// `a`, `a+bi` or `a-bi` with shortest round-trip floats.
pub fn complex_text(z: Complex64) -> String {
    if z.im == 0.0 {
        z.re.to_string()
    } else if z.im.is_sign_negative() {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_and_json() {
        let mut buf = Vec::new();
        let mut rec = Records::new(&mut buf, Format::Csv, "vnk", &["k", "v"]);
        rec.row(vec![Field::Small(1), Field::Int(BigInt::from(9))]).unwrap();
        rec.row(vec![Field::Small(2), Field::Int(BigInt::from(8))]).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "k,v\n1,9\n2,8\n");

        let mut buf = Vec::new();
        let mut rec = Records::new(&mut buf, Format::JsonLines, "vnk", &["k", "v"]);
        rec.row(vec![Field::Small(1), Field::Int(BigInt::from(9))]).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "{\"k\":1,\"record\":\"vnk\",\"v\":\"9\"}\n"
        );
    }

    #[test]
    fn complex_formatting() {
        assert_eq!(complex_text(Complex64::new(0.5, 0.0)), "0.5");
        assert_eq!(complex_text(Complex64::new(1.0, -2.5)), "1-2.5i");
        assert_eq!(complex_text(Complex64::new(1.0, 2.0)), "1+2i");
    }
}
