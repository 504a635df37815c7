//! Deterministic CSV output: every number is serialized with 17 significant
//! digits in scientific notation, comma separated, LF line endings, with
//! `#`-prefixed comment lines carrying run metadata.

use std::io::{self, Write};

pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub struct CsvWriter<W: Write> {
    out: W,
}

impl<W: Write> CsvWriter<W> {
    pub fn new(out: W) -> Self {
        Self { out }
    }

    pub fn comment(&mut self, text: &str) -> io::Result<()> {
        writeln!(self.out, "# {text}")
    }

    pub fn header(&mut self, columns: &[&str]) -> io::Result<()> {
        writeln!(self.out, "{}", columns.join(","))
    }

    pub fn row(&mut self, values: &[f64]) -> io::Result<()> {
        let line: Vec<String> = values.iter().map(|&v| format_float(v)).collect();
        writeln!(self.out, "{}", line.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_have_17_significant_digits() {
        assert_eq!(format_float(1.0), "1.0000000000000000e0");
        assert_eq!(format_float(-0.001234567890123456), "-1.2345678901234561e-3");
        assert_eq!(format_float(0.0), "0.0000000000000000e0");
    }

    #[test]
    fn rows_are_comma_joined_with_lf() {
        let mut buf = Vec::new();
        {
            let mut w = CsvWriter::new(&mut buf);
            w.comment("meta").unwrap();
            w.header(&["a", "b"]).unwrap();
            w.row(&[1.0, 2.0]).unwrap();
        }
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "# meta\na,b\n1.0000000000000000e0,2.0000000000000000e0\n"
        );
        assert!(!text.contains('\r'));
    }
}
