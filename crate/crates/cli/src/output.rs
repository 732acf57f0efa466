use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

/// First line of every CSV document.
pub const SCHEMA_LINE: &str = "# schema=1";

/// Rounds to 12 significant digits and prints the shortest string that
/// reads back to the rounded value; plain decimals between 1e-5 and 1e15,
/// exponent form outside.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if (1e-5..1e15).contains(&rounded.abs()) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

/// Quotes a CSV field when it holds a comma, quote or line break.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn csv_row<I, S>(fields: I) -> String
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    fields
        .into_iter()
        .map(|f| csv_field(f.as_ref()))
        .collect::<Vec<_>>()
        .join(",")
}

/// Writes `text` to the file at `path`, or to stdout when there is none.
pub fn emit(text: &str, path: Option<&Path>) -> io::Result<()> {
    match path {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            w.write_all(text.as_bytes())?;
            w.flush()
        }
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(format_number(0.1 + 0.2), "0.3");
        assert_eq!(format_number(std::f64::consts::PI), "3.14159265359");
        assert_eq!(format_number(-2.0 / 3.0), "-0.666666666667");
        assert_eq!(format_number(1.0 / 3.0 * 1e-7), "3.33333333333e-8");
        assert_eq!(format_number(5.0), "5");
        assert_eq!(format_number(0.0), "0");
        assert_eq!(format_number(2e20), "2e20");
    }

    #[test]
    fn quoting() {
        assert_eq!(csv_row(["a", "b,c", "say \"x\""]), "a,\"b,c\",\"say \"\"x\"\"\"");
        assert_eq!(csv_field("ln n + O(1)"), "ln n + O(1)");
    }
}
