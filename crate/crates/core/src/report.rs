//! Report emission helpers: 17-significant-digit floats and deterministic
//! JSON/CSV so identical configs produce identical output bytes.

use serde::Serialize;
use serde_json::ser::Formatter;
use std::io;

/// A float with 17 significant digits (`1.2345678901234567e0`), enough to
/// round-trip any f64 and make regression diffs exact.
pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        // Avoid "-0" drift between runs.
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    format!("{x:.16e}")
}

struct SigDigitFormatter;

impl Formatter for SigDigitFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        if value == 0.0 {
            writer.write_all(b"0.0")
        } else {
            write!(writer, "{value:.16e}")
        }
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.write_f64(writer, value as f64)
    }
}

/// Serialize to JSON with 17-significant-digit floats and a trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SigDigitFormatter);
    value
        .serialize(&mut ser)
        .expect("report types serialize infallibly");
    let mut s = String::from_utf8(out).expect("serde_json emits UTF-8");
    s.push('\n');
    s
}

/// A CSV row from already-formatted cells (no quoting needed for our values).
pub fn csv_row(cells: &[String]) -> String {
    let mut s = cells.join(",");
    s.push('\n');
    s
}
