//! JSON rendering with reproducible float formatting.
//!
//! Every float prints in scientific notation with 17 significant digits,
//! which is enough to round-trip any f64 bit-exactly. Combined with
//! deterministic field order from the Serialize derives, identical runs
//! produce byte-identical output.

use serde::Serialize;
use serde_json::ser::Formatter;
use std::io;

/// Compact JSON formatter that pins f64 output to 17 significant digits.
pub struct SignificantDigitsFormatter;

impl Formatter for SignificantDigitsFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

/// Serializes any report type to compact JSON with pinned float formatting.
pub fn to_json_string<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let mut out = Vec::new();
    let mut serializer =
        serde_json::Serializer::with_formatter(&mut out, SignificantDigitsFormatter);
    value.serialize(&mut serializer)?;
    Ok(String::from_utf8(out).expect("JSON serializer emits UTF-8"))
}
