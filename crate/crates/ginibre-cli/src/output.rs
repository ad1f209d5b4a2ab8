use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::CliError;

/// Resolves `path` against the output directory when relative.
fn resolve(out_dir: Option<&Path>, path: &Path) -> PathBuf {
    match out_dir {
        Some(d) if path.is_relative() => d.join(path),
        _ => path.to_path_buf(),
    }
}

/// Writes `text` to `path`, or to standard output.
pub fn emit(out_dir: Option<&Path>, path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => {
            let p = resolve(out_dir, p);
            if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(parent)?;
            }
            fs::write(p, text)?;
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

/// Pretty JSON with every float printed to 17 significant digits.
pub fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Digits17(PrettyFormatter::new()));
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    String::from_utf8(buf).map_err(|e| CliError::Failure(e.to_string()))
}

/// `x` with 17 significant digits, positional when the exponent is moderate.
pub fn digits17(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0.0".into() } else { "0.0".into() };
    }
    let sci = format!("{x:.16e}");
    let (mant, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..16).contains(&exp) {
        return sci;
    }
    let (sign, mant) = mant.strip_prefix('-').map_or(("", mant), |m| ("-", m));
    let digits: String = mant.chars().filter(|c| *c != '.').collect();
    let body = if exp < 0 {
        format!("0.{}{digits}", "0".repeat((-exp - 1) as usize))
    } else {
        let point = exp as usize + 1;
        format!("{}.{}", &digits[..point], &digits[point..])
    };
    format!("{sign}{body}")
}

struct Digits17<F>(F);

macro_rules! delegate {
    ($($name:ident($($arg:ident: $ty:ty),*)),* $(,)?) => {
        $(fn $name<W: ?Sized + Write>(&mut self, w: &mut W $(, $arg: $ty)*) -> io::Result<()> {
            self.0.$name(w $(, $arg)*)
        })*
    };
}

impl<F: Formatter> Formatter for Digits17<F> {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        w.write_all(digits17(value).as_bytes())
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }

    delegate!(
        begin_array(), end_array(), begin_array_value(first: bool), end_array_value(),
        begin_object(), end_object(), begin_object_key(first: bool), end_object_key(),
        begin_object_value(), end_object_value(),
    );
}

/// CSV from a header and rows of already formatted cells.
pub fn csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut s = header.join(",");
    s.push('\n');
    for row in rows {
        s.push_str(&row.join(","));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        assert_eq!(digits17(0.5), "0.50000000000000000");
        assert_eq!(digits17(-1.5e-7), "-1.4999999999999999e-7");
        assert_eq!(digits17(1e20), "1.0000000000000000e20");
        assert_eq!(digits17(123.0), "123.00000000000000");
        assert_eq!(digits17(0.001), "0.0010000000000000000");
        for x in [std::f64::consts::PI, 1.0 / 3.0, 6.02e23, -2.5e-300, 1e16, 9.999999999999999e16, 1e-5] {
            let s = digits17(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
            let sig: String = s.trim_start_matches('-').split('e').next().unwrap().chars().filter(char::is_ascii_digit).collect();
            assert_eq!(sig.trim_start_matches('0').len(), 17, "{s}");
        }
    }

    #[test]
    fn json_uses_digit_formatter() {
        let text = json(&serde_json::json!({"a": 0.1, "b": [2, 1.0], "c": f64::NAN})).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["a"].as_f64(), Some(0.1));
        assert!(text.contains("0.10000000000000001"));
        assert!(text.contains("1.0000000000000000"));
        assert!(v["c"].is_null());
    }
}
