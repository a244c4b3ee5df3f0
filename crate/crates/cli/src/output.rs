//! Rendering and writing of result files. Every file opens with a
//! provenance line; nothing time- or host-dependent goes into it, so equal
//! settings give byte-identical files.

use std::fs;
use std::path::Path;

use dispersion_core::exact::rational::{self, Rational, Rounding};
use serde_json::{json, Value};

use crate::error::CliError;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputFile {
    pub name: String,
    pub contents: String,
}

/// Key-value description of how a file was produced.
#[derive(Debug, Clone, Default)]
pub struct Provenance {
    fields: Vec<(&'static str, String)>,
}

impl Provenance {
    pub fn new(command: &str, method: &str) -> Self {
        Self {
            fields: vec![("artifact", format!("dispersion {VERSION}")), ("command", command.into()), ("method", method.into())],
        }
    }

    pub fn with(mut self, key: &'static str, value: impl ToString) -> Self {
        self.fields.push((key, value.to_string()));
        self
    }

    pub fn comment(&self) -> String {
        let body: Vec<String> = self.fields.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("# {}\n", body.join(" "))
    }

    pub fn to_json(&self) -> Value {
        Value::Object(self.fields.iter().map(|(k, v)| (k.to_string(), Value::String(v.clone()))).collect())
    }
}

/// Exact decimal when it terminates within `digits` places, otherwise
/// correctly rounded to `digits` places.
pub fn render(x: &Rational, digits: usize) -> String {
    let rounded = rational::to_decimal(x, digits, Rounding::Nearest);
    match rational::parse_decimal(&rounded) {
        Ok(v) if &v == x => trim_zeros(rounded),
        _ => rounded,
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn render_f64(x: f64, digits: usize) -> String {
    format!("{x:.digits$}")
}

/// CSV body with LF line endings, preceded by the provenance comment.
pub fn csv_document(p: &Provenance, header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    let body = String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8");
    p.comment() + &body
}

pub fn json_document(p: &Provenance, data: Value) -> String {
    let doc = json!({ "provenance": p.to_json(), "data": data });
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}

/// Write files one after another into `dir`, creating it if needed.
pub fn write_all(dir: &Path, files: &[OutputFile]) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.to_path_buf(), source })?;
    for f in files {
        let path = dir.join(&f.name);
        fs::write(&path, &f.contents).map_err(|source| CliError::Io { path, source })?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use dispersion_core::exact::rational::{frac, int};

    #[test]
    fn rendering_rounds_and_trims() {
        assert_eq!(render(&frac(56, 9), 3), "6.222");
        assert_eq!(render(&frac(363, 56), 8), "6.48214286");
        assert_eq!(render(&int(6), 9), "6");
        assert_eq!(render(&frac(3807, 32), 9), "118.96875");
        assert_eq!(render(&frac(3807, 32), 2), "118.97");
        assert_eq!(render(&frac(2, 3), 1), "0.7");
    }

    #[test]
    fn csv_has_comment_header_and_lf() {
        let p = Provenance::new("tables", "exact").with("channel", "A");
        let doc = csv_document(&p, &["order", "x"], &[vec!["1".into(), "6".into()]]);
        assert_eq!(doc, "# artifact=dispersion 0.1.0 command=tables method=exact channel=A\norder,x\n1,6\n");
    }

    #[test]
    fn json_wraps_data() {
        let p = Provenance::new("r0", "r0");
        let doc: Value = serde_json::from_str(&json_document(&p, json!([1, 2]))).unwrap();
        assert_eq!(doc["provenance"]["command"], "r0");
        assert_eq!(doc["data"][1], 2);
    }
}
