use std::io::Write;

use serde_json::{Map, Value};

pub const SCHEMA: &str = "kgc/1";

/// Buffers either text lines or JSON records; only one kind is printed.
pub struct Out {
    records: bool,
    buf: String,
}

impl Out {
    pub fn new(records: bool) -> Self {
        Self { records, buf: String::new() }
    }

    pub fn text(&mut self, line: impl AsRef<str>) {
        if !self.records {
            self.buf.push_str(line.as_ref());
            self.buf.push('\n');
        }
    }

    /// Raw text block (already newline-terminated).
    pub fn block(&mut self, s: &str) {
        if !self.records {
            self.buf.push_str(s);
        }
    }

    /// A record of the given kind; `fields` must be a JSON object.
    pub fn record(&mut self, kind: &str, fields: Value) {
        if !self.records {
            return;
        }
        let mut m = Map::new();
        m.insert("schema".into(), Value::from(SCHEMA));
        m.insert("kind".into(), Value::from(kind));
        if let Value::Object(f) = fields {
            m.extend(f);
        }
        self.buf.push_str(&Value::Object(m).to_string());
        self.buf.push('\n');
    }

    pub fn flush(&mut self) {
        let mut stdout = std::io::stdout().lock();
        let _ = stdout.write_all(self.buf.as_bytes());
        let _ = stdout.flush();
        self.buf.clear();
    }
}

pub fn sign_str(s: i8) -> &'static str {
    match s {
        1 => "+",
        -1 => "-",
        _ => "0",
    }
}
