//! Deterministic key-value report text.
//!
//! Output is valid TOML: `[table]` and `[[array]]` headers followed by
//! `key = value` lines, written in call order. Floats go through
//! [`sig9`](crate::format::sig9).

use std::fmt::Write as _;

use crate::format::sig9;

#[derive(Debug, Default, Clone)]
pub struct Report {
    buf: String,
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if c.is_control() => {
                let _ = write!(out, "\\u{:04X}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn comment(&mut self, text: &str) -> &mut Self {
        let _ = writeln!(self.buf, "# {text}");
        self
    }

    fn section_break(&mut self) {
        if !self.buf.is_empty() {
            self.buf.push('\n');
        }
    }

    pub fn table(&mut self, name: &str) -> &mut Self {
        self.section_break();
        let _ = writeln!(self.buf, "[{name}]");
        self
    }

    pub fn array_table(&mut self, name: &str) -> &mut Self {
        self.section_break();
        let _ = writeln!(self.buf, "[[{name}]]");
        self
    }

    pub fn num(&mut self, key: &str, v: f64) -> &mut Self {
        let _ = writeln!(self.buf, "{key} = {}", sig9(v));
        self
    }

    pub fn opt_num(&mut self, key: &str, v: Option<f64>) -> &mut Self {
        if let Some(v) = v {
            self.num(key, v);
        }
        self
    }

    pub fn int(&mut self, key: &str, v: u64) -> &mut Self {
        let _ = writeln!(self.buf, "{key} = {v}");
        self
    }

    pub fn flag(&mut self, key: &str, v: bool) -> &mut Self {
        let _ = writeln!(self.buf, "{key} = {v}");
        self
    }

    pub fn text(&mut self, key: &str, v: &str) -> &mut Self {
        let _ = writeln!(self.buf, "{key} = {}", quote(v));
        self
    }

    pub fn nums(&mut self, key: &str, vs: &[f64]) -> &mut Self {
        let items: Vec<String> = vs.iter().map(|&v| sig9(v)).collect();
        let _ = writeln!(self.buf, "{key} = [{}]", items.join(", "));
        self
    }

    pub fn texts(&mut self, key: &str, vs: &[String]) -> &mut Self {
        let items: Vec<String> = vs.iter().map(|v| quote(v)).collect();
        let _ = writeln!(self.buf, "{key} = [{}]", items.join(", "));
        self
    }

    pub fn finish(self) -> String {
        self.buf
    }
}
