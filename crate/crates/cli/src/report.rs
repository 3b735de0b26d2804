//! Command results, errors, and their text and JSON renderings.

use serde_json::Value;

#[derive(Debug)]
pub enum CliError {
    /// Malformed parameters; exit status 2.
    Usage(String),
    /// A library error; exit status 1.
    Domain(finsler_core::Error),
}

impl<E: Into<finsler_core::Error>> From<E> for CliError {
    fn from(e: E) -> Self {
        Self::Domain(e.into())
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) => 2,
            Self::Domain(_) => 1,
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            Self::Usage(_) => "cli.usage",
            Self::Domain(e) => e.code(),
        }
    }

    pub fn message(&self) -> String {
        match self {
            Self::Usage(m) => m.clone(),
            Self::Domain(e) => e.to_string(),
        }
    }
}

/// Structured output plus a few headline lines for the text format.
pub struct Report {
    pub headline: Vec<String>,
    pub body: Value,
    /// False when a reported check failed; the exit status is then 1.
    pub ok: bool,
}

impl Report {
    pub fn new(body: Value) -> Self {
        Self { headline: Vec::new(), body, ok: true }
    }

    pub fn line(mut self, s: impl Into<String>) -> Self {
        self.headline.push(s.into());
        self
    }

    pub fn ok(mut self, ok: bool) -> Self {
        self.ok = ok;
        self
    }

    pub fn json(&self) -> String {
        serde_json::to_string_pretty(&self.body).expect("serializable")
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        for h in &self.headline {
            out.push_str(h);
            out.push('\n');
        }
        if !self.headline.is_empty() {
            out.push('\n');
        }
        render(&self.body, 0, &mut out);
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            Some(format!("[{}]", a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn render(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(x, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render(x, depth + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}
