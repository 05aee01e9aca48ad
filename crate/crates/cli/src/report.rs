//! Key-value report documents with stable field order.

use sha2::{Digest, Sha256};

pub struct Report {
    lines: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut r = Self { lines: Vec::new() };
        r.field("tool", format_args!("mixorient {}", env!("CARGO_PKG_VERSION")));
        r.field("command", command);
        r
    }

    pub fn field(&mut self, key: &str, value: impl std::fmt::Display) {
        self.lines.push(format!("{key} = {value}"));
    }

    pub fn digest(&mut self, key: &str, text: &str) {
        let hash = Sha256::digest(text.as_bytes());
        let hex: String = hash.iter().map(|b| format!("{b:02x}")).collect();
        self.field(key, hex);
    }

    pub fn render(&self) -> String {
        let mut out = self.lines.join("\n");
        out.push('\n');
        out
    }
}
