use clap::ValueEnum;
use serde_json::Value;
use zeta_core::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
    Pretty,
}

/// One command result in all three renderings.
pub struct Out {
    pub tsv: String,
    pub json: Value,
    pub pretty: String,
}

impl Out {
    pub fn render(self, format: Format) -> String {
        let mut s = match format {
            Format::Tsv => self.tsv,
            Format::Json => serde_json::to_string_pretty(&self.json).expect("json values serialize"),
            Format::Pretty => self.pretty,
        };
        if !s.ends_with('\n') {
            s.push('\n');
        }
        s
    }
}

/// Rationals travel as "a/b" strings (integers as "a").
pub fn rat(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn rats<'a>(rs: impl IntoIterator<Item = &'a Rational>) -> Value {
    Value::Array(rs.into_iter().map(rat).collect())
}
