use serde_json::{json, Map, Value};

use pursuit_core::fmt::sig;
use pursuit_core::montecarlo::SimReport;
use pursuit_core::Rounds;

use crate::source::GraphInfo;
use crate::Ctx;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

pub enum Field {
    Int(u64),
    Real(f64),
    Rounds(Rounds),
    Text(String),
    Cops(Vec<usize>),
    CopsList(Vec<Vec<usize>>),
    Ints(Vec<u64>),
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

/// `v` rounded to `digits` significant digits; non-finite values become the
/// string `inf`.
pub fn json_real(v: f64, digits: usize) -> Value {
    if v.is_finite() {
        json!(sig(v, digits).parse::<f64>().expect("formatted float parses"))
    } else {
        json!(sig(v, digits))
    }
}

impl Field {
    fn text(&self, digits: usize) -> String {
        match self {
            Field::Int(v) => v.to_string(),
            Field::Real(v) => sig(*v, digits),
            Field::Rounds(r) => r.to_string(),
            Field::Text(s) => s.clone(),
            Field::Cops(c) => join(c, " "),
            Field::CopsList(l) => l.iter().map(|c| join(c, " ")).collect::<Vec<_>>().join("; "),
            Field::Ints(v) => join(v, " "),
        }
    }

    fn json(&self, digits: usize) -> Value {
        match self {
            Field::Int(v) => json!(v),
            Field::Real(v) => json_real(*v, digits),
            Field::Rounds(r) => serde_json::to_value(r).expect("rounds serialize"),
            Field::Text(s) => json!(s),
            Field::Cops(c) => json!(c),
            Field::CopsList(l) => json!(l),
            Field::Ints(v) => json!(v),
        }
    }
}

/// One command result: an ordered list of named fields.
pub struct Record {
    command: &'static str,
    fields: Vec<(&'static str, Field)>,
    graph: Option<GraphInfo>,
}

impl Record {
    pub fn new(command: &'static str) -> Self {
        Record { command, fields: Vec::new(), graph: None }
    }

    pub fn push(&mut self, key: &'static str, value: Field) {
        self.fields.push((key, value));
    }

    pub fn graph(&mut self, info: GraphInfo) {
        self.graph = Some(info);
    }

    pub fn report(&mut self, r: &SimReport) {
        self.push("trials", Field::Int(r.trials as u64));
        self.push("mean", Field::Real(r.mean));
        self.push("stderr", Field::Real(r.stderr));
        self.push("max", Field::Int(r.max));
        self.push("censored", Field::Int(r.censored as u64));
        self.push("histogram", Field::Ints(r.histogram.clone()));
        self.push("seed", Field::Int(r.seed));
        self.push("rng", Field::Text(r.rng.clone()));
    }

    pub fn to_json(&self, digits: usize) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), json!(self.command));
        for (k, v) in &self.fields {
            m.insert((*k).into(), v.json(digits));
        }
        if let Some(g) = &self.graph {
            m.insert("graph".into(), serde_json::to_value(g).expect("graph info serializes"));
        }
        Value::Object(m)
    }

    pub fn render(&self, format: Format, digits: usize) -> String {
        match format {
            Format::Json => format!("{}\n", self.to_json(digits)),
            Format::Text => {
                let mut out = String::new();
                for (k, v) in &self.fields {
                    out.push_str(&format!("{k}: {}\n", v.text(digits)));
                }
                if let Some(g) = &self.graph {
                    out.push_str(&format!("graph: {} ({} vertices, {} edges)\n", g.source, g.vertices, g.edges));
                }
                out
            }
            Format::Csv => {
                let mut keys: Vec<&str> = self.fields.iter().map(|(k, _)| *k).collect();
                let mut vals: Vec<String> = self.fields.iter().map(|(_, v)| csv_cell(&v.text(digits))).collect();
                if let Some(g) = &self.graph {
                    keys.extend(["graph", "vertices", "edges"]);
                    vals.extend([csv_cell(&g.source), g.vertices.to_string(), g.edges.to_string()]);
                }
                format!("{}\n{}\n", keys.join(","), vals.join(","))
            }
        }
    }

    pub fn emit(&self, ctx: &Ctx) {
        print!("{}", self.render(ctx.format, ctx.digits));
    }
}

/// Quotes a CSV cell when it contains a delimiter, quote or newline.
pub fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
