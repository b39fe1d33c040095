use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use serde_json::{json, Map, Value};

use pursuit_core::fmt::sig;
use pursuit_core::graph::Family;
use pursuit_core::par;
use pursuit_core::solver::{caar_solve_with, cadr_solve, cost_of_drunkenness, CodOptions};
use pursuit_core::{ConfigSpace, Rounds};

use crate::output::{csv_cell, json_real, Format};
use crate::source::{family, FamilyName};
use crate::{CliError, Ctx, SolverArgs};

pub const COLUMNS: [&str; 12] =
    ["family", "n", "c", "d", "depth", "k", "ct", "dct", "F", "sweeps", "wall_ms", "error"];

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    family: FamilyName,
    /// Comma-separated path lengths (grid: side lengths).
    #[arg(long, value_delimiter = ',')]
    n: Vec<usize>,
    /// Comma-separated clique fractions for barbell and lollipop.
    #[arg(long, value_delimiter = ',')]
    c: Vec<f64>,
    /// Tree branching factor.
    #[arg(long)]
    d: Option<usize>,
    /// Comma-separated tree depths.
    #[arg(long, value_delimiter = ',')]
    depth: Vec<usize>,
    /// Cop count; by default the cop number of each instance.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 3)]
    max_k: usize,
    #[command(flatten)]
    solver: SolverArgs,
    /// Write the table here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

struct Row {
    family: Family,
    k: Option<usize>,
    ct: Option<Rounds>,
    dct: Option<f64>,
    ratio: Option<f64>,
    sweeps: Option<usize>,
    wall_ms: f64,
    error: Option<String>,
}

fn instances(args: &SweepArgs) -> Result<Vec<Family>, CliError> {
    let mut out = Vec::new();
    match args.family {
        FamilyName::Tree => {
            if args.depth.is_empty() {
                return Err(CliError::usage("tree sweep needs --depth".into()));
            }
            for &depth in &args.depth {
                out.push(family(args.family, None, None, args.d, Some(depth))?);
            }
        }
        FamilyName::Barbell | FamilyName::Lollipop => {
            if args.n.is_empty() || args.c.is_empty() {
                return Err(CliError::usage("barbell and lollipop sweeps need --n and --c".into()));
            }
            for &n in &args.n {
                for &c in &args.c {
                    out.push(family(args.family, Some(n), Some(c), None, None)?);
                }
            }
        }
        _ => {
            if args.n.is_empty() {
                return Err(CliError::usage("sweep needs --n".into()));
            }
            for &n in &args.n {
                out.push(family(args.family, Some(n), None, None, None)?);
            }
        }
    }
    Ok(out)
}

fn solve(fam: &Family, args: &SweepArgs, ctx: &Ctx) -> Row {
    let started = Instant::now();
    let mut row = Row {
        family: fam.clone(),
        k: args.k,
        ct: None,
        dct: None,
        ratio: None,
        sweeps: None,
        wall_ms: 0.0,
        error: None,
    };
    let opts = args.solver.options(ctx.exec);
    let result = (|| -> pursuit_core::Result<()> {
        let g = fam.build()?;
        match args.k {
            Some(k) => {
                let space = ConfigSpace::with_cap(&g, k, ctx.state_cap)?;
                let ct = caar_solve_with(&space, ctx.exec).capture_time();
                row.ct = Some(ct);
                let sol = cadr_solve(&space, &opts)?;
                let dct = sol.expected_capture_time();
                row.dct = Some(dct);
                row.ratio = Some(ct.as_f64() / dct);
                row.sweeps = Some(sol.sweeps);
            }
            None => {
                let f = cost_of_drunkenness(&g, &opts, &CodOptions { max_k: args.max_k, state_cap: ctx.state_cap })?;
                row.k = Some(f.cop_number);
                row.ct = Some(f.ct);
                row.dct = Some(f.dct);
                row.ratio = Some(f.ratio);
                row.sweeps = Some(f.sweeps);
            }
        }
        Ok(())
    })();
    row.error = result.err().map(|e| e.to_string());
    row.wall_ms = started.elapsed().as_secs_f64() * 1e3;
    row
}

fn params(f: &Family) -> [Option<Value>; 4] {
    match *f {
        Family::Path { n } | Family::Cycle { n } | Family::Grid { n } | Family::Complete { n } => {
            [Some(json!(n)), None, None, None]
        }
        Family::Barbell { n, c } | Family::Lollipop { n, c } => [Some(json!(n)), Some(json!(c)), None, None],
        Family::CompleteTree { d, depth } => [None, None, Some(json!(d)), Some(json!(depth))],
    }
}

impl Row {
    fn cells(&self, digits: usize) -> Vec<Value> {
        let opt = |v: Option<Value>| v.unwrap_or(Value::Null);
        let [n, c, d, depth] = params(&self.family);
        vec![
            json!(self.family.name()),
            opt(n),
            opt(c),
            opt(d),
            opt(depth),
            opt(self.k.map(|k| json!(k))),
            opt(self.ct.map(|r| serde_json::to_value(r).expect("rounds serialize"))),
            opt(self.dct.map(|v| json_real(v, digits))),
            opt(self.ratio.map(|v| json_real(v, digits))),
            opt(self.sweeps.map(|s| json!(s))),
            json_real(self.wall_ms, digits),
            opt(self.error.as_ref().map(|e| json!(e))),
        ]
    }

    fn csv(&self, digits: usize) -> String {
        let [n, _, d, depth] = params(&self.family);
        let c = match self.family {
            Family::Barbell { c, .. } | Family::Lollipop { c, .. } => sig(c, digits),
            _ => String::new(),
        };
        let plain = |v: Option<Value>| match v {
            Some(Value::String(s)) => s,
            Some(v) => v.to_string(),
            None => String::new(),
        };
        let real = |v: Option<f64>| v.map(|v| sig(v, digits)).unwrap_or_default();
        [
            self.family.name().to_string(),
            plain(n),
            c,
            plain(d),
            plain(depth),
            self.k.map(|k| k.to_string()).unwrap_or_default(),
            self.ct.map(|r| r.to_string()).unwrap_or_default(),
            real(self.dct),
            real(self.ratio),
            self.sweeps.map(|s| s.to_string()).unwrap_or_default(),
            sig(self.wall_ms, digits),
            csv_cell(self.error.as_deref().unwrap_or("")),
        ]
        .join(",")
    }
}

/// Rows run in parallel but are written in input order. A failing row
/// records its error and the sweep continues.
pub fn run(args: &SweepArgs, ctx: &Ctx) -> Result<u8, CliError> {
    let fams = instances(args)?;
    let rows = par::map_indices(ctx.exec, fams.len(), |i| solve(&fams[i], args, ctx));
    let text = if ctx.format == Format::Json {
        let list: Vec<Value> = rows
            .iter()
            .map(|r| {
                let m: Map<String, Value> =
                    COLUMNS.iter().map(|c| c.to_string()).zip(r.cells(ctx.digits)).collect();
                Value::Object(m)
            })
            .collect();
        format!("{}\n", Value::Array(list))
    } else {
        let mut out = COLUMNS.join(",");
        out.push('\n');
        for r in &rows {
            out.push_str(&r.csv(ctx.digits));
            out.push('\n');
        }
        out
    };
    match &args.output {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| CliError::usage(format!("cannot write {}: {e}", p.display())))?,
        None => print!("{text}"),
    }
    Ok(0)
}
