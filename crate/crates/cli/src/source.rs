use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::Serialize;

use pursuit_core::graph::{parse_edge_list, Family, Graph};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Path,
    Cycle,
    Tree,
    Grid,
    Barbell,
    Lollipop,
    Complete,
}

/// Where the graph comes from: a named family or an edge-list file.
#[derive(Args, Debug, Clone)]
pub struct GraphArgs {
    /// Graph family.
    #[arg(long, value_enum, conflicts_with = "file")]
    pub family: Option<FamilyName>,
    /// Vertex count (grid: side length).
    #[arg(long)]
    pub n: Option<usize>,
    /// Tree branching factor.
    #[arg(long)]
    pub d: Option<usize>,
    /// Tree depth.
    #[arg(long)]
    pub depth: Option<usize>,
    /// Clique fraction for barbell and lollipop.
    #[arg(long)]
    pub c: Option<f64>,
    /// Edge-list file: header `n m`, then one `u v` per line.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphInfo {
    pub source: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
    pub vertices: usize,
    pub edges: usize,
}

pub fn family(
    name: FamilyName,
    n: Option<usize>,
    c: Option<f64>,
    d: Option<usize>,
    depth: Option<usize>,
) -> Result<Family, CliError> {
    let need = |v: Option<usize>, flag: &str| {
        v.ok_or_else(|| CliError::usage(format!("--family {} needs --{flag}", name_of(name))))
    };
    Ok(match name {
        FamilyName::Path => Family::Path { n: need(n, "n")? },
        FamilyName::Cycle => Family::Cycle { n: need(n, "n")? },
        FamilyName::Grid => Family::Grid { n: need(n, "n")? },
        FamilyName::Complete => Family::Complete { n: need(n, "n")? },
        FamilyName::Tree => Family::CompleteTree { d: need(d, "d")?, depth: need(depth, "depth")? },
        FamilyName::Barbell => Family::Barbell {
            n: need(n, "n")?,
            c: c.ok_or_else(|| CliError::usage("--family barbell needs --c".into()))?,
        },
        FamilyName::Lollipop => Family::Lollipop {
            n: need(n, "n")?,
            c: c.ok_or_else(|| CliError::usage("--family lollipop needs --c".into()))?,
        },
    })
}

pub fn name_of(name: FamilyName) -> String {
    name.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
}

impl GraphArgs {
    pub fn load(&self) -> Result<(Graph, GraphInfo), CliError> {
        if let Some(path) = &self.file {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
            let g = parse_edge_list(&text)?;
            let info = GraphInfo {
                source: path.display().to_string(),
                family: None,
                vertices: g.n(),
                edges: g.edge_count(),
            };
            return Ok((g, info));
        }
        let name = self.family.ok_or_else(|| CliError::usage("give --family or --file".into()))?;
        let fam = family(name, self.n, self.c, self.d, self.depth)?;
        let g = fam.build()?;
        let info = GraphInfo {
            source: fam.name().to_string(),
            vertices: g.n(),
            edges: g.edge_count(),
            family: Some(fam),
        };
        Ok((g, info))
    }
}
