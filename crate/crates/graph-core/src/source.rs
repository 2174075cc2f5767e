use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::GraphError;

/// Where a ball comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphSource {
    /// Regular tiling by `p`-gons with `q` meeting at each vertex.
    Tiling { p: usize, q: usize },
    /// Cayley tree of the free group of the given rank.
    Free { rank: usize },
    /// The integer line.
    Line,
    /// Edge-list file (`base <id>` header, `edge <id> <id>` lines).
    File(PathBuf),
}

/// The structural family of a built ball, without file paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceKind {
    Tiling { p: usize, q: usize },
    Free { rank: usize },
    Line,
    File,
}

impl GraphSource {
    pub fn kind(&self) -> SourceKind {
        match *self {
            GraphSource::Tiling { p, q } => SourceKind::Tiling { p, q },
            GraphSource::Free { rank } => SourceKind::Free { rank },
            GraphSource::Line => SourceKind::Line,
            GraphSource::File(_) => SourceKind::File,
        }
    }
}

impl FromStr for GraphSource {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "line" {
            return Ok(GraphSource::Line);
        }
        if let Some(rest) = s.strip_prefix("tiling:") {
            let (p, q) = rest
                .split_once(',')
                .ok_or_else(|| GraphError::input(format!("expected tiling:<p>,<q>, got `{s}`")))?;
            let p: usize = parse_num(p, s)?;
            let q: usize = parse_num(q, s)?;
            // (p-2)(q-2) > 4 is the hyperbolic range.
            if p < 3 || q < 3 || (p - 2) * (q - 2) <= 4 {
                return Err(GraphError::input(format!(
                    "tiling {{{p},{q}}} is not hyperbolic"
                )));
            }
            if q > 255 {
                return Err(GraphError::input("vertex degree above 255"));
            }
            return Ok(GraphSource::Tiling { p, q });
        }
        if let Some(rest) = s.strip_prefix("free:") {
            let rank: usize = parse_num(rest, s)?;
            if rank == 0 || rank > 127 {
                return Err(GraphError::input(format!("unsupported free rank {rank}")));
            }
            return Ok(GraphSource::Free { rank });
        }
        if let Some(rest) = s.strip_prefix("file:") {
            return Ok(GraphSource::File(PathBuf::from(rest)));
        }
        Err(GraphError::input(format!("unknown graph source `{s}`")))
    }
}

fn parse_num(text: &str, whole: &str) -> Result<usize, GraphError> {
    text.trim()
        .parse()
        .map_err(|_| GraphError::input(format!("bad number in source `{whole}`")))
}

impl fmt::Display for GraphSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSource::Tiling { p, q } => write!(f, "tiling:{p},{q}"),
            GraphSource::Free { rank } => write!(f, "free:{rank}"),
            GraphSource::Line => write!(f, "line"),
            GraphSource::File(path) => write!(f, "file:{}", path.display()),
        }
    }
}
