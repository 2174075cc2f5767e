use std::path::PathBuf;

use horo_graph::GraphSource;

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub source: String,
    /// Ball radius; defaults to the larger of 8 and depth + horizon.
    pub radius: Option<u32>,
    pub depth: u32,
    pub horizon: u32,
    /// Thinness constant; defaults to 1 for tilings and 0 for trees.
    pub delta: Option<u32>,
    pub cone_depth: u32,
    pub equiv_depth: u32,
    pub max_states: usize,
    pub margin: u32,
    pub out_dir: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            source: "tiling:4,5".into(),
            radius: None,
            depth: 4,
            horizon: 4,
            delta: None,
            cone_depth: 3,
            equiv_depth: 10,
            max_states: 400,
            margin: 0,
            out_dir: None,
        }
    }
}

impl RunConfig {
    /// Sets one key from its text value. Keys use underscores or dashes.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let num = |v: &str| {
            v.parse::<u32>()
                .map_err(|_| CliError::Input(format!("{key}: expected a number, got `{v}`")))
        };
        match key.replace('-', "_").as_str() {
            "source" => self.source = value.to_string(),
            "radius" => self.radius = Some(num(value)?),
            "depth" => self.depth = num(value)?,
            "horizon" => self.horizon = num(value)?,
            "delta" => self.delta = Some(num(value)?),
            "cone_depth" => self.cone_depth = num(value)?,
            "equiv_depth" => self.equiv_depth = num(value)?,
            "max_states" => self.max_states = num(value)? as usize,
            "margin" => self.margin = num(value)?,
            "out_dir" | "out" => self.out_dir = Some(PathBuf::from(value)),
            _ => {
                return Err(CliError::Input(format!(
                    "unknown configuration key `{key}`"
                )))
            }
        }
        Ok(())
    }

    /// Applies `key = value` lines; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<(), CliError> {
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                CliError::Input(format!("config line {}: expected `key = value`", no + 1))
            })?;
            self.set(k.trim(), v.trim())?;
        }
        Ok(())
    }

    pub fn graph_source(&self) -> Result<GraphSource, CliError> {
        Ok(self.source.parse::<GraphSource>()?)
    }

    pub fn radius(&self) -> u32 {
        self.radius.unwrap_or((self.depth + self.horizon).max(8))
    }

    pub fn delta(&self) -> Result<u32, CliError> {
        Ok(match self.delta {
            Some(d) => d,
            None => match self.graph_source()? {
                GraphSource::Tiling { .. } | GraphSource::File(_) => 1,
                GraphSource::Free { .. } | GraphSource::Line => 0,
            },
        })
    }

    pub fn check(&self) -> Result<(), CliError> {
        if self.depth == 0 || self.horizon == 0 || self.cone_depth == 0 || self.equiv_depth == 0 {
            return Err(CliError::Input(
                "depths and horizon must be positive".into(),
            ));
        }
        if self.radius() < self.depth + self.horizon {
            return Err(CliError::Radius(format!(
                "radius {} is below depth {} plus horizon {}",
                self.radius(),
                self.depth,
                self.horizon
            )));
        }
        self.graph_source()?;
        Ok(())
    }
}
