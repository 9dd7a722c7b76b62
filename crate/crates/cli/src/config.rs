use std::path::PathBuf;

use clap::ValueEnum;
use serde::Serialize;
use topcoh::complexes::BuildOptions;
use topcoh::homology::HomologyOptions;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Csv,
    Json,
}

/// Settings shared by every command; recorded in structured output.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub format: OutputFormat,
    pub cache_dir: Option<PathBuf>,
    pub seed: u64,
    pub max_simplices: u64,
    pub snf_budget: u128,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.max_simplices == 0 {
            return Err("--max-simplices must be positive".into());
        }
        if self.snf_budget == 0 {
            return Err("--snf-budget must be positive".into());
        }
        Ok(())
    }

    pub fn build_options(&self, max_dim: Option<usize>) -> BuildOptions {
        BuildOptions {
            max_simplices: self.max_simplices,
            max_dim,
        }
    }

    pub fn homology_options(&self, snf: bool, max_degree: Option<i64>) -> HomologyOptions {
        HomologyOptions {
            seed: self.seed,
            snf,
            snf_budget: self.snf_budget,
            max_degree,
        }
    }
}
