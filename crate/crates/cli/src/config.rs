//! Pipeline configuration (TOML). Relative paths resolve against the
//! directory holding the config file.

use std::path::{Path, PathBuf};

use argkg_core::analytics::{Baseline, Selector};
use argkg_core::annotate::{PortConfig, PortMode};
use argkg_core::concepts::{LinkConfig, PageRankConfig};
use argkg_core::similarity::SimilaritySource;
use argkg_core::CampDimension;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const SNAPSHOT_FILE: &str = "graph.snap";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineConfig {
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    /// Defaults to `<output_dir>/graph.snap`.
    #[serde(default)]
    pub snapshot: Option<PathBuf>,
    pub inputs: Inputs,
    #[serde(default)]
    pub link: LinkParams,
    #[serde(default)]
    pub annotators: Vec<PortConfig>,
    #[serde(default)]
    pub analyze: AnalyzeParams,
    #[serde(default)]
    pub eval: EvalParams,
    #[serde(default)]
    pub serve: ServeParams,
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Inputs {
    pub debates: PathBuf,
    #[serde(default)]
    pub authors: Option<PathBuf>,
    #[serde(default)]
    pub concept_dump: Option<PathBuf>,
    /// Language tag kept from the concept dump; `"*"` keeps every row.
    #[serde(default = "default_language")]
    pub concept_language: String,
    #[serde(default)]
    pub seeds: Option<PathBuf>,
    #[serde(default)]
    pub gold: Option<PathBuf>,
    #[serde(default)]
    pub relative_gold: Option<PathBuf>,
}

fn default_language() -> String {
    "en".to_owned()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LinkParams {
    pub seeds_per_sentence: usize,
    pub damping: f64,
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for LinkParams {
    fn default() -> Self {
        let d = LinkConfig::default();
        LinkParams {
            seeds_per_sentence: d.seeds_per_sentence,
            damping: d.pagerank.damping,
            tolerance: d.pagerank.tolerance,
            max_iterations: d.pagerank.max_iterations,
        }
    }
}

impl LinkParams {
    pub fn to_link_config(self) -> LinkConfig {
        LinkConfig {
            seeds_per_sentence: self.seeds_per_sentence,
            pagerank: PageRankConfig {
                damping: self.damping,
                tolerance: self.tolerance,
                max_iterations: self.max_iterations,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixComparison {
    pub name: String,
    pub a: String,
    pub b: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeltaSpec {
    pub name: String,
    pub selector: String,
    #[serde(default = "default_baseline")]
    pub baseline: Baseline,
    /// Restricts the complement baseline to this selector's arguments.
    #[serde(default)]
    pub within: Option<String>,
}

fn default_baseline() -> Baseline {
    Baseline::Complement
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CampSpec {
    pub dimension: CampDimension,
    pub a: String,
    pub b: String,
    /// Issue scope; all issues when absent.
    #[serde(default)]
    pub issues: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AnalyzeParams {
    pub comparisons: Vec<MatrixComparison>,
    /// When empty, every issue gets a pro-versus-con delta.
    pub concept_deltas: Vec<DeltaSpec>,
    pub camp_comparisons: Vec<CampSpec>,
    pub embedding_dim: usize,
    pub nearest_k: usize,
}

impl Default for AnalyzeParams {
    fn default() -> Self {
        AnalyzeParams {
            comparisons: Vec::new(),
            concept_deltas: Vec::new(),
            camp_comparisons: Vec::new(),
            embedding_dim: 2,
            nearest_k: 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EvalParams {
    pub thetas: Vec<f64>,
    pub similarity_sources: Vec<SimilaritySource>,
}

impl Default for EvalParams {
    fn default() -> Self {
        EvalParams {
            thetas: vec![0.0, 0.1, 0.33],
            similarity_sources: vec![SimilaritySource::Jaccard, SimilaritySource::Idf, SimilaritySource::Tfidf],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ServeParams {
    pub addr: String,
}

impl Default for ServeParams {
    fn default() -> Self {
        ServeParams {
            addr: "127.0.0.1:8080".to_owned(),
        }
    }
}

fn resolve(base: &Path, p: &mut PathBuf) {
    if p.is_relative() {
        *p = base.join(&*p);
    }
}

fn require_file(what: &str, p: &Path) -> CliResult<()> {
    if p.is_file() {
        Ok(())
    } else {
        Err(CliError::Config(format!("{what} not found: {}", p.display())))
    }
}

impl PipelineConfig {
    pub fn parse(text: &str, base: &Path) -> CliResult<PipelineConfig> {
        let mut cfg: PipelineConfig = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        resolve(base, &mut cfg.output_dir);
        if let Some(s) = cfg.snapshot.as_mut() {
            resolve(base, s);
        }
        let i = &mut cfg.inputs;
        resolve(base, &mut i.debates);
        for p in [&mut i.authors, &mut i.concept_dump, &mut i.seeds, &mut i.gold, &mut i.relative_gold]
            .into_iter()
            .flatten()
        {
            resolve(base, p);
        }
        for port in &mut cfg.annotators {
            if let Some(p) = port.path.as_mut() {
                resolve(base, p);
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> CliResult<PipelineConfig> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new("."));
        PipelineConfig::parse(&text, base)
    }

    /// Checks every referenced path and every selector.
    pub fn validate(&self) -> CliResult<()> {
        let i = &self.inputs;
        require_file("debates file", &i.debates)?;
        for (what, p) in [
            ("authors file", &i.authors),
            ("concept dump", &i.concept_dump),
            ("seed file", &i.seeds),
            ("gold file", &i.gold),
            ("relative gold file", &i.relative_gold),
        ] {
            if let Some(p) = p {
                require_file(what, p)?;
            }
        }
        for port in &self.annotators {
            port.validate().map_err(|e| CliError::Config(e.to_string()))?;
            if let (Some(p), PortMode::PrecomputedFile | PortMode::LexiconBaseline) = (&port.path, port.mode) {
                require_file("annotator file", p)?;
            }
        }
        let l = &self.link;
        if l.seeds_per_sentence == 0 || !(0.0..1.0).contains(&l.damping) || l.max_iterations == 0 {
            return Err(CliError::Config("link parameters out of range".into()));
        }
        let sel = |s: &str| -> CliResult<()> {
            s.parse::<Selector>()
                .map(|_| ())
                .map_err(|e| CliError::Config(format!("selector '{s}': {e}")))
        };
        for c in &self.analyze.comparisons {
            sel(&c.a)?;
            sel(&c.b)?;
        }
        for d in &self.analyze.concept_deltas {
            sel(&d.selector)?;
            if let Some(w) = &d.within {
                sel(w)?;
            }
        }
        for c in &self.analyze.camp_comparisons {
            for camp in [&c.a, &c.b] {
                if c.dimension.camp(camp).is_none() {
                    return Err(CliError::Config(format!("unknown {} camp '{camp}'", c.dimension)));
                }
            }
        }
        if self.analyze.embedding_dim == 0 {
            return Err(CliError::Config("embedding_dim must be at least 1".into()));
        }
        if self.eval.thetas.iter().any(|t| t.is_nan() || *t < 0.0) {
            return Err(CliError::Config("thetas must be nonnegative".into()));
        }
        Ok(())
    }

    pub fn snapshot_path(&self) -> PathBuf {
        self.snapshot
            .clone()
            .unwrap_or_else(|| self.output_dir.join(SNAPSHOT_FILE))
    }

    pub fn concept_language(&self) -> Option<&str> {
        Some(self.inputs.concept_language.as_str()).filter(|l| *l != "*")
    }
}
