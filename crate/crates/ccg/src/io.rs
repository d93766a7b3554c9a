//! Loaders for the plain-text fixture formats: lexicon tables, discourse
//! databases, implausibility patterns, scoring configuration, and scenario
//! descriptions.

use crate::adjudicator::PenaltyConfig;
use crate::category::IdGen;
use crate::interpreter::{DbAtom, DiscourseDb, PlausibilityDb};
use crate::lexicon::Lexicon;
use crate::literal::parse_terms;
use serde::Deserialize;
use std::fs;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },
}

fn read(path: &Path) -> Result<String, IoError> {
    fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.display().to_string(),
        source,
    })
}

fn parse_err(path: &Path, line: usize, msg: impl Into<String>) -> IoError {
    IoError::Parse {
        path: path.display().to_string(),
        line,
        msg: msg.into(),
    }
}

pub fn load_lexicon(open: &Path, closed: &Path) -> Result<Lexicon, IoError> {
    let open_text = read(open)?;
    let closed_text = read(closed)?;
    Lexicon::from_tsv(&open_text, &closed_text)
        .map_err(|e| parse_err(open, 0, e.to_string()))
}

/// A discourse database: one ground atom per line, `pred(arg, arg).`,
/// with `#` comments and blank lines allowed.
pub fn load_db(path: &Path) -> Result<DiscourseDb, IoError> {
    let text = read(path)?;
    let mut atoms = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let body = line
            .strip_suffix('.')
            .ok_or_else(|| parse_err(path, ln + 1, "atom must end with '.'"))?;
        let (pred, rest) = body
            .split_once('(')
            .ok_or_else(|| parse_err(path, ln + 1, "expected pred(args)"))?;
        let inner = rest
            .strip_suffix(')')
            .ok_or_else(|| parse_err(path, ln + 1, "unclosed '('"))?;
        let pred = pred.trim();
        if pred.is_empty() {
            return Err(parse_err(path, ln + 1, "empty predicate"));
        }
        let args: Vec<&str> = inner.split(',').map(str::trim).collect();
        if args.iter().any(|a| a.is_empty()) {
            return Err(parse_err(path, ln + 1, "empty argument"));
        }
        atoms.push(DbAtom::new(pred, &args));
    }
    Ok(DiscourseDb::new(atoms))
}

/// Implausibility patterns: one bracketed conjunctive pattern per line,
/// `[pred(S,X,_), pred(X)]`, with `#` comments allowed.
pub fn load_plausibility(path: &Path) -> Result<PlausibilityDb, IoError> {
    let text = read(path)?;
    let mut gen = IdGen::new();
    let mut patterns = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let terms = parse_terms(line, &mut gen)
            .map_err(|e| parse_err(path, ln + 1, e.to_string()))?;
        patterns.push(terms);
    }
    Ok(PlausibilityDb { patterns })
}

pub fn load_config(path: &Path) -> Result<PenaltyConfig, IoError> {
    let text = read(path)?;
    PenaltyConfig::from_toml(&text).map_err(|e| parse_err(path, 0, e.to_string()))
}

/// A sentence to run with its discourse context, scoring configuration,
/// and the outcome it should produce.
#[derive(Clone, Debug, Deserialize)]
pub struct Scenario {
    pub sentence: String,
    #[serde(default = "default_context")]
    pub context: String,
    #[serde(default = "default_config")]
    pub config: String,
    /// `ok`, `garden_path`, or `awkward`.
    pub expected: String,
    #[serde(default)]
    pub note: String,
}

fn default_context() -> String {
    "empty".into()
}

fn default_config() -> String {
    "default".into()
}

pub fn load_scenario(path: &Path) -> Result<Scenario, IoError> {
    let text = read(path)?;
    toml::from_str(&text).map_err(|e| parse_err(path, 0, e.to_string()))
}

/// The standard fixture layout rooted at one directory:
/// `lexicon.tsv`, `closed_class.tsv`, `plausibility.txt`,
/// `contexts/<name>.atoms`, `config/<name>.toml`, `scenarios/*.toml`.
pub struct Fixtures {
    pub lexicon: Lexicon,
    pub plausibility: PlausibilityDb,
    root: PathBuf,
}

impl Fixtures {
    pub fn load(root: &Path) -> Result<Fixtures, IoError> {
        let lexicon = load_lexicon(&root.join("lexicon.tsv"), &root.join("closed_class.tsv"))?;
        let plausibility = load_plausibility(&root.join("plausibility.txt"))?;
        Ok(Fixtures {
            lexicon,
            plausibility,
            root: root.to_path_buf(),
        })
    }

    pub fn context(&self, name: &str) -> Result<DiscourseDb, IoError> {
        load_db(&self.root.join("contexts").join(format!("{name}.atoms")))
    }

    pub fn config(&self, name: &str) -> Result<PenaltyConfig, IoError> {
        load_config(&self.root.join("config").join(format!("{name}.toml")))
    }

    /// All scenarios, sorted by file name.
    pub fn scenarios(&self) -> Result<Vec<(String, Scenario)>, IoError> {
        let dir = self.root.join("scenarios");
        let rd = fs::read_dir(&dir).map_err(|source| IoError::Read {
            path: dir.display().to_string(),
            source,
        })?;
        let mut paths: Vec<PathBuf> = rd
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "toml"))
            .collect();
        paths.sort();
        let mut out = Vec::new();
        for p in paths {
            let name = p
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            out.push((name, load_scenario(&p)?));
        }
        Ok(out)
    }
}
