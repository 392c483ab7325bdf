//! TOML manifest: one table per rank naming its files.
//!
//! ```toml
//! [word]
//! tau = "word.fsa"          # or a .grammar file
//! phi = "word.fst"          # optional, identity by default
//! units = { W = "W" }       # final state -> emitted category
//! sigma = { SYL = "syllable" }
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use super::{Rank, RankArchitecture, RankError, RankTriple};
use crate::fsa::{text, FiniteAutomaton, Symbol};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Entry {
    tau: String,
    phi: Option<String>,
    #[serde(default)]
    units: BTreeMap<String, String>,
    #[serde(default)]
    sigma: BTreeMap<String, String>,
}

fn load_tau(name: &str, content: &str) -> Result<FiniteAutomaton, RankError> {
    if name.ends_with(".grammar") {
        Ok(text::parse_grammar(content)?.to_automaton())
    } else {
        Ok(text::parse_automaton(content)?)
    }
}

fn symbol(s: &str) -> Result<Symbol, RankError> {
    Ok(Symbol::new(s)?)
}

/// `read` resolves a file name from the manifest to its contents.
pub fn parse_manifest(
    manifest: &str,
    read: impl Fn(&str) -> Result<String, RankError>,
) -> Result<RankArchitecture, RankError> {
    let entries: BTreeMap<String, Entry> =
        toml::from_str(manifest).map_err(|e| RankError::Manifest(e.message().to_string()))?;
    let mut triples = Vec::new();
    for (name, e) in entries {
        let rank: Rank = name.parse()?;
        let tau = load_tau(&e.tau, &read(&e.tau)?)?;
        let phi = match &e.phi {
            Some(f) => Some(text::parse_transducer(&read(f)?)?),
            None => None,
        };
        let units = e
            .units
            .iter()
            .map(|(k, v)| Ok((k.clone(), symbol(v)?)))
            .collect::<Result<_, RankError>>()?;
        let sigma = e
            .sigma
            .iter()
            .map(|(k, v)| Ok((symbol(k)?, v.clone())))
            .collect::<Result<_, RankError>>()?;
        triples.push(RankTriple::new(rank, tau, units, sigma, phi)?);
    }
    RankArchitecture::new(triples)
}

/// Reads a manifest and resolves its file names against its directory.
pub fn load_manifest(path: &Path) -> Result<RankArchitecture, RankError> {
    let io = |p: &Path, e: std::io::Error| RankError::Io {
        path: p.display().to_string(),
        message: e.to_string(),
    };
    let manifest = std::fs::read_to_string(path).map_err(|e| io(path, e))?;
    let dir = path.parent().unwrap_or(Path::new("."));
    parse_manifest(&manifest, |name| {
        let p = dir.join(name);
        std::fs::read_to_string(&p).map_err(|e| io(&p, e))
    })
}
