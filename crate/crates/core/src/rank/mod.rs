//! The six-rank architecture: one structure automaton, meaning table and
//! interpretation transducer per rank, strictly layered.

mod manifest;
mod session;
mod stream;
mod toy;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::fsa::{FiniteAutomaton, FsaError, StateId, Symbol, Transducer};

pub use manifest::{load_manifest, parse_manifest};
pub use session::{process_incremental, Diagnostic, Instrumentation, ProcessResult, Session, DEFAULT_QUEUE_CAP, GAP};
pub use stream::{multilinear_align, parse_streams, write_streams, Alignment, Stream, StreamToken};
pub use toy::{toy_architecture, toy_architecture_files};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RankError {
    #[error("no triple for rank {0}")]
    MissingRank(Rank),
    #[error("rank {0} given twice")]
    DuplicateRank(Rank),
    #[error("rank {rank}: state {state} merges finals with different units")]
    ConflictingUnits { rank: Rank, state: String },
    #[error("rank {rank}: unit for unknown or non-final state {state}")]
    UnitState { rank: Rank, state: String },
    #[error("manifest: {0}")]
    Manifest(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("streams of different ranks ({0} and {1}) do not share an index base")]
    DisjointBases(Rank, Rank),
    #[error("line {line}: {message}")]
    StreamParse { line: usize, message: String },
    #[error("invalid stream: {0}")]
    InvalidStream(String),
    #[error(transparent)]
    Fsa(#[from] FsaError),
}

impl RankError {
    pub fn code(&self) -> &'static str {
        match self {
            RankError::MissingRank(_) => "MISSING_RANK",
            RankError::DuplicateRank(_) => "DUPLICATE_RANK",
            RankError::ConflictingUnits { .. } => "CONFLICTING_UNITS",
            RankError::UnitState { .. } => "UNIT_STATE",
            RankError::Manifest(_) => "MANIFEST",
            RankError::Io { .. } => "IO",
            RankError::DisjointBases(..) => "DISJOINT_BASES",
            RankError::StreamParse { .. } => "STREAM_PARSE",
            RankError::InvalidStream(_) => "INVALID_STREAM",
            RankError::Fsa(e) => e.code(),
        }
    }
}

/// Ranks from largest to smallest domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Rank {
    Discourse,
    Utterance,
    Phrase,
    Word,
    Morpheme,
    Phoneme,
}

impl Rank {
    pub const ALL: [Rank; 6] = [
        Rank::Discourse,
        Rank::Utterance,
        Rank::Phrase,
        Rank::Word,
        Rank::Morpheme,
        Rank::Phoneme,
    ];

    /// 0 for discourse through 5 for phoneme.
    pub fn index(self) -> usize {
        self as usize
    }

    /// The rank whose units this rank is built from.
    pub fn below(self) -> Option<Rank> {
        Rank::ALL.get(self.index() + 1).copied()
    }

    pub fn above(self) -> Option<Rank> {
        self.index().checked_sub(1).map(|i| Rank::ALL[i])
    }

    pub fn name(self) -> &'static str {
        match self {
            Rank::Discourse => "discourse",
            Rank::Utterance => "utterance",
            Rank::Phrase => "phrase",
            Rank::Word => "word",
            Rank::Morpheme => "morpheme",
            Rank::Phoneme => "phoneme",
        }
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Rank {
    type Err = RankError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Rank::ALL
            .into_iter()
            .find(|r| r.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| RankError::Manifest(format!("unknown rank {s:?}")))
    }
}

/// Structure, meaning and interpretation at one rank.
///
/// `tau` reads units of the rank below (raw symbols at the phoneme rank);
/// reaching a final state completes a unit of this rank, named by `units`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankTriple {
    pub rank: Rank,
    tau: FiniteAutomaton,
    units: BTreeMap<StateId, Symbol>,
    pub sigma: BTreeMap<Symbol, String>,
    pub phi: Transducer,
}

impl RankTriple {
    /// `units` maps final state names to the category they complete; other
    /// finals emit their own name. A nondeterministic `tau` is determinized,
    /// and merged finals must agree on their unit. `phi` defaults to the
    /// identity over the terminals.
    pub fn new(
        rank: Rank,
        tau: FiniteAutomaton,
        units: BTreeMap<String, Symbol>,
        sigma: BTreeMap<Symbol, String>,
        phi: Option<Transducer>,
    ) -> Result<Self, RankError> {
        tau.validate()?;
        let mut by_state: BTreeMap<StateId, Symbol> = BTreeMap::new();
        for (name, unit) in &units {
            match tau.state_id(name) {
                Some(s) if tau.is_final(s) => {
                    by_state.insert(s, unit.clone());
                }
                _ => {
                    return Err(RankError::UnitState {
                        rank,
                        state: name.clone(),
                    })
                }
            }
        }
        for &f in tau.finals() {
            by_state
                .entry(f)
                .or_insert_with(|| Symbol::new(tau.state_name(f)).expect("state names have no whitespace"));
        }
        let (tau, by_state) = if tau.is_deterministic() {
            (tau, by_state)
        } else {
            let (dfa, subsets) = tau.determinize_with_subsets();
            let mut mapped = BTreeMap::new();
            for (id, subset) in subsets.iter().enumerate() {
                let found: BTreeSet<&Symbol> = subset.iter().filter_map(|s| by_state.get(s)).collect();
                match found.len() {
                    0 => {}
                    1 => {
                        mapped.insert(id, (*found.iter().next().unwrap()).clone());
                    }
                    _ => {
                        return Err(RankError::ConflictingUnits {
                            rank,
                            state: dfa.state_name(id).to_string(),
                        })
                    }
                }
            }
            (dfa, mapped)
        };
        let phi = phi.unwrap_or_else(|| Transducer::identity(tau.alphabet()));
        Ok(RankTriple {
            rank,
            tau,
            units: by_state,
            sigma,
            phi,
        })
    }

    pub fn tau(&self) -> &FiniteAutomaton {
        &self.tau
    }

    /// Category completed at a final state.
    pub fn unit_at(&self, state: StateId) -> Option<&Symbol> {
        self.units.get(&state)
    }

    /// All categories this rank can emit.
    pub fn unit_categories(&self) -> BTreeSet<&Symbol> {
        self.units.values().collect()
    }

    /// Units keyed by state name, as written in a manifest.
    pub fn unit_table(&self) -> BTreeMap<String, Symbol> {
        self.units
            .iter()
            .map(|(s, u)| (self.tau.state_name(*s).to_string(), u.clone()))
            .collect()
    }

    pub fn terminals(&self) -> &BTreeSet<Symbol> {
        self.tau.alphabet()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankArchitecture {
    triples: Vec<RankTriple>,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct LayeringViolation {
    pub rank: Rank,
    pub symbol: String,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct LayeringReport {
    pub ok: bool,
    pub violations: Vec<LayeringViolation>,
    /// Meaning or interpretation tables that miss some terminal.
    pub warnings: Vec<String>,
}

impl RankArchitecture {
    /// Exactly one triple per rank, in any order.
    pub fn new(triples: Vec<RankTriple>) -> Result<Self, RankError> {
        let mut slots: Vec<Option<RankTriple>> = vec![None; 6];
        for t in triples {
            let i = t.rank.index();
            if slots[i].is_some() {
                return Err(RankError::DuplicateRank(t.rank));
            }
            slots[i] = Some(t);
        }
        let triples = slots
            .into_iter()
            .enumerate()
            .map(|(i, t)| t.ok_or(RankError::MissingRank(Rank::ALL[i])))
            .collect::<Result<_, _>>()?;
        Ok(RankArchitecture { triples })
    }

    pub fn triple(&self, rank: Rank) -> &RankTriple {
        &self.triples[rank.index()]
    }

    pub fn triples(&self) -> &[RankTriple] {
        &self.triples
    }

    /// Checks that each rank reads only units of the rank directly below,
    /// and that raw phoneme-rank input never names a unit of any rank.
    /// Cycles inside one rank's automaton are allowed.
    pub fn validate_layering(&self) -> LayeringReport {
        let mut report = LayeringReport::default();
        let owners = |s: &Symbol| -> Vec<Rank> {
            Rank::ALL
                .into_iter()
                .filter(|r| self.triple(*r).unit_categories().contains(s))
                .collect()
        };
        for t in &self.triples {
            for s in t.terminals() {
                let found = owners(s);
                let reason = match t.rank.below() {
                    Some(below) if found.contains(&below) => None,
                    Some(below) if found.is_empty() => Some(format!("not a unit of the {below} rank")),
                    Some(_) => Some(format!("unit of the {} rank, not of the rank below", found[0])),
                    None if found.is_empty() => None,
                    None => Some(format!("raw input names a unit of the {} rank", found[0])),
                };
                if let Some(reason) = reason {
                    report.violations.push(LayeringViolation {
                        rank: t.rank,
                        symbol: s.to_string(),
                        reason,
                    });
                }
                if !t.sigma.contains_key(s) {
                    report.warnings.push(format!("{}: no meaning label for {s}", t.rank));
                }
                if !t.phi.input_alphabet().contains(s) {
                    report.warnings.push(format!("{}: interpretation does not read {s}", t.rank));
                }
            }
        }
        report.ok = report.violations.is_empty();
        report
    }
}
