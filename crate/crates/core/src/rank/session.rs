//! Incremental cascade over the six ranks.

use std::collections::{BTreeMap, HashMap, VecDeque};

use super::{Rank, RankArchitecture, Stream, StreamToken};
use crate::fsa::{StateId, Symbol};

/// Symbol recorded where a rank could not parse its input.
pub const GAP: &str = "<gap>";

pub const DEFAULT_QUEUE_CAP: usize = 8;

#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct Instrumentation {
    /// Automaton moves across all ranks caused by each input symbol.
    pub per_symbol_steps: Vec<usize>,
    /// Moves made while flushing at end of input.
    pub finish_steps: usize,
    /// Peak of one cell per rank for the current state plus queued tokens.
    pub max_memory_cells: usize,
}

impl Instrumentation {
    pub fn total_steps(&self) -> usize {
        self.per_symbol_steps.iter().sum::<usize>() + self.finish_steps
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Diagnostic {
    pub rank: Rank,
    /// Index of the offending token in the stream the rank reads.
    pub position: usize,
    pub state: String,
    /// `None` when input ended inside an unfinished unit.
    pub symbol: Option<String>,
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct ProcessResult {
    pub streams: BTreeMap<Rank, Stream>,
    pub instrumentation: Instrumentation,
    pub diagnostics: Vec<Diagnostic>,
    /// Queue overflows; each breaks the finite-memory contract.
    pub violations: Vec<String>,
}

struct Cursor {
    state: StateId,
    /// First and last consumed index of the open unit.
    span: Option<(usize, usize)>,
    queue: VecDeque<(usize, Symbol)>,
}

struct Table {
    initial: StateId,
    delta: HashMap<(StateId, Symbol), StateId>,
    has_out: Vec<bool>,
}

/// One pass over a PHONEME-rank input. Owns all mutable cursors, so one
/// session belongs to one thread; independent sessions can run in parallel.
pub struct Session<'a> {
    arch: &'a RankArchitecture,
    tables: Vec<Table>,
    cursors: Vec<Cursor>,
    streams: Vec<Vec<StreamToken>>,
    queue_cap: usize,
    position: usize,
    instrumentation: Instrumentation,
    diagnostics: Vec<Diagnostic>,
    violations: Vec<String>,
}

impl<'a> Session<'a> {
    pub fn new(arch: &'a RankArchitecture) -> Self {
        Self::with_queue_cap(arch, DEFAULT_QUEUE_CAP)
    }

    pub fn with_queue_cap(arch: &'a RankArchitecture, queue_cap: usize) -> Self {
        let tables: Vec<Table> = arch
            .triples()
            .iter()
            .map(|t| {
                let tau = t.tau();
                let mut has_out = vec![false; tau.num_states()];
                let mut delta = HashMap::new();
                for tr in tau.transitions() {
                    if let Some(label) = &tr.label {
                        delta.insert((tr.src, label.clone()), tr.dst);
                        has_out[tr.src] = true;
                    }
                }
                Table {
                    initial: tau.initial(),
                    delta,
                    has_out,
                }
            })
            .collect();
        let cursors = tables
            .iter()
            .map(|t| Cursor {
                state: t.initial,
                span: None,
                queue: VecDeque::new(),
            })
            .collect();
        let mut session = Session {
            arch,
            tables,
            cursors,
            streams: vec![Vec::new(); 6],
            queue_cap,
            position: 0,
            instrumentation: Instrumentation::default(),
            diagnostics: Vec::new(),
            violations: Vec::new(),
        };
        session.measure();
        session
    }

    /// Feeds one raw symbol through every rank.
    pub fn push(&mut self, symbol: Symbol) {
        let bottom = Rank::Phoneme.index();
        self.enqueue(bottom, self.position, symbol);
        self.position += 1;
        let steps = self.drain_all(false);
        self.instrumentation.per_symbol_steps.push(steps);
    }

    /// Tokens emitted so far at `rank`, before any end-of-input flush.
    pub fn stream(&self, rank: Rank) -> &[StreamToken] {
        &self.streams[rank.index()]
    }

    pub fn finish(mut self) -> ProcessResult {
        self.instrumentation.finish_steps = self.drain_all(true);
        let streams = Rank::ALL
            .into_iter()
            .map(|r| {
                (
                    r,
                    Stream {
                        rank: r,
                        tokens: std::mem::take(&mut self.streams[r.index()]),
                    },
                )
            })
            .collect();
        ProcessResult {
            streams,
            instrumentation: self.instrumentation,
            diagnostics: self.diagnostics,
            violations: self.violations,
        }
    }

    fn drain_all(&mut self, flush: bool) -> usize {
        let mut steps = 0;
        for r in (0..6).rev() {
            while let Some((idx, sym)) = self.cursors[r].queue.pop_front() {
                steps += self.feed(r, idx, sym);
            }
            if flush {
                self.flush(r);
            }
        }
        steps
    }

    fn enqueue(&mut self, r: usize, idx: usize, symbol: Symbol) {
        let q = &mut self.cursors[r].queue;
        q.push_back((idx, symbol));
        if q.len() > self.queue_cap {
            self.violations.push(format!(
                "{} queue holds {} tokens, cap is {}",
                Rank::ALL[r],
                q.len(),
                self.queue_cap
            ));
        }
        self.measure();
    }

    fn measure(&mut self) {
        let cells = self.cursors.iter().map(|c| 1 + c.queue.len()).sum();
        self.instrumentation.max_memory_cells = self.instrumentation.max_memory_cells.max(cells);
    }

    fn step(&self, r: usize, state: StateId, symbol: &Symbol) -> Option<StateId> {
        self.tables[r].delta.get(&(state, symbol.clone())).copied()
    }

    /// Returns the number of moves made.
    fn feed(&mut self, r: usize, idx: usize, symbol: Symbol) -> usize {
        let state = self.cursors[r].state;
        if let Some(next) = self.step(r, state, &symbol) {
            self.advance(r, idx, next);
            return 1;
        }
        let tau = self.arch.triples()[r].tau();
        if self.cursors[r].span.is_some() {
            if tau.is_final(state) {
                self.emit(r);
            } else {
                self.gap(r, idx, Some(symbol.to_string()));
            }
        }
        let initial = self.tables[r].initial;
        match self.step(r, initial, &symbol) {
            Some(next) => {
                self.advance(r, idx, next);
                2
            }
            None => {
                self.diagnostics.push(Diagnostic {
                    rank: Rank::ALL[r],
                    position: idx,
                    state: tau.state_name(initial).to_string(),
                    symbol: Some(symbol.to_string()),
                });
                self.streams[r].push(StreamToken::new(GAP, idx, idx + 1));
                1
            }
        }
    }

    fn advance(&mut self, r: usize, idx: usize, next: StateId) {
        let c = &mut self.cursors[r];
        c.state = next;
        c.span = Some(match c.span {
            Some((start, _)) => (start, idx),
            None => (idx, idx),
        });
        let done = !self.tables[r].has_out[next];
        if done && self.arch.triples()[r].tau().is_final(next) {
            self.emit(r);
        }
    }

    fn emit(&mut self, r: usize) {
        let triple = &self.arch.triples()[r];
        let c = &mut self.cursors[r];
        let (start, last) = c.span.take().expect("open unit");
        let unit = triple.unit_at(c.state).expect("final states have units").clone();
        c.state = self.tables[r].initial;
        let k = self.streams[r].len();
        self.streams[r].push(StreamToken {
            symbol: unit.clone(),
            start,
            end: last + 1,
        });
        if r > 0 {
            self.enqueue(r - 1, k, unit);
        }
    }

    /// Drops the open unit as a gap. `at` is the index that failed.
    fn gap(&mut self, r: usize, at: usize, symbol: Option<String>) {
        let tau = self.arch.triples()[r].tau();
        let c = &mut self.cursors[r];
        let (start, last) = c.span.take().expect("open unit");
        self.diagnostics.push(Diagnostic {
            rank: Rank::ALL[r],
            position: at,
            state: tau.state_name(c.state).to_string(),
            symbol,
        });
        c.state = self.tables[r].initial;
        self.streams[r].push(StreamToken::new(GAP, start, last + 1));
    }

    fn flush(&mut self, r: usize) {
        let Some((_, last)) = self.cursors[r].span else {
            return;
        };
        if self.arch.triples()[r].tau().is_final(self.cursors[r].state) {
            self.emit(r);
        } else {
            self.gap(r, last + 1, None);
        }
    }
}

/// Runs a whole input through a fresh session.
pub fn process_incremental(arch: &RankArchitecture, input: &[Symbol]) -> ProcessResult {
    let mut session = Session::new(arch);
    for s in input {
        session.push(s.clone());
    }
    session.finish()
}
