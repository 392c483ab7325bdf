//! Token streams, their text form and alignment of parallel streams.

use std::fmt::Write as _;

use super::{Rank, RankError};
use crate::fsa::Symbol;

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct StreamToken {
    pub symbol: Symbol,
    /// Half-open span over the stream one rank below.
    pub start: usize,
    pub end: usize,
}

impl StreamToken {
    /// Panics on a symbol containing whitespace.
    pub fn new(symbol: &str, start: usize, end: usize) -> Self {
        StreamToken {
            symbol: Symbol::new(symbol).expect("valid symbol"),
            start,
            end,
        }
    }

    fn overlaps(&self, other: &StreamToken) -> bool {
        let point = |t: &StreamToken, at: usize| t.start <= at && at < t.end;
        if self.start == self.end {
            return point(other, self.start);
        }
        if other.start == other.end {
            return point(self, other.start);
        }
        self.start < other.end && other.start < self.end
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Stream {
    pub rank: Rank,
    pub tokens: Vec<StreamToken>,
}

impl Stream {
    pub fn new(rank: Rank, tokens: Vec<StreamToken>) -> Result<Self, RankError> {
        let s = Stream { rank, tokens };
        s.validate()?;
        Ok(s)
    }

    /// Spans are well formed and in time order without overlap.
    pub fn validate(&self) -> Result<(), RankError> {
        let mut prev_end = 0;
        for (i, t) in self.tokens.iter().enumerate() {
            if t.end < t.start {
                return Err(RankError::InvalidStream(format!("token {i} ends before it starts")));
            }
            if t.start < prev_end {
                return Err(RankError::InvalidStream(format!("token {i} overlaps its predecessor")));
            }
            prev_end = t.end;
        }
        Ok(())
    }

    pub fn symbols(&self) -> Vec<&Symbol> {
        self.tokens.iter().map(|t| &t.symbol).collect()
    }
}

/// Secondary tokens attached to one primary token.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Alignment {
    pub primary: StreamToken,
    pub secondary: Vec<StreamToken>,
}

/// Attaches each secondary token to every primary token it overlaps.
/// Both streams must index the same base, so their ranks must match.
pub fn multilinear_align(primary: &Stream, secondary: &Stream) -> Result<Vec<Alignment>, RankError> {
    if primary.rank != secondary.rank {
        return Err(RankError::DisjointBases(primary.rank, secondary.rank));
    }
    primary.validate()?;
    secondary.validate()?;
    Ok(primary
        .tokens
        .iter()
        .map(|p| Alignment {
            primary: p.clone(),
            secondary: secondary.tokens.iter().filter(|s| p.overlaps(s)).cloned().collect(),
        })
        .collect())
}

/// `rank<TAB>symbol<TAB>start<TAB>end` per line, ranks from discourse down.
pub fn write_streams<'a>(streams: impl IntoIterator<Item = &'a Stream>) -> String {
    let mut out = String::new();
    for s in streams {
        for t in &s.tokens {
            writeln!(out, "{}\t{}\t{}\t{}", s.rank, t.symbol, t.start, t.end).unwrap();
        }
    }
    out
}

/// Groups lines by rank, in order of first appearance. Blank lines and `#`
/// comments are skipped.
pub fn parse_streams(text: &str) -> Result<Vec<Stream>, RankError> {
    let mut streams: Vec<Stream> = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line_no = n + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let err = |message: String| RankError::StreamParse { line: line_no, message };
        let fields: Vec<&str> = trimmed.split('\t').map(str::trim).collect();
        let [rank, symbol, start, end] = fields[..] else {
            return Err(err(format!("expected 4 tab-separated fields, got {}", fields.len())));
        };
        let rank: Rank = rank.parse().map_err(|_| err(format!("unknown rank {rank:?}")))?;
        let symbol = Symbol::new(symbol).map_err(|e| err(e.to_string()))?;
        let index = |f: &str| f.parse::<usize>().map_err(|_| err(format!("bad index {f:?}")));
        let token = StreamToken {
            symbol,
            start: index(start)?,
            end: index(end)?,
        };
        match streams.iter_mut().find(|s| s.rank == rank) {
            Some(s) => s.tokens.push(token),
            None => streams.push(Stream {
                rank,
                tokens: vec![token],
            }),
        }
    }
    for s in &streams {
        s.validate()?;
    }
    Ok(streams)
}
