//! Nuclear and compound stress coding of ordered trees.
//!
//! A node at depth `d` (the root has depth 0) carrying stress value `v`
//! passes `v` to its head child and `d + 2` to every other child. The head
//! is the rightmost child for the nuclear rule and the leftmost for the
//! compound rule. The root carries 1, and leaf values read left to right
//! form the coding.
//!
//! Decoding is unique for trees of any branching factor: inside a node at
//! depth `d`, the value `d + 2` occurs exactly once per non-head child and
//! marks where that child ends, while every other value there is larger.
//! Exhaustive enumeration in the tests confirms the round trip.

use std::collections::BTreeMap;
use std::fmt;

use crate::fsa::{Symbol, FsaError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StressError {
    #[error("not decodable: inconsistency at position {position}")]
    NotDecodable { position: usize },
    #[error("invalid stress coding: {0}")]
    InvalidCoding(String),
    #[error("{labels} labels for {values} values")]
    LabelCount { labels: usize, values: usize },
    #[error("tree syntax error at character {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error(transparent)]
    Symbol(#[from] FsaError),
}

impl StressError {
    pub fn code(&self) -> &'static str {
        match self {
            StressError::NotDecodable { .. } => "NOT_DECODABLE",
            StressError::InvalidCoding(_) => "INVALID_CODING",
            StressError::LabelCount { .. } => "LABEL_COUNT",
            StressError::Syntax { .. } => "TREE_SYNTAX",
            StressError::Symbol(e) => e.code(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SyntaxTree {
    Leaf(Symbol),
    /// Two or more children.
    Node(Vec<SyntaxTree>),
}

impl SyntaxTree {
    pub fn leaf(word: Symbol) -> Self {
        SyntaxTree::Leaf(word)
    }

    /// Builds an internal node, collapsing a single child into itself.
    ///
    /// Panics on an empty child list.
    pub fn node(mut children: Vec<SyntaxTree>) -> Self {
        assert!(!children.is_empty(), "a node needs at least one child");
        if children.len() == 1 {
            children.pop().unwrap()
        } else {
            SyntaxTree::Node(children)
        }
    }

    /// Parses bracket notation such as `((big John)(saw (small Joan)))`.
    /// Unary brackets collapse.
    pub fn parse(text: &str) -> Result<SyntaxTree, StressError> {
        let chars: Vec<(usize, char)> = text.char_indices().collect();
        let mut pos = 0;
        let tree = parse_tree(&chars, &mut pos, text)?;
        skip_ws(&chars, &mut pos);
        if pos < chars.len() {
            return Err(StressError::Syntax {
                position: chars[pos].0,
                message: "trailing input".into(),
            });
        }
        Ok(tree)
    }

    pub fn leaves(&self) -> Vec<&Symbol> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a Symbol>) {
        match self {
            SyntaxTree::Leaf(w) => out.push(w),
            SyntaxTree::Node(cs) => cs.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            SyntaxTree::Leaf(_) => 1,
            SyntaxTree::Node(cs) => cs.iter().map(SyntaxTree::leaf_count).sum(),
        }
    }

    /// Edges on the longest root-to-leaf path.
    pub fn depth(&self) -> usize {
        match self {
            SyntaxTree::Leaf(_) => 0,
            SyntaxTree::Node(cs) => 1 + cs.iter().map(SyntaxTree::depth).max().unwrap_or(0),
        }
    }

    /// Reverses child order at every node.
    pub fn mirror(&self) -> SyntaxTree {
        match self {
            SyntaxTree::Leaf(w) => SyntaxTree::Leaf(w.clone()),
            SyntaxTree::Node(cs) => SyntaxTree::Node(cs.iter().rev().map(SyntaxTree::mirror).collect()),
        }
    }

    /// Same shape with the leaves relabelled in order.
    pub fn relabel(&self, labels: &[Symbol]) -> Result<SyntaxTree, StressError> {
        if labels.len() != self.leaf_count() {
            return Err(StressError::LabelCount {
                labels: labels.len(),
                values: self.leaf_count(),
            });
        }
        let mut it = labels.iter();
        Ok(self.relabel_with(&mut it))
    }

    fn relabel_with<'a>(&self, it: &mut impl Iterator<Item = &'a Symbol>) -> SyntaxTree {
        match self {
            SyntaxTree::Leaf(_) => SyntaxTree::Leaf(it.next().unwrap().clone()),
            SyntaxTree::Node(cs) => SyntaxTree::Node(cs.iter().map(|c| c.relabel_with(it)).collect()),
        }
    }
}

impl fmt::Display for SyntaxTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SyntaxTree::Leaf(w) => write!(f, "{w}"),
            SyntaxTree::Node(cs) => {
                f.write_str("(")?;
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 && !matches!((&cs[i - 1], c), (SyntaxTree::Node(_), SyntaxTree::Node(_))) {
                        f.write_str(" ")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

fn skip_ws(chars: &[(usize, char)], pos: &mut usize) {
    while *pos < chars.len() && chars[*pos].1.is_whitespace() {
        *pos += 1;
    }
}

fn parse_tree(chars: &[(usize, char)], pos: &mut usize, text: &str) -> Result<SyntaxTree, StressError> {
    skip_ws(chars, pos);
    let at = |p: usize| chars.get(p).map_or(text.len(), |c| c.0);
    match chars.get(*pos).map(|c| c.1) {
        None => Err(StressError::Syntax {
            position: text.len(),
            message: "unexpected end of input".into(),
        }),
        Some('(') => {
            *pos += 1;
            let mut children = Vec::new();
            loop {
                skip_ws(chars, pos);
                match chars.get(*pos).map(|c| c.1) {
                    Some(')') => {
                        *pos += 1;
                        break;
                    }
                    None => {
                        return Err(StressError::Syntax {
                            position: text.len(),
                            message: "unclosed bracket".into(),
                        })
                    }
                    _ => children.push(parse_tree(chars, pos, text)?),
                }
            }
            if children.is_empty() {
                return Err(StressError::Syntax {
                    position: at(*pos - 1),
                    message: "empty brackets".into(),
                });
            }
            Ok(SyntaxTree::node(children))
        }
        Some(')') => Err(StressError::Syntax {
            position: at(*pos),
            message: "unexpected ')'".into(),
        }),
        Some(_) => {
            let start = *pos;
            while *pos < chars.len() && !chars[*pos].1.is_whitespace() && !"()".contains(chars[*pos].1) {
                *pos += 1;
            }
            let word: String = chars[start..*pos].iter().map(|c| c.1).collect();
            Ok(SyntaxTree::Leaf(Symbol::new(&word)?))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum StressRule {
    /// Head is the rightmost child.
    Nuclear,
    /// Head is the leftmost child.
    Compound,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StressCoding {
    pub values: Vec<u32>,
    pub rule: StressRule,
}

impl StressCoding {
    /// Exactly one 1, and every value above 1 has its predecessor present.
    pub fn validate(&self) -> Result<(), StressError> {
        if self.values.is_empty() {
            return Err(StressError::InvalidCoding("empty coding".into()));
        }
        if let Some(p) = self.values.iter().position(|&v| v == 0) {
            return Err(StressError::InvalidCoding(format!("zero at position {p}")));
        }
        let ones = self.values.iter().filter(|&&v| v == 1).count();
        if ones != 1 {
            return Err(StressError::InvalidCoding(format!("{ones} values equal 1")));
        }
        for &v in &self.values {
            if v > 1 && !self.values.contains(&(v - 1)) {
                return Err(StressError::InvalidCoding(format!("{v} present without {}", v - 1)));
            }
        }
        Ok(())
    }

    /// `word^value` pairs separated by spaces.
    pub fn annotate(&self, words: &[&Symbol]) -> String {
        words
            .iter()
            .zip(&self.values)
            .map(|(w, v)| format!("{w}^{v}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn encode_into(t: &SyntaxTree, depth: u32, value: u32, rule: StressRule, out: &mut Vec<u32>) {
    match t {
        SyntaxTree::Leaf(_) => out.push(value),
        SyntaxTree::Node(cs) => {
            let head = match rule {
                StressRule::Nuclear => cs.len() - 1,
                StressRule::Compound => 0,
            };
            for (i, c) in cs.iter().enumerate() {
                let v = if i == head { value } else { depth + 2 };
                encode_into(c, depth + 1, v, rule, out);
            }
        }
    }
}

pub fn nsr_encode(t: &SyntaxTree) -> StressCoding {
    let mut values = Vec::new();
    encode_into(t, 0, 1, StressRule::Nuclear, &mut values);
    StressCoding {
        values,
        rule: StressRule::Nuclear,
    }
}

pub fn csr_encode(t: &SyntaxTree) -> StressCoding {
    let mut values = Vec::new();
    encode_into(t, 0, 1, StressRule::Compound, &mut values);
    StressCoding {
        values,
        rule: StressRule::Compound,
    }
}

/// Shape for a nuclear coding; leaves are labelled `w1`, `w2`, ...
fn decode_nuclear(values: &[u32], offset: usize, depth: u32, value: u32) -> Result<SyntaxTree, StressError> {
    let last = values.len() - 1;
    if values.len() == 1 {
        return if values[0] == value {
            Ok(SyntaxTree::Leaf(placeholder(offset)))
        } else {
            Err(StressError::NotDecodable { position: offset })
        };
    }
    let marker = depth + 2;
    let mut children = Vec::new();
    let mut start = 0;
    for (i, &v) in values.iter().enumerate() {
        if i == last {
            if v != value {
                return Err(StressError::NotDecodable { position: offset + i });
            }
        } else if v == marker {
            children.push(decode_nuclear(&values[start..=i], offset + start, depth + 1, marker)?);
            start = i + 1;
        } else if v < marker {
            return Err(StressError::NotDecodable { position: offset + i });
        }
    }
    if children.is_empty() {
        // a lone head child would be a unary node
        return Err(StressError::NotDecodable { position: offset + last });
    }
    children.push(decode_nuclear(&values[start..], offset + start, depth + 1, value)?);
    Ok(SyntaxTree::Node(children))
}

fn placeholder(i: usize) -> Symbol {
    Symbol::new(&format!("w{}", i + 1)).expect("valid")
}

fn check_labels(values: &[u32], labels: Option<&[Symbol]>) -> Result<(), StressError> {
    if values.is_empty() {
        return Err(StressError::NotDecodable { position: 0 });
    }
    match labels {
        Some(l) if l.len() != values.len() => Err(StressError::LabelCount {
            labels: l.len(),
            values: values.len(),
        }),
        _ => Ok(()),
    }
}

/// Inverse of [`nsr_encode`]. Leaves take `labels` when given, otherwise
/// placeholder names `w1`, `w2`, ...
pub fn nsr_decode(values: &[u32], labels: Option<&[Symbol]>) -> Result<SyntaxTree, StressError> {
    check_labels(values, labels)?;
    let shape = decode_nuclear(values, 0, 0, 1)?;
    match labels {
        Some(l) => shape.relabel(l),
        None => Ok(shape),
    }
}

/// Inverse of [`csr_encode`], via the mirror image.
pub fn csr_decode(values: &[u32], labels: Option<&[Symbol]>) -> Result<SyntaxTree, StressError> {
    check_labels(values, labels)?;
    let reversed: Vec<u32> = values.iter().rev().copied().collect();
    let n = values.len();
    let shape = decode_nuclear(&reversed, 0, 0, 1)
        .map_err(|e| match e {
            StressError::NotDecodable { position } => StressError::NotDecodable {
                position: n - 1 - position,
            },
            other => other,
        })?
        .mirror();
    let names: Vec<Symbol> = (0..n).map(placeholder).collect();
    shape.relabel(labels.unwrap_or(&names))
}

/// Lexicalized exceptions keyed by word sequence, applied after the rules.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StressOverrides {
    table: BTreeMap<Vec<Symbol>, Vec<u32>>,
}

impl StressOverrides {
    pub fn insert(&mut self, words: Vec<Symbol>, values: Vec<u32>) -> Result<(), StressError> {
        if words.len() != values.len() {
            return Err(StressError::LabelCount {
                labels: words.len(),
                values: values.len(),
            });
        }
        self.table.insert(words, values);
        Ok(())
    }

    /// The override coding for these words if one is listed, else `coding`.
    pub fn apply(&self, words: &[Symbol], coding: StressCoding) -> StressCoding {
        match self.table.get(words) {
            Some(values) => StressCoding {
                values: values.clone(),
                rule: coding.rule,
            },
            None => coding,
        }
    }
}

/// Every tree shape with `n` leaves whose internal nodes have at least two
/// children. Leaves are labelled `w1` ... `wn`.
pub fn all_trees(n: usize) -> Vec<SyntaxTree> {
    let mut memo: BTreeMap<usize, Vec<SyntaxTree>> = BTreeMap::new();
    let shapes = shapes(n, &mut memo);
    let labels: Vec<Symbol> = (0..n).map(placeholder).collect();
    shapes.into_iter().map(|t| t.relabel(&labels).unwrap()).collect()
}

fn shapes(n: usize, memo: &mut BTreeMap<usize, Vec<SyntaxTree>>) -> Vec<SyntaxTree> {
    if let Some(v) = memo.get(&n) {
        return v.clone();
    }
    let result = if n == 1 {
        vec![SyntaxTree::Leaf(placeholder(0))]
    } else {
        // every part smaller than n forces at least two children
        forests(n, n - 1, memo)
            .into_iter()
            .map(SyntaxTree::Node)
            .collect()
    };
    memo.insert(n, result.clone());
    result
}

/// Sequences of shapes with sizes summing to `n`, each at most `max_part`.
fn forests(n: usize, max_part: usize, memo: &mut BTreeMap<usize, Vec<SyntaxTree>>) -> Vec<Vec<SyntaxTree>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n.min(max_part) {
        let heads = shapes(first, memo);
        let tails = forests(n - first, max_part, memo);
        for h in &heads {
            for rest in &tails {
                let mut f = Vec::with_capacity(rest.len() + 1);
                f.push(h.clone());
                f.extend(rest.iter().cloned());
                out.push(f);
            }
        }
    }
    out
}
