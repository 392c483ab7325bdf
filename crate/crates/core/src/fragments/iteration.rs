//! Regular templates for the kinds of phrasal iteration.

use std::str::FromStr;

use super::FragmentError;
use crate::fsa::{sym, RegexTree, Symbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IterationKind {
    /// `X and X (and X)*`
    ConjunctionSyndetic,
    /// `X (, X)+`
    ConjunctionAsyndetic,
    /// `X , X ,?`
    Apposition,
    /// The same item at least twice: `long long`.
    Reduplication,
    /// The same item at least twice, separators optional: `very , very`.
    Repetition,
    /// `X (, X)* and X` when a conjunction is given, or a bare item.
    Listing,
    /// Items in their given order, each later one optional.
    Succession,
}

impl IterationKind {
    pub const ALL: [IterationKind; 7] = [
        IterationKind::ConjunctionSyndetic,
        IterationKind::ConjunctionAsyndetic,
        IterationKind::Apposition,
        IterationKind::Reduplication,
        IterationKind::Repetition,
        IterationKind::Listing,
        IterationKind::Succession,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IterationKind::ConjunctionSyndetic => "conjunction-syndetic",
            IterationKind::ConjunctionAsyndetic => "conjunction-asyndetic",
            IterationKind::Apposition => "apposition",
            IterationKind::Reduplication => "reduplication",
            IterationKind::Repetition => "repetition",
            IterationKind::Listing => "listing",
            IterationKind::Succession => "succession",
        }
    }
}

impl FromStr for IterationKind {
    type Err = FragmentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let wanted = s.to_ascii_lowercase().replace('_', "-");
        IterationKind::ALL
            .into_iter()
            .find(|k| k.name() == wanted)
            .ok_or_else(|| FragmentError::UnknownFragment(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IterationParams {
    pub items: Vec<Symbol>,
    pub separator: Symbol,
    /// Defaults to `and` for the syndetic kind.
    pub conjunction: Option<Symbol>,
}

impl IterationParams {
    pub fn new(items: Vec<Symbol>) -> Self {
        IterationParams {
            items,
            separator: sym(","),
            conjunction: None,
        }
    }

    pub fn with_conjunction(mut self, c: Symbol) -> Self {
        self.conjunction = Some(c);
        self
    }
}

fn any_item(items: &[Symbol]) -> RegexTree {
    match items {
        [one] => RegexTree::Symbol(one.clone()),
        _ => RegexTree::union(items.iter().cloned().map(RegexTree::Symbol).collect()),
    }
}

pub fn iteration_template(kind: IterationKind, params: &IterationParams) -> RegexTree {
    let x = any_item(&params.items);
    let sep = RegexTree::Symbol(params.separator.clone());
    let seq = RegexTree::concat;
    let conj = |default: bool| {
        params
            .conjunction
            .clone()
            .or_else(|| default.then(|| sym("and")))
            .map(RegexTree::Symbol)
    };
    match kind {
        IterationKind::ConjunctionSyndetic => {
            let c = conj(true).unwrap();
            seq(vec![x.clone(), c.clone(), x.clone(), RegexTree::star(seq(vec![c, x]))])
        }
        IterationKind::ConjunctionAsyndetic => seq(vec![x.clone(), RegexTree::plus(seq(vec![sep, x]))]),
        IterationKind::Apposition => seq(vec![x.clone(), sep.clone(), x, RegexTree::optional(sep)]),
        IterationKind::Reduplication => RegexTree::union(
            params
                .items
                .iter()
                .map(|i| {
                    let s = RegexTree::Symbol(i.clone());
                    seq(vec![s.clone(), s.clone(), RegexTree::star(s)])
                })
                .collect(),
        ),
        IterationKind::Repetition => RegexTree::union(
            params
                .items
                .iter()
                .map(|i| {
                    let s = RegexTree::Symbol(i.clone());
                    seq(vec![s.clone(), RegexTree::plus(seq(vec![RegexTree::optional(sep.clone()), s]))])
                })
                .collect(),
        ),
        IterationKind::Listing => match conj(false) {
            Some(c) => seq(vec![
                x.clone(),
                RegexTree::optional(seq(vec![RegexTree::star(seq(vec![sep, x.clone()])), c, x])),
            ]),
            None => seq(vec![x.clone(), RegexTree::star(seq(vec![sep, x]))]),
        },
        IterationKind::Succession => {
            let mut tail: Option<RegexTree> = None;
            for item in params.items.iter().rev() {
                let s = RegexTree::Symbol(item.clone());
                tail = Some(match tail {
                    None => s,
                    Some(t) => seq(vec![s, RegexTree::optional(t)]),
                });
            }
            tail.unwrap_or(RegexTree::Empty)
        }
    }
}
