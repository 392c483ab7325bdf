//! Context-free grammars, reduction and recursion-type classification.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use super::{FsaError, Symbol};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CfgRule {
    pub lhs: Symbol,
    /// Possibly empty.
    pub rhs: Vec<Symbol>,
}

impl fmt::Display for CfgRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ->", self.lhs)?;
        if self.rhs.is_empty() {
            return f.write_str(" _");
        }
        for s in &self.rhs {
            write!(f, " {s}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContextFreeGrammar {
    nonterminals: BTreeSet<Symbol>,
    terminals: BTreeSet<Symbol>,
    start: Symbol,
    rules: Vec<CfgRule>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RecursionType {
    /// No nonterminal can derive a string containing itself with material
    /// beside it.
    R2Acyclic,
    /// Every recursive occurrence is leftmost (head recursion).
    R3Left,
    /// Every recursive occurrence is rightmost (tail recursion).
    R3Right,
    /// Some recursive occurrence has material on both sides.
    R4Centre,
}

impl fmt::Display for RecursionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RecursionType::R2Acyclic => "R2_ACYCLIC",
            RecursionType::R3Left => "R3_LEFT",
            RecursionType::R3Right => "R3_RIGHT",
            RecursionType::R4Centre => "R4_CENTRE",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Classification {
    pub recursion_type: RecursionType,
    pub cnf: bool,
    pub finite_language: bool,
    /// Head and tail recursion both occur, on different nonterminals, with no
    /// centre-embedding. Reported together with `R3Right`.
    pub mixed_linear: bool,
}

impl ContextFreeGrammar {
    /// Infers the nonterminals (start symbol and left-hand sides); every other
    /// right-hand-side symbol is a terminal.
    pub fn new(start: Symbol, rules: Vec<CfgRule>) -> Result<Self, FsaError> {
        let mut nonterminals = BTreeSet::from([start.clone()]);
        nonterminals.extend(rules.iter().map(|r| r.lhs.clone()));
        let terminals = rules
            .iter()
            .flat_map(|r| r.rhs.iter())
            .filter(|s| !nonterminals.contains(*s))
            .cloned()
            .collect();
        Self::with_vocabulary(nonterminals, terminals, start, rules)
    }

    pub fn with_vocabulary(
        nonterminals: BTreeSet<Symbol>,
        terminals: BTreeSet<Symbol>,
        start: Symbol,
        rules: Vec<CfgRule>,
    ) -> Result<Self, FsaError> {
        if !nonterminals.contains(&start) {
            return Err(FsaError::Invalid(format!("start symbol {start} is not a nonterminal")));
        }
        if let Some(s) = terminals.intersection(&nonterminals).next() {
            return Err(FsaError::Invalid(format!(
                "symbol {s} is both terminal and nonterminal"
            )));
        }
        let mut deduped: Vec<CfgRule> = Vec::with_capacity(rules.len());
        for r in rules {
            if !nonterminals.contains(&r.lhs) {
                return Err(FsaError::InvalidRule {
                    rule: r.to_string(),
                    reason: "left-hand side is not a nonterminal".into(),
                });
            }
            if let Some(s) = r
                .rhs
                .iter()
                .find(|s| !nonterminals.contains(*s) && !terminals.contains(*s))
            {
                return Err(FsaError::InvalidRule {
                    rule: r.to_string(),
                    reason: format!("{s} is not declared"),
                });
            }
            if !deduped.contains(&r) {
                deduped.push(r);
            }
        }
        Ok(ContextFreeGrammar {
            nonterminals,
            terminals,
            start,
            rules: deduped,
        })
    }

    pub fn start(&self) -> &Symbol {
        &self.start
    }

    pub fn rules(&self) -> &[CfgRule] {
        &self.rules
    }

    pub fn nonterminals(&self) -> &BTreeSet<Symbol> {
        &self.nonterminals
    }

    pub fn terminals(&self) -> &BTreeSet<Symbol> {
        &self.terminals
    }

    fn is_nonterminal(&self, s: &Symbol) -> bool {
        self.nonterminals.contains(s)
    }

    /// True when every rule has the shape `A -> a` or `A -> B C`.
    pub fn is_cnf(&self) -> bool {
        self.rules.iter().all(|r| match r.rhs.as_slice() {
            [a] => !self.is_nonterminal(a),
            [b, c] => self.is_nonterminal(b) && self.is_nonterminal(c),
            _ => false,
        })
    }

    /// Nonterminals deriving at least one terminal string.
    fn productive(&self) -> BTreeSet<Symbol> {
        let mut done = BTreeSet::new();
        loop {
            let before = done.len();
            for r in &self.rules {
                if r.rhs.iter().all(|s| !self.is_nonterminal(s) || done.contains(s)) {
                    done.insert(r.lhs.clone());
                }
            }
            if done.len() == before {
                return done;
            }
        }
    }

    /// Drops unproductive and then unreachable symbols along with their rules.
    pub fn reduce(&self) -> ContextFreeGrammar {
        let productive = self.productive();
        let rules: Vec<CfgRule> = self
            .rules
            .iter()
            .filter(|r| {
                productive.contains(&r.lhs)
                    && r.rhs.iter().all(|s| !self.is_nonterminal(s) || productive.contains(s))
            })
            .cloned()
            .collect();
        let mut reachable = BTreeSet::from([self.start.clone()]);
        let mut queue = VecDeque::from([self.start.clone()]);
        while let Some(a) = queue.pop_front() {
            for r in rules.iter().filter(|r| r.lhs == a) {
                for s in &r.rhs {
                    if self.is_nonterminal(s) && reachable.insert(s.clone()) {
                        queue.push_back(s.clone());
                    }
                }
            }
        }
        let rules: Vec<CfgRule> = rules
            .into_iter()
            .filter(|r| reachable.contains(&r.lhs))
            .collect();
        let terminals = rules
            .iter()
            .flat_map(|r| r.rhs.iter())
            .filter(|s| !self.is_nonterminal(s))
            .cloned()
            .collect();
        ContextFreeGrammar {
            nonterminals: reachable,
            terminals,
            start: self.start.clone(),
            rules,
        }
    }

    /// Nonterminals deriving some nonempty terminal string.
    fn solid(&self) -> BTreeSet<Symbol> {
        let productive = self.productive();
        let mut done = BTreeSet::new();
        loop {
            let before = done.len();
            for r in &self.rules {
                let usable = r.rhs.iter().all(|s| !self.is_nonterminal(s) || productive.contains(s));
                let weighty = r
                    .rhs
                    .iter()
                    .any(|s| !self.is_nonterminal(s) || done.contains(s));
                if usable && weighty {
                    done.insert(r.lhs.clone());
                }
            }
            if done.len() == before {
                return done;
            }
        }
    }

    /// Recursion type, normal-form and finiteness flags of the reduced grammar.
    ///
    /// A derivation `A =>+ x A y` counts as recursive only when `x` or `y`
    /// can yield terminal material; cycles through unit or erasable context
    /// alone add no strings and are ignored.
    pub fn classify(&self) -> Classification {
        let reduced = self.reduce();
        let solid = reduced.solid();
        let heavy = |s: &Symbol| !reduced.is_nonterminal(s) || solid.contains(s);

        // One-step edges A -> (B, left context heavy, right context heavy).
        let mut edges: BTreeMap<&Symbol, Vec<(&Symbol, bool, bool)>> = BTreeMap::new();
        for r in &reduced.rules {
            for (i, s) in r.rhs.iter().enumerate() {
                if reduced.is_nonterminal(s) {
                    let left = r.rhs[..i].iter().any(&heavy);
                    let right = r.rhs[i + 1..].iter().any(&heavy);
                    edges.entry(&r.lhs).or_default().push((s, left, right));
                }
            }
        }

        let (mut centre, mut tail, mut head) = (false, false, false);
        for a in &reduced.nonterminals {
            let mut seen: BTreeSet<(&Symbol, bool, bool)> = BTreeSet::new();
            let mut queue: VecDeque<(&Symbol, bool, bool)> = VecDeque::new();
            for &e in edges.get(a).into_iter().flatten() {
                if seen.insert(e) {
                    queue.push_back(e);
                }
            }
            while let Some((b, l, r)) = queue.pop_front() {
                for &(c, l2, r2) in edges.get(b).into_iter().flatten() {
                    let next = (c, l || l2, r || r2);
                    if seen.insert(next) {
                        queue.push_back(next);
                    }
                }
            }
            for &(b, l, r) in &seen {
                if b == a {
                    match (l, r) {
                        (true, true) => centre = true,
                        (true, false) => tail = true,
                        (false, true) => head = true,
                        (false, false) => {}
                    }
                }
            }
        }

        let recursion_type = if centre {
            RecursionType::R4Centre
        } else if tail {
            RecursionType::R3Right
        } else if head {
            RecursionType::R3Left
        } else {
            RecursionType::R2Acyclic
        };
        Classification {
            recursion_type,
            cnf: self.is_cnf(),
            finite_language: recursion_type == RecursionType::R2Acyclic,
            mixed_linear: !centre && tail && head,
        }
    }
}
