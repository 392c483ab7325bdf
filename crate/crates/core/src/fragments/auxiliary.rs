//! English auxiliary sequences and affix hopping.

use std::fmt;

use super::FragmentError;
use crate::fsa::{sym, FiniteAutomaton, Symbol};

pub const MODALS: [&str; 5] = ["can", "may", "shall", "will", "must"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tense {
    Pres,
    Past,
}

impl fmt::Display for Tense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tense::Pres => "pres",
            Tense::Past => "past",
        })
    }
}

/// One tense-aspect-modality choice plus the main verb stem.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AuxMorphemeString {
    pub tense: Tense,
    /// One of [`MODALS`].
    pub modal: Option<String>,
    pub perfect: bool,
    pub progressive: bool,
    pub passive: bool,
    pub verb: String,
}

impl AuxMorphemeString {
    /// Reads tokens like `past may PERF PROG PASS repair`. The tense comes
    /// first and the main verb last; the optional elements in between keep
    /// the order modal, PERF, PROG, PASS.
    pub fn parse(tokens: &[&str]) -> Result<Self, FragmentError> {
        let bad = |msg: String| FragmentError::InvalidAux(msg);
        let (first, rest) = tokens
            .split_first()
            .ok_or_else(|| bad("empty sequence".into()))?;
        let tense = match *first {
            "pres" => Tense::Pres,
            "past" => Tense::Past,
            other => return Err(bad(format!("expected pres or past first, found {other}"))),
        };
        let (verb, middle) = rest
            .split_last()
            .ok_or_else(|| bad("missing main verb".into()))?;
        if is_reserved(verb) {
            return Err(bad(format!("{verb} cannot be the main verb")));
        }
        let mut m = AuxMorphemeString {
            tense,
            modal: None,
            perfect: false,
            progressive: false,
            passive: false,
            verb: verb.to_string(),
        };
        let mut slot = 0;
        for tok in middle {
            let rank = match *tok {
                t if MODALS.contains(&t) => 1,
                "PERF" => 2,
                "PROG" => 3,
                "PASS" => 4,
                other => return Err(bad(format!("unexpected {other}"))),
            };
            if rank <= slot {
                return Err(bad(format!("{tok} out of order")));
            }
            slot = rank;
            match rank {
                1 => m.modal = Some(tok.to_string()),
                2 => m.perfect = true,
                3 => m.progressive = true,
                _ => m.passive = true,
            }
        }
        Ok(m)
    }

    /// Category symbols as read by [`english_aux`]; the main verb is `V`.
    pub fn categories(&self) -> Vec<Symbol> {
        let mut out = vec![sym(&self.tense.to_string())];
        if let Some(m) = &self.modal {
            out.push(sym(m));
        }
        for (on, cat) in [
            (self.perfect, "PERF"),
            (self.progressive, "PROG"),
            (self.passive, "PASS"),
        ] {
            if on {
                out.push(sym(cat));
            }
        }
        out.push(sym("V"));
        out
    }

    /// All 96 combinations for one main verb.
    pub fn all(verb: &str) -> Vec<AuxMorphemeString> {
        let mut out = Vec::new();
        for tense in [Tense::Pres, Tense::Past] {
            for modal in std::iter::once(None).chain(MODALS.iter().map(|m| Some(m.to_string()))) {
                for bits in 0..8u8 {
                    out.push(AuxMorphemeString {
                        tense,
                        modal: modal.clone(),
                        perfect: bits & 4 != 0,
                        progressive: bits & 2 != 0,
                        passive: bits & 1 != 0,
                        verb: verb.to_string(),
                    });
                }
            }
        }
        out
    }
}

fn is_reserved(word: &str) -> bool {
    MODALS.contains(&word) || matches!(word, "pres" | "past" | "PERF" | "PROG" | "PASS")
}

impl fmt::Display for AuxMorphemeString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut cats: Vec<String> = self.categories().iter().map(|s| s.to_string()).collect();
        cats.pop();
        cats.push(self.verb.clone());
        f.write_str(&cats.join(" "))
    }
}

/// Acyclic automaton over tense, modal, PERF, PROG, PASS and V.
pub fn english_aux() -> FiniteAutomaton {
    let slots = ["tensed", "modal", "perfect", "progressive", "passive"];
    let mut fsa = FiniteAutomaton::new("start");
    for t in ["pres", "past"] {
        fsa.connect("start", Some(t), "tensed");
    }
    for m in MODALS {
        fsa.connect("tensed", Some(m), "modal");
    }
    let later = [("PERF", "perfect"), ("PROG", "progressive"), ("PASS", "passive"), ("V", "verb")];
    for (i, from) in slots.iter().enumerate() {
        // tensed and modal both continue with PERF onwards
        let skip = i.saturating_sub(1);
        for (cat, to) in &later[skip..] {
            fsa.connect(from, Some(cat), to);
        }
    }
    let v = fsa.state_id("verb").unwrap();
    fsa.set_final(v, true);
    fsa
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Affix {
    Pres,
    Past,
    En,
    Ing,
}

/// Attaches each affix to the verb that follows it.
///
/// Output tokens use `stem+suffix`; forms without an affix are bare.
pub fn affix_hop(m: &AuxMorphemeString) -> Vec<String> {
    enum Item<'a> {
        Affix(Affix),
        Verb(&'a str),
    }
    let mut items = vec![Item::Affix(match m.tense {
        Tense::Pres => Affix::Pres,
        Tense::Past => Affix::Past,
    })];
    if let Some(modal) = &m.modal {
        items.push(Item::Verb(modal));
    }
    if m.perfect {
        items.extend([Item::Verb("have"), Item::Affix(Affix::En)]);
    }
    if m.progressive {
        items.extend([Item::Verb("be"), Item::Affix(Affix::Ing)]);
    }
    if m.passive {
        items.extend([Item::Verb("be"), Item::Affix(Affix::En)]);
    }
    items.push(Item::Verb(&m.verb));

    let mut pending = None;
    let mut out = Vec::new();
    for item in items {
        match item {
            Item::Affix(a) => pending = Some(a),
            Item::Verb(v) => out.push(inflect(v, pending.take())),
        }
    }
    out
}

fn inflect(verb: &str, affix: Option<Affix>) -> String {
    let Some(affix) = affix else {
        return verb.to_string();
    };
    let irregular = match (verb, affix) {
        ("may", Affix::Past) => Some("migh+t"),
        ("can", Affix::Past) => Some("coul+d"),
        ("shall", Affix::Past) => Some("shoul+d"),
        ("will", Affix::Past) => Some("woul+d"),
        ("have", Affix::Pres) => Some("ha+s"),
        ("have", Affix::Past | Affix::En) => Some("ha+d"),
        ("be", Affix::Pres) => Some("i+s"),
        ("be", Affix::Past) => Some("wa+s"),
        ("go", Affix::Past) => Some("wen+t"),
        _ => None,
    };
    if let Some(form) = irregular {
        return form.to_string();
    }
    if affix == Affix::Pres && MODALS.contains(&verb) {
        return verb.to_string();
    }
    let suffix = match (verb, affix) {
        ("be" | "go", Affix::En) => "en",
        (_, Affix::Pres) => "s",
        (_, Affix::Past | Affix::En) => "ed",
        (_, Affix::Ing) => "ing",
    };
    format!("{verb}+{suffix}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fsa::LanguageSize;

    #[test]
    fn ninety_six_combinations() {
        let fsa = english_aux();
        assert!(fsa.is_deterministic());
        assert_eq!(fsa.count_language(), LanguageSize::finite(96));
        for m in AuxMorphemeString::all("repair") {
            assert!(fsa.accepts(&m.categories()), "{m}");
        }
    }

    #[test]
    fn order_is_enforced() {
        let fsa = english_aux();
        assert!(!fsa.accepts(&crate::fsa::symbols("past PROG PERF V")));
        assert!(AuxMorphemeString::parse(&["past", "PROG", "PERF", "go"]).is_err());
        assert!(AuxMorphemeString::parse(&["may", "go"]).is_err());
    }

    #[test]
    fn hopping_examples() {
        let hop = |t: &str| affix_hop(&AuxMorphemeString::parse(&t.split(' ').collect::<Vec<_>>()).unwrap()).join(" ");
        assert_eq!(hop("past may PERF PROG PASS repair"), "migh+t have be+en be+ing repair+ed");
        assert_eq!(hop("pres walk"), "walk+s");
        assert_eq!(hop("past PERF go"), "ha+d go+en");
        assert_eq!(hop("pres can go"), "can go");
        assert_eq!(hop("past must go"), "must+ed go");
    }
}
