//! Subject-verb and noun-phrase agreement through feature registers.
//!
//! Tokens are symbols of the form `CAT[F1=v1,F2=v2]` with features sorted
//! by name, or a bare `CAT` when the token carries none.

use std::collections::BTreeMap;

use super::FragmentError;
use crate::fsa::{sym, Action, Guard, RegisterAutomaton, Symbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Language {
    En,
    De,
}

impl std::str::FromStr for Language {
    type Err = FragmentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "en" => Ok(Language::En),
            "de" => Ok(Language::De),
            _ => Err(FragmentError::UnknownLanguage(s.to_string())),
        }
    }
}

/// Finite value domains of the agreement features.
pub fn feature_domains() -> BTreeMap<&'static str, Vec<&'static str>> {
    BTreeMap::from([
        ("CASE", vec!["ACC", "DAT", "GEN", "NOM"]),
        ("GENDER", vec!["F", "M", "N"]),
        ("NUMBER", vec!["PL", "SG"]),
        ("PERSON", vec!["1", "2", "3"]),
    ])
}

/// Feature name to value, checked against [`feature_domains`].
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FeatureBundle(BTreeMap<String, String>);

impl FeatureBundle {
    pub fn new<'a>(pairs: impl IntoIterator<Item = (&'a str, &'a str)>) -> Result<Self, FragmentError> {
        let domains = feature_domains();
        let mut map = BTreeMap::new();
        for (f, v) in pairs {
            let domain = domains
                .get(f)
                .ok_or_else(|| FragmentError::Feature(format!("unknown feature {f}")))?;
            if !domain.contains(&v) {
                return Err(FragmentError::Feature(format!("{v} is not a value of {f}")));
            }
            if map.insert(f.to_string(), v.to_string()).is_some() {
                return Err(FragmentError::Feature(format!("feature {f} given twice")));
            }
        }
        Ok(FeatureBundle(map))
    }

    pub fn get(&self, feature: &str) -> Option<&str> {
        self.0.get(feature).map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.0.iter().map(|(f, v)| (f.as_str(), v.as_str()))
    }
}

/// Encodes a category with its features as one symbol.
pub fn token(category: &str, features: &FeatureBundle) -> Symbol {
    if features.0.is_empty() {
        return sym(category);
    }
    let inner: Vec<String> = features.iter().map(|(f, v)| format!("{f}={v}")).collect();
    sym(&format!("{category}[{}]", inner.join(",")))
}

/// Splits a token symbol back into category and features.
pub fn parse_token(s: &Symbol) -> Result<(String, FeatureBundle), FragmentError> {
    let text = s.as_str();
    let Some((cat, rest)) = text.split_once('[') else {
        return Ok((text.to_string(), FeatureBundle::default()));
    };
    let inner = rest
        .strip_suffix(']')
        .ok_or_else(|| FragmentError::Feature(format!("malformed token {text}")))?;
    let pairs: Vec<(&str, &str)> = inner
        .split(',')
        .map(|p| p.split_once('=').ok_or_else(|| FragmentError::Feature(format!("malformed feature {p}"))))
        .collect::<Result<_, _>>()?;
    Ok((cat.to_string(), FeatureBundle::new(pairs)?))
}

/// Every bundle over the named features.
fn bundles(features: &[&'static str]) -> Vec<FeatureBundle> {
    let domains = feature_domains();
    let mut out = vec![Vec::<(&str, &str)>::new()];
    for f in features {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                domains[f].iter().map(move |v| {
                    let mut p = prefix.clone();
                    p.push((f, v));
                    p
                })
            })
            .collect();
    }
    out.into_iter().map(|p| FeatureBundle::new(p).unwrap()).collect()
}

fn set_all(b: &FeatureBundle) -> Vec<Action> {
    b.iter()
        .map(|(f, v)| Action::Set { register: sym(f), value: sym(v) })
        .collect()
}

fn equal_all(b: &FeatureBundle) -> Vec<Guard> {
    b.iter()
        .map(|(f, v)| Guard::Equals { register: sym(f), value: sym(v) })
        .collect()
}

fn declare(ra: &mut RegisterAutomaton, features: &[&str]) {
    let domains = feature_domains();
    for f in features {
        ra.add_register(sym(f), domains[f].iter().map(|v| sym(v)));
    }
}

/// English: optional determiner, subject noun storing PERSON and NUMBER, a
/// verb that must match both, then an optional object noun phrase.
fn english() -> RegisterAutomaton {
    let mut ra = RegisterAutomaton::new("start");
    declare(&mut ra, &["NUMBER", "PERSON"]);
    ra.connect("start", Some("DET"), vec![], vec![], "det");
    let nominal = bundles(&["NUMBER", "PERSON"]);
    for b in &nominal {
        let n = token("N", b);
        for from in ["start", "det"] {
            ra.connect(from, Some(n.as_str()), vec![], set_all(b), "subject");
        }
        ra.connect("subject", Some(token("V", b).as_str()), equal_all(b), vec![], "verb");
        ra.connect("verb", Some(n.as_str()), vec![], vec![], "object");
        ra.connect("object_det", Some(n.as_str()), vec![], vec![], "object");
    }
    ra.connect("verb", Some("DET"), vec![], vec![], "object_det");
    for f in ["verb", "object"] {
        let id = ra.state_id(f).unwrap();
        ra.set_final(id, true);
    }
    ra
}

/// German: determiner storing CASE, GENDER and NUMBER, adjectives and noun
/// matching them, the noun adding PERSON=3, and a verb matching PERSON and
/// NUMBER.
fn german() -> RegisterAutomaton {
    let mut ra = RegisterAutomaton::new("start");
    declare(&mut ra, &["CASE", "GENDER", "NUMBER", "PERSON"]);
    for b in bundles(&["CASE", "GENDER", "NUMBER"]) {
        ra.connect("start", Some(token("DET", &b).as_str()), vec![], set_all(&b), "det");
        ra.connect("det", Some(token("ADJ", &b).as_str()), equal_all(&b), vec![], "det");
        ra.connect(
            "det",
            Some(token("N", &b).as_str()),
            equal_all(&b),
            vec![Action::Set { register: sym("PERSON"), value: sym("3") }],
            "subject",
        );
    }
    for b in bundles(&["NUMBER", "PERSON"]) {
        ra.connect("subject", Some(token("V", &b).as_str()), equal_all(&b), vec![], "verb");
    }
    let id = ra.state_id("verb").unwrap();
    ra.set_final(id, true);
    ra
}

pub fn agreement_automaton(language: Language) -> RegisterAutomaton {
    match language {
        Language::En => english(),
        Language::De => german(),
    }
}
