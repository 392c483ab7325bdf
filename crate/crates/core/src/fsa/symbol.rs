use std::borrow::Borrow;
use std::fmt;
use std::sync::Arc;

use super::FsaError;

/// A terminal or nonterminal symbol.
///
/// Symbols are nonempty and contain no whitespace, so any sequence of them can
/// be written as space-separated text and read back unchanged.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(text: &str) -> Result<Self, FsaError> {
        if text.is_empty() {
            return Err(FsaError::InvalidSymbol(text.to_string()));
        }
        if text.chars().any(char::is_whitespace) {
            return Err(FsaError::InvalidSymbol(text.to_string()));
        }
        Ok(Symbol(Arc::from(text)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Borrow<str> for Symbol {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl TryFrom<&str> for Symbol {
    type Error = FsaError;

    fn try_from(value: &str) -> Result<Self, Self::Error> {
        Symbol::new(value)
    }
}

impl serde::Serialize for Symbol {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0)
    }
}

impl<'de> serde::Deserialize<'de> for Symbol {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        Symbol::new(&text).map_err(serde::de::Error::custom)
    }
}

/// Shorthand for building a symbol from text known to be valid.
///
/// Panics on empty or whitespace-bearing input; meant for literals.
pub fn sym(text: &str) -> Symbol {
    Symbol::new(text).unwrap_or_else(|_| panic!("invalid symbol literal {text:?}"))
}

/// Splits whitespace-separated text into symbols.
pub fn symbols(text: &str) -> Vec<Symbol> {
    text.split_whitespace().map(sym).collect()
}

/// Joins a symbol sequence with single spaces.
pub fn join(seq: &[Symbol]) -> String {
    let mut out = String::new();
    for (i, s) in seq.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(s.as_str());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_and_whitespace() {
        assert!(Symbol::new("").is_err());
        assert!(Symbol::new("a b").is_err());
        assert!(Symbol::new("a\tb").is_err());
        assert!(Symbol::new("very").is_ok());
    }

    #[test]
    fn splits_and_joins() {
        let seq = symbols("  very  very big ");
        assert_eq!(seq.len(), 3);
        assert_eq!(join(&seq), "very very big");
    }
}
