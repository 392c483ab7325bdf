//! Filler-gap registers and bounded cross-serial pairing.

use std::fmt;

use crate::fsa::{sym, Action, Guard, RegisterAutomaton, Symbol};

pub const FILLER_REGISTERS: [&str; 3] = ["x", "y", "z"];

/// Fronted `WH_i` stores a filler in register `i`, `GAP_i` discharges it,
/// `W` is any other word. Acceptance needs every register empty again.
pub fn wh_dependency() -> RegisterAutomaton {
    let mut ra = RegisterAutomaton::new("FRONT");
    for r in FILLER_REGISTERS {
        ra.add_register(sym(r), [sym("WH")]);
    }
    for r in FILLER_REGISTERS {
        let reg = sym(r);
        ra.connect(
            "FRONT",
            Some(&format!("WH_{r}")),
            vec![Guard::IsUnset(reg.clone())],
            vec![Action::Set { register: reg.clone(), value: sym("WH") }],
            "FRONT",
        );
        for from in ["FRONT", "CLAUSE"] {
            ra.connect(
                from,
                Some(&format!("GAP_{r}")),
                vec![Guard::IsSet(reg.clone())],
                vec![Action::Clear(reg.clone())],
                "CLAUSE",
            );
        }
    }
    ra.connect("FRONT", Some("W"), vec![], vec![], "CLAUSE");
    ra.connect("CLAUSE", Some("W"), vec![], vec![], "CLAUSE");
    let all_clear = FILLER_REGISTERS.iter().map(|r| Guard::IsUnset(sym(r))).collect();
    ra.connect("CLAUSE", None, all_clear, vec![], "DONE");
    let done = ra.state_id("DONE").unwrap();
    ra.set_final(done, true);
    ra
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CrossSerialReason {
    TooFewLists,
    BoundExceeded,
    /// Lengths differ, so the pairing is unclear rather than ungrammatical.
    Ambiguous,
}

impl fmt::Display for CrossSerialReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CrossSerialReason::TooFewLists => "TOO_FEW_LISTS",
            CrossSerialReason::BoundExceeded => "BOUND_EXCEEDED",
            CrossSerialReason::Ambiguous => "AMBIGUOUS",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Verdict {
    pub ok: bool,
    pub reason: Option<CrossSerialReason>,
    /// The i-th members of every list, when `ok`.
    pub tuples: Vec<Vec<Symbol>>,
}

pub const DEFAULT_CROSS_SERIAL_BOUND: usize = 3;

/// Strict `respectively` reading: every list has the same length, no longer
/// than `bound`.
pub fn cross_serial_check(lists: &[Vec<Symbol>], bound: usize) -> Verdict {
    let fail = |reason| Verdict {
        ok: false,
        reason: Some(reason),
        tuples: Vec::new(),
    };
    if lists.len() < 2 {
        return fail(CrossSerialReason::TooFewLists);
    }
    if lists.iter().any(|l| l.len() > bound) {
        return fail(CrossSerialReason::BoundExceeded);
    }
    let n = lists[0].len();
    if lists.iter().any(|l| l.len() != n) {
        return fail(CrossSerialReason::Ambiguous);
    }
    Verdict {
        ok: true,
        reason: None,
        tuples: (0..n).map(|i| lists.iter().map(|l| l[i].clone()).collect()).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fsa::symbols;

    #[test]
    fn fillers_and_gaps() {
        let ra = wh_dependency();
        ra.validate().unwrap();
        assert!(ra.accepts(&symbols("WH_x GAP_x")));
        assert!(!ra.accepts(&symbols("WH_x")));
        assert!(ra.accepts(&symbols("WH_x WH_y WH_z W W GAP_x GAP_y GAP_z")));
        assert!(!ra.accepts(&symbols("WH_x WH_x GAP_x")));
        assert!(!ra.accepts(&symbols("GAP_y")));
    }

    #[test]
    fn respectively() {
        let men = symbols("Jake Jock Jack");
        let ok = cross_serial_check(&[men.clone(), symbols("June Joan Jane")], 3);
        assert!(ok.ok);
        assert_eq!(ok.tuples[1], symbols("Jock Joan"));
        let short = cross_serial_check(&[men.clone(), symbols("June Joan")], 3);
        assert_eq!(short.reason, Some(CrossSerialReason::Ambiguous));
        let long = cross_serial_check(&[symbols("a b c d"), symbols("e f g h")], 3);
        assert_eq!(long.reason, Some(CrossSerialReason::BoundExceeded));
        assert_eq!(cross_serial_check(&[men], 3).reason, Some(CrossSerialReason::TooFewLists));
    }
}
