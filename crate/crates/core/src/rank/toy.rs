//! A small six-rank architecture over the raw alphabet `p t k a i u`.

use std::collections::BTreeMap;

use super::{parse_manifest, RankArchitecture, RankError};

const MANIFEST: &str = r#"[discourse]
tau = "discourse.fsa"
units = { DISC = "DISC" }
sigma = { UTT = "utterance" }

[utterance]
tau = "utterance.fsa"
units = { UTT = "UTT" }
sigma = { PHR = "phrase" }

[phrase]
tau = "phrase.fsa"
units = { PHR = "PHR" }
sigma = { W = "word" }

[word]
tau = "word.fsa"
units = { W = "W" }
sigma = { SYL = "syllable" }

[morpheme]
tau = "morpheme.fsa"
units = { SYL = "SYL" }
sigma = { C = "consonant", V = "vowel" }

[phoneme]
tau = "phoneme.fsa"
units = { C = "C", V = "V" }
sigma = { p = "labial stop", t = "alveolar stop", k = "velar stop", a = "open vowel", i = "front vowel", u = "back vowel" }
"#;

/// One or more `item`s, iterated inside the rank.
fn iterated(item: &str, unit: &str) -> String {
    format!("@initial start\n@finals {unit}\nstart {item} {unit}\n{unit} {item} {unit}\n")
}

/// File name and contents of every file in the toy manifest directory.
pub fn toy_architecture_files() -> Vec<(String, String)> {
    let files = [
        ("manifest.toml", MANIFEST.to_string()),
        ("discourse.fsa", iterated("UTT", "DISC")),
        ("utterance.fsa", iterated("PHR", "UTT")),
        ("phrase.fsa", iterated("W", "PHR")),
        ("word.fsa", "@initial start\n@finals W\nstart SYL one\none SYL W\n".to_string()),
        ("morpheme.fsa", "@initial start\n@finals SYL\nstart C onset\nonset V SYL\n".to_string()),
        (
            "phoneme.fsa",
            "@initial start\n@finals C V\nstart p C\nstart t C\nstart k C\nstart a V\nstart i V\nstart u V\n"
                .to_string(),
        ),
    ];
    files.into_iter().map(|(n, c)| (n.to_string(), c)).collect()
}

/// Consonant-vowel syllables, two per word; phrases, utterances and the
/// discourse are iterations of the unit below.
pub fn toy_architecture() -> RankArchitecture {
    let files: BTreeMap<String, String> = toy_architecture_files().into_iter().collect();
    parse_manifest(&files["manifest.toml"], |name| {
        files.get(name).cloned().ok_or_else(|| RankError::Io {
            path: name.to_string(),
            message: "not in the toy set".into(),
        })
    })
    .expect("toy architecture is valid")
}
