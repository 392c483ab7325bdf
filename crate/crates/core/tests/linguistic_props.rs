use std::collections::{BTreeMap, BTreeSet};

use mlg_core::fragments::{
    affix_hop, agreement_automaton, catalogue, english_aux, feature_domains, parse_token, token, AuxMorphemeString,
    FeatureBundle, Fragment, Language,
};
use mlg_core::fsa::{sym, text, LanguageSize, Symbol};
use mlg_core::stress::{all_trees, csr_decode, csr_encode, nsr_decode, nsr_encode, SyntaxTree};
use mlg_core::tone::{
    expand_floating, synthesize_targets, tem_apply, tem_rules_apply, Allotone, SynthesisParams, Tone,
};
use proptest::prelude::*;

fn plain_tones(max: usize) -> impl Strategy<Value = Vec<Tone>> {
    prop::collection::vec(prop_oneof![Just(Tone::H), Just(Tone::L)], 1..=max)
}

fn flip(t: Tone) -> Tone {
    if t == Tone::H {
        Tone::L
    } else {
        Tone::H
    }
}

// ---- tone ----

proptest! {
    #[test]
    fn transducer_matches_rewrite_rules(tones in plain_tones(16)) {
        prop_assert_eq!(tem_apply(&tones).unwrap(), tem_rules_apply(&tones).unwrap());
    }

    #[test]
    fn output_is_conditioned_on_the_lexical_tier(tones in plain_tones(16), pick in any::<prop::sample::Index>()) {
        let n = tones.len();
        prop_assume!(n >= 3);
        // i and i + 1 are both interior or final; i - 1 is what we perturb
        let i = 1 + pick.index(n - 2);
        let mut other = tones.clone();
        other[i - 1] = flip(other[i - 1]);
        let (a, b) = (tem_apply(&tones).unwrap(), tem_apply(&other).unwrap());
        if a[i] != b[i] {
            prop_assert_eq!(a[i + 1], b[i + 1]);
        }
        prop_assert_eq!(&a[i + 1..], &b[i + 1..]);
    }

    #[test]
    fn synthesized_targets_terrace_downwards(tones in plain_tones(20), step in 0.5f64..=1.0) {
        let surface = tem_apply(&tones).unwrap();
        let params = SynthesisParams { step, ..SynthesisParams::default() };
        let targets = synthesize_targets(&surface, params).unwrap();
        prop_assert!(targets.iter().all(|&f| f > 0.0));
        let highs: Vec<f64> = surface.iter().zip(&targets).filter(|(a, _)| **a == Allotone::High).map(|(_, f)| *f).collect();
        prop_assert!(highs.windows(2).all(|w| w[1] <= w[0]));
        for i in 1..surface.len() {
            if surface[i] == surface[i - 1] {
                prop_assert_eq!(targets[i], targets[i - 1]);
            }
        }
    }

    #[test]
    fn floating_lows_are_reinstated(
        tones in prop::collection::vec(prop_oneof![Just(Tone::H), Just(Tone::L), Just(Tone::DownstepH)], 1..12)
    ) {
        let downsteps = tones.iter().filter(|&&t| t == Tone::DownstepH).count();
        match expand_floating(&tones) {
            Ok(e) => {
                prop_assert_eq!(e.tones.len(), tones.len() + downsteps);
                prop_assert_eq!(e.silent.iter().filter(|&&s| s).count(), downsteps);
                prop_assert!(!e.tones.contains(&Tone::DownstepH));
                tem_apply(&e.tones).unwrap();
            }
            Err(_) => prop_assert_eq!(tones[0], Tone::DownstepH),
        }
    }
}

// ---- stress ----

#[test]
fn stress_codings_hold_for_every_small_tree() {
    for n in 1..=6 {
        let trees = all_trees(n);
        let mut nsr_seen = BTreeSet::new();
        let mut csr_seen = BTreeSet::new();
        for t in &trees {
            let nsr = nsr_encode(t);
            let csr = csr_encode(t);
            nsr.validate().unwrap();
            csr.validate().unwrap();
            let bound = t.depth() as u32 + 1;
            assert!(nsr.values.iter().chain(&csr.values).all(|&v| v <= bound), "{t:?}");

            let mut mirrored = nsr_encode(&t.mirror()).values;
            mirrored.reverse();
            assert_eq!(csr.values, mirrored, "mirror law on {t:?}");

            assert_eq!(&nsr_decode(&nsr.values, None).unwrap(), t);
            assert_eq!(&csr_decode(&csr.values, None).unwrap(), t);
            assert!(nsr_seen.insert(nsr.values), "two trees share an NSR coding");
            assert!(csr_seen.insert(csr.values), "two trees share a CSR coding");
        }
    }
}

proptest! {
    #[test]
    fn labelled_trees_decode_to_themselves(n in 1usize..=6, pick in any::<prop::sample::Index>(), words in prop::collection::vec("[a-z]{1,6}", 6)) {
        let trees = all_trees(n);
        let labels: Vec<Symbol> = words[..n].iter().map(|w| sym(w)).collect();
        let t: SyntaxTree = trees[pick.index(trees.len())].relabel(&labels).unwrap();
        prop_assert_eq!(nsr_decode(&nsr_encode(&t).values, Some(&labels)).unwrap(), t.clone());
        prop_assert_eq!(csr_decode(&csr_encode(&t).values, Some(&labels)).unwrap(), t);
    }
}

// ---- fragments ----

#[test]
fn auxiliary_sequences_are_exactly_the_96_combinations() {
    let fsa = english_aux();
    assert_eq!(fsa.count_language(), LanguageSize::finite(96));
    let all = AuxMorphemeString::all("repair");
    assert_eq!(all.len(), 96);
    let sequences: BTreeSet<Vec<Symbol>> = all.iter().map(AuxMorphemeString::categories).collect();
    assert_eq!(sequences.len(), 96);
    assert_eq!(sequences, fsa.enumerate_language(6).into_iter().collect());

    let surfaces: BTreeSet<Vec<String>> = all.iter().map(affix_hop).collect();
    assert_eq!(surfaces.len(), 96, "affix hopping merged two inputs");
    for m in &all {
        let auxiliaries = m.categories().len() - 2;
        assert!(auxiliaries <= 4, "{m}");
    }
}

fn values(feature: &str) -> Vec<&'static str> {
    feature_domains()[feature].clone()
}

fn bundle(features: &[&str], choice: &[usize]) -> FeatureBundle {
    let pairs = features.iter().zip(choice).map(|(f, &i)| {
        let vs = values(f);
        (*f, vs[i % vs.len()])
    });
    FeatureBundle::new(pairs).unwrap()
}

/// Applies a value permutation per feature to every token.
fn rename(sentence: &[Symbol], perms: &BTreeMap<&str, Vec<usize>>) -> Vec<Symbol> {
    sentence
        .iter()
        .map(|s| {
            let (cat, b) = parse_token(s).unwrap();
            let pairs: Vec<(String, String)> = b
                .iter()
                .map(|(f, v)| match perms.get(f) {
                    Some(p) => {
                        let vs = values(f);
                        let i = vs.iter().position(|x| *x == v).unwrap();
                        (f.to_string(), vs[p[i]].to_string())
                    }
                    None => (f.to_string(), v.to_string()),
                })
                .collect();
            token(&cat, &FeatureBundle::new(pairs.iter().map(|(a, b)| (a.as_str(), b.as_str()))).unwrap())
        })
        .collect()
}

fn permutations(features: &'static [&'static str]) -> impl Strategy<Value = BTreeMap<&'static str, Vec<usize>>> {
    let strategies: Vec<_> = features
        .iter()
        .map(|f| Just((0..values(f).len()).collect::<Vec<_>>()).prop_shuffle().prop_map(move |p| (*f, p)))
        .collect();
    strategies.prop_map(|v| v.into_iter().collect())
}

const NP: [&str; 3] = ["CASE", "GENDER", "NUMBER"];
const VERB: [&str; 2] = ["NUMBER", "PERSON"];

/// `DET ADJ* N V`, each token either copying a shared choice or taking its own.
fn german_sentence() -> impl Strategy<Value = Vec<Symbol>> {
    let choice = || prop::collection::vec(0usize..4, 3);
    (choice(), prop::collection::vec((any::<bool>(), choice()), 2..5), any::<bool>(), choice()).prop_map(
        |(shared, own, verb_agrees, verb_choice)| {
            let mut s = Vec::new();
            let n = own.len();
            for (i, (copy, c)) in own.into_iter().enumerate() {
                let cat = match i {
                    0 => "DET",
                    i if i == n - 1 => "N",
                    _ => "ADJ",
                };
                let b = if copy { &shared } else { &c };
                s.push(token(cat, &bundle(&NP, b)));
            }
            let verb = if verb_agrees { vec![shared[2], 2] } else { verb_choice[..2].to_vec() };
            s.push(token("V", &bundle(&VERB, &verb)));
            s
        },
    )
}

fn english_sentence() -> impl Strategy<Value = Vec<Symbol>> {
    let choice = || prop::collection::vec(0usize..3, 2);
    (any::<bool>(), choice(), any::<bool>(), choice(), prop::option::of(choice())).prop_map(
        |(det, subject, agrees, verb, object)| {
            let mut s = Vec::new();
            if det {
                s.push(sym("DET"));
            }
            s.push(token("N", &bundle(&VERB, &subject)));
            s.push(token("V", &bundle(&VERB, if agrees { &subject } else { &verb })));
            if let Some(o) = object {
                s.push(token("N", &bundle(&VERB, &o)));
            }
            s
        },
    )
}

proptest! {
    #[test]
    fn german_agreement_ignores_value_names(s in german_sentence(), perms in permutations(&NP)) {
        let ra = agreement_automaton(Language::De);
        prop_assert_eq!(ra.accepts(&s), ra.accepts(&rename(&s, &perms)));
    }

    #[test]
    fn english_agreement_ignores_value_names(s in english_sentence(), perms in permutations(&VERB)) {
        let ra = agreement_automaton(Language::En);
        prop_assert_eq!(ra.accepts(&s), ra.accepts(&rename(&s, &perms)));
    }

    #[test]
    fn any_single_feature_change_breaks_german_agreement(
        shared in prop::collection::vec(0usize..4, 3),
        adjectives in 0usize..3,
        target in any::<prop::sample::Index>(),
        feature in any::<prop::sample::Index>(),
        shift in 1usize..4,
    ) {
        let np = bundle(&NP, &shared);
        let verb = bundle(&VERB, &[shared[2], 2]);
        let mut s = vec![token("DET", &np)];
        s.extend(std::iter::repeat_n(token("ADJ", &np), adjectives));
        s.push(token("N", &np));
        s.push(token("V", &verb));
        let ra = agreement_automaton(Language::De);
        prop_assert!(ra.accepts(&s));

        let i = target.index(s.len());
        let (cat, b) = parse_token(&s[i]).unwrap();
        let mut pairs: Vec<(String, String)> = b.iter().map(|(f, v)| (f.to_string(), v.to_string())).collect();
        let j = feature.index(pairs.len());
        let vs = values(&pairs[j].0);
        let k = vs.iter().position(|v| *v == pairs[j].1).unwrap();
        pairs[j].1 = vs[(k + shift % vs.len().max(2)) % vs.len()].to_string();
        prop_assume!(pairs[j].1 != b.get(&pairs[j].0).unwrap());
        s[i] = token(&cat, &FeatureBundle::new(pairs.iter().map(|(a, b)| (a.as_str(), b.as_str()))).unwrap());
        prop_assert!(!ra.accepts(&s), "{:?}", s);
    }
}

#[test]
fn catalogue_entries_round_trip_through_text() {
    for entry in catalogue() {
        let built = (entry.build)();
        let written = built.to_text();
        let parsed = match &built {
            Fragment::Grammar(_) => Fragment::Grammar(text::parse_grammar(&written).unwrap()),
            Fragment::Automaton(_) => Fragment::Automaton(text::parse_automaton(&written).unwrap()),
            Fragment::Transducer(_) => Fragment::Transducer(text::parse_transducer(&written).unwrap()),
            Fragment::Register(_) => Fragment::Register(text::parse_register_automaton(&written).unwrap()),
        };
        assert_eq!(parsed, built, "{}", entry.name);
        assert_eq!(parsed.to_text(), written, "{}", entry.name);
    }
}
