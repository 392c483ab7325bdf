use mlg_core::fsa::{sym, Symbol};
use mlg_core::rank::{
    process_incremental, toy_architecture, Rank, RankArchitecture, RankError, RankTriple, Session, DEFAULT_QUEUE_CAP,
};
use proptest::prelude::*;

/// Raw symbols, including `x`, which no phoneme unit accepts.
fn phonemes(max: usize) -> impl Strategy<Value = Vec<Symbol>> {
    const RAW: [&str; 7] = ["p", "t", "k", "a", "i", "u", "x"];
    prop::collection::vec(prop::sample::select(&RAW[..]), 0..=max)
        .prop_map(|v| v.into_iter().map(sym).collect())
}

/// Mostly well-formed CV input with occasional noise.
fn syllabic(max: usize) -> impl Strategy<Value = Vec<Symbol>> {
    let consonant = prop::sample::select(&["p", "t", "k"][..]);
    let vowel = prop::sample::select(&["a", "i", "u"][..]);
    let noise = prop::option::weighted(0.1, prop::sample::select(&["p", "a", "x"][..]));
    prop::collection::vec((consonant, vowel, noise), 0..=max)
        .prop_map(|v| {
            v.into_iter()
                .flat_map(|(c, vowel, noise)| [Some(c), Some(vowel), noise].into_iter().flatten())
                .map(sym)
                .collect()
        })
}

fn replace(arch: &RankArchitecture, triple: RankTriple) -> RankArchitecture {
    let mut triples: Vec<RankTriple> = arch.triples().to_vec();
    let i = triple.rank.index();
    triples[i] = triple;
    RankArchitecture::new(triples).unwrap()
}

/// Same rank with `extra` edges added to its automaton.
fn with_edges(arch: &RankArchitecture, rank: Rank, extra: &[(usize, Symbol, usize)]) -> Result<RankTriple, RankError> {
    let old = arch.triple(rank);
    let mut tau = old.tau().clone();
    for (s, label, d) in extra {
        let n = tau.num_states();
        tau.add_transition(s % n, Some(label.clone()), d % n);
    }
    RankTriple::new(rank, tau, old.unit_table(), old.sigma.clone(), None)
}

proptest! {
    #[test]
    fn emitted_tokens_are_never_retracted(input in phonemes(40), cut in any::<prop::sample::Index>()) {
        let arch = toy_architecture();
        let k = cut.index(input.len() + 1);
        let mut session = Session::new(&arch);
        for s in &input[..k] {
            session.push(s.clone());
        }
        let early: Vec<Vec<_>> = Rank::ALL.iter().map(|r| session.stream(*r).to_vec()).collect();
        for s in &input[k..] {
            session.push(s.clone());
        }
        let resumed = session.finish();
        let whole = process_incremental(&arch, &input);
        prop_assert_eq!(&resumed, &whole);
        for (r, tokens) in Rank::ALL.iter().zip(early) {
            let full = &whole.streams[r].tokens;
            prop_assert!(tokens.len() <= full.len());
            prop_assert_eq!(&full[..tokens.len()], &tokens[..], "rank {}", r);
        }
    }

    #[test]
    fn memory_and_work_per_symbol_are_bounded(input in syllabic(200)) {
        let arch = toy_architecture();
        let result = process_incremental(&arch, &input);
        let inst = &result.instrumentation;
        prop_assert!(result.violations.is_empty(), "{:?}", result.violations);
        prop_assert!(inst.max_memory_cells <= 6 * (1 + DEFAULT_QUEUE_CAP));
        prop_assert_eq!(inst.per_symbol_steps.len(), input.len());
        // a symbol moves each rank at most twice: once failing, once retrying
        prop_assert!(inst.per_symbol_steps.iter().all(|&s| s <= 12), "{:?}", inst.per_symbol_steps);
        prop_assert!(inst.total_steps() <= 12 * (input.len() + 1));
        for stream in result.streams.values() {
            stream.validate().unwrap();
        }
    }

    #[test]
    fn cycles_inside_a_rank_keep_the_layering(
        rank in prop::sample::select(&Rank::ALL[..]),
        edges in prop::collection::vec((0usize..8, any::<prop::sample::Index>(), 0usize..8), 1..4),
    ) {
        let arch = toy_architecture();
        let terminals: Vec<Symbol> = arch.triple(rank).terminals().iter().cloned().collect();
        let extra: Vec<(usize, Symbol, usize)> =
            edges.into_iter().map(|(s, l, d)| (s, terminals[l.index(terminals.len())].clone(), d)).collect();
        let triple = match with_edges(&arch, rank, &extra) {
            Ok(t) => t,
            // merging two final states that complete different units
            Err(RankError::ConflictingUnits { .. }) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        let report = replace(&arch, triple).validate_layering();
        prop_assert!(report.ok, "{:?}", report.violations);
    }

    #[test]
    fn references_outside_the_rank_below_are_rejected(
        rank in prop::sample::select(&Rank::ALL[..]),
        source in prop::sample::select(&Rank::ALL[..]),
        pick in any::<prop::sample::Index>(),
        state in 0usize..8,
    ) {
        prop_assume!(rank.below() != Some(source));
        let arch = toy_architecture();
        let units: Vec<Symbol> = arch.triple(source).unit_categories().into_iter().cloned().collect();
        let foreign = units[pick.index(units.len())].clone();
        let triple = with_edges(&arch, rank, &[(state, foreign.clone(), state)]).unwrap();
        let report = replace(&arch, triple).validate_layering();
        prop_assert!(!report.ok);
        prop_assert!(report.violations.iter().any(|v| v.rank == rank && v.symbol == foreign.as_str()));
    }
}
