//! The fourteen end-to-end acceptance checks. Runs without the libtest
//! harness so that every criterion prints exactly one PASS or FAIL line.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use mlg_core::fragments::{adjacency_pairs, affix_hop, blend_automaton, blend_count, english_aux, AuxMorphemeString};
use mlg_core::fsa::{
    regex_compile, sym, symbols, text, Action, FiniteAutomaton, FsaError, Guard, LanguageSize, Orientation,
    RegexTree, RegisterAutomaton, RegularGrammar, StateId, Symbol,
};
use mlg_core::prosody::{
    analyze, chant_measure, detect_pauses, fit_polynomial, AnalyzeOptions, ChantClass, PitchTrack,
    DEFAULT_CHANT_TOLERANCE, DEFAULT_MIN_PAUSE,
};
use mlg_core::rank::{process_incremental, toy_architecture};
use mlg_core::stress::{all_trees, csr_decode, csr_encode, nsr_decode, nsr_encode, SyntaxTree};
use mlg_core::tone::{format_allotones, parse_tones, tem_apply, tem_rules_apply, Tone};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn mlg(args: &[&str]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_mlg"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("mlg {args:?}: {}", String::from_utf8_lossy(&out.stderr)));
    }
    String::from_utf8(out.stdout).map_err(|e| e.to_string())
}

fn language(fsa: &FiniteAutomaton, max_len: usize) -> BTreeSet<Vec<Symbol>> {
    fsa.enumerate_language(max_len).into_iter().collect()
}

// ---- 1 ----

fn table1_reproduction() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let fsa_text = mlg(&["grammar", "to-fsa", fixtures().join("table1.grammar").to_str().unwrap()])?;
    let path = dir.path().join("g.fsa");
    std::fs::write(&path, fsa_text).map_err(|e| e.to_string())?;
    let listed = mlg(&["fsa", "enumerate", "--max-len", "3", path.to_str().unwrap()])?;
    let got: BTreeSet<&str> = listed.lines().collect();
    let want: BTreeSet<&str> =
        ["big", "small", "very big", "very small", "very very big", "very very small"].into();
    ensure(got == want, || format!("enumerated {got:?}"))?;
    Ok(format!("{} strings", got.len()))
}

// ---- 2 ----

fn tam_count() -> Check {
    ensure(english_aux().count_language() == LanguageSize::finite(96), || "library count differs".into())?;
    let out = mlg(&["fsa", "count", fixtures().join("english_aux.fsa").to_str().unwrap()])?;
    ensure(out.trim() == "FINITE 96", || format!("cli printed {out:?}"))?;
    Ok("FINITE 96".into())
}

// ---- 3 ----

fn affix_hopping() -> Check {
    let m = AuxMorphemeString::parse(&["past", "may", "PERF", "PROG", "PASS", "repair"]).map_err(|e| e.to_string())?;
    let got = affix_hop(&m).join(" ");
    ensure(got == "migh+t have be+en be+ing repair+ed", || got.clone())?;
    Ok(got)
}

// ---- 4, 5 ----

fn nsr_example() -> Check {
    let t = SyntaxTree::parse("((big John)(saw (small Joan)))").map_err(|e| e.to_string())?;
    let v = nsr_encode(&t).values;
    ensure(v == [3, 2, 3, 4, 1], || format!("{v:?}"))?;
    let cli = mlg(&["stress", "nsr", "((big John)(saw (small Joan)))"])?;
    ensure(cli.trim() == "big^3 John^2 saw^3 small^4 Joan^1", || format!("cli printed {cli:?}"))?;
    Ok(format!("{v:?}"))
}

fn csr_example() -> Check {
    let t = SyntaxTree::parse("((desk top)(pen stand))").map_err(|e| e.to_string())?;
    let v = csr_encode(&t).values;
    ensure(v == [1, 3, 2, 3], || format!("{v:?}"))?;
    Ok(format!("{v:?}"))
}

// ---- 6 ----

/// Every tree up to eight leaves, a strict superset of the six-leaf space,
/// so the enumeration runs to thousands of shapes.
fn nsr_bijectivity() -> Check {
    let mut total = 0;
    for n in 1..=8 {
        let mut seen = BTreeSet::new();
        for t in all_trees(n) {
            let nsr = nsr_encode(&t).values;
            let csr = csr_encode(&t).values;
            let back = nsr_decode(&nsr, None).map_err(|e| format!("{t:?}: {e}"))?;
            ensure(back == t, || format!("nsr round trip failed on {t:?}"))?;
            let back = csr_decode(&csr, None).map_err(|e| format!("{t:?}: {e}"))?;
            ensure(back == t, || format!("csr round trip failed on {t:?}"))?;
            ensure(seen.insert(nsr), || format!("coding collision at {t:?}"))?;
            total += 1;
        }
    }
    ensure(total >= 1000, || format!("only {total} trees"))?;
    Ok(format!("{total} trees"))
}

// ---- 7 ----

fn tem_table() -> Check {
    let lexical = parse_tones("L H L L H L L H L L H").map_err(|e| e.to_string())?;
    let got = format_allotones(&tem_apply(&lexical).map_err(|e| e.to_string())?);
    ensure(got == "l l h l l h l l h l h", || got.clone())?;
    let cli = mlg(&["tone", "tem", "L H L L H L L H L L H"])?;
    ensure(cli.trim() == got, || format!("cli printed {cli:?}"))?;

    let mut strings = 0;
    for len in 1..=10 {
        for bits in 0u32..(1 << len) {
            let tones: Vec<Tone> = (0..len).map(|i| if bits >> i & 1 == 1 { Tone::H } else { Tone::L }).collect();
            let a = tem_apply(&tones).map_err(|e| e.to_string())?;
            let b = tem_rules_apply(&tones).map_err(|e| e.to_string())?;
            ensure(a == b, || format!("disagreement on {tones:?}"))?;
            strings += 1;
        }
    }
    ensure(strings == 2046, || format!("{strings} strings"))?;
    Ok(format!("table row exact, {strings} strings agree"))
}

// ---- 8 ----

fn blend() -> Check {
    let closed = blend_count(56, 549);
    ensure(closed == BigUint::from(30744u32), || format!("blend_count = {closed}"))?;
    let paths = blend_automaton(56, 549).count_language();
    ensure(paths == LanguageSize::finite(30744), || format!("automaton count {paths:?}"))?;
    Ok("30744".into())
}

// ---- 9 ----

fn chant_ratios() -> Check {
    let rows = [(212.0, 177.0, 1.198), (201.0, 168.0, 1.196), (240.0, 196.0, 1.224), (230.0, 197.0, 1.168)];
    let mut out = Vec::new();
    for (i, (a, b, printed)) in rows.into_iter().enumerate() {
        let m = chant_measure(a, b, DEFAULT_CHANT_TOLERANCE).map_err(|e| e.to_string())?;
        ensure((m.ratio - printed).abs() <= 0.001, || format!("{a}/{b} = {}", m.ratio))?;
        if i < 2 {
            ensure(m.classification == ChantClass::MinorThird, || format!("{a}/{b} not a minor third"))?;
        }
        out.push(format!("{:.3}", m.ratio));
    }
    Ok(out.join(" "))
}

// ---- 10 ----

const FULL_LENGTH: usize = 8;
/// Largest enumeration kept in memory for one fixture.
const BUDGET: usize = 60_000;

/// Longest length up to eight whose enumeration stays within the budget.
fn enumeration_length(fsa: &FiniteAutomaton) -> usize {
    if let LanguageSize::Finite(n) = fsa.count_language() {
        if n <= BigUint::from(BUDGET) {
            return FULL_LENGTH;
        }
    }
    let mut len = 0;
    while len < FULL_LENGTH && fsa.enumerate_language(len + 1).len() <= BUDGET {
        len += 1;
    }
    len
}

/// Out-edges by source state.
struct Edges<'a> {
    fsa: &'a FiniteAutomaton,
    out: Vec<Vec<(Option<&'a Symbol>, StateId)>>,
}

impl<'a> Edges<'a> {
    fn new(fsa: &'a FiniteAutomaton) -> Self {
        let mut out = vec![Vec::new(); fsa.num_states()];
        for t in fsa.transitions() {
            out[t.src].push((t.label.as_ref(), t.dst));
        }
        Edges { fsa, out }
    }

    fn close(&self, mut set: BTreeSet<StateId>) -> BTreeSet<StateId> {
        let mut stack: Vec<StateId> = set.iter().copied().collect();
        while let Some(s) = stack.pop() {
            for &(label, d) in &self.out[s] {
                if label.is_none() && set.insert(d) {
                    stack.push(d);
                }
            }
        }
        set
    }

    fn step(&self, set: &BTreeSet<StateId>, a: &Symbol) -> BTreeSet<StateId> {
        let next = set
            .iter()
            .flat_map(|&s| self.out[s].iter().filter(|(l, _)| *l == Some(a)).map(|&(_, d)| d))
            .collect();
        self.close(next)
    }

    fn labels(&self, set: &BTreeSet<StateId>) -> Vec<&'a Symbol> {
        set.iter().flat_map(|&s| self.out[s].iter().filter_map(|(l, _)| *l)).collect()
    }

    fn accepting(&self, set: &BTreeSet<StateId>) -> bool {
        set.iter().any(|&s| self.fsa.is_final(s))
    }
}

/// Exact equivalence by a joint subset walk over both automata.
fn equivalent(a: &FiniteAutomaton, b: &FiniteAutomaton) -> bool {
    let (ea, eb) = (Edges::new(a), Edges::new(b));
    let start = (ea.close(BTreeSet::from([a.initial()])), eb.close(BTreeSet::from([b.initial()])));
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = vec![start];
    while let Some((x, y)) = queue.pop() {
        if ea.accepting(&x) != eb.accepting(&y) {
            return false;
        }
        // a symbol leaving neither side leads both to the empty set
        let symbols: BTreeSet<&Symbol> = ea.labels(&x).into_iter().chain(eb.labels(&y)).collect();
        for s in symbols {
            let pair = (ea.step(&x, s), eb.step(&y, s));
            if seen.insert(pair.clone()) {
                queue.push(pair);
            }
        }
    }
    true
}

/// Same language minus the empty string, which grammars cannot derive.
fn nonempty_part(fsa: &FiniteAutomaton) -> FiniteAutomaton {
    let d = fsa.determinize();
    if !d.is_final(d.initial()) {
        return d;
    }
    let mut out = d.clone();
    let fresh = out.add_state("__start");
    for t in d.transitions().iter().filter(|t| t.src == d.initial()) {
        out.add_transition(fresh, t.label.clone(), t.dst);
    }
    out.set_initial(fresh);
    out
}

/// Every automaton derived from `fsa` by a language-preserving operation,
/// with the empty string removed where a grammar sits in between.
fn derived(fsa: &FiniteAutomaton) -> Result<Vec<(&'static str, FiniteAutomaton, bool)>, String> {
    let err = |e: FsaError| e.to_string();
    let det = fsa.determinize();
    let min = det.minimize().map_err(err)?;
    let mut out = vec![("determinize", det, true), ("minimize", min, true)];
    let core = nonempty_part(fsa);
    let has_strings = !core.finals().is_empty() && !core.trim().transitions().is_empty();
    if has_strings {
        for side in [Orientation::Right, Orientation::Left] {
            let g = RegularGrammar::from_automaton(&core, side).map_err(err)?;
            out.push(("automaton->grammar->automaton", g.to_automaton(), false));
            let flipped = g.convert_orientation().map_err(err)?;
            out.push(("convert_orientation", flipped.to_automaton(), false));
        }
    }
    Ok(out)
}

/// Compares every derived automaton against `fsa` by enumeration and by
/// joint subset walk. Returns the enumeration length used.
fn check_automaton(name: &str, fsa: &FiniteAutomaton) -> Result<usize, String> {
    let len = enumeration_length(fsa);
    let reference = language(fsa, len);
    let nonempty: BTreeSet<Vec<Symbol>> = reference.iter().filter(|s| !s.is_empty()).cloned().collect();
    let core = nonempty_part(fsa);
    for (op, result, keeps_empty) in derived(fsa)? {
        let want = if keeps_empty { &reference } else { &nonempty };
        ensure(&language(&result, len) == want, || format!("{name}: {op} changes the language by length {len}"))?;
        let against = if keeps_empty { fsa } else { &core };
        ensure(equivalent(&result, against), || format!("{name}: {op} is not equivalent"))?;
    }
    Ok(len)
}

fn check_grammar(name: &str, g: &RegularGrammar) -> Result<usize, String> {
    let err = |e: FsaError| format!("{name}: {e}");
    let fsa = g.to_automaton();
    let len = check_automaton(name, &fsa)?;
    let reference = language(&fsa, len);
    let flipped = g.convert_orientation().map_err(err)?;
    ensure(language(&flipped.to_automaton(), len) == reference, || format!("{name}: convert_orientation"))?;
    let back = RegularGrammar::from_automaton(&fsa, g.orientation()).map_err(err)?;
    ensure(language(&back.to_automaton(), len) == reference, || format!("{name}: grammar round trip"))?;
    Ok(len)
}

fn check_registers(name: &str, ra: &RegisterAutomaton) -> Result<(), String> {
    let expanded = ra.expand();
    let direct: BTreeSet<Vec<Symbol>> = ra.enumerate_language(FULL_LENGTH).into_iter().collect();
    ensure(language(&expanded, FULL_LENGTH) == direct, || format!("{name}: expansion changes the language"))?;
    for s in &direct {
        ensure(ra.accepts(s), || format!("{name}: simulation rejects {s:?}"))?;
    }
    Ok(())
}

fn random_nfa(rng: &mut ChaCha8Rng) -> FiniteAutomaton {
    let n = rng.gen_range(1..=4);
    let mut fsa = FiniteAutomaton::new("q0");
    for i in 1..n {
        fsa.add_state(&format!("q{i}"));
    }
    for _ in 0..rng.gen_range(0..=3 * n) {
        let label = match rng.gen_range(0..6) {
            0 => None,
            k => Some(sym(["a", "b"][k % 2])),
        };
        fsa.add_transition(rng.gen_range(0..n), label, rng.gen_range(0..n));
    }
    for s in 0..n {
        fsa.set_final(s, rng.gen_bool(0.4));
    }
    fsa
}

fn random_registers(rng: &mut ChaCha8Rng) -> RegisterAutomaton {
    let n = rng.gen_range(1..=3);
    let mut ra = RegisterAutomaton::new("q0");
    for i in 1..n {
        ra.add_state(&format!("q{i}"));
    }
    ra.add_register(sym("r"), [sym("0"), sym("1")]);
    let value = |rng: &mut ChaCha8Rng| sym(["0", "1"][rng.gen_range(0..2)]);
    for _ in 0..rng.gen_range(1..=3 * n) {
        let guards = match rng.gen_range(0..5) {
            0 => vec![Guard::Equals { register: sym("r"), value: value(rng) }],
            1 => vec![Guard::IsSet(sym("r"))],
            2 => vec![Guard::IsUnset(sym("r"))],
            _ => vec![],
        };
        let actions = match rng.gen_range(0..4) {
            0 => vec![Action::Set { register: sym("r"), value: value(rng) }],
            1 => vec![Action::Clear(sym("r"))],
            _ => vec![],
        };
        let src = format!("q{}", rng.gen_range(0..n));
        let dst = format!("q{}", rng.gen_range(0..n));
        let label = ["a", "b"][rng.gen_range(0..2)];
        ra.connect(&src, Some(label), guards, actions, &dst);
    }
    for s in 0..n {
        ra.set_final(s, rng.gen_bool(0.5));
    }
    ra
}

fn fixture_files() -> Vec<PathBuf> {
    let mut files = Vec::new();
    for dir in [fixtures(), fixtures().join("toy_arch")] {
        for entry in std::fs::read_dir(dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_file() {
                files.push(path);
            }
        }
    }
    files.sort();
    files
}

fn language_preservation() -> Check {
    let mut lengths: BTreeMap<String, usize> = BTreeMap::new();
    let mut registers = 0;
    for path in fixture_files() {
        let name = path.file_name().unwrap().to_string_lossy().to_string();
        let read = || std::fs::read_to_string(&path).map_err(|e| e.to_string());
        let err = |e: FsaError| format!("{name}: {e}");
        match path.extension().and_then(|e| e.to_str()) {
            Some("fsa") => {
                let fsa = text::parse_automaton(&read()?).map_err(err)?;
                lengths.insert(name.clone(), check_automaton(&name, &fsa)?);
            }
            Some("grammar") => {
                let g = text::parse_grammar(&read()?).map_err(err)?;
                lengths.insert(name.clone(), check_grammar(&name, &g)?);
            }
            Some("rfsa") => {
                let ra = text::parse_register_automaton(&read()?).map_err(err)?;
                check_registers(&name, &ra)?;
                registers += 1;
            }
            _ => {}
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x6d6c67);
    for i in 0..100 {
        let fsa = random_nfa(&mut rng);
        let len = check_automaton(&format!("random acceptor {i}"), &fsa)?;
        ensure(len == FULL_LENGTH, || format!("random acceptor {i} capped at {len}"))?;
        check_registers(&format!("random register automaton {i}"), &random_registers(&mut rng))?;
    }

    let capped: Vec<String> = lengths
        .iter()
        .filter(|(_, &l)| l < FULL_LENGTH)
        .map(|(n, l)| format!("{n} to length {l}"))
        .collect();
    let mut summary = format!(
        "{} acceptor/grammar fixtures, {registers} register fixtures, 200 random instances",
        lengths.len()
    );
    if !capped.is_empty() {
        summary.push_str(&format!("; enumeration capped for {} (exact equivalence checked)", capped.join(", ")));
    }
    Ok(summary)
}

// ---- 11 ----

fn procedural_plausibility() -> Check {
    let dfa = english_aux();
    ensure(dfa.is_deterministic(), || "english_aux is not deterministic".into())?;
    for m in AuxMorphemeString::all("go") {
        let input = m.categories();
        let r = dfa.run(&input).map_err(|e| e.to_string())?;
        ensure(r.steps == input.len() && r.accepted, || format!("{m}: {} steps", r.steps))?;
    }
    let table1 = text::parse_automaton(&std::fs::read_to_string(fixtures().join("table1.fsa")).unwrap())
        .map_err(|e| e.to_string())?
        .determinize();
    for n in [0, 1, 10, 100, 1000] {
        let mut input = vec![sym("very"); n];
        input.push(sym("big"));
        let r = table1.run(&input).map_err(|e| e.to_string())?;
        ensure(r.steps == n + 1, || format!("{} steps for length {}", r.steps, n + 1))?;
    }

    let arch = toy_architecture();
    let syllables = ["pa", "ti", "ku", "ka", "pi", "tu"];
    let mut watermarks = Vec::new();
    for len in [10, 100, 1000, 10000] {
        let input: Vec<Symbol> = (0..len)
            .map(|i| {
                let s = syllables[(i / 2) % syllables.len()];
                sym(&s[i % 2..i % 2 + 1])
            })
            .collect();
        let r = process_incremental(&arch, &input);
        ensure(r.violations.is_empty(), || format!("{:?}", r.violations))?;
        ensure(r.instrumentation.per_symbol_steps.len() == len, || "missing per-symbol counts".into())?;
        watermarks.push(r.instrumentation.max_memory_cells);
    }
    ensure(watermarks.iter().all(|&w| w == watermarks[0]), || format!("watermarks {watermarks:?}"))?;
    Ok(format!("memory watermark {} cells at every length", watermarks[0]))
}

// ---- 12 ----

fn adjacency_pairs_match_regex() -> Check {
    let tree = RegexTree::parse("Q A (C)? (Q A (C)?)*").map_err(|e| e.to_string())?;
    let compiled = regex_compile(&tree);
    let from_fixture = text::parse_automaton(&std::fs::read_to_string(fixtures().join("adjacency_pairs.fsa")).unwrap())
        .map_err(|e| e.to_string())?;
    let want = language(&compiled, 9);
    for (what, fsa) in [("library", adjacency_pairs()), ("fixture", from_fixture)] {
        ensure(language(&fsa, 9) == want, || format!("{what} automaton differs from the regex"))?;
    }
    ensure(want.contains(&symbols("Q A C Q A")), || "QACQA missing".into())?;
    Ok(format!("{} strings up to length 9", want.len()))
}

// ---- 13 ----

fn regression_recovery() -> Check {
    let err = |e: mlg_core::prosody::ProsodyError| e.to_string();
    let grid: Vec<f64> = (0..200).map(|i| i as f64 * 0.01).collect();
    let line: Vec<(f64, f64)> = grid.iter().map(|&t| (t, 120.0 + 5.0 * t)).collect();
    let fit = fit_polynomial(&PitchTrack::from_pairs(&line, "line").map_err(err)?, 1).map_err(err)?;
    ensure((fit.slope() - 5.0).abs() <= 1e-9, || format!("slope {}", fit.slope()))?;

    let curve: Vec<(f64, f64)> = grid.iter().map(|&t| (t, 180.0 + 12.0 * t - 7.5 * t * t)).collect();
    let fit = fit_polynomial(&PitchTrack::from_pairs(&curve, "curve").map_err(err)?, 2).map_err(err)?;
    for (got, want) in fit.coefficients.iter().zip([180.0, 12.0, -7.5]) {
        ensure((got - want).abs() <= 1e-6, || format!("coefficients {:?}", fit.coefficients))?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let noisy: Vec<(f64, f64)> = grid.iter().map(|&t| (t, 200.0 - 20.0 * t + rng.gen_range(-8.0..8.0))).collect();
    let noisy = PitchTrack::from_pairs(&noisy, "noisy").map_err(err)?;
    for degree in [1, 2] {
        let fit = fit_polynomial(&noisy, degree).map_err(err)?;
        let r = fit.residuals(&noisy);
        for j in 0..=degree as i32 {
            let dot: f64 = r.iter().map(|(t, e)| e * t.powi(j)).sum();
            ensure(dot.abs() <= 1e-9, || format!("degree {degree}, column {j}: {dot}"))?;
        }
    }

    let csv = std::fs::read_to_string(fixtures().join("news_style.csv")).map_err(|e| e.to_string())?;
    let track = PitchTrack::from_csv(&csv, "news_style.csv").map_err(err)?;
    let report = analyze(&track, &AnalyzeOptions::default()).map_err(err)?;
    let pauses: Vec<f64> = report.pauses.pauses.iter().map(|p| p.duration()).collect();
    let built = [0.25, 0.40, 0.30, 0.60, 0.35, 0.28, 0.45, 0.22, 0.50];
    ensure(pauses.len() == 9 && pauses.iter().zip(built).all(|(a, b)| (a - b).abs() < 1e-9), || {
        format!("pauses {pauses:?}")
    })?;
    let jumps = [1.95, 1.80, 1.62, 1.45, 1.35, 1.25, 1.18, 1.08, 1.04];
    for (b, want) in report.resets.boundaries.iter().zip(jumps) {
        let got = b.magnitude.ok_or_else(|| format!("no magnitude at unit {}", b.unit_index))?;
        ensure((got - want).abs() < 1e-3, || format!("unit {}: {got} vs {want}", b.unit_index))?;
    }
    let resets: Vec<usize> = report.resets.events.iter().map(|e| e.unit_index).collect();
    ensure(resets == (1..=7).collect::<Vec<_>>(), || format!("resets at {resets:?}"))?;
    ensure(report.paratones.len() == 4, || format!("{} paratones", report.paratones.len()))?;
    Ok("slope, coefficients, orthogonality and news-style segmentation exact".into())
}

// ---- 14 ----

fn pause_semantics() -> Check {
    let mut pairs = Vec::new();
    let mut frame = 0;
    let mut push = |frames: usize, f0: f64| {
        for _ in 0..frames {
            pairs.push((frame as f64 / 100.0, f0));
            frame += 1;
        }
    };
    push(50, 200.0);
    push(30, 0.0);
    push(50, 190.0);
    push(15, 0.0);
    push(50, 180.0);
    let track = PitchTrack::from_pairs(&pairs, "gaps").map_err(|e| e.to_string())?;
    let seg = detect_pauses(&track, DEFAULT_MIN_PAUSE);
    ensure(seg.pauses.len() == 1, || format!("{} pauses", seg.pauses.len()))?;
    let p = seg.pauses[0];
    ensure((p.start - 0.50).abs() < 1e-9 && (p.duration() - 0.30).abs() < 1e-9, || format!("{p:?}"))?;
    Ok("300 ms detected, 150 ms ignored".into())
}

fn main() {
    let criteria: [(&str, Option<u64>, fn() -> Check); 14] = [
        ("Table 1 reproduction", Some(1), table1_reproduction),
        ("TAM count", Some(1), tam_count),
        ("affix hopping", Some(1), affix_hopping),
        ("NSR example", None, nsr_example),
        ("CSR example", None, csr_example),
        ("NSR/CSR bijectivity", Some(30), nsr_bijectivity),
        ("Tem sandhi table and rule agreement", Some(5), tem_table),
        ("blend count", None, blend),
        ("chant ratios", None, chant_ratios),
        ("language preservation suite", Some(60), language_preservation),
        ("procedural plausibility", None, procedural_plausibility),
        ("adjacency pairs versus regex", None, adjacency_pairs_match_regex),
        ("regression recovery", None, regression_recovery),
        ("pause semantics", None, pause_semantics),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let mut result = check();
        let elapsed = start.elapsed();
        if let (Ok(_), Some(secs)) = (&result, limit) {
            if elapsed > Duration::from_secs(secs) {
                result = Err(format!("took {:.2}s, limit {secs}s", elapsed.as_secs_f64()));
            }
        }
        let (status, detail) = match &result {
            Ok(d) => ("PASS", d.clone()),
            Err(e) => ("FAIL", e.clone()),
        };
        println!("criterion {:>2} {status} {name} [{:.2}s]: {detail}", i + 1, elapsed.as_secs_f64());
        failed += result.is_err() as usize;
    }
    println!("acceptance: {} passed, {failed} failed", 14 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

