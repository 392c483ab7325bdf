use std::fmt::Display;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mlg_core::fragments::{self, FragmentError};
use mlg_core::fsa::text::{self, GrammarFile};
use mlg_core::fsa::{
    regex_compile, FiniteAutomaton, FsaError, LanguageSize, Orientation, RegexTree, RegisterAutomaton,
    RegularGrammar, Symbol, Transducer,
};
use mlg_core::prosody::{self, AnalyzeOptions, PitchTrack, PreprocessParams, ProsodyError, ResetParams, Span};
use mlg_core::rank::{self, RankError};
use mlg_core::stress::{self, StressError, SyntaxTree};
use mlg_core::tone::{self, SynthesisParams, ToneError};

#[derive(Parser)]
#[command(name = "mlg", about = "Finite-state multilinear grammar toolkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Regular and context-free grammar files
    #[command(subcommand)]
    Grammar(GrammarCmd),
    /// Automata, register automata and transducers
    #[command(subcommand)]
    Fsa(FsaCmd),
    /// Six-rank architectures and streams
    #[command(subcommand)]
    Rank(RankCmd),
    /// Built-in grammar fragments
    #[command(subcommand)]
    Fragment(FragmentCmd),
    /// Stress coding of bracketed trees
    #[command(subcommand)]
    Stress(StressCmd),
    /// Tone sandhi and pitch targets
    #[command(subcommand)]
    Tone(ToneCmd),
    /// Pitch-track analysis
    #[command(subcommand)]
    Prosody(ProsodyCmd),
}

#[derive(Clone, Copy, ValueEnum, Default, PartialEq, Eq)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    Right,
    Left,
}

impl From<Side> for Orientation {
    fn from(s: Side) -> Self {
        match s {
            Side::Right => Orientation::Right,
            Side::Left => Orientation::Left,
        }
    }
}

#[derive(Subcommand)]
enum GrammarCmd {
    /// Parse and validate a grammar file
    Check { file: PathBuf },
    /// Automaton for a regular grammar
    ToFsa {
        file: PathBuf,
        #[arg(long)]
        determinize: bool,
        #[arg(long)]
        minimize: bool,
    },
    /// Flip a grammar's orientation, or read a grammar off an automaton
    Convert {
        file: PathBuf,
        /// Target orientation; defaults to the opposite of the input grammar
        #[arg(long, value_enum)]
        to: Option<Side>,
    },
    /// Recursion type of a grammar
    Classify {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum FsaCmd {
    /// Accept or reject an input
    Run { file: PathBuf, input: Vec<String> },
    /// All accepted strings up to a length
    Enumerate {
        file: PathBuf,
        #[arg(long, default_value_t = 5)]
        max_len: usize,
    },
    /// Size of the accepted language
    Count { file: PathBuf },
    Determinize { file: PathBuf },
    Minimize { file: PathBuf },
    /// Feed the first transducer's output to the second
    Compose { first: PathBuf, second: PathBuf },
    /// Plain automaton equivalent to a register automaton
    ExpandRegisters { file: PathBuf },
    /// All outputs of a transducer for an input
    Transduce { file: PathBuf, input: Vec<String> },
    /// Automaton for a regular expression
    Regex { expr: String },
}

#[derive(Subcommand)]
enum RankCmd {
    /// Check strict layering of a manifest
    Validate {
        manifest: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run phoneme-rank input through the cascade
    Process {
        manifest: PathBuf,
        input: Vec<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Attach secondary stream tokens to primary ones
    Align {
        primary: PathBuf,
        secondary: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum FragmentCmd {
    List,
    Emit { name: String },
}

#[derive(Subcommand)]
enum StressCmd {
    /// Nuclear stress values for a bracketed tree
    Nsr { tree: String },
    /// Compound stress values for a bracketed tree
    Csr { tree: String },
    /// Tree shape from stress values
    Decode {
        values: Vec<u32>,
        #[arg(long, value_enum, default_value = "nsr")]
        rule: Rule,
        /// Space-separated leaf words
        #[arg(long)]
        labels: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Rule {
    Nsr,
    Csr,
}

#[derive(Subcommand)]
enum ToneCmd {
    /// Sandhi through the transducer
    Tem { tones: String },
    /// Sandhi through the rewrite rules
    Rules { tones: String },
    /// Restore floating lows and apply sandhi
    Expand { tones: String },
    /// F0 targets for allotones
    Synth {
        allotones: String,
        #[command(flatten)]
        params: SynthArgs,
    },
}

#[derive(Args)]
struct SynthArgs {
    #[arg(long, default_value_t = 200.0)]
    h0: f64,
    #[arg(long, default_value_t = 150.0)]
    l0: f64,
    #[arg(long, default_value_t = 0.9)]
    step: f64,
}

#[derive(Args)]
struct TrackArgs {
    /// CSV with header time_s,f0_hz
    track: PathBuf,
    #[arg(long, default_value_t = 5)]
    window: usize,
    /// Keep Hz instead of dividing by the median
    #[arg(long)]
    raw_hz: bool,
}

impl TrackArgs {
    fn params(&self) -> PreprocessParams {
        PreprocessParams {
            window: self.window,
            normalize: !self.raw_hz,
        }
    }
}

#[derive(Subcommand)]
enum ProsodyCmd {
    /// Full report over one track
    Analyze {
        #[command(flatten)]
        track: TrackArgs,
        #[arg(long, default_value_t = prosody::DEFAULT_MIN_PAUSE)]
        min_pause: f64,
        #[arg(long, default_value_t = 1.15)]
        min_jump: f64,
        #[arg(long, default_value_t = prosody::DEFAULT_MAJOR_JUMP)]
        major_jump: f64,
        /// Two spans `a:b,c:d` in seconds whose levels form a chant
        #[arg(long)]
        chant: Option<String>,
        /// Accents as `time:label,...`
        #[arg(long)]
        accents: Option<String>,
        /// Write one CSV per report section here
        #[arg(long)]
        export_dir: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Interval between two levels in Hz
    Chant {
        level1: f64,
        level2: f64,
        #[arg(long, default_value_t = prosody::DEFAULT_CHANT_TOLERANCE)]
        tolerance: f64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Least-squares polynomial over the preprocessed track
    Fit {
        #[command(flatten)]
        track: TrackArgs,
        #[arg(long, default_value_t = 1)]
        degree: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Silent intervals and interpausal units of the raw track
    Pauses {
        track: PathBuf,
        #[arg(long, default_value_t = prosody::DEFAULT_MIN_PAUSE)]
        min_pause: f64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

/// A failed command: machine-readable code plus message, and exit status.
struct Failure {
    code: &'static str,
    message: String,
    usage: bool,
}

impl Failure {
    fn domain(code: &'static str, message: impl Display) -> Self {
        Failure {
            code,
            message: message.to_string(),
            usage: false,
        }
    }

    fn usage(message: impl Display) -> Self {
        Failure {
            code: "USAGE",
            message: message.to_string(),
            usage: true,
        }
    }
}

macro_rules! coded {
    ($($t:ty),*) => {
        $(impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::domain(e.code(), e)
            }
        })*
    };
}

coded!(FsaError, RankError, StressError, ToneError, FragmentError, ProsodyError);

type Outcome = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::domain("IO", format!("{}: {e}", path.display())))
}

fn extension(path: &Path) -> &str {
    path.extension().and_then(|e| e.to_str()).unwrap_or("")
}

fn symbols(words: &[String]) -> Result<Vec<Symbol>, Failure> {
    words
        .iter()
        .flat_map(|w| w.split_whitespace())
        .map(|w| Symbol::new(w).map_err(Failure::from))
        .collect()
}

fn join(s: &[Symbol]) -> String {
    if s.is_empty() {
        return text::EPSILON.to_string();
    }
    s.iter().map(Symbol::as_str).collect::<Vec<_>>().join(" ")
}

fn json(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn lines<I: IntoIterator<Item = String>>(items: I) -> String {
    items.into_iter().map(|l| l + "\n").collect()
}

enum Machine {
    Automaton(FiniteAutomaton),
    Register(RegisterAutomaton),
    Transducer(Transducer),
    Grammar(GrammarFile),
}

/// Picks the format from the extension: `.fsa`, `.rfsa`, `.fst` or
/// `.grammar`.
fn load(path: &Path) -> Result<Machine, Failure> {
    let content = read(path)?;
    Ok(match extension(path) {
        "fsa" => Machine::Automaton(text::parse_automaton(&content)?),
        "rfsa" => Machine::Register(text::parse_register_automaton(&content)?),
        "fst" => Machine::Transducer(text::parse_transducer(&content)?),
        "grammar" => Machine::Grammar(text::parse_grammar_file(&content)?),
        other => {
            return Err(Failure::usage(format!(
                "{}: unknown extension {other:?}; use .fsa, .rfsa, .fst or .grammar",
                path.display()
            )))
        }
    })
}

fn load_acceptor(path: &Path) -> Result<FiniteAutomaton, Failure> {
    match load(path)? {
        Machine::Automaton(a) => Ok(a),
        Machine::Register(r) => Ok(r.expand()),
        Machine::Grammar(GrammarFile::Regular(g)) => Ok(g.to_automaton()),
        Machine::Grammar(GrammarFile::ContextFree(_)) => Err(Failure::domain(
            "NOT_REGULAR",
            format!("{}: context-free grammars have no automaton", path.display()),
        )),
        Machine::Transducer(_) => Err(Failure::domain(
            "NOT_AN_ACCEPTOR",
            format!("{}: expected an acceptor, found a transducer", path.display()),
        )),
    }
}

fn load_transducer(path: &Path) -> Result<Transducer, Failure> {
    match load(path)? {
        Machine::Transducer(t) => Ok(t),
        _ => Err(Failure::usage(format!("{}: expected a .fst transducer", path.display()))),
    }
}

fn load_regular(path: &Path) -> Result<RegularGrammar, Failure> {
    match load(path)? {
        Machine::Grammar(GrammarFile::Regular(g)) => Ok(g),
        _ => Err(Failure::domain(
            "NOT_REGULAR",
            format!("{}: expected a regular grammar", path.display()),
        )),
    }
}

fn grammar(cmd: GrammarCmd) -> Outcome {
    match cmd {
        GrammarCmd::Check { file } => match load(&file)? {
            Machine::Grammar(GrammarFile::Regular(g)) => {
                g.validate()?;
                Ok(format!(
                    "ok: regular grammar, {} orientation, {} rules, {} nonterminals, {} terminals\n",
                    g.orientation(),
                    g.rules().len(),
                    g.nonterminals().len(),
                    g.terminals().len()
                ))
            }
            Machine::Grammar(GrammarFile::ContextFree(g)) => Ok(format!(
                "ok: context-free grammar, {} rules, {} nonterminals, {} terminals\n",
                g.rules().len(),
                g.nonterminals().len(),
                g.terminals().len()
            )),
            _ => Err(Failure::usage("expected a .grammar file")),
        },
        GrammarCmd::ToFsa {
            file,
            determinize,
            minimize,
        } => {
            let mut fsa = load_regular(&file)?.to_automaton();
            if determinize || minimize {
                fsa = fsa.determinize();
            }
            if minimize {
                fsa = fsa.minimize()?;
            }
            Ok(text::write_automaton(&fsa))
        }
        GrammarCmd::Convert { file, to } => match load(&file)? {
            Machine::Grammar(GrammarFile::Regular(g)) => {
                let target = to.map_or(g.orientation().opposite(), Orientation::from);
                let out = if target == g.orientation() {
                    g
                } else {
                    g.convert_orientation()?
                };
                Ok(text::write_grammar(&out))
            }
            Machine::Automaton(a) => {
                let target = to.map_or(Orientation::Right, Orientation::from);
                Ok(text::write_grammar(&RegularGrammar::from_automaton(&a, target)?))
            }
            _ => Err(Failure::usage("expected a regular .grammar or an .fsa file")),
        },
        GrammarCmd::Classify { file, format } => {
            let cfg = match load(&file)? {
                Machine::Grammar(GrammarFile::Regular(g)) => g.to_cfg(),
                Machine::Grammar(GrammarFile::ContextFree(g)) => g,
                _ => return Err(Failure::usage("expected a .grammar file")),
            };
            let c = cfg.classify();
            Ok(match format {
                Format::Json => json(&c),
                Format::Text => format!(
                    "{} cnf={} finite_language={} mixed_linear={}\n",
                    c.recursion_type, c.cnf, c.finite_language, c.mixed_linear
                ),
            })
        }
    }
}

fn fsa(cmd: FsaCmd) -> Outcome {
    match cmd {
        FsaCmd::Run { file, input } => {
            let input = symbols(&input)?;
            if let Machine::Register(ra) = load(&file)? {
                let verdict = if ra.accepts(&input) { "ACCEPT" } else { "REJECT" };
                return Ok(format!("{verdict}\n"));
            }
            let r = load_acceptor(&file)?.run(&input)?;
            let verdict = if r.accepted { "ACCEPT" } else { "REJECT" };
            Ok(format!("{verdict} steps={} max_frontier={}\n", r.steps, r.max_frontier))
        }
        FsaCmd::Enumerate { file, max_len } => {
            let strings = match load(&file)? {
                Machine::Register(ra) => ra.enumerate_language(max_len),
                _ => load_acceptor(&file)?.enumerate_language(max_len),
            };
            Ok(lines(strings.iter().map(|s| join(s))))
        }
        FsaCmd::Count { file } => {
            let size: LanguageSize = load_acceptor(&file)?.count_language();
            Ok(format!("{size}\n"))
        }
        FsaCmd::Determinize { file } => Ok(text::write_automaton(&load_acceptor(&file)?.determinize())),
        FsaCmd::Minimize { file } => {
            let fsa = load_acceptor(&file)?;
            let dfa = if fsa.is_deterministic() { fsa } else { fsa.determinize() };
            Ok(text::write_automaton(&dfa.minimize()?))
        }
        FsaCmd::Compose { first, second } => {
            let composed = load_transducer(&first)?.compose(&load_transducer(&second)?)?;
            Ok(text::write_transducer(&composed))
        }
        FsaCmd::ExpandRegisters { file } => match load(&file)? {
            Machine::Register(ra) => Ok(text::write_automaton(&ra.expand())),
            _ => Err(Failure::usage("expected a .rfsa register automaton")),
        },
        FsaCmd::Transduce { file, input } => {
            let outputs = load_transducer(&file)?.transduce(&symbols(&input)?)?;
            Ok(lines(outputs.iter().map(|s| join(s))))
        }
        FsaCmd::Regex { expr } => Ok(text::write_automaton(&regex_compile(&RegexTree::parse(&expr)?))),
    }
}

fn load_streams(path: &Path) -> Result<rank::Stream, Failure> {
    let mut streams = rank::parse_streams(&read(path)?)?;
    match streams.len() {
        1 => Ok(streams.remove(0)),
        n => Err(Failure::domain(
            "INVALID_STREAM",
            format!("{}: expected one rank, found {n}", path.display()),
        )),
    }
}

fn rank_cmd(cmd: RankCmd) -> Outcome {
    match cmd {
        RankCmd::Validate { manifest, format } => {
            let report = rank::load_manifest(&manifest)?.validate_layering();
            let out = match format {
                Format::Json => json(&report),
                Format::Text => {
                    let mut out = String::from(if report.ok { "ok\n" } else { "violations\n" });
                    for v in &report.violations {
                        out += &format!("violation\t{}\t{}\t{}\n", v.rank, v.symbol, v.reason);
                    }
                    for w in &report.warnings {
                        out += &format!("warning\t{w}\n");
                    }
                    out
                }
            };
            if report.ok {
                Ok(out)
            } else {
                print!("{out}");
                Err(Failure::domain(
                    "LAYERING_VIOLATION",
                    format!("{} layering violations", report.violations.len()),
                ))
            }
        }
        RankCmd::Process {
            manifest,
            input,
            format,
        } => {
            let arch = rank::load_manifest(&manifest)?;
            let result = rank::process_incremental(&arch, &symbols(&input)?);
            for d in &result.diagnostics {
                eprintln!(
                    "warning[GAP]: {} rank, position {}, state {}, symbol {}",
                    d.rank,
                    d.position,
                    d.state,
                    d.symbol.as_deref().unwrap_or("<end>")
                );
            }
            Ok(match format {
                Format::Json => json(&result),
                Format::Text => rank::write_streams(result.streams.values()),
            })
        }
        RankCmd::Align {
            primary,
            secondary,
            format,
        } => {
            let aligned = rank::multilinear_align(&load_streams(&primary)?, &load_streams(&secondary)?)?;
            Ok(match format {
                Format::Json => json(&aligned),
                Format::Text => lines(aligned.iter().map(|a| {
                    let attached: Vec<&str> = a.secondary.iter().map(|t| t.symbol.as_str()).collect();
                    format!(
                        "{}\t{}\t{}\t{}",
                        a.primary.symbol,
                        a.primary.start,
                        a.primary.end,
                        attached.join(" ")
                    )
                })),
            })
        }
    }
}

fn fragment(cmd: FragmentCmd) -> Outcome {
    match cmd {
        FragmentCmd::List => Ok(lines(
            fragments::catalogue()
                .iter()
                .map(|e| format!("{}\t{}\t{}", e.name, e.file, e.description)),
        )),
        FragmentCmd::Emit { name } => Ok(fragments::emit(&name)?),
    }
}

fn stress_cmd(cmd: StressCmd) -> Outcome {
    let annotate = |tree: &str, encode: fn(&SyntaxTree) -> stress::StressCoding| -> Outcome {
        let t = SyntaxTree::parse(tree)?;
        Ok(format!("{}\n", encode(&t).annotate(&t.leaves())))
    };
    match cmd {
        StressCmd::Nsr { tree } => annotate(&tree, stress::nsr_encode),
        StressCmd::Csr { tree } => annotate(&tree, stress::csr_encode),
        StressCmd::Decode { values, rule, labels } => {
            let labels = labels.map(|l| symbols(&[l])).transpose()?;
            let decode = match rule {
                Rule::Nsr => stress::nsr_decode,
                Rule::Csr => stress::csr_decode,
            };
            Ok(format!("{}\n", decode(&values, labels.as_deref())?))
        }
    }
}

fn tone_cmd(cmd: ToneCmd) -> Outcome {
    match cmd {
        ToneCmd::Tem { tones } => Ok(format!(
            "{}\n",
            tone::format_allotones(&tone::tem_apply(&tone::parse_tones(&tones)?)?)
        )),
        ToneCmd::Rules { tones } => Ok(format!(
            "{}\n",
            tone::format_allotones(&tone::tem_rules_apply(&tone::parse_tones(&tones)?)?)
        )),
        ToneCmd::Expand { tones } => {
            let e = tone::expand_floating(&tone::parse_tones(&tones)?)?;
            let shown: Vec<String> = e
                .tones
                .iter()
                .zip(&e.silent)
                .map(|(t, &s)| if s { format!("({t})") } else { t.to_string() })
                .collect();
            let allotones = tone::tem_apply(&e.tones)?;
            Ok(format!("{}\n{}\n", shown.join(" "), tone::format_allotones(&allotones)))
        }
        ToneCmd::Synth { allotones, params } => {
            let targets = tone::synthesize_targets(
                &tone::parse_allotones(&allotones)?,
                SynthesisParams {
                    h0: params.h0,
                    l0: params.l0,
                    step: params.step,
                },
            )?;
            let shown: Vec<String> = targets.iter().map(|t| format!("{t:.1}")).collect();
            Ok(format!("{}\n", shown.join(" ")))
        }
    }
}

fn load_track(path: &Path) -> Result<PitchTrack, Failure> {
    Ok(PitchTrack::from_csv(&read(path)?, &path.display().to_string())?)
}

fn parse_pairs<T>(
    text: &str,
    what: &str,
    mut item: impl FnMut(&str, &str) -> Option<T>,
) -> Result<Vec<T>, Failure> {
    text.split(',')
        .map(|part| {
            part.split_once(':')
                .and_then(|(a, b)| item(a.trim(), b.trim()))
                .ok_or_else(|| Failure::usage(format!("bad {what} {part:?}")))
        })
        .collect()
}

fn prosody_cmd(cmd: ProsodyCmd) -> Outcome {
    match cmd {
        ProsodyCmd::Analyze {
            track,
            min_pause,
            min_jump,
            major_jump,
            chant,
            accents,
            export_dir,
            format,
        } => {
            let chant = match chant {
                Some(c) => {
                    let spans = parse_pairs(&c, "span", |a, b| {
                        Some(Span {
                            start: a.parse().ok()?,
                            end: b.parse().ok()?,
                        })
                    })?;
                    let [a, b] = spans[..] else {
                        return Err(Failure::usage("--chant takes exactly two spans"));
                    };
                    Some((a, b))
                }
                None => None,
            };
            let accents = match accents {
                Some(a) => parse_pairs(&a, "accent", |t, l| Some((t.parse().ok()?, l.to_string())))?,
                None => Vec::new(),
            };
            let options = AnalyzeOptions {
                preprocess: track.params(),
                min_pause,
                resets: ResetParams {
                    min_jump,
                    ..ResetParams::default()
                },
                major_jump,
                chant,
                accents,
                ..AnalyzeOptions::default()
            };
            let report = prosody::analyze(&load_track(&track.track)?, &options)?;
            if let Some(dir) = export_dir {
                std::fs::create_dir_all(&dir)
                    .map_err(|e| Failure::domain("IO", format!("{}: {e}", dir.display())))?;
                for (name, csv) in report.csv_exports() {
                    let path = dir.join(format!("{name}.csv"));
                    std::fs::write(&path, csv)
                        .map_err(|e| Failure::domain("IO", format!("{}: {e}", path.display())))?;
                }
            }
            Ok(match format {
                Format::Json => json(&report),
                Format::Text => analysis_text(&report),
            })
        }
        ProsodyCmd::Chant {
            level1,
            level2,
            tolerance,
            format,
        } => {
            let m = prosody::chant_measure(level1, level2, tolerance)?;
            Ok(match format {
                Format::Json => json(&m),
                Format::Text => format!("{:.3} {}\n", m.ratio, m.classification),
            })
        }
        ProsodyCmd::Fit { track, degree, format } => {
            let contour = prosody::preprocess(&load_track(&track.track)?, track.params())?;
            let fit = prosody::fit_polynomial(&contour, degree)?;
            Ok(match format {
                Format::Json => json(&fit),
                Format::Text => {
                    let coef: Vec<String> = fit.coefficients.iter().map(|c| c.to_string()).collect();
                    format!("degree={} coefficients={} rmse={}\n", fit.degree, coef.join(","), fit.rmse)
                }
            })
        }
        ProsodyCmd::Pauses {
            track,
            min_pause,
            format,
        } => {
            let seg = prosody::detect_pauses(&load_track(&track)?, min_pause);
            Ok(match format {
                Format::Json => json(&seg),
                Format::Text => {
                    let mut rows: Vec<(&str, Span)> = seg.pauses.iter().map(|s| ("pause", *s)).collect();
                    rows.extend(seg.units.iter().map(|s| ("unit", *s)));
                    rows.sort_by(|a, b| a.1.start.total_cmp(&b.1.start));
                    lines(rows.iter().map(|(k, s)| format!("{k}\t{:.3}\t{:.3}", s.start, s.end)))
                }
            })
        }
    }
}

fn analysis_text(r: &prosody::AnalysisReport) -> String {
    let mut out = format!(
        "samples {} -> {}, voiced median {:.2} Hz\n",
        r.preprocess.samples_in, r.preprocess.samples_out, r.preprocess.voiced_median_hz
    );
    out += &format!("slope {:.6} per s, rmse {:.6}\n", r.fits.linear.slope(), r.fits.linear.rmse);
    out += &format!("pauses {}, units {}\n", r.pauses.pauses.len(), r.pauses.units.len());
    for b in &r.resets.boundaries {
        let reset = r.resets.events.iter().any(|e| e.unit_index == b.unit_index);
        let m = b.magnitude.map_or("-".to_string(), |m| format!("{m:.3}"));
        out += &format!("boundary {} at {:.3} s: {m}{}\n", b.unit_index, b.time, if reset { " reset" } else { "" });
    }
    for (i, p) in r.paratones.iter().enumerate() {
        let peak = p.onset_peak_hz.map_or("-".to_string(), |v| format!("{v:.1}"));
        out += &format!("paratone {} {:.3}-{:.3} s, onset peak {peak}\n", i + 1, p.span.start, p.span.end);
    }
    if let Some(c) = &r.chant {
        out += &format!("chant {:.3} {}\n", c.ratio, c.classification);
    }
    for a in &r.accents {
        match a {
            prosody::AccentRow::Ok(a) => {
                out += &format!("accent {} at {:.3}: {} {:+.4}\n", a.label, a.position, a.polarity, a.excursion)
            }
            prosody::AccentRow::Error { position, label, error } => {
                out += &format!("accent {label} at {position:.3}: error {error}\n")
            }
        }
    }
    out
}

fn dispatch(command: Command) -> Outcome {
    match command {
        Command::Grammar(c) => grammar(c),
        Command::Fsa(c) => fsa(c),
        Command::Rank(c) => rank_cmd(c),
        Command::Fragment(c) => fragment(c),
        Command::Stress(c) => stress_cmd(c),
        Command::Tone(c) => tone_cmd(c),
        Command::Prosody(c) => prosody_cmd(c),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match dispatch(cli.command) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error[{}]: {}", f.code, f.message);
            ExitCode::from(if f.usage { 2 } else { 1 })
        }
    }
}
