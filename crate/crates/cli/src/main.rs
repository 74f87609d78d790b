use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use paramword::degrees::{brd_upper_bound, describe, enumerate_canonical_types_with, CensusConfig, Strategy};
use paramword::encoding::{encode_poset, encode_triangle_free, graph_edge, order_leq, WordKind};
use paramword::gr::{append_results, minimal_n, sample_falsify, verify_gr, GrParams, Verdict};
use paramword::grn::{copy_word_graph, copy_word_poset, embed_graph_grn, embed_poset_grn};
use paramword::interpret::{
    embed_triangle_free_into_gp, metric_from_chains, superpose, ultrametric_from_tuples, GrowablePoset,
};
use paramword::structure::{parse_structure, parse_structure_with_extras, write_structure};
use paramword::{
    embedding_type, minimal_envelope, minimal_envelopes_exhaustive, random_word, substitute, tau, validate, Alphabet,
    Kind, ParameterWord, Space, Structure,
};
use paramword_cli::{render_sections, render_word_table, Suite};

/// Parameter words, envelopes, embedding types and word-encoded structures.
#[derive(Parser)]
#[command(name = "paramword", version)]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0x5eed)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate, substitute into, or enumerate parameter words.
    #[command(subcommand)]
    Word(WordCmd),
    /// Minimal envelope of a set of words, with its dimension and embedding type.
    Envelope(EnvelopeArgs),
    /// Canonical embedding type of a set of words.
    Type(SetArgs),
    /// Word encoding of a graph or poset file, one literal per vertex.
    Encode { kind: KindArg, file: PathBuf },
    /// Adjacency of two graph words over `0`.
    Edge { u: String, v: String },
    /// Order of two words over `LXR`, with the witness index.
    Leq { w: String, w2: String },
    /// Finite Ramsey embeddings and copy words.
    #[command(subcommand)]
    Grn(GrnCmd),
    /// Canonical-type census, or the bound for one structure.
    Degrees(DegreesArgs),
    /// Interpretations inside partial orders.
    #[command(subcommand)]
    Interpret(InterpretCmd),
    /// Exhaustive finite Graham-Rothschild checks.
    #[command(subcommand)]
    Gr(GrCmd),
    /// Run a verification suite (or `all`).
    Suite {
        name: String,
        /// Show elapsed time per check.
        #[arg(long)]
        timings: bool,
    },
    /// Monospace word tables.
    #[command(subcommand)]
    Render(RenderCmd),
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Graph,
    Poset,
}

impl From<KindArg> for WordKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Graph => WordKind::Graph,
            KindArg::Poset => WordKind::Poset,
        }
    }
}

#[derive(Args)]
struct SetArgs {
    /// Alphabet symbols as one string.
    #[arg(long, default_value = "0")]
    alphabet: String,
    /// Word literals; `@empty` is the empty word.
    #[arg(required = true)]
    words: Vec<String>,
}

#[derive(Args)]
struct EnvelopeArgs {
    #[arg(long, default_value = "0")]
    alphabet: String,
    /// Expected parameter count of every word; checked when given.
    #[arg(long)]
    params: Option<usize>,
    /// Also list every envelope with the least possible number of parameters.
    #[arg(long)]
    exhaustive: bool,
    #[arg(required = true)]
    words: Vec<String>,
}

#[derive(Subcommand)]
enum WordCmd {
    /// Parse a literal and print it with its parameter count.
    Validate {
        #[arg(long, default_value = "0")]
        alphabet: String,
        word: String,
    },
    /// W(U).
    Subst {
        #[arg(long, default_value = "0")]
        alphabet: String,
        w: String,
        u: String,
    },
    /// All words of length at most N with exactly K parameters.
    Enumerate {
        #[arg(long, default_value = "0")]
        alphabet: String,
        #[arg(long = "len")]
        n: usize,
        #[arg(long = "params")]
        k: usize,
        /// Only words of length exactly N.
        #[arg(long)]
        exact: bool,
    },
    /// A seeded random word.
    Random {
        #[arg(long, default_value = "0")]
        alphabet: String,
        #[arg(long = "len")]
        n: usize,
        #[arg(long = "params")]
        k: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
}

#[derive(Subcommand)]
enum GrnCmd {
    /// φ for a triangle-free graph.
    Graph { file: PathBuf },
    /// φ for a poset whose vertex order is a linear extension.
    Poset { file: PathBuf },
    /// Copy word W with W(φ'(A)) = φ(copy of A).
    Copyword {
        b: PathBuf,
        a: PathBuf,
        /// Pairs `a:b` sending vertex a of A to vertex b of B.
        #[arg(long)]
        map: String,
        /// Print the word table under the verdict.
        #[arg(long)]
        table: bool,
    },
}

#[derive(Args)]
#[command(args_conflicts_with_subcommands = true)]
struct DegreesArgs {
    #[arg(long, value_enum, default_value = "graph")]
    kind: KindArg,
    #[arg(long, default_value_t = 2)]
    ell: usize,
    #[arg(long, value_enum, default_value = "slices")]
    strategy: StrategyArg,
    /// Representative types printed per class; 0 prints all.
    #[arg(long, default_value_t = 3)]
    show: usize,
    #[command(subcommand)]
    bound: Option<DegreesCmd>,
}

#[derive(Subcommand)]
enum DegreesCmd {
    /// Upper bound for the structure in a file (graph or poset).
    Bound { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Slices,
    Filtered,
}

#[derive(Subcommand)]
enum InterpretCmd {
    /// Grow a poset realizing a triangle-free graph on triples.
    Gp { file: PathBuf },
    /// Metric on chains: a poset file with `chain v0 v1 ...` lines.
    Metric {
        #[arg(long)]
        d: usize,
        file: PathBuf,
    },
    /// Ultrametric on tuples: one whitespace-separated tuple per line.
    Ultra {
        #[arg(long)]
        d: usize,
        file: PathBuf,
    },
    /// Product of structures in disjoint languages.
    Superpose {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
}

#[derive(Args, Clone, Copy)]
struct GrArgs {
    #[arg(long)]
    sigma: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: usize,
}

impl From<GrArgs> for GrParams {
    fn from(a: GrArgs) -> Self {
        GrParams { sigma: a.sigma, k: a.k, n: a.n, r: a.r }
    }
}

#[derive(Subcommand)]
enum GrCmd {
    /// Decide the statement at one N.
    Verify {
        #[command(flatten)]
        params: GrArgs,
        #[arg(long = "N")]
        big_n: usize,
        /// Append the outcome to this results ledger.
        #[arg(long)]
        results: Option<PathBuf>,
    },
    /// Least N for which the statement holds.
    Minimal {
        #[command(flatten)]
        params: GrArgs,
        #[arg(long = "max-N", default_value_t = 4)]
        max_n: usize,
        #[arg(long)]
        results: Option<PathBuf>,
    },
    /// Random colourings searched for a counterexample; not exhaustive.
    Falsify {
        #[command(flatten)]
        params: GrArgs,
        #[arg(long = "N")]
        big_n: usize,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
    },
}

#[derive(Subcommand)]
enum RenderCmd {
    /// Table of the given words, labelled by position.
    Words(SetArgs),
    /// Table of φ for a graph or poset file.
    Encoding { kind: KindArg, file: PathBuf },
    /// φ(B) rows, φ'(A) rows and the copy word W.
    Copyword {
        b: PathBuf,
        a: PathBuf,
        #[arg(long)]
        map: String,
    },
}

fn alphabet(decl: &str) -> Result<Alphabet> {
    Alphabet::parse(decl).with_context(|| format!("alphabet {decl:?}"))
}

fn word(lit: &str, alphabet: &Alphabet) -> Result<ParameterWord> {
    validate(lit, alphabet).with_context(|| format!("word {lit:?}"))
}

fn words(lits: &[String], alphabet: &Alphabet) -> Result<Vec<ParameterWord>> {
    lits.iter().map(|l| word(l, alphabet)).collect()
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn structure(path: &Path) -> Result<Structure> {
    parse_structure(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn is_poset(s: &Structure) -> bool {
    matches!(s.kind(), Kind::Poset | Kind::PosetLinext)
}

/// `0:2,1:4` as the list of B-vertices indexed by A-vertex.
fn parse_map(map: &str, a_size: usize) -> Result<Vec<usize>> {
    let mut copy = vec![None; a_size];
    for pair in map.split(',').filter(|p| !p.is_empty()) {
        let (a, b) = pair.split_once(':').with_context(|| format!("map entry {pair:?} is not `a:b`"))?;
        let a: usize = a.trim().parse().with_context(|| format!("map entry {pair:?}"))?;
        let b: usize = b.trim().parse().with_context(|| format!("map entry {pair:?}"))?;
        if a >= a_size {
            bail!("map entry {pair:?}: A has {a_size} vertices");
        }
        copy[a] = Some(b);
    }
    copy.into_iter().enumerate().map(|(i, b)| b.with_context(|| format!("vertex {i} of A is not mapped"))).collect()
}

struct CopyCase {
    kind: WordKind,
    phi_b: Vec<ParameterWord>,
    phi_a: Vec<ParameterWord>,
    result: paramword::Result<paramword::grn::CopyWord>,
}

fn copy_case(b_path: &Path, a_path: &Path, map: &str) -> Result<CopyCase> {
    let b = structure(b_path)?;
    let a = structure(a_path)?;
    let copy = parse_map(map, a.size())?;
    if copy.iter().any(|&v| v >= b.size()) {
        bail!("map sends a vertex outside B (size {})", b.size());
    }
    let (kind, phi_b, phi_a, result) = if is_poset(&b) {
        (WordKind::Poset, embed_poset_grn(&b)?.words, embed_poset_grn(&a)?.words, copy_word_poset(&b, &a, &copy))
    } else {
        (WordKind::Graph, embed_graph_grn(&b)?.words, embed_graph_grn(&a)?.words, copy_word_graph(&b, &a, &copy))
    };
    Ok(CopyCase { kind, phi_b, phi_a, result })
}

fn copy_table(case: &CopyCase, w: Option<&ParameterWord>) -> String {
    let label = |p: &str, i: usize| format!("{p}{i}");
    let b_rows = case.phi_b.iter().enumerate().map(|(i, u)| (label("B", i), u.clone())).collect();
    let a_rows = case.phi_a.iter().enumerate().map(|(i, u)| (label("A", i), u.clone())).collect();
    let mut sections = vec![("phi(B)".to_string(), b_rows), ("phi'(A)".to_string(), a_rows)];
    if let Some(w) = w {
        sections.push(("W".to_string(), vec![("W".to_string(), w.clone())]));
    }
    render_sections(&sections, &case.kind.alphabet())
}

fn print_words(ws: &[ParameterWord], alphabet: &Alphabet) {
    for w in ws {
        println!("{}", w.render_token(alphabet));
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Word(cmd) => word_cmd(cmd, cli.seed)?,
        Command::Envelope(args) => {
            let sigma = alphabet(&args.alphabet)?;
            let set = words(&args.words, &sigma)?;
            if let Some(k) = args.params {
                if let Some(w) = set.iter().find(|w| w.params() != k) {
                    bail!("{} has {} parameters, expected {k}", w.render_token(&sigma), w.params());
                }
            }
            let env = minimal_envelope(&set);
            let ty = embedding_type(&env, &set)?;
            println!("envelope {}", env.word().render_token(&sigma));
            println!("dim {}", env.dim());
            println!("type {}", ty.elements().iter().map(|u| u.render_token(&sigma)).join(" "));
            if args.exhaustive {
                let all = minimal_envelopes_exhaustive(&set, sigma.len())?;
                println!("minimal dim {}", all.first().map_or(0, |e| e.dim()));
                for e in all {
                    println!("minimal {}", e.word().render_token(&sigma));
                }
            }
        }
        Command::Type(args) => {
            let sigma = alphabet(&args.alphabet)?;
            let ty = tau(&words(&args.words, &sigma)?);
            println!("dim {}", ty.dim());
            print_words(ty.elements(), &sigma);
        }
        Command::Encode { kind, file } => {
            let s = structure(&file)?;
            let kind = WordKind::from(kind);
            let ws = match kind {
                WordKind::Graph => encode_triangle_free(&s)?.words,
                WordKind::Poset => encode_poset(&s)?,
            };
            print_words(&ws, &kind.alphabet());
        }
        Command::Edge { u, v } => {
            let zero = Alphabet::zero();
            println!("{}", graph_edge(&word(&u, &zero)?, &word(&v, &zero)?));
        }
        Command::Leq { w, w2 } => {
            let lxr = Alphabet::lxr();
            let c = order_leq(&word(&w, &lxr)?, &word(&w2, &lxr)?);
            match c.witness {
                Some(i) => println!("{} witness {i}", c.holds),
                None => println!("{}", c.holds),
            }
        }
        Command::Grn(cmd) => return grn_cmd(cmd),
        Command::Degrees(args) => degrees_cmd(args)?,
        Command::Interpret(cmd) => interpret_cmd(cmd)?,
        Command::Gr(cmd) => return gr_cmd(cmd, cli.seed),
        Command::Suite { name, timings } => {
            let suites: Vec<Suite> = if name == "all" { Suite::ALL.to_vec() } else { vec![name.parse::<Suite>()?] };
            let mut ok = true;
            for s in suites {
                let report = s.run(cli.seed);
                print!("{}", report.render(timings));
                ok &= report.passed();
            }
            return Ok(ok);
        }
        Command::Render(cmd) => match cmd {
            RenderCmd::Words(args) => {
                let sigma = alphabet(&args.alphabet)?;
                let rows =
                    words(&args.words, &sigma)?.into_iter().enumerate().map(|(i, w)| (i.to_string(), w)).collect_vec();
                print!("{}", render_word_table(&rows, &sigma));
            }
            RenderCmd::Encoding { kind, file } => {
                let s = structure(&file)?;
                let kind = WordKind::from(kind);
                let ws = match kind {
                    WordKind::Graph => encode_triangle_free(&s)?.words,
                    WordKind::Poset => encode_poset(&s)?,
                };
                let rows = ws.into_iter().enumerate().map(|(i, w)| (i.to_string(), w)).collect_vec();
                print!("{}", render_word_table(&rows, &kind.alphabet()));
            }
            RenderCmd::Copyword { b, a, map } => {
                let case = copy_case(&b, &a, &map)?;
                print!("{}", copy_table(&case, case.result.as_ref().ok().map(|c| &c.word)));
                if let Err(e) = &case.result {
                    println!("no copy word: {e}");
                    return Ok(false);
                }
            }
        },
    }
    Ok(true)
}

fn word_cmd(cmd: WordCmd, seed: u64) -> Result<()> {
    match cmd {
        WordCmd::Validate { alphabet: a, word: w } => {
            let sigma = alphabet(&a)?;
            let w = word(&w, &sigma)?;
            println!("{} length {} params {}", w.render_token(&sigma), w.len(), w.params());
        }
        WordCmd::Subst { alphabet: a, w, u } => {
            let sigma = alphabet(&a)?;
            println!("{}", substitute(&word(&w, &sigma)?, &word(&u, &sigma)?)?.render_token(&sigma));
        }
        WordCmd::Enumerate { alphabet: a, n, k, exact } => {
            let sigma = alphabet(&a)?;
            let space = if exact { Space::exact(sigma.len(), n, k) } else { Space::at_most(sigma.len(), n, k) };
            for w in space.enumerate()? {
                println!("{}", w.render_token(&sigma));
            }
        }
        WordCmd::Random { alphabet: a, n, k, count } => {
            let sigma = alphabet(&a)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                println!("{}", random_word(&mut rng, sigma.len(), n, k)?.render_token(&sigma));
            }
        }
    }
    Ok(())
}

fn grn_cmd(cmd: GrnCmd) -> Result<bool> {
    let (emb, alphabet) = match cmd {
        GrnCmd::Graph { file } => (embed_graph_grn(&structure(&file)?)?, Alphabet::zero()),
        GrnCmd::Poset { file } => (embed_poset_grn(&structure(&file)?)?, Alphabet::lxr()),
        GrnCmd::Copyword { b, a, map, table } => {
            let case = copy_case(&b, &a, &map)?;
            let ok = match &case.result {
                Ok(cw) => {
                    println!("W {}", cw.word.render_token(&case.kind.alphabet()));
                    println!("k {} d {} d' {}", cw.k, cw.d, cw.d_prime);
                    println!("verified true");
                    true
                }
                Err(e) => {
                    println!("verified false");
                    println!("reason {e}");
                    false
                }
            };
            if table {
                print!("{}", copy_table(&case, case.result.as_ref().ok().map(|c| &c.word)));
            }
            return Ok(ok);
        }
    };
    println!("d {}", emb.d);
    println!("n {}", emb.n);
    print_words(&emb.words, &alphabet);
    Ok(true)
}

fn degrees_cmd(args: DegreesArgs) -> Result<()> {
    if let Some(DegreesCmd::Bound { file }) = args.bound {
        let s = structure(&file)?;
        let kind = if is_poset(&s) { WordKind::Poset } else { WordKind::Graph };
        println!("{}", brd_upper_bound(&s, kind)?);
        return Ok(());
    }
    let kind = WordKind::from(args.kind);
    let strategy = match args.strategy {
        StrategyArg::Slices => Strategy::Slices,
        StrategyArg::Filtered => Strategy::Filtered,
    };
    let config = CensusConfig { strategy, ..CensusConfig::default() };
    let census = enumerate_canonical_types_with(kind, args.ell, &config)?;
    let alphabet = kind.alphabet();
    println!("kind {} ell {} dim-cap {} total {}", kind.name(), args.ell, census.dim_cap, census.total());
    for bucket in census.buckets.values() {
        println!("{} | {}", describe(&bucket.representative), bucket.types.len());
        let shown = if args.show == 0 { bucket.types.len() } else { args.show };
        for t in bucket.types.iter().take(shown) {
            println!("    {}", t.elements().iter().map(|u| u.render_token(&alphabet)).join(" "));
        }
    }
    Ok(())
}

fn interpret_cmd(cmd: InterpretCmd) -> Result<()> {
    match cmd {
        InterpretCmd::Gp { file } => {
            let (gp, triples) = embed_triangle_free_into_gp(&structure(&file)?)?;
            for (v, t) in triples.iter().enumerate() {
                println!("# vertex {v} -> {} {} {}", t[0], t[1], t[2]);
            }
            print!("{}", write_structure(&gp.to_structure()));
        }
        InterpretCmd::Metric { d, file } => {
            let (p, extras) = parse_structure_with_extras(&read(&file)?, &["chain"])?;
            let gp = GrowablePoset::from_structure(&p)?;
            let chains = extras
                .iter()
                .map(|e| {
                    e.tokens[1..]
                        .iter()
                        .map(|t| t.parse::<usize>().with_context(|| format!("line {}: bad vertex {t:?}", e.line)))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            print!("{}", write_structure(&metric_from_chains(&gp, d, &chains)?));
        }
        InterpretCmd::Ultra { d, file } => {
            let tuples = read(&file)?
                .lines()
                .map(|l| l.split('#').next().unwrap_or("").trim())
                .filter(|l| !l.is_empty())
                .map(|l| {
                    l.split_whitespace()
                        .map(|t| t.parse::<i64>().with_context(|| format!("bad entry {t:?}")))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            print!("{}", write_structure(&ultrametric_from_tuples(d, &tuples)?));
        }
        InterpretCmd::Superpose { files } => {
            let comps = files.iter().map(|f| structure(f)).collect::<Result<Vec<_>>>()?;
            print!("{}", write_structure(&superpose(&comps)?.structure));
        }
    }
    Ok(())
}

fn gr_cmd(cmd: GrCmd, seed: u64) -> Result<bool> {
    let record = |results: &Option<PathBuf>, reports: &[paramword::gr::GrReport]| -> Result<()> {
        if let Some(path) = results {
            append_results(path, reports).with_context(|| format!("appending to {}", path.display()))?;
        }
        Ok(())
    };
    match cmd {
        GrCmd::Verify { params, big_n, results } => {
            let report = verify_gr(params.into(), big_n)?;
            println!("{}", report.ledger_line());
            if let Verdict::Fails { counterexample } = &report.verdict {
                let colours = counterexample
                    .domain
                    .iter()
                    .zip(&counterexample.colors)
                    .map(|(w, c)| format!("{}={c}", w.render_token(&alphabet_of(params.sigma))))
                    .join(" ");
                println!("counterexample {colours}");
            }
            record(&results, std::slice::from_ref(&report))?;
            Ok(true)
        }
        GrCmd::Minimal { params, max_n, results } => {
            let p: GrParams = params.into();
            match minimal_n(p, max_n)? {
                Some((n, reports)) => {
                    for r in &reports {
                        println!("{}", r.ledger_line());
                    }
                    println!("minimal N {n}");
                    record(&results, &reports)?;
                    Ok(true)
                }
                None => {
                    println!("no N <= {max_n}");
                    Ok(false)
                }
            }
        }
        GrCmd::Falsify { params, big_n, samples } => {
            match sample_falsify(params.into(), big_n, samples, seed)? {
                Some(c) => {
                    let colours = c
                        .domain
                        .iter()
                        .zip(&c.colors)
                        .map(|(w, x)| format!("{}={x}", w.render_token(&alphabet_of(params.sigma))))
                        .join(" ");
                    println!("counterexample {colours}");
                }
                None => println!("no counterexample in {samples} samples (not exhaustive)"),
            }
            Ok(true)
        }
    }
}

fn alphabet_of(sigma: usize) -> Alphabet {
    Alphabet::new("0123456789".chars().take(sigma.min(10))).expect("digit alphabet")
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
