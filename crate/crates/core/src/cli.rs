//! Command-line surface: `enumerate`, `build`, `verify`, `act`, `orbit`, `seed`, `zeros`.
//!
//! JSON goes to stdout, diagnostics to stderr. Exit codes: 0 ok, 2 verification failed, 3 invalid input.

use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::chains::{
    build_chain, rat_string, sweep, to_painleve, verify_chain, verify_painleve, Report, SolutionJson,
};
use crate::cycles::{
    build_cycle, degeneracies, enumerate_sequences, enumerate_signatures, parse_bracketed, to_standard, ColouredSequence,
};
use crate::hermite::{generalized_hermite, generalized_okamoto, hermite, tau, wronskian_label};
use crate::numerics::{complex_roots, roots_of_int, zeros_csv, zeros_svg, RootSet};
use crate::weyl::{act_word, orbit_report, seed_sequence, seed_solution, verify_group_relations, GroupWord, SeedSignature};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Csv,
    Svg,
}

#[derive(Parser, Debug)]
#[command(name = "painleve", version, about = "Rational solutions of odd-cyclic dressing chains and A2n-Painleve systems")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Worker threads for sweeps; defaults to the available cores.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List signatures, or standard sequences up to a value bound.
    Enumerate {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, default_value_t = 0)]
        bound: i64,
        /// List compositions into odd parts instead of sequences.
        #[arg(long)]
        signatures: bool,
        /// Build and verify every listed sequence.
        #[arg(long)]
        verify: bool,
    },
    /// Build the solution of a coloured sequence.
    Build {
        /// JSON, a file, `-` for stdin, or bracketed text like `4[2],3[1],1[2],2[2],0[0]`.
        #[arg(long)]
        seq: String,
        /// Number of colours for bracketed text.
        #[arg(long)]
        k: Option<u32>,
        /// Include the Painlevé functions `f`.
        #[arg(long)]
        with_f: bool,
    },
    /// Verify a solution document, or the group relations on random sequences.
    #[command(group(ArgGroup::new("what").required(true).args(["solution", "relations"])))]
    Verify {
        /// JSON, a file, or `-` for stdin.
        #[arg(long)]
        solution: Option<String>,
        /// `N K`: check relations for length 2N+1 and K colours.
        #[arg(long, num_args = 2, value_names = ["N", "K"])]
        relations: Option<Vec<u32>>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Apply a group word to a sequence.
    Act {
        /// e.g. `"s0 s1 pi E3^2"`; the rightmost letter acts first.
        #[arg(long)]
        word: String,
        #[arg(long)]
        seq: String,
        #[arg(long)]
        k: Option<u32>,
        /// Also build the solution of the result.
        #[arg(long)]
        build: bool,
    },
    /// Seed and group word reaching a sequence.
    Orbit {
        #[arg(long)]
        seq: String,
        #[arg(long)]
        k: Option<u32>,
    },
    /// Seed sequence and seed solution of a signature.
    Seed {
        /// Odd parts, e.g. `1,3,1`.
        #[arg(long)]
        signature: String,
    },
    /// Complex zeros of a polynomial.
    #[command(group(ArgGroup::new("source").required(true).args(["hermite", "generalized_hermite", "okamoto", "seq"])))]
    Zeros {
        #[arg(long)]
        hermite: Option<usize>,
        #[arg(long, num_args = 2, value_names = ["M", "N"])]
        generalized_hermite: Option<Vec<usize>>,
        #[arg(long, num_args = 2, value_names = ["M", "N"])]
        okamoto: Option<Vec<usize>>,
        /// τ-function of diagram `--index` in the cycle of this sequence.
        #[arg(long)]
        seq: Option<String>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[arg(long, default_value_t = 256)]
        bits: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    VerificationFailed,
    InvalidInput,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::VerificationFailed => 2,
            Status::InvalidInput => 3,
        }
    }
}

/// Status, JSON payload and messages of one command.
#[derive(Clone, Debug, Serialize)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub diagnostics: Vec<String>,
    #[serde(skip)]
    text: String,
    #[serde(skip)]
    csv: Option<String>,
    #[serde(skip)]
    svg: Option<String>,
}

impl CommandResult {
    fn new(payload: Value, text: String) -> Self {
        CommandResult { status: Status::Ok, payload, diagnostics: Vec::new(), text, csv: None, svg: None }
    }

    fn invalid(msg: String) -> Self {
        CommandResult {
            status: Status::InvalidInput,
            payload: Value::Null,
            diagnostics: vec![msg],
            text: String::new(),
            csv: None,
            svg: None,
        }
    }

    fn fail_if(mut self, failed: bool) -> Self {
        if failed {
            self.status = Status::VerificationFailed;
        }
        self
    }

    /// Output document in `format`.
    pub fn render(&self, format: Format) -> Result<String> {
        Ok(match format {
            Format::Json => serde_json::to_string_pretty(&self.payload)? + "\n",
            Format::Text => self.text.clone(),
            Format::Csv => self.csv.clone().ok_or_else(|| anyhow!("csv output is not available for this command"))?,
            Format::Svg => self.svg.clone().ok_or_else(|| anyhow!("svg output is not available for this command"))?,
        })
    }
}

/// Parse arguments, run, print, and map the status to an exit code.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { Status::InvalidInput.code() } else { 0 });
        }
    };
    let res = run(&cli);
    for d in &res.diagnostics {
        eprintln!("{d}");
    }
    if res.status != Status::InvalidInput {
        match res.render(cli.format) {
            Ok(out) => print!("{out}"),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(Status::InvalidInput.code());
            }
        }
    }
    ExitCode::from(res.status.code())
}

/// Run a parsed command; errors become `invalid_input`.
pub fn run(cli: &Cli) -> CommandResult {
    let jobs = cli.jobs.unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1));
    let out = match &cli.command {
        Command::Enumerate { p, k, bound, signatures, verify } => cmd_enumerate(*p, *k, *bound, *signatures, *verify, jobs),
        Command::Build { seq, k, with_f } => read_sequence(seq, *k).and_then(|s| cmd_build(&s, *with_f)),
        Command::Verify { solution: Some(doc), .. } => read_text(doc).and_then(|t| cmd_verify(&t)),
        Command::Verify { relations: Some(nk), trials, .. } => cmd_relations(nk[0] as usize, nk[1], *trials, cli.seed),
        Command::Verify { .. } => Err(anyhow!("nothing to verify")),
        Command::Act { word, seq, k, build } => read_sequence(seq, *k).and_then(|s| cmd_act(word, &s, *build)),
        Command::Orbit { seq, k } => read_sequence(seq, *k).and_then(|s| cmd_orbit(&s)),
        Command::Seed { signature } => cmd_seed(signature),
        Command::Zeros { hermite, generalized_hermite, okamoto, seq, k, index, bits } => {
            zeros_source(*hermite, generalized_hermite.as_deref(), okamoto.as_deref(), seq.as_deref(), *k, *index)
                .and_then(|(label, src)| cmd_zeros(&label, &src, *bits))
        }
    };
    out.unwrap_or_else(|e| CommandResult::invalid(format!("error: {e:#}")))
}

fn read_text(arg: &str) -> Result<String> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        return Ok(s);
    }
    let t = arg.trim_start();
    if !t.starts_with('{') && !t.starts_with('[') && Path::new(arg).is_file() {
        return std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"));
    }
    Ok(arg.to_string())
}

/// A sequence from JSON, a file, stdin or bracketed text.
pub fn read_sequence(arg: &str, k: Option<u32>) -> Result<ColouredSequence> {
    let text = read_text(arg)?;
    let t = text.trim();
    if t.starts_with('{') {
        let s: ColouredSequence = serde_json::from_str(t).context("sequence JSON")?;
        if let Some(k) = k {
            if k != s.k {
                bail!("--k {k} disagrees with k = {} in the JSON", s.k);
            }
        }
        return Ok(s);
    }
    let k = match k {
        Some(k) => k,
        None if t.contains('[') => bail!("bracketed sequences with colours need --k"),
        None => 1,
    };
    Ok(parse_bracketed(t, k)?)
}

fn joined<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn report_json(rep: &Report) -> Value {
    json!({
        "ok": rep.is_ok(),
        "checks": rep.checks.len(),
        "failures": rep.failures().map(|c| json!({"name": c.name, "detail": c.detail})).collect::<Vec<_>>(),
    })
}

fn report_text(title: &str, rep: &Report, out: &mut String) {
    let bad: Vec<_> = rep.failures().collect();
    if bad.is_empty() {
        writeln!(out, "{title}: ok ({} checks)", rep.checks.len()).expect("string write");
    }
    for c in bad {
        writeln!(out, "{title}: FAILED {} {}", c.name, c.detail.clone().unwrap_or_default()).expect("string write");
    }
}

pub fn cmd_enumerate(p: usize, k: Option<u32>, bound: i64, signatures: bool, verify: bool, jobs: usize) -> Result<CommandResult> {
    let sigs = enumerate_signatures(p)?;
    if let Some(k) = k {
        if k % 2 == 0 || k as usize > p {
            bail!("k = {k} must be odd and at most p = {p}");
        }
    }
    let ks: Vec<u32> = match k {
        Some(k) => vec![k],
        None => sigs.iter().map(|s| s.0).collect(),
    };
    if signatures {
        let mut text = String::new();
        let mut list = Vec::new();
        let mut total = 0;
        for (kk, comps) in sigs.iter().filter(|s| ks.contains(&s.0)) {
            total += comps.len();
            let shown: Vec<String> = comps.iter().map(|c| format!("({})", joined(c).replace(' ', ","))).collect();
            writeln!(text, "k={kk} count={}: {}", comps.len(), shown.join(" ")).expect("string write");
            list.push(json!({"k": kk, "count": comps.len(), "compositions": comps}));
        }
        writeln!(text, "total {total}").expect("string write");
        let mut csv = String::from("k,composition\n");
        for (kk, comps) in sigs.iter().filter(|s| ks.contains(&s.0)) {
            for c in comps {
                writeln!(csv, "{kk},{}", joined(c)).expect("string write");
            }
        }
        let mut r = CommandResult::new(json!({"p": p, "signatures": list, "total": total}), text);
        r.csv = Some(csv);
        return Ok(r);
    }
    let mut seqs = Vec::new();
    for &kk in &ks {
        seqs.extend(enumerate_sequences(p, kk, bound)?);
    }
    let mut text = String::new();
    let mut csv = String::from("k,entries\n");
    for s in &seqs {
        writeln!(text, "{s}").expect("string write");
        writeln!(csv, "{},{}", s.k, s.to_string().trim_matches(|c| c == '(' || c == ')').replace(',', " ")).expect("string write");
    }
    writeln!(text, "count {}", seqs.len()).expect("string write");
    let mut payload = json!({"p": p, "k": ks, "bound": bound, "count": seqs.len(), "sequences": seqs});
    let mut failed = false;
    if verify {
        let s = sweep(&seqs, jobs)?;
        failed = !s.is_ok();
        writeln!(text, "verified {} instances, {} failures", s.instances, s.failures.len()).expect("string write");
        for f in &s.failures {
            writeln!(text, "FAILED {}: {}", f.sequence, f.reason).expect("string write");
        }
        payload["verification"] = json!({
            "instances": s.instances,
            "failures": s.failures,
            "threads": s.threads,
        });
    }
    let mut r = CommandResult::new(payload, text);
    r.csv = Some(csv);
    Ok(r.fail_if(failed))
}

pub fn cmd_build(input: &ColouredSequence, with_f: bool) -> Result<CommandResult> {
    input.validate_odd()?;
    let mut diagnostics = Vec::new();
    let seq = if input.is_standard() {
        input.clone()
    } else {
        let (s, steps) = to_standard(input)?;
        diagnostics.push(format!("notice: {input} is not standard; using T^{steps} image {s}"));
        s
    };
    for d in degeneracies(&seq) {
        diagnostics.push(format!("degenerate: {}", serde_json::to_string(&d)?));
    }
    let cycle = build_cycle(&seq)?;
    let chain = build_chain(&cycle)?;
    let painleve = to_painleve(&chain)?;
    let mut rep = verify_chain(&chain);
    if with_f {
        rep.extend(verify_painleve(&painleve));
    }
    let doc = SolutionJson::from_solution(&chain, with_f.then_some(&painleve), Some(&seq));
    let mut text = String::new();
    writeln!(text, "sequence {seq}").expect("string write");
    writeln!(text, "mu {}", joined(&cycle.mu)).expect("string write");
    let signs: Vec<&str> = cycle.sigma.iter().map(|&s| if s > 0 { "+" } else { "-" }).collect();
    writeln!(text, "sigma {}", signs.join(" ")).expect("string write");
    writeln!(text, "a {}", doc.a.join(" ")).expect("string write");
    writeln!(text, "alpha {}", doc.alpha.join(" ")).expect("string write");
    for (i, m) in cycle.diagrams[..cycle.p()].iter().enumerate() {
        writeln!(text, "H_M{i} = {}", wronskian_label(m)).expect("string write");
    }
    for (i, w) in chain.w().iter().enumerate() {
        writeln!(text, "w{i} = {w}").expect("string write");
    }
    if with_f {
        for (i, f) in painleve.f().iter().enumerate() {
            writeln!(text, "f{i} = {f}").expect("string write");
        }
    }
    report_text("verify", &rep, &mut text);
    for c in rep.failures() {
        diagnostics.push(format!("failed: {}", c.name));
    }
    let mut r = CommandResult::new(serde_json::to_value(&doc)?, text);
    r.diagnostics = diagnostics;
    Ok(r.fail_if(!rep.is_ok()))
}

pub fn cmd_verify(doc: &str) -> Result<CommandResult> {
    let sol: SolutionJson = serde_json::from_str(doc).context("solution JSON")?;
    let chain = sol.chain()?;
    let painleve = sol.painleve()?;
    if chain.is_none() && painleve.is_none() {
        bail!("the document has neither w nor f");
    }
    let mut text = String::new();
    let mut payload = json!({});
    let mut ok = true;
    if let Some(c) = &chain {
        let rep = verify_chain(c);
        ok &= rep.is_ok();
        report_text("chain", &rep, &mut text);
        payload["chain"] = report_json(&rep);
    }
    if let Some(p) = &painleve {
        let rep = verify_painleve(p);
        ok &= rep.is_ok();
        report_text("painleve", &rep, &mut text);
        payload["painleve"] = report_json(&rep);
    }
    payload["ok"] = json!(ok);
    let mut r = CommandResult::new(payload, text);
    if !ok {
        r.diagnostics.push("verification failed".into());
    }
    Ok(r.fail_if(!ok))
}

pub fn cmd_relations(n: usize, k: u32, trials: usize, seed: u64) -> Result<CommandResult> {
    let rep = verify_group_relations(n, k, trials, seed)?;
    let (literal, core): (Vec<_>, Vec<_>) = rep.failures().partition(|c| c.name.ends_with("literal"));
    let ok = core.is_empty();
    let mut text = String::new();
    writeln!(text, "{} checks over {trials} sequences, {} failures", rep.checks.len(), core.len()).expect("string write");
    for c in &core {
        writeln!(text, "FAILED {} {}", c.name, c.detail.clone().unwrap_or_default()).expect("string write");
    }
    writeln!(text, "literal braid power 2n+1: {} failures", literal.len()).expect("string write");
    let payload = json!({
        "n": n, "k": k, "trials": trials, "seed": seed,
        "checks": rep.checks.len(),
        "failures": core.iter().map(|c| json!({"name": c.name, "detail": c.detail})).collect::<Vec<_>>(),
        "literal_braid_failures": literal.len(),
        "ok": ok,
    });
    Ok(CommandResult::new(payload, text).fail_if(!ok))
}

pub fn cmd_act(word: &str, seq: &ColouredSequence, build: bool) -> Result<CommandResult> {
    let w: GroupWord = word.parse()?;
    let out = act_word(&w, seq)?;
    let mut text = format!("{out}\n");
    let mut payload = json!({"word": w, "input": seq, "result": out});
    if build {
        let inner = cmd_build(&out, true)?;
        text.push_str(&inner.text);
        payload["solution"] = inner.payload;
        let mut r = CommandResult::new(payload, text);
        r.diagnostics = inner.diagnostics;
        return Ok(r.fail_if(inner.status != Status::Ok));
    }
    Ok(CommandResult::new(payload, text))
}

pub fn cmd_orbit(seq: &ColouredSequence) -> Result<CommandResult> {
    let rep = orbit_report(seq)?;
    let text = format!(
        "signature {}\nseed {}\nword {}\nreplay {} {}\n",
        rep.signature,
        rep.seed,
        rep.word,
        rep.replay,
        if rep.replay_ok { "ok" } else { "MISMATCH" }
    );
    let ok = rep.replay_ok;
    Ok(CommandResult::new(serde_json::to_value(&rep)?, text).fail_if(!ok))
}

pub fn cmd_seed(signature: &str) -> Result<CommandResult> {
    let sig: SeedSignature = signature.parse()?;
    let seq = seed_sequence(&sig);
    let formula = seed_solution(&sig)?;
    let chain = build_chain(&build_cycle(&seq)?)?;
    let built = to_painleve(&chain)?;
    let agree = built == formula;
    let rep = verify_painleve(&formula);
    let doc = SolutionJson::from_solution(&chain, Some(&formula), Some(&seq));
    let mut text = format!("signature {sig}\nsequence {seq}\n");
    for (i, (f, a)) in formula.rational_f().unwrap_or_default().iter().zip(&formula.alpha).enumerate() {
        writeln!(text, "f{i} = {f}  alpha{i} = {}", rat_string(a)).expect("string write");
    }
    writeln!(text, "matches construction: {agree}").expect("string write");
    report_text("verify", &rep, &mut text);
    let mut payload = serde_json::to_value(&doc)?;
    payload["signature"] = json!(sig);
    payload["matches_construction"] = json!(agree);
    Ok(CommandResult::new(payload, text).fail_if(!agree || !rep.is_ok()))
}

enum ZerosSource {
    Rational(crate::exactalg::Polynomial<num_rational::BigRational>),
    Integer(crate::exactalg::ZPoly),
}

fn zeros_source(
    h: Option<usize>,
    gh: Option<&[usize]>,
    ok: Option<&[usize]>,
    seq: Option<&str>,
    k: Option<u32>,
    index: usize,
) -> Result<(String, ZerosSource)> {
    if let Some(n) = h {
        return Ok((format!("H_{n}"), ZerosSource::Rational(hermite(n))));
    }
    if let Some(&[m, n]) = gh {
        return Ok((format!("H_{{{m},{n}}}"), ZerosSource::Rational(generalized_hermite(m, n))));
    }
    if let Some(&[m, n]) = ok {
        return Ok((format!("Q_{{{m},{n}}}"), ZerosSource::Rational(generalized_okamoto(m, n))));
    }
    if let Some(s) = seq {
        let s = read_sequence(s, k)?;
        let c = build_cycle(&s)?;
        if index >= c.p() {
            bail!("--index {index} out of range for a cycle of length {}", c.p());
        }
        let m = &c.diagrams[index];
        return Ok((wronskian_label(m), ZerosSource::Integer(tau(m).primitive.clone())));
    }
    bail!("no polynomial given")
}

fn cmd_zeros(label: &str, src: &ZerosSource, bits: u32) -> Result<CommandResult> {
    if bits < 53 {
        bail!("--bits must be at least 53");
    }
    let roots: RootSet = match src {
        ZerosSource::Rational(p) => complex_roots(p, bits)?,
        ZerosSource::Integer(z) => roots_of_int(z, bits)?,
    };
    let mut text = String::new();
    for r in &roots.roots {
        writeln!(text, "{:.16e} {:.16e}", r.re, r.im).expect("string write");
    }
    let payload = json!({
        "polynomial": label,
        "degree": roots.source_degree,
        "residual_bound": roots.residual_bound,
        "roots": roots.roots.iter().map(|r| [r.re, r.im]).collect::<Vec<_>>(),
    });
    let mut r = CommandResult::new(payload, text);
    r.csv = Some(zeros_csv(&roots));
    r.svg = Some(zeros_svg(&roots));
    Ok(r)
}
