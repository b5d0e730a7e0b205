use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use skeinlab::core::conventions::ConventionLedger;
use skeinlab::core::coproduct::{coproduct_iterated, coproduct_n, Side};
use skeinlab::core::verify::{CaseReport, Identity};
use skeinlab::core::{Colour, Framing, MorseWord, Scalar, Surface};
use skeinlab::parallel::{threads_from_env, Runner};
use skeinlab::render::{render_element, render_scalar, scalar_json, Format};
use skeinlab::text::parse_document;
use skeinlab::corpus;

#[derive(Parser)]
#[command(name = "skeinlab", version, about = "Exact HOMFLY skein evaluation, Jaeger state sums and the Turaev coproduct")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatArg::Pretty, global = true)]
    format: FormatArg,

    /// Framing for annulus inputs; overrides the document's `framing` line.
    #[arg(long, value_enum, global = true)]
    framing: Option<FramingArg>,

    /// Run on a single worker thread.
    #[arg(long, global = true)]
    deterministic: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Framed HOMFLY value of a closed plane diagram.
    Eval(Input),
    /// Diagram-level coproduct by the box rules.
    Coproduct {
        #[command(flatten)]
        input: Input,
        /// Number of tensor slots (2 or 3).
        #[arg(long, default_value_t = 2)]
        slots: usize,
    },
    /// Jaeger state sum.
    Jaeger {
        #[command(flatten)]
        input: Input,
        /// Number of labels (1, 2 or 3).
        #[arg(long, default_value_t = 2)]
        slots: usize,
        /// Print one line per admissible labelling.
        #[arg(long)]
        trace: bool,
    },
    /// Iterated coproduct into n slots.
    Iterate {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 3)]
        slots: usize,
        /// Which tensor factor is split again at each step.
        #[arg(long, value_enum, default_value_t = SideArg::Left)]
        side: SideArg,
    },
    /// Value at q^t = q^N, one N per colour.
    Specialize {
        #[command(flatten)]
        input: Input,
        /// Comma-separated levels N.
        #[arg(long = "t", value_delimiter = ',', required = true, allow_negative_numbers = true)]
        t: Vec<i32>,
    },
    /// Check an identity on a corpus and report per diagram.
    Verify {
        #[arg(value_enum)]
        identity: IdentityArg,
        /// Diagram files to check instead of a corpus.
        inputs: Vec<PathBuf>,
        /// `builtin`, a directory of .mw files, or a single file.
        #[arg(long)]
        corpus: Option<String>,
    },
}

#[derive(Args)]
struct Input {
    /// Diagram file, `-` for standard input, or `builtin:NAME`.
    input: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Pretty,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum FramingArg {
    Blackboard,
    Radial,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Clone, Copy, ValueEnum)]
enum IdentityArg {
    Jaeger,
    Coassoc,
    Counit,
    Mult,
    FramingRemark,
}

impl From<IdentityArg> for Identity {
    fn from(i: IdentityArg) -> Identity {
        match i {
            IdentityArg::Jaeger => Identity::Jaeger,
            IdentityArg::Coassoc => Identity::Coassoc,
            IdentityArg::Counit => Identity::Counit,
            IdentityArg::Mult => Identity::Mult,
            IdentityArg::FramingRemark => Identity::FramingRemark,
        }
    }
}

/// An input or computation problem; exits with status 1.
struct Failure(anyhow::Error);

/// Outcome of a successful run.
enum Outcome {
    Ok(String),
    VerificationFailed(String),
}

fn read_word(spec: &str, framing: Option<Framing>) -> Result<MorseWord> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        let w = corpus::builtin_named(name).with_context(|| format!("no built-in diagram named {:?}", name))?;
        return apply_framing(w, framing);
    }
    let text = if spec == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
        s
    } else {
        std::fs::read_to_string(spec).with_context(|| format!("reading {}", spec))?
    };
    let doc = parse_document(&text).with_context(|| spec.to_string())?;
    doc.into_word(framing).with_context(|| spec.to_string())
}

fn apply_framing(w: MorseWord, framing: Option<Framing>) -> Result<MorseWord> {
    match (w.surface, framing) {
        (Surface::Plane, Some(Framing::Radial)) => bail!("radial framing is only defined on the annulus"),
        (Surface::Annulus, Some(f)) => Ok(MorseWord { framing: f, ..w }),
        _ => Ok(w),
    }
}

/// Slot colours in play, counting orange as green plus red.
fn colour_count(w: &MorseWord) -> usize {
    w.colours()
        .into_iter()
        .map(|c| match c {
            Colour::Slot(s) => s as usize,
            Colour::Orange => 2,
        })
        .max()
        .unwrap_or(1)
}

fn is_single_colour(w: &MorseWord) -> bool {
    w.colours().iter().all(|c| *c == Colour::default())
}

fn require_plane(w: &MorseWord, what: &str) -> Result<()> {
    if w.surface != Surface::Plane {
        bail!("{} needs a closed plane diagram", what);
    }
    Ok(())
}

fn value_of(runner: &Runner, w: &MorseWord) -> Result<Scalar> {
    require_plane(w, "evaluation")?;
    let v = if is_single_colour(w) {
        runner.eval(w)?
    } else {
        runner.engine().eval_with_orange(w, colour_count(w))?
    };
    Ok(v)
}

fn report_line(r: &CaseReport) -> String {
    if let Some(why) = r.skipped {
        return format!("skip  {:<14} {} ({})", r.identity.name(), r.diagram, why);
    }
    if r.passed() {
        format!("pass  {:<14} {} ({} checks)", r.identity.name(), r.diagram, r.checks.len())
    } else {
        let w = r.witness().expect("failing report has a witness");
        format!(
            "FAIL  {:<14} {}: {}: {} != {}",
            r.identity.name(),
            r.diagram,
            w.label,
            w.left,
            w.right
        )
    }
}

fn report_json(r: &CaseReport) -> serde_json::Value {
    let witness = r.witness().map(|w| json!({"label": w.label, "left": scalar_json(&w.left), "right": scalar_json(&w.right)}));
    json!({
        "identity": r.identity.name(),
        "diagram": r.diagram,
        "status": if r.skipped.is_some() { "skipped" } else if r.passed() { "pass" } else { "fail" },
        "skipped": r.skipped,
        "checks": r.checks.len(),
        "witness": witness,
    })
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    let fail = Failure;
    let format = match cli.format {
        FormatArg::Pretty => Format::Pretty,
        FormatArg::Json => Format::Json,
    };
    let framing = cli.framing.map(|f| match f {
        FramingArg::Blackboard => Framing::Blackboard,
        FramingArg::Radial => Framing::Radial,
    });
    let threads = threads_from_env().map_err(|e| fail(e.into()))?;
    let runner = Runner::new(threads, cli.deterministic).map_err(|e| fail(e.into()))?;
    let ledger = ConventionLedger::CALIBRATED;
    let slots_in = |n: usize, range: std::ops::RangeInclusive<usize>, what: &str| -> Result<(), Failure> {
        if range.contains(&n) {
            Ok(())
        } else {
            Err(fail(anyhow::anyhow!(
                "--slots {} not supported by {} (allowed {}..={})",
                n,
                what,
                range.start(),
                range.end()
            )))
        }
    };
    let single = |w: &MorseWord, what: &str| -> Result<(), Failure> {
        if is_single_colour(w) {
            Ok(())
        } else {
            Err(fail(anyhow::anyhow!("{} needs a single-colour diagram", what)))
        }
    };

    let out = match cli.command {
        Command::Eval(input) => {
            let w = read_word(&input.input, framing).map_err(fail)?;
            render_scalar(&value_of(&runner, &w).map_err(fail)?, format)
        }
        Command::Coproduct { input, slots } => {
            slots_in(slots, 2..=3, "coproduct")?;
            let w = read_word(&input.input, framing).map_err(fail)?;
            single(&w, "coproduct")?;
            let x = coproduct_n(&w, slots, ledger).map_err(|e| fail(e.into()))?;
            render_element(&x, format)
        }
        Command::Jaeger { input, slots, trace } => {
            slots_in(slots, 1..=3, "jaeger")?;
            let w = read_word(&input.input, framing).map_err(fail)?;
            require_plane(&w, "the state sum").map_err(fail)?;
            single(&w, "the state sum")?;
            let terms = runner.state_sum_terms(&w, slots, ledger).map_err(|e| fail(e.into()))?;
            let v = runner.sum_terms(&terms, slots).map_err(|e| fail(e.into()))?;
            if !trace {
                render_scalar(&v, format)
            } else {
                match format {
                    Format::Pretty => {
                        let mut s = String::new();
                        for t in &terms {
                            s.push_str(&format!(
                                "labels {:?} cutting {:?} coefficient {}\n",
                                t.labels, t.cutting, t.coefficient
                            ));
                        }
                        s.push_str(&render_scalar(&v, format));
                        s
                    }
                    Format::Json => {
                        let lines: Vec<_> = terms
                            .iter()
                            .map(|t| json!({"labels": t.labels, "cutting": t.cutting, "coefficient": scalar_json(&t.coefficient)}))
                            .collect();
                        json!({"value": scalar_json(&v), "trace": lines}).to_string()
                    }
                }
            }
        }
        Command::Iterate { input, slots, side } => {
            slots_in(slots, 2..=8, "iterate")?;
            let w = read_word(&input.input, framing).map_err(fail)?;
            single(&w, "iterate")?;
            let side = match side {
                SideArg::Left => Side::Left,
                SideArg::Right => Side::Right,
            };
            let x = coproduct_iterated(&w, slots, side, ledger).map_err(|e| fail(e.into()))?;
            render_element(&x, format)
        }
        Command::Specialize { input, t } => {
            let w = read_word(&input.input, framing).map_err(fail)?;
            let v = value_of(&runner, &w).map_err(fail)?;
            if t.len() != v.arity() {
                return Err(fail(anyhow::anyhow!(
                    "--t needs {} value(s) for this diagram, got {}",
                    v.arity(),
                    t.len()
                )));
            }
            let s = v.specialize_fraction(&t).map_err(|e| fail(e.into()))?;
            render_scalar(&s, format)
        }
        Command::Verify {
            identity,
            inputs,
            corpus: corpus_arg,
        } => {
            if !inputs.is_empty() && corpus_arg.is_some() {
                return Err(fail(anyhow::anyhow!("give either input files or --corpus, not both")));
            }
            let mut words = Vec::new();
            if inputs.is_empty() {
                match corpus_arg.as_deref().unwrap_or("builtin") {
                    "builtin" => words = corpus::builtin(),
                    path => words = corpus::load(std::path::Path::new(path)).map_err(|e| fail(e.into()))?,
                }
            } else {
                for p in &inputs {
                    let name = p.display().to_string();
                    words.push((name.clone(), read_word(&name, None).map_err(fail)?));
                }
            }
            let words: Vec<(String, MorseWord)> = words
                .into_iter()
                .map(|(n, w)| apply_framing(w, framing).map(|w| (n, w)))
                .collect::<Result<_>>()
                .map_err(fail)?;
            let reports = runner.verify(identity.into(), &words, ledger).map_err(|e| fail(e.into()))?;
            let failed = reports.iter().any(|r| r.skipped.is_none() && !r.passed());
            let text = match format {
                Format::Pretty => {
                    let mut lines: Vec<String> = reports.iter().map(report_line).collect();
                    let ran = reports.iter().filter(|r| r.skipped.is_none()).count();
                    let passed = reports.iter().filter(|r| r.skipped.is_none() && r.passed()).count();
                    lines.push(format!("{}/{} diagrams passed", passed, ran));
                    lines.join("\n")
                }
                Format::Json => json!({"reports": reports.iter().map(report_json).collect::<Vec<_>>(), "passed": !failed}).to_string(),
            };
            if failed {
                return Ok(Outcome::VerificationFailed(text));
            }
            text
        }
    };
    Ok(Outcome::Ok(out))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut stdout = std::io::stdout().lock();
    match run(cli) {
        Ok(Outcome::Ok(text)) => {
            let _ = writeln!(stdout, "{}", text);
            ExitCode::SUCCESS
        }
        Ok(Outcome::VerificationFailed(text)) => {
            let _ = writeln!(stdout, "{}", text);
            ExitCode::from(2)
        }
        Err(Failure(e)) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(1)
        }
    }
}
