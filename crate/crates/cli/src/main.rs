mod config;
mod output;

use std::fmt;
use std::fs;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;
use rayon::prelude::*;
use serde_json::json;

use starclean::format::{load_star_ring, spec_hash, to_json};
use starclean::harness::{unknown_checks, Verdict, CHECKS};
use starclean::ideal::{generated_ideal, ideal_lattice, IdealSet};
use starclean::recipe::ExampleRing;
use starclean::{classify, run_suite, Corpus, ErrorClass, Recipe, StarRing, SuiteConfig};

use config::{Cli, Command, ExtendArgs, IdealFlag, IdealsArgs, Input, RunConfig, VerifyArgs};
use output::ReportWriter;

const EXIT_COUNTEREXAMPLE: u8 = 1;

/// `println!` that tolerates a closed stdout (e.g. piped into `head`).
macro_rules! say {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

/// A failure that carries its exit code.
#[derive(Debug)]
struct Coded {
    class: ErrorClass,
    msg: String,
}

impl fmt::Display for Coded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.msg)
    }
}

impl std::error::Error for Coded {}

fn coded(class: ErrorClass, msg: impl fmt::Display) -> anyhow::Error {
    Coded {
        class,
        msg: msg.to_string(),
    }
    .into()
}

fn exit_code(class: ErrorClass) -> u8 {
    match class {
        ErrorClass::Validation => 2,
        ErrorClass::Input => 3,
        ErrorClass::CapExceeded => 4,
    }
}

struct Ctx {
    cfg: RunConfig,
    writer: ReportWriter,
}

impl Ctx {
    fn info(&self, line: impl fmt::Display) {
        if self.cfg.verbosity >= 0 {
            say!("{line}");
        }
    }

    fn detail(&self, level: i8, line: impl fmt::Display) {
        if self.cfg.verbosity >= level {
            say!("{line}");
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit_code(ErrorClass::Input) } else { 0 });
        }
    };
    let cfg = RunConfig::from_args(&cli.global);
    match run(cli.command, cfg) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let class = e.downcast_ref::<Coded>().map_or(ErrorClass::Input, |c| c.class);
            ExitCode::from(exit_code(class))
        }
    }
}

fn run(cmd: Command, cfg: RunConfig) -> Result<u8> {
    if let Some(n) = cfg.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("cannot start worker pool")?;
    }
    let writer = ReportWriter::new(cfg.out_dir.clone())
        .with_context(|| format!("cannot create output directory {:?}", cfg.out_dir))?;
    let mut ctx = Ctx { cfg, writer };
    let code = match cmd {
        Command::Classify(input) => cmd_classify(&ctx, &input)?,
        Command::Verify(args) => cmd_verify(&mut ctx, &args)?,
        Command::Extend(args) => cmd_extend(&ctx, &args)?,
        Command::Ideals(args) => cmd_ideals(&ctx, &args)?,
        Command::Construct { expr } => {
            let s = build_expr(&ctx.cfg, &expr)?;
            emit_spec(&ctx, &s)?
        }
        Command::List => cmd_list(),
    };
    let Ctx { cfg, writer } = ctx;
    let written = writer.finish().context("cannot write report")?;
    if cfg.verbosity >= 1 {
        for p in written {
            say!("wrote {}", p.display());
        }
    }
    Ok(code)
}

fn build_expr(cfg: &RunConfig, expr: &str) -> Result<StarRing> {
    let r: Recipe = expr.parse().map_err(|e: starclean::RecipeError| coded(e.class(), e))?;
    r.build_capped(cfg.max_order)
        .map_err(|e| coded(e.class(), format_args!("{expr}: {e}")))
}

fn load_file(cfg: &RunConfig, path: &Path) -> Result<StarRing> {
    let text = fs::read_to_string(path)
        .map_err(|e| coded(ErrorClass::Input, format_args!("cannot read {}: {e}", path.display())))?;
    load_star_ring(&text, cfg.max_order).map_err(|e| coded(e.class(), format_args!("{}: {e}", path.display())))
}

fn load_inputs(cfg: &RunConfig, input: &Input) -> Result<Vec<(String, StarRing)>> {
    if input.is_empty() {
        return Err(coded(ErrorClass::Input, "no input: give a ring-spec file or --construct EXPR"));
    }
    let mut out = Vec::new();
    for f in &input.files {
        out.push((f.display().to_string(), load_file(cfg, f)?));
    }
    for e in &input.construct {
        out.push((e.clone(), build_expr(cfg, e)?));
    }
    Ok(out)
}

const HEADLINE: &[&str] = &[
    "strongly_nil_star_clean",
    "uniquely_strongly_nil_star_clean",
    "strongly_j_star_clean",
    "strongly_star_clean",
    "strongly_nil_clean",
    "star_boolean_like",
    "star_boolean",
    "commutative",
];

fn cmd_classify(ctx: &Ctx, input: &Input) -> Result<u8> {
    let rings = load_inputs(&ctx.cfg, input)?;
    let reports: Vec<_> = rings
        .par_iter()
        .map(|(name, s)| (name, s, classify(s).report()))
        .collect();
    for (name, s, report) in reports {
        let path = ctx.writer.submit("classify", &report.ring, report.to_json());
        ctx.info(format_args!(
            "{name}: order {}, characteristic {}, spec {}",
            s.order(),
            report.structure.characteristic,
            &report.ring[..12]
        ));
        let shown: Vec<&str> = if ctx.cfg.verbosity >= 1 {
            report.predicates.keys().map(String::as_str).collect()
        } else {
            HEADLINE.to_vec()
        };
        for p in shown {
            let holds = report.predicate(p);
            ctx.info(format_args!("  {p:<34} {holds}"));
            if !holds {
                let w = &report.counterexamples[p];
                ctx.detail(2, format_args!("    {}", serde_json::to_string(w)?));
            }
        }
        if let Some(p) = path {
            ctx.detail(1, format_args!("  report {}", p.display()));
        }
    }
    Ok(0)
}

fn load_corpus(ctx: &Ctx, spec: &str) -> Result<Corpus> {
    let corpus = if spec == "default" {
        Corpus::default_corpus(ctx.cfg.max_order)
    } else if let Some(path) = spec.strip_prefix("file:") {
        let text = fs::read_to_string(path)
            .map_err(|e| coded(ErrorClass::Input, format_args!("cannot read corpus {path}: {e}")))?;
        Corpus::from_json(&text, ctx.cfg.max_order)
    } else {
        return Err(coded(ErrorClass::Input, format_args!("unknown corpus `{spec}` (use default or file:PATH)")));
    };
    corpus.map_err(|e| coded(e.class(), e))
}

fn cmd_verify(ctx: &mut Ctx, args: &VerifyArgs) -> Result<u8> {
    let unknown = unknown_checks(&args.only);
    if !unknown.is_empty() {
        return Err(coded(
            ErrorClass::Input,
            format_args!("unknown check id(s): {} (see `starclean list`)", unknown.join(", ")),
        ));
    }
    if args.corpus == "default" {
        ctx.cfg.corpus = Corpus::default_recipes();
    }
    let corpus = load_corpus(ctx, &args.corpus)?;
    ctx.detail(
        1,
        format_args!("corpus: {} rings ({} recipes listed, {} over the cap)", corpus.len(), ctx.cfg.corpus.len(), corpus.excluded.len()),
    );
    let suite = SuiteConfig {
        ideal_cap: ctx.cfg.ideal_cap,
        extension_cap: ctx.cfg.max_order.min(SuiteConfig::default().extension_cap),
        extension_base_max_order: args.extension_base_max,
        only: (!args.only.is_empty()).then(|| args.only.clone()),
        ..SuiteConfig::default()
    };
    let report = run_suite(&corpus, &suite);
    for w in &report.warnings {
        if ctx.cfg.verbosity >= 0 {
            eprintln!("warning: {w}");
        }
    }
    for c in &report.checks {
        ctx.info(format_args!(
            "{:<32} pass {:>4}  fail {:>3}  skipped {:>4}",
            c.id, c.summary.pass, c.summary.fail, c.summary.skipped
        ));
        for o in &c.outcomes {
            match &o.verdict {
                Verdict::Fail => ctx.info(format_args!("  counterexample {}: {}", o.ring, o.witness)),
                Verdict::Skipped { reason } => ctx.detail(2, format_args!("  skipped {}: {reason}", o.ring)),
                Verdict::Pass => {}
            }
        }
    }
    let s = &report.summary;
    ctx.info(format_args!(
        "{} rings, {} checks: {} pass, {} fail, {} skipped; {} counterexamples",
        s.rings, s.checks, s.tally.pass, s.tally.fail, s.tally.skipped, s.counterexamples
    ));
    if let Some(p) = ctx.writer.submit_hashed("verify", report.to_json()) {
        ctx.detail(1, format_args!("report {}", p.display()));
    }
    Ok(if report.all_passed() { 0 } else { EXIT_COUNTEREXAMPLE })
}

fn cmd_extend(ctx: &Ctx, args: &ExtendArgs) -> Result<u8> {
    let base: Recipe = args
        .base
        .parse()
        .map_err(|e: starclean::RecipeError| coded(e.class(), e))?;
    let recipe = match (args.mu, args.eta, args.poly) {
        (Some(mu), Some(eta), None) => Recipe::Ri {
            base: Box::new(base),
            mu,
            eta,
        },
        (None, None, Some(n)) => Recipe::Poly {
            base: Box::new(base),
            n,
        },
        _ => return Err(coded(ErrorClass::Input, "give either --mu and --eta, or --poly")),
    };
    let s = build_expr(&ctx.cfg, &recipe.to_string())?;
    emit_spec(ctx, &s)
}

fn emit_spec(ctx: &Ctx, s: &StarRing) -> Result<u8> {
    let text = to_json(s);
    say!("{text}");
    ctx.writer.submit("ring", &spec_hash(s), text);
    Ok(0)
}

fn wanted(i: &IdealSet, flags: &[IdealFlag]) -> bool {
    let f = i.flags.as_ref().expect("lattice ideals carry flags");
    flags.iter().all(|fl| match fl {
        IdealFlag::Maximal => f.maximal,
        IdealFlag::Prime => f.prime,
        IdealFlag::Semiprime => f.semiprime,
        IdealFlag::Primary => f.primary == Some(true),
        IdealFlag::Submaximal => f.submaximal,
        IdealFlag::StarClosed => f.star_closed,
    })
}

/// `(g)` for principal ideals, otherwise the member list.
fn describe(s: &StarRing, i: &IdealSet) -> String {
    let principal = i
        .members
        .iter()
        .find(|&g| generated_ideal(s, &[g]).members == i.members);
    match principal {
        Some(g) => format!("({})", s.label(g)),
        None => {
            let m: Vec<String> = i.members.iter().map(|x| s.label(x)).collect();
            format!("{{{}}}", m.join(", "))
        }
    }
}

fn cmd_ideals(ctx: &Ctx, args: &IdealsArgs) -> Result<u8> {
    for (name, s) in load_inputs(&ctx.cfg, &args.input)? {
        let lattice = ideal_lattice(&s, ctx.cfg.ideal_cap).map_err(|e| coded(e.class(), format_args!("{name}: {e}")))?;
        let kept: Vec<&IdealSet> = lattice.iter().filter(|i| wanted(i, &args.flag)).collect();
        ctx.info(format_args!("{name}: {} ideals, {} listed", lattice.len(), kept.len()));
        for i in &kept {
            let f = i.flags.as_ref().expect("flags");
            let mut tags = Vec::new();
            for (on, t) in [
                (f.maximal, "maximal"),
                (f.prime, "prime"),
                (f.semiprime, "semiprime"),
                (f.primary == Some(true), "primary"),
                (f.submaximal, "submaximal"),
                (f.star_closed, "*-closed"),
            ] {
                if on {
                    tags.push(t);
                }
            }
            ctx.info(format_args!("  {:<24} size {:>4}  {}", describe(&s, i), i.len(), tags.join(" ")));
        }
        let hash = spec_hash(&s);
        let body = json!({
            "ring": hash,
            "order": s.order(),
            "labels": s.labels(),
            "filter": args.flag.iter().map(|f| format!("{f:?}").to_lowercase()).collect::<Vec<_>>(),
            "ideals": kept.iter().map(|i| json!({
                "members": i.members,
                "name": describe(&s, i),
                "flags": i.flags,
            })).collect::<Vec<_>>(),
        });
        let body = serde_json::to_string_pretty(&body)?;
        let key = starclean::format::sha256_hex(format!("{hash}{body}").as_bytes());
        ctx.writer.submit("ideals", &key, body);
    }
    Ok(0)
}

fn cmd_list() -> u8 {
    say!("checks:");
    for c in CHECKS {
        say!("  {:<32} {}", c.id, c.statement);
    }
    say!("examples:");
    for e in ExampleRing::ALL {
        say!("  example:{:<20} order {}", e.name(), e.order());
    }
    say!("constructors: zn:N  product:A,B  ri:BASE,mu=M,eta=E  poly:BASE,n=N");
    0
}
