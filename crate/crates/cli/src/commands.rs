use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use baker_core::{
    check_transcript, exhaustive_adversary, parse_order, parse_player_one, parse_player_two,
    parse_set, run_match, standard_bounds, Exhaustive, MatchSpec, OrderExpr, ParseError,
    ProbeBounds, SetDescriptor, Termination, Transcript, VerificationReport,
};
use clap::{Args, Parser, Subcommand};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REPORT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_ILLEGAL: i32 = 3;

pub const DEFAULT_PORT: u16 = 7878;

#[derive(Debug, Parser)]
#[command(name = "baker", version, about = "Interval games on dense linear orders")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Play one match between two strategies and write its transcript.
    Simulate(SimulateArgs),
    /// Check a transcript, or every branch of a bounded game tree.
    Verify(VerifyArgs),
    /// Play as Player I in the terminal.
    Play(PlayArgs),
    /// Run the local JSON session service.
    Serve(ServeArgs),
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub order: String,
    /// Payoff set; defaults to the set the Player II strategy targets.
    #[arg(long)]
    pub payoff: Option<String>,
    #[arg(long)]
    pub p1: String,
    #[arg(long)]
    pub p2: String,
    #[arg(long, default_value_t = 64)]
    pub horizon: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Transcript path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// End the match once Player II has excluded the whole payoff.
    #[arg(long)]
    pub stop_on_early_win: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Transcript to check (omit with --exhaustive).
    pub transcript: Option<PathBuf>,
    /// Override the payoff named in the transcript.
    #[arg(long)]
    pub payoff: Option<String>,
    /// Probe universe as `MAX_DEN[,PER_BLOCK]`.
    #[arg(long)]
    pub probes: Option<String>,
    #[arg(long)]
    pub exhaustive: bool,
    #[arg(long, requires = "exhaustive")]
    pub order: Option<String>,
    #[arg(long, requires = "exhaustive")]
    pub p2: Option<String>,
    #[arg(long, default_value_t = 3)]
    pub width: usize,
    #[arg(long, default_value_t = 4)]
    pub depth: u32,
    /// Maximum number of branches to explore.
    #[arg(long, default_value_t = 1 << 20)]
    pub budget: u64,
}

#[derive(Debug, Args)]
pub struct PlayArgs {
    #[arg(long, default_value = "lex(rev(ord(w^2)), Q)")]
    pub order: String,
    #[arg(long, default_value = "universal")]
    pub p2: String,
    #[arg(long)]
    pub payoff: Option<String>,
    #[arg(long, default_value_t = 64)]
    pub horizon: u32,
    /// Save the transcript here when the game ends.
    #[arg(long)]
    pub save: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, env = "BAKER_PORT", default_value_t = DEFAULT_PORT)]
    pub port: u16,
    /// Write each session's transcript here when it is deleted.
    #[arg(long)]
    pub save_dir: Option<PathBuf>,
}

/// Failure carrying its exit status.
#[derive(Debug)]
pub struct Exit {
    pub code: i32,
    pub message: String,
}

impl Exit {
    fn usage(message: impl Into<String>) -> Self {
        Exit {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<ParseError> for Exit {
    fn from(e: ParseError) -> Self {
        Exit::usage(e.to_string())
    }
}

fn context<E: std::fmt::Display>(what: &str) -> impl FnOnce(E) -> Exit + '_ {
    move |e| Exit::usage(format!("{what}: {e}"))
}

/// Parse arguments and run; returns the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = match cli.command {
        Command::Simulate(a) => simulate(&a, &mut io::stdout()),
        Command::Verify(a) => verify(&a, &mut io::stdout()),
        Command::Play(a) => crate::play::cmd_play(&a, &mut io::stdin().lock(), &mut io::stdout()),
        Command::Serve(a) => crate::service::serve_blocking(&a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("baker: {}", e.message);
            e.code
        }
    }
}

pub fn build_spec(
    order: &str,
    payoff: Option<&str>,
    p1: &str,
    p2: &str,
    horizon: u32,
    seed: u64,
) -> Result<MatchSpec, Exit> {
    let order = parse_order(order).map_err(context("--order"))?;
    let player_i = parse_player_one(&order, p1).map_err(context("--p1"))?;
    let player_ii = parse_player_two(&order, p2).map_err(context("--p2"))?;
    let mut spec = MatchSpec::new(order, player_i, player_ii, horizon, seed);
    if let Some(text) = payoff {
        spec.payoff = parse_set(&spec.order, text).map_err(context("--payoff"))?;
    }
    Ok(spec)
}

pub fn simulate(args: &SimulateArgs, stdout: &mut dyn Write) -> Result<i32, Exit> {
    let mut spec = build_spec(
        &args.order,
        args.payoff.as_deref(),
        &args.p1,
        &args.p2,
        args.horizon,
        args.seed,
    )?;
    spec.stop_on_early_win = args.stop_on_early_win;
    if spec.player_i == baker_core::PlayerOneDescriptor::Human {
        return Err(Exit::usage("--p1 human needs `baker play`"));
    }
    let transcript = run_match(spec).map_err(|e| Exit::usage(e.to_string()))?;
    let mut json = transcript.to_json();
    json.push('\n');
    match &args.out {
        Some(path) => fs::write(path, json).map_err(context(&path.display().to_string()))?,
        None => stdout.write_all(json.as_bytes()).map_err(context("stdout"))?,
    }
    if let Termination::IllegalMove { player, stage, reason, .. } = &transcript.termination {
        return Err(Exit {
            code: EXIT_ILLEGAL,
            message: format!("player {player} strategy moved illegally at stage {stage}: {reason}"),
        });
    }
    Ok(EXIT_OK)
}

fn probe_bounds(text: Option<&str>) -> Result<ProbeBounds, Exit> {
    let mut bounds = standard_bounds();
    let Some(text) = text else { return Ok(bounds) };
    let bad = || Exit::usage(format!("--probes: expected MAX_DEN[,PER_BLOCK], got `{text}`"));
    let mut parts = text.split(',');
    bounds.max_den = parts.next().and_then(|s| s.trim().parse().ok()).filter(|d| *d > 0).ok_or_else(bad)?;
    if let Some(n) = parts.next() {
        bounds.per_block = n.trim().parse().ok().filter(|n| *n > 0).ok_or_else(bad)?;
    }
    if parts.next().is_some() {
        return Err(bad());
    }
    Ok(bounds)
}

pub fn verify(args: &VerifyArgs, stdout: &mut dyn Write) -> Result<i32, Exit> {
    let bounds = probe_bounds(args.probes.as_deref())?;
    let report = if args.exhaustive {
        let order_text = args.order.as_deref().ok_or_else(|| Exit::usage("--exhaustive needs --order"))?;
        let p2_text = args.p2.as_deref().ok_or_else(|| Exit::usage("--exhaustive needs --p2"))?;
        let order = parse_order(order_text).map_err(context("--order"))?;
        let p2 = parse_player_two(&order, p2_text).map_err(context("--p2"))?;
        let payoff = payoff_or(&order, args.payoff.as_deref(), p2.default_payoff())?;
        let oracle = payoff.oracle(&order).map_err(context("--payoff"))?;
        let cfg = Exhaustive {
            width: args.width.max(1),
            depth: args.depth,
            budget: args.budget,
        };
        exhaustive_adversary(&order, &p2, &oracle, cfg, &bounds).map_err(|e| Exit::usage(e.to_string()))?
    } else {
        let path = args
            .transcript
            .as_ref()
            .ok_or_else(|| Exit::usage("give a transcript path or --exhaustive"))?;
        let text = fs::read_to_string(path).map_err(context(&path.display().to_string()))?;
        let t = Transcript::from_json(&text).map_err(context(&path.display().to_string()))?;
        let order = t.parse_order()?;
        let default = parse_set(&order, &t.payoff)?;
        let payoff = payoff_or(&order, args.payoff.as_deref(), default)?;
        let oracle = payoff.oracle(&order).map_err(context("--payoff"))?;
        check_transcript(&t, &oracle, &bounds).map_err(|e| Exit::usage(e.to_string()))?
    };
    write_report(&report, stdout)?;
    Ok(if report.is_clean() { EXIT_OK } else { EXIT_REPORT })
}

fn payoff_or(order: &OrderExpr, text: Option<&str>, default: SetDescriptor) -> Result<SetDescriptor, Exit> {
    match text {
        Some(t) => parse_set(order, t).map_err(context("--payoff")),
        None => Ok(default),
    }
}

fn write_report(report: &VerificationReport, out: &mut dyn Write) -> Result<(), Exit> {
    let json = serde_json::to_string_pretty(report).expect("report serializes");
    writeln!(out, "{json}").map_err(context("stdout"))
}
