//! Terminal play: the human is Player I.

use std::fs;
use std::io::{BufRead, Write};

use baker_core::{parse_point, GameError, Match, Termination, Violation};

use crate::commands::{build_spec, Exit, PlayArgs, EXIT_OK};

fn io_err(e: std::io::Error) -> Exit {
    Exit {
        code: crate::commands::EXIT_USAGE,
        message: format!("terminal: {e}"),
    }
}

pub fn cmd_play(args: &PlayArgs, input: &mut dyn BufRead, out: &mut dyn Write) -> Result<i32, Exit> {
    let spec = build_spec(&args.order, args.payoff.as_deref(), "human", &args.p2, args.horizon, 0)?;
    let mut m = Match::new(spec).map_err(|e| Exit {
        code: crate::commands::EXIT_USAGE,
        message: e.to_string(),
    })?;
    writeln!(
        out,
        "order {}  payoff {}  Player II {}  horizon {}",
        m.spec().order,
        m.spec().payoff,
        m.spec().player_ii,
        m.spec().horizon
    )
    .map_err(io_err)?;
    writeln!(out, "type a point, `resign` or `quit`").map_err(io_err)?;
    let mut line = String::new();
    while !m.is_over() {
        let k = m.state().stage();
        match m.state().current_interval() {
            Some((a, b)) => write!(out, "stage {k}  ({a}, {b})  a{k} > "),
            None => write!(out, "stage 0  a0 > "),
        }
        .map_err(io_err)?;
        out.flush().map_err(io_err)?;
        line.clear();
        if input.read_line(&mut line).map_err(io_err)? == 0 {
            writeln!(out).map_err(io_err)?;
            m.abandon();
            break;
        }
        let text = line.trim();
        match text {
            "" => continue,
            "quit" => {
                m.abandon();
                break;
            }
            "resign" => {
                m.resign("resigned".into());
                break;
            }
            _ => {}
        }
        let point = match parse_point(&m.spec().order, text) {
            Ok(p) => p,
            Err(e) => {
                writeln!(out, "cannot read `{text}`: {e}").map_err(io_err)?;
                continue;
            }
        };
        if let Err(GameError::Illegal(e)) = m.state().check_move(&point) {
            let bounds: Vec<String> = e
                .violations
                .iter()
                .map(|v| match v {
                    Violation::Lower(b) => format!("must be > {b}"),
                    Violation::Upper(b) => format!("must be < {b}"),
                })
                .collect();
            writeln!(out, "illegal: a{k} {}", bounds.join(" and ")).map_err(io_err)?;
            continue;
        }
        match m.submit(point) {
            Ok(certificates) => {
                if let Some(b) = m.state().b(k) {
                    writeln!(out, "Player II: b{k} = {b}").map_err(io_err)?;
                }
                for c in certificates {
                    writeln!(out, "  {c}").map_err(io_err)?;
                }
            }
            Err(e) => writeln!(out, "rejected: {e}").map_err(io_err)?,
        }
    }
    let outcome = match m.termination() {
        Some(Termination::Horizon) => "horizon reached".to_string(),
        Some(Termination::EarlyWin) => "every payoff point excluded".to_string(),
        Some(Termination::Resigned { reason, .. }) => reason.clone(),
        Some(Termination::IllegalMove { reason, .. }) => format!("strategy error: {reason}"),
        Some(Termination::Abandoned) | None => "abandoned".to_string(),
    };
    writeln!(out, "game over: {outcome}").map_err(io_err)?;
    if let Some(path) = &args.save {
        fs::write(path, m.transcript().to_json() + "\n").map_err(|e| Exit {
            code: crate::commands::EXIT_USAGE,
            message: format!("{}: {e}", path.display()),
        })?;
        writeln!(out, "transcript saved to {}", path.display()).map_err(io_err)?;
    }
    Ok(EXIT_OK)
}
