//! Built-in mutation corpus: one single-move corruption per certificate
//! kind, each of which the checker must flag.

use crate::dsl::{parse_order, parse_point};
use crate::game::Transcript;
use crate::order::{between, OrderExpr, Point};
use crate::runner::{run_match, MatchSpec};
use crate::strategy::{parse_player_one, parse_player_two};
use crate::verifier::{Mutant, VerifyError};

fn clean(order: &str, p1: &str, p2: &str, horizon: u32) -> Result<(OrderExpr, Transcript), VerifyError> {
    let order = parse_order(order)?;
    let p1 = parse_player_one(&order, p1)?;
    let p2 = parse_player_two(&order, p2)?;
    let t = run_match(MatchSpec::new(order.clone(), p1, p2, horizon, 0))?;
    Ok((order, t))
}

fn point(t: &Transcript, order: &OrderExpr, index: usize) -> Result<Point, VerifyError> {
    let m = t
        .moves
        .get(index)
        .ok_or_else(|| VerifyError::Corrupted(format!("corpus transcript lacks move {index}")))?;
    Ok(m.point.clone().conform(order)?)
}

fn with_move(t: &Transcript, index: usize, p: Point) -> Transcript {
    let mut m = t.clone();
    m.moves[index].point = p;
    m
}

pub fn mutation_corpus() -> Result<Vec<Mutant>, VerifyError> {
    let mut out = Vec::new();

    // b3 = 3/8 is the minimum of piece 3; raise it so 3/8 re-enters.
    let (q, t) = clean(
        "Q",
        "scripted(0, 1/4, 1/3, 4/11, 11/30)",
        "sigma(finite{1, 1/2, 2/5, 3/8})",
        5,
    )?;
    let raised = between(&q, &point(&t, &q, 7)?, &point(&t, &q, 5)?)?;
    out.push(Mutant {
        name: "raise b3 above the piece minimum",
        target: "sigma_exclusion",
        mutated: with_move(&t, 7, raised),
        clean: t,
    });

    // Universal strategy delegates to block 5 at stage 0 with b0 = (5, 1).
    let (lex, t) = clean(
        "lex(rev(ord(w)), Q)",
        "scripted((5, 0), (5, 1/2), (5, 3/5))",
        "universal",
        3,
    )?;
    let above_block_4 = parse_point(&lex, "(4, 1)")?;
    out.push(Mutant {
        name: "move b0 over block 4",
        target: "separation",
        mutated: with_move(&t, 1, above_block_4),
        clean: t.clone(),
    });
    let deeper = parse_point(&lex, "(7, 0)")?;
    out.push(Mutant {
        name: "move a0 into block 7",
        target: "delegation",
        mutated: with_move(&t, 0, deeper),
        clean: t,
    });

    // Telescoping blocks: stage 1 descends 4 -> 3 with a witness below a1.
    let (q, t) = clean("Q", "scripted(-3/4, -2/3, -1/2, -1/3)", "blocks(telescoping(w))", 5)?;
    let witness = t
        .certificates
        .iter()
        .find_map(|c| match &c.kind {
            crate::game::CertificateKind::DescentEvent { witness, .. } if c.stage == 1 => Some(witness.clone()),
            _ => None,
        })
        .ok_or_else(|| VerifyError::Corrupted("corpus run has no descent at stage 1".into()))?
        .conform(&q)?;
    let lowered = between(&q, &point(&t, &q, 0)?, &witness)?;
    out.push(Mutant {
        name: "lower a1 under the descent witness",
        target: "descent_event",
        mutated: with_move(&t, 2, lowered),
        clean: t,
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verifier::{check_transcript, standard_bounds, transcript_oracle};

    #[test]
    fn every_mutant_is_caught_and_every_original_is_clean() {
        let corpus = mutation_corpus().unwrap();
        let kinds: Vec<_> = corpus.iter().map(|m| m.target).collect();
        assert_eq!(kinds, ["sigma_exclusion", "separation", "delegation", "descent_event"]);
        for m in corpus {
            let oracle = transcript_oracle(&m.clean).unwrap();
            let clean = check_transcript(&m.clean, &oracle, &standard_bounds()).unwrap();
            assert!(clean.is_clean(), "{}: {:?}", m.name, clean.failures);
            assert!(m.mutated.replay().is_ok(), "{} breaks nesting", m.name);
            let bad = check_transcript(&m.mutated, &oracle, &standard_bounds()).unwrap();
            assert!(!bad.failures.is_empty(), "{} passed", m.name);
        }
    }
}
