use baker_core::*;
use proptest::prelude::*;

fn spec(order: &OrderExpr, p1: &str, p2: &str, horizon: u32, seed: u64) -> MatchSpec {
    MatchSpec::new(
        order.clone(),
        parse_player_one(order, p1).unwrap(),
        parse_player_two(order, p2).unwrap(),
        horizon,
        seed,
    )
}

fn verify(t: &Transcript) -> VerificationReport {
    check_transcript(t, &transcript_oracle(t).unwrap(), &standard_bounds()).unwrap()
}

fn b_moves(t: &Transcript) -> Vec<Point> {
    t.moves
        .iter()
        .filter(|m| m.player == Player::Two)
        .map(|m| m.point.clone())
        .collect()
}

fn descents(t: &Transcript) -> Vec<(Ordinal, Ordinal)> {
    t.certificates
        .iter()
        .filter_map(|c| match &c.kind {
            CertificateKind::DescentEvent { from, to, .. } => Some((from.clone(), to.clone())),
            _ => None,
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sigma_runs_verify(seed in any::<u64>(), width in 1usize..6, horizon in 0u32..40) {
        let q = OrderExpr::Rationals;
        let t = run_match(spec(&q, &format!("random({seed}, {width})"), "sigma(enumerated(e, 256))", horizon, 0)).unwrap();
        prop_assert!(t.replay().is_ok());
        prop_assert_eq!(t.moves.len(), 2 * horizon as usize);
        let r = verify(&t);
        prop_assert!(r.is_clean(), "{:?}", r.failures);
    }

    #[test]
    fn universal_runs_verify(seed in any::<u64>(), block in 0u64..12) {
        let lex = parse_order("lex(rev(ord(w^2)), Q)").unwrap();
        let p1 = format!("random({seed}, 3, ({block}, 0))");
        let t = run_match(spec(&lex, &p1, "universal", 24, 0)).unwrap();
        let r = verify(&t);
        prop_assert!(r.is_clean(), "{:?}", r.failures);
        // Delegation at stage 0, to the block of a0, and never again.
        let del: Vec<_> = t.certificates_of("delegation").collect();
        prop_assert_eq!(del.len(), 1);
        prop_assert_eq!(del[0].stage, 0);
    }

    #[test]
    fn single_block_family_plays_like_sigma(seed in any::<u64>()) {
        let lex = parse_order("lex(rev(ord(1)), Q)").unwrap();
        let p1 = format!("random({seed}, 4)");
        let blocks = run_match(spec(&lex, &p1, "universal", 20, 0)).unwrap();
        let sigma = run_match(spec(&lex, &p1, "sigma(inblock(0, fullblocks))", 20, 0)).unwrap();
        prop_assert_eq!(b_moves(&blocks), b_moves(&sigma));
    }

    #[test]
    fn descents_strictly_decrease(seed in any::<u64>()) {
        let q = OrderExpr::Rationals;
        let p1 = format!("random({seed}, 3, -1/2)");
        for family in ["telescoping(w)", "telescoping(6)", "chain(recip)", "empty(w)"] {
            let t = run_match(spec(&q, &p1, &format!("blocks({family})"), 24, 0)).unwrap();
            let d = descents(&t);
            for w in d.windows(2) {
                prop_assert_eq!(&w[0].1, &w[1].0);
            }
            for (from, to) in &d {
                prop_assert!(to < from);
            }
            let r = verify(&t);
            prop_assert!(r.is_clean(), "{family}: {:?}", r.failures);
        }
    }

    #[test]
    fn delegation_is_permanent(seed in any::<u64>()) {
        let q = OrderExpr::Rationals;
        let t = run_match(spec(&q, &format!("random({seed}, 3, -1/2)"), "blocks(telescoping(w))", 32, 0)).unwrap();
        let first = t.certificates_of("delegation").next().cloned();
        if let Some(d) = first {
            let CertificateKind::Delegation { block } = &d.kind else { unreachable!() };
            for c in t.certificates.iter().filter(|c| c.stage > d.stage) {
                prop_assert_eq!(
                    &c.kind,
                    &CertificateKind::SigmaExclusion { block: Some(block.clone()), piece: u64::from(c.stage - d.stage) }
                );
            }
        }
    }
}

#[test]
fn trap_on_each_enumerated_point() {
    let q = OrderExpr::Rationals;
    for (k, x) in RationalEnumeration::new().take(32).enumerate() {
        let t = run_match(spec(&q, &format!("trap({x})"), "sigma(enumerated(e, 256))", 64, 0)).unwrap();
        match &t.termination {
            Termination::Resigned { stage, .. } => assert!(*stage as usize <= k + 1, "x{k} = {x}"),
            other => panic!("x{k}: {other:?}"),
        }
        assert!(verify(&t).is_clean());
    }
}

#[test]
fn descent_count_bounded_by_first_index() {
    let q = OrderExpr::Rationals;
    let t = run_match(spec(&q, "scripted(-3/4, -2/3, -1/2, -1/3)", "blocks(telescoping(w))", 8, 0)).unwrap();
    let d = descents(&t);
    assert_eq!(d.len(), 4);
    // The opening move from w counts; afterwards at most alpha_1 more.
    let first = d[0].1.as_finite().unwrap() as usize;
    assert!(d.len() <= first + 1);
    assert!(verify(&t).is_clean());
}

#[test]
fn separator_failure_takes_the_filler() {
    // a0 = 0: block 1 reaches below it, but separating block 0 = {1/n}
    // needs b0 <= 0, which is illegal. Player II fills, then descends to
    // block 0 once a1 > 0.
    let q = OrderExpr::Rationals;
    let t = run_match(spec(&q, "scripted(0, 1/3)", "blocks(telescoping(w))", 2, 0)).unwrap();
    let stage0: Vec<_> = t.certificates.iter().filter(|c| c.stage == 0).map(|c| c.kind.name()).collect();
    assert_eq!(stage0, ["descent_event"]);
    assert_eq!(t.moves[1].point.to_string(), "1");
    let d: Vec<_> = t.certificates_of("delegation").map(|c| c.stage).collect();
    assert_eq!(d, [1]);
    assert_eq!(descents(&t).len(), 2);
    assert!(verify(&t).is_clean());
}

#[test]
fn human_move_on_sigma_takes_the_minimum() {
    let q = OrderExpr::Rationals;
    let mut m = Match::new(spec(&q, "human", "sigma(enumerated(e, 256))", 4, 0)).unwrap();
    // x0 = 0 is not above a0 = 0; x0 lies above -1.
    m.submit(parse_point(&q, "-1").unwrap()).unwrap();
    assert_eq!(m.state().b(0).unwrap().to_string(), "0");
}

#[test]
fn transcripts_are_byte_stable() {
    let q = OrderExpr::Rationals;
    let a = run_match(spec(&q, "random(9, 3)", "sigma(enumerated(e, 64))", 32, 5)).unwrap();
    let b = run_match(spec(&q, "random(9, 3)", "sigma(enumerated(e, 64))", 32, 5)).unwrap();
    assert_eq!(a.to_json(), b.to_json());
    let back = Transcript::from_json(&a.to_json()).unwrap();
    assert_eq!(back, a);
}
