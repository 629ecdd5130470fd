//! Independent transcript checking against finite probe sets, plus a
//! bounded-depth exhaustive Player I adversary.
//!
//! Nothing a strategy emits is trusted: every certificate is re-derived
//! from the raw points, the block family's membership tests and probes.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dsl::{parse_set, ParseError};
use crate::family::BlockFamily;
use crate::game::{CertificateKind, ReplayError, Termination, Transcript};
use crate::order::{compare, OrderError, OrderExpr, Point};
use crate::ordinal::Ordinal;
use crate::runner::{Match, MatchError, MatchSpec};
use crate::sets::{ProbeBounds, SetError, SetOracle, SigmaPresentation};
use crate::strategy::{parse_player_two, player_one_menu, PlayerOneDescriptor, PlayerTwoDescriptor};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("corrupted transcript: {0}")]
    Corrupted(String),
    #[error("oracle is over {oracle}, transcript over {transcript}")]
    OracleOrder { oracle: String, transcript: String },
    #[error(transparent)]
    Set(#[from] SetError),
    #[error(transparent)]
    Match(#[from] MatchError),
}

impl From<ReplayError> for VerifyError {
    fn from(e: ReplayError) -> Self {
        VerifyError::Corrupted(e.to_string())
    }
}

impl From<ParseError> for VerifyError {
    fn from(e: ParseError) -> Self {
        VerifyError::Corrupted(e.to_string())
    }
}

impl From<OrderError> for VerifyError {
    fn from(e: OrderError) -> Self {
        VerifyError::Corrupted(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub stage: Option<u32>,
    pub probe: Option<Point>,
    pub assertion: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: u64,
    pub failures: Vec<Failure>,
    pub branches: u64,
    pub complete: bool,
    /// Per certificate kind, the number of branches carrying at least one.
    #[serde(skip)]
    pub branches_with: BTreeMap<String, u64>,
}

impl VerificationReport {
    pub fn empty() -> Self {
        VerificationReport {
            checks: 0,
            failures: Vec::new(),
            branches: 0,
            complete: true,
            branches_with: BTreeMap::new(),
        }
    }

    pub fn is_clean(&self) -> bool {
        self.failures.is_empty() && self.complete
    }

    /// Associative, commutative merge.
    pub fn merge(mut self, other: VerificationReport) -> Self {
        self.checks += other.checks;
        self.branches += other.branches;
        self.complete &= other.complete;
        self.failures.extend(other.failures);
        self.failures.sort_by_cached_key(|f| {
            (
                f.stage,
                f.assertion.clone(),
                f.probe.as_ref().map(ToString::to_string),
            )
        });
        for (k, v) in other.branches_with {
            *self.branches_with.entry(k).or_default() += v;
        }
        self
    }

    pub fn branches_with(&self, kind: &str) -> u64 {
        self.branches_with.get(kind).copied().unwrap_or(0)
    }

    fn check(&mut self, ok: bool, stage: Option<u32>, probe: Option<&Point>, assertion: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(Failure {
                stage,
                probe: probe.cloned(),
                assertion: assertion(),
            });
        }
    }

    fn fail(&mut self, stage: Option<u32>, probe: Option<&Point>, assertion: String) {
        self.check(false, stage, probe, || assertion);
    }
}

/// Probe universe used when nothing else is given: denominators up to 64,
/// 64 rationals per block, block indices `0..16`, `w`, `w + 1`, `w*2`,
/// `w^2`.
pub fn standard_bounds() -> ProbeBounds {
    let mut ordinals: Vec<Ordinal> = (0..16).map(Ordinal::finite).collect();
    let w = Ordinal::omega();
    ordinals.push(w.clone());
    ordinals.push(w.successor());
    ordinals.push(Ordinal::from_terms(vec![(Ordinal::finite(1), 2)]).expect("valid"));
    ordinals.push(Ordinal::omega_pow(Ordinal::finite(2)));
    ProbeBounds {
        max_den: 64,
        ordinals,
        per_block: 64,
    }
}

/// The payoff oracle named in the transcript header.
pub fn transcript_oracle(t: &Transcript) -> Result<SetOracle, VerifyError> {
    let order = t.parse_order()?;
    let set = parse_set(&order, &t.payoff)?;
    Ok(set.oracle(&order)?)
}

enum Model {
    Sigma(SigmaPresentation),
    Blocks(Arc<dyn BlockFamily>),
}

struct Moves<'a> {
    order: &'a OrderExpr,
    points: &'a [Point],
}

impl Moves<'_> {
    fn a(&self, k: u32) -> Option<&Point> {
        self.points.get(2 * k as usize)
    }
    fn b(&self, k: u32) -> Option<&Point> {
        self.points.get(2 * k as usize + 1)
    }
    fn lt(&self, x: &Point, y: &Point) -> bool {
        matches!(compare(self.order, x, y), Ok(Ordering::Less))
    }
    fn inside(&self, x: &Point, lo: &Point, hi: &Point) -> bool {
        self.lt(lo, x) && self.lt(x, hi)
    }
}

/// Check a transcript against a payoff oracle over a finite probe universe.
pub fn check_transcript(
    t: &Transcript,
    oracle: &SetOracle,
    bounds: &ProbeBounds,
) -> Result<VerificationReport, VerifyError> {
    let (order, points) = t.conformed_moves()?;
    if oracle.order() != &order {
        return Err(VerifyError::OracleOrder {
            oracle: oracle.order().to_string(),
            transcript: order.to_string(),
        });
    }
    let descriptor = parse_player_two(&order, &t.strategies.player_ii)?;
    let model = match &descriptor {
        PlayerTwoDescriptor::Sigma(set) => Model::Sigma(set.presentation(&order)?),
        other => Model::Blocks(other.family().expect("block strategy").build(&order)?),
    };
    let mv = Moves {
        order: &order,
        points: &points,
    };
    let mut r = VerificationReport::empty();
    r.branches = 1;
    for kind in t.certificates.iter().map(|c| c.kind.name()) {
        r.branches_with.insert(kind.to_string(), 1);
    }

    check_nesting(&mv, &mut r);
    if let Termination::IllegalMove { player, stage, reason, .. } = &t.termination {
        r.fail(Some(*stage), None, format!("player {player} made an illegal move: {reason}"));
    }
    let completed = (points.len() / 2) as u32;

    let mut stage_seen = 0;
    let mut search = SearchState::new(&model);
    for c in &t.certificates {
        let k = c.stage;
        if k < stage_seen {
            r.fail(Some(k), None, "certificates out of stage order".into());
        }
        stage_seen = k;
        let (Some(a), Some(b)) = (mv.a(k), mv.b(k)) else {
            r.fail(Some(k), None, "certificate for a stage that was not played".into());
            continue;
        };
        match &c.kind {
            CertificateKind::SigmaExclusion { block, piece } => {
                check_exclusion(&mv, &model, &search, bounds, k, block.as_ref(), *piece, a, b, &mut r)
            }
            CertificateKind::Separation { bound, point } => {
                let Model::Blocks(family) = &model else {
                    r.fail(Some(k), None, "separation certificate from a sigma strategy".into());
                    continue;
                };
                let point = point.clone().conform(&order)?;
                r.check(point == *b, Some(k), Some(&point), || {
                    format!("separation point {point} is not b{k} = {b}")
                });
                r.check(bound <= family.index_bound(), Some(k), None, || {
                    format!("separation bound {bound} exceeds the family bound")
                });
                for y in lower_block_probes(family.as_ref(), bound, bounds) {
                    r.check(!mv.lt(&y, b), Some(k), Some(&y), || {
                        format!("probe {y} of a block below {bound} lies under b{k} = {b}")
                    });
                }
                if bound == family.index_bound() {
                    search.won = true;
                }
                search.separations.push((k, bound.clone()));
            }
            CertificateKind::DescentEvent { from, to, witness } => {
                let Model::Blocks(family) = &model else {
                    r.fail(Some(k), None, "descent certificate from a sigma strategy".into());
                    continue;
                };
                let witness = witness.clone().conform(&order)?;
                r.check(*from == search.bound, Some(k), None, || {
                    format!("descent starts at {from} but the working bound is {}", search.bound)
                });
                r.check(to < from, Some(k), None, || format!("descent {from} -> {to} does not decrease"));
                let member = family.block_contains(to, &witness).unwrap_or(false);
                r.check(member, Some(k), Some(&witness), || {
                    format!("witness {witness} is not in block {to}")
                });
                r.check(mv.lt(&witness, a), Some(k), Some(&witness), || {
                    format!("witness {witness} is not below a{k} = {a}")
                });
                for y in lower_block_probes(family.as_ref(), to, bounds) {
                    r.check(!mv.lt(&y, a), Some(k), Some(&y), || {
                        format!("probe {y} of a block below {to} lies under a{k} = {a}")
                    });
                }
                search.bound = to.clone();
                search.witness = Some(witness);
            }
            CertificateKind::Delegation { block } => {
                let Model::Blocks(family) = &model else {
                    r.fail(Some(k), None, "delegation certificate from a sigma strategy".into());
                    continue;
                };
                r.check(search.delegated.is_none(), Some(k), None, || {
                    "second delegation; delegation is permanent".into()
                });
                r.check(
                    search.separations.iter().any(|(s, bd)| *s == k && bd == block),
                    Some(k),
                    None,
                    || format!("delegation to {block} without a separation at stage {k}"),
                );
                r.check(*block == search.bound, Some(k), None, || {
                    format!("delegation to {block} but the working bound is {}", search.bound)
                });
                match &search.witness {
                    Some(y) => r.check(mv.lt(y, a), Some(k), Some(y), || {
                        format!("witness {y} for block {block} is not below a{k} = {a}")
                    }),
                    None => r.fail(Some(k), None, format!("delegation to {block} without a witness")),
                }
                for beta in &bounds.ordinals {
                    if beta <= block || beta >= family.index_bound() {
                        continue;
                    }
                    let Ok(pres) = family.block(beta) else { continue };
                    for y in pres.probes(bounds) {
                        r.check(mv.lt(&y, a), Some(k), Some(&y), || {
                            format!("probe {y} of block {beta} > {block} is not below a{k} = {a}")
                        });
                    }
                }
                search.delegated = Some((block.clone(), k));
            }
        }
    }

    check_coverage(t, &model, &search, completed, &mut r);
    check_survivors(&mv, &model, &search, oracle, bounds, completed, &mut r);
    Ok(r)
}

struct SearchState {
    bound: Ordinal,
    witness: Option<Point>,
    delegated: Option<(Ordinal, u32)>,
    separations: Vec<(u32, Ordinal)>,
    won: bool,
}

impl SearchState {
    fn new(model: &Model) -> Self {
        SearchState {
            bound: match model {
                Model::Blocks(f) => f.index_bound().clone(),
                Model::Sigma(_) => Ordinal::zero(),
            },
            witness: None,
            delegated: None,
            separations: Vec::new(),
            won: false,
        }
    }
}

fn check_nesting(mv: &Moves<'_>, r: &mut VerificationReport) {
    for (i, p) in mv.points.iter().enumerate() {
        let k = (i / 2) as u32;
        let (lower, upper) = if i % 2 == 0 {
            (i.checked_sub(2).map(|j| &mv.points[j]), i.checked_sub(1).map(|j| &mv.points[j]))
        } else {
            (Some(&mv.points[i - 1]), i.checked_sub(2).map(|j| &mv.points[j]))
        };
        let name = if i % 2 == 0 { format!("a{k}") } else { format!("b{k}") };
        if let Some(l) = lower {
            r.check(mv.lt(l, p), Some(k), Some(p), || format!("{name} = {p} is not above {l}"));
        }
        if let Some(u) = upper {
            r.check(mv.lt(p, u), Some(k), Some(p), || format!("{name} = {p} is not below {u}"));
        }
    }
}

fn lower_block_probes(family: &dyn BlockFamily, bound: &Ordinal, bounds: &ProbeBounds) -> Vec<Point> {
    bounds
        .ordinals
        .iter()
        .filter(|alpha| *alpha < bound && *alpha < family.index_bound())
        .filter_map(|alpha| family.block(alpha).ok())
        .flat_map(|pres| pres.probes(bounds))
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn check_exclusion(
    mv: &Moves<'_>,
    model: &Model,
    search: &SearchState,
    bounds: &ProbeBounds,
    k: u32,
    block: Option<&Ordinal>,
    piece: u64,
    a: &Point,
    b: &Point,
    r: &mut VerificationReport,
) {
    let pres = match (model, block) {
        (Model::Sigma(p), None) => {
            r.check(piece == u64::from(k), Some(k), None, || {
                format!("stage {k} excludes piece {piece}")
            });
            p.clone()
        }
        (Model::Blocks(family), Some(alpha)) => {
            match &search.delegated {
                Some((d, n)) if d == alpha => r.check(piece == u64::from(k - n), Some(k), None, || {
                    format!("stage {k} excludes piece {piece} of block {alpha}, expected {}", k - n)
                }),
                _ => r.fail(Some(k), None, format!("exclusion in block {alpha} before delegating to it")),
            }
            match family.block(alpha) {
                Ok(p) => p,
                Err(e) => return r.fail(Some(k), None, e.to_string()),
            }
        }
        _ => return r.fail(Some(k), None, "exclusion certificate does not match the strategy".into()),
    };
    let piece_set = pres.piece_at(piece);
    match piece_set.min_in_interval(mv.order, Some(a), Some(b)) {
        Ok(None) => r.check(true, Some(k), None, String::new),
        Ok(Some(m)) => r.fail(
            Some(k),
            Some(&m),
            format!("piece {piece} has minimum {m} inside (a{k}, b{k}) = ({a}, {b})"),
        ),
        Err(e) => r.fail(Some(k), None, e.to_string()),
    }
    for y in piece_set.probes(bounds) {
        r.check(!mv.inside(&y, a, b), Some(k), Some(&y), || {
            format!("probe {y} of piece {piece} lies inside (a{k}, b{k}) = ({a}, {b})")
        });
    }
}

/// Every completed stage must carry the exclusion the strategy owes.
fn check_coverage(t: &Transcript, model: &Model, search: &SearchState, completed: u32, r: &mut VerificationReport) {
    let start = match (model, &search.delegated) {
        (Model::Sigma(_), _) => Some(0),
        (Model::Blocks(_), Some((_, n))) => Some(*n),
        _ => None,
    };
    let Some(start) = start else { return };
    for k in start..completed {
        let present = t.certificates.iter().any(|c| {
            c.stage == k && matches!(c.kind, CertificateKind::SigmaExclusion { .. })
        });
        r.check(present, Some(k), None, || format!("stage {k} has no exclusion certificate"));
    }
}

fn check_survivors(
    mv: &Moves<'_>,
    model: &Model,
    search: &SearchState,
    oracle: &SetOracle,
    bounds: &ProbeBounds,
    completed: u32,
    r: &mut VerificationReport,
) {
    let interval = completed
        .checked_sub(1)
        .and_then(|k| Some((mv.a(k)?, mv.b(k)?)));
    for x in oracle.gen_probes(bounds) {
        if let Some((a, b)) = interval {
            if !mv.inside(&x, a, b) {
                r.check(true, None, None, String::new);
                continue;
            }
        }
        let verdict = classify(mv.order, model, search, completed, &x);
        r.check(verdict.is_ok(), None, Some(&x), || match verdict {
            Err(why) => format!("probe {x} survives to the horizon: {why}"),
            Ok(()) => unreachable!(),
        });
    }
}

/// `Ok` when a surviving probe is still scheduled for exclusion.
fn classify(order: &OrderExpr, model: &Model, search: &SearchState, completed: u32, x: &Point) -> Result<(), String> {
    match model {
        Model::Sigma(pres) => match pres.locate(order, x) {
            Ok(Some(m)) if m >= u64::from(completed) => Ok(()),
            Ok(Some(m)) => Err(format!("piece {m} was due by stage {m}")),
            Ok(None) => Err("not covered by the strategy's presentation".into()),
            Err(e) => Err(e.to_string()),
        },
        Model::Blocks(family) => {
            if search.won {
                return Err("every block was already separated".into());
            }
            let block = match family.block_of(x) {
                Ok(Some(alpha)) => alpha,
                Ok(None) => return Err("not in any block of the family".into()),
                Err(e) => return Err(e.to_string()),
            };
            match &search.delegated {
                Some((alpha, n)) => {
                    if block != *alpha {
                        return Err(format!("in block {block}, delegated block is {alpha}"));
                    }
                    let elapsed = u64::from(completed - n);
                    match family.block(alpha).and_then(|p| p.locate(order, x)) {
                        Ok(Some(m)) if m >= elapsed => Ok(()),
                        Ok(Some(m)) => Err(format!("index {m} in block {alpha} was due after {elapsed} delegated stages")),
                        Ok(None) => Err(format!("not located in block {alpha}")),
                        Err(e) => Err(e.to_string()),
                    }
                }
                None if search.witness.is_some() && block > search.bound => {
                    Err(format!("block {block} lies below the witness for {}", search.bound))
                }
                None => Ok(()),
            }
        }
    }
}

/// Exhaustive adversary settings. `budget` caps the number of leaves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Exhaustive {
    pub width: usize,
    pub depth: u32,
    pub budget: u64,
}

impl Exhaustive {
    pub fn new(width: usize, depth: u32) -> Self {
        Exhaustive {
            width,
            depth,
            budget: 1 << 20,
        }
    }

    fn leaves(&self) -> Option<u64> {
        (self.width as u64).checked_pow(self.depth)
    }
}

/// Run `visit` on the transcript of every Player I line of play through
/// the fixed menus, in parallel over disjoint subtrees. Leaves beyond the
/// budget are skipped; the flag says whether all were visited. Results
/// come back in branch order.
pub fn for_each_branch<R, F>(
    order: &OrderExpr,
    player_ii: &PlayerTwoDescriptor,
    payoff: &crate::sets::SetDescriptor,
    cfg: Exhaustive,
    visit: F,
) -> Result<(Vec<R>, bool), VerifyError>
where
    R: Send,
    F: Fn(&Transcript) -> R + Sync,
{
    let spec = MatchSpec {
        order: order.clone(),
        payoff: payoff.clone(),
        player_i: PlayerOneDescriptor::Human,
        player_ii: player_ii.clone(),
        horizon: cfg.depth,
        seed: 0,
        stop_on_early_win: false,
    };
    let root = Match::new(spec)?;
    let total = cfg.leaves().unwrap_or(u64::MAX);
    let limit = total.min(cfg.budget);
    let complete = limit == total;
    let out = explore(&root, cfg.width, cfg.depth, 0, limit, &visit)?;
    Ok((out, complete))
}

fn leaf_transcript(m: &Match) -> Transcript {
    let mut t = m.transcript();
    let moves = t
        .moves
        .iter()
        .filter(|mv| mv.player == crate::game::Player::One)
        .map(|mv| mv.point.clone())
        .collect();
    t.strategies.player_i = PlayerOneDescriptor::Scripted(moves).to_string();
    t
}

fn explore<R, F>(
    node: &Match,
    width: usize,
    remaining: u32,
    first_leaf: u64,
    limit: u64,
    visit: &F,
) -> Result<Vec<R>, VerifyError>
where
    R: Send,
    F: Fn(&Transcript) -> R + Sync,
{
    if remaining == 0 || node.is_over() {
        return Ok(vec![visit(&leaf_transcript(node))]);
    }
    let span = (width as u64).saturating_pow(remaining - 1);
    let menu = player_one_menu(node.state(), width, None).map_err(MatchError::from)?;
    let children: Vec<(u64, Point)> = menu
        .into_iter()
        .enumerate()
        .map(|(i, p)| (first_leaf.saturating_add(i as u64 * span), p))
        .filter(|(start, _)| *start < limit)
        .collect();
    let results: Result<Vec<Vec<R>>, VerifyError> = children
        .into_par_iter()
        .map(|(start, p)| {
            let mut child = node.clone();
            child.submit(p)?;
            explore(&child, width, remaining - 1, start, limit, visit)
        })
        .collect();
    Ok(results?.into_iter().flatten().collect())
}

/// Check every branch of the bounded game tree against `oracle`.
pub fn exhaustive_adversary(
    order: &OrderExpr,
    player_ii: &PlayerTwoDescriptor,
    oracle: &SetOracle,
    cfg: Exhaustive,
    bounds: &ProbeBounds,
) -> Result<VerificationReport, VerifyError> {
    let (reports, complete) = for_each_branch(order, player_ii, oracle.descriptor(), cfg, |t| {
        check_transcript(t, oracle, bounds)
    })?;
    let mut total = VerificationReport::empty();
    for r in reports {
        total = total.merge(r?);
    }
    total.complete = complete;
    Ok(total)
}

/// A single-move corruption of a clean transcript that the checker must
/// reject.
#[derive(Debug, Clone)]
pub struct Mutant {
    pub name: &'static str,
    /// Certificate kind the mutation targets.
    pub target: &'static str,
    pub clean: Transcript,
    pub mutated: Transcript,
}

pub use crate::mutation::mutation_corpus;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_order;
    use crate::runner::run_match;
    use crate::strategy::{parse_player_one, parse_player_two};

    fn run(order: &str, p1: &str, p2: &str, horizon: u32) -> Transcript {
        let order = parse_order(order).unwrap();
        let p1 = parse_player_one(&order, p1).unwrap();
        let p2 = parse_player_two(&order, p2).unwrap();
        run_match(MatchSpec::new(order, p1, p2, horizon, 0)).unwrap()
    }

    fn verify(t: &Transcript) -> VerificationReport {
        check_transcript(t, &transcript_oracle(t).unwrap(), &standard_bounds()).unwrap()
    }

    #[test]
    fn clean_sigma_run() {
        let t = run("Q", "random(3, 3)", "sigma(enumerated(e, 256))", 64);
        let r = verify(&t);
        assert!(r.is_clean(), "{:?}", r.failures);
        assert!(r.checks > 64);
    }

    #[test]
    fn nudged_b3_is_reported_at_stage_3() {
        let mut t = run("Q", "scripted(0, 1/4, 1/3, 4/11, 11/30)", "sigma(finite{1, 1/2, 2/5, 3/8})", 5);
        let order = t.parse_order().unwrap();
        let b3 = t.moves[7].point.clone().conform(&order).unwrap();
        assert_eq!(b3.to_string(), "3/8");
        let b2 = t.moves[5].point.clone().conform(&order).unwrap();
        t.moves[7].point = crate::order::between(&order, &b3, &b2).unwrap();
        let r = verify(&t);
        assert!(r.failures.iter().any(|f| f.stage == Some(3)), "{:?}", r.failures);
    }

    #[test]
    fn empty_payoff_is_vacuous() {
        let t = run("Q", "random(1, 3)", "sigma(finite{})", 8);
        assert!(verify(&t).is_clean());
    }

    #[test]
    fn wrong_oracle_order() {
        let t = run("Q", "random(1, 3)", "sigma(finite{1})", 2);
        let lex = parse_order("lex(rev(ord(w)), Q)").unwrap();
        let oracle = crate::sets::SetDescriptor::FullBlocks.oracle(&lex).unwrap();
        assert!(matches!(
            check_transcript(&t, &oracle, &standard_bounds()),
            Err(VerifyError::OracleOrder { .. })
        ));
    }

    #[test]
    fn exhaustive_counts_branches() {
        let q = OrderExpr::Rationals;
        let p2 = parse_player_two(&q, "sigma(enumerated(e, 32))").unwrap();
        let oracle = p2.default_payoff().oracle(&q).unwrap();
        let r = exhaustive_adversary(&q, &p2, &oracle, Exhaustive::new(3, 3), &standard_bounds()).unwrap();
        assert_eq!(r.branches, 27);
        assert!(r.is_clean());
        let r = exhaustive_adversary(&q, &p2, &oracle, Exhaustive::new(3, 0), &standard_bounds()).unwrap();
        assert_eq!(r.branches, 1);
        assert!(r.is_clean());
        let cfg = Exhaustive {
            budget: 10,
            ..Exhaustive::new(3, 3)
        };
        let r = exhaustive_adversary(&q, &p2, &oracle, cfg, &standard_bounds()).unwrap();
        assert_eq!(r.branches, 10);
        assert!(!r.complete);
    }

    #[test]
    fn random_runs_are_branches() {
        let q = OrderExpr::Rationals;
        let p2 = parse_player_two(&q, "sigma(enumerated(e, 32))").unwrap();
        let (branches, _) = for_each_branch(&q, &p2, &p2.default_payoff(), Exhaustive::new(3, 4), |t| {
            t.moves.clone()
        })
        .unwrap();
        for seed in 0..20 {
            let t = run("Q", &format!("random({seed}, 3)"), "sigma(enumerated(e, 32))", 4);
            assert!(branches.contains(&t.moves), "seed {seed}");
        }
    }
}
