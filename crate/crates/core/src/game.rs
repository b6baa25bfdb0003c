//! The (α, β, c, ρ) potential game on the line.
//!
//! Bob nests closed balls, Alice erases finitely many balls per turn under a
//! c-power budget. The module provides a rules engine, Alice's strategy for
//! the complement-of-gaps set of a thick Cantor set, the strategy
//! combinators (union, similarity transport, parameter relaxation), three Bob
//! players and a JSON-lines transcript format.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::core1d::CutOutSet;
use crate::error::{Error, Player, Result};
use crate::interval::{Extended, Gap, Interval};
use crate::scalar::{max_of, min_of, parse_rational, Scalar};
use num_rational::BigRational;

/// Hard cap on the number of turns of a single game.
pub const TURN_CAP: usize = 100_000;

/// Relative slack of the floating-point budget check for non-integer `c`.
pub const BUDGET_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct GameParams<T> {
    pub alpha: T,
    pub beta: T,
    pub c: T,
    pub rho: T,
}

impl<T: Scalar> GameParams<T> {
    pub fn new(alpha: T, beta: T, c: T, rho: T) -> Result<Self> {
        if alpha <= T::zero() {
            return Err(Error::Domain(format!("alpha must be positive, got {alpha}")));
        }
        if beta <= T::zero() || beta >= T::one() {
            return Err(Error::Domain(format!("beta must lie in (0,1), got {beta}")));
        }
        if c < T::zero() {
            return Err(Error::Domain(format!("c must be non-negative, got {c}")));
        }
        if rho <= T::zero() {
            return Err(Error::Domain(format!("rho must be positive, got {rho}")));
        }
        Ok(GameParams { alpha, beta, c, rho })
    }

    /// `c` as a small non-negative integer, if it is one.
    fn integer_c(&self) -> Option<u32> {
        if self.c.floor_int() == self.c {
            self.c.to_u32()
        } else {
            None
        }
    }
}

impl<T: fmt::Display> fmt::Display for GameParams<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(alpha={}, beta={}, c={}, rho={})", self.alpha, self.beta, self.c, self.rho)
    }
}

/// The closed ball `B[center, radius]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Ball<T> {
    pub center: T,
    pub radius: T,
}

impl<T: Scalar> Ball<T> {
    pub fn new(center: T, radius: T) -> Result<Self> {
        if radius <= T::zero() {
            return Err(Error::Domain(format!("ball radius must be positive, got {radius}")));
        }
        Ok(Ball { center, radius })
    }

    /// The ball whose closure is `iv`.
    pub fn from_interval(iv: &Interval<T>) -> Self {
        Ball { center: iv.midpoint(), radius: iv.length().half() }
    }

    pub fn interval(&self) -> Interval<T> {
        Interval::new(self.center.clone() - self.radius.clone(), self.center.clone() + self.radius.clone())
    }

    pub fn diameter(&self) -> T {
        self.radius.clone() + self.radius.clone()
    }

    /// Image under `x -> a x + b`.
    pub fn map_affine(&self, a: &T, b: &T) -> Self {
        Ball { center: a.clone() * self.center.clone() + b.clone(), radius: a.abs() * self.radius.clone() }
    }
}

impl<T: fmt::Display> fmt::Display for Ball<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B[{}, {}]", self.center, self.radius)
    }
}

/// Alice's erasures in one turn; empty means she passes.
#[derive(Debug, Clone, PartialEq)]
pub struct AliceMove<T> {
    pub erased: Vec<Ball<T>>,
}

impl<T> AliceMove<T> {
    pub fn pass() -> Self {
        AliceMove { erased: Vec::new() }
    }

    pub fn single(ball: Ball<T>) -> Self {
        AliceMove { erased: vec![ball] }
    }

    pub fn is_pass(&self) -> bool {
        self.erased.is_empty()
    }
}

/// One turn: Bob's ball followed by Alice's answer.
#[derive(Debug, Clone, PartialEq)]
pub struct Turn<T> {
    pub bob: Ball<T>,
    pub alice: AliceMove<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GameTranscript<T> {
    pub params: GameParams<T>,
    pub moves: Vec<Turn<T>>,
    pub outcome_enclosure: Interval<T>,
}

/// `Ok(())` for a legal move, otherwise the violated rule.
pub type Check = std::result::Result<(), String>;

pub fn validate_bob_move<T: Scalar>(params: &GameParams<T>, history: &[Turn<T>], ball: &Ball<T>) -> Check {
    if ball.radius <= T::zero() {
        return Err(format!("radius {} is not positive", ball.radius));
    }
    let Some(prev) = history.last() else {
        if ball.radius < params.rho {
            return Err(format!("ρ₀ ≥ ρ violated: {} < {}", ball.radius, params.rho));
        }
        return Ok(());
    };
    let prev = &prev.bob;
    let floor = params.beta.clone() * prev.radius.clone();
    if ball.radius < floor {
        return Err(format!("ρ_m ≥ β ρ_(m-1) violated: {} < {}", ball.radius, floor));
    }
    if !prev.interval().contains_interval(&ball.interval()) {
        return Err(format!("B_m ⊆ B_(m-1) violated: {} not inside {}", ball, prev));
    }
    Ok(())
}

pub fn validate_alice_move<T: Scalar>(params: &GameParams<T>, current_radius: &T, mv: &AliceMove<T>) -> Check {
    if mv.erased.is_empty() {
        return Ok(());
    }
    if let Some(b) = mv.erased.iter().find(|b| b.radius <= T::zero()) {
        return Err(format!("erased ball {b} has non-positive radius"));
    }
    let cap = params.alpha.clone() * current_radius.clone();
    if params.c.is_zero() {
        if mv.erased.len() > 1 {
            return Err(format!("c = 0 allows a single erased ball, got {}", mv.erased.len()));
        }
        let r = &mv.erased[0].radius;
        if r > &cap {
            return Err(format!("erased radius {r} exceeds α ρ_m = {cap}"));
        }
        return Ok(());
    }
    if let Some(k) = params.integer_c() {
        let total = mv.erased.iter().fold(T::zero(), |acc, b| acc + b.radius.powu(k));
        let budget = cap.powu(k);
        if total > budget {
            return Err(format!("Σ ρ_i^c = {total} exceeds (α ρ_m)^c = {budget}"));
        }
        return Ok(());
    }
    let c = params.c.to_f64_lossy();
    let total: f64 = mv.erased.iter().map(|b| (b.radius.clone() / cap.clone()).to_f64_lossy().powf(c)).sum();
    if total > 1.0 + BUDGET_SLACK {
        return Err(format!("Σ (ρ_i / α ρ_m)^c = {total} exceeds 1"));
    }
    Ok(())
}

type Respond<T> = dyn Fn(&GameParams<T>, &[Turn<T>], &Ball<T>) -> AliceMove<T> + Send + Sync;

/// A deterministic response function together with the parameters under
/// which its moves are guaranteed legal.
#[derive(Clone)]
pub struct Strategy<T> {
    envelope: GameParams<T>,
    label: String,
    respond: Arc<Respond<T>>,
}

impl<T: Scalar> Strategy<T> {
    pub fn from_fn<F>(envelope: GameParams<T>, label: impl Into<String>, f: F) -> Self
    where
        F: Fn(&GameParams<T>, &[Turn<T>], &Ball<T>) -> AliceMove<T> + Send + Sync + 'static,
    {
        Strategy { envelope, label: label.into(), respond: Arc::new(f) }
    }

    /// The strategy that always passes.
    pub fn passive(envelope: GameParams<T>) -> Self {
        Self::from_fn(envelope, "pass", |_, _, _| AliceMove::pass())
    }

    pub fn envelope(&self) -> &GameParams<T> {
        &self.envelope
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn respond(&self, params: &GameParams<T>, history: &[Turn<T>], ball: &Ball<T>) -> AliceMove<T> {
        (self.respond)(params, history, ball)
    }
}

impl<T: fmt::Display> fmt::Debug for Strategy<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Strategy({}, {})", self.label, self.envelope)
    }
}

/// Alice's strategy for `(-inf, 0) ∪ C ∪ (1, inf)`: erase the first gap
/// meeting Bob's ball once the ball is no longer than both of its bridges.
///
/// Declared envelope `(1/(τβ), β, 0, β/2)`.
pub fn alice_thickness_strategy<T: Scalar>(set: &CutOutSet<T>, beta: T) -> Result<Strategy<T>> {
    let hull = set.hull();
    if !hull.left.is_zero() || !hull.right.is_one() {
        return Err(Error::Domain(format!("convex hull must be [0,1], got {hull}")));
    }
    if beta <= T::zero() || beta >= T::one() {
        return Err(Error::Domain(format!("beta must lie in (0,1), got {beta}")));
    }
    let tau = match set.thickness(1).lo {
        Extended::Infinity => return Err(Error::Domain("the set has no gaps".into())),
        Extended::Finite(t) if t.is_zero() => return Err(Error::Domain("thickness is zero".into())),
        Extended::Finite(t) => t,
    };
    let alpha = T::one() / (tau.clone() * beta.clone());
    let rho = beta.half();
    let envelope = GameParams::new(alpha.clone(), beta, T::zero(), rho)?;
    let set = set.clone();
    Ok(Strategy::from_fn(envelope, format!("thickness(tau={tau})"), move |_, _, ball| {
        match thickness_target(&set, ball) {
            Some(g) => {
                let erase = Ball::from_interval(&g.interval);
                if erase.radius <= alpha.clone() * ball.radius.clone() {
                    AliceMove::single(erase)
                } else {
                    AliceMove::pass()
                }
            }
            None => AliceMove::pass(),
        }
    }))
}

fn qualifies<T: Scalar>(set: &CutOutSet<T>, g: &Gap<T>, diameter: &T) -> bool {
    let (l, r) = set.bridges(g).expect("gap of the set has bridges");
    diameter <= &min_of(l.length(), r.length())
}

/// The gap Alice's thickness strategy erases against `ball`, ignoring the
/// budget.
pub fn thickness_target<T: Scalar>(set: &CutOutSet<T>, ball: &Ball<T>) -> Option<Gap<T>> {
    let b = ball.interval();
    let g = set.first_gap_meeting(&b)?;
    let d = ball.diameter();
    if !qualifies(set, &g, &d) {
        return None;
    }
    debug_assert!(qualifying_gaps(set, ball).len() <= 1, "two gaps qualify against {ball}");
    Some(g)
}

/// Gaps meeting `ball` whose bridges are both at least as long as the ball.
///
/// For finite sets every gap is examined; for self-similar sets the first gap
/// meeting the ball and the first gaps meeting the two pieces of the ball on
/// either side of it are examined.
pub fn qualifying_gaps<T: Scalar>(set: &CutOutSet<T>, ball: &Ball<T>) -> Vec<Gap<T>> {
    let b = ball.interval();
    let d = ball.diameter();
    let candidates: Vec<Gap<T>> = match set.finite_gaps() {
        Some(gaps) => gaps.iter().filter(|g| g.meets_closed(&b)).cloned().collect(),
        None => {
            let mut v = Vec::new();
            if let Some(g) = set.first_gap_meeting(&b) {
                if b.left < *g.left() {
                    v.extend(set.first_gap_meeting(&Interval::new(b.left.clone(), g.left().clone())));
                }
                if *g.right() < b.right {
                    v.extend(set.first_gap_meeting(&Interval::new(g.right().clone(), b.right.clone())));
                }
                v.push(g);
            }
            v
        }
    };
    candidates.into_iter().filter(|g| qualifies(set, g, &d)).collect()
}

/// Plays the union of the component strategies; the declared `α` satisfies
/// `α^c = Σ α_j^c` (rounded up when the root is irrational).
pub fn combine_strategies<T: Scalar>(strategies: Vec<Strategy<T>>, c: T) -> Result<Strategy<T>> {
    if strategies.is_empty() {
        return Err(Error::Domain("no strategies to combine".into()));
    }
    if c <= T::zero() {
        return Err(Error::Domain(format!("combining needs c > 0, got {c}")));
    }
    let first = strategies[0].envelope.clone();
    for s in &strategies {
        let e = &s.envelope;
        if e.beta != first.beta || e.rho != first.rho || e.c != c {
            return Err(Error::ParamMismatch(format!("{} vs {} with c = {c}", e, first)));
        }
    }
    if strategies.len() == 1 {
        return Ok(strategies.into_iter().next().unwrap());
    }
    let alpha = combined_alpha(strategies.iter().map(|s| &s.envelope.alpha), &c);
    let envelope = GameParams::new(alpha, first.beta, c, first.rho)?;
    let label = format!("union[{}]", strategies.iter().map(|s| s.label.as_str()).collect::<Vec<_>>().join(", "));
    Ok(Strategy::from_fn(envelope, label, move |params, history, ball| {
        let erased = strategies.iter().flat_map(|s| s.respond(params, history, ball).erased).collect();
        AliceMove { erased }
    }))
}

/// `(Σ α_j^c)^(1/c)`, exact for integer `c` when the root is rational and
/// otherwise an upper bound.
pub fn combined_alpha<'a, T: Scalar>(alphas: impl Iterator<Item = &'a T>, c: &T) -> T {
    if c.floor_int() == *c {
        if let Some(k) = c.to_u32() {
            let sum = alphas.fold(T::zero(), |acc, a| acc + a.powu(k));
            return sum.root_upper(k);
        }
    }
    let cf = c.to_f64_lossy();
    let sum: f64 = alphas.map(|a| a.to_f64_lossy().powf(cf)).sum();
    let approx = sum.powf(1.0 / cf) * (1.0 + 4.0 * BUDGET_SLACK);
    T::from_f64(approx).expect("finite combined alpha")
}

/// The strategy for `f(S)`, `f(x) = ratio x + offset`, obtained by
/// conjugating every ball through `f`.
pub fn transport_similarity<T: Scalar>(s: Strategy<T>, ratio: T, offset: T) -> Result<Strategy<T>> {
    if ratio.is_zero() {
        return Err(Error::Domain("similarity ratio must be non-zero".into()));
    }
    if ratio.is_one() && offset.is_zero() {
        return Ok(s);
    }
    let e = &s.envelope;
    let envelope = GameParams::new(e.alpha.clone(), e.beta.clone(), e.c.clone(), e.rho.clone() * ratio.abs())?;
    let inv_a = T::one() / ratio.clone();
    let inv_b = -(offset.clone() / ratio.clone());
    let label = format!("{} mapped by x -> {ratio} x + {offset}", s.label);
    Ok(Strategy::from_fn(envelope, label, move |params, history, ball| {
        let pull = |b: &Ball<T>| b.map_affine(&inv_a, &inv_b);
        let inner_params = GameParams { rho: params.rho.clone() / ratio.abs(), ..params.clone() };
        let inner_history: Vec<Turn<T>> = history
            .iter()
            .map(|t| Turn { bob: pull(&t.bob), alice: AliceMove { erased: t.alice.erased.iter().map(pull).collect() } })
            .collect();
        let mv = s.respond(&inner_params, &inner_history, &pull(ball));
        AliceMove { erased: mv.erased.iter().map(|b| b.map_affine(&ratio, &offset)).collect() }
    }))
}

/// The same response function declared under looser parameters.
///
/// # Panics
///
/// The returned strategy panics if a move is ever illegal under `to`.
pub fn relax_params<T: Scalar>(s: Strategy<T>, to: GameParams<T>) -> Result<Strategy<T>> {
    let e = &s.envelope;
    if to.alpha < e.alpha || to.beta < e.beta || to.c < e.c || to.rho < e.rho {
        return Err(Error::Domain(format!("{to} does not dominate {e}")));
    }
    if &to == e {
        return Ok(s);
    }
    let check = to.clone();
    let label = format!("{} relaxed", s.label);
    Ok(Strategy::from_fn(to, label, move |params, history, ball| {
        let mv = s.respond(params, history, ball);
        if let Err(rule) = validate_alice_move(&check, &ball.radius, &mv) {
            panic!("relaxed strategy emitted an illegal move: {rule}");
        }
        mv
    }))
}

pub trait BobPlayer<T: Scalar> {
    fn name(&self) -> String;

    /// Bob's next ball; `history` is empty on the first turn.
    fn play(&mut self, params: &GameParams<T>, history: &[Turn<T>]) -> Ball<T>;
}

fn default_start<T: Scalar>(params: &GameParams<T>) -> Ball<T> {
    Ball { center: T::ratio(1, 2), radius: params.rho.clone() }
}

/// Keeps its center and shrinks by exactly `β` each turn.
#[derive(Debug, Clone)]
pub struct CenteredBob<T> {
    pub start: Option<Ball<T>>,
}

impl<T: Scalar> BobPlayer<T> for CenteredBob<T> {
    fn name(&self) -> String {
        "center".into()
    }

    fn play(&mut self, params: &GameParams<T>, history: &[Turn<T>]) -> Ball<T> {
        match history.last() {
            None => self.start.clone().unwrap_or_else(|| default_start(params)),
            Some(t) => Ball { center: t.bob.center.clone(), radius: params.beta.clone() * t.bob.radius.clone() },
        }
    }
}

/// Legal random moves on a rational grid: the shrink factor is uniform on
/// `{β + (1-β)k/K : 0 <= k < K}` and the new center uniform on a grid of the
/// admissible range.
#[derive(Debug, Clone)]
pub struct RandomBob {
    pub seed: u64,
    rng: ChaCha8Rng,
    grid: i64,
}

impl RandomBob {
    pub fn new(seed: u64) -> Self {
        RandomBob { seed, rng: ChaCha8Rng::seed_from_u64(seed), grid: 64 }
    }
}

impl<T: Scalar> BobPlayer<T> for RandomBob {
    fn name(&self) -> String {
        format!("random(seed={})", self.seed)
    }

    fn play(&mut self, params: &GameParams<T>, history: &[Turn<T>]) -> Ball<T> {
        let k = self.grid;
        match history.last() {
            None => {
                let j = self.rng.gen_range(0..=k);
                Ball { center: T::ratio(j, k), radius: params.rho.clone() }
            }
            Some(t) => {
                let prev = &t.bob;
                let i = self.rng.gen_range(0..k);
                let factor = params.beta.clone() + (T::one() - params.beta.clone()) * T::ratio(i, k);
                let radius = factor * prev.radius.clone();
                let slack = prev.radius.clone() - radius.clone();
                let j = self.rng.gen_range(0..=k);
                let shift = slack * (T::ratio(2 * j, k) - T::one());
                Ball { center: prev.center.clone() + shift, radius }
            }
        }
    }
}

/// Steers toward the canonically first gap meeting the current ball that
/// Alice has not erased yet, shrinking by `β` each turn.
#[derive(Debug, Clone)]
pub struct AdversaryBob<T> {
    pub set: CutOutSet<T>,
    pub start: Option<Ball<T>>,
}

impl<T: Scalar> AdversaryBob<T> {
    pub fn new(set: CutOutSet<T>) -> Self {
        AdversaryBob { set, start: None }
    }

    fn target(&self, ball: &Ball<T>, history: &[Turn<T>]) -> Option<Gap<T>> {
        let mut erased: Vec<Interval<T>> =
            history.iter().flat_map(|t| t.alice.erased.iter().map(|b| b.interval())).collect();
        erased.sort_by(|a, b| a.left.partial_cmp(&b.left).unwrap_or(Ordering::Equal));
        let mut best: Option<Gap<T>> = None;
        for piece in uncovered_pieces(&ball.interval(), &erased) {
            if let Some(g) = self.set.first_gap_meeting(&piece) {
                if best.as_ref().is_none_or(|b| g.canonical_cmp(b) == Ordering::Less) {
                    best = Some(g);
                }
            }
        }
        best
    }
}

impl<T: Scalar> BobPlayer<T> for AdversaryBob<T> {
    fn name(&self) -> String {
        "adversary".into()
    }

    fn play(&mut self, params: &GameParams<T>, history: &[Turn<T>]) -> Ball<T> {
        let Some(t) = history.last() else {
            return self.start.clone().unwrap_or_else(|| default_start(params));
        };
        let prev = &t.bob;
        let radius = params.beta.clone() * prev.radius.clone();
        let slack = prev.radius.clone() - radius.clone();
        let lo = prev.center.clone() - slack.clone();
        let hi = prev.center.clone() + slack;
        let center = match self.target(prev, history) {
            Some(g) => min_of(max_of(g.interval.midpoint(), lo), hi),
            None => prev.center.clone(),
        };
        Ball { center, radius }
    }
}

/// Replays a fixed list of balls, then shrinks about the last center.
#[derive(Debug, Clone)]
pub struct ScriptedBob<T> {
    pub script: Vec<Ball<T>>,
}

impl<T: Scalar> BobPlayer<T> for ScriptedBob<T> {
    fn name(&self) -> String {
        "scripted".into()
    }

    fn play(&mut self, params: &GameParams<T>, history: &[Turn<T>]) -> Ball<T> {
        match self.script.get(history.len()) {
            Some(b) => b.clone(),
            None => CenteredBob { start: None }.play(params, history),
        }
    }
}

/// Closed pieces of `iv` left after removing the open interiors of the
/// (sorted) intervals in `covers`.
fn uncovered_pieces<T: Scalar>(iv: &Interval<T>, covers: &[Interval<T>]) -> Vec<Interval<T>> {
    let mut out = Vec::new();
    let mut cursor = iv.left.clone();
    for c in covers {
        if c.right <= cursor || c.left >= iv.right {
            continue;
        }
        if c.left > cursor {
            out.push(Interval::new(cursor.clone(), c.left.clone()));
        }
        cursor = max_of(cursor, c.right.clone());
        if cursor >= iv.right {
            return out;
        }
    }
    if cursor <= iv.right {
        out.push(Interval::new(cursor, iv.right.clone()));
    }
    out
}

/// Plays until Bob's radius drops below `stop_radius`, validating every
/// move against `params`.
pub fn run_game<T: Scalar>(
    alice: &Strategy<T>,
    bob: &mut dyn BobPlayer<T>,
    params: &GameParams<T>,
    stop_radius: &T,
) -> Result<GameTranscript<T>> {
    if stop_radius <= &T::zero() {
        return Err(Error::Domain(format!("stop radius must be positive, got {stop_radius}")));
    }
    let mut moves: Vec<Turn<T>> = Vec::new();
    while moves.len() < TURN_CAP {
        let ball = bob.play(params, &moves);
        validate_bob_move(params, &moves, &ball).map_err(|rule| Error::IllegalMove { player: Player::Bob, rule })?;
        let mv = alice.respond(params, &moves, &ball);
        validate_alice_move(params, &ball.radius, &mv)
            .map_err(|rule| Error::IllegalMove { player: Player::Alice, rule })?;
        let done = &ball.radius < stop_radius;
        moves.push(Turn { bob: ball, alice: mv });
        if done {
            let outcome_enclosure = moves.last().unwrap().bob.interval();
            return Ok(GameTranscript { params: params.clone(), moves, outcome_enclosure });
        }
    }
    Err(Error::Nontermination(TURN_CAP))
}

impl<T: Scalar> GameTranscript<T> {
    /// Re-checks every move in order.
    pub fn revalidate(&self) -> Result<()> {
        for (m, t) in self.moves.iter().enumerate() {
            validate_bob_move(&self.params, &self.moves[..m], &t.bob)
                .map_err(|rule| Error::IllegalMove { player: Player::Bob, rule: format!("turn {m}: {rule}") })?;
            validate_alice_move(&self.params, &t.bob.radius, &t.alice)
                .map_err(|rule| Error::IllegalMove { player: Player::Alice, rule: format!("turn {m}: {rule}") })?;
        }
        match self.moves.last() {
            Some(t) if t.bob.interval() == self.outcome_enclosure => Ok(()),
            _ => Err(Error::Domain("outcome enclosure is not the final ball".into())),
        }
    }

    /// Every ball Alice erased during the game, as closed intervals.
    pub fn erased_intervals(&self) -> Vec<Interval<T>> {
        self.moves.iter().flat_map(|t| t.alice.erased.iter().map(|b| b.interval())).collect()
    }

    /// One JSON object per line: a header with the parameters, one line per
    /// turn and a closing line with the outcome enclosure.
    pub fn to_jsonl(&self) -> String {
        let s = |x: &T| x.to_string();
        let ball = |b: &Ball<T>| BallRecord { center: s(&b.center), radius: s(&b.radius) };
        let mut lines = vec![Line::Header {
            alpha: s(&self.params.alpha),
            beta: s(&self.params.beta),
            c: s(&self.params.c),
            rho: s(&self.params.rho),
        }];
        for (m, t) in self.moves.iter().enumerate() {
            lines.push(Line::Move { m, bob: ball(&t.bob), alice: t.alice.erased.iter().map(ball).collect() });
        }
        lines.push(Line::Outcome { left: s(&self.outcome_enclosure.left), right: s(&self.outcome_enclosure.right) });
        let mut out = String::new();
        for l in lines {
            out.push_str(&serde_json::to_string(&l).expect("serializable line"));
            out.push('\n');
        }
        out
    }

    /// Inverse of [`GameTranscript::to_jsonl`], given a parser for numbers.
    pub fn from_jsonl_with(text: &str, parse: impl Fn(&str) -> Option<T>) -> Result<Self> {
        let num = |x: &str| parse(x).ok_or_else(|| Error::Parse(format!("bad number {x:?}")));
        let ball =
            |b: &BallRecord| -> Result<Ball<T>> { Ok(Ball { center: num(&b.center)?, radius: num(&b.radius)? }) };
        let mut params = None;
        let mut moves = Vec::new();
        let mut outcome = None;
        for (i, raw) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let line: Line = serde_json::from_str(raw).map_err(|e| Error::Parse(format!("line {}: {e}", i + 1)))?;
            match line {
                Line::Header { alpha, beta, c, rho } => {
                    params = Some(GameParams::new(num(&alpha)?, num(&beta)?, num(&c)?, num(&rho)?)?)
                }
                Line::Move { m, bob, alice } => {
                    if m != moves.len() {
                        return Err(Error::Parse(format!("line {}: expected turn {}, got {m}", i + 1, moves.len())));
                    }
                    let erased = alice.iter().map(&ball).collect::<Result<Vec<_>>>()?;
                    moves.push(Turn { bob: ball(&bob)?, alice: AliceMove { erased } });
                }
                Line::Outcome { left, right } => outcome = Some(Interval::new(num(&left)?, num(&right)?)),
            }
        }
        Ok(GameTranscript {
            params: params.ok_or_else(|| Error::Parse("missing header line".into()))?,
            moves,
            outcome_enclosure: outcome.ok_or_else(|| Error::Parse("missing outcome line".into()))?,
        })
    }
}

impl GameTranscript<BigRational> {
    pub fn from_jsonl(text: &str) -> Result<Self> {
        Self::from_jsonl_with(text, parse_rational)
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct BallRecord {
    center: String,
    radius: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
enum Line {
    Header { alpha: String, beta: String, c: String, rho: String },
    Move { m: usize, bob: BallRecord, alice: Vec<BallRecord> },
    Outcome { left: String, right: String },
}

/// What a membership oracle knows about a closed interval and the target set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    Meets,
    Disjoint,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// The outcome enclosure lies inside Alice's erasures.
    Erased,
    /// The part of the enclosure Alice left alone meets the target set.
    InsideS,
    /// The part of the enclosure Alice left alone misses the target set.
    Counterexample,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Erased => "erased",
            Verdict::InsideS => "inside_S",
            Verdict::Counterexample => "counterexample",
        })
    }
}

/// Checks "not erased implies inside S" on the outcome enclosure.
pub fn verify_winning_run<T: Scalar>(
    t: &GameTranscript<T>,
    membership: impl Fn(&Interval<T>) -> Membership,
) -> Result<Verdict> {
    t.revalidate()?;
    let mut erased = t.erased_intervals();
    erased.sort_by(|a, b| a.left.partial_cmp(&b.left).unwrap_or(Ordering::Equal));
    let enclosure = &t.outcome_enclosure;
    let pieces = uncovered_pieces(enclosure, &erased);
    let free: Vec<_> = pieces.into_iter().filter(|p| !covered_by(p, &erased)).collect();
    if free.is_empty() {
        return Ok(Verdict::Erased);
    }
    let answers: Vec<Membership> = free.iter().map(&membership).collect();
    if answers.contains(&Membership::Meets) {
        Ok(Verdict::InsideS)
    } else if answers.iter().all(|m| *m == Membership::Disjoint) {
        Ok(Verdict::Counterexample)
    } else {
        Err(Error::Unknown(format!("membership of {enclosure} undecided; lower the stop radius")))
    }
}

fn covered_by<T: Scalar>(piece: &Interval<T>, erased: &[Interval<T>]) -> bool {
    piece.is_degenerate() && erased.iter().any(|e| e.contains(&piece.left))
}

/// Exact oracle for `(-inf, 0) ∪ C ∪ (1, inf)`: an interval misses it exactly
/// when it lies inside a single gap of `C`.
pub fn complement_of_gaps_oracle<T: Scalar>(set: &CutOutSet<T>) -> impl Fn(&Interval<T>) -> Membership + '_ {
    move |iv| match set.first_gap_meeting(iv) {
        Some(g) if g.left() < &iv.left && &iv.right < g.right() => Membership::Disjoint,
        _ => Membership::Meets,
    }
}

/// Oracle using only the gaps of stage at most `depth`; intervals strictly
/// inside a construction interval and containing no known point of `C` are
/// reported as unknown.
pub fn truncated_oracle<T: Scalar>(set: &CutOutSet<T>, depth: usize) -> Result<impl Fn(&Interval<T>) -> Membership> {
    let hull = set.hull();
    let cut = set.truncated_cutout(depth)?;
    let gaps: Vec<Gap<T>> = cut.finite_gaps().unwrap_or(&[]).to_vec();
    let exhaustive = set.is_finite();
    Ok(move |iv: &Interval<T>| {
        if iv.left < hull.left || iv.right > hull.right || iv.contains(&hull.left) || iv.contains(&hull.right) {
            return Membership::Meets;
        }
        if gaps.iter().any(|g| g.left() < &iv.left && &iv.right < g.right()) {
            return Membership::Disjoint;
        }
        if exhaustive || gaps.iter().any(|g| iv.contains(g.left()) || iv.contains(g.right())) {
            return Membership::Meets;
        }
        Membership::Unknown
    })
}
