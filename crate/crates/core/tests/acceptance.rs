//! Acceptance suite: one PASS/FAIL line per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use thickness::core1d::CutOutSet;
use thickness::dimension::{box_dimension_estimate, dim_lower_bound_1d, verify_region_claim};
use thickness::game::{
    alice_thickness_strategy, combine_strategies, complement_of_gaps_oracle, relax_params, run_game,
    transport_similarity, verify_winning_run, AdversaryBob, Ball, BobPlayer, CenteredBob, GameParams, RandomBob,
    Strategy, Verdict,
};
use thickness::gaplemma1d::{check_gap_lemma, find_intersection, sharpness_counterexample};
use thickness::gaplemmard::{check_gap_lemma_rd, directional_interval, verify_directional, DirectionalQuery};
use thickness::interval::{Extended, Interval};
use thickness::patterns1d::{
    ap_upper_bound_middle, distance_contains, find_3ap, longest_ap_truncated, pattern_capacity, pattern_condition,
};
use thickness::setsrd::{
    fy_thickness, thickness_rd, uniform_dense_check, BoxRd, CubeRd, CubeSystem, FYCutOutSpec, PointRd,
};
use thickness::{q, Rational};

type Q = Rational;
type Outcome = std::result::Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rand_q(rng: &mut ChaCha8Rng, lo: &Q, hi: &Q, den: i64) -> Q {
    let k = rng.gen_range(0..=den);
    lo.clone() + (hi.clone() - lo.clone()) * q(k, den)
}

fn iv(a: Q, b: Q) -> Interval<Q> {
    Interval::new(a, b)
}

fn pow10(k: u32) -> Q {
    Q::from_integer(num_traits::pow(BigInt::from(10), k as usize))
}

fn m(eps: Q) -> CutOutSet<Q> {
    CutOutSet::middle_cantor(eps).unwrap()
}

// Thickness of a finite cut-out, removing the gaps in the given order.
fn ordered_thickness(hull: &(Q, Q), gaps: &[(Q, Q)]) -> Extended<Q> {
    let mut best = Extended::Infinity;
    for (i, (a, b)) in gaps.iter().enumerate() {
        let mut left = hull.0.clone();
        let mut right = hull.1.clone();
        for (c, d) in &gaps[..i] {
            if d <= a && d > &left {
                left = d.clone();
            }
            if c >= b && c < &right {
                right = c.clone();
            }
        }
        let l = a.clone() - left;
        let r = right - b.clone();
        let bridge = if l < r { l } else { r };
        let v = Extended::Finite(bridge / (b.clone() - a.clone()));
        if v < best {
            best = v;
        }
    }
    best
}

// Shortest gap or construction interval through the given stage.
fn stage_scale(c: &CutOutSet<Q>, stage: usize) -> Q {
    let l = c.min_interval_length_at_stage(stage);
    match c.min_gap_length_through_stage(stage) {
        Some(g) if g < l => g,
        _ => l,
    }
}

// ---------------------------------------------------------------------------

fn criterion_1() -> Outcome {
    for (n, d) in [(1, 3), (1, 2), (1, 5), (3, 5), (1, 7)] {
        let eps = q(n, d);
        let want = (q(1, 1) - eps.clone()) / (q(2, 1) * eps.clone());
        let got = m(eps.clone()).thickness(1);
        check(got.value() == Some(&want), || format!("eps = {eps}: got {got}, want {want}"))?;
    }
    Ok("5 exact values".into())
}

fn criterion_2() -> Outcome {
    let seed = 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut orderings = 0;
    for case in 0..1000 {
        let k = rng.gen_range(2..=8);
        let mut x = q(0, 1);
        let mut gaps = Vec::new();
        for _ in 0..k {
            x += q(rng.gen_range(1..=6), rng.gen_range(1..=3));
            let len = q(rng.gen_range(1..=2), 2);
            gaps.push((x.clone(), x.clone() + len.clone()));
            x += len;
        }
        let hull = (q(0, 1), x + q(rng.gen_range(1..=6), rng.gen_range(1..=3)));
        // force a tie
        if gaps.iter().all(|(a, b)| b.clone() - a.clone() != gaps[0].1.clone() - gaps[0].0.clone()) {
            return Err(format!("case {case}: no tie generated"));
        }
        let base = CutOutSet::explicit(
            iv(hull.0.clone(), hull.1.clone()),
            gaps.iter().map(|(a, b)| iv(a.clone(), b.clone())).collect(),
        )
        .map_err(|e| format!("case {case}: {e}"))?;
        let want = base.thickness(1);
        for _ in 0..5 {
            let mut order = gaps.clone();
            order.shuffle(&mut rng);
            // non-increasing length; ties stay in shuffled order
            order.sort_by(|p, r| (r.1.clone() - r.0.clone()).partial_cmp(&(p.1.clone() - p.0.clone())).unwrap());
            let oracle = ordered_thickness(&hull, &order);
            check(want.lo == oracle && want.is_exact(), || format!("case {case}: library {want}, oracle {oracle}"))?;
            let permuted = CutOutSet::explicit(
                iv(hull.0.clone(), hull.1.clone()),
                order.iter().map(|(a, b)| iv(a.clone(), b.clone())).collect(),
            )
            .unwrap();
            check(permuted.thickness(1) == want, || format!("case {case}: input order changed thickness"))?;
            orderings += 1;
        }
    }
    Ok(format!("1000 sets, {orderings} tie orderings, seed {seed}"))
}

fn criterion_3() -> Outcome {
    let seed = 3;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut passing = 0;
    let mut tried = 0;
    let mut worst = q(0, 1);
    while passing < 500 {
        tried += 1;
        if tried > 5000 {
            return Err(format!("only {passing} passing pairs in 5000 draws"));
        }
        let eps = q(rng.gen_range(1..=10), rng.gen_range(30..=40)).min(q(1, 3));
        let c = m(eps.clone());
        let mut a = rand_q(&mut rng, &q(1, 10), &q(2, 1), 97);
        if rng.gen_bool(0.5) {
            a = -a;
        }
        let (blo, bhi) = if a.is_positive() { (-a.clone(), q(1, 1)) } else { (q(0, 1), q(1, 1) - a.clone()) };
        let b = rand_q(&mut rng, &blo, &bhi, 997);
        let d = c.homothety(&a, &b).unwrap();
        let report = check_gap_lemma(&c, &d, 1).map_err(|e| e.to_string())?;
        if !report.passes() {
            continue;
        }
        passing += 1;
        let tol = stage_scale(&c, 25).min(stage_scale(&d, 25)).min(q(1, 1_000_000_000));
        let w = find_intersection(&c, &d, &tol).map_err(|e| format!("eps {eps}, a {a}, b {b}: {e}"))?;
        check(w.error_bound <= q(1, 1_000_000_000), || format!("eps {eps}, a {a}, b {b}: bound {}", w.error_bound))?;
        check(c.truncation_contains(&w.point, 25) && d.truncation_contains(&w.point, 25), || {
            format!("eps {eps}, a {a}, b {b}: witness {} outside a depth-25 truncation", w.point)
        })?;
        if w.error_bound > worst {
            worst = w.error_bound.clone();
        }
    }
    Ok(format!("500 passing pairs of {tried} drawn, largest bound {:.3e}, seed {seed}", worst.to_f64().unwrap()))
}

fn criterion_4() -> Outcome {
    let seed = 4;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..100 {
        let t1 = q(rng.gen_range(1..=40), rng.gen_range(1..=20));
        let t2 = rand_q(&mut rng, &q(0, 1), &(q(1, 1) / t1.clone()), 101);
        if t2.is_zero() || t1.clone() * t2.clone() >= q(1, 1) {
            continue;
        }
        let (c1, c2) = sharpness_counterexample(&t1, &t2).map_err(|e| format!("({t1}, {t2}): {e}"))?;
        let desc = |c: &CutOutSet<Q>| {
            let h = c.hull();
            let gaps: Vec<(Q, Q)> =
                c.finite_gaps().unwrap().iter().map(|g| (g.left().clone(), g.right().clone())).collect();
            ((h.left, h.right), gaps)
        };
        let (h1, g1) = desc(&c1);
        let (h2, g2) = desc(&c2);
        check(ordered_thickness(&h1, &g1) == Extended::Finite(t1.clone()), || format!("case {case}: tau1"))?;
        check(ordered_thickness(&h2, &g2) == Extended::Finite(t2.clone()), || format!("case {case}: tau2"))?;
        check(c1.thickness(1).value() == Some(&t1) && c2.thickness(1).value() == Some(&t2), || {
            format!("case {case}: library thickness")
        })?;
        let comps = |h: &(Q, Q), g: &[(Q, Q)]| {
            let mut pts = vec![h.0.clone()];
            let mut sorted = g.to_vec();
            sorted.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            for (a, b) in sorted {
                pts.push(a);
                pts.push(b);
            }
            pts.push(h.1.clone());
            pts.chunks(2).map(|w| (w[0].clone(), w[1].clone())).collect::<Vec<_>>()
        };
        let k1 = comps(&h1, &g1);
        let k2 = comps(&h2, &g2);
        let disjoint = k1.iter().all(|a| k2.iter().all(|b| a.1 < b.0 || b.1 < a.0));
        check(disjoint, || format!("case {case}: sets meet"))?;
        check(h1.0 <= h2.1 && h2.0 <= h1.1, || format!("case {case}: hulls disjoint"))?;
        let inside = |h: &(Q, Q), g: &[(Q, Q)]| g.iter().any(|(a, b)| a < &h.0 && &h.1 < b);
        check(!inside(&h1, &g2) && !inside(&h2, &g1), || format!("case {case}: one set lies in a gap"))?;
    }
    Ok(format!("100 pairs, seed {seed}"))
}

fn criterion_5() -> Outcome {
    let v = dim_lower_bound_1d(&q(1, 1)).map_err(|e| e.to_string())?.value;
    check((v - 0.630929753571).abs() <= 1e-9, || format!("bound at tau = 1 is {v}"))?;
    for tau in [q(1, 2), q(1, 1), q(2, 1), q(10, 1)] {
        let min = verify_region_claim(&tau, 10_000).map_err(|e| e.to_string())?;
        check((min - 1.0).abs() <= 1e-9, || format!("region minimum {min} at tau = {tau}"))?;
    }
    for eps in [q(1, 3), q(1, 2), q(1, 5)] {
        let c = m(eps.clone());
        let tau = c.thickness(1).value().cloned().unwrap();
        let bound = dim_lower_bound_1d(&tau).unwrap().value;
        let boxd = box_dimension_estimate(&c, 12).unwrap();
        let exact = 2f64.ln() / (2.0 / (1.0 - eps.to_f64().unwrap())).ln();
        check((bound - boxd).abs() <= 1e-6 && (bound - exact).abs() <= 1e-9, || {
            format!("eps {eps}: bound {bound}, box {boxd}, log 2 / log(2/(1-eps)) = {exact}")
        })?;
    }
    Ok(format!("dim bound at tau = 1 is {v:.12}"))
}

fn criterion_6() -> Outcome {
    let c = m(q(1, 3));
    let w = longest_ap_truncated(&c, 5, 10).map_err(|e| e.to_string())?;
    let bound = ap_upper_bound_middle(&q(1, 3)).unwrap();
    check(w.length as u64 == bound && bound == 4, || format!("length {} vs bound {bound}", w.length))?;
    let terms = w.terms();
    check(terms == vec![q(0, 1), q(1, 3), q(2, 3), q(1, 1)], || format!("witness {terms:?}"))?;
    check(terms.iter().all(|t| c.truncation_contains(t, 40)), || "witness not in C".into())?;
    for depth in 1..=6 {
        let w = longest_ap_truncated(&c, depth, 5).map_err(|e| e.to_string())?;
        check(w.length <= 4, || format!("length-5 progression at depth {depth}"))?;
    }
    Ok("length 4: 0, 1/3, 2/3, 1".into())
}

fn criterion_7() -> Outcome {
    let seed = 7;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..50 {
        let eps = q(rng.gen_range(1..=10), rng.gen_range(30..=40)).min(q(1, 3));
        let mut a = rand_q(&mut rng, &q(1, 3), &q(3, 1), 89);
        if rng.gen_bool(0.5) {
            a = -a;
        }
        let b = rand_q(&mut rng, &q(-2, 1), &q(2, 1), 101);
        let c = m(eps.clone()).homothety(&a, &b).unwrap();
        let tol = stage_scale(&c, 25).min(q(1, 1_000_000_000));
        let (w, bound) = find_3ap(&c, &tol).map_err(|e| format!("case {case}: {e}"))?;
        check(bound <= tol, || format!("case {case}: bound {bound}"))?;
        let terms = w.terms();
        check(terms.iter().all(|t| c.truncation_contains(t, 25)), || {
            format!("case {case}: eps {eps}, a {a}, b {b}: terms {terms:?} not all in the depth-25 truncation")
        })?;
        // the right end of the central gap of M_eps, mapped by the normalization
        let lambda = (q(1, 1) - eps.clone()) / q(2, 1);
        let h = c.hull();
        let middle = h.left.clone() + h.length() * (q(1, 1) - lambda);
        check(terms[1] == middle, || format!("case {case}: middle term {} vs {middle}", terms[1]))?;
        check(w.step.is_positive(), || format!("case {case}: non-positive step"))?;
    }
    Ok(format!("50 images, seed {seed}"))
}

fn criterion_8() -> Outcome {
    let seed = 8;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = m(q(1, 3));
    let tol = stage_scale(&c, 20).min(q(1, 1_000_000_000_000));
    let mut ts = vec![q(0, 1), q(1, 1), q(1, 2), q(1, 3), q(2, 3)];
    while ts.len() < 200 {
        ts.push(q(rng.gen_range(0..=9973), 9973));
    }
    for t in &ts {
        let w = distance_contains(&c, t, &tol).map_err(|e| format!("t = {t}: {e}"))?;
        let x = w.point.clone();
        let y = x.clone() + t.clone();
        check(c.truncation_contains(&x, 20) && c.truncation_contains(&y, 20), || {
            format!("t = {t}: witness {x}, {y} outside the depth-20 truncation")
        })?;
        check(w.error_bound <= tol, || format!("t = {t}: bound {}", w.error_bound))?;
    }
    Ok(format!("200 distances, seed {seed}"))
}

fn criterion_9() -> Outcome {
    let stop = q(1, 1_000_000_000_000);
    let sets = [m(q(1, 3)), m(q(1, 4))];
    let strategies: Vec<Strategy<Q>> = sets.iter().map(|c| alice_thickness_strategy(c, q(1, 4)).unwrap()).collect();
    let mut tally = [0usize; 3];
    let mut start_rng = ChaCha8Rng::seed_from_u64(9);
    for seed in 0..1000u64 {
        let k = (seed % 2) as usize;
        let (set, s) = (&sets[k], &strategies[k]);
        let p = s.envelope().clone();
        let start = Ball::new(rand_q(&mut start_rng, &q(0, 1), &q(1, 1), 1000), p.rho.clone()).unwrap();
        let mut bob: Box<dyn BobPlayer<Q>> = match seed % 4 {
            0 | 1 => Box::new(RandomBob::new(seed)),
            2 => Box::new(AdversaryBob { set: set.clone(), start: Some(start) }),
            _ => Box::new(CenteredBob { start: Some(start) }),
        };
        let t = run_game(s, bob.as_mut(), &p, &stop).map_err(|e| format!("seed {seed} ({}): {e}", bob.name()))?;
        let v = verify_winning_run(&t, complement_of_gaps_oracle(set)).map_err(|e| format!("seed {seed}: {e}"))?;
        match v {
            Verdict::Erased => tally[0] += 1,
            Verdict::InsideS => tally[1] += 1,
            Verdict::Counterexample => return Err(format!("seed {seed} ({}): counterexample", bob.name())),
        }
    }
    // combined strategies with c = 1
    let c = &sets[0];
    let beta = q(1, 4);
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + seed);
        let count = rng.gen_range(2..=4);
        let parts: Vec<Strategy<Q>> = (0..count)
            .map(|_| {
                let shift = q(rng.gen_range(-20..=20), 97);
                let s =
                    transport_similarity(alice_thickness_strategy(c, beta.clone()).unwrap(), q(1, 1), shift).unwrap();
                let to = GameParams { c: q(1, 1), ..s.envelope().clone() };
                relax_params(s, to).unwrap()
            })
            .collect();
        let sum = parts.iter().fold(q(0, 1), |a, s| a + s.envelope().alpha.clone());
        let all = combine_strategies(parts, q(1, 1)).map_err(|e| e.to_string())?;
        let p = all.envelope().clone();
        check(p.alpha == sum, || format!("combined seed {seed}: alpha {} vs sum {sum}", p.alpha))?;
        let t = run_game(&all, &mut RandomBob::new(seed), &p, &q(1, 1_000_000))
            .map_err(|e| format!("combined seed {seed}: {e}"))?;
        for turn in &t.moves {
            let used = turn.alice.erased.iter().fold(q(0, 1), |a, b| a + b.radius.clone());
            check(used <= p.alpha.clone() * turn.bob.radius.clone(), || format!("combined seed {seed}: budget"))?;
        }
    }
    Ok(format!(
        "1000 games (seeds 0..1000; random, adversary, centered), {} erased, {} inside S; 100 combined games (seeds 1000..1100)",
        tally[0], tally[1]
    ))
}

// ln and e as exact rational partial sums with tail bounds below 1e-40.
fn atanh_inv(n: i64, terms: u32) -> Q {
    // atanh(1/n) = sum 1/((2k+1) n^(2k+1))
    let x = q(1, n);
    let x2 = x.clone() * x.clone();
    let mut p = x;
    let mut s = q(0, 1);
    for k in 0..terms {
        s += p.clone() / Q::from_integer(BigInt::from(2 * k + 1));
        p *= x2.clone();
    }
    s
}

fn ln2() -> Q {
    q(2, 1) * atanh_inv(3, 45)
}

fn ln10() -> Q {
    // ln 10 = 3 ln 2 + ln(5/4), ln(5/4) = 2 atanh(1/9)
    q(3, 1) * ln2() + q(2, 1) * atanh_inv(9, 30)
}

fn euler() -> Q {
    let mut s = q(0, 1);
    let mut f = q(1, 1);
    for k in 1..40 {
        s += f.clone();
        f /= Q::from_integer(BigInt::from(k));
    }
    s
}

fn capacity_oracle(k: u32) -> u64 {
    // floor(log 4 / (4 e 720^2) * tau / log tau), tau = 10^k
    let tau = pow10(k);
    let ln_tau = Q::from_integer(BigInt::from(k)) * ln10();
    let v = q(2, 1) * ln2() / (q(4, 1) * euler() * q(720 * 720, 1)) * tau / ln_tau;
    let fl = v.floor();
    let frac = v - fl.clone();
    assert!(frac > pow10(25).recip() && frac < q(1, 1) - pow10(25).recip(), "too close to an integer");
    fl.to_integer().to_u64().unwrap()
}

fn criterion_10() -> Outcome {
    let o9 = capacity_oracle(9);
    let o6 = capacity_oracle(6);
    check(o9 == 11 && o6 == 0, || format!("oracle gives {o9} and {o6}"))?;
    let c9 = pattern_capacity(1e9).map_err(|e| e.to_string())?;
    let c6 = pattern_capacity(1e6).map_err(|e| e.to_string())?;
    check(c9 == 11 && c6 == 0, || format!("pattern_capacity gives {c9} and {c6}"))?;
    for k in [8, 9, 10] {
        let tau = 10f64.powi(k);
        let n = pattern_capacity(tau).unwrap();
        check(n == capacity_oracle(k as u32), || format!("capacity at 1e{k}: {n}"))?;
        if n >= 1 {
            check(pattern_condition(n, tau).unwrap(), || format!("condition fails at 1e{k} with n = {n}"))?;
        }
    }
    Ok("N(1e9) = 11, N(1e6) = 0".into())
}

fn criterion_11() -> Outcome {
    let s = CubeSystem::corner_cantor(2, 10, q(7, 50)).unwrap();
    let tau = thickness_rd(&s, 6);
    let width = tau.width().ok_or("infinite enclosure")?;
    check(tau.contains(&q(21, 10)) && width <= q(1, 1000), || format!("enclosure {tau}"))?;
    let r = q(13, 75);
    let dense = uniform_dense_check(&s, &r, 6).map_err(|e| e.to_string())?;
    check(dense.dense, || format!("not dense: {:?}", dense.witness))?;
    let rep = check_gap_lemma_rd(&s, &s, &r, 6).map_err(|e| e.to_string())?;
    check(rep.passes(), || format!("gap lemma report {rep:?}"))?;
    let a = directional_interval(&s, &r).map_err(|e| e.to_string())?;
    check(a == q(26, 49), || format!("a = {a}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut dirs: Vec<(Q, Q)> = vec![(q(1, 1), q(0, 1)), (q(0, 1), q(1, 1)), (q(1, 1), q(1, 1)), (q(1, 1), q(-1, 1))];
    dirs.extend([(q(-1, 1), q(0, 1)), (q(0, 1), q(-1, 1)), (q(-1, 1), q(-1, 1)), (q(-1, 1), q(1, 1))]);
    while dirs.len() < 20 {
        let x = q(rng.gen_range(-50..=50), 50);
        let y = q(rng.gen_range(-50..=50), 50);
        if !(x.is_zero() && y.is_zero()) {
            dirs.push((x, y));
        }
    }
    let mut count = 0;
    for (x, y) in &dirs {
        for k in 0..20 {
            let t = a.clone() * q(k, 19);
            let query = DirectionalQuery::new(PointRd(vec![x.clone(), y.clone()]), t.clone()).unwrap();
            let w = verify_directional(&s, &query, 5).map_err(|e| e.to_string())?;
            check(w.is_some(), || format!("direction ({x}, {y}), t = {t}: covers disjoint"))?;
            count += 1;
        }
    }
    Ok(format!("tau = {tau}, a = 26/49, {count} directional checks at depth 5"))
}

fn criterion_12() -> Outcome {
    let s = CubeSystem::corner_cantor(1, 2, q(2, 3)).unwrap();
    let tau = thickness_rd(&s, 6);
    let newhouse = m(q(1, 3)).thickness(20);
    check(tau.value() == Some(&q(1, 1)) && newhouse.value() == Some(&q(1, 1)), || {
        format!("cube system {tau}, Newhouse {newhouse}")
    })?;
    let hull = CubeRd::new(PointRd(vec![q(1, 2), q(1, 2)]), q(1, 2)).unwrap();
    let mut gaps = vec![BoxRd::new(vec![q(1, 3), q(1, 3)], vec![q(2, 3), q(2, 3)]).unwrap()];
    for i in 0..3 {
        for j in 0..3 {
            if (i, j) != (1, 1) {
                gaps.push(
                    BoxRd::new(vec![q(3 * i + 1, 9), q(3 * j + 1, 9)], vec![q(3 * i + 2, 9), q(3 * j + 2, 9)]).unwrap(),
                );
            }
        }
    }
    let carpet = FYCutOutSpec::new(hull, gaps).map_err(|e| e.to_string())?;
    let fy = fy_thickness(&carpet);
    check(fy == Extended::Finite(q(1, 1)), || format!("carpet thickness {fy}"))?;
    Ok("both equal 1".into())
}

fn main() {
    let criteria: [(usize, fn() -> Outcome); 12] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
        (11, criterion_11),
        (12, criterion_12),
    ];
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (n, f) in criteria {
        if !only.is_empty() && !only.contains(&n) {
            continue;
        }
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(msg) => println!("criterion {n:>2}: PASS ({secs:.1}s) {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {n:>2}: FAIL ({secs:.1}s) {msg}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
