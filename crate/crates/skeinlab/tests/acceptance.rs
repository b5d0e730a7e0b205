//! The acceptance suite: one PASS/FAIL line per criterion, with the time
//! each one took. Runs as a plain binary so the lines stay readable.

mod support;

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use skeinlab::corpus;
use skeinlab_core::conventions::ConventionLedger;
use skeinlab_core::coproduct::{coproduct, coproduct_iterated, CoproductElement, Side};
use skeinlab_core::diagram::moves::{self, Move};
use skeinlab_core::jaeger::state_sum;
use skeinlab_core::laurent::{Exponents, LaurentPoly};
use skeinlab_core::skein::writhe;
use skeinlab_core::{Framing, MorseWord, Scalar, SkeinEngine, Strand, Surface};
use support::{naive_eval, random_braid, random_closure};

const L: ConventionLedger = ConventionLedger::CALIBRATED;

type Outcome = Result<String, String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn within(t: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(t < limit, || format!("{} took {:?}, limit {:?}", what, t, limit))
}

fn d(i: usize, n: usize) -> Scalar {
    Scalar::delta(i, n).unwrap()
}

fn a(n: usize, i: usize, e: i32) -> Scalar {
    Scalar::a_pow(n, i, e).unwrap()
}

/// Closed plane diagrams of the built-in corpus.
fn plane_corpus() -> Vec<(String, MorseWord)> {
    corpus::builtin()
        .into_iter()
        .filter(|(_, w)| w.surface == Surface::Plane)
        .collect()
}

fn c1_defining_relations() -> Outcome {
    let cases = [
        ("unknot", MorseWord::braid_closure(1, &[]), d(1, 1)),
        ("kinked unknot", MorseWord::braid_closure(2, &[1]), &a(1, 1, 1) * &d(1, 1)),
        ("2-unlink", MorseWord::braid_closure(2, &[]), &d(1, 1) * &d(1, 1)),
    ];
    let mut worst = Duration::ZERO;
    for (name, w, expected) in cases {
        let e = SkeinEngine::default();
        let start = Instant::now();
        let v = e.eval_one_colour(&w).map_err(|x| x.to_string())?;
        let t = start.elapsed();
        ensure(v == expected, || format!("{}: got {}, want {}", name, v, expected))?;
        within(t, Duration::from_millis(1), name)?;
        worst = worst.max(t);
    }
    Ok(format!("slowest {:?}", worst))
}

fn random_scalar(rng: &mut StdRng) -> Scalar {
    let terms: Vec<(Exponents, BigInt)> = (0..rng.gen_range(0..6))
        .map(|_| {
            let mut e = Exponents::new();
            e.push(rng.gen_range(-4..=4));
            e.push(rng.gen_range(-4..=4));
            (e, BigInt::from(rng.gen_range(-9i64..=9)))
        })
        .collect();
    Scalar::from_parts(LaurentPoly::from_terms(1, terms), rng.gen_range(0..4))
}

fn c2_scalar_coproduct() -> Outcome {
    let dt = a(1, 1, 1).coproduct().map_err(|e| e.to_string())?;
    ensure(dt == &a(2, 1, 1) * &a(2, 2, 1), || format!("Δ(q^t) = {}", dt))?;
    let dd = d(1, 1).coproduct().map_err(|e| e.to_string())?;
    let want = &(&d(1, 2) * &a(2, 2, 1)) + &(&a(2, 1, -1) * &d(2, 2));
    ensure(dd == want, || format!("Δ(δ) = {}", dd))?;
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for k in 0..100 {
        let s = random_scalar(&mut rng);
        let ds = s.coproduct().map_err(|e| e.to_string())?;
        let l = ds.coproduct_at(1).map_err(|e| e.to_string())?;
        let r = ds.coproduct_at(2).map_err(|e| e.to_string())?;
        ensure(l == r, || format!("element {} ({}): {} vs {}", k, s, l, r))?;
    }
    Ok("anchors and 100 random elements".into())
}

fn c3_jaeger() -> Outcome {
    let e = SkeinEngine::default();
    let start = Instant::now();
    let corpus = plane_corpus();
    for (name, w) in &corpus {
        let lhs = state_sum(&e, w, 2, L).map_err(|x| x.to_string())?;
        let rhs = e
            .eval_one_colour(w)
            .and_then(|v| v.coproduct().map_err(Into::into))
            .map_err(|x| x.to_string())?;
        ensure(lhs == rhs, || format!("{}: {} vs {}", name, lhs, rhs))?;
    }
    let t = start.elapsed();
    within(t, Duration::from_secs(10), "state sums")?;
    Ok(format!("{} diagrams in {:?}", corpus.len(), t))
}

fn c4_path_agreement() -> Outcome {
    let e = SkeinEngine::default();
    let corpus = plane_corpus();
    for (name, w) in &corpus {
        let boxes = coproduct(w, L)
            .and_then(|x| x.evaluate(&e))
            .map_err(|x| x.to_string())?;
        let sum = state_sum(&e, w, 2, L).map_err(|x| x.to_string())?;
        ensure(boxes == sum, || format!("{}: {} vs {}", name, boxes, sum))?;
    }
    Ok(format!("{} diagrams", corpus.len()))
}

fn c5_coassociativity() -> Outcome {
    let e = SkeinEngine::default();
    let start = Instant::now();
    let corpus = plane_corpus();
    for (name, w) in &corpus {
        let s3 = state_sum(&e, w, 3, L).map_err(|x| x.to_string())?;
        for side in [Side::Left, Side::Right] {
            let v = coproduct_iterated(w, 3, side, L)
                .and_then(|x| x.evaluate(&e))
                .map_err(|x| x.to_string())?;
            ensure(v == s3, || format!("{} {:?}: {} vs {}", name, side, v, s3))?;
        }
    }
    let t = start.elapsed();
    within(t, Duration::from_secs(60), "coassociativity")?;
    Ok(format!("{} diagrams in {:?}", corpus.len(), t))
}

fn c6_counit() -> Outcome {
    let e = SkeinEngine::default();
    let corpus = plane_corpus();
    for (name, w) in &corpus {
        let h = e.eval_one_colour(w).map_err(|x| x.to_string())?;
        let x = coproduct(w, L).map_err(|x| x.to_string())?;
        for slot in [1, 2] {
            let v = x
                .counit_slot(slot)
                .and_then(|y| y.evaluate(&e))
                .map_err(|x| x.to_string())?;
            ensure(v == h, || format!("{} slot {}: {} vs {}", name, slot, v, h))?;
        }
    }
    Ok(format!("{} diagrams, both slots", corpus.len()))
}

fn c7_framing_remark() -> Outcome {
    let empty = |f| MorseWord::annulus(Vec::new(), Vec::new(), f);
    for (f, green, red) in [
        (Framing::Radial, Scalar::one(2), Scalar::one(2)),
        (Framing::Blackboard, a(2, 2, 1), a(2, 1, -1)),
    ] {
        let core = MorseWord::annulus(vec![Strand::up()], Vec::new(), f);
        let got = coproduct(&core, L).map_err(|x| x.to_string())?;
        let mut want = CoproductElement::zero(2);
        want.add_term(vec![core.clone(), empty(f)], green);
        want.add_term(vec![empty(f), core.clone()], red);
        ensure(got == want, || format!("{:?}: got {:?}", f, got.terms))?;
    }
    Ok("radial and blackboard, term by term".into())
}

fn core_power(n: usize, f: Framing) -> MorseWord {
    MorseWord::annulus(vec![Strand::up(); n], Vec::new(), f)
}

fn c8_multiplicativity() -> Outcome {
    let e = SkeinEngine::default();
    let corpus = plane_corpus();
    let mut pairs = 0;
    for (n1, w1) in &corpus {
        for (n2, w2) in &corpus {
            if w1.crossing_count() + w2.crossing_count() > 6 {
                continue;
            }
            let ev = |w: &MorseWord| coproduct(w, L).and_then(|x| x.evaluate(&e));
            let lhs = ev(&w1.disjoint_union(w2)).map_err(|x| x.to_string())?;
            let rhs = &ev(w1).map_err(|x| x.to_string())? * &ev(w2).map_err(|x| x.to_string())?;
            ensure(lhs == rhs, || format!("{} ⊔ {}: {} vs {}", n1, n2, lhs, rhs))?;
            pairs += 1;
        }
    }
    for f in [Framing::Radial, Framing::Blackboard] {
        let dz = coproduct(&core_power(1, f), L).map_err(|x| x.to_string())?;
        let mut power = dz.clone();
        for n in 1..=3 {
            if n > 1 {
                power = power.mul(&dz).map_err(|x| x.to_string())?;
            }
            let direct = coproduct(&core_power(n, f), L).map_err(|x| x.to_string())?;
            for k in 0..=2 {
                let lhs = direct.annulus_eval_family(&e, k).map_err(|x| x.to_string())?;
                let rhs = power.annulus_eval_family(&e, k).map_err(|x| x.to_string())?;
                ensure(lhs == rhs, || format!("{:?} z^{} at level {}", f, n, k))?;
            }
        }
    }
    Ok(format!("{} plane pairs; z, z², z³ at k ≤ 2 in both framings", pairs))
}

fn c9_collapse_laws() -> Outcome {
    let e = SkeinEngine::default();
    let mut rng = StdRng::seed_from_u64(9);
    let start = Instant::now();
    for k in 0..200 {
        let w = random_closure(&mut rng, 8);
        let h = e.eval_one_colour(&w).map_err(|x| x.to_string())?;
        let wr = writhe(&w).map_err(|x| x.to_string())?;
        let at_one = h.specialize(&[1]).map_err(|x| x.to_string())?;
        let q_wr = Scalar::q_pow(0, wr).numerator().clone();
        ensure(at_one == q_wr, || format!("case {}: t = 1 gives {:?}, writhe {}", k, at_one, wr))?;
        let m = e.eval_one_colour(&w.mirror()).map_err(|x| x.to_string())?;
        ensure(m == h.bar(), || format!("case {}: mirror", k))?;
        let r = e.eval_one_colour(&w.reverse()).map_err(|x| x.to_string())?;
        ensure(r == h, || format!("case {}: reversal", k))?;
    }
    let t = start.elapsed();
    within(t, Duration::from_secs(120), "collapse laws")?;
    Ok(format!("200 braids in {:?}", t))
}

fn c10_oracle() -> Outcome {
    let e = SkeinEngine::default();
    let mut rng = StdRng::seed_from_u64(10);
    let corpus = plane_corpus();
    let mut n = 0;
    for (name, w) in &corpus {
        if w.crossing_count() > 8 {
            continue;
        }
        let v = e.eval_one_colour(w).map_err(|x| x.to_string())?;
        for _ in 0..3 {
            let o = naive_eval(w, &mut rng);
            ensure(o == v, || format!("{}: naive {} vs engine {}", name, o, v))?;
        }
        n += 1;
    }
    for k in 0..50 {
        let w = random_closure(&mut rng, 8);
        let v = e.eval_one_colour(&w).map_err(|x| x.to_string())?;
        let o = naive_eval(&w, &mut rng);
        ensure(o == v, || format!("fuzzed case {}: naive {} vs engine {}", k, o, v))?;
    }
    Ok(format!("{} corpus diagrams and 50 fuzzed braids", n))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Kind {
    R2,
    R3,
    ZigZag,
    TwistFlip,
    Commute,
}

const KINDS: [Kind; 5] = [Kind::R2, Kind::R3, Kind::ZigZag, Kind::TwistFlip, Kind::Commute];

fn kind_of(m: &Move) -> Option<Kind> {
    match m {
        Move::InsertR2 { .. } => Some(Kind::R2),
        Move::R3 { .. } => Some(Kind::R3),
        Move::ZigZag { .. } => Some(Kind::ZigZag),
        Move::Commute { .. } => Some(Kind::Commute),
        Move::Curl { .. } => None,
    }
}

/// A base diagram and a perturbed copy presenting the same framed link.
fn perturbed_pair(rng: &mut StdRng, kind: Kind) -> Option<(MorseWord, MorseWord)> {
    let n = if kind == Kind::R3 { rng.gen_range(3..=4) } else { rng.gen_range(2..=4) };
    let len = rng.gen_range(0..=3);
    let mut word = random_braid(rng, n, len);
    if kind == Kind::R3 {
        // Plant a braid-relation triple so the move has somewhere to act.
        let g = rng.gen_range(1..n as i32 - 1);
        let s = if rng.gen_bool(0.5) { 1 } else { -1 };
        let at = rng.gen_range(0..=word.len());
        word.splice(at..at, [s * g, s * (g + 1), s * g]);
    }
    perturb(rng, MorseWord::braid_closure(n, &word), kind)
}

fn perturb(rng: &mut StdRng, base: MorseWord, kind: Kind) -> Option<(MorseWord, MorseWord)> {
    if kind == Kind::TwistFlip {
        let profiles = base.profiles().ok()?;
        let spots: Vec<(usize, usize)> = profiles
            .iter()
            .enumerate()
            .flat_map(|(at, p)| (1..=p.len()).map(move |pos| (at, pos)))
            .collect();
        let (at, pos) = spots[rng.gen_range(0..spots.len())];
        let ccw = moves::apply(&base, Move::Curl { at, pos, ccw: true })?;
        let cw = moves::apply(&base, Move::Curl { at, pos, ccw: false })?;
        return Some((ccw, cw));
    }
    let cands: Vec<Move> = moves::candidates(&base)
        .into_iter()
        .filter(|m| kind_of(m) == Some(kind))
        .collect();
    if cands.is_empty() {
        return None;
    }
    let mut moved = moves::apply(&base, cands[rng.gen_range(0..cands.len())])?;
    // A second, arbitrary framing-preserving move on top.
    let extra: Vec<Move> = moves::candidates(&moved)
        .into_iter()
        .filter(|m| kind_of(m).is_some())
        .collect();
    if rng.gen_bool(0.5) && !extra.is_empty() {
        moved = moves::apply(&moved, extra[rng.gen_range(0..extra.len())])?;
    }
    Some((base, moved))
}

fn c11_isotopy() -> Outcome {
    let e = SkeinEngine::default();
    let mut rng = StdRng::seed_from_u64(11);
    let mut done = [0usize; 5];
    let mut cases = 0;
    let mut attempts = 0;
    while cases < 50 {
        attempts += 1;
        if attempts > 1000 {
            return Err("could not build 50 perturbed cases".into());
        }
        let ki = cases % KINDS.len();
        let Some((w, moved)) = perturbed_pair(&mut rng, KINDS[ki]) else {
            continue;
        };
        ensure(moved.validate().is_ok(), || format!("{:?} produced an invalid word", KINDS[ki]))?;
        let h = |x: &MorseWord| e.eval_one_colour(x).map_err(|x| x.to_string());
        ensure(h(&w)? == h(&moved)?, || format!("case {} ({:?}): eval changed", cases, KINDS[ki]))?;
        let dv = |x: &MorseWord| {
            coproduct(x, L)
                .and_then(|c| c.evaluate(&e))
                .map_err(|x| x.to_string())
        };
        ensure(dv(&w)? == dv(&moved)?, || format!("case {} ({:?}): Δ changed", cases, KINDS[ki]))?;
        done[ki] += 1;
        cases += 1;
    }
    Ok(format!(
        "50 cases: R2 {}, R3 {}, zig-zag {}, twist-flip {}, commutation {}",
        done[0], done[1], done[2], done[3], done[4]
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("defining relations", c1_defining_relations),
        ("scalar coproduct", c2_scalar_coproduct),
        ("jaeger composition", c3_jaeger),
        ("path agreement", c4_path_agreement),
        ("coassociativity", c5_coassociativity),
        ("counit", c6_counit),
        ("framing remark", c7_framing_remark),
        ("multiplicativity", c8_multiplicativity),
        ("collapse laws", c9_collapse_laws),
        ("oracle equivalence", c10_oracle),
        ("isotopy invariance", c11_isotopy),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let t = start.elapsed();
        match outcome {
            Ok(note) => println!("PASS {:>2} {:<20} {:>10.3?}  {}", i + 1, name, t, note),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {:<20} {:>10.3?}  {}", i + 1, name, t, why);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
