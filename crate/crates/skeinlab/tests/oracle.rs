//! The naive resolver against hand values, the memoized engine and the
//! parallel runner.

mod support;

use rand::rngs::StdRng;
use rand::SeedableRng;
use skeinlab::corpus;
use skeinlab::parallel::Runner;
use skeinlab_core::{MorseWord, Scalar, SkeinEngine};
use support::{naive_eval, random_closure};

fn d() -> Scalar {
    Scalar::delta(1, 1).unwrap()
}

fn a(e: i32) -> Scalar {
    Scalar::a_pow(1, 1, e).unwrap()
}

#[test]
fn naive_hand_values() {
    let mut rng = StdRng::seed_from_u64(7);
    let z = Scalar::z(1);
    let cases = [
        (MorseWord::braid_closure(1, &[]), d()),
        (MorseWord::braid_closure(2, &[1]), &a(1) * &d()),
        (MorseWord::braid_closure(2, &[-1]), &a(-1) * &d()),
        (MorseWord::braid_closure(2, &[]), &d() * &d()),
        // Hopf: δ² + z q^t δ
        (MorseWord::braid_closure(2, &[1, 1]), &(&d() * &d()) + &(&(&z * &a(1)) * &d())),
    ];
    for (w, expected) in cases {
        for _ in 0..4 {
            assert_eq!(naive_eval(&w, &mut rng), expected, "{:?}", w.events);
        }
    }
}

#[test]
fn naive_matches_engine_on_builtin_plane_corpus() {
    let e = SkeinEngine::default();
    let mut rng = StdRng::seed_from_u64(11);
    for (name, w) in corpus::builtin() {
        if w.surface != skeinlab_core::Surface::Plane {
            continue;
        }
        let expected = e.eval_one_colour(&w).unwrap();
        for _ in 0..5 {
            assert_eq!(naive_eval(&w, &mut rng), expected, "{}", name);
        }
    }
}

#[test]
fn naive_matches_engine_on_random_closures() {
    let e = SkeinEngine::default();
    let mut rng = StdRng::seed_from_u64(2024);
    for _ in 0..60 {
        let w = random_closure(&mut rng, 6);
        assert_eq!(naive_eval(&w, &mut rng), e.eval_one_colour(&w).unwrap(), "{:?}", w.events);
    }
}

#[test]
fn runner_agrees_with_single_thread_engine() {
    let e = SkeinEngine::default();
    let par = Runner::new(4, false).unwrap();
    let det = Runner::new(0, true).unwrap();
    assert_eq!(det.threads(), 1);
    let mut rng = StdRng::seed_from_u64(99);
    for _ in 0..30 {
        let w = random_closure(&mut rng, 7);
        let expected = e.eval_one_colour(&w).unwrap();
        assert_eq!(par.eval(&w).unwrap(), expected);
        assert_eq!(det.eval(&w).unwrap(), expected);
        let delta = expected.coproduct().unwrap();
        let ledger = skeinlab_core::conventions::ConventionLedger::CALIBRATED;
        assert_eq!(par.state_sum(&w, 2, ledger).unwrap(), delta);
    }
}
