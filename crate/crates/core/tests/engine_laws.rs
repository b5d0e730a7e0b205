mod common;

use proptest::prelude::*;
use skeinlab_core::diagram::moves::{self, Move};
use skeinlab_core::diagram::Trace;
use skeinlab_core::skein::{writhe, NoMemo};
use skeinlab_core::{Colour, Event, MorseWord, Scalar, SkeinEngine, Turn};

fn eval(w: &MorseWord) -> Scalar {
    SkeinEngine::default().eval_one_colour(w).unwrap()
}

fn a(p: i32) -> Scalar {
    Scalar::a_pow(1, 1, p).unwrap()
}

fn q(p: i32) -> Scalar {
    Scalar::q_pow(1, p)
}

#[test]
fn defining_relations() {
    let d = Scalar::delta(1, 1).unwrap();
    assert_eq!(eval(&MorseWord::braid_closure(1, &[])), d);
    assert_eq!(eval(&MorseWord::braid_closure(2, &[1])), &a(1) * &d);
    assert_eq!(eval(&MorseWord::braid_closure(2, &[-1])), &a(-1) * &d);
    assert_eq!(eval(&MorseWord::braid_closure(2, &[])), &d * &d);
    assert!(eval(&MorseWord::empty()).is_one());
}

#[test]
fn hand_reduced_links() {
    let d = Scalar::delta(1, 1).unwrap();
    let z = Scalar::z(1);
    let hopf = &d * &d + &(&z * &a(1)) * &d;
    assert_eq!(eval(&MorseWord::braid_closure(2, &[1, 1])), hopf);
    let trefoil = &d * &(&(&a(1) * &q(2)) + &(&a(1) * &q(-2)) - a(-1));
    assert_eq!(eval(&MorseWord::braid_closure(2, &[1, 1, 1])), trefoil);
}

#[test]
fn skein_relation_holds_at_a_crossing() {
    // L+ - L- = z L0 on the figure-eight at each crossing.
    let w = MorseWord::braid_closure(3, &[1, -2, 1, -2]);
    for (i, ev) in w.events.iter().enumerate() {
        if let Event::Crossing { .. } = ev {
            let flipped = skeinlab_core::skein::flip_crossing(&w, i);
            let t = Trace::new(&w).unwrap();
            let ci = t.crossing_of_event[i].unwrap();
            let sign = t.crossings[ci].sign;
            let profile = &w.profiles().unwrap()[i];
            let pos = ev.pos();
            let smooth = skeinlab_core::skein::smooth_crossing(
                &w,
                i,
                profile[pos - 1],
                profile[pos],
                Colour::Slot(1),
            );
            let (plus, minus) = if sign > 0 { (&w, &flipped) } else { (&flipped, &w) };
            assert_eq!(eval(plus) - eval(minus), &Scalar::z(1) * &eval(&smooth));
        }
    }
}

#[test]
fn multi_colour_examples() {
    let e = SkeinEngine::default();
    let green = MorseWord::plane(vec![Event::Cup { pos: 1, turn: Turn::Right, colour: Colour::Slot(1) }, Event::cap(1, Turn::Left)]);
    let red = green.recolour(|_| Colour::Slot(2));
    let d = |i| Scalar::delta(i, 2).unwrap();
    assert_eq!(e.eval_multi_colour(&green.disjoint_union(&red), 2).unwrap(), &d(1) * &d(2));
    assert_eq!(e.eval_multi_colour(&green.disjoint_union(&green), 2).unwrap(), &d(1) * &d(1));
    // A green-red Hopf pattern: mixed crossings are transparent.
    let mut mixed = MorseWord::braid_closure(2, &[1, 1]);
    if let Event::Cup { colour, .. } = &mut mixed.events[1] {
        *colour = Colour::Slot(2);
    }
    assert!(mixed.validate().is_ok());
    assert_eq!(e.eval_multi_colour(&mixed, 2).unwrap(), &d(1) * &d(2));
}

#[test]
fn orange_examples() {
    let e = SkeinEngine::default();
    let circle = MorseWord::plane(vec![Event::Cup { pos: 1, turn: Turn::Right, colour: Colour::Orange }, Event::cap(1, Turn::Left)]);
    let d = |i| Scalar::delta(i, 2).unwrap();
    assert_eq!(e.eval_with_orange(&circle, 2).unwrap(), d(1) + d(2));
    let kinked = MorseWord::braid_closure(2, &[1]).recolour(|_| Colour::Orange);
    let ai = |i| Scalar::a_pow(2, i, 1).unwrap();
    assert_eq!(e.eval_with_orange(&kinked, 2).unwrap(), &ai(1) * &d(1) + &ai(2) * &d(2));
}

#[test]
fn budget_is_reported() {
    let e = SkeinEngine::new(NoMemo).with_budget(1);
    let err = e.eval_one_colour(&MorseWord::braid_closure(2, &[1, 1])).unwrap_err();
    assert!(err.to_string().contains("budget"), "{}", err);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn collapse_at_t_equal_one(w in common::closed(8)) {
        let v = eval(&w).specialize_fraction(&[1]).unwrap();
        prop_assert_eq!(v, Scalar::q_pow(0, writhe(&w).unwrap()));
    }

    #[test]
    fn mirror_law(w in common::closed(7)) {
        prop_assert_eq!(eval(&w.mirror()), eval(&w).bar());
    }

    #[test]
    fn reversal_law(w in common::closed(7)) {
        prop_assert_eq!(eval(&w.reverse()), eval(&w));
    }

    #[test]
    fn disjoint_union_law(x in common::closed(4), y in common::closed(4)) {
        prop_assert_eq!(eval(&x.disjoint_union(&y)), &eval(&x) * &eval(&y));
    }

    #[test]
    fn memo_does_not_change_values(w in common::closed(6)) {
        let plain = SkeinEngine::new(NoMemo).eval_one_colour(&w).unwrap();
        prop_assert_eq!(plain, eval(&w));
    }

    #[test]
    fn isotopy_moves(w in common::closed(5), picks in prop::collection::vec(any::<u64>(), 1..4)) {
        let before = eval(&w);
        let mut cur = w;
        let mut curls = 0;
        for p in picks {
            let cands = moves::candidates(&cur);
            let mv = cands[(p % cands.len() as u64) as usize];
            if let Move::Curl { .. } = mv {
                curls += 1;
            }
            cur = moves::apply(&cur, mv).unwrap();
        }
        prop_assert_eq!(eval(&cur), &before * &a(curls));
    }

    #[test]
    fn curls_of_both_turnings_agree(w in common::closed(4), p in any::<u64>()) {
        let profiles = w.profiles().unwrap();
        let spots: Vec<(usize, usize)> = profiles
            .iter()
            .enumerate()
            .flat_map(|(at, pr)| (1..=pr.len()).map(move |pos| (at, pos)))
            .collect();
        prop_assume!(!spots.is_empty());
        let (at, pos) = spots[(p % spots.len() as u64) as usize];
        let ccw = moves::apply(&w, Move::Curl { at, pos, ccw: true }).unwrap();
        let cw = moves::apply(&w, Move::Curl { at, pos, ccw: false }).unwrap();
        prop_assert_eq!(eval(&ccw), eval(&cw));
    }
}
