#![allow(dead_code)]

use proptest::prelude::*;
use skeinlab_core::MorseWord;

/// Closures of random braids on 1..=4 strands with at most `max_len` letters.
pub fn braid_closure(max_len: usize) -> impl Strategy<Value = (usize, Vec<i32>)> {
    (1usize..=4).prop_flat_map(move |n| {
        let letters = if n == 1 {
            Just(Vec::new()).boxed()
        } else {
            let g = n as i32 - 1;
            prop::collection::vec((1..=g, any::<bool>()), 0..=max_len)
                .prop_map(|v| v.into_iter().map(|(i, s)| if s { i } else { -i }).collect())
                .boxed()
        };
        (Just(n), letters)
    })
}

pub fn closed(max_len: usize) -> impl Strategy<Value = MorseWord> {
    braid_closure(max_len).prop_map(|(n, w)| MorseWord::braid_closure(n, &w))
}

/// The built-in plane corpus as braid closures.
pub fn plane_corpus() -> Vec<(&'static str, MorseWord)> {
    vec![
        ("unknot", MorseWord::braid_closure(1, &[])),
        ("unknot cw", MorseWord::braid_closure(1, &[]).reverse()),
        ("kinked +", MorseWord::braid_closure(2, &[1])),
        ("kinked -", MorseWord::braid_closure(2, &[-1])),
        ("hopf", MorseWord::braid_closure(2, &[1, 1])),
        ("trefoil", MorseWord::braid_closure(2, &[1, 1, 1])),
        ("trefoil mirror", MorseWord::braid_closure(2, &[-1, -1, -1])),
        ("figure eight", MorseWord::braid_closure(3, &[1, -2, 1, -2])),
        ("unlink", MorseWord::braid_closure(2, &[])),
    ]
}

/// A closed braid pushed through a few isotopy moves, so that cups, caps and
/// crossings between oppositely oriented strands all occur.
pub fn perturbed(max_len: usize) -> impl Strategy<Value = MorseWord> {
    (closed(max_len), prop::collection::vec(any::<u64>(), 1..4)).prop_map(|(mut w, picks)| {
        for p in picks {
            let c = skeinlab_core::diagram::moves::candidates(&w);
            w = skeinlab_core::diagram::moves::apply(&w, c[(p % c.len() as u64) as usize]).unwrap();
        }
        w
    })
}
