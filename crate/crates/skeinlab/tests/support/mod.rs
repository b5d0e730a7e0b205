//! Shared test helpers: a naive skein resolver used as an oracle, and
//! seeded diagram generators.

#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;
use skeinlab_core::{Colour, Event, MorseWord, Orientation, Over, Scalar, Turn};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum End {
    Bottom,
    Top,
}

/// A passage through a crossing: crossing index and whether it is the
/// over strand.
type Passage = Option<(usize, bool)>;

struct Seg {
    up: bool,
    /// Partner of the bottom and top end.
    link: [Option<(usize, End, Passage)>; 2],
}

struct XInfo {
    event: usize,
    sign: i32,
    left: Orientation,
    right: Orientation,
}

struct Traced {
    segs: Vec<Seg>,
    crossings: Vec<XInfo>,
}

fn idx(e: End) -> usize {
    match e {
        End::Bottom => 0,
        End::Top => 1,
    }
}

fn join(segs: &mut [Seg], a: (usize, End), b: (usize, End), via_a: Passage, via_b: Passage) {
    segs[a.0].link[idx(a.1)] = Some((b.0, b.1, via_a));
    segs[b.0].link[idx(b.1)] = Some((a.0, a.1, via_b));
}

fn trace(w: &MorseWord) -> Traced {
    let mut segs: Vec<Seg> = Vec::new();
    let mut crossings = Vec::new();
    let mut level: Vec<usize> = Vec::new();
    let new_seg = |segs: &mut Vec<Seg>, up: bool| {
        segs.push(Seg { up, link: [None, None] });
        segs.len() - 1
    };
    for (k, e) in w.events.iter().enumerate() {
        match *e {
            Event::Cup { pos, turn, .. } => {
                let (l, r) = turn.cup_legs();
                let a = new_seg(&mut segs, l == Orientation::Up);
                let b = new_seg(&mut segs, r == Orientation::Up);
                join(&mut segs, (a, End::Bottom), (b, End::Bottom), None, None);
                level.splice(pos - 1..pos - 1, [a, b]);
            }
            Event::Cap { pos, .. } => {
                let (a, b) = (level[pos - 1], level[pos]);
                join(&mut segs, (a, End::Top), (b, End::Top), None, None);
                level.drain(pos - 1..=pos);
            }
            Event::Crossing { pos, over } => {
                let (a, b) = (level[pos - 1], level[pos]);
                let (ua, ub) = (segs[a].up, segs[b].up);
                // Both strands upward with the left one over is positive;
                // reversing either strand reverses the sign.
                let mut sign = if over == Over::Left { 1 } else { -1 };
                if !ua {
                    sign = -sign;
                }
                if !ub {
                    sign = -sign;
                }
                let c = crossings.len();
                let orient = |up: bool| if up { Orientation::Up } else { Orientation::Down };
                crossings.push(XInfo {
                    event: k,
                    sign,
                    left: orient(ua),
                    right: orient(ub),
                });
                let nl = new_seg(&mut segs, ub);
                let nr = new_seg(&mut segs, ua);
                let a_over = over == Over::Left;
                let pa = Some((c, a_over));
                let pb = Some((c, !a_over));
                join(&mut segs, (a, End::Top), (nr, End::Bottom), pa, pa);
                join(&mut segs, (b, End::Top), (nl, End::Bottom), pb, pb);
                level[pos - 1] = nl;
                level[pos] = nr;
            }
        }
    }
    assert!(level.is_empty(), "oracle needs a closed plane word");
    Traced { segs, crossings }
}

impl Traced {
    /// Components as cyclic segment lists in travel order.
    fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.segs.len()];
        let mut out = Vec::new();
        for s0 in 0..self.segs.len() {
            if seen[s0] {
                continue;
            }
            let mut comp = Vec::new();
            let mut s = s0;
            while !seen[s] {
                seen[s] = true;
                comp.push(s);
                let exit = if self.segs[s].up { End::Top } else { End::Bottom };
                let (next, entry, _) = self.segs[s].link[idx(exit)].expect("closed");
                let expect = if self.segs[next].up { End::Bottom } else { End::Top };
                assert_eq!(entry, expect, "orientation mismatch in oracle tracer");
                s = next;
            }
            out.push(comp);
        }
        out
    }

    fn exit_passage(&self, s: usize) -> Passage {
        let exit = if self.segs[s].up { End::Top } else { End::Bottom };
        self.segs[s].link[idx(exit)].expect("closed").2
    }
}

fn smooth(w: &MorseWord, x: &XInfo) -> MorseWord {
    let pos = w.events[x.event].pos();
    let mut out = w.clone();
    if x.left == x.right {
        out.events.remove(x.event);
    } else {
        // Opposite strands: the two bottom ends join under a cap and the two
        // top ends leave from a cup.
        let cap = Event::cap(
            pos,
            if x.left == Orientation::Up { Turn::Right } else { Turn::Left },
        );
        let cup = Event::Cup {
            pos,
            turn: if x.right == Orientation::Up { Turn::Left } else { Turn::Right },
            colour: Colour::default(),
        };
        out.events.splice(x.event..=x.event, [cap, cup]);
    }
    out
}

fn flip(w: &mut MorseWord, event: usize) {
    if let Event::Crossing { over, .. } = &mut w.events[event] {
        *over = over.flip();
    }
}

/// Framed HOMFLYPT value of a closed one-colour plane word by the full
/// binary skein tree. Base points and the order in which bad crossings are
/// switched are drawn from `rng`; nothing is cached.
pub fn naive_eval(w: &MorseWord, rng: &mut StdRng) -> Scalar {
    let t = trace(w);
    let mut comps = t.components();
    comps.shuffle(rng);
    for c in comps.iter_mut() {
        let k = rng.gen_range(0..c.len());
        c.rotate_left(k);
    }
    // First passage through every crossing, and the component of each pass.
    let mut first: Vec<Option<bool>> = vec![None; t.crossings.len()];
    let mut comp_of: Vec<Vec<usize>> = vec![Vec::new(); t.crossings.len()];
    for (ci, c) in comps.iter().enumerate() {
        for &s in c {
            if let Some((x, over)) = t.exit_passage(s) {
                if first[x].is_none() {
                    first[x] = Some(over);
                }
                comp_of[x].push(ci);
            }
        }
    }
    let mut bad: Vec<usize> = (0..t.crossings.len())
        .filter(|&x| first[x] == Some(false))
        .collect();
    bad.shuffle(rng);

    let z = Scalar::z(1);
    let mut acc = Scalar::zero(1);
    let mut cur = w.clone();
    let mut signs: Vec<i32> = t.crossings.iter().map(|x| x.sign).collect();
    for x in bad {
        let info = &t.crossings[x];
        let sub = naive_eval(&smooth(&cur, info), rng);
        let term = &z * &sub;
        acc = if info.sign > 0 { &acc + &term } else { &acc - &term };
        flip(&mut cur, info.event);
        signs[x] = -signs[x];
    }
    let self_writhe: i32 = (0..t.crossings.len())
        .filter(|&x| comp_of[x][0] == comp_of[x][1])
        .map(|x| signs[x])
        .sum();
    let delta = Scalar::delta(1, 1).unwrap();
    let desc = delta
        .pow(comps.len() as i64)
        .unwrap()
        .mul_a_monomial(&[self_writhe]);
    &acc + &desc
}

/// A random braid word on `n` strands with `len` letters.
pub fn random_braid(rng: &mut StdRng, n: usize, len: usize) -> Vec<i32> {
    if n < 2 {
        return Vec::new();
    }
    (0..len)
        .map(|_| {
            let g = rng.gen_range(1..n as i32);
            if rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect()
}

/// A random closed braid with at most `max_crossings` crossings.
pub fn random_closure(rng: &mut StdRng, max_crossings: usize) -> MorseWord {
    let n = rng.gen_range(1..=4);
    let len = if n == 1 { 0 } else { rng.gen_range(0..=max_crossings) };
    MorseWord::braid_closure(n, &random_braid(rng, n, len))
}
