//! Local isotopy moves on Morse words, used to perturb diagrams without
//! changing the link they present.

use alloc::vec::Vec;

use super::{Event, MorseWord, Orientation, Over, Strand, Turn};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Move {
    /// Swap events `at` and `at + 1`, which act on disjoint strands.
    Commute { at: usize },
    /// Insert a pair of cancelling crossings before event `at`.
    InsertR2 { at: usize, pos: usize, over: Over },
    /// Replace the crossing triple starting at `at` by the other side of the
    /// braid-type relation.
    R3 { at: usize },
    /// Insert a cancelling cup/cap snake into strand `pos` before event `at`.
    ZigZag { at: usize, pos: usize, left_first: bool },
    /// Insert a positive curl into strand `pos` before event `at`, turning
    /// counterclockwise (`ccw`) or clockwise.
    Curl { at: usize, pos: usize, ccw: bool },
}

/// Strand interval `(inputs, outputs)` an event occupies.
fn widths(e: &Event) -> (usize, usize) {
    match e {
        Event::Cup { .. } => (0, 2),
        Event::Cap { .. } => (2, 0),
        Event::Crossing { .. } => (2, 2),
    }
}

/// Swaps two adjacent events if they touch disjoint strands.
pub fn commute(w: &MorseWord, at: usize) -> Option<MorseWord> {
    let (e1, e2) = (*w.events.get(at)?, *w.events.get(at + 1)?);
    let (p1, p2) = (e1.pos(), e2.pos());
    let (in1, out1) = widths(&e1);
    let (in2, out2) = widths(&e2);
    let (n1, n2) = if p2 + in2 <= p1 {
        (e2, e1.with_pos(p1 + out2 - in2))
    } else if p2 >= p1 + out1 {
        (e2.with_pos(p2 + in1 - out1), e1)
    } else {
        return None;
    };
    let mut out = w.clone();
    out.events[at] = n1;
    out.events[at + 1] = n2;
    Some(out)
}

fn insert(w: &MorseWord, at: usize, new: &[Event]) -> MorseWord {
    let mut out = w.clone();
    out.events.splice(at..at, new.iter().copied());
    out
}

pub fn insert_r2(w: &MorseWord, at: usize, pos: usize, over: Over) -> MorseWord {
    insert(
        w,
        at,
        &[Event::crossing(pos, over), Event::crossing(pos, over.flip())],
    )
}

/// Rewrites `x_i^a x_{i+1}^b x_i^c` as `x_{i+1}^c x_i^b x_{i+1}^a` (and the
/// reverse), provided the three strands can be stacked at distinct heights.
pub fn r3(w: &MorseWord, at: usize) -> Option<MorseWord> {
    let window = w.events.get(at..at + 3)?;
    let mut tags = [Over::Left; 3];
    let mut pos = [0; 3];
    for (k, e) in window.iter().enumerate() {
        match *e {
            Event::Crossing { pos: p, over } => {
                tags[k] = over;
                pos[k] = p;
            }
            _ => return None,
        }
    }
    let (a, b, c) = (tags[0], tags[1], tags[2]);
    if a == c && b != a {
        return None;
    }
    let (i, j) = if pos[0] == pos[2] && pos[1] == pos[0] + 1 {
        (pos[0], pos[1])
    } else if pos[0] == pos[2] && pos[0] == pos[1] + 1 {
        (pos[0], pos[1])
    } else {
        return None;
    };
    let mut out = w.clone();
    out.events[at] = Event::crossing(j, c);
    out.events[at + 1] = Event::crossing(i, b);
    out.events[at + 2] = Event::crossing(j, a);
    Some(out)
}

pub fn zigzag(w: &MorseWord, at: usize, pos: usize, strand: Strand, left_first: bool) -> MorseWord {
    let o = strand.orientation;
    let colour = strand.colour;
    let seq = if left_first {
        [
            Event::Cup {
                pos,
                turn: Turn::cup_with_left(o),
                colour,
            },
            Event::cap(pos + 1, Turn::cap_with_left(o.flip())),
        ]
    } else {
        [
            Event::Cup {
                pos: pos + 1,
                turn: Turn::cup_with_left(o.flip()),
                colour,
            },
            Event::cap(pos, Turn::cap_with_left(o)),
        ]
    };
    insert(w, at, &seq)
}

/// Positive curl on strand `pos`. The counterclockwise curl adds `+1` to
/// the rotation number and the clockwise one `-1`.
pub fn curl(w: &MorseWord, at: usize, pos: usize, strand: Strand, ccw: bool) -> MorseWord {
    let colour = strand.colour;
    let up = strand.orientation == Orientation::Up;
    // The Down-strand curls are the orientation reversals of the Up ones,
    // which swaps every turning tag and keeps crossing signs.
    let t = |turn: Turn| if up { turn } else { turn.flip() };
    let seq = if ccw == up {
        [
            Event::Cup {
                pos: pos + 1,
                turn: t(Turn::Right),
                colour,
            },
            Event::crossing(pos, Over::Right),
            Event::cap(pos, t(Turn::Left)),
        ]
    } else {
        [
            Event::Cup {
                pos,
                turn: t(Turn::Left),
                colour,
            },
            Event::crossing(pos + 1, Over::Right),
            Event::cap(pos + 1, t(Turn::Right)),
        ]
    };
    insert(w, at, &seq)
}

/// Applies a move; `None` when it does not fit the word.
pub fn apply(w: &MorseWord, mv: Move) -> Option<MorseWord> {
    let strand_at = |at: usize, pos: usize| -> Option<Strand> {
        let profiles = w.profiles().ok()?;
        profiles.get(at)?.get(pos.checked_sub(1)?).copied()
    };
    match mv {
        Move::Commute { at } => commute(w, at),
        Move::R3 { at } => r3(w, at),
        Move::InsertR2 { at, pos, over } => {
            strand_at(at, pos + 1)?;
            Some(insert_r2(w, at, pos, over))
        }
        Move::ZigZag {
            at,
            pos,
            left_first,
        } => Some(zigzag(w, at, pos, strand_at(at, pos)?, left_first)),
        Move::Curl { at, pos, ccw } => Some(curl(w, at, pos, strand_at(at, pos)?, ccw)),
    }
}

/// Every move applicable to a valid word.
pub fn candidates(w: &MorseWord) -> Vec<Move> {
    let mut out = Vec::new();
    let profiles = match w.profiles() {
        Ok(p) => p,
        Err(_) => return out,
    };
    for at in 0..w.events.len().saturating_sub(1) {
        if commute(w, at).is_some() {
            out.push(Move::Commute { at });
        }
        if r3(w, at).is_some() {
            out.push(Move::R3 { at });
        }
    }
    for (at, p) in profiles.iter().enumerate() {
        for pos in 1..=p.len() {
            for left_first in [false, true] {
                out.push(Move::ZigZag {
                    at,
                    pos,
                    left_first,
                });
            }
            for ccw in [false, true] {
                out.push(Move::Curl { at, pos, ccw });
            }
            if pos < p.len() {
                for over in [Over::Left, Over::Right] {
                    out.push(Move::InsertR2 { at, pos, over });
                }
            }
        }
    }
    out
}
