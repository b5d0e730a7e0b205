//! Evaluation of closed plane diagrams by skein resolution towards a
//! descending diagram.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cell::RefCell;

use crate::diagram::{Colour, Event, Junction, MorseWord, Strand, Surface, Trace, Turn};
use crate::error::EvalError;
use crate::scalar::Scalar;

/// Default recursion depth limit; far above what 12-crossing diagrams need.
pub const DEFAULT_BUDGET: usize = 4096;

/// Memo table keyed by [`MorseWord::key_bytes`].
///
/// Inserting an existing key may overwrite it; values for equal keys are
/// always equal.
pub trait MemoStore {
    fn get(&self, key: &[u8]) -> Option<Scalar>;
    fn insert(&self, key: Vec<u8>, value: Scalar);
    fn len(&self) -> usize;
    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Single-threaded memo table.
#[derive(Default, Debug)]
pub struct LocalMemo(RefCell<BTreeMap<Vec<u8>, Scalar>>);

impl MemoStore for LocalMemo {
    fn get(&self, key: &[u8]) -> Option<Scalar> {
        self.0.borrow().get(key).cloned()
    }
    fn insert(&self, key: Vec<u8>, value: Scalar) {
        self.0.borrow_mut().insert(key, value);
    }
    fn len(&self) -> usize {
        self.0.borrow().len()
    }
}

/// A memo table that remembers nothing.
#[derive(Default, Debug, Clone, Copy)]
pub struct NoMemo;

impl MemoStore for NoMemo {
    fn get(&self, _: &[u8]) -> Option<Scalar> {
        None
    }
    fn insert(&self, _: Vec<u8>, _: Scalar) {}
    fn len(&self) -> usize {
        0
    }
}

/// The oriented smoothing of the crossing at `event`, whose bottom strands
/// are `left` and `right`. The new cup (if any) takes `cup_colour`.
pub fn smooth_crossing(
    w: &MorseWord,
    event: usize,
    left: Strand,
    right: Strand,
    cup_colour: Colour,
) -> MorseWord {
    let pos = w.events[event].pos();
    let mut out = w.clone();
    if left.orientation == right.orientation {
        out.events.remove(event);
    } else {
        let cap = Event::cap(pos, Turn::cap_with_left(left.orientation));
        let cup = Event::Cup {
            pos,
            turn: Turn::cup_with_left(right.orientation),
            colour: cup_colour,
        };
        out.events.splice(event..=event, [cap, cup]);
    }
    out
}

/// Flips the crossing at `event`.
pub fn flip_crossing(w: &MorseWord, event: usize) -> MorseWord {
    let mut out = w.clone();
    if let Event::Crossing { over, .. } = &mut out.events[event] {
        *over = over.flip();
    }
    out
}

/// Walks the components in order, each from its lowest segment, and returns
/// the first crossing whose first passage is along the under strand.
pub fn first_ascending_crossing(t: &Trace) -> Option<usize> {
    let mut seen = alloc::vec![false; t.crossings.len()];
    for comp in &t.components {
        for &s in &comp.segments {
            if let Junction::Crossing(ci) = t.segments[s].via {
                if !seen[ci] {
                    seen[ci] = true;
                    if t.crossings[ci].under_in == s {
                        return Some(ci);
                    }
                }
            }
        }
    }
    None
}

/// Value of a descending diagram: one `δ` per component and `q^t` per unit
/// of self-writhe.
pub fn descending_value(t: &Trace) -> Scalar {
    let writhe: i32 = t.components.iter().map(|c| c.self_writhe).sum();
    let delta = Scalar::delta(1, 1).expect("arity 1");
    let mut v = delta.pow(t.components.len() as i64).expect("non-negative power");
    v = v.mul_a_monomial(&[writhe]);
    v
}

pub struct SkeinEngine<M = LocalMemo> {
    memo: M,
    budget: usize,
}

impl Default for SkeinEngine<LocalMemo> {
    fn default() -> Self {
        SkeinEngine::new(LocalMemo::default())
    }
}

impl<M: MemoStore> SkeinEngine<M> {
    pub fn new(memo: M) -> Self {
        SkeinEngine {
            memo,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn memo(&self) -> &M {
        &self.memo
    }

    /// The framed HOMFLY value of a closed one-coloured plane diagram, as an
    /// element of `k` (arity 1).
    pub fn eval_one_colour(&self, w: &MorseWord) -> Result<Scalar, EvalError> {
        if w.surface != Surface::Plane {
            return Err(EvalError::NotClosedPlane);
        }
        w.validate()?;
        let colours = w.colours();
        if colours.contains(&Colour::Orange) {
            return Err(EvalError::UnresolvedOrange);
        }
        if colours.len() > 1 {
            return Err(EvalError::MixedColours);
        }
        self.eval_rec(&w.strip_colours(), 0)
    }

    fn eval_rec(&self, w: &MorseWord, depth: usize) -> Result<Scalar, EvalError> {
        let key = w.key_bytes();
        if let Some(v) = self.memo.get(&key) {
            return Ok(v);
        }
        if depth > self.budget {
            return Err(EvalError::BudgetExceeded {
                budget: self.budget,
                word: key,
            });
        }
        let t = Trace::new(w)?;
        let value = match first_ascending_crossing(&t) {
            None => descending_value(&t),
            Some(ci) => {
                let c = &t.crossings[ci];
                let left = strand_of(&t, c.bottom[0]);
                let right = strand_of(&t, c.bottom[1]);
                let flipped = self.eval_rec(&flip_crossing(w, c.event), depth + 1)?;
                let smoothed = self.eval_rec(
                    &smooth_crossing(w, c.event, left, right, Colour::default()),
                    depth + 1,
                )?;
                let zs = &Scalar::z(1) * &smoothed;
                if c.sign > 0 {
                    &flipped + &zs
                } else {
                    &flipped - &zs
                }
            }
        };
        self.memo.insert(key, value.clone());
        Ok(value)
    }

    /// Value of a closed plane diagram coloured by slots `1..=n`, in `k^{⊗n}`.
    /// Mixed crossings are transparent, so the colours evaluate separately.
    pub fn eval_multi_colour(&self, w: &MorseWord, n: usize) -> Result<Scalar, EvalError> {
        if w.surface != Surface::Plane {
            return Err(EvalError::NotClosedPlane);
        }
        w.validate()?;
        for c in w.colours() {
            match c {
                Colour::Orange => return Err(EvalError::UnresolvedOrange),
                Colour::Slot(s) if s == 0 || s as usize > n => {
                    return Err(EvalError::ColourOutOfRange { colour: s, count: n })
                }
                _ => {}
            }
        }
        let mut acc = Scalar::one(n);
        for i in 1..=n {
            let sub = w.subdiagram(Colour::Slot(i as u8))?;
            if sub.is_empty() {
                continue;
            }
            let v = self.eval_one_colour(&sub)?.embed(i, n)?;
            acc = &acc * &v;
        }
        Ok(acc)
    }

    /// Like [`eval_multi_colour`](Self::eval_multi_colour), first expanding
    /// every orange component into a green and a red copy.
    pub fn eval_with_orange(&self, w: &MorseWord, n: usize) -> Result<Scalar, EvalError> {
        let mut acc = Scalar::zero(n.max(2));
        for word in resolve_orange(w)? {
            acc = &acc + &self.eval_multi_colour(&word, n.max(2))?;
        }
        Ok(acc)
    }
}

fn strand_of(t: &Trace, segment: usize) -> Strand {
    let s = &t.segments[segment];
    Strand::new(s.orientation, s.colour)
}

/// Expands each orange component into green (slot 1) plus red (slot 2):
/// `2^k` words for `k` orange components.
pub fn resolve_orange(w: &MorseWord) -> Result<Vec<MorseWord>, EvalError> {
    let t = Trace::new(w)?;
    let orange: Vec<usize> = t
        .components
        .iter()
        .enumerate()
        .filter(|(_, c)| c.colour == Colour::Orange)
        .map(|(i, _)| i)
        .collect();
    let mut out = Vec::with_capacity(1 << orange.len());
    for mask in 0u64..(1u64 << orange.len()) {
        let pick = |comp: usize| -> Option<Colour> {
            orange.iter().position(|&o| o == comp).map(|k| {
                if mask >> k & 1 == 0 {
                    Colour::Slot(1)
                } else {
                    Colour::Slot(2)
                }
            })
        };
        let mut word = w.clone();
        for (k, ev) in word.events.iter_mut().enumerate() {
            if let Event::Cup { colour, .. } = ev {
                let seg = t.cup_segments[k].expect("cup has segments")[0];
                if let Some(c) = pick(t.component_of[seg]) {
                    *colour = c;
                }
            }
        }
        for (j, s) in word.profile.iter_mut().enumerate() {
            if let Some(c) = pick(t.component_of[t.profile_segments[j]]) {
                s.colour = c;
            }
        }
        out.push(word);
    }
    Ok(out)
}

/// Writhe of a closed one-coloured diagram, for the `t = 1` collapse law.
pub fn writhe(w: &MorseWord) -> Result<i32, EvalError> {
    Ok(Trace::new(w)?.writhe())
}
