//! The Turaev coproduct as a local rewriting of Morse words.
//!
//! Each event is replaced by its coloured image: a cup or cap of colour `i`
//! picks up a pivotal dressing in the other colours' parameters, and a
//! crossing becomes the sum of its colour-preserving pictures plus
//! `sgn · (q - q^{-1})` times the oriented smoothing, labelled by the
//! ledger's cutting placement. Words are processed bottom to top, carrying the
//! colouring of the current profile; identical partial states are merged.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::conventions::ConventionLedger;
use crate::diagram::{
    Colour, Event, Framing, MorseWord, Orientation, Over, Strand, Surface, Turn,
};
use crate::diagram::trace::crossing_sign;
use crate::error::EvalError;
use crate::scalar::Scalar;
use crate::skein::{MemoStore, SkeinEngine};

/// A formal sum of tuples of one-coloured diagrams with coefficients in
/// `k^{⊗slots}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoproductElement {
    pub slots: usize,
    pub terms: BTreeMap<Vec<MorseWord>, Scalar>,
}

impl CoproductElement {
    pub fn zero(slots: usize) -> Self {
        CoproductElement {
            slots,
            terms: BTreeMap::new(),
        }
    }

    /// `1 · (∅, …, ∅)` on the given surface.
    pub fn unit(slots: usize, empty: &MorseWord) -> Self {
        let mut x = Self::zero(slots);
        x.add_term(vec![empty.clone(); slots], Scalar::one(slots));
        x
    }

    pub fn add_term(&mut self, words: Vec<MorseWord>, coeff: Scalar) {
        debug_assert_eq!(words.len(), self.slots);
        debug_assert_eq!(coeff.arity(), self.slots);
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&words) {
            Some(c) => {
                *c = &*c + &coeff;
                if c.is_zero() {
                    self.terms.remove(&words);
                }
            }
            None => {
                self.terms.insert(words, coeff);
            }
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Slot-wise product: disjoint union on the plane, radial juxtaposition
    /// on the annulus.
    pub fn mul(&self, other: &CoproductElement) -> Result<CoproductElement, EvalError> {
        if self.slots != other.slots {
            return Err(EvalError::Scalar(crate::ScalarError::ArityMismatch {
                left: self.slots,
                right: other.slots,
            }));
        }
        let mut out = CoproductElement::zero(self.slots);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let words = w1
                    .iter()
                    .zip(w2)
                    .map(|(x, y)| match x.surface {
                        Surface::Plane => x.disjoint_union(y),
                        Surface::Annulus => x.annulus_product(y),
                    })
                    .collect();
                out.add_term(words, c1.checked_mul(c2)?);
            }
        }
        Ok(out)
    }

    /// Applies the counit in slot `slot`: terms whose diagram there is
    /// nonempty vanish, coefficients go through the scalar counit.
    pub fn counit_slot(&self, slot: usize) -> Result<CoproductElement, EvalError> {
        if slot == 0 || slot > self.slots {
            return Err(EvalError::UnsupportedSlots(slot));
        }
        let mut out = CoproductElement::zero(self.slots - 1);
        for (words, c) in &self.terms {
            if !words[slot - 1].is_empty() {
                continue;
            }
            let mut rest = words.clone();
            rest.remove(slot - 1);
            out.add_term(rest, c.counit_at(slot)?);
        }
        Ok(out)
    }

    /// `c · Π_i H_{t_i}(D_i)` for one term.
    pub fn term_value<M: MemoStore>(
        engine: &SkeinEngine<M>,
        words: &[MorseWord],
        coeff: &Scalar,
    ) -> Result<Scalar, EvalError> {
        let n = words.len();
        let mut v = coeff.clone();
        for (i, d) in words.iter().enumerate() {
            if !d.is_empty() {
                v = &v * &engine.eval_one_colour(d)?.embed(i + 1, n)?;
            }
        }
        Ok(v)
    }

    /// Evaluates every slot diagram (closed plane diagrams only).
    pub fn evaluate<M: MemoStore>(&self, engine: &SkeinEngine<M>) -> Result<Scalar, EvalError> {
        let mut acc = Scalar::zero(self.slots);
        for (words, c) in &self.terms {
            acc = &acc + &Self::term_value(engine, words, c)?;
        }
        Ok(acc)
    }

    /// For each `(j_1, …, j_n)` in `{0..=k}^n` (lexicographic order), the
    /// value of the element after closing every slot diagram in the plane
    /// with `j_i` test circles around the hole.
    pub fn annulus_eval_family<M: MemoStore>(
        &self,
        engine: &SkeinEngine<M>,
        k: usize,
    ) -> Result<Vec<Scalar>, EvalError> {
        family_indices(self.slots, k)
            .iter()
            .map(|js| {
                let mut acc = Scalar::zero(self.slots);
                for (words, c) in &self.terms {
                    let closed: Vec<MorseWord> = words
                        .iter()
                        .zip(js)
                        .map(|(w, &j)| w.plane_closure_with_meridians(j))
                        .collect();
                    acc = &acc + &Self::term_value(engine, &closed, c)?;
                }
                Ok(acc)
            })
            .collect()
    }
}

/// `{0..=k}^slots` in lexicographic order.
pub fn family_indices(slots: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..slots {
        let mut next = Vec::with_capacity(out.len() * (k + 1));
        for prefix in &out {
            for j in 0..=k {
                let mut p = prefix.clone();
                p.push(j);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct State {
    /// Colour (1-based slot) of every current strand.
    colours: Vec<u8>,
    /// Colouring of the bottom gluing profile (annulus only).
    start: Vec<u8>,
    words: Vec<Vec<Event>>,
}

impl State {
    /// Position among the strands of colour `c` of the strand at `pos`.
    fn slot_pos(&self, pos: usize, c: u8) -> usize {
        self.colours[..pos - 1].iter().filter(|&&x| x == c).count() + 1
    }
}

struct Transfer {
    n: usize,
    ledger: ConventionLedger,
    states: BTreeMap<State, Scalar>,
}

impl Transfer {
    fn push(next: &mut BTreeMap<State, Scalar>, s: State, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match next.get_mut(&s) {
            Some(old) => {
                *old = &*old + &c;
                if old.is_zero() {
                    next.remove(&s);
                }
            }
            None => {
                next.insert(s, c);
            }
        }
    }

    fn extremum(&self, c: u8, cup: bool, turn: Turn) -> Vec<i32> {
        self.ledger
            .extremum_exponents(self.n, c as usize, cup, turn == Turn::Right)
    }

    fn step(&mut self, ev: Event, before: &[Strand]) {
        let states = core::mem::take(&mut self.states);
        let mut next = BTreeMap::new();
        for (st, coeff) in states {
            match ev {
                Event::Cup { pos, turn, .. } => {
                    for c in 1..=self.n as u8 {
                        let mut s = st.clone();
                        let p = s.slot_pos(pos, c);
                        s.colours.insert(pos - 1, c);
                        s.colours.insert(pos - 1, c);
                        s.words[c as usize - 1].push(Event::cup(p, turn));
                        let k = coeff.mul_a_monomial(&self.extremum(c, true, turn));
                        Self::push(&mut next, s, k);
                    }
                }
                Event::Cap { pos, turn } => {
                    let c = st.colours[pos - 1];
                    if st.colours[pos] != c {
                        continue;
                    }
                    let mut s = st.clone();
                    let p = s.slot_pos(pos, c);
                    s.colours.drain(pos - 1..=pos);
                    s.words[c as usize - 1].push(Event::cap(p, turn));
                    let k = coeff.mul_a_monomial(&self.extremum(c, false, turn));
                    Self::push(&mut next, s, k);
                }
                Event::Crossing { pos, over } => {
                    self.crossing(&mut next, &st, &coeff, pos, over, before);
                }
            }
        }
        self.states = next;
    }

    fn crossing(
        &self,
        next: &mut BTreeMap<State, Scalar>,
        st: &State,
        coeff: &Scalar,
        pos: usize,
        over: Over,
        before: &[Strand],
    ) {
        let (lo, ro) = (before[pos - 1].orientation, before[pos].orientation);
        let (cl, cr) = (st.colours[pos - 1], st.colours[pos]);
        // Colour-preserving picture: colours travel with the strands.
        {
            let mut s = st.clone();
            s.colours.swap(pos - 1, pos);
            if cl == cr {
                let p = st.slot_pos(pos, cl);
                s.words[cl as usize - 1].push(Event::crossing(p, over));
            }
            Self::push(next, s, coeff.clone());
        }
        // Cutting pictures. Bottom segments l, r; top segments tl, tr. The
        // strand from l exits at tr, the one from r at tl.
        let sign = crossing_sign(over, lo, ro);
        for tl in 1..=self.n as u8 {
            for tr in 1..=self.n as u8 {
                // labels of (in, out) for both strands
                let a_strand = if lo == Orientation::Up { (cl, tr) } else { (tr, cl) };
                let b_strand = if ro == Orientation::Up { (cr, tl) } else { (tl, cr) };
                let (ov, un) = match over {
                    Over::Left => (a_strand, b_strand),
                    Over::Right => (b_strand, a_strand),
                };
                let f = [ov.0, un.0, ov.1, un.1];
                if !self.ledger.is_cutting(f) {
                    continue;
                }
                let z = if sign > 0 {
                    Scalar::z(self.n)
                } else {
                    -Scalar::z(self.n)
                };
                let mut k = coeff * &z;
                let mut s = st.clone();
                if lo == ro {
                    // Vertical smoothing: colours stay in place.
                    if tl != cl || tr != cr {
                        continue;
                    }
                } else {
                    // Cap below, cup above.
                    if cl != cr || tl != tr {
                        continue;
                    }
                    let cap_turn = Turn::cap_with_left(lo);
                    let p = s.slot_pos(pos, cl);
                    s.colours.drain(pos - 1..=pos);
                    s.words[cl as usize - 1].push(Event::cap(p, cap_turn));
                    k = k.mul_a_monomial(&self.extremum(cl, false, cap_turn));
                    let cup_turn = Turn::cup_with_left(ro);
                    let p = s.slot_pos(pos, tl);
                    s.colours.insert(pos - 1, tl);
                    s.colours.insert(pos - 1, tl);
                    s.words[tl as usize - 1].push(Event::cup(p, cup_turn));
                    k = k.mul_a_monomial(&self.extremum(tl, true, cup_turn));
                }
                Self::push(next, s, k);
            }
        }
    }
}

/// `Δ` with `n` tensor factors applied directly to a one-coloured diagram
/// (`n` in `1..=3`); for `n = 2` this is the Turaev coproduct.
pub fn coproduct_n(
    w: &MorseWord,
    n: usize,
    ledger: ConventionLedger,
) -> Result<CoproductElement, EvalError> {
    if !(1..=3).contains(&n) {
        return Err(EvalError::UnsupportedSlots(n));
    }
    let profiles = w.profiles()?;
    let w = w.strip_colours();
    let m = w.profile.len();
    let mut t = Transfer {
        n,
        ledger,
        states: BTreeMap::new(),
    };
    for colouring in family_indices(m, n - 1) {
        let colours: Vec<u8> = colouring.iter().map(|&c| c as u8 + 1).collect();
        let mut coeff = Scalar::one(n);
        if w.surface == Surface::Annulus && w.framing == Framing::Blackboard {
            for (s, &c) in w.profile.iter().zip(&colours) {
                let winding = match s.orientation {
                    Orientation::Up => 1,
                    Orientation::Down => -1,
                };
                let e = ledger.rotation_exponents(n, c as usize, ledger.winding_sign * winding);
                coeff = coeff.mul_a_monomial(&e);
            }
        }
        t.states.insert(
            State {
                colours: colours.clone(),
                start: colours,
                words: vec![Vec::new(); n],
            },
            coeff,
        );
    }
    for (ev, before) in w.events.iter().zip(&profiles) {
        t.step(*ev, before);
    }
    let mut out = CoproductElement::zero(n);
    for (st, coeff) in t.states {
        if st.colours != st.start {
            continue;
        }
        let words = (1..=n as u8)
            .zip(st.words)
            .map(|(c, events)| match w.surface {
                Surface::Plane => MorseWord::plane(events),
                Surface::Annulus => {
                    let profile = w
                        .profile
                        .iter()
                        .zip(&st.start)
                        .filter(|(_, &sc)| sc == c)
                        .map(|(s, _)| Strand::new(s.orientation, Colour::default()))
                        .collect();
                    MorseWord::annulus(profile, events, w.framing)
                }
            })
            .collect();
        out.add_term(words, coeff);
    }
    Ok(out)
}

/// The Turaev coproduct `Δ_f` of a one-coloured diagram, `f` being the
/// word's framing.
pub fn coproduct(w: &MorseWord, ledger: ConventionLedger) -> Result<CoproductElement, EvalError> {
    coproduct_n(w, 2, ledger)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    /// `(Δ ⊗ id ⊗ …) ∘ … ∘ Δ`: always split the first slot.
    Left,
    /// Always split the last slot.
    Right,
}

/// Splits slot `slot` of every term with `Δ`.
pub fn split_slot(
    x: &CoproductElement,
    slot: usize,
    ledger: ConventionLedger,
) -> Result<CoproductElement, EvalError> {
    let n = x.slots;
    if slot == 0 || slot > n {
        return Err(EvalError::UnsupportedSlots(slot));
    }
    let mut out = CoproductElement::zero(n + 1);
    for (words, c) in &x.terms {
        let lifted = c.coproduct_at(slot)?;
        let split = coproduct(&words[slot - 1], ledger)?;
        for (pair, c2) in &split.terms {
            let mut new_words = words.clone();
            new_words.splice(slot - 1..slot, pair.iter().cloned());
            let c2 = c2.embed_many(&[slot, slot + 1], n + 1)?;
            out.add_term(new_words, &lifted * &c2);
        }
    }
    Ok(out)
}

/// The `n`-fold iterated coproduct (`n >= 1`).
pub fn coproduct_iterated(
    w: &MorseWord,
    n: usize,
    side: Side,
    ledger: ConventionLedger,
) -> Result<CoproductElement, EvalError> {
    if n == 0 {
        return Err(EvalError::UnsupportedSlots(0));
    }
    let mut x = CoproductElement::zero(1);
    x.add_term(vec![w.strip_colours()], Scalar::one(1));
    while x.slots < n {
        let slot = match side {
            Side::Left => 1,
            Side::Right => x.slots,
        };
        x = split_slot(&x, slot, ledger)?;
    }
    Ok(x)
}

/// Counit on diagrams: the empty diagram goes to 1, anything else to 0.
pub fn counit_diagram(w: &MorseWord) -> Scalar {
    if w.is_empty() {
        Scalar::one(0)
    } else {
        Scalar::zero(0)
    }
}
