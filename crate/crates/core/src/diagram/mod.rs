//! Oriented, coloured link and tangle diagrams as Morse words on the plane
//! or on a cut-open annulus.
//!
//! A word is read bottom to top. Strands are numbered from 1 at the left.
//! On the annulus the left edge of the strip is the inner boundary and an
//! upward strand runs counterclockwise.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{DiagramError, DiagramErrorKind};

pub mod moves;
pub mod trace;

pub use trace::{Component, CrossingInfo, Edges, Junction, Segment, Trace};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Orientation {
    Up,
    Down,
}

impl Orientation {
    pub fn flip(self) -> Self {
        match self {
            Orientation::Up => Orientation::Down,
            Orientation::Down => Orientation::Up,
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Up => "up",
            Orientation::Down => "down",
        })
    }
}

/// Turning tag of a cup or cap.
///
/// A right-moving cup has its left leg pointing down and its right leg up;
/// a right-moving cap has its left leg up and its right leg down.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Turn {
    Right,
    Left,
}

impl Turn {
    pub fn flip(self) -> Self {
        match self {
            Turn::Right => Turn::Left,
            Turn::Left => Turn::Right,
        }
    }

    /// Orientations of the two legs of a cup with this tag.
    pub fn cup_legs(self) -> (Orientation, Orientation) {
        match self {
            Turn::Right => (Orientation::Down, Orientation::Up),
            Turn::Left => (Orientation::Up, Orientation::Down),
        }
    }

    /// Orientations a cap with this tag expects on its legs.
    pub fn cap_legs(self) -> (Orientation, Orientation) {
        match self {
            Turn::Right => (Orientation::Up, Orientation::Down),
            Turn::Left => (Orientation::Down, Orientation::Up),
        }
    }

    /// The cup tag whose left leg has orientation `left`.
    pub fn cup_with_left(left: Orientation) -> Self {
        match left {
            Orientation::Down => Turn::Right,
            Orientation::Up => Turn::Left,
        }
    }

    /// The cap tag whose left leg has orientation `left`.
    pub fn cap_with_left(left: Orientation) -> Self {
        match left {
            Orientation::Up => Turn::Right,
            Orientation::Down => Turn::Left,
        }
    }
}

/// Which of the two strands entering a crossing from below passes over.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Over {
    Left,
    Right,
}

impl Over {
    pub fn flip(self) -> Self {
        match self {
            Over::Left => Over::Right,
            Over::Right => Over::Left,
        }
    }
}

/// Strand colour. Slots are 1-based tensor factors; orange is the sum of
/// green (slot 1) and red (slot 2).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Colour {
    Slot(u8),
    Orange,
}

impl Default for Colour {
    fn default() -> Self {
        Colour::Slot(1)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Strand {
    pub orientation: Orientation,
    pub colour: Colour,
}

impl Strand {
    pub fn new(orientation: Orientation, colour: Colour) -> Self {
        Strand {
            orientation,
            colour,
        }
    }

    pub fn up() -> Self {
        Strand::new(Orientation::Up, Colour::default())
    }

    pub fn down() -> Self {
        Strand::new(Orientation::Down, Colour::default())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Event {
    /// Creates strands `pos` and `pos + 1`.
    Cup { pos: usize, turn: Turn, colour: Colour },
    /// Joins strands `pos` and `pos + 1`.
    Cap { pos: usize, turn: Turn },
    /// Swaps strands `pos` and `pos + 1`.
    Crossing { pos: usize, over: Over },
}

impl Event {
    pub fn cup(pos: usize, turn: Turn) -> Self {
        Event::Cup {
            pos,
            turn,
            colour: Colour::default(),
        }
    }

    pub fn cap(pos: usize, turn: Turn) -> Self {
        Event::Cap { pos, turn }
    }

    pub fn crossing(pos: usize, over: Over) -> Self {
        Event::Crossing { pos, over }
    }

    pub fn pos(&self) -> usize {
        match *self {
            Event::Cup { pos, .. } | Event::Cap { pos, .. } | Event::Crossing { pos, .. } => pos,
        }
    }

    pub fn with_pos(self, pos: usize) -> Self {
        match self {
            Event::Cup { turn, colour, .. } => Event::Cup { pos, turn, colour },
            Event::Cap { turn, .. } => Event::Cap { pos, turn },
            Event::Crossing { over, .. } => Event::Crossing { pos, over },
        }
    }

    pub fn shifted(self, by: usize) -> Self {
        self.with_pos(self.pos() + by)
    }

    fn name(&self) -> &'static str {
        match self {
            Event::Cup { .. } => "cup",
            Event::Cap { .. } => "cap",
            Event::Crossing { .. } => "crossing",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Surface {
    Plane,
    Annulus,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Framing {
    Blackboard,
    Radial,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct MorseWord {
    pub surface: Surface,
    pub framing: Framing,
    /// Gluing profile of an annulus word; empty on the plane.
    pub profile: Vec<Strand>,
    pub events: Vec<Event>,
}

fn profile_string(p: &[Strand]) -> String {
    let parts: Vec<String> = p.iter().map(|s| alloc::format!("{}", s.orientation)).collect();
    if parts.is_empty() {
        String::from("(empty)")
    } else {
        parts.join(" ")
    }
}

impl MorseWord {
    pub fn plane(events: Vec<Event>) -> Self {
        MorseWord {
            surface: Surface::Plane,
            framing: Framing::Blackboard,
            profile: Vec::new(),
            events,
        }
    }

    pub fn annulus(profile: Vec<Strand>, events: Vec<Event>, framing: Framing) -> Self {
        MorseWord {
            surface: Surface::Annulus,
            framing,
            profile,
            events,
        }
    }

    pub fn empty() -> Self {
        Self::plane(Vec::new())
    }

    /// The annulus core curve: one upward strand and no events.
    pub fn annulus_core(framing: Framing) -> Self {
        Self::annulus(alloc::vec![Strand::up()], Vec::new(), framing)
    }

    /// True for the empty diagram of either surface.
    pub fn is_empty(&self) -> bool {
        self.events.is_empty() && self.profile.is_empty()
    }

    pub fn crossing_count(&self) -> usize {
        self.events
            .iter()
            .filter(|e| matches!(e, Event::Crossing { .. }))
            .count()
    }

    /// Profiles before every event, followed by the final profile.
    pub fn profiles(&self) -> Result<Vec<Vec<Strand>>, DiagramError> {
        if self.surface == Surface::Plane {
            if !self.profile.is_empty() {
                return Err(DiagramError::global(DiagramErrorKind::PlaneWithProfile));
            }
            if self.framing == Framing::Radial {
                return Err(DiagramError::global(DiagramErrorKind::RadialOnPlane));
            }
        }
        let mut out = Vec::with_capacity(self.events.len() + 1);
        let mut cur = self.profile.clone();
        for (k, ev) in self.events.iter().enumerate() {
            out.push(cur.clone());
            apply_event(&mut cur, ev).map_err(|kind| DiagramError::at(k, kind))?;
        }
        match self.surface {
            Surface::Plane if !cur.is_empty() => {
                return Err(DiagramError::global(
                    DiagramErrorKind::NonEmptyFinalProfile {
                        found: profile_string(&cur),
                    },
                ));
            }
            Surface::Annulus if cur != self.profile => {
                return Err(DiagramError::global(DiagramErrorKind::ProfileMismatch {
                    expected: profile_string(&self.profile),
                    found: profile_string(&cur),
                }));
            }
            _ => {}
        }
        out.push(cur);
        Ok(out)
    }

    pub fn validate(&self) -> Result<(), DiagramError> {
        self.profiles().map(|_| ())
    }

    /// Closure of a braid on `n` strands, all strands oriented up through the
    /// braid. Generator `+i` is the positive crossing of strands `i, i+1`.
    pub fn braid_closure(n: usize, word: &[i32]) -> Self {
        let mut events = Vec::with_capacity(2 * n + word.len());
        for k in 1..=n {
            events.push(Event::cup(k, Turn::Right));
        }
        for &g in word {
            let over = if g > 0 { Over::Left } else { Over::Right };
            events.push(Event::crossing(n + g.unsigned_abs() as usize, over));
        }
        for k in (1..=n).rev() {
            events.push(Event::cap(k, Turn::Left));
        }
        Self::plane(events)
    }

    /// A braid on `n` upward strands drawn in the annulus (not closed off).
    pub fn annulus_braid(n: usize, word: &[i32], framing: Framing) -> Self {
        let events = word
            .iter()
            .map(|&g| {
                let over = if g > 0 { Over::Left } else { Over::Right };
                Event::crossing(g.unsigned_abs() as usize, over)
            })
            .collect();
        Self::annulus(alloc::vec![Strand::up(); n], events, framing)
    }

    /// Flips every crossing.
    pub fn mirror(&self) -> Self {
        let mut w = self.clone();
        for ev in &mut w.events {
            if let Event::Crossing { over, .. } = ev {
                *over = over.flip();
            }
        }
        w
    }

    /// Reverses the orientation of every strand.
    pub fn reverse(&self) -> Self {
        let mut w = self.clone();
        for s in &mut w.profile {
            s.orientation = s.orientation.flip();
        }
        for ev in &mut w.events {
            match ev {
                Event::Cup { turn, .. } | Event::Cap { turn, .. } => *turn = turn.flip(),
                Event::Crossing { .. } => {}
            }
        }
        w
    }

    /// Disjoint union of two plane diagrams (`self` drawn below `other`).
    pub fn disjoint_union(&self, other: &MorseWord) -> Self {
        debug_assert!(self.surface == Surface::Plane && other.surface == Surface::Plane);
        let mut w = self.clone();
        w.events.extend(other.events.iter().copied());
        w
    }

    /// Product in the annular skein algebra: `other` is placed on the inner
    /// side and `self` on the outer side, which is isotopic to stacking.
    pub fn annulus_product(&self, other: &MorseWord) -> Self {
        let inner = other.profile.len();
        let mut profile = other.profile.clone();
        profile.extend(self.profile.iter().copied());
        let mut events = other.events.clone();
        events.extend(self.events.iter().map(|e| e.shifted(inner)));
        Self::annulus(profile, events, self.framing)
    }

    /// Standard embedding of an annulus word in the plane: the gluing
    /// strands are closed off by arcs passing around the hole on the left.
    pub fn plane_closure(&self) -> Self {
        self.plane_closure_with_meridians(0)
    }

    /// As [`plane_closure`](Self::plane_closure), with `j` unknotted test
    /// circles each encircling the whole bundle of gluing strands (one
    /// linking with the annulus core each).
    pub fn plane_closure_with_meridians(&self, j: usize) -> Self {
        if self.surface == Surface::Plane {
            let mut w = self.clone();
            for _ in 0..j {
                w.events.push(Event::cup(1, Turn::Right));
                w.events.push(Event::cap(1, Turn::Left));
            }
            return w;
        }
        let m = self.profile.len();
        let mut events = Vec::new();
        // Cup k pairs return strand k with gluing strand m + 1 - k.
        for k in 1..=m {
            let s = self.profile[m - k];
            events.push(Event::Cup {
                pos: k,
                turn: Turn::cup_with_left(s.orientation.flip()),
                colour: s.colour,
            });
        }
        for _ in 0..j {
            events.push(Event::cup(m + 1, Turn::Right));
            for p in m + 2..=2 * m + 1 {
                events.push(Event::crossing(p, Over::Left));
            }
            for p in (m + 2..=2 * m + 1).rev() {
                events.push(Event::crossing(p, Over::Left));
            }
            events.push(Event::cap(m + 1, Turn::Left));
        }
        events.extend(self.events.iter().map(|e| e.shifted(m)));
        for k in (1..=m).rev() {
            let s = self.profile[m - k];
            events.push(Event::cap(k, Turn::cap_with_left(s.orientation.flip())));
        }
        Self::plane(events)
    }

    /// Keeps only the strands of colour `colour`. Crossings with strands of
    /// other colours disappear.
    pub fn subdiagram(&self, colour: Colour) -> Result<Self, DiagramError> {
        let profiles = self.profiles()?;
        let mut events = Vec::new();
        for (ev, before) in self.events.iter().zip(&profiles) {
            let kept_left = |pos: usize| {
                before[..pos - 1]
                    .iter()
                    .filter(|s| s.colour == colour)
                    .count()
            };
            match *ev {
                Event::Cup {
                    pos,
                    turn,
                    colour: c,
                } => {
                    if c == colour {
                        events.push(Event::Cup {
                            pos: kept_left(pos) + 1,
                            turn,
                            colour: c,
                        });
                    }
                }
                Event::Cap { pos, turn } => {
                    if before[pos - 1].colour == colour {
                        events.push(Event::cap(kept_left(pos) + 1, turn));
                    }
                }
                Event::Crossing { pos, over } => {
                    if before[pos - 1].colour == colour && before[pos].colour == colour {
                        events.push(Event::crossing(kept_left(pos) + 1, over));
                    }
                }
            }
        }
        let profile = self
            .profile
            .iter()
            .copied()
            .filter(|s| s.colour == colour)
            .collect();
        Ok(MorseWord {
            surface: self.surface,
            framing: self.framing,
            profile,
            events,
        })
    }

    /// Resets every colour to slot 1.
    pub fn strip_colours(&self) -> Self {
        self.recolour(|_| Colour::default())
    }

    /// Applies `f` to every colour decoration.
    pub fn recolour(&self, mut f: impl FnMut(Colour) -> Colour) -> Self {
        let mut w = self.clone();
        for s in &mut w.profile {
            s.colour = f(s.colour);
        }
        for ev in &mut w.events {
            if let Event::Cup { colour, .. } = ev {
                *colour = f(*colour);
            }
        }
        w
    }

    /// Colours occurring in the diagram, sorted.
    pub fn colours(&self) -> Vec<Colour> {
        let mut cs: Vec<Colour> = self
            .profile
            .iter()
            .map(|s| s.colour)
            .chain(self.events.iter().filter_map(|e| match e {
                Event::Cup { colour, .. } => Some(*colour),
                _ => None,
            }))
            .collect();
        cs.sort();
        cs.dedup();
        cs
    }

    /// Compact byte encoding ignoring colours, used as a memo key.
    pub fn key_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(2 + self.profile.len() + 3 * self.events.len());
        out.push(match (self.surface, self.framing) {
            (Surface::Plane, _) => 0,
            (Surface::Annulus, Framing::Blackboard) => 1,
            (Surface::Annulus, Framing::Radial) => 2,
        });
        for s in &self.profile {
            out.push(match s.orientation {
                Orientation::Up => b'u',
                Orientation::Down => b'd',
            });
        }
        out.push(b'|');
        for ev in &self.events {
            let (tag, pos) = match *ev {
                Event::Cup { pos, turn, .. } => (if turn == Turn::Right { 0u8 } else { 1 }, pos),
                Event::Cap { pos, turn } => (if turn == Turn::Right { 2 } else { 3 }, pos),
                Event::Crossing { pos, over } => (if over == Over::Left { 4 } else { 5 }, pos),
            };
            // Positions are bounded by the strand count; 14 bits is plenty
            // for desk-scale words, wider values get an escape.
            if pos < 0x40 {
                out.push(tag << 5 | pos as u8);
            } else {
                out.push(tag << 5 | 0x1f);
                out.extend_from_slice(&(pos as u32).to_le_bytes());
            }
        }
        out
    }
}

fn apply_event(cur: &mut Vec<Strand>, ev: &Event) -> Result<(), DiagramErrorKind> {
    let n = cur.len();
    match *ev {
        Event::Cup { pos, turn, colour } => {
            if pos == 0 || pos > n + 1 {
                return Err(DiagramErrorKind::PositionOutOfRange {
                    position: pos,
                    strands: n + 2,
                });
            }
            let (l, r) = turn.cup_legs();
            cur.insert(pos - 1, Strand::new(r, colour));
            cur.insert(pos - 1, Strand::new(l, colour));
        }
        Event::Cap { .. } | Event::Crossing { .. } if n == 0 => {
            return Err(DiagramErrorKind::EmptyProfile { event: ev.name() });
        }
        Event::Cap { pos, turn } => {
            check_pair(pos, n)?;
            let (el, er) = turn.cap_legs();
            let (l, r) = (cur[pos - 1], cur[pos]);
            if l.orientation != el || r.orientation != er {
                return Err(DiagramErrorKind::CapOrientationMismatch {
                    expected: alloc::format!("{} {}", el, er),
                    found: alloc::format!("{} {}", l.orientation, r.orientation),
                });
            }
            if l.colour != r.colour {
                return Err(DiagramErrorKind::CapColourMismatch);
            }
            cur.drain(pos - 1..=pos);
        }
        Event::Crossing { pos, .. } => {
            check_pair(pos, n)?;
            cur.swap(pos - 1, pos);
        }
    }
    Ok(())
}

fn check_pair(pos: usize, n: usize) -> Result<(), DiagramErrorKind> {
    if pos == 0 || pos + 1 > n {
        Err(DiagramErrorKind::PositionOutOfRange {
            position: pos,
            strands: n,
        })
    } else {
        Ok(())
    }
}
