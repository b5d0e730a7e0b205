//! Component tracing: strand segments, crossing roles and signs, rotation
//! and winding numbers.

use alloc::vec;
use alloc::vec::Vec;

use super::{Colour, Event, Framing, MorseWord, Orientation, Over, Surface, Turn};
use crate::error::{DiagramError, DiagramErrorKind};

/// What a segment runs into at its downstream end.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Junction {
    /// Cup at this event index.
    Cup(usize),
    /// Cap at this event index.
    Cap(usize),
    /// Crossing with this index into [`Trace::crossings`].
    Crossing(usize),
    /// The annulus gluing line, at this profile position (0-based).
    Glue(usize),
}

/// A piece of strand between two events that touch it.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Segment {
    pub orientation: Orientation,
    pub colour: Colour,
    pub next: usize,
    pub prev: usize,
    /// Junction at the downstream end.
    pub via: Junction,
    /// Junction at the upstream end.
    pub from: Junction,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CrossingInfo {
    pub event: usize,
    pub sign: i32,
    /// Segments below the crossing, left then right.
    pub bottom: [usize; 2],
    /// Segments above the crossing, left then right.
    pub top: [usize; 2],
    pub over_in: usize,
    pub under_in: usize,
    pub over_out: usize,
    pub under_out: usize,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Component {
    /// Segments in traversal order, starting from the lowest id.
    pub segments: Vec<usize>,
    pub colour: Colour,
    /// Sum of the extremum contributions in units of one half turn.
    pub half_turns: i32,
    /// Signed number of passages through the annulus gluing line.
    pub winding: i32,
    pub self_writhe: i32,
}

impl Component {
    /// Extremum sum of the cut-open word, in whole turns.
    pub fn extremum_rotation(&self) -> i32 {
        debug_assert!(self.half_turns % 2 == 0);
        self.half_turns / 2
    }
}

/// Edges between crossings, in the sense of labellings.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Edges {
    pub count: usize,
    pub of_segment: Vec<usize>,
    /// Per crossing: edges of `[over_in, under_in, over_out, under_out]`.
    pub roles: Vec<[usize; 4]>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Trace {
    pub surface: Surface,
    pub framing: Framing,
    pub segments: Vec<Segment>,
    pub crossings: Vec<CrossingInfo>,
    pub components: Vec<Component>,
    pub component_of: Vec<usize>,
    /// Crossing index of each event, if it is a crossing.
    pub crossing_of_event: Vec<Option<usize>>,
    /// Left and right segment of each cup event.
    pub cup_segments: Vec<Option<[usize; 2]>>,
    /// Segments starting at the bottom gluing profile.
    pub profile_segments: Vec<usize>,
}

const UNSET: usize = usize::MAX;

struct Builder {
    segments: Vec<Segment>,
}

impl Builder {
    fn add(&mut self, orientation: Orientation, colour: Colour) -> usize {
        self.segments.push(Segment {
            orientation,
            colour,
            next: UNSET,
            prev: UNSET,
            via: Junction::Glue(UNSET),
            from: Junction::Glue(UNSET),
        });
        self.segments.len() - 1
    }

    fn link(&mut self, a: usize, b: usize, j: Junction) {
        self.segments[a].next = b;
        self.segments[a].via = j;
        self.segments[b].prev = a;
        self.segments[b].from = j;
    }
}

fn direction(bottom_left_to_top_right: bool, o: Orientation) -> (i32, i32) {
    match (bottom_left_to_top_right, o) {
        (true, Orientation::Up) => (1, 1),
        (true, Orientation::Down) => (-1, -1),
        (false, Orientation::Up) => (-1, 1),
        (false, Orientation::Down) => (1, -1),
    }
}

/// Oriented sign of a crossing: the sign of the planar cross product
/// `over × under` of the two strand directions. With both strands upward the
/// left-over crossing is positive.
pub fn crossing_sign(over: Over, left: Orientation, right: Orientation) -> i32 {
    let a = direction(true, left);
    let b = direction(false, right);
    let (o, u) = match over {
        Over::Left => (a, b),
        Over::Right => (b, a),
    };
    (o.0 * u.1 - o.1 * u.0).signum()
}

impl Trace {
    pub fn new(w: &MorseWord) -> Result<Trace, DiagramError> {
        w.validate()?;
        let mut b = Builder {
            segments: Vec::new(),
        };
        let profile_segments: Vec<usize> = w
            .profile
            .iter()
            .map(|s| b.add(s.orientation, s.colour))
            .collect();
        let mut cur = profile_segments.clone();
        let mut crossings = Vec::new();
        let mut crossing_of_event = vec![None; w.events.len()];
        let mut cup_segments = vec![None; w.events.len()];
        for (k, ev) in w.events.iter().enumerate() {
            match *ev {
                Event::Cup { pos, turn, colour } => {
                    let (lo, ro) = turn.cup_legs();
                    let l = b.add(lo, colour);
                    let r = b.add(ro, colour);
                    match turn {
                        Turn::Right => b.link(l, r, Junction::Cup(k)),
                        Turn::Left => b.link(r, l, Junction::Cup(k)),
                    }
                    cur.insert(pos - 1, r);
                    cur.insert(pos - 1, l);
                    cup_segments[k] = Some([l, r]);
                }
                Event::Cap { pos, turn } => {
                    let (l, r) = (cur[pos - 1], cur[pos]);
                    match turn {
                        Turn::Right => b.link(l, r, Junction::Cap(k)),
                        Turn::Left => b.link(r, l, Junction::Cap(k)),
                    }
                    cur.drain(pos - 1..=pos);
                }
                Event::Crossing { pos, over } => {
                    let ci = crossings.len();
                    let (l, r) = (cur[pos - 1], cur[pos]);
                    let (lo, lc) = (b.segments[l].orientation, b.segments[l].colour);
                    let (ro, rc) = (b.segments[r].orientation, b.segments[r].colour);
                    let nl = b.add(ro, rc);
                    let nr = b.add(lo, lc);
                    let j = Junction::Crossing(ci);
                    // strand l -> nr, and strand r -> nl
                    let (a_in, a_out) = if lo == Orientation::Up { (l, nr) } else { (nr, l) };
                    let (b_in, b_out) = if ro == Orientation::Up { (r, nl) } else { (nl, r) };
                    b.link(a_in, a_out, j);
                    b.link(b_in, b_out, j);
                    let ((over_in, over_out), (under_in, under_out)) = match over {
                        Over::Left => ((a_in, a_out), (b_in, b_out)),
                        Over::Right => ((b_in, b_out), (a_in, a_out)),
                    };
                    crossings.push(CrossingInfo {
                        event: k,
                        sign: crossing_sign(over, lo, ro),
                        bottom: [l, r],
                        top: [nl, nr],
                        over_in,
                        under_in,
                        over_out,
                        under_out,
                    });
                    crossing_of_event[k] = Some(ci);
                    cur[pos - 1] = nl;
                    cur[pos] = nr;
                }
            }
        }
        for (j, (&top, &bottom)) in cur.iter().zip(&profile_segments).enumerate() {
            match b.segments[top].orientation {
                Orientation::Up => b.link(top, bottom, Junction::Glue(j)),
                Orientation::Down => b.link(bottom, top, Junction::Glue(j)),
            }
        }
        let segments = b.segments;
        debug_assert!(segments.iter().all(|s| s.next != UNSET && s.prev != UNSET));

        let mut component_of = vec![UNSET; segments.len()];
        let mut components = Vec::new();
        for start in 0..segments.len() {
            if component_of[start] != UNSET {
                continue;
            }
            let ci = components.len();
            let mut comp = Component {
                segments: Vec::new(),
                colour: segments[start].colour,
                half_turns: 0,
                winding: 0,
                self_writhe: 0,
            };
            let mut s = start;
            loop {
                component_of[s] = ci;
                comp.segments.push(s);
                match segments[s].via {
                    Junction::Cup(k) => {
                        comp.half_turns += match w.events[k] {
                            Event::Cup {
                                turn: Turn::Right, ..
                            } => 1,
                            _ => -1,
                        }
                    }
                    Junction::Cap(k) => {
                        comp.half_turns += match w.events[k] {
                            Event::Cap {
                                turn: Turn::Left, ..
                            } => 1,
                            _ => -1,
                        }
                    }
                    Junction::Glue(_) => {
                        comp.winding += match segments[s].orientation {
                            Orientation::Up => 1,
                            Orientation::Down => -1,
                        }
                    }
                    Junction::Crossing(_) => {}
                }
                s = segments[s].next;
                if s == start {
                    break;
                }
            }
            components.push(comp);
        }
        for c in &crossings {
            let (x, y) = (component_of[c.over_in], component_of[c.under_in]);
            if x == y {
                components[x].self_writhe += c.sign;
            }
        }
        Ok(Trace {
            surface: w.surface,
            framing: w.framing,
            segments,
            crossings,
            components,
            component_of,
            crossing_of_event,
            cup_segments,
            profile_segments,
        })
    }

    pub fn writhe(&self) -> i32 {
        self.crossings.iter().map(|c| c.sign).sum()
    }

    /// Rotation number of a component under `framing`, with the annulus
    /// winding counted with sign `winding_sign` for the blackboard framing.
    pub fn rotation_with(
        &self,
        component: usize,
        framing: Framing,
        winding_sign: i32,
    ) -> Result<i32, DiagramError> {
        let c = &self.components[component];
        match (self.surface, framing) {
            (Surface::Plane, Framing::Radial) => {
                Err(DiagramError::global(DiagramErrorKind::RadialOnPlane))
            }
            (_, Framing::Radial) => Ok(c.extremum_rotation()),
            (_, Framing::Blackboard) => Ok(c.extremum_rotation() + winding_sign * c.winding),
        }
    }

    /// Rotation number under the word's own framing.
    pub fn rotation(&self, component: usize) -> Result<i32, DiagramError> {
        self.rotation_with(component, self.framing, 1)
    }

    /// Maximal runs of segments between crossings, numbered by their
    /// smallest segment id.
    pub fn edges(&self) -> Edges {
        let n = self.segments.len();
        let mut raw = vec![UNSET; n];
        let mut count = 0;
        for s in 0..n {
            if raw[s] != UNSET || !matches!(self.segments[s].from, Junction::Crossing(_)) {
                continue;
            }
            let mut t = s;
            loop {
                raw[t] = count;
                if matches!(self.segments[t].via, Junction::Crossing(_)) {
                    break;
                }
                t = self.segments[t].next;
            }
            count += 1;
        }
        for s in 0..n {
            if raw[s] != UNSET {
                continue;
            }
            // A crossing-free component.
            let mut t = s;
            loop {
                raw[t] = count;
                t = self.segments[t].next;
                if t == s {
                    break;
                }
            }
            count += 1;
        }
        let mut min_seg = vec![UNSET; count];
        for (s, &e) in raw.iter().enumerate() {
            min_seg[e] = min_seg[e].min(s);
        }
        let mut order: Vec<usize> = (0..count).collect();
        order.sort_by_key(|&e| min_seg[e]);
        let mut rename = vec![0; count];
        for (new, &old) in order.iter().enumerate() {
            rename[old] = new;
        }
        let of_segment: Vec<usize> = raw.iter().map(|&e| rename[e]).collect();
        let roles = self
            .crossings
            .iter()
            .map(|c| {
                [
                    of_segment[c.over_in],
                    of_segment[c.under_in],
                    of_segment[c.over_out],
                    of_segment[c.under_out],
                ]
            })
            .collect();
        Edges {
            count,
            of_segment,
            roles,
        }
    }
}
