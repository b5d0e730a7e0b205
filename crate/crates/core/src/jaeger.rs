//! Jaeger's composition formula as a state sum over admissible labellings.

use alloc::vec;
use alloc::vec::Vec;

use crate::conventions::ConventionLedger;
use crate::diagram::{Colour, Edges, Event, MorseWord, Strand, Trace};
use crate::error::EvalError;
use crate::scalar::Scalar;
use crate::skein::{smooth_crossing, MemoStore, SkeinEngine};

/// A labelled diagram ready for enumeration.
pub struct Labeller {
    pub trace: Trace,
    pub edges: Edges,
    pub n: u8,
    pub ledger: ConventionLedger,
    configs: Vec<[u8; 4]>,
    crossings_of_edge: Vec<Vec<usize>>,
}

impl Labeller {
    pub fn new(w: &MorseWord, n: usize, ledger: ConventionLedger) -> Result<Self, EvalError> {
        if !(1..=3).contains(&n) {
            return Err(EvalError::UnsupportedSlots(n));
        }
        let trace = Trace::new(w)?;
        let edges = trace.edges();
        let n = n as u8;
        let mut configs = Vec::new();
        for a in 1..=n {
            for b in 1..=n {
                for c in 1..=n {
                    for d in 1..=n {
                        if ledger.is_admissible([a, b, c, d]) {
                            configs.push([a, b, c, d]);
                        }
                    }
                }
            }
        }
        let mut crossings_of_edge = vec![Vec::new(); edges.count];
        for (ci, roles) in edges.roles.iter().enumerate() {
            for &e in roles {
                if !crossings_of_edge[e].contains(&ci) {
                    crossings_of_edge[e].push(ci);
                }
            }
        }
        Ok(Labeller {
            trace,
            edges,
            n,
            ledger,
            configs,
            crossings_of_edge,
        })
    }

    /// All admissible labellings, branching on edges in increasing order.
    pub fn enumerate(&self) -> Vec<Vec<u8>> {
        let order: Vec<usize> = (0..self.edges.count).collect();
        self.enumerate_in_order(&order)
    }

    /// All admissible labellings, branching on edges in the given order.
    /// The output is sorted, so it does not depend on the order.
    pub fn enumerate_in_order(&self, order: &[usize]) -> Vec<Vec<u8>> {
        let mut labels = vec![0u8; self.edges.count];
        let mut out = Vec::new();
        self.dfs(order, 0, &mut labels, &mut out);
        out.sort();
        out
    }

    fn dfs(&self, order: &[usize], k: usize, labels: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        let Some(&e) = order.get(k) else {
            out.push(labels.clone());
            return;
        };
        if labels[e] != 0 {
            self.dfs(order, k + 1, labels, out);
            return;
        }
        for v in 1..=self.n {
            let mut trail = Vec::new();
            labels[e] = v;
            trail.push(e);
            if self.propagate(e, labels, &mut trail) {
                self.dfs(order, k + 1, labels, out);
            }
            for &t in &trail {
                labels[t] = 0;
            }
        }
    }

    /// Forces edge values implied by the crossings around newly assigned
    /// edges. Returns false on a contradiction.
    fn propagate(&self, start: usize, labels: &mut [u8], trail: &mut Vec<usize>) -> bool {
        let mut queue = vec![start];
        while let Some(e) = queue.pop() {
            for &ci in &self.crossings_of_edge[e] {
                let roles = self.edges.roles[ci];
                let mut forced: [Option<u8>; 4] = [None; 4];
                let mut first = true;
                let mut any = false;
                for cfg in &self.configs {
                    let fits = (0..4).all(|r| {
                        let cur = labels[roles[r]];
                        (cur == 0 || cur == cfg[r])
                            && (0..4).all(|s| roles[s] != roles[r] || cfg[s] == cfg[r])
                    });
                    if !fits {
                        continue;
                    }
                    any = true;
                    for r in 0..4 {
                        if first {
                            forced[r] = Some(cfg[r]);
                        } else if forced[r] != Some(cfg[r]) {
                            forced[r] = None;
                        }
                    }
                    first = false;
                }
                if !any {
                    return false;
                }
                for r in 0..4 {
                    if let Some(v) = forced[r] {
                        let edge = roles[r];
                        if labels[edge] == 0 {
                            labels[edge] = v;
                            trail.push(edge);
                            queue.push(edge);
                        }
                    }
                }
            }
        }
        true
    }

    fn role_labels(&self, ci: usize, labels: &[u8]) -> [u8; 4] {
        let r = self.edges.roles[ci];
        [labels[r[0]], labels[r[1]], labels[r[2]], labels[r[3]]]
    }

    pub fn is_admissible(&self, labels: &[u8]) -> bool {
        (0..self.trace.crossings.len()).all(|ci| self.ledger.is_admissible(self.role_labels(ci, labels)))
    }

    /// Crossing indices that are cutting vertices under `labels`.
    pub fn cutting_vertices(&self, labels: &[u8]) -> Vec<usize> {
        (0..self.trace.crossings.len())
            .filter(|&ci| self.ledger.is_cutting(self.role_labels(ci, labels)))
            .collect()
    }

    /// `Π sgn(v) (q - q^{-1})` over cutting vertices.
    pub fn interaction(&self, labels: &[u8]) -> Scalar {
        let n = self.n as usize;
        let mut v = Scalar::one(n);
        for ci in self.cutting_vertices(labels) {
            let z = Scalar::z(n);
            v = if self.trace.crossings[ci].sign > 0 {
                &v * &z
            } else {
                &v * &-z
            };
        }
        v
    }

    /// The coloured diagram with every cutting vertex smoothed.
    pub fn apply(&self, w: &MorseWord, labels: &[u8]) -> MorseWord {
        let t = &self.trace;
        let colour_of = |seg: usize| Colour::Slot(labels[self.edges.of_segment[seg]]);
        let mut out = w.clone();
        for (j, s) in out.profile.iter_mut().enumerate() {
            s.colour = colour_of(t.profile_segments[j]);
        }
        for (k, ev) in out.events.iter_mut().enumerate() {
            if let Event::Cup { colour, .. } = ev {
                *colour = colour_of(t.cup_segments[k].expect("cup segments")[0]);
            }
        }
        // Smooth from the top so earlier event indices stay valid.
        let mut cutting = self.cutting_vertices(labels);
        cutting.sort_by_key(|&ci| core::cmp::Reverse(t.crossings[ci].event));
        for ci in cutting {
            let c = &t.crossings[ci];
            let strand = |seg: usize| {
                let s = &t.segments[seg];
                Strand::new(s.orientation, colour_of(seg))
            };
            out = smooth_crossing(
                &out,
                c.event,
                strand(c.bottom[0]),
                strand(c.bottom[1]),
                colour_of(c.top[0]),
            );
        }
        out
    }

    /// One state-sum term: coefficient and the one-coloured subdiagrams.
    pub fn term(&self, w: &MorseWord, labels: &[u8]) -> Result<StateSumTerm, EvalError> {
        let n = self.n as usize;
        let coloured = self.apply(w, labels);
        let t = Trace::new(&coloured)?;
        let mut rotation = vec![0i32; n];
        for (k, comp) in t.components.iter().enumerate() {
            if let Colour::Slot(c) = comp.colour {
                rotation[c as usize - 1] += t.rotation_with(k, w.framing, self.ledger.winding_sign)?;
            }
        }
        let mut exps = vec![0i32; n];
        for (i, &r) in rotation.iter().enumerate() {
            for (e, x) in exps.iter_mut().zip(self.ledger.rotation_exponents(n, i + 1, r)) {
                *e += x;
            }
        }
        let coefficient = self.interaction(labels).mul_a_monomial(&exps);
        let mut subdiagrams = Vec::with_capacity(n);
        for i in 1..=n {
            subdiagrams.push(coloured.subdiagram(Colour::Slot(i as u8))?.strip_colours());
        }
        Ok(StateSumTerm {
            labels: labels.to_vec(),
            cutting: self.cutting_vertices(labels),
            rotation,
            coefficient,
            subdiagrams,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateSumTerm {
    pub labels: Vec<u8>,
    /// Crossing indices of the cutting vertices.
    pub cutting: Vec<usize>,
    /// Rotation number of each colour's subdiagram.
    pub rotation: Vec<i32>,
    /// Interaction times rotation correction.
    pub coefficient: Scalar,
    pub subdiagrams: Vec<MorseWord>,
}

impl StateSumTerm {
    /// `coefficient · Π_i H_{t_i}(D_i)`.
    pub fn value<M: MemoStore>(&self, engine: &SkeinEngine<M>) -> Result<Scalar, EvalError> {
        let n = self.subdiagrams.len();
        let mut v = self.coefficient.clone();
        for (i, d) in self.subdiagrams.iter().enumerate() {
            if !d.is_empty() {
                v = &v * &engine.eval_one_colour(d)?.embed(i + 1, n)?;
            }
        }
        Ok(v)
    }
}

/// All terms of the `n`-label state sum (`n` in `1..=3`).
pub fn state_sum_terms(
    w: &MorseWord,
    n: usize,
    ledger: ConventionLedger,
) -> Result<Vec<StateSumTerm>, EvalError> {
    let lab = Labeller::new(w, n, ledger)?;
    lab.enumerate().iter().map(|f| lab.term(w, f)).collect()
}

/// The `n`-label state sum of a closed plane diagram, in `k^{⊗n}`.
pub fn state_sum<M: MemoStore>(
    engine: &SkeinEngine<M>,
    w: &MorseWord,
    n: usize,
    ledger: ConventionLedger,
) -> Result<Scalar, EvalError> {
    let mut acc = Scalar::zero(n);
    for term in state_sum_terms(w, n, ledger)? {
        acc = &acc + &term.value(engine)?;
    }
    Ok(acc)
}
