//! Identity checks tying the skein engine, the state sum and the coproduct
//! together, plus calibration of the convention space.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::conventions::ConventionLedger;
use crate::coproduct::{coproduct, coproduct_iterated, coproduct_n, CoproductElement, Side};
use crate::diagram::{Framing, MorseWord, Orientation, Surface};
use crate::error::EvalError;
use crate::jaeger::state_sum;
use crate::scalar::Scalar;
use crate::skein::{MemoStore, SkeinEngine};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Identity {
    Jaeger,
    Coassoc,
    Counit,
    Mult,
    FramingRemark,
}

impl Identity {
    pub const ALL: [Identity; 5] = [
        Identity::Jaeger,
        Identity::Coassoc,
        Identity::Counit,
        Identity::Mult,
        Identity::FramingRemark,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Jaeger => "jaeger",
            Identity::Coassoc => "coassoc",
            Identity::Counit => "counit",
            Identity::Mult => "mult",
            Identity::FramingRemark => "framing-remark",
        }
    }

    pub fn from_name(s: &str) -> Option<Identity> {
        Self::ALL.into_iter().find(|i| i.name() == s)
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One equation with both sides computed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub label: String,
    pub left: Scalar,
    pub right: Scalar,
}

impl Check {
    pub fn new(label: impl Into<String>, left: Scalar, right: Scalar) -> Self {
        Check {
            label: label.into(),
            left,
            right,
        }
    }

    pub fn passed(&self) -> bool {
        self.left == self.right
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseReport {
    pub identity: Identity,
    pub diagram: String,
    pub checks: Vec<Check>,
    /// Why the identity does not apply to this diagram, if it does not.
    pub skipped: Option<&'static str>,
}

impl CaseReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    /// The first failing check, as a witness.
    pub fn witness(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed())
    }
}

fn family_checks<M: MemoStore>(
    engine: &SkeinEngine<M>,
    label: &str,
    x: &CoproductElement,
    y: &CoproductElement,
    k: usize,
) -> Result<Vec<Check>, EvalError> {
    let fx = x.annulus_eval_family(engine, k)?;
    let fy = y.annulus_eval_family(engine, k)?;
    Ok(fx
        .into_iter()
        .zip(fy)
        .enumerate()
        .map(|(i, (l, r))| Check::new(alloc::format!("{} [{}]", label, i), l, r))
        .collect())
}

/// Runs one identity on one diagram.
pub fn verify_case<M: MemoStore>(
    identity: Identity,
    engine: &SkeinEngine<M>,
    name: &str,
    w: &MorseWord,
    ledger: ConventionLedger,
) -> Result<CaseReport, EvalError> {
    let plane = w.surface == Surface::Plane;
    let mut checks = Vec::new();
    let mut skipped = None;
    match identity {
        Identity::Jaeger if plane => {
            let h = engine.eval_one_colour(w)?;
            let s = state_sum(engine, w, 2, ledger)?;
            let boxes = coproduct(w, ledger)?.evaluate(engine)?;
            let dh = h.coproduct()?;
            for n1 in -2..=2 {
                for n2 in -2..=2 {
                    checks.push(Check::new(
                        alloc::format!("state sum = Δ(H) at t = ({}, {})", n1, n2),
                        s.specialize_fraction(&[n1, n2])?,
                        dh.specialize_fraction(&[n1, n2])?,
                    ));
                }
            }
            checks.push(Check::new("state sum = Δ(H)", s.clone(), dh));
            checks.push(Check::new("box rules = state sum", boxes, s));
        }
        Identity::Coassoc if plane => {
            let s3 = state_sum(engine, w, 3, ledger)?;
            let s2 = state_sum(engine, w, 2, ledger)?;
            let left = coproduct_iterated(w, 3, Side::Left, ledger)?.evaluate(engine)?;
            let right = coproduct_iterated(w, 3, Side::Right, ledger)?.evaluate(engine)?;
            let direct = coproduct_n(w, 3, ledger)?.evaluate(engine)?;
            checks.push(Check::new("(Δ⊗id)Δ = 3-label state sum", left, s3.clone()));
            checks.push(Check::new("(id⊗Δ)Δ = 3-label state sum", right, s3.clone()));
            checks.push(Check::new("3-colour box rules = 3-label state sum", direct, s3.clone()));
            checks.push(Check::new("(Δ⊗id) of 2-label sum", s2.coproduct_at(1)?, s3.clone()));
            checks.push(Check::new("(id⊗Δ) of 2-label sum", s2.coproduct_at(2)?, s3));
        }
        Identity::Counit if plane => {
            let h = engine.eval_one_colour(w)?;
            let x = coproduct(w, ledger)?;
            let r = x.counit_slot(2)?.evaluate(engine)?;
            let l = x.counit_slot(1)?.evaluate(engine)?;
            checks.push(Check::new("(id⊗ε)Δ = H", r, h.clone()));
            checks.push(Check::new("(ε⊗id)Δ = H", l, h.clone()));
            let s = state_sum(engine, w, 2, ledger)?;
            checks.push(Check::new("(id⊗ε) state sum = H", s.counit_at(2)?, h.clone()));
            checks.push(Check::new("(ε⊗id) state sum = H", s.counit_at(1)?, h));
        }
        Identity::Mult if plane => {
            let x = coproduct(w, ledger)?;
            let square = coproduct(&w.disjoint_union(w), ledger)?;
            let product = x.mul(&x)?;
            checks.push(Check::new(
                "Δ(w ⊔ w) = Δ(w)·Δ(w)",
                square.evaluate(engine)?,
                product.evaluate(engine)?,
            ));
            let v = x.evaluate(engine)?;
            checks.push(Check::new("Δ(w ⊔ w) = Δ(w)²", square.evaluate(engine)?, &v * &v));
        }
        Identity::Mult => {
            let x = coproduct(w, ledger)?;
            let square = coproduct(&w.annulus_product(w), ledger)?;
            let product = x.mul(&x)?;
            checks.extend(family_checks(engine, "Δ(w·w) = Δ(w)·Δ(w)", &square, &product, 2)?);
        }
        Identity::FramingRemark if !plane => {
            let radial_w = MorseWord {
                framing: Framing::Radial,
                ..w.clone()
            };
            let bb_w = MorseWord {
                framing: Framing::Blackboard,
                ..w.clone()
            };
            let radial = coproduct(&radial_w, ledger)?;
            let bb = coproduct(&bb_w, ledger)?;
            checks.extend(framing_checks(&radial, &bb, ledger));
            if w.events.is_empty() && w.profile.len() == 1 && w.profile[0].orientation == Orientation::Up {
                checks.extend(core_anchor_checks(&radial, &bb));
            }
        }
        _ => {
            skipped = Some(if plane {
                "identity concerns annulus diagrams"
            } else {
                "identity needs a closed plane diagram"
            });
        }
    }
    Ok(CaseReport {
        identity,
        diagram: String::from(name),
        checks,
        skipped,
    })
}

/// Blackboard and radial coproducts differ term by term by the rotation
/// factors of the slot diagrams' windings.
fn framing_checks(
    radial: &CoproductElement,
    bb: &CoproductElement,
    ledger: ConventionLedger,
) -> Vec<Check> {
    let n = radial.slots;
    let mut out = Vec::new();
    let mut expected = CoproductElement::zero(n);
    for (words, c) in &radial.terms {
        let mut coeff = c.clone();
        for (i, w) in words.iter().enumerate() {
            let winding: i32 = w
                .profile
                .iter()
                .map(|s| match s.orientation {
                    Orientation::Up => 1,
                    Orientation::Down => -1,
                })
                .sum();
            coeff = coeff.mul_a_monomial(&ledger.rotation_exponents(n, i + 1, ledger.winding_sign * winding));
        }
        let words = words
            .iter()
            .map(|w| MorseWord {
                framing: Framing::Blackboard,
                ..w.clone()
            })
            .collect();
        expected.add_term(words, coeff);
    }
    let mut keys: Vec<&Vec<MorseWord>> = expected.terms.keys().chain(bb.terms.keys()).collect();
    keys.sort();
    keys.dedup();
    for k in keys {
        let zero = Scalar::zero(n);
        out.push(Check::new(
            alloc::format!("blackboard term {}", term_label(k)),
            bb.terms.get(k).cloned().unwrap_or_else(|| zero.clone()),
            expected.terms.get(k).cloned().unwrap_or(zero),
        ));
    }
    out
}

fn term_label(words: &[MorseWord]) -> String {
    let parts: Vec<String> = words
        .iter()
        .map(|w| {
            if w.is_empty() {
                String::from("∅")
            } else {
                alloc::format!("{} strands/{} events", w.profile.len(), w.events.len())
            }
        })
        .collect();
    alloc::format!("({})", parts.join(", "))
}

fn core_anchor_checks(radial: &CoproductElement, bb: &CoproductElement) -> Vec<Check> {
    let mut out = Vec::new();
    for (x, framing, green, red) in [
        (radial, Framing::Radial, Scalar::one(2), Scalar::one(2)),
        (
            bb,
            Framing::Blackboard,
            Scalar::a_pow(2, 2, 1).expect("index"),
            Scalar::a_pow(2, 1, -1).expect("index"),
        ),
    ] {
        let core = MorseWord::annulus_core(framing);
        let empty = MorseWord::annulus(vec![], vec![], framing);
        let mut expected = CoproductElement::zero(2);
        expected.add_term(vec![core.clone(), empty.clone()], green);
        expected.add_term(vec![empty, core], red);
        let name = match framing {
            Framing::Radial => "radial",
            Framing::Blackboard => "blackboard",
        };
        out.push(Check::new(
            alloc::format!("{} core: term count", name),
            Scalar::integer(0, x.len() as i64),
            Scalar::integer(0, 2),
        ));
        for (words, c) in &expected.terms {
            out.push(Check::new(
                alloc::format!("{} core: coefficient of {}", name, term_label(words)),
                x.terms.get(words).cloned().unwrap_or_else(|| Scalar::zero(2)),
                c.clone(),
            ));
        }
    }
    out
}

/// Result of checking one convention choice against the anchors.
#[derive(Clone, Debug)]
pub struct CalibrationRow {
    pub ledger: ConventionLedger,
    pub anchors: Vec<(&'static str, bool)>,
}

impl CalibrationRow {
    pub fn passed(&self) -> bool {
        self.anchors.iter().all(|(_, ok)| *ok)
    }
}

/// Checks every point of the convention space against the anchors: the
/// coproduct of `δ` on the unknot, both framings of the annulus core, and
/// agreement of the state sum with `Δ ∘ H` on the Hopf link and on an
/// unlink drawn with two antiparallel crossings.
pub fn calibrate<M: MemoStore>(engine: &SkeinEngine<M>) -> Result<Vec<CalibrationRow>, EvalError> {
    let unknot = MorseWord::braid_closure(1, &[]);
    let hopf = MorseWord::braid_closure(2, &[1, 1]);
    let core = MorseWord::annulus_core(Framing::Radial);
    let delta_split = Scalar::delta(1, 1)?.coproduct()?;
    let hopf_split = engine.eval_one_colour(&hopf)?.coproduct()?;
    // Braid closures only cross parallel strands; this one does not.
    let antiparallel = crate::diagram::moves::insert_r2(
        &MorseWord::braid_closure(2, &[]),
        1,
        1,
        crate::diagram::Over::Left,
    );
    let anti_split = engine.eval_one_colour(&antiparallel)?.coproduct()?;
    let mut rows = Vec::new();
    for ledger in ConventionLedger::all() {
        let mut anchors = Vec::new();
        let x = coproduct(&unknot, ledger)?;
        let u_box = x.evaluate(engine)? == delta_split;
        let u_sum = state_sum(engine, &unknot, 2, ledger)? == delta_split;
        anchors.push(("unknot: Δ(δ)", u_box && u_sum));
        // The evaluated total is symmetric in the two slots, so the anchor is
        // also read term by term: a₂·(green circle, ∅) + a₁⁻¹·(∅, red circle).
        let circle = unknot.strip_colours();
        let empty = MorseWord::empty();
        let mut expected = CoproductElement::zero(2);
        expected.add_term(vec![circle.clone(), empty.clone()], Scalar::a_pow(2, 2, 1)?);
        expected.add_term(vec![empty, circle], Scalar::a_pow(2, 1, -1)?);
        anchors.push(("unknot: term coefficients", x == expected));
        let reports = verify_case(Identity::FramingRemark, engine, "core", &core, ledger)?;
        let (radial_ok, bb_ok) = reports.checks.iter().filter(|c| c.label.contains("core")).fold(
            (true, true),
            |(r, b), c| {
                if c.label.starts_with("radial") {
                    (r && c.passed(), b)
                } else {
                    (r, b && c.passed())
                }
            },
        );
        anchors.push(("annulus core, radial framing", radial_ok));
        anchors.push(("annulus core, blackboard framing", bb_ok));
        let h_sum = state_sum(engine, &hopf, 2, ledger)? == hopf_split;
        let h_box = coproduct(&hopf, ledger)?.evaluate(engine)? == hopf_split;
        anchors.push(("Hopf link: state sum and box rules = Δ(H)", h_sum && h_box));
        let a_sum = state_sum(engine, &antiparallel, 2, ledger)? == anti_split;
        let a_box = coproduct(&antiparallel, ledger)?.evaluate(engine)? == anti_split;
        anchors.push(("antiparallel crossings: state sum and box rules = Δ(H)", a_sum && a_box));
        rows.push(CalibrationRow { ledger, anchors });
    }
    Ok(rows)
}
