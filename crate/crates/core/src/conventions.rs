//! Sign and placement conventions of the two-colour splitting rules.
//!
//! Three binary choices cannot be read off from the local pictures alone.
//! All three are pinned by the anchors in [`crate::verify::calibrate`].
//! The cutting placement only shows up on crossings between oppositely
//! oriented strands, where the smaller label has to enter on the over
//! strand.

use alloc::vec;
use alloc::vec::Vec;

/// Which pair of edges at a cutting vertex carries the larger label.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum CuttingPlacement {
    /// `f(over_in) = f(under_out) > f(under_in) = f(over_out)`.
    HighLabelOverIn,
    /// `f(over_in) = f(under_out) < f(under_in) = f(over_out)`.
    LowLabelOverIn,
}

/// How the rotation number of one colour is paired with the parameters of
/// the other colours.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum RotationPairing {
    /// Colour `i` with rotation `r` contributes `a_j^r` for `j > i` and
    /// `a_j^{-r}` for `j < i`; for two colours `a_2^{r_1} a_1^{-r_2}`.
    Forward,
    /// The inverse factor.
    Reversed,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ConventionLedger {
    pub cutting: CuttingPlacement,
    pub pairing: RotationPairing,
    /// Sign with which annulus winding enters the blackboard rotation number.
    pub winding_sign: i32,
}

impl Default for ConventionLedger {
    fn default() -> Self {
        Self::CALIBRATED
    }
}

impl ConventionLedger {
    pub const CALIBRATED: ConventionLedger = ConventionLedger {
        cutting: CuttingPlacement::LowLabelOverIn,
        pairing: RotationPairing::Forward,
        winding_sign: 1,
    };

    /// The whole convention space.
    pub fn all() -> Vec<ConventionLedger> {
        let mut out = Vec::with_capacity(8);
        for cutting in [CuttingPlacement::HighLabelOverIn, CuttingPlacement::LowLabelOverIn] {
            for pairing in [RotationPairing::Forward, RotationPairing::Reversed] {
                for winding_sign in [1, -1] {
                    out.push(ConventionLedger {
                        cutting,
                        pairing,
                        winding_sign,
                    });
                }
            }
        }
        out
    }

    fn pairing_sign(&self) -> i32 {
        match self.pairing {
            RotationPairing::Forward => 1,
            RotationPairing::Reversed => -1,
        }
    }

    /// Exponents of `a_1..a_n` in the rotation correction of colour `colour`
    /// (1-based) with rotation number `r`.
    pub fn rotation_exponents(&self, n: usize, colour: usize, r: i32) -> Vec<i32> {
        let s = self.pairing_sign() * r;
        (1..=n)
            .map(|j| match j.cmp(&colour) {
                core::cmp::Ordering::Greater => s,
                core::cmp::Ordering::Less => -s,
                core::cmp::Ordering::Equal => 0,
            })
            .collect()
    }

    /// Exponents for a single extremum of colour `colour`. Products over a
    /// closed curve reproduce [`rotation_exponents`](Self::rotation_exponents).
    pub fn extremum_exponents(&self, n: usize, colour: usize, cup: bool, right: bool) -> Vec<i32> {
        let s = self.pairing_sign() * if cup { 1 } else { -1 };
        let mut e = vec![0; n];
        for (j, slot) in e.iter_mut().enumerate() {
            let j = j + 1;
            if (right && j > colour) || (!right && j < colour) {
                *slot = s;
            }
        }
        e
    }

    /// Labels `[over_in, under_in, over_out, under_out]` form a cutting
    /// vertex.
    pub fn is_cutting(&self, f: [u8; 4]) -> bool {
        let [a, b, c, d] = f;
        if a != d || b != c {
            return false;
        }
        match self.cutting {
            CuttingPlacement::HighLabelOverIn => a > b,
            CuttingPlacement::LowLabelOverIn => a < b,
        }
    }

    pub fn is_colour_preserving(f: [u8; 4]) -> bool {
        f[0] == f[2] && f[1] == f[3]
    }

    pub fn is_admissible(&self, f: [u8; 4]) -> bool {
        Self::is_colour_preserving(f) || self.is_cutting(f)
    }
}
