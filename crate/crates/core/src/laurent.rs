//! Multivariate Laurent polynomials with big-integer coefficients in the
//! variables `q, a_1, ..., a_n`, where `a_i` stands for `q^{t_i}`.

use alloc::collections::btree_map::{self, BTreeMap};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use smallvec::SmallVec;

/// Exponent vector `(e_q, e_{a_1}, ..., e_{a_n})`.
pub type Exponents = SmallVec<[i32; 4]>;

/// A Laurent polynomial in `q` and `arity` further variables.
///
/// Terms are kept in a sorted map keyed by exponent vector; zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPoly {
    arity: usize,
    terms: BTreeMap<Exponents, BigInt>,
}

impl LaurentPoly {
    pub fn zero(arity: usize) -> Self {
        LaurentPoly {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        Self::monomial(arity, BigInt::one(), Self::unit_exponents(arity))
    }

    pub fn constant(arity: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(arity, c.into(), Self::unit_exponents(arity))
    }

    /// The zero exponent vector for this arity.
    pub fn unit_exponents(arity: usize) -> Exponents {
        core::iter::repeat(0).take(arity + 1).collect()
    }

    pub fn monomial(arity: usize, coeff: BigInt, exps: Exponents) -> Self {
        assert_eq!(exps.len(), arity + 1, "exponent vector length");
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exps, coeff);
        }
        LaurentPoly { arity, terms }
    }

    /// `q^e`.
    pub fn q_pow(arity: usize, e: i32) -> Self {
        let mut exps = Self::unit_exponents(arity);
        exps[0] = e;
        Self::monomial(arity, BigInt::one(), exps)
    }

    /// `a_i^e` with `i` 1-based.
    pub fn a_pow(arity: usize, i: usize, e: i32) -> Self {
        assert!(i >= 1 && i <= arity, "variable index out of range");
        let mut exps = Self::unit_exponents(arity);
        exps[i] = e;
        Self::monomial(arity, BigInt::one(), exps)
    }

    /// `q - q^{-1}`.
    pub fn z(arity: usize) -> Self {
        Self::q_pow(arity, 1) - Self::q_pow(arity, -1)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lexicographic order of exponent vectors.
    pub fn terms(&self) -> btree_map::Iter<'_, Exponents, BigInt> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[i32]) -> Option<&BigInt> {
        self.terms.get(exps)
    }

    fn add_term(&mut self, exps: Exponents, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Builds a polynomial from raw terms, merging duplicates.
    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = (Exponents, BigInt)>) -> Self {
        let mut p = Self::zero(arity);
        for (e, c) in terms {
            assert_eq!(e.len(), arity + 1, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    /// If the polynomial is `±` a single monomial, returns it.
    pub fn as_signed_monomial(&self) -> Option<(bool, &Exponents)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        if c.is_one() {
            Some((false, e))
        } else if (-c).is_one() {
            Some((true, e))
        } else {
            None
        }
    }

    pub fn mul_monomial(&self, coeff: &BigInt, exps: &[i32]) -> Self {
        if coeff.is_zero() {
            return Self::zero(self.arity);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let shifted: Exponents = e.iter().zip(exps).map(|(x, y)| x + y).collect();
                (shifted, c * coeff)
            })
            .collect();
        LaurentPoly {
            arity: self.arity,
            terms,
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.arity);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Rewrites every term through a linear map on exponent vectors:
    /// `q` goes to `images[0]`, `a_i` to `images[i]`.
    pub fn substitute(&self, new_arity: usize, images: &[Exponents]) -> Self {
        assert_eq!(images.len(), self.arity + 1);
        let mut out = Self::zero(new_arity);
        for (e, c) in &self.terms {
            let mut ne = Self::unit_exponents(new_arity);
            for (k, &ek) in e.iter().enumerate() {
                if ek != 0 {
                    for (slot, &im) in ne.iter_mut().zip(images[k].iter()) {
                        *slot += ek * im;
                    }
                }
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    /// The substitution `q -> q^{-1}`, `a_i -> a_i^{-1}`.
    pub fn bar(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().map(|x| -x).collect(), c.clone()))
            .collect();
        LaurentPoly {
            arity: self.arity,
            terms,
        }
    }

    /// Exact division by `q^2 - 1`, viewing the polynomial as a Laurent
    /// polynomial in `q` whose coefficients live in the group ring of the
    /// `a`-monomials. Returns `None` when the division leaves a remainder.
    pub fn div_q2_minus_1(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        // Group by the a-part of the exponent vector.
        let mut slices: BTreeMap<&[i32], BTreeMap<i32, BigInt>> = BTreeMap::new();
        for (e, c) in &self.terms {
            slices.entry(&e[1..]).or_default().insert(e[0], c.clone());
        }
        let mut out = Self::zero(self.arity);
        for (a_part, coeffs) in slices {
            let lo = *coeffs.keys().next()?;
            let hi = *coeffs.keys().next_back()?;
            if hi - lo < 2 {
                return None;
            }
            let width = (hi - lo + 1) as usize;
            let mut r: Vec<BigInt> = (0..width).map(|_| BigInt::zero()).collect();
            for (e, c) in coeffs {
                r[(e - lo) as usize] = c;
            }
            for idx in (2..width).rev() {
                let qc = core::mem::take(&mut r[idx]);
                if qc.is_zero() {
                    continue;
                }
                r[idx - 2] += &qc;
                let mut exps = Exponents::with_capacity(self.arity + 1);
                exps.push(lo + idx as i32 - 2);
                exps.extend_from_slice(a_part);
                out.add_term(exps, qc);
            }
            if !r[0].is_zero() || !r[1].is_zero() {
                return None;
            }
        }
        Some(out)
    }

    /// Exact division by `q - q^{-1} = q^{-1}(q^2 - 1)`.
    pub fn div_z(&self) -> Option<Self> {
        let mut shift = Self::unit_exponents(self.arity);
        shift[0] = 1;
        self.mul_monomial(&BigInt::one(), &shift).div_q2_minus_1()
    }

    /// Division with remainder by `a_i - a_i^{-1}` in the variable `a_i`:
    /// returns `(quot, rem)` with `self = (a_i - a_i^{-1}) * quot + rem`
    /// and every `a_i` exponent of `rem` in `{-1, 0}`.
    pub fn divmod_a_difference(&self, i: usize) -> (Self, Self) {
        self.divmod_a_difference_window(i, -1)
    }

    /// As [`Self::divmod_a_difference`], with the remainder window
    /// `{low, low + 1}`.
    pub fn divmod_a_difference_window(&self, i: usize, low: i32) -> (Self, Self) {
        assert!(i >= 1 && i <= self.arity);
        let mut quot = Self::zero(self.arity);
        let mut rem = Self::zero(self.arity);
        for (e, c) in &self.terms {
            let mut cur = e.clone();
            let c = c.clone();
            // a^k = a^{k-2} + (a - a^{-1}) a^{k-1}
            // a^k = a^{k+2} - (a - a^{-1}) a^{k+1}
            while cur[i] > low + 1 {
                let mut qe = cur.clone();
                qe[i] -= 1;
                quot.add_term(qe, c.clone());
                cur[i] -= 2;
            }
            while cur[i] < low {
                let mut qe = cur.clone();
                qe[i] += 1;
                quot.add_term(qe, -c.clone());
                cur[i] += 2;
            }
            rem.add_term(cur, c);
        }
        (quot, rem)
    }

    /// The term with the lexicographically largest exponent vector.
    pub fn leading_term(&self) -> Option<(&Exponents, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
                .unwrap_or(false)
    }
}

fn check_arity(a: &LaurentPoly, b: &LaurentPoly) {
    assert_eq!(a.arity, b.arity, "Laurent polynomial arity mismatch");
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        check_arity(self, rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += rhs;
        self
    }
}

impl AddAssign for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        check_arity(self, &rhs);
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.terms.values_mut() {
            *c = -core::mem::take(c);
        }
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        self + (-rhs)
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        check_arity(self, rhs);
        let mut out = LaurentPoly::zero(self.arity);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Exponents = e1.iter().zip(e2.iter()).map(|(x, y)| x + y).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl PartialOrd for LaurentPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LaurentPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arity
            .cmp(&other.arity)
            .then_with(|| self.terms.iter().cmp(other.terms.iter()))
    }
}
