//! The ground ring `k = C(q)[q^{±t}, δ] / ((q - q^{-1}) δ = q^t - q^{-t})`
//! and its tensor powers over `C(q)`.
//!
//! Every element that shows up in skein computations lies in the
//! localization of `Z[q^±, a_1^±, ..., a_n^±]` at `z = q - q^{-1}`, so a
//! [`Scalar`] is stored as `num / z^den_pow` with `num` not divisible by
//! `z` whenever `den_pow > 0`. This canonical form makes structural
//! equality coincide with equality in the ring.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::ScalarError;
use crate::laurent::{Exponents, LaurentPoly};

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Scalar {
    num: LaurentPoly,
    den_pow: u32,
}

impl Scalar {
    /// Builds `num / z^den_pow` and reduces it to canonical form.
    pub fn from_parts(num: LaurentPoly, den_pow: u32) -> Self {
        let mut s = Scalar { num, den_pow };
        s.canonicalize();
        s
    }

    pub fn from_poly(num: LaurentPoly) -> Self {
        Scalar { num, den_pow: 0 }
    }

    fn canonicalize(&mut self) {
        if self.num.is_zero() {
            self.den_pow = 0;
            return;
        }
        while self.den_pow > 0 {
            match self.num.div_z() {
                Some(n) => {
                    self.num = n;
                    self.den_pow -= 1;
                }
                None => break,
            }
        }
    }

    pub fn zero(arity: usize) -> Self {
        Self::from_poly(LaurentPoly::zero(arity))
    }

    pub fn one(arity: usize) -> Self {
        Self::from_poly(LaurentPoly::one(arity))
    }

    pub fn integer(arity: usize, c: impl Into<BigInt>) -> Self {
        Self::from_poly(LaurentPoly::constant(arity, c))
    }

    /// `q^e`.
    pub fn q_pow(arity: usize, e: i32) -> Self {
        Self::from_poly(LaurentPoly::q_pow(arity, e))
    }

    /// `z = q - q^{-1}`.
    pub fn z(arity: usize) -> Self {
        Self::from_poly(LaurentPoly::z(arity))
    }

    /// `(q^{t_i})^e`.
    pub fn a_pow(arity: usize, i: usize, e: i32) -> Result<Self, ScalarError> {
        check_index(i, arity)?;
        Ok(Self::from_poly(LaurentPoly::a_pow(arity, i, e)))
    }

    /// `δ_i = (q^{t_i} - q^{-t_i}) / (q - q^{-1})`.
    pub fn delta(i: usize, arity: usize) -> Result<Self, ScalarError> {
        check_index(i, arity)?;
        let num = LaurentPoly::a_pow(arity, i, 1) - LaurentPoly::a_pow(arity, i, -1);
        Ok(Self::from_parts(num, 1))
    }

    pub fn arity(&self) -> usize {
        self.num.arity()
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den_pow(&self) -> u32 {
        self.den_pow
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den_pow == 0 && self.num.is_one()
    }

    fn check_same_arity(&self, other: &Scalar) -> Result<(), ScalarError> {
        if self.arity() == other.arity() {
            Ok(())
        } else {
            Err(ScalarError::ArityMismatch {
                left: self.arity(),
                right: other.arity(),
            })
        }
    }

    fn lifted_num(&self, den: u32) -> LaurentPoly {
        debug_assert!(den >= self.den_pow);
        let extra = den - self.den_pow;
        if extra == 0 {
            self.num.clone()
        } else {
            &self.num * &LaurentPoly::z(self.arity()).pow(extra)
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_same_arity(other)?;
        let den = self.den_pow.max(other.den_pow);
        let num = self.lifted_num(den) + other.lifted_num(den);
        Ok(Self::from_parts(num, den))
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_same_arity(other)?;
        Ok(Self::from_parts(
            &self.num * &other.num,
            self.den_pow + other.den_pow,
        ))
    }

    /// Integer power; negative exponents are allowed on units only.
    pub fn pow(&self, e: i64) -> Result<Scalar, ScalarError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Scalar::one(self.arity());
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &sq;
            }
            k >>= 1;
            if k > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Inverse of a unit `± monomial · z^j`.
    pub fn inverse(&self) -> Result<Scalar, ScalarError> {
        let mut num = self.num.clone();
        let mut z_power = 0u32;
        while let Some(n) = num.div_z() {
            if n.is_zero() {
                break;
            }
            num = n;
            z_power += 1;
        }
        let (negative, exps) = num.as_signed_monomial().ok_or(ScalarError::NotInvertible)?;
        let inv_exps: Exponents = exps.iter().map(|x| -x).collect();
        let sign = if negative { -BigInt::one() } else { BigInt::one() };
        let inv_mono = LaurentPoly::monomial(self.arity(), sign, inv_exps);
        let num = &inv_mono * &LaurentPoly::z(self.arity()).pow(self.den_pow);
        Ok(Self::from_parts(num, z_power))
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.checked_mul(&other.inverse()?)
    }

    /// Rewrites `a_i -> images[i]` (monomial images). `q` must map to `q`,
    /// so `z` is fixed and the denominator carries over unchanged.
    fn substitute(&self, new_arity: usize, images: &[Exponents]) -> Scalar {
        debug_assert!(images[0][0] == 1 && images[0][1..].iter().all(|&x| x == 0));
        Self::from_parts(self.num.substitute(new_arity, images), self.den_pow)
    }

    fn identity_images(arity: usize, new_arity: usize) -> Vec<Exponents> {
        let mut images = Vec::with_capacity(arity + 1);
        let mut qimg = LaurentPoly::unit_exponents(new_arity);
        qimg[0] = 1;
        images.push(qimg);
        for _ in 0..arity {
            images.push(LaurentPoly::unit_exponents(new_arity));
        }
        images
    }

    /// Applies the scalar coproduct in tensor slot `slot`:
    /// `a_slot -> a_slot a_{slot+1}`, later variables shift up by one.
    pub fn coproduct_at(&self, slot: usize) -> Result<Scalar, ScalarError> {
        let n = self.arity();
        check_index(slot, n)?;
        let mut images = Self::identity_images(n, n + 1);
        for i in 1..=n {
            if i < slot {
                images[i][i] = 1;
            } else if i == slot {
                images[i][i] = 1;
                images[i][i + 1] = 1;
            } else {
                images[i][i + 1] = 1;
            }
        }
        Ok(self.substitute(n + 1, &images))
    }

    /// `Δ: k -> k ⊗ k`, determined by `Δ(q^t) = q^{t_1} q^{t_2}` and
    /// `Δ(δ) = δ_1 q^{t_2} + q^{-t_1} δ_2`.
    pub fn coproduct(&self) -> Result<Scalar, ScalarError> {
        if self.arity() != 1 {
            return Err(ScalarError::ArityMismatch {
                left: self.arity(),
                right: 1,
            });
        }
        self.coproduct_at(1)
    }

    /// Applies the counit in tensor slot `slot` (`q^{t_slot} -> 1`,
    /// `δ_slot -> 0`); later variables shift down by one.
    pub fn counit_at(&self, slot: usize) -> Result<Scalar, ScalarError> {
        let n = self.arity();
        check_index(slot, n)?;
        let mut images = Self::identity_images(n, n - 1);
        for i in 1..=n {
            if i < slot {
                images[i][i] = 1;
            } else if i > slot {
                images[i][i - 1] = 1;
            }
        }
        Ok(self.substitute(n - 1, &images))
    }

    /// `ε: k -> C(q)` with `ε(q^t) = 1`, `ε(δ) = 0`.
    pub fn counit(&self) -> Result<Scalar, ScalarError> {
        if self.arity() != 1 {
            return Err(ScalarError::ArityMismatch {
                left: self.arity(),
                right: 1,
            });
        }
        self.counit_at(1)
    }

    /// Substitutes `q^{t_i} -> q^{N_i}` and returns the resulting Laurent
    /// polynomial in `q`.
    pub fn specialize(&self, values: &[i32]) -> Result<LaurentPoly, ScalarError> {
        let s = self.specialize_fraction(values)?;
        if s.den_pow == 0 {
            Ok(s.num)
        } else {
            Err(ScalarError::NotPolynomial)
        }
    }

    /// Like [`specialize`](Self::specialize) but keeps any leftover power
    /// of `z` in the denominator.
    pub fn specialize_fraction(&self, values: &[i32]) -> Result<Scalar, ScalarError> {
        let n = self.arity();
        if values.len() != n {
            return Err(ScalarError::WrongValueCount {
                expected: n,
                got: values.len(),
            });
        }
        let mut images = Self::identity_images(n, 0);
        for (i, &v) in values.iter().enumerate() {
            images[i + 1][0] = v;
        }
        // q -> q and a_i -> q^{N_i}; the q image is fixed so the helper's
        // invariant holds.
        let num = self.num.substitute(0, &images);
        Ok(Self::from_parts(num, self.den_pow))
    }

    /// Renames the single parameter of an arity-1 scalar to `t_slot` in
    /// arity `n`.
    pub fn embed(&self, slot: usize, n: usize) -> Result<Scalar, ScalarError> {
        if self.arity() != 1 {
            return Err(ScalarError::ArityMismatch {
                left: self.arity(),
                right: 1,
            });
        }
        check_index(slot, n)?;
        let mut images = Self::identity_images(1, n);
        images[1][slot] = 1;
        Ok(self.substitute(n, &images))
    }

    /// Embeds an arity-`m` scalar into arity `n`, sending parameter `i` to
    /// `slots[i - 1]`.
    pub fn embed_many(&self, slots: &[usize], n: usize) -> Result<Scalar, ScalarError> {
        let m = self.arity();
        if slots.len() != m {
            return Err(ScalarError::WrongValueCount {
                expected: m,
                got: slots.len(),
            });
        }
        let mut images = Self::identity_images(m, n);
        for (i, &s) in slots.iter().enumerate() {
            check_index(s, n)?;
            images[i + 1][s] = 1;
        }
        Ok(self.substitute(n, &images))
    }

    /// Multiplies by `Π a_i^{e_i}`.
    pub fn mul_a_monomial(&self, exps: &[i32]) -> Scalar {
        let n = self.arity();
        assert_eq!(exps.len(), n);
        let mut shift = LaurentPoly::unit_exponents(n);
        shift[1..].copy_from_slice(exps);
        Scalar {
            num: self.num.mul_monomial(&BigInt::one(), &shift),
            den_pow: self.den_pow,
        }
    }

    /// The involution `q -> q^{-1}`, `q^{t_i} -> q^{-t_i}`; it sends `z`
    /// to `-z` and fixes every `δ_i`.
    pub fn bar(&self) -> Scalar {
        let mut num = self.num.bar();
        if self.den_pow % 2 == 1 {
            num = -num;
        }
        Scalar {
            num,
            den_pow: self.den_pow,
        }
    }

    /// Rewrites the element as a sum of `coefficient · Π δ_i^{m_i}` with
    /// Laurent-polynomial coefficients, plus fraction leftovers where no
    /// such form exists.
    pub fn delta_form(&self) -> Vec<DeltaTerm> {
        // Both remainder windows give valid forms; keep the shorter one.
        let n = self.arity();
        let forms: Vec<BTreeMap<(Vec<u32>, u32), LaurentPoly>> = [-1, 0]
            .into_iter()
            .map(|low| {
                let mut acc = BTreeMap::new();
                let mut deltas = Vec::from_iter(core::iter::repeat(0).take(n));
                decompose(&self.num, self.den_pow, low, &mut deltas, &mut acc);
                acc
            })
            .collect();
        let size = |f: &BTreeMap<(Vec<u32>, u32), LaurentPoly>| -> usize {
            f.values().map(|c| c.terms().count()).sum()
        };
        let acc = forms
            .into_iter()
            .min_by_key(|f| size(f))
            .expect("two forms");
        let mut out: Vec<DeltaTerm> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((deltas, den_pow), coeff)| DeltaTerm {
                deltas,
                den_pow,
                coeff,
            })
            .collect();
        out.sort_by(|x, y| {
            y.deltas
                .cmp(&x.deltas)
                .then_with(|| x.den_pow.cmp(&y.den_pow))
        });
        out
    }
}

/// One summand of [`Scalar::delta_form`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaTerm {
    pub deltas: Vec<u32>,
    pub den_pow: u32,
    pub coeff: LaurentPoly,
}

fn decompose(
    num: &LaurentPoly,
    den: u32,
    low: i32,
    deltas: &mut Vec<u32>,
    acc: &mut BTreeMap<(Vec<u32>, u32), LaurentPoly>,
) {
    if num.is_zero() {
        return;
    }
    if den == 0 {
        push_term(acc, deltas, 0, num.clone());
        return;
    }
    let mut rem = num.clone();
    for i in 1..=num.arity() {
        let (quot, r) = rem.divmod_a_difference_window(i, low);
        if !quot.is_zero() {
            deltas[i - 1] += 1;
            decompose(&quot, den - 1, low, deltas, acc);
            deltas[i - 1] -= 1;
        }
        rem = r;
    }
    if rem.is_zero() {
        return;
    }
    let mut k = den;
    while k > 0 {
        match rem.div_z() {
            Some(r) => {
                rem = r;
                k -= 1;
            }
            None => break,
        }
    }
    push_term(acc, deltas, k, rem);
}

fn push_term(
    acc: &mut BTreeMap<(Vec<u32>, u32), LaurentPoly>,
    deltas: &[u32],
    den: u32,
    p: LaurentPoly,
) {
    let e = acc
        .entry((deltas.to_vec(), den))
        .or_insert_with(|| LaurentPoly::zero(p.arity()));
    *e += p;
}

fn check_index(i: usize, arity: usize) -> Result<(), ScalarError> {
    if i >= 1 && i <= arity {
        Ok(())
    } else {
        Err(ScalarError::IndexOutOfRange { index: i, arity })
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    /// Panics on arity mismatch; use [`Scalar::checked_add`] for fallible
    /// addition.
    fn add(self, rhs: &'a Scalar) -> Scalar {
        self.checked_add(rhs).expect("scalar arity mismatch")
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self.checked_sub(rhs).expect("scalar arity mismatch")
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        self.checked_mul(rhs).expect("scalar arity mismatch")
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: -&self.num,
            den_pow: self.den_pow,
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl core::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        let mut it = iter.peekable();
        let arity = it.peek().map(|s| s.arity()).unwrap_or(0);
        it.fold(Scalar::zero(arity), |a, b| a + b)
    }
}

// ---------------------------------------------------------------------------
// Pretty printing

fn param_name(arity: usize, i: usize) -> String {
    if arity == 1 {
        String::from("t")
    } else {
        alloc::format!("t{}", i)
    }
}

/// Factor strings of a monomial (without its sign), optionally
/// interleaved with powers of `δ_i`: each `q^{t_i}` is followed by `δ_i`.
fn monomial_factors(exps: &[i32], abs_coeff: &BigInt, arity: usize, deltas: &[u32]) -> Vec<String> {
    let mut factors = Vec::new();
    if !abs_coeff.is_one() {
        factors.push(alloc::format!("{}", abs_coeff));
    }
    match exps[0] {
        0 => {}
        1 => factors.push(String::from("q")),
        e => factors.push(alloc::format!("q^{}", e)),
    }
    for i in 1..=arity {
        let name = param_name(arity, i);
        match exps[i] {
            0 => {}
            1 => factors.push(alloc::format!("q^{}", name)),
            -1 => factors.push(alloc::format!("q^-{}", name)),
            e => factors.push(alloc::format!("q^{}{}", e, name)),
        }
        let d = if arity == 1 {
            String::from("d")
        } else {
            alloc::format!("d{}", i)
        };
        match deltas.get(i - 1).copied().unwrap_or(0) {
            0 => {}
            1 => factors.push(d),
            m => factors.push(alloc::format!("{}^{}", d, m)),
        }
    }
    factors
}

/// Formats a Laurent polynomial, terms in descending exponent order.
pub fn format_poly(p: &LaurentPoly) -> String {
    if p.is_zero() {
        return String::from("0");
    }
    let mut out = String::new();
    for (idx, (e, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        let factors = monomial_factors(e, &abs, p.arity(), &[]);
        let body = if factors.is_empty() {
            String::from("1")
        } else {
            factors.join("*")
        };
        match (idx, neg) {
            (0, false) => out.push_str(&body),
            (0, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    out
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arity = self.arity();
        let terms = self.delta_form();
        if terms.is_empty() {
            return f.write_str("0");
        }
        if terms.len() == 1 && terms[0].den_pow == 0 && terms[0].deltas.iter().all(|&m| m == 0) {
            return f.write_str(&format_poly(&terms[0].coeff));
        }
        let mut first = true;
        for t in terms {
            let (neg, factors) = if t.coeff.len() == 1 {
                let (e, c) = t.coeff.terms().next().expect("one term");
                (c.is_negative(), monomial_factors(e, &c.abs(), arity, &t.deltas))
            } else {
                let mut factors = alloc::vec![alloc::format!("({})", format_poly(&t.coeff))];
                let unit = LaurentPoly::unit_exponents(arity);
                factors.extend(monomial_factors(&unit, &BigInt::one(), arity, &t.deltas));
                (false, factors)
            };
            let mut body = if factors.is_empty() {
                String::from("1")
            } else {
                factors.join("*")
            };
            match t.den_pow {
                0 => {}
                1 => body.push_str("/(q - q^-1)"),
                k => body.push_str(&alloc::format!("/(q - q^-1)^{}", k)),
            }
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            f.write_str(&body)?;
            first = false;
        }
        Ok(())
    }
}
