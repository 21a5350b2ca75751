//! Exact coefficient arithmetic.
//!
//! Everything in the Hecke algebra has coefficients in `Z[v, v^-1]` where
//! `v = q^{1/2}`. The subring `Z[Q]` with `Q = v^-1 - v` holds the
//! R-polynomials and is represented separately by [`QPoly`].

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{Map, Value};

use crate::error::{Error, Result};

/// Sparse Laurent polynomial in `v` with integer coefficients.
///
/// Terms are kept sorted by exponent and no stored coefficient is zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: Vec<(i32, BigInt)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * v^exp`.
    pub fn monomial(c: impl Into<BigInt>, exp: i32) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(exp, c)] }
        }
    }

    /// `v^exp`.
    pub fn v_pow(exp: i32) -> Self {
        Self::monomial(1, exp)
    }

    /// `q = v^2`.
    pub fn q() -> Self {
        Self::v_pow(2)
    }

    /// `Q = v^-1 - v`.
    pub fn big_q() -> Self {
        Self::from_terms([(-1, BigInt::one()), (1, -BigInt::one())])
    }

    /// Builds a polynomial from arbitrary `(exponent, coefficient)` pairs,
    /// merging repeated exponents.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i32, C)>,
        C: Into<BigInt>,
    {
        let mut v: Vec<(i32, BigInt)> = terms.into_iter().map(|(e, c)| (e, c.into())).collect();
        v.sort_by_key(|t| t.0);
        let mut out: Vec<(i32, BigInt)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        Self { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn terms(&self) -> &[(i32, BigInt)] {
        &self.terms
    }

    pub fn coeff(&self, exp: i32) -> BigInt {
        self.terms.binary_search_by_key(&exp, |t| t.0).map(|i| self.terms[i].1.clone()).unwrap_or_default()
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.last().map(|t| t.0)
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect() }
    }

    /// The bar involution on scalars, `v -> v^-1`.
    pub fn bar(&self) -> Self {
        let mut terms: Vec<_> = self.terms.iter().map(|(e, c)| (-e, c.clone())).collect();
        terms.reverse();
        Self { terms }
    }

    /// Value at `v = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.iter().map(|t| &t.1).sum()
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division by `v^{2k} = q^k`; `None` unless every exponent stays
    /// nonnegative after the shift is applied and it is a polynomial in `q`.
    pub fn to_q_polynomial(&self) -> Option<Vec<BigInt>> {
        let mut out = Vec::new();
        for (e, c) in &self.terms {
            if *e < 0 || e % 2 != 0 {
                return None;
            }
            let idx = (*e / 2) as usize;
            if out.len() <= idx {
                out.resize(idx + 1, BigInt::zero());
            }
            out[idx] = c.clone();
        }
        Some(out)
    }

    pub fn to_json(&self) -> Value {
        let mut inner = Map::new();
        for (e, c) in &self.terms {
            inner.insert(e.to_string(), bigint_to_json(c));
        }
        let mut outer = Map::new();
        outer.insert("v".into(), Value::Object(inner));
        Value::Object(outer)
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let inner =
            value.get("v").and_then(Value::as_object).ok_or_else(|| Error::Parse("expected {\"v\": {...}}".into()))?;
        let mut terms = Vec::with_capacity(inner.len());
        for (k, c) in inner {
            let e: i32 = k.parse().map_err(|_| Error::Parse(format!("bad exponent {k:?}")))?;
            terms.push((e, bigint_from_json(c)?));
        }
        Ok(Self::from_terms(terms))
    }

    fn add_terms(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            } else {
                let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        Self { terms: out }
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.add_terms(rhs, false)
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.add_terms(rhs, true)
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = self.add_terms(rhs, false);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        *self = self.add_terms(rhs, true);
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        if rhs.terms.len() == 1 {
            let (e, c) = &rhs.terms[0];
            return self.scale(c).shift(*e);
        }
        if self.terms.len() == 1 {
            let (e, c) = &self.terms[0];
            return rhs.scale(c).shift(*e);
        }
        // exponents are dense in practice: accumulate into a window
        let lo = self.terms[0].0 + rhs.terms[0].0;
        let hi = self.terms.last().unwrap().0 + rhs.terms.last().unwrap().0;
        let mut acc = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                acc[(ea + eb - lo) as usize] += ca * cb;
            }
        }
        LaurentPoly {
            terms: acc.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (lo + i as i32, c)).collect(),
        }
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

/// Canonical text form: ascending exponents, e.g. `-1*v^-2 + 3 + 2*v^4`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let mag = if i == 0 {
                c.clone()
            } else if c.is_negative() {
                write!(f, " - ")?;
                -c
            } else {
                write!(f, " + ")?;
                c.clone()
            };
            match e {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{mag}*v")?,
                _ => write!(f, "{mag}*v^{e}")?,
            }
        }
        Ok(())
    }
}

/// Polynomial in `Q = v^-1 - v` with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QPoly {
    terms: Vec<(u32, BigInt)>,
}

impl QPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c * Q^exp`.
    pub fn monomial(c: impl Into<BigInt>, exp: u32) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(exp, c)] }
        }
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, C)>,
        C: Into<BigInt>,
    {
        let mut v: Vec<(u32, BigInt)> = terms.into_iter().map(|(e, c)| (e, c.into())).collect();
        v.sort_by_key(|t| t.0);
        let mut out: Vec<(u32, BigInt)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        Self { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(u32, BigInt)] {
        &self.terms
    }

    pub fn coeff(&self, exp: u32) -> BigInt {
        self.terms.binary_search_by_key(&exp, |t| t.0).map(|i| self.terms[i].1.clone()).unwrap_or_default()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.last().map(|t| t.0)
    }

    /// True when every coefficient is nonnegative, i.e. the value lies in `Z_+[Q]`.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.iter().all(|t| !t.1.is_negative())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_terms(self.terms.iter().chain(&other.terms).cloned())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_terms(
            self.terms.iter().flat_map(|(ea, ca)| other.terms.iter().map(move |(eb, cb)| (ea + eb, ca * cb))),
        )
    }

    pub fn to_json(&self) -> Value {
        let mut inner = Map::new();
        for (e, c) in &self.terms {
            inner.insert(e.to_string(), bigint_to_json(c));
        }
        let mut outer = Map::new();
        outer.insert("Q".into(), Value::Object(inner));
        Value::Object(outer)
    }
}

/// Ascending powers of `Q`, unit coefficients elided: `1 + 2*Q^2 - Q^3`.
impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let mag = if i == 0 {
                if c.is_negative() && *e != 0 {
                    write!(f, "-")?;
                    -c
                } else {
                    c.clone()
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
                -c
            } else {
                write!(f, " + ")?;
                c.clone()
            };
            let var = match e {
                0 => String::new(),
                1 => "Q".to_string(),
                _ => format!("Q^{e}"),
            };
            if *e == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{mag}*{var}")?;
            }
        }
        Ok(())
    }
}

/// `(v^-1 - v)^d` expanded.
fn big_q_power(d: u32) -> LaurentPoly {
    let mut binom = BigInt::one();
    let mut terms = Vec::with_capacity(d as usize + 1);
    for j in 0..=d {
        let c = if j % 2 == 0 { binom.clone() } else { -binom.clone() };
        terms.push((2 * j as i32 - d as i32, c));
        binom = binom * BigInt::from(d - j) / BigInt::from(j + 1);
    }
    LaurentPoly::from_terms(terms)
}

/// Substitutes `Q = v^-1 - v` and expands.
pub fn q_to_v(p: &QPoly) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    for (e, c) in &p.terms {
        acc += &big_q_power(*e).scale(c);
    }
    acc
}

/// Inverse of [`q_to_v`] on its image.
///
/// Peels off the top `v`-term with a multiple of `Q^d`, whose leading term is
/// `(-1)^d v^d`, until nothing is left.
pub fn v_to_q(p: &LaurentPoly) -> Result<QPoly> {
    let mut rest = p.clone();
    let mut out = Vec::new();
    while let Some(d) = rest.max_exp() {
        if d < 0 {
            return Err(Error::NotInQSubring(p.to_string()));
        }
        let d = d as u32;
        let lead = rest.coeff(d as i32);
        let c = if d.is_multiple_of(2) { lead } else { -lead };
        rest -= &big_q_power(d).scale(&c);
        out.push((d, c));
    }
    Ok(QPoly::from_terms(out))
}

/// Bar involution on scalars.
pub fn scalar_bar(p: &LaurentPoly) -> LaurentPoly {
    p.bar()
}

pub(crate) fn bigint_to_json(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(x) => Value::from(x),
        None => Value::String(c.to_string()),
    }
}

pub(crate) fn bigint_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => {
            n.as_i64().map(BigInt::from).ok_or_else(|| Error::Parse(format!("non-integer coefficient {n}")))
        }
        Value::String(s) => s.parse().map_err(|_| Error::Parse(format!("bad integer {s:?}"))),
        other => Err(Error::Parse(format!("bad coefficient {other}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(terms: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn bar_examples() {
        assert_eq!(scalar_bar(&lp(&[(1, 1), (0, 2)])), lp(&[(-1, 1), (0, 2)]));
        assert_eq!(scalar_bar(&LaurentPoly::zero()), LaurentPoly::zero());
        assert_eq!(scalar_bar(&LaurentPoly::big_q()), -LaurentPoly::big_q());
    }

    #[test]
    fn q_to_v_examples() {
        assert_eq!(q_to_v(&QPoly::one()), LaurentPoly::one());
        assert_eq!(q_to_v(&QPoly::monomial(1, 1)), lp(&[(-1, 1), (1, -1)]));
        assert_eq!(q_to_v(&QPoly::monomial(1, 2)), lp(&[(-2, 1), (0, -2), (2, 1)]));
    }

    #[test]
    fn v_to_q_examples() {
        assert_eq!(v_to_q(&lp(&[(-1, 1), (1, -1)])).unwrap(), QPoly::monomial(1, 1));
        assert_eq!(v_to_q(&LaurentPoly::one()).unwrap(), QPoly::one());
        assert!(matches!(v_to_q(&LaurentPoly::v_pow(1)), Err(Error::NotInQSubring(_))));
        assert!(matches!(v_to_q(&LaurentPoly::v_pow(-3)), Err(Error::NotInQSubring(_))));
    }

    /// No Q-polynomial of degree <= 3 with coefficients in [-3, 3] expands to `v`.
    #[test]
    fn v_has_no_q_preimage_brute_force() {
        let target = LaurentPoly::v_pow(1);
        let range = -3i64..=3;
        for a in range.clone() {
            for b in range.clone() {
                for c in range.clone() {
                    for d in range.clone() {
                        let p = QPoly::from_terms([(0, a), (1, b), (2, c), (3, d)]);
                        assert_ne!(q_to_v(&p), target);
                    }
                }
            }
        }
    }

    #[test]
    fn display_forms() {
        assert_eq!(lp(&[(-2, -1), (0, 3), (4, 2)]).to_string(), "-1*v^-2 + 3 + 2*v^4");
        assert_eq!(lp(&[(1, -1), (-1, 1)]).to_string(), "1*v^-1 - 1*v");
        assert_eq!(QPoly::from_terms([(0, 1), (2, 2), (3, -1)]).to_string(), "1 + 2*Q^2 - Q^3");
        assert_eq!(QPoly::monomial(-1, 1).to_string(), "-Q");
    }

    #[test]
    fn json_shape() {
        let p = lp(&[(-2, -1), (0, 3), (4, 2)]);
        let j = p.to_json();
        assert_eq!(j.to_string(), r#"{"v":{"-2":-1,"0":3,"4":2}}"#);
        assert_eq!(LaurentPoly::from_json(&j).unwrap(), p);
        let big = LaurentPoly::constant(BigInt::from(i64::MAX) * 4);
        assert_eq!(LaurentPoly::from_json(&big.to_json()).unwrap(), big);
    }

    #[test]
    fn q_specializations() {
        assert_eq!(LaurentPoly::big_q().eval_at_one(), BigInt::zero());
        assert_eq!(
            (&LaurentPoly::q() - &LaurentPoly::one()).to_q_polynomial(),
            Some(vec![BigInt::from(-1), BigInt::from(1)])
        );
        assert_eq!(LaurentPoly::v_pow(1).to_q_polynomial(), None);
    }

    fn arb_laurent() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-6i32..6, -20i64..20), 0..6).prop_map(LaurentPoly::from_terms)
    }

    fn arb_q() -> impl Strategy<Value = QPoly> {
        prop::collection::vec((0u32..6, -20i64..20), 0..5).prop_map(QPoly::from_terms)
    }

    proptest! {
        #[test]
        fn bar_is_involution(p in arb_laurent()) {
            prop_assert_eq!(p.bar().bar(), p);
        }

        #[test]
        fn q_to_v_is_ring_hom(a in arb_q(), b in arb_q()) {
            prop_assert_eq!(q_to_v(&a.mul(&b)), &q_to_v(&a) * &q_to_v(&b));
            prop_assert_eq!(q_to_v(&a.add(&b)), &q_to_v(&a) + &q_to_v(&b));
        }

        #[test]
        fn v_to_q_round_trips(a in arb_q()) {
            prop_assert_eq!(v_to_q(&q_to_v(&a)).unwrap(), a);
        }

        #[test]
        fn ring_axioms(a in arb_laurent(), b in arb_laurent(), c in arb_laurent()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        }
    }
}
