//! The affine Hecke algebra in the Iwahori-Matsumoto presentation.
//!
//! Elements are sparse combinations of `T_w` or of the renormalized
//! `T~_w = v^{-l(w)} T_w`; every element records which basis it is written in.
//! Products are computed by walking a reduced word of the right factor one
//! generator at a time, using
//!
//! ```text
//! T~_w T~_s = T~_{ws}               if l(ws) = l(w) + 1
//!           = T~_{ws} - Q T~_w      if l(ws) = l(w) - 1
//! ```
//!
//! and the quadratic relation `(T_s + 1)(T_s - q) = 0` in the `T` basis.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::affine::{AffineElt, AffineGroup, DescentOrder};
use crate::coeffs::{v_to_q, LaurentPoly, QPoly};
use crate::error::{Error, Result};
use crate::exec::Exec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    T,
    Ttilde,
}

impl Basis {
    pub fn name(self) -> &'static str {
        match self {
            Basis::T => "T",
            Basis::Ttilde => "Ttilde",
        }
    }
}

/// A finite combination of basis elements with nonzero Laurent coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeElt {
    basis: Basis,
    terms: HashMap<AffineElt, LaurentPoly>,
}

impl HeckeElt {
    pub fn zero(basis: Basis) -> Self {
        Self { basis, terms: HashMap::new() }
    }

    pub fn basis_element(basis: Basis, x: AffineElt) -> Self {
        Self::term(basis, x, LaurentPoly::one())
    }

    pub fn term(basis: Basis, x: AffineElt, c: LaurentPoly) -> Self {
        let mut h = Self::zero(basis);
        h.add_term(x, &c);
        h
    }

    pub fn basis(&self) -> Basis {
        self.basis
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

    pub fn coeff(&self, x: &AffineElt) -> LaurentPoly {
        self.terms.get(x).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&AffineElt, &LaurentPoly)> {
        self.terms.iter()
    }

    /// Terms in element order.
    pub fn sorted_terms(&self) -> Vec<(&AffineElt, &LaurentPoly)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn support(&self) -> Vec<AffineElt> {
        let mut v: Vec<AffineElt> = self.terms.keys().cloned().collect();
        v.sort();
        v
    }

    pub fn add_term(&mut self, x: AffineElt, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(x) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
        }
    }

    pub fn add(&self, other: &HeckeElt) -> HeckeElt {
        assert_eq!(self.basis, other.basis, "adding elements in different bases");
        let mut out = self.clone();
        for (x, c) in &other.terms {
            out.add_term(x.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &HeckeElt) -> HeckeElt {
        self.add(&other.scale(&LaurentPoly::constant(-1)))
    }

    pub fn scale(&self, c: &LaurentPoly) -> HeckeElt {
        let mut out = HeckeElt::zero(self.basis);
        for (x, a) in &self.terms {
            out.add_term(x.clone(), &(a * c));
        }
        out
    }

    /// `T_x -> T_{x^{-1}}` with coefficients kept.
    pub fn iota(&self) -> HeckeElt {
        HeckeElt { basis: self.basis, terms: self.terms.iter().map(|(x, c)| (x.inverse(), c.clone())).collect() }
    }

    /// Image under `v -> 1` in the group ring.
    pub fn specialize_q_one(&self) -> BTreeMap<AffineElt, BigInt> {
        self.terms.iter().map(|(x, c)| (x.clone(), c.eval_at_one())).filter(|(_, c)| !c.is_zero()).collect()
    }
}

/// Convolution in the group ring `Z[W~]`.
pub fn group_convolution(
    a: &BTreeMap<AffineElt, BigInt>,
    b: &BTreeMap<AffineElt, BigInt>,
) -> BTreeMap<AffineElt, BigInt> {
    let mut out: BTreeMap<AffineElt, BigInt> = BTreeMap::new();
    for (x, c) in a {
        for (y, d) in b {
            *out.entry(x.mul(y)).or_default() += c * d;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// The Hecke algebra of an extended affine Weyl group.
#[derive(Debug, Clone)]
pub struct HeckeAlgebra {
    group: Arc<AffineGroup>,
    exec: Exec,
}

/// Below this many terms in the right factor a product runs sequentially.
const PAR_MUL_THRESHOLD: usize = 64;

impl HeckeAlgebra {
    pub fn new(group: Arc<AffineGroup>) -> Self {
        Self { group, exec: Exec::default() }
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    pub fn exec(&self) -> Exec {
        self.exec
    }

    pub fn group(&self) -> &AffineGroup {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<AffineGroup> {
        &self.group
    }

    pub fn one(&self, basis: Basis) -> HeckeElt {
        HeckeElt::basis_element(basis, self.group.identity())
    }

    pub fn t(&self, x: &AffineElt) -> HeckeElt {
        HeckeElt::basis_element(Basis::T, x.clone())
    }

    pub fn tt(&self, x: &AffineElt) -> HeckeElt {
        HeckeElt::basis_element(Basis::Ttilde, x.clone())
    }

    /// Rewrites `h` in the requested basis using `T~_w = v^{-l(w)} T_w`.
    pub fn convert(&self, h: &HeckeElt, basis: Basis) -> HeckeElt {
        if h.basis == basis {
            return h.clone();
        }
        let sign = if basis == Basis::T { -1 } else { 1 };
        HeckeElt {
            basis,
            terms: h.terms.iter().map(|(x, c)| (x.clone(), c.shift(sign * self.group.length(x) as i32))).collect(),
        }
    }

    /// `h * T_s` (or `h * T~_s`) for the generator with index `s`.
    pub fn right_mul_gen(&self, h: &HeckeElt, s: usize) -> HeckeElt {
        let g = self.group.generator(s);
        let mut out = HeckeElt::zero(h.basis);
        let q = LaurentPoly::q();
        let big_q = LaurentPoly::big_q();
        for (w, c) in &h.terms {
            let ws = w.mul(g);
            if self.group.length(&ws) > self.group.length(w) {
                out.add_term(ws, c);
            } else {
                match h.basis {
                    Basis::Ttilde => {
                        out.add_term(ws, c);
                        out.add_term(w.clone(), &-(c * &big_q));
                    }
                    Basis::T => {
                        out.add_term(ws, &(c * &q));
                        out.add_term(w.clone(), &(c * &(&q - &LaurentPoly::one())));
                    }
                }
            }
        }
        out
    }

    /// `h * T~_s^{-1} = h * (T~_s + Q)`; `h` must be in the `T~` basis.
    pub fn right_mul_gen_inverse(&self, h: &HeckeElt, s: usize) -> HeckeElt {
        assert_eq!(h.basis, Basis::Ttilde);
        let g = self.group.generator(s);
        let mut out = HeckeElt::zero(h.basis);
        let big_q = LaurentPoly::big_q();
        for (w, c) in &h.terms {
            let ws = w.mul(g);
            if self.group.length(&ws) > self.group.length(w) {
                out.add_term(ws, c);
                out.add_term(w.clone(), &(c * &big_q));
            } else {
                out.add_term(ws, c);
            }
        }
        out
    }

    /// `h * T_tau` for `tau` of length zero (same formula in both bases).
    pub fn right_mul_omega(&self, h: &HeckeElt, tau: &AffineElt) -> HeckeElt {
        debug_assert_eq!(self.group.length(tau), 0);
        HeckeElt { basis: h.basis, terms: h.terms.iter().map(|(w, c)| (w.mul(tau), c.clone())).collect() }
    }

    /// `h * T_y` by walking a reduced word of `y`.
    pub fn right_mul_basis(&self, h: &HeckeElt, y: &AffineElt) -> HeckeElt {
        let rw = self.group.reduced_word(y);
        let mut acc = h.clone();
        for &s in &rw.letters {
            acc = self.right_mul_gen(&acc, s);
        }
        self.right_mul_omega(&acc, &rw.tau)
    }

    /// Product of two elements in the same basis.
    pub fn mul(&self, a: &HeckeElt, b: &HeckeElt) -> HeckeElt {
        assert_eq!(a.basis, b.basis, "multiplying elements in different bases");
        let terms: Vec<(&AffineElt, &LaurentPoly)> = b.sorted_terms();
        let one = |(y, c): &(&AffineElt, &LaurentPoly)| self.right_mul_basis(a, y).scale(c);
        let exec = if terms.len() >= PAR_MUL_THRESHOLD { self.exec } else { Exec::Sequential };
        exec.map_reduce(&terms, || HeckeElt::zero(a.basis), one, |x, y| x.add(&y))
    }

    pub fn mul_all(&self, factors: &[HeckeElt]) -> HeckeElt {
        let mut it = factors.iter();
        let first = it.next().expect("at least one factor").clone();
        it.fold(first, |acc, f| self.mul(&acc, f))
    }

    /// `T~_{w^{-1}}^{-1} = (T~_{s_1} + Q) ... (T~_{s_r} + Q) T~_tau` for a
    /// reduced word `w = s_1 ... s_r tau`.
    pub fn t_inverse(&self, w: &AffineElt) -> HeckeElt {
        self.t_inverse_with(w, DescentOrder::Lowest)
    }

    pub fn t_inverse_with(&self, w: &AffineElt, order: DescentOrder) -> HeckeElt {
        let rw = self.group.reduced_word_with(w, order);
        let mut acc = self.one(Basis::Ttilde);
        for &s in &rw.letters {
            acc = self.right_mul_gen_inverse(&acc, s);
        }
        self.right_mul_omega(&acc, &rw.tau)
    }

    /// `h * T~_{w^{-1}}^{-1}`, i.e. `h` times `t_inverse(w)`, without
    /// forming the right factor.
    pub fn right_mul_t_inverse(&self, h: &HeckeElt, w: &AffineElt) -> HeckeElt {
        let h = self.convert(h, Basis::Ttilde);
        let rw = self.group.reduced_word(w);
        let mut acc = h;
        for &s in &rw.letters {
            acc = self.right_mul_gen_inverse(&acc, s);
        }
        self.right_mul_omega(&acc, &rw.tau)
    }

    /// `x -> R~_{x,y}(Q)`; the keys are exactly the `x <= y`.
    pub fn rtilde_row(&self, y: &AffineElt) -> Result<BTreeMap<AffineElt, QPoly>> {
        self.rtilde_row_with(y, DescentOrder::Lowest)
    }

    pub fn rtilde_row_with(&self, y: &AffineElt, order: DescentOrder) -> Result<BTreeMap<AffineElt, QPoly>> {
        self.t_inverse_with(y, order).terms.into_iter().map(|(x, c)| Ok((x, v_to_q(&c)?))).collect()
    }

    /// `sum a_w T_w -> sum bar(a_w) T_{w^{-1}}^{-1}`, returned in the basis of `h`.
    pub fn bar(&self, h: &HeckeElt) -> HeckeElt {
        let ht = self.convert(h, Basis::Ttilde);
        // bar(T~_w) = T~_{w^{-1}}^{-1}
        let pieces: Vec<(&AffineElt, &LaurentPoly)> = ht.sorted_terms();
        let out = self.exec.map_reduce(
            &pieces,
            || HeckeElt::zero(Basis::Ttilde),
            |(w, c)| self.t_inverse(w).scale(&c.bar()),
            |x, y| x.add(&y),
        );
        self.convert(&out, h.basis)
    }

    pub fn iota(&self, h: &HeckeElt) -> HeckeElt {
        h.iota()
    }

    pub fn specialize_q_one(&self, h: &HeckeElt) -> BTreeMap<AffineElt, BigInt> {
        h.specialize_q_one()
    }

    /// Terms ordered for display: longest first, then by element.
    pub fn display_terms<'a>(&self, h: &'a HeckeElt) -> Vec<(&'a AffineElt, &'a LaurentPoly)> {
        let mut v: Vec<_> = h.terms.iter().collect();
        v.sort_by(|a, b| self.group.length(b.0).cmp(&self.group.length(a.0)).then(a.0.cmp(b.0)));
        v
    }

    /// `T~[t[1,0]] + Q*T~[tau]`.
    pub fn format(&self, h: &HeckeElt) -> String {
        if h.is_zero() {
            return "0".into();
        }
        let prefix = match h.basis {
            Basis::T => "T",
            Basis::Ttilde => "T~",
        };
        let mut out = String::new();
        for (i, (x, c)) in self.display_terms(h).into_iter().enumerate() {
            let (neg, coeff) = coefficient_text(c);
            let sep = match (i, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            out.push_str(sep);
            if let Some(coeff) = coeff {
                out.push_str(&coeff);
                out.push('*');
            }
            out.push_str(&format!("{prefix}[{}]", self.group.format(x)));
        }
        out
    }

    /// LaTeX rendering with `Q`-form coefficients where possible.
    pub fn to_latex(&self, h: &HeckeElt) -> String {
        if h.is_zero() {
            return "0".into();
        }
        let sym = match h.basis {
            Basis::T => "T",
            Basis::Ttilde => "\\tilde{T}",
        };
        let mut out = String::new();
        for (i, (x, c)) in self.display_terms(h).into_iter().enumerate() {
            let (neg, coeff) = coefficient_text(c);
            let sep = match (i, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            out.push_str(sep);
            if let Some(coeff) = coeff {
                out.push_str(&latex_coefficient(&coeff));
                out.push_str("\\,");
            }
            out.push_str(&format!("{sym}_{{{}}}", latex_element(&self.group.format(x))));
        }
        out
    }

    pub fn to_json(&self, h: &HeckeElt) -> Value {
        let terms: Vec<Value> = self
            .display_terms(h)
            .into_iter()
            .map(|(x, c)| json!({ "elt": self.group.to_json(x), "coeff": c.to_json() }))
            .collect();
        json!({ "basis": h.basis.name(), "terms": terms })
    }

    pub fn from_json(&self, v: &Value) -> Result<HeckeElt> {
        let basis = match v.get("basis").and_then(Value::as_str) {
            Some("T") => Basis::T,
            Some("Ttilde") => Basis::Ttilde,
            _ => return Err(Error::Parse("missing or unknown basis".into())),
        };
        let mut h = HeckeElt::zero(basis);
        let terms = v.get("terms").and_then(Value::as_array).ok_or_else(|| Error::Parse("missing terms".into()))?;
        for t in terms {
            let x = self.group.from_json(t.get("elt").ok_or_else(|| Error::Parse("missing elt".into()))?)?;
            let c = LaurentPoly::from_json(t.get("coeff").ok_or_else(|| Error::Parse("missing coeff".into()))?)?;
            h.add_term(x, &c);
        }
        Ok(h)
    }
}

/// Sign and magnitude text of a coefficient; `None` magnitude means 1.
fn coefficient_text(c: &LaurentPoly) -> (bool, Option<String>) {
    let (neg, mag) = match c.terms().first() {
        Some((_, lead)) if c.terms().len() == 1 && lead < &BigInt::zero() => (true, -c),
        _ => (false, c.clone()),
    };
    if mag.is_one() {
        return (neg, None);
    }
    let text = match v_to_q(&mag) {
        Ok(p) if p.terms().len() == 1 => p.to_string(),
        Ok(p) => format!("({p})"),
        Err(_) if mag.terms().len() == 1 => mag.to_string(),
        Err(_) => format!("({mag})"),
    };
    (neg, Some(text))
}

fn latex_coefficient(s: &str) -> String {
    let mut out = String::new();
    let mut chars = s.chars().peekable();
    while let Some(ch) = chars.next() {
        match ch {
            '^' => {
                let mut exp = String::new();
                while let Some(&d) = chars.peek() {
                    if d == '-' && exp.is_empty() || d.is_ascii_digit() {
                        exp.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push_str(&format!("^{{{exp}}}"));
            }
            '*' => out.push(' '),
            _ => out.push(ch),
        }
    }
    out
}

fn latex_element(s: &str) -> String {
    s.split('*')
        .map(|tok| {
            if let Some(k) = tok.strip_prefix("tau^") {
                format!("\\tau^{{{k}}}")
            } else if tok == "tau" {
                "\\tau".to_string()
            } else if let Some(inner) = tok.strip_prefix("t[").and_then(|r| r.strip_suffix(']')) {
                format!("t_{{({inner})}}")
            } else if let Some(i) = tok.strip_prefix('s') {
                format!("s_{{{i}}}")
            } else {
                tok.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{Coweight, RootSystem};
    use proptest::prelude::*;

    fn alg(n: usize) -> HeckeAlgebra {
        HeckeAlgebra::new(Arc::new(AffineGroup::new(Arc::new(RootSystem::gl(n)))))
    }

    fn t(v: &[i64]) -> AffineElt {
        AffineElt::translation(&Coweight::new(v))
    }

    fn big_q() -> LaurentPoly {
        LaurentPoly::big_q()
    }

    fn q_poly(terms: &[(u32, i64)]) -> QPoly {
        QPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn quadratic_relation() {
        let h = alg(2);
        let s = h.group().generator(0).clone();
        let ts = h.t(&s);
        let sq = h.mul(&ts, &ts);
        let q = LaurentPoly::q();
        let expect = HeckeElt::term(Basis::T, s.clone(), &q - &LaurentPoly::one()).add(&HeckeElt::term(
            Basis::T,
            h.group().identity(),
            q,
        ));
        assert_eq!(sq, expect);
        let tts = h.tt(&s);
        let expect = HeckeElt::term(Basis::Ttilde, s, -big_q()).add(&h.one(Basis::Ttilde));
        assert_eq!(h.mul(&tts, &tts), expect);
    }

    #[test]
    fn omega_is_unitary() {
        let h = alg(3);
        let tau = h.group().gl_tau().unwrap();
        let x = h.group().parse("t[2,0,1]*s2").unwrap();
        assert_eq!(h.mul(&h.tt(&x), &h.tt(&tau)), h.tt(&x.mul(&tau)));
        assert_eq!(h.t_inverse(&tau), h.tt(&tau));
    }

    #[test]
    fn t_inverse_examples() {
        let h = alg(2);
        let g = h.group();
        let s = g.generator(0).clone();
        let expect = h.tt(&s).add(&HeckeElt::term(Basis::Ttilde, g.identity(), big_q()));
        assert_eq!(h.t_inverse(&s), expect);
        let tau = g.gl_tau().unwrap();
        let expect = h.tt(&t(&[1, 0])).add(&HeckeElt::term(Basis::Ttilde, tau, big_q()));
        assert_eq!(h.t_inverse(&t(&[1, 0])), expect);
    }

    #[test]
    fn rtilde_examples() {
        let h = alg(2);
        let g = h.group();
        let s = g.generator(0).clone();
        let row = h.rtilde_row(&s).unwrap();
        assert_eq!(row.len(), 2);
        assert_eq!(row[&s], QPoly::one());
        assert_eq!(row[&g.identity()], q_poly(&[(1, 1)]));
        let tau = g.gl_tau().unwrap();
        assert_eq!(h.rtilde_row(&tau).unwrap(), BTreeMap::from([(tau, QPoly::one())]));
        let y = t(&[1, -1]);
        let row = h.rtilde_row(&y).unwrap();
        assert_eq!(row[&g.identity()], q_poly(&[(2, 1)]));
        assert_eq!(row[&y], QPoly::one());
    }

    #[test]
    fn bar_examples() {
        let h = alg(2);
        let g = h.group();
        assert_eq!(h.bar(&h.one(Basis::T)), h.one(Basis::T));
        let s = g.generator(0).clone();
        let expect = h.tt(&s).add(&HeckeElt::term(Basis::Ttilde, g.identity(), big_q()));
        assert_eq!(h.bar(&h.tt(&s)), expect);
    }

    #[test]
    fn iota_examples() {
        let h = alg(3);
        let g = h.group();
        let x = g.parse("t[1,0,0]*s1").unwrap();
        assert_eq!(h.iota(&h.t(&x)), h.t(&x.inverse()));
        let (s1, s2) = (g.generator(0).clone(), g.generator(1).clone());
        let lhs = h.iota(&h.mul(&h.t(&s1), &h.t(&s2)));
        assert_eq!(lhs, h.mul(&h.t(&s2), &h.t(&s1)));
    }

    #[test]
    fn specialization_examples() {
        let h = alg(2);
        let g = h.group();
        let s = g.generator(0).clone();
        let x = h.tt(&s).add(&HeckeElt::term(Basis::Ttilde, g.identity(), big_q()));
        assert_eq!(h.specialize_q_one(&x), BTreeMap::from([(s.clone(), BigInt::from(1))]));
        let sq = h.mul(&h.t(&s), &h.t(&s));
        assert_eq!(h.specialize_q_one(&sq), BTreeMap::from([(g.identity(), BigInt::from(1))]));
    }

    #[test]
    fn formatting() {
        let h = alg(2);
        let x = h.t_inverse(&t(&[1, 0]));
        assert_eq!(h.format(&x), "T~[t[1,0]] + Q*T~[tau]");
        assert_eq!(h.to_latex(&x), "\\tilde{T}_{t_{(1,0)}} + Q\\,\\tilde{T}_{\\tau}");
        let y = h.t_inverse(&t(&[1, -1]));
        assert!(h.format(&y).contains("Q^2*T~[e]"), "{}", h.format(&y));
        let neg = HeckeElt::term(Basis::T, t(&[0, 0]), LaurentPoly::constant(-2));
        assert_eq!(h.format(&neg), "-2*T[e]");
        let js = h.to_json(&x);
        assert_eq!(h.from_json(&js).unwrap(), x);
        assert_eq!(
            js.to_string(),
            r#"{"basis":"Ttilde","terms":[{"coeff":{"v":{"0":1}},"elt":{"fin_word":[],"trans":[1,0]}},{"coeff":{"v":{"-1":1,"1":-1}},"elt":{"fin_word":[1],"trans":[1,0]}}]}"#
        );
    }

    fn words_up_to(g: &AffineGroup, max: usize) -> Vec<AffineElt> {
        let mut seen = std::collections::HashSet::from([g.identity()]);
        let mut layer = vec![g.identity()];
        for _ in 0..max {
            let mut next = Vec::new();
            for x in &layer {
                for s in g.generators() {
                    let y = x.mul(s);
                    if g.length(&y) == g.length(x) + 1 && seen.insert(y.clone()) {
                        next.push(y);
                    }
                }
            }
            layer = next;
        }
        let mut v: Vec<_> = seen.into_iter().collect();
        v.sort();
        v
    }

    #[test]
    fn t_inverse_is_inverse_and_word_independent() {
        let h = alg(3);
        let g = h.group();
        let tau = g.gl_tau().unwrap();
        for w in words_up_to(g, 5) {
            for x in [w.clone(), w.mul(&tau)] {
                let inv = h.t_inverse(&x);
                assert_eq!(h.mul(&inv, &h.tt(&x.inverse())), h.one(Basis::Ttilde));
                assert_eq!(inv, h.t_inverse_with(&x, DescentOrder::Highest));
                // nonzero exactly on the Bruhat interval
                let row = h.rtilde_row(&x).unwrap();
                let interval = g.interval_below(&x).unwrap();
                assert_eq!(row.keys().cloned().collect::<Vec<_>>(), interval);
            }
        }
    }

    #[test]
    fn bases_agree_on_products() {
        let h = alg(3);
        let g = h.group();
        let elts = words_up_to(g, 3);
        for a in elts.iter().step_by(3) {
            for b in elts.iter().step_by(2) {
                let tilde = h.mul(&h.tt(a), &h.tt(b));
                let plain = h.mul(&h.t(a), &h.t(b));
                let shift = -((g.length(a) + g.length(b)) as i32);
                assert_eq!(h.convert(&tilde, Basis::T), plain.scale(&LaurentPoly::v_pow(shift)));
            }
        }
    }

    #[test]
    fn bar_and_iota_commute_with_conversion() {
        let h = alg(2);
        let g = h.group();
        for x in words_up_to(g, 4) {
            let e = h.tt(&x).add(&HeckeElt::term(Basis::Ttilde, g.identity(), LaurentPoly::v_pow(3)));
            let et = h.convert(&e, Basis::T);
            assert_eq!(h.convert(&h.bar(&e), Basis::T), h.bar(&et));
            assert_eq!(h.convert(&h.iota(&e), Basis::T), h.iota(&et));
            assert_eq!(h.bar(&h.bar(&e)), e);
        }
    }

    fn arb_elt() -> impl Strategy<Value = (Vec<usize>, i8)> {
        (prop::collection::vec(0usize..3, 0..5), -1i8..2)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn associativity((a, ka) in arb_elt(), (b, kb) in arb_elt(), (c, kc) in arb_elt()) {
            let h = alg(3);
            let g = h.group();
            let tau = g.gl_tau().unwrap();
            let mk = |w: &[usize], k: i8| {
                let om = if k < 0 { tau.inverse() } else if k > 0 { tau.clone() } else { g.identity() };
                h.tt(&g.evaluate_word(w, &om))
            };
            let (x, y, z) = (mk(&a, ka), mk(&b, kb), mk(&c, kc));
            let xy = h.mul(&x, &y);
            prop_assert_eq!(h.mul(&xy, &z), h.mul(&x, &h.mul(&y, &z)));
            prop_assert_eq!(h.iota(&xy), h.mul(&h.iota(&y), &h.iota(&x)));
            prop_assert_eq!(
                h.specialize_q_one(&xy),
                group_convolution(&h.specialize_q_one(&x), &h.specialize_q_one(&y))
            );
        }
    }
}
