//! Galleries in the affine flag variety, counted cell by cell.
//!
//! A distribution maps each cell `u` to the weighted number of partial
//! galleries ending in the Schubert cell of `u`. For `T_w`-products the
//! weight stored at `u` is `q^{l(u)}` times the `T_u`-coefficient, which is
//! the forward point count: a step by `s` from a point of cell `u` has `q`
//! continuations, all landing in `us` when `us > u`, and when `us < u` one of
//! them lands in `us` while the other `q - 1` stay in cell `u`.
//!
//! The code here never calls the Hecke product.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::affine::{AffineElt, AffineGroup};
use crate::coeffs::LaurentPoly;
use crate::error::{Error, Result};
use crate::hecke::{Basis, HeckeAlgebra, HeckeElt};
use crate::rootdata::Coweight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// `T~_{t_1}^{e_1} ... T~_{t_r}^{e_r} T~_tau`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedWord {
    pub letters: Vec<(usize, Sign)>,
    pub tau: AffineElt,
}

impl SignedWord {
    pub fn new(letters: Vec<(usize, Sign)>, tau: AffineElt) -> Self {
        Self { letters, tau }
    }

    pub fn unsigned(&self) -> Vec<usize> {
        self.letters.iter().map(|&(s, _)| s).collect()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The group element of the unsigned word.
    pub fn evaluate(&self, group: &AffineGroup) -> AffineElt {
        group.evaluate_word(&self.unsigned(), &self.tau)
    }

    pub fn is_reduced(&self, group: &AffineGroup) -> bool {
        group.length(&self.evaluate(group)) == self.letters.len()
    }

    /// The same product through [`HeckeAlgebra`], factor by factor.
    pub fn hecke_product(&self, alg: &HeckeAlgebra) -> HeckeElt {
        let mut acc = alg.one(Basis::Ttilde);
        for &(s, sign) in &self.letters {
            acc = match sign {
                Sign::Plus => alg.right_mul_gen(&acc, s),
                Sign::Minus => alg.right_mul_gen_inverse(&acc, s),
            };
        }
        alg.right_mul_omega(&acc, &self.tau)
    }

    /// `s0^-1*s1*tau`
    pub fn format(&self, group: &AffineGroup) -> String {
        let mut parts: Vec<String> = self
            .letters
            .iter()
            .map(|&(s, sign)| {
                let name = group.generator_name(s);
                match sign {
                    Sign::Plus => name,
                    Sign::Minus => format!("{name}^-1"),
                }
            })
            .collect();
        if !self.tau.is_identity() || parts.is_empty() {
            parts.push(group.format(&self.tau));
        }
        parts.join("*")
    }

    pub fn to_json(&self, group: &AffineGroup) -> Value {
        let letters: Vec<Value> = self
            .letters
            .iter()
            .map(|&(s, sign)| json!({ "gen": group.generator_name(s), "sign": sign.as_i8() }))
            .collect();
        json!({ "letters": letters, "tau": group.to_json(&self.tau) })
    }
}

/// Weighted partial galleries per cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GalleryDistribution {
    dist: HashMap<AffineElt, LaurentPoly>,
}

impl GalleryDistribution {
    pub fn start(x: AffineElt) -> Self {
        Self { dist: HashMap::from([(x, LaurentPoly::one())]) }
    }

    pub fn get(&self, x: &AffineElt) -> LaurentPoly {
        self.dist.get(x).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&AffineElt, &LaurentPoly)> {
        self.dist.iter()
    }

    pub fn support(&self) -> Vec<AffineElt> {
        let mut v: Vec<_> = self.dist.keys().cloned().collect();
        v.sort();
        v
    }

    fn add(&mut self, x: AffineElt, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let e = self.dist.entry(x).or_default();
        *e += &c;
        if e.is_zero() {
            self.dist.retain(|_, c| !c.is_zero());
        }
    }

    /// One step along generator `s`. Every gallery moves, scaled by `scale`;
    /// if `stay` is given, each gallery may also remain where it is with
    /// that weight.
    pub fn step(&self, group: &AffineGroup, s: usize, scale: &LaurentPoly, stay: Option<&LaurentPoly>) -> Self {
        let g = group.generator(s);
        let q = LaurentPoly::q();
        let q1 = &q - &LaurentPoly::one();
        let mut out = Self { dist: HashMap::new() };
        for (u, c0) in &self.dist {
            let us = u.mul(g);
            let c = c0 * scale;
            if group.length(&us) > group.length(u) {
                out.add(us, &c * &q);
            } else {
                out.add(us, c.clone());
                out.add(u.clone(), &c * &q1);
            }
            if let Some(w) = stay {
                out.add(u.clone(), c0 * w);
            }
        }
        out
    }

    pub fn apply_omega(&self, tau: &AffineElt) -> Self {
        Self { dist: self.dist.iter().map(|(u, c)| (u.mul(tau), c.clone())).collect() }
    }

    /// `T_x`-coefficients: forward counts divided by `q^{l(x)}`.
    pub fn t_coefficients(&self, group: &AffineGroup) -> BTreeMap<AffineElt, LaurentPoly> {
        self.dist.iter().map(|(x, c)| (x.clone(), c.shift(-2 * group.length(x) as i32))).collect()
    }
}

fn plus_steps(group: &AffineGroup, word: &[usize], stay: Option<&LaurentPoly>) -> GalleryDistribution {
    let one = LaurentPoly::one();
    word.iter().fold(GalleryDistribution::start(group.identity()), |d, &s| d.step(group, s, &one, stay))
}

/// `N(word, w)` for all `w`: coefficients of `T_{s_1} ... T_{s_g}`, as
/// polynomials in `q = v^2`.
pub fn n_counts(group: &AffineGroup, word: &[usize]) -> BTreeMap<AffineElt, LaurentPoly> {
    plus_steps(group, word, None).t_coefficients(group)
}

pub fn n_count(group: &AffineGroup, word: &[usize], w: &AffineElt) -> LaurentPoly {
    n_counts(group, word).remove(w).unwrap_or_default()
}

/// Points of the Demazure resolution lying over each cell, divided by
/// `q^{l(w)}`: every step also keeps one point in place.
pub fn bott_samelson_counts(group: &AffineGroup, word: &[usize]) -> BTreeMap<AffineElt, LaurentPoly> {
    plus_steps(group, word, Some(&LaurentPoly::one())).t_coefficients(group)
}

/// The distribution of galleries for a signed word. A `+` step is a move
/// scaled by `v^{-1}`; a `-` step also stays in place with weight `Q`.
pub fn signed_distribution(group: &AffineGroup, sw: &SignedWord) -> GalleryDistribution {
    let vinv = LaurentPoly::v_pow(-1);
    let big_q = LaurentPoly::big_q();
    let mut d = GalleryDistribution::start(group.identity());
    for &(s, sign) in &sw.letters {
        let stay = match sign {
            Sign::Plus => None,
            Sign::Minus => Some(&big_q),
        };
        d = d.step(group, s, &vinv, stay);
    }
    d.apply_omega(&sw.tau)
}

/// The signed product in the `T` basis.
pub fn expand_signed_word(group: &AffineGroup, sw: &SignedWord) -> HeckeElt {
    let mut h = HeckeElt::zero(Basis::T);
    for (x, c) in signed_distribution(group, sw).t_coefficients(group) {
        h.add_term(x, &c);
    }
    h
}

/// `eps_lambda` times the `T_x`-coefficient of the product, where
/// `eps_lambda = (-1)^{l(t_lambda)}` and `sw` is reduced.
pub fn fiber_trace(group: &AffineGroup, sw: &SignedWord, x: &AffineElt) -> Result<LaurentPoly> {
    Ok(fiber_traces(group, sw)?.remove(x).unwrap_or_default())
}

pub fn fiber_traces(group: &AffineGroup, sw: &SignedWord) -> Result<BTreeMap<AffineElt, LaurentPoly>> {
    let length = group.length(&sw.evaluate(group));
    if length != sw.len() {
        return Err(Error::NotReduced { letters: sw.len(), length });
    }
    let sign = if length.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    Ok(signed_distribution(group, sw).t_coefficients(group).into_iter().map(|(x, c)| (x, c.scale(&sign))).collect())
}

/// The word `(s_{k-1} ... s_1 tau s_{n-1} ... s_k)^m` of `t_{m e_k}` in `GL_n`,
/// as `(letter or tau)` entries, `None` standing for `tau`.
pub fn drinfeld_word(group: &AffineGroup, m: usize, k: usize) -> Result<Vec<Option<usize>>> {
    let n = group.root_system().gl_label().ok_or(Error::NotGL)?;
    if k == 0 || k > n || m == 0 {
        return Err(Error::BadIndex(format!("m = {m}, k = {k} for gl:{n}")));
    }
    let mut block: Vec<Option<usize>> = (1..k).rev().map(|i| Some(i - 1)).collect();
    block.push(None);
    block.extend((k..n).rev().map(|i| Some(i - 1)));
    Ok(std::iter::repeat_n(block, m).flatten().collect())
}

/// Evaluates the word of [`drinfeld_word`] with the `S_a` letters at
/// `deleted` (0-based, counting only `S_a` letters) removed, and reports
/// whether `lambda(x)` fails to be below `m e_k` in the dominance order.
pub fn deletion_violates_dominance(group: &AffineGroup, m: usize, k: usize, deleted: &[usize]) -> Result<bool> {
    let word = drinfeld_word(group, m, k)?;
    let tau = group.gl_tau()?;
    let total = word.iter().filter(|l| l.is_some()).count();
    if let Some(&p) = deleted.iter().find(|&&p| p >= total) {
        return Err(Error::BadPosition { position: p, len: total });
    }
    let mut x = group.identity();
    let mut pos = 0;
    for letter in word {
        match letter {
            None => x = x.mul(&tau),
            Some(s) => {
                if !deleted.contains(&pos) {
                    x = x.mul(group.generator(s));
                }
                pos += 1;
            }
        }
    }
    let n = group.dim();
    let target = Coweight::basis(n, k).scaled(m as i64);
    Ok(!group.root_system().dominance_leq(&x.translation_left(), &target))
}

/// The `S_a` letter at each position of [`drinfeld_word`].
pub fn drinfeld_letters(group: &AffineGroup, m: usize, k: usize) -> Result<Vec<usize>> {
    Ok(drinfeld_word(group, m, k)?.into_iter().flatten().collect())
}

/// `sum over subexpressions` oracle: value at `q = 1` of the number of
/// subexpressions of `word` evaluating to each element.
pub fn subexpression_counts(group: &AffineGroup, word: &[usize]) -> BTreeMap<AffineElt, BigInt> {
    let mut out: BTreeMap<AffineElt, BigInt> = BTreeMap::new();
    for mask in 0u64..(1 << word.len()) {
        let mut x = group.identity();
        for (i, &s) in word.iter().enumerate() {
            if mask >> i & 1 == 1 {
                x = x.mul(group.generator(s));
            }
        }
        *out.entry(x).or_insert_with(BigInt::zero) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::RootSystem;
    use proptest::prelude::*;
    use std::sync::Arc;

    fn group(n: usize) -> AffineGroup {
        AffineGroup::new(Arc::new(RootSystem::gl(n)))
    }

    fn q() -> LaurentPoly {
        LaurentPoly::q()
    }

    #[test]
    fn n_count_examples() {
        let g = group(2);
        let s = g.generator(0).clone();
        assert_eq!(n_count(&g, &[0], &s), LaurentPoly::one());
        assert!(n_count(&g, &[0], &g.identity()).is_zero());
        assert_eq!(n_count(&g, &[0, 0], &g.identity()), q());
        assert_eq!(n_count(&g, &[0, 0], &s), &q() - &LaurentPoly::one());
    }

    #[test]
    fn bott_samelson_sums() {
        let g = group(3);
        let word = [0, 1, 2, 0, 1];
        let total: BigInt = bott_samelson_counts(&g, &word).values().map(|c| c.eval_at_one()).sum();
        assert_eq!(total, BigInt::from(32));
        let total: BigInt = n_counts(&g, &word).values().map(|c| c.eval_at_one()).sum();
        assert_eq!(total, BigInt::from(1));
    }

    #[test]
    fn one_step_expansion() {
        let g = group(2);
        let tau = g.gl_tau().unwrap();
        let sw = SignedWord::new(vec![(1, Sign::Minus)], tau.clone());
        let h = expand_signed_word(&g, &sw);
        let t10 = AffineElt::translation(&Coweight::new(&[1, 0]));
        assert_eq!(h.coeff(&t10), LaurentPoly::v_pow(-1));
        assert_eq!(h.coeff(&tau), LaurentPoly::big_q());
        assert_eq!(h.len(), 2);
        assert_eq!(sw.format(&g), "s0^-1*tau");
        assert_eq!(fiber_trace(&g, &sw, &tau).unwrap(), -LaurentPoly::big_q());
        assert_eq!(fiber_trace(&g, &sw, &t10).unwrap(), -LaurentPoly::v_pow(-1));
    }

    #[test]
    fn not_reduced_is_rejected() {
        let g = group(2);
        let sw = SignedWord::new(vec![(0, Sign::Plus), (0, Sign::Minus)], g.identity());
        assert!(matches!(fiber_traces(&g, &sw), Err(Error::NotReduced { letters: 2, length: 0 })));
    }

    #[test]
    fn deletion_examples() {
        let g = group(3);
        assert!(!deletion_violates_dominance(&g, 1, 2, &[]).unwrap());
        assert!(deletion_violates_dominance(&g, 1, 2, &[0]).unwrap());
        assert!(matches!(deletion_violates_dominance(&g, 1, 2, &[2]), Err(Error::BadPosition { position: 2, len: 2 })));
        let g2 = group(2);
        let x = drinfeld_word(&g2, 2, 1).unwrap();
        assert_eq!(x, vec![None, Some(0), None, Some(0)]);
    }

    #[test]
    fn drinfeld_word_is_translation() {
        for n in 2..=4 {
            let g = group(n);
            let tau = g.gl_tau().unwrap();
            for k in 1..=n {
                for m in 1..=3 {
                    let mut x = g.identity();
                    for l in drinfeld_word(&g, m, k).unwrap() {
                        x = x.mul(l.map(|s| g.generator(s)).unwrap_or(&tau));
                    }
                    let target = Coweight::basis(n, k).scaled(m as i64);
                    assert_eq!(x, AffineElt::translation(&target));
                    assert_eq!(g.length(&x), m * (n - 1));
                }
            }
        }
    }

    fn arb_word(n_gens: usize) -> impl Strategy<Value = Vec<(usize, bool)>> {
        prop::collection::vec((0..n_gens, any::<bool>()), 0..=8)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn recursion_matches_hecke_products(word in arb_word(3), k in -1i64..=1) {
            let g = Arc::new(group(3));
            let alg = HeckeAlgebra::new(g.clone());
            let tau = g.gl_tau().unwrap();
            let om = match k { -1 => tau.inverse(), 0 => g.identity(), _ => tau };
            let letters = word.iter().map(|&(s, p)| (s, if p { Sign::Plus } else { Sign::Minus })).collect();
            let sw = SignedWord::new(letters, om);
            let direct = alg.convert(&sw.hecke_product(&alg), Basis::T);
            prop_assert_eq!(expand_signed_word(&g, &sw), direct);
        }

        #[test]
        fn bott_samelson_is_subexpression_sum(word in prop::collection::vec(0usize..3, 0..=6)) {
            let g = group(3);
            let counts = bott_samelson_counts(&g, &word);
            let at_one: BTreeMap<AffineElt, BigInt> = counts
                .iter()
                .map(|(x, c)| (x.clone(), c.eval_at_one()))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            prop_assert_eq!(at_one, subexpression_counts(&g, &word));
            let total: LaurentPoly = n_counts(&g, &word)
                .into_iter()
                .map(|(x, c)| c.shift(2 * g.length(&x) as i32))
                .fold(LaurentPoly::zero(), |a, b| &a + &b);
            prop_assert_eq!(total, q().pow(word.len() as u32));
        }

        #[test]
        fn deleting_a_low_letter_breaks_dominance(
            n in 2usize..=4, k in 1usize..=4, m in 1usize..=3, mask in any::<u16>()
        ) {
            prop_assume!(k <= n);
            let g = group(n);
            let letters = drinfeld_letters(&g, m, k).unwrap();
            let deleted: Vec<usize> = (0..letters.len()).filter(|&p| mask >> p & 1 == 1).collect();
            if deleted.iter().any(|&p| letters[p] < k - 1) {
                prop_assert!(deletion_violates_dominance(&g, m, k, &deleted).unwrap());
            }
        }
    }
}
