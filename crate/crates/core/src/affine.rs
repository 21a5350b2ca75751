//! The extended affine Weyl group `X_* x| W_0`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, RwLock};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rootdata::{Coweight, RootSystem, WeylElt};

/// Default bound on the length of `y` for [`AffineGroup::interval_below`].
pub const DEFAULT_MAX_INTERVAL: usize = 12;

/// `t_trans * fin`, translation on the left.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineElt {
    trans: Coweight,
    fin: WeylElt,
}

impl AffineElt {
    pub fn new(trans: Coweight, fin: WeylElt) -> Self {
        debug_assert_eq!(trans.dim(), fin.dim());
        Self { trans, fin }
    }

    pub fn identity(dim: usize) -> Self {
        Self::new(Coweight::zero(dim), WeylElt::identity(dim))
    }

    pub fn translation(lambda: &Coweight) -> Self {
        Self::new(lambda.clone(), WeylElt::identity(lambda.dim()))
    }

    pub fn finite(w: WeylElt) -> Self {
        Self::new(Coweight::zero(w.dim()), w)
    }

    pub fn is_identity(&self) -> bool {
        self.trans.is_zero() && self.fin.is_identity()
    }

    /// `lambda(x)`.
    pub fn trans(&self) -> &Coweight {
        &self.trans
    }

    pub fn fin(&self) -> &WeylElt {
        &self.fin
    }

    /// `t_x w t_x' w' = t_{x + w(x')} w w'`.
    pub fn mul(&self, other: &AffineElt) -> AffineElt {
        let moved = self.fin.act(&other.trans);
        AffineElt::new(&self.trans + &moved, self.fin.compose(&other.fin))
    }

    /// `(t_x w)^{-1} = t_{-w^{-1} x} w^{-1}`.
    pub fn inverse(&self) -> AffineElt {
        let winv = self.fin.inverse();
        let t = winv.act(&self.trans);
        AffineElt::new(-&t, winv)
    }

    /// `lambda(x)`: the translation part on the left.
    pub fn translation_left(&self) -> Coweight {
        self.trans.clone()
    }

    /// `t(x)`: the translation part on the right, `x = w t_{t(x)}`.
    pub fn translation_right(&self) -> Coweight {
        self.fin.inverse().act(&self.trans)
    }
}

impl fmt::Debug for AffineElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}{:?}", self.trans, self.fin)
    }
}

/// `letters` index into `S_a`; the element is `s_{letters[0]} ... s_{letters[k]} tau`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedWord {
    pub letters: Vec<usize>,
    pub tau: AffineElt,
}

/// Which descent to take when several generators shorten the element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum DescentOrder {
    #[default]
    Lowest,
    Highest,
}

/// The extended affine Weyl group of a root datum together with its Coxeter
/// generators `S_a` and a shared Bruhat-order memo.
pub struct AffineGroup {
    rs: Arc<RootSystem>,
    gens: Vec<AffineElt>,
    gen_index: HashMap<AffineElt, usize>,
    num_finite: usize,
    max_interval: usize,
    bruhat_memo: RwLock<HashMap<(AffineElt, AffineElt), bool>>,
}

impl fmt::Debug for AffineGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AffineGroup")
            .field("root_system", &self.rs.label())
            .field("generators", &self.gens.len())
            .finish()
    }
}

impl AffineGroup {
    pub fn new(rs: Arc<RootSystem>) -> Self {
        let n = rs.rank();
        let mut gens: Vec<AffineElt> =
            (0..rs.semisimple_rank()).map(|i| AffineElt::finite(rs.simple_reflection(i).clone())).collect();
        let num_finite = gens.len();
        for beta in rs.minimal_roots() {
            // s_beta(x) = x - <beta, x> beta^vee
            let mut m = WeylElt::identity(n).matrix().to_vec();
            for a in 0..n {
                for b in 0..n {
                    m[a * n + b] -= beta.coroot[a] * beta.vector[b];
                }
            }
            let w = WeylElt::from_matrix(n, &m);
            let trans: Coweight = Coweight::from(beta.coroot.iter().map(|c| -c).collect::<Vec<_>>());
            gens.push(AffineElt::new(trans, w));
        }
        let gen_index = gens.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        let max_interval =
            std::env::var("HECKE_MAX_INTERVAL").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_MAX_INTERVAL);
        Self { rs, gens, gen_index, num_finite, max_interval, bruhat_memo: RwLock::new(HashMap::new()) }
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn root_system_arc(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn dim(&self) -> usize {
        self.rs.rank()
    }

    pub fn identity(&self) -> AffineElt {
        AffineElt::identity(self.dim())
    }

    pub fn translation(&self, lambda: &Coweight) -> AffineElt {
        AffineElt::translation(lambda)
    }

    /// `S_a`: the finite simple reflections followed by one affine reflection
    /// `t_{-beta^vee} s_beta` per minimal root `beta`.
    pub fn generators(&self) -> &[AffineElt] {
        &self.gens
    }

    pub fn generator(&self, i: usize) -> &AffineElt {
        &self.gens[i]
    }

    pub fn num_generators(&self) -> usize {
        self.gens.len()
    }

    pub fn num_finite_generators(&self) -> usize {
        self.num_finite
    }

    pub fn generator_index(&self, x: &AffineElt) -> Option<usize> {
        self.gen_index.get(x).copied()
    }

    pub fn generator_name(&self, i: usize) -> String {
        if i < self.num_finite {
            format!("s{}", i + 1)
        } else if self.gens.len() - self.num_finite == 1 {
            "s0".to_string()
        } else {
            format!("s0_{}", i - self.num_finite + 1)
        }
    }

    pub fn max_interval(&self) -> usize {
        self.max_interval
    }

    pub fn set_max_interval(&mut self, bound: usize) {
        self.max_interval = bound;
    }

    /// The length function, by the explicit pairing formula.
    pub fn length(&self, x: &AffineElt) -> usize {
        let y = x.fin.act(self.rs.two_rho_check().coords());
        let mut total = 0;
        for alpha in self.rs.positive_roots() {
            let p = self.rs.pairing(&alpha.vector, &x.trans);
            // w^{-1}(alpha) < 0 iff <alpha, w(2 rho^vee)> < 0
            let flipped = self.rs.pairing(&alpha.vector, &y) < 0;
            total += if flipped { (p - 1).unsigned_abs() } else { p.unsigned_abs() };
        }
        total as usize
    }

    pub fn is_left_descent(&self, i: usize, x: &AffineElt) -> bool {
        self.length(&self.gens[i].mul(x)) < self.length(x)
    }

    pub fn is_right_descent(&self, x: &AffineElt, i: usize) -> bool {
        self.length(&x.mul(&self.gens[i])) < self.length(x)
    }

    fn find_left_descent(&self, x: &AffineElt, lx: usize, order: DescentOrder) -> Option<usize> {
        let test = |&i: &usize| self.length(&self.gens[i].mul(x)) < lx;
        match order {
            DescentOrder::Lowest => (0..self.gens.len()).find(test),
            DescentOrder::Highest => (0..self.gens.len()).rev().find(test),
        }
    }

    pub fn reduced_word(&self, x: &AffineElt) -> ReducedWord {
        self.reduced_word_with(x, DescentOrder::Lowest)
    }

    /// Greedy left descent: strip a generator `s` with `l(sx) < l(x)` until
    /// a length-zero element remains.
    pub fn reduced_word_with(&self, x: &AffineElt, order: DescentOrder) -> ReducedWord {
        let mut cur = x.clone();
        let mut len = self.length(&cur);
        let mut letters = Vec::with_capacity(len);
        while len > 0 {
            let i = self.find_left_descent(&cur, len, order).expect("an element of positive length has a left descent");
            cur = self.gens[i].mul(&cur);
            len -= 1;
            letters.push(i);
        }
        ReducedWord { letters, tau: cur }
    }

    pub fn evaluate_word(&self, letters: &[usize], tau: &AffineElt) -> AffineElt {
        let mut acc = self.identity();
        for &i in letters {
            acc = acc.mul(&self.gens[i]);
        }
        acc.mul(tau)
    }

    /// `x = word_part * tau` with `word_part` in `W_a` and `l(tau) = 0`.
    pub fn omega_decompose(&self, x: &AffineElt) -> (AffineElt, AffineElt) {
        let rw = self.reduced_word(x);
        let word_part = x.mul(&rw.tau.inverse());
        (word_part, rw.tau)
    }

    pub fn omega_part(&self, x: &AffineElt) -> AffineElt {
        self.reduced_word(x).tau
    }

    /// Length-zero representatives of the images of the lattice basis
    /// vectors; they generate `Omega`.
    pub fn omega_generators(&self) -> Vec<AffineElt> {
        let n = self.dim();
        let mut out: Vec<AffineElt> = Vec::new();
        for k in 1..=n {
            let tau = self.omega_part(&AffineElt::translation(&Coweight::basis(n, k)));
            if !tau.is_identity() && !out.contains(&tau) {
                out.push(tau);
            }
        }
        out
    }

    /// All `w sigma` with `w` in `W_a`, `l(w) <= max_len`, and `sigma` in
    /// `omegas` (the identity when empty), sorted.
    pub fn elements_up_to(&self, max_len: usize, omegas: &[AffineElt]) -> Vec<AffineElt> {
        let mut all: HashSet<AffineElt> = HashSet::from([self.identity()]);
        let mut layer = vec![self.identity()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for x in &layer {
                for s in &self.gens {
                    let y = x.mul(s);
                    if self.length(&y) > self.length(x) && all.insert(y.clone()) {
                        next.push(y);
                    }
                }
            }
            layer = next;
        }
        let id = [self.identity()];
        let omegas = if omegas.is_empty() { &id[..] } else { omegas };
        let mut out: Vec<AffineElt> = all.iter().flat_map(|w| omegas.iter().map(move |o| w.mul(o))).collect();
        out.sort();
        out.dedup();
        out
    }

    /// `tau = t_{(1,0,...,0)} s_1 ... s_{n-1}` for `GL_n`.
    pub fn gl_tau(&self) -> Result<AffineElt> {
        let n = self.rs.gl_label().ok_or(Error::NotGL)?;
        let word: Vec<usize> = (0..n - 1).collect();
        Ok(AffineElt::new(Coweight::basis(n, 1), self.rs.weyl_from_word(&word)))
    }

    /// `tau x tau^{-1}` for a generator index, as a generator index.
    pub fn conjugate_generator(&self, tau: &AffineElt, i: usize) -> Option<usize> {
        let c = tau.mul(&self.gens[i]).mul(&tau.inverse());
        self.generator_index(&c)
    }

    /// Bruhat order on the extended group: equal `Omega`-parts and Coxeter
    /// Bruhat order on the `W_a`-parts.
    pub fn bruhat_leq(&self, x: &AffineElt, y: &AffineElt) -> bool {
        let (lx, ly) = (self.length(x), self.length(y));
        self.bruhat_rec(x.clone(), lx, y.clone(), ly)
    }

    fn bruhat_rec(&self, x: AffineElt, lx: usize, y: AffineElt, ly: usize) -> bool {
        if lx > ly {
            return false;
        }
        if x == y {
            return true;
        }
        if ly == 0 {
            return false;
        }
        let key = (x, y);
        if let Some(&ans) = self.bruhat_memo.read().unwrap().get(&key) {
            return ans;
        }
        let (x, y) = key;
        let s = self.find_left_descent(&y, ly, DescentOrder::Lowest).expect("positive length has a descent");
        let g = &self.gens[s];
        let sy = g.mul(&y);
        let sx = g.mul(&x);
        let lsx = self.length(&sx);
        let ans =
            if lsx < lx { self.bruhat_rec(sx, lsx, sy, ly - 1) } else { self.bruhat_rec(x.clone(), lx, sy, ly - 1) };
        self.bruhat_memo.write().unwrap().insert((x, y), ans);
        ans
    }

    fn check_interval_bound(&self, len: usize) -> Result<()> {
        if len > self.max_interval {
            Err(Error::IntervalTooLarge { length: len, bound: self.max_interval })
        } else {
            Ok(())
        }
    }

    /// `{x : x <= y}` as the set of subword products of one reduced word of `y`.
    pub fn interval_below(&self, y: &AffineElt) -> Result<Vec<AffineElt>> {
        self.interval_below_with(y, DescentOrder::Lowest)
    }

    pub fn interval_below_with(&self, y: &AffineElt, order: DescentOrder) -> Result<Vec<AffineElt>> {
        let rw = self.reduced_word_with(y, order);
        self.check_interval_bound(rw.letters.len())?;
        let mut set: HashSet<AffineElt> = HashSet::from([rw.tau.clone()]);
        for &i in rw.letters.iter().rev() {
            let g = &self.gens[i];
            let moved: Vec<AffineElt> = set.iter().map(|x| g.mul(x)).collect();
            set.extend(moved);
        }
        let mut out: Vec<AffineElt> = set.into_iter().collect();
        out.sort();
        Ok(out)
    }

    /// `Adm(mu)`: union of the intervals below `t_{w(mu)}`.
    pub fn admissible_set(&self, mu: &Coweight) -> Result<Vec<AffineElt>> {
        if !self.rs.is_dominant(mu) {
            return Err(Error::NotDominant(mu.to_string()));
        }
        let mut set = HashSet::new();
        for lambda in self.rs.weyl_orbit(mu) {
            set.extend(self.interval_below(&AffineElt::translation(&lambda))?);
        }
        let mut out: Vec<AffineElt> = set.into_iter().collect();
        out.sort();
        Ok(out)
    }

    /// Text form: `t[2,1,0]*s1*s2`, `s1`, `e`, and `tau^k` for length-zero
    /// elements of `GL_n`.
    pub fn format(&self, x: &AffineElt) -> String {
        if x.is_identity() {
            return "e".to_string();
        }
        if self.rs.gl_label().is_some() && self.length(x) == 0 {
            let k: i64 = x.trans.iter().sum();
            return if k == 1 { "tau".to_string() } else { format!("tau^{k}") };
        }
        let word = self.rs.weyl_word(&x.fin);
        let mut parts = Vec::new();
        if !x.trans.is_zero() {
            let coords: Vec<String> = x.trans.iter().map(|c| c.to_string()).collect();
            parts.push(format!("t[{}]", coords.join(",")));
        }
        parts.extend(word.iter().map(|i| format!("s{}", i + 1)));
        parts.join("*")
    }

    /// Inverse of [`format`](Self::format); also accepts `s0` for the affine
    /// generator and arbitrary products of the tokens.
    pub fn parse(&self, s: &str) -> Result<AffineElt> {
        let n = self.dim();
        let bad = |msg: &str| Error::Parse(format!("{msg} in element {s:?}"));
        let mut acc = self.identity();
        for tok in s.split('*').map(str::trim) {
            let factor = if tok == "e" {
                self.identity()
            } else if let Some(rest) = tok.strip_prefix("tau") {
                let tau = self.gl_tau().map_err(|_| bad("tau is only defined for gl:n"))?;
                let k: i64 = match rest.strip_prefix('^') {
                    Some(k) => k.parse().map_err(|_| bad("bad exponent"))?,
                    None if rest.is_empty() => 1,
                    None => return Err(bad("bad token")),
                };
                let base = if k < 0 { tau.inverse() } else { tau };
                (0..k.unsigned_abs()).fold(self.identity(), |a, _| a.mul(&base))
            } else if let Some(rest) = tok.strip_prefix("t[") {
                let inner = rest.strip_suffix(']').ok_or_else(|| bad("unterminated translation"))?;
                let coords = parse_coords(inner).map_err(|_| bad("bad translation"))?;
                if coords.len() != n {
                    return Err(Error::DimensionMismatch { expected: n, got: coords.len() });
                }
                AffineElt::translation(&Coweight::from(coords))
            } else if let Some(rest) = tok.strip_prefix('s') {
                let idx = if rest == "0" {
                    if self.gens.len() == self.num_finite {
                        return Err(bad("no affine generator"));
                    }
                    self.num_finite
                } else if let Some(j) = rest.strip_prefix("0_") {
                    let j: usize = j.parse().map_err(|_| bad("bad generator"))?;
                    if j == 0 || self.num_finite + j > self.gens.len() {
                        return Err(bad("no such generator"));
                    }
                    self.num_finite + j - 1
                } else {
                    let i: usize = rest.parse().map_err(|_| bad("bad generator"))?;
                    if i == 0 || i > self.num_finite {
                        return Err(bad("no such generator"));
                    }
                    i - 1
                };
                self.gens[idx].clone()
            } else {
                return Err(bad("unknown token"));
            };
            acc = acc.mul(&factor);
        }
        Ok(acc)
    }

    /// `{"trans": [...], "fin_word": [...]}` with 1-based finite indices.
    pub fn to_json(&self, x: &AffineElt) -> Value {
        let word: Vec<usize> = self.rs.weyl_word(&x.fin).iter().map(|i| i + 1).collect();
        json!({ "trans": x.trans.coords(), "fin_word": word })
    }

    pub fn from_json(&self, v: &Value) -> Result<AffineElt> {
        let bad = || Error::Parse(format!("bad element {v}"));
        let trans: Vec<i64> = v
            .get("trans")
            .and_then(Value::as_array)
            .ok_or_else(bad)?
            .iter()
            .map(|c| c.as_i64().ok_or_else(bad))
            .collect::<Result<_>>()?;
        if trans.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: trans.len() });
        }
        let word: Vec<usize> = v
            .get("fin_word")
            .and_then(Value::as_array)
            .ok_or_else(bad)?
            .iter()
            .map(|c| match c.as_u64() {
                Some(i) if i >= 1 && (i as usize) <= self.num_finite => Ok(i as usize - 1),
                _ => Err(bad()),
            })
            .collect::<Result<_>>()?;
        Ok(AffineElt::new(Coweight::from(trans), self.rs.weyl_from_word(&word)))
    }
}

/// Independent oracle: every subword product of a word, by enumerating all
/// `2^k` subsets.
pub fn subword_products(group: &AffineGroup, letters: &[usize], tau: &AffineElt) -> HashSet<AffineElt> {
    let k = letters.len();
    assert!(k < 24, "subword enumeration is exponential");
    (0u32..1 << k)
        .map(|mask| {
            let kept: Vec<usize> = (0..k).filter(|b| mask >> b & 1 == 1).map(|b| letters[b]).collect();
            group.evaluate_word(&kept, tau)
        })
        .collect()
}

pub fn parse_coords(s: &str) -> std::result::Result<Vec<i64>, std::num::ParseIntError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|c| c.trim().parse()).collect()
}
