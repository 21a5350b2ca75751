//! Bernstein elements `Theta_lambda`, `Theta^-_lambda`, the central
//! functions `z_mu`, minimal expressions, and the closed formulas for
//! `Theta^-` in terms of `R~`-polynomials.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::affine::{AffineElt, AffineGroup};
use crate::coeffs::{q_to_v, LaurentPoly, QPoly};
use crate::error::{Error, Result};
use crate::gallery::{Sign, SignedWord};
use crate::hecke::{Basis, HeckeAlgebra, HeckeElt};
use crate::rootdata::{Coweight, RootSystem};

/// A signed reduced word for `t_target` whose signed product is `Theta^-_target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalExpression {
    pub word: SignedWord,
    pub target: Coweight,
}

impl MinimalExpression {
    pub fn letters(&self) -> &[(usize, Sign)] {
        &self.word.letters
    }

    pub fn tau(&self) -> &AffineElt {
        &self.word.tau
    }

    pub fn unsigned(&self) -> Vec<usize> {
        self.word.unsigned()
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }
}

/// Data of a chain from an antidominant minuscule `mu^-` to `lambda`.
///
/// `t_{mu^-} = s_{a_1} ... s_{a_p} t_1 ... t_{r-p} tau` and
/// `t_lambda = t_1 ... t_{r-p} (tau s_{a_1} tau^-1) ... (tau s_{a_p} tau^-1) tau`,
/// both reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinusculeChain {
    pub mu_minus: Coweight,
    pub lambda: Coweight,
    /// `a_1, ..., a_p`, indices of simple roots.
    pub alphas: Vec<usize>,
    /// `t_1, ..., t_{r-p}`.
    pub coset_word: Vec<usize>,
    /// `tau s_{a_i} tau^-1` as generator indices.
    pub conjugated: Vec<usize>,
    pub tau: AffineElt,
}

impl MinusculeChain {
    pub fn p(&self) -> usize {
        self.alphas.len()
    }

    pub fn mu_minus_word(&self) -> Vec<usize> {
        self.alphas.iter().chain(&self.coset_word).copied().collect()
    }

    pub fn lambda_word(&self) -> Vec<usize> {
        self.coset_word.iter().chain(&self.conjugated).copied().collect()
    }
}

#[derive(Debug, Clone)]
pub struct Bernstein {
    alg: HeckeAlgebra,
}

impl Bernstein {
    pub fn new(alg: HeckeAlgebra) -> Self {
        Self { alg }
    }

    pub fn for_root_system(rs: RootSystem) -> Self {
        Self::new(HeckeAlgebra::new(Arc::new(AffineGroup::new(Arc::new(rs)))))
    }

    pub fn algebra(&self) -> &HeckeAlgebra {
        &self.alg
    }

    pub fn group(&self) -> &AffineGroup {
        self.alg.group()
    }

    pub fn root_system(&self) -> &RootSystem {
        self.alg.group().root_system()
    }

    fn check_dim(&self, x: &Coweight) -> Result<()> {
        self.root_system().coweight(x).map(|_| ())
    }

    fn translation(&self, x: &Coweight) -> AffineElt {
        AffineElt::translation(x)
    }

    /// `(lambda_1, lambda_2)`, both dominant, `lambda = lambda_1 - lambda_2`,
    /// with `lambda_2` a combination of fundamental directions.
    pub fn dominant_decomposition(&self, lambda: &Coweight) -> (Coweight, Coweight) {
        let rs = self.root_system();
        let mut l2 = Coweight::zero(lambda.dim());
        for (i, f) in rs.fundamental_directions().iter().enumerate() {
            let a = &rs.simple_roots()[i];
            let d = rs.pairing(a, f);
            let need = (-rs.pairing(a, lambda)).max(0);
            l2 = &l2 + &f.scaled((need + d - 1) / d);
        }
        (lambda + &l2, l2)
    }

    /// `(lambda'_1, lambda'_2)`, both antidominant, `lambda = lambda'_1 - lambda'_2`.
    pub fn antidominant_decomposition(&self, lambda: &Coweight) -> (Coweight, Coweight) {
        let (a, b) = self.dominant_decomposition(&-lambda);
        (-&a, -&b)
    }

    pub fn theta(&self, lambda: &Coweight) -> HeckeElt {
        let (l1, l2) = self.dominant_decomposition(lambda);
        self.theta_unchecked(&l1, &l2)
    }

    /// `T~_{lambda_1} T~_{lambda_2}^{-1}` for a given dominant pair.
    pub fn theta_with(&self, l1: &Coweight, l2: &Coweight) -> Result<HeckeElt> {
        let rs = self.root_system();
        for x in [l1, l2] {
            self.check_dim(x)?;
            if !rs.is_dominant(x) {
                return Err(Error::NotDominant(x.to_string()));
            }
        }
        Ok(self.theta_unchecked(l1, l2))
    }

    pub fn theta_minus(&self, lambda: &Coweight) -> HeckeElt {
        let (l1, l2) = self.antidominant_decomposition(lambda);
        self.theta_unchecked(&l1, &l2)
    }

    pub fn theta_minus_with(&self, l1: &Coweight, l2: &Coweight) -> Result<HeckeElt> {
        let rs = self.root_system();
        for x in [l1, l2] {
            self.check_dim(x)?;
            if !rs.is_antidominant(x) {
                return Err(Error::NotAntidominant(x.to_string()));
            }
        }
        Ok(self.theta_unchecked(l1, l2))
    }

    fn theta_unchecked(&self, l1: &Coweight, l2: &Coweight) -> HeckeElt {
        // T~_{t_{l2}}^{-1} = T~_{(t_{-l2})^{-1}}^{-1}
        let head = self.alg.tt(&self.translation(l1));
        self.alg.right_mul_t_inverse(&head, &self.translation(&-l2))
    }

    /// `z_mu`, the sum of `Theta_lambda` over the orbit of `mu`.
    pub fn bernstein_z(&self, mu: &Coweight) -> Result<HeckeElt> {
        self.orbit_sum(mu, |l| self.theta(l))
    }

    /// The same orbit sum of `Theta^-_lambda`.
    pub fn bernstein_z_minus(&self, mu: &Coweight) -> Result<HeckeElt> {
        self.orbit_sum(mu, |l| self.theta_minus(l))
    }

    fn orbit_sum(&self, mu: &Coweight, f: impl Fn(&Coweight) -> HeckeElt + Sync + Send) -> Result<HeckeElt> {
        self.check_dim(mu)?;
        let rs = self.root_system();
        if !rs.is_dominant(mu) {
            return Err(Error::NotDominant(mu.to_string()));
        }
        let orbit = rs.weyl_orbit(mu);
        Ok(self.alg.exec().map_reduce(&orbit, || HeckeElt::zero(Basis::Ttilde), f, |a, b| a.add(&b)))
    }

    pub fn minuscule_chain(&self, mu_minus: &Coweight, lambda: &Coweight) -> Result<MinusculeChain> {
        let rs = self.root_system();
        let g = self.group();
        self.check_dim(mu_minus)?;
        self.check_dim(lambda)?;
        if !rs.is_antidominant(mu_minus) {
            return Err(Error::NotAntidominant(mu_minus.to_string()));
        }
        if !rs.is_minuscule(mu_minus) {
            return Err(Error::NotMinuscule(mu_minus.to_string()));
        }
        let (bottom, steps) = rs.descent_to_antidominant(lambda);
        if &bottom != mu_minus {
            return Err(Error::NotInOrbit { lambda: lambda.to_string(), mu: mu_minus.to_string() });
        }
        let alphas: Vec<usize> = steps.iter().rev().copied().collect();
        let mut cur = mu_minus.clone();
        for &a in &alphas {
            if rs.pairing(&rs.simple_roots()[a], &cur) != -1 {
                return Err(Error::ChainNotFound(format!("pairing at s{} from {cur}", a + 1)));
            }
            cur = rs.reflect(a, &cur);
        }
        // w^lambda = s_{a_p} ... s_{a_1} t_{mu^-}
        let t_mu = self.translation(mu_minus);
        let w_inv = AffineElt::finite(rs.weyl_from_word(&steps));
        let coset = w_inv.mul(&t_mu);
        let p = alphas.len();
        if g.length(&coset) + p != g.length(&t_mu) {
            return Err(Error::ChainNotFound(format!("coset representative of t{lambda} is too long")));
        }
        let rw = g.reduced_word(&coset);
        let conjugated = alphas
            .iter()
            .map(|&a| {
                g.conjugate_generator(&rw.tau, a)
                    .ok_or_else(|| Error::ChainNotFound(format!("tau s{} tau^-1 is not a generator", a + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        let chain = MinusculeChain {
            mu_minus: mu_minus.clone(),
            lambda: lambda.clone(),
            alphas,
            coset_word: rw.letters,
            conjugated,
            tau: rw.tau,
        };
        let t_lambda = self.translation(lambda);
        if g.evaluate_word(&chain.lambda_word(), &chain.tau) != t_lambda
            || g.evaluate_word(&chain.mu_minus_word(), &chain.tau) != t_mu
        {
            return Err(Error::ChainNotFound(format!("words do not evaluate to t{lambda}")));
        }
        Ok(chain)
    }

    pub fn minimal_expression_minuscule(&self, lambda: &Coweight) -> Result<MinimalExpression> {
        let rs = self.root_system();
        self.check_dim(lambda)?;
        if !rs.is_minuscule(lambda) {
            return Err(Error::NotMinuscule(lambda.to_string()));
        }
        let (mu_minus, _) = rs.descent_to_antidominant(lambda);
        let chain = self.minuscule_chain(&mu_minus, lambda)?;
        let letters = chain
            .coset_word
            .iter()
            .map(|&s| (s, Sign::Plus))
            .chain(chain.conjugated.iter().map(|&s| (s, Sign::Minus)))
            .collect();
        Ok(MinimalExpression { word: SignedWord::new(letters, chain.tau), target: lambda.clone() })
    }

    /// Nested minuscule layers of a `GL_n` coweight: an optional central
    /// layer, then `(1 if lambda_i - c >= j)` for `j = 1, 2, ...`.
    pub fn minuscule_layers(&self, lambda: &Coweight) -> Result<Vec<Coweight>> {
        let rs = self.root_system();
        let n = rs.gl_label().ok_or(Error::NotGL)?;
        self.check_dim(lambda)?;
        let c = lambda.iter().copied().min().unwrap_or(0);
        let top = lambda.iter().map(|x| x - c).max().unwrap_or(0);
        let mut layers = Vec::new();
        if c != 0 {
            layers.push(Coweight::new(&vec![c; n]));
        }
        for j in 1..=top {
            layers.push(Coweight::from(lambda.iter().map(|&x| (x - c >= j) as i64).collect::<Vec<_>>()));
        }
        let g = self.group();
        let total: usize = layers.iter().map(|l| g.length(&self.translation(l))).sum();
        let full = g.length(&self.translation(lambda));
        if total != full {
            return Err(Error::NotReduced { letters: total, length: full });
        }
        Ok(layers)
    }

    /// Concatenates the minuscule minimal expressions of `layers`, moving
    /// each `tau` to the end.
    pub fn minimal_expression_from_layers(&self, layers: &[Coweight]) -> Result<MinimalExpression> {
        let g = self.group();
        let mut letters = Vec::new();
        let mut tau = g.identity();
        let mut target = Coweight::zero(g.dim());
        for layer in layers {
            let e = self.minimal_expression_minuscule(layer)?;
            for &(s, sign) in e.letters() {
                let t = g
                    .conjugate_generator(&tau, s)
                    .ok_or_else(|| Error::ChainNotFound(format!("conjugate of {}", g.generator_name(s))))?;
                letters.push((t, sign));
            }
            tau = tau.mul(e.tau());
            target = &target + layer;
        }
        let word = SignedWord::new(letters, tau);
        let length = g.length(&word.evaluate(g));
        if length != word.len() || word.evaluate(g) != self.translation(&target) {
            return Err(Error::NotReduced { letters: word.len(), length });
        }
        Ok(MinimalExpression { word, target })
    }

    pub fn minimal_expression_gln(&self, lambda: &Coweight) -> Result<MinimalExpression> {
        let layers = self.minuscule_layers(lambda)?;
        self.minimal_expression_from_layers(&layers)
    }

    fn rtilde_filtered(&self, y: &AffineElt, keep: impl Fn(&AffineElt) -> bool) -> Result<HeckeElt> {
        let mut h = HeckeElt::zero(Basis::Ttilde);
        for (x, r) in self.alg.rtilde_row(y)? {
            if keep(&x) {
                h.add_term(x, &q_to_v(&r));
            }
        }
        Ok(h)
    }

    /// `sum over x with lambda(x) = lambda of R~_{x, t_lambda} T~_x`.
    pub fn theta_minus_formula_minuscule(&self, lambda: &Coweight) -> Result<HeckeElt> {
        self.check_minuscule(lambda)?;
        self.rtilde_filtered(&self.translation(lambda), |x| x.trans() == lambda)
    }

    /// `sum over x with t(x) = lambda of R~_{x, t_lambda} T~_x`.
    pub fn theta_formula_minuscule(&self, lambda: &Coweight) -> Result<HeckeElt> {
        self.check_minuscule(lambda)?;
        self.rtilde_filtered(&self.translation(lambda), |x| &x.translation_right() == lambda)
    }

    fn check_minuscule(&self, lambda: &Coweight) -> Result<()> {
        self.check_dim(lambda)?;
        if !self.root_system().is_minuscule(lambda) {
            return Err(Error::NotMinuscule(lambda.to_string()));
        }
        Ok(())
    }

    fn me_k(&self, m: usize, k: usize) -> Result<Coweight> {
        let n = self.root_system().gl_label().ok_or(Error::NotGL)?;
        if k == 0 || k > n || m == 0 {
            return Err(Error::BadIndex(format!("m = {m}, k = {k} for gl:{n}")));
        }
        Ok(Coweight::basis(n, k).scaled(m as i64))
    }

    /// `sum over x with lambda(x) <= m e_k of R~_{x, t_{m e_k}} T~_x` in `GL_n`.
    pub fn theta_minus_formula_mek(&self, m: usize, k: usize) -> Result<HeckeElt> {
        let target = self.me_k(m, k)?;
        let rs = self.root_system();
        self.rtilde_filtered(&self.translation(&target), |x| rs.dominance_leq(x.trans(), &target))
    }

    /// `sum over x in Adm(mu) of R~_{x, t_{lambda(x)}} T~_x` for minuscule dominant `mu`.
    pub fn z_formula_minuscule(&self, mu: &Coweight) -> Result<HeckeElt> {
        self.check_minuscule(mu)?;
        let rs = self.root_system();
        if !rs.is_dominant(mu) {
            return Err(Error::NotDominant(mu.to_string()));
        }
        let g = self.group();
        let mut rows: BTreeMap<Coweight, BTreeMap<AffineElt, QPoly>> = BTreeMap::new();
        for lambda in rs.weyl_orbit(mu) {
            rows.insert(lambda.clone(), self.alg.rtilde_row(&self.translation(&lambda))?);
        }
        let mut h = HeckeElt::zero(Basis::Ttilde);
        for x in g.admissible_set(mu)? {
            if let Some(r) = rows.get(x.trans()).and_then(|row| row.get(&x)) {
                h.add_term(x, &q_to_v(r));
            }
        }
        Ok(h)
    }

    /// `sum over x in Adm(m e_1), lambda in W_0(m e_1) with lambda(x) <= lambda
    /// and x <= t_lambda, of R~_{x, t_lambda} T~_x`.
    pub fn z_formula_me1(&self, m: usize) -> Result<HeckeElt> {
        let mu = self.me_k(m, 1)?;
        let rs = self.root_system();
        let mut h = HeckeElt::zero(Basis::Ttilde);
        for lambda in rs.weyl_orbit(&mu) {
            for (x, r) in self.alg.rtilde_row(&self.translation(&lambda))? {
                if rs.dominance_leq(x.trans(), &lambda) {
                    h.add_term(x, &q_to_v(&r));
                }
            }
        }
        Ok(h)
    }

    /// Whether every `x` in the support of `Theta^-_lambda` has
    /// `lambda(x) <= lambda` and a coefficient in `Z_{>=0}[Q]`.
    pub fn support_check(&self, lambda: &Coweight) -> bool {
        let rs = self.root_system();
        self.theta_minus(lambda).terms().all(|(x, c)| {
            rs.dominance_leq(x.trans(), lambda) && crate::coeffs::v_to_q(c).map(|p| p.is_nonnegative()).unwrap_or(false)
        })
    }

    /// `{x <= t_lambda : lambda(x) = lambda}`.
    pub fn expected_support_minuscule(&self, lambda: &Coweight) -> Result<Vec<AffineElt>> {
        let g = self.group();
        let t = self.translation(lambda);
        Ok(g.interval_below(&t)?.into_iter().filter(|x| x.trans() == lambda).collect())
    }

    /// `{x <= t_{m e_k} : lambda(x) <= m e_k}`.
    pub fn expected_support_mek(&self, m: usize, k: usize) -> Result<Vec<AffineElt>> {
        let target = self.me_k(m, k)?;
        let rs = self.root_system();
        let g = self.group();
        Ok(g.interval_below(&self.translation(&target))?
            .into_iter()
            .filter(|x| rs.dominance_leq(x.trans(), &target))
            .collect())
    }

    /// `T~_s^{-1} Theta^-_lambda T~_s^{-1}` for a finite simple reflection.
    pub fn conjugate_by_inverse(&self, s: usize, h: &HeckeElt) -> HeckeElt {
        let g = self.group().generator(s).clone();
        let left = self.alg.t_inverse(&g);
        let mid = self.alg.mul(&left, &self.alg.convert(h, Basis::Ttilde));
        self.alg.right_mul_gen_inverse(&mid, s)
    }

    /// Both sides of the cleared-denominator commutation relation
    /// `(Theta_lambda T_s - T_s Theta_{s lambda})(1 - Theta_{-a}) = (q - 1)(Theta_lambda - Theta_{s lambda})`
    /// where `a` is the simple coroot of `s`, in the `T` basis.
    pub fn commutation_sides(&self, s: usize, lambda: &Coweight) -> (HeckeElt, HeckeElt) {
        let rs = self.root_system();
        let alg = &self.alg;
        let sl = rs.reflect(s, lambda);
        let t = |h: &HeckeElt| alg.convert(h, Basis::T);
        let th = t(&self.theta(lambda));
        let th_s = t(&self.theta(&sl));
        let ts = alg.t(self.group().generator(s));
        let coroot = Coweight::new(&rs.simple_coroots()[s]);
        let one_minus = alg.one(Basis::T).sub(&t(&self.theta(&-&coroot)));
        let lhs = alg.mul(&alg.mul(&th, &ts).sub(&alg.mul(&ts, &th_s)), &one_minus);
        let q1 = &LaurentPoly::q() - &LaurentPoly::one();
        let rhs = th.sub(&th_s).scale(&q1);
        (lhs, rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::DescentOrder;
    use crate::rootdata::Lattice;

    fn gl(n: usize) -> Bernstein {
        Bernstein::for_root_system(RootSystem::gl(n))
    }

    fn cw(v: &[i64]) -> Coweight {
        Coweight::new(v)
    }

    fn t(v: &[i64]) -> AffineElt {
        AffineElt::translation(&cw(v))
    }

    fn bq() -> LaurentPoly {
        LaurentPoly::big_q()
    }

    fn box3(lo: i64, hi: i64) -> Vec<Coweight> {
        let mut out = Vec::new();
        for a in lo..=hi {
            for b in lo..=hi {
                for c in lo..=hi {
                    out.push(cw(&[a, b, c]));
                }
            }
        }
        out
    }

    #[test]
    fn theta_minus_examples() {
        let b = gl(2);
        let alg = b.algebra();
        let tau = b.group().gl_tau().unwrap();
        let expect = alg.tt(&t(&[1, 0])).add(&HeckeElt::term(Basis::Ttilde, tau, bq()));
        assert_eq!(b.theta_minus(&cw(&[1, 0])), expect);
        assert_eq!(b.theta_minus(&cw(&[0, 1])), alg.tt(&t(&[0, 1])));
        assert_eq!(b.theta_minus(&cw(&[0, 0])), alg.one(Basis::Ttilde));
        assert_eq!(alg.format(&b.theta_minus(&cw(&[1, 0]))), "T~[t[1,0]] + Q*T~[tau]");
    }

    #[test]
    fn theta_examples() {
        let b = gl(2);
        let alg = b.algebra();
        assert_eq!(b.theta(&cw(&[2, 0])), alg.tt(&t(&[2, 0])));
        let direct = alg.mul(&alg.tt(&t(&[1, 1])), &alg.t_inverse(&t(&[-1, 0])));
        assert_eq!(b.theta(&cw(&[0, 1])), direct);
        let tau = b.group().gl_tau().unwrap();
        let expect = alg.tt(&t(&[0, 1])).add(&HeckeElt::term(Basis::Ttilde, tau, bq()));
        assert_eq!(b.theta(&cw(&[0, 1])), expect);
    }

    #[test]
    fn decomposition_independence() {
        for b in [gl(3), Bernstein::for_root_system(RootSystem::preset('B', 2, Lattice::SimplyConnected).unwrap())] {
            let rs = b.root_system();
            let shift: Coweight = rs.fundamental_directions().iter().fold(Coweight::zero(rs.rank()), |a, f| &a + f);
            let lambdas: Vec<Coweight> = if rs.rank() == 3 {
                box3(-1, 1)
            } else {
                let mut v = Vec::new();
                for x in -2..=2 {
                    for y in -2..=2 {
                        v.push(cw(&[x, y]));
                    }
                }
                v
            };
            for l in lambdas {
                let (l1, l2) = b.dominant_decomposition(&l);
                let alt = b.theta_with(&(&l1 + &shift), &(&l2 + &shift)).unwrap();
                assert_eq!(b.theta(&l), alt, "{l}");
                let (m1, m2) = b.antidominant_decomposition(&l);
                let alt = b.theta_minus_with(&(&m1 - &shift), &(&m2 - &shift)).unwrap();
                assert_eq!(b.theta_minus(&l), alt, "{l}");
            }
        }
    }

    #[test]
    fn theta_minus_is_multiplicative() {
        let b = gl(3);
        let alg = b.algebra();
        let lams = box3(-1, 1);
        for l in lams.iter().step_by(4) {
            for m in lams.iter().step_by(5) {
                let lhs = alg.mul(&b.theta_minus(l), &b.theta_minus(m));
                assert_eq!(lhs, b.theta_minus(&(l + m)), "{l} {m}");
            }
        }
    }

    #[test]
    fn z_examples() {
        let b = gl(2);
        let alg = b.algebra();
        assert_eq!(b.bernstein_z(&cw(&[1, 1])).unwrap(), alg.tt(&t(&[1, 1])));
        let tau = b.group().gl_tau().unwrap();
        let expect = alg.tt(&t(&[1, 0])).add(&alg.tt(&t(&[0, 1]))).add(&HeckeElt::term(Basis::Ttilde, tau, bq()));
        assert_eq!(b.bernstein_z(&cw(&[1, 0])).unwrap(), expect);
        assert_eq!(b.z_formula_minuscule(&cw(&[1, 0])).unwrap(), expect);
        assert!(matches!(b.bernstein_z(&cw(&[0, 1])), Err(Error::NotDominant(_))));
        assert_eq!(b.z_formula_me1(2).unwrap(), b.bernstein_z(&cw(&[2, 0])).unwrap());
    }

    #[test]
    fn chain_examples() {
        let b = gl(2);
        let c = b.minuscule_chain(&cw(&[0, 1]), &cw(&[1, 0])).unwrap();
        assert_eq!(c.alphas, vec![0]);
        assert!(c.coset_word.is_empty());
        assert_eq!(c.conjugated, vec![1]);
        assert_eq!(c.tau, b.group().gl_tau().unwrap());
        let c = b.minuscule_chain(&cw(&[0, 1]), &cw(&[0, 1])).unwrap();
        assert_eq!(c.p(), 0);
        let b3 = gl(3);
        let c = b3.minuscule_chain(&cw(&[0, 0, 1]), &cw(&[0, 1, 0])).unwrap();
        assert_eq!(c.alphas, vec![1]);
        assert!(matches!(b3.minuscule_chain(&cw(&[0, 0, 1]), &cw(&[0, 1, 1])), Err(Error::NotInOrbit { .. })));
        assert!(matches!(b3.minuscule_chain(&cw(&[1, 0, 0]), &cw(&[1, 0, 0])), Err(Error::NotAntidominant(_))));
    }

    #[test]
    fn minimal_expression_examples() {
        let b = gl(2);
        let e = b.minimal_expression_minuscule(&cw(&[1, 0])).unwrap();
        assert_eq!(e.letters(), &[(1, Sign::Minus)]);
        assert_eq!(e.tau(), &b.group().gl_tau().unwrap());
        let e = b.minimal_expression_minuscule(&cw(&[0, 1])).unwrap();
        assert!(e.letters().iter().all(|&(_, s)| s == Sign::Plus));
        let b3 = gl(3);
        let e = b3.minimal_expression_minuscule(&cw(&[1, 1, 0])).unwrap();
        assert_eq!(e.len(), 2);
        assert!(matches!(b3.minimal_expression_minuscule(&cw(&[2, 0, 0])), Err(Error::NotMinuscule(_))));
        let e = b.minimal_expression_gln(&cw(&[2, 0])).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(b3.minimal_expression_gln(&cw(&[2, 1, 0])).unwrap().len(), 4);
    }

    #[test]
    fn layers_examples() {
        let b = gl(3);
        assert_eq!(b.minuscule_layers(&cw(&[2, 1, 0])).unwrap(), vec![cw(&[1, 1, 0]), cw(&[1, 0, 0])]);
        assert_eq!(b.minuscule_layers(&cw(&[1, 2, 0])).unwrap(), vec![cw(&[1, 1, 0]), cw(&[0, 1, 0])]);
        assert_eq!(b.minuscule_layers(&cw(&[1, 1, 1])).unwrap(), vec![cw(&[1, 1, 1])]);
        assert_eq!(
            b.minuscule_layers(&cw(&[0, -1, 1])).unwrap(),
            vec![cw(&[-1, -1, -1]), cw(&[1, 0, 1]), cw(&[0, 0, 1])]
        );
        let a2 = Bernstein::for_root_system(RootSystem::preset('A', 2, Lattice::Adjoint).unwrap());
        assert!(matches!(a2.minuscule_layers(&cw(&[1, 0])), Err(Error::NotGL)));
    }

    #[test]
    fn minimal_expressions_evaluate_to_theta_minus() {
        let b = gl(3);
        let alg = b.algebra();
        for l in box3(-1, 2) {
            let e = b.minimal_expression_gln(&l).unwrap();
            assert_eq!(e.word.hecke_product(alg), b.theta_minus(&l), "{l}");
        }
        let layers = b.minuscule_layers(&cw(&[2, 1, 0])).unwrap();
        let rev: Vec<Coweight> = layers.iter().rev().cloned().collect();
        let e1 = b.minimal_expression_from_layers(&layers).unwrap();
        let e2 = b.minimal_expression_from_layers(&rev).unwrap();
        assert_ne!(e1.word, e2.word);
        assert_eq!(e1.word.hecke_product(alg), e2.word.hecke_product(alg));
    }

    #[test]
    fn formula_examples() {
        let b = gl(2);
        let tau = b.group().gl_tau().unwrap();
        let f = b.theta_minus_formula_minuscule(&cw(&[1, 0])).unwrap();
        assert_eq!(f, b.theta_minus(&cw(&[1, 0])));
        assert_eq!(f.coeff(&tau), bq());
        assert_eq!(b.theta_minus_formula_minuscule(&cw(&[0, 1])).unwrap().len(), 1);
        let f = b.theta_formula_minuscule(&cw(&[0, 1])).unwrap();
        assert_eq!(f.support(), {
            let mut v = vec![t(&[0, 1]), tau];
            v.sort();
            v
        });
        assert_eq!(f, b.theta(&cw(&[0, 1])));
        assert_eq!(b.theta_minus_formula_mek(2, 1).unwrap(), b.theta_minus(&cw(&[2, 0])));
        assert!(matches!(b.theta_minus_formula_mek(1, 3), Err(Error::BadIndex(_))));
    }

    #[test]
    fn support_check_examples() {
        let b = gl(3);
        assert!(b.support_check(&cw(&[1, 2, 0])));
        assert!(b.support_check(&cw(&[0, 0, 2])));
        assert!(gl(2).support_check(&cw(&[1, 0])));
    }

    #[test]
    fn bar_iota_relations() {
        let b = gl(2);
        let alg = b.algebra();
        for x in -2..=2 {
            for y in -2..=2 {
                let l = cw(&[x, y]);
                assert_eq!(alg.bar(&b.theta(&l)), b.theta_minus(&l));
                assert_eq!(alg.iota(&b.theta(&-&l)), b.theta_minus(&l));
            }
        }
    }

    #[test]
    fn rtilde_descent_independence_on_translations() {
        let b = gl(3);
        let alg = b.algebra();
        let y = t(&[2, 0, -1]);
        assert_eq!(alg.rtilde_row(&y).unwrap(), alg.rtilde_row_with(&y, DescentOrder::Highest).unwrap());
    }
}
