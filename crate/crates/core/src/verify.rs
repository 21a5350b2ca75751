//! Identity checks over batches of coweights, grouped into suites.
//!
//! Every check compares two independently computed quantities and records
//! one message per failing case. Cases run through the algebra's [`Exec`],
//! and reports are ordered, so repeated runs print the same thing.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use crate::affine::{subword_products, AffineElt, AffineGroup, DescentOrder};
use crate::bernstein::Bernstein;
use crate::coeffs::LaurentPoly;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::gallery::{bott_samelson_counts, expand_signed_word, fiber_traces, n_counts};
use crate::hecke::{Basis, HeckeAlgebra, HeckeElt};
use crate::rootdata::{Coweight, Lattice, RootSystem};

/// Outcome of one identity over a batch of cases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub system: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl Check {
    fn collect(name: &str, system: &str, outcomes: Vec<Option<String>>) -> Self {
        Self {
            name: name.to_string(),
            system: system.to_string(),
            cases: outcomes.len(),
            failures: outcomes.into_iter().flatten().collect(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = if c.passed() { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{tag}  {:<24} {:<8} {} cases", c.name, c.system, c.cases);
            for f in c.failures.iter().take(5) {
                let _ = writeln!(out, "      {f}");
            }
            if c.failures.len() > 5 {
                let _ = writeln!(out, "      ... {} more", c.failures.len() - 5);
            }
        }
        let passed = self.checks.iter().filter(|c| c.passed()).count();
        let _ = writeln!(out, "{passed}/{} checks passed", self.checks.len());
        out
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "system": c.system,
                    "cases": c.cases,
                    "passed": c.passed(),
                    "failures": c.failures,
                })
            })
            .collect();
        json!({ "passed": self.all_passed(), "checks": checks })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("name,system,cases,failures,passed\n");
        for c in &self.checks {
            let _ = writeln!(out, "{},{},{},{},{}", c.name, c.system, c.cases, c.failures.len(), c.passed());
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Minuscule,
    Mek,
    Bernstein,
    Gallery,
    Rpoly,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "minuscule" => Suite::Minuscule,
            "mek" => Suite::Mek,
            "bernstein" => Suite::Bernstein,
            "gallery" => Suite::Gallery,
            "rpoly" => Suite::Rpoly,
            "all" => Suite::All,
            _ => return Err(Error::Parse(format!("unknown suite {s:?}"))),
        })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub max_n: usize,
    pub max_m: usize,
    pub exec: Exec,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { max_n: 4, max_m: 3, exec: Exec::default() }
    }
}

/// `GL_2 .. GL_max_n` followed by `A2`, `A3`, `B2` in both lattices.
pub fn default_systems(max_n: usize) -> Vec<RootSystem> {
    let mut out: Vec<RootSystem> = (2..=max_n).map(RootSystem::gl).collect();
    for (kind, r) in [('A', 2), ('A', 3), ('B', 2)] {
        for lattice in [Lattice::SimplyConnected, Lattice::Adjoint] {
            out.push(RootSystem::preset(kind, r, lattice).expect("preset"));
        }
    }
    out
}

pub fn run(systems: &[RootSystem], suite: Suite, opts: &VerifyOptions) -> Result<Report> {
    let mut report = Report::default();
    for rs in systems {
        let b = Bernstein::new(
            HeckeAlgebra::new(std::sync::Arc::new(AffineGroup::new(std::sync::Arc::new(rs.clone()))))
                .with_exec(opts.exec),
        );
        run_one(&b, suite, opts, &mut report)?;
    }
    Ok(report)
}

fn run_one(b: &Bernstein, suite: Suite, opts: &VerifyOptions, report: &mut Report) -> Result<()> {
    let rs = b.root_system();
    let gl = rs.gl_label();
    let wants = |s: Suite| suite == Suite::All || suite == s;
    let minuscule = minuscule_coweights(rs, &[-1, 0, 1]);
    let small_box = if gl.is_some() { coweight_box(rs.rank(), -1, 1) } else { coweight_box(rs.rank(), -2, 2) };
    if wants(Suite::Minuscule) {
        report.push(minuscule_formula(b, &minuscule)?);
        report.push(minuscule_support(b, &minuscule)?);
        report.push(theta_formula(b, &minuscule)?);
        let dominant: Vec<Coweight> = minuscule.iter().filter(|l| rs.is_dominant(l)).cloned().collect();
        report.push(z_formula_minuscule(b, &dominant)?);
    }
    if wants(Suite::Mek) && gl.is_some() {
        report.push(mek_formula(b, opts.max_m)?);
        report.push(mek_support(b, opts.max_m)?);
        report.push(z_formula_me1(b, opts.max_m)?);
    }
    if wants(Suite::Bernstein) {
        report.push(support_containment(b, &small_box));
        let dominant: Vec<Coweight> = coweight_box(rs.rank(), 0, 2).into_iter().filter(|l| rs.is_dominant(l)).collect();
        report.push(z_orbit_sums(b, &dominant)?);
        report.push(z_central(b, &dominant)?);
        report.push(bernstein_shadows(b, &small_box));
        if gl.is_some() || rs.label().ends_with(":sc") {
            report.push(commutation_relation(b, &small_box));
        }
        report.push(bar_iota(b, &small_box));
        report.push(involutions(b, 50, 6, 7));
        report.push(multiplicativity(b, &small_box));
    }
    if wants(Suite::Rpoly) {
        report.push(rtilde_integrity(b, if gl.is_some() { 6 } else { 5 })?);
    }
    if wants(Suite::Gallery) {
        let mut lambdas = minuscule.clone();
        if let Some(n) = gl {
            for m in 1..=opts.max_m {
                for k in 1..=n {
                    lambdas.push(Coweight::basis(n, k).scaled(m as i64));
                }
            }
            if n == 3 {
                lambdas.push(Coweight::new(&[2, 1, 0]));
                lambdas.push(Coweight::new(&[1, 2, 0]));
            }
        }
        lambdas.sort();
        lambdas.dedup();
        report.push(fiber_trace_shadow(b, &lambdas)?);
        if let Some(n) = gl {
            if n <= 3 {
                report.push(n_count_sanity(b, 6));
                report.push(minimal_expressions(b, &coweight_box(n, 0, 2)));
            }
        }
    }
    Ok(())
}

/// Every point of `[lo, hi]^dim`, in lexicographic order.
pub fn coweight_box(dim: usize, lo: i64, hi: i64) -> Vec<Coweight> {
    let mut out = vec![Vec::new()];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (lo..=hi).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(Coweight::from).collect()
}

/// All minuscule coweights: for `GL_n` the orbits of `(1^i, 0^{n-i})` shifted
/// by `c (1, ..., 1)` for `c` in `shifts`; otherwise `0` and the orbits of
/// the minuscule fundamental directions.
pub fn minuscule_coweights(rs: &RootSystem, shifts: &[i64]) -> Vec<Coweight> {
    let n = rs.rank();
    let mut dominant = Vec::new();
    if rs.gl_label().is_some() {
        for &c in shifts {
            for i in 0..=n {
                dominant.push(Coweight::from((0..n).map(|j| c + (j < i) as i64).collect::<Vec<_>>()));
            }
        }
    } else {
        dominant.push(Coweight::zero(n));
        dominant.extend(rs.fundamental_directions().iter().filter(|f| rs.is_minuscule(f)).cloned());
    }
    let mut out: Vec<Coweight> = dominant.iter().flat_map(|d| rs.weyl_orbit(d)).collect();
    out.sort();
    out.dedup();
    out
}

fn exec(b: &Bernstein) -> Exec {
    b.algebra().exec()
}

fn label(b: &Bernstein) -> String {
    b.root_system().label().to_string()
}

fn mismatch(what: &str, alg: &HeckeAlgebra, lhs: &HeckeElt, rhs: &HeckeElt) -> Option<String> {
    if lhs == rhs {
        None
    } else {
        Some(format!("{what}: {} != {}", alg.format(lhs), alg.format(rhs)))
    }
}

fn try_cases<T: Sync>(
    b: &Bernstein,
    items: &[T],
    f: impl Fn(&T) -> Result<Option<String>> + Sync + Send,
) -> Result<Vec<Option<String>>> {
    exec(b).map(items, f).into_iter().collect()
}

/// `Theta^-_lambda` against the `R~` sum over `lambda(x) = lambda`.
pub fn minuscule_formula(b: &Bernstein, lambdas: &[Coweight]) -> Result<Check> {
    let alg = b.algebra();
    let out = try_cases(b, lambdas, |l| {
        Ok(mismatch(&format!("lambda {l}"), alg, &b.theta_minus(l), &b.theta_minus_formula_minuscule(l)?))
    })?;
    Ok(Check::collect("minuscule-formula", &label(b), out))
}

/// `Theta_lambda` against the `R~` sum over `t(x) = lambda`.
pub fn theta_formula(b: &Bernstein, lambdas: &[Coweight]) -> Result<Check> {
    let alg = b.algebra();
    let out = try_cases(b, lambdas, |l| {
        Ok(mismatch(&format!("lambda {l}"), alg, &b.theta(l), &b.theta_formula_minuscule(l)?))
    })?;
    Ok(Check::collect("theta-formula", &label(b), out))
}

fn support_mismatch(what: String, got: Vec<AffineElt>, want: Vec<AffineElt>) -> Option<String> {
    (got != want).then(|| format!("{what}: support of size {} != {}", got.len(), want.len()))
}

pub fn minuscule_support(b: &Bernstein, lambdas: &[Coweight]) -> Result<Check> {
    let out = try_cases(b, lambdas, |l| {
        Ok(support_mismatch(format!("lambda {l}"), b.theta_minus(l).support(), b.expected_support_minuscule(l)?))
    })?;
    Ok(Check::collect("minuscule-support", &label(b), out))
}

fn mek_cases(b: &Bernstein, max_m: usize) -> Vec<(usize, usize)> {
    let n = b.root_system().gl_label().unwrap_or(0);
    (1..=max_m).flat_map(|m| (1..=n).map(move |k| (m, k))).collect()
}

fn me_k(b: &Bernstein, m: usize, k: usize) -> Coweight {
    Coweight::basis(b.root_system().rank(), k).scaled(m as i64)
}

pub fn mek_formula(b: &Bernstein, max_m: usize) -> Result<Check> {
    let alg = b.algebra();
    let out = try_cases(b, &mek_cases(b, max_m), |&(m, k)| {
        let lhs = b.theta_minus(&me_k(b, m, k));
        Ok(mismatch(&format!("m = {m}, k = {k}"), alg, &lhs, &b.theta_minus_formula_mek(m, k)?))
    })?;
    Ok(Check::collect("mek-formula", &label(b), out))
}

pub fn mek_support(b: &Bernstein, max_m: usize) -> Result<Check> {
    let out = try_cases(b, &mek_cases(b, max_m), |&(m, k)| {
        let got = b.theta_minus(&me_k(b, m, k)).support();
        Ok(support_mismatch(format!("m = {m}, k = {k}"), got, b.expected_support_mek(m, k)?))
    })?;
    Ok(Check::collect("mek-support", &label(b), out))
}

/// Dominance containment of the support and nonnegativity in `Q`.
pub fn support_containment(b: &Bernstein, lambdas: &[Coweight]) -> Check {
    let out = exec(b).map(lambdas, |l| (!b.support_check(l)).then(|| format!("lambda {l}")));
    Check::collect("support-containment", &label(b), out)
}

/// `z_mu` as orbit sums of `Theta` and of `Theta^-`, and bar invariance.
pub fn z_orbit_sums(b: &Bernstein, mus: &[Coweight]) -> Result<Check> {
    let alg = b.algebra();
    let out = try_cases(b, mus, |mu| {
        let z = b.bernstein_z(mu)?;
        let z_minus = b.bernstein_z_minus(mu)?;
        Ok(mismatch(&format!("mu {mu} orbit sums"), alg, &z, &z_minus)
            .or_else(|| mismatch(&format!("mu {mu} bar"), alg, &alg.bar(&z), &z)))
    })?;
    Ok(Check::collect("z-orbit-sums", &label(b), out))
}

/// `z_mu` commutes with `T_s` for `s` in `S_a` and with the generators of `Omega`.
pub fn z_central(b: &Bernstein, mus: &[Coweight]) -> Result<Check> {
    let alg = b.algebra();
    let g = b.group();
    let mut others: Vec<AffineElt> = g.generators().to_vec();
    others.extend(g.omega_generators());
    let out = try_cases(b, mus, |mu| {
        let z = b.bernstein_z(mu)?;
        for x in &others {
            let t = alg.tt(x);
            if alg.mul(&z, &t) != alg.mul(&t, &z) {
                return Ok(Some(format!("mu {mu} with {}", g.format(x))));
            }
        }
        Ok(None)
    })?;
    Ok(Check::collect("z-central", &label(b), out))
}

pub fn z_formula_minuscule(b: &Bernstein, mus: &[Coweight]) -> Result<Check> {
    let alg = b.algebra();
    let out = try_cases(b, mus, |mu| {
        Ok(mismatch(&format!("mu {mu}"), alg, &b.z_formula_minuscule(mu)?, &b.bernstein_z(mu)?))
    })?;
    Ok(Check::collect("z-formula-minuscule", &label(b), out))
}

pub fn z_formula_me1(b: &Bernstein, max_m: usize) -> Result<Check> {
    let alg = b.algebra();
    let ms: Vec<usize> = (1..=max_m).collect();
    let out = try_cases(b, &ms, |&m| {
        Ok(mismatch(&format!("m = {m}"), alg, &b.z_formula_me1(m)?, &b.bernstein_z(&me_k(b, m, 1))?))
    })?;
    Ok(Check::collect("z-formula-me1", &label(b), out))
}

/// For each finite simple `s` with `<a, lambda> = 0`, `T~_s^{-1}` commutes with
/// `Theta^-_lambda`; with `<a, lambda> = -1`,
/// `T~_s^{-1} Theta^-_lambda T~_s^{-1} = Theta^-_{s lambda}`.
pub fn bernstein_shadows(b: &Bernstein, lambdas: &[Coweight]) -> Check {
    let alg = b.algebra();
    let rs = b.root_system();
    let out = exec(b).map(lambdas, |l| {
        let th = b.theta_minus(l);
        for s in 0..rs.semisimple_rank() {
            let inv = alg.t_inverse(b.group().generator(s));
            match rs.pairing(&rs.simple_roots()[s], l) {
                0 => {
                    if alg.mul(&inv, &th) != alg.mul(&th, &inv) {
                        return Some(format!("lambda {l}, s{} does not commute", s + 1));
                    }
                }
                -1 if b.conjugate_by_inverse(s, &th) != b.theta_minus(&rs.reflect(s, l)) => {
                    return Some(format!("lambda {l}, conjugation by s{}", s + 1));
                }
                _ => {}
            }
        }
        None
    });
    Check::collect("bernstein-shadows", &label(b), out)
}

pub fn commutation_relation(b: &Bernstein, lambdas: &[Coweight]) -> Check {
    let alg = b.algebra();
    let n = b.root_system().semisimple_rank();
    let cases: Vec<(Coweight, usize)> = lambdas.iter().flat_map(|l| (0..n).map(move |s| (l.clone(), s))).collect();
    let out = exec(b).map(&cases, |(l, s)| {
        let (lhs, rhs) = b.commutation_sides(*s, l);
        mismatch(&format!("lambda {l}, s{}", s + 1), alg, &lhs, &rhs)
    });
    Check::collect("commutation-relation", &label(b), out)
}

/// `bar(Theta_lambda) = Theta^-_lambda = iota(Theta_{-lambda})`.
pub fn bar_iota(b: &Bernstein, lambdas: &[Coweight]) -> Check {
    let alg = b.algebra();
    let out = exec(b).map(lambdas, |l| {
        let tm = b.theta_minus(l);
        mismatch(&format!("lambda {l} bar"), alg, &alg.bar(&b.theta(l)), &tm)
            .or_else(|| mismatch(&format!("lambda {l} iota"), alg, &alg.iota(&b.theta(&-l)), &tm))
    });
    Check::collect("bar-iota", &label(b), out)
}

/// A reproducible random element with at most `max_terms` terms.
pub fn random_element(g: &AffineGroup, rng: &mut StdRng, max_terms: usize) -> HeckeElt {
    let basis = if rng.gen_bool(0.5) { Basis::T } else { Basis::Ttilde };
    let omegas = g.omega_generators();
    let mut h = HeckeElt::zero(basis);
    for _ in 0..rng.gen_range(1..=max_terms) {
        let word: Vec<usize> = (0..rng.gen_range(0..=5)).map(|_| rng.gen_range(0..g.num_generators())).collect();
        let om = match omegas.len() {
            0 => g.identity(),
            k => {
                let o = &omegas[rng.gen_range(0..k)];
                if rng.gen_bool(0.5) {
                    o.clone()
                } else {
                    o.inverse()
                }
            }
        };
        let mut c = LaurentPoly::zero();
        for _ in 0..rng.gen_range(1..=3) {
            c += &LaurentPoly::monomial(rng.gen_range(-3i64..=3), rng.gen_range(-3..=3));
        }
        h.add_term(g.evaluate_word(&word, &om), &c);
    }
    h
}

/// `bar` and `iota` square to the identity on random elements.
pub fn involutions(b: &Bernstein, count: usize, max_terms: usize, seed: u64) -> Check {
    let alg = b.algebra();
    let mut rng = StdRng::seed_from_u64(seed);
    let elts: Vec<HeckeElt> = (0..count).map(|_| random_element(b.group(), &mut rng, max_terms)).collect();
    let out = exec(b).map(&elts, |h| {
        mismatch("bar twice", alg, &alg.bar(&alg.bar(h)), h)
            .or_else(|| mismatch("iota twice", alg, &alg.iota(&alg.iota(h)), h))
    });
    Check::collect("involutions", &label(b), out)
}

/// `Theta^-_lambda Theta^-_mu = Theta^-_{lambda + mu}` on pairs from a sample.
pub fn multiplicativity(b: &Bernstein, lambdas: &[Coweight]) -> Check {
    let alg = b.algebra();
    let sample: Vec<&Coweight> = lambdas.iter().step_by(3).collect();
    let pairs: Vec<(&Coweight, &Coweight)> =
        sample.iter().flat_map(|l| sample.iter().step_by(2).map(move |m| (*l, *m))).collect();
    let out = exec(b).map(&pairs, |(l, m)| {
        let lhs = alg.mul(&b.theta_minus(l), &b.theta_minus(m));
        mismatch(&format!("{l} + {m}"), alg, &lhs, &b.theta_minus(&(*l + *m)))
    });
    Check::collect("multiplicativity", &label(b), out)
}

/// `R~_{-, y}` agrees for two reduced words and is nonzero exactly on the
/// subword products of a reduced word of `y`.
pub fn rtilde_integrity(b: &Bernstein, max_len: usize) -> Result<Check> {
    let alg = b.algebra();
    let g = b.group();
    let mut omegas = vec![g.identity()];
    omegas.extend(g.omega_generators());
    let ys = g.elements_up_to(max_len, &omegas);
    let out = try_cases(b, &ys, |y| {
        let row = alg.rtilde_row(y)?;
        if row != alg.rtilde_row_with(y, DescentOrder::Highest)? {
            return Ok(Some(format!("y = {} depends on the word", g.format(y))));
        }
        let rw = g.reduced_word(y);
        let mut oracle: Vec<AffineElt> = subword_products(g, &rw.letters, &rw.tau).into_iter().collect();
        oracle.sort();
        let keys: Vec<AffineElt> = row.keys().cloned().collect();
        Ok((keys != oracle).then(|| format!("y = {} support differs from subwords", g.format(y))))
    })?;
    Ok(Check::collect("rtilde-integrity", &label(b), out))
}

/// The minimal expression used for `lambda`: layered in `GL_n`, the
/// minuscule chain otherwise.
pub fn minimal_expression(b: &Bernstein, lambda: &Coweight) -> Result<crate::bernstein::MinimalExpression> {
    if b.root_system().gl_label().is_some() {
        b.minimal_expression_gln(lambda)
    } else {
        b.minimal_expression_minuscule(lambda)
    }
}

/// Gallery traces against `eps_lambda` times the `T`-coefficients of `Theta^-_lambda`
/// for every `x <= t_lambda`.
pub fn fiber_trace_shadow(b: &Bernstein, lambdas: &[Coweight]) -> Result<Check> {
    let alg = b.algebra();
    let g = b.group();
    let out = try_cases(b, lambdas, |l| {
        let e = minimal_expression(b, l)?;
        let traces = fiber_traces(g, &e.word)?;
        let theta = alg.convert(&b.theta_minus(l), Basis::T);
        let eps = if e.len() % 2 == 0 { BigInt::from(1) } else { BigInt::from(-1) };
        for x in g.interval_below(&AffineElt::translation(l))? {
            let want = theta.coeff(&x).scale(&eps);
            let got = traces.get(&x).cloned().unwrap_or_default();
            if got != want {
                return Ok(Some(format!("lambda {l}, x = {}: {got} != {want}", g.format(&x))));
            }
        }
        if traces.keys().any(|x| !g.bruhat_leq(x, &AffineElt::translation(l))) {
            return Ok(Some(format!("lambda {l}: trace outside the Schubert variety")));
        }
        Ok(None)
    })?;
    Ok(Check::collect("fiber-trace", &label(b), out))
}

/// All words of length `<= max_g` over `S_a`.
pub fn all_words(num_gens: usize, max_g: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_g {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<usize>| {
                (0..num_gens).map(move |s| {
                    let mut v = w.clone();
                    v.push(s);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Quadratic examples, totals at `q = 1`, `sum N q^{l(w)} = q^g`, and
/// reassembly of `T_{s_1} ... T_{s_g}` from the counts.
pub fn n_count_sanity(b: &Bernstein, max_g: usize) -> Check {
    let alg = b.algebra();
    let g = b.group();
    let words = all_words(g.num_generators(), max_g);
    let q = LaurentPoly::q();
    let out = exec(b).map(&words, |word| {
        let counts = n_counts(g, word);
        if word.len() == 2 && word[0] == word[1] {
            let s = g.generator(word[0]);
            if counts.get(&g.identity()) != Some(&q) || counts.get(s) != Some(&(&q - &LaurentPoly::one())) {
                return Some(format!("{word:?}: quadratic relation"));
            }
        }
        let bs_total: BigInt = bott_samelson_counts(g, word).values().map(LaurentPoly::eval_at_one).sum();
        if bs_total != BigInt::from(1u64 << word.len()) {
            return Some(format!("{word:?}: {bs_total} points at q = 1"));
        }
        let n_total: BigInt = counts.values().map(LaurentPoly::eval_at_one).sum();
        if n_total != BigInt::from(1) {
            return Some(format!("{word:?}: N sums to {n_total} at q = 1"));
        }
        let weighted =
            counts.iter().map(|(x, c)| c.shift(2 * g.length(x) as i32)).fold(LaurentPoly::zero(), |a, c| &a + &c);
        if weighted != q.pow(word.len() as u32) {
            return Some(format!("{word:?}: weighted total {weighted}"));
        }
        let product = word.iter().fold(alg.one(Basis::T), |acc, &s| alg.right_mul_gen(&acc, s));
        let mut reassembled = HeckeElt::zero(Basis::T);
        for (x, c) in &counts {
            reassembled.add_term(x.clone(), c);
        }
        mismatch(&format!("{word:?} reassembly"), alg, &reassembled, &product)
    });
    Check::collect("n-count", &label(b), out)
}

/// Layer additivity, reducedness of the concatenated word, and the gallery
/// expansion of the signed word against `Theta^-_lambda`.
pub fn minimal_expressions(b: &Bernstein, lambdas: &[Coweight]) -> Check {
    let alg = b.algebra();
    let g = b.group();
    let out = exec(b).map(lambdas, |l| {
        let t = AffineElt::translation(l);
        let layers = match b.minuscule_layers(l) {
            Ok(v) => v,
            Err(e) => return Some(format!("lambda {l}: {e}")),
        };
        let sum: usize = layers.iter().map(|x| g.length(&AffineElt::translation(x))).sum();
        if sum != g.length(&t) {
            return Some(format!("lambda {l}: layer lengths {sum} != {}", g.length(&t)));
        }
        let e = match b.minimal_expression_from_layers(&layers) {
            Ok(e) => e,
            Err(e) => return Some(format!("lambda {l}: {e}")),
        };
        if e.word.evaluate(g) != t || e.len() != g.length(&t) {
            return Some(format!("lambda {l}: word is not a reduced word of t_lambda"));
        }
        let expanded = expand_signed_word(g, &e.word);
        mismatch(&format!("lambda {l}"), alg, &expanded, &alg.convert(&b.theta_minus(l), Basis::T))
    });
    Check::collect("minimal-expression", &label(b), out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl2_all_suites_pass() {
        let report = run(&[RootSystem::gl(2)], Suite::All, &VerifyOptions::default()).unwrap();
        assert!(report.all_passed(), "{}", report.to_text());
        let again = run(&[RootSystem::gl(2)], Suite::All, &VerifyOptions::default()).unwrap();
        assert_eq!(report, again);
    }

    #[test]
    fn minuscule_sets() {
        let rs = RootSystem::preset('A', 2, Lattice::SimplyConnected).unwrap();
        assert_eq!(minuscule_coweights(&rs, &[0]), vec![Coweight::zero(2)]);
        let rs = RootSystem::preset('A', 2, Lattice::Adjoint).unwrap();
        assert_eq!(minuscule_coweights(&rs, &[0]).len(), 7);
        assert_eq!(minuscule_coweights(&RootSystem::gl(3), &[-1, 0, 1]).len(), 22);
    }

    #[test]
    fn suite_names() {
        assert_eq!("mek".parse::<Suite>().unwrap(), Suite::Mek);
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn boxes_and_words() {
        assert_eq!(coweight_box(3, -2, 2).len(), 125);
        assert_eq!(all_words(3, 2).len(), 13);
    }
}
