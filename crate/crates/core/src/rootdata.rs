//! Root data, the finite Weyl group acting on the cocharacter lattice, and
//! the dominance order.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Deref, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// A vector in the cocharacter lattice `X_*`, in lattice coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Coweight(SmallVec<[i64; 4]>);

impl Coweight {
    pub fn new(coords: &[i64]) -> Self {
        Self(SmallVec::from_slice(coords))
    }

    pub fn zero(dim: usize) -> Self {
        Self(SmallVec::from_elem(0, dim))
    }

    /// The `k`-th standard basis vector, 1-based as in `e_k`.
    pub fn basis(dim: usize, k: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[k - 1] = 1;
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn scaled(&self, c: i64) -> Self {
        Self(self.0.iter().map(|x| x * c).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

impl Deref for Coweight {
    type Target = [i64];
    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for Coweight {
    fn from(v: Vec<i64>) -> Self {
        Self(SmallVec::from_vec(v))
    }
}

impl Add for &Coweight {
    type Output = Coweight;
    fn add(self, rhs: &Coweight) -> Coweight {
        Coweight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Coweight {
    type Output = Coweight;
    fn sub(self, rhs: &Coweight) -> Coweight {
        Coweight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Coweight {
    type Output = Coweight;
    fn neg(self) -> Coweight {
        Coweight(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Debug for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// An element of the finite Weyl group, stored as its integer action matrix
/// on `X_*` (row-major). Reduced words are recovered on demand from the
/// root system, see [`RootSystem::weyl_word`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElt {
    dim: usize,
    mat: SmallVec<[i64; 16]>,
}

impl WeylElt {
    pub fn identity(dim: usize) -> Self {
        let mut mat = SmallVec::from_elem(0, dim * dim);
        for i in 0..dim {
            mat[i * dim + i] = 1;
        }
        Self { dim, mat }
    }

    pub fn from_matrix(dim: usize, mat: &[i64]) -> Self {
        assert_eq!(mat.len(), dim * dim);
        Self { dim, mat: SmallVec::from_slice(mat) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_identity(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.mat[i * self.dim + j] == (i == j) as i64))
    }

    pub fn matrix(&self) -> &[i64] {
        &self.mat
    }

    pub fn act(&self, x: &[i64]) -> Coweight {
        let n = self.dim;
        Coweight((0..n).map(|i| (0..n).map(|j| self.mat[i * n + j] * x[j]).sum()).collect())
    }

    /// Matrix product `self * other` (apply `other` first).
    pub fn compose(&self, other: &WeylElt) -> WeylElt {
        let n = self.dim;
        let mut mat = SmallVec::from_elem(0, n * n);
        for i in 0..n {
            for k in 0..n {
                let a = self.mat[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    mat[i * n + j] += a * other.mat[k * n + j];
                }
            }
        }
        WeylElt { dim: n, mat }
    }

    /// Inverse. Weyl group elements have integer inverses; computed as the
    /// adjugate over the determinant (which is +-1).
    pub fn inverse(&self) -> WeylElt {
        let n = self.dim;
        let m: Vec<Vec<Ratio<i64>>> =
            (0..n).map(|i| (0..n).map(|j| Ratio::from_integer(self.mat[i * n + j])).collect()).collect();
        let inv = rational_inverse(&m).expect("Weyl group elements are invertible");
        let mut mat = SmallVec::from_elem(0, n * n);
        for i in 0..n {
            for j in 0..n {
                debug_assert!(inv[i][j].is_integer());
                mat[i * n + j] = inv[i][j].to_integer();
            }
        }
        WeylElt { dim: n, mat }
    }

    /// Row-vector action on `X^*`: returns `w^{-1}(alpha)` for a character
    /// `alpha`, using `<w^{-1} alpha, x> = <alpha, w x>`.
    pub fn inverse_act_on_root(&self, alpha: &[i64]) -> Vec<i64> {
        let n = self.dim;
        (0..n).map(|j| (0..n).map(|i| alpha[i] * self.mat[i * n + j]).sum()).collect()
    }
}

impl fmt::Debug for WeylElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W{:?}", self.mat.as_slice())
    }
}

/// A root together with its coroot and its expansion in the simple roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub vector: Vec<i64>,
    pub coroot: Vec<i64>,
    pub coeffs: Vec<i64>,
}

impl Root {
    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }
}

/// Lattice choice for the abstract presets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lattice {
    /// `X_*` is the coroot lattice.
    SimplyConnected,
    /// `X_*` is the coweight lattice.
    Adjoint,
}

/// Serializable description of a root datum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDatumJson {
    #[serde(default)]
    pub label: Option<String>,
    pub cartan: Vec<Vec<i64>>,
    pub simple_roots: Vec<Vec<i64>>,
    pub simple_coroots: Vec<Vec<i64>>,
    #[serde(default)]
    pub gl: Option<usize>,
}

/// A root datum `(X^*, X_*, R, R^vee, Pi)` with `X^* = X_* = Z^rank` in dual
/// coordinates.
#[derive(Clone, Debug)]
pub struct RootSystem {
    label: String,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    simple_roots: Vec<Vec<i64>>,
    simple_coroots: Vec<Vec<i64>>,
    roots: Vec<Root>,
    positive: Vec<usize>,
    by_vector: HashMap<Vec<i64>, usize>,
    minimal: Vec<usize>,
    two_rho: Vec<i64>,
    cartan_inv: Vec<Vec<Ratio<i64>>>,
    fundamental: Vec<Coweight>,
    simple_reflections: Vec<WeylElt>,
    gl: Option<usize>,
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn rational_inverse(m: &[Vec<Ratio<i64>>]) -> Option<Vec<Vec<Ratio<i64>>>> {
    let n = m.len();
    let mut a: Vec<Vec<Ratio<i64>>> = m.to_vec();
    let mut inv: Vec<Vec<Ratio<i64>>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { Ratio::one() } else { Ratio::zero() }).collect()).collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col];
        for j in 0..n {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for j in 0..n {
                    let (x, y) = (a[col][j], inv[col][j]);
                    a[r][j] -= f * x;
                    inv[r][j] -= f * y;
                }
            }
        }
    }
    Some(inv)
}

/// Largest number of roots of a finite root system of the given rank.
fn max_root_count(rank: usize) -> usize {
    let classical = 2 * rank * rank;
    match rank {
        6 => classical.max(72),
        7 => classical.max(126),
        8 => classical.max(240),
        _ => classical.max(12),
    }
}

impl RootSystem {
    /// The `GL_n` root datum: `X_* = Z^n`, simple roots `e_i - e_{i+1}`.
    pub fn gl(n: usize) -> Self {
        assert!(n >= 1, "GL_n needs n >= 1");
        let e = |i: usize| -> Vec<i64> {
            let mut v = vec![0; n];
            v[i] = 1;
            v[i + 1] = -1;
            v
        };
        let simple: Vec<Vec<i64>> = (0..n - 1).map(e).collect();
        let cartan = (0..n - 1).map(|i| (0..n - 1).map(|j| dot(&simple[i], &simple[j])).collect()).collect();
        let mut rs =
            Self::build(format!("gl:{n}"), n, cartan, simple.clone(), simple).expect("GL_n data is of finite type");
        rs.gl = Some(n);
        rs.fundamental = (1..n).map(|i| Coweight((0..n).map(|j| (j < i) as i64).collect())).collect();
        rs
    }

    /// Builds a root datum from a Cartan matrix `cartan[i][j] = <alpha_i, alpha_j^vee>`
    /// and explicit simple roots / coroots in lattice coordinates.
    pub fn from_cartan(
        label: impl Into<String>,
        cartan: Vec<Vec<i64>>,
        simple_roots: Vec<Vec<i64>>,
        simple_coroots: Vec<Vec<i64>>,
    ) -> Result<Self> {
        let r = cartan.len();
        if simple_roots.len() != r || simple_coroots.len() != r {
            return Err(Error::InconsistentDatum(format!(
                "{r}x{r} Cartan matrix but {} simple roots and {} simple coroots",
                simple_roots.len(),
                simple_coroots.len()
            )));
        }
        let rank = simple_roots.first().map_or(0, Vec::len);
        for v in simple_roots.iter().chain(&simple_coroots) {
            if v.len() != rank {
                return Err(Error::DimensionMismatch { expected: rank, got: v.len() });
            }
        }
        for i in 0..r {
            if cartan[i].len() != r {
                return Err(Error::InconsistentDatum("Cartan matrix is not square".into()));
            }
            if cartan[i][i] != 2 {
                return Err(Error::InconsistentDatum(format!("diagonal entry {i} is not 2")));
            }
            for j in 0..r {
                let p = dot(&simple_roots[i], &simple_coroots[j]);
                if p != cartan[i][j] {
                    return Err(Error::InconsistentDatum(format!(
                        "<alpha_{}, alpha_{}^vee> = {p} but cartan entry is {}",
                        i + 1,
                        j + 1,
                        cartan[i][j]
                    )));
                }
            }
        }
        Self::build(label.into(), rank, cartan, simple_roots, simple_coroots)
    }

    /// Presets of types A, B, C, D with either lattice choice.
    pub fn preset(kind: char, r: usize, lattice: Lattice) -> Result<Self> {
        let kac = kac_cartan(kind, r)?;
        // <alpha_i, alpha_j^vee> is the transpose of the Kac convention
        let cartan: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| kac[j][i]).collect()).collect();
        let id: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| (i == j) as i64).collect()).collect();
        let (roots, coroots) = match lattice {
            Lattice::SimplyConnected => (cartan.clone(), id),
            Lattice::Adjoint => {
                let cols = (0..r).map(|j| (0..r).map(|i| cartan[i][j]).collect()).collect();
                (id, cols)
            }
        };
        let tag = match lattice {
            Lattice::SimplyConnected => "sc",
            Lattice::Adjoint => "ad",
        };
        Self::from_cartan(format!("{kind}{r}:{tag}"), cartan, roots, coroots)
    }

    /// Parses `gl:3`, `A2:sc`, `B2:ad`, ...
    pub fn from_spec(spec: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown root system {spec:?}"));
        if let Some(n) = spec.strip_prefix("gl:") {
            let n: usize = n.parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(bad());
            }
            return Ok(Self::gl(n));
        }
        let (head, tag) = spec.split_once(':').unwrap_or((spec, "sc"));
        let lattice = match tag {
            "sc" => Lattice::SimplyConnected,
            "ad" => Lattice::Adjoint,
            _ => return Err(bad()),
        };
        let mut chars = head.chars();
        let kind = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
        let r: usize = chars.as_str().parse().map_err(|_| bad())?;
        Self::preset(kind, r, lattice)
    }

    pub fn from_json(json: &RootDatumJson) -> Result<Self> {
        if let Some(n) = json.gl {
            return Ok(Self::gl(n));
        }
        let label = json.label.clone().unwrap_or_else(|| "cartan".into());
        Self::from_cartan(label, json.cartan.clone(), json.simple_roots.clone(), json.simple_coroots.clone())
    }

    pub fn to_json(&self) -> RootDatumJson {
        RootDatumJson {
            label: Some(self.label.clone()),
            cartan: self.cartan.clone(),
            simple_roots: self.simple_roots.clone(),
            simple_coroots: self.simple_coroots.clone(),
            gl: self.gl,
        }
    }

    fn build(
        label: String,
        rank: usize,
        cartan: Vec<Vec<i64>>,
        simple_roots: Vec<Vec<i64>>,
        simple_coroots: Vec<Vec<i64>>,
    ) -> Result<Self> {
        let r = simple_roots.len();
        let bound = 10 * max_root_count(r);
        let mut roots: Vec<Root> = Vec::new();
        let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
        let mut queue = VecDeque::new();
        for i in 0..r {
            let mut coeffs = vec![0; r];
            coeffs[i] = 1;
            queue.push_back(Root { vector: simple_roots[i].clone(), coroot: simple_coroots[i].clone(), coeffs });
        }
        while let Some(root) = queue.pop_front() {
            if seen.contains_key(&root.coeffs) {
                continue;
            }
            if roots.len() >= bound {
                return Err(Error::InfiniteType { bound });
            }
            for j in 0..r {
                let c = dot(&root.vector, &simple_coroots[j]);
                let d = dot(&simple_roots[j], &root.coroot);
                let mut next = root.clone();
                for k in 0..rank {
                    next.vector[k] -= c * simple_roots[j][k];
                    next.coroot[k] -= d * simple_coroots[j][k];
                }
                next.coeffs[j] -= c;
                if !seen.contains_key(&next.coeffs) {
                    queue.push_back(next);
                }
            }
            seen.insert(root.coeffs.clone(), roots.len());
            roots.push(root);
        }
        // positive roots first, ordered by height, for readable output
        roots.sort_by_key(|a| {
            let h: i64 = a.coeffs.iter().sum();
            (h < 0, h.abs(), a.coeffs.iter().map(|c| -c.abs()).collect::<Vec<_>>())
        });
        for root in &roots {
            if !(root.coeffs.iter().all(|&c| c >= 0) || root.coeffs.iter().all(|&c| c <= 0)) {
                return Err(Error::InfiniteType { bound });
            }
        }
        let mut by_vector = HashMap::new();
        for (i, root) in roots.iter().enumerate() {
            by_vector.insert(root.vector.clone(), i);
        }
        if by_vector.len() != roots.len() {
            return Err(Error::InconsistentDatum("simple roots are linearly dependent".into()));
        }
        let positive: Vec<usize> = (0..roots.len()).filter(|&i| roots[i].is_positive()).collect();
        let mut two_rho = vec![0; rank];
        for &i in &positive {
            for k in 0..rank {
                two_rho[k] += roots[i].coroot[k];
            }
        }
        // minimal roots: nothing in R lies strictly below them
        let minimal = (0..roots.len())
            .filter(|&i| {
                !roots
                    .iter()
                    .enumerate()
                    .any(|(j, other)| j != i && roots[i].coeffs.iter().zip(&other.coeffs).all(|(a, b)| b <= a))
            })
            .collect();
        let cartan_q: Vec<Vec<Ratio<i64>>> =
            cartan.iter().map(|row| row.iter().map(|&x| Ratio::from_integer(x)).collect()).collect();
        let cartan_inv = if r == 0 {
            Vec::new()
        } else {
            rational_inverse(&cartan_q).ok_or_else(|| Error::InconsistentDatum("singular Cartan matrix".into()))?
        };
        let simple_reflections = (0..r)
            .map(|i| {
                let mut w = WeylElt::identity(rank);
                for a in 0..rank {
                    for b in 0..rank {
                        w.mat[a * rank + b] -= simple_coroots[i][a] * simple_roots[i][b];
                    }
                }
                w
            })
            .collect();
        let mut rs = Self {
            label,
            rank,
            cartan,
            simple_roots,
            simple_coroots,
            roots,
            positive,
            by_vector,
            minimal,
            two_rho,
            cartan_inv,
            fundamental: Vec::new(),
            simple_reflections,
            gl: None,
        };
        rs.fundamental = (0..r).map(|i| rs.scaled_fundamental_coweight(i)).collect();
        Ok(rs)
    }

    /// Smallest positive multiple of the i-th fundamental coweight (taken in
    /// the coroot span) with integral lattice coordinates.
    fn scaled_fundamental_coweight(&self, i: usize) -> Coweight {
        let r = self.simple_roots.len();
        let mut coords = vec![Ratio::<i64>::zero(); self.rank];
        for k in 0..r {
            for a in 0..self.rank {
                coords[a] += self.cartan_inv[k][i] * self.simple_coroots[k][a];
            }
        }
        let den = coords.iter().fold(1i64, |acc, c| acc.lcm(c.denom()));
        Coweight(coords.iter().map(|c| (c * den).to_integer()).collect())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Dimension of `X_*`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of simple roots.
    pub fn semisimple_rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn gl_label(&self) -> Option<usize> {
        self.gl
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn simple_roots(&self) -> &[Vec<i64>] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Vec<i64>] {
        &self.simple_coroots
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &Root> + '_ {
        self.positive.iter().map(move |&i| &self.roots[i])
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive.len()
    }

    /// `Pi_m`: the roots minimal for the dominance order on `X^*`.
    pub fn minimal_roots(&self) -> impl Iterator<Item = &Root> + '_ {
        self.minimal.iter().map(move |&i| &self.roots[i])
    }

    pub fn root_by_vector(&self, v: &[i64]) -> Option<&Root> {
        self.by_vector.get(v).map(|&i| &self.roots[i])
    }

    /// `2 rho^vee`, the sum of the positive coroots.
    pub fn two_rho_check(&self) -> Coweight {
        Coweight::new(&self.two_rho)
    }

    /// Vectors `f_i` with `<alpha_j, f_i> = d_i delta_ij`, `d_i >= 1`.
    pub fn fundamental_directions(&self) -> &[Coweight] {
        &self.fundamental
    }

    pub fn simple_reflection(&self, i: usize) -> &WeylElt {
        &self.simple_reflections[i]
    }

    pub fn coweight(&self, coords: &[i64]) -> Result<Coweight> {
        if coords.len() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, got: coords.len() });
        }
        Ok(Coweight::new(coords))
    }

    /// The canonical pairing `<root, cw>`.
    pub fn pairing(&self, root: &[i64], cw: &[i64]) -> i64 {
        dot(root, cw)
    }

    /// Positivity of a root given by its `X^*` vector, via `<beta, 2 rho^vee> > 0`.
    pub fn is_positive_vector(&self, beta: &[i64]) -> bool {
        dot(beta, &self.two_rho) > 0
    }

    /// `s_i(x) = x - <alpha_i, x> alpha_i^vee`.
    pub fn reflect(&self, i: usize, x: &Coweight) -> Coweight {
        let c = dot(&self.simple_roots[i], x);
        Coweight(x.iter().zip(&self.simple_coroots[i]).map(|(a, b)| a - c * b).collect())
    }

    pub fn is_dominant(&self, x: &Coweight) -> bool {
        self.simple_roots.iter().all(|a| dot(a, x) >= 0)
    }

    pub fn is_antidominant(&self, x: &Coweight) -> bool {
        self.simple_roots.iter().all(|a| dot(a, x) <= 0)
    }

    pub fn is_minuscule(&self, x: &Coweight) -> bool {
        self.positive_roots().all(|a| dot(&a.vector, x).abs() <= 1)
    }

    /// Coefficients of `x` in the simple coroots, if `x` lies in their span.
    fn coroot_coordinates(&self, x: &Coweight) -> Option<Vec<Ratio<i64>>> {
        let r = self.simple_roots.len();
        let p: Vec<i64> = self.simple_roots.iter().map(|a| dot(a, x)).collect();
        let c: Vec<Ratio<i64>> = (0..r).map(|i| (0..r).map(|j| self.cartan_inv[i][j] * p[j]).sum()).collect();
        let back: Vec<Ratio<i64>> =
            (0..self.rank).map(|a| (0..r).map(|i| c[i] * self.simple_coroots[i][a]).sum()).collect();
        if back.iter().zip(x.iter()).all(|(b, &v)| *b == Ratio::from_integer(v)) {
            Some(c)
        } else {
            None
        }
    }

    /// `lambda <= mu` in the dominance order, via coroot coordinates.
    pub fn dominance_leq_coroots(&self, lambda: &Coweight, mu: &Coweight) -> bool {
        let d = mu - lambda;
        match self.coroot_coordinates(&d) {
            Some(c) => c.iter().all(|x| x.is_integer() && !x.is_negative()),
            None => false,
        }
    }

    /// The `GL_n` partial-sum criterion.
    pub fn dominance_leq_partial_sums(lambda: &[i64], mu: &[i64]) -> bool {
        let (mut sl, mut sm) = (0, 0);
        for (i, (a, b)) in lambda.iter().zip(mu).enumerate() {
            sl += a;
            sm += b;
            if i + 1 < lambda.len() && sl > sm {
                return false;
            }
        }
        sl == sm
    }

    pub fn dominance_leq(&self, lambda: &Coweight, mu: &Coweight) -> bool {
        if self.gl.is_some() {
            Self::dominance_leq_partial_sums(lambda, mu)
        } else {
            self.dominance_leq_coroots(lambda, mu)
        }
    }

    /// Breadth-first closure under simple reflections.
    pub fn weyl_orbit(&self, x: &Coweight) -> Vec<Coweight> {
        let mut seen: HashSet<Coweight> = HashSet::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::from([x.clone()]);
        seen.insert(x.clone());
        while let Some(y) = queue.pop_front() {
            for i in 0..self.simple_roots.len() {
                let z = self.reflect(i, &y);
                if seen.insert(z.clone()) {
                    queue.push_back(z);
                }
            }
            out.push(y);
        }
        out.sort();
        out
    }

    /// Simple reflections taking `x` to the dominant chamber, in application
    /// order; the product is the minimal-length `w` with `w(x)` dominant.
    pub fn descent_to_dominant(&self, x: &Coweight) -> (Coweight, Vec<usize>) {
        self.descend(x, |p| p < 0)
    }

    pub fn descent_to_antidominant(&self, x: &Coweight) -> (Coweight, Vec<usize>) {
        self.descend(x, |p| p > 0)
    }

    fn descend(&self, x: &Coweight, wrong_side: impl Fn(i64) -> bool) -> (Coweight, Vec<usize>) {
        let mut y = x.clone();
        let mut steps = Vec::new();
        while let Some(i) = (0..self.simple_roots.len()).find(|&i| wrong_side(dot(&self.simple_roots[i], &y))) {
            y = self.reflect(i, &y);
            steps.push(i);
        }
        (y, steps)
    }

    /// `(lambda_d, w)` with `w(lambda) = lambda_d` dominant and `w` of minimal length.
    pub fn dominant_representative(&self, x: &Coweight) -> (Coweight, WeylElt) {
        let (y, steps) = self.descent_to_dominant(x);
        let w = steps.iter().fold(WeylElt::identity(self.rank), |w, &i| self.simple_reflections[i].compose(&w));
        (y, w)
    }

    pub fn antidominant_representative(&self, x: &Coweight) -> (Coweight, WeylElt) {
        let (y, steps) = self.descent_to_antidominant(x);
        let w = steps.iter().fold(WeylElt::identity(self.rank), |w, &i| self.simple_reflections[i].compose(&w));
        (y, w)
    }

    /// `s_{i_1} ... s_{i_k}` for a word of 0-based simple indices.
    pub fn weyl_from_word(&self, word: &[usize]) -> WeylElt {
        word.iter().fold(WeylElt::identity(self.rank), |w, &i| w.compose(&self.simple_reflections[i]))
    }

    /// Whether `l(s_i w) < l(w)`, i.e. `w^{-1}(alpha_i) < 0`.
    pub fn is_left_descent(&self, w: &WeylElt, i: usize) -> bool {
        let y = w.act(&self.two_rho);
        dot(&self.simple_roots[i], &y) < 0
    }

    /// Reduced word (0-based simple indices) by greedy left descent, lowest index first.
    pub fn weyl_word(&self, w: &WeylElt) -> Vec<usize> {
        let mut cur = w.clone();
        let mut word = Vec::new();
        while let Some(i) = (0..self.simple_roots.len()).find(|&i| self.is_left_descent(&cur, i)) {
            cur = self.simple_reflections[i].compose(&cur);
            word.push(i);
        }
        debug_assert!(cur.is_identity());
        word
    }

    pub fn weyl_length(&self, w: &WeylElt) -> usize {
        let y = w.act(&self.two_rho);
        self.positive_roots().filter(|a| dot(&a.vector, &y) < 0).count()
    }

    /// All of `W_0`, by closure. Only for small groups.
    pub fn weyl_group(&self) -> Vec<WeylElt> {
        let id = WeylElt::identity(self.rank);
        let mut seen: HashSet<WeylElt> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        let mut out = Vec::new();
        while let Some(w) = queue.pop_front() {
            for s in &self.simple_reflections {
                let u = w.compose(s);
                if seen.insert(u.clone()) {
                    queue.push_back(u);
                }
            }
            out.push(w);
        }
        out
    }
}

/// Cartan matrices in the Kac convention `a_ij = <alpha_i^vee, alpha_j>`.
fn kac_cartan(kind: char, r: usize) -> Result<Vec<Vec<i64>>> {
    let bad = || Error::Parse(format!("unsupported preset {kind}{r}"));
    let mut a: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| if i == j { 2 } else { 0 }).collect()).collect();
    let mut link = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match kind {
        'A' if r >= 1 => {
            for i in 1..r {
                link(i - 1, i);
            }
        }
        'B' | 'C' if r >= 2 => {
            for i in 1..r {
                link(i - 1, i);
            }
            // alpha_r short for B, long for C
            if kind == 'B' {
                a[r - 1][r - 2] = -2;
            } else {
                a[r - 2][r - 1] = -2;
            }
        }
        'D' if r >= 4 => {
            for i in 1..r - 1 {
                link(i - 1, i);
            }
            link(r - 3, r - 1);
        }
        _ => return Err(bad()),
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cw(v: &[i64]) -> Coweight {
        Coweight::new(v)
    }

    #[test]
    fn gl_examples() {
        let g2 = RootSystem::gl(2);
        assert_eq!(g2.simple_roots(), &[vec![1, -1]]);
        assert_eq!(g2.positive_roots().map(|r| r.vector.clone()).collect::<Vec<_>>(), vec![vec![1, -1]]);
        assert_eq!(RootSystem::gl(3).num_positive_roots(), 3);
        let g1 = RootSystem::gl(1);
        assert_eq!(g1.roots().len(), 0);
        assert_eq!(g1.weyl_group().len(), 1);
    }

    #[test]
    fn cartan_examples() {
        let a1 = RootSystem::preset('A', 1, Lattice::Adjoint).unwrap();
        assert_eq!(a1.roots().len(), 2);
        let mins: Vec<_> = a1.minimal_roots().map(|r| r.coeffs.clone()).collect();
        assert_eq!(mins, vec![vec![-1]]);
        let b2 = RootSystem::preset('B', 2, Lattice::SimplyConnected).unwrap();
        assert_eq!(b2.roots().len(), 8);
        let a2 = RootSystem::from_cartan(
            "A2",
            vec![vec![2, -1], vec![-1, 2]],
            vec![vec![2, -1], vec![-1, 2]],
            vec![vec![1, 0], vec![0, 1]],
        )
        .unwrap();
        assert_eq!(a2.num_positive_roots(), 3);
        assert_eq!(RootSystem::preset('D', 4, Lattice::Adjoint).unwrap().roots().len(), 24);
        assert_eq!(RootSystem::preset('B', 3, Lattice::Adjoint).unwrap().roots().len(), 18);
        assert_eq!(RootSystem::preset('C', 3, Lattice::SimplyConnected).unwrap().roots().len(), 18);
    }

    /// Closing the simple roots under reflections, independently of `build`.
    #[test]
    fn b2_root_count_brute_force() {
        let b2 = RootSystem::preset('B', 2, Lattice::SimplyConnected).unwrap();
        let mut set: HashSet<Vec<i64>> = b2.simple_roots().iter().cloned().collect();
        loop {
            let mut grown = set.clone();
            for v in &set {
                for w in b2.weyl_group() {
                    grown.insert(w.inverse().inverse_act_on_root(v));
                }
            }
            if grown.len() == set.len() {
                break;
            }
            set = grown;
        }
        assert_eq!(set.len(), 8);
    }

    #[test]
    fn affine_cartan_is_rejected() {
        // affine A_1
        let err = RootSystem::from_cartan(
            "A1~",
            vec![vec![2, -2], vec![-2, 2]],
            vec![vec![2, -2], vec![-2, 2]],
            vec![vec![1, 0], vec![0, 1]],
        );
        assert!(matches!(err, Err(Error::InfiniteType { .. }) | Err(Error::InconsistentDatum(_))));
        let inconsistent = RootSystem::from_cartan("bad", vec![vec![2]], vec![vec![1]], vec![vec![1]]);
        assert!(matches!(inconsistent, Err(Error::InconsistentDatum(_))));
    }

    #[test]
    fn pairing_examples() {
        let g3 = RootSystem::gl(3);
        assert_eq!(g3.pairing(&[1, -1, 0], &[1, 0, 0]), 1);
        assert_eq!(g3.pairing(&[1, 0, -1], &[2, 1, 0]), 2);
        assert_eq!(RootSystem::gl(2).pairing(&[1, -1], &[1, 1]), 0);
    }

    #[test]
    fn dominance_examples() {
        let g3 = RootSystem::gl(3);
        assert!(g3.dominance_leq(&cw(&[1, 1, 0]), &cw(&[2, 0, 0])));
        assert!(g3.dominance_leq(&cw(&[0, 0, 2]), &cw(&[2, 0, 0])));
        assert!(!RootSystem::gl(2).dominance_leq(&cw(&[1, 0]), &cw(&[0, 1])));
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
    fn dominance_is_partial_order_and_criteria_agree() {
        let g3 = RootSystem::gl(3);
        let pts = box3(-2, 2);
        for a in &pts {
            assert!(g3.dominance_leq(a, a));
            for b in &pts {
                let ab = g3.dominance_leq(a, b);
                assert_eq!(ab, g3.dominance_leq_coroots(a, b), "{a} {b}");
                if ab && g3.dominance_leq(b, a) {
                    assert_eq!(a, b);
                }
            }
        }
        for a in &pts {
            for b in &pts {
                if !g3.dominance_leq(a, b) {
                    continue;
                }
                for c in &pts {
                    if g3.dominance_leq(b, c) {
                        assert!(g3.dominance_leq(a, c));
                    }
                }
            }
        }
    }

    #[test]
    fn minuscule_examples_and_invariance() {
        assert!(RootSystem::gl(4).is_minuscule(&cw(&[1, 1, 0, 0])));
        assert!(!RootSystem::gl(3).is_minuscule(&cw(&[2, 0, 0])));
        assert!(RootSystem::gl(2).is_minuscule(&cw(&[1, 1])));
        let g3 = RootSystem::gl(3);
        for x in box3(-2, 2) {
            let m = g3.is_minuscule(&x);
            assert!(g3.weyl_orbit(&x).iter().all(|y| g3.is_minuscule(y) == m));
        }
    }

    #[test]
    fn orbit_examples() {
        let g3 = RootSystem::gl(3);
        assert_eq!(g3.weyl_orbit(&cw(&[1, 0, 0])), vec![cw(&[0, 0, 1]), cw(&[0, 1, 0]), cw(&[1, 0, 0])]);
        assert_eq!(RootSystem::gl(2).weyl_orbit(&cw(&[1, 1])), vec![cw(&[1, 1])]);
        assert_eq!(g3.weyl_orbit(&cw(&[2, 1, 0])).len(), 6);
    }

    #[test]
    fn dominant_examples() {
        let g3 = RootSystem::gl(3);
        assert!(g3.is_dominant(&cw(&[2, 1, 0])));
        assert!(g3.is_antidominant(&cw(&[0, 1, 2])));
        let g2 = RootSystem::gl(2);
        let (d, w) = g2.dominant_representative(&cw(&[0, 1]));
        assert_eq!(d, cw(&[1, 0]));
        assert_eq!(&w, g2.simple_reflection(0));
        assert_eq!(g2.weyl_word(&w), vec![0]);
    }

    #[test]
    fn dominant_representative_is_minimal() {
        let g3 = RootSystem::gl(3);
        let group = g3.weyl_group();
        for x in box3(-1, 2) {
            let (d, w) = g3.dominant_representative(&x);
            assert_eq!(w.act(&x), d);
            let best = group.iter().filter(|u| u.act(&x) == d).map(|u| g3.weyl_length(u)).min().unwrap();
            assert_eq!(g3.weyl_length(&w), best);
        }
    }

    #[test]
    fn weyl_words_reproduce_action() {
        for rs in [RootSystem::gl(4), RootSystem::preset('B', 3, Lattice::SimplyConnected).unwrap()] {
            for w in rs.weyl_group() {
                let word = rs.weyl_word(&w);
                assert_eq!(word.len(), rs.weyl_length(&w));
                assert_eq!(rs.weyl_from_word(&word), w);
                assert_eq!(w.compose(&w.inverse()), WeylElt::identity(rs.rank()));
                // permutes the roots
                for root in rs.roots() {
                    assert!(rs.root_by_vector(&w.inverse_act_on_root(&root.vector)).is_some());
                }
            }
            assert!(rs.weyl_word(&WeylElt::identity(rs.rank())).is_empty());
        }
        assert_eq!(RootSystem::gl(4).weyl_group().len(), 24);
        assert_eq!(RootSystem::preset('B', 3, Lattice::Adjoint).unwrap().weyl_group().len(), 48);
    }

    #[test]
    fn every_root_is_conjugate_to_a_simple_root() {
        for spec in ["A2:sc", "B2:sc", "C3:ad", "D4:sc"] {
            let rs = RootSystem::from_spec(spec).unwrap();
            let mut reached: HashSet<Vec<i64>> = HashSet::new();
            for w in rs.weyl_group() {
                for a in rs.simple_roots() {
                    reached.insert(w.inverse_act_on_root(a));
                }
            }
            assert_eq!(reached.len(), rs.roots().len(), "{spec}");
        }
    }

    /// `Pi_m` is minus the highest root for irreducible presets.
    #[test]
    fn minimal_roots_are_negative_highest_roots() {
        for spec in ["A1:sc", "A2:sc", "B2:sc", "B2:ad", "C2:sc"] {
            let rs = RootSystem::from_spec(spec).unwrap();
            let highest = rs.positive_roots().max_by_key(|r| r.coeffs.iter().sum::<i64>()).unwrap();
            let mins: Vec<_> = rs.minimal_roots().collect();
            assert_eq!(mins.len(), 1, "{spec}");
            let neg: Vec<i64> = highest.vector.iter().map(|x| -x).collect();
            assert_eq!(mins[0].vector, neg, "{spec}");
        }
        let g3 = RootSystem::gl(3);
        let mins: Vec<_> = g3.minimal_roots().map(|r| r.vector.clone()).collect();
        assert_eq!(mins, vec![vec![-1, 0, 1]]);
    }

    #[test]
    fn fundamental_directions_pair_diagonally() {
        for spec in ["gl:4", "A3:sc", "A3:ad", "B2:sc", "C3:ad", "D4:sc"] {
            let rs = RootSystem::from_spec(spec).unwrap();
            for (i, f) in rs.fundamental_directions().iter().enumerate() {
                for (j, a) in rs.simple_roots().iter().enumerate() {
                    let p = rs.pairing(a, f);
                    if i == j {
                        assert!(p >= 1, "{spec}");
                    } else {
                        assert_eq!(p, 0, "{spec}");
                    }
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let rs = RootSystem::from_spec("B2:ad").unwrap();
        let js = serde_json::to_string(&rs.to_json()).unwrap();
        let back: RootDatumJson = serde_json::from_str(&js).unwrap();
        let rs2 = RootSystem::from_json(&back).unwrap();
        assert_eq!(rs2.roots(), rs.roots());
    }
}
