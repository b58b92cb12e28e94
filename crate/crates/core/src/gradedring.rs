//! Degree-truncated graded power series and the Chow ring of a projective
//! bundle.
//!
//! [`GradedSeries`] is an element of `Q[[t_1, ..., t_r]]` with every degree
//! above the truncation discarded. [`BundleRingElement`] is an element of
//! `S[h] / ∏_i (h + w_i·t)` where `S` is the truncated series ring; the
//! relation is monic of degree `n + 1` so every element is a polynomial of
//! degree at most `n` in `h`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::bernoulli;
use crate::error::{Error, Result};

/// Truncation used when none is configured.
pub const DEFAULT_TRUNCATION: usize = 16;

/// Exponent vector of a monomial `t_1^{a_1} ... t_r^{a_r}`.
pub type Exponents = Vec<u32>;

/// Homogeneous component: monomial exponents to nonzero coefficients.
pub type Component = BTreeMap<Exponents, BigRational>;

/// A power series in `rank` variables, exact up to total degree `truncation`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedSeries {
    rank: usize,
    truncation: usize,
    components: Vec<Component>,
}

impl GradedSeries {
    pub fn zero(rank: usize, truncation: usize) -> Self {
        GradedSeries {
            rank,
            truncation,
            components: vec![Component::new(); truncation + 1],
        }
    }

    pub fn constant(rank: usize, truncation: usize, c: BigRational) -> Self {
        let mut s = Self::zero(rank, truncation);
        s.add_term(vec![0; rank], c);
        s
    }

    pub fn one(rank: usize, truncation: usize) -> Self {
        Self::constant(rank, truncation, BigRational::one())
    }

    pub fn from_int(rank: usize, truncation: usize, c: i64) -> Self {
        Self::constant(rank, truncation, BigRational::from_integer(c.into()))
    }

    /// `t_i` (zero-based index).
    pub fn variable(rank: usize, truncation: usize, i: usize) -> Self {
        assert!(i < rank, "variable index {i} out of range for rank {rank}");
        let mut e = vec![0; rank];
        e[i] = 1;
        Self::monomial(rank, truncation, e, BigRational::one())
    }

    pub fn monomial(rank: usize, truncation: usize, exponents: Exponents, c: BigRational) -> Self {
        assert_eq!(exponents.len(), rank);
        let mut s = Self::zero(rank, truncation);
        s.add_term(exponents, c);
        s
    }

    /// The linear form `Σ coeffs[i]·t_i`.
    pub fn linear_form(truncation: usize, coeffs: &[i64]) -> Self {
        let rank = coeffs.len();
        let mut s = Self::zero(rank, truncation);
        for (i, &c) in coeffs.iter().enumerate() {
            let mut e = vec![0; rank];
            e[i] = 1;
            s.add_term(e, BigRational::from_integer(c.into()));
        }
        s
    }

    /// `exp(Σ w_i t_i)`.
    pub fn exp_linear(truncation: usize, weight: &[i64]) -> Self {
        Self::linear_form(truncation, weight)
            .compose(&bernoulli::exp_coefficients(truncation))
            .expect("linear forms have no constant term")
    }

    /// Adds `c · t^exponents`, dropping it when its degree exceeds the truncation.
    pub fn add_term(&mut self, exponents: Exponents, c: BigRational) {
        assert_eq!(exponents.len(), self.rank, "exponent vector has wrong rank");
        let d = exponents.iter().map(|&e| e as usize).sum::<usize>();
        if d > self.truncation || c.is_zero() {
            return;
        }
        accumulate(&mut self.components[d], exponents, c);
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// Homogeneous component of degree `d` (empty above the truncation).
    pub fn component(&self, d: usize) -> &Component {
        static EMPTY: Component = Component::new();
        self.components.get(d).unwrap_or(&EMPTY)
    }

    pub fn coefficient(&self, exponents: &[u32]) -> BigRational {
        let d = exponents.iter().map(|&e| e as usize).sum::<usize>();
        self.component(d)
            .get(exponents)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// The degree-0 coefficient.
    pub fn constant_term(&self) -> BigRational {
        self.coefficient(&vec![0; self.rank])
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Component::is_empty)
    }

    /// Lowest degree with a nonzero component.
    pub fn lowest_degree(&self) -> Option<usize> {
        self.components.iter().position(|c| !c.is_empty())
    }

    /// `(degree, exponents, coefficient)` in degree-then-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Exponents, &BigRational)> {
        self.components
            .iter()
            .enumerate()
            .flat_map(|(d, c)| c.iter().rev().map(move |(e, v)| (d, e, v)))
    }

    /// Keeps only degrees `≤ truncation`, which must not exceed the current one.
    pub fn truncate(&self, truncation: usize) -> Self {
        assert!(truncation <= self.truncation);
        GradedSeries {
            rank: self.rank,
            truncation,
            components: self.components[..=truncation].to_vec(),
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank, other.rank));
        }
        if self.truncation != other.truncation {
            return Err(Error::TruncationMismatch(self.truncation, other.truncation));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (d, comp) in other.components.iter().enumerate() {
            for (e, c) in comp {
                accumulate(&mut out.components[d], e.clone(), c.clone());
            }
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.rank, self.truncation);
        for (i, a) in self.components.iter().enumerate() {
            if a.is_empty() {
                continue;
            }
            for (j, b) in other.components.iter().enumerate() {
                if i + j > self.truncation {
                    break;
                }
                if b.is_empty() {
                    continue;
                }
                let target = &mut out.components[i + j];
                for (ea, ca) in a {
                    for (eb, cb) in b {
                        let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                        accumulate(target, e, ca * cb);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.rank, self.truncation);
        }
        let mut out = self.clone();
        for comp in &mut out.components {
            for v in comp.values_mut() {
                *v *= c;
            }
        }
        out
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inverse(&self) -> Result<Self> {
        let a0 = self.constant_term();
        if a0.is_zero() {
            return Err(Error::NotAUnit);
        }
        let inv0 = a0.recip();
        // b_0 = 1/a_0, b_d = -(1/a_0) Σ_{k=1}^{d} a_k b_{d-k}
        let mut out = Self::constant(self.rank, self.truncation, inv0.clone());
        for d in 1..=self.truncation {
            let mut acc = Component::new();
            for k in 1..=d {
                let a = &self.components[k];
                let b = &out.components[d - k];
                for (ea, ca) in a {
                    for (eb, cb) in b {
                        let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                        accumulate(&mut acc, e, ca * cb);
                    }
                }
            }
            for v in acc.values_mut() {
                *v *= -&inv0;
            }
            out.components[d] = acc;
        }
        Ok(out)
    }

    /// `Σ_k coeffs[k] · self^k`; `self` must have zero constant term.
    pub fn compose(&self, coeffs: &[BigRational]) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let used = coeffs.len().min(self.truncation + 1);
        let mut out = Self::zero(self.rank, self.truncation);
        for c in coeffs[..used].iter().rev() {
            out = &out * self;
            out.add_term(vec![0; self.rank], c.clone());
        }
        Ok(out)
    }

    /// `exp(self)` for a series without constant term.
    pub fn exp(&self) -> Result<Self> {
        self.compose(&bernoulli::exp_coefficients(self.truncation))
    }

    /// Renders `1/12 t^4`-style sums; the zero series is `0`.
    pub fn render(&self) -> String {
        let vars = variable_names(self.rank);
        render_terms(self.terms().map(|(_, e, c)| (monomial_text(e, &vars), c)))
    }
}

impl fmt::Display for GradedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn accumulate(comp: &mut Component, e: Exponents, c: BigRational) {
    if c.is_zero() {
        return;
    }
    match comp.entry(e) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

pub(crate) fn variable_names(rank: usize) -> Vec<String> {
    match rank {
        1 => vec!["t".to_string()],
        r => (1..=r).map(|i| format!("t{i}")).collect(),
    }
}

pub(crate) fn monomial_text(e: &[u32], vars: &[String]) -> String {
    let parts: Vec<String> = e
        .iter()
        .zip(vars)
        .filter(|(&a, _)| a > 0)
        .map(|(&a, v)| {
            if a == 1 {
                v.clone()
            } else {
                format!("{v}^{a}")
            }
        })
        .collect();
    parts.join(" ")
}

/// Joins `(monomial, coefficient)` pairs into `c m + c m - c m`; an empty
/// monomial string denotes the constant term.
pub(crate) fn render_terms<'a, C>(terms: impl Iterator<Item = (String, &'a C)>) -> String
where
    C: Signed + fmt::Display + 'a,
{
    let mut out = String::new();
    for (mono, c) in terms {
        let negative = c.is_negative();
        let abs = c.abs();
        let body = if mono.is_empty() {
            abs.to_string()
        } else if abs.is_one() {
            mono
        } else {
            format!("{abs} {mono}")
        };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl Neg for &GradedSeries {
    type Output = GradedSeries;
    fn neg(self) -> GradedSeries {
        self.scale(&-BigRational::one())
    }
}

impl Neg for GradedSeries {
    type Output = GradedSeries;
    fn neg(self) -> GradedSeries {
        -&self
    }
}

// Operator forms panic on rank/truncation mismatch; use the `checked_*`
// methods when the operands are not known to be compatible.
macro_rules! series_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&GradedSeries> for &GradedSeries {
            type Output = GradedSeries;
            fn $method(self, rhs: &GradedSeries) -> GradedSeries {
                self.$checked(rhs).expect("incompatible graded series")
            }
        }
        impl $trait<GradedSeries> for GradedSeries {
            type Output = GradedSeries;
            fn $method(self, rhs: GradedSeries) -> GradedSeries {
                (&self).$method(&rhs)
            }
        }
    };
}

series_binop!(Add, add, checked_add);
series_binop!(Sub, sub, checked_sub);
series_binop!(Mul, mul, checked_mul);

/// Coefficients of the Todd factor `x/(1-e^{-x})` through degree `max_degree`.
pub fn todd_series(max_degree: usize) -> Vec<BigRational> {
    bernoulli::todd_coefficients(max_degree)
}

/// `x / (1 - e^{-x})` evaluated at a series without constant term (in
/// practice a linear form), truncated; the zero series gives 1.
pub fn todd_factor(x: &GradedSeries) -> Result<GradedSeries> {
    x.compose(&todd_series(x.truncation()))
}

/// The relation `∏_i (h + w_i·t)` defining `A*_T(P(V))` over the base series ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleRelation {
    rank: usize,
    truncation: usize,
    roots: Vec<Vec<i64>>,
    /// `s_k = e_k(w_1·t, ..., w_{n+1}·t)` for `k = 1..=n+1`, so that the
    /// relation reads `h^{n+1} + s_1 h^n + ... + s_{n+1}`.
    elementary: Vec<GradedSeries>,
}

impl BundleRelation {
    /// `roots` are the torus weights `w_i`, each of length `rank`; at least one is required.
    pub fn new(rank: usize, truncation: usize, roots: Vec<Vec<i64>>) -> Result<Arc<Self>> {
        if roots.is_empty() {
            return Err(Error::InvalidModel(
                "relation needs at least one weight".into(),
            ));
        }
        if let Some(bad) = roots.iter().find(|w| w.len() != rank) {
            return Err(Error::InvalidModel(format!(
                "weight {bad:?} does not have rank {rank}"
            )));
        }
        // coefficients of ∏(h + x_i) built up one factor at a time
        let mut poly = vec![GradedSeries::one(rank, truncation)];
        for w in &roots {
            let x = GradedSeries::linear_form(truncation, w);
            let mut next = vec![GradedSeries::zero(rank, truncation); poly.len() + 1];
            for (k, c) in poly.iter().enumerate() {
                next[k] = &next[k] + &(c * &x);
                next[k + 1] = &next[k + 1] + c;
            }
            poly = next;
        }
        // poly[k] is the coefficient of h^k; s_j multiplies h^{n+1-j}
        let top = roots.len();
        let elementary = (1..=top).map(|j| poly[top - j].clone()).collect();
        Ok(Arc::new(BundleRelation {
            rank,
            truncation,
            roots,
            elementary,
        }))
    }

    /// Projective dimension `n` (the relation has degree `n + 1`).
    pub fn dimension(&self) -> usize {
        self.roots.len() - 1
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    /// `s_k` for `k = 1..=n+1`.
    pub fn elementary(&self, k: usize) -> &GradedSeries {
        &self.elementary[k - 1]
    }
}

/// A polynomial in `h` with series coefficients, not yet reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPolynomial {
    pub coeffs: Vec<GradedSeries>,
}

impl HPolynomial {
    pub fn new(coeffs: Vec<GradedSeries>) -> Self {
        HPolynomial { coeffs }
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    /// Division by the monic relation; returns the remainder.
    pub fn reduce(&self, relation: &Arc<BundleRelation>) -> Result<BundleRingElement> {
        for c in &self.coeffs {
            if c.rank() != relation.rank {
                return Err(Error::RankMismatch(c.rank(), relation.rank));
            }
            if c.truncation() != relation.truncation {
                return Err(Error::TruncationMismatch(
                    c.truncation(),
                    relation.truncation,
                ));
            }
        }
        let n = relation.dimension();
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(
            coeffs.len().max(n + 1),
            GradedSeries::zero(relation.rank, relation.truncation),
        );
        // h^k = -h^{k-n-1} Σ_j s_j h^{n+1-j}
        for k in (n + 1..coeffs.len()).rev() {
            let c = std::mem::replace(
                &mut coeffs[k],
                GradedSeries::zero(relation.rank, relation.truncation),
            );
            if c.is_zero() {
                continue;
            }
            for j in 1..=n + 1 {
                let s = relation.elementary(j);
                if s.is_zero() {
                    continue;
                }
                coeffs[k - j] = &coeffs[k - j] - &(&c * s);
            }
        }
        coeffs.truncate(n + 1);
        Ok(BundleRingElement {
            relation: Arc::clone(relation),
            coeffs,
        })
    }
}

/// An element `Σ_{k ≤ n} c_k h^k` of `S[h]/∏(h + w_i·t)`.
#[derive(Debug, Clone)]
pub struct BundleRingElement {
    relation: Arc<BundleRelation>,
    coeffs: Vec<GradedSeries>,
}

impl PartialEq for BundleRingElement {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.relation, &other.relation) || self.relation == other.relation)
            && self.coeffs == other.coeffs
    }
}

impl Eq for BundleRingElement {}

impl BundleRingElement {
    pub fn zero(relation: &Arc<BundleRelation>) -> Self {
        BundleRingElement {
            relation: Arc::clone(relation),
            coeffs: vec![
                GradedSeries::zero(relation.rank, relation.truncation);
                relation.dimension() + 1
            ],
        }
    }

    pub fn one(relation: &Arc<BundleRelation>) -> Self {
        Self::from_base(
            relation,
            GradedSeries::one(relation.rank, relation.truncation),
        )
    }

    pub fn from_base(relation: &Arc<BundleRelation>, c: GradedSeries) -> Self {
        let mut out = Self::zero(relation);
        out.coeffs[0] = c;
        out
    }

    /// `h` itself, reduced (only matters for `n = 0`).
    pub fn h(relation: &Arc<BundleRelation>) -> Self {
        let base = GradedSeries::one(relation.rank, relation.truncation);
        let zero = GradedSeries::zero(relation.rank, relation.truncation);
        HPolynomial::new(vec![zero, base])
            .reduce(relation)
            .expect("relation-compatible coefficients")
    }

    /// The degree-1 class `m·h + w·t`.
    pub fn linear(relation: &Arc<BundleRelation>, h_coeff: i64, t_coeffs: &[i64]) -> Result<Self> {
        if t_coeffs.len() != relation.rank {
            return Err(Error::RankMismatch(t_coeffs.len(), relation.rank));
        }
        let base = GradedSeries::linear_form(relation.truncation, t_coeffs);
        let h = Self::h(relation).scale(&BigRational::from_integer(h_coeff.into()));
        Ok(&h + &Self::from_base(relation, base))
    }

    /// Wraps already-reduced coefficients; more than `n + 1` of them is an error.
    pub fn from_coefficients(
        relation: &Arc<BundleRelation>,
        mut coeffs: Vec<GradedSeries>,
    ) -> Result<Self> {
        let n = relation.dimension();
        if let Some(d) = coeffs.iter().rposition(|c| !c.is_zero()) {
            if d > n {
                return Err(Error::UnreducedInput { degree: d, max: n });
            }
        }
        for c in &coeffs {
            if c.rank() != relation.rank {
                return Err(Error::RankMismatch(c.rank(), relation.rank));
            }
            if c.truncation() != relation.truncation {
                return Err(Error::TruncationMismatch(
                    c.truncation(),
                    relation.truncation,
                ));
            }
        }
        coeffs.resize(
            n + 1,
            GradedSeries::zero(relation.rank, relation.truncation),
        );
        Ok(BundleRingElement {
            relation: Arc::clone(relation),
            coeffs,
        })
    }

    pub fn relation(&self) -> &Arc<BundleRelation> {
        &self.relation
    }

    /// Coefficient of `h^k`.
    pub fn coefficient(&self, k: usize) -> &GradedSeries {
        &self.coeffs[k]
    }

    pub fn coefficients(&self) -> &[GradedSeries] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(GradedSeries::is_zero)
    }

    /// Degree-0 part (a rational number).
    pub fn constant_term(&self) -> BigRational {
        self.coeffs[0].constant_term()
    }

    /// Part of total degree `d`, with `h` in degree 1.
    pub fn total_degree_part(&self, d: usize) -> Self {
        let mut out = Self::zero(&self.relation);
        for (k, c) in self.coeffs.iter().enumerate() {
            if d < k {
                continue;
            }
            for (e, v) in c.component(d - k) {
                out.coeffs[k].add_term(e.clone(), v.clone());
            }
        }
        out
    }

    fn check_same_ring(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.relation, &other.relation) || self.relation == other.relation {
            Ok(())
        } else {
            Err(Error::RelationMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        Ok(BundleRingElement {
            relation: Arc::clone(&self.relation),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        let r = &self.relation;
        let mut prod = vec![GradedSeries::zero(r.rank, r.truncation); 2 * r.dimension() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] = &prod[i + j] + &(a * b);
            }
        }
        HPolynomial::new(prod).reduce(r)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        BundleRingElement {
            relation: Arc::clone(&self.relation),
            coeffs: self.coeffs.iter().map(|x| x.scale(c)).collect(),
        }
    }

    /// `Σ_k coeffs[k] · self^k` for an element with zero constant term.
    ///
    /// Such an element lies in total degree ≥ 1, so `self^k` has base degree
    /// at least `k - n` and vanishes in the truncated ring once
    /// `k > truncation + n`.
    pub fn compose(&self, coeffs: &[BigRational]) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let used = coeffs
            .len()
            .min(self.relation.truncation + self.relation.dimension() + 1);
        let mut out = Self::zero(&self.relation);
        for c in coeffs[..used].iter().rev() {
            out = &out * self;
            out.coeffs[0].add_term(vec![0; self.relation.rank], c.clone());
        }
        Ok(out)
    }

    /// Number of series coefficients that matter for [`compose`](Self::compose).
    pub fn series_length(&self) -> usize {
        self.relation.truncation + self.relation.dimension() + 1
    }

    pub fn exp(&self) -> Result<Self> {
        self.compose(&bernoulli::exp_coefficients(self.series_length()))
    }

    /// `x / (1 - e^{-x})`.
    pub fn todd_factor(&self) -> Result<Self> {
        self.compose(&bernoulli::todd_coefficients(self.series_length()))
    }

    /// `(1 - e^{-x}) / x`, the inverse of [`todd_factor`](Self::todd_factor).
    pub fn inverse_todd_factor(&self) -> Result<Self> {
        self.compose(&bernoulli::inverse_todd_coefficients(self.series_length()))
    }

    /// `π_*` to the base: `π_*(h^k) = 0` for `k < n` and `π_*(h^n) = 1`.
    pub fn pushforward(&self) -> GradedSeries {
        self.coeffs[self.relation.dimension()].clone()
    }

    pub fn render(&self) -> String {
        let vars = variable_names(self.relation.rank);
        let mut terms: Vec<(usize, usize, &Exponents, &BigRational)> = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            for (d, e, v) in c.terms() {
                terms.push((d + k, k, e, v));
            }
        }
        // total degree, then higher power of h first, then lex on t
        terms.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)).then(b.2.cmp(a.2)));
        render_terms(terms.into_iter().map(|(_, k, e, v)| {
            let mut mono = monomial_text(e, &vars);
            let hpart = match k {
                0 => String::new(),
                1 => "h".to_string(),
                k => format!("h^{k}"),
            };
            if !hpart.is_empty() {
                if !mono.is_empty() {
                    mono.push(' ');
                }
                mono.push_str(&hpart);
            }
            (mono, v)
        }))
    }
}

/// `π_*` of an unreduced polynomial: an error unless its `h`-degree is at most `n`.
pub fn pushforward_polynomial(
    p: &HPolynomial,
    relation: &Arc<BundleRelation>,
) -> Result<GradedSeries> {
    Ok(BundleRingElement::from_coefficients(relation, p.coeffs.clone())?.pushforward())
}

impl fmt::Display for BundleRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Neg for &BundleRingElement {
    type Output = BundleRingElement;
    fn neg(self) -> BundleRingElement {
        self.scale(&-BigRational::one())
    }
}

macro_rules! bundle_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&BundleRingElement> for &BundleRingElement {
            type Output = BundleRingElement;
            fn $method(self, rhs: &BundleRingElement) -> BundleRingElement {
                self.$checked(rhs)
                    .expect("elements of different bundle rings")
            }
        }
    };
}

bundle_binop!(Add, add, checked_add);
bundle_binop!(Sub, sub, checked_sub);
bundle_binop!(Mul, mul, checked_mul);

/// Shorthand for exact rationals in tests and callers.
pub fn rational(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}
