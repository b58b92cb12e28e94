//! Representation rings of diagonalizable groups, `R(G) = Z[N]`.
//!
//! Elements are sparse Laurent polynomials keyed by [`Weight`]. The module
//! also provides the Chern character into truncated series, the
//! augmentation-ideal order read off from it, `λ_{-1}` classes, the
//! symmetric-function subring `R(GL_n) ⊂ R(T)`, and a bounded search for
//! explicit ideal-membership certificates.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::gradedring::{render_terms, GradedSeries};
use crate::lattice::{GroupDescriptor, Weight};

/// Default half-width `D` of the cofactor weight box `[-D, D]^r` searched by
/// [`ideal_membership_certificate`].
pub const DEFAULT_CERTIFICATE_BOUND: usize = 3;

/// A finite combination `Σ c_w · [w]` of group elements with coefficients in `C`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupRingElement<C> {
    group: GroupDescriptor,
    terms: BTreeMap<Weight, C>,
}

/// An element of `R(G) = Z[N]`: a virtual representation.
pub type RepRingElement = GroupRingElement<BigInt>;

/// An element of `Q[N] = R(G)_Q`.
pub type RationalGroupRingElement = GroupRingElement<BigRational>;

impl<C> GroupRingElement<C>
where
    C: Clone + Num + Signed + fmt::Display,
{
    pub fn zero(group: &GroupDescriptor) -> Self {
        GroupRingElement {
            group: group.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(group: &GroupDescriptor) -> Self {
        Self::monomial(group, group.zero(), C::one()).expect("zero weight belongs to its group")
    }

    pub fn constant(group: &GroupDescriptor, c: C) -> Self {
        Self::monomial(group, group.zero(), c).expect("zero weight belongs to its group")
    }

    pub fn monomial(group: &GroupDescriptor, weight: Weight, c: C) -> Result<Self> {
        let mut out = Self::zero(group);
        out.add_term(weight, c)?;
        Ok(out)
    }

    /// The one-dimensional character `[w]`.
    pub fn character(group: &GroupDescriptor, weight: Weight) -> Result<Self> {
        Self::monomial(group, weight, C::one())
    }

    /// Builds an element from `(coordinates, coefficient)` pairs; repeated
    /// weights are summed.
    pub fn from_terms<I>(group: &GroupDescriptor, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i64>, C)>,
    {
        let mut out = Self::zero(group);
        for (coords, c) in terms {
            let w = group.weight(&coords)?;
            out.add_term(w, c)?;
        }
        Ok(out)
    }

    pub fn add_term(&mut self, weight: Weight, c: C) -> Result<()> {
        if !self.group.contains(&weight) {
            return Err(Error::InvalidWeight {
                coords: weight.coords().to_vec(),
                group: self.group.to_string(),
            });
        }
        add_into(&mut self.terms, weight, c);
        Ok(())
    }

    pub fn group(&self) -> &GroupDescriptor {
        &self.group
    }

    pub fn terms(&self) -> &BTreeMap<Weight, C> {
        &self.terms
    }

    pub fn coefficient(&self, w: &Weight) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_group(&self, other: &Self) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch {
                left: self.group.to_string(),
                right: other.group.to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_group(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            add_into(&mut out.terms, w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Group-algebra product: weights add, torsion coordinates wrap around.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_group(other)?;
        let mut out = Self::zero(&self.group);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                let w = self.group.add(wa, wb);
                add_into(&mut out.terms, w, ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.scale(&-C::one())
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(&self.group);
        for (w, v) in &self.terms {
            add_into(&mut out.terms, w.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(&self.group);
        for _ in 0..k {
            out = out.mul(self).expect("same group");
        }
        out
    }

    /// Multiplication by the character `[w]`.
    pub fn shift(&self, w: &Weight) -> Self {
        GroupRingElement {
            group: self.group.clone(),
            terms: self
                .terms
                .iter()
                .map(|(v, c)| (self.group.add(v, w), c.clone()))
                .collect(),
        }
    }

    /// The virtual dimension `Σ c_w`.
    pub fn augmentation(&self) -> C {
        self.terms
            .values()
            .fold(C::zero(), |acc, c| acc + c.clone())
    }

    /// Reorders the generators of a free lattice: coordinate `i` of the
    /// result is coordinate `perm[i]` of the input.
    pub fn permute_variables(&self, perm: &[usize]) -> Result<Self> {
        if !self.group.is_free() || perm.len() != self.group.num_generators() {
            return Err(Error::NotATorus(self.group.to_string()));
        }
        let mut out = Self::zero(&self.group);
        for (w, c) in &self.terms {
            let coords: Vec<i64> = perm.iter().map(|&p| w.coords()[p]).collect();
            out.add_term(self.group.weight(&coords)?, c.clone())?;
        }
        Ok(out)
    }

    /// Canonical text: terms in descending lexicographic weight order,
    /// `u` for a rank-one group and `u1, u2, ...` otherwise.
    pub fn render(&self) -> String {
        let vars = character_names(self.group.num_generators());
        render_terms(
            self.terms
                .iter()
                .rev()
                .map(|(w, c)| (character_monomial(w.coords(), &vars), c)),
        )
    }
}

impl RepRingElement {
    pub fn to_rational(&self) -> RationalGroupRingElement {
        GroupRingElement {
            group: self.group.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), BigRational::from_integer(c.clone())))
                .collect(),
        }
    }
}

impl<C> fmt::Display for GroupRingElement<C>
where
    C: Clone + Num + Signed + fmt::Display,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn add_into<K: Ord, C: Clone + Num>(terms: &mut BTreeMap<K, C>, w: K, c: C) {
    if c.is_zero() {
        return;
    }
    let entry = terms.entry(w);
    match entry {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let sum = o.get().clone() + c;
            if sum.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = sum;
            }
        }
    }
}

fn character_names(n: usize) -> Vec<String> {
    match n {
        1 => vec!["u".to_string()],
        n => (1..=n).map(|i| format!("u{i}")).collect(),
    }
}

fn character_monomial(coords: &[i64], vars: &[String]) -> String {
    coords
        .iter()
        .zip(vars)
        .filter(|(&a, _)| a != 0)
        .map(|(&a, v)| {
            if a == 1 {
                v.clone()
            } else {
                format!("{v}^{a}")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// `λ_{-1}(V) = Σ (-1)^k [Λ^k V] = ∏_i (1 - [w_i])`; the empty product is 1.
pub fn lambda_minus_one(group: &GroupDescriptor, weights: &[Weight]) -> Result<RepRingElement> {
    let mut out = RepRingElement::one(group);
    for w in weights {
        let factor =
            RepRingElement::one(group).sub(&RepRingElement::character(group, w.clone())?)?;
        out = out.mul(&factor)?;
    }
    Ok(out)
}

/// `ch(a)`: each character `[w]` goes to `exp(w·t)`, truncated at total degree `truncation`.
pub fn chern_character(a: &RepRingElement, truncation: usize) -> Result<GradedSeries> {
    let group = a.group();
    if !group.is_free() {
        return Err(Error::NotATorus(group.to_string()));
    }
    let rank = group.free_rank();
    let mut out = GradedSeries::zero(rank, truncation);
    for (w, c) in a.terms() {
        let e = GradedSeries::exp_linear(truncation, w.coords());
        out = &out + &e.scale(&BigRational::from_integer(c.clone()));
    }
    Ok(out)
}

/// Order of an element with respect to the augmentation-ideal filtration,
/// as far as a truncated Chern character can see it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AugmentationOrder {
    /// The Chern character's lowest nonzero degree.
    Exactly(usize),
    /// Every degree up to the truncation vanishes; the payload is `truncation + 1`.
    AtLeast(usize),
}

impl AugmentationOrder {
    /// A lower bound valid in both cases.
    pub fn lower_bound(self) -> usize {
        match self {
            AugmentationOrder::Exactly(k) | AugmentationOrder::AtLeast(k) => k,
        }
    }
}

impl fmt::Display for AugmentationOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AugmentationOrder::Exactly(k) => write!(f, "{k}"),
            AugmentationOrder::AtLeast(k) => write!(f, ">= {k}"),
        }
    }
}

/// Lowest degree in which `ch(a)` is nonzero.
pub fn augmentation_order(a: &RepRingElement, truncation: usize) -> Result<AugmentationOrder> {
    let ch = chern_character(a, truncation)?;
    Ok(match ch.lowest_degree() {
        Some(k) => AugmentationOrder::Exactly(k),
        None => AugmentationOrder::AtLeast(truncation + 1),
    })
}

/// A polynomial in `e_1, ..., e_n, e_n^{-1}`: an element of `R(GL_n)`.
///
/// Exponent vectors have length `n`; only the last entry may be negative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricElement {
    n: usize,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl SymmetricElement {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "GL_n needs n >= 1");
        SymmetricElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: i64) -> Self {
        let mut out = Self::zero(n);
        out.add_term(vec![0; n], BigInt::from(c))
            .expect("valid exponents");
        out
    }

    /// `e_i` for `1 ≤ i ≤ n`.
    pub fn elementary(n: usize, i: usize) -> Self {
        assert!(
            (1..=n).contains(&i),
            "e_{i} is not a generator of R(GL_{n})"
        );
        let mut e = vec![0; n];
        e[i - 1] = 1;
        let mut out = Self::zero(n);
        out.add_term(e, BigInt::one()).expect("valid exponents");
        out
    }

    /// `e_n^{-1}`, the inverse determinant.
    pub fn inverse_determinant(n: usize) -> Self {
        let mut e = vec![0; n];
        e[n - 1] = -1;
        let mut out = Self::zero(n);
        out.add_term(e, BigInt::one()).expect("valid exponents");
        out
    }

    pub fn add_term(&mut self, exponents: Vec<i64>, c: BigInt) -> Result<()> {
        if exponents.len() != self.n || exponents[..self.n - 1].iter().any(|&a| a < 0) {
            return Err(Error::InvalidWeight {
                coords: exponents,
                group: format!("R(GL_{})", self.n),
            });
        }
        add_into(&mut self.terms, exponents, c);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, BigInt> {
        &self.terms
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            add_into(&mut out.terms, e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero(self.n);
        for (e, v) in &self.terms {
            add_into(&mut out.terms, e.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = Self::zero(self.n);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                add_into(&mut out.terms, e, ca * cb);
            }
        }
        out
    }
}

/// Elementary symmetric polynomial `e_i(t_1, ..., t_n)` in `R(T) = Z[Z^n]`.
pub fn elementary_symmetric(n: usize, i: usize) -> RepRingElement {
    let group = GroupDescriptor::free(n);
    let mut out = RepRingElement::zero(&group);
    for mask in 0u64..(1u64 << n) {
        if mask.count_ones() as usize == i {
            let coords: Vec<i64> = (0..n).map(|j| ((mask >> j) & 1) as i64).collect();
            out.add_term(group.weight(&coords).expect("rank n"), BigInt::one())
                .expect("weight in group");
        }
    }
    out
}

/// Restriction `R(GL_n) → R(T)`: `e_i` becomes the `i`-th elementary
/// symmetric polynomial of `t_1, ..., t_n` and `e_n^{-1}` becomes `(t_1···t_n)^{-1}`.
pub fn symmetric_to_laurent(s: &SymmetricElement) -> RepRingElement {
    let n = s.n();
    let group = GroupDescriptor::free(n);
    let gens: Vec<RepRingElement> = (1..=n).map(|i| elementary_symmetric(n, i)).collect();
    let inv_det = RepRingElement::character(&group, group.weight(&vec![-1; n]).expect("rank n"))
        .expect("weight in group");
    let mut out = RepRingElement::zero(&group);
    for (e, c) in s.terms() {
        let mut term = RepRingElement::constant(&group, c.clone());
        for (i, &a) in e.iter().enumerate() {
            let factor = if a >= 0 {
                gens[i].pow(a as u32)
            } else {
                inv_det.pow((-a) as u32)
            };
            term = term.mul(&factor).expect("same group");
        }
        out = out.add(&term).expect("same group");
    }
    out
}

/// `e_i - C(n, i)` for `i = 1..=n`: generators of the ideal `I_{GL_n}·R(T)`.
pub fn gl_augmentation_generators(n: usize) -> Vec<RepRingElement> {
    let group = GroupDescriptor::free(n);
    (1..=n)
        .map(|i| {
            let s = SymmetricElement::elementary(n, i)
                .sub(&SymmetricElement::constant(n, binomial(n as i64, i as i64)));
            let laurent = symmetric_to_laurent(&s);
            debug_assert_eq!(laurent.group(), &group);
            laurent
        })
        .collect()
}

/// Explicit witness `target = Σ cofactors[i] · generators[i]` over `Q[N]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub cofactors: Vec<RationalGroupRingElement>,
    /// Smallest box half-width at which the witness was found.
    pub bound: usize,
}

impl Certificate {
    /// Recomputes `Σ c_i g_i` exactly and compares it with the target.
    pub fn verify(&self, target: &RepRingElement, generators: &[RepRingElement]) -> bool {
        if self.cofactors.len() != generators.len() {
            return false;
        }
        let mut sum = RationalGroupRingElement::zero(target.group());
        for (c, g) in self.cofactors.iter().zip(generators) {
            match c.mul(&g.to_rational()).and_then(|p| sum.add(&p)) {
                Ok(s) => sum = s,
                Err(_) => return false,
            }
        }
        sum == target.to_rational()
    }
}

/// Searches for cofactors with weight support in `[-D, D]^r`, trying
/// `D = 0, 1, ..., bound` in turn, such that `target = Σ c_i g_i`.
///
/// `Ok(None)` means no witness exists inside the box. It says nothing about
/// membership with larger cofactors.
pub fn ideal_membership_certificate(
    target: &RepRingElement,
    generators: &[RepRingElement],
    bound: usize,
) -> Result<Option<Certificate>> {
    let group = target.group();
    if !group.is_free() {
        return Err(Error::NotATorus(group.to_string()));
    }
    for g in generators {
        if g.group() != group {
            return Err(Error::GroupMismatch {
                left: group.to_string(),
                right: g.group().to_string(),
            });
        }
    }
    if target.is_zero() {
        let cofactors = vec![RationalGroupRingElement::zero(group); generators.len()];
        return Ok(Some(Certificate {
            cofactors,
            bound: 0,
        }));
    }
    for d in 0..=bound {
        if let Some(cofactors) = solve_in_box(target, generators, d as i64) {
            let cert = Certificate {
                cofactors,
                bound: d,
            };
            debug_assert!(cert.verify(target, generators));
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

fn box_weights(rank: usize, d: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|p| {
                (-d..=d).map(move |x| {
                    let mut v = p.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

/// Linear system: one unknown per (generator, box weight), one equation per
/// weight reached. Returns a particular solution with free unknowns set to 0.
fn solve_in_box(
    target: &RepRingElement,
    generators: &[RepRingElement],
    d: i64,
) -> Option<Vec<RationalGroupRingElement>> {
    let group = target.group();
    let shifts = box_weights(group.free_rank(), d);
    let mut row_of: HashMap<Weight, usize> = HashMap::new();
    let mut rows: Vec<BTreeMap<usize, BigRational>> = Vec::new();
    let mut row_index = |w: Weight, rows: &mut Vec<BTreeMap<usize, BigRational>>| -> usize {
        *row_of.entry(w).or_insert_with(|| {
            rows.push(BTreeMap::new());
            rows.len() - 1
        })
    };

    let mut unknowns: Vec<(usize, Weight)> = Vec::new();
    for (gi, g) in generators.iter().enumerate() {
        for s in &shifts {
            let shift = group.weight(s).expect("box weight has the group's rank");
            let col = unknowns.len();
            unknowns.push((gi, shift.clone()));
            for (w, c) in g.terms() {
                let r = row_index(group.add(w, &shift), &mut rows);
                rows[r].insert(col, BigRational::from_integer(c.clone()));
            }
        }
    }
    let mut rhs = vec![BigRational::zero(); rows.len()];
    for (w, c) in target.terms() {
        let r = row_index(w.clone(), &mut rows);
        if r >= rhs.len() {
            rhs.resize(r + 1, BigRational::zero());
        }
        rhs[r] = BigRational::from_integer(c.clone());
    }

    let solution = solve_sparse(rows, rhs, unknowns.len())?;
    let mut cofactors = vec![RationalGroupRingElement::zero(group); generators.len()];
    for (col, value) in solution.into_iter().enumerate() {
        if !value.is_zero() {
            let (gi, shift) = &unknowns[col];
            cofactors[*gi]
                .add_term(shift.clone(), value)
                .expect("box weight in group");
        }
    }
    Some(cofactors)
}

/// Sparse Gaussian elimination over Q. Pivot rows are kept normalized and
/// free of the pivot columns of earlier pivots, so a new row is fully
/// reduced by one pass over the pivots in insertion order.
fn solve_sparse(
    rows: Vec<BTreeMap<usize, BigRational>>,
    rhs: Vec<BigRational>,
    ncols: usize,
) -> Option<Vec<BigRational>> {
    let mut pivots: Vec<(usize, BTreeMap<usize, BigRational>, BigRational)> = Vec::new();
    for (mut row, mut b) in rows.into_iter().zip(rhs) {
        for (pc, prow, pb) in &pivots {
            let Some(factor) = row.get(pc).cloned() else {
                continue;
            };
            for (c, v) in prow {
                let entry = row.entry(*c).or_insert_with(BigRational::zero);
                *entry -= &factor * v;
                if entry.is_zero() {
                    row.remove(c);
                }
            }
            b -= &factor * pb;
        }
        match row.iter().next() {
            None => {
                if !b.is_zero() {
                    return None;
                }
            }
            Some((&c, lead)) => {
                let inv = lead.recip();
                for v in row.values_mut() {
                    *v *= &inv;
                }
                b *= &inv;
                pivots.push((c, row, b));
            }
        }
    }
    let mut x = vec![BigRational::zero(); ncols];
    for (pc, prow, pb) in pivots.iter().rev() {
        let mut v = pb.clone();
        for (c, a) in prow {
            if c != pc {
                v -= a * &x[*c];
            }
        }
        x[*pc] = v;
    }
    Some(x)
}
