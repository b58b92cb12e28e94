//! Finitely generated abelian groups and their integer linear algebra.
//!
//! A diagonalizable group `G` is recorded through its character group `N`,
//! a finitely generated abelian group `Z^r ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k` kept in
//! invariant-factor form (`d_1 | d_2 | ...`). Subgroups of `G` correspond to
//! quotients of `N`, which are computed with the Smith normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix with arbitrary-precision entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![vec![BigInt::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of machine integers. All rows must have the same length.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows
                .iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        }
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.data[i][i] = e.clone();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i][j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(
            self.cols, other.rows,
            "dimension mismatch in matrix product"
        );
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i][j] += a * &other.data[k][j];
                }
            }
        }
        out
    }

    /// Determinant of a square matrix (fraction-free Bareiss elimination).
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.data.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in &mut self.data {
            row.swap(i, j);
        }
    }

    /// row_target += factor * row_source
    fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        let src = self.data[source].clone();
        for (t, s) in self.data[target].iter_mut().zip(src.iter()) {
            *t += factor * s;
        }
    }

    /// col_target += factor * col_source
    fn add_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        for row in &mut self.data {
            let s = row[source].clone();
            row[target] += factor * s;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.data[i] {
            *x = -&*x;
        }
    }
}

/// Result of a Smith normal form computation: `left * M * right` is diagonal
/// with the invariant factors on the diagonal.
#[derive(Debug, Clone)]
pub struct SmithForm {
    /// Nonnegative diagonal entries, `min(rows, cols)` of them, in divisibility
    /// order; zeros (if any) come last.
    pub invariant_factors: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariant_factors
            .iter()
            .filter(|d| !d.is_zero())
            .count()
    }
}

/// Smith normal form over the integers, with unimodular transforms.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    let steps = rows.min(cols);
    let mut t = 0;
    while t < steps {
        let Some((pi, pj)) = smallest_nonzero(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            if let Some(i) = (t + 1..rows).find(|&i| !a.data[i][t].is_zero()) {
                let q = a.data[i][t].div_floor(&a.data[t][t]);
                let neg_q = -q;
                a.add_row_multiple(i, t, &neg_q);
                u.add_row_multiple(i, t, &neg_q);
                if !a.data[i][t].is_zero() {
                    a.swap_rows(i, t);
                    u.swap_rows(i, t);
                }
                continue;
            }
            if let Some(j) = (t + 1..cols).find(|&j| !a.data[t][j].is_zero()) {
                let q = a.data[t][j].div_floor(&a.data[t][t]);
                let neg_q = -q;
                a.add_col_multiple(j, t, &neg_q);
                v.add_col_multiple(j, t, &neg_q);
                if !a.data[t][j].is_zero() {
                    a.swap_cols(j, t);
                    v.swap_cols(j, t);
                }
                continue;
            }
            // pivot row and column are clear; enforce divisibility of the rest
            let pivot = a.data[t][t].clone();
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !a.data[i][j].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }

        if a.data[t][t].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }

    let invariant_factors = (0..steps).map(|i| a.data[i][i].clone()).collect();
    SmithForm {
        invariant_factors,
        left: u,
        right: v,
    }
}

fn smallest_nonzero(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            let x = a.data[i][j].abs();
            if x.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, _, b)| x < *b) {
                best = Some((i, j, x));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// A finitely generated abelian group `Z^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k`
/// with `d_1 | d_2 | ... | d_k` and every `d_i ≥ 2`.
///
/// It is read as the character group of a diagonalizable group: a torus of
/// rank `free_rank` times the finite group dual to the torsion part.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupDescriptor {
    free_rank: usize,
    torsion_orders: Vec<u64>,
}

impl GroupDescriptor {
    /// Builds `Z^free_rank ⊕ ⊕ Z/orders[i]`, bringing the torsion part into
    /// invariant-factor form. Orders equal to 1 are dropped; 0 is rejected.
    pub fn new(free_rank: usize, orders: &[u64]) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::InvalidGroup(
                "torsion orders must be positive".to_string(),
            ));
        }
        let diag: Vec<BigInt> = orders.iter().map(|&d| BigInt::from(d)).collect();
        let snf = smith_normal_form(&IntMatrix::diagonal(&diag));
        let torsion_orders = snf
            .invariant_factors
            .iter()
            .filter(|d| !d.is_one())
            .map(|d| {
                d.to_u64()
                    .expect("invariant factor divides a product of u64 orders")
            })
            .collect();
        Ok(GroupDescriptor {
            free_rank,
            torsion_orders,
        })
    }

    /// The character lattice `Z^rank` of a rank-`rank` torus.
    pub fn free(rank: usize) -> Self {
        GroupDescriptor {
            free_rank: rank,
            torsion_orders: Vec::new(),
        }
    }

    /// `Z/d`, the character group of `μ_d`.
    pub fn cyclic(d: u64) -> Result<Self> {
        Self::new(0, &[d])
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion_orders(&self) -> &[u64] {
        &self.torsion_orders
    }

    /// Number of generators (free ones first, then torsion).
    pub fn num_generators(&self) -> usize {
        self.free_rank + self.torsion_orders.len()
    }

    pub fn is_free(&self) -> bool {
        self.torsion_orders.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order, or `None` for infinite groups.
    pub fn order(&self) -> Option<u64> {
        self.is_finite()
            .then(|| self.torsion_orders.iter().product())
    }

    /// Modulus of generator `i`: 0 for free generators.
    pub fn modulus(&self, i: usize) -> u64 {
        if i < self.free_rank {
            0
        } else {
            self.torsion_orders[i - self.free_rank]
        }
    }

    /// Interprets integer coordinates as an element, reducing torsion
    /// coordinates into `[0, d)`.
    pub fn weight(&self, coords: &[i64]) -> Result<Weight> {
        if coords.len() != self.num_generators() {
            return Err(Error::InvalidWeight {
                coords: coords.to_vec(),
                group: self.to_string(),
            });
        }
        Ok(self.reduce(coords.to_vec()))
    }

    fn reduce(&self, mut coords: Vec<i64>) -> Weight {
        for (i, c) in coords.iter_mut().enumerate().skip(self.free_rank) {
            *c = c.rem_euclid(self.modulus(i) as i64);
        }
        Weight(coords)
    }

    pub fn zero(&self) -> Weight {
        Weight(vec![0; self.num_generators()])
    }

    pub fn add(&self, a: &Weight, b: &Weight) -> Weight {
        self.reduce(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn neg(&self, a: &Weight) -> Weight {
        self.reduce(a.0.iter().map(|x| -x).collect())
    }

    pub fn scale(&self, k: i64, a: &Weight) -> Weight {
        self.reduce(a.0.iter().map(|x| k * x).collect())
    }

    /// Checks that `w` is a canonical element of this group.
    pub fn contains(&self, w: &Weight) -> bool {
        w.0.len() == self.num_generators()
            && w.0
                .iter()
                .enumerate()
                .skip(self.free_rank)
                .all(|(i, &c)| (0..self.modulus(i) as i64).contains(&c))
    }

    /// All elements of a finite group in lexicographic order.
    pub fn elements(&self) -> Option<Vec<Weight>> {
        if !self.is_finite() {
            return None;
        }
        let mut out = vec![Vec::new()];
        for &d in &self.torsion_orders {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..d as i64).map(move |c| {
                        let mut v = prefix.clone();
                        v.push(c);
                        v
                    })
                })
                .collect();
        }
        Some(out.into_iter().map(Weight).collect())
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion_orders.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// An element of a [`GroupDescriptor`], one integer coordinate per generator.
/// Torsion coordinates are kept in `[0, d)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Coordinates of the free part (the torus weight).
    pub fn free_part(&self, group: &GroupDescriptor) -> Vec<i64> {
        self.0[..group.free_rank()].to_vec()
    }
}

/// A homomorphism `N → Q/Z`, given by its value on each generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TorsionCharacterPoint {
    values: Vec<BigRational>,
}

impl TorsionCharacterPoint {
    /// Values are reduced into `[0, 1)`. A torsion generator of order `d`
    /// must be sent to a multiple of `1/d`.
    pub fn new(group: &GroupDescriptor, values: Vec<BigRational>) -> Result<Self> {
        if values.len() != group.num_generators() {
            return Err(Error::InvalidCharacterPoint(format!(
                "expected {} values, got {}",
                group.num_generators(),
                values.len()
            )));
        }
        for (i, v) in values.iter().enumerate().skip(group.free_rank()) {
            let d = BigInt::from(group.modulus(i));
            if !(v * &d).is_integer() {
                return Err(Error::InvalidCharacterPoint(format!(
                    "value {v} on a generator of order {d} is not a multiple of 1/{d}"
                )));
            }
        }
        Ok(TorsionCharacterPoint {
            values: values.into_iter().map(|v| frac_part(&v)).collect(),
        })
    }

    /// The trivial character (the augmentation point).
    pub fn trivial(group: &GroupDescriptor) -> Self {
        TorsionCharacterPoint {
            values: vec![BigRational::zero(); group.num_generators()],
        }
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    /// `φ(w)` as a rational in `[0, 1)`.
    pub fn evaluate(&self, w: &Weight) -> BigRational {
        let sum = self
            .values
            .iter()
            .zip(w.coords())
            .fold(BigRational::zero(), |acc, (v, &c)| {
                acc + v * BigInt::from(c)
            });
        frac_part(&sum)
    }

    /// Order of `φ` in the character group: the lcm of the denominators.
    pub fn order(&self) -> BigInt {
        self.values
            .iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
    }
}

fn frac_part(v: &BigRational) -> BigRational {
    v - v.floor()
}

/// The projection `N → N/K` for a subgroup `K` given by generators.
#[derive(Debug, Clone)]
pub struct QuotientMap {
    source: GroupDescriptor,
    target: GroupDescriptor,
    right: IntMatrix,
    /// For each target coordinate, the source-side SNF column it comes from.
    columns: Vec<usize>,
}

impl QuotientMap {
    pub fn new(group: &GroupDescriptor, generators: &[Weight]) -> Result<Self> {
        for g in generators {
            if !group.contains(g) {
                return Err(Error::InvalidWeight {
                    coords: g.coords().to_vec(),
                    group: group.to_string(),
                });
            }
        }
        let k = group.num_generators();
        let mut relations: Vec<Vec<i64>> = Vec::new();
        for i in group.free_rank()..k {
            let mut row = vec![0; k];
            row[i] = group.modulus(i) as i64;
            relations.push(row);
        }
        relations.extend(generators.iter().map(|g| g.coords().to_vec()));

        let (moduli, right) = if relations.is_empty() {
            (vec![BigInt::zero(); k], IntMatrix::identity(k))
        } else {
            let snf = smith_normal_form(&IntMatrix::from_rows(&relations));
            let mut moduli = snf.invariant_factors.clone();
            moduli.resize(k, BigInt::zero());
            (moduli, snf.right)
        };

        let mut columns: Vec<usize> = (0..k).filter(|&j| moduli[j].is_zero()).collect();
        let free_rank = columns.len();
        let mut torsion = Vec::new();
        for (j, m) in moduli.iter().enumerate() {
            if m > &BigInt::one() {
                columns.push(j);
                torsion.push(m.to_u64().ok_or_else(|| {
                    Error::InvalidGroup(format!("quotient order {m} overflows u64"))
                })?);
            }
        }
        Ok(QuotientMap {
            source: group.clone(),
            target: GroupDescriptor {
                free_rank,
                torsion_orders: torsion,
            },
            right,
            columns,
        })
    }

    pub fn source(&self) -> &GroupDescriptor {
        &self.source
    }

    pub fn target(&self) -> &GroupDescriptor {
        &self.target
    }

    /// Image of `w` in the quotient, in the quotient's canonical coordinates.
    pub fn project(&self, w: &Weight) -> Weight {
        let k = self.source.num_generators();
        let coords: Vec<i64> = self
            .columns
            .iter()
            .map(|&j| {
                let mut acc = BigInt::zero();
                for i in 0..k {
                    acc += BigInt::from(w.coords()[i]) * self.right.get(i, j);
                }
                let m = self.target.modulus(self.target_index(j));
                if m > 0 {
                    acc = acc.mod_floor(&BigInt::from(m));
                }
                acc.to_i64().expect("projected coordinate fits in i64")
            })
            .collect();
        Weight(coords)
    }

    fn target_index(&self, column: usize) -> usize {
        self.columns.iter().position(|&c| c == column).unwrap()
    }

    /// Whether `w` lies in the subgroup `K`.
    pub fn in_kernel(&self, w: &Weight) -> bool {
        self.project(w).is_zero()
    }
}

/// The invariant-factor form of `N/K`, `K` generated by `generators`.
pub fn quotient_group(group: &GroupDescriptor, generators: &[Weight]) -> Result<GroupDescriptor> {
    Ok(QuotientMap::new(group, generators)?.target)
}

/// Generators of `K_φ = {n ∈ N : φ(n) ≡ 0 mod 1}`. Zero generators are omitted,
/// so the trivial subgroup is the empty list.
pub fn kernel_of_character_point(
    group: &GroupDescriptor,
    point: &TorsionCharacterPoint,
) -> Result<Vec<Weight>> {
    if point.values().len() != group.num_generators() {
        return Err(Error::InvalidCharacterPoint(format!(
            "point has {} values, group has {} generators",
            point.values().len(),
            group.num_generators()
        )));
    }
    let k = group.num_generators();
    let l = point.order();
    // kernel of (n, m) ↦ Σ n_i c_i + m L over Z^{k+1}, projected to the first k coordinates
    let mut row: Vec<BigInt> = point
        .values()
        .iter()
        .map(|v| (v * &l).to_integer())
        .collect();
    row.push(l);
    let m = IntMatrix {
        rows: 1,
        cols: k + 1,
        data: vec![row],
    };
    let snf = smith_normal_form(&m);
    let mut out = Vec::new();
    for j in 1..=k {
        let coords: Vec<i64> = (0..k)
            .map(|i| {
                snf.right
                    .get(i, j)
                    .to_i64()
                    .expect("kernel basis entry fits in i64")
            })
            .collect();
        let w = group.reduce(coords);
        if !w.is_zero() && !out.contains(&w) {
            out.push(w);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    fn factors(m: &IntMatrix) -> Vec<i64> {
        smith_normal_form(m)
            .invariant_factors
            .iter()
            .map(|d| d.to_i64().unwrap())
            .collect()
    }

    fn assert_decomposition(m: &IntMatrix) {
        let snf = smith_normal_form(m);
        let prod = snf.left.mul(m).mul(&snf.right);
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                let expected = if i == j {
                    snf.invariant_factors[i].clone()
                } else {
                    BigInt::zero()
                };
                assert_eq!(prod.get(i, j), &expected, "entry ({i},{j}) of U·M·V");
            }
        }
        assert_eq!(snf.left.determinant().abs(), BigInt::one());
        assert_eq!(snf.right.determinant().abs(), BigInt::one());
    }

    #[test]
    fn snf_diag_2_3() {
        let m = big(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(factors(&m), vec![1, 6]);
        assert_decomposition(&m);
    }

    #[test]
    fn snf_identity() {
        assert_eq!(factors(&IntMatrix::identity(2)), vec![1, 1]);
    }

    #[test]
    fn snf_2468_matches_brute_force_transforms() {
        let m = big(&[vec![2, 4], vec![6, 8]]);
        assert_eq!(factors(&m), vec![2, 4]);
        assert_decomposition(&m);

        // independent search: unimodular U, V with small entries and U·M·V = diag(2, 4)
        let mut unimodular = Vec::new();
        for a in -3..=3i64 {
            for b in -3..=3i64 {
                for c in -3..=3i64 {
                    for d in -3..=3i64 {
                        if (a * d - b * c).abs() == 1 {
                            unimodular.push([[a, b], [c, d]]);
                        }
                    }
                }
            }
        }
        let target = [[2i64, 0], [0, 4]];
        let mm = [[2i64, 4], [6, 8]];
        let mul = |x: [[i64; 2]; 2], y: [[i64; 2]; 2]| {
            let mut z = [[0i64; 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    z[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
                }
            }
            z
        };
        let found = unimodular
            .iter()
            .any(|&u| unimodular.iter().any(|&v| mul(mul(u, mm), v) == target));
        assert!(
            found,
            "brute force finds diag(2,4) as a unimodular equivalent"
        );
    }

    #[test]
    fn snf_empty_and_zero() {
        let empty = IntMatrix::zeros(0, 3);
        assert!(smith_normal_form(&empty).invariant_factors.is_empty());
        let z = IntMatrix::zeros(2, 3);
        assert_eq!(factors(&z), vec![0, 0]);
        assert_decomposition(&z);
    }

    #[test]
    fn snf_rectangular() {
        let m = big(&[vec![4, 6, 8], vec![10, 12, 14]]);
        assert_decomposition(&m);
        // gcd of entries 2, gcd of 2x2 minors (-12, -24, -12) is 12
        assert_eq!(factors(&m), vec![2, 6]);
    }

    #[test]
    fn group_normalizes_orders() {
        let g = GroupDescriptor::new(0, &[2, 3]).unwrap();
        assert_eq!(g.torsion_orders(), &[6]);
        let g = GroupDescriptor::new(1, &[4, 6, 1]).unwrap();
        assert_eq!(g.torsion_orders(), &[2, 12]);
        assert_eq!(g.to_string(), "Z + Z/2 + Z/12");
        assert!(GroupDescriptor::new(0, &[0]).is_err());
    }

    #[test]
    fn weights_reduce_torsion() {
        let g = GroupDescriptor::new(1, &[3]).unwrap();
        let w = g.weight(&[-2, -1]).unwrap();
        assert_eq!(w.coords(), &[-2, 2]);
        assert!(g.weight(&[1]).is_err());
        let v = g.weight(&[0, 2]).unwrap();
        assert_eq!(g.add(&v, &v).coords(), &[0, 1]);
    }

    #[test]
    fn quotient_z6_by_3() {
        let n = GroupDescriptor::cyclic(6).unwrap();
        let k = vec![n.weight(&[3]).unwrap()];
        assert_eq!(
            quotient_group(&n, &k).unwrap(),
            GroupDescriptor::cyclic(3).unwrap()
        );
    }

    #[test]
    fn quotient_z_by_zero() {
        let n = GroupDescriptor::free(1);
        assert_eq!(quotient_group(&n, &[n.zero()]).unwrap(), n);
        assert_eq!(quotient_group(&n, &[]).unwrap(), n);
    }

    #[test]
    fn quotient_z2_by_2_3() {
        let n = GroupDescriptor::free(2);
        let k = vec![n.weight(&[2, 0]).unwrap(), n.weight(&[0, 3]).unwrap()];
        let q = quotient_group(&n, &k).unwrap();
        assert_eq!(q, GroupDescriptor::cyclic(6).unwrap());
        assert_eq!(q, GroupDescriptor::new(0, &[2, 3]).unwrap());
    }

    #[test]
    fn quotient_projection_respects_kernel() {
        let n = GroupDescriptor::new(1, &[4]).unwrap();
        let k = vec![n.weight(&[2, 2]).unwrap()];
        let map = QuotientMap::new(&n, &k).unwrap();
        // relations (0,4), (2,2) have full rank: Z/2 + Z/4
        assert_eq!(map.target().order(), Some(8));
        assert!(map.in_kernel(&n.weight(&[4, 0]).unwrap()));
        assert!(map.in_kernel(&n.weight(&[-2, 2]).unwrap()));
        assert!(!map.in_kernel(&n.weight(&[2, 0]).unwrap()));
        // projection is a homomorphism
        let a = n.weight(&[1, 3]).unwrap();
        let b = n.weight(&[5, 1]).unwrap();
        let pa = map.project(&a);
        let pb = map.project(&b);
        assert_eq!(map.target().add(&pa, &pb), map.project(&n.add(&a, &b)));
    }

    fn point(n: &GroupDescriptor, vals: &[(i64, i64)]) -> TorsionCharacterPoint {
        TorsionCharacterPoint::new(
            n,
            vals.iter()
                .map(|&(p, q)| BigRational::new(p.into(), q.into()))
                .collect(),
        )
        .unwrap()
    }

    fn subgroup_elements(n: &GroupDescriptor, gens: &[Weight]) -> Vec<Weight> {
        let map = QuotientMap::new(n, gens).unwrap();
        n.elements()
            .unwrap()
            .into_iter()
            .filter(|w| map.in_kernel(w))
            .collect()
    }

    #[test]
    fn kernel_examples_by_enumeration() {
        let n = GroupDescriptor::cyclic(6).unwrap();
        let third = point(&n, &[(1, 3)]);
        let k = kernel_of_character_point(&n, &third).unwrap();
        let brute: Vec<Weight> = n
            .elements()
            .unwrap()
            .into_iter()
            .filter(|w| third.evaluate(w).is_zero())
            .collect();
        assert_eq!(
            brute,
            vec![n.weight(&[0]).unwrap(), n.weight(&[3]).unwrap()]
        );
        assert_eq!(subgroup_elements(&n, &k), brute);

        let k = kernel_of_character_point(&n, &TorsionCharacterPoint::trivial(&n)).unwrap();
        assert_eq!(subgroup_elements(&n, &k).len(), 6);

        let k = kernel_of_character_point(&n, &point(&n, &[(1, 6)])).unwrap();
        assert!(k.is_empty());
    }

    #[test]
    fn invalid_point_rejected() {
        let n = GroupDescriptor::cyclic(6).unwrap();
        assert!(
            TorsionCharacterPoint::new(&n, vec![BigRational::new(1.into(), 4.into())]).is_err()
        );
        assert!(TorsionCharacterPoint::new(&n, vec![]).is_err());
    }

    #[test]
    fn kernel_on_free_lattice() {
        let n = GroupDescriptor::free(2);
        let p = point(&n, &[(1, 2), (1, 3)]);
        let k = kernel_of_character_point(&n, &p).unwrap();
        let q = quotient_group(&n, &k).unwrap();
        assert_eq!(q, GroupDescriptor::cyclic(6).unwrap());
        for g in &k {
            assert!(p.evaluate(g).is_zero());
        }
    }

    /// All finite groups of order ≤ 24 up to isomorphism, as chains of orders.
    fn small_groups() -> Vec<GroupDescriptor> {
        let mut out = Vec::new();
        for a in 1..=24u64 {
            for b in 1..=24u64 {
                for c in [1u64, 2] {
                    if a * b * c <= 24 && b % a == 0 && (c == 1 || a % c == 0) {
                        out.push(GroupDescriptor::new(0, &[c, a, b]).unwrap());
                    }
                }
            }
        }
        out.sort_by_key(|g| g.torsion_orders().to_vec());
        out.dedup();
        out
    }

    #[test]
    fn quotient_by_kernel_has_order_of_image_exhaustive() {
        for n in small_groups() {
            let elems = n.elements().unwrap();
            // every character point: values a_i / d_i
            let mut points = vec![Vec::new()];
            for &d in n.torsion_orders() {
                points = points
                    .into_iter()
                    .flat_map(|p: Vec<(i64, i64)>| {
                        (0..d as i64).map(move |a| {
                            let mut p = p.clone();
                            p.push((a, d as i64));
                            p
                        })
                    })
                    .collect();
            }
            for vals in points {
                let phi = point(&n, &vals);
                let mut image: Vec<BigRational> = elems.iter().map(|w| phi.evaluate(w)).collect();
                image.sort();
                image.dedup();
                let k = kernel_of_character_point(&n, &phi).unwrap();
                let q = quotient_group(&n, &k).unwrap();
                assert_eq!(q.order().unwrap() as usize, image.len(), "{n} at {vals:?}");
                assert_eq!(BigInt::from(image.len()), phi.order());
            }
        }
    }
}
