//! Twisted-sector bookkeeping for finite diagonalizable groups acting
//! linearly on projective spaces.
//!
//! For a finite group `G` with character group `N`, the points of
//! `Spec Q[N]` are Galois orbits of homomorphisms `φ: N → Q/Z`. Each orbit is
//! a cyclic subgroup of `Hom(N, Q/Z)` whose generators have a common order
//! `e`, and its residue field is the cyclotomic field of degree `φ_Euler(e)`.
//! The support of the prime is the subgroup `H ⊂ G` dual to `N/K_φ`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::charclass::ProjSpaceModel;
use crate::error::{Error, Result};
use crate::lattice::{
    kernel_of_character_point, GroupDescriptor, QuotientMap, TorsionCharacterPoint, Weight,
};

/// The subgroup `H` dual to `N/K_φ`, in invariant-factor form.
pub fn support_subgroup(
    group: &GroupDescriptor,
    point: &TorsionCharacterPoint,
) -> Result<GroupDescriptor> {
    let kernel = kernel_of_character_point(group, point)?;
    let h = QuotientMap::new(group, &kernel)?.target().clone();
    if !h.is_finite() {
        return Err(Error::InfiniteImage);
    }
    Ok(h)
}

/// A linear subspace `P^{s-1}` of the fixed locus, spanned by the listed
/// coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedComponent {
    pub coordinates: Vec<usize>,
    pub weights: Vec<Weight>,
}

impl FixedComponent {
    pub fn dimension(&self) -> usize {
        self.coordinates.len() - 1
    }
}

impl fmt::Display for FixedComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords: Vec<String> = self.coordinates.iter().map(usize::to_string).collect();
        write!(f, "P^{}{{{}}}", self.dimension(), coords.join(","))
    }
}

/// Fixed locus of the subgroup `H` whose annihilator in `N` is generated by
/// `annihilator`. Coordinates are grouped by the class of their weight in
/// `N/annihilator`, which is the character group of `H`.
pub fn fixed_locus(model: &ProjSpaceModel, annihilator: &[Weight]) -> Result<Vec<FixedComponent>> {
    let q = QuotientMap::new(model.group(), annihilator)?;
    let mut classes: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
    let mut order = Vec::new();
    for (i, w) in model.weights().iter().enumerate() {
        let class = q.project(w);
        if !classes.contains_key(&class) {
            order.push(class.clone());
        }
        classes.entry(class).or_default().push(i);
    }
    Ok(order
        .into_iter()
        .map(|class| {
            let coordinates = classes.remove(&class).unwrap_or_default();
            let weights = coordinates
                .iter()
                .map(|&i| model.weights()[i].clone())
                .collect();
            FixedComponent {
                coordinates,
                weights,
            }
        })
        .collect())
}

/// Fixed locus of the support of `point`.
pub fn fixed_locus_of_point(
    model: &ProjSpaceModel,
    point: &TorsionCharacterPoint,
) -> Result<Vec<FixedComponent>> {
    let kernel = kernel_of_character_point(model.group(), point)?;
    fixed_locus(model, &kernel)
}

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

#[derive(Debug, Clone)]
pub struct Sector {
    pub prime_point: TorsionCharacterPoint,
    /// Order `e` of the character point.
    pub order: u64,
    /// `φ_Euler(e)`.
    pub residue_degree: u64,
    pub support: GroupDescriptor,
    pub fixed_components: Vec<FixedComponent>,
    pub sector_dimension: u64,
}

impl Sector {
    pub fn is_untwisted(&self) -> bool {
        self.order == 1
    }
}

#[derive(Debug, Clone)]
pub struct SectorDecomposition {
    pub group: GroupDescriptor,
    pub sectors: Vec<Sector>,
}

impl SectorDecomposition {
    pub fn total(&self) -> u64 {
        self.sectors.iter().map(|s| s.sector_dimension).sum()
    }

    pub fn untwisted_dimension(&self) -> u64 {
        self.sectors
            .iter()
            .filter(|s| s.is_untwisted())
            .map(|s| s.sector_dimension)
            .sum()
    }
}

/// One representative per Galois orbit of characters `N → Q/Z` of a finite
/// group, sorted by order and then by values. The representative is the
/// lexicographically smallest generator of the cyclic subgroup.
pub fn prime_points(group: &GroupDescriptor) -> Result<Vec<TorsionCharacterPoint>> {
    if !group.is_finite() {
        return Err(Error::InvalidGroup(format!("{group} is not finite")));
    }
    let moduli: Vec<u64> = (0..group.num_generators())
        .map(|i| group.modulus(i))
        .collect();
    let mut all: Vec<Vec<u64>> = vec![Vec::new()];
    for &d in &moduli {
        all = all
            .into_iter()
            .flat_map(|prefix| {
                (0..d).map(move |a| {
                    let mut v = prefix.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    let to_point = |numerators: &[u64]| -> Result<TorsionCharacterPoint> {
        let values = numerators
            .iter()
            .zip(&moduli)
            .map(|(&a, &d)| BigRational::new(BigInt::from(a), BigInt::from(d)))
            .collect();
        TorsionCharacterPoint::new(group, values)
    };
    let mut reps = Vec::new();
    for numerators in &all {
        let point = to_point(numerators)?;
        let e = point
            .order()
            .to_u64()
            .expect("order of a finite group fits in u64");
        // canonical if no other generator k·φ of the same cyclic subgroup is smaller
        let canonical = (1..e.max(1)).filter(|k| k.gcd(&e) == 1).all(|k| {
            let multiple: Vec<BigRational> =
                point.values().iter().map(|v| v * BigInt::from(k)).collect();
            let other =
                TorsionCharacterPoint::new(group, multiple).expect("multiple of a valid point");
            other.values() >= point.values()
        });
        if canonical {
            reps.push((e, point));
        }
    }
    reps.sort_by(|(e1, p1), (e2, p2)| e1.cmp(e2).then_with(|| p1.values().cmp(p2.values())));
    Ok(reps.into_iter().map(|(_, p)| p).collect())
}

/// Sector table for a finite group acting on a projective-space model.
pub fn sector_dimensions(model: &ProjSpaceModel) -> Result<SectorDecomposition> {
    let group = model.group();
    let points = prime_points(group)?;
    let sectors = points
        .into_par_iter()
        .map(|point| -> Result<Sector> {
            let order = point
                .order()
                .to_u64()
                .expect("order of a finite group fits in u64");
            let residue_degree = euler_phi(order);
            let support = support_subgroup(group, &point)?;
            let fixed_components = fixed_locus_of_point(model, &point)?;
            let chow: u64 = fixed_components
                .iter()
                .map(|c| c.dimension() as u64 + 1)
                .sum();
            Ok(Sector {
                prime_point: point,
                order,
                residue_degree,
                support,
                fixed_components,
                sector_dimension: chow * residue_degree,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SectorDecomposition {
        group: group.clone(),
        sectors,
    })
}

/// Total dimension minus the untwisted sector.
pub fn vistoli_kernel_dimension(decomposition: &SectorDecomposition) -> u64 {
    decomposition.total() - decomposition.untwisted_dimension()
}

/// `dim_Q K_G(P^n)_Q = (n+1)·dim_Q Q[N]`, counting the elements of `N` one
/// by one. `K_G(P(V))` is free over `R(G)` on `1, [O(1)], ..., [O(n)]`.
pub fn ktheory_dimension(model: &ProjSpaceModel) -> Result<u64> {
    let elements = model
        .group()
        .elements()
        .ok_or_else(|| Error::InvalidGroup(format!("{} is not finite", model.group())))?;
    Ok(model.weights().len() as u64 * elements.len() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gradedring::rational;

    fn mu(d: u64, weights: &[i64]) -> ProjSpaceModel {
        let g = GroupDescriptor::cyclic(d).unwrap();
        let coords = |w: i64| {
            if g.num_generators() == 0 {
                vec![]
            } else {
                vec![w]
            }
        };
        let ws = weights
            .iter()
            .map(|&w| g.weight(&coords(w)).unwrap())
            .collect();
        ProjSpaceModel::new(&g, ws, 4).unwrap()
    }

    fn point(g: &GroupDescriptor, values: &[(i64, i64)]) -> TorsionCharacterPoint {
        TorsionCharacterPoint::new(g, values.iter().map(|&(p, q)| rational(p, q)).collect())
            .unwrap()
    }

    #[test]
    fn support_examples() {
        let z6 = GroupDescriptor::cyclic(6).unwrap();
        assert_eq!(
            support_subgroup(&z6, &point(&z6, &[(1, 3)]))
                .unwrap()
                .to_string(),
            "Z/3"
        );
        assert_eq!(
            support_subgroup(&z6, &point(&z6, &[(1, 6)]))
                .unwrap()
                .to_string(),
            "Z/6"
        );
        assert!(
            support_subgroup(&z6, &TorsionCharacterPoint::trivial(&z6))
                .unwrap()
                .order()
                == Some(1)
        );
    }

    #[test]
    fn support_on_infinite_group_is_finite() {
        let g = GroupDescriptor::new(1, &[4]).unwrap();
        let h = support_subgroup(&g, &point(&g, &[(1, 6), (1, 4)])).unwrap();
        assert_eq!(h.order(), Some(12));
    }

    #[test]
    fn fixed_locus_examples() {
        let m = mu(6, &[0, 1]);
        let g = m.group().clone();
        for e in [2, 3, 6] {
            // annihilator of μ_e ⊂ μ_6 is generated by e
            let fixed = fixed_locus(&m, &[g.weight(&[e]).unwrap()]).unwrap();
            assert_eq!(fixed.len(), 2, "e = {e}");
        }
        let whole = fixed_locus(&m, &[]).unwrap();
        assert_eq!(whole.len(), 2);
        let trivial_h = fixed_locus(&m, &[g.weight(&[1]).unwrap()]).unwrap();
        assert_eq!(trivial_h.len(), 1);
        assert_eq!(trivial_h[0].coordinates, vec![0, 1]);

        let p2 = mu(2, &[0, 0, 1]);
        let fixed = fixed_locus_of_point(&p2, &point(p2.group(), &[(1, 2)])).unwrap();
        assert_eq!(fixed.len(), 2);
        assert_eq!(fixed[0].coordinates, vec![0, 1]);
        assert_eq!(fixed[0].dimension(), 1);
        assert_eq!(fixed[1].coordinates, vec![2]);
        assert_eq!(fixed[0].to_string(), "P^1{0,1}");
    }

    #[test]
    fn prime_points_of_cyclic_groups() {
        let g = GroupDescriptor::cyclic(6).unwrap();
        let pts = prime_points(&g).unwrap();
        let orders: Vec<u64> = pts.iter().map(|p| p.order().to_u64().unwrap()).collect();
        assert_eq!(orders, vec![1, 2, 3, 6]);
        assert_eq!(pts[2].values(), &[rational(1, 3)]);
        assert_eq!(pts[3].values(), &[rational(1, 6)]);
    }

    #[test]
    fn prime_points_of_klein_group() {
        // three cyclic subgroups of order 2 plus the trivial one
        let g = GroupDescriptor::new(0, &[2, 2]).unwrap();
        assert_eq!(prime_points(&g).unwrap().len(), 4);
        let g = GroupDescriptor::new(0, &[2, 4]).unwrap();
        let total: u64 = prime_points(&g)
            .unwrap()
            .iter()
            .map(|p| euler_phi(p.order().to_u64().unwrap()))
            .sum();
        assert_eq!(total, 8);
    }

    #[test]
    fn sectors_mu2() {
        let d = sector_dimensions(&mu(2, &[0, 1])).unwrap();
        let dims: Vec<u64> = d.sectors.iter().map(|s| s.sector_dimension).collect();
        assert_eq!(dims, vec![2, 2]);
        assert_eq!(d.total(), 4);
        assert_eq!(vistoli_kernel_dimension(&d), 2);
    }

    #[test]
    fn sectors_mu6() {
        let d = sector_dimensions(&mu(6, &[0, 1])).unwrap();
        let dims: Vec<u64> = d.sectors.iter().map(|s| s.sector_dimension).collect();
        assert_eq!(dims, vec![2, 2, 4, 4]);
        assert_eq!(d.total(), 12);
        assert_eq!(vistoli_kernel_dimension(&d), 10);
        let supports: Vec<String> = d.sectors.iter().map(|s| s.support.to_string()).collect();
        assert_eq!(supports, vec!["0", "Z/2", "Z/3", "Z/6"]);
    }

    #[test]
    fn trivial_action_and_trivial_group() {
        let d = sector_dimensions(&mu(5, &[0, 0])).unwrap();
        assert!(d.sectors.iter().all(|s| s.fixed_components.len() == 1));
        assert_eq!(d.total(), 10);

        let g = GroupDescriptor::trivial();
        let m = ProjSpaceModel::new(&g, vec![g.zero(), g.zero()], 4).unwrap();
        let d = sector_dimensions(&m).unwrap();
        assert_eq!(d.sectors.len(), 1);
        assert_eq!(vistoli_kernel_dimension(&d), 0);
    }

    #[test]
    fn torus_rejected() {
        let m = ProjSpaceModel::rank_one(&[0, 1], 4).unwrap();
        assert!(matches!(sector_dimensions(&m), Err(Error::InvalidGroup(_))));
    }

    #[test]
    fn euler_phi_values() {
        let got: Vec<u64> = (1..=12).map(euler_phi).collect();
        assert_eq!(got, vec![1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]);
    }

    #[test]
    fn totals_match_ktheory_dimension() {
        for d in 1..=8 {
            let m = mu(d, &[0, 1]);
            let decomposition = sector_dimensions(&m).unwrap();
            assert_eq!(decomposition.total(), ktheory_dimension(&m).unwrap());
            assert_eq!(decomposition.untwisted_dimension(), 2);
        }
        let m = mu(4, &[0, 1, 3]);
        assert_eq!(sector_dimensions(&m).unwrap().total(), 12);
    }
}
