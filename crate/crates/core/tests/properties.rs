use equitau::charclass::{EquivariantBundleSpec, ProjSpaceModel};
use equitau::finitestab::{fixed_locus_of_point, support_subgroup};
use equitau::gradedring::{GradedSeries, HPolynomial};
use equitau::lattice::{smith_normal_form, GroupDescriptor, IntMatrix, TorsionCharacterPoint};
use equitau::reprring::{
    augmentation_order, chern_character, elementary_symmetric, lambda_minus_one, RepRingElement,
};
use equitau::riemannroch::{hrr_chi, weyl_closed_form};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

const TRUNC: usize = 6;

fn series(rank: usize) -> impl Strategy<Value = GradedSeries> {
    prop::collection::vec(
        (prop::collection::vec(0u32..=3, rank), -9i64..=9, 1i64..=4),
        0..6,
    )
    .prop_map(move |terms| {
        let mut s = GradedSeries::zero(rank, TRUNC);
        for (e, p, q) in terms {
            if e.iter().sum::<u32>() as usize <= TRUNC {
                s.add_term(e, BigRational::new(BigInt::from(p), BigInt::from(q)));
            }
        }
        s
    })
}

fn rep(rank: usize) -> impl Strategy<Value = RepRingElement> {
    prop::collection::vec((prop::collection::vec(-3i64..=3, rank), -5i64..=5), 0..5).prop_map(
        move |terms| {
            let g = GroupDescriptor::free(rank);
            RepRingElement::from_terms(&g, terms.into_iter().map(|(w, c)| (w, BigInt::from(c))))
                .unwrap()
        },
    )
}

/// gcd of all k×k minors, by brute force over row and column subsets.
fn determinantal_divisor(rows: &[Vec<i64>], k: usize) -> BigInt {
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        (0..n)
            .flat_map(|last| {
                subsets(last, k - 1).into_iter().map(move |mut s| {
                    s.push(last);
                    s
                })
            })
            .collect()
    }
    let mut g = BigInt::zero();
    for rs in subsets(rows.len(), k) {
        for cs in subsets(rows[0].len(), k) {
            let minor: Vec<Vec<i64>> = rs
                .iter()
                .map(|&r| cs.iter().map(|&c| rows[r][c]).collect())
                .collect();
            g = g.gcd(&IntMatrix::from_rows(&minor).determinant());
        }
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn series_ring_laws(a in series(2), b in series(2), c in series(2)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn rep_ring_laws(a in rep(2), b in rep(2), c in rep(2)) {
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b.add(&c).unwrap()).unwrap(), ab.add(&a.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(ab.augmentation(), a.augmentation() * b.augmentation());
    }

    #[test]
    fn chern_character_is_a_ring_homomorphism(a in rep(2), b in rep(2)) {
        let ch = |x: &RepRingElement| chern_character(x, TRUNC).unwrap();
        prop_assert_eq!(ch(&a.mul(&b).unwrap()), &ch(&a) * &ch(&b));
        prop_assert_eq!(ch(&a.add(&b).unwrap()), &ch(&a) + &ch(&b));
        prop_assert_eq!(ch(&a).constant_term(), BigRational::from_integer(a.augmentation()));
    }

    #[test]
    fn lambda_minus_one_has_order_at_least_count(ws in prop::collection::vec(prop::collection::vec(-2i64..=2, 2), 1..4)) {
        let g = GroupDescriptor::free(2);
        let weights: Vec<_> = ws.iter().map(|w| g.weight(w).unwrap()).collect();
        let l = lambda_minus_one(&g, &weights).unwrap();
        prop_assert!(l.augmentation().is_zero());
        prop_assert!(augmentation_order(&l, 8).unwrap().lower_bound() >= weights.len());
    }

    #[test]
    fn elementary_symmetric_is_invariant(n in 2usize..5, i in 0usize..5, swap in 0usize..4) {
        let i = i.min(n);
        let e = elementary_symmetric(n, i);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(swap % n, (swap + 1) % n);
        prop_assert_eq!(e.permute_variables(&perm).unwrap(), e);
    }

    #[test]
    fn smith_form_matches_determinantal_divisors(
        rows in prop::collection::vec(prop::collection::vec(-6i64..=6, 3), 1..4)
    ) {
        let snf = smith_normal_form(&IntMatrix::from_rows(&rows));
        let mut prev = BigInt::from(1);
        for (k, d) in snf.invariant_factors.iter().enumerate() {
            let dk = determinantal_divisor(&rows, k + 1);
            prop_assert_eq!(d * &prev, dk.clone());
            prop_assert!(d.is_positive());
            prev = dk;
        }
        for k in snf.rank() + 1..=rows.len().min(3) {
            prop_assert!(determinantal_divisor(&rows, k).is_zero());
        }
    }

    #[test]
    fn reduction_is_a_homomorphism(
        p in prop::collection::vec(-5i64..=5, 0..7),
        r in prop::collection::vec(-5i64..=5, 0..7),
        weights in prop::collection::vec(-2i64..=2, 2..4),
    ) {
        let model = ProjSpaceModel::rank_one(&weights, TRUNC).unwrap();
        let rel = model.relation();
        let lift = |c: &[i64]| HPolynomial::new(c.iter().map(|&a| GradedSeries::from_int(1, TRUNC, a)).collect());
        let mut prod = vec![0i64; p.len() + r.len()];
        for (i, a) in p.iter().enumerate() {
            for (j, b) in r.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        let rp = lift(&p).reduce(rel).unwrap();
        let rr = lift(&r).reduce(rel).unwrap();
        prop_assert_eq!(lift(&prod).reduce(rel).unwrap(), &rp * &rr);
        // reducing an already reduced polynomial changes nothing
        let again = HPolynomial::new(rp.coefficients().to_vec()).reduce(rel).unwrap();
        prop_assert_eq!(again, rp);
    }

    #[test]
    fn chi_shifts_by_character(n in -2i64..=4, w in -3i64..=3, weights in prop::collection::vec(-2i64..=2, 2..4)) {
        let model = ProjSpaceModel::rank_one(&weights, TRUNC).unwrap();
        let g = model.group().clone();
        let twisted = EquivariantBundleSpec::LineTwist { degree: n, character: g.weight(&[w]).unwrap() };
        let plain = hrr_chi(&model, &EquivariantBundleSpec::line(&model, n)).unwrap();
        prop_assert_eq!(hrr_chi(&model, &twisted).unwrap(), &GradedSeries::exp_linear(TRUNC, &[w]) * &plain);
    }

    #[test]
    fn weyl_closed_form_serre_symmetry(n in 0i64..12) {
        prop_assert_eq!(weyl_closed_form(n, 10), -weyl_closed_form(-n - 2, 10));
    }

    #[test]
    fn fixed_locus_partitions_coordinates(
        d in 1u64..13,
        ws in prop::collection::vec(0i64..13, 2..6),
        a in 0i64..13,
    ) {
        let g = GroupDescriptor::cyclic(d).unwrap();
        let coords = |w: i64| if d == 1 { vec![] } else { vec![w.rem_euclid(d as i64)] };
        let weights = ws.iter().map(|&w| g.weight(&coords(w)).unwrap()).collect();
        let model = ProjSpaceModel::new(&g, weights, 2).unwrap();
        let values = if d == 1 { vec![] } else { vec![BigRational::new(BigInt::from(a), BigInt::from(d))] };
        let point = TorsionCharacterPoint::new(&g, values).unwrap();
        let fixed = fixed_locus_of_point(&model, &point).unwrap();
        let mut seen: Vec<usize> = fixed.iter().flat_map(|c| c.coordinates.clone()).collect();
        seen.sort();
        prop_assert_eq!(seen, (0..ws.len()).collect::<Vec<_>>());
        prop_assert_eq!(fixed.iter().map(|c| c.dimension() + 1).sum::<usize>(), ws.len());
    }

    #[test]
    fn support_order_is_point_order(orders in prop::collection::vec(1u64..7, 1..3), seed in any::<u64>()) {
        let g = GroupDescriptor::new(0, &orders).unwrap();
        prop_assume!(g.order().unwrap() <= 24);
        let mut s = seed;
        let values = (0..g.num_generators())
            .map(|i| {
                let m = g.modulus(i);
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1);
                BigRational::new(BigInt::from((s >> 33) % m), BigInt::from(m))
            })
            .collect();
        let point = TorsionCharacterPoint::new(&g, values).unwrap();
        let h = support_subgroup(&g, &point).unwrap();
        prop_assert_eq!(BigInt::from(h.order().unwrap()), point.order());
    }
}
