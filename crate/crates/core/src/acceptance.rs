//! The acceptance suite: one pass/fail verdict per criterion, each computed
//! against an oracle that does not share code with the pipeline it checks.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::charclass::{EquivariantBundleSpec, ProjSpaceModel};
use crate::finitestab::{ktheory_dimension, sector_dimensions, vistoli_kernel_dimension};
use crate::gradedring::{BundleRingElement, GradedSeries, HPolynomial};
use crate::lattice::GroupDescriptor;
use crate::reprring::{
    augmentation_order, chern_character, gl_augmentation_generators, ideal_membership_certificate,
    RepRingElement, DEFAULT_CERTIFICATE_BOUND,
};
use crate::riemannroch::{hrr_chi, verify_weyl};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl CriterionResult {
    /// `PASS [3] todd-consistency: ...`
    pub fn line(&self) -> String {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        format!("{verdict} [{}] {}: {}", self.id, self.name, self.detail)
    }
}

fn verdict(id: u8, name: &'static str, outcome: Result<String, String>) -> CriterionResult {
    match outcome {
        Ok(detail) => CriterionResult {
            id,
            name,
            pass: true,
            detail,
        },
        Err(detail) => CriterionResult {
            id,
            name,
            pass: false,
            detail,
        },
    }
}

pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    vec![
        weyl_character(),
        pushforward_lemma(seed),
        todd_consistency(),
        nonequivariant_sanity(),
        chern_filtration(seed),
        segal_certificates(),
        twisted_sectors(),
        ring_laws(seed),
    ]
}

pub fn weyl_character() -> CriterionResult {
    let start = Instant::now();
    let outcome = (|| {
        let report = verify_weyl(10, 16).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        if report.rows.len() != 12 {
            return Err(format!("expected 12 rows, got {}", report.rows.len()));
        }
        if let Some(row) = report.rows.iter().find(|r| !r.pass) {
            return Err(format!("row n = {} disagrees", row.n));
        }
        if elapsed >= Duration::from_secs(5) {
            return Err(format!("took {:.2}s", elapsed.as_secs_f64()));
        }
        Ok(format!(
            "n in [-1, 10] agree at truncation 16 in {:.2}s",
            elapsed.as_secs_f64()
        ))
    })();
    verdict(1, "weyl-character", outcome)
}

/// `(p(t) - p(-t)) / (2t)` straight from the integer coefficients of `p`.
fn odd_part_quotient(coeffs: &[i64], truncation: usize) -> GradedSeries {
    let mut out = GradedSeries::zero(1, truncation);
    for (k, &a) in coeffs.iter().enumerate() {
        // p(t) - p(-t) keeps 2 a_k t^k for odd k; dividing by 2t leaves a_k t^{k-1}
        if k % 2 == 1 && k - 1 <= truncation {
            out.add_term(
                vec![(k - 1) as u32],
                BigRational::from_integer(BigInt::from(a)),
            );
        }
    }
    out
}

pub fn pushforward_lemma(seed: u64) -> CriterionResult {
    let truncation = 16;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let outcome = (|| {
        let model = ProjSpaceModel::rank_one(&[1, -1], truncation).map_err(|e| e.to_string())?;
        for case in 0..100 {
            let degree = rng.gen_range(0..=10usize);
            let coeffs: Vec<i64> = (0..=degree).map(|_| rng.gen_range(-20..=20)).collect();
            let p = HPolynomial::new(
                coeffs
                    .iter()
                    .map(|&a| GradedSeries::from_int(1, truncation, a))
                    .collect(),
            );
            let reduced = p.reduce(model.relation()).map_err(|e| e.to_string())?;
            if reduced.pushforward() != odd_part_quotient(&coeffs, truncation) {
                return Err(format!("case {case}: p = {coeffs:?}"));
            }
        }
        Ok("100 random p(h) of degree <= 10 match the odd-part quotient".to_string())
    })();
    verdict(2, "pushforward-lemma", outcome)
}

pub fn todd_consistency() -> CriterionResult {
    let outcome = (|| {
        let model = ProjSpaceModel::rank_one(&[1, -1], 16).map_err(|e| e.to_string())?;
        let rel = model.relation();
        let td = |h: i64, t: i64| {
            BundleRingElement::linear(rel, h, &[t])
                .and_then(|x| x.todd_factor())
                .map_err(|e| e.to_string())
        };
        let product = &td(1, 1)? * &td(1, -1)?;
        let doubled = td(2, 0)?;
        if product == doubled {
            Ok("td(h+t) td(h-t) = td(2h) mod h^2 = t^2 at truncation 16".to_string())
        } else {
            Err(format!("{} != {}", product.render(), doubled.render()))
        }
    })();
    verdict(3, "todd-consistency", outcome)
}

pub fn nonequivariant_sanity() -> CriterionResult {
    let outcome = (|| {
        for m in 1..=3usize {
            let model = ProjSpaceModel::rank_one(&vec![0; m + 1], 4).map_err(|e| e.to_string())?;
            for n in 0..=6i64 {
                let chi = hrr_chi(&model, &EquivariantBundleSpec::line(&model, n))
                    .map_err(|e| e.to_string())?;
                let expected =
                    BigRational::from_integer(BigInt::from(binomial(n + m as i64, m as i64)));
                if chi.constant_term() != expected {
                    return Err(format!(
                        "P^{m}, O({n}): got {}, expected {expected}",
                        chi.constant_term()
                    ));
                }
            }
        }
        Ok("chi(O(n)) on P^m equals C(n+m, m) for n <= 6, m <= 3".to_string())
    })();
    verdict(4, "nonequivariant-sanity", outcome)
}

/// A random element of `R(T)` with augmentation zero.
pub fn random_augmentation_zero(rng: &mut impl Rng, group: &GroupDescriptor) -> RepRingElement {
    let rank = group.free_rank();
    let mut a = RepRingElement::zero(group);
    for _ in 0..rng.gen_range(1..=3) {
        let w: Vec<i64> = (0..rank).map(|_| rng.gen_range(-2..=2)).collect();
        let c = BigInt::from(rng.gen_range(-3..=3));
        a.add_term(group.weight(&w).expect("free group"), c)
            .expect("weight in group");
    }
    let aug = a.augmentation();
    a.add_term(group.zero(), -aug).expect("zero weight");
    a
}

pub fn chern_filtration(seed: u64) -> CriterionResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x0f11);
    let outcome = (|| {
        for case in 0..50 {
            let group = GroupDescriptor::free(rng.gen_range(1..=2));
            let k = rng.gen_range(1..=6u32);
            let mut product = RepRingElement::one(&group);
            for _ in 0..k {
                let f = random_augmentation_zero(&mut rng, &group);
                product = product.mul(&f).map_err(|e| e.to_string())?;
            }
            let order = augmentation_order(&product, 12).map_err(|e| e.to_string())?;
            if order.lower_bound() < k as usize {
                return Err(format!(
                    "case {case}: product of {k} factors has order {order}"
                ));
            }
        }
        Ok("50 random products of k <= 6 factors in I have order >= k".to_string())
    })();
    verdict(5, "chern-filtration", outcome)
}

/// `(t_1 - 1)^d` in `R(T)` for the maximal torus of `GL_n`.
pub fn shifted_power(n: usize, d: u32) -> RepRingElement {
    let group = GroupDescriptor::free(n);
    let mut t1 = vec![0; n];
    t1[0] = 1;
    let base =
        RepRingElement::from_terms(&group, [(t1, BigInt::one()), (vec![0; n], -BigInt::one())])
            .expect("weights of the right length");
    base.pow(d)
}

pub fn segal_certificates() -> CriterionResult {
    let outcome = (|| {
        let mut found = Vec::new();
        for n in [2usize, 3] {
            let target = shifted_power(n, n as u32);
            let gens = gl_augmentation_generators(n);
            let cert = ideal_membership_certificate(&target, &gens, DEFAULT_CERTIFICATE_BOUND)
                .map_err(|e| e.to_string())?
                .ok_or_else(|| {
                    format!("no certificate for n = {n} within bound {DEFAULT_CERTIFICATE_BOUND}")
                })?;
            if !cert.verify(&target, &gens) {
                return Err(format!("certificate for n = {n} fails re-expansion"));
            }
            found.push(format!("n={n} at D={}", cert.bound));
        }
        Ok(format!(
            "certificates found and re-verified ({})",
            found.join(", ")
        ))
    })();
    verdict(6, "segal-certificates", outcome)
}

pub fn twisted_sectors() -> CriterionResult {
    let outcome = (|| {
        for d in 1..=8u64 {
            let group = GroupDescriptor::cyclic(d).map_err(|e| e.to_string())?;
            let coords = |w: i64| {
                if group.num_generators() == 0 {
                    vec![]
                } else {
                    vec![w]
                }
            };
            let weights = vec![
                group.weight(&coords(0)).map_err(|e| e.to_string())?,
                group.weight(&coords(1)).map_err(|e| e.to_string())?,
            ];
            let model = ProjSpaceModel::new(&group, weights, 4).map_err(|e| e.to_string())?;
            let decomposition = sector_dimensions(&model).map_err(|e| e.to_string())?;
            let ktheory = ktheory_dimension(&model).map_err(|e| e.to_string())?;
            let total = decomposition.total();
            let vistoli = vistoli_kernel_dimension(&decomposition);
            if total != 2 * d || ktheory != 2 * d || vistoli != 2 * d - 2 {
                return Err(format!(
                    "d = {d}: total {total}, K-theory {ktheory}, kernel {vistoli}"
                ));
            }
        }
        Ok("mu_d on P^1 (0,1), d <= 8: total 2d = dim K-theory, kernel 2d - 2".to_string())
    })();
    verdict(7, "twisted-sectors", outcome)
}

pub fn random_series(rng: &mut impl Rng, rank: usize, truncation: usize) -> GradedSeries {
    let mut s = GradedSeries::zero(rank, truncation);
    for _ in 0..rng.gen_range(0..=5) {
        let exps: Vec<u32> = (0..rank).map(|_| rng.gen_range(0..=3)).collect();
        let c = BigRational::new(
            BigInt::from(rng.gen_range(-9..=9)),
            BigInt::from(rng.gen_range(1..=4)),
        );
        if exps.iter().sum::<u32>() as usize <= truncation {
            s.add_term(exps, c);
        }
    }
    s
}

pub fn random_rep(rng: &mut impl Rng, group: &GroupDescriptor) -> RepRingElement {
    let mut a = RepRingElement::zero(group);
    for _ in 0..rng.gen_range(0..=4) {
        let w: Vec<i64> = (0..group.num_generators())
            .map(|_| rng.gen_range(-3..=3))
            .collect();
        a.add_term(
            group.weight(&w).expect("in range"),
            BigInt::from(rng.gen_range(-5..=5)),
        )
        .expect("weight in group");
    }
    a
}

pub fn ring_laws(seed: u64) -> CriterionResult {
    const CASES: usize = 200;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x1a55);
    let outcome = (|| {
        for case in 0..CASES {
            let rank = rng.gen_range(1..=2);
            let trunc = 6;
            let (a, b, c) = (
                random_series(&mut rng, rank, trunc),
                random_series(&mut rng, rank, trunc),
                random_series(&mut rng, rank, trunc),
            );
            if &(&a * &b) * &c != &a * &(&b * &c) {
                return Err(format!("series case {case}: associativity"));
            }
            if &a * &(&b + &c) != &(&a * &b) + &(&a * &c) {
                return Err(format!("series case {case}: distributivity"));
            }
            if &a * &b != &b * &a {
                return Err(format!("series case {case}: commutativity"));
            }
        }
        let groups = [
            GroupDescriptor::free(1),
            GroupDescriptor::free(2),
            GroupDescriptor::new(1, &[3]).expect("valid"),
        ];
        for case in 0..CASES {
            let group = &groups[case % groups.len()];
            let (a, b, c) = (
                random_rep(&mut rng, group),
                random_rep(&mut rng, group),
                random_rep(&mut rng, group),
            );
            let err = |e: crate::error::Error| e.to_string();
            let ab = a.mul(&b).map_err(err)?;
            if ab.mul(&c).map_err(err)? != a.mul(&b.mul(&c).map_err(err)?).map_err(err)? {
                return Err(format!("rep case {case}: associativity"));
            }
            let lhs = a.mul(&b.add(&c).map_err(err)?).map_err(err)?;
            if lhs != ab.add(&a.mul(&c).map_err(err)?).map_err(err)? {
                return Err(format!("rep case {case}: distributivity"));
            }
            if ab.augmentation() != a.augmentation() * b.augmentation() {
                return Err(format!(
                    "rep case {case}: augmentation is not multiplicative"
                ));
            }
            if group.is_free() {
                let trunc = 6;
                let ch = |x: &RepRingElement| chern_character(x, trunc).map_err(err);
                if ch(&ab)? != &ch(&a)? * &ch(&b)?
                    || ch(&a.add(&b).map_err(err)?)? != &ch(&a)? + &ch(&b)?
                {
                    return Err(format!("rep case {case}: ch is not a ring homomorphism"));
                }
            }
        }
        Ok(format!(
            "{CASES} series cases and {CASES} representation-ring cases"
        ))
    })();
    verdict(8, "ring-laws", outcome)
}

pub fn all_pass(results: &[CriterionResult]) -> bool {
    results.iter().all(|r| r.pass)
}
