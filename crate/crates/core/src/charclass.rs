//! Projective-space models and the characteristic classes of their standard
//! equivariant bundles.
//!
//! Conventions: `V = ⊕ k_{w_i}`, `P(V)` is the space of lines in `V`, the
//! Chow ring is `S[h]/∏(h + w_i·t)` with `h = c_1(O(1))`, and the tangent
//! bundle is the Euler-sequence difference `⊕_i O(1)⊗χ_{w_i} - O`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gradedring::{BundleRelation, BundleRingElement};
use crate::lattice::{GroupDescriptor, Weight};

/// `P(V)` for `V = ⊕_i k_{w_i}` under a diagonalizable group.
#[derive(Debug, Clone)]
pub struct ProjSpaceModel {
    group: GroupDescriptor,
    weights: Vec<Weight>,
    truncation: usize,
    relation: Arc<BundleRelation>,
}

impl ProjSpaceModel {
    /// Needs at least two weights (`n ≥ 1`), all in `group`.
    pub fn new(group: &GroupDescriptor, weights: Vec<Weight>, truncation: usize) -> Result<Self> {
        if weights.len() < 2 {
            return Err(Error::InvalidModel(format!(
                "need at least 2 weights for P^n with n >= 1, got {}",
                weights.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| !group.contains(w)) {
            return Err(Error::InvalidWeight {
                coords: w.coords().to_vec(),
                group: group.to_string(),
            });
        }
        let roots = weights.iter().map(|w| w.free_part(group)).collect();
        let relation = BundleRelation::new(group.free_rank(), truncation, roots)?;
        Ok(ProjSpaceModel {
            group: group.clone(),
            weights,
            truncation,
            relation,
        })
    }

    /// A torus model from raw weight vectors of a common length.
    pub fn torus(weights: &[Vec<i64>], truncation: usize) -> Result<Self> {
        let rank = weights.first().map_or(0, Vec::len);
        let group = GroupDescriptor::free(rank);
        let ws = weights
            .iter()
            .map(|w| group.weight(w))
            .collect::<Result<_>>()?;
        Self::new(&group, ws, truncation)
    }

    /// Rank-one torus with the given integer weights.
    pub fn rank_one(weights: &[i64], truncation: usize) -> Result<Self> {
        let ws: Vec<Vec<i64>> = weights.iter().map(|&w| vec![w]).collect();
        Self::torus(&ws, truncation)
    }

    pub fn group(&self) -> &GroupDescriptor {
        &self.group
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// Rank of the acting torus part.
    pub fn rank(&self) -> usize {
        self.group.free_rank()
    }

    /// Projective dimension `n`.
    pub fn dimension(&self) -> usize {
        self.weights.len() - 1
    }

    pub fn relation(&self) -> &Arc<BundleRelation> {
        &self.relation
    }
}

/// The equivariant bundles supported on a [`ProjSpaceModel`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EquivariantBundleSpec {
    /// `O(degree) ⊗ χ`; negative degrees give duals of twists.
    LineTwist {
        degree: i64,
        character: Weight,
    },
    /// The tangent bundle, as a virtual class via the Euler sequence.
    Tangent,
    DirectSum(Vec<EquivariantBundleSpec>),
    Tensor(Box<EquivariantBundleSpec>, Box<EquivariantBundleSpec>),
}

impl EquivariantBundleSpec {
    /// `O(degree)` with the trivial character.
    pub fn line(model: &ProjSpaceModel, degree: i64) -> Self {
        EquivariantBundleSpec::LineTwist {
            degree,
            character: model.group().zero(),
        }
    }
}

/// A degree-1 class `h_coeff·h + t_coeffs·t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearRoot {
    pub h_coeff: i64,
    pub t_coeffs: Vec<i64>,
}

impl LinearRoot {
    fn plus(&self, other: &LinearRoot) -> LinearRoot {
        LinearRoot {
            h_coeff: self.h_coeff + other.h_coeff,
            t_coeffs: self
                .t_coeffs
                .iter()
                .zip(&other.t_coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.h_coeff == 0 && self.t_coeffs.iter().all(|&c| c == 0)
    }

    pub fn to_element(&self, relation: &Arc<BundleRelation>) -> Result<BundleRingElement> {
        BundleRingElement::linear(relation, self.h_coeff, &self.t_coeffs)
    }
}

/// Chern roots of a virtual bundle `[positive] - [negative]`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ChernRoots {
    pub positive: Vec<LinearRoot>,
    pub negative: Vec<LinearRoot>,
}

impl ChernRoots {
    /// Virtual rank.
    pub fn rank(&self) -> i64 {
        self.positive.len() as i64 - self.negative.len() as i64
    }

    /// First Chern class `Σ positive - Σ negative` as a linear root.
    pub fn first_chern_class(&self, rank: usize) -> LinearRoot {
        let zero = LinearRoot {
            h_coeff: 0,
            t_coeffs: vec![0; rank],
        };
        let pos = self.positive.iter().fold(zero.clone(), |a, r| a.plus(r));
        let neg = self.negative.iter().fold(zero, |a, r| a.plus(r));
        LinearRoot {
            h_coeff: pos.h_coeff - neg.h_coeff,
            t_coeffs: pos
                .t_coeffs
                .iter()
                .zip(&neg.t_coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

/// Chern roots of `bundle`: `O(m)⊗χ` has the single root `m·h + χ·t`; the
/// tangent bundle has roots `h + w_i·t` and one trivial negative root.
pub fn chern_roots(model: &ProjSpaceModel, bundle: &EquivariantBundleSpec) -> Result<ChernRoots> {
    let group = model.group();
    Ok(match bundle {
        EquivariantBundleSpec::LineTwist { degree, character } => {
            if !group.contains(character) {
                return Err(Error::InvalidWeight {
                    coords: character.coords().to_vec(),
                    group: group.to_string(),
                });
            }
            ChernRoots {
                positive: vec![LinearRoot {
                    h_coeff: *degree,
                    t_coeffs: character.free_part(group),
                }],
                negative: Vec::new(),
            }
        }
        EquivariantBundleSpec::Tangent => ChernRoots {
            positive: model
                .weights()
                .iter()
                .map(|w| LinearRoot {
                    h_coeff: 1,
                    t_coeffs: w.free_part(group),
                })
                .collect(),
            negative: vec![LinearRoot {
                h_coeff: 0,
                t_coeffs: vec![0; model.rank()],
            }],
        },
        EquivariantBundleSpec::DirectSum(parts) => {
            let mut out = ChernRoots::default();
            for p in parts {
                let r = chern_roots(model, p)?;
                out.positive.extend(r.positive);
                out.negative.extend(r.negative);
            }
            out
        }
        EquivariantBundleSpec::Tensor(a, b) => {
            let ra = chern_roots(model, a)?;
            let rb = chern_roots(model, b)?;
            let pairs = |xs: &[LinearRoot], ys: &[LinearRoot]| -> Vec<LinearRoot> {
                xs.iter()
                    .flat_map(|x| ys.iter().map(move |y| x.plus(y)))
                    .collect()
            };
            // (P - N)(P' - N') = PP' + NN' - PN' - NP'
            let mut positive = pairs(&ra.positive, &rb.positive);
            positive.extend(pairs(&ra.negative, &rb.negative));
            let mut negative = pairs(&ra.positive, &rb.negative);
            negative.extend(pairs(&ra.negative, &rb.positive));
            ChernRoots { positive, negative }
        }
    })
}

/// `ch(E) = Σ_pos e^{x} - Σ_neg e^{x}` in the model's Chow ring.
pub fn chern_character_bundle(
    model: &ProjSpaceModel,
    bundle: &EquivariantBundleSpec,
) -> Result<BundleRingElement> {
    let roots = chern_roots(model, bundle)?;
    let rel = model.relation();
    let mut out = BundleRingElement::zero(rel);
    for r in &roots.positive {
        out = &out + &r.to_element(rel)?.exp()?;
    }
    for r in &roots.negative {
        out = &out - &r.to_element(rel)?.exp()?;
    }
    Ok(out)
}

/// `td(E) = ∏_pos x/(1-e^{-x}) · ∏_neg (1-e^{-x})/x`.
pub fn todd_class_bundle(
    model: &ProjSpaceModel,
    bundle: &EquivariantBundleSpec,
) -> Result<BundleRingElement> {
    let roots = chern_roots(model, bundle)?;
    let rel = model.relation();
    let mut out = BundleRingElement::one(rel);
    for r in roots.positive.iter().filter(|r| !r.is_zero()) {
        out = &out * &r.to_element(rel)?.todd_factor()?;
    }
    for r in roots.negative.iter().filter(|r| !r.is_zero()) {
        out = &out * &r.to_element(rel)?.inverse_todd_factor()?;
    }
    Ok(out)
}

/// The Todd class of the tangent bundle of the model.
pub fn todd_class_tangent(model: &ProjSpaceModel) -> Result<BundleRingElement> {
    todd_class_bundle(model, &EquivariantBundleSpec::Tangent)
}
