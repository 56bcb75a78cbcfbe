//! Level-`k` representation groups `R(G_I)_k`, holomorphic induction between
//! them, and the map `epsilon: R(G_{i})_k -> R_k(G)`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::group_ring::{sk, GroupRingElt};
use crate::lie::{FaceIndex, LieData, Weight};

use super::{add_into, FusionElt};

/// Element of `R(G_I)_k`, keyed by `Lambda*_{I,k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelRepElt {
    face: FaceIndex,
    level: i64,
    terms: BTreeMap<Weight, i64>,
}

impl LevelRepElt {
    pub fn in_label_set(lie: &LieData, face: &FaceIndex, w: &Weight, k: i64) -> bool {
        w.rank() == lie.rank()
            && face
                .complement(lie.rank())
                .into_iter()
                .all(|i| lie.weight_wall_value(i, &w.0, k) >= 0)
    }

    pub fn from_terms<I: IntoIterator<Item = (Weight, i64)>>(
        lie: &LieData,
        face: FaceIndex,
        k: i64,
        terms: I,
    ) -> Result<Self> {
        lie.validate_face(&face)?;
        if k < 0 {
            return Err(Error::InvalidLevel { min: 0, got: k });
        }
        let mut out = LevelRepElt {
            face,
            level: k,
            terms: BTreeMap::new(),
        };
        for (w, c) in terms {
            lie.check_rank(w.rank())?;
            if !Self::in_label_set(lie, &face, &w, k) {
                return Err(Error::NotInLabelSet {
                    weight: w.to_string(),
                    face: face.to_string(),
                    level: k,
                });
            }
            add_into(&mut out.terms, w, c);
        }
        Ok(out)
    }

    pub fn basis(lie: &LieData, face: FaceIndex, k: i64, mu: &Weight) -> Result<Self> {
        LevelRepElt::from_terms(lie, face, k, [(mu.clone(), 1)])
    }

    pub fn face(&self) -> FaceIndex {
        self.face
    }

    pub fn level(&self) -> i64 {
        self.level
    }

    pub fn terms(&self) -> &BTreeMap<Weight, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &LevelRepElt) -> Result<LevelRepElt> {
        if self.level != other.level {
            return Err(Error::LevelMismatch(self.level, other.level));
        }
        if self.face != other.face {
            return Err(Error::NotSubset {
                sub: other.face.to_string(),
                sup: self.face.to_string(),
            });
        }
        let mut out = self.clone();
        for (w, &c) in &other.terms {
            add_into(&mut out.terms, w.clone(), c);
        }
        Ok(out)
    }
}

/// `ind_I^J`: reduce `mu + rho` into the `J`-cone at level `k + h^vee` and
/// shift back by `rho`.
pub fn holomorphic_induction(lie: &LieData, phi: &LevelRepElt, target: &FaceIndex) -> Result<LevelRepElt> {
    lie.validate_face(target)?;
    if !target.is_subset_of(&phi.face) {
        return Err(Error::NotSubset {
            sub: target.to_string(),
            sup: phi.face.to_string(),
        });
    }
    let m = phi.level + lie.dual_coxeter();
    let rho = lie.rho();
    let mut out = LevelRepElt {
        face: *target,
        level: phi.level,
        terms: BTreeMap::new(),
    };
    for (mu, &c) in &phi.terms {
        let r = lie.reduce_weight_to_cone(&(mu + rho), target, m);
        if r.sign != 0 {
            add_into(&mut out.terms, &r.weight - rho, i64::from(r.sign) * c);
        }
    }
    Ok(out)
}

fn check_singleton(phi: &LevelRepElt) -> Result<()> {
    if phi.face.len() != 1 {
        return Err(Error::WrongFaceSize {
            expected: 1,
            got: phi.face.len(),
        });
    }
    Ok(())
}

/// `epsilon` in the basis: `mu -> sign * nu` where `nu + rho` is the alcove
/// representative of `mu + rho` at level `k + h^vee`.
pub fn epsilon_to_fusion(lie: &LieData, phi: &LevelRepElt) -> Result<FusionElt> {
    check_singleton(phi)?;
    let m = phi.level + lie.dual_coxeter();
    let rho = lie.rho();
    let mut terms = BTreeMap::new();
    for (mu, &c) in &phi.terms {
        let d = lie.dominantize(&(mu + rho), m)?;
        if d.sign != 0 {
            add_into(&mut terms, &d.weight - rho, i64::from(d.sign) * c);
        }
    }
    FusionElt::from_terms(lie, phi.level, terms)
}

/// `epsilon` as `(1/|W_I|) Sk_aff` applied to the anti-invariant
/// `Sk^I(mu + rho)`: every term of the expansion is folded into the alcove
/// with its sign, and the total is divided by `|W_I|`.
pub fn epsilon_via_sk_aff(lie: &LieData, phi: &LevelRepElt) -> Result<FusionElt> {
    check_singleton(phi)?;
    let m = phi.level + lie.dual_coxeter();
    let rho = lie.rho();
    let order = lie.weyl_order(&phi.face) as i64;
    let mut folded: BTreeMap<Weight, i64> = BTreeMap::new();
    for (mu, &c) in &phi.terms {
        let anti = sk(lie, &GroupRingElt::monomial(mu + rho, m), &phi.face)?;
        for (y, &s) in anti.terms() {
            let d = lie.dominantize(y, m)?;
            if d.sign != 0 {
                add_into(&mut folded, d.weight, i64::from(d.sign) * s * c);
            }
        }
    }
    let mut terms = BTreeMap::new();
    for (w, c) in folded {
        if c % order != 0 {
            return Err(Error::Arithmetic(format!("coefficient {c} at {w} not divisible by |W_I| = {order}")));
        }
        add_into(&mut terms, &w - rho, c / order);
    }
    FusionElt::from_terms(lie, phi.level, terms)
}
