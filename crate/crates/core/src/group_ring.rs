//! Sparse elements of `Z[Lambda*]`, anti-invariants of the finite groups
//! `W_I` at a fixed level, and the skew-symmetrization maps between them.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::{FaceIndex, LieData, Weight};

/// Finitely supported `Weight -> Z` with a level context `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingElt {
    rank: usize,
    level: i64,
    terms: BTreeMap<Weight, i64>,
}

fn add_into(terms: &mut BTreeMap<Weight, i64>, w: Weight, c: i64) {
    use std::collections::btree_map::Entry;
    if c == 0 {
        return;
    }
    match terms.entry(w) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if *e.get() == 0 {
                e.remove();
            }
        }
    }
}

impl GroupRingElt {
    pub fn zero(rank: usize, level: i64) -> Self {
        GroupRingElt {
            rank,
            level,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(weight: Weight, level: i64) -> Self {
        let mut e = GroupRingElt::zero(weight.rank(), level);
        e.add_term(weight, 1);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (Weight, i64)>>(rank: usize, level: i64, terms: I) -> Result<Self> {
        let mut e = GroupRingElt::zero(rank, level);
        for (w, c) in terms {
            if w.rank() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    got: w.rank(),
                });
            }
            e.add_term(w, c);
        }
        Ok(e)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn level(&self) -> i64 {
        self.level
    }

    pub fn terms(&self) -> &BTreeMap<Weight, i64> {
        &self.terms
    }

    pub fn coeff(&self, w: &Weight) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Weight, c: i64) {
        add_into(&mut self.terms, w, c);
    }

    fn check_context(&self, other: &GroupRingElt) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                got: other.rank,
            });
        }
        if self.level != other.level {
            return Err(Error::LevelMismatch(self.level, other.level));
        }
        Ok(())
    }

    pub fn add(&self, other: &GroupRingElt) -> Result<GroupRingElt> {
        self.check_context(other)?;
        let mut out = self.clone();
        for (w, &c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        Ok(out)
    }

    pub fn scale(&self, s: i64) -> GroupRingElt {
        let mut out = GroupRingElt::zero(self.rank, self.level);
        for (w, &c) in &self.terms {
            out.add_term(w.clone(), s * c);
        }
        out
    }

    /// Convolution product.
    pub fn multiply(&self, other: &GroupRingElt) -> Result<GroupRingElt> {
        self.check_context(other)?;
        let mut out = GroupRingElt::zero(self.rank, self.level);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                out.add_term(a + b, ca * cb);
            }
        }
        Ok(out)
    }

    /// Applies `s_i` at the element's level to every exponent.
    pub fn reflect(&self, lie: &LieData, i: usize) -> Result<GroupRingElt> {
        lie.check_wall(i)?;
        let mut out = GroupRingElt::zero(self.rank, self.level);
        for (w, &c) in &self.terms {
            out.add_term(lie.affine_reflect_weight(i, w, self.level)?, c);
        }
        Ok(out)
    }

    /// Linear reflection `s_i`, `i >= 1`, ignoring the level.
    fn reflect_linear(&self, lie: &LieData, i: usize) -> GroupRingElt {
        let mut out = GroupRingElt::zero(self.rank, self.level);
        let root = lie.wall_root(i);
        for (w, &c) in &self.terms {
            let p = lie.weight_wall_value(i, &w.0, 0);
            let image = Weight(w.0.iter().zip(root).map(|(x, a)| x - p * a).collect());
            out.add_term(image, c);
        }
        out
    }

    /// First generator of `W_I` (a wall label) under which the element is not
    /// anti-invariant.
    pub fn anti_invariance_violation(&self, lie: &LieData, face: &FaceIndex) -> Result<Option<usize>> {
        lie.validate_face(face)?;
        for i in face.complement(lie.rank()) {
            if self.reflect(lie, i)? != self.scale(-1) {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// First `i >= 1` with `s_i(chi) != chi` for the linear Weyl action.
    pub fn invariance_violation(&self, lie: &LieData) -> Option<usize> {
        (1..=lie.rank()).find(|&i| self.reflect_linear(lie, i) != *self)
    }

    pub fn to_document(&self) -> GroupRingDocument {
        GroupRingDocument {
            level: self.level,
            terms: self
                .terms
                .iter()
                .map(|(w, &c)| TermDocument {
                    weight: w.0.clone(),
                    coeff: c,
                })
                .collect(),
        }
    }

    pub fn from_document(rank: usize, doc: &GroupRingDocument) -> Result<Self> {
        GroupRingElt::from_terms(
            rank,
            doc.level,
            doc.terms.iter().map(|t| (Weight(t.weight.clone()), t.coeff)),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDocument {
    pub weight: Vec<i64>,
    pub coeff: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRingDocument {
    pub level: i64,
    pub terms: Vec<TermDocument>,
}

/// `Sk^I(phi) = sum_{w in W_I} (-1)^{l(w)} w . phi` at the element's level.
pub fn sk(lie: &LieData, phi: &GroupRingElt, face: &FaceIndex) -> Result<GroupRingElt> {
    lie.check_rank(phi.rank())?;
    let group = lie.weyl_group(face)?;
    let mut out = GroupRingElt::zero(phi.rank, phi.level);
    for el in &group.elements {
        for (w, &c) in &phi.terms {
            out.add_term(el.act_weight(w, phi.level), el.sign() * c);
        }
    }
    Ok(out)
}

/// A `W_I`-anti-invariant stored by its coefficients on the regular
/// representatives `<mu, alpha_i^vee> + m delta_{i,0} >= 1`, `i` not in `I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntiInvariant {
    face: FaceIndex,
    rank: usize,
    level: i64,
    terms: BTreeMap<Weight, i64>,
}

impl AntiInvariant {
    pub fn zero(face: FaceIndex, rank: usize, level: i64) -> Self {
        AntiInvariant {
            face,
            rank,
            level,
            terms: BTreeMap::new(),
        }
    }

    pub fn is_regular(lie: &LieData, face: &FaceIndex, w: &Weight, level: i64) -> bool {
        face.complement(lie.rank())
            .into_iter()
            .all(|i| lie.weight_wall_value(i, &w.0, level) >= 1)
    }

    pub fn from_representatives<I: IntoIterator<Item = (Weight, i64)>>(
        lie: &LieData,
        face: FaceIndex,
        level: i64,
        terms: I,
    ) -> Result<Self> {
        lie.validate_face(&face)?;
        if level < 1 {
            return Err(Error::InvalidLevel { min: 1, got: level });
        }
        let mut out = AntiInvariant::zero(face, lie.rank(), level);
        for (w, c) in terms {
            lie.check_rank(w.rank())?;
            if !Self::is_regular(lie, &face, &w, level) {
                return Err(Error::NotInLabelSet {
                    weight: w.to_string(),
                    face: face.to_string(),
                    level,
                });
            }
            add_into(&mut out.terms, w, c);
        }
        Ok(out)
    }

    /// Reads off the cone coordinates of an anti-invariant element.
    pub fn from_group_ring(lie: &LieData, phi: &GroupRingElt, face: &FaceIndex) -> Result<Self> {
        lie.check_rank(phi.rank())?;
        if let Some(generator) = phi.anti_invariance_violation(lie, face)? {
            return Err(Error::NotAntiInvariant { generator });
        }
        let reps = phi
            .terms
            .iter()
            .filter(|(w, _)| Self::is_regular(lie, face, w, phi.level))
            .map(|(w, &c)| (w.clone(), c));
        AntiInvariant::from_representatives(lie, *face, phi.level, reps)
    }

    pub fn face(&self) -> FaceIndex {
        self.face
    }

    pub fn level(&self) -> i64 {
        self.level
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &BTreeMap<Weight, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &AntiInvariant) -> Result<AntiInvariant> {
        if self.face != other.face {
            return Err(Error::NotSubset {
                sub: other.face.to_string(),
                sup: self.face.to_string(),
            });
        }
        if self.level != other.level {
            return Err(Error::LevelMismatch(self.level, other.level));
        }
        let mut out = self.clone();
        for (w, &c) in &other.terms {
            add_into(&mut out.terms, w.clone(), c);
        }
        Ok(out)
    }

    pub fn expand(&self, lie: &LieData) -> Result<GroupRingElt> {
        let mut phi = GroupRingElt::zero(self.rank, self.level);
        for (w, &c) in &self.terms {
            phi.add_term(w.clone(), c);
        }
        sk(lie, &phi, &self.face)
    }

    /// `Sk_I^J`, computed representative by representative: each `x` goes to
    /// the sign of the reduction of `x` into the `J`-cone times that point.
    pub fn restrict_to(&self, lie: &LieData, target: &FaceIndex) -> Result<AntiInvariant> {
        lie.validate_face(target)?;
        if !target.is_subset_of(&self.face) {
            return Err(Error::NotSubset {
                sub: target.to_string(),
                sup: self.face.to_string(),
            });
        }
        let mut out = AntiInvariant::zero(*target, self.rank, self.level);
        for (w, &c) in &self.terms {
            let r = lie.reduce_weight_to_cone(w, target, self.level);
            add_into(&mut out.terms, r.weight, i64::from(r.sign) * c);
        }
        Ok(out)
    }

    /// Module action of a `W`-invariant `chi`.
    pub fn invariant_action(&self, lie: &LieData, chi: &GroupRingElt) -> Result<AntiInvariant> {
        lie.check_rank(chi.rank())?;
        if let Some(generator) = chi.invariance_violation(lie) {
            return Err(Error::NotInvariant { generator });
        }
        let chi = GroupRingElt {
            level: self.level,
            ..chi.clone()
        };
        let product = chi.multiply(&self.expand(lie)?)?;
        AntiInvariant::from_group_ring(lie, &product, &self.face)
    }

    pub fn to_document(&self) -> AntiInvariantDocument {
        AntiInvariantDocument {
            face: self.face.members(),
            level: self.level,
            terms: self
                .terms
                .iter()
                .map(|(w, &c)| TermDocument {
                    weight: w.0.clone(),
                    coeff: c,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AntiInvariantDocument {
    pub face: Vec<usize>,
    pub level: i64,
    pub terms: Vec<TermDocument>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::lie;
    use proptest::prelude::*;

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    fn elt(level: i64, terms: &[(&[i64], i64)]) -> GroupRingElt {
        let rank = terms.first().map_or(1, |t| t.0.len());
        GroupRingElt::from_terms(rank, level, terms.iter().map(|(v, c)| (w(v), *c))).unwrap()
    }

    fn face(m: &[usize], rank: usize) -> FaceIndex {
        FaceIndex::new(m, rank).unwrap()
    }

    #[test]
    fn multiplication_examples() {
        let a = elt(3, &[(&[1], 1), (&[-1], 1)]);
        let one = elt(3, &[(&[0], 1)]);
        assert_eq!(one.multiply(&a).unwrap(), a);
        assert_eq!(elt(3, &[(&[1], 1)]).multiply(&elt(3, &[(&[1], 1)])).unwrap(), elt(3, &[(&[2], 1)]));
        assert_eq!(a.multiply(&a).unwrap(), elt(3, &[(&[2], 1), (&[0], 2), (&[-2], 1)]));
        assert_eq!(a.multiply(&elt(4, &[(&[0], 1)])), Err(Error::LevelMismatch(3, 4)));
        let cancel = elt(3, &[(&[1], 1), (&[1], -1)]);
        assert!(cancel.is_zero());
    }

    #[test]
    fn sk_examples() {
        let a1 = lie("A1");
        assert_eq!(sk(&a1, &elt(3, &[(&[1], 1)]), &face(&[0], 1)).unwrap(), elt(3, &[(&[1], 1), (&[-1], -1)]));
        assert_eq!(sk(&a1, &elt(3, &[(&[1], 1)]), &face(&[1], 1)).unwrap(), elt(3, &[(&[1], 1), (&[5], -1)]));
        assert!(sk(&a1, &elt(3, &[(&[0], 1)]), &face(&[0], 1)).unwrap().is_zero());
        assert!(sk(&a1, &elt(3, &[(&[3], 1)]), &face(&[1], 1)).unwrap().is_zero());
    }

    #[test]
    fn roundtrip_examples() {
        let a1 = lie("A1");
        let phi = elt(3, &[(&[1], 1), (&[-1], -1)]);
        let anti = AntiInvariant::from_group_ring(&a1, &phi, &face(&[0], 1)).unwrap();
        assert_eq!(anti.terms().iter().collect::<Vec<_>>(), vec![(&w(&[1]), &1)]);
        assert_eq!(anti.expand(&a1).unwrap(), phi);
        let zero = GroupRingElt::zero(1, 3);
        assert!(AntiInvariant::from_group_ring(&a1, &zero, &face(&[0], 1)).unwrap().is_zero());
        let bad = elt(3, &[(&[1], 1)]);
        assert_eq!(
            AntiInvariant::from_group_ring(&a1, &bad, &face(&[0], 1)),
            Err(Error::NotAntiInvariant { generator: 1 })
        );
    }

    #[test]
    fn restriction_examples() {
        let a1 = lie("A1");
        let full = FaceIndex::full(1);
        let x = AntiInvariant::from_representatives(&a1, full, 3, [(w(&[2]), 1)]).unwrap();
        assert_eq!(x.restrict_to(&a1, &full).unwrap(), x);
        let r = x.restrict_to(&a1, &face(&[0], 1)).unwrap();
        assert_eq!(r.terms().iter().collect::<Vec<_>>(), vec![(&w(&[2]), &1)]);
        let y = AntiInvariant::from_representatives(&a1, full, 3, [(w(&[-1]), 1)]).unwrap();
        let r = y.restrict_to(&a1, &face(&[0], 1)).unwrap();
        assert_eq!(r.terms().iter().collect::<Vec<_>>(), vec![(&w(&[1]), &-1)]);
        assert!(r.restrict_to(&a1, &face(&[1], 1)).is_err());
    }

    #[test]
    fn invariant_action_examples() {
        let a1 = lie("A1");
        let phi = AntiInvariant::from_representatives(&a1, face(&[0], 1), 3, [(w(&[1]), 1)]).unwrap();
        assert_eq!(phi.invariant_action(&a1, &elt(3, &[(&[0], 1)])).unwrap(), phi);
        let chi = elt(3, &[(&[1], 1), (&[-1], 1)]);
        let got = phi.invariant_action(&a1, &chi).unwrap();
        assert_eq!(got.terms().iter().collect::<Vec<_>>(), vec![(&w(&[2]), &1)]);
        assert_eq!(
            phi.invariant_action(&a1, &elt(3, &[(&[1], 1)])),
            Err(Error::NotInvariant { generator: 1 })
        );
    }

    /// Regular representatives of a random anti-invariant, from random
    /// coefficients on a small box of weights.
    fn random_anti(lie: &LieData, f: FaceIndex, level: i64, coeffs: &[i64]) -> AntiInvariant {
        let l = lie.rank();
        let mut reps = vec![];
        let mut idx = 0;
        for a in -3..=3 {
            for b in -3..=3 {
                let v = if l == 1 { w(&[a]) } else { w(&[a, b]) };
                if (l == 1 && b != 0) || !AntiInvariant::is_regular(lie, &f, &v, level) {
                    continue;
                }
                reps.push((v, coeffs[idx % coeffs.len()]));
                idx += 1;
            }
        }
        AntiInvariant::from_representatives(lie, f, level, reps).unwrap()
    }

    #[test]
    fn expansion_roundtrip_and_restriction_identities() {
        for name in ["A1", "A2", "C2", "G2"] {
            let data = lie(name);
            let l = data.rank();
            let level = data.dual_coxeter() + 2;
            for i in FaceIndex::all(l) {
                let phi = random_anti(&data, i, level, &[1, -2, 3, 0, 5]);
                let expanded = phi.expand(&data).unwrap();
                assert_eq!(expanded.anti_invariance_violation(&data, &i).unwrap(), None);
                assert_eq!(AntiInvariant::from_group_ring(&data, &expanded, &i).unwrap(), phi);
                let order = data.weyl_order(&i) as i64;
                for j in FaceIndex::all(l).into_iter().filter(|j| j.is_subset_of(&i)) {
                    let down = phi.restrict_to(&data, &j).unwrap();
                    // (1/|W_I|) Sk_J agrees with the basis-wise formula
                    let direct = sk(&data, &expanded, &j).unwrap();
                    assert_eq!(direct, down.expand(&data).unwrap().scale(order), "{name} {i} {j}");
                    for k in FaceIndex::all(l).into_iter().filter(|k| k.is_subset_of(&j)) {
                        assert_eq!(
                            down.restrict_to(&data, &k).unwrap(),
                            phi.restrict_to(&data, &k).unwrap()
                        );
                    }
                    let chi = GroupRingElt::from_terms(
                        l,
                        level,
                        [(Weight::fundamental(l, 0), 1)],
                    )
                    .unwrap();
                    let chi = sk_character_oracle(&data, &chi);
                    assert_eq!(
                        phi.invariant_action(&data, &chi).unwrap().restrict_to(&data, &j).unwrap(),
                        down.invariant_action(&data, &chi).unwrap()
                    );
                }
            }
        }
    }

    /// Orbit sum of a weight under the finite Weyl group, built by closing
    /// under the linear reflections.
    fn sk_character_oracle(lie: &LieData, seed: &GroupRingElt) -> GroupRingElt {
        let mut orbit: std::collections::BTreeSet<Weight> = seed.terms().keys().cloned().collect();
        loop {
            let mut grown = orbit.clone();
            for x in &orbit {
                for i in 1..=lie.rank() {
                    let p = lie.weight_wall_value(i, &x.0, 0);
                    grown.insert(Weight(x.0.iter().zip(lie.wall_root(i)).map(|(a, r)| a - p * r).collect()));
                }
            }
            if grown.len() == orbit.len() {
                break;
            }
            orbit = grown;
        }
        GroupRingElt::from_terms(lie.rank(), seed.level(), orbit.into_iter().map(|x| (x, 1))).unwrap()
    }

    #[test]
    fn document_roundtrip() {
        let e = elt(5, &[(&[1, 0], 2), (&[0, -1], -1)]);
        let json = serde_json::to_string(&e.to_document()).unwrap();
        let back: GroupRingDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(GroupRingElt::from_document(2, &back).unwrap(), e);
    }

    proptest! {
        #[test]
        fn sk_sign_rule(a in -6i64..6, b in -6i64..6, m in 1i64..7, f in 1u32..8, g in 0usize..3) {
            let data = lie("A2");
            let i = FaceIndex::from_bits(f).unwrap();
            prop_assume!(!i.contains(g));
            let nu = w(&[a, b]);
            let base = sk(&data, &GroupRingElt::monomial(nu.clone(), m), &i).unwrap();
            let moved = data.affine_reflect_weight(g, &nu, m).unwrap();
            let image = sk(&data, &GroupRingElt::monomial(moved, m), &i).unwrap();
            prop_assert_eq!(image, base.scale(-1));
        }

        #[test]
        fn module_action_is_associative(c1 in -2i64..3, c2 in -2i64..3, seed in 0usize..4) {
            let data = lie("A2");
            let level = 5;
            let i = FaceIndex::singleton(0);
            let phi = random_anti(&data, i, level, &[1, c1, c2, 2][seed..]);
            let chi1 = sk_character_oracle(&data, &GroupRingElt::monomial(w(&[1, 0]), level));
            let chi2 = sk_character_oracle(&data, &GroupRingElt::monomial(w(&[c1.abs(), 1]), level));
            let left = phi.invariant_action(&data, &chi2).unwrap().invariant_action(&data, &chi1).unwrap();
            let right = phi.invariant_action(&data, &chi1.multiply(&chi2).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }
    }
}
