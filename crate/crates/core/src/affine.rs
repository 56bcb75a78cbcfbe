//! The affine Weyl group: level-`m` action on weights, the standard action on
//! `t`, orbit enumeration with the length function, and reduction into the
//! cones `t_{I,+}`.
//!
//! Words are index sequences over the wall labels `0..=l`; the rightmost
//! letter acts first.

use std::collections::{HashMap, VecDeque};

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::{CartanPoint, FaceIndex, LieData, Weight};
use crate::rational::Q;

/// Result of reducing a weight into the closed level-`m` alcove.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedWeight {
    pub weight: Weight,
    /// 0 when the reduced weight lies on a wall, otherwise `(-1)^word_length`.
    pub sign: i8,
    pub word_length: usize,
    /// Word `w` with `weight = w . nu`.
    pub word: Vec<u8>,
}

/// A point of `V = W_aff . nu_J^sharp` with its length.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitPoint {
    pub point: CartanPoint,
    pub length: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConePosition {
    Interior,
    Boundary,
    Outside,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeReduction {
    /// Word `u` in the generators of `W_I` with `image = u . x`.
    pub word: Vec<u8>,
    pub image: OrbitPoint,
    pub parity: i64,
}

impl LieData {
    fn check_level(m: i64) -> Result<()> {
        if m >= 1 {
            Ok(())
        } else {
            Err(Error::InvalidLevel { min: 1, got: m })
        }
    }

    pub(crate) fn reflect_weight(&self, i: usize, nu: &Weight, m: i64) -> Weight {
        let c = self.weight_wall_value(i, &nu.0, m);
        if c == 0 {
            return nu.clone();
        }
        Weight(
            nu.0.iter()
                .zip(self.wall_root(i))
                .map(|(x, a)| x - c * a)
                .collect(),
        )
    }

    /// `nu -> nu - (<nu, alpha_i^vee> + m delta_{i,0}) alpha_i`.
    pub fn affine_reflect_weight(&self, i: usize, nu: &Weight, m: i64) -> Result<Weight> {
        self.check_wall(i)?;
        self.check_rank(nu.rank())?;
        Self::check_level(m)?;
        Ok(self.reflect_weight(i, nu, m))
    }

    /// Apply a word letter by letter, rightmost first.
    pub fn level_action(&self, word: &[u8], nu: &Weight, m: i64) -> Result<Weight> {
        self.check_rank(nu.rank())?;
        Self::check_level(m)?;
        for &i in word {
            self.check_wall(i as usize)?;
        }
        Ok(word
            .iter()
            .rev()
            .fold(nu.clone(), |acc, &i| self.reflect_weight(i as usize, &acc, m)))
    }

    /// Greedy reduction using the walls in `walls`: repeatedly reflect at the
    /// lowest violated wall. Returns the image and the letters applied, in
    /// application order.
    pub(crate) fn reduce_weight(&self, nu: &Weight, walls: &[usize], m: i64) -> (Weight, Vec<u8>) {
        let mut cur = nu.clone();
        let mut applied = vec![];
        loop {
            let violated = walls
                .iter()
                .copied()
                .find(|&i| self.weight_wall_value(i, &cur.0, m) < 0);
            match violated {
                Some(i) => {
                    cur = self.reflect_weight(i, &cur, m);
                    applied.push(i as u8);
                }
                None => return (cur, applied),
            }
        }
    }

    fn signed(&self, nu: &Weight, walls: &[usize], m: i64) -> SignedWeight {
        let (weight, mut applied) = self.reduce_weight(nu, walls, m);
        let on_wall = walls
            .iter()
            .any(|&i| self.weight_wall_value(i, &weight.0, m) == 0);
        let word_length = applied.len();
        applied.reverse();
        SignedWeight {
            weight,
            sign: if on_wall {
                0
            } else if word_length % 2 == 0 {
                1
            } else {
                -1
            },
            word_length,
            word: applied,
        }
    }

    /// Reduce into the closed level-`m` alcove `<mu, alpha_i^vee> + m delta_{i,0} >= 0`.
    pub fn dominantize(&self, nu: &Weight, m: i64) -> Result<SignedWeight> {
        self.check_rank(nu.rank())?;
        Self::check_level(m)?;
        let walls: Vec<usize> = (0..=self.rank()).collect();
        Ok(self.signed(nu, &walls, m))
    }

    /// Reduce into the closed dominant chamber with the finite Weyl group.
    pub fn dominantize_finite(&self, nu: &Weight) -> SignedWeight {
        let walls: Vec<usize> = (1..=self.rank()).collect();
        self.signed(nu, &walls, 1)
    }

    /// Reduce into the closed level-`m` cone of the face: walls not in `face`.
    pub fn reduce_weight_to_cone(&self, nu: &Weight, face: &FaceIndex, m: i64) -> SignedWeight {
        self.signed(nu, &face.complement(self.rank()), m)
    }

    /// Affine reflection of `t` in wall `i`.
    pub fn reflect_point(&self, i: usize, x: &CartanPoint) -> CartanPoint {
        let c = self.wall_value(i, x);
        if c.is_zero() {
            return x.clone();
        }
        CartanPoint(
            x.0.iter()
                .zip(self.wall_coroot(i))
                .map(|(v, &a)| v - c * a)
                .collect(),
        )
    }

    pub fn apply_word_to_point(&self, word: &[u8], x: &CartanPoint) -> CartanPoint {
        word.iter()
            .rev()
            .fold(x.clone(), |acc, &i| self.reflect_point(i as usize, &acc))
    }

    /// Position of `x` relative to `t_{I,+}`, cut out by the walls not in `I`.
    pub fn cone_position(&self, x: &CartanPoint, face: &FaceIndex) -> ConePosition {
        let mut boundary = false;
        for i in face.complement(self.rank()) {
            let v = self.wall_value(i, x);
            if v < Q::zero() {
                return ConePosition::Outside;
            }
            if v.is_zero() {
                boundary = true;
            }
        }
        if boundary {
            ConePosition::Boundary
        } else {
            ConePosition::Interior
        }
    }

    /// The unique point of `W_I . x` in the closed cone, with a word `u` and
    /// `(-1)^{l(u)}`.
    pub fn reduce_point_to_cone(&self, x: &CartanPoint, face: &FaceIndex) -> (Vec<u8>, CartanPoint, i64) {
        let walls = face.complement(self.rank());
        let mut cur = x.clone();
        let mut applied = vec![];
        loop {
            let violated = walls
                .iter()
                .copied()
                .find(|&i| self.wall_value(i, &cur) < Q::zero());
            match violated {
                Some(i) => {
                    cur = self.reflect_point(i, &cur);
                    applied.push(i as u8);
                }
                None => break,
            }
        }
        let parity = if applied.len() % 2 == 0 { 1 } else { -1 };
        applied.reverse();
        (applied, cur, parity)
    }

    /// Points of `W_aff . nu_J^sharp` of length at most `bound`.
    pub fn orbit_up_to_length(&self, face: &FaceIndex, bound: usize) -> Result<Orbit> {
        self.validate_face(face)?;
        let base = self.nu_face_sharp(face);
        let mut lengths: HashMap<CartanPoint, usize> = HashMap::new();
        lengths.insert(base.clone(), 0);
        let mut queue = VecDeque::from([(base.clone(), 0usize)]);
        while let Some((x, len)) = queue.pop_front() {
            if len == bound {
                continue;
            }
            for i in 0..=self.rank() {
                let y = self.reflect_point(i, &x);
                if !lengths.contains_key(&y) {
                    lengths.insert(y.clone(), len + 1);
                    queue.push_back((y, len + 1));
                }
            }
        }
        let mut points: Vec<OrbitPoint> = lengths
            .iter()
            .map(|(p, &l)| OrbitPoint {
                point: p.clone(),
                length: l,
            })
            .collect();
        points.sort_by(|a, b| a.point.cmp(&b.point));
        Ok(Orbit {
            face: *face,
            bound,
            base,
            points,
            lengths,
        })
    }
}

/// Truncated orbit `{x in V : l(x) <= bound}` with a length lookup.
#[derive(Debug, Clone)]
pub struct Orbit {
    face: FaceIndex,
    bound: usize,
    base: CartanPoint,
    points: Vec<OrbitPoint>,
    lengths: HashMap<CartanPoint, usize>,
}

impl Orbit {
    pub fn face(&self) -> FaceIndex {
        self.face
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn base_point(&self) -> &CartanPoint {
        &self.base
    }

    /// Points in lexicographic order of their coordinates.
    pub fn points(&self) -> &[OrbitPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn length_of(&self, x: &CartanPoint) -> Option<usize> {
        self.lengths.get(x).copied()
    }

    pub fn orbit_point(&self, x: &CartanPoint) -> Result<OrbitPoint> {
        self.length_of(x)
            .map(|length| OrbitPoint {
                point: x.clone(),
                length,
            })
            .ok_or_else(|| Error::OutsideTruncation(x.to_string()))
    }

    pub fn reduce_to_cone(&self, lie: &LieData, x: &OrbitPoint, face: &FaceIndex) -> Result<ConeReduction> {
        let (word, image, parity) = lie.reduce_point_to_cone(&x.point, face);
        Ok(ConeReduction {
            word,
            image: self.orbit_point(&image)?,
            parity,
        })
    }

    pub fn to_document(&self) -> Vec<OrbitPointDocument> {
        self.points
            .iter()
            .map(|p| OrbitPointDocument {
                point: p.point.to_strings(),
                length: p.length,
            })
            .collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitPointDocument {
    pub point: Vec<String>,
    pub length: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{lie, LieType};
    use crate::rational::{q, Q};
    use num_traits::Zero;
    use proptest::prelude::*;

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    fn pt(v: &[(i64, i64)]) -> CartanPoint {
        CartanPoint(v.iter().map(|&(n, d)| q(n, d)).collect())
    }

    /// Brute-force orbit search over all words up to `depth`: returns the
    /// unique alcove representative and the parity of a shortest word, or
    /// `None` for a wall point.
    fn brute_dominantize(lie: &LieData, nu: &Weight, m: i64, depth: usize) -> (Weight, Option<usize>) {
        let mut frontier = vec![(nu.clone(), 0usize)];
        let mut seen = std::collections::HashSet::from([nu.clone()]);
        let l = lie.rank();
        let in_alcove = |x: &Weight| (0..=l).all(|i| lie.weight_wall_value(i, &x.0, m) >= 0);
        let mut d = 0;
        loop {
            if let Some((x, len)) = frontier.iter().find(|(x, _)| in_alcove(x)) {
                let wall = (0..=l).any(|i| lie.weight_wall_value(i, &x.0, m) == 0);
                return (x.clone(), if wall { None } else { Some(*len) });
            }
            assert!(d < depth, "no alcove point within depth");
            let mut next = vec![];
            for (x, len) in &frontier {
                for i in 0..=l {
                    let y = lie.reflect_weight(i, x, m);
                    if seen.insert(y.clone()) {
                        next.push((y, len + 1));
                    }
                }
            }
            frontier = next;
            d += 1;
        }
    }

    /// Number of affine root hyperplanes strictly separating the open
    /// fundamental alcove from `x`.
    fn separating_hyperplanes(lie: &LieData, x: &CartanPoint) -> usize {
        let mut count = 0i64;
        for root in lie.positive_roots() {
            let v = lie.pair(&root.weight, x);
            count += if v > Q::zero() {
                v.ceil().to_integer() - 1
            } else {
                -v.floor().to_integer()
            };
        }
        count as usize
    }

    #[test]
    fn reflect_examples() {
        let a1 = lie("A1");
        assert_eq!(a1.affine_reflect_weight(0, &w(&[4]), 3).unwrap(), w(&[2]));
        assert_eq!(a1.affine_reflect_weight(1, &w(&[1]), 3).unwrap(), w(&[-1]));
        let a2 = lie("A2");
        assert_eq!(a2.affine_reflect_weight(1, &w(&[0, 5]), 4).unwrap(), w(&[0, 5]));
        assert!(a1.affine_reflect_weight(2, &w(&[1]), 3).is_err());
        assert!(a1.affine_reflect_weight(0, &w(&[1]), 0).is_err());
    }

    #[test]
    fn dominantize_examples() {
        let a1 = lie("A1");
        let r = a1.dominantize(&w(&[4]), 3).unwrap();
        assert_eq!((r.weight, r.sign, r.word_length), (w(&[2]), -1, 1));
        let r = a1.dominantize(&w(&[3]), 3).unwrap();
        assert_eq!((r.weight, r.sign, r.word_length), (w(&[3]), 0, 0));
        let r = a1.dominantize(&w(&[7]), 3).unwrap();
        assert_eq!((r.weight.clone(), r.sign, r.word_length), (w(&[1]), 1, 2));
        assert_eq!(a1.level_action(&r.word, &w(&[7]), 3).unwrap(), w(&[1]));
    }

    #[test]
    fn dominantize_agrees_with_brute_force() {
        for name in ["A1", "A2", "B2", "G2"] {
            let data = lie(name);
            for m in 1..=6 {
                for a in -6..=6 {
                    for b in -6..=6 {
                        let nu = if data.rank() == 1 { w(&[a]) } else { w(&[a, b]) };
                        if data.rank() == 1 && b != 0 {
                            continue;
                        }
                        let got = data.dominantize(&nu, m).unwrap();
                        let (rep, len) = brute_dominantize(&data, &nu, m, 200);
                        assert_eq!(got.weight, rep, "{name} {nu} m={m}");
                        match len {
                            None => assert_eq!(got.sign, 0),
                            Some(len) => {
                                assert_eq!(got.word_length, len, "{name} {nu} m={m}");
                                assert_eq!(got.sign as i64, if len % 2 == 0 { 1 } else { -1 });
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn level_action_examples_and_shift_formula() {
        let a1 = lie("A1");
        assert_eq!(a1.level_action(&[], &w(&[4]), 3).unwrap(), w(&[4]));
        assert_eq!(a1.level_action(&[0], &w(&[1]), 3).unwrap(), w(&[5]));
        assert_eq!(a1.level_action(&[0, 0], &w(&[4]), 5).unwrap(), w(&[4]));
        assert!(a1.level_action(&[2], &w(&[4]), 5).is_err());
        // w . nu = w(nu - m nu_I) + m nu_I for w in W_I
        for name in ["A1", "A2", "C2", "G2"] {
            let data = lie(name);
            for f in FaceIndex::all(data.rank()) {
                let nu_i = data.nu_face(&f);
                let group = data.weyl_group(&f).unwrap();
                for m in 1..=4 {
                    let nu = Weight((0..data.rank()).map(|k| 2 - k as i64).collect());
                    for el in &group.elements {
                        let direct = data.level_action(&el.word, &nu, m).unwrap();
                        let shifted = &nu.to_rational() - &nu_i.scale(Q::from(m));
                        let formula = &el.linear_on_weight(&shifted) + &nu_i.scale(Q::from(m));
                        assert_eq!(direct.to_rational(), formula, "{name} {f}");
                        assert_eq!(el.act_weight(&nu, m), direct);
                    }
                }
            }
        }
    }

    #[test]
    fn orbit_examples() {
        let a1 = lie("A1");
        let full = FaceIndex::full(1);
        let o = a1.orbit_up_to_length(&full, 0).unwrap();
        assert_eq!(o.points(), &[OrbitPoint { point: pt(&[(1, 4)]), length: 0 }]);
        let o = a1.orbit_up_to_length(&full, 2).unwrap();
        let got: Vec<(CartanPoint, usize)> = o.points().iter().map(|p| (p.point.clone(), p.length)).collect();
        assert_eq!(
            got,
            vec![
                (pt(&[(-3, 4)]), 2),
                (pt(&[(-1, 4)]), 1),
                (pt(&[(1, 4)]), 0),
                (pt(&[(3, 4)]), 1),
                (pt(&[(5, 4)]), 2),
            ]
        );
        let o = a1.orbit_up_to_length(&FaceIndex::singleton(1), 1).unwrap();
        let got: Vec<(CartanPoint, usize)> = o.points().iter().map(|p| (p.point.clone(), p.length)).collect();
        assert_eq!(got, vec![(pt(&[(-1, 2)]), 1), (pt(&[(1, 2)]), 0)]);
    }

    #[test]
    fn orbit_lengths_match_hyperplane_count() {
        for t in LieType::all_up_to_rank(2) {
            let data = LieData::new(t);
            for f in FaceIndex::all(t.rank()) {
                let o = data.orbit_up_to_length(&f, 6).unwrap();
                for p in o.points() {
                    assert_eq!(separating_hyperplanes(&data, &p.point), p.length, "{t} {f} {}", p.point);
                }
            }
        }
    }

    #[test]
    fn orbit_closed_under_generators() {
        let data = lie("B3");
        let f = FaceIndex::new(&[0, 2], 3).unwrap();
        let o = data.orbit_up_to_length(&f, 4).unwrap();
        for p in o.points().iter().filter(|p| p.length < 4) {
            for i in 0..=3 {
                let y = data.reflect_point(i, &p.point);
                let ly = o.length_of(&y).expect("generator image enumerated");
                assert!(ly.abs_diff(p.length) <= 1);
            }
        }
    }

    #[test]
    fn cone_positions() {
        let a1 = lie("A1");
        assert_eq!(a1.cone_position(&pt(&[(1, 4)]), &FaceIndex::singleton(0)), ConePosition::Interior);
        assert_eq!(a1.cone_position(&pt(&[(0, 1)]), &FaceIndex::singleton(0)), ConePosition::Boundary);
        assert_eq!(a1.cone_position(&pt(&[(-1, 4)]), &FaceIndex::full(1)), ConePosition::Interior);
        assert_eq!(a1.cone_position(&pt(&[(-1, 4)]), &FaceIndex::singleton(0)), ConePosition::Outside);
    }

    #[test]
    fn cone_reduction_examples() {
        let a1 = lie("A1");
        let full = FaceIndex::full(1);
        let o = a1.orbit_up_to_length(&full, 3).unwrap();
        let x = o.orbit_point(&pt(&[(-1, 4)])).unwrap();
        let r = o.reduce_to_cone(&a1, &x, &FaceIndex::singleton(0)).unwrap();
        assert_eq!((r.word.clone(), r.image.point.clone(), r.parity), (vec![1], pt(&[(1, 4)]), -1));
        let r = o.reduce_to_cone(&a1, &x, &FaceIndex::singleton(1)).unwrap();
        assert_eq!((r.word.clone(), r.image.clone(), r.parity), (vec![], x.clone(), 1));
    }

    #[test]
    fn cone_reduction_lowers_length() {
        for name in ["A2", "C2", "G2"] {
            let data = lie(name);
            for j in FaceIndex::all(2) {
                let o = data.orbit_up_to_length(&j, 5).unwrap();
                for x in o.points() {
                    for i in FaceIndex::all(2) {
                        let r = o.reduce_to_cone(&data, x, &i).unwrap();
                        assert_ne!(data.cone_position(&r.image.point, &i), ConePosition::Outside);
                        assert_eq!(data.apply_word_to_point(&r.word, &x.point), r.image.point);
                        let inside = data.cone_position(&x.point, &i) != ConePosition::Outside;
                        if inside {
                            assert!(r.word.is_empty());
                            assert_eq!(r.image.length, x.length);
                        } else {
                            assert!(r.image.length < x.length);
                        }
                        let again = o.reduce_to_cone(&data, &r.image, &i).unwrap();
                        assert!(again.word.is_empty());
                        assert!(r.word.iter().all(|&g| !i.contains(g as usize)));
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn dominantize_invariant_up_to_sign(a in -12i64..12, b in -12i64..12, m in 1i64..7, i in 0usize..3) {
            let data = lie("A2");
            let nu = w(&[a, b]);
            let d0 = data.dominantize(&nu, m).unwrap();
            let d1 = data.dominantize(&data.affine_reflect_weight(i, &nu, m).unwrap(), m).unwrap();
            prop_assert_eq!(&d0.weight, &d1.weight);
            if data.weight_wall_value(i, &nu.0, m) != 0 {
                prop_assert_eq!(d0.sign, -d1.sign);
            }
            let again = data.dominantize(&d0.weight, m).unwrap();
            prop_assert_eq!(again.word_length, 0);
        }
    }
}
