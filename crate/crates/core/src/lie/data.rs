//! Root data, the basic inner product and the alcove.
//!
//! Conventions used throughout the crate:
//!
//! * weights are written in the fundamental-weight basis, points of `t` in
//!   the simple-coroot basis, so `<mu, xi> = sum_k mu_k xi_k`;
//! * the integral lattice is the coroot lattice (the group is simply
//!   connected);
//! * walls of the alcove are labelled `0..=l`; label `i >= 1` is the simple
//!   root `alpha_i` (array index `i - 1`), label 0 is `alpha_0 = -alpha_max`,
//!   and the alcove is `<alpha_i, xi> + delta_{i,0} >= 0`;
//! * alcove vertex `j` is the vertex opposite wall `j`, so vertex 0 is the
//!   origin and vertex `j >= 1` is `omega_j^vee / m_j` with `m_j` the marks.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::face::{FaceData, FaceIndex};
use crate::lie::lattice::{CartanPoint, RatWeight, Weight};
use crate::lie::types::LieType;
use crate::lie::weyl::{component_weyl_order, WallGenerator, WeylGroup};
use crate::rational::{self, fmt_q, invert, mat_vec, to_q_matrix, transpose, Q};

/// Enumeration limit for explicit `W_I` lists.
pub const WEYL_ENUMERATION_LIMIT: usize = 200_000;

/// A positive root with its coordinates in the three bases in use.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    /// Expansion in simple roots.
    pub simple: Vec<i64>,
    /// Weight coordinates `<alpha, alpha_i^vee>`.
    pub weight: Vec<i64>,
    /// The coroot in simple-coroot coordinates.
    pub coroot: Vec<i64>,
    /// `B(alpha, alpha) / 2`; 1 for long roots.
    pub half_norm: Q,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.simple.iter().sum()
    }
}

pub(crate) type MultiplicityTable = BTreeMap<Weight, u64>;

/// Immutable root-system database for one simple type.
#[derive(Debug)]
pub struct LieData {
    lie_type: LieType,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    cartan_inverse: Vec<Vec<Q>>,
    root_half_norms: Vec<Q>,
    positive_roots: Vec<Root>,
    highest_root: Root,
    marks: Vec<i64>,
    comarks: Vec<i64>,
    rho: Weight,
    rho_sharp: CartanPoint,
    dual_coxeter: i64,
    gram_coroot: Vec<Vec<Q>>,
    gram_weight: Vec<Vec<Q>>,
    wall_roots: Vec<Vec<i64>>,
    wall_coroots: Vec<Vec<i64>>,
    extended_cartan: Vec<Vec<i64>>,
    vertices: Vec<CartanPoint>,
    weyl_cache: RwLock<HashMap<FaceIndex, Arc<WeylGroup>>>,
    pub(crate) mult_cache: RwLock<HashMap<Weight, Arc<MultiplicityTable>>>,
}

fn positive_roots_simple(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let l = cartan.len();
    let mut roots: Vec<Vec<i64>> = (0..l)
        .map(|i| (0..l).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut known: HashSet<Vec<i64>> = roots.iter().cloned().collect();
    let mut idx = 0;
    while idx < roots.len() {
        let beta = roots[idx].clone();
        for i in 0..l {
            // alpha_i-string through beta: p downward steps, q upward steps.
            let mut p = 0;
            let mut down = beta.clone();
            loop {
                down[i] -= 1;
                if known.contains(&down) {
                    p += 1;
                } else {
                    break;
                }
            }
            let pairing: i64 = (0..l).map(|j| beta[j] * cartan[i][j]).sum();
            if p - pairing > 0 {
                let mut up = beta.clone();
                up[i] += 1;
                if known.insert(up.clone()) {
                    roots.push(up);
                }
            }
        }
        idx += 1;
    }
    roots
}

impl LieData {
    pub fn new(lie_type: LieType) -> Self {
        let l = lie_type.rank();
        let cartan = lie_type.cartan_matrix();
        let cartan_q = to_q_matrix(&cartan);
        let cartan_inverse = invert(&cartan_q).expect("Cartan matrix is invertible");

        // Symmetrizer: (alpha_i, alpha_j) = d_i A[i][j].
        let mut d: Vec<Option<Q>> = vec![None; l];
        d[0] = Some(Q::one());
        let mut stack = vec![0];
        while let Some(i) = stack.pop() {
            for j in 0..l {
                if j != i && cartan[i][j] != 0 && d[j].is_none() {
                    d[j] = Some(d[i].unwrap() * Q::new(cartan[i][j], cartan[j][i]));
                    stack.push(j);
                }
            }
        }
        let mut d: Vec<Q> = d.into_iter().map(|x| x.unwrap()).collect();

        let simple_roots = positive_roots_simple(&cartan);
        let to_weight = |r: &[i64]| -> Vec<i64> {
            (0..l).map(|i| (0..l).map(|j| cartan[i][j] * r[j]).sum()).collect()
        };
        let norm = |r: &[i64], d: &[Q]| -> Q {
            let mut acc = Q::zero();
            for i in 0..l {
                for j in 0..l {
                    acc += d[i] * cartan[i][j] * r[i] * r[j];
                }
            }
            acc
        };
        let top = simple_roots
            .iter()
            .max_by_key(|r| r.iter().sum::<i64>())
            .unwrap()
            .clone();
        // Scale so that B(alpha_max, alpha_max) = 2.
        let scale = Q::from_integer(2) / norm(&top, &d);
        for x in d.iter_mut() {
            *x *= scale;
        }

        let make_root = |r: Vec<i64>| -> Root {
            let half_norm = norm(&r, &d) / 2;
            let coroot = r
                .iter()
                .zip(&d)
                .map(|(&c, dj)| {
                    let v = dj * c / half_norm;
                    assert!(v.is_integer());
                    v.to_integer()
                })
                .collect();
            Root {
                weight: to_weight(&r),
                simple: r,
                coroot,
                half_norm,
            }
        };
        let mut positive_roots: Vec<Root> = simple_roots.into_iter().map(make_root).collect();
        positive_roots.sort_by(|a, b| {
            a.height()
                .cmp(&b.height())
                .then_with(|| b.simple.cmp(&a.simple))
        });
        let highest_root = make_root(top);
        let marks = highest_root.simple.clone();
        let comarks = highest_root.coroot.clone();

        let gram_coroot: Vec<Vec<Q>> = (0..l)
            .map(|i| (0..l).map(|j| Q::from_integer(cartan[i][j]) / d[j]).collect())
            .collect();
        let gram_weight: Vec<Vec<Q>> = (0..l)
            .map(|i| (0..l).map(|k| cartan_inverse[i][k] * d[i]).collect())
            .collect();

        let rho = Weight(vec![1; l]);
        let rho_sharp = CartanPoint(mat_vec(&gram_weight, &rho.to_rational().0));
        let h = Q::one() + rational::dot_iq(&highest_root.weight, &rho_sharp.0);
        assert!(h.is_integer(), "dual Coxeter number must be an integer");
        let dual_coxeter = h.to_integer();

        let mut wall_roots = vec![highest_root.weight.iter().map(|x| -x).collect::<Vec<_>>()];
        let mut wall_coroots = vec![comarks.iter().map(|x| -x).collect::<Vec<_>>()];
        for j in 0..l {
            wall_roots.push((0..l).map(|i| cartan[i][j]).collect());
            wall_coroots.push((0..l).map(|i| i64::from(i == j)).collect());
        }
        let extended_cartan: Vec<Vec<i64>> = (0..=l)
            .map(|i| {
                (0..=l)
                    .map(|j| {
                        wall_roots[j]
                            .iter()
                            .zip(&wall_coroots[i])
                            .map(|(a, b)| a * b)
                            .sum()
                    })
                    .collect()
            })
            .collect();

        let cartan_t_inv = invert(&transpose(&cartan_q)).expect("invertible");
        let mut vertices = vec![CartanPoint::zero(l)];
        for j in 0..l {
            let col: Vec<Q> = (0..l).map(|i| cartan_t_inv[i][j]).collect();
            vertices.push(CartanPoint(col).scale(Q::new(1, marks[j])));
        }

        LieData {
            lie_type,
            rank: l,
            cartan,
            cartan_inverse,
            root_half_norms: d,
            positive_roots,
            highest_root,
            marks,
            comarks,
            rho,
            rho_sharp,
            dual_coxeter,
            gram_coroot,
            gram_weight,
            wall_roots,
            wall_coroots,
            extended_cartan,
            vertices,
            weyl_cache: RwLock::new(HashMap::new()),
            mult_cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn cartan_inverse(&self) -> &[Vec<Q>] {
        &self.cartan_inverse
    }

    /// `B(alpha_i, alpha_i) / 2` for the simple roots.
    pub fn simple_root_half_norms(&self) -> &[Q] {
        &self.root_half_norms
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn highest_root(&self) -> &Root {
        &self.highest_root
    }

    /// Coefficients of the highest root in the simple roots.
    pub fn marks(&self) -> &[i64] {
        &self.marks
    }

    /// Coefficients of the highest coroot in the simple coroots.
    pub fn comarks(&self) -> &[i64] {
        &self.comarks
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn rho_sharp(&self) -> &CartanPoint {
        &self.rho_sharp
    }

    pub fn dual_coxeter(&self) -> i64 {
        self.dual_coxeter
    }

    pub fn gram_coroot(&self) -> &[Vec<Q>] {
        &self.gram_coroot
    }

    pub fn gram_weight(&self) -> &[Vec<Q>] {
        &self.gram_weight
    }

    /// `alpha_i` in weight coordinates for wall labels `0..=l`.
    pub fn wall_root(&self, i: usize) -> &[i64] {
        &self.wall_roots[i]
    }

    /// `alpha_i^vee` in coroot coordinates for wall labels `0..=l`.
    pub fn wall_coroot(&self, i: usize) -> &[i64] {
        &self.wall_coroots[i]
    }

    /// `[i][j] = <alpha_j, alpha_i^vee>` over wall labels `0..=l`.
    pub fn extended_cartan(&self) -> &[Vec<i64>] {
        &self.extended_cartan
    }

    /// Alcove vertices, indexed by label.
    pub fn alcove_vertices(&self) -> &[CartanPoint] {
        &self.vertices
    }

    pub(crate) fn check_rank(&self, got: usize) -> Result<()> {
        if got == self.rank {
            Ok(())
        } else {
            Err(Error::RankMismatch {
                expected: self.rank,
                got,
            })
        }
    }

    pub(crate) fn check_wall(&self, i: usize) -> Result<()> {
        if i <= self.rank {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                max: self.rank,
            })
        }
    }

    /// The basic inner product `B(v, w)` on `t`.
    pub fn basic_pairing(&self, v: &CartanPoint, w: &CartanPoint) -> Result<Q> {
        self.check_rank(v.rank())?;
        self.check_rank(w.rank())?;
        Ok(rational::dot_q(&v.0, &mat_vec(&self.gram_coroot, &w.0)))
    }

    /// Induced inner product on weights.
    pub fn weight_pairing(&self, a: &RatWeight, b: &RatWeight) -> Q {
        rational::dot_q(&a.0, &mat_vec(&self.gram_weight, &b.0))
    }

    pub(crate) fn weight_norm_int(&self, a: &[i64]) -> Q {
        let mut acc = Q::zero();
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                acc += self.gram_weight[i][j] * (a[i] * a[j]);
            }
        }
        acc
    }

    pub(crate) fn weight_pairing_int(&self, a: &[i64], b: &[i64]) -> Q {
        let mut acc = Q::zero();
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                acc += self.gram_weight[i][j] * (a[i] * b[j]);
            }
        }
        acc
    }

    pub fn b_flat(&self, xi: &CartanPoint) -> Result<RatWeight> {
        self.check_rank(xi.rank())?;
        Ok(RatWeight(mat_vec(&self.gram_coroot, &xi.0)))
    }

    pub fn b_sharp(&self, mu: &RatWeight) -> Result<CartanPoint> {
        self.check_rank(mu.0.len())?;
        Ok(CartanPoint(mat_vec(&self.gram_weight, &mu.0)))
    }

    /// `<mu, xi>` for a weight and a point of `t`.
    pub fn pair(&self, mu: &[i64], xi: &CartanPoint) -> Q {
        rational::dot_iq(mu, &xi.0)
    }

    /// `<alpha_i, xi> + delta_{i,0}`; the alcove is where all of these are
    /// nonnegative.
    pub fn wall_value(&self, i: usize, xi: &CartanPoint) -> Q {
        let v = rational::dot_iq(&self.wall_roots[i], &xi.0);
        if i == 0 {
            v + Q::one()
        } else {
            v
        }
    }

    /// `<nu, alpha_i^vee> + m delta_{i,0}`, the level-`m` wall function.
    pub fn weight_wall_value(&self, i: usize, nu: &[i64], m: i64) -> i64 {
        let v: i64 = self.wall_coroots[i].iter().zip(nu).map(|(a, b)| a * b).sum();
        if i == 0 {
            v + m
        } else {
            v
        }
    }

    pub fn rat_weight_wall_value(&self, i: usize, nu: &[Q], m: Q) -> Q {
        let v = rational::dot_iq(&self.wall_coroots[i], nu);
        if i == 0 {
            v + m
        } else {
            v
        }
    }

    /// The face whose relative interior contains `xi`.
    pub fn alcove_face_of(&self, xi: &CartanPoint) -> Result<FaceIndex> {
        self.check_rank(xi.rank())?;
        let mut members = vec![];
        for i in 0..=self.rank {
            let v = self.wall_value(i, xi);
            if v < Q::zero() {
                return Err(Error::OutsideAlcove { wall: i });
            }
            if v > Q::zero() {
                members.push(i);
            }
        }
        FaceIndex::new(&members, self.rank)
    }

    pub fn in_closed_alcove(&self, xi: &CartanPoint) -> bool {
        (0..=self.rank).all(|i| self.wall_value(i, xi) >= Q::zero())
    }

    pub fn validate_face(&self, face: &FaceIndex) -> Result<()> {
        match face.members().into_iter().find(|&i| i > self.rank) {
            Some(i) => Err(Error::IndexOutOfRange {
                index: i,
                max: self.rank,
            }),
            None => Ok(()),
        }
    }

    /// Whether a root (simple-root coordinates, any sign) is a nonnegative
    /// combination of the simple roots of `G_I`.
    fn positive_for_face(&self, r: &[i64], face: &FaceIndex) -> bool {
        let c0 = if face.contains(0) {
            0
        } else {
            let mut c0 = None;
            for j in face.members() {
                let (num, den) = (-r[j - 1], self.marks[j - 1]);
                if num % den != 0 {
                    return false;
                }
                match c0 {
                    None => c0 = Some(num / den),
                    Some(c) if c != num / den => return false,
                    _ => {}
                }
            }
            c0.unwrap()
        };
        if c0 < 0 {
            return false;
        }
        (1..=self.rank).all(|j| {
            let c = r[j - 1] + c0 * self.marks[j - 1];
            if face.contains(j) {
                c == 0
            } else {
                c >= 0
            }
        })
    }

    /// Positive roots of `G_I` (weight coordinates).
    pub fn face_positive_roots(&self, face: &FaceIndex) -> Vec<Vec<i64>> {
        let mut out = vec![];
        for root in &self.positive_roots {
            let neg: Vec<i64> = root.simple.iter().map(|x| -x).collect();
            if self.positive_for_face(&root.simple, face) {
                out.push(root.weight.clone());
            } else if self.positive_for_face(&neg, face) {
                out.push(root.weight.iter().map(|x| -x).collect());
            }
        }
        out
    }

    /// Half-sum of the positive roots of `G_I`.
    pub fn rho_face(&self, face: &FaceIndex) -> RatWeight {
        let mut sum = vec![0i64; self.rank];
        for r in self.face_positive_roots(face) {
            for (s, x) in sum.iter_mut().zip(r) {
                *s += x;
            }
        }
        RatWeight(sum.into_iter().map(|x| Q::new(x, 2)).collect())
    }

    /// `nu_I = (rho - rho_I) / h^vee`.
    pub fn nu_face(&self, face: &FaceIndex) -> RatWeight {
        (&self.rho.to_rational() - &self.rho_face(face)).scale(Q::new(1, self.dual_coxeter))
    }

    pub fn nu_face_sharp(&self, face: &FaceIndex) -> CartanPoint {
        CartanPoint(mat_vec(&self.gram_weight, &self.nu_face(face).0))
    }

    /// `|W_I|` as a product over the simple factors of the subdiagram.
    pub fn weyl_order(&self, face: &FaceIndex) -> u128 {
        let nodes = face.complement(self.rank);
        let mut seen = vec![false; self.rank + 1];
        let mut order = 1u128;
        for &start in &nodes {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut k = 0;
            while k < comp.len() {
                let a = comp[k];
                for &b in &nodes {
                    if !seen[b] && self.extended_cartan[a][b] != 0 {
                        seen[b] = true;
                        comp.push(b);
                    }
                }
                k += 1;
            }
            order *= component_weyl_order(&self.extended_cartan, &comp);
        }
        order
    }

    pub fn face_data(&self, face: &FaceIndex) -> Result<FaceData> {
        self.validate_face(face)?;
        let rho_i = self.rho_face(face);
        let nu_i = (&self.rho.to_rational() - &rho_i).scale(Q::new(1, self.dual_coxeter));
        let nu_i_sharp = CartanPoint(mat_vec(&self.gram_weight, &nu_i.0));
        let labels = face.complement(self.rank);
        Ok(FaceData {
            face: *face,
            coroot_lattice_basis: labels.iter().map(|&i| self.wall_coroots[i].clone()).collect(),
            simple_root_labels: labels,
            positive_roots: self.face_positive_roots(face),
            rho_i,
            nu_i,
            nu_i_sharp,
            weyl_order: self.weyl_order(face),
        })
    }

    pub(crate) fn wall_generators(&self, face: &FaceIndex) -> Vec<WallGenerator> {
        face.complement(self.rank)
            .into_iter()
            .map(|i| WallGenerator {
                label: i,
                root: self.wall_roots[i].clone(),
                coroot: self.wall_coroots[i].clone(),
            })
            .collect()
    }

    /// Explicit `W_I`, enumerated once and cached.
    pub fn weyl_group(&self, face: &FaceIndex) -> Result<Arc<WeylGroup>> {
        self.weyl_group_with_limit(face, WEYL_ENUMERATION_LIMIT)
    }

    pub fn weyl_group_with_limit(&self, face: &FaceIndex, limit: usize) -> Result<Arc<WeylGroup>> {
        self.validate_face(face)?;
        if let Some(g) = self.weyl_cache.read().unwrap().get(face) {
            return Ok(g.clone());
        }
        let order = self.weyl_order(face);
        if order > limit as u128 {
            return Err(Error::WeylGroupTooLarge {
                face: face.to_string(),
                order,
                limit,
            });
        }
        let group = Arc::new(WeylGroup::enumerate(
            *face,
            self.rank,
            &self.wall_generators(face),
        ));
        self.weyl_cache
            .write()
            .unwrap()
            .entry(*face)
            .or_insert(group.clone());
        Ok(group)
    }

    /// Minimum of `B(lambda, lambda)` over nonzero coroot-lattice vectors with
    /// coordinates bounded by `bound` in absolute value.
    pub fn min_coroot_norm(&self, bound: i64) -> i64 {
        let l = self.rank;
        let gram: Vec<Vec<i64>> = self
            .gram_coroot
            .iter()
            .map(|r| r.iter().map(|x| x.to_integer()).collect())
            .collect();
        let mut v = vec![-bound; l];
        let mut best = i64::MAX;
        loop {
            if v.iter().any(|&x| x != 0) {
                let mut n = 0;
                for i in 0..l {
                    if v[i] == 0 {
                        continue;
                    }
                    let mut s = 0;
                    for j in 0..l {
                        s += gram[i][j] * v[j];
                    }
                    n += v[i] * s;
                }
                best = best.min(n);
            }
            let mut k = 0;
            loop {
                if k == l {
                    return best;
                }
                v[k] += 1;
                if v[k] > bound {
                    v[k] = -bound;
                    k += 1;
                } else {
                    break;
                }
            }
        }
    }

    pub fn to_document(&self) -> LieDataDocument {
        let fmt_matrix = |m: &[Vec<Q>]| -> Vec<Vec<String>> {
            m.iter().map(|r| r.iter().map(fmt_q).collect()).collect()
        };
        LieDataDocument {
            lie_type: self.lie_type.to_string(),
            rank: self.rank,
            cartan_matrix: self.cartan.clone(),
            positive_roots: self.positive_roots.iter().map(|r| r.simple.clone()).collect(),
            highest_root: self.highest_root.simple.clone(),
            marks: self.marks.clone(),
            comarks: self.comarks.clone(),
            rho: self.rho.0.clone(),
            rho_sharp: self.rho_sharp.to_strings(),
            dual_coxeter: self.dual_coxeter,
            gram_coroot: fmt_matrix(&self.gram_coroot),
            gram_weight: fmt_matrix(&self.gram_weight),
            alcove_vertices: self.vertices.iter().map(|v| v.to_strings()).collect(),
        }
    }
}

/// JSON form of [`LieData`]; rationals are written as `"p/q"` strings.
#[derive(Debug, Clone, Serialize)]
pub struct LieDataDocument {
    #[serde(rename = "type")]
    pub lie_type: String,
    pub rank: usize,
    pub cartan_matrix: Vec<Vec<i64>>,
    pub positive_roots: Vec<Vec<i64>>,
    pub highest_root: Vec<i64>,
    pub marks: Vec<i64>,
    pub comarks: Vec<i64>,
    pub rho: Vec<i64>,
    pub rho_sharp: Vec<String>,
    pub dual_coxeter: i64,
    pub gram_coroot: Vec<Vec<String>>,
    pub gram_weight: Vec<Vec<String>>,
    pub alcove_vertices: Vec<Vec<String>>,
}
