//! Finite groups `W_I` generated by the affine reflections in the walls
//! containing a face of the alcove.

use std::collections::{HashMap, VecDeque};

use crate::lie::face::FaceIndex;
use crate::lie::lattice::{CartanPoint, RatWeight, Weight};
use crate::rational::Q;

/// An element of `W_I`, stored both as an affine map of `t` (coroot
/// coordinates, level one) and as the level action on weights
/// `nu -> weight_linear * nu + m * weight_translation`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    /// Reduced word; the rightmost letter acts first.
    pub word: Vec<u8>,
    pub linear: Vec<Vec<i64>>,
    pub translation: Vec<i64>,
    pub weight_linear: Vec<Vec<i64>>,
    pub weight_translation: Vec<i64>,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        let id: Vec<Vec<i64>> = (0..rank)
            .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
            .collect();
        WeylElement {
            word: vec![],
            linear: id.clone(),
            translation: vec![0; rank],
            weight_linear: id,
            weight_translation: vec![0; rank],
        }
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn sign(&self) -> i64 {
        if self.word.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn act_point(&self, x: &CartanPoint) -> CartanPoint {
        CartanPoint(
            self.linear
                .iter()
                .zip(&self.translation)
                .map(|(row, &t)| {
                    row.iter()
                        .zip(&x.0)
                        .fold(Q::from_integer(t), |acc, (&a, c)| acc + c * a)
                })
                .collect(),
        )
    }

    /// Level-`m` action on integral weights.
    pub fn act_weight(&self, nu: &Weight, m: i64) -> Weight {
        Weight(
            self.weight_linear
                .iter()
                .zip(&self.weight_translation)
                .map(|(row, &t)| row.iter().zip(&nu.0).map(|(a, b)| a * b).sum::<i64>() + m * t)
                .collect(),
        )
    }

    /// Level-`m` action on rational weights (`m` may be fractional).
    pub fn act_rat_weight(&self, nu: &RatWeight, m: Q) -> RatWeight {
        RatWeight(
            self.weight_linear
                .iter()
                .zip(&self.weight_translation)
                .map(|(row, &t)| {
                    row.iter()
                        .zip(&nu.0)
                        .fold(m * t, |acc, (&a, c)| acc + c * a)
                })
                .collect(),
        )
    }

    /// Linear part acting on rational weights.
    pub fn linear_on_weight(&self, nu: &RatWeight) -> RatWeight {
        self.act_rat_weight(nu, Q::from_integer(0))
    }
}

/// Generator data for one wall: `alpha_i` in weight coordinates and
/// `alpha_i^vee` in coroot coordinates.
#[derive(Debug, Clone)]
pub(crate) struct WallGenerator {
    pub label: usize,
    pub root: Vec<i64>,
    pub coroot: Vec<i64>,
}

impl WallGenerator {
    fn compose_left(&self, g: &WeylElement) -> WeylElement {
        let l = self.root.len();
        let delta = i64::from(self.label == 0);
        // t side: s(c) = c - (<alpha, c> + delta) alpha^vee
        let apply_t = |v: &[i64]| -> Vec<i64> {
            let p: i64 = self.root.iter().zip(v).map(|(a, b)| a * b).sum();
            v.iter().zip(&self.coroot).map(|(x, c)| x - p * c).collect()
        };
        // weight side: s(nu) = nu - (<nu, alpha^vee> + m delta) alpha
        let apply_w = |v: &[i64]| -> Vec<i64> {
            let p: i64 = self.coroot.iter().zip(v).map(|(a, b)| a * b).sum();
            v.iter().zip(&self.root).map(|(x, r)| x - p * r).collect()
        };
        let cols_t: Vec<Vec<i64>> = (0..l)
            .map(|j| apply_t(&g.linear.iter().map(|r| r[j]).collect::<Vec<_>>()))
            .collect();
        let cols_w: Vec<Vec<i64>> = (0..l)
            .map(|j| apply_w(&g.weight_linear.iter().map(|r| r[j]).collect::<Vec<_>>()))
            .collect();
        let linear = (0..l).map(|i| (0..l).map(|j| cols_t[j][i]).collect()).collect();
        let weight_linear = (0..l).map(|i| (0..l).map(|j| cols_w[j][i]).collect()).collect();
        let translation = apply_t(&g.translation)
            .into_iter()
            .zip(&self.coroot)
            .map(|(x, c)| x - delta * c)
            .collect();
        let weight_translation = apply_w(&g.weight_translation)
            .into_iter()
            .zip(&self.root)
            .map(|(x, r)| x - delta * r)
            .collect();
        let mut word = Vec::with_capacity(g.word.len() + 1);
        word.push(self.label as u8);
        word.extend_from_slice(&g.word);
        WeylElement {
            word,
            linear,
            translation,
            weight_linear,
            weight_translation,
        }
    }
}

/// Explicit list of the elements of a finite `W_I`.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    pub face: FaceIndex,
    pub elements: Vec<WeylElement>,
}

impl WeylGroup {
    /// Breadth-first closure from the identity; elements are deduplicated by
    /// their affine matrix, so the stored words are reduced.
    pub(crate) fn enumerate(face: FaceIndex, rank: usize, generators: &[WallGenerator]) -> Self {
        let id = WeylElement::identity(rank);
        let mut seen: HashMap<(Vec<Vec<i64>>, Vec<i64>), ()> = HashMap::new();
        seen.insert((id.linear.clone(), id.translation.clone()), ());
        let mut elements = vec![id];
        let mut queue = VecDeque::from([0usize]);
        while let Some(idx) = queue.pop_front() {
            for gen in generators {
                let h = gen.compose_left(&elements[idx]);
                let key = (h.linear.clone(), h.translation.clone());
                if seen.insert(key, ()).is_none() {
                    elements.push(h);
                    queue.push_back(elements.len() - 1);
                }
            }
        }
        WeylGroup { face, elements }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Order of the Weyl group of one connected Dynkin diagram, identified from
/// its (generalized) Cartan matrix restricted to `nodes`.
pub(crate) fn component_weyl_order(cartan: &[Vec<i64>], nodes: &[usize]) -> u128 {
    let n = nodes.len();
    let fact = |k: usize| (1..=k as u128).product::<u128>();
    if n == 1 {
        return 2;
    }
    let mut degree = vec![0usize; n];
    let mut multiple: Option<(usize, usize, i64)> = None;
    for a in 0..n {
        for b in a + 1..n {
            let prod = cartan[nodes[a]][nodes[b]] * cartan[nodes[b]][nodes[a]];
            if prod != 0 {
                degree[a] += 1;
                degree[b] += 1;
                if prod > 1 {
                    multiple = Some((a, b, prod));
                }
            }
        }
    }
    match multiple {
        Some((_, _, 3)) => 12,
        Some((a, b, 2)) => {
            if n == 4 && degree[a] == 2 && degree[b] == 2 {
                1152
            } else {
                (1u128 << n) * fact(n)
            }
        }
        Some(_) => panic!("not a finite type diagram"),
        None => {
            let Some(branch) = (0..n).find(|&a| degree[a] == 3) else {
                return fact(n + 1);
            };
            let mut arms = vec![];
            for start in 0..n {
                let linked = |a: usize, b: usize| a != b && cartan[nodes[a]][nodes[b]] != 0;
                if !linked(branch, start) {
                    continue;
                }
                let (mut prev, mut cur, mut len) = (branch, start, 1);
                loop {
                    let next = (0..n).find(|&c| c != prev && linked(cur, c));
                    match next {
                        Some(c) => {
                            prev = cur;
                            cur = c;
                            len += 1;
                        }
                        None => break,
                    }
                }
                arms.push(len);
            }
            arms.sort();
            match arms.as_slice() {
                [1, 1, _] => (1u128 << (n - 1)) * fact(n),
                [1, 2, 2] => 51_840,
                [1, 2, 3] => 2_903_040,
                [1, 2, 4] => 696_729_600,
                _ => panic!("not a finite type diagram"),
            }
        }
    }
}
