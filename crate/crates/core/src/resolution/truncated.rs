//! The filtration piece `F_N C_*(J)` as dense integer matrices, and homology
//! over it.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::{FaceIndex, LieData};
use crate::linalg::{self, Matrix};

use super::{Cell, ChainElt, OrbitComplex};

pub struct TruncatedComplex<'a> {
    complex: OrbitComplex<'a>,
    bases: Vec<Vec<Cell>>,
    index: Vec<HashMap<Cell, usize>>,
    /// `boundaries[p]` is the matrix of `d: C_p -> C_{p-1}`; entry 0 is empty.
    boundaries: Vec<Matrix>,
}

impl<'a> TruncatedComplex<'a> {
    pub fn new(lie: &'a LieData, j: FaceIndex, bound: usize) -> Result<Self> {
        let complex = OrbitComplex::new(lie, j, bound)?;
        let l = lie.rank();
        let bases: Vec<Vec<Cell>> = (0..=l).map(|p| complex.basis_elements(p)).collect();
        let index: Vec<HashMap<Cell, usize>> = bases
            .iter()
            .map(|b| b.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect())
            .collect();
        let mut boundaries = vec![Matrix::new()];
        for p in 1..=l {
            let columns: Vec<Vec<(usize, i64)>> = bases[p]
                .par_iter()
                .map(|cell| {
                    let d = complex.boundary(&complex.basis_chain(cell)?)?;
                    d.terms()
                        .iter()
                        .map(|(k, &v)| {
                            index[p - 1]
                                .get(k)
                                .map(|&r| (r, v))
                                .ok_or_else(|| Error::OutsideTruncation(k.to_string()))
                        })
                        .collect()
                })
                .collect::<Result<_>>()?;
            let mut m = linalg::zeros(bases[p - 1].len(), bases[p].len());
            for (col, entries) in columns.into_iter().enumerate() {
                for (row, v) in entries {
                    m[row][col] = v;
                }
            }
            boundaries.push(m);
        }
        Ok(TruncatedComplex {
            complex,
            bases,
            index,
            boundaries,
        })
    }

    pub fn complex(&self) -> &OrbitComplex<'a> {
        &self.complex
    }

    pub fn basis(&self, p: usize) -> &[Cell] {
        &self.bases[p]
    }

    pub fn dim(&self, p: usize) -> usize {
        self.bases.get(p).map_or(0, |b| b.len())
    }

    /// Matrix of `d_p`, rows indexed by `basis(p - 1)`.
    pub fn boundary_matrix(&self, p: usize) -> &Matrix {
        &self.boundaries[p]
    }

    pub fn boundary_squared_zero(&self) -> bool {
        (2..self.boundaries.len()).all(|p| {
            let prod = linalg::mat_mul(
                &self.boundaries[p - 1],
                &self.boundaries[p],
                self.dim(p - 1),
                self.dim(p),
            );
            linalg::is_zero(&prod)
        })
    }

    pub fn chain_from_vector(&self, p: usize, v: &[i64]) -> ChainElt {
        let mut c = ChainElt::zero(p);
        for (cell, &x) in self.bases[p].iter().zip(v) {
            c.add_term(cell.clone(), x);
        }
        c
    }

    pub fn vector_of(&self, c: &ChainElt) -> Result<Vec<i64>> {
        let mut v = vec![0; self.dim(c.degree())];
        for (cell, &x) in c.terms() {
            let &i = self.index[c.degree()]
                .get(cell)
                .ok_or_else(|| Error::OutsideTruncation(cell.to_string()))?;
            v[i] = x;
        }
        Ok(v)
    }

    /// Integral basis of the cycles of degree `p`.
    pub fn cycle_basis(&self, p: usize) -> Result<Vec<ChainElt>> {
        let kernel = if p == 0 {
            (0..self.dim(0))
                .map(|i| (0..self.dim(0)).map(|j| i64::from(i == j)).collect())
                .collect()
        } else {
            linalg::kernel_basis(&self.boundaries[p], self.dim(p))?
        };
        Ok(kernel.iter().map(|v| self.chain_from_vector(p, v)).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub p: usize,
    pub dim: usize,
    pub rank_ker: usize,
    pub rank_im_above: usize,
    pub torsion: Vec<i64>,
    pub verdict: String,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    pub group: String,
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    #[serde(rename = "N")]
    pub n: usize,
    pub boundary_squared_zero: bool,
    pub degrees: Vec<DegreeReport>,
    pub ok: bool,
}

/// Ranks, torsion and verdicts for `F_N C_*(J)`: exact in degrees
/// `0 < p < l`, injective in degree `l`, and `H_0` zero or `Z` (detected by
/// the augmentation) according to whether `J` is the whole alcove.
pub fn homology_report(lie: &LieData, j: FaceIndex, bound: usize) -> Result<HomologyReport> {
    let tc = TruncatedComplex::new(lie, j, bound)?;
    let l = lie.rank();
    let invariants: Vec<Vec<i128>> = (0..=l + 1)
        .map(|p| {
            if p == 0 || p > l {
                vec![]
            } else {
                linalg::smith_invariants(&tc.boundaries[p], tc.dim(p))
            }
        })
        .collect();
    let mut degrees = vec![];
    for p in 0..=l {
        let dim = tc.dim(p);
        let rank_ker = dim - invariants[p].len();
        let rank_im_above = invariants[p + 1].len();
        let torsion: Vec<i64> = invariants[p + 1]
            .iter()
            .filter(|&&d| d > 1)
            .map(|&d| d as i64)
            .collect();
        let betti = rank_ker - rank_im_above;
        let (verdict, ok) = if p == 0 {
            if tc.complex.is_full() {
                let detected = betti == 1 && torsion.is_empty() && augmentation_detects(&tc)?;
                let v = if detected {
                    "H0 = Z (augmentation)".to_string()
                } else {
                    format!("H0 has rank {betti}, torsion {torsion:?}")
                };
                (v, detected)
            } else if betti == 0 && torsion.is_empty() {
                ("H0 = 0".to_string(), true)
            } else {
                (format!("H0 has rank {betti}, torsion {torsion:?}"), false)
            }
        } else if p == l {
            if rank_ker == 0 {
                ("injective".to_string(), true)
            } else {
                (format!("kernel of rank {rank_ker}"), false)
            }
        } else if betti == 0 && torsion.is_empty() {
            ("exact".to_string(), true)
        } else {
            (format!("homology of rank {betti}, torsion {torsion:?}"), false)
        };
        degrees.push(DegreeReport {
            p,
            dim,
            rank_ker,
            rank_im_above,
            torsion,
            verdict,
            ok,
        });
    }
    let boundary_squared_zero = tc.boundary_squared_zero();
    let ok = boundary_squared_zero && degrees.iter().all(|d| d.ok);
    Ok(HomologyReport {
        group: lie.lie_type().to_string(),
        j: j.members(),
        n: bound,
        boundary_squared_zero,
        degrees,
        ok,
    })
}

/// The augmentation vanishes on boundaries and takes the value 1 on
/// `beta_0` of the base point.
fn augmentation_detects(tc: &TruncatedComplex) -> Result<bool> {
    let cx = tc.complex();
    let basis = tc.basis(0);
    let eps: Vec<i64> = basis
        .iter()
        .map(|c| cx.augmentation(&cx.basis_chain(c)?))
        .collect::<Result<_>>()?;
    if cx.lie().rank() >= 1 {
        let d1 = tc.boundary_matrix(1);
        for col in 0..tc.dim(1) {
            let s: i64 = (0..basis.len()).map(|r| eps[r] * d1[r][col]).sum();
            if s != 0 {
                return Ok(false);
            }
        }
    }
    let base = Cell {
        face: FaceIndex::singleton(0),
        point: cx.orbit().orbit_point(cx.orbit().base_point())?,
    };
    Ok(cx.augmentation(&cx.basis_chain(&base)?)? == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::lie;

    #[test]
    fn a1_top_matrix() {
        let a1 = lie("A1");
        let tc = TruncatedComplex::new(&a1, FaceIndex::full(1), 0).unwrap();
        assert_eq!(tc.boundary_matrix(1), &vec![vec![-1], vec![1]]);
    }

    /// Basis sizes from direct filtering of the orbit.
    #[test]
    fn a1_basis_sizes() {
        let a1 = lie("A1");
        let tc = TruncatedComplex::new(&a1, FaceIndex::full(1), 2).unwrap();
        let orbit = a1.orbit_up_to_length(&FaceIndex::full(1), 2).unwrap();
        let in_cone = |f: &[usize]| {
            let face = FaceIndex::new(f, 1).unwrap();
            orbit
                .points()
                .iter()
                .filter(|x| a1.cone_position(&x.point, &face) == crate::affine::ConePosition::Interior)
                .count()
        };
        assert_eq!(tc.dim(0), in_cone(&[0]) + in_cone(&[1]));
        assert_eq!(tc.dim(0), 6);
        assert_eq!(tc.dim(1), 5);
        assert!(tc.boundary_squared_zero());
    }

    #[test]
    fn report_examples() {
        let a1 = lie("A1");
        let r = homology_report(&a1, FaceIndex::full(1), 4).unwrap();
        assert!(r.ok, "{r:?}");
        assert_eq!(r.degrees[0].verdict, "H0 = Z (augmentation)");
        let a2 = lie("A2");
        let r = homology_report(&a2, FaceIndex::singleton(0), 3).unwrap();
        assert!(r.ok, "{r:?}");
        assert_eq!(r.degrees[0].verdict, "H0 = 0");
        assert_eq!(r.degrees[1].verdict, "exact");
        assert_eq!(r.degrees[2].verdict, "injective");
        let r = homology_report(&a2, FaceIndex::full(2), 3).unwrap();
        assert!(r.ok, "{r:?}");
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["J"], serde_json::json!([0, 1, 2]));
    }

    #[test]
    fn cycles_contract_within_truncation() {
        let g2 = lie("G2");
        let tc = TruncatedComplex::new(&g2, FaceIndex::full(2), 3).unwrap();
        for c in tc.cycle_basis(1).unwrap() {
            let b = tc.complex().contract_cycle(&c).unwrap();
            assert_eq!(tc.complex().boundary(&b).unwrap(), c);
            tc.vector_of(&b).unwrap();
        }
    }
}
