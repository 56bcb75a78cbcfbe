//! Conjugacy classes `exp(xi)` as alcove points: level-`k`
//! pre-quantization, the quantization map to fusion generators, and the
//! rational phases of the central extensions involved.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fusion::level_weights;
use crate::lie::{CartanPoint, FaceIndex, LieData, Weight};
use crate::rational::{dot_q, frac, fmt_q, Q};

/// A rational number modulo 1, stored in `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhaseValue(Q);

impl PhaseValue {
    pub fn new(x: Q) -> Self {
        PhaseValue(frac(&x))
    }

    pub fn value(&self) -> Q {
        self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_zero()
    }

    pub fn times(&self, n: i64) -> PhaseValue {
        PhaseValue::new(self.0 * n)
    }
}

impl std::ops::Add for PhaseValue {
    type Output = PhaseValue;

    fn add(self, other: PhaseValue) -> PhaseValue {
        PhaseValue::new(self.0 + other.0)
    }
}

impl fmt::Display for PhaseValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_q(&self.0))
    }
}

/// The class of `exp(xi)` for `xi` in the closed alcove.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjClass {
    pub xi: CartanPoint,
    pub face: FaceIndex,
}

impl ConjClass {
    pub fn new(lie: &LieData, xi: CartanPoint) -> Result<Self> {
        let face = lie.alcove_face_of(&xi)?;
        Ok(ConjClass { xi, face })
    }
}

fn check_lattice(lie: &LieData, lam: &CartanPoint) -> Result<()> {
    lie.check_rank(lam.rank())?;
    if lam.is_integral() {
        Ok(())
    } else {
        Err(Error::NotIntegral(lam.to_string()))
    }
}

/// `B^flat(k xi)` lies in the weight lattice.
pub fn prequantizable(lie: &LieData, xi: &CartanPoint, k: i64) -> Result<bool> {
    lie.alcove_face_of(xi)?;
    if k < 0 {
        return Err(Error::InvalidLevel { min: 0, got: k });
    }
    let mu = lie.b_flat(&xi.scale(Q::from(k)))?;
    Ok(mu.0.iter().all(|c| c.is_integer()))
}

/// The label `mu = B^flat(k xi)` of the fusion generator.
pub fn quantize(lie: &LieData, xi: &CartanPoint, k: i64) -> Result<Weight> {
    if k < 1 {
        return Err(Error::InvalidLevel { min: 1, got: k });
    }
    if !prequantizable(lie, xi, k)? {
        return Err(Error::NotPrequantizable(k));
    }
    let mu = lie.b_flat(&xi.scale(Q::from(k)))?;
    mu.to_integral().ok_or(Error::NotPrequantizable(k))
}

/// All pre-quantized classes at level `k`, in the order of `Lambda*_k`.
pub fn enumerate_prequantized(lie: &LieData, k: i64) -> Result<Vec<ConjClass>> {
    if k < 1 {
        return Err(Error::InvalidLevel { min: 1, got: k });
    }
    level_weights(lie, k)
        .iter()
        .map(|mu| {
            let xi = lie.b_sharp(&mu.to_rational())?.scale(Q::new(1, k));
            ConjClass::new(lie, xi)
        })
        .collect()
}

/// `B(xi, lambda) mod 1`.
pub fn central_phase(lie: &LieData, xi: &CartanPoint, lam: &CartanPoint) -> Result<PhaseValue> {
    check_lattice(lie, lam)?;
    Ok(PhaseValue::new(lie.basic_pairing(xi, lam)?))
}

fn coroot_basis(rank: usize) -> Vec<CartanPoint> {
    (0..rank)
        .map(|i| CartanPoint::from_integers(&Weight::fundamental(rank, i).0))
        .collect()
}

/// Whether the `k`-th power of the extension defined by `xi` is trivial on
/// `Lambda`, for `xi` in the relative interior of the face.
pub fn extension_power_trivial(lie: &LieData, xi: &CartanPoint, face: &FaceIndex, k: i64) -> Result<bool> {
    if lie.alcove_face_of(xi)? != *face {
        return Err(Error::NotInFaceInterior {
            face: face.to_string(),
        });
    }
    for lam in coroot_basis(lie.rank()) {
        if !central_phase(lie, xi, &lam)?.times(k).is_trivial() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `<rho - rho_I, lambda> mod 1`.
pub fn spinc_phase(lie: &LieData, face: &FaceIndex, lam: &CartanPoint) -> Result<PhaseValue> {
    lie.validate_face(face)?;
    check_lattice(lie, lam)?;
    let diff = &lie.rho().to_rational() - &lie.rho_face(face);
    Ok(PhaseValue::new(dot_q(&diff.0, &lam.0)))
}

/// `h^vee B(nu_I^sharp, lambda) = <rho - rho_I, lambda> mod 1` on a basis.
pub fn coxeter_power_identity_check(lie: &LieData, face: &FaceIndex) -> Result<bool> {
    let nu = lie.nu_face_sharp(face);
    for lam in coroot_basis(lie.rank()) {
        let lhs = central_phase(lie, &nu, &lam)?.times(lie.dual_coxeter());
        if lhs != spinc_phase(lie, face, &lam)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogRow {
    pub xi: Vec<String>,
    pub face: Vec<usize>,
    pub mu: Vec<i64>,
    pub weyl_order: u64,
    /// `B(xi, alpha_j^vee) mod 1` for the simple coroots.
    pub phases: Vec<String>,
}

pub fn catalog(lie: &LieData, k: i64) -> Result<Vec<CatalogRow>> {
    enumerate_prequantized(lie, k)?
        .into_iter()
        .map(|c| {
            let phases = coroot_basis(lie.rank())
                .iter()
                .map(|lam| central_phase(lie, &c.xi, lam).map(|p| p.to_string()))
                .collect::<Result<_>>()?;
            Ok(CatalogRow {
                xi: c.xi.to_strings(),
                face: c.face.members(),
                mu: quantize(lie, &c.xi, k)?.0,
                weyl_order: lie.weyl_order(&c.face) as u64,
                phases,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{lie, LieType};
    use crate::rational::q;

    fn pt(v: &[(i64, i64)]) -> CartanPoint {
        CartanPoint(v.iter().map(|&(n, d)| q(n, d)).collect())
    }

    #[test]
    fn prequantization_examples() {
        let a1 = lie("A1");
        let xi = pt(&[(1, 4)]);
        assert!(prequantizable(&a1, &xi, 2).unwrap());
        assert!(!prequantizable(&a1, &xi, 1).unwrap());
        assert!(prequantizable(&a1, &CartanPoint::zero(1), 5).unwrap());
        assert!(prequantizable(&a1, &pt(&[(3, 4)]), 2).is_err());
        assert_eq!(quantize(&a1, &xi, 2).unwrap(), Weight(vec![1]));
        assert_eq!(quantize(&a1, &CartanPoint::zero(1), 3).unwrap(), Weight(vec![0]));
        assert_eq!(quantize(&a1, &xi, 1), Err(Error::NotPrequantizable(1)));
        let a2 = lie("A2");
        let xi = a2.b_sharp(&Weight(vec![1, 0]).to_rational()).unwrap();
        assert_eq!(quantize(&a2, &xi, 1).unwrap(), Weight(vec![1, 0]));
    }

    #[test]
    fn enumeration_examples() {
        let a1 = lie("A1");
        let got: Vec<CartanPoint> = enumerate_prequantized(&a1, 2).unwrap().into_iter().map(|c| c.xi).collect();
        assert_eq!(got, vec![pt(&[(0, 1)]), pt(&[(1, 4)]), pt(&[(1, 2)])]);
        assert!(enumerate_prequantized(&a1, 0).is_err());
        for t in LieType::all_up_to_rank(4) {
            let data = LieData::new(t);
            let classes = enumerate_prequantized(&data, 1).unwrap();
            assert_eq!(classes.len(), level_weights(&data, 1).len());
            let labels: Vec<Weight> = classes.iter().map(|c| quantize(&data, &c.xi, 1).unwrap()).collect();
            assert_eq!(labels, level_weights(&data, 1));
        }
    }

    #[test]
    fn phase_examples() {
        let a1 = lie("A1");
        let xi = pt(&[(1, 4)]);
        let alpha = CartanPoint::from_integers(&[1]);
        assert_eq!(central_phase(&a1, &xi, &alpha).unwrap().value(), q(1, 2));
        assert!(central_phase(&a1, &CartanPoint::zero(1), &alpha).unwrap().is_trivial());
        assert!(central_phase(&a1, &xi, &pt(&[(1, 2)])).is_err());
        let full = FaceIndex::full(1);
        assert!(extension_power_trivial(&a1, &xi, &full, 2).unwrap());
        assert!(!extension_power_trivial(&a1, &xi, &full, 1).unwrap());
        assert!(extension_power_trivial(&a1, &CartanPoint::zero(1), &FaceIndex::singleton(0), 3).unwrap());
        assert!(extension_power_trivial(&a1, &xi, &FaceIndex::singleton(0), 2).is_err());
        assert!(spinc_phase(&a1, &full, &alpha).unwrap().is_trivial());
        assert!(coxeter_power_identity_check(&a1, &full).unwrap());
    }

    #[test]
    fn phase_additivity() {
        let g2 = lie("G2");
        let xi = pt(&[(1, 7), (2, 9)]);
        let a = CartanPoint::from_integers(&[2, -1]);
        let b = CartanPoint::from_integers(&[-3, 5]);
        let sum = &a + &b;
        assert_eq!(
            central_phase(&g2, &xi, &sum).unwrap(),
            central_phase(&g2, &xi, &a).unwrap() + central_phase(&g2, &xi, &b).unwrap()
        );
    }

    #[test]
    fn catalog_rows() {
        let rows = catalog(&lie("A1"), 2).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[1].xi, vec!["1/4"]);
        assert_eq!(rows[1].phases, vec!["1/2"]);
        assert_eq!(rows[0].weyl_order, 2);
        assert_eq!(catalog(&lie("C2"), 1).unwrap().len(), level_weights(&lie("C2"), 1).len());
    }
}
