//! Finite-dimensional characters: Freudenthal multiplicities, the Weyl
//! dimension formula, tensor product decomposition and numeric evaluation.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lie::{CartanPoint, LieData, Weight};
use crate::rational::{frac, Q};

use super::CharacterElt;

pub(crate) fn check_dominant(lie: &LieData, mu: &Weight) -> Result<()> {
    lie.check_rank(mu.rank())?;
    if mu.0.iter().any(|&c| c < 0) {
        return Err(Error::NotDominant(mu.to_string()));
    }
    Ok(())
}

/// Simple-root coordinates `A^{-1} w`.
fn root_coordinates(lie: &LieData, w: &[i64]) -> Vec<Q> {
    lie.cartan_inverse()
        .iter()
        .map(|row| row.iter().zip(w).map(|(a, &b)| a * b).sum())
        .collect()
}

/// The finite Weyl group orbit of a weight.
pub fn finite_orbit(lie: &LieData, mu: &Weight) -> Vec<Weight> {
    let mut seen = BTreeSet::from([mu.clone()]);
    let mut queue = VecDeque::from([mu.clone()]);
    while let Some(x) = queue.pop_front() {
        for i in 1..=lie.rank() {
            let p = lie.weight_wall_value(i, &x.0, 0);
            if p == 0 {
                continue;
            }
            let y = Weight(x.0.iter().zip(lie.wall_root(i)).map(|(a, r)| a - p * r).collect());
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen.into_iter().collect()
}

/// Multiplicities of the dominant weights of `V_mu`.
pub fn dominant_multiplicities(lie: &LieData, mu: &Weight) -> Result<BTreeMap<Weight, u64>> {
    check_dominant(lie, mu)?;
    // Dominant weights below mu: closed under subtracting positive roots
    // while staying dominant.
    let mut below = BTreeSet::from([mu.clone()]);
    let mut queue = VecDeque::from([mu.clone()]);
    while let Some(x) = queue.pop_front() {
        for root in lie.positive_roots() {
            let y = &x - &Weight(root.weight.clone());
            if y.0.iter().all(|&c| c >= 0) && below.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    let mut ordered: Vec<(Q, Weight)> = below
        .into_iter()
        .map(|w| {
            let diff = &mu.clone() - &w;
            (root_coordinates(lie, &diff.0).into_iter().sum(), w)
        })
        .collect();
    ordered.sort();

    let rho = lie.rho();
    let top = lie.weight_norm_int(&(mu + rho).0);
    let mut mult: BTreeMap<Weight, u64> = BTreeMap::new();
    for (depth, lambda) in ordered {
        if depth.is_zero() {
            mult.insert(lambda, 1);
            continue;
        }
        let mut num = Q::zero();
        for root in lie.positive_roots() {
            let alpha = Weight(root.weight.clone());
            let mut x = &lambda + &alpha;
            loop {
                let dom = lie.dominantize_finite(&x).weight;
                let Some(&m) = mult.get(&dom) else { break };
                num += lie.weight_pairing_int(&x.0, &alpha.0) * Q::from(m as i64);
                x = &x + &alpha;
            }
        }
        let den = top - lie.weight_norm_int(&(&lambda + rho).0);
        let value = num * Q::from(2) / den;
        if !value.is_integer() || value < Q::zero() {
            return Err(Error::Arithmetic(format!("Freudenthal multiplicity {value} at {lambda}")));
        }
        let m = value.to_integer() as u64;
        if m > 0 {
            mult.insert(lambda, m);
        }
    }
    Ok(mult)
}

/// All weight multiplicities of `V_mu`, memoized per type.
pub fn weight_multiplicities(lie: &LieData, mu: &Weight) -> Result<Arc<BTreeMap<Weight, u64>>> {
    check_dominant(lie, mu)?;
    if let Some(table) = lie.mult_cache.read().unwrap().get(mu) {
        return Ok(table.clone());
    }
    let mut all = BTreeMap::new();
    for (lambda, m) in dominant_multiplicities(lie, mu)? {
        for w in finite_orbit(lie, &lambda) {
            all.insert(w, m);
        }
    }
    debug_assert_eq!(
        all.values().map(|&m| m as u128).sum::<u128>(),
        weyl_dimension(lie, mu)?,
        "Freudenthal total disagrees with the Weyl dimension formula"
    );
    let table = Arc::new(all);
    lie.mult_cache
        .write()
        .unwrap()
        .entry(mu.clone())
        .or_insert(table.clone());
    Ok(table)
}

/// `prod_{alpha > 0} <mu + rho, alpha^vee> / <rho, alpha^vee>`.
pub fn weyl_dimension(lie: &LieData, mu: &Weight) -> Result<u128> {
    check_dominant(lie, mu)?;
    let shifted = mu + lie.rho();
    let mut value = Q::one();
    for root in lie.positive_roots() {
        let num: i64 = root.coroot.iter().zip(&shifted.0).map(|(a, b)| a * b).sum();
        let den: i64 = root.coroot.iter().zip(&lie.rho().0).map(|(a, b)| a * b).sum();
        value *= Q::new(num, den);
    }
    value
        .to_integer()
        .to_u128()
        .ok_or_else(|| Error::Arithmetic("dimension overflow".into()))
}

/// Racah-Speiser: `V_lambda (x) V_mu` in the irreducible basis.
pub fn tensor_decompose(lie: &LieData, lambda: &Weight, mu: &Weight) -> Result<CharacterElt> {
    check_dominant(lie, lambda)?;
    check_dominant(lie, mu)?;
    let (big, small) = if weyl_dimension(lie, lambda)? >= weyl_dimension(lie, mu)? {
        (lambda, mu)
    } else {
        (mu, lambda)
    };
    let rho = lie.rho();
    let shifted = big + rho;
    let mut out = CharacterElt::zero(lie.rank());
    for (w, &m) in weight_multiplicities(lie, small)?.iter() {
        let d = lie.dominantize_finite(&(&shifted + w));
        if d.sign != 0 {
            out.add_term(&d.weight - rho, i64::from(d.sign) * m as i64);
        }
    }
    if let Some((w, c)) = out.terms().iter().find(|(_, &c)| c < 0) {
        return Err(Error::Arithmetic(format!("negative tensor multiplicity {c} at {w}")));
    }
    Ok(out)
}

/// `e^{2 pi i q}` computed from the exact fractional part.
pub fn unit_phase(x: Q) -> Complex64 {
    let f = frac(&x);
    let angle = 2.0 * std::f64::consts::PI * (*f.numer() as f64 / *f.denom() as f64);
    Complex64::from_polar(1.0, angle)
}

/// Trace of `exp(xi)` on the virtual representation.
pub fn character_value(lie: &LieData, chi: &CharacterElt, xi: &CartanPoint) -> Result<Complex64> {
    lie.check_rank(xi.rank())?;
    let mut total = Complex64::zero();
    for (mu, &c) in chi.terms() {
        let table = weight_multiplicities(lie, mu)?;
        let value: Complex64 = table
            .iter()
            .map(|(w, &m)| unit_phase(lie.pair(&w.0, xi)) * m as f64)
            .sum();
        total += value * c as f64;
    }
    Ok(total)
}
