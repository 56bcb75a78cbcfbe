//! The per-orbit chain complex `C_*(J)`: cells `beta_I(x)` for `x` in the
//! open cone of `I`, the boundary, the augmentation, the homotopies `h_i`,
//! the chain maps `A_i`, and a cycle contractor that produces checkable
//! certificates.

mod certificate;
mod truncated;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::affine::{ConePosition, Orbit, OrbitPoint};
use crate::error::{Error, Result};
use crate::lie::{FaceIndex, LieData};

pub use certificate::{verify_certificate, CertTerm, Certificate};
pub use truncated::{homology_report, DegreeReport, HomologyReport, TruncatedComplex};

/// Basis cell `beta_I(x)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub face: FaceIndex,
    pub point: OrbitPoint,
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b{}({})", self.face, self.point.point)
    }
}

/// A chain of fixed degree `p`: every face has `p + 1` members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainElt {
    degree: usize,
    terms: BTreeMap<Cell, i64>,
}

impl ChainElt {
    pub fn zero(degree: usize) -> Self {
        ChainElt {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Cell, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, cell: &Cell) -> i64 {
        self.terms.get(cell).copied().unwrap_or(0)
    }

    pub fn max_length(&self) -> Option<usize> {
        self.terms.keys().map(|c| c.point.length).max()
    }

    pub(crate) fn add_term(&mut self, cell: Cell, c: i64) {
        debug_assert_eq!(cell.face.len(), self.degree + 1);
        if c == 0 {
            return;
        }
        match self.terms.entry(cell) {
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

    pub fn add(&self, other: &ChainElt) -> Result<ChainElt> {
        if self.degree != other.degree {
            return Err(Error::WrongDegree(other.degree));
        }
        let mut out = self.clone();
        for (cell, &c) in &other.terms {
            out.add_term(cell.clone(), c);
        }
        Ok(out)
    }

    pub fn scale(&self, s: i64) -> ChainElt {
        let mut out = ChainElt::zero(self.degree);
        for (cell, &c) in &self.terms {
            out.add_term(cell.clone(), s * c);
        }
        out
    }

    pub fn sub(&self, other: &ChainElt) -> Result<ChainElt> {
        self.add(&other.scale(-1))
    }
}

/// `C_*(J)` restricted to orbit points of length at most `N`.
#[derive(Debug, Clone)]
pub struct OrbitComplex<'a> {
    lie: &'a LieData,
    orbit: Orbit,
}

impl<'a> OrbitComplex<'a> {
    pub fn new(lie: &'a LieData, j: FaceIndex, bound: usize) -> Result<Self> {
        Ok(OrbitComplex {
            lie,
            orbit: lie.orbit_up_to_length(&j, bound)?,
        })
    }

    pub fn lie(&self) -> &'a LieData {
        self.lie
    }

    pub fn orbit(&self) -> &Orbit {
        &self.orbit
    }

    pub fn face(&self) -> FaceIndex {
        self.orbit.face()
    }

    pub fn bound(&self) -> usize {
        self.orbit.bound()
    }

    pub fn top_degree(&self) -> usize {
        self.lie.rank()
    }

    pub fn is_full(&self) -> bool {
        self.face().is_full(self.lie.rank())
    }

    /// All `(I, x)` with `|I| = p + 1`, `x` interior to the cone of `I`,
    /// ordered by `I` and then by the coordinates of `x`.
    pub fn basis_elements(&self, p: usize) -> Vec<Cell> {
        if p > self.lie.rank() {
            return vec![];
        }
        let mut out = vec![];
        for face in FaceIndex::all_of_size(self.lie.rank(), p + 1) {
            for x in self.orbit.points() {
                if self.lie.cone_position(&x.point, &face) == ConePosition::Interior {
                    out.push(Cell {
                        face,
                        point: x.clone(),
                    });
                }
            }
        }
        out
    }

    pub fn is_basis_cell(&self, cell: &Cell) -> bool {
        cell.face.bits() >> (self.lie.rank() + 1) == 0
            && self.orbit.length_of(&cell.point.point) == Some(cell.point.length)
            && self.lie.cone_position(&cell.point.point, &cell.face) == ConePosition::Interior
    }

    pub fn basis_chain(&self, cell: &Cell) -> Result<ChainElt> {
        if !self.is_basis_cell(cell) {
            return Err(Error::NotABasisCell {
                face: cell.face.to_string(),
                point: cell.point.point.to_string(),
            });
        }
        let mut c = ChainElt::zero(cell.face.len() - 1);
        c.add_term(cell.clone(), 1);
        Ok(c)
    }

    /// `d beta_I(x) = sum_r (-1)^{r + l(u_r)} beta_{I - i_r}(u_r x)`, where
    /// `u_r x` is the representative of `x` in the closed cone of `I - i_r`;
    /// boundary representatives contribute zero.
    pub fn boundary(&self, c: &ChainElt) -> Result<ChainElt> {
        if c.degree == 0 {
            return Err(Error::WrongDegree(0));
        }
        let mut out = ChainElt::zero(c.degree - 1);
        for (cell, &a) in &c.terms {
            for r in 0..=c.degree {
                let face = cell.face.omit_position(r).expect("face has at least two members");
                let red = self.orbit.reduce_to_cone(self.lie, &cell.point, &face)?;
                if self.lie.cone_position(&red.image.point, &face) != ConePosition::Interior {
                    continue;
                }
                let sign = if r % 2 == 0 { 1 } else { -1 } * red.parity;
                out.add_term(
                    Cell {
                        face,
                        point: red.image,
                    },
                    sign * a,
                );
            }
        }
        Ok(out)
    }

    /// `beta_i(x) -> (-1)^{l(x)}` when `J` is the whole alcove, zero otherwise.
    pub fn augmentation(&self, c: &ChainElt) -> Result<i64> {
        if c.degree != 0 {
            return Err(Error::WrongDegree(c.degree));
        }
        if !self.is_full() {
            return Ok(0);
        }
        Ok(c.terms
            .iter()
            .map(|(cell, &a)| if cell.point.length % 2 == 0 { a } else { -a })
            .sum())
    }

    /// `h_i beta_I(x) = (-1)^r beta_{I + i}(x)` with `r` the insertion
    /// position of `i`; zero if `i` is already in `I`.
    pub fn homotopy_h(&self, i: usize, c: &ChainElt) -> Result<ChainElt> {
        self.lie.check_wall(i)?;
        let mut out = ChainElt::zero(c.degree + 1);
        for (cell, &a) in &c.terms {
            if cell.face.contains(i) {
                continue;
            }
            let sign = if cell.face.position_of(i) % 2 == 0 { 1 } else { -1 };
            out.add_term(
                Cell {
                    face: cell.face.with(i),
                    point: cell.point.clone(),
                },
                sign * a,
            );
        }
        Ok(out)
    }

    fn boundary_or_zero(&self, c: &ChainElt) -> Result<Option<ChainElt>> {
        if c.degree == 0 {
            Ok(None)
        } else {
            self.boundary(c).map(Some)
        }
    }

    /// `A_i = id - h_i d - d h_i`.
    pub fn chain_map_a(&self, i: usize, c: &ChainElt) -> Result<ChainElt> {
        let mut out = c.clone();
        if let Some(d) = self.boundary_or_zero(c)? {
            out = out.sub(&self.homotopy_h(i, &d)?)?;
        }
        let h = self.homotopy_h(i, c)?;
        if !h.is_zero() {
            out = out.sub(&self.boundary(&h)?)?;
        }
        Ok(out)
    }

    /// `A = A_0 A_1 ... A_l`, with `A_l` applied first.
    pub fn chain_map_total(&self, c: &ChainElt) -> Result<ChainElt> {
        let mut cur = c.clone();
        for i in (0..=self.lie.rank()).rev() {
            cur = self.chain_map_a(i, &cur)?;
        }
        Ok(cur)
    }

    /// For a cycle `c` of degree `0 < p < l`, returns `b` with `d b = c`,
    /// accumulating `h_i` of the running cycle along the iteration of `A`.
    pub fn contract_cycle(&self, c: &ChainElt) -> Result<ChainElt> {
        let p = c.degree;
        if p == 0 || p >= self.lie.rank() {
            return Err(Error::WrongDegree(p));
        }
        for cell in c.terms.keys() {
            if !self.is_basis_cell(cell) {
                return Err(Error::NotABasisCell {
                    face: cell.face.to_string(),
                    point: cell.point.point.to_string(),
                });
            }
        }
        if !self.boundary(c)?.is_zero() {
            return Err(Error::NotACycle);
        }
        let rounds = c.max_length().map_or(0, |m| m + 1);
        let mut phi = c.clone();
        let mut b = ChainElt::zero(p + 1);
        for _ in 0..rounds {
            if phi.is_zero() {
                break;
            }
            for i in (0..=self.lie.rank()).rev() {
                let h = self.homotopy_h(i, &phi)?;
                if h.is_zero() {
                    continue;
                }
                phi = phi.sub(&self.boundary(&h)?)?;
                b = b.add(&h)?;
            }
        }
        if !phi.is_zero() {
            return Err(Error::ContractionFailed(rounds));
        }
        if self.boundary(&b)? != *c {
            return Err(Error::Arithmetic("contraction does not bound the cycle".into()));
        }
        Ok(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{lie, CartanPoint, LieType};
    use crate::rational::q;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pt(v: &[(i64, i64)]) -> CartanPoint {
        CartanPoint(v.iter().map(|&(n, d)| q(n, d)).collect())
    }

    fn face(m: &[usize], rank: usize) -> FaceIndex {
        FaceIndex::new(m, rank).unwrap()
    }

    fn cell(cx: &OrbitComplex, f: FaceIndex, x: CartanPoint) -> Cell {
        Cell {
            face: f,
            point: cx.orbit().orbit_point(&x).unwrap(),
        }
    }

    #[test]
    fn basis_examples() {
        let a1 = lie("A1");
        let cx = OrbitComplex::new(&a1, FaceIndex::full(1), 0).unwrap();
        let base = pt(&[(1, 4)]);
        assert_eq!(cx.basis_elements(1), vec![cell(&cx, FaceIndex::full(1), base.clone())]);
        assert_eq!(
            cx.basis_elements(0),
            vec![cell(&cx, face(&[0], 1), base.clone()), cell(&cx, face(&[1], 1), base)]
        );
        assert!(cx.basis_elements(2).is_empty());
    }

    #[test]
    fn boundary_examples() {
        let a1 = lie("A1");
        let cx = OrbitComplex::new(&a1, FaceIndex::full(1), 2).unwrap();
        let full = FaceIndex::full(1);
        let b = cx.basis_chain(&cell(&cx, full, pt(&[(1, 4)]))).unwrap();
        let d = cx.boundary(&b).unwrap();
        let mut want = ChainElt::zero(0);
        want.add_term(cell(&cx, face(&[1], 1), pt(&[(1, 4)])), 1);
        want.add_term(cell(&cx, face(&[0], 1), pt(&[(1, 4)])), -1);
        assert_eq!(d, want);
        let b = cx.basis_chain(&cell(&cx, full, pt(&[(-1, 4)]))).unwrap();
        let mut want = ChainElt::zero(0);
        want.add_term(cell(&cx, face(&[1], 1), pt(&[(-1, 4)])), 1);
        want.add_term(cell(&cx, face(&[0], 1), pt(&[(1, 4)])), 1);
        assert_eq!(cx.boundary(&b).unwrap(), want);
        assert_eq!(cx.boundary(&ChainElt::zero(0)), Err(Error::WrongDegree(0)));
        assert_eq!(cx.augmentation(&cx.boundary(&b).unwrap()).unwrap(), 0);
    }

    #[test]
    fn augmentation_examples() {
        let a1 = lie("A1");
        let cx = OrbitComplex::new(&a1, FaceIndex::full(1), 2).unwrap();
        let base = cx.basis_chain(&cell(&cx, face(&[0], 1), pt(&[(1, 4)]))).unwrap();
        assert_eq!(cx.augmentation(&base).unwrap(), 1);
        let one = cx.basis_chain(&cell(&cx, face(&[0], 1), pt(&[(3, 4)]))).unwrap();
        assert_eq!(cx.augmentation(&one).unwrap(), -1);
        let partial = OrbitComplex::new(&a1, face(&[0], 1), 2).unwrap();
        let c = partial.basis_chain(&partial.basis_elements(0)[0]).unwrap();
        assert_eq!(partial.augmentation(&c).unwrap(), 0);
        let top = cx.basis_chain(&cx.basis_elements(1)[0]).unwrap();
        assert!(cx.augmentation(&top).is_err());
    }

    #[test]
    fn homotopy_examples() {
        let a1 = lie("A1");
        let cx = OrbitComplex::new(&a1, FaceIndex::full(1), 1).unwrap();
        let x = pt(&[(1, 4)]);
        let b0 = cx.basis_chain(&cell(&cx, face(&[0], 1), x.clone())).unwrap();
        let mut want = ChainElt::zero(1);
        want.add_term(cell(&cx, FaceIndex::full(1), x.clone()), -1);
        assert_eq!(cx.homotopy_h(1, &b0).unwrap(), want);
        let b1 = cx.basis_chain(&cell(&cx, face(&[1], 1), x.clone())).unwrap();
        assert_eq!(cx.homotopy_h(0, &b1).unwrap(), want.scale(-1));
        assert!(cx.homotopy_h(0, &b0).unwrap().is_zero());
    }

    fn configurations() -> Vec<(&'static str, usize)> {
        vec![("A1", 6), ("A2", 5), ("C2", 5), ("G2", 4), ("A3", 3), ("B3", 2)]
    }

    #[test]
    fn boundary_squares_to_zero_and_preserves_filtration() {
        for (name, n) in configurations() {
            let data = lie(name);
            for j in FaceIndex::all(data.rank()) {
                if data.rank() == 3 && j.len() != 1 && !j.is_full(3) {
                    continue;
                }
                let cx = OrbitComplex::new(&data, j, n).unwrap();
                for p in 1..=data.rank() {
                    for c in cx.basis_elements(p) {
                        let b = cx.basis_chain(&c).unwrap();
                        let d = cx.boundary(&b).unwrap();
                        assert!(d.max_length().unwrap_or(0) <= c.point.length);
                        if p >= 2 {
                            assert!(cx.boundary(&d).unwrap().is_zero(), "{name} {j} {c}");
                        } else {
                            assert_eq!(cx.augmentation(&d).unwrap(), 0);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn chain_maps_commute_with_boundary_and_lower_length() {
        for (name, n) in [("A2", 4), ("C2", 4), ("G2", 3), ("A3", 2)] {
            let data = lie(name);
            let l = data.rank();
            for j in FaceIndex::all(l) {
                let cx = OrbitComplex::new(&data, j, n).unwrap();
                for p in 0..=l {
                    for c in cx.basis_elements(p) {
                        let b = cx.basis_chain(&c).unwrap();
                        for i in 0..=l {
                            let a = cx.chain_map_a(i, &b).unwrap();
                            assert!(a.max_length().unwrap_or(0) <= c.point.length);
                            if p >= 1 {
                                let lhs = cx.chain_map_a(i, &cx.boundary(&b).unwrap()).unwrap();
                                let rhs = cx.boundary(&a).unwrap();
                                assert_eq!(lhs, rhs, "{name} {j} {c} i={i}");
                            }
                            if c.face.contains(i) {
                                let smaller = c.face.without(i);
                                let on_wall = smaller.is_none_or(|s| {
                                    data.cone_position(&c.point.point, &s) != ConePosition::Interior
                                });
                                if on_wall {
                                    let low = a.sub(&b).unwrap();
                                    assert!(low.max_length().unwrap_or(0) < c.point.length || low.is_zero());
                                }
                            }
                        }
                        if 0 < p && p < l && c.point.length > 0 {
                            let total = cx.chain_map_total(&b).unwrap();
                            assert!(total.max_length().unwrap_or(0) < c.point.length, "{name} {j} {c}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn contract_boundaries() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (name, n) in [("A2", 4), ("B2", 4), ("A3", 2)] {
            let data = lie(name);
            let l = data.rank();
            let cx = OrbitComplex::new(&data, FaceIndex::full(l), n).unwrap();
            assert!(cx.contract_cycle(&ChainElt::zero(1)).unwrap().is_zero());
            for p in 1..l {
                let top = cx.basis_elements(p + 1);
                for _ in 0..20 {
                    let mut b0 = ChainElt::zero(p + 1);
                    for _ in 0..4 {
                        b0.add_term(top[rng.gen_range(0..top.len())].clone(), rng.gen_range(-3..=3));
                    }
                    let c = cx.boundary(&b0).unwrap();
                    let b = cx.contract_cycle(&c).unwrap();
                    assert_eq!(cx.boundary(&b).unwrap(), c);
                }
            }
        }
        let a2 = lie("A2");
        let cx = OrbitComplex::new(&a2, FaceIndex::full(2), 2).unwrap();
        let c = cx.basis_chain(&cx.basis_elements(1)[0]).unwrap();
        assert_eq!(cx.contract_cycle(&c), Err(Error::NotACycle));
        assert!(cx.contract_cycle(&ChainElt::zero(0)).is_err());
    }

    /// Unit map at level 0: a dominant `mu` with `mu + rho` regular at level
    /// `h^vee` gives the cell `beta_0(B^sharp(mu + rho) / h^vee)`, and the
    /// augmentation equals the sign of the quotient map.
    #[test]
    fn unit_inclusion_matches_quotient_sign() {
        use crate::fusion::{quotient_map, CharacterElt};
        for t in LieType::all_up_to_rank(2) {
            let data = LieData::new(t);
            let l = t.rank();
            let h = data.dual_coxeter();
            let cx = OrbitComplex::new(&data, FaceIndex::full(l), 30).unwrap();
            let zero_face = FaceIndex::singleton(0);
            for a in 0..5 {
                for b in 0..5 {
                    if l == 1 && b > 0 {
                        continue;
                    }
                    let mu = crate::lie::Weight(if l == 1 { vec![a] } else { vec![a, b] });
                    let q0 = quotient_map(&data, &CharacterElt::irreducible(&data, &mu).unwrap(), 0).unwrap();
                    let shifted = (&mu + data.rho()).to_rational();
                    let x = data.b_sharp(&shifted).unwrap().scale(q(1, h));
                    match cx.orbit().orbit_point(&x) {
                        Ok(point) => {
                            let c = Cell { face: zero_face, point };
                            assert!(cx.is_basis_cell(&c));
                            let e = cx.augmentation(&cx.basis_chain(&c).unwrap()).unwrap();
                            assert_eq!(q0.coeff(&crate::lie::Weight::zero(l)), e, "{t} {mu}");
                        }
                        Err(_) => assert!(q0.is_zero(), "{t} {mu}"),
                    }
                }
            }
        }
    }
}
