//! Self-contained contraction certificates: a cycle `c` and a chain `b` with
//! `d b = c`, re-checkable from the file alone.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::{CartanPoint, FaceIndex, LieData, LieType};

use super::{Cell, ChainElt, OrbitComplex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertTerm {
    pub face: Vec<usize>,
    /// Coroot coordinates as exact fractions.
    pub x: Vec<String>,
    pub coeff: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub group: String,
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    #[serde(rename = "N")]
    pub n: usize,
    pub p: usize,
    pub cycle: Vec<CertTerm>,
    pub chain: Vec<CertTerm>,
}

fn terms_of(c: &ChainElt) -> Vec<CertTerm> {
    c.terms()
        .iter()
        .map(|(cell, &coeff)| CertTerm {
            face: cell.face.members(),
            x: cell.point.point.to_strings(),
            coeff,
        })
        .collect()
}

fn chain_of(cx: &OrbitComplex, degree: usize, terms: &[CertTerm]) -> Result<ChainElt> {
    let rank = cx.lie().rank();
    let mut out = ChainElt::zero(degree);
    for t in terms {
        let face = FaceIndex::new(&t.face, rank)?;
        if face.len() != degree + 1 {
            return Err(Error::WrongFaceSize {
                expected: degree + 1,
                got: face.len(),
            });
        }
        let point = CartanPoint::from_strings(&t.x)?;
        cx.lie().check_rank(point.rank())?;
        let cell = Cell {
            face,
            point: cx.orbit().orbit_point(&point)?,
        };
        if !cx.is_basis_cell(&cell) {
            return Err(Error::NotABasisCell {
                face: face.to_string(),
                point: point.to_string(),
            });
        }
        out.add_term(cell, t.coeff);
    }
    Ok(out)
}

impl Certificate {
    pub fn new(cx: &OrbitComplex, cycle: &ChainElt, chain: &ChainElt) -> Self {
        Certificate {
            group: cx.lie().lie_type().to_string(),
            j: cx.face().members(),
            n: cx.bound(),
            p: cycle.degree(),
            cycle: terms_of(cycle),
            chain: terms_of(chain),
        }
    }
}

/// Rebuilds the truncated complex named in the certificate and checks that
/// every key is a basis cell, that the cycle is a cycle, and that the chain
/// bounds it.
pub fn verify_certificate(cert: &Certificate) -> Result<()> {
    let wrap = |e: Error| Error::Certificate(e.to_string());
    let lie_type: LieType = cert.group.parse().map_err(wrap)?;
    let lie = LieData::new(lie_type);
    let j = FaceIndex::new(&cert.j, lie.rank()).map_err(wrap)?;
    if cert.p == 0 || cert.p >= lie.rank() {
        return Err(Error::Certificate(format!("degree {} is not interior", cert.p)));
    }
    let cx = OrbitComplex::new(&lie, j, cert.n).map_err(wrap)?;
    let cycle = chain_of(&cx, cert.p, &cert.cycle).map_err(wrap)?;
    let chain = chain_of(&cx, cert.p + 1, &cert.chain).map_err(wrap)?;
    if !cx.boundary(&cycle).map_err(wrap)?.is_zero() {
        return Err(Error::Certificate("cycle has nonzero boundary".into()));
    }
    if cx.boundary(&chain).map_err(wrap)? != cycle {
        return Err(Error::Certificate("boundary of chain differs from cycle".into()));
    }
    Ok(())
}
