//! Rendering of command results as JSON, CSV or plain text.

use std::fmt::Display;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use alcove_core::criteria;
use alcove_core::lie::{FaceIndex, LieData, LieDataDocument};
use alcove_core::prequant::CatalogRow;
use alcove_core::rational::fmt_q;
use alcove_core::resolution::HomologyReport;
use serde::Serialize;

use crate::{Failure, Format};

pub fn join<T: Display>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Rows for CSV output, written with a header line.
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: vec![],
        }
    }

    pub fn row(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn to_csv(&self) -> Result<String, Failure> {
        let mut w = csv::Writer::from_writer(vec![]);
        let err = |e: csv::Error| Failure::Io(e.to_string());
        w.write_record(&self.header).map_err(err)?;
        for r in &self.rows {
            w.write_record(r).map_err(err)?;
        }
        let bytes = w.into_inner().map_err(|e| Failure::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Failure::Io(e.to_string()))
    }
}

pub struct Output {
    format: Format,
    path: Option<PathBuf>,
}

impl Output {
    pub fn new(format: Format, path: Option<PathBuf>) -> Self {
        Output { format, path }
    }

    pub fn emit<T: Serialize>(&self, doc: &T, table: &Table, text: impl FnOnce() -> String) -> Result<(), Failure> {
        let body = match self.format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(doc).map_err(|e| Failure::Io(e.to_string()))?;
                s.push('\n');
                s
            }
            Format::Csv => table.to_csv()?,
            Format::Text => text(),
        };
        match &self.path {
            Some(p) => fs::write(p, body)?,
            None => std::io::stdout().write_all(body.as_bytes())?,
        }
        Ok(())
    }
}

#[derive(Serialize)]
pub struct FaceRow {
    pub face: Vec<usize>,
    pub nu: Vec<String>,
    pub nu_sharp: Vec<String>,
    pub rho_face: Vec<String>,
    pub weyl_order: u64,
}

#[derive(Serialize)]
pub struct LieInfo {
    #[serde(flatten)]
    pub data: LieDataDocument,
    pub faces: Vec<FaceRow>,
}

impl LieInfo {
    pub fn new(lie: &LieData) -> Result<Self, Failure> {
        let mut faces = vec![];
        for face in FaceIndex::all(lie.rank()).into_iter().filter(|f| f.len() <= 2) {
            let fd = lie.face_data(&face)?;
            faces.push(FaceRow {
                face: face.members(),
                nu: fd.nu_i.0.iter().map(fmt_q).collect(),
                nu_sharp: fd.nu_i_sharp.to_strings(),
                rho_face: fd.rho_i.0.iter().map(fmt_q).collect(),
                weyl_order: fd.weyl_order as u64,
            });
        }
        Ok(LieInfo {
            data: lie.to_document(),
            faces,
        })
    }
}

pub fn lie_info_text(info: &LieInfo) -> String {
    let d = &info.data;
    let mut s = format!("type {} (rank {})\n", d.lie_type, d.rank);
    s += "Cartan matrix:\n";
    for row in &d.cartan_matrix {
        s += &format!("  {}\n", row.iter().map(|x| format!("{x:>3}")).collect::<String>());
    }
    s += &format!("positive roots ({}), in simple roots:\n", d.positive_roots.len());
    for r in &d.positive_roots {
        s += &format!("  ({})\n", join(r));
    }
    s += &format!("highest root ({})\n", join(&d.highest_root));
    s += &format!("ρ = ({})\n", join(&d.rho));
    s += &format!("h∨ = {}\n", d.dual_coxeter);
    s += "alcove vertices (coroot coordinates):\n";
    for (i, v) in d.alcove_vertices.iter().enumerate() {
        s += &format!("  {i}: ({})\n", v.join(", "));
    }
    s += "faces with |I| <= 2:\n";
    for f in &info.faces {
        s += &format!(
            "  I = {{{}}}  ν_I = ({})  ν_I♯ = ({})  |W_I| = {}\n",
            join(&f.face),
            f.nu.join(", "),
            f.nu_sharp.join(", "),
            f.weyl_order
        );
    }
    s
}

#[derive(Serialize)]
pub struct FusionTerm {
    pub weight: Vec<i64>,
    pub coeff: i64,
}

#[derive(Serialize)]
pub struct FusionDocument {
    #[serde(rename = "type")]
    pub group: String,
    pub k: i64,
    pub lambda: Vec<i64>,
    pub mu: Vec<i64>,
    pub product: Vec<FusionTerm>,
}

pub fn report_text(r: &HomologyReport) -> String {
    let mut s = format!(
        "{} J = {{{}}} N = {}: boundary squares to zero: {}\n",
        r.group,
        join(&r.j),
        r.n,
        r.boundary_squared_zero
    );
    for d in &r.degrees {
        s += &format!(
            "  p = {}: dim {}, rank ker {}, rank im {}: {}{}\n",
            d.p,
            d.dim,
            d.rank_ker,
            d.rank_im_above,
            d.verdict,
            if d.ok { "" } else { "  [MISMATCH]" }
        );
    }
    s += if r.ok { "all verdicts as expected\n" } else { "verdict mismatch\n" };
    s
}

#[derive(Serialize)]
pub struct VerifyDocument {
    pub valid: bool,
    pub group: String,
    pub p: usize,
}

#[derive(Serialize)]
pub struct CatalogDocument {
    #[serde(rename = "type")]
    pub group: String,
    pub k: i64,
    pub classes: Vec<CatalogRow>,
}

#[derive(Serialize)]
pub struct SelftestDocument {
    pub seed: u64,
    pub budget_seconds: f64,
    pub seconds: f64,
    pub criteria: Vec<criteria::Outcome>,
}
