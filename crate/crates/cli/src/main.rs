//! `alcove`: fusion rings, orbit resolutions and pre-quantized classes from
//! the command line.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use alcove_core::criteria::{self, Config};
use alcove_core::fusion::{fuse_basis, FusionTable};
use alcove_core::lie::{FaceIndex, LieData, LieType, Weight};
use alcove_core::prequant;
use alcove_core::resolution::{homology_report, verify_certificate, Certificate, ChainElt, TruncatedComplex};
use alcove_core::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use output::{Output, Table};

#[derive(Parser)]
#[command(name = "alcove", version, about = "Level-k fusion rings and their alcove resolutions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, env = "ALCOVE_FORMAT", default_value = "text")]
    format: Format,
    /// Write the output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Cartan data, roots, rho, h^vee, alcove vertices and the faces with |I| <= 2.
    LieInfo { group: String },
    /// Fusion product of two level-k weights.
    Fusion {
        group: String,
        #[arg(short = 'k', long = "level")]
        level: i64,
        /// First weight, fundamental-weight coordinates such as 1,0.
        #[arg(allow_hyphen_values = true)]
        lambda: String,
        #[arg(allow_hyphen_values = true)]
        mu: String,
    },
    /// All nonzero fusion structure constants at level k.
    FusionTable {
        group: String,
        #[arg(short = 'k', long = "level")]
        level: i64,
    },
    /// Homology verdicts for the truncated orbit complex.
    Resolution {
        group: String,
        /// Accepted for symmetry with the other commands; the orbit complex does not depend on it.
        #[arg(short = 'k', long = "level")]
        level: Option<i64>,
        #[arg(short = 'J', long = "face", value_delimiter = ',', required = true)]
        face: Vec<usize>,
        #[arg(short = 'N', long = "trunc")]
        trunc: usize,
    },
    /// Contract a random cycle and emit a certificate.
    Contract {
        group: String,
        #[arg(short = 'k', long = "level")]
        level: Option<i64>,
        #[arg(short = 'J', long = "face", value_delimiter = ',', required = true)]
        face: Vec<usize>,
        #[arg(short = 'N', long = "trunc")]
        trunc: usize,
        /// Degree of the cycle, strictly between 0 and the rank.
        #[arg(short = 'p', long = "degree", default_value_t = 1)]
        degree: usize,
    },
    /// Re-check a contraction certificate.
    VerifyCert { file: PathBuf },
    /// Catalog of the pre-quantized conjugacy classes at level k.
    Prequant {
        group: String,
        #[arg(short = 'k', long = "level")]
        level: i64,
    },
    /// Run the acceptance suite.
    Selftest {
        /// Wall-clock budget in seconds for the whole suite.
        #[arg(long, default_value_t = 600.0)]
        budget: f64,
        /// Override the number of random samples per randomized check.
        #[arg(long)]
        samples: Option<usize>,
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
    },
}

/// Failure classes, mapped to the documented exit codes.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(String),
    Verdict(String),
    Certificate(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Domain(_) => 3,
            Failure::Verdict(_) => 4,
            Failure::Certificate(_) => 5,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Domain(m) | Failure::Verdict(m) | Failure::Certificate(m) | Failure::Io(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::InvalidType(_) => Failure::Usage(e.to_string()),
            Error::Certificate(_) => Failure::Certificate(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type Outcome = Result<Option<Failure>, Failure>;

fn parse_group(s: &str) -> Result<LieData, Failure> {
    let t: LieType = s.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
    Ok(LieData::new(t))
}

fn parse_weight(lie: &LieData, s: &str) -> Result<Weight, Failure> {
    let w: Weight = s.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
    if w.rank() != lie.rank() {
        return Err(Failure::Usage(format!("weight {s} has {} coordinates, expected {}", w.rank(), lie.rank())));
    }
    Ok(w)
}

fn parse_face(lie: &LieData, members: &[usize]) -> Result<FaceIndex, Failure> {
    Ok(FaceIndex::new(members, lie.rank())?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = Output::new(cli.common.format, cli.common.out.clone());
    match dispatch(&cli, &out) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(f)) | Err(f) => {
            eprintln!("alcove: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn dispatch(cli: &Cli, out: &Output) -> Outcome {
    let seed = cli.common.seed;
    match &cli.command {
        Command::LieInfo { group } => lie_info(out, &parse_group(group)?),
        Command::Fusion { group, level, lambda, mu } => {
            let lie = parse_group(group)?;
            let a = parse_weight(&lie, lambda)?;
            let b = parse_weight(&lie, mu)?;
            fusion(out, &lie, *level, &a, &b)
        }
        Command::FusionTable { group, level } => fusion_table(out, &parse_group(group)?, *level),
        Command::Resolution { group, face, trunc, .. } => {
            let lie = parse_group(group)?;
            let j = parse_face(&lie, face)?;
            resolution(out, &lie, j, *trunc)
        }
        Command::Contract { group, face, trunc, degree, .. } => {
            let lie = parse_group(group)?;
            let j = parse_face(&lie, face)?;
            contract(out, &lie, j, *trunc, *degree, seed)
        }
        Command::VerifyCert { file } => verify(out, file),
        Command::Prequant { group, level } => prequant_catalog(out, &parse_group(group)?, *level),
        Command::Selftest { budget, samples, only } => selftest(out, seed, *budget, *samples, only),
    }
}

fn lie_info(out: &Output, lie: &LieData) -> Outcome {
    let info = output::LieInfo::new(lie)?;
    let mut table = Table::new(&["face", "nu", "nu_sharp", "rho_face", "weyl_order"]);
    for f in &info.faces {
        table.row(vec![
            output::join(&f.face),
            output::join(&f.nu),
            output::join(&f.nu_sharp),
            output::join(&f.rho_face),
            f.weyl_order.to_string(),
        ]);
    }
    out.emit(&info, &table, || output::lie_info_text(&info))?;
    Ok(None)
}

fn fusion(out: &Output, lie: &LieData, k: i64, a: &Weight, b: &Weight) -> Outcome {
    let product = fuse_basis(lie, a, b, k)?;
    let doc = output::FusionDocument {
        group: lie.lie_type().to_string(),
        k,
        lambda: a.0.clone(),
        mu: b.0.clone(),
        product: product
            .terms()
            .iter()
            .map(|(w, &c)| output::FusionTerm { weight: w.0.clone(), coeff: c })
            .collect(),
    };
    let mut table = Table::new(&["weight", "coeff"]);
    for (w, c) in product.terms() {
        table.row(vec![w.to_csv(), c.to_string()]);
    }
    out.emit(&doc, &table, || {
        product
            .terms()
            .iter()
            .map(|(w, c)| format!("{}: {c}\n", w.to_csv()))
            .collect()
    })?;
    Ok(None)
}

fn fusion_table(out: &Output, lie: &LieData, k: i64) -> Outcome {
    if k < 0 {
        return Err(Error::InvalidLevel { min: 0, got: k }.into());
    }
    let table = FusionTable::compute(lie, k)?;
    let doc = table.to_document();
    let mut csv = Table::new(&["a", "b", "c", "N"]);
    for c in &doc.constants {
        csv.row(vec![output::join(&c.a), output::join(&c.b), output::join(&c.c), c.n.to_string()]);
    }
    out.emit(&doc, &csv, || {
        let mut s = format!("{} level {}: {} nonzero structure constants\n", doc.group, k, doc.constants.len());
        for c in &doc.constants {
            s += &format!("({}) x ({}) -> ({}): {}\n", output::join(&c.a), output::join(&c.b), output::join(&c.c), c.n);
        }
        s
    })?;
    Ok(None)
}

fn resolution(out: &Output, lie: &LieData, j: FaceIndex, n: usize) -> Outcome {
    if n < 1 {
        return Err(Failure::Domain("truncation bound N must be at least 1".into()));
    }
    let report = homology_report(lie, j, n)?;
    let mut table = Table::new(&["p", "dim", "rank_ker", "rank_im_above", "torsion", "verdict", "ok"]);
    for d in &report.degrees {
        table.row(vec![
            d.p.to_string(),
            d.dim.to_string(),
            d.rank_ker.to_string(),
            d.rank_im_above.to_string(),
            output::join(&d.torsion),
            d.verdict.clone(),
            d.ok.to_string(),
        ]);
    }
    out.emit(&report, &table, || output::report_text(&report))?;
    if report.ok {
        Ok(None)
    } else {
        Ok(Some(Failure::Verdict(format!("{} J={} N={}: verdict mismatch", report.group, j, n))))
    }
}

fn contract(out: &Output, lie: &LieData, j: FaceIndex, n: usize, p: usize, seed: u64) -> Outcome {
    if p == 0 || p >= lie.rank() {
        return Err(Failure::Domain(format!("degree {p} is not strictly between 0 and the rank {}", lie.rank())));
    }
    let tc = TruncatedComplex::new(lie, j, n)?;
    let basis = tc.cycle_basis(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cycle = ChainElt::zero(p);
    for z in &basis {
        let c: i64 = rng.gen_range(-2..=2);
        cycle = cycle.add(&z.scale(c))?;
    }
    let chain = match tc.complex().contract_cycle(&cycle) {
        Ok(b) => b,
        Err(e @ (Error::ContractionFailed(_) | Error::Arithmetic(_))) => {
            return Err(Failure::Verdict(e.to_string()));
        }
        Err(e) => return Err(e.into()),
    };
    let cert = Certificate::new(tc.complex(), &cycle, &chain);
    let mut table = Table::new(&["role", "face", "x", "coeff"]);
    for (role, terms) in [("cycle", &cert.cycle), ("chain", &cert.chain)] {
        for t in terms {
            table.row(vec![role.into(), output::join(&t.face), t.x.join(","), t.coeff.to_string()]);
        }
    }
    out.emit(&cert, &table, || {
        format!(
            "{} J={} N={}: cycle of degree {p} with {} terms bounded by a chain with {} terms\n",
            cert.group,
            j,
            n,
            cert.cycle.len(),
            cert.chain.len()
        )
    })?;
    Ok(None)
}

fn verify(out: &Output, file: &PathBuf) -> Outcome {
    let text = std::fs::read_to_string(file)?;
    let cert: Certificate =
        serde_json::from_str(&text).map_err(|e| Failure::Certificate(format!("unreadable certificate: {e}")))?;
    verify_certificate(&cert)?;
    let doc = output::VerifyDocument { valid: true, group: cert.group.clone(), p: cert.p };
    let mut table = Table::new(&["valid", "group", "p"]);
    table.row(vec!["true".into(), cert.group.clone(), cert.p.to_string()]);
    out.emit(&doc, &table, || "certificate valid\n".to_string())?;
    Ok(None)
}

fn prequant_catalog(out: &Output, lie: &LieData, k: i64) -> Outcome {
    let rows = prequant::catalog(lie, k)?;
    let mut table = Table::new(&["xi", "face", "mu", "weyl_order", "phases"]);
    for r in &rows {
        table.row(vec![
            r.xi.join(","),
            output::join(&r.face),
            output::join(&r.mu),
            r.weyl_order.to_string(),
            r.phases.join(","),
        ]);
    }
    let doc = output::CatalogDocument { group: lie.lie_type().to_string(), k, classes: rows };
    out.emit(&doc, &table, || {
        let mut s = format!("{} level {k}: {} pre-quantized classes\n", doc.group, doc.classes.len());
        for r in &doc.classes {
            s += &format!(
                "xi = ({}) face {{{}}} mu = ({}) |W_I| = {} phases ({})\n",
                r.xi.join(", "),
                output::join(&r.face),
                output::join(&r.mu),
                r.weyl_order,
                r.phases.join(", ")
            );
        }
        s
    })?;
    Ok(None)
}

fn selftest(out: &Output, seed: u64, budget: f64, samples: Option<usize>, only: &[usize]) -> Outcome {
    let mut config = Config { seed, ..Config::default() };
    if let Some(s) = samples {
        config.ring_samples = s;
        config.cycle_samples = s;
    }
    let ids: Vec<usize> = if only.is_empty() { (1..=10).collect() } else { only.to_vec() };
    if let Some(bad) = ids.iter().find(|&&i| !(1..=10).contains(&i)) {
        return Err(Failure::Usage(format!("no criterion {bad}")));
    }
    let start = Instant::now();
    let outcomes: Vec<criteria::Outcome> = ids.iter().map(|&i| criteria::run(i, &config)).collect();
    let elapsed = start.elapsed().as_secs_f64();
    let mut table = Table::new(&["id", "title", "passed", "seconds", "detail"]);
    for o in &outcomes {
        table.row(vec![o.id.to_string(), o.title.into(), o.passed.to_string(), format!("{:.3}", o.seconds), o.detail.clone()]);
    }
    let doc = output::SelftestDocument { seed, budget_seconds: budget, seconds: elapsed, criteria: outcomes };
    out.emit(&doc, &table, || {
        let mut s: String = doc.criteria.iter().map(|o| format!("{o}\n")).collect();
        s += &format!("total {elapsed:.2} s, budget {budget} s\n");
        s
    })?;
    let failed: Vec<usize> = doc.criteria.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    if !failed.is_empty() {
        Ok(Some(Failure::Verdict(format!("failed criteria: {failed:?}"))))
    } else if elapsed > budget {
        Ok(Some(Failure::Verdict(format!("suite took {elapsed:.1} s, over the {budget} s budget"))))
    } else {
        Ok(None)
    }
}
