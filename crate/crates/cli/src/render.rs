//! Text and JSON renderings of reports.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use ucr_core::channel::AliasingWarning;
use ucr_core::combinatorics::{Partition, Tableau, TypedTableau};
use ucr_core::spechtspace::{Block, DecompositionReport, IntKetVector};
use ucr_core::verify::OracleReport;

/// Stable JSON form of a decomposition report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub d: usize,
    pub n: usize,
    pub blocks: Vec<BlockJson>,
    pub dimension_check: u64,
    pub commutant_dim: u64,
    pub interaction_dim: u64,
    pub largest_full_matrix: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockJson {
    pub lambda: Vec<usize>,
    pub dim: u64,
    pub mult: u64,
}

impl From<&DecompositionReport> for ReportJson {
    fn from(r: &DecompositionReport) -> Self {
        Self {
            d: r.d,
            n: r.n,
            blocks: r
                .blocks
                .iter()
                .map(|b| BlockJson {
                    lambda: b.lambda.parts().to_vec(),
                    dim: b.dim,
                    mult: b.mult,
                })
                .collect(),
            dimension_check: r.dimension_check(),
            commutant_dim: r.commutant_dim(),
            interaction_dim: r.interaction_dim(),
            largest_full_matrix: r.largest_full_matrix(),
        }
    }
}

impl ReportJson {
    /// The blocks as library values; fails if a shape is not a partition.
    pub fn to_blocks(&self) -> ucr_core::Result<Vec<Block>> {
        self.blocks
            .iter()
            .map(|b| {
                Ok(Block {
                    lambda: Partition::new(b.lambda.clone())?,
                    dim: b.dim,
                    mult: b.mult,
                })
            })
            .collect()
    }
}

pub fn report_text(r: &DecompositionReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "(C^{})^(x){}: {} blocks", r.d, r.n, r.blocks.len());
    let width = r.blocks.iter().map(|b| b.lambda.to_string().len()).max().unwrap_or(6).max(6);
    let _ = writeln!(s, "  {:<width$}  {:>8}  {:>8}", "lambda", "dim", "mult");
    for b in &r.blocks {
        let _ = writeln!(s, "  {:<width$}  {:>8}  {:>8}", b.lambda.to_string(), b.dim, b.mult);
    }
    let _ = writeln!(s, "dimension check: {} (d^n = {})", r.dimension_check(), (r.d as u64).pow(r.n as u32));
    let _ = writeln!(s, "commutant dim (sum dim^2): {}", r.commutant_dim());
    let _ = writeln!(s, "interaction dim (sum mult^2): {}", r.interaction_dim());
    let _ = writeln!(s, "largest full matrix algebra: M_{}", r.largest_full_matrix());
    if !r.bases.is_empty() {
        let _ = writeln!(s, "isotypic bases: {} orthonormal blocks built", r.bases.len());
    }
    s
}

/// One oracle result in serializable form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportLine {
    pub name: String,
    pub expected: f64,
    pub observed: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "String::is_empty", default)]
    pub detail: String,
}

impl From<&OracleReport> for ReportLine {
    fn from(r: &OracleReport) -> Self {
        Self {
            name: r.name.clone(),
            expected: r.expected,
            observed: r.observed,
            tolerance: r.tolerance,
            pass: r.pass,
            detail: r.detail.clone(),
        }
    }
}

fn number(x: f64) -> String {
    if x.fract() == 0.0 && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else if (1e-3..1e6).contains(&x.abs()) {
        format!("{x}")
    } else {
        format!("{x:.3e}")
    }
}

pub fn report_line_text(r: &OracleReport) -> String {
    let mut s = format!(
        "{} {}: expected {}, observed {}",
        if r.pass { "PASS" } else { "FAIL" },
        r.name,
        number(r.expected),
        number(r.observed)
    );
    if r.tolerance > 0.0 {
        let _ = write!(s, " (tolerance {:.0e})", r.tolerance);
    }
    if !r.detail.is_empty() {
        let _ = write!(s, "; {}", r.detail);
    }
    s
}

pub fn aliasing_text(w: &AliasingWarning) -> String {
    format!(
        "warning: angle {} of generator {} times spectral gap {} is within 1e-6 of {} * 2pi; \
         the channel may fix more than the permutation algebra",
        w.angle, w.generator, w.gap, w.multiple
    )
}

fn ket_label(v: &IntKetVector, k: &ucr_core::spechtspace::KetIndex) -> String {
    if v.d() <= 10 {
        k.digits().iter().map(|x| char::from_digit(*x as u32, 10).unwrap()).collect()
    } else {
        k.digits().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub ket: String,
    pub coeff: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VectorJson {
    pub t: Vec<Vec<usize>>,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemistandardJson {
    pub tableau: Vec<Vec<usize>>,
    pub vectors: Vec<VectorJson>,
}

/// Output of the `tableaux` command.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableauxJson {
    pub lambda: Vec<usize>,
    pub dim: u64,
    pub standard: Vec<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kostka: Option<usize>,
    pub semistandard: Vec<SemistandardJson>,
}

impl TableauxJson {
    pub fn new(lambda: &Partition, dim: u64, standard: &[Tableau], mu: Option<&[usize]>) -> Self {
        Self {
            lambda: lambda.parts().to_vec(),
            dim,
            standard: standard.iter().map(|t| t.rows().to_vec()).collect(),
            mu: mu.map(<[usize]>::to_vec),
            kostka: None,
            semistandard: Vec::new(),
        }
    }

    pub fn push_semistandard(&mut self, big_t: &TypedTableau, vectors: &[(Tableau, IntKetVector)]) {
        self.semistandard.push(SemistandardJson {
            tableau: big_t.rows().to_vec(),
            vectors: vectors
                .iter()
                .map(|(t, v)| VectorJson {
                    t: t.rows().to_vec(),
                    terms: v
                        .terms()
                        .map(|(k, c)| TermJson {
                            ket: ket_label(v, k),
                            coeff: c,
                        })
                        .collect(),
                })
                .collect(),
        });
    }

    pub fn to_text(&self) -> String {
        let rows = |r: &Vec<Vec<usize>>| {
            r.iter()
                .map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
                .collect::<Vec<_>>()
                .join(" / ")
        };
        let shape = self.lambda.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        let mut s = String::new();
        let _ = writeln!(s, "shape ({shape}): {} standard tableaux", self.dim);
        for t in &self.standard {
            let _ = writeln!(s, "  {}", rows(t));
        }
        if let (Some(mu), Some(k)) = (&self.mu, self.kostka) {
            let content = mu.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
            let _ = writeln!(s, "content ({content}): {k} semistandard tableaux");
            for sst in &self.semistandard {
                let _ = writeln!(s, "T = {}", rows(&sst.tableau));
                for v in &sst.vectors {
                    let mut line = String::new();
                    for (i, term) in v.terms.iter().enumerate() {
                        if i > 0 {
                            line.push_str(if term.coeff < 0 { " - " } else { " + " });
                        } else if term.coeff < 0 {
                            line.push('-');
                        }
                        if term.coeff.abs() != 1 {
                            let _ = write!(line, "{}", term.coeff.abs());
                        }
                        let _ = write!(line, "|{}>", term.ket);
                    }
                    let _ = writeln!(s, "  t = {}: {}", rows(&v.t), line);
                }
            }
        }
        s
    }
}
