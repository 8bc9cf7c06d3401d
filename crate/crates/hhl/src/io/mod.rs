//! Input parsing and structured output: job files in JSON, complex and
//! report documents, and the M2/SVG exporters. All output is deterministic
//! byte for byte for a fixed input and tool version.

pub mod m2;
pub mod svg;

use crate::complex::{DegreeLabel, HHLComplex};
use crate::error::{HhlError, Result};
use crate::exactmath::IntMatrix;
use crate::stacks::{
    convert_gs_input, line_bundle_labels, validate_fan, Fan, GSInput, GroupSpec,
};
use crate::stratification::{LatticeMapInput, StrataComplex};
use crate::verify::{VerificationReport, VerifyMode};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeSet;

pub const SCHEMA_COMPLEX: &str = "hhl.complex/1";
pub const SCHEMA_STRATA: &str = "hhl.strata/1";
pub const SCHEMA_REPORT: &str = "hhl.report/1";
pub const SCHEMA_HILBERT: &str = "hhl.hilbert/1";
pub const SCHEMA_JOB: &str = "hhl.job/1";

/// A job file: either a lattice map or a fan-plus-lattice block, with
/// optional fan, group, and options.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct JobInput {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub psi: Option<Vec<Vec<i64>>>,
    /// Maximal cones, 1-based indices.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fan: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupInput>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gs: Option<GsBlock>,
    #[serde(default, skip_serializing_if = "Options::is_default")]
    pub options: Options,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum GroupInput {
    Named(String),
    Explicit {
        free_rank: usize,
        #[serde(default)]
        torsion: Vec<i64>,
        /// One row per generator of M (torsion generators first); each row
        /// lists the free coordinates then the torsion residues in X.
        map: Vec<Vec<i64>>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GsBlock {
    pub rays: Vec<Vec<i64>>,
    /// Ray index sets of the maximal cones, 1-based.
    pub max_cones: Vec<Vec<usize>>,
    pub beta: Vec<Vec<i64>>,
    pub phi: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<i64>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub integral: bool,
}

impl Options {
    fn is_default(&self) -> bool {
        self.window.is_none() && !self.integral
    }
}

/// A parsed and validated job: the lattice map plus fan/group context.
#[derive(Debug)]
pub struct ResolvedJob {
    pub input: LatticeMapInput,
    pub fan: Option<Fan>,
    pub group: Option<GroupInput>,
    pub options: Options,
    pub input_sha256: String,
}

pub fn parse_input(text: &str) -> Result<ResolvedJob> {
    let job: JobInput = serde_json::from_str(text)
        .map_err(|e| HhlError::Input(format!("line {}, column {}: {}", e.line(), e.column(), e)))?;
    resolve_job(job, text)
}

fn rectangular(name: &str, rows: &[Vec<i64>]) -> Result<()> {
    let width = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != width) {
        return Err(HhlError::Input(format!("field '{name}' must be rectangular")));
    }
    Ok(())
}

fn resolve_job(job: JobInput, raw: &str) -> Result<ResolvedJob> {
    let input_sha256 = hex_digest(raw.as_bytes());
    match (&job.psi, &job.gs) {
        (Some(_), Some(_)) => {
            return Err(HhlError::Input("exactly one of 'psi' and 'gs' must be present".into()))
        }
        (None, None) => {
            return Err(HhlError::Input("exactly one of 'psi' and 'gs' must be present".into()))
        }
        _ => {}
    }
    if let Some(psi_rows) = &job.psi {
        rectangular("psi", psi_rows)?;
        if psi_rows.is_empty() {
            return Err(HhlError::Input("psi must have at least one row".into()));
        }
        let n = psi_rows.len();
        let k = psi_rows[0].len();
        if let Some(n_given) = job.n {
            if n_given != n {
                return Err(HhlError::Input(format!(
                    "field 'n' is {n_given} but psi has {n} rows"
                )));
            }
        }
        if let Some(k_given) = job.k {
            if k_given != k {
                return Err(HhlError::Input(format!(
                    "field 'k' is {k_given} but psi rows have {k} entries"
                )));
            }
        }
        let input = LatticeMapInput::new(psi_rows, k);
        input.validate()?;
        let fan = match &job.fan {
            Some(cones) => Some(fan_from_one_based(cones, n)?),
            None => None,
        };
        Ok(ResolvedJob { input, fan, group: job.group, options: job.options, input_sha256 })
    } else {
        let gs_block = job.gs.as_ref().unwrap();
        rectangular("gs.rays", &gs_block.rays)?;
        rectangular("gs.beta", &gs_block.beta)?;
        rectangular("gs.phi", &gs_block.phi)?;
        if job.group.is_some() || job.fan.is_some() {
            return Err(HhlError::Input(
                "a 'gs' block determines the fan and group; do not pass them separately".into(),
            ));
        }
        let gs = GSInput {
            rays: gs_block
                .rays
                .iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
            max_cones: one_based_sets(&gs_block.max_cones, gs_block.rays.len())?,
            beta: IntMatrix::from_i64_rows(&gs_block.beta),
            phi: phi_matrix(&gs_block.phi, gs_block.beta.len()),
        };
        let (input, fan, group) = convert_gs_input(&gs)?;
        let group_input = GroupInput::Explicit {
            free_rank: group.free_rank,
            torsion: group.torsion.iter().map(|d| i64::try_from(d).expect("small order")).collect(),
            map: group
                .char_map
                .iter()
                .map(label_to_i64_row)
                .collect(),
        };
        Ok(ResolvedJob {
            input,
            fan: Some(fan),
            group: Some(group_input),
            options: job.options,
            input_sha256,
        })
    }
}

/// `phi` rows may be empty (rank-zero source); keep the row count from beta.
fn phi_matrix(rows: &[Vec<i64>], n_x: usize) -> IntMatrix {
    if rows.iter().all(|r| r.is_empty()) {
        IntMatrix::zero(n_x.max(rows.len()), 0)
    } else {
        IntMatrix::from_i64_rows(rows)
    }
}

fn one_based_sets(cones: &[Vec<usize>], n: usize) -> Result<Vec<BTreeSet<usize>>> {
    cones
        .iter()
        .map(|cone| {
            cone.iter()
                .map(|&i| {
                    if i == 0 || i > n {
                        Err(HhlError::IndexOutOfRange { index: i, n })
                    } else {
                        Ok(i - 1)
                    }
                })
                .collect()
        })
        .collect()
}

pub fn fan_from_one_based(cones: &[Vec<usize>], n: usize) -> Result<Fan> {
    let sets = one_based_sets(cones, n)?;
    validate_fan(&sets, n)
}

/// Resolve the group specification against the grading; `full` when absent.
pub fn resolve_group(
    group: &Option<GroupInput>,
    grading: &crate::complex::GradingGroup,
) -> Result<GroupSpec> {
    match group {
        None => Ok(GroupSpec::full(grading)),
        Some(GroupInput::Named(name)) => match name.as_str() {
            "trivial" => Ok(GroupSpec::trivial(grading)),
            "full" => Ok(GroupSpec::full(grading)),
            other => Err(HhlError::Input(format!(
                "unknown group '{other}' (expected 'trivial', 'full', or an explicit block)"
            ))),
        },
        Some(GroupInput::Explicit { free_rank, torsion, map }) => {
            let torsion_big: Vec<BigInt> = torsion.iter().map(|&d| BigInt::from(d)).collect();
            let char_map: Vec<DegreeLabel> = map
                .iter()
                .map(|row| row_to_label(row, *free_rank, torsion.len()))
                .collect::<Result<_>>()?;
            GroupSpec::explicit(grading, *free_rank, torsion_big, char_map)
        }
    }
}

fn row_to_label(row: &[i64], free_rank: usize, torsion_len: usize) -> Result<DegreeLabel> {
    if row.len() != free_rank + torsion_len {
        return Err(HhlError::Input(format!(
            "character image must list {free_rank} free and {torsion_len} torsion coordinates"
        )));
    }
    Ok(DegreeLabel {
        free: row[..free_rank].iter().map(|&v| BigInt::from(v)).collect(),
        torsion: row[free_rank..].iter().map(|&v| BigInt::from(v)).collect(),
    })
}

fn label_to_i64_row(label: &DegreeLabel) -> Vec<i64> {
    label
        .free
        .iter()
        .chain(label.torsion.iter())
        .map(|v| i64::try_from(v).expect("label fits machine word"))
        .collect()
}

fn hex_digest(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

// ---------------------------------------------------------------------------
// documents
// ---------------------------------------------------------------------------

#[derive(Serialize)]
pub struct Metadata {
    pub tool: &'static str,
    pub version: &'static str,
    pub input_sha256: String,
}

impl Metadata {
    pub fn new(input_sha256: &str) -> Self {
        Metadata {
            tool: "hhl",
            version: env!("CARGO_PKG_VERSION"),
            input_sha256: input_sha256.to_string(),
        }
    }
}

#[derive(Serialize)]
pub struct DegreeDoc {
    pub free: Vec<i64>,
    pub torsion: Vec<i64>,
}

impl DegreeDoc {
    pub fn from_label(label: &DegreeLabel) -> Self {
        DegreeDoc {
            free: label.free.iter().map(|v| i64::try_from(v).expect("fits")).collect(),
            torsion: label.torsion.iter().map(|v| i64::try_from(v).expect("fits")).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct StratumDoc {
    pub id: usize,
    pub dim: usize,
    /// 1-based hyperplane indices.
    pub walls: Vec<usize>,
    pub ceilings: Vec<i64>,
}

#[derive(Serialize)]
pub struct StrataDocument {
    pub schema: &'static str,
    pub metadata: Metadata,
    pub n: usize,
    pub k: usize,
    pub f_vector: Vec<usize>,
    pub census: String,
    pub euler_characteristic: i64,
    pub strata: Vec<StratumDoc>,
    pub incidence_count: usize,
}

pub fn strata_document(strata: &StrataComplex, input_sha256: &str) -> StrataDocument {
    StrataDocument {
        schema: SCHEMA_STRATA,
        metadata: Metadata::new(input_sha256),
        n: strata.input.n,
        k: strata.input.k,
        f_vector: strata.f_vector(),
        census: strata
            .f_vector()
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(","),
        euler_characteristic: strata.euler_characteristic(),
        strata: strata.strata.iter().map(stratum_doc).collect(),
        incidence_count: strata.incidences.len(),
    }
}

fn stratum_doc(s: &crate::stratification::Stratum) -> StratumDoc {
    StratumDoc {
        id: s.id,
        dim: s.ty.dim,
        walls: s.ty.walls.iter().map(|&i| i + 1).collect(),
        ceilings: s.ty.ceilings.iter().map(|v| i64::try_from(v).expect("fits")).collect(),
    }
}

#[derive(Serialize)]
pub struct TermDoc {
    pub sign: i64,
    pub exps: Vec<u32>,
}

#[derive(Serialize)]
pub struct EntryDoc {
    pub row: usize,
    pub col: usize,
    pub terms: Vec<TermDoc>,
}

#[derive(Serialize)]
pub struct DifferentialDoc {
    pub from_position: usize,
    pub to_position: usize,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<EntryDoc>,
}

#[derive(Serialize)]
pub struct GeneratorDoc {
    pub stratum: usize,
    pub degree: DegreeDoc,
    pub line_bundle_coefficients: Vec<i64>,
    pub line_bundle_class: DegreeDoc,
}

#[derive(Serialize)]
pub struct GradingDoc {
    pub free_rank: usize,
    pub torsion: Vec<i64>,
}

#[derive(Serialize)]
pub struct ComplexDocument {
    pub schema: &'static str,
    pub metadata: Metadata,
    pub n: usize,
    pub k: usize,
    pub grading: GradingDoc,
    pub f_vector: Vec<usize>,
    pub census: String,
    pub strata: Vec<StratumDoc>,
    pub generators: Vec<Vec<GeneratorDoc>>,
    pub differentials: Vec<DifferentialDoc>,
}

pub fn complex_document(
    complex: &HHLComplex,
    strata: &StrataComplex,
    group: &GroupSpec,
    input_sha256: &str,
) -> ComplexDocument {
    let bundles = line_bundle_labels(complex, strata, group);
    let generators = complex
        .generators
        .iter()
        .map(|gens| {
            gens.iter()
                .map(|g| {
                    let bundle = &bundles[g.stratum];
                    GeneratorDoc {
                        stratum: g.stratum,
                        degree: DegreeDoc::from_label(&g.degree),
                        line_bundle_coefficients: bundle
                            .coefficients
                            .iter()
                            .map(|v| i64::try_from(v).expect("fits"))
                            .collect(),
                        line_bundle_class: DegreeDoc::from_label(&bundle.class),
                    }
                })
                .collect()
        })
        .collect();
    let differentials = (1..=complex.top_dim())
        .map(|m| {
            let d = complex.boundary(m);
            DifferentialDoc {
                from_position: m,
                to_position: m - 1,
                rows: d.nrows,
                cols: d.ncols,
                entries: d
                    .entries
                    .iter()
                    .map(|(&(row, col), terms)| EntryDoc {
                        row,
                        col,
                        terms: terms
                            .iter()
                            .map(|t| TermDoc { sign: t.coeff, exps: t.exponents.clone() })
                            .collect(),
                    })
                    .collect(),
            }
        })
        .collect();
    ComplexDocument {
        schema: SCHEMA_COMPLEX,
        metadata: Metadata::new(input_sha256),
        n: strata.input.n,
        k: strata.input.k,
        grading: GradingDoc {
            free_rank: complex.grading.free_rank(),
            torsion: complex
                .grading
                .torsion()
                .iter()
                .map(|d| i64::try_from(d).expect("fits"))
                .collect(),
        },
        f_vector: strata.f_vector(),
        census: strata
            .f_vector()
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(","),
        strata: strata.strata.iter().map(stratum_doc).collect(),
        generators,
        differentials,
    }
}

#[derive(Serialize)]
pub struct ReportEntryDoc {
    pub degree: DegreeDoc,
    pub feasible: bool,
    pub betti: Vec<usize>,
    pub bijection_ok: bool,
    pub expected_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub integral_h0_ok: Option<bool>,
}

#[derive(Serialize)]
pub struct ReportDocument {
    pub schema: &'static str,
    pub metadata: Metadata,
    pub mode: &'static str,
    pub window: i64,
    pub window_description: String,
    pub d_squared_ok: bool,
    pub degree_preservation_ok: bool,
    pub verdict: &'static str,
    pub entries: Vec<ReportEntryDoc>,
}

pub fn report_document(report: &VerificationReport, input_sha256: &str) -> ReportDocument {
    ReportDocument {
        schema: SCHEMA_REPORT,
        metadata: Metadata::new(input_sha256),
        mode: match report.mode {
            VerifyMode::Full => "full",
            VerifyMode::Windowed => "windowed",
        },
        window: report.window,
        window_description: report.window_description(),
        d_squared_ok: report.d_squared_ok,
        degree_preservation_ok: report.degree_preservation_ok,
        verdict: if report.verdict { "pass" } else { "fail" },
        entries: report
            .entries
            .iter()
            .map(|e| ReportEntryDoc {
                degree: DegreeDoc::from_label(&e.degree),
                feasible: e.feasible,
                betti: e.betti.0.clone(),
                bijection_ok: e.bijection_ok,
                expected_ok: e.expected_ok,
                integral_h0_ok: e.integral_h0_ok,
            })
            .collect(),
    }
}

#[derive(Serialize)]
pub struct HilbertEntryDoc {
    pub degree: DegreeDoc,
    pub value: u8,
}

#[derive(Serialize)]
pub struct HilbertDocument {
    pub schema: &'static str,
    pub metadata: Metadata,
    pub window: i64,
    pub support_count: usize,
    pub entries: Vec<HilbertEntryDoc>,
}

pub fn hilbert_document(
    values: &[(DegreeLabel, bool)],
    window: i64,
    input_sha256: &str,
) -> HilbertDocument {
    HilbertDocument {
        schema: SCHEMA_HILBERT,
        metadata: Metadata::new(input_sha256),
        window,
        support_count: values.iter().filter(|(_, v)| *v).count(),
        entries: values
            .iter()
            .map(|(label, v)| HilbertEntryDoc {
                degree: DegreeDoc::from_label(label),
                value: u8::from(*v),
            })
            .collect(),
    }
}

/// The psi-form job equivalent to a converted gs job.
pub fn job_from_resolved(job: &ResolvedJob) -> JobInput {
    let psi: Vec<Vec<i64>> = (0..job.input.n)
        .map(|i| {
            job.input
                .psi
                .row(i)
                .iter()
                .map(|v| i64::try_from(v).expect("fits"))
                .collect()
        })
        .collect();
    JobInput {
        n: Some(job.input.n),
        k: Some(job.input.k),
        psi: Some(psi),
        fan: job.fan.as_ref().map(|f| {
            f.maximal_cones
                .iter()
                .map(|cone| cone.iter().map(|&i| i + 1).collect())
                .collect()
        }),
        group: job.group.clone(),
        gs: None,
        options: job.options.clone(),
    }
}

pub fn to_pretty_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    text
}
