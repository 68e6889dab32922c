//! Machine-readable report documents. Every numeric value is exact: plain
//! integers, decimal strings for big integers, and "p/q" strings for
//! angles — no floating point anywhere. Serialization order is fixed by
//! field declaration, so identical inputs give byte-identical documents.

use crate::invariants::SignatureProfile;
use crate::obstructions::BoundReport;
use crate::poly::LaurentPoly;
use crate::seifert::SeifertMatrix;
use crate::selection::{SelectionCertificate, SigmaTable};
use crate::surgery::SurgeryBoundCertificate;
use serde::Serialize;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument {
    pub schema_version: &'static str,
    pub command: String,
    pub subject: String,
    pub results: Results,
    pub assumptions: Vec<String>,
}

impl ReportDocument {
    pub fn new(command: &str, subject: String, results: Results) -> Self {
        ReportDocument {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            subject,
            results,
            assumptions: Vec::new(),
        }
    }

    /// Canonical JSON: two-space indentation, fields in declaration order.
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("reports serialize");
        out.push('\n');
        out
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Results {
    Invariants(InvariantsResult),
    Bounds(BoundsResult),
    Distance(DistanceResult),
    Surgery(SurgeryResult),
    Selection(SelectionResult),
    Verify(VerifyResult),
}

#[derive(Debug, Clone, Serialize)]
pub struct PolyTerm {
    pub exponent: i64,
    pub coefficient: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SignatureSample {
    pub angle: String,
    pub value: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct InvariantsResult {
    pub genus: u64,
    pub alexander: Vec<PolyTerm>,
    pub alexander_display: String,
    pub determinant: String,
    pub signatures: Vec<SignatureSample>,
    pub jump_angles: Vec<String>,
}

pub fn invariants_result(
    genus: usize,
    alex: &LaurentPoly,
    det: &num_bigint::BigInt,
    profile: &SignatureProfile,
) -> InvariantsResult {
    InvariantsResult {
        genus: genus as u64,
        alexander: alex
            .terms()
            .map(|(e, c)| PolyTerm {
                exponent: e,
                coefficient: c.to_string(),
            })
            .collect(),
        alexander_display: alex.to_string(),
        determinant: det.to_string(),
        signatures: profile
            .samples
            .iter()
            .map(|(x, s)| SignatureSample {
                angle: x.to_string(),
                value: *s,
            })
            .collect(),
        jump_angles: profile.jump_angles.iter().map(|x| x.to_string()).collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundJson {
    pub quantity: String,
    pub lower: u64,
    pub lower_witness_angle: Option<String>,
    pub upper: u64,
    pub upper_provenance: String,
    pub tight: bool,
}

impl From<&BoundReport> for BoundJson {
    fn from(r: &BoundReport) -> Self {
        BoundJson {
            quantity: r.quantity.to_string(),
            lower: r.lower as u64,
            lower_witness_angle: r.lower_witness.map(|x| x.to_string()),
            upper: r.upper as u64,
            upper_provenance: r.upper_provenance.clone(),
            tight: r.tight,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundsResult {
    pub bounds: Vec<BoundJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DistanceResult {
    pub lower: u64,
    pub witness_angle: Option<String>,
    pub upper_triangle: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SurgeryResult {
    pub genus: u64,
    pub sum_matrix: Vec<Vec<i64>>,
    pub class_vector: Vec<i64>,
    pub framing: i64,
    pub reduced_matrix: Vec<Vec<i64>>,
    pub distance_upper: u64,
}

pub fn surgery_result(cert: &SurgeryBoundCertificate) -> SurgeryResult {
    SurgeryResult {
        genus: cert.genus as u64,
        sum_matrix: cert.sum_matrix.rows(),
        class_vector: cert.class.vector().to_vec(),
        framing: cert.class.framing(),
        reduced_matrix: cert.reduced.rows(),
        distance_upper: cert.distance_upper as u64,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SigmaTableJson {
    pub a_sigma_one_third: i64,
    pub a_sigma_sevenths: Vec<i64>,
    pub a_seventh_sum: i64,
    pub b_sigma_one_third: i64,
    pub b_sigma_sevenths: Vec<i64>,
    pub b_seventh_sum: i64,
}

impl From<&SigmaTable> for SigmaTableJson {
    fn from(s: &SigmaTable) -> Self {
        SigmaTableJson {
            a_sigma_one_third: s.a_third,
            a_sigma_sevenths: s.a_sevenths.to_vec(),
            a_seventh_sum: s.a_seventh_sum(),
            b_sigma_one_third: s.b_third,
            b_sigma_sevenths: s.b_sevenths.to_vec(),
            b_seventh_sum: s.b_seventh_sum(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IntervalCheckJson {
    pub g: u32,
    pub a: u32,
    pub b: u32,
    pub lhs_min: i64,
    pub rhs: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReversalCheckJson {
    pub g: u32,
    pub a: u32,
    pub b: u32,
    pub lhs: i64,
    pub rhs: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SelectionResult {
    pub n: u32,
    pub cg_bound: u64,
    pub a: String,
    pub b: String,
    pub base_matrix: Vec<Vec<i64>>,
    pub sigma: SigmaTableJson,
    pub interval_checks: Vec<IntervalCheckJson>,
    pub reversal_checks: Vec<ReversalCheckJson>,
    pub verified: bool,
}

pub fn selection_result(cert: &SelectionCertificate, verified: bool) -> SelectionResult {
    SelectionResult {
        n: cert.n,
        cg_bound: cert.cg_bound,
        a: cert.a.to_string(),
        b: cert.b.to_string(),
        base_matrix: cert.base_matrix.rows(),
        sigma: (&cert.sigma).into(),
        interval_checks: cert
            .cg_checks
            .iter()
            .map(|r| IntervalCheckJson {
                g: r.g,
                a: r.a,
                b: r.b,
                lhs_min: r.lhs_min,
                rhs: r.rhs,
            })
            .collect(),
        reversal_checks: cert
            .reversal_checks
            .iter()
            .map(|r| ReversalCheckJson {
                g: r.g,
                a: r.a,
                b: r.b,
                lhs: r.lhs,
                rhs: r.rhs,
            })
            .collect(),
        verified,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Claim {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyResult {
    pub claims: Vec<Claim>,
    pub all_pass: bool,
}

/// Rows rendered for table output.
pub fn matrix_display(m: &SeifertMatrix) -> String {
    if m.dim() == 0 {
        return "[]".to_string();
    }
    m.rows()
        .iter()
        .map(|r| {
            format!(
                "[{}]",
                r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
            )
        })
        .collect::<Vec<_>>()
        .join("\n")
}
