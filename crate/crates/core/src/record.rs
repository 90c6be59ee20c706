//! Versioned JSON records for fields, codes, block sequences and reports.
//!
//! Loading checks the format tag, the version and that every element lies
//! in the declared field. It does not re-verify code invariants; that is
//! what the verify step is for.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::distance::{
    construction_bound_check, intercept_estimate, slope_estimate, upper_bounds, DistanceProfile,
};
use crate::error::{Error, Result};
use crate::field::{ExtField, Felt};
use crate::gabidulin::GabidulinCode;
use crate::matrix::{BlockSeq, MatExt};
use crate::pum::{CheckOutcome, PumCode, PumParams};

pub const FORMAT_VERSION: u32 = 1;

/// A serializable document with a fixed format tag.
pub trait Record: Serialize + DeserializeOwned {
    const FORMAT: &'static str;

    fn format(&self) -> &str;
    fn version(&self) -> u32;

    /// Pretty JSON with a trailing newline.
    fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("records serialize");
        s.push('\n');
        s
    }

    fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Header {
            format: String,
            version: u32,
        }
        let header: Header =
            serde_json::from_str(text).map_err(|e| Error::Record(format!("bad header: {e}")))?;
        if header.format != Self::FORMAT {
            return Err(Error::Record(format!(
                "expected a {} record, found {}",
                Self::FORMAT,
                header.format
            )));
        }
        if header.version != FORMAT_VERSION {
            return Err(Error::Record(format!(
                "unsupported {} version {} (expected {FORMAT_VERSION})",
                Self::FORMAT,
                header.version
            )));
        }
        let rec: Self = serde_json::from_str(text).map_err(|e| Error::Record(e.to_string()))?;
        debug_assert_eq!(rec.version(), FORMAT_VERSION);
        Ok(rec)
    }
}

macro_rules! record {
    ($ty:ty, $tag:literal) => {
        impl Record for $ty {
            const FORMAT: &'static str = $tag;

            fn format(&self) -> &str {
                &self.format
            }

            fn version(&self) -> u32 {
                self.version
            }
        }
    };
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldRecord {
    pub q: u32,
    pub s: usize,
    /// Monic modulus, constant term first.
    pub modulus: Vec<u32>,
}

impl FieldRecord {
    pub fn from_field(field: &ExtField) -> Self {
        FieldRecord {
            q: field.characteristic(),
            s: field.degree(),
            modulus: field.modulus().to_vec(),
        }
    }

    pub fn to_field(&self) -> Result<ExtField> {
        ExtField::with_max_degree(
            self.q,
            self.s,
            Some(&self.modulus),
            crate::field::HARD_MAX_DEGREE,
        )
    }
}

fn check_elements<'a>(field: &ExtField, items: impl IntoIterator<Item = &'a Felt>) -> Result<()> {
    match items.into_iter().find(|x| !field.contains(**x)) {
        Some(bad) => Err(Error::NotInField {
            value: bad.to_int(),
            order: field.order(),
        }),
        None => Ok(()),
    }
}

fn matrix_from(field: &ExtField, rows: &[Vec<Felt>], cols: usize) -> Result<MatExt> {
    check_elements(field, rows.iter().flatten())?;
    MatExt::from_rows(rows.to_vec(), cols)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParamsRecord {
    pub q: u32,
    pub s: usize,
    pub modulus: Vec<u32>,
    pub n: usize,
    pub k: usize,
    pub k1: usize,
    #[serde(rename = "mH")]
    pub mh: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeRecord {
    pub format: String,
    pub version: u32,
    pub params: CodeParamsRecord,
    pub normal_element: Felt,
    pub h0: Vec<Felt>,
    #[serde(rename = "H_blocks")]
    pub h_blocks: Vec<Vec<Vec<Felt>>>,
    #[serde(rename = "G0")]
    pub g0: Vec<Vec<Felt>>,
    #[serde(rename = "G1")]
    pub g1: Vec<Vec<Felt>>,
}

record!(CodeRecord, "pumgab-code");

impl CodeRecord {
    pub fn from_code(code: &PumCode) -> Self {
        let f = code.field();
        let p = code.params();
        CodeRecord {
            format: Self::FORMAT.into(),
            version: FORMAT_VERSION,
            params: CodeParamsRecord {
                q: f.characteristic(),
                s: f.degree(),
                modulus: f.modulus().to_vec(),
                n: p.n,
                k: p.k,
                k1: p.k1,
                mh: p.mh,
            },
            normal_element: code.normal_element(),
            h0: code.h0().to_vec(),
            h_blocks: code.h_blocks().iter().map(MatExt::to_rows).collect(),
            g0: code.g0().to_rows(),
            g1: code.g1().to_rows(),
        }
    }

    pub fn field(&self) -> Result<ExtField> {
        FieldRecord {
            q: self.params.q,
            s: self.params.s,
            modulus: self.params.modulus.clone(),
        }
        .to_field()
    }

    /// Rebuilds the code without checking any of its algebraic invariants.
    pub fn to_code(&self) -> Result<PumCode> {
        let field = self.field()?;
        let p = &self.params;
        let n = p.n;
        if !field.contains(self.normal_element) {
            return Err(Error::NotInField {
                value: self.normal_element.to_int(),
                order: field.order(),
            });
        }
        check_elements(&field, &self.h0)?;
        let h_blocks = self
            .h_blocks
            .iter()
            .map(|b| matrix_from(&field, b, n))
            .collect::<Result<Vec<_>>>()?;
        if h_blocks.is_empty() {
            return Err(Error::Record("no parity-check blocks".into()));
        }
        Ok(PumCode::from_parts(
            field.clone(),
            PumParams::new(p.n, p.k, p.k1, p.mh),
            self.normal_element,
            self.h0.clone(),
            h_blocks,
            matrix_from(&field, &self.g0, n)?,
            matrix_from(&field, &self.g1, n)?,
        ))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSeqRecord {
    pub format: String,
    pub version: u32,
    pub field: FieldRecord,
    pub n: usize,
    pub blocks: Vec<Vec<Felt>>,
}

record!(BlockSeqRecord, "pumgab-blocks");

impl BlockSeqRecord {
    pub fn new(field: &ExtField, seq: &BlockSeq) -> Self {
        BlockSeqRecord {
            format: Self::FORMAT.into(),
            version: FORMAT_VERSION,
            field: FieldRecord::from_field(field),
            n: seq.block_len(),
            blocks: seq.blocks().to_vec(),
        }
    }

    pub fn to_seq(&self) -> Result<(ExtField, BlockSeq)> {
        let field = self.field.to_field()?;
        check_elements(&field, self.blocks.iter().flatten())?;
        let seq = BlockSeq::new(self.n, self.blocks.clone())?;
        Ok((field, seq))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GabidulinRecord {
    pub format: String,
    pub version: u32,
    pub field: FieldRecord,
    pub n: usize,
    pub k: usize,
    pub h: Vec<Felt>,
}

record!(GabidulinRecord, "pumgab-gabidulin");

impl GabidulinRecord {
    pub fn from_code(code: &GabidulinCode) -> Self {
        GabidulinRecord {
            format: Self::FORMAT.into(),
            version: FORMAT_VERSION,
            field: FieldRecord::from_field(code.field()),
            n: code.length(),
            k: code.dimension(),
            h: code.defining_vector().to_vec(),
        }
    }

    pub fn to_code(&self) -> Result<GabidulinCode> {
        if self.h.len() != self.n {
            return Err(crate::error::shape("defining vector", self.n, self.h.len()));
        }
        GabidulinCode::new(&self.field.to_field()?, self.h.clone(), self.k)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<u32>>,
}

impl From<CheckOutcome> for CheckRecord {
    fn from(c: CheckOutcome) -> Self {
        CheckRecord {
            name: c.name,
            passed: c.passed,
            detail: c.detail,
            witness: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub format: String,
    pub version: u32,
    pub passed: bool,
    pub checks: Vec<CheckRecord>,
}

record!(VerifyReport, "pumgab-verify");

impl VerifyReport {
    pub fn new(checks: Vec<CheckRecord>) -> Self {
        VerifyReport {
            format: Self::FORMAT.into(),
            version: FORMAT_VERSION,
            passed: checks.iter().all(|c| c.passed),
            checks,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlopeRecord {
    pub start: usize,
    pub end: usize,
    /// Exact value as `p/q` or an integer.
    pub value: String,
    pub numer: i64,
    pub denom: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsRecord {
    pub class: String,
    pub free_distance_bound: usize,
    pub slope_bound: usize,
    pub free_distance_within_bound: Option<bool>,
    pub slope_within_bound: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionCheckRecord {
    pub applicable: bool,
    pub per_order: Vec<Option<bool>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileRecord {
    pub format: String,
    pub version: u32,
    pub params: CodeParamsRecord,
    pub metric: String,
    pub max_order: usize,
    pub d_row: Vec<Option<u32>>,
    pub zero_block_minimizer: Vec<bool>,
    pub d_free: Option<u32>,
    pub status: String,
    pub certified_at: Option<usize>,
    pub frontier: Option<u32>,
    pub zero_weight_cycle: bool,
    pub slope_estimate: Option<SlopeRecord>,
    pub intercept_estimate: Option<String>,
    pub bounds: Option<BoundsRecord>,
    pub construction_bound_check: ConstructionCheckRecord,
}

record!(ProfileRecord, "pumgab-profile");

impl ProfileRecord {
    /// `window` defaults to `[2, L]`, or `[1, L]` when only two orders
    /// exist; no slope is reported for `L = 1` or empty endpoints.
    pub fn new(code: &PumCode, profile: &DistanceProfile, window: Option<(usize, usize)>) -> Self {
        let base = CodeRecord::from_code(code).params;
        let l = profile.max_order;
        let window = window.or(match l {
            0 | 1 => None,
            2 => Some((1, 2)),
            _ => Some((2, l)),
        });
        let slope = window.and_then(|(a, b)| slope_estimate(profile, a, b).ok());
        let slope_record = slope.map(|s| SlopeRecord {
            start: s.start,
            end: s.end,
            value: s.value.to_string(),
            numer: *s.value.numer(),
            denom: *s.value.denom(),
        });
        let intercept =
            slope.and_then(|s| intercept_estimate(profile, s.value).map(|b| b.to_string()));
        let bounds = upper_bounds(code.params()).ok().map(|b| BoundsRecord {
            class: format!("{:?}", b.class),
            free_distance_bound: b.free_distance,
            slope_bound: b.slope,
            free_distance_within_bound: profile.d_free.map(|d| d as usize <= b.free_distance),
            slope_within_bound: slope
                .map(|s| s.value <= num_rational::Ratio::from_integer(b.slope as i64)),
        });
        let check = construction_bound_check(profile, code.params());
        ProfileRecord {
            format: Self::FORMAT.into(),
            version: FORMAT_VERSION,
            params: base,
            metric: profile.metric.name().into(),
            max_order: l,
            d_row: profile.d_row.clone(),
            zero_block_minimizer: profile.zero_block_minimizer.clone(),
            d_free: profile.d_free,
            status: profile.status.name().into(),
            certified_at: profile.certified_at,
            frontier: profile.frontier,
            zero_weight_cycle: profile.zero_weight_cycle,
            slope_estimate: slope_record,
            intercept_estimate: intercept,
            bounds,
            construction_bound_check: ConstructionCheckRecord {
                applicable: check.applicable,
                per_order: check.per_order,
            },
        }
    }
}
