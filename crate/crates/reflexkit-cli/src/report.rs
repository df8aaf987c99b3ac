//! JSON report structures (schema 1). Field order is fixed by the struct
//! declarations, so serialized output is byte-stable. All numbers are
//! exact: integers as JSON integers (strings if they overflow 64 bits),
//! rationals as `"p/q"` strings, never floats.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use reflexkit_core::{
    classify_equality_variety, decompose_equality, facet_determinant, facet_lattice_volume,
    pseudo_index_report, verify_bounds, BoundCheck, CanonicalForm, CorpusSummary, CurveClass,
    Decomposition, Error, FanoReport, Polytope, PullRule, VarietyClass,
};
use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

/// An exact integer as a JSON value.
pub fn int_value(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

/// An exact rational as a JSON string, `"p"` when integral, else `"p/q"`.
pub fn rat_value(x: &BigRational) -> Value {
    if x.denom().is_one() {
        json!(x.numer().to_string())
    } else {
        json!(format!("{}/{}", x.numer(), x.denom()))
    }
}

fn point_row(coords: &[BigInt]) -> Vec<Value> {
    coords.iter().map(int_value).collect()
}

fn vertex_rows(p: &Polytope) -> Vec<Vec<Value>> {
    p.vertices().iter().map(|v| point_row(v.coords())).collect()
}

fn bound_str(b: BoundCheck) -> &'static str {
    match b {
        BoundCheck::Pass => "pass",
        BoundCheck::Fail => "fail",
        BoundCheck::NotApplicable => "n.a.",
    }
}

fn classification_value(c: &VarietyClass) -> Value {
    match c {
        VarietyClass::S3Power { copies } => json!({"kind": "s3_power", "copies": copies}),
        VarietyClass::ProjectivePower { delta, copies } => {
            json!({"kind": "projective_power", "delta": delta, "copies": copies})
        }
        VarietyClass::Other => json!({"kind": "other"}),
    }
}

#[derive(Serialize)]
pub struct FacetJson {
    pub normal: Vec<Value>,
    pub offset: Value,
    pub incident: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub determinant: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lattice_volume: Option<Value>,
}

#[derive(Serialize)]
pub struct PseudoIndexJson {
    pub upper_bound: Value,
    pub min_invariant_degree: Value,
    pub iota_upper_bound: Value,
    pub exact: bool,
}

#[derive(Serialize)]
pub struct MinkowskiJson {
    pub coefficients: Vec<Value>,
    pub residual: Vec<Value>,
}

#[derive(Serialize)]
pub struct VerdictsJson {
    pub bound_3n: &'static str,
    pub bound_delta: &'static str,
    pub equality_i: bool,
    pub equality_ii: bool,
}

#[derive(Serialize)]
pub struct BlockJson {
    pub f_vertex: usize,
    pub e_vertices: Vec<usize>,
    pub span_basis: Vec<Vec<Value>>,
    pub block_vertices: Vec<Vec<Value>>,
}

#[derive(Serialize)]
pub struct DecompositionJson {
    pub base_facet: usize,
    pub basis_vertices: Vec<usize>,
    pub remaining_vertices: Vec<usize>,
    pub phi: Vec<usize>,
    pub blocks: Vec<BlockJson>,
}

impl DecompositionJson {
    pub fn from_core(d: &Decomposition) -> Self {
        DecompositionJson {
            base_facet: d.base_facet,
            basis_vertices: d.basis_vertices.clone(),
            remaining_vertices: d.remaining_vertices.clone(),
            phi: d.phi.clone(),
            blocks: d
                .blocks
                .iter()
                .map(|b| BlockJson {
                    f_vertex: b.f_vertex,
                    e_vertices: b.e_vertices.clone(),
                    span_basis: b
                        .span_basis
                        .iter()
                        .map(|v| point_row(v.coords()))
                        .collect(),
                    block_vertices: vertex_rows(&b.block_polytope),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct AnalyzeReport {
    pub schema: u32,
    pub dimension: usize,
    pub vertex_count: usize,
    pub vertices: Vec<Vec<Value>>,
    pub is_reflexive: bool,
    pub is_simplicial: bool,
    pub is_smooth: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub picard: Option<usize>,
    pub facets: Vec<FacetJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pseudo_index: Option<PseudoIndexJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minkowski: Option<MinkowskiJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theorem_verdicts: Option<VerdictsJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionJson>,
    pub canonical_form: Vec<Vec<Value>>,
}

/// Full analysis of one polytope; the JSON counterpart of running every
/// invariant the library offers.
pub fn analyze(p: &Polytope) -> Result<AnalyzeReport, Error> {
    let report = FanoReport::compute(p)?;
    let canonical = reflexkit_core::canonical_form(p)?;
    let mut facets = Vec::with_capacity(p.facet_count());
    for i in 0..p.facet_count() {
        let f = &p.facets()[i];
        let determinant = if f.incident.len() == p.dim() {
            Some(int_value(&facet_determinant(p, i)?))
        } else {
            None
        };
        let lattice_volume = if report.is_reflexive {
            Some(int_value(&facet_lattice_volume(p, i, PullRule::LowestIndex)?))
        } else {
            None
        };
        facets.push(FacetJson {
            normal: point_row(f.normal.coords()),
            offset: int_value(&f.offset),
            incident: f.incident.clone(),
            determinant,
            lattice_volume,
        });
    }

    let pseudo_index = if report.is_reflexive && report.is_simplicial {
        let r = pseudo_index_report(p)?;
        Some(PseudoIndexJson {
            upper_bound: int_value(&r.upper_bound_delta),
            min_invariant_degree: rat_value(&r.min_invariant_degree),
            iota_upper_bound: rat_value(&r.iota_upper_bound),
            exact: r.exact,
        })
    } else {
        None
    };
    let minkowski = report.minkowski_coefficients.as_ref().map(|coeff| MinkowskiJson {
        coefficients: coeff.iter().map(int_value).collect(),
        residual: point_row(report.minkowski_residual.as_ref().unwrap().coords()),
    });
    let theorem_verdicts = if report.is_reflexive && report.is_simplicial {
        let v = verify_bounds(p)?;
        Some(VerdictsJson {
            bound_3n: bound_str(v.bound_3n),
            bound_delta: bound_str(v.bound_delta),
            equality_i: v.equality_i,
            equality_ii: v.equality_ii,
        })
    } else {
        None
    };
    let decomposition = if matches!(
        &theorem_verdicts,
        Some(VerdictsJson { equality_ii: true, .. })
    ) {
        Some(DecompositionJson::from_core(&decompose_equality(p, 0)?))
    } else {
        None
    };
    Ok(AnalyzeReport {
        schema: SCHEMA_VERSION,
        dimension: p.dim(),
        vertex_count: p.vertex_count(),
        vertices: vertex_rows(p),
        is_reflexive: report.is_reflexive,
        is_simplicial: report.is_simplicial,
        is_smooth: report.is_smooth,
        delta: report.delta.as_ref().map(int_value),
        picard: report.picard,
        facets,
        pseudo_index,
        minkowski,
        theorem_verdicts,
        decomposition,
        canonical_form: canonical_rows(&canonical),
    })
}

pub fn canonical_rows(cf: &CanonicalForm) -> Vec<Vec<Value>> {
    (0..cf.matrix.rows())
        .map(|i| cf.matrix.row(i).iter().map(int_value).collect())
        .collect()
}

#[derive(Serialize)]
pub struct WallClassJson {
    pub facet_a: usize,
    pub facet_b: usize,
    pub common: Vec<usize>,
    pub opp_a: usize,
    pub opp_b: usize,
    pub gamma: Vec<Value>,
    pub degree: Value,
    pub b: Value,
    pub exact_degree: Value,
}

impl WallClassJson {
    pub fn from_core(c: &CurveClass) -> Self {
        WallClassJson {
            facet_a: c.wall.facet_a,
            facet_b: c.wall.facet_b,
            common: c.wall.common.clone(),
            opp_a: c.wall.opp_a,
            opp_b: c.wall.opp_b,
            gamma: c.gamma.coefficients.iter().map(rat_value).collect(),
            degree: rat_value(&c.gamma.degree()),
            b: rat_value(&c.b),
            exact_degree: rat_value(&c.exact_degree),
        }
    }
}

#[derive(Serialize)]
pub struct MoriReport {
    pub schema: u32,
    pub dimension: usize,
    pub vertex_count: usize,
    pub vertices: Vec<Vec<Value>>,
    pub walls: Vec<WallClassJson>,
}

#[derive(Serialize)]
pub struct CanonReport {
    pub schema: u32,
    pub dimension: usize,
    pub vertex_count: usize,
    pub canonical_form: Vec<Vec<Value>>,
}

#[derive(Serialize)]
pub struct SummaryJson {
    pub schema: u32,
    pub total: usize,
    pub checked: usize,
    pub filtered_out: Vec<Value>,
    pub class_count: usize,
    pub histogram: Vec<Value>,
    pub violations: Vec<Value>,
    pub equality_inventory: Vec<Value>,
    pub ok: bool,
}

impl SummaryJson {
    pub fn from_core(s: &CorpusSummary) -> Self {
        SummaryJson {
            schema: SCHEMA_VERSION,
            total: s.total,
            checked: s.total - s.filtered_out.len(),
            filtered_out: s
                .filtered_out
                .iter()
                .map(|(i, reason)| json!({"index": i, "reason": reason}))
                .collect(),
            class_count: s.class_count,
            histogram: s
                .histogram
                .iter()
                .map(|((v, d, rho, deg), count)| {
                    json!({
                        "vertex_count": v,
                        "delta": int_value(d),
                        "picard": rho,
                        "min_degree": rat_value(deg),
                        "count": count,
                    })
                })
                .collect(),
            violations: s
                .violations
                .iter()
                .map(|v| json!({"polytope": v.polytope, "check": v.check, "witness": v.witness}))
                .collect(),
            equality_inventory: s
                .equality_inventory
                .iter()
                .map(|c| {
                    json!({
                        "polytope": c.polytope,
                        "equality_i": c.vertex_bound_equality,
                        "equality_ii": c.delta_bound_equality,
                        "classification": classification_value(&c.classification),
                    })
                })
                .collect(),
            ok: s.ok(),
        }
    }
}

#[derive(Serialize)]
pub struct EnumerateClassJson {
    pub index: usize,
    pub vertex_count: usize,
    pub vertices: Vec<Vec<Value>>,
    pub delta: Value,
    pub picard: Option<usize>,
    pub smooth: bool,
    pub equality_i: bool,
    pub equality_ii: bool,
    pub classification: Value,
    pub provenance: String,
}

#[derive(Serialize)]
pub struct EnumerateReport {
    pub schema: u32,
    pub box_radius: i64,
    pub class_count: usize,
    pub seven_vertex_probe_survivors: usize,
    pub classes: Vec<EnumerateClassJson>,
    pub summary: SummaryJson,
}

pub fn enumerate_class_json(
    index: usize,
    c: &reflexkit_core::PolytopeClass,
) -> Result<EnumerateClassJson, Error> {
    let classification = classify_equality_variety(&c.representative)?;
    Ok(EnumerateClassJson {
        index,
        vertex_count: c.representative.vertex_count(),
        vertices: vertex_rows(&c.representative),
        delta: c
            .report
            .delta
            .as_ref()
            .map(int_value)
            .unwrap_or_else(|| json!(null)),
        picard: c.report.picard,
        smooth: c.report.is_smooth,
        equality_i: c.verdicts.equality_i,
        equality_ii: c.verdicts.equality_ii,
        classification: classification_value(&classification),
        provenance: c.provenance.clone(),
    })
}
