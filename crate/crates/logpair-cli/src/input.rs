//! Wire schemas for input documents and their canonical echoes.
//!
//! Rationals travel as strings `"p/q"` (or `"p"` for integers), never as
//! JSON numbers; parsing reduces to lowest terms, so the echoed input is
//! canonical even when the supplied one was not. Unknown fields are
//! rejected, which is also how commands detect a document of the wrong
//! kind.

use serde::Deserialize;
use serde_json::{json, Value};

use logpair::{
    parse_rat, render_rat, BoundaryComponent, LineArrangement, MarkedSphere, PolarizedCone,
    Rank2BundleData, SurfaceChernData, WeightedPlanePair,
};

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointDoc {
    pub label: String,
    pub delta: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MarkedSphereDoc {
    pub points: Vec<PointDoc>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeDoc {
    pub points: Vec<PointDoc>,
    pub polarization_degree: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementDoc {
    pub lines: Vec<PointDoc>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchDoc {
    pub label: String,
    pub c: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightedPlaneDoc {
    pub a: u64,
    pub b: u64,
    pub c0: String,
    pub c_inf: String,
    #[serde(default)]
    pub branches: Vec<BranchDoc>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentDoc {
    pub label: String,
    pub delta: String,
    pub self_int: i64,
    #[serde(rename = "K_dot")]
    pub k_dot: i64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceChernDoc {
    pub euler_number: i64,
    #[serde(rename = "K_squared")]
    pub k_squared: i64,
    pub components: Vec<ComponentDoc>,
    pub pair_int: Vec<Vec<i64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleDoc {
    pub e: String,
    pub d: String,
    #[serde(default)]
    pub sub_degrees: Vec<String>,
}

fn schema_error(kind: &str, err: serde_json::Error) -> CliError {
    CliError::input("SchemaError", format!("invalid {kind} document: {err}"))
}

fn weights(points: Vec<PointDoc>) -> Result<Vec<(String, logpair::Rat)>, CliError> {
    points
        .into_iter()
        .map(|p| Ok((p.label, parse_rat(&p.delta).map_err(CliError::from_input)?)))
        .collect()
}

pub fn marked_sphere(value: &Value) -> Result<MarkedSphere, CliError> {
    let doc: MarkedSphereDoc =
        serde_json::from_value(value.clone()).map_err(|e| schema_error("marked_sphere", e))?;
    MarkedSphere::new(weights(doc.points)?).map_err(CliError::from_input)
}

pub fn cone(value: &Value) -> Result<PolarizedCone, CliError> {
    let doc: ConeDoc =
        serde_json::from_value(value.clone()).map_err(|e| schema_error("cone", e))?;
    let degree = parse_rat(&doc.polarization_degree).map_err(CliError::from_input)?;
    let base = MarkedSphere::new(weights(doc.points)?).map_err(CliError::from_input)?;
    PolarizedCone::new(base, degree).map_err(CliError::from_input)
}

pub fn arrangement(value: &Value) -> Result<LineArrangement, CliError> {
    let doc: ArrangementDoc =
        serde_json::from_value(value.clone()).map_err(|e| schema_error("arrangement", e))?;
    LineArrangement::new(weights(doc.lines)?).map_err(CliError::from_input)
}

pub fn weighted_plane(value: &Value) -> Result<WeightedPlanePair, CliError> {
    let doc: WeightedPlaneDoc =
        serde_json::from_value(value.clone()).map_err(|e| schema_error("weighted_plane", e))?;
    let branches = doc
        .branches
        .into_iter()
        .map(|b| Ok((b.label, parse_rat(&b.c).map_err(CliError::from_input)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    WeightedPlanePair::new(
        doc.a,
        doc.b,
        parse_rat(&doc.c0).map_err(CliError::from_input)?,
        parse_rat(&doc.c_inf).map_err(CliError::from_input)?,
        branches,
    )
    .map_err(CliError::from_input)
}

pub fn surface_chern(value: &Value) -> Result<SurfaceChernData, CliError> {
    let doc: SurfaceChernDoc =
        serde_json::from_value(value.clone()).map_err(|e| schema_error("surface_chern", e))?;
    let components = doc
        .components
        .into_iter()
        .map(|c| {
            Ok(BoundaryComponent {
                label: c.label,
                delta: parse_rat(&c.delta).map_err(CliError::from_input)?,
                self_int: c.self_int,
                k_dot: c.k_dot,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    SurfaceChernData::new(doc.euler_number, doc.k_squared, components, doc.pair_int)
        .map_err(CliError::from_input)
}

pub fn bundle(value: &Value) -> Result<Rank2BundleData, CliError> {
    let doc: BundleDoc =
        serde_json::from_value(value.clone()).map_err(|e| schema_error("bundle", e))?;
    let d = parse_rat(&doc.d).map_err(CliError::from_input)?;
    if d <= logpair::rat_int(0) {
        return Err(CliError::input(
            "WeightOutOfRange",
            format!(
                "polarization degree d = {} must be positive",
                render_rat(&d)
            ),
        ));
    }
    Ok(Rank2BundleData {
        e: parse_rat(&doc.e).map_err(CliError::from_input)?,
        d,
        sub_degrees: doc
            .sub_degrees
            .iter()
            .map(|s| parse_rat(s).map_err(CliError::from_input))
            .collect::<Result<Vec<_>, CliError>>()?,
    })
}

// ----- canonical echoes -----

pub fn sphere_doc(sphere: &MarkedSphere) -> Value {
    json!({
        "points": sphere
            .points()
            .iter()
            .map(|p| json!({ "label": p.label, "delta": render_rat(&p.delta) }))
            .collect::<Vec<_>>(),
    })
}

pub fn cone_doc(cone: &PolarizedCone) -> Value {
    let mut doc = sphere_doc(cone.base());
    doc.as_object_mut().unwrap().insert(
        "polarization_degree".to_owned(),
        Value::String(render_rat(cone.polarization_degree())),
    );
    doc
}

pub fn arrangement_doc(arrangement: &LineArrangement) -> Value {
    json!({
        "lines": arrangement
            .lines()
            .iter()
            .map(|(label, delta)| json!({ "label": label, "delta": render_rat(delta) }))
            .collect::<Vec<_>>(),
    })
}

pub fn weighted_plane_doc(pair: &WeightedPlanePair) -> Value {
    json!({
        "a": pair.a(),
        "b": pair.b(),
        "c0": render_rat(pair.c0()),
        "c_inf": render_rat(pair.c_inf()),
        "branches": pair
            .branches()
            .iter()
            .map(|(label, c)| json!({ "label": label, "c": render_rat(c) }))
            .collect::<Vec<_>>(),
    })
}

pub fn surface_chern_doc(data: &SurfaceChernData) -> Value {
    json!({
        "euler_number": data.euler_number(),
        "K_squared": data.k_squared(),
        "components": data
            .components()
            .iter()
            .map(|c| json!({
                "label": c.label,
                "delta": render_rat(&c.delta),
                "self_int": c.self_int,
                "K_dot": c.k_dot,
            }))
            .collect::<Vec<_>>(),
        "pair_int": data.pair_int(),
    })
}

pub fn bundle_doc(bundle: &Rank2BundleData) -> Value {
    json!({
        "e": render_rat(&bundle.e),
        "d": render_rat(&bundle.d),
        "sub_degrees": bundle.sub_degrees.iter().map(render_rat).collect::<Vec<_>>(),
    })
}
