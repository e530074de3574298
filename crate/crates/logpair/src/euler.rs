//! Local orbifold Euler numbers of arrangement germs and cone vertices.
//!
//! The Euler number of a weighted line arrangement `(C^2, sum_i delta_i L_i, 0)`
//! is dispatched over four exact cases on `delta = sum delta_i`,
//! `delta_m = max delta_i` and `delta' = delta - delta_m`:
//!
//! * `delta > 2`: not log canonical, value 0;
//! * `delta = 2`: log-Calabi-Yau, value 0;
//! * `delta < 2` and `delta_m >= delta'`: value
//!   `(1 - delta + delta_m)(1 - delta_m)`, which vanishes exactly on the
//!   `delta_m = 1` boundary;
//! * `delta < 2` and `delta_m < delta'`: the stable regime, value
//!   `(2 - delta)^2 / 4`.
//!
//! Dispatch is by exact rational comparison; the boundaries carry distinct
//! meaning and there is no epsilon anywhere.
//!
//! Three computation paths cross-validate each other. The direct formula
//! above; the covering path, which divides the arrangement value by the
//! polarization degree of a cone (an arrangement germ is the degree-d cover
//! of the cone polarized by `d deg L` for any integer multiple); and the
//! slope path, which on a K-semistable klt cone evaluates the local second
//! Chern class of a rank-2 extension bundle on a degree-N cover of the base
//! and returns `lambda^2 deg L / 4` independently of N.

use num_traits::{One, Signed};

use crate::cones::{ConeClass, LineArrangement, PolarizedCone};
use crate::error::{Error, Result};
use crate::rat::{rat_int, Rat};

/// Which of the four arrangement cases produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseTag {
    /// `delta > 2`; the germ is not log canonical.
    NotLogCanonical,
    /// `delta = 2`.
    LogCalabiYau,
    /// `delta < 2`, `delta_m >= delta'`, `delta_m < 1`: klt but K-unstable.
    UnstableKlt,
    /// `delta < 2`, `delta_m < delta'`: K-stable weights.
    StableRegime,
    /// `delta < 2`, `delta_m = 1`: log canonical but not klt, value 0.
    LcNotKltBoundary,
}

/// Which computation path produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Four-case closed formula on the arrangement weights.
    DirectFormula,
    /// Arrangement value transported along the cyclic covering of a cone.
    ViaCover,
    /// Local second Chern class of the extension bundle on a cover.
    ViaLanger,
}

/// A local Euler number with its case tag and computation provenance.
///
/// The value is nonnegative always, and positive exactly when the
/// underlying germ is klt.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerResult {
    pub value: Rat,
    pub case_tag: CaseTag,
    pub method: Method,
}

/// Degree data of a rank-2 bundle on a curve: determinant degree `e`,
/// polarization degree `d > 0`, and the degrees of any known
/// sub-line-bundles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rank2BundleData {
    pub e: Rat,
    pub d: Rat,
    pub sub_degrees: Vec<Rat>,
}

/// Local Euler number of a weighted line arrangement germ.
pub fn euler_line_arrangement(arrangement: &LineArrangement) -> EulerResult {
    let (value, case_tag) = arrangement_value(arrangement);
    EulerResult {
        value,
        case_tag,
        method: Method::DirectFormula,
    }
}

fn arrangement_value(arrangement: &LineArrangement) -> (Rat, CaseTag) {
    let one = Rat::one();
    let two = rat_int(2);
    let delta = arrangement.delta();
    let delta_m = arrangement.delta_max();
    let delta_rest = arrangement.delta_rest();

    if delta > two {
        return (rat_int(0), CaseTag::NotLogCanonical);
    }
    if delta == two {
        return (rat_int(0), CaseTag::LogCalabiYau);
    }
    if delta_m >= delta_rest {
        let value = (&one - &delta + &delta_m) * (&one - &delta_m);
        let tag = if delta_m == one {
            CaseTag::LcNotKltBoundary
        } else {
            CaseTag::UnstableKlt
        };
        (value, tag)
    } else {
        let value = (&two - &delta) * (&two - &delta) / rat_int(4);
        (value, CaseTag::StableRegime)
    }
}

/// Local Euler number of a cone vertex: the arrangement value of the base
/// weights divided by the polarization degree.
///
/// For the minimal k with `k deg L` integral and `d = k deg L`, the
/// arrangement germ over the base is a degree-d cover of the degree-k
/// rescaling, so the covering rule gives `e(cone) = (k/d) e(arrangement)
/// = e(arrangement) / deg L`; the k and d never need materializing.
pub fn euler_orbifold_cone(cone: &PolarizedCone) -> EulerResult {
    let arrangement = base_arrangement(cone);
    let (value, case_tag) = arrangement_value(&arrangement);
    EulerResult {
        value: value / cone.polarization_degree(),
        case_tag,
        method: Method::ViaCover,
    }
}

fn base_arrangement(cone: &PolarizedCone) -> LineArrangement {
    LineArrangement::new(
        cone.base()
            .points()
            .iter()
            .map(|p| (p.label.clone(), p.delta.clone()))
            .collect(),
    )
    .expect("sphere invariants imply arrangement invariants")
}

/// Maximal destabilizing degree `max(e/2, max_i sub_degrees[i])`.
///
/// An empty sub-degree list encodes "no known destabilizer" and yields
/// `e/2`; callers supplying a splitting type must list both summand degrees.
pub fn sbar(bundle: &Rank2BundleData) -> Rat {
    let half_e = &bundle.e / rat_int(2);
    bundle
        .sub_degrees
        .iter()
        .max()
        .map(|s| {
            if *s > half_e {
                s.clone()
            } else {
                half_e.clone()
            }
        })
        .unwrap_or(half_e)
}

/// Local second Chern class `-sbar (e - sbar) / d` of the pulled-back rank-2
/// bundle on the contracted total space of `L^{-1}`.
///
/// Requires `d > 0` and `sbar >= e/2`; the value is at least `-e^2 / (4d)`,
/// with equality exactly when `sbar = e/2` (the semistable case).
pub fn langer_local_c2(e: &Rat, sbar: &Rat, d: &Rat) -> Result<Rat> {
    if !d.is_positive() {
        return Err(Error::PreconditionViolated(
            "polarization degree d must be positive",
        ));
    }
    if *sbar < e / rat_int(2) {
        return Err(Error::PreconditionViolated("sbar must be at least e/2"));
    }
    Ok(-(sbar * (e - sbar)) / d)
}

/// Local Euler number of a K-semistable klt cone through the local second
/// Chern class of the extension bundle on a degree-N cover of the base.
///
/// On the cover, the extension bundle has determinant degree
/// `e = -lambda N deg L` and polarization `N deg L`; K-semistability of the
/// base makes the bundle slope semistable, so its destabilizing degree is
/// `e/2` and the local Chern class is `-e^2/(4d)`. Dividing by `-N` yields
/// `lambda^2 deg L / 4`, independent of N; the independence is asserted
/// against the closed form.
pub fn euler_via_langer(cone: &PolarizedCone, cover_degree: u64) -> Result<EulerResult> {
    assert!(cover_degree >= 1, "cover degree must be positive");
    if !cone.base().is_k_semistable() {
        return Err(Error::NotSemistable);
    }
    if cone.classify() != ConeClass::Klt {
        return Err(Error::NotKlt);
    }

    let n = rat_int(cover_degree as i64);
    let lambda = cone.lambda();
    let deg_l = cone.polarization_degree();

    let e = -(&lambda) * &n * deg_l;
    let d = &n * deg_l;
    let s = &e / rat_int(2);
    let local_c2 = langer_local_c2(&e, &s, &d)?;
    let value = -local_c2 / &n;

    let closed_form = &lambda * &lambda * deg_l / rat_int(4);
    assert_eq!(
        value, closed_form,
        "cover-degree computation must be independent of N"
    );

    let (_, case_tag) = arrangement_value(&base_arrangement(cone));
    Ok(EulerResult {
        value,
        case_tag,
        method: Method::ViaLanger,
    })
}

/// Transports a local Euler number along a finite crepant cover of the
/// stated degree.
pub fn euler_scaling(value: &Rat, degree: u64) -> Rat {
    assert!(!value.is_negative(), "Euler numbers are nonnegative");
    value * rat_int(degree as i64)
}
