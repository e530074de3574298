//! Orbifold cones over marked spheres and their normalized volumes.
//!
//! A polarized cone `C(S, L)` is a marked sphere together with a positive
//! rational polarization degree `deg L`. The derived slope
//! `lambda = (2 - sum_i delta_i) / deg L` controls everything: the cone is
//! klt iff `lambda > 0` and the base is klt, and for a K-semistable base the
//! normalized volume of the vertex is the closed form `lambda^(n+1) L^n`
//! (for a surface cone, `lambda^2 deg L`).
//!
//! The volume formula is biconditional in K-semistability, so the checked
//! wrapper on [`PolarizedCone`] refuses unstable bases instead of silently
//! reporting a wrong volume. Unstable klt germs presented as line
//! arrangements are handled by [`destabilizing_degeneration`], which
//! degenerates the germ to a two-point K-semistable cone and reads the
//! volume off that cone.
//!
//! Weighted `C^2`-germs are covered by [`WeightedPlanePair::quotient`]: a
//! weight-(a, b) torus action with boundary
//! `c0 {z2=0} + cinf {z1=0} + sum_i c_i D_i` descends to the marked sphere
//! with weights `(c0 + a - 1)/a` at 0, `(cinf + b - 1)/b` at infinity and
//! `c_i` at each branch point, polarized by `deg L = 1/(ab)`, with slope
//! `lambda = a + b - c0 b - cinf a - ab sum_i c_i`.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::pairs::{MarkedSphere, Singularity};
use crate::rat::{in_unit_interval, rat_int, Rat};

/// A marked sphere polarized by a positive rational degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarizedCone {
    base: MarkedSphere,
    polarization_degree: Rat,
}

/// Singularity class of the cone vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeClass {
    /// `lambda > 0` and the base is klt.
    Klt,
    /// Log canonical but not klt: `lambda >= 0` with a weight-1 point, or
    /// `lambda = 0`.
    LcNotKlt,
    /// `lambda < 0`; the vertex is not log canonical.
    NotLc,
}

impl PolarizedCone {
    pub fn new(base: MarkedSphere, polarization_degree: Rat) -> Result<Self> {
        if !polarization_degree.is_positive() {
            return Err(Error::NonPositiveDegree(polarization_degree));
        }
        Ok(Self {
            base,
            polarization_degree,
        })
    }

    pub fn base(&self) -> &MarkedSphere {
        &self.base
    }

    pub fn polarization_degree(&self) -> &Rat {
        &self.polarization_degree
    }

    /// The slope `lambda = (2 - sum_i delta_i) / deg L`; may be zero or
    /// negative.
    pub fn lambda(&self) -> Rat {
        (rat_int(2) - self.base.weight_sum()) / &self.polarization_degree
    }

    /// Classifies the vertex singularity from the slope and the base.
    pub fn classify(&self) -> ConeClass {
        let lambda = self.lambda();
        if lambda.is_negative() {
            return ConeClass::NotLc;
        }
        if lambda.is_positive() && self.base.classify().singularity == Singularity::Klt {
            ConeClass::Klt
        } else {
            ConeClass::LcNotKlt
        }
    }

    /// Normalized volume of the vertex, `lambda^2 deg L`.
    ///
    /// The closed form is the volume exactly when the base is K-semistable,
    /// so a base failing the Troyanov condition is an error, as is a
    /// non-klt cone. Volumes of unstable klt arrangement germs are obtained
    /// through [`destabilizing_degeneration`] instead.
    pub fn normalized_volume(&self) -> Result<Rat> {
        if !self.base.is_k_semistable() {
            return Err(Error::NotSemistable);
        }
        if self.classify() != ConeClass::Klt {
            return Err(Error::NotKlt);
        }
        normalized_volume(&self.lambda(), &self.polarization_degree, 1)
    }

    /// Multiplies the polarization degree by `k`, dividing the slope and the
    /// normalized volume by `k`.
    pub fn rescale_polarization(&self, k: u64) -> Self {
        assert!(k >= 1, "rescaling factor must be positive");
        Self {
            base: self.base.clone(),
            polarization_degree: &self.polarization_degree * rat_int(k as i64),
        }
    }
}

/// Raw normalized-volume formula `lambda^(n+1) L^n` for an `(n+1)`-dimensional
/// cone with slope `lambda` and top intersection number `L^n`.
///
/// The caller attests that the base pair is K-semistable; the checked
/// surface-cone path is [`PolarizedCone::normalized_volume`]. Intersection
/// numbers for `n > 1` are caller-supplied, never derived here.
pub fn normalized_volume(lambda: &Rat, l_top: &Rat, n: u32) -> Result<Rat> {
    if !lambda.is_positive() {
        return Err(Error::NotKlt);
    }
    if !l_top.is_positive() {
        return Err(Error::PreconditionViolated(
            "top intersection number L^n must be positive",
        ));
    }
    let mut power = Rat::one();
    for _ in 0..=n {
        power *= lambda;
    }
    Ok(power * l_top)
}

/// A weight-(a, b) germ `(C^2, c0 {z2=0} + cinf {z1=0} + sum_i c_i D_i, 0)`
/// with coprime positive weights and branch coefficients in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedPlanePair {
    a: u64,
    b: u64,
    c0: Rat,
    c_inf: Rat,
    branches: Vec<(String, Rat)>,
}

impl WeightedPlanePair {
    pub fn new(a: u64, b: u64, c0: Rat, c_inf: Rat, branches: Vec<(String, Rat)>) -> Result<Self> {
        if a == 0 || b == 0 || a.gcd(&b) != 1 {
            return Err(Error::NotCoprime { a, b });
        }
        for (label, value) in [("c0", &c0), ("c_inf", &c_inf)] {
            if !in_unit_interval(value) {
                return Err(Error::WeightOutOfRange {
                    label: label.to_owned(),
                    value: value.clone(),
                    expected: "[0, 1]",
                });
            }
        }
        let mut seen: Vec<&str> = Vec::with_capacity(branches.len());
        for (label, c) in &branches {
            if seen.contains(&label.as_str()) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
            seen.push(label);
            if !in_unit_interval(c) {
                return Err(Error::WeightOutOfRange {
                    label: label.clone(),
                    value: c.clone(),
                    expected: "[0, 1]",
                });
            }
        }
        Ok(Self {
            a,
            b,
            c0,
            c_inf,
            branches,
        })
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn c0(&self) -> &Rat {
        &self.c0
    }

    pub fn c_inf(&self) -> &Rat {
        &self.c_inf
    }

    pub fn branches(&self) -> &[(String, Rat)] {
        &self.branches
    }

    /// The quotient cone of the germ by its torus action.
    ///
    /// Marks of weight exactly zero are dropped (they are non-points of the
    /// base); a computed mark above 1 is an error. The construction
    /// cross-checks the slope of the result against the closed form
    /// `a + b - c0 b - cinf a - ab sum_i c_i`.
    pub fn quotient(&self) -> Result<PolarizedCone> {
        let a = rat_int(self.a as i64);
        let b = rat_int(self.b as i64);

        let weight_zero = (&self.c0 + &a - Rat::one()) / &a;
        let weight_inf = (&self.c_inf + &b - Rat::one()) / &b;

        let mut points: Vec<(String, Rat)> = Vec::with_capacity(self.branches.len() + 2);
        for (label, weight) in [("0", weight_zero), ("inf", weight_inf)] {
            if weight > Rat::one() {
                return Err(Error::WeightOutOfRange {
                    label: label.to_owned(),
                    value: weight,
                    expected: "(0, 1] or exactly 0",
                });
            }
            if !weight.is_zero() {
                points.push((label.to_owned(), weight));
            }
        }
        for (label, c) in &self.branches {
            if *c > Rat::one() {
                return Err(Error::WeightOutOfRange {
                    label: label.clone(),
                    value: c.clone(),
                    expected: "(0, 1] or exactly 0",
                });
            }
            if !c.is_zero() {
                points.push((label.clone(), c.clone()));
            }
        }

        let degree = (&a * &b).recip();
        let cone = PolarizedCone::new(MarkedSphere::new(points)?, degree)?;

        let branch_sum = self.branches.iter().fold(rat_int(0), |acc, (_, c)| acc + c);
        let lambda_closed_form = &a + &b - &self.c0 * &b - &self.c_inf * &a - &a * &b * branch_sum;
        assert_eq!(
            cone.lambda(),
            lambda_closed_form,
            "slope of the quotient cone disagrees with the closed form"
        );

        Ok(cone)
    }
}

/// Weighted lines through the origin of `C^2`: the germ
/// `(C^2, sum_i delta_i L_i, 0)` with coefficients in `[0, 1]`.
///
/// Unlike [`MarkedSphere`], a zero coefficient is allowed here and denotes a
/// line carrying no weight; such lines are dropped when converting to a
/// marked sphere and ignored by every invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineArrangement {
    weights: Vec<(String, Rat)>,
}

impl LineArrangement {
    pub fn new(weights: Vec<(String, Rat)>) -> Result<Self> {
        let mut seen: Vec<&str> = Vec::with_capacity(weights.len());
        for (label, delta) in &weights {
            if seen.contains(&label.as_str()) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
            seen.push(label);
            if !in_unit_interval(delta) {
                return Err(Error::WeightOutOfRange {
                    label: label.clone(),
                    value: delta.clone(),
                    expected: "[0, 1]",
                });
            }
        }
        Ok(Self { weights })
    }

    /// Builds an arrangement with generated labels `L1, L2, ...`.
    pub fn from_weights(weights: &[Rat]) -> Result<Self> {
        Self::new(
            weights
                .iter()
                .enumerate()
                .map(|(i, w)| (format!("L{}", i + 1), w.clone()))
                .collect(),
        )
    }

    /// The empty arrangement: a smooth point of `C^2`.
    pub fn empty() -> Self {
        Self {
            weights: Vec::new(),
        }
    }

    pub fn lines(&self) -> &[(String, Rat)] {
        &self.weights
    }

    /// Nonzero weights only; the ones every invariant sees.
    fn effective(&self) -> impl Iterator<Item = &Rat> {
        self.weights.iter().map(|(_, d)| d).filter(|d| !d.is_zero())
    }

    /// Total weight `delta`.
    pub fn delta(&self) -> Rat {
        self.effective().fold(rat_int(0), |acc, d| acc + d)
    }

    /// Maximal weight `delta_m`, zero when empty.
    pub fn delta_max(&self) -> Rat {
        self.effective()
            .max()
            .cloned()
            .unwrap_or_else(|| rat_int(0))
    }

    /// `delta' = delta - delta_m`, the total weight of the non-maximal lines.
    pub fn delta_rest(&self) -> Rat {
        self.delta() - self.delta_max()
    }

    /// True iff the germ is klt: `delta < 2` and `delta_m < 1`.
    pub fn is_klt_germ(&self) -> bool {
        self.delta() < rat_int(2) && self.delta_max() < Rat::one()
    }

    /// The marked sphere under the germ, dropping zero-weight lines.
    pub fn to_marked_sphere(&self) -> MarkedSphere {
        MarkedSphere::new(
            self.weights
                .iter()
                .filter(|(_, d)| !d.is_zero())
                .cloned()
                .collect(),
        )
        .expect("arrangement invariants imply sphere invariants")
    }
}

/// The K-semistable cone an unstable klt arrangement germ degenerates to,
/// with the normalized volume read off the degenerate cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegenerationData {
    /// Torus weight `a` of the degenerate cone; coprime to `b`.
    pub a: u64,
    /// Torus weight `b`, with `b/a = (1 - delta')/(1 - delta_m)`.
    pub b: u64,
    /// Common weight of the two marks of the degenerate cone's base.
    pub gamma: Rat,
    /// Normalized volume `4 (1 - delta')(1 - delta_m)` of the germ.
    pub vol_hat: Rat,
}

/// Degenerates an unstable klt arrangement germ (`delta < 2`, `delta_m < 1`,
/// `delta_m >= delta'`) to the two-point K-semistable cone it jumps to.
///
/// The degenerate germ is `(C^2, delta_m {0} + delta' {inf})` rescaled by
/// the torus action with weights `(a, b)` in lowest terms such that
/// `b/a = (1 - delta')/(1 - delta_m)`; its quotient base carries the weight
/// `gamma = 1 - (1 - delta')/b = 1 - (1 - delta_m)/a` at both marks. Both
/// expressions for `gamma` are computed and asserted equal, and the
/// `{gamma, gamma}` base is asserted K-semistable.
///
/// The empty arrangement satisfies the regime conditions with
/// `delta_m = delta' = 0` and yields the smooth-point data
/// `a = b = 1, vol_hat = 4`.
pub fn destabilizing_degeneration(arrangement: &LineArrangement) -> Result<DegenerationData> {
    let delta = arrangement.delta();
    let delta_m = arrangement.delta_max();
    let delta_rest = arrangement.delta_rest();

    if delta >= rat_int(2) || delta_m >= Rat::one() || delta_m < delta_rest {
        return Err(Error::PreconditionViolated(
            "degeneration requires delta < 2, delta_m < 1 and delta_m >= delta'",
        ));
    }

    let one = Rat::one();
    let co_rest = &one - &delta_rest; // 1 - delta' > 0
    let co_max = &one - &delta_m; // 1 - delta_m > 0

    // b/a in lowest terms; Rat is always reduced, so numerator and
    // denominator are already coprime.
    let ratio = &co_rest / &co_max;
    let b = ratio.numer().to_u64().ok_or(Error::PreconditionViolated(
        "degeneration weights exceed the u64 range",
    ))?;
    let a = ratio.denom().to_u64().ok_or(Error::PreconditionViolated(
        "degeneration weights exceed the u64 range",
    ))?;

    let gamma = &one - &co_rest / rat_int(b as i64);
    let gamma_via_a = &one - &co_max / rat_int(a as i64);
    assert_eq!(gamma, gamma_via_a, "the two slope expressions disagree");

    let gamma_pair = if gamma.is_zero() {
        MarkedSphere::empty()
    } else {
        MarkedSphere::new(vec![
            ("0".to_owned(), gamma.clone()),
            ("inf".to_owned(), gamma.clone()),
        ])?
    };
    assert!(
        gamma_pair.is_k_semistable(),
        "degenerate cone base must be K-semistable"
    );

    let vol_hat = rat_int(4) * co_rest * co_max;

    Ok(DegenerationData {
        a,
        b,
        gamma,
        vol_hat,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn sphere(weights: &[Rat]) -> MarkedSphere {
        MarkedSphere::new(
            weights
                .iter()
                .enumerate()
                .map(|(i, w)| (format!("p{}", i + 1), w.clone()))
                .collect(),
        )
        .unwrap()
    }

    fn cone(weights: &[Rat], degree: Rat) -> PolarizedCone {
        PolarizedCone::new(sphere(weights), degree).unwrap()
    }

    #[test]
    fn lambda_of_weighted_quotient_base() {
        // Weight-(2,3) quotient of smooth C^2: lambda = a + b = 5.
        let c = cone(&[rat(1, 2), rat(2, 3)], rat(1, 6));
        assert_eq!(c.lambda(), rat_int(5));
    }

    #[test]
    fn lambda_of_smooth_plane_and_log_cy() {
        assert_eq!(
            PolarizedCone::new(MarkedSphere::empty(), rat_int(1))
                .unwrap()
                .lambda(),
            rat_int(2)
        );
        assert_eq!(
            cone(&[rat_int(1), rat_int(1)], rat_int(1)).lambda(),
            rat_int(0)
        );
    }

    #[test]
    fn classify_cone_cases() {
        assert_eq!(
            cone(&[rat(1, 2), rat(2, 3)], rat(1, 6)).classify(),
            ConeClass::Klt
        );
        assert_eq!(
            cone(&[rat_int(1), rat_int(1)], rat_int(1)).classify(),
            ConeClass::LcNotKlt
        );
        assert_eq!(
            cone(&[rat_int(1), rat_int(1), rat_int(1)], rat_int(1)).classify(),
            ConeClass::NotLc
        );
    }

    #[test]
    fn raw_volume_formula() {
        // Smooth point of C^2: lambda = 2, deg L = 1.
        assert_eq!(
            normalized_volume(&rat_int(2), &rat_int(1), 1).unwrap(),
            rat_int(4)
        );
        // A1 singularity: cone over (P^1, O(2)).
        assert_eq!(
            normalized_volume(&rat_int(1), &rat_int(2), 1).unwrap(),
            rat_int(2)
        );
    }

    #[test]
    fn raw_volume_rejects_nonpositive_slope() {
        assert_eq!(
            normalized_volume(&rat_int(0), &rat_int(1), 1).unwrap_err(),
            Error::NotKlt
        );
        assert_eq!(
            normalized_volume(&rat_int(-1), &rat_int(1), 1).unwrap_err(),
            Error::NotKlt
        );
    }

    #[test]
    fn volume_wrapper_rejects_unstable_base() {
        let c = cone(&[rat(1, 2), rat(2, 3)], rat(1, 6));
        assert_eq!(c.normalized_volume().unwrap_err(), Error::NotSemistable);
    }

    #[test]
    fn volume_wrapper_rejects_log_cy_cone() {
        let c = cone(&[rat_int(1), rat_int(1)], rat_int(1));
        assert_eq!(c.normalized_volume().unwrap_err(), Error::NotKlt);
    }

    #[test]
    fn quotient_of_trivial_action() {
        let w = WeightedPlanePair::new(1, 1, rat_int(0), rat_int(0), vec![]).unwrap();
        let c = w.quotient().unwrap();
        assert!(c.base().is_empty());
        assert_eq!(*c.polarization_degree(), rat_int(1));
        assert_eq!(c.lambda(), rat_int(2));
    }

    #[test]
    fn quotient_of_weight_2_3_action() {
        let w = WeightedPlanePair::new(2, 3, rat_int(0), rat_int(0), vec![]).unwrap();
        let c = w.quotient().unwrap();
        let weights: Vec<(String, Rat)> = c
            .base()
            .points()
            .iter()
            .map(|p| (p.label.clone(), p.delta.clone()))
            .collect();
        assert_eq!(
            weights,
            vec![("0".to_owned(), rat(1, 2)), ("inf".to_owned(), rat(2, 3))]
        );
        assert_eq!(*c.polarization_degree(), rat(1, 6));
        assert_eq!(c.lambda(), rat_int(5));
    }

    #[test]
    fn quotient_with_branches() {
        let w = WeightedPlanePair::new(
            1,
            1,
            rat_int(0),
            rat_int(0),
            vec![
                ("u1".into(), rat(1, 2)),
                ("u2".into(), rat(1, 2)),
                ("u3".into(), rat(1, 2)),
            ],
        )
        .unwrap();
        let c = w.quotient().unwrap();
        assert_eq!(c.base().points().len(), 3);
        assert_eq!(*c.polarization_degree(), rat_int(1));
        assert_eq!(c.lambda(), rat(1, 2));
    }

    #[test]
    fn quotient_rejects_out_of_range_coefficients() {
        let err = WeightedPlanePair::new(2, 3, rat(3, 2), rat_int(0), vec![]).unwrap_err();
        assert_eq!(err.kind(), "WeightOutOfRange");
        let err = WeightedPlanePair::new(2, 4, rat_int(0), rat_int(0), vec![]).unwrap_err();
        assert_eq!(err.kind(), "NotCoprime");
    }

    #[test]
    fn rescale_divides_slope_and_volume() {
        let c = PolarizedCone::new(MarkedSphere::empty(), rat_int(1)).unwrap();
        let r = c.rescale_polarization(2);
        assert_eq!(*r.polarization_degree(), rat_int(2));
        assert_eq!(r.lambda(), rat_int(1));
        assert_eq!(r.normalized_volume().unwrap(), rat_int(2));

        let c = cone(&[rat(1, 2), rat(1, 2), rat(1, 2)], rat_int(1));
        let r = c.rescale_polarization(3);
        assert_eq!(r.lambda(), rat(1, 6));
        assert_eq!(r.normalized_volume().unwrap(), rat(1, 12));
        assert_eq!(c.normalized_volume().unwrap(), rat(1, 4));

        assert_eq!(c.rescale_polarization(1), c);
    }

    #[test]
    fn degeneration_of_two_line_germ() {
        // delta_m = 1/2, delta' = 1/3; b/a = (2/3)/(1/2) = 4/3.
        let a = LineArrangement::from_weights(&[rat(1, 3), rat(1, 2)]).unwrap();
        let d = destabilizing_degeneration(&a).unwrap();
        assert_eq!(d.a, 3);
        assert_eq!(d.b, 4);
        assert_eq!(d.gamma, rat(5, 6));
        assert_eq!(d.vol_hat, rat(4, 3));
    }

    #[test]
    fn degeneration_of_smooth_point() {
        let d = destabilizing_degeneration(&LineArrangement::empty()).unwrap();
        assert_eq!(d.a, 1);
        assert_eq!(d.b, 1);
        assert_eq!(d.gamma, rat_int(0));
        assert_eq!(d.vol_hat, rat_int(4));
    }

    #[test]
    fn degeneration_on_balanced_boundary() {
        // delta_m = delta' = 1/2: the degenerate cone agrees with the
        // semistable value (2 - delta)^2 / 4 scaled by 4.
        let a = LineArrangement::from_weights(&[rat(1, 2), rat(1, 2)]).unwrap();
        let d = destabilizing_degeneration(&a).unwrap();
        assert_eq!(d.a, 1);
        assert_eq!(d.b, 1);
        assert_eq!(d.gamma, rat(1, 2));
        assert_eq!(d.vol_hat, rat_int(1));
    }

    #[test]
    fn degeneration_rejects_stable_regime() {
        let a = LineArrangement::from_weights(&[rat(1, 2), rat(1, 2), rat(1, 2)]).unwrap();
        let err = destabilizing_degeneration(&a).unwrap_err();
        assert_eq!(err.kind(), "PreconditionViolated");
    }

    #[test]
    fn degeneration_rejects_non_klt() {
        let a = LineArrangement::from_weights(&[rat_int(1), rat(1, 2)]).unwrap();
        let err = destabilizing_degeneration(&a).unwrap_err();
        assert_eq!(err.kind(), "PreconditionViolated");
    }

    #[test]
    fn arrangement_drops_zero_weights() {
        let a = LineArrangement::new(vec![("L1".into(), rat_int(0)), ("L2".into(), rat(1, 2))])
            .unwrap();
        assert_eq!(a.delta(), rat(1, 2));
        assert_eq!(a.to_marked_sphere().points().len(), 1);
    }
}
