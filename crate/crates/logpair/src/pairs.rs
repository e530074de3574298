//! Marked Riemann spheres and their K-(semi)stability.
//!
//! A marked sphere is the log pair `(P^1, sum_i delta_i p_i)` with exact
//! rational weights `delta_i` in `(0, 1]`. Every invariant computed here
//! depends only on the multiset of weights, so points are carried as opaque
//! labels with no coordinate model attached.
//!
//! K-semistability of a marked sphere is decided by the closed Troyanov
//! condition: for every marked point, the weight of that point does not
//! exceed the sum of all the others. Equivalently, twice the maximal weight
//! is at most the total weight. K-stability is the strict form of the same
//! inequality; the closed condition is the semistable one, and strictness is
//! the natural stable analogue rather than a separately established
//! criterion.

use num_traits::One;

use crate::error::{Error, Result};
use crate::rat::{rat_int, Rat};

/// A weighted point on the sphere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedPoint {
    pub label: String,
    pub delta: Rat,
}

/// The pair `(P^1, sum_i delta_i p_i)` with `0 < delta_i <= 1` and pairwise
/// distinct labels. The empty sphere denotes the bare projective line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedSphere {
    points: Vec<MarkedPoint>,
}

/// Positivity of `-(K + Delta)` on the sphere, decided by the total weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Positivity {
    /// Total weight `< 2`: the pair is log-Fano.
    LogFano,
    /// Total weight `= 2`: the pair is log-Calabi-Yau.
    LogCY,
    /// Total weight `> 2`: the log canonical divisor is positive.
    GeneralType,
}

/// Singularity class of the pair. Weights are capped at 1, so a marked
/// sphere is always log canonical; it is klt exactly when every weight is
/// strictly below 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Singularity {
    Klt,
    LcNotKlt,
}

/// Joint classification of a marked sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairClass {
    pub positivity: Positivity,
    pub singularity: Singularity,
}

impl MarkedSphere {
    /// Validates labels and weights and builds the sphere.
    ///
    /// Weights must lie in `(0, 1]`; a zero-weight point is a non-point and
    /// is rejected here rather than silently dropped.
    pub fn new(points: Vec<(String, Rat)>) -> Result<Self> {
        let mut seen: Vec<&str> = Vec::with_capacity(points.len());
        for (label, delta) in &points {
            if seen.contains(&label.as_str()) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
            seen.push(label);
            if !crate::rat::in_half_open_unit_interval(delta) {
                return Err(Error::WeightOutOfRange {
                    label: label.clone(),
                    value: delta.clone(),
                    expected: "(0, 1]",
                });
            }
        }
        Ok(Self {
            points: points
                .into_iter()
                .map(|(label, delta)| MarkedPoint { label, delta })
                .collect(),
        })
    }

    /// The bare projective line `(P^1, 0)`.
    pub fn empty() -> Self {
        Self { points: Vec::new() }
    }

    pub fn points(&self) -> &[MarkedPoint] {
        &self.points
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Sum of all weights.
    pub fn weight_sum(&self) -> Rat {
        self.points.iter().fold(rat_int(0), |acc, p| acc + &p.delta)
    }

    /// Largest weight, or zero for the empty sphere.
    pub fn max_weight(&self) -> Rat {
        self.points
            .iter()
            .map(|p| &p.delta)
            .max()
            .cloned()
            .unwrap_or_else(|| rat_int(0))
    }

    /// Degree of `K + Delta`, i.e. `sum_i delta_i - 2`.
    pub fn log_canonical_degree(&self) -> Rat {
        self.weight_sum() - rat_int(2)
    }

    /// Classifies the pair by positivity and singularity type.
    pub fn classify(&self) -> PairClass {
        let sum = self.weight_sum();
        let two = rat_int(2);
        let positivity = if sum < two {
            Positivity::LogFano
        } else if sum == two {
            Positivity::LogCY
        } else {
            Positivity::GeneralType
        };
        let singularity = if self.max_weight() < Rat::one() {
            Singularity::Klt
        } else {
            Singularity::LcNotKlt
        };
        PairClass {
            positivity,
            singularity,
        }
    }

    /// Closed Troyanov condition: for every point, the sum of the other
    /// weights is at least its own weight. Vacuously true when empty.
    pub fn is_k_semistable(&self) -> bool {
        let sum = self.weight_sum();
        self.points
            .iter()
            .all(|p| sum.clone() - &p.delta >= p.delta)
    }

    /// Strict Troyanov condition: every point's weight is strictly smaller
    /// than the sum of the others.
    pub fn is_k_stable(&self) -> bool {
        let sum = self.weight_sum();
        self.points.iter().all(|p| sum.clone() - &p.delta > p.delta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    pub(crate) fn sphere(weights: &[Rat]) -> MarkedSphere {
        MarkedSphere::new(
            weights
                .iter()
                .enumerate()
                .map(|(i, w)| (format!("p{}", i + 1), w.clone()))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn log_canonical_degree_of_bare_line() {
        assert_eq!(MarkedSphere::empty().log_canonical_degree(), rat_int(-2));
    }

    #[test]
    fn log_canonical_degree_sums_weights() {
        let s = sphere(&[rat(1, 2), rat(1, 2), rat(1, 2)]);
        assert_eq!(s.log_canonical_degree(), rat(-1, 2));
        let s = sphere(&[rat_int(1), rat_int(1)]);
        assert_eq!(s.log_canonical_degree(), rat_int(0));
    }

    #[test]
    fn classify_log_fano_klt() {
        let c = sphere(&[rat(1, 2), rat(1, 2), rat(1, 2)]).classify();
        assert_eq!(c.positivity, Positivity::LogFano);
        assert_eq!(c.singularity, Singularity::Klt);
    }

    #[test]
    fn classify_log_cy_boundary() {
        let c = sphere(&[rat_int(1), rat_int(1)]).classify();
        assert_eq!(c.positivity, Positivity::LogCY);
        assert_eq!(c.singularity, Singularity::LcNotKlt);

        let c = sphere(&[rat(2, 3), rat(2, 3), rat(2, 3)]).classify();
        assert_eq!(c.positivity, Positivity::LogCY);
        assert_eq!(c.singularity, Singularity::Klt);
    }

    #[test]
    fn classify_general_type() {
        let c = sphere(&[rat_int(1), rat_int(1), rat_int(1)]).classify();
        assert_eq!(c.positivity, Positivity::GeneralType);
    }

    #[test]
    fn empty_sphere_is_log_fano_klt_and_stable() {
        let s = MarkedSphere::empty();
        let c = s.classify();
        assert_eq!(c.positivity, Positivity::LogFano);
        assert_eq!(c.singularity, Singularity::Klt);
        assert!(s.is_k_stable());
        assert!(s.is_k_semistable());
    }

    #[test]
    fn semistability_symmetric_weights() {
        assert!(sphere(&[rat(1, 2), rat(1, 2), rat(1, 2)]).is_k_semistable());
    }

    #[test]
    fn semistability_fails_on_dominant_weight() {
        // 1/2 < 2/3: the condition fails at the heavier point.
        assert!(!sphere(&[rat(1, 2), rat(2, 3)]).is_k_semistable());
    }

    #[test]
    fn semistability_holds_at_equality() {
        assert!(sphere(&[rat_int(1), rat_int(1)]).is_k_semistable());
    }

    #[test]
    fn stability_is_strict() {
        assert!(sphere(&[rat(1, 2), rat(1, 2), rat(1, 2)]).is_k_stable());
        assert!(!sphere(&[rat_int(1), rat_int(1)]).is_k_stable());
    }

    #[test]
    fn rejects_zero_weight() {
        let err = MarkedSphere::new(vec![("p".into(), rat_int(0))]).unwrap_err();
        assert_eq!(err.kind(), "WeightOutOfRange");
    }

    #[test]
    fn rejects_weight_above_one() {
        let err = MarkedSphere::new(vec![("p".into(), rat(3, 2))]).unwrap_err();
        assert_eq!(err.kind(), "WeightOutOfRange");
    }

    #[test]
    fn rejects_duplicate_labels() {
        let err =
            MarkedSphere::new(vec![("p".into(), rat(1, 2)), ("p".into(), rat(1, 3))]).unwrap_err();
        assert_eq!(err.kind(), "DuplicateLabel");
    }
}
