//! Log Chern numbers of log-smooth surface pairs and Miyaoka-Yau audits.
//!
//! For a pair `(S, Delta = sum_i delta_i Delta_i)` the log Chern numbers
//! expand in caller-supplied intersection data:
//!
//! ```text
//! c2(S, Delta)   = c2(S) + sum_i delta_i (K . Delta_i)
//!                        + sum_i delta_i Delta_i^2
//!                        + sum_{i<j} delta_i delta_j (Delta_i . Delta_j)
//! c1^2(S, Delta) = K^2 + 2 sum_i delta_i (K . Delta_i)
//!                      + sum_i delta_i^2 Delta_i^2
//!                      + 2 sum_{i<j} delta_i delta_j (Delta_i . Delta_j)
//! ```
//!
//! `c1(S, Delta)` is realized as the class `-(K_S + Delta)`, the first Chern
//! class of the logarithmic tangent sheaf; only its square enters any
//! formula here, so all computed values are the same under either sign
//! convention.
//!
//! The surface Miyaoka-Yau audit for a K-semistable log-Fano pair is
//! `6 c2(S, Delta) - 2 c1^2(S, Delta) >= 0`, which is exactly the Bogomolov
//! discriminant of the rank-3 extension sheaf of the logarithmic tangent
//! sheaf by the structure sheaf; the two are computed along separate code
//! paths and must agree. The log-Calabi-Yau audit is `c2(S, Delta) >= 0`.
//!
//! K-semistability of surface pairs is not decidable here; the audits
//! report, the caller attests the hypothesis.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{in_half_open_unit_interval, rat_int, Rat};

/// One boundary component with its weight and intersection numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryComponent {
    pub label: String,
    /// Coefficient `delta` in `(0, 1]`.
    pub delta: Rat,
    /// Self-intersection `Delta_i^2`.
    pub self_int: i64,
    /// Intersection `K_S . Delta_i`.
    pub k_dot: i64,
}

/// Intersection-theory data of a log-smooth surface pair.
///
/// `pair_int[i][j]` holds `Delta_i . Delta_j` for `i != j`; the matrix must
/// be symmetric with zero diagonal, self-intersections live on the
/// components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceChernData {
    euler_number: i64,
    k_squared: i64,
    components: Vec<BoundaryComponent>,
    pair_int: Vec<Vec<i64>>,
}

/// The log Chern numbers of a pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogChernNumbers {
    pub c1_sq: Rat,
    pub c2: Rat,
}

/// Chern data of the rank-(n+1) extension sheaf of the logarithmic tangent
/// sheaf by the structure sheaf. The extension is by a trivial sheaf, so the
/// Chern classes agree with the logarithmic tangent sheaf's.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionSheafInvariants {
    pub rank: u32,
    pub c1_sq: Rat,
    pub c2: Rat,
    /// `2 (n+1) c2 - n c1^2`.
    pub discriminant: Rat,
}

/// Outcome of a Miyaoka-Yau audit: the tested value and whether the
/// inequality holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MyAudit {
    pub value: Rat,
    pub holds: bool,
}

/// Outcome of the log-Calabi-Yau audit. `c1_sq_vanishes` is false when the
/// supplied data is not numerically Calabi-Yau, in which case the audit is
/// answering a question about a pair that does not satisfy its hypothesis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyAudit {
    pub value: Rat,
    pub holds: bool,
    pub c1_sq_vanishes: bool,
}

impl SurfaceChernData {
    #[allow(clippy::needless_range_loop)]
    pub fn new(
        euler_number: i64,
        k_squared: i64,
        components: Vec<BoundaryComponent>,
        pair_int: Vec<Vec<i64>>,
    ) -> Result<Self> {
        let m = components.len();
        if pair_int.len() != m || pair_int.iter().any(|row| row.len() != m) {
            return Err(Error::MalformedMatrix(format!(
                "expected a {m} x {m} matrix"
            )));
        }
        for i in 0..m {
            if pair_int[i][i] != 0 {
                return Err(Error::MalformedMatrix(format!(
                    "nonzero diagonal entry at ({i}, {i}); self-intersections belong on the components"
                )));
            }
            for j in (i + 1)..m {
                if pair_int[i][j] != pair_int[j][i] {
                    return Err(Error::MalformedMatrix(format!("asymmetry at ({i}, {j})")));
                }
            }
        }
        let mut seen: Vec<&str> = Vec::with_capacity(m);
        for c in &components {
            if seen.contains(&c.label.as_str()) {
                return Err(Error::DuplicateLabel(c.label.clone()));
            }
            seen.push(&c.label);
            if !in_half_open_unit_interval(&c.delta) {
                return Err(Error::WeightOutOfRange {
                    label: c.label.clone(),
                    value: c.delta.clone(),
                    expected: "(0, 1]",
                });
            }
        }
        Ok(Self {
            euler_number,
            k_squared,
            components,
            pair_int,
        })
    }

    /// A surface with empty boundary.
    pub fn boundaryless(euler_number: i64, k_squared: i64) -> Self {
        Self {
            euler_number,
            k_squared,
            components: Vec::new(),
            pair_int: Vec::new(),
        }
    }

    pub fn euler_number(&self) -> i64 {
        self.euler_number
    }

    pub fn k_squared(&self) -> i64 {
        self.k_squared
    }

    pub fn components(&self) -> &[BoundaryComponent] {
        &self.components
    }

    pub fn pair_int(&self) -> &[Vec<i64>] {
        &self.pair_int
    }

    /// Strict-mode sanity check for data whose components are declared
    /// smooth curves: adjunction forces `K . C + C^2 = 2g - 2`, so the sum
    /// must be even for every component. Opt-in; generic intersection data
    /// need not satisfy it.
    pub fn check_adjunction_parity(&self) -> Result<()> {
        for c in &self.components {
            let value = c.k_dot + c.self_int;
            if value.rem_euclid(2) != 0 {
                return Err(Error::AdjunctionParity {
                    label: c.label.clone(),
                    value,
                });
            }
        }
        Ok(())
    }
}

/// Evaluates the log Chern numbers from intersection data.
pub fn log_chern(data: &SurfaceChernData) -> LogChernNumbers {
    let mut c2 = rat_int(data.euler_number);
    let mut c1_sq = rat_int(data.k_squared);

    for c in &data.components {
        let k_dot = rat_int(c.k_dot);
        let self_int = rat_int(c.self_int);
        c2 += &c.delta * &k_dot + &c.delta * &self_int;
        c1_sq += rat_int(2) * &c.delta * &k_dot + &c.delta * &c.delta * &self_int;
    }
    for i in 0..data.components.len() {
        for j in (i + 1)..data.components.len() {
            let cross = &data.components[i].delta
                * &data.components[j].delta
                * rat_int(data.pair_int[i][j]);
            c2 += &cross;
            c1_sq += rat_int(2) * cross;
        }
    }
    LogChernNumbers { c1_sq, c2 }
}

/// Bogomolov discriminant `2 r c2 - (r - 1) c1^2` of a rank-r sheaf.
pub fn bogomolov_discriminant(rank: u32, c1_sq: &Rat, c2: &Rat) -> Rat {
    assert!(rank >= 1, "rank must be positive");
    rat_int(2 * rank as i64) * c2 - rat_int(rank as i64 - 1) * c1_sq
}

/// Surface Miyaoka-Yau audit for a K-semistable log-Fano pair:
/// `6 c2(S, Delta) - 2 c1^2(S, Delta)`, nonnegative when the hypothesis
/// holds. The hypothesis is caller-attested.
pub fn my_fano_check(data: &SurfaceChernData) -> MyAudit {
    let chern = log_chern(data);
    let value = rat_int(6) * &chern.c2 - rat_int(2) * &chern.c1_sq;
    let holds = !value.is_negative();
    MyAudit { value, holds }
}

/// Log-Calabi-Yau audit: `c2(S, Delta) >= 0` for a pair with
/// `K_S + Delta` numerically trivial (caller-attested). Flags data whose
/// `c1^2` is nonzero, since such a pair cannot be log-Calabi-Yau.
pub fn my_cy_check(data: &SurfaceChernData) -> CyAudit {
    let chern = log_chern(data);
    CyAudit {
        holds: !chern.c2.is_negative(),
        c1_sq_vanishes: chern.c1_sq.is_zero(),
        value: chern.c2,
    }
}

/// Chern data of the rank-(n+1) extension sheaf. Only surfaces (`n = 2`)
/// are supported; its discriminant must agree exactly with
/// [`my_fano_check`].
pub fn extension_sheaf_invariants(
    data: &SurfaceChernData,
    n: u32,
) -> Result<ExtensionSheafInvariants> {
    if n != 2 {
        return Err(Error::UnsupportedDimension(n));
    }
    let rank = n + 1;
    let chern = log_chern(data);
    let discriminant = bogomolov_discriminant(rank, &chern.c1_sq, &chern.c2);
    Ok(ExtensionSheafInvariants {
        rank,
        c1_sq: chern.c1_sq,
        c2: chern.c2,
        discriminant,
    })
}
