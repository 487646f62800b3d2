//! Bridgeland stability of L^⊗k under (kB, kω): the negative-curve
//! destabilizer test at any scaling, exact per-curve thresholds in k, the
//! large-scaling-limit verdict, and the implication-consistency harness.
//!
//! The destabilizer test runs two independent routes and insists they
//! agree:
//!
//! * the phase route builds the central charges of the subobject and the
//!   whole object at (kB, kω) and compares phases by exact cross product;
//! * the algebra route signs the rational quantity
//!   f̂(k) = ĝ∞ + ε̂/k, where ĝ∞ is the dHYM coefficient and
//!   ε̂ = |C²·(ω′.(c1−B))| > 0 is the finite-k correction.
//!
//! A disagreement is an implementation fault and is reported as an error,
//! never silently resolved. Since ε̂ > 0, f̂ decreases strictly in k
//! toward ĝ∞, so the set of scalings passing the phase test is either all
//! of (0, ∞) (when ĝ∞ ≥ 0) or the interval (0, k_star) with
//! k_star = ε̂/(−ĝ∞).

use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use crate::charge::{central_charge, phase_compare, ChernCharacter, PhaseOrder};
use crate::dhym;
use crate::error::Error;
use crate::lattice::{DivisorClass, ScaledAmpleClass, ScaledRational};
use crate::surface::{AmStatus, SurfaceModel};
use crate::Rational;

/// A positive rational scaling parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KParameter(Rational);

impl KParameter {
    pub fn new(k: Rational) -> Result<Self, Error> {
        if !k.is_positive() {
            return Err(Error::NonPositiveK(k.to_string()));
        }
        Ok(Self(k))
    }

    pub fn from_integer(k: u64) -> Self {
        Self(Rational::from_integer(k.into()))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }
}

/// Outcome of testing one negative curve as a destabilizer at one scaling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DestabCheck {
    /// ω.(c1−B) = 0: L^⊗k is stable at every scaling; no curve is tested.
    BoundaryStable,
    /// The candidate subobject is not in the heart at this k, so the
    /// destabilizing sequence does not exist.
    NoSubobject,
    /// The subobject phase is strictly smaller: stable against this curve.
    PhaseStable,
    /// The subobject phase reaches (Equal) or exceeds (Strict) the phase
    /// of the object; either way L^⊗k is not stable.
    Destabilized(Strictness),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strictness {
    Equal,
    Strict,
}

/// f̂(k): the finite-scaling phase quantity for one curve, as a coefficient
/// of √s. Sign decides the phase test; zero is the exact wall in k.
pub fn quantity_at_scaling(
    c1: &DivisorClass,
    b: &DivisorClass,
    omega: &ScaledAmpleClass,
    curve: &DivisorClass,
    k: &KParameter,
) -> Result<ScaledRational, Error> {
    let csq = curve.self_intersection();
    if !csq.is_negative() {
        return Err(Error::NotNegativeCurve(csq.to_string()));
    }
    let base = dhym::quantity(c1, b, omega, curve)?;
    let a = c1 - b;
    let slope = omega.direction().pair(&a)?;
    // Case 2 (slope > 0) subtracts C²/k, case 3 (slope < 0) adds it; with
    // C² < 0 both come to the strictly positive correction ε̂/k.
    let correction = match slope.cmp(&Rational::zero()) {
        Ordering::Greater => -(&csq / k.value()) * &slope,
        Ordering::Less => (&csq / k.value()) * &slope,
        Ordering::Equal => Rational::zero(),
    };
    ScaledRational::new(base.coeff() + correction, omega.scale_sq().clone())
}

/// Test one negative curve as a destabilizer of L^⊗k at (kB, kω).
///
/// Dual-route: the verdict from exact phase comparison of central charges
/// must match the sign of f̂(k); disagreement returns `Error::Internal`.
pub fn destabilizer_test(
    c1: &DivisorClass,
    b: &DivisorClass,
    omega: &ScaledAmpleClass,
    curve: &DivisorClass,
    k: &KParameter,
) -> Result<DestabCheck, Error> {
    let csq = curve.self_intersection();
    if !csq.is_negative() {
        return Err(Error::NotNegativeCurve(csq.to_string()));
    }
    c1.ensure_same_lattice(b)?;
    c1.ensure_same_lattice(curve)?;
    c1.ensure_same_lattice(omega.direction())?;

    let a = c1 - b;
    let slope = omega.direction().pair(&a)?;
    if slope.is_zero() {
        return Ok(DestabCheck::BoundaryStable);
    }

    let kq = k.value();
    let scaled_c1 = c1.scaled(kq);
    let scaled_b = b.scaled(kq);
    let scaled_omega = omega.scaled_by(kq);
    let whole = ChernCharacter::line_bundle(scaled_c1);

    let order = if slope.is_positive() {
        // L^⊗k(−C) sits in the heart iff k·(ω′.a) > ω′.C, strictly.
        let across = omega.direction().pair(curve)?;
        if kq * &slope <= across {
            return Ok(DestabCheck::NoSubobject);
        }
        let sub = whole.twist(&-curve)?;
        let z_whole = central_charge(&whole, &scaled_b, &scaled_omega)?;
        let z_sub = central_charge(&sub, &scaled_b, &scaled_omega)?;
        phase_compare(&z_sub, &z_whole)?
    } else {
        // The torsion sheaf L^⊗k(C)|_C is always in the heart; it is
        // measured against the shift L^⊗k[1].
        let torsion = whole.twist(curve)?.restriction(curve)?;
        let z_shift = central_charge(&whole, &scaled_b, &scaled_omega)?.shifted();
        let z_torsion = central_charge(&torsion, &scaled_b, &scaled_omega)?;
        phase_compare(&z_torsion, &z_shift)?
    };
    let phase_route = match order {
        PhaseOrder::Less => DestabCheck::PhaseStable,
        PhaseOrder::Equal => DestabCheck::Destabilized(Strictness::Equal),
        PhaseOrder::Greater => DestabCheck::Destabilized(Strictness::Strict),
    };

    let algebra_route = match quantity_at_scaling(c1, b, omega, curve, k)?.sign() {
        Ordering::Greater => DestabCheck::PhaseStable,
        Ordering::Equal => DestabCheck::Destabilized(Strictness::Equal),
        Ordering::Less => DestabCheck::Destabilized(Strictness::Strict),
    };

    if phase_route != algebra_route {
        return Err(Error::Internal(format!(
            "phase route {phase_route:?} disagrees with algebra route {algebra_route:?} \
             for C = {curve}, k = {}",
            k.value()
        )));
    }
    Ok(phase_route)
}

/// Exact scaling thresholds for one curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveThreshold {
    pub curve: DivisorClass,
    /// ĝ∞: the k→∞ limit of f̂, i.e. the dHYM coefficient for this curve.
    pub g_limit: ScaledRational,
    /// ε̂ = |C²·(ω′.(c1−B))| > 0: coefficient of 1/k in f̂.
    pub correction: Rational,
    /// Phase threshold ε̂/(−ĝ∞); present iff ĝ∞ < 0. The phase test
    /// passes exactly on (0, k_star).
    pub k_star: Option<Rational>,
    /// Heart-entry threshold for the subobject (slope > 0 case only):
    /// the subobject exists iff k > k_heart. Absent when the subobject
    /// exists at every k > 0.
    pub k_heart: Option<Rational>,
}

impl CurveThreshold {
    /// f̂(k) = ĝ∞ + ε̂/k.
    pub fn quantity_at(&self, k: &KParameter) -> Rational {
        self.g_limit.coeff() + &self.correction / k.value()
    }

    /// Monotone consequence of ε̂ > 0: passes everywhere when ĝ∞ ≥ 0,
    /// else exactly below k_star.
    pub fn phase_test_passes_at(&self, k: &KParameter) -> bool {
        match &self.k_star {
            None => true,
            Some(ks) => k.value() < ks,
        }
    }

    /// Not stable against this curve at k: the phase test fails and the
    /// destabilizing subobject exists.
    pub fn destabilizes_at(&self, k: &KParameter) -> bool {
        let Some(ks) = &self.k_star else {
            return false;
        };
        k.value() >= ks
            && self
                .k_heart
                .as_ref()
                .map_or(true, |kh| k.value() > kh)
    }
}

/// Thresholds for one negative curve. Requires C² < 0 and a nonzero slope
/// ω.(c1−B) (the boundary case is handled upstream and has no thresholds).
pub fn curve_threshold(
    c1: &DivisorClass,
    b: &DivisorClass,
    omega: &ScaledAmpleClass,
    curve: &DivisorClass,
) -> Result<CurveThreshold, Error> {
    let csq = curve.self_intersection();
    if !csq.is_negative() {
        return Err(Error::NotNegativeCurve(csq.to_string()));
    }
    let a = c1 - b;
    let slope = omega.direction().pair(&a)?;
    if slope.is_zero() {
        return Err(Error::BoundarySlope);
    }
    let g_limit = dhym::quantity(c1, b, omega, curve)?;
    let correction = (&csq * &slope).abs();
    let k_star = if g_limit.is_negative() {
        Some(&correction / -g_limit.coeff())
    } else {
        None
    };
    let k_heart = if slope.is_positive() {
        let entry = omega.direction().pair(curve)? / &slope;
        entry.is_positive().then_some(entry)
    } else {
        None
    };
    Ok(CurveThreshold {
        curve: curve.clone(),
        g_limit,
        correction,
        k_star,
        k_heart,
    })
}

/// Stability verdict for L^⊗k at one scaling, over a model's negative
/// curves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScalingVerdict {
    Stable,
    /// No strict violation, but phase equality against the listed curves.
    StrictlySemistable(Vec<DivisorClass>),
    /// Strict violation; the witness is the first such curve in declared
    /// order.
    Unstable(DivisorClass),
    /// ω.(c1−B) = 0: stable at every scaling by the boundary rule.
    BoundaryStable,
}

impl ScalingVerdict {
    pub fn is_stable(&self) -> bool {
        matches!(self, ScalingVerdict::Stable | ScalingVerdict::BoundaryStable)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalingAssessment {
    pub verdict: ScalingVerdict,
    /// True when the negative-curve criterion is only conjectural on this
    /// model, so the verdict is conditional.
    pub conjecture_dependent: bool,
    pub per_curve: Vec<(DivisorClass, DestabCheck)>,
}

/// Decide stability of L^⊗k at (kB, kω) by testing every declared negative
/// curve. Requires ω ample for the model.
pub fn stability_at_scaling(
    c1: &DivisorClass,
    b: &DivisorClass,
    omega: &ScaledAmpleClass,
    k: &KParameter,
    model: &SurfaceModel,
) -> Result<ScalingAssessment, Error> {
    model.require_ample(omega)?;
    let conjecture_dependent = model.am_status() == AmStatus::Conjectural;

    let a = c1 - b;
    let slope = omega.direction().pair(&a)?;
    if slope.is_zero() {
        return Ok(ScalingAssessment {
            verdict: ScalingVerdict::BoundaryStable,
            conjecture_dependent,
            per_curve: Vec::new(),
        });
    }

    let mut per_curve = Vec::with_capacity(model.negative_curves().len());
    for curve in model.negative_curves() {
        let check = destabilizer_test(c1, b, omega, curve, k)?;
        per_curve.push((curve.clone(), check));
    }

    let strict = per_curve
        .iter()
        .find(|(_, c)| matches!(c, DestabCheck::Destabilized(Strictness::Strict)));
    let verdict = if let Some((curve, _)) = strict {
        ScalingVerdict::Unstable(curve.clone())
    } else {
        let equal: Vec<DivisorClass> = per_curve
            .iter()
            .filter(|(_, c)| matches!(c, DestabCheck::Destabilized(Strictness::Equal)))
            .map(|(curve, _)| curve.clone())
            .collect();
        if equal.is_empty() {
            ScalingVerdict::Stable
        } else {
            ScalingVerdict::StrictlySemistable(equal)
        }
    };

    Ok(ScalingAssessment {
        verdict,
        conjecture_dependent,
        per_curve,
    })
}

/// Aggregated scaling behavior of L against a model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalingProfile {
    pub per_curve: Vec<CurveThreshold>,
    /// ω.(c1−B) = 0: stable at every scaling, no thresholds exist.
    pub boundary: bool,
    /// Stable for all large enough k ⟺ every ĝ∞ ≥ 0.
    pub large_limit: bool,
    /// Stable at every integer k ≥ 1.
    pub all_scalings: bool,
    /// Least k₀ such that the stability verdict is constant for all
    /// k > k₀ (0 when stable at every scaling).
    pub k0: Option<Rational>,
    pub conjecture_dependent: bool,
}

impl ScalingProfile {
    /// Strict stability at an arbitrary positive rational scaling, decided
    /// from the thresholds.
    pub fn stable_at(&self, k: &KParameter) -> bool {
        self.boundary || !self.per_curve.iter().any(|t| t.destabilizes_at(k))
    }
}

/// Thresholds over all negative curves plus the derived flags. Requires
/// ω ample for the model.
pub fn scaling_profile(
    c1: &DivisorClass,
    b: &DivisorClass,
    omega: &ScaledAmpleClass,
    model: &SurfaceModel,
) -> Result<ScalingProfile, Error> {
    model.require_ample(omega)?;
    let conjecture_dependent = model.am_status() == AmStatus::Conjectural;

    let a = c1 - b;
    let slope = omega.direction().pair(&a)?;
    if slope.is_zero() {
        return Ok(ScalingProfile {
            per_curve: Vec::new(),
            boundary: true,
            large_limit: true,
            all_scalings: true,
            k0: Some(Rational::zero()),
            conjecture_dependent,
        });
    }

    let per_curve: Vec<CurveThreshold> = model
        .negative_curves()
        .iter()
        .map(|curve| curve_threshold(c1, b, omega, curve))
        .collect::<Result<_, _>>()?;

    let large_limit = per_curve.iter().all(|t| !t.g_limit.is_negative());
    // A curve with a finite k_star fails on an unbounded upward ray of
    // scalings, which always contains integers ≥ 1; so the integer-k
    // quantifier reduces to the existence of such a threshold.
    let all_scalings = per_curve.iter().all(|t| t.k_star.is_none());

    let k0 = if large_limit {
        Some(Rational::zero())
    } else {
        per_curve
            .iter()
            .filter_map(|t| {
                let ks = t.k_star.as_ref()?;
                Some(match &t.k_heart {
                    Some(kh) if kh > ks => kh.clone(),
                    _ => ks.clone(),
                })
            })
            .min()
    };

    Ok(ScalingProfile {
        per_curve,
        boundary: false,
        large_limit,
        all_scalings,
        k0,
        conjecture_dependent,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImplicationCheck {
    pub name: &'static str,
    pub holds: bool,
}

/// Joint evaluation of the four stability predicates and the implication
/// chain relating them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub all_scalings: bool,
    pub large_limit: bool,
    pub dhym_semistable: bool,
    pub dhym_stable: bool,
    pub walls: Vec<DivisorClass>,
    pub implications: Vec<ImplicationCheck>,
    /// A violated implication on a model where the criterion is a theorem
    /// indicates an implementation fault.
    pub fault: bool,
    pub conjecture_dependent: bool,
}

impl ConsistencyReport {
    pub fn all_hold(&self) -> bool {
        self.implications.iter().all(|c| c.holds)
    }
}

/// Check the implication chain on one instance:
/// all_scalings ⇒ large_limit ⇒ dHYM-semistable; semistable ⇒ all_scalings
/// (a theorem on proven models); no walls ⇒ (semistable ⟺ stable).
pub fn theorem_consistency(
    c1: &DivisorClass,
    b: &DivisorClass,
    omega: &ScaledAmpleClass,
    model: &SurfaceModel,
) -> Result<ConsistencyReport, Error> {
    let profile = scaling_profile(c1, b, omega, model)?;
    let analysis = dhym::analyze(c1, b, omega, model)?;
    let walls = analysis.walls();
    let dhym_semistable = analysis.verdict.is_semistable();
    let dhym_stable = analysis.verdict.is_stable();

    let implications = vec![
        ImplicationCheck {
            name: "all_scalings => large_limit",
            holds: !profile.all_scalings || profile.large_limit,
        },
        ImplicationCheck {
            name: "large_limit => dhym_semistable",
            holds: !profile.large_limit || dhym_semistable,
        },
        ImplicationCheck {
            name: "dhym_semistable => all_scalings",
            holds: !dhym_semistable || profile.all_scalings,
        },
        ImplicationCheck {
            name: "no_walls => (dhym_semistable <=> dhym_stable)",
            holds: !walls.is_empty() || (dhym_semistable == dhym_stable),
        },
    ];

    let fault =
        model.am_status() == AmStatus::Proven && implications.iter().any(|c| !c.holds);

    Ok(ConsistencyReport {
        all_scalings: profile.all_scalings,
        large_limit: profile.large_limit,
        dhym_semistable,
        dhym_stable,
        walls,
        implications,
        fault,
        conjecture_dependent: profile.conjecture_dependent,
    })
}
