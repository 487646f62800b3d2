//! Output rendering. Machine mode is a fixed `key=value` grammar with
//! rationals as `p/q`, class coefficient vectors comma-joined, class lists
//! semicolon-joined, and advisory floats at 12 significant digits. Human
//! mode is free-form but shows the same values.

use stabledge_core::charge::HeartPosition;
use stabledge_core::dhym::DhymVerdict;
use stabledge_core::lattice::{DivisorClass, ScaledAmpleClass, ScaledRational};
use stabledge_core::scaling::{DestabCheck, ScalingVerdict, Strictness};

use crate::query::ResolvedQuery;

/// Advisory 12-significant-digit rendering; never used for verdicts.
pub fn float12(value: f64) -> String {
    format!("{value:.11e}")
}

pub fn class_list(classes: &[DivisorClass]) -> String {
    classes
        .iter()
        .map(DivisorClass::machine_coeffs)
        .collect::<Vec<_>>()
        .join(";")
}

pub fn omega_human(omega: &ScaledAmpleClass) -> String {
    format!("sqrt({})*({})", omega.scale_sq(), omega.direction())
}

pub fn scaled_human(q: &ScaledRational) -> String {
    format!("{q}  (~ {})", float12(q.to_f64()))
}

pub fn dhym_code(verdict: &DhymVerdict) -> &'static str {
    match verdict {
        DhymVerdict::Stable => "stable",
        DhymVerdict::StrictlySemistable { .. } => "semistable",
        DhymVerdict::Unstable { .. } => "unstable",
    }
}

pub fn dhym_exit(verdict: &DhymVerdict) -> i32 {
    match verdict {
        DhymVerdict::Stable => 0,
        DhymVerdict::StrictlySemistable { .. } => 10,
        DhymVerdict::Unstable { .. } => 11,
    }
}

pub fn scaling_code(verdict: &ScalingVerdict) -> &'static str {
    match verdict {
        ScalingVerdict::Stable => "stable",
        ScalingVerdict::StrictlySemistable(_) => "semistable",
        ScalingVerdict::Unstable(_) => "unstable",
        ScalingVerdict::BoundaryStable => "boundary-stable",
    }
}

pub fn check_code(check: &DestabCheck) -> &'static str {
    match check {
        DestabCheck::BoundaryStable => "boundary-stable",
        DestabCheck::NoSubobject => "no-subobject",
        DestabCheck::PhaseStable => "phase-stable",
        DestabCheck::Destabilized(Strictness::Equal) => "destabilized-equal",
        DestabCheck::Destabilized(Strictness::Strict) => "destabilized-strict",
    }
}

pub fn heart_code(position: HeartPosition) -> &'static str {
    match position {
        HeartPosition::InHeart => "in",
        HeartPosition::ShiftInHeart => "shift",
        HeartPosition::ShiftBoundary => "boundary",
    }
}

/// The common machine-mode header identifying the query.
pub fn machine_header(query: &ResolvedQuery) {
    println!("model={}", query.model.name());
    println!("c1={}", query.c1.machine_coeffs());
    println!("B={}", query.b.machine_coeffs());
    println!("omega={}", query.omega.direction().machine_coeffs());
    println!("scale_sq={}", query.omega.scale_sq());
}
