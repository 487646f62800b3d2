//! The twisted dHYM numerical criterion: per-curve quantity, verdicts, and
//! wall detection.
//!
//! With a = c1(L) − B, the criterion quantity for a curve class C is
//!
//! ```text
//! (C.ω)(ω² − a²) + 2(C.a)(ω.a)
//! ```
//!
//! which is √s times the rational coefficient
//!
//! ```text
//! ĝ = (C.ω′)(ω² − a²) + 2(C.a)(ω′.a)
//! ```
//!
//! computed here. ĝ has the same sign as Im(Z_C/Z_X) (they differ by the
//! positive factor 2|Z_X|²/√s), so signs of ĝ decide existence: a solution
//! exists iff ĝ > 0 on every curve, and the quantity is linear in C, so
//! quantifying over the effective-cone generators is exact for ≥ 0 and
//! sound for > 0.

use crate::error::Error;
use crate::lattice::{DivisorClass, ScaledAmpleClass, ScaledRational};
use crate::surface::SurfaceModel;
use crate::rat;

/// Verdict of the criterion over a model's effective generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DhymVerdict {
    /// ĝ > 0 on every generator.
    Stable,
    /// ĝ ≥ 0 everywhere with at least one exact zero; the zeroes are the
    /// walls the parameters sit on.
    StrictlySemistable { walls: Vec<DivisorClass> },
    /// Some ĝ < 0; the witness is the first violating generator in
    /// declared order.
    Unstable { witness: DivisorClass },
}

impl DhymVerdict {
    pub fn is_semistable(&self) -> bool {
        !matches!(self, DhymVerdict::Unstable { .. })
    }

    pub fn is_stable(&self) -> bool {
        matches!(self, DhymVerdict::Stable)
    }
}

/// Verdict plus the per-generator quantity table, in declared order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DhymAnalysis {
    pub verdict: DhymVerdict,
    pub table: Vec<(DivisorClass, ScaledRational)>,
    /// Mirrors the model flag: when false, strict stability may be
    /// misreported if the declared generators omit extremal classes.
    pub generators_complete: bool,
}

impl DhymAnalysis {
    pub fn walls(&self) -> Vec<DivisorClass> {
        self.table
            .iter()
            .filter(|(_, q)| q.is_zero())
            .map(|(c, _)| c.clone())
            .collect()
    }
}

/// The criterion coefficient ĝ for one curve class.
pub fn quantity(
    c1: &DivisorClass,
    b: &DivisorClass,
    omega: &ScaledAmpleClass,
    curve: &DivisorClass,
) -> Result<ScaledRational, Error> {
    c1.ensure_same_lattice(b)?;
    c1.ensure_same_lattice(curve)?;
    let a = c1 - b;
    let direction = omega.direction();
    let coeff = curve.pair(direction)? * (omega.square() - a.self_intersection())
        + rat(2, 1) * curve.pair(&a)? * direction.pair(&a)?;
    ScaledRational::new(coeff, omega.scale_sq().clone())
}

/// Evaluate the criterion over every effective generator of the model.
///
/// Requires ω ample for the model (the criterion presumes a Kähler class);
/// rejects non-ample ω with the failing witness.
pub fn analyze(
    c1: &DivisorClass,
    b: &DivisorClass,
    omega: &ScaledAmpleClass,
    model: &SurfaceModel,
) -> Result<DhymAnalysis, Error> {
    model.require_ample(omega)?;
    let mut table = Vec::with_capacity(model.effective_generators().len());
    for generator in model.effective_generators() {
        let q = quantity(c1, b, omega, generator)?;
        table.push((generator.clone(), q));
    }

    let witness = table.iter().find(|(_, q)| q.is_negative());
    let verdict = if let Some((c, _)) = witness {
        DhymVerdict::Unstable { witness: c.clone() }
    } else {
        let walls: Vec<DivisorClass> = table
            .iter()
            .filter(|(_, q)| q.is_zero())
            .map(|(c, _)| c.clone())
            .collect();
        if walls.is_empty() {
            DhymVerdict::Stable
        } else {
            DhymVerdict::StrictlySemistable { walls }
        }
    };

    Ok(DhymAnalysis {
        verdict,
        table,
        generators_complete: model.generators_complete(),
    })
}

/// Generators on which the quantity vanishes exactly. Empty ⟺ the pair
/// (B, ω) is generic for this c1 relative to the declared generators.
pub fn walls(
    c1: &DivisorClass,
    b: &DivisorClass,
    omega: &ScaledAmpleClass,
    model: &SurfaceModel,
) -> Result<Vec<DivisorClass>, Error> {
    Ok(analyze(c1, b, omega, model)?.walls())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::AmpleWitness;
    use crate::surface::builtin;
    use crate::Rational;

    fn setup() -> (SurfaceModel, ScaledAmpleClass) {
        let model = builtin("blowup_p2").unwrap();
        let omega = ScaledAmpleClass::new(
            model.lattice().class_from_ints(&[2, -1]).unwrap(),
            rat(1, 3),
        )
        .unwrap();
        (model, omega)
    }

    #[test]
    fn quantity_destabilized_instance() {
        let (model, omega) = setup();
        let lat = model.lattice();
        let c1 = lat.class_from_ints(&[2, 0]).unwrap();
        let b = lat.zero_class();
        let e = lat.basis_class(1);
        let q = quantity(&c1, &b, &omega, &e).unwrap();
        assert_eq!(q.coeff(), &Rational::from_integer((-3).into()));
    }

    #[test]
    fn quantity_wall_instance() {
        let (model, omega) = setup();
        let lat = model.lattice();
        let c1 = lat.basis_class(0);
        let b = lat.zero_class();
        let e = lat.basis_class(1);
        let q = quantity(&c1, &b, &omega, &e).unwrap();
        assert!(q.is_zero());
    }

    #[test]
    fn quantity_is_positive_when_b_equals_c1() {
        let (model, omega) = setup();
        let lat = model.lattice();
        let c1 = lat.class_from_ints(&[3, -1]).unwrap();
        for generator in model.effective_generators() {
            let q = quantity(&c1, &c1, &omega, generator).unwrap();
            let expected = generator.pair(omega.direction()).unwrap() * omega.square();
            assert_eq!(q.coeff(), &expected);
            assert!(q.is_positive());
        }
    }

    #[test]
    fn verdicts_on_the_two_worked_instances() {
        let (model, omega) = setup();
        let lat = model.lattice();
        let b = lat.zero_class();
        let e = lat.basis_class(1);

        let unstable = analyze(&lat.class_from_ints(&[2, 0]).unwrap(), &b, &omega, &model).unwrap();
        assert_eq!(unstable.verdict, DhymVerdict::Unstable { witness: e.clone() });
        assert!(unstable.walls().is_empty());
        // The other generator pairs strictly positively.
        assert_eq!(
            unstable.table[1].1.coeff(),
            &Rational::from_integer(13.into())
        );

        let wall = analyze(&lat.basis_class(0), &b, &omega, &model).unwrap();
        assert_eq!(
            wall.verdict,
            DhymVerdict::StrictlySemistable { walls: vec![e.clone()] }
        );
        assert_eq!(wall.walls(), vec![e]);

        let c1 = lat.class_from_ints(&[2, 0]).unwrap();
        let boundary = analyze(&c1, &c1, &omega, &model).unwrap();
        assert_eq!(boundary.verdict, DhymVerdict::Stable);
        assert!(boundary.walls().is_empty());
    }

    #[test]
    fn non_ample_omega_is_rejected_with_witness() {
        let (model, _) = setup();
        let lat = model.lattice();
        let c1 = lat.basis_class(0);
        let b = lat.zero_class();
        let bad = ScaledAmpleClass::new(lat.class_from_ints(&[1, -2]).unwrap(), rat(1, 1)).unwrap();
        match analyze(&c1, &b, &bad, &model) {
            Err(Error::NotAmple(AmpleWitness::NegativePairing { generator, .. })) => {
                assert_eq!(generator, lat.class_from_ints(&[1, -1]).unwrap());
            }
            other => panic!("expected non-ample rejection, got {other:?}"),
        }
    }
}
