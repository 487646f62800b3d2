//! Chern characters, the central charge Z_{B,ω}, exact phase comparison,
//! and tilted-heart membership for line bundles.
//!
//! The charge of a character (r, c1, ch2) against (B, ω = √s·ω′) is
//!
//! ```text
//! Z = [-ch2 + c1.B - (r/2)(B² - ω²)]  +  i·√s·[c1.ω′ - r·B.ω′]
//! ```
//!
//! so the real part is rational and the imaginary part is a rational
//! multiple of √s. Phases in (0, π] are compared by the exact sign of the
//! cross product re₁·im₂ − im₁·re₂ — no transcendental functions, which is
//! what makes wall cases (exact phase equality) decidable.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::lattice::{rational_to_f64, DivisorClass, ScaledAmpleClass};
use crate::{rat, Rational};

/// A Chern character triple (rank, c1, ch2).
///
/// ch2 is stored as a standalone rational rather than recomputed from c1,
/// so torsion characters (rank 0) are first-class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernCharacter {
    rank: i64,
    c1: DivisorClass,
    ch2: Rational,
}

impl ChernCharacter {
    pub fn new(rank: i64, c1: DivisorClass, ch2: Rational) -> Self {
        Self { rank, c1, ch2 }
    }

    /// ch(L) = (1, c1, c1²/2).
    pub fn line_bundle(c1: DivisorClass) -> Self {
        let ch2 = c1.self_intersection() * rat(1, 2);
        Self { rank: 1, c1, ch2 }
    }

    pub fn rank(&self) -> i64 {
        self.rank
    }

    pub fn c1(&self) -> &DivisorClass {
        &self.c1
    }

    pub fn ch2(&self) -> &Rational {
        &self.ch2
    }

    /// Multiplication by exp(D): (r, c1 + rD, ch2 + c1.D + r·D²/2).
    pub fn twist(&self, class: &DivisorClass) -> Result<Self, Error> {
        let cross = self.c1.pair(class)?;
        let r = Rational::from_integer(self.rank.into());
        let ch2 = &self.ch2 + cross + &r * class.self_intersection() * rat(1, 2);
        Ok(Self {
            rank: self.rank,
            c1: &self.c1 + &class.scaled(&r),
            ch2,
        })
    }

    /// Character of L|_C for a line bundle L, via the restriction sequence
    /// 0 → L(−C) → L → L|_C → 0: ch(L|_C) = ch(L) − ch(L(−C))
    /// = (0, C, c1.C − C²/2).
    pub fn restriction(&self, curve: &DivisorClass) -> Result<Self, Error> {
        if self.rank != 1 {
            return Err(Error::NotLineBundle(self.rank));
        }
        let ch2 = self.c1.pair(curve)? - curve.self_intersection() * rat(1, 2);
        Ok(Self {
            rank: 0,
            c1: curve.clone(),
            ch2,
        })
    }

    /// Componentwise sum (same lattice required).
    pub fn sum(&self, other: &Self) -> Result<Self, Error> {
        self.c1.ensure_same_lattice(&other.c1)?;
        Ok(Self {
            rank: self.rank + other.rank,
            c1: &self.c1 + &other.c1,
            ch2: &self.ch2 + &other.ch2,
        })
    }
}

/// Value of the central charge: re + i·im_coeff·√(scale_sq).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralChargeValue {
    re: Rational,
    im_coeff: Rational,
    scale_sq: Rational,
}

impl CentralChargeValue {
    pub fn new(re: Rational, im_coeff: Rational, scale_sq: Rational) -> Result<Self, Error> {
        if !scale_sq.is_positive() {
            return Err(Error::NonPositiveScale(scale_sq.to_string()));
        }
        Ok(Self {
            re,
            im_coeff,
            scale_sq,
        })
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn im_coeff(&self) -> &Rational {
        &self.im_coeff
    }

    pub fn scale_sq(&self) -> &Rational {
        &self.scale_sq
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im_coeff.is_zero()
    }

    /// Z(E[1]) = −Z(E).
    pub fn shifted(&self) -> Self {
        Self {
            re: -&self.re,
            im_coeff: -&self.im_coeff,
            scale_sq: self.scale_sq.clone(),
        }
    }

    /// Arg ∈ (0, π] ⟺ Im > 0, or Im = 0 and Re < 0.
    pub fn in_phase_domain(&self) -> bool {
        self.im_coeff.is_positive() || (self.im_coeff.is_zero() && self.re.is_negative())
    }

    /// Advisory floating-point rendering (re, im); never used for verdicts.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        (
            rational_to_f64(&self.re),
            rational_to_f64(&self.im_coeff) * rational_to_f64(&self.scale_sq).sqrt(),
        )
    }
}

impl fmt::Display for CentralChargeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + ({})*sqrt({})*i", self.re, self.im_coeff, self.scale_sq)
    }
}

/// Order of Arg Z₁ against Arg Z₂ within (0, π].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseOrder {
    Less,
    Equal,
    Greater,
}

/// Where a line bundle sits relative to the tilted heart A_{B,ω}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeartPosition {
    /// ω.(c1−B) > 0: L itself is in the heart.
    InHeart,
    /// ω.(c1−B) < 0: the shift L[1] is in the heart.
    ShiftInHeart,
    /// ω.(c1−B) = 0: L[1] is in the heart and L is automatically stable.
    ShiftBoundary,
}

/// Z_{B,ω}(E) = −∫ e^{−(B+iω)} ch(E), expanded in closed form.
///
/// For a line bundle this is ½(ω² − (c1−B)²) + i·ω.(c1−B); the generic
/// expansion below agrees with that identity (covered by tests).
pub fn central_charge(
    ch: &ChernCharacter,
    b: &DivisorClass,
    omega: &ScaledAmpleClass,
) -> Result<CentralChargeValue, Error> {
    ch.c1().ensure_same_lattice(b)?;
    ch.c1().ensure_same_lattice(omega.direction())?;
    let r = Rational::from_integer(ch.rank().into());
    let re = -ch.ch2() + ch.c1().pair(b)?
        - &r * rat(1, 2) * (b.self_intersection() - omega.square());
    let im_coeff = ch.c1().pair(omega.direction())? - &r * b.pair(omega.direction())?;
    CentralChargeValue::new(re, im_coeff, omega.scale_sq().clone())
}

/// Compare Arg Z₁ with Arg Z₂, both required to lie in (0, π].
///
/// Exact: the order is the sign of re₁·im₂ − im₁·re₂ (positive ⇒ Less).
pub fn phase_compare(
    z1: &CentralChargeValue,
    z2: &CentralChargeValue,
) -> Result<PhaseOrder, Error> {
    if z1.scale_sq() != z2.scale_sq() {
        return Err(Error::ScaleMismatch {
            left: z1.scale_sq().to_string(),
            right: z2.scale_sq().to_string(),
        });
    }
    for z in [z1, z2] {
        if z.is_zero() {
            return Err(Error::PhaseDomain("charge is zero".to_string()));
        }
        if !z.in_phase_domain() {
            return Err(Error::PhaseDomain(format!("charge {z} has no phase in (0, pi]")));
        }
    }
    let cross = z1.re() * z2.im_coeff() - z1.im_coeff() * z2.re();
    Ok(match cross.cmp(&Rational::zero()) {
        Ordering::Greater => PhaseOrder::Less,
        Ordering::Equal => PhaseOrder::Equal,
        Ordering::Less => PhaseOrder::Greater,
    })
}

/// Heart membership of L by the sign of ω.(c1(L) − B).
pub fn heart_position(
    c1: &DivisorClass,
    b: &DivisorClass,
    omega: &ScaledAmpleClass,
) -> Result<HeartPosition, Error> {
    c1.ensure_same_lattice(b)?;
    let slope = omega.pair_class(&(c1 - b))?;
    Ok(match slope.sign() {
        Ordering::Greater => HeartPosition::InHeart,
        Ordering::Less => HeartPosition::ShiftInHeart,
        Ordering::Equal => HeartPosition::ShiftBoundary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::IntersectionLattice;
    use num_traits::One;
    use std::sync::Arc;

    fn setup() -> (
        Arc<IntersectionLattice>,
        ScaledAmpleClass,
        DivisorClass,
    ) {
        let lat = IntersectionLattice::from_int_gram(&[&[1, 0], &[0, -1]], &["H", "E"]).unwrap();
        let omega = ScaledAmpleClass::new(
            lat.class_from_ints(&[2, -1]).unwrap(),
            rat(1, 3),
        )
        .unwrap();
        let zero = lat.zero_class();
        (lat, omega, zero)
    }

    #[test]
    fn line_bundle_characters() {
        let (lat, _, _) = setup();
        let trivial = ChernCharacter::line_bundle(lat.zero_class());
        assert_eq!(trivial.rank(), 1);
        assert!(trivial.ch2().is_zero());

        let two_h = ChernCharacter::line_bundle(lat.class_from_ints(&[2, 0]).unwrap());
        assert_eq!(two_h.ch2(), &Rational::from_integer(2.into()));

        let h = ChernCharacter::line_bundle(lat.basis_class(0));
        assert_eq!(h.ch2(), &rat(1, 2));
    }

    #[test]
    fn twist_examples() {
        let (lat, _, _) = setup();
        let two_h = ChernCharacter::line_bundle(lat.class_from_ints(&[2, 0]).unwrap());
        let minus_e = -&lat.basis_class(1);
        let twisted = two_h.twist(&minus_e).unwrap();
        assert_eq!(twisted.c1(), &lat.class_from_ints(&[2, -1]).unwrap());
        assert_eq!(twisted.ch2(), &rat(3, 2));
        // Twisting is multiplication by exp, so it matches the direct character.
        assert_eq!(
            twisted,
            ChernCharacter::line_bundle(lat.class_from_ints(&[2, -1]).unwrap())
        );

        let unchanged = two_h.twist(&lat.zero_class()).unwrap();
        assert_eq!(unchanged, two_h);

        let trivial = ChernCharacter::line_bundle(lat.zero_class());
        let h = lat.basis_class(0);
        let back = trivial.twist(&h).unwrap().twist(&(-&h)).unwrap();
        assert_eq!(back, trivial);
    }

    #[test]
    fn restriction_examples() {
        let (lat, _, _) = setup();
        let e = lat.basis_class(1);

        let trivial = ChernCharacter::line_bundle(lat.zero_class());
        let t = trivial.restriction(&e).unwrap();
        assert_eq!(t.rank(), 0);
        assert_eq!(t.c1(), &e);
        assert_eq!(t.ch2(), &rat(1, 2));

        let two_h = ChernCharacter::line_bundle(lat.class_from_ints(&[2, 0]).unwrap());
        let t = two_h.restriction(&e).unwrap();
        assert_eq!(t.ch2(), &rat(1, 2));

        // SES additivity: ch(L(−C)) + ch(L|_C) = ch(L).
        let down = two_h.twist(&(-&e)).unwrap();
        assert_eq!(down.sum(&t).unwrap(), two_h);

        // Torsion characters cannot be restricted again.
        assert!(matches!(t.restriction(&e), Err(Error::NotLineBundle(0))));
    }

    #[test]
    fn central_charge_examples() {
        let (lat, omega, zero) = setup();
        let two_h = ChernCharacter::line_bundle(lat.class_from_ints(&[2, 0]).unwrap());
        let z = central_charge(&two_h, &zero, &omega).unwrap();
        assert_eq!(z.re(), &rat(-3, 2));
        assert_eq!(z.im_coeff(), &Rational::from_integer(4.into()));

        let torsion = ChernCharacter::new(0, lat.basis_class(1), rat(1, 2));
        let z = central_charge(&torsion, &zero, &omega).unwrap();
        assert_eq!(z.re(), &rat(-1, 2));
        assert_eq!(z.im_coeff(), &Rational::one());

        // B = c1 puts the charge on the imaginary axis boundary: im = 0.
        let c1 = lat.class_from_ints(&[3, -2]).unwrap();
        let line = ChernCharacter::line_bundle(c1.clone());
        let z = central_charge(&line, &c1, &omega).unwrap();
        assert!(z.im_coeff().is_zero());
    }

    #[test]
    fn shift_is_negation() {
        let z = CentralChargeValue::new(rat(-3, 2), rat(4, 1), rat(1, 3)).unwrap();
        let s = z.shifted();
        assert_eq!(s.re(), &rat(3, 2));
        assert_eq!(s.im_coeff(), &rat(-4, 1));
        assert_eq!(s.shifted(), z);
        assert!(!z.shifted().in_phase_domain());
    }

    #[test]
    fn phase_compare_basics() {
        let s = Rational::one();
        let z_i = CentralChargeValue::new(rat(0, 1), rat(1, 1), s.clone()).unwrap();
        let z_neg = CentralChargeValue::new(rat(-1, 1), rat(0, 1), s.clone()).unwrap();
        assert_eq!(phase_compare(&z_i, &z_neg).unwrap(), PhaseOrder::Less);
        assert_eq!(phase_compare(&z_neg, &z_i).unwrap(), PhaseOrder::Greater);

        let z1 = CentralChargeValue::new(rat(-1, 1), rat(2, 1), s.clone()).unwrap();
        let z2 = CentralChargeValue::new(rat(-2, 1), rat(4, 1), s.clone()).unwrap();
        assert_eq!(phase_compare(&z1, &z2).unwrap(), PhaseOrder::Equal);

        let zero = CentralChargeValue::new(rat(0, 1), rat(0, 1), s.clone()).unwrap();
        assert!(matches!(
            phase_compare(&zero, &z_i),
            Err(Error::PhaseDomain(_))
        ));
        let lower = CentralChargeValue::new(rat(1, 1), rat(-1, 1), s.clone()).unwrap();
        assert!(matches!(
            phase_compare(&lower, &z_i),
            Err(Error::PhaseDomain(_))
        ));
        let positive_real = CentralChargeValue::new(rat(1, 1), rat(0, 1), s).unwrap();
        assert!(matches!(
            phase_compare(&positive_real, &z_i),
            Err(Error::PhaseDomain(_))
        ));

        let other_scale = CentralChargeValue::new(rat(0, 1), rat(1, 1), rat(1, 3)).unwrap();
        assert!(matches!(
            phase_compare(&z_i, &other_scale),
            Err(Error::ScaleMismatch { .. })
        ));
    }

    #[test]
    fn phase_compare_destabilizer_instance() {
        // L = 2H, C = E, B = 0 at k = 1: Arg Z(L(−C)) < Arg Z(L), matching
        // the positive sign of the finite-scaling quantity there.
        let (lat, omega, zero) = setup();
        let whole = ChernCharacter::line_bundle(lat.class_from_ints(&[2, 0]).unwrap());
        let sub = whole.twist(&(-&lat.basis_class(1))).unwrap();
        let z_whole = central_charge(&whole, &zero, &omega).unwrap();
        let z_sub = central_charge(&sub, &zero, &omega).unwrap();
        assert_eq!(phase_compare(&z_sub, &z_whole).unwrap(), PhaseOrder::Less);
    }

    #[test]
    fn heart_positions() {
        let (lat, omega, zero) = setup();
        let two_h = lat.class_from_ints(&[2, 0]).unwrap();
        assert_eq!(
            heart_position(&two_h, &zero, &omega).unwrap(),
            HeartPosition::InHeart
        );
        assert_eq!(
            heart_position(&two_h, &two_h, &omega).unwrap(),
            HeartPosition::ShiftBoundary
        );
        let neg_h = lat.class_from_ints(&[-1, 0]).unwrap();
        assert_eq!(
            heart_position(&neg_h, &zero, &omega).unwrap(),
            HeartPosition::ShiftInHeart
        );
    }
}
