//! Exact intersection-form arithmetic on the Néron–Severi lattice.
//!
//! Divisor classes are rational coordinate vectors in a fixed basis; the
//! pairing is a symmetric bilinear form of signature (1, rank−1). Ample
//! classes of the form √s·ω′ (rational s > 0, rational direction ω′) are
//! first-class so that every sign test stays in exact rational arithmetic:
//! a quantity odd in ω is a rational multiple of √s, a quantity even in ω
//! is rational outright.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::Rational;

/// A rank-ρ lattice with a rational Gram matrix for the intersection pairing.
///
/// Construction only checks shape; `validate` reports on the structural
/// invariants (symmetry, nondegeneracy, Hodge signature (1, ρ−1)) so that
/// bad lattices can be constructed and then rejected with a precise report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionLattice {
    rank: usize,
    gram: Vec<Vec<Rational>>,
    basis_labels: Vec<String>,
}

impl IntersectionLattice {
    pub fn new(
        gram: Vec<Vec<Rational>>,
        basis_labels: Vec<String>,
    ) -> Result<Arc<Self>, Error> {
        let rank = gram.len();
        if rank == 0 {
            return Err(Error::MalformedGram {
                row: 0,
                found: 0,
                rank: 0,
            });
        }
        for (row, r) in gram.iter().enumerate() {
            if r.len() != rank {
                return Err(Error::MalformedGram {
                    row,
                    found: r.len(),
                    rank,
                });
            }
        }
        if basis_labels.len() != rank {
            return Err(Error::RankMismatch {
                rank,
                found: basis_labels.len(),
            });
        }
        Ok(Arc::new(Self {
            rank,
            gram,
            basis_labels,
        }))
    }

    /// Convenience constructor from integer Gram entries.
    pub fn from_int_gram(gram: &[&[i64]], basis_labels: &[&str]) -> Result<Arc<Self>, Error> {
        let gram = gram
            .iter()
            .map(|row| row.iter().map(|&v| Rational::from_integer(v.into())).collect())
            .collect();
        let labels = basis_labels.iter().map(|s| s.to_string()).collect();
        Self::new(gram, labels)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gram(&self) -> &[Vec<Rational>] {
        &self.gram
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis_labels
    }

    /// The i-th basis class (coefficient vector e_i).
    pub fn basis_class(self: &Arc<Self>, i: usize) -> DivisorClass {
        let mut coeffs = vec![Rational::zero(); self.rank];
        coeffs[i] = Rational::one();
        DivisorClass {
            lattice: Arc::clone(self),
            coeffs,
        }
    }

    pub fn zero_class(self: &Arc<Self>) -> DivisorClass {
        DivisorClass {
            lattice: Arc::clone(self),
            coeffs: vec![Rational::zero(); self.rank],
        }
    }

    pub fn class(self: &Arc<Self>, coeffs: Vec<Rational>) -> Result<DivisorClass, Error> {
        if coeffs.len() != self.rank {
            return Err(Error::RankMismatch {
                rank: self.rank,
                found: coeffs.len(),
            });
        }
        Ok(DivisorClass {
            lattice: Arc::clone(self),
            coeffs,
        })
    }

    pub fn class_from_ints(self: &Arc<Self>, coeffs: &[i64]) -> Result<DivisorClass, Error> {
        self.class(
            coeffs
                .iter()
                .map(|&v| Rational::from_integer(v.into()))
                .collect(),
        )
    }

    /// Structural validation: symmetry, nondegeneracy, signature (1, rank−1).
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();

        let mut asym = None;
        'outer: for i in 0..self.rank {
            for j in (i + 1)..self.rank {
                if self.gram[i][j] != self.gram[j][i] {
                    asym = Some((i, j));
                    break 'outer;
                }
            }
        }
        match asym {
            None => report.pass("gram symmetric"),
            Some((i, j)) => report.fail(
                "gram symmetric",
                format!("entries ({i},{j}) and ({j},{i}) differ"),
            ),
        }

        let det = determinant(&self.gram);
        if det.is_zero() {
            report.fail("gram nondegenerate", "determinant is zero".to_string());
        } else {
            report.pass("gram nondegenerate");
        }

        // Signature of the symmetric part, by congruent diagonalization over Q.
        let (pos, neg, zero) = inertia(&self.gram);
        if pos == 1 && zero == 0 && neg == self.rank - 1 {
            report.pass("gram signature (1, rank-1)");
        } else {
            report.fail(
                "gram signature (1, rank-1)",
                format!("found inertia ({pos}+, {neg}-, {zero} zero)"),
            );
        }

        report
    }

    pub(crate) fn compatible(&self, other: &Self) -> bool {
        std::ptr::eq(self, other) || (self.rank == other.rank && self.gram == other.gram)
    }

    pub(crate) fn describe(&self) -> String {
        format!("rank-{} lattice ({})", self.rank, self.basis_labels.join(", "))
    }
}

/// Exact determinant by rational Gaussian elimination.
fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let pivot = match (col..n).find(|&r| !a[r][col].is_zero()) {
            Some(p) => p,
            None => return Rational::zero(),
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= &a[col][col];
        for row in (col + 1)..n {
            if a[row][col].is_zero() {
                continue;
            }
            let f = &a[row][col] / &a[col][col];
            for k in col..n {
                let sub = &f * &a[col][k];
                a[row][k] -= sub;
            }
        }
    }
    det
}

/// Inertia (n₊, n₋, n₀) of the symmetric part of `m`, computed exactly by
/// symmetric Gaussian congruence (Sylvester's law of inertia).
fn inertia(m: &[Vec<Rational>]) -> (usize, usize, usize) {
    let n = m.len();
    let half = Rational::new(1.into(), 2.into());
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| (&m[i][j] + &m[j][i]) * &half).collect())
        .collect();

    for i in 0..n {
        if a[i][i].is_zero() {
            if let Some(j) = ((i + 1)..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(i, j);
                for row in a.iter_mut() {
                    row.swap(i, j);
                }
            } else if let Some(j) = ((i + 1)..n).find(|&j| !a[i][j].is_zero()) {
                // Both diagonals vanish; adding row+column j to i makes
                // a[i][i] = 2·a[i][j] ≠ 0.
                for k in 0..n {
                    let add = a[j][k].clone();
                    a[i][k] += add;
                }
                for row in a.iter_mut() {
                    let add = row[j].clone();
                    row[i] += add;
                }
            } else {
                continue; // trailing row/column is identically zero
            }
        }
        let pivot = a[i][i].clone();
        for j in (i + 1)..n {
            if a[j][i].is_zero() {
                continue;
            }
            let f = &a[j][i] / &pivot;
            for k in 0..n {
                let sub = &f * &a[i][k];
                a[j][k] -= sub;
            }
            for row in a.iter_mut() {
                let sub = &f * &row[i];
                row[j] -= sub;
            }
        }
    }

    let mut sig = (0usize, 0usize, 0usize);
    for i in 0..n {
        match a[i][i].cmp(&Rational::zero()) {
            Ordering::Greater => sig.0 += 1,
            Ordering::Less => sig.1 += 1,
            Ordering::Equal => sig.2 += 1,
        }
    }
    sig
}

/// A divisor class: a rational coefficient vector on a fixed lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorClass {
    lattice: Arc<IntersectionLattice>,
    coeffs: Vec<Rational>,
}

impl DivisorClass {
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn lattice(&self) -> &Arc<IntersectionLattice> {
        &self.lattice
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub(crate) fn ensure_same_lattice(&self, other: &DivisorClass) -> Result<(), Error> {
        if self.lattice.compatible(&other.lattice) {
            Ok(())
        } else {
            Err(Error::LatticeMismatch {
                left: self.lattice.describe(),
                right: other.lattice.describe(),
            })
        }
    }

    /// Intersection product D₁.D₂ = coeffs(D₁)ᵀ · gram · coeffs(D₂).
    pub fn pair(&self, other: &DivisorClass) -> Result<Rational, Error> {
        self.ensure_same_lattice(other)?;
        let gram = self.lattice.gram();
        let mut acc = Rational::zero();
        for (i, ci) in self.coeffs.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for (j, cj) in other.coeffs.iter().enumerate() {
                if cj.is_zero() {
                    continue;
                }
                acc += ci * cj * &gram[i][j];
            }
        }
        Ok(acc)
    }

    /// D.D — never fails, the lattice is shared trivially.
    pub fn self_intersection(&self) -> Rational {
        self.pair(self).expect("same lattice")
    }

    pub fn scaled(&self, factor: &Rational) -> DivisorClass {
        DivisorClass {
            lattice: Arc::clone(&self.lattice),
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Coefficients in machine form, e.g. `2,-1` or `1/2,0`.
    pub fn machine_coeffs(&self) -> String {
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl std::ops::Add for &DivisorClass {
    type Output = DivisorClass;
    /// Panics if the operands live on different lattices; use `pair`-style
    /// fallible APIs at trust boundaries.
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        self.ensure_same_lattice(rhs).expect("lattice mismatch in +");
        DivisorClass {
            lattice: Arc::clone(&self.lattice),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl std::ops::Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        self.ensure_same_lattice(rhs).expect("lattice mismatch in -");
        DivisorClass {
            lattice: Arc::clone(&self.lattice),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl std::ops::Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass {
            lattice: Arc::clone(&self.lattice),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let labels = self.lattice.basis_labels();
        let mut first = true;
        for (c, label) in self.coeffs.iter().zip(labels) {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if mag.is_one() {
                write!(f, "{label}")?;
            } else if mag.is_integer() {
                write!(f, "{mag}{label}")?;
            } else {
                write!(f, "({mag}){label}")?;
            }
        }
        Ok(())
    }
}

/// A rational multiple of √s: value = coeff·√(scale_sq).
///
/// Since √s > 0, the sign of the value is the sign of the coefficient and
/// comparisons between values with equal scale reduce to comparisons of
/// coefficients — no irrational arithmetic ever happens.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledRational {
    coeff: Rational,
    scale_sq: Rational,
}

impl ScaledRational {
    pub fn new(coeff: Rational, scale_sq: Rational) -> Result<Self, Error> {
        if !scale_sq.is_positive() {
            return Err(Error::NonPositiveScale(scale_sq.to_string()));
        }
        Ok(Self { coeff, scale_sq })
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn scale_sq(&self) -> &Rational {
        &self.scale_sq
    }

    pub fn sign(&self) -> Ordering {
        self.coeff.cmp(&Rational::zero())
    }

    pub fn is_positive(&self) -> bool {
        self.coeff.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.coeff.is_negative()
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn cmp_same_scale(&self, other: &ScaledRational) -> Result<Ordering, Error> {
        if self.scale_sq != other.scale_sq {
            return Err(Error::ScaleMismatch {
                left: self.scale_sq.to_string(),
                right: other.scale_sq.to_string(),
            });
        }
        Ok(self.coeff.cmp(&other.coeff))
    }

    /// Advisory floating-point value; never used for verdicts.
    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.coeff) * rational_to_f64(&self.scale_sq).sqrt()
    }
}

impl fmt::Display for ScaledRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.scale_sq.is_one() {
            write!(f, "{}", self.coeff)
        } else {
            write!(f, "{}*sqrt({})", self.coeff, self.scale_sq)
        }
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64()
        .unwrap_or_else(|| r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN))
}

/// An ample class ω = √s·ω′ with rational direction ω′ and square-scale s > 0.
///
/// Construction enforces s > 0 only; positivity of ω² and against the
/// effective cone is the job of [`check_ample`], so degenerate directions
/// remain representable and get rejected with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledAmpleClass {
    direction: DivisorClass,
    scale_sq: Rational,
}

impl ScaledAmpleClass {
    pub fn new(direction: DivisorClass, scale_sq: Rational) -> Result<Self, Error> {
        if !scale_sq.is_positive() {
            return Err(Error::NonPositiveScale(scale_sq.to_string()));
        }
        Ok(Self {
            direction,
            scale_sq,
        })
    }

    pub fn direction(&self) -> &DivisorClass {
        &self.direction
    }

    pub fn scale_sq(&self) -> &Rational {
        &self.scale_sq
    }

    pub fn lattice(&self) -> &Arc<IntersectionLattice> {
        self.direction.lattice()
    }

    /// ω² = s·(ω′.ω′), a plain rational (even in ω).
    pub fn square(&self) -> Rational {
        &self.scale_sq * self.direction.self_intersection()
    }

    /// ω.D = √s·(ω′.D), returned as a scaled rational (odd in ω).
    pub fn pair_class(&self, class: &DivisorClass) -> Result<ScaledRational, Error> {
        let coeff = self.direction.pair(class)?;
        ScaledRational::new(coeff, self.scale_sq.clone())
    }

    /// k·ω, i.e. direction k·ω′ with the same square-scale.
    pub fn scaled_by(&self, factor: &Rational) -> ScaledAmpleClass {
        ScaledAmpleClass {
            direction: self.direction.scaled(factor),
            scale_sq: self.scale_sq.clone(),
        }
    }
}

/// Why a class failed the ampleness test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AmpleWitness {
    /// ω.G < 0 for the recorded effective generator (coefficient of √s).
    NegativePairing {
        generator: DivisorClass,
        coeff: Rational,
    },
    /// ω² ≤ 0.
    NonPositiveSquare { square: Rational },
    /// ω.G = 0: ω sits on the boundary of the nef cone.
    ZeroPairing { generator: DivisorClass },
}

impl fmt::Display for AmpleWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AmpleWitness::NegativePairing { generator, coeff } => {
                write!(f, "omega.({generator}) has coefficient {coeff} < 0")
            }
            AmpleWitness::NonPositiveSquare { square } => {
                write!(f, "omega^2 = {square} <= 0")
            }
            AmpleWitness::ZeroPairing { generator } => {
                write!(f, "omega.({generator}) = 0")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AmpleCheck {
    Ample,
    NotAmple(AmpleWitness),
}

impl AmpleCheck {
    pub fn is_ample(&self) -> bool {
        matches!(self, AmpleCheck::Ample)
    }

    pub fn witness(&self) -> Option<&AmpleWitness> {
        match self {
            AmpleCheck::Ample => None,
            AmpleCheck::NotAmple(w) => Some(w),
        }
    }
}

/// Nakai–Moishezon-style test against a declared generating set of the
/// effective cone: ample ⟺ ω² > 0 and ω.G > 0 for every generator.
///
/// Witness priority on failure: first generator with ω.G < 0, then ω² ≤ 0,
/// then first generator with ω.G = 0.
pub fn check_ample(
    omega: &ScaledAmpleClass,
    generators: &[DivisorClass],
) -> Result<AmpleCheck, Error> {
    let mut boundary: Option<&DivisorClass> = None;
    for g in generators {
        let coeff = omega.direction().pair(g)?;
        match coeff.cmp(&Rational::zero()) {
            Ordering::Less => {
                return Ok(AmpleCheck::NotAmple(AmpleWitness::NegativePairing {
                    generator: g.clone(),
                    coeff,
                }))
            }
            Ordering::Equal => {
                boundary.get_or_insert(g);
            }
            Ordering::Greater => {}
        }
    }
    let square = omega.square();
    if !square.is_positive() {
        return Ok(AmpleCheck::NotAmple(AmpleWitness::NonPositiveSquare {
            square,
        }));
    }
    if let Some(g) = boundary {
        return Ok(AmpleCheck::NotAmple(AmpleWitness::ZeroPairing {
            generator: g.clone(),
        }));
    }
    Ok(AmpleCheck::Ample)
}

/// Itemized pass/fail report; failures carry the violated invariant by name.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    items: Vec<ValidationItem>,
}

#[derive(Debug, Clone)]
pub struct ValidationItem {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl ValidationReport {
    pub(crate) fn new() -> Self {
        Self { items: Vec::new() }
    }

    pub(crate) fn pass(&mut self, name: &'static str) {
        self.items.push(ValidationItem {
            name,
            passed: true,
            detail: String::new(),
        });
    }

    pub(crate) fn fail(&mut self, name: &'static str, detail: String) {
        self.items.push(ValidationItem {
            name,
            passed: false,
            detail,
        });
    }

    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn items(&self) -> &[ValidationItem] {
        &self.items
    }

    pub fn first_failure(&self) -> Option<&ValidationItem> {
        self.items.iter().find(|i| !i.passed)
    }

    /// Convert the first failure into an error, if any.
    pub fn to_error(&self) -> Option<Error> {
        self.first_failure().map(|i| Error::Validation {
            item: i.name.to_string(),
            detail: i.detail.clone(),
        })
    }
}
