//! Surface models: a lattice bundled with effective-cone generators,
//! irreducible negative curves, and destabilizer-criterion applicability
//! metadata, plus the text config loader.
//!
//! Quantification over "every curve" in the dHYM test runs over the
//! declared effective generators only (sound by linearity of the quantity
//! in the curve class); a model therefore carries a `generators_complete`
//! flag saying whether the declared list generates the whole cone.

use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::lattice::{
    check_ample, AmpleCheck, DivisorClass, IntersectionLattice, ScaledAmpleClass,
    ValidationReport,
};
use crate::{parse_rational, Rational};

/// Whether the negative-curve destabilizer criterion is a theorem on this
/// surface or still conjectural; verdicts on conjectural models are flagged,
/// not refused.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AmStatus {
    Proven,
    Conjectural,
}

impl fmt::Display for AmStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AmStatus::Proven => write!(f, "proven"),
            AmStatus::Conjectural => write!(f, "conjectural"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceModel {
    name: String,
    lattice: Arc<IntersectionLattice>,
    effective_generators: Vec<DivisorClass>,
    negative_curves: Vec<DivisorClass>,
    am_status: AmStatus,
    generators_complete: bool,
}

impl SurfaceModel {
    /// Shape-checked construction (all classes must live on `lattice`);
    /// semantic invariants are the job of [`SurfaceModel::validate`].
    pub fn new(
        name: impl Into<String>,
        lattice: Arc<IntersectionLattice>,
        effective_generators: Vec<DivisorClass>,
        negative_curves: Vec<DivisorClass>,
        am_status: AmStatus,
        generators_complete: bool,
    ) -> Result<Self, Error> {
        let probe = lattice.zero_class();
        for class in effective_generators.iter().chain(&negative_curves) {
            probe.ensure_same_lattice(class)?;
        }
        Ok(Self {
            name: name.into(),
            lattice,
            effective_generators,
            negative_curves,
            am_status,
            generators_complete,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lattice(&self) -> &Arc<IntersectionLattice> {
        &self.lattice
    }

    pub fn effective_generators(&self) -> &[DivisorClass] {
        &self.effective_generators
    }

    pub fn negative_curves(&self) -> &[DivisorClass] {
        &self.negative_curves
    }

    pub fn am_status(&self) -> AmStatus {
        self.am_status
    }

    pub fn generators_complete(&self) -> bool {
        self.generators_complete
    }

    /// Nakai–Moishezon-style ampleness test against the declared generators.
    pub fn check_ample(&self, omega: &ScaledAmpleClass) -> Result<AmpleCheck, Error> {
        if !omega.lattice().compatible(&self.lattice) {
            return Err(Error::LatticeMismatch {
                left: omega.lattice().describe(),
                right: self.lattice.describe(),
            });
        }
        check_ample(omega, &self.effective_generators)
    }

    pub(crate) fn require_ample(&self, omega: &ScaledAmpleClass) -> Result<(), Error> {
        match self.check_ample(omega)? {
            AmpleCheck::Ample => Ok(()),
            AmpleCheck::NotAmple(witness) => Err(Error::NotAmple(witness)),
        }
    }

    /// Aggregate lattice validation and model invariants into one report.
    pub fn validate(&self) -> ValidationReport {
        let mut report = self.lattice.validate();

        if self.effective_generators.is_empty() {
            report.fail(
                "effective generators nonempty",
                "no effective-cone generators declared".to_string(),
            );
        } else {
            report.pass("effective generators nonempty");
        }

        match self.effective_generators.iter().find(|g| g.is_zero()) {
            Some(_) => report.fail(
                "generator nonzero",
                "the zero class cannot generate the effective cone".to_string(),
            ),
            None => report.pass("generator nonzero"),
        }

        match self
            .negative_curves
            .iter()
            .find(|c| !c.self_intersection().is_negative())
        {
            Some(c) => report.fail(
                "negative curve C^2 < 0",
                format!("C = {c}: C^2 = {} >= 0", c.self_intersection()),
            ),
            None => report.pass("negative curve C^2 < 0"),
        }

        // Cone membership is decidable from the generator list alone; for
        // rank > 2 an incomplete list would produce false negatives, so the
        // check is gated on the completeness flag there.
        if self.lattice.rank() <= 2 || self.generators_complete {
            match self
                .negative_curves
                .iter()
                .find(|c| !in_cone(c, &self.effective_generators))
            {
                Some(c) => report.fail(
                    "negative curve effective",
                    format!("C = {c} is not a nonnegative combination of the generators"),
                ),
                None => report.pass("negative curve effective"),
            }
        }

        report
    }

    /// Serialize to the text config format; `load_model` round-trips this.
    pub fn to_config_string(&self) -> String {
        let config = ModelConfig {
            name: self.name.clone(),
            rank: self.lattice.rank(),
            basis: self.lattice.basis_labels().to_vec(),
            gram: self
                .lattice
                .gram()
                .iter()
                .flatten()
                .map(|r| RatLit(r.clone()))
                .collect(),
            effective_generators: self
                .effective_generators
                .iter()
                .map(class_to_lits)
                .collect(),
            negative_curves: self.negative_curves.iter().map(class_to_lits).collect(),
            am_status: Some(match self.am_status {
                AmStatus::Proven => AmStatusConfig::Proven,
                AmStatus::Conjectural => AmStatusConfig::Conjectural,
            }),
            generators_complete: Some(self.generators_complete),
        };
        toml::to_string(&config).expect("model config serializes")
    }
}

fn class_to_lits(class: &DivisorClass) -> Vec<RatLit> {
    class.coeffs().iter().map(|c| RatLit(c.clone())).collect()
}

/// Built-in models.
///
/// * `"p2"` — the projective plane: rank 1, gram (1), effective cone
///   generated by the hyperplane class H, no negative curves.
/// * `"blowup_p2"` — the plane blown up at a point, in the standard
///   convention: basis (H, E) with gram diag(1, −1), effective cone
///   generated by {E, H−E}, unique irreducible negative curve E.
///
/// Both carry `am_status = proven`: the destabilizer criterion is a theorem
/// for surfaces with no negative curves and for rank-2 surfaces with a
/// unique irreducible negative curve.
pub fn builtin(name: &str) -> Result<SurfaceModel, Error> {
    match name {
        "p2" => {
            let lattice = IntersectionLattice::from_int_gram(&[&[1]], &["H"])?;
            let h = lattice.basis_class(0);
            SurfaceModel::new("p2", lattice, vec![h], vec![], AmStatus::Proven, true)
        }
        "blowup_p2" => {
            let lattice =
                IntersectionLattice::from_int_gram(&[&[1, 0], &[0, -1]], &["H", "E"])?;
            let e = lattice.basis_class(1);
            let h_minus_e = lattice.class_from_ints(&[1, -1])?;
            SurfaceModel::new(
                "blowup_p2",
                lattice,
                vec![e.clone(), h_minus_e],
                vec![e],
                AmStatus::Proven,
                true,
            )
        }
        other => Err(Error::UnknownModel(other.to_string())),
    }
}

/// Parse and fully validate a model from its text config.
///
/// The format is TOML; unknown keys are rejected and parse errors carry a
/// line/column locus. See the repository README for the full grammar.
pub fn load_model(config_text: &str) -> Result<SurfaceModel, Error> {
    let config: ModelConfig =
        toml::from_str(config_text).map_err(|e| Error::Parse(e.to_string()))?;

    if config.rank == 0 {
        return Err(Error::Parse("rank must be at least 1".to_string()));
    }
    if config.basis.len() != config.rank {
        return Err(Error::Parse(format!(
            "basis: expected {} labels, found {}",
            config.rank,
            config.basis.len()
        )));
    }
    if config.gram.len() != config.rank * config.rank {
        return Err(Error::Parse(format!(
            "gram: expected {} row-major entries, found {}",
            config.rank * config.rank,
            config.gram.len()
        )));
    }
    let gram: Vec<Vec<Rational>> = config
        .gram
        .chunks(config.rank)
        .map(|row| row.iter().map(|l| l.0.clone()).collect())
        .collect();
    let lattice = IntersectionLattice::new(gram, config.basis.clone())?;

    let build = |field: &str, vectors: &[Vec<RatLit>]| -> Result<Vec<DivisorClass>, Error> {
        vectors
            .iter()
            .enumerate()
            .map(|(i, v)| {
                if v.len() != config.rank {
                    return Err(Error::Parse(format!(
                        "{field}[{i}]: expected {} coefficients, found {}",
                        config.rank,
                        v.len()
                    )));
                }
                lattice.class(v.iter().map(|l| l.0.clone()).collect())
            })
            .collect()
    };
    let effective_generators = build("effective_generators", &config.effective_generators)?;
    let negative_curves = build("negative_curves", &config.negative_curves)?;

    let am_status = match config.am_status {
        Some(AmStatusConfig::Proven) => AmStatus::Proven,
        Some(AmStatusConfig::Conjectural) | None => AmStatus::Conjectural,
    };

    let model = SurfaceModel::new(
        config.name,
        lattice,
        effective_generators,
        negative_curves,
        am_status,
        config.generators_complete.unwrap_or(false),
    )?;

    match model.validate().to_error() {
        Some(err) => Err(err),
        None => Ok(model),
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelConfig {
    name: String,
    rank: usize,
    basis: Vec<String>,
    gram: Vec<RatLit>,
    effective_generators: Vec<Vec<RatLit>>,
    #[serde(default)]
    negative_curves: Vec<Vec<RatLit>>,
    #[serde(default)]
    am_status: Option<AmStatusConfig>,
    #[serde(default)]
    generators_complete: Option<bool>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum AmStatusConfig {
    Proven,
    Conjectural,
}

/// A rational config literal: either a bare integer or a `"p/q"` string.
struct RatLit(Rational);

impl Serialize for RatLit {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for RatLit {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V;
        impl serde::de::Visitor<'_> for V {
            type Value = RatLit;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "an integer or a rational string like \"p/q\"")
            }

            fn visit_i64<E: serde::de::Error>(self, v: i64) -> Result<RatLit, E> {
                Ok(RatLit(Rational::from_integer(v.into())))
            }

            fn visit_str<E: serde::de::Error>(self, v: &str) -> Result<RatLit, E> {
                parse_rational(v).map(RatLit).map_err(|e| match e {
                    crate::Error::Parse(msg) => E::custom(msg),
                    other => E::custom(other.to_string()),
                })
            }
        }
        deserializer.deserialize_any(V)
    }
}

/// Is `target` a nonnegative rational combination of `generators`?
///
/// By Carathéodory for cones it suffices to scan linearly independent
/// subsets of size at most the lattice rank; generator lists here are tiny.
pub fn in_cone(target: &DivisorClass, generators: &[DivisorClass]) -> bool {
    if target.is_zero() {
        return true;
    }
    let rank = target.lattice().rank();
    let count = generators.len().min(20);
    for mask in 1u32..(1 << count) {
        let size = mask.count_ones() as usize;
        if size > rank {
            continue;
        }
        let subset: Vec<&DivisorClass> = (0..count)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| &generators[i])
            .collect();
        if let Some(coeffs) = solve_independent(&subset, target) {
            if coeffs.iter().all(|c| !c.is_negative()) {
                return true;
            }
        }
    }
    false
}

/// Solve Σ xᵢ·vᵢ = target exactly; `None` when the vᵢ are dependent or the
/// target is outside their span.
fn solve_independent(columns: &[&DivisorClass], target: &DivisorClass) -> Option<Vec<Rational>> {
    let n = target.lattice().rank();
    let m = columns.len();
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|row| {
            let mut r: Vec<Rational> = columns.iter().map(|c| c.coeffs()[row].clone()).collect();
            r.push(target.coeffs()[row].clone());
            r
        })
        .collect();

    let mut pivot_row = 0usize;
    for col in 0..m {
        let pivot = (pivot_row..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(pivot_row, pivot);
        let p = a[pivot_row][col].clone();
        for entry in a[pivot_row].iter_mut() {
            *entry /= &p;
        }
        for r in 0..n {
            if r != pivot_row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..=m {
                    let sub = &f * &a[pivot_row][c];
                    a[r][c] -= sub;
                }
            }
        }
        pivot_row += 1;
    }
    // Consistency: no leftover row may force 0 = nonzero.
    for r in pivot_row..n {
        if !a[r][m].is_zero() {
            return None;
        }
    }
    Some((0..m).map(|i| a[i][m].clone()).collect())
}
