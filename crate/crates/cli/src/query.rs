//! Resolution of command-line query arguments into validated domain values.

use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context};

use stabledge_core::lattice::{DivisorClass, IntersectionLattice, ScaledAmpleClass};
use stabledge_core::scaling::KParameter;
use stabledge_core::surface::{builtin, load_model, SurfaceModel};
use stabledge_core::{parse_rational, Error, Rational};

use crate::QueryArgs;

pub struct ResolvedQuery {
    pub model: SurfaceModel,
    pub c1: DivisorClass,
    pub b: DivisorClass,
    pub omega: ScaledAmpleClass,
    pub k: Option<KParameter>,
}

/// Built-in names take precedence; anything else must be a config file path.
pub fn resolve_model(source: &str) -> anyhow::Result<SurfaceModel> {
    match builtin(source) {
        Ok(model) => Ok(model),
        Err(Error::UnknownModel(_)) => {
            if Path::new(source).exists() {
                let text = std::fs::read_to_string(source)
                    .with_context(|| format!("reading model config `{source}`"))?;
                Ok(load_model(&text)?)
            } else {
                bail!("`{source}` is neither a built-in model nor an existing config file");
            }
        }
        Err(other) => Err(other.into()),
    }
}

pub fn parse_vector(
    text: &str,
    lattice: &Arc<IntersectionLattice>,
    what: &str,
) -> anyhow::Result<DivisorClass> {
    let coeffs: Vec<Rational> = text
        .split(',')
        .map(parse_rational)
        .collect::<Result<_, _>>()
        .with_context(|| format!("parsing {what}"))?;
    lattice
        .class(coeffs)
        .with_context(|| format!("building {what}"))
}

pub fn resolve(args: &QueryArgs) -> anyhow::Result<ResolvedQuery> {
    let model = resolve_model(&args.model)?;
    let lattice = Arc::clone(model.lattice());
    let c1 = parse_vector(&args.l, &lattice, "--L")?;
    let b = match &args.b {
        Some(text) => parse_vector(text, &lattice, "--B")?,
        None => lattice.zero_class(),
    };
    let direction = parse_vector(&args.omega, &lattice, "--omega")?;
    let scale_sq = parse_rational(&args.scale_sq).context("parsing --scale-sq")?;
    let omega = ScaledAmpleClass::new(direction, scale_sq)?;
    let k = match &args.k {
        Some(text) => {
            let value = parse_rational(text).context("parsing --k")?;
            Some(KParameter::new(value)?)
        }
        None => None,
    };
    Ok(ResolvedQuery {
        model,
        c1,
        b,
        omega,
        k,
    })
}

/// Parse `a:b` into a nondegenerate rational range.
pub fn parse_range(text: &str) -> anyhow::Result<(Rational, Rational)> {
    let Some((lo, hi)) = text.split_once(':') else {
        bail!("--range must look like `a:b`, got `{text}`");
    };
    let lo = parse_rational(lo).context("parsing range start")?;
    let hi = parse_rational(hi).context("parsing range end")?;
    if lo >= hi {
        bail!("--range must be nondegenerate with a < b, got `{text}`");
    }
    Ok((lo, hi))
}
