//! Parsing of flag values that clap hands over as raw strings.

use jacpoisson::exterior::{DiffForm, Indices};
use jacpoisson::poisson::build_fr_bivector;
use jacpoisson::singularity::{lekili_move, normal_form};
use jacpoisson::{parse_expr, CasimirPair, GermKind, MapGerm, PoissonBivector, Poly, VarSet, Q};

use crate::{BivectorArgs, Failure, GermArgs};

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

pub fn vars() -> VarSet {
    VarSet::txyz()
}

pub fn expr(text: &str) -> Result<Poly, Failure> {
    Ok(parse_expr(text, &vars()).map_err(jacpoisson::Error::from)?)
}

pub fn rational(text: &str) -> Result<Q, Failure> {
    let t = text.trim();
    t.parse::<Q>()
        .map_err(|_| usage(format!("'{t}' is not a rational number (expected p or p/q)")))
}

pub fn rationals(text: &str) -> Result<Vec<Q>, Failure> {
    text.split(',').map(rational).collect()
}

pub fn integers(text: &str) -> Result<Vec<i64>, Failure> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<i64>()
                .map_err(|_| usage(format!("'{}' is not an integer", s.trim())))
        })
        .collect()
}

pub fn signs(text: &str) -> Result<Vec<i8>, Failure> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    integers(text)?
        .into_iter()
        .map(|s| i8::try_from(s).map_err(|_| usage(format!("sign {s} out of range"))))
        .collect()
}

/// `"i,j:expr"`, with 0-based indices.
fn indexed_term(text: &str) -> Result<(Vec<usize>, Poly), Failure> {
    let (ix, body) = text
        .split_once(':')
        .ok_or_else(|| usage(format!("term '{text}' must look like 'i,j:expr'")))?;
    let ix = integers(ix)?
        .into_iter()
        .map(|i| {
            usize::try_from(i)
                .ok()
                .filter(|&i| i < 4)
                .ok_or_else(|| usage(format!("index {i} out of range 0..4")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((ix, expr(body)?))
}

pub fn bivector(args: &BivectorArgs) -> Result<PoissonBivector, Failure> {
    match (&args.first, &args.second, args.term.is_empty()) {
        (Some(f), Some(g), true) => {
            let pair = CasimirPair::new(expr(f)?, expr(g)?, expr(&args.factor)?).map_err(jacpoisson::Error::from)?;
            Ok(build_fr_bivector(&pair))
        }
        (None, None, false) => {
            let mut comps = Vec::new();
            for t in &args.term {
                let (ix, c) = indexed_term(t)?;
                if ix.len() != 2 {
                    return Err(usage(format!("bivector term '{t}' needs two indices")));
                }
                comps.push((ix[0], ix[1], c));
            }
            Ok(PoissonBivector::from_components(&vars(), &comps).map_err(jacpoisson::Error::from)?)
        }
        _ => Err(usage("give either both -F and -G, or one or more --term 'i,j:expr'")),
    }
}

/// A 1-form as four comma-separated coefficient expressions.
pub fn one_form(text: &str) -> Result<DiffForm, Failure> {
    let coeffs: Vec<&str> = text.split(',').collect();
    if coeffs.len() != 4 {
        return Err(usage(format!("1-form '{text}' needs 4 coefficients (dt,dx,dy,dz)")));
    }
    let mut out = DiffForm::zero(&vars(), 1);
    for (i, c) in coeffs.iter().enumerate() {
        out.add_term(Indices::single(i), expr(c)?);
    }
    Ok(out)
}

/// A form as `;`-separated `"i,j:expr"` terms.
pub fn form_terms(text: &str, grade: usize) -> Result<DiffForm, Failure> {
    let mut out = DiffForm::zero(&vars(), grade);
    for t in text.split(';').filter(|t| !t.trim().is_empty()) {
        let (ix, c) = indexed_term(t)?;
        if ix.len() != grade {
            return Err(usage(format!("form term '{t}' needs {grade} indices")));
        }
        out = out.add(&DiffForm::monomial(c, &ix));
    }
    Ok(out)
}

pub fn germ(args: &GermArgs) -> Result<MapGerm, Failure> {
    let domain = |e: jacpoisson::error::SingularityError| Failure::Domain(e.into());
    match (&args.germ, &args.r#move, &args.f1, &args.f2) {
        (Some(kind), None, None, None) => {
            let kind = GermKind::parse(kind).map_err(domain)?;
            let default = match kind {
                GermKind::Fold => "-1,1,1",
                GermKind::Cusp => "1,-1",
                _ => "",
            };
            normal_form(kind, &signs(args.signs.as_deref().unwrap_or(default))?).map_err(domain)
        }
        (None, Some(kind), None, None) => {
            let s = rational(args.s.as_deref().ok_or_else(|| usage("--move needs --s"))?)?;
            lekili_move(GermKind::parse(kind).map_err(domain)?, &s).map_err(domain)
        }
        (None, None, Some(f1), Some(f2)) => Ok(MapGerm::custom(expr(f1)?, expr(f2)?)),
        _ => Err(usage("give exactly one of --germ, --move, or both --f1 and --f2")),
    }
}
