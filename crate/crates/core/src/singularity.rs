//! Local models of maps `ℝ⁴ → ℝ²`: fold, cusp and Lefschetz charts, the four
//! one-parameter deformation moves, singular loci and pointwise classification.

use std::fmt;

use rayon::prelude::*;

use crate::error::{PoissonError, SingularityError};
use crate::linalg::QMatrix;
use crate::poisson::{build_fr_bivector, CasimirPair, PoissonBivector};
use crate::symbolic::{q, qr, Poly, VarSet, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GermKind {
    Fold,
    Cusp,
    Lefschetz,
    Birth,
    Merging,
    Flipping,
    Wrinkling,
    Custom,
}

impl GermKind {
    pub fn parse(s: &str) -> Result<Self, SingularityError> {
        Ok(match s {
            "fold" => GermKind::Fold,
            "cusp" => GermKind::Cusp,
            "lefschetz" => GermKind::Lefschetz,
            "birth" => GermKind::Birth,
            "merging" => GermKind::Merging,
            "flipping" => GermKind::Flipping,
            "wrinkling" => GermKind::Wrinkling,
            "custom" => GermKind::Custom,
            other => return Err(SingularityError::UnknownKind(other.to_string())),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            GermKind::Fold => "fold",
            GermKind::Cusp => "cusp",
            GermKind::Lefschetz => "lefschetz",
            GermKind::Birth => "birth",
            GermKind::Merging => "merging",
            GermKind::Flipping => "flipping",
            GermKind::Wrinkling => "wrinkling",
            GermKind::Custom => "custom",
        }
    }

    pub fn is_move(self) -> bool {
        matches!(
            self,
            GermKind::Birth | GermKind::Merging | GermKind::Flipping | GermKind::Wrinkling
        )
    }
}

/// A polynomial map germ `(f_1, f_2)` on `(t, x, y, z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapGerm {
    pub f1: Poly,
    pub f2: Poly,
    pub s: Option<Q>,
    pub kind: GermKind,
}

impl MapGerm {
    pub fn custom(f1: Poly, f2: Poly) -> Self {
        MapGerm {
            f1,
            f2,
            s: None,
            kind: GermKind::Custom,
        }
    }

    pub fn vars(&self) -> &VarSet {
        self.f1.vars()
    }

    /// The 2×4 Jacobian.
    pub fn jacobian(&self) -> [Vec<Poly>; 2] {
        [self.f1.gradient(), self.f2.gradient()]
    }
}

impl fmt::Display for MapGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.f1, self.f2)
    }
}

fn signs_ok(kind: GermKind, signs: &[i8], expected: usize) -> Result<(), SingularityError> {
    if signs.len() != expected {
        return Err(SingularityError::InvalidSigns {
            kind: kind.name().into(),
            detail: format!("expected {expected} signs, got {}", signs.len()),
        });
    }
    if let Some(bad) = signs.iter().find(|&&s| s != 1 && s != -1) {
        return Err(SingularityError::InvalidSigns {
            kind: kind.name().into(),
            detail: format!("signs must be +1 or -1, got {bad}"),
        });
    }
    Ok(())
}

fn signed_square(vars: &VarSet, i: usize, sign: i8) -> Poly {
    Poly::var(vars, i).pow(2).scale(&q(sign as i64))
}

/// Chart of the given kind: fold `(t, ±x² ± y² ± z²)` takes three signs,
/// cusp `(t, x³ + tx ± y² ± z²)` two, Lefschetz `(t² − x² + y² − z², 2tx + 2yz)` none.
pub fn normal_form(kind: GermKind, signs: &[i8]) -> Result<MapGerm, SingularityError> {
    let v = VarSet::txyz();
    let (t, x, y, z) = (0, 1, 2, 3);
    let var = |i| Poly::var(&v, i);
    let (f1, f2) = match kind {
        GermKind::Fold => {
            signs_ok(kind, signs, 3)?;
            let g = &(&signed_square(&v, x, signs[0]) + &signed_square(&v, y, signs[1])) + &signed_square(&v, z, signs[2]);
            (var(t), g)
        }
        GermKind::Cusp => {
            signs_ok(kind, signs, 2)?;
            let g = &(&var(x).pow(3) + &(&var(t) * &var(x)))
                + &(&signed_square(&v, y, signs[0]) + &signed_square(&v, z, signs[1]));
            (var(t), g)
        }
        GermKind::Lefschetz => {
            signs_ok(kind, signs, 0)?;
            lefschetz_pair(&v, &Q::from_integer(0.into()))
        }
        other => {
            return Err(SingularityError::InvalidSigns {
                kind: other.name().into(),
                detail: "not a normal-form kind; use lekili_move".into(),
            })
        }
    };
    Ok(MapGerm {
        f1,
        f2,
        s: None,
        kind,
    })
}

fn lefschetz_pair(v: &VarSet, s: &Q) -> (Poly, Poly) {
    let var = |i| Poly::var(v, i);
    let (t, x, y, z) = (var(0), var(1), var(2), var(3));
    let f1 = &(&(&t.pow(2) - &x.pow(2)) + &(&y.pow(2) - &z.pow(2))) + &t.scale(s);
    let f2 = (&(&t * &x) + &(&y * &z)).scale(&q(2));
    (f1, f2)
}

/// The four moves at parameter `s`:
///
/// * birth `(t, x³ − 3x(s − t²) + y² − z²)`, folds along `x² + t² = s`
/// * merging `(t, x³ − 3x(t² − s) + y² − z²)`, folds along `x² = t² − s`
/// * flipping `(t, x⁴ − x²s + xt + y² − z²)`
/// * wrinkling `(t² − x² + y² − z² + st, 2tx + 2yz)`
///
/// Birth and merging are assigned so that the birth locus is the circle
/// `{x² + t² = s, y = z = 0}`, empty for `s < 0`.
pub fn lekili_move(kind: GermKind, s: &Q) -> Result<MapGerm, SingularityError> {
    let v = VarSet::txyz();
    let var = |i| Poly::var(&v, i);
    let (t, x, y, z) = (var(0), var(1), var(2), var(3));
    let sp = Poly::constant(&v, s.clone());
    let tail = &y.pow(2) - &z.pow(2);
    let (f1, f2) = match kind {
        GermKind::Birth => {
            let g = &(&x.pow(3) - &(&x * &(&sp - &t.pow(2))).scale(&q(3))) + &tail;
            (t, g)
        }
        GermKind::Merging => {
            let g = &(&x.pow(3) - &(&x * &(&t.pow(2) - &sp)).scale(&q(3))) + &tail;
            (t, g)
        }
        GermKind::Flipping => {
            let g = &(&(&x.pow(4) - &(&x.pow(2) * &sp)) + &(&x * &t)) + &tail;
            (t, g)
        }
        GermKind::Wrinkling => lefschetz_pair(&v, s),
        other => return Err(SingularityError::UnknownKind(format!("{} is not a move", other.name()))),
    };
    Ok(MapGerm {
        f1,
        f2,
        s: Some(s.clone()),
        kind,
    })
}

/// What the generators alone prove about the real zero set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealBound {
    /// Some generator is certified sign-definite: no real points.
    Empty,
    /// Every real point has these coordinates equal to zero.
    Within(Vec<usize>),
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularLocus {
    /// The nonzero 2×2 minors of the Jacobian.
    pub generators: Vec<Poly>,
    /// Grid points annihilating every generator.
    pub samples: Vec<Vec<Q>>,
    pub bound: RealBound,
}

impl SingularLocus {
    pub fn contains(&self, p: &[Q]) -> bool {
        self.generators.iter().all(|g| num::Zero::is_zero(&g.eval(p)))
    }
}

/// Rational grid used for sampling: `{0, ±1/2, ±3/5, ±4/5, ±1, ±2}`,
/// chosen so that points of unit circles like `(3/5, 4/5)` are hit.
pub fn sample_values() -> Vec<Q> {
    let mut out = vec![q(0)];
    for v in [qr(1, 2), qr(3, 5), qr(4, 5), q(1), q(2)] {
        out.push(-v.clone());
        out.push(v);
    }
    out
}

/// All points of the 4-dimensional grid over [`sample_values`].
pub fn sample_grid() -> Vec<Vec<Q>> {
    let vals = sample_values();
    let mut out = Vec::with_capacity(vals.len().pow(4));
    for a in &vals {
        for b in &vals {
            for c in &vals {
                for d in &vals {
                    out.push(vec![a.clone(), b.clone(), c.clone(), d.clone()]);
                }
            }
        }
    }
    out
}

/// Coordinates forced to vanish on the real zero set of `g`, or `None` when
/// `g` has no real zeros at all.
fn forced_zeros(g: &Poly) -> Option<Vec<usize>> {
    if g.certified_sign().is_some() {
        return None;
    }
    let n = g.nvars();
    let single_var = |m: &crate::symbolic::Monomial| {
        let e = m.exponents();
        let nz: Vec<usize> = (0..n).filter(|&i| e[i] > 0).collect();
        (nz.len() == 1).then(|| nz[0])
    };
    if g.num_terms() == 1 {
        let (m, _) = g.leading_term().expect("nonzero");
        return Some(single_var(m).into_iter().collect());
    }
    // sum of even powers of single variables, all with one sign
    let positive = g.terms().next().map(|(_, c)| c > &q(0)).unwrap_or(true);
    let mut out = Vec::new();
    for (m, c) in g.terms() {
        if (c > &q(0)) != positive || !m.is_square() {
            return Some(Vec::new());
        }
        match single_var(m) {
            Some(i) => out.push(i),
            None => return Some(Vec::new()),
        }
    }
    Some(out)
}

pub fn singular_locus(germ: &MapGerm) -> SingularLocus {
    let generators = singular_locus_generators(germ);
    let mut bound = RealBound::Within(Vec::new());
    for g in &generators {
        match (forced_zeros(g), &mut bound) {
            (None, _) => {
                bound = RealBound::Empty;
                break;
            }
            (Some(vs), RealBound::Within(acc)) => {
                for v in vs {
                    if !acc.contains(&v) {
                        acc.push(v);
                    }
                }
            }
            _ => {}
        }
    }
    if let RealBound::Within(acc) = &mut bound {
        acc.sort();
        if acc.is_empty() && !generators.is_empty() {
            bound = RealBound::Unknown;
        }
    }
    let locus = SingularLocus {
        generators,
        samples: Vec::new(),
        bound,
    };
    let samples = sample_grid().into_par_iter().filter(|p| locus.contains(p)).collect();
    SingularLocus { samples, ..locus }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SingularityClass {
    Fold,
    Cusp,
    LefschetzDegenerate,
    Unclassified,
}

impl SingularityClass {
    pub fn name(self) -> &'static str {
        match self {
            SingularityClass::Fold => "fold",
            SingularityClass::Cusp => "cusp",
            SingularityClass::LefschetzDegenerate => "lefschetz_degenerate",
            SingularityClass::Unclassified => "unclassified",
        }
    }
}

fn eval_rows(rows: &[Vec<Poly>], p: &[Q]) -> QMatrix {
    QMatrix::from_rows(rows.iter().map(|r| r.iter().map(|f| f.eval(p)).collect()).collect())
}

/// Fold when `T_p Sing` is transverse to `ker df_p`, cusp when it lies inside,
/// Lefschetz-degenerate when `df_p = 0`.
pub fn classify_point(germ: &MapGerm, p: &[Q]) -> Result<SingularityClass, SingularityError> {
    if p.len() != 4 {
        return Err(SingularityError::DimensionMismatch {
            expected: 4,
            got: p.len(),
        });
    }
    let locus = singular_locus_generators(germ);
    if !locus.iter().all(|g| num::Zero::is_zero(&g.eval(p))) {
        return Err(SingularityError::NotOnLocus);
    }
    let df = eval_rows(&germ.jacobian(), p);
    if df.is_zero() {
        return Ok(SingularityClass::LefschetzDegenerate);
    }
    let grads: Vec<Vec<Poly>> = locus.iter().map(Poly::gradient).collect();
    let tangent = eval_rows(&grads, p).nullspace();
    if tangent.len() != 1 {
        return Ok(SingularityClass::Unclassified);
    }
    let image = df.mul_vec(&tangent[0]);
    Ok(if image.iter().all(num::Zero::is_zero) {
        SingularityClass::Cusp
    } else {
        SingularityClass::Fold
    })
}

fn singular_locus_generators(germ: &MapGerm) -> Vec<Poly> {
    let [a, b] = germ.jacobian();
    let mut out = Vec::new();
    for i in 0..4 {
        for j in (i + 1)..4 {
            let m = &(&a[i] * &b[j]) - &(&a[j] * &b[i]);
            if !m.is_zero() {
                out.push(m);
            }
        }
    }
    out
}

/// The Jacobian Poisson structure with Casimirs the germ's components.
pub fn bivector_from_map(germ: &MapGerm, k: &Poly) -> Result<PoissonBivector, PoissonError> {
    Ok(build_fr_bivector(&CasimirPair::new(germ.f1.clone(), germ.f2.clone(), k.clone())?))
}
