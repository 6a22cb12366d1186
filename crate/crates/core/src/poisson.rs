//! Jacobian Poisson structures on ℝ⁴ built from a pair of Casimirs.
//!
//! The bracket of `(F, G, k)` is `{g, h} μ = k dg ∧ dh ∧ dF ∧ dG` with
//! `μ = (1/k) dt∧dx∧dy∧dz`, which in coordinates is
//! `π^{ij} = k Σ ε_{ijrs} ∂_r F ∂_s G`.
//!
//! The anchor follows [`crate::exterior`]: `π̄(α)^j = Σ_i π^{ji} α_i`, so that
//! `X_h = π̄(dh)` satisfies `X_h(g) = {g, h} = π(dg, dh)`.

use std::fmt;

use crate::error::{ExteriorError, PoissonError};
use crate::exterior::{divergence, schouten, DiffForm, Indices, Multivector, RationalVectorField, VolumeForm};
use crate::linalg::QMatrix;
use crate::symbolic::{Poly, RationalFn, VarSet, Q};

/// Casimir functions `F`, `G` together with the volume form `μ = (1/k) vol`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CasimirPair {
    pub f: Poly,
    pub g: Poly,
    pub mu: VolumeForm,
}

impl CasimirPair {
    pub fn new(f: Poly, g: Poly, k: Poly) -> Result<Self, PoissonError> {
        let n = f.nvars();
        if n != 4 {
            return Err(PoissonError::DimensionMismatch { expected: 4, got: n });
        }
        if f.vars() != g.vars() || f.vars() != k.vars() {
            return Err(ExteriorError::VariableMismatch.into());
        }
        Ok(CasimirPair {
            f,
            g,
            mu: VolumeForm::new(k)?,
        })
    }

    pub fn k(&self) -> &Poly {
        self.mu.factor()
    }

    pub fn vars(&self) -> &VarSet {
        self.f.vars()
    }
}

/// A bivector with its skew anchor matrix `π^{ij}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonBivector {
    body: Multivector,
    matrix: Vec<Vec<Poly>>,
    provenance: Option<CasimirPair>,
}

impl PoissonBivector {
    pub fn new(body: Multivector) -> Result<Self, PoissonError> {
        if body.grade() != 2 {
            return Err(PoissonError::NotBivector(body.grade()));
        }
        let n = body.dim();
        let vars = body.vars().clone();
        let mut matrix = vec![vec![Poly::zero(&vars); n]; n];
        for (ix, c) in body.terms() {
            let ij = ix.to_vec();
            matrix[ij[0]][ij[1]] = c.clone();
            matrix[ij[1]][ij[0]] = -c;
        }
        Ok(PoissonBivector {
            body,
            matrix,
            provenance: None,
        })
    }

    /// Bivector `Σ c ∂_i ∧ ∂_j` from `(i, j, c)` triples in any order.
    pub fn from_components(vars: &VarSet, comps: &[(usize, usize, Poly)]) -> Result<Self, PoissonError> {
        let mut body = Multivector::zero(vars, 2);
        for (i, j, c) in comps {
            body = body.add(&Multivector::monomial(c.clone(), &[*i, *j]));
        }
        Self::new(body)
    }

    pub fn with_provenance(mut self, pair: CasimirPair) -> Self {
        self.provenance = Some(pair);
        self
    }

    pub fn body(&self) -> &Multivector {
        &self.body
    }

    pub fn vars(&self) -> &VarSet {
        self.body.vars()
    }

    pub fn dim(&self) -> usize {
        self.body.dim()
    }

    pub fn provenance(&self) -> Option<&CasimirPair> {
        self.provenance.as_ref()
    }

    /// `π^{ij}`.
    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.matrix[i][j]
    }

    pub fn anchor_matrix(&self) -> &[Vec<Poly>] {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    /// The matrix `P` with `π̄(α) = P α` at the point `q`, i.e. `P_{ji} = π^{ji}(q)`.
    pub fn anchor_at(&self, q: &[Q]) -> QMatrix {
        let n = self.dim();
        let mut m = QMatrix::zeros(n, n);
        for j in 0..n {
            for i in 0..n {
                m.set(j, i, self.matrix[j][i].eval(q));
            }
        }
        m
    }

    pub fn rank_at(&self, q: &[Q]) -> usize {
        self.anchor_at(q).rank()
    }

    /// `π(dg, dh) = Σ π^{ij} ∂_i g ∂_j h`.
    pub fn bracket(&self, g: &Poly, h: &Poly) -> Poly {
        let (dg, dh) = (g.gradient(), h.gradient());
        let mut out = Poly::zero(self.vars());
        for (ix, c) in self.body.terms() {
            let ij = ix.to_vec();
            let (i, j) = (ij[0], ij[1]);
            let t = &(&dg[i] * &dh[j]) - &(&dg[j] * &dh[i]);
            out += &(c * &t);
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Self {
        PoissonBivector {
            body: self.body.scale(c),
            matrix: self
                .matrix
                .iter()
                .map(|row| row.iter().map(|p| p.scale(c)).collect())
                .collect(),
            provenance: None,
        }
    }
}

impl fmt::Display for PoissonBivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.body.fmt(f)
    }
}

/// `π^{ij} = k Σ ε_{ijrs} ∂_r F ∂_s G`.
pub fn build_fr_bivector(pair: &CasimirPair) -> PoissonBivector {
    let vars = pair.vars().clone();
    let (df, dg) = (pair.f.gradient(), pair.g.gradient());
    let mut body = Multivector::zero(&vars, 2);
    for i in 0..4 {
        for j in (i + 1)..4 {
            let mut c = Poly::zero(&vars);
            for r in 0..4 {
                for s in 0..4 {
                    if let Some((_, sign)) = Indices::from_unsorted(&[i, j, r, s]) {
                        let t = &df[r] * &dg[s];
                        if sign > 0 {
                            c += &t;
                        } else {
                            c -= &t;
                        }
                    }
                }
            }
            body.add_term(Indices::from_unsorted(&[i, j]).unwrap().0, &c * pair.k());
        }
    }
    PoissonBivector::new(body).expect("grade 2").with_provenance(pair.clone())
}

/// The generic-singularity local form with the component signs exactly as
/// printed in the source: `k [ψ_y ∂x∧∂z + ψ_z ∂x∧∂y − ψ_x ∂y∧∂z]`.
///
/// Kept for comparison only: it disagrees with [`build_fr_bivector`] for
/// `F = t, G = ψ` on the `∂x∧∂z` and `∂y∧∂z` components and in general does
/// not annihilate `dψ`.
pub fn generic_form_as_printed(psi: &Poly, k: &Poly) -> PoissonBivector {
    let vars = psi.vars();
    let d = psi.gradient();
    PoissonBivector::from_components(
        vars,
        &[(1, 3, k * &d[2]), (1, 2, k * &d[3]), (2, 3, -(k * &d[1]))],
    )
    .expect("grade 2")
}

/// `π̄` extended multiplicatively: `π̄(a dx^{i_1}∧…∧dx^{i_p}) = a π̄(dx^{i_1})∧…∧π̄(dx^{i_p})`.
pub fn anchor_push(pi: &PoissonBivector, w: &DiffForm) -> Multivector {
    let vars = pi.vars();
    let n = pi.dim();
    let images: Vec<Multivector> = (0..n)
        .map(|i| Multivector::vector_field(&(0..n).map(|j| pi.entry(j, i).clone()).collect::<Vec<_>>()))
        .collect();
    let mut out = Multivector::zero(vars, w.grade());
    for (ix, c) in w.terms() {
        let mut acc = Multivector::scalar(c.clone());
        for i in ix.to_vec() {
            acc = acc.wedge(&images[i]).expect("grade stays within the form's grade");
        }
        out = out.add(&acc);
    }
    out
}

/// `X_h = π̄(dh)`.
pub fn hamiltonian_vf(pi: &PoissonBivector, h: &Poly) -> Multivector {
    anchor_push(pi, &DiffForm::exact(h))
}

pub fn is_casimir(pi: &PoissonBivector, f: &Poly) -> bool {
    hamiltonian_vf(pi, f).is_zero()
}

/// `[π, π]`; zero exactly when `π` is Poisson.
pub fn jacobi_check(pi: &PoissonBivector) -> Multivector {
    schouten(pi.body(), pi.body())
}

/// A value of the leaf symplectic form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeafSymplecticSample {
    pub q: Vec<Q>,
    pub u: Vec<Q>,
    pub v: Vec<Q>,
    pub value: Q,
}

/// `ω_q(u, v) = π(α, β)` where `π̄(α) = u` and `π̄(β) = v` at `q`.
pub fn leaf_symplectic_at(
    pi: &PoissonBivector,
    q: &[Q],
    u: &[Q],
    v: &[Q],
) -> Result<LeafSymplecticSample, PoissonError> {
    let n = pi.dim();
    for len in [q.len(), u.len(), v.len()] {
        if len != n {
            return Err(PoissonError::DimensionMismatch { expected: n, got: len });
        }
    }
    let p = pi.anchor_at(q);
    let rank = p.rank();
    if rank != 2 {
        return Err(PoissonError::SingularPoint { rank });
    }
    let alpha = p.solve(u).ok_or(PoissonError::NotTangent("u"))?;
    let beta = p.solve(v).ok_or(PoissonError::NotTangent("v"))?;
    // π(α, β) = Σ π^{ij} α_i β_j = αᵀ P β
    let pb = p.mul_vec(&beta);
    let value = alpha.iter().zip(&pb).map(|(a, b)| a * b).sum();
    Ok(LeafSymplecticSample {
        q: q.to_vec(),
        u: u.to_vec(),
        v: v.to_vec(),
        value,
    })
}

/// Modular vector field `Z(h) = div_μ(X_h)`, assembled from its values on
/// the coordinate functions: `Z^i = div_μ(X_{x_i})`.
pub fn modular_vf(pi: &PoissonBivector, mu: &VolumeForm) -> RationalVectorField {
    let vars = pi.vars();
    let comps = (0..pi.dim())
        .map(|i| divergence(&hamiltonian_vf(pi, &Poly::var(vars, i)), mu))
        .collect();
    RationalVectorField::new(vars, comps)
}

/// Result of evaluating the curl formula for the modular vector field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotFormulaReport {
    /// `rot(A) − π̄(d log|k|)` with `A = (π^{yz}, π^{zx}, π^{xy})`.
    pub rot_formula: RationalVectorField,
    /// The divergence-definition field for comparison.
    pub modular: RationalVectorField,
    pub agree: bool,
    pub agree_up_to_sign: bool,
}

/// The curl formula `⟨rot A, ∇⟩ − π̄(d log|k|)`, evaluated literally with the
/// fixed anchor and compared against [`modular_vf`].
pub fn modular_rot_formula(pi: &PoissonBivector, mu: &VolumeForm) -> Result<RotFormulaReport, PoissonError> {
    if pi.dim() != 4 {
        return Err(PoissonError::DimensionMismatch {
            expected: 4,
            got: pi.dim(),
        });
    }
    if (1..4).any(|j| !pi.entry(0, j).is_zero()) {
        return Err(PoissonError::NotNormalPosition);
    }
    let vars = pi.vars();
    let a = [pi.entry(2, 3), pi.entry(3, 1), pi.entry(1, 2)];
    let (x, y, z) = (1, 2, 3);
    let rot = [
        &a[2].derivative(y) - &a[1].derivative(z),
        &a[0].derivative(z) - &a[2].derivative(x),
        &a[1].derivative(x) - &a[0].derivative(y),
    ];
    let k = mu.factor();
    let pk = hamiltonian_vf(pi, k).components();
    let mut comps = vec![RationalFn::zero(vars)];
    for i in 0..3 {
        let num = &(&rot[i] * k) - &pk[i + 1];
        comps.push(RationalFn::new(num, k.clone()).expect("k is nonzero"));
    }
    let rot_formula = RationalVectorField::new(vars, comps);
    let modular = modular_vf(pi, mu);
    let agree = rot_formula == modular;
    let agree_up_to_sign = agree || rot_formula == modular.neg();
    Ok(RotFormulaReport {
        rot_formula,
        modular,
        agree,
        agree_up_to_sign,
    })
}

/// Regions of the decomposition `M = W ∪ U_C ∪ U_Γ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Region {
    W,
    UC,
    UGamma,
}

impl Region {
    pub fn parse(s: &str) -> Result<Self, PoissonError> {
        match s {
            "W" => Ok(Region::W),
            "U_C" | "UC" => Ok(Region::UC),
            "U_Gamma" | "U_Γ" | "UGamma" => Ok(Region::UGamma),
            other => Err(PoissonError::UnknownRegion(other.to_string())),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Region::W => "W",
            Region::UC => "U_C",
            Region::UGamma => "U_Gamma",
        }
    }

    /// The formal cut-off symbol supported on the region.
    pub fn weight_symbol(self) -> &'static str {
        match self {
            Region::W => "tau",
            Region::UC => "sigma",
            Region::UGamma => "lambda",
        }
    }
}

/// Declared overlap data for the gluing; the cut-offs themselves are formal
/// symbols subject to `σ + λ + τ = 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RegionWeights {
    pub uc_meets_ugamma: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlueReport {
    /// Extracted factor per region present, in region order.
    pub factors: Vec<(Region, Poly)>,
    /// Formal coefficient of `π_F`, e.g. `2*sigma + tau`.
    pub expression: String,
    pub relation: &'static str,
}

/// Verifies each piece is a polynomial multiple of `base` on its region and
/// assembles the formal glued bivector `(g σ + h λ + τ) π_F`.
pub fn region_glue_check(
    pieces: &[(Region, PoissonBivector)],
    base: &PoissonBivector,
    weights: &RegionWeights,
) -> Result<GlueReport, PoissonError> {
    if weights.uc_meets_ugamma {
        return Err(PoissonError::OverlappingRegions);
    }
    let vars = base.vars();
    let mut factors: Vec<(Region, Poly)> = Vec::new();
    for (region, piece) in pieces {
        if factors.iter().any(|(r, _)| r == region) {
            return Err(PoissonError::DuplicateRegion(region.name().into()));
        }
        let factor = proportionality_factor(piece.body(), base.body())
            .ok_or_else(|| PoissonError::CannotGlue(region.name().into()))?;
        factors.push((*region, factor));
    }
    if !factors.iter().any(|(r, _)| *r == Region::W) {
        factors.push((Region::W, Poly::one(vars)));
    }
    factors.sort_by_key(|(r, _)| match r {
        Region::UC => 0,
        Region::UGamma => 1,
        Region::W => 2,
    });
    let expression = if factors.len() == 1 && factors[0].1 == Poly::one(vars) {
        "1".to_string()
    } else {
        factors
            .iter()
            .filter(|(_, f)| !f.is_zero())
            .map(|(r, f)| formal_term(f, r.weight_symbol()))
            .collect::<Vec<_>>()
            .join(" + ")
    };
    factors.sort_by_key(|(r, _)| *r);
    Ok(GlueReport {
        factors,
        expression,
        relation: "sigma + lambda + tau = 1",
    })
}

fn formal_term(f: &Poly, symbol: &str) -> String {
    if f.is_constant() {
        let c = f.constant_term();
        if c == Q::from_integer(1.into()) {
            symbol.to_string()
        } else {
            format!("{}*{symbol}", crate::symbolic::fmt_q(&c))
        }
    } else {
        format!("({f})*{symbol}")
    }
}

/// `f` with `piece = f · base`, if it exists as a polynomial.
fn proportionality_factor(piece: &Multivector, base: &Multivector) -> Option<Poly> {
    let vars = base.vars();
    let Some((ix, b)) = base.terms().next() else {
        return piece.is_zero().then(|| Poly::zero(vars));
    };
    let f = piece.coeff(*ix).div_exact(b)?;
    (base.mul_poly(&f) == *piece).then_some(f)
}
