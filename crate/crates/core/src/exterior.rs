//! Multivector fields and differential forms with polynomial coefficients.
//!
//! # Conventions
//!
//! Both kinds are stored on the basis of strictly increasing index sets, so
//! `∂_y ∧ ∂_x` is kept as `-(∂_x ∧ ∂_y)`.
//!
//! The Schouten bracket is computed in the odd-variable calculus: a
//! `p`-vector is a polynomial in commuting `x_i` and anticommuting
//! `ζ_i = ∂/∂x_i`, and `∂^L_i` is the *left* derivative in `ζ_i` (move `ζ_i`
//! to the front, then drop it). With that derivative
//!
//! ```text
//! [A, B] = Σ_i ∂^L_i A · ∂_{x_i} B + (-1)^{ab} ∂^L_i B · ∂_{x_i} A
//! ```
//!
//! which gives `[X, f] = X(f)`, the usual Lie bracket on vector fields,
//! `[A, B] = (-1)^{ab} [B, A]`, and, for the anchor convention used in
//! [`crate::poisson`], `[π, f] = -X_f` and `π̄(dη) = -[π, π̄(η)]`.
//! The graded Jacobi identity in this convention reads
//! `[A,[B,C]] = (-1)^{a+1} [[A,B],C] + (-1)^{(a-1)(b-1)} [B,[A,C]]`.
//!
//! Forms pair with multivectors through `⟨dx^I, ∂_J⟩ = δ_{IJ}` on sorted
//! index sets, i.e. the determinant of the elementary pairings.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use num::One;

use crate::error::ExteriorError;
use crate::symbolic::{Poly, RationalFn, VarSet, Q};

/// Strictly increasing set of variable indices, stored as a bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Indices(u16);

impl Indices {
    pub const EMPTY: Indices = Indices(0);

    pub fn single(i: usize) -> Self {
        Indices(1 << i)
    }

    pub fn from_mask(mask: u16) -> Self {
        Indices(mask)
    }

    pub fn mask(self) -> u16 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn to_vec(self) -> Vec<usize> {
        (0..16).filter(|&i| self.contains(i)).collect()
    }

    /// Sorts `idx` into an index set and returns the permutation sign, or
    /// `None` when an index repeats.
    pub fn from_unsorted(idx: &[usize]) -> Option<(Indices, i8)> {
        let mut mask = 0u16;
        let mut sign = 1i8;
        for (k, &i) in idx.iter().enumerate() {
            if mask & (1 << i) != 0 {
                return None;
            }
            mask |= 1 << i;
            if idx[..k].iter().filter(|&&j| j > i).count() % 2 == 1 {
                sign = -sign;
            }
        }
        Some((Indices(mask), sign))
    }

    /// `e_self ∧ e_other = sign · e_union`, or `None` if they share an index.
    pub fn wedge(self, other: Indices) -> Option<(Indices, i8)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut swaps = 0;
        for j in other.to_vec() {
            swaps += (self.0 >> (j + 1)).count_ones();
        }
        Some((Indices(self.0 | other.0), if swaps % 2 == 0 { 1 } else { -1 }))
    }

    /// Left derivative in `ζ_i`: `∂^L_i ζ_I = (-1)^k ζ_{I∖i}` where `k` is the
    /// number of indices in `I` below `i`.
    pub fn left_derivative(self, i: usize) -> Option<(Indices, i8)> {
        if !self.contains(i) {
            return None;
        }
        let below = (self.0 & ((1u16 << i) - 1)).count_ones();
        Some((Indices(self.0 & !(1 << i)), if below % 2 == 0 { 1 } else { -1 }))
    }

    /// All index sets of size `p` out of `n`, in lexicographic order.
    pub fn all(n: usize, p: usize) -> Vec<Indices> {
        let mut out: Vec<Indices> = (0u32..(1 << n))
            .filter(|m| m.count_ones() as usize == p)
            .map(|m| Indices(m as u16))
            .collect();
        out.sort();
        out
    }
}

impl Ord for Indices {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.to_vec().cmp(&other.to_vec()))
    }
}

impl PartialOrd for Indices {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Marker for the two exterior algebras.
pub trait Kind: Clone + fmt::Debug + PartialEq + Eq {
    const NAME: &'static str;
    fn basis_label(var: &str) -> String;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vectors;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Forms;

impl Kind for Vectors {
    const NAME: &'static str = "multivector";
    fn basis_label(var: &str) -> String {
        format!("d/d{var}")
    }
}

impl Kind for Forms {
    const NAME: &'static str = "form";
    fn basis_label(var: &str) -> String {
        format!("d{var}")
    }
}

/// Homogeneous element of an exterior algebra over polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graded<K: Kind> {
    vars: VarSet,
    grade: usize,
    coeffs: BTreeMap<Indices, Poly>,
    _kind: PhantomData<K>,
}

/// Multivector field `Σ a_I ∂_I`.
pub type Multivector = Graded<Vectors>;
/// Differential form `Σ a_I dx^I`.
pub type DiffForm = Graded<Forms>;

impl<K: Kind> Graded<K> {
    pub fn zero(vars: &VarSet, grade: usize) -> Self {
        assert!(grade <= vars.len(), "grade above dimension");
        Graded {
            vars: vars.clone(),
            grade,
            coeffs: BTreeMap::new(),
            _kind: PhantomData,
        }
    }

    /// Degree-zero element.
    pub fn scalar(f: Poly) -> Self {
        let mut out = Self::zero(f.vars(), 0);
        out.add_term(Indices::EMPTY, f);
        out
    }

    /// `coef · e_{i_1} ∧ … ∧ e_{i_p}` for indices in any order.
    pub fn monomial(coef: Poly, idx: &[usize]) -> Self {
        let vars = coef.vars().clone();
        let mut out = Self::zero(&vars, idx.len());
        if let Some((ix, s)) = Indices::from_unsorted(idx) {
            out.add_term(ix, if s > 0 { coef } else { -coef });
        }
        out
    }

    /// Basis element with coefficient one.
    pub fn basis(vars: &VarSet, idx: &[usize]) -> Self {
        Self::monomial(Poly::one(vars), idx)
    }

    pub fn from_terms<I: IntoIterator<Item = (Indices, Poly)>>(vars: &VarSet, grade: usize, it: I) -> Self {
        let mut out = Self::zero(vars, grade);
        for (ix, c) in it {
            assert_eq!(ix.len(), grade, "index set size must equal the grade");
            out.add_term(ix, c);
        }
        out
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Indices, &Poly)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, ix: Indices) -> Poly {
        self.coeffs.get(&ix).cloned().unwrap_or_else(|| Poly::zero(&self.vars))
    }

    /// Coefficient of `e_{i_1} ∧ … ∧ e_{i_p}` for indices in any order.
    pub fn component(&self, idx: &[usize]) -> Poly {
        match Indices::from_unsorted(idx) {
            Some((ix, s)) => {
                let c = self.coeff(ix);
                if s > 0 {
                    c
                } else {
                    -c
                }
            }
            None => Poly::zero(&self.vars),
        }
    }

    pub fn add_term(&mut self, ix: Indices, c: Poly) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&ix) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.coeffs.remove(&ix);
                }
            }
            None => {
                self.coeffs.insert(ix, c);
            }
        }
    }

    fn check_same(&self, other: &Self) {
        assert!(self.vars == other.vars, "variable set mismatch");
        assert_eq!(self.grade, other.grade, "adding elements of different grade");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same(other);
        let mut out = self.clone();
        for (ix, c) in &other.coeffs {
            out.add_term(*ix, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| -c)
    }

    pub fn scale(&self, c: &Q) -> Self {
        self.map(|p| p.scale(c))
    }

    pub fn mul_poly(&self, f: &Poly) -> Self {
        self.map(|p| p * f)
    }

    fn map(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        let mut out = Self::zero(&self.vars, self.grade);
        for (ix, c) in &self.coeffs {
            out.add_term(*ix, f(c));
        }
        out
    }

    /// Exterior product; fails when the grades add up past the dimension.
    pub fn wedge(&self, other: &Self) -> Result<Self, ExteriorError> {
        if self.vars != other.vars {
            return Err(ExteriorError::VariableMismatch);
        }
        let g = self.grade + other.grade;
        if g > self.dim() {
            return Err(ExteriorError::GradeOverflow {
                grade: g,
                dim: self.dim(),
            });
        }
        Ok(self.wedge_unchecked(other))
    }

    fn wedge_unchecked(&self, other: &Self) -> Self {
        let g = (self.grade + other.grade).min(self.dim());
        let mut out = Self::zero(&self.vars, g);
        for (i, a) in &self.coeffs {
            for (j, b) in &other.coeffs {
                if let Some((k, s)) = i.wedge(*j) {
                    let prod = a * b;
                    out.add_term(k, if s > 0 { prod } else { -prod });
                }
            }
        }
        out
    }

    /// Applies `∂/∂x_i` to every coefficient.
    pub fn coeff_derivative(&self, i: usize) -> Self {
        self.map(|c| c.derivative(i))
    }

    /// Left derivative in the odd variable `ζ_i`; grade drops by one.
    pub fn odd_left_derivative(&self, i: usize) -> Self {
        assert!(self.grade > 0);
        let mut out = Self::zero(&self.vars, self.grade - 1);
        for (ix, c) in &self.coeffs {
            if let Some((r, s)) = ix.left_derivative(i) {
                out.add_term(r, if s > 0 { c.clone() } else { -c });
            }
        }
        out
    }

    /// Evaluates every coefficient at a rational point.
    pub fn eval(&self, point: &[Q]) -> BTreeMap<Indices, Q> {
        self.coeffs
            .iter()
            .map(|(ix, c)| (*ix, c.eval(point)))
            .filter(|(_, v)| !num::Zero::is_zero(v))
            .collect()
    }
}

impl<K: Kind> fmt::Display for Graded<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (ix, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if ix.is_empty() {
                write!(f, "({c})")?;
            } else {
                let basis: Vec<String> = ix
                    .to_vec()
                    .into_iter()
                    .map(|i| K::basis_label(self.vars.name(i)))
                    .collect();
                write!(f, "({c}) * {}", basis.join("^"))?;
            }
        }
        Ok(())
    }
}

impl Multivector {
    /// Vector field from its components `X^i`.
    pub fn vector_field(comps: &[Poly]) -> Self {
        let vars = comps[0].vars().clone();
        assert_eq!(comps.len(), vars.len());
        Self::from_terms(
            &vars,
            1,
            comps.iter().enumerate().map(|(i, c)| (Indices::single(i), c.clone())),
        )
    }

    /// Components of a grade-1 field.
    pub fn components(&self) -> Vec<Poly> {
        assert_eq!(self.grade, 1);
        (0..self.dim()).map(|i| self.coeff(Indices::single(i))).collect()
    }

    /// Directional derivative `X(f)` of a vector field.
    pub fn apply(&self, f: &Poly) -> Poly {
        assert_eq!(self.grade, 1);
        let mut out = Poly::zero(&self.vars);
        for (ix, c) in &self.coeffs {
            let i = ix.to_vec()[0];
            out += &(c * &f.derivative(i));
        }
        out
    }
}

impl DiffForm {
    /// `df = Σ ∂_i f dx^i`.
    pub fn exact(f: &Poly) -> Self {
        derham_d(&Self::scalar(f.clone())).expect("grade 0 < n")
    }
}

/// Exterior product of two elements of the same kind.
pub fn wedge<K: Kind>(a: &Graded<K>, b: &Graded<K>) -> Result<Graded<K>, ExteriorError> {
    a.wedge(b)
}

/// Schouten–Nijenhuis bracket in the left-derivative convention described in
/// the module documentation. Results that would exceed the top grade vanish
/// and are returned as the zero element of top grade.
pub fn schouten(a: &Multivector, b: &Multivector) -> Multivector {
    assert!(a.vars == b.vars, "variable set mismatch");
    let (pa, pb) = (a.grade, b.grade);
    let n = a.dim();
    if pa + pb == 0 {
        return Multivector::zero(&a.vars, 0);
    }
    let g = pa + pb - 1;
    if g > n {
        return Multivector::zero(&a.vars, n);
    }
    let sign_ab = if (pa * pb) % 2 == 0 { Q::one() } else { -Q::one() };
    let mut out = Multivector::zero(&a.vars, g);
    for i in 0..n {
        if pa > 0 {
            let term = a.odd_left_derivative(i).wedge_unchecked(&b.coeff_derivative(i));
            if term.grade == g {
                out = out.add(&term);
            }
        }
        if pb > 0 {
            let term = b.odd_left_derivative(i).wedge_unchecked(&a.coeff_derivative(i));
            if term.grade == g {
                out = out.add(&term.scale(&sign_ab));
            }
        }
    }
    out
}

/// de Rham differential; defined for grade below the dimension.
pub fn derham_d(w: &DiffForm) -> Result<DiffForm, ExteriorError> {
    let n = w.dim();
    if w.grade >= n {
        return Err(ExteriorError::GradeOverflow {
            grade: w.grade + 1,
            dim: n,
        });
    }
    let mut out = DiffForm::zero(&w.vars, w.grade + 1);
    for (ix, c) in &w.coeffs {
        for i in 0..n {
            let dc = c.derivative(i);
            if dc.is_zero() {
                continue;
            }
            if let Some((k, s)) = Indices::single(i).wedge(*ix) {
                out.add_term(k, if s > 0 { dc } else { -dc });
            }
        }
    }
    Ok(out)
}

/// Full contraction `⟨ω, A⟩` of a form and a multivector of equal grade.
pub fn pair(w: &DiffForm, a: &Multivector) -> Result<Poly, ExteriorError> {
    if w.grade != a.grade {
        return Err(ExteriorError::GradeMismatch {
            left: w.grade,
            right: a.grade,
        });
    }
    if w.vars != a.vars {
        return Err(ExteriorError::VariableMismatch);
    }
    let mut out = Poly::zero(&w.vars);
    for (ix, c) in &w.coeffs {
        if let Some(d) = a.coeffs.get(ix) {
            out += &(c * d);
        }
    }
    Ok(out)
}

/// Whether a volume form's conformal factor was certified sign-definite or
/// only attested by the caller.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Nonvanishing {
    Positive,
    Negative,
    Attested,
}

impl Nonvanishing {
    pub fn label(self) -> &'static str {
        match self {
            Nonvanishing::Positive => "positive",
            Nonvanishing::Negative => "negative",
            Nonvanishing::Attested => "attested",
        }
    }
}

/// Volume form `μ = (1/k) dx^1 ∧ … ∧ dx^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolumeForm {
    k: Poly,
    status: Nonvanishing,
}

impl VolumeForm {
    pub fn new(k: Poly) -> Result<Self, ExteriorError> {
        if k.is_zero() {
            return Err(ExteriorError::ZeroVolumeFactor);
        }
        let status = match k.certified_sign() {
            Some(1) => Nonvanishing::Positive,
            Some(_) => Nonvanishing::Negative,
            None => Nonvanishing::Attested,
        };
        Ok(VolumeForm { k, status })
    }

    /// The standard volume form (`k = 1`).
    pub fn standard(vars: &VarSet) -> Self {
        VolumeForm {
            k: Poly::one(vars),
            status: Nonvanishing::Positive,
        }
    }

    pub fn factor(&self) -> &Poly {
        &self.k
    }

    pub fn status(&self) -> Nonvanishing {
        self.status
    }
}

/// `div_μ X = Σ ∂_i X^i - X(k)/k`, so that `L_X μ = div_μ(X) μ`.
pub fn divergence(x: &Multivector, mu: &VolumeForm) -> RationalFn {
    assert_eq!(x.grade, 1, "divergence of a vector field");
    let comps = x.components();
    let mut div = Poly::zero(&x.vars);
    for (i, c) in comps.iter().enumerate() {
        div += &c.derivative(i);
    }
    let k = &mu.k;
    let num = &(&div * k) - &x.apply(k);
    RationalFn::new(num, k.clone()).expect("volume factor is nonzero")
}

/// Vector field with rational-function components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalVectorField {
    vars: VarSet,
    comps: Vec<RationalFn>,
}

impl RationalVectorField {
    pub fn new(vars: &VarSet, comps: Vec<RationalFn>) -> Self {
        assert_eq!(comps.len(), vars.len());
        RationalVectorField {
            vars: vars.clone(),
            comps,
        }
    }

    pub fn from_polynomial(x: &Multivector) -> Self {
        Self::new(x.vars(), x.components().into_iter().map(RationalFn::from_poly).collect())
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn components(&self) -> &[RationalFn] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(RationalFn::is_zero)
    }

    pub fn neg(&self) -> Self {
        Self::new(&self.vars, self.comps.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(
            &self.vars,
            self.comps.iter().zip(&other.comps).map(|(a, b)| a - b).collect(),
        )
    }

    /// Polynomial field, when every denominator is one.
    pub fn as_polynomial(&self) -> Option<Multivector> {
        let comps: Option<Vec<Poly>> = self.comps.iter().map(|c| c.as_poly().cloned()).collect();
        comps.map(|c| Multivector::vector_field(&c))
    }
}

impl fmt::Display for RationalVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .comps
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c}) * d/d{}", self.vars.name(i)))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
