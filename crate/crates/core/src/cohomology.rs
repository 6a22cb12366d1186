//! Truncated Poisson cohomology of polynomial multivector fields, and the
//! Thom-class images pushed forward by the anchor.
//!
//! # Grading
//!
//! A basis element `x^m ∂_I` gets degree `deg_w(x^m) − Σ_{i∈I} (w_i − 1)`.
//! For unit weights this is the coefficient degree. If every term of `π` has
//! the same value of `deg_w(π^{ij}) − w_i − w_j + 1` (the shift), then
//! `d_π = [π, ·]` maps block `(p, d)` into `(p + 1, d + shift)` and the
//! complex splits into finite blocks. Otherwise the blocks are filtration
//! levels (all degrees `≤ d`) with the largest shift, and the report says so.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;

use crate::error::{CohomologyError, ExteriorError, LatticeError};
use crate::exterior::{schouten, DiffForm, Indices, Multivector};
use crate::linalg::{sparse_rank, QMatrix};
use crate::mapping_class::{H1Lattice, IMatrix};
use crate::poisson::{anchor_push, jacobi_check, PoissonBivector};
use crate::symbolic::{Monomial, Poly, WeightVector, Q};

/// Default cap on the number of basis elements per block.
pub const DEFAULT_BLOCK_CAP: usize = 20_000;

/// `d_π(A) = [π, A]`.
pub fn lichnerowicz_d(pi: &PoissonBivector, a: &Multivector) -> Multivector {
    schouten(pi.body(), a)
}

/// How `π` interacts with the weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    pub weights: WeightVector,
    pub shift: i64,
    pub homogeneous: bool,
}

impl Grading {
    pub fn of(pi: &PoissonBivector, w: &WeightVector) -> Result<Self, CohomologyError> {
        if w.len() != pi.dim() {
            return Err(CohomologyError::WeightMismatch {
                expected: pi.dim(),
                got: w.len(),
            });
        }
        let ws = w.as_slice();
        let mut shifts = Vec::new();
        for (ix, c) in pi.body().terms() {
            let ij = ix.to_vec();
            let drop = ws[ij[0]] as i64 + ws[ij[1]] as i64 - 1;
            for (m, _) in c.terms() {
                shifts.push(m.weighted_degree(ws) as i64 - drop);
            }
        }
        let shift = shifts.iter().copied().max().unwrap_or(0);
        let homogeneous = shifts.iter().all(|&s| s == shift);
        Ok(Grading {
            weights: w.clone(),
            shift,
            homogeneous,
        })
    }

    fn index_drop(&self, ix: Indices) -> i64 {
        let ws = self.weights.as_slice();
        ix.to_vec().iter().map(|&i| ws[i] as i64 - 1).sum()
    }

    /// Degree of `x^m ∂_I`.
    pub fn degree(&self, ix: Indices, m: &Monomial) -> i64 {
        m.weighted_degree(self.weights.as_slice()) as i64 - self.index_drop(ix)
    }

    /// Smallest degree occurring in grade `p`.
    pub fn min_degree(&self, p: usize) -> i64 {
        Indices::all(self.weights.len(), p)
            .into_iter()
            .map(|ix| -self.index_drop(ix))
            .min()
            .unwrap_or(0)
    }
}

/// Monomials of weighted degree exactly `e`, in increasing monomial order.
pub fn monomials_of_weight(w: &[u32], e: u64) -> Vec<Monomial> {
    fn rec(w: &[u32], i: usize, left: u64, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == w.len() {
            if left == 0 {
                out.push(Monomial::from_exponents(cur));
            }
            return;
        }
        let wi = w[i] as u64;
        for k in 0..=(left / wi) {
            cur[i] = k as u32;
            rec(w, i + 1, left - k * wi, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(w, 0, e, &mut vec![0; w.len()], &mut out);
    out.sort();
    out
}

/// One block of the complex: a monomial basis and the matrix of `d_π` on it.
#[derive(Clone, Debug)]
pub struct GradedBlock {
    pub p: usize,
    pub d: i64,
    pub basis: Vec<(Indices, Monomial)>,
    /// Degree of the target block.
    pub target_d: i64,
    pub target_dim: usize,
    /// Column `j` is `d_π(basis[j])` as sparse `(row, value)` pairs.
    pub columns: Vec<Vec<(usize, Q)>>,
}

impl GradedBlock {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn rank(&self) -> usize {
        sparse_rank(&self.columns)
    }

    /// Dense `target_dim × dim` matrix.
    pub fn dense(&self) -> QMatrix {
        let mut m = QMatrix::zeros(self.target_dim, self.dim());
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                m.set(*i, j, v.clone());
            }
        }
        m
    }

    /// The multivector for a coefficient vector over the basis.
    pub fn element(&self, vars: &crate::symbolic::VarSet, coeffs: &[Q]) -> Multivector {
        let mut out = Multivector::zero(vars, self.p);
        for ((ix, m), c) in self.basis.iter().zip(coeffs) {
            out.add_term(*ix, Poly::term(vars, m.clone(), c.clone()));
        }
        out
    }

    /// Kernel basis of `d_π` on this block.
    pub fn kernel_basis(&self, vars: &crate::symbolic::VarSet) -> Vec<Multivector> {
        self.dense()
            .nullspace()
            .iter()
            .map(|v| self.element(vars, v))
            .collect()
    }
}

/// Basis of block `(p, d)`: exact degree `d` when graded, degrees in
/// `[min, d]` otherwise.
fn block_basis(g: &Grading, p: usize, d: i64, cap: usize) -> Result<Vec<(Indices, Monomial)>, CohomologyError> {
    let n = g.weights.len();
    let lo = if g.homogeneous { d } else { g.min_degree(p) };
    let mut out = Vec::new();
    for ix in Indices::all(n, p) {
        let drop = g.index_drop(ix);
        for deg in lo..=d {
            let e = deg + drop;
            if e < 0 {
                continue;
            }
            for m in monomials_of_weight(g.weights.as_slice(), e as u64) {
                out.push((ix, m));
                if out.len() > cap {
                    return Err(CohomologyError::BlockOverflow {
                        p,
                        d,
                        size: out.len(),
                        cap,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Builds block `(p, d)` of the complex.
pub fn complex_block(
    pi: &PoissonBivector,
    g: &Grading,
    p: usize,
    d: i64,
    cap: usize,
) -> Result<GradedBlock, CohomologyError> {
    let n = pi.dim();
    let vars = pi.vars();
    let basis = block_basis(g, p, d, cap)?;
    let target_d = d + g.shift;
    let target = if p < n {
        block_basis(g, p + 1, target_d, cap)?
    } else {
        Vec::new()
    };
    let index: HashMap<&(Indices, Monomial), usize> = target.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let columns = if p < n {
        basis
            .par_iter()
            .map(|(ix, m)| {
                let a = Multivector::from_terms(vars, p, [(*ix, Poly::term(vars, m.clone(), Q::from_integer(1.into())))]);
                let img = lichnerowicz_d(pi, &a);
                let mut col: Vec<(usize, Q)> = Vec::new();
                for (jx, c) in img.terms() {
                    for (mm, v) in c.terms() {
                        let row = index
                            .get(&(*jx, mm.clone()))
                            .copied()
                            .expect("d_pi maps a block into its target block");
                        col.push((row, v.clone()));
                    }
                }
                col.sort_by_key(|e| e.0);
                col
            })
            .collect()
    } else {
        vec![Vec::new(); basis.len()]
    };
    Ok(GradedBlock {
        p,
        d,
        basis,
        target_d,
        target_dim: target.len(),
        columns,
    })
}

/// `next ∘ block` as sparse columns; zero for a complex.
pub fn compose_blocks(block: &GradedBlock, next: &GradedBlock) -> Vec<Vec<(usize, Q)>> {
    assert_eq!(block.target_dim, next.dim(), "blocks are not consecutive");
    block
        .columns
        .iter()
        .map(|col| {
            let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
            for (k, a) in col {
                for (i, b) in &next.columns[*k] {
                    *acc.entry(*i).or_insert_with(|| Q::from_integer(0.into())) += a * b;
                }
            }
            acc.into_iter().filter(|(_, v)| *v != Q::from_integer(0.into())).collect()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDims {
    pub p: usize,
    pub d: i64,
    pub ker: usize,
    pub im: usize,
    pub h: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    pub cutoff: i64,
    pub blocks: Vec<BlockDims>,
    pub flags: Vec<String>,
}

impl CohomologyReport {
    pub fn block(&self, p: usize, d: i64) -> Option<&BlockDims> {
        self.blocks.iter().find(|b| b.p == p && b.d == d)
    }

    /// `Σ_d dim H^{p,d}` over the reported degrees.
    pub fn total(&self, p: usize) -> usize {
        self.blocks.iter().filter(|b| b.p == p).map(|b| b.h).sum()
    }
}

pub const FLAG_FILTRATION: &str = "pi is not weighted-homogeneous: blocks are filtration levels, not graded pieces";

/// Dimensions of kernel, image and cohomology of every block with degree at
/// most `cutoff`.
pub fn cohomology_dims(
    pi: &PoissonBivector,
    w: &WeightVector,
    cutoff: i64,
    cap: usize,
) -> Result<CohomologyReport, CohomologyError> {
    let jac = jacobi_check(pi);
    if !jac.is_zero() {
        return Err(CohomologyError::NotPoisson(jac.num_terms()));
    }
    let g = Grading::of(pi, w)?;
    let n = pi.dim();
    let mut keys: Vec<(usize, i64)> = Vec::new();
    for p in 0..=n {
        for d in g.min_degree(p)..=cutoff {
            keys.push((p, d));
        }
    }
    // source blocks of images that fall outside the main range
    let mut needed: Vec<(usize, i64)> = keys.clone();
    for &(p, d) in &keys {
        if p > 0 {
            let src = (p - 1, d - g.shift);
            if src.1 >= g.min_degree(p - 1) && !needed.contains(&src) {
                needed.push(src);
            }
        }
    }
    let computed: Vec<((usize, i64), (usize, usize))> = needed
        .par_iter()
        .map(|&(p, d)| {
            let b = complex_block(pi, &g, p, d, cap)?;
            Ok(((p, d), (b.dim(), b.rank())))
        })
        .collect::<Result<_, CohomologyError>>()?;
    let table: HashMap<(usize, i64), (usize, usize)> = computed.into_iter().collect();
    let mut blocks = Vec::new();
    for &(p, d) in &keys {
        let (dim, rank) = table[&(p, d)];
        if dim == 0 {
            continue;
        }
        let ker = dim - rank;
        let im = if p > 0 {
            table.get(&(p - 1, d - g.shift)).map(|x| x.1).unwrap_or(0)
        } else {
            0
        };
        blocks.push(BlockDims {
            p,
            d,
            ker,
            im,
            h: ker - im,
        });
    }
    let mut flags = Vec::new();
    if !g.homogeneous {
        flags.push(FLAG_FILTRATION.to_string());
    }
    Ok(CohomologyReport { cutoff, blocks, flags })
}

/// Direct-sum bookkeeping over regions whose pairwise intersections are
/// declared empty. `nonempty` lists the pairs declared to intersect.
pub fn mayer_vietoris_assemble(
    reports: &[(String, CohomologyReport)],
    nonempty: &[(String, String)],
) -> Result<CohomologyReport, CohomologyError> {
    let has = |r: &str| reports.iter().any(|(name, _)| name == r);
    if let Some((a, b)) = nonempty.iter().find(|(a, b)| has(a) && has(b)) {
        return Err(CohomologyError::NonemptyIntersection(a.clone(), b.clone()));
    }
    let mut sums: BTreeMap<(usize, i64), BlockDims> = BTreeMap::new();
    let mut flags: Vec<String> = Vec::new();
    let mut cutoff = i64::MAX;
    for (_, r) in reports {
        cutoff = cutoff.min(r.cutoff);
        for f in &r.flags {
            if !flags.contains(f) {
                flags.push(f.clone());
            }
        }
        for b in &r.blocks {
            let e = sums.entry((b.p, b.d)).or_insert(BlockDims {
                p: b.p,
                d: b.d,
                ker: 0,
                im: 0,
                h: 0,
            });
            e.ker += b.ker;
            e.im += b.im;
            e.h += b.h;
        }
    }
    if reports.iter().any(|(_, r)| r.cutoff != cutoff) {
        flags.push(format!("regions reported different cutoffs; assembled up to {cutoff}"));
    }
    Ok(CohomologyReport {
        cutoff: if reports.is_empty() { 0 } else { cutoff },
        blocks: sums.into_values().filter(|b| b.d <= cutoff).collect(),
        flags,
    })
}

/// A tubular neighbourhood of a leaf `S`: two transverse covectors, a leaf
/// volume representative, and the formal bump constant `c_S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeafTubeData {
    pub transverse: [DiffForm; 2],
    pub vol_s: DiffForm,
    pub bump: String,
}

impl LeafTubeData {
    pub fn new(t1: DiffForm, t2: DiffForm, vol_s: DiffForm) -> Result<Self, CohomologyError> {
        for t in [&t1, &t2] {
            if t.grade() != 1 {
                return Err(ExteriorError::GradeMismatch { left: t.grade(), right: 1 }.into());
            }
        }
        if vol_s.grade() != 2 {
            return Err(ExteriorError::GradeMismatch {
                left: vol_s.grade(),
                right: 2,
            }
            .into());
        }
        if t1.wedge(&t2)?.is_zero() {
            return Err(CohomologyError::DependentTransversals);
        }
        Ok(LeafTubeData {
            transverse: [t1, t2],
            vol_s,
            bump: "c_S".to_string(),
        })
    }
}

/// `symbol · body`, with notes on how the representative was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalImage {
    pub symbol: String,
    pub body: Multivector,
    pub flags: Vec<String>,
}

impl FormalImage {
    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }
}

impl fmt::Display for FormalImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.body.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "{} * ({})", self.symbol, self.body)
        }
    }
}

pub const FLAG_ANNIHILATED: &str = "a transverse covector is annihilated by the anchor: the representative vanishes identically";
pub const FLAG_TOP_RHS: &str = "top-degree formula is self-referential as printed; its right-hand side is used as the representative";

fn transverse_images(pi: &PoissonBivector, tube: &LeafTubeData) -> (Multivector, Vec<String>) {
    let a = anchor_push(pi, &tube.transverse[0]);
    let b = anchor_push(pi, &tube.transverse[1]);
    let mut flags = Vec::new();
    if a.is_zero() || b.is_zero() {
        flags.push(FLAG_ANNIHILATED.to_string());
    }
    (a.wedge(&b).expect("grade 2 fits"), flags)
}

/// `c_S π̄(τ_1) ∧ π̄(τ_2)`.
pub fn poincare_dual_image(pi: &PoissonBivector, tube: &LeafTubeData) -> FormalImage {
    let (body, flags) = transverse_images(pi, tube);
    FormalImage {
        symbol: tube.bump.clone(),
        body,
        flags,
    }
}

/// `c_S π̄(τ_1) ∧ π̄(τ_2) ∧ π̄(vol_S)`.
pub fn thom_top_image(pi: &PoissonBivector, tube: &LeafTubeData) -> FormalImage {
    let (tt, mut flags) = transverse_images(pi, tube);
    let body = tt.wedge(&anchor_push(pi, &tube.vol_s)).expect("grade 4 fits");
    flags.push(FLAG_TOP_RHS.to_string());
    FormalImage {
        symbol: tube.bump.clone(),
        body,
        flags,
    }
}

/// `Mon_π(α) = c_S π̄(ρ(α)) ∧ π̄(τ_1) ∧ π̄(τ_2)` where `ρ(α) = mono · α` is
/// realised as a 1-form through `basis_forms`.
pub fn mon_pi(
    pi: &PoissonBivector,
    tube: &LeafTubeData,
    alpha: &[i64],
    mono: &IMatrix,
    basis_forms: &[DiffForm],
) -> Result<FormalImage, CohomologyError> {
    let n = alpha.len();
    if n % 2 != 0 {
        return Err(LatticeError::DimensionMismatch {
            expected: n + 1,
            got: n,
        }
        .into());
    }
    let lattice = H1Lattice::new(n / 2);
    if mono.rows() != n || mono.cols() != n {
        return Err(LatticeError::DimensionMismatch {
            expected: n,
            got: mono.rows(),
        }
        .into());
    }
    if basis_forms.len() != n {
        return Err(CohomologyError::BasisMismatch {
            expected: n,
            got: basis_forms.len(),
        });
    }
    if let Some(bad) = basis_forms.iter().find(|f| f.grade() != 1) {
        return Err(ExteriorError::GradeMismatch {
            left: bad.grade(),
            right: 1,
        }
        .into());
    }
    if !lattice.is_symplectic(mono) {
        return Err(LatticeError::NotSymplectic.into());
    }
    let rho = mono.mul_vec(alpha)?;
    let mut form = DiffForm::zero(pi.vars(), 1);
    for (c, b) in rho.iter().zip(basis_forms) {
        form = form.add(&b.scale(&Q::from_integer((*c).into())));
    }
    let (tt, flags) = transverse_images(pi, tube);
    let body = anchor_push(pi, &form).wedge(&tt).expect("grade 3 fits");
    Ok(FormalImage {
        symbol: tube.bump.clone(),
        body,
        flags,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poisson::{build_fr_bivector, CasimirPair};
    use crate::symbolic::{parse_expr, q, VarSet};

    fn v() -> VarSet {
        VarSet::txyz()
    }

    fn p(s: &str) -> Poly {
        parse_expr(s, &v()).unwrap()
    }

    fn biv(comps: &[(usize, usize, &str)]) -> PoissonBivector {
        let c: Vec<_> = comps.iter().map(|(i, j, s)| (*i, *j, p(s))).collect();
        PoissonBivector::from_components(&v(), &c).unwrap()
    }

    fn fold() -> PoissonBivector {
        build_fr_bivector(&CasimirPair::new(p("t"), p("-x^2+y^2+z^2"), p("1")).unwrap())
    }

    fn unit() -> WeightVector {
        WeightVector::uniform(4)
    }

    fn grading(pi: &PoissonBivector) -> Grading {
        Grading::of(pi, &unit()).unwrap()
    }

    fn form(i: usize) -> DiffForm {
        DiffForm::basis(&v(), &[i])
    }

    #[test]
    fn lichnerowicz_examples() {
        let pi = fold();
        assert!(lichnerowicz_d(&pi, &Multivector::scalar(p("t"))).is_zero());
        assert!(lichnerowicz_d(&pi, pi.body()).is_zero());
        let std = biv(&[(0, 1, "1")]);
        // X_x = ∂t, so d_π(x) = -∂t
        assert_eq!(
            lichnerowicz_d(&std, &Multivector::scalar(p("x"))),
            Multivector::monomial(p("-1"), &[0])
        );
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials_of_weight(&[1, 1, 1, 1], 2).len(), 10);
        assert_eq!(monomials_of_weight(&[4, 2, 3, 3], 6).len(), 5);
        assert_eq!(monomials_of_weight(&[1, 1], 0), vec![Monomial::one(2)]);
    }

    #[test]
    fn block_examples() {
        let pi = biv(&[(1, 2, "1")]);
        let g = grading(&pi);
        assert_eq!(g.shift, -1);
        let b0 = complex_block(&pi, &g, 0, 0, DEFAULT_BLOCK_CAP).unwrap();
        assert_eq!(b0.dim(), 1);
        assert_eq!(b0.columns.len(), 1);
        let b1 = complex_block(&pi, &g, 0, 1, DEFAULT_BLOCK_CAP).unwrap();
        assert_eq!(b1.target_dim, 4);
        let ker = b1.kernel_basis(&v());
        let ker: Vec<Multivector> = ker.into_iter().collect();
        assert_eq!(ker.len(), 2);
        assert!(ker.contains(&Multivector::scalar(p("t"))));
        assert!(ker.contains(&Multivector::scalar(p("z"))));
    }

    #[test]
    fn zero_structure_has_full_cohomology() {
        let pi = PoissonBivector::new(Multivector::zero(&v(), 2)).unwrap();
        let r = cohomology_dims(&pi, &unit(), 2, DEFAULT_BLOCK_CAP).unwrap();
        let binom = [1, 4, 6, 4, 1];
        let mons = [1, 4, 10];
        for b in &r.blocks {
            assert_eq!(b.h, binom[b.p] * mons[b.d as usize]);
            assert_eq!(b.im, 0);
        }
        assert_eq!(r.blocks.len(), 15);
    }

    #[test]
    fn casimirs_of_constant_structure() {
        let pi = biv(&[(1, 2, "1")]);
        let r = cohomology_dims(&pi, &unit(), 1, DEFAULT_BLOCK_CAP).unwrap();
        assert_eq!(r.block(0, 0).unwrap().h, 1);
        assert_eq!(r.block(0, 1).unwrap().h, 2);
    }

    #[test]
    fn non_poisson_is_rejected() {
        let pi = PoissonBivector::new(fold().body().add(biv(&[(0, 1, "1")]).body())).unwrap();
        assert_eq!(
            cohomology_dims(&pi, &unit(), 1, DEFAULT_BLOCK_CAP),
            Err(CohomologyError::NotPoisson(1))
        );
    }

    #[test]
    fn cap_is_enforced() {
        let pi = fold();
        assert!(matches!(
            cohomology_dims(&pi, &unit(), 3, 10),
            Err(CohomologyError::BlockOverflow { .. })
        ));
    }

    #[test]
    fn consecutive_blocks_compose_to_zero() {
        let pi = fold();
        let g = grading(&pi);
        for p in 0..3 {
            for d in 0..3 {
                let b = complex_block(&pi, &g, p, d, DEFAULT_BLOCK_CAP).unwrap();
                let next = complex_block(&pi, &g, p + 1, d + g.shift, DEFAULT_BLOCK_CAP).unwrap();
                assert!(compose_blocks(&b, &next).iter().all(Vec::is_empty));
            }
        }
    }

    #[test]
    fn weighted_cusp_is_homogeneous() {
        let pi = build_fr_bivector(&CasimirPair::new(p("t"), p("x^3+t*x+y^2-z^2"), p("1")).unwrap());
        let g = Grading::of(&pi, &WeightVector::new(vec![4, 2, 3, 3]).unwrap()).unwrap();
        assert!(g.homogeneous);
        assert_eq!(g.shift, -1);
        let r = cohomology_dims(&pi, &g.weights, 4, DEFAULT_BLOCK_CAP).unwrap();
        assert!(r.flags.is_empty());
        // Casimirs t and t^k sit at degrees 4, 8, …; constants at 0
        assert_eq!(r.block(0, 0).unwrap().h, 1);
        assert_eq!(r.block(0, 4).unwrap().h, 1);
    }

    #[test]
    fn mixed_weights_flag_filtration() {
        let pi = biv(&[(1, 2, "1 + z")]);
        let r = cohomology_dims(&pi, &unit(), 1, DEFAULT_BLOCK_CAP).unwrap();
        assert_eq!(r.flags, vec![FLAG_FILTRATION.to_string()]);
        for b in &r.blocks {
            assert!(b.ker >= b.im);
        }
    }

    #[test]
    fn mayer_vietoris_examples() {
        let mk = |h: usize| CohomologyReport {
            cutoff: 1,
            blocks: vec![BlockDims { p: 0, d: 0, ker: h, im: 0, h }],
            flags: vec![],
        };
        let one = mayer_vietoris_assemble(&[("U_C".into(), mk(2))], &[]).unwrap();
        assert_eq!(one, mk(2));
        let two = mayer_vietoris_assemble(&[("U_C".into(), mk(2)), ("U_Gamma".into(), mk(3))], &[]).unwrap();
        assert_eq!(two.block(0, 0).unwrap().h, 5);
        assert_eq!(
            mayer_vietoris_assemble(
                &[("U_C".into(), mk(2)), ("U_Gamma".into(), mk(3))],
                &[("U_C".into(), "U_Gamma".into())]
            ),
            Err(CohomologyError::NonemptyIntersection("U_C".into(), "U_Gamma".into()))
        );
    }

    fn symplectic_tube() -> (PoissonBivector, LeafTubeData) {
        let pi = biv(&[(0, 1, "1"), (2, 3, "1")]);
        let tube = LeafTubeData::new(form(2), form(3), DiffForm::basis(&v(), &[0, 1])).unwrap();
        (pi, tube)
    }

    #[test]
    fn thom_images_on_symplectic_model() {
        let (pi, tube) = symplectic_tube();
        let pd = poincare_dual_image(&pi, &tube);
        assert_eq!(pd.body, Multivector::basis(&v(), &[2, 3]));
        assert!(pd.flags.is_empty());
        assert_eq!(pd.to_string(), "c_S * ((1) * d/dy^d/dz)");
        let top = thom_top_image(&pi, &tube);
        assert_eq!(top.body, Multivector::basis(&v(), &[0, 1, 2, 3]));
        let zero = PoissonBivector::new(Multivector::zero(&v(), 2)).unwrap();
        assert!(poincare_dual_image(&zero, &tube).is_zero());
        assert!(thom_top_image(&zero, &tube).is_zero());
    }

    #[test]
    fn mon_pi_on_symplectic_model() {
        let (pi, tube) = symplectic_tube();
        let ta = IMatrix::from_rows(&[vec![1, -1], vec![0, 1]]).unwrap();
        let basis = [form(0), form(1)];
        let r = mon_pi(&pi, &tube, &[1, 0], &ta, &basis).unwrap();
        assert_eq!(r.body, Multivector::monomial(p("-1"), &[1, 2, 3]));
        let r = mon_pi(&pi, &tube, &[0, 1], &ta, &basis).unwrap();
        let expect = Multivector::basis(&v(), &[0, 2, 3]).add(&Multivector::basis(&v(), &[1, 2, 3]));
        assert_eq!(r.body, expect);
        let id = IMatrix::identity(2);
        let plain = mon_pi(&pi, &tube, &[0, 1], &id, &basis).unwrap();
        assert_eq!(plain.body, Multivector::basis(&v(), &[0, 2, 3]));
    }

    #[test]
    fn mon_pi_errors() {
        let (pi, tube) = symplectic_tube();
        let basis = [form(0), form(1)];
        let bad = IMatrix::from_rows(&[vec![2, 0], vec![0, 1]]).unwrap();
        assert_eq!(
            mon_pi(&pi, &tube, &[1, 0], &bad, &basis),
            Err(CohomologyError::Lattice(LatticeError::NotSymplectic))
        );
        assert_eq!(
            mon_pi(&pi, &tube, &[1, 0], &IMatrix::identity(2), &basis[..1]),
            Err(CohomologyError::BasisMismatch { expected: 2, got: 1 })
        );
    }

    #[test]
    fn fr_tube_images_vanish() {
        let pair = CasimirPair::new(p("t"), p("-x^2+y^2+z^2"), p("1")).unwrap();
        let pi = build_fr_bivector(&pair);
        let tube = LeafTubeData::new(DiffForm::exact(&pair.f), DiffForm::exact(&pair.g), DiffForm::basis(&v(), &[2, 3])).unwrap();
        let pd = poincare_dual_image(&pi, &tube);
        assert!(pd.is_zero());
        assert_eq!(pd.flags, vec![FLAG_ANNIHILATED.to_string()]);
        assert!(thom_top_image(&pi, &tube).is_zero());
        let m = mon_pi(&pi, &tube, &[1, 0], &IMatrix::identity(2), &[form(1), form(2)]).unwrap();
        assert!(m.is_zero());
    }

    #[test]
    fn dependent_transversals_are_rejected() {
        assert_eq!(
            LeafTubeData::new(form(2), form(2).scale(&q(3)), DiffForm::basis(&v(), &[0, 1])),
            Err(CohomologyError::DependentTransversals)
        );
    }
}
