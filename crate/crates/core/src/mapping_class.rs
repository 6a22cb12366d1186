//! First homology of a closed genus-`g` surface as a symplectic lattice, and
//! the action of Dehn twists on it.
//!
//! Classes are integer vectors in the basis `a_1, b_1, …, a_g, b_g` with
//! intersection form `J = diag([[0, 1], [-1, 0]])`, so `⟨a_i, b_i⟩ = 1`.
//! The twist about `c` acts as the transvection `T_c(x) = x + ⟨x, c⟩ c`.
//! All arithmetic is checked; overflow is reported instead of wrapping.

use std::fmt;

use num::Integer;

use crate::error::LatticeError;

fn overflow() -> LatticeError {
    LatticeError::Overflow
}

fn add(a: i64, b: i64) -> Result<i64, LatticeError> {
    a.checked_add(b).ok_or_else(overflow)
}

fn mul(a: i64, b: i64) -> Result<i64, LatticeError> {
    a.checked_mul(b).ok_or_else(overflow)
}

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, LatticeError> {
        let c = rows.first().map(Vec::len).unwrap_or(0);
        if let Some(bad) = rows.iter().find(|r| r.len() != c) {
            return Err(LatticeError::DimensionMismatch {
                expected: c,
                got: bad.len(),
            });
        }
        Ok(IMatrix {
            rows: rows.len(),
            cols: c,
            data: rows.concat(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[i64]>::to_vec).collect()
    }

    pub fn transpose(&self) -> IMatrix {
        let mut t = IMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn neg(&self) -> IMatrix {
        IMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| -v).collect(),
        }
    }

    pub fn mul(&self, other: &IMatrix) -> Result<IMatrix, LatticeError> {
        if self.cols != other.rows {
            return Err(LatticeError::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = IMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = add(out.get(i, j), mul(a, other.get(k, j))?)?;
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[i64]) -> Result<Vec<i64>, LatticeError> {
        if v.len() != self.cols {
            return Err(LatticeError::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        (0..self.rows)
            .map(|i| (0..self.cols).try_fold(0i64, |acc, j| add(acc, mul(self.get(i, j), v[j])?)))
            .collect()
    }
}

impl fmt::Display for IMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .to_rows()
            .iter()
            .map(|r| format!("[{}]", r.iter().map(i64::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// `H_1(Σ_g; ℤ)` with its intersection form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct H1Lattice {
    genus: usize,
}

impl H1Lattice {
    pub fn new(genus: usize) -> Self {
        H1Lattice { genus }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn rank(&self) -> usize {
        2 * self.genus
    }

    pub fn labels(&self) -> Vec<String> {
        (1..=self.genus).flat_map(|i| [format!("a{i}"), format!("b{i}")]).collect()
    }

    pub fn form(&self) -> IMatrix {
        let mut j = IMatrix::zeros(self.rank(), self.rank());
        for i in 0..self.genus {
            j.set(2 * i, 2 * i + 1, 1);
            j.set(2 * i + 1, 2 * i, -1);
        }
        j
    }

    fn check(&self, v: &[i64]) -> Result<(), LatticeError> {
        if v.len() != self.rank() {
            return Err(LatticeError::DimensionMismatch {
                expected: self.rank(),
                got: v.len(),
            });
        }
        Ok(())
    }

    /// `⟨u, v⟩ = uᵀ J v`.
    pub fn intersection(&self, u: &[i64], v: &[i64]) -> Result<i64, LatticeError> {
        self.check(u)?;
        self.check(v)?;
        let mut s = 0i64;
        for i in 0..self.genus {
            s = add(s, mul(u[2 * i], v[2 * i + 1])?)?;
            s = add(s, -mul(u[2 * i + 1], v[2 * i])?)?;
        }
        Ok(s)
    }

    /// `MᵀJM = J`.
    pub fn is_symplectic(&self, m: &IMatrix) -> bool {
        if m.rows() != self.rank() || m.cols() != self.rank() {
            return false;
        }
        let j = self.form();
        match m.transpose().mul(&j).and_then(|t| t.mul(m)) {
            Ok(p) => p == j,
            Err(_) => false,
        }
    }

    /// Basis vector `a_i` (1-based handle index).
    pub fn a(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.rank()];
        v[2 * (i - 1)] = 1;
        v
    }

    /// Basis vector `b_i` (1-based handle index).
    pub fn b(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.rank()];
        v[2 * (i - 1) + 1] = 1;
        v
    }
}

/// Parses a comma-separated integer vector such as `"1,0,-2,0"`.
pub fn parse_curve(text: &str) -> Result<Vec<i64>, String> {
    text.split(',')
        .map(|s| s.trim().parse::<i64>().map_err(|e| format!("bad integer '{}': {e}", s.trim())))
        .collect()
}

pub fn is_primitive(c: &[i64]) -> bool {
    c.iter().fold(0i64, |g, &x| g.gcd(&x)) == 1
}

fn require_primitive(c: &[i64]) -> Result<(), LatticeError> {
    let g = c.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g != 1 {
        return Err(LatticeError::NotPrimitive(g.to_string()));
    }
    Ok(())
}

/// A product of twists `T_{c_1}^{e_1} ⋯ T_{c_l}^{e_l}` with `e_i = ±1`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TwistWord {
    pub letters: Vec<(Vec<i64>, i64)>,
}

impl TwistWord {
    pub fn new(letters: Vec<(Vec<i64>, i64)>) -> Self {
        TwistWord { letters }
    }

    /// Parses `"1,0;0,1^-1"`: letters separated by `;`, optional `^±1`.
    pub fn parse(text: &str) -> Result<Self, String> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(TwistWord::default());
        }
        let letters = text
            .split(';')
            .map(|part| {
                let (curve, exp) = match part.split_once('^') {
                    Some((c, e)) => (c, e.trim().parse::<i64>().map_err(|e| format!("bad exponent: {e}"))?),
                    None => (part, 1),
                };
                Ok((parse_curve(curve)?, exp))
            })
            .collect::<Result<Vec<_>, String>>()?;
        Ok(TwistWord { letters })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &TwistWord) -> TwistWord {
        TwistWord {
            letters: self.letters.iter().chain(&other.letters).cloned().collect(),
        }
    }
}

/// `T_c^e` for `e = ±1`: `x ↦ x + e ⟨x, c⟩ c`.
pub fn twist_power(l: &H1Lattice, c: &[i64], e: i64) -> Result<IMatrix, LatticeError> {
    l.check(c)?;
    require_primitive(c)?;
    if e != 1 && e != -1 {
        return Err(LatticeError::BadExponent(e));
    }
    let n = l.rank();
    let mut m = IMatrix::identity(n);
    for col in 0..n {
        let mut x = vec![0; n];
        x[col] = 1;
        let s = mul(e, l.intersection(&x, c)?)?;
        for row in 0..n {
            m.set(row, col, add(m.get(row, col), mul(s, c[row])?)?);
        }
    }
    Ok(m)
}

/// Matrix of `T_c(x) = x + ⟨x, c⟩ c`.
pub fn dehn_twist_matrix(l: &H1Lattice, c: &[i64]) -> Result<IMatrix, LatticeError> {
    twist_power(l, c, 1)
}

/// Ordered product `M_1 M_2 ⋯ M_l` of the letters' matrices.
pub fn word_matrix(l: &H1Lattice, word: &TwistWord) -> Result<IMatrix, LatticeError> {
    word.letters
        .iter()
        .try_fold(IMatrix::identity(l.rank()), |acc, (c, e)| acc.mul(&twist_power(l, c, *e)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HurwitzReport {
    pub matrix: IMatrix,
    /// The word fixes `c` in homology.
    pub fixes_c: bool,
    /// The word equals `T_c` or `-T_c`.
    pub equals_pm_twist_c: bool,
}

/// Checks the global relation of a Hurwitz system under both readings.
pub fn hurwitz_check(l: &H1Lattice, word: &TwistWord, c: &[i64]) -> Result<HurwitzReport, LatticeError> {
    let matrix = word_matrix(l, word)?;
    let fixes_c = matrix.mul_vec(c)? == c;
    let tc = dehn_twist_matrix(l, c)?;
    let equals_pm_twist_c = matrix == tc || matrix == tc.neg();
    Ok(HurwitzReport {
        matrix,
        fixes_c,
        equals_pm_twist_c,
    })
}

/// Coefficients `λ` with `Σ λ_i u_i = gcd(u)`, chosen deterministically by
/// folding the extended gcd from the lowest index.
fn bezout(u: &[i64]) -> Result<(i64, Vec<i64>), LatticeError> {
    let mut g = 0i64;
    let mut coef = vec![0i64; u.len()];
    for (i, &x) in u.iter().enumerate() {
        if x == 0 {
            continue;
        }
        if g == 0 {
            g = x.abs();
            coef[i] = x.signum();
            continue;
        }
        let e = g.extended_gcd(&x);
        // e.gcd = e.x * g + e.y * x
        for c in coef.iter_mut().take(i) {
            *c = mul(*c, e.x)?;
        }
        coef[i] = e.y;
        g = e.gcd;
    }
    Ok((g, coef))
}

/// Hermite normal form basis of the lattice spanned by `vecs` (rows).
fn hnf_basis(vecs: &[Vec<i64>], n: usize) -> Result<Vec<Vec<i64>>, LatticeError> {
    let mut rows: Vec<Vec<i64>> = vecs.iter().filter(|v| v.iter().any(|&x| x != 0)).cloned().collect();
    let mut basis: Vec<Vec<i64>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for col in 0..n {
        // combine all rows with a nonzero entry in `col` into a single pivot row
        let mut idx: Vec<usize> = (0..rows.len()).filter(|&i| rows[i][col] != 0).collect();
        if idx.is_empty() {
            continue;
        }
        while idx.len() > 1 {
            idx.sort_by_key(|&i| (rows[i][col].abs(), i));
            let p = idx[0];
            for &i in &idx[1..] {
                let q = Integer::div_floor(&rows[i][col], &rows[p][col]);
                for j in 0..n {
                    rows[i][j] = add(rows[i][j], -mul(q, rows[p][j])?)?;
                }
            }
            idx.retain(|&i| rows[i][col] != 0);
        }
        let p = idx[0];
        let mut pivot = rows.remove(p);
        if pivot[col] < 0 {
            pivot.iter_mut().for_each(|x| *x = -*x);
        }
        basis.push(pivot);
        pivots.push(col);
    }
    // reduce entries above pivots into [0, pivot)
    for k in 0..basis.len() {
        let col = pivots[k];
        for i in 0..k {
            let q = Integer::div_floor(&basis[i][col], &basis[k][col]);
            if q != 0 {
                for j in 0..n {
                    basis[i][j] = add(basis[i][j], -mul(q, basis[k][j])?)?;
                }
            }
        }
    }
    Ok(basis)
}

/// `x ↦ x − ⟨x, f⟩ e + ⟨x, e⟩ f`, the projection killing `span{e, f}` when
/// `⟨e, f⟩ = 1`.
fn symplectic_project(l: &H1Lattice, x: &[i64], e: &[i64], f: &[i64]) -> Result<Vec<i64>, LatticeError> {
    let (xf, xe) = (l.intersection(x, f)?, l.intersection(x, e)?);
    (0..x.len())
        .map(|i| add(add(x[i], -mul(xf, e[i])?)?, mul(xe, f[i])?))
        .collect()
}

/// A lattice `f` in `span(candidates)` with `⟨e, f⟩ = 1`.
fn dual_partner(l: &H1Lattice, e: &[i64], candidates: &[Vec<i64>]) -> Result<Vec<i64>, LatticeError> {
    let vals: Vec<i64> = candidates
        .iter()
        .map(|v| l.intersection(e, v))
        .collect::<Result<_, _>>()?;
    let (g, coef) = bezout(&vals)?;
    if g != 1 {
        return Err(LatticeError::NotPrimitive(g.to_string()));
    }
    let mut f = vec![0i64; l.rank()];
    for (c, v) in coef.iter().zip(candidates) {
        for i in 0..f.len() {
            f[i] = add(f[i], mul(*c, v[i])?)?;
        }
    }
    Ok(f)
}

/// The map `H_1(Σ_g) → H_1(Σ_{g−1})` obtained by cutting along `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusReduction {
    /// Partner of `c` with `⟨c, d⟩ = 1`.
    pub d: Vec<i64>,
    /// Symplectic basis `e_1, f_1, …` of the complement of `span{c, d}`.
    pub complement_basis: Vec<Vec<i64>>,
    /// `(2g−2) × 2g` matrix of `x ↦ (⟨x, f_i⟩, −⟨x, e_i⟩)_i`.
    pub matrix: IMatrix,
}

pub fn genus_reduction(l: &H1Lattice, c: &[i64]) -> Result<GenusReduction, LatticeError> {
    if l.genus() == 0 {
        return Err(LatticeError::ZeroGenus);
    }
    l.check(c)?;
    require_primitive(c)?;
    let n = l.rank();
    let units: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    let d = dual_partner(l, c, &units)?;
    let mut current: Vec<Vec<i64>> = units
        .iter()
        .map(|x| symplectic_project(l, x, c, &d))
        .collect::<Result<_, _>>()?;
    let mut complement_basis = Vec::new();
    loop {
        let basis = hnf_basis(&current, n)?;
        if basis.is_empty() {
            break;
        }
        let e = basis[0].clone();
        let f = dual_partner(l, &e, &basis)?;
        current = basis
            .iter()
            .map(|x| symplectic_project(l, x, &e, &f))
            .collect::<Result<_, _>>()?;
        complement_basis.push(e);
        complement_basis.push(f);
    }
    let mut matrix = IMatrix::zeros(n - 2, n);
    for (i, pair) in complement_basis.chunks(2).enumerate() {
        let (e, f) = (&pair[0], &pair[1]);
        for (col, x) in units.iter().enumerate() {
            matrix.set(2 * i, col, l.intersection(x, f)?);
            matrix.set(2 * i + 1, col, -l.intersection(x, e)?);
        }
    }
    Ok(GenusReduction {
        d,
        complement_basis,
        matrix,
    })
}

/// Inclusion `H_1(Σ_g) → H_1(Σ_{g+1})` into the first `2g` coordinates.
pub fn genus_increase(l: &H1Lattice) -> IMatrix {
    let n = l.rank();
    let mut m = IMatrix::zeros(n + 2, n);
    for i in 0..n {
        m.set(i, i, 1);
    }
    m
}

/// Applies a monodromy matrix to a class.
pub fn monodromy_h1_action(m: &IMatrix, alpha: &[i64]) -> Result<Vec<i64>, LatticeError> {
    m.mul_vec(alpha)
}
