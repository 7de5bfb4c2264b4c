//! Linear algebra over prime fields: ranks, conjugated Jordan forms of
//! nilpotents, restriction to invariant subspaces, and nilpotent censuses.
//!
//! Matrices act on column vectors, so `N e_j` is column `j` of `N`.

use std::collections::BTreeMap;

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::budget::Budget;
use crate::combinat::{Partition, Tableau};
use crate::error::{invalid, Error, Result};
use crate::flags::Flag;
use crate::qalg::{gl_count, qfactorial, qfactorial_product, QPoly, QRat};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Largest modulus accepted; keeps products of two residues inside `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

pub(crate) fn check_prime(p: u64) -> Result<()> {
    if p > MAX_PRIME || !is_prime(p) {
        return invalid(format!("{p} is not a supported prime"));
    }
    Ok(())
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat: a^{p-2}.
    let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// A dense matrix over `𝔽_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GFMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl GFMatrix {
    /// Entries may be any integers; they are reduced mod `p`.
    pub fn new(p: u64, rows: Vec<Vec<i64>>) -> Result<Self> {
        check_prime(p)?;
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return invalid("matrix rows have different lengths");
        }
        let data = rows
            .iter()
            .flatten()
            .map(|&x| x.rem_euclid(p as i64) as u64)
            .collect();
        Ok(GFMatrix {
            p,
            rows: r,
            cols: c,
            data,
        })
    }

    pub(crate) fn from_data(p: u64, rows: usize, cols: usize, data: Vec<u64>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        GFMatrix { p, rows, cols, data }
    }

    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        GFMatrix::from_data(p, rows, cols, vec![0; rows * cols])
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = GFMatrix::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// The permutation matrix with `ẘ e_j = e_{w(j)}` for a 1-indexed `w`.
    pub fn permutation(p: u64, w: &[usize]) -> Result<Self> {
        crate::combinat::check_permutation(w)?;
        let n = w.len();
        let mut m = GFMatrix::zeros(p, n, n);
        for (j, &wj) in w.iter().enumerate() {
            m.data[(wj - 1) * n + j] = 1;
        }
        Ok(m)
    }

    /// The nilpotent with Jordan blocks of the given sizes, each block mapping
    /// `e_{s+1} ↦ e_s`.
    pub fn jordan_nilpotent(p: u64, blocks: &[usize]) -> Self {
        let n: usize = blocks.iter().sum();
        let mut m = GFMatrix::zeros(p, n, n);
        let mut s = 0;
        for &b in blocks {
            for t in 1..b {
                m.data[(s + t - 1) * n + s + t] = 1;
            }
            s += b;
        }
        m
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = GFMatrix::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul(&self, o: &GFMatrix) -> Result<GFMatrix> {
        if self.cols != o.rows || self.p != o.p {
            return Err(Error::SizeMismatch(format!(
                "{}×{} times {}×{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let p = self.p;
        let mut out = GFMatrix::zeros(p, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    let v = &mut out.data[i * o.cols + j];
                    *v = (*v + a * o.get(k, j)) % p;
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (a, b)| (acc + a * b) % self.p)
            })
            .collect()
    }

    pub fn pow(&self, k: usize) -> Result<GFMatrix> {
        if !self.is_square() {
            return invalid("power of a non-square matrix");
        }
        let mut acc = GFMatrix::identity(self.p, self.rows);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (GFMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = rref_in_place(&mut m.data, m.rows, m.cols, m.p);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> GFMatrix {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j));
            }
        }
        GFMatrix::from_data(self.p, rows.len(), cols.len(), data)
    }

    pub fn inverse(&self) -> Result<GFMatrix> {
        if !self.is_square() {
            return Err(Error::Singular);
        }
        let n = self.rows;
        let mut aug = vec![0u64; n * 2 * n];
        for i in 0..n {
            aug[i * 2 * n..i * 2 * n + n].copy_from_slice(self.row(i));
            aug[i * 2 * n + n + i] = 1;
        }
        let piv = rref_in_place(&mut aug, n, 2 * n, self.p);
        if piv.len() < n || piv[n - 1] >= n {
            return Err(Error::Singular);
        }
        let mut out = GFMatrix::zeros(self.p, n, n);
        for i in 0..n {
            out.data[i * n..(i + 1) * n].copy_from_slice(&aug[i * 2 * n + n..(i + 1) * 2 * n]);
        }
        Ok(out)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Basis of `{x : A x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<u64>> {
        let (r, piv) = self.rref();
        let p = self.p;
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u64; self.cols];
                v[f] = 1;
                for (i, &pc) in piv.iter().enumerate() {
                    v[pc] = (p - r.get(i, f)) % p;
                }
                v
            })
            .collect()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.is_square() && self.pow(self.rows).is_ok_and(|m| m.is_zero())
    }

    /// `g N g⁻¹`.
    pub fn conjugate_by(&self, g: &GFMatrix) -> Result<GFMatrix> {
        g.mul(self)?.mul(&g.inverse()?)
    }
}

impl Serialize for GFMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("GFMatrix", 2)?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("rows", &self.to_rows())?;
        st.end()
    }
}

/// In-place reduced row echelon form of a row-major `rows × cols` block.
fn rref_in_place(a: &mut [u64], rows: usize, cols: usize, p: u64) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        if piv != r {
            for j in 0..cols {
                a.swap(piv * cols + j, r * cols + j);
            }
        }
        let inv = inv_mod(a[r * cols + c], p);
        for j in 0..cols {
            a[r * cols + j] = a[r * cols + j] * inv % p;
        }
        for i in 0..rows {
            let f = a[i * cols + c];
            if i == r || f == 0 {
                continue;
            }
            for j in 0..cols {
                a[i * cols + j] = (a[i * cols + j] + (p - f) * a[r * cols + j]) % p;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

// ---------------------------------------------------------------------------

/// A subspace of `𝔽_p^n`, stored as the reduced row echelon matrix whose rows
/// are a basis (the transpose of reduced column echelon form). The form is
/// canonical, so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    basis: GFMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(p: u64, n: usize, vectors: &[Vec<u64>]) -> Self {
        let data: Vec<u64> = vectors.iter().flatten().map(|x| x % p).collect();
        let m = GFMatrix::from_data(p, vectors.len(), n, data);
        let (r, pivots) = m.rref();
        let basis = r.submatrix(&(0..pivots.len()).collect::<Vec<_>>(), &(0..n).collect::<Vec<_>>());
        Subspace { basis, pivots }
    }

    pub fn zero(p: u64, n: usize) -> Self {
        Subspace::span(p, n, &[])
    }

    pub fn full(p: u64, n: usize) -> Self {
        Subspace::coordinate(p, n, &(0..n).collect::<Vec<_>>())
    }

    /// `⟨e_i : i ∈ idx⟩` for 0-based indices.
    pub fn coordinate(p: u64, n: usize, idx: &[usize]) -> Self {
        let vs: Vec<Vec<u64>> = idx
            .iter()
            .map(|&i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        Subspace::span(p, n, &vs)
    }

    pub fn p(&self) -> u64 {
        self.basis.p
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis(&self) -> Vec<Vec<u64>> {
        self.basis.to_rows()
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[u64]) -> Option<Vec<u64>> {
        let p = self.p();
        let c: Vec<u64> = self.pivots.iter().map(|&j| v[j] % p).collect();
        let mut w = vec![0u64; self.ambient_dim()];
        for (i, &ci) in c.iter().enumerate() {
            for (j, x) in w.iter_mut().enumerate() {
                *x = (*x + ci * self.basis.get(i, j)) % p;
            }
        }
        (w.iter().zip(v).all(|(a, b)| *a == b % p)).then_some(c)
    }

    pub fn contains_vec(&self, v: &[u64]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains(&self, o: &Subspace) -> bool {
        o.basis().iter().all(|v| self.contains_vec(v))
    }

    pub fn sum(&self, o: &Subspace) -> Subspace {
        let mut vs = self.basis();
        vs.extend(o.basis());
        Subspace::span(self.p(), self.ambient_dim(), &vs)
    }

    pub fn intersect(&self, o: &Subspace) -> Subspace {
        let (p, n) = (self.p(), self.ambient_dim());
        let (a, b) = (self.basis(), o.basis());
        let (r, s) = (a.len(), b.len());
        // Columns a_i and −b_j; a kernel vector (x, y) gives Σ x_i a_i ∈ both.
        let mut m = GFMatrix::zeros(p, n, r + s);
        for k in 0..n {
            for i in 0..r {
                m.set(k, i, a[i][k]);
            }
            for j in 0..s {
                m.set(k, r + j, (p - b[j][k]) % p);
            }
        }
        let vs: Vec<Vec<u64>> = m
            .nullspace()
            .iter()
            .map(|x| {
                let mut v = vec![0u64; n];
                for i in 0..r {
                    for k in 0..n {
                        v[k] = (v[k] + x[i] * a[i][k]) % p;
                    }
                }
                v
            })
            .collect();
        Subspace::span(p, n, &vs)
    }

    /// `A(W)`.
    pub fn image(&self, a: &GFMatrix) -> Subspace {
        let vs: Vec<Vec<u64>> = self.basis().iter().map(|v| a.apply(v)).collect();
        Subspace::span(self.p(), a.nrows(), &vs)
    }

    /// `g W` for invertible `g`.
    pub fn translate(&self, g: &GFMatrix) -> Subspace {
        self.image(g)
    }
}

impl Serialize for Subspace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Subspace", 2)?;
        st.serialize_field("ambient_dim", &self.ambient_dim())?;
        st.serialize_field("basis", &self.basis())?;
        st.end()
    }
}

/// All `r`-dimensional subspaces of `𝔽_p^m`, as reduced echelon bases, in
/// lexicographic order of pivot sets and then of free entries.
pub fn all_subspaces(p: u64, m: usize, r: usize) -> Vec<Subspace> {
    let mut out = Vec::new();
    if r > m {
        return out;
    }
    for piv in combinations(m, r) {
        // Free slots: row i, column c > piv[i], c not a pivot.
        let slots: Vec<(usize, usize)> = (0..r)
            .flat_map(|i| {
                let piv = &piv;
                (piv[i] + 1..m)
                    .filter(move |c| !piv.contains(c))
                    .map(move |c| (i, c))
            })
            .collect();
        let total = (p as u128).pow(slots.len() as u32);
        for code in 0..total {
            let mut x = code;
            let mut vs = vec![vec![0u64; m]; r];
            for (i, &c) in piv.iter().enumerate() {
                vs[i][c] = 1;
            }
            for &(i, c) in &slots {
                vs[i][c] = (x % p as u128) as u64;
                x /= p as u128;
            }
            out.push(Subspace::span(p, m, &vs));
        }
    }
    out
}

pub(crate) fn combinations(m: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for c in start..m {
            if m - c < r - cur.len() {
                break;
            }
            cur.push(c);
            go(c + 1, m, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, m, r, &mut Vec::new(), &mut out);
    out
}

/// All subspaces `W` with `lo ⊆ W ⊆ hi` and `dim W = d`.
pub fn subspaces_between(lo: &Subspace, hi: &Subspace, d: usize) -> Vec<Subspace> {
    if !hi.contains(lo) || d < lo.dim() || d > hi.dim() {
        return Vec::new();
    }
    let (p, n) = (hi.p(), hi.ambient_dim());
    // Complement of lo inside hi: basis vectors of hi not in the running span.
    let mut span = lo.clone();
    let mut comp = Vec::new();
    for v in hi.basis() {
        if !span.contains_vec(&v) {
            span = span.sum(&Subspace::span(p, n, &[v.clone()]));
            comp.push(v);
        }
    }
    let lo_basis = lo.basis();
    all_subspaces(p, comp.len(), d - lo.dim())
        .into_iter()
        .map(|s| {
            let mut vs = lo_basis.clone();
            for row in s.basis() {
                let mut v = vec![0u64; n];
                for (c, &x) in row.iter().enumerate() {
                    for k in 0..n {
                        v[k] = (v[k] + x * comp[c][k]) % p;
                    }
                }
                vs.push(v);
            }
            Subspace::span(p, n, &vs)
        })
        .collect()
}

// ---------------------------------------------------------------------------

/// `JF(N)`: the conjugate of the Jordan block sizes, via
/// `λ_i = rank(N^{i−1}) − rank(N^i)`.
pub fn jordan_partition(n: &GFMatrix) -> Result<Partition> {
    if !n.is_square() {
        return invalid("Jordan form of a non-square matrix");
    }
    let mut parts = Vec::new();
    let mut prev_rank = n.nrows();
    let mut power = GFMatrix::identity(n.p(), n.nrows());
    for _ in 0..n.nrows() {
        if prev_rank == 0 {
            break;
        }
        power = power.mul(n)?;
        let r = power.rank();
        if r == prev_rank {
            return Err(Error::NotNilpotent);
        }
        parts.push(prev_rank - r);
        prev_rank = r;
    }
    if prev_rank != 0 {
        return Err(Error::NotNilpotent);
    }
    Partition::new(parts)
}

/// The matrix of `N|_W` in the echelon basis of `W`.
pub fn restrict(n: &GFMatrix, w: &Subspace) -> Result<GFMatrix> {
    let b = w.basis();
    let d = b.len();
    let mut a = GFMatrix::zeros(n.p(), d, d);
    for (j, v) in b.iter().enumerate() {
        let c = w
            .coords(&n.apply(v))
            .ok_or_else(|| Error::Invalid("subspace is not invariant".into()))?;
        for (i, x) in c.into_iter().enumerate() {
            a.set(i, j, x);
        }
    }
    Ok(a)
}

/// `JF(N; F)`: the tableau with `T⁽ⁱ⁾ = JF(N|_{F_i})`.
pub fn jf_tableau(n: &GFMatrix, f: &Flag) -> Result<Tableau> {
    let steps = f.steps();
    for i in 1..steps.len() {
        if !steps[i - 1].contains(&steps[i].image(n)) {
            return Err(Error::NotCompatible(format!("N(F_{i}) ⊄ F_{}", i - 1)));
        }
    }
    let chain = steps
        .iter()
        .map(|s| jordan_partition(&restrict(n, s)?))
        .collect::<Result<Vec<_>>>()?;
    let t = Tableau::from_chain(&chain)
        .map_err(|e| Error::Internal(format!("flag gave a non-semistandard chain: {e}")))?;
    Ok(t)
}

/// Every `n × n` matrix over `𝔽_p`, in lexicographic order of row-major entries.
pub(crate) fn for_each_matrix(p: u64, rows: usize, cols: usize, mut f: impl FnMut(&GFMatrix)) {
    let cells = rows * cols;
    let mut m = GFMatrix::zeros(p, rows, cols);
    loop {
        f(&m);
        let mut k = cells;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            m.data[k] += 1;
            if m.data[k] < p {
                break;
            }
            m.data[k] = 0;
        }
    }
}

/// `λ ↦ #{N ∈ 𝔤𝔩_n(𝔽_p) nilpotent : JF(N) = λ}` by exhaustive enumeration.
pub fn nilpotent_census_all(n: usize, p: u64, budget: Budget) -> Result<BTreeMap<Partition, u64>> {
    check_prime(p)?;
    budget.check_pow("nilpotent census", p, n * n)?;
    let mut out = BTreeMap::new();
    for_each_matrix(p, n, n, |m| {
        if let Ok(l) = jordan_partition(m) {
            *out.entry(l).or_insert(0) += 1;
        }
    });
    Ok(out)
}

pub fn nilpotent_census(n: usize, p: u64, lambda: &Partition) -> Result<u64> {
    if lambda.size() != n {
        return Err(Error::SizeMismatch(format!("{lambda} is not a partition of {n}")));
    }
    Ok(nilpotent_census_all(n, p, Budget::current())?
        .get(lambda)
        .copied()
        .unwrap_or(0))
}

/// `q^{−n²+n+2n(λ)} (1 − q)^{n−λ₁} [n]!_q / ∏ [λ_i − λ_{i+1}]!_q`.
pub fn nilpotent_count_formula(n: usize, lambda: &Partition) -> Result<QRat> {
    if lambda.size() != n {
        return Err(Error::SizeMismatch(format!("{lambda} is not a partition of {n}")));
    }
    let num = &QPoly::one_minus_q_pow(n - lambda.part(0)) * &qfactorial(n);
    let den = qfactorial_product(lambda.gaps());
    let e = -((n * n) as i64) + n as i64 + 2 * lambda.n_stat() as i64;
    Ok(&QRat::new(num, den)? * &QRat::q_pow(e))
}

/// `|Stab_{GL_n}(N)|` for `JF(N) = λ`:
/// `∏_i |k|^{(λ₁+⋯+λ_{i−1}+λ_{i+1})(λ_i−λ_{i+1})} |GL_{λ_i−λ_{i+1}}|`.
pub fn stabilizer_size_formula(lambda: &Partition) -> QRat {
    let mut acc = QRat::one();
    let mut before = 0;
    for i in 0..lambda.len() {
        let g = lambda.part(i) - lambda.part(i + 1);
        let e = (before + lambda.part(i + 1)) * g;
        acc = &acc * &(&QRat::q_pow(-(e as i64)) * &gl_count(g));
        before += lambda.part(i);
    }
    acc
}
