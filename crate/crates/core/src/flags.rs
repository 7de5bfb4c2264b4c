//! Partial flags over `𝔽_p`, relative position, the canonical permutations
//! `ŵ_M`, the pattern `𝔫_M`, and flag / orbit / double-coset counts.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::budget::Budget;
use crate::combinat::{check_permutation, Composition, NatMatrix, Partition};
use crate::error::{invalid, Error, Result};
use crate::kernel;
use crate::gflin::{check_prime, jordan_partition, subspaces_between, GFMatrix, Subspace};
use crate::par;
use crate::qalg::{flag_variety_count, parabolic_count, qfactorial_product, QPoly, QRat};
use crate::whittaker::whittaker_coeff;

/// `0 = F_0 ⊆ F_1 ⊆ ⋯ ⊆ F_k = 𝔽_p^n` with `dim F_i − dim F_{i−1} = α_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flag {
    alpha: Composition,
    steps: Vec<Subspace>,
}

impl Flag {
    pub fn new(alpha: Composition, steps: Vec<Subspace>) -> Result<Self> {
        let sums = alpha.partial_sums();
        if steps.len() != sums.len() {
            return invalid(format!("a flag of type {alpha} has {} steps", sums.len()));
        }
        let n = alpha.size();
        for (i, s) in steps.iter().enumerate() {
            if s.ambient_dim() != n || s.dim() != sums[i] {
                return invalid(format!("step {i} has the wrong dimension"));
            }
            if i > 0 && !s.contains(&steps[i - 1]) {
                return invalid(format!("F_{} ⊄ F_{i}", i - 1));
            }
        }
        Ok(Flag { alpha, steps })
    }

    /// `F_i = ⟨g e_1, …, g e_{α_1+⋯+α_i}⟩`, i.e. `g · E_id`.
    pub fn from_matrix(alpha: &Composition, g: &GFMatrix) -> Result<Self> {
        if !g.is_invertible() || g.nrows() != alpha.size() {
            return Err(Error::Singular);
        }
        let n = alpha.size();
        let cols: Vec<Vec<u64>> = (0..n).map(|j| g.column(j)).collect();
        let steps = alpha
            .partial_sums()
            .iter()
            .map(|&s| Subspace::span(g.p(), n, &cols[..s]))
            .collect();
        Ok(Flag {
            alpha: alpha.clone(),
            steps,
        })
    }

    pub fn alpha(&self) -> &Composition {
        &self.alpha
    }

    pub fn steps(&self) -> &[Subspace] {
        &self.steps
    }

    pub fn step(&self, i: usize) -> &Subspace {
        &self.steps[i]
    }

    pub fn n(&self) -> usize {
        self.alpha.size()
    }

    pub fn translate(&self, g: &GFMatrix) -> Flag {
        Flag {
            alpha: self.alpha.clone(),
            steps: self.steps.iter().map(|s| s.translate(g)).collect(),
        }
    }

    /// Whether `N(F_i) ⊆ F_{i−1}` for all `i`.
    pub fn strictly_compatible(&self, n: &GFMatrix) -> bool {
        (1..self.steps.len()).all(|i| self.steps[i - 1].contains(&self.steps[i].image(n)))
    }
}

impl Serialize for Flag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Flag", 2)?;
        st.serialize_field("type", self.alpha.parts())?;
        st.serialize_field("steps", &self.steps.iter().map(|x| x.basis()).collect::<Vec<_>>())?;
        st.end()
    }
}

/// `Ě_w`: `F_i = ⟨e_{w(1)}, …, e_{w(α_1+⋯+α_i)}⟩` for a 1-indexed permutation.
pub fn coordinate_flag(alpha: &Composition, w: &[usize], p: u64) -> Result<Flag> {
    check_prime(p)?;
    check_permutation(w)?;
    if w.len() != alpha.size() {
        return Err(Error::SizeMismatch(format!(
            "permutation of {} letters for a flag in dimension {}",
            w.len(),
            alpha.size()
        )));
    }
    let n = w.len();
    let steps = alpha
        .partial_sums()
        .iter()
        .map(|&s| {
            let idx: Vec<usize> = w[..s].iter().map(|&x| x - 1).collect();
            Subspace::coordinate(p, n, &idx)
        })
        .collect();
    Ok(Flag {
        alpha: alpha.clone(),
        steps,
    })
}

pub fn identity_perm(n: usize) -> Vec<usize> {
    (1..=n).collect()
}

/// The matrix `M` with `dim(F_i ∩ F′_j) = Σ_{i′≤i, j′≤j} M_{i′j′}`.
pub fn relative_position(f: &Flag, g: &Flag) -> Result<NatMatrix> {
    if f.n() != g.n() || f.steps[0].p() != g.steps[0].p() {
        return Err(Error::SizeMismatch("flags live in different spaces".into()));
    }
    let (k, l) = (f.alpha.len(), g.alpha.len());
    let mut d = vec![vec![0usize; l + 1]; k + 1];
    for i in 1..=k {
        for j in 1..=l {
            d[i][j] = f.steps[i].intersect(&g.steps[j]).dim();
        }
    }
    let mut m = NatMatrix::zeros(k, l);
    for i in 1..=k {
        for j in 1..=l {
            let v = d[i][j] + d[i - 1][j - 1] - d[i - 1][j] - d[i][j - 1];
            m.set(i - 1, j - 1, v);
        }
    }
    Ok(m)
}

/// The label of the double coset `P_α g P_β`, from ranks of the lower-left
/// block submatrices of `g`.
pub fn coset_label(g: &GFMatrix, alpha: &Composition, beta: &Composition) -> Result<NatMatrix> {
    let n = g.nrows();
    if alpha.size() != n || beta.size() != n {
        return Err(Error::SizeMismatch("compositions do not match the matrix".into()));
    }
    if !g.is_invertible() {
        return Err(Error::Singular);
    }
    let (a, b) = (alpha.partial_sums(), beta.partial_sums());
    let (k, l) = (alpha.len(), beta.len());
    // rank of g restricted to rows > a_i and columns ≤ b_j
    let r = |i: usize, j: usize| -> usize {
        let rows: Vec<usize> = (a[i]..n).collect();
        let cols: Vec<usize> = (0..b[j]).collect();
        g.submatrix(&rows, &cols).rank()
    };
    let mut rk = vec![vec![0usize; l + 1]; k + 1];
    for (i, row) in rk.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = r(i, j);
        }
    }
    let mut m = NatMatrix::zeros(k, l);
    for i in 1..=k {
        for j in 1..=l {
            let v = rk[i - 1][j] + rk[i][j - 1] - rk[i][j] - rk[i - 1][j - 1];
            m.set(i - 1, j - 1, v);
        }
    }
    Ok(m)
}

/// `ŵ_M`, reading `M` row-major and placing a copy of `I_{M_{ij}}` with its
/// lower-right corner at `(α_1+⋯+α_{i−1} + M_{i1}+⋯+M_{ij}, β_1+⋯+β_{j−1} + M_{1j}+⋯+M_{ij})`.
pub fn canonical_perm(m: &NatMatrix) -> Vec<usize> {
    let (a, b) = (m.row_sums().partial_sums(), m.col_sums().partial_sums());
    let n = m.total();
    let mut w = vec![0usize; n];
    let mut col_acc = vec![0usize; m.l()];
    for i in 0..m.k() {
        let mut row_acc = 0;
        for j in 0..m.l() {
            let v = m.get(i, j);
            row_acc += v;
            col_acc[j] += v;
            let (r, c) = (a[i] + row_acc, b[j] + col_acc[j]);
            for t in 0..v {
                // 1-indexed: entry at (r − t, c − t) means w(c − t) = r − t.
                w[c - t - 1] = r - t;
            }
        }
    }
    w
}

/// Free positions of a pattern of `n × n` matrices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZeroPattern {
    n: usize,
    free: Vec<(usize, usize)>,
}

impl ZeroPattern {
    pub fn new(n: usize, free: Vec<(usize, usize)>) -> Self {
        ZeroPattern { n, free }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// 0-based `(row, col)` positions, row-major.
    pub fn free_positions(&self) -> &[(usize, usize)] {
        &self.free
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn contains(&self, r: usize, c: usize) -> bool {
        self.free.contains(&(r, c))
    }

    /// The matrix with the given values at the free positions.
    pub fn fill(&self, p: u64, values: &[u64]) -> GFMatrix {
        let mut m = GFMatrix::zeros(p, self.n, self.n);
        for (&(r, c), &v) in self.free.iter().zip(values) {
            m.set(r, c, v);
        }
        m
    }
}

impl Serialize for ZeroPattern {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ZeroPattern", 2)?;
        st.serialize_field("n", &self.n)?;
        let one: Vec<[usize; 2]> = self.free.iter().map(|&(r, c)| [r + 1, c + 1]).collect();
        st.serialize_field("free_positions", &one)?;
        st.end()
    }
}

fn inverse_perm(w: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; w.len()];
    for (j, &x) in w.iter().enumerate() {
        inv[x - 1] = j + 1;
    }
    inv
}

fn pattern_with(m: &NatMatrix, strict: bool) -> ZeroPattern {
    let w = canonical_perm(m);
    let winv = inverse_perm(&w);
    let ba = m.row_sums().block_of_each();
    let bb = m.col_sums().block_of_each();
    let n = w.len();
    let ok = |x: usize, y: usize| if strict { x < y } else { x <= y };
    let mut free = Vec::new();
    for r in 0..n {
        for s in 0..n {
            if ok(ba[r], ba[s]) && ok(bb[winv[r] - 1], bb[winv[s] - 1]) {
                free.push((r, s));
            }
        }
    }
    ZeroPattern { n, free }
}

/// `𝔫_M = 𝔫_α ∩ ŵ_M 𝔫_β ŵ_M⁻¹`: nilpotents strictly compatible with both
/// `E_id ∈ Fl_α` and `E_{ŵ_M} ∈ Fl_β`.
pub fn nm_pattern(m: &NatMatrix) -> ZeroPattern {
    pattern_with(m, true)
}

/// The pattern of `P_α ∩ ŵ_M P_β ŵ_M⁻¹`, the stabilizer of `(E_id, E_{ŵ_M})`.
pub fn stabilizer_pattern(m: &NatMatrix) -> ZeroPattern {
    pattern_with(m, false)
}

/// `|X_M| = q^{−Σ_{i′≤i, j<j′} M_{ij} M_{i′j′}} ∏[α_i]!_q / ∏[M_{ij}]!_q`,
/// the number of `F′ ∈ Fl_β` in position `M` relative to `E_id ∈ Fl_α`.
pub fn orbit_size_formula(m: &NatMatrix) -> QRat {
    let mut e = 0;
    for i in 0..m.k() {
        for j in 0..m.l() {
            for i2 in 0..=i {
                for j2 in j + 1..m.l() {
                    e += m.get(i, j) * m.get(i2, j2);
                }
            }
        }
    }
    let num = qfactorial_product(m.row_sums().parts().iter().copied());
    let den = qfactorial_product(m.entries());
    &QRat::new(num, den).expect("nonzero") * &QRat::q_pow(-(e as i64))
}

/// `|P_α ŵ_M P_β| = q^{−n² + Σ_{i<i′, j<j′} M_{ij}M_{i′j′}} (1−q)^n ∏[α_i]! ∏[β_j]! / ∏[M_{ij}]!`.
pub fn double_coset_size_formula(m: &NatMatrix) -> QRat {
    let n = m.total();
    let e = -((n * n) as i64) + m.free_dim() as i64;
    let num = &(&QPoly::one_minus_q_pow(n) * &qfactorial_product(m.row_sums().parts().iter().copied()))
        * &qfactorial_product(m.col_sums().parts().iter().copied());
    let den = qfactorial_product(m.entries());
    &QRat::new(num, den).expect("nonzero") * &QRat::q_pow(e)
}

/// Size of the double coset `S_α w S_β` in `S_n`: `∏α_i! ∏β_j! / ∏M_{ij}!`.
pub fn sym_double_coset_size(m: &NatMatrix) -> BigInt {
    let fact = |x: usize| (1..=x).fold(BigInt::one(), |a, k| a * BigInt::from(k));
    let num = m
        .row_sums()
        .parts()
        .iter()
        .chain(m.col_sums().parts())
        .fold(BigInt::one(), |a, &x| a * fact(x));
    let den = m.entries().fold(BigInt::one(), |a, x| a * fact(x));
    num / den
}

fn int_value(f: &QRat, p: u64) -> Result<u128> {
    let v = f.eval_inv(p)?;
    if !v.is_integer() {
        return Err(Error::Internal(format!("{f} is not integral at q = 1/{p}")));
    }
    Ok(v.to_integer().to_u128().unwrap_or(u128::MAX))
}

/// Every flag of type `α` in `𝔽_p^n`.
pub fn all_flags(alpha: &Composition, p: u64, budget: Budget) -> Result<Vec<Flag>> {
    let n = alpha.size();
    enumerate_compatible_flags_with(&GFMatrix::zeros(p, n, n), alpha, budget)
}

/// Every `F ∈ Fl_α(𝔽_p)` with `N(F_i) ⊆ F_{i−1}`, chosen top-down: `F_{i−1}`
/// ranges over subspaces between `N(F_i)` and `F_i`.
pub fn enumerate_compatible_flags(n: &GFMatrix, alpha: &Composition) -> Result<Vec<Flag>> {
    enumerate_compatible_flags_with(n, alpha, Budget::current())
}

pub fn enumerate_compatible_flags_with(
    n: &GFMatrix,
    alpha: &Composition,
    budget: Budget,
) -> Result<Vec<Flag>> {
    check_prime(n.p())?;
    if !n.is_square() || n.nrows() != alpha.size() {
        return Err(Error::SizeMismatch("flag type does not match the matrix".into()));
    }
    if !n.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    let bound = int_value(&flag_variety_count(alpha), n.p())?;
    budget.check("compatible flag enumeration", alpha.e2_stat(), bound)?;
    let (p, dim) = (n.p(), n.nrows());
    let sums = alpha.partial_sums();
    let k = alpha.len();
    let top = Subspace::full(p, dim);
    if k == 0 {
        return Ok(vec![Flag {
            alpha: alpha.clone(),
            steps: vec![top],
        }]);
    }

    fn go(
        i: usize,
        n: &GFMatrix,
        sums: &[usize],
        chain: &mut Vec<Subspace>,
        out: &mut Vec<Flag>,
        alpha: &Composition,
    ) {
        // chain holds F_k, …, F_i; choose F_{i−1}.
        let fi = chain.last().unwrap().clone();
        let lo = fi.image(n);
        for w in subspaces_between(&lo, &fi, sums[i - 1]) {
            chain.push(w);
            if i == 1 {
                let steps: Vec<Subspace> = chain.iter().rev().cloned().collect();
                out.push(Flag {
                    alpha: alpha.clone(),
                    steps,
                });
            } else {
                go(i - 1, n, sums, chain, out, alpha);
            }
            chain.pop();
        }
    }

    let first = subspaces_between(&top.image(n), &top, sums[k - 1]);
    let parts = par::map(first, |w| {
        let mut out = Vec::new();
        let mut chain = vec![top.clone(), w];
        if k == 1 {
            out.push(Flag {
                alpha: alpha.clone(),
                steps: chain.into_iter().rev().collect(),
            });
        } else {
            go(k - 1, n, &sums, &mut chain, &mut out, alpha);
        }
        out
    });
    let mut out: Vec<Flag> = parts.into_iter().flatten().collect();
    out.sort();
    Ok(out)
}

/// `λ ↦ #{N ∈ 𝔫_α(𝔽_p) : JF(N) = λ}`.
pub fn nalpha_census_all(alpha: &Composition, p: u64, budget: Budget) -> Result<BTreeMap<Partition, u64>> {
    check_prime(p)?;
    let m = NatMatrix::diagonal(alpha);
    let pat = nm_pattern(&m);
    let sets = vec![(0..alpha.size()).collect::<Vec<usize>>()];
    let spec = kernel::CensusSpec {
        n: alpha.size(),
        p,
        free: pat.free_positions(),
        sets: &sets,
    };
    let hist = kernel::census(&spec, kernel::Strategy::Auto, budget)?;
    Ok(hist.into_iter().map(|(k, c)| (kernel::unpack(k[0]), c as u64)).collect())
}

pub fn nilpotent_in_nalpha_census(alpha: &Composition, lambda: &Partition, p: u64) -> Result<u64> {
    if alpha.size() != lambda.size() {
        return Err(Error::SizeMismatch(format!("{lambda} vs {alpha}")));
    }
    Ok(nalpha_census_all(alpha, p, Budget::current())?
        .get(lambda)
        .copied()
        .unwrap_or(0))
}

/// The closed form `q^{−C(n,2)+n(λ)} (1−q)^{n−λ₁} ∏[α_i]!_q / ∏[λ_i−λ_{i+1}]!_q · [x^α]W_λ`
/// for `#{N ∈ 𝔫_α : JF(N) = λ}`.
pub fn nalpha_census_formula(alpha: &Composition, lambda: &Partition) -> Result<QRat> {
    let n = alpha.size();
    let w = whittaker_coeff(lambda, alpha)?;
    let num = &(&QPoly::one_minus_q_pow(n - lambda.part(0)) * &qfactorial_product(alpha.parts().iter().copied())) * &w;
    let den = qfactorial_product(lambda.gaps());
    let e = lambda.n_stat() as i64 - crate::combinat::binom2(n) as i64;
    Ok(&QRat::new(num, den)? * &QRat::q_pow(e))
}

/// `M ↦ #{g ∈ GL_n(𝔽_p) : P_α g P_β has label M}`.
pub fn double_coset_census(
    alpha: &Composition,
    beta: &Composition,
    p: u64,
    budget: Budget,
) -> Result<BTreeMap<NatMatrix, u64>> {
    check_prime(p)?;
    let n = alpha.size();
    budget.check_pow("GL_n census", p, n * n)?;
    let mut out = BTreeMap::new();
    let mut err = None;
    crate::gflin::for_each_matrix(p, n, n, |g| {
        if err.is_some() || !g.is_invertible() {
            return;
        }
        match coset_label(g, alpha, beta) {
            Ok(m) => *out.entry(m).or_insert(0) += 1,
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// `M ↦ #{F′ ∈ Fl_β : relpos(E_id, F′) = M}`, with `E_id ∈ Fl_α`.
pub fn orbit_census(
    alpha: &Composition,
    beta: &Composition,
    p: u64,
    budget: Budget,
) -> Result<BTreeMap<NatMatrix, u64>> {
    let n = alpha.size();
    let e = coordinate_flag(alpha, &identity_perm(n), p)?;
    let mut out = BTreeMap::new();
    for f in all_flags(beta, p, budget)? {
        *out.entry(relative_position(&e, &f)?).or_insert(0) += 1;
    }
    Ok(out)
}

/// `|Y_M| = |X_M| · |P_β|`, checked as an identity of rational functions.
pub fn double_coset_factorization_holds(m: &NatMatrix) -> bool {
    double_coset_size_formula(m) == &orbit_size_formula(m) * &parabolic_count(&m.col_sums())
}

/// `q^{n(λ)−n(α)} · #{compatible flags}` at `q = 1/p`.
pub fn flag_count_coefficient(n: &GFMatrix, alpha: &Composition) -> Result<BigRational> {
    let lambda = jordan_partition(n)?;
    let cnt = enumerate_compatible_flags(n, alpha)?.len();
    let e = lambda.n_stat() as i64 - alpha.n_stat() as i64;
    Ok(BigRational::from_integer(BigInt::from(cnt)) * QRat::q_pow(e).eval_inv(n.p())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nm(rows: &[&[usize]]) -> NatMatrix {
        NatMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn c(v: &[usize]) -> Composition {
        Composition::new(v.to_vec())
    }

    fn int(x: u64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }

    #[test]
    fn canonical_perm_examples() {
        assert_eq!(canonical_perm(&nm(&[&[1, 1], &[2, 1]])), vec![1, 3, 4, 2, 5]);
        assert_eq!(canonical_perm(&nm(&[&[0, 2], &[3, 0]])), vec![3, 4, 5, 1, 2]);
        assert_eq!(canonical_perm(&NatMatrix::diagonal(&c(&[2, 0, 3]))), identity_perm(5));
        let w = [3, 1, 4, 2];
        assert_eq!(canonical_perm(&NatMatrix::permutation(&w).unwrap()), w.to_vec());
    }

    #[test]
    fn coordinate_flag_examples() {
        let f = coordinate_flag(&c(&[3, 2]), &[1, 3, 4, 2, 5], 2).unwrap();
        assert_eq!(f.step(1), &Subspace::coordinate(2, 5, &[0, 2, 3]));
        let g = coordinate_flag(&c(&[1, 1, 1, 1]), &[3, 4, 1, 2], 2).unwrap();
        assert_eq!(g.step(1), &Subspace::coordinate(2, 4, &[2]));
        assert_eq!(g.step(2), &Subspace::coordinate(2, 4, &[2, 3]));
        assert_eq!(g.step(3), &Subspace::coordinate(2, 4, &[0, 2, 3]));
        let id = coordinate_flag(&c(&[2, 3]), &identity_perm(5), 3).unwrap();
        assert_eq!(id.step(1), &Subspace::coordinate(3, 5, &[0, 1]));
    }

    #[test]
    fn relative_position_examples() {
        let a = c(&[2, 3]);
        let f = coordinate_flag(&a, &identity_perm(5), 2).unwrap();
        assert_eq!(relative_position(&f, &f).unwrap(), NatMatrix::diagonal(&a));
        let g = coordinate_flag(&c(&[3, 2]), &[1, 3, 4, 2, 5], 2).unwrap();
        assert_eq!(relative_position(&f, &g).unwrap(), nm(&[&[1, 1], &[2, 1]]));
        let flags = all_flags(&c(&[1, 1]), 2, Budget::current()).unwrap();
        assert_eq!(flags.len(), 3);
        let e = coordinate_flag(&c(&[1, 1]), &[1, 2], 2).unwrap();
        for h in flags.iter().filter(|h| **h != e) {
            assert_eq!(relative_position(&e, h).unwrap(), nm(&[&[0, 1], &[1, 0]]));
        }
    }

    #[test]
    fn coset_label_of_canonical_perm() {
        for n in 0..=5 {
            for m in crate::combinat::nat_matrices_of_size(n) {
                let w = canonical_perm(&m);
                let g = GFMatrix::permutation(2, &w).unwrap();
                assert_eq!(coset_label(&g, &m.row_sums(), &m.col_sums()).unwrap(), m);
            }
        }
        let a = c(&[2, 2]);
        assert_eq!(coset_label(&GFMatrix::identity(3, 4), &a, &a).unwrap(), NatMatrix::diagonal(&a));
        assert_eq!(
            coset_label(&GFMatrix::zeros(2, 2, 2), &c(&[1, 1]), &c(&[1, 1])),
            Err(Error::Singular)
        );
    }

    #[test]
    fn pattern_examples() {
        let p = nm_pattern(&nm(&[&[1, 1], &[2, 1]]));
        assert_eq!(p.free_positions(), &[(0, 4)]);
        let p = nm_pattern(&NatMatrix::permutation(&[3, 4, 1, 2]).unwrap());
        assert_eq!(p.free_positions(), &[(0, 1), (2, 3)]);
        let a = c(&[2, 1, 3]);
        let p = nm_pattern(&NatMatrix::diagonal(&a));
        assert_eq!(p.dim(), a.e2_stat());
        let blocks = a.block_of_each();
        assert!(p.free_positions().iter().all(|&(r, s)| blocks[r] < blocks[s]));
        for n in 0..=5 {
            for m in crate::combinat::nat_matrices_of_size(n) {
                assert_eq!(nm_pattern(&m).dim(), m.free_dim());
            }
        }
    }

    #[test]
    fn count_examples() {
        let m = nm(&[&[1, 1], &[2, 1]]);
        let x = orbit_size_formula(&m);
        let expect = &QRat::q_pow(-5) * &QRat::from_poly(QPoly::from_i64(&[1, 2, 2, 1]));
        assert_eq!(x, expect);
        assert_eq!(sym_double_coset_size(&m), BigInt::from(72));
        let d = nm(&[&[4]]);
        assert_eq!(orbit_size_formula(&d), QRat::one());
        assert_eq!(double_coset_size_formula(&d), crate::qalg::gl_count(4));
        for n in 0..=5 {
            for m in crate::combinat::nat_matrices_of_size(n) {
                assert!(double_coset_factorization_holds(&m), "{m}");
            }
        }
    }

    #[test]
    fn double_cosets_over_gl3_f2() {
        let cs = Composition::strict(3);
        for a in &cs {
            for b in &cs {
                let census = double_coset_census(a, b, 2, Budget::current()).unwrap();
                let ms = crate::combinat::nat_matrices(a, b);
                assert_eq!(census.len(), ms.len());
                assert_eq!(census.values().sum::<u64>(), 168);
                for m in ms {
                    assert_eq!(double_coset_size_formula(&m).eval_inv(2).unwrap(), int(census[&m]));
                }
            }
        }
    }

    #[test]
    fn orbits_match_formula() {
        for (n, p) in [(3, 2), (3, 3), (4, 2)] {
            let cs = Composition::strict(n);
            for a in &cs {
                for b in &cs {
                    let census = orbit_census(a, b, p, Budget::current()).unwrap();
                    for m in crate::combinat::nat_matrices(a, b) {
                        let got = census.get(&m).copied().unwrap_or(0);
                        assert_eq!(orbit_size_formula(&m).eval_inv(p).unwrap(), int(got), "{m}");
                    }
                }
            }
        }
    }

    #[test]
    fn compatible_flag_examples() {
        // N as in the (4,2), (2,1,3) example: rows 1-2 hit columns 3-6.
        let n = GFMatrix::new(
            2,
            vec![
                vec![0, 0, 1, 0, 0, 0],
                vec![0, 0, 0, 1, 0, 0],
                vec![0; 6],
                vec![0; 6],
                vec![0; 6],
                vec![0; 6],
            ],
        )
        .unwrap();
        assert_eq!(jordan_partition(&n).unwrap(), Partition::new(vec![4, 2]).unwrap());
        let fl = enumerate_compatible_flags(&n, &c(&[2, 1, 3])).unwrap();
        assert_eq!(fl.len(), 33);
        assert!(fl.iter().all(|f| f.strictly_compatible(&n)));
        // N = 0 gives the whole Grassmannian.
        let z = GFMatrix::zeros(3, 4, 4);
        let cnt = enumerate_compatible_flags(&z, &c(&[2, 2])).unwrap().len();
        let g = crate::qalg::grassmannian_count(2, 4).unwrap().eval_inv(3).unwrap();
        assert_eq!(int(cnt as u64), g);
        // JF = (3,1) at p = 3: 1/q + 1 = 4 flags of type (2,2).
        let j = GFMatrix::jordan_nilpotent(3, &[2, 1, 1]);
        assert_eq!(jordan_partition(&j).unwrap(), Partition::new(vec![3, 1]).unwrap());
        assert_eq!(enumerate_compatible_flags(&j, &c(&[2, 2])).unwrap().len(), 4);
    }

    #[test]
    fn nalpha_census_examples() {
        let a = c(&[2, 1, 3]);
        let l = Partition::new(vec![4, 2]).unwrap();
        assert_eq!(nilpotent_in_nalpha_census(&a, &l, 2).unwrap(), 462);
        // q^{-8}(1-q)^2(1+q)(1+q+q^2)(2+q+q^2)
        let e = &(&(&QRat::q_pow(-8) * &QRat::one_minus_q_pow(2)) * &QRat::from_poly(QPoly::from_i64(&[1, 1])))
            * &QRat::from_poly(&QPoly::from_i64(&[1, 1, 1]) * &QPoly::from_i64(&[2, 1, 1]));
        assert_eq!(nalpha_census_formula(&a, &l).unwrap(), e);
        assert_eq!(e.eval_inv(2).unwrap(), int(462));
        assert_eq!(nilpotent_in_nalpha_census(&c(&[3]), &Partition::row(3), 5).unwrap(), 1);
        assert_eq!(
            nilpotent_in_nalpha_census(&c(&[1, 1]), &Partition::new(vec![1, 1]).unwrap(), 3).unwrap(),
            2
        );
    }

    #[test]
    fn relative_position_transposes() {
        let a = c(&[1, 2]);
        let b = c(&[2, 1]);
        let fa = all_flags(&a, 3, Budget::current()).unwrap();
        let fb = all_flags(&b, 3, Budget::current()).unwrap();
        for f in &fa {
            for g in &fb {
                assert_eq!(relative_position(f, g).unwrap().transpose(), relative_position(g, f).unwrap());
            }
        }
    }
}
