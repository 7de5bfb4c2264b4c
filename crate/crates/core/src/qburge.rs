//! The q-Burge correspondence, realized by censuses of nilpotent matrices
//! over `𝔽_p` read at `q = 1/p`.
//!
//! For `M ∈ Mat(α, β)` the canonical flags `E_id ∈ Fl_α` and `E_{ŵ_M} ∈ Fl_β`
//! are coordinate flags, so every subspace in sight is spanned by standard
//! basis vectors and every restriction is a principal submatrix. The census
//! runs in [`crate::kernel`].

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::budget::Budget;
use crate::burge::burge_forward;
use crate::combinat::{nat_matrices, ssyt_enumerate, Composition, NatMatrix, Partition, Tableau};
use crate::error::{invalid, Error, Result};
use crate::flags::{canonical_perm, coordinate_flag, identity_perm, nm_pattern, orbit_size_formula};
use crate::gflin::{check_prime, is_prime, jf_tableau, nilpotent_count_formula, GFMatrix};
use crate::kernel::{self, CensusSpec, Strategy};
use crate::qalg::{flag_variety_count, qfactorial_product, qmultinomial, QPoly, QRat};
use crate::verify::CheckReport;
use crate::whittaker::{dual_prefactor, whittaker_coeff, wtq};

pub type Pair = (Tableau, Tableau);

/// Census of `N ∈ 𝔫_M(𝔽_p)` by `(JF(N; E_id), JF(N; E_{ŵ_M}))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbTable {
    m: NatMatrix,
    p: u64,
    free_dim: usize,
    counts: BTreeMap<Pair, u128>,
    total: u128,
}

impl ProbTable {
    pub fn matrix(&self) -> &NatMatrix {
        &self.m
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn free_dim(&self) -> usize {
        self.free_dim
    }

    /// Nonzero counts, ordered by the reading words of `(T, T′)`.
    pub fn counts(&self) -> &BTreeMap<Pair, u128> {
        &self.counts
    }

    /// `p^{free_dim}`.
    pub fn total(&self) -> u128 {
        self.total
    }

    pub fn count(&self, t: &Tableau, tp: &Tableau) -> u128 {
        self.counts.get(&(t.clone(), tp.clone())).copied().unwrap_or(0)
    }

    /// The forward probability `𝗉_M(T, T′)` at `q = 1/p`.
    pub fn prob(&self, t: &Tableau, tp: &Tableau) -> BigRational {
        ratio(self.count(t, tp), self.total)
    }
}

fn ratio(a: u128, b: u128) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// Index sets of the coordinate subspaces `F_1, …, F_k` of `E_id` and
/// `F′_1, …, F′_l` of `E_{ŵ_M}` (0-based, sorted).
fn flag_index_sets(m: &NatMatrix) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let w = canonical_perm(m);
    let a = m.row_sums().partial_sums();
    let b = m.col_sums().partial_sums();
    let f = a[1..].iter().map(|&ai| (0..ai).collect()).collect();
    let g = b[1..]
        .iter()
        .map(|&bj| {
            let mut s: Vec<usize> = w[..bj].iter().map(|&x| x - 1).collect();
            s.sort_unstable();
            s
        })
        .collect();
    (f, g)
}

fn chain_tableau(packed: &[u32]) -> Tableau {
    let mut chain = vec![Partition::empty()];
    chain.extend(packed.iter().map(|&x| kernel::unpack(x)));
    Tableau::from_chain(&chain).expect("census chains are tableaux")
}

pub fn forward_table(m: &NatMatrix, p: u64) -> Result<ProbTable> {
    forward_table_with(m, p, Strategy::Auto, Budget::current())
}

pub fn forward_table_with(m: &NatMatrix, p: u64, strategy: Strategy, budget: Budget) -> Result<ProbTable> {
    check_prime(p)?;
    let pattern = nm_pattern(m);
    let (f, g) = flag_index_sets(m);
    let k = f.len();
    let mut sets = f;
    sets.extend(g);
    let spec = CensusSpec {
        n: m.total(),
        p,
        free: pattern.free_positions(),
        sets: &sets,
    };
    let hist = kernel::census(&spec, strategy, budget)?;
    let counts = hist
        .into_iter()
        .map(|(key, c)| ((chain_tableau(&key[..k]), chain_tableau(&key[k..])), c))
        .collect();
    Ok(ProbTable {
        m: m.clone(),
        p,
        free_dim: pattern.dim(),
        counts,
        total: kernel::total_weight(p, pattern.dim())?,
    })
}

/// `ψ(M) = (1−q)^{−n} / ∏[M_{ij}]!_q`.
pub fn psi(m: &NatMatrix) -> QRat {
    let den = &QPoly::one_minus_q_pow(1).pow(m.total()) * &qfactorial_product(m.entries());
    QRat::new(QPoly::one(), den).expect("nonzero denominator")
}

/// `ψ̃(T, T′) = (1−q)^{−λ₁} / ∏[λ_i − λ_{i+1}]!_q · wt_q(T) wt_q(T′)`.
pub fn psi_tilde(t: &Tableau, tp: &Tableau) -> Result<QRat> {
    let lambda = t.shape();
    if lambda != tp.shape() {
        return Err(Error::SizeMismatch(format!("shapes {} and {}", lambda, tp.shape())));
    }
    Ok(&dual_prefactor(&lambda) * &QRat::from_poly(&wtq(t) * &wtq(tp)))
}

/// `|𝒯_M| = q^{−n²+n+n(α)+n(β)} [n choose M]_q`: triples `(F, F′, N)` with
/// `(F, F′)` in position `M` and `N` strictly compatible with both.
pub fn triple_count(m: &NatMatrix) -> QRat {
    let n = m.total() as i64;
    let e = -n * n + n + m.row_sums().n_stat() as i64 + m.col_sums().n_stat() as i64;
    let entries: Vec<usize> = m.entries().collect();
    let multi = qmultinomial(m.total(), &entries).expect("entries sum to n");
    &QRat::q_pow(e) * &QRat::from_poly(multi)
}

/// Backward probabilities `𝗉̃_M = ψ(M) 𝗉_M / ψ̃` at `q = 1/p`.
pub fn backward_from_forward(table: &ProbTable) -> Result<BTreeMap<Pair, BigRational>> {
    let psi_m = psi(&table.m).eval_inv(table.p)?;
    let mut out = BTreeMap::new();
    for ((t, tp), &c) in &table.counts {
        let pt = psi_tilde(t, tp)?.eval_inv(table.p)?;
        if pt.is_zero() {
            return Err(Error::Internal(format!("ψ̃ vanishes at ({t}, {tp})")));
        }
        out.insert((t.clone(), tp.clone()), &psi_m * ratio(c, table.total) / pt);
    }
    Ok(out)
}

/// All `(T, T′)` with contents `(α, β)` and equal shapes.
pub fn tableau_pairs(alpha: &Composition, beta: &Composition) -> Vec<Pair> {
    let mut out = Vec::new();
    if alpha.size() != beta.size() {
        return out;
    }
    for lambda in Partition::all(alpha.size()) {
        let ts = ssyt_enumerate(&lambda, alpha).expect("sizes agree");
        let us = ssyt_enumerate(&lambda, beta).expect("sizes agree");
        for t in &ts {
            for u in &us {
                out.push((t.clone(), u.clone()));
            }
        }
    }
    out.sort();
    out
}

/// (B1), (B2), (B3) at `q = 1/p` for every `M ∈ Mat(α, β)`, plus the counting
/// identity `|𝒯_M| = |Fl_α| |X_M| |𝔫_M|` and the Cauchy sum.
pub fn reversibility_check(alpha: &Composition, beta: &Composition, p: u64) -> Result<CheckReport> {
    let mats = nat_matrices(alpha, beta);
    let mut tables = Vec::with_capacity(mats.len());
    for m in &mats {
        tables.push(forward_table(m, p)?);
    }
    reversibility_from_tables(alpha, beta, &tables)
}

pub fn reversibility_from_tables(alpha: &Composition, beta: &Composition, tables: &[ProbTable]) -> Result<CheckReport> {
    let mut rep = CheckReport::new(format!("reversibility α={alpha} β={beta}"));
    let Some(p) = tables.first().map(|t| t.p) else {
        return Ok(rep);
    };
    let pairs = tableau_pairs(alpha, beta);
    let mut psi_tilde_at: BTreeMap<&Pair, BigRational> = BTreeMap::new();
    for pr in &pairs {
        psi_tilde_at.insert(pr, psi_tilde(&pr.0, &pr.1)?.eval_inv(p)?);
    }
    // Σ_M |𝒯_M| 𝗉_M(T, T′), the denominator of the definitional backward probability.
    let mut weight_sum: BTreeMap<Pair, BigRational> = BTreeMap::new();
    let mut tau = Vec::new();
    for table in tables {
        let m = &table.m;
        let t_m = triple_count(m);
        let product = &(&flag_variety_count(alpha) * &orbit_size_formula(m)) * &QRat::q_pow(-(table.free_dim as i64));
        rep.record(t_m == product, || format!("|𝒯_M| ≠ |Fl_α||X_M||𝔫_M| for M={m}"));
        let t_m = t_m.eval_inv(p)?;
        // (B1)
        let s: BigRational = table.counts.values().map(|&c| ratio(c, table.total)).sum();
        rep.record(s.is_one(), || format!("(B1) forward row of M={m} sums to {s}"));
        for (t, tp) in table.counts.keys() {
            let ok = &t.content() == alpha && &tp.content() == beta && t.shape() == tp.shape();
            rep.record(ok, || format!("bad key ({t}, {tp}) for M={m}"));
        }
        for (pr, &c) in &table.counts {
            *weight_sum.entry(pr.clone()).or_insert_with(BigRational::zero) += &t_m * ratio(c, table.total);
        }
        tau.push(t_m);
    }
    // (B2) and (B3)
    let mut back_sum: BTreeMap<&Pair, BigRational> = pairs.iter().map(|pr| (pr, BigRational::zero())).collect();
    let mut cauchy_left = BigRational::zero();
    for (table, t_m) in tables.iter().zip(&tau) {
        let psi_m = psi(&table.m).eval_inv(p)?;
        cauchy_left += &psi_m;
        for (pr, &c) in &table.counts {
            let Some(pt) = psi_tilde_at.get(pr) else {
                continue;
            };
            let fwd = ratio(c, table.total);
            let back = &psi_m * &fwd / pt;
            let definitional = t_m * &fwd / &weight_sum[pr];
            rep.record(back == definitional, || {
                format!("(B3) M={} T={} T′={}: ψ𝗉/ψ̃ = {back}, definitional {definitional}", table.m, pr.0, pr.1)
            });
            *back_sum.get_mut(pr).unwrap() += back;
        }
    }
    for (pr, s) in &back_sum {
        rep.record(s.is_one(), || format!("(B2) backward row of T={} T′={} sums to {s}", pr.0, pr.1));
    }
    let cauchy_right: BigRational = psi_tilde_at.values().cloned().sum();
    rep.record(cauchy_left == cauchy_right, || {
        format!("Σψ(M) = {cauchy_left} but Σψ̃ = {cauchy_right}")
    });
    Ok(rep)
}

/// For each `T`: `Σ_M |𝒯_M| Σ_{T′} 𝗉_M(T, T′)` counts triples `(F, F′, N)` with
/// `JF(N; F) = T`, which is `#{N : JF(N) = λ} · q^{n(α)−n(λ)} wt_q(T) ·
/// q^{n(β)−n(λ)} W_λ(β)`.
pub fn marginal_check(alpha: &Composition, beta: &Composition, p: u64) -> Result<CheckReport> {
    let mut rep = CheckReport::new(format!("marginals α={alpha} β={beta} p={p}"));
    let n = alpha.size();
    let mut lhs: BTreeMap<Tableau, BigRational> = BTreeMap::new();
    for m in nat_matrices(alpha, beta) {
        let table = forward_table(&m, p)?;
        let t_m = triple_count(&m).eval_inv(p)?;
        for ((t, _), &c) in &table.counts {
            *lhs.entry(t.clone()).or_insert_with(BigRational::zero) += &t_m * ratio(c, table.total);
        }
    }
    for lambda in Partition::all(n) {
        let nil = nilpotent_count_formula(n, &lambda)?;
        let w_beta = QRat::from_poly(whittaker_coeff(&lambda, beta)?);
        let nl = lambda.n_stat() as i64;
        for t in ssyt_enumerate(&lambda, alpha)? {
            let e = alpha.n_stat() as i64 + beta.n_stat() as i64 - 2 * nl;
            let rhs = (&(&nil * &QRat::q_pow(e)) * &(&QRat::from_poly(wtq(&t)) * &w_beta)).eval_inv(p)?;
            let got = lhs.get(&t).cloned().unwrap_or_else(BigRational::zero);
            rep.record(got == rhs, || format!("T={t}: census {got}, formula {rhs}"));
        }
    }
    Ok(rep)
}

/// `𝗉_M(T, T′) = 𝗉_{ᵗM}(T′, T)` for all pairs.
pub fn transpose_symmetry_check(m: &NatMatrix, p: u64) -> Result<bool> {
    let a = forward_table(m, p)?;
    let b = forward_table(&m.transpose(), p)?;
    let swapped: BTreeMap<Pair, u128> = b.counts.iter().map(|((t, u), &c)| ((u.clone(), t.clone()), c)).collect();
    Ok(a.total == b.total && a.counts == swapped)
}

/// `𝗉_{diag(α)}(T, T) = q^{n(λ)−n(α)} (1−q)^{n−λ₁} ∏[α_i]!_q / ∏[λ_i − λ_{i+1}]!_q · wt_q(T)`.
pub fn diagonal_closed_form(t: &Tableau) -> QRat {
    let lambda = t.shape();
    let alpha = t.content();
    let n = t.size();
    let e = lambda.n_stat() as i64 - alpha.n_stat() as i64;
    let num = &(&QPoly::one_minus_q_pow(1).pow(n - lambda.part(0)) * &qfactorial_product(alpha.parts().iter().copied()))
        * &wtq(t);
    let den = qfactorial_product(lambda.gaps());
    &QRat::q_pow(e) * &QRat::new(num, den).expect("nonzero denominator")
}

/// `𝗉̃_{diag(α)}(T, T) = q^{n(λ)−n(α)} / wt_q(T)`.
pub fn diagonal_backward_closed_form(t: &Tableau) -> QRat {
    let e = t.shape().n_stat() as i64 - t.content().n_stat() as i64;
    &QRat::q_pow(e) * &QRat::from_poly(wtq(t)).inv().expect("wt_q(T) ≠ 0")
}

pub fn diagonal_check(alpha: &Composition, p: u64) -> Result<CheckReport> {
    let mut rep = CheckReport::new(format!("diagonal α={alpha} p={p}"));
    let m = NatMatrix::diagonal(alpha);
    let table = forward_table(&m, p)?;
    let back = backward_from_forward(&table)?;
    for (t, tp) in tableau_pairs(alpha, alpha) {
        let got = table.prob(&t, &tp);
        if t == tp {
            let want = diagonal_closed_form(&t).eval_inv(p)?;
            rep.record(got == want, || format!("T={t}: census {got}, closed form {want}"));
            let want_back = diagonal_backward_closed_form(&t).eval_inv(p)?;
            let got_back = back.get(&(t.clone(), t.clone())).cloned().unwrap_or_else(BigRational::zero);
            rep.record(got_back == want_back, || format!("T={t}: backward {got_back}, closed form {want_back}"));
        } else {
            rep.record(got.is_zero(), || format!("off-diagonal pair ({t}, {tp}) has probability {got}"));
        }
    }
    Ok(rep)
}

// ---------------------------------------------------------------------------
// Growth diagrams

/// `grid[i][j] = JF(N restricted to F_i ∩ F′_j)`, `0 ≤ i ≤ k`, `0 ≤ j ≤ l`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GrowthDiagram {
    pub grid: Vec<Vec<Partition>>,
}

impl GrowthDiagram {
    pub fn get(&self, i: usize, j: usize) -> &Partition {
        &self.grid[i][j]
    }

    /// The last column and last row, read as `(JF(N; F), JF(N; F′))`.
    pub fn tableaux(&self) -> Result<Pair> {
        let l = self.grid[0].len() - 1;
        let col: Vec<Partition> = self.grid.iter().map(|r| r[l].clone()).collect();
        let row = self.grid.last().unwrap().clone();
        Ok((Tableau::from_chain(&col)?, Tableau::from_chain(&row)?))
    }
}

pub fn growth_distribution(m: &NatMatrix, p: u64) -> Result<BTreeMap<GrowthDiagram, u128>> {
    check_prime(p)?;
    let pattern = nm_pattern(m);
    let w = canonical_perm(m);
    let a = m.row_sums().partial_sums();
    let b = m.col_sums().partial_sums();
    let (k, l) = (m.k(), m.l());
    let mut sets = Vec::with_capacity((k + 1) * (l + 1));
    for &ai in &a {
        for &bj in &b {
            let mut s: Vec<usize> = w[..bj].iter().map(|&x| x - 1).filter(|&x| x < ai).collect();
            s.sort_unstable();
            sets.push(s);
        }
    }
    let spec = CensusSpec {
        n: m.total(),
        p,
        free: pattern.free_positions(),
        sets: &sets,
    };
    let hist = kernel::census(&spec, Strategy::Auto, Budget::current())?;
    Ok(hist
        .into_iter()
        .map(|(key, c)| {
            let grid = key.chunks(l + 1).map(|r| r.iter().map(|&x| kernel::unpack(x)).collect()).collect();
            (GrowthDiagram { grid }, c)
        })
        .collect())
}

/// Distribution of `grid[target]` given that each `grid[pos] = value`.
pub fn growth_conditional(
    dist: &BTreeMap<GrowthDiagram, u128>,
    given: &[((usize, usize), Partition)],
    target: (usize, usize),
) -> BTreeMap<Partition, BigRational> {
    let mut hits: BTreeMap<Partition, u128> = BTreeMap::new();
    let mut total = 0u128;
    for (g, &c) in dist {
        if given.iter().all(|((i, j), v)| g.get(*i, *j) == v) {
            *hits.entry(g.get(target.0, target.1).clone()).or_insert(0) += c;
            total += c;
        }
    }
    hits.into_iter().map(|(k, c)| (k, ratio(c, total))).collect()
}

// ---------------------------------------------------------------------------
// Interpolation across primes

/// The first `n` primes.
pub fn first_primes(n: usize) -> Vec<u64> {
    (2u64..).filter(|&x| is_prime(x)).take(n).collect()
}

/// Why interpolation was rejected. Nothing is extrapolated past a failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FalsificationReport {
    pub reason: String,
    pub fit_primes: Vec<u64>,
    /// `(p, predicted count, observed count)` at each held-out prime.
    pub held_out: Vec<(u64, String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Interpolated {
    Polynomial(QPoly),
    Falsified(FalsificationReport),
}

impl Interpolated {
    pub fn polynomial(&self) -> Option<&QPoly> {
        match self {
            Interpolated::Polynomial(p) => Some(p),
            Interpolated::Falsified(_) => None,
        }
    }
}

/// Coefficients (ascending) of the polynomial through the points.
fn fit(points: &[(BigRational, BigRational)]) -> Vec<BigRational> {
    let n = points.len();
    // Newton divided differences, then expand.
    let mut dd: Vec<BigRational> = points.iter().map(|(_, y)| y.clone()).collect();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&points[i].0 - &points[i - j].0);
        }
    }
    let mut coeffs = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        // coeffs ← coeffs·(x − x_i) + dd[i]
        let xi = &points[i].0;
        let mut next = vec![BigRational::zero(); n];
        for d in (0..n).rev() {
            if d + 1 < n {
                next[d + 1] += &coeffs[d];
            }
            next[d] -= xi * &coeffs[d];
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    coeffs
}

fn eval_coeffs(c: &[BigRational], x: &BigRational) -> BigRational {
    c.iter().rev().fold(BigRational::zero(), |acc, a| acc * x + a)
}

/// Fits `g(p) = counts` of degree `≤ d` on the first `d + 1` primes, checks the
/// rest, and returns `q^d g(1/q)`.
pub fn interpolate_counts(samples: &[(u64, u128)], d: usize) -> Result<Interpolated> {
    if samples.len() < d + 3 {
        return Err(Error::InsufficientPrimes {
            need: d + 3,
            got: samples.len(),
        });
    }
    let to_q = |x: u128| BigRational::from_integer(BigInt::from(x));
    let points: Vec<(BigRational, BigRational)> =
        samples[..d + 1].iter().map(|&(p, c)| (to_q(p as u128), to_q(c))).collect();
    let g = fit(&points);
    let fit_primes: Vec<u64> = samples[..d + 1].iter().map(|s| s.0).collect();
    let mut held_out = Vec::new();
    let mut ok = true;
    for &(p, c) in &samples[d + 1..] {
        let pred = eval_coeffs(&g, &to_q(p as u128));
        ok &= pred == to_q(c);
        held_out.push((p, pred.to_string(), c.to_string()));
    }
    if !ok {
        return Ok(Interpolated::Falsified(FalsificationReport {
            reason: "held-out prime disagrees with the fitted polynomial".into(),
            fit_primes,
            held_out,
        }));
    }
    if g.iter().any(|c| !c.is_integer()) {
        return Ok(Interpolated::Falsified(FalsificationReport {
            reason: "fitted polynomial has non-integer coefficients".into(),
            fit_primes,
            held_out,
        }));
    }
    let coeffs = (0..=d).map(|t| g[d - t].to_integer()).collect();
    Ok(Interpolated::Polynomial(QPoly::new(coeffs)))
}

fn check_primes(m: &NatMatrix, primes: &[u64]) -> Result<()> {
    let need = m.free_dim() + 3;
    let mut sorted = primes.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != primes.len() {
        return invalid("primes must be distinct");
    }
    for &p in primes {
        check_prime(p)?;
    }
    if primes.len() < need {
        return Err(Error::InsufficientPrimes { need, got: primes.len() });
    }
    Ok(())
}

pub fn interpolate_forward(m: &NatMatrix, t: &Tableau, tp: &Tableau, primes: &[u64]) -> Result<Interpolated> {
    check_primes(m, primes)?;
    let mut samples = Vec::new();
    for &p in primes {
        samples.push((p, forward_table(m, p)?.count(t, tp)));
    }
    interpolate_counts(&samples, m.free_dim())
}

/// Interpolates every pair seen at any of the primes.
pub fn interpolate_table(m: &NatMatrix, primes: &[u64]) -> Result<BTreeMap<Pair, Interpolated>> {
    check_primes(m, primes)?;
    let mut tables = Vec::new();
    for &p in primes {
        tables.push(forward_table(m, p)?);
    }
    let mut keys: Vec<&Pair> = tables.iter().flat_map(|t| t.counts.keys()).collect();
    keys.sort();
    keys.dedup();
    let mut out = BTreeMap::new();
    for key in keys {
        let samples: Vec<(u64, u128)> = tables.iter().map(|t| (t.p, t.counts.get(key).copied().unwrap_or(0))).collect();
        out.insert(key.clone(), interpolate_counts(&samples, m.free_dim())?);
    }
    Ok(out)
}

/// At `q = 0` the interpolated probabilities are the indicator of the Burge pair.
pub fn burge_limit_check(m: &NatMatrix, primes: &[u64]) -> Result<CheckReport> {
    let mut rep = CheckReport::new(format!("Burge limit M={m}"));
    let burge = burge_forward(m);
    let target = (burge.p, burge.q);
    let table = interpolate_table(m, primes)?;
    rep.record(table.contains_key(&target), || "Burge pair never observed".to_string());
    for (pr, f) in &table {
        match f.polynomial() {
            None => rep.record(false, || format!("interpolation failed at ({}, {})", pr.0, pr.1)),
            Some(poly) => {
                let c0 = poly.coeff(0);
                let want = BigInt::from(u8::from(*pr == target));
                rep.record(c0 == want, || format!("({}, {}) has constant term {c0}", pr.0, pr.1));
            }
        }
    }
    Ok(rep)
}

// ---------------------------------------------------------------------------
// Independence from the flag pair

/// A uniformly random element of `GL_n(𝔽_p)`.
pub fn random_gl(p: u64, n: usize, rng: &mut impl Rng) -> GFMatrix {
    loop {
        let rows = (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..p) as i64).collect()).collect();
        let g = GFMatrix::new(p, rows).expect("entries reduced");
        if g.is_invertible() {
            return g;
        }
    }
}

/// Censuses the nilpotents strictly compatible with `(g E_id, g E_{ŵ_M})` by
/// brute force over all of `𝔤𝔩_n(𝔽_p)` with the general flag routines, and
/// compares with the coordinate census.
pub fn translated_census_agrees(m: &NatMatrix, p: u64, g: &GFMatrix) -> Result<bool> {
    let n = m.total();
    Budget::current().check_pow("brute-force 𝔤𝔩_n census", p, n * n)?;
    let alpha = m.row_sums();
    let beta = m.col_sums();
    let f = coordinate_flag(&alpha, &identity_perm(n), p)?.translate(g);
    let fp = coordinate_flag(&beta, &canonical_perm(m), p)?.translate(g);
    let mut counts: BTreeMap<Pair, u128> = BTreeMap::new();
    let mut err = None;
    crate::gflin::for_each_matrix(p, n, n, |x| {
        if err.is_some() || !f.strictly_compatible(x) || !fp.strictly_compatible(x) {
            return;
        }
        match (jf_tableau(x, &f), jf_tableau(x, &fp)) {
            (Ok(t), Ok(u)) => *counts.entry((t, u)).or_insert(0) += 1,
            (Err(e), _) | (_, Err(e)) => err = Some(e),
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(counts == forward_table(m, p)?.counts)
}

/// [`translated_census_agrees`] for `trials` seeded random `g`.
pub fn conjugation_spot_check(m: &NatMatrix, p: u64, trials: usize, seed: u64) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let g = random_gl(p, m.total(), &mut rng);
        if !translated_census_agrees(m, p, &g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(rows: &[&[usize]], k: usize) -> Tableau {
        Tableau::new(rows.iter().map(|r| r.to_vec()).collect(), k).unwrap()
    }

    fn nm(rows: &[&[usize]]) -> NatMatrix {
        NatMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn comp(v: &[usize]) -> Composition {
        Composition::new(v.to_vec())
    }

    #[test]
    fn forward_example() {
        let m = nm(&[&[1, 1], &[2, 1]]);
        let table = forward_table(&m, 2).unwrap();
        let (a, b) = (t(&[&[1, 1, 2, 2], &[2]], 2), t(&[&[1, 1, 1, 2], &[2]], 2));
        assert_eq!(table.prob(&a, &b), q(1, 2));
        let row = (t(&[&[1, 1, 2, 2, 2]], 2), t(&[&[1, 1, 1, 2, 2]], 2));
        assert_eq!(table.prob(&row.0, &row.1), q(1, 2));
        assert_eq!(table.counts().len(), 2);
        let back = backward_from_forward(&table).unwrap();
        assert_eq!(back[&(a, b)], q(4, 7));
    }

    #[test]
    fn two_by_two() {
        let id = nm(&[&[1, 0], &[0, 1]]);
        let col = t(&[&[1], &[2]], 2);
        let row = t(&[&[1, 2]], 2);
        let table = forward_table(&id, 3).unwrap();
        assert_eq!(table.prob(&col, &col), q(2, 3));
        assert_eq!(table.prob(&row, &row), q(1, 3));
        let anti = nm(&[&[0, 1], &[1, 0]]);
        for p in [2, 3, 5] {
            let table = forward_table(&anti, p).unwrap();
            assert_eq!(table.total(), 1);
            assert_eq!(table.prob(&row, &row), q(1, 1));
        }
        // Backward from the row pair: 1/(1+q) to the antidiagonal, q/(1+q) to the identity.
        let b_anti = backward_from_forward(&forward_table(&anti, 2).unwrap()).unwrap();
        let b_id = backward_from_forward(&forward_table(&id, 2).unwrap()).unwrap();
        assert_eq!(b_anti[&(row.clone(), row.clone())], q(2, 3));
        assert_eq!(b_id[&(row.clone(), row)], q(1, 3));
    }

    #[test]
    fn zero_matrix() {
        let table = forward_table(&NatMatrix::zeros(0, 0), 2).unwrap();
        assert_eq!(table.total(), 1);
        assert_eq!(table.counts().len(), 1);
    }

    #[test]
    fn strategies_give_the_same_table() {
        let m = nm(&[&[1, 1], &[1, 1]]);
        let b = Budget::new(24).unwrap();
        for p in [2, 3] {
            let e = forward_table_with(&m, p, Strategy::Exhaustive, b).unwrap();
            let o = forward_table_with(&m, p, Strategy::TorusOrbits, b).unwrap();
            assert_eq!(e, o);
        }
    }

    #[test]
    fn reversibility_small() {
        for p in [2, 3] {
            let rep = reversibility_check(&comp(&[2, 3]), &comp(&[3, 2]), p).unwrap();
            assert!(rep.passed(), "{rep:?}");
            let rep = reversibility_check(&comp(&[1, 1, 1]), &comp(&[2, 1]), p).unwrap();
            assert!(rep.passed(), "{rep:?}");
        }
        assert!(reversibility_check(&comp(&[3]), &comp(&[3]), 5).unwrap().passed());
    }

    #[test]
    fn marginals() {
        for p in [2, 3] {
            let rep = marginal_check(&comp(&[1, 2]), &comp(&[2, 1]), p).unwrap();
            assert!(rep.passed(), "{rep:?}");
            let rep = marginal_check(&comp(&[1, 1, 1]), &comp(&[1, 2]), p).unwrap();
            assert!(rep.passed(), "{rep:?}");
        }
    }

    #[test]
    fn diagonal_forms() {
        for p in [2, 3] {
            for a in [comp(&[2, 1]), comp(&[1, 1, 1]), comp(&[2, 2])] {
                let rep = diagonal_check(&a, p).unwrap();
                assert!(rep.passed(), "{rep:?}");
            }
        }
    }

    #[test]
    fn transpose_symmetry() {
        assert!(transpose_symmetry_check(&nm(&[&[1, 1], &[2, 1]]), 2).unwrap());
        assert!(transpose_symmetry_check(&nm(&[&[1, 0, 1], &[0, 1, 0]]), 3).unwrap());
    }

    #[test]
    fn growth_non_locality() {
        let cond = |w: &[usize]| {
            let m = NatMatrix::permutation(w).unwrap();
            let dist = growth_distribution(&m, 2).unwrap();
            for (g, _) in &dist {
                let (a, b) = g.tableaux().unwrap();
                assert!(forward_table(&m, 2).unwrap().count(&a, &b) > 0);
            }
            let two = Partition::new(vec![2]).unwrap();
            let two_one = Partition::new(vec![2, 1]).unwrap();
            growth_conditional(
                &dist,
                &[((3, 3), two), ((3, 4), two_one.clone()), ((4, 3), two_one)],
                (4, 4),
            )
        };
        let a = cond(&[3, 4, 1, 2]);
        assert_eq!(a.len(), 1);
        assert_eq!(a[&Partition::new(vec![2, 2]).unwrap()], q(1, 1));
        let b = cond(&[1, 4, 3, 2]);
        assert_eq!(b.len(), 1);
        assert_eq!(b[&Partition::new(vec![3, 1]).unwrap()], q(1, 1));
    }

    #[test]
    fn interpolation_examples() {
        let m = nm(&[&[1, 1], &[2, 1]]);
        let primes = first_primes(m.free_dim() + 3);
        let (a, b) = (t(&[&[1, 1, 2, 2], &[2]], 2), t(&[&[1, 1, 1, 2], &[2]], 2));
        let f = interpolate_forward(&m, &a, &b, &primes).unwrap();
        assert_eq!(f.polynomial(), Some(&QPoly::from_i64(&[1, -1])));
        let w = NatMatrix::permutation(&[2, 1, 4, 3]).unwrap();
        let s = t(&[&[1, 2], &[3, 4]], 4);
        let f = interpolate_forward(&w, &s, &s, &first_primes(w.free_dim() + 3)).unwrap();
        // (1−q)²(1+q)
        assert_eq!(f.polynomial(), Some(&QPoly::from_i64(&[1, -1, -1, 1])));
        assert!(matches!(
            interpolate_forward(&m, &a, &b, &primes[..3]),
            Err(Error::InsufficientPrimes { .. })
        ));
    }

    #[test]
    fn interpolation_reports_failure() {
        // counts that are not a polynomial of degree ≤ 1 in p
        let samples = [(2, 4), (3, 9), (5, 25), (7, 49), (11, 121)];
        assert!(matches!(interpolate_counts(&samples, 1).unwrap(), Interpolated::Falsified(_)));
        let ok = interpolate_counts(&samples, 2).unwrap();
        assert_eq!(ok.polynomial(), Some(&QPoly::from_i64(&[1])));
    }

    #[test]
    fn burge_limit_examples() {
        for m in [nm(&[&[1, 1], &[2, 1]]), nm(&[&[0, 1], &[1, 0]]), nm(&[&[1, 0, 1], &[0, 1, 0]])] {
            let primes = first_primes(m.free_dim() + 3);
            let rep = burge_limit_check(&m, &primes).unwrap();
            assert!(rep.passed(), "{rep:?}");
        }
    }

    #[test]
    fn triple_count_example() {
        // [[1,1],[2,1]] at q = 1/2: |𝒯_M| = 2^{12} [5]!/[2]! at q = 1/2
        let m = nm(&[&[1, 1], &[2, 1]]);
        let want = &QRat::q_pow(-12) * &QRat::from_poly(qmultinomial(5, &[1, 1, 2, 1]).unwrap());
        assert_eq!(triple_count(&m), want);
    }

    #[test]
    fn independent_of_flag_pair() {
        for m in [nm(&[&[1, 1], &[1, 0]]), nm(&[&[1, 1], &[2, 0]]), NatMatrix::permutation(&[2, 1, 4, 3]).unwrap()] {
            assert!(conjugation_spot_check(&m, 2, 2, 0).unwrap());
        }
    }
}
