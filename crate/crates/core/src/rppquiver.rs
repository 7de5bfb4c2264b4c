//! Reverse plane partitions, preprojective-algebra masses and type-A
//! quiver-variety point counts.
//!
//! Modules over the preprojective algebra are never built explicitly: a
//! module with socle data `R` is a triple `(F, F′, N)` with
//! `(JF(N; F), JF(N; F′)) = Φ⁻¹(R)`, and isomorphisms are elements of the
//! flag-pair stabilizer commuting with `N`.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::budget::Budget;
use crate::combinat::{Composition, NatMatrix, Partition, Tableau};
use crate::error::{invalid, Error, Result};
use crate::flags::{canonical_perm, enumerate_compatible_flags, nm_pattern, stabilizer_pattern};
use crate::gflin::{check_prime, jf_tableau, jordan_partition, nilpotent_census, GFMatrix};
use crate::qalg::{qfactorial, qfactorial_product, QPoly, QRat};
use crate::qburge::{forward_table, psi, tableau_pairs, Pair};
use crate::verify::CheckReport;
use crate::whittaker::{whittaker_coeff, wtq};

// ---------------------------------------------------------------------------
// Reverse plane partitions

/// The cells `(i, j)` of the `k × l` rectangle: `k−1 ≥ i ≥ −l+1`,
/// `|i|+1 ≤ j ≤ min(2k−i−1, 2l+i−1)`, `j ≡ |i|+1 (mod 2)`.
pub fn rect_cells(k: usize, l: usize) -> Vec<(i64, i64)> {
    let (k, l) = (k as i64, l as i64);
    let mut out = Vec::new();
    for i in (-l + 1..=k - 1).rev() {
        let hi = (2 * k - i - 1).min(2 * l + i - 1);
        let mut j = i.abs() + 1;
        while j <= hi {
            out.push((i, j));
            j += 2;
        }
    }
    out
}

/// A filling of the `k × l` rectangle, weakly decreasing toward the
/// northwest and northeast.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rpp {
    k: usize,
    l: usize,
    entries: BTreeMap<(i64, i64), usize>,
}

impl Rpp {
    /// Validates the shape of the index set and the order conditions.
    pub fn new(k: usize, l: usize, entries: BTreeMap<(i64, i64), usize>) -> Result<Self> {
        let cells = rect_cells(k, l);
        if entries.len() != cells.len() || cells.iter().any(|c| !entries.contains_key(c)) {
            return invalid(format!("entries must be indexed by the {k}×{l} rectangle"));
        }
        let r = Rpp { k, l, entries };
        for &(i, j) in &cells {
            for di in [1, -1] {
                if let Some(&up) = r.entries.get(&(i + di, j + 1)) {
                    if up > r.entries[&(i, j)] {
                        return invalid(format!("R({i},{j}) < R({},{})", i + di, j + 1));
                    }
                }
            }
        }
        Ok(r)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn get(&self, i: i64, j: i64) -> Option<usize> {
        self.entries.get(&(i, j)).copied()
    }

    pub fn entries(&self) -> &BTreeMap<(i64, i64), usize> {
        &self.entries
    }

    /// `d_i = Σ_j R(i, j)` for `i = k−1, …, −l+1`.
    pub fn row_sums(&self) -> Vec<(i64, usize)> {
        let mut d: BTreeMap<i64, usize> = BTreeMap::new();
        for (&(i, _), &v) in &self.entries {
            *d.entry(i).or_insert(0) += v;
        }
        d.into_iter().rev().collect()
    }

    /// `(α, β)` with `d_{k−s} = α_1 + ⋯ + α_s` and `d_{−(l−s)} = β_1 + ⋯ + β_s`.
    pub fn type_comp(&self) -> Result<(Composition, Composition)> {
        let d: BTreeMap<i64, usize> = self.row_sums().into_iter().collect();
        let side = |len: usize, sign: i64| -> Result<Composition> {
            let mut parts = Vec::with_capacity(len);
            let mut prev = 0;
            for s in 1..=len {
                let cur = d[&(sign * (len - s) as i64)];
                if cur < prev {
                    return invalid("row sums do not increase toward the center");
                }
                parts.push(cur - prev);
                prev = cur;
            }
            Ok(Composition::new(parts))
        };
        if self.k == 0 || self.l == 0 {
            return Ok((Composition::new(vec![0; self.k]), Composition::new(vec![0; self.l])));
        }
        Ok((side(self.k, 1)?, side(self.l, -1)?))
    }

    /// `(R(0,1), R(0,3), …)`.
    pub fn central(&self) -> Partition {
        let parts = self
            .entries
            .iter()
            .filter(|(&(i, _), _)| i == 0)
            .map(|(_, &v)| v)
            .collect();
        Partition::new(parts).expect("row 0 decreases")
    }
}

impl Serialize for Rpp {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Rpp", 4)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("l", &self.l)?;
        let cells: Vec<[i64; 3]> = self.entries.iter().map(|(&(i, j), &v)| [i, j, v as i64]).collect();
        st.serialize_field("cells", &cells)?;
        st.serialize_field("central", &self.central())?;
        st.end()
    }
}

/// `Φ(T, T′)`: `R(i, i+2m−1) = T⁽ᵏ⁻ⁱ⁾_m` for `i ≥ 0` and
/// `R(i, |i|+2m−1) = T′⁽ˡ⁻|ⁱ|⁾_m` for `i ≤ 0`.
pub fn rpp_from_pair(t: &Tableau, tp: &Tableau) -> Result<Rpp> {
    if t.shape() != tp.shape() {
        return Err(Error::SizeMismatch(format!("shapes {} and {}", t.shape(), tp.shape())));
    }
    let (k, l) = (t.letters(), tp.letters());
    let lambda = t.shape();
    if lambda.len() > k.min(l) {
        return invalid(format!("shape {lambda} has more than min(k, l) = {} rows", k.min(l)));
    }
    let (ct, cu) = (t.chain(), tp.chain());
    let mut entries = BTreeMap::new();
    for (i, j) in rect_cells(k, l) {
        let m = ((j - i.abs() + 1) / 2) as usize;
        let v = if i >= 0 {
            ct[k - i as usize].part(m - 1)
        } else {
            cu[l - i.unsigned_abs() as usize].part(m - 1)
        };
        entries.insert((i, j), v);
    }
    Rpp::new(k, l, entries)
}

/// `Φ⁻¹`: reads the two Gelfand–Tsetlin patterns back off the rectangle.
pub fn pair_from_rpp(r: &Rpp) -> Result<Pair> {
    let read = |letters: usize, sign: i64| -> Result<Tableau> {
        let mut chain = vec![Partition::empty()];
        for s in 1..=letters {
            let i = sign * (letters - s) as i64;
            let mut parts = Vec::new();
            let mut j = i.abs() + 1;
            while let Some(v) = r.get(i, j) {
                parts.push(v);
                j += 2;
            }
            chain.push(Partition::new(parts)?);
        }
        Tableau::from_chain(&chain)
    };
    let (t, tp) = if r.k == 0 || r.l == 0 {
        (Tableau::empty(r.k), Tableau::empty(r.l))
    } else {
        (read(r.k, 1)?, read(r.l, -1)?)
    };
    if t.shape() != tp.shape() {
        return invalid("the two halves disagree on row 0");
    }
    Ok((t, tp))
}

fn in_pattern(m: &NatMatrix, n: &GFMatrix) -> Result<()> {
    let pattern = nm_pattern(m);
    let size = m.total();
    if n.nrows() != size || !n.is_square() {
        return Err(Error::SizeMismatch(format!("N must be {size}×{size}")));
    }
    for r in 0..size {
        for c in 0..size {
            if n.get(r, c) != 0 && !pattern.contains(r, c) {
                return Err(Error::NotCompatible(format!("N has a nonzero entry at ({}, {}) outside 𝔫_M", r + 1, c + 1)));
            }
        }
    }
    Ok(())
}

/// `(JF(N; E_id), JF(N; E_{ŵ_M}))` for `N ∈ 𝔫_M`, via principal submatrices.
pub fn census_pair(m: &NatMatrix, n: &GFMatrix) -> Result<Pair> {
    in_pattern(m, n)?;
    let w = canonical_perm(m);
    let jf_chain = |sets: Vec<Vec<usize>>| -> Result<Tableau> {
        let mut chain = vec![Partition::empty()];
        for s in sets {
            chain.push(jordan_partition(&n.submatrix(&s, &s))?);
        }
        Tableau::from_chain(&chain)
    };
    let a = m.row_sums().partial_sums();
    let b = m.col_sums().partial_sums();
    let f = a[1..].iter().map(|&x| (0..x).collect()).collect();
    let g = b[1..]
        .iter()
        .map(|&y| {
            let mut s: Vec<usize> = w[..y].iter().map(|&x| x - 1).collect();
            s.sort_unstable();
            s
        })
        .collect();
    Ok((jf_chain(f)?, jf_chain(g)?))
}

/// The socle reverse plane partition of the module attached to `(M, N)`.
pub fn socle_rpp_from_census(m: &NatMatrix, n: &GFMatrix) -> Result<Rpp> {
    let (t, tp) = census_pair(m, n)?;
    rpp_from_pair(&t, &tp)
}

// ---------------------------------------------------------------------------
// Preprojective masses

fn mass_prefactor(m: &NatMatrix) -> QRat {
    let e = m.total() + m.row_sums().n_stat() + m.col_sums().n_stat();
    &QRat::q_pow(e as i64) * &psi(m)
}

/// `Σ_{[V]} 1/|Aut V| = q^{n+n(α)+n(β)} ψ(M) 𝗉_M(T, T′)` at `q = 1/p`, with `R = Φ(T, T′)`.
pub fn preprojective_mass(m: &NatMatrix, r: &Rpp, p: u64) -> Result<BigRational> {
    if r.type_comp()? != (m.row_sums(), m.col_sums()) {
        return Err(Error::SizeMismatch(format!("type of R differs from the margins of M={m}")));
    }
    let (t, tp) = pair_from_rpp(r)?;
    let table = forward_table(m, p)?;
    Ok(mass_prefactor(m).eval_inv(p)? * table.prob(&t, &tp))
}

/// Masses of every `R` of type `(rowsums M, colsums M)`.
pub fn preprojective_masses(m: &NatMatrix, p: u64) -> Result<BTreeMap<Rpp, BigRational>> {
    let table = forward_table(m, p)?;
    let pre = mass_prefactor(m).eval_inv(p)?;
    let mut out = BTreeMap::new();
    for (t, tp) in tableau_pairs(&m.row_sums(), &m.col_sums()) {
        let r = rpp_from_pair(&t, &tp)?;
        out.insert(r, &pre * table.prob(&t, &tp));
    }
    Ok(out)
}

/// `Σ_R mass(M, R) = q^{n+n(α)+n(β)} ψ(M)`.
pub fn preprojective_total_check(m: &NatMatrix, p: u64) -> Result<bool> {
    let total: BigRational = preprojective_masses(m, p)?.into_values().sum();
    Ok(total == mass_prefactor(m).eval_inv(p)?)
}

fn aut_guard(m: &NatMatrix, p: u64) -> Result<()> {
    check_prime(p)?;
    if m.total() > 5 || !(p == 2 || p == 3) {
        return invalid("automorphism census needs n ≤ 5 and p ∈ {2, 3}");
    }
    Ok(())
}

/// `|{g ∈ Stab(E_id, E_{ŵ_M}) : gN = Ng}|`, enumerating the solutions of
/// `gN = Ng` inside the stabilizer pattern.
pub fn aut_size_direct(m: &NatMatrix, n: &GFMatrix, p: u64) -> Result<u128> {
    aut_guard(m, p)?;
    in_pattern(m, n)?;
    if n.p() != p {
        return invalid("N is over a different field");
    }
    let size = m.total();
    let stab = stabilizer_pattern(m);
    let pos = stab.free_positions();
    // Column t of the system is the commutator [E_pos(t), N], flattened.
    let mut cols = Vec::with_capacity(pos.len());
    for &(r, c) in pos {
        let mut e = GFMatrix::zeros(p, size, size);
        e.set(r, c, 1);
        let en = e.mul(n)?;
        let ne = n.mul(&e)?;
        let mut col = Vec::with_capacity(size * size);
        for a in 0..size {
            for b in 0..size {
                col.push(((en.get(a, b) + p - ne.get(a, b)) % p) as i64);
            }
        }
        cols.push(col);
    }
    let basis = if pos.is_empty() {
        Vec::new()
    } else {
        let rows: Vec<Vec<i64>> = (0..size * size).map(|a| cols.iter().map(|c| c[a]).collect()).collect();
        GFMatrix::new(p, rows)?.nullspace()
    };
    Budget::current().check_pow("automorphism census", p, basis.len())?;
    let dim = basis.len();
    let mut coeffs = vec![0u64; dim];
    let mut count = 0u128;
    loop {
        let mut values = vec![0u64; pos.len()];
        for (c, v) in coeffs.iter().zip(&basis) {
            for (x, y) in values.iter_mut().zip(v) {
                *x = (*x + c * y) % p;
            }
        }
        if stab.fill(p, &values).is_invertible() {
            count += 1;
        }
        let mut t = 0;
        loop {
            if t == dim {
                return Ok(count);
            }
            coeffs[t] += 1;
            if coeffs[t] < p {
                break;
            }
            coeffs[t] = 0;
            t += 1;
        }
    }
}

/// One isomorphism class of modules: a `Stab(E_id, E_{ŵ_M})`-orbit in `𝔫_M`.
#[derive(Clone, Debug, Serialize)]
pub struct ModuleClass {
    pub representative: GFMatrix,
    pub rpp: Rpp,
    pub orbit_size: u128,
    pub aut_size: u128,
}

/// Groups `𝔫_M(𝔽_p)` into orbits under the flag-pair stabilizer.
pub fn module_classes(m: &NatMatrix, p: u64) -> Result<Vec<ModuleClass>> {
    aut_guard(m, p)?;
    let size = m.total();
    let budget = Budget::current();
    let stab = stabilizer_pattern(m);
    let pattern = nm_pattern(m);
    budget.check_pow("stabilizer enumeration", p, stab.dim())?;
    budget.check_pow("𝔫_M enumeration", p, pattern.dim())?;
    let mut group = Vec::new();
    for_each_value(p, stab.dim(), |v| {
        let g = stab.fill(p, v);
        if let Ok(gi) = g.inverse() {
            group.push((g, gi));
        }
    });
    let read = |x: &GFMatrix| -> Vec<u64> { pattern.free_positions().iter().map(|&(r, c)| x.get(r, c)).collect() };
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut classes = Vec::new();
    let mut all = Vec::new();
    for_each_value(p, pattern.dim(), |v| all.push(v.to_vec()));
    for v in all {
        if seen.contains(&v) {
            continue;
        }
        let n = pattern.fill(p, &v);
        let mut orbit: HashSet<Vec<u64>> = HashSet::new();
        for (g, gi) in &group {
            let c = g.mul(&n)?.mul(gi)?;
            orbit.insert(read(&c));
        }
        let aut = aut_size_direct(m, &n, p)?;
        let rpp = socle_rpp_from_census(m, &n)?;
        seen.extend(orbit.iter().cloned());
        classes.push(ModuleClass {
            representative: n,
            rpp,
            orbit_size: orbit.len() as u128,
            aut_size: aut,
        });
    }
    debug_assert!(size == 0 || !classes.is_empty());
    Ok(classes)
}

fn for_each_value(p: u64, d: usize, mut f: impl FnMut(&[u64])) {
    let mut v = vec![0u64; d];
    loop {
        f(&v);
        let mut t = 0;
        loop {
            if t == d {
                return;
            }
            v[t] += 1;
            if v[t] < p {
                break;
            }
            v[t] = 0;
            t += 1;
        }
    }
}

/// Sums `1/|Aut|` over the classes with socle data `R` and compares with
/// [`preprojective_mass`]; also checks orbit–stabilizer on every class.
pub fn preprojective_direct_check(m: &NatMatrix, r: &Rpp, p: u64) -> Result<CheckReport> {
    let classes = module_classes(m, p)?;
    direct_check_from_classes(m, r, p, &classes)
}

fn direct_check_from_classes(m: &NatMatrix, r: &Rpp, p: u64, classes: &[ModuleClass]) -> Result<CheckReport> {
    let mut rep = CheckReport::new(format!("preprojective classes M={m} p={p}"));
    let stab_order = stabilizer_order(m, p)?;
    let mut sum = BigRational::zero();
    for c in classes.iter().filter(|c| &c.rpp == r) {
        rep.record(c.orbit_size * c.aut_size == stab_order, || {
            format!("|orbit|·|Aut| = {}·{} ≠ |Stab| = {stab_order}", c.orbit_size, c.aut_size)
        });
        sum += BigRational::new(BigInt::from(1), BigInt::from(c.aut_size));
    }
    let want = preprojective_mass(m, r, p)?;
    rep.record(sum == want, || format!("Σ 1/|Aut| = {sum}, mass {want}"));
    Ok(rep)
}

/// [`preprojective_direct_check`] for every `R` of the right type.
pub fn preprojective_direct_check_all(m: &NatMatrix, p: u64) -> Result<CheckReport> {
    let classes = module_classes(m, p)?;
    let mut rep = CheckReport::new(format!("preprojective classes M={m} p={p}"));
    for (t, tp) in tableau_pairs(&m.row_sums(), &m.col_sums()) {
        let r = rpp_from_pair(&t, &tp)?;
        rep.absorb(direct_check_from_classes(m, &r, p, &classes)?);
    }
    Ok(rep)
}

/// `|P_α ∩ ŵ P_β ŵ⁻¹|(𝔽_p)`, counted from the pattern.
fn stabilizer_order(m: &NatMatrix, p: u64) -> Result<u128> {
    let stab = stabilizer_pattern(m);
    Budget::current().check_pow("stabilizer enumeration", p, stab.dim())?;
    let mut count = 0u128;
    for_each_value(p, stab.dim(), |v| {
        if stab.fill(p, v).is_invertible() {
            count += 1;
        }
    });
    Ok(count)
}

// ---------------------------------------------------------------------------
// Quiver varieties

/// `|𝔐(α)^T| = q^{−n²+n+n(λ)+n(α)} (1−q)^{n−λ₁} [n]!_q / ∏[λ_i − λ_{i+1}]!_q · wt_q(T)`.
pub fn quiver_variety_formula(t: &Tableau) -> QRat {
    let lambda = t.shape();
    let n = t.size() as i64;
    let e = -n * n + n + lambda.n_stat() as i64 + t.content().n_stat() as i64;
    let num = &(&QPoly::one_minus_q_pow(1).pow(t.size() - lambda.part(0)) * &qfactorial(t.size())) * &wtq(t);
    let den = qfactorial_product(lambda.gaps());
    &QRat::q_pow(e) * &QRat::new(num, den).expect("nonzero denominator")
}

fn check_content(alpha: &Composition, t: &Tableau) -> Result<()> {
    if &t.content() != alpha {
        return Err(Error::SizeMismatch(format!("T has content {}, not {alpha}", t.content())));
    }
    Ok(())
}

pub fn quiver_variety_count(alpha: &Composition, t: &Tableau, p: u64) -> Result<BigRational> {
    check_prime(p)?;
    check_content(alpha, t)?;
    quiver_variety_formula(t).eval_inv(p)
}

/// `#{N : JF(N) = λ} · #{F ∈ Fl_α : JF(N_λ; F) = T}` for a fixed Jordan
/// representative `N_λ`.
pub fn quiver_variety_census(alpha: &Composition, t: &Tableau, p: u64) -> Result<u128> {
    check_prime(p)?;
    check_content(alpha, t)?;
    let n = alpha.size();
    if n > 4 || !(p == 2 || p == 3) {
        return invalid("quiver-variety census needs n ≤ 4 and p ∈ {2, 3}");
    }
    let lambda = t.shape();
    let rep = GFMatrix::jordan_nilpotent(p, lambda.conjugate().parts());
    let mut flags = 0u128;
    for f in enumerate_compatible_flags(&rep, alpha)? {
        if &jf_tableau(&rep, &f)? == t {
            flags += 1;
        }
    }
    Ok(nilpotent_census(n, p, &lambda)? as u128 * flags)
}

/// `|𝔐(α)| = Σ_λ q^{−n²+n+n(λ)+n(α)} (1−q)^{n−λ₁} [n]!_q / ∏[λ_i − λ_{i+1}]!_q · [x^α] W_λ`.
pub fn quiver_variety_total(alpha: &Composition) -> Result<QRat> {
    let n = alpha.size();
    let mut total = QRat::zero();
    for lambda in Partition::all(n) {
        let w = whittaker_coeff(&lambda, alpha)?;
        if w.is_zero() {
            continue;
        }
        let e = -((n * n) as i64) + n as i64 + lambda.n_stat() as i64 + alpha.n_stat() as i64;
        let num = &(&QPoly::one_minus_q_pow(1).pow(n - lambda.part(0)) * &qfactorial(n)) * &w;
        let term = &QRat::q_pow(e) * &QRat::new(num, qfactorial_product(lambda.gaps()))?;
        total = &total + &term;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::ssyt_all;

    fn t(rows: &[&[usize]], k: usize) -> Tableau {
        Tableau::new(rows.iter().map(|r| r.to_vec()).collect(), k).unwrap()
    }

    fn nm(rows: &[&[usize]]) -> NatMatrix {
        NatMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn cells(k: usize, l: usize, vals: &[((i64, i64), usize)]) -> Rpp {
        Rpp::new(k, l, vals.iter().copied().collect()).unwrap()
    }

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    /// The 2×3 fillings of the worked examples; `(1,2)` and `(−2,3)` are 2.
    fn example_rpp(top: usize, mid: usize, right: usize, bottom: usize) -> Rpp {
        cells(
            2,
            3,
            &[((0, 1), bottom), ((1, 2), 2), ((-1, 2), right), ((0, 3), mid), ((-2, 3), 2), ((-1, 4), top)],
        )
    }

    #[test]
    fn rectangle() {
        let c = rect_cells(2, 3);
        assert_eq!(c, vec![(1, 2), (0, 1), (0, 3), (-1, 2), (-1, 4), (-2, 3)]);
        assert_eq!(rect_cells(3, 3).len(), 9);
        assert!(rect_cells(0, 0).is_empty());
    }

    #[test]
    fn phi_example() {
        let r = rpp_from_pair(&t(&[&[1, 1, 2, 2], &[2]], 2), &t(&[&[1, 1, 2, 3], &[3]], 3)).unwrap();
        assert_eq!(r, example_rpp(0, 1, 3, 4));
        assert_eq!(r.central(), Partition::new(vec![4, 1]).unwrap());
        let (a, b) = r.type_comp().unwrap();
        assert_eq!(a, Composition::new(vec![2, 3]));
        assert_eq!(b, Composition::new(vec![2, 1, 2]));
        let r2 = rpp_from_pair(&t(&[&[1, 1, 2, 2], &[2]], 2), &t(&[&[1, 1, 3, 3], &[2]], 3)).unwrap();
        assert_eq!(r2, example_rpp(1, 1, 2, 4));
        // Both fillings of this type and central partition.
        let alpha = Composition::new(vec![2, 3]);
        let beta = Composition::new(vec![2, 1, 2]);
        let lam = Partition::new(vec![4, 1]).unwrap();
        let n = tableau_pairs(&alpha, &beta).iter().filter(|(x, _)| x.shape() == lam).count();
        assert_eq!(n, 2);
    }

    #[test]
    fn phi_round_trip() {
        for n in 0..=5 {
            for alpha in Composition::weak(n, 2).into_iter().chain(Composition::strict(n)) {
                for beta in Composition::weak(n, 3) {
                    for (x, y) in tableau_pairs(&alpha, &beta) {
                        match rpp_from_pair(&x, &y) {
                            Ok(r) => {
                                assert_eq!(pair_from_rpp(&r).unwrap(), (x, y));
                                assert_eq!(r.type_comp().unwrap(), (alpha.clone(), beta.clone()));
                            }
                            // too many rows for the rectangle
                            Err(_) => assert!(x.shape().len() > x.letters().min(y.letters())),
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn invalid_rpp() {
        let mut e: BTreeMap<(i64, i64), usize> = rect_cells(2, 3).into_iter().map(|c| (c, 0)).collect();
        assert!(Rpp::new(2, 3, e.clone()).is_ok());
        e.insert((-1, 4), 1);
        assert!(Rpp::new(2, 3, e).is_err());
    }

    #[test]
    fn socle_example() {
        let m = nm(&[&[1, 0, 1], &[1, 1, 1]]);
        let pattern = nm_pattern(&m);
        assert_eq!(pattern.free_positions(), &[(0, 3), (0, 4)]);
        for p in [2, 3] {
            let expect = |a: u64, b: u64| {
                if a != 0 {
                    example_rpp(1, 1, 2, 4)
                } else if b != 0 {
                    example_rpp(0, 1, 3, 4)
                } else {
                    cells(2, 3, &[((0, 1), 5), ((1, 2), 2), ((-1, 2), 3), ((0, 3), 0), ((-2, 3), 2), ((-1, 4), 0)])
                }
            };
            for a in 0..p {
                for b in 0..p {
                    let n = pattern.fill(p, &[a, b]);
                    assert_eq!(socle_rpp_from_census(&m, &n).unwrap(), expect(a, b));
                }
            }
        }
        let bad = GFMatrix::new(2, vec![vec![0, 1, 0, 0, 0]; 5]).unwrap();
        assert!(socle_rpp_from_census(&m, &bad).is_err());
    }

    #[test]
    fn mass_examples() {
        let m = nm(&[&[1, 1], &[2, 1]]);
        let r = rpp_from_pair(&t(&[&[1, 1, 2, 2], &[2]], 2), &t(&[&[1, 1, 1, 2], &[2]], 2)).unwrap();
        for p in [2u64, 3] {
            // q^13 (1−q)^{−4} (1+q)^{−1}
            let qq = q(1, p as i64);
            let one = q(1, 1);
            let want = num_traits::pow(qq.clone(), 13)
                / (num_traits::pow(&one - &qq, 4) * (&one + &qq));
            assert_eq!(preprojective_mass(&m, &r, p).unwrap(), want);
            assert!(preprojective_total_check(&m, p).unwrap());
        }
        // The module here has one class, so |Aut| is the reciprocal mass.
        let classes = module_classes(&m, 2).unwrap();
        let hits: Vec<_> = classes.iter().filter(|c| c.rpp == r).collect();
        assert_eq!(hits.len(), 1);
        let mass = preprojective_mass(&m, &r, 2).unwrap();
        assert_eq!(q(1, hits[0].aut_size as i64), mass);
    }

    #[test]
    fn isomorphism_classes_example() {
        let m = NatMatrix::permutation(&[2, 1, 4, 3]).unwrap();
        let s = t(&[&[1, 2], &[3, 4]], 4);
        let r = rpp_from_pair(&s, &s).unwrap();
        let classes = module_classes(&m, 2).unwrap();
        let hits: Vec<_> = classes.iter().filter(|c| c.rpp == r).collect();
        assert_eq!(hits.len(), 6);
        let total: BigRational = hits.iter().map(|c| q(1, c.aut_size as i64)).sum();
        // q⁴(1−q)^{−2}(1+q) at q = 1/2
        assert_eq!(total, q(3, 8));
        // 2·q⁶(1−q)^{−2} + (q^{−1}+2)·q⁵(1−q)^{−1}: at q = 1/2 both terms are 1/16.
        assert!(hits.iter().all(|c| c.aut_size == 16));
        assert_eq!(preprojective_mass(&m, &r, 2).unwrap(), total);
        assert!(preprojective_direct_check(&m, &r, 2).unwrap().passed());
        // At q = 1/3: two classes with |Aut| = 2²·3⁴ and q^{−1}+2 = 5 with 2·3⁴.
        let classes = module_classes(&m, 3).unwrap();
        let mut sizes: Vec<u128> = classes.iter().filter(|c| c.rpp == r).map(|c| c.aut_size).collect();
        sizes.sort();
        assert_eq!(sizes, vec![162, 162, 162, 162, 162, 324, 324]);
        assert!(preprojective_direct_check(&m, &r, 3).unwrap().passed());
    }

    #[test]
    fn aut_of_zero_is_stabilizer() {
        let m = NatMatrix::diagonal(&Composition::new(vec![2, 1]));
        let z = GFMatrix::zeros(2, 3, 3);
        // |P_(2,1)(𝔽_2)| = |GL_2| · |GL_1| · 2² = 6 · 1 · 4
        assert_eq!(aut_size_direct(&m, &z, 2).unwrap(), 24);
        let want = crate::qalg::parabolic_count(&Composition::new(vec![2, 1])).eval_inv(3).unwrap();
        assert_eq!(BigRational::from_integer(aut_size_direct(&m, &GFMatrix::zeros(3, 3, 3), 3).unwrap().into()), want);
        let six = NatMatrix::diagonal(&Composition::new(vec![6]));
        assert!(aut_size_direct(&six, &GFMatrix::zeros(2, 6, 6), 2).is_err());
        assert!(aut_size_direct(&m, &GFMatrix::zeros(5, 3, 3), 5).is_err());
    }

    #[test]
    fn direct_check_n3() {
        for m in crate::combinat::nat_matrices_of_size(3) {
            let rep = preprojective_direct_check_all(&m, 2).unwrap();
            assert!(rep.passed(), "{rep:?}");
        }
    }

    #[test]
    fn quiver_example() {
        let tab = t(&[&[1, 1, 2, 2], &[2]], 2);
        let want = &QRat::q_pow(-10)
            * &QRat::from_poly(
                &(&(&QPoly::from_i64(&[1, -1]) * &QPoly::from_i64(&[1, 1, 1])) * &QPoly::from_i64(&[1, 1, 1, 1]))
                    * &QPoly::from_i64(&[1, 1, 1, 1, 1]),
            );
        assert_eq!(quiver_variety_formula(&tab), want);
        assert_eq!(
            quiver_variety_count(&Composition::new(vec![2, 3]), &tab, 2).unwrap(),
            want.eval_inv(2).unwrap()
        );
    }

    #[test]
    fn quiver_census() {
        for p in [2, 3] {
            for n in 0..=3 {
                for alpha in Composition::strict(n) {
                    for tab in ssyt_all(&alpha) {
                        let c = quiver_variety_census(&alpha, &tab, p).unwrap();
                        assert_eq!(BigRational::from_integer(c.into()), quiver_variety_count(&alpha, &tab, p).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn quiver_totals() {
        for p in [2, 3] {
            for n in 0..=3 {
                for alpha in Composition::strict(n) {
                    let census: u128 = ssyt_all(&alpha).iter().map(|x| quiver_variety_census(&alpha, x, p).unwrap()).sum();
                    let want = quiver_variety_total(&alpha).unwrap().eval_inv(p).unwrap();
                    assert_eq!(BigRational::from_integer(census.into()), want);
                }
            }
        }
    }
}
