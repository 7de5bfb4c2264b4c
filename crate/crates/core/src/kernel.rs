//! Census kernel: enumerate the matrices supported on a pattern and bucket
//! them by the Jordan-form partitions of principal submatrices.
//!
//! Two enumeration strategies share the same key computation:
//!
//! * `Exhaustive` walks all `p^d` fillings, split into prefix chunks. For
//!   `p = 2` rows are bit-packed.
//! * `TorusOrbits` uses that conjugating by a diagonal matrix preserves every
//!   coordinate subspace, hence every key. For a support `S` with spanning
//!   forest `F_S` (edges `r → s`), each torus orbit of fillings with support
//!   exactly `S` has a unique member equal to `1` on `F_S`, and all orbits
//!   have size `(p−1)^{|F_S|}`. Only the `(p−1)^{|S∖F_S|}` normalized
//!   fillings are visited.
//!
//! Keys are vectors of partitions packed four bits per part.

use std::collections::HashMap;

use crate::budget::Budget;
use crate::combinat::Partition;
use crate::error::{invalid, Result};
use crate::par;

pub const MAXN: usize = 8;

type Mat = [[u8; MAXN]; MAXN];

/// The `p^t ≥ CHUNKS` prefixes used to split exhaustive enumeration.
const CHUNKS: u128 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Exhaustive,
    TorusOrbits,
    /// Exhaustive for `p = 2` (bit-packed), torus orbits otherwise.
    Auto,
}

pub type Histogram = HashMap<Vec<u32>, u128>;

pub fn pack(parts: &[usize]) -> u32 {
    parts
        .iter()
        .enumerate()
        .fold(0u32, |acc, (i, &x)| acc | ((x as u32) << (4 * i)))
}

pub fn unpack(mut x: u32) -> Partition {
    let mut parts = Vec::new();
    while x != 0 {
        parts.push((x & 0xf) as usize);
        x >>= 4;
    }
    Partition::new(parts).expect("packed partitions are weakly decreasing")
}

struct Field {
    p: u32,
    inv: [u8; 256],
}

impl Field {
    fn new(p: u64) -> Self {
        let mut inv = [0u8; 256];
        for a in 1..p {
            inv[a as usize] = crate::gflin::inv_mod(a, p) as u8;
        }
        Field { p: p as u32, inv }
    }

    fn rank(&self, mut m: Mat, size: usize) -> usize {
        let p = self.p;
        let mut r = 0;
        for c in 0..size {
            let Some(piv) = (r..size).find(|&i| m[i][c] != 0) else {
                continue;
            };
            m.swap(r, piv);
            let inv = self.inv[m[r][c] as usize] as u32;
            for j in c..size {
                m[r][j] = (m[r][j] as u32 * inv % p) as u8;
            }
            for i in r + 1..size {
                let f = m[i][c] as u32;
                if f == 0 {
                    continue;
                }
                for j in c..size {
                    m[i][j] = ((m[i][j] as u32 + (p - f) * m[r][j] as u32) % p) as u8;
                }
            }
            r += 1;
        }
        r
    }

    fn mul(&self, x: &Mat, y: &Mat, size: usize) -> Mat {
        let mut out = [[0u8; MAXN]; MAXN];
        for i in 0..size {
            for k in 0..size {
                let a = x[i][k] as u32;
                if a == 0 {
                    continue;
                }
                for j in 0..size {
                    out[i][j] = ((out[i][j] as u32 + a * y[k][j] as u32) % self.p) as u8;
                }
            }
        }
        out
    }

    /// Packed `JF` of the principal submatrix of `a` on `idx` (assumed nilpotent).
    fn jf(&self, a: &Mat, idx: &[usize]) -> u32 {
        let m = idx.len();
        let mut b = [[0u8; MAXN]; MAXN];
        let mut any = false;
        for (i, &r) in idx.iter().enumerate() {
            for (j, &c) in idx.iter().enumerate() {
                b[i][j] = a[r][c];
                any |= b[i][j] != 0;
            }
        }
        if !any {
            return m as u32;
        }
        let mut parts = [0usize; MAXN];
        let (mut len, mut prev) = (0, m);
        let mut power = b;
        while prev > 0 {
            let r = self.rank(power, m);
            parts[len] = prev - r;
            len += 1;
            prev = r;
            if r > 0 {
                power = self.mul(&power, &b, m);
            }
        }
        pack(&parts[..len])
    }
}

/// Packed `JF` over `𝔽_2`, rows as bitmasks.
fn jf_gf2(a: &Mat, idx: &[usize]) -> u32 {
    let m = idx.len();
    let mut b = [0u8; MAXN];
    for (i, &r) in idx.iter().enumerate() {
        for (j, &c) in idx.iter().enumerate() {
            b[i] |= (a[r][c] & 1) << j;
        }
    }
    if b[..m].iter().all(|&x| x == 0) {
        return m as u32;
    }
    let rank = |mut rows: [u8; MAXN]| -> usize {
        let mut r = 0;
        for c in 0..m {
            let bit = 1u8 << c;
            let Some(piv) = (r..m).find(|&i| rows[i] & bit != 0) else {
                continue;
            };
            rows.swap(r, piv);
            for i in r + 1..m {
                if rows[i] & bit != 0 {
                    rows[i] ^= rows[r];
                }
            }
            r += 1;
        }
        r
    };
    let mul = |x: &[u8; MAXN], y: &[u8; MAXN]| -> [u8; MAXN] {
        let mut out = [0u8; MAXN];
        for i in 0..m {
            let mut bits = x[i];
            while bits != 0 {
                let k = bits.trailing_zeros() as usize;
                out[i] ^= y[k];
                bits &= bits - 1;
            }
        }
        out
    };
    let mut parts = [0usize; MAXN];
    let (mut len, mut prev) = (0, m);
    let mut power = b;
    while prev > 0 {
        let r = rank(power);
        parts[len] = prev - r;
        len += 1;
        prev = r;
        if r > 0 {
            power = mul(&power, &b);
        }
    }
    pack(&parts[..len])
}

/// What to enumerate and how to key it.
pub struct CensusSpec<'a> {
    pub n: usize,
    pub p: u64,
    /// 0-based `(row, col)` positions that may be nonzero.
    pub free: &'a [(usize, usize)],
    /// One key component per index set: the packed `JF` of that principal submatrix.
    pub sets: &'a [Vec<usize>],
}

struct Keyer<'a> {
    field: Field,
    gf2: bool,
    sets: &'a [Vec<usize>],
}

impl Keyer<'_> {
    fn key(&self, a: &Mat) -> Vec<u32> {
        self.sets
            .iter()
            .map(|s| {
                if self.gf2 {
                    jf_gf2(a, s)
                } else {
                    self.field.jf(a, s)
                }
            })
            .collect()
    }
}

fn merge(mut a: Histogram, b: Histogram) -> Histogram {
    if a.len() < b.len() {
        return merge(b, a);
    }
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}

fn pow_u128(p: u64, e: usize) -> Option<u128> {
    (0..e).try_fold(1u128, |acc, _| acc.checked_mul(p as u128))
}

/// Total weight of the census, `p^d`.
pub fn total_weight(p: u64, d: usize) -> Result<u128> {
    pow_u128(p, d).ok_or_else(|| crate::error::Error::Invalid(format!("{p}^{d} overflows")))
}

/// Number of fillings visited by the torus strategy: `Σ_S (p−1)^{|S∖F_S|}`.
pub fn torus_work(n: usize, p: u64, free: &[(usize, usize)]) -> u128 {
    let d = free.len();
    let mut total = 0u128;
    for s in 0..(1u64 << d) {
        let (_, resid) = split_support(n, free, s);
        total = total.saturating_add(pow_u128(p - 1, resid.len()).unwrap_or(u128::MAX));
    }
    total
}

/// Forest and residual positions (indices into `free`) of a support mask.
fn split_support(n: usize, free: &[(usize, usize)], mask: u64) -> (Vec<usize>, Vec<usize>) {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    let (mut forest, mut resid) = (Vec::new(), Vec::new());
    for (t, &(r, c)) in free.iter().enumerate() {
        if mask >> t & 1 == 0 {
            continue;
        }
        let (a, b) = (find(&mut parent, r), find(&mut parent, c));
        if a == b {
            resid.push(t);
        } else {
            parent[a] = b;
            forest.push(t);
        }
    }
    (forest, resid)
}

/// Runs the census, returning key ↦ number of matrices.
pub fn census(spec: &CensusSpec<'_>, strategy: Strategy, budget: Budget) -> Result<Histogram> {
    let (n, p, d) = (spec.n, spec.p, spec.free.len());
    if n > MAXN {
        return invalid(format!("census kernel supports n ≤ {MAXN}"));
    }
    if p > 255 {
        return invalid("census kernel supports p < 256");
    }
    if spec.sets.iter().any(|s| s.len() > 15) {
        return invalid("index set too large to pack");
    }
    total_weight(p, d)?;
    let strategy = match strategy {
        Strategy::Auto if p == 2 => Strategy::Exhaustive,
        Strategy::Auto => Strategy::TorusOrbits,
        s => s,
    };
    let keyer = Keyer {
        field: Field::new(p),
        gf2: p == 2,
        sets: spec.sets,
    };
    match strategy {
        Strategy::Exhaustive => {
            budget.check_pow("exhaustive census", p, d)?;
            Ok(exhaustive(spec, &keyer))
        }
        _ => {
            budget.check_pow("torus census supports", 2, d)?;
            budget.check("torus census", d, torus_work(n, p, spec.free))?;
            Ok(torus(spec, &keyer))
        }
    }
}

fn exhaustive(spec: &CensusSpec<'_>, keyer: &Keyer<'_>) -> Histogram {
    let (p, d) = (spec.p, spec.free.len());
    let mut t = 0;
    while t < d && pow_u128(p, t).unwrap() < CHUNKS {
        t += 1;
    }
    let prefixes: Vec<u128> = (0..pow_u128(p, t).unwrap()).collect();
    let rest = d - t;
    let free = spec.free;
    par::map_reduce(
        prefixes,
        |pre| {
            let mut a: Mat = [[0u8; MAXN]; MAXN];
            let mut x = pre;
            for &(r, c) in &free[..t] {
                a[r][c] = (x % p as u128) as u8;
                x /= p as u128;
            }
            let mut h = Histogram::new();
            let tail = &free[t..];
            loop {
                *h.entry(keyer.key(&a)).or_insert(0) += 1;
                // odometer over the tail
                let mut k = 0;
                loop {
                    if k == rest {
                        return h;
                    }
                    let (r, c) = tail[k];
                    a[r][c] += 1;
                    if (a[r][c] as u64) < p {
                        break;
                    }
                    a[r][c] = 0;
                    k += 1;
                }
            }
        },
        Histogram::new,
        merge,
    )
}

fn torus(spec: &CensusSpec<'_>, keyer: &Keyer<'_>) -> Histogram {
    let (n, p, d) = (spec.n, spec.p, spec.free.len());
    let free = spec.free;
    let masks: Vec<u64> = (0..(1u64 << d)).collect();
    par::map_reduce(
        masks,
        |mask| {
            let (forest, resid) = split_support(n, free, mask);
            let weight = pow_u128(p - 1, forest.len()).unwrap();
            let mut a: Mat = [[0u8; MAXN]; MAXN];
            for &t in forest.iter().chain(&resid) {
                let (r, c) = free[t];
                a[r][c] = 1;
            }
            let mut h = Histogram::new();
            loop {
                *h.entry(keyer.key(&a)).or_insert(0) += weight;
                let mut k = 0;
                loop {
                    if k == resid.len() {
                        return h;
                    }
                    let (r, c) = free[resid[k]];
                    a[r][c] += 1;
                    if (a[r][c] as u64) < p {
                        break;
                    }
                    a[r][c] = 1;
                    k += 1;
                }
            }
        },
        Histogram::new,
        merge,
    )
}

/// Dense matrix for a filling, for callers that need the general path.
pub fn to_rows(n: usize, free: &[(usize, usize)], values: &[u64]) -> Vec<Vec<i64>> {
    let mut rows = vec![vec![0i64; n]; n];
    for (&(r, c), &v) in free.iter().zip(values) {
        rows[r][c] = v as i64;
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gflin::{jordan_partition, GFMatrix};

    fn strictly_upper(n: usize) -> Vec<(usize, usize)> {
        (0..n).flat_map(|r| (r + 1..n).map(move |c| (r, c))).collect()
    }

    #[test]
    fn pack_round_trip() {
        for n in 0..=8 {
            for l in Partition::all(n) {
                assert_eq!(unpack(pack(l.parts())), l);
            }
        }
    }

    #[test]
    fn kernel_jf_matches_general() {
        for p in [2u64, 3, 5] {
            let field = Field::new(p);
            let free = strictly_upper(4);
            let total = p.pow(free.len() as u32);
            let all: Vec<usize> = (0..4).collect();
            let sub = [0usize, 2, 3];
            for code in (0..total).step_by(7) {
                let mut x = code;
                let mut a: Mat = [[0; MAXN]; MAXN];
                let mut vals = Vec::new();
                for &(r, c) in &free {
                    a[r][c] = (x % p) as u8;
                    vals.push(x % p);
                    x /= p;
                }
                let g = GFMatrix::new(p, to_rows(4, &free, &vals)).unwrap();
                let expect = jordan_partition(&g).unwrap();
                assert_eq!(unpack(field.jf(&a, &all)), expect);
                let gs = g.submatrix(&sub, &sub);
                assert_eq!(unpack(field.jf(&a, &sub)), jordan_partition(&gs).unwrap());
                if p == 2 {
                    assert_eq!(unpack(jf_gf2(&a, &all)), expect);
                    assert_eq!(unpack(jf_gf2(&a, &sub)), jordan_partition(&gs).unwrap());
                }
            }
        }
    }

    #[test]
    fn strategies_agree() {
        let free = strictly_upper(4);
        let sets: Vec<Vec<usize>> = vec![vec![0, 1], vec![0, 1, 2], vec![0, 1, 2, 3], vec![1, 3]];
        for p in [2u64, 3, 5] {
            let spec = CensusSpec {
                n: 4,
                p,
                free: &free,
                sets: &sets,
            };
            let b = Budget::new(24).unwrap();
            let e = census(&spec, Strategy::Exhaustive, b).unwrap();
            let t = census(&spec, Strategy::TorusOrbits, b).unwrap();
            assert_eq!(e, t, "p = {p}");
            assert_eq!(e.values().sum::<u128>(), (p as u128).pow(6));
            assert!(torus_work(4, p, &free) <= (p as u128).pow(6));
        }
    }

    #[test]
    fn cap_is_enforced() {
        let free = strictly_upper(5);
        let sets = vec![(0..5).collect::<Vec<_>>()];
        let spec = CensusSpec {
            n: 5,
            p: 3,
            free: &free,
            sets: &sets,
        };
        let err = census(&spec, Strategy::Exhaustive, Budget::new(10).unwrap()).unwrap_err();
        assert!(matches!(err, crate::error::Error::CapExceeded { free_dim: 10, .. }));
    }
}
