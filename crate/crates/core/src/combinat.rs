//! Partitions, weak compositions, semistandard tableaux and nonnegative-integer
//! matrices.

use std::cmp::Ordering;
use std::fmt;

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{invalid, Error, Result};

pub fn binom2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

// ---------------------------------------------------------------------------
// Partition

/// A weakly decreasing sequence of positive integers. Trailing zeros are
/// stripped on construction.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return invalid(format!("{parts:?} is not weakly decreasing"));
        }
        if parts.contains(&0) {
            return invalid(format!("{parts:?} has an interior zero"));
        }
        Ok(Partition(parts))
    }

    pub(crate) fn from_sorted(parts: Vec<usize>) -> Self {
        debug_assert!(Partition::new(parts.clone()).is_ok());
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The one-row partition `(n)`.
    pub fn row(n: usize) -> Self {
        Partition::from_sorted(vec![n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// `λ_{i+1}` in 0-based indexing; zero beyond the last part.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let w = self.part(0);
        let parts = (1..=w)
            .map(|c| self.0.iter().filter(|&&x| x >= c).count())
            .collect();
        Partition(parts)
    }

    /// `n(λ) = Σ C(λ_i, 2)`.
    pub fn n_stat(&self) -> usize {
        self.0.iter().map(|&x| binom2(x)).sum()
    }

    /// Whether the Young diagram of `other` fits inside this one.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    /// The multiplicity vector `(λ_1 − λ_2, λ_2 − λ_3, …)`, of length `λ.len()`.
    pub fn gaps(&self) -> Vec<usize> {
        (0..self.len()).map(|i| self.part(i) - self.part(i + 1)).collect()
    }

    /// All partitions of `n`, in decreasing lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn go(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for x in (1..=rem.min(max)).rev() {
                cur.push(x);
                go(rem - x, x, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// True iff `μ ⊆ λ` and `λ/μ` has at most one box in every column, i.e.
/// `λ_{i+1} ≤ μ_i` for all `i`.
pub fn is_horizontal_strip(lambda: &Partition, mu: &Partition) -> bool {
    lambda.contains(mu) && (0..lambda.len()).all(|i| lambda.part(i + 1) <= mu.part(i))
}

// ---------------------------------------------------------------------------
// Composition

/// A weak composition: a fixed-length sequence of nonnegative integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>) -> Self {
        Composition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn n_stat(&self) -> usize {
        self.0.iter().map(|&x| binom2(x)).sum()
    }

    /// `e₂(α) = Σ_{i<j} α_i α_j`.
    pub fn e2_stat(&self) -> usize {
        let mut acc = 0;
        let mut seen = 0;
        for &x in &self.0 {
            acc += seen * x;
            seen += x;
        }
        acc
    }

    /// `(0, α_1, α_1 + α_2, …, n)`, of length `len + 1`.
    pub fn partial_sums(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.0.len() + 1);
        let mut s = 0;
        out.push(0);
        for &x in &self.0 {
            s += x;
            out.push(s);
        }
        out
    }

    /// Block index (0-based) of each position `0..n`.
    pub fn block_of_each(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.size());
        for (b, &x) in self.0.iter().enumerate() {
            out.extend(std::iter::repeat(b).take(x));
        }
        out
    }

    /// All weak compositions of `n` with exactly `k` parts, lexicographically.
    pub fn weak(n: usize, k: usize) -> Vec<Composition> {
        fn go(rem: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
            if k == 0 {
                if rem == 0 {
                    out.push(Composition(cur.clone()));
                }
                return;
            }
            if k == 1 {
                cur.push(rem);
                out.push(Composition(cur.clone()));
                cur.pop();
                return;
            }
            for x in 0..=rem {
                cur.push(x);
                go(rem - x, k - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, k, &mut Vec::new(), &mut out);
        out
    }

    /// All compositions of `n` with positive parts (`2^{n-1}` of them; one,
    /// the empty composition, for `n = 0`).
    pub fn strict(n: usize) -> Vec<Composition> {
        fn go(rem: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
            if rem == 0 {
                out.push(Composition(cur.clone()));
                return;
            }
            for x in 1..=rem {
                cur.push(x);
                go(rem - x, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, &mut Vec::new(), &mut out);
        out
    }
}

impl From<&Partition> for Composition {
    fn from(p: &Partition) -> Self {
        Composition(p.0.clone())
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl Serialize for Composition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Composition", 1)?;
        st.serialize_field("parts", &self.0)?;
        st.end()
    }
}

// ---------------------------------------------------------------------------
// Tableau

/// A semistandard Young tableau on the alphabet `{1, …, letters}`.
///
/// The alphabet size is part of the value: it fixes the length of the content
/// and of the chain `T⁽⁰⁾ ⊆ ⋯ ⊆ T⁽ᵏ⁾`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tableau {
    rows: Vec<Vec<usize>>,
    letters: usize,
}

impl Tableau {
    pub fn new(rows: Vec<Vec<usize>>, letters: usize) -> Result<Self> {
        if rows.iter().any(|r| r.is_empty()) {
            return invalid("tableau rows must be nonempty");
        }
        let shape = rows.iter().map(|r| r.len()).collect::<Vec<_>>();
        if shape.windows(2).any(|w| w[0] < w[1]) {
            return invalid(format!("row lengths {shape:?} are not a partition"));
        }
        for row in &rows {
            if row.windows(2).any(|w| w[0] > w[1]) {
                return invalid(format!("row {row:?} is not weakly increasing"));
            }
            if row.iter().any(|&x| x == 0 || x > letters) {
                return invalid(format!("entries of {row:?} must lie in 1..={letters}"));
            }
        }
        for r in 1..rows.len() {
            for c in 0..rows[r].len() {
                if rows[r - 1][c] >= rows[r][c] {
                    return invalid(format!("column {} is not strictly increasing", c + 1));
                }
            }
        }
        Ok(Tableau { rows, letters })
    }

    /// Builds a tableau whose alphabet is `{1, …, max entry}`.
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let letters = rows.iter().flatten().copied().max().unwrap_or(0);
        Tableau::new(rows, letters)
    }

    pub fn empty(letters: usize) -> Self {
        Tableau {
            rows: Vec::new(),
            letters,
        }
    }

    /// The one-row tableau with `α_i` copies of `i`.
    pub fn one_row(alpha: &Composition) -> Self {
        let row: Vec<usize> = alpha
            .parts()
            .iter()
            .enumerate()
            .flat_map(|(i, &a)| std::iter::repeat(i + 1).take(a))
            .collect();
        let rows = if row.is_empty() { vec![] } else { vec![row] };
        Tableau {
            rows,
            letters: alpha.len(),
        }
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn letters(&self) -> usize {
        self.letters
    }

    /// Same tableau on a larger alphabet.
    pub fn with_letters(&self, letters: usize) -> Result<Self> {
        Tableau::new(self.rows.clone(), letters)
    }

    pub fn shape(&self) -> Partition {
        Partition(self.rows.iter().map(|r| r.len()).collect())
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn content(&self) -> Composition {
        let mut c = vec![0; self.letters];
        for &x in self.rows.iter().flatten() {
            c[x - 1] += 1;
        }
        Composition(c)
    }

    /// Rows concatenated top to bottom.
    pub fn reading_word(&self) -> Vec<usize> {
        self.rows.iter().flatten().copied().collect()
    }

    /// `T⁽⁰⁾ = ∅, T⁽¹⁾, …, T⁽ᵏ⁾` where `T⁽ⁱ⁾` is the shape of the entries `≤ i`.
    pub fn chain(&self) -> Vec<Partition> {
        (0..=self.letters)
            .map(|i| {
                Partition::from_sorted(
                    self.rows
                        .iter()
                        .map(|r| r.iter().take_while(|&&x| x <= i).count())
                        .collect(),
                )
            })
            .collect()
    }

    /// Inverse of [`Tableau::chain`]; the alphabet has `chain.len() - 1` letters.
    pub fn from_chain(chain: &[Partition]) -> Result<Self> {
        if chain.is_empty() || !chain[0].is_empty() {
            return invalid("chain must start at the empty partition");
        }
        let last = chain.last().unwrap();
        let mut rows: Vec<Vec<usize>> = last.parts().iter().map(|&l| Vec::with_capacity(l)).collect();
        for i in 1..chain.len() {
            if !is_horizontal_strip(&chain[i], &chain[i - 1]) {
                return invalid(format!(
                    "{}/{} is not a horizontal strip",
                    chain[i],
                    chain[i - 1]
                ));
            }
            for (r, row) in rows.iter_mut().enumerate() {
                let (lo, hi) = (chain[i - 1].part(r), chain[i].part(r));
                if hi > last.part(r) {
                    return invalid("chain is not increasing");
                }
                row.extend(std::iter::repeat(i).take(hi - lo));
            }
        }
        Tableau::new(rows, chain.len() - 1)
    }

    /// For a standard tableau, the (0-based) row containing each letter.
    pub fn rows_of_letters(&self) -> Option<Vec<usize>> {
        let mut out = vec![usize::MAX; self.letters];
        for (r, row) in self.rows.iter().enumerate() {
            for &x in row {
                if out[x - 1] != usize::MAX {
                    return None;
                }
                out[x - 1] = r;
            }
        }
        if out.contains(&usize::MAX) {
            None
        } else {
            Some(out)
        }
    }
}

impl Ord for Tableau {
    fn cmp(&self, other: &Self) -> Ordering {
        self.reading_word()
            .cmp(&other.reading_word())
            .then_with(|| self.shape().cmp(&other.shape()))
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Tableau {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows)
    }
}

impl Serialize for Tableau {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows.serialize(s)
    }
}

/// `SSYT(λ, α)` in lexicographic order of reading words.
pub fn ssyt_enumerate(lambda: &Partition, alpha: &Composition) -> Result<Vec<Tableau>> {
    if lambda.size() != alpha.size() {
        return Err(Error::SizeMismatch(format!(
            "|λ| = {} but |α| = {}",
            lambda.size(),
            alpha.size()
        )));
    }
    let rows = lambda.len();
    let mut out = Vec::new();
    let mut chain = vec![Partition::empty()];
    // Entries are placed letter by letter; each step adds a horizontal strip.
    fn go(
        lambda: &Partition,
        alpha: &[usize],
        rows: usize,
        chain: &mut Vec<Partition>,
        out: &mut Vec<Tableau>,
    ) {
        let i = chain.len() - 1;
        if i == alpha.len() {
            if chain.last().unwrap() == lambda {
                out.push(Tableau::from_chain(chain).expect("valid chain"));
            }
            return;
        }
        let mu = chain.last().unwrap().clone();
        let mut next = vec![0usize; rows];
        fn strips(
            r: usize,
            rem: usize,
            lambda: &Partition,
            mu: &Partition,
            next: &mut Vec<usize>,
            f: &mut dyn FnMut(&[usize]),
        ) {
            if r == next.len() {
                if rem == 0 {
                    f(next);
                }
                return;
            }
            let lo = mu.part(r);
            let hi = if r == 0 {
                lambda.part(0)
            } else {
                lambda.part(r).min(mu.part(r - 1))
            };
            let room: usize = (r..next.len())
                .map(|s| {
                    let h = if s == 0 {
                        lambda.part(0)
                    } else {
                        lambda.part(s).min(mu.part(s - 1))
                    };
                    h.saturating_sub(mu.part(s))
                })
                .sum();
            if room < rem {
                return;
            }
            for v in lo..=hi.max(lo) {
                if v - lo > rem {
                    break;
                }
                next[r] = v;
                strips(r + 1, rem - (v - lo), lambda, mu, next, f);
            }
        }
        let mut found = Vec::new();
        strips(0, alpha[i], lambda, &mu, &mut next, &mut |v| {
            found.push(Partition::from_sorted(v.to_vec()))
        });
        for nu in found {
            chain.push(nu);
            go(lambda, alpha, rows, chain, out);
            chain.pop();
        }
    }
    go(lambda, alpha.parts(), rows, &mut chain, &mut out);
    out.sort();
    Ok(out)
}

/// Every tableau of size `n` with content in the given alphabet, bucketed by
/// nothing: convenience used by sweeps.
pub fn ssyt_all(alpha: &Composition) -> Vec<Tableau> {
    let mut out = Vec::new();
    for lambda in Partition::all(alpha.size()) {
        out.extend(ssyt_enumerate(&lambda, alpha).expect("sizes agree"));
    }
    out
}

// ---------------------------------------------------------------------------
// Nonnegative-integer matrices

/// A `k × l` matrix of nonnegative integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NatMatrix {
    rows: Vec<Vec<usize>>,
    cols: usize,
}

impl NatMatrix {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return invalid("matrix rows have different lengths");
        }
        Ok(NatMatrix { rows, cols })
    }

    pub fn zeros(k: usize, l: usize) -> Self {
        NatMatrix {
            rows: vec![vec![0; l]; k],
            cols: l,
        }
    }

    pub fn diagonal(alpha: &Composition) -> Self {
        let k = alpha.len();
        let mut m = NatMatrix::zeros(k, k);
        for (i, &a) in alpha.parts().iter().enumerate() {
            m.rows[i][i] = a;
        }
        m
    }

    /// The `n × n` matrix with a 1 at `(w(j), j)` for a one-line permutation `w`
    /// (1-indexed).
    pub fn permutation(w: &[usize]) -> Result<Self> {
        let n = w.len();
        check_permutation(w)?;
        let mut m = NatMatrix::zeros(n, n);
        for (j, &wj) in w.iter().enumerate() {
            m.rows[wj - 1][j] = 1;
        }
        Ok(m)
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn l(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: usize) {
        self.rows[i][j] = v;
    }

    pub fn total(&self) -> usize {
        self.rows.iter().flatten().sum()
    }

    pub fn row_sums(&self) -> Composition {
        Composition(self.rows.iter().map(|r| r.iter().sum()).collect())
    }

    pub fn col_sums(&self) -> Composition {
        Composition(
            (0..self.cols)
                .map(|j| self.rows.iter().map(|r| r[j]).sum())
                .collect(),
        )
    }

    pub fn transpose(&self) -> Self {
        NatMatrix {
            rows: (0..self.cols)
                .map(|j| self.rows.iter().map(|r| r[j]).collect())
                .collect(),
            cols: self.rows.len(),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().flatten().copied()
    }

    pub fn is_diagonal(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, r)| r.iter().enumerate().all(|(j, &x)| i == j || x == 0))
    }

    /// `Σ_{i<i′, j<j′} M_{ij} M_{i′j′}`: the dimension of the space of
    /// nilpotents compatible with both canonical flags.
    pub fn free_dim(&self) -> usize {
        let (k, l) = (self.k(), self.l());
        let mut acc = 0;
        for i in 0..k {
            for j in 0..l {
                let m = self.rows[i][j];
                if m == 0 {
                    continue;
                }
                for i2 in i + 1..k {
                    for j2 in j + 1..l {
                        acc += m * self.rows[i2][j2];
                    }
                }
            }
        }
        acc
    }
}

impl fmt::Display for NatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows)
    }
}

impl Serialize for NatMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows.serialize(s)
    }
}

pub(crate) fn check_permutation(w: &[usize]) -> Result<()> {
    let n = w.len();
    let mut seen = vec![false; n];
    for &x in w {
        if x == 0 || x > n || seen[x - 1] {
            return invalid(format!("{w:?} is not a permutation of 1..={n}"));
        }
        seen[x - 1] = true;
    }
    Ok(())
}

/// `Mat(α, β)`: all matrices with row sums `α` and column sums `β`, filled
/// row-major with remaining-sum pruning.
pub fn nat_matrices(alpha: &Composition, beta: &Composition) -> Vec<NatMatrix> {
    let (k, l) = (alpha.len(), beta.len());
    if alpha.size() != beta.size() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut m = NatMatrix::zeros(k, l);
    let mut colrem = beta.parts().to_vec();
    fn go(
        i: usize,
        j: usize,
        rowrem: usize,
        alpha: &[usize],
        colrem: &mut Vec<usize>,
        m: &mut NatMatrix,
        out: &mut Vec<NatMatrix>,
    ) {
        let (k, l) = (alpha.len(), colrem.len());
        if i == k {
            if colrem.iter().all(|&c| c == 0) {
                out.push(m.clone());
            }
            return;
        }
        if l == 0 {
            if rowrem == 0 {
                go(i + 1, 0, alpha.get(i + 1).copied().unwrap_or(0), alpha, colrem, m, out);
            }
            return;
        }
        // The remaining rows must be able to absorb the remaining columns.
        if j == 0 {
            let rows_left: usize = alpha[i..].iter().sum();
            if rows_left != colrem.iter().sum::<usize>() {
                return;
            }
        }
        if j == l - 1 {
            if rowrem > colrem[j] {
                return;
            }
            m.rows[i][j] = rowrem;
            colrem[j] -= rowrem;
            go(i + 1, 0, alpha.get(i + 1).copied().unwrap_or(0), alpha, colrem, m, out);
            colrem[j] += rowrem;
            m.rows[i][j] = 0;
            return;
        }
        let hi = rowrem.min(colrem[j]);
        for v in 0..=hi {
            m.rows[i][j] = v;
            colrem[j] -= v;
            go(i, j + 1, rowrem - v, alpha, colrem, m, out);
            colrem[j] += v;
        }
        m.rows[i][j] = 0;
    }
    let first = alpha.parts().first().copied().unwrap_or(0);
    go(0, 0, first, alpha.parts(), &mut colrem, &mut m, &mut out);
    out
}

/// Every matrix whose row and column sums are compositions of `n` with
/// positive parts (no zero rows or columns).
pub fn nat_matrices_of_size(n: usize) -> Vec<NatMatrix> {
    let comps = Composition::strict(n);
    let mut out = Vec::new();
    for a in &comps {
        for b in &comps {
            out.extend(nat_matrices(a, b));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn t(rows: &[&[usize]], k: usize) -> Tableau {
        Tableau::new(rows.iter().map(|r| r.to_vec()).collect(), k).unwrap()
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p(&[5, 5, 3, 2]).conjugate(), p(&[4, 4, 3, 2, 2]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
    }

    #[test]
    fn trailing_zeros_are_stripped() {
        assert_eq!(p(&[2, 1, 0, 0]), p(&[2, 1]));
        assert!(Partition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn horizontal_strip_examples() {
        assert!(!is_horizontal_strip(&p(&[5, 5, 3, 2]), &p(&[4, 4, 1, 1])));
        assert!(is_horizontal_strip(&p(&[3, 1]), &p(&[3, 1])));
        assert!(is_horizontal_strip(&p(&[4, 2]), &p(&[2, 1])));
    }

    // Column-by-column oracle: at most one box per column of λ/μ.
    fn strip_by_columns(l: &Partition, m: &Partition) -> bool {
        if !l.contains(m) {
            return false;
        }
        let (lc, mc) = (l.conjugate(), m.conjugate());
        (0..lc.len()).all(|c| lc.part(c) - mc.part(c) <= 1)
    }

    #[test]
    fn horizontal_strip_matches_column_counts() {
        for n in 0..=7 {
            for l in Partition::all(n) {
                for s in 0..=n {
                    for m in Partition::all(s) {
                        assert_eq!(is_horizontal_strip(&l, &m), strip_by_columns(&l, &m));
                    }
                }
            }
        }
    }

    #[test]
    fn statistics() {
        let a = Composition::new(vec![5, 5, 3, 2]);
        assert_eq!(a.n_stat(), 24);
        assert_eq!(a.e2_stat(), 81);
        assert_eq!(Composition::new(vec![7]).n_stat(), 21);
        assert_eq!(Composition::new(vec![7]).e2_stat(), 0);
        assert_eq!(Composition::new(vec![2, 1, 3]).n_stat(), 4);
    }

    #[test]
    fn ssyt_examples() {
        let ts = ssyt_enumerate(&p(&[4, 2]), &Composition::new(vec![2, 1, 3])).unwrap();
        assert_eq!(ts, vec![t(&[&[1, 1, 2, 3], &[3, 3]], 3), t(&[&[1, 1, 3, 3], &[2, 3]], 3)]);
        let ts = ssyt_enumerate(&p(&[4]), &Composition::new(vec![4])).unwrap();
        assert_eq!(ts, vec![t(&[&[1, 1, 1, 1]], 1)]);
        let ts = ssyt_enumerate(&p(&[2, 2]), &Composition::new(vec![1, 1, 1, 1])).unwrap();
        assert_eq!(ts.len(), 2);
        assert!(ssyt_enumerate(&p(&[2]), &Composition::new(vec![1])).is_err());
    }

    #[test]
    fn chain_examples() {
        let c = t(&[&[1, 1, 3, 3], &[2, 3]], 3).chain();
        assert_eq!(c, vec![Partition::empty(), p(&[2]), p(&[2, 1]), p(&[4, 2])]);
        assert_eq!(t(&[&[1, 1, 1]], 1).chain(), vec![Partition::empty(), p(&[3])]);
        let c = t(&[&[1, 2], &[3, 4]], 4).chain();
        assert_eq!(c, vec![Partition::empty(), p(&[1]), p(&[2]), p(&[2, 1]), p(&[2, 2])]);
    }

    // Brute-force oracle: every filling of λ by a multiset of α, kept if semistandard.
    fn ssyt_brute(l: &Partition, a: &Composition) -> usize {
        let word: Vec<usize> = a
            .parts()
            .iter()
            .enumerate()
            .flat_map(|(i, &x)| std::iter::repeat(i + 1).take(x))
            .collect();
        let n = word.len();
        let mut count = 0;
        let mut used = vec![false; n];
        let mut cur = Vec::new();
        fn go(
            word: &[usize],
            used: &mut Vec<bool>,
            cur: &mut Vec<usize>,
            l: &Partition,
            k: usize,
            count: &mut usize,
        ) {
            if cur.len() == word.len() {
                let mut rows = Vec::new();
                let mut at = 0;
                for &len in l.parts() {
                    rows.push(cur[at..at + len].to_vec());
                    at += len;
                }
                if Tableau::new(rows, k).is_ok() {
                    *count += 1;
                }
                return;
            }
            let mut last = None;
            for i in 0..word.len() {
                if used[i] || last == Some(word[i]) {
                    continue;
                }
                last = Some(word[i]);
                used[i] = true;
                cur.push(word[i]);
                go(word, used, cur, l, k, count);
                cur.pop();
                used[i] = false;
            }
        }
        go(&word, &mut used, &mut cur, l, a.len(), &mut count);
        count
    }

    #[test]
    fn ssyt_counts_match_brute_force() {
        for n in 0..=5 {
            for l in Partition::all(n) {
                for a in Composition::weak(n, 3) {
                    let ts = ssyt_enumerate(&l, &a).unwrap();
                    assert_eq!(ts.len(), ssyt_brute(&l, &a), "{l} {a}");
                    for w in ts.windows(2) {
                        assert!(w[0].reading_word() < w[1].reading_word());
                    }
                    for t in &ts {
                        assert_eq!(t.shape(), l);
                        assert_eq!(t.content(), a);
                        assert_eq!(&Tableau::from_chain(&t.chain()).unwrap(), t);
                    }
                }
            }
        }
    }

    #[test]
    fn matrix_counts() {
        let a = Composition::new(vec![2, 3]);
        let b = Composition::new(vec![3, 2]);
        let ms = nat_matrices(&a, &b);
        assert_eq!(ms.len(), 3);
        for m in &ms {
            assert_eq!(m.row_sums(), a);
            assert_eq!(m.col_sums(), b);
        }
        for n in 0..=3 {
            let mut brute = 0;
            for a in Composition::strict(n) {
                for b in Composition::strict(n) {
                    let cells = a.len() * b.len();
                    let total = (n + 1).pow(cells as u32);
                    for code in 0..total {
                        let mut x = code;
                        let mut rows = vec![vec![0; b.len()]; a.len()];
                        for e in rows.iter_mut().flatten() {
                            *e = x % (n + 1);
                            x /= n + 1;
                        }
                        let m = NatMatrix::new(rows).unwrap();
                        if m.row_sums() == a && m.col_sums() == b {
                            brute += 1;
                        }
                    }
                }
            }
            assert_eq!(nat_matrices_of_size(n).len(), brute, "n = {n}");
        }
        assert_eq!(nat_matrices_of_size(2).len(), 5);
    }

    #[test]
    fn free_dim_examples() {
        let m = NatMatrix::new(vec![vec![1, 1], vec![2, 1]]).unwrap();
        assert_eq!(m.free_dim(), 1);
        let id = NatMatrix::permutation(&[1, 2, 3, 4]).unwrap();
        assert_eq!(id.free_dim(), 6);
        let w = NatMatrix::permutation(&[3, 4, 1, 2]).unwrap();
        assert_eq!(w.free_dim(), 2);
    }
}
