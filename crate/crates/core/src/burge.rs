//! The Burge correspondence: column insertion and its inverse.

use serde::Serialize;

use crate::combinat::{NatMatrix, Tableau};
use crate::error::{invalid, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BurgePair {
    #[serde(rename = "P")]
    pub p: Tableau,
    #[serde(rename = "Q")]
    pub q: Tableau,
}

/// Column insertion on raw rows. Returns the `(row, col)` of the new box.
fn insert_rows(rows: &mut Vec<Vec<usize>>, mut x: usize) -> (usize, usize) {
    let mut c = 0;
    loop {
        // Entries of column c, top to bottom, are rows[r][c] for rows long enough.
        let height = rows.iter().take_while(|r| r.len() > c).count();
        // Smallest entry ≥ x: the column is strictly increasing, so binary search.
        let pos = partition_point(height, |r| rows[r][c] < x);
        if pos == height {
            if height == rows.len() {
                rows.push(Vec::new());
            }
            rows[height].push(x);
            return (height, c);
        }
        std::mem::swap(&mut rows[pos][c], &mut x);
        c += 1;
    }
}

fn partition_point(len: usize, pred: impl Fn(usize) -> bool) -> usize {
    let (mut lo, mut hi) = (0, len);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if pred(mid) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Inserts `i` into `T` column by column: in each column, `i` replaces the
/// smallest entry `≥ i`, which is bumped into the next column; if there is
/// none, `i` is placed at the bottom. Returns the tableau and the new box.
pub fn column_insert(t: &Tableau, i: usize) -> Result<(Tableau, (usize, usize))> {
    let mut rows = t.rows().to_vec();
    let bx = insert_rows(&mut rows, i);
    let letters = t.letters().max(i);
    let out = Tableau::new(rows, letters)
        .map_err(|e| Error::Internal(format!("insertion broke semistandardness: {e}")))?;
    Ok((out, bx))
}

/// `(P(M), Q(M))`: for `j = 1, …, l` and `i = k, …, 1`, insert `i` into `P`
/// `M_{ij}` times, recording `j` in `Q` at each new box.
pub fn burge_forward(m: &NatMatrix) -> BurgePair {
    let mut p: Vec<Vec<usize>> = Vec::new();
    let mut q: Vec<Vec<usize>> = Vec::new();
    for j in 0..m.l() {
        for i in (0..m.k()).rev() {
            for _ in 0..m.get(i, j) {
                let (r, c) = insert_rows(&mut p, i + 1);
                if r == q.len() {
                    q.push(Vec::new());
                }
                debug_assert_eq!(q[r].len(), c);
                q[r].push(j + 1);
            }
        }
    }
    BurgePair {
        p: Tableau::new(p, m.k()).expect("P is semistandard"),
        q: Tableau::new(q, m.l()).expect("Q is semistandard"),
    }
}

/// Reverse bumping from the box `(r, c)`; returns the letter that was inserted.
fn uninsert_rows(rows: &mut Vec<Vec<usize>>, r: usize, c: usize) -> usize {
    let mut x = rows[r].pop().expect("box exists");
    if rows[r].is_empty() {
        rows.pop();
    }
    for cc in (0..c).rev() {
        let height = rows.iter().take_while(|row| row.len() > cc).count();
        // Largest entry ≤ x in column cc.
        let pos = partition_point(height, |rr| rows[rr][cc] <= x) - 1;
        std::mem::swap(&mut rows[pos][cc], &mut x);
    }
    x
}

/// The matrix `M` with `burge_forward(M) = (P, Q)`.
pub fn burge_inverse(p: &Tableau, q: &Tableau) -> Result<NatMatrix> {
    if p.shape() != q.shape() {
        return Err(Error::SizeMismatch(format!(
            "shapes {} and {} differ",
            p.shape(),
            q.shape()
        )));
    }
    let (k, l) = (p.letters(), q.letters());
    let mut m = NatMatrix::zeros(k, l);
    let mut pr = p.rows().to_vec();
    let mut qr = q.rows().to_vec();
    for _ in 0..p.size() {
        // The largest entry of Q; among equal entries, the rightmost box was
        // added last.
        let (mut br, mut bc, mut bv) = (0, 0, 0);
        for (r, row) in qr.iter().enumerate() {
            let c = row.len() - 1;
            let v = row[c];
            if v > bv || (v == bv && c > bc) {
                (br, bc, bv) = (r, c, v);
            }
        }
        if pr[br].len() != bc + 1 {
            return invalid("P and Q do not have the same shape");
        }
        qr[br].pop();
        if qr[br].is_empty() {
            qr.pop();
        }
        let i = uninsert_rows(&mut pr, br, bc);
        m.set(i - 1, bv - 1, m.get(i - 1, bv - 1) + 1);
    }
    if burge_forward(&m) != (BurgePair { p: p.clone(), q: q.clone() }) {
        return invalid("pair is not in the image of the Burge correspondence");
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::{nat_matrices, ssyt_enumerate, Composition, Partition};

    fn t(rows: &[&[usize]], k: usize) -> Tableau {
        Tableau::new(rows.iter().map(|r| r.to_vec()).collect(), k).unwrap()
    }

    fn nm(rows: &[&[usize]]) -> NatMatrix {
        NatMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn insertion_examples() {
        let (u, bx) = column_insert(&t(&[&[2], &[3]], 3), 1).unwrap();
        assert_eq!(u, t(&[&[1, 2], &[3]], 3));
        assert_eq!(bx, (0, 1));
        let (u, bx) = column_insert(&Tableau::empty(2), 2).unwrap();
        assert_eq!(u, t(&[&[2]], 2));
        assert_eq!(bx, (0, 0));
    }

    #[test]
    fn forward_examples() {
        let m = nm(&[&[1, 0, 1], &[2, 1, 1], &[0, 1, 2]]);
        let b = burge_forward(&m);
        assert_eq!(b.p, t(&[&[1, 1, 2, 2, 2], &[2, 3, 3], &[3]], 3));
        assert_eq!(b.q, t(&[&[1, 1, 1, 3, 3], &[2, 2, 3], &[3]], 3));
        assert_eq!(burge_inverse(&b.p, &b.q).unwrap(), m);
        let id = burge_forward(&nm(&[&[1, 0], &[0, 1]]));
        assert_eq!(id.p, t(&[&[1], &[2]], 2));
        assert_eq!(id.q, t(&[&[1], &[2]], 2));
        let z = burge_forward(&NatMatrix::zeros(0, 0));
        assert_eq!(z.p.size(), 0);
        assert_eq!(burge_inverse(&z.p, &z.q).unwrap(), NatMatrix::zeros(0, 0));
    }

    #[test]
    fn standard_round_trip() {
        let a = Composition::new(vec![1, 1, 1, 1]);
        let mut pairs = 0;
        for l in Partition::all(4) {
            let ts = ssyt_enumerate(&l, &a).unwrap();
            for x in &ts {
                for y in &ts {
                    let m = burge_inverse(x, y).unwrap();
                    let b = burge_forward(&m);
                    assert_eq!((&b.p, &b.q), (x, y));
                    pairs += 1;
                }
            }
        }
        // Σ_λ f_λ² = 4!; each is a permutation matrix.
        assert_eq!(pairs, 24);
        assert_eq!(nat_matrices(&a, &a).len(), 24);
    }

    #[test]
    fn shape_mismatch() {
        assert!(burge_inverse(&t(&[&[1, 1]], 1), &t(&[&[1], &[2]], 2)).is_err());
    }
}
