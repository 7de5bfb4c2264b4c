//! Exact arithmetic in `ℤ[q]` and `ℚ(q)`, the q-analogues, and the
//! finite-field counting formulas.
//!
//! Point counts over `𝔽_p` are written as functions of `q = 1/p`, so they are
//! Laurent polynomials; a negative power `q^{-m}` is carried as a `q^m`
//! denominator inside [`QRat`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::combinat::Composition;
use crate::error::{invalid, Error, Result};

/// A polynomial in `q` with integer coefficients, lowest degree first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QPoly {
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        QPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        QPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        QPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        QPoly::new(vec![c])
    }

    /// `c·q^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k];
        v.push(c);
        QPoly::new(v)
    }

    /// `q^k`.
    pub fn q_pow(k: usize) -> Self {
        QPoly::monomial(BigInt::one(), k)
    }

    /// `(1 − q)^k`.
    pub fn one_minus_q_pow(k: usize) -> Self {
        QPoly::from_i64(&[1, -1]).pow(k)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Exponent of the lowest nonzero term.
    pub fn low_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = QPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        QPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        QPoly { coeffs: v }
    }

    /// Gcd of the coefficients (nonnegative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    fn div_scalar_exact(&self, c: &BigInt) -> Self {
        QPoly::new(self.coeffs.iter().map(|x| x / c).collect())
    }

    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            self.clone()
        } else {
            self.div_scalar_exact(&c)
        }
    }

    /// Division with remainder over `ℤ`, requiring the divisor's leading
    /// coefficient to divide every intermediate leading coefficient.
    /// Returns `None` if that fails.
    pub fn div_rem_exact(&self, d: &QPoly) -> Option<(QPoly, QPoly)> {
        let dd = d.degree()?;
        let lc = d.leading();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Some((QPoly::zero(), self.clone()));
        }
        let mut quo = vec![BigInt::zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            if r[k].is_zero() {
                continue;
            }
            let (qk, rem) = r[k].div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            for (i, c) in d.coeffs.iter().enumerate() {
                r[k - dd + i] -= &qk * c;
            }
            quo[k - dd] = qk;
        }
        Some((QPoly::new(quo), QPoly::new(r)))
    }

    /// `self / d`, which must be exact.
    pub fn div_exact(&self, d: &QPoly) -> Result<QPoly> {
        match self.div_rem_exact(d) {
            Some((q, r)) if r.is_zero() => Ok(q),
            _ => Err(Error::Internal(format!("{d} does not divide {self}"))),
        }
    }

    /// Pseudo-remainder `lc(d)^{deg self − deg d + 1} · self mod d`.
    fn pseudo_rem(&self, d: &QPoly) -> QPoly {
        let dd = d.degree().expect("nonzero divisor");
        let lc = d.leading();
        let mut r = self.coeffs.clone();
        while r.len() > dd {
            let top = r.len() - 1;
            let c = r[top].clone();
            for x in r.iter_mut() {
                *x *= &lc;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[top - dd + i] -= &c * dc;
            }
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        QPoly::new(r)
    }

    /// Primitive gcd over `ℤ[q]`, normalized to a positive leading coefficient.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        if self.is_zero() {
            return other.primitive_part().normalize_sign_leading();
        }
        if other.is_zero() {
            return self.primitive_part().normalize_sign_leading();
        }
        let c = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.scale(&c).normalize_sign_leading()
    }

    fn normalize_sign_leading(self) -> QPoly {
        if self.leading().is_negative() {
            -self
        } else {
            self
        }
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        QPoly::new(v)
    }
}

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($t:ty, $tr:ident, $m:ident) => {
        impl $tr for $t {
            type Output = $t;
            fn $m(self, o: $t) -> $t {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(QPoly, Add, add);
forward_owned!(QPoly, Sub, sub);
forward_owned!(QPoly, Mul, mul);

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            match (k, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{a}q")?,
                (_, true) => write!(f, "q^{k}")?,
                (_, false) => write!(f, "{a}q^{k}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for QPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("QPoly", 1)?;
        let strs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        st.serialize_field("coeffs", &strs)?;
        st.end()
    }
}

// ---------------------------------------------------------------------------

/// A reduced ratio of polynomials in `q`.
///
/// Canonical form: `gcd(num, den) = 1` in `ℤ[q]`, no common integer content,
/// and the lowest-degree nonzero coefficient of `den` is positive. Equality is
/// structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QRat {
    num: QPoly,
    den: QPoly,
}

impl QRat {
    pub fn new(num: QPoly, den: QPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Pole("zero denominator".into()));
        }
        Ok(QRat::reduce(num, den))
    }

    fn reduce(num: QPoly, den: QPoly) -> Self {
        if num.is_zero() {
            return QRat {
                num: QPoly::zero(),
                den: QPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = num.div_scalar_exact(&c);
            den = den.div_scalar_exact(&c);
        }
        let low = den.low_degree().unwrap();
        if den.coeffs[low].is_negative() {
            num = -num;
            den = -den;
        }
        QRat { num, den }
    }

    pub fn zero() -> Self {
        QRat {
            num: QPoly::zero(),
            den: QPoly::one(),
        }
    }

    pub fn one() -> Self {
        QRat::from_poly(QPoly::one())
    }

    pub fn from_poly(p: QPoly) -> Self {
        QRat::reduce(p, QPoly::one())
    }

    pub fn from_int(c: i64) -> Self {
        QRat::from_poly(QPoly::constant(BigInt::from(c)))
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        if k >= 0 {
            QRat::from_poly(QPoly::q_pow(k as usize))
        } else {
            QRat {
                num: QPoly::one(),
                den: QPoly::q_pow((-k) as usize),
            }
        }
    }

    /// `(1 − q)^k` for any integer `k`.
    pub fn one_minus_q_pow(k: i64) -> Self {
        let p = QPoly::one_minus_q_pow(k.unsigned_abs() as usize);
        if k >= 0 {
            QRat::from_poly(p)
        } else {
            QRat::reduce(QPoly::one(), p)
        }
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial this equals, if its denominator is `1`.
    pub fn as_poly(&self) -> Option<&QPoly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Pole("inverse of zero".into()));
        }
        Ok(QRat::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        Ok(QRat::reduce(
            base.num.pow(k.unsigned_abs() as usize),
            base.den.pow(k.unsigned_abs() as usize),
        ))
    }

    pub fn div(&self, o: &QRat) -> Result<Self> {
        Ok(self * &o.inv()?)
    }

    pub fn eval(&self, x: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::Pole(x.to_string()));
        }
        Ok(self.num.eval(x) / d)
    }

    /// Evaluation at `q = 1/p`.
    pub fn eval_inv(&self, p: u64) -> Result<BigRational> {
        self.eval(&BigRational::new(BigInt::one(), BigInt::from(p)))
    }
}

impl Add for &QRat {
    type Output = QRat;
    fn add(self, o: &QRat) -> QRat {
        if self.den == o.den {
            return QRat::reduce(&self.num + &o.num, self.den.clone());
        }
        QRat::reduce(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }
}

impl Sub for &QRat {
    type Output = QRat;
    fn sub(self, o: &QRat) -> QRat {
        self + &(-o.clone())
    }
}

impl Mul for &QRat {
    type Output = QRat;
    fn mul(self, o: &QRat) -> QRat {
        QRat::reduce(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Neg for QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        QRat {
            num: -self.num,
            den: self.den,
        }
    }
}

forward_owned!(QRat, Add, add);
forward_owned!(QRat, Sub, sub);
forward_owned!(QRat, Mul, mul);

impl std::iter::Sum for QRat {
    fn sum<I: Iterator<Item = QRat>>(it: I) -> QRat {
        it.fold(QRat::zero(), |a, b| &a + &b)
    }
}

impl std::iter::Product for QRat {
    fn product<I: Iterator<Item = QRat>>(it: I) -> QRat {
        it.fold(QRat::one(), |a, b| &a * &b)
    }
}

impl From<QPoly> for QRat {
    fn from(p: QPoly) -> Self {
        QRat::from_poly(p)
    }
}

impl fmt::Display for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Serialize for QRat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("QRat", 2)?;
        st.serialize_field("num", &self.num)?;
        st.serialize_field("den", &self.den)?;
        st.end()
    }
}

// ---------------------------------------------------------------------------
// q-analogues

/// `[n]_q = 1 + q + ⋯ + q^{n−1}`.
pub fn qnumber(n: usize) -> QPoly {
    QPoly::new(vec![BigInt::one(); n])
}

/// `[n]!_q`.
pub fn qfactorial(n: usize) -> QPoly {
    (1..=n).fold(QPoly::one(), |acc, i| &acc * &qnumber(i))
}

/// Gaussian binomial `[n choose k]_q`.
pub fn qbinomial(n: usize, k: usize) -> Result<QPoly> {
    if k > n {
        return invalid(format!("q-binomial needs k ≤ n, got ({n}, {k})"));
    }
    // Pascal recurrence keeps everything in ℕ[q] without division.
    let mut row = vec![QPoly::one()];
    for m in 1..=n {
        let mut next = Vec::with_capacity(m + 1);
        for j in 0..=m.min(k) {
            let a = if j < m { row[j].clone() } else { QPoly::zero() };
            let b = if j > 0 { row[j - 1].shift(m - j) } else { QPoly::zero() };
            next.push(&a + &b);
        }
        row = next;
    }
    Ok(row.swap_remove(k))
}

/// `[n choose α]_q = [n]!_q / ∏ [α_i]!_q`, checked to divide exactly.
pub fn qmultinomial(n: usize, alpha: &[usize]) -> Result<QPoly> {
    let s: usize = alpha.iter().sum();
    if s != n {
        return Err(Error::SizeMismatch(format!("parts sum to {s}, not {n}")));
    }
    let den = alpha
        .iter()
        .fold(QPoly::one(), |acc, &a| &acc * &qfactorial(a));
    qfactorial(n).div_exact(&den)
}

/// `∏ [x_i]!_q`.
pub fn qfactorial_product(xs: impl IntoIterator<Item = usize>) -> QPoly {
    xs.into_iter()
        .fold(QPoly::one(), |acc, x| &acc * &qfactorial(x))
}

/// `[∞ choose k]_q = (1 − q)^{−k} / [k]!_q`.
pub fn qbinom_inf(k: usize) -> QRat {
    QRat::reduce(QPoly::one(), &QPoly::one_minus_q_pow(k) * &qfactorial(k))
}

/// `[∞]_q = (1 − q)^{−1}`.
pub fn qnumber_inf() -> QRat {
    QRat::one_minus_q_pow(-1)
}

// ---------------------------------------------------------------------------
// Finite-field counts, as functions of q = 1/|k|

/// `|GL_n| = q^{−n²}(1 − q)^n [n]!_q`.
pub fn gl_count(n: usize) -> QRat {
    let num = &QPoly::one_minus_q_pow(n) * &qfactorial(n);
    QRat::reduce(num, QPoly::q_pow(n * n))
}

/// `|Gr_{k,n}| = q^{−k(n−k)} [n choose k]_q`.
pub fn grassmannian_count(k: usize, n: usize) -> Result<QRat> {
    let b = qbinomial(n, k)?;
    Ok(QRat::reduce(b, QPoly::q_pow(k * (n - k))))
}

/// `|Fl_α| = q^{−e₂(α)} [n choose α]_q`.
pub fn flag_variety_count(alpha: &Composition) -> QRat {
    let m = qmultinomial(alpha.size(), alpha.parts()).expect("sizes agree");
    QRat::reduce(m, QPoly::q_pow(alpha.e2_stat()))
}

/// `|P_α| = q^{−n² + e₂(α)} (1 − q)^n ∏ [α_i]!_q`.
pub fn parabolic_count(alpha: &Composition) -> QRat {
    let n = alpha.size();
    let num = &QPoly::one_minus_q_pow(n) * &qfactorial_product(alpha.parts().iter().copied());
    &QRat::reduce(num, QPoly::q_pow(n * n)) * &QRat::q_pow(alpha.e2_stat() as i64)
}

/// Number of `m × n` matrices of rank `k`:
/// `∏_{i<k} (|k|^m − |k|^i)(|k|^n − |k|^i) / (|k|^k − |k|^i)`.
pub fn rank_matrix_count(m: usize, n: usize, k: usize) -> Result<QRat> {
    if k > m.min(n) {
        return invalid(format!("rank {k} impossible for a {m}×{n} matrix"));
    }
    // |k|^a − |k|^i = q^{−a}(1 − q^{a−i}).
    let one_minus = |e: usize| &QPoly::one() - &QPoly::q_pow(e);
    let mut acc = QRat::one();
    for i in 0..k {
        let num = &one_minus(m - i) * &one_minus(n - i);
        let den = one_minus(k - i);
        acc = &acc * &QRat::reduce(num, den);
        acc = &acc * &QRat::q_pow(k as i64 - m as i64 - n as i64);
    }
    Ok(acc)
}

/// Exact value of `f` at a rational point.
pub fn eval_at(f: &QRat, q0: &BigRational) -> Result<BigRational> {
    f.eval(q0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(c: &[i64]) -> QPoly {
        QPoly::from_i64(c)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn q_analogue_examples() {
        assert_eq!(qfactorial(3), qp(&[1, 2, 2, 1]));
        assert_eq!(qbinomial(4, 2).unwrap(), qp(&[1, 1, 2, 1, 1]));
        assert_eq!(qbinomial(7, 0).unwrap(), QPoly::one());
        assert!(qbinomial(2, 3).is_err());
        assert_eq!(qnumber(0), QPoly::zero());
        assert!(qmultinomial(3, &[1, 1]).is_err());
    }

    #[test]
    fn multinomial_times_factorials() {
        for n in 0..=8 {
            for k in 1..=3 {
                for a in Composition::weak(n, k) {
                    let m = qmultinomial(n, a.parts()).unwrap();
                    assert_eq!(&m * &qfactorial_product(a.parts().iter().copied()), qfactorial(n));
                }
            }
        }
    }

    #[test]
    fn specializations() {
        let zero = rat(0, 1);
        let one = rat(1, 1);
        for n in 1..=8 {
            assert_eq!(qnumber(n).eval(&zero), one);
            assert_eq!(qfactorial(n).eval(&zero), one);
        }
        for n in 0..=12usize {
            let mut c = BigInt::one();
            for k in 0..=n {
                assert_eq!(qbinomial(n, k).unwrap().eval(&one), BigRational::from_integer(c.clone()));
                c = c * BigInt::from(n - k) / BigInt::from(k + 1);
            }
        }
    }

    #[test]
    fn eval_examples() {
        assert_eq!(QRat::one_minus_q_pow(-1).eval(&rat(1, 2)).unwrap(), rat(2, 1));
        assert_eq!(QRat::from_poly(qfactorial(3)).eval(&rat(1, 1)).unwrap(), rat(6, 1));
        // 1 + 1/3 + 2/9 + 1/27 + 1/81 = (81 + 27 + 18 + 3 + 1) / 81
        let b = QRat::from_poly(qbinomial(4, 2).unwrap());
        assert_eq!(b.eval(&rat(1, 3)).unwrap(), rat(130, 81));
        assert!(QRat::one_minus_q_pow(-1).eval(&rat(1, 1)).is_err());
    }

    #[test]
    fn counting_examples() {
        assert_eq!(gl_count(2).eval_inv(2).unwrap(), rat(6, 1));
        assert_eq!(gl_count(3).eval_inv(2).unwrap(), rat(168, 1));
        let g = grassmannian_count(1, 2).unwrap();
        assert_eq!(g, &QRat::q_pow(-1) + &QRat::one());
        assert_eq!(grassmannian_count(0, 5).unwrap(), QRat::one());
        assert_eq!(rank_matrix_count(2, 4, 2).unwrap().eval_inv(2).unwrap(), rat(210, 1));
    }

    // Brute-force ranks over GF(p) for tiny shapes.
    fn rank_mod(rows: &mut [Vec<u64>], p: u64) -> usize {
        let (m, n) = (rows.len(), rows.first().map_or(0, |r| r.len()));
        let mut r = 0;
        for c in 0..n {
            let Some(piv) = (r..m).find(|&i| rows[i][c] % p != 0) else {
                continue;
            };
            rows.swap(r, piv);
            let inv = (1..p).find(|x| x * rows[r][c] % p == 1).unwrap();
            for x in rows[r].iter_mut() {
                *x = *x * inv % p;
            }
            for i in 0..m {
                if i != r && rows[i][c] != 0 {
                    let f = rows[i][c];
                    for j in 0..n {
                        rows[i][j] = (rows[i][j] + p * p - f * rows[r][j] % p) % p;
                    }
                }
            }
            r += 1;
        }
        r
    }

    #[test]
    fn rank_counts_match_enumeration() {
        for &p in &[2u64, 3] {
            for (m, n) in [(1, 1), (2, 2), (2, 3), (2, 4), (3, 3)] {
                if p == 3 && m * n > 9 {
                    continue;
                }
                let total = p.pow((m * n) as u32);
                let mut hist = vec![0u64; m.min(n) + 1];
                for code in 0..total {
                    let mut x = code;
                    let mut rows = vec![vec![0; n]; m];
                    for row in rows.iter_mut() {
                        for e in row.iter_mut() {
                            *e = x % p;
                            x /= p;
                        }
                    }
                    hist[rank_mod(&mut rows, p)] += 1;
                }
                for (k, &h) in hist.iter().enumerate() {
                    let f = rank_matrix_count(m, n, k).unwrap().eval_inv(p).unwrap();
                    assert_eq!(f, rat(h as i64, 1), "{m}x{n} rank {k} over GF({p})");
                }
            }
        }
    }

    #[test]
    fn canonical_form() {
        let a = QRat::new(qp(&[2, -2]), qp(&[-4, 4])).unwrap();
        assert_eq!(a, QRat::new(qp(&[-1]), qp(&[2])).unwrap());
        assert_eq!(a.eval(&rat(5, 7)).unwrap(), rat(-1, 2));
        let b = QRat::new(qp(&[1]), qp(&[0, -1])).unwrap();
        assert_eq!(b.den(), &qp(&[0, 1]));
        assert_eq!(b.num(), &qp(&[-1]));
        // Lowest-degree coefficient of the denominator is made positive.
        let c = QRat::new(qp(&[1]), qp(&[1, -1])).unwrap();
        assert_eq!(c.den(), &qp(&[1, -1]));
        let d = QRat::new(qp(&[1]), qp(&[-1, 1])).unwrap();
        assert_eq!(d, c.clone().neg());
        assert!(QRat::new(QPoly::one(), QPoly::zero()).is_err());
    }

    #[test]
    fn rational_field_ops() {
        let x = QRat::new(qp(&[1, 1]), qp(&[1, -1])).unwrap();
        let y = QRat::new(qp(&[0, 3]), qp(&[1, 0, 1])).unwrap();
        let s = &(&x + &y) - &y;
        assert_eq!(s, x);
        assert_eq!(&x.div(&y).unwrap() * &y, x);
        assert_eq!(&x * &x.inv().unwrap(), QRat::one());
    }
}
