//! q-Whittaker weights, coefficients, and the coefficientwise Cauchy identity.

use serde::Serialize;

use crate::combinat::{nat_matrices, ssyt_enumerate, Composition, Partition, Tableau};
use crate::error::{Error, Result};
use crate::par;
use crate::qalg::{qbinom_inf, qbinomial, qfactorial, qfactorial_product, qmultinomial, qnumber, qnumber_inf, QPoly, QRat};

/// `wt_q(T)` together with the shape-dependent factor of its dual form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightPair {
    pub forward_weight: QPoly,
    pub dual_prefactor: QRat,
}

pub fn weight_pair(t: &Tableau) -> WeightPair {
    WeightPair {
        forward_weight: wtq(t),
        dual_prefactor: dual_prefactor(&t.shape()),
    }
}

/// `wt_q(T) = ∏_{i,j} [T⁽ʲ⁾_i − T⁽ʲ⁾_{i+1} choose T⁽ʲ⁾_i − T⁽ʲ⁻¹⁾_i]_q`.
pub fn wtq(t: &Tableau) -> QPoly {
    let chain = t.chain();
    let mut acc = QPoly::one();
    for j in 1..chain.len() {
        let (cur, prev) = (&chain[j], &chain[j - 1]);
        for i in 0..cur.len() {
            let top = cur.part(i) - cur.part(i + 1);
            let k = cur.part(i) - prev.part(i);
            if k == 0 || k == top {
                continue;
            }
            acc = &acc * &qbinomial(top, k).expect("horizontal strip");
        }
    }
    acc
}

/// The dual form `∏ [T⁽ʲ⁻¹⁾_{i−1} − T⁽ʲ⁻¹⁾_i choose T⁽ʲ⁾_i − T⁽ʲ⁻¹⁾_i]_q`, with an
/// infinite top in the first row.
pub fn wtq_dual(t: &Tableau) -> QRat {
    let chain = t.chain();
    let mut acc = QRat::one();
    for j in 1..chain.len() {
        let (cur, prev) = (&chain[j], &chain[j - 1]);
        for i in 0..cur.len() {
            let k = cur.part(i) - prev.part(i);
            if k == 0 {
                continue;
            }
            let f = if i == 0 {
                qbinom_inf(k)
            } else {
                let top = prev.part(i - 1) - prev.part(i);
                QRat::from_poly(qbinomial(top, k).expect("horizontal strip"))
            };
            acc = &acc * &f;
        }
    }
    acc
}

/// `(1 − q)^{−λ₁} / ∏ [λ_i − λ_{i+1}]!_q`.
pub fn dual_prefactor(lambda: &Partition) -> QRat {
    let den = &QPoly::one_minus_q_pow(lambda.part(0)) * &qfactorial_product(lambda.gaps());
    QRat::new(QPoly::one(), den).expect("nonzero")
}

/// `wt_q` of a standard tableau as `∏_i [T⁽ⁱ⁾_{r_i} − T⁽ⁱ⁾_{r_i+1}]_q`.
pub fn wtq_standard(t: &Tableau) -> Option<QPoly> {
    let rows = t.rows_of_letters()?;
    let chain = t.chain();
    let mut acc = QPoly::one();
    for (i, &r) in rows.iter().enumerate() {
        let c = &chain[i + 1];
        acc = &acc * &qnumber(c.part(r) - c.part(r + 1));
    }
    Some(acc)
}

/// The dual standard form `∏_i [T⁽ⁱ⁻¹⁾_{r_i−1} − T⁽ⁱ⁻¹⁾_{r_i}]_q`, `[∞]_q` in the first row.
pub fn wtq_dual_standard(t: &Tableau) -> Option<QRat> {
    let rows = t.rows_of_letters()?;
    let chain = t.chain();
    let mut acc = QRat::one();
    for (i, &r) in rows.iter().enumerate() {
        let c = &chain[i];
        let f = if r == 0 {
            qnumber_inf()
        } else {
            QRat::from_poly(qnumber(c.part(r - 1) - c.part(r)))
        };
        acc = &acc * &f;
    }
    Some(acc)
}

/// The coefficient of `x^α` in `W_λ(x; q)`.
pub fn whittaker_coeff(lambda: &Partition, alpha: &Composition) -> Result<QPoly> {
    let ts = ssyt_enumerate(lambda, alpha)?;
    Ok(ts.iter().fold(QPoly::zero(), |acc, t| &acc + &wtq(t)))
}

fn check_sizes(alpha: &Composition, beta: &Composition) -> Result<usize> {
    if alpha.size() != beta.size() {
        return Err(Error::SizeMismatch(format!(
            "|α| = {} but |β| = {}",
            alpha.size(),
            beta.size()
        )));
    }
    Ok(alpha.size())
}

/// `Σ_{M ∈ Mat(α,β)} (1 − q)^{−n} / ∏ [M_ij]!_q`.
pub fn cauchy_lhs(alpha: &Composition, beta: &Composition) -> Result<QRat> {
    let n = check_sizes(alpha, beta)?;
    QRat::new(lhs_numerator(alpha, beta, n), common_denominator(n))
}

/// `Σ_λ Σ_{T, T′} (1 − q)^{−λ₁}/∏[λ_i − λ_{i+1}]!_q · wt_q(T) wt_q(T′)`.
pub fn cauchy_rhs(alpha: &Composition, beta: &Composition) -> Result<QRat> {
    let n = check_sizes(alpha, beta)?;
    QRat::new(rhs_numerator(alpha, beta, n)?, common_denominator(n))
}

/// Both sides as reduced rational functions, compared structurally.
pub fn cauchy_check(alpha: &Composition, beta: &Composition) -> Result<bool> {
    Ok(cauchy_lhs(alpha, beta)? == cauchy_rhs(alpha, beta)?)
}

/// `D = (1 − q)^n [n]!_q`; both sides are taken over this denominator so each
/// summand is a polynomial.
fn common_denominator(n: usize) -> QPoly {
    &QPoly::one_minus_q_pow(n) * &qfactorial(n)
}

fn lhs_numerator(alpha: &Composition, beta: &Composition, n: usize) -> QPoly {
    let ms = nat_matrices(alpha, beta);
    par::map_reduce(
        ms,
        |m| qmultinomial(n, &m.entries().collect::<Vec<_>>()).expect("sizes agree"),
        QPoly::zero,
        |a, b| &a + &b,
    )
}

fn rhs_numerator(alpha: &Composition, beta: &Composition, n: usize) -> Result<QPoly> {
    let lambdas = Partition::all(n);
    let terms = par::map(lambdas, |lambda| -> Result<QPoly> {
        let wa = whittaker_coeff(&lambda, alpha)?;
        if wa.is_zero() {
            return Ok(QPoly::zero());
        }
        let wb = whittaker_coeff(&lambda, beta)?;
        let l1 = lambda.part(0);
        // D · prefactor(λ) = (1 − q)^{n − λ₁} · [n]! / ∏[gaps]!.
        let mut gaps = lambda.gaps();
        gaps.extend(std::iter::repeat(1).take(n - l1));
        let scale = &QPoly::one_minus_q_pow(n - l1) * &qmultinomial(n, &gaps)?;
        Ok(&(&scale * &wa) * &wb)
    });
    terms
        .into_iter()
        .try_fold(QPoly::zero(), |acc, t| Ok(&acc + &t?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::ssyt_all;

    fn t(rows: &[&[usize]], k: usize) -> Tableau {
        Tableau::new(rows.iter().map(|r| r.to_vec()).collect(), k).unwrap()
    }

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn c(v: &[usize]) -> Composition {
        Composition::new(v.to_vec())
    }

    #[test]
    fn weight_examples() {
        assert_eq!(wtq(&t(&[&[1, 1, 2, 3], &[3, 3]], 3)), QPoly::from_i64(&[1, 2, 2, 1]));
        assert_eq!(wtq(&t(&[&[1, 1, 3, 3], &[2, 3]], 3)), QPoly::from_i64(&[1, 1]));
        assert_eq!(wtq(&t(&[&[1, 1, 1, 1]], 1)), QPoly::one());
    }

    #[test]
    fn dual_weight_examples() {
        let t1 = t(&[&[1, 1, 3, 3], &[2, 3]], 3);
        assert_eq!(wtq_dual(&t1), &dual_prefactor(&t1.shape()) * &QRat::from_poly(wtq(&t1)));
        let row = t(&[&[1, 1, 1, 1, 1]], 1);
        let expect = QRat::new(QPoly::one(), &QPoly::one_minus_q_pow(5) * &qfactorial(5)).unwrap();
        assert_eq!(wtq_dual(&row), expect);
        let st = t(&[&[1, 2], &[3, 4]], 4);
        assert_eq!(wtq_dual_standard(&st).unwrap(), wtq_dual(&st));
        assert_eq!(wtq_standard(&st).unwrap(), wtq(&st));
    }

    #[test]
    fn dual_identity_all_small_tableaux() {
        for n in 0..=5 {
            for a in Composition::weak(n, 3).into_iter().chain(Composition::strict(n)) {
                for tab in ssyt_all(&a) {
                    let lhs = &dual_prefactor(&tab.shape()) * &QRat::from_poly(wtq(&tab));
                    assert_eq!(wtq_dual(&tab), lhs, "{tab}");
                    if let Some(s) = wtq_standard(&tab) {
                        assert_eq!(s, wtq(&tab));
                        assert_eq!(wtq_dual_standard(&tab).unwrap(), lhs);
                    }
                }
            }
        }
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(whittaker_coeff(&p(&[4, 2]), &c(&[2, 1, 3])).unwrap(), QPoly::from_i64(&[2, 3, 2, 1]));
        assert_eq!(whittaker_coeff(&p(&[3, 1]), &c(&[2, 2])).unwrap(), QPoly::from_i64(&[1, 1]));
        assert_eq!(whittaker_coeff(&p(&[6]), &c(&[6])).unwrap(), QPoly::one());
        assert!(whittaker_coeff(&p(&[2]), &c(&[1])).is_err());
    }

    // Oracle: sum ψ and ψ̃ as rational functions term by term, no shared denominator.
    fn cauchy_naive(a: &Composition, b: &Composition) -> (QRat, QRat) {
        let n = a.size();
        let lhs: QRat = nat_matrices(a, b)
            .iter()
            .map(|m| {
                QRat::new(
                    QPoly::one(),
                    &QPoly::one_minus_q_pow(n) * &qfactorial_product(m.entries()),
                )
                .unwrap()
            })
            .sum();
        let mut rhs = QRat::zero();
        for lambda in Partition::all(n) {
            let ts = ssyt_enumerate(&lambda, a).unwrap();
            let us = ssyt_enumerate(&lambda, b).unwrap();
            for x in &ts {
                for y in &us {
                    rhs = &rhs + &(&wtq_dual(x) * &QRat::from_poly(wtq(y)));
                }
            }
        }
        (lhs, rhs)
    }

    #[test]
    fn cauchy_examples() {
        let a = c(&[1, 1]);
        let two = &QRat::from_int(2) * &QRat::one_minus_q_pow(-2);
        assert_eq!(cauchy_lhs(&a, &a).unwrap(), two);
        let rhs = &QRat::one_minus_q_pow(-1) + &(&QRat::one_minus_q_pow(-2) * &QRat::from_poly(QPoly::from_i64(&[1, 1])));
        assert_eq!(cauchy_rhs(&a, &a).unwrap(), rhs);
        assert_eq!(rhs, two);
        let n = c(&[4]);
        let v = QRat::new(QPoly::one(), &QPoly::one_minus_q_pow(4) * &qfactorial(4)).unwrap();
        assert_eq!(cauchy_lhs(&n, &n).unwrap(), v);
        assert_eq!(cauchy_rhs(&n, &n).unwrap(), v);
        assert!(cauchy_check(&c(&[1]), &c(&[2])).is_err());
    }

    #[test]
    fn cauchy_all_compositions_of_four() {
        let cs = Composition::strict(4);
        for a in &cs {
            for b in &cs {
                assert!(cauchy_check(a, b).unwrap(), "{a} {b}");
                let (l, r) = cauchy_naive(a, b);
                assert_eq!(l, cauchy_lhs(a, b).unwrap());
                assert_eq!(r, cauchy_rhs(a, b).unwrap());
            }
        }
    }
}
