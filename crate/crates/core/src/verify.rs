//! The acceptance checks, parameterized by a size level.
//!
//! Criterion `c` sweeps sizes `n ≤ min(bound_c, level)`; fixtures run at
//! every level. All comparisons are exact.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::burge::{burge_forward, burge_inverse};
use crate::combinat::{nat_matrices, ssyt_all, Composition, NatMatrix, Partition, Tableau};
use crate::error::Result;
use crate::flags::{
    double_coset_census, double_coset_size_formula, flag_count_coefficient, nalpha_census_formula,
    nilpotent_in_nalpha_census, nm_pattern, orbit_census, orbit_size_formula, sym_double_coset_size,
};
use crate::gflin::{jordan_partition, GFMatrix};
use crate::qalg::{gl_count, QPoly, QRat};
use crate::qburge::{
    backward_from_forward, burge_limit_check, diagonal_check, first_primes, forward_table, growth_conditional,
    growth_distribution, interpolate_table, reversibility_check, tableau_pairs, Interpolated,
};
use crate::rppquiver::{
    module_classes, pair_from_rpp, preprojective_direct_check_all, preprojective_mass, preprojective_total_check,
    quiver_variety_census, quiver_variety_count, quiver_variety_formula, quiver_variety_total, rpp_from_pair,
    socle_rpp_from_census,
};
use crate::whittaker::{cauchy_check, whittaker_coeff};
use crate::Budget;

/// Outcome of one check: how many assertions ran and which failed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<String>,
}

/// Failure messages beyond this many are counted but not stored.
const MAX_MESSAGES: usize = 20;

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn record(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            if self.failures.len() < MAX_MESSAGES {
                self.failures.push(msg());
            } else if self.failures.len() == MAX_MESSAGES {
                self.failures.push("…".into());
            }
        }
    }

    pub fn absorb(&mut self, other: CheckReport) {
        self.checked += other.checked;
        for f in other.failures {
            if self.failures.len() < MAX_MESSAGES {
                self.failures.push(format!("{}: {f}", other.name));
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub const CRITERIA: [&str; 14] = [
    "Cauchy identity, all α, β ⊨ n ≤ 5",
    "q-Whittaker coefficient fixtures",
    "flag counts give q-Whittaker coefficients, n ≤ 4, p ∈ {2,3}",
    "n_α census matches the dual closed form, n ≤ 4, p ∈ {2,3}",
    "double-coset and orbit sizes over F_2",
    "q-Burge (B1)–(B3), |M| ≤ 5, p ∈ {2,3,5}",
    "interpolation fixtures",
    "Burge limit at q = 0, |M| ≤ 4",
    "classical Burge bijection, n ≤ 6",
    "diagonal closed form, n ≤ 5, p ∈ {2,3}",
    "growth diagrams are not local (3412 vs 1432)",
    "preprojective masses, n ≤ 4, p ∈ {2,3}",
    "quiver-variety counts, n ≤ 3, p ∈ {2,3}",
    "RPP bijection and socle RPPs",
];

/// Size bound of each criterion's sweep.
const BOUNDS: [usize; 14] = [5, 0, 4, 4, 4, 5, 0, 4, 6, 5, 0, 4, 3, 5];

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub title: &'static str,
    pub max_n: usize,
    pub passed: bool,
    pub checked: usize,
    pub failures: Vec<String>,
    pub millis: u128,
}

/// Compositions swept for size `n`: all strict ones, plus the length-3 weak
/// ones with a zero part.
pub fn sweep_compositions(n: usize) -> Vec<Composition> {
    let mut out = Composition::strict(n);
    for c in Composition::weak(n, 3) {
        if c.parts().contains(&0) {
            out.push(c);
        }
    }
    out
}

/// Every matrix whose margins are both in `sweep_compositions(n)`.
pub fn sweep_matrices(n: usize) -> Vec<NatMatrix> {
    let comps = sweep_compositions(n);
    let mut out = Vec::new();
    for a in &comps {
        for b in &comps {
            out.extend(nat_matrices(a, b));
        }
    }
    out
}

fn tab(rows: &[&[usize]], k: usize) -> Tableau {
    Tableau::new(rows.iter().map(|r| r.to_vec()).collect(), k).expect("fixture tableau")
}

fn mat(rows: &[&[usize]]) -> NatMatrix {
    NatMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).expect("fixture matrix")
}

fn part(v: &[usize]) -> Partition {
    Partition::new(v.to_vec()).expect("fixture partition")
}

fn comp(v: &[usize]) -> Composition {
    Composition::new(v.to_vec())
}

fn int(x: u128) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn poly(c: &[i64]) -> QPoly {
    QPoly::from_i64(c)
}

fn product(ps: &[QPoly]) -> QPoly {
    ps.iter().fold(QPoly::one(), |acc, p| &acc * p)
}

pub fn run_criterion(id: usize, level: usize, seed: u64) -> CriterionResult {
    let max_n = BOUNDS[id - 1].min(level);
    let start = Instant::now();
    let mut rep = CheckReport::new(CRITERIA[id - 1]);
    let out = match id {
        1 => c1(&mut rep, max_n),
        2 => c2(&mut rep),
        3 => c3(&mut rep, max_n),
        4 => c4(&mut rep, max_n),
        5 => c5(&mut rep, max_n),
        6 => c6(&mut rep, max_n),
        7 => c7(&mut rep),
        8 => c8(&mut rep, max_n),
        9 => c9(&mut rep, max_n),
        10 => c10(&mut rep, max_n),
        11 => c11(&mut rep),
        12 => c12(&mut rep, max_n),
        13 => c13(&mut rep, max_n),
        14 => c14(&mut rep, max_n, seed),
        _ => Ok(()),
    };
    if let Err(e) = out {
        rep.record(false, || format!("error: {e}"));
    }
    CriterionResult {
        id,
        title: CRITERIA[id - 1],
        max_n,
        passed: rep.passed(),
        checked: rep.checked,
        failures: rep.failures,
        millis: start.elapsed().as_millis(),
    }
}

pub fn run_all(level: usize, seed: u64) -> Vec<CriterionResult> {
    (1..=CRITERIA.len()).map(|id| run_criterion(id, level, seed)).collect()
}

fn c1(rep: &mut CheckReport, max_n: usize) -> Result<()> {
    for n in 0..=max_n {
        let comps = sweep_compositions(n);
        for a in &comps {
            for b in &comps {
                rep.record(cauchy_check(a, b)?, || format!("Cauchy fails for α={a} β={b}"));
            }
        }
    }
    Ok(())
}

fn c2(rep: &mut CheckReport) -> Result<()> {
    let w = whittaker_coeff(&part(&[4, 2]), &comp(&[2, 1, 3]))?;
    rep.record(w == poly(&[2, 3, 2, 1]), || format!("W_(4,2)(2,1,3) = {w}"));
    let w = whittaker_coeff(&part(&[3, 1]), &comp(&[2, 2]))?;
    rep.record(w == poly(&[1, 1]), || format!("W_(3,1)(2,2) = {w}"));
    Ok(())
}

fn jordan_rep(p: u64, lambda: &Partition) -> GFMatrix {
    GFMatrix::jordan_nilpotent(p, lambda.conjugate().parts())
}

fn c3(rep: &mut CheckReport, max_n: usize) -> Result<()> {
    for p in [2u64, 3] {
        for n in 0..=max_n {
            for lambda in Partition::all(n) {
                let nl = jordan_rep(p, &lambda);
                rep.record(jordan_partition(&nl)? == lambda, || format!("representative of {lambda} is wrong"));
                for alpha in sweep_compositions(n) {
                    let got = flag_count_coefficient(&nl, &alpha)?;
                    let want = QRat::from_poly(whittaker_coeff(&lambda, &alpha)?).eval_inv(p)?;
                    rep.record(got == want, || format!("λ={lambda} α={alpha} p={p}: {got} vs {want}"));
                }
            }
        }
    }
    let nl = jordan_rep(2, &part(&[4, 2]));
    let count = crate::flags::enumerate_compatible_flags(&nl, &comp(&[2, 1, 3]))?.len();
    rep.record(count == 33, || format!("{count} flags for λ=(4,2), α=(2,1,3), p=2; expected 33"));
    Ok(())
}

fn c4(rep: &mut CheckReport, max_n: usize) -> Result<()> {
    for p in [2u64, 3] {
        for n in 0..=max_n {
            for lambda in Partition::all(n) {
                for alpha in sweep_compositions(n) {
                    let got = int(nilpotent_in_nalpha_census(&alpha, &lambda, p)? as u128);
                    let want = nalpha_census_formula(&alpha, &lambda)?.eval_inv(p)?;
                    rep.record(got == want, || format!("λ={lambda} α={alpha} p={p}: {got} vs {want}"));
                }
            }
        }
    }
    // q^{−8}(1−q)²(1+q)(1+q+q²)(2+q+q²)
    let (alpha, lambda) = (comp(&[2, 1, 3]), part(&[4, 2]));
    let expr = &QRat::q_pow(-8)
        * &QRat::from_poly(product(&[poly(&[1, -1]), poly(&[1, -1]), poly(&[1, 1]), poly(&[1, 1, 1]), poly(&[2, 1, 1])]));
    rep.record(nalpha_census_formula(&alpha, &lambda)? == expr, || "closed form differs from the fixture".into());
    for p in [2u64, 3] {
        let got = int(nilpotent_in_nalpha_census(&alpha, &lambda, p)? as u128);
        let want = expr.eval_inv(p)?;
        rep.record(got == want, || format!("n_(2,1,3) census at p={p}: {got} vs {want}"));
    }
    Ok(())
}

fn c5(rep: &mut CheckReport, max_n: usize) -> Result<()> {
    let budget = Budget::current();
    for n in 0..=max_n {
        for a in sweep_compositions(n) {
            for b in sweep_compositions(n) {
                let mats = nat_matrices(&a, &b);
                if n <= 3 {
                    let census = double_coset_census(&a, &b, 2, budget)?;
                    let total: u64 = census.values().sum();
                    let gl = gl_count(n).eval_inv(2)?;
                    rep.record(int(total as u128) == gl, || format!("|GL_{n}(F_2)| census {total}"));
                    for m in &mats {
                        let got = int(census.get(m).copied().unwrap_or(0) as u128);
                        let want = double_coset_size_formula(m).eval_inv(2)?;
                        rep.record(got == want, || format!("|Y_M| M={m}: census {got}, formula {want}"));
                    }
                    rep.record(census.keys().all(|m| mats.contains(m)), || format!("stray labels for α={a} β={b}"));
                }
                let census = orbit_census(&a, &b, 2, budget)?;
                for m in &mats {
                    let got = int(census.get(m).copied().unwrap_or(0) as u128);
                    let want = orbit_size_formula(m).eval_inv(2)?;
                    rep.record(got == want, || format!("|X_M| M={m}: census {got}, formula {want}"));
                }
            }
        }
    }
    let s = sym_double_coset_size(&mat(&[&[1, 1], &[2, 1]]));
    rep.record(s == BigInt::from(72), || format!("S_n double coset size {s}, expected 72"));
    Ok(())
}

fn fixture_pair() -> (Tableau, Tableau) {
    (tab(&[&[1, 1, 2, 2], &[2]], 2), tab(&[&[1, 1, 1, 2], &[2]], 2))
}

fn c6(rep: &mut CheckReport, max_n: usize) -> Result<()> {
    for p in [2u64, 3, 5] {
        for n in 0..=max_n {
            for a in sweep_compositions(n) {
                for b in sweep_compositions(n) {
                    rep.absorb(reversibility_check(&a, &b, p)?);
                }
            }
        }
        // 𝗉 = 1 − q and 𝗉̃ = 1/(1 + q + q²) on the worked pair.
        let m = mat(&[&[1, 1], &[2, 1]]);
        let (t, tp) = fixture_pair();
        let table = forward_table(&m, p)?;
        let fwd = QRat::from_poly(poly(&[1, -1])).eval_inv(p)?;
        rep.record(table.prob(&t, &tp) == fwd, || format!("forward probability at p={p}"));
        let back = backward_from_forward(&table)?;
        let want = QRat::from_poly(poly(&[1, 1, 1])).inv()?.eval_inv(p)?;
        rep.record(back.get(&(t, tp)) == Some(&want), || format!("backward probability at p={p}"));
    }
    Ok(())
}

fn check_interp(rep: &mut CheckReport, m: &NatMatrix, pair: (Tableau, Tableau), want: QPoly) -> Result<()> {
    let primes = first_primes(m.free_dim() + 3);
    let table = interpolate_table(m, &primes)?;
    match table.get(&pair) {
        Some(Interpolated::Polynomial(f)) => rep.record(f == &want, || format!("M={m}: got {f}, expected {want}")),
        Some(Interpolated::Falsified(r)) => rep.record(false, || format!("M={m}: {}", r.reason)),
        None => rep.record(false, || format!("M={m}: pair never observed")),
    }
    Ok(())
}

fn c7(rep: &mut CheckReport) -> Result<()> {
    let m = mat(&[&[1, 1], &[2, 1]]);
    check_interp(rep, &m, fixture_pair(), poly(&[1, -1]))?;
    let rows = (tab(&[&[1, 1, 2, 2, 2]], 2), tab(&[&[1, 1, 1, 2, 2]], 2));
    check_interp(rep, &m, rows, poly(&[0, 1]))?;
    let id = mat(&[&[1, 0], &[0, 1]]);
    let anti = mat(&[&[0, 1], &[1, 0]]);
    let col = tab(&[&[1], &[2]], 2);
    let row = tab(&[&[1, 2]], 2);
    check_interp(rep, &id, (col.clone(), col), poly(&[1, -1]))?;
    check_interp(rep, &id, (row.clone(), row.clone()), poly(&[0, 1]))?;
    check_interp(rep, &anti, (row.clone(), row.clone()), poly(&[1]))?;
    // Backward from the row pair: 1/(1+q) to the antidiagonal, q/(1+q) to the identity.
    for p in first_primes(id.free_dim() + 3) {
        let b_anti = backward_from_forward(&forward_table(&anti, p)?)?;
        let b_id = backward_from_forward(&forward_table(&id, p)?)?;
        let one_plus_q = QRat::from_poly(poly(&[1, 1]));
        let w_anti = one_plus_q.inv()?.eval_inv(p)?;
        let w_id = QRat::from_poly(poly(&[0, 1])).div(&one_plus_q)?.eval_inv(p)?;
        let key = (row.clone(), row.clone());
        rep.record(b_anti.get(&key) == Some(&w_anti), || format!("antidiagonal backward at p={p}"));
        rep.record(b_id.get(&key) == Some(&w_id), || format!("identity backward at p={p}"));
    }
    let w = NatMatrix::permutation(&[2, 1, 4, 3])?;
    let s = tab(&[&[1, 2], &[3, 4]], 4);
    check_interp(rep, &w, (s.clone(), s), product(&[poly(&[1, -1]), poly(&[1, -1]), poly(&[1, 1])]))?;
    Ok(())
}

fn c8(rep: &mut CheckReport, max_n: usize) -> Result<()> {
    for n in 0..=max_n {
        for m in sweep_matrices(n) {
            let primes = first_primes(m.free_dim() + 3);
            rep.absorb(burge_limit_check(&m, &primes)?);
        }
    }
    Ok(())
}

fn c9(rep: &mut CheckReport, max_n: usize) -> Result<()> {
    for n in 0..=max_n {
        let comps = sweep_compositions(n);
        for a in &comps {
            for b in &comps {
                let mut images = BTreeSet::new();
                for m in nat_matrices(a, b) {
                    let fw = burge_forward(&m);
                    let back = burge_inverse(&fw.p, &fw.q)?;
                    rep.record(back == m, || format!("inverse fails on M={m}"));
                    let tr = burge_forward(&m.transpose());
                    rep.record(tr.p == fw.q && tr.q == fw.p, || format!("transpose symmetry fails on M={m}"));
                    images.insert((fw.p, fw.q));
                }
                let pairs: BTreeSet<_> = tableau_pairs(a, b).into_iter().collect();
                rep.record(images == pairs, || format!("Burge image ≠ SSYT pairs for α={a} β={b}"));
            }
        }
    }
    let fw = burge_forward(&mat(&[&[1, 0, 1], &[2, 1, 1], &[0, 1, 2]]));
    rep.record(fw.p == tab(&[&[1, 1, 2, 2, 2], &[2, 3, 3], &[3]], 3), || format!("P = {}", fw.p));
    rep.record(fw.q == tab(&[&[1, 1, 1, 3, 3], &[2, 2, 3], &[3]], 3), || format!("Q = {}", fw.q));
    Ok(())
}

fn c10(rep: &mut CheckReport, max_n: usize) -> Result<()> {
    for p in [2u64, 3] {
        for n in 0..=max_n {
            for a in sweep_compositions(n) {
                rep.absorb(diagonal_check(&a, p)?);
            }
        }
    }
    Ok(())
}

fn c11(rep: &mut CheckReport) -> Result<()> {
    for (w, want) in [([3usize, 4, 1, 2], part(&[2, 2])), ([1, 4, 3, 2], part(&[3, 1]))] {
        let m = NatMatrix::permutation(&w)?;
        let dist = growth_distribution(&m, 2)?;
        let table = forward_table(&m, 2)?;
        let mut edges = std::collections::BTreeMap::new();
        for (g, c) in &dist {
            *edges.entry(g.tableaux()?).or_insert(0u128) += c;
        }
        rep.record(&edges == table.counts(), || format!("w={w:?}: growth-diagram edges disagree with the table"));
        let given = [((3, 3), part(&[2])), ((3, 4), part(&[2, 1])), ((4, 3), part(&[2, 1]))];
        let cond = growth_conditional(&dist, &given, (4, 4));
        let ok = cond.len() == 1 && cond.get(&want) == Some(&int(1));
        rep.record(ok, || format!("w={w:?}: conditional law of G_44 is {cond:?}"));
    }
    Ok(())
}

fn c12(rep: &mut CheckReport, max_n: usize) -> Result<()> {
    for p in [2u64, 3] {
        for n in 0..=max_n {
            for m in sweep_matrices(n) {
                rep.record(preprojective_total_check(&m, p)?, || format!("Σ_R mass ≠ q^(…)ψ(M) for M={m}, p={p}"));
            }
        }
        let m = mat(&[&[1, 1], &[2, 1]]);
        let (t, tp) = fixture_pair();
        let r = rpp_from_pair(&t, &tp)?;
        let want = (&QRat::q_pow(13)
            * &QRat::new(QPoly::one(), &QPoly::one_minus_q_pow(1).pow(4) * &poly(&[1, 1]))?)
            .eval_inv(p)?;
        rep.record(preprojective_mass(&m, &r, p)? == want, || format!("mass of the (2,3)×(3,2) fixture at p={p}"));
        let w = NatMatrix::permutation(&[2, 1, 4, 3])?;
        let s = tab(&[&[1, 2], &[3, 4]], 4);
        let r = rpp_from_pair(&s, &s)?;
        let want = (&QRat::q_pow(4) * &QRat::new(poly(&[1, 1]), QPoly::one_minus_q_pow(1).pow(2))?).eval_inv(p)?;
        rep.record(preprojective_mass(&w, &r, p)? == want, || format!("2143 mass at p={p}"));
        let classes: BigRational = module_classes(&w, p)?
            .iter()
            .filter(|c| c.rpp == r)
            .map(|c| BigRational::new(1.into(), c.aut_size.into()))
            .sum();
        rep.record(classes == want, || format!("2143: Σ 1/|Aut| = {classes} at p={p}"));
    }
    if max_n >= 3 {
        for m in sweep_matrices(3) {
            rep.absorb(preprojective_direct_check_all(&m, 2)?);
        }
    }
    Ok(())
}

fn c13(rep: &mut CheckReport, max_n: usize) -> Result<()> {
    for p in [2u64, 3] {
        for n in 0..=max_n {
            for a in sweep_compositions(n) {
                let mut sum = 0u128;
                for t in ssyt_all(&a) {
                    let c = quiver_variety_census(&a, &t, p)?;
                    sum += c;
                    let f = quiver_variety_count(&a, &t, p)?;
                    rep.record(int(c) == f, || format!("α={a} T={t} p={p}: census {c}, formula {f}"));
                }
                let total = quiver_variety_total(&a)?.eval_inv(p)?;
                rep.record(int(sum) == total, || format!("|𝔐({a})| at p={p}: census {sum}, formula {total}"));
            }
        }
    }
    let t = tab(&[&[1, 1, 2, 2], &[2]], 2);
    let want = &QRat::q_pow(-10)
        * &QRat::from_poly(product(&[poly(&[1, -1]), poly(&[1, 1, 1]), poly(&[1, 1, 1, 1]), poly(&[1, 1, 1, 1, 1])]));
    rep.record(quiver_variety_formula(&t) == want, || "quiver-variety fixture".into());
    rep.record(
        quiver_variety_count(&comp(&[2, 3]), &t, 2)? == want.eval_inv(2)?,
        || "quiver-variety fixture at q = 1/2".into(),
    );
    Ok(())
}

fn c14(rep: &mut CheckReport, max_n: usize, seed: u64) -> Result<()> {
    let mut mats = Vec::new();
    for n in 0..=max_n {
        for a in sweep_compositions(n) {
            for b in sweep_compositions(n) {
                for (t, tp) in tableau_pairs(&a, &b) {
                    let r = rpp_from_pair(&t, &tp)?;
                    let ok = pair_from_rpp(&r)? == (t.clone(), tp.clone())
                        && r.type_comp()? == (a.clone(), b.clone())
                        && r.central() == t.shape();
                    rep.record(ok, || format!("Φ round trip fails on ({t}, {tp})"));
                }
                if n > 0 {
                    mats.extend(nat_matrices(&a, &b));
                }
            }
        }
    }
    if mats.is_empty() {
        return Ok(());
    }
    let samples = if max_n >= 5 { 10_000 } else { 1_000 };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let m = &mats[rng.gen_range(0..mats.len())];
        let pattern = nm_pattern(m);
        let values: Vec<u64> = (0..pattern.dim()).map(|_| rng.gen_range(0..2)).collect();
        let n = pattern.fill(2, &values);
        match socle_rpp_from_census(m, &n) {
            Ok(r) => {
                let ok = r.type_comp()? == (m.row_sums(), m.col_sums());
                rep.record(ok, || format!("socle RPP of M={m} has the wrong type"));
            }
            Err(e) => rep.record(false, || format!("M={m}, N={:?}: {e}", n.to_rows())),
        }
    }
    Ok(())
}
