//! Batch verification driver: every identity the library certifies is
//! packaged as an independent job producing a machine-readable report with
//! both sides of the identity rendered in canonical text.
//!
//! Jobs are pure and may run on any worker pool; report order is fixed by
//! the enumeration order of the builders, so identical runs produce
//! identical reports (timings aside). The randomised structural suites draw
//! from a seeded generator and are reproducible per seed.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::annulus::{
    closed_cycle, evaluate, mixed_cycle, mixed_cycle_endpoint, mixed_cycle_sum, power_sum,
    cycle_series_from_elems, mirror_cycle_series, AnnulusElem, HMonomial,
};
use crate::closure::{close_last_strand, markov_trace};
use crate::hecke::{
    eval_word, murphy_elementary_symmetric, murphy_operator, BraidWord, HeckeElem,
};
use crate::perm::Permutation;
use crate::scalar::{LaurentPoly, Scalar};
use crate::series::Series;
use crate::threading::{thread_closure, thread_element, thread_monomial};

pub const LIBRARY_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped { reason: String },
}

/// One verification record: which identity, at which parameters, whether the
/// two sides agreed, and their canonical renderings.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub params: BTreeMap<String, i64>,
    #[serde(flatten)]
    pub status: CheckStatus,
    pub elapsed_ms: f64,
    pub lhs: String,
    pub rhs: String,
    pub version: String,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == CheckStatus::Fail
    }

    pub fn params_string(&self) -> String {
        self.params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn params_map(params: &[(&str, i64)]) -> BTreeMap<String, i64> {
    params.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

/// Run an identity check: status is pass exactly when the two typed sides
/// are equal; both sides are rendered canonically.
fn identity_report<T: PartialEq + Display>(
    check: &str,
    params: &[(&str, i64)],
    body: impl FnOnce() -> (T, T),
) -> VerificationReport {
    let start = Instant::now();
    let (lhs, rhs) = body();
    let status = if lhs == rhs { CheckStatus::Pass } else { CheckStatus::Fail };
    VerificationReport {
        check: check.to_string(),
        params: params_map(params),
        status,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        version: LIBRARY_VERSION.to_string(),
    }
}

fn skipped_report(check: &str, params: &[(&str, i64)], reason: &str) -> VerificationReport {
    VerificationReport {
        check: check.to_string(),
        params: params_map(params),
        status: CheckStatus::Skipped { reason: reason.to_string() },
        elapsed_ms: 0.0,
        lhs: String::new(),
        rhs: String::new(),
        version: LIBRARY_VERSION.to_string(),
    }
}

/// A deferred check, ready to hand to a worker pool.
pub struct CheckJob {
    pub name: String,
    body: Box<dyn FnOnce() -> VerificationReport + Send>,
}

impl CheckJob {
    fn new(name: impl Into<String>, body: impl FnOnce() -> VerificationReport + Send + 'static) -> Self {
        Self { name: name.into(), body: Box::new(body) }
    }

    pub fn run(self) -> VerificationReport {
        (self.body)()
    }
}

/// Run jobs on the current thread, preserving order.
pub fn run_jobs(jobs: Vec<CheckJob>) -> Vec<VerificationReport> {
    jobs.into_iter().map(CheckJob::run).collect()
}

/// `[m] * P_m` equals the sum of the `m` mixed-crossing closed braids, for
/// `m = 1..=m_max`.
pub fn braidsum_jobs(m_max: usize) -> Vec<CheckJob> {
    (1..=m_max)
        .map(|m| {
            CheckJob::new(format!("braidsum m={m}"), move || {
                identity_report("braidsum", &[("m", m as i64)], || {
                    let lhs = power_sum(m).scale(&Scalar::quantum_int(m as u32));
                    let rhs = mixed_cycle_sum(m);
                    (lhs, rhs)
                })
            })
        })
        .collect()
}

/// Braid word of the mixed-crossing closure with `i` positive crossings on
/// `m` strands: `sigma_(m-1)^-1 .. sigma_(i+1)^-1 sigma_i .. sigma_1`.
fn mixed_cycle_word(i: usize, m: usize) -> BraidWord {
    let mut letters: Vec<i32> = ((i + 1)..m).rev().map(|g| -(g as i32)).collect();
    letters.extend((1..=i).rev().map(|g| g as i32));
    BraidWord::new(m, letters)
}

/// The Murphy power-sum identity in `H_n`:
/// `psi_n(P_m) - <P_m> Id = (s^m - s^-m) v^-m sum_j T(j)^m`,
/// with `psi_n(P_m)` computed by threading the `m` closed braids and
/// dividing by `[m]`.
pub fn murphy_jobs(bound: usize) -> Vec<CheckJob> {
    let mut jobs = Vec::new();
    for n in 0..=bound {
        for m in 0..=bound - n {
            jobs.push(murphy_job(n, m));
        }
    }
    jobs
}

fn murphy_job(n: usize, m: usize) -> CheckJob {
    CheckJob::new(format!("murphy n={n} m={m}"), move || {
        let params = [("n", n as i64), ("m", m as i64)];
        if m == 0 {
            return skipped_report("murphy", &params, "m = 0 has no power sum");
        }
        if n == 0 {
            return skipped_report("murphy", &params, "n = 0 reduces to the evaluation map");
        }
        identity_report("murphy", &params, || {
            let mut threaded = HeckeElem::zero(n);
            for i in 0..m {
                threaded = &threaded + &thread_closure(&mixed_cycle_word(i, m), n);
            }
            let inv_qm = Scalar::quantum_int(m as u32).recip().expect("[m] is nonzero");
            let psi_pm = threaded.scale(&inv_qm);
            let mean = evaluate(&power_sum(m));
            let lhs = &psi_pm - &HeckeElem::identity(n).scale(&mean);
            let coeff = &(&Scalar::s(m as i32) - &Scalar::s(-(m as i32))) * &Scalar::v(-(m as i32));
            let mut sum = HeckeElem::zero(n);
            for j in 1..=n {
                sum = &sum + &murphy_operator(n, j).pow(m as u32);
            }
            let rhs = sum.scale(&coeff);
            (lhs, rhs)
        })
    })
}

/// `A(t) * mirror(A)(t) = 1` modulo `t^(degree+1)`.
pub fn mirror_jobs(degree: usize) -> Vec<CheckJob> {
    vec![CheckJob::new(format!("mirror degree={degree}"), move || {
        identity_report("mirror-inverse", &[("degree", degree as i64)], || {
            let lhs = cycle_series_from_elems(degree).mul(&mirror_cycle_series(degree));
            let rhs = Series::one(degree);
            (lhs, rhs)
        })
    })]
}

/// The crossing-switch identity
/// `(i, j-1)-closure - (i-1, j)-closure = z * cycle_i * mirror(cycle_j)` for
/// `i, j >= 1`, `i + j <= degree`, plus the recursion endpoint consistency
/// `(m-1, 0)-closure = cycle_m` for each `m <= degree`.
pub fn adiff_jobs(degree: usize) -> Vec<CheckJob> {
    let mut jobs = Vec::new();
    for total in 2..=degree {
        for i in 1..total {
            let j = total - i;
            jobs.push(CheckJob::new(format!("adiff i={i} j={j}"), move || {
                identity_report("adiff", &[("i", i as i64), ("j", j as i64)], || {
                    let lhs = &mixed_cycle(i, j - 1) - &mixed_cycle(i - 1, j);
                    let rhs = closed_cycle(i).mul(&closed_cycle(j).mirror()).scale(&Scalar::z());
                    (lhs, rhs)
                })
            }));
        }
    }
    for m in 1..=degree {
        jobs.push(CheckJob::new(format!("adiff endpoint m={m}"), move || {
            identity_report("adiff-endpoint", &[("m", m as i64)], || mixed_cycle_endpoint(m))
        }));
    }
    jobs
}

/// Threading a closed positive cycle as a braid agrees with threading its
/// `h`-expansion, for `n + m <= bound`.
pub fn ah_jobs(bound: usize) -> Vec<CheckJob> {
    let mut jobs = Vec::new();
    for m in 1..=bound {
        for n in 0..=bound - m {
            jobs.push(CheckJob::new(format!("ah n={n} m={m}"), move || {
                identity_report("ah-crosscheck", &[("n", n as i64), ("m", m as i64)], || {
                    let letters: Vec<i32> = (1..m as i32).rev().collect();
                    let beta = BraidWord::new(m, letters);
                    let lhs = thread_closure(&beta, n);
                    let rhs = thread_element(&closed_cycle(m), n);
                    (lhs, rhs)
                })
            }));
        }
    }
    jobs
}

fn commutation_report(check: &str, params: &[(&str, i64)], x: HeckeElem, elapsed: Instant) -> VerificationReport {
    let n = x.strands();
    let mut witness: Option<(HeckeElem, HeckeElem)> = None;
    let mut pass = true;
    for i in 1..n {
        let xg = x.mul_generator(i, true);
        let gx = HeckeElem::generator(n, i).mul(&x);
        if xg != gx {
            pass = false;
            witness = Some((xg, gx));
            break;
        }
        if witness.is_none() {
            witness = Some((xg, gx));
        }
    }
    let (lhs, rhs) = witness
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .unwrap_or_else(|| (x.to_string(), x.to_string()));
    VerificationReport {
        check: check.to_string(),
        params: params_map(params),
        status: if pass { CheckStatus::Pass } else { CheckStatus::Fail },
        elapsed_ms: elapsed.elapsed().as_secs_f64() * 1e3,
        lhs,
        rhs,
        version: LIBRARY_VERSION.to_string(),
    }
}

/// Centrality of the threaded power sums, threaded generators, and the
/// elementary symmetric polynomials in the Murphy operators, for
/// `n = 1..=bound`.
pub fn centrality_jobs(bound: usize) -> Vec<CheckJob> {
    let mut jobs = Vec::new();
    for n in 1..=bound {
        for m in 1..=3usize {
            jobs.push(CheckJob::new(format!("centrality psi(P) n={n} m={m}"), move || {
                let start = Instant::now();
                let x = thread_element(&power_sum(m), n);
                commutation_report(
                    "centrality-power-sum",
                    &[("n", n as i64), ("m", m as i64)],
                    x,
                    start,
                )
            }));
        }
        for i in 1..=3usize {
            jobs.push(CheckJob::new(format!("centrality psi(h) n={n} i={i}"), move || {
                let start = Instant::now();
                let x = thread_monomial(&HMonomial::single(i as u32), n);
                commutation_report("centrality-h", &[("n", n as i64), ("i", i as i64)], x, start)
            }));
        }
        for k in 1..=n {
            jobs.push(CheckJob::new(format!("centrality e_k n={n} k={k}"), move || {
                let start = Instant::now();
                let x = murphy_elementary_symmetric(n, k);
                commutation_report(
                    "centrality-murphy-symmetric",
                    &[("n", n as i64), ("k", k as i64)],
                    x,
                    start,
                )
            }));
        }
    }
    jobs
}

/// Solve `T^(n) = a * sum_j T(j) + b * Id` for scalars `(a, b)` and verify
/// the reconstruction. The scalars are recovered, never assumed.
pub fn affine_relation(n: usize) -> VerificationReport {
    assert!(n >= 1);
    let start = Instant::now();
    let threaded_core = thread_monomial(&HMonomial::single(1), n);
    let murphy_sum = murphy_elementary_symmetric(n, 1);
    let id_perm = Permutation::identity(n);
    let pivot = murphy_sum
        .terms()
        .map(|(p, _)| p.clone())
        .find(|p| !p.is_identity());
    let a = match &pivot {
        Some(p) => &threaded_core.coeff(p) / &murphy_sum.coeff(p),
        None => Scalar::zero(),
    };
    let b = &threaded_core.coeff(&id_perm) - &(&a * &murphy_sum.coeff(&id_perm));
    let reconstruction = &murphy_sum.scale(&a) + &HeckeElem::identity(n).scale(&b);
    let pass = reconstruction == threaded_core;
    VerificationReport {
        check: "affine-relation".to_string(),
        params: params_map(&[("n", n as i64)]),
        status: if pass { CheckStatus::Pass } else { CheckStatus::Fail },
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        lhs: threaded_core.to_string(),
        rhs: format!("a = {a}; b = {b}; a*sumT + b*Id = {reconstruction}"),
        version: LIBRARY_VERSION.to_string(),
    }
}

pub fn affine_jobs(n_max: usize) -> Vec<CheckJob> {
    (1..=n_max)
        .map(|n| CheckJob::new(format!("affine n={n}"), move || affine_relation(n)))
        .collect()
}

// ---------------------------------------------------------------------------
// Seeded structural property suites.

fn random_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    let mut num = LaurentPoly::zero();
    for _ in 0..rng.random_range(1..=3) {
        let c = rng.random_range(-4i64..=4);
        let a = rng.random_range(-2i32..=2);
        let b = rng.random_range(-2i32..=2);
        num = &num + &LaurentPoly::monomial(c, a, b);
    }
    let mut den = LaurentPoly::int(rng.random_range(1i64..=3));
    if rng.random_bool(0.3) {
        den = &den * &LaurentPoly::s_diff(rng.random_range(1u32..=2));
    }
    Scalar::ratio(num, den)
}

fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Permutation {
    let mut images: Vec<usize> = (1..=n).collect();
    images.shuffle(rng);
    Permutation::from_one_line(&images)
}

fn random_hecke(rng: &mut ChaCha8Rng, n: usize, max_terms: usize) -> HeckeElem {
    let mut x = HeckeElem::zero(n);
    for _ in 0..rng.random_range(1..=max_terms) {
        x.insert_add(random_perm(rng, n), random_scalar(rng));
    }
    x
}

fn random_word(rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> BraidWord {
    let len = rng.random_range(0..=max_len);
    let letters = (0..len)
        .map(|_| {
            let i = rng.random_range(1..n) as i32;
            if rng.random_bool(0.5) {
                i
            } else {
                -i
            }
        })
        .collect();
    BraidWord::new(n, letters)
}

fn random_monomial(rng: &mut ChaCha8Rng, max_index: u32, max_len: usize) -> HMonomial {
    let len = rng.random_range(0..=max_len);
    HMonomial::from_indices((0..len).map(|_| rng.random_range(1..=max_index)).collect())
}

fn random_annulus(rng: &mut ChaCha8Rng) -> AnnulusElem {
    let mut x = AnnulusElem::zero();
    for _ in 0..rng.random_range(1..=3) {
        x.insert_add(random_monomial(rng, 3, 3), random_scalar(rng));
    }
    x
}

/// One seeded property suite: `instances` random cases of a two-sided
/// identity. The report fails on the first counterexample and renders it.
fn property_job(
    name: &'static str,
    seed: u64,
    salt: u64,
    instances: usize,
    case: impl Fn(&mut ChaCha8Rng) -> (String, String, bool) + Send + 'static,
) -> CheckJob {
    CheckJob::new(format!("property {name}"), move || {
        let start = Instant::now();
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(salt));
        let params = [("instances", instances as i64), ("seed", seed as i64)];
        for k in 0..instances {
            let (lhs, rhs, ok) = case(&mut rng);
            if !ok {
                return VerificationReport {
                    check: format!("property-{name}"),
                    params: params_map(&[
                        ("instances", instances as i64),
                        ("seed", seed as i64),
                        ("counterexample", k as i64),
                    ]),
                    status: CheckStatus::Fail,
                    elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
                    lhs,
                    rhs,
                    version: LIBRARY_VERSION.to_string(),
                };
            }
        }
        VerificationReport {
            check: format!("property-{name}"),
            params: params_map(&params),
            status: CheckStatus::Pass,
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
            lhs: format!("all {instances} instances agree"),
            rhs: format!("all {instances} instances agree"),
            version: LIBRARY_VERSION.to_string(),
        }
    })
}

fn rendered<T: PartialEq + Display>(lhs: T, rhs: T) -> (String, String, bool) {
    let ok = lhs == rhs;
    (lhs.to_string(), rhs.to_string(), ok)
}

/// The seeded structural suites: braid relations, associativity, trace
/// symmetry, Markov moves, the threading homomorphism, mirror and bar
/// involutions, and the closure factorisation rule.
pub fn property_jobs(seed: u64, instances: usize) -> Vec<CheckJob> {
    vec![
        property_job("braid-relations", seed, 1, instances, |rng| {
            let n = rng.random_range(3..=5);
            let x = random_hecke(rng, n, 3);
            let i = rng.random_range(1..n - 1) as i32;
            let lhs = x.mul_word(&[i, i + 1, i]);
            let rhs = x.mul_word(&[i + 1, i, i + 1]);
            rendered(lhs, rhs)
        }),
        property_job("far-commutation", seed, 2, instances, |rng| {
            let n = rng.random_range(4..=5);
            let x = random_hecke(rng, n, 3);
            let i = rng.random_range(1..n - 2) as i32;
            let j = rng.random_range(i as usize + 2..n) as i32;
            rendered(x.mul_word(&[i, j]), x.mul_word(&[j, i]))
        }),
        property_job("associativity", seed, 3, instances, |rng| {
            let n = rng.random_range(2..=5);
            let x = random_hecke(rng, n, 2);
            let y = random_hecke(rng, n, 2);
            let z = random_hecke(rng, n, 2);
            rendered(x.mul(&y).mul(&z), x.mul(&y.mul(&z)))
        }),
        property_job("trace-symmetry", seed, 4, instances, |rng| {
            let n = rng.random_range(2..=5);
            let x = random_hecke(rng, n, 2);
            let y = random_hecke(rng, n, 2);
            rendered(markov_trace(&x.mul(&y)), markov_trace(&y.mul(&x)))
        }),
        property_job("markov-conjugation", seed, 5, instances, |rng| {
            let n = rng.random_range(2..=5);
            let w = random_word(rng, n, 5);
            let a = random_word(rng, n, 3);
            let conj = a.concat(&w).concat(&a.inverse());
            rendered(markov_trace(&eval_word(&conj)), markov_trace(&eval_word(&w)))
        }),
        property_job("markov-stabilisation", seed, 6, instances, |rng| {
            let n = rng.random_range(2..=5);
            let w = random_word(rng, n, 5);
            let positive = rng.random_bool(0.5);
            let mut letters = w.letters().to_vec();
            letters.push(if positive { n as i32 } else { -(n as i32) });
            let stab = BraidWord::new(n + 1, letters);
            let factor = Scalar::v(if positive { -1 } else { 1 });
            let lhs = markov_trace(&eval_word(&stab));
            let rhs = &factor * &markov_trace(&eval_word(&w));
            rendered(lhs, rhs)
        }),
        property_job("threading-homomorphism", seed, 7, instances, |rng| {
            let n = rng.random_range(1..=2);
            let x = random_monomial(rng, 2, 2);
            let y = random_monomial(rng, 2, 2);
            let lhs = thread_monomial(&x.mul(&y), n);
            let rhs = thread_monomial(&x, n).mul(&thread_monomial(&y, n));
            rendered(lhs, rhs)
        }),
        property_job("mirror-involution", seed, 8, instances, |rng| {
            let x = random_annulus(rng);
            let y = random_annulus(rng);
            let involutive = rendered(x.mirror().mirror(), x.clone());
            if !involutive.2 {
                return involutive;
            }
            rendered(x.mul(&y).mirror(), x.mirror().mul(&y.mirror()))
        }),
        property_job("scalar-mirror-homomorphism", seed, 9, instances, |rng| {
            let a = random_scalar(rng);
            let b = random_scalar(rng);
            let involutive = rendered(a.mirror().mirror(), a.clone());
            if !involutive.2 {
                return involutive;
            }
            rendered((&a * &b).mirror(), &a.mirror() * &b.mirror())
        }),
        property_job("closure-factorisation", seed, 10, instances, |rng| {
            // close(x * sigma_n * y) = v^-1 * x * y for x, y in H_n.
            let n = rng.random_range(1..=5);
            let x = random_hecke(rng, n, 2);
            let y = random_hecke(rng, n, 2);
            let wide = x
                .embed(n + 1, 0)
                .mul_generator(n, true)
                .mul(&y.embed(n + 1, 0));
            let lhs = close_last_strand(&wide);
            let rhs = x.mul(&y).scale(&Scalar::v(-1));
            rendered(lhs, rhs)
        }),
    ]
}

/// Everything `verify all` runs, in deterministic order.
pub fn all_jobs(seed: u64) -> Vec<CheckJob> {
    let mut jobs = Vec::new();
    jobs.extend(braidsum_jobs(8));
    jobs.extend(mirror_jobs(8));
    jobs.extend(adiff_jobs(8));
    jobs.extend(murphy_jobs(7));
    jobs.extend(ah_jobs(6));
    jobs.extend(centrality_jobs(5));
    jobs.extend(affine_jobs(5));
    jobs.extend(property_jobs(seed, 100));
    jobs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn braidsum_reports_pass_at_small_degree() {
        for r in run_jobs(braidsum_jobs(3)) {
            assert!(r.passed(), "braidsum failed: {} {}", r.params_string(), r.lhs);
        }
    }

    #[test]
    fn murphy_degenerate_cells_are_skipped() {
        let reports = run_jobs(murphy_jobs(2));
        let skipped: Vec<_> = reports.iter().filter(|r| !r.passed() && !r.failed()).collect();
        assert!(!skipped.is_empty());
        for r in &skipped {
            assert!(r.params["n"] == 0 || r.params["m"] == 0);
        }
        for r in reports.iter().filter(|r| r.params["n"] >= 1 && r.params["m"] >= 1) {
            assert!(r.passed(), "murphy cell failed: {}", r.params_string());
        }
    }

    #[test]
    fn affine_relation_solves_small_ranks() {
        for n in 1..=3 {
            let r = affine_relation(n);
            assert!(r.passed(), "affine relation failed at n={n}: {}", r.rhs);
        }
    }

    #[test]
    fn reports_serialise_to_json_lines() {
        let r = affine_relation(1);
        let line = serde_json::to_string(&r).unwrap();
        assert!(line.contains("\"check\":\"affine-relation\""));
        assert!(line.contains("\"status\":\"pass\""));
    }

    #[test]
    fn property_suites_are_reproducible() {
        let a = run_jobs(property_jobs(7, 5));
        let b = run_jobs(property_jobs(7, 5));
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.status, y.status);
            assert_eq!(x.lhs, y.lhs);
        }
        for r in &a {
            assert!(r.passed(), "property failed: {} lhs={} rhs={}", r.check, r.lhs, r.rhs);
        }
    }
}
