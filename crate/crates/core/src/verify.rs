//! Property suites over parameter ranges. Failures are data: each suite
//! returns counts and the first counterexample.

use std::sync::Mutex;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::asymptotics::{
    block_product_matches, bivariate_polys, polynomiality_check, qlemma_report, signature_direct,
    signature_reciprocal, LimitAlgebra, SeedMatrix,
};
use crate::error::Result;
use crate::exactalg::{is_squarefree, rat, Rational};
use crate::frobenius::{build_algebra, ParabolicAlgebra};
use crate::torsion::{lemma_report, reciprocity_in, torsion_report};
use crate::twobridge::{continuant_p, iota_identity_holds, make_params, TwoBridgeParams};

/// Values of Tr(Ω_W^{g−1}) for g = 2 … 6 and M = (3,2;4,3) as tabulated.
pub const TABULATED_LIMIT_TRACES: [i64; 5] = [1, 1, 1345, 1762, 2241];

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checked: usize,
    pub failed: usize,
    pub first_counterexample: Option<String>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

/// Runs `check` on every case in parallel; the reported counterexample is the
/// first failing case in input order.
fn run_cases<T: Sync>(
    suite: &str,
    cases: &[T],
    check: impl Fn(&T) -> std::result::Result<(), String> + Sync,
) -> SuiteReport {
    let failures = Mutex::new(Vec::new());
    cases.par_iter().enumerate().for_each(|(i, c)| {
        if let Err(msg) = check(c) {
            failures.lock().expect("poisoned").push((i, msg));
        }
    });
    let mut failures = failures.into_inner().expect("poisoned");
    failures.sort_by_key(|(i, _)| *i);
    SuiteReport {
        suite: suite.into(),
        checked: cases.len(),
        failed: failures.len(),
        first_counterexample: failures.into_iter().next().map(|(_, m)| m),
    }
}

/// Coprime odd pairs 0 < q < p with p ≤ pmax, in (p, q) order.
pub fn pairs_up_to(pmax: i64, include_q1: bool) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for p in (3..=pmax).step_by(2) {
        for q in (1..p).step_by(2) {
            if (q > 1 || include_q1) && num_integer::gcd(p, q) == 1 {
                out.push((p, q));
            }
        }
    }
    out
}

fn fail(p: i64, q: i64, what: impl std::fmt::Display) -> String {
    format!("(p,q)=({p},{q}): {what}")
}

fn algebra(p: i64, q: i64) -> std::result::Result<ParabolicAlgebra, String> {
    build_algebra(p, q).map_err(|e| fail(p, q, e))
}

/// ι² = −1 and Riley squarefree (cheap, used up to large p).
pub fn check_riley(p: i64, q: i64) -> std::result::Result<(), String> {
    let params = make_params(p, q).map_err(|e| fail(p, q, e))?;
    if !iota_identity_holds(&params) {
        return Err(fail(p, q, "P_{p-2}^2 + 1 != P_{p-1} Q_{p-2}"));
    }
    let r = continuant_p(&params, p - 1).map_err(|e| fail(p, q, e))?;
    match is_squarefree(&r) {
        Ok(true) => Ok(()),
        Ok(false) => Err(fail(p, q, "Riley polynomial not squarefree")),
        Err(e) => Err(fail(p, q, e)),
    }
}

fn check_palindromic(params: &TwoBridgeParams) -> bool {
    (1..params.p).all(|k| params.eps_at(k) == params.eps_at(params.p - k))
}

/// Algebra-level identities in V.
pub fn check_algebra_identities(p: i64, q: i64) -> std::result::Result<(), String> {
    let v = algebra(p, q)?;
    if !check_palindromic(v.params()) {
        return Err(fail(p, q, "epsilon sequence is not palindromic"));
    }
    let rep = lemma_report(&v);
    if !rep.all_ok() {
        return Err(fail(p, q, format!("lemma failures {:?}", rep.failures)));
    }
    let diag = v.eta_diagonal();
    for (j, (pj, &dj)) in v.pbasis().iter().zip(&diag).enumerate() {
        for (k, pk) in v.pbasis().iter().enumerate() {
            let want = if j == k { rat(dj as i64, 1) } else { rat(0, 1) };
            if v.eta(pj, pk) != want {
                return Err(fail(p, q, format!("eta(P_{j}, P_{k}) != {want}")));
            }
        }
    }
    if v.omega_plus().scale_int(2) != *v.omega() {
        return Err(fail(p, q, "2 Omega+ != Omega"));
    }
    let sigma1 = v.signature(1).map_err(|e| fail(p, q, e))?;
    if sigma1 != BigInt::from(p - 1) {
        return Err(fail(p, q, format!("sigma_1 = {sigma1}")));
    }
    Ok(())
}

pub fn verify_identities(pmax_riley: i64, pmax_algebra: i64) -> Vec<SuiteReport> {
    let riley_pairs = pairs_up_to(pmax_riley, true);
    let alg_pairs = pairs_up_to(pmax_algebra, true);
    vec![
        run_cases("riley", &riley_pairs, |&(p, q)| check_riley(p, q)),
        run_cases("algebra", &alg_pairs, |&(p, q)| check_algebra_identities(p, q)),
    ]
}

pub fn check_torsion(p: i64, q: i64) -> std::result::Result<(), String> {
    let v = algebra(p, q)?;
    let r = torsion_report(&v).map_err(|e| fail(p, q, e))?;
    if !r.tau1_match() {
        return Err(fail(p, q, "tau1 raw != simple"));
    }
    if !r.tau2_match() {
        return Err(fail(p, q, "tau2 raw != simple"));
    }
    if !r.delta1_match() {
        return Err(fail(p, q, "Delta_1 != x^2 tau1"));
    }
    Ok(())
}

pub fn verify_torsion(pmax: i64) -> SuiteReport {
    run_cases("torsion", &pairs_up_to(pmax, true), |&(p, q)| check_torsion(p, q))
}

pub fn check_sums(p: i64, q: i64) -> std::result::Result<(), String> {
    let v = algebra(p, q)?;
    let r = torsion_report(&v).map_err(|e| fail(p, q, e))?;
    if r.invsum_tau1 != r.expected_invsum_tau1 {
        return Err(fail(
            p,
            q,
            format!("sum 1/tau1 = {} expected {}", r.invsum_tau1, r.expected_invsum_tau1),
        ));
    }
    if let Some(s) = &r.invsum_tau2 {
        if *s != Rational::from_integer(0.into()) {
            return Err(fail(p, q, format!("sum 1/tau2 = {s}")));
        }
    }
    Ok(())
}

pub fn verify_sums(pmax: i64) -> SuiteReport {
    run_cases("sums", &pairs_up_to(pmax, true), |&(p, q)| check_sums(p, q))
}

pub fn check_reciprocity(p: i64, q: i64) -> std::result::Result<(), String> {
    let v = algebra(p, q)?;
    let r = reciprocity_in(&v).map_err(|e| fail(p, q, e))?;
    if !r.all_signed_ok() {
        let names: Vec<&str> = r.residuals.iter().map(|(n, _)| n.as_str()).collect();
        return Err(fail(p, q, format!("failed checks {names:?}")));
    }
    if !r.omega_literal {
        return Err(fail(
            p,
            q,
            format!("Omega reciprocity holds only up to sign (q*ell = {} mod p)", r.ell_class),
        ));
    }
    Ok(())
}

pub fn verify_reciprocity(pmax: i64) -> SuiteReport {
    run_cases("reciprocity", &pairs_up_to(pmax, true), |&(p, q)| check_reciprocity(p, q))
}

/// Limit traces, polynomiality, cross-route signatures, specialization and the
/// structural lemma for one seed.
#[derive(Clone, Debug, Serialize)]
pub struct AsymptoticsReport {
    pub seed: SeedMatrix,
    #[serde(serialize_with = "serialize_rationals")]
    pub limit_traces: Vec<Rational>,
    pub suites: Vec<SuiteReport>,
}

fn serialize_rationals<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    let strs: Vec<String> = v.iter().map(crate::exactalg::json::rational_to_string).collect();
    serde::Serialize::serialize(&strs, s)
}

impl AsymptoticsReport {
    pub fn ok(&self) -> bool {
        self.suites.iter().all(SuiteReport::ok)
    }
}

pub fn verify_asymptotics(m: &SeedMatrix) -> Result<AsymptoticsReport> {
    let w = LimitAlgebra::new(m)?;
    let limit_traces = (2..=6).map(|g| w.trace(g)).collect::<Result<Vec<_>>>()?;
    let mut suites = Vec::new();
    if (m.a, m.b, m.c, m.d) == (3, 2, 4, 3) {
        let gs: Vec<usize> = (0..5).collect();
        suites.push(run_cases("limit_table", &gs, |&i| {
            let want = rat(TABULATED_LIMIT_TRACES[i], 1);
            if limit_traces[i] == want {
                Ok(())
            } else {
                Err(format!("g={}: trace {} vs tabulated {want}", i + 2, limit_traces[i]))
            }
        }));
    }
    let ns: Vec<i64> = (11..=25).step_by(2).filter(|&n| m.admissible(n)).collect();
    suites.push(run_cases("routes", &ns, |&n| {
        let a = signature_direct(m, n, 2).map_err(|e| e.to_string())?;
        let b = signature_reciprocal(m, n, 2).map_err(|e| e.to_string())?;
        if a == b {
            Ok(())
        } else {
            Err(format!("n={n}: direct {a} reciprocal {b}"))
        }
    }));
    let one = [()];
    suites.push(run_cases("polynomiality", &one, |_| {
        let r = polynomiality_check(m, 2, 11, 8).map_err(|e| e.to_string())?;
        if r.ok {
            Ok(())
        } else {
            Err(format!("4th differences do not vanish: {:?}", r.sigmas))
        }
    }));
    suites.push(run_cases("bivariate", &one, |_| {
        bivariate_polys(m).map(|_| ()).map_err(|e| e.to_string())?;
        let rep = qlemma_report(m).map_err(|e| e.to_string())?;
        match rep.clauses.iter().find(|c| !c.ok) {
            None => Ok(()),
            Some(c) => Err(format!("{}: {}", c.name, c.detail)),
        }
    }));
    let small: Vec<i64> = [3, 5].into_iter().filter(|&n| m.admissible(n)).collect();
    suites.push(run_cases("block_product", &small, |&n| {
        match block_product_matches(m, n) {
            Ok(true) => Ok(()),
            Ok(false) => Err(format!("n={n}: block product differs from continuants")),
            Err(e) => Err(e.to_string()),
        }
    }));
    Ok(AsymptoticsReport {
        seed: *m,
        limit_traces,
        suites,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_enumeration() {
        assert_eq!(pairs_up_to(7, true), vec![(3, 1), (5, 1), (5, 3), (7, 1), (7, 3), (7, 5)]);
        assert_eq!(pairs_up_to(9, false), vec![(5, 3), (7, 3), (7, 5), (9, 5), (9, 7)]);
    }

    #[test]
    fn small_suites_pass() {
        assert!(verify_identities(25, 15).iter().all(SuiteReport::ok));
        assert!(verify_torsion(15).ok());
        assert!(verify_sums(15).ok());
        let rec = verify_reciprocity(15);
        let minus_class = pairs_up_to(15, true)
            .into_iter()
            .filter(|&(p, q)| make_params(p, q).unwrap().ell_class() < 0)
            .count();
        assert_eq!(rec.failed, minus_class);
        assert!(rec.first_counterexample.unwrap().starts_with("(p,q)=(5,3)"));
    }

    #[test]
    fn counterexample_is_first_in_order() {
        let cases: Vec<i64> = (0..100).collect();
        let r = run_cases("t", &cases, |&i| if i % 7 == 3 { Err(format!("{i}")) } else { Ok(()) });
        assert_eq!(r.failed, 14);
        assert_eq!(r.first_counterexample.as_deref(), Some("3"));
    }
}
