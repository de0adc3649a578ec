//! Certificate-level analysis of symmetric unions.
//!
//! A symmetric union of a partial knot `K_D` dominates `K_D` and satisfies
//! the determinant square law `det K = (det K_D)²`. This module works
//! entirely at the certificate level: the square-law gate, enumeration of
//! 2-bridge partial-knot candidates up to equivalence and mirror, the
//! class filter for the admissible partial-knot types, and per-candidate
//! finite-quotient screening.

use crate::construct::TwoBridgeParams;
use crate::homsearch::{self, FiniteGroup, SearchOptions};
use crate::invariants;
use crate::montesinos::LinkClass;
use crate::pd::PdCode;
use crate::presentation::{orbifold_quotient, wirtinger, GroupPresentation};
use crate::verdict::DominationVerdict;
use crate::{Error, Result};

/// Square law `det K = (det K_D)²` for symmetric unions.
pub fn det_square_test(det_k: u64, det_kd: u64) -> bool {
    det_kd.checked_mul(det_kd) == Some(det_k)
}

/// Candidate enumeration output: either the candidate parameters or the
/// reason no candidate can exist.
#[derive(Debug, Clone)]
pub struct CandidateEnumeration {
    pub candidates: Vec<TwoBridgeParams>,
    pub reason: Option<String>,
}

fn integer_sqrt(n: u64) -> Option<u64> {
    let r = (n as f64).sqrt().round() as u64;
    for c in r.saturating_sub(2)..=r + 2 {
        if c.checked_mul(c) == Some(n) {
            return Some(c);
        }
    }
    None
}

/// All 2-bridge knots `S(p, q)` with `p² = det K`, one representative per
/// class under `q ~ q⁻¹ (mod p)` and the mirror identification `q ~ −q`.
/// The representative is the largest odd member of the orbit.
pub fn two_bridge_partial_candidates(det_k: u64) -> Result<CandidateEnumeration> {
    if det_k == 0 {
        return Ok(CandidateEnumeration {
            candidates: vec![],
            reason: Some("determinant 0 is not a square of a knot determinant".into()),
        });
    }
    let Some(p) = integer_sqrt(det_k) else {
        return Ok(CandidateEnumeration {
            candidates: vec![],
            reason: Some(format!(
                "no symmetric union possible by the determinant square law: {det_k} is not a perfect square"
            )),
        });
    };
    if p % 2 == 0 {
        return Ok(CandidateEnumeration {
            candidates: vec![],
            reason: Some(format!(
                "square root {p} is even; knot determinants are odd"
            )),
        });
    }
    if p == 1 {
        return Ok(CandidateEnumeration {
            candidates: vec![TwoBridgeParams::new(1, 0)?],
            reason: None,
        });
    }
    let mut seen = vec![false; p as usize];
    let mut reps = Vec::new();
    for q in 1..p {
        if num_integer::gcd(p, q) != 1 || seen[q as usize] {
            continue;
        }
        let orbit = orbit_of(p, q);
        for &x in &orbit {
            seen[x as usize] = true;
        }
        let rep = *orbit
            .iter()
            .filter(|&&x| x % 2 == 1)
            .max()
            .expect("orbit of odd p always contains an odd residue");
        reps.push(TwoBridgeParams::new(p, rep)?);
    }
    reps.sort();
    Ok(CandidateEnumeration {
        candidates: reps,
        reason: None,
    })
}

/// Orbit of `q` under inversion and negation mod `p`.
pub(crate) fn orbit_of(p: u64, q: u64) -> Vec<u64> {
    let inv = mod_inverse(q, p).expect("q coprime to p");
    let mut orbit = vec![q, p - q, inv, p - inv];
    orbit.sort_unstable();
    orbit.dedup();
    orbit
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (m as i128, a as i128);
    while new_r != 0 {
        let quotient = r / new_r;
        (t, new_t) = (new_t, t - quotient * new_t);
        (r, new_r) = (new_r, r - quotient * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(m as i128) as u64)
}

/// Clause names emitted by [`corollary72_filter`].
pub mod clause {
    pub const TRIVIAL_UNION: &str = "trivial-union-trivial-partial";
    pub const TWO_BRIDGE_PARTIAL: &str = "two-bridge-union-two-bridge-partial";
    pub const MONTESINOS_PARTIAL: &str = "montesinos-union-partial-class";
}

/// Admissible partial-knot classes for a symmetric union of class `k`:
/// a trivial union has a trivial partial knot; a 2-bridge union has a
/// 2-bridge partial knot (and is necessarily skew); a Montesinos union with
/// `r` tangles allows the unknot, a 2-bridge knot, a Montesinos knot with at
/// most `r` tangles, or a connected sum of `n₁` 2-bridge and `n₂` elliptic
/// Montesinos knots with `n₁ + 2n₂ ≤ r − 1`.
pub fn corollary72_filter(k: &LinkClass, kd: &LinkClass) -> Result<DominationVerdict> {
    k.validate()?;
    kd.validate()?;
    match k {
        LinkClass::Unknot => {
            if matches!(kd, LinkClass::Unknot) {
                Ok(DominationVerdict::Consistent {
                    checks: vec!["trivial-partial".into()],
                })
            } else {
                Ok(DominationVerdict::excluded(
                    clause::TRIVIAL_UNION,
                    format!("trivial union cannot have partial knot {}", kd.describe()),
                ))
            }
        }
        LinkClass::TwoBridge(_) | LinkClass::TorusKnot(2, _) => {
            let ok = matches!(kd, LinkClass::TwoBridge(_) | LinkClass::TorusKnot(2, _))
                || matches!(kd, LinkClass::TwoBridge(t) if t.p == 1);
            if ok {
                Ok(DominationVerdict::Consistent {
                    checks: vec![
                        "two-bridge-partial".into(),
                        "symmetric-union-is-skew".into(),
                    ],
                })
            } else {
                Ok(DominationVerdict::excluded(
                    clause::TWO_BRIDGE_PARTIAL,
                    format!(
                        "2-bridge union cannot have partial knot {}",
                        kd.describe()
                    ),
                ))
            }
        }
        LinkClass::Montesinos(m) if m.tangle_count() >= 3 => {
            let r = m.tangle_count();
            let ok = match kd {
                LinkClass::Unknot | LinkClass::TwoBridge(_) | LinkClass::TorusKnot(2, _) => true,
                LinkClass::Montesinos(md) => md.tangle_count() <= r,
                LinkClass::ConnectedSum(fs) => {
                    let mut n1 = 0usize;
                    let mut n2 = 0usize;
                    let mut admissible = true;
                    for f in fs {
                        match f {
                            LinkClass::TwoBridge(_) | LinkClass::TorusKnot(2, _) => n1 += 1,
                            LinkClass::Montesinos(md) if md.is_elliptic() => n2 += 1,
                            LinkClass::TorusKnot(3, 4) | LinkClass::TorusKnot(3, 5) => n2 += 1,
                            _ => {
                                admissible = false;
                                break;
                            }
                        }
                    }
                    admissible && n1 + 2 * n2 <= r - 1
                }
                _ => false,
            };
            if ok {
                Ok(DominationVerdict::Consistent {
                    checks: vec!["montesinos-partial-class".into()],
                })
            } else {
                Ok(DominationVerdict::excluded(
                    clause::MONTESINOS_PARTIAL,
                    format!(
                        "partial knot {} violates the admissible classes for r = {r}",
                        kd.describe()
                    ),
                ))
            }
        }
        _ => Ok(DominationVerdict::Consistent {
            checks: vec!["no-applicable-clause".into()],
        }),
    }
}

/// One annotated candidate of [`partial_knot_report`].
#[derive(Debug, Clone)]
pub struct PartialKnotCandidate {
    pub params: TwoBridgeParams,
    pub det: u64,
    /// Filter stages the candidate passed, in pipeline order.
    pub evidence: Vec<String>,
    pub excluded_by: Option<String>,
    pub budget_errors: Vec<String>,
}

impl PartialKnotCandidate {
    pub fn survived(&self) -> bool {
        self.excluded_by.is_none()
    }
}

/// Full report of [`partial_knot_report`].
#[derive(Debug, Clone)]
pub struct PartialKnotReport {
    pub det: u64,
    /// Reason the pipeline stopped at the determinant gate, if it did.
    pub gate: Option<String>,
    pub candidates: Vec<PartialKnotCandidate>,
}

impl PartialKnotReport {
    pub fn survivors(&self) -> Vec<&PartialKnotCandidate> {
        self.candidates.iter().filter(|c| c.survived()).collect()
    }
}

/// Pipeline: determinant of the diagram, square-law gate, 2-bridge candidate
/// enumeration, class filter, then finite-quotient screening of each
/// survivor against the battery. Budget errors are annotated per candidate
/// and never dropped.
pub fn partial_knot_report(
    k_pd: &PdCode,
    k_class: Option<&LinkClass>,
    battery: &[FiniteGroup],
    opts: &SearchOptions,
) -> Result<PartialKnotReport> {
    if k_pd.component_count()? != 1 {
        return Err(Error::InvalidInput(
            "partial-knot reports are defined for knots".into(),
        ));
    }
    let det = invariants::determinant(k_pd)?;
    let enumeration = two_bridge_partial_candidates(det)?;
    if let Some(reason) = enumeration.reason {
        return Ok(PartialKnotReport {
            det,
            gate: Some(reason),
            candidates: vec![],
        });
    }
    let src_pres = orbifold_quotient(&wirtinger(k_pd)?)?;
    let mut out = Vec::new();
    for params in enumeration.candidates {
        let mut cand = PartialKnotCandidate {
            params,
            det: params.p,
            evidence: vec![format!("det-square-law({} = {}^2)", det, params.p)],
            excluded_by: None,
            budget_errors: vec![],
        };
        let kd_class = LinkClass::TwoBridge(params);
        if let Some(k_class) = k_class {
            match corollary72_filter(k_class, &kd_class)? {
                DominationVerdict::Excluded { rule, detail } => {
                    cand.excluded_by = Some(format!("{rule}: {detail}"));
                    out.push(cand);
                    continue;
                }
                DominationVerdict::Consistent { checks } => {
                    cand.evidence
                        .push(format!("class-filter({})", checks.join(",")));
                }
                DominationVerdict::Certified { .. } => {}
            }
        } else {
            cand.evidence.push("class-filter(skipped: no class)".into());
        }
        let dst_pres = GroupPresentation::dihedral_orbifold(params.p);
        let report = homsearch::non_domination_evidence(&src_pres, &dst_pres, battery, opts)?;
        for check in &report.checked {
            if let Some(err) = &check.error {
                cand.budget_errors.push(format!("{}: {err}", check.target));
            }
        }
        match report.witness {
            Some(witness) => {
                cand.excluded_by = Some(format!(
                    "quotient-witness({witness} is a quotient of the candidate but not of the source)"
                ));
            }
            None => {
                cand.evidence.push(format!(
                    "quotient-screening(no witness among {} targets)",
                    report.checked.len()
                ));
            }
        }
        out.push(cand);
    }
    Ok(PartialKnotReport {
        det,
        gate: None,
        candidates: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_law() {
        assert!(det_square_test(9, 3));
        assert!(det_square_test(81, 9));
        assert!(!det_square_test(5, 3));
        assert!(det_square_test(0, 0));
    }

    #[test]
    fn candidates_for_81() {
        let e = two_bridge_partial_candidates(81).unwrap();
        let got: Vec<(u64, u64)> = e.candidates.iter().map(|t| (t.p, t.q)).collect();
        assert_eq!(got, vec![(9, 1), (9, 7)]);
    }

    #[test]
    fn candidates_for_9() {
        let e = two_bridge_partial_candidates(9).unwrap();
        let got: Vec<(u64, u64)> = e.candidates.iter().map(|t| (t.p, t.q)).collect();
        assert_eq!(got, vec![(3, 1)]);
    }

    #[test]
    fn non_squares_are_gated() {
        let e = two_bridge_partial_candidates(5).unwrap();
        assert!(e.candidates.is_empty());
        assert!(e.reason.unwrap().contains("perfect square"));
        let e = two_bridge_partial_candidates(4).unwrap();
        assert!(e.reason.unwrap().contains("even"));
    }

    #[test]
    fn orbit_closure_brute_force() {
        // orbits partition the coprime residues and are closed, for all odd p <= 49
        for p in (3..=49u64).step_by(2) {
            let mut seen = std::collections::BTreeSet::new();
            let e = two_bridge_partial_candidates(p * p).unwrap();
            for cand in &e.candidates {
                let orbit = orbit_of(p, cand.q);
                for x in orbit {
                    assert!(num_integer::gcd(x, p) == 1);
                    assert!(seen.insert(x), "orbits overlap for p={p}");
                }
            }
            let coprime_count = (1..p).filter(|&q| num_integer::gcd(p, q) == 1).count();
            assert_eq!(seen.len(), coprime_count, "orbits must cover all residues for p={p}");
        }
    }

    #[test]
    fn filter_clauses() {
        let tb = |p, q| LinkClass::TwoBridge(TwoBridgeParams::new(p, q).unwrap());
        // trivial union
        let v = corollary72_filter(&LinkClass::Unknot, &LinkClass::Unknot).unwrap();
        assert!(!v.is_excluded());
        let v = corollary72_filter(&LinkClass::Unknot, &tb(3, 1)).unwrap();
        assert_eq!(v.excluded_rule(), Some(clause::TRIVIAL_UNION));
        // 2-bridge union: torus T(3,4) is 3-bridge, excluded
        let v = corollary72_filter(&tb(9, 7), &LinkClass::TorusKnot(3, 4)).unwrap();
        assert_eq!(v.excluded_rule(), Some(clause::TWO_BRIDGE_PARTIAL));
        let v = corollary72_filter(&tb(9, 7), &tb(3, 1)).unwrap();
        match v {
            DominationVerdict::Consistent { checks } => {
                assert!(checks.iter().any(|c| c.contains("skew")));
            }
            other => panic!("unexpected verdict {other:?}"),
        }
        // Montesinos union with r = 3: sum with n1 + 2*n2 = 3 > 2 excluded
        let m = crate::montesinos::MontesinosLink::parse("1/2,1/3,1/7").unwrap();
        let elliptic = crate::montesinos::MontesinosLink::parse("1/2,1/3,1/5").unwrap();
        let sum = LinkClass::ConnectedSum(vec![
            tb(3, 1),
            LinkClass::Montesinos(elliptic),
        ]);
        let v = corollary72_filter(&LinkClass::Montesinos(m), &sum).unwrap();
        assert_eq!(v.excluded_rule(), Some(clause::MONTESINOS_PARTIAL));
    }
}
