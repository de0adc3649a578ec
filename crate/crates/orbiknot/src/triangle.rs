//! Triangle groups `T(a,b,c) = ⟨x,y,z | xᵃ = yᵇ = z^c = xyz = 1⟩`: type
//! classification, the orbifold Euler characteristic obstruction, torsion
//! obstructions to epimorphisms, and π-minimality certifiers for torus and
//! Montesinos knots.

use num_rational::Ratio;

use crate::montesinos::MontesinosLink;
use crate::verdict::DominationVerdict;
use crate::{Error, Result};

/// An unordered triple of branching indices, stored sorted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TriangleParams {
    indices: [u64; 3],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriangleType {
    Elliptic,
    Euclidean,
    Hyperbolic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EpiObstruction {
    ExcludedByChi,
    ExcludedByTorsion,
    NotExcluded,
}

impl TriangleParams {
    pub fn new(a: u64, b: u64, c: u64) -> Result<Self> {
        if a < 2 || b < 2 || c < 2 {
            return Err(Error::InvalidInput(
                "triangle indices must all be at least 2".into(),
            ));
        }
        let mut indices = [a, b, c];
        indices.sort_unstable();
        Ok(TriangleParams { indices })
    }

    pub fn indices(&self) -> [u64; 3] {
        self.indices
    }

    fn angle_sum(&self) -> Ratio<i64> {
        self.indices
            .iter()
            .map(|&a| Ratio::new(1, a as i64))
            .sum()
    }

    /// Elliptic, Euclidean or hyperbolic according to `Σ 1/αᵢ` versus 1.
    pub fn classify(&self) -> TriangleType {
        let one = Ratio::new(1, 1);
        let s = self.angle_sum();
        if s > one {
            TriangleType::Elliptic
        } else if s == one {
            TriangleType::Euclidean
        } else {
            TriangleType::Hyperbolic
        }
    }

    /// Order of the finite triangle group: `2n` for `(2,2,n)`, 12 for
    /// `(2,3,3)`, 24 for `(2,3,4)`, 60 for `(2,3,5)`.
    pub fn elliptic_order(&self) -> Option<u64> {
        if self.classify() != TriangleType::Elliptic {
            return None;
        }
        match self.indices {
            [2, 2, n] => Some(2 * n),
            [2, 3, 3] => Some(12),
            [2, 3, 4] => Some(24),
            [2, 3, 5] => Some(60),
            _ => None,
        }
    }

    /// Negated orbifold Euler characteristic `1 − Σ 1/αᵢ` of the base sphere.
    pub fn minus_chi(&self) -> Ratio<i64> {
        Ratio::new(1, 1) - self.angle_sum()
    }
}

/// Deterministic trial-division primality, guarded to desk scale.
pub fn is_prime(n: u64) -> bool {
    assert!(n <= 1_000_000, "primality guard: inputs capped at 10^6");
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Necessary conditions against an epimorphism `T(src) ↠ T(dst)`.
///
/// For hyperbolic pairs, an epimorphism forces `−χ(src) ≥ −χ(dst)`. Torsion:
/// every prime index of `src` must survive as an element order in `dst`, and
/// torsion elements of a triangle group have order dividing one of its
/// indices; the generalization of that divisibility rule from its original
/// single configuration to arbitrary pairs is heuristic and is labelled as
/// such in reports. Neither test ever asserts that an epimorphism exists.
pub fn epi_obstruction(src: &TriangleParams, dst: &TriangleParams) -> EpiObstruction {
    let both_hyperbolic = src.classify() == TriangleType::Hyperbolic
        && dst.classify() == TriangleType::Hyperbolic;
    if both_hyperbolic && src.minus_chi() < dst.minus_chi() {
        return EpiObstruction::ExcludedByChi;
    }
    for &a in &src.indices() {
        if is_prime(a) && !dst.indices().iter().any(|&b| b % a == 0) {
            return EpiObstruction::ExcludedByTorsion;
        }
    }
    EpiObstruction::NotExcluded
}

pub const RULE_TORUS_MINIMAL: &str = "prime-torus-knot-minimality";
pub const RULE_MONTESINOS_MINIMAL: &str = "prime-montesinos-minimality";
pub const HYPOTHESIS_NOT_MET: &str = "hypothesis not met — minimality unknown";

/// The `(p,q)`-torus knot with both parameters prime is π-minimal.
pub fn torus_knot_pi_minimal(p: u64, q: u64) -> Result<DominationVerdict> {
    if p < 2 || q <= p {
        return Err(Error::InvalidInput(format!(
            "torus knot parameters need 2 <= p < q, got ({p},{q})"
        )));
    }
    if num_integer::gcd(p, q) != 1 {
        return Err(Error::InvalidInput(format!(
            "torus knot parameters must be coprime, got ({p},{q})"
        )));
    }
    if is_prime(p) && is_prime(q) {
        Ok(DominationVerdict::certified(RULE_TORUS_MINIMAL))
    } else {
        Ok(DominationVerdict::Consistent {
            checks: vec![HYPOTHESIS_NOT_MET.into()],
        })
    }
}

/// A non-elliptic Montesinos knot with three tangles and distinct prime
/// indices `α₁ < α₂ < α₃` is π-minimal.
pub fn montesinos_pi_minimal(m: &MontesinosLink) -> Result<DominationVerdict> {
    if m.tangle_count() != 3 {
        return Err(Error::InvalidInput(
            "minimality certifier needs exactly three tangles".into(),
        ));
    }
    let mut alphas: Vec<u64> = m.tangles().iter().map(|f| *f.denom() as u64).collect();
    alphas.sort_unstable();
    let distinct = alphas[0] < alphas[1] && alphas[1] < alphas[2];
    let all_prime = alphas.iter().all(|&a| is_prime(a));
    if distinct && all_prime && !m.is_elliptic() {
        Ok(DominationVerdict::certified(RULE_MONTESINOS_MINIMAL))
    } else {
        Ok(DominationVerdict::Consistent {
            checks: vec![HYPOTHESIS_NOT_MET.into()],
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(a: u64, b: u64, c: u64) -> TriangleParams {
        TriangleParams::new(a, b, c).unwrap()
    }

    #[test]
    fn classification() {
        assert_eq!(t(2, 3, 5).classify(), TriangleType::Elliptic);
        assert_eq!(t(3, 3, 3).classify(), TriangleType::Euclidean);
        assert_eq!(t(2, 3, 7).classify(), TriangleType::Hyperbolic);
        // permutation invariance comes with sorted storage
        assert_eq!(t(5, 2, 3).classify(), TriangleType::Elliptic);
    }

    #[test]
    fn elliptic_orders() {
        assert_eq!(t(2, 3, 3).elliptic_order(), Some(12));
        assert_eq!(t(2, 3, 4).elliptic_order(), Some(24));
        assert_eq!(t(2, 3, 5).elliptic_order(), Some(60));
        assert_eq!(t(2, 2, 7).elliptic_order(), Some(14));
        assert_eq!(t(2, 3, 7).elliptic_order(), None);
    }

    #[test]
    fn minus_chi_values() {
        assert_eq!(t(2, 3, 7).minus_chi(), Ratio::new(1, 42));
        assert_eq!(t(2, 3, 6).minus_chi(), Ratio::new(0, 1));
        assert_eq!(t(2, 3, 11).minus_chi(), Ratio::new(5, 66));
    }

    #[test]
    fn chi_obstruction() {
        assert_eq!(
            epi_obstruction(&t(2, 3, 7), &t(2, 3, 11)),
            EpiObstruction::ExcludedByChi
        );
        assert_eq!(
            epi_obstruction(&t(2, 3, 7), &t(2, 3, 7)),
            EpiObstruction::NotExcluded
        );
        // regression value computed by the implemented rule: chi already
        // excludes this pair (11/70 < 34/105)
        assert_eq!(
            epi_obstruction(&t(2, 5, 7), &t(3, 5, 7)),
            EpiObstruction::ExcludedByChi
        );
    }

    #[test]
    fn torsion_obstruction() {
        // 11 is prime and divides no index of (2,3,7)
        assert_eq!(
            epi_obstruction(&t(2, 3, 11), &t(2, 3, 7)),
            EpiObstruction::ExcludedByTorsion
        );
        assert_eq!(
            epi_obstruction(&t(2, 3, 12), &t(2, 3, 6)),
            EpiObstruction::NotExcluded
        );
    }

    #[test]
    fn primality() {
        assert!(is_prime(2) && is_prime(3) && is_prime(999983));
        assert!(!is_prime(1) && !is_prime(9) && !is_prime(91));
    }

    #[test]
    fn torus_minimality() {
        assert!(torus_knot_pi_minimal(3, 5).unwrap().is_certified());
        assert!(torus_knot_pi_minimal(5, 7).unwrap().is_certified());
        assert!(!torus_knot_pi_minimal(2, 9).unwrap().is_certified());
        assert!(torus_knot_pi_minimal(2, 4).is_err());
        assert!(torus_knot_pi_minimal(5, 3).is_err());
    }

    #[test]
    fn montesinos_minimality() {
        let m = MontesinosLink::parse("1/2,1/3,1/7").unwrap();
        assert!(montesinos_pi_minimal(&m).unwrap().is_certified());
        let elliptic = MontesinosLink::parse("1/2,1/3,1/5").unwrap();
        assert!(!montesinos_pi_minimal(&elliptic).unwrap().is_certified());
        let composite = MontesinosLink::parse("1/4,1/3,1/7").unwrap();
        assert!(!montesinos_pi_minimal(&composite).unwrap().is_certified());
        let r4 = MontesinosLink::parse("1/2,1/3,1/7,1/11").unwrap();
        assert!(montesinos_pi_minimal(&r4).is_err());
    }
}
