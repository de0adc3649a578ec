//! Finitely presented groups, Wirtinger presentations, and the quotient by
//! meridian squares.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

use crate::pd::PdCode;
use crate::{Error, Result};

/// A finite presentation with a marked set of meridian generators.
///
/// Relators are words in signed 1-based generator indices: `[2, -1]` is
/// `g₂·g₁⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPresentation {
    #[serde(rename = "ngens")]
    pub n_generators: usize,
    pub meridians: BTreeSet<usize>,
    pub relators: Vec<Vec<i32>>,
}

impl GroupPresentation {
    pub fn validate(&self) -> Result<()> {
        for rel in &self.relators {
            for &g in rel {
                let idx = g.unsigned_abs() as usize;
                if g == 0 || idx > self.n_generators {
                    return Err(Error::InvalidInput(format!(
                        "relator letter {g} outside generator range 1..={}",
                        self.n_generators
                    )));
                }
            }
        }
        for &m in &self.meridians {
            if m == 0 || m > self.n_generators {
                return Err(Error::InvalidInput(format!(
                    "meridian index {m} outside generator range"
                )));
            }
        }
        Ok(())
    }

    /// Free rank and torsion of the abelianization, via the relator exponent
    /// matrix.
    pub fn abelianization(&self) -> (usize, Vec<u64>) {
        if self.relators.is_empty() {
            return (self.n_generators, vec![]);
        }
        let mut m = vec![vec![0i128; self.n_generators]; self.relators.len()];
        for (i, rel) in self.relators.iter().enumerate() {
            for &g in rel {
                let j = g.unsigned_abs() as usize - 1;
                m[i][j] += g.signum() as i128;
            }
        }
        let s = crate::snf::smith(&m, false);
        let rank = s.diag.iter().filter(|&&d| d != 0).count();
        let torsion = s
            .diag
            .iter()
            .filter(|&&d| d > 1)
            .map(|&d| d as u64)
            .collect();
        (self.n_generators - rank, torsion)
    }

    /// Dihedral-style presentation `⟨x, y | x², y², (xy)^p⟩` of order `2p`,
    /// the π-orbifold group of any 2-bridge link of determinant `p`.
    pub fn dihedral_orbifold(p: u64) -> GroupPresentation {
        let mut relators = vec![vec![1, 1], vec![2, 2]];
        let mut word = Vec::new();
        for _ in 0..p {
            word.push(1);
            word.push(2);
        }
        relators.push(word);
        GroupPresentation {
            n_generators: 2,
            meridians: BTreeSet::from([1, 2]),
            relators,
        }
    }
}

/// Wirtinger presentation of the link group.
///
/// Generators correspond to the strands of the diagram (maximal over-passes,
/// plus one per crossing-free loop), all marked as meridians. Each crossing
/// contributes the conjugation relator (over)(in)(over)⁻¹(out)⁻¹. The
/// abelianization is free of rank equal to the component count.
pub fn wirtinger(code: &PdCode) -> Result<GroupPresentation> {
    let report = code.validate();
    if !report.is_valid() {
        return Err(Error::InvalidDiagram(report.violations.join("; ")));
    }
    let (strand, n) = code.strands();
    let mut relators = Vec::with_capacity(code.crossings.len());
    for t in &code.crossings {
        let over = strand[t[1]] as i32;
        let a = strand[t[0]] as i32;
        let c = strand[t[2]] as i32;
        relators.push(vec![over, a, -over, -c]);
    }
    Ok(GroupPresentation {
        n_generators: n,
        meridians: (1..=n).collect(),
        relators,
    })
}

/// Quotient by the normal closure of the squares of all meridians: appends
/// the relator `g²` for every meridian generator.
pub fn orbifold_quotient(pres: &GroupPresentation) -> Result<GroupPresentation> {
    if pres.meridians.is_empty() {
        return Err(Error::NoMeridians);
    }
    let mut out = pres.clone();
    for &m in &pres.meridians {
        out.relators.push(vec![m as i32, m as i32]);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> PdCode {
        PdCode::new(vec![[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]], 6)
    }

    #[test]
    fn unknot_presentation_is_free_of_rank_one() {
        let p = wirtinger(&PdCode::unknot()).unwrap();
        assert_eq!(p.n_generators, 1);
        assert!(p.relators.is_empty());
        assert_eq!(p.abelianization(), (1, vec![]));
    }

    #[test]
    fn trefoil_presentation_shape() {
        let p = wirtinger(&trefoil()).unwrap();
        assert_eq!(p.n_generators, 3);
        assert_eq!(p.relators.len(), 3);
        assert_eq!(p.meridians.len(), 3);
        // abelianization is free of rank 1
        assert_eq!(p.abelianization(), (1, vec![]));
    }

    #[test]
    fn hopf_abelianization_rank_two() {
        let hopf = PdCode::new(vec![[1, 3, 2, 4], [3, 1, 4, 2]], 4);
        let p = wirtinger(&hopf).unwrap();
        assert_eq!(p.abelianization(), (2, vec![]));
    }

    #[test]
    fn orbifold_quotient_adds_squares() {
        let p = wirtinger(&PdCode::unknot()).unwrap();
        let q = orbifold_quotient(&p).unwrap();
        assert_eq!(q.relators, vec![vec![1, 1]]);
        // G^orb(unknot) = Z/2
        assert_eq!(q.abelianization(), (0, vec![2]));
    }

    #[test]
    fn orbifold_quotient_requires_meridians() {
        let p = GroupPresentation {
            n_generators: 1,
            meridians: BTreeSet::new(),
            relators: vec![],
        };
        assert!(matches!(orbifold_quotient(&p), Err(Error::NoMeridians)));
    }

    #[test]
    fn dihedral_orbifold_abelianization() {
        // D_{2p} abelianizes to Z/2 x Z/2 for even p, Z/2 for odd p
        let d6 = GroupPresentation::dihedral_orbifold(3);
        assert_eq!(d6.abelianization(), (0, vec![2]));
        let d8 = GroupPresentation::dihedral_orbifold(4);
        assert_eq!(d8.abelianization(), (0, vec![2, 2]));
    }
}
