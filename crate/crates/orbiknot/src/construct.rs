//! Diagram builders for the 2-bridge and Montesinos families.
//!
//! Rational tangles are assembled from the all-positive continued fraction
//! of the slope: the digit list `[a₁, …, a_m]` of `p/q` is applied from the
//! innermost digit outward, alternating horizontal twist batches (east side)
//! and vertical twist batches (south side), with the outermost batch `a₁`
//! horizontal. Closing the top and bottom of the tangle of slope `p/q` yields
//! the 4-plat diagram of the 2-bridge link of determinant `p`; chaining `r`
//! tangles of slopes `βᵢ/αᵢ` into a necklace yields a Montesinos diagram of
//! determinant `|Σ βᵢ/αᵢ|·∏αᵢ`.

use num_integer::Integer;
use num_rational::Ratio;

use crate::montesinos::MontesinosLink;
use crate::pd::{PdCode, UnionFind};
use crate::{Error, Result};

/// Schubert parameters of a 2-bridge link: `p/q` with `0 < q < p`,
/// `gcd(p, q) = 1`; the unknot is `(1, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwoBridgeParams {
    pub p: u64,
    pub q: u64,
}

impl TwoBridgeParams {
    pub fn new(p: u64, q: u64) -> Result<Self> {
        if p == 1 && q == 0 {
            return Ok(TwoBridgeParams { p, q });
        }
        if p < 1 || q == 0 || q >= p || p.gcd(&q) != 1 {
            return Err(Error::InvalidInput(format!(
                "invalid 2-bridge parameters {p}/{q}"
            )));
        }
        Ok(TwoBridgeParams { p, q })
    }
}

impl std::fmt::Display for TwoBridgeParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "S({},{})", self.p, self.q)
    }
}

/// All-positive continued fraction digits of `num/den`, leading digit 0 when
/// the fraction is less than one.
pub fn continued_fraction(mut num: u64, mut den: u64) -> Vec<u64> {
    assert!(den > 0, "continued_fraction needs a finite fraction");
    let mut digits = Vec::new();
    while den != 0 {
        digits.push(num / den);
        let r = num % den;
        num = den;
        den = r;
    }
    digits
}

#[derive(Debug, Clone, Copy)]
struct TangleEnds {
    nw: usize,
    ne: usize,
    sw: usize,
    se: usize,
}

struct Builder {
    crossings: Vec<[usize; 4]>,
    next_id: usize,
}

impl Builder {
    fn new() -> Self {
        Builder {
            crossings: Vec::new(),
            next_id: 0,
        }
    }

    fn fresh(&mut self) -> usize {
        self.next_id += 1;
        self.next_id - 1
    }

    fn zero_tangle(&mut self) -> TangleEnds {
        let top = self.fresh();
        let bottom = self.fresh();
        TangleEnds {
            nw: top,
            ne: top,
            sw: bottom,
            se: bottom,
        }
    }

    /// One twist of the two east endpoints; `positive` picks the handedness.
    fn twist_east(&mut self, t: &mut TangleEnds, positive: bool) {
        let ne2 = self.fresh();
        let se2 = self.fresh();
        let tuple = if positive {
            // over-strand runs SW-NE
            [t.ne, t.se, se2, ne2]
        } else {
            // over-strand runs NW-SE
            [t.se, se2, ne2, t.ne]
        };
        self.crossings.push(tuple);
        t.ne = ne2;
        t.se = se2;
    }

    /// One twist of the two south endpoints.
    fn twist_south(&mut self, t: &mut TangleEnds, positive: bool) {
        let sw2 = self.fresh();
        let se2 = self.fresh();
        let tuple = if positive {
            // over-strand runs NE-SW
            [t.sw, sw2, se2, t.se]
        } else {
            // over-strand runs NW-SE
            [sw2, se2, t.se, t.sw]
        };
        self.crossings.push(tuple);
        t.sw = sw2;
        t.se = se2;
    }

    /// Rational tangle of slope `num/den > 0`, mirrored when `mirrored`.
    fn rational_tangle(&mut self, num: u64, den: u64, mirrored: bool) -> TangleEnds {
        let mut digits = continued_fraction(num, den);
        // odd digit count anchors the alternation: the innermost batch must
        // be horizontal ([…, a] = […, a−1, 1])
        if digits.len() % 2 == 0 {
            let last = digits.last_mut().unwrap();
            *last -= 1;
            digits.push(1);
        }
        let mut t = self.zero_tangle();
        for (i, &d) in digits.iter().enumerate().rev() {
            let horizontal = i % 2 == 0;
            for _ in 0..d {
                if horizontal {
                    self.twist_east(&mut t, !mirrored);
                } else {
                    self.twist_south(&mut t, !mirrored);
                }
            }
        }
        t
    }

    /// Finalize into a `PdCode`, fusing endpoint pairs first.
    fn finish(mut self, fusions: &[(usize, usize)]) -> PdCode {
        let mut uf = UnionFind::new(self.next_id);
        for &(a, b) in fusions {
            uf.union(a, b);
        }
        let mut label = std::collections::BTreeMap::new();
        for t in &self.crossings {
            for &id in t {
                let root = uf.find(id);
                let next = label.len() + 1;
                label.entry(root).or_insert(next);
            }
        }
        for id in 0..self.next_id {
            let root = uf.find(id);
            let next = label.len() + 1;
            label.entry(root).or_insert(next);
        }
        let arc_count = label.len();
        let crossings = self
            .crossings
            .iter_mut()
            .map(|t| {
                [
                    label[&uf.find(t[0])],
                    label[&uf.find(t[1])],
                    label[&uf.find(t[2])],
                    label[&uf.find(t[3])],
                ]
            })
            .collect();
        PdCode::new(crossings, arc_count)
    }
}

/// 4-plat diagram of the 2-bridge link `L(p/q)`. Its determinant is `p` and
/// it has one component for odd `p`, two for even `p`.
pub fn two_bridge_diagram(params: TwoBridgeParams) -> PdCode {
    if params.p == 1 {
        return PdCode::unknot();
    }
    let mut b = Builder::new();
    let t = b.rational_tangle(params.p, params.q, false);
    b.finish(&[(t.nw, t.ne), (t.sw, t.se)])
}

/// Montesinos diagram: the cyclic closure of the rational tangles of slopes
/// `βᵢ/αᵢ`. Degenerate single-tangle input reduces to the 2-bridge diagram
/// of `L(α/β)`.
pub fn montesinos_diagram(m: &MontesinosLink) -> Result<PdCode> {
    m.validate()?;
    let tangles = m.tangles();
    if tangles.len() == 1 {
        let (alpha, beta) = split_fraction(tangles[0]);
        let q = beta.rem_euclid(alpha as i64) as u64;
        return Ok(two_bridge_diagram(TwoBridgeParams::new(alpha, q)?));
    }
    let mut b = Builder::new();
    let mut ends = Vec::with_capacity(tangles.len());
    for &f in tangles {
        let (alpha, beta) = split_fraction(f);
        ends.push(b.rational_tangle(beta.unsigned_abs(), alpha, beta < 0));
    }
    let mut fusions = Vec::new();
    for i in 0..ends.len() {
        let j = (i + 1) % ends.len();
        fusions.push((ends[i].ne, ends[j].nw));
        fusions.push((ends[i].se, ends[j].sw));
    }
    Ok(b.finish(&fusions))
}

/// `(α, β)` of a tangle fraction `β/α`.
pub(crate) fn split_fraction(f: Ratio<i64>) -> (u64, i64) {
    (*f.denom() as u64, *f.numer())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn continued_fraction_digits() {
        assert_eq!(continued_fraction(3, 1), vec![3]);
        assert_eq!(continued_fraction(5, 3), vec![1, 1, 2]);
        assert_eq!(continued_fraction(1, 2), vec![0, 2]);
        assert_eq!(continued_fraction(9, 7), vec![1, 3, 2]);
    }

    #[test]
    fn two_bridge_unknot() {
        let pd = two_bridge_diagram(TwoBridgeParams::new(1, 0).unwrap());
        assert_eq!(pd, PdCode::unknot());
    }

    #[test]
    fn two_bridge_diagrams_are_valid() {
        for (p, q) in [(2, 1), (3, 1), (5, 3), (9, 7), (15, 4)] {
            let pd = two_bridge_diagram(TwoBridgeParams::new(p, q).unwrap());
            assert!(pd.validate().is_valid(), "invalid diagram for {p}/{q}");
            assert!(pd.is_connected().unwrap());
            let expected_components = if p % 2 == 0 { 2 } else { 1 };
            assert_eq!(
                pd.component_count().unwrap(),
                expected_components,
                "components of {p}/{q}"
            );
        }
    }

    #[test]
    fn single_tangle_montesinos_reduces_to_two_bridge() {
        let m = crate::montesinos::MontesinosLink::parse("1/2").unwrap();
        let pd = montesinos_diagram(&m).unwrap();
        assert_eq!(pd, two_bridge_diagram(TwoBridgeParams::new(2, 1).unwrap()));
        assert_eq!(crate::invariants::determinant(&pd).unwrap(), 2);
    }

    #[test]
    fn two_bridge_params_validation() {
        assert!(TwoBridgeParams::new(4, 2).is_err());
        assert!(TwoBridgeParams::new(5, 5).is_err());
        assert!(TwoBridgeParams::new(5, 0).is_err());
        assert!(TwoBridgeParams::new(1, 0).is_ok());
    }
}
