//! Planar diagram codes.
//!
//! A [`PdCode`] records one 4-tuple of arc labels per crossing, read
//! counterclockwise starting from the incoming under-arc. In a tuple
//! `(a, b, c, d)` the under-strand enters at `a` and leaves at `c`; `b` and
//! `d` lie on the over-strand. Arc labels run over `1..=arc_count`.
//!
//! Worked example: the right-handed trefoil is
//!
//! ```text
//! [[1,4,2,5], [3,6,4,1], [5,2,6,3]]      arc_count = 6
//! ```
//!
//! At the first crossing the under-strand runs 1 → 2 while the over-strand
//! occupies arcs 4 and 5; reading 1, 4, 2, 5 counterclockwise around the
//! crossing fixes the embedding data every face computation uses.
//!
//! Two conventions extend the textbook format:
//! - a label that appears in no crossing is a crossing-free loop component,
//!   so the 0-crossing unknot is `{ crossings: [], arcs: 1 }`;
//! - split diagrams are ordinary codes whose crossing graph is disconnected
//!   (disjoint label blocks), e.g. the 2-component trivial link is
//!   `{ crossings: [], arcs: 2 }`.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A link diagram as a planar diagram code.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PdCode {
    /// One `(a, b, c, d)` tuple per crossing, counterclockwise from the
    /// incoming under-arc.
    pub crossings: Vec<[usize; 4]>,
    /// Number of arc labels; labels are `1..=arc_count`.
    #[serde(rename = "arcs")]
    pub arc_count: usize,
}

/// Outcome of [`PdCode::validate`]; empty iff the code is well-formed.
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl PdCode {
    pub fn new(crossings: Vec<[usize; 4]>, arc_count: usize) -> Self {
        PdCode {
            crossings,
            arc_count,
        }
    }

    /// The 0-crossing unknot diagram.
    pub fn unknot() -> Self {
        PdCode::new(vec![], 1)
    }

    /// Split union of `n` crossing-free loops.
    pub fn trivial_link(n: usize) -> Self {
        PdCode::new(vec![], n)
    }

    /// Checks every diagram invariant and reports all violations.
    ///
    /// Each label in `1..=arc_count` must occur exactly twice across all
    /// tuples or not at all (a crossing-free loop). This is a total function:
    /// malformed codes yield a non-empty report, never a panic.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        if self.arc_count == 0 {
            report.violations.push("arc_count must be positive".into());
            return report;
        }
        let mut occurrences = vec![0usize; self.arc_count + 1];
        for (ci, tuple) in self.crossings.iter().enumerate() {
            for &arc in tuple {
                if arc == 0 || arc > self.arc_count {
                    report.violations.push(format!(
                        "crossing {ci}: arc label {arc} outside 1..={}",
                        self.arc_count
                    ));
                } else {
                    occurrences[arc] += 1;
                }
            }
        }
        for (arc, &n) in occurrences.iter().enumerate().skip(1) {
            if n != 0 && n != 2 {
                report
                    .violations
                    .push(format!("arc label {arc} appears {n} times (want 0 or 2)"));
            }
        }
        report
    }

    fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidDiagram(report.violations.join("; ")))
        }
    }

    /// Number of link components, by arc traversal: each crossing joins the
    /// under pair `a ~ c` and the over pair `b ~ d`; crossing-free labels are
    /// loops of their own.
    pub fn component_count(&self) -> Result<usize> {
        self.ensure_valid()?;
        let mut uf = UnionFind::new(self.arc_count + 1);
        for t in &self.crossings {
            uf.union(t[0], t[2]);
            uf.union(t[1], t[3]);
        }
        let mut roots = std::collections::BTreeSet::new();
        for arc in 1..=self.arc_count {
            roots.insert(uf.find(arc));
        }
        Ok(roots.len())
    }

    /// Connected pieces of the underlying 4-valent graph. A diagram with more
    /// than one piece presents a split link.
    pub fn diagram_pieces(&self) -> Result<Vec<PdCode>> {
        self.ensure_valid()?;
        let mut uf = UnionFind::new(self.arc_count + 1);
        for t in &self.crossings {
            uf.union(t[0], t[1]);
            uf.union(t[0], t[2]);
            uf.union(t[0], t[3]);
        }
        let mut piece_of_root = std::collections::BTreeMap::new();
        let mut pieces: Vec<(Vec<[usize; 4]>, Vec<usize>)> = Vec::new();
        for arc in 1..=self.arc_count {
            let root = uf.find(arc);
            let idx = *piece_of_root.entry(root).or_insert_with(|| {
                pieces.push((Vec::new(), Vec::new()));
                pieces.len() - 1
            });
            pieces[idx].1.push(arc);
        }
        for t in &self.crossings {
            let idx = piece_of_root[&uf.find(t[0])];
            pieces[idx].0.push(*t);
        }
        Ok(pieces
            .into_iter()
            .map(|(crossings, arcs)| {
                let mut relabel = std::collections::BTreeMap::new();
                for (i, &a) in arcs.iter().enumerate() {
                    relabel.insert(a, i + 1);
                }
                let crossings = crossings
                    .iter()
                    .map(|t| [relabel[&t[0]], relabel[&t[1]], relabel[&t[2]], relabel[&t[3]]])
                    .collect();
                PdCode::new(crossings, arcs.len())
            })
            .collect())
    }

    /// True when the underlying 4-valent graph is connected.
    pub fn is_connected(&self) -> Result<bool> {
        Ok(self.diagram_pieces()?.len() == 1)
    }

    /// Mirror diagram: every tuple is rotated one slot left, which exchanges
    /// the over- and under-strand at each crossing while keeping the planar
    /// cyclic order. Applying it twice yields an equivalent diagram of the
    /// original link.
    pub fn mirror(&self) -> PdCode {
        let crossings = self
            .crossings
            .iter()
            .map(|&[a, b, c, d]| [b, c, d, a])
            .collect();
        PdCode::new(crossings, self.arc_count)
    }

    /// Connected sum of two diagrams, spliced at the lowest-numbered arc of
    /// each summand. A crossing-free summand acts as the identity.
    pub fn connected_sum(a: &PdCode, b: &PdCode) -> Result<PdCode> {
        a.ensure_valid()?;
        b.ensure_valid()?;
        if !a.is_connected()? || !b.is_connected()? {
            return Err(Error::SplitDiagram(
                "connected_sum requires non-split summands".into(),
            ));
        }
        if a.crossings.is_empty() {
            return Ok(b.clone());
        }
        if b.crossings.is_empty() {
            return Ok(a.clone());
        }
        let offset = a.arc_count;
        let mut crossings = a.crossings.clone();
        crossings.extend(
            b.crossings
                .iter()
                .map(|t| [t[0] + offset, t[1] + offset, t[2] + offset, t[3] + offset]),
        );
        let x = 1; // lowest arc of a
        let y = offset + 1; // lowest arc of b after relabeling
        let slots_x = find_slots(&crossings[..a.crossings.len()], x);
        let slots_y = find_slots(&crossings[a.crossings.len()..], y)
            .into_iter()
            .map(|(ci, s)| (ci + a.crossings.len(), s))
            .collect::<Vec<_>>();
        // Splice: x keeps its first end and takes over y's first end; y keeps
        // its second end and takes over x's second end.
        let (xc2, xs2) = slots_x[1];
        let (yc1, ys1) = slots_y[0];
        crossings[yc1][ys1] = x;
        crossings[xc2][xs2] = y;
        Ok(PdCode::new(crossings, a.arc_count + b.arc_count))
    }

    /// Strand decomposition: arcs joined through over-passes (`b ~ d` at each
    /// crossing). Returns the strand id (1-based) of each arc and the strand
    /// count; ids are ordered by smallest member arc.
    pub(crate) fn strands(&self) -> (Vec<usize>, usize) {
        let mut uf = UnionFind::new(self.arc_count + 1);
        for t in &self.crossings {
            uf.union(t[1], t[3]);
        }
        let mut id_of_root = std::collections::BTreeMap::new();
        let mut strand = vec![0usize; self.arc_count + 1];
        for arc in 1..=self.arc_count {
            let root = uf.find(arc);
            let next = id_of_root.len() + 1;
            let id = *id_of_root.entry(root).or_insert(next);
            strand[arc] = id;
        }
        (strand, id_of_root.len())
    }
}

fn find_slots(crossings: &[[usize; 4]], arc: usize) -> Vec<(usize, usize)> {
    let mut slots = Vec::new();
    for (ci, t) in crossings.iter().enumerate() {
        for (s, &a) in t.iter().enumerate() {
            if a == arc {
                slots.push((ci, s));
            }
        }
    }
    slots
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn trefoil() -> PdCode {
        PdCode::new(vec![[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]], 6)
    }

    fn hopf() -> PdCode {
        PdCode::new(vec![[1, 3, 2, 4], [3, 1, 4, 2]], 4)
    }

    #[test]
    fn validates_standard_trefoil() {
        assert!(trefoil().validate().is_valid());
    }

    #[test]
    fn rejects_degenerate_tuple() {
        let code = PdCode::new(vec![[1, 1, 1, 1]], 1);
        let report = code.validate();
        assert!(!report.is_valid());
        assert!(report.violations[0].contains("4 times"));
    }

    #[test]
    fn zero_crossing_unknot_is_valid() {
        assert!(PdCode::unknot().validate().is_valid());
        assert_eq!(PdCode::unknot().component_count().unwrap(), 1);
    }

    #[test]
    fn component_counts() {
        assert_eq!(trefoil().component_count().unwrap(), 1);
        assert_eq!(hopf().component_count().unwrap(), 2);
        assert_eq!(PdCode::trivial_link(2).component_count().unwrap(), 2);
    }

    #[test]
    fn mirror_preserves_validity_and_components() {
        let m = trefoil().mirror();
        assert!(m.validate().is_valid());
        assert_eq!(m.component_count().unwrap(), 1);
        let mm = m.mirror();
        assert_eq!(mm.component_count().unwrap(), 1);
    }

    #[test]
    fn connected_sum_component_arithmetic() {
        let sum = PdCode::connected_sum(&trefoil(), &hopf()).unwrap();
        assert!(sum.validate().is_valid());
        // components add minus one
        assert_eq!(sum.component_count().unwrap(), 1 + 2 - 1);
        assert!(sum.is_connected().unwrap());
    }

    #[test]
    fn connected_sum_with_unknot_is_identity() {
        let sum = PdCode::connected_sum(&trefoil(), &PdCode::unknot()).unwrap();
        assert_eq!(sum, trefoil());
        let sum = PdCode::connected_sum(&PdCode::unknot(), &trefoil()).unwrap();
        assert_eq!(sum, trefoil());
    }

    #[test]
    fn connected_sum_rejects_split_summand() {
        let err = PdCode::connected_sum(&trefoil(), &PdCode::trivial_link(2));
        assert!(matches!(err, Err(Error::SplitDiagram(_))));
    }

    #[test]
    fn split_detection() {
        assert!(!PdCode::trivial_link(2).is_connected().unwrap());
        let mut split = trefoil();
        split.arc_count = 7; // extra crossing-free loop
        assert_eq!(split.diagram_pieces().unwrap().len(), 2);
        assert_eq!(split.component_count().unwrap(), 2);
    }

    #[test]
    fn strand_count_matches_crossings_for_knots() {
        let (strand, n) = trefoil().strands();
        assert_eq!(n, 3);
        assert_eq!(strand.len(), 7);
    }
}
