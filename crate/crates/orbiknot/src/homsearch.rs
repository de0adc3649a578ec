//! Finite groups as multiplication tables, and exhaustive enumeration of
//! homomorphisms from finite presentations into them.
//!
//! The search assigns images generator by generator, checking each relator as
//! soon as all of its generators are assigned. Generators are processed in
//! descending order of relator participation. When the meridian flag is set,
//! meridian generators range only over the identity and the involutions of
//! the target — exactly the possible images of an order-≤-2 element, so this
//! is no restriction for presentations already containing the meridian
//! squares. Enumeration is exhaustive; exceeding the node budget is an error,
//! never a silent truncation. Work is split across the first assigned
//! generator's candidates and merged in lexicographic order, so results are
//! identical for every worker count.

use rayon::prelude::*;
use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use crate::presentation::GroupPresentation;
use crate::{Error, Result};

/// Hard default cap on partial assignments per (presentation, target) pair.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// A concrete finite group: full multiplication table over element indices
/// `0..order`, identity at index 0.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    pub name: String,
    order: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
    pub generators: Vec<u16>,
    /// Elements of order exactly 2.
    pub involutions: Vec<u16>,
    /// For dihedral constructions, the reflection subset of the involutions.
    pub reflections: Option<Vec<u16>>,
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u16) -> u16 {
        self.inv[a as usize]
    }

    fn from_table(name: String, mul: Vec<u16>, order: usize, generators: Vec<u16>) -> Result<Self> {
        // identity and inverse axioms are checked fully, associativity on a
        // deterministic pseudo-random sample
        let idx = |a: usize, b: usize| mul[a * order + b];
        for a in 0..order {
            if idx(0, a) != a as u16 || idx(a, 0) != a as u16 {
                return Err(Error::InvalidInput(format!(
                    "element 0 is not an identity in `{name}`"
                )));
            }
        }
        let mut inv = vec![None; order];
        for a in 0..order {
            for b in 0..order {
                if idx(a, b) == 0 {
                    inv[a] = Some(b as u16);
                }
            }
        }
        let inv: Vec<u16> = inv
            .into_iter()
            .enumerate()
            .map(|(a, i)| i.ok_or_else(|| Error::InvalidInput(format!("element {a} of `{name}` has no inverse"))))
            .collect::<Result<_>>()?;
        let mut seed = 0x9e37u64;
        for _ in 0..(8 * order).min(4096) {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let a = (seed >> 16) as usize % order;
            let b = (seed >> 32) as usize % order;
            let c = (seed >> 48) as usize % order;
            if idx(idx(a, b) as usize, c) != idx(a, idx(b, c) as usize) {
                return Err(Error::InvalidInput(format!(
                    "multiplication table of `{name}` is not associative"
                )));
            }
        }
        let involutions = (1..order)
            .filter(|&a| idx(a, a) == 0)
            .map(|a| a as u16)
            .collect();
        Ok(FiniteGroup {
            name,
            order,
            mul,
            inv,
            generators,
            involutions,
            reflections: None,
        })
    }

    /// Subgroup generated by `elements`, as a sorted element list.
    pub fn closure_of(&self, elements: &[u16]) -> Vec<u16> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut frontier = vec![0u16];
        while let Some(x) = frontier.pop() {
            for &g in elements {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    frontier.push(y);
                }
            }
        }
        (0..self.order as u16).filter(|&e| seen[e as usize]).collect()
    }

    pub fn generates(&self, elements: &[u16]) -> bool {
        self.closure_of(elements).len() == self.order
    }

    /// Multiplicative order of an element.
    pub fn element_order(&self, a: u16) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }
}

/// Cayley closure of a permutation set (permutations as images over a common
/// finite domain), erroring past `cap` elements. Element 0 is the identity;
/// the remaining indices follow breadth-first discovery order.
pub fn group_from_permutations(gens: &[Vec<usize>], cap: usize) -> Result<FiniteGroup> {
    let degree = gens.first().map_or(1, |g| g.len());
    for g in gens {
        if g.len() != degree {
            return Err(Error::InvalidInput(
                "permutations must share one domain".into(),
            ));
        }
        let mut seen = vec![false; degree];
        for &i in g {
            if i >= degree || seen[i] {
                return Err(Error::InvalidInput(format!("not a permutation: {g:?}")));
            }
            seen[i] = true;
        }
    }
    let identity: Vec<usize> = (0..degree).collect();
    let mut index: BTreeMap<Vec<usize>, u16> = BTreeMap::new();
    let mut elements: Vec<Vec<usize>> = vec![identity.clone()];
    index.insert(identity, 0);
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in gens {
            let composed: Vec<usize> = elements[i].iter().map(|&x| g[x]).collect();
            if !index.contains_key(&composed) {
                if elements.len() >= cap {
                    return Err(Error::ClosureCapExceeded { cap });
                }
                index.insert(composed.clone(), elements.len() as u16);
                elements.push(composed);
                queue.push_back(elements.len() - 1);
            }
        }
    }
    let order = elements.len();
    let mut mul = vec![0u16; order * order];
    for a in 0..order {
        for b in 0..order {
            let composed: Vec<usize> = elements[b].iter().map(|&x| elements[a][x]).collect();
            mul[a * order + b] = index[&composed];
        }
    }
    let generators = gens
        .iter()
        .map(|g| index[g])
        .collect();
    FiniteGroup::from_table(format!("perm[{order}]"), mul, order, generators)
}

/// Dihedral group of order `2n`: indices `0..n` are rotations `ρ^i`, indices
/// `n..2n` are reflections `σρ^i`. The reflection set is cached.
pub fn dihedral(n: u64) -> FiniteGroup {
    let n = n as usize;
    assert!(n >= 1);
    let order = 2 * n;
    let mut mul = vec![0u16; order * order];
    for a in 0..order {
        for b in 0..order {
            let v = match (a < n, b < n) {
                // ρ^a ρ^b = ρ^{a+b}
                (true, true) => (a + b) % n,
                // ρ^a σρ^j = σρ^{j−a}
                (true, false) => n + ((b - n) + n - a) % n,
                // σρ^i ρ^b = σρ^{i+b}
                (false, true) => n + ((a - n) + b) % n,
                // σρ^i σρ^j = ρ^{j−i}
                (false, false) => ((b - n) + n - (a - n)) % n,
            };
            mul[a * order + b] = v as u16;
        }
    }
    let generators = if n == 1 {
        vec![1u16]
    } else {
        vec![n as u16, (n + 1) as u16]
    };
    let mut g = FiniteGroup::from_table(format!("D{}", 2 * n), mul, order, generators)
        .expect("dihedral table is a group");
    g.reflections = Some((n as u16..(2 * n) as u16).collect());
    g
}

/// Alternating group A4 as permutations of 4 points.
pub fn alternating_4() -> FiniteGroup {
    let mut g = group_from_permutations(&[vec![1, 0, 3, 2], vec![1, 2, 0, 3]], 16).unwrap();
    g.name = "A4".into();
    g
}

/// Symmetric group S4.
pub fn symmetric_4() -> FiniteGroup {
    let mut g = group_from_permutations(&[vec![1, 0, 2, 3], vec![1, 2, 3, 0]], 32).unwrap();
    g.name = "S4".into();
    g
}

/// Alternating group A5 as permutations of 5 points.
pub fn alternating_5() -> FiniteGroup {
    let mut g = group_from_permutations(&[vec![1, 2, 0, 3, 4], vec![0, 1, 3, 4, 2]], 64).unwrap();
    g.name = "A5".into();
    g
}

/// The control group S3 × Z/2 in its permutation realization.
pub fn s3_x_z2() -> FiniteGroup {
    let mut g = group_from_permutations(
        &[
            vec![1, 0, 2, 3, 4],
            vec![1, 2, 0, 3, 4],
            vec![0, 1, 2, 4, 3],
        ],
        16,
    )
    .unwrap();
    g.name = "S3xZ2".into();
    g
}

/// The default battery: dihedral groups for n = 2..=13, the finite triangle
/// groups A4, S4, A5, and the control S3 × Z/2.
pub fn default_battery() -> Vec<FiniteGroup> {
    let mut battery: Vec<FiniteGroup> = (2..=13).map(dihedral).collect();
    battery.push(alternating_4());
    battery.push(symmetric_4());
    battery.push(alternating_5());
    battery.push(s3_x_z2());
    battery
}

/// Resolve a battery group by name (`D6`, `A5`, `S4`, `S3xZ2`, …).
pub fn group_by_name(name: &str) -> Result<FiniteGroup> {
    match name {
        "A4" => Ok(alternating_4()),
        "S4" => Ok(symmetric_4()),
        "A5" => Ok(alternating_5()),
        "S3xZ2" => Ok(s3_x_z2()),
        "Z2" => Ok(dihedral(1)),
        _ => {
            if let Some(rest) = name.strip_prefix('D') {
                let order: u64 = rest
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("unknown group `{name}`")))?;
                if order % 2 != 0 || order == 0 {
                    return Err(Error::InvalidInput(format!(
                        "dihedral order must be even and positive, got `{name}`"
                    )));
                }
                Ok(dihedral(order / 2))
            } else {
                Err(Error::InvalidInput(format!("unknown group `{name}`")))
            }
        }
    }
}

/// Search controls.
#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    pub meridians_to_involutions: bool,
    pub budget: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            meridians_to_involutions: true,
            budget: DEFAULT_BUDGET,
        }
    }
}

struct SearchPlan {
    /// assignment order: position -> generator (0-based)
    order: Vec<usize>,
    /// relators (precompiled) checked at each position
    checks_at: Vec<Vec<Vec<i32>>>,
    /// candidate images per generator (0-based), sorted
    domains: Vec<Vec<u16>>,
}

fn plan(pres: &GroupPresentation, target: &FiniteGroup, opts: &SearchOptions) -> SearchPlan {
    let n = pres.n_generators;
    let mut participation = vec![0usize; n];
    for rel in &pres.relators {
        for &g in rel {
            participation[g.unsigned_abs() as usize - 1] += 1;
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&g| (std::cmp::Reverse(participation[g]), g));
    let mut position_of = vec![0usize; n];
    for (pos, &g) in order.iter().enumerate() {
        position_of[g] = pos;
    }
    let mut checks_at: Vec<Vec<Vec<i32>>> = vec![Vec::new(); n];
    for rel in &pres.relators {
        if rel.is_empty() {
            continue;
        }
        let last = rel
            .iter()
            .map(|&g| position_of[g.unsigned_abs() as usize - 1])
            .max()
            .unwrap();
        checks_at[last].push(rel.clone());
    }
    let involution_domain: Vec<u16> = {
        let mut d = vec![0u16];
        d.extend(target.involutions.iter().copied());
        d.sort_unstable();
        d
    };
    let full_domain: Vec<u16> = (0..target.order() as u16).collect();
    let domains = (0..n)
        .map(|g| {
            if opts.meridians_to_involutions && pres.meridians.contains(&(g + 1)) {
                involution_domain.clone()
            } else {
                full_domain.clone()
            }
        })
        .collect();
    SearchPlan {
        order,
        checks_at,
        domains,
    }
}

fn eval_relator(target: &FiniteGroup, rel: &[i32], image: &[u16]) -> u16 {
    let mut acc = 0u16;
    for &g in rel {
        let x = image[g.unsigned_abs() as usize - 1];
        let x = if g < 0 { target.inv(x) } else { x };
        acc = target.mul(acc, x);
    }
    acc
}

struct SearchState<'a> {
    target: &'a FiniteGroup,
    plan: &'a SearchPlan,
    budget: u64,
    visited: &'a AtomicU64,
    aborted: &'a AtomicBool,
}

fn dfs(st: &SearchState<'_>, pos: usize, image: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
    if st.aborted.load(Ordering::Relaxed) {
        return;
    }
    if pos == st.plan.order.len() {
        out.push(image.clone());
        return;
    }
    let gen = st.plan.order[pos];
    for &candidate in &st.plan.domains[gen] {
        if st.visited.fetch_add(1, Ordering::Relaxed) >= st.budget {
            st.aborted.store(true, Ordering::Relaxed);
            return;
        }
        image[gen] = candidate;
        let ok = st.plan.checks_at[pos]
            .iter()
            .all(|rel| eval_relator(st.target, rel, image) == 0);
        if ok {
            dfs(st, pos + 1, image, out);
        }
    }
    image[gen] = 0;
}

/// Every homomorphism from the presentation into the target, as image vectors
/// indexed by generator, in lexicographic order.
pub fn all_homomorphisms(
    pres: &GroupPresentation,
    target: &FiniteGroup,
    opts: &SearchOptions,
) -> Result<Vec<Vec<u16>>> {
    pres.validate()?;
    if pres.n_generators == 0 {
        return Ok(vec![vec![]]);
    }
    let plan = plan(pres, target, opts);
    let visited = AtomicU64::new(0);
    let aborted = AtomicBool::new(false);
    let st = SearchState {
        target,
        plan: &plan,
        budget: opts.budget,
        visited: &visited,
        aborted: &aborted,
    };
    let first_gen = plan.order[0];
    let first_checks = &plan.checks_at[0];
    let mut results: Vec<Vec<Vec<u16>>> = plan.domains[first_gen]
        .par_iter()
        .map(|&candidate| {
            let mut out = Vec::new();
            if st.visited.fetch_add(1, Ordering::Relaxed) >= st.budget {
                st.aborted.store(true, Ordering::Relaxed);
                return out;
            }
            let mut image = vec![0u16; pres.n_generators];
            image[first_gen] = candidate;
            let ok = first_checks
                .iter()
                .all(|rel| eval_relator(target, rel, &image) == 0);
            if ok {
                dfs(&st, 1, &mut image, &mut out);
            }
            out
        })
        .collect();
    if aborted.load(Ordering::Relaxed) {
        return Err(Error::BudgetExceeded {
            visited: visited.load(Ordering::Relaxed),
            budget: opts.budget,
        });
    }
    let mut flat: Vec<Vec<u16>> = results.drain(..).flatten().collect();
    flat.sort_unstable();
    Ok(flat)
}

/// Whether some homomorphism is onto: the image set must generate the target.
pub fn epimorphism_exists(
    pres: &GroupPresentation,
    target: &FiniteGroup,
    opts: &SearchOptions,
) -> Result<bool> {
    let homs = all_homomorphisms(pres, target, opts)?;
    Ok(homs.iter().any(|image| target.generates(image)))
}

/// Count of homomorphisms and epimorphisms.
pub fn hom_counts(
    pres: &GroupPresentation,
    target: &FiniteGroup,
    opts: &SearchOptions,
) -> Result<(u64, u64)> {
    let homs = all_homomorphisms(pres, target, opts)?;
    let epi = homs.iter().filter(|image| target.generates(image)).count() as u64;
    Ok((homs.len() as u64, epi))
}

/// Map from target name to (hom count, epi count).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientProfile {
    pub counts: BTreeMap<String, (u64, u64)>,
}

pub fn quotient_profile(
    pres: &GroupPresentation,
    battery: &[FiniteGroup],
    opts: &SearchOptions,
) -> Result<QuotientProfile> {
    let mut counts = BTreeMap::new();
    for g in battery {
        counts.insert(g.name.clone(), hom_counts(pres, g, opts)?);
    }
    Ok(QuotientProfile { counts })
}

/// Per-target record of a non-domination search.
#[derive(Debug, Clone)]
pub struct TargetCheck {
    pub target: String,
    pub dst_epi: Option<bool>,
    pub src_epi: Option<bool>,
    pub error: Option<String>,
}

/// Outcome of [`non_domination_evidence`]: the first battery group that is a
/// quotient of `dst` but not of `src` certifies that `src` does not dominate
/// `dst`; `None` is inconclusive.
#[derive(Debug, Clone)]
pub struct EvidenceReport {
    pub witness: Option<String>,
    pub checked: Vec<TargetCheck>,
}

pub fn non_domination_evidence(
    src: &GroupPresentation,
    dst: &GroupPresentation,
    battery: &[FiniteGroup],
    opts: &SearchOptions,
) -> Result<EvidenceReport> {
    let mut checked = Vec::new();
    let mut witness = None;
    for g in battery {
        let mut record = TargetCheck {
            target: g.name.clone(),
            dst_epi: None,
            src_epi: None,
            error: None,
        };
        match epimorphism_exists(dst, g, opts) {
            Err(e @ Error::BudgetExceeded { .. }) => {
                record.error = Some(e.to_string());
                checked.push(record);
                continue;
            }
            Err(e) => return Err(e),
            Ok(dst_epi) => {
                record.dst_epi = Some(dst_epi);
                if dst_epi {
                    match epimorphism_exists(src, g, opts) {
                        Err(e @ Error::BudgetExceeded { .. }) => {
                            record.error = Some(e.to_string());
                            checked.push(record);
                            continue;
                        }
                        Err(e) => return Err(e),
                        Ok(src_epi) => {
                            record.src_epi = Some(src_epi);
                            if !src_epi {
                                witness = Some(g.name.clone());
                                checked.push(record);
                                break;
                            }
                        }
                    }
                }
            }
        }
        checked.push(record);
    }
    Ok(EvidenceReport { witness, checked })
}
