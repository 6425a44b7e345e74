//! The canonical coarse structure of a groupoid, `(E, F)`-asymptotic
//! dimension on finite coarse spaces, treeable covers, and the passage
//! between dad witnesses and coarse decompositions.

mod bridge;
mod tree;

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

pub use bridge::{asdim_to_dad, dad_to_asdim, fiber_decompositions, AsdimToDad, DadToAsdim};
pub use tree::{treeable_cover, Graphing, TreeableCertificate, TreeableClass, TreeableCover};

use crate::error::{Error, Result};
use crate::groupoid::Groupoid;
use crate::search::{colour, Colouring, SearchMode};
use crate::sets::ArrowSet;

/// Exact decomposition search runs on at most this many points; larger
/// spaces fall back to greedy.
pub const EXACT_POINTS: usize = 24;

/// A symmetric reflexive relation on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gauge {
    rows: Vec<FixedBitSet>,
}

impl Gauge {
    pub fn diagonal(n: usize) -> Self {
        let mut rows = vec![FixedBitSet::with_capacity(n); n];
        for (i, row) in rows.iter_mut().enumerate() {
            row.insert(i);
        }
        Self { rows }
    }

    pub fn complete(n: usize) -> Self {
        let mut row = FixedBitSet::with_capacity(n);
        row.insert_range(..);
        Self { rows: vec![row; n] }
    }

    /// Diagonal plus every `(i, j)` with `related(i, j)`, symmetrized.
    pub fn from_fn(n: usize, related: impl Fn(usize, usize) -> bool) -> Self {
        let mut out = Self::diagonal(n);
        for i in 0..n {
            for j in i + 1..n {
                if related(i, j) || related(j, i) {
                    out.rows[i].insert(j);
                    out.rows[j].insert(i);
                }
            }
        }
        out
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut out = Self::diagonal(n);
        for (i, j) in pairs {
            if i >= n || j >= n {
                return Err(Error::Precondition(format!("pair ({i}, {j}) outside {n} points")));
            }
            out.rows[i].insert(j);
            out.rows[j].insert(i);
        }
        Ok(out)
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.rows[i].contains(j)
    }

    pub fn row(&self, i: usize) -> &FixedBitSet {
        &self.rows[i]
    }

    /// Number of ordered pairs.
    pub fn n_pairs(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum()
    }

    pub fn is_symmetric_reflexive(&self) -> bool {
        let n = self.len();
        self.rows.iter().enumerate().all(|(i, r)| r.len() == n && r.contains(i) && r.ones().all(|j| self.rows[j].contains(i)))
    }

    pub fn is_subset(&self, other: &Gauge) -> bool {
        self.len() == other.len() && self.rows.iter().zip(&other.rows).all(|(a, b)| a.is_subset(b))
    }

    pub fn union(&self, other: &Gauge) -> Gauge {
        assert_eq!(self.len(), other.len());
        let rows = self.rows.iter().zip(&other.rows).map(|(a, b)| a | b).collect();
        Gauge { rows }
    }

    /// Relational composition `self ∘ other`.
    pub fn compose(&self, other: &Gauge) -> Gauge {
        assert_eq!(self.len(), other.len());
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut out = FixedBitSet::with_capacity(self.len());
                for j in r.ones() {
                    out.union_with(&other.rows[j]);
                }
                out
            })
            .collect();
        Gauge { rows }
    }

    /// The gauge induced on the points `keep` (renumbered in the given order).
    pub fn restrict(&self, keep: &[usize]) -> Gauge {
        let n = keep.len();
        let rows = keep
            .iter()
            .map(|&i| {
                let mut row = FixedBitSet::with_capacity(n);
                for (a, &j) in keep.iter().enumerate() {
                    row.set(a, self.rows[i].contains(j));
                }
                row
            })
            .collect();
        Gauge { rows }
    }
}

/// A finite set of labelled points with named gauges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoarseSpace {
    points: Vec<u32>,
    index: BTreeMap<u32, usize>,
    gauges: BTreeMap<String, Gauge>,
}

impl CoarseSpace {
    /// Points are deduplicated and sorted.
    pub fn new(points: impl IntoIterator<Item = u32>) -> Self {
        let mut points: Vec<u32> = points.into_iter().collect();
        points.sort_unstable();
        points.dedup();
        let index = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        Self { points, index, gauges: BTreeMap::new() }
    }

    pub fn points(&self) -> &[u32] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, label: u32) -> Option<usize> {
        self.index.get(&label).copied()
    }

    pub fn add_gauge(&mut self, name: &str, gauge: Gauge) -> Result<()> {
        if gauge.len() != self.len() || !gauge.is_symmetric_reflexive() {
            return Err(Error::Precondition(format!("gauge `{name}` is not a symmetric reflexive relation on the points")));
        }
        self.gauges.insert(name.to_owned(), gauge);
        Ok(())
    }

    pub fn gauge(&self, name: &str) -> Option<&Gauge> {
        self.gauges.get(name)
    }

    pub fn gauge_names(&self) -> impl Iterator<Item = &str> {
        self.gauges.keys().map(String::as_str)
    }

    /// The subspace on the given labels, gauges restricted.
    pub fn subspace(&self, labels: &[u32]) -> Result<CoarseSpace> {
        let mut keep = Vec::with_capacity(labels.len());
        for &l in labels {
            keep.push(self.index_of(l).ok_or_else(|| Error::Precondition(format!("point {l} not in the space")))?);
        }
        keep.sort_unstable();
        keep.dedup();
        let mut out = CoarseSpace::new(keep.iter().map(|&i| self.points[i]));
        for (name, g) in &self.gauges {
            out.gauges.insert(name.clone(), g.restrict(&keep));
        }
        Ok(out)
    }
}

/// `{(g, h) | r(g) = r(h), g⁻¹h ∈ K}` on the arrows of `G`.
pub fn gauge_from(g: &Groupoid, k: &ArrowSet) -> Result<Gauge> {
    crate::dad::require_normal(g, k, "K")?;
    let mut out = Gauge::diagonal(g.n_arrows());
    for x in 0..g.n_units() as u32 {
        let fib = g.range_fiber(x);
        fill_fiber(g, k, fib, |i, j| {
            out.rows[fib[i as usize] as usize].insert(fib[j as usize] as usize);
        });
    }
    Ok(out)
}

fn fill_fiber(g: &Groupoid, k: &ArrowSet, fiber: &[u32], mut put: impl FnMut(u32, u32)) {
    for (i, &a) in fiber.iter().enumerate() {
        let ai = g.inv(a);
        for (j, &b) in fiber.iter().enumerate() {
            if g.compose(ai, b).is_some_and(|c| k.contains(c)) {
                put(i as u32, j as u32);
            }
        }
    }
}

/// All arrows of `G` with the gauges `gauge_from(K)` for each named set.
pub fn arrow_space(g: &Groupoid, sets: &[(&str, &ArrowSet)]) -> Result<CoarseSpace> {
    let mut space = CoarseSpace::new(0..g.n_arrows() as u32);
    for &(name, k) in sets {
        space.add_gauge(name, gauge_from(g, k)?)?;
    }
    Ok(space)
}

/// The range fiber `G^x` with the restrictions of `gauge_from(K)`.
pub fn fiber(g: &Groupoid, x: u32, sets: &[(&str, &ArrowSet)]) -> Result<CoarseSpace> {
    if x as usize >= g.n_units() {
        return Err(Error::Precondition(format!("unit {x} out of range")));
    }
    subset_space(g, g.range_fiber(x), sets)
}

/// Points `arrows` (all with one range) with the gauges induced by each set.
pub(crate) fn subset_space(g: &Groupoid, arrows: &[u32], sets: &[(&str, &ArrowSet)]) -> Result<CoarseSpace> {
    let mut space = CoarseSpace::new(arrows.iter().copied());
    for &(name, k) in sets {
        crate::dad::require_normal(g, k, name)?;
        let mut gauge = Gauge::diagonal(space.len());
        fill_fiber(g, k, space.points(), |i, j| {
            gauge.rows[i as usize].insert(j as usize);
        });
        space.add_gauge(name, gauge)?;
    }
    Ok(space)
}

/// `𝒰 = 𝒰_0 ⊔ … ⊔ 𝒰_d`, each family a list of members, each member a list of point labels.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub families: Vec<Vec<Vec<u32>>>,
}

impl Decomposition {
    pub fn d(&self) -> usize {
        self.families.len().saturating_sub(1)
    }

    /// Families sorted internally: members sorted, member lists ordered by first point.
    pub fn canonical(mut self) -> Self {
        for fam in &mut self.families {
            for m in fam.iter_mut() {
                m.sort_unstable();
                m.dedup();
            }
            fam.retain(|m| !m.is_empty());
            fam.sort();
        }
        self
    }
}

/// Outcome of checking a decomposition; `holds()` is the verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsdimVerdict {
    pub covers: bool,
    /// `(family, member)` of the first member that is not `F`-bounded.
    pub unbounded: Option<(usize, usize)>,
    /// `(family, member, member)` of the first pair that is not `E`-separated.
    pub unseparated: Option<(usize, usize, usize)>,
}

impl AsdimVerdict {
    pub fn holds(&self) -> bool {
        self.covers && self.unbounded.is_none() && self.unseparated.is_none()
    }
}

/// Does the decomposition cover `S` with `F`-bounded members and `E`-separated families?
pub fn ef_asdim_check(s: &CoarseSpace, e: &Gauge, f: &Gauge, decomposition: &Decomposition) -> Result<AsdimVerdict> {
    if e.len() != s.len() || f.len() != s.len() {
        return Err(Error::Precondition("gauge size differs from the space".into()));
    }
    let mut covered = FixedBitSet::with_capacity(s.len());
    let mut fams: Vec<Vec<Vec<usize>>> = Vec::with_capacity(decomposition.families.len());
    for fam in &decomposition.families {
        let mut members = Vec::with_capacity(fam.len());
        for m in fam {
            let mut idx = Vec::with_capacity(m.len());
            for &p in m {
                let i = s.index_of(p).ok_or_else(|| Error::Precondition(format!("point {p} not in the space")))?;
                covered.insert(i);
                idx.push(i);
            }
            members.push(idx);
        }
        fams.push(members);
    }
    let mut verdict = AsdimVerdict { covers: covered.count_ones(..) == s.len(), unbounded: None, unseparated: None };
    'bounded: for (fi, fam) in fams.iter().enumerate() {
        for (mi, m) in fam.iter().enumerate() {
            if m.iter().any(|&i| m.iter().any(|&j| !f.contains(i, j))) {
                verdict.unbounded = Some((fi, mi));
                break 'bounded;
            }
        }
    }
    'separated: for (fi, fam) in fams.iter().enumerate() {
        let sets: Vec<FixedBitSet> = fam
            .iter()
            .map(|m| {
                let mut b = FixedBitSet::with_capacity(s.len());
                m.iter().for_each(|&i| b.insert(i));
                b
            })
            .collect();
        for (a, ma) in fam.iter().enumerate() {
            for b in a + 1..fam.len() {
                if ma.iter().any(|&i| !e.row(i).is_disjoint(&sets[b])) {
                    verdict.unseparated = Some((fi, a, b));
                    break 'separated;
                }
            }
        }
    }
    Ok(verdict)
}

struct AsdimProblem<'a> {
    e: &'a Gauge,
    f: &'a Gauge,
    items: Vec<u32>,
}

impl AsdimProblem<'_> {
    /// `E`-component of `start` inside `members ∪ {start}`.
    fn component(&self, members: &FixedBitSet, start: usize) -> FixedBitSet {
        let n = self.e.len();
        let mut seen = FixedBitSet::with_capacity(n);
        seen.insert(start);
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in self.e.row(i).ones() {
                if members.contains(j) && !seen.put(j) {
                    stack.push(j);
                }
            }
        }
        seen
    }
}

impl Colouring for AsdimProblem<'_> {
    fn items(&self) -> &[u32] {
        &self.items
    }

    fn universe(&self) -> usize {
        self.e.len()
    }

    fn admits(&self, members: &FixedBitSet, item: u32) -> bool {
        // Members of one colour are the E-components of its class; only the
        // component of the new point changes.
        let comp = self.component(members, item as usize);
        comp.ones().all(|i| comp.is_subset(self.f.row(i)))
    }
}

/// Least `d ≤ d_max` with an `(E, F)` decomposition of `S`.
///
/// Points are coloured by family; the members of a family are the
/// `E`-components of its points, which is forced by separation. Shrinking
/// members keeps them bounded, so partitions suffice. Exact mode is used up
/// to [`EXACT_POINTS`] points, greedy beyond.
pub fn ef_asdim_search(s: &CoarseSpace, e: &Gauge, f: &Gauge, d_max: usize, mode: SearchMode) -> Result<Option<Decomposition>> {
    if e.len() != s.len() || f.len() != s.len() {
        return Err(Error::Precondition("gauge size differs from the space".into()));
    }
    if d_max >= u8::MAX as usize {
        return Err(Error::Precondition(format!("d_max {d_max} is too large")));
    }
    let mode = effective_mode(s.len(), mode);
    let problem = AsdimProblem { e, f, items: (0..s.len() as u32).collect() };
    for d in 0..=d_max {
        if let Some(assignment) = colour(&problem, d + 1, mode) {
            let mut classes = vec![FixedBitSet::with_capacity(s.len()); d + 1];
            for (i, &c) in assignment.iter().enumerate() {
                classes[c as usize].insert(i);
            }
            let families = classes.iter().map(|class| problem.members(class, s)).collect();
            let out = Decomposition { families }.canonical();
            debug_assert!(ef_asdim_check(s, e, f, &out)?.holds());
            return Ok(Some(out));
        }
    }
    Ok(None)
}

/// The search mode actually used for `n` points.
pub fn effective_mode(n: usize, mode: SearchMode) -> SearchMode {
    if n > EXACT_POINTS {
        SearchMode::Greedy
    } else {
        mode
    }
}

impl AsdimProblem<'_> {
    fn members(&self, class: &FixedBitSet, s: &CoarseSpace) -> Vec<Vec<u32>> {
        let mut left = class.clone();
        let mut out = Vec::new();
        while let Some(i) = left.minimum() {
            let comp = self.component(class, i);
            left.difference_with(&comp);
            out.push(comp.ones().map(|j| s.points()[j]).collect());
        }
        out
    }
}
