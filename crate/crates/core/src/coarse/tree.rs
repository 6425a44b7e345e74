use std::collections::{BTreeMap, VecDeque};

use super::{ef_asdim_check, gauge_from, AsdimVerdict, CoarseSpace, Decomposition};
use crate::error::{Error, Result};
use crate::groupoid::Groupoid;
use crate::sets::ArrowSet;

/// A symmetric generating set `Q ⊆ G ∖ G⁰` with word lengths.
///
/// Words are read from the range side: `g = q_1 ⋯ q_m` with `r(q_1) = r(g)`.
/// `parent(g) = q_1 ⋯ q_{m−1}` along a shortest word.
#[derive(Clone, Debug)]
pub struct Graphing {
    q: ArrowSet,
    length: Vec<u32>,
    parent: Vec<u32>,
    /// An arrow with two reduced factorizations, if any.
    conflict: Option<u32>,
}

impl Graphing {
    /// Checks `Q = Q⁻¹`, `Q ∩ G⁰ = ∅` and that `Q` generates `G`; records
    /// whether reduced factorizations are unique.
    pub fn new(g: &Groupoid, q: &ArrowSet) -> Result<Self> {
        g.check_arrows(q)?;
        if let Some(a) = q.iter().find(|&a| g.is_unit(a)) {
            return Err(Error::Precondition(format!("graphing contains the unit {a}")));
        }
        if let Some(a) = q.iter().find(|&a| !q.contains(g.inv(a))) {
            return Err(Error::Precondition(format!("graphing is not symmetric at arrow {a}")));
        }
        let n = g.n_arrows();
        let mut length = vec![u32::MAX; n];
        let mut parent = vec![u32::MAX; n];
        let mut queue = VecDeque::new();
        for x in 0..g.n_units() as u32 {
            length[x as usize] = 0;
            parent[x as usize] = x;
            queue.push_back(x);
        }
        while let Some(a) = queue.pop_front() {
            for &b in g.range_fiber(g.src(a)) {
                if !q.contains(b) {
                    continue;
                }
                let c = g.compose(a, b).expect("composable");
                if length[c as usize] == u32::MAX {
                    length[c as usize] = length[a as usize] + 1;
                    parent[c as usize] = a;
                    queue.push_back(c);
                }
            }
        }
        if let Some(a) = length.iter().position(|&l| l == u32::MAX) {
            return Err(Error::Precondition(format!("graphing does not generate arrow {a}")));
        }
        let mut out = Self { q: q.clone(), length, parent, conflict: None };
        out.conflict = out.find_conflict(g);
        Ok(out)
    }

    /// Every reduced extension of a shortest word must land one level further
    /// down the shortest-word tree, otherwise two reduced words meet.
    fn find_conflict(&self, g: &Groupoid) -> Option<u32> {
        for a in 0..g.n_arrows() as u32 {
            let back = self.last_letter(g, a).map(|l| g.inv(l));
            for &b in g.range_fiber(g.src(a)) {
                if !self.q.contains(b) || Some(b) == back {
                    continue;
                }
                let c = g.compose(a, b).expect("composable");
                if self.length[c as usize] != self.length[a as usize] + 1 || self.parent[c as usize] != a {
                    return Some(c);
                }
            }
        }
        None
    }

    /// [`Graphing::new`] that also requires unique reduced factorizations.
    pub fn treeable(g: &Groupoid, q: &ArrowSet) -> Result<Self> {
        let out = Self::new(g, q)?;
        if let Some(c) = out.conflict {
            return Err(Error::NotTreeable(format!("arrow {c} has two reduced factorizations")));
        }
        Ok(out)
    }

    pub fn is_treeable(&self) -> bool {
        self.conflict.is_none()
    }

    pub fn q(&self) -> &ArrowSet {
        &self.q
    }

    /// `ℓ(g)`.
    pub fn length(&self, a: u32) -> u32 {
        self.length[a as usize]
    }

    pub fn max_length(&self) -> u32 {
        self.length.iter().copied().max().unwrap_or(0)
    }

    fn last_letter(&self, g: &Groupoid, a: u32) -> Option<u32> {
        if g.is_unit(a) {
            return None;
        }
        let p = self.parent[a as usize];
        g.compose(g.inv(p), a)
    }

    /// `q_1 ⋯ q_j` for `j ≤ ℓ(g)`.
    pub fn prefix(&self, a: u32, j: u32) -> u32 {
        let mut a = a;
        for _ in j..self.length(a) {
            a = self.parent[a as usize];
        }
        a
    }

    /// `B_N = {g | ℓ(g) ≤ N}`.
    pub fn ball(&self, g: &Groupoid, n: u32) -> ArrowSet {
        g.arrow_set((0..g.n_arrows() as u32).filter(|&a| self.length(a) <= n))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeableClass {
    pub family: usize,
    pub annulus: u32,
    /// Common range of the arrows.
    pub range: u32,
    pub arrows: Vec<u32>,
    /// `max ℓ(g⁻¹h)` over the class.
    pub diameter: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeableCertificate {
    pub n: u32,
    pub max_diameter: u32,
    /// Least `ℓ(g⁻¹h)` between distinct classes of one annulus.
    pub min_gap_within: Option<u32>,
    /// Least `ℓ(g⁻¹h)` between classes of one family in different annuli.
    pub min_gap_across: Option<u32>,
    /// The decomposition against `E = B_{N−1}`, `F = B_{4N}`.
    pub asdim: AsdimVerdict,
}

impl TreeableCertificate {
    pub fn bounded(&self) -> bool {
        self.max_diameter <= 4 * self.n
    }

    /// Least gap between distinct classes of one family.
    pub fn min_gap(&self) -> Option<u32> {
        match (self.min_gap_within, self.min_gap_across) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    /// Diameters at most `4N`, annulus classes `2N` apart, families `N` apart.
    pub fn holds(&self) -> bool {
        self.bounded()
            && self.min_gap_within.is_none_or(|d| d >= 2 * self.n)
            && self.min_gap_across.is_none_or(|d| d >= self.n)
            && self.asdim.holds()
    }
}

#[derive(Clone, Debug)]
pub struct TreeableCover {
    pub classes: Vec<TreeableClass>,
    pub decomposition: Decomposition,
    pub certificate: TreeableCertificate,
}

/// Two families of annulus classes: `A_0` and the even annuli, `A_1` and the
/// odd annuli. For `k ≥ 2` the classes of `A_k` share the first `N(k−1)`
/// letters; `A_0`, `A_1` are split only by range.
pub fn treeable_cover(g: &Groupoid, graphing: &Graphing, n: u32) -> Result<TreeableCover> {
    if n == 0 {
        return Err(Error::Precondition("N must be positive".into()));
    }
    if let Some(c) = graphing.conflict {
        return Err(Error::NotTreeable(format!("arrow {c} has two reduced factorizations")));
    }
    let top = graphing.max_length();
    let mut classes = Vec::new();
    for x in 0..g.n_units() as u32 {
        let fiber = g.range_fiber(x);
        for k in 0..=top / n {
            let mut groups: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
            for &a in fiber {
                let l = graphing.length(a);
                if k * n <= l && l <= (k + 1) * n {
                    let key = if k >= 2 { graphing.prefix(a, n * (k - 1)) } else { x };
                    groups.entry(key).or_default().push(a);
                }
            }
            for arrows in groups.into_values() {
                let diameter = max_distance(g, graphing, &arrows, &arrows);
                classes.push(TreeableClass { family: (k % 2) as usize, annulus: k, range: x, arrows, diameter });
            }
        }
    }

    let mut min_gap_within: Option<u32> = None;
    let mut min_gap_across: Option<u32> = None;
    for (i, a) in classes.iter().enumerate() {
        for b in &classes[i + 1..] {
            if a.family != b.family || a.range != b.range {
                continue;
            }
            let gap = min_distance(g, graphing, &a.arrows, &b.arrows);
            let slot = if a.annulus == b.annulus { &mut min_gap_within } else { &mut min_gap_across };
            *slot = Some(slot.map_or(gap, |s| s.min(gap)));
        }
    }

    let mut families = vec![Vec::new(), Vec::new()];
    for c in &classes {
        families[c.family].push(c.arrows.clone());
    }
    let decomposition = Decomposition { families };
    let space = CoarseSpace::new(0..g.n_arrows() as u32);
    let e = gauge_from(g, &graphing.ball(g, n - 1))?;
    let f = gauge_from(g, &graphing.ball(g, 4 * n))?;
    let asdim = ef_asdim_check(&space, &e, &f, &decomposition)?;
    let certificate = TreeableCertificate {
        n,
        max_diameter: classes.iter().map(|c| c.diameter).max().unwrap_or(0),
        min_gap_within,
        min_gap_across,
        asdim,
    };
    Ok(TreeableCover { classes, decomposition, certificate })
}

fn distance(g: &Groupoid, graphing: &Graphing, a: u32, b: u32) -> u32 {
    graphing.length(g.compose(g.inv(a), b).expect("same range"))
}

fn max_distance(g: &Groupoid, graphing: &Graphing, xs: &[u32], ys: &[u32]) -> u32 {
    xs.iter().flat_map(|&a| ys.iter().map(move |&b| distance(g, graphing, a, b))).max().unwrap_or(0)
}

fn min_distance(g: &Groupoid, graphing: &Graphing, xs: &[u32], ys: &[u32]) -> u32 {
    xs.iter().flat_map(|&a| ys.iter().map(move |&b| distance(g, graphing, a, b))).min().unwrap_or(u32::MAX)
}
