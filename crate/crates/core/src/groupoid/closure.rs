//! Subgroupoid generated by `K ∩ G|_U`.
//!
//! Within one connected component of the seed graph, fix a root unit and a
//! spanning tree of seed arrows. Every element of the generated subgroupoid
//! then has the form `p_w · i · p_v⁻¹` with tree paths `p_v, p_w` out of the
//! root and `i` in the isotropy subgroup at the root generated by the
//! Schreier loops of the seed arrows. This enumerates the fixpoint of the
//! seed under composition and inversion directly.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

use super::Groupoid;
use crate::sets::{ArrowSet, UnitSet};

struct SeedGraph {
    /// Seed arrows incident to each unit (both directions).
    incident: Vec<Vec<u32>>,
    touched: FixedBitSet,
}

impl Groupoid {
    /// `⟨K ∩ G|_U⟩`.
    pub fn generated(&self, k: &ArrowSet, units: &UnitSet) -> ArrowSet {
        self.expect_arrows(k);
        self.expect_units(units);
        let graph = self.seed_graph(k, units);
        let mut out = FixedBitSet::with_capacity(self.n_arrows());
        let mut visited = FixedBitSet::with_capacity(self.n_units());
        let incident = |v: u32, buf: &mut Vec<u32>| buf.extend_from_slice(&graph.incident[v as usize]);
        for root in graph.touched.ones() {
            if !visited.contains(root) {
                self.close_component(&incident, root as u32, &mut visited, &mut out);
            }
        }
        ArrowSet::from_bits(self.fingerprint, out)
    }

    /// The part of `⟨K ∩ G|_U⟩` living on the seed component that contains `start`.
    /// Empty when `start` is not touched by the seed.
    pub fn generated_component(&self, k: &ArrowSet, units: &UnitSet, start: u32) -> ArrowSet {
        self.expect_arrows(k);
        self.expect_units(units);
        let bits = if units.contains(start) {
            self.component_within(k, &|v| units.contains(v), start)
        } else {
            FixedBitSet::with_capacity(self.n_arrows())
        };
        ArrowSet::from_bits(self.fingerprint, bits)
    }

    /// Component of `start` in `⟨K ∩ G|_U⟩` with `U` given by a membership test.
    pub(crate) fn component_within(&self, k: &ArrowSet, member: &dyn Fn(u32) -> bool, start: u32) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.n_arrows());
        let incident = |v: u32, buf: &mut Vec<u32>| {
            buf.extend(self.source_fiber(v).iter().copied().filter(|&a| k.contains(a) && member(self.rng(a))));
            buf.extend(
                self.range_fiber(v).iter().copied().filter(|&a| k.contains(a) && self.src(a) != v && member(self.src(a))),
            );
        };
        let mut probe = Vec::new();
        incident(start, &mut probe);
        if !probe.is_empty() {
            let mut visited = FixedBitSet::with_capacity(self.n_units());
            self.close_component(&incident, start, &mut visited, &mut out);
        }
        out
    }

    /// `⟨S⟩` for an arbitrary seed set.
    pub fn generated_by(&self, seed: &ArrowSet) -> ArrowSet {
        self.generated(seed, &self.all_units())
    }

    /// True iff `h` is closed under inversion and under composition of composable pairs.
    pub fn is_subgroupoid(&self, h: &ArrowSet) -> bool {
        self.expect_arrows(h);
        h.iter().all(|a| {
            h.contains(self.inv(a))
                && self.range_fiber(self.src(a)).iter().all(|&b| !h.contains(b) || h.contains(self.comp_unchecked(a, b)))
        })
    }

    fn seed_graph(&self, k: &ArrowSet, units: &UnitSet) -> SeedGraph {
        let mut incident = vec![Vec::new(); self.n_units()];
        let mut touched = FixedBitSet::with_capacity(self.n_units());
        for a in k.iter() {
            let (s, r) = (self.src(a), self.rng(a));
            if units.contains(s) && units.contains(r) {
                incident[s as usize].push(a);
                if r != s {
                    incident[r as usize].push(a);
                }
                touched.insert(s as usize);
                touched.insert(r as usize);
            }
        }
        SeedGraph { incident, touched }
    }

    fn close_component(
        &self,
        incident: &dyn Fn(u32, &mut Vec<u32>),
        root: u32,
        visited: &mut FixedBitSet,
        out: &mut FixedBitSet,
    ) {
        // path[v]: arrow from root to v along the spanning tree.
        let mut path: Vec<(u32, u32)> = vec![(root, root)];
        let mut path_of = std::collections::HashMap::new();
        path_of.insert(root, root);
        visited.insert(root as usize);
        let mut queue = VecDeque::from([root]);
        let mut component_arrows = Vec::new();
        let mut around = Vec::new();
        while let Some(v) = queue.pop_front() {
            let pv = path_of[&v];
            around.clear();
            incident(v, &mut around);
            for &a in &around {
                if self.src(a) == v {
                    component_arrows.push(a);
                }
                let (w, step) = if self.src(a) == v { (self.rng(a), a) } else { (self.src(a), self.inv(a)) };
                if !visited.contains(w as usize) {
                    visited.insert(w as usize);
                    let pw = self.comp_unchecked(step, pv);
                    path_of.insert(w, pw);
                    path.push((w, pw));
                    queue.push_back(w);
                }
            }
        }

        // Schreier loops at the root.
        let mut generators = Vec::new();
        for &a in &component_arrows {
            let p_src = path_of[&self.src(a)];
            let p_rng = path_of[&self.rng(a)];
            let lp = self.comp_unchecked(self.inv(p_rng), self.comp_unchecked(a, p_src));
            if lp != root && !generators.contains(&lp) {
                generators.push(lp);
            }
        }
        let mut isotropy = vec![root];
        let mut seen = FixedBitSet::with_capacity(self.n_arrows());
        seen.insert(root as usize);
        let mut i = 0;
        while i < isotropy.len() {
            let x = isotropy[i];
            for &g in &generators {
                let y = self.comp_unchecked(g, x);
                if !seen.contains(y as usize) {
                    seen.insert(y as usize);
                    isotropy.push(y);
                }
            }
            i += 1;
        }

        for &(_, pv) in &path {
            let pv_inv = self.inv(pv);
            for &iso in &isotropy {
                let t = self.comp_unchecked(iso, pv_inv);
                for &(_, pw) in &path {
                    out.insert(self.comp_unchecked(pw, t) as usize);
                }
            }
        }
    }
}
