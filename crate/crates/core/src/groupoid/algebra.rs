use petgraph::unionfind::UnionFind;

use super::Groupoid;
use crate::error::{Error, Result};
use crate::sets::{ArrowSet, UnitSet};

impl Groupoid {
    /// `{a·b | a ∈ A, b ∈ B, src(a) = rng(b)}`.
    pub fn compose_sets(&self, a: &ArrowSet, b: &ArrowSet) -> Result<ArrowSet> {
        self.check_arrows(a)?;
        self.check_arrows(b)?;
        let mut out = self.empty_arrows();
        for x in a.iter() {
            for &y in self.range_fiber(self.src(x)) {
                if b.contains(y) {
                    out.insert(self.comp_unchecked(x, y));
                }
            }
        }
        Ok(out)
    }

    /// Product of a chain of sets, left to right.
    pub fn compose_chain(&self, sets: &[&ArrowSet]) -> Result<ArrowSet> {
        let (first, rest) = sets.split_first().ok_or_else(|| Error::Precondition("empty product".into()))?;
        let mut acc = (*first).clone();
        for s in rest {
            acc = self.compose_sets(&acc, s)?;
        }
        Ok(acc)
    }

    pub fn inverse_set(&self, k: &ArrowSet) -> ArrowSet {
        self.expect_arrows(k);
        self.arrow_set(k.iter().map(|a| self.inv(a)))
    }

    /// Identity arrows at `s(K) ∪ r(K)`.
    pub fn endpoint_identities(&self, k: &ArrowSet) -> ArrowSet {
        self.arrow_set(k.iter().flat_map(|a| [self.src(a), self.rng(a)]))
    }

    /// `s(K) ∪ r(K)` as a unit set.
    pub fn endpoints(&self, k: &ArrowSet) -> UnitSet {
        self.expect_arrows(k);
        self.unit_set(k.iter().flat_map(|a| [self.src(a), self.rng(a)]))
    }

    /// Smallest superset of `K` with `K = K ∪ K⁻¹ ∪ s(K) ∪ r(K)` and `G⁰ ⊆ K`.
    pub fn symmetrize(&self, k: &ArrowSet) -> ArrowSet {
        let mut out = k.union(&self.inverse_set(k));
        out.union_with(&self.unit_arrows());
        out
    }

    pub fn is_oc_normal(&self, k: &ArrowSet) -> bool {
        self.owns_arrows(k) && self.symmetrize(k) == *k
    }

    /// `K⁰ = G⁰`, `Kⁿ⁺¹ = K·Kⁿ`.
    pub fn power(&self, k: &ArrowSet, n: usize) -> ArrowSet {
        self.expect_arrows(k);
        let mut acc = self.unit_arrows();
        for _ in 0..n {
            let next = self.compose_sets(k, &acc).expect("owner checked");
            if next == acc {
                break;
            }
            acc = next;
        }
        acc
    }

    /// `K·U`: ranges of arrows of `K` whose source lies in `U`.
    pub fn saturate(&self, k: &ArrowSet, units: &UnitSet) -> UnitSet {
        self.expect_arrows(k);
        self.expect_units(units);
        let mut out = self.empty_units();
        for u in units.iter() {
            for &a in self.source_fiber(u) {
                if k.contains(a) {
                    out.insert(self.rng(a));
                }
            }
        }
        out
    }

    /// Arrows of `K` with both endpoints in `U`, i.e. `K ∩ G|_U`.
    pub fn restrict_set(&self, k: &ArrowSet, units: &UnitSet) -> ArrowSet {
        self.expect_arrows(k);
        self.expect_units(units);
        self.arrow_set(k.iter().filter(|&a| units.contains(self.src(a)) && units.contains(self.rng(a))))
    }

    /// Orbit partition of the unit space, blocks ordered by their least unit.
    pub fn orbits(&self) -> Vec<Vec<u32>> {
        self.orbits_of(&self.all_arrows())
    }

    /// Orbits of the units touched by `h` under the arrows of `h`.
    pub fn orbits_of(&self, h: &ArrowSet) -> Vec<Vec<u32>> {
        self.expect_arrows(h);
        let mut uf = UnionFind::<u32>::new(self.n_units);
        let mut touched = self.empty_units();
        for a in h.iter() {
            touched.insert(self.src(a));
            touched.insert(self.rng(a));
            uf.union(self.src(a), self.rng(a));
        }
        let mut block_of = vec![usize::MAX; self.n_units];
        let mut blocks: Vec<Vec<u32>> = Vec::new();
        for u in touched.iter() {
            let root = uf.find_mut(u) as usize;
            if block_of[root] == usize::MAX {
                block_of[root] = blocks.len();
                blocks.push(Vec::new());
            }
            blocks[block_of[root]].push(u);
        }
        blocks
    }

    /// True iff every arrow with `src = rng` is an identity.
    pub fn is_principal(&self) -> bool {
        self.isotropy_arrow().is_none()
    }

    /// A non-identity arrow with `src = rng`, if any.
    pub fn isotropy_arrow(&self) -> Option<u32> {
        (self.n_units as u32..self.n_arrows() as u32).find(|&a| self.src(a) == self.rng(a))
    }

    /// One unit per orbit (the least id of each orbit).
    pub fn fundamental_domain(&self) -> Result<UnitSet> {
        if let Some(a) = self.isotropy_arrow() {
            return Err(Error::NotPrincipal(a));
        }
        Ok(self.unit_set(self.orbits().iter().map(|b| b[0])))
    }
}
