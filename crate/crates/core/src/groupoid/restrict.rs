use super::Groupoid;
use crate::error::Result;
use crate::sets::{ArrowSet, UnitSet};

/// `G|_A` re-indexed, with back-maps to the parent's ids.
///
/// Child units are the members of `A` in increasing order; child non-unit
/// arrows follow in increasing parent id.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub groupoid: Groupoid,
    parent: u64,
    parent_units: usize,
    parent_arrows: usize,
    unit_back: Vec<u32>,
    arrow_back: Vec<u32>,
    unit_fwd: Vec<Option<u32>>,
    arrow_fwd: Vec<Option<u32>>,
}

impl Groupoid {
    /// `G|_A = {g | s(g), r(g) ∈ A}`.
    pub fn restrict(&self, units: &UnitSet) -> Result<Restriction> {
        self.check_units(units)?;
        let unit_back: Vec<u32> = units.to_vec();
        let mut unit_fwd = vec![None; self.n_units()];
        for (i, &u) in unit_back.iter().enumerate() {
            unit_fwd[u as usize] = Some(i as u32);
        }
        let mut arrow_back: Vec<u32> = unit_back.clone();
        for a in self.n_units() as u32..self.n_arrows() as u32 {
            if units.contains(self.src(a)) && units.contains(self.rng(a)) {
                arrow_back.push(a);
            }
        }
        let mut arrow_fwd = vec![None; self.n_arrows()];
        for (i, &a) in arrow_back.iter().enumerate() {
            arrow_fwd[a as usize] = Some(i as u32);
        }
        let fwd = |a: u32| arrow_fwd[a as usize].expect("closed under restriction");
        let endpoints: Vec<(u32, u32)> = arrow_back
            .iter()
            .map(|&a| (unit_fwd[self.src(a) as usize].unwrap(), unit_fwd[self.rng(a) as usize].unwrap()))
            .collect();
        let groupoid = Groupoid::from_fn(
            unit_back.len(),
            &endpoints,
            |i| fwd(self.inv(arrow_back[i as usize])),
            |i, j| fwd(self.comp_unchecked(arrow_back[i as usize], arrow_back[j as usize])),
        )?;
        Ok(Restriction {
            groupoid,
            parent: self.fingerprint(),
            parent_units: self.n_units(),
            parent_arrows: self.n_arrows(),
            unit_back,
            arrow_back,
            unit_fwd,
            arrow_fwd,
        })
    }
}

impl Restriction {
    pub fn parent_fingerprint(&self) -> u64 {
        self.parent
    }

    /// Parent id of a child arrow.
    pub fn arrow_to_parent(&self, a: u32) -> u32 {
        self.arrow_back[a as usize]
    }

    pub fn unit_to_parent(&self, u: u32) -> u32 {
        self.unit_back[u as usize]
    }

    pub fn arrow_from_parent(&self, a: u32) -> Option<u32> {
        self.arrow_fwd.get(a as usize).copied().flatten()
    }

    pub fn unit_from_parent(&self, u: u32) -> Option<u32> {
        self.unit_fwd.get(u as usize).copied().flatten()
    }

    /// Parent set intersected with the restriction, in child ids.
    pub fn pull_arrows(&self, set: &ArrowSet) -> ArrowSet {
        assert!(set.owner() == self.parent && set.universe() == self.parent_arrows, "set is not over the parent");
        self.groupoid.arrow_set(set.iter().filter_map(|a| self.arrow_from_parent(a)))
    }

    pub fn pull_units(&self, set: &UnitSet) -> UnitSet {
        assert!(set.owner() == self.parent && set.universe() == self.parent_units, "set is not over the parent");
        self.groupoid.unit_set(set.iter().filter_map(|u| self.unit_from_parent(u)))
    }

    /// Child set in parent ids. `parent` supplies the id universe.
    pub fn push_arrows(&self, parent: &Groupoid, set: &ArrowSet) -> ArrowSet {
        assert_eq!(parent.fingerprint(), self.parent);
        self.groupoid.expect_arrows(set);
        parent.arrow_set(set.iter().map(|a| self.arrow_to_parent(a)))
    }

    pub fn push_units(&self, parent: &Groupoid, set: &UnitSet) -> UnitSet {
        assert_eq!(parent.fingerprint(), self.parent);
        self.groupoid.expect_units(set);
        parent.unit_set(set.iter().map(|u| self.unit_to_parent(u)))
    }
}
