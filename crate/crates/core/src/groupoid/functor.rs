use super::Groupoid;
use crate::error::{Error, Result};
use crate::sets::{ArrowSet, UnitSet};

/// A groupoid homomorphism `π: G → H`, stored as its arrow map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functor {
    source: u64,
    target: u64,
    target_units: usize,
    target_arrows: usize,
    map: Vec<u32>,
}

impl Functor {
    /// Checks that `map` preserves units, endpoints, inverses and composition.
    pub fn new(g: &Groupoid, h: &Groupoid, map: Vec<u32>) -> Result<Self> {
        if map.len() != g.n_arrows() {
            return Err(Error::NotFunctor(format!("map has {} entries for {} arrows", map.len(), g.n_arrows())));
        }
        if let Some(a) = map.iter().position(|&b| b as usize >= h.n_arrows()) {
            return Err(Error::NotFunctor(format!("arrow {a} maps outside the target")));
        }
        for u in 0..g.n_units() as u32 {
            if !h.is_unit(map[u as usize]) {
                return Err(Error::NotFunctor(format!("unit {u} maps to non-unit {}", map[u as usize])));
            }
        }
        for a in 0..g.n_arrows() as u32 {
            let pa = map[a as usize];
            if h.src(pa) != map[g.src(a) as usize] || h.rng(pa) != map[g.rng(a) as usize] {
                return Err(Error::NotFunctor(format!("arrow {a}: endpoints not preserved")));
            }
            if map[g.inv(a) as usize] != h.inv(pa) {
                return Err(Error::NotFunctor(format!("arrow {a}: inverse not preserved")));
            }
            for &b in g.range_fiber(g.src(a)) {
                let ab = g.comp_unchecked(a, b);
                if h.compose(pa, map[b as usize]) != Some(map[ab as usize]) {
                    return Err(Error::NotFunctor(format!("pair ({a}, {b}): composition not preserved")));
                }
            }
        }
        Ok(Self {
            source: g.fingerprint(),
            target: h.fingerprint(),
            target_units: h.n_units(),
            target_arrows: h.n_arrows(),
            map,
        })
    }

    pub fn identity(g: &Groupoid) -> Self {
        Self::new(g, g, (0..g.n_arrows() as u32).collect()).expect("identity is a functor")
    }

    /// Inclusion `G|_A → G` of a restriction.
    pub fn inclusion(parent: &Groupoid, r: &super::Restriction) -> Result<Self> {
        let map = (0..r.groupoid.n_arrows() as u32).map(|a| r.arrow_to_parent(a)).collect();
        Self::new(&r.groupoid, parent, map)
    }

    pub fn apply(&self, a: u32) -> u32 {
        self.map[a as usize]
    }

    pub fn source_fingerprint(&self) -> u64 {
        self.source
    }

    pub fn target_fingerprint(&self) -> u64 {
        self.target
    }

    pub fn image(&self, g: &Groupoid, h: &Groupoid, set: &ArrowSet) -> ArrowSet {
        self.expect_pair(g, h);
        g.expect_arrows(set);
        h.arrow_set(set.iter().map(|a| self.apply(a)))
    }

    pub fn preimage(&self, g: &Groupoid, h: &Groupoid, set: &ArrowSet) -> ArrowSet {
        self.expect_pair(g, h);
        h.expect_arrows(set);
        g.arrow_set((0..g.n_arrows() as u32).filter(|&a| set.contains(self.apply(a))))
    }

    /// `π⁻¹(U) ∩ G⁰`.
    pub fn unit_preimage(&self, g: &Groupoid, h: &Groupoid, units: &UnitSet) -> UnitSet {
        self.expect_pair(g, h);
        h.expect_units(units);
        g.unit_set((0..g.n_units() as u32).filter(|&u| units.contains(self.apply(u))))
    }

    pub fn unit_image(&self, g: &Groupoid, h: &Groupoid, units: &UnitSet) -> UnitSet {
        self.expect_pair(g, h);
        g.expect_units(units);
        h.unit_set(units.iter().map(|u| self.apply(u)))
    }

    #[track_caller]
    fn expect_pair(&self, g: &Groupoid, h: &Groupoid) {
        assert!(
            g.fingerprint() == self.source
                && h.fingerprint() == self.target
                && h.n_units() == self.target_units
                && h.n_arrows() == self.target_arrows,
            "functor applied to the wrong groupoids"
        );
    }
}
