//! Finite combinatorial model of an ample étale groupoid.
//!
//! Arrows are dense ids `0..m`; ids `0..n_units` are the identity arrows, and
//! identity `u` sits at unit `u`. The discrete topology makes every subset
//! open and compact, so "relatively compact" reduces to containment in an
//! explicit bound set.

mod algebra;
mod closure;
mod functor;
mod restrict;
mod validate;

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;

pub use functor::Functor;
pub use restrict::Restriction;
pub use validate::{validate, Axiom, ValidationReport, Violation};

use crate::error::{Error, Result};
use crate::sets::{ArrowSet, UnitSet};

/// Candidate groupoid tables, not yet checked. `comp` lists `[a, b, a·b]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawGroupoid {
    pub n_units: usize,
    pub src: Vec<u32>,
    pub rng: Vec<u32>,
    pub inv: Vec<u32>,
    pub comp: Vec<[u32; 3]>,
}

/// A validated finite groupoid. Immutable after construction.
#[derive(Clone, Debug)]
pub struct Groupoid {
    n_units: usize,
    src: Vec<u32>,
    rng: Vec<u32>,
    inv: Vec<u32>,
    /// Arrows with range `u`, ascending.
    range_fiber: Vec<Vec<u32>>,
    /// Arrows with source `u`, ascending.
    source_fiber: Vec<Vec<u32>>,
    /// Index of arrow `b` inside `range_fiber[rng(b)]`.
    range_pos: Vec<u32>,
    /// Start of arrow `a`'s row in `comp`; the row has `range_fiber[src(a)].len()` entries.
    comp_offset: Vec<usize>,
    comp: Vec<u32>,
    fingerprint: u64,
}

impl PartialEq for Groupoid {
    fn eq(&self, other: &Self) -> bool {
        self.n_units == other.n_units
            && self.src == other.src
            && self.rng == other.rng
            && self.inv == other.inv
            && self.comp == other.comp
    }
}

impl Eq for Groupoid {}

impl Groupoid {
    /// Validates `raw` and builds the dense composition table.
    pub fn from_raw(raw: RawGroupoid) -> Result<Self> {
        let report = validate(&raw);
        if !report.is_clean() {
            return Err(Error::Invalid(report));
        }
        let n = raw.n_units;
        let m = raw.src.len();
        let mut range_fiber = vec![Vec::new(); n];
        let mut source_fiber = vec![Vec::new(); n];
        let mut range_pos = vec![0u32; m];
        for a in 0..m {
            let r = raw.rng[a] as usize;
            range_pos[a] = range_fiber[r].len() as u32;
            range_fiber[r].push(a as u32);
            source_fiber[raw.src[a] as usize].push(a as u32);
        }
        let mut comp_offset = Vec::with_capacity(m);
        let mut total = 0usize;
        for a in 0..m {
            comp_offset.push(total);
            total += range_fiber[raw.src[a] as usize].len();
        }
        let mut comp = vec![u32::MAX; total];
        for &[a, b, c] in &raw.comp {
            comp[comp_offset[a as usize] + range_pos[b as usize] as usize] = c;
        }

        let mut hasher = DefaultHasher::new();
        n.hash(&mut hasher);
        raw.src.hash(&mut hasher);
        raw.rng.hash(&mut hasher);
        raw.inv.hash(&mut hasher);
        comp.hash(&mut hasher);

        Ok(Self {
            n_units: n,
            src: raw.src,
            rng: raw.rng,
            inv: raw.inv,
            range_fiber,
            source_fiber,
            range_pos,
            comp_offset,
            comp,
            fingerprint: hasher.finish(),
        })
    }

    /// Builds a groupoid from endpoint lists and structure maps. `arrows[a]` is
    /// `(src, rng)`; the first `n_units` entries must be the identities.
    pub fn from_fn(
        n_units: usize,
        arrows: &[(u32, u32)],
        inv: impl Fn(u32) -> u32,
        comp: impl Fn(u32, u32) -> u32,
    ) -> Result<Self> {
        let src: Vec<u32> = arrows.iter().map(|p| p.0).collect();
        let rng: Vec<u32> = arrows.iter().map(|p| p.1).collect();
        let inv: Vec<u32> = (0..arrows.len() as u32).map(inv).collect();
        let mut by_rng: Vec<Vec<u32>> = vec![Vec::new(); n_units];
        for (a, &(_, r)) in arrows.iter().enumerate() {
            if (r as usize) < n_units {
                by_rng[r as usize].push(a as u32);
            }
        }
        let mut triples = Vec::new();
        for (a, &(s, _)) in arrows.iter().enumerate() {
            if let Some(row) = by_rng.get(s as usize) {
                for &b in row {
                    triples.push([a as u32, b, comp(a as u32, b)]);
                }
            }
        }
        Self::from_raw(RawGroupoid { n_units, src, rng, inv, comp: triples })
    }

    /// The tables in raw form, with the full composition list.
    pub fn to_raw(&self) -> RawGroupoid {
        let mut triples = Vec::with_capacity(self.comp.len());
        for a in 0..self.n_arrows() as u32 {
            for &b in &self.range_fiber[self.src(a) as usize] {
                triples.push([a, b, self.comp_unchecked(a, b)]);
            }
        }
        RawGroupoid {
            n_units: self.n_units,
            src: self.src.clone(),
            rng: self.rng.clone(),
            inv: self.inv.clone(),
            comp: triples,
        }
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn n_units(&self) -> usize {
        self.n_units
    }

    pub fn n_arrows(&self) -> usize {
        self.src.len()
    }

    pub fn src(&self, a: u32) -> u32 {
        self.src[a as usize]
    }

    pub fn rng(&self, a: u32) -> u32 {
        self.rng[a as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn is_unit(&self, a: u32) -> bool {
        (a as usize) < self.n_units
    }

    /// `a·b`, defined exactly when `src(a) = rng(b)`.
    pub fn compose(&self, a: u32, b: u32) -> Option<u32> {
        (self.src(a) == self.rng(b)).then(|| self.comp_unchecked(a, b))
    }

    pub(crate) fn comp_unchecked(&self, a: u32, b: u32) -> u32 {
        self.comp[self.comp_offset[a as usize] + self.range_pos[b as usize] as usize]
    }

    /// Arrows with range `u`.
    pub fn range_fiber(&self, u: u32) -> &[u32] {
        &self.range_fiber[u as usize]
    }

    /// Arrows with source `u`.
    pub fn source_fiber(&self, u: u32) -> &[u32] {
        &self.source_fiber[u as usize]
    }

    /// Smallest arrow id from `s` to `r`, if any.
    pub fn arrow_between(&self, s: u32, r: u32) -> Option<u32> {
        self.range_fiber[r as usize].iter().copied().find(|&a| self.src(a) == s)
    }

    pub fn empty_arrows(&self) -> ArrowSet {
        ArrowSet::empty(self.fingerprint, self.n_arrows())
    }

    pub fn all_arrows(&self) -> ArrowSet {
        ArrowSet::full(self.fingerprint, self.n_arrows())
    }

    /// G⁰ as an arrow set.
    pub fn unit_arrows(&self) -> ArrowSet {
        let mut bits = FixedBitSet::with_capacity(self.n_arrows());
        bits.insert_range(..self.n_units);
        ArrowSet::from_bits(self.fingerprint, bits)
    }

    pub fn arrow_set(&self, ids: impl IntoIterator<Item = u32>) -> ArrowSet {
        let mut s = self.empty_arrows();
        for a in ids {
            s.insert(a);
        }
        s
    }

    pub fn empty_units(&self) -> UnitSet {
        UnitSet::empty(self.fingerprint, self.n_units)
    }

    pub fn all_units(&self) -> UnitSet {
        UnitSet::full(self.fingerprint, self.n_units)
    }

    pub fn unit_set(&self, ids: impl IntoIterator<Item = u32>) -> UnitSet {
        let mut s = self.empty_units();
        for u in ids {
            s.insert(u);
        }
        s
    }

    /// Identity arrows of the units in `u`.
    pub fn identities(&self, units: &UnitSet) -> ArrowSet {
        self.arrow_set(units.iter())
    }

    pub fn owns_arrows(&self, set: &ArrowSet) -> bool {
        set.owner() == self.fingerprint && set.universe() == self.n_arrows()
    }

    pub fn owns_units(&self, set: &UnitSet) -> bool {
        set.owner() == self.fingerprint && set.universe() == self.n_units
    }

    pub(crate) fn check_arrows(&self, set: &ArrowSet) -> Result<()> {
        if self.owns_arrows(set) {
            Ok(())
        } else {
            Err(Error::OwnerMismatch)
        }
    }

    pub(crate) fn check_units(&self, set: &UnitSet) -> Result<()> {
        if self.owns_units(set) {
            Ok(())
        } else {
            Err(Error::OwnerMismatch)
        }
    }

    #[track_caller]
    pub(crate) fn expect_arrows(&self, set: &ArrowSet) {
        assert!(self.owns_arrows(set), "arrow set belongs to a different groupoid");
    }

    #[track_caller]
    pub(crate) fn expect_units(&self, set: &UnitSet) {
        assert!(self.owns_units(set), "unit set belongs to a different groupoid");
    }
}
