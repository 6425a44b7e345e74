//! Arrow and unit subsets of a fixed groupoid, stored as bit vectors.
//!
//! Every set carries the fingerprint of the groupoid it was created from so
//! that mixing sets from different groupoids is caught at the operation
//! boundary.

use std::fmt;

use fixedbitset::FixedBitSet;

macro_rules! id_set {
    ($name:ident, $what:literal) => {
        #[doc = concat!("A subset of the ", $what, " of one groupoid.")]
        #[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub struct $name {
            owner: u64,
            bits: FixedBitSet,
        }

        impl $name {
            pub(crate) fn empty(owner: u64, universe: usize) -> Self {
                Self { owner, bits: FixedBitSet::with_capacity(universe) }
            }

            pub(crate) fn full(owner: u64, universe: usize) -> Self {
                let mut bits = FixedBitSet::with_capacity(universe);
                bits.insert_range(..);
                Self { owner, bits }
            }

            #[allow(dead_code)]
            pub(crate) fn from_bits(owner: u64, bits: FixedBitSet) -> Self {
                Self { owner, bits }
            }

            /// Fingerprint of the owning groupoid.
            pub fn owner(&self) -> u64 {
                self.owner
            }

            /// Size of the id universe (number of arrows or units of the owner).
            pub fn universe(&self) -> usize {
                self.bits.len()
            }

            pub fn bits(&self) -> &FixedBitSet {
                &self.bits
            }

            pub fn contains(&self, id: u32) -> bool {
                self.bits.contains(id as usize)
            }

            /// Panics if `id` is outside the owner's id range.
            pub fn insert(&mut self, id: u32) {
                self.bits.insert(id as usize);
            }

            pub fn remove(&mut self, id: u32) {
                self.bits.set(id as usize, false);
            }

            pub fn len(&self) -> usize {
                self.bits.count_ones(..)
            }

            pub fn is_empty(&self) -> bool {
                self.bits.is_clear()
            }

            pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
                self.bits.ones().map(|i| i as u32)
            }

            pub fn to_vec(&self) -> Vec<u32> {
                self.iter().collect()
            }

            pub fn min(&self) -> Option<u32> {
                self.bits.minimum().map(|i| i as u32)
            }

            pub fn same_owner(&self, other: &Self) -> bool {
                self.owner == other.owner && self.bits.len() == other.bits.len()
            }

            pub fn is_subset(&self, other: &Self) -> bool {
                self.bits.is_subset(&other.bits)
            }

            pub fn is_disjoint(&self, other: &Self) -> bool {
                self.bits.is_disjoint(&other.bits)
            }

            pub fn union(&self, other: &Self) -> Self {
                let mut out = self.clone();
                out.bits.union_with(&other.bits);
                out
            }

            pub fn intersection(&self, other: &Self) -> Self {
                let mut out = self.clone();
                out.bits.intersect_with(&other.bits);
                out
            }

            pub fn difference(&self, other: &Self) -> Self {
                let mut out = self.clone();
                out.bits.difference_with(&other.bits);
                out
            }

            pub fn union_with(&mut self, other: &Self) {
                self.bits.union_with(&other.bits);
            }

            pub fn intersect_with(&mut self, other: &Self) {
                self.bits.intersect_with(&other.bits);
            }

            pub fn difference_with(&mut self, other: &Self) {
                self.bits.difference_with(&other.bits);
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.debug_set().entries(self.iter()).finish()
            }
        }
    };
}

id_set!(ArrowSet, "arrows");
id_set!(UnitSet, "units");
