//! n-fold covers of unit sets, control functions and the Ostrand-type lift.

mod control;
mod lift;

use serde::{Deserialize, Serialize};

pub use control::{ControlFunction, Rule};
pub use lift::{ostrand_lift, residual_class};

use crate::error::{Error, Result};
use crate::groupoid::Groupoid;
use crate::sets::UnitSet;

/// Classes `U_0, …, U_k` required to cover `base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    base: UnitSet,
    classes: Vec<UnitSet>,
}

/// Plain-id form of a [`Cover`], as serialized.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverData {
    pub base: Vec<u32>,
    pub classes: Vec<Vec<u32>>,
}

impl Cover {
    pub fn new(g: &Groupoid, base: UnitSet, classes: Vec<UnitSet>) -> Result<Self> {
        g.check_units(&base)?;
        for c in &classes {
            g.check_units(c)?;
        }
        Ok(Self { base, classes })
    }

    /// Every class equal to `G⁰`.
    pub fn uniform(g: &Groupoid, n_classes: usize) -> Self {
        Self { base: g.all_units(), classes: vec![g.all_units(); n_classes] }
    }

    pub fn from_data(g: &Groupoid, data: &CoverData) -> Result<Self> {
        let units = |ids: &[u32]| -> Result<UnitSet> {
            if let Some(&u) = ids.iter().find(|&&u| u as usize >= g.n_units()) {
                return Err(Error::Schema(format!("unit {u} out of range")));
            }
            Ok(g.unit_set(ids.iter().copied()))
        };
        let classes = data.classes.iter().map(|c| units(c)).collect::<Result<_>>()?;
        Self::new(g, units(&data.base)?, classes)
    }

    pub fn to_data(&self) -> CoverData {
        CoverData { base: self.base.to_vec(), classes: self.classes.iter().map(UnitSet::to_vec).collect() }
    }

    pub fn base(&self) -> &UnitSet {
        &self.base
    }

    pub fn classes(&self) -> &[UnitSet] {
        &self.classes
    }

    pub fn into_classes(self) -> Vec<UnitSet> {
        self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Number of classes containing `x`.
    pub fn multiplicity(&self, x: u32) -> usize {
        self.classes.iter().filter(|c| c.contains(x)).count()
    }

    /// `min_{x ∈ base} #{i | x ∈ U_i}`; 0 when some base point is uncovered.
    /// An empty base has fold number `k + 1`.
    pub fn fold_number(&self) -> usize {
        self.base.iter().map(|x| self.multiplicity(x)).min().unwrap_or(self.classes.len())
    }

    pub fn covers_base(&self) -> bool {
        self.fold_number() >= 1
    }

    /// True iff every subfamily of `k + 2 − n` classes covers the base.
    pub fn check_nfold_subfamilies(&self, n: usize) -> Result<bool> {
        let k1 = self.classes.len();
        if n > k1 {
            return Err(Error::Precondition(format!("fold {n} exceeds the {k1} classes")));
        }
        if k1 > 63 {
            return Err(Error::Precondition("too many classes to enumerate subfamilies".into()));
        }
        let size = k1 + 1 - n;
        if size > k1 {
            return Ok(true);
        }
        // x is missed by F iff F avoids every class containing x
        let masks: Vec<u64> = self
            .base
            .iter()
            .map(|x| (0..k1).filter(|&i| self.classes[i].contains(x)).fold(0u64, |m, i| m | 1 << i))
            .collect();
        Ok(subsets_of_size(k1, size).all(|f| masks.iter().all(|&m| m & f != 0)))
    }

    /// Greedy pruning to an inclusion-minimal `n`-fold subcover with `V_i ⊆ U_i`.
    ///
    /// Points outside the base are dropped. Each base point keeps its `n`
    /// lowest-index classes: points are scanned in increasing id and, per
    /// point, classes from the highest index down.
    pub fn shrink_nfold(&self, n: usize) -> Result<Cover> {
        let fold = self.fold_number();
        if fold < n {
            return Err(Error::Precondition(format!("fold number {fold} is below {n}")));
        }
        let mut classes: Vec<UnitSet> = self.classes.iter().map(|c| c.intersection(&self.base)).collect();
        for x in self.base.iter() {
            let mut count = self.multiplicity(x);
            for c in classes.iter_mut().rev() {
                if count <= n {
                    break;
                }
                if c.contains(x) {
                    c.remove(x);
                    count -= 1;
                }
            }
        }
        Ok(Cover { base: self.base.clone(), classes })
    }
}

/// Bitmasks of the `size`-element subsets of `0..n`, in increasing order (Gosper's hack).
pub(crate) fn subsets_of_size(n: usize, size: usize) -> impl Iterator<Item = u64> {
    let limit = 1u64 << n;
    let first = if size == 0 { 0 } else { (1u64 << size) - 1 };
    let mut next = Some(first).filter(|&f| size <= n && f < limit.max(1));
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let succ = (((r ^ cur) >> 2) / c) | r;
            (succ < limit).then_some(succ)
        };
        Some(cur)
    })
}
