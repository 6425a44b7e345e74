//! Quantitative `(K, L)` dynamic asymptotic dimension: witnesses, search,
//! and the constructions that move witnesses between groupoids.

mod glue;
mod transfer;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

pub use glue::{glue_chain, glue_two, union_combine, ChainCertificate, GlueCases, GlueCertificate, PartWitness};
pub use transfer::{blowup_lift, blowup_transfer, product_combine, pullback_witness, LevelWitness};

use crate::cover::{Cover, CoverData};
use crate::error::{Error, Result};
use crate::groupoid::Groupoid;
use crate::search::{colour, Colouring, SearchMode};
use crate::sets::ArrowSet;

/// A cover `U_0, …, U_d` of `s(K) ∪ r(K)` together with `H_i = ⟨K ∩ G|_{U_i}⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DadWitness {
    pub cover: Cover,
    pub k: ArrowSet,
    pub l: ArrowSet,
    pub generated: Vec<ArrowSet>,
    /// Every `H_i ⊆ L`.
    pub certified: bool,
}

/// Serialized form of a witness. Arrow sets are stored in full so the file
/// re-verifies on its own against the instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessData {
    pub cover: CoverData,
    pub k: Vec<u32>,
    pub l: Vec<u32>,
    pub generated_sizes: Vec<usize>,
    pub certified: bool,
}

impl DadWitness {
    /// Number of classes minus one.
    pub fn d(&self) -> usize {
        self.cover.len().saturating_sub(1)
    }

    /// Classes that are empty are dropped from the count.
    pub fn used_d(&self) -> usize {
        self.cover.classes().iter().filter(|c| !c.is_empty()).count().saturating_sub(1)
    }

    pub fn to_data(&self) -> WitnessData {
        WitnessData {
            cover: self.cover.to_data(),
            k: self.k.to_vec(),
            l: self.l.to_vec(),
            generated_sizes: self.generated.iter().map(ArrowSet::len).collect(),
            certified: self.certified,
        }
    }

    /// Rebuild from serialized form; the certificate is recomputed, not trusted.
    pub fn from_data(g: &Groupoid, data: &WitnessData) -> Result<Self> {
        let arrows = |ids: &[u32]| -> Result<ArrowSet> {
            if let Some(&a) = ids.iter().find(|&&a| a as usize >= g.n_arrows()) {
                return Err(Error::Schema(format!("arrow {a} out of range")));
            }
            Ok(g.arrow_set(ids.iter().copied()))
        };
        let cover = Cover::from_data(g, &data.cover)?;
        kl_dad_check(g, &arrows(&data.k)?, &arrows(&data.l)?, &cover)
    }
}

pub(crate) fn require_normal(g: &Groupoid, set: &ArrowSet, name: &str) -> Result<()> {
    g.check_arrows(set)?;
    if !g.is_oc_normal(set) {
        return Err(Error::Precondition(format!("{name} is not O_c-normal")));
    }
    Ok(())
}

/// Certify a cover against the bound `L`.
pub fn kl_dad_check(g: &Groupoid, k: &ArrowSet, l: &ArrowSet, cover: &Cover) -> Result<DadWitness> {
    require_normal(g, k, "K")?;
    require_normal(g, l, "L")?;
    g.check_units(cover.base())?;
    if *cover.base() != g.endpoints(k) {
        return Err(Error::Precondition("cover base differs from s(K) ∪ r(K)".into()));
    }
    if !cover.covers_base() {
        return Err(Error::Precondition("classes do not cover the base".into()));
    }
    let generated: Vec<ArrowSet> = cover.classes().iter().map(|u| g.generated(k, u)).collect();
    let certified = generated.iter().all(|h| h.is_subset(l));
    Ok(DadWitness { cover: cover.clone(), k: k.clone(), l: l.clone(), generated, certified })
}

struct DadProblem<'a> {
    g: &'a Groupoid,
    k: &'a ArrowSet,
    l: &'a ArrowSet,
    items: Vec<u32>,
}

impl Colouring for DadProblem<'_> {
    fn items(&self) -> &[u32] {
        &self.items
    }

    fn universe(&self) -> usize {
        self.g.n_units()
    }

    fn admits(&self, members: &FixedBitSet, item: u32) -> bool {
        // Only the component of the new unit can change.
        let member = |v: u32| v == item || members.contains(v as usize);
        self.g.component_within(self.k, &member, item).is_subset(self.l.bits())
    }
}

/// Least `d ≤ d_max` with a certified `(K, L)` witness.
///
/// Exact mode returns the lexicographically least witness, reading the
/// class index of each unit in increasing unit order with classes numbered
/// by first use. Adding a unit to more classes only enlarges the generated
/// sets, so a partition is found whenever any cover works. Greedy mode is
/// first-fit in the same order.
pub fn kl_dad_search(g: &Groupoid, k: &ArrowSet, l: &ArrowSet, d_max: usize, mode: SearchMode) -> Result<Option<DadWitness>> {
    require_normal(g, k, "K")?;
    require_normal(g, l, "L")?;
    if d_max >= u8::MAX as usize {
        return Err(Error::Precondition(format!("d_max {d_max} is too large")));
    }
    let base = g.endpoints(k);
    let problem = DadProblem { g, k, l, items: base.to_vec() };
    for d in 0..=d_max {
        if let Some(assignment) = colour(&problem, d + 1, mode) {
            let mut classes = vec![g.empty_units(); d + 1];
            for (&u, &c) in problem.items.iter().zip(&assignment) {
                classes[c as usize].insert(u);
            }
            let cover = Cover::new(g, base, classes)?;
            let witness = kl_dad_check(g, k, l, &cover)?;
            debug_assert!(witness.certified);
            return Ok(Some(witness));
        }
    }
    Ok(None)
}

/// Pad a cover with empty classes up to `n` classes.
pub(crate) fn pad(g: &Groupoid, cover: Cover, n: usize) -> Cover {
    let base = cover.base().clone();
    let mut classes = cover.into_classes();
    while classes.len() < n {
        classes.push(g.empty_units());
    }
    Cover::new(g, base, classes).expect("same owner")
}

/// `⋃ H_i` of a witness, symmetrized.
pub fn generated_union(g: &Groupoid, generated: &[ArrowSet]) -> ArrowSet {
    let mut out = g.unit_arrows();
    for h in generated {
        out.union_with(h);
    }
    g.symmetrize(&out)
}
