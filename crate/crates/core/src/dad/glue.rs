use super::{kl_dad_check, require_normal, DadWitness};
use crate::cover::Cover;
use crate::error::{Error, Result};
use crate::groupoid::Groupoid;
use crate::sets::{ArrowSet, UnitSet};

/// How the elements of `⟨K_0 ∩ G|_V⟩` fall into the three shapes of the gluing argument.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GlueCases {
    /// In `(H_0 ∪ G⁰)·K_0`.
    pub left: usize,
    /// In `K_0·(H_0 ∪ G⁰)`, not counted before.
    pub right: usize,
    /// In `(H_0 ∪ G⁰)·K_0·H_1·K_0·(H_0 ∪ G⁰)`, not counted before.
    pub middle: usize,
    /// In none of the three.
    pub unexplained: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlueCertificate {
    /// `⟨K_0 ∩ G|_{V_0 ∪ V_1}⟩ ⊆ K_2⁵`.
    pub holds: bool,
    /// Same containment with `K_2⁴`.
    pub holds_fourth: bool,
    pub generated: ArrowSet,
    pub cases: GlueCases,
}

fn increasing(ks: &[&ArrowSet]) -> Result<()> {
    for (i, w) in ks.windows(2).enumerate() {
        if !w[0].is_subset(w[1]) {
            return Err(Error::Precondition(format!("K_{i} ⊄ K_{}", i + 1)));
        }
    }
    Ok(())
}

/// Two-set gluing: from `⟨K_0 ∩ G|_{V_0}⟩ ⊆ K_1` and `⟨K_1³ ∩ G|_{V_1}⟩ ⊆ K_2`
/// certify `⟨K_0 ∩ G|_{V_0 ∪ V_1}⟩ ⊆ K_2⁵` by direct computation.
pub fn glue_two(
    g: &Groupoid,
    v0: &UnitSet,
    v1: &UnitSet,
    k0: &ArrowSet,
    k1: &ArrowSet,
    k2: &ArrowSet,
) -> Result<GlueCertificate> {
    for (k, name) in [(k0, "K_0"), (k1, "K_1"), (k2, "K_2")] {
        require_normal(g, k, name)?;
    }
    g.check_units(v0)?;
    g.check_units(v1)?;
    increasing(&[k0, k1, k2])?;
    let h0 = g.generated(k0, v0);
    if !h0.is_subset(k1) {
        return Err(Error::Certificate("⟨K_0 ∩ G|_V0⟩ ⊄ K_1".into()));
    }
    let h1 = g.generated(&g.power(k1, 3), v1);
    if !h1.is_subset(k2) {
        return Err(Error::Certificate("⟨K_1³ ∩ G|_V1⟩ ⊄ K_2".into()));
    }

    let generated = g.generated(k0, &v0.union(v1));
    let holds = generated.is_subset(&g.power(k2, 5));
    let holds_fourth = generated.is_subset(&g.power(k2, 4));

    let h0u = h0.union(&g.unit_arrows());
    let left = g.compose_sets(&h0u, k0)?;
    let right = g.compose_sets(k0, &h0u)?;
    let middle = g.compose_chain(&[&h0u, k0, &h1, k0, &h0u])?;
    let mut cases = GlueCases::default();
    for a in generated.iter() {
        if left.contains(a) {
            cases.left += 1;
        } else if right.contains(a) {
            cases.right += 1;
        } else if middle.contains(a) {
            cases.middle += 1;
        } else {
            cases.unexplained += 1;
        }
    }
    Ok(GlueCertificate { holds, holds_fourth, generated, cases })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainCertificate {
    /// `⟨K_0 ∩ G|_V⟩ ⊆ K_{n+1}⁵`.
    pub holds: bool,
    /// `K_i⁵ ⊆ K_{i+1}` for `1 ≤ i ≤ n`, which the inductive gluing step uses.
    pub fifth_powers_nested: bool,
    pub generated: ArrowSet,
}

/// Chain gluing over `V_0, …, V_n` with `K_0 ⊆ … ⊆ K_{n+1}` and
/// `⟨K_i¹⁵ ∩ G|_{V_i}⟩ ⊆ K_{i+1}`. The containment is computed, not assumed,
/// and reported in `holds`.
pub fn glue_chain(g: &Groupoid, vs: &[UnitSet], ks: &[ArrowSet]) -> Result<ChainCertificate> {
    if vs.is_empty() || ks.len() != vs.len() + 1 {
        return Err(Error::Precondition(format!("{} sets need {} bounds, got {}", vs.len(), vs.len() + 1, ks.len())));
    }
    for (i, k) in ks.iter().enumerate() {
        require_normal(g, k, &format!("K_{i}"))?;
    }
    increasing(&ks.iter().collect::<Vec<_>>())?;
    let mut v = g.empty_units();
    for (i, vi) in vs.iter().enumerate() {
        g.check_units(vi)?;
        if !g.generated(&g.power(&ks[i], 15), vi).is_subset(&ks[i + 1]) {
            return Err(Error::Certificate(format!("⟨K_{i}¹⁵ ∩ G|_V{i}⟩ ⊄ K_{}", i + 1)));
        }
        v.union_with(vi);
    }
    let generated = g.generated(&ks[0], &v);
    let top = ks.last().expect("non-empty");
    let holds = generated.is_subset(&g.power(top, 5));
    let fifth_powers_nested = (1..ks.len() - 1).all(|i| g.power(&ks[i], 5).is_subset(&ks[i + 1]));
    Ok(ChainCertificate { holds, fifth_powers_nested, generated })
}

/// Classes of one part's witness, in parent unit ids.
pub type PartWitness = Vec<UnitSet>;

/// Merge witnesses over a partition `X_0 ⊔ … ⊔ X_{n−1}` of `G⁰` into a
/// `(K_0, K_n⁵)` witness for `G`; class `j` is the union of the parts' class `j`.
///
/// Part `i` must certify `(K_i¹⁵ ∩ G|_{X_i}, K_{i+1})`. The merged witness is
/// checked from scratch and its `certified` flag reports the outcome.
pub fn union_combine(g: &Groupoid, parts: &[UnitSet], witnesses: &[PartWitness], ks: &[ArrowSet]) -> Result<DadWitness> {
    if parts.is_empty() || witnesses.len() != parts.len() || ks.len() != parts.len() + 1 {
        return Err(Error::Precondition("need n parts, n witnesses and n + 1 bounds".into()));
    }
    let mut seen = g.empty_units();
    for (i, x) in parts.iter().enumerate() {
        g.check_units(x)?;
        if !seen.is_disjoint(x) {
            return Err(Error::Precondition(format!("part {i} overlaps an earlier part")));
        }
        seen.union_with(x);
    }
    if seen != g.all_units() {
        return Err(Error::Precondition("parts do not cover G⁰".into()));
    }
    for (i, k) in ks.iter().enumerate() {
        require_normal(g, k, &format!("K_{i}"))?;
    }
    increasing(&ks.iter().collect::<Vec<_>>())?;

    let width = witnesses.iter().map(Vec::len).max().unwrap_or(0).max(1);
    let mut merged = vec![g.empty_units(); width];
    for (i, (x, classes)) in parts.iter().zip(witnesses).enumerate() {
        let scale = g.power(&ks[i], 15);
        let mut covered = g.empty_units();
        for (j, u) in classes.iter().enumerate() {
            g.check_units(u)?;
            if !u.is_subset(x) {
                return Err(Error::Precondition(format!("part {i} class {j} leaves its part")));
            }
            if !g.generated(&scale, u).is_subset(&ks[i + 1]) {
                return Err(Error::Certificate(format!("part {i} class {j} escapes K_{}", i + 1)));
            }
            covered.union_with(u);
            merged[j].union_with(u);
        }
        if covered != *x {
            return Err(Error::Certificate(format!("part {i} witness does not cover its part")));
        }
    }
    let cover = Cover::new(g, g.all_units(), merged)?;
    kl_dad_check(g, &ks[0], &g.power(ks.last().expect("non-empty"), 5), &cover)
}
