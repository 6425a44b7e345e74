use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{ef_asdim_check, ef_asdim_search, gauge_from, subset_space, AsdimVerdict, CoarseSpace, Decomposition};
use crate::cover::Cover;
use crate::dad::{generated_union, kl_dad_check, require_normal, DadWitness};
use crate::error::{Error, Result};
use crate::groupoid::{Groupoid, Restriction};
use crate::search::SearchMode;
use crate::sets::{ArrowSet, UnitSet};

#[derive(Clone, Debug)]
pub struct DadToAsdim {
    /// Family `i` holds the `∼_i` classes on `G_{U_i}`.
    pub decomposition: Decomposition,
    /// Against `E = gauge_from(K)` and `F = gauge_from(sym(⋃H_i))`.
    pub verdict: AsdimVerdict,
}

/// Decomposition of the arrow space from a certified witness:
/// `g ∼_i h ⇔ r(g) = r(h), g⁻¹h ∈ H_i` on arrows with source in `U_i`.
pub fn dad_to_asdim(g: &Groupoid, witness: &DadWitness) -> Result<DadToAsdim> {
    let w = kl_dad_check(g, &witness.k, &witness.l, &witness.cover)?;
    if !w.certified {
        return Err(Error::Certificate("witness is not certified".into()));
    }
    let mut families = Vec::with_capacity(w.cover.len());
    for (i, (u, h)) in w.cover.classes().iter().zip(&w.generated).enumerate() {
        let mut assigned = g.empty_arrows();
        let mut members = Vec::new();
        for a in 0..g.n_arrows() as u32 {
            if !u.contains(g.src(a)) || assigned.contains(a) {
                continue;
            }
            let class: Vec<u32> = g
                .range_fiber(g.src(a))
                .iter()
                .filter(|&&b| h.contains(b))
                .map(|&b| g.compose(a, b).expect("composable"))
                .collect();
            for &p in &class {
                if !u.contains(g.src(p)) || assigned.contains(p) {
                    return Err(Error::Certificate(format!("∼_{i} is not an equivalence relation at arrow {p}")));
                }
                for &q in &class {
                    if !g.compose(g.inv(p), q).is_some_and(|c| h.contains(c)) {
                        return Err(Error::Certificate(format!("∼_{i} is not transitive at ({p}, {q})")));
                    }
                }
                assigned.insert(p);
            }
            members.push(class);
        }
        families.push(members);
    }
    let decomposition = Decomposition { families }.canonical();
    let space = CoarseSpace::new(0..g.n_arrows() as u32);
    let e = gauge_from(g, &w.k)?;
    let f = gauge_from(g, &generated_union(g, &w.generated))?;
    let verdict = ef_asdim_check(&space, &e, &f, &decomposition)?;
    Ok(DadToAsdim { decomposition, verdict })
}

/// `{h ∈ H | r(h) = x}` in increasing order.
fn fiber_of(g: &Groupoid, h: &ArrowSet, x: u32) -> Vec<u32> {
    g.range_fiber(x).iter().copied().filter(|&a| h.contains(a)).collect()
}

/// Per-fiber `(K, L)` decompositions of `H_K(Y) = ⟨K ∩ G|_Y⟩`, one per unit of `Y`.
/// `None` when some fiber has none with at most `d_max + 1` families.
pub fn fiber_decompositions(
    g: &Groupoid,
    y: &UnitSet,
    k: &ArrowSet,
    l: &ArrowSet,
    d_max: usize,
    mode: SearchMode,
) -> Result<Option<BTreeMap<u32, Decomposition>>> {
    require_normal(g, k, "K")?;
    require_normal(g, l, "L")?;
    g.check_units(y)?;
    let h = g.generated(k, y);
    let found: Vec<(u32, Option<Decomposition>)> = y
        .to_vec()
        .into_par_iter()
        .map(|x| {
            let space = subset_space(g, &fiber_of(g, &h, x), &[("E", k), ("F", l)])?;
            let e = space.gauge("E").expect("added");
            let f = space.gauge("F").expect("added");
            Ok((x, ef_asdim_search(&space, e, f, d_max, mode)?))
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().map(|(x, d)| d.map(|d| (x, d))).collect())
}

#[derive(Clone, Debug)]
pub struct AsdimToDad {
    /// `G|_Y`; the witness lives on this groupoid.
    pub restriction: Restriction,
    /// Least unit of each `H_K(Y)`-orbit, in parent ids.
    pub y_star: UnitSet,
    pub witness: DadWitness,
}

/// `(K, L)`-dad witness for `G|_Y` from fiberwise decompositions of `H_K(Y)`.
///
/// With `Y_*` the least unit of each orbit, `U_i = {s(h) | h ∈ T_i, r(h) ∈ Y_*}`.
/// Each arrow `g ∈ K ∩ G|_{U_i}` factors as `(h')⁻¹h` with `h, h'` over
/// `Y_*`; both must sit in one block, which is checked and reported first.
pub fn asdim_to_dad(
    g: &Groupoid,
    y: &UnitSet,
    k: &ArrowSet,
    l: &ArrowSet,
    fibers: &BTreeMap<u32, Decomposition>,
) -> Result<AsdimToDad> {
    if let Some(a) = g.isotropy_arrow() {
        return Err(Error::NotPrincipal(a));
    }
    require_normal(g, k, "K")?;
    require_normal(g, l, "L")?;
    g.check_units(y)?;
    let h = g.generated(k, y);
    let orbits = g.orbits_of(&h);
    let mut star_of = vec![u32::MAX; g.n_units()];
    for orbit in &orbits {
        for &u in orbit {
            star_of[u as usize] = orbit[0];
        }
    }
    let y_star = g.unit_set(orbits.iter().map(|o| o[0]));

    // block_of[h] = (family, member) for arrows over Y_*
    let mut block_of: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
    let mut width = 1;
    for (&x, dec) in fibers {
        let labels = label_fiber(g, &h, x, dec)?;
        if y_star.contains(x) {
            block_of.extend(labels);
            width = width.max(dec.families.len());
        }
    }
    if let Some(x) = y_star.iter().find(|x| !fibers.contains_key(x)) {
        return Err(Error::Precondition(format!("no decomposition for the fiber over {x}")));
    }

    let mut classes = vec![g.empty_units(); width];
    for (&a, &(i, _)) in &block_of {
        classes[i].insert(g.src(a));
    }
    let over_star = |u: u32| g.arrow_between(u, star_of[u as usize]).expect("same orbit, principal");
    for (i, u) in classes.iter().enumerate() {
        for a in g.restrict_set(k, u).iter().filter(|&a| !g.is_unit(a)) {
            let hk = over_star(g.src(a));
            let hk2 = over_star(g.rng(a));
            let (b1, b2) = (block_of[&hk], block_of[&hk2]);
            if b1 != b2 {
                return Err(Error::Certificate(format!(
                    "step g = (h'_k)⁻¹h_k fails for g = {a}: h_k = {hk} lies in D_{i},{} but h'_k = {hk2} lies in D_{i},{}",
                    b1.1, b2.1
                )));
            }
        }
    }
    for (&x, dec) in fibers {
        check_blocks(g, k, l, x, dec)?;
    }

    let r = g.restrict(y)?;
    let ky = r.pull_arrows(k);
    let ly = r.pull_arrows(l);
    let cover = Cover::new(&r.groupoid, r.groupoid.endpoints(&ky), classes.iter().map(|u| r.pull_units(u)).collect())?;
    let witness = kl_dad_check(&r.groupoid, &ky, &ly, &cover)?;
    Ok(AsdimToDad { restriction: r, y_star, witness })
}

/// Labels of a fiber decomposition, which must partition `H^x`.
fn label_fiber(g: &Groupoid, h: &ArrowSet, x: u32, dec: &Decomposition) -> Result<Vec<(u32, (usize, usize))>> {
    if x as usize >= g.n_units() {
        return Err(Error::Precondition(format!("unit {x} out of range")));
    }
    let mut labels = Vec::new();
    let mut seen = g.empty_arrows();
    for (i, fam) in dec.families.iter().enumerate() {
        for (j, member) in fam.iter().enumerate() {
            for &a in member {
                if a as usize >= g.n_arrows() || !h.contains(a) || g.rng(a) != x {
                    return Err(Error::Precondition(format!("fiber {x}: arrow {a} is not in H_K(Y)^{x}")));
                }
                if seen.contains(a) {
                    return Err(Error::Precondition(format!("fiber {x}: arrow {a} appears twice")));
                }
                seen.insert(a);
                labels.push((a, (i, j)));
            }
        }
    }
    if let Some(a) = fiber_of(g, h, x).into_iter().find(|&a| !seen.contains(a)) {
        return Err(Error::Precondition(format!("fiber {x}: arrow {a} is not covered")));
    }
    Ok(labels)
}

/// Blocks of one family are `K`-disjoint and each block has `D⁻¹D ⊆ L`.
fn check_blocks(g: &Groupoid, k: &ArrowSet, l: &ArrowSet, x: u32, dec: &Decomposition) -> Result<()> {
    let quotient = |a: u32, b: u32| g.compose(g.inv(a), b).expect("same range");
    for (i, fam) in dec.families.iter().enumerate() {
        for (j, d) in fam.iter().enumerate() {
            for &a in d {
                if let Some(&b) = d.iter().find(|&&b| !l.contains(quotient(a, b))) {
                    return Err(Error::Certificate(format!("fiber {x}: D_{i},{j} has {a}⁻¹·{b} outside L")));
                }
                for (j2, d2) in fam.iter().enumerate().skip(j + 1) {
                    if let Some(&b) = d2.iter().find(|&&b| k.contains(quotient(a, b))) {
                        return Err(Error::Certificate(format!(
                            "fiber {x}: D_{i},{j} and D_{i},{j2} are not K-disjoint at ({a}, {b})"
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}
