use super::{subsets_of_size, ControlFunction, Cover};
use crate::error::{Error, Result};
use crate::groupoid::Groupoid;
use crate::sets::{ArrowSet, UnitSet};

/// Largest level the lift supports; the residual class enumerates subsets of `0..=k`.
pub const MAX_LEVEL: usize = 12;

/// `⋃_{|S| = size} (⋂_{j∈S} V_j ∖ ⋃_{i∉S} K·V_i)`.
pub fn residual_class(g: &Groupoid, k: &ArrowSet, v: &Cover, size: usize) -> Result<UnitSet> {
    g.check_arrows(k)?;
    let n = v.len();
    if n > MAX_LEVEL + 1 {
        return Err(Error::Precondition(format!("{n} classes exceed the supported {}", MAX_LEVEL + 1)));
    }
    let saturated: Vec<UnitSet> = v.classes().iter().map(|c| g.saturate(k, c)).collect();
    let mut out = g.empty_units();
    for s in subsets_of_size(n, size) {
        let mut part = v.base().clone();
        for (j, class) in v.classes().iter().enumerate() {
            if s >> j & 1 == 1 {
                part.intersect_with(class);
            } else {
                part.difference_with(&saturated[j]);
            }
        }
        out.union_with(&part);
    }
    Ok(out)
}

/// Level `k + 1` cover for `K` built from the level `k` cover for `K³`.
///
/// Classes `0..=k` are `K·U_i`; class `k + 1` is the residual class of the
/// shrunk cover. Both the input and the output are verified against `D`.
pub fn ostrand_lift(g: &Groupoid, control: &ControlFunction<'_>, k_set: &ArrowSet, k: usize) -> Result<Cover> {
    let d = control.d();
    if k < d {
        return Err(Error::Precondition(format!("level {k} is below d = {d}")));
    }
    if k + 1 > MAX_LEVEL {
        return Err(Error::Precondition(format!("level {} exceeds {MAX_LEVEL}", k + 1)));
    }
    let k3 = g.power(k_set, 3);
    let prev = control.level_cover(&k3, k)?;
    let bound = control.apply(&k3, k)?;
    let fold = k + 1 - d;
    if prev.len() != k + 1 || prev.fold_number() < fold || *prev.base() != g.endpoints(&k3) {
        return Err(Error::Certificate(format!("D fails verification at level {k}: not a {fold}-fold cover of G⁰")));
    }
    if let Some(i) = prev.classes().iter().position(|u| !g.generated(&k3, u).is_subset(&bound)) {
        return Err(Error::Certificate(format!("D fails verification at level {k}: class {i} escapes D^({k})(K³)")));
    }

    let v = prev.shrink_nfold(fold)?;
    let mut classes: Vec<UnitSet> = prev.classes().iter().map(|u| g.saturate(k_set, u)).collect();
    classes.push(residual_class(g, k_set, &v, fold)?);
    let lifted = Cover::new(g, g.endpoints(k_set), classes)?;

    let target = control.apply(k_set, k + 1)?;
    if lifted.fold_number() < fold + 1 {
        return Err(Error::Certificate(format!("lifted cover is only {}-fold", lifted.fold_number())));
    }
    if let Some(i) = lifted.classes().iter().position(|u| !g.generated(k_set, u).is_subset(&target)) {
        return Err(Error::Certificate(format!("lifted class {i} escapes D^({})(K)", k + 1)));
    }
    Ok(lifted)
}
