use super::{kl_dad_check, require_normal, DadWitness};
use crate::build::{Blowup, Product};
use crate::cover::Cover;
use crate::error::{Error, Result};
use crate::groupoid::{Functor, Groupoid};
use crate::sets::ArrowSet;

/// A level-`k` cover of one factor: `k + 1` classes, `(k + 1 − d)`-fold,
/// each class generating inside `l` for the scale `k_set`.
#[derive(Clone, Copy, Debug)]
pub struct LevelWitness<'a> {
    pub cover: &'a Cover,
    pub d: usize,
    pub k_set: &'a ArrowSet,
    pub l: &'a ArrowSet,
}

fn check_level(g: &Groupoid, w: &LevelWitness<'_>, k: usize, side: &str) -> Result<()> {
    require_normal(g, w.k_set, &format!("{side} K"))?;
    require_normal(g, w.l, &format!("{side} L"))?;
    if w.cover.len() != k + 1 {
        return Err(Error::Precondition(format!("{side} cover has {} classes, expected {}", w.cover.len(), k + 1)));
    }
    if *w.cover.base() != g.endpoints(w.k_set) {
        return Err(Error::Precondition(format!("{side} cover base differs from s(K) ∪ r(K)")));
    }
    let need = k + 1 - w.d;
    if w.cover.fold_number() < need {
        return Err(Error::Precondition(format!("{side} cover is {}-fold, needs {need}", w.cover.fold_number())));
    }
    if let Some(i) = w.cover.classes().iter().position(|u| !g.generated(w.k_set, u).is_subset(w.l)) {
        return Err(Error::Certificate(format!("{side} class {i} escapes its bound")));
    }
    Ok(())
}

/// Witness on `G × H` with classes `U_i × V_i` and bound `L_G × L_H`.
pub fn product_combine(
    p: &Product,
    g: &Groupoid,
    h: &Groupoid,
    wg: LevelWitness<'_>,
    wh: LevelWitness<'_>,
) -> Result<DadWitness> {
    let k = wg.d + wh.d;
    check_level(g, &wg, k, "left")?;
    check_level(h, &wh, k, "right")?;
    let classes = wg.cover.classes().iter().zip(wh.cover.classes()).map(|(u, v)| p.product_units(u, v)).collect();
    let base = p.product_units(wg.cover.base(), wh.cover.base());
    let cover = Cover::new(&p.groupoid, base, classes)?;
    kl_dad_check(&p.groupoid, &p.product_set(wg.k_set, wh.k_set), &p.product_set(wg.l, wh.l), &cover)
}

/// Pull a certified witness on `H` back along `π: G → H`.
///
/// Classes are `π⁻¹(U_i) ∩ G⁰`; the result is certified against `l_g`,
/// which must contain every `π⁻¹(H_i)`.
pub fn pullback_witness(
    g: &Groupoid,
    h: &Groupoid,
    pi: &Functor,
    witness: &DadWitness,
    k_g: &ArrowSet,
    l_g: &ArrowSet,
) -> Result<DadWitness> {
    if pi.source_fingerprint() != g.fingerprint() || pi.target_fingerprint() != h.fingerprint() {
        return Err(Error::NotFunctor("map does not run between the given groupoids".into()));
    }
    require_normal(g, k_g, "K")?;
    require_normal(g, l_g, "L")?;
    h.check_arrows(&witness.k)?;
    if !witness.certified {
        return Err(Error::Certificate("witness on the target is not certified".into()));
    }
    if !pi.image(g, h, k_g).is_subset(&witness.k) {
        return Err(Error::Precondition("π(K) is not inside the witness scale".into()));
    }
    for (i, hi) in witness.generated.iter().enumerate() {
        if !pi.preimage(g, h, hi).is_subset(l_g) {
            return Err(Error::Precondition(format!("L does not contain π⁻¹(H_{i})")));
        }
    }
    let base = g.endpoints(k_g);
    let classes = witness.cover.classes().iter().map(|u| pi.unit_preimage(g, h, u).intersection(&base)).collect();
    let cover = Cover::new(g, base, classes)?;
    kl_dad_check(g, k_g, l_g, &cover)
}

/// Push a witness on `G^ψ` at scale `(X × K × X) ∩ G^ψ` down to `G` with classes `ψ(U_i)`.
///
/// The bound on `G` is `π(L)`; each class is also checked against
/// `π(⟨L ∩ G^ψ|_{U_i}⟩)`.
pub fn blowup_transfer(g: &Groupoid, b: &Blowup, witness: &DadWitness, k: &ArrowSet) -> Result<DadWitness> {
    require_normal(g, k, "K")?;
    let gp = &b.groupoid;
    gp.check_arrows(&witness.k)?;
    if witness.k != b.lift_set(g, k) {
        return Err(Error::Precondition("witness scale is not the lift of K".into()));
    }
    if !witness.certified {
        return Err(Error::Certificate("witness on the blow-up is not certified".into()));
    }
    let pi = &b.projection;
    let l = pi.image(gp, g, &witness.l);
    let classes: Vec<_> = witness.cover.classes().iter().map(|u| b.push_units(g, u)).collect();
    for (i, (v, hi)) in classes.iter().zip(&witness.generated).enumerate() {
        if !g.generated(k, v).is_subset(&pi.image(gp, g, hi)) {
            return Err(Error::Certificate(format!("⟨K ∩ G|_ψ(U_{i})⟩ ⊄ π(H_{i})")));
        }
    }
    let cover = Cover::new(g, g.endpoints(k), classes)?;
    kl_dad_check(g, k, &l, &cover)
}

/// Lift a certified witness on `G` to `G^ψ` through the projection, at scale
/// `π⁻¹(K)` with bound `π⁻¹(L)`.
pub fn blowup_lift(g: &Groupoid, b: &Blowup, witness: &DadWitness) -> Result<DadWitness> {
    let k = b.lift_set(g, &witness.k);
    let l = b.lift_set(g, &witness.l);
    pullback_witness(&b.groupoid, g, &b.projection, witness, &k, &l)
}
