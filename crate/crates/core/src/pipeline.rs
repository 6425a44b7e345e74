//! End-to-end runs of the witness constructions, one stage per step, with
//! every intermediate witness kept for the report.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::build::{blowup, product};
use crate::coarse::{asdim_to_dad, dad_to_asdim, fiber_decompositions, Decomposition};
use crate::cover::{ControlFunction, Cover, Rule};
use crate::dad::{blowup_lift, blowup_transfer, generated_union, kl_dad_check, kl_dad_search, product_combine};
use crate::dad::{union_combine, DadWitness, LevelWitness, WitnessData};
use crate::error::{Error, Result};
use crate::groupoid::Groupoid;
use crate::search::SearchMode;
use crate::sets::{ArrowSet, UnitSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Certified,
    /// Exact search found nothing at the stated `d`.
    Refuted,
    /// A search or check did not succeed; the run stops here.
    Failed,
}

#[derive(Clone, Debug, Serialize)]
pub struct Stage {
    pub name: String,
    /// Which groupoid the stage's witness lives on.
    pub groupoid: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessData>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<Decomposition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fibers: Option<BTreeMap<u32, Decomposition>>,
}

impl Stage {
    fn new(name: &str, groupoid: &str, status: Status, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            groupoid: groupoid.into(),
            status,
            d: None,
            detail: detail.into(),
            witness: None,
            decomposition: None,
            fibers: None,
        }
    }

    fn witness(name: &str, groupoid: &str, w: &DadWitness, detail: impl Into<String>) -> Self {
        let status = if w.certified { Status::Certified } else { Status::Failed };
        Self { d: Some(w.d()), witness: Some(w.to_data()), ..Self::new(name, groupoid, status, detail) }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub theorem: String,
    /// Every stage certified and the stated inequality holds.
    pub holds: bool,
    pub stages: Vec<Stage>,
}

impl TheoremReport {
    fn new(theorem: &str) -> Self {
        Self { theorem: theorem.into(), holds: false, stages: Vec::new() }
    }

    fn push(&mut self, stage: Stage) -> bool {
        let ok = stage.status != Status::Failed;
        self.stages.push(stage);
        ok
    }

    fn fail(mut self, name: &str, groupoid: &str, detail: impl Into<String>) -> Self {
        self.stages.push(Stage::new(name, groupoid, Status::Failed, detail));
        self
    }

    /// First failed stage, if any.
    pub fn failed_stage(&self) -> Option<&Stage> {
        self.stages.iter().find(|s| s.status == Status::Failed)
    }

    pub fn stage(&self, name: &str) -> Option<&Stage> {
        self.stages.iter().find(|s| s.name == name)
    }
}

/// Certificate failures end the run as a failed stage; anything else is an input error.
fn stage_result<T>(r: Result<T>) -> Result<std::result::Result<T, String>> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(e @ Error::Certificate(_)) => Ok(Err(e.to_string())),
        Err(e) => Err(e),
    }
}

fn search_stage(
    report: &mut TheoremReport,
    name: &str,
    label: &str,
    g: &Groupoid,
    k: &ArrowSet,
    l: &ArrowSet,
    d_max: usize,
    mode: SearchMode,
) -> Result<Option<DadWitness>> {
    match kl_dad_search(g, k, l, d_max, mode)? {
        Some(w) => {
            report.push(Stage::witness(name, label, &w, format!("least d ≤ {d_max}")));
            Ok(Some(w))
        }
        None => {
            report.push(Stage::new(name, label, Status::Failed, format!("no witness with d ≤ {d_max}")));
            Ok(None)
        }
    }
}

/// One factor of the product run, lifted to level `k`.
struct Level {
    cover: Cover,
    k_set: ArrowSet,
    bound: ArrowSet,
    d: usize,
}

fn level(g: &Groupoid, w: &DadWitness, k: usize, mode: SearchMode) -> Result<std::result::Result<Level, String>> {
    let d = w.d();
    let control = ControlFunction::new(g, d, Rule::Discovered(mode));
    control.seed(&w.k, generated_union(g, &w.generated).union(&w.k), w.cover.clone())?;
    let cover = match stage_result(control.level_cover(&w.k, k))? {
        Ok(c) => c,
        Err(e) => return Ok(Err(e)),
    };
    let generated: Vec<ArrowSet> = cover.classes().iter().map(|u| g.generated(&w.k, u)).collect();
    let bound = generated_union(g, &generated).union(&w.k);
    Ok(Ok(Level { cover, k_set: w.k.clone(), bound, d }))
}

/// Product run: least `d_G`, `d_H` for the factors, level `d_G + d_H` covers
/// of both, their tight bounds `L*`, and the product witness at
/// `(K_G × K_H, L*_G × L*_H)`. With `window`, exact search for `d_G + d_H − 1`
/// at the same scales on the product restricted to `U × V`.
#[allow(clippy::too_many_arguments)]
pub fn product_theorem(
    g: &Groupoid,
    kg: &ArrowSet,
    lg: &ArrowSet,
    h: &Groupoid,
    kh: &ArrowSet,
    lh: &ArrowSet,
    d_max: usize,
    mode: SearchMode,
    window: Option<(&UnitSet, &UnitSet)>,
) -> Result<TheoremReport> {
    let mut report = TheoremReport::new("product");
    let Some(wg) = search_stage(&mut report, "left search", "G", g, kg, lg, d_max, mode)? else { return Ok(report) };
    let Some(wh) = search_stage(&mut report, "right search", "H", h, kh, lh, d_max, mode)? else { return Ok(report) };
    let k = wg.d() + wh.d();

    let mut levels = Vec::new();
    for (side, label, gr, w) in [("left", "G", g, &wg), ("right", "H", h, &wh)] {
        let name = format!("{side} level {k}");
        match level(gr, w, k, mode)? {
            Ok(lv) => {
                let check = kl_dad_check(gr, &lv.k_set, &lv.bound, &lv.cover)?;
                let detail = format!("{}-fold, bound L* of {} arrows", lv.cover.fold_number(), lv.bound.len());
                report.push(Stage::witness(&name, label, &check, detail));
                levels.push(lv);
            }
            Err(e) => return Ok(report.fail(&name, label, e)),
        }
    }

    let p = product(g, h);
    let (lg_, lh_) = (&levels[0], &levels[1]);
    let wg_level = LevelWitness { cover: &lg_.cover, d: lg_.d, k_set: &lg_.k_set, l: &lg_.bound };
    let wh_level = LevelWitness { cover: &lh_.cover, d: lh_.d, k_set: &lh_.k_set, l: &lh_.bound };
    let pw = match stage_result(product_combine(&p, g, h, wg_level, wh_level))? {
        Ok(w) => w,
        Err(e) => return Ok(report.fail("product", "G×H", e)),
    };
    let ok = report.push(Stage::witness("product", "G×H", &pw, format!("d ≤ {} + {}", wg.d(), wh.d())));
    report.holds = ok && pw.d() <= k;

    if let (Some((u, v)), true) = (window, k > 0) {
        let units = p.product_units(u, v);
        let r = p.groupoid.restrict(&units)?;
        let rk = r.pull_arrows(&pw.k);
        let rl = r.pull_arrows(&pw.l);
        let label = format!("G×H|window ({} units)", units.len());
        let stage = match kl_dad_search(&r.groupoid, &rk, &rl, k - 1, SearchMode::Exact)? {
            None => Stage { d: Some(k - 1), ..Stage::new("window refutation", &label, Status::Refuted, "exact search") },
            Some(w) => Stage {
                status: Status::Certified,
                ..Stage::witness("window refutation", &label, &w, format!("d = {} suffices on the window", w.d()))
            },
        };
        report.push(stage);
    }
    Ok(report)
}

/// Union run over a partition of `G⁰`: part `i` gets a `d`-dimensional
/// control witness at `K_i¹⁵ ∩ G|_{X_i}`, `K_{i+1}` is `K_i¹⁵` joined with
/// its value, and the merged witness is checked at `(K_0, K_n⁵)`.
pub fn union_theorem(g: &Groupoid, parts: &[UnitSet], k0: &ArrowSet, d: usize, mode: SearchMode) -> Result<TheoremReport> {
    let mut report = TheoremReport::new("union");
    let mut ks = vec![k0.clone()];
    let mut witnesses = Vec::new();
    let mut used = 0;
    for (i, x) in parts.iter().enumerate() {
        let r = g.restrict(x)?;
        let label = format!("G|X{i}");
        let scale = g.power(ks.last().expect("non-empty"), 15);
        let local_k = r.pull_arrows(&scale);
        let control = ControlFunction::new(&r.groupoid, d, Rule::Discovered(mode));
        let (cover, value) = match stage_result(control.witness(&local_k).and_then(|c| Ok((c, control.value(&local_k)?))))? {
            Ok(v) => v,
            Err(e) => return Ok(report.fail(&format!("part {i}"), &label, e)),
        };
        let w = kl_dad_check(&r.groupoid, &local_k, &value, &cover)?;
        used = used.max(w.used_d());
        let units: Vec<u32> = x.iter().collect();
        report.push(Stage::witness(&format!("part {i}"), &label, &w, format!("units {units:?}")));
        witnesses.push(cover.classes().iter().map(|u| r.push_units(g, u)).collect());
        ks.push(g.symmetrize(&scale.union(&r.push_arrows(g, &value))));
    }
    let w = match stage_result(union_combine(g, parts, &witnesses, &ks))? {
        Ok(w) => w,
        Err(e) => return Ok(report.fail("union", "G", e)),
    };
    let ok = report.push(Stage::witness("union", "G", &w, format!("(K_0, K_{}⁵)", parts.len())));
    report.holds = ok && w.used_d() <= used;
    Ok(report)
}

/// Blow-up round trip along `ψ`: least witness on `G`, its lift to `G^ψ`,
/// least witness on `G^ψ` at the lifted scales, and its transfer back.
pub fn morita_theorem(g: &Groupoid, k: &ArrowSet, l: &ArrowSet, psi: &[u32], d_max: usize, mode: SearchMode) -> Result<TheoremReport> {
    let mut report = TheoremReport::new("morita");
    let b = blowup(g, psi)?;
    let Some(w) = search_stage(&mut report, "base search", "G", g, k, l, d_max, mode)? else { return Ok(report) };
    let lifted = match stage_result(blowup_lift(g, &b, &w))? {
        Ok(v) => v,
        Err(e) => return Ok(report.fail("lift", "G^ψ", e)),
    };
    if !report.push(Stage::witness("lift", "G^ψ", &lifted, "π⁻¹ of the base witness")) {
        return Ok(report);
    }
    let Some(up) = search_stage(&mut report, "blow-up search", "G^ψ", &b.groupoid, &lifted.k, &lifted.l, d_max, mode)? else {
        return Ok(report);
    };
    let down = match stage_result(blowup_transfer(g, &b, &up, k))? {
        Ok(v) => v,
        Err(e) => return Ok(report.fail("transfer", "G", e)),
    };
    let ok = report.push(Stage::witness("transfer", "G", &down, "ψ of the blow-up witness, bound π(L')"));
    report.holds = ok && lifted.d() == w.d() && up.d() == w.d() && down.d() == w.d();
    Ok(report)
}

/// dad → asdim → dad: least witness, its arrow-space decomposition, fiber
/// decompositions of `H_K(Y)` over `Y = s(K) ∪ r(K)` and the rebuilt witness.
pub fn bridge_theorem(g: &Groupoid, k: &ArrowSet, l: &ArrowSet, d_max: usize, mode: SearchMode) -> Result<TheoremReport> {
    let mut report = TheoremReport::new("bridge");
    let Some(w) = search_stage(&mut report, "dad search", "G", g, k, l, d_max, mode)? else { return Ok(report) };
    let to_asdim = match stage_result(dad_to_asdim(g, &w))? {
        Ok(v) => v,
        Err(e) => return Ok(report.fail("dad to asdim", "G", e)),
    };
    let status = if to_asdim.verdict.holds() { Status::Certified } else { Status::Failed };
    let dec = &to_asdim.decomposition;
    let ok = report.push(Stage {
        d: Some(dec.d()),
        decomposition: Some(dec.clone()),
        ..Stage::new("dad to asdim", "G", status, format!("{:?}", to_asdim.verdict))
    });
    if !ok {
        return Ok(report);
    }
    let y = g.endpoints(k);
    let Some(fibers) = fiber_decompositions(g, &y, k, l, d_max, mode)? else {
        return Ok(report.fail("fiber decompositions", "H_K(Y)", format!("some fiber needs more than {} families", d_max + 1)));
    };
    let fd = fibers.values().map(Decomposition::d).max().unwrap_or(0);
    report.push(Stage {
        d: Some(fd),
        fibers: Some(fibers.clone()),
        ..Stage::new("fiber decompositions", "H_K(Y)", Status::Certified, format!("{} fibers", fibers.len()))
    });
    let back = match stage_result(asdim_to_dad(g, &y, k, l, &fibers))? {
        Ok(v) => v,
        Err(e) => return Ok(report.fail("asdim to dad", "G|Y", e)),
    };
    let ok = report.push(Stage::witness("asdim to dad", "G|Y", &back.witness, format!("Y_* = {:?}", back.y_star.to_vec())));
    report.holds = ok && back.witness.d() == w.d() && dec.d() <= w.d();
    Ok(report)
}
