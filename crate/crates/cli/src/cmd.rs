use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use dadkit::build::random::random_principal;
use dadkit::build::{
    blowup, cyclic_rotation, line_graphing, pair_groupoid, partial_action_groupoid, product, rotation_graphing,
    tree_window, Blowup, PartialActionSpec, TreeShape,
};
use dadkit::coarse::{arrow_space, ef_asdim_search, effective_mode, fiber, treeable_cover, CoarseSpace, Graphing};
use dadkit::dad::kl_dad_search;
use dadkit::io::{self, Instance};
use dadkit::pipeline::{self, TheoremReport};
use dadkit::spec::SetEnv;
use dadkit::{ArrowSet, Error, Groupoid, SearchMode, UnitSet};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::tsv::{list, opt, row};
use crate::{AsdimArgs, BuildArgs, Cli, Command, Family, Mode, Scales, Shape, Space, SweepArgs, SweepFamily, Theorem};

pub const SUCCESS: u8 = 0;
pub const REFUTED: u8 = 1;
pub const INPUT_ERROR: u8 = 2;

pub fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Validate { paths } => validate(paths),
        Command::Dad { path, scales } => dad(cli, path, scales),
        Command::Asdim(args) => asdim(cli, args),
        Command::Theorem(t) => theorem(cli, t),
        Command::Sweep(args) => sweep(args),
        Command::Build(args) => build(cli, args),
    }
}

fn load(path: &Path) -> Result<Instance> {
    io::load(path).with_context(|| format!("loading {}", path.display()))
}

fn stem(path: &Path) -> String {
    path.file_stem().map_or_else(|| "instance".into(), |s| s.to_string_lossy().into_owned())
}

fn d_max(d: i64) -> Result<usize> {
    usize::try_from(d).map_err(|_| anyhow!("--d-max must be non-negative, got {d}"))
}

fn mode(m: Mode) -> SearchMode {
    match m {
        Mode::Exact => SearchMode::Exact,
        Mode::Greedy => SearchMode::Greedy,
    }
}

/// `K` from the k-spec, then `L` with `K` bound.
fn scales(inst: &Instance, s: &Scales) -> Result<(ArrowSet, ArrowSet)> {
    let mut env = SetEnv::new(&inst.groupoid, inst.graphing.as_ref());
    let k = env.define("K", &s.k)?;
    let l = env.define("L", &s.l)?;
    Ok((k, l))
}

/// Writes canonical JSON into `--out`, returning the path written.
fn artifact(cli: &Cli, name: &str, value: &serde_json::Value) -> Result<Option<PathBuf>> {
    let Some(dir) = &cli.out else { return Ok(None) };
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join(format!("{name}.json"));
    io::write_json(&path, value)?;
    Ok(Some(path))
}

fn shown(p: &Option<PathBuf>) -> String {
    p.as_ref().map_or_else(|| "-".into(), |p| p.display().to_string())
}

/// Unit lists such as `0-6`, `1,3,5` or `0-2,9`.
pub fn parse_ids(s: &str) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        match item.split_once('-') {
            Some((a, b)) => {
                let (a, b): (u32, u32) = (a.trim().parse()?, b.trim().parse()?);
                if a > b {
                    bail!("empty range `{item}`");
                }
                out.extend(a..=b);
            }
            None => out.push(item.parse()?),
        }
    }
    if out.is_empty() {
        bail!("empty id list `{s}`");
    }
    Ok(out)
}

fn unit_set(g: &Groupoid, ids: &[u32]) -> Result<UnitSet> {
    if let Some(u) = ids.iter().find(|&&u| u as usize >= g.n_units()) {
        bail!("unit {u} out of range");
    }
    Ok(g.unit_set(ids.iter().copied()))
}

fn validate(paths: &[PathBuf]) -> Result<u8> {
    let mut files = Vec::new();
    for p in paths {
        if p.is_dir() {
            let mut entries: Vec<PathBuf> = fs::read_dir(p)?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "json"))
                .collect();
            entries.sort();
            files.extend(entries);
        } else {
            files.push(p.clone());
        }
    }
    if files.is_empty() {
        bail!("no instance files given");
    }
    let mut code = SUCCESS;
    row(&["path", "status", "units", "arrows", "violations"]);
    for f in &files {
        let text = fs::read_to_string(f).with_context(|| format!("reading {}", f.display()))?;
        match io::parse_instance(&text) {
            Ok(inst) => {
                let g = &inst.groupoid;
                row(&[f.display().to_string(), "ok".into(), g.n_units().to_string(), g.n_arrows().to_string(), "0".into()]);
            }
            Err(Error::Invalid(report)) => {
                code = code.max(REFUTED);
                let n = report.violations.len().to_string();
                row(&[f.display().to_string(), "invalid".into(), "-".into(), "-".into(), n]);
                for v in &report.violations {
                    row(&[f.display().to_string(), "violation".into(), format!("{:?}", v.axiom), list(&v.arrows), v.detail.clone()]);
                }
            }
            Err(e) => {
                code = INPUT_ERROR;
                row(&[f.display().to_string(), "schema".into(), "-".into(), "-".into(), e.to_string()]);
            }
        }
    }
    Ok(code)
}

fn dad(cli: &Cli, path: &Path, s: &Scales) -> Result<u8> {
    let inst = load(path)?;
    let g = &inst.groupoid;
    let (k, l) = scales(&inst, s)?;
    let d_max = d_max(s.d_max)?;
    let found = kl_dad_search(g, &k, &l, d_max, mode(s.mode))?;
    let name = stem(path);
    row(&["instance", "k_spec", "l_spec", "d_max", "result", "d", "classes", "generated", "witness"]);
    let Some(w) = found else {
        row(&[name, s.k.clone(), s.l.clone(), d_max.to_string(), "none".into(), "-".into(), "-".into(), "-".into(), "-".into()]);
        return Ok(REFUTED);
    };
    let data = w.to_data();
    let value = json!({"instance": name, "k_spec": s.k, "l_spec": s.l, "bound": "L", "witness": data});
    let out = artifact(cli, &format!("dad-{name}"), &value)?;
    let sizes: Vec<usize> = w.cover.classes().iter().map(UnitSet::len).collect();
    row(&[
        name,
        s.k.clone(),
        s.l.clone(),
        d_max.to_string(),
        if w.certified { "certified" } else { "uncertified" }.into(),
        w.d().to_string(),
        list(&sizes),
        list(&data.generated_sizes),
        shown(&out),
    ]);
    Ok(if w.certified { SUCCESS } else { REFUTED })
}

fn asdim(cli: &Cli, a: &AsdimArgs) -> Result<u8> {
    let inst = load(&a.path)?;
    let g = &inst.groupoid;
    let name = stem(&a.path);
    if let Some(n) = a.treeable {
        return treeable(cli, &inst, &name, n);
    }
    let d_max = d_max(a.d_max)?;
    let mut env = SetEnv::new(g, inst.graphing.as_ref());
    let e = env.define("E", &a.e)?;
    let f = env.define("F", &a.f)?;
    let sets = [("E", &e), ("F", &f)];
    let spaces: Vec<(String, CoarseSpace)> = match a.space {
        Space::Arrows => vec![("arrows".into(), arrow_space(g, &sets)?)],
        Space::Fiber => {
            let units: Vec<u32> = match a.unit {
                Some(x) => vec![x],
                None => (0..g.n_units() as u32).collect(),
            };
            units.into_iter().map(|x| Ok((format!("fiber {x}"), fiber(g, x, &sets)?))).collect::<Result<_>>()?
        }
    };
    row(&["instance", "space", "points", "mode", "result", "d", "family_sizes"]);
    let mut code = SUCCESS;
    let mut found = Vec::new();
    for (label, space) in &spaces {
        let m = effective_mode(space.len(), mode(a.mode));
        let (ge, gf) = (space.gauge("E").expect("added"), space.gauge("F").expect("added"));
        let dec = ef_asdim_search(space, ge, gf, d_max, m)?;
        let mode_name = format!("{m:?}").to_lowercase();
        match dec {
            Some(dec) => {
                let sizes: Vec<usize> = dec.families.iter().map(Vec::len).collect();
                row(&[name.clone(), label.clone(), space.len().to_string(), mode_name, "found".into(), dec.d().to_string(), list(&sizes)]);
                found.push(json!({"space": label, "decomposition": dec}));
            }
            None => {
                code = REFUTED;
                row(&[name.clone(), label.clone(), space.len().to_string(), mode_name, "none".into(), "-".into(), "-".into()]);
                found.push(json!({"space": label, "decomposition": null}));
            }
        }
    }
    let value = json!({"instance": name, "e_spec": a.e, "f_spec": a.f, "d_max": d_max, "results": found});
    artifact(cli, &format!("asdim-{name}"), &value)?;
    Ok(code)
}

fn treeable(cli: &Cli, inst: &Instance, name: &str, n: u32) -> Result<u8> {
    let g = &inst.groupoid;
    let q = inst.graphing.as_ref().ok_or_else(|| anyhow!("--treeable needs a declared graphing"))?;
    let graphing = match Graphing::treeable(g, q) {
        Ok(gr) => gr,
        Err(Error::NotTreeable(msg)) => {
            row(&["instance", "result", "detail"]);
            row(&[name, "not-treeable", &msg]);
            return Ok(REFUTED);
        }
        Err(e) => return Err(e.into()),
    };
    let cover = treeable_cover(g, &graphing, n)?;
    row(&["class", "annulus", "family", "range", "size", "diameter"]);
    for (i, c) in cover.classes.iter().enumerate() {
        row(&[i, c.annulus as usize, c.family, c.range as usize, c.arrows.len(), c.diameter as usize]);
    }
    let cert = &cover.certificate;
    row(&["certificate", "n", "max_diameter", "min_gap_within", "min_gap_across", "asdim_holds", "holds", "d"]);
    row(&[
        "certificate".to_string(),
        n.to_string(),
        cert.max_diameter.to_string(),
        opt(cert.min_gap_within),
        opt(cert.min_gap_across),
        cert.asdim.holds().to_string(),
        cert.holds().to_string(),
        cover.decomposition.d().to_string(),
    ]);
    let classes: Vec<_> = cover
        .classes
        .iter()
        .map(|c| json!({"annulus": c.annulus, "family": c.family, "range": c.range, "arrows": c.arrows, "diameter": c.diameter}))
        .collect();
    let value = json!({
        "instance": name,
        "n": n,
        "classes": classes,
        "decomposition": cover.decomposition,
        "certificate": {
            "max_diameter": cert.max_diameter,
            "min_gap_within": cert.min_gap_within,
            "min_gap_across": cert.min_gap_across,
            "asdim_holds": cert.asdim.holds(),
            "holds": cert.holds(),
        },
    });
    artifact(cli, &format!("treeable-{name}-{n}"), &value)?;
    Ok(if cert.holds() { SUCCESS } else { REFUTED })
}

fn report_rows(report: &TheoremReport) {
    row(&["theorem", "stage", "groupoid", "status", "d", "detail"]);
    for s in &report.stages {
        let status = serde_json::to_value(s.status).expect("plain enum");
        let status = status.as_str().unwrap_or("-").to_string();
        row(&[report.theorem.clone(), s.name.clone(), s.groupoid.clone(), status, opt(s.d), s.detail.clone()]);
    }
    let verdict = if report.holds { "holds" } else { "fails" };
    let stage = report.failed_stage().map_or_else(|| "-".into(), |s| s.name.clone());
    row(&[report.theorem.clone(), "result".into(), "-".into(), verdict.into(), "-".into(), format!("failed stage: {stage}")]);
}

fn theorem(cli: &Cli, t: &Theorem) -> Result<u8> {
    let (name, params, report) = match t {
        Theorem::Product { left, right, scales: s, window } => {
            let (gi, hi) = (load(left)?, load(right)?);
            let (kg, lg) = scales(&gi, s)?;
            let (kh, lh) = scales(&hi, s)?;
            let (g, h) = (&gi.groupoid, &hi.groupoid);
            let win = match window {
                Some(w) => {
                    let ids = parse_ids(w)?;
                    Some((unit_set(g, &ids)?, unit_set(h, &ids)?))
                }
                None => None,
            };
            let report = pipeline::product_theorem(
                g,
                &kg,
                &lg,
                h,
                &kh,
                &lh,
                d_max(s.d_max)?,
                mode(s.mode),
                win.as_ref().map(|(u, v)| (u, v)),
            )?;
            let name = format!("product-{}-{}", stem(left), stem(right));
            (name, json!({"k_spec": s.k, "l_spec": s.l, "d_max": s.d_max, "window": window}), report)
        }
        Theorem::Union { path, parts, k, d, mode: m } => {
            let inst = load(path)?;
            let g = &inst.groupoid;
            let units = parts.split(';').map(|p| unit_set(g, &parse_ids(p)?)).collect::<Result<Vec<_>>>()?;
            let k0 = SetEnv::new(g, inst.graphing.as_ref()).eval(k)?;
            let report = pipeline::union_theorem(g, &units, &k0, *d, mode(*m))?;
            (format!("union-{}", stem(path)), json!({"k_spec": k, "parts": parts, "d": d}), report)
        }
        Theorem::Morita { path, copies, scales: s } => {
            let inst = load(path)?;
            let g = &inst.groupoid;
            let (k, l) = scales(&inst, s)?;
            if *copies == 0 {
                bail!("--copies must be positive");
            }
            let psi = Blowup::repeat_map(g.n_units(), *copies);
            let report = pipeline::morita_theorem(g, &k, &l, &psi, d_max(s.d_max)?, mode(s.mode))?;
            (format!("morita-{}", stem(path)), json!({"k_spec": s.k, "l_spec": s.l, "copies": copies}), report)
        }
        Theorem::Bridge { path, scales: s } => {
            let inst = load(path)?;
            let (k, l) = scales(&inst, s)?;
            let report = pipeline::bridge_theorem(&inst.groupoid, &k, &l, d_max(s.d_max)?, mode(s.mode))?;
            (format!("bridge-{}", stem(path)), json!({"k_spec": s.k, "l_spec": s.l, "d_max": s.d_max}), report)
        }
    };
    report_rows(&report);
    artifact(cli, &name, &json!({"parameters": params, "report": report}))?;
    Ok(if report.holds { SUCCESS } else { REFUTED })
}

fn window(family: SweepFamily, size: usize) -> Result<Instance> {
    Ok(match family {
        SweepFamily::Pair => {
            let g = pair_groupoid(size.max(1));
            let q = line_graphing(&g);
            Instance::with_graphing(g, q)
        }
        SweepFamily::Binary => {
            let t = tree_window(TreeShape::Binary(size as u32));
            Instance::with_graphing(t.groupoid, t.q)
        }
        SweepFamily::Cycle => {
            let g = cyclic_rotation(size.max(1))?;
            let q = rotation_graphing(&g, size.max(1));
            Instance::with_graphing(g, q)
        }
    })
}

fn sweep(a: &SweepArgs) -> Result<u8> {
    let sizes = parse_ids(&a.sizes)?;
    let d_max = d_max(a.scales.d_max)?;
    if a.annulus == 0 {
        bail!("--annulus must be positive");
    }
    let family = format!("{:?}", a.family).to_lowercase();
    row(&["family", "size", "units", "arrows", "d", "certified", "asdim"]);
    let mut code = SUCCESS;
    for size in sizes {
        let inst = window(a.family, size as usize)?;
        let g = &inst.groupoid;
        let (k, l) = scales(&inst, &a.scales)?;
        let (d, cert) = match kl_dad_search(g, &k, &l, d_max, mode(a.scales.mode))? {
            Some(w) => (w.d().to_string(), w.certified.to_string()),
            None => {
                code = REFUTED;
                ("none".into(), "-".into())
            }
        };
        let q = inst.graphing.as_ref().expect("sweep windows declare a graphing");
        let asdim = match Graphing::new(g, q) {
            Ok(gr) if gr.is_treeable() => {
                let cover = treeable_cover(g, &gr, a.annulus)?;
                if cover.certificate.asdim.holds() && cover.certificate.bounded() {
                    cover.decomposition.d().to_string()
                } else {
                    "fails".into()
                }
            }
            _ => "-".into(),
        };
        row(&[family.clone(), size.to_string(), g.n_units().to_string(), g.n_arrows().to_string(), d, cert, asdim]);
    }
    Ok(code)
}

fn build(cli: &Cli, a: &BuildArgs) -> Result<u8> {
    let need = |p: &Option<PathBuf>, flag: &str| p.as_deref().ok_or_else(|| anyhow!("--family needs {flag}")).and_then(load);
    let (label, inst) = match a.family {
        Family::Pair => {
            if a.n == 0 {
                bail!("--n must be positive");
            }
            let g = pair_groupoid(a.n);
            let q = line_graphing(&g);
            (format!("pair-{}", a.n), Instance::with_graphing(g, q))
        }
        Family::Action => {
            if a.n == 0 {
                bail!("--n must be positive");
            }
            let g = cyclic_rotation(a.n)?;
            let q = rotation_graphing(&g, a.n);
            (format!("rotation-{}", a.n), Instance::with_graphing(g, q))
        }
        Family::Partial => {
            if a.n == 0 {
                bail!("--n must be positive");
            }
            (format!("shift-{}", a.n), Instance::new(partial_action_groupoid(&PartialActionSpec::integer_shift(a.n))?))
        }
        Family::Tree => {
            let (shape, label) = match a.shape {
                Shape::Path => (TreeShape::Path(a.n.max(1)), format!("path-{}", a.n)),
                Shape::Binary => (TreeShape::Binary(a.n as u32), format!("binary-{}", a.n)),
            };
            let t = tree_window(shape);
            (label, Instance::with_graphing(t.groupoid, t.q))
        }
        Family::Product => {
            let (l, r) = (need(&a.left, "--left")?, need(&a.right, "--right")?);
            let p = product(&l.groupoid, &r.groupoid);
            let graphing = match (&l.graphing, &r.graphing) {
                (Some(ql), Some(qr)) => {
                    let mut q = p.product_set(ql, &r.groupoid.unit_arrows());
                    q.union_with(&p.product_set(&l.groupoid.unit_arrows(), qr));
                    Some(q)
                }
                _ => None,
            };
            let name = format!("product-{}-{}", stem(a.left.as_deref().unwrap()), stem(a.right.as_deref().unwrap()));
            (name, Instance { groupoid: p.groupoid, graphing })
        }
        Family::Blowup => {
            let base = need(&a.base, "--base")?;
            if a.copies == 0 {
                bail!("--copies must be positive");
            }
            let b = blowup(&base.groupoid, &Blowup::repeat_map(base.groupoid.n_units(), a.copies))?;
            (format!("blowup-{}-{}", stem(a.base.as_deref().unwrap()), a.copies), Instance::new(b.groupoid))
        }
        Family::Random => {
            if a.n == 0 {
                bail!("--n must be positive");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            (format!("random-{}-{}", a.n, cli.seed), Instance::new(random_principal(&mut rng, a.n, a.max_arrows)))
        }
    };
    let name = a.name.clone().unwrap_or(label);
    let g = &inst.groupoid;
    match &cli.out {
        Some(_) => {
            let value = serde_json::to_value(inst.to_file())?;
            let path = artifact(cli, &name, &value)?;
            row(&["name", "path", "units", "arrows", "principal"]);
            row(&[name, shown(&path), g.n_units().to_string(), g.n_arrows().to_string(), g.is_principal().to_string()]);
        }
        None => print!("{}", io::instance_json(&inst)),
    }
    Ok(SUCCESS)
}
