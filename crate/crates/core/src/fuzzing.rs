//! Entry points shared by the fuzz targets and the corpus replay test.
//! Each accepts arbitrary bytes and panics only on a broken invariant.

use crate::build::{line_graphing, pair_groupoid};
use crate::coarse::{ef_asdim_check, fiber, Decomposition};
use crate::cover::{Cover, CoverData};
use crate::dad::{DadWitness, WitnessData};
use crate::io::{instance_json, parse_instance};
use crate::spec::SetEnv;
use crate::Groupoid;

const UNITS: usize = 5;

fn text(data: &[u8]) -> Option<&str> {
    std::str::from_utf8(data).ok()
}

fn host() -> Groupoid {
    pair_groupoid(UNITS)
}

pub fn instance(data: &[u8]) {
    let Some(s) = text(data) else { return };
    let Ok(inst) = parse_instance(s) else { return };
    let json = instance_json(&inst);
    let again = parse_instance(&json).expect("canonical output re-parses");
    assert_eq!(instance_json(&again), json);
}

pub fn cover(data: &[u8]) {
    let Some(s) = text(data) else { return };
    let Ok(raw) = serde_json::from_str::<CoverData>(s) else { return };
    let g = host();
    let Ok(c) = Cover::from_data(&g, &raw) else { return };
    assert!(c.fold_number() <= c.len() || c.base().is_empty());
    assert_eq!(Cover::from_data(&g, &c.to_data()).unwrap(), c);
    for n in 1..=c.len().min(8) {
        if c.len() <= 63 {
            assert_eq!(c.check_nfold_subfamilies(n).unwrap(), c.fold_number() >= n);
        }
    }
}

pub fn witness(data: &[u8]) {
    let Some(s) = text(data) else { return };
    let Ok(raw) = serde_json::from_str::<WitnessData>(s) else { return };
    let g = host();
    let Ok(w) = DadWitness::from_data(&g, &raw) else { return };
    let back = DadWitness::from_data(&g, &w.to_data()).unwrap();
    assert_eq!(back, w);
}

pub fn decomposition(data: &[u8]) {
    let Some(s) = text(data) else { return };
    let Ok(d) = serde_json::from_str::<Decomposition>(s) else { return };
    let g = host();
    let k = g.symmetrize(&line_graphing(&g));
    let Ok(space) = fiber(&g, 0, &[("E", &k), ("F", &g.all_arrows())]) else { return };
    let (e, f) = (space.gauge("E").unwrap(), space.gauge("F").unwrap());
    if let Ok(v) = ef_asdim_check(&space, e, f, &d) {
        assert!(v.unbounded.is_none(), "F is the complete gauge");
    }
}

pub fn set_spec(data: &[u8]) {
    let Some(s) = text(data) else { return };
    let g = host();
    let graphing = line_graphing(&g);
    let mut env = SetEnv::new(&g, Some(&graphing));
    env.define("K", "ball:1").unwrap();
    if let Ok(set) = env.eval(s) {
        assert!(g.is_oc_normal(&set));
    }
}
