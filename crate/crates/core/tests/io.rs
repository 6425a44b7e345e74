use std::path::PathBuf;

use dadkit::build::random::random_principal;
use dadkit::build::{
    blowup, cyclic_rotation, disjoint_union, line_graphing, pair_groupoid, partial_action_groupoid, product,
    rotation_graphing, tree_window, Blowup, PartialActionSpec, TreeShape,
};
use dadkit::groupoid::Axiom;
use dadkit::io::{instance_json, parse_instance, to_canonical, Instance, InstanceFile};
use dadkit::{Error, Groupoid};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn pair(n: usize) -> Instance {
    let g = pair_groupoid(n);
    let q = line_graphing(&g);
    Instance::with_graphing(g, q)
}

fn goldens() -> Vec<(&'static str, Instance)> {
    let z8 = cyclic_rotation(8).unwrap();
    let z8q = rotation_graphing(&z8, 8);
    let tree = tree_window(TreeShape::Binary(3));
    let shift = partial_action_groupoid(&PartialActionSpec::integer_shift(10)).unwrap();
    vec![
        ("p3", pair(3)),
        ("p4", pair(4)),
        ("p7", pair(7)),
        ("p13", pair(13)),
        ("z8", Instance::with_graphing(z8, z8q)),
        ("binary3", Instance::with_graphing(tree.groupoid, tree.q)),
        ("two_component", Instance::new(disjoint_union(&pair_groupoid(4), &pair_groupoid(3)))),
        ("shift10", Instance::new(shift)),
    ]
}

/// `p3` with the first non-identity triple pointed at a wrong arrow.
fn corrupted_p3() -> (String, [u32; 3]) {
    let mut file = pair(3).to_file();
    let t = &mut file.comp[0];
    t[2] = if t[2] == 3 { 4 } else { 3 };
    let bad = *t;
    (to_canonical(&file), bad)
}

#[test]
fn goldens_match_builders() {
    let dir = fixtures().join("instances");
    let bless = std::env::var_os("DADKIT_BLESS").is_some();
    for (name, inst) in goldens() {
        let path = dir.join(format!("{name}.json"));
        let text = instance_json(&inst);
        if bless {
            std::fs::create_dir_all(&dir).unwrap();
            std::fs::write(&path, &text).unwrap();
        }
        let on_disk = std::fs::read_to_string(&path).unwrap();
        assert_eq!(on_disk, text, "{name}");
        let loaded = parse_instance(&on_disk).unwrap();
        assert_eq!(loaded.groupoid, inst.groupoid, "{name}");
        assert_eq!(loaded.graphing, inst.graphing, "{name}");
        assert_eq!(instance_json(&loaded), on_disk, "{name}");
    }
    let bad = fixtures().join("invalid/p3_bad_comp.json");
    if bless {
        std::fs::create_dir_all(bad.parent().unwrap()).unwrap();
        std::fs::write(&bad, corrupted_p3().0).unwrap();
    }
    assert_eq!(std::fs::read_to_string(bad).unwrap(), corrupted_p3().0);
}

#[test]
fn p7_golden_has_49_arrows() {
    let inst = dadkit::io::load(fixtures().join("instances/p7.json")).unwrap();
    assert_eq!(inst.groupoid.n_units(), 7);
    assert_eq!(inst.groupoid.n_arrows(), 49);
    assert!(inst.groupoid.is_principal());
    assert_eq!(inst.graphing.unwrap().len(), 12);
}

#[test]
fn corrupted_triple_is_named() {
    let (text, [a, b, c]) = corrupted_p3();
    let err = parse_instance(&text).unwrap_err();
    let Error::Invalid(report) = &err else { panic!("{err}") };
    assert!(report.mentions(Axiom::CompositionEndpoints, c));
    assert!(err.to_string().contains(&format!("[{a}, {b}, {c}]")), "{err}");
}

#[test]
fn small_file_from_docs() {
    let text = r#"{"arrows":[{"id":2,"rng":0,"src":1},{"id":3,"rng":1,"src":0}],
        "comp":[[2,3,0],[3,2,1]],"inv":[0,1,3,2],"units":2}"#;
    let inst = parse_instance(text).unwrap();
    assert_eq!(inst.groupoid, pair_groupoid(2));
    assert!(inst.graphing.is_none());
}

#[test]
fn schema_errors() {
    let file = pair(3).to_file();
    let edit = |f: &dyn Fn(&mut InstanceFile)| {
        let mut file = file.clone();
        f(&mut file);
        Instance::from_file(&file)
    };
    assert!(matches!(edit(&|f| f.arrows[0].id = 1), Err(Error::Schema(_))));
    assert!(matches!(edit(&|f| f.arrows[1].id = f.arrows[0].id), Err(Error::Schema(_))));
    assert!(matches!(edit(&|f| f.arrows[0].id = 99), Err(Error::Schema(_))));
    assert!(matches!(edit(&|f| { f.inv.pop(); }), Err(Error::Schema(_))));
    assert!(matches!(edit(&|f| f.graphing = Some(vec![9])), Err(Error::Schema(_))));
    assert!(matches!(edit(&|f| f.arrows[0].src = 7), Err(Error::Invalid(_))));
    assert!(matches!(edit(&|f| { f.comp.pop(); }), Err(Error::Invalid(_))));
    assert!(matches!(edit(&|f| f.inv[3] = 3), Err(Error::Invalid(_))));
    assert!(matches!(parse_instance(r#"{"units":1,"arrows":[],"inv":[0],"comp":[],"extra":1}"#), Err(Error::Json(_))));
    assert!(matches!(parse_instance("{"), Err(Error::Json(_))));
    assert!(matches!(parse_instance(r#"{"units":1,"arrows":[],"inv":[0],"comp":[[0,0,5]]}"#), Err(Error::Invalid(_))));
}

#[test]
fn identity_triples_are_optional() {
    let inst = pair(4);
    let mut file = inst.to_file();
    let raw = inst.groupoid.to_raw();
    file.comp = raw.comp.clone();
    assert_eq!(Instance::from_file(&file).unwrap().groupoid, inst.groupoid);
    assert!(file.comp.len() > inst.to_file().comp.len());
}

#[test]
fn canonical_keys_are_sorted() {
    #[derive(serde::Serialize)]
    struct Unsorted {
        zeta: u32,
        alpha: Vec<Vec<u32>>,
        mid: Vec<u32>,
    }
    let text = to_canonical(&Unsorted { zeta: 1, alpha: vec![vec![1, 2], vec![]], mid: vec![3] });
    assert_eq!(text, "{\n  \"alpha\": [\n    [1,2],\n    []\n  ],\n  \"mid\": [3],\n  \"zeta\": 1\n}\n");
}

fn round_trip(g: &Groupoid) {
    let inst = Instance::new(g.clone());
    let text = instance_json(&inst);
    let back = parse_instance(&text).unwrap();
    assert_eq!(&back.groupoid, g);
    assert_eq!(instance_json(&back), text);
}

#[test]
fn builder_round_trips() {
    let p3 = pair_groupoid(3);
    let Blowup { groupoid: b, .. } = blowup(&p3, &Blowup::repeat_map(3, 2)).unwrap();
    round_trip(&b);
    round_trip(&product(&p3, &pair_groupoid(2)).groupoid);
    round_trip(&cyclic_rotation(5).unwrap());
    round_trip(&tree_window(TreeShape::Path(6)).groupoid);
    round_trip(&pair_groupoid(1));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_round_trip(seed in any::<u64>(), n in 1usize..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        round_trip(&random_principal(&mut rng, n, 60));
    }
}
