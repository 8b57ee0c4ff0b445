mod common;

use std::path::PathBuf;

use complexforge::builtins::{bing_house_cubical, builtin, wedge_circles, BuiltinEntry, NAMES};
use complexforge::collapse::is_collapsed;
use complexforge::contractibility::{contractibility_status, DEFAULT_BUDGET};
use complexforge::euler_characteristic;
use complexforge::homology::homology;
use complexforge::thickening::boundary_complex;
use num_traits::ToPrimitive;
use serde_json::json;

fn check(b: &BuiltinEntry) {
    let x = &b.complex;
    let e = &b.expected;
    assert_eq!(euler_characteristic(x), e.chi, "{}", b.name);
    assert_eq!(is_collapsed(x).0, e.collapsed, "{}", b.name);
    let h = homology(x);
    assert_eq!(h.betti, e.betti, "{}", b.name);
    assert_eq!(common::rational_betti(x), e.betti, "{}", b.name);
    let torsion: Vec<u64> = h.torsion1.iter().map(|t| t.to_u64().unwrap()).collect();
    assert_eq!(torsion, e.torsion, "{}", b.name);
    assert_eq!(contractibility_status(x, DEFAULT_BUDGET).label(), e.status, "{}", b.name);
    match (&b.embedding, &e.boundary_chis) {
        (Some(emb), Some(chis)) => {
            let r = boundary_complex(x, emb).unwrap();
            assert_eq!(&r.component_chis(), chis, "{}", b.name);
        }
        (None, None) => {}
        _ => panic!("{}: embedding and boundary expectation disagree", b.name),
    }
}

#[test]
fn every_builtin_matches_its_stats() {
    for name in NAMES {
        check(&builtin(name).unwrap());
    }
    for k in 0..5 {
        check(&wedge_circles(k));
    }
    check(&bing_house_cubical());
}

#[test]
fn bing_house_matches_golden_file() {
    let b = builtin("bing_house").unwrap();
    let doc = json!({
        "complex": b.complex.to_raw(),
        "embedding": b.embedding.as_ref().unwrap().to_raw(&b.complex),
    });
    let text = serde_json::to_string_pretty(&doc).unwrap() + "\n";
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/bing_house.json");
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &text).unwrap();
    }
    let golden = std::fs::read_to_string(&path).expect("golden file present");
    assert_eq!(text, golden);
}
