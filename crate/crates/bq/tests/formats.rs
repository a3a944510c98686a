use bq::cli::{load_dual, load_group};
use bq::formats::{matrix_from_json, matrix_to_json, to_json_string, DualJson, GroupJson, SymbolJson};
use bq::BqError;
use bq_core::fourier::Orientation;
use bq_core::linalg::CMatrix;
use bq_core::random;
use num_complex::Complex64;

fn json<T: serde::Serialize>(v: &T) -> String {
    to_json_string(v).unwrap()
}

#[test]
fn complex_matrices_are_re_im_pairs() {
    let m = CMatrix::from_row_slice(1, 2, &[Complex64::new(1.0, -2.0), Complex64::new(0.5, 0.0)]);
    let text = serde_json::to_string(&matrix_to_json(&m)).unwrap();
    assert_eq!(text, "[[[1.0,-2.0],[0.5,0.0]]]");
    assert_eq!(matrix_from_json(&matrix_to_json(&m)).unwrap(), m);
    assert!(matches!(matrix_from_json(&vec![vec![[0.0, 0.0]], vec![]]), Err(BqError::Format(_))));
}

#[test]
fn group_round_trip_and_validation() {
    let g = load_group("D4", 64).unwrap();
    let parsed: GroupJson = serde_json::from_str(&json(&GroupJson::from_group(&g))).unwrap();
    assert_eq!(parsed.into_group().unwrap().table(), g.table());

    let mut broken = GroupJson::from_group(&g);
    broken.mul[1][1] = 1;
    assert!(matches!(broken.into_group(), Err(BqError::Format(_))));
    let mut short = GroupJson::from_group(&g);
    short.order = 7;
    assert!(short.into_group().is_err());
}

#[test]
fn dual_round_trip_is_revalidated() {
    let g = load_group("S3", 64).unwrap();
    let d = load_dual(&g, None, 7).unwrap();
    let parsed: DualJson = serde_json::from_str(&json(&DualJson::from_dual(&d))).unwrap();
    let back = parsed.into_dual(&g).unwrap();
    assert_eq!(back.dims(), d.dims());

    let mut missing = DualJson::from_dual(&d);
    missing.irreps.pop();
    assert!(matches!(missing.into_dual(&g), Err(BqError::Format(msg)) if msg.contains("completeness")));
    let mut scaled = DualJson::from_dual(&d);
    scaled.irreps[0].matrices[1][0][0] = [2.0, 0.0];
    assert!(scaled.into_dual(&g).is_err());
}

#[test]
fn symbol_round_trip_keeps_orientation() {
    let g = load_group("Q8", 64).unwrap();
    let d = load_dual(&g, None, 7).unwrap();
    for o in [Orientation::DualFirst, Orientation::GroupFirst] {
        let f = random::symbol(&mut random::rng(1, 0), &d, o);
        let text = json(&SymbolJson::from_symbol(&f));
        assert!(text.contains(o.as_str()));
        let back = serde_json::from_str::<SymbolJson>(&text).unwrap().into_symbol(&d).unwrap();
        assert_eq!(back, f);
        assert_eq!(text, json(&SymbolJson::from_symbol(&back)));
    }
    let mut partial = SymbolJson::from_symbol(&random::symbol(&mut random::rng(2, 0), &d, Orientation::DualFirst));
    partial.blocks.remove("0,0");
    assert!(partial.into_symbol(&d).is_err());
}

#[test]
fn file_groups_without_catalog_use_numeric_duals() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    let mut gj = GroupJson::from_group(&load_group("S3", 64).unwrap());
    gj.name = "custom".into();
    std::fs::write(&path, json(&gj)).unwrap();
    let g = load_group(&format!("file:{}", path.display()), 64).unwrap();
    assert!(g.spec().is_none());
    let d = load_dual(&g, None, 7).unwrap();
    let mut dims = d.dims();
    dims.sort_unstable();
    assert_eq!(dims, vec![1, 1, 2]);
    assert!(matches!(load_group(&format!("file:{}", path.display()), 5), Err(BqError::Core(_))));
}
