mod common;

use bq_core::dual::{build_dual, match_characters, validate_dual};
use bq_core::extract::extract_irreps_numeric;
use bq_core::group::{build_group, default_battery, GroupSpec};
use num_complex::Complex64;

#[test]
fn catalog_and_numeric_duals_agree_on_the_battery() {
    for spec in default_battery() {
        let g = build_group(&spec, 64).unwrap();
        let catalog = build_dual(&g).unwrap();
        let numeric = extract_irreps_numeric(&g, 7).unwrap();
        assert!(validate_dual(&g, &catalog).passed(), "{spec}");
        assert!(validate_dual(&g, &numeric).passed(), "{spec}");
        let worst = match_characters(&catalog.characters(), &numeric.characters());
        assert!(worst.is_some_and(|w| w < 1e-8), "{spec}: {worst:?}");
    }
}

#[test]
fn numeric_extraction_is_seed_deterministic() {
    let g = build_group(&GroupSpec::Symmetric(3), 64).unwrap();
    let a = extract_irreps_numeric(&g, 11).unwrap();
    let b = extract_irreps_numeric(&g, 11).unwrap();
    assert_eq!(a, b);
    let mut dims = a.dims();
    dims.sort();
    assert_eq!(dims, [1, 1, 2]);
}

#[test]
fn weights_and_regular_character() {
    for spec in default_battery() {
        let g = build_group(&spec, 64).unwrap();
        let d = build_dual(&g).unwrap();
        let n = g.order() as f64;
        let total: f64 = (0..d.len()).map(|xi| d.weight(xi) * d.dim(xi) as f64).sum();
        assert!((total - 1.0).abs() < 1e-14);
        let chars = d.characters();
        for x in g.elements() {
            let v: Complex64 = (0..d.len()).map(|xi| chars[xi][x] * d.dim(xi) as f64).sum::<Complex64>() / n;
            let expected = if x == 0 { 1.0 } else { 0.0 };
            assert!((v - Complex64::new(expected, 0.0)).norm() < 1e-9);
        }
    }
}

#[test]
fn products_of_catalog_groups_have_validated_duals() {
    for s in
        ["product(dihedral(3),cyclic(2))", "product(quaternion8,quaternion8)", "product(symmetric(3),symmetric(3))"]
    {
        let (g, d) = common::setup(s);
        assert!(validate_dual(&g, &d).passed(), "{s}");
    }
}
