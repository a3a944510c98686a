mod common;

use bq_core::fourier::{big_trace, bpp_norm, fourier, inverse_fourier, pairing, Orientation};
use bq_core::linalg::{self, schatten_norm};
use bq_core::random;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn plancherel_and_round_trip(seed in any::<u64>(), which in 0usize..8) {
        let (g, d) = common::pick(which);
        let u = random::function(&mut random::rng(seed, 0), g.order());
        let fu = fourier(&d, &u).unwrap();
        let lhs = u.norm_sqr();
        prop_assert!((lhs - fu.norm_sqr(&d)).abs() <= 1e-10 * lhs.max(1.0));
        prop_assert!(inverse_fourier(&d, &fu).unwrap().max_abs_diff(&u) < 1e-12);
        // p = 1 endpoint of Hausdorff-Young
        let l1: f64 = u.values().iter().map(|z| z.norm()).sum();
        for b in &fu.blocks {
            prop_assert!(linalg::operator_norm(b) <= l1 + 1e-12);
        }
    }

    #[test]
    fn schatten_ordering_and_hs(seed in any::<u64>(), n in 1usize..5) {
        let m = random::matrix(&mut random::rng(seed, 1), n, n);
        let (inf, two, one) = (
            schatten_norm(&m, f64::INFINITY).unwrap(),
            schatten_norm(&m, 2.0).unwrap(),
            schatten_norm(&m, 1.0).unwrap(),
        );
        prop_assert!(inf <= two + 1e-12 && two <= one + 1e-12);
        let tr = linalg::trace(&(&m * m.adjoint())).re;
        prop_assert!((two * two - tr).abs() <= 1e-12 * tr.max(1.0));
    }

    #[test]
    fn pairing_holder_and_symmetry(seed in any::<u64>(), which in 0usize..8) {
        let (_, d) = common::pick(which);
        let mut r = random::rng(seed, 2);
        let f = random::symbol(&mut r, &d, Orientation::DualFirst);
        let h = random::symbol(&mut r, &d, Orientation::DualFirst);
        let p = pairing(&f, &h).unwrap();
        prop_assert!((p - pairing(&h, &f).unwrap().conj()).norm() < 1e-12);
        let bound = bpp_norm(&f, 1.0).unwrap() * bpp_norm(&h, f64::INFINITY).unwrap();
        prop_assert!(p.norm() <= bound + 1e-10);
        let ff = pairing(&f, &f).unwrap();
        prop_assert!((ff.re - bpp_norm(&f, 2.0).unwrap().powi(2)).abs() < 1e-10 * ff.re.max(1.0));
        let fh = f.pointwise(&h).unwrap();
        prop_assert!(bpp_norm(&fh, 1.0).unwrap() <= bpp_norm(&f, 2.0).unwrap() * bpp_norm(&h, 2.0).unwrap() + 1e-10);
        let tr = big_trace(&f.star().pointwise(&f).unwrap()).unwrap();
        prop_assert!(tr.re >= -1e-12 && tr.im.abs() < 1e-10);
        let lin = big_trace(&f.add(&h).unwrap()).unwrap() - big_trace(&f).unwrap() - big_trace(&h).unwrap();
        prop_assert!(lin.norm() < 1e-10);
    }
}

#[test]
fn big_trace_of_one_equals_order() {
    for s in common::SMALL {
        let (g, d) = common::setup(s);
        let one = bq_core::fourier::SymbolField::one(&d, Orientation::DualFirst);
        assert!((big_trace(&one).unwrap().re - g.order() as f64).abs() < 1e-12, "{s}");
    }
}
