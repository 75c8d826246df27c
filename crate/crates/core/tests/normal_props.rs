use dicelab_core::clt::{
    approximation_report, normal_pdf, normal_quantile, standardized_distribution, std_normal_cdf,
    Continuity, NormalParams,
};
use dicelab_core::exact::to_f64;
use dicelab_core::space::DieSpec;
use proptest::prelude::*;

/// `(x, Φ(x), φ(x))` from a 40-digit mpmath run (tests/oracles/clt_reference.py).
const TABLE: [(f64, f64, f64); 65] = [
    (-8.0, 6.220960574271784e-16, 5.052271083536892e-15),
    (-7.75, 4.5946274357785954e-15, 3.618294451112517e-14),
    (-7.5, 3.1908916729108963e-14, 2.4343205330290096e-13),
    (-7.25, 2.0838581586720695e-13, 1.538537950561275e-12),
    (-7.0, 1.279812543885835e-12, 9.134720408364594e-12),
    (-6.75, 7.392257778017822e-12, 5.0949379588436835e-11),
    (-6.5, 4.016000583859118e-11, 2.669556614762852e-10),
    (-6.25, 2.0522634252189388e-10, 1.3140018181558838e-09),
    (-6.0, 9.86587645037698e-10, 6.075882849823285e-09),
    (-5.75, 4.462172453901612e-09, 2.6392432035705732e-08),
    (-5.5, 1.8989562465887718e-08, 1.0769760042543276e-07),
    (-5.25, 7.604960516488715e-08, 4.1284709886299984e-07),
    (-5.0, 2.866515718791939e-07, 1.4867195147342977e-06),
    (-4.75, 1.0170832425687032e-06, 5.029507288592445e-06),
    (-4.5, 3.3976731247300603e-06, 1.5983741106905475e-05),
    (-4.25, 1.068852577493442e-05, 4.7718636541204945e-05),
    (-4.0, 3.1671241833119924e-05, 0.00013383022576488534),
    (-3.75, 8.841728520080387e-05, 0.0003525956823674454),
    (-3.5, 0.00023262907903552504, 0.00087268269504576),
    (-3.25, 0.000577025042390767, 0.0020290480572997677),
    (-3.0, 0.0013498980316300946, 0.0044318484119380075),
    (-2.75, 0.002979763235054557, 0.009093562501591053),
    (-2.5, 0.006209665325776135, 0.017528300493568537),
    (-2.25, 0.012224472655044703, 0.03173965183566742),
    (-2.0, 0.02275013194817921, 0.05399096651318805),
    (-1.75, 0.04005915686381709, 0.08627731882651152),
    (-1.5, 0.06680720126885807, 0.12951759566589172),
    (-1.25, 0.10564977366685525, 0.18264908538902191),
    (-1.0, 0.15865525393145705, 0.24197072451914334),
    (-0.75, 0.2266273523768682, 0.30113743215480443),
    (-0.5, 0.3085375387259869, 0.35206532676429947),
    (-0.25, 0.4012936743170763, 0.3866681168028492),
    (0.0, 0.5, 0.3989422804014327),
    (0.25, 0.5987063256829237, 0.3866681168028492),
    (0.5, 0.6914624612740131, 0.35206532676429947),
    (0.75, 0.7733726476231318, 0.30113743215480443),
    (1.0, 0.8413447460685429, 0.24197072451914334),
    (1.25, 0.8943502263331448, 0.18264908538902191),
    (1.5, 0.9331927987311419, 0.12951759566589172),
    (1.75, 0.9599408431361829, 0.08627731882651152),
    (2.0, 0.9772498680518208, 0.05399096651318805),
    (2.25, 0.9877755273449553, 0.03173965183566742),
    (2.5, 0.9937903346742238, 0.017528300493568537),
    (2.75, 0.9970202367649454, 0.009093562501591053),
    (3.0, 0.9986501019683699, 0.0044318484119380075),
    (3.25, 0.9994229749576092, 0.0020290480572997677),
    (3.5, 0.9997673709209645, 0.00087268269504576),
    (3.75, 0.9999115827147992, 0.0003525956823674454),
    (4.0, 0.9999683287581669, 0.00013383022576488534),
    (4.25, 0.9999893114742251, 4.7718636541204945e-05),
    (4.5, 0.9999966023268753, 1.5983741106905475e-05),
    (4.75, 0.9999989829167575, 5.029507288592445e-06),
    (5.0, 0.9999997133484281, 1.4867195147342977e-06),
    (5.25, 0.9999999239503948, 4.1284709886299984e-07),
    (5.5, 0.9999999810104375, 1.0769760042543276e-07),
    (5.75, 0.9999999955378276, 2.6392432035705732e-08),
    (6.0, 0.9999999990134123, 6.075882849823285e-09),
    (6.25, 0.9999999997947736, 1.3140018181558838e-09),
    (6.5, 0.99999999995984, 2.669556614762852e-10),
    (6.75, 0.9999999999926077, 5.0949379588436835e-11),
    (7.0, 0.9999999999987201, 9.134720408364594e-12),
    (7.25, 0.9999999999997916, 1.538537950561275e-12),
    (7.5, 0.9999999999999681, 2.4343205330290096e-13),
    (7.75, 0.9999999999999954, 3.618294451112517e-14),
    (8.0, 0.9999999999999993, 5.052271083536892e-15),
];

/// Maclaurin series of Φ, accurate to f64 precision for |x| <= 2.
fn series_phi(x: f64) -> f64 {
    let mut term = x;
    let mut total = x;
    for n in 1..60 {
        term *= -x * x / (2.0 * n as f64);
        total += term / (2 * n + 1) as f64;
    }
    0.5 + total / (2.0 * std::f64::consts::PI).sqrt()
}

#[test]
fn cdf_and_pdf_against_table() {
    let std = NormalParams::standard();
    for (x, phi, pdf) in TABLE {
        assert!((std_normal_cdf(x) - phi).abs() <= 1e-12, "Phi({x})");
        assert!((normal_pdf(x, &std) - pdf).abs() <= 1e-12 * pdf, "pdf({x})");
    }
}

#[test]
fn phi_one_by_series() {
    assert!((series_phi(1.0) - 0.841344746068543).abs() < 1e-14);
    assert!((std_normal_cdf(1.0) - series_phi(1.0)).abs() < 1e-14);
    for x in [-1.5, -0.25, 0.4, 1.9] {
        assert!((std_normal_cdf(x) - series_phi(x)).abs() < 1e-13, "x={x}");
    }
}

#[test]
fn tails_and_monotonicity() {
    assert!(std_normal_cdf(-8.0) < 1e-14);
    assert!(std_normal_cdf(8.0) > 1.0 - 1e-14);
    let mut prev = 0.0;
    for i in -4000..=4000 {
        let v = std_normal_cdf(i as f64 / 400.0);
        assert!(v >= prev);
        prev = v;
    }
}

#[test]
fn quantile_round_trip_grid() {
    for i in -50..=50 {
        let z = i as f64 / 10.0;
        assert!(
            (normal_quantile(std_normal_cdf(z)).unwrap() - z).abs() <= 1e-9,
            "z={z}"
        );
    }
}

proptest! {
    #[test]
    fn quantile_then_cdf(q in 1e-12f64..(1.0 - 1e-12)) {
        let z = normal_quantile(q).unwrap();
        prop_assert!((std_normal_cdf(z) - q).abs() <= 1e-9);
    }

    #[test]
    fn cdf_then_quantile(z in -5.0f64..5.0) {
        prop_assert!((normal_quantile(std_normal_cdf(z)).unwrap() - z).abs() <= 1e-9);
    }

    #[test]
    fn standardized_moments(
        weights in prop::collection::vec(0u64..=6, 2..=6)
            .prop_filter("two distinct positive faces", |w| w.iter().filter(|&&x| x > 0).count() >= 2),
        d in 1usize..=12,
    ) {
        let pairs: Vec<(i64, u64)> = weights.iter().enumerate().map(|(i, &w)| (i as i64 + 1, w)).collect();
        let die = DieSpec::weighted(&pairs).unwrap();
        let z = standardized_distribution(&die, d).unwrap();
        let mean: f64 = z.iter().map(|(x, m)| x * to_f64(m)).sum();
        let var: f64 = z.iter().map(|(x, m)| x * x * to_f64(m)).sum();
        prop_assert!(mean.abs() <= 1e-12, "mean {}", mean);
        prop_assert!((var - 1.0).abs() <= 1e-12, "var {}", var);
    }
}

#[test]
fn band_share_near_rule_of_thumb() {
    let z = standardized_distribution(&DieSpec::fair(1..=6), 10).unwrap();
    let inside: f64 = z
        .iter()
        .filter(|(x, _)| x.abs() <= 1.0)
        .map(|(_, m)| to_f64(m))
        .sum();
    assert!((inside - 0.6827).abs() < 0.02);
}

#[test]
fn total_variation_decreases() {
    let loaded = DieSpec::weighted(&[(1, 1), (2, 1), (3, 1), (4, 1), (5, 1), (6, 5)]).unwrap();
    for die in [DieSpec::fair(1..=6), loaded] {
        let tv: Vec<f64> = [1, 2, 4, 8]
            .iter()
            .map(|&d| {
                approximation_report(&die, d, Continuity::On)
                    .unwrap()
                    .total_variation
            })
            .collect();
        assert!(tv.windows(2).all(|w| w[1] < w[0]), "{tv:?}");
        assert!(tv.iter().all(|t| (0.0..=1.0).contains(t)));
    }
    let sup: Vec<f64> = [2, 4, 8]
        .iter()
        .map(|&d| {
            approximation_report(&DieSpec::fair(1..=6), d, Continuity::Off)
                .unwrap()
                .sup_error
        })
        .collect();
    assert!(sup.windows(2).all(|w| w[1] <= w[0]), "{sup:?}");
}
