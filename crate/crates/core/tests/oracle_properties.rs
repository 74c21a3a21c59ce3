use hypdyn::oracle::{
    flood_components, flood_components_in_order, julia_viewport, mask_disagreement,
    rasterize_julia_mask, BinaryMask, MaskSource, ScanOrder,
};
use hypdyn::{EscapeConfig, HyperbolicNumber};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn off_walls(v: f64) -> bool {
    v.abs() >= 0.05 && v.abs() <= 3.0 && (v + 2.0).abs() >= 0.05 && (v - 0.25).abs() >= 0.05
}

#[test]
fn analytic_and_escape_sources_agree_near_the_boundary_only() {
    let cfg = EscapeConfig::new(500, 4.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(51);
    let mut params = vec![(-1.0, -1.0), (-2.5, -1.0), (-2.5, -2.5), (0.5, -1.0)];
    while params.len() < 12 {
        let mag = |rng: &mut ChaCha8Rng| {
            let m: f64 = rng.gen_range(0.05..=3.0);
            if rng.gen_bool(0.5) {
                m
            } else {
                -m
            }
        };
        let (c_x, c_y) = (mag(&mut rng), mag(&mut rng));
        if off_walls(c_x) && off_walls(c_y) {
            params.push((c_x, c_y));
        }
    }
    for (c_x, c_y) in params {
        let c = HyperbolicNumber::from_char_xy(c_x, c_y);
        let spec = julia_viewport(c, 256).unwrap();
        let analytic = rasterize_julia_mask(c, &spec, &cfg, MaskSource::Analytic, 2).unwrap();
        let escape = rasterize_julia_mask(c, &spec, &cfg, MaskSource::Escape, 2).unwrap();
        let diff = mask_disagreement(&analytic, &escape);
        let perimeter = analytic.boundary_pixels();
        assert!(
            diff <= 4 * perimeter,
            "c = ({c_x}, {c_y}): {diff} disagreeing pixels, perimeter {perimeter}"
        );
    }
}

#[test]
fn cantor_product_components_shrink_with_resolution() {
    let cfg = EscapeConfig::default();
    let c = HyperbolicNumber::from_char_xy(-2.5, -2.5);
    let mut fractions = Vec::new();
    for res in [256, 512, 1024] {
        let spec = julia_viewport(c, res).unwrap();
        let mask = rasterize_julia_mask(c, &spec, &cfg, MaskSource::Analytic, 2).unwrap();
        let report = flood_components(&mask);
        assert!(report.component_count >= 2);
        fractions.push((res, report.max_component_diameter_px));
    }
    for w in fractions.windows(2) {
        let ((r0, d0), (r1, d1)) = (w[0], w[1]);
        assert!(
            d1 as f64 / r1 as f64 <= d0 as f64 / r0 as f64,
            "diameter fraction grew: {fractions:?}"
        );
    }
    let (res, d) = fractions[2];
    assert!(d <= res / 64, "{fractions:?}");
}

fn mask_strategy() -> impl Strategy<Value = BinaryMask> {
    (1usize..24, 1usize..24, 0.0f64..1.0).prop_flat_map(|(w, h, density)| {
        proptest::collection::vec(proptest::bool::weighted(density.clamp(0.01, 0.99)), w * h)
            .prop_map(move |bits| BinaryMask::new(w, h, bits))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn flood_fill_ignores_traversal_order(mask in mask_strategy()) {
        let a = flood_components_in_order(&mask, ScanOrder::RowMajor);
        let b = flood_components_in_order(&mask, ScanOrder::ColumnMajor);
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.component_sizes.iter().sum::<usize>(), mask.count());
        prop_assert_eq!(a.component_count == 0, mask.count() == 0);
        prop_assert!((0.0..=1.0).contains(&a.largest_fraction));
        prop_assert!(a.component_sizes.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn flood_fill_is_transpose_invariant(mask in mask_strategy()) {
        let t = BinaryMask::from_fn(mask.height, mask.width, |i, j| mask.get(j, i));
        let a = flood_components(&mask);
        let b = flood_components(&t);
        prop_assert_eq!(a, b);
    }
}
