use dncbeta_core::reference::SLAB_EXAMPLE;
use dncbeta_core::{
    direct_cdf, matrix_item, matrix_slab, matrix_slab_with, DistParams, Error, IncBetaStrategy,
    OracleConfig, SlabOptions,
};

fn example() -> DistParams {
    let (a, b, d1, d2, x) = SLAB_EXAMPLE;
    DistParams::new(a, b, d1, d2, x).unwrap()
}

#[test]
fn example_slab_shape() {
    let p = example();
    let slab = matrix_slab(&p, 80, 60).unwrap();
    assert_eq!(slab.items.len(), 80 * 60);
    assert!(slab.items.iter().all(|&v| (0.0..=1.0).contains(&v)));
    let total = slab.total();
    assert!(total <= 1.0);

    // The mass concentrates in an interior bump, away from every edge.
    let (j, l, peak) = slab.argmax();
    assert!(j > 0 && j < 79 && l > 0 && l < 59, "peak at ({j}, {l})");
    assert!(peak > 0.0);

    // The slab plus the Poisson mass outside it covers the full CDF.
    let oracle = direct_cdf(&p, &OracleConfig::default()).unwrap();
    assert!(total <= oracle + 1e-13);
    assert!(total + slab.residual_bound().unwrap() >= oracle);
}

#[test]
fn slab_cells_match_single_items() {
    let p = example();
    let slab = matrix_slab(&p, 12, 9).unwrap();
    for j in 0..12 {
        for l in 0..9 {
            assert_eq!(slab.get(j, l), matrix_item(&p, j, l).unwrap());
        }
    }
}

#[test]
fn recurrence_slab_matches_direct() {
    let p = example();
    let direct = matrix_slab(&p, 80, 60).unwrap();
    let options = SlabOptions { strategy: IncBetaStrategy::Recurrence, ..SlabOptions::default() };
    let rec = matrix_slab_with(&p, 80, 60, options).unwrap();
    for (d, r) in direct.items.iter().zip(&rec.items) {
        assert!((d - r).abs() <= 1e-13, "{d} vs {r}");
    }
}

#[test]
fn slab_limits() {
    let p = example();
    assert!(matches!(matrix_slab(&p, 0, 5), Err(Error::Domain(_))));
    let tiny = SlabOptions { cell_budget: 100, ..SlabOptions::default() };
    assert!(matches!(matrix_slab_with(&p, 11, 10, tiny), Err(Error::Resource { .. })));
    let outside = DistParams { x: 1.2, ..p };
    assert!(matrix_slab(&outside, 2, 2).is_err());
}
