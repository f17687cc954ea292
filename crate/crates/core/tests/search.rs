use harmcodes::harmonics::gegenbauer2;
use harmcodes::search::{
    admissible_inner_products, enumerate, enumerate_with, level_from_m, solve_code_size, write_json,
};
use harmcodes::QuadScalar;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Scans every even `M` in `[2D, 10⁷]` for `q²(M² − 2DM) = p²D(M² − 2M)`,
/// the size condition with `ℓ = p/q` cleared of denominators.
fn brute_force(d: usize, p: i64, q: i64) -> Option<u64> {
    let dim = (d * (d + 3) / 2) as i128;
    let (p2, q2) = ((p as i128).pow(2), (q as i128).pow(2));
    let mut found = None;
    let mut m = 2 * dim;
    while m <= 10_000_000 {
        if q2 * (m * m - 2 * dim * m) == p2 * dim * (m * m - 2 * m) {
            assert!(found.is_none(), "two solutions for d={d} l={p}/{q}");
            found = Some(m as u64);
        }
        m += 2;
    }
    found
}

#[test]
fn solve_code_size_agrees_with_brute_force() {
    let mut rng = StdRng::seed_from_u64(2024);
    let mut cases: Vec<(usize, i64, i64)> = vec![(7, 1, 7), (6, 1, 27), (22, 1, 275), (2, 1, 5)];
    while cases.len() < 50 {
        let d = rng.random_range(2..100usize);
        if rng.random_bool(0.5) {
            let m = rng.random_range(1..=200i64);
            let (num, den) = (d as i64 + 1 - m, d as i64 * m);
            if num != 0 {
                cases.push((d, num, den));
            }
        } else {
            let den = rng.random_range(1..=400i64);
            cases.push((d, rng.random_range(1..den.max(2)), den));
        }
    }
    for (d, p, q) in cases {
        let l = QuadScalar::from_ratio(p, q);
        let expected = brute_force(d, p, q);
        let got = solve_code_size(d, &l);
        // the scan only covers M ≤ 10⁷
        let got = got.filter(|&m| m <= 10_000_000);
        assert_eq!(got, expected, "d={d} l={l}");
    }
}

#[test]
fn emitted_rows_are_consistent() {
    let rows = enumerate(100, 200).unwrap();
    for r in &rows {
        assert!(!r.level.is_zero());
        assert!(r.code_size % 2 == 0 && r.code_size >= 2 * r.dim);
        assert!(r.level.abs() < QuadScalar::one());
        assert_eq!(r.level, level_from_m(r.d, r.m));
        for x in &r.inner_products {
            let g = gegenbauer2(r.d, x);
            assert!(g == r.level || g == -&r.level, "d={} m={} x={x}", r.d, r.m);
        }
    }
    // the Fisher filter never removes a row: M ≥ 2D whenever Dℓ² < 1
    assert_eq!(enumerate_with(100, 200, true).unwrap(), rows);
}

#[test]
fn optimal_rows_are_reproduced() {
    let rows = enumerate(100, 200).unwrap();
    let sizes: Vec<u64> = [(2, 5), (6, 9), (7, 4), (22, 25)]
        .iter()
        .map(|&(d, m)| {
            rows.iter()
                .find(|r| (r.d, r.m) == (d, m))
                .unwrap()
                .code_size
        })
        .collect();
    assert_eq!(sizes, vec![12, 56, 240, 552]);
}

#[test]
fn restricted_ranges_are_a_subset() {
    let all = enumerate(100, 200).unwrap();
    let small = enumerate(9, 10).unwrap();
    assert!(!small.is_empty());
    let expected: Vec<_> = all
        .iter()
        .filter(|r| r.d_plus_1 <= 9 && r.m <= 10)
        .cloned()
        .collect();
    assert_eq!(small, expected);
}

#[test]
fn admissible_roots_of_icosahedron_level() {
    let roots = admissible_inner_products(2, &QuadScalar::from_ratio(1, 5)).unwrap();
    assert_eq!(roots.len(), 2);
    assert!(roots.contains(&"1/5*sqrt(5)".parse().unwrap()));
    for x in &roots {
        assert_eq!(gegenbauer2(2, x).abs(), QuadScalar::from_ratio(1, 5));
    }
}

#[test]
fn json_records_fisher_instantiation() {
    let rows = enumerate(9, 10).unwrap();
    let mut buf = Vec::new();
    write_json(&rows, &mut buf).unwrap();
    let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
    assert!(v["fisher_bound"].as_str().unwrap().contains("2D"));
    assert_eq!(v["rows"].as_array().unwrap().len(), rows.len());
}
