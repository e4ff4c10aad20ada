//! Regression tests pinning the sphere-search oracle to frozen values.

use lpball::{sphere_search_2d, ProjectionProblem};

fn load_fixtures() -> Vec<(Vec<f64>, f64, f64, f64)> {
    let text = include_str!("fixtures/sphere2d.txt");
    let mut rows = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<f64> = line
            .split_whitespace()
            .map(|t| t.parse().expect("fixture value"))
            .collect();
        assert_eq!(cols.len(), 5, "fixture rows are y1 y2 p gamma objective");
        rows.push((vec![cols[0], cols[1]], cols[2], cols[3], cols[4]));
    }
    rows
}

#[test]
fn oracle_matches_frozen_objectives() {
    for (y, p, gamma, expected) in load_fixtures() {
        let prob = ProjectionProblem::new(y.clone(), p, gamma).unwrap();
        let res = sphere_search_2d(&prob, 200_000).unwrap();
        assert!(
            (res.objective - expected).abs() <= 1e-8,
            "y = {y:?}, p = {p}, gamma = {gamma}: got {}, frozen {expected}",
            res.objective
        );
        // the reported minimizer is consistent with its own objective
        let obj = 0.5
            * res
                .x_best
                .iter()
                .zip(&y)
                .map(|(&a, &b)| (a - b) * (a - b))
                .sum::<f64>();
        assert!((obj - res.objective).abs() <= 1e-12);
    }
}

#[test]
fn oracle_self_consistency_under_resolution_doubling() {
    for (y, p, gamma, _) in load_fixtures() {
        let prob = ProjectionProblem::new(y, p, gamma).unwrap();
        let coarse = sphere_search_2d(&prob, 100_000).unwrap();
        let fine = sphere_search_2d(&prob, 200_000).unwrap();
        assert!((coarse.objective - fine.objective).abs() < 1e-8);
    }
}
