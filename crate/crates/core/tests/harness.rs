use gas_core::harness::{
    export_results, log_grid, read_traces_csv, run_concurrent, success_curve, Algorithm,
    BenchmarkPlan, FunctionRuns,
};
use gas_core::testbed::registry;

#[test]
fn larger_batches_dominate_smaller_ones() {
    let functions = registry().select("2d").unwrap();
    let grid = log_grid(5_000);
    let mut groups = Vec::new();
    for f in &functions {
        let runs = run_concurrent(Algorithm::Bh, f, 5_000, 20, 11, 1).unwrap();
        groups.push(FunctionRuns {
            function: f.clone(),
            solved_at: runs.iter().map(|t| t.solved_at_reads).collect(),
        });
    }
    let curves: Vec<_> = [1, 10, 20]
        .iter()
        .map(|&t| success_curve("bh", &groups, &grid, t).unwrap())
        .collect();
    for c in &curves {
        assert!(c.points.windows(2).all(|w| w[0].1 <= w[1].1));
    }
    for pair in curves.windows(2) {
        for (small, large) in pair[0].points.iter().zip(&pair[1].points) {
            assert!(large.1 >= small.1);
        }
    }
}

#[test]
fn csv_rows_match_samples() {
    let plan = BenchmarkPlan::new(
        vec![Algorithm::Cs],
        vec!["beale".into(), "lj3".into()],
        2_000,
        3,
        1,
    )
    .unwrap();
    let results = plan.execute(2).unwrap();
    let dir = tempfile::tempdir().unwrap();
    export_results(&results, dir.path()).unwrap();
    let rows = read_traces_csv(&dir.path().join("traces.csv")).unwrap();
    let mut it = rows.iter();
    for r in &results.records {
        for s in &r.trace.samples {
            let row = it.next().unwrap();
            assert_eq!(
                (row.algo.as_str(), row.function.as_str(), row.run_id),
                ("cs", r.function.as_str(), r.run_id)
            );
            assert_eq!((row.seed, row.reads), (r.trace.seed, s.reads));
            assert_eq!(row.best_value.to_bits(), s.best_value.to_bits());
            assert_eq!(
                row.error,
                Some((s.best_value - r.trace.target.unwrap()).abs())
            );
        }
    }
    assert!(it.next().is_none());
}

#[test]
fn worker_count_does_not_change_results() {
    let plan = BenchmarkPlan::new(
        vec![Algorithm::Gas, Algorithm::De],
        vec!["matyas".into()],
        3_000,
        4,
        2,
    )
    .unwrap();
    assert_eq!(plan.execute(1).unwrap(), plan.execute(3).unwrap());
}
