//! Acceptance criteria, one PASS/FAIL line each.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use bethe_core::rootsys::RootSystem;
use bethe_core::verify::{self, CheckReport, RunOpts};

const SEED: u64 = 20240607;

fn opts(samples: usize) -> RunOpts {
    RunOpts { seed: SEED, samples, order: 6 }
}

fn build(label: &str) -> RootSystem {
    RootSystem::build(label).expect("shipped type")
}

fn run(reports: Vec<CheckReport>) -> bool {
    let mut ok = true;
    for r in &reports {
        println!("    {}", r.summary());
        for n in &r.notes {
            println!("      note: {n}");
        }
        for f in r.failures.iter().take(5) {
            println!("      failure: {f}");
        }
        ok &= r.passed;
    }
    ok
}

fn criterion(results: &mut Vec<(usize, bool)>, id: usize, title: &str, body: impl FnOnce() -> bool) {
    let start = Instant::now();
    println!("criterion {id}: {title}");
    let ok = catch_unwind(AssertUnwindSafe(body)).unwrap_or(false);
    println!("{} criterion {id}: {title} ({:.1}s)", if ok { "PASS" } else { "FAIL" }, start.elapsed().as_secs_f64());
    results.push((id, ok));
}

fn main() {
    let mut results = Vec::new();

    criterion(&mut results, 1, "Hecke operators Q_h(q) commute", || {
        run(["A2", "A3", "B2", "B3", "C3", "G2"].iter().map(|l| verify::hecke(&build(l), &opts(0), 20)).collect())
    });

    criterion(&mut results, 2, "spin chain commutativity and the −z_k identity", || run(vec![verify::spin_chain(&opts(0), 20)]));

    criterion(&mut results, 3, "dim Q(C) = dim G(χ) = dim Q(x) = rank", || {
        run(["A2", "A3", "B2", "B3", "C3", "G2"].iter().map(|l| verify::rank(&build(l), &opts(50))).collect())
    });

    criterion(&mut results, 4, "ψ(Q(C)) = G(0, z₁, …, z_n)", || run(vec![verify::type_a(&opts(0), 10)]));

    criterion(&mut results, 5, "B₂ and G₂ layer fixtures", || run(vec![verify::fixtures(&opts(0))]));

    criterion(&mut results, 6, "injectivity on sampled chart points", || {
        let mut reports: Vec<CheckReport> =
            ["A2", "A3", "B2", "B3", "C3", "D4"].iter().map(|l| verify::injectivity(&build(l), &opts(30))).collect();
        reports.push(verify::g2_report(&opts(0)));
        run(reports)
    });

    criterion(&mut results, 7, "chain matrices are unitriangular", || {
        let labels = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "F4", "G2", "E6", "E7", "E8"];
        run(labels.iter().map(|l| verify::triangularity(&build(l))).collect())
    });

    criterion(&mut results, 8, "Gaudin chart extension", || {
        run(["A2", "A3", "B2", "B3", "C3", "G2"].iter().map(|l| verify::gaudin_chart(&build(l), &opts(0), 4)).collect())
    });

    criterion(&mut results, 9, "degeneration continuity", || run(vec![verify::degeneration()]));

    criterion(&mut results, 10, "infrastructure oracles", || run(vec![verify::oracles(&opts(0), 500)]));

    let failed: Vec<usize> = results.iter().filter(|(_, ok)| !ok).map(|(id, _)| *id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
