use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use modal_duality::enumerate::all_modal_frames;
use modal_duality::points::{build_point_space_with, PruneStrategy};
use modal_duality::sweep::{run_sweep, SweepConfig};
use modal_duality::{ConstructionMode, Exec};

const EXECS: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("sweep");
    g.sample_size(10);
    for (name, exec) in EXECS {
        let config = SweepConfig { max_lattice: 4, max_points: Some(2), exec, ..SweepConfig::default() };
        g.bench_function(BenchmarkId::new(name, "lattice4-points2"), |b| b.iter(|| run_sweep(&config).unwrap()));
    }
    g.finish();
}

fn prune(c: &mut Criterion) {
    let frames = all_modal_frames(5);
    let mut g = c.benchmark_group("prune");
    for (name, exec) in EXECS {
        g.bench_function(BenchmarkId::new(name, "frames5-relsp"), |b| {
            b.iter(|| {
                frames
                    .iter()
                    .map(|f| build_point_space_with(f, ConstructionMode::RelSp, PruneStrategy::Rounds(exec)).len())
                    .sum::<usize>()
            })
        });
    }
    g.bench_function(BenchmarkId::new("worklist", "frames5-relsp"), |b| {
        b.iter(|| {
            frames
                .iter()
                .map(|f| build_point_space_with(f, ConstructionMode::RelSp, PruneStrategy::Worklist).len())
                .sum::<usize>()
        })
    });
    g.finish();
}

criterion_group!(benches, sweep, prune);
criterion_main!(benches);
