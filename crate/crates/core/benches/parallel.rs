use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gauss_qec::dense;
use gauss_qec::gauss_code::{build, decode_sweep, CodeKind, ErrorClass};
use gauss_qec::hamiltonian::{physical_hamiltonian, Couplings};
use gauss_qec::par::Execution;
use gauss_qec::Lattice;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn decode(c: &mut Criterion) {
    let code = build(CodeKind::PhaseFirst, &Lattice::new(&[5, 5]).unwrap()).unwrap();
    let mut g = c.benchmark_group("decode_sweep_phase_first_5x5");
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| decode_sweep(&code, ErrorClass::All, exec).unwrap())
        });
    }
    g.finish();
}

fn assemble(c: &mut Criterion) {
    let h = physical_hamiltonian(&Lattice::new(&[2, 2]).unwrap(), &Couplings::default()).unwrap();
    let mut g = c.benchmark_group("dense_assembly_2x2");
    g.sample_size(20);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| dense::to_matrix_with(&h, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, decode, assemble);
criterion_main!(benches);
