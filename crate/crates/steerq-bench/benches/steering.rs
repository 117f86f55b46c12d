use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use steerq::analysis::{classify_ensemble, classify_ensemble_par, classify_state, critical_alpha};
use steerq::criteria::{tsallis_steering_lhs, two_qubit_pauli_q2};
use steerq::measure::{check_mub, joint_distribution, mub_prime};
use steerq::states::{bloch_normal_form, make_isotropic, sample_hs_indexed};
use steerq_bench::{isotropic_joints, two_qubit_batch};

fn bench_sampling_and_normal_form(c: &mut Criterion) {
    c.bench_function("hs_sample_d4", |b| {
        let mut i = 0u64;
        b.iter(|| {
            i += 1;
            black_box(sample_hs_indexed(4, 1, i).unwrap())
        })
    });

    let states = two_qubit_batch(256, 2);
    c.bench_function("bloch_normal_form", |b| {
        let mut k = 0usize;
        b.iter(|| {
            k = (k + 1) % states.len();
            black_box(bloch_normal_form(&states[k]).unwrap())
        })
    });

    c.bench_function("classify_state", |b| {
        let mut k = 0usize;
        b.iter(|| {
            k = (k + 1) % states.len();
            black_box(classify_state(&states[k]).unwrap())
        })
    });
}

fn bench_criteria(c: &mut Criterion) {
    let states = two_qubit_batch(256, 3);
    let forms: Vec<_> = states
        .iter()
        .map(|s| bloch_normal_form(s).unwrap())
        .collect();
    c.bench_function("two_qubit_pauli_q2", |b| {
        let mut k = 0usize;
        b.iter(|| {
            k = (k + 1) % forms.len();
            black_box(two_qubit_pauli_q2(&forms[k]))
        })
    });

    let mut group = c.benchmark_group("tsallis_lhs_isotropic");
    for d in [2usize, 5, 13] {
        let joints = isotropic_joints(d, d + 1, 0.5);
        group.bench_with_input(BenchmarkId::from_parameter(d), &joints, |b, joints| {
            b.iter(|| black_box(tsallis_steering_lhs(joints, 2.0).unwrap()))
        });
    }
    group.finish();
}

fn bench_thresholds(c: &mut Criterion) {
    let mut group = c.benchmark_group("critical_alpha");
    for (d, q) in [(2usize, 2.0), (13, 2.0), (13, 1.0)] {
        group.bench_with_input(
            BenchmarkId::new(format!("d{d}"), q),
            &(d, q),
            |b, &(d, q)| b.iter(|| black_box(critical_alpha(d, d + 1, q, 1e-12).unwrap())),
        );
    }
    group.finish();
}

fn bench_measurements(c: &mut Criterion) {
    c.bench_function("mub_prime_11", |b| {
        b.iter(|| {
            let bases = mub_prime(11, 12).unwrap();
            black_box(check_mub(&bases))
        })
    });

    let rho = make_isotropic(7, 0.6).unwrap();
    let bases = mub_prime(7, 2).unwrap();
    c.bench_function("joint_distribution_d7", |b| {
        b.iter(|| black_box(joint_distribution(&rho, &bases[0], &bases[1]).unwrap()))
    });
}

fn bench_ensembles(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify_ensemble_1k");
    group.sample_size(20);
    group.bench_function("serial", |b| {
        b.iter(|| black_box(classify_ensemble(1_000, 7)))
    });
    group.bench_function("parallel", |b| {
        b.iter(|| black_box(classify_ensemble_par(1_000, 7)))
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_sampling_and_normal_form,
    bench_criteria,
    bench_thresholds,
    bench_measurements,
    bench_ensembles
);
criterion_main!(benches);
