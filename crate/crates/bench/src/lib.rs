//! Benchmark bodies shared by the criterion harness.

use std::hint::black_box;

use criterion::{BenchmarkId, Criterion, Throughput};
use greenbits_core::metrics::{self, DataAmount, EnergyThreshold};
use greenbits_core::montecarlo::{self, SimConfig, Strategy};
use greenbits_core::special::reg_lower_gamma;
use greenbits_core::{CraConfig, FadingModel, LinkParams};

pub fn incomplete_gamma(c: &mut Criterion) {
    let mut group = c.benchmark_group("reg_lower_gamma");
    for a in [0.5, 2.0, 50.0] {
        group.bench_with_input(BenchmarkId::from_parameter(a), &a, |b, &a| {
            b.iter(|| {
                let mut acc = 0.0;
                for i in 1..=64 {
                    acc += reg_lower_gamma(a, black_box(i as f64 * 0.25 * a)).unwrap();
                }
                acc
            })
        });
    }
    group.finish();
}

pub fn quantile(c: &mut Criterion) {
    let mut group = c.benchmark_group("quantile");
    let models = [
        ("rayleigh", FadingModel::rayleigh(0.1).unwrap()),
        ("nakagami_m2", FadingModel::nakagami(2.0, 0.1).unwrap()),
        ("nakagami_m20", FadingModel::nakagami(20.0, 0.1).unwrap()),
    ];
    for (name, model) in models {
        group.bench_function(name, |b| {
            b.iter(|| {
                let mut acc = 0.0;
                for i in 0..256 {
                    acc += model.quantile(black_box((i as f64 + 0.5) / 256.0)).unwrap();
                }
                acc
            })
        });
    }
    group.finish();
}

pub fn closed_form_eor(c: &mut Criterion) {
    let link = LinkParams::new(2e5, 1e-9).unwrap();
    let cra = CraConfig::new(0.2).unwrap();
    let fading = FadingModel::nakagami(2.0, 0.1).unwrap();
    let h = DataAmount::new(4e5).unwrap();
    c.bench_function("eor_cra_nakagami", |b| {
        b.iter(|| {
            let e_th = EnergyThreshold::new(black_box(0.05)).unwrap();
            metrics::eor_cra(&link, &cra, &fading, h, e_th).unwrap()
        })
    });
}

pub fn monte_carlo(c: &mut Criterion) {
    let link = LinkParams::new(2e5, 1e-9).unwrap();
    let strategy = Strategy::Cra(CraConfig::new(0.2).unwrap());
    let h = DataAmount::new(4e5).unwrap();
    let e_th = EnergyThreshold::new(0.05).unwrap();
    let n = 100_000;
    let mut group = c.benchmark_group("estimate_eor_cra");
    group.throughput(Throughput::Elements(n));
    group.sample_size(10);
    for (name, fading) in [
        ("rayleigh", FadingModel::rayleigh(0.1).unwrap()),
        ("nakagami_m2", FadingModel::nakagami(2.0, 0.1).unwrap()),
    ] {
        group.bench_function(name, |b| {
            b.iter(|| {
                montecarlo::estimate_eor(&strategy, &link, &fading, h, e_th, &SimConfig::new(n, 42))
                    .unwrap()
            })
        });
    }
    group.finish();
}
