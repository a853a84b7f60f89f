use criterion::{black_box, criterion_group, criterion_main, Criterion};
use orbitflag::{
    bounds_report, construct_general, galois_flag, BestFriendVector, FieldParams, Subspace, TypeVector,
};

fn field_build(c: &mut Criterion) {
    c.bench_function("field_build_q2_n16", |b| {
        b.iter(|| FieldParams::for_q(2, black_box(16)).unwrap().build().unwrap())
    });
    c.bench_function("field_build_q9_n4", |b| {
        b.iter(|| FieldParams::for_q(9, black_box(4)).unwrap().build().unwrap())
    });
}

fn orbit_scan(c: &mut Criterion) {
    let ctx = FieldParams::for_q(2, 16).unwrap().build().unwrap();
    let galois = galois_flag(&ctx, &[2, 4, 8]).unwrap();
    let mut group = c.benchmark_group("orbit_scan");
    group.sample_size(10);
    group.bench_function("galois_2_4_8_n16", |b| b.iter(|| black_box(&galois).orbit_summary()));
    let ctx12 = FieldParams::for_q(2, 12).unwrap().build().unwrap();
    let mixed = construct_general(&ctx12, &BestFriendVector::new(vec![2, 3]).unwrap()).unwrap();
    group.bench_function("construct_2_3_n12", |b| b.iter(|| black_box(&mixed).orbit_summary()));
    group.finish();
}

fn subspace_ops(c: &mut Criterion) {
    let ctx = FieldParams::for_q(2, 24).unwrap().build().unwrap();
    let u = Subspace::subfield(&ctx, 12).unwrap().sum(&Subspace::subfield(&ctx, 3).unwrap().scalar_mul(ctx.gamma()).unwrap()).unwrap();
    let v = u.scalar_mul(ctx.gamma_pow(12345)).unwrap();
    c.bench_function("distance_dim15_n24", |b| b.iter(|| black_box(&u).distance(black_box(&v)).unwrap()));
    c.bench_function("best_friend_dim15_n24", |b| b.iter(|| black_box(&u).best_friend_exponent().unwrap()));
}

fn bounds(c: &mut Criterion) {
    let bfv = BestFriendVector::new(vec![2, 4, 1, 12, 3, 3, 3]).unwrap();
    let t = TypeVector::new(vec![2, 4, 5, 12, 15, 18, 21]).unwrap();
    c.bench_function("bounds_report_r7", |b| b.iter(|| bounds_report(black_box(&bfv), &t, 24).unwrap()));
}

criterion_group!(benches, field_build, orbit_scan, subspace_ops, bounds);
criterion_main!(benches);
