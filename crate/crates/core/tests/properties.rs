use std::sync::OnceLock;

use orbitflag::bounds::{bounds_report, dvec_feasible, max_flag_distance};
use orbitflag::oracle::{random_flag, random_subspace};
use orbitflag::{BestFriendVector, FieldCtx, FieldParams, FlagFile, TypeVector};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fields() -> &'static [FieldCtx] {
    static FIELDS: OnceLock<Vec<FieldCtx>> = OnceLock::new();
    FIELDS.get_or_init(|| {
        [(2, 6), (2, 8), (3, 4), (4, 3), (5, 2), (9, 2), (2, 12)]
            .into_iter()
            .map(|(q, n)| FieldParams::for_q(q, n).unwrap().build().unwrap())
            .collect()
    })
}

fn type_vector(n: usize) -> impl Strategy<Value = TypeVector> {
    proptest::sample::subsequence((1..n).collect::<Vec<_>>(), 1..n.min(5))
        .prop_map(|t| TypeVector::new(t).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn field_arithmetic(idx in 0usize..7, a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let ctx = &fields()[idx];
        let order = ctx.group_order();
        let [x, y, z] = [a, b, c].map(|k| ctx.gamma_pow(k % order));
        prop_assert_eq!(ctx.mul(x, y), ctx.mul(y, x));
        prop_assert_eq!(ctx.mul(ctx.mul(x, y), z), ctx.mul(x, ctx.mul(y, z)));
        prop_assert_eq!(ctx.mul(x, ctx.add(y, z)), ctx.add(ctx.mul(x, y), ctx.mul(x, z)));
        prop_assert_eq!(ctx.mul(x, ctx.inv(x)), orbitflag::FieldElem::ONE);
        prop_assert_eq!(ctx.sub(ctx.add(x, y), y), x);
        prop_assert_eq!(ctx.pow(x, ctx.order()), x);
        prop_assert_eq!(ctx.gamma_pow(a % order + b % order), ctx.mul(ctx.gamma_pow(a % order), ctx.gamma_pow(b % order)));
        prop_assert_eq!(ctx.elem_from_coords(&ctx.coords_over_ground(x)).unwrap(), x);
    }

    #[test]
    fn subspace_metric(idx in 0usize..7, seed in any::<u64>()) {
        let ctx = &fields()[idx];
        let n = ctx.n();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dims: Vec<usize> = (0..3).map(|i| 1 + (seed as usize >> (8 * i)) % (n - 1)).collect();
        let [u, v, w] = [0, 1, 2].map(|i| random_subspace(ctx, dims[i], &mut rng));
        let d = |a: &orbitflag::Subspace<'_>, b: &orbitflag::Subspace<'_>| a.distance(b).unwrap();
        prop_assert_eq!(d(&u, &v), d(&v, &u));
        prop_assert!(d(&u, &w) <= d(&u, &v) + d(&v, &w));
        prop_assert_eq!(d(&u, &u), 0);
        prop_assert_eq!(u.sum(&v).unwrap().dim() + u.intersect(&v).unwrap().dim(), u.dim() + v.dim());
        let m = u.best_friend_exponent().unwrap();
        prop_assert_eq!(u.dim() % m, 0);
        let alpha = ctx.gamma_pow(seed % ctx.group_order());
        let moved = u.scalar_mul(alpha).unwrap();
        prop_assert_eq!(moved.best_friend_exponent().unwrap(), m);
        prop_assert_eq!(d(&u, &moved) % (2 * m), 0);
    }

    #[test]
    fn flag_pairs(
        (idx, t) in (0usize..7).prop_flat_map(|i| (Just(i), type_vector(fields()[i].n()))),
        seed in any::<u64>(),
    ) {
        let ctx = &fields()[idx];
        let n = ctx.n();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_flag(ctx, &t, &mut rng);
        let g = random_flag(ctx, &t, &mut rng);
        let dv = f.distance_vector(&g).unwrap();
        prop_assert!(dvec_feasible(&t, n, &dv).unwrap());
        prop_assert!(dv.total() <= max_flag_distance(&t, n).unwrap());
        let bfv = f.best_friend_vector();
        prop_assert!(bfv.as_slice().iter().all(|&m| n % m == 0));
        let alpha = ctx.gamma_pow(seed % ctx.group_order());
        prop_assert_eq!(f.distance(&f.scalar_mul(alpha).unwrap()).unwrap() % (2 * bfv.gcd()), 0);
        let file = FlagFile::from_flag(&f).unwrap();
        let back = FlagFile::from_json(&file.to_json()).unwrap().to_flag(ctx).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn bounds_are_ordered(n in 4usize..=30, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        use rand::Rng;
        let len = rng.gen_range(1..=(n - 1).min(6));
        let mut dims: Vec<usize> = rand::seq::index::sample(&mut rng, n - 1, len).into_iter().map(|d| d + 1).collect();
        dims.sort_unstable();
        let divs: Vec<usize> = (1..=n).filter(|d| n % d == 0).collect();
        let ms: Vec<usize> = dims
            .iter()
            .map(|&t| {
                let options: Vec<usize> = divs.iter().copied().filter(|&d| t % d == 0).collect();
                options[rng.gen_range(0..options.len())]
            })
            .collect();
        let t = TypeVector::new(dims).unwrap();
        let bfv = BestFriendVector::new(ms).unwrap();
        let rep = bounds_report(&bfv, &t, n).unwrap();
        prop_assume!(rep.violations.is_empty());
        prop_assert!(rep.baseline_lower <= rep.lower_bound);
        prop_assert!(rep.lower_bound <= rep.upper_bound);
        prop_assert!(rep.upper_bound <= rep.baseline_upper);
        prop_assert_eq!(rep.lower_bound % (2 * rep.m), 0);
        prop_assert_eq!(rep.upper_bound % 2, 0);
    }
}
