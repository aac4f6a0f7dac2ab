use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use subranks_core::bridge::{phi, point_poly, psi, restrict_compact, HomogPoly};
use subranks_core::equations::{
    decompose_via_chain, extract_hchain, Monomial, Poly, VarSpace, DEFAULT_ORBIT_BUDGET,
};
use subranks_core::nullcone::{build_1psg, certify_nullcone, triple_from_slice_decomposition, weight_on_support};
use subranks_core::rank::{prank, slice_rank, RankKind, SearchOptions, Strategy as SearchStrategy};
use subranks_core::{AxisSplit, Error, ExactMatrix, Field, IndexSubsets, Tensor};

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Prime(2)), Just(Field::Prime(5)), Just(Field::Rational)]
}

fn small_prime() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Prime(2)), Just(Field::Prime(3))]
}

fn matrix(rows: usize, cols: usize, field: Field, seed: u64) -> ExactMatrix {
    let t = Tensor::random(&[rows, cols], field, seed, 0.6).unwrap();
    ExactMatrix::from_vec(rows, cols, field, t.entries().to_vec()).unwrap()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_subsets(dims: &[usize], seed: u64) -> IndexSubsets {
    let mut r = rng(seed);
    let sets = dims
        .iter()
        .map(|&n| {
            let mut all: Vec<usize> = (0..n).collect();
            all.shuffle(&mut r);
            let k = 1 + (seed as usize % n);
            let mut s = all[..k].to_vec();
            s.sort_unstable();
            s
        })
        .collect();
    IndexSubsets::new(sets).unwrap()
}

fn random_perms(dims: &[usize], seed: u64) -> Vec<Vec<usize>> {
    let mut r = rng(seed);
    dims.iter()
        .map(|&n| {
            let mut p: Vec<usize> = (0..n).collect();
            p.shuffle(&mut r);
            p
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rref_keeps_row_space(field in field_strategy(), r in 1usize..5, c in 1usize..5, seed: u64) {
        let a = matrix(r, c, field, seed);
        let rr = a.rref();
        prop_assert_eq!(rr.rank, a.rank());
        let mut stacked: Vec<Vec<_>> = (0..r).map(|i| a.row(i).to_vec()).collect();
        stacked.extend((0..r).map(|i| rr.matrix.row(i).to_vec()));
        prop_assert_eq!(ExactMatrix::from_rows(field, stacked).unwrap().rank(), rr.rank);
        for (k, &p) in rr.pivots.iter().enumerate() {
            prop_assert!(rr.matrix.get(k, p).is_one());
            for i in 0..r {
                prop_assert!(i == k || rr.matrix.get(i, p).is_zero());
            }
        }
    }

    #[test]
    fn kernel_is_annihilated(field in field_strategy(), r in 1usize..5, c in 1usize..6, seed: u64) {
        let a = matrix(r, c, field, seed);
        let ker = a.kernel_basis();
        prop_assert_eq!(ker.len(), c - a.rank());
        for v in &ker {
            prop_assert!(a.mul_vec(v).unwrap().iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn inverse_when_full_rank(field in field_strategy(), n in 1usize..5, seed: u64) {
        let a = matrix(n, n, field, seed);
        match a.invert() {
            Ok(inv) => {
                prop_assert!(a.mul(&inv).unwrap().is_identity());
                prop_assert!(inv.mul(&a).unwrap().is_identity());
            }
            Err(Error::SingularMatrix) => prop_assert!(a.rank() < n),
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn subtensor_composes(field in field_strategy(), seed: u64) {
        let t = Tensor::random(&[3, 4, 2], field, seed, 0.7).unwrap();
        let outer = random_subsets(&[3, 4, 2], seed);
        let inner = random_subsets(&outer.sizes(), seed.wrapping_add(1));
        let two_step = t.subtensor(&outer).unwrap().subtensor(&inner).unwrap();
        prop_assert_eq!(two_step, t.subtensor(&outer.compose(&inner).unwrap()).unwrap());
    }

    #[test]
    fn flattening_rank_is_index_invariant(field in field_strategy(), seed: u64) {
        let dims = [2, 3, 2, 2];
        let t = Tensor::random(&dims, field, seed, 0.6).unwrap();
        let u = t.permute_indices(&random_perms(&dims, seed)).unwrap();
        for s in AxisSplit::all(4) {
            prop_assert_eq!(t.flatten(&s).rank(), u.flatten(&s).rank());
        }
    }

    #[test]
    fn permutations_compose(field in field_strategy(), seed: u64) {
        let dims = [3, 2, 4];
        let t = Tensor::random(&dims, field, seed, 0.7).unwrap();
        let p = random_perms(&dims, seed);
        let q = random_perms(&dims, seed ^ 0x9e37);
        let qp: Vec<Vec<usize>> = p.iter().zip(&q).map(|(p, q)| p.iter().map(|&i| q[i]).collect()).collect();
        prop_assert_eq!(
            t.permute_indices(&p).unwrap().permute_indices(&q).unwrap(),
            t.permute_indices(&qp).unwrap()
        );
    }

    #[test]
    fn prank_is_monotone_and_invariant(field in small_prime(), seed: u64) {
        let dims = [3, 2, 3];
        let opts = SearchOptions::default();
        let t = Tensor::random(&dims, field, seed, 0.6).unwrap();
        let full = prank(&t, &opts).unwrap();
        prop_assert!(full.witness.reproduces(&t));
        let sub = t.subtensor(&random_subsets(&dims, seed)).unwrap();
        prop_assert!(prank(&sub, &opts).unwrap().value <= full.value);
        let moved = t.permute_indices(&random_perms(&dims, seed)).unwrap();
        prop_assert_eq!(prank(&moved, &opts).unwrap().value, full.value);
    }

    #[test]
    fn order_two_search_matches_rank(field in prop_oneof![Just(Field::Prime(2)), Just(Field::Prime(5))], r in 1usize..4, c in 1usize..4, seed: u64) {
        let t = Tensor::random(&[r, c], field, seed, 0.6).unwrap();
        let opts = SearchOptions { strategy: SearchStrategy::Search, ..SearchOptions::default() };
        let cert = subranks_core::rank::rank(&t, RankKind::Partition, &opts).unwrap();
        prop_assert_eq!(cert.value, subranks_core::rank::matrix_rank(&t));
        prop_assert!(cert.witness.reproduces(&t));
    }

    #[test]
    fn chain_identity_and_decomposition(m in 1usize..4, d in 2usize..4, seed: u64) {
        let field = Field::Prime(5);
        let f = random_multilinear(m, d, field, seed);
        prop_assume!(!f.is_zero());
        let chain = extract_hchain(&f).unwrap();
        prop_assert!(chain.verify());
        // a tensor in a smaller block has all orbits vanishing from some level on
        let t = Tensor::random(&vec![m + 1; d], field, seed, 0.5).unwrap();
        match decompose_via_chain(&t, &chain, DEFAULT_ORBIT_BUDGET) {
            Ok(out) => {
                prop_assert!(out.decomposition.reproduces(&t));
                prop_assert!(out.decomposition.len() <= out.bound);
            }
            Err(Error::HypothesisViolated(_)) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn phi_psi_round_trip(d in 1usize..5, n in 1usize..4, seed: u64) {
        let field = Field::Prime(7);
        let p = random_homog(n, d, field, seed);
        let t = psi(&p).unwrap();
        let fact: i64 = (1..=d as i64).product();
        prop_assert_eq!(phi(&t).unwrap(), p.scale(&field.from_i64(fact)));
        for a in 0..d {
            let mut axes: Vec<usize> = (0..d).collect();
            axes.swap(0, a);
            prop_assert_eq!(&t.permute_axes(&axes).unwrap(), &t);
        }
        let mut u: Vec<usize> = (0..n).filter(|i| (seed >> i) & 1 == 1).collect();
        if u.is_empty() {
            u.push(0);
        }
        let sub = t.subtensor(&IndexSubsets::new(vec![u.clone(); d]).unwrap()).unwrap();
        prop_assert_eq!(phi(&sub).unwrap(), restrict_compact(&p, &u).unwrap().scale(&field.from_i64(fact)));
    }

    #[test]
    fn subgroup_weights(n in 2usize..6, a in 0usize..3, b in 0usize..3, c in 0usize..3, seed: u64) {
        prop_assume!(a + b + c < n);
        let g = build_1psg(n, [a, b, c]).unwrap();
        prop_assert!(g.is_special());
        // supported in V_1 (x) K^n (x) K^n + K^n (x) V_2 (x) K^n + K^n (x) K^n (x) V_3
        let field = Field::Prime(3);
        let raw = Tensor::random(&[n, n, n], field, seed, 0.5).unwrap();
        let t = Tensor::from_fn(&[n, n, n], field, |i| {
            if i[0] < a || i[1] < b || i[2] < c { raw.get(i).clone() } else { field.zero() }
        });
        if !t.is_zero() {
            prop_assert!(weight_on_support(&g, &t).unwrap() >= (n - a - b - c) as i64);
        }
    }

    #[test]
    fn small_slice_rank_lies_in_nullcone(n in 2usize..4, seed: u64) {
        let field = Field::Prime(2);
        let t = Tensor::random(&[n, n, n], field, seed, 0.25).unwrap();
        prop_assume!(!t.is_zero());
        let c = slice_rank(&t, &SearchOptions::default()).unwrap();
        if c.value < n {
            let tr = triple_from_slice_decomposition(&c.witness).unwrap();
            prop_assert!(certify_nullcone(&t, &tr).unwrap());
        }
    }
}

/// Random combination of the monomials `prod_j x_{j, s_2(j), .., s_d(j)}`.
fn random_multilinear(m: usize, d: usize, field: Field, seed: u64) -> Poly {
    let mut r = rng(seed);
    let mut terms = Vec::new();
    for _ in 0..4 {
        let perms: Vec<Vec<usize>> = (1..d)
            .map(|_| {
                let mut p: Vec<usize> = (0..m).collect();
                p.shuffle(&mut r);
                p
            })
            .collect();
        let vars: Vec<(Vec<usize>, u32)> = (0..m)
            .map(|j| (std::iter::once(j).chain(perms.iter().map(|p| p[j])).collect(), 1))
            .collect();
        let c = field.from_u32(1 + (rand::Rng::random::<u32>(&mut r) % 4));
        terms.push((Monomial::from_powers(vars), c));
    }
    let mut f = Poly::zero(VarSpace::Tensor(vec![m; d]), field, m as u32);
    for (mono, c) in terms {
        let one = Poly::from_terms(VarSpace::Tensor(vec![m; d]), field, m as u32, [(mono, c)]).unwrap();
        f = f.add(&one).unwrap();
    }
    f
}

fn random_homog(n: usize, d: usize, field: Field, seed: u64) -> HomogPoly {
    let mut r = rng(seed);
    let mut terms: Vec<(Vec<usize>, i64)> = Vec::new();
    for _ in 0..5 {
        let mut m: Vec<usize> = (0..d).map(|_| rand::Rng::random_range(&mut r, 0..n)).collect();
        m.sort_unstable();
        terms.push((m, rand::Rng::random_range(&mut r, 1..7)));
    }
    let refs: Vec<(&[usize], i64)> = terms.iter().map(|(m, c)| (m.as_slice(), *c)).collect();
    let mut p = point_poly(n, field, &refs[..1]).unwrap();
    for t in &refs[1..] {
        p = p.add(&point_poly(n, field, &[*t]).unwrap()).unwrap();
    }
    p
}

#[test]
fn chain_decompositions_on_sparse_tensors() {
    let field = Field::Prime(5);
    let mut built = 0;
    for seed in 0..200u64 {
        let (m, d) = (2 + (seed % 2) as usize, 2 + (seed / 2 % 2) as usize);
        let f = random_multilinear(m, d, field, seed);
        if f.is_zero() {
            continue;
        }
        let chain = extract_hchain(&f).unwrap();
        let t = Tensor::random(&vec![m + 1; d], field, seed, 0.15).unwrap();
        match decompose_via_chain(&t, &chain, DEFAULT_ORBIT_BUDGET) {
            Ok(out) => {
                assert!(out.decomposition.reproduces(&t), "seed {seed}");
                assert!(out.decomposition.len() <= out.bound);
                built += 1;
            }
            Err(Error::HypothesisViolated(_)) => {}
            Err(e) => panic!("{e}"),
        }
    }
    assert!(built > 20, "only {built} decompositions exercised");
}
