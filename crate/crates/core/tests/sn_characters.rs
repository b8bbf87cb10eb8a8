//! Murnaghan-Nakayama values against the Jacobi-Trudi determinant of
//! permutation characters: `chi^lambda = det(h_{lambda_i - i + j})`, where
//! `h_a1 h_a2 ...` at cycle type `rho` counts ordered distributions of the
//! cycles of `rho` into boxes of sizes `a1, a2, ...`.

use glq_core::partitions::{enumerate_partitions, mn_character, CycleType, Partition};
use num_bigint::BigInt;

/// Ways to put the cycles into boxes with the given sizes.
fn fixed_tabloids(cycles: &[u32], boxes: &mut [i64]) -> i64 {
    let Some((&c, rest)) = cycles.split_first() else {
        return boxes.iter().all(|&b| b == 0) as i64;
    };
    let mut total = 0;
    for i in 0..boxes.len() {
        if boxes[i] >= c as i64 {
            boxes[i] -= c as i64;
            total += fixed_tabloids(rest, boxes);
            boxes[i] += c as i64;
        }
    }
    total
}

fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    if n == 0 {
        return vec![(vec![], 1)];
    }
    let mut out = Vec::new();
    for (p, s) in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            // Inserting the largest element creates len - pos inversions.
            let sign = if (p.len() - pos) % 2 == 0 { s } else { -s };
            out.push((q, sign));
        }
    }
    out
}

fn jacobi_trudi(lambda: &Partition, cycles: &[u32]) -> i64 {
    let l = lambda.len();
    let parts = lambda.parts();
    let mut total = 0;
    for (w, sign) in permutations(l) {
        let mut boxes: Vec<i64> = (0..l).map(|i| parts[i] as i64 - i as i64 + w[i] as i64).collect();
        if boxes.iter().any(|&b| b < 0) {
            continue;
        }
        total += sign * fixed_tabloids(cycles, &mut boxes);
    }
    total
}

#[test]
fn murnaghan_nakayama_matches_jacobi_trudi() {
    for n in 1..=7u32 {
        for lambda in enumerate_partitions(n) {
            for rho in enumerate_partitions(n) {
                let ct = CycleType::new(rho.clone(), n).unwrap();
                let expected = jacobi_trudi(&lambda, &ct.full_cycle_lengths());
                assert_eq!(mn_character(&lambda, &ct).unwrap(), BigInt::from(expected), "lambda={lambda}, rho={rho}");
            }
        }
    }
}

#[test]
fn degrees_match_hook_formula() {
    for n in 1..=8u32 {
        for lambda in enumerate_partitions(n) {
            let id = CycleType::identity(n);
            assert_eq!(mn_character(&lambda, &id).unwrap(), BigInt::from(lambda.specht_dimension()));
        }
    }
}

#[test]
fn column_orthogonality_at_transposition() {
    // sum_lambda chi(1) chi(t) = 0 for t != 1.
    for n in 2..=9u32 {
        let t = CycleType::transposition(n).unwrap();
        let id = CycleType::identity(n);
        let s: BigInt = enumerate_partitions(n).map(|l| mn_character(&l, &id).unwrap() * mn_character(&l, &t).unwrap()).sum();
        assert_eq!(s, BigInt::from(0));
    }
}
