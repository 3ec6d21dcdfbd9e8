//! Brute-force references shared by the integration tests.
#![allow(dead_code)]

use qdecomp::{Graph, Qubo, VertexSet};

pub const ORACLE_LIMIT: usize = 22;

fn masks(g: &Graph) -> Vec<u32> {
    (0..g.vertex_count())
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect()
}

/// Size of the largest subset whose members are pairwise adjacent
/// (`adjacent = true`) or pairwise non-adjacent (`adjacent = false`),
/// by a table over all subsets.
fn best_subset(g: &Graph, adjacent: bool) -> usize {
    let n = g.vertex_count();
    assert!(
        n <= ORACLE_LIMIT,
        "oracle limited to {ORACLE_LIMIT} vertices"
    );
    let full = (1u32 << n) - 1;
    let nbrs: Vec<u32> = masks(g)
        .into_iter()
        .enumerate()
        .map(|(v, m)| if adjacent { m } else { !m & full & !(1 << v) })
        .collect();
    let mut ok = vec![false; 1 << n];
    ok[0] = true;
    let mut best = 0;
    for mask in 1usize..1 << n {
        let v = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        ok[mask] = ok[rest] && (rest as u32) & !nbrs[v] == 0;
        if ok[mask] {
            best = best.max(mask.count_ones() as usize);
        }
    }
    best
}

pub fn clique_number(g: &Graph) -> usize {
    best_subset(g, true)
}

/// Minimum cover size: everything outside a maximum independent set.
pub fn min_cover(g: &Graph) -> usize {
    g.vertex_count() - best_subset(g, false)
}

pub fn assignment(mask: u64, n: usize) -> Vec<bool> {
    (0..n).map(|i| mask >> i & 1 == 1).collect()
}

/// Minimum QUBO value and every assignment reaching it (within 1e-9).
pub fn qubo_minimizers(q: &Qubo) -> (f64, Vec<Vec<bool>>) {
    let n = q.num_vars();
    assert!(n <= 20);
    let values: Vec<(u64, f64)> = (0..1u64 << n)
        .map(|m| (m, q.evaluate(&assignment(m, n)).unwrap()))
        .collect();
    let min = values.iter().map(|v| v.1).fold(f64::INFINITY, f64::min);
    let argmins = values
        .iter()
        .filter(|v| v.1 <= min + 1e-9)
        .map(|v| assignment(v.0, n))
        .collect();
    (min, argmins)
}

/// Seeded random QUBO; `integer` draws small integer coefficients so that
/// ties are common.
pub fn random_qubo(n: usize, seed: u64, integer: bool) -> Qubo {
    use rand::Rng;
    let mut rng = qdecomp::rng::seeded(seed);
    let draw = |rng: &mut qdecomp::rng::Rng| {
        if integer {
            rng.gen_range(-3i32..=3) as f64
        } else {
            rng.gen_range(-2.0..2.0)
        }
    };
    let mut q = Qubo::new(n);
    q.add_offset(draw(&mut rng));
    for i in 0..n {
        q.add_linear(i, draw(&mut rng));
        for j in i + 1..n {
            if rng.gen_bool(0.5) {
                let c = draw(&mut rng);
                q.add_quadratic(i, j, c);
            }
        }
    }
    q
}

/// The fixed corpus: seeded Erdos-Renyi graphs with n in [8, 20] and
/// p in {0.1, ..., 0.9}.
pub fn corpus(count: usize) -> Vec<(u64, Graph)> {
    (0..count as u64)
        .map(|i| {
            let n = 8 + (i % 13) as usize;
            let p = (1 + i % 9) as f64 / 10.0;
            let seed = 1000 + i;
            (seed, Graph::erdos_renyi(n, p, seed))
        })
        .collect()
}

pub fn label_set(items: &[usize]) -> VertexSet {
    items.iter().copied().collect()
}

/// Small seeded random graphs for property tests.
pub fn small_graph(max_n: usize) -> impl proptest::strategy::Strategy<Value = Graph> {
    use proptest::prelude::*;
    (0..=max_n, 0.0..=1.0f64, any::<u64>()).prop_map(|(n, p, seed)| Graph::erdos_renyi(n, p, seed))
}
