use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use theta_core::spin::*;

/// Scan all `2^E` edge subsets and keep the even ones.
fn even_by_scan(g: &DualGraph) -> Vec<Vec<usize>> {
    let m = g.edge_count();
    let mut out: Vec<Vec<usize>> = (0u32..(1 << m))
        .map(|mask| (0..m).filter(|&e| mask >> e & 1 == 1).collect::<Vec<_>>())
        .filter(|s| {
            let mut deg = vec![0; g.vertex_count()];
            for &e in s {
                let (a, b) = g.edges()[e];
                deg[a] += 1;
                deg[b] += 1;
            }
            deg.iter().all(|d| d % 2 == 0)
        })
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Random connected stable graph with at most `max_edges` edges, or `None`
/// when the draw is not stable.
fn random_graph(rng: &mut ChaCha8Rng, max_edges: usize) -> Option<DualGraph> {
    let n = rng.gen_range(1..=5usize);
    let genera: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    let extra = rng.gen_range(0..=max_edges.saturating_sub(edges.len()));
    for _ in 0..extra {
        edges.push((rng.gen_range(0..n), rng.gen_range(0..n)));
    }
    if edges.len() > max_edges {
        return None;
    }
    DualGraph::new(genera, edges).ok()
}

fn corpus(size: usize, max_edges: usize, seed: u64) -> Vec<DualGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < size {
        if let Some(g) = random_graph(&mut rng, max_edges) {
            out.push(g);
        }
    }
    out
}

#[test]
fn kernel_matches_scan_up_to_twelve_edges() {
    for g in corpus(150, 12, 7) {
        assert_eq!(even_subsets(&g).unwrap(), even_by_scan(&g), "{g}");
    }
}

#[test]
fn spin_scheme_degree_and_subset_count() {
    let graphs = corpus(200, 10, 11);
    for g in &graphs {
        let subsets = even_subsets(g).unwrap();
        assert_eq!(subsets.len() as u64, 1 << g.betti(&g.all_edges()));
        let total: u128 = spin_scheme(g).unwrap().iter().map(|s| s.count * s.multiplicity).sum();
        assert_eq!(total, 1u128 << (2 * g.genus()), "{g}");
    }
}

#[test]
fn irreducible_rows_match_supports() {
    for g in 2..=6u32 {
        for n in 0..=g {
            let Ok(rows) = spin_table_irreducible(g, n) else {
                assert!(g == n && n < 2);
                continue;
            };
            let graph = DualGraph::irreducible(g - n, n as usize).unwrap();
            let supports = spin_scheme(&graph).unwrap();
            for row in &rows {
                let matching: Vec<_> = supports
                    .iter()
                    .filter(|s| s.delta.len() as u32 == n - row.k)
                    .collect();
                assert!(matching.iter().all(|s| s.multiplicity == row.multiplicity));
                let sum: u128 = matching.iter().map(|s| s.count).sum();
                assert_eq!(sum, row.count, "g {g} n {n} k {}", row.k);
                assert_eq!(row.odd + row.even, row.count);
            }
            let degree: u128 = rows.iter().map(|r| r.count * r.multiplicity).sum();
            assert_eq!(degree, 1u128 << (2 * g));
        }
    }
}

#[test]
fn genus_three_parity_table() {
    let t = parity_table(3, 3).unwrap();
    let expected = "\tsmooth\tone node\ttwo nodes\tthree nodes\n\
mult 1 even\t36\t16\t8\t4\n\
mult 1 odd\t28\t16\t8\t4\n\
mult 2 even\t-\t10\t8\t6\n\
mult 2 odd\t-\t6\t8\t6\n\
mult 4 even\t-\t-\t3\t3\n\
mult 4 odd\t-\t-\t1\t3\n\
mult 8 even\t-\t-\t-\t1\n\
mult 8 odd\t-\t-\t-\t0\n";
    assert_eq!(t.to_tsv(), expected);
}

#[test]
fn graph_file_round_trip() {
    let text = "# two elliptic tails on a nodal core\nv 1\nv 1\nv 0\ne 0 2\ne 1 2\ne 2 2\n";
    let g: DualGraph = text.parse().unwrap();
    assert_eq!(g.genus(), 3);
    assert_eq!(g.to_string().parse::<DualGraph>().unwrap(), g);
    assert_eq!(even_subsets(&g).unwrap(), vec![vec![], vec![2]]);
}
