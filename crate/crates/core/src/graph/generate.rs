use std::collections::BTreeSet;

use rand::Rng;

use super::Graph;

fn pair_index(n: usize, u: usize, v: usize) -> usize {
    let (u, v) = (u.min(v), u.max(v));
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn canonical_mask(n: usize, edges: &[(usize, usize)], perms: &[Vec<usize>]) -> u64 {
    perms
        .iter()
        .map(|p| {
            edges
                .iter()
                .fold(0u64, |mask, &(u, v)| mask | 1 << pair_index(n, p[u], p[v]))
        })
        .min()
        .unwrap_or(0)
}

fn decode(n: usize, mask: u64) -> Graph {
    let mut edges = BTreeSet::new();
    for u in 0..n {
        for v in u + 1..n {
            if mask >> pair_index(n, u, v) & 1 == 1 {
                edges.insert((u, v));
            }
        }
    }
    Graph::from_edge_set(n, edges)
}

/// One representative of every isomorphism class of simple graphs on
/// exactly `n` vertices, in increasing order of canonical edge mask.
///
/// Built by extending the classes on `n - 1` vertices with every possible
/// neighborhood of a new vertex, so it is only practical for `n <= 7`.
pub fn graphs_up_to_isomorphism(n: usize) -> Vec<Graph> {
    assert!(
        n <= 8,
        "isomorphism class enumeration is limited to 8 vertices"
    );
    if n == 0 {
        return vec![Graph::edgeless(0)];
    }
    let perms = permutations(n);
    let mut classes = BTreeSet::new();
    for base in graphs_up_to_isomorphism(n - 1) {
        let new = n - 1;
        for nbrs in 0u32..1 << new {
            let mut edges = base.edges().to_vec();
            edges.extend((0..new).filter(|&u| nbrs >> u & 1 == 1).map(|u| (u, new)));
            classes.insert(canonical_mask(n, &edges, &perms));
        }
    }
    classes.into_iter().map(|mask| decode(n, mask)).collect()
}

/// Erdős–Rényi style graph: every pair is an edge with probability `p`.
pub fn random_graph<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = BTreeSet::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.insert((u, v));
            }
        }
    }
    Graph::from_edge_set(n, edges)
}
