//! Directed-graph algorithms over explicit or oracle-backed arc sets.
//!
//! The scalable interface is an arc oracle `FnMut(usize, usize) -> bool` over
//! vertex positions `0..n`; nothing here ever materializes the arc set. Tarjan
//! SCC is provided for small materialized graphs as an independent cross-check.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum DigraphError {
    #[error("adjacency oracle is asymmetric at pair ({0}, {1})")]
    Asymmetric(usize, usize),
}

/// One BFS sweep; returns true iff every vertex is reached from `start`.
/// `forward` follows arcs u->v; otherwise arcs are traversed in reverse.
/// Terminates as soon as coverage is complete, so positive answers on dense
/// graphs cost far less than the worst-case n^2 oracle calls.
fn bfs_covers<F>(n: usize, start: usize, arc: &mut F, forward: bool) -> bool
where
    F: FnMut(usize, usize) -> bool,
{
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(start);
    // unvisited candidates, compacted as they are discovered
    let mut pending: Vec<usize> = (0..n).filter(|&v| v != start).collect();
    while let Some(u) = queue.pop_front() {
        if pending.is_empty() {
            return true;
        }
        pending.retain(|&v| {
            let hit = if forward { arc(u, v) } else { arc(v, u) };
            if hit {
                queue.push_back(v);
            }
            !hit
        });
    }
    pending.is_empty()
}

/// Double BFS from `start`: the graph is strongly connected iff `start`
/// reaches every vertex and every vertex reaches `start`. The boolean is
/// independent of the start vertex; callers pick one heuristically.
///
/// `n` must be positive; a single vertex with no arcs is strongly connected.
pub fn is_strongly_connected<F>(n: usize, start: usize, mut arc: F) -> bool
where
    F: FnMut(usize, usize) -> bool,
{
    debug_assert!(n > 0 && start < n);
    if n == 1 {
        return true;
    }
    bfs_covers(n, start, &mut arc, true) && bfs_covers(n, start, &mut arc, false)
}

/// Strongly connected components of a materialized digraph.
#[derive(Debug, Clone)]
pub struct SccResult {
    /// Component id per vertex; ids are assigned in discovery order.
    pub comp: Vec<usize>,
    pub count: usize,
}

/// Iterative Tarjan; suitable for graphs small enough to hold adjacency
/// lists in memory.
pub fn tarjan_scc(adj: &[Vec<usize>]) -> SccResult {
    let n = adj.len();
    const UNSET: usize = usize::MAX;
    let mut index = vec![UNSET; n];
    let mut lowlink = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSET; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut next_index = 0usize;
    let mut count = 0usize;
    // explicit DFS stack: (vertex, position in its adjacency list)
    let mut work: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSET {
            continue;
        }
        work.push((root, 0));
        index[root] = next_index;
        lowlink[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = work.last_mut() {
            if *pos < adj[v].len() {
                let w = adj[v][*pos];
                *pos += 1;
                if index[w] == UNSET {
                    index[w] = next_index;
                    lowlink[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    work.push((w, 0));
                } else if on_stack[w] {
                    lowlink[v] = lowlink[v].min(index[w]);
                }
            } else {
                work.pop();
                if let Some(&(parent, _)) = work.last() {
                    lowlink[parent] = lowlink[parent].min(lowlink[v]);
                }
                if lowlink[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp[w] = count;
                        if w == v {
                            break;
                        }
                    }
                    count += 1;
                }
            }
        }
    }
    SccResult { comp, count }
}

/// Arcs of the condensation (component graph), deduplicated and sorted.
/// The result is acyclic by construction of SCCs.
pub fn condensation(adj: &[Vec<usize>], scc: &SccResult) -> Vec<(usize, usize)> {
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    for (u, outs) in adj.iter().enumerate() {
        for &v in outs {
            let (cu, cv) = (scc.comp[u], scc.comp[v]);
            if cu != cv {
                arcs.push((cu, cv));
            }
        }
    }
    arcs.sort_unstable();
    arcs.dedup();
    arcs
}

/// Connected components of an undirected graph given by a symmetric oracle.
/// Symmetry is verified while scanning; an asymmetric pair is an error.
/// Components are sorted by least member, members ascending.
pub fn undirected_components<F>(n: usize, mut adj: F) -> Result<Vec<Vec<usize>>, DigraphError>
where
    F: FnMut(usize, usize) -> bool,
{
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for u in 0..n {
        for v in (u + 1)..n {
            let a = adj(u, v);
            let b = adj(v, u);
            if a != b {
                return Err(DigraphError::Asymmetric(u, v));
            }
            if a {
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                if ru != rv {
                    parent[ru.max(rv)] = ru.min(rv);
                }
            }
        }
    }
    let mut buckets: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for v in 0..n {
        let r = find(&mut parent, v);
        buckets.entry(r).or_default().push(v);
    }
    Ok(buckets.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn oracle_of(adj: &[Vec<usize>]) -> impl FnMut(usize, usize) -> bool + '_ {
        |u, v| adj[u].contains(&v)
    }

    #[test]
    fn single_vertex_is_strongly_connected() {
        assert!(is_strongly_connected(1, 0, |_, _| false));
    }

    #[test]
    fn two_vertices_need_both_arcs() {
        assert!(!is_strongly_connected(2, 0, |u, v| u == 0 && v == 1));
        assert!(is_strongly_connected(2, 0, |u, v| u != v));
    }

    #[test]
    fn cycle_and_path() {
        let cycle = vec![vec![1], vec![2], vec![0]];
        let scc = tarjan_scc(&cycle);
        assert_eq!(scc.count, 1);
        let path = vec![vec![1], vec![2], vec![]];
        let scc = tarjan_scc(&path);
        assert_eq!(scc.count, 3);
        assert!(!is_strongly_connected(3, 0, oracle_of(&path)));
        assert!(is_strongly_connected(3, 1, oracle_of(&cycle)));
    }

    fn random_digraph(rng: &mut ChaCha8Rng) -> Vec<Vec<usize>> {
        let n = rng.gen_range(1..=60);
        let p: f64 = [0.01, 0.03, 0.08, 0.3][rng.gen_range(0..4)];
        (0..n)
            .map(|u| (0..n).filter(|&v| v != u && rng.gen_bool(p)).collect())
            .collect()
    }

    #[test]
    fn double_bfs_matches_tarjan_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5cc);
        for _ in 0..200 {
            let adj = random_digraph(&mut rng);
            let n = adj.len();
            let start = rng.gen_range(0..n);
            let fast = is_strongly_connected(n, start, oracle_of(&adj));
            let slow = tarjan_scc(&adj).count == 1;
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn result_is_invariant_under_vertex_relabeling() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xabcd);
        for _ in 0..50 {
            let adj = random_digraph(&mut rng);
            let n = adj.len();
            let plain = is_strongly_connected(n, 0, oracle_of(&adj));
            // random relabeling permutes the oracle scan order
            let mut label: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                label.swap(i, rng.gen_range(0..=i));
            }
            let relabeled =
                is_strongly_connected(n, label.iter().position(|&x| x == 0).unwrap(), |u, v| {
                    adj[label[u]].contains(&label[v])
                });
            assert_eq!(plain, relabeled);
        }
    }

    #[test]
    fn condensation_is_acyclic() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let adj = random_digraph(&mut rng);
            let scc = tarjan_scc(&adj);
            let arcs = condensation(&adj, &scc);
            // Kahn peel; all component vertices must be consumed
            let mut indeg = vec![0usize; scc.count];
            for &(_, v) in &arcs {
                indeg[v] += 1;
            }
            let mut ready: Vec<usize> =
                (0..scc.count).filter(|&c| indeg[c] == 0).collect();
            let mut seen = 0;
            while let Some(c) = ready.pop() {
                seen += 1;
                for &(u, v) in &arcs {
                    if u == c {
                        indeg[v] -= 1;
                        if indeg[v] == 0 {
                            ready.push(v);
                        }
                    }
                }
            }
            assert_eq!(seen, scc.count);
        }
    }

    #[test]
    fn undirected_components_partition_and_detect_asymmetry() {
        let comps = undirected_components(3, |_, _| false).unwrap();
        assert_eq!(comps, vec![vec![0], vec![1], vec![2]]);
        let comps = undirected_components(4, |u, v| u + v == 1 || u + v == 5).unwrap();
        assert_eq!(comps, vec![vec![0, 1], vec![2, 3]]);
        assert!(matches!(
            undirected_components(2, |u, v| u == 0 && v == 1),
            Err(DigraphError::Asymmetric(0, 1))
        ));
    }
}
