//! Iterated commutators on a finite group: depth-n arc tests, the
//! two-sided fixed-depth Engel subset, directed Engel graphs, commuting
//! graph components, and the prime graph on the group order.
//!
//! Conventions: [x, 1 y] = [x,y] = x^-1 y^-1 x y and
//! [x, k+1 y] = [[x, k y], y]. The depth-n graph has an arc x -> y when
//! [x, n y] = 1; its vertex set is the group minus the elements that are
//! simultaneously left and right depth-n Engel.

use crate::digraph::undirected_components;
use crate::group::Group;
use crate::perm::Perm;
use serde::Serialize;
use std::collections::HashSet;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EngelError {
    #[error("depth must be at least 1")]
    BadDepth,
    #[error("graph with {vertices} vertices exceeds the materialization cap {cap}")]
    TooLargeToMaterialize { vertices: usize, cap: usize },
}

/// Result of iterating z -> [z, y] from a start element: either the
/// identity is reached after a finite number of steps (the least such
/// count), or the sequence enters a cycle avoiding the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Depth {
    Finite(u64),
    Infinite,
}

/// Reusable arc tester for a fixed group and depth. The inner loop works
/// on raw image arrays; per commutator step it runs three linear passes
/// (invert z, conjugate by y, multiply), exiting early once z is trivial.
pub struct ArcTester<'g> {
    group: &'g Group,
    n: u32,
    z: Vec<u16>,
    zinv: Vec<u16>,
    w: Vec<u16>,
    yinv: Vec<u16>,
}

impl<'g> ArcTester<'g> {
    pub fn new(group: &'g Group, n: u32) -> ArcTester<'g> {
        assert!(n >= 1, "depth must be at least 1");
        let d = group.degree() as usize;
        ArcTester {
            group,
            n,
            z: vec![0; d],
            zinv: vec![0; d],
            w: vec![0; d],
            yinv: vec![0; d],
        }
    }

    pub fn depth(&self) -> u32 {
        self.n
    }

    pub fn group(&self) -> &'g Group {
        self.group
    }

    /// True iff [x, n y] = 1 (indices into the group's element list).
    pub fn arc(&mut self, x: u32, y: u32) -> bool {
        let g = self.group;
        self.arc_perms_internal(g.elem(x).images(), g.elem(y).images())
    }

    /// True iff [x, n y] = 1 for explicit permutations of the right degree.
    pub fn arc_perms(&mut self, x: &Perm, y: &Perm) -> bool {
        assert_eq!(x.degree(), self.group.degree());
        assert_eq!(y.degree(), self.group.degree());
        self.arc_perms_internal(x.images(), y.images())
    }

    fn arc_perms_internal(&mut self, x: &[u16], y: &[u16]) -> bool {
        let d = x.len();
        for (i, &img) in y.iter().enumerate() {
            self.yinv[img as usize] = i as u16;
        }
        self.z.copy_from_slice(x);
        if self.z.iter().enumerate().all(|(i, &v)| v as usize == i) {
            return true;
        }
        for _ in 0..self.n {
            for (i, &img) in self.z.iter().enumerate() {
                self.zinv[img as usize] = i as u16;
            }
            // w = y^-1 z y as an image map
            for i in 0..d {
                self.w[i] = y[self.z[self.yinv[i] as usize] as usize];
            }
            // z <- z^-1 w; z[i] only reads zinv and w, so in-place is safe
            let mut trivial = true;
            for i in 0..d {
                let v = self.w[self.zinv[i] as usize];
                self.z[i] = v;
                trivial &= v as usize == i;
            }
            if trivial {
                return true;
            }
        }
        false
    }
}

/// Exact depth of the pair (x, y): the least k with [x, k y] = 1, or
/// Infinite when the commutator sequence cycles without reaching 1.
pub fn engel_depth(group: &Group, x: u32, y: u32) -> Depth {
    let yi = group.inv_idx(y);
    let mut seen = HashSet::new();
    let mut z = x;
    let mut k = 0u64;
    loop {
        if z == 0 {
            return Depth::Finite(k);
        }
        if !seen.insert(z) {
            return Depth::Infinite;
        }
        // [z, y] = z^-1 (y^-1 z y)
        let conj = group.mul_idx(group.mul_idx(yi, z), y);
        z = group.mul_idx(group.inv_idx(z), conj);
        k += 1;
    }
}

/// Elements g with [x, n g] = 1 and [g, n x] = 1 for every x, ascending.
/// The set is conjugation-invariant, so one test per conjugacy class
/// suffices; within a class the first failing x aborts the scan.
pub fn engel_set(group: &Group, n: u32) -> Vec<u32> {
    let mut tester = ArcTester::new(group, n);
    let order = group.order() as u32;
    let mut member = vec![false; order as usize];
    for class in group.conjugacy_classes() {
        let g = class.rep;
        let ok = (0..order).all(|x| tester.arc(x, g) && tester.arc(g, x));
        if ok {
            for &m in &class.members {
                member[m as usize] = true;
            }
        }
    }
    (0..order).filter(|&i| member[i as usize]).collect()
}

#[derive(Serialize)]
struct GraphJson {
    group_order: usize,
    depth: u32,
    vertex_count: usize,
    vertices: Vec<VertexJson>,
    arcs: Vec<(u32, u32)>,
}

#[derive(Serialize)]
struct VertexJson {
    index: u32,
    perm: String,
}

/// The depth-n graph of a group: vertex list plus arc-on-demand access.
/// Arcs are never stored; they are recomputed from the tester, so the
/// view scales to every group this crate can enumerate.
pub struct EngelGraphView<'g> {
    pub group: &'g Group,
    pub n: u32,
    pub vertices: Vec<u32>,
    is_vertex: Vec<bool>,
}

impl<'g> EngelGraphView<'g> {
    pub fn new(group: &'g Group, n: u32) -> Result<EngelGraphView<'g>, EngelError> {
        if n == 0 {
            return Err(EngelError::BadDepth);
        }
        let excluded: HashSet<u32> = engel_set(group, n).into_iter().collect();
        let vertices: Vec<u32> = (0..group.order() as u32)
            .filter(|i| !excluded.contains(i))
            .collect();
        let mut is_vertex = vec![false; group.order()];
        for &v in &vertices {
            is_vertex[v as usize] = true;
        }
        Ok(EngelGraphView { group, n, vertices, is_vertex })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_vertex(&self, elem: u32) -> bool {
        self.is_vertex[elem as usize]
    }

    pub fn tester(&self) -> ArcTester<'g> {
        ArcTester::new(self.group, self.n)
    }

    /// Out-neighbors of a vertex (element indices, ascending).
    pub fn out_neighbors(&self, v: u32) -> Vec<u32> {
        let mut t = self.tester();
        self.vertices
            .iter()
            .copied()
            .filter(|&w| w != v && t.arc(v, w))
            .collect()
    }

    /// In-neighbors of a vertex (element indices, ascending).
    pub fn in_neighbors(&self, v: u32) -> Vec<u32> {
        let mut t = self.tester();
        self.vertices
            .iter()
            .copied()
            .filter(|&w| w != v && t.arc(w, v))
            .collect()
    }

    /// Adjacency lists by vertex position, for graphs under the cap.
    pub fn materialize(&self, cap: usize) -> Result<Vec<Vec<usize>>, EngelError> {
        let nv = self.vertices.len();
        if nv > cap {
            return Err(EngelError::TooLargeToMaterialize { vertices: nv, cap });
        }
        let mut t = self.tester();
        let mut adj = vec![Vec::new(); nv];
        for (i, &v) in self.vertices.iter().enumerate() {
            for (j, &w) in self.vertices.iter().enumerate() {
                if i != j && t.arc(v, w) {
                    adj[i].push(j);
                }
            }
        }
        Ok(adj)
    }

    /// GraphViz DOT text; vertices are labeled with cycle notation.
    pub fn to_dot(&self, cap: usize) -> Result<String, EngelError> {
        let adj = self.materialize(cap)?;
        let mut out = String::from("digraph engel {\n");
        for &v in &self.vertices {
            let _ = writeln!(out, "  n{} [label=\"{}\"];", v, self.group.elem(v));
        }
        for (i, nbrs) in adj.iter().enumerate() {
            for &j in nbrs {
                let _ = writeln!(out, "  n{} -> n{};", self.vertices[i], self.vertices[j]);
            }
        }
        out.push_str("}\n");
        Ok(out)
    }

    /// Deterministic JSON: vertices ascending, arcs in lexicographic order.
    pub fn to_json(&self, cap: usize) -> Result<String, EngelError> {
        let adj = self.materialize(cap)?;
        let vertices: Vec<VertexJson> = self
            .vertices
            .iter()
            .map(|&v| VertexJson { index: v, perm: self.group.elem(v).to_string() })
            .collect();
        let mut arcs = Vec::new();
        for (i, nbrs) in adj.iter().enumerate() {
            for &j in nbrs {
                arcs.push((self.vertices[i], self.vertices[j]));
            }
        }
        let doc = GraphJson {
            group_order: self.group.order(),
            depth: self.n,
            vertex_count: vertices.len(),
            vertices,
            arcs,
        };
        Ok(serde_json::to_string_pretty(&doc).expect("serializable"))
    }
}

/// Connected components of the commuting graph on the non-central
/// elements, each sorted ascending, ordered by least member. Edges are
/// walked class by class: the centralizer of one representative is
/// computed directly and transported to the other members along stored
/// conjugators, which costs O(|G|) per class instead of O(|G|^2) overall.
pub fn commuting_components(group: &Group) -> Vec<Vec<u32>> {
    let order = group.order() as u32;
    let central: HashSet<u32> = group.center().iter().copied().collect();
    let mut parent: Vec<u32> = (0..order).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            parent[x as usize] = parent[parent[x as usize] as usize];
            x = parent[x as usize];
        }
        x
    }
    fn union(parent: &mut [u32], a: u32, b: u32) {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            parent[ra.max(rb) as usize] = ra.min(rb);
        }
    }
    for class in group.conjugacy_classes() {
        if central.contains(&class.rep) {
            continue;
        }
        let cent = group.centralizer_of(class.rep);
        let conjugators = group.class_conjugators(class);
        for (k, &m) in class.members.iter().enumerate() {
            let c = conjugators[k];
            for &u in &cent {
                let uc = if k == 0 { u } else { group.conj_idx(u, c) };
                if uc != m && !central.contains(&uc) {
                    union(&mut parent, m, uc);
                }
            }
        }
    }
    let mut comps: std::collections::BTreeMap<u32, Vec<u32>> = Default::default();
    for v in 0..order {
        if central.contains(&v) {
            continue;
        }
        let root = find(&mut parent, v);
        comps.entry(root).or_default().push(v);
    }
    comps.into_values().collect()
}

/// The prime graph of a group: vertices are the primes dividing the
/// order, p and r are adjacent when some element has order divisible
/// by p*r.
pub struct PrimeGraph {
    pub primes: Vec<u64>,
    pub edges: Vec<(u64, u64)>,
    pub components: Vec<Vec<u64>>,
}

impl PrimeGraph {
    /// Components that avoid the prime 2.
    pub fn odd_components(&self) -> Vec<Vec<u64>> {
        self.components
            .iter()
            .filter(|c| !c.contains(&2))
            .cloned()
            .collect()
    }
}

pub fn prime_graph(group: &Group) -> PrimeGraph {
    let primes = group.primes();
    let spectrum = group.order_spectrum();
    let mut edges = Vec::new();
    let k = primes.len();
    let mut adj = vec![Vec::new(); k];
    for i in 0..k {
        for j in i + 1..k {
            let pq = primes[i] * primes[j];
            if spectrum.iter().any(|&o| o % pq == 0) {
                edges.push((primes[i], primes[j]));
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    let comps =
        undirected_components(k, |a, b| adj[a].contains(&b)).expect("adjacency built symmetric");
    let components = comps
        .into_iter()
        .map(|c| c.into_iter().map(|i| primes[i]).collect())
        .collect();
    PrimeGraph { primes, edges, components }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{alternating_gens, symmetric_gens};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn alt(n: u16) -> Group {
        Group::generate(alternating_gens(n), 1 << 20).unwrap()
    }

    fn sym(n: u16) -> Group {
        Group::generate(symmetric_gens(n), 1 << 20).unwrap()
    }

    #[test]
    fn depth_one_is_commuting() {
        let g = sym(4);
        let mut t = ArcTester::new(&g, 1);
        for x in 0..24u32 {
            for y in 0..24u32 {
                let commute = g.mul_idx(x, y) == g.mul_idx(y, x);
                assert_eq!(t.arc(x, y), commute);
                assert_eq!(t.arc(y, x), commute);
            }
        }
    }

    #[test]
    fn depth_matches_arc_for_all_small_pairs() {
        let g = sym(3);
        for x in 0..6u32 {
            for y in 0..6u32 {
                let d = engel_depth(&g, x, y);
                for n in 1..=4u32 {
                    let mut t = ArcTester::new(&g, n);
                    let expected = matches!(d, Depth::Finite(k) if k <= n as u64);
                    assert_eq!(t.arc(x, y), expected);
                }
            }
        }
    }

    #[test]
    fn frozen_depth_values_in_alt5() {
        let g = alt(5);
        let five = g.index_of(&Perm::parse("(0,1,2,3,4)", 5).unwrap()).unwrap();
        let three = g.index_of(&Perm::parse("(0,1,2)", 5).unwrap()).unwrap();
        assert_eq!(engel_depth(&g, five, three), Depth::Infinite);
        assert_eq!(engel_depth(&g, 0, three), Depth::Finite(0));
        assert_eq!(engel_depth(&g, three, 0), Depth::Finite(1));
        assert_eq!(engel_depth(&g, five, five), Depth::Finite(1));
    }

    #[test]
    fn normalizer_elements_reach_depth_two() {
        // z in N(<g>) gives [z,g] in <g>, which commutes with g, so the
        // second commutator is trivial
        for g in [alt(5), sym(4)] {
            let mut t = ArcTester::new(&g, 2);
            for cls in g.conjugacy_classes() {
                if cls.order == 1 {
                    continue;
                }
                let rep = cls.rep;
                for z in g.normalizer_of_cyclic(rep) {
                    assert!(t.arc(z, rep));
                }
            }
        }
    }

    #[test]
    fn arcs_are_conjugation_equivariant() {
        let g = alt(5);
        let mut rng = ChaCha8Rng::seed_from_u64(0xE9);
        for n in [1u32, 2, 3] {
            let mut t = ArcTester::new(&g, n);
            for _ in 0..200 {
                let x = rng.gen_range(0..60u32);
                let y = rng.gen_range(0..60u32);
                let c = rng.gen_range(0..60u32);
                assert_eq!(
                    t.arc(x, y),
                    t.arc(g.conj_idx(x, c), g.conj_idx(y, c))
                );
            }
        }
    }

    #[test]
    fn deeper_graphs_contain_shallower_ones() {
        let g = sym(4);
        let mut rng = ChaCha8Rng::seed_from_u64(0x51);
        for _ in 0..300 {
            let x = rng.gen_range(0..24u32);
            let y = rng.gen_range(0..24u32);
            for n in 1..=3u32 {
                let mut tn = ArcTester::new(&g, n);
                let mut tn1 = ArcTester::new(&g, n + 1);
                if tn.arc(x, y) {
                    assert!(tn1.arc(x, y));
                }
            }
        }
    }

    #[test]
    fn depth_one_engel_set_is_the_center() {
        let d8 = Group::generate(
            vec![
                Perm::parse("(0,1,2,3)", 4).unwrap(),
                Perm::parse("(1,3)", 4).unwrap(),
            ],
            100,
        )
        .unwrap();
        assert_eq!(engel_set(&d8, 1), d8.center().to_vec());
        let s4 = sym(4);
        assert_eq!(engel_set(&s4, 1), vec![0]);
        // nilpotent group: every element is Engel at depth = class bound
        assert_eq!(engel_set(&d8, 2).len(), 8);
    }

    #[test]
    fn engel_sets_grow_with_depth() {
        let g = sym(4);
        let mut prev: HashSet<u32> = HashSet::new();
        for n in 1..=5u32 {
            let cur: HashSet<u32> = engel_set(&g, n).into_iter().collect();
            assert!(prev.is_subset(&cur), "depth {n}");
            prev = cur;
        }
    }

    #[test]
    fn graph_view_vertices_and_neighbors() {
        let g = alt(5);
        let view = EngelGraphView::new(&g, 2).unwrap();
        assert_eq!(view.vertex_count(), 59);
        assert!(!view.is_vertex(0));
        // out-neighbors of an involution at depth 1 = its centralizer
        // minus itself and the identity
        let inv = g.involutions()[0];
        let view1 = EngelGraphView::new(&g, 1).unwrap();
        let out = view1.out_neighbors(inv);
        let cent: Vec<u32> = g
            .centralizer_of(inv)
            .into_iter()
            .filter(|&c| c != 0 && c != inv)
            .collect();
        assert_eq!(out, cent);
        assert_eq!(view1.in_neighbors(inv), cent);
    }

    #[test]
    fn materialized_graph_respects_cap() {
        let g = sym(3);
        let view = EngelGraphView::new(&g, 2).unwrap();
        assert!(matches!(
            view.materialize(3),
            Err(EngelError::TooLargeToMaterialize { vertices: 5, cap: 3 })
        ));
        let adj = view.materialize(10).unwrap();
        assert_eq!(adj.len(), 5);
        let dot = view.to_dot(10).unwrap();
        assert!(dot.starts_with("digraph"));
        let js = view.to_json(10).unwrap();
        assert!(js.contains("\"vertex_count\": 5"));
    }

    #[test]
    fn commuting_components_of_small_groups() {
        // Alt(5): components are the maximal cyclic subgroups minus 1,
        // i.e. 5 Sylow-2 (V4), 10 C3, 6 C5 subgroups: 21 components
        let g = alt(5);
        let comps = commuting_components(&g);
        assert_eq!(comps.len(), 21);
        let mut sizes: Vec<usize> = comps.iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        let mut expect = vec![3usize; 5];
        expect.extend(vec![2usize; 10]);
        expect.extend(vec![4usize; 6]);
        expect.sort_unstable();
        assert_eq!(sizes, expect);
        for comp in &comps {
            assert!(comp.windows(2).all(|w| w[0] < w[1]));
        }
        // Sym(4) has a connected commuting graph? No: check partition size
        let s4 = sym(4);
        let total: usize = commuting_components(&s4).iter().map(|c| c.len()).sum();
        assert_eq!(total, 23);
    }

    #[test]
    fn commuting_components_match_pairwise_scan() {
        // independent O(n^2) recomputation on a small group
        let g = sym(4);
        let fast = commuting_components(&g);
        let n = g.order() as u32;
        let mut adj = vec![Vec::new(); n as usize];
        for a in 1..n {
            for b in 1..n {
                if a != b && g.mul_idx(a, b) == g.mul_idx(b, a) {
                    adj[a as usize].push(b as usize);
                }
            }
        }
        let slow_all =
            undirected_components(n as usize, |a, b| adj[a].contains(&b)).unwrap();
        let slow: Vec<Vec<u32>> = slow_all
            .into_iter()
            .filter(|c| !(c.len() == 1 && c[0] == 0))
            .map(|c| c.into_iter().map(|v| v as u32).collect())
            .collect();
        assert_eq!(fast, slow);
    }

    #[test]
    fn prime_graph_of_alt5_is_totally_disconnected() {
        let g = alt(5);
        let pg = prime_graph(&g);
        assert_eq!(pg.primes, vec![2, 3, 5]);
        assert!(pg.edges.is_empty());
        assert_eq!(pg.components.len(), 3);
        assert_eq!(pg.odd_components(), vec![vec![3], vec![5]]);
    }

    #[test]
    fn prime_graph_of_sym5_joins_two_and_three() {
        let g = sym(5);
        let pg = prime_graph(&g);
        assert_eq!(pg.primes, vec![2, 3, 5]);
        assert_eq!(pg.edges, vec![(2, 3)]); // a 6-element exists, no 10, no 15
        assert_eq!(pg.components, vec![vec![2, 3], vec![5]]);
        assert_eq!(pg.odd_components(), vec![vec![5]]);
    }
}
