//! Strong-connectivity analysis of depth-n graphs: group specification
//! parsing and construction, expected least depths for the standard
//! families, direct double-BFS decision, a Hall-subgroup criterion for
//! simple groups with a dominant commuting component, a component-
//! extension criterion, and a multi-threaded batch runner.

use crate::digraph::is_strongly_connected;
use crate::engel::{commuting_components, prime_graph, ArcTester, EngelError, EngelGraphView};
use crate::field::factor_prime_power;
use crate::group::{load_group, parse_generator_text, Group, GroupError};
use crate::matgrp::{psl2, psl2_order, psl3, psl3_order, sl3, sl3_order, MatError, MAX_EXPLICIT_ORDER};
use rand::{seq::SliceRandom, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::{HashSet, VecDeque};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConnError {
    #[error(transparent)]
    Engel(#[from] EngelError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error("every element is depth-{0} Engel: the graph has no vertices")]
    EmptyVertexSet(u32),
    #[error("criterion inapplicable: {0}")]
    CriterionInapplicable(String),
    #[error("no Hall subgroup found for the prime set {0:?} within the search budget")]
    HallNotFound(Vec<u64>),
    #[error("bad group spec: {0}")]
    BadSpec(String),
    #[error("group order {0} exceeds the explicit enumeration limit")]
    OrderTooLarge(u64),
}

/// A buildable group description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Alt(u16),
    Sym(u16),
    Psl2(u64),
    Psl3(u64),
    Sl3(u64),
    /// One of the bundled generator files: m10, m11, m12, m22, pgl2_9,
    /// pgammal2_9, sz8.
    Named(String),
    File(PathBuf),
}

const NAMED_ORDERS: &[(&str, u64)] = &[
    ("m10", 720),
    ("m11", 7920),
    ("m12", 95040),
    ("m22", 443520),
    ("pgl2_9", 720),
    ("pgammal2_9", 1440),
    ("sz8", 29120),
];

fn factorial(n: u16) -> u64 {
    (2..=n as u64).try_fold(1u64, |a, k| a.checked_mul(k)).unwrap_or(u64::MAX)
}

impl GroupSpec {
    /// Parses tokens such as ["psl2", "11"], ["alt6"], ["m11"],
    /// ["file", "x.gens"]. Parentheses, underscores and commas are
    /// treated as separators; names are case-insensitive.
    pub fn parse(tokens: &[String]) -> Result<GroupSpec, ConnError> {
        if tokens.is_empty() {
            return Err(ConnError::BadSpec("empty spec".into()));
        }
        if tokens[0].eq_ignore_ascii_case("file") {
            if tokens.len() < 2 {
                return Err(ConnError::BadSpec("file spec needs a path".into()));
            }
            return Ok(GroupSpec::File(PathBuf::from(tokens[1..].join(" "))));
        }
        if tokens.len() == 1 && tokens[0].ends_with(".gens") {
            return Ok(GroupSpec::File(PathBuf::from(tokens[0].clone())));
        }
        let norm = tokens
            .join(" ")
            .to_ascii_lowercase()
            .replace(['(', ')', '_', ','], " ");
        let mut parts: Vec<String> = norm.split_whitespace().map(str::to_string).collect();
        // compact forms like alt6 / sym7 / psl2 9 written as psl29 are not
        // split; only alt/sym allow attached digits
        if parts.len() == 1 {
            for prefix in ["alt", "sym"] {
                if let Some(rest) = parts[0].strip_prefix(prefix) {
                    if !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit()) {
                        parts = vec![prefix.to_string(), rest.to_string()];
                        break;
                    }
                }
            }
        }
        let arg = |parts: &[String], what: &str| -> Result<u64, ConnError> {
            parts
                .get(1)
                .and_then(|s| s.parse::<u64>().ok())
                .ok_or_else(|| ConnError::BadSpec(format!("{what} needs a numeric argument")))
        };
        match parts[0].as_str() {
            "m10" | "m11" | "m12" | "m22" | "sz8" => Ok(GroupSpec::Named(parts[0].clone())),
            "sz" if parts.get(1).map(String::as_str) == Some("8") => {
                Ok(GroupSpec::Named("sz8".into()))
            }
            "pgl2" if parts.get(1).map(String::as_str) == Some("9") => {
                Ok(GroupSpec::Named("pgl2_9".into()))
            }
            "pgammal2" if parts.get(1).map(String::as_str) == Some("9") => {
                Ok(GroupSpec::Named("pgammal2_9".into()))
            }
            "alt" => {
                let n = arg(&parts, "alt")?;
                if !(3..=20).contains(&n) {
                    return Err(ConnError::BadSpec(format!("alt degree {n} out of range")));
                }
                Ok(GroupSpec::Alt(n as u16))
            }
            "sym" => {
                let n = arg(&parts, "sym")?;
                if !(2..=20).contains(&n) {
                    return Err(ConnError::BadSpec(format!("sym degree {n} out of range")));
                }
                Ok(GroupSpec::Sym(n as u16))
            }
            "psl2" => {
                let q = arg(&parts, "psl2")?;
                if factor_prime_power(q).is_none() {
                    return Err(ConnError::BadSpec(format!("{q} is not a prime power")));
                }
                Ok(GroupSpec::Psl2(q))
            }
            "psl3" => {
                let q = arg(&parts, "psl3")?;
                if factor_prime_power(q).is_none() {
                    return Err(ConnError::BadSpec(format!("{q} is not a prime power")));
                }
                Ok(GroupSpec::Psl3(q))
            }
            "sl3" => {
                let q = arg(&parts, "sl3")?;
                if factor_prime_power(q).is_none() {
                    return Err(ConnError::BadSpec(format!("{q} is not a prime power")));
                }
                Ok(GroupSpec::Sl3(q))
            }
            other => Err(ConnError::BadSpec(format!("unknown group kind {other:?}"))),
        }
    }

    pub fn parse_str(s: &str) -> Result<GroupSpec, ConnError> {
        let tokens: Vec<String> = s.split_whitespace().map(str::to_string).collect();
        GroupSpec::parse(&tokens)
    }

    /// Canonical display id, stable across runs.
    pub fn id(&self) -> String {
        match self {
            GroupSpec::Alt(n) => format!("alt{n}"),
            GroupSpec::Sym(n) => format!("sym{n}"),
            GroupSpec::Psl2(q) => format!("psl2({q})"),
            GroupSpec::Psl3(q) => format!("psl3({q})"),
            GroupSpec::Sl3(q) => format!("sl3({q})"),
            GroupSpec::Named(name) => name.clone(),
            GroupSpec::File(p) => format!("file:{}", p.display()),
        }
    }

    /// The group order when it is known ahead of construction.
    pub fn known_order(&self) -> Option<u64> {
        match self {
            GroupSpec::Alt(n) => Some(factorial(*n) / 2),
            GroupSpec::Sym(n) => Some(factorial(*n)),
            GroupSpec::Psl2(q) => Some(psl2_order(*q)),
            GroupSpec::Psl3(q) => Some(psl3_order(*q)),
            GroupSpec::Sl3(q) => Some(sl3_order(*q)),
            GroupSpec::Named(name) => NAMED_ORDERS
                .iter()
                .find(|(n, _)| n == name)
                .map(|&(_, o)| o),
            GroupSpec::File(_) => None,
        }
    }

    /// Builds the group. Bundled generator files are read from `data_dir`
    /// and their enumerations may be cached in `cache_dir`.
    pub fn build(&self, data_dir: &Path, cache_dir: Option<&Path>) -> Result<Group, ConnError> {
        if let Some(order) = self.known_order() {
            if order > MAX_EXPLICIT_ORDER {
                return Err(ConnError::OrderTooLarge(order));
            }
        }
        match self {
            GroupSpec::Alt(n) => {
                let gens = crate::group::alternating_gens(*n);
                let limit = self.known_order().unwrap() as usize + 1;
                Ok(Group::generate_cached(gens, limit, cache_dir)?)
            }
            GroupSpec::Sym(n) => {
                let gens = crate::group::symmetric_gens(*n);
                let limit = self.known_order().unwrap() as usize + 1;
                Ok(Group::generate_cached(gens, limit, cache_dir)?)
            }
            GroupSpec::Psl2(q) => Ok(psl2(*q)?),
            GroupSpec::Psl3(q) => Ok(psl3(*q)?),
            GroupSpec::Sl3(q) => Ok(sl3(*q)?),
            GroupSpec::Named(name) => {
                let expected = self
                    .known_order()
                    .ok_or_else(|| ConnError::BadSpec(format!("unknown named group {name}")))?;
                let path = data_dir.join(format!("gens/{name}.gens"));
                let text = std::fs::read_to_string(&path).map_err(|e| {
                    ConnError::BadSpec(format!("cannot read {}: {e}", path.display()))
                })?;
                let (degree, gens) = parse_generator_text(&text)?;
                let g = Group::generate_cached(gens, expected as usize + 1, cache_dir)
                    .map_err(ConnError::Group)?;
                if g.order() as u64 != expected || g.degree() != degree {
                    return Err(ConnError::Group(GroupError::WrongOrder {
                        expected,
                        got: g.order() as u64,
                    }));
                }
                Ok(g)
            }
            GroupSpec::File(path) => Ok(load_group(path, MAX_EXPLICIT_ORDER as usize)?),
        }
    }
}

/// Expected least strong-connectivity depth for a group, where the
/// standard analysis pins one down.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Prediction {
    /// The least depth with a strongly connected graph.
    Exact { n: u32 },
    /// No depth works: the graph is never strongly connected.
    DoesNotExist,
    /// The value is computed and reported but not asserted against.
    Recorded,
}

fn two_adic_valuation(x: u64) -> u32 {
    debug_assert!(x > 0);
    x.trailing_zeros()
}

fn psl2_prediction(q: u64) -> Option<Prediction> {
    let (p, _) = factor_prime_power(q)?;
    if q < 4 {
        return None; // solvable cases, outside the family analysis
    }
    if q == 9 {
        return Some(Prediction::Exact { n: 3 });
    }
    if p == 2 || q % 8 == 5 {
        return Some(Prediction::DoesNotExist);
    }
    if q % 4 == 3 {
        let n = two_adic_valuation((q + 1) / 2) + 1;
        return Some(Prediction::Exact { n });
    }
    // remaining odd case: q = 1 mod 8
    Some(Prediction::Exact { n: 2 })
}

/// The expected least depth for the groups covered by the standard
/// classification; None where no value is claimed.
pub fn predict_least_depth(spec: &GroupSpec) -> Option<Prediction> {
    match spec {
        GroupSpec::Alt(5) => psl2_prediction(4),
        GroupSpec::Alt(6) => Some(Prediction::Exact { n: 3 }),
        GroupSpec::Psl2(q) => psl2_prediction(*q),
        GroupSpec::Psl3(2) => psl2_prediction(7),
        GroupSpec::Psl3(4) => Some(Prediction::Exact { n: 3 }),
        GroupSpec::Named(name) => match name.as_str() {
            "m10" => Some(Prediction::Exact { n: 3 }),
            "m11" | "m12" | "m22" => Some(Prediction::Exact { n: 2 }),
            "sz8" => Some(Prediction::DoesNotExist),
            "pgl2_9" | "pgammal2_9" => Some(Prediction::Recorded),
            _ => None,
        },
        GroupSpec::Sym(5) | GroupSpec::Sym(6) => Some(Prediction::Recorded),
        _ => None,
    }
}

/// Decides strong connectivity of the depth-n graph by double BFS from a
/// least-index involution (falling back to the first vertex).
pub fn is_strong_at(group: &Group, n: u32) -> Result<bool, ConnError> {
    let view = EngelGraphView::new(group, n)?;
    if view.vertices.is_empty() {
        return Err(ConnError::EmptyVertexSet(n));
    }
    let verts = &view.vertices;
    let start = verts
        .iter()
        .position(|&v| group.element_order(v) == 2)
        .unwrap_or(0);
    let mut tester = view.tester();
    Ok(is_strongly_connected(verts.len(), start, |i, j| {
        tester.arc(verts[i], verts[j])
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LeastDepth {
    Connected { n: u32 },
    NoneUpToCap { n_cap: u32 },
}

/// Least n in [2, n_cap] whose graph is strongly connected, or the
/// exhausted cap. Depth 1 is excluded: that graph is symmetric, so for a
/// nonabelian group it is never strongly connected.
pub fn least_strong_depth(group: &Group, n_cap: u32) -> Result<LeastDepth, ConnError> {
    for n in 2..=n_cap {
        if is_strong_at(group, n)? {
            return Ok(LeastDepth::Connected { n });
        }
    }
    Ok(LeastDepth::NoneUpToCap { n_cap })
}

/// A per-prime-set witness for the Hall criterion: an arc path from the
/// dominant commuting component into the Hall clique and one back out.
/// h_in ends in_path, h_out starts out_path; both lie in the clique and
/// commute, so the clique's two-way internal arcs close the circuit.
#[derive(Debug, Clone, Serialize)]
pub struct PsiWitness {
    pub psi: Vec<u64>,
    pub hall_order: u64,
    pub h_in: u32,
    pub h_out: u32,
    pub h_order: u64,
    /// Consecutive depth-n arcs from a dominant-component vertex to h_in.
    pub in_path: Vec<u32>,
    /// Consecutive depth-n arcs from h_out to a dominant-component vertex.
    pub out_path: Vec<u32>,
}

#[derive(Debug, Clone, Serialize)]
pub struct HallCriterionOutcome {
    pub connected: bool,
    pub witnesses: Vec<PsiWitness>,
    /// The prime set with no connecting path, when connected is false.
    pub failed_psi: Option<Vec<u64>>,
    /// "in" when the dominant component does not reach the failed
    /// clique, "out" when the clique does not reach it back.
    pub failed_direction: Option<&'static str>,
}

/// The dominant commuting component: the component of the commuting
/// graph containing every element of even order. Errors when even-order
/// elements are absent, central, or spread over several components.
pub fn dominant_commuting_component(group: &Group) -> Result<Vec<u32>, ConnError> {
    let comps = commuting_components(group);
    let idx = dominant_index(group, &comps)?;
    Ok(comps[idx].clone())
}

fn dominant_index(group: &Group, comps: &[Vec<u32>]) -> Result<usize, ConnError> {
    let mut comp_of = vec![usize::MAX; group.order()];
    for (ci, comp) in comps.iter().enumerate() {
        for &v in comp {
            comp_of[v as usize] = ci;
        }
    }
    let mut target = None;
    let mut any_even = false;
    for i in 0..group.order() as u32 {
        if group.element_order(i) % 2 != 0 {
            continue;
        }
        any_even = true;
        let ci = comp_of[i as usize];
        if ci == usize::MAX {
            return Err(ConnError::CriterionInapplicable(
                "an even-order element is central".into(),
            ));
        }
        match target {
            None => target = Some(ci),
            Some(t) if t != ci => {
                return Err(ConnError::CriterionInapplicable(
                    "even-order elements meet several commuting components".into(),
                ))
            }
            _ => {}
        }
    }
    if !any_even {
        return Err(ConnError::CriterionInapplicable(
            "the group has no even-order elements".into(),
        ));
    }
    Ok(target.unwrap())
}

/// Hall criterion for a simple group whose even-order elements lie in a
/// single commuting component Omega: for n >= 2 the depth-n graph is
/// strongly connected iff for every component psi of the prime graph
/// avoiding 2, the clique of nontrivial Hall psi-subgroup elements is
/// reachable from Omega and reaches Omega along arc paths. Omega and
/// each clique are internally strongly connected (commuting pairs give
/// two-way arcs), so the graph condenses to Omega plus one node per
/// clique, and conjugation carries paths between conjugate cliques; one
/// Hall subgroup per psi decides the rest. A single arc suffices when
/// one exists and is searched for first (centralizing and normalizing
/// elements, then an exhaustive scan); paths through intermediate
/// vertices are found by breadth-first search over the whole graph, so
/// a false answer is definitive.
pub fn hall_criterion(group: &Group, n: u32, seed: u64) -> Result<HallCriterionOutcome, ConnError> {
    if n < 2 {
        return Err(ConnError::CriterionInapplicable(
            "criterion needs depth at least 2".into(),
        ));
    }
    if !group.is_simple() {
        return Err(ConnError::CriterionInapplicable("group is not simple".into()));
    }
    let comps = commuting_components(group);
    let dom = dominant_index(group, &comps)?;
    // the condensation argument needs every component off the dominant
    // one to be a clique
    for (ci, comp) in comps.iter().enumerate() {
        if ci == dom {
            continue;
        }
        for (k, &a) in comp.iter().enumerate() {
            for &b in &comp[k + 1..] {
                if group.mul_idx(a, b) != group.mul_idx(b, a) {
                    return Err(ConnError::CriterionInapplicable(
                        "a commuting component off the dominant one is not a clique".into(),
                    ));
                }
            }
        }
    }
    let omega = &comps[dom];
    let omega_set: HashSet<u32> = omega.iter().copied().collect();
    // every nontrivial element is a vertex: in a finite group the
    // depth-n Engel elements lie in the Fitting subgroup, trivial here
    let order = group.order() as u32;
    let psi_components = prime_graph(group).odd_components();
    let mut tester = ArcTester::new(group, n);
    let mut witnesses = Vec::new();
    for psi in psi_components {
        let hall = group
            .hall_subgroup(&psi, seed)
            .ok_or_else(|| ConnError::HallNotFound(psi.clone()))?;
        let hall_order = hall.len() as u64;
        let mut clique: Vec<u32> = hall.into_iter().filter(|&h| h != 0).collect();
        clique.sort_unstable();
        for (k, &a) in clique.iter().enumerate() {
            for &b in &clique[k + 1..] {
                if group.mul_idx(a, b) != group.mul_idx(b, a) {
                    return Err(ConnError::CriterionInapplicable(format!(
                        "the Hall subgroup for {psi:?} is not abelian"
                    )));
                }
            }
        }
        let in_path = single_arc_into(group, &mut tester, omega, &omega_set, &clique)
            .or_else(|| clique_path(&mut tester, order, &omega_set, &clique, false));
        let Some(in_path) = in_path else {
            return Ok(HallCriterionOutcome {
                connected: false,
                witnesses,
                failed_psi: Some(psi),
                failed_direction: Some("in"),
            });
        };
        let out_path = single_arc_out_of(group, &mut tester, omega, &omega_set, &clique)
            .or_else(|| clique_path(&mut tester, order, &omega_set, &clique, true));
        let Some(out_path) = out_path else {
            return Ok(HallCriterionOutcome {
                connected: false,
                witnesses,
                failed_psi: Some(psi),
                failed_direction: Some("out"),
            });
        };
        let h_in = *in_path.last().unwrap();
        witnesses.push(PsiWitness {
            psi,
            hall_order,
            h_in,
            h_out: out_path[0],
            h_order: group.element_order(h_in),
            in_path,
            out_path,
        });
    }
    // revalidate every witness path arc by arc
    for w in &witnesses {
        assert!(
            omega_set.contains(&w.in_path[0]) && omega_set.contains(w.out_path.last().unwrap()),
            "witness paths must start and end in the dominant component"
        );
        assert!(
            group.mul_idx(w.h_in, w.h_out) == group.mul_idx(w.h_out, w.h_in),
            "witness clique endpoints must commute"
        );
        for path in [&w.in_path, &w.out_path] {
            assert!(path.len() >= 2 && path.iter().all(|&v| v != 0));
            for pair in path.windows(2) {
                assert!(tester.arc(pair[0], pair[1]), "witness arc failed revalidation");
            }
        }
    }
    Ok(HallCriterionOutcome {
        connected: true,
        witnesses,
        failed_psi: None,
        failed_direction: None,
    })
}

/// Single-arc search from Omega into the clique. An element normalizing
/// <h> sends [x, h] into <h>, so [x,_2 h] = 1 and the arc holds at every
/// depth >= 2; this covers centralizing elements too. Failing that, an
/// exhaustive ascending scan of Omega tests arcs directly.
fn single_arc_into(
    group: &Group,
    tester: &mut ArcTester,
    omega: &[u32],
    omega_set: &HashSet<u32>,
    clique: &[u32],
) -> Option<Vec<u32>> {
    for &h in clique {
        if let Some(x) = group
            .normalizer_of_cyclic(h)
            .into_iter()
            .find(|z| omega_set.contains(z))
        {
            return Some(vec![x, h]);
        }
    }
    for &h in clique {
        if let Some(x) = omega.iter().copied().find(|&x| tester.arc(x, h)) {
            return Some(vec![x, h]);
        }
    }
    None
}

/// Single-arc search from the clique into Omega. A centralizing element
/// gives a two-way arc; normalizing elements are no help in this
/// direction. Falls back to an exhaustive ascending scan of Omega.
fn single_arc_out_of(
    group: &Group,
    tester: &mut ArcTester,
    omega: &[u32],
    omega_set: &HashSet<u32>,
    clique: &[u32],
) -> Option<Vec<u32>> {
    for &h in clique {
        if let Some(y) = group
            .centralizer_of(h)
            .into_iter()
            .find(|c| omega_set.contains(c))
        {
            return Some(vec![h, y]);
        }
    }
    for &h in clique {
        if let Some(y) = omega.iter().copied().find(|&y| tester.arc(h, y)) {
            return Some(vec![h, y]);
        }
    }
    None
}

/// Breadth-first search between the clique and Omega over all nontrivial
/// elements. With outward = false it walks arcs backwards from the
/// clique and returns the first path from an Omega vertex into the
/// clique; with outward = true it walks forwards and returns a path from
/// the clique to an Omega vertex. Candidates are scanned in ascending
/// order, so the result is deterministic. None means no path exists.
fn clique_path(
    tester: &mut ArcTester,
    order: u32,
    omega_set: &HashSet<u32>,
    clique: &[u32],
    outward: bool,
) -> Option<Vec<u32>> {
    let mut parent: Vec<u32> = vec![u32::MAX; order as usize];
    let mut queue: VecDeque<u32> = VecDeque::new();
    for &h in clique {
        parent[h as usize] = h;
        queue.push_back(h);
    }
    while let Some(v) = queue.pop_front() {
        for u in 1..order {
            if parent[u as usize] != u32::MAX {
                continue;
            }
            let hit = if outward { tester.arc(v, u) } else { tester.arc(u, v) };
            if !hit {
                continue;
            }
            parent[u as usize] = v;
            if omega_set.contains(&u) {
                let mut path = vec![u];
                let mut w = v;
                loop {
                    path.push(w);
                    let p = parent[w as usize];
                    if p == w {
                        break;
                    }
                    w = p;
                }
                if outward {
                    path.reverse();
                }
                return Some(path);
            }
            queue.push_back(u);
        }
    }
    None
}

#[derive(Debug, Clone, Serialize)]
pub struct ExtensionReport {
    pub omega_size: usize,
    pub outside: usize,
    pub covered_by_normalizer: usize,
    pub covered_by_scan: usize,
    /// Vertices with no arc from or into Omega (at most 16 listed).
    pub uncovered: Vec<u32>,
    /// True iff every outside vertex links both ways into Omega; the
    /// graph is then strongly connected.
    pub applies: bool,
}

/// Component-extension criterion: the commuting component Omega of the
/// least involution induces a strongly connected subgraph of every
/// depth-n graph (commuting paths are two-way arcs), so if every vertex
/// outside Omega has an in-arc from Omega and an out-arc into Omega, the
/// whole graph is strongly connected. Inbound witnesses are first sought
/// in N(<g>) (normalizing elements reach depth 2), then by exhaustive
/// scan; a failure on any vertex makes the criterion inconclusive, not a
/// disconnection proof.
pub fn extension_criterion(group: &Group, n: u32, seed: u64) -> Result<ExtensionReport, ConnError> {
    if n < 2 {
        return Err(ConnError::CriterionInapplicable(
            "criterion needs depth at least 2".into(),
        ));
    }
    let view = EngelGraphView::new(group, n)?;
    if view.vertices.is_empty() {
        return Err(ConnError::EmptyVertexSet(n));
    }
    let involution = *group
        .involutions()
        .first()
        .ok_or_else(|| ConnError::CriterionInapplicable("no involutions".into()))?;
    let comps = commuting_components(group);
    let omega = comps
        .into_iter()
        .find(|c| c.binary_search(&involution).is_ok())
        .expect("the involution is non-central");
    let omega_set: HashSet<u32> = omega.iter().copied().collect();
    let mut tester = ArcTester::new(group, n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut shuffled = omega.clone();
    shuffled.shuffle(&mut rng);
    let mut covered_by_normalizer = 0usize;
    let mut covered_by_scan = 0usize;
    let mut uncovered = Vec::new();
    let mut outside = 0usize;
    for &g in &view.vertices {
        if omega_set.contains(&g) {
            continue;
        }
        outside += 1;
        let normalizer_in = group
            .normalizer_of_cyclic(g)
            .into_iter()
            .find(|z| omega_set.contains(z));
        let inbound = normalizer_in
            .or_else(|| omega.iter().copied().find(|&x| tester.arc(x, g)));
        let outbound = inbound
            .as_ref()
            .and_then(|_| shuffled.iter().copied().find(|&y| tester.arc(g, y)));
        match (inbound, outbound) {
            (Some(_), Some(_)) => {
                if normalizer_in.is_some() {
                    covered_by_normalizer += 1;
                } else {
                    covered_by_scan += 1;
                }
            }
            _ => {
                if uncovered.len() < 16 {
                    uncovered.push(g);
                }
            }
        }
    }
    let applies = uncovered.is_empty();
    Ok(ExtensionReport {
        omega_size: omega.len(),
        outside,
        covered_by_normalizer,
        covered_by_scan,
        uncovered,
        applies,
    })
}

/// Elements of N(<g>) outside <g>, even-order witnesses first; each
/// normalizing element has a depth-2 arc into g.
#[derive(Debug, Clone, Serialize)]
pub struct InboundWitness {
    pub z: u32,
    pub order: u64,
    pub even_order: bool,
    pub in_omega: Option<bool>,
}

pub fn normalizer_inbound(group: &Group, g: u32, omega: Option<&[u32]>) -> Vec<InboundWitness> {
    let cyc: HashSet<u32> = group.cyclic_subgroup(g).into_iter().collect();
    let omega_set: Option<HashSet<u32>> =
        omega.map(|o| o.iter().copied().collect::<HashSet<u32>>());
    let mut out: Vec<InboundWitness> = group
        .normalizer_of_cyclic(g)
        .into_iter()
        .filter(|z| !cyc.contains(z))
        .map(|z| {
            let order = group.element_order(z);
            InboundWitness {
                z,
                order,
                even_order: order % 2 == 0,
                in_omega: omega_set.as_ref().map(|s| s.contains(&z)),
            }
        })
        .collect();
    out.sort_by_key(|w| (!w.even_order, w.z));
    out
}

/// Searches for a target with an arc from `from`. Exhaustive ascending
/// when the budget covers all targets; otherwise a seeded sample without
/// replacement of `budget` targets.
pub fn random_escape(
    group: &Group,
    n: u32,
    from: u32,
    targets: &[u32],
    budget: usize,
    seed: u64,
) -> Option<u32> {
    let mut tester = ArcTester::new(group, n);
    if budget >= targets.len() {
        return targets.iter().copied().find(|&t| tester.arc(from, t));
    }
    let mut sample: Vec<u32> = targets.to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample.shuffle(&mut rng);
    sample[..budget].iter().copied().find(|&t| tester.arc(from, t))
}

#[derive(Debug, Clone, Serialize)]
pub struct ConnectivityReport {
    pub group: String,
    pub order: u64,
    pub method: &'static str,
    pub n_cap: u32,
    pub outcome: LeastDepth,
    pub prediction: Option<Prediction>,
    /// Some(true/false) only when the prediction asserts a value; a
    /// NoneUpToCap outcome is consistent with DoesNotExist (a sweep
    /// cannot prove absence, only fail to find).
    pub matched: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

fn compare(outcome: &LeastDepth, prediction: &Option<Prediction>) -> Option<bool> {
    match prediction {
        Some(Prediction::Exact { n }) => {
            Some(matches!(outcome, LeastDepth::Connected { n: m } if m == n))
        }
        Some(Prediction::DoesNotExist) => {
            Some(matches!(outcome, LeastDepth::NoneUpToCap { .. }))
        }
        Some(Prediction::Recorded) | None => None,
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub n_cap: u32,
    pub seed: u64,
    pub threads: usize,
    pub data_dir: PathBuf,
    pub cache_dir: Option<PathBuf>,
    pub timing: bool,
}

pub fn run_spec(spec: &GroupSpec, cfg: &SuiteConfig) -> Result<ConnectivityReport, ConnError> {
    let start = Instant::now();
    let group = spec.build(&cfg.data_dir, cfg.cache_dir.as_deref())?;
    let outcome = least_strong_depth(&group, cfg.n_cap)?;
    let prediction = predict_least_depth(spec);
    let matched = compare(&outcome, &prediction);
    Ok(ConnectivityReport {
        group: spec.id(),
        order: group.order() as u64,
        method: "direct",
        n_cap: cfg.n_cap,
        outcome,
        prediction,
        matched,
        timing_ms: cfg.timing.then(|| start.elapsed().as_millis() as u64),
    })
}

/// Runs the given specs on a small thread pool (work stealing by atomic
/// counter) and returns results in input order.
pub fn run_suite(
    specs: &[GroupSpec],
    cfg: &SuiteConfig,
) -> Vec<(String, Result<ConnectivityReport, ConnError>)> {
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Result<ConnectivityReport, ConnError>>>> =
        Mutex::new((0..specs.len()).map(|_| None).collect());
    let workers = cfg.threads.max(1).min(specs.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= specs.len() {
                    break;
                }
                let res = run_spec(&specs[i], cfg);
                slots.lock().unwrap()[i] = Some(res);
            });
        }
    });
    let results = slots.into_inner().unwrap();
    specs
        .iter()
        .zip(results)
        .map(|(spec, res)| (spec.id(), res.expect("every slot filled")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> SuiteConfig {
        SuiteConfig {
            n_cap: 4,
            seed: 1729,
            threads: 2,
            data_dir: PathBuf::from("data"),
            cache_dir: None,
            timing: false,
        }
    }

    #[test]
    fn spec_parsing_and_ids() {
        let cases = [
            ("psl2 11", GroupSpec::Psl2(11), "psl2(11)"),
            ("psl2(11)", GroupSpec::Psl2(11), "psl2(11)"),
            ("PSL2_11", GroupSpec::Psl2(11), "psl2(11)"),
            ("alt 6", GroupSpec::Alt(6), "alt6"),
            ("alt6", GroupSpec::Alt(6), "alt6"),
            ("sym7", GroupSpec::Sym(7), "sym7"),
            ("m11", GroupSpec::Named("m11".into()), "m11"),
            ("sz 8", GroupSpec::Named("sz8".into()), "sz8"),
            ("pgl2 9", GroupSpec::Named("pgl2_9".into()), "pgl2_9"),
            ("psl3 4", GroupSpec::Psl3(4), "psl3(4)"),
            ("sl3 2", GroupSpec::Sl3(2), "sl3(2)"),
        ];
        for (input, expect, id) in cases {
            let got = GroupSpec::parse_str(input).unwrap();
            assert_eq!(got, expect, "{input}");
            assert_eq!(got.id(), id);
        }
        assert!(GroupSpec::parse_str("psl2 6").is_err());
        assert!(GroupSpec::parse_str("alt 2").is_err());
        assert!(GroupSpec::parse_str("nonsense").is_err());
        assert!(GroupSpec::parse_str("").is_err());
        assert!(matches!(
            GroupSpec::parse_str("file custom.gens").unwrap(),
            GroupSpec::File(_)
        ));
    }

    #[test]
    fn known_orders() {
        assert_eq!(GroupSpec::Alt(6).known_order(), Some(360));
        assert_eq!(GroupSpec::Sym(7).known_order(), Some(5040));
        assert_eq!(GroupSpec::Psl2(11).known_order(), Some(660));
        assert_eq!(GroupSpec::Psl3(4).known_order(), Some(20160));
        assert_eq!(GroupSpec::Named("m11".into()).known_order(), Some(7920));
        assert_eq!(GroupSpec::parse_str("m22").unwrap().known_order(), Some(443520));
    }

    #[test]
    fn frozen_predictions() {
        use Prediction::*;
        let cases: &[(&str, Option<Prediction>)] = &[
            ("alt6", Some(Exact { n: 3 })),
            ("alt5", Some(DoesNotExist)),
            ("m10", Some(Exact { n: 3 })),
            ("psl3 4", Some(Exact { n: 3 })),
            ("psl3 2", Some(Exact { n: 3 })),
            ("psl2 4", Some(DoesNotExist)),
            ("psl2 5", Some(DoesNotExist)),
            ("psl2 7", Some(Exact { n: 3 })),
            ("psl2 8", Some(DoesNotExist)),
            ("psl2 9", Some(Exact { n: 3 })),
            ("psl2 11", Some(Exact { n: 2 })),
            ("psl2 13", Some(DoesNotExist)),
            ("psl2 16", Some(DoesNotExist)),
            ("psl2 17", Some(Exact { n: 2 })),
            ("psl2 19", Some(Exact { n: 2 })),
            ("psl2 23", Some(Exact { n: 3 })),
            ("psl2 25", Some(Exact { n: 2 })),
            ("psl2 27", Some(Exact { n: 2 })),
            ("psl2 29", Some(DoesNotExist)),
            ("psl2 31", Some(Exact { n: 5 })),
            ("sz8", Some(DoesNotExist)),
            ("sym5", Some(Recorded)),
            ("sym6", Some(Recorded)),
            ("pgl2 9", Some(Recorded)),
            ("pgammal2 9", Some(Recorded)),
            ("m11", Some(Exact { n: 2 })),
            ("m12", Some(Exact { n: 2 })),
            ("m22", Some(Exact { n: 2 })),
            ("sym7", None),
            ("psl3 3", None),
        ];
        for (spec, expect) in cases {
            let parsed = GroupSpec::parse_str(spec).unwrap();
            assert_eq!(predict_least_depth(&parsed), *expect, "{spec}");
        }
    }

    #[test]
    fn valuation_rule_for_q_3_mod_4() {
        // for q = 3 mod 4 the predicted depth n satisfies: 2^(n-1)
        // exactly divides (q+1)/2
        for q in [7u64, 11, 19, 23, 27, 31, 43, 47, 59, 79] {
            assert_eq!(q % 4, 3);
            let Some(Prediction::Exact { n }) = psl2_prediction(q) else {
                panic!("expected an exact prediction for q = {q}")
            };
            let m = (q + 1) / 2;
            let pow = 1u64 << (n - 1);
            assert_eq!(m % pow, 0, "q = {q}");
            assert_ne!(m % (pow * 2), 0, "q = {q}");
        }
    }

    #[test]
    fn direct_sweep_of_psl2_7_finds_depth_three() {
        let g = psl2(7).unwrap();
        assert!(!is_strong_at(&g, 2).unwrap());
        assert!(is_strong_at(&g, 3).unwrap());
        assert_eq!(
            least_strong_depth(&g, 4).unwrap(),
            LeastDepth::Connected { n: 3 }
        );
    }

    #[test]
    fn direct_sweep_of_alt5_finds_nothing() {
        let g = GroupSpec::Alt(5).build(Path::new("data"), None).unwrap();
        assert_eq!(
            least_strong_depth(&g, 4).unwrap(),
            LeastDepth::NoneUpToCap { n_cap: 4 }
        );
    }

    #[test]
    fn nilpotent_group_has_no_vertices() {
        let d8 = Group::generate(
            vec![
                crate::perm::Perm::parse("(0,1,2,3)", 4).unwrap(),
                crate::perm::Perm::parse("(1,3)", 4).unwrap(),
            ],
            100,
        )
        .unwrap();
        assert!(matches!(
            least_strong_depth(&d8, 4),
            Err(ConnError::EmptyVertexSet(2))
        ));
    }

    #[test]
    fn hall_criterion_agrees_with_direct_on_psl2_7() {
        let g = psl2(7).unwrap();
        let at3 = hall_criterion(&g, 3, 1729).unwrap();
        assert!(at3.connected);
        assert!(is_strong_at(&g, 3).unwrap());
        assert_eq!(at3.witnesses.len(), 2); // prime sets {3} and {7}
        let w3 = at3.witnesses.iter().find(|w| w.psi == vec![3]).unwrap();
        assert_eq!(w3.hall_order, 3);
        assert_eq!(w3.in_path.len(), 2); // a normalizing involution
        assert_eq!(w3.out_path.len(), 2);
        let w7 = at3.witnesses.iter().find(|w| w.psi == vec![7]).unwrap();
        assert_eq!(w7.hall_order, 7);
        assert_eq!(w7.h_order, 7);
        // no single arc from the dominant component reaches an order-7
        // element at this depth; the path routes through an order-3 one
        assert_eq!(w7.in_path.len(), 3);
        assert_eq!(g.element_order(w7.in_path[1]), 3);
        assert_eq!(w7.out_path.len(), 2);
        let at2 = hall_criterion(&g, 2, 1729).unwrap();
        assert!(!at2.connected);
        assert!(!is_strong_at(&g, 2).unwrap());
        // order-7 elements have no depth-2 arcs out of their own clique
        assert_eq!(at2.failed_psi, Some(vec![7]));
        assert_eq!(at2.failed_direction, Some("out"));
        assert_eq!(at2.witnesses.len(), 1);
        assert_eq!(at2.witnesses[0].psi, vec![3]);
    }

    #[test]
    fn hall_criterion_rejects_non_simple_groups() {
        let s4 = Group::generate(crate::group::symmetric_gens(4), 100).unwrap();
        assert!(matches!(
            hall_criterion(&s4, 2, 1),
            Err(ConnError::CriterionInapplicable(_))
        ));
    }

    #[test]
    fn dominant_component_of_psl2_7() {
        let g = psl2(7).unwrap();
        let omega = dominant_commuting_component(&g).unwrap();
        // all 21 involutions and all 42 elements of order 4 lie in it
        let evens: Vec<u32> = (0..168).filter(|&i| g.element_order(i) % 2 == 0).collect();
        assert_eq!(evens.len(), 63);
        for e in evens {
            assert!(omega.binary_search(&e).is_ok());
        }
        assert!(omega.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn extension_criterion_is_inconclusive_on_psl2_7() {
        let g = psl2(7).unwrap();
        // order-7 elements admit no single arc from the dominant
        // component at either depth, so the one-hop criterion cannot
        // apply even though the depth-3 graph is strongly connected
        for n in [2, 3] {
            let r = extension_criterion(&g, n, 1729).unwrap();
            assert!(!r.applies);
            assert_eq!(r.omega_size, 63);
            assert_eq!(r.outside, 104);
            assert_eq!(r.covered_by_normalizer, 56); // the order-3 elements
            assert_eq!(r.covered_by_scan, 0);
            assert_eq!(r.uncovered.len(), 16); // capped list of the 48 sevens
            assert!(r.uncovered.iter().all(|&v| g.element_order(v) == 7));
        }
    }

    #[test]
    fn extension_criterion_applies_on_sym5() {
        let g = Group::generate(crate::group::symmetric_gens(5), 200).unwrap();
        let r = extension_criterion(&g, 2, 1729).unwrap();
        assert!(r.applies, "uncovered: {:?}", r.uncovered);
        assert_eq!(r.omega_size, 95);
        assert_eq!(r.outside, 24); // the five-cycles
        assert_eq!(r.covered_by_normalizer, 24);
        assert_eq!(r.covered_by_scan, 0);
        // the one-hop certificate matches the direct decision
        assert!(is_strong_at(&g, 2).unwrap());
    }

    #[test]
    fn normalizer_inbound_witnesses() {
        let g = psl2(7).unwrap();
        let seven = (0..168).find(|&i| g.element_order(i) == 7).unwrap();
        let wits = normalizer_inbound(&g, seven, None);
        // N(<g>) has order 21, <g> order 7: 14 outside witnesses
        assert_eq!(wits.len(), 14);
        assert!(wits.iter().all(|w| w.order == 3));
        let mut t = ArcTester::new(&g, 2);
        for w in &wits {
            assert!(t.arc(w.z, seven));
        }
        let omega = dominant_commuting_component(&g).unwrap();
        let with_omega = normalizer_inbound(&g, seven, Some(&omega));
        assert!(with_omega.iter().all(|w| w.in_omega == Some(false)));
    }

    #[test]
    fn escape_search_is_deterministic() {
        let g = psl2(7).unwrap();
        let omega = dominant_commuting_component(&g).unwrap();
        let seven = (0..168).find(|&i| g.element_order(i) == 7).unwrap();
        let full = random_escape(&g, 3, seven, &omega, usize::MAX, 0);
        assert!(full.is_some());
        let sampled_a = random_escape(&g, 3, seven, &omega, 20, 42);
        let sampled_b = random_escape(&g, 3, seven, &omega, 20, 42);
        assert_eq!(sampled_a, sampled_b);
    }

    #[test]
    fn suite_runs_in_input_order() {
        let specs = vec![
            GroupSpec::Psl2(7),
            GroupSpec::Alt(5),
        ];
        let results = run_suite(&specs, &cfg());
        assert_eq!(results.len(), 2);
        assert_eq!(results[0].0, "psl2(7)");
        assert_eq!(results[1].0, "alt5");
        let r0 = results[0].1.as_ref().unwrap();
        assert_eq!(r0.outcome, LeastDepth::Connected { n: 3 });
        assert_eq!(r0.matched, Some(true));
        let r1 = results[1].1.as_ref().unwrap();
        assert_eq!(r1.outcome, LeastDepth::NoneUpToCap { n_cap: 4 });
        assert_eq!(r1.matched, Some(true));
        assert!(r0.timing_ms.is_none());
    }
}
