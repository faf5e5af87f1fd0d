//! Class-algebra computations that pair a concrete permutation group
//! with a character table: structure constants by direct counting and
//! by the character formula, permutation characters, coset-graph
//! component counts, and the character-theoretic lower bound for them.

use super::cyclotomic::{Cyc, CycError};
use super::table::{CharacterTable, TableError};
use crate::group::{Group, GroupError};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::{BTreeMap, BTreeSet};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ClassAlgError {
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cyc(#[from] CycError),
    #[error("group and table classes do not match: {0}")]
    ClassMismatch(String),
    #[error("{context}: value is not rational")]
    NotRational { context: String },
    #[error("{context}: value {value} is not a non-negative integer")]
    NotAnInteger { context: String, value: String },
    #[error("check failed: {0}")]
    CheckFailed(String),
}

/// Bijection between a group's conjugacy classes and a table's columns.
#[derive(Debug, Clone)]
pub struct ClassMatch {
    pub group_to_table: Vec<usize>,
    pub table_to_group: Vec<usize>,
}

/// Matches classes by (element order, class size), breaking ties by
/// position. Classes sharing both statistics (such as the two classes
/// of 5-elements in Alt(5), or of 7-elements in PSL(3,2)) are swapped
/// by a group automorphism or a Galois symmetry of the table, either of
/// which permutes the structure constants consistently, so any
/// order-respecting assignment yields the same constants. The
/// cross-check against direct counting exercises every triple and would
/// expose a table where that reasoning failed.
pub fn match_classes(group: &Group, table: &CharacterTable) -> Result<ClassMatch, ClassAlgError> {
    let classes = group.conjugacy_classes();
    if classes.len() != table.class_count() {
        return Err(ClassAlgError::ClassMismatch(format!(
            "group has {} classes, table has {}",
            classes.len(),
            table.class_count()
        )));
    }
    let mut gidx: Vec<usize> = (0..classes.len()).collect();
    gidx.sort_by_key(|&i| (classes[i].order, classes[i].members.len(), i));
    let mut tidx: Vec<usize> = (0..table.class_count()).collect();
    tidx.sort_by_key(|&i| (table.classes[i].elt_order, table.classes[i].size, i));
    let mut group_to_table = vec![0usize; classes.len()];
    let mut table_to_group = vec![0usize; classes.len()];
    for (&g, &t) in gidx.iter().zip(&tidx) {
        let (go, gs) = (classes[g].order, classes[g].members.len() as u64);
        let tc = &table.classes[t];
        if (go, gs) != (tc.elt_order, tc.size) {
            return Err(ClassAlgError::ClassMismatch(format!(
                "no table class with element order {go} and size {gs}"
            )));
        }
        group_to_table[g] = t;
        table_to_group[t] = g;
    }
    Ok(ClassMatch { group_to_table, table_to_group })
}

/// Number of pairs (a, b) with a in class i, b in class j, ab = x for a
/// fixed x in class v, counted by enumeration. Independent of the
/// choice of x.
pub fn class_constant_bruteforce(group: &Group, i: usize, j: usize, v: usize) -> u64 {
    let classes = group.conjugacy_classes();
    let x = classes[v].rep;
    let mut count = 0;
    for &a in &classes[i].members {
        let b = group.mul_idx(group.inv_idx(a), x);
        if group.class_of(b) as usize == j {
            count += 1;
        }
    }
    count
}

/// The same constant from character values:
///   a_ijv = |C_i||C_j|/|G| * sum_chi chi(x_i) chi(x_j) chi(x_v^-1) / chi(1).
/// Indices are table columns. Errors if the sum is not a non-negative
/// rational integer, which would mean the table is wrong.
pub fn class_constant_formula(
    table: &CharacterTable,
    i: usize,
    j: usize,
    v: usize,
) -> Result<u64, ClassAlgError> {
    let vinv = table.classes[v].inverse;
    let mut acc = Cyc::zero(table.conductor);
    for r in 0..table.class_count() {
        let term = table.chars[r][i].mul(&table.chars[r][j]).mul(&table.chars[r][vinv]);
        let deg = table.degree(r)?;
        acc = acc.add(&term.scale(&deg.recip()));
    }
    let context = format!("structure constant ({i},{j},{v})");
    let s = acc
        .as_rational()
        .ok_or_else(|| ClassAlgError::NotRational { context: context.clone() })?;
    let scale = BigRational::from_integer(BigInt::from(table.classes[i].size))
        * BigRational::from_integer(BigInt::from(table.classes[j].size))
        / BigRational::from_integer(BigInt::from(table.order));
    let a = s * scale;
    if !a.is_integer() || a.is_negative() {
        return Err(ClassAlgError::NotAnInteger { context, value: a.to_string() });
    }
    Ok(a.to_integer().to_u64().expect("constant fits in u64"))
}

#[derive(Debug, Serialize)]
pub struct PermCharacterReport {
    /// Fixed-point counts indexed by table class.
    pub values: Vec<u64>,
    /// Multiplicity of each table row in the permutation character.
    pub multiplicities: Vec<u64>,
    /// Inner product with itself; equals the number of H-H double cosets.
    pub norm: u64,
    pub double_cosets: usize,
}

/// Decomposes the character of the action on cosets of the subgroup
/// generated by `sub` and cross-checks its norm against a direct double
/// coset count.
pub fn perm_character(
    group: &Group,
    table: &CharacterTable,
    cm: &ClassMatch,
    sub: &[u32],
) -> Result<PermCharacterReport, ClassAlgError> {
    let action = group.coset_action(sub)?;
    let classes = group.conjugacy_classes();
    let k = table.class_count();
    let mut values = vec![0u64; k];
    for (gi, class) in classes.iter().enumerate() {
        values[cm.group_to_table[gi]] = action.fixed_points(class.rep) as u64;
    }
    let big_order = BigRational::from_integer(BigInt::from(table.order));
    let mut multiplicities = Vec::with_capacity(k);
    for r in 0..k {
        let mut acc = Cyc::zero(table.conductor);
        for v in 0..k {
            let w = BigRational::from_integer(BigInt::from(table.classes[v].size * values[v]));
            acc = acc.add(&table.chars[r][table.classes[v].inverse].scale(&w));
        }
        let context = format!("multiplicity of row {r} in the coset character");
        let m = acc
            .as_rational()
            .ok_or_else(|| ClassAlgError::NotRational { context: context.clone() })?
            / &big_order;
        if !m.is_integer() || m.is_negative() {
            return Err(ClassAlgError::NotAnInteger { context, value: m.to_string() });
        }
        multiplicities.push(m.to_integer().to_u64().unwrap());
    }
    let mut norm_acc = BigRational::zero();
    for v in 0..k {
        norm_acc += BigRational::from_integer(BigInt::from(
            table.classes[v].size * values[v] * values[v],
        ));
    }
    let norm = &norm_acc / &big_order;
    if !norm.is_integer() {
        return Err(ClassAlgError::NotAnInteger {
            context: "norm of the coset character".into(),
            value: norm.to_string(),
        });
    }
    let norm = norm.to_integer().to_u64().unwrap();
    let double_cosets = action.double_coset_count();
    if norm != double_cosets as u64 {
        return Err(ClassAlgError::CheckFailed(format!(
            "character norm {norm} disagrees with {double_cosets} double cosets"
        )));
    }
    // transitivity: the trivial character appears exactly once
    let orbit_sum: BigRational = (0..k)
        .map(|v| BigRational::from_integer(BigInt::from(table.classes[v].size * values[v])))
        .sum();
    if orbit_sum / &big_order != BigRational::one() {
        return Err(ClassAlgError::CheckFailed(
            "coset action is not transitive by the orbit count".into(),
        ));
    }
    Ok(PermCharacterReport { values, multiplicities, norm, double_cosets })
}

/// Table class of each power x^k of the chosen class representative,
/// for k = 0..order(x).
pub fn power_fusion(group: &Group, cm: &ClassMatch, class_idx: usize) -> Vec<usize> {
    let classes = group.conjugacy_classes();
    let x = classes[class_idx].rep;
    let ord = classes[class_idx].order as usize;
    let mut fusion = Vec::with_capacity(ord);
    let mut p = 0u32; // identity index
    for _ in 0..ord {
        fusion.push(cm.group_to_table[group.class_of(p) as usize]);
        p = group.mul_idx(p, x);
    }
    fusion
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct HypothesesReport {
    /// H meets the conjugate closure of C - 1 trivially.
    pub h0_disjoint: bool,
    /// The vertex set is closed under conjugation.
    pub h1_conj_closed: bool,
    /// Distinct conjugates of C intersect trivially.
    pub h2_trivial_intersections: bool,
    /// N(C) is a Frobenius group with kernel C: every element outside C
    /// acts on C - 1 without fixed points.
    pub h3_frobenius: bool,
}

impl HypothesesReport {
    pub fn all(&self) -> bool {
        self.h0_disjoint && self.h1_conj_closed && self.h2_trivial_intersections && self.h3_frobenius
    }
}

fn conjugate_closure_of_cyclic(group: &Group, class_idx: usize) -> Vec<u32> {
    let classes = group.conjugacy_classes();
    let c = group.cyclic_subgroup(classes[class_idx].rep);
    let mut verts = BTreeSet::new();
    for &x in &c {
        if x != 0 {
            verts.extend(classes[group.class_of(x) as usize].members.iter().copied());
        }
    }
    verts.into_iter().collect()
}

/// Checks the hypotheses under which the coset-graph component count is
/// controlled: subgroup H given by `sub`, cyclic C generated by the
/// representative of class `class_idx`.
pub fn hypotheses_check(group: &Group, sub: &[u32], class_idx: usize) -> HypothesesReport {
    let classes = group.conjugacy_classes();
    let c = group.cyclic_subgroup(classes[class_idx].rep);
    let cset: BTreeSet<u32> = c.iter().copied().collect();
    let verts = conjugate_closure_of_cyclic(group, class_idx);
    let vset: BTreeSet<u32> = verts.iter().copied().collect();
    let hset: BTreeSet<u32> = {
        let mut h: BTreeSet<u32> = sub.iter().copied().collect();
        h.insert(0);
        h
    };
    let h0_disjoint = hset.intersection(&vset).next().is_none();
    let h1_conj_closed = verts
        .iter()
        .all(|&x| {
            group.generator_indices().iter().all(|&g| vset.contains(&group.conj_idx(x, g)))
        });
    let normalizer: BTreeSet<u32> =
        group.normalizer_of_cyclic(classes[class_idx].rep).into_iter().collect();
    let mut h2 = true;
    'outer: for g in 0..group.order() as u32 {
        if normalizer.contains(&g) {
            continue;
        }
        for &x in &c {
            if x == 0 {
                continue;
            }
            if cset.contains(&group.conj_idx(x, g)) {
                h2 = false;
                break 'outer;
            }
        }
    }
    let mut h3 = true;
    'frob: for &n in &normalizer {
        if cset.contains(&n) {
            continue;
        }
        for &x in &c {
            if x != 0 && group.conj_idx(x, n) == x {
                h3 = false;
                break 'frob;
            }
        }
    }
    HypothesesReport {
        h0_disjoint,
        h1_conj_closed,
        h2_trivial_intersections: h2,
        h3_frobenius: h3,
    }
}

#[derive(Debug, Serialize)]
pub struct DeltaReport {
    pub vertex_count: usize,
    pub components: usize,
    pub component_sizes: Vec<usize>,
    /// Right cosets of H that meet the vertex set; adjacency never
    /// leaves a coset, so this must equal the component count.
    pub coset_count: usize,
    pub hypotheses: HypothesesReport,
}

/// Graph on the conjugate closure of C - 1 with y adjacent to z when
/// zy^-1 lies in H. Adjacency is exactly "same right coset of H", so
/// components are the coset slices; counting them both ways checks the
/// two code paths against each other. Requires the disjointness
/// hypothesis, otherwise the count has no meaning for the bound.
pub fn delta_graph(group: &Group, sub: &[u32], class_idx: usize) -> Result<DeltaReport, ClassAlgError> {
    let hypotheses = hypotheses_check(group, sub, class_idx);
    if !hypotheses.h0_disjoint {
        return Err(ClassAlgError::CheckFailed(
            "subgroup meets the vertex set, component count is meaningless".into(),
        ));
    }
    let verts = conjugate_closure_of_cyclic(group, class_idx);
    let hset: BTreeSet<u32> = {
        let mut h: BTreeSet<u32> = sub.iter().copied().collect();
        h.insert(0);
        h
    };
    let n = verts.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for a in 0..n {
        for b in a + 1..n {
            let d = group.mul_idx(verts[b], group.inv_idx(verts[a]));
            if hset.contains(&d) {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra] = rb;
                }
            }
        }
    }
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for i in 0..n {
        *sizes.entry(find(&mut parent, i)).or_insert(0) += 1;
    }
    let component_sizes: Vec<usize> = sizes.values().copied().collect();
    let components = component_sizes.len();
    let mut cosets = BTreeSet::new();
    for &y in &verts {
        let least = hset.iter().map(|&h| group.mul_idx(h, y)).min().unwrap();
        cosets.insert(least);
    }
    if cosets.len() != components {
        return Err(ClassAlgError::CheckFailed(format!(
            "{components} components but {} cosets meet the vertex set",
            cosets.len()
        )));
    }
    Ok(DeltaReport {
        vertex_count: n,
        components,
        component_sizes,
        coset_count: cosets.len(),
        hypotheses,
    })
}

/// Multiplicity of the trivial character in the restriction of row `r`
/// to the cyclic group whose power fusion is given.
fn trivial_in_restriction(
    table: &CharacterTable,
    fusion: &[usize],
    r: usize,
) -> Result<BigRational, ClassAlgError> {
    let mut acc = Cyc::zero(table.conductor);
    for &v in fusion {
        acc = acc.add(&table.chars[r][v]);
    }
    let context = format!("restriction of row {r} to the cyclic subgroup");
    let s = acc
        .as_rational()
        .ok_or_else(|| ClassAlgError::NotRational { context: context.clone() })?;
    let m = s / BigRational::from_integer(BigInt::from(fusion.len() as u64));
    if !m.is_integer() || m.is_negative() {
        return Err(ClassAlgError::NotAnInteger { context, value: m.to_string() });
    }
    Ok(m)
}

/// Lower bound for the component count of the coset graph:
///   |G:H| (|C|-1)^2 / sum_chi (m_chi / chi(1)) (|C| <chi|_C, 1> - chi(1))^2
/// where m_chi is the multiplicity of chi in the coset character and
/// the sum runs over constituents. Exact rational arithmetic.
pub fn component_lower_bound(
    table: &CharacterTable,
    multiplicities: &[u64],
    fusion: &[usize],
    index: u64,
) -> Result<BigRational, ClassAlgError> {
    let c = BigRational::from_integer(BigInt::from(fusion.len() as u64));
    let mut denom = BigRational::zero();
    for (r, &m) in multiplicities.iter().enumerate() {
        if m == 0 {
            continue;
        }
        let deg = table.degree(r)?;
        let t = &c * trivial_in_restriction(table, fusion, r)? - &deg;
        denom += BigRational::from_integer(BigInt::from(m)) / deg * &t * &t;
    }
    if denom.is_zero() {
        return Err(ClassAlgError::CheckFailed(
            "bound denominator vanishes, the restriction is trivial".into(),
        ));
    }
    let one = BigRational::one();
    let cm1 = &c - &one;
    Ok(BigRational::from_integer(BigInt::from(index)) * &cm1 * &cm1 / denom)
}

#[derive(Debug, Serialize)]
pub struct SliceRow {
    /// Table index of the class Y.
    pub class: usize,
    /// Structure constant counting products of two class members in Y.
    pub m: u64,
    /// Size of the slice, m |Y| / |I|.
    pub slice_size: u64,
}

#[derive(Debug, Serialize)]
pub struct SliceReport {
    pub rows: Vec<SliceRow>,
    pub total: u64,
}

/// For an involution class I, partitions the pairs with fixed first
/// coordinate by the class of their product: slice sizes m_Y |Y| / |I|
/// must be integers summing to |I|, and must agree with the direct
/// count for a fixed representative. Constants come from enumeration;
/// the character-formula route is cross-checked elsewhere.
pub fn involution_slices(
    group: &Group,
    cm: &ClassMatch,
    iclass: usize,
) -> Result<SliceReport, ClassAlgError> {
    let classes = group.conjugacy_classes();
    let gi = cm.table_to_group[iclass];
    if classes[gi].order != 2 {
        return Err(ClassAlgError::CheckFailed(format!(
            "class {iclass} has element order {}, not an involution class",
            classes[gi].order
        )));
    }
    let isize = classes[gi].members.len() as u64;
    let a = classes[gi].rep;
    let mut rows = Vec::new();
    let mut total = 0u64;
    for (gy, cy) in classes.iter().enumerate() {
        let m = class_constant_bruteforce(group, gi, gi, gy);
        if m == 0 {
            continue;
        }
        let ysize = cy.members.len() as u64;
        if m * ysize % isize != 0 {
            return Err(ClassAlgError::NotAnInteger {
                context: format!("slice size at class {gy}"),
                value: format!("{m}*{ysize}/{isize}"),
            });
        }
        let slice_size = m * ysize / isize;
        let direct = classes[gi]
            .members
            .iter()
            .filter(|&&b| group.class_of(group.mul_idx(a, b)) as usize == gy)
            .count() as u64;
        if direct != slice_size {
            return Err(ClassAlgError::CheckFailed(format!(
                "slice at class {gy}: direct count {direct} vs {slice_size}"
            )));
        }
        total += slice_size;
        rows.push(SliceRow { class: cm.group_to_table[gy], m, slice_size });
    }
    if total != isize {
        return Err(ClassAlgError::CheckFailed(format!(
            "slice sizes sum to {total}, expected {isize}"
        )));
    }
    Ok(SliceReport { rows, total })
}
