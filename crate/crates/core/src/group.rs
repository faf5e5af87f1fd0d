//! Finite permutation groups: enumeration, conjugacy classes, centralizers,
//! normalizers, Sylow/Hall subgroup search, coset actions, generator-file
//! import, and a binary on-disk element cache.
//!
//! Elements are addressed by their index in a deterministic BFS enumeration
//! (identity first, then closure layer by layer in generator order), so
//! indices are stable across runs and safe to use as golden-test keys.
//! No Cayley table is stored; products are recomposed and looked up.

use crate::perm::{Perm, PermError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};
use std::collections::{HashMap, HashSet, VecDeque};
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::sync::OnceLock;
use thiserror::Error;

/// Restart budget for the randomized subgroup searches.
pub const SEARCH_BUDGET: usize = 200;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("no generators and no degree given")]
    EmptyGenerators,
    #[error("generators have mixed degrees")]
    DegreeMismatch,
    #[error("closure exceeds the element limit {0}")]
    ClosureExceedsLimit(usize),
    #[error("the given element set is not a subgroup")]
    NotASubgroup,
    #[error("element does not belong to the (sub)group")]
    NotInGroup,
    #[error("bad generator file: {0}")]
    BadGeneratorFile(String),
    #[error("bad cache file: {0}")]
    BadCache(String),
    #[error("coset action degree {0} too large for an explicit permutation")]
    DegreeTooLarge(u64),
    #[error("constructed order {got}, expected {expected}")]
    WrongOrder { expected: u64, got: u64 },
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// A conjugacy class. `members[0]` is the representative (the member with
/// the least element index). `prov[k]` records how member k was discovered:
/// (position of its parent in `members`, generator id), enabling cheap
/// reconstruction of a conjugating element for every member.
#[derive(Debug, Clone)]
pub struct ConjClass {
    pub rep: u32,
    pub members: Vec<u32>,
    pub prov: Vec<(u32, u16)>,
    pub order: u64,
}

impl ConjClass {
    pub fn size(&self) -> u64 {
        self.members.len() as u64
    }
}

struct ClassData {
    classes: Vec<ConjClass>,
    class_of: Vec<u32>,
}

/// An enumerated finite permutation group. Immutable after construction;
/// derived data (orders, inverses, classes, center) is computed once on
/// first use and shared.
pub struct Group {
    degree: u16,
    gens: Vec<Perm>,
    gen_indices: Vec<u32>,
    elems: Vec<Perm>,
    index: HashMap<Perm, u32>,
    orders: OnceLock<Vec<u64>>,
    inverses: OnceLock<Vec<u32>>,
    classes: OnceLock<ClassData>,
    center: OnceLock<Vec<u32>>,
}

impl Group {
    /// BFS closure of the generators. The identity gets index 0; elements
    /// are then indexed in discovery order (queue order, generators tried
    /// in the order given), which is deterministic.
    pub fn generate(gens: Vec<Perm>, limit: usize) -> Result<Group, GroupError> {
        let degree = gens.first().ok_or(GroupError::EmptyGenerators)?.degree();
        Self::generate_with_degree(degree, gens, limit)
    }

    pub fn generate_with_degree(
        degree: u16,
        gens: Vec<Perm>,
        limit: usize,
    ) -> Result<Group, GroupError> {
        if gens.iter().any(|g| g.degree() != degree) {
            return Err(GroupError::DegreeMismatch);
        }
        let mut elems = vec![Perm::identity(degree)];
        let mut index = HashMap::new();
        index.insert(elems[0].clone(), 0u32);
        let mut queue: VecDeque<u32> = VecDeque::new();
        queue.push_back(0);
        while let Some(i) = queue.pop_front() {
            for g in &gens {
                let prod = elems[i as usize].compose(g);
                if !index.contains_key(&prod) {
                    if elems.len() >= limit {
                        return Err(GroupError::ClosureExceedsLimit(limit));
                    }
                    let id = elems.len() as u32;
                    index.insert(prod.clone(), id);
                    elems.push(prod);
                    queue.push_back(id);
                }
            }
        }
        let gen_indices = gens.iter().map(|g| index[g]).collect();
        Ok(Group {
            degree,
            gens,
            gen_indices,
            elems,
            index,
            orders: OnceLock::new(),
            inverses: OnceLock::new(),
            classes: OnceLock::new(),
            center: OnceLock::new(),
        })
    }

    pub fn degree(&self) -> u16 {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn generator_indices(&self) -> &[u32] {
        &self.gen_indices
    }

    pub fn elem(&self, i: u32) -> &Perm {
        &self.elems[i as usize]
    }

    pub fn elems(&self) -> &[Perm] {
        &self.elems
    }

    pub fn index_of(&self, p: &Perm) -> Option<u32> {
        self.index.get(p).copied()
    }

    pub fn identity_index(&self) -> u32 {
        0
    }

    pub fn mul_idx(&self, a: u32, b: u32) -> u32 {
        let prod = self.elems[a as usize].compose(&self.elems[b as usize]);
        self.index[&prod]
    }

    pub fn inv_idx(&self, a: u32) -> u32 {
        self.inverses()[a as usize]
    }

    /// Index of a^g = g^-1 a g.
    pub fn conj_idx(&self, a: u32, g: u32) -> u32 {
        let p = self.elems[a as usize].conjugate_by(&self.elems[g as usize]);
        self.index[&p]
    }

    fn inverses(&self) -> &[u32] {
        self.inverses.get_or_init(|| {
            self.elems
                .iter()
                .map(|p| self.index[&p.inverse()])
                .collect()
        })
    }

    pub fn element_order(&self, i: u32) -> u64 {
        self.orders.get_or_init(|| self.elems.iter().map(|p| p.order()).collect())[i as usize]
    }

    /// Distinct element orders, ascending.
    pub fn order_spectrum(&self) -> Vec<u64> {
        let mut v: Vec<u64> = (0..self.order() as u32)
            .map(|i| self.element_order(i))
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Primes dividing the group order, ascending.
    pub fn primes(&self) -> Vec<u64> {
        crate::field::prime_factors(self.order() as u64)
    }

    pub fn involutions(&self) -> Vec<u32> {
        (0..self.order() as u32)
            .filter(|&i| self.element_order(i) == 2)
            .collect()
    }

    /// Central elements (those commuting with every generator), ascending.
    pub fn center(&self) -> &[u32] {
        self.center.get_or_init(|| {
            (0..self.order() as u32)
                .filter(|&i| {
                    self.gens.iter().all(|g| {
                        self.elems[i as usize].compose(g) == g.compose(&self.elems[i as usize])
                    })
                })
                .collect()
        })
    }

    /// Conjugacy classes ordered by least member; within a class, members
    /// appear in conjugation-BFS discovery order.
    pub fn conjugacy_classes(&self) -> &[ConjClass] {
        &self.class_data().classes
    }

    pub fn class_of(&self, i: u32) -> u32 {
        self.class_data().class_of[i as usize]
    }

    fn class_data(&self) -> &ClassData {
        self.classes.get_or_init(|| {
            let n = self.order();
            let gen_invs: Vec<Perm> = self.gens.iter().map(|g| g.inverse()).collect();
            let mut class_of = vec![u32::MAX; n];
            let mut classes = Vec::new();
            for start in 0..n as u32 {
                if class_of[start as usize] != u32::MAX {
                    continue;
                }
                let cid = classes.len() as u32;
                let mut members = vec![start];
                let mut prov: Vec<(u32, u16)> = vec![(0, u16::MAX)];
                class_of[start as usize] = cid;
                let mut pos = 0usize;
                while pos < members.len() {
                    let m = members[pos] as usize;
                    for (gid, (g, ginv)) in self.gens.iter().zip(&gen_invs).enumerate() {
                        let conj = ginv.compose(&self.elems[m]).compose(g);
                        let c = self.index[&conj];
                        if class_of[c as usize] == u32::MAX {
                            class_of[c as usize] = cid;
                            members.push(c);
                            prov.push((pos as u32, gid as u16));
                        }
                    }
                    pos += 1;
                }
                let order = self.elems[start as usize].order();
                classes.push(ConjClass { rep: start, members, prov, order });
            }
            ClassData { classes, class_of }
        })
    }

    /// For each member of the class, an element conjugating the
    /// representative onto it (identity for the representative itself).
    pub fn class_conjugators(&self, class: &ConjClass) -> Vec<u32> {
        let mut conj = vec![0u32; class.members.len()];
        for k in 1..class.members.len() {
            let (parent, gid) = class.prov[k];
            conj[k] = self.mul_idx(conj[parent as usize], self.gen_indices[gid as usize]);
        }
        conj
    }

    /// Elements commuting with element i, ascending.
    pub fn centralizer_of(&self, i: u32) -> Vec<u32> {
        let x = &self.elems[i as usize];
        (0..self.order() as u32)
            .filter(|&j| {
                let y = &self.elems[j as usize];
                x.compose(y) == y.compose(x)
            })
            .collect()
    }

    /// The cyclic subgroup generated by element i, ascending.
    pub fn cyclic_subgroup(&self, i: u32) -> Vec<u32> {
        let mut out = vec![0u32];
        let mut cur = i;
        while cur != 0 {
            out.push(cur);
            cur = self.mul_idx(cur, i);
        }
        out.sort_unstable();
        out
    }

    /// N_G(<x>): elements g with x^g a power of x, ascending.
    pub fn normalizer_of_cyclic(&self, i: u32) -> Vec<u32> {
        let sub: HashSet<u32> = self.cyclic_subgroup(i).into_iter().collect();
        (0..self.order() as u32)
            .filter(|&g| sub.contains(&self.conj_idx(i, g)))
            .collect()
    }

    /// N_G(H) for an explicit subgroup element set, ascending.
    pub fn normalizer_of_set(&self, sub: &[u32]) -> Vec<u32> {
        let set: HashSet<u32> = sub.iter().copied().collect();
        (0..self.order() as u32)
            .filter(|&g| sub.iter().all(|&s| set.contains(&self.conj_idx(s, g))))
            .collect()
    }

    /// Closure of the given elements inside this group, or None when it
    /// grows past `cap`. Result is sorted ascending.
    pub fn subgroup_closure(&self, gens: &[u32], cap: usize) -> Option<Vec<u32>> {
        let mut set: HashSet<u32> = HashSet::new();
        set.insert(0);
        let mut queue: VecDeque<u32> = VecDeque::new();
        queue.push_back(0);
        while let Some(i) = queue.pop_front() {
            for &g in gens {
                let prod = self.mul_idx(i, g);
                if set.insert(prod) {
                    if set.len() > cap {
                        return None;
                    }
                    queue.push_back(prod);
                }
            }
        }
        let mut out: Vec<u32> = set.into_iter().collect();
        out.sort_unstable();
        Some(out)
    }

    /// True iff the sorted element set is closed under multiplication and
    /// contains the identity (finiteness then gives inverses).
    pub fn is_subgroup(&self, sub: &[u32]) -> bool {
        if sub.binary_search(&0).is_err() {
            return false;
        }
        let set: HashSet<u32> = sub.iter().copied().collect();
        sub.iter()
            .all(|&a| sub.iter().all(|&b| set.contains(&self.mul_idx(a, b))))
    }

    /// The psi-part of the group order (product of p^v_p over p in psi).
    pub fn part_of_order(&self, psi: &[u64]) -> u64 {
        let mut n = self.order() as u64;
        let mut part = 1u64;
        for &p in psi {
            while n % p == 0 {
                n /= p;
                part *= p;
            }
        }
        part
    }

    /// Hall psi-subgroup search: seeded, deterministic, budget-bounded.
    /// Strategy: (1) if some element has order equal to the full psi-part,
    /// its cyclic subgroup is the Hall subgroup; (2) otherwise grow a
    /// candidate by random psi-elements, keeping a closure only when its
    /// order divides the target. For a single prime, candidates are further
    /// restricted to normalize the current p-subgroup; then a strict
    /// enlargement always exists, so the search cannot stall below a Sylow.
    /// Exhausting the budget means "not found", never "does not exist".
    pub fn hall_subgroup(&self, psi: &[u64], seed: u64) -> Option<Vec<u32>> {
        let target = self.part_of_order(psi);
        if target == 1 {
            return Some(vec![0]);
        }
        for class in self.conjugacy_classes() {
            if class.order == target {
                return Some(self.cyclic_subgroup(class.rep));
            }
        }
        let pool: Vec<u32> = (1..self.order() as u32)
            .filter(|&i| {
                crate::field::prime_factors(self.element_order(i))
                    .iter()
                    .all(|p| psi.contains(p))
            })
            .collect();
        if pool.is_empty() {
            return None;
        }
        let single_prime = psi.len() == 1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut current: Vec<u32> = vec![0];
        let mut cur_gens: Vec<u32> = Vec::new();
        let mut stall = 0usize;
        for _ in 0..SEARCH_BUDGET {
            if current.len() as u64 == target {
                return Some(current);
            }
            let cur_set: HashSet<u32> = current.iter().copied().collect();
            let candidates: Vec<u32> = pool
                .iter()
                .copied()
                .filter(|&x| !cur_set.contains(&x))
                .filter(|&x| {
                    !single_prime
                        || current.len() == 1
                        || current.iter().all(|&s| cur_set.contains(&self.conj_idx(s, x)))
                })
                .collect();
            if candidates.is_empty() {
                current = vec![0];
                cur_gens.clear();
                stall = 0;
                continue;
            }
            let x = candidates[rng.gen_range(0..candidates.len())];
            let mut attempt = cur_gens.clone();
            attempt.push(x);
            match self.subgroup_closure(&attempt, target as usize) {
                Some(t) if target % t.len() as u64 == 0 && t.len() > current.len() => {
                    current = t;
                    cur_gens = attempt;
                    stall = 0;
                }
                _ => {
                    stall += 1;
                    if stall >= 15 {
                        current = vec![0];
                        cur_gens.clear();
                        stall = 0;
                    }
                }
            }
        }
        if current.len() as u64 == target {
            return Some(current);
        }
        None
    }

    pub fn sylow_subgroup(&self, p: u64, seed: u64) -> Option<Vec<u32>> {
        self.hall_subgroup(&[p], seed)
    }

    /// Random search for a subgroup of the exact target order containing
    /// the closure of `containing`. Intermediate closures whose order
    /// divides the target are kept as stepping stones.
    pub fn find_subgroup_of_order(
        &self,
        target: u64,
        containing: &[u32],
        seed: u64,
        budget: usize,
    ) -> Option<Vec<u32>> {
        if self.order() as u64 % target != 0 {
            return None;
        }
        let base = self.subgroup_closure(containing, target as usize)?;
        if target % base.len() as u64 != 0 {
            return None;
        }
        if base.len() as u64 == target {
            return Some(base);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut current = base;
        let mut cur_gens: Vec<u32> = containing.to_vec();
        let mut stall = 0usize;
        for _ in 0..budget {
            if current.len() as u64 == target {
                return Some(current);
            }
            let x = rng.gen_range(1..self.order() as u32);
            if current.binary_search(&x).is_ok() {
                continue;
            }
            let mut attempt = cur_gens.clone();
            attempt.push(x);
            match self.subgroup_closure(&attempt, target as usize) {
                Some(t) if target % t.len() as u64 == 0 && t.len() > current.len() => {
                    current = t;
                    cur_gens = attempt;
                    stall = 0;
                }
                _ => {
                    stall += 1;
                    if stall >= 25 {
                        cur_gens = containing.to_vec();
                        current = self.subgroup_closure(containing, target as usize)?;
                        stall = 0;
                    }
                }
            }
        }
        if current.len() as u64 == target {
            return Some(current);
        }
        None
    }

    /// Smallest normal subgroup containing the element, ascending.
    /// Grows a generating set: close, then add any conjugate of a current
    /// generator that escapes, until the closure is conjugation-stable.
    pub fn normal_closure(&self, elem: u32) -> Vec<u32> {
        let mut gens = vec![elem];
        loop {
            let sub = self
                .subgroup_closure(&gens, self.order())
                .expect("cap is the full group order");
            if sub.len() == self.order() {
                return sub;
            }
            let set: HashSet<u32> = sub.iter().copied().collect();
            let mut escaped = None;
            'scan: for &s in &sub {
                for &g in &self.gen_indices {
                    let c = self.conj_idx(s, g);
                    if !set.contains(&c) {
                        escaped = Some(c);
                        break 'scan;
                    }
                }
            }
            match escaped {
                Some(c) => gens.push(c),
                None => return sub,
            }
        }
    }

    /// True iff the group has no proper nontrivial normal subgroup,
    /// checked by taking the normal closure of one representative per
    /// nontrivial conjugacy class.
    pub fn is_simple(&self) -> bool {
        if self.order() == 1 {
            return false;
        }
        self.conjugacy_classes()
            .iter()
            .filter(|c| c.rep != 0)
            .all(|c| self.normal_closure(c.rep).len() == self.order())
    }

    /// Action on the right cosets of a subgroup.
    pub fn coset_action(&self, sub: &[u32]) -> Result<CosetAction<'_>, GroupError> {
        let mut sorted = sub.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if !self.is_subgroup(&sorted) {
            return Err(GroupError::NotASubgroup);
        }
        let n = self.order();
        let mut coset_of = vec![u32::MAX; n];
        let mut reps = Vec::new();
        for e in 0..n as u32 {
            if coset_of[e as usize] != u32::MAX {
                continue;
            }
            let cid = reps.len() as u32;
            reps.push(e);
            for &h in &sorted {
                coset_of[self.mul_idx(h, e) as usize] = cid;
            }
        }
        Ok(CosetAction { group: self, sub: sorted, coset_of, reps })
    }
}

/// Right-coset action of a group on the cosets of a subgroup. Coset 0 is
/// the subgroup itself; cosets are numbered by ascending least member.
pub struct CosetAction<'g> {
    group: &'g Group,
    sub: Vec<u32>,
    coset_of: Vec<u32>,
    reps: Vec<u32>,
}

impl CosetAction<'_> {
    pub fn degree(&self) -> usize {
        self.reps.len()
    }

    pub fn subgroup(&self) -> &[u32] {
        &self.sub
    }

    pub fn coset_of(&self, elem: u32) -> u32 {
        self.coset_of[elem as usize]
    }

    /// Number of cosets fixed by g; this is the permutation-character
    /// value at g.
    pub fn fixed_points(&self, g: u32) -> u64 {
        self.reps
            .iter()
            .enumerate()
            .filter(|&(cid, &r)| self.coset_of[self.group.mul_idx(r, g) as usize] == cid as u32)
            .count() as u64
    }

    /// The action of g as an explicit permutation of the cosets.
    pub fn perm_of(&self, g: u32) -> Result<Perm, GroupError> {
        if self.reps.len() > u16::MAX as usize {
            return Err(GroupError::DegreeTooLarge(self.reps.len() as u64));
        }
        let images: Vec<u16> = self
            .reps
            .iter()
            .map(|&r| self.coset_of[self.group.mul_idx(r, g) as usize] as u16)
            .collect();
        Ok(Perm::from_images(images)?)
    }

    /// Number of (H,H)-double cosets = orbits of H acting on the right
    /// cosets by right multiplication.
    pub fn double_coset_count(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.reps.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (cid, &r) in self.reps.iter().enumerate() {
            for &h in &self.sub {
                let other = self.coset_of[self.group.mul_idx(r, h) as usize] as usize;
                let (a, b) = (find(&mut parent, cid), find(&mut parent, other));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        (0..self.reps.len())
            .filter(|&c| find(&mut parent, c) == c)
            .count()
    }
}

/// Parses a generator file: `#` comments, a `degree d` line, then one
/// permutation per line in cycle or image-list notation (0-based).
pub fn parse_generator_text(text: &str) -> Result<(u16, Vec<Perm>), GroupError> {
    let mut degree: Option<u16> = None;
    let mut gens = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("degree") {
            let d: u16 = rest
                .trim()
                .parse()
                .map_err(|_| GroupError::BadGeneratorFile(format!("bad degree line: {line}")))?;
            if degree.replace(d).is_some() {
                return Err(GroupError::BadGeneratorFile("duplicate degree line".into()));
            }
            continue;
        }
        let d = degree.ok_or_else(|| {
            GroupError::BadGeneratorFile("permutation before degree line".into())
        })?;
        gens.push(Perm::parse(line, d)?);
    }
    let d = degree.ok_or_else(|| GroupError::BadGeneratorFile("missing degree line".into()))?;
    if gens.is_empty() {
        return Err(GroupError::BadGeneratorFile("no generators".into()));
    }
    Ok((d, gens))
}

pub fn load_group(path: &Path, limit: usize) -> Result<Group, GroupError> {
    let text = std::fs::read_to_string(path)?;
    let (degree, gens) = parse_generator_text(&text)?;
    Group::generate_with_degree(degree, gens, limit)
}

// --- binary element cache ---
//
// Layout: magic "EGC1", u16 degree, u32 count, 32-byte SHA-256 of the
// payload, payload = count * degree little-endian u16 images. The file name
// is derived from the generators, so a hit is only possible for the same
// generating set.

const CACHE_MAGIC: &[u8; 4] = b"EGC1";

/// Content-derived cache file name for a generating set.
pub fn cache_file_name(degree: u16, gens: &[Perm]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(degree.to_le_bytes());
    for g in gens {
        for &im in g.images() {
            hasher.update(im.to_le_bytes());
        }
        hasher.update([0xff, 0xff]);
    }
    let digest = hasher.finalize();
    let hex: String = digest[..16].iter().map(|b| format!("{b:02x}")).collect();
    format!("{hex}.egc")
}

impl Group {
    pub fn write_cache(&self, path: &Path) -> Result<(), GroupError> {
        let mut payload = Vec::with_capacity(self.elems.len() * self.degree as usize * 2);
        for e in &self.elems {
            for &im in e.images() {
                payload.extend_from_slice(&im.to_le_bytes());
            }
        }
        let digest = Sha256::digest(&payload);
        let mut f = std::fs::File::create(path)?;
        f.write_all(CACHE_MAGIC)?;
        f.write_all(&self.degree.to_le_bytes())?;
        f.write_all(&(self.elems.len() as u32).to_le_bytes())?;
        f.write_all(&digest)?;
        f.write_all(&payload)?;
        Ok(())
    }

    /// Rebuilds a group from a cache file; `gens` must be the generating
    /// set the cache was written for (it is re-attached and verified to be
    /// inside the element list).
    pub fn read_cache(path: &Path, gens: Vec<Perm>) -> Result<Group, GroupError> {
        let mut f = std::fs::File::open(path)?;
        let mut head = [0u8; 4 + 2 + 4 + 32];
        f.read_exact(&mut head)
            .map_err(|_| GroupError::BadCache("truncated header".into()))?;
        if &head[..4] != CACHE_MAGIC {
            return Err(GroupError::BadCache("bad magic".into()));
        }
        let degree = u16::from_le_bytes([head[4], head[5]]);
        let count = u32::from_le_bytes([head[6], head[7], head[8], head[9]]) as usize;
        let expect_digest = &head[10..42];
        let mut payload = Vec::new();
        f.read_to_end(&mut payload)?;
        if payload.len() != count * degree as usize * 2 {
            return Err(GroupError::BadCache("payload size mismatch".into()));
        }
        if Sha256::digest(&payload).as_slice() != expect_digest {
            return Err(GroupError::BadCache("payload checksum mismatch".into()));
        }
        let mut elems = Vec::with_capacity(count);
        let mut index = HashMap::with_capacity(count);
        for k in 0..count {
            let base = k * degree as usize * 2;
            let images: Vec<u16> = (0..degree as usize)
                .map(|j| u16::from_le_bytes([payload[base + 2 * j], payload[base + 2 * j + 1]]))
                .collect();
            let p = Perm::from_images(images)
                .map_err(|e| GroupError::BadCache(format!("entry {k}: {e}")))?;
            index.insert(p.clone(), k as u32);
            elems.push(p);
        }
        if index.len() != count {
            return Err(GroupError::BadCache("duplicate elements".into()));
        }
        if count == 0 || !elems[0].is_identity() {
            return Err(GroupError::BadCache("identity not at index 0".into()));
        }
        let mut gen_indices = Vec::with_capacity(gens.len());
        for g in &gens {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch);
            }
            gen_indices.push(
                *index
                    .get(g)
                    .ok_or_else(|| GroupError::BadCache("generator missing from cache".into()))?,
            );
        }
        Ok(Group {
            degree,
            gens,
            gen_indices,
            elems,
            index,
            orders: OnceLock::new(),
            inverses: OnceLock::new(),
            classes: OnceLock::new(),
            center: OnceLock::new(),
        })
    }

    /// Generate with a disk cache: hit = read + verify, miss = generate +
    /// write. Results are identical either way.
    pub fn generate_cached(
        gens: Vec<Perm>,
        limit: usize,
        cache_dir: Option<&Path>,
    ) -> Result<Group, GroupError> {
        let Some(dir) = cache_dir else {
            return Group::generate(gens, limit);
        };
        let degree = gens.first().ok_or(GroupError::EmptyGenerators)?.degree();
        let file: PathBuf = dir.join(cache_file_name(degree, &gens));
        if file.is_file() {
            if let Ok(g) = Group::read_cache(&file, gens.clone()) {
                return Ok(g);
            }
            // unreadable or corrupt cache entries are rebuilt
        }
        let g = Group::generate(gens, limit)?;
        std::fs::create_dir_all(dir)?;
        g.write_cache(&file)?;
        Ok(g)
    }
}

/// Standard generators for the alternating group on n points (n >= 3).
pub fn alternating_gens(n: u16) -> Vec<Perm> {
    assert!(n >= 3);
    let three = Perm::parse("(0,1,2)", n).unwrap();
    let long = if n % 2 == 1 {
        let pts: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        Perm::parse(&format!("({})", pts.join(",")), n).unwrap()
    } else {
        let pts: Vec<String> = (1..n).map(|i| i.to_string()).collect();
        Perm::parse(&format!("({})", pts.join(",")), n).unwrap()
    };
    vec![three, long]
}

/// Standard generators for the symmetric group on n points (n >= 2).
pub fn symmetric_gens(n: u16) -> Vec<Perm> {
    assert!(n >= 2);
    let swap = Perm::parse("(0,1)", n).unwrap();
    let pts: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let long = Perm::parse(&format!("({})", pts.join(",")), n).unwrap();
    vec![swap, long]
}
