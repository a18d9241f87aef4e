//! Fully enumerated permutation groups.
//!
//! Elements are addressed by index. Products are resolved through a base:
//! a short list of points whose images already determine a group element,
//! so `mul` only composes on the base points and looks the result up.

use std::collections::VecDeque;
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use fixedbitset::FixedBitSet;
use rustc_hash::{FxHashMap, FxHasher};

use crate::error::{Error, Result};
use crate::perm::{GroupSpec, Permutation};

/// Default bound on the number of elements `enumerate` will produce.
pub const DEFAULT_MAX_ORDER: usize = 1_000_000;

static NEXT_GROUP_ID: AtomicU64 = AtomicU64::new(1);

pub struct EnumeratedGroup {
    id: u64,
    spec: GroupSpec,
    elements: Vec<Permutation>,
    orders: Vec<u32>,
    inverses: Vec<u32>,
    generators: Vec<usize>,
    base: Vec<u32>,
    lookup: FxHashMap<Box<[u32]>, u32>,
    classes: OnceLock<ConjugacyClasses>,
    centralizers: Mutex<FxHashMap<usize, Arc<Vec<usize>>>>,
}

impl std::fmt::Debug for EnumeratedGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("EnumeratedGroup")
            .field("degree", &self.degree())
            .field("order", &self.order())
            .field("label", &self.spec.label())
            .finish()
    }
}

fn perm_hash(p: &Permutation) -> u64 {
    let mut h = FxHasher::default();
    p.images().hash(&mut h);
    h.finish()
}

impl EnumeratedGroup {
    /// Closes the generators under products, breadth first. Element 0 is the
    /// identity and the ordering only depends on the generator order.
    pub fn enumerate(spec: GroupSpec, max_order: usize) -> Result<Self> {
        let n = spec.degree();
        let mut elements = vec![Permutation::identity(n)];
        let mut seen: FxHashMap<u64, Vec<u32>> = FxHashMap::default();
        seen.insert(perm_hash(&elements[0]), vec![0]);
        let gens: Vec<Permutation> = spec.generators().to_vec();
        let mut head = 0;
        while head < elements.len() {
            for g in &gens {
                let p = elements[head].then(g);
                let h = perm_hash(&p);
                let bucket = seen.entry(h).or_default();
                if bucket.iter().any(|&i| elements[i as usize] == p) {
                    continue;
                }
                if elements.len() >= max_order {
                    return Err(Error::OrderExceeded(max_order));
                }
                bucket.push(elements.len() as u32);
                elements.push(p);
            }
            head += 1;
        }
        drop(seen);

        let base = choose_base(&elements);
        let mut lookup: FxHashMap<Box<[u32]>, u32> = FxHashMap::default();
        lookup.reserve(elements.len());
        for (i, e) in elements.iter().enumerate() {
            let key: Box<[u32]> = base.iter().map(|&b| e.images()[b as usize]).collect();
            lookup.insert(key, i as u32);
        }
        let orders = elements.iter().map(|e| e.order() as u32).collect();
        let mut group = EnumeratedGroup {
            id: NEXT_GROUP_ID.fetch_add(1, Ordering::Relaxed),
            spec,
            elements,
            orders,
            inverses: Vec::new(),
            generators: Vec::new(),
            base,
            lookup,
            classes: OnceLock::new(),
            centralizers: Mutex::new(FxHashMap::default()),
        };
        group.inverses = (0..group.order())
            .map(|i| {
                let inv = group.elements[i].inverse();
                group.key_index(|b| inv.images()[b as usize]) as u32
            })
            .collect();
        group.generators = gens
            .iter()
            .map(|g| group.key_index(|b| g.images()[b as usize]))
            .collect();
        Ok(group)
    }

    pub fn from_spec(spec: GroupSpec) -> Result<Self> {
        Self::enumerate(spec, DEFAULT_MAX_ORDER)
    }

    #[inline]
    fn key_index(&self, f: impl Fn(u32) -> u32) -> usize {
        let b = self.base.len();
        if b <= 16 {
            let mut buf = [0u32; 16];
            for (slot, &x) in buf.iter_mut().zip(&self.base) {
                *slot = f(x);
            }
            self.lookup[&buf[..b]] as usize
        } else {
            let key: Vec<u32> = self.base.iter().map(|&x| f(x)).collect();
            self.lookup[key.as_slice()] as usize
        }
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn degree(&self) -> usize {
        self.spec.degree()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    /// Indices of the spec's generators.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn base(&self) -> &[u32] {
        &self.base
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        if p.degree() != self.degree() {
            return None;
        }
        let key: Vec<u32> = self.base.iter().map(|&b| p.images()[b as usize]).collect();
        let i = *self.lookup.get(key.as_slice())? as usize;
        (self.elements[i] == *p).then_some(i)
    }

    /// Index of "first `a`, then `b`".
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        let ea = self.elements[a].images();
        let eb = self.elements[b].images();
        self.key_index(|x| eb[ea[x as usize] as usize])
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    /// `g x g^-1`.
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        let eg = self.elements[g].images();
        let ex = self.elements[x].images();
        let egi = self.elements[self.inv(g)].images();
        self.key_index(|p| egi[ex[eg[p as usize] as usize] as usize])
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        let mut result = 0;
        let mut base = a;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        result
    }

    #[inline]
    pub fn element_order(&self, a: usize) -> u32 {
        self.orders[a]
    }

    /// Elements agreeing on the base are equal, so checking the base suffices.
    pub fn commute(&self, a: usize, b: usize) -> bool {
        let ea = self.elements[a].images();
        let eb = self.elements[b].images();
        self.base
            .iter()
            .all(|&x| eb[ea[x as usize] as usize] == ea[eb[x as usize] as usize])
    }

    pub fn centralizer_of_element(&self, x: usize) -> Arc<Vec<usize>> {
        if let Some(c) = self.centralizers.lock().unwrap().get(&x) {
            return Arc::clone(c);
        }
        let c: Arc<Vec<usize>> =
            Arc::new((0..self.order()).filter(|&c| self.commute(c, x)).collect());
        self.centralizers
            .lock()
            .unwrap()
            .insert(x, Arc::clone(&c));
        c
    }

    /// Conjugacy classes, computed on first use.
    pub fn conjugacy_classes(&self) -> &ConjugacyClasses {
        self.classes.get_or_init(|| ConjugacyClasses::compute(self))
    }

    pub fn whole(&self) -> SubgroupSet {
        let mut members = FixedBitSet::with_capacity(self.order());
        members.insert_range(..);
        SubgroupSet {
            group_id: self.id,
            members,
            order: self.order(),
            generators: self.generators.iter().copied().filter(|&g| g != 0).collect(),
        }
    }

    pub fn trivial(&self) -> SubgroupSet {
        let mut members = FixedBitSet::with_capacity(self.order());
        members.insert(0);
        SubgroupSet {
            group_id: self.id,
            members,
            order: 1,
            generators: Vec::new(),
        }
    }

    /// The subgroup generated by the given element indices.
    pub fn subgroup(&self, gens: &[usize]) -> SubgroupSet {
        let mut s = self.trivial();
        for &g in gens {
            s = self
                .extend_subgroup(&s, g, None)
                .expect("no limit was given");
        }
        s
    }

    pub fn subgroup_from_perms(&self, gens: &[Permutation]) -> Result<SubgroupSet> {
        let idx = gens
            .iter()
            .map(|p| self.index_of(p).ok_or_else(|| Error::NotAMember(p.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.subgroup(&idx))
    }

    pub fn subgroup_from_spec(&self, spec: &GroupSpec) -> Result<SubgroupSet> {
        if spec.degree() != self.degree() {
            return Err(Error::MixedDegrees(self.degree(), spec.degree()));
        }
        self.subgroup_from_perms(spec.generators())
    }

    /// `<base, x>` by Dimino's coset method. Returns `None` when the result
    /// would exceed `limit` elements.
    pub fn extend_subgroup(
        &self,
        base: &SubgroupSet,
        x: usize,
        limit: Option<usize>,
    ) -> Option<SubgroupSet> {
        debug_assert_eq!(base.group_id, self.id);
        if base.contains(x) {
            return Some(base.clone());
        }
        let limit = limit.unwrap_or(usize::MAX);
        let old: Vec<usize> = base.members.ones().collect();
        let mut members = base.members.clone();
        let mut size = old.len();
        let mut gens = base.generators.clone();
        gens.push(x);
        let mut reps = vec![0usize];
        let add_coset = |r: usize, members: &mut FixedBitSet, size: &mut usize| -> bool {
            *size += old.len();
            if *size > limit {
                return false;
            }
            for &h in &old {
                members.insert(self.mul(h, r));
            }
            true
        };
        if !add_coset(x, &mut members, &mut size) {
            return None;
        }
        reps.push(x);
        let mut i = 0;
        while i < reps.len() {
            let r = reps[i];
            for &g in &gens {
                let t = self.mul(r, g);
                if !members.contains(t) {
                    if !add_coset(t, &mut members, &mut size) {
                        return None;
                    }
                    reps.push(t);
                }
            }
            i += 1;
        }
        Some(SubgroupSet {
            group_id: self.id,
            members,
            order: size,
            generators: gens,
        })
    }

    /// Subgroup with the given members; a short generating set is chosen
    /// greedily from the elements of largest order.
    pub fn subgroup_from_members(&self, members: FixedBitSet) -> SubgroupSet {
        let mut list: Vec<usize> = members.ones().collect();
        list.sort_by_key(|&e| (std::cmp::Reverse(self.element_order(e)), e));
        let target = list.len();
        let mut s = self.trivial();
        for e in list {
            if s.order == target {
                break;
            }
            if !s.contains(e) {
                s = self.extend_subgroup(&s, e, None).unwrap();
            }
        }
        debug_assert_eq!(s.members, members, "member set is not a subgroup");
        s
    }

    /// `g S g^-1`.
    pub fn conjugate_subgroup(&self, s: &SubgroupSet, g: usize) -> SubgroupSet {
        let mut members = FixedBitSet::with_capacity(self.order());
        for x in s.members.ones() {
            members.insert(self.conj(g, x));
        }
        SubgroupSet {
            group_id: self.id,
            members,
            order: s.order,
            generators: s.generators.iter().map(|&x| self.conj(g, x)).collect(),
        }
    }

    pub fn is_normal(&self, s: &SubgroupSet) -> bool {
        self.generators.iter().all(|&g| {
            s.generators.iter().all(|&x| s.contains(self.conj(g, x)))
        })
    }

    pub fn intersection(&self, a: &SubgroupSet, b: &SubgroupSet) -> SubgroupSet {
        let mut m = a.members.clone();
        m.intersect_with(&b.members);
        self.subgroup_from_members(m)
    }

    /// Multiset of conjugacy class ids met by the subgroup, as sorted
    /// `(class, count)` pairs. Equal for conjugate subgroups.
    pub fn class_distribution(&self, s: &SubgroupSet) -> Vec<(usize, usize)> {
        let classes = self.conjugacy_classes();
        let mut counts: FxHashMap<usize, usize> = FxHashMap::default();
        for x in s.members.ones() {
            *counts.entry(classes.class_of(x)).or_default() += 1;
        }
        let mut v: Vec<_> = counts.into_iter().collect();
        v.sort_unstable();
        v
    }
}

fn choose_base(elements: &[Permutation]) -> Vec<u32> {
    let mut base: Vec<u32> = Vec::new();
    loop {
        let mut seen: FxHashMap<Vec<u32>, usize> = FxHashMap::default();
        let mut collision = None;
        for (i, e) in elements.iter().enumerate() {
            let key: Vec<u32> = base.iter().map(|&b| e.images()[b as usize]).collect();
            if let Some(&j) = seen.get(&key) {
                collision = Some((j, i));
                break;
            }
            seen.insert(key, i);
        }
        let Some((a, b)) = collision else {
            return base;
        };
        let (ea, eb) = (elements[a].images(), elements[b].images());
        let point = (0..ea.len())
            .find(|&x| ea[x] != eb[x])
            .expect("distinct elements differ somewhere");
        base.push(point as u32);
    }
}

/// Conjugacy classes of an enumerated group.
#[derive(Clone, Debug)]
pub struct ConjugacyClasses {
    class_of: Vec<u32>,
    representatives: Vec<usize>,
    sizes: Vec<usize>,
    // conjugators[e] = t with t * rep * t^-1 = e
    conjugators: Vec<u32>,
}

impl ConjugacyClasses {
    fn compute(g: &EnumeratedGroup) -> Self {
        let n = g.order();
        let mut class_of = vec![u32::MAX; n];
        let mut conjugators = vec![0u32; n];
        let mut representatives = Vec::new();
        let mut sizes = Vec::new();
        for start in 0..n {
            if class_of[start] != u32::MAX {
                continue;
            }
            let id = representatives.len() as u32;
            representatives.push(start);
            class_of[start] = id;
            conjugators[start] = 0;
            let mut queue = VecDeque::from([start]);
            let mut size = 1;
            while let Some(x) = queue.pop_front() {
                for &s in g.generators() {
                    let y = g.conj(s, x);
                    if class_of[y] == u32::MAX {
                        class_of[y] = id;
                        conjugators[y] = g.mul(s, conjugators[x] as usize) as u32;
                        size += 1;
                        queue.push_back(y);
                    }
                }
            }
            sizes.push(size);
        }
        ConjugacyClasses {
            class_of,
            representatives,
            sizes,
            conjugators,
        }
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    #[inline]
    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x] as usize
    }

    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// An element `t` with `t * rep * t^-1 = x`, where `rep` represents the
    /// class of `x`.
    pub fn conjugator(&self, x: usize) -> usize {
        self.conjugators[x] as usize
    }

    pub fn members(&self, class: usize) -> impl Iterator<Item = usize> + '_ {
        self.class_of
            .iter()
            .enumerate()
            .filter(move |(_, &c)| c as usize == class)
            .map(|(i, _)| i)
    }
}

/// A subgroup of an enumerated group, stored as a set of element indices.
#[derive(Clone, Debug)]
pub struct SubgroupSet {
    group_id: u64,
    members: FixedBitSet,
    order: usize,
    generators: Vec<usize>,
}

impl PartialEq for SubgroupSet {
    fn eq(&self, other: &Self) -> bool {
        self.group_id == other.group_id && self.members == other.members
    }
}

impl Eq for SubgroupSet {}

impl Hash for SubgroupSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.group_id.hash(state);
        self.members.hash(state);
    }
}

impl SubgroupSet {
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.ones()
    }

    pub fn member_set(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn parent_id(&self) -> u64 {
        self.group_id
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_subgroup_of(&self, other: &SubgroupSet) -> bool {
        self.group_id == other.group_id && self.members.is_subset(&other.members)
    }

    /// Generators as permutations, in a spec of the parent's degree.
    pub fn to_spec(&self, g: &EnumeratedGroup) -> GroupSpec {
        let gens = if self.generators.is_empty() {
            vec![Permutation::identity(g.degree())]
        } else {
            self.generators.iter().map(|&x| g.element(x).clone()).collect()
        };
        GroupSpec::new(g.degree(), gens).expect("generators share the parent's degree")
    }

    /// Generators in cycle notation, sorted, with the identity dropped.
    pub fn generator_strings(&self, g: &EnumeratedGroup) -> Vec<String> {
        let mut v: Vec<String> = self
            .generators
            .iter()
            .filter(|&&x| x != 0)
            .map(|&x| g.element(x).to_string())
            .collect();
        v.sort();
        v
    }
}

/// The right action of `G` on the right cosets `H g`.
#[derive(Clone, Debug)]
pub struct CosetAction {
    subgroup: SubgroupSet,
    coset_reps: Vec<usize>,
    coset_of: Vec<u32>,
    generator_action: Vec<Vec<u32>>,
}

impl CosetAction {
    pub fn new(g: &EnumeratedGroup, h: &SubgroupSet) -> Self {
        let n = g.order();
        let mut coset_of = vec![u32::MAX; n];
        let mut coset_reps = Vec::new();
        let hm: Vec<usize> = h.members().collect();
        for x in 0..n {
            if coset_of[x] != u32::MAX {
                continue;
            }
            let c = coset_reps.len() as u32;
            coset_reps.push(x);
            for &y in &hm {
                coset_of[g.mul(y, x)] = c;
            }
        }
        assert_eq!(
            g.order(),
            coset_reps.len() * h.order(),
            "Lagrange: |G| = [G:H] |H|"
        );
        let generator_action = g
            .generators()
            .iter()
            .map(|&s| {
                coset_reps
                    .iter()
                    .map(|&r| coset_of[g.mul(r, s)])
                    .collect()
            })
            .collect();
        CosetAction {
            subgroup: h.clone(),
            coset_reps,
            coset_of,
            generator_action,
        }
    }

    pub fn subgroup(&self) -> &SubgroupSet {
        &self.subgroup
    }

    /// Number of cosets.
    pub fn degree(&self) -> usize {
        self.coset_reps.len()
    }

    pub fn coset_reps(&self) -> &[usize] {
        &self.coset_reps
    }

    pub fn coset_of_element(&self, x: usize) -> usize {
        self.coset_of[x] as usize
    }

    /// Image of coset `c` under the element `x`.
    #[inline]
    pub fn act(&self, g: &EnumeratedGroup, c: usize, x: usize) -> usize {
        self.coset_of[g.mul(self.coset_reps[c], x)] as usize
    }

    /// Action tables of the parent's generators, in generator order.
    pub fn generator_action(&self) -> &[Vec<u32>] {
        &self.generator_action
    }

    pub fn permutation_of(&self, g: &EnumeratedGroup, x: usize) -> Permutation {
        let images = (0..self.degree())
            .map(|c| self.act(g, c, x) as u32)
            .collect();
        Permutation::from_images_unchecked(images)
    }

    /// Elements acting trivially on every coset.
    pub fn kernel(&self, g: &EnumeratedGroup) -> SubgroupSet {
        let mut members = FixedBitSet::with_capacity(g.order());
        for x in self.subgroup.members() {
            if (0..self.degree()).all(|c| self.act(g, c, x) == c) {
                members.insert(x);
            }
        }
        g.subgroup_from_members(members)
    }

    pub fn fixed_cosets(&self, g: &EnumeratedGroup, k: &SubgroupSet) -> usize {
        (0..self.degree())
            .filter(|&c| k.generators().iter().all(|&x| self.act(g, c, x) == c))
            .count()
    }
}

pub fn coset_action(g: &EnumeratedGroup, h: &SubgroupSet) -> CosetAction {
    CosetAction::new(g, h)
}

/// Intersection of all conjugates of `h`.
pub fn normal_core(g: &EnumeratedGroup, h: &SubgroupSet) -> SubgroupSet {
    let action = CosetAction::new(g, h);
    let mut members = h.members.clone();
    for &t in action.coset_reps() {
        // t^-1 H t
        let conj = g.conjugate_subgroup(h, g.inv(t));
        members.intersect_with(&conj.members);
    }
    g.subgroup_from_members(members)
}

/// An element `t` with `t H1 t^-1 = H2`, or `None` if the subgroups are not
/// conjugate in `G`.
///
/// With `k` the first generator of `H1`, every candidate must map `k` into
/// `H2 ∩ class(k)`; the candidates for each target form a coset of the
/// centralizer of `k`.
pub fn transporter(g: &EnumeratedGroup, h1: &SubgroupSet, h2: &SubgroupSet) -> Option<usize> {
    if h1.order != h2.order {
        return None;
    }
    if h1 == h2 || h1.is_trivial() {
        return Some(0);
    }
    if g.class_distribution(h1) != g.class_distribution(h2) {
        return None;
    }
    let classes = g.conjugacy_classes();
    let gens: Vec<usize> = h1.generators.iter().copied().filter(|&x| x != 0).collect();
    let k = gens[0];
    let class = classes.class_of(k);
    let tk_inv = g.inv(classes.conjugator(k));
    let centralizer = g.centralizer_of_element(k);
    for x in h2.members().filter(|&x| classes.class_of(x) == class) {
        let t = g.mul(classes.conjugator(x), tk_inv);
        debug_assert_eq!(g.conj(t, k), x);
        for &c in centralizer.iter() {
            let cand = g.mul(t, c);
            if gens[1..].iter().all(|&y| h2.contains(g.conj(cand, y))) {
                return Some(cand);
            }
        }
    }
    None
}

/// Like [`transporter`], but the conjugating element must lie in `within`.
pub fn transporter_within(
    g: &EnumeratedGroup,
    within: &SubgroupSet,
    h1: &SubgroupSet,
    h2: &SubgroupSet,
) -> Option<usize> {
    if within.order() == g.order() {
        return transporter(g, h1, h2);
    }
    if h1.order != h2.order {
        return None;
    }
    if h1 == h2 {
        return Some(0);
    }
    let gens: Vec<usize> = h1.generators.iter().copied().filter(|&x| x != 0).collect();
    within
        .members()
        .find(|&t| gens.iter().all(|&y| h2.contains(g.conj(t, y))))
}
