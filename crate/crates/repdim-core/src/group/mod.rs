//! Finite groups with indexed elements: construction backends, conjugacy
//! classes, power maps, and the structural subgroup data (center, derived
//! subgroup, minimal normal subgroups) consumed downstream.
//!
//! Elements are indices `0..order` with the identity at index 0; every
//! backend supplies a total multiplication on indices. All types are
//! immutable after construction.

mod families;

pub use families::build_group;

use std::collections::HashMap;

use num_integer::Integer;
use thiserror::Error;

use crate::perm::{PermError, Permutation};

/// Default cap on group orders; constructions that would exceed it fail.
pub const DEFAULT_ORDER_BOUND: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group order exceeds bound {bound} (needs at least {at_least})")]
    OrderBound { at_least: usize, bound: usize },
    #[error("bad group parameter: {0}")]
    BadParameter(String),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("generators must share one degree (found {0} and {1})")]
    MixedDegrees(usize, usize),
    #[error("operation requires a nontrivial group")]
    TrivialGroup,
    #[error("operation requires an abelian group")]
    NotAbelian,
}

enum Backend {
    /// Permutation group: indexed element list plus a lookup map.
    Perm {
        elements: Vec<Permutation>,
        index: HashMap<Permutation, u32>,
    },
    /// Full Cayley table, row-major: `table[a * order + b]`.
    Table { table: Vec<u32> },
    /// Direct product with mixed-radix indexing: `index = a * |B| + b`.
    Product { left: Box<Group>, right: Box<Group> },
    /// C_{n1} × … × C_{nr} with digitwise addition; no stored elements.
    Abelian { factors: Vec<u64> },
}

/// A finite group of desk scale with a total multiplication oracle on
/// element indices. Index 0 is the identity.
pub struct Group {
    order: usize,
    backend: Backend,
    inverses: Vec<u32>,
    generators: Vec<usize>,
    spec: String,
}

impl std::fmt::Debug for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Group")
            .field("spec", &self.spec)
            .field("order", &self.order)
            .finish()
    }
}

impl Group {
    pub fn order(&self) -> usize {
        self.order
    }

    /// Canonical construction descriptor, stable across runs.
    pub fn spec(&self) -> &str {
        &self.spec
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn multiply(&self, a: usize, b: usize) -> usize {
        debug_assert!(a < self.order && b < self.order);
        match &self.backend {
            Backend::Perm { elements, index } => {
                let prod = elements[a].compose(&elements[b]);
                index[&prod] as usize
            }
            Backend::Table { table } => table[a * self.order + b] as usize,
            Backend::Product { left, right } => {
                let nr = right.order;
                let (a1, a2) = (a / nr, a % nr);
                let (b1, b2) = (b / nr, b % nr);
                left.multiply(a1, b1) * nr + right.multiply(a2, b2)
            }
            Backend::Abelian { factors } => {
                let mut out = 0usize;
                let mut radix = 1usize;
                let (mut x, mut y) = (a, b);
                for &n in factors {
                    let n = n as usize;
                    out += ((x % n + y % n) % n) * radix;
                    x /= n;
                    y /= n;
                    radix *= n;
                }
                out
            }
        }
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    /// `g⁻¹ · a · g`.
    pub fn conjugate(&self, a: usize, g: usize) -> usize {
        self.multiply(self.inverse(g), self.multiply(a, g))
    }

    /// a^k by square-and-multiply.
    pub fn power(&self, a: usize, mut k: u64) -> usize {
        let mut acc = 0usize;
        let mut base = a;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.multiply(acc, base);
            }
            base = self.multiply(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let mut x = a;
        let mut n = 1u64;
        while x != 0 {
            x = self.multiply(x, a);
            n += 1;
        }
        n
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|&g| self.generators.iter().all(|&h| self.multiply(g, h) == self.multiply(h, g)))
    }

    /// When the group is permutation-backed, the stored element list.
    pub fn permutation_elements(&self) -> Option<&[Permutation]> {
        match &self.backend {
            Backend::Perm { elements, .. } => Some(elements),
            _ => None,
        }
    }

    /// Smallest multiplication-closed set containing the generators and the
    /// identity. Generators must share one degree. An empty generator list
    /// yields the trivial group on `degree` points.
    pub fn from_generators(
        degree: usize,
        gens: Vec<Permutation>,
        bound: usize,
        spec: String,
    ) -> Result<Group, GroupError> {
        for g in &gens {
            if g.degree() != degree {
                return Err(GroupError::MixedDegrees(degree, g.degree()));
            }
        }
        let mut elements = vec![Permutation::identity(degree)];
        let mut index: HashMap<Permutation, u32> = HashMap::new();
        index.insert(elements[0].clone(), 0);
        let mut cursor = 0;
        while cursor < elements.len() {
            for g in &gens {
                let prod = elements[cursor].compose(g);
                if !index.contains_key(&prod) {
                    if elements.len() >= bound {
                        return Err(GroupError::OrderBound {
                            at_least: elements.len() + 1,
                            bound,
                        });
                    }
                    index.insert(prod.clone(), elements.len() as u32);
                    elements.push(prod);
                }
            }
            cursor += 1;
        }
        let gen_indices: Vec<usize> = gens
            .iter()
            .map(|g| index[g] as usize)
            .filter(|&i| i != 0)
            .collect();
        let mut gen_dedup = Vec::new();
        for i in gen_indices {
            if !gen_dedup.contains(&i) {
                gen_dedup.push(i);
            }
        }
        Ok(Group::assemble(Backend::Perm { elements, index }, gen_dedup, spec))
    }

    /// Wraps an already-closed element set (identity must be present; it is
    /// moved to index 0). Generators are recovered greedily.
    pub(crate) fn from_permutation_set(
        mut elements: Vec<Permutation>,
        spec: String,
    ) -> Group {
        let id_pos = elements
            .iter()
            .position(|p| p.is_identity())
            .expect("closed element set contains the identity");
        elements.swap(0, id_pos);
        let index: HashMap<Permutation, u32> =
            elements.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
        assert_eq!(index.len(), elements.len(), "duplicate elements");
        let mut g = Group::assemble(Backend::Perm { elements, index }, Vec::new(), spec);
        g.generators = g.greedy_generators();
        g
    }

    pub(crate) fn from_table(table: Vec<u32>, order: usize, spec: String) -> Group {
        assert_eq!(table.len(), order * order);
        assert!((0..order).all(|a| table[a * order] == a as u32 && table[a] == a as u32));
        let mut g = Group::assemble(Backend::Table { table }, Vec::new(), spec);
        g.generators = g.greedy_generators();
        g
    }

    /// Direct product with pairwise index encoding `(a, b) ↦ a·|B| + b`.
    pub fn product(left: Group, right: Group, spec: String) -> Group {
        let nr = right.order;
        let mut generators: Vec<usize> =
            left.generators.iter().map(|&g| g * nr).collect();
        generators.extend(right.generators.iter().copied());
        let backend = Backend::Product { left: Box::new(left), right: Box::new(right) };
        Group::assemble(backend, generators, spec)
    }

    pub(crate) fn abelian_backend(factors: Vec<u64>, spec: String) -> Group {
        let mut generators = Vec::new();
        let mut radix = 1usize;
        for &n in &factors {
            if n > 1 {
                generators.push(radix);
            }
            radix *= n as usize;
        }
        Group::assemble(Backend::Abelian { factors }, generators, spec)
    }

    fn assemble(backend: Backend, generators: Vec<usize>, spec: String) -> Group {
        let order = match &backend {
            Backend::Perm { elements, .. } => elements.len(),
            Backend::Table { table } => {
                let n = (1..).find(|&n| n * n >= table.len()).unwrap();
                assert_eq!(n * n, table.len());
                n
            }
            Backend::Product { left, right } => left.order * right.order,
            Backend::Abelian { factors } => {
                factors.iter().product::<u64>() as usize
            }
        };
        let mut group = Group { order, backend, inverses: Vec::new(), generators, spec };
        group.inverses = group.compute_inverses();
        group
    }

    fn compute_inverses(&self) -> Vec<u32> {
        match &self.backend {
            Backend::Perm { elements, index } => elements
                .iter()
                .map(|p| index[&p.inverse()])
                .collect(),
            Backend::Table { table } => {
                let n = self.order;
                let mut inv = vec![0u32; n];
                for a in 0..n {
                    let b = (0..n)
                        .find(|&b| table[a * n + b] == 0)
                        .expect("every row of a Cayley table contains the identity");
                    inv[a] = b as u32;
                }
                inv
            }
            Backend::Product { left, right } => {
                let nr = right.order;
                (0..self.order)
                    .map(|i| {
                        (left.inverse(i / nr) * nr + right.inverse(i % nr)) as u32
                    })
                    .collect()
            }
            Backend::Abelian { factors } => (0..self.order)
                .map(|i| {
                    let mut out = 0usize;
                    let mut radix = 1usize;
                    let mut x = i;
                    for &n in factors {
                        let n = n as usize;
                        out += ((n - x % n) % n) * radix;
                        x /= n;
                        radix *= n;
                    }
                    out as u32
                })
                .collect(),
        }
    }

    /// A small generating set found greedily: scan elements in index order,
    /// adding any element not yet in the closure of the set so far.
    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens: Vec<usize> = Vec::new();
        let mut closure = vec![false; self.order];
        closure[0] = true;
        let mut closed_count = 1;
        for i in 1..self.order {
            if closure[i] {
                continue;
            }
            gens.push(i);
            // Extend the closure with the new generator.
            let mut frontier: Vec<usize> = closure
                .iter()
                .enumerate()
                .filter_map(|(j, &inside)| inside.then_some(j))
                .collect();
            while let Some(x) = frontier.pop() {
                for &g in &gens {
                    let y = self.multiply(x, g);
                    if !closure[y] {
                        closure[y] = true;
                        closed_count += 1;
                        frontier.push(y);
                    }
                }
            }
            if closed_count == self.order {
                break;
            }
        }
        gens
    }
}

/// One conjugacy class: representative is the smallest member index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub members: Vec<u32>,
    pub size: usize,
    pub inverse_class: usize,
    pub rep_order: u64,
}

/// All conjugacy classes in canonical order: identity class first, then
/// ascending `(rep_order, size)`, ties broken by smallest member index.
#[derive(Debug, Clone)]
pub struct ConjugacyClasses {
    pub classes: Vec<ConjugacyClass>,
    /// Element index → class index.
    pub class_of: Vec<u32>,
}

impl ConjugacyClasses {
    pub fn count(&self) -> usize {
        self.classes.len()
    }
}

/// Computes the conjugacy classes of `group` by orbiting each element under
/// conjugation by the generators.
pub fn conjugacy_classes(group: &Group) -> ConjugacyClasses {
    let n = group.order();
    const UNASSIGNED: u32 = u32::MAX;
    let mut class_of = vec![UNASSIGNED; n];
    let mut raw: Vec<Vec<u32>> = Vec::new();
    for start in 0..n {
        if class_of[start] != UNASSIGNED {
            continue;
        }
        let id = raw.len() as u32;
        let mut members = vec![start as u32];
        class_of[start] = id;
        let mut cursor = 0;
        while cursor < members.len() {
            let x = members[cursor] as usize;
            cursor += 1;
            for &g in group.generators() {
                let y = group.conjugate(x, g);
                if class_of[y] == UNASSIGNED {
                    class_of[y] = id;
                    members.push(y as u32);
                }
            }
        }
        members.sort_unstable();
        raw.push(members);
    }
    // Canonical ordering.
    let mut order: Vec<usize> = (0..raw.len()).collect();
    let rep_orders: Vec<u64> =
        raw.iter().map(|m| group.element_order(m[0] as usize)).collect();
    order.sort_by_key(|&c| (raw[c][0] != 0, rep_orders[c], raw[c].len(), raw[c][0]));
    let mut classes = Vec::with_capacity(raw.len());
    let mut relabel = vec![0u32; raw.len()];
    for (new_idx, &old_idx) in order.iter().enumerate() {
        relabel[old_idx] = new_idx as u32;
    }
    for &old_idx in &order {
        let members = raw[old_idx].clone();
        let representative = members[0] as usize;
        classes.push(ConjugacyClass {
            representative,
            size: members.len(),
            inverse_class: 0, // fixed below
            rep_order: rep_orders[old_idx],
            members,
        });
    }
    for x in 0..n {
        class_of[x] = relabel[class_of[x] as usize];
    }
    for c in 0..classes.len() {
        let inv = group.inverse(classes[c].representative);
        classes[c].inverse_class = class_of[inv] as usize;
    }
    ConjugacyClasses { classes, class_of }
}

/// `table[k][j]` is the class index of g_j^k, for 0 ≤ k < exponent(G).
#[derive(Debug, Clone)]
pub struct PowerMaps {
    pub table: Vec<Vec<u32>>,
}

impl PowerMaps {
    pub fn exponent(&self) -> u64 {
        self.table.len() as u64
    }
}

/// The exponent of the group: lcm of the element orders, computed from the
/// class representatives.
pub fn exponent(classes: &ConjugacyClasses) -> u64 {
    classes.classes.iter().fold(1u64, |acc, c| acc.lcm(&c.rep_order))
}

/// Power maps over all exponents 0 ≤ k < exponent(G); well-defined
/// independent of the representative choice.
pub fn power_maps(group: &Group, classes: &ConjugacyClasses) -> PowerMaps {
    let e = exponent(classes) as usize;
    let k_classes = classes.count();
    let mut table = vec![vec![0u32; k_classes]; e];
    for (j, class) in classes.classes.iter().enumerate() {
        let mut pow = 0usize; // identity
        for row in table.iter_mut() {
            row[j] = classes.class_of[pow];
            pow = group.multiply(pow, class.representative);
        }
    }
    PowerMaps { table }
}

/// A normal subgroup as a sorted element-index set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalSubgroup {
    pub members: Vec<u32>,
}

impl NormalSubgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, element: u32) -> bool {
        self.members.binary_search(&element).is_ok()
    }

    pub fn is_subset_of(&self, other: &NormalSubgroup) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }
}

/// Closure of `seed ∪ {identity}` under multiplication, then re-closed under
/// conjugation by the group generators until stable. The multiplication
/// closure right-multiplies by the generating set only (seed plus any
/// conjugates picked up along the way), which suffices in a finite group.
pub fn normal_closure(group: &Group, seed: &[usize]) -> NormalSubgroup {
    let n = group.order();
    let mut inside = vec![false; n];
    inside[0] = true;
    let mut members: Vec<usize> = vec![0];
    let mut generating: Vec<usize> = Vec::new();
    for &s in seed {
        if !inside[s] {
            inside[s] = true;
            members.push(s);
            generating.push(s);
        }
    }
    loop {
        let mut cursor = 0;
        while cursor < members.len() {
            let x = members[cursor];
            cursor += 1;
            for &s in &generating {
                let y = group.multiply(x, s);
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                }
            }
        }
        // Conjugation closure; new conjugates extend the generating set.
        let mut added = false;
        let snapshot = members.clone();
        for &x in &snapshot {
            for &g in group.generators() {
                let y = group.conjugate(x, g);
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                    generating.push(y);
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    let mut members: Vec<u32> = members.into_iter().map(|m| m as u32).collect();
    members.sort_unstable();
    NormalSubgroup { members }
}

/// Elements commuting with every generator (hence with the whole group).
pub fn center(group: &Group) -> NormalSubgroup {
    let members = (0..group.order())
        .filter(|&x| {
            group
                .generators()
                .iter()
                .all(|&g| group.multiply(x, g) == group.multiply(g, x))
        })
        .map(|x| x as u32)
        .collect();
    NormalSubgroup { members }
}

/// Normal closure of the commutators of generator pairs.
pub fn derived_subgroup(group: &Group) -> NormalSubgroup {
    let mut seed = Vec::new();
    for &a in group.generators() {
        for &b in group.generators() {
            let comm = group.multiply(
                group.multiply(group.inverse(a), group.inverse(b)),
                group.multiply(a, b),
            );
            if comm != 0 && !seed.contains(&comm) {
                seed.push(comm);
            }
        }
    }
    normal_closure(group, &seed)
}

/// True when the subgroup given by `members` is cyclic (element-index set
/// inside `group`, assumed closed).
pub fn is_cyclic_subgroup(group: &Group, members: &[u32]) -> bool {
    let order = members.len() as u64;
    members.iter().any(|&m| group.element_order(m as usize) == order)
}

/// Number of invariant factors of an abelian group: the maximum p-rank over
/// primes dividing the order. Errors on nonabelian input.
pub fn abelian_rank(group: &Group) -> Result<usize, GroupError> {
    if !group.is_abelian() {
        return Err(GroupError::NotAbelian);
    }
    let order = group.order() as u64;
    let mut rank = 0usize;
    let mut rest = order;
    let mut p = 2u64;
    while p * p <= rest {
        if rest % p == 0 {
            while rest % p == 0 {
                rest /= p;
            }
            rank = rank.max(p_rank(group, p));
        }
        p += 1;
    }
    if rest > 1 {
        rank = rank.max(p_rank(group, rest));
    }
    Ok(rank)
}

fn p_rank(group: &Group, p: u64) -> usize {
    // |{x : x^p = e}| = p^rank for abelian groups.
    let torsion = (0..group.order()).filter(|&x| group.power(x, p) == 0).count() as u64;
    let mut rank = 0;
    let mut t = torsion;
    while t > 1 {
        debug_assert_eq!(t % p, 0);
        t /= p;
        rank += 1;
    }
    rank
}

/// Minimal normal subgroups: normal closures of the nontrivial conjugacy
/// classes, filtered to the inclusion-minimal distinct results. Every
/// nontrivial normal subgroup contains at least one of these.
pub fn minimal_normal_subgroups(
    group: &Group,
    classes: &ConjugacyClasses,
) -> Result<Vec<NormalSubgroup>, GroupError> {
    if group.order() == 1 {
        return Err(GroupError::TrivialGroup);
    }
    let mut closures: Vec<NormalSubgroup> = Vec::new();
    for class in classes.classes.iter().skip(1) {
        let seed: Vec<usize> = class.members.iter().map(|&m| m as usize).collect();
        let closure = normal_closure(group, &seed);
        if !closures.contains(&closure) {
            closures.push(closure);
        }
    }
    let mut minimal: Vec<NormalSubgroup> = closures
        .iter()
        .filter(|n| {
            !closures
                .iter()
                .any(|m| m.order() < n.order() && m.is_subset_of(n))
        })
        .cloned()
        .collect();
    minimal.sort_by(|a, b| (a.order(), &a.members).cmp(&(b.order(), &b.members)));
    Ok(minimal)
}
