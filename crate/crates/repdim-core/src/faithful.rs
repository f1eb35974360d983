//! Minimal faithful degrees from a character table: kernels of irreducible
//! characters, δ_irr (minimal faithful irreducible degree), and δ (the
//! representation dimension) as an exact minimum-weight set cover over
//! minimal normal subgroups. The naive subset search over row combinations
//! is kept as a cross-validation oracle.
//!
//! A multiplicity-free sum of irreducibles is faithful iff the kernels of
//! its constituents intersect trivially, iff every minimal normal subgroup
//! escapes some constituent's kernel; multiplicities never help, so δ is
//! the optimum of the cover instance.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::cyclo::{Coeff, Cyclo};
use crate::dixon::{character_table, CharacterTable, DixonError};
use crate::group::{
    conjugacy_classes, exponent, minimal_normal_subgroups, Group, GroupError, NormalSubgroup,
};

/// Bit-mask width cap for cover targets.
pub const MAX_COVER_TARGETS: usize = 64;
/// Class-count guard for the naive subset search.
pub const MAX_NAIVE_CLASSES: usize = 16;

#[derive(Debug, Error)]
pub enum FaithfulError {
    #[error("naive search supports at most {limit} classes, got {count}")]
    TooManyClasses { count: usize, limit: usize },
    #[error("cover solver supports at most {limit} targets, got {count}")]
    TooManyTargets { count: usize, limit: usize },
    #[error("the intersection of all row kernels is not trivial; table is not a character table of a group")]
    UnfaithfulTable,
    #[error("table does not belong to the group (classes {table_classes} vs {group_classes})")]
    TableMismatch { table_classes: usize, group_classes: usize },
    #[error(transparent)]
    Dixon(#[from] DixonError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A set of conjugacy-class indices (fixed-width bit mask over k classes).
/// Kernels always contain the identity class (bit 0).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KernelMask {
    len: usize,
    bits: Vec<u64>,
}

impl KernelMask {
    pub fn empty(len: usize) -> Self {
        KernelMask { len, bits: vec![0; len.div_ceil(64)] }
    }

    pub fn identity_only(len: usize) -> Self {
        let mut m = Self::empty(len);
        m.set(0);
        m
    }

    pub fn set(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.bits[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn intersect_with(&mut self, other: &KernelMask) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a &= b;
        }
    }

    pub fn intersection(&self, other: &KernelMask) -> KernelMask {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn is_identity_only(&self) -> bool {
        self.count() == 1 && self.contains(0)
    }

    pub fn is_subset_of(&self, other: &KernelMask) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn class_indices(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.contains(i)).collect()
    }
}

/// Classes on which the row attains its degree, under exact cyclotomic
/// equality; their element union is the kernel of the character.
pub fn kernel_classes<C: Coeff>(table: &CharacterTable<C>, row: usize) -> KernelMask {
    let k = table.class_count();
    let degree = Cyclo::integer(table.conductor, table.characters[row].degree as i64);
    let mut mask = KernelMask::empty(k);
    for j in 0..k {
        if *table.value(row, j) == degree {
            mask.set(j);
        }
    }
    debug_assert!(mask.contains(0));
    mask
}

pub fn kernel_masks<C: Coeff>(table: &CharacterTable<C>) -> Vec<KernelMask> {
    (0..table.characters.len())
        .map(|r| kernel_classes(table, r))
        .collect()
}

/// Minimal faithful irreducible character degree, when a faithful
/// irreducible exists. Absence is an explicit `None`, never 0.
pub fn delta_irr<C: Coeff>(table: &CharacterTable<C>) -> Option<u64> {
    faithful_row(table).map(|r| table.characters[r].degree)
}

/// Lowest-index row with trivial kernel; rows are degree-sorted, so this is
/// also a minimal-degree faithful row.
pub fn faithful_row<C: Coeff>(table: &CharacterTable<C>) -> Option<usize> {
    (0..table.characters.len()).find(|&r| kernel_classes(table, r).is_identity_only())
}

pub fn has_faithful_irr<C: Coeff>(table: &CharacterTable<C>) -> bool {
    faithful_row(table).is_some()
}

/// The set of irreducible character degrees cd(G).
pub fn cd_set<C: Coeff>(table: &CharacterTable<C>) -> BTreeSet<u64> {
    table.characters.iter().map(|r| r.degree).collect()
}

/// One selectable character in a cover instance.
#[derive(Debug, Clone)]
pub struct CoverItem {
    pub row: usize,
    pub weight: u64,
    /// Bit t set iff target t is NOT contained in this row's kernel.
    pub covers: u64,
}

/// Minimum-weight set-cover problem whose optimum is δ(G): targets are the
/// minimal normal subgroups (as class masks), items the irreducible rows.
#[derive(Debug, Clone)]
pub struct CoverInstance {
    pub targets: Vec<KernelMask>,
    pub items: Vec<CoverItem>,
}

/// Builds the cover instance: row r covers target N iff N ⊄ ker(r).
pub fn build_cover<C: Coeff>(
    table: &CharacterTable<C>,
    targets: Vec<KernelMask>,
) -> Result<CoverInstance, FaithfulError> {
    if targets.len() > MAX_COVER_TARGETS {
        return Err(FaithfulError::TooManyTargets {
            count: targets.len(),
            limit: MAX_COVER_TARGETS,
        });
    }
    let masks = kernel_masks(table);
    let items = masks
        .iter()
        .enumerate()
        .map(|(row, kernel)| {
            let mut covers = 0u64;
            for (t, target) in targets.iter().enumerate() {
                if !target.is_subset_of(kernel) {
                    covers |= 1 << t;
                }
            }
            CoverItem { row, weight: table.characters[row].degree, covers }
        })
        .collect();
    let instance = CoverInstance { targets, items };
    let all: u64 = instance.items.iter().fold(0, |acc, i| acc | i.covers);
    if all != full_mask(instance.targets.len()) {
        // The regular character is faithful, so a genuine table covers all.
        return Err(FaithfulError::UnfaithfulTable);
    }
    Ok(instance)
}

fn full_mask(n: usize) -> u64 {
    assert!(n <= MAX_COVER_TARGETS, "cover instances hold at most 64 targets");
    if n == 0 {
        0
    } else {
        u64::MAX >> (64 - n)
    }
}

/// Exact minimum total weight and its witness, by branch and bound over
/// targets ordered by fewest covering items, items per target by ascending
/// (weight, row). Deterministic; the witness has no redundant member.
pub fn solve_cover(instance: &CoverInstance) -> (u64, Vec<usize>) {
    let t = instance.targets.len();
    if t == 0 {
        return (0, Vec::new());
    }
    let full = full_mask(t);
    // Branch order: targets by fewest covering items.
    let mut target_order: Vec<usize> = (0..t).collect();
    let covering_counts: Vec<usize> = (0..t)
        .map(|i| instance.items.iter().filter(|item| item.covers >> i & 1 == 1).count())
        .collect();
    target_order.sort_by_key(|&i| (covering_counts[i], i));
    let items_for_target: Vec<Vec<&CoverItem>> = target_order
        .iter()
        .map(|&i| {
            let mut v: Vec<&CoverItem> = instance
                .items
                .iter()
                .filter(|item| item.covers >> i & 1 == 1)
                .collect();
            v.sort_by_key(|item| (item.weight, item.row));
            v
        })
        .collect();

    struct Search<'a> {
        items_for_target: &'a [Vec<&'a CoverItem>],
        target_order: &'a [usize],
        full: u64,
        best: u64,
        best_witness: Vec<usize>,
        chosen: Vec<usize>,
    }

    impl Search<'_> {
        fn recurse(&mut self, covered: u64, weight: u64) {
            if covered == self.full {
                if weight < self.best {
                    self.best = weight;
                    self.best_witness = self.chosen.clone();
                }
                return;
            }
            let slot = self
                .target_order
                .iter()
                .position(|&i| covered >> i & 1 == 0)
                .expect("an uncovered target exists");
            for item in &self.items_for_target[slot] {
                if weight + item.weight >= self.best {
                    // Items are weight-sorted; the bound only tightens.
                    break;
                }
                self.chosen.push(item.row);
                self.recurse(covered | item.covers, weight + item.weight);
                self.chosen.pop();
            }
        }
    }

    let mut search = Search {
        items_for_target: &items_for_target,
        target_order: &target_order,
        full,
        best: u64::MAX,
        best_witness: Vec::new(),
        chosen: Vec::new(),
    };
    search.recurse(0, 0);
    debug_assert!(search.best < u64::MAX, "instance covers all targets");
    let mut witness = search.best_witness;
    witness.sort_unstable();
    prune_redundant(instance, &mut witness);
    (search.best, witness)
}

/// Drops any witness member whose removal keeps every target covered.
/// An optimal witness never has one (weights are positive); this is a guard.
fn prune_redundant(instance: &CoverInstance, witness: &mut Vec<usize>) {
    let full = full_mask(instance.targets.len());
    let covers_of = |row: usize| instance.items[row].covers;
    loop {
        let removable = (0..witness.len()).rev().find(|&i| {
            let rest: u64 = witness
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(0, |acc, (_, &r)| acc | covers_of(r));
            rest == full
        });
        match removable {
            Some(i) => {
                witness.remove(i);
            }
            None => break,
        }
    }
}

/// δ(G) with its witness: a multiplicity-free list of row indices whose
/// kernels intersect trivially and whose degrees sum to the value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaResult {
    pub value: u64,
    pub witness: Vec<usize>,
    pub irreducible_witness: Option<usize>,
}

/// Representation dimension of a group: character table → minimal normal
/// subgroups → cover → exact solve. Cyclic groups short-circuit to their
/// faithful linear character.
pub fn delta(group: &Group) -> Result<DeltaResult, FaithfulError> {
    let table = character_table(group)?;
    delta_with_table(group, table.as_ref())
}

/// As [`delta`], with a caller-supplied table for the same group (e.g. a
/// cached one). The table's class order must be the canonical one.
pub fn delta_with_table<C: Coeff>(
    group: &Group,
    table: &CharacterTable<C>,
) -> Result<DeltaResult, FaithfulError> {
    let classes = conjugacy_classes(group);
    if classes.count() != table.class_count() || group.order() as u64 != table.order {
        return Err(FaithfulError::TableMismatch {
            table_classes: table.class_count(),
            group_classes: classes.count(),
        });
    }
    let irr = faithful_row(table);
    let cyclic = group.is_abelian() && exponent(&classes) == group.order() as u64;
    if cyclic {
        let row = irr.expect("a cyclic group has a faithful linear character");
        return Ok(DeltaResult { value: 1, witness: vec![row], irreducible_witness: irr });
    }
    let minimal = minimal_normal_subgroups(group, &classes)?;
    let targets = minimal
        .iter()
        .map(|n| normal_subgroup_mask(n, &classes.class_of, table.class_count()))
        .collect();
    let instance = build_cover(table, targets)?;
    let (value, witness) = solve_cover(&instance);
    Ok(DeltaResult { value, witness, irreducible_witness: irr })
}

/// Class mask of a normal subgroup (which is a union of classes).
pub fn normal_subgroup_mask(
    subgroup: &NormalSubgroup,
    class_of: &[u32],
    class_count: usize,
) -> KernelMask {
    let mut mask = KernelMask::empty(class_count);
    for &m in &subgroup.members {
        mask.set(class_of[m as usize] as usize);
    }
    mask
}

/// δ from a character table alone (e.g. an imported one): the normal
/// subgroups are recovered as intersections of row kernels, the minimal
/// nontrivial ones become the cover targets.
pub fn delta_from_table<C: Coeff>(table: &CharacterTable<C>) -> Result<DeltaResult, FaithfulError> {
    if table.characters.is_empty() {
        return Err(FaithfulError::UnfaithfulTable);
    }
    let masks = kernel_masks(table);
    let mut everything = masks[0].clone();
    for m in &masks[1..] {
        everything.intersect_with(m);
    }
    if !everything.is_identity_only() {
        return Err(FaithfulError::UnfaithfulTable);
    }
    let irr = faithful_row(table);
    let targets = minimal_kernel_intersections(&masks);
    if targets.is_empty() {
        // Trivial group: the trivial character is faithful of degree 1.
        return Ok(DeltaResult { value: 1, witness: vec![0], irreducible_witness: irr });
    }
    let instance = build_cover(table, targets)?;
    let (value, witness) = solve_cover(&instance);
    Ok(DeltaResult { value, witness, irreducible_witness: irr })
}

/// Every normal subgroup is an intersection of irreducible kernels; closes
/// the kernel masks under intersection and returns the minimal nontrivial
/// elements.
fn minimal_kernel_intersections(masks: &[KernelMask]) -> Vec<KernelMask> {
    let mut lattice: BTreeSet<KernelMask> = masks.iter().cloned().collect();
    loop {
        let snapshot: Vec<KernelMask> = lattice.iter().cloned().collect();
        let mut added = false;
        for i in 0..snapshot.len() {
            for j in (i + 1)..snapshot.len() {
                let meet = snapshot[i].intersection(&snapshot[j]);
                if lattice.insert(meet) {
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    let nontrivial: Vec<KernelMask> = lattice
        .into_iter()
        .filter(|m| !m.is_identity_only())
        .collect();
    nontrivial
        .iter()
        .filter(|m| {
            !nontrivial
                .iter()
                .any(|other| other != *m && other.is_subset_of(m))
        })
        .cloned()
        .collect()
}

/// Verbatim port of the subset search: walk r-combinations of rows in
/// lexicographic order, keeping the best degree sum whose kernel
/// intersection is the identity class alone. Exponential; guarded to at
/// most [`MAX_NAIVE_CLASSES`] classes.
pub fn delta_naive<C: Coeff>(table: &CharacterTable<C>) -> Result<u64, FaithfulError> {
    let s = table.class_count();
    if s > MAX_NAIVE_CLASSES {
        return Err(FaithfulError::TooManyClasses { count: s, limit: MAX_NAIVE_CLASSES });
    }
    let masks = kernel_masks(table);
    let degrees = table.degrees();
    // Degree of the regular character, realized by the all-rows combination.
    let mut min_deg: u64 = degrees.iter().sum();
    let mut r = 1u64;
    while r <= min_deg && r <= s as u64 {
        let mut combo: Vec<usize> = (0..r as usize).collect();
        loop {
            let deg_sum: u64 = combo.iter().map(|&i| degrees[i]).sum();
            if deg_sum < min_deg && r < min_deg {
                let mut inter = masks[combo[0]].clone();
                for &i in &combo[1..] {
                    inter.intersect_with(&masks[i]);
                }
                if inter.count() == 1 {
                    min_deg = deg_sum;
                }
            }
            if !next_combination(&mut combo, s) {
                break;
            }
        }
        r += 1;
    }
    Ok(min_deg)
}

/// Advances `combo` to the next r-combination of {0, …, n−1} in
/// lexicographic order; false when exhausted.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let r = combo.len();
    let mut i = r;
    while i > 0 {
        i -= 1;
        if combo[i] != i + n - r {
            combo[i] += 1;
            for j in (i + 1)..r {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
