//! Exact irreducible character tables via the class-matrix eigenvector
//! method over a finite field, lifted to cyclotomic integers.
//!
//! Pipeline: conjugacy classes → power maps → prime context → class
//! matrices mod p → simultaneous eigenvectors (central characters) →
//! degrees → entrywise lift by discrete Fourier inversion over ⟨g⟩ → exact
//! orthogonality verification. A table is never returned unverified.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclo::{Coeff, Cyclo, CycloError};
use crate::group::{
    conjugacy_classes, exponent, power_maps, ConjugacyClasses, Group, PowerMaps,
};
use crate::modp::{FpCtx, FpMatrix};

#[derive(Debug, Error)]
pub enum DixonError {
    #[error("eigenspace splitting stalled: {0}")]
    SplitStalled(String),
    #[error("degree recovery failed: {0}")]
    DegreeRecovery(String),
    #[error("character table verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}

/// Prime modulus with a primitive e-th root of unity, p ≡ 1 (mod e) and
/// p > 2√|G|, plus an inverse table for nonzero residues.
#[derive(Debug, Clone)]
pub struct PrimeContext {
    pub p: u64,
    pub exponent: u64,
    pub root: u64,
    pub inverses: Vec<u64>,
    pub ctx: FpCtx,
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime p ≡ 1 (mod e) with p² > 4·order, with a root of
/// multiplicative order exactly e.
pub fn choose_prime(order: u64, e: u64) -> PrimeContext {
    let mut p = 2u64;
    loop {
        if p % e == 1 % e && p * p > 4 * order && is_prime_u64(p) {
            break;
        }
        p += 1;
    }
    let ctx = FpCtx::new(p);
    let root = (2..p)
        .map(|a| ctx.pow(a, (p - 1) / e))
        .find(|&z| ctx.element_order(z, e) == e)
        .unwrap_or(1); // e = 1 only
    debug_assert_eq!(ctx.element_order(root, e), e);
    PrimeContext { p, exponent: e, root, inverses: ctx.inverse_table(), ctx }
}

/// The i-th class matrix: `entries[j * k + l]` is the class multiplication
/// coefficient a_{ijl} = #{(x,y) ∈ C_i × C_j : xy = z_l} for one fixed z_l
/// per class l. Central characters are its simultaneous eigenvectors.
#[derive(Debug, Clone)]
pub struct ClassMatrix {
    pub class_index: usize,
    pub size: usize,
    pub entries: Vec<u64>,
}

impl ClassMatrix {
    pub fn at(&self, j: usize, l: usize) -> u64 {
        self.entries[j * self.size + l]
    }

    fn to_fp(&self, ctx: &FpCtx) -> FpMatrix {
        FpMatrix {
            rows: self.size,
            cols: self.size,
            data: self.entries.iter().map(|&v| v % ctx.p).collect(),
        }
    }
}

/// Counts a_{ijl} by pairing each x ∈ C_i with the forced y = x⁻¹·z_l.
pub fn class_matrix(group: &Group, classes: &ConjugacyClasses, i: usize) -> ClassMatrix {
    let k = classes.count();
    let mut entries = vec![0u64; k * k];
    for (l, class_l) in classes.classes.iter().enumerate() {
        let z = class_l.representative;
        for &x in &classes.classes[i].members {
            let y = group.multiply(group.inverse(x as usize), z);
            let j = classes.class_of[y] as usize;
            entries[j * k + l] += 1;
        }
    }
    ClassMatrix { class_index: i, size: k, entries }
}

/// A subspace of F_p^k kept in reduced echelon form for cheap coordinate
/// extraction.
struct Subspace {
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    fn full(k: usize) -> Subspace {
        let basis = (0..k)
            .map(|i| {
                let mut v = vec![0u64; k];
                v[i] = 1;
                v
            })
            .collect();
        Subspace { basis, pivots: (0..k).collect() }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Row-reduces `vectors` into echelon form; drops zero rows.
    fn from_vectors(mut vectors: Vec<Vec<u64>>, ctx: &FpCtx) -> Subspace {
        let cols = vectors.first().map_or(0, Vec::len);
        let mut basis: Vec<Vec<u64>> = Vec::new();
        let mut pivots: Vec<usize> = Vec::new();
        for v in vectors.iter_mut() {
            let mut w = v.clone();
            for (b, &pc) in basis.iter().zip(&pivots) {
                if w[pc] != 0 {
                    let f = w[pc];
                    for c in 0..cols {
                        w[c] = ctx.sub(w[c], ctx.mul(f, b[c]));
                    }
                }
            }
            if let Some(pc) = (0..cols).find(|&c| w[c] != 0) {
                let inv = ctx.inv(w[pc]);
                for c in 0..cols {
                    w[c] = ctx.mul(w[c], inv);
                }
                // Back-substitute to keep earlier rows reduced at the new pivot.
                for (b, _) in basis.iter_mut().zip(&pivots) {
                    if b[pc] != 0 {
                        let f = b[pc];
                        for c in 0..cols {
                            b[c] = ctx.sub(b[c], ctx.mul(f, w[c]));
                        }
                    }
                }
                basis.push(w);
                pivots.push(pc);
            }
        }
        // Keep basis rows ordered by pivot column.
        let mut order: Vec<usize> = (0..basis.len()).collect();
        order.sort_by_key(|&i| pivots[i]);
        let basis = order.iter().map(|&i| basis[i].clone()).collect();
        let pivots = {
            let mut p: Vec<usize> = pivots.clone();
            p.sort_unstable();
            p
        };
        Subspace { basis, pivots }
    }

    /// Coordinates of `v` in this basis; `None` if `v` is outside the span.
    fn express(&self, v: &[u64], ctx: &FpCtx) -> Option<Vec<u64>> {
        let coords: Vec<u64> = self.pivots.iter().map(|&pc| v[pc]).collect();
        let mut residual = v.to_vec();
        for (b, &c) in self.basis.iter().zip(&coords) {
            if c != 0 {
                for (r, &bv) in residual.iter_mut().zip(b) {
                    *r = ctx.sub(*r, ctx.mul(c, bv));
                }
            }
        }
        residual.iter().all(|&x| x == 0).then_some(coords)
    }
}

/// Recursively splits the common eigenspaces of the class matrices
/// (supplied one at a time by `matrix_for`) until every subspace is
/// one-dimensional; returns the k simultaneous eigenvectors, each
/// normalized so its identity-class coordinate is 1.
fn split_common_eigenvectors(
    k: usize,
    ctx: &PrimeContext,
    mut matrix_for: impl FnMut(usize) -> FpMatrix,
) -> Result<Vec<Vec<u64>>, DixonError> {
    let fp = &ctx.ctx;
    let mut subspaces = vec![Subspace::full(k)];
    for i in 1..k {
        if subspaces.iter().all(|s| s.dim() == 1) {
            break;
        }
        let m = matrix_for(i);
        let mut next: Vec<Subspace> = Vec::new();
        for space in subspaces {
            let d = space.dim();
            if d == 1 {
                next.push(space);
                continue;
            }
            // Restriction of m to the subspace, in basis coordinates.
            let mut restricted = FpMatrix::zero(d, d);
            for (t, b) in space.basis.iter().enumerate() {
                let image = m.apply(fp, b);
                let coords = space.express(&image, fp).ok_or_else(|| {
                    DixonError::SplitStalled(format!(
                        "class matrix {i} does not preserve a computed subspace"
                    ))
                })?;
                for (j, &c) in coords.iter().enumerate() {
                    restricted.set(j, t, c);
                }
            }
            // Exhaustive eigenvalue scan over F_p; affordable at desk scale.
            let mut remaining = d;
            for lambda in 0..ctx.p {
                if remaining == 0 {
                    break;
                }
                let mut shifted = restricted.clone();
                for t in 0..d {
                    shifted.set(t, t, fp.sub(shifted.at(t, t), lambda));
                }
                let kernel = shifted.nullspace(fp);
                if kernel.is_empty() {
                    continue;
                }
                let lifted: Vec<Vec<u64>> = kernel
                    .iter()
                    .map(|coords| {
                        let mut v = vec![0u64; k];
                        for (t, &c) in coords.iter().enumerate() {
                            if c != 0 {
                                for (slot, &bv) in v.iter_mut().zip(&space.basis[t]) {
                                    *slot = fp.add(*slot, fp.mul(c, bv));
                                }
                            }
                        }
                        v
                    })
                    .collect();
                let sub = Subspace::from_vectors(lifted, fp);
                remaining -= sub.dim();
                next.push(sub);
            }
            if remaining > 0 {
                return Err(DixonError::SplitStalled(format!(
                    "class matrix {i} left a {remaining}-dimensional unsplit residue"
                )));
            }
        }
        subspaces = next;
    }
    let mut eigenvectors = Vec::with_capacity(k);
    for space in subspaces {
        if space.dim() != 1 {
            return Err(DixonError::SplitStalled(format!(
                "a {}-dimensional subspace survived all class matrices",
                space.dim()
            )));
        }
        let v = &space.basis[0];
        if v[0] == 0 {
            return Err(DixonError::SplitStalled(
                "eigenvector with vanishing identity coordinate".into(),
            ));
        }
        let inv = fp.inv(v[0]);
        eigenvectors.push(v.iter().map(|&x| fp.mul(x, inv)).collect());
    }
    Ok(eigenvectors)
}

/// Simultaneous one-dimensional eigenvectors of the given class matrices.
pub fn common_eigenvectors(
    matrices: &[FpMatrix],
    ctx: &PrimeContext,
) -> Result<Vec<Vec<u64>>, DixonError> {
    let k = matrices.len();
    split_common_eigenvectors(k, ctx, |i| matrices[i].clone())
}

/// Per-class data carried inside a table (and its JSON form).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassInfo {
    pub size: u64,
    pub rep_order: u64,
    pub inverse: usize,
    /// `powers[k]` is the class index of g^k, for 0 ≤ k < conductor.
    pub powers: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "Cyclo<C>: Serialize",
    deserialize = "Cyclo<C>: Deserialize<'de>"
))]
pub struct CharacterRow<C: Coeff> {
    pub degree: u64,
    pub values: Vec<Cyclo<C>>,
}

/// An exact irreducible character table. Rows are sorted canonically: the
/// trivial character first, then by (degree, value encoding); classes are in
/// the canonical conjugacy-class order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "Cyclo<C>: Serialize",
    deserialize = "Cyclo<C>: Deserialize<'de>"
))]
pub struct CharacterTable<C: Coeff> {
    pub spec: String,
    pub order: u64,
    pub conductor: u64,
    pub classes: Vec<ClassInfo>,
    pub characters: Vec<CharacterRow<C>>,
}

impl<C: Coeff> CharacterTable<C> {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.characters.iter().map(|r| r.degree).collect()
    }

    pub fn value(&self, row: usize, class: usize) -> &Cyclo<C> {
        &self.characters[row].values[class]
    }
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Recovers degrees from eigenvectors and lifts every entry to an exact
/// cyclotomic integer; the assembled table is orthogonality-verified before
/// being returned.
pub fn degrees_and_lift<C: Coeff>(
    eigenvectors: &[Vec<u64>],
    prime: &PrimeContext,
    classes: &ConjugacyClasses,
    powers: &PowerMaps,
    order: u64,
    spec: String,
) -> Result<CharacterTable<C>, DixonError> {
    let fp = &prime.ctx;
    let k = classes.count();
    let e = powers.exponent();
    let inv = |x: u64| prime.inverses[(x % prime.p) as usize];
    let class_sizes: Vec<u64> = classes.classes.iter().map(|c| c.size as u64).collect();
    let size_inv: Vec<u64> = class_sizes.iter().map(|&s| inv(s)).collect();
    // Powers of the root and its inverse, z^t for t < e.
    let root_pow: Vec<u64> = {
        let mut v = vec![1u64; e as usize];
        for t in 1..e as usize {
            v[t] = fp.mul(v[t - 1], prime.root);
        }
        v
    };
    let e_inv = inv(e);
    let max_degree = isqrt(order);

    let mut rows: Vec<CharacterRow<C>> = Vec::with_capacity(k);
    for omega in eigenvectors {
        // 1/d² = (1/|G|) Σ_j ω(j)·ω(j*) / |C_j| in F_p.
        let mut s = 0u64;
        for j in 0..k {
            let jstar = classes.classes[j].inverse_class;
            s = fp.add(s, fp.mul(fp.mul(omega[j], omega[jstar]), size_inv[j]));
        }
        if s == 0 {
            return Err(DixonError::DegreeRecovery("zero norm for eigenvector".into()));
        }
        let dsq = fp.mul(order % prime.p, inv(s));
        let degree = (1..=max_degree)
            .find(|&d| fp.mul(d % prime.p, d % prime.p) == dsq)
            .ok_or_else(|| {
                DixonError::DegreeRecovery(format!(
                    "no degree in 1..={max_degree} squares to {dsq} mod {}",
                    prime.p
                ))
            })?;
        // χ(j) = d·ω(j)/|C_j| mod p.
        let chi_p: Vec<u64> = (0..k)
            .map(|j| fp.mul(fp.mul(degree % prime.p, omega[j]), size_inv[j]))
            .collect();
        // Fourier inversion over the cyclic group generated by each
        // representative: multiplicity of ζ^t in χ(g) is
        // e⁻¹ Σ_s χ(g^s)·z^{−ts} mod p, lifted to 0 ≤ m_t < p.
        let mut values = Vec::with_capacity(k);
        for j in 0..k {
            let mut mults = vec![C::zero(); e as usize];
            for (t, slot) in mults.iter_mut().enumerate() {
                let mut acc = 0u64;
                for s in 0..e as usize {
                    let chi_s = chi_p[powers.table[s][j] as usize];
                    // z^{−ts} = z^{(e − ts mod e) mod e}
                    let idx = (e as usize - (t * s) % e as usize) % e as usize;
                    acc = fp.add(acc, fp.mul(chi_s, root_pow[idx]));
                }
                let m = fp.mul(acc, e_inv);
                *slot = C::from_u64(m).ok_or(CycloError::Overflow { conductor: e })?;
            }
            values.push(Cyclo::from_poly(e, mults)?);
        }
        rows.push(CharacterRow { degree, values });
    }
    rows.sort_by(compare_rows);
    let class_infos: Vec<ClassInfo> = classes
        .classes
        .iter()
        .enumerate()
        .map(|(j, c)| ClassInfo {
            size: c.size as u64,
            rep_order: c.rep_order,
            inverse: c.inverse_class,
            powers: powers.table.iter().map(|row| row[j] as usize).collect(),
        })
        .collect();
    let table = CharacterTable {
        spec,
        order,
        conductor: e,
        classes: class_infos,
        characters: rows,
    };
    verify_table(&table)?;
    Ok(table)
}

/// Canonical row order: the trivial character first, then ascending degree,
/// ties broken by the value encoding (per class, per coefficient, larger
/// coefficient first — this puts 1 before the nontrivial root powers).
fn compare_rows<C: Coeff>(a: &CharacterRow<C>, b: &CharacterRow<C>) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    let trivial = |r: &CharacterRow<C>| r.degree == 1 && r.values.iter().all(|v| v.as_integer().map(C::is_one).unwrap_or(false));
    match (trivial(a), trivial(b)) {
        (true, false) => return Ordering::Less,
        (false, true) => return Ordering::Greater,
        _ => {}
    }
    a.degree.cmp(&b.degree).then_with(|| {
        for (va, vb) in a.values.iter().zip(&b.values) {
            for (ca, cb) in va.coeffs().iter().zip(vb.coeffs()) {
                match cb.partial_cmp(ca) {
                    Some(Ordering::Equal) | None => continue,
                    Some(ord) => return ord,
                }
            }
        }
        Ordering::Equal
    })
}

/// Exact verification: row and column orthogonality in `Z[ζ_e]`, degree
/// consistency, and the trivial character in row 0.
pub fn verify_table<C: Coeff>(table: &CharacterTable<C>) -> Result<(), DixonError> {
    let k = table.class_count();
    let fail = |msg: String| Err(DixonError::Verification(msg));
    if table.characters.len() != k {
        return fail(format!(
            "{} rows for {} classes",
            table.characters.len(),
            k
        ));
    }
    let e = table.conductor;
    let class_sum: u64 = table.classes.iter().map(|c| c.size).sum();
    if class_sum != table.order {
        return fail(format!("class sizes sum to {class_sum}, order is {}", table.order));
    }
    for (j, class) in table.classes.iter().enumerate() {
        if class.size == 0 || table.order % class.size != 0 {
            return fail(format!("class {j} size {} does not divide the order", class.size));
        }
        if class.inverse >= k {
            return fail(format!("class {j} inverse index out of range"));
        }
        if class.powers.len() != e as usize || class.powers.iter().any(|&p| p >= k) {
            return fail(format!("class {j} power map is malformed"));
        }
    }
    let sq_sum: u64 = table.characters.iter().map(|r| r.degree * r.degree).sum();
    if sq_sum != table.order {
        return fail(format!("sum of squared degrees {sq_sum} != order {}", table.order));
    }
    if let Some(first) = table.characters.first() {
        let is_trivial = first.degree == 1
            && first
                .values
                .iter()
                .all(|v| v.as_integer().map(C::is_one).unwrap_or(false));
        if !is_trivial {
            return fail("row 0 is not the trivial character".into());
        }
    }
    for (r, row) in table.characters.iter().enumerate() {
        if row.values.len() != k {
            return fail(format!("row {r} has {} values", row.values.len()));
        }
        let at_identity = &row.values[0];
        if at_identity != &Cyclo::integer(e, row.degree as i64) {
            return fail(format!("row {r} value at the identity differs from its degree"));
        }
    }
    // Row orthogonality: Σ_j |C_j|·χ(j)·conj(ψ(j)) = |G|·[χ = ψ].
    for r in 0..k {
        for s in r..k {
            let mut acc = Cyclo::<C>::zero(e);
            for j in 0..k {
                let term = table.value(r, j).mul(&table.value(s, j).conj())?;
                let weighted =
                    term.mul(&Cyclo::integer(e, table.classes[j].size as i64))?;
                acc = acc.add(&weighted)?;
            }
            let expected = if r == s { table.order as i64 } else { 0 };
            if acc != Cyclo::integer(e, expected) {
                return fail(format!("row orthogonality fails for rows {r}, {s}"));
            }
        }
    }
    // Column orthogonality: Σ_χ χ(j)·conj(χ(j')) = |C_G(g_j)|·[j = j'].
    for j in 0..k {
        for j2 in j..k {
            let mut acc = Cyclo::<C>::zero(e);
            for row in &table.characters {
                acc = acc.add(&row.values[j].mul(&row.values[j2].conj())?)?;
            }
            let expected = if j == j2 {
                (table.order / table.classes[j].size) as i64
            } else {
                0
            };
            if acc != Cyclo::integer(e, expected) {
                return fail(format!("column orthogonality fails for classes {j}, {j2}"));
            }
        }
    }
    Ok(())
}

/// Computes the exact character table of `group`, verifying before returning.
pub fn compute_character_table<C: Coeff>(group: &Group) -> Result<CharacterTable<C>, DixonError> {
    let classes = conjugacy_classes(group);
    let e = exponent(&classes);
    let powers = power_maps(group, &classes);
    let prime = choose_prime(group.order() as u64, e);
    let k = classes.count();
    let eigenvectors = split_common_eigenvectors(k, &prime, |i| {
        class_matrix(group, &classes, i).to_fp(&prime.ctx)
    })?;
    degrees_and_lift(
        &eigenvectors,
        &prime,
        &classes,
        &powers,
        group.order() as u64,
        group.spec().to_string(),
    )
}

fn table_memo() -> &'static Mutex<HashMap<String, Arc<CharacterTable<i64>>>> {
    static MEMO: OnceLock<Mutex<HashMap<String, Arc<CharacterTable<i64>>>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Character table of `group`, memoized process-wide by canonical spec.
pub fn character_table(group: &Group) -> Result<Arc<CharacterTable<i64>>, DixonError> {
    let key = group.spec().to_string();
    if let Some(hit) = table_memo().lock().unwrap().get(&key) {
        return Ok(Arc::clone(hit));
    }
    let table = Arc::new(compute_character_table::<i64>(group)?);
    table_memo()
        .lock()
        .unwrap()
        .entry(key)
        .or_insert_with(|| Arc::clone(&table));
    Ok(table)
}

/// Serializes with the fixed field order of the table JSON schema;
/// byte-stable across runs for a given spec.
pub fn table_to_json(table: &CharacterTable<i64>) -> String {
    serde_json::to_string(table).expect("table serialization cannot fail")
}

/// Parses and orthogonality-verifies an imported table.
pub fn table_from_json(json: &str) -> Result<CharacterTable<i64>, DixonError> {
    let table: CharacterTable<i64> = serde_json::from_str(json)
        .map_err(|e| DixonError::Verification(format!("table JSON parse error: {e}")))?;
    verify_table(&table)?;
    Ok(table)
}
