//! Named group constructors behind the group-spec grammar: classical
//! families, extraspecial groups via iterated central products, affine
//! Frobenius groups, and the order-72 Frobenius group with quaternion
//! complement.

use super::{Group, GroupError};
use crate::finfield::{is_prime, prime_power, GaloisField};
use crate::groupspec::{ExtraspecialKind, GroupSpec};
use crate::perm::Permutation;

/// Builds the group described by `spec`, subject to the order bound.
pub fn build_group(spec: &GroupSpec, bound: usize) -> Result<Group, GroupError> {
    let canonical = spec.to_string();
    match spec {
        GroupSpec::Cyclic(n) => {
            check_order(*n as usize, bound)?;
            if *n == 0 {
                return Err(GroupError::BadParameter("cyclic(0) is not a group".into()));
            }
            Ok(Group::abelian_backend(vec![*n], canonical))
        }
        GroupSpec::Abelian(factors) => {
            if factors.is_empty() || factors.contains(&0) {
                return Err(GroupError::BadParameter(
                    "abelian(...) needs positive cycle orders".into(),
                ));
            }
            let order: u64 = factors.iter().product();
            check_order(order as usize, bound)?;
            Ok(Group::abelian_backend(factors.clone(), canonical))
        }
        GroupSpec::Dihedral(order) => dihedral(*order, bound, canonical),
        GroupSpec::Dicyclic(order) => dicyclic(*order, bound, canonical),
        GroupSpec::Symmetric(n) => symmetric(*n, bound, canonical),
        GroupSpec::Alternating(n) => alternating(*n, bound, canonical),
        GroupSpec::Extraspecial { p, order, kind } => {
            extraspecial(*p, *order, *kind, bound, canonical)
        }
        GroupSpec::FrobeniusAffine { q, d } => frobenius_affine(*q, *d, bound, canonical),
        GroupSpec::Frobenius72 => frobenius72(bound, canonical),
        GroupSpec::GeneralLinear2(q) => linear2(*q, false, bound, canonical),
        GroupSpec::SpecialLinear2(q) => linear2(*q, true, bound, canonical),
        GroupSpec::Product(a, b) => {
            let left = build_group(a, bound)?;
            let right = build_group(b, bound)?;
            check_order(left.order().saturating_mul(right.order()), bound)?;
            Ok(Group::product(left, right, canonical))
        }
        GroupSpec::Perm { degree, generators } => {
            Group::from_generators(*degree, generators.clone(), bound, canonical)
        }
    }
}

fn check_order(order: usize, bound: usize) -> Result<(), GroupError> {
    if order > bound {
        return Err(GroupError::OrderBound { at_least: order, bound });
    }
    Ok(())
}

/// Dihedral group of the given ORDER 2m (not the polygon parameter).
fn dihedral(order: u64, bound: usize, spec: String) -> Result<Group, GroupError> {
    if order < 2 || order % 2 != 0 {
        return Err(GroupError::BadParameter(format!(
            "dihedral takes an even order ≥ 2, got {order}"
        )));
    }
    check_order(order as usize, bound)?;
    let m = (order / 2) as usize;
    let gens = match m {
        1 => vec![Permutation::from_images(vec![1, 0]).unwrap()],
        2 => vec![
            Permutation::from_images(vec![1, 0, 2, 3]).unwrap(),
            Permutation::from_images(vec![0, 1, 3, 2]).unwrap(),
        ],
        _ => {
            let rotation: Vec<u32> = (0..m).map(|i| ((i + 1) % m) as u32).collect();
            let reflection: Vec<u32> = (0..m).map(|i| ((m - i) % m) as u32).collect();
            vec![
                Permutation::from_images(rotation).unwrap(),
                Permutation::from_images(reflection).unwrap(),
            ]
        }
    };
    let degree = gens[0].degree();
    let group = Group::from_generators(degree, gens, bound, spec)?;
    debug_assert_eq!(group.order(), order as usize);
    Ok(group)
}

/// Dicyclic group of the given ORDER 4m (m ≥ 2); dicyclic(8) is the
/// quaternion group. Elements a^i b^j in normal form, indexed j·2m + i.
fn dicyclic(order: u64, bound: usize, spec: String) -> Result<Group, GroupError> {
    if order < 8 || order % 4 != 0 {
        return Err(GroupError::BadParameter(format!(
            "dicyclic takes an order 4m with m ≥ 2, got {order}"
        )));
    }
    check_order(order as usize, bound)?;
    let m = (order / 4) as usize;
    let two_m = 2 * m;
    let n = order as usize;
    let enc = |i: usize, j: usize| j * two_m + i;
    let mut table = vec![0u32; n * n];
    for i in 0..two_m {
        for j in 0..2 {
            for i2 in 0..two_m {
                for j2 in 0..2 {
                    let (ri, rj) = if j == 0 {
                        ((i + i2) % two_m, j2)
                    } else if j2 == 0 {
                        ((i + two_m - i2) % two_m, 1)
                    } else {
                        ((i + two_m - i2 + m) % two_m, 0)
                    };
                    table[enc(i, j) * n + enc(i2, j2)] = enc(ri, rj) as u32;
                }
            }
        }
    }
    Ok(Group::from_table(table, n, spec))
}

fn symmetric(n: u32, bound: usize, spec: String) -> Result<Group, GroupError> {
    let order = factorial_checked(n).ok_or(GroupError::OrderBound {
        at_least: usize::MAX,
        bound,
    })?;
    check_order(order, bound)?;
    let degree = n as usize;
    let mut gens = Vec::new();
    if n >= 2 {
        let mut tr: Vec<u32> = (0..degree as u32).collect();
        tr.swap(0, 1);
        gens.push(Permutation::from_images(tr).unwrap());
    }
    if n >= 3 {
        gens.push(cycle_perm(degree, 0, degree));
    }
    let group = Group::from_generators(degree, gens, bound, spec)?;
    debug_assert_eq!(group.order(), order);
    Ok(group)
}

fn alternating(n: u32, bound: usize, spec: String) -> Result<Group, GroupError> {
    let order = factorial_checked(n)
        .map(|f| if n >= 2 { f / 2 } else { f })
        .ok_or(GroupError::OrderBound { at_least: usize::MAX, bound })?;
    check_order(order, bound)?;
    let degree = n as usize;
    let mut gens = Vec::new();
    if n >= 3 {
        gens.push(cycle_perm(degree, 0, 3));
    }
    if n >= 4 {
        if n % 2 == 1 {
            gens.push(cycle_perm(degree, 0, degree));
        } else {
            gens.push(cycle_perm(degree, 1, degree - 1));
        }
    }
    let group = Group::from_generators(degree, gens, bound, spec)?;
    debug_assert_eq!(group.order(), order);
    Ok(group)
}

/// Cycle on `len` consecutive points starting at `start`, inside degree `degree`.
fn cycle_perm(degree: usize, start: usize, len: usize) -> Permutation {
    let mut images: Vec<u32> = (0..degree as u32).collect();
    for i in 0..len {
        images[start + i] = (start + (i + 1) % len) as u32;
    }
    Permutation::from_images(images).unwrap()
}

fn factorial_checked(n: u32) -> Option<usize> {
    let mut acc: usize = 1;
    for i in 2..=n as usize {
        acc = acc.checked_mul(i)?;
    }
    Some(acc)
}

/// The exponent-p group of order p³ for odd p (Heisenberg normal form
/// (a,b,c) with (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')); for p = 2 this
/// yields the dihedral group of order 8.
fn heisenberg(p: u64) -> (Group, usize) {
    let p = p as usize;
    let n = p * p * p;
    let enc = |a: usize, b: usize, c: usize| (a * p + b) * p + c;
    let mut table = vec![0u32; n * n];
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                let x = enc(a, b, c);
                for a2 in 0..p {
                    for b2 in 0..p {
                        for c2 in 0..p {
                            let y = enc(a2, b2, c2);
                            let r = enc((a + a2) % p, (b + b2) % p, (c + c2 + a * b2) % p);
                            table[x * n + y] = r as u32;
                        }
                    }
                }
            }
        }
    }
    let z = enc(0, 0, 1);
    (Group::from_table(table, n, "<heisenberg>".into()), z)
}

/// The exponent-p² group of order p³ for odd p: C_{p²} ⋊ C_p in the normal
/// form (a,b) with (a,b)(a',b') = (a + a'(1+pb) mod p², b+b' mod p).
fn modular_p3(p: u64) -> (Group, usize) {
    let p = p as usize;
    let p2 = p * p;
    let n = p2 * p;
    let enc = |a: usize, b: usize| a * p + b;
    let mut table = vec![0u32; n * n];
    for a in 0..p2 {
        for b in 0..p {
            let x = enc(a, b);
            for a2 in 0..p2 {
                for b2 in 0..p {
                    let y = enc(a2, b2);
                    let r = enc((a + a2 * (1 + p * b)) % p2, (b + b2) % p);
                    table[x * n + y] = r as u32;
                }
            }
        }
    }
    let z = enc(p, 0);
    (Group::from_table(table, n, "<modular-p3>".into()), z)
}

/// Quaternion group in dicyclic normal form; the designated central
/// involution is a².
fn quaternion8() -> (Group, usize) {
    let g = dicyclic(8, 8, "<q8>".into()).expect("Q8 fits any bound ≥ 8");
    (g, 2)
}

/// Central product of two groups along designated central subgroups of
/// order p: (G1 × G2)/⟨(z1, z2⁻¹)⟩. Returns the quotient and the image of
/// z1 as the new designated central generator.
fn central_product(g1: &Group, z1: usize, g2: &Group, z2: usize, p: usize) -> (Group, usize) {
    let (n1, n2) = (g1.order(), g2.order());
    let pairs = n1 * n2;
    let n = pairs / p;
    let mut z1_pow = vec![0usize; p];
    let mut z2_inv_pow = vec![0usize; p];
    for t in 1..p {
        z1_pow[t] = g1.multiply(z1_pow[t - 1], z1);
        z2_inv_pow[t] = g2.multiply(z2_inv_pow[t - 1], g2.inverse(z2));
    }
    const UNASSIGNED: u32 = u32::MAX;
    let mut coset_of = vec![UNASSIGNED; pairs];
    let mut reps: Vec<(usize, usize)> = Vec::with_capacity(n);
    for a in 0..n1 {
        for b in 0..n2 {
            if coset_of[a * n2 + b] != UNASSIGNED {
                continue;
            }
            let id = reps.len() as u32;
            reps.push((a, b));
            for t in 0..p {
                let a2 = g1.multiply(a, z1_pow[t]);
                let b2 = g2.multiply(b, z2_inv_pow[t]);
                debug_assert_eq!(coset_of[a2 * n2 + b2], UNASSIGNED);
                coset_of[a2 * n2 + b2] = id;
            }
        }
    }
    debug_assert_eq!(reps.len(), n);
    let mut table = vec![0u32; n * n];
    for (i, &(a1, b1)) in reps.iter().enumerate() {
        for (j, &(a2, b2)) in reps.iter().enumerate() {
            let prod = g1.multiply(a1, a2) * n2 + g2.multiply(b1, b2);
            table[i * n + j] = coset_of[prod];
        }
    }
    let new_z = coset_of[z1 * n2] as usize;
    (Group::from_table(table, n, "<central-product>".into()), new_z)
}

fn extraspecial(
    p: u64,
    order: u64,
    kind: ExtraspecialKind,
    bound: usize,
    spec: String,
) -> Result<Group, GroupError> {
    if !is_prime(p) {
        return Err(GroupError::BadParameter(format!(
            "extraspecial needs a prime p, got {p}"
        )));
    }
    // order = p^(2r+1) with r ≥ 1
    let mut r = 0u32;
    let mut rest = order;
    while rest % (p * p) == 0 {
        rest /= p * p;
        r += 1;
    }
    if rest != p || r == 0 {
        return Err(GroupError::BadParameter(format!(
            "extraspecial order must be p^(2r+1) with r ≥ 1, got {order}"
        )));
    }
    check_order(order as usize, bound)?;
    match (p == 2, kind) {
        (true, ExtraspecialKind::Plus | ExtraspecialKind::Minus) => {}
        (false, ExtraspecialKind::ExponentP | ExtraspecialKind::ExponentPSquared) => {}
        _ => {
            return Err(GroupError::BadParameter(format!(
                "extraspecial type {} does not apply to p = {p}",
                kind.token(p)
            )))
        }
    }
    // Iterated central product of r groups of order p³, identifying centers.
    let first = match kind {
        ExtraspecialKind::Plus | ExtraspecialKind::ExponentP => heisenberg(p),
        ExtraspecialKind::Minus => quaternion8(),
        ExtraspecialKind::ExponentPSquared => modular_p3(p),
    };
    let (mut acc, mut z) = first;
    for _ in 1..r {
        let (h, hz) = heisenberg(p);
        let next = central_product(&acc, z, &h, hz, p as usize);
        acc = next.0;
        z = next.1;
    }
    debug_assert_eq!(acc.order() as u64, order);
    // Re-wrap so the final group carries the official spec string.
    let n = acc.order();
    let mut table = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = acc.multiply(a, b) as u32;
        }
    }
    Ok(Group::from_table(table, n, spec))
}

/// F_q⁺ ⋊ H acting on the q affine points, where H is the index-d subgroup
/// of the multiplicative group. Order q(q−1)/d.
fn frobenius_affine(q: u64, d: u64, bound: usize, spec: String) -> Result<Group, GroupError> {
    prime_power(q).map_err(|e| GroupError::BadParameter(e.to_string()))?;
    if d == 0 || (q - 1) % d != 0 {
        return Err(GroupError::BadParameter(format!(
            "frobenius_affine index {d} must divide q - 1 = {}",
            q - 1
        )));
    }
    let order = (q * ((q - 1) / d)) as usize;
    check_order(order, bound)?;
    let field = GaloisField::new(q).map_err(|e| GroupError::BadParameter(e.to_string()))?;
    let degree = q as usize;
    let translation: Vec<u32> = (0..q).map(|x| field.add(x, 1) as u32).collect();
    let scale = field.pow(field.generator(), d);
    let scaling: Vec<u32> = (0..q).map(|x| field.mul(scale, x) as u32).collect();
    let gens = vec![
        Permutation::from_images(translation).unwrap(),
        Permutation::from_images(scaling).unwrap(),
    ];
    let group = Group::from_generators(degree, gens, bound, spec)?;
    debug_assert_eq!(group.order(), order);
    Ok(group)
}

/// F₃² ⋊ Q₈ on 9 points, with the quaternion group acting fixed-point-freely
/// as ⟨[[0,−1],[1,0]], [[1,1],[1,−1]]⟩ ≤ SL(2,3).
fn frobenius72(bound: usize, spec: String) -> Result<Group, GroupError> {
    check_order(72, bound)?;
    let enc = |x: u64, y: u64| (x * 3 + y) as usize;
    let mat_perm = |m: [[u64; 2]; 2]| {
        let mut images = vec![0u32; 9];
        for x in 0..3 {
            for y in 0..3 {
                let nx = (m[0][0] * x + m[0][1] * y) % 3;
                let ny = (m[1][0] * x + m[1][1] * y) % 3;
                images[enc(x, y)] = enc(nx, ny) as u32;
            }
        }
        Permutation::from_images(images).unwrap()
    };
    let mut t1 = vec![0u32; 9];
    let mut t2 = vec![0u32; 9];
    for x in 0..3 {
        for y in 0..3 {
            t1[enc(x, y)] = enc((x + 1) % 3, y) as u32;
            t2[enc(x, y)] = enc(x, (y + 1) % 3) as u32;
        }
    }
    let gens = vec![
        Permutation::from_images(t1).unwrap(),
        Permutation::from_images(t2).unwrap(),
        mat_perm([[0, 2], [1, 0]]),
        mat_perm([[1, 1], [1, 2]]),
    ];
    let group = Group::from_generators(9, gens, bound, spec)?;
    debug_assert_eq!(group.order(), 72);
    Ok(group)
}

/// GL(2,q) or SL(2,q) acting on the q² − 1 nonzero vectors of F_q².
fn linear2(q: u64, special: bool, bound: usize, spec: String) -> Result<Group, GroupError> {
    if !(2..=5).contains(&q) {
        return Err(GroupError::BadParameter(format!(
            "gl/sl are supported for q in 2..=5, got {q}"
        )));
    }
    let field = GaloisField::new(q).map_err(|e| GroupError::BadParameter(e.to_string()))?;
    // Point indexing: nonzero vectors (x, y) in lexicographic order.
    let mut point_of = vec![usize::MAX; (q * q) as usize];
    let mut points = Vec::new();
    for x in 0..q {
        for y in 0..q {
            if x == 0 && y == 0 {
                continue;
            }
            point_of[(x * q + y) as usize] = points.len();
            points.push((x, y));
        }
    }
    let degree = points.len();
    let mut elements = Vec::new();
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                for d in 0..q {
                    let det = field.add(field.mul(a, d), field.neg(field.mul(b, c)));
                    let keep = if special { det == 1 } else { det != 0 };
                    if !keep {
                        continue;
                    }
                    let mut images = vec![0u32; degree];
                    for (i, &(x, y)) in points.iter().enumerate() {
                        let nx = field.add(field.mul(a, x), field.mul(b, y));
                        let ny = field.add(field.mul(c, x), field.mul(d, y));
                        images[i] = point_of[(nx * q + ny) as usize] as u32;
                    }
                    elements.push(Permutation::from_images(images).unwrap());
                }
            }
        }
    }
    check_order(elements.len(), bound)?;
    Ok(Group::from_permutation_set(elements, spec))
}
