//! Small finite fields F_q (q = p^k) for the affine and matrix-group
//! constructions. Elements are indexed 0..q with 0 the additive and 1 the
//! multiplicative identity; index digits in base p are the coefficients of
//! the residue polynomial.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
}

/// Returns (p, k) with q = p^k, or an error.
pub fn prime_power(q: u64) -> Result<(u64, u32), FieldError> {
    if q < 2 {
        return Err(FieldError::NotPrimePower(q));
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut rest = q;
            let mut k = 0;
            while rest % p == 0 {
                rest /= p;
                k += 1;
            }
            return if rest == 1 { Ok((p, k)) } else { Err(FieldError::NotPrimePower(q)) };
        }
        p += 1;
    }
    Ok((q, 1))
}

pub fn is_prime(n: u64) -> bool {
    matches!(prime_power(n), Ok((_, 1)))
}

/// F_q with explicit polynomial arithmetic modulo a fixed irreducible.
#[derive(Debug, Clone)]
pub struct GaloisField {
    pub p: u64,
    pub k: u32,
    pub q: u64,
    /// Monic irreducible of degree k; low-degree coefficients first, leading 1
    /// included. Trivial (`[0, 1]`-like) for k = 1.
    irreducible: Vec<u64>,
}

impl GaloisField {
    pub fn new(q: u64) -> Result<Self, FieldError> {
        let (p, k) = prime_power(q)?;
        let irreducible = if k == 1 { vec![0, 1] } else { find_irreducible(p, k) };
        Ok(GaloisField { p, k, q, irreducible })
    }

    fn decode(&self, mut a: u64) -> Vec<u64> {
        let mut digits = vec![0u64; self.k as usize];
        for d in digits.iter_mut() {
            *d = a % self.p;
            a /= self.p;
        }
        digits
    }

    fn encode(&self, digits: &[u64]) -> u64 {
        digits.iter().rev().fold(0u64, |acc, &d| acc * self.p + d)
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let (da, db) = (self.decode(a), self.decode(b));
        let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.encode(&sum)
    }

    pub fn neg(&self, a: u64) -> u64 {
        let da = self.decode(a);
        let n: Vec<u64> = da.iter().map(|&x| (self.p - x) % self.p).collect();
        self.encode(&n)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let (da, db) = (self.decode(a), self.decode(b));
        let mut prod = vec![0u64; 2 * self.k as usize];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        poly_rem(&mut prod, &self.irreducible, self.p);
        prod.truncate(self.k as usize);
        self.encode(&prod)
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert_ne!(a, 0);
        self.pow(a, self.q - 2)
    }

    /// A fixed generator of the multiplicative group: the smallest index of
    /// multiplicative order q − 1.
    pub fn generator(&self) -> u64 {
        let ord = self.q - 1;
        let primes = prime_factors(ord);
        'cand: for g in 1..self.q {
            for &l in &primes {
                if self.pow(g, ord / l) == 1 {
                    continue 'cand;
                }
            }
            return g;
        }
        unreachable!("multiplicative group of a finite field is cyclic");
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// In-place remainder of `poly` by the monic `modulus`, coefficients mod p.
fn poly_rem(poly: &mut [u64], modulus: &[u64], p: u64) {
    let dd = modulus.len() - 1;
    for i in (dd..poly.len()).rev() {
        let c = poly[i];
        if c == 0 {
            continue;
        }
        poly[i] = 0;
        for (t, &mc) in modulus.iter().enumerate().take(dd) {
            if mc != 0 {
                let sub = (c * mc) % p;
                poly[i - dd + t] = (poly[i - dd + t] + p - sub) % p;
            }
        }
    }
}

fn poly_mul_mod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(&mut prod, modulus, p);
    prod.truncate(modulus.len() - 1);
    prod
}

fn poly_pow_mod(base: &[u64], mut exp: u64, modulus: &[u64], p: u64) -> Vec<u64> {
    let deg = modulus.len() - 1;
    let mut acc = vec![0u64; deg];
    acc[0] = 1;
    let mut b = base.to_vec();
    b.resize(deg.max(b.len()), 0);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = poly_mul_mod(&acc, &b, modulus, p);
        }
        b = poly_mul_mod(&b, &b, modulus, p);
        exp >>= 1;
    }
    acc
}

fn poly_is_zero(a: &[u64]) -> bool {
    a.iter().all(|&c| c == 0)
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // Fermat; p prime and a nonzero mod p.
    let mut acc = 1u64;
    let mut base = a % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn poly_gcd_is_one(a: &[u64], b: &[u64], p: u64) -> bool {
    let trim = |v: &[u64]| {
        let mut v = v.to_vec();
        while v.len() > 1 && *v.last().unwrap() == 0 {
            v.pop();
        }
        v
    };
    let mut x = trim(a);
    let mut y = trim(b);
    while !poly_is_zero(&y) {
        // Make y monic, then reduce x mod y.
        let lead = *y.last().unwrap();
        if lead != 1 {
            let linv = mod_inv(lead, p);
            for c in y.iter_mut() {
                *c = (*c * linv) % p;
            }
        }
        let mut r = x.clone();
        poly_rem(&mut r, &y, p);
        x = y;
        y = trim(&r);
    }
    x.len() == 1 && x[0] != 0
}

/// Smallest (in base-p counter order) monic irreducible of degree k over F_p.
fn find_irreducible(p: u64, k: u32) -> Vec<u64> {
    let deg = k as usize;
    let count = p.pow(k);
    let prime_divs = prime_factors(k as u64);
    for low in 0..count {
        let mut f = vec![0u64; deg + 1];
        let mut rest = low;
        for c in f.iter_mut().take(deg) {
            *c = rest % p;
            rest /= p;
        }
        f[deg] = 1;
        if f[0] == 0 {
            continue; // divisible by x
        }
        // f irreducible iff x^{p^k} = x mod f and, for each prime l | k,
        // gcd(x^{p^{k/l}} - x, f) = 1.
        let x = vec![0u64, 1];
        let frob = |j: u32| {
            let mut t = x.clone();
            for _ in 0..j {
                t = poly_pow_mod(&t, p, &f, p);
            }
            t
        };
        let xa = frob(k);
        let mut diff = xa.clone();
        diff.resize(deg.max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        if !poly_is_zero(&diff) {
            continue;
        }
        let mut ok = true;
        for &l in &prime_divs {
            let xb = frob(k / l as u32);
            let mut d = xb.clone();
            d.resize(deg.max(2), 0);
            d[1] = (d[1] + p - 1) % p;
            if !poly_gcd_is_one(&d, &f, p) {
                ok = false;
                break;
            }
        }
        if ok {
            return f;
        }
    }
    unreachable!("an irreducible polynomial of degree {k} exists over F_{p}");
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(9), Ok((3, 2)));
        assert_eq!(prime_power(32), Ok((2, 5)));
        assert_eq!(prime_power(7), Ok((7, 1)));
        assert!(prime_power(12).is_err());
        assert!(prime_power(1).is_err());
        assert!(prime_power(0).is_err());
    }

    fn check_field_axioms(q: u64) {
        let f = GaloisField::new(q).unwrap();
        for a in 0..q {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
            for b in 0..q {
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in 0..q {
                    assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn field_axioms_small_orders() {
        for q in [2, 3, 4, 5, 8, 9] {
            check_field_axioms(q);
        }
    }

    #[test]
    fn generator_has_full_order() {
        for q in [4u64, 5, 7, 8, 9, 16, 25, 27] {
            let f = GaloisField::new(q).unwrap();
            let g = f.generator();
            let mut seen = std::collections::HashSet::new();
            let mut x = 1u64;
            for _ in 0..(q - 1) {
                x = f.mul(x, g);
                seen.insert(x);
            }
            assert_eq!(seen.len() as u64, q - 1, "q={q}");
            assert_eq!(x, 1);
        }
    }
}
