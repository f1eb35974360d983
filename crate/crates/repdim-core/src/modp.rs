//! Arithmetic and dense linear algebra over the prime field F_p, for the
//! class-matrix eigenvector computation. Primes here stay far below 2^32,
//! so products are taken through u128 without any reduction tricks.

/// Modular arithmetic helpers for a fixed odd prime `p < 2^32`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FpCtx {
    pub p: u64,
}

impl FpCtx {
    pub fn new(p: u64) -> Self {
        debug_assert!(p >= 2 && p < (1 << 32));
        FpCtx { p }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        base %= self.p;
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

    /// Inverse of a nonzero residue via Fermat.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0);
        self.pow(a, self.p - 2)
    }

    /// Table of inverses for all nonzero residues; entry 0 is unused.
    pub fn inverse_table(&self) -> Vec<u64> {
        let p = self.p as usize;
        let mut table = vec![0u64; p];
        if p > 1 {
            table[1] = 1;
            for a in 2..p {
                // p mod a = p − (p/a)·a, so inv(a) = −(p/a)·inv(p mod a).
                let q = self.p / a as u64;
                let r = self.p % a as u64;
                table[a] = self.mul(self.p - q, table[r as usize]);
            }
        }
        table
    }

    /// The multiplicative order of `a` divides `bound`; returns the exact order.
    pub fn element_order(&self, a: u64, bound: u64) -> u64 {
        debug_assert_eq!(self.pow(a, bound), 1);
        let mut order = bound;
        let mut rest = bound;
        let mut q = 2;
        while q * q <= rest {
            if rest % q == 0 {
                while rest % q == 0 {
                    rest /= q;
                }
                while order % q == 0 && self.pow(a, order / q) == 1 {
                    order /= q;
                }
            }
            q += 1;
        }
        if rest > 1 {
            while order % rest == 0 && self.pow(a, order / rest) == 1 {
                order /= rest;
            }
        }
        order
    }
}

/// Dense row-major matrix over F_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl FpMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        FpMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v;
    }

    /// Matrix–vector product (vector as column).
    pub fn apply(&self, ctx: &FpCtx, v: &[u64]) -> Vec<u64> {
        debug_assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = 0u64;
                for c in 0..self.cols {
                    let m = self.at(r, c);
                    if m != 0 && v[c] != 0 {
                        acc = ctx.add(acc, ctx.mul(m, v[c]));
                    }
                }
                acc
            })
            .collect()
    }

    /// Basis of the right nullspace, in reduced echelon form. Deterministic:
    /// one basis vector per free column, in ascending column order, with a 1
    /// at the free column.
    pub fn nullspace(&self, ctx: &FpCtx) -> Vec<Vec<u64>> {
        let mut m = self.clone();
        let mut pivot_cols = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            let Some(pr) = (row..m.rows).find(|&r| m.at(r, col) != 0) else {
                continue;
            };
            if pr != row {
                for c in 0..m.cols {
                    let tmp = m.at(row, c);
                    m.set(row, c, m.at(pr, c));
                    m.set(pr, c, tmp);
                }
            }
            let inv = ctx.inv(m.at(row, col));
            for c in col..m.cols {
                m.set(row, c, ctx.mul(m.at(row, c), inv));
            }
            for r in 0..m.rows {
                if r != row && m.at(r, col) != 0 {
                    let f = m.at(r, col);
                    for c in col..m.cols {
                        let v = ctx.sub(m.at(r, c), ctx.mul(f, m.at(row, c)));
                        m.set(r, c, v);
                    }
                }
            }
            pivot_cols.push(col);
            row += 1;
            if row == m.rows {
                break;
            }
        }
        let mut basis = Vec::new();
        let mut is_pivot = vec![false; m.cols];
        for &c in &pivot_cols {
            is_pivot[c] = true;
        }
        for free in 0..m.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![0u64; m.cols];
            v[free] = 1;
            for (r, &pc) in pivot_cols.iter().enumerate() {
                let coeff = m.at(r, free);
                if coeff != 0 {
                    v[pc] = ctx.sub(0, coeff);
                }
            }
            basis.push(v);
        }
        basis
    }
}
