//! Arithmetic, polynomials and linear algebra over a prime field F_q, q < 2^31.

use alloc::vec;
use alloc::vec::Vec;

use crate::descriptor::is_prime;

/// The prime field F_q. Elements are `u64` in `0..q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fq {
    q: u64,
}

impl Fq {
    /// `q` must be a prime below 2^31 so that products fit in a `u64`.
    pub fn new(q: u64) -> Self {
        debug_assert!(q < 1 << 31 && is_prime(q));
        Self { q }
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.q
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.q;
        base %= self.q;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.q != 0);
        self.pow(a, self.q - 2)
    }

    pub fn reduce(&self, a: u64) -> u64 {
        a % self.q
    }
}

/// Smallest prime `q = 1 (mod modulus)` with `q > floor` and `q < 2^31`.
pub fn prime_in_progression(modulus: u64, floor: u64) -> Option<u64> {
    let mut q = floor / modulus * modulus + 1;
    if q <= floor {
        q += modulus;
    }
    while q < 1 << 31 {
        if is_prime(q) {
            return Some(q);
        }
        q += modulus;
    }
    None
}

/// Dense polynomial, coefficients low degree first, no trailing zeros.
pub type Poly = Vec<u64>;

fn trim(p: &mut Poly) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

fn poly_sub(f: &Fq, a: &[u64], b: &[u64]) -> Poly {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        *o = f.sub(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0));
    }
    trim(&mut out);
    out
}

fn poly_rem(f: &Fq, a: &[u64], m: &[u64]) -> Poly {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = f.inv(m[dm]);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = f.mul(*r.last().unwrap(), lead_inv);
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(c, mi));
        }
        trim(&mut r);
    }
    r
}

fn poly_mulmod(f: &Fq, a: &[u64], b: &[u64], m: &[u64]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    poly_rem(f, &out, m)
}

fn poly_powmod(f: &Fq, base: &[u64], mut exp: u64, m: &[u64]) -> Poly {
    let mut acc = poly_rem(f, &[1], m);
    let mut b = poly_rem(f, base, m);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = poly_mulmod(f, &acc, &b, m);
        }
        b = poly_mulmod(f, &b, &b, m);
        exp >>= 1;
    }
    acc
}

fn poly_monic(f: &Fq, mut p: Poly) -> Poly {
    trim(&mut p);
    if let Some(&lead) = p.last() {
        let li = f.inv(lead);
        p.iter_mut().for_each(|c| *c = f.mul(*c, li));
    }
    p
}

fn poly_gcd(f: &Fq, a: &[u64], b: &[u64]) -> Poly {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = poly_rem(f, &x, &y);
        x = y;
        y = r;
    }
    poly_monic(f, x)
}

fn poly_div_exact(f: &Fq, a: &[u64], b: &[u64]) -> Poly {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = f.inv(b[db]);
    let mut quot = vec![0; a.len() - db];
    for k in (0..quot.len()).rev() {
        let c = f.mul(r[k + db], lead_inv);
        quot[k] = c;
        for (i, &bi) in b.iter().enumerate() {
            r[k + i] = f.sub(r[k + i], f.mul(c, bi));
        }
    }
    trim(&mut quot);
    quot
}

/// Distinct roots in F_q of `p`, ascending.
///
/// Isolates the product of distinct linear factors as `gcd(p, x^q - x)` and
/// splits it with the deterministic Cantor-Zassenhaus step
/// `gcd(g, (x + a)^((q-1)/2) - 1)` for `a = 0, 1, 2, ...`. Requires odd q.
pub fn roots(f: &Fq, p: &[u64]) -> Vec<u64> {
    let p = poly_monic(f, p.to_vec());
    if p.len() <= 1 {
        return Vec::new();
    }
    let xq = poly_powmod(f, &[0, 1], f.modulus(), &p);
    let linear = poly_gcd(f, &p, &poly_sub(f, &xq, &[0, 1]));
    let mut out = Vec::new();
    let mut stack = vec![linear];
    let half = (f.modulus() - 1) / 2;
    while let Some(g) = stack.pop() {
        match g.len() {
            0 | 1 => {}
            2 => out.push(f.neg(g[0])),
            _ => {
                let mut shift = 0u64;
                loop {
                    let t = poly_powmod(f, &[shift, 1], half, &g);
                    let h = poly_gcd(f, &g, &poly_sub(f, &t, &[1]));
                    if h.len() > 1 && h.len() < g.len() {
                        let rest = poly_monic(f, poly_div_exact(f, &g, &h));
                        stack.push(h);
                        stack.push(rest);
                        break;
                    }
                    shift += 1;
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Characteristic polynomial `det(xI - A)` of a square row-major matrix,
/// via reduction to upper Hessenberg form.
pub fn charpoly(f: &Fq, a: &[u64], n: usize) -> Poly {
    let mut h = a.to_vec();
    let at = |i: usize, j: usize| i * n + j;
    for k in 0..n.saturating_sub(2) {
        let Some(piv) = (k + 1..n).find(|&i| h[at(i, k)] != 0) else {
            continue;
        };
        if piv != k + 1 {
            for j in 0..n {
                h.swap(at(piv, j), at(k + 1, j));
            }
            for i in 0..n {
                h.swap(at(i, piv), at(i, k + 1));
            }
        }
        let pinv = f.inv(h[at(k + 1, k)]);
        for i in k + 2..n {
            let m = f.mul(h[at(i, k)], pinv);
            if m == 0 {
                continue;
            }
            for j in 0..n {
                h[at(i, j)] = f.sub(h[at(i, j)], f.mul(m, h[at(k + 1, j)]));
            }
            for r in 0..n {
                h[at(r, k + 1)] = f.add(h[at(r, k + 1)], f.mul(m, h[at(r, i)]));
            }
        }
    }
    // p_m(x) = (x - h_mm) p_{m-1} - sum_i h_im (prod_{j=i+1..m} h_{j,j-1}) p_{i-1}
    let mut polys: Vec<Poly> = vec![vec![1]];
    for m in 0..n {
        let prev = &polys[m];
        let mut next = vec![0; m + 2];
        for (i, &c) in prev.iter().enumerate() {
            next[i + 1] = f.add(next[i + 1], c);
            next[i] = f.sub(next[i], f.mul(h[at(m, m)], c));
        }
        let mut t = 1u64;
        for i in (0..m).rev() {
            t = f.mul(t, h[at(i + 1, i)]);
            let coef = f.mul(t, h[at(i, m)]);
            if coef != 0 {
                for (k, &c) in polys[i].iter().enumerate() {
                    next[k] = f.sub(next[k], f.mul(coef, c));
                }
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

/// Reduces `rows` (each of length `width`) to reduced row echelon form in
/// place, dropping zero rows. Returns the pivot column of each kept row.
pub fn rref(f: &Fq, rows: &mut Vec<Vec<u64>>, width: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(rows[r][col]);
        rows[r].iter_mut().for_each(|x| *x = f.mul(*x, inv));
        for i in 0..rows.len() {
            if i != r && rows[i][col] != 0 {
                let m = rows[i][col];
                for j in col..width {
                    let v = f.mul(m, rows[r][j]);
                    rows[i][j] = f.sub(rows[i][j], v);
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of the null space of the row-major `n x n` matrix `a`.
pub fn kernel(f: &Fq, a: &[u64], n: usize) -> Vec<Vec<u64>> {
    let mut rows: Vec<Vec<u64>> = a.chunks(n).map(<[u64]>::to_vec).collect();
    let pivots = rref(f, &mut rows, n);
    let mut is_pivot = vec![false; n];
    pivots.iter().for_each(|&c| is_pivot[c] = true);
    let mut basis = Vec::new();
    for free in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0; n];
        v[free] = 1;
        for (row, &pc) in rows.iter().zip(&pivots) {
            v[pc] = f.neg(row[free]);
        }
        basis.push(v);
    }
    basis
}
