//! Brute-force counters used to cross-check the closed forms.
//!
//! Nothing here goes through [`crate::matrix`] or [`crate::counting`]: vectors
//! of `F_p^n` are integers in base `p`, subspaces are point-membership masks,
//! and spans are closed by repeated addition.

use crate::error::{Error, Result};
use crate::gf::is_prime;

/// The vector space `F_p^n` with at most 128 points.
#[derive(Debug, Clone)]
pub struct SmallSpace {
    p: u32,
    n: u32,
    size: usize,
    add: Vec<Vec<u8>>,
    scale: Vec<Vec<u8>>,
}

impl SmallSpace {
    pub fn new(p: u32, n: u32) -> Result<SmallSpace> {
        if !is_prime(p) {
            return Err(Error::ParameterOutOfRange(format!("oracle needs a prime field, got q={p}")));
        }
        let size = (p as u64).pow(n);
        if size > 128 {
            return Err(Error::ParameterOutOfRange(format!("oracle space {p}^{n} exceeds 128 points")));
        }
        let size = size as usize;
        let digits = |x: usize| -> Vec<u32> {
            let mut v = Vec::with_capacity(n as usize);
            let mut x = x as u32;
            for _ in 0..n {
                v.push(x % p);
                x /= p;
            }
            v
        };
        let pack = |d: &[u32]| -> u8 { d.iter().rev().fold(0u32, |a, &x| a * p + x) as u8 };
        let add = (0..size)
            .map(|a| {
                let da = digits(a);
                (0..size)
                    .map(|b| {
                        let db = digits(b);
                        let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                        pack(&s)
                    })
                    .collect()
            })
            .collect();
        let scale = (0..p)
            .map(|c| {
                (0..size)
                    .map(|a| {
                        let s: Vec<u32> = digits(a).iter().map(|x| (x * c) % p).collect();
                        pack(&s)
                    })
                    .collect()
            })
            .collect();
        Ok(SmallSpace { p, n, size, add, scale })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Coordinate `i` of vector `v`.
    pub fn coord(&self, v: usize, i: u32) -> u32 {
        (v as u32 / self.p.pow(i)) % self.p
    }

    /// The span of `span ∪ {v}`.
    pub fn extend(&self, span: u128, v: usize) -> u128 {
        let mut out = span;
        for c in 1..self.p as usize {
            let cv = self.scale[c][v] as usize;
            let mut s = span;
            while s != 0 {
                let x = s.trailing_zeros() as usize;
                s &= s - 1;
                out |= 1u128 << self.add[x][cv];
            }
        }
        out
    }

    /// All subspaces of dimension `d`, as membership masks, in increasing
    /// mask order.
    pub fn subspaces(&self, d: u32) -> Vec<u128> {
        let mut level: std::collections::BTreeSet<u128> = [1u128].into_iter().collect();
        for _ in 0..d {
            let mut next = std::collections::BTreeSet::new();
            for &s in &level {
                for v in 0..self.size {
                    if s >> v & 1 == 0 {
                        next.insert(self.extend(s, v));
                    }
                }
            }
            level = next;
        }
        level.into_iter().collect()
    }

    /// Dimension of a subspace given by its mask.
    pub fn dim_of(&self, mask: u128) -> u32 {
        let pts = mask.count_ones();
        let mut d = 0;
        while self.p.pow(d) < pts {
            d += 1;
        }
        d
    }

    /// Span of the first `k` unit vectors.
    pub fn coordinate_subspace(&self, k: u32) -> u128 {
        (0..k).fold(1u128, |s, i| self.extend(s, self.p.pow(i) as usize))
    }

    pub fn dimension(&self) -> u32 {
        self.n
    }
}

/// Number of `d`-dimensional subspaces of `F_p^n`, counted directly.
pub fn count_subspaces(n: u32, d: u32, p: u32) -> Result<u64> {
    Ok(SmallSpace::new(p, n)?.subspaces(d).len() as u64)
}

/// Number of `l`-dimensional `L` with `dim(L ∩ M) = k`, `M` the span of the
/// first `m` unit vectors.
pub fn count_intersecting_subspaces(k: u32, l: u32, m: u32, n: u32, p: u32) -> Result<u64> {
    let sp = SmallSpace::new(p, n)?;
    let fixed = sp.coordinate_subspace(m);
    let target = p.pow(k);
    Ok(sp
        .subspaces(l)
        .iter()
        .filter(|&&s| (s & fixed).count_ones() == target)
        .count() as u64)
}

/// Number of full-rank `m x n` matrices `M` with `rank(M N^T) = k` where
/// `N = [I_l 0; 0 0]`. Rows are chosen one by one among vectors outside the
/// current span, so every ordered basis is visited exactly once.
pub fn count_rank_k_products(k: u32, l: u32, m: u32, n: u32, p: u32) -> Result<u64> {
    if l > m || m > n {
        return Err(Error::ParameterOutOfRange(format!("need l <= m <= n, got l={l} m={m} n={n}")));
    }
    let sp = SmallSpace::new(p, n)?;
    let proj = SmallSpace::new(p, l)?;
    // M N^T has column j equal to column j of M for j < l and zero otherwise,
    // so its rank is the dimension of the span of the rows cut to l entries.
    let cut = |v: usize| (v as u32 % p.pow(l)) as usize;
    fn walk(
        sp: &SmallSpace,
        proj: &SmallSpace,
        cut: &dyn Fn(usize) -> usize,
        depth: u32,
        m: u32,
        span: u128,
        pspan: u128,
        k: u32,
    ) -> u64 {
        if depth == m {
            return (proj.dim_of(pspan) == k) as u64;
        }
        let mut total = 0;
        if depth + 1 == m {
            // Last row: the projected span grows iff the cut row falls outside it.
            let d = proj.dim_of(pspan);
            for v in 0..sp.size() {
                if span >> v & 1 == 0 {
                    let grows = pspan >> cut(v) & 1 == 0;
                    total += (d + grows as u32 == k) as u64;
                }
            }
            return total;
        }
        for v in 0..sp.size() {
            if span >> v & 1 == 1 {
                continue;
            }
            total += walk(sp, proj, cut, depth + 1, m, sp.extend(span, v), proj.extend(pspan, cut(v)), k);
        }
        total
    }
    Ok(walk(&sp, &proj, &cut, 0, m, 1, 1, k))
}
