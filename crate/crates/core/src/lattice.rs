//! Integer lattices: echelon bases, kernels, membership and Smith normal form.
//!
//! Vectors are rows of `i128`; every arithmetic step is overflow-checked.

use crate::error::{Error, Result};

pub type Vector = Vec<i128>;
pub type Matrix = Vec<Vector>;

fn mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

fn add(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b).ok_or(Error::Overflow)
}

/// `(g, x, y)` with `a x + b y = g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// `rows[i] <- a rows[i] + b rows[j]`, `rows[j] <- c rows[i] + d rows[j]` (unimodular).
fn combine(rows: &mut [Vector], i: usize, j: usize, a: i128, b: i128, c: i128, d: i128) -> Result<()> {
    for k in 0..rows[i].len() {
        let (x, y) = (rows[i][k], rows[j][k]);
        rows[i][k] = add(mul(a, x)?, mul(b, y)?)?;
        rows[j][k] = add(mul(c, x)?, mul(d, y)?)?;
    }
    Ok(())
}

fn axpy(rows: &mut [Vector], target: usize, src: usize, f: i128) -> Result<()> {
    if f == 0 {
        return Ok(());
    }
    for k in 0..rows[target].len() {
        rows[target][k] = add(rows[target][k], mul(-f, rows[src][k])?)?;
    }
    Ok(())
}

/// Nearest integer to `a / b`.
fn round_div(a: i128, b: i128) -> i128 {
    let q = a.div_euclid(b);
    let r = a.rem_euclid(b);
    if 2 * r > b.abs() {
        q + b.signum()
    } else {
        q
    }
}

fn row_size(v: &[i128]) -> u128 {
    v.iter().fold(0u128, |acc, x| acc.saturating_add(x.unsigned_abs()))
}

/// Row-echelon reduction of `rows` by unimodular row operations, looking only
/// at the first `width` columns. Returns the pivot columns; rows past the
/// pivots are zero in those columns. Pivots are positive and entries above
/// a pivot are reduced into `[0, pivot)`.
fn echelon(rows: &mut Vec<Vector>, width: usize) -> Result<Vec<usize>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        if r >= rows.len() {
            break;
        }
        // Euclid on the column with the smallest pivot; this keeps entries
        // far smaller than Bezout combinations do
        loop {
            let best = (r..rows.len())
                .filter(|&i| rows[i][col] != 0)
                .min_by_key(|&i| (rows[i][col].unsigned_abs(), row_size(&rows[i])));
            let Some(best) = best else { break };
            rows.swap(r, best);
            let p = rows[r][col];
            let mut done = true;
            for i in r + 1..rows.len() {
                let x = rows[i][col];
                if x != 0 {
                    axpy(rows, i, r, round_div(x, p))?;
                    done &= rows[i][col] == 0;
                }
            }
            if done {
                break;
            }
        }
        if rows[r][col] == 0 {
            continue;
        }
        if rows[r][col] < 0 {
            for v in rows[r].iter_mut() {
                *v = -*v;
            }
        }
        let p = rows[r][col];
        for i in 0..r {
            let f = rows[i][col].div_euclid(p);
            axpy(rows, i, r, f)?;
        }
        pivots.push(col);
        r += 1;
    }
    Ok(pivots)
}

/// A sublattice of `Z^dim` with a Hermite-style basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn span(dim: usize, gens: impl IntoIterator<Item = Vector>) -> Result<Self> {
        let mut rows: Vec<Vector> = gens.into_iter().filter(|v| v.iter().any(|&x| x != 0)).collect();
        debug_assert!(rows.iter().all(|v| v.len() == dim));
        let pivots = echelon(&mut rows, dim)?;
        rows.truncate(pivots.len());
        Ok(Lattice { dim, basis: rows, pivots })
    }

    pub fn full(dim: usize) -> Self {
        let basis = (0..dim).map(|i| unit(dim, i)).collect();
        Lattice { dim, basis, pivots: (0..dim).collect() }
    }

    pub fn zero(dim: usize) -> Self {
        Lattice { dim, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// Coordinates of `v` in the basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[i128]) -> Result<Option<Vector>> {
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.basis.len());
        for (b, &col) in self.basis.iter().zip(&self.pivots) {
            // entries left of the pivot must already vanish
            if rest[..col].iter().any(|&x| x != 0) {
                return Ok(None);
            }
            let p = b[col];
            if rest[col] % p != 0 {
                return Ok(None);
            }
            let c = rest[col] / p;
            for k in 0..self.dim {
                rest[k] = add(rest[k], mul(-c, b[k])?)?;
            }
            coords.push(c);
        }
        Ok(rest.iter().all(|&x| x == 0).then_some(coords))
    }

    pub fn contains(&self, v: &[i128]) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }

    pub fn contains_lattice(&self, other: &Lattice) -> Result<bool> {
        for b in &other.basis {
            if !self.contains(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Lattice) -> Result<Lattice> {
        Lattice::span(self.dim, self.basis.iter().chain(&other.basis).cloned())
    }

    /// `{x ∈ self : f(x) ∈ target}` where `f` is given by an integer matrix
    /// (`f(x) = M x`, `M` with `target.dim()` rows).
    pub fn preimage(&self, m: &Matrix, target: &Lattice) -> Result<Lattice> {
        // solve M (Σ c_i b_i) - Σ d_j r_j = 0 for integer (c, d)
        let images: Vec<Vector> = self.basis.iter().map(|b| apply(m, b)).collect::<Result<_>>()?;
        let mut cols: Vec<Vector> = images;
        for r in &target.basis {
            cols.push(r.iter().map(|&x| -x).collect());
        }
        let ker = kernel_of_columns(&cols, target.dim)?;
        let k = self.basis.len();
        let gens = ker.into_iter().map(|c| {
            let mut v = vec![0i128; self.dim];
            for (i, b) in self.basis.iter().enumerate().take(k) {
                for (vk, bk) in v.iter_mut().zip(b) {
                    *vk += c[i] * bk;
                }
            }
            v
        });
        Lattice::span(self.dim, gens)
    }

    /// Image under `x -> M x`.
    pub fn image(&self, m: &Matrix, target_dim: usize) -> Result<Lattice> {
        let gens = self.basis.iter().map(|b| apply(m, b)).collect::<Result<Vec<_>>>()?;
        Lattice::span(target_dim, gens)
    }

    /// Invariant factors of `self / sub`; `Err(InfiniteQuotient)` if the
    /// ranks differ. `sub` must be contained in `self`.
    pub fn quotient_invariants(&self, sub: &Lattice) -> Result<Vec<i128>> {
        let mut rel = Vec::with_capacity(sub.rank());
        for b in &sub.basis {
            rel.push(
                self.coordinates(b)?
                    .ok_or_else(|| Error::InvalidModule("sublattice is not contained in lattice".into()))?,
            );
        }
        let d = smith_diagonal(rel, self.rank())?;
        if d.iter().filter(|&&x| x != 0).count() < self.rank() {
            return Err(Error::InfiniteQuotient);
        }
        Ok(d.into_iter().filter(|&x| x > 1).collect())
    }
}

pub fn unit(dim: usize, i: usize) -> Vector {
    let mut v = vec![0; dim];
    v[i] = 1;
    v
}

/// `M x`.
pub fn apply(m: &Matrix, x: &[i128]) -> Result<Vector> {
    m.iter()
        .map(|row| {
            row.iter().zip(x).try_fold(0i128, |acc, (&a, &b)| add(acc, mul(a, b)?))
        })
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let cols = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![0i128; cols]; a.len()];
    for (i, row) in a.iter().enumerate() {
        for (k, &x) in row.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for j in 0..cols {
                out[i][j] = add(out[i][j], mul(x, b[k][j])?)?;
            }
        }
    }
    Ok(out)
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| unit(n, i)).collect()
}

/// Integer solutions `c` of `Σ c_j cols[j] = 0`, as a basis of the kernel.
pub fn kernel_of_columns(cols: &[Vector], height: usize) -> Result<Vec<Vector>> {
    let k = cols.len();
    let mut rows: Vec<Vector> = cols
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let mut r = c.clone();
            r.extend(unit(k, j));
            r
        })
        .collect();
    let pivots = echelon(&mut rows, height)?;
    Ok(rows.into_iter().skip(pivots.len()).map(|r| r[height..].to_vec()).collect())
}

/// Kernel of `x -> M x` on `Z^cols`.
pub fn kernel(m: &Matrix, cols: usize) -> Result<Lattice> {
    let columns: Vec<Vector> = (0..cols).map(|j| m.iter().map(|r| r[j]).collect()).collect();
    Lattice::span(cols, kernel_of_columns(&columns, m.len())?)
}

/// Result of a Smith normal form computation `U A V = D` on a relation
/// matrix whose rows are relations among `n` generators.
pub struct Smith {
    pub diagonal: Vec<i128>,
    /// `V`, so that new coordinates of a row vector `x` are `x V`.
    pub v: Matrix,
    /// `V^{-1}`; row `i` is the old-coordinate vector of new generator `i`.
    pub v_inv: Matrix,
}

/// Diagonal of the Smith form of the `rows x n` matrix (length `n`,
/// zero-padded, each entry dividing the next among the nonzero ones).
pub fn smith_diagonal(rel: Matrix, n: usize) -> Result<Vec<i128>> {
    Ok(smith(rel, n)?.diagonal)
}

pub fn smith(mut a: Matrix, n: usize) -> Result<Smith> {
    let mut v = identity(n);
    let mut v_inv = identity(n);
    let rows = a.len();
    let mut t = 0;
    while t < rows.min(n) {
        // choose the nonzero entry of least absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..n {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        swap_cols(&mut a, &mut v, &mut v_inv, t, bj);
        loop {
            let mut changed = false;
            // clear column t below the pivot
            for i in t + 1..rows {
                if a[i][t] != 0 {
                    let (p, x) = (a[t][t], a[i][t]);
                    let (g, s, u) = if x % p == 0 { (p, 1, 0) } else { ext_gcd(p, x) };
                    combine(&mut a, t, i, s, u, -x / g, p / g)?;
                    changed = true;
                }
            }
            // clear row t right of the pivot (column ops)
            for j in t + 1..n {
                if a[t][j] != 0 {
                    let (p, x) = (a[t][t], a[t][j]);
                    let (g, s, u) = if x % p == 0 { (p, 1, 0) } else { ext_gcd(p, x) };
                    col_combine(&mut a, &mut v, &mut v_inv, t, j, s, u, -x / g, p / g)?;
                    changed = true;
                }
            }
            if !changed {
                // enforce divisibility of the rest of the block
                let p = a[t][t];
                let mut fix = None;
                'outer: for i in t + 1..rows {
                    for j in t + 1..n {
                        if a[i][j] % p != 0 {
                            fix = Some(i);
                            break 'outer;
                        }
                    }
                }
                match fix {
                    Some(i) => {
                        // add row i to row t and repeat
                        for k in 0..n {
                            a[t][k] = add(a[t][k], a[i][k])?;
                        }
                    }
                    None => break,
                }
            }
        }
        if a[t][t] < 0 {
            for x in a[t].iter_mut() {
                *x = -*x;
            }
        }
        t += 1;
    }
    let mut diagonal = vec![0i128; n];
    for (i, d) in diagonal.iter_mut().enumerate().take(rows.min(n)) {
        *d = a[i][i];
    }
    Ok(Smith { diagonal, v, v_inv })
}

fn swap_cols(a: &mut Matrix, v: &mut Matrix, v_inv: &mut Matrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    for r in a.iter_mut() {
        r.swap(i, j);
    }
    for r in v.iter_mut() {
        r.swap(i, j);
    }
    v_inv.swap(i, j);
}

/// Column operation `col_i <- a col_i + b col_j`, `col_j <- c col_i + d col_j`
/// with `ad - bc = 1`, applied to `A` and `V`, and the inverse row operation
/// to `V^{-1}`.
#[allow(clippy::too_many_arguments)]
fn col_combine(
    a: &mut Matrix,
    v: &mut Matrix,
    v_inv: &mut Matrix,
    i: usize,
    j: usize,
    ca: i128,
    cb: i128,
    cc: i128,
    cd: i128,
) -> Result<()> {
    for m in [&mut *a, &mut *v] {
        for r in m.iter_mut() {
            let (x, y) = (r[i], r[j]);
            r[i] = add(mul(ca, x)?, mul(cb, y)?)?;
            r[j] = add(mul(cc, x)?, mul(cd, y)?)?;
        }
    }
    // E = [[ca, cc], [cb, cd]] acting on columns (i, j); V^{-1} <- E^{-1} V^{-1}
    // with E^{-1} = [[cd, -cc], [-cb, ca]]
    combine(v_inv, i, j, cd, -cc, -cb, ca)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smith_examples() {
        let d = smith_diagonal(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3).unwrap();
        assert_eq!(d, [2, 6, 12]);
        let d = smith_diagonal(vec![vec![2, 0], vec![0, 3]], 2).unwrap();
        assert_eq!(d, [1, 6]);
        let d = smith_diagonal(vec![vec![4, 6]], 2).unwrap();
        assert_eq!(d, [2, 0]);
    }

    #[test]
    fn smith_transforms() {
        let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16], vec![1, 1, 1]];
        let s = smith(a.clone(), 3).unwrap();
        let vv = mat_mul(&s.v, &s.v_inv).unwrap();
        assert_eq!(vv, identity(3));
        // every relation maps into the diagonal lattice
        let av = mat_mul(&a, &s.v).unwrap();
        for row in av {
            for (k, &x) in row.iter().enumerate() {
                let d = s.diagonal[k];
                assert!(if d == 0 { x == 0 } else { x % d == 0 });
            }
        }
    }

    #[test]
    fn kernels_and_quotients() {
        let m = vec![vec![1, 2, 3], vec![2, 4, 6]];
        let k = kernel(&m, 3).unwrap();
        assert_eq!(k.rank(), 2);
        for b in k.basis() {
            assert_eq!(apply(&m, b).unwrap(), [0, 0]);
        }
        let l = Lattice::full(2);
        let s = Lattice::span(2, [vec![2, 0], vec![0, 4], vec![2, 2]]).unwrap();
        assert_eq!(l.quotient_invariants(&s).unwrap(), [2, 2]);
        let s = Lattice::span(2, [vec![2, 0]]).unwrap();
        assert_eq!(l.quotient_invariants(&s), Err(Error::InfiniteQuotient));
        assert!(s.contains(&[4, 0]).unwrap());
        assert!(!s.contains(&[1, 0]).unwrap());
    }
}
