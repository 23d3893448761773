//! Exact integer linear algebra: Bareiss rank, an incremental row-space
//! basis for repeated membership tests, and integer null-space bases.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Self {
        let mut m = ExactMatrix::zeros(rows.len(), cols);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged row {i}");
            m.data[i * cols..(i + 1) * cols].clone_from_slice(&row);
        }
        m
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        ExactMatrix::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Rank by fraction-free (Bareiss) elimination. Every intermediate
    /// division is exact.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<BigInt>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let mut prev = BigInt::one();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(p) = (rank..self.rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            for r in rank + 1..self.rows {
                for c in col + 1..self.cols {
                    let v = &a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c];
                    a[r][c] = v / &prev;
                }
                a[r][col] = BigInt::zero();
            }
            prev = a[rank][col].clone();
            rank += 1;
        }
        rank
    }

    /// Integer basis of `{x : A x = 0}`, each vector primitive.
    pub fn null_space(&self) -> Vec<Vec<BigInt>> {
        let mut space = RowSpace::new(self.cols);
        for r in 0..self.rows {
            space.insert(self.row(r).to_vec());
        }
        space.kernel()
    }
}

/// Row basis kept in triangular form with respect to insertion order: every
/// stored row vanishes at the pivots of the rows stored before it.
#[derive(Clone, Debug)]
pub struct RowSpace {
    cols: usize,
    basis: Vec<(usize, Vec<BigInt>)>,
}

impl RowSpace {
    pub fn new(cols: usize) -> Self {
        RowSpace {
            cols,
            basis: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Residue of `v` after clearing every stored pivot.
    fn reduce(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        debug_assert_eq!(v.len(), self.cols);
        for (pivot, row) in &self.basis {
            if v[*pivot].is_zero() {
                continue;
            }
            let a = row[*pivot].clone();
            let b = v[*pivot].clone();
            for (x, y) in v.iter_mut().zip(row) {
                *x = &a * &*x - &b * y;
            }
            make_primitive(&mut v);
        }
        v
    }

    /// Adds `v` to the basis; returns whether the rank grew.
    pub fn insert(&mut self, v: Vec<BigInt>) -> bool {
        let v = self.reduce(v);
        match v.iter().position(|x| !x.is_zero()) {
            Some(pivot) => {
                self.basis.push((pivot, v));
                true
            }
            None => false,
        }
    }

    /// Whether `v` lies in the row space, i.e. appending it leaves the rank unchanged.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.reduce(v.to_vec()).iter().all(Zero::is_zero)
    }

    /// Primitive integer basis of the orthogonal complement of the row space.
    pub fn kernel(&self) -> Vec<Vec<BigInt>> {
        // Gauss-Jordan: clear each pivot column in every other row.
        let mut rows: Vec<(usize, Vec<BigInt>)> = self.basis.clone();
        for k in 0..rows.len() {
            let (pk, rk) = rows[k].clone();
            for (l, (_, rl)) in rows.iter_mut().enumerate() {
                if l == k || rl[pk].is_zero() {
                    continue;
                }
                let a = rk[pk].clone();
                let b = rl[pk].clone();
                for (x, y) in rl.iter_mut().zip(&rk) {
                    *x = &a * &*x - &b * y;
                }
                make_primitive(rl);
            }
        }
        let mut is_pivot = vec![false; self.cols];
        for (p, _) in &rows {
            is_pivot[*p] = true;
        }
        let mut kernel = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let scale = rows
                .iter()
                .filter(|(_, r)| !r[free].is_zero())
                .fold(BigInt::one(), |acc, (p, r)| acc.lcm(&r[*p]));
            let mut x = vec![BigInt::zero(); self.cols];
            x[free] = scale.clone();
            for (p, r) in &rows {
                if !r[free].is_zero() {
                    x[*p] = -(&scale * &r[free]) / &r[*p];
                }
            }
            make_primitive(&mut x);
            kernel.push(x);
        }
        kernel
    }
}

/// Divides out the content and fixes the sign so the leading entry is positive.
pub fn make_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return;
    }
    let negate = v.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_negative);
    for x in v.iter_mut() {
        *x = &*x / &g;
        if negate {
            *x = -&*x;
        }
    }
}
