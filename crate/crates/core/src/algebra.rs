//! Ground-truth closures by exact linear algebra.
//!
//! Degree-`d` functions on a product grid are exactly the span of the
//! footprint monomials (exponent of `X_i` at most `k_i - 1`), which are
//! linearly independent as functions on the grid. A point `a` lies in the
//! degree-`d` Z-closure of `S` iff every such function vanishing on `S`
//! vanishes at `a`, iff the evaluation row of `a` lies in the row space of
//! the evaluation matrix of `S`.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{check_range, Error, Result};
use crate::grid::{Grid, PointSet};
use crate::matrix::{ExactMatrix, RowSpace};
use crate::poly::{Monomial, Poly};
use crate::weightset::WeightSet;

/// Size guard for the linear-algebra oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_points: usize,
    pub max_monomials: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_points: 20_000,
            max_monomials: 20_000,
        }
    }
}

/// Footprint monomials of total degree at most `d`, by degree and then in
/// descending lexicographic order of exponents.
pub fn footprint_monomials(grid: &Grid, d: usize) -> Vec<Monomial> {
    let mut by_degree: Vec<Vec<Monomial>> = vec![Vec::new(); d + 1];
    let mut exps = vec![0u32; grid.n()];
    fn rec(grid: &Grid, axis: usize, left: usize, exps: &mut Vec<u32>, out: &mut [Vec<Monomial>], d: usize) {
        if axis == grid.n() {
            out[d - left].push(Monomial(exps.clone()));
            return;
        }
        let top = left.min(grid.dims()[axis] - 1);
        for e in (0..=top).rev() {
            exps[axis] = e as u32;
            rec(grid, axis + 1, left - e, exps, out, d);
        }
        exps[axis] = 0;
    }
    rec(grid, 0, d, &mut exps, &mut by_degree, d);
    by_degree.into_iter().flatten().collect()
}

/// Evaluation rows of every grid point over the degree-`d` footprint.
#[derive(Clone, Debug)]
pub struct ClosureOracle {
    grid: Grid,
    degree: usize,
    monomials: Vec<Monomial>,
    rows: Vec<Vec<BigInt>>,
}

impl ClosureOracle {
    pub fn new(grid: &Grid, d: usize) -> Result<Self> {
        ClosureOracle::with_limits(grid, d, OracleLimits::default())
    }

    pub fn with_limits(grid: &Grid, d: usize, limits: OracleLimits) -> Result<Self> {
        check_range("degree", d, grid.max_weight())?;
        let size = grid.size().unwrap_or(usize::MAX);
        if size > limits.max_points {
            return Err(Error::CapExceeded {
                what: "grid points",
                size,
                cap: limits.max_points,
            });
        }
        let monomials = footprint_monomials(grid, d);
        if monomials.len() > limits.max_monomials {
            return Err(Error::CapExceeded {
                what: "footprint monomials",
                size: monomials.len(),
                cap: limits.max_monomials,
            });
        }
        let rows = (0..size)
            .map(|idx| {
                let pt = grid.coords(idx);
                monomials.iter().map(|m| m.eval(&pt)).collect()
            })
            .collect();
        Ok(ClosureOracle {
            grid: grid.clone(),
            degree: d,
            monomials,
            rows,
        })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn evaluation_row(&self, idx: usize) -> &[BigInt] {
        &self.rows[idx]
    }

    fn check_set(&self, s: &PointSet) -> Result<()> {
        if s.capacity() != self.rows.len() {
            return Err(Error::InvalidInput(format!(
                "point set ranges over {} points, grid has {}",
                s.capacity(),
                self.rows.len()
            )));
        }
        Ok(())
    }

    /// Echelon basis of the evaluation rows of `s`.
    pub fn row_space(&self, s: &PointSet) -> Result<RowSpace> {
        self.check_set(s)?;
        let mut space = RowSpace::new(self.monomials.len());
        for idx in s.iter() {
            if space.rank() == self.monomials.len() {
                break;
            }
            space.insert(self.rows[idx].clone());
        }
        Ok(space)
    }

    /// Evaluation matrix of `s` (rows in canonical point order).
    pub fn evaluation_matrix(&self, s: &PointSet) -> Result<ExactMatrix> {
        self.check_set(s)?;
        Ok(ExactMatrix::from_rows(
            self.monomials.len(),
            s.iter().map(|idx| self.rows[idx].clone()).collect(),
        ))
    }

    /// Degree-`d` Z-closure of `s`.
    pub fn z_closure(&self, s: &PointSet) -> Result<PointSet> {
        let space = self.row_space(s)?;
        let extra: Vec<usize> = (0..self.rows.len())
            .into_par_iter()
            .filter(|&idx| !s.contains(idx) && space.contains(&self.rows[idx]))
            .collect();
        let mut out = s.clone();
        for idx in extra {
            out.insert(idx);
        }
        Ok(out)
    }

    /// Weights whose whole layer lies in the Z-closure of the lift of `e`.
    pub fn z_star_closure(&self, e: &WeightSet) -> Result<WeightSet> {
        let lifted = self.grid.lift(e)?;
        let space = self.row_space(&lifted)?;
        let n = self.grid.max_weight();
        let mut full_layer = vec![true; n + 1];
        for idx in 0..self.rows.len() {
            let w = self.grid.weight(idx);
            if full_layer[w] && !e.contains(w) && !space.contains(&self.rows[idx]) {
                full_layer[w] = false;
            }
        }
        WeightSet::from_iter(n, (0..=n).filter(|&j| full_layer[j]))
    }

    /// `H_d(S)`: the rank of the evaluation matrix of `s`.
    pub fn hilbert(&self, s: &PointSet) -> Result<usize> {
        Ok(self.row_space(s)?.rank())
    }

    pub fn hilbert_profile(&self, e: &WeightSet) -> Result<HilbertProfile> {
        let d = self.degree;
        let value = self.hilbert(&self.grid.lift(e)?)?;
        let jplus: Vec<usize> = e.iter().filter(|&j| j > d).collect();
        let jminus: Vec<usize> = (0..=d).rev().filter(|&j| !e.contains(j)).collect();
        let closed_form = self
            .grid
            .is_cube()
            .then(|| cube_hilbert_closed_form(self.grid.n(), d, e));
        Ok(HilbertProfile {
            d,
            value,
            r_d: jplus.len(),
            ell_d: jminus.len(),
            jplus,
            jminus,
            closed_form,
        })
    }

    /// Integer basis of the degree-`<= d` polynomials (footprint
    /// coordinates) vanishing on `s`.
    pub fn vanishing_basis(&self, s: &PointSet) -> Result<Vec<Poly>> {
        let kernel = self.row_space(s)?.kernel();
        Ok(kernel
            .iter()
            .map(|c| Poly::from_coefficients(self.grid.n(), &self.monomials, c))
            .collect())
    }
}

pub fn z_closure(grid: &Grid, d: usize, s: &PointSet) -> Result<PointSet> {
    ClosureOracle::new(grid, d)?.z_closure(s)
}

pub fn z_star_closure(grid: &Grid, d: usize, e: &WeightSet) -> Result<WeightSet> {
    ClosureOracle::new(grid, d)?.z_star_closure(e)
}

pub fn vanishing_basis(grid: &Grid, d: usize, s: &PointSet) -> Result<Vec<Poly>> {
    ClosureOracle::new(grid, d)?.vanishing_basis(s)
}

pub fn hilbert_fn(grid: &Grid, d: usize, s: &PointSet) -> Result<usize> {
    ClosureOracle::new(grid, d)?.hilbert(s)
}

/// Affine Hilbert function data of a weight-determined set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertProfile {
    pub d: usize,
    /// Rank of the evaluation matrix.
    pub value: usize,
    /// `|E \ [0,d]|`.
    pub r_d: usize,
    /// `|[0,d] \ E|`.
    pub ell_d: usize,
    /// `E \ [0,d]`, increasing.
    pub jplus: Vec<usize>,
    /// `[0,d] \ E`, decreasing.
    pub jminus: Vec<usize>,
    /// Closed form for symmetric sets of the Boolean cube; `None` off the cube.
    pub closed_form: Option<u128>,
}

pub fn hilbert_profile(grid: &Grid, d: usize, e: &WeightSet) -> Result<HilbertProfile> {
    ClosureOracle::new(grid, d)?.hilbert_profile(e)
}

/// Bernasconi–Egidi closed form of `H_d(E)` on `{0,1}^n`.
pub fn cube_hilbert_closed_form(n: usize, d: usize, e: &WeightSet) -> u128 {
    let jplus: Vec<usize> = e.iter().filter(|&j| j > d).collect();
    let jminus: Vec<usize> = (0..=d).rev().filter(|&j| !e.contains(j)).collect();
    let low: u128 = e.iter().filter(|&j| j <= d).map(|j| binomial(n, j)).sum();
    let paired: u128 = jplus
        .iter()
        .zip(&jminus)
        .map(|(&p, &m)| binomial(n, p).min(binomial(n, m)))
        .sum();
    low + paired
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Least `d` whose Z-closure of the lift of `e` is the lift itself: the
/// exact polynomial covering degree.
pub fn epc_oracle(grid: &Grid, e: &WeightSet) -> Result<usize> {
    epc_oracle_with(grid, e, OracleLimits::default())
}

pub fn epc_oracle_with(grid: &Grid, e: &WeightSet, limits: OracleLimits) -> Result<usize> {
    if e.is_full() {
        return Err(Error::InvalidInput(
            "exact covers need a proper subset of [0,N]".into(),
        ));
    }
    let lifted = grid.lift(e)?;
    for d in 0..=grid.max_weight() {
        if ClosureOracle::with_limits(grid, d, limits)?.z_closure(&lifted)? == lifted {
            return Ok(d);
        }
    }
    // The footprint at degree N spans every function on the grid.
    unreachable!("degree-N closure of any set is the set itself")
}
