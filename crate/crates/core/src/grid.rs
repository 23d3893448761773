//! Finite product grids, their weight layers and the strict-unimodality test.
//!
//! A uniform grid is `[0,k_1-1] x ... x [0,k_n-1]`. A general product grid
//! carries explicit strictly increasing levels per axis; its points are
//! weighted by the sum of their per-axis rank indices. Points are indexed
//! in mixed-radix lexicographic order with the first axis most significant.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{check_range, Error, Result};
use crate::weightset::WeightSet;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Grid {
    dims: Vec<usize>,
    levels: Option<Vec<Vec<i64>>>,
    max_weight: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GridPoint {
    pub coords: Vec<i64>,
    pub weight: usize,
}

impl Grid {
    /// The uniform grid with `dims[i]` points on axis `i`.
    pub fn uniform(dims: &[usize]) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidGrid("a grid needs at least one axis".into()));
        }
        if let Some(k) = dims.iter().find(|&&k| k < 2) {
            return Err(Error::InvalidGrid(format!(
                "every axis needs at least 2 points, got {k}"
            )));
        }
        Ok(Grid {
            dims: dims.to_vec(),
            levels: None,
            max_weight: dims.iter().map(|k| k - 1).sum(),
        })
    }

    /// The Boolean cube `{0,1}^n`.
    pub fn cube(n: usize) -> Result<Self> {
        Grid::uniform(&vec![2; n])
    }

    /// A general product grid. Axes whose levels are `0..k` are still
    /// recorded explicitly; use [`Grid::uniform`] for the uniform case.
    pub fn with_levels(levels: Vec<Vec<i64>>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InvalidGrid("a grid needs at least one axis".into()));
        }
        for (axis, lv) in levels.iter().enumerate() {
            if lv.len() < 2 {
                return Err(Error::InvalidGrid(format!(
                    "axis {axis} needs at least 2 levels"
                )));
            }
            if lv.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidGrid(format!(
                    "levels of axis {axis} must be strictly increasing"
                )));
            }
        }
        let dims: Vec<usize> = levels.iter().map(Vec::len).collect();
        let max_weight = dims.iter().map(|k| k - 1).sum();
        let uniform = levels
            .iter()
            .all(|lv| lv.iter().enumerate().all(|(i, &v)| v == i as i64));
        Ok(Grid {
            dims,
            levels: if uniform { None } else { Some(levels) },
            max_weight,
        })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Number of axes `n`.
    pub fn n(&self) -> usize {
        self.dims.len()
    }

    /// Total weight `N = sum (k_i - 1)`.
    pub fn max_weight(&self) -> usize {
        self.max_weight
    }

    pub fn is_uniform(&self) -> bool {
        self.levels.is_none()
    }

    pub fn is_cube(&self) -> bool {
        self.is_uniform() && self.dims.iter().all(|&k| k == 2)
    }

    /// Explicit levels of every axis (`0..k_i` for uniform grids).
    pub fn levels(&self) -> Vec<Vec<i64>> {
        match &self.levels {
            Some(lv) => lv.clone(),
            None => self
                .dims
                .iter()
                .map(|&k| (0..k as i64).collect())
                .collect(),
        }
    }

    pub fn level(&self, axis: usize, rank: usize) -> i64 {
        match &self.levels {
            Some(lv) => lv[axis][rank],
            None => rank as i64,
        }
    }

    /// Number of points, or `None` if it does not fit in `usize`.
    pub fn size(&self) -> Option<usize> {
        self.dims.iter().try_fold(1usize, |acc, &k| acc.checked_mul(k))
    }

    pub fn require_uniform(&self, what: &str) -> Result<()> {
        if !self.is_uniform() {
            return Err(Error::UnsupportedDomain(format!(
                "{what} is only defined on uniform grids"
            )));
        }
        Ok(())
    }

    /// Rank indices of the point with canonical index `index`.
    pub fn ranks(&self, mut index: usize) -> Vec<usize> {
        let mut ranks = vec![0; self.n()];
        for (axis, &k) in self.dims.iter().enumerate().rev() {
            ranks[axis] = index % k;
            index /= k;
        }
        ranks
    }

    pub fn index_of_ranks(&self, ranks: &[usize]) -> usize {
        ranks
            .iter()
            .zip(&self.dims)
            .fold(0, |acc, (&r, &k)| acc * k + r)
    }

    /// Canonical index of the point with the given coordinates, if it lies on the grid.
    pub fn index_of(&self, coords: &[i64]) -> Option<usize> {
        if coords.len() != self.n() {
            return None;
        }
        let mut ranks = Vec::with_capacity(self.n());
        for (axis, &c) in coords.iter().enumerate() {
            let r = match &self.levels {
                Some(lv) => lv[axis].iter().position(|&v| v == c)?,
                None => {
                    if c < 0 || c as usize >= self.dims[axis] {
                        return None;
                    }
                    c as usize
                }
            };
            ranks.push(r);
        }
        Some(self.index_of_ranks(&ranks))
    }

    pub fn coords(&self, index: usize) -> Vec<i64> {
        self.ranks(index)
            .into_iter()
            .enumerate()
            .map(|(axis, r)| self.level(axis, r))
            .collect()
    }

    pub fn weight(&self, index: usize) -> usize {
        self.ranks(index).iter().sum()
    }

    pub fn point(&self, index: usize) -> GridPoint {
        let ranks = self.ranks(index);
        GridPoint {
            weight: ranks.iter().sum(),
            coords: ranks
                .into_iter()
                .enumerate()
                .map(|(axis, r)| self.level(axis, r))
                .collect(),
        }
    }

    /// Number of points of each weight `0..=N`, by convolution over the axes.
    pub fn layer_sizes(&self) -> Vec<BigUint> {
        let mut sizes = vec![BigUint::one()];
        for &k in &self.dims {
            let mut next = vec![BigUint::zero(); sizes.len() + k - 1];
            for (j, s) in sizes.iter().enumerate() {
                for slot in &mut next[j..j + k] {
                    *slot += s;
                }
            }
            sizes = next;
        }
        sizes
    }

    pub fn layer_size(&self, j: usize) -> Result<BigUint> {
        check_range("weight", j, self.max_weight)?;
        Ok(self.layer_sizes().swap_remove(j))
    }

    /// Dhand's criterion: `2 max(k_i - 1) <= sum(k_i - 1) + 1`.
    pub fn su2_by_dims(&self) -> bool {
        let widest = self.dims.iter().map(|k| k - 1).max().unwrap_or(0);
        2 * widest <= self.max_weight + 1
    }

    /// Direct scan of the layer sizes for strict unimodality.
    pub fn su2_by_layers(&self) -> bool {
        let sizes = self.layer_sizes();
        let n = self.max_weight;
        let mid = n / 2;
        let rising = sizes[..=mid].windows(2).all(|w| w[0] < w[1]);
        let falling = sizes[n - mid..].windows(2).all(|w| w[0] > w[1]);
        rising && falling
    }

    /// Whether this uniform grid is strictly unimodal.
    pub fn is_su2(&self) -> Result<bool> {
        self.require_uniform("strict unimodality")?;
        let by_dims = self.su2_by_dims();
        debug_assert_eq!(by_dims, self.su2_by_layers(), "Dhand criterion disagrees on {self}");
        Ok(by_dims)
    }

    /// Fails unless this is a uniform SU² grid.
    pub fn require_su2(&self) -> Result<()> {
        if !self.is_su2()? {
            return Err(Error::UnsupportedDomain(format!(
                "grid {self} is not strictly unimodal"
            )));
        }
        Ok(())
    }

    /// All points of weight `j`, in canonical order.
    pub fn enumerate_layer(&self, j: usize) -> Result<Vec<GridPoint>> {
        check_range("weight", j, self.max_weight)?;
        // Largest weight reachable from axes `axis..`.
        let mut tail = vec![0; self.n() + 1];
        for axis in (0..self.n()).rev() {
            tail[axis] = tail[axis + 1] + self.dims[axis] - 1;
        }
        let mut out = Vec::new();
        let mut ranks = Vec::with_capacity(self.n());
        self.layer_rec(0, j, &tail, &mut ranks, &mut out);
        Ok(out)
    }

    fn layer_rec(
        &self,
        axis: usize,
        remaining: usize,
        tail: &[usize],
        ranks: &mut Vec<usize>,
        out: &mut Vec<GridPoint>,
    ) {
        if axis == self.n() {
            out.push(GridPoint {
                coords: ranks
                    .iter()
                    .enumerate()
                    .map(|(a, &r)| self.level(a, r))
                    .collect(),
                weight: ranks.iter().sum(),
            });
            return;
        }
        let lo = remaining.saturating_sub(tail[axis + 1]);
        let hi = remaining.min(self.dims[axis] - 1);
        for r in lo..=hi {
            ranks.push(r);
            self.layer_rec(axis + 1, remaining - r, tail, ranks, out);
            ranks.pop();
        }
    }

    /// The explicit point set of `E`: every point whose weight lies in `E`.
    pub fn lift(&self, e: &WeightSet) -> Result<PointSet> {
        if e.max_weight() != self.max_weight {
            return Err(Error::InvalidInput(format!(
                "weight set lives in [0,{}] but the grid has N = {}",
                e.max_weight(),
                self.max_weight
            )));
        }
        let size = self.size().ok_or(Error::CapExceeded {
            what: "grid size",
            size: usize::MAX,
            cap: usize::MAX,
        })?;
        let mut set = PointSet::empty(size);
        for idx in 0..size {
            if e.contains(self.weight(idx)) {
                set.insert(idx);
            }
        }
        Ok(set)
    }

    /// The whole grid as a point set.
    pub fn all_points(&self) -> Result<PointSet> {
        self.lift(&WeightSet::full(self.max_weight))
    }

    /// Largest weight-determined subset of `s`.
    pub fn weight_core(&self, s: &PointSet) -> WeightSet {
        let mut inside = vec![true; self.max_weight + 1];
        for idx in 0..s.capacity() {
            if !s.contains(idx) {
                inside[self.weight(idx)] = false;
            }
        }
        WeightSet::from_iter(
            self.max_weight,
            inside
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(j, _)| j),
        )
        .expect("weights are in range")
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.levels {
            None => {
                let dims: Vec<String> = self.dims.iter().map(|k| k.to_string()).collect();
                write!(f, "{}", dims.join(","))
            }
            Some(levels) => {
                let axes: Vec<String> = levels
                    .iter()
                    .map(|lv| {
                        lv.iter()
                            .map(|v| v.to_string())
                            .collect::<Vec<_>>()
                            .join(",")
                    })
                    .collect();
                write!(f, "{}", axes.join("|"))
            }
        }
    }
}

/// Grid spec strings: `"3,3,3"` (axis sizes), `"cube:5"`, or explicit
/// levels per axis separated by `|`, e.g. `"0,1,3|0,1,3"`.
impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse_list = |part: &str| -> Result<Vec<i64>> {
            part.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad integer {t:?} in grid spec {s:?}")))
                })
                .collect()
        };
        if let Some(n) = s.strip_prefix("cube:") {
            let n: usize = n
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad cube dimension in {s:?}")))?;
            return Grid::cube(n);
        }
        if s.contains('|') {
            let levels = s
                .split('|')
                .filter(|p| !p.trim().is_empty())
                .map(parse_list)
                .collect::<Result<Vec<_>>>()?;
            return Grid::with_levels(levels);
        }
        let dims = parse_list(s)?;
        if dims.iter().any(|&k| k < 0) {
            return Err(Error::Parse(format!("negative axis size in {s:?}")));
        }
        Grid::uniform(&dims.iter().map(|&k| k as usize).collect::<Vec<_>>())
    }
}

/// A subset of a grid, as a bit vector over canonical point indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointSet {
    words: Vec<u64>,
    capacity: usize,
}

impl PointSet {
    pub fn empty(capacity: usize) -> Self {
        PointSet {
            words: vec![0; capacity.div_ceil(64)],
            capacity,
        }
    }

    pub fn from_indices(capacity: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut set = PointSet::empty(capacity);
        for i in indices {
            set.insert(i);
        }
        set
    }

    /// Number of grid points the set ranges over.
    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.capacity, "point index {i} out of range");
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.capacity && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.capacity
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.capacity).filter(|&i| self.contains(i))
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        PointSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a | b)
                .collect(),
            capacity: self.capacity,
        }
    }

    pub fn difference(&self, other: &PointSet) -> PointSet {
        PointSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & !b)
                .collect(),
            capacity: self.capacity,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sizes(g: &Grid) -> Vec<u64> {
        g.layer_sizes()
            .iter()
            .map(|s| s.try_into().unwrap())
            .collect()
    }

    #[test]
    fn layer_sizes_of_small_grids() {
        let cube = Grid::cube(4).unwrap();
        assert_eq!(cube.layer_size(2).unwrap(), BigUint::from(6u32));
        let g = Grid::uniform(&[3, 3, 3]).unwrap();
        assert_eq!(g.layer_size(3).unwrap(), BigUint::from(7u32));
        assert_eq!(g.layer_size(0).unwrap(), BigUint::one());
        assert_eq!(sizes(&Grid::uniform(&[6, 2]).unwrap()), [1, 2, 2, 2, 2, 2, 1]);
        assert!(g.layer_size(7).is_err());
    }

    #[test]
    fn su2_examples() {
        assert!(Grid::cube(7).unwrap().is_su2().unwrap());
        assert!(Grid::uniform(&[3, 3]).unwrap().is_su2().unwrap());
        assert!(!Grid::uniform(&[6, 2]).unwrap().is_su2().unwrap());
        let h: Grid = "0,1,3|0,1,3".parse().unwrap();
        assert!(matches!(h.is_su2(), Err(Error::UnsupportedDomain(_))));
    }

    #[test]
    fn su2_criteria_agree_exhaustively() {
        fn rec(dims: &mut Vec<usize>, n: usize) {
            if dims.len() == n {
                let g = Grid::uniform(dims).unwrap();
                assert_eq!(g.su2_by_dims(), g.su2_by_layers(), "{g}");
                return;
            }
            for k in 2..=6 {
                dims.push(k);
                rec(dims, n);
                dims.pop();
            }
        }
        for n in 1..=4 {
            rec(&mut Vec::new(), n);
        }
    }

    #[test]
    fn enumerate_layers() {
        let g = Grid::uniform(&[3, 3, 3]).unwrap();
        let layer: Vec<Vec<i64>> = g
            .enumerate_layer(3)
            .unwrap()
            .into_iter()
            .map(|p| p.coords)
            .collect();
        let mut expected = vec![
            vec![2, 1, 0],
            vec![1, 2, 0],
            vec![0, 2, 1],
            vec![0, 1, 2],
            vec![2, 0, 1],
            vec![1, 0, 2],
            vec![1, 1, 1],
        ];
        expected.sort();
        assert_eq!(layer, expected);
        let origin = g.enumerate_layer(0).unwrap();
        assert_eq!(origin.len(), 1);
        assert_eq!(origin[0].coords, [0, 0, 0]);
        let c3 = Grid::cube(3).unwrap();
        let l1: Vec<_> = c3.enumerate_layer(1).unwrap().into_iter().map(|p| p.coords).collect();
        assert_eq!(l1, [[0, 0, 1], [0, 1, 0], [1, 0, 0]]);
    }

    #[test]
    fn layers_match_sizes_and_indices() {
        let g = Grid::uniform(&[4, 2, 3]).unwrap();
        let sizes = g.layer_sizes();
        let mut seen = 0;
        for (j, size) in sizes.iter().enumerate() {
            let layer = g.enumerate_layer(j).unwrap();
            assert_eq!(BigUint::from(layer.len()), *size);
            for p in &layer {
                let idx = g.index_of(&p.coords).unwrap();
                assert_eq!(g.point(idx), *p);
                seen += 1;
            }
        }
        assert_eq!(seen, g.size().unwrap());
    }

    #[test]
    fn general_grid_weights_use_ranks() {
        let h: Grid = "0,1,3|0,1,3".parse().unwrap();
        assert!(!h.is_uniform());
        assert_eq!(h.max_weight(), 4);
        let two: Vec<_> = h.enumerate_layer(2).unwrap().into_iter().map(|p| p.coords).collect();
        assert_eq!(two, [[0, 3], [1, 1], [3, 0]]);
        // explicit 0..k levels collapse to the uniform grid
        let g: Grid = "0,1,2|0,1,2".parse().unwrap();
        assert_eq!(g, Grid::uniform(&[3, 3]).unwrap());
    }

    #[test]
    fn grid_spec_parsing() {
        assert_eq!("cube:3".parse::<Grid>().unwrap(), Grid::uniform(&[2, 2, 2]).unwrap());
        assert_eq!("3, 2".parse::<Grid>().unwrap().dims(), [3, 2]);
        assert!("1,3".parse::<Grid>().is_err());
        assert!("0,2,1|0,1".parse::<Grid>().is_err());
        assert!("x".parse::<Grid>().is_err());
        let g: Grid = "0,1,3|0,1,3".parse().unwrap();
        assert_eq!(g.to_string(), "0,1,3|0,1,3");
    }
}
