//! Ground truth for hyperplane covers of small grids.
//!
//! Only the trace `H ∩ G` of a hyperplane matters. Every trace equals
//! `F ∩ G` for the flat `F` spanned by the trace, and conversely every
//! proper flat spanned by grid points is the exact trace of some
//! hyperplane (tilt a hyperplane through `F` generically to dodge the
//! finitely many grid points off `F`). So hyperplane families can be
//! searched as families of these sections, with exact set cover.
//!
//! A product of `d` affine forms is a polynomial of degree `d`, so the
//! degree-`d` Z-closure is contained in the h-closure and the Z-closure
//! degrees bound the cover sizes from below. The searches start there and
//! only ever have to refute sizes the algebra cannot rule out.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::ClosureOracle;
use crate::error::{Error, Result};
use crate::grid::{Grid, PointSet};
use crate::poly::Poly;
use crate::weightset::WeightSet;

/// Default cap on grid size for section enumeration.
pub const DEFAULT_MAX_POINTS: usize = 40;
/// Sections are stored as `u128` masks.
pub const HARD_MAX_POINTS: usize = 128;
/// Default largest degree `h_closure` accepts.
pub const DEFAULT_SEARCH_DEPTH: usize = 6;

type Mask = u128;

fn bits(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let b = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(b)
    })
}

fn ones(m: Mask) -> usize {
    m.count_ones() as usize
}

/// The grid points on a proper flat spanned by grid points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatSection {
    mask: Mask,
    dim: usize,
    origin: Vec<i64>,
    directions: Vec<Vec<i64>>,
}

impl FlatSection {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        ones(self.mask)
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.mask >> idx & 1 == 1
    }

    pub fn indices(&self) -> Vec<usize> {
        bits(self.mask).collect()
    }

    pub fn points(&self, grid: &Grid) -> PointSet {
        PointSet::from_indices(grid.size().expect("small grid"), bits(self.mask))
    }

    /// Normals `ν_j` and offsets `c_j` with the flat equal to `{x : ν_j·x = c_j}`.
    pub fn equations(&self) -> Vec<(Vec<i64>, i64)> {
        affine_equations(&self.origin, &self.directions)
    }

    /// A degree-1 form whose zero set on `grid` is exactly this section.
    pub fn realizing_form(&self, grid: &Grid) -> LinearForm {
        let eqs = self.equations();
        let size = grid.size().expect("small grid");
        // Combine the equations along the moment curve (1, t, t^2, ...): each
        // off-flat point rules out at most eqs.len() - 1 values of t.
        for t in 0i64.. {
            let mut coeffs = vec![BigInt::zero(); grid.n()];
            let mut constant = BigInt::zero();
            let mut w = BigInt::from(1);
            for (normal, rhs) in &eqs {
                for (c, &v) in coeffs.iter_mut().zip(normal) {
                    *c += &w * v;
                }
                constant -= &w * rhs;
                w *= t;
                if t == 0 {
                    break;
                }
            }
            let form = Poly::linear(&coeffs, &constant).primitive();
            let exact = (0..size).all(|idx| form.eval(&grid.coords(idx)).is_zero() == self.contains(idx));
            if exact {
                return LinearForm(form);
            }
        }
        unreachable!("the moment curve leaves finitely many bad parameters")
    }
}

/// Null space of the direction matrix, as integer normals with offsets.
///
/// The matrices have at most `n` short rows of small entries, so machine
/// integers with content removal after every step stay tiny.
fn affine_equations(origin: &[i64], directions: &[Vec<i64>]) -> Vec<(Vec<i64>, i64)> {
    let n = origin.len();
    let mut rows: Vec<(usize, Vec<i128>)> = Vec::new();
    for d in directions {
        let mut v: Vec<i128> = d.iter().map(|&x| i128::from(x)).collect();
        for (p, r) in &rows {
            if v[*p] != 0 {
                let (a, b) = (r[*p], v[*p]);
                v.iter_mut().zip(r).for_each(|(x, y)| *x = a * *x - b * y);
                primitive(&mut v);
            }
        }
        if let Some(p) = v.iter().position(|&x| x != 0) {
            // keep the basis reduced: clear the new pivot from earlier rows
            for (_, r) in rows.iter_mut() {
                if r[p] != 0 {
                    let (a, b) = (v[p], r[p]);
                    r.iter_mut().zip(&v).for_each(|(x, y)| *x = a * *x - b * y);
                    primitive(r);
                }
            }
            rows.push((p, v));
        }
    }
    let pivots: Vec<usize> = rows.iter().map(|(p, _)| *p).collect();
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let scale = rows
                .iter()
                .filter(|(_, r)| r[free] != 0)
                .fold(1i128, |acc, (p, r)| lcm(acc, r[*p]));
            let mut x = vec![0i128; n];
            x[free] = scale;
            for (p, r) in &rows {
                x[*p] = -scale * r[free] / r[*p];
            }
            primitive(&mut x);
            let v: Vec<i64> = x.iter().map(|&t| i64::try_from(t).expect("small normal")).collect();
            let rhs = v.iter().zip(origin).map(|(a, b)| a * b).sum();
            (v, rhs)
        })
        .collect()
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: i128, b: i128) -> i128 {
    (a / gcd(a, b) * b).abs()
}

fn primitive(v: &mut [i128]) {
    let g = v.iter().fold(0, |g, &x| gcd(g, x));
    if g == 0 {
        return;
    }
    let sign = if v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) { -1 } else { 1 };
    v.iter_mut().for_each(|x| *x = *x / g * sign);
}

/// A nonconstant degree-1 polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct LinearForm(pub Poly);

impl LinearForm {
    pub fn poly(&self) -> &Poly {
        &self.0
    }

    pub fn trace(&self, grid: &Grid) -> Result<PointSet> {
        let size = grid.size().ok_or(Error::InvalidInput("grid too large".into()))?;
        Ok(PointSet::from_indices(
            size,
            (0..size).filter(|&idx| self.0.eval(&grid.coords(idx)).is_zero()),
        ))
    }
}

/// A family of hyperplanes given by their forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HyperplaneFamily {
    pub forms: Vec<LinearForm>,
}

impl HyperplaneFamily {
    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    /// Points of `grid` on at least one of the hyperplanes.
    pub fn trace(&self, grid: &Grid) -> Result<PointSet> {
        let size = grid.size().ok_or(Error::InvalidInput("grid too large".into()))?;
        let mut out = PointSet::empty(size);
        for f in &self.forms {
            out = out.union(&f.trace(grid)?);
        }
        Ok(out)
    }
}

/// Search settings for the hyperplane oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HyperplaneLimits {
    pub max_points: usize,
    pub search_depth: usize,
}

impl Default for HyperplaneLimits {
    fn default() -> Self {
        HyperplaneLimits {
            max_points: DEFAULT_MAX_POINTS,
            search_depth: DEFAULT_SEARCH_DEPTH,
        }
    }
}

/// All proper flat sections of a small grid, shared by every query on it.
#[derive(Clone, Debug)]
pub struct SectionIndex {
    grid: Grid,
    size: usize,
    sections: Vec<FlatSection>,
    limits: HyperplaneLimits,
}

pub fn enumerate_sections(grid: &Grid) -> Result<SectionIndex> {
    SectionIndex::new(grid, HyperplaneLimits::default())
}

impl SectionIndex {
    pub fn new(grid: &Grid, limits: HyperplaneLimits) -> Result<Self> {
        let size = grid.size().unwrap_or(usize::MAX);
        let cap = limits.max_points.min(HARD_MAX_POINTS);
        if size > cap {
            return Err(Error::CapExceeded {
                what: "grid points",
                size,
                cap,
            });
        }
        let coords: Vec<Vec<i64>> = (0..size).map(|i| grid.coords(i)).collect();
        let n = grid.n();
        let mut sections: Vec<FlatSection> = (0..size)
            .map(|i| FlatSection {
                mask: 1 << i,
                dim: 0,
                origin: coords[i].clone(),
                directions: Vec::new(),
            })
            .collect();
        let mut frontier: Vec<usize> = (0..sections.len()).collect();
        for dim in 1..n {
            let mut seen: HashSet<Mask> = HashSet::new();
            let mut next = Vec::new();
            for &s in &frontier {
                let base = sections[s].clone();
                let mut absorbed = base.mask;
                for p in 0..size {
                    if absorbed >> p & 1 == 1 {
                        continue;
                    }
                    let mut dirs = base.directions.clone();
                    dirs.push(coords[p].iter().zip(&base.origin).map(|(a, b)| a - b).collect());
                    let eqs = affine_equations(&base.origin, &dirs);
                    let mask = (0..size)
                        .filter(|&q| {
                            eqs.iter().all(|(nv, rhs)| {
                                nv.iter().zip(&coords[q]).map(|(a, b)| a * b).sum::<i64>() == *rhs
                            })
                        })
                        .fold(0 as Mask, |m, q| m | 1 << q);
                    absorbed |= mask;
                    if seen.insert(mask) {
                        next.push(sections.len());
                        sections.push(FlatSection {
                            mask,
                            dim,
                            origin: base.origin.clone(),
                            directions: dirs,
                        });
                    }
                }
            }
            frontier = next;
        }
        Ok(SectionIndex {
            grid: grid.clone(),
            size,
            sections,
            limits,
        })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn sections(&self) -> &[FlatSection] {
        &self.sections
    }

    fn mask_of(&self, s: &PointSet) -> Result<Mask> {
        if s.capacity() != self.size {
            return Err(Error::InvalidInput(format!(
                "point set ranges over {} points, grid has {}",
                s.capacity(),
                self.size
            )));
        }
        Ok(s.iter().fold(0, |m, i| m | 1 << i))
    }

    fn full_mask(&self) -> Mask {
        if self.size == 128 {
            Mask::MAX
        } else {
            (1 << self.size) - 1
        }
    }

    fn layer_masks(&self) -> Vec<Mask> {
        let mut layers = vec![0 as Mask; self.grid.max_weight() + 1];
        for idx in 0..self.size {
            layers[self.grid.weight(idx)] |= 1 << idx;
        }
        layers
    }

    fn lift_mask(&self, e: &WeightSet) -> Result<Mask> {
        if e.max_weight() != self.grid.max_weight() {
            return Err(Error::InvalidInput("weight set does not match grid".into()));
        }
        Ok(self
            .layer_masks()
            .iter()
            .enumerate()
            .filter(|(j, _)| e.contains(*j))
            .fold(0, |m, (_, l)| m | l))
    }

    fn z_closure_mask(&self, d: usize, target: Mask) -> Result<Mask> {
        let s = PointSet::from_indices(self.size, bits(target));
        let closure = ClosureOracle::new(&self.grid, d)?.z_closure(&s)?;
        Ok(closure.iter().fold(0, |m, i| m | 1 << i))
    }

    /// Sections covering `target` with none containing `avoid`, using
    /// between `min_size` and `max_size` of them.
    fn cover_avoiding(&self, target: Mask, avoid: Mask, min_size: usize, max_size: usize) -> Option<Vec<usize>> {
        CoverProblem::new(&self.sections, target, avoid, vec![avoid]).solve(min_size, max_size)
    }

    /// For each point outside `s`, the least number of sections covering
    /// `s` while missing that point (`None` beyond `depth`).
    pub fn avoidance_profile(&self, s: &PointSet, depth: usize) -> Result<Vec<Option<usize>>> {
        let target = self.mask_of(s)?;
        // closures[d] shrinks as d grows; a point inside it needs more than d sections
        let closures = (0..=depth)
            .map(|d| self.z_closure_mask(d, target))
            .collect::<Result<Vec<_>>>()?;
        Ok((0..self.size)
            .into_par_iter()
            .map(|a| {
                let lower = closures.iter().position(|&c| c >> a & 1 == 0)?;
                self.cover_avoiding(target, 1 << a, lower, depth).map(|c| c.len())
            })
            .collect())
    }

    /// Degree-`d` h-closure: the points that every product of at most `d`
    /// affine forms vanishing on `s` also vanishes at.
    pub fn h_closure(&self, d: usize, s: &PointSet) -> Result<PointSet> {
        if d > self.limits.search_depth {
            return Err(Error::CapExceeded {
                what: "h-closure degree",
                size: d,
                cap: self.limits.search_depth,
            });
        }
        let profile = self.avoidance_profile(s, d)?;
        Ok(PointSet::from_indices(
            self.size,
            (0..self.size).filter(|&a| s.contains(a) || profile[a].is_none()),
        ))
    }

    fn check_proper(&self, e: &WeightSet) -> Result<()> {
        if e.is_full() {
            return Err(Error::InvalidInput("covers need a proper subset of [0,N]".into()));
        }
        Ok(())
    }

    /// Fewest hyperplanes covering the lift of `e` but not the whole grid.
    pub fn hc(&self, e: &WeightSet) -> Result<usize> {
        Ok(self.hc_witness(e)?.len())
    }

    pub fn hc_witness(&self, e: &WeightSet) -> Result<HyperplaneFamily> {
        self.check_proper(e)?;
        let target = self.lift_mask(e)?;
        for d in 0..=e.len() {
            let closure = self.z_closure_mask(d, target)?;
            let open: Vec<usize> = bits(self.full_mask() & !closure).collect();
            let found = open
                .par_iter()
                .find_map_first(|&a| self.cover_avoiding(target, 1 << a, d, d));
            if let Some(chosen) = found {
                return Ok(self.family(&chosen));
            }
        }
        unreachable!("level hyperplanes always give a cover")
    }

    /// Fewest hyperplanes covering the lift of `e` while leaving a point
    /// uncovered in every layer outside `e`.
    pub fn phc(&self, e: &WeightSet) -> Result<usize> {
        Ok(self.phc_witness(e)?.len())
    }

    pub fn phc_witness(&self, e: &WeightSet) -> Result<HyperplaneFamily> {
        self.check_proper(e)?;
        let target = self.lift_mask(e)?;
        let layers = self.layer_masks();
        // a proper cover of size d leaves a point of every outside layer
        // off the degree-d Z-closure
        let mut lower = 0;
        loop {
            let closure = self.z_closure_mask(lower, target)?;
            let swallowed = |(j, &l): (usize, &Mask)| !e.contains(j) && l & !closure == 0;
            if !layers.iter().enumerate().any(swallowed) {
                break;
            }
            lower += 1;
        }
        let off_layers: Vec<Mask> = layers
            .into_iter()
            .enumerate()
            .filter(|(j, _)| !e.contains(*j))
            .map(|(_, l)| l)
            .collect();
        let relevant = off_layers.iter().fold(0, |m, l| m | l);
        let chosen = CoverProblem::new(&self.sections, target, relevant, off_layers)
            .solve(lower, e.len())
            .expect("level hyperplanes always give a proper cover");
        Ok(self.family(&chosen))
    }

    /// Fewest hyperplanes whose union meets the grid in exactly the lift of `e`.
    pub fn ehc(&self, e: &WeightSet) -> Result<usize> {
        Ok(self.ehc_witness(e)?.len())
    }

    pub fn ehc_witness(&self, e: &WeightSet) -> Result<HyperplaneFamily> {
        self.check_proper(e)?;
        if !self.grid.is_uniform() {
            return Err(Error::UnsupportedDomain(
                "exact covers are searched on uniform grids".into(),
            ));
        }
        let target = self.lift_mask(e)?;
        let mut lower = 0;
        while self.z_closure_mask(lower, target)? != target {
            lower += 1;
        }
        let outside = self.full_mask() & !target;
        let forbidden: Vec<Mask> = bits(outside).map(|b| 1 << b).collect();
        let chosen = CoverProblem::new(&self.sections, target, outside, forbidden)
            .solve(lower, e.len())
            .expect("level hyperplanes always give an exact cover");
        Ok(self.family(&chosen))
    }

    fn family(&self, chosen: &[usize]) -> HyperplaneFamily {
        HyperplaneFamily {
            forms: chosen
                .iter()
                .map(|&s| self.sections[s].realizing_form(&self.grid))
                .collect(),
        }
    }
}

/// Exact minimum set cover with side constraints: cover `target` using
/// sections so that the union never contains a whole `forbidden` mask.
/// Only the part of a section inside `target | relevant` matters.
struct CoverProblem {
    target: Mask,
    forbidden: Vec<Mask>,
    /// (covered target points, relevant side points, section id)
    cands: Vec<(Mask, Mask, usize)>,
    by_point: HashMap<usize, Vec<usize>>,
    widest: usize,
}

impl CoverProblem {
    fn new(sections: &[FlatSection], target: Mask, relevant: Mask, forbidden: Vec<Mask>) -> Self {
        let violates = |side: Mask| forbidden.iter().any(|&f| f & !side == 0);
        let mut raw: Vec<(Mask, Mask, usize)> = sections
            .iter()
            .enumerate()
            .map(|(id, s)| (s.mask & target, s.mask & relevant, id))
            .filter(|&(cover, side, _)| cover != 0 && !violates(side))
            .collect();
        // Keep a candidate only if no other covers at least as much while
        // touching at most the same side points.
        raw.sort_by(|a, b| {
            ones(b.0)
                .cmp(&ones(a.0))
                .then(ones(a.1).cmp(&ones(b.1)))
                .then(a.2.cmp(&b.2))
        });
        let mut cands: Vec<(Mask, Mask, usize)> = Vec::new();
        for c in raw {
            let dominated = cands
                .iter()
                .any(|k| c.0 & !k.0 == 0 && k.1 & !c.1 == 0);
            if !dominated {
                cands.push(c);
            }
        }
        let mut by_point: HashMap<usize, Vec<usize>> = HashMap::new();
        for (i, c) in cands.iter().enumerate() {
            for p in bits(c.0) {
                by_point.entry(p).or_default().push(i);
            }
        }
        let widest = cands.iter().map(|c| ones(c.0)).max().unwrap_or(0);
        CoverProblem {
            target,
            forbidden,
            cands,
            by_point,
            widest,
        }
    }

    /// Iterative deepening over sizes `min_size..=max_size`.
    fn solve(&self, min_size: usize, max_size: usize) -> Option<Vec<usize>> {
        let mut chosen = Vec::new();
        let mut banned = vec![false; self.cands.len()];
        for size in min_size..=max_size {
            if self.dfs(self.target, 0, size, &mut chosen, &mut banned) {
                return Some(chosen.iter().map(|&c| self.cands[c].2).collect());
            }
        }
        None
    }

    /// Once a candidate's branch fails, later siblings skip it: any cover
    /// using it was already explored in that branch.
    fn dfs(&self, uncovered: Mask, side: Mask, left: usize, chosen: &mut Vec<usize>, banned: &mut [bool]) -> bool {
        if uncovered == 0 {
            return true;
        }
        if left == 0 || ones(uncovered) > left * self.widest {
            return false;
        }
        let count = |p: &usize| {
            self.by_point
                .get(p)
                .map_or(0, |v| v.iter().filter(|&&c| !banned[c]).count())
        };
        let Some(pivot) = bits(uncovered).min_by_key(count) else {
            return true;
        };
        let Some(options) = self.by_point.get(&pivot) else {
            return false;
        };
        let mut tried = Vec::new();
        let mut found = false;
        for &c in options {
            if banned[c] {
                continue;
            }
            let (cover, s, _) = self.cands[c];
            let side = side | s;
            if !self.forbidden.iter().any(|&f| f & !side == 0) {
                chosen.push(c);
                if self.dfs(uncovered & !cover, side, left - 1, chosen, banned) {
                    found = true;
                    break;
                }
                chosen.pop();
            }
            banned[c] = true;
            tried.push(c);
        }
        for c in tried {
            banned[c] = false;
        }
        found
    }
}

pub fn h_closure(grid: &Grid, d: usize, s: &PointSet) -> Result<PointSet> {
    enumerate_sections(grid)?.h_closure(d, s)
}

pub fn hc_oracle(grid: &Grid, e: &WeightSet) -> Result<usize> {
    enumerate_sections(grid)?.hc(e)
}

pub fn phc_oracle(grid: &Grid, e: &WeightSet) -> Result<usize> {
    enumerate_sections(grid)?.phc(e)
}

pub fn ehc_oracle(grid: &Grid, e: &WeightSet) -> Result<usize> {
    enumerate_sections(grid)?.ehc(e)
}
