//! Explicit covering polynomials and hyperplane families. Everything is
//! checked against the grid by evaluation before it is returned.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::{ClosureOracle, OracleLimits};
use crate::covers;
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::hyperplane::{HyperplaneFamily, LinearForm};
use crate::poly::Poly;
use crate::weightset::WeightSet;

/// Largest cube dimension the cube constructions verify exhaustively.
pub const MAX_VERIFY_CUBE: usize = 20;

fn level_form(n: usize, t: usize) -> Poly {
    Poly::linear(&vec![BigInt::one(); n], &-BigInt::from(t))
}

fn fail(what: &str) -> Error {
    Error::Witness(format!("{what} failed verification"))
}

/// `∏_{t∈E} (X_1 + … + X_n − t)`.
///
/// On a uniform grid it depends only on the weight, so one point per layer
/// suffices when the grid is too large to sweep.
pub fn level_product(grid: &Grid, e: &WeightSet) -> Result<Poly> {
    grid.require_uniform("level_product")?;
    if e.max_weight() != grid.max_weight() {
        return Err(Error::InvalidInput("weight set does not match grid".into()));
    }
    let n = grid.n();
    let p = e
        .iter()
        .fold(Poly::constant(n, 1), |acc, t| &acc * &level_form(n, t));
    let ok = match grid.size().filter(|&s| s <= OracleLimits::default().max_points) {
        Some(size) => (0..size).all(|idx| p.eval(&grid.coords(idx)).is_zero() == e.contains(grid.weight(idx))),
        None => (0..=grid.max_weight()).all(|j| {
            let pt = layer_representative(grid, j);
            p.eval(&pt).is_zero() == e.contains(j)
        }),
    };
    if !ok || p.degree() != e.len() {
        return Err(fail("level product"));
    }
    Ok(p)
}

/// The lexicographically largest point of layer `j` (greedy fill from axis 1).
fn layer_representative(grid: &Grid, mut j: usize) -> Vec<i64> {
    grid.dims()
        .iter()
        .map(|&k| {
            let x = j.min(k - 1);
            j -= x;
            x as i64
        })
        .collect()
}

/// `(X_1 − X_2)(X_3 − X_4)⋯(X_{2i−1} − X_{2i})` on the cube `{0,1}^n`.
pub fn pairing_poly(n: usize, i: usize) -> Result<Poly> {
    if 2 * i > n {
        return Err(Error::InvalidInput(format!("pairing needs 2i <= n, got i={i}, n={n}")));
    }
    let mut p = Poly::constant(n, 1);
    for k in 0..i {
        p = &p * &(&Poly::var(n, 2 * k) - &Poly::var(n, 2 * k + 1));
    }
    if n <= MAX_VERIFY_CUBE {
        let cube = Grid::cube(n)?;
        let tails = WeightSet::two_tails(n, i)?;
        for idx in 0..1usize << n {
            if tails.contains(cube.weight(idx)) && !p.eval(&cube.coords(idx)).is_zero() {
                return Err(fail("pairing polynomial"));
            }
        }
        // (10)^i 1^{j-i} 0^{n-j-i}: every pair contributes 1 - 0
        for j in i..=n - i {
            let x: Vec<i64> = (0..n)
                .map(|c| i64::from(if c < 2 * i { c % 2 == 0 } else { c < i + j }))
                .collect();
            if !p.eval(&x).is_one() {
                return Err(fail("pairing polynomial"));
            }
        }
    }
    Ok(p)
}

/// A proper polynomial cover of the lift of `e` of least degree.
///
/// Starts from an integer basis of the degree-`ppc` polynomials vanishing
/// on the lift and adds multiples `t·B` (t = 1, −1, 2, −2, …) until every
/// layer outside `e` has a nonzero point. Each earlier layer keeps a fixed
/// witness point, and each such point rules out at most one `t`, so every
/// step terminates.
pub fn ppc_witness(grid: &Grid, e: &WeightSet) -> Result<Poly> {
    let d = covers::ppc(grid, e)?;
    let oracle = ClosureOracle::new(grid, d)?;
    let lifted = grid.lift(e)?;
    let basis = oracle.vanishing_basis(&lifted)?;
    let size = grid.size().expect("oracle checked the size");
    let n = grid.n();

    let mut p = Poly::zero(n);
    let mut anchors: Vec<Vec<i64>> = Vec::new();
    for j in (0..=grid.max_weight()).filter(|&j| !e.contains(j)) {
        let layer: Vec<Vec<i64>> = (0..size)
            .filter(|&idx| grid.weight(idx) == j)
            .map(|idx| grid.coords(idx))
            .collect();
        if let Some(x) = layer.iter().find(|x| !p.eval(x).is_zero()) {
            anchors.push(x.clone());
            continue;
        }
        let (b, x) = basis
            .iter()
            .find_map(|b| layer.iter().find(|x| !b.eval(x).is_zero()).map(|x| (b, x.clone())))
            .ok_or_else(|| fail("proper cover search"))?;
        let step = (1i64..)
            .flat_map(|t| [t, -t])
            .map(|t| &p + &(&Poly::constant(n, t) * b))
            .find(|q| !q.eval(&x).is_zero() && anchors.iter().all(|a| !q.eval(a).is_zero()))
            .expect("finitely many bad multipliers");
        p = step;
        anchors.push(x);
    }
    let p = p.primitive();
    verify_proper_cover(grid, e, &p)?;
    if p.degree() != d {
        return Err(fail("proper cover degree"));
    }
    Ok(p)
}

/// Checks that `p` vanishes on the lift of `e` and is nonzero somewhere on
/// every other layer.
pub fn verify_proper_cover(grid: &Grid, e: &WeightSet, p: &Poly) -> Result<()> {
    let size = grid.size().ok_or_else(|| fail("proper cover (grid too large)"))?;
    let mut hit = vec![false; grid.max_weight() + 1];
    for idx in 0..size {
        let w = grid.weight(idx);
        let zero = p.eval(&grid.coords(idx)).is_zero();
        if e.contains(w) && !zero {
            return Err(fail("proper cover"));
        }
        hit[w] |= !zero;
    }
    if (0..hit.len()).any(|j| !e.contains(j) && !hit[j]) {
        return Err(fail("proper cover"));
    }
    Ok(())
}

/// Two hyperplanes whose union meets `{0,1}^n` exactly in the layers
/// `{0, 1, n−1, n}`.
pub fn ehc_t2_family(n: usize) -> Result<HyperplaneFamily> {
    if n < 4 {
        return Err(Error::InvalidInput(format!("needs n >= 4, got {n}")));
    }
    let c = |v: i64| BigInt::from(v);
    let nn = n as i64;
    let mut h0 = vec![c(0); n];
    h0[1] = c(-(nn - 2));
    h0[2..].iter_mut().for_each(|a| *a = c(1));
    let mut h1 = vec![c(1); n];
    h1[0] = c(-(nn - 3));
    let fam = HyperplaneFamily {
        forms: vec![
            LinearForm(Poly::linear(&h0, &c(0))),
            LinearForm(Poly::linear(&h1, &c(-1))),
        ],
    };
    if n <= MAX_VERIFY_CUBE {
        let cube = Grid::cube(n)?;
        if fam.trace(&cube)? != cube.lift(&WeightSet::two_tails(n, 2)?)? {
            return Err(fail("two-tails family"));
        }
    }
    Ok(fam)
}

/// Candidate vectors the norm-ordered search examines before it falls back
/// to the mixed-radix construction.
pub const T1_SEARCH_BUDGET: usize = 200_000;

/// A hyperplane through the origin and the far corner meeting the grid in
/// no other point.
///
/// Forms `Σ a_i X_i` are tried by increasing max-norm, then
/// lexicographically, up to max-norm `max_norm` or [`T1_SEARCH_BUDGET`]
/// candidates. After that, for each axis `p` the form
/// `m_p·W(x) − W(m)·x_p` is tried, with `W` the mixed-radix index of the
/// other coordinates and `m` the far corner: when `gcd(m_p, W(m)) = 1` its
/// only grid zeros are the two extremes.
pub fn ehc_t1_form(grid: &Grid, max_norm: i64) -> Result<LinearForm> {
    grid.require_uniform("ehc_t1_form")?;
    let n = grid.n();
    if n < 2 || grid.max_weight() == 0 {
        return Err(Error::UnsupportedDomain(
            "a hyperplane in one dimension is a point; it cannot hold both extremes".into(),
        ));
    }
    let m: Vec<i64> = grid.dims().iter().map(|&k| k as i64 - 1).collect();
    let g = m.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g > 1 {
        // the point corner/g lies on every hyperplane through 0 and the corner
        return Err(Error::UnsupportedDomain(format!(
            "no such hyperplane: every side length is divisible by {g}, so (corner)/{g} lies on it"
        )));
    }
    let size = grid.size().ok_or_else(|| fail("t1 form (grid too large)"))?;
    let corner = size - 1;
    let points: Vec<Vec<i64>> = (1..corner).map(|idx| grid.coords(idx)).collect();
    let separates = |coeffs: &[i64]| {
        !points
            .iter()
            .any(|x| x.iter().zip(coeffs).map(|(x, c)| x * c).sum::<i64>() == 0)
    };
    let finish = |coeffs: &[i64]| -> Result<LinearForm> {
        let big: Vec<BigInt> = coeffs.iter().map(|&v| BigInt::from(v)).collect();
        let form = LinearForm(Poly::linear(&big, &BigInt::zero()).primitive());
        let trace = form.trace(grid)?;
        if trace.len() != 2 || !trace.contains(0) || !trace.contains(corner) {
            return Err(fail("t1 form"));
        }
        Ok(form)
    };

    let pivot = (0..n).max_by_key(|&i| (m[i], std::cmp::Reverse(i))).expect("n >= 2");
    let free: Vec<usize> = (0..n).filter(|&i| i != pivot).collect();
    let mut budget = T1_SEARCH_BUDGET;
    'norms: for r in 1..=max_norm {
        let mut a = vec![-r; n - 1];
        loop {
            if budget == 0 {
                break 'norms;
            }
            budget -= 1;
            let partial: i64 = free.iter().zip(&a).map(|(&i, &v)| v * m[i]).sum();
            if partial % m[pivot] == 0 {
                let last = -partial / m[pivot];
                let norm = a.iter().map(|v| v.abs()).max().unwrap_or(0).max(last.abs());
                if norm == r {
                    let mut coeffs = vec![0i64; n];
                    for (&i, &v) in free.iter().zip(&a) {
                        coeffs[i] = v;
                    }
                    coeffs[pivot] = last;
                    if separates(&coeffs) {
                        return finish(&coeffs);
                    }
                }
            }
            if !next_in_box(&mut a, r) {
                break;
            }
        }
    }

    for p in (0..n).filter(|&p| m[p] > 0) {
        let mut coeffs = vec![0i64; n];
        let mut w = 1i64;
        for q in (0..n).filter(|&q| q != p) {
            coeffs[q] = m[p] * w;
            w *= m[q] + 1;
        }
        coeffs[p] = -(w - 1);
        if m[p].gcd(&(w - 1)) == 1 && separates(&coeffs) {
            return finish(&coeffs);
        }
    }
    Err(Error::Witness(format!(
        "no separating form found (max-norm {max_norm}, {T1_SEARCH_BUDGET} candidates, mixed-radix fallback)"
    )))
}

/// [`ehc_t1_form`] with the default radius, memoized per grid shape.
pub fn t1_form_cached(grid: &Grid) -> Option<LinearForm> {
    static CACHE: OnceLock<Mutex<HashMap<Vec<usize>, Option<LinearForm>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = grid.dims().to_vec();
    if let Some(hit) = cache.lock().expect("cache lock").get(&key) {
        return hit.clone();
    }
    let found = ehc_t1_form(grid, default_t1_norm(grid)).ok();
    cache.lock().expect("cache lock").insert(key, found.clone());
    found
}

/// Advances `a` lexicographically through `[-r, r]^len`; false when done.
fn next_in_box(a: &mut [i64], r: i64) -> bool {
    for k in (0..a.len()).rev() {
        if a[k] < r {
            a[k] += 1;
            a[k + 1..].iter_mut().for_each(|v| *v = -r);
            return true;
        }
    }
    false
}

/// Default search radius for [`ehc_t1_form`].
pub fn default_t1_norm(grid: &Grid) -> i64 {
    let widest = grid.dims().iter().copied().max().unwrap_or(1) as i64;
    (grid.n() as i64).max(widest) + 2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_products() {
        let sq = Grid::uniform(&[3, 3]).unwrap();
        let p = level_product(&sq, &WeightSet::from_iter(4, [2]).unwrap()).unwrap();
        assert_eq!(p.to_string(), "X1 + X2 - 2");
        let c = Grid::cube(5).unwrap();
        let af = level_product(&c, &WeightSet::interval(5, 1, 5).unwrap()).unwrap();
        assert_eq!(af.degree(), 5);
        assert_eq!(level_product(&c, &WeightSet::empty(5)).unwrap(), Poly::constant(5, 1));
    }

    #[test]
    fn pairing_polys() {
        let p = pairing_poly(4, 2).unwrap();
        assert_eq!(p.degree(), 2);
        assert!(p.eval(&[1, 0, 1, 0]).is_one());
        assert_eq!(pairing_poly(3, 0).unwrap(), Poly::constant(3, 1));
        let p6 = pairing_poly(6, 3).unwrap();
        let cube = Grid::cube(6).unwrap();
        let t = cube.lift(&WeightSet::two_tails(6, 3).unwrap()).unwrap();
        assert_eq!(t.len(), 44);
        assert!(t.iter().all(|idx| p6.eval(&cube.coords(idx)).is_zero()));
        assert!(pairing_poly(3, 2).is_err());
    }

    #[test]
    fn proper_cover_witnesses() {
        let sq = Grid::uniform(&[3, 3]).unwrap();
        let t = WeightSet::two_tails(4, 2).unwrap();
        let p = ppc_witness(&sq, &t).unwrap();
        assert_eq!(p.degree(), 2);

        let cube = Grid::cube(5).unwrap();
        for i in 0..=2 {
            let t = WeightSet::two_tails(5, i).unwrap();
            assert_eq!(ppc_witness(&cube, &t).unwrap().degree(), i);
        }
        assert_eq!(ppc_witness(&cube, &WeightSet::empty(5)).unwrap(), Poly::constant(5, 1));
    }

    #[test]
    fn two_tails_family() {
        for n in 4..=8 {
            assert_eq!(ehc_t2_family(n).unwrap().len(), 2);
        }
        let fam = ehc_t2_family(4).unwrap();
        let cube = Grid::cube(4).unwrap();
        let z0 = fam.forms[0].trace(&cube).unwrap();
        let pts: Vec<Vec<i64>> = z0.iter().map(|i| cube.coords(i)).collect();
        assert_eq!(pts, vec![vec![0, 0, 0, 0], vec![0, 1, 1, 1], vec![1, 0, 0, 0], vec![1, 1, 1, 1]]);
    }

    #[test]
    fn t1_forms() {
        let sq = Grid::cube(2).unwrap();
        let f = ehc_t1_form(&sq, 4).unwrap();
        assert_eq!(f.poly().to_string(), "X1 - X2");
        for n in 2..=9 {
            let c = Grid::cube(n).unwrap();
            assert!(ehc_t1_form(&c, default_t1_norm(&c)).is_ok(), "n={n}");
        }
        // the norm search alone is out of budget here; the fallback is exact
        let c = Grid::cube(5).unwrap();
        let f = ehc_t1_form(&c, 0).unwrap();
        assert_eq!(f.poly().to_string(), "-15*X1 + X2 + 2*X3 + 4*X4 + 8*X5");
        let mixed = Grid::uniform(&[2, 3, 4]).unwrap();
        assert!(ehc_t1_form(&mixed, default_t1_norm(&mixed)).is_ok());
        // (1,1) sits on every line through (0,0) and (2,2)
        let three = Grid::uniform(&[3, 3]).unwrap();
        assert!(matches!(ehc_t1_form(&three, 10), Err(Error::UnsupportedDomain(_))));
        assert!(ehc_t1_form(&Grid::cube(1).unwrap(), 3).is_err());
    }
}
