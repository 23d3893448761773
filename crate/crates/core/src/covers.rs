//! Closed-form covering numbers. The formulas are only known on uniform
//! grids with strictly unimodal layer sizes (the cube formulas only on
//! `{0,1}^n`), so everything else is refused rather than guessed.

use serde::Serialize;

use crate::algebra;
use crate::constructions;
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::weightset::WeightSet;

fn check_proper(grid: &Grid, e: &WeightSet) -> Result<()> {
    if e.max_weight() != grid.max_weight() {
        return Err(Error::InvalidInput(format!(
            "weight set lives in [0,{}], grid has N = {}",
            e.max_weight(),
            grid.max_weight()
        )));
    }
    if e.is_full() {
        return Err(Error::InvalidInput(
            "E = [0,N]: every cover of the whole grid is trivial".into(),
        ));
    }
    Ok(())
}

fn formula_domain(grid: &Grid, e: &WeightSet) -> Result<()> {
    grid.require_su2()?;
    check_proper(grid, e)
}

fn cube_domain(grid: &Grid, e: &WeightSet) -> Result<()> {
    if !grid.is_cube() {
        return Err(Error::UnsupportedDomain(format!(
            "hyperplane cover formulas are only known on cubes, not {grid}"
        )));
    }
    check_proper(grid, e)
}

/// Least degree of a nontrivial polynomial cover of the lift of `e`.
pub fn pc(grid: &Grid, e: &WeightSet) -> Result<usize> {
    formula_domain(grid, e)?;
    for d in 0..=grid.max_weight() {
        if e.admitting(d)?.witnessed() {
            return Ok(d);
        }
    }
    unreachable!("every proper E is N-admitting")
}

/// Least degree of a proper polynomial cover: `|E| − max{i ≤ N/2 : T_{N,i} ⊆ E}`.
pub fn ppc(grid: &Grid, e: &WeightSet) -> Result<usize> {
    formula_domain(grid, e)?;
    Ok(e.len() - max_tail(e))
}

/// Largest `i ≤ ⌊N/2⌋` with `T_{N,i} ⊆ E`.
pub fn max_tail(e: &WeightSet) -> usize {
    let n = e.max_weight();
    (0..=n / 2)
        .take_while(|&i| i == 0 || (e.contains(i - 1) && e.contains(n + 1 - i)))
        .last()
        .unwrap_or(0)
}

/// Least degree of a polynomial that is nonconstant on the grid but
/// constant on the lift of `e`; equal to [`pc`].
pub fn cert_deg(grid: &Grid, e: &WeightSet) -> Result<usize> {
    pc(grid, e)
}

/// Fewest hyperplanes covering the lift of `e` but not the whole cube.
pub fn hc_cube(grid: &Grid, e: &WeightSet) -> Result<usize> {
    cube_domain(grid, e)?;
    pc(grid, e)
}

/// Fewest hyperplanes covering the lift of `e` and missing a point of
/// every other layer of the cube.
pub fn phc_cube(grid: &Grid, e: &WeightSet) -> Result<usize> {
    cube_domain(grid, e)?;
    ppc(grid, e)
}

/// Least degree of a polynomial whose zeros on the cube are exactly the lift of `e`.
pub fn epc_cube(grid: &Grid, e: &WeightSet) -> Result<usize> {
    cube_domain(grid, e)?;
    ppc(grid, e)
}

/// [`epc_cube`] on cubes, the algebra oracle elsewhere.
pub fn epc(grid: &Grid, e: &WeightSet) -> Result<usize> {
    if grid.is_cube() {
        epc_cube(grid, e)
    } else {
        check_proper(grid, e)?;
        algebra::epc_oracle(grid, e)
    }
}

/// What is known about the exact hyperplane cover number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "value", rename_all = "lowercase")]
pub enum EhcExact {
    /// Lower and upper bounds meet.
    Proved(usize),
    /// Predicted by the `|E| − 2` conjecture for `T_{n,2} ⊆ E` on cubes; not proved.
    Conjectured(usize),
    Unknown,
}

impl EhcExact {
    pub fn proved(&self) -> Option<usize> {
        match self {
            EhcExact::Proved(v) => Some(*v),
            _ => None,
        }
    }
}

impl std::fmt::Display for EhcExact {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EhcExact::Proved(v) => write!(f, "{v}"),
            EhcExact::Conjectured(v) => write!(f, "{v}?"),
            EhcExact::Unknown => Ok(()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EhcBounds {
    pub lower: usize,
    pub upper: usize,
    pub exact: EhcExact,
}

/// Bounds on the exact hyperplane cover number of the lift of `e`.
///
/// Upper bounds come from verified families only: one level hyperplane
/// per weight, one separating hyperplane for `{0, N}` when the search finds
/// it, and the two-hyperplane family for `T_{n,2}` on cubes. The lower
/// bound is `ppc` on strictly unimodal grids (an exact cover is a proper
/// one) and trivial elsewhere.
pub fn ehc_bounds(grid: &Grid, e: &WeightSet) -> Result<EhcBounds> {
    grid.require_uniform("ehc_bounds")?;
    check_proper(grid, e)?;
    let size = e.len();
    let su2 = grid.is_su2()?;
    let lower = if su2 { ppc(grid, e)? } else { usize::from(size > 0) };
    let tail = max_tail(e);

    let mut upper = size;
    if tail >= 1 && grid.n() >= 2 && constructions::t1_form_cached(grid).is_some() {
        upper = size - 1;
    }
    let cube_t2 = grid.is_cube() && tail >= 2;
    if cube_t2 && constructions::ehc_t2_family(grid.n()).is_ok() {
        upper = size - 2;
    }

    let exact = if lower == upper {
        EhcExact::Proved(lower)
    } else if cube_t2 {
        EhcExact::Conjectured(size - 2)
    } else {
        EhcExact::Unknown
    };
    Ok(EhcBounds { lower, upper, exact })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ws(n: usize, v: &[usize]) -> WeightSet {
        WeightSet::from_iter(n, v.iter().copied()).unwrap()
    }

    #[test]
    fn formula_values() {
        let g = Grid::cube(6).unwrap();
        let top = WeightSet::interval(6, 1, 6).unwrap();
        assert_eq!(pc(&g, &top).unwrap(), 6);
        assert_eq!(ppc(&g, &top).unwrap(), 6);
        assert_eq!(pc(&g, &ws(6, &[1, 3, 5])).unwrap(), 3);
        assert_eq!(ppc(&g, &ws(6, &[0, 3, 6])).unwrap(), 2);
        assert_eq!(pc(&g, &WeightSet::empty(6)).unwrap(), 0);
        assert_eq!(ppc(&g, &WeightSet::empty(6)).unwrap(), 0);
        for i in 0..=2 {
            assert_eq!(ppc(&g, &WeightSet::two_tails(6, i).unwrap()).unwrap(), i);
        }
        let c4 = Grid::cube(4).unwrap();
        assert_eq!(hc_cube(&c4, &ws(4, &[0, 4])).unwrap(), 1);
        assert_eq!(phc_cube(&c4, &WeightSet::two_tails(4, 2).unwrap()).unwrap(), 2);
        assert_eq!(epc_cube(&Grid::cube(3).unwrap(), &ws(3, &[0])).unwrap(), 1);
        assert_eq!(cert_deg(&g, &ws(6, &[1, 3, 5])).unwrap(), 3);
    }

    #[test]
    fn domain_guards() {
        let full = WeightSet::full(4);
        assert!(matches!(pc(&Grid::cube(4).unwrap(), &full), Err(Error::InvalidInput(_))));
        // [6,2]: N = 6 but layer sizes 1,2,2,2,2,2,1 are not strictly unimodal
        let flat = Grid::uniform(&[7, 3]).unwrap();
        assert!(matches!(pc(&flat, &ws(6, &[1])), Err(Error::UnsupportedDomain(_))));
        let sq = Grid::uniform(&[3, 3]).unwrap();
        assert!(matches!(hc_cube(&sq, &ws(4, &[1])), Err(Error::UnsupportedDomain(_))));
        assert_eq!(epc(&sq, &WeightSet::two_tails(4, 2).unwrap()).unwrap(), 2);
    }

    #[test]
    fn exact_cover_bounds() {
        let sq = Grid::uniform(&[3, 3]).unwrap();
        assert_eq!(ehc_bounds(&sq, &ws(4, &[2])).unwrap().exact, EhcExact::Proved(1));

        for n in 4..=7 {
            let c = Grid::cube(n).unwrap();
            let t2 = WeightSet::two_tails(n, 2).unwrap();
            assert_eq!(ehc_bounds(&c, &t2).unwrap().exact, EhcExact::Proved(2));
            if n >= 6 {
                let mut e = t2.clone();
                e.insert(3);
                let b = ehc_bounds(&c, &e).unwrap();
                assert_eq!((b.lower, b.upper, b.exact), (3, 3, EhcExact::Proved(3)));
            }
        }
        // T_{6,3} on the cube: ppc = 3, the families give 4
        let c = Grid::cube(6).unwrap();
        let b = ehc_bounds(&c, &WeightSet::two_tails(6, 3).unwrap()).unwrap();
        assert_eq!((b.lower, b.upper, b.exact), (3, 4, EhcExact::Conjectured(4)));

        // {0,4} on [0,2]^2: no single line holds both corners without (1,1)
        let b = ehc_bounds(&sq, &ws(4, &[0, 4])).unwrap();
        assert_eq!((b.lower, b.upper, b.exact), (1, 2, EhcExact::Unknown));
    }

    #[test]
    fn exactness_serializes_as_tagged_value() {
        let j = serde_json::to_string(&EhcExact::Conjectured(4)).unwrap();
        assert_eq!(j, r#"{"status":"conjectured","value":4}"#);
        assert_eq!(EhcExact::Conjectured(4).to_string(), "4?");
    }
}
