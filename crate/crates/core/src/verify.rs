//! The acceptance suite: every check is exhaustive over a small family of
//! grids or seeded-random with a fixed sample size.

use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{self, ClosureOracle};
use crate::constructions;
use crate::covers::{self, EhcExact};
use crate::error::Result;
use crate::grid::{Grid, PointSet};
use crate::hyperplane::{HyperplaneLimits, SectionIndex};
use crate::weightset::WeightSet;

/// Random point sets checked for `H_d(S) = H_d(Z-cl_d(S))` in criterion 7.
pub const HILBERT_SAMPLES: usize = 500;
/// Random L̄ instances compared against naive iteration in criterion 11.
pub const LBAR_SAMPLES: usize = 10_000;
/// Largest N for those instances.
pub const LBAR_SAMPLE_MAX_N: usize = 10_000;
/// Criterion 11 time budget for one L̄ at N = 10^6.
pub const LBAR_BUDGET: Duration = Duration::from_secs(1);
/// Criterion 11 bound on time(10^6) / time(10^5).
pub const LBAR_SCALING_BOUND: f64 = 20.0;
const MAX_LISTED_FAILURES: usize = 8;

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Adds the expensive instances: the 5-cube in criterion 4 and the
    /// full section search on the 6-cube in criterion 6.
    pub slow: bool,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { slow: false, seed: 0x005e_ed0f_c0de }
    }
}

impl VerifyOptions {
    /// Default options, with `slow` taken from `WDC_SLOW`.
    pub fn from_env() -> Self {
        let slow = std::env::var("WDC_SLOW").is_ok_and(|v| !v.is_empty() && v != "0");
        VerifyOptions { slow, ..Default::default() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    /// Passes by producing its report; the outcome is informational.
    pub experimental: bool,
    pub checks: usize,
    pub detail: String,
    pub failures: Vec<String>,
}

impl CriterionReport {
    pub fn status(&self) -> &'static str {
        if self.passed {
            "PASS"
        } else {
            "FAIL"
        }
    }
}

#[derive(Default)]
struct Tally {
    checks: usize,
    failed: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_LISTED_FAILURES {
                self.failures.push(what());
            }
        }
    }

    fn absorb(&mut self, other: Tally) {
        self.checks += other.checks;
        self.failed += other.failed;
        for f in other.failures {
            if self.failures.len() < MAX_LISTED_FAILURES {
                self.failures.push(f);
            }
        }
        self.notes.extend(other.notes);
    }

    fn error(&mut self, context: &str, e: crate::Error) {
        self.check(false, || format!("{context}: {e}"));
    }

    fn report(self, id: u8, title: &'static str, experimental: bool) -> CriterionReport {
        let mut detail = format!("{} checks, {} failed", self.checks, self.failed);
        for n in &self.notes {
            detail.push_str("; ");
            detail.push_str(n);
        }
        CriterionReport {
            id,
            title,
            passed: experimental || self.failed == 0,
            experimental,
            checks: self.checks,
            detail,
            failures: self.failures,
        }
    }
}

fn merged(parts: Vec<Tally>) -> Tally {
    parts.into_iter().fold(Tally::default(), |mut acc, t| {
        acc.absorb(t);
        acc
    })
}

/// Uniform grids with strictly unimodal layer sizes used throughout.
pub fn suite_grids() -> Vec<Grid> {
    let mut out: Vec<Grid> = (1..=6).map(|n| Grid::cube(n).expect("cube")).collect();
    for dims in [&[3, 3][..], &[3, 3, 3], &[4, 4], &[2, 3], &[2, 2, 3], &[4, 3]] {
        out.push(Grid::uniform(dims).expect("suite grid"));
    }
    out
}

fn proper_subsets(n: usize) -> impl Iterator<Item = WeightSet> {
    WeightSet::all_subsets(n).filter(|e| !e.is_full())
}

pub const TITLES: [&str; 12] = [
    "Z*-closure equals L-bar on every suite grid",
    "[0,2]^3 degree-3 Z-closure of T_{6,3} gains exactly (1,1,1)",
    "[0,2]^2: Z-closure of T_{4,2} is tight, h-closure is the grid",
    "h-closure equals Z-closure on cubes",
    "covering-number formulas agree with both oracles",
    "E = [1,N] needs degree N everywhere",
    "Hilbert function closed form; closures keep the Hilbert function",
    "parity and residue classes fill under L-bar",
    "exact covers: EPC = PPC and the EHC proposition",
    "weights on {0,1,3}^2 versus [0,2]^2",
    "L-bar is linear time and matches naive iteration",
    "EHC = |E| - 2 above T_{n,2}",
];

pub fn run_all(opts: &VerifyOptions) -> Vec<CriterionReport> {
    (1..=12).map(|id| run_criterion(id, opts)).collect()
}

pub fn run_criterion(id: u8, opts: &VerifyOptions) -> CriterionReport {
    let title = TITLES[usize::from(id) - 1];
    let tally = match id {
        1 => main_characterization(),
        2 => three_cube_counterexample(),
        3 => square_counterexample(),
        4 => h_closure_on_cubes(opts),
        5 => formulas_vs_oracles(),
        6 => full_top_interval(opts),
        7 => hilbert(opts),
        8 => residue_classes(),
        9 => exact_covers(),
        10 => nonuniform_digression(),
        11 => lbar_performance(opts),
        12 => conjecture_harness(),
        _ => panic!("criteria are numbered 1..=12"),
    };
    tally.report(id, title, id == 12)
}

fn main_characterization() -> Tally {
    let jobs: Vec<(Grid, usize)> = suite_grids()
        .into_iter()
        .flat_map(|g| (0..=g.max_weight()).map(move |d| (g.clone(), d)))
        .collect();
    merged(
        jobs.par_iter()
            .map(|(g, d)| {
                let mut t = Tally::default();
                let oracle = match ClosureOracle::new(g, *d) {
                    Ok(o) => o,
                    Err(e) => {
                        t.error(&format!("{g} d={d}"), e);
                        return t;
                    }
                };
                for e in WeightSet::all_subsets(g.max_weight()) {
                    let z = oracle.z_star_closure(&e);
                    let l = e.l_bar(*d);
                    match (z, l) {
                        (Ok(z), Ok(l)) => t.check(z == l, || format!("{g} d={d} E={e}: Z*={z} L={l}")),
                        (Err(x), _) | (_, Err(x)) => t.error(&format!("{g} d={d} E={e}"), x),
                    }
                }
                t
            })
            .collect(),
    )
}

fn three_cube_counterexample() -> Tally {
    let mut t = Tally::default();
    let run = || -> Result<(PointSet, PointSet, WeightSet, Grid, WeightSet)> {
        let g = Grid::uniform(&[3, 3, 3])?;
        let e = WeightSet::two_tails(6, 3)?;
        let lifted = g.lift(&e)?;
        let z = algebra::z_closure(&g, 3, &lifted)?;
        let zs = algebra::z_star_closure(&g, 3, &e)?;
        Ok((lifted, z, zs, g, e))
    };
    match run() {
        Ok((lifted, z, zs, g, e)) => {
            let mut expected = lifted.clone();
            expected.insert(g.index_of(&[1, 1, 1]).expect("center"));
            t.check(z == expected, || {
                let extra: Vec<Vec<i64>> = z.difference(&lifted).iter().map(|i| g.coords(i)).collect();
                format!("closure adds {extra:?}")
            });
            t.check(zs == e, || format!("Z*-closure is {zs}"));
        }
        Err(e) => t.error("[0,2]^3", e),
    }
    t
}

fn square_counterexample() -> Tally {
    let mut t = Tally::default();
    let run = || -> Result<(PointSet, PointSet, PointSet)> {
        let g = Grid::uniform(&[3, 3])?;
        let lifted = g.lift(&WeightSet::two_tails(4, 2)?)?;
        let z = algebra::z_closure(&g, 2, &lifted)?;
        let h = SectionIndex::new(&g, HyperplaneLimits::default())?.h_closure(2, &lifted)?;
        Ok((lifted, z, h))
    };
    match run() {
        Ok((lifted, z, h)) => {
            t.check(z == lifted, || format!("Z-closure has {} points", z.len()));
            t.check(h.is_full(), || format!("h-closure has {} of 9 points", h.len()));
        }
        Err(e) => t.error("[0,2]^2", e),
    }
    t
}

fn cube_limits(n: usize) -> HyperplaneLimits {
    HyperplaneLimits {
        max_points: 1 << n,
        search_depth: n,
    }
}

fn h_closure_on_cubes(opts: &VerifyOptions) -> Tally {
    let top = if opts.slow { 5 } else { 4 };
    let mut t = Tally::default();
    for n in 1..=top {
        let Ok(g) = Grid::cube(n) else { continue };
        let idx = match SectionIndex::new(&g, cube_limits(n)) {
            Ok(i) => i,
            Err(e) => {
                t.error(&format!("cube {n}"), e);
                continue;
            }
        };
        let jobs: Vec<(WeightSet, usize)> = WeightSet::all_subsets(n)
            .flat_map(|e| (0..=n).map(move |d| (e.clone(), d)))
            .collect();
        t.absorb(merged(
            jobs.par_iter()
                .map(|(e, d)| {
                    let mut t = Tally::default();
                    let res = g.lift(e).and_then(|s| {
                        Ok((algebra::z_closure(&g, *d, &s)?, idx.h_closure(*d, &s)?))
                    });
                    match res {
                        Ok((z, h)) => t.check(z == h, || {
                            format!("n={n} d={d} E={e}: |Z-cl|={} |h-cl|={}", z.len(), h.len())
                        }),
                        Err(x) => t.error(&format!("n={n} d={d} E={e}"), x),
                    }
                    t
                })
                .collect(),
        ));
    }
    if !opts.slow {
        t.notes.push("n=5 skipped (set WDC_SLOW=1)".into());
    }
    t
}

/// Least d whose Z*-closure satisfies `pred`, by the algebra oracle.
fn least_degree(g: &Grid, e: &WeightSet, pred: impl Fn(&WeightSet) -> bool) -> Result<Option<usize>> {
    for d in 0..=g.max_weight() {
        if pred(&algebra::z_star_closure(g, d, e)?) {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

fn formulas_vs_oracles() -> Tally {
    let grids = suite_grids();
    let mut t = merged(
        grids
            .par_iter()
            .map(|g| {
                let mut t = Tally::default();
                let n = g.max_weight();
                for e in proper_subsets(n) {
                    let res = (|| -> Result<_> {
                        Ok((
                            covers::pc(g, &e)?,
                            covers::ppc(g, &e)?,
                            covers::cert_deg(g, &e)?,
                            least_degree(g, &e, |z| !z.is_full())?,
                            least_degree(g, &e, |z| z == &e)?,
                        ))
                    })();
                    match res {
                        Ok((pc, ppc, cert, zpc, zppc)) => {
                            t.check(Some(pc) == zpc, || format!("{g} E={e}: pc={pc} oracle={zpc:?}"));
                            t.check(Some(ppc) == zppc, || format!("{g} E={e}: ppc={ppc} oracle={zppc:?}"));
                            t.check(cert == pc, || format!("{g} E={e}: cert_deg={cert} pc={pc}"));
                        }
                        Err(x) => t.error(&format!("{g} E={e}"), x),
                    }
                }
                t
            })
            .collect(),
    );
    for n in 1..=4 {
        let Ok(g) = Grid::cube(n) else { continue };
        let idx = match SectionIndex::new(&g, cube_limits(n)) {
            Ok(i) => i,
            Err(e) => {
                t.error(&format!("cube {n}"), e);
                continue;
            }
        };
        let sets: Vec<WeightSet> = proper_subsets(n).collect();
        t.absorb(merged(
            sets.par_iter()
                .map(|e| {
                    let mut t = Tally::default();
                    let res = (|| -> Result<_> {
                        Ok((covers::pc(&g, e)?, covers::ppc(&g, e)?, idx.hc(e)?, idx.phc(e)?))
                    })();
                    match res {
                        Ok((pc, ppc, hc, phc)) => {
                            t.check(hc == pc, || format!("n={n} E={e}: hc oracle={hc} pc={pc}"));
                            t.check(phc == ppc, || format!("n={n} E={e}: phc oracle={phc} ppc={ppc}"));
                        }
                        Err(x) => t.error(&format!("n={n} E={e}"), x),
                    }
                    t
                })
                .collect(),
        ));
    }
    t
}

fn full_top_interval(opts: &VerifyOptions) -> Tally {
    let grids = suite_grids();
    let mut t = merged(
        grids
            .par_iter()
            .map(|g| {
                let mut t = Tally::default();
                let n = g.max_weight();
                let res = (|| -> Result<()> {
                    let e = WeightSet::interval(n, 1, n)?;
                    t.check(covers::pc(g, &e)? == n, || format!("{g}: pc"));
                    t.check(covers::ppc(g, &e)? == n, || format!("{g}: ppc"));
                    let zpc = least_degree(g, &e, |z| !z.is_full())?;
                    let zppc = least_degree(g, &e, |z| z == &e)?;
                    t.check(zpc == Some(n), || format!("{g}: algebra oracle pc = {zpc:?}"));
                    t.check(zppc == Some(n), || format!("{g}: algebra oracle ppc = {zppc:?}"));

                    let points = g.size().unwrap_or(usize::MAX);
                    if points <= 40 || opts.slow {
                        let limits = HyperplaneLimits { max_points: points, search_depth: n };
                        let idx = SectionIndex::new(g, limits)?;
                        let (hc, phc) = (idx.hc(&e)?, idx.phc(&e)?);
                        t.check(hc == n, || format!("{g}: hyperplane oracle hc = {hc}"));
                        t.check(phc == n, || format!("{g}: hyperplane oracle phc = {phc}"));
                    } else {
                        // zpc = N: no polynomial of degree < N, in particular no
                        // product of fewer than N forms, covers E without the
                        // origin. The N level hyperplanes attain it.
                        let levels = crate::hyperplane::HyperplaneFamily {
                            forms: e
                                .iter()
                                .map(|j| {
                                    let one = WeightSet::from_iter(n, [j])?;
                                    constructions::level_product(g, &one)
                                        .map(crate::hyperplane::LinearForm)
                                })
                                .collect::<Result<_>>()?,
                        };
                        let proper = levels.trace(g)? == g.lift(&e)?;
                        t.check(proper && levels.len() == n, || format!("{g}: level family"));
                        t.notes.push(format!(
                            "{g}: hc = phc = {n} from the algebra bound plus level hyperplanes (section search with WDC_SLOW=1)"
                        ));
                    }
                    Ok(())
                })();
                if let Err(x) = res {
                    t.error(&format!("{g}"), x);
                }
                t
            })
            .collect(),
    );
    t.notes.sort();
    t
}

fn hilbert(opts: &VerifyOptions) -> Tally {
    let jobs: Vec<(usize, usize)> = (1..=6).flat_map(|n| (0..=n).map(move |d| (n, d))).collect();
    let mut t = merged(
        jobs.par_iter()
            .map(|&(n, d)| {
                let mut t = Tally::default();
                let g = Grid::cube(n).expect("cube");
                let oracle = match ClosureOracle::new(&g, d) {
                    Ok(o) => o,
                    Err(x) => {
                        t.error(&format!("n={n} d={d}"), x);
                        return t;
                    }
                };
                for e in WeightSet::all_subsets(n) {
                    match g.lift(&e).and_then(|s| oracle.hilbert(&s)) {
                        Ok(h) => {
                            let closed = algebra::cube_hilbert_closed_form(n, d, &e);
                            t.check(h as u128 == closed, || format!("n={n} d={d} E={e}: rank {h}, formula {closed}"));
                        }
                        Err(x) => t.error(&format!("n={n} d={d} E={e}"), x),
                    }
                }
                t
            })
            .collect(),
    );
    let mut rng = StdRng::seed_from_u64(opts.seed);
    let samples: Vec<(usize, usize, Vec<usize>)> = (0..HILBERT_SAMPLES)
        .map(|_| {
            let n = rng.gen_range(1..=5);
            let d = rng.gen_range(0..=n);
            let pts = (0..1usize << n).filter(|_| rng.gen_bool(0.5)).collect();
            (n, d, pts)
        })
        .collect();
    t.absorb(merged(
        samples
            .par_iter()
            .map(|(n, d, pts)| {
                let mut t = Tally::default();
                let res = (|| -> Result<(usize, usize)> {
                    let g = Grid::cube(*n)?;
                    let oracle = ClosureOracle::new(&g, *d)?;
                    let a = PointSet::from_indices(1 << n, pts.iter().copied());
                    Ok((oracle.hilbert(&a)?, oracle.hilbert(&oracle.z_closure(&a)?)?))
                })();
                match res {
                    Ok((ha, hz)) => t.check(ha == hz, || format!("n={n} d={d} A={pts:?}: {ha} vs {hz}")),
                    Err(x) => t.error(&format!("n={n} d={d}"), x),
                }
                t
            })
            .collect(),
    ));
    t.notes.push(format!("{HILBERT_SAMPLES} random closure instances, seed {:#x}", opts.seed));
    t
}

fn residue_classes() -> Tally {
    let mut t = Tally::default();
    for n in (2..=12).step_by(2) {
        for i in 0..2 {
            let res = WeightSet::residue_class(n, 2, i).and_then(|e| e.l_bar(n / 2 - 1));
            match res {
                Ok(l) => t.check(l.is_full(), || format!("n={n} parity {i}: {l}")),
                Err(x) => t.error(&format!("n={n}"), x),
            }
        }
    }
    for n in 1..=14 {
        for m in 1..=n {
            for i in 0..m {
                let res = WeightSet::residue_class(n, m, i).and_then(|e| e.l_bar(n / m - 1));
                match res {
                    Ok(l) => t.check(l.is_full(), || format!("N={n} m={m} i={i}: {l}")),
                    Err(x) => t.error(&format!("N={n} m={m} i={i}"), x),
                }
            }
        }
    }
    t
}

fn exact_covers() -> Tally {
    let mut t = Tally::default();
    // EPC = PPC on cubes
    let jobs: Vec<(usize, WeightSet)> = (1..=5).flat_map(|n| proper_subsets(n).map(move |e| (n, e))).collect();
    t.absorb(merged(
        jobs.par_iter()
            .map(|(n, e)| {
                let mut t = Tally::default();
                let res = Grid::cube(*n).and_then(|g| Ok((algebra::epc_oracle(&g, e)?, covers::ppc(&g, e)?)));
                match res {
                    Ok((epc, ppc)) => t.check(epc == ppc, || format!("n={n} E={e}: epc oracle={epc} ppc={ppc}")),
                    Err(x) => t.error(&format!("n={n} E={e}"), x),
                }
                t
            })
            .collect(),
    ));

    // the EHC proposition, case by case, against the section search
    let mut grids: Vec<Grid> = (1..=4).map(|n| Grid::cube(n).expect("cube")).collect();
    grids.push(Grid::uniform(&[3, 3]).expect("square"));
    for g in &grids {
        let n = g.max_weight();
        let idx = match SectionIndex::new(g, HyperplaneLimits { max_points: 128, search_depth: n }) {
            Ok(i) => i,
            Err(x) => {
                t.error(&format!("{g}"), x);
                continue;
            }
        };
        let t1 = WeightSet::two_tails(n, 1).expect("T1");
        let t2 = WeightSet::two_tails(n, 2.min(n)).expect("T2");
        let sets: Vec<WeightSet> = proper_subsets(n).collect();
        t.absorb(merged(
            sets.par_iter()
                .map(|e| {
                    let mut t = Tally::default();
                    let res = (|| -> Result<_> { Ok((idx.ehc(e)?, covers::ehc_bounds(g, e)?)) })();
                    let (ehc, bounds) = match res {
                        Ok(v) => v,
                        Err(x) => {
                            t.error(&format!("{g} E={e}"), x);
                            return t;
                        }
                    };
                    let claim = if !t1.is_subset(e) {
                        Some(("(a)", e.len()))
                    } else if !t2.is_subset(e) {
                        Some(("(b)", e.len() - 1))
                    } else if g.is_cube() && n >= 4 && *e == t2 {
                        Some(("(c)", 2))
                    } else {
                        None
                    };
                    if let Some((case, want)) = claim {
                        t.check(ehc == want, || format!("{g} E={e}: case {case} claims {want}, search finds {ehc}"));
                    }
                    t.check(bounds.lower <= ehc && ehc <= bounds.upper, || {
                        format!("{g} E={e}: ehc {ehc} outside bounds {}..{}", bounds.lower, bounds.upper)
                    });
                    if let EhcExact::Proved(v) = bounds.exact {
                        t.check(v == ehc, || format!("{g} E={e}: bounds prove {v}, search finds {ehc}"));
                    }
                    t
                })
                .collect(),
        ));
    }
    for n in 4..=8 {
        let ok = constructions::ehc_t2_family(n).is_ok_and(|f| f.len() == 2);
        t.check(ok, || format!("two-hyperplane family for T_{{{n},2}}"));
    }
    t
}

fn nonuniform_digression() -> Tally {
    let mut t = Tally::default();
    let run = || -> Result<(WeightSet, WeightSet)> {
        let h = Grid::with_levels(vec![vec![0, 1, 3], vec![0, 1, 3]])?;
        let g = Grid::uniform(&[3, 3])?;
        let e = WeightSet::from_iter(4, [2])?;
        Ok((algebra::z_star_closure(&h, 1, &e)?, algebra::z_star_closure(&g, 1, &e)?))
    };
    match run() {
        Ok((zh, zg)) => {
            t.check(zh.is_full(), || format!("{{0,1,3}}^2 gives {zh}"));
            t.check(zg.iter().eq([2]), || format!("[0,2]^2 gives {zg}"));
        }
        Err(x) => t.error("digression", x),
    }
    t
}

/// A random subset of `[0,N]` with each weight present with probability 1/2.
pub fn random_weight_set(rng: &mut impl Rng, n: usize) -> WeightSet {
    let mut e = WeightSet::empty(n);
    for j in 0..=n {
        if rng.gen_bool(0.5) {
            e.insert(j);
        }
    }
    e
}

/// Fastest of `reps` timed runs of `l_bar` on one random set per size.
pub fn time_lbar(rng: &mut impl Rng, n: usize, reps: usize) -> Duration {
    let e = random_weight_set(rng, n);
    let d = rng.gen_range(0..=n / 4);
    (0..reps)
        .map(|_| {
            let start = Instant::now();
            let out = e.l_bar(d).expect("d in range");
            let took = start.elapsed();
            std::hint::black_box(out);
            took
        })
        .min()
        .unwrap_or_default()
}

fn lbar_performance(opts: &VerifyOptions) -> Tally {
    let mut t = Tally::default();
    let mut rng = StdRng::seed_from_u64(opts.seed);
    let big = time_lbar(&mut rng, 1_000_000, 5);
    let mid = time_lbar(&mut rng, 100_000, 5);
    t.check(big < LBAR_BUDGET, || format!("N=10^6 took {big:?}"));
    let ratio = big.as_secs_f64() / mid.as_secs_f64().max(1e-9);
    t.check(ratio < LBAR_SCALING_BOUND, || format!("time(10^6)/time(10^5) = {ratio:.1}"));
    t.notes.push(format!("N=10^6 in {big:?}, scaling ratio {ratio:.1}"));

    let seeds: Vec<u64> = (0..LBAR_SAMPLES).map(|_| rng.gen()).collect();
    t.absorb(merged(
        seeds
            .par_iter()
            .map(|&s| {
                let mut rng = StdRng::seed_from_u64(s);
                // log-uniform sizes so small N is well covered
                let n = (10f64.powf(rng.gen_range(0.0..=4.0)) as usize).clamp(1, LBAR_SAMPLE_MAX_N);
                let e = random_weight_set(&mut rng, n);
                let d = rng.gen_range(0..=n);
                let mut t = Tally::default();
                match (e.l_bar(d), e.l_bar_naive(d)) {
                    (Ok(a), Ok(b)) => t.check(a == b, || format!("N={n} d={d} E={e}")),
                    (Err(x), _) | (_, Err(x)) => t.error(&format!("N={n} d={d}"), x),
                }
                t
            })
            .collect(),
    ));
    t
}

/// Exact cover numbers of every proper `E ⊇ T_{n,2}` on the cubes `n ≤ 5`.
#[derive(Clone, Debug, Serialize)]
pub struct ConjectureRow {
    pub n: usize,
    pub set: String,
    pub ehc: usize,
    pub predicted: usize,
}

pub fn conjecture_rows() -> Result<Vec<ConjectureRow>> {
    let mut rows = Vec::new();
    for n in 4..=5 {
        let g = Grid::cube(n)?;
        let idx = SectionIndex::new(&g, cube_limits(n))?;
        let t2 = WeightSet::two_tails(n, 2)?;
        for e in proper_subsets(n).filter(|e| t2.is_subset(e)) {
            rows.push(ConjectureRow {
                n,
                set: e.to_string(),
                ehc: idx.ehc(&e)?,
                predicted: e.len() - 2,
            });
        }
    }
    Ok(rows)
}

fn conjecture_harness() -> Tally {
    let mut t = Tally::default();
    match conjecture_rows() {
        Ok(rows) => {
            for r in &rows {
                t.check(r.ehc == r.predicted, || {
                    format!("counterexample n={} E={}: ehc={} vs |E|-2={}", r.n, r.set, r.ehc, r.predicted)
                });
            }
            let agree = rows.iter().filter(|r| r.ehc == r.predicted).count();
            t.notes.push(format!("{agree}/{} instances agree with |E|-2", rows.len()));
        }
        Err(x) => t.error("harness", x),
    }
    t
}
