use std::fmt;
use std::time::Duration;

use anyhow::{Context, Result};
use rayon::prelude::*;
use serde::Serialize;
use wdc_core::algebra::{self, ClosureOracle, OracleLimits};
use wdc_core::constructions;
use wdc_core::covers::{self, EhcExact};
use wdc_core::hyperplane::{HyperplaneFamily, HyperplaneLimits, SectionIndex, HARD_MAX_POINTS};
use wdc_core::verify::{self, VerifyOptions, LBAR_BUDGET, LBAR_SCALING_BOUND};
use wdc_core::{Grid, PointSet, Poly, WeightSet};

use crate::output::{opt, Record};

/// Largest `N` for which `all` expands to every subset of `[0,N]`.
pub const MAX_SWEEP_N: usize = 20;

/// Size of the largest chain printed by `lbar`; longer ones show only the fixpoint.
const MAX_CHAIN_N: usize = 4096;

#[derive(Debug)]
pub struct Usage(pub String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

#[derive(Debug)]
pub struct VerificationFailed(pub String);

impl fmt::Display for VerificationFailed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "verification failed: {}", self.0)
    }
}

impl std::error::Error for VerificationFailed {}

/// Oracle size caps, optionally overridden by `WDC_MAX_GRID_POINTS`.
#[derive(Clone, Copy, Debug)]
pub struct Caps {
    pub oracle: OracleLimits,
    pub hyperplane: HyperplaneLimits,
}

impl Caps {
    pub fn from_env() -> Result<Self> {
        let mut caps = Caps {
            oracle: OracleLimits::default(),
            hyperplane: HyperplaneLimits::default(),
        };
        if let Ok(v) = std::env::var("WDC_MAX_GRID_POINTS") {
            let n: usize = v
                .trim()
                .parse()
                .map_err(|_| Usage(format!("WDC_MAX_GRID_POINTS must be a count, got {v:?}")))?;
            caps.oracle.max_points = n;
            caps.hyperplane.max_points = n.min(HARD_MAX_POINTS);
        }
        Ok(caps)
    }
}

pub fn parse_grid(spec: &str) -> Result<Grid> {
    spec.parse::<Grid>().with_context(|| format!("grid spec {spec:?}"))
}

/// Expands a set spec; `all` means every subset of `[0,N]` in mask order.
pub fn parse_sets(n: usize, spec: &str) -> Result<Vec<WeightSet>> {
    if spec.trim() == "all" {
        if n > MAX_SWEEP_N {
            return Err(wdc_core::Error::CapExceeded {
                what: "sweep over subsets of [0,N], N",
                size: n,
                cap: MAX_SWEEP_N,
            }
            .into());
        }
        return Ok(WeightSet::all_subsets(n).collect());
    }
    let e = WeightSet::parse(n, spec).with_context(|| format!("set spec {spec:?}"))?;
    Ok(vec![e])
}

fn proper_only(sets: Vec<WeightSet>, sweep: bool) -> Result<Vec<WeightSet>> {
    if !sweep {
        if let Some(e) = sets.iter().find(|e| e.is_full()) {
            return Err(wdc_core::Error::InvalidInput(format!(
                "E = {e} is all of [0,N]; covers need a proper subset"
            ))
            .into());
        }
    }
    Ok(sets.into_iter().filter(|e| !e.is_full()).collect())
}

fn sweep<T: Send>(sets: &[WeightSet], f: impl Fn(&WeightSet) -> Result<T> + Sync) -> Result<Vec<T>> {
    sets.par_iter().map(&f).collect()
}

fn point_label(grid: &Grid, idx: usize) -> String {
    let c: Vec<String> = grid.coords(idx).iter().map(i64::to_string).collect();
    format!("({})", c.join(","))
}

// ---- layers / su2 ----

#[derive(Serialize)]
pub struct LayerRow {
    j: usize,
    size: String,
}

impl Record for LayerRow {
    fn headers() -> &'static [&'static str] {
        &["j", "size"]
    }
    fn cells(&self) -> Vec<String> {
        vec![self.j.to_string(), self.size.clone()]
    }
}

pub fn layers(grid: &str) -> Result<Vec<LayerRow>> {
    let g = parse_grid(grid)?;
    Ok(g.layer_sizes()
        .into_iter()
        .enumerate()
        .map(|(j, s)| LayerRow { j, size: s.to_string() })
        .collect())
}

#[derive(Serialize)]
pub struct Su2Row {
    grid: String,
    #[serde(rename = "N")]
    n: usize,
    su2: bool,
    su2_by_layers: bool,
}

impl Record for Su2Row {
    fn headers() -> &'static [&'static str] {
        &["grid", "N", "su2", "su2_by_layers"]
    }
    fn cells(&self) -> Vec<String> {
        vec![self.grid.clone(), self.n.to_string(), self.su2.to_string(), self.su2_by_layers.to_string()]
    }
}

pub fn su2(grid: &str) -> Result<Vec<Su2Row>> {
    let g = parse_grid(grid)?;
    Ok(vec![Su2Row {
        grid: g.to_string(),
        n: g.max_weight(),
        su2: g.is_su2()?,
        su2_by_layers: g.su2_by_layers(),
    }])
}

// ---- lbar / admitting ----

#[derive(Serialize)]
pub struct LbarRow {
    #[serde(rename = "E")]
    e: String,
    d: usize,
    /// `L(E), L²(E), …` up to the fixpoint, empty when `E` is fixed;
    /// omitted for large `N`.
    #[serde(skip_serializing_if = "Option::is_none")]
    chain: Option<Vec<String>>,
    fixpoint: String,
}

impl LbarRow {
    pub fn set(&self) -> &str {
        &self.e
    }

    /// `"0-1,3,5-6 → fixpoint 0-6"`.
    pub fn arrow_line(&self) -> String {
        let mut parts: Vec<String> = self.chain.iter().flatten().cloned().collect();
        // a nonempty chain ends at the fixpoint
        parts.pop();
        parts.push(format!("fixpoint {}", self.fixpoint));
        parts.join(" → ")
    }
}

impl Record for LbarRow {
    fn headers() -> &'static [&'static str] {
        &["E", "d", "steps", "fixpoint"]
    }
    fn cells(&self) -> Vec<String> {
        let steps = self.chain.as_ref().map(|c| c.len().to_string());
        vec![self.e.clone(), self.d.to_string(), opt(&steps), self.fixpoint.clone()]
    }
}

pub fn lbar(n: usize, d: usize, set: &str) -> Result<Vec<LbarRow>> {
    let sets = parse_sets(n, set)?;
    sweep(&sets, |e| {
        let fixpoint = e.l_bar(d)?;
        let chain = if n <= MAX_CHAIN_N {
            let it = e.l_iterates(d)?;
            Some(it[1..].iter().map(ToString::to_string).collect::<Vec<_>>())
        } else {
            None
        };
        Ok(LbarRow {
            e: e.to_string(),
            d,
            chain,
            fixpoint: fixpoint.to_string(),
        })
    })
}

#[derive(Serialize)]
pub struct AdmittingRow {
    #[serde(rename = "E")]
    e: String,
    d: usize,
    admitting: bool,
    /// Least `i` making `E` `(d,i)`-admitting.
    i: Option<usize>,
}

impl Record for AdmittingRow {
    fn headers() -> &'static [&'static str] {
        &["E", "d", "admitting", "i"]
    }
    fn cells(&self) -> Vec<String> {
        vec![self.e.clone(), self.d.to_string(), self.admitting.to_string(), opt(&self.i)]
    }
}

pub fn admitting(n: usize, d: Option<usize>, set: &str) -> Result<Vec<AdmittingRow>> {
    let sets = parse_sets(n, set)?;
    let degrees: Vec<usize> = match d {
        Some(d) => vec![d],
        None => (0..=n).collect(),
    };
    let rows = sweep(&sets, |e| {
        degrees
            .iter()
            .map(|&d| {
                let c = e.admitting(d)?;
                Ok(AdmittingRow {
                    e: e.to_string(),
                    d,
                    admitting: c.witnessed(),
                    i: c.i,
                })
            })
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(rows.into_iter().flatten().collect())
}

// ---- closure ----

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ClosureMode {
    Zstar,
    Z,
    Hilbert,
}

#[derive(Serialize)]
pub struct ZstarRow {
    #[serde(rename = "E")]
    e: String,
    d: usize,
    closure: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    basis: Option<Vec<String>>,
}

#[derive(Serialize)]
pub struct ZRow {
    #[serde(rename = "E")]
    e: String,
    d: usize,
    closure_size: usize,
    /// Points of the closure off the lift of `E`.
    extra_points: Vec<String>,
    /// Weights whose whole layer lies in the closure.
    weight_core: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    basis: Option<Vec<String>>,
}

#[derive(Serialize)]
pub struct HilbertRow {
    #[serde(rename = "E")]
    e: String,
    #[serde(flatten)]
    profile: algebra::HilbertProfile,
    #[serde(skip_serializing_if = "Option::is_none")]
    basis: Option<Vec<String>>,
}

fn basis_cell(b: &Option<Vec<String>>) -> String {
    b.as_ref().map(|b| b.join("; ")).unwrap_or_default()
}

impl Record for ZstarRow {
    fn headers() -> &'static [&'static str] {
        &["E", "d", "closure", "basis"]
    }
    fn cells(&self) -> Vec<String> {
        vec![self.e.clone(), self.d.to_string(), self.closure.clone(), basis_cell(&self.basis)]
    }
}

impl Record for ZRow {
    fn headers() -> &'static [&'static str] {
        &["E", "d", "closure_size", "extra_points", "weight_core", "basis"]
    }
    fn cells(&self) -> Vec<String> {
        vec![
            self.e.clone(),
            self.d.to_string(),
            self.closure_size.to_string(),
            self.extra_points.join(" "),
            self.weight_core.clone(),
            basis_cell(&self.basis),
        ]
    }
}

impl Record for HilbertRow {
    fn headers() -> &'static [&'static str] {
        &["E", "d", "hilbert", "r_d", "ell_d", "closed_form", "basis"]
    }
    fn cells(&self) -> Vec<String> {
        let h = &self.profile;
        vec![
            self.e.clone(),
            h.d.to_string(),
            h.value.to_string(),
            h.r_d.to_string(),
            h.ell_d.to_string(),
            opt(&h.closed_form),
            basis_cell(&self.basis),
        ]
    }
}

/// What one `closure` query sees: the grid, the shared oracle, `E` and its lift.
pub struct ClosureQuery<'a> {
    pub grid: &'a Grid,
    pub oracle: &'a ClosureOracle,
    pub e: &'a WeightSet,
    pub lifted: PointSet,
    basis: bool,
}

impl ClosureQuery<'_> {
    fn basis(&self) -> Result<Option<Vec<String>>> {
        if !self.basis {
            return Ok(None);
        }
        let b = self.oracle.vanishing_basis(&self.lifted)?;
        Ok(Some(b.iter().map(Poly::to_string).collect()))
    }
}

pub fn closure<T: Send>(
    grid: &str,
    d: usize,
    set: &str,
    basis: bool,
    caps: Caps,
    f: impl Fn(&ClosureQuery) -> Result<T> + Sync,
) -> Result<Vec<T>> {
    let g = parse_grid(grid)?;
    let sets = parse_sets(g.max_weight(), set)?;
    let oracle = ClosureOracle::with_limits(&g, d, caps.oracle)?;
    sweep(&sets, |e| {
        f(&ClosureQuery {
            grid: &g,
            oracle: &oracle,
            e,
            lifted: g.lift(e)?,
            basis,
        })
    })
}

pub fn zstar_row(q: &ClosureQuery) -> Result<ZstarRow> {
    Ok(ZstarRow {
        e: q.e.to_string(),
        d: q.oracle.degree(),
        closure: q.oracle.z_star_closure(q.e)?.to_string(),
        basis: q.basis()?,
    })
}

pub fn z_row(q: &ClosureQuery) -> Result<ZRow> {
    let z = q.oracle.z_closure(&q.lifted)?;
    Ok(ZRow {
        e: q.e.to_string(),
        d: q.oracle.degree(),
        closure_size: z.len(),
        extra_points: z.difference(&q.lifted).iter().map(|i| point_label(q.grid, i)).collect(),
        weight_core: q.grid.weight_core(&z).to_string(),
        basis: q.basis()?,
    })
}

pub fn hilbert_row(q: &ClosureQuery) -> Result<HilbertRow> {
    Ok(HilbertRow {
        e: q.e.to_string(),
        profile: q.oracle.hilbert_profile(q.e)?,
        basis: q.basis()?,
    })
}

// ---- covers / hcover ----

#[derive(Serialize)]
pub struct CoversRow {
    #[serde(rename = "E")]
    e: String,
    #[serde(rename = "N")]
    n: usize,
    pc: usize,
    ppc: usize,
    hc: Option<usize>,
    phc: Option<usize>,
    epc: usize,
    ehc_lower: usize,
    ehc_upper: usize,
    ehc_exact: EhcExact,
}

impl Record for CoversRow {
    fn headers() -> &'static [&'static str] {
        &["E", "N", "pc", "ppc", "hc", "phc", "epc", "ehc_lower", "ehc_upper", "ehc_exact"]
    }
    fn cells(&self) -> Vec<String> {
        vec![
            self.e.clone(),
            self.n.to_string(),
            self.pc.to_string(),
            self.ppc.to_string(),
            opt(&self.hc),
            opt(&self.phc),
            self.epc.to_string(),
            self.ehc_lower.to_string(),
            self.ehc_upper.to_string(),
            self.ehc_exact.to_string(),
        ]
    }
}

pub fn covers(grid: &str, set: &str, caps: Caps) -> Result<Vec<CoversRow>> {
    let g = parse_grid(grid)?;
    g.require_su2()?;
    let sets = proper_only(parse_sets(g.max_weight(), set)?, set.trim() == "all")?;
    let cube = g.is_cube();
    sweep(&sets, |e| {
        let epc = if cube {
            covers::epc_cube(&g, e)?
        } else {
            algebra::epc_oracle_with(&g, e, caps.oracle)?
        };
        let b = covers::ehc_bounds(&g, e)?;
        Ok(CoversRow {
            e: e.to_string(),
            n: g.max_weight(),
            pc: covers::pc(&g, e)?,
            ppc: covers::ppc(&g, e)?,
            hc: cube.then(|| covers::hc_cube(&g, e)).transpose()?,
            phc: cube.then(|| covers::phc_cube(&g, e)).transpose()?,
            epc,
            ehc_lower: b.lower,
            ehc_upper: b.upper,
            ehc_exact: b.exact,
        })
    })
}

#[derive(Serialize)]
pub struct HcoverRow {
    #[serde(rename = "E")]
    e: String,
    #[serde(rename = "N")]
    n: usize,
    oracle_pc: usize,
    oracle_ppc: usize,
    oracle_hc: usize,
    oracle_phc: usize,
    oracle_epc: usize,
    /// Searched on uniform grids only.
    oracle_ehc: Option<usize>,
}

impl Record for HcoverRow {
    fn headers() -> &'static [&'static str] {
        &["E", "N", "oracle_pc", "oracle_ppc", "oracle_hc", "oracle_phc", "oracle_epc", "oracle_ehc"]
    }
    fn cells(&self) -> Vec<String> {
        vec![
            self.e.clone(),
            self.n.to_string(),
            self.oracle_pc.to_string(),
            self.oracle_ppc.to_string(),
            self.oracle_hc.to_string(),
            self.oracle_phc.to_string(),
            self.oracle_epc.to_string(),
            opt(&self.oracle_ehc),
        ]
    }
}

pub fn hcover(grid: &str, set: &str, caps: Caps) -> Result<Vec<HcoverRow>> {
    let g = parse_grid(grid)?;
    let n = g.max_weight();
    let sets = proper_only(parse_sets(n, set)?, set.trim() == "all")?;
    let index = SectionIndex::new(&g, caps.hyperplane)?;
    let oracles = (0..=n)
        .map(|d| ClosureOracle::with_limits(&g, d, caps.oracle))
        .collect::<wdc_core::Result<Vec<_>>>()?;
    sweep(&sets, |e| {
        let lifted = g.lift(e)?;
        let mut zstar = Vec::with_capacity(n + 1);
        let mut epc = None;
        for o in &oracles {
            zstar.push(o.z_star_closure(e)?);
            if epc.is_none() && o.z_closure(&lifted)? == lifted {
                epc = Some(o.degree());
            }
        }
        let first = |pred: &dyn Fn(&WeightSet) -> bool| {
            zstar.iter().position(pred).expect("the degree-N closure of a proper set is itself")
        };
        Ok(HcoverRow {
            e: e.to_string(),
            n,
            oracle_pc: first(&|z| !z.is_full()),
            oracle_ppc: first(&|z| z == e),
            oracle_hc: index.hc(e)?,
            oracle_phc: index.phc(e)?,
            oracle_epc: epc.expect("the degree-N closure of any set is itself"),
            oracle_ehc: g.is_uniform().then(|| index.ehc(e)).transpose()?,
        })
    })
}

// ---- witness ----

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum WitnessKind {
    /// Proper polynomial cover of degree ppc.
    Ppc,
    /// Product of the level hyperplanes of E.
    Level,
    /// Pairing polynomial (needs --i) on the cube.
    Pairing,
    /// One hyperplane meeting the grid exactly in its two extreme points.
    T1,
    /// Two hyperplanes meeting the cube exactly in T_{n,2}.
    T2,
    /// Smallest hyperplane cover found by the oracle.
    Hc,
    /// Smallest proper hyperplane cover found by the oracle.
    Phc,
    /// Smallest exact hyperplane cover found by the oracle.
    Ehc,
}

#[derive(Serialize)]
pub struct WitnessRow {
    kind: String,
    grid: String,
    #[serde(rename = "E")]
    e: String,
    /// Degree of the polynomial, or number of hyperplanes.
    degree: usize,
    forms: Vec<String>,
}

impl Record for WitnessRow {
    fn headers() -> &'static [&'static str] {
        &["kind", "grid", "E", "degree", "forms"]
    }
    fn cells(&self) -> Vec<String> {
        vec![
            self.kind.clone(),
            self.grid.clone(),
            self.e.clone(),
            self.degree.to_string(),
            self.forms.join(" ; "),
        ]
    }
}

fn family_rows(kind: WitnessKind, g: &Grid, e: &WeightSet, fam: &HyperplaneFamily) -> WitnessRow {
    WitnessRow {
        kind: kind_name(kind),
        grid: g.to_string(),
        e: e.to_string(),
        degree: fam.len(),
        forms: fam.forms.iter().map(|f| f.poly().to_string()).collect(),
    }
}

fn kind_name(kind: WitnessKind) -> String {
    use clap::ValueEnum;
    kind.to_possible_value().expect("no skipped variants").get_name().to_string()
}

fn check(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(VerificationFailed(what()).into())
    }
}

pub fn witness(
    grid: &str,
    kind: WitnessKind,
    set: Option<&str>,
    i: Option<usize>,
    caps: Caps,
) -> Result<Vec<WitnessRow>> {
    let g = parse_grid(grid)?;
    let n = g.max_weight();
    let needs_set = || -> Result<WeightSet> {
        let spec = set.ok_or_else(|| Usage(format!("--set is required for --kind {}", kind_name(kind))))?;
        let e = WeightSet::parse(n, spec).with_context(|| format!("set spec {spec:?}"))?;
        Ok(e)
    };
    let poly_row = |e: &WeightSet, p: &Poly| WitnessRow {
        kind: kind_name(kind),
        grid: g.to_string(),
        e: e.to_string(),
        degree: p.degree(),
        forms: vec![p.to_string()],
    };
    let row = match kind {
        WitnessKind::Ppc => {
            let e = needs_set()?;
            let p = constructions::ppc_witness(&g, &e)?;
            poly_row(&e, &p)
        }
        WitnessKind::Level => {
            let e = needs_set()?;
            let p = constructions::level_product(&g, &e)?;
            poly_row(&e, &p)
        }
        WitnessKind::Pairing => {
            if !g.is_cube() {
                return Err(Usage("--kind pairing needs a cube grid".into()).into());
            }
            let i = i.ok_or_else(|| Usage("--kind pairing needs --i".into()))?;
            let p = constructions::pairing_poly(g.n(), i)?;
            poly_row(&WeightSet::two_tails(n, i)?, &p)
        }
        WitnessKind::T1 => {
            let f = constructions::ehc_t1_form(&g, constructions::default_t1_norm(&g))?;
            let e = WeightSet::from_iter(n, [0, n])?;
            check(f.trace(&g)? == g.lift(&e)?, || format!("{} misses {{0,N}}", f.poly()))?;
            let fam = HyperplaneFamily { forms: vec![f] };
            family_rows(kind, &g, &e, &fam)
        }
        WitnessKind::T2 => {
            if !g.is_cube() {
                return Err(Usage("--kind t2 needs a cube grid".into()).into());
            }
            let fam = constructions::ehc_t2_family(g.n())?;
            let e = WeightSet::two_tails(n, 2)?;
            check(fam.trace(&g)? == g.lift(&e)?, || "trace differs from T_{n,2}".into())?;
            family_rows(kind, &g, &e, &fam)
        }
        WitnessKind::Hc | WitnessKind::Phc | WitnessKind::Ehc => {
            let e = needs_set()?;
            let index = SectionIndex::new(&g, caps.hyperplane)?;
            let lifted = g.lift(&e)?;
            let fam = match kind {
                WitnessKind::Hc => index.hc_witness(&e)?,
                WitnessKind::Phc => index.phc_witness(&e)?,
                _ => index.ehc_witness(&e)?,
            };
            let trace = fam.trace(&g)?;
            check(lifted.is_subset(&trace), || "family misses a point of the lift".into())?;
            check(trace != g.all_points()?, || "family covers the whole grid".into())?;
            if kind == WitnessKind::Phc {
                for j in (0..=n).filter(|&j| !e.contains(j)) {
                    let layer = g.lift(&WeightSet::from_iter(n, [j])?)?;
                    check(!layer.is_subset(&trace), || format!("layer {j} is swallowed"))?;
                }
            }
            if kind == WitnessKind::Ehc {
                check(trace == lifted, || "trace is not exactly the lift".into())?;
            }
            family_rows(kind, &g, &e, &fam)
        }
    };
    Ok(vec![row])
}

// ---- verify / bench ----

#[derive(Serialize)]
pub struct ReportRow {
    id: u8,
    status: &'static str,
    experimental: bool,
    title: &'static str,
    checks: usize,
    detail: String,
    failures: Vec<String>,
    seconds: f64,
}

impl ReportRow {
    pub fn id(&self) -> u8 {
        self.id
    }

    pub fn failures(&self) -> &[String] {
        &self.failures
    }

    pub fn passed(&self) -> bool {
        self.status == "PASS"
    }

    pub fn human_line(&self) -> String {
        let tag = if self.experimental { " [experimental]" } else { "" };
        format!(
            "criterion {:>2}: {} — {}{} ({}; {:.1}s)",
            self.id, self.status, self.title, tag, self.detail, self.seconds
        )
    }
}

impl Record for ReportRow {
    fn headers() -> &'static [&'static str] {
        &["id", "status", "title", "checks", "detail", "seconds"]
    }
    fn cells(&self) -> Vec<String> {
        vec![
            self.id.to_string(),
            self.status.to_string(),
            self.title.to_string(),
            self.checks.to_string(),
            self.detail.clone(),
            format!("{:.3}", self.seconds),
        ]
    }
}

pub fn parse_criteria(spec: Option<&str>) -> Result<Vec<u8>> {
    let Some(spec) = spec else {
        return Ok((1..=verify::TITLES.len() as u8).collect());
    };
    let e = WeightSet::parse(verify::TITLES.len(), spec)
        .map_err(|x| Usage(format!("--criteria {spec:?}: {x}")))?;
    if e.contains(0) {
        return Err(Usage("criteria are numbered from 1".into()).into());
    }
    Ok(e.iter().map(|j| j as u8).collect())
}

pub fn run_verify(ids: &[u8], opts: &VerifyOptions) -> Vec<ReportRow> {
    ids.iter()
        .map(|&id| {
            let start = std::time::Instant::now();
            let r = verify::run_criterion(id, opts);
            ReportRow {
                id: r.id,
                status: r.status(),
                experimental: r.experimental,
                title: r.title,
                checks: r.checks,
                detail: r.detail,
                failures: r.failures,
                seconds: start.elapsed().as_secs_f64(),
            }
        })
        .collect()
}

#[derive(Serialize)]
pub struct BenchRow {
    #[serde(rename = "N")]
    n: usize,
    micros: f64,
}

impl Record for BenchRow {
    fn headers() -> &'static [&'static str] {
        &["N", "micros"]
    }
    fn cells(&self) -> Vec<String> {
        vec![self.n.to_string(), format!("{:.1}", self.micros)]
    }
}

pub struct Bench {
    pub rows: Vec<BenchRow>,
    pub ratio: f64,
    pub largest: Duration,
}

pub const BENCH_SIZES: [usize; 3] = [10_000, 100_000, 1_000_000];

pub fn bench(seed: u64, reps: usize) -> Bench {
    use rand::SeedableRng;
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let times: Vec<Duration> = BENCH_SIZES
        .iter()
        .map(|&n| verify::time_lbar(&mut rng, n, reps.max(1)))
        .collect();
    let ratio = times[2].as_secs_f64() / times[1].as_secs_f64().max(1e-9);
    Bench {
        rows: BENCH_SIZES
            .iter()
            .zip(&times)
            .map(|(&n, t)| BenchRow { n, micros: t.as_secs_f64() * 1e6 })
            .collect(),
        ratio,
        largest: times[2],
    }
}

pub fn bench_check(b: &Bench) -> Result<()> {
    check(b.largest < LBAR_BUDGET, || format!("N=10^6 took {:?}", b.largest))?;
    check(b.ratio < LBAR_SCALING_BOUND, || {
        format!("time(10^6)/time(10^5) = {:.1}, bound {LBAR_SCALING_BOUND}", b.ratio)
    })
}
