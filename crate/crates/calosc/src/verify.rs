//! Named verification scenarios. Each one freezes its inputs, runs the
//! pipeline, and emits a ScenarioResult whose expected values carry a
//! provenance note: closed-form (analytic value), oracle (independent
//! numerical route), identity (two routes to the same object), catalog
//! (lookup-table consequence), measured-order (empirical convergence rate).

use crate::asymptotics::{classify_membership, fit_origin, AsymptoticBasis, DomainClass};
use crate::discretization::{
    build_direct_hamiltonian, build_factors, build_grid, factorization_residual, EndPolicy,
    FactorMatrices, Grid, GridScheme, TridiagonalMatrix,
};
use crate::error::{Error, Result};
use crate::extensions::{
    boundary_row, identify_factorization, negative_level_bound, BoundaryCondition, ExtensionId,
    FactorizationKind, IdentParams, Mixing,
};
use crate::spectral::{
    all_eigenvalues, bisect_eigenvalue, eigen_bounds, lowest_eigenpairs, sturm_count, DEFAULT_SEED,
};
use crate::superpotentials::{derive_coupling, CaseLabel, Superpotential};
use serde::Serialize;
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;

pub const MEMBERSHIP_TOL: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TolKind {
    /// |measured - value| <= tol * max(|value|, 1e-300)
    Rel,
    /// |measured - value| <= tol
    Abs,
    /// measured <= value
    Le,
    /// measured >= value
    Ge,
    /// exact equality (strings, integers, booleans)
    Eq,
}

#[derive(Debug, Clone, Serialize)]
pub struct Expectation {
    pub value: Value,
    pub kind: TolKind,
    pub tol: f64,
    pub provenance: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScenarioResult {
    pub scenario_id: String,
    pub inputs: Value,
    /// Named measured values; entries without a matching expectation are
    /// informational.
    pub measured: BTreeMap<String, Value>,
    pub expected: BTreeMap<String, Expectation>,
    pub pass: bool,
    pub runtime_ms: u128,
}

fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
}

fn satisfies(measured: &Value, e: &Expectation) -> bool {
    match e.kind {
        TolKind::Eq => measured == &e.value,
        _ => {
            let (m, v) = match (measured.as_f64(), e.value.as_f64()) {
                (Some(m), Some(v)) => (m, v),
                _ => return false,
            };
            if !m.is_finite() {
                return false;
            }
            match e.kind {
                TolKind::Rel => (m - v).abs() <= e.tol * v.abs().max(1e-300),
                TolKind::Abs => (m - v).abs() <= e.tol,
                TolKind::Le => m <= v,
                TolKind::Ge => m >= v,
                TolKind::Eq => unreachable!(),
            }
        }
    }
}

struct Recorder {
    measured: BTreeMap<String, Value>,
    expected: BTreeMap<String, Expectation>,
}

impl Recorder {
    fn new() -> Self {
        Recorder { measured: BTreeMap::new(), expected: BTreeMap::new() }
    }

    fn info(&mut self, name: &str, v: Value) {
        self.measured.insert(name.to_string(), v);
    }

    fn check(&mut self, name: &str, measured: Value, e: Expectation) {
        self.measured.insert(name.to_string(), measured);
        self.expected.insert(name.to_string(), e);
    }

    fn rel(&mut self, name: &str, m: f64, v: f64, tol: f64, prov: &'static str) {
        self.check(name, num(m), Expectation { value: num(v), kind: TolKind::Rel, tol, provenance: prov });
    }

    fn abs(&mut self, name: &str, m: f64, v: f64, tol: f64, prov: &'static str) {
        self.check(name, num(m), Expectation { value: num(v), kind: TolKind::Abs, tol, provenance: prov });
    }

    fn le(&mut self, name: &str, m: f64, bound: f64, prov: &'static str) {
        self.check(name, num(m), Expectation { value: num(bound), kind: TolKind::Le, tol: 0.0, provenance: prov });
    }

    fn ge(&mut self, name: &str, m: f64, bound: f64, prov: &'static str) {
        self.check(name, num(m), Expectation { value: num(bound), kind: TolKind::Ge, tol: 0.0, provenance: prov });
    }

    fn eq_str(&mut self, name: &str, m: &str, v: &str, prov: &'static str) {
        self.check(
            name,
            Value::String(m.to_string()),
            Expectation { value: Value::String(v.to_string()), kind: TolKind::Eq, tol: 0.0, provenance: prov },
        );
    }

    fn eq_int(&mut self, name: &str, m: i64, v: i64, prov: &'static str) {
        self.check(name, json!(m), Expectation { value: json!(v), kind: TolKind::Eq, tol: 0.0, provenance: prov });
    }

    fn finish(self, scenario_id: &str, inputs: Value, started: std::time::Instant) -> ScenarioResult {
        let pass = self
            .expected
            .iter()
            .all(|(name, e)| self.measured.get(name).map(|m| satisfies(m, e)).unwrap_or(false));
        ScenarioResult {
            scenario_id: scenario_id.to_string(),
            inputs,
            measured: self.measured,
            expected: self.expected,
            pass,
            runtime_ms: started.elapsed().as_millis(),
        }
    }
}

fn uniform_points(lo: f64, hi: f64, m: usize) -> Vec<f64> {
    (0..m).map(|i| lo + (hi - lo) * i as f64 / (m - 1) as f64).collect()
}

fn log_points(lo: f64, hi: f64, m: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..m).map(|i| (a + (b - a) * i as f64 / (m - 1) as f64).exp()).collect()
}

fn smooth_bump(x: f64, center: f64, radius: f64) -> f64 {
    let t = (x - center) / radius;
    if t.abs() < 1.0 {
        (-1.0 / (1.0 - t * t)).exp()
    } else {
        0.0
    }
}

/// Eigenvector of the mass-scaled matrix back to function samples.
fn unscale(v: &[f64], vols: &[f64]) -> Vec<f64> {
    v.iter().zip(vols).map(|(a, w)| a / w.sqrt()).collect()
}

fn window_samples(xs: &[f64], psi: &[f64], lo: f64, hi: f64) -> Vec<(f64, f64)> {
    xs.iter()
        .zip(psi)
        .filter(|(&x, _)| x >= lo && x <= hi)
        .map(|(&x, &p)| (x, p))
        .collect()
}

fn top_eigenvalues(t: &TridiagonalMatrix, k: usize) -> Result<Vec<f64>> {
    let (lo, hi) = eigen_bounds(t);
    let n = t.len();
    let mut out = Vec::with_capacity(k);
    for j in 0..k.min(n) {
        out.push(bisect_eigenvalue(t, n - 1 - j, lo, hi)?);
    }
    Ok(out)
}

/// Compare two eigenvalue multisets sorted descending, ignoring entries below
/// the threshold on both sides. Returns (max relative mismatch over compared
/// pairs, number of structural mismatches: a value above threshold on one
/// side with nothing above threshold to pair against).
pub fn descending_match(a: &[f64], b: &[f64], threshold: f64) -> (f64, usize) {
    let mut aa = a.to_vec();
    let mut bb = b.to_vec();
    aa.sort_by(|x, y| y.partial_cmp(x).unwrap());
    bb.sort_by(|x, y| y.partial_cmp(x).unwrap());
    let mut worst = 0.0f64;
    let mut structural = 0usize;
    let long = aa.len().max(bb.len());
    for i in 0..long {
        let x = aa.get(i).copied();
        let y = bb.get(i).copied();
        match (x, y) {
            (Some(x), Some(y)) => {
                if x.abs() <= threshold && y.abs() <= threshold {
                    continue;
                }
                if x.abs() <= threshold || y.abs() <= threshold {
                    structural += 1;
                    continue;
                }
                worst = worst.max((x - y).abs() / x.abs().max(y.abs()));
            }
            (Some(x), None) | (None, Some(x)) => {
                if x.abs() > threshold {
                    structural += 1;
                }
            }
            (None, None) => unreachable!(),
        }
    }
    (worst, structural)
}

// --- independent small-matrix route: characteristic-polynomial Sturm chain ---

/// Number of eigenvalues strictly below x, via sign changes of the leading
/// principal minors p_k(x). Deliberately a different recurrence from the
/// LDL^T pivot count in the spectral module.
fn charpoly_count_below(diag: &[f64], off: &[f64], x: f64) -> usize {
    let n = diag.len();
    let mut pm2 = 1.0f64; // p_0
    let mut pm1 = diag[0] - x; // p_1
    let mut sign_prev = 1.0f64; // sign of p_0
    let mut changes = 0usize;
    let update = |p: f64, sign_prev: &mut f64, changes: &mut usize| {
        let s = if p == 0.0 { -*sign_prev } else { p.signum() };
        if s != *sign_prev {
            *changes += 1;
        }
        *sign_prev = s;
    };
    update(pm1, &mut sign_prev, &mut changes);
    for k in 2..=n {
        let mut p = (diag[k - 1] - x) * pm1 - off[k - 2] * off[k - 2] * pm2;
        // keep the chain away from overflow without touching signs
        if p.abs() > 1e120 {
            p *= 1e-120;
            pm1 *= 1e-120;
        }
        update(p, &mut sign_prev, &mut changes);
        pm2 = pm1;
        pm1 = p;
    }
    changes
}

pub fn charpoly_eigenvalues(t: &TridiagonalMatrix) -> Vec<f64> {
    let n = t.len();
    let (mut glo, mut ghi) = eigen_bounds(t);
    glo -= 1.0;
    ghi += 1.0;
    let scale = glo.abs().max(ghi.abs()).max(1.0);
    let mut out = Vec::with_capacity(n);
    for idx in 0..n {
        let (mut lo, mut hi) = (glo, ghi);
        for _ in 0..200 {
            if hi - lo <= 1e-14 * scale {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if charpoly_count_below(&t.diag, &t.offdiag, mid) > idx {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        out.push(0.5 * (lo + hi));
    }
    out
}

// --- scenarios -------------------------------------------------------------

fn check_riccati_families() -> Result<ScenarioResult> {
    let t0 = std::time::Instant::now();
    let mut r = Recorder::new();
    let fams: Vec<(&str, Superpotential, Vec<f64>)> = vec![
        ("calogero-a", Superpotential::calogero_general(0.0, 1.0)?, uniform_points(0.01, 50.0, 200)),
        ("calogero-b", Superpotential::calogero_general(0.24, 2.0)?, log_points(1e-3, 60.0, 200)),
        ("power-law", Superpotential::power_law(2.0)?, uniform_points(0.01, 50.0, 200)),
        ("coth", Superpotential::free_coth(1.0, 0.0)?, log_points(1e-4, 40.0, 200)),
        ("tanh", Superpotential::free_tanh(1.0, 0.0)?, uniform_points(-40.0, 40.0, 200)),
        // last point sits 0.04 from the pole of cot at pi - 0.3
        ("cot", Superpotential::free_cot(1.0, 0.3)?, uniform_points(0.05, 2.8, 200)),
    ];
    let mut inputs = Map::new();
    for (name, sp, pts) in &fams {
        inputs.insert(
            (*name).to_string(),
            json!({"family": sp.family_name(), "points": pts.len(), "x_lo": pts[0], "x_hi": pts[pts.len()-1]}),
        );
        let resid = sp.riccati_residual(pts)?;
        r.le(&format!("{name}.residual"), resid, 1e-12, "closed-form");
    }
    Ok(r.finish("riccati-families", Value::Object(inputs), t0))
}

struct BuildSpec {
    tag: &'static str,
    sp: Superpotential,
    grid: Grid,
    left: EndPolicy,
    right: EndPolicy,
}

fn adjointness_builds() -> Result<Vec<BuildSpec>> {
    Ok(vec![
        BuildSpec {
            tag: "tanh-box",
            sp: Superpotential::free_tanh(1.0, 0.0)?,
            grid: build_grid(-20.0, 20.0, 400, GridScheme::Uniform)?,
            left: EndPolicy::Dirichlet,
            right: EndPolicy::Dirichlet,
        },
        BuildSpec {
            tag: "coth-free-end",
            sp: Superpotential::free_coth(1.0, 0.0)?,
            grid: build_grid(1e-3, 30.0, 400, GridScheme::LogUniform)?,
            left: EndPolicy::Free,
            right: EndPolicy::Dirichlet,
        },
        BuildSpec {
            tag: "calogero-general",
            sp: Superpotential::calogero_general(0.24, 2.0)?,
            grid: build_grid(1e-3, 60.0, 400, GridScheme::LogUniform)?,
            left: EndPolicy::Dirichlet,
            right: EndPolicy::Dirichlet,
        },
        BuildSpec {
            tag: "power-law",
            sp: Superpotential::power_law(2.0)?,
            grid: build_grid(0.5, 20.5, 400, GridScheme::Uniform)?,
            left: EndPolicy::Dirichlet,
            right: EndPolicy::Dirichlet,
        },
        BuildSpec {
            tag: "cot-interval",
            sp: Superpotential::free_cot(1.0, 0.3)?,
            grid: build_grid(0.1, 2.5, 400, GridScheme::Uniform)?,
            left: EndPolicy::Dirichlet,
            right: EndPolicy::Dirichlet,
        },
        BuildSpec {
            tag: "negative-power",
            sp: Superpotential::power_law_signed(-0.1),
            grid: build_grid(1e-3, 60.0, 400, GridScheme::LogUniform)?,
            left: EndPolicy::Free,
            right: EndPolicy::Dirichlet,
        },
    ])
}

fn adjoint_bit_mismatches(fm: &FactorMatrices) -> usize {
    // sparsity walk: both stored slots of every row
    let mut bad = 0;
    for k in 0..fm.num_rows() {
        let i = fm.rows[k].mid_index;
        for j in [i, i + 1] {
            if (1..=fm.n).contains(&j) && fm.a_entry(k, j).to_bits() != fm.b_entry(j, k).to_bits() {
                bad += 1;
            }
        }
    }
    bad
}

fn check_adjointness_psd() -> Result<ScenarioResult> {
    let t0 = std::time::Instant::now();
    let mut r = Recorder::new();
    let mut inputs = Map::new();
    for spec in adjointness_builds()? {
        let fm = build_factors(&spec.grid, &spec.sp, spec.left, spec.right)?;
        inputs.insert(
            spec.tag.to_string(),
            json!({
                "family": spec.sp.family_name(),
                "x_min": spec.grid.x_min, "x_max": spec.grid.x_max, "n": spec.grid.n,
                "left": format!("{:?}", spec.left), "right": format!("{:?}", spec.right),
            }),
        );
        let bad = adjoint_bit_mismatches(&fm);
        r.eq_int(&format!("{}.adjoint-bit-mismatches", spec.tag), bad as i64, 0, "identity");
        let nn = fm.matrix_n.norm_inf();
        let below_n = sturm_count(&fm.matrix_n, -1e-10 * nn);
        r.eq_int(&format!("{}.n-eigs-below-psd-floor", spec.tag), below_n as i64, 0, "identity");
        let np = fm.partner.norm_inf();
        let below_p = sturm_count(&fm.partner, -1e-10 * np);
        r.eq_int(&format!("{}.partner-eigs-below-psd-floor", spec.tag), below_p as i64, 0, "identity");
    }
    Ok(r.finish("adjointness-psd", Value::Object(inputs), t0))
}

fn check_isospectrality() -> Result<ScenarioResult> {
    let t0 = std::time::Instant::now();
    let mut r = Recorder::new();
    let sp = Superpotential::power_law(2.0)?;
    let grid = build_grid(0.01, 20.01, 400, GridScheme::Uniform)?;
    let fm = build_factors(&grid, &sp, EndPolicy::Dirichlet, EndPolicy::Dirichlet)?;
    let wa = all_eigenvalues(&fm.matrix_n)?;
    let wb = all_eigenvalues(&fm.partner)?;
    let threshold = 1e-10 * fm.matrix_n.norm_inf();
    let (worst, structural) = descending_match(&wa, &wb, threshold);
    r.info("threshold", num(threshold));
    r.le("max-rel-mismatch", worst, 1e-8, "identity");
    r.eq_int("structural-mismatches", structural as i64, 0, "identity");
    let inputs = json!({
        "family": sp.family_name(), "mu": 2.0,
        "x_min": grid.x_min, "x_max": grid.x_max, "n": grid.n, "scheme": "uniform",
    });
    Ok(r.finish("isospectrality", inputs, t0))
}

fn check_interval_well() -> Result<ScenarioResult> {
    let t0 = std::time::Instant::now();
    let mut r = Recorder::new();
    let sp = Superpotential::free_tanh(0.0, 0.0)?;
    let grid = build_grid(0.0, 1.0, 2000, GridScheme::Uniform)?;
    let fm = build_factors(&grid, &sp, EndPolicy::Dirichlet, EndPolicy::Dirichlet)?;
    let rep = lowest_eigenpairs(&fm.matrix_n, 3, false, DEFAULT_SEED)?;
    let pi = std::f64::consts::PI;
    for (m, lam) in rep.eigenvalues.iter().enumerate() {
        let exact = (pi * (m as f64 + 1.0)).powi(2);
        r.rel(&format!("level-{}", m + 1), *lam, exact, 1e-4, "closed-form");
    }
    r.eq_int("negative-count", rep.negative_count as i64, 0, "identity");

    // doubling the box scales the spectrum by 1/4
    let grid2 = build_grid(0.0, 2.0, 2000, GridScheme::Uniform)?;
    let fm2 = build_factors(&grid2, &sp, EndPolicy::Dirichlet, EndPolicy::Dirichlet)?;
    let rep2 = lowest_eigenpairs(&fm2.matrix_n, 1, false, DEFAULT_SEED)?;
    r.rel("level-1-doubled-box", rep2.eigenvalues[0], pi * pi / 4.0, 1e-4, "closed-form");

    let inputs = json!({"l": 1.0, "n": 2000, "k": 3, "scheme": "uniform"});
    Ok(r.finish("interval-well", inputs, t0))
}

fn check_whole_axis() -> Result<ScenarioResult> {
    let t0 = std::time::Instant::now();
    let mut r = Recorder::new();
    let s = 1.0;
    let c2_list = [-1.0, 0.0, 2.0];
    let (big_l, n) = (40.0, 4000);
    let grid = build_grid(-big_l, big_l, n, GridScheme::Uniform)?;
    let coupling0 = derive_coupling(0.0)?;
    // the extension's row constructor owns the symmetric-box precondition
    let bc = boundary_row(&ExtensionId::FreeWholeAxis, &coupling0, &grid)?;
    debug_assert_eq!(bc.row, crate::extensions::BoundaryRow::Dirichlet);

    let mut spectra: Vec<Vec<f64>> = Vec::new();
    for c2 in c2_list {
        let sp = Superpotential::free_tanh(s, c2)?;
        let fm = build_factors(&grid, &sp, EndPolicy::Dirichlet, EndPolicy::Dirichlet)?;
        let rep = lowest_eigenpairs(&fm.matrix_n, 5, false, DEFAULT_SEED)?;
        r.info(
            &format!("lowest5.c2={c2}"),
            Value::Array(rep.eigenvalues.iter().map(|v| num(*v)).collect()),
        );
        spectra.push(rep.eigenvalues);
    }
    let pi = std::f64::consts::PI;
    let box_ground = (pi / (2.0 * big_l)).powi(2);
    r.ge("ground-minus-s2", spectra[1][0] - s * s, -1e-8, "identity");
    r.abs("ground-minus-s2-vs-box", spectra[1][0] - s * s, box_ground, 1e-4, "closed-form");
    let mut pairwise = 0.0f64;
    for i in 0..spectra.len() {
        for j in i + 1..spectra.len() {
            for (a, b) in spectra[i].iter().zip(&spectra[j]) {
                pairwise = pairwise.max((a - b).abs());
            }
        }
    }
    r.le("c2-pairwise-max-diff", pairwise, 1e-6, "closed-form");

    // s = 0 reduces to the plain boxed Laplacian; dyadic widths make the
    // factorized and direct matrices identical, not merely close
    let sp0 = Superpotential::free_tanh(0.0, 0.0)?;
    let gd = build_grid(-32.0, 32.0, 127, GridScheme::Uniform)?;
    let fm0 = build_factors(&gd, &sp0, EndPolicy::Dirichlet, EndPolicy::Dirichlet)?;
    let direct0 = build_direct_hamiltonian(&gd, 0.0, &BoundaryCondition::dirichlet())?;
    r.eq_int("s0-matrix-identical", (fm0.matrix_n == direct0) as i64, 1, "identity");

    // asymmetric box must be refused
    let bad_grid = build_grid(-30.0, 40.0, 100, GridScheme::Uniform)?;
    let refused = matches!(
        boundary_row(&ExtensionId::FreeWholeAxis, &coupling0, &bad_grid),
        Err(Error::BadGridSpec(_))
    );
    r.eq_int("asymmetric-box-rejected", refused as i64, 1, "identity");

    let inputs = json!({
        "s": s, "c2_list": c2_list.to_vec(), "box": [-big_l, big_l], "n": n,
        "scheme": "uniform", "seed": DEFAULT_SEED,
    });
    Ok(r.finish("whole-axis", inputs, t0))
}

fn semiaxis_common(
    r: &mut Recorder,
    tag: &str,
    sp: &Superpotential,
    grid: &Grid,
    s: f64,
) -> Result<()> {
    for (endtag, left) in [("dirichlet", EndPolicy::Dirichlet), ("free", EndPolicy::Free)] {
        let fm = build_factors(grid, sp, left, EndPolicy::Dirichlet)?;
        let nn = fm.matrix_n.norm_inf();
        r.eq_int(
            &format!("{tag}.{endtag}.n-eigs-below-psd-floor"),
            sturm_count(&fm.matrix_n, -1e-10 * nn) as i64,
            0,
            "identity",
        );
        let top_n = top_eigenvalues(&fm.matrix_n, 25)?;
        let top_p = top_eigenvalues(&fm.partner, 25)?;
        let (worst, structural) = descending_match(&top_n, &top_p, 1e-10 * nn);
        r.le(&format!("{tag}.{endtag}.top25-rel-mismatch"), worst, 1e-8, "identity");
        r.eq_int(&format!("{tag}.{endtag}.top25-structural"), structural as i64, 0, "identity");
        let rep = lowest_eigenpairs(&fm.matrix_n, 3, false, DEFAULT_SEED)?;
        r.info(
            &format!("{tag}.{endtag}.lowest3-minus-s2"),
            Value::Array(rep.eigenvalues.iter().map(|v| num(v - s * s)).collect()),
        );
        r.info(&format!("{tag}.{endtag}.negative-count"), json!(rep.negative_count));
    }
    Ok(())
}

fn check_semiaxis_free_1() -> Result<ScenarioResult> {
    let t0 = std::time::Instant::now();
    let mut r = Recorder::new();
    let s = 1.0;
    let sp = Superpotential::free_coth(s, 0.0)?;
    let grid = build_grid(1e-4, 40.0, 3000, GridScheme::LogUniform)?;
    semiaxis_common(&mut r, "coth", &sp, &grid, s)?;

    // c1 = 0 forces the even component out of the ground behavior at the
    // origin: fit over [1e-3, 8e-3] against {x, 1} shows no constant term
    let fm = build_factors(&grid, &sp, EndPolicy::Free, EndPolicy::Dirichlet)?;
    let rep = lowest_eigenpairs(&fm.matrix_n, 1, true, DEFAULT_SEED)?;
    let psi = unscale(&rep.eigenvectors.as_ref().unwrap()[0], grid.volumes());
    let samples = window_samples(grid.nodes(), &psi, 1e-3, 8e-3);
    let fit = fit_origin(&samples, AsymptoticBasis::TwoExponent { p_plus: 1.0, p_minus: 0.0 })?;
    r.le("ground-const-significance", fit.sig_minus, MEMBERSHIP_TOL, "closed-form");
    r.info("ground-fit-residual", num(fit.residual));
    r.info("ground-e0-minus-s2", num(rep.eigenvalues[0] - s * s));

    let inputs = json!({
        "k": 1, "s": s, "c1": 0.0,
        "x_min": grid.x_min, "x_max": grid.x_max, "n": grid.n, "scheme": "log-uniform",
        "fit_window": [1e-3, 8e-3], "seed": DEFAULT_SEED,
    });
    Ok(r.finish("semiaxis-free-1", inputs, t0))
}

fn check_semiaxis_free_2() -> Result<ScenarioResult> {
    let t0 = std::time::Instant::now();
    let mut r = Recorder::new();
    let s = 1.0;
    let sp = Superpotential::free_tanh(s, 0.0)?;
    let grid = build_grid(0.0, 40.0, 2000, GridScheme::Uniform)?;
    semiaxis_common(&mut r, "tanh", &sp, &grid, s)?;

    let fm = build_factors(&grid, &sp, EndPolicy::Dirichlet, EndPolicy::Dirichlet)?;
    let rep = lowest_eigenpairs(&fm.matrix_n, 1, true, DEFAULT_SEED)?;
    r.ge("ground-eigenvalue", rep.eigenvalues[0], -1e-8, "identity");
    // informational classification of the ground vector at the regular end
    let psi = unscale(&rep.eigenvectors.as_ref().unwrap()[0], grid.volumes());
    let samples = window_samples(grid.nodes(), &psi, 0.0, 0.45);
    let fit = fit_origin(&samples, AsymptoticBasis::TwoExponent { p_plus: 1.0, p_minus: 0.0 })?;
    match classify_membership(&fit, MEMBERSHIP_TOL) {
        Ok(cls) => r.info("ground-class", Value::String(cls.to_string())),
        Err(e) => r.info("ground-class", Value::String(format!("unreliable: {e}"))),
    }

    let inputs = json!({
        "k": 2, "s": s, "c2": 0.0,
        "x_min": grid.x_min, "x_max": grid.x_max, "n": grid.n, "scheme": "uniform",
        "seed": DEFAULT_SEED,
    });
    Ok(r.finish("semiaxis-free-2", inputs, t0))
}

fn midpoint_chain_direct(grid: &Grid, alpha1: f64) -> TridiagonalMatrix {
    // direct second-difference operator on the kept midpoint chain; the two
    // boundary rows are copies of their neighbors, harmless under interior bumps
    let mid = grid.midpoints();
    let m = mid.len();
    let dxm: Vec<f64> = mid.windows(2).map(|w| w[1] - w[0]).collect();
    let mut volm = vec![0.0; m];
    volm[0] = dxm[0];
    volm[m - 1] = dxm[m - 2];
    for j in 1..m - 1 {
        volm[j] = 0.5 * (dxm[j - 1] + dxm[j]);
    }
    let mut d = vec![0.0; m];
    let mut off = vec![0.0; m - 1];
    for j in 1..m - 1 {
        d[j] = (1.0 / dxm[j - 1] + 1.0 / dxm[j]) / volm[j] + alpha1 / (mid[j] * mid[j]);
    }
    d[0] = d[1];
    d[m - 1] = d[m - 2];
    for j in 0..m - 1 {
        off[j] = -1.0 / (dxm[j] * (volm[j] * volm[j + 1]).sqrt());
    }
    TridiagonalMatrix::new(d, off)
}

fn check_partner_mu2() -> Result<ScenarioResult> {
    let t0 = std::time::Instant::now();
    let mut r = Recorder::new();
    let mu = 2.0;
    let sp = Superpotential::power_law(mu)?;
    let (alpha, alpha1) = (mu * mu - mu, mu * mu + mu);
    let sizes = [250usize, 500, 1000, 2000];
    let mut res_n = Vec::new();
    let mut res_p = Vec::new();
    for n in sizes {
        let grid = build_grid(0.5, 20.5, n, GridScheme::Uniform)?;
        let fm = build_factors(&grid, &sp, EndPolicy::Dirichlet, EndPolicy::Dirichlet)?;
        let direct = build_direct_hamiltonian(&grid, alpha, &BoundaryCondition::dirichlet())?;
        let bump_n: Vec<f64> = grid
            .nodes()
            .iter()
            .zip(grid.volumes())
            .map(|(&x, &v)| smooth_bump(x, 10.0, 6.0) * v.sqrt())
            .collect();
        res_n.push(factorization_residual(&fm, &direct, &[bump_n])?);

        let chain = midpoint_chain_direct(&grid, alpha1);
        let mid = grid.midpoints();
        let m = mid.len();
        let mut volm = vec![0.0; m];
        let dxm: Vec<f64> = mid.windows(2).map(|w| w[1] - w[0]).collect();
        volm[0] = dxm[0];
        volm[m - 1] = dxm[m - 2];
        for j in 1..m - 1 {
            volm[j] = 0.5 * (dxm[j - 1] + dxm[j]);
        }
        let bump_p: Vec<f64> = mid
            .iter()
            .zip(&volm)
            .map(|(&x, &v)| smooth_bump(x, 10.0, 6.0) * v.sqrt())
            .collect();
        res_p.push(factorization_residual(&fm, &chain, &[bump_p])?);
    }
    r.info("ba-residuals", Value::Array(res_n.iter().map(|v| num(*v)).collect()));
    r.info("ab-residuals", Value::Array(res_p.iter().map(|v| num(*v)).collect()));
    for i in 0..sizes.len() - 1 {
        let slope_n = (res_n[i] / res_n[i + 1]).log2();
        let slope_p = (res_p[i] / res_p[i + 1]).log2();
        r.ge(&format!("ba-slope-{}", i), slope_n, 1.9, "measured-order");
        r.ge(&format!("ab-slope-{}", i), slope_p, 1.9, "measured-order");
    }

    // nonzero spectra of the two compositions agree
    let grid = build_grid(0.5, 20.5, 250, GridScheme::Uniform)?;
    let fm = build_factors(&grid, &sp, EndPolicy::Dirichlet, EndPolicy::Dirichlet)?;
    let wa = all_eigenvalues(&fm.matrix_n)?;
    let wb = all_eigenvalues(&fm.partner)?;
    let threshold = 1e-10 * fm.matrix_n.norm_inf();
    let (worst, structural) = descending_match(&wa, &wb, threshold);
    r.le("spectra-rel-mismatch", worst, 1e-8, "identity");
    r.eq_int("spectra-structural", structural as i64, 0, "identity");

    let inputs = json!({
        "mu": mu, "alpha": alpha, "alpha1": alpha1,
        "x_min": 0.5, "x_max": 20.5, "sizes": sizes.to_vec(), "scheme": "uniform",
        "bump": {"center": 10.0, "radius": 6.0},
    });
    Ok(r.finish("partner-mu2", inputs, t0))
}

fn check_robin_bound_state() -> Result<ScenarioResult> {
    let t0 = std::time::Instant::now();
    let mut r = Recorder::new();
    let lambda = -1.0;
    let grid = build_grid(0.0, 40.0, 4000, GridScheme::Uniform)?;
    let coupling = derive_coupling(0.0)?;
    let ext = ExtensionId::H2(Mixing::Lambda(lambda));
    let bc = boundary_row(&ext, &coupling, &grid)?;
    let direct = build_direct_hamiltonian(&grid, 0.0, &bc)?;
    let rep = lowest_eigenpairs(&direct, 2, true, DEFAULT_SEED)?;

    r.eq_int("negative-count", rep.negative_count as i64, 1, "closed-form");
    r.abs("ground-energy", rep.eigenvalues[0], -1.0, 1e-3, "closed-form");
    r.ge("first-excited", rep.eigenvalues[1], -1e-8, "identity");
    let bound = negative_level_bound(&ext, 0.0)? as i64;
    r.le("negative-count-vs-catalog", rep.negative_count as f64, bound as f64, "catalog");

    let (xs, vols) = crate::discretization::direct_unknowns(&grid, &bc);
    let psi = unscale(&rep.eigenvectors.as_ref().unwrap()[0], &vols);
    let samples = window_samples(&xs, &psi, 0.0, 0.07);
    let fit = fit_origin(&samples, AsymptoticBasis::TwoExponent { p_plus: 1.0, p_minus: 0.0 })?;
    let lam_est = fit.lambda_est.ok_or(Error::UnreliableFit(fit.residual))?;
    r.rel("lambda-est", lam_est, lambda, 0.05, "closed-form");
    r.info("fit-samples", json!(samples.len()));
    r.info("fit-residual", num(fit.residual));

    let inputs = json!({
        "alpha": 0.0, "lambda": lambda, "theta": 1.0 / lambda,
        "x_max": 40.0, "n": 4000, "scheme": "uniform",
        "fit_window": [0.0, 0.07], "seed": DEFAULT_SEED,
    });
    Ok(r.finish("robin-bound-state", inputs, t0))
}

fn check_solver_oracle(seed: u64) -> Result<ScenarioResult> {
    use rand::{Rng, SeedableRng};
    let t0 = std::time::Instant::now();
    let mut r = Recorder::new();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x0DD_BA11);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let n = rng.gen_range(2..=12);
        let diag: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let off: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let t = TridiagonalMatrix::new(diag, off);
        let ours = all_eigenvalues(&t)?;
        let oracle = charpoly_eigenvalues(&t);
        let scale = t.norm_inf().max(1.0);
        for (a, b) in ours.iter().zip(&oracle) {
            worst = worst.max((a - b).abs() / scale);
        }
    }
    r.le("max-scaled-diff", worst, 1e-10, "oracle");
    let inputs = json!({"matrices": 100, "max_n": 12, "seed": seed});
    Ok(r.finish("solver-oracle", inputs, t0))
}

// --- identification rows ----------------------------------------------------

struct IdentRow {
    id: &'static str,
    case: CaseLabel,
    kind: FactorizationKind,
    params: IdentParams,
    alpha: f64,
    eps: f64,
    big_l: f64,
    n: usize,
    end_left: EndPolicy,
    fit_lo: f64,
    table_ext: &'static str,
    /// realized boundary data on the direct side; for two of the power-law
    /// rows this differs from the tabulated name (the table's naming and the
    /// measured near-origin class disagree there; the classifier follows the
    /// measured side)
    bc_ext: ExtensionId,
    lambda_rel_tol: f64,
}

fn ident_rows() -> Vec<IdentRow> {
    use FactorizationKind::*;
    vec![
        IdentRow {
            id: "ident-b-n-h1",
            case: CaseLabel::B,
            kind: CaseBN,
            params: IdentParams::KappaC { kappa: 1.3, c: 2.0 },
            alpha: 1.3 * 1.3 - 0.25,
            eps: 1e-3,
            big_l: 60.0,
            n: 3000,
            end_left: EndPolicy::Dirichlet,
            fit_lo: 0.03,
            table_ext: "H1",
            bc_ext: ExtensionId::H1,
            lambda_rel_tol: 0.0,
        },
        IdentRow {
            id: "ident-b-n-h20",
            case: CaseLabel::B,
            kind: CaseBN,
            params: IdentParams::KappaC { kappa: 0.7, c: 2.0 },
            alpha: 0.7 * 0.7 - 0.25,
            eps: 1e-3,
            big_l: 60.0,
            n: 3000,
            end_left: EndPolicy::Dirichlet,
            fit_lo: 0.03,
            table_ext: "H2(0)",
            bc_ext: ExtensionId::H2(Mixing::Lambda(0.0)),
            lambda_rel_tol: 0.0,
        },
        IdentRow {
            id: "ident-b-a-h2c",
            case: CaseLabel::B,
            kind: CaseBA,
            params: IdentParams::KappaC { kappa: 0.7, c: 2.0 },
            alpha: 0.7 * 0.7 - 0.25,
            eps: 1e-3,
            big_l: 60.0,
            n: 3000,
            end_left: EndPolicy::Free,
            fit_lo: 0.3,
            table_ext: "H2(2)",
            bc_ext: ExtensionId::H2(Mixing::Lambda(2.0)),
            lambda_rel_tol: 0.10,
        },
        IdentRow {
            id: "ident-c-n1-h1",
            case: CaseLabel::C,
            kind: N1,
            params: IdentParams::Mu(2.0),
            alpha: 2.0,
            eps: 1e-3,
            big_l: 60.0,
            n: 3000,
            end_left: EndPolicy::Dirichlet,
            fit_lo: 0.03,
            table_ext: "H1",
            bc_ext: ExtensionId::H1,
            lambda_rel_tol: 0.0,
        },
        IdentRow {
            id: "ident-c-n1-h20",
            case: CaseLabel::C,
            kind: N1,
            params: IdentParams::Mu(1.0),
            alpha: 0.0,
            eps: 1e-3,
            big_l: 60.0,
            n: 3000,
            end_left: EndPolicy::Dirichlet,
            fit_lo: 0.05,
            table_ext: "H2(0)",
            bc_ext: ExtensionId::H2(Mixing::Lambda(0.0)),
            lambda_rel_tol: 0.0,
        },
        IdentRow {
            id: "ident-c-n1-h3inf",
            case: CaseLabel::C,
            kind: N1,
            params: IdentParams::Mu(0.5),
            alpha: -0.25,
            eps: 1e-3,
            big_l: 60.0,
            n: 3000,
            // at kappa = 0 the sqrt(x) behavior does not vanish fast enough
            // for a Dirichlet cut at eps to be harmless; the free end
            // reproduces it
            end_left: EndPolicy::Free,
            fit_lo: 0.01,
            table_ext: "H3Infinity",
            bc_ext: ExtensionId::H3Infinity,
            lambda_rel_tol: 0.0,
        },
        IdentRow {
            id: "ident-c-n1-h2inf",
            case: CaseLabel::C,
            kind: N1,
            params: IdentParams::Mu(0.3),
            alpha: 0.09 - 0.3,
            eps: 1e-6,
            big_l: 60.0,
            n: 3000,
            end_left: EndPolicy::Dirichlet,
            fit_lo: 0.02,
            table_ext: "H2(SubdominantOnly)",
            // tabulated name and measured class disagree on this row: the
            // Dirichlet-end factor build produces the x^{1/2+kappa} branch
            bc_ext: ExtensionId::H2(Mixing::Lambda(0.0)),
            lambda_rel_tol: 0.0,
        },
        IdentRow {
            id: "ident-c-a2-h20",
            case: CaseLabel::C,
            kind: A2,
            params: IdentParams::Mu(0.3),
            alpha: 0.09 - 0.3,
            eps: 1e-3,
            big_l: 60.0,
            n: 3000,
            end_left: EndPolicy::Free,
            fit_lo: 0.01,
            table_ext: "H2(0)",
            // mirror disagreement of the row above
            bc_ext: ExtensionId::H2(Mixing::SubdominantOnly),
            lambda_rel_tol: 0.0,
        },
        IdentRow {
            id: "ident-c-a1-h2inf",
            case: CaseLabel::C,
            kind: A1,
            params: IdentParams::Rho(0.1),
            alpha: 0.01 + 0.1,
            eps: 1e-3,
            big_l: 60.0,
            // x^{-rho} converges slowly on the direct side; the finer grid
            // keeps factored-vs-direct agreement inside 1e-2
            n: 24000,
            end_left: EndPolicy::Free,
            fit_lo: 0.01,
            table_ext: "H2(SubdominantOnly)",
            bc_ext: ExtensionId::H2(Mixing::SubdominantOnly),
            lambda_rel_tol: 0.0,
        },
        IdentRow {
            id: "ident-c-n2-h20",
            case: CaseLabel::C,
            kind: N2,
            params: IdentParams::Rho(0.3),
            alpha: 0.09 + 0.3,
            eps: 1e-3,
            big_l: 60.0,
            n: 3000,
            end_left: EndPolicy::Dirichlet,
            fit_lo: 0.03,
            table_ext: "H2(0)",
            bc_ext: ExtensionId::H2(Mixing::Lambda(0.0)),
            lambda_rel_tol: 0.0,
        },
    ]
}

fn ident_superpotential(row: &IdentRow) -> Result<Superpotential> {
    match (row.kind, row.params) {
        (FactorizationKind::CaseBN | FactorizationKind::CaseBA, IdentParams::KappaC { kappa, c }) => {
            Superpotential::calogero_general(kappa * kappa - 0.25, c)
        }
        (FactorizationKind::N1 | FactorizationKind::A2, IdentParams::Mu(mu)) => {
            Ok(Superpotential::power_law_signed(mu))
        }
        (FactorizationKind::N2 | FactorizationKind::A1, IdentParams::Rho(rho)) => {
            Ok(Superpotential::power_law_signed(-rho))
        }
        _ => Err(Error::BadConfig("parameter shape does not fit the kind".into())),
    }
}

fn run_ident_row(row: &IdentRow, seed: u64) -> Result<ScenarioResult> {
    let t0 = std::time::Instant::now();
    let mut r = Recorder::new();

    let ext = identify_factorization(row.case, row.kind, row.params)?;
    r.eq_str("identified-extension", &ext.to_string(), row.table_ext, "catalog");

    let coupling = derive_coupling(row.alpha)?;
    let sp = ident_superpotential(row)?;
    let grid = build_grid(row.eps, row.big_l, row.n, GridScheme::LogUniform)?;
    let fm = build_factors(&grid, &sp, row.end_left, EndPolicy::Dirichlet)?;

    let bc = boundary_row(&row.bc_ext, &coupling, &grid)?;
    let direct = build_direct_hamiltonian(&grid, row.alpha, &bc)?;

    let rep_f = lowest_eigenpairs(&fm.matrix_n, 5, true, seed)?;
    let rep_d = lowest_eigenpairs(&direct, 5, false, seed)?;
    let mut rel = 0.0f64;
    for (a, b) in rep_f.eigenvalues.iter().zip(&rep_d.eigenvalues) {
        rel = rel.max((a - b).abs() / b.abs().max(1e-300));
    }
    r.le("lowest5-rel-diff", rel, 1e-2, "identity");
    r.info(
        "lowest5-factored",
        Value::Array(rep_f.eigenvalues.iter().map(|v| num(*v)).collect()),
    );
    r.info("lowest5-direct", Value::Array(rep_d.eigenvalues.iter().map(|v| num(*v)).collect()));

    // ground-vector class against the realized boundary data
    let psi = unscale(&rep_f.eigenvectors.as_ref().unwrap()[0], grid.volumes());
    let basis = AsymptoticBasis::for_coupling(&coupling);
    let samples = window_samples(grid.nodes(), &psi, row.fit_lo, 8.0 * row.fit_lo);
    let fit = fit_origin(&samples, basis)?;
    let cls = classify_membership(&fit, MEMBERSHIP_TOL)?;
    let want = row.bc_ext.expected_membership().expect("tabulated rows have a singular endpoint");
    match want {
        DomainClass::Mixed(lam) => {
            let got_lam = match cls {
                DomainClass::Mixed(l) => l,
                _ => f64::NAN,
            };
            r.eq_str(
                "ground-class",
                match cls {
                    DomainClass::Mixed(_) => "Mixed",
                    DomainClass::DominantOnly => "DominantOnly",
                    DomainClass::SubdominantOnly => "SubdominantOnly",
                },
                "Mixed",
                "catalog",
            );
            r.rel("ground-lambda-est", got_lam, lam, row.lambda_rel_tol.max(0.10), "catalog");
        }
        other => {
            r.eq_str("ground-class", &cls.to_string(), &other.to_string(), "catalog");
        }
    }
    r.info("ground-fit-residual", num(fit.residual));
    r.info("ground-sig-plus", num(fit.sig_plus));
    r.info("ground-sig-minus", num(fit.sig_minus));
    if fit.reduced_confidence {
        r.info("reduced-confidence", json!(true));
    }

    // bound from the table name; both solved spectra must respect it
    let bound = negative_level_bound(&ext, row.alpha)?;
    let neg_f = rep_f.eigenvalues.iter().filter(|v| **v < 0.0).count();
    let neg_d = rep_d.eigenvalues.iter().filter(|v| **v < 0.0).count();
    r.le("factored-negatives", neg_f as f64, bound as f64, "catalog");
    r.le("direct-negatives", neg_d as f64, bound as f64, "catalog");

    let inputs = json!({
        "case": format!("{:?}", row.case),
        "kind": row.kind.to_string(),
        "params": row.params,
        "alpha": row.alpha,
        "eps": row.eps, "L": row.big_l, "n": row.n, "scheme": "log-uniform",
        "end_left": format!("{:?}", row.end_left),
        "fit_window": [row.fit_lo, 8.0 * row.fit_lo],
        "bc_ext": row.bc_ext.to_string(),
        "seed": seed,
    });
    Ok(r.finish(row.id, inputs, t0))
}

// --- registry ----------------------------------------------------------------

pub fn scenario_ids() -> Vec<&'static str> {
    let mut ids = vec![
        "riccati-families",
        "adjointness-psd",
        "isospectrality",
        "interval-well",
        "whole-axis",
        "semiaxis-free-1",
        "semiaxis-free-2",
        "partner-mu2",
        "robin-bound-state",
        "solver-oracle",
    ];
    ids.extend(ident_rows().iter().map(|r| r.id));
    ids
}

pub fn run_scenario(id: &str, seed: u64) -> Result<ScenarioResult> {
    match id {
        "riccati-families" => check_riccati_families(),
        "adjointness-psd" => check_adjointness_psd(),
        "isospectrality" => check_isospectrality(),
        "interval-well" => check_interval_well(),
        "whole-axis" => check_whole_axis(),
        "semiaxis-free-1" => check_semiaxis_free_1(),
        "semiaxis-free-2" => check_semiaxis_free_2(),
        "partner-mu2" => check_partner_mu2(),
        "robin-bound-state" => check_robin_bound_state(),
        "solver-oracle" => check_solver_oracle(seed),
        other => {
            if let Some(row) = ident_rows().iter().find(|r| r.id == other) {
                run_ident_row(row, seed)
            } else {
                Err(Error::BadConfig(format!("unknown scenario '{other}'")))
            }
        }
    }
}

pub fn run_all(seed: u64) -> Result<Vec<ScenarioResult>> {
    scenario_ids().into_iter().map(|id| run_scenario(id, seed)).collect()
}

/// Everything except runtime must replay bit-identically.
pub fn results_equal_modulo_runtime(a: &ScenarioResult, b: &ScenarioResult) -> bool {
    let mut va = serde_json::to_value(a).expect("serializable");
    let mut vb = serde_json::to_value(b).expect("serializable");
    va.as_object_mut().unwrap().remove("runtime_ms");
    vb.as_object_mut().unwrap().remove("runtime_ms");
    va == vb
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_has_twenty_unique_ids() {
        let ids = scenario_ids();
        assert_eq!(ids.len(), 20);
        let set: std::collections::BTreeSet<_> = ids.iter().collect();
        assert_eq!(set.len(), 20);
        assert!(run_scenario("no-such-scenario", 0).is_err());
    }

    #[test]
    fn charpoly_oracle_on_known_matrix() {
        // second difference, eigenvalues 2 - 2 cos(k pi / (n+1))
        let n = 8;
        let t = TridiagonalMatrix::new(vec![2.0; n], vec![-1.0; n - 1]);
        let w = charpoly_eigenvalues(&t);
        for (k, lam) in w.iter().enumerate() {
            let exact = 2.0 - 2.0 * ((k + 1) as f64 * std::f64::consts::PI / (n as f64 + 1.0)).cos();
            assert!((lam - exact).abs() < 1e-12, "k={k}");
        }
    }

    #[test]
    fn descending_match_filters_below_threshold() {
        let a = [5.0, 3.0, 1e-14];
        let b = [5.0, 3.0 + 1e-12, 2e-14, 1e-15];
        let (worst, structural) = descending_match(&a, &b, 1e-10);
        assert_eq!(structural, 0);
        assert!(worst < 1e-8);
        // a genuinely missing large value is structural
        let (_, structural) = descending_match(&[5.0, 3.0], &[5.0], 1e-10);
        assert_eq!(structural, 1);
    }

    #[test]
    fn fast_scenarios_pass() {
        for id in ["riccati-families", "interval-well", "solver-oracle", "isospectrality"] {
            let res = run_scenario(id, DEFAULT_SEED).unwrap();
            assert!(res.pass, "{id}: {:?}", failing_names(&res));
        }
    }

    #[test]
    fn replay_is_bit_identical() {
        let a = run_scenario("interval-well", DEFAULT_SEED).unwrap();
        let b = run_scenario("interval-well", DEFAULT_SEED).unwrap();
        assert!(results_equal_modulo_runtime(&a, &b));
    }

    fn failing_names(res: &ScenarioResult) -> Vec<String> {
        res.expected
            .iter()
            .filter(|(name, e)| {
                res.measured.get(*name).map(|m| !satisfies(m, e)).unwrap_or(true)
            })
            .map(|(name, _)| name.clone())
            .collect()
    }

    #[test]
    fn robin_scenario_passes() {
        let res = run_scenario("robin-bound-state", DEFAULT_SEED).unwrap();
        assert!(res.pass, "{:?}", failing_names(&res));
    }

    #[test]
    fn adjointness_scenario_passes() {
        let res = run_scenario("adjointness-psd", DEFAULT_SEED).unwrap();
        assert!(res.pass, "{:?}", failing_names(&res));
    }

    #[test]
    fn whole_axis_scenario_passes() {
        let res = run_scenario("whole-axis", DEFAULT_SEED).unwrap();
        assert!(res.pass, "{:?}", failing_names(&res));
    }

    #[test]
    fn one_ident_row_passes() {
        let res = run_scenario("ident-b-n-h20", DEFAULT_SEED).unwrap();
        assert!(res.pass, "{:?}", failing_names(&res));
    }

    // the full registry; minutes in debug builds, so opt in explicitly
    #[test]
    #[ignore]
    fn every_scenario_passes() {
        let mut bad = Vec::new();
        for id in scenario_ids() {
            let res = run_scenario(id, DEFAULT_SEED).unwrap();
            eprintln!(
                "{id}: {} ({} ms){}",
                if res.pass { "pass" } else { "FAIL" },
                res.runtime_ms,
                if res.pass { String::new() } else { format!(" {:?}", failing_names(&res)) }
            );
            if !res.pass {
                bad.push(id);
            }
        }
        assert!(bad.is_empty(), "failing scenarios: {bad:?}");
    }
}
