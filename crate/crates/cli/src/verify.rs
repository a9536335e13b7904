//! Identity checks behind `nearfield verify`. Every criterion compares a
//! library result with an independent evaluation (closed form, direct
//! quadrature or finite differences) and times itself.

use std::f64::consts::PI;
use std::time::Instant;

use nearfield_core::engine::{kernel_mixed, kernel_momentum};
use nearfield_core::ftir::{current_factor, field_k_small_q, layer_braces, layer_geometry, FtirConfig};
use nearfield_core::interactions::{
    nonresonant_potential, resonant_potential, transfer_probability, AtomModel, Decomposition, ResonantReading,
    TransferMethod,
};
use nearfield_core::numerics::{
    erfc, fit_power_law, ft_numeric_with, ft_windowed_extrapolated, integrate, integrate_partition,
    pair_with_test_function, radial_ft_windowed, Distribution, FtConvention, FtOptions, Prefactor, QuadratureSpec,
    TestFunction,
};
use nearfield_core::parallel::Execution;
use nearfield_core::point_charge::{field_mixed, field_time, self_energy, ChargeConfig, SelfEnergyMethod};
use nearfield_core::propagators::{
    d_n_canonical, singular_mixed, singular_time, superluminal_fraction, LogScale, MixedKind, MixedPoint,
    SpacetimePoint, TimeKind, CONVENTION as PROPAGATOR_FT,
};
use nearfield_core::switching::{fis_freq, fis_time, SwitchingSpec, TemporalForm, CONVENTION as SWITCHING_FT};
use nearfield_core::Result;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::output::{render, VERSION};
use crate::request::{Format, ScanRequest};
use crate::scan::run_scan;

pub const SUITES: [(&str, &[u8]); 9] = [
    ("all", &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13]),
    ("numerics", &[2, 4]),
    ("propagators", &[2, 3, 4, 11]),
    ("switching", &[5, 12]),
    ("nearfield_engine", &[8]),
    ("point_charge", &[1, 9]),
    ("ftir", &[6, 7]),
    ("interactions", &[10, 11]),
    ("cli", &[13]),
];

/// One measured quantity with its gate; passes when `measured <= tolerance`.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub label: String,
    pub measured: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    fn new(label: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Self { label: label.into(), measured, tolerance, pass: measured <= tolerance }
    }

    fn flag(label: impl Into<String>, ok: bool) -> Self {
        Self::new(label, if ok { 0.0 } else { 1.0 }, 0.0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub checks: Vec<Check>,
    /// Set when the criterion could not be evaluated at all.
    pub error: Option<String>,
    pub runtime_s: f64,
    pub runtime_limit_s: f64,
}

impl Outcome {
    pub fn pass(&self) -> bool {
        self.error.is_none()
            && !self.checks.is_empty()
            && self.checks.iter().all(|c| c.pass)
            && self.runtime_s < self.runtime_limit_s
    }

    /// The check closest to (or furthest past) its gate.
    pub fn worst(&self) -> Option<&Check> {
        let score = |c: &Check| {
            if c.pass && c.tolerance > 0.0 {
                c.measured / c.tolerance
            } else if c.pass {
                0.0
            } else {
                f64::INFINITY
            }
        };
        self.checks.iter().max_by(|a, b| score(a).total_cmp(&score(b)))
    }

    /// `PASS  1 name  measured=.. tol=..  runtime=..s (< ..s)`
    pub fn line(&self) -> String {
        let status = if self.pass() { "PASS" } else { "FAIL" };
        let body = match (&self.error, self.worst()) {
            (Some(e), _) => format!("error: {e}"),
            (None, Some(c)) => format!("{}: measured={:.3e} tol={:.1e}", c.label, c.measured, c.tolerance),
            (None, None) => "no checks".to_string(),
        };
        format!(
            "{status} {:>2} {:<28} {body}  runtime={:.3}s (< {}s)",
            self.id, self.name, self.runtime_s, self.runtime_limit_s
        )
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({"label": c.label, "measured": c.measured, "tolerance": c.tolerance, "pass": c.pass}))
            .collect();
        json!({
            "id": self.id,
            "name": self.name,
            "pass": self.pass(),
            "error": self.error,
            "runtime_s": self.runtime_s,
            "runtime_limit_s": self.runtime_limit_s,
            "checks": checks,
        })
    }
}

fn spec() -> QuadratureSpec {
    QuadratureSpec::default()
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

/// Self-energy coefficient against 7/(24 pi^4), and the full numeric energy
/// within a factor 2 of it.
fn self_energy_coefficient() -> Result<Vec<Check>> {
    let cfg = ChargeConfig::new(1.0, 1.0)?;
    let closed = 7.0 / (24.0 * PI.powi(4));
    let a = self_energy(&cfg, SelfEnergyMethod::AsymptoticPiecewise, &spec())?;
    let f = self_energy(&cfg, SelfEnergyMethod::FullNumeric, &spec())?;
    // the coefficient is independent of Q and gamma
    let scaled = self_energy(&ChargeConfig::new(2.5, 0.3)?, SelfEnergyMethod::AsymptoticPiecewise, &spec())?;
    let factor = (f.coefficient / closed).max(closed / f.coefficient);
    Ok(vec![
        Check::new("|coef - 7/(24 pi^4)|", (a.coefficient - closed).abs(), 1e-12),
        Check::new("|coef(Q=2.5, gamma=0.3) - 7/(24 pi^4)|", (scaled.coefficient - closed).abs(), 1e-12),
        Check::new("full/asymptotic factor", factor, 2.0),
    ])
}

/// int phi'' D_N dt against (phi(r) - phi(-r))/(4 pi r) for random packets.
fn distributional_identity() -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0015);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let amp = rng.gen_range(0.2..2.0);
        let t0 = rng.gen_range(-2.0..2.0);
        let s = rng.gen_range(0.3..1.5);
        let phi = TestFunction::gaussian(amp, t0, s)?;
        let g = |t: f64| amp * (-(t - t0) * (t - t0) / (2.0 * s * s)).exp();
        for r in [0.5, 1.0, 2.0] {
            let lhs = pair_with_test_function(Distribution::DN, r, &phi.second_derivative(), &spec())?;
            let rhs = (g(r) - g(-r)) / (4.0 * PI * r);
            worst = worst.max((lhs - rhs).abs());
        }
    }
    Ok(vec![Check::new("max |pairing - closed form|", worst, 1e-8)])
}

/// Central differences of D_N inside the cone against -1/(4 pi r).
fn derivative_identity() -> Result<Vec<Check>> {
    let mut worst: f64 = 0.0;
    for i in 0..10 {
        let r = 0.2 * 1.5f64.powi(i);
        for j in 0..10 {
            let t = r * (-0.9 + 1.8 * j as f64 / 9.0);
            let h = 1e-5 * r;
            let at = |t: f64| -> Result<f64> {
                Ok(singular_time(TimeKind::DN, SpacetimePoint::new(t, r)?, LogScale::default())?.re)
            };
            let fd = (at(t + h)? - at(t - h)?) / (2.0 * h);
            let want = -1.0 / (4.0 * PI * r);
            worst = worst.max(((fd - want) / want).abs());
        }
    }
    Ok(vec![Check::new("max relative error, 100 points", worst, 1e-6)])
}

/// Windowed numeric transform of D_N(., r) against the mixed closed form.
fn ft_consistency() -> Result<Vec<Check>> {
    let freqs: [f64; 5] = [0.5, -0.75, 1.0, -1.5, 2.0];
    let mut worst: f64 = 0.0;
    for i in 0..20 {
        let w = freqs[i % freqs.len()];
        let x = 0.5 + 4.5 * i as f64 / 19.0;
        let r = x / w.abs();
        let s = spec().with_hint(r);
        let num = ft_windowed_extrapolated(|t| d_n_canonical(t, r), w, PROPAGATOR_FT, &s, &[-r, r])?;
        let closed = singular_mixed(MixedKind::DN, MixedPoint::new(w, r)?)?;
        worst = worst.max(rel(num, closed));
    }
    Ok(vec![Check::new("max relative error, 20 (w, r) pairs", worst, 1e-4)])
}

/// Numeric transforms of g1, g2 and two-level g1 against their spectra, and
/// unit spectral weight.
fn switching_pairs() -> Result<Vec<Check>> {
    let gamma = 1.0;
    let specs = [
        ("g1", SwitchingSpec::new(TemporalForm::G1, gamma)?),
        ("g2", SwitchingSpec::new(TemporalForm::G2, gamma)?),
        ("g1(.|w0)", SwitchingSpec::two_level(gamma, 3.0)?),
    ];
    let opts = FtOptions { breakpoints: vec![0.0], window: None };
    let mut out = Vec::new();
    for (label, s) in specs {
        let mut worst: f64 = 0.0;
        for i in 0..41 {
            let w = -10.0 * gamma + 20.0 * gamma * i as f64 / 40.0;
            let num = ft_numeric_with(|t| fis_time(&s, t).unwrap_or(f64::NAN), w, SWITCHING_FT, &spec(), &opts)?;
            worst = worst.max((num - Complex64::from(fis_freq(&s, w)?)).norm());
        }
        out.push(Check::new(format!("{label}: max |numeric - closed|"), worst, 1e-10));
        let pts = [f64::NEG_INFINITY, -3.0, 0.0, 3.0, f64::INFINITY];
        let total = integrate_partition(&|w: f64| fis_freq(&s, w).unwrap_or(f64::NAN), &pts, &spec())?;
        out.push(Check::new(format!("{label}: |int g dw - 1|"), (total.value - 1.0).abs(), 1e-8));
    }
    Ok(out)
}

/// Closed-form current factor against direct quadrature of the Gaussian layer.
fn current_factor_check() -> Result<Vec<Check>> {
    let dz = 0.8;
    let mut worst: f64 = 0.0;
    for i in 0..50 {
        let q = 5.0 * i as f64 / 49.0 / dz;
        let s = spec().with_hint(q);
        let direct = integrate(
            |s: f64| Complex64::from_polar((-2.0 * s * s / (dz * dz)).exp(), q * s),
            0.0,
            8.0 * dz,
            &s,
        )?
        .value;
        worst = worst.max(rel(current_factor(q, dz)?, direct));
    }
    Ok(vec![Check::new("max relative error, q dz in [0, 5]", worst, 1e-8)])
}

/// Normalized small-q form against the normalized layer braces.
fn ftir_small_q() -> Result<Vec<Check>> {
    let n1 = 1.5;
    let phi = 1.0;
    let cfg = FtirConfig::new(n1, 1.0, phi, 1.0, 1.0, 1.0)?;
    let dz = layer_geometry(&cfg)?.dz1;
    let b0 = layer_braces(&cfg, 0.0)?.norm();
    let s0 = field_k_small_q(&cfg, 0.0)?;
    let mut out = Vec::new();
    for (qdz, tol) in [(0.1, 1e-2), (0.01, 1e-4)] {
        let q = qdz / dz;
        let exact = layer_braces(&cfg, q)?.norm() / b0;
        let small = field_k_small_q(&cfg, q)? / s0;
        out.push(Check::new(format!("relative difference at q dz = {qdz}"), (small / exact - 1.0).abs(), tol));
    }
    Ok(out)
}

/// Radial transform of the mixed kernel against the momentum kernel.
fn kernel_consistency() -> Result<Vec<Check>> {
    let pts = [
        (-1.0, 2.0),
        (-1.0, 0.5),
        (-2.0, 3.0),
        (-0.5, 1.5),
        (-1.5, 0.7),
        (-3.0, 1.0),
        (-0.8, 2.5),
        (-2.5, 4.0),
        (-1.2, 0.3),
        (-0.3, 0.9),
    ];
    let mut worst: f64 = 0.0;
    for (w, k) in pts {
        let num = radial_ft_windowed(|r| kernel_mixed(w, r).unwrap_or(Complex64::new(f64::NAN, 0.0)), k, w, &spec())?;
        worst = worst.max(rel(num, kernel_momentum(w, k)?));
    }
    Ok(vec![Check::new("max relative error, 10 points", worst, 1e-3)])
}

/// Closed-form time-domain field against the numeric inverse transform.
fn point_charge_time() -> Result<Vec<Check>> {
    let cfg = ChargeConfig::new(1.0, 1.0)?;
    let conv = FtConvention::new(-1, Prefactor::One)?;
    let mut worst: f64 = 0.0;
    for (t, r) in [(0.3, 1.0), (2.0, 1.0), (0.0, 1.5), (-0.5, 0.7), (1.0, 2.5)] {
        let s = spec().with_hint(t + r);
        let num = ft_windowed_extrapolated(
            |w| field_mixed(&cfg, w, r).unwrap_or(Complex64::new(f64::NAN, 0.0)),
            t,
            conv,
            &s,
            &[0.0],
        )?;
        worst = worst.max(rel(num, field_time(&cfg, t, r)?));
    }
    Ok(vec![Check::new("max relative error, 5 points", worst, 1e-3)])
}

/// Log-log slopes over w0 R in [1e-3, 1e-2].
fn scaling_laws() -> Result<Vec<Check>> {
    let a = AtomModel::new(1.0, 0.01, 1.0)?;
    let b = AtomModel::new(1.0, 0.01, 1.3)?;
    let radii: Vec<f64> = (0..10).map(|i| 1e-3 * 10f64.powf(i as f64 / 9.0)).collect();
    let slope = |f: &dyn Fn(f64) -> Result<f64>| -> Result<f64> {
        let pts = radii.iter().map(|&r| Ok((r, f(r)?.abs()))).collect::<Result<Vec<_>>>()?;
        Ok(fit_power_law(&pts)?.slope)
    };
    let nr = slope(&|r| Ok(nonresonant_potential(&a, &b, r, Decomposition::NearOnly, &spec())?.value))?;
    let fo = slope(&|r| Ok(transfer_probability(&a, &b, r, TransferMethod::DeltaCollapse, &spec())?.w))?;
    let re = slope(&|r| Ok(resonant_potential(&a, r, ResonantReading::Contraction, &spec())?.value))?;
    Ok(vec![
        Check::new(format!("nonresonant slope {nr:.4}, |slope + 6|"), (nr + 6.0).abs(), 0.02),
        Check::new(format!("Förster slope {fo:.4}, |slope + 6|"), (fo + 6.0).abs(), 0.02),
        Check::new(format!("resonant slope {re:.4}, |slope + 3|"), (re + 3.0).abs(), 0.02),
    ])
}

/// Superluminal share against direct quadrature of D_N^2, and its limits.
fn superluminal_split() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let mut worst_q: f64 = 0.0;
    let mut worst_quarter: f64 = 0.0;
    for r in [0.5, 1.0, 3.0] {
        let t = 2.0 * r;
        let sq = |x: f64| d_n_canonical(x, r).powi(2);
        let inside = integrate_partition(&sq, &[-r, 0.0, r], &spec())?.value;
        let total = integrate_partition(&sq, &[-t, -r, 0.0, r, t], &spec())?.value;
        let f = superluminal_fraction(r, t)?;
        worst_q = worst_q.max((f - inside / total).abs());
        worst_quarter = worst_quarter.max((f - 0.25).abs());
    }
    out.push(Check::new("|fraction(r, 2r) - quadrature|", worst_q, 1e-10));
    out.push(Check::new("|fraction(r, 2r) - 1/4|", worst_quarter, 1e-10));
    out.push(Check::new("|1 - fraction(r, 1.001 r)|", 1.0 - superluminal_fraction(1.0, 1.001)?, 1e-2));
    out.push(Check::new("fraction(r, 1e4 r)", superluminal_fraction(1.0, 1e4)?, 1e-2));
    Ok(out)
}

/// Pairing of g(w) with exp(-w^2/2) approaches phi(0) = 1 as gamma shrinks.
fn delta_limit() -> Result<Vec<Check>> {
    let phi = |w: f64| (-w * w / 2.0).exp();
    let gammas = [1e-1, 1e-2, 1e-3];
    type Oracle = fn(f64) -> f64;
    let forms: [(&str, TemporalForm, Oracle); 2] = [
        ("g1", TemporalForm::G1, |g| (g * g / 2.0).exp() * erfc(g / 2f64.sqrt())),
        ("g2", TemporalForm::G2, |g| 1.0 / (1.0 + 2.0 * g * g).sqrt()),
    ];
    let mut out = Vec::new();
    for (label, form, oracle) in forms {
        let mut errs = Vec::new();
        let mut worst_oracle: f64 = 0.0;
        for g in gammas {
            let s = SwitchingSpec::new(form, g)?;
            let pts = [f64::NEG_INFINITY, -10.0 * g, 0.0, 10.0 * g, f64::INFINITY];
            let p = integrate_partition(&|w: f64| fis_freq(&s, w).unwrap_or(f64::NAN) * phi(w), &pts, &spec())?.value;
            errs.push((p - 1.0).abs());
            worst_oracle = worst_oracle.max((p - oracle(g)).abs());
        }
        out.push(Check::new(format!("{label}: |pairing - phi(0)| at gamma = 1e-3"), errs[2], 1e-3));
        out.push(Check::flag(format!("{label}: error decreases with gamma"), errs.windows(2).all(|e| e[1] < e[0])));
        out.push(Check::new(format!("{label}: |pairing - closed form|"), worst_oracle, 1e-9));
    }
    Ok(out)
}

/// Two identical scans rendered to files compare byte for byte.
fn determinism() -> Result<Vec<Check>> {
    let req = ScanRequest::new("point-charge", "field_time")
        .param("r", 1.0)
        .grid("t:-3:3:41".parse().expect("static grid"))
        .grid("gamma:0.5:2:4:log".parse().expect("static grid"));
    let run = |exec: Execution, fmt: Format| -> std::result::Result<String, CliError> {
        let res = run_scan(&req, exec)?;
        render(&res, fmt)
    };
    let mut out = Vec::new();
    for fmt in [Format::Csv, Format::Json] {
        let (a, b, seq) = match (
            run(Execution::Parallel, fmt),
            run(Execution::Parallel, fmt),
            run(Execution::Sequential, fmt),
        ) {
            (Ok(a), Ok(b), Ok(c)) => (a, b, c),
            _ => return Err(nearfield_core::Error::Domain("determinism scan failed".into())),
        };
        let dir = std::env::temp_dir();
        let tag = format!("{}-{:?}", std::process::id(), fmt);
        let pa = dir.join(format!("nearfield-det-a-{tag}"));
        let pb = dir.join(format!("nearfield-det-b-{tag}"));
        let same = std::fs::write(&pa, &a)
            .and_then(|_| std::fs::write(&pb, &b))
            .and_then(|_| Ok(std::fs::read(&pa)? == std::fs::read(&pb)?))
            .unwrap_or(false);
        let _ = std::fs::remove_file(&pa);
        let _ = std::fs::remove_file(&pb);
        out.push(Check::flag(format!("{fmt:?}: two runs byte-identical"), same));
        out.push(Check::flag(format!("{fmt:?}: sequential equals parallel"), seq == a));
    }
    Ok(out)
}

type CriterionFn = fn() -> Result<Vec<Check>>;

pub const CRITERIA: [(u8, &str, f64, CriterionFn); 13] = [
    (1, "self_energy_coefficient", 5.0, self_energy_coefficient),
    (2, "distributional_identity", 2.0, distributional_identity),
    (3, "derivative_identity", 1.0, derivative_identity),
    (4, "ft_consistency", 30.0, ft_consistency),
    (5, "switching_ft_pairs", 10.0, switching_pairs),
    (6, "current_factor", 5.0, current_factor_check),
    (7, "ftir_small_q", 1.0, ftir_small_q),
    (8, "kernel_representation", 60.0, kernel_consistency),
    (9, "point_charge_time_field", 60.0, point_charge_time),
    (10, "scaling_laws", 120.0, scaling_laws),
    (11, "superluminal_split", 1.0, superluminal_split),
    (12, "switching_delta_limit", 5.0, delta_limit),
    (13, "scan_determinism", 5.0, determinism),
];

pub fn run_criterion(id: u8) -> Outcome {
    let &(id, name, limit, f) = CRITERIA.iter().find(|c| c.0 == id).expect("known criterion id");
    let start = Instant::now();
    let res = f();
    let runtime_s = start.elapsed().as_secs_f64();
    let (checks, error) = match res {
        Ok(c) => (c, None),
        Err(e) => (Vec::new(), Some(e.to_string())),
    };
    Outcome { id, name, checks, error, runtime_s, runtime_limit_s: limit }
}

pub fn suite_ids(suite: &str) -> std::result::Result<&'static [u8], CliError> {
    SUITES.iter().find(|s| s.0 == suite).map(|s| s.1).ok_or_else(|| {
        let names: Vec<&str> = SUITES.iter().map(|s| s.0).collect();
        CliError::validation(format!("unknown suite `{suite}`; expected one of {}", names.join(", ")))
    })
}

pub struct Report {
    pub suite: String,
    pub outcomes: Vec<Outcome>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.pass())
    }

    pub fn summary(&self) -> String {
        let mut s = String::new();
        for o in &self.outcomes {
            s.push_str(&o.line());
            s.push('\n');
        }
        let n = self.outcomes.iter().filter(|o| o.pass()).count();
        s.push_str(&format!("{n}/{} criteria passed (suite `{}`)\n", self.outcomes.len(), self.suite));
        s
    }

    pub fn to_json(&self) -> Value {
        json!({
            "version": VERSION,
            "suite": self.suite,
            "passed": self.outcomes.iter().filter(|o| o.pass()).count(),
            "failed": self.outcomes.iter().filter(|o| !o.pass()).count(),
            "criteria": self.outcomes.iter().map(Outcome::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Run a suite; criteria run one after another so their timings are honest.
pub fn run_verify(suite: &str) -> std::result::Result<Report, CliError> {
    let ids = suite_ids(suite)?;
    Ok(Report { suite: suite.to_string(), outcomes: ids.iter().map(|&id| run_criterion(id)).collect() })
}
