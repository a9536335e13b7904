//! Registry of scannable quantities: their parameters with defaults, their
//! output columns, and how to evaluate one grid point.

use std::collections::BTreeMap;

use nearfield_core::engine::{kernel_mixed, kernel_momentum, kernel_momentum_exact};
use nearfield_core::ftir::{
    current_factor, field_k, field_k_small_q, field_real_space, layer_braces, layer_geometry,
    refraction_profile, resolution_scale, FtirConfig,
};
use nearfield_core::interactions::{
    nonresonant_potential, polarizability, resonant_potential, scattering_duration,
    transfer_probability, transfer_split, AtomModel, Decomposition, ResonantReading, TransferMethod,
};
use nearfield_core::numerics::QuadratureSpec;
use nearfield_core::point_charge::{
    charge_density_mixed, current_freq, current_time, density_ratio_to_far_field, field_asymptotic,
    field_mixed, field_momentum, field_momentum_exact, field_time, field_time_printed, self_energy,
    ChargeConfig, FrequencyRegime, SelfEnergyMethod,
};
use nearfield_core::propagators::{
    nf_squared, singular_momentum_nf, singular_mixed, singular_time_signed, superluminal_fraction,
    tensor_decompose_mixed, tensor_decompose_mixed_exact, tensor_decompose_time, tensor_momentum,
    unit_vector, Block, LogScale, MixedKind, MixedPoint, Region, Selection, SignConvention,
    SpacetimePoint, SpectralPoint, TimeKind,
};
use nearfield_core::switching::{
    fis_freq, fis_ftir, fis_spatial, fis_time, momentum_alteration, Regime, SpatialForm,
    SpatialSwitchingSpec, SwitchingSpec, TemporalForm,
};
use nearfield_core::{Error, Result};
use num_complex::Complex64;

pub const TARGETS: [&str; 6] = ["propagator", "decompose", "switching", "point-charge", "ftir", "interactions"];

/// Physical dimension of a column, for display-unit conversion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dim {
    None,
    Length,
    Time,
    Frequency,
    Wavenumber,
}

impl Dim {
    pub fn label(self) -> &'static str {
        match self {
            Dim::None => "1",
            Dim::Length => "length",
            Dim::Time => "time",
            Dim::Frequency => "1/time",
            Dim::Wavenumber => "1/length",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Column {
    pub name: String,
    pub dim: Dim,
}

pub type Params = BTreeMap<&'static str, f64>;
type Eval = Box<dyn Fn(&Params) -> Result<Vec<f64>> + Send + Sync>;
type ChargeFn = fn(&ChargeConfig, f64, f64) -> Result<Complex64>;
type KernelFn = fn(f64, f64) -> Result<Complex64>;

pub struct Quantity {
    pub target: &'static str,
    pub name: &'static str,
    pub summary: &'static str,
    /// (name, default, dimension); a NaN default marks a required value.
    pub params: Vec<(&'static str, f64, Dim)>,
    pub outputs: Vec<Column>,
    eval: Eval,
}

impl Quantity {
    pub fn eval(&self, p: &Params) -> Result<Vec<f64>> {
        (self.eval)(p)
    }

    pub fn param_dim(&self, name: &str) -> Option<Dim> {
        self.params.iter().find(|(n, _, _)| *n == name).map(|p| p.2)
    }
}

fn col(name: &str, dim: Dim) -> Column {
    Column { name: name.to_string(), dim }
}

fn cx(name: &str, dim: Dim) -> Vec<Column> {
    vec![col(&format!("{name}_re"), dim), col(&format!("{name}_im"), dim)]
}

fn re_im(z: Complex64) -> Vec<f64> {
    vec![z.re, z.im]
}

fn bad(name: &str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter { name: name.to_string(), reason: reason.into() }
}

/// Integer-coded choice parameter.
fn choice<T: Copy>(p: &Params, name: &str, options: &[T]) -> Result<T> {
    let v = p[name];
    let i = v as usize;
    if v.fract() != 0.0 || v < 0.0 || i >= options.len() {
        return Err(bad(name, format!("must be an integer code in 0..{}", options.len() - 1)));
    }
    Ok(options[i])
}

fn flag(p: &Params, name: &str) -> Result<bool> {
    choice(p, name, &[false, true])
}

fn spec() -> QuadratureSpec {
    QuadratureSpec::default()
}

const Q_PARAMS: [(&str, f64, Dim); 2] = [("q", 1.0, Dim::None), ("gamma", 1.0, Dim::Frequency)];

fn charge(p: &Params) -> Result<ChargeConfig> {
    ChargeConfig::new(p["q"], p["gamma"])
}

const FTIR_PARAMS: [(&str, f64, Dim); 6] = [
    ("n1", 1.5, Dim::None),
    ("n2", 1.0, Dim::None),
    ("phi", 1.0471975511965976, Dim::None),
    ("omega", 1.0, Dim::Frequency),
    ("alpha", 1.0, Dim::None),
    ("e0", 1.0, Dim::None),
];

fn ftir_cfg(p: &Params) -> Result<FtirConfig> {
    FtirConfig::new(p["n1"], p["n2"], p["phi"], p["omega"], p["alpha"], p["e0"])
}

const ATOM_PARAMS: [(&str, f64, Dim); 6] = [
    ("omega0", 1.0, Dim::Frequency),
    ("linewidth", 0.01, Dim::Frequency),
    ("d", 1.0, Dim::None),
    ("omega0_2", 1.0, Dim::Frequency),
    ("linewidth_2", 0.01, Dim::Frequency),
    ("d_2", 1.0, Dim::None),
];

fn atoms(p: &Params) -> Result<(AtomModel, AtomModel)> {
    Ok((
        AtomModel::new(p["omega0"], p["linewidth"], p["d"])?,
        AtomModel::new(p["omega0_2"], p["linewidth_2"], p["d_2"])?,
    ))
}

fn with(base: &[(&'static str, f64, Dim)], extra: &[(&'static str, f64, Dim)]) -> Vec<(&'static str, f64, Dim)> {
    extra.iter().chain(base.iter()).copied().collect()
}

const NAN: f64 = f64::NAN;

fn tensor_columns() -> Vec<Column> {
    let mut out = vec![
        col("singular", Dim::None),
        col("weight_re", Dim::None),
        col("weight_im", Dim::None),
    ];
    for i in 1..=3 {
        for k in 1..=3 {
            out.extend(cx(&format!("c{i}{k}"), Dim::None));
        }
    }
    out
}

// Finite blocks give their 9 components; singular blocks give weight and
// tensor structure with `singular` = 1.
fn block_row(b: &Block) -> Vec<f64> {
    let mut out = Vec::with_capacity(21);
    match b {
        Block::Finite(t) => {
            out.extend([0.0, 0.0, 0.0]);
            for row in &t.values {
                for v in row {
                    out.extend([v.re, v.im]);
                }
            }
        }
        Block::OnCone { tensor, weight, .. } => {
            out.extend([1.0, *weight, 0.0]);
            for row in tensor {
                for v in row {
                    out.extend([*v, 0.0]);
                }
            }
        }
        Block::OnShell { tensor, weight, .. } => {
            out.extend([1.0, weight.re, weight.im]);
            for row in tensor {
                for v in row {
                    out.extend([*v, 0.0]);
                }
            }
        }
    }
    out
}

fn direction(p: &Params) -> Result<[f64; 3]> {
    unit_vector([p["ex"], p["ey"], p["ez"]])
}

const DIR_PARAMS: [(&str, f64, Dim); 3] = [("ex", 0.0, Dim::None), ("ey", 0.0, Dim::None), ("ez", 1.0, Dim::None)];

/// Every scannable quantity.
pub fn registry() -> Vec<Quantity> {
    let mut q: Vec<Quantity> = Vec::new();
    let mut add = |target, name, summary, params: Vec<(&'static str, f64, Dim)>, outputs: Vec<Column>, eval: Eval| {
        q.push(Quantity { target, name, summary, params, outputs, eval });
    };

    // propagator
    let time_kinds = [
        ("dn", TimeKind::DN, "D_N(t, r)"),
        ("dn1", TimeKind::DN1, "D_N1(t, r), log scale mu"),
        ("dn_plus", TimeKind::DNPlus, "D_N+(t, r)"),
        ("dn_minus", TimeKind::DNMinus, "D_N-(t, r)"),
    ];
    for (name, kind, summary) in time_kinds {
        add(
            "propagator",
            name,
            summary,
            vec![
                ("t", NAN, Dim::Time),
                ("r", NAN, Dim::Length),
                ("mu", 1.0, Dim::Time),
                ("printed_sign", 0.0, Dim::None),
            ],
            cx(name, Dim::None),
            Box::new(move |p| {
                let sign = choice(p, "printed_sign", &[SignConvention::Canonical, SignConvention::Printed])?;
                let v = singular_time_signed(kind, SpacetimePoint::new(p["t"], p["r"])?, LogScale::new(p["mu"])?, sign)?;
                Ok(re_im(v))
            }),
        );
    }
    let mixed_kinds = [
        ("mixed_d", MixedKind::D),
        ("mixed_d1", MixedKind::D1),
        ("mixed_d_plus", MixedKind::DPlus),
        ("mixed_d_minus", MixedKind::DMinus),
        ("mixed_dn", MixedKind::DN),
        ("mixed_dn1", MixedKind::DN1),
        ("mixed_dn_plus", MixedKind::DNPlus),
        ("mixed_dn_minus", MixedKind::DNMinus),
    ];
    for (name, kind) in mixed_kinds {
        add(
            "propagator",
            name,
            "singular function in (omega, r)",
            vec![("omega", NAN, Dim::Frequency), ("r", NAN, Dim::Length)],
            cx(name, Dim::None),
            Box::new(move |p| Ok(re_im(singular_mixed(kind, MixedPoint::new(p["omega"], p["r"])?)?))),
        );
    }
    add(
        "propagator",
        "momentum_nf",
        "near-field scalar in (omega, k)",
        vec![("omega", NAN, Dim::Frequency), ("k", NAN, Dim::Wavenumber)],
        cx("momentum_nf", Dim::None),
        Box::new(|p| Ok(re_im(singular_momentum_nf(SpectralPoint::new(p["omega"], p["k"])?)?))),
    );
    add(
        "propagator",
        "nf_squared",
        "|D(t, r)|^2 of the near-field block",
        vec![("t", NAN, Dim::Time), ("r", NAN, Dim::Length)],
        vec![col("nf_squared", Dim::None)],
        Box::new(|p| Ok(vec![nf_squared(SpacetimePoint::new(p["t"], p["r"])?)?])),
    );
    add(
        "propagator",
        "superluminal_fraction",
        "superluminal share of |D_N|^2 in the window |t| < T",
        vec![("r", NAN, Dim::Length), ("window", NAN, Dim::Time)],
        vec![col("superluminal_fraction", Dim::None)],
        Box::new(|p| Ok(vec![superluminal_fraction(p["r"], p["window"])?])),
    );

    // decompose
    for region in Region::ALL {
        add(
            "decompose",
            ["time_ff", "time_if", "time_nf"][region as usize],
            "tensor block in (t, r), direction e",
            with(&DIR_PARAMS, &[("t", NAN, Dim::Time), ("r", NAN, Dim::Length), ("printed_sign", 0.0, Dim::None)]),
            tensor_columns(),
            Box::new(move |p| {
                let sign = choice(p, "printed_sign", &[SignConvention::Canonical, SignConvention::Printed])?;
                let b = tensor_decompose_time(SpacetimePoint::new(p["t"], p["r"])?, direction(p)?, Selection::One(region), sign)?;
                Ok(block_row(&b[0]))
            }),
        );
        add(
            "decompose",
            ["mixed_ff", "mixed_if", "mixed_nf"][region as usize],
            "tensor block in (omega, r), printed form",
            with(&DIR_PARAMS, &[("omega", NAN, Dim::Frequency), ("r", NAN, Dim::Length)]),
            tensor_columns(),
            Box::new(move |p| {
                let b = tensor_decompose_mixed(MixedPoint::new(p["omega"], p["r"])?, direction(p)?, Selection::One(region))?;
                Ok(block_row(&b[0]))
            }),
        );
        add(
            "decompose",
            ["mixed_exact_ff", "mixed_exact_if", "mixed_exact_nf"][region as usize],
            "tensor block in (omega, r), exact expansion",
            with(&DIR_PARAMS, &[("omega", NAN, Dim::Frequency), ("r", NAN, Dim::Length)]),
            tensor_columns(),
            Box::new(move |p| {
                let b = tensor_decompose_mixed_exact(MixedPoint::new(p["omega"], p["r"])?, direction(p)?, Selection::One(region))?;
                Ok(block_row(&b[0]))
            }),
        );
        add(
            "decompose",
            ["momentum_ff", "momentum_if", "momentum_nf"][region as usize],
            "tensor block in (omega, k)",
            with(&DIR_PARAMS, &[("omega", NAN, Dim::Frequency), ("k", NAN, Dim::Wavenumber)]),
            tensor_columns(),
            Box::new(move |p| {
                let b = tensor_momentum(SpectralPoint::new(p["omega"], p["k"])?, direction(p)?, region)?;
                Ok(block_row(&b))
            }),
        );
    }

    // switching
    let temporal = [TemporalForm::G1, TemporalForm::G2, TemporalForm::G3, TemporalForm::G1TwoLevel];
    let temporal_spec = move |p: &Params| -> Result<SwitchingSpec> {
        let form = choice(p, "form", &temporal)?;
        if form == TemporalForm::G1TwoLevel {
            SwitchingSpec::two_level(p["gamma"], p["omega0"])
        } else {
            SwitchingSpec::new(form, p["gamma"])
        }
    };
    let sw_params = |axis: (&'static str, f64, Dim)| {
        vec![axis, ("gamma", 1.0, Dim::Frequency), ("form", 0.0, Dim::None), ("omega0", 0.0, Dim::Frequency)]
    };
    add(
        "switching",
        "fis_time",
        "g(t); form 0 = g1, 1 = g2, 2 = g3, 3 = two-level g1",
        sw_params(("t", NAN, Dim::Time)),
        vec![col("g", Dim::None)],
        Box::new(move |p| Ok(vec![fis_time(&temporal_spec(p)?, p["t"])?])),
    );
    add(
        "switching",
        "fis_freq",
        "g(omega); form codes as for fis_time",
        sw_params(("omega", NAN, Dim::Frequency)),
        vec![col("g", Dim::Time)],
        Box::new(move |p| Ok(vec![fis_freq(&temporal_spec(p)?, p["omega"])?])),
    );
    add(
        "switching",
        "fis_spatial",
        "g(z); form 0 = g1, 1 = g2",
        vec![("z", NAN, Dim::Length), ("kappa", 1.0, Dim::Wavenumber), ("form", 0.0, Dim::None)],
        vec![col("g", Dim::None)],
        Box::new(|p| {
            let form = choice(p, "form", &[SpatialForm::G1, SpatialForm::G2])?;
            Ok(vec![fis_spatial(&SpatialSwitchingSpec::new(form, p["kappa"])?, p["z"])?])
        }),
    );
    add(
        "switching",
        "fis_ftir",
        "boundary-layer profile at total reflection",
        vec![
            ("z", NAN, Dim::Length),
            ("omega", 1.0, Dim::Frequency),
            ("n", 1.5, Dim::None),
            ("phi", 1.0471975511965976, Dim::None),
            ("form", 1.0, Dim::None),
        ],
        vec![col("g", Dim::None)],
        Box::new(|p| {
            let form = choice(p, "form", &[SpatialForm::G1, SpatialForm::G2])?;
            Ok(vec![fis_ftir(p["z"], p["omega"], p["n"], p["phi"], form)?])
        }),
    );
    add(
        "switching",
        "momentum_alteration",
        "normal momentum change and layer width; regime 0 = reflection, 1 = refraction",
        vec![
            ("phi", NAN, Dim::None),
            ("n1", 1.5, Dim::None),
            ("n2", 1.0, Dim::None),
            ("omega", 1.0, Dim::Frequency),
        ],
        vec![
            col("delta_kz", Dim::Wavenumber),
            col("delta_z", Dim::Length),
            col("regime", Dim::None),
            col("phi_refracted", Dim::None),
        ],
        Box::new(|p| {
            let m = momentum_alteration(p["n1"], p["n2"], p["omega"], p["phi"])?;
            let regime = match m.regime {
                Regime::Reflection => 0.0,
                Regime::Refraction => 1.0,
            };
            Ok(vec![m.delta_kz, m.delta_z, regime, m.phi_refracted.unwrap_or(f64::NAN)])
        }),
    );

    // point charge
    add(
        "point-charge",
        "current_time",
        "switched current j(t)",
        with(&Q_PARAMS, &[("t", NAN, Dim::Time)]),
        vec![col("current", Dim::None)],
        Box::new(|p| Ok(vec![current_time(&charge(p)?, p["t"])?])),
    );
    add(
        "point-charge",
        "current_freq",
        "current amplitude j(omega)",
        with(&Q_PARAMS, &[("omega", NAN, Dim::Frequency)]),
        cx("current", Dim::None),
        Box::new(|p| Ok(re_im(current_freq(&charge(p)?, p["omega"])?))),
    );
    let mixed_fields: [(&'static str, ChargeFn, &'static str, Dim); 3] = [
        ("field_mixed", field_mixed, "r", Dim::Length),
        ("charge_density", charge_density_mixed, "r", Dim::Length),
        ("field_momentum", field_momentum, "k", Dim::Wavenumber),
    ];
    for (name, f, axis, dim) in mixed_fields {
        add(
            "point-charge",
            name,
            "point-charge field quantity in (omega, r) or (omega, k)",
            with(&Q_PARAMS, &[("omega", NAN, Dim::Frequency), (axis, NAN, dim)]),
            cx(name, Dim::None),
            Box::new(move |p| Ok(re_im(f(&charge(p)?, p["omega"], p[axis])?))),
        );
    }
    add(
        "point-charge",
        "field_momentum_exact",
        "radial transform of field_mixed, closed form",
        with(&Q_PARAMS, &[("omega", NAN, Dim::Frequency), ("k", NAN, Dim::Wavenumber)]),
        cx("field_momentum_exact", Dim::None),
        Box::new(|p| Ok(re_im(field_momentum_exact(&charge(p)?, p["omega"], p["k"])?))),
    );
    let time_fields: [(&'static str, ChargeFn); 2] = [("field_time", field_time), ("field_time_printed", field_time_printed)];
    for (name, f) in time_fields {
        add(
            "point-charge",
            name,
            "point-charge field in (t, r)",
            with(&Q_PARAMS, &[("t", NAN, Dim::Time), ("r", NAN, Dim::Length)]),
            cx(name, Dim::None),
            Box::new(move |p| Ok(re_im(f(&charge(p)?, p["t"], p["r"])?))),
        );
    }
    add(
        "point-charge",
        "field_asymptotic",
        "asymptotic field; regime 0 = low frequency, 1 = high frequency",
        with(&Q_PARAMS, &[("r", NAN, Dim::Length), ("regime", 0.0, Dim::None)]),
        vec![col("field", Dim::None)],
        Box::new(|p| {
            let regime = choice(p, "regime", &[FrequencyRegime::LowFreq, FrequencyRegime::HighFreq])?;
            Ok(vec![field_asymptotic(&charge(p)?, regime, p["r"])?])
        }),
    );
    add(
        "point-charge",
        "self_energy",
        "field energy; method 0 = asymptotic piecewise, 1 = full numeric",
        with(&Q_PARAMS, &[("method", 0.0, Dim::None)]),
        vec![col("energy", Dim::Frequency), col("coefficient", Dim::None), col("ratio_to_asymptotic", Dim::None)],
        Box::new(|p| {
            let m = choice(p, "method", &[SelfEnergyMethod::AsymptoticPiecewise, SelfEnergyMethod::FullNumeric])?;
            let s = self_energy(&charge(p)?, m, &spec())?;
            Ok(vec![s.value, s.coefficient, s.ratio_to_asymptotic])
        }),
    );
    add(
        "point-charge",
        "density_ratio",
        "charge density over Q gamma D^(-)",
        with(&Q_PARAMS, &[("omega", NAN, Dim::Frequency)]),
        vec![col("ratio", Dim::None)],
        Box::new(|p| Ok(vec![density_ratio_to_far_field(&charge(p)?, p["omega"])?])),
    );
    let kernels: [(&'static str, KernelFn, &'static str, Dim); 3] = [
        ("kernel_mixed", kernel_mixed, "r", Dim::Length),
        ("kernel_momentum", kernel_momentum, "k", Dim::Wavenumber),
        ("kernel_momentum_exact", kernel_momentum_exact, "k", Dim::Wavenumber),
    ];
    for (name, f, axis, dim) in kernels {
        add(
            "point-charge",
            name,
            "near-field response kernel",
            vec![("omega", NAN, Dim::Frequency), (axis, NAN, dim)],
            cx(name, Dim::None),
            Box::new(move |p| Ok(re_im(f(p["omega"], p[axis])?))),
        );
    }

    // ftir
    add(
        "ftir",
        "refraction_profile",
        "n(z)",
        with(&FTIR_PARAMS, &[("z", NAN, Dim::Length)]),
        vec![col("n", Dim::None)],
        Box::new(|p| Ok(vec![refraction_profile(&ftir_cfg(p)?, p["z"])])),
    );
    add(
        "ftir",
        "layer_geometry",
        "transition-layer widths",
        FTIR_PARAMS.to_vec(),
        vec![col("dz1", Dim::Length), col("dz2", Dim::Length), col("xi", Dim::Length)],
        Box::new(|p| {
            let g = layer_geometry(&ftir_cfg(p)?)?;
            Ok(vec![g.dz1, g.dz2, g.xi])
        }),
    );
    add(
        "ftir",
        "current_factor",
        "I(q, dz)",
        vec![("q", NAN, Dim::Wavenumber), ("dz", NAN, Dim::Length)],
        cx("current_factor", Dim::Length),
        Box::new(|p| Ok(re_im(current_factor(p["q"], p["dz"])?))),
    );
    add(
        "ftir",
        "layer_braces",
        "I(-q, dz) + n^-4 I(q, dz)",
        with(&FTIR_PARAMS, &[("q", NAN, Dim::Wavenumber)]),
        cx("braces", Dim::Length),
        Box::new(|p| Ok(re_im(layer_braces(&ftir_cfg(p)?, p["q"])?))),
    );
    add(
        "ftir",
        "field_k",
        "near field in (t, k) with z-momentum q",
        with(&FTIR_PARAMS, &[("t", 0.0, Dim::Time), ("k", NAN, Dim::Wavenumber), ("q", NAN, Dim::Wavenumber)]),
        {
            let mut c = cx("field", Dim::None);
            c.push(col("on_cone", Dim::None));
            c
        },
        Box::new(|p| {
            let f = field_k(&ftir_cfg(p)?, p["t"], p["k"], p["q"])?;
            Ok(vec![f.value.re, f.value.im, if f.on_cone { 1.0 } else { 0.0 }])
        }),
    );
    add(
        "ftir",
        "field_k_small_q",
        "small-q replacement of the braces",
        with(&FTIR_PARAMS, &[("q", NAN, Dim::Wavenumber)]),
        vec![col("braces", Dim::Wavenumber)],
        Box::new(|p| Ok(vec![field_k_small_q(&ftir_cfg(p)?, p["q"])?])),
    );
    add(
        "ftir",
        "resolution_scale",
        "1/|k_z - q|",
        vec![("kz", NAN, Dim::Wavenumber), ("q", NAN, Dim::Wavenumber)],
        vec![col("scale", Dim::Length)],
        Box::new(|p| Ok(vec![resolution_scale(p["kz"], p["q"])?])),
    );
    add(
        "ftir",
        "field_real_space",
        "normal component of the real-space near field",
        with(
            &FTIR_PARAMS,
            &[("t", 0.0, Dim::Time), ("x", 0.0, Dim::Length), ("y", 0.0, Dim::Length), ("z", NAN, Dim::Length)],
        ),
        cx("field", Dim::None),
        Box::new(|p| Ok(re_im(field_real_space(&ftir_cfg(p)?, p["t"], p["x"], p["y"], p["z"], &spec())?))),
    );

    // interactions
    add(
        "interactions",
        "polarizability",
        "alpha(omega) of atom 1",
        with(&ATOM_PARAMS, &[("omega", NAN, Dim::Frequency)]),
        cx("alpha", Dim::None),
        Box::new(|p| Ok(re_im(polarizability(&atoms(p)?.0, p["omega"])))),
    );
    add(
        "interactions",
        "nonresonant",
        "van der Waals potential; full = 1 adds the retarded propagator pieces",
        with(&ATOM_PARAMS, &[("R", NAN, Dim::Length), ("full", 0.0, Dim::None)]),
        vec![col("potential", Dim::Frequency), col("imag_residue", Dim::Frequency), col("regime_warning", Dim::None)],
        Box::new(|p| {
            let (a, b) = atoms(p)?;
            let d = if flag(p, "full")? { Decomposition::Full } else { Decomposition::NearOnly };
            let u = nonresonant_potential(&a, &b, p["R"], d, &spec())?;
            Ok(vec![u.value, u.imag_residue, u.regime_warning as u8 as f64])
        }),
    );
    add(
        "interactions",
        "resonant",
        "resonant potential of atom 1; literal = 1 takes Re[alpha] on the real axis",
        with(&ATOM_PARAMS, &[("R", NAN, Dim::Length), ("literal", 0.0, Dim::None)]),
        vec![col("potential", Dim::Frequency), col("imag_residue", Dim::Frequency), col("regime_warning", Dim::None)],
        Box::new(|p| {
            let a = atoms(p)?.0;
            let reading = if flag(p, "literal")? { ResonantReading::Literal } else { ResonantReading::Contraction };
            let u = resonant_potential(&a, p["R"], reading, &spec())?;
            Ok(vec![u.value, u.imag_residue, u.regime_warning as u8 as f64])
        }),
    );
    add(
        "interactions",
        "duration",
        "scattering duration tau(omega) of atom 1",
        with(&ATOM_PARAMS, &[("omega", NAN, Dim::Frequency)]),
        vec![col("tau", Dim::Time)],
        Box::new(|p| Ok(vec![scattering_duration(&atoms(p)?.0, p["omega"])])),
    );
    add(
        "interactions",
        "transfer",
        "Förster rate; lorentzian = 1 keeps tau as a Lorentzian",
        with(&ATOM_PARAMS, &[("R", NAN, Dim::Length), ("lorentzian", 0.0, Dim::None)]),
        vec![col("rate", Dim::Frequency), col("forster_radius", Dim::Length), col("regime_warning", Dim::None)],
        Box::new(|p| {
            let (a, b) = atoms(p)?;
            let m = if flag(p, "lorentzian")? { TransferMethod::Lorentzian } else { TransferMethod::DeltaCollapse };
            let t = transfer_probability(&a, &b, p["R"], m, &spec())?;
            Ok(vec![t.w, t.forster_radius, t.regime_warning as u8 as f64])
        }),
    );
    add(
        "interactions",
        "split",
        "subluminal and superluminal transfer weights",
        vec![("R", NAN, Dim::Length), ("window", NAN, Dim::Time)],
        vec![col("subluminal", Dim::None), col("superluminal", Dim::None)],
        Box::new(|p| {
            let (a, b) = transfer_split(p["R"], p["window"])?;
            Ok(vec![a, b])
        }),
    );
    q
}

/// Look a quantity up by target and name.
pub fn find<'a>(reg: &'a [Quantity], target: &str, name: &str) -> Option<&'a Quantity> {
    reg.iter().find(|q| q.target == target && q.name == name)
}
