//! Pauli-Jordan and near-field singular functions, and the far /
//! intermediate / near split of the transverse Green tensor.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{invalid, require_positive, Error, Result};
use crate::numerics::fourier::FtConvention;
use crate::numerics::special::{heaviside, sgn};

/// Transform convention under which the mixed forms are the transforms of
/// the time-domain forms.
pub const CONVENTION: FtConvention = FtConvention::PROPAGATOR;

const I: Complex64 = Complex64::new(0.0, 1.0);

pub type Matrix3 = [[f64; 3]; 3];
pub type CMatrix3 = [[Complex64; 3]; 3];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpacetimePoint {
    pub t: f64,
    pub r: f64,
}

impl SpacetimePoint {
    pub fn new(t: f64, r: f64) -> Result<Self> {
        let p = Self { t, r };
        p.check()?;
        Ok(p)
    }

    /// Point from a 3-vector; returns the point and the unit direction.
    pub fn from_vector(t: f64, r_vec: [f64; 3]) -> Result<(Self, [f64; 3])> {
        let r = norm(r_vec);
        let e = unit_vector(r_vec)?;
        Ok((Self::new(t, r)?, e))
    }

    fn check(&self) -> Result<()> {
        if !self.t.is_finite() {
            return Err(invalid("t", "must be finite"));
        }
        if !(self.r.is_finite() && self.r >= 0.0) {
            return Err(invalid("r", "must be finite and >= 0"));
        }
        Ok(())
    }

    fn require_r(&self) -> Result<()> {
        self.check()?;
        if self.r == 0.0 {
            return Err(Error::Domain("r = 0".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MixedPoint {
    pub omega: f64,
    pub r: f64,
}

impl MixedPoint {
    pub fn new(omega: f64, r: f64) -> Result<Self> {
        let p = Self { omega, r };
        p.check()?;
        Ok(p)
    }

    fn check(&self) -> Result<()> {
        if !self.omega.is_finite() {
            return Err(invalid("omega", "must be finite"));
        }
        require_positive("r", self.r)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralPoint {
    pub omega: f64,
    pub k: f64,
}

impl SpectralPoint {
    pub fn new(omega: f64, k: f64) -> Result<Self> {
        let p = Self { omega, k };
        p.check()?;
        Ok(p)
    }

    pub fn from_vector(omega: f64, k_vec: [f64; 3]) -> Result<(Self, [f64; 3])> {
        let e = unit_vector(k_vec)?;
        Ok((Self::new(omega, norm(k_vec))?, e))
    }

    fn check(&self) -> Result<()> {
        if !self.omega.is_finite() {
            return Err(invalid("omega", "must be finite"));
        }
        require_positive("k", self.k)
    }
}

/// Reference length dividing logarithm arguments.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogScale {
    mu: f64,
}

impl LogScale {
    pub fn new(mu: f64) -> Result<Self> {
        require_positive("mu", mu)?;
        Ok(Self { mu })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }
}

impl Default for LogScale {
    fn default() -> Self {
        Self { mu: 1.0 }
    }
}

/// Overall sign of D_N in the time domain. `Canonical` is the
/// (|t-r| - |t+r|)/(8 pi r) form, which satisfies d_t^2 D_N = D; `Printed`
/// is the opposite-sign piecewise form.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SignConvention {
    #[default]
    Canonical,
    Printed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TimeKind {
    DN,
    DN1,
    DNPlus,
    DNMinus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MixedKind {
    D,
    D1,
    DPlus,
    DMinus,
    DN,
    DN1,
    DNPlus,
    DNMinus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Region {
    FF,
    IF,
    NF,
}

impl Region {
    pub const ALL: [Region; 3] = [Region::FF, Region::IF, Region::NF];
}

/// 3x3 block of the Green tensor.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TensorBlock {
    pub values: CMatrix3,
    pub region: Region,
    pub e: [f64; 3],
}

impl TensorBlock {
    fn scaled(m: &Matrix3, c: Complex64, region: Region, e: [f64; 3]) -> Self {
        let mut values = [[Complex64::new(0.0, 0.0); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                values[i][j] = c * m[i][j];
            }
        }
        Self { values, region, e }
    }

    pub fn trace(&self) -> Complex64 {
        self.values[0][0] + self.values[1][1] + self.values[2][2]
    }

    pub fn max_asymmetry(&self) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                m = m.max((self.values[i][j] - self.values[j][i]).norm());
            }
        }
        m
    }

    pub fn frobenius_norm_sq(&self) -> f64 {
        self.values.iter().flatten().map(|v| v.norm_sqr()).sum()
    }
}

/// A Green-tensor block: an ordinary matrix, or a delta-supported piece.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Block {
    Finite(TensorBlock),
    /// weight * delta(t - t_support) * tensor, on the light cone |t| = r.
    OnCone {
        region: Region,
        e: [f64; 3],
        tensor: Matrix3,
        t_support: f64,
        weight: f64,
    },
    /// weight * delta(w^2 - k^2) * tensor; delta(w^2 - k^2) splits into
    /// residue * (delta(w - k) + delta(w + k)) with residue 1/(2k).
    OnShell {
        region: Region,
        e: [f64; 3],
        tensor: Matrix3,
        weight: Complex64,
        residue: f64,
    },
}

impl Block {
    pub fn region(&self) -> Region {
        match self {
            Block::Finite(b) => b.region,
            Block::OnCone { region, .. } | Block::OnShell { region, .. } => *region,
        }
    }

    pub fn finite(&self) -> Option<&TensorBlock> {
        match self {
            Block::Finite(b) => Some(b),
            _ => None,
        }
    }
}

pub fn norm(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

/// v / |v|.
pub fn unit_vector(v: [f64; 3]) -> Result<[f64; 3]> {
    let n = norm(v);
    if !(n > 0.0 && n.is_finite()) {
        return Err(invalid("direction", "needs a finite nonzero vector"));
    }
    Ok([v[0] / n, v[1] / n, v[2] / n])
}

fn check_unit(e: [f64; 3]) -> Result<()> {
    if (norm(e) - 1.0).abs() > 1e-12 {
        return Err(invalid("e", "must be a unit vector"));
    }
    Ok(())
}

/// P_ij = delta_ij - 3 e_i e_j.
pub fn pauli_projector(e: [f64; 3]) -> Matrix3 {
    let mut m = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = if i == j { 1.0 } else { 0.0 } - 3.0 * e[i] * e[j];
        }
    }
    m
}

/// delta_ij + s e_i e_j.
fn delta_plus(e: [f64; 3], s: f64) -> Matrix3 {
    let mut m = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = if i == j { 1.0 } else { 0.0 } + s * e[i] * e[j];
        }
    }
    m
}

/// delta_ij + e_i e_j, the far-field tensor.
pub fn far_field_tensor(e: [f64; 3]) -> Matrix3 {
    delta_plus(e, 1.0)
}

/// delta_ij - e_i e_j, the transverse projector.
pub fn transverse_projector(e: [f64; 3]) -> Matrix3 {
    delta_plus(e, -1.0)
}

/// (|t - r| - |t + r|) / (8 pi r), no argument checks.
pub fn d_n_canonical(t: f64, r: f64) -> f64 {
    ((t - r).abs() - (t + r).abs()) / (8.0 * PI * r)
}

/// D_N^(1) with logarithm arguments divided by mu.
pub fn d_n1(t: f64, r: f64, scale: LogScale) -> Result<f64> {
    SpacetimePoint::new(t, r)?.require_r()?;
    if (t.abs() - r).abs() <= 1e-14 * r {
        return Err(Error::ConeSingularity(format!("D_N1 at |t| = r = {r}")));
    }
    let mu = scale.mu;
    let a = t + r;
    let b = t - r;
    Ok((a * (a / mu).abs().ln() - b * (b / mu).abs().ln()) / (4.0 * PI * PI * r))
}

fn d_n_signed(t: f64, r: f64, sign: SignConvention) -> f64 {
    let v = d_n_canonical(t, r);
    match sign {
        SignConvention::Canonical => v,
        SignConvention::Printed => -v,
    }
}

pub fn singular_time(kind: TimeKind, p: SpacetimePoint, scale: LogScale) -> Result<Complex64> {
    singular_time_signed(kind, p, scale, SignConvention::Canonical)
}

/// [`singular_time`] with an explicit D_N sign convention.
pub fn singular_time_signed(
    kind: TimeKind,
    p: SpacetimePoint,
    scale: LogScale,
    sign: SignConvention,
) -> Result<Complex64> {
    p.require_r()?;
    let (t, r) = (p.t, p.r);
    let dn = d_n_signed(t, r, sign);
    Ok(match kind {
        TimeKind::DN => dn.into(),
        TimeKind::DN1 => d_n1(t, r, scale)?.into(),
        TimeKind::DNPlus => (Complex64::from(dn) - I * d_n1(t, r, scale)?) * 0.5,
        TimeKind::DNMinus => (Complex64::from(dn) + I * d_n1(t, r, scale)?) * 0.5,
    })
}

/// (1/(2 pi i)) sin(w r)/r.
pub fn pauli_jordan_mixed(omega: f64, r: f64) -> Complex64 {
    Complex64::new(0.0, -(omega * r).sin() / (2.0 * PI * r))
}

pub fn singular_mixed(kind: MixedKind, p: MixedPoint) -> Result<Complex64> {
    p.check()?;
    let w = p.omega;
    let d = pauli_jordan_mixed(w, p.r);
    let near = || -> Result<Complex64> {
        if w == 0.0 {
            return Err(Error::Pole("omega = 0 in the D_N family".into()));
        }
        // -(1/(2 pi i)) sin(w r)/(w^2 r), kept separate from the D path
        Ok(Complex64::new(0.0, (w * p.r).sin() / (2.0 * PI * w * w * p.r)))
    };
    Ok(match kind {
        MixedKind::D => d,
        MixedKind::D1 => d * sgn(w),
        MixedKind::DPlus => d * heaviside(w),
        MixedKind::DMinus => d * heaviside(-w),
        MixedKind::DN => near()?,
        MixedKind::DN1 => near()? * sgn(w),
        MixedKind::DNPlus => near()? * heaviside(w),
        MixedKind::DNMinus => near()? * heaviside(-w),
    })
}

/// Scalar factor of the near-field block in (w, k):
/// (1/(8 pi^2 i w^2 k)) {|w| theta(w^2 - k^2) + k theta(k^2 - w^2)}.
pub fn singular_momentum_nf(p: SpectralPoint) -> Result<Complex64> {
    p.check()?;
    let (w, k) = (p.omega, p.k);
    if w == 0.0 {
        return Err(Error::Pole("omega = 0 in the near-field block".into()));
    }
    let brace = w.abs() * heaviside(w * w - k * k) + k * heaviside(k * k - w * w);
    Ok(Complex64::new(0.0, -brace / (8.0 * PI * PI * w * w * k)))
}

/// Which regions to return from the decompositions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selection {
    One(Region),
    All,
}

impl Selection {
    fn regions(self) -> Vec<Region> {
        match self {
            Selection::One(r) => vec![r],
            Selection::All => Region::ALL.to_vec(),
        }
    }
}

/// Time-domain blocks: FF = (delta + ee) D(t, r), IF = P theta(r^2 - t^2)/(4 pi r),
/// NF = P D_N(t, r)/r^2.
pub fn tensor_decompose_time(
    p: SpacetimePoint,
    e: [f64; 3],
    which: Selection,
    sign: SignConvention,
) -> Result<Vec<Block>> {
    p.require_r()?;
    check_unit(e)?;
    let (t, r) = (p.t, p.r);
    let pm = pauli_projector(e);
    let mut out = Vec::new();
    for region in which.regions() {
        out.push(match region {
            Region::FF => {
                if t.abs() == r {
                    Block::OnCone {
                        region,
                        e,
                        tensor: far_field_tensor(e),
                        t_support: t,
                        weight: sgn(t) / (4.0 * PI * r),
                    }
                } else {
                    Block::Finite(TensorBlock::scaled(&pm, 0.0.into(), region, e))
                }
            }
            Region::IF => {
                let c = heaviside(r * r - t * t) / (4.0 * PI * r);
                Block::Finite(TensorBlock::scaled(&pm, c.into(), region, e))
            }
            Region::NF => {
                let c = d_n_signed(t, r, sign) / (r * r);
                Block::Finite(TensorBlock::scaled(&pm, c.into(), region, e))
            }
        });
    }
    Ok(out)
}

fn check_cot(x: f64) -> Result<()> {
    let n = (x / PI).round();
    if n != 0.0 && (x - n * PI).abs() <= 1e-12 * x.abs().max(1.0) {
        return Err(Error::Pole(format!("cot(w r) at w r = {n} pi")));
    }
    Ok(())
}

/// Mixed-representation blocks with the middle term as printed:
/// {(delta + ee) - (i/(w r)) P cot(w r) + P/(w r)^2} D(w, r).
pub fn tensor_decompose_mixed(p: MixedPoint, e: [f64; 3], which: Selection) -> Result<Vec<Block>> {
    p.check()?;
    check_unit(e)?;
    let x = p.omega * p.r;
    let d = pauli_jordan_mixed(p.omega, p.r);
    let pm = pauli_projector(e);
    let mut out = Vec::new();
    for region in which.regions() {
        let b = match region {
            Region::FF => TensorBlock::scaled(&far_field_tensor(e), d, region, e),
            Region::IF => {
                if x == 0.0 {
                    return Err(Error::Pole("omega r = 0".into()));
                }
                check_cot(x)?;
                TensorBlock::scaled(&pm, -I / x * (x.cos() / x.sin()) * d, region, e)
            }
            Region::NF => {
                if x == 0.0 {
                    return Err(Error::Pole("omega r = 0".into()));
                }
                TensorBlock::scaled(&pm, d / (x * x), region, e)
            }
        };
        out.push(Block::Finite(b));
    }
    Ok(out)
}

/// Blocks of the exact expansion of (delta + d d / w^2)(sin(w r)/(2 pi i r)):
/// {(delta - ee) + P cot(w r)/(w r) - P/(w r)^2} D(w, r). The cot term is
/// evaluated as cos(w r)/(2 pi i w r^2) and has no pole.
pub fn tensor_decompose_mixed_exact(
    p: MixedPoint,
    e: [f64; 3],
    which: Selection,
) -> Result<Vec<Block>> {
    p.check()?;
    check_unit(e)?;
    let (w, r) = (p.omega, p.r);
    if w == 0.0 {
        return Err(Error::Pole("omega = 0".into()));
    }
    let x = w * r;
    let d = pauli_jordan_mixed(w, r);
    let pm = pauli_projector(e);
    let mut out = Vec::new();
    for region in which.regions() {
        let b = match region {
            Region::FF => TensorBlock::scaled(&transverse_projector(e), d, region, e),
            Region::IF => {
                let c = Complex64::new(0.0, -x.cos() / (2.0 * PI * x * r));
                TensorBlock::scaled(&pm, c, region, e)
            }
            Region::NF => TensorBlock::scaled(&pm, -d / (x * x), region, e),
        };
        out.push(Block::Finite(b));
    }
    Ok(out)
}

/// Blocks in (w, k). FF is an on-shell descriptor on w^2 = k^2 and a zero
/// block elsewhere.
pub fn tensor_momentum(p: SpectralPoint, e: [f64; 3], region: Region) -> Result<Block> {
    p.check()?;
    check_unit(e)?;
    let (w, k) = (p.omega, p.k);
    let pm = pauli_projector(e);
    Ok(match region {
        Region::FF => {
            if w.abs() == k {
                Block::OnShell {
                    region,
                    e,
                    tensor: far_field_tensor(e),
                    weight: Complex64::new(0.0, -2.0 * sgn(w) / (2.0 * PI).powi(3)),
                    residue: 1.0 / (2.0 * k),
                }
            } else {
                Block::Finite(TensorBlock::scaled(&pm, 0.0.into(), region, e))
            }
        }
        Region::IF => {
            if w == 0.0 {
                return Err(Error::Pole("omega = 0 in the intermediate block".into()));
            }
            let c = Complex64::new(0.0, -heaviside(k * k - w * w) / (8.0 * PI * w * k));
            Block::Finite(TensorBlock::scaled(&pm, c, region, e))
        }
        Region::NF => Block::Finite(TensorBlock::scaled(&pm, singular_momentum_nf(p)?, region, e)),
    })
}

/// Coulomb-gauge propagator in (w, k).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoulombGauge {
    /// delta_ij - k_i k_j / k^2.
    pub projector: Matrix3,
    /// Projector times the on-shell Pauli-Jordan scalar.
    pub spatial: Block,
    pub d00: f64,
    pub d0i: [f64; 3],
}

pub fn coulomb_gauge_momentum(omega: f64, k_vec: [f64; 3]) -> Result<CoulombGauge> {
    let (p, e) = SpectralPoint::from_vector(omega, k_vec)?;
    let projector = transverse_projector(e);
    let spatial = if p.omega.abs() == p.k {
        Block::OnShell {
            region: Region::FF,
            e,
            tensor: projector,
            weight: Complex64::new(0.0, -2.0 * sgn(p.omega) / (2.0 * PI).powi(3)),
            residue: 1.0 / (2.0 * p.k),
        }
    } else {
        Block::Finite(TensorBlock::scaled(&projector, 0.0.into(), Region::FF, e))
    };
    Ok(CoulombGauge {
        projector,
        spatial,
        d00: -1.0 / (p.k * p.k),
        d0i: [0.0; 3],
    })
}

/// Squared near-field scalar (1/(4 pi r^2))^2 {theta(t^2 - r^2) + (t/r)^2 theta(r^2 - t^2)}.
pub fn nf_squared(p: SpacetimePoint) -> Result<f64> {
    p.require_r()?;
    let (t, r) = (p.t, p.r);
    let a = 1.0 / (4.0 * PI * r * r);
    Ok(a * a * (heaviside(t * t - r * r) + (t / r).powi(2) * heaviside(r * r - t * t)))
}

/// Share of the squared near-field weight on |t| < r within the window |t| < T.
pub fn superluminal_fraction(r: f64, t_half: f64) -> Result<f64> {
    require_positive("r", r)?;
    require_positive("T", t_half)?;
    if t_half <= r {
        return Err(Error::Domain(format!("window T = {t_half} must exceed r = {r}")));
    }
    let inside = 2.0 * r / 3.0;
    Ok(inside / (2.0 * (t_half - r) + inside))
}
