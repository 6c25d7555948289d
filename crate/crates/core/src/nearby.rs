//! Total dimensions and the Deligne-Kato formula for nearby cycles of a
//! relative curve.

use crate::algebra::DifferentialTensor;
use crate::error::{Error, Result};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HorizontalPointData {
    pub degree: i64,
    pub swan: i64,
    pub rank: i64,
}

impl HorizontalPointData {
    pub fn new(degree: i64, swan: i64, rank: i64) -> Result<Self> {
        if degree < 1 || swan < 0 || rank < 0 {
            return Err(Error::Precondition(format!("horizontal point ({degree}, {swan}, {rank}) is out of range")));
        }
        Ok(HorizontalPointData { degree, swan, rank })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum VerticalPointData {
    /// cc of the sheaf at the generic point of the component, plus the tame
    /// data sw and rank of F̄.
    Computed { cc: DifferentialTensor, swan_bar: i64, rank_bar: i64 },
    /// sw + rank supplied directly, for sheaves that extend.
    Deligne { value: i64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TripleDescription {
    pub delta: i64,
    pub rank: i64,
    pub psi0_dim: i64,
    pub horizontal: Vec<HorizontalPointData>,
    pub vertical: Vec<VerticalPointData>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NearbyReport {
    pub phi_s: i64,
    pub phi_eta: i64,
    pub psi0: i64,
    pub psi1: i64,
    pub delta: i64,
    pub rank: i64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

/// [κ(p):κ(η)]·(sw + rank).
pub fn dimtot_horizontal(d: &HorizontalPointData) -> i64 {
    d.degree * (d.swan + d.rank)
}

/// Order at x = 0 of the coefficient of T; dx has order 0.
pub fn ord_of_tensor(t: &DifferentialTensor) -> Result<i64> {
    t.ord()
}

/// -ord(cc) + sw(F̄) + rank(F̄), or the supplied value.
pub fn dimtot_vertical(d: &VerticalPointData) -> Result<i64> {
    match d {
        VerticalPointData::Computed { cc, swan_bar, rank_bar } => Ok(-ord_of_tensor(cc)? + swan_bar + rank_bar),
        VerticalPointData::Deligne { value } => Ok(*value),
    }
}

/// dim Ψ¹ from dim Ψ⁰ - dim Ψ¹ = φ_s - φ_η - 2δ·rank.
pub fn euler_nearby(t: &TripleDescription) -> Result<NearbyReport> {
    if t.delta < 0 || t.rank < 0 || t.psi0_dim < 0 {
        return Err(Error::Precondition("δ, rank and dim Ψ⁰ must be non-negative".into()));
    }
    let phi_eta: i64 = t.horizontal.iter().map(dimtot_horizontal).sum();
    let phi_s = t.vertical.iter().map(dimtot_vertical).sum::<Result<i64>>()?;
    let psi1 = t.psi0_dim - phi_s + phi_eta + 2 * t.delta * t.rank;
    if psi1 < 0 {
        return Err(Error::NegativeDimension(format!(
            "dim Ψ¹ = {psi1} from dim Ψ⁰ = {}, φ_s = {phi_s}, φ_η = {phi_eta}, δ = {}, rank = {}",
            t.psi0_dim, t.delta, t.rank
        )));
    }
    let warnings = t
        .horizontal
        .iter()
        .enumerate()
        .filter(|(_, h)| h.rank != t.rank)
        .map(|(i, h)| format!("horizontal point {i} has rank {} but the sheaf has rank {}", h.rank, t.rank))
        .collect();
    Ok(NearbyReport { phi_s, phi_eta, psi0: t.psi0_dim, psi1, delta: t.delta, rank: t.rank, warnings })
}
