use crate::probkit::{axes, JointPmf};

use super::bounds::{Cap, EquivocationRegion, RegionBounds};
use super::terms::require_axes;
use super::RegionError;

/// Axis names of a joint over the correlated-sources key-agreement model.
pub mod bassi_axes {
    pub const SX: &str = "Sx";
    pub const SY: &str = "Sy";
    pub const SZ: &str = "Sz";
    pub const U: &str = "U";
    pub const V: &str = "V";
    pub const X: &str = "X";
    pub const Y: &str = "Y";
    pub const Z: &str = "Z";
    pub const Q: &str = "Q";
    pub const T: &str = "T";
}

/// Feasibility constraints are checked with this slack.
pub const CONSTRAINT_TOL: f64 = 1e-9;

/// Dependence of `U` on `S` tolerated by [`region_per`].
pub const INDEPENDENCE_TOL: f64 = 1e-6;

const STD_AXES: [&str; 5] = [axes::S, axes::U, axes::V, axes::Y, axes::Z];

/// Message-key region of a single auxiliary:
/// `b1 = I(U,V;Y) − I(U,V;S)`, `b2 = I(V;Y|U) − I(V;Z|U)`,
/// `b3 = I(U,V;Y) − I(V;Z|U) − I(U;S)`.
pub fn region_a(j: &JointPmf) -> Result<RegionBounds, RegionError> {
    require_axes(j, &STD_AXES)?;
    let (s, u, v, y, z) = ([axes::S], [axes::U], [axes::V], [axes::Y], [axes::Z]);
    let uv = [axes::U, axes::V];
    let uv_y = j.mutual_information(&uv, &y, &[])?;
    let uv_s = j.mutual_information(&uv, &s, &[])?;
    let v_y_u = j.mutual_information(&v, &y, &u)?;
    let v_z_u = j.mutual_information(&v, &z, &u)?;
    let u_s = j.mutual_information(&u, &s, &[])?;
    Ok(RegionBounds::new(uv_y - uv_s, v_y_u - v_z_u, uv_y - v_z_u - u_s))
}

/// The single sum-rate expression
/// `I(U,V;Y) − I(U,V;Z) − max{I(U;Y), I(U;S)} + I(U;Z)`,
/// computed from unconditional terms only.
pub fn sum_bound_alt(j: &JointPmf) -> Result<f64, RegionError> {
    require_axes(j, &STD_AXES)?;
    let (s, u, y, z) = ([axes::S], [axes::U], [axes::Y], [axes::Z]);
    let uv = [axes::U, axes::V];
    let uv_y = j.mutual_information(&uv, &y, &[])?;
    let uv_z = j.mutual_information(&uv, &z, &[])?;
    let u_y = j.mutual_information(&u, &y, &[])?;
    let u_s = j.mutual_information(&u, &s, &[])?;
    let u_z = j.mutual_information(&u, &z, &[])?;
    Ok(uv_y - uv_z - u_y.max(u_s) + u_z)
}

/// Two-constraint region for auxiliaries whose inner layer is independent of
/// the state; `b3` is reported as unbounded.
pub fn region_per(j: &JointPmf) -> Result<RegionBounds, RegionError> {
    require_axes(j, &STD_AXES)?;
    let u_s = j.mutual_information(&[axes::U], &[axes::S], &[])?;
    if u_s > INDEPENDENCE_TOL {
        return Err(RegionError::DependentInnerLayer {
            mutual_information: u_s,
        });
    }
    let a = region_a(j)?;
    Ok(RegionBounds {
        b1: a.b1,
        b2: a.b2,
        b3: Cap::Unbounded,
    })
}

/// `min(b1, b2, b3)`: the secret-message rate of the region at `R_K = 0`
/// (negative when the region is empty).
pub fn rate_gcp(j: &JointPmf) -> Result<f64, RegionError> {
    let b = region_a(j)?;
    Ok(b.b1.min(b.sum_cap()))
}

/// Joint source-channel key rate `I(V;Sy,Y|U) − I(V;Sz,Z|U)` over a joint with
/// axes `Sx, U, V, X, Sy, Y, Sz, Z`.
pub fn rate_bassi_joint(j: &JointPmf) -> Result<f64, RegionError> {
    use bassi_axes::*;
    require_axes(j, &[SX, U, V, SY, Y, SZ, Z])?;
    let legit = [SY, Y];
    let eve = [SZ, Z];
    let u_sx = j.mutual_information(&[U], &[SX], &[])?;
    let u_legit = j.mutual_information(&[U], &legit, &[])?;
    check_le("I(U;Sx) <= I(U;Sy,Y)", u_sx, u_legit)?;
    let v_sx_u = j.mutual_information(&[V], &[SX], &[U])?;
    let v_legit_u = j.mutual_information(&[V], &legit, &[U])?;
    check_le("I(V;Sx|U) <= I(V;Sy,Y|U)", v_sx_u, v_legit_u)?;
    let v_eve_u = j.mutual_information(&[V], &eve, &[U])?;
    Ok(v_legit_u - v_eve_u)
}

/// Separation-based key rate
/// `[I(T;Y|Q) − I(T;Z|Q)] + [I(V;Sy|U) − I(V;Sz|U)]` for a source block over
/// `Sx, Sy, Sz, U, V` and an independent channel block over `Q, T, X, Y, Z`.
pub fn rate_bassi_separate(source: &JointPmf, channel: &JointPmf) -> Result<f64, RegionError> {
    use bassi_axes::*;
    require_axes(source, &[SX, SY, SZ, U, V])?;
    require_axes(channel, &[Q, T, Y, Z])?;
    let q_y = channel.mutual_information(&[Q], &[Y], &[])?;
    let t_y = channel.mutual_information(&[T], &[Y], &[])?;
    let u_sx_sy = source.mutual_information(&[U], &[SX], &[SY])?;
    let v_sx_sy = source.mutual_information(&[V], &[SX], &[SY])?;
    check_le("I(U;Sx|Sy) <= I(Q;Y)", u_sx_sy, q_y)?;
    check_le("I(V;Sx|Sy) <= I(T;Y)", v_sx_sy, t_y)?;
    Ok(separate_channel_term(channel)? + separate_source_term(source)?)
}

/// `I(T;Y|Q) − I(T;Z|Q)`.
pub fn separate_channel_term(channel: &JointPmf) -> Result<f64, RegionError> {
    use bassi_axes::*;
    Ok(channel.mutual_information(&[T], &[Y], &[Q])? - channel.mutual_information(&[T], &[Z], &[Q])?)
}

/// `I(V;Sy|U) − I(V;Sz|U)`.
pub fn separate_source_term(source: &JointPmf) -> Result<f64, RegionError> {
    use bassi_axes::*;
    Ok(source.mutual_information(&[V], &[SY], &[U])? - source.mutual_information(&[V], &[SZ], &[U])?)
}

fn check_le(name: &'static str, lhs: f64, rhs: f64) -> Result<(), RegionError> {
    if lhs > rhs + CONSTRAINT_TOL {
        Err(RegionError::InfeasibleConstraint { name, lhs, rhs })
    } else {
        Ok(())
    }
}

/// Rate-equivocation caps derived from the message-key region.
pub fn equivocation_region(j: &JointPmf) -> Result<EquivocationRegion, RegionError> {
    let b = region_a(j)?;
    Ok(EquivocationRegion {
        rate_cap: b.b1,
        equivocation_outer: b.b2,
        equivocation_inner: b.b3.value(),
    })
}
