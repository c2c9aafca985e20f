use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::RegionError;

/// Slack allowed by membership tests, in bits.
pub const MEMBERSHIP_TOL: f64 = 1e-9;

/// A sum-rate cap that may be absent for schemes with only two constraints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cap {
    Finite(f64),
    Unbounded,
}

impl Cap {
    pub fn value(self) -> f64 {
        match self {
            Cap::Finite(v) => v,
            Cap::Unbounded => f64::INFINITY,
        }
    }

    pub fn is_unbounded(self) -> bool {
        matches!(self, Cap::Unbounded)
    }
}

impl Serialize for Cap {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Cap::Finite(v) => s.serialize_f64(*v),
            Cap::Unbounded => s.serialize_str("unbounded"),
        }
    }
}

impl<'de> Deserialize<'de> for Cap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Tag(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(Cap::Finite(v)),
            Raw::Tag(t) if t == "unbounded" => Ok(Cap::Unbounded),
            Raw::Tag(t) => Err(serde::de::Error::custom(format!("bad cap {t:?}"))),
        }
    }
}

/// The three scalar caps of a message-key region:
/// `R_M ≤ b1`, `R_M + R_K ≤ b2`, `R_M + R_K ≤ b3`.
///
/// Negative caps are kept as computed; clamping happens only in the
/// intercept and membership helpers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionBounds {
    pub b1: f64,
    pub b2: f64,
    pub b3: Cap,
}

impl RegionBounds {
    pub fn new(b1: f64, b2: f64, b3: f64) -> Self {
        Self {
            b1,
            b2,
            b3: Cap::Finite(b3),
        }
    }

    /// Binding cap on `R_M + R_K`.
    pub fn sum_cap(&self) -> f64 {
        self.b2.min(self.b3.value())
    }

    /// No nonnegative rate pair satisfies the caps.
    pub fn is_empty(&self) -> bool {
        self.b1 < 0.0 || self.sum_cap() < 0.0
    }

    /// Largest `R_M` with `R_K = 0`.
    pub fn rm_intercept(&self) -> f64 {
        if self.is_empty() {
            0.0
        } else {
            self.b1.min(self.sum_cap())
        }
    }

    /// Largest `R_M + R_K` (attained at `R_M = 0`).
    pub fn sum_intercept(&self) -> f64 {
        if self.is_empty() {
            0.0
        } else {
            self.sum_cap()
        }
    }

    /// Vertices of the region polygon, counter-clockwise from the origin.
    /// Empty for an empty region; a single point when it degenerates.
    pub fn vertices(&self) -> Vec<[f64; 2]> {
        if self.is_empty() {
            return Vec::new();
        }
        let c = self.sum_cap();
        let b1 = self.b1;
        let mut v = vec![[0.0, 0.0]];
        if b1 >= c {
            v.push([c, 0.0]);
            v.push([0.0, c]);
        } else {
            v.push([b1, 0.0]);
            v.push([b1, c - b1]);
            v.push([0.0, c]);
        }
        v.dedup_by(|a, b| (a[0] - b[0]).abs() < 1e-15 && (a[1] - b[1]).abs() < 1e-15);
        if v.len() > 1 && v.first() == v.last() {
            v.pop();
        }
        v
    }

    pub fn contains(&self, r_m: f64, r_k: f64) -> Result<bool, RegionError> {
        membership(self, r_m, r_k)
    }
}

/// Whether `(r_m, r_k)` satisfies every cap within [`MEMBERSHIP_TOL`].
pub fn membership(b: &RegionBounds, r_m: f64, r_k: f64) -> Result<bool, RegionError> {
    if r_m < 0.0 || r_k < 0.0 || r_m.is_nan() || r_k.is_nan() {
        return Err(RegionError::NegativeRate { r_m, r_k });
    }
    Ok(r_m <= b.b1 + MEMBERSHIP_TOL && r_m + r_k <= b.sum_cap() + MEMBERSHIP_TOL)
}

/// Caps on a rate-equivocation pair `(R, R_E)`:
/// `R ≤ rate_cap`, `R_E ≤ R`, `R_E ≤ equivocation_outer`, `R_E ≤ equivocation_inner`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquivocationRegion {
    pub rate_cap: f64,
    pub equivocation_outer: f64,
    pub equivocation_inner: f64,
}

impl EquivocationRegion {
    /// Largest admissible equivocation at total rate `r`, or `None` when `r`
    /// itself is not admissible.
    pub fn max_equivocation(&self, r: f64) -> Option<f64> {
        if r < 0.0 || r > self.rate_cap + MEMBERSHIP_TOL {
            return None;
        }
        let cap = r.min(self.equivocation_outer).min(self.equivocation_inner);
        (cap >= -MEMBERSHIP_TOL).then_some(cap.max(0.0))
    }

    pub fn contains(&self, r: f64, r_e: f64) -> bool {
        match self.max_equivocation(r) {
            Some(cap) => r_e >= 0.0 && r_e <= cap + MEMBERSHIP_TOL,
            None => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_boundary() {
        let b = RegionBounds::new(0.4, 0.7, 0.9);
        assert!(membership(&b, 0.0, 0.0).unwrap());
        assert!(membership(&b, 0.4, 0.0).unwrap());
        assert!(!membership(&b, 0.41, 0.0).unwrap());
        assert!(membership(&b, 0.4, 0.3).unwrap());
        assert!(!membership(&b, 0.4, 0.31).unwrap());
        assert!(membership(&b, -0.1, 0.0).is_err());
    }

    #[test]
    fn vertices_cover_both_shapes() {
        let trapezoid = RegionBounds::new(0.4, 0.7, 0.9);
        assert_eq!(
            trapezoid.vertices(),
            vec![[0.0, 0.0], [0.4, 0.0], [0.4, 0.7 - 0.4], [0.0, 0.7]]
        );
        let triangle = RegionBounds::new(1.0, 0.5, 0.6);
        assert_eq!(triangle.vertices(), vec![[0.0, 0.0], [0.5, 0.0], [0.0, 0.5]]);
        assert_eq!(RegionBounds::new(0.0, 0.0, 0.0).vertices(), vec![[0.0, 0.0]]);
        assert!(RegionBounds::new(-0.1, 0.5, 0.5).vertices().is_empty());
    }

    #[test]
    fn unbounded_cap_round_trips_as_tag() {
        let b = RegionBounds {
            b1: 0.5,
            b2: 0.25,
            b3: Cap::Unbounded,
        };
        let s = serde_json::to_string(&b).unwrap();
        assert!(s.contains("\"unbounded\""));
        let back: RegionBounds = serde_json::from_str(&s).unwrap();
        assert_eq!(back, b);
        assert_eq!(b.sum_cap(), 0.25);
    }
}
