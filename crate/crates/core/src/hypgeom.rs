//! Hyperbolic trigonometry and metric comparison envelopes.
//!
//! Everything here works with hyperbolic lengths in the curvature −1
//! normalization. The envelopes relate the length of a curve on a surface
//! `Y` to its length on a surface `X` at bounded distance from `Y`, either in
//! the Teichmüller metric (a linear, two-sided envelope) or in the Thurston
//! metric (a power-law upper bound valid only for short curves).

use serde::Serialize;

use crate::error::{PinchError, Result};

/// Relative tolerance used for identities such as `cosh(c) = sinh(a) sinh(b)`.
pub const IDENTITY_TOL: f64 = 1e-12;

/// A positive, finite hyperbolic length.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct LengthValue(f64);

impl LengthValue {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value > 0.0 {
            Ok(Self(value))
        } else {
            Err(PinchError::Domain(format!(
                "length must be positive and finite, got {value}"
            )))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

/// Constants of the coarse-density argument.
///
/// None of these has a value pinned down by the underlying geometry; they are
/// only known to exist. Defaults come from [`HypConstants::for_genus`] and every
/// one of them can be overridden.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HypConstants {
    pub genus: u32,
    /// Coarse-density radius `K`.
    #[serde(rename = "K")]
    pub k: f64,
    /// Multiplicative constant of the Teichmüller length comparison.
    pub wolpert_c: f64,
    /// Constant `c` of the Thurston-metric short-curve comparison.
    pub lemma41_c: f64,
    /// Short-curve threshold of the Thurston-metric comparison.
    pub lemma41_eps: f64,
    /// Bound on cuff lengths of a short pants decomposition.
    #[serde(rename = "bers_B")]
    pub bers_b: f64,
    #[serde(rename = "C1")]
    pub c1: f64,
    #[serde(rename = "C2")]
    pub c2: f64,
    /// Multiplicative slack between hyperbolic length and `log 1/|t|` beyond
    /// the leading-order relation. `1` means leading order only.
    pub cprime: f64,
}

impl HypConstants {
    /// Default constants for `genus` at coarse-density radius `k`.
    ///
    /// `wolpert_c = e^{2K}`, `bers_b = 21 (g - 1)`, `C1 = 2`, `C2 = bers_b`,
    /// `lemma41_c = e^K max(1, C1)`, `lemma41_eps = 0.1`, `cprime = 1`.
    pub fn for_genus(genus: u32, k: f64) -> Result<Self> {
        let bers_b = 21.0 * (f64::from(genus) - 1.0);
        let c1: f64 = 2.0;
        let consts = Self {
            genus,
            k,
            wolpert_c: (2.0 * k).exp(),
            lemma41_c: k.exp() * c1.max(1.0),
            lemma41_eps: 0.1,
            bers_b,
            c1,
            c2: bers_b,
            cprime: 1.0,
        };
        consts.validate()?;
        Ok(consts)
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(PinchError::Validation(msg));
        if self.genus < 2 {
            return fail(format!("genus must be at least 2, got {}", self.genus));
        }
        if !(self.k.is_finite() && self.k >= 0.0) {
            return fail(format!("K must be finite and non-negative, got {}", self.k));
        }
        if !(self.wolpert_c.is_finite() && self.wolpert_c >= 1.0) {
            return fail(format!("wolpert_c must be >= 1, got {}", self.wolpert_c));
        }
        if self.wolpert_c == 1.0 && self.k > 0.0 {
            return fail("wolpert_c = 1 is only admissible when K = 0".to_string());
        }
        if !(self.lemma41_c.is_finite() && self.lemma41_c >= 1.0) {
            return fail(format!("lemma41_c must be >= 1, got {}", self.lemma41_c));
        }
        if !(self.lemma41_eps > 0.0 && self.lemma41_eps < 1.0) {
            return fail(format!(
                "lemma41_eps must lie in (0, 1), got {}",
                self.lemma41_eps
            ));
        }
        for (name, v) in [("bers_B", self.bers_b), ("C1", self.c1), ("C2", self.c2)] {
            if !(v.is_finite() && v > 0.0) {
                return fail(format!("{name} must be positive and finite, got {v}"));
            }
        }
        if !(self.cprime.is_finite() && self.cprime >= 1.0) {
            return fail(format!("cprime must be >= 1, got {}", self.cprime));
        }
        Ok(())
    }
}

/// Half-width of the standard embedded collar around a simple closed geodesic
/// of length `l`: `arcsinh(1 / sinh(l/2))`.
pub fn collar_width(l: LengthValue) -> LengthValue {
    let w = (1.0 / (0.5 * l.value()).sinh()).asinh();
    // For very long curves 1/sinh underflows to zero; the collar is then
    // narrower than any representable positive length.
    LengthValue(w.max(f64::MIN_POSITIVE))
}

/// Lower bound for the length of any closed geodesic crossing a simple
/// geodesic of length `l_alpha`: it must traverse the whole collar.
pub fn crossing_length_lower(l_alpha: LengthValue) -> LengthValue {
    LengthValue(2.0 * collar_width(l_alpha).value())
}

/// Side `c` of a right-angled hyperbolic pentagon with `cosh c = sinh a sinh b`,
/// where `a`, `b` are the two sides opposite to `c`.
///
/// Returns a plain real because `c = 0` is the degenerate limit when
/// `sinh a sinh b = 1`.
pub fn pentagon_side(a: LengthValue, b: LengthValue) -> Result<f64> {
    pentagon_side_from_sinh(a.value().sinh(), b.value().sinh())
}

pub fn pentagon_side_from_sinh(sinh_a: f64, sinh_b: f64) -> Result<f64> {
    if !(sinh_a.is_finite() && sinh_b.is_finite() && sinh_a > 0.0 && sinh_b > 0.0) {
        return Err(PinchError::Domain(format!(
            "sinh values must be positive and finite, got {sinh_a}, {sinh_b}"
        )));
    }
    let prod = sinh_a * sinh_b;
    if !prod.is_finite() {
        return Err(PinchError::Domain(format!(
            "sinh(a) sinh(b) overflows for {sinh_a}, {sinh_b}"
        )));
    }
    if prod < 1.0 {
        return Err(PinchError::Infeasible(format!(
            "sinh(a) sinh(b) = {prod} < 1, no right-angled pentagon has these sides"
        )));
    }
    Ok(prod.acosh())
}

/// Upper bound `C1 max(0, log 1/l) + C2` for the length of a curve crossing a
/// geodesic of length `l_alpha`, built from short-pants ortho-geodesics.
pub fn bers_crossing_bound(l_alpha: LengthValue, consts: &HypConstants) -> LengthValue {
    let log_inv = (-l_alpha.value().ln()).max(0.0);
    LengthValue(consts.c1 * log_inv + consts.c2)
}

/// `[l_Y / c, c l_Y]` with `c = wolpert_c`: the range of `l_X` when `X`, `Y`
/// are Teichmüller distance at most `K` apart.
pub fn wolpert_envelope(l_y: LengthValue, consts: &HypConstants) -> (LengthValue, LengthValue) {
    let c = consts.wolpert_c;
    (LengthValue(l_y.value() / c), LengthValue(c * l_y.value()))
}

/// `e^K l_X`, an upper bound for `l_Y` whenever `d_Th(X, Y) <= K`.
pub fn thurston_length_upper(l_x: LengthValue, consts: &HypConstants) -> LengthValue {
    LengthValue(consts.k.exp() * l_x.value())
}

/// `[l_Y / c, c l_Y^{1/c}]` with `c = lemma41_c`, valid for `l_Y <= lemma41_eps`.
pub fn lemma41_envelope(
    l_y: LengthValue,
    consts: &HypConstants,
) -> Result<(LengthValue, LengthValue)> {
    if l_y.value() > consts.lemma41_eps {
        return Err(PinchError::OutOfRegime(format!(
            "short-curve estimate needs l_Y <= {}, got {}",
            consts.lemma41_eps,
            l_y.value()
        )));
    }
    let c = consts.lemma41_c;
    let lo = l_y.value() / c;
    let hi = c * l_y.value().powf(1.0 / c);
    Ok((LengthValue(lo), LengthValue(hi)))
}

/// `max_α log(l_Y(α) / l_X(α))` over a finite marked curve family.
///
/// Since only finitely many curves are seen this is a lower bound for
/// `d_Th(X, Y)`, not the distance itself.
pub fn thurston_lower_bound(lengths_x: &[LengthValue], lengths_y: &[LengthValue]) -> Result<f64> {
    if lengths_x.is_empty() {
        return Err(PinchError::Usage("curve family is empty".to_string()));
    }
    if lengths_x.len() != lengths_y.len() {
        return Err(PinchError::Usage(format!(
            "curve families differ in size: {} vs {}",
            lengths_x.len(),
            lengths_y.len()
        )));
    }
    Ok(lengths_x
        .iter()
        .zip(lengths_y)
        .map(|(x, y)| y.value().ln() - x.value().ln())
        .fold(f64::NEG_INFINITY, f64::max))
}
