//! Exact arithmetic for gain groups on the unit circle.
//!
//! A gain is a point of the circle group stored as a rational number of
//! turns `p/q`, interpreted as the complex number `e^{2πi·p/q}`. All group
//! arithmetic (product, inverse) is exact fraction arithmetic mod 1, so
//! structural identities can be checked with `==` instead of a tolerance.
//! Floating point only enters through [`UnitGain::to_complex`], the bridge
//! to numeric matrices.
//!
//! [`GroupSpec`] fixes which subgroup gains are drawn from (the whole
//! circle, the n-th roots of unity, or the sign group `{+1, -1}`) together
//! with a distinguished involution used by orientations. The sign group is
//! the subgroup `{0, 1/2}` of rational turns rather than a separate type,
//! so signed graphs are an ordinary special case.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GainError {
    #[error("bad fraction {input:?}: {reason}")]
    BadFraction { input: String, reason: String },
    #[error("involution {0} does not square to the identity")]
    NotInvolution(UnitGain),
    #[error("gain {gain} lies outside {family}")]
    OutsideFamily { gain: UnitGain, family: GroupFamily },
    #[error("root-of-unity order must be at least 1")]
    ZeroOrder,
}

/// An element of the circle group, stored exactly as `p/q` turns with
/// `0 <= p/q < 1` in lowest terms (`q >= 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnitGain {
    numer: i64,
    denom: i64,
}

impl UnitGain {
    /// The group identity, zero turns (the complex number 1).
    pub const fn identity() -> Self {
        UnitGain { numer: 0, denom: 1 }
    }

    /// Half a turn, the complex number -1.
    pub const fn half_turn() -> Self {
        UnitGain { numer: 1, denom: 2 }
    }

    /// A quarter turn, the complex number i.
    pub const fn quarter_turn() -> Self {
        UnitGain { numer: 1, denom: 4 }
    }

    /// Builds the gain `p/q` turns, reduced mod 1 to canonical form.
    /// `p` may be negative or exceed `q`; `q` must be nonzero.
    pub fn new(p: i64, q: i64) -> Result<Self, GainError> {
        if q == 0 {
            return Err(GainError::BadFraction {
                input: format!("{p}/{q}"),
                reason: "zero denominator".into(),
            });
        }
        Ok(Self::reduced(p as i128, q as i128))
    }

    /// Canonical form from i128 intermediates. Panics if the reduced
    /// denominator overflows i64, which cannot happen for inputs whose
    /// denominators each fit in i64.
    fn reduced(p: i128, q: i128) -> Self {
        debug_assert!(q != 0);
        let (mut p, mut q) = if q < 0 { (-p, -q) } else { (p, q) };
        let g = {
            let (mut a, mut b) = (p.abs(), q);
            while b != 0 {
                (a, b) = (b, a % b);
            }
            a.max(1)
        };
        p /= g;
        q /= g;
        p = p.rem_euclid(q);
        let numer = i64::try_from(p).expect("gain numerator overflow");
        let denom = i64::try_from(q).expect("gain denominator overflow");
        UnitGain { numer, denom }
    }

    /// Numerator of the turn count, `0 <= numer < denom`.
    pub fn numer(&self) -> i64 {
        self.numer
    }

    /// Denominator of the turn count, always >= 1 and coprime to the numerator.
    pub fn denom(&self) -> i64 {
        self.denom
    }

    pub fn is_identity(&self) -> bool {
        self.numer == 0
    }

    /// Whether the square of this gain is the identity (turns 0 or 1/2).
    pub fn is_involution(&self) -> bool {
        self.denom <= 2
    }

    /// Group product: turns add mod 1.
    pub fn mul(self, rhs: UnitGain) -> UnitGain {
        let p = self.numer as i128 * rhs.denom as i128 + rhs.numer as i128 * self.denom as i128;
        let q = self.denom as i128 * rhs.denom as i128;
        Self::reduced(p, q)
    }

    /// Group inverse: `(1 - turns) mod 1`, the complex conjugate on the circle.
    pub fn inv(self) -> UnitGain {
        if self.numer == 0 {
            self
        } else {
            UnitGain {
                numer: self.denom - self.numer,
                denom: self.denom,
            }
        }
    }

    /// The complex number `e^{2πi·turns}`. Multiples of a quarter turn map
    /// to exact unit values so that sign and fourth-root gains round-trip
    /// into matrices without floating-point noise.
    pub fn to_complex(self) -> Complex64 {
        if 4 % self.denom == 0 {
            return match self.numer * (4 / self.denom) {
                0 => Complex64::new(1.0, 0.0),
                1 => Complex64::new(0.0, 1.0),
                2 => Complex64::new(-1.0, 0.0),
                _ => Complex64::new(0.0, -1.0),
            };
        }
        let theta = 2.0 * std::f64::consts::PI * self.numer as f64 / self.denom as f64;
        Complex64::new(theta.cos(), theta.sin())
    }

    /// The turn count as a float, for display and angle work only.
    pub fn turns_f64(self) -> f64 {
        self.numer as f64 / self.denom as f64
    }

    /// A uniformly random element of the n-th roots of unity.
    pub fn random_in_mu<R: Rng + ?Sized>(n: u32, rng: &mut R) -> Result<Self, GainError> {
        if n == 0 {
            return Err(GainError::ZeroOrder);
        }
        let p = rng.random_range(0..n as i64);
        UnitGain::new(p, n as i64)
    }
}

impl fmt::Display for UnitGain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.numer == 0 {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.numer, self.denom)
        }
    }
}

impl FromStr for UnitGain {
    type Err = GainError;

    /// Accepts `p/q` or a bare integer `k` (meaning `k/1`, reduced mod 1,
    /// so every integer is the identity).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |reason: &str| GainError::BadFraction {
            input: s.to_string(),
            reason: reason.into(),
        };
        match s.split_once('/') {
            Some((p, q)) => {
                let p: i64 = p.trim().parse().map_err(|_| bad("numerator is not an integer"))?;
                let q: i64 = q.trim().parse().map_err(|_| bad("denominator is not an integer"))?;
                if q == 0 {
                    return Err(bad("zero denominator"));
                }
                UnitGain::new(p, q)
            }
            None => {
                let _k: i64 = s.trim().parse().map_err(|_| bad("not an integer or p/q"))?;
                Ok(UnitGain::identity())
            }
        }
    }
}

/// Which subgroup of the circle a gain graph draws its gains from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupFamily {
    /// The whole circle group; any rational turn is admitted.
    Circle,
    /// The n-th roots of unity.
    Mu(u32),
    /// The sign group {+1, -1}, i.e. turns in {0, 1/2}.
    Sign,
}

impl GroupFamily {
    /// Membership test for the family.
    pub fn contains(&self, g: UnitGain) -> bool {
        match self {
            GroupFamily::Circle => true,
            GroupFamily::Mu(n) => *n >= 1 && (*n as i64) % g.denom() == 0,
            GroupFamily::Sign => g.denom() <= 2,
        }
    }

    /// Order of the finite subgroup that random draws come from. The
    /// circle itself is infinite, so draws are restricted to a dense
    /// finite subgroup (the 24th roots of unity).
    pub fn sample_order(&self) -> u32 {
        match self {
            GroupFamily::Circle => 24,
            GroupFamily::Mu(n) => *n,
            GroupFamily::Sign => 2,
        }
    }
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupFamily::Circle => write!(f, "circle"),
            GroupFamily::Mu(n) => write!(f, "mu {n}"),
            GroupFamily::Sign => write!(f, "sign"),
        }
    }
}

/// A gain group together with its distinguished central involution.
///
/// The involution links incidence phases to edge gains; because every
/// group here is abelian it is automatically central. Its square must be
/// the identity, which over the circle forces turns 0 (+1) or 1/2 (-1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupSpec {
    pub family: GroupFamily,
    pub involution: UnitGain,
}

impl GroupSpec {
    pub fn new(family: GroupFamily, involution: UnitGain) -> Result<Self, GainError> {
        let spec = GroupSpec { family, involution };
        spec.validate()?;
        Ok(spec)
    }

    /// Checks the spec invariants, reporting the first violated rule:
    /// the order of a root-of-unity family is positive, the involution
    /// squares to the identity, and the involution belongs to the family.
    pub fn validate(&self) -> Result<(), GainError> {
        if let GroupFamily::Mu(0) = self.family {
            return Err(GainError::ZeroOrder);
        }
        if !self.involution.mul(self.involution).is_identity() {
            return Err(GainError::NotInvolution(self.involution));
        }
        if !self.family.contains(self.involution) {
            return Err(GainError::OutsideFamily {
                gain: self.involution,
                family: self.family,
            });
        }
        Ok(())
    }

    /// The involution as a real sign: +1.0 for the identity, -1.0 for the
    /// half turn.
    pub fn involution_sign(&self) -> f64 {
        if self.involution.is_identity() {
            1.0
        } else {
            -1.0
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(p: i64, q: i64) -> UnitGain {
        UnitGain::new(p, q).unwrap()
    }

    #[test]
    fn product_adds_turns_mod_one() {
        // i * i = -1
        assert_eq!(g(1, 4).mul(g(1, 4)), g(1, 2));
        // identity is neutral
        assert_eq!(g(3, 7).mul(UnitGain::identity()), g(3, 7));
        // 3/8 + 3/4 = 9/8 -> 1/8 by plain fraction arithmetic
        assert_eq!(g(3, 8).mul(g(3, 4)), g(1, 8));
    }

    #[test]
    fn inverse_reflects_turns() {
        assert_eq!(UnitGain::identity().inv(), UnitGain::identity());
        assert_eq!(g(1, 2).inv(), g(1, 2));
        assert_eq!(g(1, 3).inv(), g(2, 3));
        assert_eq!(g(1, 3).mul(g(1, 3).inv()), UnitGain::identity());
    }

    #[test]
    fn canonical_form_reduces_mod_one() {
        assert_eq!(g(9, 8), g(1, 8));
        assert_eq!(g(-1, 4), g(3, 4));
        assert_eq!(g(2, 4), g(1, 2));
        assert_eq!(g(5, 1), UnitGain::identity());
        assert_eq!(g(3, -4), g(1, 4));
    }

    #[test]
    fn quarter_turn_values_are_exact() {
        assert_eq!(UnitGain::identity().to_complex(), Complex64::new(1.0, 0.0));
        assert_eq!(g(1, 2).to_complex(), Complex64::new(-1.0, 0.0));
        assert_eq!(g(1, 4).to_complex(), Complex64::new(0.0, 1.0));
        assert_eq!(g(3, 4).to_complex(), Complex64::new(0.0, -1.0));
    }

    #[test]
    fn complex_values_stay_on_the_circle() {
        for q in 1..=60 {
            for p in 0..q {
                let z = g(p, q).to_complex();
                assert!((z.norm() - 1.0).abs() <= 1e-15, "{p}/{q} -> {z}");
            }
        }
    }

    #[test]
    fn parse_and_display_round_trip() {
        assert_eq!("0".parse::<UnitGain>().unwrap(), UnitGain::identity());
        assert_eq!("1/2".parse::<UnitGain>().unwrap(), g(1, 2));
        assert_eq!("7".parse::<UnitGain>().unwrap(), UnitGain::identity());
        assert_eq!("-1/4".parse::<UnitGain>().unwrap(), g(3, 4));
        assert_eq!(g(3, 4).to_string(), "3/4");
        assert_eq!(UnitGain::identity().to_string(), "0");
        assert!("1/0".parse::<UnitGain>().is_err());
        assert!("x/2".parse::<UnitGain>().is_err());
        assert!("".parse::<UnitGain>().is_err());
    }

    #[test]
    fn spec_validation_examples() {
        assert!(GroupSpec::new(GroupFamily::Circle, g(1, 2)).is_ok());
        assert!(GroupSpec::new(GroupFamily::Mu(4), UnitGain::identity()).is_ok());
        // a third of a turn does not square to the identity
        assert_eq!(
            GroupSpec::new(GroupFamily::Mu(4), g(1, 3)),
            Err(GainError::NotInvolution(g(1, 3)))
        );
        // -1 is an involution but not a cube root of unity
        assert_eq!(
            GroupSpec::new(GroupFamily::Mu(3), g(1, 2)),
            Err(GainError::OutsideFamily {
                gain: g(1, 2),
                family: GroupFamily::Mu(3)
            })
        );
        assert_eq!(
            GroupSpec::new(GroupFamily::Mu(0), UnitGain::identity()),
            Err(GainError::ZeroOrder)
        );
    }

    #[test]
    fn family_membership() {
        assert!(GroupFamily::Mu(4).contains(g(1, 4)));
        assert!(GroupFamily::Mu(4).contains(g(1, 2)));
        assert!(!GroupFamily::Mu(4).contains(g(1, 3)));
        assert!(GroupFamily::Sign.contains(g(1, 2)));
        assert!(!GroupFamily::Sign.contains(g(1, 4)));
        assert!(GroupFamily::Circle.contains(g(17, 60)));
    }
}
