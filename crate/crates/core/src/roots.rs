//! Roots of unity `μ_m` stored as exponents modulo `m`.
//!
//! The base field is never represented. Every structure constant in this
//! crate is a root of unity, so multiplication is exponent addition.

use std::fmt;

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Re-express an exponent modulo `from` as an exponent modulo `to`,
/// where `from` divides `to` (the embedding `μ_from ⊂ μ_to`).
pub fn lift(exp: u64, from: u64, to: u64) -> u64 {
    debug_assert!(to.is_multiple_of(from), "{from} does not divide {to}");
    (exp % from) * (to / from)
}

/// A root of unity `ζ_order^exp`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootScalar {
    exp: u64,
    order: u64,
}

impl RootScalar {
    pub fn new(exp: u64, order: u64) -> RootScalar {
        assert!(order > 0, "root order must be positive");
        RootScalar {
            exp: exp % order,
            order,
        }
    }

    pub fn one(order: u64) -> RootScalar {
        RootScalar::new(0, order)
    }

    pub fn exp(self) -> u64 {
        self.exp
    }

    pub fn order(self) -> u64 {
        self.order
    }

    pub fn is_one(self) -> bool {
        self.exp == 0
    }

    /// Express in `μ_to`; `to` must be a multiple of the current order.
    pub fn lift_to(self, to: u64) -> RootScalar {
        RootScalar::new(lift(self.exp, self.order, to), to)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: RootScalar) -> RootScalar {
        let order = lcm(self.order, other.order);
        let a = self.lift_to(order);
        let b = other.lift_to(order);
        RootScalar::new(a.exp + b.exp, order)
    }

    pub fn inv(self) -> RootScalar {
        RootScalar::new(self.order - self.exp, self.order)
    }

    /// Equality as elements of the field, regardless of the stored order.
    pub fn same_value(self, other: RootScalar) -> bool {
        let order = lcm(self.order, other.order);
        self.lift_to(order).exp == other.lift_to(order).exp
    }
}

impl fmt::Display for RootScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "1")
        } else {
            write!(f, "ζ{}^{}", self.order, self.exp)
        }
    }
}
