use std::fmt;

use num_rational::Ratio;

/// Valuations are exact rationals normalized by val(p) = 1.
pub type Val = Ratio<i64>;

/// The valuation of a fixed-precision element: either known exactly, or only
/// bounded below because the element is zero to its precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(Val),
    AtLeast(i64),
}

impl Valuation {
    pub fn finite(&self) -> Option<Val> {
        match *self {
            Valuation::Finite(v) => Some(v),
            Valuation::AtLeast(_) => None,
        }
    }

    /// The best known lower bound.
    pub fn lower_bound(&self) -> Val {
        match *self {
            Valuation::Finite(v) => v,
            Valuation::AtLeast(n) => Val::from_integer(n),
        }
    }

    /// True when the valuation is provably at least `bound`.
    pub fn is_at_least(&self, bound: Val) -> bool {
        self.lower_bound() >= bound
    }

    pub fn is_zero_marker(&self) -> bool {
        matches!(self, Valuation::AtLeast(_))
    }

    /// Valuation of a sum-like combination: the minimum of lower bounds,
    /// finite when the minimum is attained by a finite value.
    pub fn min(self, other: Valuation) -> Valuation {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a.min(b)),
            (Valuation::Finite(a), Valuation::AtLeast(n)) | (Valuation::AtLeast(n), Valuation::Finite(a)) => {
                if a <= Val::from_integer(n) {
                    Valuation::Finite(a)
                } else {
                    Valuation::AtLeast(n)
                }
            }
            (Valuation::AtLeast(a), Valuation::AtLeast(b)) => Valuation::AtLeast(a.min(b)),
        }
    }

    /// Shift by an exact rational amount, e.g. the `n|k|` term of a Gauss norm.
    pub fn shifted(self, by: Val) -> Valuation {
        match self {
            Valuation::Finite(v) => Valuation::Finite(v + by),
            // Only integral shifts keep the marker exact; round the bound down otherwise.
            Valuation::AtLeast(n) => Valuation::AtLeast((Val::from_integer(n) + by).floor().to_integer()),
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::AtLeast(n) => write!(f, ">={n}"),
        }
    }
}

impl serde::Serialize for Valuation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
