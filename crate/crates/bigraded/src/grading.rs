//! Degrees in ℤ₂×ℤ₂, the Koszul sign rule, parity, and boost weights.
//!
//! A degree is a pair (γ₁, γ₂) with entries mod 2. Two homogeneous elements
//! reorder with the sign (−1)^{⟨deg a, deg b⟩} where ⟨·,·⟩ is the standard
//! scalar product a₁b₁ + a₂b₂ mod 2. Consequently (0,1) and (1,0) elements
//! square to zero, while (1,1) elements *commute with themselves* and are
//! not nilpotent — the structural novelty of this grading compared to
//! ordinary superalgebra.
//!
//! Boost weights are half-integers; we store twice the weight as an `i32`
//! so that all weight arithmetic stays in integers.

use std::fmt;

/// A ℤ₂×ℤ₂ degree. Constructors reduce entries mod 2.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Degree(u8, u8);

impl Degree {
    pub const fn new(a: u8, b: u8) -> Self {
        Degree(a % 2, b % 2)
    }

    pub const ZERO: Degree = Degree(0, 0);
    pub const BOTH: Degree = Degree(1, 1);
    pub const SECOND: Degree = Degree(0, 1);
    pub const FIRST: Degree = Degree(1, 0);

    pub fn parts(self) -> (u8, u8) {
        (self.0, self.1)
    }

    /// Component-wise sum mod 2 (the degree of a product).
    pub fn plus(self, other: Degree) -> Degree {
        Degree((self.0 + other.0) % 2, (self.1 + other.1) % 2)
    }

    /// Standard scalar product ⟨a,b⟩ = a₁b₁ + a₂b₂ mod 2.
    pub fn dot(self, other: Degree) -> u8 {
        (self.0 * other.0 + self.1 * other.1) % 2
    }

    /// Total parity γ₁+γ₂ mod 2. Note that (1,1) is *even* in this sense:
    /// the even subalgebra spanned by (0,0) and (1,1) degrees is commutative.
    pub fn parity(self) -> u8 {
        (self.0 + self.1) % 2
    }

    pub fn is_even(self) -> bool {
        self.parity() == 0
    }

    /// Whether a homogeneous element of this degree squares to zero purely
    /// by the sign rule: g² = (−1)^{⟨g,g⟩} g² forces g² = 0 iff ⟨g,g⟩ = 1.
    pub fn self_anticommutes(self) -> bool {
        self.dot(self) == 1
    }

    /// Canonical display rank: (0,0) < (1,1) < (0,1) < (1,0).
    ///
    /// This is the order in which component fields, matrix row labels and
    /// bracket tables are listed; it groups the commuting degrees first.
    pub fn rank(self) -> u8 {
        match (self.0, self.1) {
            (0, 0) => 0,
            (1, 1) => 1,
            (0, 1) => 2,
            (1, 0) => 3,
            _ => unreachable!(),
        }
    }

    pub fn all() -> [Degree; 4] {
        [Degree::ZERO, Degree::BOTH, Degree::SECOND, Degree::FIRST]
    }
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Degree {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl fmt::Debug for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0, self.1)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0, self.1)
    }
}

/// Sign picked up when two homogeneous elements swap places.
pub fn koszul_sign(a: Degree, b: Degree) -> i8 {
    if a.dot(b) == 1 {
        -1
    } else {
        1
    }
}

/// Sign for moving an element of degree `a` past a whole block of degree `b`
/// raised to nothing — identical to [`koszul_sign`] but useful to spell the
/// intent at call sites that sweep a factor across a product.
pub fn sweep_sign(moving: Degree, past: Degree) -> i8 {
    koszul_sign(moving, past)
}

/// Render twice-the-weight as a human-readable half-integer ("-3/2", "1", "0").
pub fn weight2_string(w2: i32) -> String {
    if w2 % 2 == 0 {
        format!("{}", w2 / 2)
    } else {
        format!("{}/2", w2)
    }
}
