//! Cost scalars and bi-objective cost vectors.

use std::fmt;
use std::ops::Add;

/// Accumulated path cost. Arc weights are 32-bit; sums use 64 bits.
pub type Cost = u64;

/// Reserved "unreachable / unbounded" cost. Arithmetic saturates at this value.
pub const INF: Cost = Cost::MAX;

/// Saturating add that treats [`INF`] as absorbing.
#[inline]
pub fn add_cost(a: Cost, b: Cost) -> Cost {
    a.saturating_add(b)
}

/// A two-component non-negative cost vector `(c1, c2)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CostPair {
    pub c1: Cost,
    pub c2: Cost,
}

impl CostPair {
    pub const ZERO: CostPair = CostPair { c1: 0, c2: 0 };
    pub const INF: CostPair = CostPair { c1: INF, c2: INF };

    pub const fn new(c1: Cost, c2: Cost) -> Self {
        CostPair { c1, c2 }
    }

    /// `self` is no worse than `other` in both components.
    #[inline]
    pub fn weakly_dominates(&self, other: &CostPair) -> bool {
        self.c1 <= other.c1 && self.c2 <= other.c2
    }

    /// Component selected by an objective index.
    #[inline]
    pub fn get(&self, objective: Objective) -> Cost {
        match objective {
            Objective::First => self.c1,
            Objective::Second => self.c2,
        }
    }
}

impl Add for CostPair {
    type Output = CostPair;

    #[inline]
    fn add(self, rhs: CostPair) -> CostPair {
        CostPair { c1: add_cost(self.c1, rhs.c1), c2: add_cost(self.c2, rhs.c2) }
    }
}

impl fmt::Display for CostPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.c1, self.c2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Objective {
    First,
    Second,
}

impl Objective {
    pub fn other(self) -> Objective {
        match self {
            Objective::First => Objective::Second,
            Objective::Second => Objective::First,
        }
    }
}

/// Which objective a search sorts on first: `(f1, f2)` or `(f2, f1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ObjectiveOrder {
    /// Primary objective 1, secondary objective 2.
    FirstSecond,
    /// Primary objective 2, secondary objective 1.
    SecondFirst,
}

impl ObjectiveOrder {
    pub fn primary(self) -> Objective {
        match self {
            ObjectiveOrder::FirstSecond => Objective::First,
            ObjectiveOrder::SecondFirst => Objective::Second,
        }
    }

    pub fn secondary(self) -> Objective {
        self.primary().other()
    }

    pub fn flipped(self) -> ObjectiveOrder {
        match self {
            ObjectiveOrder::FirstSecond => ObjectiveOrder::SecondFirst,
            ObjectiveOrder::SecondFirst => ObjectiveOrder::FirstSecond,
        }
    }

    /// Maps `(c1, c2)` to `(primary, secondary)` for this order.
    #[inline]
    pub fn project(self, cost: CostPair) -> Lex {
        match self {
            ObjectiveOrder::FirstSecond => Lex::new(cost.c1, cost.c2),
            ObjectiveOrder::SecondFirst => Lex::new(cost.c2, cost.c1),
        }
    }

    /// Inverse of [`ObjectiveOrder::project`].
    #[inline]
    pub fn unproject(self, lex: Lex) -> CostPair {
        match self {
            ObjectiveOrder::FirstSecond => CostPair::new(lex.primary, lex.secondary),
            ObjectiveOrder::SecondFirst => CostPair::new(lex.secondary, lex.primary),
        }
    }
}

/// A cost pair expressed in a search's own `(primary, secondary)` terms.
///
/// The derived ordering is lexicographic.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lex {
    pub primary: Cost,
    pub secondary: Cost,
}

impl Lex {
    pub const fn new(primary: Cost, secondary: Cost) -> Self {
        Lex { primary, secondary }
    }
}

impl Add for Lex {
    type Output = Lex;

    #[inline]
    fn add(self, rhs: Lex) -> Lex {
        Lex { primary: add_cost(self.primary, rhs.primary), secondary: add_cost(self.secondary, rhs.secondary) }
    }
}
