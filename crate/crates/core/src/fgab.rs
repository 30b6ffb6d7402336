//! Finitely generated abelian groups in invariant-factor normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

/// `Z^rank + Z/d1 + Z/d2 + ...` with `1 < d1 | d2 | ...`.
///
/// The descriptor is a complete isomorphism invariant: two groups are
/// isomorphic exactly when their descriptors compare equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FgAbGroup {
    rank: usize,
    invariant_factors: Vec<BigInt>,
}

impl FgAbGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup {
            rank,
            invariant_factors: Vec::new(),
        }
    }

    pub fn cyclic(order: impl Into<BigInt>) -> Self {
        Self::from_diagonal([order.into()])
    }

    /// `rank` free summands plus cyclic summands of the given orders (any
    /// order; they are normalised).
    pub fn new(rank: usize, orders: impl IntoIterator<Item = BigInt>) -> Self {
        let mut g = Self::from_diagonal(orders);
        g.rank += rank;
        g
    }

    /// Normal form of `Z/e1 + Z/e2 + ...`, where `e = 0` contributes a free
    /// summand and `e = ±1` contributes nothing.
    pub fn from_diagonal(entries: impl IntoIterator<Item = BigInt>) -> Self {
        let mut rank = 0;
        let mut factors = Vec::new();
        for e in entries {
            let e = e.abs();
            if e.is_zero() {
                rank += 1;
            } else if !e.is_one() {
                factors.push(e);
            }
        }
        FgAbGroup {
            rank,
            invariant_factors: normalize_factors(factors),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn torsion(&self) -> FgAbGroup {
        FgAbGroup {
            rank: 0,
            invariant_factors: self.invariant_factors.clone(),
        }
    }

    pub fn free_part(&self) -> FgAbGroup {
        Self::free(self.rank)
    }

    /// Order of the torsion subgroup (1 for torsion-free groups).
    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    /// Exponent of the torsion subgroup (1 for torsion-free groups).
    pub fn exponent(&self) -> BigInt {
        self.invariant_factors.last().cloned().unwrap_or_else(BigInt::one)
    }

    /// `Some(order)` when the group is finite.
    pub fn order(&self) -> Option<BigInt> {
        (self.rank == 0).then(|| self.torsion_order())
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    pub fn is_cyclic(&self) -> bool {
        self.rank + self.invariant_factors.len() <= 1
    }

    /// Number of cyclic summands in the normal form.
    pub fn num_generators(&self) -> usize {
        self.rank + self.invariant_factors.len()
    }

    /// Whether the group has an element of order exactly `k`, i.e. contains a
    /// copy of `Z/k`.
    pub fn contains_cyclic(&self, k: &BigInt) -> bool {
        if k.is_one() {
            return true;
        }
        if k.is_zero() {
            return self.rank > 0;
        }
        self.exponent().is_multiple_of(k)
    }

    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        FgAbGroup {
            rank: self.rank + other.rank,
            invariant_factors: normalize_factors(
                self.invariant_factors
                    .iter()
                    .chain(&other.invariant_factors)
                    .cloned()
                    .collect(),
            ),
        }
    }

    /// `self ⊕ self ⊕ ...` (`k` copies).
    pub fn power(&self, k: usize) -> FgAbGroup {
        (0..k).fold(FgAbGroup::trivial(), |acc, _| acc.direct_sum(self))
    }

    /// The cyclic summand orders of the normal form, with 0 for each free summand.
    pub fn diagonal(&self) -> Vec<BigInt> {
        self.invariant_factors
            .iter()
            .cloned()
            .chain(std::iter::repeat_n(BigInt::zero(), self.rank))
            .collect()
    }
}

/// Rewrite a multiset of orders > 1 into a divisibility chain by repeated
/// `(a, b) -> (gcd, lcm)`; this is the prime-power merge without factoring.
fn normalize_factors(mut factors: Vec<BigInt>) -> Vec<BigInt> {
    factors.sort();
    let n = factors.len();
    for i in 0..n {
        for j in i + 1..n {
            let g = factors[i].gcd(&factors[j]);
            let l = factors[i].lcm(&factors[j]);
            factors[i] = g;
            factors[j] = l;
        }
    }
    factors.retain(|f| !f.is_one());
    factors
}

/// Renders torsion summands first, then the free part, e.g. `Z/2 + Z/4 + Z^2`.
/// Repeated factors collapse to `(Z/4)^2`; the trivial group is `0`.
impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = torsion_terms(&self.invariant_factors);
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn torsion_terms(factors: &[BigInt]) -> Vec<String> {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < factors.len() {
        let run = factors[i..].iter().take_while(|x| **x == factors[i]).count();
        if run == 1 {
            parts.push(format!("Z/{}", factors[i]));
        } else {
            parts.push(format!("(Z/{})^{run}", factors[i]));
        }
        i += run;
    }
    parts
}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgAbGroup({self})")
    }
}

impl Serialize for FgAbGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A Q/Z-module of the form `(Q/Z)^k + finite`, as arises for
/// `Hom(A, Q/Z)` with `A` finitely generated. The divisible rank is kept
/// apart from any free rank so such groups never compare equal to
/// ordinary finitely generated ones.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct QzGroup {
    divisible_rank: usize,
    torsion: FgAbGroup,
}

impl QzGroup {
    pub fn new(divisible_rank: usize, torsion: FgAbGroup) -> Self {
        assert!(torsion.is_finite(), "finite part of a Q/Z-module must be finite");
        QzGroup {
            divisible_rank,
            torsion,
        }
    }

    pub fn divisible_rank(&self) -> usize {
        self.divisible_rank
    }

    pub fn torsion(&self) -> &FgAbGroup {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.divisible_rank == 0 && self.torsion.is_trivial()
    }
}

impl fmt::Display for QzGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = torsion_terms(self.torsion.invariant_factors());
        match self.divisible_rank {
            0 => {}
            1 => parts.push("Q/Z".to_string()),
            r => parts.push(format!("(Q/Z)^{r}")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for QzGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QzGroup({self})")
    }
}

impl Serialize for QzGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

pub fn direct_sum(a: &FgAbGroup, b: &FgAbGroup) -> FgAbGroup {
    a.direct_sum(b)
}

/// `Hom(A, Q/Z)`: one `Q/Z` per free summand, and `Hom(Z/m, Q/Z) = Z/m`.
pub fn hom_to_qz(a: &FgAbGroup) -> QzGroup {
    QzGroup::new(a.rank(), a.torsion())
}

/// `Ext(A, Z)`: the torsion subgroup of `A`.
pub fn ext_to_z(a: &FgAbGroup) -> FgAbGroup {
    a.torsion()
}

/// `Hom(A, Z)`: free of rank `rank(A)`.
pub fn hom_to_z(a: &FgAbGroup) -> FgAbGroup {
    FgAbGroup::free(a.rank())
}
