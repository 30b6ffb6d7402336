//! Torsion linking forms of the join.
//!
//! Two pairings live on a closed oriented 5-manifold with this homology: a
//! symmetric one pairing torsion of `H_1` with torsion of `H_3` (both `Z/d`),
//! and a skew one on the torsion `(Z/l2)^{2g}` of `H_2`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::blocks::JoinParams;
use crate::fgab::FgAbGroup;
use crate::zmatrix::{IntMatrix, PresentedHom};

/// An element `p/q` of Q/Z with `0 <= p < q` and `gcd(p, q) = 1`; zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QzResidue {
    num: BigInt,
    den: BigInt,
}

impl QzResidue {
    /// Panics if `den` is zero.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        let (mut num, mut den) = (num.into(), den.into());
        assert!(!den.is_zero(), "zero denominator in Q/Z");
        if den < BigInt::zero() {
            num = -num;
            den = -den;
        }
        let num = num.mod_floor(&den);
        let g = num.gcd(&den);
        if num.is_zero() {
            return Self::zero();
        }
        QzResidue {
            num: num / &g,
            den: den / g,
        }
    }

    pub fn zero() -> Self {
        QzResidue {
            num: BigInt::zero(),
            den: BigInt::one(),
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &QzResidue) -> QzResidue {
        QzResidue::new(&self.num * &other.den + &other.num * &self.den, &self.den * &other.den)
    }

    pub fn neg(&self) -> QzResidue {
        QzResidue::new(-&self.num, self.den.clone())
    }

    pub fn scale(&self, k: &BigInt) -> QzResidue {
        QzResidue::new(&self.num * k, self.den.clone())
    }
}

impl fmt::Display for QzResidue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for QzResidue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for QzResidue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    Symmetric,
    Skew,
}

impl Symmetry {
    /// The sign `(-1)^{(n+1)(m-n)}` for a pairing `TH_n x TH_{m-n-1}` on an
    /// `m`-manifold.
    pub fn for_degree(deg_n: i64, dim_m: i64) -> Symmetry {
        if ((deg_n + 1) * (dim_m - deg_n)).rem_euclid(2) == 0 {
            Symmetry::Symmetric
        } else {
            Symmetry::Skew
        }
    }
}

/// A Q/Z-valued bilinear form on a finite abelian group, written in a basis
/// of cyclic generators of the given orders.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinkingForm {
    pub torsion_group: FgAbGroup,
    pub generator_orders: Vec<BigInt>,
    pub basis_labels: Vec<String>,
    pub matrix: Vec<Vec<QzResidue>>,
    pub expected_symmetry: Symmetry,
}

impl LinkingForm {
    pub fn dimension(&self) -> usize {
        self.basis_labels.len()
    }

    /// `λ(x, y)` for coefficient vectors in the basis.
    pub fn evaluate(&self, x: &[BigInt], y: &[BigInt]) -> QzResidue {
        let mut acc = QzResidue::zero();
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                acc = acc.add(&self.matrix[i][j].scale(&(xi * yj)));
            }
        }
        acc
    }

    /// Every entry's denominator divides the exponent of the group.
    pub fn denominators_divide_exponent(&self) -> bool {
        let e = self.torsion_group.exponent();
        self.matrix.iter().flatten().all(|x| e.is_multiple_of(x.denominator()))
    }
}

impl Serialize for LinkingForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("LinkingForm", 4)?;
        st.serialize_field("group", &self.torsion_group)?;
        st.serialize_field("basis", &self.basis_labels)?;
        st.serialize_field("entries", &self.matrix)?;
        st.serialize_field("symmetry", &self.expected_symmetry)?;
        st.end()
    }
}

/// Cup product pairing on `H^1(Σ_g)` in the basis `A1, B1, ..., Ag, Bg`.
pub fn surface_cup_pairing(g: u64) -> IntMatrix {
    let block = IntMatrix::from_i64(2, 2, &[0, 1, -1, 0]);
    IntMatrix::block_diag(&vec![block; g as usize])
}

/// `λ(x ⊗ a/l2, y ⊗ b/l2) = I(x, y) · ab/l2` on `(Z/l2)^{2g}`.
pub fn linking_form_h2(p: &JoinParams) -> LinkingForm {
    let l2 = p.l2();
    let dim = if l2.is_one() { 0 } else { p.two_g() };
    let cup = surface_cup_pairing(p.g());
    let matrix = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| QzResidue::new(cup.get(i, j).clone(), l2.clone()))
                .collect()
        })
        .collect();
    let basis_labels = (0..dim)
        .map(|i| {
            let class = if i % 2 == 0 { "A" } else { "B" };
            format!("{class}{}⊗1/{l2}", i / 2 + 1)
        })
        .collect();
    LinkingForm {
        torsion_group: FgAbGroup::cyclic(l2.clone()).power(dim),
        generator_orders: vec![l2; dim],
        basis_labels,
        matrix,
        expected_symmetry: Symmetry::Skew,
    }
}

/// `(a, b) -> ab/d` on `Z/d x Z/d`.
pub fn linking_form_h1h3(p: &JoinParams) -> LinkingForm {
    let d = BigInt::from(p.d());
    let (orders, labels, matrix) = if d.is_one() {
        (vec![], vec![], vec![])
    } else {
        (
            vec![d.clone()],
            vec![format!("1 mod {d}")],
            vec![vec![QzResidue::new(1, d.clone())]],
        )
    };
    LinkingForm {
        torsion_group: FgAbGroup::from_diagonal(orders.clone()),
        generator_orders: orders,
        basis_labels: labels,
        matrix,
        expected_symmetry: Symmetry::Symmetric,
    }
}

/// Whether `λ(y, x) = (-1)^{(n+1)(m-n)} λ(x, y)` entrywise.
pub fn check_symmetry(f: &LinkingForm, deg_n: i64, dim_m: i64) -> bool {
    let sign = Symmetry::for_degree(deg_n, dim_m);
    let k = f.dimension();
    f.matrix.len() == k
        && f.matrix.iter().all(|row| row.len() == k)
        && (0..k).all(|i| {
            (0..k).all(|j| {
                let t = &f.matrix[j][i];
                let expected = match sign {
                    Symmetry::Symmetric => t.clone(),
                    Symmetry::Skew => t.neg(),
                };
                f.matrix[i][j] == expected
            })
        })
}

/// Whether the adjoint `T -> Hom(T, Q/Z)` is injective.
///
/// With `E` the exponent of `T`, `λ(x_i, x_j) · E` is an integer mod `E`, so
/// the adjoint is the presented map `⊕ Z/e_i -> (Z/E)^k` given by the
/// transposed cleared matrix; the form is nondegenerate iff its kernel is 0.
pub fn is_nondegenerate(f: &LinkingForm) -> bool {
    let k = f.dimension();
    if k == 0 {
        return true;
    }
    let e = f
        .generator_orders
        .iter()
        .fold(BigInt::one(), |acc, o| acc.lcm(o));
    let cleared = IntMatrix::from_fn(k, k, |j, i| {
        let x = &f.matrix[i][j];
        (x.numerator() * (&e / x.denominator())).mod_floor(&e)
    });
    let hom = PresentedHom::new(
        IntMatrix::diagonal(&f.generator_orders),
        IntMatrix::diagonal(&vec![e; k]),
        cleared,
    );
    match hom {
        Ok(h) => h.is_injective(),
        // not even well defined on the group
        Err(_) => false,
    }
}

/// Recognises a block-diagonal sum of `[[0, u], [-u, 0]]` blocks and
/// returns the `u`s.
pub fn hyperbolic_certificate(f: &LinkingForm) -> Option<Vec<QzResidue>> {
    let k = f.dimension();
    if !k.is_multiple_of(2) {
        return None;
    }
    let mut units = Vec::with_capacity(k / 2);
    for blk in 0..k / 2 {
        let (a, b) = (2 * blk, 2 * blk + 1);
        for i in 0..k {
            for j in 0..k {
                let inside = (i == a || i == b) && (j == a || j == b);
                if !inside && !f.matrix[i][j].is_zero() {
                    return None;
                }
            }
        }
        let u = f.matrix[a][b].clone();
        if !f.matrix[a][a].is_zero() || !f.matrix[b][b].is_zero() || f.matrix[b][a] != u.neg() {
            return None;
        }
        units.push(u);
    }
    Some(units)
}

/// Invariant package used to group tuples with identical computed
/// invariants.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Fingerprint {
    pub g: u64,
    pub d: u64,
    pub l2: u64,
    pub cohomology: Vec<String>,
    pub homology: Vec<String>,
    /// `λ1(1, 1)`; `None` when `d = 1`.
    pub lambda1: Option<QzResidue>,
    /// Hyperbolic block units of `λ2`; `None` if `λ2` is not hyperbolic.
    pub lambda2: Option<Vec<QzResidue>>,
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l1 = self
            .lambda1
            .as_ref()
            .map_or("-".to_string(), ToString::to_string);
        let l2 = match &self.lambda2 {
            None => "non-hyperbolic".to_string(),
            Some(u) if u.is_empty() => "-".to_string(),
            Some(u) => format!("hyp({})", u.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")),
        };
        write!(
            f,
            "g={} d={} l2={} H^*=[{}] λ1={} λ2={}",
            self.g,
            self.d,
            self.l2,
            self.cohomology.join("; "),
            l1,
            l2
        )
    }
}

/// Fingerprint of a tuple, built from the assembled (co)homology and the
/// linking forms.
pub fn fingerprint(p: &JoinParams) -> crate::error::Result<Fingerprint> {
    let cohomology = crate::mvengine::integral_cohomology(p)?;
    let homology = crate::mvengine::integral_homology(p)?;
    Ok(fingerprint_from(p, &cohomology, &homology))
}

pub(crate) fn fingerprint_from(
    p: &JoinParams,
    cohomology: &crate::blocks::CohomologyProfile,
    homology: &crate::blocks::CohomologyProfile,
) -> Fingerprint {
    let l1 = linking_form_h1h3(p);
    let l2 = linking_form_h2(p);
    Fingerprint {
        g: p.g(),
        d: p.d(),
        l2: p.l2_u64(),
        cohomology: cohomology.groups.iter().map(ToString::to_string).collect(),
        homology: homology.groups.iter().map(ToString::to_string).collect(),
        lambda1: l1.matrix.first().map(|row| row[0].clone()),
        lambda2: hyperbolic_certificate(&l2),
    }
}
