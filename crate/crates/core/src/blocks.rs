//! Parameters of the join and the building blocks `B1`, `B2`, `B1 ∩ B2 = ∂B1`.
//!
//! Everything here is integer bookkeeping: torus self-maps recorded by their
//! exponent matrices, clutching exponents of the local trivialisations over
//! the surface, and the (co)homology of the circle bundles `C1`, `C2` and of
//! the common boundary.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fgab::{ext_to_z, hom_to_z, FgAbGroup};
use crate::presentations::{abelianize, pi1_blocks};
use crate::zmatrix::{cokernel, IntMatrix, PresentedHom};

/// A validated tuple `(g, n, w1, w2, l2)` together with the auxiliary
/// integers the constructions need: `r * l2 - s * w1 * w2 = 1`,
/// `u1 * w1 + u2 * r * w2 = 1` and `d = gcd(n, l2)`. `l1` is always 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JoinParams {
    g: u64,
    n: u64,
    w1: u64,
    w2: u64,
    l2: u64,
    r: BigInt,
    s: BigInt,
    d: u64,
    u1: BigInt,
    u2: BigInt,
}

/// Builds a validated [`JoinParams`] with canonical auxiliary integers:
/// `0 <= s < l2` and, when `w1 > 1`, `0 <= u2 < w1`.
pub fn validate(g: i64, n: i64, w1: i64, w2: i64, l2: i64) -> Result<JoinParams> {
    for (name, value) in [("g", g), ("n", n), ("w1", w1), ("w2", w2), ("l2", l2)] {
        if value < 1 {
            return Err(Error::RangeViolation(format!(
                "{name} = {value}, must be at least 1"
            )));
        }
    }
    let (g, n, w1, w2, l2) = (g as u64, n as u64, w1 as u64, w2 as u64, l2 as u64);
    if w1.gcd(&w2) != 1 {
        return Err(Error::GcdViolation(format!(
            "weights w1 = {w1} and w2 = {w2} are not coprime (gcd {})",
            w1.gcd(&w2)
        )));
    }
    let w = BigInt::from(w1) * BigInt::from(w2);
    let l2_big = BigInt::from(l2);
    if !w.gcd(&l2_big).is_one() {
        return Err(Error::GcdViolation(format!(
            "l2 = {l2} shares a factor with w1*w2*l1 = {w} (gcd {})",
            w.gcd(&l2_big)
        )));
    }
    // s = -(w1 w2)^{-1} mod l2, r = (1 + s w1 w2) / l2
    let s = if l2 == 1 {
        BigInt::zero()
    } else {
        let inv = mod_inverse(&w, &l2_big).expect("w1*w2 is a unit mod l2");
        (-inv).mod_floor(&l2_big)
    };
    let r = (BigInt::one() + &s * &w) / &l2_big;
    Ok(JoinParams::assemble(g, n, w1, w2, l2, r, s))
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

impl JoinParams {
    fn assemble(g: u64, n: u64, w1: u64, w2: u64, l2: u64, r: BigInt, s: BigInt) -> Self {
        let (u1, u2) = Self::rho_coefficients(w1, w2, &r);
        JoinParams {
            g,
            n,
            w1,
            w2,
            l2,
            r,
            s,
            d: n.gcd(&l2),
            u1,
            u2,
        }
    }

    /// `(u1, u2)` with `u1 w1 + u2 r w2 = 1`, canonically `0 <= u2 < w1`.
    /// If `w1` and `r w2` are not coprime (only possible for unchecked
    /// auxiliaries) the Bezout coefficients of their gcd are returned.
    fn rho_coefficients(w1: u64, w2: u64, r: &BigInt) -> (BigInt, BigInt) {
        let w1b = BigInt::from(w1);
        let rw2 = r * BigInt::from(w2);
        if w1 == 1 {
            return (BigInt::one(), BigInt::zero());
        }
        match mod_inverse(&rw2, &w1b) {
            Some(u2) => {
                let u1 = (BigInt::one() - &u2 * &rw2) / &w1b;
                (u1, u2)
            }
            None => {
                let e = w1b.extended_gcd(&rw2);
                (e.x, e.y)
            }
        }
    }

    /// The admissible alternative `(r + k w1 w2, s + k l2)`.
    pub fn with_aux_shift(&self, k: i64) -> JoinParams {
        let k = BigInt::from(k);
        let r = &self.r + &k * self.w1w2();
        let s = &self.s + &k * self.l2();
        Self::assemble(self.g, self.n, self.w1, self.w2, self.l2, r, s)
    }

    /// Replaces `(r, s)` without checking `r l2 - s w1 w2 = 1`. Only useful
    /// for negative controls in tests and the self-test fault hooks.
    #[doc(hidden)]
    pub fn with_unchecked_aux(&self, r: BigInt, s: BigInt) -> JoinParams {
        Self::assemble(self.g, self.n, self.w1, self.w2, self.l2, r, s)
    }

    pub fn g(&self) -> u64 {
        self.g
    }

    /// `2g`, the rank of `H^1` of the surface, as a matrix dimension.
    pub fn two_g(&self) -> usize {
        2 * self.g as usize
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn w1(&self) -> u64 {
        self.w1
    }

    pub fn w2(&self) -> u64 {
        self.w2
    }

    pub fn l1(&self) -> u64 {
        1
    }

    pub fn l2(&self) -> BigInt {
        BigInt::from(self.l2)
    }

    pub fn l2_u64(&self) -> u64 {
        self.l2
    }

    pub fn r(&self) -> &BigInt {
        &self.r
    }

    pub fn s(&self) -> &BigInt {
        &self.s
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn u1(&self) -> &BigInt {
        &self.u1
    }

    pub fn u2(&self) -> &BigInt {
        &self.u2
    }

    pub fn n_big(&self) -> BigInt {
        BigInt::from(self.n)
    }

    pub fn w1_big(&self) -> BigInt {
        BigInt::from(self.w1)
    }

    pub fn w2_big(&self) -> BigInt {
        BigInt::from(self.w2)
    }

    pub fn w1w2(&self) -> BigInt {
        self.w1_big() * self.w2_big()
    }

    /// `w` for the given side.
    pub fn weight(&self, side: Side) -> BigInt {
        match side {
            Side::One => self.w1_big(),
            Side::Two => self.w2_big(),
        }
    }

    /// `n * w_i`, the Euler class of the circle bundle `C_i`.
    pub fn euler(&self, side: Side) -> BigInt {
        self.n_big() * self.weight(side)
    }

    /// `s * w2^2`, the twist exponent that recurs throughout.
    pub fn sw2sq(&self) -> BigInt {
        &self.s * self.w2_big() * self.w2_big()
    }

    pub fn sw1sq(&self) -> BigInt {
        &self.s * self.w1_big() * self.w1_big()
    }

    /// `r * l2 - s * w1 * w2`; equal to 1 for validated parameters.
    pub fn aux_identity(&self) -> BigInt {
        &self.r * self.l2() - &self.s * self.w1w2()
    }

    pub fn tuple(&self) -> (u64, u64, u64, u64, u64) {
        (self.g, self.n, self.w1, self.w2, self.l2)
    }
}

impl fmt::Display for JoinParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(g={}, n={}, w1={}, w2={}, l2={})",
            self.g, self.n, self.w1, self.w2, self.l2
        )
    }
}

/// Which handle of the splitting `M = B1 ∪ B2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    One,
    Two,
}

impl Side {
    pub fn index(self) -> u8 {
        match self {
            Side::One => 1,
            Side::Two => 2,
        }
    }
}

/// Blocks carrying clutching data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Block {
    B1,
    B2,
    Intersection,
}

/// A monomial self-map of a 2-torus: output coordinate `i` carries exponent
/// `E[i][j]` on input phase `j`. Composition is left multiplication.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExponentMatrix(IntMatrix);

impl ExponentMatrix {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        ExponentMatrix(IntMatrix::new(2, 2, vec![a, b, c, d]))
    }

    pub fn identity() -> Self {
        ExponentMatrix(IntMatrix::identity(2))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ExponentMatrix) -> ExponentMatrix {
        ExponentMatrix(&self.0 * &inner.0)
    }

    pub fn det(&self) -> BigInt {
        self.0.determinant()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        self.0.get(i, j)
    }
}

impl fmt::Display for ExponentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Exponent matrices of the covering maps `f1`, `f2`, `f12` and the torus
/// gluing `g` with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeegardMaps {
    pub f1: ExponentMatrix,
    pub f2: ExponentMatrix,
    pub f12: ExponentMatrix,
    pub g: ExponentMatrix,
    pub g_inv: ExponentMatrix,
}

pub fn heegard_exponent_matrices(p: &JoinParams) -> HeegardMaps {
    let l2 = p.l2();
    let one = BigInt::one();
    let a = p.r() * (&one - p.s() * p.w1w2());
    let f12 = ExponentMatrix::new(l2.clone(), BigInt::zero(), p.sw2sq(), one.clone());
    let f2 = ExponentMatrix::new(one, p.sw1sq(), BigInt::zero(), l2.clone());
    let g = ExponentMatrix::new(a.clone(), p.sw1sq(), -p.sw2sq(), l2.clone());
    let g_inv = ExponentMatrix::new(l2, -p.sw1sq(), p.sw2sq(), a);
    HeegardMaps {
        f1: f12.clone(),
        f2,
        f12,
        g,
        g_inv,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeegardReport {
    /// `E_g * E_f12 = E_f2`
    pub composition: bool,
    pub det_g_is_one: bool,
    /// `E_g * E_g_inv = I`
    pub inverse: bool,
    /// `det E_f1 = det E_f2 = det E_f12 = l2`
    pub covering_degrees: bool,
}

impl HeegardReport {
    pub fn all_hold(&self) -> bool {
        self.composition && self.det_g_is_one && self.inverse && self.covering_degrees
    }
}

pub fn verify_heegard_identities(p: &JoinParams) -> HeegardReport {
    let h = heegard_exponent_matrices(p);
    let l2 = p.l2();
    HeegardReport {
        composition: h.g.compose(&h.f12) == h.f2,
        det_g_is_one: h.g.det().is_one(),
        inverse: h.g.compose(&h.g_inv) == ExponentMatrix::identity()
            && h.g_inv.compose(&h.g) == ExponentMatrix::identity(),
        covering_degrees: [&h.f1, &h.f2, &h.f12].iter().all(|e| e.det() == l2),
    }
}

/// Exponents of `v/|v|` acting on the two fibre phases in the gluing over
/// `U ∩ V`.
pub fn clutching_exponents(p: &JoinParams, block: Block) -> (BigInt, BigInt) {
    let n = p.n_big();
    let (w1, w2, r) = (p.w1_big(), p.w2_big(), p.r().clone());
    match block {
        Block::B1 | Block::Intersection => (-(&n * &w1), -(&n * &r * &w2)),
        Block::B2 => (-(&n * &r * &w1), -(&n * &w2)),
    }
}

/// Images of `m1`, `m2` under `g_*: H1(S^1 x S^1) -> H1(D^2 x S^1) = Z`.
/// The disc coordinate is contractible, so only the second output row of
/// `E_g` survives.
pub fn g_on_h1(p: &JoinParams) -> (BigInt, BigInt) {
    let eg = heegard_exponent_matrices(p).g;
    (eg.entry(1, 0).clone(), eg.entry(1, 1).clone())
}

/// Coefficients of `g^*(1 x T2')` on `(T1 x 1, 1 x T2)`, computed as the
/// transpose of the homology map.
pub fn g_on_h1_cohomology(p: &JoinParams) -> (BigInt, BigInt) {
    let (a, b) = g_on_h1(p);
    let homology = IntMatrix::new(1, 2, vec![a, b]);
    let pullback = homology.transpose();
    (pullback.get(0, 0).clone(), pullback.get(1, 0).clone())
}

/// Which (co)homology a profile holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Variance {
    Homology,
    Cohomology,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Coefficients {
    Z,
    Q,
    QZ,
}

/// Groups indexed by degree `0..=dim`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Profile<G> {
    pub variance: Variance,
    pub coefficients: Coefficients,
    pub groups: Vec<G>,
}

pub type CohomologyProfile = Profile<FgAbGroup>;

impl<G> Profile<G> {
    pub fn new(variance: Variance, coefficients: Coefficients, groups: Vec<G>) -> Self {
        Profile {
            variance,
            coefficients,
            groups,
        }
    }

    pub fn degree(&self, q: usize) -> &G {
        &self.groups[q]
    }

    pub fn dimension(&self) -> usize {
        self.groups.len().saturating_sub(1)
    }
}

impl Profile<FgAbGroup> {
    pub fn betti(&self) -> Vec<usize> {
        self.groups.iter().map(FgAbGroup::rank).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.groups
            .iter()
            .enumerate()
            .map(|(q, h)| if q % 2 == 0 { h.rank() as i64 } else { -(h.rank() as i64) })
            .sum()
    }
}

/// Cohomology of the circle bundle over `Σ_g` with Euler class `e`.
///
/// `H^2` is assembled from the Mayer–Vietoris cokernel of `[[0, e], [1, -1]]`
/// plus the `Z^{2g}` coming from the surface, and compared against the
/// closed form `Z/e + Z^{2g}`.
pub fn circle_bundle_cohomology(e: i64, g: i64) -> Result<CohomologyProfile> {
    if g < 1 {
        return Err(Error::BadGenus(g));
    }
    if e < 1 {
        return Err(Error::RangeViolation(format!(
            "Euler class {e} must be at least 1"
        )));
    }
    let two_g = 2 * g as usize;
    let mv = IntMatrix::from_i64(2, 2, &[0, e, 1, -1]);
    let h2 = cokernel(&mv).direct_sum(&FgAbGroup::free(two_g));
    let closed = FgAbGroup::new(two_g, [BigInt::from(e)]);
    if h2 != closed {
        return Err(Error::validation(
            "circle bundle H^2",
            format!("assembled {h2} but closed form is {closed}"),
        ));
    }
    Ok(Profile::new(
        Variance::Cohomology,
        Coefficients::Z,
        vec![FgAbGroup::free(1), FgAbGroup::free(two_g), h2, FgAbGroup::free(1)],
    ))
}

/// Cohomology of the 4-manifold `∂B1 = B1 ∩ B2`, a torus bundle over `Σ_g`.
///
/// `H_1` comes from abelianising its fundamental group; `H^1` and the
/// torsion of `H^2` follow from universal coefficients, `b2 = 4g` from
/// `χ = 0`, and `H^3 ≅ H_1` by duality.
pub fn boundary_cohomology(p: &JoinParams) -> Result<CohomologyProfile> {
    let (_, _, b12) = pi1_blocks(p)?;
    let h1 = abelianize(&b12);
    let b1 = h1.rank();
    // 1 - b1 + b2 - b3 + 1 = 0 with b3 = b1
    let b2 = 2 * b1 - 2;
    let groups = vec![
        FgAbGroup::free(1),
        hom_to_z(&h1),
        ext_to_z(&h1).direct_sum(&FgAbGroup::free(b2)),
        h1.clone(),
        FgAbGroup::free(1),
    ];
    let profile = Profile::new(Variance::Cohomology, Coefficients::Z, groups);
    let expected = FgAbGroup::new(2 * p.two_g(), [p.n_big()]);
    if profile.degree(2) != &expected || profile.euler_characteristic() != 0 {
        return Err(Error::validation(
            "boundary cohomology",
            format!("H^2(∂B1) = {} but expected {expected}", profile.degree(2)),
        ));
    }
    Ok(profile)
}

/// The torsion parts of `H1(∂B1) -> H1(B_i)` and the data of the
/// identification `ρ: Z^2/<(n w1, n r w2)> -> Z/n + Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionComparison {
    /// `Z/n -> Z/(n w1)`, `1 -> w1`.
    pub to_b1: PresentedHom,
    /// `Z/n -> Z/(n w2)`, `1 -> w2`.
    pub to_b2: PresentedHom,
    pub u1: BigInt,
    pub u2: BigInt,
    /// `ρ(w1 m1 + r w2 m2)`, which should be the torsion generator `(1, 0)`.
    pub rho_of_torsion_generator: (BigInt, BigInt),
    /// `(1 0) · (w1, r w2)` and `(-s w2^2, l2) · (w1, r w2)`.
    pub evaluations: (BigInt, BigInt),
}

pub fn h1_torsion_comparison(p: &JoinParams) -> Result<TorsionComparison> {
    let n = p.n_big();
    let cyclic_map = |w: BigInt| {
        PresentedHom::new(
            IntMatrix::diagonal(std::slice::from_ref(&n)),
            IntMatrix::diagonal(&[&n * &w]),
            IntMatrix::diagonal(&[w]),
        )
    };
    let to_b1 = cyclic_map(p.w1_big())?;
    let to_b2 = cyclic_map(p.w2_big())?;

    // ρ(α m1 + β m2) = (u1 α + u2 β mod n, -r w2 α + w1 β)
    let (alpha, beta) = (p.w1_big(), p.r() * p.w2_big());
    let rho = (
        (p.u1() * &alpha + p.u2() * &beta).mod_floor(&n),
        -(p.r() * p.w2_big()) * &alpha + p.w1_big() * &beta,
    );
    let (gm1, gm2) = g_on_h1(p);
    let evaluations = (alpha.clone(), gm1 * &alpha + gm2 * &beta);
    Ok(TorsionComparison {
        to_b1,
        to_b2,
        u1: p.u1().clone(),
        u2: p.u2().clone(),
        rho_of_torsion_generator: rho,
        evaluations,
    })
}

/// `H^2(B_i) -> H^2(∂B1)`, split into torsion and torsion-free parts.
///
/// The free target basis is `A_k x T1 x 1, B_k x T1 x 1` (2g classes)
/// followed by `A_k x 1 x T2, B_k x 1 x T2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H2Restriction {
    /// Reduction `Z/(n w_i) -> Z/n`.
    pub torsion: PresentedHom,
    /// `4g x 2g` block matrix on free parts.
    pub free: IntMatrix,
}

pub fn restriction_h2_block_to_boundary(p: &JoinParams, side: Side) -> Result<H2Restriction> {
    let n = p.n_big();
    let torsion = PresentedHom::new(
        IntMatrix::diagonal(&[p.euler(side)]),
        IntMatrix::diagonal(&[n]),
        IntMatrix::identity(1),
    )?;
    let id = IntMatrix::identity(p.two_g());
    let free = match side {
        Side::One => id.vstack(&IntMatrix::zeros(p.two_g(), p.two_g())),
        Side::Two => id.scale(&-p.sw2sq()).vstack(&id.scale(&p.l2())),
    };
    Ok(H2Restriction { torsion, free })
}

/// The pulled-back Euler class of the disc bundle `B_i -> C_i`, as the
/// element `(n, 0)` of `H^2(C_i) = Z/(n w_i) + Z^{2g}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscEuler {
    pub side: Side,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub element: BigInt,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub modulus: BigInt,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub order: BigInt,
}

pub fn disc_bundle_euler(p: &JoinParams, side: Side) -> DiscEuler {
    let modulus = p.euler(side);
    let element = p.n_big().mod_floor(&modulus);
    let order = &modulus / element.gcd(&modulus);
    DiscEuler {
        side,
        element,
        modulus,
        order,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceReport {
    /// `r l2 - s w1 w2 = 1`
    pub aux_identity: bool,
    /// `s^2 w1^2 w2^2 ≡ 1 (mod l2)`
    pub square_mod_l2: bool,
    /// `s^2 w1^2 w2^2 ≡ 1 (mod d)`
    pub square_mod_d: bool,
    /// `gcd(n w2, l2) = gcd(n, l2)`
    pub gcd_collapse: bool,
}

impl CongruenceReport {
    pub fn all_hold(&self) -> bool {
        self.aux_identity && self.square_mod_l2 && self.square_mod_d && self.gcd_collapse
    }
}

pub fn verify_congruences(p: &JoinParams) -> CongruenceReport {
    let sw = p.s() * p.w1w2();
    let sq = &sw * &sw;
    let l2 = p.l2();
    let d = BigInt::from(p.d());
    let one_mod = |m: &BigInt| (&sq - 1u32).mod_floor(m).is_zero();
    CongruenceReport {
        aux_identity: p.aux_identity().is_one(),
        square_mod_l2: one_mod(&l2),
        square_mod_d: one_mod(&d),
        gcd_collapse: (p.n_big() * p.w2_big()).gcd(&l2) == BigInt::from(p.d()),
    }
}

impl Serialize for JoinParams {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("JoinParams", 11)?;
        st.serialize_field("g", &self.g)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("w1", &self.w1)?;
        st.serialize_field("w2", &self.w2)?;
        st.serialize_field("l1", &1u64)?;
        st.serialize_field("l2", &self.l2)?;
        st.serialize_field("r", &crate::report::BigJson(&self.r))?;
        st.serialize_field("s", &crate::report::BigJson(&self.s))?;
        st.serialize_field("d", &self.d)?;
        st.serialize_field("u1", &crate::report::BigJson(&self.u1))?;
        st.serialize_field("u2", &crate::report::BigJson(&self.u2))?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn p(g: i64, n: i64, w1: i64, w2: i64, l2: i64) -> JoinParams {
        validate(g, n, w1, w2, l2).unwrap()
    }

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    /// Smallest non-negative s with r*l2 - s*w1*w2 = 1 for integral r.
    fn brute_force_s(w1w2: i64, l2: i64) -> (i64, i64) {
        (0..l2)
            .find_map(|s| {
                let num = 1 + s * w1w2;
                (num % l2 == 0).then_some((num / l2, s))
            })
            .unwrap()
    }

    #[test]
    fn validate_examples() {
        let q = p(1, 2, 1, 2, 3);
        assert_eq!((q.r(), q.s(), q.d()), (&b(1), &b(1), 1));
        let q = p(1, 6, 1, 3, 4);
        assert_eq!((q.r(), q.s(), q.d()), (&b(1), &b(1), 2));
        let q = p(1, 1, 1, 1, 1);
        assert_eq!((q.r(), q.s(), q.d()), (&b(1), &b(0), 1));
        assert!(matches!(validate(1, 2, 2, 4, 3), Err(Error::GcdViolation(_))));
    }

    #[test]
    fn validate_rejects() {
        assert!(matches!(validate(0, 1, 1, 1, 1), Err(Error::RangeViolation(_))));
        assert!(matches!(validate(1, -2, 1, 1, 1), Err(Error::RangeViolation(_))));
        assert!(matches!(validate(1, 1, 1, 1, 0), Err(Error::RangeViolation(_))));
        assert!(matches!(validate(1, 1, 2, 3, 4), Err(Error::GcdViolation(_))));
        assert!(matches!(validate(1, 1, 5, 3, 9), Err(Error::GcdViolation(_))));
    }

    #[test]
    fn canonical_aux_matches_brute_force() {
        for w1 in 1..=6i64 {
            for w2 in 1..=6i64 {
                for l2 in 1..=9i64 {
                    let Ok(q) = validate(1, 1, w1, w2, l2) else { continue };
                    let (r, s) = brute_force_s(w1 * w2, l2);
                    assert_eq!((q.r(), q.s()), (&b(r), &b(s)), "w=({w1},{w2}) l2={l2}");
                    assert!((q.u1() * b(w1) + q.u2() * q.r() * b(w2)).is_one());
                    if w1 > 1 {
                        assert!(!q.u2().is_negative() && q.u2() < &b(w1));
                    }
                }
            }
        }
    }

    #[test]
    fn aux_shift_stays_admissible() {
        let q = p(2, 3, 2, 5, 7);
        for k in -2..=2 {
            let shifted = q.with_aux_shift(k);
            assert!(shifted.aux_identity().is_one());
            assert!((shifted.u1() * b(2) + shifted.u2() * shifted.r() * b(5)).is_one());
        }
    }

    #[test]
    fn heegard_matrices_example() {
        let h = heegard_exponent_matrices(&p(1, 2, 1, 2, 3));
        assert_eq!(h.g, ExponentMatrix::new(b(-1), b(1), b(-4), b(3)));
        assert!(h.g.det().is_one());
        assert_eq!(h.g.compose(&h.g_inv), ExponentMatrix::identity());
        assert_eq!(h.f12.det(), b(3));
        let h = heegard_exponent_matrices(&p(1, 5, 2, 3, 1));
        assert_eq!(h.g, ExponentMatrix::identity());
        assert!(verify_heegard_identities(&p(1, 5, 2, 3, 1)).all_hold());
        assert!(verify_heegard_identities(&p(3, 4, 5, 2, 9)).all_hold());
    }

    #[test]
    fn heegard_identities_break_under_bad_aux() {
        let q = p(1, 2, 1, 2, 3);
        let bad = q.with_unchecked_aux(q.r().clone(), q.s() + 1);
        let report = verify_heegard_identities(&bad);
        assert!(!report.composition);
        assert!(!report.det_g_is_one);
    }

    #[test]
    fn clutching() {
        let q = p(1, 2, 1, 2, 3);
        assert_eq!(clutching_exponents(&q, Block::B1), (b(-2), b(-4)));
        assert_eq!(clutching_exponents(&q, Block::B2), (b(-2), b(-4)));
        assert_eq!(
            clutching_exponents(&q, Block::Intersection),
            clutching_exponents(&q, Block::B1)
        );
        let q = p(1, 1, 1, 1, 1);
        assert_eq!(clutching_exponents(&q, Block::B1).0, b(-1));
        let q = p(1, 3, 2, 5, 3);
        assert_eq!(clutching_exponents(&q, Block::B2), (-(b(3) * q.r() * b(2)), b(-15)));
    }

    #[test]
    fn g_on_first_homology() {
        assert_eq!(g_on_h1(&p(1, 2, 1, 2, 3)), (b(-4), b(3)));
        assert_eq!(g_on_h1_cohomology(&p(1, 2, 1, 2, 3)), (b(-4), b(3)));
        assert_eq!(g_on_h1(&p(1, 2, 3, 5, 1)), (b(0), b(1)));
    }

    #[test]
    fn circle_bundles() {
        let h = circle_bundle_cohomology(6, 1).unwrap();
        assert_eq!(h.degree(2), &FgAbGroup::new(2, [b(6)]));
        assert_eq!(h.euler_characteristic(), 0);
        let h = circle_bundle_cohomology(1, 3).unwrap();
        assert_eq!(h.degree(2), &FgAbGroup::free(6));
        assert_eq!(h.degree(1).rank(), h.degree(2).rank());
        let q = p(1, 2, 1, 3, 5);
        let e = q.euler(Side::Two);
        assert_eq!(e, b(6));
        assert!(matches!(circle_bundle_cohomology(0, 1), Err(Error::RangeViolation(_))));
        assert!(matches!(circle_bundle_cohomology(2, 0), Err(Error::BadGenus(0))));
    }

    #[test]
    fn boundary() {
        let h = boundary_cohomology(&p(1, 2, 1, 2, 3)).unwrap();
        assert_eq!(h.degree(2), &FgAbGroup::new(4, [b(2)]));
        assert_eq!(h.degree(1), &FgAbGroup::free(3));
        assert_eq!(h.degree(3), &FgAbGroup::new(3, [b(2)]));
        let h = boundary_cohomology(&p(2, 1, 3, 2, 5)).unwrap();
        assert!(h.groups.iter().all(FgAbGroup::is_free));
        assert_eq!(h.betti(), vec![1, 5, 8, 5, 1]);
    }

    #[test]
    fn torsion_comparison() {
        let t = h1_torsion_comparison(&p(1, 2, 3, 1, 5)).unwrap();
        assert!(t.to_b1.is_injective());
        assert_eq!(t.to_b1.target(), FgAbGroup::cyclic(6u32));
        let q = p(1, 2, 1, 2, 3);
        let t = h1_torsion_comparison(&q).unwrap();
        assert_eq!(t.evaluations, (b(1), b(2)));
        assert_eq!(t.rho_of_torsion_generator, (b(1), b(0)));
        let t = h1_torsion_comparison(&p(1, 4, 1, 3, 5)).unwrap();
        assert_eq!(t.to_b1.map, IntMatrix::identity(1));
    }

    #[test]
    fn h2_restrictions() {
        let q = p(1, 2, 1, 2, 3);
        let r2 = restriction_h2_block_to_boundary(&q, Side::Two).unwrap();
        assert_eq!(r2.free.column(0), vec![b(-4), b(0), b(3), b(0)]);
        assert_eq!(r2.free.column(1), vec![b(0), b(-4), b(0), b(3)]);
        let r1 = restriction_h2_block_to_boundary(&q, Side::One).unwrap();
        assert_eq!(r1.free, IntMatrix::identity(2).vstack(&IntMatrix::zeros(2, 2)));
        let q = p(1, 1, 2, 3, 5);
        let r = restriction_h2_block_to_boundary(&q, Side::One).unwrap();
        assert!(r.torsion.target().is_trivial());
        assert_eq!(r.torsion.source(), FgAbGroup::cyclic(2u32));
    }

    #[test]
    fn disc_euler() {
        let e = disc_bundle_euler(&p(1, 2, 3, 1, 5), Side::One);
        assert_eq!((e.element, e.modulus, e.order), (b(2), b(6), b(3)));
        let e = disc_bundle_euler(&p(1, 2, 1, 3, 5), Side::One);
        assert_eq!(e.order, b(1));
        let e = disc_bundle_euler(&p(1, 3, 1, 2, 5), Side::Two);
        assert_eq!((e.element, e.order), (b(3), b(2)));
    }

    #[test]
    fn congruences() {
        let c = verify_congruences(&p(1, 2, 1, 2, 3));
        assert!(c.all_hold());
        let c = verify_congruences(&p(1, 6, 1, 3, 4));
        assert!(c.all_hold());
        let q = p(1, 6, 1, 3, 4);
        let bad = q.with_unchecked_aux(q.r().clone(), q.s() + 1);
        assert!(!verify_congruences(&bad).aux_identity);
    }
}
