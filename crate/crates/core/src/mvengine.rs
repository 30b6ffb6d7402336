//! Mayer–Vietoris assembly of the (co)homology of `M = B1 ∪ B2` and the
//! cross-validation against the closed forms.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::blocks::{
    boundary_cohomology, circle_bundle_cohomology, disc_bundle_euler, h1_torsion_comparison,
    restriction_h2_block_to_boundary, verify_congruences, verify_heegard_identities, Coefficients,
    CohomologyProfile, JoinParams, Profile, Side, Variance,
};
use crate::error::{Error, Result};
use crate::fgab::{ext_to_z, hom_to_qz, hom_to_z, FgAbGroup, QzGroup};
use crate::linking::{check_symmetry, is_nondegenerate, linking_form_h1h3, linking_form_h2, LinkingForm, QzResidue};
use crate::presentations::{
    abelianize, pi1_blocks, pi1_join, verify_join_elimination, verify_relator_compatibility,
};
use crate::report::{
    degree_map, Check, EulerClasses, InvariantReport, LinkingForms, MvSummary, PresentationStrings,
    Provenance, SCHEMA,
};
use crate::zmatrix::{IntMatrix, PresentedHom};

/// `H^q(B1) + H^q(B2) -> H^q(B1 ∩ B2)`, `(x, y) -> j1*(x) - j2*(y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MvDegreeData {
    pub degree: usize,
    pub hom: PresentedHom,
    pub source: FgAbGroup,
    pub target: FgAbGroup,
    pub kernel: FgAbGroup,
    pub cokernel: FgAbGroup,
}

impl MvDegreeData {
    pub fn map(&self) -> &IntMatrix {
        &self.hom.map
    }

    pub fn source_relations(&self) -> &IntMatrix {
        &self.hom.src_relations
    }

    pub fn target_relations(&self) -> &IntMatrix {
        &self.hom.dst_relations
    }

    fn summary(&self) -> MvSummary {
        MvSummary {
            degree: self.degree,
            source: self.source.clone(),
            target: self.target.clone(),
            map: self.hom.map.clone(),
            kernel: self.kernel.clone(),
            cokernel: self.cokernel.clone(),
        }
    }
}

pub fn mv_degree(p: &JoinParams, q: usize) -> Result<MvDegreeData> {
    let two_g = p.two_g();
    let hom = match q {
        0 => PresentedHom::new(
            IntMatrix::zeros(2, 0),
            IntMatrix::zeros(1, 0),
            IntMatrix::from_i64(1, 2, &[1, -1]),
        )?,
        1 => {
            // H^1(B12) = Z (fibre direction) + Z^{2g} (surface)
            let id = IntMatrix::identity(two_g);
            let surface = id.hstack(&id.neg());
            let map = IntMatrix::zeros(1, 2 * two_g).vstack(&surface);
            PresentedHom::new(
                IntMatrix::zeros(2 * two_g, 0),
                IntMatrix::zeros(1 + two_g, 0),
                map,
            )?
        }
        2 => {
            // ambient source: t1, free1 (2g), t2, free2 (2g)
            // ambient target: t, A_k x T1 (2g), A_k x T2 (2g)
            let r1 = restriction_h2_block_to_boundary(p, Side::One)?;
            let r2 = restriction_h2_block_to_boundary(p, Side::Two)?;
            let src_dim = 2 + 2 * two_g;
            let dst_dim = 1 + 2 * two_g;
            let mut src_rel = IntMatrix::zeros(src_dim, 2);
            src_rel.set(0, 0, p.euler(Side::One));
            src_rel.set(1 + two_g, 1, p.euler(Side::Two));
            let mut dst_rel = IntMatrix::zeros(dst_dim, 1);
            dst_rel.set(0, 0, p.n_big());
            let mut map = IntMatrix::zeros(dst_dim, src_dim);
            map.set(0, 0, r1.torsion.map.get(0, 0).clone());
            map.set(0, 1 + two_g, -r2.torsion.map.get(0, 0).clone());
            for i in 0..2 * two_g {
                for j in 0..two_g {
                    map.set(1 + i, 1 + j, r1.free.get(i, j).clone());
                    map.set(1 + i, 2 + two_g + j, -r2.free.get(i, j).clone());
                }
            }
            PresentedHom::new(src_rel, dst_rel, map)?
        }
        _ => {
            return Err(Error::RangeViolation(format!(
                "Mayer-Vietoris data is only built in degrees 0..=2, not {q}"
            )))
        }
    };
    let (kernel, cokernel) = hom.kernel_cokernel();
    Ok(MvDegreeData {
        degree: q,
        source: hom.source(),
        target: hom.target(),
        kernel,
        cokernel,
        hom,
    })
}

/// Rational Betti numbers `b0..b5`: degrees up to 2 from the rational
/// Mayer–Vietoris ranks, the rest by duality.
pub fn rational_betti(p: &JoinParams) -> Result<[usize; 6]> {
    let mv: Vec<MvDegreeData> = (0..=2).map(|q| mv_degree(p, q)).collect::<Result<_>>()?;
    let b0 = mv[0].kernel.rank();
    let b1 = mv[0].cokernel.rank() + mv[1].kernel.rank();
    let b2 = mv[1].cokernel.rank() + mv[2].kernel.rank();
    let b = [b0, b1, b2, b2, b1, b0];
    let chi: i64 = b
        .iter()
        .enumerate()
        .map(|(q, &x)| if q % 2 == 0 { x as i64 } else { -(x as i64) })
        .sum();
    assert_eq!(chi, 0, "Euler characteristic of a closed 5-manifold");
    Ok(b)
}

/// `H_1(M)` as the abelianised fundamental group.
pub fn first_homology(p: &JoinParams) -> Result<FgAbGroup> {
    let (_, reduced) = pi1_join(p)?;
    Ok(abelianize(&reduced))
}

struct Assembly {
    mv: Vec<MvDegreeData>,
    h1: FgAbGroup,
    cohomology: CohomologyProfile,
}

fn assemble(p: &JoinParams) -> Result<Assembly> {
    let mv: Vec<MvDegreeData> = (0..=2).map(|q| mv_degree(p, q)).collect::<Result<_>>()?;
    let h1 = first_homology(p)?;
    let b = rational_betti(p)?;
    let h0 = mv[0].kernel.clone();
    let h1_co = mv[1].kernel.direct_sum(&mv[0].cokernel);
    // the extension 0 -> Coker^1 -> H^2 -> Ker^2 -> 0 does not split
    let h2 = ext_to_z(&h1).direct_sum(&FgAbGroup::free(mv[1].cokernel.rank() + mv[2].kernel.rank()));
    // the quotient is free, so this one does
    let h3 = mv[2].cokernel.direct_sum(&FgAbGroup::free(b[3]));
    let h4 = h1.clone();
    let h5 = FgAbGroup::free(1);
    Ok(Assembly {
        mv,
        h1,
        cohomology: Profile::new(
            Variance::Cohomology,
            Coefficients::Z,
            vec![h0, h1_co, h2, h3, h4, h5],
        ),
    })
}

fn dual(profile: &CohomologyProfile, variance: Variance) -> CohomologyProfile {
    Profile::new(
        variance,
        profile.coefficients,
        profile.groups.iter().rev().cloned().collect(),
    )
}

pub fn integral_cohomology(p: &JoinParams) -> Result<CohomologyProfile> {
    Ok(assemble(p)?.cohomology)
}

/// `H_q ≅ H^{5-q}`, with `H_1` taken from the fundamental group.
pub fn integral_homology(p: &JoinParams) -> Result<CohomologyProfile> {
    let a = assemble(p)?;
    let mut homology = dual(&a.cohomology, Variance::Homology);
    homology.groups[1] = a.h1;
    Ok(homology)
}

/// `H^q(M; Q/Z) = Hom(H_q(M), Q/Z)`.
pub fn qz_cohomology(p: &JoinParams) -> Result<Profile<QzGroup>> {
    let homology = integral_homology(p)?;
    Ok(qz_from_homology(&homology))
}

fn qz_from_homology(homology: &CohomologyProfile) -> Profile<QzGroup> {
    Profile::new(
        Variance::Cohomology,
        Coefficients::QZ,
        homology.groups.iter().map(hom_to_qz).collect(),
    )
}

/// The closed-form answers, parametrised by `g`, `d = gcd(n, l2)` and `l2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedForm {
    pub g: u64,
    pub d: BigInt,
    pub l2: BigInt,
}

impl ClosedForm {
    pub fn for_params(p: &JoinParams) -> Self {
        ClosedForm {
            g: p.g(),
            d: BigInt::from(p.d()),
            l2: p.l2(),
        }
    }

    fn two_g(&self) -> usize {
        2 * self.g as usize
    }

    fn zd(&self) -> FgAbGroup {
        FgAbGroup::cyclic(self.d.clone())
    }

    fn zl2(&self) -> FgAbGroup {
        FgAbGroup::cyclic(self.l2.clone()).power(self.two_g())
    }

    pub fn cohomology(&self) -> Vec<FgAbGroup> {
        let free = FgAbGroup::free;
        vec![
            free(1),
            free(self.two_g()),
            self.zd().direct_sum(&free(1)),
            self.zl2().direct_sum(&free(1)),
            self.zd().direct_sum(&free(self.two_g())),
            free(1),
        ]
    }

    pub fn homology(&self) -> Vec<FgAbGroup> {
        let free = FgAbGroup::free;
        vec![
            free(1),
            free(self.two_g()).direct_sum(&self.zd()),
            free(1).direct_sum(&self.zl2()),
            free(1).direct_sum(&self.zd()),
            free(self.two_g()),
            free(1),
        ]
    }

    pub fn qz(&self) -> Vec<QzGroup> {
        let trivial = FgAbGroup::trivial;
        vec![
            QzGroup::new(1, trivial()),
            QzGroup::new(self.two_g(), self.zd()),
            QzGroup::new(1, self.zl2()),
            QzGroup::new(1, self.zd()),
            QzGroup::new(self.two_g(), trivial()),
            QzGroup::new(1, trivial()),
        ]
    }

    pub fn betti(&self) -> Vec<usize> {
        let tg = self.two_g();
        vec![1, tg, 1, 1, tg, 1]
    }
}

/// Builds the full report for `p`, comparing against its own closed forms.
pub fn build_report(p: &JoinParams) -> Result<InvariantReport> {
    build_report_with(p, &ClosedForm::for_params(p))
}

/// Like [`build_report`] but comparing against the given closed forms.
/// Failed checks are recorded in the report, not returned as errors.
pub fn build_report_with(p: &JoinParams, closed: &ClosedForm) -> Result<InvariantReport> {
    let a = assemble(p)?;
    let homology = {
        let mut h = dual(&a.cohomology, Variance::Homology);
        h.groups[1] = a.h1.clone();
        h
    };
    let qz = qz_from_homology(&homology);
    let betti = rational_betti(p)?.to_vec();
    let lambda1 = linking_form_h1h3(p);
    let lambda2 = linking_form_h2(p);
    let mut checks = Vec::new();

    let coh = &a.cohomology.groups;
    for (q, expected) in closed.cohomology().iter().enumerate() {
        checks.push(Check::equal(format!("closed form H^{q}"), &coh[q], expected));
    }
    for (q, expected) in closed.homology().iter().enumerate() {
        checks.push(Check::equal(format!("closed form H_{q}"), &homology.groups[q], expected));
    }
    for (q, expected) in closed.qz().iter().enumerate() {
        checks.push(Check::equal(format!("closed form H^{q}(Q/Z)"), &qz.groups[q], expected));
    }
    checks.push(Check::new(
        "rational betti",
        betti == closed.betti() && betti == a.cohomology.betti(),
        format!("{betti:?}"),
    ));
    checks.push(Check::new(
        "euler characteristic",
        a.cohomology.euler_characteristic() == 0,
        a.cohomology.euler_characteristic().to_string(),
    ));
    let duality = (0..=5).all(|q| coh[q] == homology.groups[5 - q]);
    checks.push(Check::new("poincare duality", duality, "H^q = H_{5-q}"));
    let uct = (0..=5).all(|q| {
        let free = hom_to_z(&homology.groups[q]);
        let tors = if q == 0 { FgAbGroup::trivial() } else { ext_to_z(&homology.groups[q - 1]) };
        coh[q] == free.direct_sum(&tors)
    });
    checks.push(Check::new(
        "universal coefficients",
        uct,
        "H^q = Hom(H_q, Z) + Ext(H_{q-1}, Z)",
    ));
    checks.push(Check::equal("H^1 = Hom(H_1, Z)", &a.mv[1].kernel, &hom_to_z(&a.h1)));

    let (coker1, ker2, coker2) = (&a.mv[1].cokernel, &a.mv[2].kernel, &a.mv[2].cokernel);
    checks.push(Check::new(
        "rank H^2 = rank Coker^1 + rank Ker^2",
        coh[2].rank() == coker1.rank() + ker2.rank(),
        format!("{} = {} + {}", coh[2].rank(), coker1.rank(), ker2.rank()),
    ));
    let nw1w2 = p.n_big() * p.w1w2();
    checks.push(Check::equal(
        "Ker^2 cyclic of order n w1 w2",
        ker2,
        &FgAbGroup::cyclic(nw1w2.clone()),
    ));
    let d = BigInt::from(p.d());
    checks.push(Check::new(
        "Z/d injects into Ker^2",
        coh[2].torsion() == FgAbGroup::cyclic(d.clone())
            && nw1w2.is_multiple_of(&d)
            && ker2.contains_cyclic(&d),
        format!("d = {d}, Ker^2 = {ker2}"),
    ));
    checks.push(Check::equal(
        "Coker^2 = (Z/l2)^{2g}",
        coker2,
        &FgAbGroup::cyclic(p.l2()).power(p.two_g()),
    ));
    checks.push(Check::equal("Coker^1 = Z", coker1, &FgAbGroup::free(1)));
    checks.push(rational_h3_bookkeeping(p, &a)?);

    let (join_full, _) = pi1_join(p)?;
    checks.push(Check::equal("H_1 = abelianized pi_1", &abelianize(&join_full), &homology.groups[1]));
    let heegard = verify_heegard_identities(p);
    checks.push(Check::new("heegard identities", heegard.all_hold(), format!("{heegard:?}")));
    let congruences = verify_congruences(p);
    checks.push(Check::new("congruences", congruences.all_hold(), format!("{congruences:?}")));
    let relators = verify_relator_compatibility(p)?;
    checks.push(Check::new("relator compatibility", relators.all_hold(), format!("{relators:?}")));
    checks.push(Check::new("c1 elimination", verify_join_elimination(p)?, "c1 = c2^(-s w2^2)"));
    checks.push(torsion_comparison_check(p)?);
    checks.push(Check::new(
        "boundary H^2",
        boundary_cohomology(p).is_ok(),
        "Z/n + Z^{4g}",
    ));

    checks.push(linking_check("lambda1", &lambda1, 1, &closed.d, &coh[2].torsion()));
    checks.push(linking_check("lambda2", &lambda2, 2, &closed.l2, &homology.groups[2].torsion()));

    let (b1, b2, b12) = pi1_blocks(p)?;
    let (join, reduced) = pi1_join(p)?;
    let names = |s: usize| match s {
        0 => "H^0: kernel of degree-0 restriction",
        1 => "H^1: kernel of degree-1 restriction",
        2 => "H^2: torsion Ext(H_1, Z) from pi_1, rank Coker^1 + Ker^2",
        3 => "H^3: Coker^2 plus free part of rank b3",
        4 => "H^4: duality with H_1 from pi_1",
        _ => "H^5: fundamental class",
    };
    let provenance = (0..=5)
        .map(|q| Provenance {
            degree: q,
            assembled: names(q).to_string(),
            closed_form: closed.cohomology()[q].to_string(),
        })
        .collect();

    Ok(InvariantReport {
        schema: SCHEMA,
        params: p.clone(),
        h_integral: degree_map(coh),
        h_rational_betti: betti,
        h_qz: degree_map(&qz.groups),
        homology: degree_map(&homology.groups),
        presentations: PresentationStrings {
            join: join.to_string(),
            join_reduced: reduced.to_string(),
            b1: b1.to_string(),
            b2: b2.to_string(),
            boundary: b12.to_string(),
        },
        euler_classes: EulerClasses {
            c1: p.euler(Side::One),
            c2: p.euler(Side::Two),
            disc_bundles: vec![disc_bundle_euler(p, Side::One), disc_bundle_euler(p, Side::Two)],
        },
        linking: LinkingForms { lambda1, lambda2 },
        mv: a.mv.iter().map(MvDegreeData::summary).collect(),
        checks,
        provenance,
    })
}

/// Rational Euler balance of the Mayer–Vietoris sequence and the count
/// `b3 = rank Coker^2 + dim Ker^3(Q)` with `0 <= dim Ker^3(Q) <= 2`.
fn rational_h3_bookkeeping(p: &JoinParams, a: &Assembly) -> Result<Check> {
    let g = p.g() as i64;
    let chi_b1 = circle_bundle_cohomology(
        p.euler(Side::One).try_into().map_err(|_| big_euler())?,
        g,
    )?
    .euler_characteristic();
    let chi_b2 = circle_bundle_cohomology(
        p.euler(Side::Two).try_into().map_err(|_| big_euler())?,
        g,
    )?
    .euler_characteristic();
    let chi_b12 = boundary_cohomology(p)?.euler_characteristic();
    let chi_m = a.cohomology.euler_characteristic();
    let balance = chi_m - chi_b1 - chi_b2 + chi_b12;
    let b3 = a.cohomology.groups[3].rank();
    let ker3 = b3 as i64 - a.mv[2].cokernel.rank() as i64;
    Ok(Check::new(
        "rational H^3 bookkeeping",
        balance == 0 && (0..=2).contains(&ker3),
        format!("chi balance {balance}, dim Ker^3(Q) = {ker3}"),
    ))
}

fn big_euler() -> Error {
    Error::RangeViolation("Euler class exceeds 64 bits".into())
}

fn torsion_comparison_check(p: &JoinParams) -> Result<Check> {
    let t = h1_torsion_comparison(p)?;
    let one = BigInt::from(1);
    let ok = t.to_b1.is_injective()
        && t.to_b2.is_injective()
        && t.rho_of_torsion_generator == (one.clone() % p.n_big(), BigInt::from(0))
        && t.evaluations == (p.w1_big(), p.w2_big());
    Ok(Check::new(
        "H_1 torsion comparison",
        ok,
        format!("rho = {:?}, evaluations = {:?}", t.rho_of_torsion_generator, t.evaluations),
    ))
}

fn linking_check(name: &str, f: &LinkingForm, deg: i64, order: &BigInt, group: &FgAbGroup) -> Check {
    let expected_group = f.torsion_group == *group;
    let symmetric = check_symmetry(f, deg, 5);
    let nondeg = is_nondegenerate(f);
    let denominators = f
        .matrix
        .iter()
        .flatten()
        .all(|x: &QzResidue| order.is_multiple_of(x.denominator()));
    Check::new(
        format!("{name} symmetry and nondegeneracy"),
        expected_group && symmetric && nondeg && denominators,
        format!(
            "on {}: group {expected_group}, symmetry {symmetric}, nondegenerate {nondeg}",
            f.torsion_group
        ),
    )
}

/// Full report with every check passing, or the first failed check.
pub fn cross_validate(p: &JoinParams) -> Result<InvariantReport> {
    cross_validate_with(p, &ClosedForm::for_params(p))
}

pub fn cross_validate_with(p: &JoinParams, closed: &ClosedForm) -> Result<InvariantReport> {
    let report = build_report_with(p, closed)?;
    match report.first_failure() {
        Some(c) => Err(Error::validation(&c.name, &c.detail)),
        None => Ok(report),
    }
}
