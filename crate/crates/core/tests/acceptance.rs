//! Acceptance criteria. Runs without the libtest harness so every criterion
//! prints one PASS/FAIL line; exits nonzero if any criterion fails.

use std::collections::{BTreeMap, HashSet};
use std::process::ExitCode;
use std::time::Instant;

use join_invariants::blocks::{
    circle_bundle_cohomology, disc_bundle_euler, h1_torsion_comparison, heegard_exponent_matrices,
    Side,
};
use join_invariants::linking::{is_nondegenerate, linking_form_h1h3, linking_form_h2, QzResidue};
use join_invariants::mvengine::{integral_cohomology, integral_homology, mv_degree, qz_cohomology};
use join_invariants::presentations::{abelianize, pi1_join};
use join_invariants::{build_report, validate, FgAbGroup, IntMatrix, JoinParams, PresentedHom, QzGroup};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

struct Tuple {
    g: i64,
    n: i64,
    w1: i64,
    w2: i64,
    l2: i64,
    p: JoinParams,
}

impl Tuple {
    fn d(&self) -> i64 {
        gcd(self.n, self.l2)
    }
}

/// g in 1..=3, n and l2 in 1..=6, coprime weights up to 5, gcd(l2, w1 w2) = 1.
fn acceptance_grid() -> Vec<Tuple> {
    let mut out = Vec::new();
    for g in 1..=3 {
        for n in 1..=6 {
            for w1 in 1..=5 {
                for w2 in 1..=5 {
                    for l2 in 1..=6 {
                        if gcd(w1, w2) != 1 || gcd(l2, w1 * w2) != 1 {
                            continue;
                        }
                        let p = validate(g, n, w1, w2, l2).expect("admissible tuple");
                        out.push(Tuple { g, n, w1, w2, l2, p });
                    }
                }
            }
        }
    }
    out
}

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

fn free(r: i64) -> FgAbGroup {
    FgAbGroup::free(r as usize)
}

fn cyc(m: i64) -> FgAbGroup {
    FgAbGroup::cyclic(big(m))
}

fn cyc_pow(m: i64, k: i64) -> FgAbGroup {
    FgAbGroup::new(0, std::iter::repeat_n(big(m), k as usize))
}

fn sum(a: FgAbGroup, b: FgAbGroup) -> FgAbGroup {
    a.direct_sum(&b)
}

fn expected_cohomology(t: &Tuple) -> Vec<FgAbGroup> {
    let (tg, d, l2) = (2 * t.g, t.d(), t.l2);
    vec![
        free(1),
        free(tg),
        sum(cyc(d), free(1)),
        sum(cyc_pow(l2, tg), free(1)),
        sum(cyc(d), free(tg)),
        free(1),
    ]
}

fn expected_qz(t: &Tuple) -> Vec<QzGroup> {
    let (tg, d, l2) = (2 * t.g as usize, t.d(), t.l2);
    vec![
        QzGroup::new(1, FgAbGroup::trivial()),
        QzGroup::new(tg, cyc(d)),
        QzGroup::new(1, cyc_pow(l2, tg as i64)),
        QzGroup::new(1, cyc(d)),
        QzGroup::new(tg, FgAbGroup::trivial()),
        QzGroup::new(1, FgAbGroup::trivial()),
    ]
}

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(failures: &[String], ok_detail: String) -> Outcome {
    if failures.is_empty() {
        Outcome {
            passed: true,
            detail: ok_detail,
        }
    } else {
        Outcome {
            passed: false,
            detail: format!("{} failures, first: {}", failures.len(), failures[0]),
        }
    }
}

fn criterion_1(grid: &[Tuple]) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    for t in grid {
        let coh = integral_cohomology(&t.p).unwrap();
        let expected = expected_cohomology(t);
        for (q, (got, want)) in coh.groups.iter().zip(&expected).enumerate() {
            if got != want {
                failures.push(format!("{} H^{q}: {got} vs {want}", t.p));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 60.0 {
        failures.push(format!("runtime {secs:.1}s exceeds 60s"));
    }
    outcome(&failures, format!("{} tuples x 6 degrees exact, {secs:.2}s", grid.len()))
}

fn criterion_2(grid: &[Tuple]) -> Outcome {
    let mut failures = Vec::new();
    for t in grid {
        let expected = sum(free(2 * t.g), cyc(t.d()));
        let (full, reduced) = pi1_join(&t.p).unwrap();
        for (name, pres) in [("full", full), ("reduced", reduced)] {
            let h1 = abelianize(&pres);
            if h1 != expected {
                failures.push(format!("{} {name}: {h1} vs {expected}", t.p));
            }
        }
    }
    outcome(&failures, format!("{} tuples, both presentations", grid.len()))
}

fn criterion_3(grid: &[Tuple]) -> Outcome {
    let mut failures = Vec::new();
    for t in grid {
        let qz = qz_cohomology(&t.p).unwrap();
        if qz.groups != expected_qz(t) {
            failures.push(format!("{}: {:?}", t.p, qz.groups));
        }
    }
    outcome(&failures, format!("{} tuples x 6 rows", grid.len()))
}

type M2 = [[i128; 2]; 2];

fn mul2(a: M2, b: M2) -> M2 {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

fn det2(a: M2) -> i128 {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}

fn as_m2(m: &IntMatrix) -> M2 {
    let e = |i, j| m.get(i, j).to_i128().unwrap();
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn criterion_4(grid: &[Tuple]) -> Outcome {
    let mut failures = Vec::new();
    for t in grid {
        let (r, s) = (t.p.r().to_i128().unwrap(), t.p.s().to_i128().unwrap());
        let (w1, w2, l2) = (t.w1 as i128, t.w2 as i128, t.l2 as i128);
        if r * l2 - s * w1 * w2 != 1 {
            failures.push(format!("{}: aux identity", t.p));
            continue;
        }
        let eg = [[r * (1 - s * w1 * w2), s * w1 * w1], [-s * w2 * w2, l2]];
        let ef12 = [[l2, 0], [s * w2 * w2, 1]];
        let ef2 = [[1, s * w1 * w1], [0, l2]];
        let h = heegard_exponent_matrices(&t.p);
        let agree = as_m2(h.g.matrix()) == eg
            && as_m2(h.f12.matrix()) == ef12
            && as_m2(h.f1.matrix()) == ef12
            && as_m2(h.f2.matrix()) == ef2;
        let ok = agree
            && mul2(eg, ef12) == ef2
            && det2(eg) == 1
            && det2(ef12) == l2
            && det2(ef2) == l2;
        if !ok {
            failures.push(format!("{}", t.p));
        }
    }
    outcome(&failures, format!("{} tuples", grid.len()))
}

fn criterion_5(grid: &[Tuple]) -> Outcome {
    let mut failures = Vec::new();
    for t in grid {
        for (side, w) in [(Side::One, t.w1), (Side::Two, t.w2)] {
            let e = t.n * w;
            let h2 = circle_bundle_cohomology(e, t.g).unwrap().groups[2].clone();
            let expected = sum(cyc(e), free(2 * t.g));
            if h2 != expected {
                failures.push(format!("{} side {side:?}: H^2 {h2}", t.p));
            }
            let disc = disc_bundle_euler(&t.p, side);
            if disc.element != big(t.n % e) || disc.modulus != big(e) || disc.order != big(w) {
                failures.push(format!("{} side {side:?}: Euler element {disc:?}", t.p));
            }
        }
    }
    outcome(&failures, format!("{} tuples x 2 blocks", grid.len()))
}

/// Kernel of `x -> a x` from `Z/n` to `Z/m`, by listing `Z/n`.
fn enumerate_kernel_size(n: i64, a: i64, m: i64) -> i64 {
    (0..n).filter(|x| (x * a).rem_euclid(m) == 0).count() as i64
}

fn criterion_6(grid: &[Tuple]) -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for t in grid {
        let tc = h1_torsion_comparison(&t.p).unwrap();
        for (hom, w) in [(&tc.to_b1, t.w1), (&tc.to_b2, t.w2)] {
            if t.n * w > 10_000 {
                continue;
            }
            let a = hom.map.get(0, 0).to_i64().unwrap();
            let by_enumeration = enumerate_kernel_size(t.n, a, t.n * w) == 1;
            if a != w || !by_enumeration || !hom.is_injective() {
                failures.push(format!("{} Z/{} -> Z/{}", t.p, t.n, t.n * w));
            }
            checked += 1;
        }
    }
    outcome(&failures, format!("{checked} maps injective by enumeration"))
}

fn symplectic(i: usize, j: usize) -> i64 {
    if i / 2 != j / 2 {
        0
    } else if i.is_multiple_of(2) && j == i + 1 {
        1
    } else if i % 2 == 1 && i == j + 1 {
        -1
    } else {
        0
    }
}

/// Nondegeneracy of `(x, y) -> I(x, y)/l2` on `(Z/l2)^{2g}` by listing
/// every nonzero `x` and testing it against the basis.
fn skew_form_nondegenerate_by_enumeration(g: i64, l2: i64) -> bool {
    let k = 2 * g as usize;
    let total = (l2 as u64).pow(k as u32);
    (1..total).all(|mut code| {
        let mut x = vec![0i64; k];
        for xi in x.iter_mut() {
            *xi = (code % l2 as u64) as i64;
            code /= l2 as u64;
        }
        (0..k).any(|j| (0..k).map(|i| x[i] * symplectic(i, j)).sum::<i64>().rem_euclid(l2) != 0)
    })
}

fn criterion_7(grid: &[Tuple]) -> Outcome {
    let mut failures = Vec::new();
    let mut enumerated: BTreeMap<(i64, i64), bool> = BTreeMap::new();
    for t in grid {
        let l2form = linking_form_h2(&t.p);
        let k = if t.l2 == 1 { 0 } else { 2 * t.g as usize };
        let mut ok = l2form.dimension() == k && l2form.torsion_group == cyc_pow(t.l2, k as i64);
        for i in 0..l2form.dimension().min(k) {
            for j in 0..k {
                ok &= l2form.matrix[i][j] == QzResidue::new(symplectic(i, j), t.l2);
                ok &= l2form.matrix[i][j] == l2form.matrix[j][i].neg();
            }
        }
        if t.l2 > 1 {
            let brute = *enumerated
                .entry((t.g, t.l2))
                .or_insert_with(|| skew_form_nondegenerate_by_enumeration(t.g, t.l2));
            ok &= brute && is_nondegenerate(&l2form);
        }
        if !ok {
            failures.push(format!("{} lambda2", t.p));
        }

        let d = t.d();
        let l1 = linking_form_h1h3(&t.p);
        let ok = if d == 1 {
            l1.dimension() == 0
        } else {
            l1.matrix == vec![vec![QzResidue::new(1, d)]]
                && l1.torsion_group == cyc(d)
                && is_nondegenerate(&l1)
                && (1..d).all(|a| (1..d).any(|b| (a * b) % d != 0))
        };
        if !ok {
            failures.push(format!("{} lambda1", t.p));
        }
    }
    outcome(
        &failures,
        format!("{} tuples, {} (g, l2) forms enumerated", grid.len(), enumerated.len()),
    )
}

fn criterion_8(grid: &[Tuple]) -> Outcome {
    let stride = (grid.len() / 30).max(1);
    let sample: Vec<&Tuple> = grid.iter().step_by(stride).take(30).collect();
    let mut failures = Vec::new();
    for t in &sample {
        let base = build_report(&t.p).unwrap();
        for k in [-2, -1, 1, 2, 3] {
            let q = t.p.with_aux_shift(k);
            assert_ne!(q.s(), t.p.s());
            let shifted = build_report(&q).unwrap();
            if shifted.final_invariants() != base.final_invariants() || !shifted.passed() {
                failures.push(format!("{} shift {k}", t.p));
            }
        }
    }
    if sample.len() < 30 {
        failures.push(format!("only {} tuples sampled", sample.len()));
    }
    outcome(&failures, format!("{} tuples x 5 representatives", sample.len()))
}

/// A finite group `⊕ Z/e_i` listed as all coefficient vectors in the box.
fn box_elements(orders: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for &e in orders {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..e).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn reduce(v: &[i64], orders: &[i64]) -> Vec<i64> {
    v.iter().zip(orders).map(|(x, e)| x.rem_euclid(*e)).collect()
}

fn divisors(n: i64) -> Vec<i64> {
    (1..=n).filter(|m| n % m == 0).collect()
}

/// `|{x in G : m x = 0}|` for every divisor `m` of `|G|`; these counts
/// determine a finite abelian group up to isomorphism.
fn torsion_counts_of_subgroup(elements: &HashSet<Vec<i64>>, orders: &[i64], ms: &[i64]) -> Vec<usize> {
    ms.iter()
        .map(|&m| {
            elements
                .iter()
                .filter(|x| reduce(&x.iter().map(|v| v * m).collect::<Vec<_>>(), orders).iter().all(|&c| c == 0))
                .count()
        })
        .collect()
}

fn torsion_counts_of_group(g: &FgAbGroup, ms: &[i64]) -> Vec<usize> {
    ms.iter()
        .map(|&m| {
            g.invariant_factors()
                .iter()
                .map(|e| gcd(m, e.to_i64().unwrap()) as usize)
                .product()
        })
        .collect()
}

/// Kernel and cokernel of `x -> M x` between `⊕ Z/a_j` and `⊕ Z/b_i` by
/// listing elements, as torsion-count profiles.
fn enumerate_hom(a: &[i64], b: &[i64], m: &[Vec<i64>]) -> (Vec<usize>, Vec<usize>, usize, usize) {
    let apply = |x: &[i64]| -> Vec<i64> {
        let y: Vec<i64> = (0..b.len()).map(|i| (0..a.len()).map(|j| m[i][j] * x[j]).sum()).collect();
        reduce(&y, b)
    };
    let src = box_elements(a);
    let kernel: HashSet<Vec<i64>> = src.iter().filter(|x| apply(x).iter().all(|&c| c == 0)).cloned().collect();
    let image: HashSet<Vec<i64>> = src.iter().map(|x| apply(x)).collect();
    let order_a: i64 = a.iter().product();
    let order_b: i64 = b.iter().product();
    let kernel_counts = torsion_counts_of_subgroup(&kernel, a, &divisors(order_a));
    // m-torsion of G/H: cosets x + H with m x in H
    let dst = box_elements(b);
    let coker_counts = divisors(order_b)
        .into_iter()
        .map(|mm| {
            dst.iter()
                .filter(|x| image.contains(&reduce(&x.iter().map(|v| v * mm).collect::<Vec<_>>(), b)))
                .count()
                / image.len()
        })
        .collect();
    (kernel_counts, coker_counts, kernel.len(), dst.len() / image.len())
}

fn check_against_enumeration(
    hom: &PresentedHom,
    a: &[i64],
    b: &[i64],
    m: &[Vec<i64>],
) -> Result<(), String> {
    let (kc, cc, ko, co) = enumerate_hom(a, b, m);
    let (k, c) = hom.kernel_cokernel();
    let (da, db) = (divisors(a.iter().product()), divisors(b.iter().product()));
    if !k.is_finite() || !c.is_finite() {
        return Err(format!("infinite kernel or cokernel {k}, {c}"));
    }
    if k.order().unwrap() != big(ko as i64) || torsion_counts_of_group(&k, &da) != kc {
        return Err(format!("kernel {k} disagrees with enumeration (order {ko})"));
    }
    if c.order().unwrap() != big(co as i64) || torsion_counts_of_group(&c, &db) != cc {
        return Err(format!("cokernel {c} disagrees with enumeration (order {co})"));
    }
    Ok(())
}

fn mat(rows: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows(rows)
}

/// Random unimodular `k x k` matrix and its inverse from elementary moves.
fn unimodular(k: usize, moves: &[(usize, usize, i64)]) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let mut u: Vec<Vec<i64>> = (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect();
    let mut inv = u.clone();
    for &(i, j, c) in moves {
        let (i, j) = (i % k, j % k);
        if i == j {
            continue;
        }
        // u <- E u with E = I + c e_ij; inv <- inv E^{-1}
        let row_j = u[j].clone();
        for (x, y) in u[i].iter_mut().zip(row_j) {
            *x += c * y;
        }
        for row in inv.iter_mut() {
            row[j] -= c * row[i];
        }
    }
    (u, inv)
}

fn matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let (r, k, c) = (a.len(), b.len(), b.first().map_or(0, Vec::len));
    (0..r).map(|i| (0..c).map(|j| (0..k).map(|t| a[i][t] * b[t][j]).sum()).collect()).collect()
}

fn diag(orders: &[i64]) -> Vec<Vec<i64>> {
    let k = orders.len();
    (0..k).map(|i| (0..k).map(|j| if i == j { orders[i] } else { 0 }).collect()).collect()
}

type Moves = Vec<(usize, usize, i64)>;

/// Source orders, target orders, raw map entries, basis changes.
fn random_instance() -> impl Strategy<Value = (Vec<i64>, Vec<i64>, Vec<i64>, Moves, Moves)> {
    (
        proptest::collection::vec(1i64..=12, 1..=3),
        proptest::collection::vec(1i64..=12, 1..=3),
    )
        .prop_filter("orders at most 10^4", |(a, b)| {
            a.iter().product::<i64>() <= 10_000 && b.iter().product::<i64>() <= 10_000
        })
        .prop_flat_map(|(a, b)| {
            let cells = a.len() * b.len();
            (
                Just(a),
                Just(b),
                proptest::collection::vec(-6i64..=6, cells),
                proptest::collection::vec((0usize..3, 0usize..3, -2i64..=2), 0..5),
                proptest::collection::vec((0usize..3, 0usize..3, -2i64..=2), 0..5),
            )
        })
}

fn criterion_9(grid: &[Tuple]) -> Outcome {
    let mut failures = Vec::new();
    let mut instances = 0usize;

    let mut runner = TestRunner::new(Config {
        cases: 256,
        failure_persistence: None,
        ..Config::default()
    });
    let random_failures = std::cell::RefCell::new(Vec::new());
    let run = runner.run(&random_instance(), |(a, b, raw, src_moves, dst_moves)| {
        // map entries chosen so that relations go to relations
        let m: Vec<Vec<i64>> = (0..b.len())
            .map(|i| {
                (0..a.len())
                    .map(|j| raw[i * a.len() + j] * (b[i] / gcd(a[j], b[i])))
                    .collect()
            })
            .collect();
        let (u, u_inv) = unimodular(a.len(), &src_moves);
        let (v, _) = unimodular(b.len(), &dst_moves);
        // change of basis x' = u x on the source and y' = v y on the target
        let src_rel = matmul(&u, &diag(&a));
        let dst_rel = matmul(&v, &diag(&b));
        let map = matmul(&matmul(&v, &m), &u_inv);
        let hom = PresentedHom::new(mat(&src_rel), mat(&dst_rel), mat(&map))
            .map_err(|e| TestCaseError::fail(e.to_string()))?;
        if let Err(e) = check_against_enumeration(&hom, &a, &b, &m) {
            random_failures.borrow_mut().push(format!("{a:?} -> {b:?} by {m:?}: {e}"));
        }
        Ok(())
    });
    if let Err(e) = run {
        failures.push(format!("generator: {e}"));
    }
    instances += 256;
    failures.extend(random_failures.into_inner());

    // negative control: the oracle must notice a wrong map
    let doubled = PresentedHom::new(mat(&[vec![4]]), mat(&[vec![4]]), mat(&[vec![2]])).unwrap();
    if check_against_enumeration(&doubled, &[4], &[4], &[vec![1]]).is_ok() {
        failures.push("oracle accepted x -> 2x as the identity on Z/4".to_string());
    }

    // the finite maps that occur in the pipeline
    for t in grid {
        let (n, nw1, nw2) = (t.n, t.n * t.w1, t.n * t.w2);
        if nw1 * nw2 <= 10_000 {
            let mv = mv_degree(&t.p, 2).unwrap();
            let cols = [0, 1 + 2 * t.g as usize];
            let torsion_map: Vec<i64> = cols.iter().map(|&c| mv.map().get(0, c).to_i64().unwrap()).collect();
            let hom = PresentedHom::new(
                IntMatrix::diagonal(&[big(nw1), big(nw2)]),
                IntMatrix::diagonal(&[big(n)]),
                mat(std::slice::from_ref(&torsion_map)),
            )
            .unwrap();
            if let Err(e) = check_against_enumeration(&hom, &[nw1, nw2], &[n], &[torsion_map]) {
                failures.push(format!("{} degree-2 torsion map: {e}", t.p));
            }
            instances += 1;
        }
        let tc = h1_torsion_comparison(&t.p).unwrap();
        for (hom, w) in [(&tc.to_b1, t.w1), (&tc.to_b2, t.w2)] {
            let a = hom.map.get(0, 0).to_i64().unwrap();
            if let Err(e) = check_against_enumeration(hom, &[n], &[n * w], &[vec![a]]) {
                failures.push(format!("{} torsion comparison: {e}", t.p));
            }
            instances += 1;
        }
    }
    if instances < 200 {
        failures.push(format!("only {instances} instances"));
    }
    outcome(&failures, format!("{instances} maps (256 randomized, rest from the pipeline)"))
}

fn criterion_10(grid: &[Tuple]) -> Outcome {
    let mut failures = Vec::new();
    for t in grid {
        let coh = integral_cohomology(&t.p).unwrap();
        let hom = integral_homology(&t.p).unwrap();
        let chi: i64 = coh
            .groups
            .iter()
            .enumerate()
            .map(|(q, h)| if q % 2 == 0 { h.rank() as i64 } else { -(h.rank() as i64) })
            .sum();
        if chi != 0 {
            failures.push(format!("{} chi = {chi}", t.p));
        }
        for q in 0..=5 {
            if coh.groups[q] != hom.groups[5 - q] {
                failures.push(format!("{} duality H^{q} vs H_{}", t.p, 5 - q));
            }
        }
        let mv2 = mv_degree(&t.p, 2).unwrap();
        let order = t.n * t.w1 * t.w2;
        let d = t.d();
        if mv2.kernel != cyc(order) {
            failures.push(format!("{} Ker^2 = {}", t.p, mv2.kernel));
        }
        if order % d != 0 || !mv2.kernel.contains_cyclic(&big(d)) || coh.groups[2].torsion() != cyc(d) {
            failures.push(format!("{} Z/{d} does not inject into Ker^2", t.p));
        }
        if mv2.cokernel != cyc_pow(t.l2, 2 * t.g) {
            failures.push(format!("{} Coker^2 = {}", t.p, mv2.cokernel));
        }
    }
    outcome(&failures, format!("{} tuples", grid.len()))
}

fn main() -> ExitCode {
    let grid = acceptance_grid();
    println!("acceptance grid: {} admissible tuples", grid.len());
    type Criterion = fn(&[Tuple]) -> Outcome;
    let criteria: [(&str, Criterion); 10] = [
        ("closed-form agreement of H^*(M; Z)", criterion_1),
        ("H_1 from pi_1 = Z^{2g} + Z/d", criterion_2),
        ("Q/Z cohomology table", criterion_3),
        ("Heegard identities", criterion_4),
        ("building blocks and disc-bundle Euler classes", criterion_5),
        ("torsion comparison maps injective", criterion_6),
        ("linking forms", criterion_7),
        ("choice invariance of (r, s)", criterion_8),
        ("kernel/cokernel oracle equivalence", criterion_9),
        ("consistency suite", criterion_10),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run(&grid);
        all &= o.passed;
        let tag = if o.passed { "PASS" } else { "FAIL" };
        println!("criterion {:>2} [{tag}] {name}: {}", i + 1, o.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
