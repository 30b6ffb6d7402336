//! Finite group presentations of the fundamental groups involved, the
//! Seifert–van Kampen maps between them, and abelianisation.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::blocks::JoinParams;
use crate::error::{Error, Result};
use crate::fgab::FgAbGroup;
use crate::zmatrix::{cokernel, IntMatrix};

/// A freely reduced word: adjacent letters never share a generator and no
/// exponent is zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<(usize, BigInt)>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn generator(index: usize) -> Self {
        Self::power_of(index, BigInt::one())
    }

    pub fn power_of(index: usize, exponent: impl Into<BigInt>) -> Self {
        Word::from_letters([(index, exponent.into())])
    }

    pub fn from_letters(letters: impl IntoIterator<Item = (usize, BigInt)>) -> Self {
        let mut w = Word::identity();
        for (g, e) in letters {
            w.push(g, e);
        }
        w
    }

    fn push(&mut self, g: usize, e: BigInt) {
        if e.is_zero() {
            return;
        }
        match self.letters.last_mut() {
            Some((last, exp)) if *last == g => {
                *exp += e;
                if exp.is_zero() {
                    self.letters.pop();
                }
            }
            _ => self.letters.push((g, e)),
        }
    }

    pub fn letters(&self) -> &[(usize, BigInt)] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for (g, e) in &other.letters {
            w.push(*g, e.clone());
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|(g, e)| (*g, -e)).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(Word::identity(), |acc, _| acc.mul(&base))
    }

    /// `[x, y] = x y x^-1 y^-1`.
    pub fn commutator(x: &Word, y: &Word) -> Word {
        x.mul(y).mul(&x.inverse()).mul(&y.inverse())
    }

    /// Replace generator `i` by `images[i]`.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out = Word::identity();
        for (g, e) in &self.letters {
            let image = &images[*g];
            // Powers of a single-generator image stay compact.
            if let [(h, f)] = image.letters.as_slice() {
                out.push(*h, f * e);
                continue;
            }
            let base = if e.is_negative() { image.inverse() } else { image.clone() };
            let mut k = e.abs();
            while !k.is_zero() {
                out = out.mul(&base);
                k -= 1;
            }
        }
        out
    }

    /// Exponent sum of each generator.
    pub fn exponent_sums(&self, num_generators: usize) -> Vec<BigInt> {
        let mut sums = vec![BigInt::zero(); num_generators];
        for (g, e) in &self.letters {
            sums[*g] += e;
        }
        sums
    }

    /// Normal form modulo the centrality of the listed generators: their
    /// letters are removed and re-appended, with summed exponents, at the end
    /// in index order.
    pub fn central_normal_form(&self, central: &[usize]) -> Word {
        let mut core = Word::identity();
        let mut sums = vec![BigInt::zero(); central.len()];
        for (g, e) in &self.letters {
            match central.iter().position(|c| c == g) {
                Some(k) => sums[k] += e,
                None => core.push(*g, e.clone()),
            }
        }
        let mut order: Vec<usize> = (0..central.len()).collect();
        order.sort_by_key(|&k| central[k]);
        for k in order {
            core.push(central[k], sums[k].clone());
        }
        core
    }

    fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|(g, _)| *g).max()
    }

    /// Renders with generator names, folding `x y x^-1 y^-1` into `[x,y]`.
    pub fn render(&self, names: &[String]) -> String {
        if self.letters.is_empty() {
            return "e".to_string();
        }
        let mut parts = Vec::new();
        let l = &self.letters;
        let mut i = 0;
        while i < l.len() {
            if i + 3 < l.len() {
                let (x, y) = (l[i].0, l[i + 1].0);
                let unit = |k: usize, sign: i32| l[k].1 == BigInt::from(sign);
                if l[i + 2].0 == x && l[i + 3].0 == y && unit(i, 1) && unit(i + 1, 1) && unit(i + 2, -1) && unit(i + 3, -1)
                {
                    parts.push(format!("[{},{}]", names[x], names[y]));
                    i += 4;
                    continue;
                }
            }
            let (g, e) = &l[i];
            if e.is_one() {
                parts.push(names[*g].clone());
            } else {
                parts.push(format!("{}^{}", names[*g], e));
            }
            i += 1;
        }
        parts.join("")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presentation {
    generator_names: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    /// Panics if a relator mentions a generator out of range.
    pub fn new(generator_names: Vec<String>, relators: Vec<Word>) -> Self {
        for r in &relators {
            if let Some(g) = r.max_generator() {
                assert!(g < generator_names.len(), "relator uses generator {g} out of range");
            }
        }
        Presentation {
            generator_names,
            relators,
        }
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn num_generators(&self) -> usize {
        self.generator_names.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generator_names.iter().position(|g| g == name)
    }

    /// Generators × relators matrix of exponent sums.
    pub fn exponent_matrix(&self) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> = self
            .relators
            .iter()
            .map(|r| r.exponent_sums(self.num_generators()))
            .collect();
        IntMatrix::from_fn(self.num_generators(), cols.len(), |i, j| cols[j][i].clone())
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|r| r.render(&self.generator_names))
            .collect();
        write!(f, "⟨{} | {}⟩", self.generator_names.join(", "), rels.join(", "))
    }
}

/// A homomorphism given by the image of each source generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    pub source: Presentation,
    pub target: Presentation,
    pub images: Vec<Word>,
}

impl GroupHom {
    pub fn new(source: Presentation, target: Presentation, images: Vec<Word>) -> Self {
        assert_eq!(images.len(), source.num_generators(), "one image per source generator");
        GroupHom {
            source,
            target,
            images,
        }
    }

    pub fn apply(&self, w: &Word) -> Word {
        w.substitute(&self.images)
    }

    /// The induced map on abelianisations, on the ambient free groups:
    /// column `j` is the exponent-sum vector of the image of generator `j`.
    pub fn abelianized(&self) -> IntMatrix {
        let k = self.target.num_generators();
        let cols: Vec<Vec<BigInt>> = self.images.iter().map(|w| w.exponent_sums(k)).collect();
        IntMatrix::from_fn(k, cols.len(), |i, j| cols[j][i].clone())
    }
}

fn surface_names(g: u64) -> Vec<String> {
    (1..=g).flat_map(|i| [format!("a{i}"), format!("b{i}")]).collect()
}

/// `∏ [a_i, b_i]` over the first `2g` generators.
fn surface_relator(g: usize) -> Word {
    (0..g).fold(Word::identity(), |acc, i| {
        acc.mul(&Word::commutator(&Word::generator(2 * i), &Word::generator(2 * i + 1)))
    })
}

/// `[a_i, c], [b_i, c]` for each surface generator, in order.
fn centrality_relators(g: usize, c: usize) -> Vec<Word> {
    (0..2 * g)
        .map(|i| Word::commutator(&Word::generator(i), &Word::generator(c)))
        .collect()
}

fn check_genus(g: i64) -> Result<usize> {
    if g < 1 {
        Err(Error::BadGenus(g))
    } else {
        Ok(g as usize)
    }
}

/// `π1` of the circle bundle over `Σ_g` with Euler class `e`:
/// `⟨a_i, b_i, c | [a_i,c], [b_i,c], ∏[a_i,b_i] c^e⟩`.
pub fn pi1_circle_bundle(g: i64, e: impl Into<BigInt>) -> Result<Presentation> {
    circle_bundle_named(g, e.into(), "c")
}

fn circle_bundle_named(g: i64, e: BigInt, fibre: &str) -> Result<Presentation> {
    let gu = check_genus(g)?;
    let mut names = surface_names(g as u64);
    names.push(fibre.to_string());
    let c = 2 * gu;
    let mut relators = centrality_relators(gu, c);
    relators.push(surface_relator(gu).mul(&Word::power_of(c, e)));
    Ok(Presentation::new(names, relators))
}

/// Presentations of `π1(B1)`, `π1(B2)` and `π1(B1 ∩ B2)`.
pub fn pi1_blocks(p: &JoinParams) -> Result<(Presentation, Presentation, Presentation)> {
    let g = p.g() as i64;
    let b1 = circle_bundle_named(g, p.n_big() * p.w1_big(), "c1")?;
    let b2 = circle_bundle_named(g, p.n_big() * p.w2_big(), "c2")?;

    let gu = p.g() as usize;
    let (m1, m2) = (2 * gu, 2 * gu + 1);
    let mut names = surface_names(p.g());
    names.extend(["m1".to_string(), "m2".to_string()]);
    let mut relators = Vec::new();
    for i in 0..2 * gu {
        relators.push(Word::commutator(&Word::generator(i), &Word::generator(m1)));
    }
    for i in 0..2 * gu {
        relators.push(Word::commutator(&Word::generator(i), &Word::generator(m2)));
    }
    relators.push(Word::commutator(&Word::generator(m1), &Word::generator(m2)));
    relators.push(
        surface_relator(gu)
            .mul(&Word::power_of(m1, p.n_big() * p.w1_big()))
            .mul(&Word::power_of(m2, p.n_big() * p.r() * p.w2_big())),
    );
    Ok((b1, b2, Presentation::new(names, relators)))
}

/// Both presentations of `π1(M)`: with `c1, c2`, and after eliminating
/// `c1 = c2^(-s w2^2)`.
pub fn pi1_join(p: &JoinParams) -> Result<(Presentation, Presentation)> {
    let gu = check_genus(p.g() as i64)?;
    let nw2 = p.n_big() * p.w2_big();

    let (c1, c2) = (2 * gu, 2 * gu + 1);
    let mut names = surface_names(p.g());
    names.extend(["c1".to_string(), "c2".to_string()]);
    let mut relators = Vec::new();
    for i in 0..2 * gu {
        for c in [c1, c2] {
            relators.push(Word::commutator(&Word::generator(i), &Word::generator(c)));
        }
    }
    relators.push(surface_relator(gu).mul(&Word::power_of(c2, nw2.clone())));
    relators.push(Word::generator(c1).mul(&Word::power_of(c2, p.sw2sq())));
    relators.push(Word::power_of(c2, p.l2()));
    let full = Presentation::new(names, relators);

    let c = 2 * gu;
    let mut names = surface_names(p.g());
    names.push("c2".to_string());
    let mut relators = centrality_relators(gu, c);
    relators.push(surface_relator(gu).mul(&Word::power_of(c, nw2)));
    relators.push(Word::power_of(c, p.l2()));
    let reduced = Presentation::new(names, relators);
    Ok((full, reduced))
}

/// Certifies the elimination of `c1`: under `c1 -> c2^(-s w2^2)` (other
/// generators fixed) every relator of the full presentation becomes, modulo
/// centrality of `c2`, either trivial or a relator of the reduced one.
pub fn verify_join_elimination(p: &JoinParams) -> Result<bool> {
    let (full, reduced) = pi1_join(p)?;
    let gu = p.g() as usize;
    let c = 2 * gu;
    let mut images: Vec<Word> = (0..2 * gu).map(Word::generator).collect();
    images.push(Word::power_of(c, -p.sw2sq()));
    images.push(Word::generator(c));
    let targets: Vec<Word> = reduced
        .relators()
        .iter()
        .map(|r| r.central_normal_form(&[c]))
        .collect();
    let ok = full.relators().iter().all(|r| {
        let img = r.substitute(&images).central_normal_form(&[c]);
        img.is_identity() || targets.contains(&img)
    });
    Ok(ok && abelianize(&full) == abelianize(&reduced))
}

/// The inclusion-induced maps `π1(B1 ∩ B2) -> π1(B1)` and `-> π1(B2)`.
pub fn svk_maps(p: &JoinParams) -> Result<(GroupHom, GroupHom)> {
    let (b1, b2, b12) = pi1_blocks(p)?;
    let gu = p.g() as usize;
    let c = 2 * gu;
    let surface: Vec<Word> = (0..2 * gu).map(Word::generator).collect();

    let mut to_b1 = surface.clone();
    to_b1.push(Word::generator(c));
    to_b1.push(Word::identity());

    let mut to_b2 = surface;
    to_b2.push(Word::power_of(c, -p.sw2sq()));
    to_b2.push(Word::power_of(c, p.l2()));

    Ok((
        GroupHom::new(b12.clone(), b1, to_b1),
        GroupHom::new(b12, b2, to_b2),
    ))
}

/// Whether the surface relator of `π1(B1 ∩ B2)` maps to the surface relator
/// of each block group, modulo centrality of the fibre generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct RelatorReport {
    pub to_b1: bool,
    pub to_b2: bool,
}

impl RelatorReport {
    pub fn all_hold(&self) -> bool {
        self.to_b1 && self.to_b2
    }
}

pub fn verify_relator_compatibility(p: &JoinParams) -> Result<RelatorReport> {
    let (h1, h2) = svk_maps(p)?;
    let check = |h: &GroupHom| {
        let major = h.source.relators().last().expect("surface relator");
        let target = h.target.relators().last().expect("surface relator");
        let c = h.target.num_generators() - 1;
        h.apply(major).central_normal_form(&[c]) == target.central_normal_form(&[c])
    };
    Ok(RelatorReport {
        to_b1: check(&h1),
        to_b2: check(&h2),
    })
}

/// First homology: cokernel of the exponent-sum matrix of the relators.
pub fn abelianize(p: &Presentation) -> FgAbGroup {
    cokernel(&p.exponent_matrix())
}
