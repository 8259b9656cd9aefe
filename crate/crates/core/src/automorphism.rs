//! Finitely supported endomorphisms of the free group `F_inf` and
//! automorphisms carrying a certified inverse.
//!
//! Composition convention: `compose(a, b)` sends `x_i` to `a(b(x_i))`, i.e.
//! `b`'s image is computed first and then rewritten through `a`. Read a
//! product string `g t h` right to left: `h` first, then `t`, then `g`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::word::{substitute, Generator, Word};

/// An endomorphism given by the images of finitely many generators; all
/// other generators are fixed. Identity images are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Endomorphism {
    images: BTreeMap<Generator, Word>,
}

impl Endomorphism {
    pub fn identity() -> Self {
        Endomorphism::default()
    }

    /// Builds an endomorphism, dropping entries of the form `x_i -> x_i`.
    pub fn from_images<I: IntoIterator<Item = (Generator, Word)>>(images: I) -> Self {
        let images = images
            .into_iter()
            .filter(|(g, w)| !w.is_generator(*g))
            .collect();
        Endomorphism { images }
    }

    /// Convenience constructor from `(index, word)` pairs. Panics on index 0.
    pub fn from_index_images<I: IntoIterator<Item = (u32, Word)>>(images: I) -> Self {
        Endomorphism::from_images(
            images
                .into_iter()
                .map(|(i, w)| (Generator::new(i).expect("index >= 1"), w)),
        )
    }

    /// The stored (non-trivial) images.
    pub fn images(&self) -> &BTreeMap<Generator, Word> {
        &self.images
    }

    pub fn image(&self, g: Generator) -> Word {
        self.images
            .get(&g)
            .cloned()
            .unwrap_or_else(|| Word::generator(g))
    }

    /// Image of `x_index`. Panics on index 0.
    pub fn image_of(&self, index: u32) -> Word {
        self.image(Generator::new(index).expect("index >= 1"))
    }

    pub fn apply(&self, w: &Word) -> Word {
        substitute(&self.images, w)
    }

    pub fn is_identity(&self) -> bool {
        self.images.is_empty()
    }

    pub fn fixes(&self, g: Generator) -> bool {
        !self.images.contains_key(&g)
    }

    /// Smallest `B` such that every generator above `B` is fixed and no
    /// stored image mentions an index above `B`.
    pub fn support_bound(&self) -> u32 {
        self.images
            .iter()
            .map(|(g, w)| g.index().max(w.max_index()))
            .max()
            .unwrap_or(0)
    }
}

/// `x_i -> a(b(x_i))`.
pub fn compose(a: &Endomorphism, b: &Endomorphism) -> Endomorphism {
    let keys: BTreeSet<Generator> = a.images.keys().chain(b.images.keys()).copied().collect();
    Endomorphism::from_images(keys.into_iter().map(|g| {
        let inner = b.image(g);
        (g, a.apply(&inner))
    }))
}

/// True iff `f` and `g` are mutually inverse.
pub fn verify_inverse_pair(f: &Endomorphism, g: &Endomorphism) -> bool {
    // Both composites only move generators that f or g move, so checking the
    // normalized maps covers every index up to the joint support bound.
    compose(f, g).is_identity() && compose(g, f).is_identity()
}

impl fmt::Display for Endomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.images.is_empty() {
            return f.write_str("id");
        }
        for (i, (g, w)) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "x{} -> {}", g.index(), w)?;
        }
        Ok(())
    }
}

/// An automorphism of `F_inf` stored with its inverse.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Automorphism {
    fwd: Endomorphism,
    inv: Endomorphism,
}

impl Automorphism {
    pub fn identity() -> Self {
        Automorphism::default()
    }

    /// Pairs `fwd` with `inv`, failing unless they are mutually inverse.
    pub fn new(fwd: Endomorphism, inv: Endomorphism) -> Result<Self, Error> {
        if !verify_inverse_pair(&fwd, &inv) {
            return Err(Error::NotInverse);
        }
        Ok(Automorphism { fwd, inv })
    }

    pub(crate) fn new_unchecked(fwd: Endomorphism, inv: Endomorphism) -> Self {
        debug_assert!(verify_inverse_pair(&fwd, &inv));
        Automorphism { fwd, inv }
    }

    pub fn fwd(&self) -> &Endomorphism {
        &self.fwd
    }

    pub fn inv(&self) -> &Endomorphism {
        &self.inv
    }

    pub fn is_identity(&self) -> bool {
        self.fwd.is_identity()
    }

    /// Joint support bound of the forward map and its inverse.
    pub fn support_bound(&self) -> u32 {
        self.fwd.support_bound().max(self.inv.support_bound())
    }

    pub fn image_of(&self, index: u32) -> Word {
        self.fwd.image_of(index)
    }

    pub fn apply(&self, w: &Word) -> Word {
        self.fwd.apply(w)
    }

    /// `self` after `other`: `x_i -> self(other(x_i))`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            fwd: compose(&self.fwd, &other.fwd),
            inv: compose(&other.inv, &self.inv),
        }
    }

    pub fn inverse(&self) -> Automorphism {
        invert(self)
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fwd.fmt(f)
    }
}

/// Group product, same convention as [`compose`].
pub fn compose_aut(a: &Automorphism, b: &Automorphism) -> Automorphism {
    a.compose(b)
}

pub fn invert(a: &Automorphism) -> Automorphism {
    Automorphism {
        fwd: a.inv.clone(),
        inv: a.fwd.clone(),
    }
}

pub fn support_bound(e: &Endomorphism) -> u32 {
    e.support_bound()
}

/// True iff `a` fixes `x_1, ..., x_m`.
pub fn is_in_h(a: &Automorphism, m: u32) -> bool {
    a.fwd
        .images
        .keys()
        .next()
        .is_none_or(|first| first.index() > m)
}

fn gen(i: u32) -> Result<Generator, Error> {
    Generator::new(i).map_err(|_| Error::InvalidNielsen("generator index 0".into()))
}

/// `x_i <-> x_j`.
pub fn nielsen_swap(i: u32, j: u32) -> Result<Automorphism, Error> {
    if i == j {
        return Err(Error::InvalidNielsen(format!("swap needs distinct indices, got {i}")));
    }
    let (gi, gj) = (gen(i)?, gen(j)?);
    let fwd = Endomorphism::from_images([(gi, Word::generator(gj)), (gj, Word::generator(gi))]);
    Ok(Automorphism::new_unchecked(fwd.clone(), fwd))
}

/// `x_i -> x_i^{-1}`.
pub fn nielsen_invert(i: u32) -> Result<Automorphism, Error> {
    let gi = gen(i)?;
    let fwd = Endomorphism::from_images([(gi, Word::generator(gi).inverse())]);
    Ok(Automorphism::new_unchecked(fwd.clone(), fwd))
}

/// `x_i -> x_i x_j`, with inverse `x_i -> x_i x_j^{-1}`.
pub fn nielsen_right_mult(i: u32, j: u32) -> Result<Automorphism, Error> {
    if i == j {
        return Err(Error::InvalidNielsen(format!(
            "right multiplication needs distinct indices, got x{i} -> x{i} x{j}"
        )));
    }
    let (gi, gj) = (gen(i)?, gen(j)?);
    let xi = Word::generator(gi);
    let xj = Word::generator(gj);
    let fwd = Endomorphism::from_images([(gi, xi.mul(&xj))]);
    let inv = Endomorphism::from_images([(gi, xi.mul(&xj.inverse()))]);
    Ok(Automorphism::new_unchecked(fwd, inv))
}

/// A finitely supported permutation of the positive integers; only moved
/// points are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Permutation {
    map: BTreeMap<u32, u32>,
}

impl Permutation {
    pub fn identity() -> Self {
        Permutation::default()
    }

    /// Validates that the finite map is a bijection of its key set.
    pub fn from_map<I: IntoIterator<Item = (u32, u32)>>(pairs: I) -> Result<Self, Error> {
        let mut map = BTreeMap::new();
        for (a, b) in pairs {
            if a == 0 || b == 0 {
                return Err(Error::NotBijective("point 0 is not a positive integer".into()));
            }
            if map.insert(a, b).is_some_and(|prev| prev != b) {
                return Err(Error::NotBijective(format!("{a} has two images")));
            }
        }
        let keys: BTreeSet<u32> = map.keys().copied().collect();
        let values: BTreeSet<u32> = map.values().copied().collect();
        if values.len() != map.len() {
            return Err(Error::NotBijective("two points share an image".into()));
        }
        if keys != values {
            return Err(Error::NotBijective(
                "image set differs from domain set".into(),
            ));
        }
        map.retain(|a, b| a != b);
        Ok(Permutation { map })
    }

    pub fn apply(&self, i: u32) -> u32 {
        self.map.get(&i).copied().unwrap_or(i)
    }

    pub fn inverse(&self) -> Permutation {
        Permutation {
            map: self.map.iter().map(|(&a, &b)| (b, a)).collect(),
        }
    }

    /// `i -> self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        let keys: BTreeSet<u32> = self.map.keys().chain(other.map.keys()).copied().collect();
        let map = keys
            .into_iter()
            .map(|i| (i, self.apply(other.apply(i))))
            .filter(|(a, b)| a != b)
            .collect();
        Permutation { map }
    }

    pub fn moved(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.map.iter().map(|(&a, &b)| (a, b))
    }
}

fn permutation_endo(p: &Permutation) -> Endomorphism {
    Endomorphism::from_index_images(p.moved().map(|(a, b)| (a, Word::x(b))))
}

/// `x_i -> x_{pi(i)}`.
pub fn permutation_automorphism(p: &Permutation) -> Automorphism {
    Automorphism::new_unchecked(permutation_endo(p), permutation_endo(&p.inverse()))
}

/// Composition of `length` random Nielsen moves. With `m_fix > 0` only
/// indices in `m_fix+1..=max_index` are touched, so the result fixes
/// `x_1..x_{m_fix}`.
pub fn random_automorphism(
    m_fix: u32,
    max_index: u32,
    length: usize,
    seed: u64,
) -> Result<Automorphism, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_automorphism_with(&mut rng, m_fix, max_index, length)
}

/// Same as [`random_automorphism`] but draws from a caller-owned RNG.
pub fn random_automorphism_with<R: Rng + ?Sized>(
    rng: &mut R,
    m_fix: u32,
    max_index: u32,
    length: usize,
) -> Result<Automorphism, Error> {
    let lo = m_fix + 1;
    if length == 0 {
        return Ok(Automorphism::identity());
    }
    if lo > max_index {
        return Err(Error::InvalidNielsen(format!(
            "no free indices in {lo}..={max_index}"
        )));
    }
    let indices: Vec<u32> = (lo..=max_index).collect();
    let mut acc = Automorphism::identity();
    for _ in 0..length {
        let i = *indices.choose(rng).unwrap();
        let step = if indices.len() == 1 {
            nielsen_invert(i)?
        } else {
            let j = loop {
                let j = *indices.choose(rng).unwrap();
                if j != i {
                    break j;
                }
            };
            match rng.gen_range(0..4) {
                0 => nielsen_swap(i, j)?,
                1 => nielsen_invert(i)?,
                _ => nielsen_right_mult(i, j)?,
            }
        };
        acc = acc.compose(&step);
    }
    Ok(acc)
}
