//! Products on `H\G/H`, `G//H` and `H\G^k/H`, where `G = Aut(F_inf)` and
//! `H` is the stabilizer of `x_1..x_m`.
//!
//! Block layout used throughout (for a given `m` and block size `n`):
//! `x = 1..=m`, `y = m+1..=m+n`, `z = m+n+1..=m+2n`, everything above is `u`.
//!
//! Representatives are compared exactly. Equal representatives imply equal
//! double cosets, the converse is not decided here; equality of cosets is
//! evidenced by the explicit `H`-witnesses below or by the representation
//! matrices in [`crate::rep`].

use std::collections::BTreeMap;

use crate::automorphism::{
    invert, is_in_h, permutation_automorphism, Automorphism, Endomorphism, Permutation,
};
use crate::error::Error;
use crate::word::{substitute, Generator, Word};

/// Representative of an element of `H\G/H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCosetRep {
    pub m: u32,
    /// Block size used to force the factors apart.
    pub n: u32,
    pub rep: Automorphism,
}

/// Representative of a conjugacy class in `G//H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClassRep {
    pub m: u32,
    pub n: u32,
    pub rep: Automorphism,
}

/// Representative of an element of `H\G^k/H` (diagonal `H`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleRep {
    pub m: u32,
    pub n: u32,
    pub reps: Vec<Automorphism>,
}

fn g(i: u32) -> Generator {
    Generator::new(i).expect("block indices are >= 1")
}

/// The involution fixing `1..=m` and swapping `m+k <-> m+j+k` for `k = 1..=j`.
pub fn theta(m: u32, j: u32) -> Automorphism {
    permutation_automorphism(&theta_permutation(m, j))
}

pub fn theta_permutation(m: u32, j: u32) -> Permutation {
    Permutation::from_map((1..=j).flat_map(|k| [(m + k, m + j + k), (m + j + k, m + k)]))
        .expect("block swap is a permutation")
}

/// Smallest `n` such that every factor fixes all generators above `m + n`.
pub fn canonical_n<'a, I: IntoIterator<Item = &'a Automorphism>>(m: u32, factors: I) -> u32 {
    factors
        .into_iter()
        .map(Automorphism::support_bound)
        .fold(m, u32::max)
        - m
}

fn check_support(what: &str, a: &Automorphism, bound: u32) -> Result<(), Error> {
    let b = a.support_bound();
    if b > bound {
        return Err(Error::Support(format!(
            "{what} has support bound {b}, expected <= {bound}"
        )));
    }
    Ok(())
}

/// `g theta_n h` for an explicit block size `n` (no support check).
pub fn forced_product(m: u32, n: u32, g: &Automorphism, h: &Automorphism) -> Automorphism {
    g.compose(&theta(m, n).compose(h))
}

/// `g o h` in `H\G/H`, using the canonical block size.
pub fn coset_product(m: u32, g: &Automorphism, h: &Automorphism) -> DoubleCosetRep {
    let n = canonical_n(m, [g, h]);
    DoubleCosetRep {
        m,
        n,
        rep: forced_product(m, n, g, h),
    }
}

/// Substitution `x -> alpha(x, y)`, `y_k -> z_k` used to build the product
/// directly from the images of `g`.
fn forcing_substitution(m: u32, n: u32, g: &Endomorphism) -> BTreeMap<Generator, Word> {
    let mut map = BTreeMap::new();
    for i in 1..=m {
        map.insert(self::g(i), g.image_of(i));
    }
    for k in 1..=n {
        map.insert(self::g(m + k), Word::x(m + n + k));
    }
    map
}

/// Forward map of the product written out from the images:
/// `x -> gamma(alpha(x,y), z)`, `y -> delta(alpha(x,y), z)`, `z -> beta(x,y)`.
fn product_formula_endo(m: u32, n: u32, g: &Endomorphism, h: &Endomorphism) -> Endomorphism {
    let sub = forcing_substitution(m, n, g);
    let mut images = Vec::with_capacity((m + 2 * n) as usize);
    for i in 1..=m + n {
        images.push((self::g(i), substitute(&sub, &h.image_of(i))));
    }
    for k in 1..=n {
        images.push((self::g(m + n + k), g.image_of(m + k)));
    }
    Endomorphism::from_images(images)
}

/// The product `g theta_n h` computed straight from the block formula,
/// without going through composition.
pub fn product_formula_direct(
    m: u32,
    n: u32,
    g: &Automorphism,
    h: &Automorphism,
) -> Result<Automorphism, Error> {
    check_support("g", g, m + n)?;
    check_support("h", h, m + n)?;
    let fwd = product_formula_endo(m, n, g.fwd(), h.fwd());
    // (g theta h)^{-1} = h^{-1} theta g^{-1}, same formula with the factors swapped
    let inv = product_formula_endo(m, n, h.inv(), g.inv());
    Automorphism::new(fwd, inv)
}

fn check_block_factor(name: &str, a: &Automorphism, m: u32, n: u32) -> Result<(), Error> {
    if !is_in_h(a, m) {
        return Err(Error::NotInH { m });
    }
    check_support(name, a, m + n)
}

/// Left witness `r^box` for `r` in `H`:
/// `g theta_n r h = r^box (g theta_n h)`, with
/// `r^box: z_k -> sigma_k(alpha(x,y), z)` where `sigma = r(y)`.
pub fn witness_left(
    m: u32,
    n: u32,
    r: &Automorphism,
    g: &Automorphism,
    h: &Automorphism,
) -> Result<Automorphism, Error> {
    check_block_factor("r", r, m, n)?;
    check_support("g", g, m + n)?;
    check_support("h", h, m + n)?;
    let sub = forcing_substitution(m, n, g.fwd());
    let lift = |e: &Endomorphism| {
        Endomorphism::from_images(
            (1..=n).map(|k| (self::g(m + n + k), substitute(&sub, &e.image_of(m + k)))),
        )
    };
    // the inverse uses the words s = r^{-1}(y) in the same slots
    Automorphism::new(lift(r.fwd()), lift(r.inv()))
}

/// Right witness `q^tri` for `q` in `H`:
/// `g q theta_n h = (g theta_n h) (q^tri)^{-1}`.
///
/// Obtained by applying [`witness_left`] to the inverse product
/// `h^{-1} theta_n q^{-1} g^{-1}`.
pub fn witness_right(
    m: u32,
    n: u32,
    q: &Automorphism,
    g: &Automorphism,
    h: &Automorphism,
) -> Result<Automorphism, Error> {
    check_block_factor("q", q, m, n)?;
    witness_left(m, n, &invert(q), &invert(h), &invert(g))
}

/// Witnesses that enlarging the block size from `n` to `n + p` does not
/// change the double coset.
///
/// Generators are laid out as `x, y (n), y' (p), z (n), z' (p), u`. Returns
/// `(pi, s)` where `s` swaps the `y'` and `z'` blocks and `pi` renumbers to the
/// order `x, y, z, y', z', u`; then
/// `pi ((g theta_{n+p} h) s) pi^{-1} = g theta_n h`.
pub fn stability_witness(
    m: u32,
    n: u32,
    p: u32,
    g: &Automorphism,
    h: &Automorphism,
) -> Result<(Automorphism, Automorphism), Error> {
    check_support("g", g, m + n)?;
    check_support("h", h, m + n)?;
    let y_prime = |k: u32| m + n + k;
    let z_old = |k: u32| m + n + p + k;
    let z_prime = |k: u32| m + 2 * n + p + k;

    let swap = Permutation::from_map((1..=p).flat_map(|k| {
        [(y_prime(k), z_prime(k)), (z_prime(k), y_prime(k))]
    }))?;
    let renumber = Permutation::from_map(
        (1..=n)
            .map(|k| (z_old(k), m + n + k))
            .chain((1..=p).map(|k| (y_prime(k), m + 2 * n + k))),
    )?;
    Ok((
        permutation_automorphism(&renumber),
        permutation_automorphism(&swap),
    ))
}

/// `g * h` in `G//H`: the class of `g theta h theta^{-1}` (theta is an involution).
pub fn star_product(m: u32, g: &Automorphism, h: &Automorphism) -> ConjClassRep {
    let n = canonical_n(m, [g, h]);
    let t = theta(m, n);
    ConjClassRep {
        m,
        n,
        rep: g.compose(&t.compose(&h.compose(&t))),
    }
}

/// Componentwise forced product on `H\G^k/H` with a shared block size.
pub fn tuple_product(
    m: u32,
    gs: &[Automorphism],
    hs: &[Automorphism],
) -> Result<TupleRep, Error> {
    if gs.len() != hs.len() {
        return Err(Error::LengthMismatch(gs.len(), hs.len()));
    }
    if gs.is_empty() {
        return Err(Error::EmptyTuple);
    }
    let n = canonical_n(m, gs.iter().chain(hs));
    let t = theta(m, n);
    let reps = gs
        .iter()
        .zip(hs)
        .map(|(g, h)| g.compose(&t.compose(h)))
        .collect();
    Ok(TupleRep { m, n, reps })
}

/// Compares the star product with the pair product under
/// `H\(G x H)/H ~ G//H`, `(a, b) -> a b^{-1}`.
pub fn star_vs_pair_check(m: u32, g: &Automorphism, h: &Automorphism) -> bool {
    let id = Automorphism::identity();
    let pair = tuple_product(m, &[g.clone(), id.clone()], &[h.clone(), id])
        .expect("pair tuples have equal length");
    let (a, b) = (&pair.reps[0], &pair.reps[1]);
    if !is_in_h(b, m) {
        return false;
    }
    let star = star_product(m, g, h);
    star.n == pair.n && a.compose(&invert(b)) == star.rep
}

/// Conjugate `p a p^{-1}` written out by relabeling generators.
pub fn relabel(a: &Automorphism, p: &Permutation) -> Automorphism {
    let relabel_endo = |e: &Endomorphism| {
        let map: BTreeMap<Generator, Word> =
            p.moved().map(|(i, j)| (self::g(i), Word::x(j))).collect();
        Endomorphism::from_images(e.images().iter().map(|(gen, w)| {
            (self::g(p.apply(gen.index())), substitute(&map, w))
        }))
    };
    Automorphism::new(relabel_endo(a.fwd()), relabel_endo(a.inv()))
        .expect("conjugation preserves inverse pairs")
}

fn block_swap(from: u32, to: u32, n: u32) -> Permutation {
    Permutation::from_map((1..=n).flat_map(|k| [(from + k, to + k), (to + k, from + k)]))
        .expect("disjoint blocks")
}

/// Triple product with the three factors placed on disjoint auxiliary blocks,
/// evaluated as an ordinary group product. Blocks: `x = 1..=m`, `y`, `z`, `u`
/// of size `n`, then `v`:
///
/// ```text
/// g: x -> alpha(x,u),  u -> beta(x,u)
/// h: x -> gamma(x,z),  z -> delta(x,z)
/// f: x -> phi(x,y),    y -> psi(x,y)
/// ```
///
/// The result is `x -> phi(gamma(alpha(x,u),z),y)`, `y -> psi(gamma(alpha(x,u),z),y)`,
/// `z -> delta(alpha(x,u),z)`, `u -> beta(x,u)`.
pub fn triple_product_disjoint_at(
    m: u32,
    n: u32,
    g: &Automorphism,
    h: &Automorphism,
    f: &Automorphism,
) -> Result<Automorphism, Error> {
    check_support("g", g, m + n)?;
    check_support("h", h, m + n)?;
    check_support("f", f, m + n)?;
    let y = m;
    let z = m + n;
    let u = m + 2 * n;
    let g_moved = relabel(g, &block_swap(y, u, n));
    let h_moved = relabel(h, &block_swap(y, z, n));
    Ok(g_moved.compose(&h_moved.compose(f)))
}

/// [`triple_product_disjoint_at`] with the canonical block size of all three factors.
pub fn triple_product_disjoint(
    m: u32,
    g: &Automorphism,
    h: &Automorphism,
    f: &Automorphism,
) -> Automorphism {
    let n = canonical_n(m, [g, h, f]);
    triple_product_disjoint_at(m, n, g, h, f).expect("canonical block size covers supports")
}
