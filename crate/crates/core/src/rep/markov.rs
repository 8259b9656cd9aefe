use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::group::{FiniteGroup, Subgroup};
use super::matrix::{Rational, RationalMatrix};
use super::tuple::TupleIndex;
use crate::automorphism::Automorphism;
use crate::cosets::theta;
use crate::error::Error;
use crate::word::{Sign, Word};

/// Default cap on the number of points enumerated by one operation.
pub const DEFAULT_MAX_POINTS: u64 = 10_000_000;

/// Substitutes `point[i-1]` for `x_i` and multiplies out in `K`.
pub fn eval_word(k: &FiniteGroup, w: &Word, point: &[usize]) -> Result<usize, Error> {
    let mut acc = k.unit();
    for l in w.letters() {
        let i = l.gen.index();
        let &v = point
            .get(i as usize - 1)
            .ok_or(Error::IndexOutOfRange {
                index: i,
                len: point.len(),
            })?;
        let v = match l.sign {
            Sign::Pos => v,
            Sign::Neg => k.inv(v),
        };
        acc = k.mul(acc, v);
    }
    Ok(acc)
}

/// A word with letters resolved to slots of a point buffer.
struct CompiledWord(Vec<(usize, bool)>);

impl CompiledWord {
    fn new(w: &Word, slot: impl Fn(u32) -> usize) -> Self {
        CompiledWord(
            w.letters()
                .iter()
                .map(|l| (slot(l.gen.index()), l.sign == Sign::Neg))
                .collect(),
        )
    }

    #[inline]
    fn eval(&self, k: &FiniteGroup, point: &[usize]) -> usize {
        self.0.iter().fold(k.unit(), |acc, &(s, neg)| {
            let v = point[s];
            k.mul(acc, if neg { k.inv(v) } else { v })
        })
    }
}

/// A cylinder function: a rational function of the first `dim` coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylinderFunction {
    dim: usize,
    values: Vec<Rational>,
}

impl CylinderFunction {
    pub fn new(group_order: usize, dim: usize, values: Vec<Rational>) -> Result<Self, Error> {
        let idx = TupleIndex::new(group_order, dim)
            .ok_or_else(|| Error::Dimension("cylinder too large".into()))?;
        if values.len() != idx.len() {
            return Err(Error::Dimension(format!(
                "expected {} values, got {}",
                idx.len(),
                values.len()
            )));
        }
        Ok(CylinderFunction { dim, values })
    }

    pub fn constant(c: Rational) -> Self {
        CylinderFunction {
            dim: 0,
            values: vec![c],
        }
    }

    /// Indicator of a single point of `K^d`.
    pub fn delta(group_order: usize, point: &[usize]) -> Result<Self, Error> {
        let idx = TupleIndex::new(group_order, point.len())
            .ok_or_else(|| Error::Dimension("cylinder too large".into()))?;
        if point.iter().any(|&k| k >= group_order) {
            return Err(Error::Dimension("point outside the group".into()));
        }
        let mut values = vec![Rational::zero(); idx.len()];
        values[idx.encode(point)] = Rational::one();
        Ok(CylinderFunction {
            dim: point.len(),
            values,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

/// Both sides of the weak-limit comparison, indexed by delta-basis pairs
/// `(a, b)` of cylinder functions on the first `d` coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakLimitSides {
    /// `<T(theta_j) delta_a, delta_b>`.
    pub shifted: RationalMatrix,
    /// `<P delta_a, P delta_b>`.
    pub projected: RationalMatrix,
}

impl WeakLimitSides {
    pub fn agree(&self) -> bool {
        self.shifted == self.projected
    }
}

fn power(base: usize, exp: usize) -> Rational {
    Rational::from_integer(BigInt::from(base).pow(exp as u32))
}

/// Operations on `L^2(K^N)` for a fixed finite group `K`.
#[derive(Clone, Debug)]
pub struct RepEngine {
    group: FiniteGroup,
    max_points: u64,
}

impl RepEngine {
    pub fn new(group: FiniteGroup) -> Self {
        RepEngine {
            group,
            max_points: DEFAULT_MAX_POINTS,
        }
    }

    pub fn with_max_points(mut self, max_points: u64) -> Self {
        self.max_points = max_points;
        self
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn max_points(&self) -> u64 {
        self.max_points
    }

    fn n(&self) -> usize {
        self.group.order()
    }

    /// Index over `K^dim`, refusing more than `max_points` points.
    fn budget(&self, dim: usize) -> Result<TupleIndex, Error> {
        let points = (self.n() as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
        if points > self.max_points as u128 {
            return Err(Error::TooManyPoints {
                points,
                limit: self.max_points,
            });
        }
        Ok(TupleIndex::new(self.n(), dim).expect("bounded by max_points"))
    }

    pub fn eval_word(&self, w: &Word, point: &[usize]) -> Result<usize, Error> {
        eval_word(&self.group, w, point)
    }

    /// The induced bijection of `K^n`: a point goes to the values of
    /// `g(x_1), ..., g(x_n)` at that point.
    ///
    /// This is a right action: the map of `g.compose(h)` is the map of `h`
    /// applied after the map of `g`.
    pub fn action_map(&self, g: &Automorphism, n: usize) -> Result<Vec<usize>, Error> {
        if g.support_bound() as usize > n {
            return Err(Error::Support(format!(
                "support bound {} exceeds N = {n}",
                g.support_bound()
            )));
        }
        let idx = self.budget(n)?;
        let words: Vec<CompiledWord> = (1..=n as u32)
            .map(|i| CompiledWord::new(&g.image_of(i), |j| j as usize - 1))
            .collect();
        let k = &self.group;
        let map: Vec<usize> = (0..idx.len())
            .into_par_iter()
            .map_init(
                || (vec![0; n], vec![0; n]),
                |(point, image), p| {
                    idx.decode_into(p, point);
                    for (slot, w) in image.iter_mut().zip(&words) {
                        *slot = w.eval(k, point);
                    }
                    idx.encode(image)
                },
            )
            .collect();
        let mut seen = vec![false; map.len()];
        for &q in &map {
            if std::mem::replace(&mut seen[q], true) {
                return Err(Error::NotInverse);
            }
        }
        Ok(map)
    }

    /// Orthogonal projection of `L^2(K^n)` onto functions of the first `m`
    /// coordinates: average over coordinates `m+1..=n`.
    pub fn projection(&self, m: usize, n: usize) -> Result<RationalMatrix, Error> {
        if m > n {
            return Err(Error::Dimension(format!("m = {m} exceeds N = {n}")));
        }
        let idx = self.budget(2 * n).and_then(|_| self.budget(n))?;
        let block = TupleIndex::new(self.n(), n - m).expect("within budget").len();
        let weight = Rational::one() / power(self.n(), n - m);
        let mut p = RationalMatrix::zeros(idx.len(), idx.len());
        for a in 0..idx.len() {
            let start = (a / block) * block;
            for b in start..start + block {
                p.set(a, b, weight.clone());
            }
        }
        Ok(p)
    }

    /// Counts, for each `k' in K^m`, how often the tuple of evaluated
    /// `words` equals each `k in K^m` as the `free` trailing slots range
    /// over `K^free`.
    fn markov_counts(&self, m: usize, free: usize, words: &[CompiledWord]) -> Result<RationalMatrix, Error> {
        self.budget(m + free)?;
        let rows = TupleIndex::new(self.n(), m).expect("within budget");
        let inner = TupleIndex::new(self.n(), free).expect("within budget");
        let k = &self.group;
        let counts: Vec<Vec<u64>> = (0..rows.len())
            .into_par_iter()
            .map(|r| {
                let mut point = vec![0; m + free];
                rows.decode_into(r, &mut point[..m]);
                let mut image = vec![0; m];
                let mut row = vec![0u64; rows.len()];
                for w in 0..inner.len() {
                    inner.decode_into(w, &mut point[m..]);
                    for (slot, word) in image.iter_mut().zip(words) {
                        *slot = word.eval(k, &point);
                    }
                    row[rows.encode(&image)] += 1;
                }
                row
            })
            .collect();
        let denom = power(self.n(), free);
        let mut out = RationalMatrix::zeros(rows.len(), rows.len());
        for (r, row) in counts.iter().enumerate() {
            for (c, &count) in row.iter().enumerate() {
                if count > 0 {
                    out.set(r, c, Rational::from_integer(BigInt::from(count)) / &denom);
                }
            }
        }
        Ok(out)
    }

    /// `P T(g)` restricted to `L^2(K^m)` in the delta basis: entry `[k', k]`
    /// is the probability that `(g(x_1), ..., g(x_m))` evaluated at
    /// `(k', w)` equals `k` for uniform `w`.
    ///
    /// Only the coordinates above `m` that actually occur in the images are
    /// enumerated; the remaining ones integrate out exactly.
    pub fn markov_matrix(&self, g: &Automorphism, m: usize) -> Result<RationalMatrix, Error> {
        let images: Vec<Word> = (1..=m as u32).map(|i| g.image_of(i)).collect();
        let vars: Vec<u32> = images
            .iter()
            .flat_map(|w| w.letters().iter().map(|l| l.gen.index()))
            .filter(|&i| i as usize > m)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let slot = |i: u32| {
            if i as usize <= m {
                i as usize - 1
            } else {
                m + vars.binary_search(&i).expect("collected above")
            }
        };
        let words: Vec<CompiledWord> = images.iter().map(|w| CompiledWord::new(w, slot)).collect();
        self.markov_counts(m, vars.len(), &words)
    }

    /// Same operator computed by enumerating all of `K^{n-m}`.
    pub fn markov_matrix_at(
        &self,
        g: &Automorphism,
        m: usize,
        n: usize,
    ) -> Result<RationalMatrix, Error> {
        if (g.support_bound() as usize) > n || m > n {
            return Err(Error::Support(format!(
                "need N >= max(support {}, m {m}), got {n}",
                g.support_bound()
            )));
        }
        let words: Vec<CompiledWord> = (1..=m as u32)
            .map(|i| CompiledWord::new(&g.image_of(i), |j| j as usize - 1))
            .collect();
        self.markov_counts(m, n - m, &words)
    }

    /// Orbits of simultaneous conjugation by `u` on `K^m`, ordered by their
    /// smallest element; each orbit is sorted.
    pub fn conjugation_orbits(&self, u: &Subgroup, m: usize) -> Result<Vec<Vec<usize>>, Error> {
        let perms = self.conjugation_permutations(u, m)?;
        let len = perms.first().map_or(1, Vec::len);
        let mut orbit_of = vec![usize::MAX; len];
        let mut orbits = Vec::new();
        for a in 0..len {
            if orbit_of[a] != usize::MAX {
                continue;
            }
            let mut orbit: Vec<usize> = perms.iter().map(|p| p[a]).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &b in &orbit {
                orbit_of[b] = orbits.len();
            }
            orbits.push(orbit);
        }
        Ok(orbits)
    }

    fn conjugation_permutations(&self, u: &Subgroup, m: usize) -> Result<Vec<Vec<usize>>, Error> {
        let idx = self.budget(m)?;
        let k = &self.group;
        Ok(u.members()
            .iter()
            .map(|&x| {
                let mut p = vec![0; m];
                (0..idx.len())
                    .map(|a| {
                        idx.decode_into(a, &mut p);
                        p.iter_mut().for_each(|c| *c = k.conj(x, *c));
                        idx.encode(&p)
                    })
                    .collect()
            })
            .collect())
    }

    /// Restricts a `U`-equivariant operator on `L^2(K^m)` to the `U`-invariant
    /// functions, written in the basis of orbit indicators:
    /// entry `[O1, O2] = |O1|^{-1} sum_{a in O1, b in O2} M[a, b]`.
    pub fn compress_to_invariants(
        &self,
        u: &Subgroup,
        m: usize,
        mat: &RationalMatrix,
    ) -> Result<RationalMatrix, Error> {
        let perms = self.conjugation_permutations(u, m)?;
        let len = perms.first().map_or(1, Vec::len);
        if mat.rows() != len || mat.cols() != len {
            return Err(Error::Dimension(format!(
                "expected a {len}x{len} matrix, got {}x{}",
                mat.rows(),
                mat.cols()
            )));
        }
        for p in &perms {
            for a in 0..len {
                for b in 0..len {
                    if mat.get(p[a], p[b]) != mat.get(a, b) {
                        return Err(Error::NotInvariant);
                    }
                }
            }
        }
        let orbits = self.conjugation_orbits(u, m)?;
        let mut out = RationalMatrix::zeros(orbits.len(), orbits.len());
        for (i, o1) in orbits.iter().enumerate() {
            let size = Rational::from_integer(BigInt::from(o1.len()));
            for (j, o2) in orbits.iter().enumerate() {
                let total: Rational = o1
                    .iter()
                    .flat_map(|&a| o2.iter().map(move |&b| (a, b)))
                    .map(|(a, b)| mat.get(a, b))
                    .sum();
                out.set(i, j, total / &size);
            }
        }
        Ok(out)
    }

    /// `<f, f'> = |K|^{-n} sum over K^n of f f'`, both extended cylindrically.
    pub fn cylinder_inner_product(
        &self,
        n: usize,
        f: &CylinderFunction,
        f2: &CylinderFunction,
    ) -> Result<Rational, Error> {
        if f.dim > n || f2.dim > n {
            return Err(Error::Dimension(format!(
                "cylinder dimensions {} and {} exceed N = {n}",
                f.dim, f2.dim
            )));
        }
        let idx = self.budget(n)?;
        let stride = |d: usize| TupleIndex::new(self.n(), n - d).expect("within budget").len();
        let (s1, s2) = (stride(f.dim), stride(f2.dim));
        let total: Rational = (0..idx.len())
            .map(|p| &f.values[p / s1] * &f2.values[p / s2])
            .sum();
        Ok(total / power(self.n(), n))
    }

    /// Both sides of `<T(theta_j) f, f'> = <P f, P f'>` over delta functions
    /// on the first `m + m_cyl` coordinates, evaluated at `N = m + j + m_cyl`.
    pub fn weak_limit_sides(&self, m: usize, m_cyl: usize, j: usize) -> Result<WeakLimitSides, Error> {
        let d = m + m_cyl;
        let n = m + j + m_cyl;
        let full = self.budget(n)?;
        let cyl = self.budget(2 * d).and_then(|_| self.budget(d))?;
        let t = theta(m as u32, j as u32);
        // theta_j(x_i), i <= d, only mentions indices <= m + j + m_cyl
        let words: Vec<CompiledWord> = (1..=d as u32)
            .map(|i| CompiledWord::new(&t.image_of(i), |x| x as usize - 1))
            .collect();
        let tail = TupleIndex::new(self.n(), n - d).expect("within budget").len();
        let k = &self.group;
        let mut counts = vec![0u64; cyl.len() * cyl.len()];
        let mut point = vec![0; n];
        let mut image = vec![0; d];
        for p in 0..full.len() {
            full.decode_into(p, &mut point);
            for (slot, w) in image.iter_mut().zip(&words) {
                *slot = w.eval(k, &point);
            }
            counts[cyl.encode(&image) * cyl.len() + p / tail] += 1;
        }
        let denom = power(self.n(), n);
        let mut shifted = RationalMatrix::zeros(cyl.len(), cyl.len());
        for (i, &c) in counts.iter().enumerate() {
            if c > 0 {
                shifted.set(i / cyl.len(), i % cyl.len(), Rational::from_integer(BigInt::from(c)) / &denom);
            }
        }
        // <P delta_a, P delta_b> = |K|^{-d} (P^T P)[a, b] with P acting on L^2(K^d)
        let p = self.projection(m, d)?;
        let gram = &p.transpose() * &p;
        let scale = Rational::one() / power(self.n(), d);
        let mut projected = RationalMatrix::zeros(cyl.len(), cyl.len());
        for a in 0..cyl.len() {
            for b in 0..cyl.len() {
                projected.set(a, b, gram.get(a, b) * &scale);
            }
        }
        Ok(WeakLimitSides { shifted, projected })
    }

    /// True iff `T(theta_j)` and `P` have identical matrix coefficients on
    /// all delta functions of the first `m + m_cyl` coordinates.
    pub fn weak_limit_check(&self, m: usize, m_cyl: usize, j: usize) -> Result<bool, Error> {
        Ok(self.weak_limit_sides(m, m_cyl, j)?.agree())
    }
}
