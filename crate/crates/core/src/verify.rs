//! Randomized self-check suites, run by `dcoset verify`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automorphism::{
    compose, invert, is_in_h, permutation_automorphism, random_automorphism_with,
    verify_inverse_pair, Automorphism, Permutation,
};
use crate::cosets::{
    coset_product, forced_product, product_formula_direct, star_vs_pair_check,
    stability_witness, triple_product_disjoint, witness_left, witness_right,
};
use crate::error::Error;
use crate::rep::{builtin_group, RepEngine, Subgroup};
use crate::word::{concat, invert_word, reduce, substitute, Generator, Letter, Sign, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Words,
    Automorphisms,
    Cosets,
    Representation,
    All,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "words" => Ok(Suite::Words),
            "automorphisms" => Ok(Suite::Automorphisms),
            "cosets" => Ok(Suite::Cosets),
            "representation" => Ok(Suite::Representation),
            "all" => Ok(Suite::All),
            other => Err(format!("unknown suite `{other}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub trials: usize,
    pub failures: usize,
    pub note: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.note.is_none()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    fn run<F>(&mut self, name: &'static str, trials: usize, mut check: F)
    where
        F: FnMut(usize) -> Result<bool, Error>,
    {
        let mut failures = 0;
        let mut note = None;
        for t in 0..trials {
            match check(t) {
                Ok(true) => {}
                Ok(false) => failures += 1,
                Err(e) => {
                    failures += 1;
                    note.get_or_insert_with(|| e.to_string());
                }
            }
        }
        self.checks.push(CheckResult {
            name,
            trials,
            failures,
            note,
        });
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            write!(f, "{status} {} ({}/{})", c.name, c.trials - c.failures, c.trials)?;
            if let Some(n) = &c.note {
                write!(f, ": {n}")?;
            }
            writeln!(f)?;
        }
        let failed = self.checks.iter().filter(|c| !c.passed()).count();
        writeln!(f, "{} checks, {failed} failed", self.checks.len())
    }
}

/// Random letter sequence (not reduced) over `x1..=x{max_index}`.
pub fn random_letters<R: Rng + ?Sized>(rng: &mut R, max_index: u32, max_len: usize) -> Vec<Letter> {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| Letter {
            gen: Generator::new(rng.gen_range(1..=max_index)).expect(">= 1"),
            sign: if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg },
        })
        .collect()
}

pub fn random_word<R: Rng + ?Sized>(rng: &mut R, max_index: u32, max_len: usize) -> Word {
    reduce(random_letters(rng, max_index, max_len))
}

fn is_reduced(w: &Word) -> bool {
    w.letters()
        .windows(2)
        .all(|p| !(p[0].gen == p[1].gen && p[0].sign != p[1].sign))
}

pub fn run_suite(suite: Suite, seed: u64) -> Report {
    let mut report = Report::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if matches!(suite, Suite::Words | Suite::All) {
        words(&mut report, &mut rng);
    }
    if matches!(suite, Suite::Automorphisms | Suite::All) {
        automorphisms(&mut report, &mut rng);
    }
    if matches!(suite, Suite::Cosets | Suite::All) {
        cosets(&mut report, &mut rng);
    }
    if matches!(suite, Suite::Representation | Suite::All) {
        representation(&mut report, &mut rng);
    }
    report
}

fn words(report: &mut Report, rng: &mut ChaCha8Rng) {
    report.run("reduce is idempotent", 1000, |_| {
        let w = reduce(random_letters(rng, 4, 64));
        Ok(is_reduced(&w) && reduce(w.letters().iter().copied()) == w)
    });
    report.run("concat and invert obey group axioms", 1000, |_| {
        let (a, b, c) = (
            random_word(rng, 4, 16),
            random_word(rng, 4, 16),
            random_word(rng, 4, 16),
        );
        Ok(concat(&concat(&a, &b), &c) == concat(&a, &concat(&b, &c))
            && concat(&a, &invert_word(&a)).is_empty()
            && invert_word(&invert_word(&a)) == a
            && concat(&a, &Word::identity()) == a)
    });
    report.run("substitute is a homomorphism", 500, |_| {
        let im = (1..=3)
            .map(|i| (Generator::new(i).unwrap(), random_word(rng, 4, 6)))
            .collect();
        let (a, b) = (random_word(rng, 4, 12), random_word(rng, 4, 12));
        Ok(substitute(&im, &concat(&a, &b)) == concat(&substitute(&im, &a), &substitute(&im, &b)))
    });
}

fn automorphisms(report: &mut Report, rng: &mut ChaCha8Rng) {
    report.run("compose is associative", 200, |_| {
        let a = random_automorphism_with(rng, 0, 4, 6)?;
        let b = random_automorphism_with(rng, 0, 4, 6)?;
        let c = random_automorphism_with(rng, 0, 4, 6)?;
        Ok(compose(a.fwd(), &compose(b.fwd(), c.fwd()))
            == compose(&compose(a.fwd(), b.fwd()), c.fwd()))
    });
    report.run("constructed automorphisms carry verified inverses", 200, |_| {
        let a = random_automorphism_with(rng, 0, 5, 10)?;
        let ab = a.compose(&random_automorphism_with(rng, 0, 5, 10)?);
        Ok(verify_inverse_pair(a.fwd(), a.inv()) && verify_inverse_pair(ab.fwd(), ab.inv()))
    });
    report.run("composite fixes indices above both supports", 200, |_| {
        let a = random_automorphism_with(rng, 0, 4, 8)?;
        let b = random_automorphism_with(rng, 0, 6, 8)?;
        let bound = a.support_bound().max(b.support_bound());
        Ok(a.compose(&b).support_bound() <= bound)
    });
    report.run("permutation automorphisms form a subgroup", 200, |_| {
        let perm = |rng: &mut ChaCha8Rng| {
            let mut pts: Vec<u32> = (1..=6).collect();
            rand::seq::SliceRandom::shuffle(pts.as_mut_slice(), rng);
            Permutation::from_map((1..=6).zip(pts)).expect("shuffle is a bijection")
        };
        let (p, q) = (perm(rng), perm(rng));
        Ok(permutation_automorphism(&p).compose(&permutation_automorphism(&q))
            == permutation_automorphism(&p.compose(&q)))
    });
}

fn random_pair(rng: &mut ChaCha8Rng, m: u32, extra: u32, moves: usize) -> Result<(Automorphism, Automorphism), Error> {
    Ok((
        random_automorphism_with(rng, 0, m + extra, moves)?,
        random_automorphism_with(rng, 0, m + extra, moves)?,
    ))
}

fn cosets(report: &mut Report, rng: &mut ChaCha8Rng) {
    report.run("composition path equals block formula", 60, |_| {
        let m = rng.gen_range(1..=2);
        let (g, h) = random_pair(rng, m, 2, 10)?;
        let p = coset_product(m, &g, &h);
        Ok(product_formula_direct(m, p.n, &g, &h)? == p.rep)
    });
    report.run("left and right H-witnesses", 40, |_| {
        let m = rng.gen_range(1..=2);
        let (g, h) = random_pair(rng, m, 2, 8)?;
        let n = crate::cosets::canonical_n(m, [&g, &h]).max(1);
        let r = random_automorphism_with(rng, m, m + n, 6)?;
        let q = random_automorphism_with(rng, m, m + n, 6)?;
        let rbox = witness_left(m, n, &r, &g, &h)?;
        let qtri = witness_right(m, n, &q, &g, &h)?;
        let base = forced_product(m, n, &g, &h);
        let left = forced_product(m, n, &g, &r.compose(&h)) == rbox.compose(&base);
        let right = g.compose(&q).compose(&forced_product(m, n, &Automorphism::identity(), &h))
            == base.compose(&invert(&qtri));
        Ok(left && right && is_in_h(&rbox, m) && is_in_h(&qtri, m))
    });
    report.run("block size stability", 40, |_| {
        let m = rng.gen_range(1..=2);
        let (g, h) = random_pair(rng, m, 2, 8)?;
        let n = crate::cosets::canonical_n(m, [&g, &h]);
        let p = rng.gen_range(1..=2);
        let (pi, s) = stability_witness(m, n, p, &g, &h)?;
        let wide = forced_product(m, n + p, &g, &h);
        Ok(pi.compose(&wide.compose(&s).compose(&invert(&pi))) == forced_product(m, n, &g, &h))
    });
    report.run("star product matches pair product", 60, |_| {
        let m = rng.gen_range(1..=2);
        let (g, h) = random_pair(rng, m, 2, 8)?;
        Ok(star_vs_pair_check(m, &g, &h))
    });
    report.run("invertible elements multiply as Aut(F_m)", 60, |_| {
        let m = rng.gen_range(2..=3);
        let (g, h) = random_pair(rng, m, 0, 8)?;
        Ok(coset_product(m, &g, &h).rep == g.compose(&h))
    });
}

fn representation(report: &mut Report, rng: &mut ChaCha8Rng) {
    let groups = ["c2", "c3", "s3"].map(|n| RepEngine::new(builtin_group(n).expect("builtin")));
    report.run("T(g o h) = T(g) T(h)", 24, |t| {
        let e = &groups[t % 3];
        let m = 1 + (t / 3 % 2) as u32;
        let (g, h) = random_pair(rng, m, 2, 6)?;
        let gh = coset_product(m, &g, &h);
        let lhs = e.markov_matrix(&gh.rep, m as usize)?;
        let rhs = &e.markov_matrix(&g, m as usize)? * &e.markov_matrix(&h, m as usize)?;
        Ok(lhs == rhs && lhs.is_doubly_stochastic())
    });
    report.run("compressed homomorphism for U = K", 12, |t| {
        let e = &groups[t % 3];
        let u = Subgroup::whole(e.group());
        let m = 1 + (t / 3 % 2);
        let (g, h) = random_pair(rng, m as u32, 2, 6)?;
        let gh = coset_product(m as u32, &g, &h);
        let c = |a: &Automorphism| e.compress_to_invariants(&u, m, &e.markov_matrix(a, m)?);
        Ok(c(&gh.rep)? == &c(&g)? * &c(&h)?)
    });
    report.run("associativity at the operator level", 10, |t| {
        let e = &groups[t % 2];
        let m = 1;
        let g = random_automorphism_with(rng, 0, 3, 5)?;
        let h = random_automorphism_with(rng, 0, 3, 5)?;
        let f = random_automorphism_with(rng, 0, 3, 5)?;
        let left = coset_product(m, &coset_product(m, &g, &h).rep, &f).rep;
        let right = coset_product(m, &g, &coset_product(m, &h, &f).rep).rep;
        let triple = triple_product_disjoint(m, &g, &h, &f);
        let ml = e.markov_matrix(&left, 1)?;
        Ok(ml == e.markov_matrix(&right, 1)? && ml == e.markov_matrix(&triple, 1)?)
    });
    report.run("action maps are bijections", 20, |t| {
        let e = &groups[2 * (t % 2)];
        let g = random_automorphism_with(rng, 0, 4, 8)?;
        let n = g.support_bound() as usize;
        e.action_map(&g, n).map(|_| true)
    });
    report.run("markov matrix is independent of N", 10, |t| {
        let e = &groups[t % 3];
        let g = random_automorphism_with(rng, 0, 3, 6)?;
        let n = g.support_bound().max(1) as usize;
        Ok(e.markov_matrix_at(&g, 1, n)? == e.markov_matrix_at(&g, 1, n + 1)?)
    });
    report.run("T(theta_j) -> P on cylinder functions", 2, |t| {
        let e = &groups[0];
        let m_cyl = t + 1;
        let eventually = (m_cyl..=m_cyl + 2)
            .map(|j| e.weak_limit_check(1, m_cyl, j))
            .collect::<Result<Vec<_>, _>>()?;
        let early = (0..m_cyl)
            .map(|j| e.weak_limit_check(1, m_cyl, j))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(eventually.iter().all(|&b| b) && early.iter().any(|&b| !b))
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes() {
        let report = run_suite(Suite::All, 7);
        assert!(report.passed(), "{report}");
        assert_eq!(report.checks.len(), 18);
    }

    #[test]
    fn suite_names() {
        assert_eq!("cosets".parse::<Suite>().unwrap(), Suite::Cosets);
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn report_is_deterministic() {
        let a = run_suite(Suite::Words, 3).to_string();
        assert_eq!(a, run_suite(Suite::Words, 3).to_string());
    }
}
