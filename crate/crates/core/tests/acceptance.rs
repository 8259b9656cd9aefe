//! Acceptance suite. Each test prints one `[PASS]` or `[FAIL]` line; run with
//! `cargo test -p dcoset --test acceptance -- --nocapture --test-threads 1`.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use dcoset::automorphism::{
    is_in_h, random_automorphism_with, verify_inverse_pair, Automorphism,
};
use dcoset::cosets::{
    canonical_n, coset_product, forced_product, product_formula_direct, stability_witness,
    star_vs_pair_check, triple_product_disjoint, witness_left, witness_right,
};
use dcoset::rep::{builtin_group, RepEngine, Subgroup};
use dcoset::verify::random_letters;
use dcoset::word::{concat, invert_word, reduce, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(id: &str, what: &str, failures: usize, total: usize, extra: &str) {
    let tag = if failures == 0 { "PASS" } else { "FAIL" };
    println!("[{tag}] {id} {what}: {}/{total} ok{extra}", total - failures);
    assert_eq!(failures, 0, "{id}: {failures} of {total} cases failed");
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Automorphism of `F(x_1..x_max)` from up to `moves` Nielsen moves.
fn random_aut(r: &mut ChaCha8Rng, fix: u32, max: u32, moves: usize) -> Automorphism {
    let len = r.gen_range(0..=moves);
    random_automorphism_with(r, fix, max, len).unwrap()
}

#[test]
fn ac01_word_engine() {
    let mut r = rng(1);
    let start = Instant::now();
    let mut failures = 0;
    let total = 10_000;
    for _ in 0..total {
        let mut lens = [0usize; 3];
        lens.iter_mut().for_each(|l| *l = r.gen_range(0..=64));
        let raw: Vec<_> = lens.iter().map(|&l| random_letters(&mut r, 6, l)).collect();
        let words: Vec<Word> = raw.iter().cloned().map(reduce).collect();
        let (a, b, c) = (&words[0], &words[1], &words[2]);
        let ok = reduce(a.letters().to_vec()) == *a
            && concat(&concat(a, b), c) == concat(a, &concat(b, c))
            && concat(a, &Word::identity()) == *a
            && concat(a, &invert_word(a)).is_empty()
            && concat(&invert_word(a), a).is_empty();
        failures += usize::from(!ok);
    }
    let elapsed = start.elapsed();
    let fast = elapsed < Duration::from_secs(1);
    report("AC1", "word engine (reduce idempotent, group axioms)", failures + usize::from(!fast), total,
        &format!(", {:.3}s (limit 1s)", elapsed.as_secs_f64()));
}

#[test]
fn ac02_product_cross_path() {
    let mut r = rng(2);
    let total = 200;
    let mut failures = 0;
    for i in 0..total {
        let m = 1 + (i % 2) as u32;
        let g = random_aut(&mut r, 0, m + 3, 12);
        let h = random_aut(&mut r, 0, m + 3, 12);
        let p = coset_product(m, &g, &h);
        let direct = product_formula_direct(m, p.n, &g, &h).unwrap();
        failures += usize::from(direct != p.rep);
    }
    report("AC2", "coset_product == product_formula_direct", failures, total, "");
}

#[test]
fn ac03_witnesses() {
    let mut r = rng(3);
    let total = 100;
    let mut failures = 0;
    for i in 0..total {
        let m = 1 + (i % 2) as u32;
        let g = random_aut(&mut r, 0, m + 3, 8);
        let h = random_aut(&mut r, 0, m + 3, 8);
        let n = canonical_n(m, [&g, &h]).max(1);
        let rr = random_aut(&mut r, m, m + n, 8);
        let q = random_aut(&mut r, m, m + n, 8);
        let base = forced_product(m, n, &g, &h);

        let rb = witness_left(m, n, &rr, &g, &h).unwrap();
        let left = forced_product(m, n, &g, &rr.compose(&h)) == rb.compose(&base);
        let qt = witness_right(m, n, &q, &g, &h).unwrap();
        let right = forced_product(m, n, &g.compose(&q), &h) == base.compose(&qt.inverse());
        let valid = [&rb, &qt]
            .iter()
            .all(|w| is_in_h(w, m) && verify_inverse_pair(w.fwd(), w.inv()));
        failures += usize::from(!(left && right && valid));
    }
    report("AC3", "left and right witness identities", failures, total, "");
}

#[test]
fn ac04_block_size_stability() {
    let mut r = rng(4);
    let total = 100;
    let mut failures = 0;
    for i in 0..total {
        let m = 1 + (i % 2) as u32;
        let p = 1 + ((i / 2) % 2) as u32;
        let g = random_aut(&mut r, 0, m + 3, 8);
        let h = random_aut(&mut r, 0, m + 3, 8);
        let n = canonical_n(m, [&g, &h]);
        let (pi, s) = stability_witness(m, n, p, &g, &h).unwrap();
        let lhs = pi.compose(&forced_product(m, n + p, &g, &h).compose(&s)).compose(&pi.inverse());
        let ok = lhs == forced_product(m, n, &g, &h) && is_in_h(&pi, m) && is_in_h(&s, m);
        failures += usize::from(!ok);
    }
    report("AC4", "N-stability conjugation identity", failures, total, "");
}

#[test]
fn ac05_representation_is_multiplicative() {
    let mut r = rng(5);
    let start = Instant::now();
    let mut failures = 0;
    let mut total = 0;
    for name in ["c2", "c3", "s3"] {
        let k = builtin_group(name).unwrap();
        let e = RepEngine::new(k.clone());
        let whole = Subgroup::whole(&k);
        for m in 1..=2u32 {
            for _ in 0..50 {
                let g = random_aut(&mut r, 0, m + 3, 8);
                let h = random_aut(&mut r, 0, m + 3, 8);
                let mu = m as usize;
                let tg = e.markov_matrix(&g, mu).unwrap();
                let th = e.markov_matrix(&h, mu).unwrap();
                let tp = e.markov_matrix(&coset_product(m, &g, &h).rep, mu).unwrap();
                let c = |t| e.compress_to_invariants(&whole, mu, t).unwrap();
                let ok = tp == &tg * &th
                    && c(&tp) == &c(&tg) * &c(&th)
                    && [&tg, &th, &tp].iter().all(|t| t.is_doubly_stochastic());
                failures += usize::from(!ok);
                total += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    let fast = elapsed < Duration::from_secs(60);
    report("AC5", "T(g o h) = T(g) T(h), also compressed for U = K", failures + usize::from(!fast), total,
        &format!(", {:.2}s (limit 60s)", elapsed.as_secs_f64()));
}

#[test]
fn ac06_associativity_at_matrix_level() {
    let mut r = rng(6);
    let total = 30;
    let mut failures = 0;
    let m = 1u32;
    for i in 0..total {
        let e = RepEngine::new(builtin_group(["c2", "c3", "s3"][i % 3]).unwrap());
        let g = random_aut(&mut r, 0, m + 2, 6);
        let h = random_aut(&mut r, 0, m + 2, 6);
        let f = random_aut(&mut r, 0, m + 2, 6);
        let left = coset_product(m, &coset_product(m, &g, &h).rep, &f).rep;
        let right = coset_product(m, &g, &coset_product(m, &h, &f).rep).rep;
        let triple = triple_product_disjoint(m, &g, &h, &f);
        let mats: Vec<_> = [&left, &right, &triple]
            .iter()
            .map(|a| e.markov_matrix(a, m as usize).unwrap())
            .collect();
        let ok = mats[0] == mats[1]
            && mats[1] == mats[2]
            && mats.iter().all(|t| t.is_doubly_stochastic());
        failures += usize::from(!ok);
    }
    report("AC6", "both bracketings and the triple formula agree", failures, total, "");
}

#[test]
fn ac07_weak_limit() {
    let e = RepEngine::new(builtin_group("c2").unwrap());
    let mut failures = 0;
    let mut total = 0;
    let mut detail = String::new();
    for m_cyl in 1..=2usize {
        let holds: Vec<bool> = (0..=m_cyl + 2)
            .map(|j| e.weak_limit_check(1, m_cyl, j).unwrap())
            .collect();
        let tail_ok = holds[m_cyl..].iter().all(|&b| b);
        let head_fails = holds[..m_cyl].iter().any(|&b| !b);
        failures += usize::from(!tail_ok) + usize::from(!head_fails);
        total += 2;
        detail.push_str(&format!(", M={m_cyl}: {holds:?}"));
    }
    report("AC7", "weak limit equality for j >= M, failure below", failures, total, &detail);
}

#[test]
fn ac08_haar_preservation() {
    let mut r = rng(8);
    let mut failures = 0;
    let mut total = 0;
    for name in ["c2", "s3"] {
        let e = RepEngine::new(builtin_group(name).unwrap());
        for _ in 0..100 {
            let g = random_aut(&mut r, 0, 5, 10);
            let n = g.support_bound() as usize;
            let ok = match e.action_map(&g, n) {
                Ok(map) => {
                    let mut sorted = map.clone();
                    sorted.sort_unstable();
                    sorted.iter().enumerate().all(|(i, &v)| i == v)
                }
                Err(_) => false,
            };
            let stochastic = e.markov_matrix(&g, 1).unwrap().is_doubly_stochastic();
            failures += usize::from(!(ok && stochastic));
            total += 1;
        }
    }
    report("AC8", "action_map is a bijection of K^N", failures, total, "");
}

#[test]
fn ac09_invertible_elements() {
    let mut r = rng(9);
    let total = 50;
    let mut failures = 0;
    for i in 0..total {
        let m = 2 + (i % 2) as u32;
        let g = random_aut(&mut r, 0, m, 10);
        let h = random_aut(&mut r, 0, m, 10);
        let p = coset_product(m, &g, &h);
        failures += usize::from(!(p.n == 0 && p.rep == g.compose(&h)));
    }
    report("AC9", "products inside Aut(F_m) are compositions", failures, total, "");
}

#[test]
fn ac10_star_vs_pair() {
    let mut r = rng(10);
    let total = 100;
    let mut failures = 0;
    for i in 0..total {
        let m = 1 + (i % 2) as u32;
        let g = random_aut(&mut r, 0, m + 3, 8);
        let h = random_aut(&mut r, 0, m + 3, 8);
        failures += usize::from(!star_vs_pair_check(m, &g, &h));
    }
    report("AC10", "star product matches pair product", failures, total, "");
}

#[test]
fn ac11_cli_golden_files() {
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let g = golden.join("g.json");
    let h = golden.join("h.json");
    let cases: [(&str, Vec<&std::ffi::OsStr>); 3] = [
        ("reduce.out", vec!["reduce".as_ref(), "x1 x1^-1".as_ref()]),
        (
            "coset_product.out",
            vec!["coset-product".as_ref(), "--m".as_ref(), "1".as_ref(), "--g".as_ref(), g.as_os_str(), "--h".as_ref(), h.as_os_str()],
        ),
        (
            "rep_matrix.out",
            vec!["rep-matrix".as_ref(), "--group".as_ref(), "c2".as_ref(), "--m".as_ref(), "1".as_ref(), "--g".as_ref(), g.as_os_str()],
        ),
    ];
    let mut failures = 0;
    for (file, args) in &cases {
        let out = Command::new(env!("CARGO_BIN_EXE_dcoset")).args(args).output().unwrap();
        let expected = std::fs::read(golden.join(file)).unwrap();
        failures += usize::from(!(out.status.code() == Some(0) && out.stdout == expected));
    }
    report("AC11", "CLI output is byte-identical to golden files", failures, cases.len(), "");
}
