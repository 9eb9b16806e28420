#![allow(dead_code)]

use bwtkit::oracle::{naive_bwt, Collection};
use bwtkit::succinct::Symbol;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SIGMAS: [usize; 4] = [2, 4, 8, 26];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// 1–`max_strings` strings of total length (terminators included) at most
/// `max_total`, over letters `1..sigma`. Some strings repeat earlier ones or
/// share their suffixes, so equal suffixes across strings are common.
pub fn random_collection(
    rng: &mut ChaCha8Rng,
    sigma: usize,
    max_strings: usize,
    max_len: usize,
    max_total: usize,
) -> Collection {
    let m = rng.gen_range(1..=max_strings);
    let mut bodies: Vec<Vec<Symbol>> = Vec::with_capacity(m);
    let mut total = 0;
    for _ in 0..m {
        let body: Vec<Symbol> = match rng.gen_range(0..10) {
            0 | 1 if !bodies.is_empty() => bodies.choose(rng).unwrap().clone(),
            2 if !bodies.is_empty() => {
                let other = bodies.choose(rng).unwrap();
                let cut = rng.gen_range(0..=other.len());
                let mut b: Vec<Symbol> = (0..rng.gen_range(0..4))
                    .map(|_| rng.gen_range(1..sigma) as Symbol)
                    .collect();
                b.extend_from_slice(&other[cut..]);
                b
            }
            3 => {
                // periodic body: deep repeats
                let period = rng.gen_range(1..=3);
                let unit: Vec<Symbol> = (0..period)
                    .map(|_| rng.gen_range(1..sigma) as Symbol)
                    .collect();
                let len = rng.gen_range(0..max_len);
                (0..len).map(|k| unit[k % period]).collect()
            }
            _ => {
                let len = rng.gen_range(0..max_len);
                (0..len)
                    .map(|_| rng.gen_range(1..sigma) as Symbol)
                    .collect()
            }
        };
        let mut body = body;
        body.truncate(max_len - 1);
        if total + body.len() + 1 > max_total {
            break;
        }
        total += body.len() + 1;
        bodies.push(body);
    }
    if bodies.is_empty() {
        bodies.push(Vec::new());
    }
    Collection::from_bodies(bodies).unwrap()
}

/// The corpus shared by the LCP criteria: `count` collections with
/// σ cycling through [`SIGMAS`], 1–40 strings of length 1–50.
pub fn lcp_corpus(seed: u64, count: usize) -> Vec<(usize, Collection)> {
    let mut r = rng(seed);
    (0..count)
        .map(|k| {
            let sigma = SIGMAS[k % SIGMAS.len()];
            (sigma, random_collection(&mut r, sigma, 40, 50, 2000))
        })
        .collect()
}

/// Pairs of collections over a common alphabet with combined length ≤ 2000.
pub fn merge_corpus(seed: u64, count: usize) -> Vec<(usize, Collection, Collection)> {
    let mut r = rng(seed);
    (0..count)
        .map(|k| {
            let sigma = SIGMAS[k % SIGMAS.len()];
            let c1 = random_collection(&mut r, sigma, 20, 50, 1000);
            let c2 = if r.gen_bool(0.15) {
                c1.clone()
            } else {
                random_collection(&mut r, sigma, 20, 50, 1000)
            };
            (sigma, c1, c2)
        })
        .collect()
}

/// Single texts of length ≤ `max_n` (terminator included).
pub fn random_text(r: &mut ChaCha8Rng, sigma: usize, max_n: usize) -> Vec<Symbol> {
    let n = r.gen_range(1..=max_n);
    let mut text: Vec<Symbol> = if r.gen_bool(0.3) {
        let period = r.gen_range(1..=6);
        let unit: Vec<Symbol> = (0..period)
            .map(|_| r.gen_range(1..sigma) as Symbol)
            .collect();
        (0..n - 1)
            .map(|k| {
                if r.gen_bool(0.02) {
                    r.gen_range(1..sigma) as Symbol
                } else {
                    unit[k % period]
                }
            })
            .collect()
    } else {
        (0..n - 1)
            .map(|_| r.gen_range(1..sigma) as Symbol)
            .collect()
    };
    text.push(0);
    text
}

/// Random DNA collection over `#ACGT` (or `#ACGNT` with `with_n`).
pub fn dna_collection(r: &mut ChaCha8Rng, with_n: bool, max_total: usize) -> Collection {
    let letters = if with_n { 5 } else { 4 };
    let mut bodies: Vec<Vec<Symbol>> = Vec::new();
    let mut total = 0;
    loop {
        let body: Vec<Symbol> = if !bodies.is_empty() && r.gen_bool(0.1) {
            bodies.choose(r).unwrap().clone()
        } else {
            let len = r.gen_range(0..60);
            (0..len)
                .map(|_| r.gen_range(1..=letters) as Symbol)
                .collect()
        };
        if total + body.len() + 1 > max_total && !bodies.is_empty() {
            break;
        }
        total += body.len() + 1;
        bodies.push(body);
    }
    Collection::from_bodies(bodies).unwrap()
}

pub fn bwt_of(c: &Collection) -> Vec<Symbol> {
    naive_bwt(c)
}
