//! Shared generators and reference checks for the integration suites.
//! Everything draws from a caller-seeded generator, so failures replay
//! byte for byte.

#![allow(dead_code)]

use std::ops::RangeInclusive;

use nilpotent::digraph::{Sign, SignedDigraph};
use nilpotent::dynamics::{Alphabet, Fds, LocalFunction};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_sign(rng: &mut ChaCha8Rng) -> Sign {
    match rng.gen_range(0..3u8) {
        0 => Sign::Positive,
        1 => Sign::Negative,
        _ => Sign::Null,
    }
}

/// A digraph with uniform arc density, loops included, signs uniform.
pub fn random_signed_digraph(rng: &mut ChaCha8Rng, n: RangeInclusive<usize>) -> SignedDigraph {
    let n = rng.gen_range(n);
    let density = rng.gen_range(0.1..0.5);
    let mut arcs = Vec::new();
    for u in 1..=n {
        for v in 1..=n {
            if rng.gen::<f64>() < density {
                arcs.push((u, v, random_sign(rng)));
            }
        }
    }
    SignedDigraph::from_arcs(n, &arcs)
}

/// A connected symmetric loop-less digraph: a random tree plus a few extra
/// doubled arcs, all positive.
pub fn random_connected_symmetric(rng: &mut ChaCha8Rng, n: RangeInclusive<usize>) -> SignedDigraph {
    let n = rng.gen_range(n);
    let mut g = SignedDigraph::new(n);
    for v in 2..=n {
        let u = rng.gen_range(1..v);
        g.add_arc(u, v, Sign::Positive).unwrap();
        g.add_arc(v, u, Sign::Positive).unwrap();
    }
    for _ in 0..n {
        let u = rng.gen_range(1..=n);
        let v = rng.gen_range(1..=n);
        if u != v && !g.has_arc(u, v) {
            g.add_arc(u, v, Sign::Positive).unwrap();
            g.add_arc(v, u, Sign::Positive).unwrap();
        }
    }
    g
}

/// A loop-less digraph in which every vertex has an in-arc, mixed signs.
pub fn random_fed_loopless(rng: &mut ChaCha8Rng, n: RangeInclusive<usize>) -> SignedDigraph {
    let n = rng.gen_range(n);
    let mut g = SignedDigraph::new(n.max(2));
    let n = g.n();
    for u in 1..=n {
        for v in 1..=n {
            if u != v && rng.gen::<f64>() < 0.3 {
                g.add_arc(u, v, random_sign(rng)).unwrap();
            }
        }
    }
    for v in 1..=n {
        if g.in_degree(v) == 0 {
            let u = if v == 1 { 2 } else { v - 1 };
            g.add_arc(u, v, random_sign(rng)).unwrap();
        }
    }
    g
}

/// A strong digraph containing a wheel: a spanning cycle keeps it strong, a
/// short cycle plus a center off that cycle forms the wheel, and extra arcs
/// add noise.
pub fn random_strong_wheeled(rng: &mut ChaCha8Rng, n: RangeInclusive<usize>) -> SignedDigraph {
    let n = rng.gen_range(n).max(4);
    let mut g = SignedDigraph::new(n);
    for v in 1..=n {
        let _ = g.add_arc(v, v % n + 1, random_sign(rng));
    }
    let m = rng.gen_range(2..=n - 1);
    let _ = g.add_arc(m, 1, random_sign(rng));
    let center = m + 1;
    for v in 1..=m {
        let _ = g.add_arc(center, v, random_sign(rng));
    }
    for _ in 0..n {
        let u = rng.gen_range(1..=n);
        let v = rng.gen_range(1..=n);
        if !g.has_arc(u, v) && rng.gen::<f64>() < 0.5 {
            let _ = g.add_arc(u, v, random_sign(rng));
        }
    }
    g
}

/// A host digraph together with a primitive strict spanning subgraph: the
/// subgraph is a full cycle plus a chord closing a coprime shorter cycle,
/// and the host adds at least one more arc.
pub fn random_primitive_pair(
    rng: &mut ChaCha8Rng,
    n: RangeInclusive<usize>,
) -> (SignedDigraph, SignedDigraph) {
    let n = rng.gen_range(n).max(3);
    let mut h = SignedDigraph::new(n);
    for v in 1..=n {
        h.add_arc(v, v % n + 1, random_sign(rng)).unwrap();
    }
    // Cycle lengths n and n - 1 are coprime, so h is primitive.
    h.add_arc(n - 1, 1, random_sign(rng)).unwrap();
    let mut g = h.clone();
    let extras = rng.gen_range(1..=3);
    let mut added = 0;
    while added < extras {
        let u = rng.gen_range(1..=n);
        let v = rng.gen_range(1..=n);
        if !g.has_arc(u, v) {
            g.add_arc(u, v, random_sign(rng)).unwrap();
            added += 1;
        }
    }
    (g, h)
}

/// The wheel on an m-cycle plus a switch pair a = m+2, b = m+3 and an
/// in-degree-one chain closing b back to a, n vertices in total.
pub fn wheel_gadget(m: usize, n: usize) -> SignedDigraph {
    let (v, a, b) = (m + 1, m + 2, m + 3);
    assert!(n >= b);
    let mut g = SignedDigraph::new(n);
    for i in 1..=m {
        g.add_arc(i, i % m + 1, Sign::Positive).unwrap();
        g.add_arc(v, i, Sign::Positive).unwrap();
    }
    g.add_arc(a, b, Sign::Positive).unwrap();
    for x in b..n {
        g.add_arc(x, x + 1, Sign::Positive).unwrap();
    }
    for (x, y) in [(n, a), (a, 1), (2, v), (v, a)] {
        g.add_arc(x, y, Sign::Positive).unwrap();
    }
    g
}

/// A random system: every component reads a small random input set through
/// a random table.
pub fn random_fds(
    rng: &mut ChaCha8Rng,
    size: u8,
    n: RangeInclusive<usize>,
    max_arity: usize,
) -> Fds {
    let n = rng.gen_range(n);
    let locals = (0..n)
        .map(|_| {
            let k = rng.gen_range(0..=max_arity.min(n));
            let mut inputs: Vec<usize> =
                sample(rng, n, k).into_iter().map(|j| j + 1).collect();
            inputs.sort_unstable();
            let table = (0..(size as usize).pow(k as u32))
                .map(|_| rng.gen_range(0..size))
                .collect();
            LocalFunction { inputs, table }
        })
        .collect();
    Fds::new(Alphabet::new(size), locals)
}

/// A random system whose dependencies only point at lower indices, so the
/// interaction graph is acyclic.
pub fn random_acyclic_fds(rng: &mut ChaCha8Rng, size: u8, n: RangeInclusive<usize>) -> Fds {
    let n = rng.gen_range(n);
    let locals = (1..=n)
        .map(|i| {
            let k = rng.gen_range(0..i.min(4));
            let mut inputs: Vec<usize> =
                sample(rng, i - 1, k).into_iter().map(|j| j + 1).collect();
            inputs.sort_unstable();
            let table = (0..(size as usize).pow(k as u32))
                .map(|_| rng.gen_range(0..size))
                .collect();
            LocalFunction { inputs, table }
        })
        .collect();
    Fds::new(Alphabet::new(size), locals)
}

/// Reference nilpotency check by iterated composition of the successor
/// table: returns the smallest k with f^k constant, scanning every state.
/// Only for systems whose whole state space fits in memory.
pub fn saturation_class(f: &Fds) -> Option<u32> {
    let states = f.state_count() as usize;
    let step: Vec<u64> = (0..states).map(|s| f.evaluate_packed(s as u64)).collect();
    let mut cur = step.clone();
    for k in 1..=states as u32 {
        if cur.iter().all(|&x| x == cur[0]) {
            return Some(k);
        }
        cur = cur.iter().map(|&x| step[x as usize]).collect();
    }
    None
}
