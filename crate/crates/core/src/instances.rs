//! Deterministic generators of random graph instances for the validation
//! suites: balanced cycles with prescribed source structure, families of
//! cycles sharing a path with chosen balance per cycle, and free-form theta
//! graphs. Everything is driven by an explicit seeded generator so test
//! runs are reproducible.

use crate::graph::WeightedOrientedGraph;

/// splitmix64 stream; small, fast, and stable across platforms.
#[derive(Debug, Clone)]
pub struct SplitMix(pub u64);

impl SplitMix {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform value in `[0, n)`.
    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    /// Uniform value in `[lo, hi]`.
    pub fn range(&mut self, lo: u64, hi: u64) -> u64 {
        lo + self.below(hi - lo + 1)
    }

    pub fn chance(&mut self, num: u64, den: u64) -> bool {
        self.below(den) < num
    }
}

/// Edge as (tail position, head position) over vertex positions `0..n`.
type Arrow = (usize, usize);

fn build(n_vertices: usize, weights: &[u64], arrows: &[Arrow]) -> WeightedOrientedGraph {
    debug_assert_eq!(weights.len(), n_vertices);
    WeightedOrientedGraph::build(
        (0..n_vertices)
            .map(|i| (format!("v{}", i + 1), weights[i]))
            .collect(),
        arrows
            .iter()
            .enumerate()
            .map(|(j, &(t, h))| {
                (
                    format!("e{}", j + 1),
                    format!("v{}", t + 1),
                    format!("v{}", h + 1),
                )
            })
            .collect(),
    )
    .expect("generated graphs satisfy the invariants")
}

/// Passthrough sides of a cyclic orientation: vertex positions whose weight
/// multiplies the arrival (resp. departure) product of the balance
/// condition. The cycle is balanced iff the two weight products agree.
fn passthrough_sides(arrows: &[Arrow], cycle: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let n = cycle.len();
    let mut with = Vec::new();
    let mut against = Vec::new();
    for i in 0..n {
        let v = cycle[i];
        let e_in = arrows[(i + n - 1) % n];
        let e_out = arrows[i];
        let head_in = e_in.1 == v;
        let head_out = e_out.1 == v;
        if head_in && !head_out {
            with.push(v);
        } else if !head_in && head_out {
            against.push(v);
        }
    }
    (with, against)
}

/// Assigns weights to the two passthrough sides so their products agree:
/// matching positions receive equal random values, surplus positions get 1.
fn balance_weights(
    rng: &mut SplitMix,
    weights: &mut [u64],
    with: &[usize],
    against: &[usize],
    max_weight: u64,
) {
    let k = with.len().min(against.len());
    for i in 0..k {
        let w = rng.range(1, max_weight);
        weights[with[i]] = w;
        weights[against[i]] = w;
    }
    for &v in with.iter().skip(k).chain(against.iter().skip(k)) {
        weights[v] = 1;
    }
}

/// Builds the arrow list of a standalone cycle `v0 - v1 - ... - v_{n-1}`
/// with random orientations.
fn random_cycle_arrows(rng: &mut SplitMix, n: usize) -> Vec<Arrow> {
    (0..n)
        .map(|i| {
            let j = (i + 1) % n;
            if rng.chance(1, 2) {
                (i, j)
            } else {
                (j, i)
            }
        })
        .collect()
}

/// Random balanced cycle of even length in `[min_len, max_len]` with
/// weights up to `max_weight`.
pub fn balanced_cycle(
    rng: &mut SplitMix,
    min_len: usize,
    max_len: usize,
    max_weight: u64,
) -> WeightedOrientedGraph {
    let mut n = rng.range(min_len as u64, max_len as u64) as usize;
    if n % 2 == 1 {
        n += 1;
    }
    let arrows = random_cycle_arrows(rng, n);
    let cycle: Vec<usize> = (0..n).collect();
    let (with, against) = passthrough_sides(&arrows, &cycle);
    let mut weights: Vec<u64> = (0..n).map(|_| rng.range(1, max_weight)).collect();
    balance_weights(rng, &mut weights, &with, &against, max_weight);
    build(n, &weights, &arrows)
}

/// Balanced cycle with exactly one source (and one sink): edges flow from
/// the source both ways around to the sink at position 0.
pub fn single_source_balanced_cycle(
    rng: &mut SplitMix,
    min_len: usize,
    max_len: usize,
    max_weight: u64,
) -> (WeightedOrientedGraph, usize) {
    let mut n = rng.range(min_len as u64, max_len as u64) as usize;
    if n % 2 == 1 {
        n += 1;
    }
    let source = rng.range(1, n as u64 - 1) as usize;
    let arrows: Vec<Arrow> = (0..n)
        .map(|i| {
            let j = (i + 1) % n;
            if i < source {
                (j, i) // flowing back toward the sink at position 0
            } else {
                (i, j) // flowing forward toward the sink
            }
        })
        .collect();
    let cycle: Vec<usize> = (0..n).collect();
    let (with, against) = passthrough_sides(&arrows, &cycle);
    let mut weights: Vec<u64> = (0..n).map(|_| rng.range(1, max_weight)).collect();
    balance_weights(rng, &mut weights, &with, &against, max_weight);
    (build(n, &weights, &arrows), source)
}

/// Cycles sharing a path: an alternating path of length `path_len` between
/// two endpoints plus one arc per entry of `arc_balanced`, each arc made
/// balanced or unbalanced as requested. Endpoints are a global source and a
/// global sink, so every cycle's balance depends only on its own arc.
///
/// Edge numbering: path edges first, then each arc in order, walked from
/// the far endpoint back to the start.
pub fn shared_path_family(
    rng: &mut SplitMix,
    path_len: usize,
    arc_balanced: &[bool],
    max_weight: u64,
) -> WeightedOrientedGraph {
    assert!(path_len >= 1 && !arc_balanced.is_empty());
    let k = path_len;
    // vertices: path 0..=k, then arc interiors
    let mut arrows: Vec<Arrow> = Vec::new();
    // alternating path: interior path vertices are sources or sinks
    for i in 0..k {
        if i % 2 == 0 {
            arrows.push((i, i + 1));
        } else {
            arrows.push((i + 1, i));
        }
    }
    // endpoint roles: position 0 is a tail on its path edge, hence a global
    // source; the far endpoint matches its last path edge's direction
    let far = k;
    let far_is_sink = k % 2 == 1;
    let mut n_vertices = k + 1;
    let mut arc_edge_ranges: Vec<(usize, usize)> = Vec::new();
    let mut arc_interiors: Vec<Vec<usize>> = Vec::new();
    for &balanced in arc_balanced {
        // only even cycles can be balanced, so balanced arcs need length
        // congruent to the path length mod 2; arcs meant to be unbalanced
        // need length at least 3 so a passthrough vertex exists
        let len = if balanced {
            if k.is_multiple_of(2) {
                2 * rng.range(1, 2) as usize
            } else {
                3
            }
        } else {
            rng.range(3, 4) as usize
        };
        let first_interior = n_vertices;
        let interiors: Vec<usize> = (0..len - 1).map(|j| first_interior + j).collect();
        n_vertices += len - 1;
        let start_edge = arrows.len();
        // walk far -> interiors -> start(0)
        let mut chain = vec![far];
        chain.extend(&interiors);
        chain.push(0);
        for w in chain.windows(2) {
            let (x, y) = (w[0], w[1]);
            let arrow = if x == far {
                if far_is_sink {
                    (y, x)
                } else {
                    (x, y)
                }
            } else if y == 0 {
                (y, x) // the start endpoint stays a source
            } else if rng.chance(1, 2) {
                (x, y)
            } else {
                (y, x)
            };
            arrows.push(arrow);
        }
        arc_edge_ranges.push((start_edge, arrows.len()));
        arc_interiors.push(interiors);
    }
    let mut weights: Vec<u64> = (0..n_vertices).map(|_| rng.range(1, max_weight)).collect();
    // fix each cycle's balance through its own arc interiors
    for (arc_idx, &want_balanced) in arc_balanced.iter().enumerate() {
        let (e_lo, e_hi) = arc_edge_ranges[arc_idx];
        // cycle traversal: path from 0 to far, then the arc back to 0
        let mut cycle: Vec<usize> = (0..=k).collect();
        cycle.extend(&arc_interiors[arc_idx]);
        let mut cycle_arrows: Vec<Arrow> = (0..k).map(|i| arrows[i]).collect();
        cycle_arrows.extend(arrows[e_lo..e_hi].iter().copied());
        let (mut with, mut against) = passthrough_sides(&cycle_arrows, &cycle);
        if !want_balanced && with.is_empty() && against.is_empty() {
            // fully alternating arc: flip one free interior edge so a
            // passthrough vertex appears and the arc can be unbalanced
            let flip = e_lo + 1;
            arrows[flip] = (arrows[flip].1, arrows[flip].0);
            cycle_arrows = (0..k).map(|i| arrows[i]).collect();
            cycle_arrows.extend(arrows[e_lo..e_hi].iter().copied());
            (with, against) = passthrough_sides(&cycle_arrows, &cycle);
        }
        if want_balanced {
            balance_weights(rng, &mut weights, &with, &against, max_weight);
        } else {
            // only one weight value of a fixed passthrough vertex can
            // balance the two products, so stepping it terminates fast
            let mut tries = 0;
            loop {
                let prod = |side: &[usize]| -> u64 { side.iter().map(|&v| weights[v]).product() };
                if prod(&with) != prod(&against) {
                    break;
                }
                let &v = with
                    .first()
                    .or(against.first())
                    .expect("length >= 3 arcs have a passthrough vertex");
                weights[v] = weights[v] % max_weight + 1;
                tries += 1;
                assert!(tries < 100);
            }
        }
    }
    build(n_vertices, &weights, &arrows)
}

/// Free-form theta graph: two cycles sharing a path, all orientations and
/// weights random. Useful when any balance pattern is acceptable.
pub fn random_theta(rng: &mut SplitMix, max_weight: u64) -> WeightedOrientedGraph {
    let k = rng.range(1, 3) as usize;
    let l1 = rng.range(2, 4) as usize;
    let l2 = rng.range(2, 4) as usize;
    let mut arrows: Vec<Arrow> = Vec::new();
    let mut n = k + 1;
    let orient = |rng: &mut SplitMix, x: usize, y: usize| -> Arrow {
        if rng.chance(1, 2) {
            (x, y)
        } else {
            (y, x)
        }
    };
    for i in 0..k {
        arrows.push(orient(rng, i, i + 1));
    }
    for len in [l1, l2] {
        let mut prev = k;
        for _ in 0..len - 1 {
            arrows.push(orient(rng, prev, n));
            prev = n;
            n += 1;
        }
        arrows.push(orient(rng, prev, 0));
    }
    let weights: Vec<u64> = (0..n).map(|_| rng.range(1, max_weight)).collect();
    build(n, &weights, &arrows)
}
