#![allow(dead_code)]
pub mod oracle;

use std::path::PathBuf;
use std::sync::Arc;

use quivkit::Algebra;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const EXAMPLES: [&str; 9] = [
    "lambda0",
    "lambda1",
    "lambda2",
    "lambda3",
    "lambda3_prime",
    "lambda3_doubleprime",
    "nakayama_c4",
    "fig2_m3",
    "fig2_m3_tilted",
];

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(format!("{name}.qv"))
}

pub fn text(name: &str) -> String {
    std::fs::read_to_string(data_path(name)).expect("bundled example exists")
}

pub fn load(name: &str) -> Arc<Algebra> {
    Arc::new(Algebra::from_text(&text(name), 64).expect("bundled example builds"))
}

pub fn build(text: &str) -> Arc<Algebra> {
    Arc::new(Algebra::from_text(text, 64).unwrap_or_else(|e| panic!("{e}\n{text}")))
}

/// The same presentation with the arrow declarations permuted.
pub fn shuffle_arrows(text: &str, rng: &mut impl Rng) -> String {
    let lines: Vec<&str> = text.lines().collect();
    let mut arrows: Vec<&str> = lines
        .iter()
        .copied()
        .filter(|l| l.trim_start().starts_with("arrow "))
        .collect();
    arrows.shuffle(rng);
    let mut next = arrows.into_iter();
    let mut out = String::new();
    for l in lines {
        let l = if l.trim_start().starts_with("arrow ") {
            next.next().unwrap()
        } else {
            l
        };
        out.push_str(l);
        out.push('\n');
    }
    out
}

/// All composable arrow sequences of length `len`, as (source, arrows).
pub fn paths_of_length(arrows: &[(usize, usize)], nv: usize, len: usize) -> Vec<(usize, Vec<usize>)> {
    let mut layer: Vec<(usize, usize, Vec<usize>)> = (0..nv).map(|v| (v, v, vec![])).collect();
    for _ in 0..len {
        let mut next = Vec::new();
        for (s, t, p) in &layer {
            for (a, &(x, y)) in arrows.iter().enumerate() {
                if x == *t {
                    let mut q = p.clone();
                    q.push(a);
                    next.push((*s, y, q));
                }
            }
        }
        layer = next;
    }
    layer.into_iter().map(|(s, _, p)| (s, p)).collect()
}

/// A random bound quiver algebra on `nv` vertices over ℚ. The ideal holds
/// some random monomial and commutativity relations of length 2 and all
/// paths of length `3` or `4`, so it is admissible by construction.
pub fn random_algebra_text(seed: u64, nv: usize, acyclic: bool) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arrows: Vec<(usize, usize)> = Vec::new();
    if acyclic {
        // A chain through all vertices plus a few forward shortcuts.
        arrows.extend((0..nv - 1).map(|v| (v, v + 1)));
        for _ in 0..rng.gen_range(1..=3) {
            let s = rng.gen_range(0..nv - 1);
            arrows.push((s, rng.gen_range(s + 1..nv)));
        }
    } else {
        for _ in 0..rng.gen_range(nv - 1..=nv + 2) {
            arrows.push((rng.gen_range(0..nv), rng.gen_range(0..nv)));
        }
    }
    if !acyclic && Digraph(&arrows, nv).is_acyclic() {
        // Close a cycle through the first arrow.
        let (s, t) = arrows[0];
        arrows.push((t, s));
    }
    let name = |a: usize| format!("a{a}");
    let mut rels: Vec<String> = Vec::new();
    let two = paths_of_length(&arrows, nv, 2);
    for (_, p) in &two {
        if rng.gen_bool(0.35) {
            rels.push(format!("{}*{}", name(p[0]), name(p[1])));
        }
    }
    for (i, (s, p)) in two.iter().enumerate() {
        for (t, q) in &two[i + 1..] {
            let (pe, qe) = (arrows[p[1]].1, arrows[q[1]].1);
            if s == t && pe == qe && rng.gen_bool(0.3) {
                let c = rng.gen_range(1..=3);
                rels.push(format!(
                    "{}*{} - {c}*{}*{}",
                    name(p[0]),
                    name(p[1]),
                    name(q[0]),
                    name(q[1])
                ));
            }
        }
    }
    let cut = rng.gen_range(3..=4);
    for (_, p) in paths_of_length(&arrows, nv, cut) {
        rels.push(p.iter().map(|&a| name(a)).collect::<Vec<_>>().join("*"));
    }
    let mut s = String::from("field Q\nquiver\n  vertices");
    for v in 0..nv {
        s.push_str(&format!(" v{v}"));
    }
    s.push('\n');
    for (a, (x, y)) in arrows.iter().enumerate() {
        s.push_str(&format!("  arrow {} v{x} -> v{y}\n", name(a)));
    }
    s.push_str("relations\n");
    for r in rels {
        s.push_str(&format!("  {r}\n"));
    }
    s
}

struct Digraph<'a>(&'a [(usize, usize)], usize);

impl Digraph<'_> {
    fn is_acyclic(&self) -> bool {
        // Kahn's algorithm; a loop never leaves the queue.
        let mut indeg = vec![0; self.1];
        for &(_, t) in self.0 {
            indeg[t] += 1;
        }
        let mut queue: Vec<usize> = (0..self.1).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop() {
            seen += 1;
            for &(s, t) in self.0 {
                if s == v {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        queue.push(t);
                    }
                }
            }
        }
        seen == self.1
    }
}

pub fn random_algebra(seed: u64, nv: usize, acyclic: bool) -> Arc<Algebra> {
    build(&random_algebra_text(seed, nv, acyclic))
}
