//! Minimal projective resolutions and projective-dimension verdicts.

use serde::Serialize;

use crate::field::Scalar;
use crate::iso::{is_isomorphism, module_iso, IsoResult, Morphism};
use crate::linalg::{axpy, zero_vec, Echelon, Vector};
use crate::module::{projective_cover, row_sources, Cover, FdModule};
use crate::quiver::{ArrowId, VertexId};
use crate::Caps;

/// How many further syzygies are searched for periodicity after the
/// squared-zero-loop criterion has already settled infinity.
pub const LOOP_GRACE_STEPS: usize = 8;

/// The periodicity search after a loop hit also stops once a syzygy is
/// larger than this.
pub const LOOP_GRACE_MAX_DIM: usize = 256;

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum InfinityWitness {
    /// `Ω^a M ≅ Ω^b M`, with the isomorphism re-verified.
    #[serde(rename_all = "camelCase")]
    Periodic {
        #[serde(skip)]
        iso: Morphism,
    },
    /// Some `m ∉ rad Ω^a M` with `m·λ = 0` for a loop `λ` with `λ² = 0`.
    #[serde(rename_all = "camelCase")]
    SquareZeroLoop {
        #[serde(rename = "loop")]
        loop_arrow: String,
        vertex: String,
        #[serde(skip)]
        element: Vector,
    },
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind")]
pub enum PdVerdict {
    Finite {
        n: usize,
    },
    #[serde(rename_all = "camelCase")]
    InfiniteCertified {
        a: usize,
        b: usize,
        witness: InfinityWitness,
    },
    #[serde(rename_all = "camelCase")]
    UnknownBeyond {
        cap: usize,
    },
}

impl PdVerdict {
    pub fn is_finite(&self) -> bool {
        matches!(self, PdVerdict::Finite { .. })
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, PdVerdict::InfiniteCertified { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, PdVerdict::UnknownBeyond { .. })
    }

    pub fn finite_value(&self) -> Option<usize> {
        match self {
            PdVerdict::Finite { n } => Some(*n),
            _ => None,
        }
    }

    pub fn is_periodic(&self) -> bool {
        matches!(
            self,
            PdVerdict::InfiniteCertified {
                witness: InfinityWitness::Periodic { .. },
                ..
            }
        )
    }

    pub fn describe(&self) -> String {
        match self {
            PdVerdict::Finite { n } => format!("Finite({n})"),
            PdVerdict::InfiniteCertified { a, b, witness } => match witness {
                InfinityWitness::Periodic { .. } => format!("InfiniteCertified(Ω^{a} ≅ Ω^{b})"),
                InfinityWitness::SquareZeroLoop { loop_arrow, .. } => {
                    format!("InfiniteCertified(loop {loop_arrow} at Ω^{a})")
                }
            },
            PdVerdict::UnknownBeyond { cap } => format!("UnknownBeyond({cap})"),
        }
    }
}

/// One term `P_j` of the resolution.
#[derive(Clone, Debug)]
pub struct ResolutionStep {
    /// Vertex of each indecomposable summand `e_v Λ` of `P_j`.
    pub generators: Vec<VertexId>,
    /// Image of each generator in `P_{j-1}` (in `M` for `j = 0`), as a
    /// vector in the component at the generator's vertex.
    pub images: Vec<Vector>,
    /// For `j ≥ 1`: the same images as combinations `Σ c · (g', b)` of the
    /// previous generators `g'` times nontips `b`.
    pub terms: Vec<Vec<(usize, usize, Scalar)>>,
    /// `P_j` itself, with the block offset of each generator.
    pub projective: FdModule,
    pub block_offset: Vec<Vec<usize>>,
}

impl ResolutionStep {
    pub fn betti(&self, nv: usize) -> Vec<usize> {
        let mut b = vec![0; nv];
        for &v in &self.generators {
            b[v] += 1;
        }
        b
    }
}

#[derive(Clone, Debug)]
pub struct Resolution {
    pub module: FdModule,
    pub steps: Vec<ResolutionStep>,
    /// `Ω^0 M = M, Ω^1 M, …` as computed; the zero syzygy ending a finite
    /// resolution is not stored.
    pub syzygies: Vec<FdModule>,
    /// Their dimension vectors.
    pub syzygy_dims: Vec<Vec<usize>>,
    pub verdict: PdVerdict,
}

impl Resolution {
    pub fn betti(&self) -> Vec<Vec<usize>> {
        let nv = self.module.dims.len();
        self.steps.iter().map(|s| s.betti(nv)).collect()
    }

    /// Number of terms known to be exact (all computed steps).
    pub fn certified_steps(&self) -> usize {
        self.steps.len()
    }

    /// Checks that every boundary lands in the radical of the previous term.
    pub fn is_minimal(&self) -> bool {
        let algebra = &self.module.algebra;
        self.steps.iter().skip(1).all(|s| {
            s.terms
                .iter()
                .all(|t| t.iter().all(|(_, b, _)| !algebra.basis()[*b].is_trivial()))
        })
    }

    /// Checks `d_{j-1} ∘ d_j = 0` for all consecutive steps.
    pub fn boundaries_compose_to_zero(&self) -> bool {
        let algebra = &self.module.algebra;
        for j in 1..self.steps.len() {
            let prev = &self.steps[j - 1];
            let target: &FdModule = if j == 1 {
                &self.module
            } else {
                &self.steps[j - 2].projective
            };
            for (g, terms) in self.steps[j].terms.iter().enumerate() {
                let v = self.steps[j].generators[g];
                let mut acc = crate::linalg::zero_vec(algebra.field(), target.dims[v]);
                for (gp, b, c) in terms {
                    let img = target.act_path(&prev.images[*gp], &algebra.basis()[*b]);
                    crate::linalg::axpy(&mut acc, c, &img);
                }
                if !crate::linalg::is_zero_vec(&acc) {
                    return false;
                }
            }
        }
        true
    }
}

/// Squared-zero loops of the module's algebra, with their vertex.
fn square_zero_loops(m: &FdModule) -> Vec<(ArrowId, VertexId)> {
    let algebra = &m.algebra;
    let q = algebra.quiver();
    (0..q.num_arrows())
        .filter(|&a| q.is_loop(a))
        .filter(|&a| {
            let p = q.path(&[a, a]).unwrap();
            algebra.gb.normal_form_path(&p).is_zero()
        })
        .map(|a| (a, q.arrows[a].source))
        .collect()
}

/// Looks for `m ∈ M e_i`, `m ∉ rad M`, with `m·λ = 0` for a squared-zero
/// loop `λ` at `i`; such an element forces infinite projective dimension.
pub fn square_zero_loop_obstruction(m: &FdModule) -> Option<(ArrowId, VertexId, Vector)> {
    for (lam, i) in square_zero_loops(m) {
        if m.dims[i] == 0 {
            continue;
        }
        let rad = m.radical_at(i);
        for k in m.actions[lam].left_kernel() {
            if !rad.contains(&k) {
                return Some((lam, i, k));
            }
        }
    }
    None
}

/// Covers `syz` and expresses the generators in the previous term, when
/// `prev` (the previous step and the kernel embedding `syz` into it) is given.
fn next_step(syz: &FdModule, prev: Option<(&ResolutionStep, &[Echelon])>) -> (ResolutionStep, Cover) {
    let algebra = &syz.algebra;
    let cover = projective_cover(syz);
    let generators: Vec<VertexId> = cover.generators.iter().map(|(v, _)| *v).collect();
    let (images, terms) = match prev {
        None => (cover.generators.iter().map(|(_, x)| x.clone()).collect(), Vec::new()),
        Some((prev, kernel)) => {
            let images: Vec<Vector> = cover
                .generators
                .iter()
                .map(|(v, x)| {
                    let mut out = zero_vec(algebra.field(), kernel[*v].width());
                    for (c, row) in x.iter().zip(kernel[*v].rows()) {
                        axpy(&mut out, c, row);
                    }
                    out
                })
                .collect();
            let terms = images
                .iter()
                .zip(&generators)
                .map(|(x, &v)| {
                    let rows = row_sources(algebra, &prev.generators, &prev.block_offset, v, x.len());
                    x.iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(pos, c)| (rows[pos].0, rows[pos].1, c.clone()))
                        .collect()
                })
                .collect();
            (images, terms)
        }
    };
    let step = ResolutionStep {
        generators,
        images,
        terms,
        projective: cover.projective.clone(),
        block_offset: cover.block_offset.clone(),
    };
    (step, cover)
}

/// The first `count` terms of the minimal resolution, without any
/// infinity detection. Fewer are returned when the resolution stops.
/// `None` if a syzygy grows beyond `max_dim`.
pub fn resolve_steps(m: &FdModule, count: usize, max_dim: usize) -> Option<Vec<ResolutionStep>> {
    let mut steps: Vec<ResolutionStep> = Vec::new();
    let mut syz = m.clone();
    let mut prev_kernel: Option<Vec<Echelon>> = None;
    while steps.len() < count && !syz.is_zero() {
        if syz.dim() > max_dim {
            return None;
        }
        let (step, cover) = next_step(&syz, steps.last().zip(prev_kernel.as_deref()));
        syz = cover.syzygy();
        prev_kernel = Some(cover.kernel);
        steps.push(step);
    }
    Some(steps)
}

pub fn minimal_resolution(m: &FdModule, caps: &Caps) -> Resolution {
    let algebra = m.algebra.clone();
    let q = algebra.quiver();
    let mut syz: Vec<FdModule> = vec![m.clone()];
    let mut steps: Vec<ResolutionStep> = Vec::new();
    let finish = |steps, syz: &[FdModule], verdict| Resolution {
        module: m.clone(),
        steps,
        syzygies: syz.to_vec(),
        syzygy_dims: syz.iter().map(|s| s.dims.clone()).collect(),
        verdict,
    };
    if m.is_zero() {
        return finish(steps, &syz, PdVerdict::Finite { n: 0 });
    }
    let mut loop_hit = square_zero_loop_obstruction(m).map(|h| (0usize, h));
    let loop_verdict = |hit: &(usize, (ArrowId, VertexId, Vector))| {
        let (a, (lam, v, el)) = hit;
        PdVerdict::InfiniteCertified {
            a: *a,
            b: *a,
            witness: InfinityWitness::SquareZeroLoop {
                loop_arrow: q.arrows[*lam].name.clone(),
                vertex: q.vertices[*v].clone(),
                element: el.clone(),
            },
        }
    };
    // Kernel of the previous cover: Ω^j as a subspace of P_{j-1}.
    let mut prev_kernel: Option<Vec<Echelon>> = None;
    let mut j = 0;
    loop {
        if j >= caps.resolution || syz[j].dim() > caps.max_module_dim {
            let verdict = match &loop_hit {
                Some(hit) => loop_verdict(hit),
                None => PdVerdict::UnknownBeyond { cap: j },
            };
            return finish(steps, &syz, verdict);
        }
        let (step, cover) = next_step(&syz[j], steps.last().zip(prev_kernel.as_deref()));
        steps.push(step);
        let omega = cover.syzygy();
        if omega.is_zero() {
            return finish(steps, &syz, PdVerdict::Finite { n: j });
        }
        for a in 0..=j {
            if syz[a].dims != omega.dims {
                continue;
            }
            if let IsoResult::CertifiedYes(iso) = module_iso(&syz[a], &omega, caps.seed) {
                debug_assert!(is_isomorphism(&syz[a], &omega, &iso));
                syz.push(omega);
                return finish(
                    steps,
                    &syz,
                    PdVerdict::InfiniteCertified {
                        a,
                        b: j + 1,
                        witness: InfinityWitness::Periodic { iso },
                    },
                );
            }
        }
        if loop_hit.is_none() {
            loop_hit = square_zero_loop_obstruction(&omega).map(|h| (j + 1, h));
        }
        syz.push(omega);
        if let Some(hit) = &loop_hit {
            if j + 1 >= hit.0 + LOOP_GRACE_STEPS || syz[j + 1].dim() > LOOP_GRACE_MAX_DIM {
                return finish(steps, &syz, loop_verdict(hit));
            }
        }
        prev_kernel = Some(cover.kernel);
        j += 1;
    }
}
