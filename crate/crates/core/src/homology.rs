//! Ideals as modules, homological supports, strongly-finite projective
//! dimension, the socle test for `fpd = 0`, and global dimension.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, SectionMap};
use crate::linalg::{is_zero_vec, Echelon};
use crate::module::FdModule;
use crate::quiver::{ArrowSet, VertexId};
use crate::resolution::{minimal_resolution, PdVerdict, Resolution};
use crate::tensor::{subbimodule, FdBimodule};
use crate::Caps;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// The two-sided ideal `⟨A + I⟩` as an echelon subspace of `Λ`: the span
/// of all normal forms of paths through `A`.
pub fn ideal_basis(algebra: &Algebra, set: &ArrowSet) -> Echelon {
    let f = algebra.field();
    let mut basis = Echelon::new(f, algebra.dim());
    let mut queue = Vec::new();
    for &a in set {
        let v = algebra.arrow_vec(a);
        if basis.insert(v.clone()) {
            queue.push(v);
        }
    }
    while let Some(x) = queue.pop() {
        for a in 0..algebra.num_arrows() {
            for y in [algebra.mul_arrow_left(a, &x), algebra.mul_arrow_right(&x, a)] {
                if !is_zero_vec(&y) && basis.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
    }
    basis
}

/// `⟨A + I⟩` as a `Λ`-bimodule.
pub fn ideal_bimodule(algebra: &Arc<Algebra>, set: &ArrowSet) -> FdBimodule {
    subbimodule(algebra, &ideal_basis(algebra, set))
}

/// `⟨A + I⟩` as a one-sided module; the left module lives over `Λ^op`.
pub fn ideal_module(algebra: &Arc<Algebra>, set: &ArrowSet, side: Side) -> FdModule {
    let b = ideal_bimodule(algebra, set);
    match side {
        Side::Left => b.left_module(),
        Side::Right => b.right_module(),
    }
}

/// `K·K = 0` for `K = ⟨A + I⟩`. Since `K` is generated by `A`, it suffices
/// that `x·a = 0` for every basis vector `x` of `K` and `a ∈ A`.
pub fn ideal_square_zero(algebra: &Algebra, set: &ArrowSet) -> bool {
    let k = ideal_basis(algebra, set);
    k.rows()
        .iter()
        .all(|x| set.iter().all(|&a| is_zero_vec(&algebra.mul_arrow_right(x, a))))
}

/// The radical `J(Λ)` as a bimodule over the semisimple quotient.
pub fn radical_over_semisimple(algebra: &Arc<Algebra>) -> (Arc<Algebra>, FdBimodule) {
    let all: ArrowSet = (0..algebra.num_arrows()).collect();
    let (gamma, iota) = algebra
        .canonical_quotient(&all)
        .expect("the set of all arrows is pre-removable");
    let gamma = Arc::new(gamma);
    let j = ideal_bimodule(algebra, &all).restrict((&gamma, &iota), (&gamma, &iota));
    (gamma, j)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SupportReport {
    pub supp: Vec<VertexId>,
    pub supp_by_step: Vec<Vec<VertexId>>,
    /// `None` unless the resolution is finite.
    pub supp_infinity: Option<Vec<VertexId>>,
}

pub fn homological_supports(m: &FdModule, caps: &Caps) -> SupportReport {
    supports_of(m, &minimal_resolution(m, caps))
}

pub fn supports_of(m: &FdModule, res: &Resolution) -> SupportReport {
    let supp_by_step: Vec<Vec<VertexId>> = res
        .betti()
        .iter()
        .map(|b| (0..b.len()).filter(|&v| b[v] > 0).collect())
        .collect();
    let supp_infinity = res.verdict.is_finite().then(|| {
        let mut all: Vec<VertexId> = supp_by_step.iter().flatten().copied().collect();
        all.sort_unstable();
        all.dedup();
        all
    });
    SupportReport {
        supp: m.support(),
        supp_by_step,
        supp_infinity,
    }
}

/// Strongly-finite right projective dimension: the right pd is finite and
/// no vertex of the left support occurs in the right resolution. `None`
/// when the right pd is undecided within the caps.
pub fn strongly_finite_check(m: &FdBimodule, caps: &Caps) -> Option<bool> {
    let right = m.right_module();
    let res = minimal_resolution(&right, caps);
    match &res.verdict {
        PdVerdict::Finite { .. } => {
            let inf = supports_of(&right, &res).supp_infinity.unwrap_or_default();
            let left = m.left_support();
            Some(!inf.iter().any(|v| left.contains(v)))
        }
        PdVerdict::InfiniteCertified { .. } => Some(false),
        PdVerdict::UnknownBeyond { .. } => None,
    }
}

/// Whether some nonzero `z ∈ Λ e_i` has `z·a = 0` for every arrow `a`, so
/// that `zΛ` is a simple right ideal at `i`.
pub fn embeds_simple_right(algebra: &Arc<Algebra>, i: VertexId) -> bool {
    // Λ e_i is the vertex-i part of the regular right module, and such z
    // form its socle there.
    !regular_module(algebra).socle_at(i).is_empty()
}

/// `Λ_Λ = ⊕_v e_v Λ`.
pub fn regular_module(algebra: &Arc<Algebra>) -> FdModule {
    (0..algebra.num_vertices()).fold(FdModule::zero(algebra.clone()), |acc, v| {
        acc.direct_sum(&FdModule::projective(algebra.clone(), v))
    })
}

/// The maximum projective dimension over the left simple modules.
pub fn global_dimension(algebra: &Algebra, caps: &Caps) -> PdVerdict {
    let op = algebra.opposite();
    let verdicts: Vec<PdVerdict> = (0..algebra.num_vertices())
        .into_par_iter()
        .map(|v| minimal_resolution(&FdModule::simple(op.clone(), v), caps).verdict)
        .collect();
    combine_max(verdicts)
}

/// Finite only if all are finite; an infinite verdict wins over unknown ones.
pub fn combine_max(verdicts: Vec<PdVerdict>) -> PdVerdict {
    let mut best = PdVerdict::Finite { n: 0 };
    for v in verdicts {
        best = match (&best, &v) {
            (PdVerdict::InfiniteCertified { .. }, _) => best,
            (_, PdVerdict::InfiniteCertified { .. }) => v,
            (PdVerdict::UnknownBeyond { .. }, _) => best,
            (_, PdVerdict::UnknownBeyond { .. }) => v,
            (PdVerdict::Finite { n: a }, PdVerdict::Finite { n: b }) => PdVerdict::Finite { n: (*a).max(*b) },
        };
    }
    best
}

/// Restriction of scalars along the section `ι: Γ → Λ`. Arrows of `Γ` map
/// to arrows of `Λ`, so the action of each arrow is kept as is.
pub fn restrict_along_section(m: &FdModule, gamma: &Arc<Algebra>, iota: &SectionMap) -> FdModule {
    let actions = iota.kept.iter().map(|&a| m.actions[a].clone()).collect();
    FdModule::new(gamma.clone(), m.dims.clone(), actions).expect("same vertices")
}
