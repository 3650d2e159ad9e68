//! Removability of arrow sets and the reductions built on it: arrow reduced
//! and arrow irredundant versions, exclusion criteria, and the
//! irreducibility report.

use std::sync::Arc;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::Algebra;
use crate::homology::{embeds_simple_right, ideal_basis, ideal_module, ideal_square_zero, Side};
use crate::module::FdModule;
use crate::quiver::{ArrowId, ArrowSet, Path};
use crate::resolution::{minimal_resolution, PdVerdict, Resolution};
use crate::Caps;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    TwoSided,
    OnlyLeftCertified,
    RemovableLeftUndecided,
    NotRemovable,
    Undecided,
}

impl Verdict {
    /// Whether the set may be removed (finite right pd and either finite
    /// left pd or a square-zero ideal).
    pub fn is_removable(self) -> bool {
        matches!(
            self,
            Verdict::TwoSided | Verdict::OnlyLeftCertified | Verdict::RemovableLeftUndecided
        )
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PdSummary {
    pub verdict: PdVerdict,
    /// Multiplicity of each `e_v Λ` (or `Λ e_v`) in each term.
    pub betti: Vec<Vec<usize>>,
    pub syzygy_dims: Vec<Vec<usize>>,
}

impl PdSummary {
    pub fn of(res: &Resolution) -> Self {
        PdSummary {
            verdict: res.verdict.clone(),
            betti: res.betti(),
            syzygy_dims: res.syzygy_dims.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RemovabilityReport {
    pub arrows: Vec<String>,
    pub pre_removable: bool,
    /// The part of a Gröbner element outside the ideal, when not
    /// pre-removable.
    pub witness: Option<String>,
    pub dimension: usize,
    /// The remaining fields are only computed for pre-removable sets.
    pub square_zero: Option<bool>,
    pub pd_right: Option<PdSummary>,
    pub pd_left: Option<PdSummary>,
    pub verdict: Verdict,
}

/// `(true, None)` or `(false, Some(witness))`.
pub fn preremovable_check(algebra: &Algebra, set: &ArrowSet) -> (bool, Option<String>) {
    match algebra.preremovable_witness(set) {
        None => (true, None),
        Some(w) => (false, Some(algebra.quiver().element_string(&w))),
    }
}

fn decide(square_zero: bool, right: &PdVerdict, left: &PdVerdict) -> Verdict {
    match right {
        PdVerdict::InfiniteCertified { .. } => Verdict::NotRemovable,
        PdVerdict::UnknownBeyond { .. } => Verdict::Undecided,
        PdVerdict::Finite { .. } => match (left, square_zero) {
            (PdVerdict::Finite { .. }, _) => Verdict::TwoSided,
            (PdVerdict::InfiniteCertified { .. }, true) => Verdict::OnlyLeftCertified,
            (PdVerdict::InfiniteCertified { .. }, false) => Verdict::NotRemovable,
            (PdVerdict::UnknownBeyond { .. }, true) => Verdict::RemovableLeftUndecided,
            (PdVerdict::UnknownBeyond { .. }, false) => Verdict::Undecided,
        },
    }
}

pub fn removable_classify(algebra: &Arc<Algebra>, set: &ArrowSet, caps: &Caps) -> RemovabilityReport {
    let arrows = algebra.quiver().arrow_names(set);
    let dimension = ideal_basis(algebra, set).rank();
    let (pre, witness) = preremovable_check(algebra, set);
    if !pre {
        return RemovabilityReport {
            arrows,
            pre_removable: false,
            witness,
            dimension,
            square_zero: None,
            pd_right: None,
            pd_left: None,
            verdict: Verdict::NotRemovable,
        };
    }
    let square_zero = ideal_square_zero(algebra, set);
    let (right, left) = rayon::join(
        || minimal_resolution(&ideal_module(algebra, set, Side::Right), caps),
        || minimal_resolution(&ideal_module(algebra, set, Side::Left), caps),
    );
    let verdict = decide(square_zero, &right.verdict, &left.verdict);
    RemovabilityReport {
        arrows,
        pre_removable: true,
        witness: None,
        dimension,
        square_zero: Some(square_zero),
        pd_right: Some(PdSummary::of(&right)),
        pd_left: Some(PdSummary::of(&left)),
        verdict,
    }
}

/// Arrows `α: i → j` whose ideal is as large as the free bimodule
/// `Λe_i ⊗ e_jΛ`, i.e. arrows avoided by some generating set of `I`.
pub fn redundant_arrows(algebra: &Algebra) -> ArrowSet {
    let q = algebra.quiver();
    (0..q.num_arrows())
        .filter(|&a| {
            let set: ArrowSet = [a].into();
            let arrow = &q.arrows[a];
            algebra.preremovable_witness(&set).is_none()
                && ideal_basis(algebra, &set).rank()
                    == algebra.dim_left_projective(arrow.source) * algebra.dim_right_projective(arrow.target)
        })
        .collect()
}

fn square_zero_loops(algebra: &Algebra) -> Vec<ArrowId> {
    let q = algebra.quiver();
    (0..q.num_arrows())
        .filter(|&a| q.is_loop(a) && algebra.gb.normal_form_path(&q.path(&[a, a]).unwrap()).is_zero())
        .collect()
}

fn path_is_zero(algebra: &Algebra, p: Option<Path>) -> bool {
    p.is_some_and(|p| algebra.gb.normal_form_path(&p).is_zero())
}

/// Arrows that can never be eventually removable: squared-zero loops, and
/// arrows `a` into the vertex of such a loop `λ` with `a·λ = 0`.
pub fn loop_exclusions(algebra: &Algebra) -> ArrowSet {
    let q = algebra.quiver();
    let loops = square_zero_loops(algebra);
    let mut out: ArrowSet = loops.iter().copied().collect();
    for &lam in &loops {
        let v = q.arrows[lam].source;
        for a in 0..q.num_arrows() {
            if a != lam && q.arrows[a].target == v && path_is_zero(algebra, q.path(&[a, lam])) {
                out.insert(a);
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GorensteinWitness {
    #[serde(rename = "loop")]
    pub loop_arrow: String,
    pub arrow: String,
}

/// Pairs `(λ, a)` showing `Λ` is not Iwanaga-Gorenstein: `λ` a squared-zero
/// loop at `i`, and `a ≠ λ` either ends at `i` and is killed by every arrow
/// on the right, or starts at `i` and is killed by every arrow on the left.
pub fn gorenstein_exclusion(algebra: &Algebra) -> Vec<GorensteinWitness> {
    let q = algebra.quiver();
    let mut out = Vec::new();
    for lam in square_zero_loops(algebra) {
        let i = q.arrows[lam].source;
        for a in (0..q.num_arrows()).filter(|&a| a != lam) {
            let arrow = &q.arrows[a];
            let into = arrow.target == i
                && (0..q.num_arrows())
                    .filter(|&b| q.arrows[b].source == arrow.target)
                    .all(|b| path_is_zero(algebra, q.path(&[a, b])));
            let out_of = arrow.source == i
                && (0..q.num_arrows())
                    .filter(|&b| q.arrows[b].target == arrow.source)
                    .all(|b| path_is_zero(algebra, q.path(&[b, a])));
            if into || out_of {
                out.push(GorensteinWitness {
                    loop_arrow: q.arrows[lam].name.clone(),
                    arrow: arrow.name.clone(),
                });
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ReductionStep {
    pub removed: Vec<String>,
    pub verdict: Verdict,
    /// Digest of the algebra after the removal.
    pub digest: String,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    pub final_digest: String,
    /// Candidate subsets of the final algebra left undecided within caps.
    pub undecided: Vec<Vec<String>>,
    pub certified: bool,
}

pub struct Reduction {
    pub algebra: Arc<Algebra>,
    /// Removed arrows, in the arrow order of the input algebra.
    pub removed: Vec<String>,
    pub trace: ReductionTrace,
}

fn sorted_names(original: &Algebra, names: &[String]) -> Vec<String> {
    let q = original.quiver();
    let mut ids: Vec<ArrowId> = names.iter().map(|n| q.arrow(n).expect("known arrow")).collect();
    ids.sort_unstable();
    ids.into_iter().map(|a| q.arrows[a].name.clone()).collect()
}

/// Repeatedly removes the first removable candidate subset (by size, then
/// arrow order) until none within `subset_cap` is removable. The default
/// cap is `min(#candidates, 6)`.
pub fn arrow_reduced_version(algebra: &Arc<Algebra>, subset_cap: Option<usize>, caps: &Caps) -> Reduction {
    let mut current = algebra.clone();
    let mut steps = Vec::new();
    let mut removed: Vec<String> = Vec::new();
    loop {
        let excluded = loop_exclusions(&current);
        let candidates: Vec<ArrowId> = (0..current.num_arrows()).filter(|a| !excluded.contains(a)).collect();
        let cap = subset_cap.unwrap_or(6).min(candidates.len());
        let mut undecided = Vec::new();
        let mut winner = None;
        for size in 1..=cap {
            let subsets: Vec<ArrowSet> = candidates
                .iter()
                .copied()
                .combinations(size)
                .map(|c| c.into_iter().collect())
                .filter(|s: &ArrowSet| current.preremovable_witness(s).is_none())
                .collect();
            let verdicts: Vec<Verdict> = subsets
                .par_iter()
                .map(|s| removable_classify(&current, s, caps).verdict)
                .collect();
            if let Some(k) = verdicts.iter().position(|v| v.is_removable()) {
                winner = Some((subsets[k].clone(), verdicts[k]));
                break;
            }
            for (s, v) in subsets.iter().zip(&verdicts) {
                if *v == Verdict::Undecided {
                    undecided.push(current.quiver().arrow_names(s));
                }
            }
        }
        match winner {
            Some((set, verdict)) => {
                let names = current.quiver().arrow_names(&set);
                let (gamma, _) = current
                    .canonical_quotient(&set)
                    .expect("removable sets are pre-removable");
                current = Arc::new(gamma);
                removed.extend(names.iter().cloned());
                steps.push(ReductionStep {
                    removed: names,
                    verdict,
                    digest: current.digest(),
                });
            }
            None => {
                let certified = undecided.is_empty();
                return Reduction {
                    removed: sorted_names(algebra, &removed),
                    trace: ReductionTrace {
                        steps,
                        final_digest: current.digest(),
                        undecided,
                        certified,
                    },
                    algebra: current,
                };
            }
        }
    }
}

/// Removes redundant arrows one at a time until none is left.
pub fn arrow_irredundant_version(algebra: &Arc<Algebra>) -> Reduction {
    let mut current = algebra.clone();
    let mut steps = Vec::new();
    let mut removed = Vec::new();
    while let Some(&a) = redundant_arrows(&current).iter().next() {
        let set: ArrowSet = [a].into();
        let names = current.quiver().arrow_names(&set);
        let (gamma, _) = current
            .canonical_quotient(&set)
            .expect("redundant arrows are pre-removable");
        current = Arc::new(gamma);
        removed.extend(names.iter().cloned());
        steps.push(ReductionStep {
            removed: names,
            verdict: Verdict::TwoSided,
            digest: current.digest(),
        });
    }
    Reduction {
        removed: sorted_names(algebra, &removed),
        trace: ReductionTrace {
            steps,
            final_digest: current.digest(),
            undecided: Vec::new(),
            certified: true,
        },
        algebra: current,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "camelCase")]
pub enum Condition {
    Holds,
    Fails { witness: String },
    Undecided { reason: String },
}

impl Condition {
    pub fn holds(&self) -> bool {
        *self == Condition::Holds
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct IrreducibilityEntry {
    pub id: &'static str,
    pub description: &'static str,
    #[serde(flatten)]
    pub condition: Condition,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct IrreducibilityReport {
    pub conditions: Vec<IrreducibilityEntry>,
}

impl IrreducibilityReport {
    pub fn all_hold(&self) -> bool {
        self.conditions.iter().all(|c| c.condition.holds())
    }

    pub fn any_undecided(&self) -> bool {
        self.conditions
            .iter()
            .any(|c| matches!(c.condition, Condition::Undecided { .. }))
    }
}

fn check(ok: bool, witness: impl FnOnce() -> String) -> Condition {
    if ok {
        Condition::Holds
    } else {
        Condition::Fails { witness: witness() }
    }
}

pub fn irreducibility_report(algebra: &Arc<Algebra>, caps: &Caps) -> IrreducibilityReport {
    let q = algebra.quiver();
    let nv = algebra.num_vertices();
    let name = |v: usize| q.vertices[v].clone();

    let embeds: Vec<bool> = (0..nv).map(|v| embeds_simple_right(algebra, v)).collect();
    let fpd = check(embeds.contains(&false), || {
        "every simple right module embeds in the algebra".into()
    });

    let monomial = check(!algebra.is_monomial(), || "the ideal is spanned by paths".into());
    let ll = algebra.loewy_length();
    let loewy = check(ll > 3, || format!("Loewy length {ll}"));
    let red = redundant_arrows(algebra);
    let redundant = check(red.is_empty(), || q.arrow_names(&red).join(", "));
    let connected = check(algebra.strongly_connected(), || {
        "quiver is not strongly connected".into()
    });

    // pd ≤ 1 is settled by the first two syzygies.
    let short = Caps { resolution: 2, ..*caps };
    let op = algebra.opposite();
    let left_pd: Vec<PdVerdict> = (0..nv)
        .into_par_iter()
        .map(|v| minimal_resolution(&FdModule::simple(op.clone(), v), &short).verdict)
        .collect();
    let low_pd = left_pd
        .iter()
        .enumerate()
        .find(|(_, v)| matches!(v.finite_value(), Some(0 | 1)));
    let simples_pd = match low_pd {
        Some((v, verdict)) => Condition::Fails {
            witness: format!("left simple at {} has pd {}", name(v), verdict.describe()),
        },
        None => Condition::Holds,
    };

    // idim of the left simple at v is pd of the right simple at v.
    let right_pd: Vec<PdVerdict> = (0..nv)
        .into_par_iter()
        .map(|v| minimal_resolution(&FdModule::simple(algebra.clone(), v), caps).verdict)
        .collect();
    let injective = if let Some((v, verdict)) = right_pd.iter().enumerate().find(|(_, v)| v.is_finite()) {
        Condition::Fails {
            witness: format!(
                "left simple at {} has injective dimension {}",
                name(v),
                verdict.describe()
            ),
        }
    } else if let Some(v) = right_pd.iter().position(PdVerdict::is_unknown) {
        Condition::Undecided {
            reason: format!(
                "injective dimension of the left simple at {} {}",
                name(v),
                right_pd[v].describe()
            ),
        }
    } else {
        Condition::Holds
    };

    let entries = [
        ("i", "finitistic dimension is nonzero", fpd),
        ("ii", "ideal is not monomial", monomial),
        ("iii", "Loewy length exceeds 3", loewy),
        ("iv", "no redundant arrows", redundant),
        ("v", "quiver is strongly connected", connected),
        ("vi", "no left simple has projective dimension at most 1", simples_pd),
        ("vii", "every left simple has infinite injective dimension", injective),
    ];
    IrreducibilityReport {
        conditions: entries
            .into_iter()
            .map(|(id, description, condition)| IrreducibilityEntry {
                id,
                description,
                condition,
            })
            .collect(),
    }
}
