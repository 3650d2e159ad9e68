//! Trivial one-arrow extensions: add `α: i → j` and kill `u·α` for the
//! generators `u` of a left submodule `V` of `Γe_i` squeezed between
//! `e_jΓe_i` and `rad Γe_i`.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::Algebra;
use crate::homology::{ideal_basis, ideal_bimodule, ideal_square_zero, strongly_finite_check};
use crate::linalg::{is_zero_vec, Echelon};
use crate::quiver::{ArrowSet, Element, VertexId};
use crate::qv::AlgebraSpec;
use crate::{Caps, Error};

#[derive(Clone, Debug)]
pub struct ExtensionRequest {
    pub from: VertexId,
    pub to: VertexId,
    pub arrow_name: String,
    /// Elements of `kQ_Γ e_i` whose classes generate `V`.
    pub generators: Vec<Element>,
}

/// The left submodule of `Γ e_i` generated by the classes of `gens`.
pub fn generated_left_submodule(gamma: &Algebra, gens: &[Element]) -> Echelon {
    let mut v = Echelon::new(gamma.field(), gamma.dim());
    let mut queue = Vec::new();
    for u in gens {
        let x = gamma.element_to_vec(u);
        if v.insert(x.clone()) {
            queue.push(x);
        }
    }
    while let Some(x) = queue.pop() {
        for a in 0..gamma.num_arrows() {
            let y = gamma.mul_arrow_left(a, &x);
            if !is_zero_vec(&y) && v.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    v
}

fn check_request(gamma: &Algebra, req: &ExtensionRequest) -> Result<Echelon, Error> {
    let q = gamma.quiver();
    if req.from == req.to {
        return Err(Error::Invalid("the new arrow must join distinct vertices".into()));
    }
    if q.arrow(&req.arrow_name).is_ok() {
        return Err(Error::Invalid(format!("arrow `{}` already exists", req.arrow_name)));
    }
    for u in &req.generators {
        if u.paths().any(|p| p.target != req.from) {
            return Err(Error::SandwichViolation(format!(
                "generator {} does not lie in Γe_{}",
                q.element_string(u),
                q.vertices[req.from]
            )));
        }
        if gamma.gb.normal_form(u).paths().any(|p| p.is_trivial()) {
            return Err(Error::SandwichViolation(format!(
                "generator {} is not in the radical",
                q.element_string(u)
            )));
        }
    }
    let v = generated_left_submodule(gamma, &req.generators);
    for &b in gamma.block(req.to, req.from) {
        if !v.contains(&gamma.unit_vec(b)) {
            return Err(Error::SandwichViolation(format!(
                "{} is in e_jΓe_i but not in V",
                q.path_name(&gamma.basis()[b])
            )));
        }
    }
    Ok(v)
}

/// The presentation of `Γ^V_{i→j}`: the quiver of `Γ` plus `α`, with the
/// relations of `Γ` and `u·α` for each generator `u`.
pub fn one_arrow_extension(gamma: &Algebra, req: &ExtensionRequest) -> Result<AlgebraSpec, Error> {
    check_request(gamma, req)?;
    let mut quiver = gamma.quiver().clone();
    let from = quiver.vertices[req.from].clone();
    let to = quiver.vertices[req.to].clone();
    let alpha = quiver.add_arrow(&req.arrow_name, &from, &to)?;
    let alpha_el = Element::from_path(gamma.field(), quiver.arrow_path(alpha));
    let mut relations = gamma.spec.relations.clone();
    for u in &req.generators {
        let r = u.mul(&alpha_el);
        if !r.is_zero() && !relations.contains(&r) {
            relations.push(r);
        }
    }
    Ok(AlgebraSpec {
        field: gamma.field(),
        quiver,
        relations,
    })
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ExtensionCheck {
    pub id: &'static str,
    pub description: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ExtensionReport {
    pub checks: Vec<ExtensionCheck>,
    pub loewy_length_base: usize,
    pub loewy_length: usize,
    /// The same test over `Γ`, via restriction along the section.
    pub strongly_finite_over_base: Option<bool>,
}

impl ExtensionReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Re-derives the defining properties of a built extension.
pub fn extension_verify(
    gamma: &Arc<Algebra>,
    req: &ExtensionRequest,
    lambda: &Arc<Algebra>,
    caps: &Caps,
) -> Result<ExtensionReport, Error> {
    let v = check_request(gamma, req)?;
    let alpha = lambda.quiver().arrow(&req.arrow_name)?;
    let set: ArrowSet = [alpha].into();
    let mut checks = Vec::new();
    let mut push = |id, description, passed, detail: String| {
        checks.push(ExtensionCheck {
            id,
            description,
            passed,
            detail,
        })
    };

    let (lg, ll) = (gamma.loewy_length(), lambda.loewy_length());
    push(
        "a",
        "Loewy length between that of the base and twice it",
        lg <= ll && ll <= 2 * lg,
        format!("{lg} <= {ll} <= {}", 2 * lg),
    );

    let pre = lambda.preremovable_witness(&set);
    push(
        "b",
        "new arrow is pre-removable",
        pre.is_none(),
        pre.map(|w| lambda.quiver().element_string(&w)).unwrap_or_default(),
    );

    push(
        "c",
        "ideal of the new arrow squares to zero",
        ideal_square_zero(lambda, &set),
        String::new(),
    );

    let quotient = lambda.canonical_quotient(&set);
    let (same_gb, detail) = match &quotient {
        Ok((q, _)) => {
            let same = q.gb.element_strings() == gamma.gb.element_strings()
                && q.quiver().arrow_names(&(0..q.num_arrows()).collect())
                    == gamma.quiver().arrow_names(&(0..gamma.num_arrows()).collect());
            (same, q.gb.element_strings().join("; "))
        }
        Err(e) => (false, e.to_string()),
    };
    push("d", "quotient by the new arrow recovers the base", same_gb, detail);

    let dim_ideal = ideal_basis(lambda, &set).rank();
    let expected = (gamma.dim_left_projective(req.from) - v.rank()) * gamma.dim_right_projective(req.to);
    push(
        "e",
        "ideal dimension is (dim Γe_i - dim V)·dim e_jΓ",
        dim_ideal == expected,
        format!("{dim_ideal} vs {expected}"),
    );

    let k = ideal_bimodule(lambda, &set);
    let over_lambda = strongly_finite_check(&k, caps);
    let over_gamma = quotient.ok().map(|(q, iota)| {
        let q = Arc::new(q);
        strongly_finite_check(&k.restrict((&q, &iota), (&q, &iota)), caps)
    });
    push(
        "f",
        "ideal has strongly-finite right projective dimension",
        over_lambda == Some(true),
        match over_lambda {
            Some(b) => b.to_string(),
            None => "undecided within caps".into(),
        },
    );

    Ok(ExtensionReport {
        checks,
        loewy_length_base: lg,
        loewy_length: ll,
        strongly_finite_over_base: over_gamma.flatten(),
    })
}
