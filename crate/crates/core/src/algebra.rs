//! The finite-dimensional algebra `Λ = kQ/I` on its nontip basis.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use sha2::{Digest, Sha256};

use crate::field::{Field, Scalar};
use crate::groebner::GroebnerBasis;
use crate::linalg::{axpy, is_zero_vec, zero_vec, Echelon, Vector};
use crate::quiver::{ArrowId, ArrowSet, Element, Path, Quiver, VertexId};
use crate::qv::AlgebraSpec;
use crate::Error;

pub type SparseVec = Vec<(usize, Scalar)>;

/// A bound quiver algebra with its multiplication tables.
///
/// Basis element `b` is the class of the nontip `basis[b]`. Right and left
/// multiplication by each arrow is tabulated; products of arbitrary elements
/// are built from those.
#[derive(Debug)]
pub struct Algebra {
    pub spec: AlgebraSpec,
    pub gb: GroebnerBasis,
    pub degree_cap: usize,
    index: HashMap<Path, usize>,
    /// `right[b][a]` = coordinates of `b·a` (empty if not composable or zero).
    right: Vec<Vec<SparseVec>>,
    left: Vec<Vec<SparseVec>>,
    /// For a nontrivial nontip: its prefix of length one less and last arrow.
    parent: Vec<Option<(usize, ArrowId)>>,
    /// Position of each basis element among the nontips with the same
    /// endpoints.
    pos_in_block: Vec<usize>,
    blocks: HashMap<(VertexId, VertexId), Vec<usize>>,
    opposite: OnceLock<Arc<Algebra>>,
}

impl Algebra {
    pub fn build(spec: AlgebraSpec, degree_cap: usize) -> Result<Self, Error> {
        spec.validate()?;
        let gb = GroebnerBasis::compute(spec.field, &spec.quiver, &spec.relations, degree_cap)?;
        let basis = gb.nontips.clone();
        let index: HashMap<Path, usize> = basis.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let q = &spec.quiver;
        let to_sparse = |z: &Element| -> SparseVec {
            let mut v: SparseVec = z.terms.iter().map(|(p, c)| (index[p], c.clone())).collect();
            v.sort_by_key(|(i, _)| *i);
            v
        };
        let mut right = Vec::with_capacity(basis.len());
        let mut left = Vec::with_capacity(basis.len());
        for p in &basis {
            let mut r = Vec::with_capacity(q.num_arrows());
            let mut l = Vec::with_capacity(q.num_arrows());
            for a in 0..q.num_arrows() {
                let ap = q.arrow_path(a);
                r.push(match p.compose(&ap) {
                    Some(pa) => to_sparse(&gb.normal_form_path(&pa)),
                    None => Vec::new(),
                });
                l.push(match ap.compose(p) {
                    Some(ap) => to_sparse(&gb.normal_form_path(&ap)),
                    None => Vec::new(),
                });
            }
            right.push(r);
            left.push(l);
        }
        let parent = basis
            .iter()
            .map(|p| {
                if p.is_trivial() {
                    None
                } else {
                    let pre = p.subpath(q, 0, p.len() - 1);
                    Some((index[&pre], *p.arrows.last().unwrap()))
                }
            })
            .collect();
        let mut blocks: HashMap<(VertexId, VertexId), Vec<usize>> = HashMap::new();
        let mut pos_in_block = Vec::with_capacity(basis.len());
        for (i, p) in basis.iter().enumerate() {
            let b = blocks.entry((p.source, p.target)).or_default();
            pos_in_block.push(b.len());
            b.push(i);
        }
        Ok(Algebra {
            spec,
            gb,
            degree_cap,
            index,
            right,
            left,
            parent,
            pos_in_block,
            blocks,
            opposite: OnceLock::new(),
        })
    }

    pub fn from_text(text: &str, degree_cap: usize) -> Result<Self, Error> {
        Self::build(crate::qv::parse_spec(text)?, degree_cap)
    }

    pub fn field(&self) -> Field {
        self.spec.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.spec.quiver
    }

    pub fn num_vertices(&self) -> usize {
        self.spec.quiver.num_vertices()
    }

    pub fn num_arrows(&self) -> usize {
        self.spec.quiver.num_arrows()
    }

    pub fn dim(&self) -> usize {
        self.gb.nontips.len()
    }

    pub fn basis(&self) -> &[Path] {
        &self.gb.nontips
    }

    pub fn basis_index(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn idempotent(&self, v: VertexId) -> usize {
        self.index[&Path::trivial(v)]
    }

    /// Basis indices of nontips from `i` to `j`, i.e. a basis of `e_i Λ e_j`.
    pub fn block(&self, i: VertexId, j: VertexId) -> &[usize] {
        self.blocks.get(&(i, j)).map_or(&[], Vec::as_slice)
    }

    pub fn pos_in_block(&self, b: usize) -> usize {
        self.pos_in_block[b]
    }

    pub fn parent(&self, b: usize) -> Option<(usize, ArrowId)> {
        self.parent[b]
    }

    pub fn right_arrow(&self, b: usize, a: ArrowId) -> &SparseVec {
        &self.right[b][a]
    }

    pub fn left_arrow(&self, a: ArrowId, b: usize) -> &SparseVec {
        &self.left[b][a]
    }

    pub fn corner_dimension(&self, i: VertexId, j: VertexId) -> usize {
        self.block(i, j).len()
    }

    /// `dim Λ e_v`: nontips ending at `v`.
    pub fn dim_left_projective(&self, v: VertexId) -> usize {
        (0..self.num_vertices()).map(|i| self.corner_dimension(i, v)).sum()
    }

    /// `dim e_v Λ`: nontips starting at `v`.
    pub fn dim_right_projective(&self, v: VertexId) -> usize {
        (0..self.num_vertices()).map(|j| self.corner_dimension(v, j)).sum()
    }

    pub fn zero_vec(&self) -> Vector {
        zero_vec(self.field(), self.dim())
    }

    pub fn unit_vec(&self, b: usize) -> Vector {
        let mut v = self.zero_vec();
        v[b] = self.field().one();
        v
    }

    pub fn element_to_vec(&self, z: &Element) -> Vector {
        let nf = self.gb.normal_form(z);
        let mut v = self.zero_vec();
        for (p, c) in nf.terms {
            v[self.index[&p]] = c;
        }
        v
    }

    pub fn vec_to_element(&self, v: &[Scalar]) -> Element {
        let mut z = Element::zero();
        for (i, c) in v.iter().enumerate() {
            z.add_term(self.basis()[i].clone(), c.clone());
        }
        z
    }

    pub fn arrow_vec(&self, a: ArrowId) -> Vector {
        self.element_to_vec(&Element::from_path(self.field(), self.quiver().arrow_path(a)))
    }

    /// `x·a` for an arrow `a`.
    pub fn mul_arrow_right(&self, x: &[Scalar], a: ArrowId) -> Vector {
        let mut out = self.zero_vec();
        for (b, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, d) in &self.right[b][a] {
                out[*k] = &out[*k] + &(c * d);
            }
        }
        out
    }

    /// `a·x` for an arrow `a`.
    pub fn mul_arrow_left(&self, a: ArrowId, x: &[Scalar]) -> Vector {
        let mut out = self.zero_vec();
        for (b, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, d) in &self.left[b][a] {
                out[*k] = &out[*k] + &(c * d);
            }
        }
        out
    }

    /// `x·p` for a path `p`.
    pub fn mul_path_right(&self, x: &[Scalar], p: &Path) -> Vector {
        if p.is_trivial() {
            let mut out = self.zero_vec();
            for (b, c) in x.iter().enumerate() {
                if self.basis()[b].target == p.source {
                    out[b] = c.clone();
                }
            }
            return out;
        }
        let mut v = x.to_vec();
        for &a in &p.arrows {
            v = self.mul_arrow_right(&v, a);
        }
        v
    }

    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector, Error> {
        if x.len() != self.dim() || y.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "expected vectors of length {}",
                self.dim()
            )));
        }
        let mut out = self.zero_vec();
        for (b, c) in y.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let xb = self.mul_path_right(x, &self.basis()[b]);
            axpy(&mut out, c, &xb);
        }
        Ok(out)
    }

    pub fn unit(&self) -> Vector {
        let mut v = self.zero_vec();
        for i in 0..self.num_vertices() {
            v[self.idempotent(i)] = self.field().one();
        }
        v
    }

    /// Successive powers of the radical, `J, J², …`, each as an echelon
    /// basis; the last entry is nonzero.
    pub fn radical_powers(&self) -> Vec<Echelon> {
        let f = self.field();
        let mut layer = Echelon::new(f, self.dim());
        for (b, p) in self.basis().iter().enumerate() {
            if !p.is_trivial() {
                layer.insert(self.unit_vec(b));
            }
        }
        let mut out = Vec::new();
        while layer.rank() > 0 {
            let mut next = Echelon::new(f, self.dim());
            for x in layer.rows() {
                for a in 0..self.num_arrows() {
                    let xa = self.mul_arrow_right(x, a);
                    if !is_zero_vec(&xa) {
                        next.insert(xa);
                    }
                }
            }
            out.push(layer);
            layer = next;
        }
        out
    }

    /// Least `n` with `J^n = 0`.
    pub fn loewy_length(&self) -> usize {
        self.radical_powers().len() + 1
    }

    pub fn is_monomial(&self) -> bool {
        self.gb.is_monomial()
    }

    pub fn strongly_connected(&self) -> bool {
        self.quiver().strongly_connected()
    }

    /// The opposite algebra: arrows reversed (same names and order) and every
    /// relation read backwards.
    pub fn opposite(&self) -> Arc<Algebra> {
        self.opposite
            .get_or_init(|| {
                let spec = AlgebraSpec {
                    field: self.field(),
                    quiver: self.quiver().opposite(),
                    relations: self.spec.relations.iter().map(Element::reversed).collect(),
                };
                Arc::new(
                    Algebra::build(spec, self.degree_cap)
                        .expect("opposite of an admissible presentation is admissible"),
                )
            })
            .clone()
    }

    /// A short fingerprint of the presentation (reduced Gröbner basis and
    /// quiver), stable across runs.
    pub fn digest(&self) -> String {
        use std::fmt::Write;
        let mut s = crate::qv::serialize(&AlgebraSpec {
            field: self.field(),
            quiver: self.quiver().clone(),
            relations: self.gb.elements.clone(),
        });
        write!(s, "dim {}", self.dim()).unwrap();
        let hash = Sha256::digest(s.as_bytes());
        hash[..8].iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Checks that every reduced Gröbner element splits into an `A`-part and
    /// an `A`-avoiding part that both lie in the ideal. On failure returns
    /// the offending part.
    pub fn preremovable_witness(&self, set: &ArrowSet) -> Option<Element> {
        for g in &self.gb.elements {
            let (through, avoiding) = g.split_by_arrows(set);
            if !self.gb.contains(&through) {
                return Some(through);
            }
            if !self.gb.contains(&avoiding) {
                return Some(avoiding);
            }
        }
        None
    }

    /// The quotient `Λ/⟨A+I⟩` presented on the quiver without `A`, with
    /// relations the `A`-avoiding parts of the reduced Gröbner basis.
    pub fn canonical_quotient(&self, set: &ArrowSet) -> Result<(Algebra, SectionMap), Error> {
        if let Some(w) = self.preremovable_witness(set) {
            return Err(Error::NotPreRemovable {
                witness: self.quiver().element_string(&w),
            });
        }
        let (q, kept) = self.quiver().without_arrows(set);
        let relations: Vec<Element> = self
            .gb
            .elements
            .iter()
            .filter_map(|g| {
                let (_, avoiding) = g.split_by_arrows(set);
                if avoiding.is_zero() {
                    None
                } else {
                    Some(avoiding.restrict(&kept).expect("avoids removed arrows"))
                }
            })
            .collect();
        let spec = AlgebraSpec {
            field: self.field(),
            quiver: q,
            relations,
        };
        let gamma = Algebra::build(spec, self.degree_cap)?;
        Ok((
            gamma,
            SectionMap {
                removed: set.clone(),
                kept,
            },
        ))
    }
}

/// The inclusion of the canonical quotient `Γ` into `Λ` sending the class of
/// an `A`-avoiding path to its class in `Λ`.
#[derive(Clone, Debug)]
pub struct SectionMap {
    pub removed: ArrowSet,
    /// `kept[a]` is the arrow of `Λ` corresponding to arrow `a` of `Γ`.
    pub kept: Vec<ArrowId>,
}

impl SectionMap {
    pub fn identity(lambda: &Algebra) -> Self {
        SectionMap {
            removed: ArrowSet::new(),
            kept: (0..lambda.num_arrows()).collect(),
        }
    }

    /// Coordinates in `Λ` of the image of `Γ`-coordinates `x`.
    pub fn apply(&self, gamma: &Algebra, lambda: &Algebra, x: &[Scalar]) -> Vector {
        let z = gamma.vec_to_element(x).extend(&self.kept);
        lambda.element_to_vec(&z)
    }
}
