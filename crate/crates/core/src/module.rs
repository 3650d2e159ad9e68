//! Finite-dimensional right modules, given as quiver representations.
//!
//! A right `Λ`-module `M` is stored as the spaces `M e_v` together with one
//! matrix per arrow `a: u → v`, of shape `dim M e_u × dim M e_v`, acting on
//! row vectors: `m ↦ m·a`. Left modules are right modules over the opposite
//! algebra.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::field::Scalar;
use crate::linalg::{axpy, is_zero_vec, zero_vec, Echelon, Matrix, Vector};
use crate::quiver::{ArrowId, Path, VertexId};
use crate::Error;

#[derive(Clone, Debug)]
pub struct FdModule {
    pub algebra: Arc<Algebra>,
    pub dims: Vec<usize>,
    pub actions: Vec<Matrix>,
}

/// A homogeneous element: a vertex and a vector in `M e_v`.
pub type Homogeneous = (VertexId, Vector);

impl FdModule {
    pub fn new(algebra: Arc<Algebra>, dims: Vec<usize>, actions: Vec<Matrix>) -> Result<Self, Error> {
        let q = algebra.quiver();
        if dims.len() != q.num_vertices() || actions.len() != q.num_arrows() {
            return Err(Error::DimensionMismatch("module data does not match the quiver".into()));
        }
        for (a, m) in q.arrows.iter().zip(&actions) {
            if m.rows != dims[a.source] || m.cols != dims[a.target] {
                return Err(Error::DimensionMismatch(format!(
                    "action of `{}` has shape {}x{}, expected {}x{}",
                    a.name, m.rows, m.cols, dims[a.source], dims[a.target]
                )));
            }
        }
        Ok(FdModule { algebra, dims, actions })
    }

    pub fn zero(algebra: Arc<Algebra>) -> Self {
        let f = algebra.field();
        let actions = (0..algebra.num_arrows()).map(|_| Matrix::zeros(f, 0, 0)).collect();
        FdModule {
            dims: vec![0; algebra.num_vertices()],
            algebra,
            actions,
        }
    }

    /// The simple module at `v`.
    pub fn simple(algebra: Arc<Algebra>, v: VertexId) -> Self {
        let f = algebra.field();
        let mut dims = vec![0; algebra.num_vertices()];
        dims[v] = 1;
        let actions = algebra
            .quiver()
            .arrows
            .iter()
            .map(|a| Matrix::zeros(f, dims[a.source], dims[a.target]))
            .collect();
        FdModule { algebra, dims, actions }
    }

    /// The indecomposable projective `e_v Λ`, on the basis of nontips
    /// starting at `v`.
    pub fn projective(algebra: Arc<Algebra>, v: VertexId) -> Self {
        let f = algebra.field();
        let n = algebra.num_vertices();
        let dims: Vec<usize> = (0..n).map(|w| algebra.corner_dimension(v, w)).collect();
        let actions = (0..algebra.num_arrows())
            .map(|a| {
                let arrow = &algebra.quiver().arrows[a];
                let (u, w) = (arrow.source, arrow.target);
                let mut m = Matrix::zeros(f, dims[u], dims[w]);
                for (r, &b) in algebra.block(v, u).iter().enumerate() {
                    for (k, c) in algebra.right_arrow(b, a) {
                        m.set(r, algebra.pos_in_block(*k), c.clone());
                    }
                }
                m
            })
            .collect();
        FdModule { algebra, dims, actions }
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn support(&self) -> Vec<VertexId> {
        (0..self.dims.len()).filter(|&v| self.dims[v] > 0).collect()
    }

    pub fn offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.dims.len() + 1);
        let mut s = 0;
        for &d in &self.dims {
            off.push(s);
            s += d;
        }
        off.push(s);
        off
    }

    pub fn arrow_endpoints(&self, a: ArrowId) -> (VertexId, VertexId) {
        let arrow = &self.algebra.quiver().arrows[a];
        (arrow.source, arrow.target)
    }

    /// `m·p` for `m ∈ M e_{s(p)}`.
    pub fn act_path(&self, m: &[Scalar], p: &Path) -> Vector {
        let mut v = m.to_vec();
        for &a in &p.arrows {
            v = self.actions[a].apply(&v);
        }
        v
    }

    pub fn path_matrix(&self, p: &Path) -> Matrix {
        let f = self.algebra.field();
        let mut m = Matrix::identity(f, self.dims[p.source]);
        for &a in &p.arrows {
            m = m.mul(&self.actions[a]);
        }
        m
    }

    /// True iff every Gröbner basis element acts as zero.
    pub fn satisfies_relations(&self) -> bool {
        let f = self.algebra.field();
        self.algebra.gb.elements.iter().all(|g| {
            let (s, t) = g.endpoints().expect("parallel");
            let mut acc = Matrix::zeros(f, self.dims[s], self.dims[t]);
            for (p, c) in &g.terms {
                let pm = self.path_matrix(p);
                for r in 0..acc.rows {
                    let row = acc.row(r).to_vec();
                    let mut row = row;
                    axpy(&mut row, c, pm.row(r));
                    acc.row_mut(r).clone_from_slice(&row);
                }
            }
            acc.is_zero()
        })
    }

    /// The radical `M·J` at vertex `v`, as an echelon subspace of `M e_v`.
    pub fn radical_at(&self, v: VertexId) -> Echelon {
        let f = self.algebra.field();
        let mut e = Echelon::new(f, self.dims[v]);
        for (a, arrow) in self.algebra.quiver().arrows.iter().enumerate() {
            if arrow.target == v {
                for r in 0..self.actions[a].rows {
                    e.insert(self.actions[a].row(r).to_vec());
                }
            }
        }
        e
    }

    /// Top representatives: at each vertex, the standard basis vectors at
    /// the non-pivot columns of the reduced radical.
    pub fn top(&self) -> Vec<Homogeneous> {
        let f = self.algebra.field();
        let mut out = Vec::new();
        for v in 0..self.dims.len() {
            let rad = self.radical_at(v);
            for c in rad.free_columns() {
                let mut x = zero_vec(f, self.dims[v]);
                x[c] = f.one();
                out.push((v, x));
            }
        }
        out
    }

    pub fn top_dims(&self) -> Vec<usize> {
        (0..self.dims.len())
            .map(|v| self.dims[v] - self.radical_at(v).rank())
            .collect()
    }

    /// Submodule spanned, at each vertex, by the rows of an echelon basis.
    /// The caller guarantees closure under the arrow actions.
    pub fn submodule(&self, bases: &[Echelon]) -> FdModule {
        let f = self.algebra.field();
        let dims: Vec<usize> = bases.iter().map(Echelon::rank).collect();
        let actions = (0..self.actions.len())
            .map(|a| {
                let (u, w) = self.arrow_endpoints(a);
                let rows: Vec<Vector> = bases[u]
                    .rows()
                    .iter()
                    .map(|r| {
                        let img = self.actions[a].apply(r);
                        debug_assert!(bases[w].contains(&img), "subspace not closed");
                        bases[w].coords_at_pivots(&img)
                    })
                    .collect();
                Matrix::from_rows(f, dims[w], &rows)
            })
            .collect();
        FdModule {
            algebra: self.algebra.clone(),
            dims,
            actions,
        }
    }

    /// The submodule generated by homogeneous elements, as echelon bases.
    pub fn generated_by(&self, gens: &[Homogeneous]) -> Vec<Echelon> {
        let f = self.algebra.field();
        let mut bases: Vec<Echelon> = self.dims.iter().map(|&d| Echelon::new(f, d)).collect();
        let mut queue: Vec<Homogeneous> = Vec::new();
        for (v, x) in gens {
            if bases[*v].insert(x.clone()) {
                queue.push((*v, x.clone()));
            }
        }
        while let Some((v, x)) = queue.pop() {
            for (a, arrow) in self.algebra.quiver().arrows.iter().enumerate() {
                if arrow.source == v {
                    let y = self.actions[a].apply(&x);
                    if !is_zero_vec(&y) && bases[arrow.target].insert(y.clone()) {
                        queue.push((arrow.target, y));
                    }
                }
            }
        }
        bases
    }

    pub fn direct_sum(&self, other: &FdModule) -> FdModule {
        let f = self.algebra.field();
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let actions = (0..self.actions.len())
            .map(|a| {
                let (m1, m2) = (&self.actions[a], &other.actions[a]);
                let mut m = Matrix::zeros(f, m1.rows + m2.rows, m1.cols + m2.cols);
                for r in 0..m1.rows {
                    for c in 0..m1.cols {
                        m.set(r, c, m1.get(r, c).clone());
                    }
                }
                for r in 0..m2.rows {
                    for c in 0..m2.cols {
                        m.set(m1.rows + r, m1.cols + c, m2.get(r, c).clone());
                    }
                }
                m
            })
            .collect();
        FdModule {
            algebra: self.algebra.clone(),
            dims,
            actions,
        }
    }

    pub fn power(&self, n: usize) -> FdModule {
        let mut m = FdModule::zero(self.algebra.clone());
        for _ in 0..n {
            m = m.direct_sum(self);
        }
        m
    }

    /// Elements `m ∈ M e_v` with `m·a = 0` for every arrow `a`, i.e. the
    /// socle at `v`.
    pub fn socle_at(&self, v: VertexId) -> Vec<Vector> {
        let f = self.algebra.field();
        let outgoing: Vec<ArrowId> = (0..self.actions.len())
            .filter(|&a| self.arrow_endpoints(a).0 == v)
            .collect();
        let width: usize = outgoing.iter().map(|&a| self.actions[a].cols).sum();
        let mut big = Matrix::zeros(f, self.dims[v], width);
        let mut off = 0;
        for &a in &outgoing {
            let m = &self.actions[a];
            for r in 0..m.rows {
                for c in 0..m.cols {
                    big.set(r, off + c, m.get(r, c).clone());
                }
            }
            off += m.cols;
        }
        big.left_kernel()
    }

    pub fn socle_dims(&self) -> Vec<usize> {
        (0..self.dims.len()).map(|v| self.socle_at(v).len()).collect()
    }
}

/// A projective cover `P → M` together with its kernel.
#[derive(Clone, Debug)]
pub struct Cover {
    /// Top generators of `M`; `P = ⊕ e_{v_g} Λ`.
    pub generators: Vec<Homogeneous>,
    pub projective: FdModule,
    /// `block_offset[g][w]`: where generator `g`'s copy of `e_{v_g} Λ e_w`
    /// starts inside `P e_w`.
    pub block_offset: Vec<Vec<usize>>,
    /// Per vertex `w`: the matrix of `P e_w → M e_w`.
    pub maps: Vec<Matrix>,
    /// Per vertex: an echelon basis of the kernel inside `P e_w`.
    pub kernel: Vec<Echelon>,
}

impl Cover {
    pub fn betti(&self) -> Vec<usize> {
        let mut b = vec![0; self.projective.dims.len()];
        for (v, _) in &self.generators {
            b[*v] += 1;
        }
        b
    }

    pub fn syzygy(&self) -> FdModule {
        self.projective.submodule(&self.kernel)
    }

    /// Coordinates in `P e_w` of `g·p` for generator `g` and nontip `p`.
    pub fn position(&self, algebra: &Algebra, g: usize, b: usize) -> (VertexId, usize) {
        let p = &algebra.basis()[b];
        (p.target, self.block_offset[g][p.target] + algebra.pos_in_block(b))
    }
}

/// Builds `P = ⊕_g e_{v_g} Λ` for generators at the given vertices, with
/// block offsets.
pub fn free_module(algebra: &Arc<Algebra>, gens: &[VertexId]) -> (FdModule, Vec<Vec<usize>>) {
    let n = algebra.num_vertices();
    let mut p = FdModule::zero(algebra.clone());
    let mut offsets = Vec::with_capacity(gens.len());
    for &v in gens {
        let off = p.dims.clone();
        offsets.push(off);
        p = p.direct_sum(&FdModule::projective(algebra.clone(), v));
    }
    debug_assert_eq!(p.dims.len(), n);
    (p, offsets)
}

/// For each coordinate of `P e_w` (with `P` built by [`free_module`]):
/// the generator and the nontip it corresponds to.
pub fn row_sources(
    algebra: &Algebra,
    gens: &[VertexId],
    block_offset: &[Vec<usize>],
    w: VertexId,
    dim: usize,
) -> Vec<(usize, usize)> {
    let mut rows = vec![(usize::MAX, usize::MAX); dim];
    for (g, &v) in gens.iter().enumerate() {
        for &b in algebra.block(v, w) {
            rows[block_offset[g][w] + algebra.pos_in_block(b)] = (g, b);
        }
    }
    rows
}

pub fn projective_cover(m: &FdModule) -> Cover {
    let algebra = &m.algebra;
    let f = algebra.field();
    let n = algebra.num_vertices();
    let generators = m.top();
    let gen_vertices: Vec<VertexId> = generators.iter().map(|(v, _)| *v).collect();
    let (projective, block_offset) = free_module(algebra, &gen_vertices);
    let mut maps: Vec<Matrix> = (0..n)
        .map(|w| Matrix::zeros(f, projective.dims[w], m.dims[w]))
        .collect();
    for (g, (v, x)) in generators.iter().enumerate() {
        // Images x·p for every nontip p from v. The basis is sorted by
        // length, so a prefix is always handled before its extensions.
        let mut images: Vec<Option<Vector>> = vec![None; algebra.dim()];
        for (b, p) in algebra.basis().iter().enumerate() {
            if p.source != *v {
                continue;
            }
            let img = match algebra.parent(b) {
                None => x.clone(),
                Some((pre, a)) => m.actions[a].apply(images[pre].as_ref().expect("prefix first")),
            };
            let row = block_offset[g][p.target] + algebra.pos_in_block(b);
            maps[p.target].row_mut(row).clone_from_slice(&img);
            images[b] = Some(img);
        }
    }
    let kernel = maps
        .iter()
        .map(|mat| {
            let mut e = Echelon::new(f, mat.rows);
            for k in mat.left_kernel() {
                e.insert(k);
            }
            e
        })
        .collect();
    Cover {
        generators,
        projective,
        block_offset,
        maps,
        kernel,
    }
}
