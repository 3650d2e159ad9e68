//! Bimodules, tensor products over the middle algebra, and Tor.
//!
//! A bimodule carries a basis of bihomogeneous vectors (each lies in some
//! `e_i M e_j`) and, per arrow, the left and right actions as sparse rows.

use std::sync::Arc;

use crate::algebra::{Algebra, SectionMap, SparseVec};
use crate::field::{Field, Scalar};
use crate::linalg::{axpy, is_zero_vec, zero_vec, Echelon, Matrix, Vector};
use crate::module::FdModule;
use crate::quiver::VertexId;
use crate::resolution::resolve_steps;
use crate::{Caps, Error};

#[derive(Clone, Debug)]
pub struct FdBimodule {
    pub left_algebra: Arc<Algebra>,
    pub right_algebra: Arc<Algebra>,
    /// `(i, j)` with basis vector `k` in `e_i M e_j`.
    pub grading: Vec<(VertexId, VertexId)>,
    /// `left[a][k]` = coordinates of `a·b_k`.
    pub left: Vec<Vec<SparseVec>>,
    /// `right[a][k]` = coordinates of `b_k·a`.
    pub right: Vec<Vec<SparseVec>>,
}

fn sparse(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

fn apply_sparse(field: Field, rows: &[SparseVec], x: &[Scalar], width: usize) -> Vector {
    let mut out = zero_vec(field, width);
    for (k, c) in x.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (i, d) in &rows[k] {
            out[*i] = &out[*i] + &(c * d);
        }
    }
    out
}

impl FdBimodule {
    pub fn dim(&self) -> usize {
        self.grading.len()
    }

    pub fn field(&self) -> Field {
        self.right_algebra.field()
    }

    /// Basis positions grouped by one side of the grading.
    fn positions(&self, right_side: bool, n: usize) -> (Vec<Vec<usize>>, Vec<usize>) {
        let mut by_vertex = vec![Vec::new(); n];
        let mut local = vec![0; self.dim()];
        for (k, &(i, j)) in self.grading.iter().enumerate() {
            let v = if right_side { j } else { i };
            local[k] = by_vertex[v].len();
            by_vertex[v].push(k);
        }
        (by_vertex, local)
    }

    fn one_sided(&self, algebra: Arc<Algebra>, actions: &[Vec<SparseVec>], right_side: bool) -> FdModule {
        let f = self.field();
        let n = algebra.num_vertices();
        let (by_vertex, local) = self.positions(right_side, n);
        let dims: Vec<usize> = by_vertex.iter().map(Vec::len).collect();
        let mats = algebra
            .quiver()
            .arrows
            .iter()
            .enumerate()
            .map(|(a, arrow)| {
                let mut m = Matrix::zeros(f, dims[arrow.source], dims[arrow.target]);
                for (r, &k) in by_vertex[arrow.source].iter().enumerate() {
                    for (i, c) in &actions[a][k] {
                        m.set(r, local[*i], c.clone());
                    }
                }
                m
            })
            .collect();
        FdModule::new(algebra, dims, mats).expect("bimodule actions respect the grading")
    }

    /// `M` as a right module over the right algebra.
    pub fn right_module(&self) -> FdModule {
        self.one_sided(self.right_algebra.clone(), &self.right, true)
    }

    /// `M` as a left module over the left algebra, i.e. a right module over
    /// its opposite.
    pub fn left_module(&self) -> FdModule {
        self.one_sided(self.left_algebra.opposite(), &self.left, false)
    }

    /// Vertices `i` with `e_i M ≠ 0`.
    pub fn left_support(&self) -> Vec<VertexId> {
        let mut s: Vec<VertexId> = self.grading.iter().map(|g| g.0).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// `(a·x)·b = a·(x·b)` on every basis vector and arrow pair.
    pub fn actions_commute(&self) -> bool {
        let f = self.field();
        let d = self.dim();
        (0..d).all(|k| {
            let mut e = zero_vec(f, d);
            e[k] = f.one();
            self.left.iter().all(|la| {
                self.right.iter().all(|rb| {
                    let lr = apply_sparse(f, rb, &apply_sparse(f, la, &e, d), d);
                    let rl = apply_sparse(f, la, &apply_sparse(f, rb, &e, d), d);
                    lr == rl
                })
            })
        })
    }

    /// Restriction of scalars along sections `Γ_l → Λ_l` and `Γ_r → Λ_r`.
    pub fn restrict(&self, left: (&Arc<Algebra>, &SectionMap), right: (&Arc<Algebra>, &SectionMap)) -> FdBimodule {
        FdBimodule {
            left_algebra: left.0.clone(),
            right_algebra: right.0.clone(),
            grading: self.grading.clone(),
            left: left.1.kept.iter().map(|&a| self.left[a].clone()).collect(),
            right: right.1.kept.iter().map(|&a| self.right[a].clone()).collect(),
        }
    }

    /// `M ⊗_Γ N` where `Γ` is this bimodule's right algebra and `N`'s left
    /// algebra.
    pub fn tensor(&self, other: &FdBimodule) -> Result<FdBimodule, Error> {
        let gamma = &self.right_algebra;
        if gamma.num_arrows() != other.left_algebra.num_arrows()
            || gamma.num_vertices() != other.left_algebra.num_vertices()
        {
            return Err(Error::DimensionMismatch(
                "tensor factors are over different algebras".into(),
            ));
        }
        let f = self.field();
        let (md, nd) = (self.dim(), other.dim());
        // Pure tensors b_k ⊗ c_l with matching middle vertex.
        let mut pair_index = vec![usize::MAX; md * nd];
        let mut pairs = Vec::new();
        for k in 0..md {
            for l in 0..nd {
                if self.grading[k].1 == other.grading[l].0 {
                    pair_index[k * nd + l] = pairs.len();
                    pairs.push((k, l));
                }
            }
        }
        let width = pairs.len();
        let mut relations = Echelon::new(f, width);
        for a in 0..gamma.num_arrows() {
            let arrow = &gamma.quiver().arrows[a];
            for k in (0..md).filter(|&k| self.grading[k].1 == arrow.source) {
                for l in (0..nd).filter(|&l| other.grading[l].0 == arrow.target) {
                    let mut r = zero_vec(f, width);
                    for (k2, c) in &self.right[a][k] {
                        let p = pair_index[k2 * nd + l];
                        r[p] = &r[p] + c;
                    }
                    for (l2, c) in &other.left[a][l] {
                        let p = pair_index[k * nd + l2];
                        r[p] = &r[p] - c;
                    }
                    if !is_zero_vec(&r) {
                        relations.insert(r);
                    }
                }
            }
        }
        let free = relations.free_columns();
        let mut free_pos = vec![usize::MAX; width];
        for (i, &c) in free.iter().enumerate() {
            free_pos[c] = i;
        }
        let project = |v: Vector| -> SparseVec {
            let r = relations.reduce(v);
            let mut out: SparseVec = Vec::new();
            for (c, x) in r.into_iter().enumerate() {
                if !x.is_zero() {
                    out.push((free_pos[c], x));
                }
            }
            out
        };
        let grading = free
            .iter()
            .map(|&c| {
                let (k, l) = pairs[c];
                (self.grading[k].0, other.grading[l].1)
            })
            .collect();
        let left = (0..self.left.len())
            .map(|a| {
                free.iter()
                    .map(|&c| {
                        let (k, l) = pairs[c];
                        let mut v = zero_vec(f, width);
                        for (k2, x) in &self.left[a][k] {
                            v[pair_index[k2 * nd + l]] = x.clone();
                        }
                        project(v)
                    })
                    .collect()
            })
            .collect();
        let right = (0..other.right.len())
            .map(|a| {
                free.iter()
                    .map(|&c| {
                        let (k, l) = pairs[c];
                        let mut v = zero_vec(f, width);
                        for (l2, x) in &other.right[a][l] {
                            v[pair_index[k * nd + l2]] = x.clone();
                        }
                        project(v)
                    })
                    .collect()
            })
            .collect();
        Ok(FdBimodule {
            left_algebra: self.left_algebra.clone(),
            right_algebra: other.right_algebra.clone(),
            grading,
            left,
            right,
        })
    }
}

/// A bimodule from a subspace of `Λ` closed under both multiplications,
/// given by an echelon basis of bihomogeneous rows.
pub fn subbimodule(algebra: &Arc<Algebra>, basis: &Echelon) -> FdBimodule {
    let grading = basis
        .rows()
        .iter()
        .map(|row| {
            let b = row.iter().position(|c| !c.is_zero()).expect("nonzero row");
            let p = &algebra.basis()[b];
            (p.source, p.target)
        })
        .collect();
    let act = |mul: &dyn Fn(&[Scalar]) -> Vector| -> Vec<SparseVec> {
        basis
            .rows()
            .iter()
            .map(|row| {
                let y = mul(row);
                debug_assert!(basis.contains(&y), "subspace is not an ideal");
                sparse(&basis.coords_at_pivots(&y))
            })
            .collect()
    };
    let n = algebra.num_arrows();
    let left = (0..n)
        .map(|a| act(&|x: &[Scalar]| algebra.mul_arrow_left(a, x)))
        .collect();
    let right = (0..n)
        .map(|a| act(&|x: &[Scalar]| algebra.mul_arrow_right(x, a)))
        .collect();
    FdBimodule {
        left_algebra: algebra.clone(),
        right_algebra: algebra.clone(),
        grading,
        left,
        right,
    }
}

/// `dim M ⊗_Γ N` for a right module `M` and a left module `N` (a right
/// module over `Γ^op`).
pub fn tensor_dim(m: &FdModule, n: &FdModule) -> Result<usize, Error> {
    let gamma = &m.algebra;
    if gamma.num_arrows() != n.algebra.num_arrows() || m.dims.len() != n.dims.len() {
        return Err(Error::DimensionMismatch(
            "tensor factors are over different algebras".into(),
        ));
    }
    let f = gamma.field();
    let nv = m.dims.len();
    let mut off = Vec::with_capacity(nv);
    let mut width = 0;
    for v in 0..nv {
        off.push(width);
        width += m.dims[v] * n.dims[v];
    }
    if width == 0 {
        return Ok(0);
    }
    let mut relations = Echelon::new(f, width);
    for (a, arrow) in gamma.quiver().arrows.iter().enumerate() {
        let (u, w) = (arrow.source, arrow.target);
        // (x·a) ⊗ y − x ⊗ (a·y) for x ∈ M e_u, y ∈ e_w N.
        for x in 0..m.dims[u] {
            for y in 0..n.dims[w] {
                let mut r = zero_vec(f, width);
                for (x2, c) in m.actions[a].row(x).iter().enumerate() {
                    if !c.is_zero() {
                        let p = off[w] + x2 * n.dims[w] + y;
                        r[p] = &r[p] + c;
                    }
                }
                for (y2, c) in n.actions[a].row(y).iter().enumerate() {
                    if !c.is_zero() {
                        let p = off[u] + x * n.dims[u] + y2;
                        r[p] = &r[p] - c;
                    }
                }
                if !is_zero_vec(&r) {
                    relations.insert(r);
                }
            }
        }
    }
    Ok(width - relations.rank())
}

/// `dim Tor_i(M, N)` for `i = 0..=imax`, from a minimal resolution of `N`
/// over `Γ^op` tensored with `M`.
pub fn tor_dims(m: &FdModule, n: &FdModule, imax: usize, caps: &Caps) -> Result<Vec<usize>, Error> {
    let needed = imax + 2;
    let count = needed.min(caps.resolution.max(1));
    let steps =
        resolve_steps(n, count, caps.max_module_dim).ok_or(Error::ResolutionTooShort { available: 0, needed })?;
    if steps.len() == count && count < needed {
        return Err(Error::ResolutionTooShort {
            available: count,
            needed,
        });
    }
    let f = m.algebra.field();
    let op = &n.algebra;
    // C_j = ⊕_g M e_{v_g}; block offsets per step.
    let blocks: Vec<Vec<usize>> = steps
        .iter()
        .map(|s| {
            let mut acc = 0;
            let mut o: Vec<usize> = s
                .generators
                .iter()
                .map(|&v| {
                    let x = acc;
                    acc += m.dims[v];
                    x
                })
                .collect();
            o.push(acc);
            o
        })
        .collect();
    let dim_c = |j: usize| blocks.get(j).map_or(0, |b| *b.last().unwrap());
    // rank of d_j: C_j → C_{j-1}, j ≥ 1.
    let rank_d = |j: usize| -> usize {
        if j == 0 || j >= steps.len() {
            return 0;
        }
        let step = &steps[j];
        let width = dim_c(j - 1);
        let mut e = Echelon::new(f, width);
        for (g, terms) in step.terms.iter().enumerate() {
            let v = step.generators[g];
            let mut rows: Vec<Vector> = vec![zero_vec(f, width); m.dims[v]];
            for (g2, b, c) in terms {
                let path = op.basis()[*b].reversed();
                let pm = m.path_matrix(&path);
                let o = blocks[j - 1][*g2];
                for (x, row) in rows.iter_mut().enumerate() {
                    axpy(&mut row[o..o + pm.cols], c, pm.row(x));
                }
            }
            for row in rows {
                e.insert(row);
            }
        }
        e.rank()
    };
    let ranks: Vec<usize> = (0..=imax + 1).map(rank_d).collect();
    Ok((0..=imax).map(|i| dim_c(i) - ranks[i] - ranks[i + 1]).collect())
}
