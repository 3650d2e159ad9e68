//! Homomorphism spaces and isomorphism search between modules.
//!
//! `Hom(M, N)` is computed from a presentation of `M`: a homomorphism is
//! determined by the images of the top generators of `M`, subject to the
//! kernel of the projective cover mapping to zero.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::field::Field;
use crate::linalg::{axpy, zero_vec, Matrix, Vector};
use crate::module::{projective_cover, row_sources, FdModule};

/// A module homomorphism as one matrix per vertex (`m ↦ m·Φ_v`).
pub type Morphism = Vec<Matrix>;

#[derive(Clone, Debug)]
pub enum IsoResult {
    CertifiedYes(Morphism),
    CertifiedNo(String),
    Inconclusive,
}

impl IsoResult {
    pub fn is_yes(&self) -> bool {
        matches!(self, IsoResult::CertifiedYes(_))
    }
}

/// Number of random combinations tried after the basis elements.
pub const RANDOM_TRIES: usize = 200;

/// Largest Hom space (in elements) enumerated exhaustively over `GF(p)`.
const ENUMERATION_LIMIT: u64 = 1 << 20;

/// Checks that `phi` is a homomorphism `M → N`.
pub fn is_homomorphism(m: &FdModule, n: &FdModule, phi: &Morphism) -> bool {
    if phi.len() != m.dims.len() {
        return false;
    }
    for (v, p) in phi.iter().enumerate() {
        if p.rows != m.dims[v] || p.cols != n.dims[v] {
            return false;
        }
    }
    (0..m.actions.len()).all(|a| {
        let (s, t) = m.arrow_endpoints(a);
        m.actions[a].mul(&phi[t]) == phi[s].mul(&n.actions[a])
    })
}

/// Checks that `phi` is an isomorphism `M → N`.
pub fn is_isomorphism(m: &FdModule, n: &FdModule, phi: &Morphism) -> bool {
    is_homomorphism(m, n, phi) && phi.iter().all(Matrix::is_invertible)
}

/// A basis of `Hom(M, N)`.
pub fn hom_basis(m: &FdModule, n: &FdModule) -> Vec<Morphism> {
    let algebra = &m.algebra;
    let f = algebra.field();
    let nv = algebra.num_vertices();
    let cover = projective_cover(m);
    let gens = &cover.generators;

    // Unknowns: the image of generator g in N e_{v_g}.
    let mut unk_off = Vec::with_capacity(gens.len());
    let mut nunk = 0;
    for (v, _) in gens {
        unk_off.push(nunk);
        nunk += n.dims[*v];
    }
    if nunk == 0 {
        return Vec::new();
    }

    // For each generator vertex v and nontip b from v: the matrix N(b).
    let mut path_mats: Vec<Option<Matrix>> = vec![None; algebra.dim()];
    let mut needed = vec![false; nv];
    for (v, _) in gens {
        needed[*v] = true;
    }
    for (b, p) in algebra.basis().iter().enumerate() {
        if !needed[p.source] {
            continue;
        }
        path_mats[b] = Some(match algebra.parent(b) {
            None => Matrix::identity(f, n.dims[p.source]),
            Some((pre, a)) => path_mats[pre].as_ref().unwrap().mul(&n.actions[a]),
        });
    }

    // Y_w(y): the matrix whose row (g, b) is y_g·N(b), as a linear function
    // of the unknowns. `contrib[w][row]` lists (unknown offset, matrix).
    let gen_vertices: Vec<usize> = gens.iter().map(|(v, _)| *v).collect();
    let row_sources = |w: usize| row_sources(algebra, &gen_vertices, &cover.block_offset, w, cover.projective.dims[w]);

    // Equations: every kernel vector k ∈ P e_w maps to zero in N e_w.
    let mut eq_cols = 0;
    for w in 0..nv {
        eq_cols += cover.kernel[w].rank() * n.dims[w];
    }
    let mut system = Matrix::zeros(f, nunk, eq_cols);
    let mut col = 0;
    for w in 0..nv {
        if n.dims[w] == 0 {
            continue;
        }
        let rows = row_sources(w);
        for k in cover.kernel[w].rows() {
            for (pos, c) in k.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (g, b) = rows[pos];
                let nb = path_mats[b].as_ref().unwrap();
                for i in 0..nb.rows {
                    let r = unk_off[g] + i;
                    for j in 0..nb.cols {
                        let x = nb.get(i, j);
                        if !x.is_zero() {
                            let cur = system.get(r, col + j).clone();
                            system.set(r, col + j, &cur + &(c * x));
                        }
                    }
                }
            }
            col += n.dims[w];
        }
    }
    let solutions = system.left_kernel();

    // Section of the cover: preimages in P e_w of the basis of M e_w.
    let sections: Vec<Vec<Vector>> = (0..nv)
        .map(|w| {
            (0..m.dims[w])
                .map(|j| {
                    let mut e = zero_vec(f, m.dims[w]);
                    e[j] = f.one();
                    cover.maps[w].solve_left(&e).expect("cover is surjective")
                })
                .collect()
        })
        .collect();

    solutions
        .iter()
        .map(|y| {
            (0..nv)
                .map(|w| {
                    let rows = row_sources(w);
                    // Y_w rows: y_g·N(b).
                    let ymat: Vec<Vector> = rows
                        .iter()
                        .map(|&(g, b)| {
                            let v = gens[g].0;
                            let yg = &y[unk_off[g]..unk_off[g] + n.dims[v]];
                            path_mats[b].as_ref().unwrap().apply(yg)
                        })
                        .collect();
                    let out: Vec<Vector> = sections[w]
                        .iter()
                        .map(|s| {
                            let mut acc = zero_vec(f, n.dims[w]);
                            for (c, row) in s.iter().zip(&ymat) {
                                axpy(&mut acc, c, row);
                            }
                            acc
                        })
                        .collect();
                    Matrix::from_rows(f, n.dims[w], &out)
                })
                .collect()
        })
        .collect()
}

fn combine(f: Field, basis: &[Morphism], coeffs: &[i64]) -> Morphism {
    let first = &basis[0];
    first
        .iter()
        .enumerate()
        .map(|(v, m0)| {
            let mut acc = Matrix::zeros(f, m0.rows, m0.cols);
            for (h, &c) in basis.iter().zip(coeffs) {
                if c == 0 {
                    continue;
                }
                let c = f.from_i64(c);
                for r in 0..acc.rows {
                    let mut row = acc.row(r).to_vec();
                    axpy(&mut row, &c, h[v].row(r));
                    acc.row_mut(r).clone_from_slice(&row);
                }
            }
            acc
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct IsoInvariants {
    pub dims: Vec<usize>,
    pub top: Vec<usize>,
    pub socle: Vec<usize>,
}

pub fn invariants(m: &FdModule) -> IsoInvariants {
    IsoInvariants {
        dims: m.dims.clone(),
        top: m.top_dims(),
        socle: m.socle_dims(),
    }
}

/// Decides whether `M ≅ N`, with a verified witness when found.
pub fn module_iso(m: &FdModule, n: &FdModule, seed: u64) -> IsoResult {
    let f = m.algebra.field();
    if m.dims != n.dims {
        return IsoResult::CertifiedNo("dimension vectors differ".into());
    }
    if m.is_zero() {
        return IsoResult::CertifiedYes(m.dims.iter().map(|_| Matrix::zeros(f, 0, 0)).collect());
    }
    let (im, inn) = (invariants(m), invariants(n));
    if im.top != inn.top {
        return IsoResult::CertifiedNo("tops differ".into());
    }
    if im.socle != inn.socle {
        return IsoResult::CertifiedNo("socles differ".into());
    }
    let basis = hom_basis(m, n);
    if basis.is_empty() {
        return IsoResult::CertifiedNo("no nonzero homomorphism".into());
    }
    let h = basis.len();
    let found = |phi: Morphism| -> Option<IsoResult> {
        (phi.iter().all(Matrix::is_invertible) && is_isomorphism(m, n, &phi)).then_some(IsoResult::CertifiedYes(phi))
    };
    for k in 0..h {
        let mut c = vec![0; h];
        c[k] = 1;
        if let Some(r) = found(combine(f, &basis, &c)) {
            return r;
        }
    }
    if let Some(p) = f.order() {
        let total = (p as u128).checked_pow(h as u32);
        if h <= 4 && total.is_some_and(|t| t <= ENUMERATION_LIMIT as u128) {
            let total = total.unwrap() as u64;
            for code in 1..total {
                let mut c = Vec::with_capacity(h);
                let mut x = code;
                for _ in 0..h {
                    c.push((x % p) as i64);
                    x /= p;
                }
                if let Some(r) = found(combine(f, &basis, &c)) {
                    return r;
                }
            }
            return IsoResult::CertifiedNo("exhaustive search of Hom found no isomorphism".into());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_TRIES {
        let c: Vec<i64> = (0..h).map(|_| rng.gen_range(-7..=7)).collect();
        if let Some(r) = found(combine(f, &basis, &c)) {
            return r;
        }
    }
    if hom_basis(m, m).len() != h || hom_basis(n, n).len() != h {
        return IsoResult::CertifiedNo("Hom dimensions differ".into());
    }
    IsoResult::Inconclusive
}
