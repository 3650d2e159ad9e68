//! Quivers, paths and elements of path algebras.
//!
//! Paths compose left to right: `pq` means "first `p`, then `q`" and is
//! defined when the target of `p` is the source of `q`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::field::{Field, Scalar};
use crate::Error;

pub type VertexId = usize;
pub type ArrowId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    #[serde(skip)]
    vertex_index: HashMap<String, VertexId>,
    #[serde(skip)]
    arrow_index: HashMap<String, ArrowId>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Self, Error> {
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate vertex {v}")));
            }
        }
        let mut q = Quiver {
            vertices,
            arrows: Vec::new(),
            vertex_index,
            arrow_index: HashMap::new(),
        };
        for (name, s, t) in arrows {
            q.add_arrow(&name, &s, &t)?;
        }
        Ok(q)
    }

    pub fn add_arrow(&mut self, name: &str, source: &str, target: &str) -> Result<ArrowId, Error> {
        if self.arrow_index.contains_key(name) {
            return Err(Error::Invalid(format!("duplicate arrow {name}")));
        }
        let s = self.vertex(source)?;
        let t = self.vertex(target)?;
        let id = self.arrows.len();
        self.arrows.push(Arrow {
            name: name.to_string(),
            source: s,
            target: t,
        });
        self.arrow_index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId, Error> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn arrow(&self, name: &str) -> Result<ArrowId, Error> {
        self.arrow_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownArrow(name.to_string()))
    }

    pub fn arrow_set(&self, names: &[&str]) -> Result<ArrowSet, Error> {
        names.iter().map(|n| self.arrow(n)).collect()
    }

    pub fn arrow_names(&self, set: &ArrowSet) -> Vec<String> {
        set.iter().map(|&a| self.arrows[a].name.clone()).collect()
    }

    pub fn is_loop(&self, a: ArrowId) -> bool {
        self.arrows[a].source == self.arrows[a].target
    }

    /// The quiver with every arrow reversed; names and order are kept.
    pub fn opposite(&self) -> Quiver {
        let mut q = self.clone();
        for a in &mut q.arrows {
            std::mem::swap(&mut a.source, &mut a.target);
        }
        q
    }

    /// The subquiver on all vertices with the arrows of `removed` deleted.
    /// Arrow ids are renumbered; the returned table maps new ids to old ones.
    pub fn without_arrows(&self, removed: &ArrowSet) -> (Quiver, Vec<ArrowId>) {
        let mut q = Quiver {
            vertices: self.vertices.clone(),
            arrows: Vec::new(),
            vertex_index: self.vertex_index.clone(),
            arrow_index: HashMap::new(),
        };
        let mut kept = Vec::new();
        for (i, a) in self.arrows.iter().enumerate() {
            if !removed.contains(&i) {
                q.arrow_index.insert(a.name.clone(), q.arrows.len());
                q.arrows.push(a.clone());
                kept.push(i);
            }
        }
        (q, kept)
    }

    pub fn trivial(&self, v: VertexId) -> Path {
        Path::trivial(v)
    }

    pub fn arrow_path(&self, a: ArrowId) -> Path {
        Path {
            source: self.arrows[a].source,
            target: self.arrows[a].target,
            arrows: vec![a],
        }
    }

    /// Builds a path from a sequence of arrow ids, checking composability.
    pub fn path(&self, arrows: &[ArrowId]) -> Option<Path> {
        let first = *arrows.first()?;
        let mut t = self.arrows[first].target;
        for &a in &arrows[1..] {
            if self.arrows[a].source != t {
                return None;
            }
            t = self.arrows[a].target;
        }
        Some(Path {
            source: self.arrows[first].source,
            target: t,
            arrows: arrows.to_vec(),
        })
    }

    /// True iff every ordered pair of vertices is joined by a path.
    pub fn strongly_connected(&self) -> bool {
        let n = self.num_vertices();
        if n == 0 {
            return true;
        }
        let reach = |forward: bool| {
            let mut seen = vec![false; n];
            let mut stack = vec![0];
            seen[0] = true;
            while let Some(v) = stack.pop() {
                for a in &self.arrows {
                    let (from, to) = if forward {
                        (a.source, a.target)
                    } else {
                        (a.target, a.source)
                    };
                    if from == v && !seen[to] {
                        seen[to] = true;
                        stack.push(to);
                    }
                }
            }
            seen.into_iter().all(|s| s)
        };
        reach(true) && reach(false)
    }

    /// Connected components of the underlying graph, each sorted, in order
    /// of their least vertex.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let n = self.num_vertices();
        let mut comp = vec![usize::MAX; n];
        let mut out: Vec<Vec<VertexId>> = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[start] = id;
            let mut members = vec![start];
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for a in &self.arrows {
                    for (x, y) in [(a.source, a.target), (a.target, a.source)] {
                        if x == v && comp[y] == usize::MAX {
                            comp[y] = id;
                            members.push(y);
                            stack.push(y);
                        }
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// True iff the quiver has no oriented cycle (loops count as cycles).
    pub fn is_acyclic(&self) -> bool {
        let n = self.num_vertices();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut queue: Vec<VertexId> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop() {
            seen += 1;
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    queue.push(a.target);
                }
            }
        }
        seen == n
    }

    pub fn path_name(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            return format!("e_{}", self.vertices[p.source]);
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < p.arrows.len() {
            let a = p.arrows[i];
            let mut j = i + 1;
            while j < p.arrows.len() && p.arrows[j] == a {
                j += 1;
            }
            let name = &self.arrows[a].name;
            if j - i > 1 {
                parts.push(format!("{name}^{}", j - i));
            } else {
                parts.push(name.clone());
            }
            i = j;
        }
        parts.join("*")
    }

    pub fn element_string(&self, z: &Element) -> String {
        if z.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (p, c)) in z.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !abs.is_one() {
                out.push_str(&format!("{abs}*"));
            }
            out.push_str(&self.path_name(p));
        }
        out
    }
}

pub type ArrowSet = BTreeSet<ArrowId>;

/// A path: either trivial at a vertex or a nonempty composable arrow word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: VertexId,
    pub target: VertexId,
    pub arrows: Vec<ArrowId>,
}

#[allow(clippy::len_without_is_empty)]
impl Path {
    pub fn trivial(v: VertexId) -> Path {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` followed by `other`, if the endpoints match.
    pub fn compose(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            source: self.source,
            target: other.target,
            arrows,
        })
    }

    /// Subpath `arrows[from..to]`, with a trivial path at the right vertex
    /// when the range is empty.
    pub fn subpath(&self, q: &Quiver, from: usize, to: usize) -> Path {
        if from == to {
            let v = if from == 0 {
                self.source
            } else {
                q.arrows[self.arrows[from - 1]].target
            };
            return Path::trivial(v);
        }
        Path {
            source: q.arrows[self.arrows[from]].source,
            target: q.arrows[self.arrows[to - 1]].target,
            arrows: self.arrows[from..to].to_vec(),
        }
    }

    pub fn passes_through(&self, set: &ArrowSet) -> bool {
        self.arrows.iter().any(|a| set.contains(a))
    }

    /// The same word read backwards, as a path in the opposite quiver.
    pub fn reversed(&self) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.reverse();
        Path {
            source: self.target,
            target: self.source,
            arrows,
        }
    }
}

/// Admissible order: length first, then left-lexicographic on arrow ids;
/// trivial paths are ordered by vertex.
impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.source.cmp(&other.source))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite linear combination of paths with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub terms: BTreeMap<Path, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element { terms: BTreeMap::new() }
    }

    pub fn from_path(field: Field, p: Path) -> Self {
        Self::monomial(p, field.one())
    }

    pub fn monomial(p: Path, c: Scalar) -> Self {
        let mut z = Self::zero();
        z.add_term(p, c);
        z
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, p: Path, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&p) {
            Some(old) => {
                let s = &*old + &c;
                if s.is_zero() {
                    self.terms.remove(&p);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(p, c);
            }
        }
    }

    pub fn add_scaled(&mut self, c: &Scalar, other: &Element) {
        for (p, d) in &other.terms {
            self.add_term(p.clone(), c * d);
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Element {
        let mut z = Element::zero();
        z.add_scaled(c, self);
        z
    }

    pub fn sub(&self, other: &Element) -> Element {
        let mut z = self.clone();
        for (p, d) in &other.terms {
            z.add_term(p.clone(), -d);
        }
        z
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut z = self.clone();
        for (p, d) in &other.terms {
            z.add_term(p.clone(), d.clone());
        }
        z
    }

    /// Largest path in the admissible order, with its coefficient.
    pub fn tip(&self) -> Option<(&Path, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn monic(&self) -> Element {
        match self.tip() {
            Some((_, c)) => self.scaled(&c.inv()),
            None => Element::zero(),
        }
    }

    pub fn paths(&self) -> impl Iterator<Item = &Path> {
        self.terms.keys()
    }

    /// `u·self·v` for paths `u`, `v` (zero if not composable).
    pub fn sandwich(&self, u: &Path, v: &Path) -> Element {
        let mut z = Element::zero();
        for (p, c) in &self.terms {
            if let Some(up) = u.compose(p) {
                if let Some(upv) = up.compose(v) {
                    z.add_term(upv, c.clone());
                }
            }
        }
        z
    }

    pub fn mul(&self, other: &Element) -> Element {
        let mut z = Element::zero();
        for (p, c) in &self.terms {
            for (q, d) in &other.terms {
                if let Some(pq) = p.compose(q) {
                    z.add_term(pq, c * d);
                }
            }
        }
        z
    }

    /// Common source and target of all terms, if the element is parallel.
    pub fn endpoints(&self) -> Option<(VertexId, VertexId)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let ends = (first.source, first.target);
        it.all(|p| (p.source, p.target) == ends).then_some(ends)
    }

    pub fn min_length(&self) -> usize {
        self.terms.keys().map(Path::len).min().unwrap_or(0)
    }

    /// Splits into the part supported on paths through `set` and the rest.
    pub fn split_by_arrows(&self, set: &ArrowSet) -> (Element, Element) {
        let mut through = Element::zero();
        let mut avoiding = Element::zero();
        for (p, c) in &self.terms {
            if p.passes_through(set) {
                through.terms.insert(p.clone(), c.clone());
            } else {
                avoiding.terms.insert(p.clone(), c.clone());
            }
        }
        (through, avoiding)
    }

    pub fn reversed(&self) -> Element {
        Element {
            terms: self.terms.iter().map(|(p, c)| (p.reversed(), c.clone())).collect(),
        }
    }

    /// Re-expresses an element over a subquiver, given the new-to-old arrow
    /// table. Returns `None` if some path uses a dropped arrow.
    pub fn restrict(&self, kept: &[ArrowId]) -> Option<Element> {
        let mut old_to_new = HashMap::new();
        for (new, &old) in kept.iter().enumerate() {
            old_to_new.insert(old, new);
        }
        let mut z = Element::zero();
        for (p, c) in &self.terms {
            let arrows = p
                .arrows
                .iter()
                .map(|a| old_to_new.get(a).copied())
                .collect::<Option<Vec<_>>>()?;
            z.terms.insert(
                Path {
                    source: p.source,
                    target: p.target,
                    arrows,
                },
                c.clone(),
            );
        }
        Some(z)
    }

    /// Inverse of [`Element::restrict`]: renames arrows back to the big quiver.
    pub fn extend(&self, kept: &[ArrowId]) -> Element {
        let mut z = Element::zero();
        for (p, c) in &self.terms {
            z.add_term(
                Path {
                    source: p.source,
                    target: p.target,
                    arrows: p.arrows.iter().map(|&a| kept[a]).collect(),
                },
                c.clone(),
            );
        }
        z
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arrows.is_empty() {
            write!(f, "e{}", self.source)
        } else {
            let parts: Vec<String> = self.arrows.iter().map(|a| format!("a{a}")).collect();
            write!(f, "{}", parts.join("*"))
        }
    }
}
