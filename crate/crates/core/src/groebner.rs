//! Noncommutative Gröbner bases for ideals of path algebras.
//!
//! The order is length first, then left-lexicographic on the declared arrow
//! order. Completion follows Buchberger: S-elements are formed from
//! overlaps of tips, reduced, and added until every overlap reduces to zero.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;

use crate::field::Field;
use crate::linalg::Echelon;
use crate::quiver::{Element, Path, Quiver};
use crate::Error;

/// A reduced Gröbner basis together with the nontip basis of the quotient.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub field: Field,
    pub quiver: Quiver,
    /// Monic, fully interreduced, sorted by tip.
    pub elements: Vec<Element>,
    pub tips: Vec<Path>,
    /// All nontips, sorted by the admissible order.
    pub nontips: Vec<Path>,
    pub max_nontip_length: usize,
    /// Largest overlap degree checked during completion.
    pub certified_degree: usize,
    tip_index: HashMap<Vec<usize>, usize>,
    tip_lengths: BTreeSet<usize>,
}

struct Reducer<'a> {
    elements: &'a [Element],
    tip_index: HashMap<Vec<usize>, usize>,
    tip_lengths: BTreeSet<usize>,
}

impl<'a> Reducer<'a> {
    fn new(elements: &'a [Element]) -> Self {
        let mut tip_index = HashMap::new();
        let mut tip_lengths = BTreeSet::new();
        for (i, g) in elements.iter().enumerate() {
            let (t, _) = g.tip().expect("nonzero basis element");
            tip_index.insert(t.arrows.clone(), i);
            tip_lengths.insert(t.len());
        }
        Reducer {
            elements,
            tip_index,
            tip_lengths,
        }
    }

    fn reduce(&self, z: &Element) -> Element {
        reduce_with(z, self.elements, &self.tip_index, &self.tip_lengths, None)
    }
}

/// Finds a basis element whose tip divides `p`: returns (element, offset).
fn find_divisor(
    p: &Path,
    tip_index: &HashMap<Vec<usize>, usize>,
    tip_lengths: &BTreeSet<usize>,
    skip: Option<usize>,
) -> Option<(usize, usize)> {
    for &l in tip_lengths {
        if l > p.len() || l == 0 {
            continue;
        }
        for start in 0..=p.len() - l {
            if let Some(&i) = tip_index.get(&p.arrows[start..start + l]) {
                if Some(i) != skip {
                    return Some((i, start));
                }
            }
        }
    }
    None
}

fn reduce_with(
    z: &Element,
    elements: &[Element],
    tip_index: &HashMap<Vec<usize>, usize>,
    tip_lengths: &BTreeSet<usize>,
    skip: Option<usize>,
) -> Element {
    let mut z = z.clone();
    let mut done = Element::zero();
    // Peel off the largest term; it either is irreducible (moves to `done`)
    // or gets rewritten into strictly smaller terms.
    while let Some((p, c)) = z.terms.pop_last() {
        match find_divisor(&p, tip_index, tip_lengths, skip) {
            None => {
                done.terms.insert(p, c);
            }
            Some((i, start)) => {
                let g = &elements[i];
                let l = g.tip().expect("nonzero").0.len();
                let u = Path {
                    source: p.source,
                    target: g.tip().unwrap().0.source,
                    arrows: p.arrows[..start].to_vec(),
                };
                let v = Path {
                    source: g.tip().unwrap().0.target,
                    target: p.target,
                    arrows: p.arrows[start + l..].to_vec(),
                };
                // p = u·tip(g)·v; subtract c·u·g·v (the tip term cancels).
                for (q, d) in &g.terms {
                    if q == g.tip().unwrap().0 {
                        continue;
                    }
                    let uqv = concat(&u, q, &v);
                    z.add_term(uqv, -&(&c * d));
                }
            }
        }
    }
    done
}

fn concat(u: &Path, q: &Path, v: &Path) -> Path {
    let mut arrows = Vec::with_capacity(u.len() + q.len() + v.len());
    arrows.extend_from_slice(&u.arrows);
    arrows.extend_from_slice(&q.arrows);
    arrows.extend_from_slice(&v.arrows);
    Path {
        source: u.source,
        target: v.target,
        arrows,
    }
}

/// Makes a list of elements monic and mutually reduced.
fn interreduce(mut polys: Vec<Element>) -> Vec<Element> {
    polys.retain(|p| !p.is_zero());
    polys = polys.into_iter().map(|p| p.monic()).collect();
    loop {
        polys.sort_by(|a, b| a.tip().unwrap().0.cmp(b.tip().unwrap().0));
        polys.dedup();
        let mut changed = false;
        let mut i = 0;
        while i < polys.len() {
            let (tip_index, tip_lengths) = index_of(&polys);
            // A tip shared by two elements maps to only one of them; the
            // other reduces against it.
            let owner = tip_index[&polys[i].tip().unwrap().0.arrows];
            let skip = if owner == i { Some(i) } else { None };
            let r = reduce_with(&polys[i], &polys, &tip_index, &tip_lengths, skip);
            if r != polys[i] {
                changed = true;
                if r.is_zero() {
                    polys.remove(i);
                    continue;
                }
                polys[i] = r.monic();
            }
            i += 1;
        }
        if !changed {
            return polys;
        }
    }
}

fn index_of(polys: &[Element]) -> (HashMap<Vec<usize>, usize>, BTreeSet<usize>) {
    let mut tip_index = HashMap::new();
    let mut lengths = BTreeSet::new();
    for (i, g) in polys.iter().enumerate() {
        let t = g.tip().unwrap().0;
        tip_index.entry(t.arrows.clone()).or_insert(i);
        lengths.insert(t.len());
    }
    (tip_index, lengths)
}

/// An overlap `tip(f) = u·w`, `tip(g) = w·v` with `w` nonempty and proper.
struct Overlap {
    degree: usize,
    f: usize,
    g: usize,
    w: usize,
}

fn overlaps(polys: &[Element]) -> Vec<Overlap> {
    let mut out = Vec::new();
    for (i, f) in polys.iter().enumerate() {
        let tf = f.tip().unwrap().0;
        for (j, g) in polys.iter().enumerate() {
            let tg = g.tip().unwrap().0;
            let maxw = tf.len().min(tg.len());
            for w in 1..maxw {
                if tf.arrows[tf.len() - w..] == tg.arrows[..w] {
                    out.push(Overlap {
                        degree: tf.len() + tg.len() - w,
                        f: i,
                        g: j,
                        w,
                    });
                }
            }
        }
    }
    out.sort_by_key(|o| (o.degree, o.f, o.g, o.w));
    out
}

fn s_element(polys: &[Element], o: &Overlap) -> Element {
    let f = &polys[o.f];
    let g = &polys[o.g];
    let tf = f.tip().unwrap().0;
    let tg = g.tip().unwrap().0;
    // f·v − u·g
    let v = Path {
        source: tf.target,
        target: tg.target,
        arrows: tg.arrows[o.w..].to_vec(),
    };
    let u = Path {
        source: tf.source,
        target: tg.source,
        arrows: tf.arrows[..tf.len() - o.w].to_vec(),
    };
    let left = f.sandwich(&Path::trivial(tf.source), &v);
    let right = g.sandwich(&u, &Path::trivial(tg.target));
    left.sub(&right)
}

impl GroebnerBasis {
    /// Completes `relations` to the reduced Gröbner basis of the ideal they
    /// generate and enumerates the nontips.
    pub fn compute(field: Field, quiver: &Quiver, relations: &[Element], degree_cap: usize) -> Result<Self, Error> {
        let degree_cap = degree_cap.max(2);
        let mut polys = interreduce(relations.to_vec());
        let mut certified = 0;
        loop {
            let ovs = overlaps(&polys);
            let reducer = Reducer::new(&polys);
            // Reduce overlaps degree by degree; stop at the first degree that
            // produces new elements.
            let mut new: Vec<Element> = Vec::new();
            let mut idx = 0;
            while idx < ovs.len() {
                let d = ovs[idx].degree;
                let end = idx + ovs[idx..].iter().take_while(|o| o.degree == d).count();
                let mut rems: Vec<Element> = ovs[idx..end]
                    .par_iter()
                    .map(|o| reducer.reduce(&s_element(&polys, o)))
                    .filter(|r| !r.is_zero())
                    .collect();
                certified = certified.max(d);
                if !rems.is_empty() {
                    if d > degree_cap {
                        return Err(Error::NotAdmissibleUpTo(degree_cap));
                    }
                    new.append(&mut rems);
                    break;
                }
                idx = end;
            }
            if new.is_empty() {
                break;
            }
            polys.extend(new);
            polys = interreduce(polys);
        }
        let (tip_index, tip_lengths) = index_of(&polys);
        let tips: Vec<Path> = polys.iter().map(|g| g.tip().unwrap().0.clone()).collect();

        // Nontips: extend nontips by one arrow while no tip is a suffix.
        let mut nontips: Vec<Path> = (0..quiver.num_vertices()).map(Path::trivial).collect();
        let mut layer = nontips.clone();
        let mut max_len = 0;
        while !layer.is_empty() {
            let mut next = Vec::new();
            for p in &layer {
                for (a, arrow) in quiver.arrows.iter().enumerate() {
                    if arrow.source != p.target {
                        continue;
                    }
                    let mut arrows = p.arrows.clone();
                    arrows.push(a);
                    let n = arrows.len();
                    let blocked = tip_lengths
                        .iter()
                        .any(|&l| l <= n && tip_index.contains_key(&arrows[n - l..]));
                    if !blocked {
                        next.push(Path {
                            source: p.source,
                            target: arrow.target,
                            arrows,
                        });
                    }
                }
            }
            if !next.is_empty() {
                max_len += 1;
                if max_len >= degree_cap {
                    return Err(Error::NotAdmissibleUpTo(degree_cap));
                }
            }
            nontips.extend(next.iter().cloned());
            layer = next;
        }
        nontips.sort();

        let gb = GroebnerBasis {
            field,
            quiver: quiver.clone(),
            elements: polys,
            tips,
            nontips,
            max_nontip_length: max_len,
            certified_degree: certified.max(max_len + 1),
            tip_index,
            tip_lengths,
        };
        gb.check_radical_nilpotent()?;
        Ok(gb)
    }

    /// Rejects finite-dimensional quotients in which the arrows do not
    /// generate a nilpotent ideal (e.g. `x² − x³`).
    fn check_radical_nilpotent(&self) -> Result<(), Error> {
        let index: HashMap<&Path, usize> = self.nontips.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let to_vec = |z: &Element| {
            let mut v = vec![self.field.zero(); self.nontips.len()];
            for (p, c) in &z.terms {
                v[index[p]] = c.clone();
            }
            v
        };
        let mut layer: Vec<Element> = (0..self.quiver.num_arrows())
            .map(|a| self.normal_form(&Element::from_path(self.field, self.quiver.arrow_path(a))))
            .filter(|z| !z.is_zero())
            .collect();
        let mut steps = 0;
        while !layer.is_empty() {
            steps += 1;
            if steps > self.nontips.len() {
                return Err(Error::NotAdmissible(
                    "the arrows do not generate a nilpotent ideal in the quotient".into(),
                ));
            }
            let mut span = Echelon::new(self.field, self.nontips.len());
            let mut next = Vec::new();
            for x in &layer {
                for a in 0..self.quiver.num_arrows() {
                    let xa = self.normal_form(&x.mul(&Element::from_path(self.field, self.quiver.arrow_path(a))));
                    if !xa.is_zero() && span.insert(to_vec(&xa)) {
                        next.push(xa);
                    }
                }
            }
            layer = next;
        }
        Ok(())
    }

    pub fn normal_form(&self, z: &Element) -> Element {
        reduce_with(z, &self.elements, &self.tip_index, &self.tip_lengths, None)
    }

    pub fn normal_form_path(&self, p: &Path) -> Element {
        self.normal_form(&Element::from_path(self.field, p.clone()))
    }

    pub fn is_tip_divisible(&self, p: &Path) -> bool {
        find_divisor(p, &self.tip_index, &self.tip_lengths, None).is_some()
    }

    pub fn contains(&self, z: &Element) -> bool {
        self.normal_form(z).is_zero()
    }

    /// True iff the ideal is spanned by the paths it contains.
    pub fn is_monomial(&self) -> bool {
        self.elements
            .iter()
            .all(|g| g.paths().all(|p| self.normal_form_path(p).is_zero()))
    }

    /// Nontips grouped by (source, target).
    pub fn nontips_between(&self) -> BTreeMap<(usize, usize), Vec<&Path>> {
        let mut m: BTreeMap<(usize, usize), Vec<&Path>> = BTreeMap::new();
        for p in &self.nontips {
            m.entry((p.source, p.target)).or_default().push(p);
        }
        m
    }

    /// The basis elements printed in `.qv` relation syntax.
    pub fn element_strings(&self) -> Vec<String> {
        self.elements.iter().map(|g| self.quiver.element_string(g)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qv::parse_spec;

    fn gb(text: &str) -> Result<GroebnerBasis, Error> {
        let s = parse_spec(text).unwrap();
        GroebnerBasis::compute(s.field, &s.quiver, &s.relations, 64)
    }

    #[test]
    fn local_square_zero() {
        let g = gb("field Q\nquiver\n vertices 1\n arrow l 1 -> 1\nrelations\n l^2\n").unwrap();
        assert_eq!(g.nontips.len(), 2);
        assert_eq!(g.max_nontip_length, 1);
        assert!(g.is_monomial());
    }

    #[test]
    fn hereditary_a2() {
        let g = gb("field Q\nquiver\n vertices 1 2\n arrow a 1 -> 2\nrelations\n").unwrap();
        assert_eq!(g.nontips.len(), 3);
        assert!(g.elements.is_empty());
        assert!(g.is_monomial());
    }

    #[test]
    fn not_admissible() {
        let e = gb("field Q\nquiver\n vertices 1\n arrow l 1 -> 1\nrelations\n").unwrap_err();
        assert_eq!(e, Error::NotAdmissibleUpTo(64));
        let e = gb("field Q\nquiver\n vertices 1\n arrow l 1 -> 1\nrelations\n l^2 - l^3\n").unwrap_err();
        assert!(matches!(e, Error::NotAdmissible(_)));
    }

    #[test]
    fn commutativity_relation_completes() {
        // xy − yx, x², y²: the quotient is the exterior algebra on two
        // generators, of dimension 4.
        let g =
            gb("field Q\nquiver\n vertices 1\n arrow x 1 -> 1\n arrow y 1 -> 1\nrelations\n x*y - y*x\n x^2\n y^2\n")
                .unwrap();
        assert_eq!(g.nontips.len(), 4);
        assert!(!g.is_monomial());
    }
}
