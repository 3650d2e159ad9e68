// Gröbner bases against a brute-force oracle. When every path of length
// `d + 1` lies in `I`, the quotient `kQ/I` is `kQ_{≤d}` modulo the span of
// all truncated products `p·r·q` with `r` a defining relation. That span is
// computed here with a separate sparse elimination over big rationals.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use quivkit::field::{Rational, Scalar};
use quivkit::{Algebra, Element, Path};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Row = BTreeMap<usize, BigRational>;

fn to_big(c: &Scalar) -> BigRational {
    match c {
        Scalar::Q(Rational::Small(n, d)) => BigRational::new(BigInt::from(*n), BigInt::from(*d)),
        Scalar::Q(Rational::Big(b)) => (**b).clone(),
        Scalar::Fp { .. } => panic!("oracle works over the rationals"),
    }
}

fn from_big(field: quivkit::Field, c: &BigRational) -> Scalar {
    field.fraction(c.numer(), c.denom()).unwrap()
}

/// Row-echelon form keyed by pivot column (smallest column of each row).
#[derive(Default)]
pub struct Span {
    rows: BTreeMap<usize, Row>,
}

impl Span {
    fn reduce(&self, mut v: Row) -> Row {
        loop {
            let Some((&col, _)) = v.iter().find(|(c, _)| self.rows.contains_key(c)) else {
                return v;
            };
            let piv = &self.rows[&col];
            let f = v[&col].clone();
            for (c, x) in piv {
                let e = v.entry(*c).or_insert_with(BigRational::zero);
                *e -= &f * x;
                if e.is_zero() {
                    v.remove(c);
                }
            }
        }
    }

    pub fn insert(&mut self, v: Row) -> bool {
        let v = self.reduce(v);
        let Some((&col, lead)) = v.iter().next() else {
            return false;
        };
        let inv = BigRational::one() / lead;
        let v: Row = v.iter().map(|(c, x)| (*c, x * &inv)).collect();
        self.rows.insert(col, v);
        true
    }

    pub fn contains(&self, v: Row) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

pub struct Truncated<'a> {
    algebra: &'a Algebra,
    degree: usize,
    pub index: HashMap<Path, usize>,
    pub paths: Vec<Path>,
}

impl<'a> Truncated<'a> {
    pub fn new(algebra: &'a Algebra, degree: usize) -> Self {
        let q = algebra.quiver();
        let mut paths: Vec<Path> = (0..q.num_vertices()).map(Path::trivial).collect();
        let mut frontier = paths.clone();
        for _ in 0..degree {
            let mut next = Vec::new();
            for p in &frontier {
                for a in 0..q.num_arrows() {
                    if let Some(x) = p.compose(&q.arrow_path(a)) {
                        next.push(x);
                    }
                }
            }
            paths.extend(next.iter().cloned());
            frontier = next;
        }
        let index = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        Truncated {
            algebra,
            degree,
            index,
            paths,
        }
    }

    pub fn row(&self, z: &Element) -> Row {
        let mut r = Row::new();
        for (p, c) in &z.terms {
            if p.len() <= self.degree {
                r.insert(self.index[p], to_big(c));
            }
        }
        r
    }

    fn element(&self, r: &Row) -> Element {
        let mut z = Element::zero();
        for (i, c) in r {
            z.add_term(self.paths[*i].clone(), from_big(self.algebra.field(), c));
        }
        z
    }

    /// Span of all truncated `p·r·q` over the defining relations.
    fn ideal_span(&self) -> Span {
        let mut span = Span::default();
        for r in &self.algebra.spec.relations {
            let (s, t) = r.endpoints().unwrap();
            let rl = r.min_length();
            for p in self
                .paths
                .iter()
                .filter(|p| p.target == s && p.len() + rl <= self.degree)
            {
                for q in self
                    .paths
                    .iter()
                    .filter(|q| q.source == t && p.len() + rl + q.len() <= self.degree)
                {
                    let x = r.sandwich(p, q);
                    span.insert(self.row(&x));
                }
            }
        }
        span
    }
}

fn oracle_degree(algebra: &Algebra) -> usize {
    // All paths of length `loewy_length` vanish, so any degree at or above
    // `loewy_length - 1` works.
    (algebra.loewy_length().max(1) - 1).max(6)
}

/// Checks codimension, membership of the Gröbner elements, independence of
/// the nontips, and agreement on random elements. Returns the first
/// disagreement.
pub fn check_against_oracle(label: &str, algebra: &Algebra, seed: u64) -> Result<(), String> {
    let fail = |what: &str| Err(format!("{label}: {what}"));
    let d = oracle_degree(algebra);
    let t = Truncated::new(algebra, d);
    let span = t.ideal_span();
    if t.paths.len() - span.rank() != algebra.dim() {
        return fail(&format!(
            "truncated quotient has dimension {}, algebra {}",
            t.paths.len() - span.rank(),
            algebra.dim()
        ));
    }
    if algebra.gb.elements.iter().any(|g| !span.contains(t.row(g))) {
        return fail("Gröbner element outside the ideal");
    }
    // Nontips are independent modulo the ideal.
    let mut quotient = Span {
        rows: span.rows.clone(),
    };
    for b in algebra.basis() {
        let row: Row = [(t.index[b], BigRational::one())].into();
        if !quotient.insert(row) {
            return fail("nontips dependent modulo the ideal");
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..40 {
        let mut z = Row::new();
        for _ in 0..rng.gen_range(1..6) {
            let i = rng.gen_range(0..t.paths.len());
            let c = BigRational::from_integer(rng.gen_range(-3i64..=3).into());
            if !c.is_zero() {
                z.insert(i, c);
            }
        }
        let z = t.element(&z);
        let nf = algebra.gb.normal_form(&z);
        let diff = z.sub(&nf);
        if !span.contains(t.row(&diff)) {
            return fail("z - nf(z) not in the ideal");
        }
        if algebra.gb.contains(&z) != span.contains(t.row(&z)) {
            return fail("membership disagrees");
        }
        // A random ideal element built from the relations.
        if let Some(r) = algebra
            .spec
            .relations
            .get(rng.gen_range(0..algebra.spec.relations.len().max(1)))
        {
            let (s, e) = r.endpoints().unwrap();
            let ps: Vec<&Path> = t.paths.iter().filter(|p| p.target == s && p.len() <= 2).collect();
            let qs: Vec<&Path> = t.paths.iter().filter(|q| q.source == e && q.len() <= 2).collect();
            let x = r.sandwich(ps[rng.gen_range(0..ps.len())], qs[rng.gen_range(0..qs.len())]);
            if !algebra.gb.contains(&x) || !algebra.gb.contains(&x.add(&diff)) {
                return fail("product with a relation not in the ideal");
            }
        }
    }
    Ok(())
}
