//! Structural invariants checked on random bound quiver algebras and on the
//! bundled examples.

mod common;

use std::sync::Arc;

use proptest::prelude::*;
use quivkit::homology::{ideal_basis, ideal_module, ideal_square_zero, regular_module, Side};
use quivkit::iso::is_isomorphism;
use quivkit::linalg::{is_zero_vec, Vector};
use quivkit::module::FdModule;
use quivkit::qv::parse_spec;
use quivkit::resolution::{minimal_resolution, InfinityWitness};
use quivkit::tensor::{tensor_dim, FdBimodule};
use quivkit::{Algebra, ArrowSet, Caps, PdVerdict, Resolution};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn corpus(seed: u64) -> Arc<Algebra> {
    if seed.is_multiple_of(5) {
        common::load(common::EXAMPLES[(seed / 5) as usize % common::EXAMPLES.len()])
    } else {
        common::random_algebra(seed, 3 + (seed % 2) as usize, seed.is_multiple_of(3))
    }
}

fn random_vec(a: &Algebra, rng: &mut impl Rng) -> Vector {
    let f = a.field();
    (0..a.dim())
        .map(|_| {
            if rng.gen_bool(0.4) {
                f.from_i64(rng.gen_range(-3..=3))
            } else {
                f.zero()
            }
        })
        .collect()
}

fn random_set(a: &Algebra, rng: &mut impl Rng) -> ArrowSet {
    (0..a.num_arrows()).filter(|_| rng.gen_bool(0.35)).collect()
}

fn small_caps() -> Caps {
    Caps {
        resolution: 12,
        max_module_dim: 400,
        ..Caps::default()
    }
}

/// Minimality, `d² = 0`, exactness by dimension count, surjectivity of the
/// first cover and re-verification of any infinity witness.
fn check_resolution(res: &Resolution) -> Result<(), String> {
    if !res.is_minimal() {
        return Err("not minimal".into());
    }
    if !res.boundaries_compose_to_zero() {
        return Err("boundaries do not compose to zero".into());
    }
    for (j, step) in res.steps.iter().enumerate() {
        let here = res.syzygies[j].dim();
        let next = res.syzygies.get(j + 1).map_or(0, FdModule::dim);
        if step.projective.dim() != here + next {
            return Err(format!(
                "dim P_{j} = {} but Ω dims {here} + {next}",
                step.projective.dim()
            ));
        }
    }
    if let Some(step) = res.steps.first() {
        let gens: Vec<_> = step
            .generators
            .iter()
            .copied()
            .zip(step.images.iter().cloned())
            .collect();
        let generated: usize = res.module.generated_by(&gens).iter().map(|e| e.rank()).sum();
        if generated != res.module.dim() {
            return Err("first cover is not onto".into());
        }
    }
    if let PdVerdict::Finite { n } = res.verdict {
        if res.steps.len() != n + 1 && !res.module.is_zero() {
            return Err(format!("Finite({n}) with {} terms", res.steps.len()));
        }
    }
    if let PdVerdict::InfiniteCertified { a, b, witness } = &res.verdict {
        match witness {
            InfinityWitness::Periodic { iso } => {
                if !is_isomorphism(&res.syzygies[*a], &res.syzygies[*b], iso) {
                    return Err(format!("Ω^{a} → Ω^{b} is not an isomorphism"));
                }
            }
            InfinityWitness::SquareZeroLoop {
                loop_arrow,
                vertex,
                element,
            } => {
                let m = &res.syzygies[*a];
                let q = m.algebra.quiver();
                let lam = q.arrow(loop_arrow).unwrap();
                let v = q.vertex(vertex).unwrap();
                let sq = q.path(&[lam, lam]).unwrap();
                if !m.algebra.gb.normal_form_path(&sq).is_zero() {
                    return Err("loop does not square to zero".into());
                }
                if m.radical_at(v).contains(element) {
                    return Err("witness lies in the radical".into());
                }
                if !is_zero_vec(&m.act_path(element, &q.arrow_path(lam))) {
                    return Err("witness is not killed by the loop".into());
                }
            }
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 40, .. ProptestConfig::default() })]

    #[test]
    fn multiplication_is_associative_and_unital(seed in 0u64..400, r in any::<u64>()) {
        let a = corpus(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(r);
        let (x, y, z) = (random_vec(&a, &mut rng), random_vec(&a, &mut rng), random_vec(&a, &mut rng));
        let xy_z = a.multiply(&a.multiply(&x, &y).unwrap(), &z).unwrap();
        let x_yz = a.multiply(&x, &a.multiply(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(xy_z, x_yz);
        prop_assert_eq!(a.multiply(&a.unit(), &x).unwrap(), x.clone());
        prop_assert_eq!(a.multiply(&x, &a.unit()).unwrap(), x);
    }

    #[test]
    fn radical_is_nilpotent_of_loewy_length(seed in 0u64..400) {
        let a = corpus(seed);
        let powers = a.radical_powers();
        let ll = a.loewy_length();
        prop_assert_eq!(powers.len() + 1, ll);
        // J^{LL-1} · J = 0.
        if let Some(last) = powers.last() {
            for x in last.rows() {
                for arrow in 0..a.num_arrows() {
                    prop_assert!(is_zero_vec(&a.mul_arrow_right(x, arrow)));
                }
            }
        }
        // Λ = ⊕ e_i Λ e_j.
        let total: usize = (0..a.num_vertices())
            .flat_map(|i| (0..a.num_vertices()).map(move |j| (i, j)))
            .map(|(i, j)| a.corner_dimension(i, j))
            .sum();
        prop_assert_eq!(total, a.dim());
    }

    #[test]
    fn canonical_quotient_splits_dimension(seed in 0u64..400, r in any::<u64>()) {
        let a = corpus(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(r);
        let set = random_set(&a, &mut rng);
        prop_assume!(a.preremovable_witness(&set).is_none());
        let (gamma, iota) = a.canonical_quotient(&set).unwrap();
        let k = ideal_basis(&a, &set);
        prop_assert_eq!(a.dim(), gamma.dim() + k.rank());
        // ι is a unital algebra map with image complementary to K.
        prop_assert_eq!(iota.apply(&gamma, &a, &gamma.unit()), a.unit());
        let x = random_vec(&gamma, &mut rng);
        let y = random_vec(&gamma, &mut rng);
        let lhs = iota.apply(&gamma, &a, &gamma.multiply(&x, &y).unwrap());
        let rhs = a.multiply(&iota.apply(&gamma, &a, &x), &iota.apply(&gamma, &a, &y)).unwrap();
        prop_assert_eq!(lhs, rhs);
        let mut span = k.clone();
        for b in 0..gamma.dim() {
            prop_assert!(span.insert(iota.apply(&gamma, &a, &gamma.unit_vec(b))));
        }
    }

    #[test]
    fn ideal_bimodule_is_a_bimodule(seed in 0u64..400, r in any::<u64>()) {
        let a = corpus(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(r);
        let set = random_set(&a, &mut rng);
        prop_assume!(!set.is_empty());
        let k = quivkit::homology::ideal_bimodule(&a, &set);
        prop_assert!(k.actions_commute());
        prop_assert!(k.right_module().satisfies_relations());
        prop_assert!(k.left_module().satisfies_relations());
        let square_zero = ideal_square_zero(&a, &set);
        // K² = 0 iff every product of two basis vectors of K vanishes.
        let kb = ideal_basis(&a, &set);
        let brute = kb.rows().iter().all(|x| kb.rows().iter().all(|y| is_zero_vec(&a.multiply(x, y).unwrap())));
        prop_assert_eq!(square_zero, brute);
    }

    #[test]
    fn resolutions_are_minimal_exact_and_witnessed(seed in 0u64..400, r in any::<u64>()) {
        let a = corpus(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(r);
        let v = rng.gen_range(0..a.num_vertices());
        let caps = small_caps();
        let mut modules = vec![
            FdModule::simple(a.clone(), v),
            FdModule::simple(a.opposite(), v),
            FdModule::projective(a.clone(), v),
        ];
        let set = random_set(&a, &mut rng);
        if !set.is_empty() {
            modules.push(ideal_module(&a, &set, Side::Right));
            modules.push(ideal_module(&a, &set, Side::Left));
        }
        for m in modules {
            let res = minimal_resolution(&m, &caps);
            prop_assert!(check_resolution(&res).is_ok(), "{:?}", check_resolution(&res));
        }
        let p = minimal_resolution(&FdModule::projective(a.clone(), v), &caps);
        prop_assert_eq!(p.verdict.finite_value(), Some(0));
    }

    #[test]
    fn tensoring_with_the_regular_module_keeps_dimension(seed in 0u64..400, r in any::<u64>()) {
        let a = corpus(seed);
        prop_assume!(a.dim() <= 45);
        let mut rng = ChaCha8Rng::seed_from_u64(r);
        let v = rng.gen_range(0..a.num_vertices());
        let n = FdModule::simple(a.opposite(), v);
        prop_assert_eq!(tensor_dim(&regular_module(&a), &n).unwrap(), n.dim());
        let m = FdModule::projective(a.clone(), v);
        prop_assert_eq!(tensor_dim(&m, &FdModule::simple(a.opposite(), v)).unwrap(), 1);
    }

    #[test]
    fn presentation_round_trips(seed in 0u64..400) {
        let a = corpus(seed);
        let text = a.spec.to_qv();
        let again = Algebra::build(parse_spec(&text).unwrap(), 64).unwrap();
        prop_assert_eq!(again.gb.element_strings(), a.gb.element_strings());
        prop_assert_eq!(again.digest(), a.digest());
        let op = a.opposite();
        prop_assert_eq!(op.dim(), a.dim());
        for i in 0..a.num_vertices() {
            prop_assert_eq!(op.dim_right_projective(i), a.dim_left_projective(i));
        }
    }

    #[test]
    fn redundant_arrows_are_removable(seed in 0u64..400) {
        let a = corpus(seed);
        for x in quivkit::removal::redundant_arrows(&a) {
            let r = quivkit::removal::removable_classify(&a, &[x].into(), &small_caps());
            prop_assert_eq!(r.verdict, quivkit::removal::Verdict::TwoSided);
        }
    }
}

#[test]
fn radical_over_semisimple_is_a_bimodule() {
    for seed in 0..6 {
        let a = common::random_algebra(seed, 4, seed % 2 == 0);
        let (gamma, j): (Arc<Algebra>, FdBimodule) = quivkit::homology::radical_over_semisimple(&a);
        assert_eq!(gamma.dim(), a.num_vertices());
        assert_eq!(j.dim(), a.dim() - a.num_vertices());
        assert!(j.actions_commute());
    }
}
