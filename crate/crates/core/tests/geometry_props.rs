use std::collections::BTreeSet;

use num_traits::Zero;
use orange_core::catalog::{self, CatalogEntry};
use orange_core::exactmath::{ratio, Rational};
use orange_core::splinedim::facet_linear_form;
use orange_core::{binom, spline_dim, standard_orange, Orange, Simplex, SimplicialComplex};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Catalog entries cheap enough for repeated oracle calls.
fn small_entries() -> Vec<CatalogEntry> {
    catalog::catalog().into_iter().filter(|e| e.k <= 3).collect()
}

fn moved(complex: &SimplicialComplex, seed: u64) -> SimplicialComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = complex.ambient_dim();
    // unit lower-triangular times upper-triangular with nonzero diagonal: always invertible
    let mut linear = vec![vec![Rational::zero(); k]; k];
    for (r, row) in linear.iter_mut().enumerate() {
        let mut diag = 0;
        while diag == 0 {
            diag = rng.gen_range(-3..=3);
        }
        row[r] = ratio(diag, rng.gen_range(1..=2));
        for x in &mut row[r + 1..] {
            *x = ratio(rng.gen_range(-2..=2), 1);
        }
    }
    let lower: Vec<Vec<Rational>> = (0..k)
        .map(|r| {
            (0..k)
                .map(|c| {
                    if r == c {
                        ratio(1, 1)
                    } else if c < r {
                        ratio(rng.gen_range(-1..=1), 1)
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let shift: Vec<Rational> = (0..k).map(|_| ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3))).collect();
    complex.map_vertices(|p| {
        let up: Vec<Rational> = linear.iter().map(|row| row.iter().zip(p).map(|(a, x)| a * x).sum()).collect();
        lower.iter().zip(&shift).map(|(row, s)| row.iter().zip(&up).map(|(a, x)| a * x).sum::<Rational>() + s).collect()
    })
}

fn shuffled(complex: &SimplicialComplex, seed: u64) -> (SimplicialComplex, Vec<usize>, Vec<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..complex.vertices().len()).collect();
    perm.shuffle(&mut rng);
    let mut order: Vec<usize> = (0..complex.maximal_faces().len()).collect();
    order.shuffle(&mut rng);
    (complex.relabeled(&perm, &order).unwrap(), perm, order)
}

fn entry() -> impl Strategy<Value = CatalogEntry> {
    prop::sample::select(small_entries())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn orange_profile_survives_relabeling(e in entry(), seed in any::<u64>()) {
        let (relabeled, perm, _) = shuffled(&e.complex, seed);
        relabeled.validate().unwrap();
        let before = e.complex.detect_orange().unwrap();
        let after = relabeled.detect_orange().unwrap();
        prop_assert_eq!((before.k, before.i, before.n), (after.k, after.i, after.n));
        let mapped = Simplex::new(before.medial.vertices().iter().map(|&v| perm[v]).collect()).unwrap();
        prop_assert_eq!(mapped, after.medial);
    }

    #[test]
    fn adjacency_is_symmetric(e in entry(), seed in any::<u64>()) {
        let (relabeled, perm, order) = shuffled(&e.complex, seed);
        let unordered = |c: &SimplicialComplex, face_id: &dyn Fn(usize) -> usize, vertex: &dyn Fn(usize) -> usize| {
            c.adjacent_pairs()
                .iter()
                .map(|p| {
                    let (a, b) = (face_id(p.first), face_id(p.second));
                    let shared: Vec<usize> = p.shared.vertices().iter().map(|&v| vertex(v)).collect();
                    (a.min(b), a.max(b), Simplex::new(shared).unwrap())
                })
                .collect::<BTreeSet<_>>()
        };
        let original = unordered(&e.complex, &|f| f, &|v| v);
        let back = unordered(&relabeled, &|f| order[f], &|v| perm.iter().position(|&x| x == v).unwrap());
        prop_assert_eq!(original, back);
        for p in relabeled.adjacent_pairs() {
            prop_assert!(p.first < p.second);
        }
    }

    #[test]
    fn facet_forms_vanish_on_their_facet(e in entry(), seed in any::<u64>()) {
        let c = moved(&e.complex, seed);
        for p in c.adjacent_pairs() {
            let l = facet_linear_form(&c, &p.shared).unwrap();
            prop_assert_eq!(l.degree(), Some(1));
            for v in p.shared.vertices() {
                prop_assert!(l.eval(c.vertex(*v)).is_zero());
            }
            let off: Vec<usize> = c.maximal_faces()[p.first].difference(&p.shared).vertices().to_vec();
            prop_assert!(!l.eval(c.vertex(off[0])).is_zero());
        }
    }

    #[test]
    fn spline_dimension_is_monotone_and_bounded(e in entry(), r in 0u32..3, d in 0u32..4) {
        let k = e.k as u64;
        let here = spline_dim(&e.complex, r, d).unwrap();
        prop_assert!(here <= spline_dim(&e.complex, r, d + 1).unwrap());
        prop_assert!(here >= spline_dim(&e.complex, r + 1, d).unwrap());
        let global = binom(u64::from(d) + k, k as i64) as usize;
        prop_assert!(here >= global);
        if r >= d {
            prop_assert_eq!(here, global);
        }
    }

    #[test]
    fn projection_lemmas(e in entry(), seed in any::<u64>()) {
        let c = moved(&e.complex, seed);
        let orange = Orange::analyze(&c).unwrap();
        let proj = &orange.projected;
        let tau = &orange.profile.medial;
        // every maximal face projects to a distinct maximal face of C
        let images: BTreeSet<usize> = proj.face_map.iter().copied().collect();
        prop_assert_eq!(images.len(), c.maximal_faces().len());
        prop_assert_eq!(images.len(), proj.complex.maximal_faces().len());
        for (f, sigma) in c.maximal_faces().iter().enumerate() {
            let omega = sigma.difference(tau);
            prop_assert_eq!(c.join(&omega, tau).unwrap(), sigma.clone());
            let image = proj.image_of(sigma);
            prop_assert_eq!(&image, &proj.complex.maximal_faces()[proj.face_map[f]]);
            prop_assert_eq!(image.dim(), sigma.dim() - tau.dim());
        }
        // round trip through the standard form
        let standard = standard_orange(proj, &orange.adapted_medial()).unwrap();
        let again = Orange::analyze(&standard.complex).unwrap();
        prop_assert_eq!((again.k(), again.i()), (orange.k(), orange.i()));
        for r in 0..=1 {
            for d in 0..=2 {
                prop_assert_eq!(
                    spline_dim(&again.projected.complex, r, d).unwrap(),
                    spline_dim(&proj.complex, r, d).unwrap()
                );
            }
        }
    }

    #[test]
    fn dimensions_survive_affine_maps(e in entry(), seed in any::<u64>(), r in 0u32..3, d in 0u32..4) {
        let c = moved(&e.complex, seed);
        prop_assert_eq!(spline_dim(&c, r, d).unwrap(), spline_dim(&e.complex, r, d).unwrap());
    }
}
