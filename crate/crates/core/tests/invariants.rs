mod common;

use cubical_core::chain::{chain_realization, homology, Ring};
use cubical_core::cube::{factorize, hom_count};
use cubical_core::cubical::{day_tensor, representable};
use cubical_core::format::{cubical_from_file, cubical_to_file};
use cubical_core::presheaf::generated_by;
use cubical_core::site::{CubeSite, Site};
use cubical_core::{CubeMap, Flavor, Generator, RawWord, TruncatedCubicalSet};
use proptest::prelude::*;

fn flavor() -> impl Strategy<Value = Flavor> {
    prop_oneof![Just(Flavor::Reduced), Just(Flavor::Connections)]
}

/// A composable word starting on `□^src`, never leaving dimensions `<= 4`.
fn word(f: Flavor, src: usize, picks: &[usize]) -> RawWord {
    let mut dim = src;
    let mut applied = Vec::new();
    for &k in picks {
        let gens = common::gens_on(f, dim, 4);
        if gens.is_empty() {
            break;
        }
        let g = gens[k % gens.len()];
        dim = g.target_dim(dim).unwrap();
        applied.push(g);
    }
    applied.reverse();
    RawWord::new(f, src, applied)
}

fn arb_word() -> impl Strategy<Value = RawWord> {
    (
        flavor(),
        0usize..=3,
        prop::collection::vec(0usize..64, 0..8),
    )
        .prop_map(|(f, s, p)| word(f, s, &p))
}

fn arb_map(f: Flavor) -> impl Strategy<Value = CubeMap> {
    (0usize..=2, 0usize..=2, any::<prop::sample::Index>()).prop_map(move |(m, n, i)| {
        let homs = CubeSite::new(f).homs(m, n);
        homs.maps[i.index(homs.len())].clone()
    })
}

/// A sub-object of `□[2]` generated by a few random cells.
fn arb_sub() -> impl Strategy<Value = TruncatedCubicalSet> {
    (
        flavor(),
        prop::collection::vec((0usize..=2, any::<prop::sample::Index>()), 0..4),
    )
        .prop_map(|(f, picks)| {
            let sq = representable(f, 2, 2).unwrap();
            let cells: Vec<(usize, usize)> = picks
                .into_iter()
                .map(|(d, i)| (d, i.index(sq.count(d))))
                .collect();
            generated_by(&sq, &cells).unwrap().0
        })
}

proptest! {
    #[test]
    fn normal_form_denotes_the_word(w in arb_word()) {
        let nf = w.normalize().unwrap();
        prop_assert!(nf.is_normal());
        let oracle = common::eval_word(&w.gens, w.src_dim).unwrap();
        let table = nf.eval().unwrap();
        for (p, v) in common::points(w.src_dim).iter().zip(&oracle) {
            prop_assert_eq!(&table.at(p), v);
        }
        prop_assert_eq!(nf.to_raw().normalize().unwrap(), nf);
    }

    #[test]
    fn factorize_recovers_the_map(w in arb_word()) {
        let f = w.eval().unwrap();
        let found = factorize(&f, w.flavor).unwrap().expect("a composite of generators factors");
        prop_assert_eq!(found.to_map(), w.to_map().unwrap());
    }

    #[test]
    fn interchange(g in arb_map(Flavor::Connections), h in arb_map(Flavor::Reduced), seed in any::<prop::sample::Index>()) {
        let site = CubeSite::new(Flavor::Connections);
        let after_g = site.homs(g.tgt(), 2);
        let after_h = site.homs(h.tgt(), 1);
        let g2 = &after_g.maps[seed.index(after_g.len())];
        let h2 = &after_h.maps[seed.index(after_h.len())];
        prop_assert_eq!(g2.after(&g).tensor(&h2.after(&h)), g2.tensor(h2).after(&g.tensor(&h)));
    }

    #[test]
    fn tensor_of_representables_counts(f in flavor(), p in 0usize..=2, q in 0usize..=2) {
        let t = p + q;
        let x = day_tensor(&representable(f, p, t).unwrap(), &representable(f, q, t).unwrap()).unwrap();
        for n in 0..=t {
            prop_assert_eq!(x.count(n), hom_count(f, n, t).unwrap());
        }
    }

    #[test]
    fn realization_is_a_complex_with_oracle_homology(x in arb_sub()) {
        let c = chain_realization(&x, Ring::Integers).unwrap();
        c.validate().unwrap();
        let hs = homology(&c).unwrap();
        let oracle = common::torsion_free_betti(&c).expect("sub-objects of the square have no torsion");
        let ours: Vec<usize> = (0..oracle.len()).map(|n| hs.iter().find(|h| h.degree == n).map_or(0, |h| h.betti)).collect();
        prop_assert_eq!(ours, oracle);
    }

    #[test]
    fn files_round_trip(x in arb_sub()) {
        x.validate().unwrap();
        let back = cubical_from_file(&cubical_to_file(&x)).unwrap();
        prop_assert_eq!(back, x);
    }
}

#[test]
fn generators_are_the_listed_ones() {
    // The oracle's generator list matches the site's.
    for f in Flavor::ALL {
        let site: Vec<Generator> = CubeSite::new(f)
            .generators(4)
            .into_iter()
            .filter(|g| g.src == 2)
            .map(|g| g.as_cube_generator())
            .collect();
        let mut ours = common::gens_on(f, 2, 4);
        let mut theirs = site;
        ours.sort();
        theirs.sort();
        assert_eq!(ours, theirs);
    }
}
