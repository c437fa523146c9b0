//! Property tests: algebraic laws, serialization round trips and invariance
//! under relabelings, over seeded random inputs.

mod common;

use hfl::coeff::{RingElement, TruncatedRing};
use hfl::grid::GridDiagram;
use hfl::half::{fmt_half, parse_half, Ext};
use hfl::hyperbox::Hyperbox;
use hfl::songs::{compressed_collection, play, symphony_n, HypercubicalCollection, Song, SongSum};
use proptest::prelude::*;

fn ring_strategy() -> impl Strategy<Value = TruncatedRing> {
    (0usize..=3, 1u32..=4).prop_map(|(p, d)| TruncatedRing::new(p, d).unwrap())
}

fn element(ring: TruncatedRing, terms: &[Vec<u32>]) -> RingElement {
    let terms: Vec<Vec<u32>> = terms.iter().map(|t| t.iter().take(ring.num_vars).map(|e| e % (ring.delta + 1)).collect()).collect();
    ring.element(&terms)
}

fn terms() -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(prop::collection::vec(0u32..5, 3), 0..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(ring in ring_strategy(), a in terms(), b in terms(), c in terms()) {
        let (a, b, c) = (element(ring, &a), element(ring, &b), element(ring, &c));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.add(&a).is_zero());
        prop_assert_eq!(a.mul(&ring.one()), a.clone());
        if let Some(inv) = a.inverse() {
            prop_assert!(a.mul(&inv).is_one());
        }
        for i in 0..ring.num_vars {
            let mut p = ring.one();
            for _ in 0..ring.delta {
                p = p.mul(&ring.var(i));
            }
            prop_assert!(p.is_zero());
        }
    }

    #[test]
    fn half_integers_round_trip(v in -1_000_000i64..1_000_000) {
        prop_assert_eq!(parse_half(&fmt_half(v)).unwrap(), v);
        let e = Ext::Finite(v);
        prop_assert_eq!(Ext::parse(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn collections_satisfy_relations(seed in any::<u64>(), letters in 1usize..=3) {
        let mut rng = common::rng(seed);
        let ring = TruncatedRing::new(2, 3).unwrap();
        let c = common::random_collection(&mut rng, ring, letters, 4, 3);
        c.check_relations().unwrap();
        compressed_collection(&c).unwrap().check_relations().unwrap();
        let back = HypercubicalCollection::from_json(&c.to_json()).unwrap();
        prop_assert_eq!(back, c);
    }

    #[test]
    fn playing_is_additive(seed in any::<u64>(), i in 0usize..7, j in 0usize..7) {
        let mut rng = common::rng(seed);
        let ring = TruncatedRing::new(1, 3).unwrap();
        let c = common::random_collection(&mut rng, ring, 3, 3, 2);
        let songs: Vec<Song> = symphony_n(3).songs.iter().cloned().collect();
        let a = SongSum::from_songs(&c.alphabet, [songs[i % songs.len()].clone()]).unwrap();
        let b = SongSum::from_songs(&c.alphabet, [songs[j % songs.len()].clone()]).unwrap();
        let mut sum = play(&a, &c).unwrap();
        sum.add_assign(&play(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(play(&a.add(&b), &c).unwrap(), sum);
    }

    #[test]
    fn hyperboxes_round_trip_and_compress(seed in any::<u64>(), a in 0u32..=2, b in 1u32..=2) {
        let mut rng = common::rng(seed);
        let ring = TruncatedRing::new(1, 2).unwrap();
        let h = common::random_hyperbox(&mut rng, ring, &[a, b], 2);
        let back = Hyperbox::from_json(&h.to_json()).unwrap();
        prop_assert_eq!(&back, &h);
        let cube = h.compress().unwrap();
        cube.validate().unwrap();
        prop_assert!(cube.size.iter().all(|&d| d <= 1));
    }

    #[test]
    fn grid_homology_is_translation_invariant(seed in any::<u64>(), n in 2usize..=4, free in 0usize..=1) {
        prop_assume!(n - free >= 2);
        let mut rng = common::rng(seed);
        let g = common::random_grid(&mut rng, n, free);
        let t = g.translate().unwrap();
        let reparsed = GridDiagram::parse(&g.to_string()).unwrap();
        prop_assert_eq!(&reparsed.o, &g.o);
        prop_assert_eq!(&reparsed.x, &g.x);
        for s in [Ext::PosInf, Ext::NegInf] {
            let point = vec![s; g.num_components()];
            for delta in 1..=2 {
                let a = g.build_complex(&point, delta).unwrap().homology_ranks().unwrap().total;
                let b = t.build_complex(&point, delta).unwrap().homology_ranks().unwrap().total;
                prop_assert_eq!(a, b);
            }
        }
    }
}

#[test]
fn songs_print_and_parse_back() {
    for n in 1..=4 {
        for song in &symphony_n(n).songs {
            assert_eq!(&Song::parse(&song.to_string()).unwrap(), song);
        }
    }
}
