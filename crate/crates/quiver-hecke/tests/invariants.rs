//! Property tests for round trips and structural invariants.

use proptest::prelude::*;
use proptest::sample::Index;
use quiver_hecke::cli_io::svg::render_element;
use quiver_hecke::cli_io::{JobConfig, Task};
use quiver_hecke::combinatorics::{multipartitions_ph, standard_tableaux, tableau_degree, BoxOrder};
use quiver_hecke::geometry::Geometry;
use quiver_hecke::klr::{Kernel, KlrElement, Record};
use quiver_hecke::lightleaves::upsilon_word;
use quiver_hecke::paths::Path;
use quiver_hecke::perm;
use quiver_hecke::AlgebraParams;

fn geometries() -> Vec<Geometry> {
    [
        (4, vec![0], vec![2]),
        (5, vec![0], vec![3]),
        (7, vec![0, 3], vec![2, 2]),
    ]
    .into_iter()
    .map(|(e, s, h)| Geometry::new(&AlgebraParams::new(e, s, h, 0).unwrap()).unwrap())
    .collect()
}

fn config() -> impl Strategy<Value = JobConfig> {
    (
        prop::sample::select(Task::ALL.to_vec()),
        3usize..20,
        prop::collection::vec(-5i64..5, 1..3),
        1usize..4,
        0usize..9,
        prop::option::of(prop::sample::select(vec![2u64, 3, 101, 7919])),
        prop::option::of(0usize..10_000),
        any::<u64>(),
        prop::option::of(prop::collection::vec(1usize..4, 0..6)),
        prop::option::of(0usize..5),
    )
        .prop_map(|(task, e, sigma, h, n, modulus, budget, seed, path, cell)| JobConfig {
            task,
            e,
            h: vec![h; sigma.len()],
            sigma,
            n,
            modulus,
            budget,
            seed,
            path: path.filter(|p| !p.is_empty()),
            cell,
            policy: "random:4".into(),
            drop: vec!["spot".into(), "hex".into()],
            ..Default::default()
        })
}

proptest! {
    #[test]
    fn config_kv_round_trip(c in config()) {
        prop_assert_eq!(JobConfig::from_kv(&c.to_kv()).unwrap(), c);
    }

    #[test]
    fn path_tableau_round_trip(gi in 0usize..3, n in 0usize..8, a in any::<Index>(), b in any::<Index>()) {
        let g = &geometries()[gi];
        let p = g.params().with_n(n);
        let shapes = multipartitions_ph(&p, n);
        prop_assume!(!shapes.is_empty());
        let ts = standard_tableaux(a.get(&shapes));
        let t = b.get(&ts);
        let path = Path::from_tableau(g, t).unwrap();
        prop_assert!(path.is_dominant(g));
        prop_assert_eq!(&path.to_tableau(g).unwrap(), t);
        prop_assert_eq!(path.degree(g), tableau_degree(t, BoxOrder::Cyl, &p).unwrap());
        prop_assert_eq!(path.residues(g).unwrap(), t.residue_sequence(&p));
    }

    #[test]
    fn branching_word_is_reduced(gi in 0usize..3, n in 1usize..8, a in any::<Index>(), b in any::<Index>(), c in any::<Index>()) {
        let g = &geometries()[gi];
        let p = g.params().with_n(n);
        let shapes = multipartitions_ph(&p, n);
        prop_assume!(!shapes.is_empty());
        let ts = standard_tableaux(a.get(&shapes));
        let (s, t) = (b.get(&ts), c.get(&ts));
        let (ps, pt) = (Path::from_tableau(g, s).unwrap(), Path::from_tableau(g, t).unwrap());
        let (word, sign) = upsilon_word(g, &ps, &pt).unwrap();
        prop_assert!(sign == 1 || sign == -1);
        prop_assert!(perm::is_reduced(&word, n));
        // Reading ψ_word on e(res T) from the bottom lands on res S at the top.
        let k = Kernel::new(p.e);
        let x = k.word_from_bottom(&word, &t.residue_sequence(&p)).unwrap();
        prop_assert_eq!(x.len(), 1);
        let m = x.terms.keys().next().unwrap();
        prop_assert_eq!(m.top(), s.residue_sequence(&p));
    }

    #[test]
    fn records_and_render_round_trip(word in prop::collection::vec(1usize..6, 0..6), bottom in prop::collection::vec(0u8..4, 6), dot in 1usize..=6) {
        let k = Kernel::new(4);
        let x = k.word_from_bottom(&word, &bottom).unwrap();
        let x = k.y_times(dot, &x).unwrap();
        let recs: Vec<Record> = serde_json::from_str(&serde_json::to_string(&x.to_records()).unwrap()).unwrap();
        let y: KlrElement = k.from_records(6, &recs).unwrap();
        prop_assert_eq!(&y, &x);
        let s = render_element(&x);
        prop_assert_eq!(&s, &render_element(&y));
        prop_assert_eq!(s.matches("class=\"strand\"").count(), 6 * x.len());
        let dots: usize = x.terms.keys().map(|m| m.dot_degree()).sum();
        prop_assert_eq!(s.matches("class=\"dot\"").count(), dots);
    }
}
