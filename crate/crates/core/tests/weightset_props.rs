use proptest::prelude::*;
use wdc_core::WeightSet;

fn full(n: usize) -> WeightSet {
    WeightSet::full(n)
}

#[test]
fn lbar_is_a_closure_operator_antitone_in_d() {
    for n in 0..=10 {
        for e in WeightSet::all_subsets(n) {
            let mut prev: Option<WeightSet> = None;
            for d in 0..=n {
                let l = e.l_bar(d).unwrap();
                assert!(e.is_subset(&l), "extensive: N={n} d={d} E={e}");
                assert_eq!(l.l_bar(d).unwrap(), l, "idempotent: N={n} d={d} E={e}");
                // monotone: adding one weight can only grow the closure
                for j in (0..=n).filter(|&j| !e.contains(j)) {
                    let mut bigger = e.clone();
                    bigger.insert(j);
                    assert!(l.is_subset(&bigger.l_bar(d).unwrap()), "monotone: N={n} d={d} E={e} +{j}");
                }
                if let Some(p) = &prev {
                    assert!(l.is_subset(p), "antitone: N={n} d={d} E={e}");
                }
                prev = Some(l);
            }
        }
    }
}

#[test]
fn linear_lbar_matches_naive_iteration_exhaustively() {
    for n in 0..=14 {
        for e in WeightSet::all_subsets(n) {
            for d in 0..=n {
                assert_eq!(e.l_bar(d).unwrap(), e.l_bar_naive(d).unwrap(), "N={n} d={d} E={e}");
            }
        }
    }
}

#[test]
fn admitting_iff_closure_is_proper() {
    for n in 0..=12 {
        for e in WeightSet::all_subsets(n) {
            for d in 0..=n {
                let proper = !e.l_bar(d).unwrap().is_full();
                assert_eq!(proper, e.admitting(d).unwrap().witnessed(), "N={n} d={d} E={e}");
            }
        }
    }
}

#[test]
fn fixpoint_iff_tails_inside() {
    for n in 0..=12 {
        for e in WeightSet::all_subsets(n) {
            for d in 0..=n {
                let fixed = e.l_bar(d).unwrap() == e;
                // T_{N,i} is empty for i <= 0 and all of [0,N] for i > N
                let i = e.len().saturating_sub(d);
                let tails_inside = match i {
                    0 => true,
                    i if i > n => e.is_full(),
                    i => WeightSet::two_tails(n, i).unwrap().is_subset(&e),
                };
                assert_eq!(fixed, tails_inside, "N={n} d={d} E={e}");
            }
        }
    }
}

#[test]
fn two_tails_are_closed_exactly_up_to_their_index() {
    for n in 0..=14 {
        for i in 0..=n {
            let t = WeightSet::two_tails(n, i).unwrap();
            for d in 0..=n {
                let expected = if i <= d { t.clone() } else { full(n) };
                assert_eq!(t.l_bar(d).unwrap(), expected, "N={n} i={i} d={d}");
            }
        }
    }
}

#[test]
fn residue_classes_fill() {
    for n in 1..=14 {
        for m in 1..=n {
            for i in 0..m {
                let e = WeightSet::residue_class(n, m, i).unwrap();
                assert!(e.l_bar(n / m - 1).unwrap().is_full(), "N={n} m={m} i={i}");
            }
        }
    }
}

#[test]
fn stabilization_is_short() {
    for n in 0..=12 {
        for e in WeightSet::all_subsets(n) {
            for d in 0..=n {
                let k = e.stabilization_index(d).unwrap();
                assert!(k <= (n + 2) / 2, "N={n} d={d} E={e}: {k}");
                let iterates = e.l_iterates(d).unwrap();
                assert_eq!(iterates.last().unwrap(), &e.l_bar(d).unwrap());
            }
        }
    }
    let e0 = WeightSet::residue_class(12, 2, 0).unwrap();
    assert_eq!(e0.stabilization_index(5).unwrap(), e0.l_iterates(5).unwrap().len() - 1);
}

fn weight_set(max_n: usize) -> impl Strategy<Value = WeightSet> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n + 1)
            .prop_map(move |bits| WeightSet::from_iter(n, (0..=n).filter(|&j| bits[j])).unwrap())
    })
}

proptest! {
    #[test]
    fn linear_lbar_matches_naive_on_large_sets(e in weight_set(3000), frac in 0.0f64..=1.0) {
        let d = (frac * e.max_weight() as f64) as usize;
        prop_assert_eq!(e.l_bar(d).unwrap(), e.l_bar_naive(d).unwrap());
    }

    #[test]
    fn text_form_round_trips(e in weight_set(200)) {
        let back = WeightSet::parse(e.max_weight(), &e.to_string()).unwrap();
        prop_assert_eq!(back, e);
    }

    #[test]
    fn one_step_agrees_with_its_formula(e in weight_set(60), frac in 0.0f64..=1.0) {
        let d = (frac * e.max_weight() as f64) as usize;
        let step = e.l_step(d).unwrap();
        if e.len() <= d {
            prop_assert_eq!(step, e);
        } else {
            let s = e.len();
            let lo = e.select(s - d - 1).unwrap();
            let hi = e.select(d).unwrap();
            let mut want = e.clone();
            want.insert_range(0, lo);
            want.insert_range(hi, e.max_weight());
            prop_assert_eq!(step, want);
        }
    }
}
