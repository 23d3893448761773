use num_bigint::BigInt;
use proptest::prelude::*;
use wdc_core::algebra::{z_closure, z_star_closure, ClosureOracle};
use wdc_core::hyperplane::enumerate_sections;
use wdc_core::matrix::ExactMatrix;
use wdc_core::{Grid, PointSet, WeightSet};

fn small_grids() -> Vec<Grid> {
    ["cube:2", "cube:3", "cube:4", "3,3", "2,3", "2,2,3", "4,3", "4,4"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect()
}

#[test]
fn z_star_closure_is_a_closure_operator() {
    for g in small_grids() {
        let n = g.max_weight();
        for d in 0..=n {
            let oracle = ClosureOracle::new(&g, d).unwrap();
            for e in WeightSet::all_subsets(n) {
                let z = oracle.z_star_closure(&e).unwrap();
                assert!(e.is_subset(&z), "{g} d={d} E={e}");
                assert_eq!(oracle.z_star_closure(&z).unwrap(), z, "{g} d={d} E={e}");
                for j in (0..=n).filter(|&j| !e.contains(j)) {
                    let mut bigger = e.clone();
                    bigger.insert(j);
                    assert!(z.is_subset(&oracle.z_star_closure(&bigger).unwrap()));
                }
                if d < n {
                    let next = z_star_closure(&g, d + 1, &e).unwrap();
                    assert!(next.is_subset(&z), "antitone: {g} d={d} E={e}");
                }
                // the lift of the Z*-closure sits inside the Z-closure
                let zc = oracle.z_closure(&g.lift(&e).unwrap()).unwrap();
                assert!(g.lift(&z).unwrap().is_subset(&zc));
                assert_eq!(g.weight_core(&zc), z);
            }
        }
    }
}

#[test]
fn closure_builder_and_initial_segments() {
    for g in small_grids() {
        let n = g.max_weight();
        for d in 0..=n {
            let oracle = ClosureOracle::new(&g, d).unwrap();
            for r in d..=n {
                let seg = WeightSet::interval(n, 0, r).unwrap();
                assert!(oracle.z_star_closure(&seg).unwrap().is_full(), "{g} d={d} r={r}");
            }
            for e in WeightSet::all_subsets(n).filter(|e| e.len() > d) {
                let z = oracle.z_star_closure(&e).unwrap();
                let (lo, hi) = (e.min().unwrap(), e.max().unwrap());
                assert!((0..=lo).chain(hi..=n).all(|j| z.contains(j)), "{g} d={d} E={e}");
            }
        }
    }
}

#[test]
fn z_closure_inside_h_closure_and_hc_from_h_closures() {
    for g in small_grids() {
        let idx = enumerate_sections(&g).unwrap();
        let n = g.max_weight();
        let all = g.all_points().unwrap();
        for e in WeightSet::all_subsets(n).filter(|e| !e.is_full()) {
            let s = g.lift(&e).unwrap();
            let mut first_proper = None;
            for d in 0..=n.min(6) {
                let h = idx.h_closure(d, &s).unwrap();
                assert!(z_closure(&g, d, &s).unwrap().is_subset(&h), "{g} d={d} E={e}");
                if first_proper.is_none() && h != all {
                    first_proper = Some(d);
                }
            }
            if let Some(d) = first_proper {
                assert_eq!(idx.hc(&e).unwrap(), d, "{g} E={e}");
            }
        }
    }
}

#[test]
fn hyperplane_witnesses_trace_what_they_claim() {
    for g in small_grids().into_iter().filter(Grid::is_uniform) {
        let idx = enumerate_sections(&g).unwrap();
        let n = g.max_weight();
        let all = g.all_points().unwrap();
        for e in WeightSet::all_subsets(n).filter(|e| !e.is_full()) {
            let lifted = g.lift(&e).unwrap();
            let hc = idx.hc_witness(&e).unwrap().trace(&g).unwrap();
            assert!(lifted.is_subset(&hc) && hc != all, "{g} E={e}");
            let phc = idx.phc_witness(&e).unwrap().trace(&g).unwrap();
            assert!(lifted.is_subset(&phc));
            assert!((0..=n).filter(|j| !e.contains(*j)).all(|j| {
                let layer = g.lift(&WeightSet::from_iter(n, [j]).unwrap()).unwrap();
                !layer.is_subset(&phc)
            }));
            let ehc = idx.ehc_witness(&e).unwrap().trace(&g).unwrap();
            assert_eq!(ehc, lifted, "{g} E={e}");
        }
    }
}

/// Whether h-closures of weight-determined sets stay weight-determined off
/// the cube is open; this only records the instances.
#[test]
fn h_closure_weight_determinedness_is_recorded() {
    for spec in ["3,3", "4,3", "2,2,3"] {
        let g: Grid = spec.parse().unwrap();
        let idx = enumerate_sections(&g).unwrap();
        let n = g.max_weight();
        let (mut total, mut determined) = (0, 0);
        for e in WeightSet::all_subsets(n) {
            for d in 0..=n.min(3) {
                let h = idx.h_closure(d, &g.lift(&e).unwrap()).unwrap();
                total += 1;
                determined += usize::from(g.lift(&g.weight_core(&h)).unwrap() == h);
            }
        }
        println!("{spec}: {determined}/{total} h-closures weight-determined");
    }
}

proptest! {
    #[test]
    fn rank_ignores_row_and_column_order(
        rows in proptest::collection::vec(proptest::collection::vec(-4i64..=4, 5), 1..6),
        seed in any::<u64>(),
    ) {
        let m = ExactMatrix::from_i64_rows(&rows);
        let mut perm_rows = rows.clone();
        perm_rows.rotate_left((seed % rows.len() as u64) as usize);
        let shift = (seed / 7 % 5) as usize;
        for r in &mut perm_rows {
            r.rotate_left(shift);
        }
        prop_assert_eq!(m.rank(), ExactMatrix::from_i64_rows(&perm_rows).rank());
        let ker = m.null_space();
        prop_assert_eq!(ker.len() + m.rank(), 5);
        for v in &ker {
            for r in &rows {
                let dot: BigInt = r.iter().zip(v).map(|(a, b)| BigInt::from(*a) * b).sum();
                prop_assert_eq!(dot, BigInt::from(0));
            }
        }
    }

    #[test]
    fn hilbert_function_sees_only_the_closure(mask in any::<u16>(), d in 0usize..=4) {
        let g = Grid::cube(4).unwrap();
        let oracle = ClosureOracle::new(&g, d).unwrap();
        let a = PointSet::from_indices(16, (0..16).filter(|i| mask >> i & 1 == 1));
        let z = oracle.z_closure(&a).unwrap();
        prop_assert!(a.is_subset(&z));
        prop_assert_eq!(oracle.hilbert(&a).unwrap(), oracle.hilbert(&z).unwrap());
    }
}
