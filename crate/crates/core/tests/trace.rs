use std::collections::BTreeMap;

use logalg_core::measure::{Cell, CellModel, CellTail, ClosedForm};
use logalg_core::trace::{
    build_counterexample, certify_divergence, decide_coincidence, decide_inclusion, essentially_bounded,
    Direction, TracePair, Which,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// A cell given as `(mass, h)`, each a `(numerator, denominator)` pair.
type RawCell = ((i64, i64), (i64, i64));

fn model(prefix: &[RawCell], tail: Option<(ClosedForm, ClosedForm)>) -> TracePair {
    let cells = prefix
        .iter()
        .map(|&(m, h)| Cell {
            mass: r(m.0, m.1),
            h: r(h.0, h.1),
        })
        .collect();
    let tail = tail.map(|(mass, h)| CellTail { mass, h });
    TracePair::new(CellModel::new(cells, tail).unwrap())
}

fn form_strategy() -> impl Strategy<Value = ClosedForm> {
    (
        1i64..5,
        1i64..4,
        -2i64..3,
        prop::sample::select(vec![(1, 3), (1, 2), (1, 1), (3, 2), (2, 1)]),
    )
        .prop_map(|(cn, cd, p, q)| ClosedForm::from_ratios((cn, cd), (p, 1), q).unwrap())
}

fn pair_strategy() -> impl Strategy<Value = TracePair> {
    (
        prop::collection::vec(((1i64..9, 1i64..9), (1i64..40, 1i64..9)), 0..6),
        prop::option::of((form_strategy(), form_strategy())),
    )
        .prop_map(|(prefix, tail)| model(&prefix, tail))
}

/// Groups of `⌊h(m)⌋ = c·m^p` computed with exact integer arithmetic over
/// the first `limit` cells.
fn polynomial_groups(c: i64, p: u32, limit: u64) -> BTreeMap<u64, Vec<u64>> {
    let mut groups: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for m in 1..=limit {
        let n = (BigInt::from(c) * BigInt::from(m).pow(p)).to_u64_digits().1;
        let n = n.first().copied().unwrap_or(0);
        if n >= 1 {
            groups.entry(n).or_default().push(m);
        }
    }
    groups
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn swapping_roles_swaps_the_inclusions(tp in pair_strategy()) {
        let swapped = tp.swapped();
        for (d, e) in [(Direction::MuInNu, Direction::NuInMu), (Direction::NuInMu, Direction::MuInNu)] {
            prop_assert_eq!(
                decide_inclusion(&tp, d).unwrap().holds,
                decide_inclusion(&swapped, e).unwrap().holds
            );
        }
    }

    #[test]
    fn coincidence_is_both_inclusions(tp in pair_strategy()) {
        let both = decide_inclusion(&tp, Direction::MuInNu).unwrap().holds
            && decide_inclusion(&tp, Direction::NuInMu).unwrap().holds;
        prop_assert_eq!(decide_coincidence(&tp).unwrap().holds, both);
    }

    #[test]
    fn witnesses_exceed_the_threshold(tp in pair_strategy()) {
        for which in [Which::Forward, Which::Inverse] {
            let d = essentially_bounded(&tp, which).unwrap();
            if let Some(w) = d.witness {
                let ln_h = tp.model().ln_h(w.cell).unwrap();
                let ln = if which == Which::Forward { ln_h } else { -ln_h };
                prop_assert!(ln > 1e6f64.ln());
            }
            prop_assert_eq!(d.bounded, d.bound.is_some());
        }
    }

    #[test]
    fn fifty_terms_exist_when_h_grows(
        c in 1i64..4,
        p in 1i64..4,
        q in prop::sample::select(vec![(1i64, 1i64), (3, 2), (2, 1)]),
        mass_q in prop::sample::select(vec![(1i64, 2i64), (1, 3), (9, 10)]),
    ) {
        let tp = model(
            &[],
            Some((
                ClosedForm::from_ratios((1, 1), (0, 1), mass_q).unwrap(),
                ClosedForm::from_ratios((c, 1), (p, 1), q).unwrap(),
            )),
        );
        prop_assert!(!decide_inclusion(&tp, Direction::MuInNu).unwrap().holds);
        let ce = build_counterexample(&tp, 50).unwrap();
        let cert = certify_divergence(&ce, &tp).unwrap();
        prop_assert!(cert.nu_partial_lower >= cert.harmonic_lower);
        prop_assert!(cert.nu_partial_lower <= cert.nu_partial_upper);
    }

    #[test]
    fn grouping_matches_exact_floors(c in 1i64..4, p in 1u32..3, k in 1usize..30) {
        let tp = model(
            &[],
            Some((
                ClosedForm::from_ratios((1, 1), (0, 1), (1, 2)).unwrap(),
                ClosedForm::from_ratios((c, 1), (p as i64, 1), (1, 1)).unwrap(),
            )),
        );
        let ce = build_counterexample(&tp, k).unwrap();
        let oracle = polynomial_groups(c, p, 200);
        for (group, (n, cells)) in ce.groups.iter().zip(oracle.iter()) {
            prop_assert_eq!(&group.n, &BigInt::from(*n));
            prop_assert_eq!(&group.cells, cells);
        }
        for (i, group) in ce.groups.iter().enumerate() {
            let kk = (i + 1) as f64;
            let g = 1.0 / (kk * kk * group.mass());
            prop_assert!((ce.g_value(i + 1) - g).abs() <= 1e-12 * g);
        }
    }
}

#[test]
fn partial_sums_grow_with_the_number_of_terms() {
    let tp = model(
        &[((1, 3), (7, 2))],
        Some((
            ClosedForm::from_ratios((1, 1), (0, 1), (1, 2)).unwrap(),
            ClosedForm::from_ratios((1, 2), (1, 1), (1, 1)).unwrap(),
        )),
    );
    let basel = std::f64::consts::PI.powi(2) / 6.0;
    let mut previous = 0.0;
    for k in [1, 2, 5, 10, 40, 100] {
        let cert = certify_divergence(&build_counterexample(&tp, k).unwrap(), &tp).unwrap();
        assert!(cert.mu_partial > previous);
        assert!(cert.mu_partial <= basel + 1e-9);
        previous = cert.mu_partial;
    }
}

#[test]
fn ten_thousand_terms_of_the_linear_model() {
    let tp = model(
        &[],
        Some((
            ClosedForm::from_ratios((1, 1), (0, 1), (1, 2)).unwrap(),
            ClosedForm::from_ratios((1, 1), (1, 1), (1, 1)).unwrap(),
        )),
    );
    let ce = build_counterexample(&tp, 10_000).unwrap();
    assert!(ce
        .groups
        .iter()
        .enumerate()
        .all(|(i, g)| g.n == BigInt::from(i + 1)));
    let cert = certify_divergence(&ce, &tp).unwrap();
    assert!(
        (1.6448..=1.64494).contains(&cert.mu_partial),
        "{}",
        cert.mu_partial
    );
    assert!(cert.nu_partial_lower >= 9.78);
    assert!((cert.mu_partial - cert.mu_partial_closed_form).abs() <= 1e-9);
}

#[test]
fn prefix_and_tail_cells_share_levels() {
    // Prefix cell with h = 2 joins the level of tail cell m = 2.
    let tp = model(
        &[((1, 4), (2, 1)), ((1, 4), (1, 3))],
        Some((
            ClosedForm::from_ratios((1, 1), (0, 1), (1, 2)).unwrap(),
            ClosedForm::from_ratios((1, 1), (1, 1), (1, 1)).unwrap(),
        )),
    );
    let ce = build_counterexample(&tp, 2).unwrap();
    assert_eq!(ce.groups[1].n, BigInt::from(2));
    assert_eq!(ce.groups[1].cells, [1, 4]);
    assert!((ce.groups[1].mass() - 0.5).abs() < 1e-16);
    assert_eq!(ce.groups[0].cells, [3]);
}
