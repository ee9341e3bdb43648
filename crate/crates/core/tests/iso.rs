use logalg_core::iso::{
    decide_center, decide_commutative, decide_direct_sum, decide_type_in, extension_exists,
    AlgebraDescriptor, Block,
};
use logalg_core::measure::{ClosedForm, Passport, PassportLine, SeqSpec};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn tail_center(c: i64, p: i64, q: i64) -> Passport {
    Passport::new(
        PassportLine::finite(&[]),
        PassportLine::with_tail(&[], -1, 1),
        SeqSpec::with_tail(vec![], ClosedForm::from_ratios((c, 1), (p, 1), (q, 1)).unwrap()),
    )
}

fn finite_center(s: &[u32], u: &[u32], m: &[i64]) -> Passport {
    Passport::new(
        PassportLine::finite(s),
        PassportLine::finite(u),
        SeqSpec::finite(
            m.iter()
                .map(|&v| BigRational::from_integer(BigInt::from(v)))
                .collect(),
        ),
    )
}

/// Small pool so that isomorphic and non-isomorphic centers both occur often.
fn pool() -> Vec<Passport> {
    vec![
        tail_center(1, 0, 1),
        tail_center(3, 0, 1),
        tail_center(1, 0, 2),
        tail_center(1, 1, 1),
        tail_center(2, 1, 1),
        finite_center(&[], &[0, 2], &[1, 1]),
        finite_center(&[], &[0, 2], &[5, 2]),
        finite_center(&[1], &[], &[]),
    ]
}

fn center_strategy() -> impl Strategy<Value = Passport> {
    prop::sample::select(pool())
}

fn descriptor_strategy() -> impl Strategy<Value = AlgebraDescriptor> {
    prop::collection::vec((1usize..4, center_strategy()), 1..5).prop_map(|blocks| {
        AlgebraDescriptor::new(
            blocks
                .into_iter()
                .map(|(n, center)| Block { n, center })
                .collect(),
        )
        .unwrap()
    })
}

fn permuted(d: &AlgebraDescriptor, rot: usize) -> AlgebraDescriptor {
    let mut blocks = d.blocks().to_vec();
    let k = rot % blocks.len();
    blocks.rotate_left(k);
    blocks.reverse();
    AlgebraDescriptor::new(blocks).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn commutative_decision_is_reflexive_and_symmetric(x in center_strategy(), y in center_strategy()) {
        prop_assert!(decide_commutative(&x, &x).unwrap().isomorphic);
        prop_assert_eq!(
            decide_commutative(&x, &y).unwrap().isomorphic,
            decide_commutative(&y, &x).unwrap().isomorphic
        );
    }

    #[test]
    fn commutative_decision_is_transitive(x in center_strategy(), y in center_strategy(), z in center_strategy()) {
        let xy = decide_commutative(&x, &y).unwrap().isomorphic;
        let yz = decide_commutative(&y, &z).unwrap().isomorphic;
        if xy && yz {
            prop_assert!(decide_commutative(&x, &z).unwrap().isomorphic);
        }
    }

    #[test]
    fn verdicts_carry_matching_or_obstruction(a in descriptor_strategy(), b in descriptor_strategy()) {
        let v = decide_direct_sum(&a, &b).unwrap();
        prop_assert_eq!(v.isomorphic, v.matching.is_some());
        prop_assert_eq!(!v.isomorphic, v.obstruction.is_some());
    }

    #[test]
    fn direct_sum_ignores_block_order(a in descriptor_strategy(), b in descriptor_strategy(), r1 in 0usize..8, r2 in 0usize..8) {
        let v = decide_direct_sum(&a, &b).unwrap().isomorphic;
        prop_assert_eq!(decide_direct_sum(&permuted(&a, r1), &b).unwrap().isomorphic, v);
        prop_assert_eq!(decide_direct_sum(&a, &permuted(&b, r2)).unwrap().isomorphic, v);
    }

    #[test]
    fn block_isomorphism_implies_center_isomorphism(a in descriptor_strategy(), b in descriptor_strategy()) {
        if decide_direct_sum(&a, &b).unwrap().isomorphic {
            prop_assert!(decide_center(&a, &b).unwrap().isomorphic);
        }
    }

    #[test]
    fn single_blocks_reduce_to_centers(n in 1usize..4, m in 1usize..4, x in center_strategy(), y in center_strategy()) {
        let a = AlgebraDescriptor::single(n, x.clone()).unwrap();
        let b = AlgebraDescriptor::single(m, y.clone()).unwrap();
        let t = decide_type_in(&a, &b).unwrap();
        if n == m {
            prop_assert_eq!(t.isomorphic, decide_commutative(&x, &y).unwrap().isomorphic);
        } else {
            prop_assert_eq!(t.obstruction.unwrap().label(), "size mismatch");
        }
        prop_assert_eq!(
            decide_center(&a, &b).unwrap().isomorphic,
            decide_commutative(&x, &y).unwrap().isomorphic
        );
    }

    #[test]
    fn found_matchings_extend(a in descriptor_strategy(), b in descriptor_strategy()) {
        let v = decide_direct_sum(&a, &b).unwrap();
        if let Some(matching) = v.matching {
            prop_assert!(extension_exists(&matching, &a, &b).unwrap());
            for (i, j) in matching {
                let pair = decide_commutative(&a.blocks()[i].center, &b.blocks()[j].center).unwrap();
                prop_assert!(pair.isomorphic);
            }
        }
    }
}

#[test]
fn two_block_instance_center_swap_does_not_extend() {
    let (slow, fast) = (tail_center(1, 0, 1), tail_center(1, 0, 2));
    let a = AlgebraDescriptor::new(vec![
        Block {
            n: 2,
            center: slow.clone(),
        },
        Block {
            n: 3,
            center: fast.clone(),
        },
    ])
    .unwrap();
    let b = AlgebraDescriptor::new(vec![Block { n: 2, center: fast }, Block { n: 3, center: slow }]).unwrap();
    assert!(decide_center(&a, &b).unwrap().isomorphic);
    let swap = [(0, 1), (1, 0)];
    for (i, j) in swap {
        assert!(
            decide_commutative(&a.blocks()[i].center, &b.blocks()[j].center)
                .unwrap()
                .isomorphic
        );
    }
    assert!(!extension_exists(&swap, &a, &b).unwrap());
    let v = decide_direct_sum(&a, &b).unwrap();
    assert_eq!(v.obstruction.unwrap().label(), "ratio unbounded");
}

#[test]
fn twelve_blocks_are_searched_exhaustively() {
    let pool = pool();
    let blocks: Vec<Block> = (0..12)
        .map(|i| Block {
            n: 1 + i % 2,
            center: pool[i % 5].clone(),
        })
        .collect();
    let a = AlgebraDescriptor::new(blocks.clone()).unwrap();
    let mut reversed = blocks;
    reversed.reverse();
    let b = AlgebraDescriptor::new(reversed).unwrap();
    let v = decide_direct_sum(&a, &b).unwrap();
    assert!(v.isomorphic);
    let mut too_many = a.blocks().to_vec();
    too_many.push(Block {
        n: 1,
        center: pool[0].clone(),
    });
    let big = AlgebraDescriptor::new(too_many).unwrap();
    assert!(decide_direct_sum(&big, &big).is_err());
}
