//! Coset enumeration and concrete group tables.

mod enumerate;
mod group_table;

pub use enumerate::{enumerate, order, CosetTable, Strategy, DEFAULT_MAX_COSETS};
pub use group_table::{
    multiplication_table, validate_group, AssociativityCheck, GroupTable, GroupViolation, ValidationReport,
    EXHAUSTIVE_ASSOCIATIVITY_LIMIT,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CosetEnumError {
    #[error("coset limit of {0} exceeded; the group may be infinite or the limit too small")]
    CosetLimitExceeded(usize),
    #[error("presentation has no generators")]
    NoGenerators,
    #[error("coset table is not closed")]
    NotClosed,
    #[error("multiplication table is not square or has entries out of range")]
    MalformedTable,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::{building_block, direct_product, parse_presentation, BlockKind};

    fn ord(text: &str) -> usize {
        order(&parse_presentation(text).unwrap(), DEFAULT_MAX_COSETS, Strategy::Hlt).unwrap()
    }

    #[test]
    fn small_orders() {
        assert_eq!(ord("< a | a^2 >"), 2);
        assert_eq!(ord("< a | a >"), 1);
        assert_eq!(ord("< a, b | a^2, b^3, (a*b)^2 >"), 6);
        assert_eq!(ord("< a, b | a^2, b^3, (a*b)^5 >"), 60);
        assert_eq!(ord("< a, b | a^4, b^2, (a*b)^2 >"), 8);
    }

    #[test]
    fn block_orders_both_strategies() {
        let expected = [(BlockKind::A, 2, 8), (BlockKind::B, 2, 16), (BlockKind::C, 2, 2)];
        for (kind, p, n) in expected {
            let blk = building_block(kind, p).unwrap();
            for s in [Strategy::Hlt, Strategy::Felsch] {
                assert_eq!(order(&blk, 1000, s).unwrap(), n, "{kind}_{p} via {s}");
            }
        }
        for p in [3, 5] {
            for s in [Strategy::Hlt, Strategy::Felsch] {
                let cube = (p * p * p) as usize;
                assert_eq!(order(&building_block(BlockKind::A, p).unwrap(), DEFAULT_MAX_COSETS, s).unwrap(), cube);
                assert_eq!(order(&building_block(BlockKind::B, p).unwrap(), DEFAULT_MAX_COSETS, s).unwrap(), cube);
                assert_eq!(order(&building_block(BlockKind::C, p).unwrap(), DEFAULT_MAX_COSETS, s).unwrap(), p as usize);
            }
        }
    }

    #[test]
    fn product_order() {
        let c2 = building_block(BlockKind::C, 2).unwrap();
        assert_eq!(order(&direct_product(&c2, &c2), 100, Strategy::Hlt).unwrap(), 4);
    }

    #[test]
    fn infinite_group_hits_limit() {
        let p = parse_presentation("< a, b | a^2, b^2 >").unwrap();
        for s in [Strategy::Hlt, Strategy::Felsch] {
            assert_eq!(order(&p, 500, s), Err(CosetEnumError::CosetLimitExceeded(500)));
        }
        let free = parse_presentation("< a | >").unwrap();
        assert_eq!(order(&free, 50, Strategy::Hlt), Err(CosetEnumError::CosetLimitExceeded(50)));
    }

    #[test]
    fn tight_limit_recovers_through_lookahead() {
        // HLT defines more cosets than the final index before collapsing
        let b2 = building_block(BlockKind::B, 2).unwrap();
        let mut ok = None;
        for limit in 16..200 {
            if let Ok(n) = order(&b2, limit, Strategy::Hlt) {
                ok = Some((limit, n));
                break;
            }
        }
        let (limit, n) = ok.expect("some limit suffices");
        assert_eq!(n, 16);
        assert!(limit >= 16);
    }

    #[test]
    fn strategies_give_identical_standard_tables() {
        for p in [2, 3] {
            for kind in BlockKind::ALL {
                let blk = building_block(kind, p).unwrap();
                let h = enumerate(&blk, DEFAULT_MAX_COSETS, Strategy::Hlt).unwrap();
                let f = enumerate(&blk, DEFAULT_MAX_COSETS, Strategy::Felsch).unwrap();
                assert_eq!(h, f);
                assert_eq!(h, enumerate(&blk, DEFAULT_MAX_COSETS, Strategy::Hlt).unwrap());
            }
        }
    }

    #[test]
    fn closed_table_columns_are_permutations() {
        let t = enumerate(&building_block(BlockKind::B, 3).unwrap(), DEFAULT_MAX_COSETS, Strategy::Hlt).unwrap();
        assert!(t.is_closed());
        for x in 0..t.num_columns() {
            let mut seen = vec![false; t.num_cosets()];
            for c in 0..t.num_cosets() {
                let d = t.action(c, x).unwrap();
                assert!(!seen[d]);
                seen[d] = true;
                assert_eq!(t.action(d, x ^ 1), Some(c));
            }
        }
    }

    #[test]
    fn no_generators_rejected() {
        // the text grammar requires a generator, so build directly
        let p = crate::presentations::Presentation::new(vec![], vec![]).unwrap();
        assert_eq!(order(&p, 10, Strategy::Hlt), Err(CosetEnumError::NoGenerators));
    }

    #[test]
    fn cyclic_multiplication_table() {
        let t = enumerate(&parse_presentation("< a | a^3 >").unwrap(), 100, Strategy::Hlt).unwrap();
        let gt = multiplication_table(&t).unwrap();
        assert_eq!(gt.order(), 3);
        // element 1 = a, element 2 = a^-1
        assert_eq!(gt.rows(), vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]);
        assert_eq!(gt.render_word(&gt.element_words()[2]), "a^-1");
        assert!(validate_group(&gt).passed);
    }

    #[test]
    fn open_table_rejected() {
        let t = CosetTable::from_rows(vec!["a".into()], vec![vec![Some(0), None]]);
        assert_eq!(multiplication_table(&t), Err(CosetEnumError::NotClosed));
    }

    #[test]
    fn validation_examples() {
        let z4: Vec<Vec<usize>> = (0..4).map(|i| (0..4).map(|j| (i + j) % 4).collect()).collect();
        let gt = GroupTable::from_product(z4.clone(), 0).unwrap();
        let report = validate_group(&gt);
        assert!(report.passed);
        assert_eq!(report.associativity, AssociativityCheck::Exhaustive);

        let mut broken = z4;
        broken[1].swap(1, 2);
        let report = validate_group(&GroupTable::from_product(broken, 0).unwrap());
        assert!(!report.passed);
        assert_eq!(report.counterexample, Some(GroupViolation::ColumnNotPermutation { column: 1 }));

        assert_eq!(GroupTable::from_product(vec![vec![0, 5], vec![1, 0]], 0), Err(CosetEnumError::MalformedTable));
    }

    #[test]
    fn nonassociative_latin_square_is_caught() {
        // a loop of order 5 that is not a group
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let report = validate_group(&GroupTable::from_product(t, 0).unwrap());
        assert!(!report.passed);
        assert!(matches!(report.counterexample, Some(GroupViolation::NotAssociative { .. })));
    }

    #[test]
    fn table_json_shape() {
        let t = enumerate(&parse_presentation("< a | a^2 >").unwrap(), 100, Strategy::Hlt).unwrap();
        let gt = multiplication_table(&t).unwrap();
        assert_eq!(
            serde_json::to_string(&gt).unwrap(),
            r#"{"order":2,"product":[[0,1],[1,0]],"words":["1","a"]}"#
        );
    }
}
