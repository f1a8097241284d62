use ensemble_parity::PhaseFunction;
use ensemble_parity_cli::truth_table::parse_with_cap;
use ensemble_parity_cli::{format_truth_table, parse_truth_table};
use proptest::prelude::*;

fn function() -> impl Strategy<Value = PhaseFunction> {
    (1usize..=10).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), 1 << n).prop_map(move |marks| PhaseFunction::from_marks(n, marks).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn round_trip(f in function()) {
        let text = format_truth_table(&f);
        prop_assert_eq!(parse_truth_table(&text).unwrap(), f);
    }

    #[test]
    fn trailing_whitespace_is_ignored(f in function(), pad in "[ \t]{0,3}\r?") {
        let text = format_truth_table(&f).replace('\n', &format!("{pad}\n"));
        prop_assert_eq!(parse_truth_table(&text).unwrap(), f);
    }

    #[test]
    fn corrupting_one_symbol_is_located(f in function(), at in any::<prop::sample::Index>(), c in "[^+\\-\n\r\t ]") {
        let mut symbols: Vec<char> = format_truth_table(&f).lines().nth(1).unwrap().chars().collect();
        let i = at.index(symbols.len());
        symbols[i] = c.chars().next().unwrap();
        let text = format!("{}\n{}\n", f.n(), symbols.into_iter().collect::<String>());
        let e = parse_truth_table(&text).unwrap_err();
        prop_assert_eq!((e.line, e.column), (2, i + 1));
    }

    #[test]
    fn wrong_length_is_rejected(n in 1usize..=8, delta in -3i64..=3) {
        prop_assume!(delta != 0);
        let len = ((1i64 << n) + delta).max(0) as usize;
        prop_assume!(len != 1 << n);
        let text = format!("{n}\n{}\n", "+".repeat(len));
        let e = parse_truth_table(&text).unwrap_err();
        prop_assert_eq!(e.line, 2);
        prop_assert_eq!(e.column, len.min(1 << n) + 1);
    }
}

#[test]
fn documented_examples() {
    let f = parse_truth_table("1\n+-").unwrap();
    assert_eq!((f.n(), f.marked().collect::<Vec<_>>()), (1, vec![1]));
    assert_eq!(parse_truth_table("2\n++++").unwrap(), PhaseFunction::constant_plus(2).unwrap());
    let f = parse_truth_table("2\n+--+").unwrap();
    assert_eq!(f.marked().collect::<Vec<_>>(), vec![1, 2]);
    assert_eq!(ensemble_parity::reference::brute_g(&f), 2);
}

#[test]
fn spin_one_is_the_high_bit() {
    // Index 4 = spin 1 down, spins 2 and 3 up.
    let f = parse_truth_table("3\n++++-+++\n").unwrap();
    assert_eq!(f.marked().collect::<Vec<_>>(), vec![4]);
    assert_eq!(f.value(4), -1);
}

#[test]
fn cap_is_enforced() {
    assert!(parse_with_cap("3\n++++++++", 2).is_err());
    assert!(parse_with_cap("2\n++++", 2).is_ok());
    let e = parse_truth_table("13\n+").unwrap_err();
    assert_eq!((e.line, e.column), (1, 1));
    assert!(e.to_string().starts_with("line 1, column 1:"));
}
