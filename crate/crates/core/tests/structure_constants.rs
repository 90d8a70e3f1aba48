use std::path::PathBuf;

use cgt_core::classops::cmc;
use cgt_core::exact::rational;
use cgt_core::permgrp::{brute_structure_constant, match_table_classes, parse_gens, ExhaustiveClasses, StabilizerChain};
use cgt_core::tables::{parse_table, CharacterTable};

fn data(name: &str) -> String {
    std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)).unwrap()
}

fn setup(stem: &str) -> (CharacterTable, ExhaustiveClasses, Vec<usize>) {
    let t = parse_table(&data(&format!("{stem}.ct"))).unwrap();
    let (n, g) = parse_gens(&data(&format!("{stem}.gens"))).unwrap();
    let chain = StabilizerChain::new(n, &g).unwrap();
    let ex = ExhaustiveClasses::compute(&chain, 100_000).unwrap();
    let map = match_table_classes(&t, &ex).expect("table classes match group classes");
    (t, ex, map)
}

/// Table value and pair count for `(c1, c2, c3)`, by class index.
fn both(t: &CharacterTable, ex: &ExhaustiveClasses, map: &[usize], c: [usize; 3]) -> (cgt_core::Rational, u64) {
    let from_table = cmc(t, t.label(c[0]), t.label(c[1]), t.label(c[2])).unwrap();
    let z = &ex.classes[map[c[2]]].representative;
    (from_table, brute_structure_constant(ex, map[c[0]], map[c[1]], z))
}

#[test]
fn all_triples_of_small_groups() {
    // c9xc3 is left out: prime power maps do not pin down a matching that is a
    // group automorphism there, so a table-to-group bijection is not unique
    for stem in ["s3", "d18", "a5"] {
        let (t, ex, map) = setup(stem);
        let k = t.class_count();
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    let (tv, bv) = both(&t, &ex, &map, [a, b, c]);
                    assert_eq!(tv, rational(bv as i64, 1), "{stem} ({}, {}, {})", t.label(a), t.label(b), t.label(c));
                }
            }
        }
    }
}

#[test]
fn psl28_two_three_seven() {
    let (t, ex, map) = setup("psl28");
    let idx = |l: &str| t.class_index(l).unwrap();
    let sevens: Vec<usize> = (0..t.class_count()).filter(|&i| t.classes[i].element_order == 7).collect();
    assert_eq!(sevens.len(), 3);
    for &c in &sevens {
        for [a, b, z] in [[idx("2A"), idx("3A"), c], [idx("3A"), idx("2A"), c], [idx("2A"), c, idx("3A")]] {
            let (tv, bv) = both(&t, &ex, &map, [a, b, z]);
            assert_eq!(tv, rational(bv as i64, 1), "({}, {}, {})", t.label(a), t.label(b), t.label(z));
        }
    }
    // a (2,3,7) triple exists, so PSL2(8) is a (2,3,7) quotient
    let (tv, _) = both(&t, &ex, &map, [idx("2A"), idx("3A"), sevens[0]]);
    assert!(tv > rational(0, 1));
}
