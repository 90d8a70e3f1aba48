use std::collections::{BTreeMap, BTreeSet};

use super::{CharacterTable, ClassInfo, Irreducible};
use crate::exact::lcm_u64;

/// Direct product table. Classes are pairs in left-factor-major order with
/// labels `"x,y"`; irreducibles are outer tensor products named `"a*b"`.
/// A power map is included for a prime when both factors determine it.
pub fn direct_product(a: &CharacterTable, b: &CharacterTable) -> CharacterTable {
    let mut classes = Vec::with_capacity(a.class_count() * b.class_count());
    for ca in &a.classes {
        for cb in &b.classes {
            classes.push(ClassInfo {
                label: format!("{},{}", ca.label, cb.label),
                element_order: lcm_u64(ca.element_order, cb.element_order),
                centralizer_order: &ca.centralizer_order * &cb.centralizer_order,
            });
        }
    }

    let primes: BTreeSet<u64> = a.power_maps.keys().chain(b.power_maps.keys()).copied().collect();
    let mut power_maps = BTreeMap::new();
    'primes: for p in primes {
        let mut map = Vec::with_capacity(classes.len());
        for i in 0..a.class_count() {
            let Some(ia) = a.power_class(i, p).ok() else { continue 'primes };
            for j in 0..b.class_count() {
                let Some(jb) = b.power_class(j, p).ok() else { continue 'primes };
                map.push(ia * b.class_count() + jb);
            }
        }
        power_maps.insert(p, map);
    }

    let mut irreducibles = Vec::with_capacity(a.irreducibles.len() * b.irreducibles.len());
    for ra in &a.irreducibles {
        for rb in &b.irreducibles {
            let values = ra.values.iter().flat_map(|x| rb.values.iter().map(move |y| x * y)).collect();
            irreducibles.push(Irreducible { name: format!("{}*{}", ra.name, rb.name), values });
        }
    }

    CharacterTable {
        name: format!("{}x{}", a.name, b.name),
        group_order: &a.group_order * &b.group_order,
        classes,
        power_maps,
        irreducibles,
        partial: a.partial || b.partial,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tables::{parse_table, validate_table};

    const S3: &str = "GROUP S3\nORDER 6\nCLASSES 3\nCLASS 1A ORDER=1 CENT=6\nCLASS 2A ORDER=2 CENT=2\n\
CLASS 3A ORDER=3 CENT=3\nPOWERMAP 2 : 1A->1A, 2A->1A, 3A->3A\nPOWERMAP 3 : 1A->1A, 2A->2A, 3A->1A\n\
IRR 1 : 1 1 1\nIRR 1- : 1 -1 1\nIRR 2 : 2 0 -1\n";

    #[test]
    fn s3_squared() {
        let s3 = parse_table(S3).unwrap();
        let p = direct_product(&s3, &s3);
        assert_eq!(p.class_count(), 9);
        assert_eq!(p.irreducibles.len(), 9);
        assert_eq!(p.group_order, 36u32.into());
        assert_eq!(p.classes[5].label, "2A,3A");
        assert_eq!(p.classes[5].element_order, 6);
        assert_eq!(p.irreducibles[8].name, "2*2");
        assert!(validate_table(&p).passed());
    }
}
