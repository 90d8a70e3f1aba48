use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_bigint::BigUint;

use super::{CharacterTable, ClassInfo, Irreducible, TableError};
use crate::exact::{parse_value, Cyclotomic};

fn syntax(line: usize, msg: impl Into<String>) -> TableError {
    TableError::Syntax { line, msg: msg.into() }
}

fn parse_uint<T: std::str::FromStr>(line: usize, what: &str, s: &str) -> Result<T, TableError> {
    s.parse().map_err(|_| syntax(line, format!("{what}: expected a non-negative integer, got {s:?}")))
}

/// Splits `"<head> : <rest>"`.
fn split_colon(line: usize, s: &str) -> Result<(&str, &str), TableError> {
    s.split_once(':')
        .map(|(a, b)| (a.trim(), b.trim()))
        .ok_or_else(|| syntax(line, "expected ':'"))
}

/// Parses a `.ct` character table. The result is structurally well formed
/// (labels resolve, row lengths match) but not validated mathematically.
pub fn parse_table(text: &str) -> Result<CharacterTable, TableError> {
    let mut name: Option<String> = None;
    let mut order: Option<BigUint> = None;
    let mut partial = false;
    let mut class_count: Option<usize> = None;
    let mut classes: Vec<ClassInfo> = Vec::new();
    let mut labels: HashMap<String, usize> = HashMap::new();
    let mut raw_maps: Vec<(usize, u64, &str)> = Vec::new();
    let mut irreducibles = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (keyword, rest) = match content.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (content, ""),
        };
        match keyword {
            "GROUP" => {
                if rest.is_empty() {
                    return Err(syntax(line, "GROUP needs a name"));
                }
                name = Some(rest.to_string());
            }
            "ORDER" => order = Some(parse_uint(line, "ORDER", rest)?),
            "PARTIAL" => {
                if !rest.is_empty() {
                    return Err(syntax(line, "PARTIAL takes no arguments"));
                }
                partial = true;
            }
            "CLASSES" => {
                if class_count.is_some() {
                    return Err(syntax(line, "CLASSES given twice"));
                }
                class_count = Some(parse_uint(line, "CLASSES", rest)?);
            }
            "CLASS" => {
                let k = class_count.ok_or(TableError::MissingHeader("CLASSES"))?;
                let mut parts = rest.split_whitespace();
                let label = parts.next().ok_or_else(|| syntax(line, "CLASS needs a label"))?;
                let mut elt_order = None;
                let mut cent = None;
                for kv in parts {
                    match kv.split_once('=') {
                        Some(("ORDER", v)) => elt_order = Some(parse_uint::<u64>(line, "ORDER", v)?),
                        Some(("CENT", v)) => cent = Some(parse_uint::<BigUint>(line, "CENT", v)?),
                        _ => return Err(syntax(line, format!("unexpected field {kv:?}"))),
                    }
                }
                let element_order = elt_order.ok_or_else(|| syntax(line, "CLASS needs ORDER="))?;
                let centralizer_order = cent.ok_or_else(|| syntax(line, "CLASS needs CENT="))?;
                if element_order == 0 {
                    return Err(syntax(line, "element order must be positive"));
                }
                if labels.contains_key(label) {
                    return Err(TableError::DuplicateLabel { line, label: label.to_string() });
                }
                if classes.len() == k {
                    return Err(syntax(line, format!("more than {k} CLASS lines")));
                }
                labels.insert(label.to_string(), classes.len());
                classes.push(ClassInfo { label: label.to_string(), element_order, centralizer_order });
            }
            "POWERMAP" => {
                let (p, body) = split_colon(line, rest)?;
                let p: u64 = parse_uint(line, "POWERMAP", p)?;
                raw_maps.push((line, p, body));
            }
            "IRR" => {
                let (rname, body) = split_colon(line, rest)?;
                if rname.is_empty() {
                    return Err(syntax(line, "IRR needs a name"));
                }
                let values = body
                    .split_whitespace()
                    .map(|v| parse_value(v).map_err(|source| TableError::Value { line, source }))
                    .collect::<Result<Vec<Cyclotomic>, _>>()?;
                irreducibles.push((line, Irreducible { name: rname.to_string(), values }));
            }
            other => return Err(syntax(line, format!("unknown keyword {other:?}"))),
        }
    }

    let name = name.ok_or(TableError::MissingHeader("GROUP"))?;
    let group_order = order.ok_or(TableError::MissingHeader("ORDER"))?;
    let k = class_count.ok_or(TableError::MissingHeader("CLASSES"))?;
    if classes.len() != k {
        return Err(syntax(0, format!("CLASSES {k} declared but {} CLASS lines given", classes.len())));
    }

    let mut power_maps = BTreeMap::new();
    for (line, p, body) in raw_maps {
        if power_maps.contains_key(&p) {
            return Err(syntax(line, format!("power map {p} given twice")));
        }
        let mut map = vec![usize::MAX; k];
        // product labels contain ',' themselves; entries are then separated by ", "
        let pairs: Vec<&str> = if labels.keys().any(|l| l.contains(',')) {
            body.split(", ").collect()
        } else {
            body.split(',').collect()
        };
        for pair in pairs {
            let (a, b) = pair.split_once("->").ok_or_else(|| syntax(line, format!("expected a->b, got {pair:?}")))?;
            let (a, b) = (a.trim(), b.trim());
            let ia = *labels.get(a).ok_or_else(|| TableError::UnknownLabel(a.to_string()))?;
            let ib = *labels.get(b).ok_or_else(|| TableError::UnknownLabel(b.to_string()))?;
            if map[ia] != usize::MAX {
                return Err(syntax(line, format!("class {a} mapped twice in power map {p}")));
            }
            map[ia] = ib;
        }
        if let Some(i) = map.iter().position(|&x| x == usize::MAX) {
            return Err(syntax(line, format!("power map {p} does not cover class {}", classes[i].label)));
        }
        power_maps.insert(p, map);
    }

    let mut names = HashMap::new();
    let mut rows = Vec::with_capacity(irreducibles.len());
    for (line, irr) in irreducibles {
        if irr.values.len() != k {
            return Err(TableError::RowLengthMismatch { line, name: irr.name, expected: k, found: irr.values.len() });
        }
        if names.insert(irr.name.clone(), line).is_some() {
            return Err(syntax(line, format!("duplicate character name {}", irr.name)));
        }
        rows.push(irr);
    }

    let table = CharacterTable { name, group_order, classes, power_maps, irreducibles: rows, partial };
    if !table.partial {
        for p in table.primes() {
            if !table.power_maps.contains_key(&p) {
                return Err(TableError::MissingPowerMap(p));
            }
        }
    }
    Ok(table)
}

/// Writes a table in `.ct` syntax; `parse_table` inverts this exactly.
pub fn serialize_table(t: &CharacterTable) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "GROUP {}", t.name);
    let _ = writeln!(out, "ORDER {}", t.group_order);
    if t.partial {
        out.push_str("PARTIAL\n");
    }
    let _ = writeln!(out, "CLASSES {}", t.class_count());
    for c in &t.classes {
        let _ = writeln!(out, "CLASS {} ORDER={} CENT={}", c.label, c.element_order, c.centralizer_order);
    }
    for (p, map) in &t.power_maps {
        let pairs: Vec<String> =
            map.iter().enumerate().map(|(i, &j)| format!("{}->{}", t.classes[i].label, t.classes[j].label)).collect();
        let _ = writeln!(out, "POWERMAP {p} : {}", pairs.join(", "));
    }
    for irr in &t.irreducibles {
        let vals: Vec<String> = irr.values.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "IRR {} : {}", irr.name, vals.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const S3: &str = "GROUP S3\nORDER 6\nCLASSES 3\nCLASS 1A ORDER=1 CENT=6\nCLASS 2A ORDER=2 CENT=2\n\
CLASS 3A ORDER=3 CENT=3\nPOWERMAP 2 : 1A->1A, 2A->1A, 3A->3A\nPOWERMAP 3 : 1A->1A, 2A->2A, 3A->1A\n\
IRR 1 : 1 1 1\nIRR 1- : 1 -1 1\nIRR 2 : 2 0 -1\n";

    #[test]
    fn parses_s3() {
        let t = parse_table(S3).unwrap();
        assert_eq!(t.class_count(), 3);
        assert_eq!(t.irreducibles.len(), 3);
        assert_eq!(t.power_maps[&2], vec![0, 0, 2]);
        assert!(!t.partial);
    }

    #[test]
    fn round_trip() {
        let t = parse_table(S3).unwrap();
        assert_eq!(parse_table(&serialize_table(&t)).unwrap(), t);
    }

    #[test]
    fn short_row_is_rejected() {
        let bad = S3.replace("IRR 2 : 2 0 -1", "IRR 2 : 2 0");
        assert_eq!(
            parse_table(&bad),
            Err(TableError::RowLengthMismatch { line: 11, name: "2".into(), expected: 3, found: 2 })
        );
    }

    #[test]
    fn structural_errors() {
        let dup = S3.replace("CLASS 3A", "CLASS 2A");
        assert!(matches!(parse_table(&dup), Err(TableError::DuplicateLabel { line: 6, .. })));
        let nogroup = S3.replace("GROUP S3\n", "");
        assert_eq!(parse_table(&nogroup), Err(TableError::MissingHeader("GROUP")));
        let noorder = S3.replace("ORDER 6\n", "");
        assert_eq!(parse_table(&noorder), Err(TableError::MissingHeader("ORDER")));
        let nomap = S3.replace("POWERMAP 3 : 1A->1A, 2A->2A, 3A->1A\n", "");
        assert_eq!(parse_table(&nomap), Err(TableError::MissingPowerMap(3)));
        let badval = S3.replace("IRR 2 : 2 0 -1", "IRR 2 : 2 0 -1/0");
        assert!(matches!(parse_table(&badval), Err(TableError::Value { line: 11, .. })));
        let badkw = S3.replace("IRR 1 :", "IRX 1 :");
        assert!(matches!(parse_table(&badkw), Err(TableError::Syntax { line: 9, .. })));
    }

    #[test]
    fn comments_and_partial() {
        let text = "# header\nGROUP X # trailing\nORDER 6\nPARTIAL\nCLASSES 1\nCLASS 1A ORDER=1 CENT=6\nIRR 1 : 1\n";
        let t = parse_table(text).unwrap();
        assert!(t.partial);
        assert_eq!(t.name, "X");
        assert!(t.power_maps.is_empty());
    }
}
