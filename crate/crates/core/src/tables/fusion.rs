use std::sync::Arc;

use num_integer::Integer;
use num_traits::Zero;

use super::{CharacterTable, TableError};

/// Class fusion from a subgroup table into an overgroup table.
#[derive(Debug, Clone)]
pub struct FusionMap {
    source: Arc<CharacterTable>,
    target: Arc<CharacterTable>,
    map: Vec<usize>,
}

impl FusionMap {
    /// Checks element orders, centralizer divisibility and compatibility with
    /// every power map present on both sides.
    pub fn new(source: Arc<CharacterTable>, target: Arc<CharacterTable>, map: Vec<usize>) -> Result<Self, TableError> {
        if map.len() != source.class_count() {
            let i = map.len().min(source.class_count().saturating_sub(1));
            return Err(TableError::Unmapped(source.label(i).to_string()));
        }
        for (i, &j) in map.iter().enumerate() {
            let (s, t) = (&source.classes[i], &target.classes[j]);
            if s.element_order != t.element_order {
                return Err(TableError::OrderMismatch {
                    source_label: s.label.clone(),
                    target_label: t.label.clone(),
                    source_order: s.element_order,
                    target_order: t.element_order,
                });
            }
            if s.centralizer_order.is_zero() || !t.centralizer_order.is_multiple_of(&s.centralizer_order) {
                return Err(TableError::CentralizerMismatch { source_label: s.label.clone(), target_label: t.label.clone() });
            }
        }
        for (p, smap) in &source.power_maps {
            let Some(tmap) = target.power_maps.get(p) else { continue };
            for (i, &j) in map.iter().enumerate() {
                if map[smap[i]] != tmap[j] {
                    return Err(TableError::PowerMapMismatch { label: source.label(i).to_string(), p: *p });
                }
            }
        }
        Ok(FusionMap { source, target, map })
    }

    pub fn identity(t: Arc<CharacterTable>) -> Self {
        let map = (0..t.class_count()).collect();
        FusionMap { source: Arc::clone(&t), target: t, map }
    }

    pub fn source(&self) -> &Arc<CharacterTable> {
        &self.source
    }

    pub fn target(&self) -> &Arc<CharacterTable> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn image_label(&self, source_label: &str) -> Result<&str, TableError> {
        let i = self.source.class_index(source_label)?;
        Ok(self.target.label(self.map[i]))
    }
}

/// Parses a fusion file:
///
/// ```text
/// FUSION <source> -> <target>
/// <label> -> <label>
/// ```
pub fn parse_fusion(text: &str, source: Arc<CharacterTable>, target: Arc<CharacterTable>) -> Result<FusionMap, TableError> {
    let mut map = vec![usize::MAX; source.class_count()];
    let mut header = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix("FUSION") {
            if header {
                return Err(TableError::Syntax { line, msg: "FUSION given twice".into() });
            }
            let (s, t) = rest
                .split_once("->")
                .ok_or_else(|| TableError::Syntax { line, msg: "expected FUSION <source> -> <target>".into() })?;
            let (s, t) = (s.trim(), t.trim());
            for (found, table) in [(s, &source), (t, &target)] {
                if found != table.name {
                    return Err(TableError::FusionHeader { expected: table.name.clone(), found: found.to_string() });
                }
            }
            header = true;
            continue;
        }
        if !header {
            return Err(TableError::MissingHeader("FUSION"));
        }
        let (a, b) = content
            .split_once("->")
            .ok_or_else(|| TableError::Syntax { line, msg: format!("expected <label> -> <label>, got {content:?}") })?;
        let i = source.class_index(a.trim())?;
        let j = target.class_index(b.trim())?;
        if map[i] != usize::MAX {
            return Err(TableError::DuplicateMapping(a.trim().to_string()));
        }
        map[i] = j;
    }
    if !header {
        return Err(TableError::MissingHeader("FUSION"));
    }
    if let Some(i) = map.iter().position(|&j| j == usize::MAX) {
        return Err(TableError::Unmapped(source.label(i).to_string()));
    }
    FusionMap::new(source, target, map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tables::parse_table;

    fn tables() -> (Arc<CharacterTable>, Arc<CharacterTable>) {
        let s3 = parse_table(
            "GROUP S3\nORDER 6\nCLASSES 3\nCLASS 1A ORDER=1 CENT=6\nCLASS 2A ORDER=2 CENT=2\n\
CLASS 3A ORDER=3 CENT=3\nPOWERMAP 2 : 1A->1A, 2A->1A, 3A->3A\nPOWERMAP 3 : 1A->1A, 2A->2A, 3A->1A\n\
IRR 1 : 1 1 1\nIRR 1- : 1 -1 1\nIRR 2 : 2 0 -1\n",
        )
        .unwrap();
        let c3 = parse_table(
            "GROUP C3\nORDER 3\nCLASSES 3\nCLASS 1A ORDER=1 CENT=3\nCLASS 3A ORDER=3 CENT=3\n\
CLASS 3B ORDER=3 CENT=3\nPOWERMAP 3 : 1A->1A, 3A->1A, 3B->1A\n\
IRR 1 : 1 1 1\nIRR z : 1 E(3) E(3)^2\nIRR z2 : 1 E(3)^2 E(3)\n",
        )
        .unwrap();
        (Arc::new(c3), Arc::new(s3))
    }

    #[test]
    fn c3_into_s3() {
        let (c3, s3) = tables();
        let f = parse_fusion("FUSION C3 -> S3\n1A -> 1A\n3A -> 3A\n3B -> 3A\n", c3, s3).unwrap();
        assert_eq!(f.map(), &[0, 2, 2]);
        assert_eq!(f.image_label("3B").unwrap(), "3A");
    }

    #[test]
    fn identity_fusion() {
        let (_, s3) = tables();
        let f = parse_fusion("FUSION S3 -> S3\n1A -> 1A\n2A -> 2A\n3A -> 3A\n", s3.clone(), s3.clone()).unwrap();
        assert_eq!(f.map(), FusionMap::identity(s3).map());
    }

    #[test]
    fn errors() {
        let (c3, s3) = tables();
        let e = parse_fusion("FUSION C3 -> S3\n1A -> 1A\n3A -> 2A\n3B -> 3A\n", c3.clone(), s3.clone()).unwrap_err();
        assert_eq!(
            e,
            TableError::OrderMismatch { source_label: "3A".into(), target_label: "2A".into(), source_order: 3, target_order: 2 }
        );
        let e = parse_fusion("FUSION C3 -> S3\n1A -> 1A\n3A -> 3A\n", c3.clone(), s3.clone()).unwrap_err();
        assert_eq!(e, TableError::Unmapped("3B".into()));
        let e = parse_fusion("FUSION C3 -> S3\n1A -> 1A\n3A -> 3C\n3B -> 3A\n", c3.clone(), s3.clone()).unwrap_err();
        assert_eq!(e, TableError::UnknownLabel("3C".into()));
        let e = parse_fusion("FUSION C3 -> A5\n", c3, s3).unwrap_err();
        assert!(matches!(e, TableError::FusionHeader { .. }));
    }
}
