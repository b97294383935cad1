use std::collections::BTreeMap;

use super::{Instance, TypeVector};

/// Students sharing both their type vector and their acceptable set.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct TypeGroup {
    pub signature_types: TypeVector,
    /// Acceptable colleges, sorted by id.
    pub signature_accept: Vec<String>,
    /// Member ids, sorted.
    pub members: Vec<String>,
}

impl TypeGroup {
    pub fn accepts(&self, college: &str) -> bool {
        self.signature_accept.binary_search_by(|c| c.as_str().cmp(college)).is_ok()
    }
}

/// Partitions the students by (type vector, acceptable set). Groups are ordered
/// by the type vector's bit string, then by the sorted acceptable-set ids.
pub fn compute_type_groups(inst: &Instance) -> Vec<TypeGroup> {
    let mut map: BTreeMap<(TypeVector, Vec<String>), Vec<String>> = BTreeMap::new();
    for s in &inst.students {
        let mut acc: Vec<String> = s.prefs.iter().cloned().collect();
        acc.sort();
        map.entry((s.types.clone(), acc)).or_default().push(s.id.clone());
    }
    map.into_iter()
        .map(|((signature_types, signature_accept), mut members)| {
            members.sort();
            TypeGroup { signature_types, signature_accept, members }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::ex1;

    #[test]
    fn running_example_groups() {
        let g = compute_type_groups(&ex1());
        let summary: Vec<_> = g
            .iter()
            .map(|g| (g.signature_types.to_bitstring(), g.signature_accept.join(","), g.members.join(",")))
            .collect();
        assert_eq!(
            summary,
            vec![
                ("01".into(), "w1,w2".into(), "u1,u2".into()),
                ("10".into(), "w2".into(), "u4".into()),
                ("11".into(), "w1,w2".into(), "u3".into()),
            ]
        );
        assert!(g[1].accepts("w2") && !g[1].accepts("w1"));
    }
}
