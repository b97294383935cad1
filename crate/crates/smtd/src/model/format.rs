//! JSON instance and matching documents.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{College, CountVector, Instance, Matching, Student, TieList, TypeVector};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    num_types: usize,
    students: Vec<RawStudent>,
    colleges: Vec<RawCollege>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStudent {
    id: String,
    types: Vec<usize>,
    prefs: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCollege {
    id: String,
    prefs: Vec<Vec<String>>,
    lower: Vec<u32>,
    upper: Vec<u32>,
    capacity: u32,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMatching {
    pairs: Vec<(String, String)>,
}

fn syntax(msg: impl Into<String>) -> Error {
    Error::Syntax(msg.into())
}

fn tie_list(owner: &str, groups: Vec<Vec<String>>) -> Result<TieList> {
    if groups.is_empty() {
        return Err(syntax(format!("{owner}: empty preference list")));
    }
    if groups.iter().any(Vec::is_empty) {
        return Err(syntax(format!("{owner}: empty tie group")));
    }
    Ok(TieList::new(groups))
}

/// Parses an instance document. Only syntax is checked here; see
/// [`validate_instance`](super::validate_instance) for the semantic invariants.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let raw: RawInstance = serde_json::from_str(text).map_err(|e| syntax(e.to_string()))?;
    let t = raw.num_types;
    if t == 0 {
        return Err(syntax("num_types must be positive"));
    }
    let mut seen = HashSet::new();
    let mut students = Vec::with_capacity(raw.students.len());
    for s in raw.students {
        if !seen.insert(s.id.clone()) {
            return Err(syntax(format!("duplicate student id {}", s.id)));
        }
        if s.types.windows(2).any(|w| w[0] >= w[1]) {
            return Err(syntax(format!("{}: type indices must be strictly increasing", s.id)));
        }
        let types = TypeVector::from_indices(t, &s.types)
            .ok_or_else(|| syntax(format!("{}: type index out of range (num_types = {t})", s.id)))?;
        let prefs = tie_list(&s.id, s.prefs)?;
        students.push(Student { id: s.id, types, prefs });
    }
    let mut seen = HashSet::new();
    let mut colleges = Vec::with_capacity(raw.colleges.len());
    for c in raw.colleges {
        if !seen.insert(c.id.clone()) {
            return Err(syntax(format!("duplicate college id {}", c.id)));
        }
        if c.lower.len() != t || c.upper.len() != t {
            return Err(syntax(format!("{}: quota vectors must have length {t}", c.id)));
        }
        let prefs = tie_list(&c.id, c.prefs)?;
        colleges.push(College {
            id: c.id,
            prefs,
            lower: CountVector(c.lower),
            upper: CountVector(c.upper),
            capacity: c.capacity,
        });
    }
    Ok(Instance { num_types: t, students, colleges })
}

/// Canonical pretty-printed document: ids sorted inside tie groups, students
/// and colleges in input order.
pub fn serialize_instance(inst: &Instance) -> String {
    let raw = RawInstance {
        num_types: inst.num_types,
        students: inst
            .students
            .iter()
            .map(|s| RawStudent {
                id: s.id.clone(),
                types: s.types.indices(),
                prefs: s.prefs.canonical().groups,
            })
            .collect(),
        colleges: inst
            .colleges
            .iter()
            .map(|c| RawCollege {
                id: c.id.clone(),
                prefs: c.prefs.canonical().groups,
                lower: c.lower.0.clone(),
                upper: c.upper.0.clone(),
                capacity: c.capacity,
            })
            .collect(),
    };
    serde_json::to_string_pretty(&raw).expect("instance serializes")
}

/// Parses a matching document against `inst`.
pub fn parse_matching(text: &str, inst: &Instance) -> Result<Matching> {
    let raw: RawMatching = serde_json::from_str(text).map_err(|e| syntax(e.to_string()))?;
    let mut seen = HashSet::new();
    for (s, c) in &raw.pairs {
        let acceptable = inst.student(s).is_some_and(|st| st.prefs.contains(c))
            && inst.college(c).is_some_and(|co| co.prefs.contains(s));
        if !acceptable {
            return Err(Error::UnacceptablePair { student: s.clone(), college: c.clone() });
        }
        if !seen.insert(s.clone()) {
            return Err(Error::DuplicateStudent(s.clone()));
        }
    }
    Ok(Matching::new(raw.pairs))
}

pub fn serialize_matching(m: &Matching) -> String {
    serde_json::to_string(&RawMatching { pairs: m.pairs().to_vec() }).expect("matching serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::EX1;

    #[test]
    fn parses_running_example() {
        let inst = parse_instance(EX1).unwrap();
        assert_eq!((inst.n(), inst.m(), inst.num_types), (4, 2, 2));
        assert_eq!(inst.students[2].types.to_bitstring(), "11");
        assert_eq!(inst.colleges[1].capacity, 2);
    }

    #[test]
    fn rejects_empty_prefs() {
        let doc = r#"{"num_types":1,"students":[{"id":"u","types":[],"prefs":[]}],"colleges":[]}"#;
        assert!(matches!(parse_instance(doc), Err(Error::Syntax(_))));
    }

    #[test]
    fn rejects_wrong_quota_length() {
        let doc = r#"{"num_types":2,"students":[{"id":"u","types":[0],"prefs":[["w"]]}],
            "colleges":[{"id":"w","prefs":[["u"]],"lower":[0,0,0],"upper":[1,1],"capacity":1}]}"#;
        assert!(matches!(parse_instance(doc), Err(Error::Syntax(_))));
    }

    #[test]
    fn rejects_type_index_out_of_range_and_duplicates() {
        let doc = r#"{"num_types":1,"students":[{"id":"u","types":[1],"prefs":[["w"]]}],"colleges":[]}"#;
        assert!(matches!(parse_instance(doc), Err(Error::Syntax(_))));
        let doc = r#"{"num_types":1,"students":[{"id":"u","types":[],"prefs":[["w"]]},
            {"id":"u","types":[],"prefs":[["w"]]}],"colleges":[]}"#;
        assert!(matches!(parse_instance(doc), Err(Error::Syntax(_))));
    }

    #[test]
    fn serialization_sorts_tie_groups() {
        let doc = r#"{"num_types":1,"students":[{"id":"u","types":[0],"prefs":[["w2","w1"]]}],
            "colleges":[{"id":"w1","prefs":[["u"]],"lower":[0],"upper":[1],"capacity":1},
                        {"id":"w2","prefs":[["u"]],"lower":[0],"upper":[1],"capacity":1}]}"#;
        let inst = parse_instance(doc).unwrap();
        let out = serialize_instance(&inst);
        let again = parse_instance(&out).unwrap();
        assert_eq!(again.students[0].prefs.groups, vec![vec!["w1".to_string(), "w2".to_string()]]);
        assert_eq!(again, inst);
        assert_eq!(serialize_instance(&again), out);
    }

    #[test]
    fn matching_documents() {
        let inst = parse_instance(EX1).unwrap();
        let m = parse_matching(r#"{"pairs":[["u1","w1"],["u3","w1"],["u2","w2"],["u4","w2"]]}"#, &inst).unwrap();
        assert_eq!(m.len(), 4);
        assert_eq!(serialize_matching(&m), r#"{"pairs":[["u1","w1"],["u2","w2"],["u3","w1"],["u4","w2"]]}"#);
        assert!(matches!(
            parse_matching(r#"{"pairs":[["u4","w1"]]}"#, &inst),
            Err(Error::UnacceptablePair { .. })
        ));
        assert!(matches!(
            parse_matching(r#"{"pairs":[["u1","w1"],["u1","w2"]]}"#, &inst),
            Err(Error::DuplicateStudent(_))
        ));
        assert!(parse_matching(r#"{"pairs":[]}"#, &inst).unwrap().is_empty());
    }
}
