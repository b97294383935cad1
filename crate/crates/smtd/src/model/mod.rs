//! Instance data model: students with type vectors and tied preference lists,
//! colleges with per-type lower/upper quotas and a capacity, and matchings.

mod dense;
mod format;
mod groups;
mod validate;

pub use dense::{Assign, Dense};
pub use format::{parse_instance, parse_matching, serialize_instance, serialize_matching};
pub use groups::{compute_type_groups, TypeGroup};
pub use validate::{validate_instance, Violation, ViolationKind};

use std::fmt;

/// Fixed-length bit vector; bit `z` set means the student has type `z`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeVector {
    bits: Vec<bool>,
}

impl TypeVector {
    pub fn zeros(len: usize) -> Self {
        TypeVector { bits: vec![false; len] }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        TypeVector { bits }
    }

    /// Builds a vector of length `len` with the given 1-bits. Indices out of
    /// range are rejected.
    pub fn from_indices(len: usize, idx: &[usize]) -> Option<Self> {
        let mut bits = vec![false; len];
        for &z in idx {
            *bits.get_mut(z)? = true;
        }
        Some(TypeVector { bits })
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, z: usize) -> bool {
        self.bits[z]
    }

    pub fn set(&mut self, z: usize, v: bool) {
        self.bits[z] = v;
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Indices of the 1-bits, ascending.
    pub fn indices(&self) -> Vec<usize> {
        (0..self.bits.len()).filter(|&z| self.bits[z]).collect()
    }

    /// `"0110"`-style rendering, index 0 first.
    pub fn to_bitstring(&self) -> String {
        self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    pub fn count_vector(&self) -> CountVector {
        CountVector(self.bits.iter().map(|&b| b as u32).collect())
    }
}

impl fmt::Debug for TypeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "τ{}", self.to_bitstring())
    }
}

impl serde::Serialize for TypeVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_bitstring())
    }
}

/// Per-type nonnegative counts (quotas, or sums of type vectors).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct CountVector(pub Vec<u32>);

impl CountVector {
    pub fn zeros(len: usize) -> Self {
        CountVector(vec![0; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Componentwise `self ≤ other`; vectors of different length are incomparable.
    pub fn le(&self, other: &CountVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add_types(&mut self, tau: &TypeVector) {
        for (c, &b) in self.0.iter_mut().zip(tau.bits()) {
            *c += b as u32;
        }
    }

    pub fn max_entry(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }
}

/// Weak order in normal form: earlier groups are strictly preferred, members
/// of one group are tied.
#[derive(Clone, Debug, Default, Eq)]
pub struct TieList {
    pub groups: Vec<Vec<String>>,
}

impl TieList {
    pub fn new(groups: Vec<Vec<String>>) -> Self {
        TieList { groups }
    }

    /// A strict list: every entry in its own group.
    pub fn strict<S: AsRef<str>>(ids: &[S]) -> Self {
        TieList { groups: ids.iter().map(|s| vec![s.as_ref().to_string()]).collect() }
    }

    pub fn iter(&self) -> impl Iterator<Item = &String> {
        self.groups.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.groups.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, id: &str) -> bool {
        self.iter().any(|x| x == id)
    }

    /// Index of the tie group holding `id`.
    pub fn rank_of(&self, id: &str) -> Option<usize> {
        self.groups.iter().position(|g| g.iter().any(|x| x == id))
    }

    pub fn has_ties(&self) -> bool {
        self.groups.iter().any(|g| g.len() >= 2)
    }

    /// Removes `id` wherever it occurs and drops groups left empty.
    pub fn remove(&mut self, id: &str) {
        for g in &mut self.groups {
            g.retain(|x| x != id);
        }
        self.groups.retain(|g| !g.is_empty());
    }

    pub fn canonical(&self) -> TieList {
        let mut groups = self.groups.clone();
        for g in &mut groups {
            g.sort();
        }
        TieList { groups }
    }
}

/// Tie lists compare as sequences of sets.
impl PartialEq for TieList {
    fn eq(&self, other: &Self) -> bool {
        self.canonical().groups == other.canonical().groups
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Student {
    pub id: String,
    pub types: TypeVector,
    pub prefs: TieList,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct College {
    pub id: String,
    pub prefs: TieList,
    pub lower: CountVector,
    pub upper: CountVector,
    pub capacity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub num_types: usize,
    pub students: Vec<Student>,
    pub colleges: Vec<College>,
}

impl Instance {
    pub fn n(&self) -> usize {
        self.students.len()
    }

    pub fn m(&self) -> usize {
        self.colleges.len()
    }

    /// ℓ∞: largest lower-quota entry.
    pub fn lower_max(&self) -> u32 {
        self.colleges.iter().map(|c| c.lower.max_entry()).max().unwrap_or(0)
    }

    /// u∞: largest upper-quota entry.
    pub fn upper_max(&self) -> u32 {
        self.colleges.iter().map(|c| c.upper.max_entry()).max().unwrap_or(0)
    }

    /// q∞: largest capacity.
    pub fn capacity_max(&self) -> u32 {
        self.colleges.iter().map(|c| c.capacity).max().unwrap_or(0)
    }

    pub fn has_ties(&self) -> bool {
        self.students.iter().any(|s| s.prefs.has_ties())
            || self.colleges.iter().any(|c| c.prefs.has_ties())
    }

    pub fn student(&self, id: &str) -> Option<&Student> {
        self.students.iter().find(|s| s.id == id)
    }

    pub fn college(&self, id: &str) -> Option<&College> {
        self.colleges.iter().find(|c| c.id == id)
    }
}

/// A set of student–college pairs; students absent from `pairs` are unmatched.
/// Pairs are kept sorted by student id.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, serde::Serialize)]
pub struct Matching {
    pairs: Vec<(String, String)>,
}

impl Matching {
    pub fn new(mut pairs: Vec<(String, String)>) -> Self {
        pairs.sort();
        Matching { pairs }
    }

    pub fn from_strs(pairs: &[(&str, &str)]) -> Self {
        Matching::new(pairs.iter().map(|(s, c)| (s.to_string(), c.to_string())).collect())
    }

    pub fn pairs(&self) -> &[(String, String)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// M(u), or `None` for ⊥.
    pub fn college_of(&self, student: &str) -> Option<&str> {
        self.pairs.iter().find(|(s, _)| s == student).map(|(_, c)| c.as_str())
    }

    /// M(w), sorted by id.
    pub fn students_of(&self, college: &str) -> Vec<&str> {
        self.pairs.iter().filter(|(_, c)| c == college).map(|(s, _)| s.as_str()).collect()
    }

    pub fn contains(&self, student: &str, college: &str) -> bool {
        self.pairs.iter().any(|(s, c)| s == student && c == college)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn type_vector_roundtrip() {
        let tv = TypeVector::from_indices(4, &[1, 3]).unwrap();
        assert_eq!(tv.indices(), vec![1, 3]);
        assert_eq!(tv.to_bitstring(), "0101");
        assert!(TypeVector::from_indices(2, &[2]).is_none());
    }

    #[test]
    fn count_vector_order() {
        let a = CountVector(vec![1, 2]);
        assert!(a.le(&CountVector(vec![1, 3])));
        assert!(!a.le(&CountVector(vec![0, 3])));
        assert!(!a.le(&CountVector(vec![1, 2, 3])));
    }

    #[test]
    fn tie_list_equality_ignores_order_inside_groups() {
        let a = TieList::new(vec![vec!["w2".into(), "w1".into()], vec!["w3".into()]]);
        let b = TieList::new(vec![vec!["w1".into(), "w2".into()], vec!["w3".into()]]);
        assert_eq!(a, b);
        assert_eq!(a.rank_of("w3"), Some(1));
        assert!(a.has_ties());
        let c = TieList::strict(&["w1", "w2", "w3"]);
        assert_ne!(a, c);
    }

    #[test]
    fn matching_is_sorted() {
        let m = Matching::from_strs(&[("u3", "w1"), ("u1", "w1")]);
        assert_eq!(m.pairs()[0].0, "u1");
        assert_eq!(m.students_of("w1"), vec!["u1", "u3"]);
        assert_eq!(m.college_of("u2"), None);
    }
}
