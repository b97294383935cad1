//! The running example: four students (types F, L), two colleges.

use crate::model::{parse_instance, Instance, Matching};

pub const EX1: &str = r#"{
  "num_types": 2,
  "students": [
    {"id": "u1", "types": [1], "prefs": [["w1"], ["w2"]]},
    {"id": "u2", "types": [1], "prefs": [["w1"], ["w2"]]},
    {"id": "u3", "types": [0, 1], "prefs": [["w2"], ["w1"]]},
    {"id": "u4", "types": [0], "prefs": [["w2"]]}
  ],
  "colleges": [
    {"id": "w1", "prefs": [["u3"], ["u1"], ["u2"]], "lower": [1, 1], "upper": [2, 2], "capacity": 2},
    {"id": "w2", "prefs": [["u1"], ["u3"], ["u4"], ["u2"]], "lower": [1, 1], "upper": [1, 1], "capacity": 2}
  ]
}"#;

pub fn ex1() -> Instance {
    parse_instance(EX1).expect("EX1 parses")
}

/// M1: w1 ← {u1, u3}, w2 ← {u2, u4}.
pub fn ex1_m1() -> Matching {
    Matching::from_strs(&[("u1", "w1"), ("u3", "w1"), ("u2", "w2"), ("u4", "w2")])
}

/// M2: w1 ← {u2, u3}, w2 ← {u1, u4}.
pub fn ex1_m2() -> Matching {
    Matching::from_strs(&[("u2", "w1"), ("u3", "w1"), ("u1", "w2"), ("u4", "w2")])
}

/// EX1 with every lower quota set to zero.
pub fn ex1_zero_lower() -> Instance {
    let mut inst = ex1();
    for c in &mut inst.colleges {
        c.lower.0.iter_mut().for_each(|x| *x = 0);
    }
    inst
}

/// EX1 where u2 no longer accepts w2 (and vice versa).
pub fn ex1_without_u2_w2() -> Instance {
    let mut inst = ex1();
    inst.students[1].prefs.remove("w2");
    inst.colleges[1].prefs.remove("u2");
    inst
}
