use super::brute::{dense_brute, with_detail};
use super::kernel::{kernelize_few_students, Kernel};
use super::{finish, verify_result, Budget, SolveMode, SolveOptions, SolveResult};
use crate::error::Result;
use crate::model::Dense;
use crate::model::Instance;

/// Kernelizes, then searches all assignments of the reduced instance.
pub fn solve_few_students(inst: &Instance, opts: &SolveOptions) -> Result<SolveResult> {
    let d = Dense::new(inst)?;
    let budget = Budget::new(opts.budget);
    let found = match kernelize_few_students(inst)? {
        Kernel::No(_) => None,
        Kernel::Reduced(k) => {
            let kd = Dense::new(&k)?;
            let hit = dense_brute(&kd, SolveMode::Stable, opts, &budget).map_err(|e| with_detail(e, " (few-students)"))?;
            match hit {
                Some(a) => Some(d.assign_of(&kd.matching_of(&a))?),
                None => None,
            }
        }
    };
    let res = finish(&d, found, "few-students", &budget, opts);
    verify_result(&d, &res, SolveMode::Stable)?;
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::ex1;
    use crate::model::parse_instance;

    #[test]
    fn running_example_has_no_stable_matching() {
        assert!(!solve_few_students(&ex1(), &SolveOptions::sequential()).unwrap().is_yes());
    }

    #[test]
    fn single_pair() {
        let doc = r#"{"num_types":1,"students":[{"id":"u","types":[],"prefs":[["w"]]}],
            "colleges":[{"id":"w","prefs":[["u"]],"lower":[0],"upper":[0],"capacity":1}]}"#;
        let r = solve_few_students(&parse_instance(doc).unwrap(), &SolveOptions::sequential()).unwrap();
        assert_eq!(r.matching.unwrap().pairs(), &[("u".to_string(), "w".to_string())]);
    }
}
