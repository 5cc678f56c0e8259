//! Pass/fail records shared by the verification routines.

use crate::substitution::Morphism;
use crate::words::Letter;

/// One verified statement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    /// First source letter on which a morphism identity fails.
    pub counterexample: Option<Letter>,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
            counterexample: None,
        }
    }

    /// Letterwise equality of two morphisms.
    pub fn morphism_identity(name: impl Into<String>, lhs: &Morphism, rhs: &Morphism) -> Self {
        let name = name.into();
        if lhs.source().len() != rhs.source().len() {
            return Check::new(
                name,
                false,
                format!(
                    "domains differ in size ({} vs {})",
                    lhs.source().len(),
                    rhs.source().len()
                ),
            );
        }
        match lhs.first_difference(rhs) {
            None => Check::new(name, true, format!("equal on all {} letters", lhs.source().len())),
            Some(b) => {
                let sym = lhs.source().symbol(b).to_owned();
                Check {
                    detail: format!(
                        "differs on letter {sym}: {} vs {}",
                        lhs.target().render(lhs.image(b)),
                        rhs.target().render(rhs.image(b))
                    ),
                    name,
                    passed: false,
                    counterexample: Some(b),
                }
            }
        }
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}
