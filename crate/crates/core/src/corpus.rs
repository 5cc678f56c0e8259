//! Standard substitutions used in examples and tests.

use crate::substitution::{Morphism, Substitution};
use crate::words::{Alphabet, Letter, Word};

fn build(names: &[&str], images: &[&str]) -> Substitution {
    let alphabet = Alphabet::new(names.iter().copied()).expect("corpus alphabet");
    let images: Vec<Vec<Letter>> = images
        .iter()
        .map(|img| alphabet.parse_word(img).expect("corpus image").into_vec())
        .collect();
    Substitution::from_images(alphabet, images, 0).expect("corpus substitution")
}

/// Fibonacci: 0 -> 01, 1 -> 0.
pub fn fibonacci() -> Substitution {
    build(&["0", "1"], &["01", "0"])
}

/// Thue–Morse: 0 -> 01, 1 -> 10.
pub fn morse() -> Substitution {
    build(&["0", "1"], &["01", "10"])
}

/// Tribonacci: a -> ab, b -> ac, c -> a.
pub fn tribonacci() -> Substitution {
    build(&["a", "b", "c"], &["ab", "ac", "a"])
}

/// a -> abab, b -> abbb (eigenvalues 1 and 4).
pub fn counterexample_tau() -> Substitution {
    build(&["a", "b"], &["abab", "abbb"])
}

/// a -> abab, b -> accc, c -> abbc (eigenvalues 1, -2 and 4).
pub fn counterexample_sigma() -> Substitution {
    build(&["a", "b", "c"], &["abab", "accc", "abbc"])
}

/// The coding a -> a, b -> b, c -> b from the alphabet of
/// [`counterexample_sigma`] onto that of [`counterexample_tau`].
pub fn counterexample_coding() -> Morphism {
    let source = counterexample_sigma().alphabet().clone();
    let target = counterexample_tau().alphabet().clone();
    Morphism::new(source, target, vec![Word::letter(0), Word::letter(1), Word::letter(1)])
        .expect("corpus coding")
}

/// Constant-length 3 cyclic substitution a -> abc, b -> bca, c -> cab (dominant eigenvalue 3).
pub fn cyclic_three() -> Substitution {
    build(&["a", "b", "c"], &["abc", "bca", "cab"])
}

/// The four primitive substitutions used throughout the property suites.
pub fn all() -> Vec<(&'static str, Substitution)> {
    vec![
        ("fibonacci", fibonacci()),
        ("morse", morse()),
        ("tribonacci", tribonacci()),
        ("tau", counterexample_tau()),
    ]
}
