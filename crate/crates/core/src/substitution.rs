//! Morphisms, substitutions, incidence matrices and fixed-point generation.

use std::fmt;

use crate::error::{invalid, Error, Result};
use crate::limits::prefix_cap;
use crate::matrix::{is_primitive, IncidenceMatrix, IntMatrix, Primitivity};
use crate::words::{Alphabet, Letter, Word};

/// A morphism `source -> target*`, one image per source letter.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    source: Alphabet,
    target: Alphabet,
    images: Vec<Word>,
}

impl Morphism {
    pub fn new(source: Alphabet, target: Alphabet, images: Vec<Word>) -> Result<Self> {
        if images.len() != source.len() {
            return invalid(format!(
                "{} images given for an alphabet of {} letters",
                images.len(),
                source.len()
            ));
        }
        for img in &images {
            target.check_word(img)?;
        }
        Ok(Morphism {
            source,
            target,
            images,
        })
    }

    pub fn identity(alphabet: Alphabet) -> Self {
        let images = (0..alphabet.len()).map(Word::letter).collect();
        Morphism {
            source: alphabet.clone(),
            target: alphabet,
            images,
        }
    }

    pub fn source(&self) -> &Alphabet {
        &self.source
    }

    pub fn target(&self) -> &Alphabet {
        &self.target
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image(&self, letter: Letter) -> &Word {
        &self.images[letter]
    }

    pub fn max_image_len(&self) -> usize {
        self.images.iter().map(|w| w.len()).max().unwrap_or(0)
    }

    pub fn min_image_len(&self) -> usize {
        self.images.iter().map(|w| w.len()).min().unwrap_or(0)
    }

    pub fn is_letter_to_letter(&self) -> bool {
        self.images.iter().all(|w| w.len() == 1)
    }

    pub fn is_non_erasing(&self) -> bool {
        self.images.iter().all(|w| !w.is_empty())
    }

    /// Image of a word.
    pub fn apply(&self, word: &[Letter]) -> Word {
        let mut out = Vec::with_capacity(word.len() * self.max_image_len().max(1));
        for &l in word {
            out.extend_from_slice(&self.images[l]);
        }
        Word::new(out)
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &Morphism) -> Result<Morphism> {
        if inner.target != self.source {
            return invalid("composition domain/codomain alphabets differ");
        }
        Ok(Morphism {
            source: inner.source.clone(),
            target: self.target.clone(),
            images: inner.images.iter().map(|w| self.apply(w)).collect(),
        })
    }

    /// `m_{i,j}` = occurrences of target letter `i` in the image of source letter `j`.
    pub fn incidence_matrix(&self) -> IncidenceMatrix {
        let mut counts = vec![vec![0u64; self.source.len()]; self.target.len()];
        for (j, img) in self.images.iter().enumerate() {
            for &i in img.iter() {
                counts[i][j] += 1;
            }
        }
        IntMatrix::from_rows(&counts)
    }

    /// First source letter whose image differs, if any.
    pub fn first_difference(&self, other: &Morphism) -> Option<Letter> {
        if self.images.len() != other.images.len() {
            return Some(self.images.len().min(other.images.len()));
        }
        self.images
            .iter()
            .zip(&other.images)
            .position(|(a, b)| a != b)
    }

    pub fn render(&self) -> String {
        self.images
            .iter()
            .enumerate()
            .map(|(l, w)| format!("{} -> {}", self.source.symbol(l), self.target.render(w)))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `compose(f, g) = f ∘ g`.
pub fn compose(f: &Morphism, g: &Morphism) -> Result<Morphism> {
    f.compose(g)
}

pub fn incidence_matrix(m: &Morphism) -> IncidenceMatrix {
    m.incidence_matrix()
}

/// An endomorphism `A -> A+` with a start letter whose image begins with it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Substitution {
    morphism: Morphism,
    start: Letter,
}

impl Substitution {
    pub fn new(morphism: Morphism, start: Letter) -> Result<Self> {
        if morphism.source != morphism.target {
            return invalid("a substitution maps an alphabet into itself");
        }
        if start >= morphism.source.len() {
            return invalid(format!("start letter index {start} out of range"));
        }
        if let Some(l) = morphism.images.iter().position(|w| w.is_empty()) {
            return invalid(format!(
                "image of {} is empty",
                morphism.source.symbol(l)
            ));
        }
        if morphism.images[start][0] != start {
            return invalid(format!(
                "the image of the start letter {} does not begin with {}",
                morphism.source.symbol(start),
                morphism.source.symbol(start)
            ));
        }
        Ok(Substitution { morphism, start })
    }

    /// Builds a substitution over `alphabet` from images given as index vectors.
    pub fn from_images(alphabet: Alphabet, images: Vec<Vec<Letter>>, start: Letter) -> Result<Self> {
        let m = Morphism::new(
            alphabet.clone(),
            alphabet,
            images.into_iter().map(Word::from).collect(),
        )?;
        Substitution::new(m, start)
    }

    pub fn morphism(&self) -> &Morphism {
        &self.morphism
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.morphism.source
    }

    pub fn size(&self) -> usize {
        self.morphism.source.len()
    }

    pub fn start(&self) -> Letter {
        self.start
    }

    pub fn image(&self, l: Letter) -> &Word {
        self.morphism.image(l)
    }

    pub fn images(&self) -> &[Word] {
        self.morphism.images()
    }

    pub fn apply(&self, word: &[Letter]) -> Word {
        self.morphism.apply(word)
    }

    pub fn incidence_matrix(&self) -> IncidenceMatrix {
        self.morphism.incidence_matrix()
    }

    pub fn primitivity(&self) -> Primitivity {
        is_primitive(&self.incidence_matrix()).expect("incidence matrices are square and non-negative")
    }

    pub fn is_primitive(&self) -> bool {
        self.primitivity().primitive
    }

    pub(crate) fn require_primitive(&self) -> Result<()> {
        if self.is_primitive() {
            Ok(())
        } else {
            invalid("substitution is not primitive")
        }
    }

    /// `self ∘ inner` as a substitution; both must share the alphabet and start letter.
    pub fn then_after(&self, inner: &Substitution) -> Result<Substitution> {
        let m = self.morphism.compose(&inner.morphism)?;
        Substitution::new(m, inner.start)
    }

    /// `τ^n`, same start letter.
    pub fn power(&self, n: u32) -> Result<Substitution> {
        if n == 0 {
            return invalid("substitution power must be at least 1");
        }
        let mut images: Vec<Word> = self.images().to_vec();
        for _ in 1..n {
            let total: usize = images.iter().map(|w| w.len()).sum();
            if total > prefix_cap() {
                return Err(Error::ResourceLimit {
                    what: format!("images of the {n}-th power"),
                    budget: prefix_cap(),
                });
            }
            images = images.iter().map(|w| self.apply(w)).collect();
        }
        Substitution::new(
            Morphism {
                source: self.alphabet().clone(),
                target: self.alphabet().clone(),
                images,
            },
            self.start,
        )
    }

    /// A copy with the letters renumbered by their first appearance in the
    /// fixed point, so the start letter becomes index 0. Returns the renamed
    /// substitution and `order`, where `order[k]` is the original letter
    /// renamed to `k`. Letters that never appear (possible only for
    /// non-primitive substitutions) keep their relative order at the end.
    pub fn canonical_form(&self) -> Result<(Substitution, Vec<Letter>)> {
        let n = self.size();
        let mut gen = FixedPointPrefix::new(self.clone())?;
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut len = 64usize;
        loop {
            let prefix = gen.prefix(len)?;
            for &l in prefix.iter() {
                if !seen[l] {
                    seen[l] = true;
                    order.push(l);
                }
            }
            if order.len() == n || len >= 1 << 16 {
                break;
            }
            len *= 4;
        }
        for (l, s) in seen.iter().enumerate() {
            if !s {
                order.push(l);
            }
        }
        let mut rank = vec![0; n];
        for (k, &l) in order.iter().enumerate() {
            rank[l] = k;
        }
        let names: Vec<String> = order.iter().map(|&l| self.alphabet().symbol(l).to_owned()).collect();
        let alphabet = Alphabet::new(names)?;
        let images = order
            .iter()
            .map(|&l| self.image(l).iter().map(|&c| rank[c]).collect::<Vec<_>>())
            .collect();
        Ok((Substitution::from_images(alphabet, images, 0)?, order))
    }

    /// Same images, read as index sequences, after canonical renaming of both sides.
    pub fn equal_up_to_canonical_renaming(&self, other: &Substitution) -> Result<bool> {
        if self.size() != other.size() {
            return Ok(false);
        }
        let (a, _) = self.canonical_form()?;
        let (b, _) = other.canonical_form()?;
        Ok(a.images() == b.images())
    }

    /// Replaces the alphabet's display names, keeping every index.
    pub fn with_alphabet(&self, alphabet: Alphabet) -> Result<Substitution> {
        if alphabet.len() != self.size() {
            return invalid("renaming alphabet has the wrong size");
        }
        Substitution::from_images(
            alphabet,
            self.images().iter().map(|w| w.to_vec()).collect(),
            self.start,
        )
    }

    pub fn render(&self) -> String {
        self.morphism.render()
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (start {})", self.morphism, self.alphabet().symbol(self.start))
    }
}

/// Lazily extended prefix of the fixed point `X_τ`.
///
/// Invariant: `buffer == τ(buffer[..expanded])`, so every extension only
/// appends letters.
#[derive(Clone, Debug)]
pub struct FixedPointPrefix {
    substitution: Substitution,
    buffer: Vec<Letter>,
    expanded: usize,
    generation: usize,
}

impl FixedPointPrefix {
    pub fn new(substitution: Substitution) -> Result<Self> {
        let start = substitution.start();
        if substitution.image(start).len() < 2 {
            return Err(Error::GenerationFailure(format!(
                "the image of the start letter {} has length 1; the fixed point cannot grow",
                substitution.alphabet().symbol(start)
            )));
        }
        let buffer = substitution.image(start).to_vec();
        Ok(FixedPointPrefix {
            substitution,
            buffer,
            expanded: 1,
            generation: 1,
        })
    }

    pub fn substitution(&self) -> &Substitution {
        &self.substitution
    }

    /// Number of letters generated so far.
    pub fn generated(&self) -> usize {
        self.buffer.len()
    }

    /// Number of letters whose image has been appended.
    pub fn generation(&self) -> usize {
        self.generation
    }

    pub fn ensure(&mut self, n: usize) -> Result<()> {
        if n > prefix_cap() {
            return Err(Error::ResourceLimit {
                what: format!("fixed-point prefix of length {n}"),
                budget: prefix_cap(),
            });
        }
        while self.buffer.len() < n {
            // |τ(start)| >= 2 keeps `expanded < buffer.len()`
            let l = self.buffer[self.expanded];
            let img = self.substitution.morphism.images[l].as_slice();
            self.buffer.extend_from_slice(img);
            self.expanded += 1;
            self.generation += 1;
        }
        Ok(())
    }

    /// `X_τ[0..n]`.
    pub fn prefix(&mut self, n: usize) -> Result<&[Letter]> {
        self.ensure(n)?;
        Ok(&self.buffer[..n])
    }

    pub fn as_slice(&self) -> &[Letter] {
        &self.buffer
    }
}

/// `X_τ[0..n]`.
pub fn fixed_point_prefix(s: &Substitution, n: usize) -> Result<Word> {
    let mut gen = FixedPointPrefix::new(s.clone())?;
    Ok(Word::from(gen.prefix(n)?))
}

/// `φ(X_τ)[0..n]` for a letter-to-letter `φ`.
pub fn morphic_image_prefix(coding: &Morphism, s: &Substitution, n: usize) -> Result<Word> {
    if !coding.is_letter_to_letter() {
        return invalid("coding must be letter-to-letter");
    }
    if coding.source() != s.alphabet() {
        return invalid("coding is not defined on the substitution's alphabet");
    }
    let x = fixed_point_prefix(s, n)?;
    Ok(x.iter().map(|&l| coding.image(l)[0]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn digits(s: &str) -> Word {
        s.bytes().map(|b| (b - b'0') as Letter).collect()
    }

    #[test]
    fn fibonacci_square_by_hand() {
        let fib = corpus::fibonacci();
        let sq = compose(fib.morphism(), fib.morphism()).unwrap();
        assert_eq!(sq.images(), &[digits("010"), digits("01")]);
        assert_eq!(
            sq.incidence_matrix(),
            IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]])
        );
        let id = Morphism::identity(fib.alphabet().clone());
        assert_eq!(compose(&id, fib.morphism()).unwrap(), fib.morphism().clone());
    }

    #[test]
    fn incidence_matrices_from_counterexample_pair() {
        assert_eq!(
            corpus::counterexample_tau().incidence_matrix(),
            IntMatrix::from_rows(&[vec![2, 1], vec![2, 3]])
        );
        assert_eq!(
            corpus::counterexample_sigma().incidence_matrix(),
            IntMatrix::from_rows(&[vec![2, 1, 1], vec![2, 0, 2], vec![0, 3, 1]])
        );
        let id = Morphism::identity(Alphabet::digits(3));
        assert_eq!(id.incidence_matrix(), IntMatrix::identity(3));
    }

    #[test]
    fn powers() {
        let fib = corpus::fibonacci();
        assert_eq!(fib.power(1).unwrap(), fib);
        let cube = fib.power(3).unwrap();
        assert_eq!(cube.images(), &[digits("01001"), digits("010")]);
        let morse = corpus::morse();
        for k in 1..=6 {
            assert_eq!(morse.power(k).unwrap().image(0).len(), 1 << k);
        }
        assert!(fib.power(0).is_err());
    }

    #[test]
    fn fixed_points() {
        assert_eq!(
            fixed_point_prefix(&corpus::fibonacci(), 13).unwrap(),
            digits("0100101001001")
        );
        assert_eq!(fixed_point_prefix(&corpus::morse(), 8).unwrap(), digits("01101001"));
        assert_eq!(fixed_point_prefix(&corpus::tribonacci(), 1).unwrap(), digits("0"));
    }

    #[test]
    fn start_letter_rules() {
        let a = Alphabet::new(["a", "b"]).unwrap();
        // a -> ba violates the start condition
        assert!(Substitution::from_images(a.clone(), vec![vec![1, 0], vec![0]], 0).is_err());
        // a -> a is accepted as a value but cannot generate a fixed point
        let s = Substitution::from_images(a.clone(), vec![vec![0], vec![0, 1]], 0).unwrap();
        assert!(matches!(
            fixed_point_prefix(&s, 3),
            Err(Error::GenerationFailure(_))
        ));
        assert!(Substitution::from_images(a, vec![vec![0, 1], vec![]], 0).is_err());
    }

    #[test]
    fn codings() {
        let sigma = corpus::counterexample_sigma();
        let phi = corpus::counterexample_coding();
        let y = morphic_image_prefix(&phi, &sigma, 16).unwrap();
        assert_eq!(y, fixed_point_prefix(&corpus::counterexample_tau(), 16).unwrap());
        let fib = corpus::fibonacci();
        let id = Morphism::identity(fib.alphabet().clone());
        assert_eq!(
            morphic_image_prefix(&id, &fib, 50).unwrap(),
            fixed_point_prefix(&fib, 50).unwrap()
        );
        let unary = Alphabet::new(["z"]).unwrap();
        let constant = Morphism::new(
            fib.alphabet().clone(),
            unary,
            vec![Word::letter(0), Word::letter(0)],
        )
        .unwrap();
        assert!(morphic_image_prefix(&constant, &fib, 20).unwrap().iter().all(|&l| l == 0));
        let non_coding = Morphism::new(
            fib.alphabet().clone(),
            fib.alphabet().clone(),
            vec![digits("01"), digits("0")],
        )
        .unwrap();
        assert!(morphic_image_prefix(&non_coding, &fib, 5).is_err());
    }

    #[test]
    fn canonical_renaming() {
        let a = Alphabet::new(["x", "y"]).unwrap();
        // start letter at index 1
        let s = Substitution::from_images(a, vec![vec![1], vec![1, 0]], 1).unwrap();
        let (c, order) = s.canonical_form().unwrap();
        assert_eq!(order, vec![1, 0]);
        assert_eq!(c.images(), &[digits("01"), digits("0")]);
        assert!(c.equal_up_to_canonical_renaming(&corpus::fibonacci()).unwrap());
    }
}
