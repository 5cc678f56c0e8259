//! Text format for substitutions.
//!
//! ```text
//! # comment lines start with '#'
//! alphabet = a b          # whitespace-separated distinct symbols
//! start = a
//! a -> a b a b            # image as whitespace-separated letters
//! b -> a b b b
//! coding phi: a -> a, b -> b   # optional letter-to-letter codings
//! ```
//!
//! When every symbol is a single character, images may also be written
//! without spaces (`a -> abab`).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use retword::{Alphabet, Letter, Morphism, Substitution, Word};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{0}")]
    Semantic(String),
}

fn syntax<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError::Syntax {
        line,
        message: message.into(),
    })
}

/// A parsed substitution file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstitutionFile {
    pub substitution: Substitution,
    /// Named letter-to-letter codings, in file order of their names.
    pub codings: BTreeMap<String, Morphism>,
}

impl SubstitutionFile {
    /// `id` is always available; other names come from the file.
    pub fn coding(&self, name: &str) -> Option<Morphism> {
        if name == "id" && !self.codings.contains_key("id") {
            let a = self.substitution.alphabet().clone();
            return Some(Morphism::identity(a));
        }
        self.codings.get(name).cloned()
    }

    /// Canonical text form; parsing it gives back the same value.
    pub fn format(&self) -> String {
        let s = &self.substitution;
        let a = s.alphabet();
        let mut out = String::new();
        let _ = writeln!(out, "alphabet = {}", a.symbols().join(" "));
        let _ = writeln!(out, "start = {}", a.symbol(s.start()));
        for (b, img) in s.images().iter().enumerate() {
            let _ = writeln!(out, "{} -> {}", a.symbol(b), spaced(a, img));
        }
        for (name, c) in &self.codings {
            let parts: Vec<String> = (0..a.len())
                .map(|b| format!("{} -> {}", a.symbol(b), c.target().render(c.image(b))))
                .collect();
            let _ = writeln!(out, "coding {name}: {}", parts.join(", "));
        }
        out
    }
}

fn spaced(a: &Alphabet, w: &[Letter]) -> String {
    w.iter().map(|&l| a.symbol(l)).collect::<Vec<_>>().join(" ")
}

fn parse_image(a: &Alphabet, text: &str, line: usize) -> Result<Word, ParseError> {
    let mut out = Vec::new();
    for token in text.split_whitespace() {
        if let Some(l) = a.index_of(token) {
            out.push(l);
        } else if a.is_compact() {
            for ch in token.chars() {
                match a.index_of(&ch.to_string()) {
                    Some(l) => out.push(l),
                    None => return syntax(line, format!("unknown letter '{ch}'")),
                }
            }
        } else {
            return syntax(line, format!("unknown letter '{token}'"));
        }
    }
    if out.is_empty() {
        return syntax(line, "empty image");
    }
    Ok(Word::new(out))
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

pub fn parse_substitution(text: &str) -> Result<SubstitutionFile, ParseError> {
    let mut alphabet: Option<Alphabet> = None;
    let mut start: Option<(String, usize)> = None;
    let mut images: BTreeMap<Letter, Word> = BTreeMap::new();
    let mut raw_codings: Vec<(String, String, usize)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("coding ") {
            let Some((name, body)) = rest.split_once(':') else {
                return syntax(n, "expected 'coding NAME: x -> y, ...'");
            };
            let name = name.trim();
            if name.is_empty() || name.contains(char::is_whitespace) {
                return syntax(n, "coding name must be a single word");
            }
            raw_codings.push((name.to_owned(), body.to_owned(), n));
        } else if let Some((lhs, rhs)) = line.split_once("->") {
            let Some(a) = &alphabet else {
                return syntax(n, "image before 'alphabet ='");
            };
            let lhs = lhs.trim();
            let Some(b) = a.index_of(lhs) else {
                return syntax(n, format!("unknown letter '{lhs}'"));
            };
            let img = parse_image(a, rhs, n)?;
            if images.insert(b, img).is_some() {
                return syntax(n, format!("second image for '{lhs}'"));
            }
        } else if let Some((key, value)) = line.split_once('=') {
            match key.trim() {
                "alphabet" => {
                    if alphabet.is_some() {
                        return syntax(n, "alphabet given twice");
                    }
                    let symbols: Vec<&str> = value.split_whitespace().collect();
                    match Alphabet::new(symbols) {
                        Ok(a) => alphabet = Some(a),
                        Err(e) => return syntax(n, e.to_string()),
                    }
                }
                "start" => start = Some((value.trim().to_owned(), n)),
                other => return syntax(n, format!("unknown key '{other}'")),
            }
        } else {
            return syntax(n, format!("cannot parse '{line}'"));
        }
    }

    let Some(a) = alphabet else {
        return Err(ParseError::Semantic("missing 'alphabet = ...'".into()));
    };
    let (start_name, start_line) = start.ok_or_else(|| ParseError::Semantic("missing 'start = ...'".into()))?;
    let Some(s) = a.index_of(&start_name) else {
        return syntax(start_line, format!("unknown start letter '{start_name}'"));
    };
    let mut ordered = Vec::with_capacity(a.len());
    for b in 0..a.len() {
        match images.remove(&b) {
            Some(w) => ordered.push(w.into_vec()),
            None => return Err(ParseError::Semantic(format!("no image for '{}'", a.symbol(b)))),
        }
    }
    if ordered[s].first() != Some(&s) {
        return Err(ParseError::Semantic(format!(
            "the image of the start letter {start_name} must begin with {start_name}"
        )));
    }
    let substitution =
        Substitution::from_images(a.clone(), ordered, s).map_err(|e| ParseError::Semantic(e.to_string()))?;

    let mut codings = BTreeMap::new();
    for (name, body, n) in raw_codings {
        let mut targets: Vec<Option<String>> = vec![None; a.len()];
        for part in body.split(',') {
            let Some((x, y)) = part.split_once("->") else {
                return syntax(n, format!("expected 'x -> y' in '{}'", part.trim()));
            };
            let (x, y) = (x.trim(), y.trim());
            let Some(b) = a.index_of(x) else {
                return syntax(n, format!("unknown letter '{x}'"));
            };
            if y.is_empty() || y.contains(char::is_whitespace) {
                return syntax(n, "codings map letters to single letters");
            }
            if targets[b].replace(y.to_owned()).is_some() {
                return syntax(n, format!("'{x}' coded twice"));
            }
        }
        let mut names: Vec<String> = Vec::new();
        for t in targets.iter() {
            match t {
                Some(t) if !names.contains(t) => names.push(t.clone()),
                Some(_) => {}
                None => return syntax(n, format!("coding {name} does not cover the alphabet")),
            }
        }
        let target = Alphabet::new(names.clone()).map_err(|e| ParseError::Semantic(e.to_string()))?;
        let imgs = targets
            .iter()
            .map(|t| Word::letter(names.iter().position(|x| Some(x) == t.as_ref()).unwrap()))
            .collect();
        let m = Morphism::new(a.clone(), target, imgs).map_err(|e| ParseError::Semantic(e.to_string()))?;
        if codings.insert(name.clone(), m).is_some() {
            return syntax(n, format!("coding {name} defined twice"));
        }
    }
    Ok(SubstitutionFile {
        substitution,
        codings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const TAU: &str = "alphabet = a b\nstart = a\na -> a b a b\nb -> a b b b\n";

    #[test]
    fn two_letter_file() {
        let f = parse_substitution(TAU).unwrap();
        assert_eq!(f.substitution.size(), 2);
        assert_eq!(f.substitution.start(), 0);
        assert_eq!(f.substitution.render(), "a -> abab, b -> abbb");
    }

    #[test]
    fn start_letter_violation_is_semantic() {
        let text = "alphabet = a b\nstart = a\na -> b a\nb -> a\n";
        assert!(matches!(parse_substitution(text), Err(ParseError::Semantic(_))));
    }

    #[test]
    fn empty_image_reports_the_line() {
        let text = "alphabet = a b\nstart = a\na -> a b\nb ->\n";
        assert_eq!(
            parse_substitution(text),
            Err(ParseError::Syntax {
                line: 4,
                message: "empty image".into()
            })
        );
    }

    #[test]
    fn codings_and_round_trip() {
        let text = "# sigma\nalphabet = a b c\nstart = a\na -> abab\nb -> a c c c  # spaced\nc -> abbc\ncoding phi: a -> a, b -> b, c -> b\n";
        let f = parse_substitution(text).unwrap();
        let phi = f.coding("phi").unwrap();
        assert_eq!(phi.target().symbols(), &["a", "b"]);
        assert_eq!(phi.images()[2], Word::letter(1));
        assert!(f.coding("id").unwrap().is_letter_to_letter());
        let again = parse_substitution(&f.format()).unwrap();
        assert_eq!(again, f);
        assert_eq!(again.format(), f.format());
    }

    #[test]
    fn malformed_lines() {
        assert!(matches!(
            parse_substitution("alphabet = a\nstart = a\na => a\n"),
            Err(ParseError::Syntax { line: 3, .. })
        ));
        assert!(matches!(
            parse_substitution("alphabet = a b\nstart = a\na -> ab\n"),
            Err(ParseError::Semantic(_))
        ));
    }
}
