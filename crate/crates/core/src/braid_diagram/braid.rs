use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("braid outside the subgroup generated by T2^2 and T3: {0}")]
    Subgroup(String),
}

/// Generator of the subgroup of `B_4` used to describe knots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Generator {
    /// The square of the second band generator (a full twist).
    Tau2Squared,
    /// The third band generator (a half twist).
    Tau3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub generator: Generator,
    pub exponent: i64,
}

/// Word in `T2^2` and `T3`, written left to right as in the usual notation.
/// Adjacent letters with the same generator are merged and zero exponents
/// dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn identity() -> Self {
        BraidWord::default()
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if l.exponent == 0 {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.generator == l.generator => {
                    last.exponent += l.exponent;
                    if last.exponent == 0 {
                        out.pop();
                    }
                }
                _ => out.push(l),
            }
        }
        BraidWord { letters: out }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        BraidWord::from_letters(self.letters.iter().rev().map(|l| Letter {
            generator: l.generator,
            exponent: -l.exponent,
        }))
    }

    /// Word of the mirror image: every exponent negated, order kept.
    pub fn mirror(&self) -> Self {
        BraidWord::from_letters(self.letters.iter().map(|l| Letter {
            generator: l.generator,
            exponent: -l.exponent,
        }))
    }

    pub fn concat(&self, other: &BraidWord) -> Self {
        BraidWord::from_letters(self.letters.iter().chain(other.letters.iter()).copied())
    }

    /// Letters expanded into single twists, in the order they act on the
    /// diagram (rightmost letter first).
    pub fn action_sequence(&self) -> Vec<(Generator, i64)> {
        let mut out = Vec::new();
        for l in self.letters.iter().rev() {
            let s = l.exponent.signum();
            for _ in 0..l.exponent.abs() {
                out.push((l.generator, s));
            }
        }
        out
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| match l.generator {
                Generator::Tau2Squared => format!("T2^{}", 2 * l.exponent),
                Generator::Tau3 => format!("T3^{}", l.exponent),
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

fn parse_token(tok: &str) -> Result<Letter, BraidError> {
    let bad = || BraidError::Syntax(format!("bad token `{tok}`"));
    let rest = tok.strip_prefix('T').ok_or_else(bad)?;
    let (idx, power) = match rest.split_once('^') {
        Some((i, p)) => (i, p),
        None => (rest, "1"),
    };
    let idx: u32 = idx.parse().map_err(|_| bad())?;
    let power: i64 = power
        .strip_prefix('+')
        .unwrap_or(power)
        .parse()
        .map_err(|_| bad())?;
    if power == 0 {
        return Err(bad());
    }
    match idx {
        2 if power % 2 != 0 => Err(BraidError::Subgroup(format!("odd power in `{tok}`"))),
        2 => Ok(Letter {
            generator: Generator::Tau2Squared,
            exponent: power / 2,
        }),
        3 => Ok(Letter {
            generator: Generator::Tau3,
            exponent: power,
        }),
        1 => Err(BraidError::Subgroup(format!("`{tok}` uses T1"))),
        _ => Err(bad()),
    }
}

/// Parse a whitespace separated word over tokens `T2^2k` and `T3^k`.
pub fn parse_braid(text: &str) -> Result<BraidWord, BraidError> {
    let letters = text
        .split_whitespace()
        .map(parse_token)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BraidWord::from_letters(letters))
}

impl FromStr for BraidWord {
    type Err = BraidError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_braid(s)
    }
}

/// The knot `K(epsilon, sigma)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KnotSpec {
    pub epsilon: i64,
    pub sigma: BraidWord,
}

impl KnotSpec {
    pub fn new(epsilon: i64, sigma: BraidWord) -> Result<Self, BraidError> {
        if epsilon != 1 && epsilon != -1 {
            return Err(BraidError::Syntax(format!("epsilon must be 1 or -1, got {epsilon}")));
        }
        Ok(KnotSpec { epsilon, sigma })
    }

    pub fn mirror(&self) -> Self {
        KnotSpec {
            epsilon: -self.epsilon,
            sigma: self.sigma.mirror(),
        }
    }
}

impl fmt::Display for KnotSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K({}, {})", self.epsilon, self.sigma)
    }
}

/// Parse `K(<epsilon>, <word>)`.
pub fn parse_knot(text: &str) -> Result<KnotSpec, BraidError> {
    let t = text.trim();
    let inner = t
        .strip_prefix("K(")
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| BraidError::Syntax(format!("expected K(<epsilon>, <word>), got `{t}`")))?;
    let (eps, word) = match inner.split_once(',') {
        Some((e, w)) => (e.trim(), w),
        None => (inner.trim(), ""),
    };
    let epsilon: i64 = eps
        .strip_prefix('+')
        .unwrap_or(eps)
        .parse()
        .map_err(|_| BraidError::Syntax(format!("bad epsilon `{eps}`")))?;
    KnotSpec::new(epsilon, parse_braid(word)?)
}

impl FromStr for KnotSpec {
    type Err = BraidError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_knot(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_merges() {
        let w = parse_braid("T2^2 T3^2 T2^2 T3^-2 T2^-2").unwrap();
        assert_eq!(w.letters().len(), 5);
        assert_eq!(w.to_string(), "T2^2 T3^2 T2^2 T3^-2 T2^-2");
        assert!(parse_braid("").unwrap().is_identity());
        assert!(parse_braid("T2^2 T2^-2").unwrap().is_identity());
        assert_eq!(parse_braid("T3 T3").unwrap().to_string(), "T3^2");
    }

    #[test]
    fn rejects_outside_subgroup() {
        assert!(matches!(parse_braid("T1^1"), Err(BraidError::Subgroup(_))));
        assert!(matches!(parse_braid("T2^1"), Err(BraidError::Subgroup(_))));
        assert!(matches!(parse_braid("T4^1"), Err(BraidError::Syntax(_))));
        assert!(matches!(parse_braid("X"), Err(BraidError::Syntax(_))));
    }

    #[test]
    fn knot_spec_round_trip() {
        let k = parse_knot("K(1, T2^-2 T3^1 T2^2)").unwrap();
        assert_eq!(k.epsilon, 1);
        assert_eq!(k.to_string(), "K(1, T2^-2 T3^1 T2^2)");
        assert_eq!(k.mirror().to_string(), "K(-1, T2^2 T3^-1 T2^-2)");
        assert!(parse_knot("K(2, T3)").is_err());
        assert!(parse_knot("K(-1, )").unwrap().sigma.is_identity());
    }

    #[test]
    fn action_runs_right_to_left() {
        let w = parse_braid("T2^-2 T3^1").unwrap();
        assert_eq!(
            w.action_sequence(),
            vec![(Generator::Tau3, 1), (Generator::Tau2Squared, -1)]
        );
    }
}
