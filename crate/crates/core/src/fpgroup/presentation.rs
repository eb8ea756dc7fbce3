use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::word::Word;
use super::GroupError;

/// Finite presentation `⟨gens | relators⟩`. Relators are stored freely and
/// cyclically reduced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub generator_names: Vec<String>,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generator_names: Vec<String>, relators: Vec<Word>) -> Self {
        let relators = relators
            .into_iter()
            .map(|r| r.cyclic_reduce())
            .filter(|r| !r.is_identity())
            .collect();
        Presentation {
            generator_names,
            relators,
        }
    }

    pub fn generator_count(&self) -> usize {
        self.generator_names.len()
    }

    /// `Γ = ⟨a, b | (ba)³, (ab⁻¹a)³, [ba, ab⁻¹a]⟩ ≅ Pol₃(C₃)`.
    pub fn gamma() -> Self {
        Presentation::parse("gens: a b\nrels: (b*a)^3, (a*b^-1*a)^3, [b*a, a*b^-1*a]")
            .expect("built-in presentation")
    }

    /// `⟨a, b | a⁹, b⁹, bab⁻¹a⁻⁴, aba⁻¹b⁻⁴⟩ ≅ Pol₂(C₃)`.
    pub fn pol2_c3() -> Self {
        Presentation::parse("gens: a b\nrels: a^9, b^9, b*a*b^-1*a^-4, a*b*a^-1*b^-4")
            .expect("built-in presentation")
    }

    /// Parses the two-line text format
    ///
    /// ```text
    /// gens: a b
    /// rels: (b*a)^3, (a*b^-1*a)^3, [b*a, a*b^-1*a]
    /// ```
    ///
    /// `rels:` may be repeated or continued over several lines; `#` starts a
    /// comment.
    pub fn parse(text: &str) -> Result<Self, GroupError> {
        let mut gens: Option<Vec<String>> = None;
        let mut rel_chunks: Vec<(usize, String)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("gens:") {
                let names: Vec<String> = rest
                    .split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|s| !s.is_empty())
                    .map(str::to_string)
                    .collect();
                for n in &names {
                    if !is_ident(n) {
                        return Err(GroupError::Parse {
                            line: line_no,
                            message: format!("invalid generator name `{n}`"),
                        });
                    }
                }
                gens = Some(names);
            } else if let Some(rest) = line.strip_prefix("rels:") {
                rel_chunks.push((line_no, rest.to_string()));
            } else if let Some((_, prev)) = rel_chunks.last_mut() {
                prev.push(' ');
                prev.push_str(line);
            } else {
                return Err(GroupError::Parse {
                    line: line_no,
                    message: "expected `gens:` or `rels:`".into(),
                });
            }
        }
        let gens = gens.ok_or(GroupError::Parse {
            line: 1,
            message: "missing `gens:` line".into(),
        })?;
        let symbols = SymbolTable::from_generators(&gens);
        let mut relators = Vec::new();
        for (line, chunk) in rel_chunks {
            let words = parse_word_list(&chunk, &symbols)
                .map_err(|message| GroupError::Parse { line, message })?;
            relators.extend(words);
        }
        Ok(Presentation::new(gens, relators))
    }

    pub fn format_word(&self, w: &Word) -> String {
        w.format(&self.generator_names)
    }

    /// Parses a single word over this presentation's generators.
    pub fn parse_word(&self, s: &str) -> Result<Word, GroupError> {
        parse_word(s, &SymbolTable::from_generators(&self.generator_names))
            .map_err(|message| GroupError::Parse { line: 1, message })
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.format_word(r)).collect();
        write!(
            f,
            "⟨{} | {}⟩",
            self.generator_names.join(", "),
            rels.join(", ")
        )
    }
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Names usable inside word expressions: generators plus named abbreviations.
#[derive(Clone, Debug, Default)]
pub struct SymbolTable {
    symbols: HashMap<String, Word>,
}

impl SymbolTable {
    pub fn from_generators(names: &[String]) -> Self {
        let symbols = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), Word::gen(i)))
            .collect();
        SymbolTable { symbols }
    }

    pub fn bind(&mut self, name: &str, w: Word) {
        self.symbols.insert(name.to_string(), w);
    }

    pub fn get(&self, name: &str) -> Option<&Word> {
        self.symbols.get(name)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Star,
    Caret,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    InvSuffix,
}

fn tokenize(s: &str) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            _ if c.is_whitespace() => i += 1,
            '*' | '·' => {
                out.push(Tok::Star);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            '[' => {
                out.push(Tok::LBrack);
                i += 1
            }
            ']' => {
                out.push(Tok::RBrack);
                i += 1
            }
            ',' => {
                out.push(Tok::Comma);
                i += 1
            }
            '⁻' if chars.get(i + 1) == Some(&'¹') => {
                out.push(Tok::InvSuffix);
                i += 2
            }
            '-' | '0'..='9' => {
                let start = i;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let lit: String = chars[start..i].iter().collect();
                let v = lit
                    .parse::<i64>()
                    .map_err(|_| format!("bad integer `{lit}`"))?;
                out.push(Tok::Int(v));
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            _ => return Err(format!("unexpected character `{c}`")),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    symbols: &'a SymbolTable,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expect(&mut self, t: Tok) -> Result<(), String> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(format!("expected {t:?}, found {:?}", self.peek()))
        }
    }

    fn expr(&mut self) -> Result<Word, String> {
        let mut w = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    w = w.mul(&self.term()?);
                }
                Some(Tok::Ident(_)) | Some(Tok::LParen) | Some(Tok::LBrack) => {
                    w = w.mul(&self.term()?);
                }
                _ => return Ok(w),
            }
        }
    }

    fn term(&mut self) -> Result<Word, String> {
        let mut w = self.atom()?;
        loop {
            match self.peek() {
                Some(Tok::Caret) => {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Tok::Int(e)) => {
                            self.pos += 1;
                            w = w.pow(e);
                        }
                        other => return Err(format!("expected exponent, found {other:?}")),
                    }
                }
                Some(Tok::InvSuffix) => {
                    self.pos += 1;
                    w = w.inverse();
                }
                _ => return Ok(w),
            }
        }
    }

    fn atom(&mut self) -> Result<Word, String> {
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                self.symbols
                    .get(&name)
                    .cloned()
                    .ok_or_else(|| format!("unknown symbol `{name}`"))
            }
            Some(Tok::Int(1)) => {
                self.pos += 1;
                Ok(Word::identity())
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let w = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(w)
            }
            Some(Tok::LBrack) => {
                self.pos += 1;
                let x = self.expr()?;
                self.expect(Tok::Comma)?;
                let y = self.expr()?;
                self.expect(Tok::RBrack)?;
                Ok(Word::commutator(&x, &y))
            }
            other => Err(format!("unexpected token {other:?}")),
        }
    }
}

/// Parses one word expression: products with `*` (or juxtaposition of
/// separated names), powers `x^n`, `x⁻¹`, parentheses, commutators `[x, y]`
/// and the literal `1`.
pub fn parse_word(s: &str, symbols: &SymbolTable) -> Result<Word, String> {
    let mut p = Parser {
        toks: tokenize(s)?,
        pos: 0,
        symbols,
    };
    if p.toks.is_empty() {
        return Err("empty word expression".into());
    }
    let w = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(format!("trailing input at token {:?}", p.peek()));
    }
    Ok(w)
}

/// Comma-separated list of word expressions (commas inside brackets belong to
/// commutators).
pub fn parse_word_list(s: &str, symbols: &SymbolTable) -> Result<Vec<Word>, String> {
    let mut p = Parser {
        toks: tokenize(s)?,
        pos: 0,
        symbols,
    };
    let mut out = Vec::new();
    if p.toks.is_empty() {
        return Ok(out);
    }
    loop {
        out.push(p.expr()?);
        match p.peek() {
            None => return Ok(out),
            Some(Tok::Comma) => p.pos += 1,
            Some(t) => return Err(format!("unexpected token {t:?}")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_gamma() {
        let g = Presentation::gamma();
        assert_eq!(g.generator_count(), 2);
        assert_eq!(g.relators.len(), 3);
        assert_eq!(g.format_word(&g.relators[0]), "b*a*b*a*b*a");
        // (ab⁻¹a)³ cyclically reduces to a²b⁻¹a²b⁻¹a²b⁻¹ up to rotation
        assert_eq!(g.relators[1].len(), 9);
    }

    #[test]
    fn third_relator_is_commutator() {
        let g = Presentation::gamma();
        let x = g.parse_word("b*a").unwrap();
        let y = g.parse_word("a*b^-1*a").unwrap();
        let c = Word::commutator(&x, &y);
        assert!(c.is_conjugate_to(&g.relators[2]));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = Presentation::parse("gens: a b\nrels: a^3,\n  (a*c)^2").unwrap_err();
        match err {
            GroupError::Parse { line, message } => {
                assert_eq!(line, 2);
                assert!(message.contains("unknown symbol `c`"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(Presentation::parse("rels: a").is_err());
    }

    #[test]
    fn unicode_inverse_and_juxtaposition() {
        let g = Presentation::gamma();
        let w = g.parse_word("(a b⁻¹ a)^2").unwrap();
        assert_eq!(w, g.parse_word("a*b^-1*a^2*b^-1*a").unwrap());
        assert!(g.parse_word("1").unwrap().is_identity());
    }
}
