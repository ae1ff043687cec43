//! Textual positions.
//!
//! ```text
//! position := term ( '+' term )*
//! term     := 'CS' '[' int ( ',' int )* ']'
//!           | 'BS2' '[' int ',' int ']'
//!           | "BS2'" '[' int ',' int ']'      two-spot game after the opening
//! ```
//!
//! Whitespace is ignored everywhere and keywords are case-insensitive.
//! [`Position`]'s `Display` impl writes this grammar back.

use sprouts_core::{CircularState, Component, Position};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("column {column}: {message}")]
pub struct ParseError {
    /// 1-based character column in the input.
    pub column: usize,
    pub message: String,
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    input: &'a str,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> Self {
        let chars = input
            .chars()
            .enumerate()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        Parser { chars, pos: 0, input }
    }

    fn column(&self) -> usize {
        match self.chars.get(self.pos) {
            Some((col, _)) => col + 1,
            None => self.input.chars().count() + 1,
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { column: self.column(), message: message.into() })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|(_, c)| *c)
    }

    fn eat(&mut self, want: char) -> bool {
        if self.peek().is_some_and(|c| c.eq_ignore_ascii_case(&want)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, want: char) -> Result<(), ParseError> {
        if self.eat(want) {
            Ok(())
        } else {
            match self.peek() {
                Some(c) => self.error(format!("expected '{want}', found '{c}'")),
                None => self.error(format!("expected '{want}', found end of input")),
            }
        }
    }

    fn keyword(&mut self, word: &str) -> bool {
        let start = self.pos;
        for w in word.chars() {
            if !self.eat(w) {
                self.pos = start;
                return false;
            }
        }
        true
    }

    fn number(&mut self) -> Result<u32, ParseError> {
        let start = self.pos;
        let mut digits = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            digits.push(c);
            self.pos += 1;
        }
        if digits.is_empty() {
            return match self.peek() {
                Some('-') => self.error("tip counts must be non-negative"),
                Some(c) => self.error(format!("expected a number, found '{c}'")),
                None => self.error("expected a number, found end of input"),
            };
        }
        digits.parse().or_else(|_| {
            self.pos = start;
            self.error(format!("number {digits} is too large"))
        })
    }

    fn list(&mut self) -> Result<Vec<u32>, ParseError> {
        self.expect('[')?;
        let mut values = vec![self.number()?];
        while self.eat(',') {
            values.push(self.number()?);
        }
        self.expect(']')?;
        Ok(values)
    }

    fn term(&mut self) -> Result<Component, ParseError> {
        let start = self.pos;
        if self.keyword("CS") {
            let values = self.list()?;
            return CircularState::new(values).map(Component::Circular).or_else(|e| {
                self.pos = start;
                self.error(e.to_string())
            });
        }
        if self.keyword("BS2") {
            let after_forced = self.eat('\'');
            let values = self.list()?;
            let [p, q] = values[..] else {
                self.pos = start;
                return self.error(format!("BS2 takes exactly two tip counts, got {}", values.len()));
            };
            let built = if after_forced {
                Component::bs2_after_forced(p, q)
            } else {
                Component::bs2(p, q)
            };
            return built.or_else(|e| {
                self.pos = start;
                self.error(e.to_string())
            });
        }
        match self.peek() {
            Some(c) => self.error(format!("expected CS[...] or BS2[p,q], found '{c}'")),
            None => self.error("expected CS[...] or BS2[p,q], found end of input"),
        }
    }

    fn position(&mut self) -> Result<Position, ParseError> {
        let mut components = vec![self.term()?];
        while self.eat('+') {
            components.push(self.term()?);
        }
        if let Some(c) = self.peek() {
            return self.error(format!("unexpected '{c}' after position"));
        }
        Ok(Position::new(components))
    }
}

pub fn parse_position(input: &str) -> Result<Position, ParseError> {
    Parser::new(input).position()
}

pub fn format_position(position: &Position) -> String {
    position.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cs(t: &[u32]) -> Component {
        Component::Circular(CircularState::new(t.iter().copied()).unwrap())
    }

    #[test]
    fn parses_terms_and_sums() {
        assert_eq!(parse_position("CS[3,1,4,1]").unwrap(), Position::new(vec![cs(&[3, 1, 4, 1])]));
        assert_eq!(
            parse_position(" cs[ 0,1 ,0,1 ] +CS[1,0,2,0]").unwrap(),
            Position::new(vec![cs(&[0, 1, 0, 1]), cs(&[1, 0, 2, 0])])
        );
        assert_eq!(parse_position("BS2[3,3]").unwrap(), Position::bs2_start(3, 3));
        assert_eq!(parse_position("BS2'[4, 5]").unwrap(), Position::bs2_after_forced(4, 5));
        assert_eq!(
            parse_position("BS2[3,4]+CS[1,1,1,1]").unwrap().components.len(),
            2
        );
    }

    #[test]
    fn errors_carry_columns() {
        let e = parse_position("CS[1,2]").unwrap_err();
        assert_eq!(e.column, 1);
        assert!(e.message.contains("at least 3 spots"), "{e}");

        let e = parse_position("CS[1,x,1]").unwrap_err();
        assert_eq!(e.column, 6);

        let e = parse_position("CS[1,1,1] + ").unwrap_err();
        assert_eq!(e.column, 13);
        assert!(e.message.contains("end of input"));

        let e = parse_position("BS2[2,5]").unwrap_err();
        assert!(e.message.contains("at least 3 tips"), "{e}");

        let e = parse_position("BS2[3,4,5]").unwrap_err();
        assert!(e.message.contains("exactly two"), "{e}");

        let e = parse_position("CS[1,-1,1]").unwrap_err();
        assert!(e.message.contains("non-negative"), "{e}");

        let e = parse_position("CS[1,1,1]]").unwrap_err();
        assert_eq!(e.column, 10);

        assert!(parse_position("").is_err());
        assert!(parse_position("CS[1,1,99999999999]").is_err());
    }

    proptest! {
        #[test]
        fn display_round_trips(
            terms in proptest::collection::vec(proptest::collection::vec(0u32..=9, 3..=8), 1..4),
            bs2 in proptest::option::of((3u32..9, 3u32..9, any::<bool>())),
        ) {
            let mut components: Vec<Component> = terms.iter().map(|t| cs(t)).collect();
            if let Some((p, q, after)) = bs2 {
                components.push(if after {
                    Component::bs2_after_forced(p, q).unwrap()
                } else {
                    Component::bs2(p, q).unwrap()
                });
            }
            let pos = Position::new(components);
            prop_assert_eq!(parse_position(&format_position(&pos)).unwrap(), pos);
        }
    }
}
