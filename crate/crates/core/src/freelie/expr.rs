//! Parser for bracket expressions such as `2*[X,Y] - [Y,[X,Y]]`.
//!
//! ```text
//! expr := term | expr ('+' | '-') term
//! term := [integer '*'] atom
//! atom := letter | '[' expr ',' expr ']'
//! ```
//!
//! Letters are `X`, `Y`, `Z`, ... up to the alphabet size. Every sum must be
//! homogeneous. A leading `-` on the first term is accepted.

use num_bigint::BigInt;

use super::{bracket, LieElement, LieError};
use crate::series::LETTERS;

pub fn parse_lie_expression(text: &str, alphabet_size: usize) -> Result<LieElement, LieError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, alphabet_size };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.syntax("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    alphabet_size: usize,
}

impl Parser<'_> {
    fn syntax(&self, message: &str) -> LieError {
        LieError::Syntax { position: self.pos + 1, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<LieElement, LieError> {
        let negate = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            let at = self.pos;
            self.pos += 1;
            let t = self.term()?;
            if t.degree() != acc.degree() {
                return Err(LieError::Inhomogeneous { position: at + 1, left: acc.degree(), right: t.degree() });
            }
            acc = if op == b'+' { acc.try_add(&t)? } else { acc.try_sub(&t)? };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<LieElement, LieError> {
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let start = self.pos;
            while matches!(self.src.get(self.pos), Some(c) if c.is_ascii_digit()) {
                self.pos += 1;
            }
            let n: BigInt = std::str::from_utf8(&self.src[start..self.pos])
                .expect("ascii digits")
                .parse()
                .expect("digits parse");
            if self.peek() != Some(b'*') {
                return Err(self.syntax("expected '*' after coefficient"));
            }
            self.pos += 1;
            Ok(self.atom()?.scale(&n))
        } else {
            self.atom()
        }
    }

    fn atom(&mut self) -> Result<LieElement, LieError> {
        match self.peek() {
            Some(b'[') => {
                self.pos += 1;
                let a = self.expr()?;
                if self.peek() != Some(b',') {
                    return Err(self.syntax("expected ','"));
                }
                self.pos += 1;
                let b = self.expr()?;
                if self.peek() != Some(b']') {
                    return Err(self.syntax("expected ']'"));
                }
                self.pos += 1;
                bracket(&a, &b)
            }
            Some(c) => match LETTERS[..self.alphabet_size].iter().position(|&l| l == c) {
                Some(g) => {
                    self.pos += 1;
                    Ok(LieElement::generator(self.alphabet_size, g as u8))
                }
                None => Err(self.syntax("expected a generator letter or '['")),
            },
            None => Err(self.syntax("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let xy = LieElement::basis(2, vec![0, 1]);
        assert_eq!(parse_lie_expression("[X,Y]", 2).unwrap(), xy);
        assert_eq!(parse_lie_expression("2*[X,Y] - [Y,X]", 2).unwrap(), xy.scale(&BigInt::from(3)));
        assert_eq!(parse_lie_expression("[X,X]", 2).unwrap(), LieElement::zero(2, 2));
        assert_eq!(parse_lie_expression(" - [ X , [X,Y] ] ", 2).unwrap(), LieElement::basis(2, vec![0, 0, 1]).neg());
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_lie_expression("X + [X,Y]", 2),
            Err(LieError::Inhomogeneous { position: 3, left: 1, right: 2 })
        ));
        assert!(matches!(parse_lie_expression("[X,Y", 2), Err(LieError::Syntax { position: 5, .. })));
        assert!(matches!(parse_lie_expression("Z", 2), Err(LieError::Syntax { position: 1, .. })));
        assert!(parse_lie_expression("Z", 3).is_ok());
        assert!(matches!(parse_lie_expression("2 X", 2), Err(LieError::Syntax { .. })));
        assert!(matches!(parse_lie_expression("X Y", 2), Err(LieError::Syntax { position: 3, .. })));
    }
}
