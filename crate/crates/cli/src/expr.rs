//! Real-number expressions for `--theta`: decimal literals, `sqrtN` or
//! `sqrt(expr)`, parentheses, unary minus and `+ - * /`.

pub fn parse_real(input: &str) -> Result<f64, String> {
    let mut p = Parser {
        src: input.as_bytes(),
        pos: 0,
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(format!("unexpected '{}' at offset {} in {input:?}", p.src[p.pos] as char, p.pos));
    }
    if !value.is_finite() {
        return Err(format!("{input:?} does not evaluate to a finite number"));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<f64, String> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == b'+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<f64, String> {
        let mut acc = self.factor()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.factor()?;
            acc = if op == b'*' { acc * rhs } else { acc / rhs };
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<f64, String> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err("missing ')'".into());
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b's') if self.src[self.pos..].starts_with(b"sqrt") => {
                self.pos += 4;
                let arg = if self.peek() == Some(b'(') { self.factor()? } else { self.number()? };
                if arg < 0.0 {
                    return Err(format!("sqrt of negative number {arg}"));
                }
                Ok(arg.sqrt())
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) => Err(format!("unexpected '{}' at offset {}", c as char, self.pos)),
            None => Err("unexpected end of expression".into()),
        }
    }

    fn number(&mut self) -> Result<f64, String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'.') {
            self.pos += 1;
        }
        if self.pos < self.src.len() && matches!(self.src[self.pos], b'e' | b'E') {
            let save = self.pos;
            self.pos += 1;
            if self.pos < self.src.len() && matches!(self.src[self.pos], b'+' | b'-') {
                self.pos += 1;
            }
            let digits = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if digits == self.pos {
                self.pos = save;
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        text.parse::<f64>().map_err(|_| format!("expected a number at offset {start}"))
    }
}

#[cfg(test)]
mod tests {
    use super::parse_real;

    #[test]
    fn literals_and_roots() {
        assert_eq!(parse_real("0.2").unwrap(), 0.2);
        assert_eq!(parse_real("sqrt2-1").unwrap(), 2f64.sqrt() - 1.0);
        assert_eq!(parse_real("(sqrt5-1)/2").unwrap(), (5f64.sqrt() - 1.0) / 2.0);
        assert_eq!(parse_real("1/3").unwrap(), 1.0 / 3.0);
        assert_eq!(parse_real("-2*sqrt(3)").unwrap(), -2.0 * 3f64.sqrt());
        assert_eq!(parse_real("1e-3").unwrap(), 1e-3);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_real("").is_err());
        assert!(parse_real("pi").is_err());
        assert!(parse_real("1/0").is_err());
        assert!(parse_real("sqrt(-2)").is_err());
        assert!(parse_real("(1").is_err());
        assert!(parse_real("2 3").is_err());
    }
}
