use crate::error::{Error, Result};
use crate::expr::{Expr, Literal, Relation};

/// Parses the expression syntax described in the module docs.
pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = Parser { src, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    e.tier()?;
    Ok(e)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        loop {
            let rest = self.rest();
            let trimmed = rest.trim_start();
            let skip = rest.len() - trimmed.len();
            let comment = trimmed
                .starts_with('#')
                .then(|| trimmed.find('\n').unwrap_or(trimmed.len()));
            self.pos += skip;
            if let Some(end) = comment {
                self.pos += end;
            } else {
                break;
            }
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(&format!("expected {tok:?}")))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let lhs = self.or()?;
        if self.eat("->") {
            let rhs = self.expr()?;
            return Ok(Expr::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Expr> {
        let mut items = vec![self.and()?];
        while self.eat("|") {
            items.push(self.and()?);
        }
        Ok(if items.len() == 1 { items.pop().unwrap() } else { Expr::Or(items) })
    }

    fn and(&mut self) -> Result<Expr> {
        let mut items = vec![self.unary()?];
        while self.eat("&") {
            items.push(self.unary()?);
        }
        Ok(if items.len() == 1 { items.pop().unwrap() } else { Expr::And(items) })
    }

    fn keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        let rest = self.rest();
        if rest.starts_with(kw) && !rest[kw.len()..].starts_with(|c: char| c.is_alphanumeric() || c == '_') {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat("!") {
            return Ok(Expr::not(self.unary()?));
        }
        if self.eat("(") {
            let e = self.expr()?;
            self.expect(")")?;
            return Ok(e);
        }
        if self.keyword("true") {
            return Ok(Expr::True);
        }
        if self.keyword("false") {
            return Ok(Expr::False);
        }
        if self.keyword("atleast") {
            self.expect("(")?;
            let n = self.int()?;
            self.expect(",")?;
            let lit = self.literal()?;
            self.expect(")")?;
            return Ok(Expr::AtLeast(n as usize, lit));
        }
        if self.keyword("mod") {
            self.expect("(")?;
            let s = self.string()?;
            let mut cs = s.chars();
            let symbol = match (cs.next(), cs.next()) {
                (Some(c), None) => c,
                _ => return Err(self.error("mod() takes a single symbol")),
            };
            self.expect(",")?;
            let modulus = self.int()? as u32;
            self.expect(",")?;
            let residue = self.int()? as u32;
            self.expect(")")?;
            return Ok(Expr::ModCount {
                symbol,
                modulus,
                residue,
            });
        }
        if self.keyword("concat") {
            self.expect("(")?;
            let a = self.expr()?;
            self.expect(",")?;
            let b = self.expr()?;
            self.expect(")")?;
            return Ok(Expr::Concat(Box::new(a), Box::new(b)));
        }
        Ok(Expr::Lit(self.literal()?))
    }

    fn int(&mut self) -> Result<u64> {
        self.skip_ws();
        let digits: String = self.rest().chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            return Err(self.error("expected an integer"));
        }
        self.pos += digits.len();
        digits.parse().map_err(|_| self.error("integer out of range"))
    }

    fn string(&mut self) -> Result<String> {
        self.expect("\"")?;
        let rest = self.rest();
        let end = rest.find('"').ok_or_else(|| self.error("unterminated string"))?;
        let s = rest[..end].to_string();
        self.pos += end + 1;
        Ok(s)
    }

    fn literal(&mut self) -> Result<Literal> {
        let mut tier = None;
        if self.eat("[T:") {
            let rest = self.rest();
            let end = rest.find(']').ok_or_else(|| self.error("unterminated tier"))?;
            tier = Some(rest[..end].to_string());
            self.pos += end + 1;
        }
        let anchor_start = self.eat("^");
        self.skip_ws();
        if !self.rest().starts_with('"') {
            return Err(self.error("expected a literal"));
        }
        let first = self.string()?;
        let mut lit = Literal::substring(&first);
        loop {
            let rel = if self.eat("<.") {
                Relation::Succ
            } else if self.eat("<") {
                Relation::Prec
            } else {
                break;
            };
            let piece = self.string()?;
            if piece.is_empty() {
                return Err(self.error("empty literal piece"));
            }
            let next = Literal::substring(&piece);
            lit.joints.push(rel);
            lit.joints.extend(next.joints);
            lit.symbols.extend(next.symbols);
        }
        lit.anchor_start = anchor_start;
        lit.anchor_end = self.eat("$");
        if let Some(t) = tier {
            lit = lit.with_tier(&t);
        }
        if lit.symbols.is_empty() {
            return Err(self.error("empty literal"));
        }
        Ok(lit)
    }
}
