//! Recursive-descent parser for qhom scripts.
//!
//! ```text
//! script  := stmt*
//! stmt    := "ring" ID "=" base ["/" "ideal" "(" exprs ")"] ";"
//!          | "module" ID "=" "coker" ID matrix ";"
//!          | "module" ID "=" expr ";"
//!          | "complex" ID "=" expr ";"
//!          | "print" exprs ";"
//!          | "check" expr ";"
//! base    := "poly" "(" field "," "[" ids "]" ["," order] ["," "[" ints "]"] ")" | ID
//! field   := "QQ" | "GF" "(" INT ")"
//! matrix  := "[" row ("," row)* "]"      row := "[" exprs "]"
//! expr    := term (("+" | "-") term)*
//! term    := unary (("*" | "/") unary)*
//! unary   := "-" unary | power
//! power   := atom ["^" INT]
//! atom    := INT | ID | ID "(" [exprs] ")" | "[" [exprs] "]" | "(" expr ")"
//! ```

use super::ast::{Expr, FieldSpec, RingBase, Script, Statement, StmtKind};
use super::lexer::{tokenize, Tok, Token};
use crate::error::{Error, Result};

pub fn parse(text: &str) -> Result<Script> {
    let tokens = tokenize(text)?;
    let mut p = Parser { tokens, pos: 0 };
    let mut statements = Vec::new();
    while !p.at_eof() {
        statements.push(p.statement()?);
    }
    Ok(Script { statements })
}

/// Parses a single expression (used for polynomial text outside scripts).
pub fn parse_expr(text: &str) -> Result<Expr> {
    let tokens = tokenize(text)?;
    let mut p = Parser { tokens, pos: 0 };
    let e = p.expr()?;
    if !p.at_eof() {
        return Err(p.error("end of expression", &["end of input"]));
    }
    Ok(e)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn at_eof(&self) -> bool {
        self.peek().tok == Tok::Eof
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error(&self, what: &str, expected: &[&str]) -> Error {
        let t = self.peek();
        Error::Parse {
            line: t.line,
            column: t.column,
            message: format!("expected {what}, found {}", t.tok),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(&self.peek().tok, Tok::Sym(x) if *x == s)
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(x) if x == kw)
    }

    fn sym(&mut self, s: &'static str) -> Result<()> {
        if self.is_sym(s) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&format!("`{s}`"), &[s]))
        }
    }

    fn kw(&mut self, kw: &'static str) -> Result<()> {
        if self.is_kw(kw) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&format!("`{kw}`"), &[kw]))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                self.bump();
                Ok(s)
            }
            _ => Err(self.error("identifier", &["identifier"])),
        }
    }

    fn int(&mut self) -> Result<String> {
        match &self.peek().tok {
            Tok::Int(s) => {
                let s = s.clone();
                self.bump();
                Ok(s)
            }
            _ => Err(self.error("integer", &["integer"])),
        }
    }

    fn statement(&mut self) -> Result<Statement> {
        let line = self.peek().line;
        let kind = match &self.peek().tok {
            Tok::Ident(k) if k == "ring" => self.ring_stmt()?,
            Tok::Ident(k) if k == "module" => {
                self.bump();
                let name = self.ident()?;
                self.sym("=")?;
                if self.is_kw("coker") && matches!(self.tokens.get(self.pos + 1).map(|t| &t.tok), Some(Tok::Ident(_))) {
                    self.bump();
                    let ring = self.ident()?;
                    let rows = self.matrix()?;
                    StmtKind::Coker { name, ring, rows }
                } else {
                    StmtKind::Module { name, expr: self.expr()? }
                }
            }
            Tok::Ident(k) if k == "complex" => {
                self.bump();
                let name = self.ident()?;
                self.sym("=")?;
                StmtKind::Complex { name, expr: self.expr()? }
            }
            Tok::Ident(k) if k == "print" => {
                self.bump();
                StmtKind::Print(self.exprs_nonempty()?)
            }
            Tok::Ident(k) if k == "check" => {
                self.bump();
                StmtKind::Check(self.expr()?)
            }
            _ => {
                return Err(self.error(
                    "statement",
                    &["ring", "module", "complex", "print", "check"],
                ))
            }
        };
        self.sym(";")?;
        Ok(Statement { kind, line })
    }

    fn ring_stmt(&mut self) -> Result<StmtKind> {
        self.kw("ring")?;
        let name = self.ident()?;
        self.sym("=")?;
        let base = if self.is_kw("poly") {
            self.bump();
            self.sym("(")?;
            let field = if self.is_kw("QQ") {
                self.bump();
                FieldSpec::Rationals
            } else if self.is_kw("GF") {
                self.bump();
                self.sym("(")?;
                let p = self.int()?;
                self.sym(")")?;
                FieldSpec::Prime(p)
            } else {
                return Err(self.error("field", &["QQ", "GF"]));
            };
            self.sym(",")?;
            self.sym("[")?;
            let mut vars = vec![self.ident()?];
            while self.is_sym(",") {
                self.bump();
                vars.push(self.ident()?);
            }
            self.sym("]")?;
            let mut order = None;
            let mut weights = None;
            if self.is_sym(",") {
                self.bump();
                if self.is_sym("[") {
                    weights = Some(self.int_list()?);
                } else {
                    order = Some(self.ident()?);
                    if self.is_sym(",") {
                        self.bump();
                        weights = Some(self.int_list()?);
                    }
                }
            }
            self.sym(")")?;
            RingBase::Poly { field, vars, order, weights }
        } else {
            match &self.peek().tok {
                Tok::Ident(_) => RingBase::Named(self.ident()?),
                _ => return Err(self.error("ring", &["poly", "identifier"])),
            }
        };
        let mut ideal = Vec::new();
        if self.is_sym("/") {
            self.bump();
            self.kw("ideal")?;
            self.sym("(")?;
            ideal = self.exprs_nonempty()?;
            self.sym(")")?;
        }
        Ok(StmtKind::Ring { name, base, ideal })
    }

    fn int_list(&mut self) -> Result<Vec<String>> {
        self.sym("[")?;
        let mut out = vec![self.int()?];
        while self.is_sym(",") {
            self.bump();
            out.push(self.int()?);
        }
        self.sym("]")?;
        Ok(out)
    }

    fn matrix(&mut self) -> Result<Vec<Vec<Expr>>> {
        self.sym("[")?;
        let mut rows = Vec::new();
        loop {
            self.sym("[")?;
            rows.push(self.exprs_nonempty()?);
            self.sym("]")?;
            if self.is_sym(",") {
                self.bump();
            } else {
                break;
            }
        }
        self.sym("]")?;
        Ok(rows)
    }

    fn exprs_nonempty(&mut self) -> Result<Vec<Expr>> {
        let mut out = vec![self.expr()?];
        while self.is_sym(",") {
            self.bump();
            out.push(self.expr()?);
        }
        Ok(out)
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.is_sym("+") {
                self.bump();
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.is_sym("-") {
                self.bump();
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.is_sym("*") {
                self.bump();
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.is_sym("/") {
                self.bump();
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.is_sym("-") {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.is_sym("^") {
            self.bump();
            let n = self.int()?;
            let n: u32 = n
                .parse()
                .map_err(|_| Error::InvalidInput(format!("exponent `{n}` too large")))?;
            return Ok(Expr::Pow(Box::new(base), n));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().tok.clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Int(n))
            }
            Tok::Ident(name) => {
                self.bump();
                if self.is_sym("(") {
                    self.bump();
                    let args = if self.is_sym(")") { Vec::new() } else { self.exprs_nonempty()? };
                    self.sym(")")?;
                    Ok(Expr::Call(name, args))
                } else {
                    Ok(Expr::Ident(name))
                }
            }
            Tok::Sym("[") => {
                self.bump();
                let items = if self.is_sym("]") { Vec::new() } else { self.exprs_nonempty()? };
                self.sym("]")?;
                Ok(Expr::List(items))
            }
            Tok::Sym("(") => {
                self.bump();
                let e = self.expr()?;
                self.sym(")")?;
                Ok(e)
            }
            _ => Err(self.error("expression", &["integer", "identifier", "(", "[", "-"])),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_with_three_relations() {
        let s = parse("ring R = poly(QQ,[x,y,z]) / ideal(y^2, y*z, z^2);").unwrap();
        match &s.statements[0].kind {
            StmtKind::Ring { ideal, .. } => assert_eq!(ideal.len(), 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn empty_script() {
        assert!(parse("").unwrap().statements.is_empty());
        assert!(parse("  # only a comment\n").unwrap().statements.is_empty());
    }

    #[test]
    fn double_comma_is_reported_with_position() {
        let text = "ring R = poly(QQ,[x,y]);\nmodule M = coker R [[x,,y]];";
        match parse(text) {
            Err(Error::Parse { line, column, expected, .. }) => {
                assert_eq!((line, column), (2, 24));
                assert!(expected.contains(&"expression".to_string()) || expected.contains(&"identifier".to_string()));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn printer_round_trip() {
        let text = "ring R = poly(GF(101), [x, y], lex, [1, 2]) / ideal(x^2 - 3*y, (x + 1)^2*y - y);\n\
                    module M = coker R [[x, y], [-y, x^2]];\n\
                    complex K = koszul(R, [x, y]);\n\
                    print depth(M), betti(M, 3);\n\
                    check qid(M);\n";
        let a = parse(text).unwrap();
        let printed = a.to_string();
        let b = parse(&printed).unwrap();
        assert_eq!(printed, b.to_string());
        let strip = |s: &Script| s.statements.iter().map(|st| st.kind.clone()).collect::<Vec<_>>();
        assert_eq!(strip(&a), strip(&b));
    }
}
