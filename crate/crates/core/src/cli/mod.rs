//! The `qhom` script language: lexer, parser, canonical printer and interpreter.

pub mod ast;
pub mod lexer;
pub mod parser;
pub mod runner;

use crate::error::Result;

enum Piece {
    Blank,
    Comment(String),
    Stmt(String),
}

fn comment_start(line: &str) -> Option<usize> {
    match (line.find('#'), line.find("//")) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    }
}

/// Canonical layout of a script. Full-line comments and paragraph breaks are kept; a comment
/// trailing code stays on the line of the statement it follows.
pub fn format_source(text: &str) -> Result<String> {
    let script = parser::parse(text)?;
    // (line, rank, piece): statements sort before trailing comments on the same line.
    let mut pieces: Vec<(usize, u8, Piece)> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let t = raw.trim();
        if t.is_empty() {
            pieces.push((line, 0, Piece::Blank));
        } else if let Some(c) = comment_start(t) {
            let rank = if c == 0 { 0 } else { 2 };
            pieces.push((line, rank, Piece::Comment(t[c..].trim_end().to_string())));
        }
    }
    for s in &script.statements {
        pieces.push((s.line, 1, Piece::Stmt(s.to_string())));
    }
    pieces.sort_by_key(|p| (p.0, p.1));
    let mut out: Vec<String> = Vec::new();
    let mut last_stmt_line = 0;
    for (line, rank, piece) in pieces {
        match piece {
            Piece::Blank => {
                if out.last().is_some_and(|l| !l.is_empty()) {
                    out.push(String::new());
                }
            }
            Piece::Comment(c) if rank == 2 && last_stmt_line == line => {
                let l = out.last_mut().expect("statement precedes its trailing comment");
                l.push_str("  ");
                l.push_str(&c);
            }
            Piece::Comment(c) => out.push(c),
            Piece::Stmt(s) => {
                last_stmt_line = line;
                out.push(s);
            }
        }
    }
    while out.last().is_some_and(|l| l.is_empty()) {
        out.pop();
    }
    let mut s = out.join("\n");
    s.push('\n');
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting_keeps_comments_and_is_idempotent() {
        let text = "# rings\nring R=poly(QQ,[x,y]) /ideal(x^2);   # dual numbers in x\n\n\n\nmodule K = residue( R );\nprint depth(K),\n  dim(K);\n";
        let once = format_source(text).unwrap();
        assert_eq!(
            once,
            "# rings\nring R = poly(QQ, [x, y]) / ideal(x^2);  # dual numbers in x\n\nmodule K = residue(R);\nprint depth(K), dim(K);\n"
        );
        assert_eq!(format_source(&once).unwrap(), once);
    }

    #[test]
    fn shipped_corpus_round_trips() {
        let text = crate::invariants::corpus::STANDARD;
        let a = parser::parse(text).unwrap();
        let b = parser::parse(&a.to_string()).unwrap();
        assert_eq!(a.to_string(), b.to_string());
        let f = format_source(text).unwrap();
        assert_eq!(format_source(&f).unwrap(), f);
    }
}
