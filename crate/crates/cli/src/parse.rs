//! Reader for the scheme-expression s-expression language.
//!
//! ```text
//! expr := (point q [m])
//!       | (curve q (c0 c1 ...))
//!       | (numberring :conductor f [:subgroup (h1 h2 ...)]) | (Q) | (Qi)
//!       | (disjoint expr ...)
//!       | (glue expr expr) | (minus expr expr)
//!       | (affine r expr)  | (proj r expr)
//!       | (cellular expr (r1 r2 ...))
//! ```

use std::str::FromStr;

use num_bigint::BigInt;
use zetaforge::lfunctions::AbelianFieldSpec;
use zetaforge::poly::Poly;
use zetaforge::scheme_algebra::SchemeExpr;

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq)]
enum Sexp {
    Atom { text: String, pos: usize },
    List { items: Vec<Sexp>, pos: usize },
}

impl Sexp {
    fn pos(&self) -> usize {
        match self {
            Sexp::Atom { pos, .. } | Sexp::List { pos, .. } => *pos,
        }
    }
}

fn syntax(pos: usize, msg: impl Into<String>) -> CliError {
    CliError::Syntax { pos, msg: msg.into() }
}

fn arity(pos: usize, msg: impl Into<String>) -> CliError {
    CliError::Arity { pos, msg: msg.into() }
}

struct Reader<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Reader<'a> {
    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn read(&mut self) -> Result<Sexp, CliError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            None => Err(syntax(start, "unexpected end of input")),
            Some(')') => Err(syntax(start, "unexpected ')'")),
            Some('(') => {
                self.pos += 1;
                let mut items = Vec::new();
                loop {
                    self.skip_ws();
                    match self.peek() {
                        None => return Err(syntax(start, "unclosed '('")),
                        Some(')') => {
                            self.pos += 1;
                            return Ok(Sexp::List { items, pos: start });
                        }
                        _ => items.push(self.read()?),
                    }
                }
            }
            Some(_) => {
                let rest = &self.src[self.pos..];
                let len = rest
                    .find(|c: char| c.is_whitespace() || c == '(' || c == ')')
                    .unwrap_or(rest.len());
                self.pos += len;
                Ok(Sexp::Atom {
                    text: rest[..len].to_string(),
                    pos: start,
                })
            }
        }
    }
}

fn read_sexp(src: &str) -> Result<Sexp, CliError> {
    let mut r = Reader { src, pos: 0 };
    let s = r.read()?;
    r.skip_ws();
    if r.pos < src.len() {
        return Err(syntax(r.pos, "trailing input after expression"));
    }
    Ok(s)
}

fn number<T: FromStr>(s: &Sexp, what: &str) -> Result<T, CliError> {
    match s {
        Sexp::Atom { text, pos } => text
            .parse()
            .map_err(|_| syntax(*pos, format!("expected {what}, found '{text}'"))),
        Sexp::List { pos, .. } => Err(syntax(*pos, format!("expected {what}, found a list"))),
    }
}

fn number_list<T: FromStr>(s: &Sexp, what: &str) -> Result<Vec<T>, CliError> {
    match s {
        Sexp::List { items, .. } => items.iter().map(|x| number(x, what)).collect(),
        Sexp::Atom { pos, text } => Err(syntax(*pos, format!("expected a list of {what}, found '{text}'"))),
    }
}

fn semantic<T>(pos: usize, r: zetaforge::Result<T>) -> Result<T, CliError> {
    r.map_err(|source| CliError::Invalid { pos, source })
}

fn expect_args(head: &str, pos: usize, args: &[Sexp], lo: usize, hi: usize) -> Result<(), CliError> {
    if args.len() < lo || args.len() > hi {
        let want = match (lo, hi) {
            (a, b) if a == b => format!("{a}"),
            (a, usize::MAX) => format!("at least {a}"),
            (a, b) => format!("{a} to {b}"),
        };
        return Err(arity(
            pos,
            format!("'{head}' takes {want} argument(s), got {}", args.len()),
        ));
    }
    Ok(())
}

fn number_ring(pos: usize, args: &[Sexp]) -> Result<SchemeExpr, CliError> {
    let mut conductor: Option<u64> = None;
    let mut subgroup: Vec<u64> = Vec::new();
    let mut it = args.iter();
    while let Some(key) = it.next() {
        let Sexp::Atom { text, pos: kpos } = key else {
            return Err(syntax(key.pos(), "expected a keyword"));
        };
        let value = it
            .next()
            .ok_or_else(|| arity(*kpos, format!("keyword '{text}' has no value")))?;
        match text.as_str() {
            ":conductor" => conductor = Some(number(value, "a conductor")?),
            ":subgroup" => subgroup = number_list(value, "residues")?,
            other => return Err(syntax(*kpos, format!("unknown keyword '{other}'"))),
        }
    }
    let f = conductor.ok_or_else(|| arity(pos, "'numberring' requires :conductor"))?;
    Ok(SchemeExpr::number_ring(semantic(pos, AbelianFieldSpec::new(f, subgroup))?))
}

fn build(s: &Sexp) -> Result<SchemeExpr, CliError> {
    let (items, pos) = match s {
        Sexp::List { items, pos } => (items, *pos),
        Sexp::Atom { text, pos } => {
            return Err(syntax(*pos, format!("expected '(', found '{text}'")))
        }
    };
    let (head, args) = match items.split_first() {
        Some((Sexp::Atom { text, .. }, args)) => (text.as_str(), args),
        Some((other, _)) => return Err(syntax(other.pos(), "expected an operator name")),
        None => return Err(syntax(pos, "empty expression")),
    };
    match head {
        "point" => {
            expect_args(head, pos, args, 1, 2)?;
            let q: BigInt = number(&args[0], "an integer")?;
            let m = args.get(1).map(|a| number(a, "a degree")).transpose()?.unwrap_or(1);
            semantic(pos, SchemeExpr::point(q, m))
        }
        "curve" => {
            expect_args(head, pos, args, 2, 2)?;
            let q: BigInt = number(&args[0], "an integer")?;
            let coeffs: Vec<BigInt> = number_list(&args[1], "integer coefficients")?;
            semantic(pos, SchemeExpr::curve_poly(q, Poly::new(coeffs)))
        }
        "numberring" => number_ring(pos, args),
        "Q" => {
            expect_args(head, pos, args, 0, 0)?;
            Ok(SchemeExpr::number_ring(AbelianFieldSpec::rationals()))
        }
        "Qi" => {
            expect_args(head, pos, args, 0, 0)?;
            Ok(SchemeExpr::number_ring(AbelianFieldSpec::gaussian()))
        }
        "disjoint" => Ok(SchemeExpr::disjoint(
            args.iter().map(build).collect::<Result<_, _>>()?,
        )),
        "glue" | "minus" => {
            expect_args(head, pos, args, 2, 2)?;
            let (a, b) = (build(&args[0])?, build(&args[1])?);
            Ok(if head == "glue" {
                SchemeExpr::glue(a, b)
            } else {
                SchemeExpr::minus(a, b)
            })
        }
        "affine" | "proj" => {
            expect_args(head, pos, args, 2, 2)?;
            let r: u32 = number(&args[0], "a rank")?;
            let x = build(&args[1])?;
            Ok(if head == "affine" {
                SchemeExpr::affine(r, x)
            } else {
                SchemeExpr::proj(r, x)
            })
        }
        "cellular" => {
            expect_args(head, pos, args, 2, 2)?;
            let b = build(&args[0])?;
            let ranks = number_list(&args[1], "ranks")?;
            Ok(SchemeExpr::cellular(b, ranks))
        }
        other => Err(syntax(items[0].pos(), format!("unknown operator '{other}'"))),
    }
}

/// Parses one expression; positions in errors are byte offsets into `src`.
pub fn parse_expr(src: &str) -> Result<SchemeExpr, CliError> {
    build(&read_sexp(src)?)
}
