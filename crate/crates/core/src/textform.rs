//! Text grammars for elements and polynomials.
//!
//! One tokenizer and term parser serve all forms:
//!
//! * element:  signed sums of `coeff '*' label('^'int)?` products, e.g.
//!   `1+2*e1+5*e1^2`, `1/2-3*e1^2`;
//! * polynomial: `[+|-] coeff['*' var['^'int]]*`, e.g. `x^2-2*y+1`;
//! * A-polynomial: coefficients written in the element grammar inside
//!   parentheses, e.g. `(1+2*e1)*x1^2+(-1+e1)`.
//!
//! Parsing is lenient where harmless (a bare `x` means `1*x`); printing
//! (the `Display`/`format_with` impls on the types) is canonical, and
//! every printed form parses back to an equal value.

use crate::error::Error;
use crate::poly::{APoly, Monomial, Poly, RatRing, WeilRing};
use crate::rat::{parse_rat, Rat};
use crate::weil::{AlgebraRef, Atom, WeilElement};

use num_traits::One;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Num(String),
    Ident(String),
}

fn lex(s: &str) -> Result<Vec<Tok>, Error> {
    let mut toks = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                chars.next();
            }
            '+' => {
                chars.next();
                toks.push(Tok::Plus);
            }
            '-' => {
                chars.next();
                toks.push(Tok::Minus);
            }
            '*' => {
                chars.next();
                toks.push(Tok::Star);
            }
            '^' => {
                chars.next();
                toks.push(Tok::Caret);
            }
            '(' => {
                chars.next();
                toks.push(Tok::LParen);
            }
            ')' => {
                chars.next();
                toks.push(Tok::RParen);
            }
            '0'..='9' => {
                let mut num = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        num.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                if chars.peek() == Some(&'/') {
                    num.push('/');
                    chars.next();
                    let mut saw_digit = false;
                    while let Some(&d) = chars.peek() {
                        if d.is_ascii_digit() {
                            num.push(d);
                            chars.next();
                            saw_digit = true;
                        } else {
                            break;
                        }
                    }
                    if !saw_digit {
                        return Err(Error::Parse(format!(
                            "expected denominator digits after `{num}`"
                        )));
                    }
                }
                toks.push(Tok::Num(num));
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut id = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_alphanumeric() || d == '_' {
                        id.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push(Tok::Ident(id));
            }
            other => {
                return Err(Error::Parse(format!("unexpected character `{other}`")));
            }
        }
    }
    Ok(toks)
}

#[derive(Debug, Clone)]
enum AstAtom {
    Num(Rat),
    Ident(String),
    Paren(Ast),
}

#[derive(Debug, Clone)]
struct AstFactor {
    atom: AstAtom,
    exp: u32,
}

/// A signed sum of products of factors.
#[derive(Debug, Clone)]
struct Ast {
    terms: Vec<(bool, Vec<AstFactor>)>, // (negated, factors)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Ast, Error> {
        let mut terms = Vec::new();
        let mut neg = match self.peek() {
            Some(Tok::Plus) => {
                self.next();
                false
            }
            Some(Tok::Minus) => {
                self.next();
                true
            }
            _ => false,
        };
        loop {
            terms.push((neg, self.term()?));
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    neg = false;
                }
                Some(Tok::Minus) => {
                    self.next();
                    neg = true;
                }
                _ => break,
            }
        }
        Ok(Ast { terms })
    }

    fn term(&mut self) -> Result<Vec<AstFactor>, Error> {
        let mut factors = vec![self.factor()?];
        while self.peek() == Some(&Tok::Star) {
            self.next();
            factors.push(self.factor()?);
        }
        Ok(factors)
    }

    fn factor(&mut self) -> Result<AstFactor, Error> {
        let atom = match self.next() {
            Some(Tok::Num(n)) => AstAtom::Num(parse_rat(&n)?),
            Some(Tok::Ident(id)) => AstAtom::Ident(id),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => AstAtom::Paren(inner),
                    _ => return Err(Error::Parse("unclosed parenthesis".into())),
                }
            }
            other => {
                return Err(Error::Parse(format!(
                    "expected a coefficient, label or parenthesis, found {other:?}"
                )))
            }
        };
        let exp = if self.peek() == Some(&Tok::Caret) {
            self.next();
            match self.next() {
                Some(Tok::Num(n)) if !n.contains('/') => n
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("invalid exponent `{n}`")))?,
                other => {
                    return Err(Error::Parse(format!(
                        "expected an integer exponent, found {other:?}"
                    )))
                }
            }
        } else {
            1
        };
        Ok(AstFactor { atom, exp })
    }
}

fn parse_ast(s: &str) -> Result<Ast, Error> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty input".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let ast = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!(
            "trailing input starting at token {:?}",
            p.toks[p.pos]
        )));
    }
    Ok(ast)
}

fn eval_element_ast(algebra: &AlgebraRef, ast: &Ast) -> Result<WeilElement, Error> {
    let mut acc = WeilElement::zero(algebra);
    for (neg, factors) in &ast.terms {
        let mut term = WeilElement::one(algebra);
        for f in factors {
            let base = match &f.atom {
                AstAtom::Num(r) => WeilElement::scalar(algebra, r.clone()),
                AstAtom::Ident(id) => match algebra.resolve_atom(id) {
                    Atom::Basis(i) => WeilElement::basis(algebra, i),
                    Atom::Killed => WeilElement::zero(algebra),
                    Atom::Unknown => {
                        return Err(Error::Parse(format!(
                            "unknown label `{id}` in algebra {}",
                            algebra.name()
                        )))
                    }
                },
                AstAtom::Paren(inner) => eval_element_ast(algebra, inner)?,
            };
            term = term.try_mul(&base.pow(f.exp))?;
        }
        if *neg {
            term = term.neg();
        }
        acc = acc.try_add(&term)?;
    }
    Ok(acc)
}

fn eval_poly_ast(vars: &[String], ast: &Ast) -> Result<Poly, Error> {
    let n = vars.len();
    let mut acc = Poly::zero(RatRing, n);
    for (neg, factors) in &ast.terms {
        let mut term = Poly::one(RatRing, n);
        for f in factors {
            let base = match &f.atom {
                AstAtom::Num(r) => Poly::constant(RatRing, n, r.clone()),
                AstAtom::Ident(id) => match vars.iter().position(|v| v == id) {
                    Some(i) => Poly::var(RatRing, n, i),
                    None => {
                        return Err(Error::Parse(format!(
                            "unknown variable `{id}` (expected one of {})",
                            vars.join(", ")
                        )))
                    }
                },
                AstAtom::Paren(inner) => eval_poly_ast(vars, inner)?,
            };
            term = term.try_mul(&base.pow(f.exp))?;
        }
        if *neg {
            term = term.neg();
        }
        acc = acc.try_add(&term)?;
    }
    Ok(acc)
}

fn eval_apoly_ast(algebra: &AlgebraRef, vars: &[String], ast: &Ast) -> Result<APoly, Error> {
    let n = vars.len();
    let ring = WeilRing(algebra.clone());
    let mut acc = APoly::zero(ring.clone(), n);
    for (neg, factors) in &ast.terms {
        let mut term = APoly::one(ring.clone(), n);
        for f in factors {
            let base = match &f.atom {
                AstAtom::Num(r) => APoly::constant(
                    ring.clone(),
                    n,
                    WeilElement::scalar(algebra, r.clone()),
                ),
                AstAtom::Ident(id) => match vars.iter().position(|v| v == id) {
                    Some(i) => APoly::var(ring.clone(), n, i),
                    None => {
                        return Err(Error::Parse(format!(
                            "unknown variable `{id}` (expected one of {}); algebra \
                             coefficients must be parenthesized",
                            vars.join(", ")
                        )))
                    }
                },
                AstAtom::Paren(inner) => APoly::constant(
                    ring.clone(),
                    n,
                    eval_element_ast(algebra, inner)?,
                ),
            };
            term = term.try_mul(&base.pow(f.exp))?;
        }
        if *neg {
            term = term.neg();
        }
        acc = acc.try_add(&term)?;
    }
    Ok(acc)
}

/// Parses an algebra element, e.g. `1+2*e1+5*e1^2`.
pub fn parse_element(algebra: &AlgebraRef, s: &str) -> Result<WeilElement, Error> {
    eval_element_ast(algebra, &parse_ast(s)?)
}

/// Parses a rational polynomial in the named variables, e.g. `x^2-2*y+1`.
pub fn parse_poly(vars: &[String], s: &str) -> Result<Poly, Error> {
    eval_poly_ast(vars, &parse_ast(s)?)
}

/// Parses an A-valued polynomial; algebra coefficients appear inside
/// parentheses in the element grammar, e.g. `(1+2*e1)*x1^2`.
pub fn parse_apoly(algebra: &AlgebraRef, vars: &[String], s: &str) -> Result<APoly, Error> {
    eval_apoly_ast(algebra, vars, &parse_ast(s)?)
}

/// Parses a single monomial (a polynomial with exactly one term and
/// unit coefficient), e.g. `x^2*y` or `1`.
pub fn parse_monomial(vars: &[String], s: &str) -> Result<Monomial, Error> {
    let p = parse_poly(vars, s)?;
    let mut terms = p.terms();
    match (terms.next(), terms.next()) {
        (Some((m, c)), None) if c.is_one() => Ok(m.clone()),
        _ => Err(Error::Parse(format!("`{s}` is not a monomial"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rint};
    use crate::weil::WeilAlgebra;
    use proptest::prelude::*;

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parse_element_examples() {
        let jet12 = WeilAlgebra::jet(1, 2);
        let e = parse_element(&jet12, "1+2*e1+5*e1^2").unwrap();
        assert_eq!(e.coeffs(), &[rint(1), rint(2), rint(5)]);
        assert_eq!(parse_element(&jet12, &e.to_string()).unwrap(), e);

        let f = parse_element(&jet12, "1/2-3*e1^2").unwrap();
        assert_eq!(f.coeffs(), &[rat(1, 2), rint(0), rint(-3)]);

        // composite products resolve through the algebra
        let jet22 = WeilAlgebra::jet(2, 2);
        let g = parse_element(&jet22, "2*e1*e2").unwrap();
        assert_eq!(g, WeilElement::basis(&jet22, 4).scalar_mul(&rint(2)));
        // bare coefficient and bare label
        assert_eq!(
            parse_element(&jet22, "3").unwrap(),
            WeilElement::scalar(&jet22, rint(3))
        );
        assert_eq!(
            parse_element(&jet22, "e2").unwrap(),
            WeilElement::basis(&jet22, 2)
        );
        // nilpotency folds high powers to zero
        assert!(parse_element(&jet12, "e1^3").unwrap().is_zero());
    }

    #[test]
    fn killed_generators_parse_to_zero() {
        let m = |e: &[u32]| Monomial::from_exps(e.to_vec());
        let alg =
            WeilAlgebra::monomial_quotient(&["x", "y"], &[m(&[1, 0]), m(&[0, 2])], None).unwrap();
        assert_eq!(alg.dim(), 2); // {1, y}
        let e = parse_element(&alg, "2*x+y").unwrap();
        assert_eq!(e, WeilElement::basis(&alg, 1));
    }

    #[test]
    fn parse_element_rejections() {
        let dual = WeilAlgebra::jet(1, 1);
        assert!(parse_element(&dual, "").is_err());
        assert!(parse_element(&dual, "1+*e1").is_err());
        assert!(parse_element(&dual, "q7").is_err());
        assert!(parse_element(&dual, "e1^").is_err());
        assert!(parse_element(&dual, "e1^1/2").is_err());
        assert!(parse_element(&dual, "(1+e1").is_err());
        assert!(parse_element(&dual, "1 1").is_err());
    }

    #[test]
    fn parse_poly_examples() {
        let vs = names(&["x", "y"]);
        let p = parse_poly(&vs, "x^2-2*y+1").unwrap();
        assert_eq!(p.format_with(&vs), "x^2-2*y+1");
        let q = parse_poly(&vs, "-x*y + 3/2").unwrap();
        assert_eq!(q.format_with(&vs), "-x*y+3/2");
        // lenient coefficient-one and explicit forms agree
        assert_eq!(parse_poly(&vs, "1*x^1").unwrap(), parse_poly(&vs, "x").unwrap());
        // parenthesized subexpressions multiply out
        let r = parse_poly(&vs, "(x+y)^2").unwrap();
        assert_eq!(r, parse_poly(&vs, "x^2+2*x*y+y^2").unwrap());
        assert!(parse_poly(&vs, "z").is_err());
    }

    #[test]
    fn parse_apoly_examples() {
        let dual = WeilAlgebra::jet(1, 1);
        let vs = names(&["x1", "x2"]);
        let p = parse_apoly(&dual, &vs, "(1+2*e1)*x1^2").unwrap();
        assert_eq!(p.format_with(&vs), "(1+2*e1)*x1^2");
        assert_eq!(parse_apoly(&dual, &vs, &p.format_with(&vs)).unwrap(), p);
        // opaque constants and negative coefficients inside parens
        let q = parse_apoly(&dual, &vs, "(1+2*e1)*x1^2+(-1+e1)").unwrap();
        assert_eq!(q.format_with(&vs), "(1+2*e1)*x1^2+(-1+e1)");
        // a plain rational coefficient is an A-scalar
        let r = parse_apoly(&dual, &vs, "2*x2").unwrap();
        assert_eq!(
            r,
            APoly::var(WeilRing(dual.clone()), 2, 1).scale(&rint(2))
        );
        // variable names shadow nothing: labels outside parens are errors
        assert!(parse_apoly(&dual, &vs, "e1*x1").is_err());
    }

    #[test]
    fn parse_monomial_examples() {
        let vs = names(&["x", "y"]);
        assert_eq!(
            parse_monomial(&vs, "x^2*y").unwrap(),
            Monomial::from_exps(vec![2, 1])
        );
        assert_eq!(parse_monomial(&vs, "1").unwrap(), Monomial::unit(2));
        assert!(parse_monomial(&vs, "x+y").is_err());
        assert!(parse_monomial(&vs, "2*x").is_err());
    }

    proptest! {
        #[test]
        fn poly_display_round_trips(raw in proptest::collection::vec(
            (proptest::collection::vec(0u32..4, 2), -9i64..=9, 1i64..=5),
            0..8,
        )) {
            let vs = names(&["x", "y"]);
            let mut p = Poly::zero(RatRing, 2);
            for (exps, num, den) in raw {
                p.add_term(Monomial::from_exps(exps), rat(num, den));
            }
            let text = p.format_with(&vs);
            let back = parse_poly(&vs, &text).unwrap();
            prop_assert_eq!(back, p);
        }

        #[test]
        fn element_display_round_trips(coeffs in proptest::collection::vec(-9i64..=9, 6)) {
            let alg = WeilAlgebra::jet(2, 2);
            let e = WeilElement::from_coeffs(&alg, coeffs.iter().map(|&c| rint(c)).collect()).unwrap();
            let back = parse_element(&alg, &e.to_string()).unwrap();
            prop_assert_eq!(back, e);
        }

        #[test]
        fn apoly_display_round_trips(raw in proptest::collection::vec(
            (proptest::collection::vec(0u32..3, 2), proptest::collection::vec(-4i64..=4, 6)),
            0..6,
        )) {
            let alg = WeilAlgebra::jet(2, 2);
            let vs = names(&["x1", "x2"]);
            let ring = WeilRing(alg.clone());
            let mut p = APoly::zero(ring, 2);
            for (exps, coeffs) in raw {
                let c = WeilElement::from_coeffs(&alg, coeffs.iter().map(|&v| rint(v)).collect()).unwrap();
                p.add_term(Monomial::from_exps(exps), c);
            }
            let text = p.format_with(&vs);
            let back = parse_apoly(&alg, &vs, &text).unwrap();
            prop_assert_eq!(back, p);
        }
    }
}
