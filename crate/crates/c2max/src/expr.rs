//! The space-expression language of the command line:
//!
//! ```text
//! sphere(p,q) | antipodal(n) | point | circle | s2
//!   | wedge(e,e) | prod(e,e) | lind(e) | nind(e) | sd(e)
//!   | sp(n,e) | load("file.json")
//! ```
//!
//! Evaluation produces either a complex or a simplicial set; set-level
//! combinators convert complex operands on the fly, while `sd` insists on a
//! complex operand.

use crate::complex::C2Complex;
use crate::errors::{Error, Result};
use crate::sset::build::{
    additive_induction, multiplicative_induction, product, to_simplicial_set, wedge,
};
use crate::sset::sp::symmetric_product;
use crate::sset::C2SimplicialSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpaceExpr {
    Sphere(usize, usize),
    Antipodal(usize),
    Point,
    Circle,
    S2,
    Wedge(Box<SpaceExpr>, Box<SpaceExpr>),
    Prod(Box<SpaceExpr>, Box<SpaceExpr>),
    Lind(Box<SpaceExpr>),
    Nind(Box<SpaceExpr>),
    Sd(Box<SpaceExpr>),
    Sp(usize, Box<SpaceExpr>),
    Load(String),
}

pub fn parse(input: &str) -> Result<SpaceExpr> {
    let mut p = Parser {
        src: input.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    let expr = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(expr)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.pos < self.src.len() && self.src[self.pos] == c {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a name"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("number out of range"))
    }

    fn string(&mut self) -> Result<String> {
        self.eat(b'"')?;
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos] != b'"' {
            self.pos += 1;
        }
        if self.pos == self.src.len() {
            return Err(self.err("unterminated string"));
        }
        let s = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
        self.pos += 1;
        Ok(s)
    }

    fn expr(&mut self) -> Result<SpaceExpr> {
        let name = self.ident()?;
        match name.as_str() {
            "point" => Ok(SpaceExpr::Point),
            "circle" => Ok(SpaceExpr::Circle),
            "s2" => Ok(SpaceExpr::S2),
            "sphere" => {
                self.eat(b'(')?;
                let p = self.number()?;
                self.eat(b',')?;
                let q = self.number()?;
                self.eat(b')')?;
                Ok(SpaceExpr::Sphere(p, q))
            }
            "antipodal" => {
                self.eat(b'(')?;
                let n = self.number()?;
                self.eat(b')')?;
                Ok(SpaceExpr::Antipodal(n))
            }
            "wedge" | "prod" => {
                self.eat(b'(')?;
                let a = self.expr()?;
                self.eat(b',')?;
                let b = self.expr()?;
                self.eat(b')')?;
                Ok(if name == "wedge" {
                    SpaceExpr::Wedge(Box::new(a), Box::new(b))
                } else {
                    SpaceExpr::Prod(Box::new(a), Box::new(b))
                })
            }
            "lind" | "nind" | "sd" => {
                self.eat(b'(')?;
                let a = self.expr()?;
                self.eat(b')')?;
                Ok(match name.as_str() {
                    "lind" => SpaceExpr::Lind(Box::new(a)),
                    "nind" => SpaceExpr::Nind(Box::new(a)),
                    _ => SpaceExpr::Sd(Box::new(a)),
                })
            }
            "sp" => {
                self.eat(b'(')?;
                let n = self.number()?;
                self.eat(b',')?;
                let a = self.expr()?;
                self.eat(b')')?;
                Ok(SpaceExpr::Sp(n, Box::new(a)))
            }
            "load" => {
                self.eat(b'(')?;
                let path = self.string()?;
                self.eat(b')')?;
                Ok(SpaceExpr::Load(path))
            }
            other => Err(self.err(&format!("unknown constructor {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct EvalOptions {
    /// Truncation acknowledgment for symmetric products.
    pub truncate: Option<usize>,
}

pub enum Space {
    Complex(C2Complex),
    Set(C2SimplicialSet),
}

impl Space {
    pub fn into_set(self) -> Result<C2SimplicialSet> {
        match self {
            Space::Complex(k) => to_simplicial_set(&k),
            Space::Set(s) => Ok(s),
        }
    }
}

pub fn eval(expr: &SpaceExpr, opts: &EvalOptions) -> Result<Space> {
    Ok(match expr {
        SpaceExpr::Sphere(p, q) => Space::Complex(C2Complex::rep_sphere(*p, *q)?),
        SpaceExpr::Antipodal(n) => Space::Complex(C2Complex::antipodal_sphere(*n)),
        SpaceExpr::Point => Space::Complex(C2Complex::point()),
        SpaceExpr::Circle => Space::Complex(C2Complex::circle()),
        SpaceExpr::S2 => Space::Complex(C2Complex::s2()),
        SpaceExpr::Wedge(a, b) => {
            let a = eval(a, opts)?.into_set()?;
            let b = eval(b, opts)?.into_set()?;
            Space::Set(wedge(&a, &b)?)
        }
        SpaceExpr::Prod(a, b) => {
            let a = eval(a, opts)?.into_set()?;
            let b = eval(b, opts)?.into_set()?;
            Space::Set(product(&a, &b)?)
        }
        SpaceExpr::Lind(a) => {
            let a = eval(a, opts)?.into_set()?;
            Space::Set(additive_induction(&a)?)
        }
        SpaceExpr::Nind(a) => {
            let a = eval(a, opts)?.into_set()?;
            Space::Set(multiplicative_induction(&a)?)
        }
        SpaceExpr::Sd(a) => match eval(a, opts)? {
            Space::Complex(k) => Space::Complex(k.barycentric_subdivision()),
            Space::Set(_) => {
                return Err(Error::Contract(
                    "sd needs a complex-level operand (spheres, loads, sd)".into(),
                ))
            }
        },
        SpaceExpr::Sp(n, a) => {
            let a = eval(a, opts)?.into_set()?;
            Space::Set(symmetric_product(&a, *n, opts.truncate)?)
        }
        SpaceExpr::Load(path) => {
            let text = std::fs::read_to_string(path)?;
            load_space(&text)?
        }
    })
}

/// Loads either schema: complexes carry a "vertices" field, simplicial sets
/// a "degrees" field.
pub fn load_space(text: &str) -> Result<Space> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.get("vertices").is_some() {
        let k = C2Complex::from_json(text)?;
        let report = k.validate();
        if !report.face_closure_ok || !report.involution_simplicial || !report.basepoint_fixed {
            return Err(Error::Invalid(format!(
                "loaded complex failed validation: {report:?}"
            )));
        }
        Ok(Space::Complex(k))
    } else if value.get("degrees").is_some() {
        Ok(Space::Set(C2SimplicialSet::from_json(text)?))
    } else {
        Err(Error::Invalid(
            "unrecognized JSON schema: expected a complex (vertices) or a simplicial set (degrees)"
                .into(),
        ))
    }
}
