//! The small object language accepted wherever a command wants an object.
//!
//! ```text
//! expr := box N | boxN | point | empty | boundary [box] N | cap N EPS I
//!       | tensor EXPR EXPR | torus
//!       | simplex N | horn N K | boundary simplex N
//!       | [N] | square | poset N | discrete-objects N
//!       | discrete CAT | W N | dg CAT
//!       | ( EXPR ) | NAME | PATH
//! ```
//!
//! `NAME` is a workspace binding; anything containing `/` or ending in
//! `.json` is read as a file.

use std::collections::HashMap;
use std::path::Path;

use cubical_core::chain::Ring;
use cubical_core::cubical::{self, DayTensor};
use cubical_core::enriched::{discrete_enrich, w_category, DgCategory};
use cubical_core::format::{Payload, Workspace};
use cubical_core::simplicial::{self, FinCategory};
use cubical_core::{Error, Flavor, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Box(usize),
    Point,
    Empty,
    Boundary(usize),
    Cap(usize, bool, usize),
    Tensor(Box<Expr>, Box<Expr>),
    Torus,
    Simplex(usize),
    SimplexBoundary(usize),
    Horn(usize, usize),
    Ordinal(usize),
    Square,
    Poset(usize),
    DiscreteObjects(usize),
    Discrete(Box<Expr>),
    W(usize),
    Dg(Box<Expr>),
    Name(String),
}

fn tokenize(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for ch in text.chars() {
        match ch {
            '(' | ')' | '[' | ']' => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
                out.push(ch.to_string());
            }
            c if c.is_whitespace() => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

struct Parser {
    toks: Vec<String>,
    pos: usize,
}

impl Parser {
    fn next(&mut self) -> Result<String> {
        let t = self
            .toks
            .get(self.pos)
            .cloned()
            .ok_or_else(|| Error::Parse("unexpected end of expression".into()))?;
        self.pos += 1;
        Ok(t)
    }

    fn peek(&self) -> Option<&str> {
        self.toks.get(self.pos).map(String::as_str)
    }

    fn number(&mut self) -> Result<usize> {
        let t = self.next()?;
        t.parse()
            .map_err(|_| Error::Parse(format!("expected a number, found {t:?}")))
    }

    fn bit(&mut self) -> Result<bool> {
        match self.next()?.as_str() {
            "0" => Ok(false),
            "1" => Ok(true),
            t => Err(Error::Parse(format!("expected 0 or 1, found {t:?}"))),
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        let t = self.next()?;
        if t == s {
            Ok(())
        } else {
            Err(Error::Parse(format!("expected {s:?}, found {t:?}")))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let t = self.next()?;
        if let Some(n) = t.strip_prefix("box").filter(|r| !r.is_empty()) {
            return n
                .parse()
                .map(Expr::Box)
                .map_err(|_| Error::Parse(format!("bad cube {t:?}")));
        }
        Ok(match t.as_str() {
            "(" => {
                let e = self.expr()?;
                self.expect(")")?;
                e
            }
            "[" => {
                let n = self.number()?;
                self.expect("]")?;
                Expr::Ordinal(n)
            }
            "box" => Expr::Box(self.number()?),
            "point" => Expr::Point,
            "empty" => Expr::Empty,
            "boundary" => match self.peek() {
                Some("box") => {
                    self.pos += 1;
                    Expr::Boundary(self.number()?)
                }
                Some("simplex") => {
                    self.pos += 1;
                    Expr::SimplexBoundary(self.number()?)
                }
                _ => Expr::Boundary(self.number()?),
            },
            "cap" => {
                let n = self.number()?;
                let eps = self.bit()?;
                Expr::Cap(n, eps, self.number()?)
            }
            "tensor" => {
                let a = self.expr()?;
                Expr::Tensor(Box::new(a), Box::new(self.expr()?))
            }
            "torus" => Expr::Torus,
            "simplex" => Expr::Simplex(self.number()?),
            "horn" => {
                let n = self.number()?;
                Expr::Horn(n, self.number()?)
            }
            "square" => Expr::Square,
            "poset" => Expr::Poset(self.number()?),
            "discrete-objects" => Expr::DiscreteObjects(self.number()?),
            "discrete" => Expr::Discrete(Box::new(self.expr()?)),
            "W" => Expr::W(self.number()?),
            "dg" => Expr::Dg(Box::new(self.expr()?)),
            ")" | "]" => return Err(Error::Parse(format!("unexpected {t:?}"))),
            _ => Expr::Name(t),
        })
    }
}

pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser {
        toks: tokenize(text),
        pos: 0,
    };
    let e = p.expr()?;
    if let Some(t) = p.peek() {
        return Err(Error::Parse(format!("trailing input at {t:?}")));
    }
    Ok(e)
}

/// Settings shared by every evaluation.
pub struct Env {
    pub flavor: Flavor,
    pub trunc: Option<usize>,
    pub prime: u32,
    pub max_dim: usize,
    pub workspace: Option<Workspace>,
    loaded: HashMap<String, Payload>,
}

impl Env {
    pub fn new(
        flavor: Flavor,
        trunc: Option<usize>,
        prime: u32,
        max_dim: usize,
        workspace: Option<Workspace>,
    ) -> Self {
        Env {
            flavor,
            trunc,
            prime,
            max_dim,
            workspace,
            loaded: HashMap::new(),
        }
    }

    pub fn ring(&self) -> Result<Ring> {
        Ring::prime(self.prime)
    }

    fn lookup(&mut self, name: &str) -> Result<Payload> {
        if let Some(p) = self.loaded.get(name) {
            return Ok(p.clone());
        }
        let p = if let Some(p) = self.workspace.as_ref().and_then(|w| w.get(name)) {
            p.clone()
        } else if name.contains('/') || name.ends_with(".json") || Path::new(name).is_file() {
            let path = Path::new(name);
            if !path.is_file() {
                return Err(Error::Validation(format!("no such file {name}")));
            }
            Payload::load(path)?
        } else {
            return Err(Error::Parse(format!("unknown object {name:?}")));
        };
        self.loaded.insert(name.to_string(), p.clone());
        Ok(p)
    }

    /// The truncation an expression needs when `-N` is absent.
    pub fn natural(&mut self, e: &Expr) -> Result<usize> {
        Ok(match e {
            Expr::Box(n)
            | Expr::Boundary(n)
            | Expr::Cap(n, _, _)
            | Expr::Simplex(n)
            | Expr::Horn(n, _) => *n,
            Expr::SimplexBoundary(n) => *n,
            Expr::Point | Expr::Empty => 0,
            Expr::Tensor(a, b) => {
                let need = self.skeleton(a)? + self.skeleton(b)?;
                self.natural(a)?.max(self.natural(b)?).max(need)
            }
            Expr::Torus => 2,
            Expr::Ordinal(_) | Expr::Square | Expr::Poset(_) | Expr::DiscreteObjects(_) => 0,
            Expr::Discrete(c) | Expr::Dg(c) => self.natural(c)?,
            Expr::W(n) => n.saturating_sub(1),
            Expr::Name(s) => match self.lookup(s)? {
                Payload::Cubical(x) => x.trunc(),
                Payload::Simplicial(x) => x.trunc(),
                Payload::Category(c) => c.trunc(),
                _ => 0,
            },
        })
    }

    /// Dimension of the top nondegenerate cells, which is what a tensor
    /// factor contributes.
    fn skeleton(&mut self, e: &Expr) -> Result<usize> {
        Ok(match e {
            Expr::Boundary(n)
            | Expr::Cap(n, _, _)
            | Expr::SimplexBoundary(n)
            | Expr::Horn(n, _) => n.saturating_sub(1),
            Expr::Tensor(a, b) => self.skeleton(a)? + self.skeleton(b)?,
            Expr::Name(s) => match self.lookup(s)? {
                Payload::Cubical(x) => x.computed_skeleton(),
                Payload::Simplicial(x) => x.computed_skeleton(),
                _ => 0,
            },
            e => self.natural(e)?,
        })
    }

    /// Evaluates at `-N` if given, else at the natural truncation.
    pub fn eval_top(&mut self, e: &Expr) -> Result<Payload> {
        let n = match self.trunc {
            Some(n) => n,
            None => self.natural(e)?,
        };
        self.eval(e, n)
    }

    pub fn guard(&self, n: usize) -> Result<()> {
        if n > self.max_dim {
            return Err(Error::Guard(format!(
                "dimension {n} exceeds the limit {} (raise it with --max-dim or CUBICAL_MAX_DIM)",
                self.max_dim
            )));
        }
        Ok(())
    }

    pub fn eval(&mut self, e: &Expr, n: usize) -> Result<Payload> {
        self.guard(n)?;
        let f = self.flavor;
        Ok(match e {
            Expr::Box(k) => Payload::Cubical(cubical::representable(f, *k, n)?),
            Expr::Point => Payload::Cubical(cubical::point(f, n)?),
            Expr::Empty => Payload::Cubical(cubical::empty(f, n)),
            Expr::Boundary(k) => Payload::Cubical(cubical::boundary(f, *k, n)?.0),
            Expr::Cap(k, eps, i) => Payload::Cubical(cubical::cap(f, *k, *eps, *i, n)?.0),
            Expr::Tensor(a, b) => {
                let (x, y) = (self.cubical(a, n)?, self.cubical(b, n)?);
                Payload::Cubical(DayTensor::new(f, n, &[&x, &y])?.object)
            }
            Expr::Torus => {
                let c = cubical::boundary(f, 2, n)?.0;
                Payload::Cubical(DayTensor::new(f, n, &[&c, &c])?.object)
            }
            Expr::Simplex(k) => Payload::Simplicial(simplicial::simplex(*k, n)?),
            Expr::SimplexBoundary(k) => Payload::Simplicial(simplicial::boundary_simplex(*k, n)?.0),
            Expr::Horn(k, j) => Payload::Simplicial(simplicial::horn(*k, *j, n)?.0),
            Expr::Ordinal(k) => Payload::FinCategory(FinCategory::ordinal(*k)),
            Expr::Square => Payload::FinCategory(FinCategory::commutative_square()),
            Expr::Poset(k) => Payload::FinCategory(FinCategory::cube_poset(*k)),
            Expr::DiscreteObjects(k) => Payload::FinCategory(FinCategory::discrete(*k)),
            Expr::Discrete(c) => {
                let c = self.fin_category(c, n)?;
                Payload::Category(discrete_enrich(&c, f, n)?)
            }
            Expr::W(k) => {
                if f != Flavor::Connections {
                    return Err(Error::Flavor("W needs cubes with connections".into()));
                }
                Payload::Category(w_category(*k, n)?)
            }
            Expr::Dg(c) => {
                let c = self.fin_category(c, n)?;
                Payload::DgCategory(DgCategory::linearize(&c, self.ring()?)?)
            }
            Expr::Name(s) => fit(self.lookup(s)?, n)?,
        })
    }

    pub fn cubical(&mut self, e: &Expr, n: usize) -> Result<cubical_core::TruncatedCubicalSet> {
        match self.eval(e, n)? {
            Payload::Cubical(x) => Ok(x),
            p => Err(Error::Validation(format!(
                "expected a cubical set, found a {}",
                p.kind()
            ))),
        }
    }

    fn fin_category(&mut self, e: &Expr, n: usize) -> Result<FinCategory> {
        match self.eval(e, n)? {
            Payload::FinCategory(c) => Ok(c),
            p => Err(Error::Validation(format!(
                "expected a finite category, found a {}",
                p.kind()
            ))),
        }
    }
}

/// Cuts a loaded object down to truncation `n`.
fn fit(p: Payload, n: usize) -> Result<Payload> {
    let too_low = |t: usize| {
        Error::Dimension(format!(
            "object is truncated at {t}, below the requested {n}"
        ))
    };
    Ok(match p {
        Payload::Cubical(x) if x.trunc() > n => Payload::Cubical(x.truncate(n)?),
        Payload::Cubical(x) if x.trunc() < n => return Err(too_low(x.trunc())),
        Payload::Simplicial(x) if x.trunc() > n => Payload::Simplicial(x.truncate(n)?),
        Payload::Simplicial(x) if x.trunc() < n => return Err(too_low(x.trunc())),
        Payload::Category(c) if c.trunc() > n => Payload::Category(c.truncate(n)?),
        Payload::Category(c) if c.trunc() < n => return Err(too_low(c.trunc())),
        p => p,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses() {
        assert_eq!(parse("(boundary box 2)").unwrap(), Expr::Boundary(2));
        assert_eq!(parse("box1").unwrap(), Expr::Box(1));
        assert_eq!(
            parse("tensor box 1 (boundary 1)").unwrap(),
            Expr::Tensor(Box::new(Expr::Box(1)), Box::new(Expr::Boundary(1)))
        );
        assert_eq!(
            parse("discrete [1]").unwrap(),
            Expr::Discrete(Box::new(Expr::Ordinal(1)))
        );
        assert!(parse("box").is_err());
        assert!(parse("box 1 2").is_err());
        assert!(parse("(box 1").is_err());
    }
}
