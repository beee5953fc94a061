//! Inline regular parts such as `exp(x) * sqrt(1 + x^2)`.
//!
//! Expressions are parsed once into a tree and evaluated over any
//! [`Scalar`], so the same text yields node values and pole jets.
//!
//! Grammar: `+ - * / ^`, unary minus, parentheses, the variable `x`, the
//! constants `pi` and `e`, and the functions `exp log ln sin cos tan tanh sqrt`.
//! `^` is right associative and binds tighter than unary minus.

use std::fmt;
use std::str::FromStr;

use pvtsi::{Scalar, ScalarFn};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Func {
    Exp,
    Ln,
    Sin,
    Cos,
    Tan,
    Tanh,
    Sqrt,
}

impl Func {
    fn lookup(name: &str) -> Option<Func> {
        Some(match name {
            "exp" => Func::Exp,
            "log" | "ln" => Func::Ln,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "tanh" => Func::Tanh,
            "sqrt" => Func::Sqrt,
            _ => return None,
        })
    }

    fn apply<S: Scalar>(self, u: S) -> S {
        match self {
            Func::Exp => u.exp(),
            Func::Ln => u.ln(),
            Func::Sin => u.sin(),
            Func::Cos => u.cos(),
            Func::Tan => u.tan(),
            Func::Tanh => u.tanh(),
            Func::Sqrt => u.sqrt(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Node {
    Num(f64),
    X,
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Pow(Box<Node>, Box<Node>),
    Call(Func, Box<Node>),
}

impl Node {
    fn constant(&self) -> Option<f64> {
        match self {
            Node::Num(v) => Some(*v),
            Node::X => None,
            Node::Neg(a) => Some(-a.constant()?),
            Node::Add(a, b) => Some(a.constant()? + b.constant()?),
            Node::Sub(a, b) => Some(a.constant()? - b.constant()?),
            Node::Mul(a, b) => Some(a.constant()? * b.constant()?),
            Node::Div(a, b) => Some(a.constant()? / b.constant()?),
            Node::Pow(a, b) => Some(a.constant()?.powf(b.constant()?)),
            Node::Call(f, a) => Some(f.apply(a.constant()?)),
        }
    }

    fn eval<S: Scalar>(&self, x: &S) -> S {
        match self {
            Node::Num(v) => x.constant(*v),
            Node::X => x.clone(),
            Node::Neg(a) => -a.eval(x),
            Node::Add(a, b) => a.eval(x) + b.eval(x),
            Node::Sub(a, b) => a.eval(x) - b.eval(x),
            Node::Mul(a, b) => a.eval(x) * b.eval(x),
            Node::Div(a, b) => a.eval(x) / b.eval(x),
            Node::Pow(a, b) => match b.constant() {
                Some(e) if e.fract() == 0.0 && e.abs() <= i32::MAX as f64 => a.eval(x).powi(e as i32),
                Some(e) => a.eval(x).powf(e),
                None => (b.eval(x) * a.eval(x).ln()).exp(),
            },
            Node::Call(f, a) => f.apply(a.eval(x)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(f64),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Token)>, CliError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                i += 1;
            }
            // exponent part, only when followed by a digit or sign+digit
            if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                let mut j = i + 1;
                if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                    j += 1;
                }
                if j < bytes.len() && bytes[j].is_ascii_digit() {
                    i = j;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let text = &src[start..i];
            let v = text
                .parse::<f64>()
                .map_err(|_| CliError::Expression(format!("bad number `{text}` at {start}")))?;
            out.push((start, Token::Num(v)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Token::Ident(src[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Token::Op(c)));
            i += 1;
        } else {
            return Err(CliError::Expression(format!("unexpected character `{c}` at {i}")));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.len, |(o, _)| *o)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn fail<T>(&self, what: &str) -> Result<T, CliError> {
        Err(CliError::Expression(format!("{what} at {}", self.offset())))
    }

    fn expr(&mut self) -> Result<Node, CliError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Node::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Node::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Node, CliError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Node::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Node::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Node, CliError> {
        if self.eat('-') {
            return Ok(Node::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node, CliError> {
        let base = self.atom()?;
        if self.eat('^') {
            return Ok(Node::Pow(Box::new(base), Box::new(self.unary()?)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Node, CliError> {
        let Some(tok) = self.peek().cloned() else {
            return self.fail("unexpected end of expression");
        };
        self.pos += 1;
        match tok {
            Token::Num(v) => Ok(Node::Num(v)),
            Token::Op('(') => {
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.fail("expected `)`");
                }
                Ok(inner)
            }
            Token::Ident(name) => match name.as_str() {
                "x" => Ok(Node::X),
                "pi" => Ok(Node::Num(std::f64::consts::PI)),
                "e" => Ok(Node::Num(std::f64::consts::E)),
                _ => {
                    let Some(f) = Func::lookup(&name) else {
                        self.pos -= 1;
                        return self.fail(&format!("unknown name `{name}`"));
                    };
                    if !self.eat('(') {
                        return self.fail(&format!("expected `(` after `{name}`"));
                    }
                    let arg = self.expr()?;
                    if !self.eat(')') {
                        return self.fail("expected `)`");
                    }
                    Ok(Node::Call(f, Box::new(arg)))
                }
            },
            Token::Op(c) => {
                self.pos -= 1;
                self.fail(&format!("unexpected `{c}`"))
            }
        }
    }
}

/// A parsed regular part `g(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    source: String,
    root: Node,
}

impl Expr {
    pub fn parse(src: &str) -> Result<Self, CliError> {
        let tokens = tokenize(src)?;
        let mut p = Parser {
            tokens,
            pos: 0,
            len: src.len(),
        };
        let root = p.expr()?;
        if p.pos != p.tokens.len() {
            return p.fail("trailing input");
        }
        Ok(Self {
            source: src.trim().to_string(),
            root,
        })
    }

    pub fn source(&self) -> &str {
        &self.source
    }
}

impl FromStr for Expr {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Expr::parse(s)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

impl ScalarFn for Expr {
    fn call<S: Scalar>(&self, x: S) -> S {
        self.root.eval(&x)
    }
}
