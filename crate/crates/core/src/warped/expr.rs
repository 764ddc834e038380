//! Warp-function expressions: a recursive-descent parser, a printer that
//! round-trips, and third-order forward-mode Taylor evaluation.
//!
//! Grammar:
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := base ('^' integer)?
//! base   := number | 't' | ident '(' expr ')' | '(' expr ')' | '-' base
//! ```

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Result, WresError};
use crate::symbolic::Q;

/// Elementary functions accepted by the grammar.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Ln,
    Sinh,
    Cosh,
}

impl Func {
    pub const ALL: [Func; 6] = [Func::Sin, Func::Cos, Func::Exp, Func::Ln, Func::Sinh, Func::Cosh];

    pub fn name(&self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
        }
    }

    fn from_name(s: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == s)
    }

    /// Value and first three derivatives at `x`.
    fn derivatives(&self, x: f64) -> [f64; 4] {
        match self {
            Func::Sin => [x.sin(), x.cos(), -x.sin(), -x.cos()],
            Func::Cos => [x.cos(), -x.sin(), -x.cos(), x.sin()],
            Func::Exp => [x.exp(); 4],
            Func::Ln => [x.ln(), 1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x)],
            Func::Sinh => [x.sinh(), x.cosh(), x.sinh(), x.cosh()],
            Func::Cosh => [x.cosh(), x.sinh(), x.cosh(), x.sinh()],
        }
    }
}

/// Expression tree.
#[derive(Clone, PartialEq, Debug)]
pub enum Expr {
    Num(Q),
    T,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Call(Func, Box<Expr>),
}

/// Truncated Taylor jet `(f, f′, f″, f‴)`.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Jet3(pub [f64; 4]);

impl Jet3 {
    pub fn constant(c: f64) -> Self {
        Jet3([c, 0.0, 0.0, 0.0])
    }

    pub fn variable(t: f64) -> Self {
        Jet3([t, 1.0, 0.0, 0.0])
    }

    /// `φ ∘ self` given `φ` and its derivatives at `self.0[0]`.
    fn compose(&self, phi: [f64; 4]) -> Self {
        let [_, u1, u2, u3] = self.0;
        Jet3([
            phi[0],
            phi[1] * u1,
            phi[2] * u1 * u1 + phi[1] * u2,
            phi[3] * u1 * u1 * u1 + 3.0 * phi[2] * u1 * u2 + phi[1] * u3,
        ])
    }

    pub fn recip(&self) -> Self {
        let x = self.0[0];
        self.compose([1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x), -6.0 / (x * x * x * x)])
    }

    pub fn powi(&self, k: i32) -> Self {
        if k < 0 {
            return self.recip().powi(-k);
        }
        let mut acc = Jet3::constant(1.0);
        let mut base = *self;
        let mut e = k as u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl Add for Jet3 {
    type Output = Jet3;
    fn add(self, o: Jet3) -> Jet3 {
        Jet3(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl Sub for Jet3 {
    type Output = Jet3;
    fn sub(self, o: Jet3) -> Jet3 {
        Jet3(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

impl Neg for Jet3 {
    type Output = Jet3;
    fn neg(self) -> Jet3 {
        Jet3(self.0.map(|x| -x))
    }
}

impl Mul for Jet3 {
    type Output = Jet3;
    fn mul(self, o: Jet3) -> Jet3 {
        let (a, b) = (self.0, o.0);
        Jet3([
            a[0] * b[0],
            a[1] * b[0] + a[0] * b[1],
            a[2] * b[0] + 2.0 * a[1] * b[1] + a[0] * b[2],
            a[3] * b[0] + 3.0 * a[2] * b[1] + 3.0 * a[1] * b[2] + a[0] * b[3],
        ])
    }
}

impl Div for Jet3 {
    type Output = Jet3;
    fn div(self, o: Jet3) -> Jet3 {
        self * o.recip()
    }
}

fn domain(t: f64, message: impl Into<String>) -> WresError {
    WresError::Domain { t, message: message.into() }
}

impl Expr {
    /// Jet of the expression at `t`, with domain checks.
    pub fn jet(&self, t: f64) -> Result<Jet3> {
        let out = match self {
            Expr::Num(q) => Jet3::constant(q.to_f64().unwrap_or(f64::NAN)),
            Expr::T => Jet3::variable(t),
            Expr::Neg(a) => -a.jet(t)?,
            Expr::Add(a, b) => a.jet(t)? + b.jet(t)?,
            Expr::Sub(a, b) => a.jet(t)? - b.jet(t)?,
            Expr::Mul(a, b) => a.jet(t)? * b.jet(t)?,
            Expr::Div(a, b) => {
                let d = b.jet(t)?;
                if d.0[0] == 0.0 {
                    return Err(domain(t, "division by zero"));
                }
                a.jet(t)? / d
            }
            Expr::Pow(a, k) => {
                let x = a.jet(t)?;
                if *k < 0 && x.0[0] == 0.0 {
                    return Err(domain(t, "negative power of zero"));
                }
                x.powi(*k)
            }
            Expr::Call(f, a) => {
                let x = a.jet(t)?;
                if *f == Func::Ln && x.0[0] <= 0.0 {
                    return Err(domain(t, "ln of a nonpositive value"));
                }
                x.compose(f.derivatives(x.0[0]))
            }
        };
        if out.0.iter().any(|v| !v.is_finite()) {
            return Err(domain(t, "non-finite value"));
        }
        Ok(out)
    }

    /// Plain value at `t`.
    pub fn eval(&self, t: f64) -> Result<f64> {
        Ok(self.jet(t)?.0[0])
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Num(q) if q.is_negative() => 3,
            _ => 5,
        }
    }
}

fn fmt_decimal(q: &Q) -> String {
    let neg = q.is_negative();
    let q = q.abs();
    let mut den = q.denom().clone();
    let (mut twos, mut fives) = (0u32, 0u32);
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    while (&den % &two).is_zero() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    let body = if den == BigInt::from(1) {
        let digits = twos.max(fives);
        let scaled = q.numer() * num_traits::pow(BigInt::from(10), digits as usize) / q.denom();
        if digits == 0 {
            scaled.to_string()
        } else {
            let s = format!("{:0>width$}", scaled.to_string(), width = digits as usize + 1);
            let (i, f) = s.split_at(s.len() - digits as usize);
            format!("{i}.{f}")
        }
    } else {
        format!("{}/{}", q.numer(), q.denom())
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |e: &Expr, min: u8| -> String {
            if e.precedence() < min {
                format!("({e})")
            } else {
                e.to_string()
            }
        };
        match self {
            Expr::Num(q) => f.write_str(&fmt_decimal(q)),
            Expr::T => f.write_str("t"),
            Expr::Neg(a) => write!(f, "-{}", wrap(a, 4)),
            Expr::Add(a, b) => write!(f, "{} + {}", wrap(a, 1), wrap(b, 2)),
            Expr::Sub(a, b) => write!(f, "{} - {}", wrap(a, 1), wrap(b, 2)),
            Expr::Mul(a, b) => write!(f, "{}*{}", wrap(a, 2), wrap(b, 4)),
            Expr::Div(a, b) => write!(f, "{}/{}", wrap(a, 2), wrap(b, 4)),
            Expr::Pow(a, k) => write!(f, "{}^{}", wrap(a, 5), k),
            Expr::Call(func, a) => write!(f, "{}({})", func.name(), a),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, offset: usize, message: impl Into<String>) -> Result<T> {
        Err(WresError::Syntax { offset, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let b = self.base()?;
        if self.eat('^') {
            self.skip_ws();
            let start = self.pos;
            let neg = self.eat('-');
            self.skip_ws();
            let digits_start = self.pos;
            while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
                self.pos += 1;
            }
            if self.pos == digits_start {
                return self.err(start, "expected an integer exponent");
            }
            let k: i32 = match self.src[digits_start..self.pos].parse() {
                Ok(k) => k,
                Err(_) => return self.err(start, "exponent out of range"),
            };
            return Ok(Expr::Pow(Box::new(b), if neg { -k } else { k }));
        }
        Ok(b)
    }

    fn number(&mut self) -> Result<Expr> {
        let start = self.pos;
        let rest = &self.src[start..];
        let len = rest.find(|c: char| !(c.is_ascii_digit() || c == '.')).unwrap_or(rest.len());
        let lit = &rest[..len];
        self.pos += len;
        if lit.matches('.').count() > 1 || lit == "." {
            return self.err(start, format!("malformed number `{lit}`"));
        }
        match crate::heat::config::parse_rational(lit) {
            Some(q) => Ok(Expr::Num(q)),
            None => self.err(start, format!("malformed number `{lit}`")),
        }
    }

    fn base(&mut self) -> Result<Expr> {
        let Some(c) = self.peek() else {
            return self.err(self.pos, "unexpected end of input");
        };
        let start = self.pos;
        if c.is_ascii_digit() || c == '.' {
            return self.number();
        }
        if c == '-' {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.base()?)));
        }
        if c == '(' {
            self.pos += 1;
            let e = self.expr()?;
            if !self.eat(')') {
                return self.err(self.pos, "expected `)`");
            }
            return Ok(e);
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let rest = &self.src[start..];
            let len = rest.find(|c: char| !(c.is_ascii_alphanumeric() || c == '_')).unwrap_or(rest.len());
            let name = &rest[..len];
            self.pos += len;
            if name == "t" {
                if self.peek() == Some('(') {
                    return self.err(start, "`t` is not a function");
                }
                return Ok(Expr::T);
            }
            let Some(func) = Func::from_name(name) else {
                return self.err(start, format!("unknown identifier `{name}`"));
            };
            if !self.eat('(') {
                return self.err(self.pos, format!("`{name}` takes exactly one argument in parentheses"));
            }
            let arg = self.expr()?;
            if self.peek() == Some(',') {
                return self.err(self.pos, format!("`{name}` takes exactly one argument"));
            }
            if !self.eat(')') {
                return self.err(self.pos, "expected `)`");
            }
            return Ok(Expr::Call(func, Box::new(arg)));
        }
        self.err(start, format!("unexpected character `{c}`"))
    }
}

/// Parses a warp expression.
pub fn parse_warp(src: &str) -> Result<Expr> {
    let mut p = Parser { src, pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err(p.pos, "unexpected trailing input");
    }
    Ok(e)
}

/// A random expression that is smooth near `t ∈ [0, 1]`: logarithms and
/// divisions only see arguments bounded away from zero.
pub fn random_expr<R: Rng>(rng: &mut R, depth: u32) -> Expr {
    let positive = |rng: &mut R, e: Expr| -> Expr {
        // 1.5 + e²/(1 + e²) ∈ [1.5, 2.5)
        let sq = Expr::Pow(Box::new(e), 2);
        let frac = Expr::Div(Box::new(sq.clone()), Box::new(Expr::Add(Box::new(num(1, 1)), Box::new(sq))));
        let _ = rng;
        Expr::Add(Box::new(num(3, 2)), Box::new(frac))
    };
    if depth == 0 {
        return if rng.random_bool(0.6) { Expr::T } else { num(rng.random_range(-9..=9), [1, 2, 4, 5, 10][rng.random_range(0..5)]) };
    }
    match rng.random_range(0..8) {
        0 => Expr::Add(Box::new(random_expr(rng, depth - 1)), Box::new(random_expr(rng, depth - 1))),
        1 => Expr::Sub(Box::new(random_expr(rng, depth - 1)), Box::new(random_expr(rng, depth - 1))),
        2 => Expr::Mul(Box::new(random_expr(rng, depth - 1)), Box::new(random_expr(rng, depth - 1))),
        3 => {
            let d = random_expr(rng, depth - 1);
            Expr::Div(Box::new(random_expr(rng, depth - 1)), Box::new(positive(rng, d)))
        }
        4 => Expr::Pow(Box::new(random_expr(rng, depth - 1)), rng.random_range(0..=3)),
        5 => {
            let d = random_expr(rng, depth - 1);
            Expr::Call(Func::Ln, Box::new(positive(rng, d)))
        }
        6 => {
            // keep exponentials tame
            let inner = Expr::Div(Box::new(random_expr(rng, depth - 1)), Box::new(positive(rng, Expr::T)));
            let f = [Func::Exp, Func::Sinh, Func::Cosh][rng.random_range(0..3)];
            Expr::Call(f, Box::new(inner))
        }
        _ => {
            let f = [Func::Sin, Func::Cos][rng.random_range(0..2)];
            Expr::Call(f, Box::new(random_expr(rng, depth - 1)))
        }
    }
}

fn num(n: i64, d: i64) -> Expr {
    let q = crate::symbolic::q(n, d);
    if q.is_negative() {
        Expr::Neg(Box::new(Expr::Num(-q)))
    } else {
        Expr::Num(q)
    }
}

/// Fourth-order central finite-difference estimates of `f′, f″, f‴` with
/// step `h`.
pub fn finite_differences(f: &dyn Fn(f64) -> Result<f64>, t: f64, h: f64) -> Result<[f64; 3]> {
    let mut v = [0.0; 7];
    for (i, slot) in v.iter_mut().enumerate() {
        *slot = f(t + (i as f64 - 3.0) * h)?;
    }
    let [m3, m2, m1, z, p1, p2, p3] = v;
    Ok([
        (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h),
        (-m2 + 16.0 * m1 - 30.0 * z + 16.0 * p1 - p2) / (12.0 * h * h),
        (m3 - 8.0 * m2 + 13.0 * m1 - 13.0 * p1 + 8.0 * p2 - p3) / (8.0 * h * h * h),
    ])
}

/// `q` as `f64`.
pub fn to_f64(q: &Q) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;

    #[test]
    fn polynomial_and_exponential() {
        let j = parse_warp("t^3").unwrap().jet(2.0).unwrap();
        assert_eq!(j.0, [8.0, 12.0, 12.0, 6.0]);
        let j = parse_warp("exp(0.5*t)").unwrap().jet(0.0).unwrap();
        assert_eq!(j.0, [1.0, 0.5, 0.25, 0.125]);
        let j = parse_warp("1").unwrap().jet(0.7).unwrap();
        assert_eq!(j.0, [1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn sine_third_derivative_matches_differences() {
        let e = parse_warp("sin(t)+2").unwrap();
        let j = e.jet(0.3).unwrap();
        let fd = finite_differences(&|t| e.eval(t), 0.3, 1e-3).unwrap();
        assert!((j.0[3] - fd[2]).abs() < 1e-6);
        assert!((j.0[3] + 0.3f64.cos()).abs() < 1e-15);
    }

    #[test]
    fn errors_are_positioned() {
        assert_eq!(parse_warp("foo(t)"), Err(WresError::Syntax { offset: 0, message: "unknown identifier `foo`".into() }));
        assert!(matches!(parse_warp("sin(t, 2)"), Err(WresError::Syntax { offset: 5, .. })));
        assert!(matches!(parse_warp("1.2.3"), Err(WresError::Syntax { offset: 0, .. })));
        assert!(matches!(parse_warp("2 +"), Err(WresError::Syntax { offset: 3, .. })));
        assert!(matches!(parse_warp("t^x"), Err(WresError::Syntax { .. })));
        assert!(matches!(parse_warp("ln(t)").unwrap().jet(0.0), Err(WresError::Domain { .. })));
    }

    #[test]
    fn printing_round_trips() {
        for s in ["1 + t/10", "exp(0.5*t)", "-t^2 - (1 - t)*cos(t)", "2/(3*t)^-2", "sinh(t)/cosh(t) - -0.125"] {
            let e = parse_warp(s).unwrap();
            assert_eq!(parse_warp(&e.to_string()).unwrap(), e, "{s} -> {e}");
        }
    }

    proptest! {
        #[test]
        fn random_expressions_round_trip(seed in any::<u64>()) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let e = random_expr(&mut rng, 4);
            prop_assert_eq!(parse_warp(&e.to_string()).unwrap(), e);
        }
    }
}
