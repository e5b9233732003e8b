//! The problem file format.
//!
//! One directive per line; `#` starts a comment.
//!
//! ```text
//! lambda l1 = sqrt(2)      # declares l1, optionally with a real value
//! precision 128
//! dims 2 0                 # n coordinates x1..xn, l parameters a1..al
//! L x2 = l1*x1             # K-linear equation in x and a
//! W y1 + y2 - 1            # Laurent generator in y1..y(n+l)
//! params 2 3/4             # exact values of exp(a)
//! kernel numeric           # or symbolic
//! height 2
//! torsion 3
//! budget 200               # Newton attempts
//! groebner 20000           # Gröbner reduction budget
//! seed 0
//! radius 1.5
//! M 1 -1                   # spanning vector of a rational subspace of V^n
//! avoid 1 = 0.5            # real hyperplane normal . u = offset
//! point 1 2/3              # exact torus point for certificate evaluation
//! ```

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use powtool_core::exponent_field::EmbeddingSpec;
use powtool_core::numeric::mp::MpContext;
use powtool_core::predimension::{Configuration, KernelSpec};
use powtool_core::subspace::{KLinearSubspace, QLinearSubspace};
use powtool_core::toric::{parse_laurent_named, LaurentIdeal, LaurentPoly, TorusPoint};
use powtool_core::{ExponentScalar, QMatrix};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelMode {
    Symbolic,
    Numeric,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Hyperplane {
    pub normal: Vec<f64>,
    pub offset: f64,
}

/// A parsed problem. Equations are kept as coefficient rows over
/// `x1..xn, a1..al`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProblemFile {
    /// One entry per declared lambda; the value literal when given.
    pub lambdas: Vec<Option<String>>,
    pub precision: Option<usize>,
    pub n: usize,
    pub l: usize,
    pub equations: Vec<Vec<ExponentScalar>>,
    pub generators: Vec<LaurentPoly>,
    pub params: Option<Vec<BigRational>>,
    pub kernel: Option<KernelMode>,
    pub height: Option<u32>,
    pub torsion: Option<u64>,
    pub budget: Option<usize>,
    pub groebner: Option<usize>,
    pub seed: Option<u64>,
    pub radius: Option<f64>,
    pub subspace: Vec<Vec<i64>>,
    pub avoid: Vec<Hyperplane>,
    pub point: Option<Vec<BigRational>>,
}

impl ProblemFile {
    pub fn linear(&self) -> KLinearSubspace {
        KLinearSubspace::from_rows(self.n, self.l, self.equations.clone()).expect("rows have n + l entries")
    }

    pub fn variety(&self) -> LaurentIdeal {
        LaurentIdeal::new(self.n + self.l, self.generators.clone()).expect("generators use n + l variables")
    }

    pub fn configuration(&self) -> powtool_core::Result<Configuration> {
        Configuration::new(self.linear(), self.variety(), self.params.clone())
    }

    /// The embedding, when every lambda has a value.
    pub fn embedding(&self, precision: usize) -> Option<EmbeddingSpec> {
        let values: Option<Vec<String>> = self.lambdas.iter().cloned().collect();
        Some(EmbeddingSpec { lambda_values: values?, precision_bits: precision })
    }

    pub fn kernel_spec(&self, precision: usize) -> KernelSpec {
        match self.kernel {
            Some(KernelMode::Symbolic) => KernelSpec::Symbolic,
            _ => KernelSpec::Numeric { precision_bits: precision },
        }
    }

    /// The `M` directives as a subspace of `V^n`, if any were given.
    pub fn m_subspace(&self) -> Option<QLinearSubspace> {
        if self.subspace.is_empty() {
            return None;
        }
        let flat: Vec<i64> = self.subspace.concat();
        Some(QLinearSubspace::spanned_by(self.n, 0, &QMatrix::from_i64(self.subspace.len(), self.n, &flat)))
    }

    pub fn torus_point(&self) -> Option<TorusPoint> {
        self.point.as_ref().and_then(|p| TorusPoint::from_rationals(p).ok())
    }

    fn var_names(&self) -> Vec<String> {
        (1..=self.n).map(|i| format!("x{i}")).chain((1..=self.l).map(|i| format!("a{i}"))).collect()
    }
}

fn fmt_float(v: f64) -> String {
    format!("{v:?}")
}

impl fmt::Display for ProblemFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.lambdas.iter().enumerate() {
            match v {
                Some(v) => writeln!(f, "lambda l{} = {v}", i + 1)?,
                None => writeln!(f, "lambda l{}", i + 1)?,
            }
        }
        if let Some(p) = self.precision {
            writeln!(f, "precision {p}")?;
        }
        writeln!(f, "dims {} {}", self.n, self.l)?;
        let names = self.var_names();
        for row in &self.equations {
            let terms: Vec<String> = row
                .iter()
                .zip(&names)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, v)| format!("({c})*{v}"))
                .collect();
            let lhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
            writeln!(f, "L {lhs} = 0")?;
        }
        for g in &self.generators {
            writeln!(f, "W {g}")?;
        }
        if let Some(p) = &self.params {
            let s: Vec<String> = p.iter().map(|q| q.to_string()).collect();
            writeln!(f, "params {}", s.join(" "))?;
        }
        match self.kernel {
            Some(KernelMode::Symbolic) => writeln!(f, "kernel symbolic")?,
            Some(KernelMode::Numeric) => writeln!(f, "kernel numeric")?,
            None => {}
        }
        if let Some(v) = self.height {
            writeln!(f, "height {v}")?;
        }
        if let Some(v) = self.torsion {
            writeln!(f, "torsion {v}")?;
        }
        if let Some(v) = self.budget {
            writeln!(f, "budget {v}")?;
        }
        if let Some(v) = self.groebner {
            writeln!(f, "groebner {v}")?;
        }
        if let Some(v) = self.seed {
            writeln!(f, "seed {v}")?;
        }
        if let Some(v) = self.radius {
            writeln!(f, "radius {}", fmt_float(v))?;
        }
        for m in &self.subspace {
            let s: Vec<String> = m.iter().map(|v| v.to_string()).collect();
            writeln!(f, "M {}", s.join(" "))?;
        }
        for h in &self.avoid {
            let s: Vec<String> = h.normal.iter().map(|&v| fmt_float(v)).collect();
            writeln!(f, "avoid {} = {}", s.join(" "), fmt_float(h.offset))?;
        }
        if let Some(p) = &self.point {
            let s: Vec<String> = p.iter().map(|q| q.to_string()).collect();
            writeln!(f, "point {}", s.join(" "))?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// linear expressions over K

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(char, usize),
    Op(char),
}

fn tokenize(src: &str, col0: usize) -> Result<Vec<(Tok, usize)>, (usize, String)> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(s.parse().expect("digits")), col));
        } else if matches!(c, 'x' | 'a' | 'l') {
            let start = i + 1;
            i += 1;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            match s.parse::<usize>() {
                Ok(k) if k >= 1 => out.push((Tok::Var(c, k), col)),
                _ => return Err((col, format!("expected an index after '{c}'"))),
            }
        } else if "+-*/^()=".contains(c) {
            out.push((Tok::Op(c), col));
            i += 1;
        } else {
            return Err((col, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

/// `Σ coeffs_j v_j + constant`.
#[derive(Clone, Debug)]
struct Lin {
    coeffs: Vec<ExponentScalar>,
    constant: ExponentScalar,
}

impl Lin {
    fn constant(width: usize, c: ExponentScalar) -> Self {
        Lin { coeffs: vec![ExponentScalar::zero(); width], constant: c }
    }

    fn is_constant(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn combine(self, other: Lin, sign: bool) -> Lin {
        let op = |a: ExponentScalar, b: ExponentScalar| if sign { a + b } else { a - b };
        Lin {
            coeffs: self.coeffs.into_iter().zip(other.coeffs).map(|(a, b)| op(a, b)).collect(),
            constant: op(self.constant, other.constant),
        }
    }

    fn scale(self, c: &ExponentScalar) -> Lin {
        Lin {
            coeffs: self.coeffs.into_iter().map(|a| a * c.clone()).collect(),
            constant: self.constant * c.clone(),
        }
    }
}

struct LinParser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    n: usize,
    l: usize,
    lambdas: usize,
    end_col: usize,
}

type PResult<T> = Result<T, (usize, String)>;

impl LinParser<'_> {
    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.1)
    }

    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some((Tok::Op(c), _)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> PResult<Lin> {
        let mut acc = match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                self.term()?.scale(&ExponentScalar::from_int(-1))
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            acc = acc.combine(self.term()?, op == '+');
        }
        Ok(acc)
    }

    fn term(&mut self) -> PResult<Lin> {
        let mut acc = self.power()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            let col = self.col();
            self.pos += 1;
            let rhs = self.power()?;
            acc = if op == '*' {
                if rhs.is_constant() {
                    acc.scale(&rhs.constant)
                } else if acc.is_constant() {
                    rhs.scale(&acc.constant)
                } else {
                    return Err((col, "product of two variables is not linear".into()));
                }
            } else {
                if !rhs.is_constant() {
                    return Err((col, "division by a variable is not linear".into()));
                }
                let inv = rhs.constant.inverse().map_err(|_| (col, "division by zero".to_string()))?;
                acc.scale(&inv)
            };
        }
        Ok(acc)
    }

    fn power(&mut self) -> PResult<Lin> {
        let base = self.atom()?;
        if self.peek_op() != Some('^') {
            return Ok(base);
        }
        let col = self.col();
        self.pos += 1;
        let neg = if self.peek_op() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let e = match self.toks.get(self.pos) {
            Some((Tok::Int(v), _)) => {
                self.pos += 1;
                i32::try_from(v.clone()).map_err(|_| (col, "exponent too large".to_string()))?
            }
            _ => return Err((self.col(), "expected an integer exponent".into())),
        };
        if !base.is_constant() {
            return Err((col, "powers of variables are not linear".into()));
        }
        let e = if neg { -e } else { e };
        let v = base.constant.pow(e).map_err(|_| (col, "zero to a negative power".to_string()))?;
        Ok(Lin::constant(base.coeffs.len(), v))
    }

    fn atom(&mut self) -> PResult<Lin> {
        let width = self.n + self.l;
        let col = self.col();
        match self.toks.get(self.pos).cloned() {
            Some((Tok::Int(v), _)) => {
                self.pos += 1;
                Ok(Lin::constant(width, ExponentScalar::from_rational(&BigRational::from_integer(v))))
            }
            Some((Tok::Var(kind, k), _)) => {
                self.pos += 1;
                let (limit, offset, what) = match kind {
                    'x' => (self.n, 0, "coordinate"),
                    'a' => (self.l, self.n, "parameter"),
                    _ => (self.lambdas, 0, "lambda"),
                };
                if k > limit {
                    return Err((col, format!("undeclared {what} {kind}{k}")));
                }
                if kind == 'l' {
                    return Ok(Lin::constant(width, ExponentScalar::lambda(k - 1)));
                }
                let mut lin = Lin::constant(width, ExponentScalar::zero());
                lin.coeffs[offset + k - 1] = ExponentScalar::one();
                Ok(lin)
            }
            Some((Tok::Op('('), _)) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err((self.col(), "expected ')'".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            Some((Tok::Op(c), _)) => Err((col, format!("unexpected '{c}'"))),
            None => Err((col, "unexpected end of expression".into())),
        }
    }
}

// ---------------------------------------------------------------------------
// directives

struct Line<'a> {
    number: usize,
    /// Column of `rest`'s first character.
    rest_col: usize,
    rest: &'a str,
}

impl Line<'_> {
    fn err(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError { line: self.number, column, message: message.into() }
    }

    /// Whitespace-separated words with their columns.
    fn words(&self) -> Vec<(usize, &str)> {
        let mut out = Vec::new();
        let mut start = None;
        for (i, c) in self.rest.char_indices() {
            match (c.is_whitespace(), start) {
                (false, None) => start = Some(i),
                (true, Some(s)) => {
                    out.push((s, &self.rest[s..i]));
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(s) = start {
            out.push((s, &self.rest[s..]));
        }
        out.into_iter().map(|(i, w)| (self.rest_col + self.rest[..i].chars().count(), w)).collect()
    }

    fn single<T: FromStr>(&self, what: &str) -> Result<T, ParseError> {
        match self.words().as_slice() {
            [(col, w)] => w.parse().map_err(|_| self.err(*col, format!("expected {what}, found '{w}'"))),
            [] => Err(self.err(self.rest_col, format!("expected {what}"))),
            [_, (col, _), ..] => Err(self.err(*col, "unexpected extra input")),
        }
    }

    fn list<T: FromStr>(&self, what: &str) -> Result<Vec<(usize, T)>, ParseError> {
        self.words()
            .into_iter()
            .map(|(col, w)| w.parse().map(|v| (col, v)).map_err(|_| self.err(col, format!("expected {what}, found '{w}'"))))
            .collect()
    }
}

fn set_once<T>(slot: &mut Option<T>, v: T, line: &Line, key: &str) -> Result<(), ParseError> {
    if slot.is_some() {
        return Err(line.err(1, format!("duplicate '{key}' directive")));
    }
    *slot = Some(v);
    Ok(())
}

pub fn parse_problem(text: &str) -> Result<ProblemFile, ParseError> {
    let mut p = ProblemFile {
        lambdas: Vec::new(),
        precision: None,
        n: 0,
        l: 0,
        equations: Vec::new(),
        generators: Vec::new(),
        params: None,
        kernel: None,
        height: None,
        torsion: None,
        budget: None,
        groebner: None,
        seed: None,
        radius: None,
        subspace: Vec::new(),
        avoid: Vec::new(),
        point: None,
    };
    let mut dims_seen = false;
    let mut last_line = 1;
    for (idx, raw) in text.lines().enumerate() {
        last_line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let lead = content.chars().count() - trimmed.chars().count();
        let key_len = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
        let key = &trimmed[..key_len];
        let rest = &trimmed[key_len..];
        let line = Line { number: idx + 1, rest_col: lead + key.chars().count() + 1, rest };
        let key_col = lead + 1;
        let needs_dims = matches!(key, "L" | "W" | "params" | "M" | "avoid" | "point");
        if needs_dims && !dims_seen {
            return Err(line.err(key_col, format!("'{key}' before 'dims'")));
        }
        match key {
            "lambda" => {
                if dims_seen {
                    return Err(line.err(key_col, "lambdas must be declared before 'dims'"));
                }
                let (name, value) = match rest.split_once('=') {
                    Some((a, b)) => (a, Some(b.trim())),
                    None => (rest, None),
                };
                let expected = format!("l{}", p.lambdas.len() + 1);
                if name.trim() != expected {
                    let col = line.rest_col + name.len() - name.trim_start().len();
                    return Err(line.err(col, format!("expected lambda name {expected}")));
                }
                if let Some(v) = value {
                    let col = line.rest_col + rest.find('=').unwrap_or(0) + 1;
                    if MpContext::new(64).parse_real(v).is_err() {
                        return Err(line.err(col, format!("bad real value '{v}'")));
                    }
                }
                p.lambdas.push(value.map(|v| v.to_string()));
            }
            "precision" => {
                let v = line.single("a bit count")?;
                set_once(&mut p.precision, v, &line, key)?;
            }
            "dims" => {
                if dims_seen {
                    return Err(line.err(key_col, "duplicate 'dims' directive"));
                }
                let v: Vec<(usize, usize)> = line.list("a count")?;
                match v.as_slice() {
                    [(_, n), (_, l)] if n + l > 0 => {
                        p.n = *n;
                        p.l = *l;
                    }
                    _ => return Err(line.err(line.rest_col, "expected 'dims <n> <l>' with n + l > 0")),
                }
                dims_seen = true;
            }
            "L" => p.equations.push(parse_equation(&line, &p)?),
            "W" => {
                let names: Vec<String> = (1..=p.n + p.l).map(|i| format!("y{i}")).collect();
                let poly = parse_laurent_named(rest, &names)
                    .map_err(|e| line.err(line.rest_col + e.column - 1, e.message.clone()))?;
                p.generators.push(poly);
            }
            "params" => {
                let v: Vec<(usize, BigRational)> = line.list("a rational")?;
                if v.len() != p.l {
                    return Err(line.err(line.rest_col, format!("expected {} values, found {}", p.l, v.len())));
                }
                if let Some((col, _)) = v.iter().find(|(_, q)| q.is_zero()) {
                    return Err(line.err(*col, "exp(a) cannot be zero"));
                }
                set_once(&mut p.params, v.into_iter().map(|x| x.1).collect(), &line, key)?;
            }
            "kernel" => {
                let mode = match line.single::<String>("a kernel mode")?.as_str() {
                    "symbolic" => KernelMode::Symbolic,
                    "numeric" => KernelMode::Numeric,
                    other => return Err(line.err(line.rest_col + 1, format!("unknown kernel mode '{other}'"))),
                };
                set_once(&mut p.kernel, mode, &line, key)?;
            }
            "height" => {
                let v = line.single("a height")?;
                set_once(&mut p.height, v, &line, key)?;
            }
            "torsion" => {
                let v = line.single("an order bound")?;
                set_once(&mut p.torsion, v, &line, key)?;
            }
            "budget" => {
                let v = line.single("an attempt count")?;
                set_once(&mut p.budget, v, &line, key)?;
            }
            "groebner" => {
                let v = line.single("a reduction budget")?;
                set_once(&mut p.groebner, v, &line, key)?;
            }
            "seed" => {
                let v = line.single("a seed")?;
                set_once(&mut p.seed, v, &line, key)?;
            }
            "radius" => {
                let v: f64 = line.single("a radius")?;
                if !(v > 0.0 && v.is_finite()) {
                    return Err(line.err(line.rest_col + 1, "radius must be positive"));
                }
                set_once(&mut p.radius, v, &line, key)?;
            }
            "M" => {
                let v: Vec<(usize, i64)> = line.list("an integer")?;
                if v.len() != p.n {
                    return Err(line.err(line.rest_col, format!("expected {} entries, found {}", p.n, v.len())));
                }
                p.subspace.push(v.into_iter().map(|x| x.1).collect());
            }
            "avoid" => {
                let Some((lhs, rhs)) = rest.split_once('=') else {
                    return Err(line.err(line.rest_col, "expected 'avoid <normal> = <offset>'"));
                };
                let left = Line { number: line.number, rest_col: line.rest_col, rest: lhs };
                let right = Line { number: line.number, rest_col: line.rest_col + lhs.chars().count() + 1, rest: rhs };
                let normal: Vec<f64> = left.list("a real")?.into_iter().map(|x| x.1).collect();
                let offset: f64 = right.single("a real")?;
                if normal.is_empty() || normal.iter().all(|&v| v == 0.0) {
                    return Err(line.err(line.rest_col, "hyperplane normal must be nonzero"));
                }
                p.avoid.push(Hyperplane { normal, offset });
            }
            "point" => {
                let v: Vec<(usize, BigRational)> = line.list("a rational")?;
                if v.len() != p.n {
                    return Err(line.err(line.rest_col, format!("expected {} entries, found {}", p.n, v.len())));
                }
                if let Some((col, _)) = v.iter().find(|(_, q)| q.is_zero()) {
                    return Err(line.err(*col, "torus coordinates must be nonzero"));
                }
                set_once(&mut p.point, v.into_iter().map(|x| x.1).collect(), &line, key)?;
            }
            other => return Err(line.err(key_col, format!("unknown directive '{other}'"))),
        }
    }
    if !dims_seen {
        return Err(ParseError { line: last_line, column: 1, message: "missing 'dims' directive".into() });
    }
    Ok(p)
}

fn parse_equation(line: &Line, p: &ProblemFile) -> Result<Vec<ExponentScalar>, ParseError> {
    let toks = tokenize(line.rest, line.rest_col).map_err(|(c, m)| line.err(c, m))?;
    let end_col = line.rest_col + line.rest.chars().count();
    let mut parser = LinParser { toks: &toks, pos: 0, n: p.n, l: p.l, lambdas: p.lambdas.len(), end_col };
    let lhs = parser.expr().map_err(|(c, m)| line.err(c, m))?;
    let lin = match parser.peek_op() {
        Some('=') => {
            parser.pos += 1;
            let rhs = parser.expr().map_err(|(c, m)| line.err(c, m))?;
            lhs.combine(rhs, false)
        }
        None if parser.pos == toks.len() => return Err(line.err(end_col, "expected '='")),
        _ => return Err(line.err(parser.col(), "unexpected input")),
    };
    if parser.pos != toks.len() {
        return Err(line.err(parser.col(), "unexpected input after the equation"));
    }
    if !lin.constant.is_zero() {
        return Err(line.err(line.rest_col, "L equations must be homogeneous"));
    }
    Ok(lin.coeffs)
}
