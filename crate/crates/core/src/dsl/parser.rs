use super::ast::*;
use super::lexer::{lex, Tok, Token};
use super::SyntaxError;

pub fn parse(src: &str) -> Result<Program, SyntaxError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, i: 0 };
    let mut stmts = Vec::new();
    while p.peek() != &Tok::Eof {
        stmts.push(p.statement()?);
    }
    Ok(Program { stmts })
}

struct Parser {
    toks: Vec<Token>,
    i: usize,
}

type R<T> = Result<T, SyntaxError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].tok
    }

    fn tok(&self) -> &Token {
        &self.toks[self.i]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> R<T> {
        let t = self.tok();
        Err(SyntaxError::expected(t.pos, &t.tok.describe(), expected))
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(x) if *x == s)
    }

    fn is_kw(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Ident(x) if x == s)
    }

    fn sym(&mut self, s: &str) -> R<()> {
        if self.is_sym(s) {
            self.bump();
            Ok(())
        } else {
            self.fail(&[&format!("`{s}`")])
        }
    }

    fn kw(&mut self, s: &str) -> R<()> {
        if self.is_kw(s) {
            self.bump();
            Ok(())
        } else {
            self.fail(&[&format!("`{s}`")])
        }
    }

    fn ident(&mut self) -> R<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.fail(&["identifier"]),
        }
    }

    fn string(&mut self) -> R<String> {
        match self.peek().clone() {
            Tok::Str(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.fail(&["string"]),
        }
    }

    /// Optionally signed numeric literal, kept as text.
    fn number(&mut self) -> R<String> {
        let neg = self.is_sym("-");
        if neg {
            self.bump();
        }
        match self.peek().clone() {
            Tok::Num(s) => {
                self.bump();
                Ok(if neg { format!("-{s}") } else { s })
            }
            _ => self.fail(&["number"]),
        }
    }

    fn int(&mut self) -> R<i64> {
        let pos = self.tok().pos;
        let s = self.number()?;
        s.parse().map_err(|_| SyntaxError::expected(pos, &format!("number `{s}`"), &["integer"]))
    }

    fn uint(&mut self) -> R<u64> {
        let pos = self.tok().pos;
        let s = self.number()?;
        s.parse().map_err(|_| SyntaxError::expected(pos, &format!("number `{s}`"), &["non-negative integer"]))
    }

    fn float(&mut self) -> R<String> {
        let pos = self.tok().pos;
        let s = self.number()?;
        match s.parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(s),
            _ => Err(SyntaxError::expected(pos, &format!("number `{s}`"), &["finite number"])),
        }
    }

    fn list<T>(&mut self, open: &str, close: &str, mut item: impl FnMut(&mut Self) -> R<T>) -> R<Vec<T>> {
        self.sym(open)?;
        let mut out = Vec::new();
        if self.is_sym(close) {
            self.bump();
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.is_sym(",") {
                self.bump();
            } else {
                self.sym(close)?;
                return Ok(out);
            }
        }
    }

    /// `{ item ; item ; ... }`
    fn block<T>(&mut self, mut item: impl FnMut(&mut Self) -> R<T>) -> R<Vec<T>> {
        self.sym("{")?;
        let mut out = Vec::new();
        while !self.is_sym("}") {
            out.push(item(self)?);
            self.sym(";")?;
        }
        self.bump();
        Ok(out)
    }

    fn statement(&mut self) -> R<Stmt> {
        let pos = self.tok().pos;
        let Tok::Ident(kw) = self.peek().clone() else {
            return self.fail(&["statement keyword"]);
        };
        self.bump();
        let kind = match kw.as_str() {
            "chart" => {
                let name = self.ident()?;
                let vars = self.block(|p| {
                    let v = p.ident()?;
                    p.sym(":")?;
                    Ok((v, p.int()?))
                })?;
                StmtKind::Chart { name, vars }
            }
            "qfield" => {
                let name = self.ident()?;
                self.kw("on")?;
                let chart = self.ident()?;
                let degree = if self.is_kw("deg") {
                    self.bump();
                    Some(self.int()?)
                } else {
                    None
                };
                let images = self.block(|p| {
                    let v = p.ident()?;
                    p.sym("->")?;
                    Ok((v, p.expr()?))
                })?;
                StmtKind::QField { name, chart, degree, images }
            }
            "sigma" => {
                let name = self.ident()?;
                self.kw("deg")?;
                let degree = self.int()?;
                self.kw("pairs")?;
                let pairs = self.block(|p| {
                    p.sym("(")?;
                    let q = p.ident()?;
                    p.sym(":")?;
                    let wq = p.int()?;
                    p.sym(",")?;
                    let pn = p.ident()?;
                    p.sym(":")?;
                    let wp = p.int()?;
                    let coeff = if p.is_sym(",") {
                        p.bump();
                        Some(p.expr()?)
                    } else {
                        None
                    };
                    p.sym(")")?;
                    Ok(PairDecl { q, wq, p: pn, wp, coeff })
                })?;
                StmtKind::Sigma { name, degree, pairs }
            }
            "ham" | "poly" => {
                let name = self.ident()?;
                self.kw("on")?;
                let on = self.ident()?;
                self.sym("=")?;
                let expr = self.expr()?;
                self.sym(";")?;
                if kw == "ham" {
                    StmtKind::Ham { name, sigma: on, expr }
                } else {
                    StmtKind::Poly { name, on, expr }
                }
            }
            "algebroid" => {
                let name = self.ident()?;
                self.kw("base")?;
                let base = self.list("(", ")", Self::ident)?;
                self.kw("fiber")?;
                let fiber = self.list("(", ")", Self::ident)?;
                let mut anchors = Vec::new();
                let mut brackets = Vec::new();
                self.block(|p| {
                    let which = if p.is_kw("anchor") {
                        true
                    } else if p.is_kw("bracket") {
                        false
                    } else {
                        return p.fail(&["`anchor`", "`bracket`"]);
                    };
                    p.bump();
                    let a = p.ident()?;
                    let b = p.ident()?;
                    p.sym("=")?;
                    let e = p.expr()?;
                    if which {
                        anchors.push((a, b, e))
                    } else {
                        brackets.push((a, b, e))
                    }
                    Ok(())
                })?;
                StmtKind::Algebroid { name, base, fiber, anchors, brackets }
            }
            "algebra" => {
                let name = self.ident()?;
                if self.is_sym("=") {
                    self.bump();
                    let b = self.ident()?;
                    let arg = if self.is_sym("(") {
                        self.bump();
                        let d = self.uint()?;
                        self.sym(")")?;
                        Some(d)
                    } else {
                        None
                    };
                    self.sym(";")?;
                    StmtKind::Algebra { name, def: AlgebraDef::Builtin(b, arg) }
                } else {
                    self.kw("basis")?;
                    let basis = self.list("(", ")", Self::ident)?;
                    let brackets = self.block(|p| {
                        p.sym("[")?;
                        let a = p.ident()?;
                        p.sym(",")?;
                        let b = p.ident()?;
                        p.sym("]")?;
                        p.sym("=")?;
                        Ok((a, b, p.expr()?))
                    })?;
                    self.kw("metric")?;
                    let metric = self.block(|p| {
                        let a = p.ident()?;
                        let b = p.ident()?;
                        p.sym("=")?;
                        Ok((a, b, p.expr()?))
                    })?;
                    StmtKind::Algebra { name, def: AlgebraDef::Custom { basis, brackets, metric } }
                }
            }
            "twist" | "pair" => {
                let name = self.ident()?;
                self.kw("m")?;
                let m = self.uint()?;
                self.kw("n")?;
                let n = self.uint()?;
                self.sym("=")?;
                let kind = if kw == "twist" {
                    StmtKind::Twist { name, m, n, eta: self.expr()? }
                } else {
                    self.sym("(")?;
                    let vector = self.list("[", "]", Self::expr)?;
                    self.sym(",")?;
                    let alpha = self.expr()?;
                    self.sym(")")?;
                    StmtKind::Pair { name, m, n, vector, alpha }
                };
                self.sym(";")?;
                kind
            }
            "path" => {
                let name = self.ident()?;
                self.sym("=")?;
                let def = if self.is_kw("const") {
                    self.bump();
                    self.kw("so3")?;
                    let x = self.list("(", ")", Self::float)?;
                    let orbit = if self.is_kw("orbit") {
                        self.bump();
                        let start = self.list("(", ")", Self::float)?;
                        self.kw("samples")?;
                        Some((start, self.uint()?))
                    } else {
                        None
                    };
                    self.sym(";")?;
                    PathDef::Const { x, orbit }
                } else {
                    self.kw("so3")?;
                    PathDef::Samples(self.block(|p| {
                        let t = p.float()?;
                        p.sym(":")?;
                        Ok((t, p.list("(", ")", Self::float)?))
                    })?)
                };
                StmtKind::Path { name, def }
            }
            "complex" => {
                let name = self.ident()?;
                self.sym("=")?;
                let def = match self.ident()?.as_str() {
                    "lattice" => {
                        let surface = self.ident()?;
                        let sizes = self.list("(", ")", Self::uint)?;
                        let fiber = match self.ident()?.as_str() {
                            "scalars" => FiberSpec::Scalars,
                            "lie" => FiberSpec::Lie(self.ident()?),
                            "pair" => {
                                self.sym("(")?;
                                let n = self.uint()?;
                                self.sym(")")?;
                                FiberSpec::Pair(n)
                            }
                            _ => {
                                self.i -= 1;
                                return self.fail(&["`scalars`", "`lie`", "`pair`"]);
                            }
                        };
                        ComplexDef::Lattice { surface, sizes, fiber }
                    }
                    "ball" => {
                        self.sym("(")?;
                        let n = self.uint()?;
                        self.sym(")")?;
                        ComplexDef::Ball(n)
                    }
                    "double" => {
                        let base = self.ident()?;
                        ComplexDef::Double(base, self.uint()?)
                    }
                    "cochain" => {
                        let degrees = self.list("(", ")", Self::int)?;
                        let d = self.matrix()?;
                        let pairing = if self.is_kw("pairing") {
                            self.bump();
                            let k = self.int()?;
                            Some((k, self.matrix()?))
                        } else {
                            None
                        };
                        ComplexDef::Cochain { degrees, d, pairing }
                    }
                    _ => {
                        self.i -= 1;
                        return self.fail(&["`lattice`", "`ball`", "`double`", "`cochain`"]);
                    }
                };
                self.sym(";")?;
                StmtKind::Complex { name, def }
            }
            "nmap" => {
                let name = self.ident()?;
                self.sym("=")?;
                let sigma = self.ident()?;
                self.kw("dim")?;
                let n = self.uint()?;
                self.sym(";")?;
                StmtKind::NMap { name, sigma, n }
            }
            "grid" => {
                let name = self.ident()?;
                self.sym("=")?;
                self.kw("random")?;
                let size = self.uint()?;
                self.sym(";")?;
                StmtKind::Grid { name, size }
            }
            "load" => {
                let kind = match self.ident()?.as_str() {
                    "grid" => LoadKind::Grid,
                    "path" => LoadKind::Path,
                    "complex" => LoadKind::Complex,
                    _ => {
                        self.i -= 1;
                        return self.fail(&["`grid`", "`path`", "`complex`"]);
                    }
                };
                let name = self.ident()?;
                let file = self.string()?;
                self.sym(";")?;
                StmtKind::Load { kind, name, file }
            }
            "check" => {
                let mut name = self.ident()?;
                while self.is_sym("-") && self.tok().pos.col == self.toks[self.i - 1].end {
                    self.bump();
                    if self.tok().pos.col != self.toks[self.i - 1].end {
                        return self.fail(&["check name"]);
                    }
                    name.push('-');
                    name.push_str(&self.ident()?);
                }
                let mut args = Vec::new();
                while !self.is_sym(";") {
                    args.push(self.arg()?);
                }
                self.bump();
                StmtKind::Check { name, args }
            }
            _ => {
                self.i -= 1;
                return self.fail(&[
                    "`chart`",
                    "`qfield`",
                    "`sigma`",
                    "`ham`",
                    "`poly`",
                    "`algebroid`",
                    "`algebra`",
                    "`twist`",
                    "`pair`",
                    "`path`",
                    "`complex`",
                    "`nmap`",
                    "`grid`",
                    "`load`",
                    "`check`",
                ]);
            }
        };
        Ok(Stmt { pos, kind })
    }

    fn arg(&mut self) -> R<Arg> {
        match self.peek() {
            Tok::Ident(_) => Ok(Arg::Name(self.ident()?)),
            Tok::Sym("(") => Ok(Arg::List(self.list("(", ")", Self::arg)?)),
            Tok::Num(_) | Tok::Sym("-") => Ok(Arg::Num(self.float()?)),
            _ => self.fail(&["identifier", "number", "`(`", "`;`"]),
        }
    }

    fn matrix(&mut self) -> R<Vec<Vec<Expr>>> {
        self.list("[", "]", |p| p.list("[", "]", Self::expr))
    }

    pub fn expr(&mut self) -> R<Expr> {
        let mut e = self.term()?;
        loop {
            if self.is_sym("+") {
                self.bump();
                e = Expr::Add(Box::new(e), Box::new(self.term()?));
            } else if self.is_sym("-") {
                self.bump();
                e = Expr::Sub(Box::new(e), Box::new(self.term()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn term(&mut self) -> R<Expr> {
        let mut e = self.unary()?;
        loop {
            if self.is_sym("*") {
                self.bump();
                e = Expr::Mul(Box::new(e), Box::new(self.unary()?));
            } else if self.is_sym("/") {
                self.bump();
                e = Expr::Div(Box::new(e), Box::new(self.unary()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn unary(&mut self) -> R<Expr> {
        if self.is_sym("-") {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.is_sym("^") {
            self.bump();
            let pos = self.tok().pos;
            let k = self.uint()?;
            let k = u32::try_from(k).map_err(|_| SyntaxError::expected(pos, &k.to_string(), &["small exponent"]))?;
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> R<Expr> {
        match self.peek().clone() {
            Tok::Num(s) => {
                if !s.bytes().all(|b| b.is_ascii_digit()) {
                    return self.fail(&["integer literal"]);
                }
                self.bump();
                Ok(Expr::Int(s))
            }
            Tok::Ident(v) => {
                self.bump();
                if v == "d" && self.is_sym("(") {
                    self.bump();
                    let e = self.expr()?;
                    self.sym(")")?;
                    return Ok(Expr::D(Box::new(e)));
                }
                Ok(Expr::Var(v))
            }
            Tok::Sym("(") => {
                self.bump();
                let e = self.expr()?;
                self.sym(")")?;
                Ok(e)
            }
            _ => self.fail(&["number", "variable", "`(`", "`d(`"]),
        }
    }
}
