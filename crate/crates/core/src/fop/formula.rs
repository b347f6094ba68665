//! First-order formulas over labeled graphs: an s-expression parser and a
//! brute-force evaluator.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::LabeledGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantifier {
    Exists,
    Forall,
}

/// Formula body; variables are resolved to slots, free variables first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    Quant(Quantifier, Vec<usize>, Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Not(Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Edge(usize, usize),
    EdgeL(String, usize, usize),
    Eq(usize, usize),
    Label(String, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoFormula {
    pub free_vars: Vec<String>,
    pub body: Formula,
    /// Names of all slots; the first `k` are the free variables.
    pub slot_names: Vec<String>,
    /// Leading quantifier block of the body, in order.
    pub prefix: Vec<(Quantifier, String)>,
    /// Number of quantified variables.
    pub ell: usize,
    /// Every quantifier is existential once negations are pushed inward.
    pub existential: bool,
}

impl FoFormula {
    pub fn k(&self) -> usize {
        self.free_vars.len()
    }

    pub fn num_slots(&self) -> usize {
        self.slot_names.len()
    }
}

#[derive(Debug)]
enum Sexp {
    Atom(String, usize),
    List(Vec<Sexp>, usize),
}

impl Sexp {
    fn pos(&self) -> usize {
        match self {
            Sexp::Atom(_, p) | Sexp::List(_, p) => *p,
        }
    }
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::FormulaSyntax { pos, msg: msg.into() }
}

fn read_sexp(text: &str) -> Result<Sexp> {
    let bytes = text.as_bytes();
    let mut stack: Vec<(Vec<Sexp>, usize)> = Vec::new();
    let mut done: Option<Sexp> = None;
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b';' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
                continue;
            }
            c if c.is_ascii_whitespace() => {}
            b'(' => {
                if done.is_some() {
                    return Err(syntax(i, "trailing input after formula"));
                }
                stack.push((Vec::new(), i));
            }
            b')' => {
                let (items, start) = stack.pop().ok_or_else(|| syntax(i, "unbalanced `)`"))?;
                let list = Sexp::List(items, start);
                match stack.last_mut() {
                    Some((parent, _)) => parent.push(list),
                    None => done = Some(list),
                }
            }
            _ => {
                let start = i;
                while i < bytes.len() && !bytes[i].is_ascii_whitespace() && bytes[i] != b'(' && bytes[i] != b')' {
                    i += 1;
                }
                let atom = Sexp::Atom(text[start..i].to_string(), start);
                match stack.last_mut() {
                    Some((parent, _)) => parent.push(atom),
                    None => return Err(syntax(start, "expected `(`")),
                }
                continue;
            }
        }
        i += 1;
    }
    if let Some((_, start)) = stack.last() {
        return Err(syntax(*start, "unclosed `(`"));
    }
    done.ok_or_else(|| syntax(0, "empty formula"))
}

struct Builder {
    slot_names: Vec<String>,
    scope: HashMap<String, Vec<usize>>,
}

impl Builder {
    fn var(&self, s: &Sexp) -> Result<usize> {
        match s {
            Sexp::Atom(name, _) => self
                .scope
                .get(name)
                .and_then(|v| v.last().copied())
                .ok_or_else(|| Error::UnboundVariable(name.clone())),
            Sexp::List(_, p) => Err(syntax(*p, "expected a variable")),
        }
    }

    fn name(s: &Sexp) -> Result<String> {
        match s {
            Sexp::Atom(name, _) => Ok(name.clone()),
            Sexp::List(_, p) => Err(syntax(*p, "expected a name")),
        }
    }

    fn var_list(s: &Sexp) -> Result<Vec<String>> {
        match s {
            Sexp::List(items, p) => {
                if items.is_empty() {
                    return Err(syntax(*p, "empty variable list"));
                }
                items.iter().map(Builder::name).collect()
            }
            Sexp::Atom(_, p) => Err(syntax(*p, "expected a variable list")),
        }
    }

    fn bind(&mut self, name: &str) -> usize {
        let slot = self.slot_names.len();
        self.slot_names.push(name.to_string());
        self.scope.entry(name.to_string()).or_default().push(slot);
        slot
    }

    fn unbind(&mut self, name: &str) {
        self.scope.get_mut(name).and_then(Vec::pop);
    }

    fn body(&mut self, s: &Sexp) -> Result<Formula> {
        let (items, pos) = match s {
            Sexp::List(items, p) => (items, *p),
            Sexp::Atom(a, p) => return Err(syntax(*p, format!("expected a subformula, found `{a}`"))),
        };
        let head = match items.first() {
            Some(Sexp::Atom(h, _)) => h.as_str(),
            _ => return Err(syntax(pos, "expected an operator")),
        };
        let args = &items[1..];
        let arity = |n: usize| -> Result<()> {
            if args.len() == n {
                Ok(())
            } else {
                Err(syntax(pos, format!("`{head}` takes {n} arguments, got {}", args.len())))
            }
        };
        Ok(match head {
            "exists" | "forall" => {
                arity(2)?;
                let names = Builder::var_list(&args[0])?;
                let slots: Vec<usize> = names.iter().map(|n| self.bind(n)).collect();
                let inner = self.body(&args[1]);
                for n in names.iter().rev() {
                    self.unbind(n);
                }
                let q = if head == "exists" { Quantifier::Exists } else { Quantifier::Forall };
                Formula::Quant(q, slots, Box::new(inner?))
            }
            "and" => Formula::And(args.iter().map(|a| self.body(a)).collect::<Result<_>>()?),
            "or" => Formula::Or(args.iter().map(|a| self.body(a)).collect::<Result<_>>()?),
            "not" => {
                arity(1)?;
                Formula::Not(Box::new(self.body(&args[0])?))
            }
            "imp" => {
                arity(2)?;
                Formula::Imp(Box::new(self.body(&args[0])?), Box::new(self.body(&args[1])?))
            }
            "edge" => {
                arity(2)?;
                Formula::Edge(self.var(&args[0])?, self.var(&args[1])?)
            }
            "edgel" => {
                arity(3)?;
                Formula::EdgeL(Builder::name(&args[0])?, self.var(&args[1])?, self.var(&args[2])?)
            }
            "=" => {
                arity(2)?;
                Formula::Eq(self.var(&args[0])?, self.var(&args[1])?)
            }
            "label" => {
                arity(2)?;
                Formula::Label(Builder::name(&args[0])?, self.var(&args[1])?)
            }
            other => return Err(syntax(items[0].pos(), format!("unknown operator `{other}`"))),
        })
    }
}

/// Counts quantified variables and checks that every quantifier is
/// existential under its polarity.
fn scan(f: &Formula, positive: bool, ell: &mut usize) -> bool {
    match f {
        Formula::Quant(q, slots, inner) => {
            *ell += slots.len();
            let effective_exists = (*q == Quantifier::Exists) == positive;
            scan(inner, positive, ell) && effective_exists
        }
        Formula::And(fs) | Formula::Or(fs) => fs.iter().fold(true, |ok, g| scan(g, positive, ell) && ok),
        Formula::Not(g) => scan(g, !positive, ell),
        Formula::Imp(a, b) => {
            let left = scan(a, !positive, ell);
            scan(b, positive, ell) && left
        }
        _ => true,
    }
}

pub fn parse_formula(text: &str) -> Result<FoFormula> {
    let top = read_sexp(text)?;
    let Sexp::List(items, pos) = &top else {
        return Err(syntax(top.pos(), "expected `(free (...) BODY)`"));
    };
    match items.first() {
        Some(Sexp::Atom(h, _)) if h == "free" => {}
        _ => return Err(syntax(*pos, "formula must start with `free`")),
    }
    if items.len() != 3 {
        return Err(syntax(*pos, "expected `(free (x1 ... xk) BODY)`"));
    }
    let free_vars = Builder::var_list(&items[1])?;
    for (i, v) in free_vars.iter().enumerate() {
        if free_vars[..i].contains(v) {
            return Err(syntax(items[1].pos(), format!("free variable `{v}` listed twice")));
        }
    }
    let mut b = Builder {
        slot_names: Vec::new(),
        scope: HashMap::new(),
    };
    for v in &free_vars {
        b.bind(v);
    }
    let body = b.body(&items[2])?;
    let mut prefix = Vec::new();
    let mut cur = &body;
    while let Formula::Quant(q, slots, inner) = cur {
        prefix.extend(slots.iter().map(|&s| (*q, b.slot_names[s].clone())));
        cur = inner;
    }
    let mut ell = 0;
    let existential = scan(&body, true, &mut ell);
    Ok(FoFormula {
        free_vars,
        body,
        slot_names: b.slot_names,
        prefix,
        ell,
        existential,
    })
}

fn holds(g: &LabeledGraph, f: &Formula, env: &mut [usize]) -> bool {
    match f {
        Formula::Quant(q, slots, inner) => quantify(g, *q, slots, inner, env),
        Formula::And(fs) => fs.iter().all(|h| holds(g, h, env)),
        Formula::Or(fs) => fs.iter().any(|h| holds(g, h, env)),
        Formula::Not(h) => !holds(g, h, env),
        Formula::Imp(a, b) => !holds(g, a, env) || holds(g, b, env),
        Formula::Edge(a, b) => g.base.has_edge(env[*a], env[*b]),
        Formula::EdgeL(name, a, b) => g.has_edge_label(name, env[*a], env[*b]),
        Formula::Eq(a, b) => env[*a] == env[*b],
        Formula::Label(name, a) => g.has_vertex_label(name, env[*a]),
    }
}

fn quantify(g: &LabeledGraph, q: Quantifier, slots: &[usize], inner: &Formula, env: &mut [usize]) -> bool {
    let Some((&first, rest)) = slots.split_first() else {
        return holds(g, inner, env);
    };
    let check = |v: usize, env: &mut [usize]| {
        env[first] = v;
        quantify(g, q, rest, inner, env)
    };
    match q {
        Quantifier::Exists => (0..g.base.n()).any(|v| check(v, env)),
        Quantifier::Forall => (0..g.base.n()).all(|v| check(v, env)),
    }
}

/// `G ⊨ φ(w)`.
pub fn eval(g: &LabeledGraph, phi: &FoFormula, w: &[usize]) -> Result<bool> {
    if w.len() != phi.k() {
        return Err(Error::Arity { expected: phi.k(), got: w.len() });
    }
    if let Some(&v) = w.iter().find(|&&v| v >= g.base.n()) {
        return Err(Error::InvalidParameter(format!("vertex {v} out of range")));
    }
    let mut env = vec![0; phi.num_slots()];
    env[..w.len()].copy_from_slice(w);
    Ok(holds(g, &phi.body, &mut env))
}

impl fmt::Display for FoFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(ff: &Formula, names: &[String], f: &mut fmt::Formatter<'_>) -> fmt::Result {
            let list = |fs: &[Formula], op: &str, f: &mut fmt::Formatter<'_>| -> fmt::Result {
                write!(f, "({op}")?;
                for g in fs {
                    write!(f, " ")?;
                    go(g, names, f)?;
                }
                write!(f, ")")
            };
            match ff {
                Formula::Quant(q, slots, inner) => {
                    let op = if *q == Quantifier::Exists { "exists" } else { "forall" };
                    let vs: Vec<&str> = slots.iter().map(|&s| names[s].as_str()).collect();
                    write!(f, "({op} ({}) ", vs.join(" "))?;
                    go(inner, names, f)?;
                    write!(f, ")")
                }
                Formula::And(fs) => list(fs, "and", f),
                Formula::Or(fs) => list(fs, "or", f),
                Formula::Not(g) => {
                    write!(f, "(not ")?;
                    go(g, names, f)?;
                    write!(f, ")")
                }
                Formula::Imp(a, b) => {
                    write!(f, "(imp ")?;
                    go(a, names, f)?;
                    write!(f, " ")?;
                    go(b, names, f)?;
                    write!(f, ")")
                }
                Formula::Edge(a, b) => write!(f, "(edge {} {})", names[*a], names[*b]),
                Formula::EdgeL(l, a, b) => write!(f, "(edgel {l} {} {})", names[*a], names[*b]),
                Formula::Eq(a, b) => write!(f, "(= {} {})", names[*a], names[*b]),
                Formula::Label(l, a) => write!(f, "(label {l} {})", names[*a]),
            }
        }
        write!(f, "(free ({}) ", self.free_vars.join(" "))?;
        go(&self.body, &self.slot_names, f)?;
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_family, Family, Graph};

    const IOTA2: &str = "(free (x1 x2) (and (not (edge x1 x2)) (not (= x1 x2))))";
    const COMMON: &str = "(free (x1 x2) (exists (z) (and (edge x1 z) (edge x2 z))))";
    const DELTA: &str = "(free (x1) (forall (y) (or (edge x1 y) (= x1 y))))";

    #[test]
    fn parse_flags() {
        let f = parse_formula(IOTA2).unwrap();
        assert_eq!((f.k(), f.ell, f.existential), (2, 0, true));
        let f = parse_formula(COMMON).unwrap();
        assert_eq!((f.k(), f.ell, f.existential), (2, 1, true));
        assert_eq!(f.prefix, vec![(Quantifier::Exists, "z".to_string())]);
        let f = parse_formula(DELTA).unwrap();
        assert_eq!((f.k(), f.ell, f.existential), (1, 1, false));
        // A negated universal is existential; a negated existential is not.
        assert!(parse_formula("(free (x) (not (forall (y) (edge x y))))").unwrap().existential);
        assert!(!parse_formula("(free (x) (imp (exists (y) (edge x y)) (= x x)))").unwrap().existential);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_formula("(free (x1) (edge x1 y))"),
            Err(Error::UnboundVariable(v)) if v == "y"
        ));
        assert!(matches!(parse_formula("(free (x1) (edge x1 x1)"), Err(Error::FormulaSyntax { pos: 0, .. })));
        assert!(matches!(parse_formula("(free (x1) (frob x1))"), Err(Error::FormulaSyntax { pos: 12, .. })));
        assert!(parse_formula("(free (x1) (not))").is_err());
        assert!(parse_formula("(free (x x) (= x x))").is_err());
        assert!(parse_formula("").is_err());
    }

    #[test]
    fn display_round_trips() {
        for t in [IOTA2, COMMON, DELTA, "(free (a) (imp (label red a) (exists (b c) (edgel blue a b))))"] {
            let f = parse_formula(t).unwrap();
            assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
        }
    }

    #[test]
    fn evaluation() {
        let p3: LabeledGraph = generate_family(Family::Path, &[3]).unwrap().into();
        let iota = parse_formula(IOTA2).unwrap();
        assert!(eval(&p3, &iota, &[0, 2]).unwrap());
        assert!(!eval(&p3, &iota, &[0, 1]).unwrap());
        assert!(eval(&p3, &parse_formula(COMMON).unwrap(), &[0, 2]).unwrap());
        let k2: LabeledGraph = Graph::from_edges(2, &[(0, 1)]).unwrap().into();
        assert!(eval(&k2, &parse_formula(DELTA).unwrap(), &[0]).unwrap());
        assert!(matches!(eval(&k2, &iota, &[0]), Err(Error::Arity { expected: 2, got: 1 })));
    }

    #[test]
    fn labels_and_shadowing() {
        let mut g = LabeledGraph::new(Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap());
        g.add_vertex_label("red", 2).unwrap();
        g.add_edge_label("blue", 1, 2).unwrap();
        let f = parse_formula("(free (x) (exists (y) (and (edgel blue x y) (label red y))))").unwrap();
        assert!(eval(&g, &f, &[1]).unwrap());
        assert!(!eval(&g, &f, &[0]).unwrap());
        // The inner `x` shadows the free one.
        let f = parse_formula("(free (x) (exists (x) (label red x)))").unwrap();
        assert!(eval(&g, &f, &[0]).unwrap());
    }
}
