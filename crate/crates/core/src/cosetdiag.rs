//! Cosets of the classical pairs as strings over `{∧, ∨, ∘}`.

use std::fmt;

use crate::coxeter::{enumerate_cosets, BruhatGraph, CosetKey, Family, Move, Node, PairSpec};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Sym {
    /// ∧
    Up,
    /// ∨
    Down,
    /// ∘
    Circ,
}

impl Sym {
    pub fn ascii(self) -> char {
        match self {
            Sym::Up => '^',
            Sym::Down => 'v',
            Sym::Circ => 'o',
        }
    }

    pub fn pretty(self) -> char {
        match self {
            Sym::Up => '∧',
            Sym::Down => '∨',
            Sym::Circ => '∘',
        }
    }

    pub fn flip(self) -> Sym {
        match self {
            Sym::Up => Sym::Down,
            Sym::Down => Sym::Up,
            Sym::Circ => Sym::Circ,
        }
    }

    pub fn from_char(c: char) -> Option<Sym> {
        match c {
            '^' | '∧' => Some(Sym::Up),
            'v' | '∨' => Some(Sym::Down),
            'o' | '∘' => Some(Sym::Circ),
            _ => None,
        }
    }
}

/// Which diagram calculus a string belongs to. Type D comes in the usual
/// even-∧ copy and the odd-∧ copy used for contractions.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum DiagKind {
    A,
    C,
    D { odd: bool },
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct CosetDiagram {
    pub kind: DiagKind,
    pub symbols: Vec<Sym>,
}

impl fmt::Display for CosetDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.symbols {
            write!(f, "{}", s.ascii())?;
        }
        Ok(())
    }
}

impl CosetDiagram {
    pub fn parse(s: &str, kind: DiagKind) -> Result<Self> {
        let symbols = s
            .trim()
            .chars()
            .map(|c| Sym::from_char(c).ok_or_else(|| Error::Parse(format!("bad symbol {c:?} in {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let d = CosetDiagram { kind, symbols };
        d.validate()?;
        Ok(d)
    }

    pub fn pretty(&self) -> String {
        self.symbols.iter().map(|s| s.pretty()).collect()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn ups(&self) -> usize {
        self.symbols.iter().filter(|&&s| s == Sym::Up).count()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |why: &str| Err(Error::Parse(format!("{self}: {why}")));
        let circs: Vec<usize> = (0..self.len()).filter(|&i| self.symbols[i] == Sym::Circ).collect();
        match self.kind {
            DiagKind::A if !circs.is_empty() => bad("∘ in type A"),
            DiagKind::C if circs != [0] => bad("type C needs ∘ exactly at position 1"),
            DiagKind::D { .. } if !circs.is_empty() => bad("∘ in type D"),
            DiagKind::D { odd } if (self.ups() % 2 == 1) != odd => bad("wrong ∧ parity"),
            _ => Ok(()),
        }
    }

    pub fn initial_a(points: usize, ups: usize) -> Self {
        let mut symbols = vec![Sym::Up; ups];
        symbols.resize(points, Sym::Down);
        CosetDiagram {
            kind: DiagKind::A,
            symbols,
        }
    }

    /// `∘∨…∨` on `n + 1` points.
    pub fn initial_c(n: usize) -> Self {
        let mut symbols = vec![Sym::Circ];
        symbols.resize(n + 1, Sym::Down);
        CosetDiagram {
            kind: DiagKind::C,
            symbols,
        }
    }

    /// `∨…∨`, or `∧∨…∨` for the odd copy.
    pub fn initial_d(points: usize, odd: bool) -> Self {
        let mut symbols = vec![Sym::Down; points];
        if odd && points > 0 {
            symbols[0] = Sym::Up;
        }
        CosetDiagram {
            kind: DiagKind::D { odd },
            symbols,
        }
    }

    /// Generators acting on this many points.
    pub fn nodes(&self) -> Vec<Node> {
        let m = self.len();
        let plain = |from: usize| (from..m).map(|k| Node::Plain(k as u8));
        match self.kind {
            DiagKind::A => plain(1).collect(),
            DiagKind::C => std::iter::once(Node::Prime).chain(plain(2)).collect(),
            DiagKind::D { .. } if m >= 2 => std::iter::once(Node::DoublePrime).chain(plain(1)).collect(),
            DiagKind::D { .. } => Vec::new(),
        }
    }

    /// `s_i` swaps positions `i, i+1`; `s_{1'}` flips position 2;
    /// `s_{1''}` swaps and flips positions 1 and 2.
    pub fn act(&self, node: Node) -> Result<Self> {
        if !self.nodes().contains(&node) {
            return Err(Error::UnknownNode(format!("{node} on {self}")));
        }
        let mut out = self.clone();
        match node {
            Node::Plain(i) => out.symbols.swap(i as usize - 1, i as usize),
            Node::Prime => out.symbols[1] = out.symbols[1].flip(),
            Node::DoublePrime => {
                out.symbols.swap(0, 1);
                out.symbols[0] = out.symbols[0].flip();
                out.symbols[1] = out.symbols[1].flip();
            }
        }
        Ok(out)
    }

    fn up_positions(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.symbols[i] == Sym::Up).collect()
    }

    /// Strict partition attached to a type C/D diagram: an ∧ at 1-based
    /// position `p ≥ 2` contributes the part `p − 1`.
    fn parts(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.up_positions().into_iter().filter(|&i| i >= 1).collect();
        p.reverse();
        p
    }

    fn bruhat_leq(&self, other: &Self) -> bool {
        if self.kind != other.kind || self.len() != other.len() {
            return false;
        }
        match self.kind {
            DiagKind::A => {
                let (a, b) = (self.up_positions(), other.up_positions());
                a.len() == b.len() && a.iter().zip(&b).all(|(x, y)| x <= y)
            }
            DiagKind::C | DiagKind::D { .. } => {
                let (a, b) = (self.parts(), other.parts());
                a.len() <= b.len() && a.iter().zip(&b).all(|(x, y)| x <= y)
            }
        }
    }
}

/// Strict Bruhat comparison.
///
/// Type A compares sorted ∧ positions componentwise. In types C and D the
/// ∧ positions `p ≥ 2` give a strict partition `{p − 1}` and the order is
/// containment of shifted shapes.
pub fn bruhat_less(d1: &CosetDiagram, d2: &CosetDiagram) -> bool {
    d1 != d2 && d1.bruhat_leq(d2)
}

pub fn initial_diagram(spec: &PairSpec) -> Result<CosetDiagram> {
    spec.validate()?;
    match spec.family {
        Family::A => Ok(CosetDiagram::initial_a(spec.rank + 1, spec.k)),
        Family::C => Ok(CosetDiagram::initial_c(spec.rank)),
        Family::DA => Ok(CosetDiagram::initial_d(spec.rank, false)),
        _ => Err(Error::InvalidPair(format!("{spec} has no coset diagrams"))),
    }
}

pub fn act(d: &CosetDiagram, node: Node) -> Result<CosetDiagram> {
    d.act(node)
}

/// Bruhat graph generated by the diagram action from `start`; lengths are
/// BFS depths.
pub fn diagram_graph(start: &CosetDiagram) -> Result<BruhatGraph> {
    start.validate()?;
    let nodes = start.nodes();
    let ns = nodes.clone();
    BruhatGraph::build(nodes, CosetKey::Diagram(start.clone()), move |key, i| match key {
        CosetKey::Diagram(d) => {
            let next = d.act(ns[i]).expect("node belongs to the diagram");
            (next != *d).then_some(CosetKey::Diagram(next))
        }
        CosetKey::Weight(_) => None,
    })
}

/// Label-preserving isomorphism between the weight-orbit graph and the
/// diagram graph of a classical pair.
#[derive(Clone, Debug)]
pub struct ModelIso {
    pub weights: BruhatGraph,
    pub diagrams: BruhatGraph,
    /// weight id → diagram id
    pub to_diagram: Vec<usize>,
    /// diagram id → weight id
    pub to_weight: Vec<usize>,
}

impl ModelIso {
    pub fn diagram_of(&self, weight_id: usize) -> &CosetDiagram {
        self.diagrams.states[self.to_diagram[weight_id]]
            .diagram()
            .expect("diagram model")
    }
}

pub fn model_isomorphism(spec: &PairSpec) -> Result<ModelIso> {
    if !spec.is_classical() {
        return Err(Error::InvalidPair(format!("{spec} is not classical")));
    }
    let weights = enumerate_cosets(spec)?;
    let diagrams = diagram_graph(&initial_diagram(spec)?)?;
    let mismatch = |why: String| Error::Invariant(format!("model mismatch for {spec}: {why}"));
    if weights.len() != diagrams.len() || weights.nodes != diagrams.nodes {
        return Err(mismatch(format!("{} vs {} cosets", weights.len(), diagrams.len())));
    }
    let n = weights.len();
    let mut to_diagram = vec![usize::MAX; n];
    let mut to_weight = vec![usize::MAX; n];
    to_diagram[0] = 0;
    to_weight[0] = 0;
    let mut stack = vec![0usize];
    while let Some(w) = stack.pop() {
        let d = to_diagram[w];
        for i in 0..weights.nodes.len() {
            let (mw, md) = (weights.step(w, i), diagrams.step(d, i));
            match (mw, md) {
                (Move::Null, Move::Null) => {}
                (Move::Up(a), Move::Up(b)) | (Move::Down(a), Move::Down(b)) => {
                    if to_diagram[a] == usize::MAX && to_weight[b] == usize::MAX {
                        to_diagram[a] = b;
                        to_weight[b] = a;
                        stack.push(a);
                    } else if to_diagram[a] != b {
                        return Err(mismatch(format!(
                            "inconsistent edge {} at {}",
                            weights.nodes[i],
                            weights.label(w)
                        )));
                    }
                }
                _ => {
                    return Err(mismatch(format!(
                        "descent of {} differs at {}",
                        weights.nodes[i],
                        diagrams.label(d)
                    )))
                }
            }
        }
    }
    if to_diagram.contains(&usize::MAX) {
        return Err(mismatch("graph not connected".into()));
    }
    Ok(ModelIso {
        weights,
        diagrams,
        to_diagram,
        to_weight,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> CosetDiagram {
        CosetDiagram::parse(s, DiagKind::A).unwrap()
    }

    #[test]
    fn initials() {
        assert_eq!(initial_diagram(&PairSpec::a(3, 2)).unwrap().to_string(), "^^vv");
        assert_eq!(initial_diagram(&PairSpec::c(3)).unwrap().to_string(), "ovvv");
        assert_eq!(initial_diagram(&PairSpec::da(4)).unwrap().to_string(), "vvvv");
        assert!(initial_diagram(&PairSpec::e6()).is_err());
    }

    #[test]
    fn actions() {
        assert_eq!(a("^^vv").act(Node::Plain(2)).unwrap().to_string(), "^v^v");
        let c = CosetDiagram::parse("ovvv", DiagKind::C).unwrap();
        assert_eq!(c.act(Node::Prime).unwrap().to_string(), "o^vv");
        let d = CosetDiagram::parse("vvvv", DiagKind::D { odd: false }).unwrap();
        assert_eq!(d.act(Node::DoublePrime).unwrap().to_string(), "^^vv");
        assert!(c.act(Node::DoublePrime).is_err());
    }

    #[test]
    fn bruhat_examples() {
        assert!(bruhat_less(&a("^^vv"), &a("^v^v")));
        assert!(!bruhat_less(&a("v^^v"), &a("^vv^")));
        assert!(!bruhat_less(&a("^vv^"), &a("v^^v")));
        assert!(!bruhat_less(&a("^v^v"), &a("^v^v")));
        let c = |s| CosetDiagram::parse(s, DiagKind::C).unwrap();
        assert!(!bruhat_less(&c("ovv^"), &c("o^^v")));
        assert!(bruhat_less(&c("o^vv"), &c("o^^v")));
    }

    #[test]
    fn isomorphisms() {
        assert_eq!(model_isomorphism(&PairSpec::a(3, 2)).unwrap().to_diagram.len(), 6);
        assert_eq!(model_isomorphism(&PairSpec::c(3)).unwrap().to_diagram.len(), 8);
        assert_eq!(model_isomorphism(&PairSpec::da(4)).unwrap().to_diagram.len(), 8);
    }

    #[test]
    fn odd_copy_small() {
        let g = diagram_graph(&CosetDiagram::initial_d(2, true)).unwrap();
        assert_eq!(g.len(), 2);
        let g = diagram_graph(&CosetDiagram::initial_d(4, true)).unwrap();
        assert_eq!(g.len(), 8);
        let g = diagram_graph(&CosetDiagram::initial_a(1, 0)).unwrap();
        assert_eq!(g.len(), 1);
    }
}
