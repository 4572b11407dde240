//! Cartan data for the seven Hermitian symmetric families and the Bruhat
//! graph of minimal coset representatives, built as the orbit of a
//! fundamental weight.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::cosetdiag::CosetDiagram;
use crate::error::{Error, Result};

/// A node of the Dynkin diagram. The derived order puts `1'` before `1''`
/// before the plain nodes, which is the tie-break order used everywhere.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Node {
    Prime,
    DoublePrime,
    Plain(u8),
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Prime => write!(f, "1'"),
            Node::DoublePrime => write!(f, "1''"),
            Node::Plain(k) => write!(f, "{k}"),
        }
    }
}

impl FromStr for Node {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('s');
        match t {
            "1'" | "1′" => Ok(Node::Prime),
            "1''" | "1″" | "1\"" => Ok(Node::DoublePrime),
            _ => t
                .parse::<u8>()
                .ok()
                .filter(|k| *k >= 1)
                .map(Node::Plain)
                .ok_or_else(|| Error::UnknownNode(s.to_string())),
        }
    }
}

pub fn word_to_string(word: &[Node]) -> String {
    if word.is_empty() {
        return "∅".to_string();
    }
    word.iter().map(|n| format!("s{n}")).collect()
}

/// Parse a word written as `2,1,3` or `2 1 3` or `s2s1s3`.
pub fn parse_word(s: &str) -> Result<Vec<Node>> {
    let s = s.trim();
    if s.is_empty() || s == "∅" || s == "e" {
        return Ok(Vec::new());
    }
    if s.starts_with('s') && !s.contains([',', ' ']) {
        return s[1..].split('s').map(Node::from_str).collect();
    }
    s.split([',', ' '])
        .filter(|t| !t.is_empty())
        .map(Node::from_str)
        .collect()
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Family {
    A,
    B,
    C,
    DA,
    DD,
    E6D5,
    E7E6,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PairSpec {
    pub family: Family,
    pub rank: usize,
    /// Only meaningful for type A.
    pub k: usize,
}

impl PairSpec {
    pub fn a(n: usize, k: usize) -> Self {
        PairSpec {
            family: Family::A,
            rank: n,
            k,
        }
    }
    pub fn b(n: usize) -> Self {
        PairSpec {
            family: Family::B,
            rank: n,
            k: 0,
        }
    }
    pub fn c(n: usize) -> Self {
        PairSpec {
            family: Family::C,
            rank: n,
            k: 0,
        }
    }
    pub fn da(n: usize) -> Self {
        PairSpec {
            family: Family::DA,
            rank: n,
            k: 0,
        }
    }
    pub fn dd(n: usize) -> Self {
        PairSpec {
            family: Family::DD,
            rank: n,
            k: 0,
        }
    }
    pub fn e6() -> Self {
        PairSpec {
            family: Family::E6D5,
            rank: 6,
            k: 0,
        }
    }
    pub fn e7() -> Self {
        PairSpec {
            family: Family::E7E6,
            rank: 7,
            k: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.rank;
        let ok = match self.family {
            Family::A => n >= 1 && (1..=n).contains(&self.k),
            Family::B | Family::C => n >= 2,
            Family::DA | Family::DD => n >= 4,
            Family::E6D5 => n == 6,
            Family::E7E6 => n == 7,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidPair(self.to_string()))
        }
    }

    /// A, C and D-A have a coset-diagram model.
    pub fn is_classical(&self) -> bool {
        matches!(self.family, Family::A | Family::C | Family::DA)
    }

    pub fn is_simply_laced(&self) -> bool {
        !matches!(self.family, Family::B | Family::C)
    }

    /// Largest rank accepted without `KLTL_MAX_RANK`.
    pub fn default_max_rank(&self) -> usize {
        match self.family {
            Family::A => 12,
            Family::E6D5 => 6,
            Family::E7E6 => 7,
            _ => 10,
        }
    }

    pub fn check_rank_guard(&self) -> Result<()> {
        if matches!(self.family, Family::E6D5 | Family::E7E6) {
            return Ok(());
        }
        let limit = std::env::var("KLTL_MAX_RANK")
            .ok()
            .and_then(|v| v.parse::<usize>().ok())
            .unwrap_or_else(|| self.default_max_rank());
        if self.rank > limit {
            return Err(Error::RankGuard(format!(
                "{self} exceeds rank limit {limit} (set KLTL_MAX_RANK to raise it)"
            )));
        }
        Ok(())
    }

    /// Expected number of minimal coset representatives.
    pub fn coset_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => binom(n + 1, self.k),
            Family::B | Family::DD => 2 * n,
            Family::C => 1 << n,
            Family::DA => 1 << (n - 1),
            Family::E6D5 => 27,
            Family::E7E6 => 56,
        }
    }
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

impl fmt::Display for PairSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::A => write!(f, "A:{}:{}", self.rank, self.k),
            Family::B => write!(f, "B:{}", self.rank),
            Family::C => write!(f, "C:{}", self.rank),
            Family::DA => write!(f, "DA:{}", self.rank),
            Family::DD => write!(f, "DD:{}", self.rank),
            Family::E6D5 => write!(f, "E6D5"),
            Family::E7E6 => write!(f, "E7E6"),
        }
    }
}

impl FromStr for PairSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidPair(s.to_string());
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |i: usize| -> Result<usize> { parts.get(i).and_then(|p| p.parse().ok()).ok_or_else(bad) };
        let spec = match (parts[0], parts.len()) {
            ("A", 3) => PairSpec::a(num(1)?, num(2)?),
            ("B", 2) => PairSpec::b(num(1)?),
            ("C", 2) => PairSpec::c(num(1)?),
            ("DA", 2) => PairSpec::da(num(1)?),
            ("DD", 2) => PairSpec::dd(num(1)?),
            ("E6D5", 1) => PairSpec::e6(),
            ("E7E6", 1) => PairSpec::e7(),
            _ => return Err(bad()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Dynkin data. `cartan[i][k] = ⟨α_i, α_k^∨⟩`, so row `i` is `α_i` written
/// in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanData {
    pub family: Family,
    pub nodes: Vec<Node>,
    pub cartan: Vec<Vec<i32>>,
    pub m: Vec<Vec<u8>>,
    pub short: Vec<bool>,
    pub excluded: usize,
}

impl CartanData {
    pub fn rank(&self) -> usize {
        self.nodes.len()
    }

    pub fn index_of(&self, node: Node) -> Result<usize> {
        self.nodes
            .iter()
            .position(|&n| n == node)
            .ok_or_else(|| Error::UnknownNode(node.to_string()))
    }

    pub fn commute(&self, i: usize, j: usize) -> bool {
        self.m[i][j] == 2
    }

    /// Apply `s_i` to a weight: `v ↦ v − ⟨v, α_i^∨⟩ α_i`.
    pub fn reflect(&self, v: &[i32], i: usize) -> Vec<i32> {
        let c = v[i];
        v.iter().zip(&self.cartan[i]).map(|(x, a)| x - c * a).collect()
    }

    /// The fundamental weight at the excluded node: the identity coset.
    pub fn base_weight(&self) -> Vec<i32> {
        let mut v = vec![0; self.rank()];
        v[self.excluded] = 1;
        v
    }

    /// Vector of the coset reached from the identity by `word`.
    pub fn act_word(&self, word: &[usize]) -> Vec<i32> {
        word.iter().fold(self.base_weight(), |v, &i| self.reflect(&v, i))
    }
}

fn assemble(
    family: Family,
    nodes: Vec<Node>,
    bonds: &[(usize, usize, i32, i32)],
    short: Vec<bool>,
    excluded: usize,
) -> CartanData {
    let r = nodes.len();
    let mut cartan = vec![vec![0; r]; r];
    for (i, row) in cartan.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(i, j, aij, aji) in bonds {
        cartan[i][j] = aij;
        cartan[j][i] = aji;
    }
    let m = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| match (i == j, cartan[i][j] * cartan[j][i]) {
                    (true, _) => 1,
                    (_, 0) => 2,
                    (_, 1) => 3,
                    (_, 2) => 4,
                    (_, p) => unreachable!("bond product {p}"),
                })
                .collect()
        })
        .collect();
    CartanData {
        family,
        nodes,
        cartan,
        m,
        short,
        excluded,
    }
}

fn path_bonds(from: usize, to: usize) -> Vec<(usize, usize, i32, i32)> {
    (from..to).map(|i| (i, i + 1, -1, -1)).collect()
}

pub fn cartan_data(spec: &PairSpec) -> Result<CartanData> {
    spec.validate()?;
    let n = spec.rank;
    let plain = |range: std::ops::RangeInclusive<usize>| range.map(|k| Node::Plain(k as u8));
    Ok(match spec.family {
        Family::A => assemble(
            Family::A,
            plain(1..=n).collect(),
            &path_bonds(0, n - 1),
            vec![false; n],
            spec.k - 1,
        ),
        Family::B | Family::C => {
            let nodes = std::iter::once(Node::Prime).chain(plain(2..=n)).collect();
            let mut bonds = path_bonds(1, n - 1);
            if spec.family == Family::B {
                // α_{1'} short
                bonds.push((0, 1, -1, -2));
                let mut short = vec![false; n];
                short[0] = true;
                assemble(Family::B, nodes, &bonds, short, n - 1)
            } else {
                // α_{1'} long, the rest short
                bonds.push((0, 1, -2, -1));
                let mut short = vec![true; n];
                short[0] = false;
                assemble(Family::C, nodes, &bonds, short, 0)
            }
        }
        Family::DA | Family::DD => {
            let nodes = [Node::DoublePrime].into_iter().chain(plain(1..=n - 1)).collect();
            let mut bonds = path_bonds(1, n - 1);
            bonds.push((0, 2, -1, -1));
            let excluded = if spec.family == Family::DA { 0 } else { n - 1 };
            assemble(spec.family, nodes, &bonds, vec![false; n], excluded)
        }
        Family::E6D5 => {
            let mut bonds = path_bonds(0, 4);
            bonds.push((2, 5, -1, -1));
            assemble(Family::E6D5, plain(1..=6).collect(), &bonds, vec![false; 6], 0)
        }
        Family::E7E6 => {
            let mut bonds = path_bonds(0, 5);
            bonds.push((3, 6, -1, -1));
            assemble(Family::E7E6, plain(1..=7).collect(), &bonds, vec![false; 7], 0)
        }
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Descent {
    Up,
    Down,
    Null,
}

/// Descent read off the pairing `⟨v, α_i^∨⟩`: positive means `λs_i > λ`.
pub fn descent(_cartan: &CartanData, vector: &[i32], i: usize) -> Descent {
    match vector[i].signum() {
        1 => Descent::Up,
        -1 => Descent::Down,
        _ => Descent::Null,
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum CosetKey {
    Weight(Vec<i32>),
    Diagram(CosetDiagram),
}

impl fmt::Display for CosetKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CosetKey::Weight(v) => write!(f, "{v:?}"),
            CosetKey::Diagram(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetState {
    pub id: usize,
    pub key: CosetKey,
    pub length: usize,
    pub word: Vec<Node>,
}

impl CosetState {
    pub fn vector(&self) -> Option<&[i32]> {
        match &self.key {
            CosetKey::Weight(v) => Some(v),
            CosetKey::Diagram(_) => None,
        }
    }

    pub fn diagram(&self) -> Option<&CosetDiagram> {
        match &self.key {
            CosetKey::Diagram(d) => Some(d),
            CosetKey::Weight(_) => None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Move {
    Up(usize),
    Down(usize),
    Null,
}

impl Move {
    pub fn target(self) -> Option<usize> {
        match self {
            Move::Up(t) | Move::Down(t) => Some(t),
            Move::Null => None,
        }
    }

    pub fn descent(self) -> Descent {
        match self {
            Move::Up(_) => Descent::Up,
            Move::Down(_) => Descent::Down,
            Move::Null => Descent::Null,
        }
    }
}

/// Cosets in BFS order (the `id`) with the action of every generator.
#[derive(Clone, Debug)]
pub struct BruhatGraph {
    pub nodes: Vec<Node>,
    pub states: Vec<CosetState>,
    moves: Vec<Vec<Move>>,
    order: Vec<usize>,
    position: Vec<usize>,
    index: HashMap<CosetKey, usize>,
}

impl BruhatGraph {
    /// Breadth-first orbit of `start`. `act(key, i)` returns `None` when
    /// `s_i` fixes the coset. Parents are scanned in id order and generators
    /// in node order, which fixes the canonical words.
    pub fn build(
        nodes: Vec<Node>,
        start: CosetKey,
        act: impl Fn(&CosetKey, usize) -> Option<CosetKey>,
    ) -> Result<Self> {
        let mut states = vec![CosetState {
            id: 0,
            key: start.clone(),
            length: 0,
            word: Vec::new(),
        }];
        let mut index = HashMap::from([(start, 0usize)]);
        let mut raw: Vec<Vec<Option<usize>>> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(id) = queue.pop_front() {
            let mut row = Vec::with_capacity(nodes.len());
            for (i, &node) in nodes.iter().enumerate() {
                let Some(next) = act(&states[id].key, i) else {
                    row.push(None);
                    continue;
                };
                let t = match index.get(&next) {
                    Some(&t) => t,
                    None => {
                        let t = states.len();
                        let mut word = states[id].word.clone();
                        word.push(node);
                        states.push(CosetState {
                            id: t,
                            key: next.clone(),
                            length: states[id].length + 1,
                            word,
                        });
                        index.insert(next, t);
                        queue.push_back(t);
                        t
                    }
                };
                row.push(Some(t));
            }
            raw.push(row);
        }
        let mut moves = Vec::with_capacity(states.len());
        for (id, row) in raw.iter().enumerate() {
            let mut mv = Vec::with_capacity(row.len());
            for t in row {
                mv.push(match *t {
                    None => Move::Null,
                    Some(t) if states[t].length == states[id].length + 1 => Move::Up(t),
                    Some(t) if states[t].length + 1 == states[id].length => Move::Down(t),
                    Some(t) => {
                        return Err(Error::Invariant(format!(
                            "edge {} -> {} does not change length by one",
                            states[id].key, states[t].key
                        )))
                    }
                });
            }
            moves.push(mv);
        }
        let mut order: Vec<usize> = (0..states.len()).collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(states[i].length), i));
        let mut position = vec![0; order.len()];
        for (p, &i) in order.iter().enumerate() {
            position[i] = p;
        }
        Ok(BruhatGraph {
            nodes,
            states,
            moves,
            order,
            position,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn node_index(&self, node: Node) -> Result<usize> {
        self.nodes
            .iter()
            .position(|&n| n == node)
            .ok_or_else(|| Error::UnknownNode(node.to_string()))
    }

    pub fn step(&self, id: usize, i: usize) -> Move {
        self.moves[id][i]
    }

    pub fn descent(&self, id: usize, i: usize) -> Descent {
        self.moves[id][i].descent()
    }

    pub fn find(&self, key: &CosetKey) -> Option<usize> {
        self.index.get(key).copied()
    }

    /// Ids from the maximum down: length descending, then id ascending.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn position(&self, id: usize) -> usize {
        self.position[id]
    }

    pub fn top(&self) -> usize {
        self.order[0]
    }

    pub fn canonical_word(&self, id: usize) -> &[Node] {
        &self.states[id].word
    }

    pub fn word_indices(&self, id: usize) -> Vec<usize> {
        self.states[id]
            .word
            .iter()
            .map(|&n| self.node_index(n).expect("word letters are graph nodes"))
            .collect()
    }

    /// Human-readable name: the symbol string for diagrams, else the word.
    pub fn label(&self, id: usize) -> String {
        match &self.states[id].key {
            CosetKey::Diagram(d) => d.to_string(),
            CosetKey::Weight(_) => word_to_string(&self.states[id].word),
        }
    }

    /// Follow `word` from `from`; `None` if a letter fixes the coset.
    pub fn walk(&self, from: usize, word: &[usize]) -> Option<usize> {
        word.iter().try_fold(from, |at, &i| self.moves[at][i].target())
    }

    /// `leq[a][b]` iff `a ≤ b`, as the closure of the cover relation.
    pub fn bruhat_leq(&self) -> Vec<Vec<bool>> {
        let n = self.len();
        let mut leq = vec![vec![false; n]; n];
        let mut by_len: Vec<usize> = (0..n).collect();
        by_len.sort_by_key(|&i| (self.states[i].length, i));
        for &b in &by_len {
            leq[b][b] = true;
            for mv in &self.moves[b] {
                if let Move::Down(c) = *mv {
                    for a in 0..n {
                        if leq[a][c] {
                            leq[a][b] = true;
                        }
                    }
                }
            }
        }
        leq
    }
}

/// Minimal coset representatives as the orbit of the excluded fundamental
/// weight.
pub fn enumerate_cosets(spec: &PairSpec) -> Result<BruhatGraph> {
    spec.check_rank_guard()?;
    let cd = cartan_data(spec)?;
    let graph = BruhatGraph::build(
        cd.nodes.clone(),
        CosetKey::Weight(cd.base_weight()),
        |key, i| match key {
            CosetKey::Weight(v) if v[i] != 0 => Some(CosetKey::Weight(cd.reflect(v, i))),
            _ => None,
        },
    )?;
    for s in &graph.states {
        let v = s.vector().expect("weight model");
        for i in 0..cd.rank() {
            let by_sign = descent(&cd, v, i);
            if by_sign != graph.descent(s.id, i) {
                return Err(Error::Invariant(format!(
                    "pairing sign disagrees with length at {} node {}",
                    graph.label(s.id),
                    cd.nodes[i]
                )));
            }
        }
    }
    Ok(graph)
}
