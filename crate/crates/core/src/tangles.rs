//! Decorated tangles, oriented Temperley–Lieb diagrams and the closed
//! description of `Δ`, `N` and `B` for the classical pairs.
//!
//! A tangle on `n` points has top vertices `0..n` and bottom vertices
//! `n..2n` (bottom `j'` is `n + j - 1`). Around the frame the boundary reads
//! left wall, `1, …, n`, right wall, `n', …, 1'`.

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cosetdiag::{initial_diagram, model_isomorphism, CosetDiagram, DiagKind, Sym};
use crate::coxeter::{Family, Node, PairSpec};
use crate::error::{Error, Result};
use crate::laurent::SqMatrix;
use crate::{Integer, KLMatrices, LaurentPoly};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum TangleKind {
    A,
    C,
    D,
}

impl TangleKind {
    pub fn of_spec(spec: &PairSpec) -> Result<(TangleKind, usize)> {
        spec.validate()?;
        match spec.family {
            Family::A => Ok((TangleKind::A, spec.rank + 1)),
            Family::C => Ok((TangleKind::C, spec.rank + 1)),
            Family::DA => Ok((TangleKind::D, spec.rank)),
            _ => Err(Error::InvalidPair(format!("{spec} has no tangle calculus"))),
        }
    }

    pub fn of_diagram(kind: DiagKind) -> TangleKind {
        match kind {
            DiagKind::A => TangleKind::A,
            DiagKind::C => TangleKind::C,
            DiagKind::D { .. } => TangleKind::D,
        }
    }
}

/// One strand, `a < b`, with its bead count.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Strand {
    pub a: usize,
    pub b: usize,
    pub beads: u8,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Tangle {
    pub kind: TangleKind,
    n: usize,
    partner: Vec<usize>,
    /// Indexed by the smaller endpoint of each strand.
    beads: Vec<u8>,
}

impl Tangle {
    pub fn identity(kind: TangleKind, n: usize) -> Tangle {
        let partner = (0..2 * n).map(|p| if p < n { p + n } else { p - n }).collect();
        Tangle {
            kind,
            n,
            partner,
            beads: vec![0; 2 * n],
        }
    }

    /// Builds and validates a tangle from 0-based endpoint pairs and the
    /// bead count of each strand (keyed by either endpoint).
    pub fn from_pairs(kind: TangleKind, n: usize, pairs: &[(usize, usize)], beads: &[(usize, u8)]) -> Result<Tangle> {
        let mut partner = vec![usize::MAX; 2 * n];
        for &(p, q) in pairs {
            if p >= 2 * n || q >= 2 * n || p == q || partner[p] != usize::MAX || partner[q] != usize::MAX {
                return Err(Error::Shape(format!("bad pair ({p}, {q}) on {n} points")));
            }
            partner[p] = q;
            partner[q] = p;
        }
        if partner.contains(&usize::MAX) {
            return Err(Error::Shape("matching is not perfect".into()));
        }
        let mut t = Tangle {
            kind,
            n,
            partner,
            beads: vec![0; 2 * n],
        };
        for &(p, c) in beads {
            if p >= 2 * n {
                return Err(Error::Shape(format!("bead on missing point {p}")));
            }
            let a = p.min(t.partner[p]);
            t.beads[a] = t.beads[a].saturating_add(c);
        }
        t.validate()?;
        Ok(t)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn partner(&self, p: usize) -> usize {
        self.partner[p]
    }

    pub fn beads_at(&self, p: usize) -> u8 {
        self.beads[p.min(self.partner[p])]
    }

    pub fn strands(&self) -> Vec<Strand> {
        (0..2 * self.n)
            .filter(|&p| p < self.partner[p])
            .map(|p| Strand {
                a: p,
                b: self.partner[p],
                beads: self.beads[p],
            })
            .collect()
    }

    pub fn total_beads(&self) -> usize {
        self.beads.iter().map(|&b| b as usize).sum()
    }

    pub fn is_top(&self, p: usize) -> bool {
        p < self.n
    }

    /// Position of a vertex in the boundary order `1, …, n, n', …, 1'`.
    fn boundary(&self, p: usize) -> usize {
        if p < self.n {
            p
        } else {
            3 * self.n - 1 - p
        }
    }

    fn chord(&self, s: &Strand) -> (usize, usize) {
        let (x, y) = (self.boundary(s.a), self.boundary(s.b));
        (x.min(y), x.max(y))
    }

    pub fn is_planar(&self) -> bool {
        let chords: Vec<_> = self.strands().iter().map(|s| self.chord(s)).collect();
        chords.iter().enumerate().all(|(i, &(a, b))| {
            chords[i + 1..]
                .iter()
                .all(|&(c, d)| !((a < c && c < b && b < d) || (c < a && a < d && d < b)))
        })
    }

    /// No other strand separates `s` from the left wall. The left wall sits
    /// between `1'` and `1`, outside every chord interval, so this says
    /// that `s` is not nested inside another strand.
    pub fn left_exposed(&self, s: &Strand) -> bool {
        let (a, b) = self.chord(s);
        self.strands().iter().filter(|t| (t.a, t.b) != (s.a, s.b)).all(|t| {
            let (c, d) = self.chord(t);
            !(c < a && b < d)
        })
    }

    /// Green's basis conditions for the declared kind.
    pub fn validate(&self) -> Result<()> {
        let bad = |why: &str| Err(Error::Inadmissible(format!("{self}: {why}")));
        if !self.is_planar() {
            return bad("strands cross");
        }
        let strands = self.strands();
        for s in &strands {
            if s.beads > 1 {
                return bad("more than one bead on a strand");
            }
            if s.beads > 0 && !self.left_exposed(s) {
                return bad("bead on a strand that is not left-exposed");
            }
        }
        match self.kind {
            TangleKind::A if self.total_beads() > 0 => bad("beads in type A"),
            TangleKind::D if self.total_beads() % 2 == 1 => bad("odd number of beads in type D"),
            TangleKind::C if self.n > 0 => {
                let n = self.n;
                let first = self.partner[0];
                let arcs = |top: bool| strands.iter().any(|s| (s.a < n) == top && (s.b < n) == top);
                let ok = if first == n {
                    self.beads[0] == 0 || (arcs(true) && arcs(false))
                } else {
                    self.beads_at(0) > 0 && self.beads_at(n) > 0
                };
                if ok {
                    Ok(())
                } else {
                    bad("first vertices violate the type C conditions")
                }
            }
            _ => Ok(()),
        }
    }

    /// `{ "n", "pairs" (1-based, bottom as n+1..2n), "beads" }`.
    pub fn to_json(&self) -> Value {
        let strands = self.strands();
        let pairs: Vec<Value> = strands.iter().map(|s| json!([s.a + 1, s.b + 1])).collect();
        let beads: serde_json::Map<String, Value> = strands
            .iter()
            .enumerate()
            .filter(|(_, s)| s.beads > 0)
            .map(|(i, s)| (i.to_string(), json!(s.beads)))
            .collect();
        json!({ "n": self.n, "pairs": pairs, "beads": beads })
    }
}

impl std::fmt::Display for Tangle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = |p: usize| {
            if p < self.n {
                format!("{}", p + 1)
            } else {
                format!("{}'", p - self.n + 1)
            }
        };
        let parts: Vec<String> = self
            .strands()
            .iter()
            .map(|s| format!("{}-{}{}", name(s.a), name(s.b), "*".repeat(s.beads as usize)))
            .collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// The cap-cup generator `e_i`.
pub fn generator_tangle(node: Node, kind: TangleKind, n: usize) -> Result<Tangle> {
    let (left, beaded) = match (kind, node) {
        (TangleKind::C, Node::Prime) | (TangleKind::D, Node::DoublePrime) => (0, true),
        (TangleKind::A, Node::Plain(i)) if i >= 1 => (i as usize - 1, false),
        (TangleKind::C, Node::Plain(i)) if i >= 2 => (i as usize - 1, false),
        (TangleKind::D, Node::Plain(i)) if i >= 1 => (i as usize - 1, false),
        _ => return Err(Error::UnknownNode(format!("{node} for type {kind:?}"))),
    };
    if left + 1 >= n {
        return Err(Error::UnknownNode(format!("{node} on {n} points")));
    }
    let mut pairs = vec![(left, left + 1), (n + left, n + left + 1)];
    pairs.extend((0..n).filter(|&p| p != left && p != left + 1).map(|p| (p, p + n)));
    let beads = if beaded { vec![(left, 1), (n + left, 1)] } else { vec![] };
    Tangle::from_pairs(kind, n, &pairs, &beads)
}

pub fn spec_generator(spec: &PairSpec, node: Node) -> Result<Tangle> {
    let (kind, n) = TangleKind::of_spec(spec)?;
    generator_tangle(node, kind, n)
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct OrientedTangle {
    pub top: CosetDiagram,
    pub d: Tangle,
    pub bottom: CosetDiagram,
}

impl OrientedTangle {
    pub fn label(&self, p: usize) -> Sym {
        let n = self.d.n;
        if p < n {
            self.top.symbols[p]
        } else {
            self.bottom.symbols[p - n]
        }
    }

    fn strand_oriented(&self, s: &Strand) -> bool {
        let (x, y) = (self.label(s.a), self.label(s.b));
        if x == Sym::Circ || y == Sym::Circ {
            return true;
        }
        let propagating = s.a < self.d.n && s.b >= self.d.n;
        (x == y) == propagating
    }

    fn strand_flip(&self, s: &Strand) -> bool {
        let (x, y) = (self.label(s.a), self.label(s.b));
        if x == Sym::Circ || y == Sym::Circ {
            return true;
        }
        let propagating = s.a < self.d.n && s.b >= self.d.n;
        (x == y) != propagating
    }

    pub fn to_json(&self) -> Value {
        json!({
            "top": self.top.to_string(),
            "bottom": self.bottom.to_string(),
            "tangle": self.d.to_json(),
        })
    }
}

impl std::fmt::Display for OrientedTangle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} {} {}", self.top, self.d, self.bottom)
    }
}

/// Places `top` and `bottom` on the boundary of `d`; `None` unless the result
/// is an oriented tangle.
pub fn orient(d: &Tangle, top: &CosetDiagram, bottom: &CosetDiagram) -> Option<OrientedTangle> {
    if top.len() != d.n || bottom.len() != d.n || top.kind != bottom.kind || TangleKind::of_diagram(top.kind) != d.kind
    {
        return None;
    }
    let o = OrientedTangle {
        top: top.clone(),
        d: d.clone(),
        bottom: bottom.clone(),
    };
    let n = d.n;
    let ok = d.strands().iter().all(|s| {
        if s.beads == 0 {
            return o.strand_oriented(s);
        }
        match d.kind {
            TangleKind::A => false,
            TangleKind::D => o.strand_flip(s),
            TangleKind::C => !(s.a == 0 && s.b == n),
        }
    });
    ok.then_some(o)
}

/// Northern arcs ending in `∨` count `+1`, southern arcs ending in `∧` count `-1`.
pub fn diagram_degree(o: &OrientedTangle) -> i32 {
    let n = o.d.n;
    o.d.strands()
        .iter()
        .map(|s| match (s.a < n, s.b < n) {
            (true, true) if o.label(s.b) == Sym::Down => 1,
            (false, false) if o.label(s.a.max(s.b)) == Sym::Up => -1,
            _ => 0,
        })
        .sum()
}

/// Every decorated strand is flip-oriented.
pub fn is_standard(o: &OrientedTangle) -> Result<bool> {
    if o.d.kind != TangleKind::C {
        return Err(Error::InvalidPair("standardness is a type C notion".into()));
    }
    Ok(o.d.strands().iter().filter(|s| s.beads > 0).all(|s| o.strand_flip(s)))
}

/// Result of stacking two tangles: the strands plus, for each closed loop,
/// its rightmost middle position.
struct Stacked {
    tangle: Tangle,
    loops: Vec<usize>,
}

/// Stacks `upper` on top of `lower`, gluing `upper`'s bottom to `lower`'s top.
fn stack(upper: &Tangle, lower: &Tangle) -> Result<Stacked> {
    if upper.n != lower.n || upper.kind != lower.kind {
        return Err(Error::Shape("stacking tangles of different shapes".into()));
    }
    let n = upper.n;
    // Ports 0..2n belong to `upper`, 2n..4n to `lower`.
    let strand_partner = |p: usize| {
        if p < 2 * n {
            upper.partner[p]
        } else {
            2 * n + lower.partner[p - 2 * n]
        }
    };
    let strand_beads = |p: usize| {
        if p < 2 * n {
            upper.beads_at(p)
        } else {
            lower.beads_at(p - 2 * n)
        }
    };
    let glue = |p: usize| if p < 2 * n { p + n } else { p - n };
    let outer = |p: usize| p < n || p >= 3 * n;
    let mid = |p: usize| if p < 2 * n { p - n } else { p - 2 * n };
    let mut seen = vec![false; 4 * n];
    let mut partner = vec![0; 2 * n];
    let mut beads = vec![0u8; 2 * n];
    let out_index = |p: usize| if p < n { p } else { p - 2 * n };
    for start in (0..n).chain(3 * n..4 * n) {
        if seen[start] {
            continue;
        }
        let mut cur = start;
        let mut count = 0u32;
        loop {
            seen[cur] = true;
            let next = strand_partner(cur);
            seen[next] = true;
            count += strand_beads(cur) as u32;
            if outer(next) {
                let (a, b) = (out_index(start), out_index(next));
                partner[a] = b;
                partner[b] = a;
                beads[a.min(b)] = count.min(255) as u8;
                break;
            }
            cur = glue(next);
        }
    }
    let mut loops = Vec::new();
    for start in n..2 * n {
        if seen[start] {
            continue;
        }
        let mut cur = start;
        let mut right = 0;
        loop {
            seen[cur] = true;
            let next = strand_partner(cur);
            seen[next] = true;
            right = right.max(mid(cur)).max(mid(next));
            let g = glue(next);
            if seen[g] {
                break;
            }
            cur = g;
        }
        loops.push(right);
    }
    Ok(Stacked {
        tangle: Tangle {
            kind: upper.kind,
            n,
            partner,
            beads,
        },
        loops,
    })
}

fn reduce_beads(t: &mut Tangle, oriented: bool) {
    let n = t.n;
    for p in 0..2 * n {
        if p > t.partner[p] {
            continue;
        }
        let b = t.beads[p];
        t.beads[p] = match t.kind {
            TangleKind::A => b,
            TangleKind::C if oriented && p == 0 && t.partner[0] == n => 0,
            TangleKind::C => b.min(1),
            TangleKind::D => b % 2,
        };
    }
}

/// Product of generator tangles at the unoriented level, `upper` above
/// `lower`. Closed loops are reported as errors.
pub fn stack_unoriented(upper: &Tangle, lower: &Tangle) -> Result<Tangle> {
    let mut s = stack(upper, lower)?;
    if !s.loops.is_empty() {
        return Err(Error::Inadmissible("closed loop in a product of generators".into()));
    }
    reduce_beads(&mut s.tangle, false);
    s.tangle.validate()?;
    Ok(s.tangle)
}

/// `x · y` with `x` placed above `y`; zero unless `x.bottom == y.top`.
pub fn compose(x: &OrientedTangle, y: &OrientedTangle) -> Result<Option<(LaurentPoly, OrientedTangle)>> {
    if x.bottom != y.top {
        return Ok(None);
    }
    let s = stack(&x.d, &y.d)?;
    let mut exponent = 0;
    for &at in &s.loops {
        exponent += match x.bottom.symbols[at] {
            Sym::Down => 1,
            Sym::Up => -1,
            Sym::Circ => return Err(Error::Invariant("closed loop ending at ∘".into())),
        };
    }
    let mut t = s.tangle;
    reduce_beads(&mut t, true);
    t.validate()
        .map_err(|e| Error::Invariant(format!("composition left the basis: {e}")))?;
    let z = orient(&t, &x.top, &y.bottom)
        .ok_or_else(|| Error::Invariant(format!("composition {x} · {y} is not oriented")))?;
    Ok(Some((LaurentPoly::q_pow(exponent), z)))
}

/// The cup diagram `e_μ`: oriented by `μ` on top and the identity coset
/// below, with degree zero.
pub fn cup_diagram(mu: &CosetDiagram) -> Result<Tangle> {
    mu.validate()?;
    let n = mu.len();
    let kind = TangleKind::of_diagram(mu.kind);
    if mu.kind == (DiagKind::D { odd: true }) {
        return Err(Error::InvalidPair(
            "cup diagrams are built for the even copy of type D".into(),
        ));
    }
    if mu.kind == DiagKind::C && mu == &CosetDiagram::initial_c(n - 1) {
        return Ok(Tangle::identity(kind, n));
    }
    let up = |s: Sym| s == Sym::Up || s == Sym::Circ;
    let mut pairs = Vec::new();
    let mut beads = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    let mut leftover = Vec::new();
    for (p, &s) in mu.symbols.iter().enumerate() {
        if up(s) {
            match stack.pop() {
                Some(v) => pairs.push((v, p)),
                None => leftover.push(p),
            }
        } else {
            stack.push(p);
        }
    }
    // Unmatched ∨'s on the stack lie to the right of every leftover ∧.
    let leftover_down = stack;
    let mut props_top = Vec::new();
    match kind {
        TangleKind::A => {
            props_top.extend(leftover.iter().copied());
        }
        TangleKind::C | TangleKind::D => {
            for ch in leftover.chunks(2) {
                if let [a, b] = *ch {
                    pairs.push((a, b));
                    beads.push((a, 1));
                } else {
                    props_top.push(ch[0]);
                    beads.push((ch[0], 1));
                }
            }
        }
    }
    props_top.extend(leftover_down.iter().copied());
    props_top.sort_unstable();
    let arcs = (n - props_top.len()) / 2;
    let mut used = vec![false; n];
    match kind {
        TangleKind::A => {
            let k = mu.ups();
            for r in 0..arcs {
                let (a, b) = (k - 1 - r, k + r);
                pairs.push((n + a, n + b));
                used[a] = true;
                used[b] = true;
            }
        }
        TangleKind::C | TangleKind::D => {
            for r in 0..arcs {
                pairs.push((n + 2 * r, n + 2 * r + 1));
                beads.push((n + 2 * r, 1));
                used[2 * r] = true;
                used[2 * r + 1] = true;
            }
        }
    }
    let free_bottom: Vec<usize> = (0..n).filter(|&j| !used[j]).collect();
    for (&t, &b) in props_top.iter().zip(&free_bottom) {
        pairs.push((t, n + b));
    }
    Tangle::from_pairs(kind, n, &pairs, &beads)
}

/// Coset diagrams of a classical pair indexed by weight-graph id, together
/// with that graph's max-first order.
pub fn diagrams_by_id(spec: &PairSpec) -> Result<(Vec<usize>, Vec<CosetDiagram>)> {
    let iso = model_isomorphism(spec)?;
    let diagrams = (0..iso.weights.len()).map(|w| iso.diagram_of(w).clone()).collect();
    Ok((iso.weights.order().to_vec(), diagrams))
}

/// `Δ`, `N`, `B` read off cup diagrams, in the same order and indexing as
/// the path computation on the weight graph.
pub fn closed_kl_matrices(spec: &PairSpec) -> Result<KLMatrices> {
    let (order, diagrams) = diagrams_by_id(spec)?;
    let bottom = initial_diagram(spec)?;
    let m = order.len();
    let standard_route = spec.family == Family::C;
    let columns: Vec<Vec<(usize, i32, bool)>> = order
        .par_iter()
        .map(|&mu| {
            let cup = cup_diagram(&diagrams[mu])?;
            let mut col = Vec::new();
            for (i, &lam) in order.iter().enumerate() {
                if let Some(o) = orient(&cup, &diagrams[lam], &bottom) {
                    let standard = !standard_route || is_standard(&o)?;
                    col.push((i, diagram_degree(&o), standard));
                }
            }
            Ok(col)
        })
        .collect::<Result<_>>()?;
    let mut delta = SqMatrix::<Integer>::zeros(m);
    let mut n_mat = SqMatrix::zeros(m);
    let mut b_mat = SqMatrix::identity(m);
    for (j, col) in columns.into_iter().enumerate() {
        for (i, deg, standard) in col {
            delta.set(i, j, LaurentPoly::q_pow(deg));
            if standard {
                n_mat.set(i, j, LaurentPoly::q_pow(deg));
            }
            if standard_route && deg == 0 {
                b_mat.set(i, j, LaurentPoly::q_pow(0));
            }
        }
    }
    let out = KLMatrices {
        order,
        delta,
        n_mat,
        b_mat,
    };
    out.check()?;
    Ok(out)
}

/// `λ ↦ λ̄`: the ∘ becomes whichever arrow makes the ∧-count even.
pub fn parity_diagram(lam: &CosetDiagram) -> Result<CosetDiagram> {
    if lam.kind != DiagKind::C {
        return Err(Error::InvalidPair("parity map starts from type C".into()));
    }
    let mut symbols = lam.symbols.clone();
    symbols[0] = if lam.ups() % 2 == 1 { Sym::Up } else { Sym::Down };
    let out = CosetDiagram {
        kind: DiagKind::D { odd: false },
        symbols,
    };
    out.validate()?;
    Ok(out)
}

/// Parity specialisation from type `C_n` on `n + 1` points to `(D_{n+1}, A_n)`.
pub fn parity_specialize(o: &OrientedTangle) -> Result<OrientedTangle> {
    if o.d.kind != TangleKind::C {
        return Err(Error::InvalidPair("parity map starts from type C".into()));
    }
    let top = parity_diagram(&o.top)?;
    let bottom = parity_diagram(&o.bottom)?;
    let mut d = o.d.clone();
    d.kind = TangleKind::D;
    let relabelled = OrientedTangle {
        top: top.clone(),
        d: d.clone(),
        bottom: bottom.clone(),
    };
    for s in d.strands() {
        if s.beads > 0 && relabelled.strand_oriented(&s) {
            d.beads[s.a] = 0;
        }
    }
    d.validate()
        .map_err(|e| Error::Invariant(format!("parity image left the basis: {e}")))?;
    orient(&d, &top, &bottom).ok_or_else(|| Error::Invariant(format!("parity image of {o} is not oriented")))
}

/// Linear combination of oriented tangles.
pub type Element = BTreeMap<OrientedTangle, LaurentPoly>;

pub fn element_mul(x: &Element, y: &Element) -> Result<Element> {
    let mut out = Element::new();
    for (a, ca) in x {
        for (b, cb) in y {
            if let Some((s, z)) = compose(a, b)? {
                let c = &(ca * cb) * &s;
                let e = out.entry(z).or_insert_with(LaurentPoly::zero);
                *e += &c;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

pub fn element_scale(x: &Element, c: &LaurentPoly) -> Element {
    x.iter()
        .map(|(k, v)| (k.clone(), v * c))
        .filter(|(_, v)| !v.is_zero())
        .collect()
}

/// `E_i`: the sum of all oriented tangles `λ e_i μ`.
pub fn generator_element(spec: &PairSpec, node: Node) -> Result<Element> {
    let d = spec_generator(spec, node)?;
    let (_, diagrams) = diagrams_by_id(spec)?;
    let mut out = Element::new();
    for lam in &diagrams {
        for mu in &diagrams {
            if let Some(o) = orient(&d, lam, mu) {
                out.insert(o, LaurentPoly::q_pow(0));
            }
        }
    }
    Ok(out)
}

/// Checks the defining relations of the generators `E_i` on oriented
/// tangles, returning a description of the first failure.
pub fn check_relations(spec: &PairSpec) -> Result<()> {
    let (kind, _) = TangleKind::of_spec(spec)?;
    let cartan = crate::coxeter::cartan_data(spec)?;
    let gens: Vec<Element> = cartan
        .nodes
        .iter()
        .map(|&v| generator_element(spec, v))
        .collect::<Result<_>>()?;
    let fail = |what: String| Err(Error::Invariant(format!("{spec}: {what}")));
    let quantum_two = LaurentPoly::q_pow(1) + LaurentPoly::q_pow(-1);
    for (i, ei) in gens.iter().enumerate() {
        let ni = cartan.nodes[i];
        if element_mul(ei, ei)? != element_scale(ei, &quantum_two) {
            return fail(format!("E_{ni}^2 != (q + q^-1) E_{ni}"));
        }
        for (j, ej) in gens.iter().enumerate() {
            if i == j {
                continue;
            }
            let nj = cartan.nodes[j];
            let eij = element_mul(ei, ej)?;
            match cartan.m[i][j] {
                2 => {
                    let eji = element_mul(ej, ei)?;
                    if eij != eji {
                        return fail(format!("E_{ni} E_{nj} != E_{nj} E_{ni}"));
                    }
                    let fork = kind == TangleKind::D
                        && matches!(
                            (ni, nj),
                            (Node::Plain(1), Node::DoublePrime) | (Node::DoublePrime, Node::Plain(1))
                        );
                    if fork && !eij.is_empty() {
                        return fail(format!("E_{ni} E_{nj} != 0"));
                    }
                }
                3 => {
                    if element_mul(&eij, ei)? != *ei {
                        return fail(format!("E_{ni} E_{nj} E_{ni} != E_{ni}"));
                    }
                }
                4 => {
                    let two = LaurentPoly::from_terms([(0, Integer::from(2))]);
                    let lhs = element_mul(&element_mul(&eij, ei)?, ej)?;
                    if lhs != element_scale(&eij, &two) {
                        return fail(format!("E_{ni} E_{nj} E_{ni} E_{nj} != 2 E_{ni} E_{nj}"));
                    }
                }
                _ => {}
            }
        }
    }
    Ok(())
}

/// `N` of `(C_n, A_{n-1})` against `N` of `(D_{n+1}, A_n)` under `λ ↦ λ̄`.
pub fn check_parity_corollary(n: usize) -> Result<()> {
    let (c, d) = (PairSpec::c(n), PairSpec::da(n + 1));
    let (c_order, c_diagrams) = diagrams_by_id(&c)?;
    let (d_order, d_diagrams) = diagrams_by_id(&d)?;
    let c_mats = crate::pathdelta::kl_matrices::<Integer>(&crate::coxeter::enumerate_cosets(&c)?)?;
    let d_mats = crate::pathdelta::kl_matrices::<Integer>(&crate::coxeter::enumerate_cosets(&d)?)?;
    let d_row: BTreeMap<&CosetDiagram, usize> = d_order
        .iter()
        .enumerate()
        .map(|(i, &id)| (&d_diagrams[id], i))
        .collect();
    let image: Vec<usize> = c_order
        .iter()
        .map(|&id| {
            let bar = parity_diagram(&c_diagrams[id])?;
            d_row
                .get(&bar)
                .copied()
                .ok_or_else(|| Error::Invariant(format!("{bar} is not a coset of {d}")))
        })
        .collect::<Result<_>>()?;
    for (i, &ri) in image.iter().enumerate() {
        for (j, &rj) in image.iter().enumerate() {
            if c_mats.n_mat.get(i, j) != d_mats.n_mat.get(ri, rj) {
                return Err(Error::Invariant(format!(
                    "parity map changes N at ({}, {})",
                    c_diagrams[c_order[i]], c_diagrams[c_order[j]]
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> CosetDiagram {
        CosetDiagram::parse(s, DiagKind::A).unwrap()
    }

    fn arcs(kind: TangleKind, n: usize, pairs: &[(usize, usize)]) -> Tangle {
        Tangle::from_pairs(kind, n, pairs, &[]).unwrap()
    }

    #[test]
    fn generators() {
        let e2 = generator_tangle(Node::Plain(2), TangleKind::A, 4).unwrap();
        assert_eq!(e2.to_string(), "[1-1' 2-3 4-4' 2'-3']");
        let e1 = generator_tangle(Node::Prime, TangleKind::C, 4).unwrap();
        assert_eq!(e1.to_string(), "[1-2* 3-3' 4-4' 1'-2'*]");
        let e1 = generator_tangle(Node::Plain(1), TangleKind::D, 4).unwrap();
        assert_eq!(e1.total_beads(), 0);
        assert!(generator_tangle(Node::Plain(4), TangleKind::A, 4).is_err());
    }

    #[test]
    fn exposure() {
        let e1 = generator_tangle(Node::Prime, TangleKind::C, 4).unwrap();
        assert!(e1.strands().iter().filter(|s| s.beads > 0).all(|s| e1.left_exposed(s)));
        let t = arcs(TangleKind::A, 4, &[(0, 3), (1, 2), (4, 5), (6, 7)]);
        let inner = t.strands().into_iter().find(|s| (s.a, s.b) == (1, 2)).unwrap();
        assert!(!t.left_exposed(&inner));
        let outer = t.strands().into_iter().find(|s| s.a == 0).unwrap();
        assert!(t.left_exposed(&outer));
    }

    #[test]
    fn crossing_rejected() {
        assert!(Tangle::from_pairs(TangleKind::A, 2, &[(0, 3), (1, 2)], &[]).is_err());
        assert!(Tangle::from_pairs(TangleKind::A, 2, &[(0, 2), (1, 3)], &[]).is_ok());
    }

    #[test]
    fn orientation_examples() {
        let d = arcs(TangleKind::A, 4, &[(0, 1), (2, 3), (4, 5), (6, 7)]);
        assert!(orient(&d, &a("^^vv"), &a("^^vv")).is_none());
        assert!(orient(&d, &a("v^v^"), &a("^v^v")).is_some());
        let id = Tangle::identity(TangleKind::A, 4);
        assert!(orient(&id, &a("v^^v"), &a("v^^v")).is_some());
    }

    #[test]
    fn cups_and_degrees() {
        let bottom = a("^^vv");
        assert_eq!(cup_diagram(&a("v^v^")).unwrap().to_string(), "[1-2 3-4 1'-4' 2'-3']");
        assert_eq!(cup_diagram(&a("^v^v")).unwrap().to_string(), "[1-1' 2-3 4-4' 2'-3']");
        assert_eq!(cup_diagram(&bottom).unwrap(), Tangle::identity(TangleKind::A, 4));
        let cup = cup_diagram(&a("vv^^")).unwrap();
        assert_eq!(diagram_degree(&orient(&cup, &a("^v^v"), &bottom).unwrap()), 1);
        assert_eq!(diagram_degree(&orient(&cup, &bottom, &bottom).unwrap()), 2);
        assert_eq!(diagram_degree(&orient(&cup, &a("vv^^"), &bottom).unwrap()), 0);
    }

    #[test]
    fn compose_examples() {
        let e2 = generator_tangle(Node::Plain(2), TangleKind::A, 4).unwrap();
        let (e, s2) = (a("^^vv"), a("^v^v"));
        let up = orient(&e2, &e, &s2).unwrap();
        let down = orient(&e2, &s2, &e).unwrap();
        let (c, z) = compose(&up, &down).unwrap().unwrap();
        assert_eq!(c, LaurentPoly::q_pow(-1));
        assert_eq!(z, orient(&e2, &e, &e).unwrap());
        let ee = orient(&e2, &e, &e).unwrap();
        assert_eq!(compose(&ee, &ee).unwrap().unwrap().0, LaurentPoly::q_pow(1));
        assert!(compose(&ee, &down).unwrap().is_none());
    }

    #[test]
    fn parity_of_diagrams() {
        let c = |s| CosetDiagram::parse(s, DiagKind::C).unwrap();
        assert_eq!(parity_diagram(&c("ovvv")).unwrap().to_string(), "vvvv");
        assert_eq!(parity_diagram(&c("o^vv")).unwrap().to_string(), "^^vv");
    }

    #[test]
    fn small_relations() {
        for spec in [PairSpec::a(3, 2), PairSpec::c(3), PairSpec::da(4)] {
            check_relations(&spec).unwrap();
        }
    }
}
