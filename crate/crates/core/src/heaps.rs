//! Heaps of words, strong full commutativity, and the passage between
//! reduced words and tangles.

use std::collections::{BTreeSet, VecDeque};

use crate::coxeter::{CartanData, Family, Node, PairSpec};
use crate::error::{Error, Result};
use crate::tangles::{spec_generator, stack_unoriented, Tangle, TangleKind};

/// Largest commutation class explored by [`commutation_class`].
pub const CLASS_GUARD: usize = 100_000;

#[derive(Clone, Debug)]
pub struct Heap {
    /// Node indices in word order.
    pub letters: Vec<usize>,
    /// `below[b][a]`: `a` precedes `b` in the heap order.
    below: Vec<Vec<bool>>,
    /// Cartier–Foata normal form: levels of node indices, each sorted.
    pub canonical: Vec<Vec<usize>>,
}

impl PartialEq for Heap {
    fn eq(&self, other: &Self) -> bool {
        self.canonical == other.canonical
    }
}

impl Eq for Heap {}

impl Heap {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        self.below[b][a]
    }

    /// Elements strictly between positions `a` and `b`.
    pub fn interval(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&c| self.less(a, c) && self.less(c, b))
            .collect()
    }

    pub fn canonical_word(&self) -> Vec<usize> {
        self.canonical.concat()
    }
}

pub fn heap_from_indices(word: &[usize], cartan: &CartanData) -> Result<Heap> {
    let r = cartan.rank();
    if let Some(&bad) = word.iter().find(|&&i| i >= r) {
        return Err(Error::UnknownNode(format!("index {bad}")));
    }
    let len = word.len();
    let mut below = vec![vec![false; len]; len];
    let mut level = vec![0usize; len];
    for b in 0..len {
        for a in 0..b {
            if !cartan.commute(word[a], word[b]) {
                below[b][a] = true;
                let inherited = below[a].clone();
                for (c, &x) in inherited.iter().enumerate() {
                    below[b][c] |= x;
                }
                level[b] = level[b].max(level[a] + 1);
            }
        }
    }
    let depth = level.iter().map(|l| l + 1).max().unwrap_or(0);
    let mut canonical = vec![Vec::new(); depth];
    for (p, &l) in level.iter().enumerate() {
        canonical[l].push(word[p]);
    }
    for lvl in &mut canonical {
        lvl.sort_unstable();
    }
    Ok(Heap {
        letters: word.to_vec(),
        below,
        canonical,
    })
}

pub fn heap_from_word(word: &[Node], cartan: &CartanData) -> Result<Heap> {
    let idx: Vec<usize> = word.iter().map(|&v| cartan.index_of(v)).collect::<Result<_>>()?;
    heap_from_indices(&idx, cartan)
}

/// Reduced and free of the forbidden braid patterns, read off the heap.
///
/// For consecutive occurrences `a < b` of a letter `i`, an empty interval
/// means `s_i s_i` can be brought together; a single element `j` in between
/// means `s_i s_j s_i` appears in some word of the class. For `(D_n, A_{n-1})`
/// every `1` and `1''` must also be separated by a `2`.
pub fn is_strongly_fc(word: &[Node], cartan: &CartanData) -> Result<bool> {
    let heap = heap_from_word(word, cartan)?;
    let w = &heap.letters;
    for a in 0..w.len() {
        let Some(b) = (a + 1..w.len()).find(|&b| w[b] == w[a]) else {
            continue;
        };
        let between = heap.interval(a, b);
        match between[..] {
            [] => return Ok(false),
            [c] => {
                let (i, j) = (w[a], w[c]);
                let m = cartan.m[i][j];
                if m == 3 || (m == 4 && cartan.short[i]) {
                    return Ok(false);
                }
            }
            _ => {}
        }
    }
    if cartan.family == Family::DA {
        let one = cartan.index_of(Node::Plain(1))?;
        let fork = cartan.index_of(Node::DoublePrime)?;
        let two = cartan.index_of(Node::Plain(2)).ok();
        for a in 0..w.len() {
            for b in a + 1..w.len() {
                let pair = (w[a] == one && w[b] == fork) || (w[a] == fork && w[b] == one);
                if pair && !heap.interval(a, b).iter().any(|&c| Some(w[c]) == two) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// All words reachable by swapping adjacent commuting letters.
pub fn commutation_class(word: &[usize], cartan: &CartanData, guard: usize) -> Result<Vec<Vec<usize>>> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(word.to_vec());
    queue.push_back(word.to_vec());
    while let Some(w) = queue.pop_front() {
        for p in 0..w.len().saturating_sub(1) {
            if w[p] != w[p + 1] && cartan.commute(w[p], w[p + 1]) {
                let mut v = w.clone();
                v.swap(p, p + 1);
                if seen.insert(v.clone()) {
                    if seen.len() > guard {
                        return Err(Error::RankGuard(format!("commutation class exceeds {guard} words")));
                    }
                    queue.push_back(v);
                }
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// `e_w`: the first letter sits at the bottom, next to the identity coset.
pub fn tangle_from_word(word: &[Node], spec: &PairSpec) -> Result<Tangle> {
    let (kind, n) = TangleKind::of_spec(spec)?;
    let mut t = Tangle::identity(kind, n);
    for &v in word {
        let g = spec_generator(spec, v)?;
        t = stack_unoriented(&g, &t)
            .map_err(|e| Error::Inadmissible(format!("{}: {e}", crate::coxeter::word_to_string(word))))?;
    }
    Ok(t)
}

/// Reads a word off the region between the top and bottom boundary paths of
/// `d`. Tiles in column `i` sit between the two paths; sorting them bottom to
/// top gives a linear extension of the heap.
pub fn word_from_tangle(d: &Tangle, spec: &PairSpec) -> Result<Vec<Node>> {
    let (kind, n) = TangleKind::of_spec(spec)?;
    if d.kind != kind || d.n() != n {
        return Err(Error::Shape(format!("tangle does not belong to {spec}")));
    }
    d.validate()?;
    let undecorated_right = |p: usize, strict: bool| {
        let q = d.partner(p);
        let (pos, qpos) = (p % n, q % n);
        d.beads_at(p) == 0
            && if strict || q < n && p < n {
                qpos > pos
            } else {
                qpos >= pos
            }
    };
    let mut top = vec![0i64; n + 1];
    for x in 1..=n {
        let step = if undecorated_right(x - 1, false) { 1 } else { -1 };
        top[x] = top[x - 1] + step;
    }
    let mut bottom = vec![0i64; n + 1];
    bottom[n] = top[n];
    for x in (1..=n).rev() {
        let step = if undecorated_right(n + x - 1, true) { 1 } else { -1 };
        bottom[x - 1] = bottom[x] + step;
    }
    // Beads make the path end below its start; the left wall closes the region.
    let closes = if kind == TangleKind::A {
        bottom[0] == 0
    } else {
        bottom[0] <= 0
    };
    if !closes {
        return Err(Error::Inadmissible(format!("{d}: boundary path does not close")));
    }
    let mut tiles = Vec::new();
    for i in 1..n {
        let gap = top[i] - bottom[i];
        if gap < 0 || gap % 2 != 0 {
            return Err(Error::Inadmissible(format!("{d}: paths cross at column {i}")));
        }
        for t in 0..gap / 2 {
            let y = bottom[i] + 1 + 2 * t;
            let node = match (kind, i) {
                (TangleKind::C, 1) => Node::Prime,
                (TangleKind::D, 1) if y.rem_euclid(4) == 2 => Node::DoublePrime,
                _ => Node::Plain(i as u8),
            };
            tiles.push((y, i, node));
        }
    }
    tiles.sort_by_key(|&(y, i, _)| (y, i));
    Ok(tiles.into_iter().map(|(_, _, v)| v).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{cartan_data, parse_word};

    fn w(s: &str) -> Vec<Node> {
        parse_word(s).unwrap()
    }

    #[test]
    fn heap_equality() {
        let c = cartan_data(&PairSpec::a(3, 2)).unwrap();
        let h = |s: &str| heap_from_word(&w(s), &c).unwrap();
        assert_eq!(h("s1s3"), h("s3s1"));
        assert_ne!(h("s1s2"), h("s2s1"));
        assert!(h("").is_empty());
    }

    #[test]
    fn strong_fc_examples() {
        let a = cartan_data(&PairSpec::a(3, 2)).unwrap();
        assert!(!is_strongly_fc(&w("s1s2s1"), &a).unwrap());
        assert!(!is_strongly_fc(&w("s2s2"), &a).unwrap());
        let c = cartan_data(&PairSpec::c(3)).unwrap();
        assert!(!is_strongly_fc(&w("s2s1's2"), &c).unwrap());
        assert!(is_strongly_fc(&w("s1's2s1'"), &c).unwrap());
    }

    #[test]
    fn generator_words() {
        let spec = PairSpec::a(3, 2);
        let g = spec_generator(&spec, Node::Plain(2)).unwrap();
        assert_eq!(tangle_from_word(&w("s2"), &spec).unwrap(), g);
        assert_eq!(word_from_tangle(&g, &spec).unwrap(), w("s2"));
        let id = Tangle::identity(TangleKind::A, 4);
        assert!(word_from_tangle(&id, &spec).unwrap().is_empty());
    }
}
