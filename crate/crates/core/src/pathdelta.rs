//! Paths in the extended Bruhat graph and the light-leaves matrix `Δ`.

use num_traits::Zero;
use rayon::prelude::*;

use crate::coxeter::{BruhatGraph, Move, Node};
use crate::error::{Error, Result};
use crate::laurent::{Coeff, KLMatrices, Laurent, SqMatrix};

/// Longest word accepted by [`enumerate_paths`].
pub const PATH_ENUM_LIMIT: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathRecord {
    /// `(from, letter, to)`; `from == to` for a stay step.
    pub steps: Vec<(usize, Node, usize)>,
    pub degree: i32,
    pub shape: usize,
    pub weight: Vec<Node>,
}

#[derive(Clone, Debug)]
pub struct DeltaMatrix<C: Coeff> {
    pub order: Vec<usize>,
    pub matrix: SqMatrix<C>,
    /// Word used for each column, in `order`.
    pub words: Vec<Vec<Node>>,
}

/// Endpoint of `word` read from the identity, requiring every step to go up.
pub fn reduced_endpoint(graph: &BruhatGraph, word: &[usize]) -> Result<usize> {
    let mut at = 0;
    for &i in word {
        match graph.step(at, i) {
            Move::Up(t) => at = t,
            _ => {
                let w: Vec<String> = word.iter().map(|&i| graph.nodes[i].to_string()).collect();
                return Err(Error::NotReduced(w.join(",")));
            }
        }
    }
    Ok(at)
}

/// `Δ_{λμ}` for all `λ` (indexed by state id), where `word` is a reduced
/// word of `μ`.
pub fn delta_column<C: Coeff>(graph: &BruhatGraph, word: &[usize]) -> Result<Vec<Laurent<C>>> {
    let mu = reduced_endpoint(graph, word)?;
    let n = graph.len();
    let mut mass = vec![Laurent::<C>::zero(); n];
    mass[0] = Laurent::q_pow(0);
    for &i in word {
        let mut next = vec![Laurent::<C>::zero(); n];
        for (lam, m) in mass.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            let (t, d) = match graph.step(lam, i) {
                Move::Up(t) => (t, 1),
                Move::Down(t) => (t, -1),
                Move::Null => continue,
            };
            next[lam] += &m.shift(d);
            next[t] += m;
        }
        mass = next;
    }
    if mass[mu].as_q_pow() != Some(0) {
        return Err(Error::NotReduced(format!(
            "diagonal entry at {} is {}",
            graph.label(mu),
            mass[mu]
        )));
    }
    Ok(mass)
}

/// Full `Δ` in the graph's max-first order, one column per canonical word.
pub fn delta_matrix<C: Coeff>(graph: &BruhatGraph) -> Result<DeltaMatrix<C>> {
    let order = graph.order().to_vec();
    let columns: Vec<Vec<Laurent<C>>> = order
        .par_iter()
        .map(|&mu| delta_column(graph, &graph.word_indices(mu)))
        .collect::<Result<_>>()?;
    let n = order.len();
    let mut matrix = SqMatrix::zeros(n);
    for (j, col) in columns.into_iter().enumerate() {
        for (lam, v) in col.into_iter().enumerate() {
            if !v.is_zero() {
                matrix.set(graph.position(lam), j, v);
            }
        }
    }
    if !matrix.is_lower_unitriangular() {
        return Err(Error::Invariant("delta is not lower uni-triangular".into()));
    }
    let words = order.iter().map(|&mu| graph.canonical_word(mu).to_vec()).collect();
    Ok(DeltaMatrix { order, matrix, words })
}

/// Explicit back-tracking over all paths; small instances only.
pub fn enumerate_paths(graph: &BruhatGraph, lambda: usize, word: &[usize]) -> Result<Vec<PathRecord>> {
    if word.len() > PATH_ENUM_LIMIT {
        return Err(Error::RankGuard(format!(
            "path enumeration limited to words of length {PATH_ENUM_LIMIT}"
        )));
    }
    reduced_endpoint(graph, word)?;
    let weight: Vec<Node> = word.iter().map(|&i| graph.nodes[i]).collect();
    let mut out = Vec::new();
    let mut steps = Vec::new();
    walk(graph, word, 0, 0, lambda, &weight, &mut steps, &mut out);
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn walk(
    graph: &BruhatGraph,
    word: &[usize],
    at: usize,
    degree: i32,
    lambda: usize,
    weight: &[Node],
    steps: &mut Vec<(usize, Node, usize)>,
    out: &mut Vec<PathRecord>,
) {
    let Some((&i, rest)) = word.split_first() else {
        if at == lambda {
            out.push(PathRecord {
                steps: steps.clone(),
                degree,
                shape: at,
                weight: weight.to_vec(),
            });
        }
        return;
    };
    let node = graph.nodes[i];
    let (t, d) = match graph.step(at, i) {
        Move::Up(t) => (t, 1),
        Move::Down(t) => (t, -1),
        Move::Null => return,
    };
    for (to, dd) in [(at, d), (t, 0)] {
        steps.push((at, node, to));
        walk(graph, rest, to, degree + dd, lambda, weight, steps, out);
        steps.pop();
    }
}

pub fn kl_matrices<C: Coeff>(graph: &BruhatGraph) -> Result<KLMatrices<C>> {
    let d = delta_matrix(graph)?;
    KLMatrices::from_delta(d.order, d.matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{enumerate_cosets, PairSpec};
    use crate::LaurentPoly;

    #[test]
    fn a3_columns() {
        let g = enumerate_cosets(&PairSpec::a(3, 2)).unwrap();
        let two = g.node_index(Node::Plain(2)).unwrap();
        let col: Vec<LaurentPoly> = delta_column(&g, &[two]).unwrap();
        assert_eq!(col[0], LaurentPoly::q_pow(1));
        let s2 = g.walk(0, &[two]).unwrap();
        assert_eq!(col[s2], LaurentPoly::q_pow(0));
        assert_eq!(col.iter().filter(|p| !p.is_zero()).count(), 2);

        let empty: Vec<LaurentPoly> = delta_column(&g, &[]).unwrap();
        assert_eq!(empty[0], LaurentPoly::q_pow(0));
        assert_eq!(empty.iter().filter(|p| !p.is_zero()).count(), 1);
    }

    #[test]
    fn a1_matrix() {
        let g = enumerate_cosets(&PairSpec::a(1, 1)).unwrap();
        let d = delta_matrix::<num_bigint::BigInt>(&g).unwrap();
        assert_eq!(d.matrix, SqMatrix::from_exponent_grid("0 .\n1 0").unwrap());
    }

    #[test]
    fn non_reduced_rejected() {
        let g = enumerate_cosets(&PairSpec::a(3, 2)).unwrap();
        let two = g.node_index(Node::Plain(2)).unwrap();
        assert!(delta_column::<i64>(&g, &[two, two]).is_err());
    }

    #[test]
    fn enumeration_examples() {
        let g = enumerate_cosets(&PairSpec::a(3, 2)).unwrap();
        let two = g.node_index(Node::Plain(2)).unwrap();
        let p = enumerate_paths(&g, 0, &[two]).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].degree, 1);
        assert_eq!(p[0].steps, vec![(0, Node::Plain(2), 0)]);
        let s2 = g.walk(0, &[two]).unwrap();
        let p = enumerate_paths(&g, s2, &[two]).unwrap();
        assert_eq!((p.len(), p[0].degree), (1, 0));
        assert!(enumerate_paths(&g, g.top(), &[]).unwrap().is_empty());
    }
}
