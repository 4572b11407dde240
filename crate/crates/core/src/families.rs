//! Closed-form matrices for `(D_n, D_{n−1})` and `(B_n, B_{n−1})`, the
//! exceptional tables, and the identifications between families.

use num_traits::Zero;

use crate::cosetdiag::{diagram_graph, initial_diagram, CosetDiagram, DiagKind};
use crate::coxeter::{enumerate_cosets, BruhatGraph, CosetKey, Descent, Family, Node, PairSpec};
use crate::error::{Error, Result};
use crate::laurent::SqMatrix;
use crate::pathdelta::{delta_column, kl_matrices};
use crate::{Integer, KLMatrices, LaurentPoly, Matrix};

const E6D5_GRID: &str = include_str!("../fixtures/e6d5.txt");
const E7E6_GRID: &str = include_str!("../fixtures/e7e6.txt");

#[derive(Clone, Debug)]
pub struct FamilyMatrices {
    pub spec: PairSpec,
    pub matrices: KLMatrices,
}

fn q(e: i32) -> LaurentPoly {
    LaurentPoly::q_pow(e)
}

/// Diagonal `1` and sub-diagonal `q` inside `rows`.
fn chain_block(m: &mut Matrix, rows: std::ops::Range<usize>) {
    for i in rows.clone() {
        m.set(i, i, q(0));
        if i > rows.start {
            m.set(i, i - 1, q(1));
        }
    }
}

fn chain_order(spec: &PairSpec) -> Result<Vec<usize>> {
    Ok(enumerate_cosets(spec)?.order().to_vec())
}

/// `(D_n, D_{n−1})`: blocks of size `n−1`, `2`, `n−1` from the top coset.
pub fn dd_formula(n: usize) -> Result<FamilyMatrices> {
    let spec = PairSpec::dd(n);
    spec.validate()?;
    let m = n - 1;
    let mut d = Matrix::zeros(2 * n);
    chain_block(&mut d, 0..m);
    chain_block(&mut d, m + 2..2 * n);
    for i in [m, m + 1] {
        d.set(i, i, q(0));
        d.set(i, m - 1, q(1));
        d.set(m + 2, i, q(1));
    }
    for r in 0..m {
        d.set(m + 2 + r, m - 1 - r, q(2));
        if r + 2 <= m {
            d.set(m + 2 + r, m - 2 - r, q(1));
        }
    }
    let matrices = KLMatrices {
        order: chain_order(&spec)?,
        n_mat: d.clone(),
        b_mat: Matrix::identity(2 * n),
        delta: d,
    };
    Ok(FamilyMatrices { spec, matrices })
}

/// `(B_n, B_{n−1})`: a chain of `2n` cosets. `N` is the chain matrix,
/// `B` adds `1` at `(n + r, n − 2 − r)`, and `Δ` also has `q` just below
/// each of those.
pub fn bb_formula(n: usize) -> Result<FamilyMatrices> {
    let spec = PairSpec::b(n);
    spec.validate()?;
    let mut nm = Matrix::zeros(2 * n);
    chain_block(&mut nm, 0..2 * n);
    let mut b = Matrix::identity(2 * n);
    let mut d = nm.clone();
    for r in 0..n - 1 {
        b.set(n + r, n - 2 - r, q(0));
        d.set(n + r, n - 2 - r, q(0));
        d.set(n + 1 + r, n - 2 - r, q(1));
    }
    let matrices = KLMatrices {
        order: chain_order(&spec)?,
        delta: d,
        n_mat: nm,
        b_mat: b,
    };
    Ok(FamilyMatrices { spec, matrices })
}

/// Bijection `(B_n,B_{n−1}) → (A_{2n−1},A_{2n−2})` by length, checked to be a
/// graded poset isomorphism carrying `N` to `N`. Returns `(b_id, a_id)`.
pub fn bn_to_a_identification(n: usize) -> Result<Vec<(usize, usize)>> {
    let gb = enumerate_cosets(&PairSpec::b(n))?;
    let ga = enumerate_cosets(&PairSpec::a(2 * n - 1, 2 * n - 1))?;
    let all_b: Vec<usize> = (0..gb.len()).collect();
    let all_a: Vec<usize> = (0..ga.len()).collect();
    let isos = graded_isomorphisms(&gb, &all_b, &ga, &all_a, 2);
    if isos.len() != 1 {
        return Err(Error::Invariant(format!(
            "expected a unique graded bijection, found {}",
            isos.len()
        )));
    }
    let iso = &isos[0];
    let kb = kl_matrices::<Integer>(&gb)?;
    let ka = kl_matrices::<Integer>(&ga)?;
    for (x, &bx) in all_b.iter().enumerate() {
        for (y, &by) in all_b.iter().enumerate() {
            let (ax, ay) = (all_a[iso[x]], all_a[iso[y]]);
            let nb = kb.n_mat.get(gb.position(bx), gb.position(by));
            let na = ka.n_mat.get(ga.position(ax), ga.position(ay));
            if nb != na {
                return Err(Error::Invariant(format!(
                    "N differs at ({}, {})",
                    gb.label(bx),
                    gb.label(by)
                )));
            }
        }
    }
    Ok(all_b.iter().enumerate().map(|(x, &b)| (b, all_a[iso[x]])).collect())
}

/// Isomorphisms between the induced subposets on `xs` and `ys`, graded by
/// height within each subposet.
/// Each result maps an index into `xs` to an index into `ys`.
pub fn graded_isomorphisms(
    gx: &BruhatGraph,
    xs: &[usize],
    gy: &BruhatGraph,
    ys: &[usize],
    limit: usize,
) -> Vec<Vec<usize>> {
    if xs.len() != ys.len() {
        return Vec::new();
    }
    let (lx, ly) = (gx.bruhat_leq(), gy.bruhat_leq());
    let (rx, ry) = (induced_heights(gx, &lx, xs), induced_heights(gy, &ly, ys));
    let mut out = Vec::new();
    let mut assign = vec![usize::MAX; xs.len()];
    let mut used = vec![false; ys.len()];
    #[allow(clippy::too_many_arguments)]
    fn go(
        a: usize,
        xs: &[usize],
        ys: &[usize],
        lx: &[Vec<bool>],
        ly: &[Vec<bool>],
        rx: &[usize],
        ry: &[usize],
        assign: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if a == xs.len() {
            out.push(assign.clone());
            return;
        }
        for b in 0..ys.len() {
            if used[b] || rx[a] != ry[b] {
                continue;
            }
            let ok = (0..a).all(|p| {
                let pb = assign[p];
                lx[xs[p]][xs[a]] == ly[ys[pb]][ys[b]] && lx[xs[a]][xs[p]] == ly[ys[b]][ys[pb]]
            });
            if ok {
                assign[a] = b;
                used[b] = true;
                go(a + 1, xs, ys, lx, ly, rx, ry, assign, used, out, limit);
                used[b] = false;
                assign[a] = usize::MAX;
            }
        }
    }
    go(0, xs, ys, &lx, &ly, &rx, &ry, &mut assign, &mut used, &mut out, limit);
    out
}

/// Height of each element of `s` in the subposet it induces: the length of
/// the longest chain below it.
fn induced_heights(g: &BruhatGraph, leq: &[Vec<bool>], s: &[usize]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..s.len()).collect();
    idx.sort_by_key(|&a| g.states[s[a]].length);
    let mut h = vec![0; s.len()];
    for (pos, &a) in idx.iter().enumerate() {
        h[a] = idx[..pos]
            .iter()
            .filter(|&&b| s[b] != s[a] && leq[s[b]][s[a]])
            .map(|&b| h[b] + 1)
            .max()
            .unwrap_or(0);
    }
    h
}

/// Columns of `Δ` keyed by state id: `cols[μ][λ] = Δ_{λμ}`.
pub fn delta_by_id(graph: &BruhatGraph) -> Result<Vec<Vec<LaurentPoly>>> {
    (0..graph.len())
        .map(|mu| delta_column::<Integer>(graph, &graph.word_indices(mu)))
        .collect()
}

/// Outcome of a singular contraction check.
#[derive(Clone, Debug)]
pub struct Contraction {
    pub tau: Node,
    /// `P^τ` as state ids of the large pair's graph.
    pub p_tau: Vec<usize>,
    /// Image of each element of `p_tau` in the contracted graph.
    pub image: Vec<usize>,
    pub large: BruhatGraph,
    pub small: BruhatGraph,
}

fn delete_pair(d: &CosetDiagram, at: usize, kind: DiagKind) -> CosetDiagram {
    let mut symbols = d.symbols.clone();
    symbols.drain(at..at + 2);
    CosetDiagram { kind, symbols }
}

type DiagramMap = Box<dyn Fn(&CosetDiagram) -> CosetDiagram>;

/// Check that `Δ` restricted to `P^τ = {μ : μτ < μ}` equals `Δ` of the
/// contracted pair.
pub fn singular_contract(spec: &PairSpec, tau: Node) -> Result<Contraction> {
    if !spec.is_simply_laced() {
        return Err(Error::InvalidPair(format!("{spec} is not simply laced")));
    }
    let (large, small, image_of): (BruhatGraph, BruhatGraph, Option<DiagramMap>) = match spec.family {
        Family::A | Family::DA => {
            let start = initial_diagram(spec)?;
            let large = diagram_graph(&start)?;
            let (small_start, f): (CosetDiagram, DiagramMap) = match (spec.family, tau) {
                (Family::A, Node::Plain(i)) => {
                    let at = i as usize - 1;
                    (
                        CosetDiagram::initial_a(start.len() - 2, spec.k - 1),
                        Box::new(move |d| delete_pair(d, at, DiagKind::A)),
                    )
                }
                (Family::DA, Node::DoublePrime) => {
                    let kind = DiagKind::D { odd: false };
                    (
                        CosetDiagram::initial_d(start.len() - 2, false),
                        Box::new(move |d| delete_pair(d, 0, kind)),
                    )
                }
                (Family::DA, Node::Plain(i)) => {
                    let at = i as usize - 1;
                    let kind = DiagKind::D { odd: true };
                    (
                        CosetDiagram::initial_d(start.len() - 2, true),
                        Box::new(move |d| delete_pair(d, at, kind)),
                    )
                }
                _ => return Err(Error::UnknownNode(tau.to_string())),
            };
            (large, diagram_graph(&small_start)?, Some(f))
        }
        Family::DD => (enumerate_cosets(spec)?, enumerate_cosets(&PairSpec::a(1, 1))?, None),
        Family::E6D5 => (enumerate_cosets(spec)?, enumerate_cosets(&PairSpec::a(5, 1))?, None),
        Family::E7E6 => (enumerate_cosets(spec)?, enumerate_cosets(&PairSpec::dd(6))?, None),
        Family::B | Family::C => unreachable!(),
    };
    let t = large.node_index(tau)?;
    let p_tau: Vec<usize> = (0..large.len())
        .filter(|&mu| large.descent(mu, t) == Descent::Down)
        .collect();
    let dl = delta_by_id(&large)?;
    let ds = delta_by_id(&small)?;
    let agrees = |image: &[usize]| {
        p_tau.iter().enumerate().all(|(x, &mu)| {
            p_tau
                .iter()
                .enumerate()
                .all(|(y, &lam)| dl[mu][lam] == ds[image[x]][image[y]])
        })
    };
    let image = match image_of {
        Some(f) => {
            let image: Vec<usize> = p_tau
                .iter()
                .map(|&mu| {
                    let d = large.states[mu].diagram().expect("diagram model");
                    let c = f(d);
                    small
                        .find(&CosetKey::Diagram(c.clone()))
                        .ok_or_else(|| Error::Invariant(format!("{d} contracts to {c}, not a coset")))
                })
                .collect::<Result<_>>()?;
            let mut seen = image.clone();
            seen.sort_unstable();
            seen.dedup();
            if seen.len() != small.len() || image.len() != small.len() {
                return Err(Error::Invariant(format!(
                    "contraction at {tau} is not a bijection: |P^τ| = {}, target has {}",
                    p_tau.len(),
                    small.len()
                )));
            }
            if !agrees(&image) {
                return Err(Error::Invariant(format!("Δ differs after contracting {spec} at {tau}")));
            }
            image
        }
        None => {
            let all: Vec<usize> = (0..small.len()).collect();
            let isos = graded_isomorphisms(&large, &p_tau, &small, &all, 64);
            if isos.is_empty() {
                return Err(Error::Invariant(format!(
                    "P^τ of {spec} at {tau} is not isomorphic to the target"
                )));
            }
            isos.into_iter()
                .find(|iso| agrees(iso))
                .ok_or_else(|| Error::Invariant(format!("no isomorphism preserves Δ for {spec} at {tau}")))?
        }
    };
    Ok(Contraction {
        tau,
        p_tau,
        image,
        large,
        small,
    })
}

/// The `(E_6, D_5)` table as printed: rows index the weight `μ`, columns the
/// shape `λ`, smallest coset first.
pub fn e6d5_fixture() -> Matrix {
    SqMatrix::from_exponent_grid(E6D5_GRID).expect("embedded fixture parses")
}

/// The `(E_7, E_6)` table, same layout as [`e6d5_fixture`].
pub fn e7e6_fixture() -> Matrix {
    SqMatrix::from_exponent_grid(E7E6_GRID).expect("embedded fixture parses")
}

/// Convert between the printed layout (rows `μ`, columns `λ`, minimum
/// first) and ours (rows `λ`, columns `μ`, maximum first). The map is an
/// involution.
pub fn anti_transpose(m: &Matrix) -> Matrix {
    let n = m.dim();
    let mut out = Matrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            out.set(n - 1 - j, n - 1 - i, m.get(i, j).clone());
        }
    }
    out
}

/// Find `π` with `target[a][b] = ours[π(a)][π(b)]`. Candidates are pruned
/// by the multiset of entries in each row and column.
pub fn match_up_to_order(ours: &Matrix, target: &Matrix) -> Option<Vec<usize>> {
    let n = ours.dim();
    if target.dim() != n {
        return None;
    }
    let sig = |m: &Matrix, i: usize| {
        let mut r: Vec<String> = (0..n).map(|j| m.get(i, j).to_string()).collect();
        let mut c: Vec<String> = (0..n).map(|j| m.get(j, i).to_string()).collect();
        r.sort();
        c.sort();
        (r, c)
    };
    let so: Vec<_> = (0..n).map(|i| sig(ours, i)).collect();
    let st: Vec<_> = (0..n).map(|i| sig(target, i)).collect();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        a: usize,
        ours: &Matrix,
        target: &Matrix,
        so: &[(Vec<String>, Vec<String>)],
        st: &[(Vec<String>, Vec<String>)],
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let n = perm.len();
        if a == n {
            return true;
        }
        for b in 0..n {
            if used[b] || so[b] != st[a] {
                continue;
            }
            let ok = (0..a)
                .all(|p| target.get(a, p) == ours.get(b, perm[p]) && target.get(p, a) == ours.get(perm[p], b))
                && target.get(a, a) == ours.get(b, b);
            if ok {
                perm[a] = b;
                used[b] = true;
                if go(a + 1, ours, target, so, st, perm, used) {
                    return true;
                }
                used[b] = false;
            }
        }
        false
    }
    go(0, ours, target, &so, &st, &mut perm, &mut used).then_some(perm)
}

/// Compare the computed `Δ` with a printed exceptional table. Returns the
/// order permutation on success.
pub fn check_exceptional(spec: &PairSpec, fixture: &Matrix) -> Result<Vec<usize>> {
    let graph = enumerate_cosets(spec)?;
    let k = kl_matrices::<Integer>(&graph)?;
    k.check()?;
    if k.n_mat != k.delta || k.b_mat != Matrix::identity(graph.len()) {
        return Err(Error::Invariant(format!("{spec}: factorisation is not trivial")));
    }
    match_up_to_order(&k.delta, &anti_transpose(fixture))
        .ok_or_else(|| Error::Invariant(format!("{spec}: no order permutation matches the table")))
}

/// Count of non-zero entries and the sum of their exponents; a cheap
/// transcription checksum for the grids.
pub fn grid_checksum(m: &Matrix) -> (usize, i64) {
    let n = m.dim();
    let mut count = 0;
    let mut sum = 0i64;
    for i in 0..n {
        for j in 0..n {
            let p = m.get(i, j);
            if !p.is_zero() {
                count += 1;
                sum += p.max_exp().unwrap_or(0) as i64;
            }
        }
    }
    (count, sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_square_unitriangular() {
        for (m, n) in [(e6d5_fixture(), 27), (e7e6_fixture(), 56)] {
            assert_eq!(m.dim(), n);
            assert!(m.is_lower_unitriangular());
        }
        assert_eq!(e6d5_fixture().get(6, 3), &q(2));
        assert_eq!(e7e6_fixture().get(1, 0), &q(1));
    }

    #[test]
    fn anti_transpose_is_involution() {
        let m = e6d5_fixture();
        assert_eq!(anti_transpose(&anti_transpose(&m)), m);
    }

    #[test]
    fn small_formulas_factor() {
        for n in 4..=6 {
            dd_formula(n).unwrap().matrices.check().unwrap();
        }
        for n in 2..=6 {
            bb_formula(n).unwrap().matrices.check().unwrap();
        }
    }
}
