//! Graphs, flag complexes and graphic arrangements.
//!
//! For a graph `G` the hyperplanes `x_i - x_j` (one per edge) form the
//! graphic arrangement `A_G`. Its relation spaces are spanned by cliques: a
//! flat carries a nonzero top relation space exactly when its edges form a
//! complete graph, and then the space is a line spanned by the alternating
//! sum of the facet relations. So the relation complex of `A_G` is the
//! simplicial chain complex of the flag complex of `G`, shifted so that
//! edges sit in degree 1.
//!
//! [`cross_check`] builds both sides independently and compares them.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arrangement::{Arrangement, Flat};
use crate::complex::{assemble_complex, formality_level, formality_report, FormalityComplex, FormalityReport, RelationBlock};
use crate::error::{Error, ParseError, Result};
use crate::linalg::{int, scalar_multiple, Matrix, Scalar};

/// A simple graph on vertices `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    /// Builds a graph from 1-based edges. Rejects loops, repeated edges and
    /// out-of-range vertices.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (k, (i, j)) in edges.into_iter().enumerate() {
            let line = k + 1;
            for v in [i, j] {
                if v == 0 || v > n {
                    return Err(ParseError::VertexOutOfRange {
                        line,
                        vertex: v as i64,
                        n,
                    }
                    .into());
                }
            }
            if i == j {
                return Err(ParseError::Loop { line, vertex: i }.into());
            }
            let e = (i.min(j), i.max(j));
            if !set.insert(e) {
                return Err(ParseError::DuplicateEdge { line, i: e.0, j: e.1 }.into());
            }
        }
        Ok(Graph { n, edges: set })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j)));
        Graph::new(n, edges).expect("complete graph is simple")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let edges = (1..=n).map(|i| (i, i % n + 1));
        Graph::new(n, edges).expect("cycle is simple")
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i.min(j), i.max(j)))
    }

    fn adjacency(&self) -> Vec<Vec<bool>> {
        let mut adj = vec![vec![false; self.n + 1]; self.n + 1];
        for &(i, j) in &self.edges {
            adj[i][j] = true;
            adj[j][i] = true;
        }
        adj
    }

    pub fn num_components(&self) -> usize {
        let mut parent: Vec<usize> = (0..=self.n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut c = x;
            while p[c] != r {
                let next = p[c];
                p[c] = r;
                c = next;
            }
            r
        }
        let mut components = self.n;
        for &(i, j) in &self.edges {
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri] = rj;
                components -= 1;
            }
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.num_components() == 1
    }
}

/// Parses the graph text format: `#` comments, a header with the vertex
/// count, then one edge `i j` per line with `1 <= i < j <= n`.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (line, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let n: usize = header.parse().map_err(|_| ParseError::MalformedInteger {
        line,
        token: header.to_string(),
    })?;

    let mut edges = BTreeSet::new();
    for (line, l) in lines {
        let tokens: Vec<&str> = l.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(ParseError::MalformedEdge {
                line,
                found: tokens.len(),
            });
        }
        let mut ends = [0usize; 2];
        for (slot, t) in ends.iter_mut().zip(&tokens) {
            let v: i64 = t.parse().map_err(|_| ParseError::MalformedInteger {
                line,
                token: t.to_string(),
            })?;
            if v < 1 || v as u64 > n as u64 {
                return Err(ParseError::VertexOutOfRange { line, vertex: v, n });
            }
            *slot = v as usize;
        }
        let [i, j] = ends;
        if i == j {
            return Err(ParseError::Loop { line, vertex: i });
        }
        let e = (i.min(j), i.max(j));
        if !edges.insert(e) {
            return Err(ParseError::DuplicateEdge { line, i: e.0, j: e.1 });
        }
    }
    Ok(Graph { n, edges })
}

/// Cliques of a graph grouped by dimension (a `d`-face has `d + 1` vertices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagComplex {
    faces_by_dim: Vec<Vec<Vec<usize>>>,
}

impl FlagComplex {
    pub fn faces(&self, dim: usize) -> &[Vec<usize>] {
        self.faces_by_dim.get(dim).map_or(&[], Vec::as_slice)
    }

    /// `a_i`, the number of `i`-faces, for `i = 0..=top_dim`.
    pub fn face_counts(&self) -> Vec<usize> {
        self.faces_by_dim.iter().map(Vec::len).collect()
    }

    /// Highest dimension with at least one face.
    pub fn top_dim(&self) -> Option<usize> {
        self.faces_by_dim.len().checked_sub(1)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.face_counts()
            .iter()
            .enumerate()
            .map(|(i, &a)| if i % 2 == 0 { a as i64 } else { -(a as i64) })
            .sum()
    }
}

/// Enumerates cliques with at most `max_dim + 1` vertices, extending each
/// clique only by higher-numbered vertices adjacent to every member.
pub fn flag_complex(g: &Graph, max_dim: usize) -> FlagComplex {
    let adj = g.adjacency();
    let mut faces_by_dim: Vec<Vec<Vec<usize>>> = Vec::new();

    fn extend(
        clique: &mut Vec<usize>,
        candidates: &[usize],
        adj: &[Vec<bool>],
        max_size: usize,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        let dim = clique.len() - 1;
        if out.len() <= dim {
            out.resize_with(dim + 1, Vec::new);
        }
        out[dim].push(clique.clone());
        if clique.len() == max_size {
            return;
        }
        for (idx, &v) in candidates.iter().enumerate() {
            let next: Vec<usize> = candidates[idx + 1..]
                .iter()
                .copied()
                .filter(|&w| adj[v][w])
                .collect();
            clique.push(v);
            extend(clique, &next, adj, max_size, out);
            clique.pop();
        }
    }

    for v in 1..=g.n {
        let higher: Vec<usize> = (v + 1..=g.n).filter(|&w| adj[v][w]).collect();
        extend(&mut vec![v], &higher, &adj, max_dim + 1, &mut faces_by_dim);
    }
    for faces in &mut faces_by_dim {
        faces.sort();
    }
    FlagComplex { faces_by_dim }
}

/// Simplicial boundary maps `f_i : C_i -> C_{i-1}` of a flag complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    /// `boundary[i - 1]` is `f_i`.
    boundary: Vec<Matrix>,
}

impl ChainComplex {
    /// `f_i` for `i >= 1`, or `None` above the top dimension.
    pub fn boundary(&self, i: usize) -> Option<&Matrix> {
        i.checked_sub(1).and_then(|k| self.boundary.get(k))
    }

    pub fn boundaries(&self) -> &[Matrix] {
        &self.boundary
    }
}

fn face_index(faces: &[Vec<usize>]) -> HashMap<&[usize], usize> {
    faces.iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect()
}

/// Alternating-sum boundary of `face` against the lexicographic basis of its
/// facets: deleting the `j`-th vertex (0-based) contributes `(-1)^j`.
fn boundary_column(face: &[usize], facet_index: &HashMap<&[usize], usize>, rows: usize) -> Vec<Scalar> {
    let mut col = vec![Scalar::zero(); rows];
    for j in 0..face.len() {
        let facet: Vec<usize> = face
            .iter()
            .enumerate()
            .filter(|&(t, _)| t != j)
            .map(|(_, &v)| v)
            .collect();
        let row = facet_index[facet.as_slice()];
        col[row] = if j % 2 == 0 { Scalar::one() } else { -Scalar::one() };
    }
    col
}

pub fn boundary_matrices(fc: &FlagComplex) -> ChainComplex {
    let top = fc.top_dim().unwrap_or(0);
    let boundary = (1..=top)
        .map(|i| {
            let rows = fc.faces(i - 1);
            let index = face_index(rows);
            let cols: Vec<Vec<Scalar>> = fc
                .faces(i)
                .iter()
                .map(|f| boundary_column(f, &index, rows.len()))
                .collect();
            Matrix::from_columns(rows.len(), &cols)
        })
        .collect();
    ChainComplex { boundary }
}

/// `dim H_i = a_i - rank f_i - rank f_{i+1}` for `i = 0..a.len()`.
pub fn simplicial_homology(cc: &ChainComplex, face_counts: &[usize]) -> Vec<usize> {
    let ranks: Vec<usize> = cc.boundaries().iter().map(Matrix::rank).collect();
    let rank_of = |i: usize| if i == 0 { 0 } else { ranks.get(i - 1).copied().unwrap_or(0) };
    (0..face_counts.len())
        .map(|i| face_counts[i] - rank_of(i) - rank_of(i + 1))
        .collect()
}

/// Defining form `x_i - x_j` in `K^n` for a 1-based edge `i < j`.
fn edge_form(n: usize, (i, j): (usize, usize)) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i - 1] = int(1);
    v[j - 1] = int(-1);
    v
}

/// The arrangement `{x_i - x_j = 0 : ij ∈ E(G)}` in `K^n`, hyperplanes in
/// lexicographic edge order.
pub fn graphic_arrangement(g: &Graph) -> Result<Arrangement> {
    if g.num_edges() == 0 {
        return Err(Error::EdgelessGraph);
    }
    let forms: Vec<Vec<Scalar>> = g.edges().map(|e| edge_form(g.n, e)).collect();
    Arrangement::new(g.n, &forms)
}

/// Rank of the graphic arrangement: `n` minus the number of components.
pub fn graphic_rank(g: &Graph) -> usize {
    g.n - g.num_components()
}

/// The relation complex of `A_G` built directly from cliques.
///
/// `D_k` has one basis vector per `(k+1)`-clique; the vector of a clique is
/// the alternating sum of the vectors of its facets, starting from
/// `e_jk - e_ik + e_ij` for a triangle `i < j < k`. Levels run up to the rank
/// of `A_G`; `d_1` sends `e_ij` to `x_i - x_j`.
pub fn special_basis_complex(g: &Graph) -> Result<FormalityComplex> {
    let a = graphic_arrangement(g)?;
    let rank = a.rank();
    let fc = flag_complex(g, rank);
    let edge_index: HashMap<(usize, usize), usize> = g.edges().enumerate().map(|(i, e)| (e, i)).collect();

    let mut differentials = vec![a.normal_matrix()];
    let mut blocks_by_level = BTreeMap::new();
    for k in 2..=rank {
        let rows = fc.faces(k - 1);
        let index = face_index(rows);
        let mut cols = Vec::new();
        let mut blocks = Vec::new();
        for clique in fc.faces(k) {
            let col = boundary_column(clique, &index, rows.len());
            let basis = Matrix::from_columns(rows.len(), std::slice::from_ref(&col));
            cols.push(col);
            let mut closure: Vec<usize> = clique
                .iter()
                .enumerate()
                .flat_map(|(t, &u)| clique[t + 1..].iter().map(move |&v| (u, v)))
                .map(|e| edge_index[&e])
                .collect();
            closure.sort_unstable();
            blocks.push(RelationBlock {
                flat: Flat::new(closure, k),
                level: k,
                basis,
            });
        }
        differentials.push(Matrix::from_columns(rows.len(), &cols));
        blocks_by_level.insert(k, blocks);
    }
    FormalityComplex::from_parts(g.n, g.num_edges(), rank, blocks_by_level, differentials)
}

/// Agreement data for one level `k` of the three constructions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelAgreement {
    pub level: usize,
    pub generic_dim: usize,
    pub special_dim: usize,
    /// Number of `k`-faces of the flag complex (`a_k`).
    pub clique_count: usize,
    pub dims_agree: bool,
    /// Every generic column is a nonzero multiple of the matching special
    /// column, after rewriting the generic lower-level basis in special
    /// coordinates.
    pub columns_agree: bool,
    /// Special differential equals the simplicial boundary: exactly for
    /// `k >= 2`, up to the global sign `-1` for `k = 1`.
    pub boundary_agrees: bool,
    /// Each generic block at this level is one-dimensional and its flat's
    /// edges form a complete graph on `k + 1` vertices (`k >= 2`).
    pub blocks_are_cliques: bool,
}

impl LevelAgreement {
    pub fn ok(&self) -> bool {
        self.dims_agree && self.columns_agree && self.boundary_agrees && self.blocks_are_cliques
    }
}

/// Result of running the generic, special-basis and flag-complex pipelines on
/// one connected graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheckReport {
    pub num_vertices: usize,
    pub num_edges: usize,
    pub rank: usize,
    pub generic: FormalityReport,
    pub special: FormalityReport,
    pub clique_counts: Vec<usize>,
    /// `[dim H_0(Δ), dim H_1(Δ), ...]`.
    pub flag_homology: Vec<usize>,
    pub levels: Vec<LevelAgreement>,
    /// `dim H_i(D) = dim H_i(Δ)` for `1 <= i < rank`.
    pub homology_agrees: bool,
    /// Every generic column scale was exactly 1, i.e. the two bases coincide
    /// literally and not only up to scale.
    pub all_scales_one: bool,
}

impl CrossCheckReport {
    pub fn agreement(&self) -> bool {
        self.homology_agrees && self.levels.iter().all(LevelAgreement::ok)
    }

    pub fn per_level_agreement(&self) -> Vec<bool> {
        self.levels.iter().map(LevelAgreement::ok).collect()
    }

    pub fn formality_level(&self) -> usize {
        self.generic.formality_level
    }
}

/// Formality level read off flag homology alone: the first `i >= 1` with
/// `H_i(Δ) != 0`, else the rank `n - 1`.
pub fn flag_formality_level(flag_homology: &[usize], rank: usize) -> usize {
    let reduced: Vec<usize> = (1..rank)
        .map(|i| flag_homology.get(i).copied().unwrap_or(0))
        .collect();
    formality_level(&reduced, rank)
}

/// Checks that the generic blocks of `generic` at every level `k >= 2` are
/// scalar multiples of the special ones, tracking the scale factors level by
/// level. Returns per-level results and the scales (by clique).
fn compare_columns(
    generic: &FormalityComplex,
    special: &FormalityComplex,
) -> (BTreeMap<usize, bool>, bool) {
    let mut result = BTreeMap::new();
    let mut all_one = true;
    // Scale of each generic basis vector at the previous level relative to
    // the special one, keyed by special position; also the position map.
    let mut prev_pos: Vec<usize> = Vec::new();
    let mut prev_scale: Vec<Scalar> = Vec::new();
    for k in 2..=generic.top().min(special.top()) {
        let gen_blocks = generic.blocks(k);
        let spec_blocks = special.blocks(k);
        let spec_pos: HashMap<&[usize], usize> = spec_blocks
            .iter()
            .enumerate()
            .map(|(i, b)| (b.flat.closure(), i))
            .collect();
        let rows_special = special.differential(k).rows();
        let mut ok = gen_blocks.len() == spec_blocks.len();
        let mut pos = Vec::with_capacity(gen_blocks.len());
        let mut scale = Vec::with_capacity(gen_blocks.len());
        for b in gen_blocks {
            let Some(&sp) = spec_pos.get(b.flat.closure()) else {
                ok = false;
                break;
            };
            if b.dim() != 1 {
                ok = false;
                break;
            }
            let g = b.basis.column(0);
            let rewritten: Vec<Scalar> = if k == 2 {
                g
            } else {
                let mut t = vec![Scalar::zero(); rows_special];
                for (gi, v) in g.iter().enumerate() {
                    if !v.is_zero() {
                        t[prev_pos[gi]] = v * &prev_scale[gi];
                    }
                }
                t
            };
            match scalar_multiple(&rewritten, &special.differential(k).column(sp)) {
                Some(c) => {
                    if !c.is_one() {
                        all_one = false;
                    }
                    pos.push(sp);
                    scale.push(c);
                }
                None => {
                    ok = false;
                    break;
                }
            }
        }
        result.insert(k, ok);
        if !ok {
            // Higher levels cannot be rewritten without this level's scales.
            for j in k + 1..=generic.top() {
                result.insert(j, false);
            }
            break;
        }
        prev_pos = pos;
        prev_scale = scale;
    }
    (result, all_one)
}

fn block_is_clique(b: &RelationBlock, edges: &[(usize, usize)]) -> bool {
    let k = b.level;
    let mut vertices = BTreeSet::new();
    for &h in b.flat.closure() {
        let (i, j) = edges[h];
        vertices.insert(i);
        vertices.insert(j);
    }
    b.dim() == 1 && vertices.len() == k + 1 && b.flat.closure().len() == (k + 1) * k / 2
}

/// Runs the three pipelines on a connected graph and compares them level by
/// level.
pub fn cross_check(g: &Graph) -> Result<CrossCheckReport> {
    if g.num_edges() == 0 {
        return Err(Error::EdgelessGraph);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected {
            components: g.num_components(),
        });
    }
    let a = graphic_arrangement(g)?;
    let generic_complex = assemble_complex(&a)?;
    let special_complex = special_basis_complex(g)?;
    let generic = formality_report(&generic_complex)?;
    let special = formality_report(&special_complex)?;

    let rank = a.rank();
    let fc = flag_complex(g, g.n);
    let clique_counts = fc.face_counts();
    let cc = boundary_matrices(&fc);
    let flag_homology = simplicial_homology(&cc, &clique_counts);

    let edges: Vec<(usize, usize)> = g.edges().collect();
    let (columns, all_scales_one) = compare_columns(&generic_complex, &special_complex);

    let mut levels = Vec::new();
    for k in 0..=rank {
        let generic_dim = generic.d_dims[k];
        let special_dim = special.d_dims[k];
        let clique_count = clique_counts.get(k).copied().unwrap_or(0);
        let (columns_agree, boundary_agrees, blocks_are_cliques) = match k {
            0 => (true, true, true),
            1 => {
                let d1 = generic_complex.differential(1);
                let f1 = cc.boundary(1).cloned().unwrap_or_else(|| Matrix::zeros(g.n, 0));
                let negated = Matrix::from_entries(
                    f1.rows(),
                    f1.cols(),
                    f1.entries().iter().map(|v| -v).collect(),
                );
                (
                    d1 == special_complex.differential(1),
                    *special_complex.differential(1) == negated,
                    true,
                )
            }
            _ => {
                let spec_d = special_complex.differential(k);
                let boundary_agrees = match cc.boundary(k) {
                    Some(f) => f == spec_d,
                    None => spec_d.cols() == 0,
                };
                let cliques = generic_complex
                    .blocks(k)
                    .iter()
                    .all(|b| block_is_clique(b, &edges));
                (columns.get(&k).copied().unwrap_or(false), boundary_agrees, cliques)
            }
        };
        levels.push(LevelAgreement {
            level: k,
            generic_dim,
            special_dim,
            clique_count,
            dims_agree: generic_dim == special_dim && special_dim == clique_count,
            columns_agree,
            boundary_agrees,
            blocks_are_cliques,
        });
    }

    let homology_agrees = (1..rank).all(|i| {
        generic.homology[i - 1] == flag_homology.get(i).copied().unwrap_or(0)
            && special.homology[i - 1] == generic.homology[i - 1]
    });

    Ok(CrossCheckReport {
        num_vertices: g.n,
        num_edges: g.num_edges(),
        rank,
        generic,
        special,
        clique_counts,
        flag_homology,
        levels,
        homology_agrees,
        all_scales_one,
    })
}
