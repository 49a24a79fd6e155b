//! Higher relation spaces and the complex they form.
//!
//! `D_0` is the dual space, `D_1` has one coordinate per hyperplane, and for
//! `k >= 2` the space `D_k` is the direct sum over rank-`k` flats `X` of the
//! relation space `R_k(A_X)`. Every basis vector of `R_k(A_X)` is stored in
//! the global coordinates of `D_{k-1}`, so the summed inclusion map
//! `D_k -> D_{k-1}` is just the concatenation of the block bases.
//!
//! A complex is k-formal exactly when `H_1 = ... = H_{k-1} = 0`.

use std::collections::BTreeMap;

use crate::arrangement::{build_lattice, Arrangement, Flat, Lattice};
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, Matrix, RowSpace};

/// Basis of `R_k(A_X)` for one flat `X` of rank `k`, as columns in the
/// coordinates of `D_{k-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationBlock {
    pub flat: Flat,
    pub level: usize,
    pub basis: Matrix,
}

impl RelationBlock {
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }
}

/// Kernel of `e_H ↦ α_H` restricted to `indices`, padded with zeros to the
/// full `n` coordinates. Columns follow the canonical kernel basis of the
/// restricted matrix.
pub fn relation_space_f(a: &Arrangement, indices: &[usize]) -> Matrix {
    let local = kernel_basis(&a.normal_matrix_of(indices));
    let mut out = Matrix::zeros(a.len(), local.cols());
    for (row, &h) in indices.iter().enumerate() {
        for j in 0..local.cols() {
            out[(h, j)] = local[(row, j)].clone();
        }
    }
    out
}

/// Basis of the span of all relations among exactly three forms.
///
/// Enumerates every 3-subset; independent of the lattice and of the block
/// construction, so it serves as a check on the image of `d_2`.
pub fn f2_span(a: &Arrangement) -> Matrix {
    let n = a.len();
    let mut span = RowSpace::new(n);
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let rel = relation_space_f(a, &[i, j, k]);
                // Distinct hyperplanes are pairwise independent, so a
                // dependent triple has a one-dimensional relation space with
                // full support.
                if rel.cols() == 1 {
                    span.insert(&rel.column(0));
                }
            }
        }
    }
    Matrix::from_columns(n, span.basis())
}

/// Relation blocks at level `k` for every rank-`k` flat of `lat`.
///
/// For `k = 2` each block is the relation space of the flat's hyperplanes.
/// For `k >= 3`, `lower` must be the blocks at level `k - 1` in order; their
/// concatenated columns define the coordinates of `D_{k-1}`. The block of `X`
/// is the kernel of the concatenation of the lower blocks lying below `X`,
/// re-expressed in `D_{k-1}` coordinates. Zero-dimensional blocks are dropped.
pub fn compute_relation_blocks(
    lat: &Lattice,
    a: &Arrangement,
    k: usize,
    lower: &[RelationBlock],
) -> Vec<RelationBlock> {
    assert!(k >= 2, "relation blocks start at level 2");
    let flats = lat.flats_of_rank(k);
    if k == 2 {
        return flats
            .iter()
            .filter_map(|x| {
                let basis = relation_space_f(a, x.closure());
                (basis.cols() > 0).then(|| RelationBlock {
                    flat: x.clone(),
                    level: 2,
                    basis,
                })
            })
            .collect();
    }

    debug_assert!(lower.iter().all(|b| b.level == k - 1));
    let ambient = lower.first().map_or(0, |b| b.basis.rows());
    let mut offsets = Vec::with_capacity(lower.len());
    let mut total = 0;
    for b in lower {
        offsets.push(total);
        total += b.dim();
    }

    let mut out = Vec::new();
    for x in flats {
        let below: Vec<usize> = (0..lower.len())
            .filter(|&i| lower[i].flat.is_strictly_below(x))
            .collect();
        // One lower block is included injectively; nothing to find.
        if below.len() < 2 {
            continue;
        }
        let parts: Vec<&Matrix> = below.iter().map(|&i| &lower[i].basis).collect();
        let kernel = kernel_basis(&Matrix::hstack(ambient, &parts));
        if kernel.cols() == 0 {
            continue;
        }
        let mut basis = Matrix::zeros(total, kernel.cols());
        let mut local_row = 0;
        for &i in &below {
            for c in 0..lower[i].dim() {
                for j in 0..kernel.cols() {
                    basis[(offsets[i] + c, j)] = kernel[(local_row, j)].clone();
                }
                local_row += 1;
            }
        }
        out.push(RelationBlock {
            flat: x.clone(),
            level: k,
            basis,
        });
    }
    out
}

/// The assembled complex `0 -> D_top -> ... -> D_1 -> D_0 -> 0`.
#[derive(Clone, Debug)]
pub struct FormalityComplex {
    ambient_dim: usize,
    num_hyperplanes: usize,
    rank: usize,
    top: usize,
    blocks_by_level: BTreeMap<usize, Vec<RelationBlock>>,
    /// `differentials[k - 1]` is `d_k : D_k -> D_{k-1}` for `k = 1..=top`.
    differentials: Vec<Matrix>,
}

impl FormalityComplex {
    /// Assembles a complex from explicit differentials and checks that
    /// consecutive maps compose to zero.
    pub fn from_parts(
        ambient_dim: usize,
        num_hyperplanes: usize,
        rank: usize,
        blocks_by_level: BTreeMap<usize, Vec<RelationBlock>>,
        differentials: Vec<Matrix>,
    ) -> Result<Self> {
        let top = differentials.len();
        let c = FormalityComplex {
            ambient_dim,
            num_hyperplanes,
            rank,
            top,
            blocks_by_level,
            differentials,
        };
        c.check_complex()?;
        Ok(c)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn num_hyperplanes(&self) -> usize {
        self.num_hyperplanes
    }

    /// Rank of the underlying arrangement.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Highest level assembled. Equals the rank unless a cap was requested.
    pub fn top(&self) -> usize {
        self.top
    }

    /// `d_k` for `1 <= k <= top`.
    pub fn differential(&self, k: usize) -> &Matrix {
        &self.differentials[k - 1]
    }

    pub fn differentials(&self) -> &[Matrix] {
        &self.differentials
    }

    pub fn blocks(&self, k: usize) -> &[RelationBlock] {
        self.blocks_by_level.get(&k).map_or(&[], Vec::as_slice)
    }

    pub fn blocks_by_level(&self) -> &BTreeMap<usize, Vec<RelationBlock>> {
        &self.blocks_by_level
    }

    /// Starting column of each block of level `k` inside `D_k`.
    pub fn block_offsets(&self, k: usize) -> Vec<usize> {
        let mut acc = 0;
        self.blocks(k)
            .iter()
            .map(|b| {
                let o = acc;
                acc += b.dim();
                o
            })
            .collect()
    }

    /// `[dim D_0, ..., dim D_top]`.
    pub fn dims(&self) -> Vec<usize> {
        let mut dims = vec![self.ambient_dim];
        dims.extend(self.differentials.iter().map(Matrix::cols));
        dims
    }

    /// Checks `d_{k-1} d_k = 0` and shape compatibility for every `k >= 2`.
    pub fn check_complex(&self) -> Result<()> {
        if let Some(d1) = self.differentials.first() {
            if d1.rows() != self.ambient_dim {
                return Err(Error::Internal(format!(
                    "d_1 has {} rows, expected {}",
                    d1.rows(),
                    self.ambient_dim
                )));
            }
        }
        for k in 2..=self.top {
            let (prev, cur) = (self.differential(k - 1), self.differential(k));
            let product = prev.checked_mul(cur).ok_or_else(|| {
                Error::Internal(format!(
                    "d_{} is {}x{} but d_{k} is {}x{}",
                    k - 1,
                    prev.rows(),
                    prev.cols(),
                    cur.rows(),
                    cur.cols()
                ))
            })?;
            if !product.is_zero() {
                return Err(Error::Internal(format!("d_{} d_{k} is nonzero", k - 1)));
            }
        }
        Ok(())
    }
}

/// Builds the complex through level `rank(A)`.
pub fn assemble_complex(a: &Arrangement) -> Result<FormalityComplex> {
    assemble_complex_to(a, a.rank())
}

/// Builds the complex through level `min(max_level, rank(A))`.
pub fn assemble_complex_to(a: &Arrangement, max_level: usize) -> Result<FormalityComplex> {
    if a.is_empty() {
        return Err(Error::InvalidArrangement("arrangement has no hyperplanes".into()));
    }
    let top = max_level.min(a.rank());
    let lat = build_lattice(a, top);

    let mut differentials = vec![a.normal_matrix()];
    let mut blocks_by_level = BTreeMap::new();
    let mut lower: Vec<RelationBlock> = Vec::new();
    for k in 2..=top {
        let blocks = compute_relation_blocks(&lat, a, k, &lower);
        let rows = differentials[k - 2].cols();
        let parts: Vec<&Matrix> = blocks.iter().map(|b| &b.basis).collect();
        differentials.push(Matrix::hstack(rows, &parts));
        blocks_by_level.insert(k, blocks.clone());
        lower = blocks;
    }
    FormalityComplex::from_parts(a.ambient_dim(), a.len(), a.rank(), blocks_by_level, differentials)
}

/// Dimensions, ranks and homology of an assembled complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalityReport {
    /// `[dim D_0, ..., dim D_top]`.
    pub d_dims: Vec<usize>,
    /// `[rank d_1, ..., rank d_top]`.
    pub d_ranks: Vec<usize>,
    /// `[dim H_1, ..., dim H_{top-1}]`.
    pub homology: Vec<usize>,
    /// Largest `k` with `H_1 = ... = H_{k-1} = 0`, or 1 when `H_1 != 0`.
    pub formality_level: usize,
    pub rank: usize,
    /// Highest level assembled; below `rank` only when capped.
    pub top: usize,
}

impl FormalityReport {
    pub fn is_capped(&self) -> bool {
        self.top < self.rank
    }

    /// Human-readable verdict, e.g. "formal, not 3-formal".
    pub fn verdict(&self) -> String {
        verdict(self.formality_level, self.rank, self.top)
    }
}

pub(crate) fn verdict(level: usize, rank: usize, top: usize) -> String {
    let name = |k: usize| {
        if k == 2 {
            "formal".to_string()
        } else {
            format!("{k}-formal")
        }
    };
    if level < top {
        if level <= 1 {
            "not formal".to_string()
        } else {
            format!("{}, not {}", name(level), name(level + 1))
        }
    } else if top < rank {
        format!("{}; levels above {top} not computed", name(level.max(2)))
    } else {
        "k-formal for every k".to_string()
    }
}

/// Largest `k` in `[2, top]` with `H_1 .. H_{k-1}` all zero, 1 if `H_1 != 0`,
/// `top` when nothing fails.
pub fn formality_level(homology: &[usize], top: usize) -> usize {
    match homology.iter().position(|&h| h != 0) {
        Some(i) => i + 1,
        None => top,
    }
}

/// `dim H_i = (dim D_i - rank d_i) - rank d_{i+1}` for `i = 1..top-1`.
pub fn homology_dims(dims: &[usize], ranks: &[usize]) -> Result<Vec<usize>> {
    let top = dims.len() - 1;
    (1..top)
        .map(|i| {
            let (cycles, boundaries) = (dims[i] - ranks[i - 1], ranks[i]);
            cycles.checked_sub(boundaries).ok_or_else(|| {
                Error::Internal(format!(
                    "H_{i} would be negative: {cycles} cycles, {boundaries} boundaries"
                ))
            })
        })
        .collect()
}

pub fn formality_report(c: &FormalityComplex) -> Result<FormalityReport> {
    let d_dims = c.dims();
    let d_ranks: Vec<usize> = c.differentials().iter().map(Matrix::rank).collect();
    let homology = homology_dims(&d_dims, &d_ranks)?;
    let formality_level = formality_level(&homology, c.top());
    Ok(FormalityReport {
        d_dims,
        d_ranks,
        homology,
        formality_level,
        rank: c.rank(),
        top: c.top(),
    })
}

/// True when the columns of `a` and `b` (same row count) span the same space.
pub fn same_column_span(a: &Matrix, b: &Matrix) -> bool {
    if a.rows() != b.rows() {
        return false;
    }
    let ra = a.rank();
    ra == b.rank() && Matrix::hstack(a.rows(), &[a, b]).rank() == ra
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{is_nondegenerate_rank2, parse_arrangement};
    use crate::linalg::{int, scalar_multiple, Scalar};

    const BT_EXAMPLE: &str = include_str!("../examples/bt-example.arr");

    fn bt() -> Arrangement {
        parse_arrangement(BT_EXAMPLE).unwrap()
    }

    fn arr(dim: usize, rows: &[&[i64]]) -> Arrangement {
        let forms: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| int(v)).collect())
            .collect();
        Arrangement::new(dim, &forms).unwrap()
    }

    /// Braid-type forms `x_i - x_j` for the given 1-based edges.
    fn graphic(n: usize, edges: &[(usize, usize)]) -> Arrangement {
        let rows: Vec<Vec<i64>> = edges
            .iter()
            .map(|&(i, j)| {
                let mut r = vec![0; n];
                r[i - 1] = 1;
                r[j - 1] = -1;
                r
            })
            .collect();
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        arr(n, &refs)
    }

    #[test]
    fn full_relation_space_of_bt_example() {
        let a = bt();
        let f = relation_space_f(&a, &(0..10).collect::<Vec<_>>());
        assert_eq!((f.rows(), f.cols()), (10, 6));
        assert!((&a.normal_matrix() * &f).is_zero());
    }

    #[test]
    fn relation_of_one_rank2_flat() {
        let a = bt();
        let f = relation_space_f(&a, &[0, 1, 9]);
        assert_eq!(f.cols(), 1);
        let expected: Vec<Scalar> = [1, -1, 0, 0, 0, 0, 0, 0, 0, -1].iter().map(|&v| int(v)).collect();
        assert!(scalar_multiple(&f.column(0), &expected).is_some());
    }

    #[test]
    fn general_position_pair_has_no_relation() {
        assert_eq!(relation_space_f(&bt(), &[0, 2]).cols(), 0);
    }

    #[test]
    fn f2_span_examples() {
        assert_eq!(f2_span(&bt()).cols(), 6);
        assert_eq!(f2_span(&arr(2, &[&[1, 0], &[0, 1], &[1, 1]])).cols(), 1);
        let c4 = graphic(4, &[(1, 2), (2, 3), (3, 4), (1, 4)]);
        assert_eq!(f2_span(&c4).cols(), 0);
    }

    #[test]
    fn bt_example_blocks() {
        let a = bt();
        let lat = build_lattice(&a, 4);
        let level2 = compute_relation_blocks(&lat, &a, 2, &[]);
        assert_eq!(level2.len(), 7);
        assert!(level2.iter().all(|b| b.dim() == 1 && is_nondegenerate_rank2(&b.flat)));
        let level3 = compute_relation_blocks(&lat, &a, 3, &level2);
        assert!(level3.is_empty());
    }

    #[test]
    fn bt_example_complex_and_report() {
        let c = assemble_complex(&bt()).unwrap();
        assert_eq!(c.dims(), vec![4, 10, 7, 0, 0]);
        let r = formality_report(&c).unwrap();
        assert_eq!(r.d_ranks, vec![4, 6, 0, 0]);
        assert_eq!(r.homology, vec![0, 1, 0]);
        assert_eq!(r.formality_level, 2);
        assert_eq!(r.verdict(), "formal, not 3-formal");
    }

    #[test]
    fn bt_example_d2_matches_printed_rows_up_to_scale() {
        // Rows of the printed 7x10 matrix; each is one relation of length 3.
        let printed: [[i64; 10]; 7] = [
            [1, -1, 0, 0, 0, 0, 0, 0, 0, -1],
            [1, 0, 0, 1, 0, 0, -1, 0, 0, 0],
            [1, 0, 0, 0, 0, 1, 0, -1, 0, 0],
            [0, 2, 1, 0, 0, 0, -1, 0, 0, 0],
            [0, 2, 0, 0, 1, 0, 0, -1, 0, 0],
            [0, 0, 1, 0, 0, 1, 0, 0, -1, 0],
            [0, 0, 0, 1, 1, 0, 0, 0, -1, 0],
        ];
        let c = assemble_complex(&bt()).unwrap();
        let d2 = c.differential(2);
        for (j, row) in printed.iter().enumerate() {
            let expected: Vec<Scalar> = row.iter().map(|&v| int(v)).collect();
            assert!(
                scalar_multiple(&d2.column(j), &expected).is_some(),
                "column {j} of d_2 is not a multiple of printed row {j}"
            );
        }
    }

    #[test]
    fn single_hyperplane() {
        let a = arr(1, &[&[1]]);
        let c = assemble_complex(&a).unwrap();
        assert_eq!(c.dims(), vec![1, 1]);
        assert_eq!(c.differential(1), &Matrix::from_i64_rows(&[[1]]));
        let r = formality_report(&c).unwrap();
        assert!(r.homology.is_empty());
        assert_eq!(r.formality_level, 1);
    }

    #[test]
    fn k4_has_one_level3_block() {
        let a = graphic(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
        let lat = build_lattice(&a, 3);
        let l2 = compute_relation_blocks(&lat, &a, 2, &[]);
        assert_eq!(l2.len(), 4);
        let l3 = compute_relation_blocks(&lat, &a, 3, &l2);
        assert_eq!(l3.len(), 1);
        assert_eq!(l3[0].dim(), 1);
        assert_eq!(l3[0].flat.closure(), &[0, 1, 2, 3, 4, 5]);
        let r = formality_report(&assemble_complex(&a).unwrap()).unwrap();
        assert_eq!(r.homology, vec![0, 0]);
        assert_eq!(r.formality_level, 3);
    }

    #[test]
    fn c4_is_not_formal() {
        let a = graphic(4, &[(1, 2), (2, 3), (3, 4), (1, 4)]);
        let r = formality_report(&assemble_complex(&a).unwrap()).unwrap();
        assert_eq!(r.homology[0], 1);
        assert_eq!(r.formality_level, 1);
        assert_eq!(r.verdict(), "not formal");
    }

    #[test]
    fn capped_assembly() {
        let c = assemble_complex_to(&bt(), 2).unwrap();
        let r = formality_report(&c).unwrap();
        assert_eq!(r.d_dims, vec![4, 10, 7]);
        assert_eq!(r.homology, vec![0]);
        assert_eq!(r.formality_level, 2);
        assert!(r.is_capped());
    }

    #[test]
    fn broken_complex_is_rejected() {
        let d1 = Matrix::from_i64_rows(&[[1, 0]]);
        let d2 = Matrix::from_i64_rows(&[[1], [0]]);
        let err = FormalityComplex::from_parts(1, 2, 1, BTreeMap::new(), vec![d1, d2]);
        assert!(matches!(err, Err(Error::Internal(_))));
    }

    #[test]
    fn negative_homology_is_an_internal_error() {
        assert!(matches!(
            homology_dims(&[1, 2, 3], &[2, 1]),
            Err(Error::Internal(_))
        ));
    }

    #[test]
    fn column_span_comparison() {
        let a = Matrix::from_i64_rows(&[[1, 0], [0, 1], [0, 0]]);
        let b = Matrix::from_i64_rows(&[[1], [1], [0]]);
        assert!(!same_column_span(&a, &b));
        let c = Matrix::from_i64_rows(&[[1, 1], [1, -1], [0, 0]]);
        assert!(same_column_span(&a, &c));
    }
}
