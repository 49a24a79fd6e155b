//! Pipeline outputs checked against brute-force oracles on small instances.

mod common;

use std::collections::BTreeSet;

use common::*;
use formality::complex::f2_span;
use formality::linalg::Scalar;
use formality::{
    assemble_complex, boundary_matrices, build_lattice, flag_complex, formality_report, graphic_arrangement,
    parse_arrangement, simplicial_homology, Graph, Matrix,
};

const BT_EXAMPLE: &str = include_str!("../examples/bt-example.arr");

const BT_PRINTED_D2_ROWS: [[i64; 10]; 7] = [
    [1, -1, 0, 0, 0, 0, 0, 0, 0, -1],
    [1, 0, 0, 1, 0, 0, -1, 0, 0, 0],
    [1, 0, 0, 0, 0, 1, 0, -1, 0, 0],
    [0, 2, 1, 0, 0, 0, -1, 0, 0, 0],
    [0, 2, 0, 0, 1, 0, 0, -1, 0, 0],
    [0, 0, 1, 0, 0, 1, 0, 0, -1, 0],
    [0, 0, 0, 1, 1, 0, 0, 0, -1, 0],
];

#[test]
fn bt_example_ranks_by_minors() {
    let a = parse_arrangement(BT_EXAMPLE).unwrap();
    let phi = a.normal_matrix();
    assert_eq!(minor_rank(&phi), 4);
    assert_eq!(phi.rank(), 4);
    assert_eq!(phi.kernel_basis().cols(), 6);

    let printed = Matrix::from_i64_rows(&BT_PRINTED_D2_ROWS);
    assert_eq!(minor_rank(&printed), 6);
    assert_eq!(printed.rank(), 6);
    assert_eq!(printed.rref().pivot_columns.len(), 6);
}

#[test]
fn braid_flats_are_set_partitions() {
    for n in 2..=5 {
        let g = Graph::complete(n);
        let edges: Vec<(usize, usize)> = g.edges().collect();
        let a = graphic_arrangement(&g).unwrap();
        let lat = build_lattice(&a, n - 1);

        // A partition with b blocks gives the flat of rank n - b made of all
        // edges inside a block.
        for rank in 1..n {
            let mut expected: BTreeSet<Vec<usize>> = BTreeSet::new();
            for p in set_partitions(n) {
                let blocks = p.iter().max().map_or(0, |m| m + 1);
                if n - blocks != rank {
                    continue;
                }
                let closure: Vec<usize> = edges
                    .iter()
                    .enumerate()
                    .filter(|(_, &(i, j))| p[i - 1] == p[j - 1])
                    .map(|(h, _)| h)
                    .collect();
                expected.insert(closure);
            }
            let got: BTreeSet<Vec<usize>> = lat.flats_of_rank(rank).iter().map(|x| x.closure().to_vec()).collect();
            assert_eq!(got, expected, "K_{n}, rank {rank}");
        }
    }
}

#[test]
fn stirling_counts_for_k5() {
    // S(5, b) for b = 4, 3, 2, 1, enumerated by the partition oracle.
    let parts = set_partitions(5);
    let count = |b: usize| parts.iter().filter(|p| p.iter().max().unwrap() + 1 == b).count();
    assert_eq!([count(4), count(3), count(2), count(1)], [10, 25, 15, 1]);
    let lat = build_lattice(&graphic_arrangement(&Graph::complete(5)).unwrap(), 4);
    let got: Vec<usize> = (1..=4).map(|k| lat.flats_of_rank(k).len()).collect();
    assert_eq!(got, vec![10, 25, 15, 1]);
}

#[test]
fn triangle_lattice_by_minors() {
    let a = graphic_arrangement(&Graph::complete(3)).unwrap();
    let phi = a.normal_matrix();
    // Every pair of normals is independent and every pair spans the third.
    for pair in subsets(3, 2) {
        let cols: Vec<Vec<Scalar>> = pair.iter().map(|&j| phi.column(j)).collect();
        assert_eq!(minor_rank(&Matrix::from_columns(3, &cols)), 2);
        let other = (0..3).find(|j| !pair.contains(j)).unwrap();
        assert!(in_span_by_minors(&cols, &phi.column(other)));
    }
    let lat = build_lattice(&a, 2);
    assert_eq!(lat.flats_of_rank(2).len(), 1);
    assert_eq!(lat.flats_of_rank(2)[0].closure(), &[0, 1, 2]);
}

#[test]
fn clique_counts_match_subset_enumeration() {
    assert_eq!(brute_force_clique_counts(&Graph::complete(4)), vec![4, 6, 4, 1]);
    assert_eq!(flag_complex(&Graph::complete(4), 4).face_counts(), vec![4, 6, 4, 1]);

    let graphs = [
        Graph::cycle(4),
        Graph::cycle(6),
        Graph::new(6, [(1, 3), (1, 4), (1, 5), (1, 6), (2, 3), (2, 4), (2, 5), (2, 6), (3, 5), (3, 6), (4, 5), (4, 6)])
            .unwrap(),
        Graph::new(7, [(1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (4, 6), (6, 7), (2, 7), (1, 7)]).unwrap(),
    ];
    for g in &graphs {
        let n = g.num_vertices();
        assert_eq!(flag_complex(g, n).face_counts(), brute_force_clique_counts(g));
    }
}

#[test]
fn cycle_homology_frozen_from_minor_rank() {
    // Oracle: the hand-built boundary of C_m has rank m - 1 by minors, so
    // H_0 = 1 and H_1 = m - (m - 1) = 1.
    for m in 4..=7 {
        assert_eq!(minor_rank(&cycle_boundary(m)), m - 1, "C_{m}");
    }
    for m in 4..=7 {
        let g = Graph::cycle(m);
        let fc = flag_complex(&g, m);
        let cc = boundary_matrices(&fc);
        assert_eq!(cc.boundary(1).unwrap(), &cycle_boundary(m));
        assert_eq!(simplicial_homology(&cc, &fc.face_counts()), vec![1, 1]);
        let r = formality_report(&assemble_complex(&graphic_arrangement(&g).unwrap()).unwrap()).unwrap();
        assert_eq!(r.homology[0], 1);
        assert_eq!(r.formality_level, 1);
    }
}

#[test]
fn c4_has_no_three_term_relations() {
    let a = graphic_arrangement(&Graph::cycle(4)).unwrap();
    let phi = a.normal_matrix();
    for triple in subsets(4, 3) {
        let cols: Vec<Vec<Scalar>> = triple.iter().map(|&j| phi.column(j)).collect();
        assert_eq!(minor_rank(&Matrix::from_columns(4, &cols)), 3);
    }
    assert_eq!(f2_span(&a).cols(), 0);
    assert_eq!(phi.kernel_basis().cols(), 1);
}

#[test]
fn k4_level3_kernel_by_minors() {
    // The four triangle relations of K_4 in edge coordinates 12,13,14,23,24,34.
    let tri = |e: [(usize, i64); 3]| {
        let mut v = vec![0i64; 6];
        for (i, s) in e {
            v[i] = s;
        }
        v
    };
    let rels = [
        tri([(3, 1), (1, -1), (0, 1)]),
        tri([(4, 1), (2, -1), (0, 1)]),
        tri([(5, 1), (2, -1), (1, 1)]),
        tri([(5, 1), (4, -1), (3, 1)]),
    ];
    let rows: Vec<&[i64]> = rels.iter().map(Vec::as_slice).collect();
    let m = Matrix::from_i64_rows(&rows).transpose();
    assert_eq!(minor_rank(&m), 3);
    // One-dimensional kernel, so one level-3 block of dimension 1.
    let c = assemble_complex(&graphic_arrangement(&Graph::complete(4)).unwrap()).unwrap();
    assert_eq!(c.blocks(3).len(), 1);
    assert_eq!(c.blocks(3)[0].dim(), 1);
}
