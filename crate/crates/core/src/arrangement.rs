//! Central hyperplane arrangements and their lattice of flats.
//!
//! A flat is identified with its closure: the set of every hyperplane
//! containing the intersection subspace. That set is also the localization
//! `A_X`, so no separate sub-arrangement type is needed.

use std::collections::BTreeMap;

use crate::error::{Error, ParseError, Result, MAX_HYPERPLANES};
use crate::linalg::{normalize_leading, parse_scalar, Matrix, RowSpace, Scalar};

/// A linear hyperplane, stored as its defining form with leading coefficient 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    normal: Vec<Scalar>,
}

impl Hyperplane {
    /// Returns `None` for the zero form.
    pub fn new(form: &[Scalar]) -> Option<Self> {
        normalize_leading(form).map(|normal| Hyperplane { normal })
    }

    pub fn normal(&self) -> &[Scalar] {
        &self.normal
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    ambient_dim: usize,
    hyperplanes: Vec<Hyperplane>,
    rank: usize,
}

impl Arrangement {
    /// Builds an arrangement from defining forms, normalizing each. Rejects
    /// zero forms, repeated hyperplanes, an empty list and more than
    /// [`MAX_HYPERPLANES`] hyperplanes.
    pub fn new(ambient_dim: usize, forms: &[Vec<Scalar>]) -> Result<Self> {
        if forms.is_empty() {
            return Err(ParseError::EmptyArrangement.into());
        }
        if forms.len() > MAX_HYPERPLANES {
            return Err(ParseError::TooManyHyperplanes { count: forms.len() }.into());
        }
        let mut hyperplanes: Vec<Hyperplane> = Vec::with_capacity(forms.len());
        for (i, f) in forms.iter().enumerate() {
            if f.len() != ambient_dim {
                return Err(Error::InvalidArrangement(format!(
                    "hyperplane {} has {} coordinates, expected {ambient_dim}",
                    i + 1,
                    f.len()
                )));
            }
            let h = Hyperplane::new(f).ok_or_else(|| {
                Error::InvalidArrangement(format!("hyperplane {} has a zero normal", i + 1))
            })?;
            if let Some(j) = hyperplanes.iter().position(|g| *g == h) {
                return Err(Error::InvalidArrangement(format!(
                    "hyperplanes {} and {} coincide",
                    j + 1,
                    i + 1
                )));
            }
            hyperplanes.push(h);
        }
        Ok(Self::from_normalized(ambient_dim, hyperplanes))
    }

    fn from_normalized(ambient_dim: usize, hyperplanes: Vec<Hyperplane>) -> Self {
        let rank = RowSpace::spanned_by(ambient_dim, hyperplanes.iter().map(|h| h.normal())).rank();
        Arrangement {
            ambient_dim,
            hyperplanes,
            rank,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn normal(&self, i: usize) -> &[Scalar] {
        self.hyperplanes[i].normal()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The `ℓ x n` matrix whose columns are the defining forms: the map
    /// `e_H ↦ α_H`.
    pub fn normal_matrix(&self) -> Matrix {
        self.normal_matrix_of(&(0..self.len()).collect::<Vec<_>>())
    }

    /// Columns restricted to `indices`, in that order.
    pub fn normal_matrix_of(&self, indices: &[usize]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = indices.iter().map(|&i| self.normal(i).to_vec()).collect();
        Matrix::from_columns(self.ambient_dim, &cols)
    }

    pub fn span_of(&self, indices: &[usize]) -> RowSpace {
        RowSpace::spanned_by(self.ambient_dim, indices.iter().map(|&i| self.normal(i)))
    }

    /// All hyperplanes whose normal lies in the span of the normals of
    /// `indices`, sorted.
    pub fn closure(&self, indices: &[usize]) -> Vec<usize> {
        let span = self.span_of(indices);
        (0..self.len())
            .filter(|&i| span.contains(self.normal(i)))
            .collect()
    }

    /// The sub-arrangement formed by `indices`, keeping their order.
    pub fn restrict(&self, indices: &[usize]) -> Arrangement {
        let hyperplanes = indices.iter().map(|&i| self.hyperplanes[i].clone()).collect();
        Self::from_normalized(self.ambient_dim, hyperplanes)
    }
}

/// Parses the arrangement text format: `#` comment lines anywhere, a header
/// line with the ambient dimension, then one hyperplane per line as
/// whitespace-separated rationals.
pub fn parse_arrangement(text: &str) -> Result<Arrangement, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (line, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let ambient_dim: usize = header
        .parse()
        .map_err(|_| ParseError::MalformedInteger {
            line,
            token: header.to_string(),
        })?;

    let mut hyperplanes: Vec<Hyperplane> = Vec::new();
    let mut source_lines: Vec<usize> = Vec::new();
    for (line, l) in lines {
        let coords = l
            .split_whitespace()
            .map(|t| {
                parse_scalar(t).ok_or_else(|| ParseError::MalformedRational {
                    line,
                    token: t.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if coords.len() != ambient_dim {
            return Err(ParseError::WrongCoordinateCount {
                line,
                expected: ambient_dim,
                found: coords.len(),
            });
        }
        let h = Hyperplane::new(&coords).ok_or(ParseError::ZeroNormal { line })?;
        if let Some(j) = hyperplanes.iter().position(|g| *g == h) {
            return Err(ParseError::DuplicateHyperplane {
                line,
                first_line: source_lines[j],
            });
        }
        hyperplanes.push(h);
        source_lines.push(line);
    }
    if hyperplanes.is_empty() {
        return Err(ParseError::EmptyArrangement);
    }
    if hyperplanes.len() > MAX_HYPERPLANES {
        return Err(ParseError::TooManyHyperplanes {
            count: hyperplanes.len(),
        });
    }
    Ok(Arrangement::from_normalized(ambient_dim, hyperplanes))
}

/// A flat of the intersection lattice, represented by its closure.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Flat {
    closure: Vec<usize>,
    mask: u64,
    rank: usize,
}

impl Flat {
    pub(crate) fn new(closure: Vec<usize>, rank: usize) -> Self {
        let mask = closure.iter().fold(0u64, |m, &i| m | (1 << i));
        Flat {
            closure,
            mask,
            rank,
        }
    }

    /// Sorted indices of the hyperplanes containing this flat.
    pub fn closure(&self) -> &[usize] {
        &self.closure
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn contains_hyperplane(&self, h: usize) -> bool {
        self.mask & (1 << h) != 0
    }

    /// `closure(self) ⊆ closure(other)`.
    pub fn is_below(&self, other: &Flat) -> bool {
        self.mask & !other.mask == 0
    }

    /// `closure(self) ⊊ closure(other)`.
    pub fn is_strictly_below(&self, other: &Flat) -> bool {
        self.is_below(other) && self.mask != other.mask
    }
}

impl PartialOrd for Flat {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Rank first, then lexicographic on the sorted closure.
impl Ord for Flat {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.rank
            .cmp(&other.rank)
            .then_with(|| self.closure.cmp(&other.closure))
    }
}

/// Flats of rank `1..=max_rank`, each rank sorted lexicographically by
/// closure.
#[derive(Clone, Debug)]
pub struct Lattice {
    flats_by_rank: BTreeMap<usize, Vec<Flat>>,
}

impl Lattice {
    pub fn max_rank(&self) -> usize {
        self.flats_by_rank.keys().next_back().copied().unwrap_or(0)
    }

    pub fn flats_of_rank(&self, k: usize) -> &[Flat] {
        self.flats_by_rank.get(&k).map_or(&[], Vec::as_slice)
    }

    pub fn flats_by_rank(&self) -> &BTreeMap<usize, Vec<Flat>> {
        &self.flats_by_rank
    }

    pub fn iter(&self) -> impl Iterator<Item = &Flat> {
        self.flats_by_rank.values().flatten()
    }

    pub fn len(&self) -> usize {
        self.flats_by_rank.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, x: &Flat) -> bool {
        self.flats_of_rank(x.rank).binary_search(x).is_ok()
    }
}

/// Builds the flats of rank at most `max_rank` (clamped to the rank of the
/// arrangement), rank by rank.
///
/// Each rank-`(k+1)` flat covering a rank-`k` flat `X` is `X ∪ C` where `C`
/// is a class of hyperplanes outside `X` whose normals become parallel after
/// reducing modulo the span of `X`.
pub fn build_lattice(a: &Arrangement, max_rank: usize) -> Lattice {
    let max_rank = max_rank.min(a.rank());
    let mut flats_by_rank = BTreeMap::new();
    if max_rank == 0 {
        return Lattice { flats_by_rank };
    }

    let mut level: BTreeMap<Vec<usize>, RowSpace> = BTreeMap::new();
    for i in 0..a.len() {
        let closure = a.closure(&[i]);
        level
            .entry(closure)
            .or_insert_with(|| a.span_of(&[i]));
    }
    flats_by_rank.insert(1, level.keys().map(|c| Flat::new(c.clone(), 1)).collect());

    for k in 1..max_rank {
        let mut next: BTreeMap<Vec<usize>, RowSpace> = BTreeMap::new();
        for (closure, span) in &level {
            let inside = Flat::new(closure.clone(), k);
            // Remainders of every outside normal, normalized so that parallel
            // remainders compare equal.
            let mut classes: BTreeMap<Vec<Scalar>, Vec<usize>> = BTreeMap::new();
            for h in (0..a.len()).filter(|&h| !inside.contains_hyperplane(h)) {
                let rem = span.reduce(a.normal(h));
                let key = normalize_leading(&rem).expect("outside hyperplane reduces to nonzero");
                classes.entry(key).or_default().push(h);
            }
            for members in classes.into_values() {
                let mut cover: Vec<usize> = closure.iter().chain(&members).copied().collect();
                cover.sort_unstable();
                if next.contains_key(&cover) {
                    continue;
                }
                let mut s = span.clone();
                s.insert(a.normal(members[0]));
                next.insert(cover, s);
            }
        }
        flats_by_rank.insert(
            k + 1,
            next.keys().map(|c| Flat::new(c.clone(), k + 1)).collect(),
        );
        level = next;
    }
    Lattice { flats_by_rank }
}

/// The flats of `lat` lying below `x` (including `x`), i.e. the lattice of
/// the localization `A_X` up to rank `x.rank()`. Lattice order is kept.
pub fn localization<'a>(lat: &'a Lattice, x: &Flat) -> Vec<&'a Flat> {
    lat.iter().filter(|y| y.is_below(x)).collect()
}

/// Whether a rank-2 flat is nondegenerate, i.e. has at least 3 hyperplanes.
pub fn is_nondegenerate_rank2(x: &Flat) -> bool {
    x.rank == 2 && x.closure.len() >= 3
}
