//! All-to-all ZZ couplings from a nearest-neighbour line.
//!
//! The complete graph `K_L` (even `L`) splits into `L/2` edge-disjoint
//! Hamiltonian paths. Each path is realized on a physical NN line by
//! relabeling qubits with iSWAP gates, which conjugate `Z_k` into
//! `Z_tau(k)`; running the line once per path gives the all-to-all
//! Hamiltonian.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::sim::{phase_distance, CMatrix, DenseHamiltonian, IsingSpec, MAX_DENSE_QUBITS};
use crate::{Error, Result, C64};

/// Largest line handled by [`verify_nn_simulates_ata`].
pub const MAX_VERIFY_SIZE: usize = 6;

pub const VERIFY_TOLERANCE: f64 = 1e-9;

/// A bijection on `1..=L`, stored as the image sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexPermutation {
    mapping: Vec<usize>,
}

impl VertexPermutation {
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let l = mapping.len();
        let mut seen = vec![false; l + 1];
        for &v in &mapping {
            if v == 0 || v > l || seen[v] {
                return Err(Error::InvalidPermutation(format!(
                    "{mapping:?} is not a bijection on 1..={l}"
                )));
            }
            seen[v] = true;
        }
        Ok(Self { mapping })
    }

    pub fn identity(size: usize) -> Self {
        Self {
            mapping: (1..=size).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.mapping.len()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.mapping
    }

    /// Image of position `p` (1-based).
    pub fn get(&self, p: usize) -> usize {
        self.mapping[p - 1]
    }
}

/// An ordered walk that visits every vertex once.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamiltonianPath {
    vertices: Vec<usize>,
}

impl HamiltonianPath {
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Consecutive pairs, each ordered `(min, max)`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.vertices
            .windows(2)
            .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
            .collect()
    }
}

impl From<VertexPermutation> for HamiltonianPath {
    fn from(p: VertexPermutation) -> Self {
        Self { vertices: p.mapping }
    }
}

/// Readings of the zig-zag path formula, tried in this order.
///
/// The printed odd branch `k - 1 - (j-1)/2` never yields a bijection:
/// taken mod `L` it repeats the vertex at `j = 0`, taken mod `L + 1` it
/// produces label 0. The shifted branch `k - 1 - (j+1)/2` is the Walecki
/// zig-zag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HpReading {
    PrintedModL,
    PrintedModLPlus1,
    ShiftedOddModL,
}

impl HpReading {
    pub const ALL: [HpReading; 3] = [
        HpReading::PrintedModL,
        HpReading::PrintedModLPlus1,
        HpReading::ShiftedOddModL,
    ];
}

impl fmt::Display for HpReading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HpReading::PrintedModL => "odd j: (k-1-(j-1)/2 mod L)+1",
            HpReading::PrintedModLPlus1 => "odd j: (k-1-(j-1)/2 mod (L+1))",
            HpReading::ShiftedOddModL => "odd j: (k-1-(j+1)/2 mod L)+1",
        })
    }
}

fn check_path_args(size: usize, k: usize) -> Result<()> {
    if size < 2 {
        return Err(Error::InvalidQubitCount {
            n: size,
            reason: "a path needs at least 2 vertices",
        });
    }
    if k > size / 2 {
        return Err(Error::InvalidPathIndex { k, size });
    }
    Ok(())
}

/// Vertex at positions `j = 0..L` of path `k` under `reading`.
pub fn hp_permutation_with(size: usize, k: usize, reading: HpReading) -> Result<VertexPermutation> {
    check_path_args(size, k)?;
    let l = size as i64;
    let k = k as i64;
    let mapping = (0..l)
        .map(|j| {
            let v = if j % 2 == 0 {
                (k - 1 + j / 2).rem_euclid(l) + 1
            } else {
                match reading {
                    HpReading::PrintedModL => (k - 1 - (j - 1) / 2).rem_euclid(l) + 1,
                    HpReading::PrintedModLPlus1 => (k - 1 - (j - 1) / 2).rem_euclid(l + 1),
                    HpReading::ShiftedOddModL => (k - 1 - (j + 1) / 2).rem_euclid(l) + 1,
                }
            };
            v as usize
        })
        .collect();
    VertexPermutation::new(mapping)
}

/// Path `k`, using the first reading that produces a bijection.
pub fn hp_permutation(size: usize, k: usize) -> Result<VertexPermutation> {
    let mut last = None;
    for reading in HpReading::ALL {
        match hp_permutation_with(size, k, reading) {
            Ok(p) => return Ok(p),
            Err(e @ Error::InvalidPermutation(_)) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one reading tried"))
}

/// `tau_ij` applied to every index of a Z-string support.
pub fn iswap_relabel(support: &BTreeSet<usize>, i: usize, j: usize) -> Result<BTreeSet<usize>> {
    if i == j {
        return Err(Error::SameQubit(i));
    }
    Ok(support.iter().map(|&q| transpose(q, i, j)).collect())
}

fn transpose(q: usize, i: usize, j: usize) -> usize {
    if q == i {
        j
    } else if q == j {
        i
    } else {
        q
    }
}

/// Entrywise `tau_ij` on a layout.
pub fn apply_permutation_to_layout(
    current: &VertexPermutation,
    i: usize,
    j: usize,
) -> Result<VertexPermutation> {
    let l = current.size();
    for q in [i, j] {
        if q == 0 || q > l {
            return Err(Error::InvalidPermutation(format!("label {q} outside 1..={l}")));
        }
    }
    Ok(VertexPermutation {
        mapping: current.mapping.iter().map(|&q| transpose(q, i, j)).collect(),
    })
}

/// Transpositions that take the identity layout to `path`, in order.
pub fn transpositions_for_path(path: &HamiltonianPath) -> Result<Vec<(usize, usize)>> {
    let target = VertexPermutation::new(path.vertices.clone())?;
    let mut layout = VertexPermutation::identity(target.size());
    let mut out = Vec::new();
    for p in 1..=target.size() {
        let (have, want) = (layout.get(p), target.get(p));
        if have != want {
            out.push((have, want));
            layout = apply_permutation_to_layout(&layout, have, want)?;
        }
    }
    debug_assert_eq!(layout, target);
    Ok(out)
}

/// Edge bookkeeping of a path set against `K_L`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverReport {
    pub size: usize,
    pub missing: Vec<(usize, usize)>,
    pub duplicated: Vec<(usize, usize)>,
}

impl CoverReport {
    pub fn is_exact(&self) -> bool {
        self.missing.is_empty() && self.duplicated.is_empty()
    }
}

pub fn cover_report(size: usize, paths: &[HamiltonianPath]) -> CoverReport {
    let mut counts: HashMap<(usize, usize), usize> = HashMap::new();
    for p in paths {
        for e in p.edges() {
            *counts.entry(e).or_default() += 1;
        }
    }
    let mut missing = Vec::new();
    let mut duplicated = Vec::new();
    for a in 1..=size {
        for b in a + 1..=size {
            match counts.get(&(a, b)).copied().unwrap_or(0) {
                0 => missing.push((a, b)),
                1 => {}
                _ => duplicated.push((a, b)),
            }
        }
    }
    CoverReport {
        size,
        missing,
        duplicated,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    pub reading: HpReading,
    pub paths: Vec<HamiltonianPath>,
}

/// Paths `k = 1..=L/2` for one reading, or `None` if some `k` is not a
/// bijection.
pub fn paths_for_reading(size: usize, reading: HpReading) -> Result<Option<Vec<HamiltonianPath>>> {
    check_path_args(size, 0)?;
    let mut out = Vec::with_capacity(size / 2);
    for k in 1..=size / 2 {
        match hp_permutation_with(size, k, reading) {
            Ok(p) => out.push(p.into()),
            Err(Error::InvalidPermutation(_)) => return Ok(None),
            Err(e) => return Err(e),
        }
    }
    Ok(Some(out))
}

/// Splits `K_L` into Hamiltonian paths and checks that every edge is
/// covered exactly once. The first reading that passes is returned; if
/// none does, the error names an offending edge of the last candidate.
pub fn decompose_complete_graph(size: usize) -> Result<Decomposition> {
    let mut failure = None;
    for reading in HpReading::ALL {
        let Some(paths) = paths_for_reading(size, reading)? else {
            continue;
        };
        let report = cover_report(size, &paths);
        if report.is_exact() {
            return Ok(Decomposition { reading, paths });
        }
        failure = Some(match (report.missing.first(), report.duplicated.first()) {
            (_, Some(&(a, b))) => Error::CoverFailure { size, a, b, problem: "covered more than once" },
            (Some(&(a, b)), None) => Error::CoverFailure { size, a, b, problem: "not covered" },
            (None, None) => unreachable!("inexact report has an offending edge"),
        });
    }
    Err(failure.unwrap_or_else(|| {
        Error::VerificationFailed(format!("no path reading yields permutations for L={size}"))
    }))
}

fn check_dense_size(size: usize) -> Result<()> {
    if size == 0 || size > MAX_DENSE_QUBITS {
        return Err(Error::InvalidQubitCount {
            n: size,
            reason: "dense matrices are limited to 1..=10 qubits",
        });
    }
    Ok(())
}

/// Dense iSWAP on qubits `i`, `j` of an `L`-qubit register (qubit 1 is the
/// most significant bit): `|01> -> i|10>`, `|10> -> i|01>`.
pub fn iswap_matrix(size: usize, i: usize, j: usize) -> Result<CMatrix> {
    check_dense_size(size)?;
    if i == j {
        return Err(Error::SameQubit(i));
    }
    for q in [i, j] {
        if q == 0 || q > size {
            return Err(Error::QubitOutOfRange { qubit: q, n: size });
        }
    }
    let dim = 1usize << size;
    let (si, sj) = (size - i, size - j);
    let mut m = CMatrix::zeros(dim, dim);
    for x in 0..dim {
        let (bi, bj) = ((x >> si) & 1, (x >> sj) & 1);
        if bi == bj {
            m[(x, x)] = C64::new(1.0, 0.0);
        } else {
            let y = x ^ (1 << si) ^ (1 << sj);
            m[(y, x)] = C64::new(0.0, 1.0);
        }
    }
    Ok(m)
}

/// Diagonal matrix of the Z-string on `support`.
pub fn z_string_matrix(size: usize, support: &BTreeSet<usize>) -> Result<CMatrix> {
    check_dense_size(size)?;
    if let Some(&q) = support.iter().find(|&&q| q == 0 || q > size) {
        return Err(Error::QubitOutOfRange { qubit: q, n: size });
    }
    let dim = 1usize << size;
    let mut m = CMatrix::zeros(dim, dim);
    for x in 0..dim {
        let ones = support.iter().filter(|&&q| (x >> (size - q)) & 1 == 1).count();
        m[(x, x)] = C64::new(if ones % 2 == 0 { 1.0 } else { -1.0 }, 0.0);
    }
    Ok(m)
}

/// Product of iSWAPs realizing the transpositions, first applied first.
pub fn layout_unitary(size: usize, transpositions: &[(usize, usize)]) -> Result<CMatrix> {
    check_dense_size(size)?;
    let dim = 1usize << size;
    transpositions
        .iter()
        .try_fold(CMatrix::identity(dim, dim), |acc, &(i, j)| {
            Ok(iswap_matrix(size, i, j)? * acc)
        })
}

/// Outcome of the dense NN-to-all-to-all check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtaVerification {
    pub size: usize,
    pub reading: HpReading,
    pub paths: Vec<HamiltonianPath>,
    pub time: f64,
    pub distance: f64,
}

impl AtaVerification {
    pub fn passed(&self) -> bool {
        self.distance < VERIFY_TOLERANCE
    }
}

/// Coupling of a homogeneous nearest-neighbour line, or an error
/// explaining why `resource` is not one.
fn line_coupling(resource: &IsingSpec) -> Result<f64> {
    let n = resource.n_qubits();
    let mut g = None;
    for (j, k) in crate::sim::pairs(n) {
        let c = resource.coupling(j, k)?;
        if k == j + 1 {
            match g {
                None => g = Some(c),
                Some(g0) if g0 != c => {
                    return Err(Error::NotImplemented("weighted nearest-neighbour resources"))
                }
                _ => {}
            }
        } else if c != 0.0 {
            return Err(Error::InvalidConfig(format!(
                "resource couples non-neighbours ({j},{k}); expected a nearest-neighbour line"
            )));
        }
    }
    Ok(g.unwrap_or(0.0))
}

/// Homogeneous line `g sum_p Z_p Z_(p+1)` on `size` qubits.
pub fn nn_line(size: usize, g: f64) -> Result<IsingSpec> {
    IsingSpec::from_pairs(size, (1..size).map(|p| (p, p + 1, g)))
}

/// Runs the line once per path, each time conjugated by the iSWAP layout
/// of that path, and compares with `exp(i t g sum_{j<k} Z_j Z_k)`.
pub fn verify_nn_simulates_ata(size: usize, resource: &IsingSpec, t: f64) -> Result<AtaVerification> {
    if size != resource.n_qubits() {
        return Err(Error::DimensionMismatch {
            expected: size,
            found: resource.n_qubits(),
        });
    }
    if size > MAX_VERIFY_SIZE {
        return Err(Error::InvalidQubitCount {
            n: size,
            reason: "dense verification is limited to 6 qubits",
        });
    }
    let g = line_coupling(resource)?;
    let decomposition = decompose_complete_graph(size)?;
    let line = DenseHamiltonian::from_ising(resource).unitary(t);
    let dim = 1usize << size;
    let mut total = CMatrix::identity(dim, dim);
    for path in &decomposition.paths {
        let w = layout_unitary(size, &transpositions_for_path(path)?)?;
        let realized = &w * &line * w.adjoint();
        let wanted_spec = IsingSpec::from_pairs(
            size,
            path.edges().into_iter().map(|(a, b)| (a, b, g)),
        )?;
        let wanted = DenseHamiltonian::from_ising(&wanted_spec).unitary(t);
        let d = phase_distance(&realized, &wanted)?;
        if !(d < VERIFY_TOLERANCE) {
            return Err(Error::VerificationFailed(format!(
                "path {:?} realized with distance {d:.3e}",
                path.vertices()
            )));
        }
        total = realized * total;
    }
    let ata = IsingSpec::from_vector(size, vec![g; crate::sim::pair_count(size)])?;
    let ata_u = DenseHamiltonian::from_ising(&ata).unitary(t);
    let distance = phase_distance(&total, &ata_u)?;
    Ok(AtaVerification {
        size,
        reading: decomposition.reading,
        paths: decomposition.paths,
        time: t,
        distance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    #[test]
    fn two_vertices() {
        for k in 0..=1 {
            let p = hp_permutation(2, k).unwrap();
            let path: HamiltonianPath = p.into();
            assert_eq!(path.edges(), vec![(1, 2)]);
        }
        let d = decompose_complete_graph(2).unwrap();
        assert_eq!(d.paths.len(), 1);
    }

    #[test]
    fn printed_reading_is_never_a_bijection() {
        for l in 2..=10 {
            for k in 0..=l / 2 {
                assert!(hp_permutation_with(l, k, HpReading::PrintedModL).is_err());
                assert!(hp_permutation_with(l, k, HpReading::PrintedModLPlus1).is_err());
            }
        }
    }

    #[test]
    fn every_path_is_a_bijection() {
        for l in 2..=10 {
            for k in 0..=l / 2 {
                let p = hp_permutation(l, k).unwrap();
                assert_eq!(p.size(), l);
            }
            assert_eq!(
                hp_permutation(l, l / 2 + 1),
                Err(Error::InvalidPathIndex { k: l / 2 + 1, size: l })
            );
        }
    }

    #[test]
    fn four_vertices() {
        let d = decompose_complete_graph(4).unwrap();
        assert_eq!(d.reading, HpReading::ShiftedOddModL);
        let verts: Vec<&[usize]> = d.paths.iter().map(|p| p.vertices()).collect();
        assert_eq!(verts, vec![&[1, 4, 2, 3][..], &[2, 1, 3, 4][..]]);
        let mut edges: Vec<_> = d.paths.iter().flat_map(|p| p.edges()).collect();
        edges.sort();
        assert_eq!(edges, vec![(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
    }

    #[test]
    fn even_sizes_cover_exactly() {
        for l in [2, 4, 6, 8, 10] {
            let d = decompose_complete_graph(l).unwrap();
            assert_eq!(d.paths.len(), l / 2);
            assert!(cover_report(l, &d.paths).is_exact());
        }
    }

    #[test]
    fn odd_sizes_report_missing_edges() {
        for l in [3, 5, 7] {
            match decompose_complete_graph(l) {
                Err(Error::CoverFailure { size, a, b, .. }) => {
                    assert_eq!(size, l);
                    assert!(a < b && b <= l);
                }
                other => panic!("L={l}: {other:?}"),
            }
        }
    }

    #[test]
    fn relabel_examples() {
        assert_eq!(iswap_relabel(&set(&[1, 3]), 1, 2).unwrap(), set(&[2, 3]));
        assert_eq!(iswap_relabel(&set(&[3, 4]), 1, 2).unwrap(), set(&[3, 4]));
        let s = set(&[1, 4]);
        let twice = iswap_relabel(&iswap_relabel(&s, 1, 4).unwrap(), 1, 4).unwrap();
        assert_eq!(twice, s);
        assert_eq!(iswap_relabel(&s, 2, 2), Err(Error::SameQubit(2)));
    }

    #[test]
    fn layout_examples() {
        let id = VertexPermutation::identity(4);
        let p = apply_permutation_to_layout(&id, 1, 2).unwrap();
        assert_eq!(p.as_slice(), &[2, 1, 3, 4]);
        let a = apply_permutation_to_layout(&apply_permutation_to_layout(&id, 1, 2).unwrap(), 3, 4);
        let b = apply_permutation_to_layout(&apply_permutation_to_layout(&id, 3, 4).unwrap(), 1, 2);
        assert_eq!(a.unwrap(), b.unwrap());
        assert!(apply_permutation_to_layout(&id, 1, 5).is_err());
        assert!(VertexPermutation::new(vec![1, 1, 2]).is_err());
    }

    #[test]
    fn transpositions_reach_the_path() {
        let path: HamiltonianPath = hp_permutation(6, 2).unwrap().into();
        let ts = transpositions_for_path(&path).unwrap();
        assert!(ts.len() < 6);
        let mut layout = VertexPermutation::identity(6);
        for (i, j) in ts {
            layout = apply_permutation_to_layout(&layout, i, j).unwrap();
        }
        assert_eq!(layout.as_slice(), path.vertices());
    }

    #[test]
    fn iswap_conjugates_z() {
        let u = iswap_matrix(3, 1, 3).unwrap();
        let z1 = z_string_matrix(3, &set(&[1])).unwrap();
        let z3 = z_string_matrix(3, &set(&[3])).unwrap();
        assert!(phase_distance(&(&u * z1 * u.adjoint()), &z3).unwrap() < 1e-14);
    }

    #[test]
    fn layouts_are_monomial() {
        let u = layout_unitary(4, &[(1, 2), (2, 4), (3, 1)]).unwrap();
        for r in 0..16 {
            let nz: Vec<_> = (0..16).filter(|&c| u[(r, c)].norm() > 1e-12).collect();
            assert_eq!(nz.len(), 1);
            assert!((u[(r, nz[0])].norm() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn nn_line_simulates_all_to_all() {
        for (l, t) in [(2, 0.4), (4, 0.37), (4, -1.3), (6, 0.81)] {
            let v = verify_nn_simulates_ata(l, &nn_line(l, 1.0).unwrap(), t).unwrap();
            assert!(v.passed(), "L={l}: {}", v.distance);
            assert_eq!(v.paths.len(), l / 2);
        }
    }

    #[test]
    fn verification_rejects_bad_resources() {
        let weighted = IsingSpec::from_pairs(4, [(1, 2, 1.0), (2, 3, 2.0), (3, 4, 1.0)]).unwrap();
        assert!(matches!(
            verify_nn_simulates_ata(4, &weighted, 1.0),
            Err(Error::NotImplemented(_))
        ));
        let long = IsingSpec::homogeneous(4, 1.0).unwrap();
        assert!(verify_nn_simulates_ata(4, &long, 1.0).is_err());
        assert!(verify_nn_simulates_ata(8, &nn_line(8, 1.0).unwrap(), 1.0).is_err());
        assert!(verify_nn_simulates_ata(3, &nn_line(3, 1.0).unwrap(), 1.0).is_err());
    }
}
