//! Irreducible character degrees by Dixon's modular method.
//!
//! For a prime `p ≡ 1 (mod exp G)` with `p > 2√|G|`, the class algebra
//! structure constants `a_ijk` reduced mod `p` have simultaneous
//! one-dimensional eigenspaces, one per irreducible character. Each is
//! spanned by the central-character vector `ω`, and the degree is recovered
//! from `Σ_k ω_k ω_k* / |K_k| = |G| / χ(1)^2`. Only degrees are produced;
//! character values are never lifted back to characteristic zero.

use std::fmt;

use thiserror::Error;

use crate::arith::{is_prime, mul_mod, pow_mod, DegreeSet};
use crate::permgroup::PermGroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharDegError {
    #[error("class matrix {matrix} is not diagonalizable over GF({p}) on a subspace of dimension {dim}")]
    NotDiagonalizable { matrix: usize, p: u64, dim: usize },
    #[error("eigenspace splitting stalled with subspace dimensions {dims:?} over GF({p})")]
    SplitStalled { p: u64, dims: Vec<usize> },
    #[error("invalid central character vector: {0}")]
    InvalidOmega(String),
    #[error("sum of squared degrees {sum} differs from the group order {order}")]
    SquareSumMismatch { sum: u64, order: u64 },
}

/// Smallest prime `p ≡ 1 (mod e)` with `p > 2√order`.
pub fn choose_dixon_prime(order: u64, exponent: u64) -> u64 {
    let e = exponent.max(1);
    let bound = 4 * order as u128;
    let mut p = e + 1;
    loop {
        if (p as u128) * (p as u128) > bound && is_prime(p) {
            return p;
        }
        p += e;
    }
}

/// Dense square matrix over GF(p), row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GfMatrix {
    modulus: u64,
    size: usize,
    data: Vec<u64>,
}

impl GfMatrix {
    pub fn zeros(size: usize, modulus: u64) -> Self {
        GfMatrix { modulus, size, data: vec![0; size * size] }
    }

    pub fn identity(size: usize, modulus: u64) -> Self {
        let mut m = GfMatrix::zeros(size, modulus);
        for i in 0..size {
            m.data[i * size + i] = 1 % modulus;
        }
        m
    }

    /// Builds a matrix from rows, reducing every entry mod `modulus`.
    pub fn from_rows(rows: &[Vec<u64>], modulus: u64) -> Self {
        let size = rows.len();
        let mut data = Vec::with_capacity(size * size);
        for row in rows {
            assert_eq!(row.len(), size, "matrix must be square");
            data.extend(row.iter().map(|&x| x % modulus));
        }
        GfMatrix { modulus, size, data }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, k: usize) -> u64 {
        self.data[i * self.size + k]
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.size..(i + 1) * self.size]
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        (0..self.size)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| (acc + mul_mod(a, b, self.modulus)) % self.modulus)
            })
            .collect()
    }

    pub fn mul(&self, other: &GfMatrix) -> GfMatrix {
        let n = self.size;
        let p = self.modulus;
        let mut out = GfMatrix::zeros(n, p);
        for i in 0..n {
            for t in 0..n {
                let a = self.get(i, t);
                if a == 0 {
                    continue;
                }
                for k in 0..n {
                    let cell = &mut out.data[i * n + k];
                    *cell = (*cell + mul_mod(a, other.get(t, k), p)) % p;
                }
            }
        }
        out
    }
}

impl fmt::Display for GfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.size {
            let row: Vec<String> = self.row(i).iter().map(u64::to_string).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Central character values `ω_k = |K_k| χ(g_k) / χ(1)` reduced mod `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaVector {
    pub modulus: u64,
    pub entries: Vec<u64>,
}

/// Exact class algebra structure constants
/// `a_ijk = #{(x, y) ∈ K_i × K_j : xy = g_k}` with `g_k` the stored
/// representative of class `k`.
#[derive(Debug, Clone)]
pub struct ClassAlgebra {
    classes: usize,
    constants: Vec<u64>,
}

impl ClassAlgebra {
    pub fn new(g: &PermGroup) -> Self {
        let r = g.class_count();
        let mut constants = vec![0u64; r * r * r];
        let inverses: Vec<_> = g.elements().iter().map(|x| x.inverse()).collect();
        for k in 0..r {
            let gk = g.representative(k);
            for (xi, xinv) in inverses.iter().enumerate() {
                let y = xinv.then(gk);
                let yi = g.index_of(&y).expect("group is closed");
                let (ci, cj) = (g.class_of(xi), g.class_of(yi));
                constants[(ci * r + cj) * r + k] += 1;
            }
        }
        ClassAlgebra { classes: r, constants }
    }

    pub fn class_count(&self) -> usize {
        self.classes
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> u64 {
        self.constants[(i * self.classes + j) * self.classes + k]
    }

    /// `M_j` with `(i, k)` entry `a_ijk mod p`.
    pub fn matrix(&self, j: usize, p: u64) -> GfMatrix {
        let r = self.classes;
        let mut m = GfMatrix::zeros(r, p);
        for i in 0..r {
            for k in 0..r {
                m.data[i * r + k] = self.get(i, j, k) % p;
            }
        }
        m
    }
}

/// The class matrix `M_j` of `g` over GF(p).
pub fn class_matrix(g: &PermGroup, j: usize, p: u64) -> GfMatrix {
    ClassAlgebra::new(g).matrix(j, p)
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Reduces `rows` to reduced row echelon form in place, dropping zero rows.
/// Returns the pivot column of each surviving row.
fn rref(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..width {
        let Some(found) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, found);
        let inv = inv_mod(rows[rank][col], p);
        for x in rows[rank].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col] == 0 {
                continue;
            }
            let factor = row[col];
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = (*x + p - mul_mod(factor, y, p)) % p;
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    pivots
}

/// Basis of the right nullspace of a `d × d` matrix given by rows.
fn nullspace(mut rows: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let d = rows.first().map_or(0, Vec::len);
    let pivots = rref(&mut rows, p);
    let free: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0; d];
            v[f] = 1;
            for (row, &pc) in rows.iter().zip(&pivots) {
                v[pc] = (p - row[f]) % p;
            }
            v
        })
        .collect()
}

/// A subspace of GF(p)^r held as an RREF basis.
struct Subspace {
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    fn new(mut vectors: Vec<Vec<u64>>, p: u64) -> Self {
        let pivots = rref(&mut vectors, p);
        Subspace { basis: vectors, pivots }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Matrix of `m` restricted to this subspace, as rows of coordinates:
    /// entry `(s, t)` is coordinate `s` of `m b_t`. `None` if the subspace
    /// is not invariant.
    fn restrict(&self, m: &GfMatrix, p: u64) -> Option<Vec<Vec<u64>>> {
        let d = self.dim();
        let mut out = vec![vec![0; d]; d];
        for (t, b) in self.basis.iter().enumerate() {
            let image = m.mul_vec(b);
            let coords: Vec<u64> = self.pivots.iter().map(|&c| image[c]).collect();
            let mut residual = image;
            for (coef, row) in coords.iter().zip(&self.basis) {
                for (x, &y) in residual.iter_mut().zip(row) {
                    *x = (*x + p - mul_mod(*coef, y, p)) % p;
                }
            }
            if residual.iter().any(|&x| x != 0) {
                return None;
            }
            for (s, c) in coords.into_iter().enumerate() {
                out[s][t] = c;
            }
        }
        Some(out)
    }

    fn lift(&self, coefficients: &[u64], p: u64) -> Vec<u64> {
        let mut v = vec![0; self.basis[0].len()];
        for (&c, row) in coefficients.iter().zip(&self.basis) {
            for (x, &y) in v.iter_mut().zip(row) {
                *x = (*x + mul_mod(c, y, p)) % p;
            }
        }
        v
    }
}

/// Splits GF(p)^r into the simultaneous eigenspaces of the commuting
/// `matrices`, returning one normalized vector per one-dimensional space.
pub fn split_eigenspaces(matrices: &[GfMatrix], p: u64) -> Result<Vec<OmegaVector>, CharDegError> {
    let Some(first) = matrices.first() else {
        return Ok(Vec::new());
    };
    let r = first.size();
    let whole = Subspace::new(GfMatrix::identity(r, p).data.chunks(r).map(<[u64]>::to_vec).collect(), p);
    let mut pending = vec![whole];
    let mut done: Vec<Subspace> = Vec::new();
    for (index, m) in matrices.iter().enumerate() {
        let mut next = Vec::new();
        for space in pending {
            if space.dim() == 1 {
                done.push(space);
                continue;
            }
            let d = space.dim();
            let restricted = space
                .restrict(m, p)
                .ok_or(CharDegError::NotDiagonalizable { matrix: index, p, dim: d })?;
            let mut found = 0;
            let mut pieces = Vec::new();
            for lambda in 0..p {
                let shifted: Vec<Vec<u64>> = restricted
                    .iter()
                    .enumerate()
                    .map(|(s, row)| {
                        let mut row = row.clone();
                        row[s] = (row[s] + p - lambda) % p;
                        row
                    })
                    .collect();
                let kernel = nullspace(shifted, p);
                if kernel.is_empty() {
                    continue;
                }
                found += kernel.len();
                let vectors = kernel.iter().map(|c| space.lift(c, p)).collect();
                pieces.push(Subspace::new(vectors, p));
                if found == d {
                    break;
                }
            }
            if found != d {
                return Err(CharDegError::NotDiagonalizable { matrix: index, p, dim: d });
            }
            for piece in pieces {
                if piece.dim() == 1 {
                    done.push(piece);
                } else {
                    next.push(piece);
                }
            }
        }
        pending = next;
        if pending.is_empty() {
            break;
        }
    }
    if !pending.is_empty() {
        let mut dims: Vec<usize> = pending.iter().map(Subspace::dim).collect();
        dims.sort_unstable();
        return Err(CharDegError::SplitStalled { p, dims });
    }
    let mut out = Vec::with_capacity(done.len());
    for space in done {
        let v = &space.basis[0];
        if v[0] == 0 {
            return Err(CharDegError::InvalidOmega(
                "eigenvector vanishes at the identity class".into(),
            ));
        }
        let scale = inv_mod(v[0], p);
        let entries = v.iter().map(|&x| mul_mod(x, scale, p)).collect();
        out.push(OmegaVector { modulus: p, entries });
    }
    out.sort_by(|a, b| a.entries.cmp(&b.entries));
    Ok(out)
}

/// Degree `χ(1)` of the character whose central character is `omega`.
pub fn degrees_from_omega(
    omega: &OmegaVector,
    class_sizes: &[u64],
    inverse_class: &[usize],
    order: u64,
) -> Result<u64, CharDegError> {
    let p = omega.modulus;
    let mut s = 0;
    for (k, &w) in omega.entries.iter().enumerate() {
        let term = mul_mod(w, omega.entries[inverse_class[k]], p);
        s = (s + mul_mod(term, inv_mod(class_sizes[k] % p, p), p)) % p;
    }
    if s == 0 {
        return Err(CharDegError::InvalidOmega("orthogonality sum vanishes".into()));
    }
    let target = mul_mod(order % p, inv_mod(s, p), p);
    (1..=p / 2)
        .find(|&d| mul_mod(d, d, p) == target)
        .ok_or_else(|| CharDegError::InvalidOmega(format!("{target} is not a square mod {p}")))
}

/// All irreducible degrees of `g` in ascending order, one per class.
pub fn character_degrees(g: &PermGroup) -> Result<Vec<u64>, CharDegError> {
    let p = choose_dixon_prime(g.order(), g.exponent());
    let algebra = ClassAlgebra::new(g);
    let matrices: Vec<GfMatrix> = (1..g.class_count()).map(|j| algebra.matrix(j, p)).collect();
    let omegas = if matrices.is_empty() {
        vec![OmegaVector { modulus: p, entries: vec![1] }]
    } else {
        split_eigenspaces(&matrices, p)?
    };
    let sizes = g.class_sizes();
    let inverse: Vec<usize> = g.classes().iter().map(|c| c.inverse_class).collect();
    let mut degrees = omegas
        .iter()
        .map(|w| degrees_from_omega(w, &sizes, &inverse, g.order()))
        .collect::<Result<Vec<_>, _>>()?;
    degrees.sort_unstable();
    let sum: u64 = degrees.iter().map(|d| d * d).sum();
    if sum != g.order() {
        return Err(CharDegError::SquareSumMismatch { sum, order: g.order() });
    }
    Ok(degrees)
}

/// The set `cd(G)` of distinct degrees.
pub fn cd_set(g: &PermGroup) -> Result<DegreeSet, CharDegError> {
    let degrees = character_degrees(g)?;
    Ok(DegreeSet::new(degrees).expect("degrees are positive and bounded by the group order"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::DEFAULT_CAP;

    fn group(degree: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycles(degree, gens, DEFAULT_CAP).unwrap()
    }

    fn s3() -> PermGroup {
        group(3, &["(1 2)", "(1 2 3)"])
    }

    fn a5() -> PermGroup {
        group(5, &["(1 2 3 4 5)", "(1 2 3)"])
    }

    #[test]
    fn dixon_prime_examples() {
        assert_eq!(choose_dixon_prime(6, 6), 7);
        assert_eq!(choose_dixon_prime(60, 30), 31);
        assert_eq!(choose_dixon_prime(168, 84), 337);
        assert_eq!(choose_dixon_prime(1, 1), 3);
    }

    #[test]
    fn dixon_prime_is_minimal() {
        for (order, e) in [(6, 6), (60, 30), (168, 84), (24, 12), (720, 60), (7800, 390)] {
            let p = choose_dixon_prime(order, e);
            assert!(is_prime(p) && p % e == 1 && p * p > 4 * order);
            for q in 2..p {
                assert!(!(is_prime(q) && q % e == 1 && q * q > 4 * order));
            }
        }
    }

    #[test]
    fn identity_class_matrix_is_identity() {
        for g in [s3(), a5()] {
            let p = 31;
            assert_eq!(class_matrix(&g, 0, p), GfMatrix::identity(g.class_count(), p));
        }
    }

    fn brute_constant(g: &PermGroup, i: usize, j: usize, k: usize) -> u64 {
        let target = g.representative(k);
        let mut count = 0;
        for &x in &g.classes()[i].members {
            for &y in &g.classes()[j].members {
                if &g.element(x).then(g.element(y)) == target {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn structure_constants_match_pair_enumeration() {
        for g in [s3(), group(4, &["(1 2 3)", "(2 3 4)"]), group(4, &["(1 2 3 4)", "(1 3)"])] {
            let alg = ClassAlgebra::new(&g);
            let r = g.class_count();
            for i in 0..r {
                for j in 0..r {
                    for k in 0..r {
                        assert_eq!(alg.get(i, j, k), brute_constant(&g, i, j, k));
                    }
                }
            }
        }
    }

    #[test]
    fn structure_constants_count_all_pairs() {
        for g in [s3(), a5(), group(4, &["(1 2 3 4)", "(1 2)"])] {
            let alg = ClassAlgebra::new(&g);
            let sizes = g.class_sizes();
            let r = g.class_count();
            for i in 0..r {
                for j in 0..r {
                    let total: u64 = (0..r).map(|k| sizes[k] * alg.get(i, j, k)).sum();
                    assert_eq!(total, sizes[i] * sizes[j]);
                }
            }
        }
    }

    #[test]
    fn s3_transposition_matrix() {
        // classes: identity, transpositions (3), 3-cycles (2)
        let g = s3();
        let m = class_matrix(&g, 1, 7);
        assert_eq!(m.row(0), &[0, 1, 0]);
        assert_eq!(m.row(1), &[3, 0, 3]);
        assert_eq!(m.row(2), &[0, 2, 0]);
    }

    #[test]
    fn class_matrices_commute() {
        let g = a5();
        let p = 31;
        let mats: Vec<GfMatrix> = (0..g.class_count()).map(|j| class_matrix(&g, j, p)).collect();
        for a in &mats {
            for b in &mats {
                assert_eq!(a.mul(b), b.mul(a));
            }
        }
    }

    #[test]
    fn split_examples() {
        let trivial = PermGroup::generate(1, &[], 1).unwrap();
        assert_eq!(character_degrees(&trivial).unwrap(), vec![1]);
        let g = s3();
        let mats: Vec<GfMatrix> = (1..3).map(|j| class_matrix(&g, j, 7)).collect();
        let omegas = split_eigenspaces(&mats, 7).unwrap();
        assert_eq!(omegas.len(), 3);
        assert!(omegas.iter().all(|w| w.entries[0] == 1));
        let g = a5();
        let mats: Vec<GfMatrix> = (1..5).map(|j| class_matrix(&g, j, 31)).collect();
        assert_eq!(split_eigenspaces(&mats, 31).unwrap().len(), 5);
    }

    #[test]
    fn omegas_are_eigenvectors() {
        let g = group(4, &["(1 2 3 4)", "(1 2)"]);
        let p = choose_dixon_prime(g.order(), g.exponent());
        let mats: Vec<GfMatrix> = (0..g.class_count()).map(|j| class_matrix(&g, j, p)).collect();
        for w in split_eigenspaces(&mats[1..], p).unwrap() {
            for (j, m) in mats.iter().enumerate() {
                let image = m.mul_vec(&w.entries);
                let expected: Vec<u64> =
                    w.entries.iter().map(|&x| mul_mod(x, w.entries[j], p)).collect();
                assert_eq!(image, expected);
            }
        }
    }

    #[test]
    fn degree_from_omega_examples() {
        let g = s3();
        let sizes = g.class_sizes();
        let inverse: Vec<usize> = g.classes().iter().map(|c| c.inverse_class).collect();
        let p = 7;
        let omega = |entries: Vec<i64>| OmegaVector {
            modulus: p,
            entries: entries.into_iter().map(|x| x.rem_euclid(p as i64) as u64).collect(),
        };
        // trivial, sign, and the 2-dimensional character: ω_k = |K_k| χ(g_k) / χ(1)
        assert_eq!(degrees_from_omega(&omega(vec![1, 3, 2]), &sizes, &inverse, 6), Ok(1));
        assert_eq!(degrees_from_omega(&omega(vec![1, -3, 2]), &sizes, &inverse, 6), Ok(1));
        assert_eq!(degrees_from_omega(&omega(vec![1, 0, -1]), &sizes, &inverse, 6), Ok(2));
        assert!(degrees_from_omega(&omega(vec![0, 0, 0]), &sizes, &inverse, 6).is_err());
    }

    #[test]
    fn small_group_degrees() {
        assert_eq!(character_degrees(&s3()).unwrap(), vec![1, 1, 2]);
        assert_eq!(character_degrees(&group(4, &["(1 2 3 4)", "(1 2)"])).unwrap(), vec![1, 1, 2, 3, 3]);
        assert_eq!(character_degrees(&a5()).unwrap(), vec![1, 3, 3, 4, 5]);
        assert_eq!(character_degrees(&group(4, &["(1 2 3)", "(2 3 4)"])).unwrap(), vec![1, 1, 1, 3]);
        assert_eq!(character_degrees(&group(4, &["(1 2 3 4)", "(1 3)"])).unwrap(), vec![1, 1, 1, 1, 2]);
        let q8 = group(8, &["(1 3 2 4)(5 8 6 7)", "(1 5 2 6)(3 7 4 8)"]);
        assert_eq!(character_degrees(&q8).unwrap(), vec![1, 1, 1, 1, 2]);
    }

    #[test]
    fn cd_set_examples() {
        assert_eq!(cd_set(&a5()).unwrap().degrees(), vec![1, 3, 4, 5]);
        assert_eq!(cd_set(&s3()).unwrap().degrees(), vec![1, 2]);
        let gl23 = group(8, &["(1 4 7)(2 8 5)", "(1 6 2 3)(4 7 8 5)", "(3 6)(4 7)(5 8)"]);
        assert_eq!(character_degrees(&gl23).unwrap(), vec![1, 1, 2, 2, 2, 3, 3, 4]);
        assert_eq!(cd_set(&gl23).unwrap().degrees(), vec![1, 2, 3, 4]);
    }

    #[test]
    fn linear_characters_count_abelianization() {
        for g in [s3(), a5(), group(4, &["(1 2 3 4)", "(1 2)"]), group(4, &["(1 2 3)", "(2 3 4)"])] {
            let linear = character_degrees(&g).unwrap().iter().filter(|&&d| d == 1).count() as u64;
            assert_eq!(linear, g.order() / g.derived_subgroup().order());
        }
    }

    #[test]
    fn deterministic() {
        let g = group(7, &["(1 2 3 4 5 6 7)", "(2 3 5)(4 7 6)"]);
        assert_eq!(character_degrees(&g).unwrap(), character_degrees(&g).unwrap());
    }
}
