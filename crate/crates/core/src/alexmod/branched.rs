use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::alexander::fox_abelian;
use super::laurent::LaurentPoly;
use crate::knotio::{KnotPresentation, Word};
use crate::snf::smith;

/// Presentation of the Alexander module `H` over `Z[t^{±1}]` in which `t`
/// acts on `h ∈ π'` by `h ↦ μ^{-1} h μ`.
///
/// Columns correspond to the generators other than a weight-one meridian
/// generator; when the meridian is not a single generator, a new generator
/// equal to it is adjoined and its column deleted instead.
#[derive(Clone, Debug)]
pub struct AlexanderModule {
    /// Generator index of each column.
    pub columns: Vec<usize>,
    pub rows: Vec<Vec<LaurentPoly>>,
    weights: Vec<i64>,
}

impl AlexanderModule {
    pub fn new(p: &KnotPresentation) -> Self {
        let g = p.num_generators();
        let w = p.weights().to_vec();
        let fox_row = |r: &Word, cols: &[usize]| -> Vec<LaurentPoly> {
            cols.iter().map(|&k| fox_abelian(r, k, &w, -1)).collect()
        };
        match p.meridian_generator() {
            Some(m) => {
                let columns: Vec<usize> = (0..g).filter(|&k| k != m).collect();
                let rows = p.relators().iter().map(|r| fox_row(r, &columns)).collect();
                AlexanderModule {
                    columns,
                    rows,
                    weights: w,
                }
            }
            None => {
                let columns: Vec<usize> = (0..g).collect();
                let mut rows: Vec<Vec<LaurentPoly>> =
                    p.relators().iter().map(|r| fox_row(r, &columns)).collect();
                rows.push(fox_row(p.meridian(), &columns));
                AlexanderModule {
                    columns,
                    rows,
                    weights: w,
                }
            }
        }
    }

    /// Module element represented by a word of degree zero.
    pub fn vector_of(&self, w: &Word) -> Vec<LaurentPoly> {
        self.columns
            .iter()
            .map(|&k| fox_abelian(w, k, &self.weights, -1))
            .collect()
    }

    /// Integer matrix presenting `H/(t^n - 1)`: one row per module row and
    /// shift `t^b`, columns indexed by `(column, residue)`.
    pub fn expanded(&self, n: usize) -> Vec<Vec<BigInt>> {
        let c = self.columns.len();
        let mut out = Vec::with_capacity(self.rows.len() * n);
        for row in &self.rows {
            let reduced: Vec<Vec<BigInt>> = row.iter().map(|e| e.mod_cyclic(n)).collect();
            for b in 0..n {
                let mut v = vec![BigInt::zero(); c * n];
                for (k, coeffs) in reduced.iter().enumerate() {
                    for (a, x) in coeffs.iter().enumerate() {
                        v[k * n + (a + b) % n] += x;
                    }
                }
                out.push(v);
            }
        }
        out
    }

    pub fn expand_vector(&self, v: &[LaurentPoly], n: usize) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(v.len() * n);
        for e in v {
            out.extend(e.mod_cyclic(n));
        }
        out
    }
}

/// `H/(t^n - 1) ≅ H_1(L_n)` with its `t`-action in Smith coordinates.
///
/// Coordinates are ordered torsion first (`d_1 | d_2 | ...`, each `≥ 2`),
/// then `free_rank` free coordinates. Elements are row vectors and `t`
/// acts by `h ↦ h · t_matrix`.
#[derive(Clone, Debug)]
pub struct FinAbT {
    pub n: usize,
    pub free_rank: usize,
    pub invariant_factors: Vec<BigInt>,
    pub t_matrix: Vec<Vec<BigInt>>,
    /// Columns of the Smith transform for the nontrivial coordinates.
    proj: Vec<Vec<BigInt>>,
    module: AlexanderModule,
}

impl FinAbT {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len() + self.free_rank
    }

    /// `|Tor H_1(L_n)|`.
    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    /// Exponent of the torsion subgroup (largest invariant factor, or 1).
    pub fn exponent(&self) -> BigInt {
        self.invariant_factors
            .last()
            .cloned()
            .unwrap_or_else(BigInt::one)
    }

    pub fn module(&self) -> &AlexanderModule {
        &self.module
    }

    pub fn reduce(&self, h: &mut [BigInt]) {
        for (x, d) in h.iter_mut().zip(&self.invariant_factors) {
            *x = x.mod_floor(d);
        }
    }

    pub fn zero(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.rank()]
    }

    /// Coordinates of an expanded module vector.
    pub fn project(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut h: Vec<BigInt> = (0..self.rank())
            .map(|j| {
                v.iter()
                    .zip(&self.proj)
                    .filter(|(x, _)| !x.is_zero())
                    .map(|(x, row)| x * &row[j])
                    .sum()
            })
            .collect();
        self.reduce(&mut h);
        h
    }

    /// Coordinates of the class of a degree-zero word.
    pub fn element_of_word(&self, w: &Word) -> Vec<BigInt> {
        let v = self.module.vector_of(w);
        self.project(&self.module.expand_vector(&v, self.n))
    }

    pub fn apply_t(&self, h: &[BigInt]) -> Vec<BigInt> {
        let k = self.rank();
        let mut out: Vec<BigInt> = (0..k)
            .map(|j| {
                h.iter()
                    .zip(&self.t_matrix)
                    .map(|(x, row)| x * &row[j])
                    .sum()
            })
            .collect();
        self.reduce(&mut out);
        out
    }

    /// `t^e h` for any integer `e`, using `t^n = 1`.
    pub fn apply_t_pow(&self, h: &[BigInt], e: i64) -> Vec<BigInt> {
        let e = e.rem_euclid(self.n as i64);
        let mut x = h.to_vec();
        for _ in 0..e {
            x = self.apply_t(&x);
        }
        x
    }

    pub fn add(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut out: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.reduce(&mut out);
        out
    }

    pub fn neg(&self, a: &[BigInt]) -> Vec<BigInt> {
        let mut out: Vec<BigInt> = a.iter().map(|x| -x).collect();
        self.reduce(&mut out);
        out
    }
}

/// `H_1(L_n)` with its `t`-action, from the Alexander module of `p`.
pub fn branched_homology(p: &KnotPresentation, n: usize) -> FinAbT {
    assert!(n >= 1, "cover degree must be positive");
    let module = AlexanderModule::new(p);
    let c = module.columns.len();
    let dim = c * n;
    let b = module.expanded(n);
    let s = smith(&b, dim);

    let rank = s.rank();
    let torsion_idx: Vec<usize> = (0..rank).filter(|&i| !s.diag[i].is_one()).collect();
    let nontrivial: Vec<usize> = torsion_idx.iter().copied().chain(rank..dim).collect();
    let invariant_factors: Vec<BigInt> = torsion_idx.iter().map(|&i| s.diag[i].clone()).collect();

    // t on expanded coordinates: (k, a) -> (k, a + 1)
    let shift = |row: &[BigInt]| -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); dim];
        for k in 0..c {
            for a in 0..n {
                out[k * n + (a + 1) % n] = row[k * n + a].clone();
            }
        }
        out
    };
    // t_matrix = V^{-1} T V restricted to the nontrivial coordinates
    let t_matrix: Vec<Vec<BigInt>> = nontrivial
        .iter()
        .map(|&i| {
            let row = shift(&s.v_inv[i]);
            nontrivial
                .iter()
                .enumerate()
                .map(|(jj, &j)| {
                    let x: BigInt = row
                        .iter()
                        .zip(&s.v)
                        .filter(|(a, _)| !a.is_zero())
                        .map(|(a, vr)| a * &vr[j])
                        .sum();
                    match invariant_factors.get(jj) {
                        Some(d) => x.mod_floor(d),
                        None => x,
                    }
                })
                .collect()
        })
        .collect();
    let proj: Vec<Vec<BigInt>> =
        s.v.iter()
            .map(|row| nontrivial.iter().map(|&j| row[j].clone()).collect())
            .collect();

    FinAbT {
        n,
        free_rank: dim - rank,
        invariant_factors,
        t_matrix,
        proj,
        module,
    }
}

/// `b_1(L_n)` and `|Tor H_1(L_n)|` straight from the Smith form.
pub fn betti_and_torsion(p: &KnotPresentation, n: usize) -> (usize, BigInt) {
    let h = branched_homology(p, n);
    (h.free_rank, h.torsion_order())
}

/// Whether multiplication by `t - 1` is onto `H/(t^n - 1)`.
pub fn t_minus_one_is_onto(h: &FinAbT) -> bool {
    let k = h.rank();
    if k == 0 {
        return true;
    }
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..k {
        let mut e = h.zero();
        e[i] = BigInt::one();
        let te = h.apply_t(&e);
        rows.push(te.iter().zip(&e).map(|(a, b)| a - b).collect());
    }
    for (i, d) in h.invariant_factors.iter().enumerate() {
        let mut r = vec![BigInt::zero(); k];
        r[i] = d.clone();
        rows.push(r);
    }
    let s = smith(&rows, k);
    let (tors, free) = s.cokernel();
    free == 0 && tors.is_empty()
}
