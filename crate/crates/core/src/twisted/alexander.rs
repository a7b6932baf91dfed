use std::fmt;

use serde::Serialize;

use super::complex::fox_blocks;
use crate::alexmod::{alexander_poly, LaurentPoly};
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::knotio::{KnotPresentation, Word};
use crate::linalg::Mat;
use crate::metab::{Character, MetabelianSetup, ZChoice};
use crate::rep::Representation;

/// Laurent polynomial with cyclotomic coefficients, `Σ c_k t^{low + k}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CycPoly {
    pub low: i64,
    pub coeffs: Vec<CycNum>,
}

impl CycPoly {
    pub fn new(low: i64, coeffs: Vec<CycNum>) -> Self {
        let mut p = CycPoly { low, coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        CycPoly {
            low: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn from_laurent(p: &LaurentPoly) -> Self {
        match (p.min_degree(), p.max_degree()) {
            (Some(lo), Some(hi)) => CycPoly::new(
                lo,
                (lo..=hi).map(|k| CycNum::from_int(p.coeff(k))).collect(),
            ),
            _ => CycPoly::zero(),
        }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        self.coeffs.drain(..lead);
        self.low += lead as i64;
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn span(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn mul(&self, o: &CycPoly) -> CycPoly {
        if self.is_zero() || o.is_zero() {
            return CycPoly::zero();
        }
        let mut c = vec![CycNum::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        CycPoly::new(self.low + o.low, c)
    }

    /// `p(ζ t)`.
    pub fn scale_variable(&self, zeta: &CycNum) -> CycPoly {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, a)| a * &zeta.pow(self.low + k as i64))
            .collect();
        CycPoly::new(self.low, c)
    }

    pub fn eval(&self, t: &CycNum) -> CycNum {
        let mut acc = CycNum::zero();
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * t) + a;
        }
        &acc * &t.pow(self.low)
    }

    /// Shift to lowest degree 0 and make the leading coefficient 1.
    pub fn monic(&self) -> CycPoly {
        match self.coeffs.last() {
            None => CycPoly::zero(),
            Some(l) => {
                let inv = l.inv();
                CycPoly::new(0, self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    /// Equal up to multiplication by `c t^k` with `c ≠ 0`.
    pub fn associate(&self, o: &CycPoly) -> bool {
        self.monic() == o.monic()
    }

    /// Long division of Laurent polynomials after shifting both to lowest
    /// degree 0; the quotient carries the degree difference.
    pub fn div_rem(&self, d: &CycPoly) -> (CycPoly, CycPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut rem = self.coeffs.clone();
        let dl = d.coeffs.len();
        if rem.len() < dl {
            return (CycPoly::zero(), self.clone());
        }
        let inv = d.coeffs[dl - 1].inv();
        let mut q = vec![CycNum::zero(); rem.len() - dl + 1];
        for k in (0..q.len()).rev() {
            let c = &rem[k + dl - 1] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, b) in d.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * b);
            }
            q[k] = c;
        }
        (
            CycPoly::new(self.low - d.low, q),
            CycPoly::new(self.low, rem),
        )
    }

    /// `(c, k)` with `self = c t^k · d`, if the quotient is a monomial.
    pub fn unit_quotient(&self, d: &CycPoly) -> Option<(CycNum, i64)> {
        let (q, r) = self.div_rem(d);
        (r.is_zero() && q.coeffs.len() == 1).then(|| (q.coeffs[0].clone(), q.low))
    }
}

impl fmt::Display for CycPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("({c})t^{}", self.low + k as i64))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Interpolate `q` from `q(1), ..., q(deg + 1)` (Newton divided differences).
fn interpolate(values: &[CycNum]) -> Vec<CycNum> {
    let m = values.len();
    let mut dd = values.to_vec();
    for level in 1..m {
        for i in (level..m).rev() {
            let denom = CycNum::from_int(level as i64).inv();
            dd[i] = &(&dd[i] - &dd[i - 1]) * &denom;
        }
    }
    // expand Σ dd[i] ∏_{j<i} (t - (j+1))
    let mut out = vec![CycNum::zero(); m];
    for i in (0..m).rev() {
        // out = out * (t - (i+1)) + dd[i]
        let node = CycNum::from_int(i as i64 + 1);
        let mut next = vec![CycNum::zero(); m];
        for k in 0..m {
            if out[k].is_zero() {
                continue;
            }
            if k + 1 < m {
                next[k + 1] = &next[k + 1] + &out[k];
            }
            next[k] = &next[k] - &(&out[k] * &node);
        }
        next[0] = &next[0] + &dd[i];
        out = next;
    }
    out
}

/// Exact determinant of a square matrix whose entries are Laurent
/// polynomials in `t`, given as a function of a rational point `t`.
/// `low` and `span` bound the `t`-degrees of the determinant.
fn det_by_interpolation(low: i64, span: usize, at: impl Fn(&CycNum) -> Mat<CycNum>) -> CycPoly {
    let values: Vec<CycNum> = (1..=span as i64 + 1)
        .map(|k| {
            let t = CycNum::from_int(k);
            &at(&t).det() * &t.pow(-low)
        })
        .collect();
    CycPoly::new(low, interpolate(&values))
}

/// The twisted representation `x ↦ t^{ε(x)} ρ(x)` at a point `t`.
fn tensor_with_t(
    p: &KnotPresentation,
    rep: &Representation<CycNum>,
    t: &CycNum,
) -> Representation<CycNum> {
    let images = (0..rep.num_generators())
        .map(|i| rep.image(i).scale(&t.pow(p.weights()[i])))
        .collect();
    Representation::new(rep.dim(), images, rep.provenance().clone())
        .expect("nonzero t keeps images invertible")
}

/// Range of `t`-degrees of the prefixes that occur in `ρ(∂r/∂x_i)`.
fn prefix_degrees(p: &KnotPresentation, r: &Word) -> (i64, i64) {
    let (mut lo, mut hi, mut deg) = (0, 0, 0);
    for (g, e) in r.unit_letters() {
        deg += e * p.weights()[g];
        lo = lo.min(deg);
        hi = hi.max(deg);
    }
    (lo, hi)
}

#[derive(Clone, Debug, Serialize)]
pub struct TwistedAlexander {
    /// Generator whose column was removed.
    pub column: usize,
    pub numerator: CycPoly,
    pub denominator: CycPoly,
}

/// Wada's invariant `det A_k / det(ρ(x_k) t^{ε(x_k)} - I)` with column `k`
/// deleted from the Fox Jacobian. The meridian generator is tried first.
pub fn twisted_alexander(
    p: &KnotPresentation,
    rep: &Representation<CycNum>,
) -> Result<TwistedAlexander> {
    p.require_deficiency_one()?;
    let g = p.num_generators();
    let d = rep.dim();
    let mut order: Vec<usize> = (0..g).collect();
    if let Some(m) = p.meridian_generator() {
        order.retain(|&k| k != m);
        order.insert(0, m);
    }
    let id = Mat::<CycNum>::identity(d);
    for k in order {
        let e = p.weights()[k];
        let denominator =
            det_by_interpolation(e.min(0) * d as i64, e.unsigned_abs() as usize * d, |t| {
                rep.image(k).scale(&t.pow(e)).sub(&id)
            });
        if denominator.is_zero() {
            continue;
        }
        let ranges: Vec<(i64, i64)> = p.relators().iter().map(|r| prefix_degrees(p, r)).collect();
        let low: i64 = ranges.iter().map(|(lo, _)| lo * d as i64).sum();
        let span: usize = ranges.iter().map(|(lo, hi)| (hi - lo) as usize * d).sum();
        let numerator = det_by_interpolation(low, span, |t| {
            let tr = tensor_with_t(p, rep, t);
            let mut a = Mat::zeros(p.relators().len() * d, (g - 1) * d);
            for (j, r) in p.relators().iter().enumerate() {
                let mut col = 0;
                for (i, b) in fox_blocks(&tr, r).iter().enumerate() {
                    if i != k {
                        a.set_block(j * d, col, b);
                        col += d;
                    }
                }
            }
            a
        });
        return Ok(TwistedAlexander {
            column: k,
            numerator,
            denominator,
        });
    }
    Err(Error::SingularDenominator)
}

/// `Δ^{ad α} ≐ ∏_{j=1}^{n-1} Δ_K(ω^j t) · ∏_{i=1}^{n-1} Δ^{β_{(n,χ_i)}}` with
/// `ω = e^{2πi/n}`, for Wada numerators with the meridian column deleted.
///
/// With the denominators kept, the quotients differ by `(t-1)/(t^n-1)`;
/// the numerators satisfy the identity exactly. Returns the unit `(c, k)`
/// with `Δ^{ad α} = c t^k · (product)`, found by division.
pub fn verify_adjoint_factorization(
    p: &KnotPresentation,
    setup: &MetabelianSetup,
    chi: &Character,
) -> Result<(CycNum, i64)> {
    let n = setup.structure.n;
    let m = p.meridian_generator().ok_or_else(|| {
        Error::InvalidPresentation("the factorization check needs a meridian generator".into())
    })?;
    let g = &setup.characters;
    let alpha = setup.build(p, chi, ZChoice::Canonical)?;
    let lhs = twisted_alexander(p, &super::adjoint_rep(&alpha)?)?;
    if lhs.column != m {
        return Err(Error::SingularDenominator);
    }
    let delta = CycPoly::from_laurent(&alexander_poly(p)?);
    let mut rhs = CycPoly::new(0, vec![CycNum::one()]);
    for j in 1..n {
        rhs = rhs.mul(&delta.scale_variable(&CycNum::root_of_unity(n as u64, j as i64)));
    }
    for i in 1..n {
        let c = g.character(g.twisted_difference(chi, i))?;
        let w = twisted_alexander(p, &setup.beta(p, &c)?)?;
        if w.column != m {
            return Err(Error::SingularDenominator);
        }
        rhs = rhs.mul(&w.numerator);
    }
    lhs.numerator.unit_quotient(&rhs).ok_or_else(|| {
        Error::DecompositionMismatch(format!(
            "Δ^ad = {} but the product is {}",
            lhs.numerator, rhs
        ))
    })
}
