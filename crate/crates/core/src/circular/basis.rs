use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use super::CircularError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DomainKind {
    Ball,
    Polydisc,
}

impl fmt::Display for DomainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DomainKind::Ball => "ball",
            DomainKind::Polydisc => "polydisc",
        })
    }
}

impl FromStr for DomainKind {
    type Err = CircularError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ball" => Ok(DomainKind::Ball),
            "polydisc" => Ok(DomainKind::Polydisc),
            other => Err(CircularError::UnknownName(other.to_string())),
        }
    }
}

/// Monomial basis `{z^α}` of the Bergman space of the unit ball or unit
/// polydisc in ℂⁿ, with Lebesgue norms
///
/// ```text
/// ball:      ‖z^α‖² = πⁿ α! / (n + |α|)!
/// polydisc:  ‖z^α‖² = Π_i π / (α_i + 1)
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CircularDomainBasis {
    kind: DomainKind,
    n: usize,
}

fn ln_factorial(k: u32) -> f64 {
    (2..=k).map(|i| (i as f64).ln()).sum()
}

impl CircularDomainBasis {
    pub fn new(kind: DomainKind, n: usize) -> Result<Self, CircularError> {
        if n == 0 {
            return Err(CircularError::DimensionMismatch { expected: 1, got: 0 });
        }
        Ok(Self { kind, n })
    }

    pub fn kind(&self) -> DomainKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `m_j = C(j + n − 1, n − 1)`.
    pub fn degree_count(&self, degree: u32) -> u64 {
        let n = self.n as u64;
        let mut c: u64 = 1;
        for i in 1..n {
            c = c * (degree as u64 + i) / i;
        }
        c
    }

    /// All multi-indices `α ∈ ℕⁿ` with `|α| = degree`, in lexicographic order.
    pub fn multi_indices(&self, degree: u32) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut current = vec![0u32; self.n];
        fill(&mut out, &mut current, 0, degree);
        out
    }

    pub fn monomial_norm(&self, alpha: &[u32]) -> Result<f64, CircularError> {
        if alpha.len() != self.n {
            return Err(CircularError::DimensionMismatch {
                expected: self.n,
                got: alpha.len(),
            });
        }
        let n = self.n as f64;
        Ok(match self.kind {
            DomainKind::Ball => {
                let total: u32 = alpha.iter().sum();
                let ln = n * PI.ln() + alpha.iter().map(|&a| ln_factorial(a)).sum::<f64>()
                    - ln_factorial(total + self.n as u32);
                ln.exp()
            }
            DomainKind::Polydisc => alpha.iter().map(|&a| PI / (a as f64 + 1.0)).product(),
        })
    }

    /// Volume of Ω, i.e. `‖1‖²`.
    pub fn volume(&self) -> f64 {
        self.monomial_norm(&vec![0; self.n]).expect("dimension matches")
    }

    /// Minkowski gauge of Ω: Euclidean norm for the ball, max-norm for the
    /// polydisc. `z ∈ Ω` iff the gauge is below one.
    pub fn gauge(&self, z: &[Complex64]) -> f64 {
        match self.kind {
            DomainKind::Ball => z.iter().map(|w| w.norm_sqr()).sum::<f64>().sqrt(),
            DomainKind::Polydisc => z.iter().map(|w| w.norm()).fold(0.0, f64::max),
        }
    }

    pub fn check_point(&self, z: &[Complex64]) -> Result<(), CircularError> {
        if z.len() != self.n {
            return Err(CircularError::DimensionMismatch {
                expected: self.n,
                got: z.len(),
            });
        }
        let g = self.gauge(z);
        if !(g < 1.0) {
            return Err(CircularError::PointOutsideDomain { gauge: g });
        }
        Ok(())
    }

    /// `Σ_{|α|=j} |z^α|² / ‖z^α‖²` by explicit enumeration.
    pub fn degree_sum_enumerated(&self, z: &[Complex64], degree: u32) -> f64 {
        self.multi_indices(degree)
            .iter()
            .map(|alpha| {
                let mono: f64 = alpha
                    .iter()
                    .zip(z)
                    .map(|(&a, w)| w.norm_sqr().powi(a as i32))
                    .product();
                mono / self.monomial_norm(alpha).expect("dimension matches")
            })
            .sum()
    }

    /// Degree sums `S_0..=S_max` in closed form.
    ///
    /// Ball: `S_j = (n+j)!/(πⁿ j!) ‖z‖^{2j}` (multinomial theorem).
    /// Polydisc: `S_j = π⁻ⁿ [t^j] Π_i (1 − |z_i|² t)⁻²`, accumulated by
    /// applying the positive recurrence `g_j = f_j + x g_{j−1}` twice per
    /// coordinate.
    pub fn degree_sums(&self, z: &[Complex64], max_degree: usize) -> Vec<f64> {
        let len = max_degree + 1;
        match self.kind {
            DomainKind::Ball => {
                let t: f64 = z.iter().map(|w| w.norm_sqr()).sum();
                let mut out = Vec::with_capacity(len);
                let mut s = self.degree_zero_term();
                for j in 0..len {
                    out.push(s);
                    s *= (self.n + j + 1) as f64 / (j + 1) as f64 * t;
                }
                out
            }
            DomainKind::Polydisc => {
                let mut coeffs = vec![0.0; len];
                coeffs[0] = PI.powi(-(self.n as i32));
                for w in z {
                    let x = w.norm_sqr();
                    for _ in 0..2 {
                        for j in 1..len {
                            coeffs[j] += x * coeffs[j - 1];
                        }
                    }
                }
                coeffs
            }
        }
    }

    fn degree_zero_term(&self) -> f64 {
        1.0 / self.volume()
    }

    /// First term `b_0 = S_0` of a sequence `b_j ≥ S_j` whose ratios
    /// `b_{j+1}/b_j` are given by [`Self::dominating_ratio`] and decrease in `j`.
    ///
    /// Ball: `b_j = S_j`. Polydisc: `b_j = π⁻ⁿ C(j+2n−1, 2n−1) x^j` with
    /// `x = max |z_i|²`, since every `|z^α|² ≤ x^{|α|}`.
    pub(crate) fn dominating_start(&self) -> f64 {
        self.degree_zero_term()
    }

    pub(crate) fn dominating_ratio(&self, z: &[Complex64], j: usize) -> f64 {
        let n = self.n as f64;
        let jf = j as f64;
        match self.kind {
            DomainKind::Ball => {
                let t: f64 = z.iter().map(|w| w.norm_sqr()).sum();
                (n + jf + 1.0) / (jf + 1.0) * t
            }
            DomainKind::Polydisc => {
                let x = z.iter().map(|w| w.norm_sqr()).fold(0.0, f64::max);
                (jf + 2.0 * n) / (jf + 1.0) * x
            }
        }
    }
}

fn fill(out: &mut Vec<Vec<u32>>, current: &mut Vec<u32>, pos: usize, remaining: u32) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(current.clone());
        return;
    }
    for a in (0..=remaining).rev() {
        current[pos] = a;
        fill(out, current, pos + 1, remaining - a);
    }
    current[pos] = 0;
}

pub fn monomial_norm(basis: &CircularDomainBasis, alpha: &[u32]) -> Result<f64, CircularError> {
    basis.monomial_norm(alpha)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn degree_counts_match_binomials() {
        for n in 1..=4 {
            let b = CircularDomainBasis::new(DomainKind::Ball, n).unwrap();
            for j in 0..8 {
                let idx = b.multi_indices(j);
                assert_eq!(idx.len() as u64, b.degree_count(j));
                assert!(idx.iter().all(|a| a.iter().sum::<u32>() == j));
            }
        }
        let b = CircularDomainBasis::new(DomainKind::Polydisc, 3).unwrap();
        assert_eq!(b.degree_count(4), 15);
    }

    #[test]
    fn closed_form_norms() {
        let pd = CircularDomainBasis::new(DomainKind::Polydisc, 2).unwrap();
        assert!((pd.monomial_norm(&[0, 0]).unwrap() - PI * PI).abs() < 1e-14);
        let b1 = CircularDomainBasis::new(DomainKind::Ball, 1).unwrap();
        assert!((b1.monomial_norm(&[1]).unwrap() - PI / 2.0).abs() < 1e-15);
        let b2 = CircularDomainBasis::new(DomainKind::Ball, 2).unwrap();
        assert!((b2.monomial_norm(&[0, 0]).unwrap() - PI * PI / 2.0).abs() < 1e-14);
        assert!(matches!(
            b2.monomial_norm(&[1]),
            Err(CircularError::DimensionMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn closed_form_degree_sums_match_enumeration() {
        let z = [c(0.3, 0.1), c(-0.2, 0.25), c(0.1, -0.05)];
        for kind in [DomainKind::Ball, DomainKind::Polydisc] {
            for n in 1..=3 {
                let b = CircularDomainBasis::new(kind, n).unwrap();
                let sums = b.degree_sums(&z[..n], 9);
                for (j, s) in sums.iter().enumerate() {
                    let e = b.degree_sum_enumerated(&z[..n], j as u32);
                    assert!((s - e).abs() <= 1e-13 * e.max(1e-300), "{kind} n={n} j={j}: {s} vs {e}");
                }
            }
        }
    }

    #[test]
    fn dominating_terms_bound_degree_sums() {
        let z = [c(0.5, 0.2), c(-0.1, 0.3)];
        for kind in [DomainKind::Ball, DomainKind::Polydisc] {
            let b = CircularDomainBasis::new(kind, 2).unwrap();
            let sums = b.degree_sums(&z, 40);
            let mut bound = b.dominating_start();
            for (j, s) in sums.iter().enumerate() {
                assert!(*s <= bound * (1.0 + 1e-12), "{kind} j={j}");
                let r = b.dominating_ratio(&z, j);
                assert!(r >= b.dominating_ratio(&z, j + 1));
                bound *= r;
            }
        }
    }

    #[test]
    fn gauge_and_membership() {
        let ball = CircularDomainBasis::new(DomainKind::Ball, 2).unwrap();
        let pd = CircularDomainBasis::new(DomainKind::Polydisc, 2).unwrap();
        let z = [c(0.7, 0.0), c(0.0, 0.7)];
        assert!(ball.check_point(&z).is_ok());
        assert!(pd.check_point(&z).is_ok());
        let z = [c(0.8, 0.0), c(0.0, 0.8)];
        assert!(matches!(ball.check_point(&z), Err(CircularError::PointOutsideDomain { .. })));
        assert!(pd.check_point(&z).is_ok());
    }

    #[test]
    fn parses_domain_names() {
        assert_eq!("ball".parse::<DomainKind>().unwrap(), DomainKind::Ball);
        assert_eq!("polydisc".parse::<DomainKind>().unwrap(), DomainKind::Polydisc);
        assert!("cube".parse::<DomainKind>().is_err());
    }
}
