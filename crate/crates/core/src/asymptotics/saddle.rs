//! The saddle point of the large-powers integrand.
//!
//! `lambda` solves `(lambda/2)(e^lambda+1)/(e^lambda-1) = k/n + 1`, then
//! `tau = lambda/(e^lambda-1)` and `zeta = tau e^{-tau}`.

use super::hp::HpFloat;
use crate::arith::BigRat;
use crate::error::{Error, Result};
use num_traits::Signed;

const GUARD_BITS: usize = 64;

#[derive(Clone, Debug)]
pub struct SaddlePoint {
    pub ratio: HpFloat,
    pub lambda: HpFloat,
    pub zeta: HpFloat,
    pub tau: HpFloat,
    pub h11: HpFloat,
    pub h12: HpFloat,
    pub h22: HpFloat,
    /// Closed form of the Hessian determinant.
    pub det: HpFloat,
    /// `h11 h22 - h12^2`.
    pub det_direct: HpFloat,
    /// `|map(lambda) - ratio - 1|`.
    pub residual: HpFloat,
    pub precision: usize,
}

fn map_and_slope(l: &HpFloat) -> (HpFloat, HpFloat) {
    let p = l.precision();
    let one = HpFloat::from_i64(1, p);
    let two = HpFloat::from_i64(2, p);
    let e = l.exp();
    let em1 = &e - &one;
    let ep1 = &e + &one;
    let g = &(l * &ep1) / &(&two * &em1);
    let slope = &(&ep1 / &(&two * &em1)) - &(&(l * &e) / &(&em1 * &em1));
    (g, slope)
}

pub fn solve_saddle(ratio: &BigRat, precision: usize) -> Result<SaddlePoint> {
    if !ratio.is_positive() {
        return Err(Error::NonPositiveRatio(ratio.to_string()));
    }
    solve_saddle_hp(&HpFloat::from_rat(ratio, precision + GUARD_BITS), precision)
}

pub fn solve_saddle_hp(ratio: &HpFloat, precision: usize) -> Result<SaddlePoint> {
    let wp = precision + GUARD_BITS;
    let ratio = ratio.clone().with_precision(wp);
    let zero = HpFloat::from_i64(0, wp);
    if !(ratio > zero) {
        return Err(Error::NonPositiveRatio(ratio.to_decimal(20)));
    }
    let one = HpFloat::from_i64(1, wp);
    let two = HpFloat::from_i64(2, wp);
    let target = &ratio + &one;
    let mut lo = HpFloat::parse("1e-6", wp);
    while map_and_slope(&lo).0 > target {
        lo = &lo / &two;
        if lo.to_f64() < 1e-300 {
            return Err(Error::ConvergenceFailure("ratio too small to bracket".into()));
        }
    }
    let mut hi = &(&two * &target) + &two;
    let mut l = &two * &target;
    if l >= hi {
        l = &(&lo + &hi) / &two;
    }
    let tol = HpFloat::from_i64(2, wp).powi(wp - 16);
    let tol = &one / &tol;
    let mut converged = false;
    for _ in 0..(8 * wp) {
        let (g, slope) = map_and_slope(&l);
        let f = &g - &target;
        if f.is_positive() {
            hi = l.clone();
        } else {
            lo = l.clone();
        }
        let mut next = &l - &(&f / &slope);
        if !(next > lo && next < hi) || !next.is_finite() {
            next = &(&lo + &hi) / &two;
        }
        let step = (&next - &l).abs();
        l = next;
        let scale = if l > one { l.clone() } else { one.clone() };
        if step <= &tol * &scale {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::ConvergenceFailure(format!("ratio {}", ratio.to_decimal(20))));
    }
    let residual = (&map_and_slope(&l).0 - &target).abs();

    let tau = &l / &(&l.exp() - &one);
    let zeta = &tau * &(-&tau).exp();
    let r = &one / &ratio;
    let omt = &one - &tau;
    let h11 = &(&r / &(&omt * &omt)) + &(&r * &r);
    let h12 = &(&two / &omt) + &(&two * &r);
    let h22 = &(&(&l * &omt) * &r) + &(&two * &l);
    let det_direct = &(&h11 * &h22) - &(&h12 * &h12);
    let four = HpFloat::from_i64(4, wp);
    let gap = &(&l / &two) - &ratio;
    let det = &(&(&l * &(&(&l * &r) / &two - &one)) * &(&(&(&(&l * &l) * &(&r * &r)) / &four - &r) - &one))
        / &(&gap * &gap);
    let round = |x: HpFloat| x.with_precision(precision);
    Ok(SaddlePoint {
        ratio: round(ratio),
        lambda: round(l),
        zeta: round(zeta),
        tau: round(tau),
        h11: round(h11),
        h12: round(h12),
        h22: round(h22),
        det: round(det),
        det_direct: round(det_direct),
        residual: round(residual),
        precision,
    })
}

/// Relative errors of the closed-form identities satisfied at the saddle point.
#[derive(Clone, Debug)]
pub struct SaddleIdentities {
    pub defining_equation: HpFloat,
    pub tau_two_forms: HpFloat,
    pub exp_lambda: HpFloat,
    pub kernel_factor: HpFloat,
    pub determinant: HpFloat,
}

impl SaddleIdentities {
    pub fn all(&self) -> [&HpFloat; 5] {
        [&self.defining_equation, &self.tau_two_forms, &self.exp_lambda, &self.kernel_factor, &self.determinant]
    }

    pub fn max(&self) -> HpFloat {
        let mut m = self.defining_equation.clone();
        for v in self.all() {
            if *v > m {
                m = v.clone();
            }
        }
        m
    }
}

fn rel(a: &HpFloat, b: &HpFloat) -> HpFloat {
    (&(a - b) / b).abs()
}

/// Re-evaluates the identities from `lambda` alone, so each residual is independent.
pub fn saddle_identities(s: &SaddlePoint) -> SaddleIdentities {
    let p = s.precision;
    let one = HpFloat::from_i64(1, p);
    let two = HpFloat::from_i64(2, p);
    let l = &s.lambda;
    let rho = &s.ratio;
    let e = l.exp();
    let tau_exp = l / &(&e - &one);
    let tau_lin = &(rho + &one) - &(l / &two);
    let b = &one - &(&(&tau_exp * &(&(&e - &one) - l)) / &(&(l * l) / &two));
    SaddleIdentities {
        defining_equation: rel(&map_and_slope(l).0, &(rho + &one)),
        tau_two_forms: rel(&tau_exp, &tau_lin),
        exp_lambda: rel(&e, &(&one + &(l / &tau_lin))),
        kernel_factor: rel(&b, &(&(&two * rho) / l)),
        determinant: rel(&s.det_direct, &s.det),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn ratio_one_bracket_and_identities() {
        let s = solve_saddle(&rat(1, 1), 256).unwrap();
        let l = s.lambda.to_f64();
        assert!(l > 3.5 && l < 4.0, "{l}");
        let tiny = HpFloat::parse("1e-60", 256);
        let id = saddle_identities(&s);
        assert!(id.tau_two_forms < tiny);
        assert!(id.max() < HpFloat::parse("1e-30", 256));
        let half = HpFloat::from_i64(2, 256).powi(128);
        assert!(&s.residual * &half < HpFloat::from_i64(1, 256));
        assert!(s.det.is_positive());
        let t = s.tau.to_f64();
        assert!(t > 0.0 && t < 1.0);
    }

    #[test]
    fn small_ratio_limit() {
        let s = solve_saddle(&rat(1, 1_000_000), 128).unwrap();
        // (l/2) coth(l/2) ~ 1 + l^2/12
        assert!((s.lambda.to_f64() - (12e-6f64).sqrt()).abs() < 1e-5);
        assert!(matches!(solve_saddle(&rat(0, 1), 128), Err(Error::NonPositiveRatio(_))));
        assert!(matches!(solve_saddle(&rat(-1, 2), 128), Err(Error::NonPositiveRatio(_))));
    }

    #[test]
    fn positivity_guards() {
        for (a, b) in [(1, 4), (1, 2), (1, 1), (2, 1), (4, 1)] {
            let s = solve_saddle(&rat(a, b), 128).unwrap();
            let l = s.lambda.to_f64();
            let rho = a as f64 / b as f64;
            assert!(l / 2.0 - rho > 0.0);
            assert!(l * l / 4.0 / rho - rho - 1.0 > 0.0);
        }
    }
}
