//! Order-one spherical Bessel and Hankel functions of complex argument.
//!
//! ```text
//! j₁(x)  = sin x / x² − cos x / x
//! h₁(x)  = −(1/x + i/x²) e^{ix}                  (first kind)
//! [x j₁(x)]′ = cos x / x − sin x / x² + sin x
//! [x h₁(x)]′ = (i/x² + 1/x − i) e^{ix}
//! ```
//!
//! The cavity factors evaluate these on the positive imaginary axis where
//! j₁ grows like e^{|Im x|} and h₁ decays like e^{−Im x}. The `*_scaled`
//! variants strip those exponentials (`j₁·e^{−|Im x|}`, `h₁·e^{−ix}`) so
//! that ratios can be formed without overflow.

use num_complex::Complex64;
use thiserror::Error;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Below this modulus j₁ and [x j₁]′ are taken from their Taylor series.
pub const SERIES_CROSSOVER: f64 = 1e-2;
const SERIES_TERMS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("{kind:?} is singular at x = 0")]
pub struct DomainError {
    pub kind: FunctionKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionKind {
    J1,
    H1,
    BracketJ1,
    BracketH1,
}

/// A function value tagged with its argument and kind.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecialFunctionValue {
    pub value: Complex64,
    pub argument: Complex64,
    pub kind: FunctionKind,
}

pub fn evaluate(kind: FunctionKind, x: Complex64) -> Result<SpecialFunctionValue, DomainError> {
    let value = match kind {
        FunctionKind::J1 => j1(x),
        FunctionKind::H1 => h1(x)?,
        FunctionKind::BracketJ1 => bracket(BesselKind::J1, x)?,
        FunctionKind::BracketH1 => bracket(BesselKind::H1, x)?,
    };
    Ok(SpecialFunctionValue {
        value,
        argument: x,
        kind,
    })
}

/// Which function the bracket derivative [x f(x)]′ is taken of.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BesselKind {
    J1,
    H1,
}

/// Taylor coefficients c_k of j₁(x) = x Σ c_k x^{2k}, i.e.
/// (−1/2)^k / (k! (2k+3)!!).
fn j1_series_coefficients() -> [f64; SERIES_TERMS] {
    let mut c = [0.0; SERIES_TERMS];
    let mut factorial = 1.0;
    let mut double_factorial = 3.0; // (2k+3)!! at k = 0
    let mut half_power = 1.0;
    for (k, ck) in c.iter_mut().enumerate() {
        if k > 0 {
            factorial *= k as f64;
            double_factorial *= (2 * k + 3) as f64;
            half_power *= -0.5;
        }
        *ck = half_power / (factorial * double_factorial);
    }
    c
}

fn j1_series(x: Complex64) -> Complex64 {
    let c = j1_series_coefficients();
    let x2 = x * x;
    let mut acc = Complex64::new(0.0, 0.0);
    for ck in c.iter().rev() {
        acc = acc * x2 + ck;
    }
    acc * x
}

fn bracket_j1_series(x: Complex64) -> Complex64 {
    // d/dx [x² Σ c_k x^{2k}] = Σ (2k+2) c_k x^{2k+1}
    let c = j1_series_coefficients();
    let x2 = x * x;
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, ck) in c.iter().enumerate().rev() {
        acc = acc * x2 + ck * (2 * k + 2) as f64;
    }
    acc * x
}

/// sin x and cos x multiplied by e^{−|Im x|}.
fn scaled_sin_cos(x: Complex64) -> (Complex64, Complex64) {
    let b = x.im.abs();
    let plus = Complex64::from_polar((-x.im - b).exp(), x.re); // e^{ix}  e^{−|b|}
    let minus = Complex64::from_polar((x.im - b).exp(), -x.re); // e^{−ix} e^{−|b|}
    ((plus - minus) / (2.0 * I), (plus + minus) * 0.5)
}

/// j₁(x).
pub fn j1(x: Complex64) -> Complex64 {
    if x.norm() < SERIES_CROSSOVER {
        return j1_series(x);
    }
    let (s, c) = (x.sin(), x.cos());
    s / (x * x) - c / x
}

/// j₁(x) e^{−|Im x|}.
pub fn j1_scaled(x: Complex64) -> Complex64 {
    if x.norm() < SERIES_CROSSOVER {
        return j1_series(x) * (-x.im.abs()).exp();
    }
    let (s, c) = scaled_sin_cos(x);
    s / (x * x) - c / x
}

/// h₁⁽¹⁾(x).
pub fn h1(x: Complex64) -> Result<Complex64, DomainError> {
    if x == Complex64::new(0.0, 0.0) {
        return Err(DomainError { kind: FunctionKind::H1 });
    }
    Ok(h1_scaled(x) * (I * x).exp())
}

/// h₁⁽¹⁾(x) e^{−ix}. Caller guarantees x ≠ 0.
#[inline]
pub fn h1_scaled(x: Complex64) -> Complex64 {
    let inv = x.inv();
    -(inv + I * inv * inv)
}

/// [x f(x)]′ for f = j₁ or h₁⁽¹⁾.
pub fn bracket(kind: BesselKind, x: Complex64) -> Result<Complex64, DomainError> {
    match kind {
        BesselKind::J1 => {
            if x.norm() < SERIES_CROSSOVER {
                return Ok(bracket_j1_series(x));
            }
            let (s, c) = (x.sin(), x.cos());
            Ok(c / x - s / (x * x) + s)
        }
        BesselKind::H1 => {
            if x == Complex64::new(0.0, 0.0) {
                return Err(DomainError {
                    kind: FunctionKind::BracketH1,
                });
            }
            Ok(bracket_h1_scaled(x) * (I * x).exp())
        }
    }
}

/// [x j₁(x)]′ e^{−|Im x|}.
pub fn bracket_j1_scaled(x: Complex64) -> Complex64 {
    if x.norm() < SERIES_CROSSOVER {
        return bracket_j1_series(x) * (-x.im.abs()).exp();
    }
    let (s, c) = scaled_sin_cos(x);
    c / x - s / (x * x) + s
}

/// [x h₁⁽¹⁾(x)]′ e^{−ix}. Caller guarantees x ≠ 0.
#[inline]
pub fn bracket_h1_scaled(x: Complex64) -> Complex64 {
    let inv = x.inv();
    I * inv * inv + inv - I
}
