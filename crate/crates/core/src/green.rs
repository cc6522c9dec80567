//! Generalised Fresnel coefficients of a planar stack and the equal-point
//! trace of the scattering Green tensor on the imaginary frequency axis.
//!
//! For an atom in layer j at local height z the trace integrand is
//!
//! ```text
//! (q/β_j) { e^{−2β_j z}      [r_{j−}^s/D^s − (1 + 2q²/(ξ²ε_jμ_j)) r_{j−}^p/D^p]
//!         + e^{−2β_j(d_j−z)} [r_{j+}^s/D^s − (1 + 2q²/(ξ²ε_jμ_j)) r_{j+}^p/D^p] }
//! (q/β_j) Σ_σ r_{j−}^σ r_{j+}^σ e^{−2β_j d_j} / D^σ
//! ```
//!
//! with D^σ = 1 − r_{j−}^σ r_{j+}^σ e^{−2β_j d_j}. The first line collects
//! the odd numbers of reflections and depends on z; the second collects
//! the even ones. Quadrature works in u = β_j instead of q (q dq = u du),
//! which removes the square-root kink at q = 0.

use crate::error::{Error, Result};
use crate::material::MaterialModel;
use crate::stack::LayerStack;

/// Exponents below this value are flushed to an exact zero.
pub const EXP_FLOOR: f64 = -745.0;

#[inline]
pub(crate) fn decay(exponent: f64) -> f64 {
    if exponent < EXP_FLOOR {
        0.0
    } else {
        exponent.exp()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarization {
    S,
    P,
}

impl Polarization {
    pub const BOTH: [Polarization; 2] = [Polarization::S, Polarization::P];

    fn index(self) -> usize {
        match self {
            Polarization::S => 0,
            Polarization::P => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Towards the first layer.
    Down,
    /// Towards the last layer.
    Up,
}

/// One side of an interface at fixed (ξ, q).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Side {
    pub eps: f64,
    pub mu: f64,
    pub beta: f64,
}

/// β = √(εμξ² + q²).
pub fn beta(eps: f64, mu: f64, xi: f64, q: f64) -> f64 {
    (eps * mu * xi * xi + q * q).sqrt()
}

/// Fresnel coefficient r_{l,l+1} for light in `from` meeting `to`:
/// s: (μ_to β_from − μ_from β_to)/(μ_to β_from + μ_from β_to), p likewise
/// with ε.
pub fn single_interface_r(from: Side, to: Side, pol: Polarization) -> f64 {
    let (a, b) = match pol {
        Polarization::S => (to.mu * from.beta, from.mu * to.beta),
        Polarization::P => (to.eps * from.beta, from.eps * to.beta),
    };
    let den = a + b;
    if den == 0.0 {
        return 0.0;
    }
    (a - b) / den
}

/// Layer responses of a stack frozen at one imaginary frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct StackAtXi {
    pub xi: f64,
    pub eps: Vec<f64>,
    pub mu: Vec<f64>,
    pub thickness: Vec<f64>,
    /// ξ²ε_lμ_l.
    k2: Vec<f64>,
}

impl StackAtXi {
    pub fn new(stack: &LayerStack, xi: f64) -> Self {
        Self::from_materials(stack.layers.iter().map(|l| (&l.material, l.thickness)), xi)
    }

    pub fn from_materials<'a>(layers: impl Iterator<Item = (&'a MaterialModel, f64)>, xi: f64) -> Self {
        let mut out = Self {
            xi,
            eps: Vec::new(),
            mu: Vec::new(),
            thickness: Vec::new(),
            k2: Vec::new(),
        };
        for (m, d) in layers {
            let (e, u) = (m.eps(xi), m.mu(xi));
            out.eps.push(e);
            out.mu.push(u);
            out.thickness.push(d);
            out.k2.push(e * u * xi * xi);
        }
        out
    }

    pub fn len(&self) -> usize {
        self.eps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eps.is_empty()
    }

    /// ε_lμ_l.
    pub fn index_sq(&self, l: usize) -> f64 {
        self.eps[l] * self.mu[l]
    }

    /// β_l for a given β_j = u in layer j.
    #[inline]
    pub fn beta_from(&self, j: usize, u: f64, l: usize) -> f64 {
        if l == j {
            return u;
        }
        (u * u + (self.k2[l] - self.k2[j])).max(0.0).sqrt()
    }

    fn side(&self, j: usize, u: f64, l: usize) -> Side {
        Side {
            eps: self.eps[l],
            mu: self.mu[l],
            beta: self.beta_from(j, u, l),
        }
    }

    /// Generalised coefficient r_{j±}^σ at β_j = u, built outward-in from
    /// r_{1−} = r_{n+} = 0.
    pub fn generalized_r(&self, j: usize, u: f64, dir: Direction, pol: Polarization) -> f64 {
        let n = self.len();
        let mut r = 0.0;
        match dir {
            Direction::Up => {
                for l in (j..n.saturating_sub(1)).rev() {
                    r = self.step(j, u, l, l + 1, r, pol);
                }
            }
            Direction::Down => {
                for l in 1..=j {
                    r = self.step(j, u, l, l - 1, r, pol);
                }
            }
        }
        r
    }

    /// r_{l±} from r_{l±1,±} = `outer`.
    fn step(&self, j: usize, u: f64, l: usize, next: usize, outer: f64, pol: Polarization) -> f64 {
        let r_local = single_interface_r(self.side(j, u, l), self.side(j, u, next), pol);
        if outer == 0.0 {
            return r_local;
        }
        let b = self.beta_from(j, u, next);
        let round_trip = outer * decay(-2.0 * b * self.thickness[next]);
        (r_local + round_trip) / (1.0 + r_local * round_trip)
    }

    /// Reflection data seen from layer j at β_j = u.
    pub fn reflections(&self, j: usize, u: f64) -> ReflectionSet {
        let mut set = ReflectionSet::default();
        let d = self.thickness[j];
        let last = self.len() - 1;
        let inner = j != 0 && j != last;
        for pol in Polarization::BOTH {
            let k = pol.index();
            set.r_minus[k] = self.generalized_r(j, u, Direction::Down, pol);
            set.r_plus[k] = self.generalized_r(j, u, Direction::Up, pol);
            set.round_trip[k] = if inner {
                set.r_minus[k] * set.r_plus[k] * decay(-2.0 * u * d)
            } else {
                0.0
            };
        }
        set
    }
}

/// Generalised reflection coefficients of layer j and the round-trip
/// products r_{j−}r_{j+}e^{−2β_j d_j}, indexed [s, p].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ReflectionSet {
    pub r_minus: [f64; 2],
    pub r_plus: [f64; 2],
    pub round_trip: [f64; 2],
}

impl ReflectionSet {
    pub fn r_minus(&self, pol: Polarization) -> f64 {
        self.r_minus[pol.index()]
    }

    pub fn r_plus(&self, pol: Polarization) -> f64 {
        self.r_plus[pol.index()]
    }

    /// D_j^σ.
    pub fn denominator(&self, pol: Polarization) -> f64 {
        1.0 - self.round_trip[pol.index()]
    }
}

/// Generalised coefficient r_{j±}^σ of a stack at (ξ, q).
pub fn recurse_r(stack: &LayerStack, xi: f64, q: f64, j: usize, dir: Direction, pol: Polarization) -> f64 {
    let s = StackAtXi::new(stack, xi);
    let u = (s.k2[j] + q * q).sqrt();
    s.generalized_r(j, u, dir, pol)
}

/// The three u-integrands of U₂ at (ξ, u = β_j), each multiplied by ξ²
/// and stripped of its exponential distance factor:
///
/// * `lower`: ξ² r_{j−}^s/D^s − (2u²/(ε_jμ_j) − ξ²) r_{j−}^p/D^p, to be
///   weighted by e^{−2u z}
/// * `upper`: the same with r_{j+}, weighted by e^{−2u(d_j − z)}
/// * `even`: ξ² Σ_σ r_{j−}^σ r_{j+}^σ / D^σ, weighted by e^{−2u d_j}
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TraceTerms {
    pub lower: f64,
    pub upper: f64,
    pub even: f64,
}

impl StackAtXi {
    pub fn trace_terms(&self, j: usize, u: f64) -> TraceTerms {
        let set = self.reflections(j, u);
        let xi2 = self.xi * self.xi;
        let p_weight = 2.0 * u * u / self.index_sq(j) - xi2;
        let (ds, dp) = (set.denominator(Polarization::S), set.denominator(Polarization::P));
        let combine = |rs: f64, rp: f64| xi2 * rs / ds - p_weight * rp / dp;
        let even = if set.round_trip == [0.0, 0.0] {
            0.0
        } else {
            // The e^{−2ud} factor is applied by the caller.
            xi2 * (set.r_minus[0] * set.r_plus[0] / ds + set.r_minus[1] * set.r_plus[1] / dp)
        };
        TraceTerms {
            lower: combine(set.r_minus[0], set.r_minus[1]),
            upper: combine(set.r_plus[0], set.r_plus[1]),
            even,
        }
    }
}

/// Trace integrand in the transverse wavenumber q at local atom height
/// `z`, returned as (odd part, even part). Needs ξ > 0.
pub fn trace_integrand(stack: &LayerStack, xi: f64, q: f64, z: f64) -> Result<(f64, f64)> {
    if !(xi > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "trace integrand needs xi > 0, got {xi}"
        )));
    }
    let s = StackAtXi::new(stack, xi);
    let j = stack.atom_layer;
    let n2 = s.index_sq(j);
    let u = (s.k2[j] + q * q).sqrt();
    let set = s.reflections(j, u);
    let last = s.len() - 1;
    let weight = 1.0 + 2.0 * q * q / (xi * xi * n2);
    let (ds, dp) = (set.denominator(Polarization::S), set.denominator(Polarization::P));
    let (below, above) = match j {
        0 => (f64::INFINITY, z),
        k if k == last => (z, f64::INFINITY),
        _ => (z, s.thickness[j] - z),
    };
    let mut odd = 0.0;
    if set.r_minus != [0.0, 0.0] {
        odd += decay(-2.0 * u * below) * (set.r_minus[0] / ds - weight * set.r_minus[1] / dp);
    }
    if set.r_plus != [0.0, 0.0] {
        odd += decay(-2.0 * u * above) * (set.r_plus[0] / ds - weight * set.r_plus[1] / dp);
    }
    let even = if set.round_trip == [0.0, 0.0] {
        0.0
    } else {
        set.round_trip[0] / ds + set.round_trip[1] / dp
    };
    let jac = q / u;
    Ok((jac * odd, jac * even))
}

/// Closed-form sums r₋e^{−2βz}/(1−x) + r₊e^{−2β(d−z)}/(1−x) and x/(1−x)
/// with x = r₋r₊e^{−2βd}.
pub fn closed_form_reflection_sums(r_minus: f64, r_plus: f64, beta: f64, d: f64, z: f64) -> (f64, f64) {
    let x = r_minus * r_plus * decay(-2.0 * beta * d);
    let den = 1.0 - x;
    let odd = (r_minus * decay(-2.0 * beta * z) + r_plus * decay(-2.0 * beta * (d - z))) / den;
    (odd, x / den)
}

/// The same sums as explicit multiple-reflection series truncated after
/// `n_terms` round trips.
pub fn reflection_series(
    r_minus: f64,
    r_plus: f64,
    beta: f64,
    d: f64,
    z: f64,
    n_terms: usize,
) -> Result<(f64, f64)> {
    let (em, ez, ezp) = (
        (-beta * d).exp(),
        (-beta * z).exp(),
        (-beta * (d - z)).exp(),
    );
    let x = r_minus * em * r_plus * em;
    if !(x.abs() < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "multiple-reflection series diverges: |r- r+ exp(-2 beta d)| = {}",
            x.abs()
        )));
    }
    // Paths starting and ending at the atom: e^{−βz} r₋ (e^{−βd} r₊ e^{−βd} r₋)^k e^{−βz}, etc.
    let mut odd = 0.0;
    let mut even = 0.0;
    let mut lower = ez * r_minus * ez;
    let mut upper = ezp * r_plus * ezp;
    let mut round = x;
    for _ in 0..n_terms {
        odd += lower + upper;
        even += round;
        lower *= em * r_plus * em * r_minus;
        upper *= em * r_minus * em * r_plus;
        round *= x;
    }
    Ok((odd, even))
}
