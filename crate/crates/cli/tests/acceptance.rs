//! Acceptance suite: one PASS/FAIL line per criterion, INFO lines for
//! non-gating observations. A failing criterion is reported but only turns
//! the exit status non-zero when `LFVDW_ACCEPTANCE_STRICT=1`, so the rest of
//! `cargo test --workspace` still runs.
//!
//! Oracles here are written against textbook formulas and share no code
//! paths with the engine beyond the material response functions.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use lfvdw_cli::commands::potential_table;
use lfvdw_cli::{presets, ScenarioConfig};
use lfvdw_core::cavity::u1_electric_leading;
use lfvdw_core::{
    c1_equal_electric, c1_nonretarded, c3_nonretarded, c4_derivatives, c4_retarded, c4_small_contrast,
    finite_size_length, force_at, interface_value_closed_form, local_field_factor, ninham_interface_value,
    trace_integrand, u1_approx, u2_at, AtomModel, CurveRow, Layer, LayerStack, LocalField, MaterialModel,
    QuadratureSpec, Resonance, ScanTable, StaticPair,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Internal potential units per U₀.
const TO_U0: f64 = 12.0 * PI * PI;

struct Verdict {
    pass: bool,
    detail: String,
}

impl Verdict {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
        }
    }
}

type Outcome = Result<Verdict, String>;

fn info(msg: impl AsRef<str>) {
    println!("INFO  {}", msg.as_ref());
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs()
    }
}

fn preset(name: &str, file: &str) -> Result<ScenarioConfig, String> {
    let text = presets::find(name).map_err(err)?.file(file).map_err(err)?.text;
    ScenarioConfig::from_toml(text).map_err(err)
}

fn electric(plasma: f64) -> Resonance {
    Resonance::new(1.03, plasma, 0.001)
}

fn magnetic(plasma: f64) -> Resonance {
    Resonance::new(1.0, plasma, 0.001)
}

/// Lower medium shared by the figure scenarios.
fn medium_one() -> MaterialModel {
    MaterialModel::new(electric(0.75), magnetic(2.3))
}

fn medium_two(pe: f64, pm: f64) -> MaterialModel {
    let e = if pe > 0.0 { electric(pe) } else { Resonance::NONE };
    let m = if pm > 0.0 { magnetic(pm) } else { Resonance::NONE };
    MaterialModel::new(e, m)
}

fn tight() -> QuadratureSpec {
    QuadratureSpec::default().with_rel_tol(1e-11).with_abs_floor(0.0)
}

// ---------------------------------------------------------------------------
// 1. Two-layer U₂ against a fixed-grid double integral.

/// U₂ in U₀ from composite Simpson on N×N nodes in (ξ, q), both half-lines
/// mapped by x = s t/(1 − t).
fn simpson_u2(lower: &MaterialModel, upper: &MaterialModel, atom: &AtomModel, z: f64, n: usize) -> f64 {
    let (host, other) = if z > 0.0 { (upper, lower) } else { (lower, upper) };
    let dist = z.abs();
    let n_host0 = host.static_index();
    let s_xi = 1.0f64.min(1.0 / (2.0 * n_host0 * dist));
    let s_q = 1.0 / dist;
    let h = 1.0 / n as f64;
    let weight = |k: usize| {
        if k == 0 || k == n {
            1.0
        } else if k % 2 == 1 {
            4.0
        } else {
            2.0
        }
    };
    let mut total = 0.0;
    for i in 0..n {
        let t = i as f64 * h;
        let xi = s_xi * t / (1.0 - t);
        let jac_xi = s_xi / ((1.0 - t) * (1.0 - t));
        let (eh, mh) = (host.eps(xi), host.mu(xi));
        let (eo, mo) = (other.eps(xi), other.mu(xi));
        let lf = (3.0 * eh / (2.0 * eh + 1.0)).powi(2);
        let pre = atom.alpha(xi) * mh * lf * jac_xi;
        let mut row = 0.0;
        for k in 0..n {
            let u = k as f64 * h;
            let q = s_q * u / (1.0 - u);
            let jac_q = s_q / ((1.0 - u) * (1.0 - u));
            let bh = (eh * mh * xi * xi + q * q).sqrt();
            let bo = (eo * mo * xi * xi + q * q).sqrt();
            let f = if bh == 0.0 {
                0.0
            } else {
                let rs = (mo * bh - mh * bo) / (mo * bh + mh * bo);
                let rp = (eo * bh - eh * bo) / (eo * bh + eh * bo);
                q / bh * (-2.0 * bh * dist).exp() * (xi * xi * rs - (xi * xi + 2.0 * q * q / (eh * mh)) * rp)
            };
            row += weight(k) * f * jac_q;
        }
        total += weight(i) * pre * row * h / 3.0;
    }
    total * h / 3.0 * TO_U0 / (8.0 * PI * PI)
}

fn criterion_oracle() -> Outcome {
    let cfg = preset("fig1", "fig1_case2")?;
    let stack = cfg.stack().map_err(err)?;
    let (lower, upper) = (stack.layers[0].material, stack.layers[1].material);
    let atom = AtomModel::two_level();
    let spec = QuadratureSpec::default();
    let points = [-3.0, -1.0, -0.15, -0.08, -0.04, 0.04, 0.1, 0.25, 1.2, 3.0];
    let mut worst: f64 = 0.0;
    let mut worst_oracle: f64 = 0.0;
    for z in points {
        let fine = simpson_u2(&lower, &upper, &atom, z, 2048);
        let coarse = simpson_u2(&lower, &upper, &atom, z, 1024);
        worst_oracle = worst_oracle.max(rel(coarse, fine));
        let engine = u2_at(&stack.clone().with_atom_at(z), &atom, LocalField::Corrected, &spec).map_err(err)?;
        worst = worst.max(rel(engine.total(), fine));
    }
    info(format!("oracle self-consistency (N=1024 vs 2048): {worst_oracle:.2e}"));
    Ok(Verdict::new(
        worst < 1e-4 && worst_oracle < 1e-6,
        format!("max relative deviation {worst:.2e} over {} points (tol 1e-4)", points.len()),
    ))
}

// ---------------------------------------------------------------------------
// 2. Closed-form trace integrand against explicit multiple-reflection sums.

struct Draw {
    stack: LayerStack,
    xi: f64,
    q: f64,
}

fn random_resonance(rng: &mut ChaCha8Rng, p_active: f64) -> Resonance {
    if rng.gen_bool(p_active) {
        Resonance::new(rng.gen_range(0.5..2.0), rng.gen_range(0.0..3.0), rng.gen_range(0.0..0.1))
    } else {
        Resonance::NONE
    }
}

fn random_draw(rng: &mut ChaCha8Rng) -> Draw {
    let n = rng.gen_range(2..=5);
    let layers: Vec<Layer> = (0..n)
        .map(|k| {
            let material = MaterialModel::new(random_resonance(rng, 0.8), random_resonance(rng, 0.6));
            if k == 0 || k == n - 1 {
                Layer::half_space(material)
            } else {
                Layer::slab(material, 10f64.powf(rng.gen_range(-1.5..0.7)))
            }
        })
        .collect();
    let j = rng.gen_range(0..n);
    let d = layers[j].thickness;
    let local = if d.is_finite() {
        d * rng.gen_range(0.02..0.98)
    } else {
        10f64.powf(rng.gen_range(-2.0..0.5))
    };
    Draw {
        stack: LayerStack::new(layers, 0.01).with_atom(j, local),
        xi: 10f64.powf(rng.gen_range(-3.0..1.0)),
        q: 10f64.powf(rng.gen_range(-3.0..2.0)),
    }
}

/// (ε, μ, β, thickness) of one layer at the draw's (ξ, q).
type Slice = (f64, f64, f64, f64);

/// Fresnel coefficient for a wave in `a` reflected by `b`.
fn fresnel(a: Slice, b: Slice, p: bool) -> f64 {
    let (x, y) = if p { (b.0 * a.2, a.0 * b.2) } else { (b.1 * a.2, a.1 * b.2) };
    (x - y) / (x + y)
}

/// Reflection off everything on one side of layer j, folded inward from
/// the outermost interface.
fn stack_reflection(layers: &[Slice], j: usize, up: bool, p: bool) -> f64 {
    let last = layers.len() - 1;
    let phase = |l: usize| {
        if l == 0 || l == last {
            0.0
        } else {
            (-2.0 * layers[l].2 * layers[l].3).exp()
        }
    };
    let mut r = 0.0;
    let fold = |r: f64, from: usize, to: usize| {
        let r_if = fresnel(layers[from], layers[to], p);
        let e = phase(to);
        (r_if + e * r) / (1.0 + r_if * e * r)
    };
    if up {
        for l in (j..last).rev() {
            r = fold(r, l, l + 1);
        }
    } else {
        for l in 1..=j {
            r = fold(r, l, l - 1);
        }
    }
    r
}

/// Odd and even trace sums accumulated path by path: every bounce off the
/// lower or upper side followed by k complete round trips. Also returns the
/// sum of absolute odd contributions as the scale for relative errors.
fn series_oracle(d: &Draw) -> (f64, f64, f64) {
    let s = &d.stack;
    let xi = d.xi;
    let layers: Vec<Slice> = s
        .layers
        .iter()
        .map(|l| {
            let (e, m) = (l.material.eps(xi), l.material.mu(xi));
            (e, m, (e * m * xi * xi + d.q * d.q).sqrt(), l.thickness)
        })
        .collect();
    let j = s.atom_layer;
    let (eh, mh, b, thick) = layers[j];
    let (below, above) = s.atom_distances();
    let p_weight = 1.0 + 2.0 * d.q * d.q / (xi * xi * eh * mh);
    let (mut odd, mut even, mut magnitude) = (0.0, 0.0, 0.0);
    for (p, w) in [(false, 1.0), (true, -p_weight)] {
        let r_lo = stack_reflection(&layers, j, false, p);
        let r_hi = stack_reflection(&layers, j, true, p);
        let trip = if thick.is_finite() { r_lo * r_hi * (-2.0 * b * thick).exp() } else { 0.0 };
        let mut lo = if below.is_finite() { r_lo * (-2.0 * b * below).exp() } else { 0.0 };
        let mut hi = if above.is_finite() { r_hi * (-2.0 * b * above).exp() } else { 0.0 };
        let mut rt = trip;
        while lo != 0.0 || hi != 0.0 || rt != 0.0 {
            odd += w * (lo + hi);
            even += rt;
            magnitude += (w * lo).abs() + (w * hi).abs();
            lo *= trip;
            hi *= trip;
            rt *= trip;
            if lo.abs() + hi.abs() < 1e-18 * magnitude && rt.abs() < 1e-18 * even.abs() {
                break;
            }
        }
    }
    let jac = d.q / b;
    (jac * odd, jac * even, jac * magnitude)
}

fn criterion_series() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2024);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let d = random_draw(&mut rng);
        let (odd, even) = trace_integrand(&d.stack, d.xi, d.q, d.stack.z_atom).map_err(err)?;
        let (o_odd, o_even, scale) = series_oracle(&d);
        let e_odd = if odd == o_odd { 0.0 } else { (odd - o_odd).abs() / scale };
        let e_even = rel(even, o_even);
        worst = worst.max(e_odd).max(e_even);
    }
    Ok(Verdict::new(
        worst < 1e-10,
        format!("max relative deviation {worst:.2e} over 1000 draws (tol 1e-10)"),
    ))
}

// ---------------------------------------------------------------------------
// 3. Asymptotic coefficients.

fn u2_two_layer(lower: MaterialModel, upper: MaterialModel, z: f64, spec: &QuadratureSpec) -> Result<f64, String> {
    let stack = LayerStack::two_layer(lower, upper, 0.01).with_atom_at(z);
    Ok(u2_at(&stack, &AtomModel::two_level(), LocalField::Corrected, spec).map_err(err)?.total())
}

fn criterion_asymptotics() -> Outcome {
    let spec = tight();
    let atom = AtomModel::two_level();
    let (m1, m2) = (medium_one(), medium_two(0.4, 0.4));
    let c4 = c4_retarded(&StaticPair::from_materials(&m1, &m2), atom.static_alpha(), &spec).map_err(err)?.value;
    let mut far = Vec::new();
    for z in [50.0, 100.0, 200.0] {
        far.push(rel(u2_two_layer(m1, m2, z, &spec)? * z.powi(4), c4));
    }
    let monotone = far.windows(2).all(|w| w[1] < w[0]);
    let c3 = c3_nonretarded(&m1, &m2, &atom, &spec).map_err(err)?.value;
    let z = 1e-3;
    let near = rel(u2_two_layer(m1, m2, z, &spec)? * z.powi(3), -c3);
    // Equal electric response, different magnetic response.
    let (e1, e2) = (medium_one(), MaterialModel::new(electric(0.75), magnetic(0.4)));
    let c1 = c1_equal_electric(&e1, &e2, &atom, &spec).map_err(err)?.value;
    let c1_general = c1_nonretarded(&e1, &e2, &atom, &spec).map_err(err)?.value;
    let c1_dev = rel(u2_two_layer(e1, e2, z, &spec)? * z, c1);
    info(format!("general vs equal-electric C1: relative difference {:.2e}", rel(c1_general, c1)));
    Ok(Verdict::new(
        far[2] < 0.05 && monotone && near < 0.05 && c1_dev < 0.05,
        format!(
            "z^4 U2/C4 deviation at 50/100/200: {:.2e}/{:.2e}/{:.2e} (monotone: {monotone}); z^3 U2 vs -C3: {near:.2e}; z U2 vs C1: {c1_dev:.2e} (tol 5%)",
            far[0], far[1], far[2]
        ),
    ))
}

// ---------------------------------------------------------------------------
// 4. Sign laws of C4.

const PLASMA_GRID: [f64; 3] = [0.4, 1.0, 2.3];

fn criterion_sign_laws() -> Outcome {
    let spec = tight();
    let a0 = AtomModel::two_level().static_alpha();
    let c4 = |p: StaticPair| c4_retarded(&p, a0, &spec).map(|r| r.value).map_err(err);
    let mut failures = Vec::new();
    let mut checked = 0;
    for &p in &PLASMA_GRID {
        let eps = electric(p).at_imaginary(0.0);
        let mu = magnetic(p).at_imaginary(0.0);
        let cases = [
            ("electric medium 1", StaticPair::new(eps, 1.0, 1.0, 1.0), -1.0),
            ("magnetic medium 1", StaticPair::new(1.0, mu, 1.0, 1.0), 1.0),
            ("electric host", StaticPair::new(1.0, 1.0, eps, 1.0), 1.0),
            ("magnetic host", StaticPair::new(1.0, 1.0, 1.0, mu), -1.0),
        ];
        for (name, pair, sign) in cases {
            checked += 1;
            let v = c4(pair)?;
            if v * sign <= 0.0 {
                failures.push(format!("C4 sign, {name}, plasma {p}: {v:.3e}"));
            }
        }
    }
    // Derivative signs on the 3x3 grid of (medium 1, host) plasma
    // frequencies, for every pairing of pure electric and pure magnetic
    // media.
    let names = ["dC4/deps1", "dC4/dmu1", "dC4/dmu2"];
    let expected = [-1.0, 1.0, -1.0];
    for &p1 in &PLASMA_GRID {
        for &p2 in &PLASMA_GRID {
            let (e1, m1) = (electric(p1).at_imaginary(0.0), magnetic(p1).at_imaginary(0.0));
            let (e2, m2) = (electric(p2).at_imaginary(0.0), magnetic(p2).at_imaginary(0.0));
            let pairs = [
                ("E|E", StaticPair::new(e1, 1.0, e2, 1.0)),
                ("E|M", StaticPair::new(e1, 1.0, 1.0, m2)),
                ("M|E", StaticPair::new(1.0, m1, e2, 1.0)),
                ("M|M", StaticPair::new(1.0, m1, 1.0, m2)),
            ];
            for (kind, pair) in pairs {
                let d = c4_derivatives(&pair, a0, &spec).map_err(err)?;
                for k in 0..3 {
                    checked += 1;
                    if d[k] * expected[k] <= 0.0 {
                        failures.push(format!(
                            "{} = {:+.3e} at {kind} (eps1, mu1, eps2, mu2) = ({:.3}, {:.3}, {:.3}, {:.3})",
                            names[k], d[k], pair.eps1, pair.mu1, pair.eps2, pair.mu2
                        ));
                    }
                }
            }
        }
    }
    for f in failures.iter().take(12) {
        info(format!("sign-law violation: {f}"));
    }
    Ok(Verdict::new(
        failures.is_empty(),
        format!("{} of {checked} sign predicates violated", failures.len()),
    ))
}

// ---------------------------------------------------------------------------
// 5. Small-contrast closed form.

fn criterion_small_contrast() -> Outcome {
    let spec = tight();
    let a0 = AtomModel::two_level().static_alpha();
    let exact = c4_retarded(&StaticPair::new(1.01, 1.01, 1.0, 1.0), a0, &spec).map_err(err)?.value;
    let closed = c4_small_contrast(1.0, 1.0, 0.01, 0.01, a0);
    let dev = rel(closed, exact);
    let ratio = 23.0 / 7.0;
    let below = c4_small_contrast(ratio * 0.999, 1.0, 0.01, 0.01, a0);
    let above = c4_small_contrast(ratio * 1.001, 1.0, 0.01, 0.01, a0);
    let c4_at = |eps2: f64| {
        c4_retarded(&StaticPair::new(eps2 + 1e-3, 1.0 + 1e-3, eps2, 1.0), a0, &spec)
            .map(|r| r.value)
            .map_err(err)
    };
    let (ex_below, ex_above) = (c4_at(ratio * 0.95)?, c4_at(ratio * 1.05)?);
    info(format!("integral C4 at eps2/mu2 = 23/7 -+5%: {ex_below:.3e} / {ex_above:.3e}"));
    Ok(Verdict::new(
        dev < 0.02 && closed < 0.0 && below < 0.0 && above > 0.0 && ex_below < 0.0 && ex_above > 0.0,
        format!("closed form vs integral {dev:.2e} (tol 2%); sign below/above 23/7: {below:.2e}/{above:.2e}"),
    ))
}

// ---------------------------------------------------------------------------
// 6. Cavity term.

fn criterion_cavity() -> Outcome {
    let spec = QuadratureSpec::default().with_rel_tol(1e-10);
    let atom = AtomModel::two_level();
    let mut ok = true;
    let mut notes = Vec::new();
    for (file, sign) in [("fig3_electric", -1.0), ("fig3_magnetic", 1.0)] {
        let cfg = preset("fig3", file)?;
        let table = potential_table(&cfg).map_err(err)?;
        let host = *cfg.stack().map_err(err)?.atom_material();
        let mut prev = f64::INFINITY;
        let mut monotone = true;
        let mut signs = true;
        let mut worst: f64 = 0.0;
        // Largest radius up to which the 5% band holds on this grid.
        let mut holds_to = 0.0;
        let mut intact = true;
        for row in &table.rows {
            let u1 = row.u1.ok_or("missing U1")?;
            signs &= u1 * sign > 0.0;
            monotone &= u1.abs() < prev;
            prev = u1.abs();
            let dev = rel(u1_approx(&host, &atom, row.scan_value, &spec).map_err(err)?.value, u1);
            intact &= dev < 0.05;
            if intact {
                holds_to = row.scan_value;
            }
            if row.scan_value <= 0.01 {
                worst = worst.max(dev);
            }
        }
        ok &= monotone && signs && worst < 0.05 && table.rows.len() == 41;
        notes.push(format!(
            "{file}: max deviation {worst:.2e} (5% band holds to Rc = {holds_to:.2e}), sign ok {signs}, monotone {monotone}"
        ));
    }
    Ok(Verdict::new(ok, format!("exact vs approximate U1 for Rc <= 0.01 (tol 5%); {}", notes.join("; "))))
}

// ---------------------------------------------------------------------------
// 7. Figure-level shapes.

fn layer_rows(t: &ScanTable, layer: usize) -> Vec<&CurveRow> {
    t.rows.iter().filter(|r| r.layer == layer).collect()
}

fn u2c(r: &CurveRow) -> f64 {
    r.u2_corrected.unwrap_or(f64::NAN)
}

/// Depth of the deepest interior minimum preceded by a maximum, or 0.
fn well_depth(values: &[f64]) -> f64 {
    let mut depth: f64 = 0.0;
    let mut peak = f64::NEG_INFINITY;
    for k in 1..values.len().saturating_sub(1) {
        let (a, b, c) = (values[k - 1], values[k], values[k + 1]);
        if b > a && b >= c {
            peak = peak.max(b);
        }
        if b < a && b <= c && peak.is_finite() {
            depth = depth.max(peak - b);
        }
    }
    depth
}

fn max_relative_correction(t: &ScanTable) -> f64 {
    t.rows
        .iter()
        .filter_map(|r| Some((r.delta_u2?, r.u2_uncorrected?)))
        .filter(|(_, u)| *u != 0.0)
        .map(|(d, u)| (d / u).abs())
        .fold(0.0, f64::max)
}

fn criterion_figures() -> Outcome {
    let mut checks: Vec<(String, bool)> = Vec::new();
    let fig1: Vec<ScanTable> = ["fig1_case1", "fig1_case2", "fig1_case3"]
        .iter()
        .map(|f| potential_table(&preset("fig1", f)?).map_err(err))
        .collect::<Result<_, _>>()?;
    let nearest = |t: &ScanTable, layer: usize| -> f64 {
        layer_rows(t, layer)
            .into_iter()
            .min_by(|a, b| a.z.abs().partial_cmp(&b.z.abs()).unwrap())
            .map(u2c)
            .unwrap_or(f64::NAN)
    };
    checks.push(("case 1 repulsive near interface in layer 2".into(), nearest(&fig1[0], 1) > 0.0));
    checks.push(("case 1 attractive near interface in layer 1".into(), nearest(&fig1[0], 0) < 0.0));
    let l2: Vec<&CurveRow> = layer_rows(&fig1[1], 1);
    let crossing = l2.windows(2).any(|w| {
        let (a, b) = (w[0].delta_u2.unwrap_or(0.0), w[1].delta_u2.unwrap_or(0.0));
        a * b < 0.0
    });
    checks.push(("case 2 corrected and uncorrected curves cross".into(), crossing));
    let values: Vec<f64> = l2.iter().map(|r| u2c(r)).collect();
    let has_wall = values.windows(3).any(|w| w[1] > w[0] && w[1] > w[2]);
    checks.push(("case 2 wall in layer 2".into(), has_wall && values[0] < 0.0));
    checks.push(("case 3 attractive near interface in layer 2".into(), nearest(&fig1[2], 1) < 0.0));
    let fig1_corr = fig1.iter().map(max_relative_correction).fold(0.0, f64::max);
    info(format!("fig1 max |dU2/U2| = {fig1_corr:.3} (informational threshold 0.2: {})", fig1_corr >= 0.2));

    let mut depth = Vec::new();
    let mut mirror_worst: f64 = 0.0;
    let mut fig5f_corr = 0.0;
    for (d2, sym) in [(5.0, false), (2.0, false), (1.0, false), (5.0, true), (2.0, true), (1.0, true)] {
        let name = format!("fig5_d{}_{}", d2 as i32, if sym { "sym" } else { "asym" });
        let t = potential_table(&preset("fig5", &name)?).map_err(err)?;
        let mid: Vec<&CurveRow> = layer_rows(&t, 1);
        let values: Vec<f64> = mid.iter().map(|r| u2c(r)).collect();
        depth.push((name.clone(), well_depth(&values)));
        if sym {
            let n = mid.len();
            for k in 0..n {
                let (a, b) = (mid[k], mid[n - 1 - k]);
                if (a.z + b.z - d2).abs() > 1e-9 {
                    return Err(format!("{name}: grid is not symmetric about the slab centre"));
                }
                let tol = 1e-8 * u2c(a).abs().max(u2c(b).abs()) + a.errors.u2 + b.errors.u2;
                mirror_worst = mirror_worst.max((u2c(a) - u2c(b)).abs() / tol);
            }
        }
        if sym && d2 == 1.0 {
            fig5f_corr = max_relative_correction(&t);
        }
    }
    info(format!("fig5(f) max |dU2/U2| = {fig5f_corr:.3} (informational threshold 0.5: {})", fig5f_corr >= 0.5));
    for (name, d) in &depth {
        info(format!("{name}: middle-layer well depth {d:.3e}"));
    }
    let well = |i: usize| depth[i].1;
    checks.push(("fig5 well at d2 = 5".into(), well(0) > 0.0 && well(3) > 0.0));
    checks.push(("fig5 well gone at d2 = 1".into(), well(2) == 0.0 && well(5) == 0.0));
    checks.push(("fig5 well shrinks with d2".into(), well(1) <= well(0) && well(4) <= well(3)));
    checks.push(("fig5 symmetric column mirror-symmetric".into(), mirror_worst <= 1.0));
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0.as_str()).collect();
    Ok(Verdict::new(
        failed.is_empty(),
        if failed.is_empty() {
            format!("{} shape checks hold; mirror deviation {mirror_worst:.2e} of tolerance", checks.len())
        } else {
            format!("failed: {}", failed.join("; "))
        },
    ))
}

// ---------------------------------------------------------------------------
// 8. Far-zone correction ratio.

fn criterion_far_ratio() -> Outcome {
    let spec = tight();
    let atom = AtomModel::two_level();
    let z = 200.0;
    let mut worst: f64 = 0.0;
    let mut in_range = true;
    for pe in [0.4, 1.0, 2.0, 4.0] {
        let stack = LayerStack::two_layer(medium_one(), medium_two(pe, 0.4), 0.01).with_atom_at(z);
        let c = u2_at(&stack, &atom, LocalField::Corrected, &spec).map_err(err)?.total();
        let u = u2_at(&stack, &atom, LocalField::Uncorrected, &spec).map_err(err)?.total();
        let target = local_field_factor(stack.atom_material().static_eps());
        in_range &= (1.0..2.25).contains(&target);
        worst = worst.max(rel(c / u, target));
    }
    Ok(Verdict::new(
        worst < 0.05 && in_range,
        format!("max |ratio/LF(eps2(0)) - 1| at z = {z}: {worst:.2e} (tol 5%)"),
    ))
}

// ---------------------------------------------------------------------------
// 9. Force against five-point finite differences.

fn criterion_force() -> Outcome {
    let spec = QuadratureSpec::default().with_rel_tol(1e-12).with_abs_floor(0.0);
    let atom = AtomModel::two_level();
    let h = 1e-4;
    let mut worst: f64 = 0.0;
    let mut compared = 0;
    let mut skipped = 0;
    for file in ["fig1_case1", "fig1_case2", "fig1_case3"] {
        let cfg = preset("fig1", file)?;
        let table = potential_table(&cfg).map_err(err)?;
        let base = cfg.stack().map_err(err)?;
        let rows = &table.rows;
        for k in 0..rows.len() {
            let r = &rows[k];
            let near_crossing = [k.wrapping_sub(1), k + 1].iter().any(|&m| {
                rows.get(m).is_some_and(|o| {
                    o.layer == r.layer
                        && (o.force.unwrap_or(0.0) * r.force.unwrap_or(0.0) <= 0.0
                            || o.u2().unwrap_or(0.0) * r.u2().unwrap_or(0.0) <= 0.0)
                })
            });
            if near_crossing {
                skipped += 1;
                continue;
            }
            let u = |z: f64| -> Result<f64, String> {
                Ok(u2_at(&base.clone().with_atom_at(z), &atom, LocalField::Corrected, &spec).map_err(err)?.total())
            };
            let z = r.z;
            let slope = (-u(z + 2.0 * h)? + 8.0 * u(z + h)? - 8.0 * u(z - h)? + u(z - 2.0 * h)?) / (12.0 * h);
            let f = force_at(&base.clone().with_atom_at(z), &atom, LocalField::Corrected, &spec).map_err(err)?.value;
            worst = worst.max(rel(f, -slope));
            compared += 1;
        }
    }
    Ok(Verdict::new(
        worst < 1e-4 && compared > 100,
        format!("max relative deviation {worst:.2e} over {compared} points, {skipped} near crossings skipped (tol 1e-4)"),
    ))
}

// ---------------------------------------------------------------------------
// 10. Interface identities.

fn criterion_interface() -> Outcome {
    let spec = QuadratureSpec::default().with_rel_tol(1e-11);
    let atom = AtomModel::two_level();
    let r = 0.01;
    let vac = MaterialModel::vacuum();
    let zero = interface_value_closed_form(&vac, &vac, &atom, r, LocalField::Corrected, &spec).map_err(err)?.value();
    let m = medium_one();
    let same = interface_value_closed_form(&m, &m, &atom, r, LocalField::Corrected, &spec).map_err(err)?.value();
    let bulk = u1_electric_leading(&m, &atom, r, &spec).map_err(err)?.value;
    let bulk_dev = rel(same, bulk);
    let (e1, e2) = (MaterialModel::new(electric(0.75), Resonance::NONE), MaterialModel::new(electric(0.4), Resonance::NONE));
    let cf = interface_value_closed_form(&e1, &e2, &atom, r, LocalField::Uncorrected, &spec).map_err(err)?;
    let nin = ninham_interface_value(&e1, &e2, &atom, finite_size_length(r), &spec).map_err(err)?;
    let map_dev = rel(cf.interface.value, nin.interface.value);
    Ok(Verdict::new(
        zero == 0.0 && bulk_dev < 1e-9 && map_dev < 1e-9,
        format!("vacuum {zero:e}; equal media vs bulk {bulk_dev:.2e}; interface terms under s = {:.4} Rc: {map_dev:.2e}", finite_size_length(1.0)),
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("oracle equivalence", criterion_oracle),
        ("series identity", criterion_series),
        ("asymptotic matching", criterion_asymptotics),
        ("sign laws", criterion_sign_laws),
        ("small-contrast closed form", criterion_small_contrast),
        ("cavity-term consistency", criterion_cavity),
        ("figure-level reproduction", criterion_figures),
        ("far-zone correction ratio", criterion_far_ratio),
        ("force consistency", criterion_force),
        ("interface identities", criterion_interface),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = run().unwrap_or_else(|e| Verdict::new(false, format!("error: {e}")));
        let tag = if verdict.pass { "PASS" } else { "FAIL" };
        if !verdict.pass {
            failed += 1;
        }
        println!("{tag}  [{}] {name}: {} ({:.1}s)", k + 1, verdict.detail, start.elapsed().as_secs_f64());
    }
    let strict = std::env::var("LFVDW_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 && !strict {
        println!("acceptance: {failed} FAIL reported; exit status stays 0 unless LFVDW_ACCEPTANCE_STRICT=1");
    }
    if failed == 0 || !strict {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
