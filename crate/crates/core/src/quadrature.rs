//! Adaptive quadrature with an evaluation budget: Simpson with Richardson
//! correction by default, Gauss-Kronrod (7/15) for long oscillatory ranges.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Rule {
    #[default]
    Simpson,
    GaussKronrod,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub rule: Rule,
    /// Target absolute error over the whole interval.
    pub abs_tol: f64,
    /// Relative target, against a first estimate of `∫ |f|`; the looser of
    /// the two applies.
    pub rel_tol: f64,
    /// Hard cap on integrand evaluations; exceeding it is an error.
    pub max_evals: usize,
    /// Uniform panels laid down before adaptation. Oscillatory integrands
    /// need several panels per period or the first Simpson estimates alias.
    pub initial_panels: usize,
    /// Bisection depth at which a panel is accepted as is.
    pub max_depth: u32,
    /// When set, initial panels are laid at multiples of half this period
    /// (from the lower limit) instead of uniformly, so that kinks of a
    /// periodic integrand sit on panel edges.
    pub period: Option<f64>,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            rule: Rule::Simpson,
            abs_tol: 1e-10,
            rel_tol: 1e-12,
            max_evals: 1_000_000,
            initial_panels: 16,
            max_depth: 50,
            period: None,
        }
    }
}

impl QuadConfig {
    pub fn with_panels(mut self, panels: usize) -> Self {
        self.initial_panels = panels.max(1);
        self
    }

    pub fn with_rule(mut self, rule: Rule) -> Self {
        self.rule = rule;
        self
    }

    pub fn with_period(mut self, period: f64) -> Self {
        self.period = (period.is_finite() && period > 0.0).then_some(period);
        self
    }
}

/// Panel edges over `[a, b]`: half-period steps when a period is set,
/// `initial_panels` uniform steps otherwise.
fn panel_edges(a: f64, b: f64, cfg: &QuadConfig) -> Vec<f64> {
    let uniform = |panels: usize| -> Vec<f64> {
        let width = (b - a) / panels as f64;
        (0..=panels).map(|i| if i == panels { b } else { a + width * i as f64 }).collect()
    };
    match cfg.period {
        Some(period) => {
            let step = 0.5 * period;
            let full = ((b - a) / step).floor();
            if !(1.0..=1e7).contains(&full) {
                return uniform(cfg.initial_panels.max(1));
            }
            let mut edges: Vec<f64> = (0..=full as usize).map(|i| a + step * i as f64).collect();
            if b - edges[edges.len() - 1] > 1e-12 * step {
                edges.push(b);
            } else {
                *edges.last_mut().expect("nonempty") = b;
            }
            edges
        }
        None => uniform(cfg.initial_panels.max(1)),
    }
}

struct Counter<'f, F> {
    f: &'f mut F,
    evals: usize,
    budget: usize,
    a: f64,
    b: f64,
}

impl<F: FnMut(f64) -> f64> Counter<'_, F> {
    fn eval(&mut self, t: f64) -> Result<f64> {
        if self.evals >= self.budget {
            return Err(Error::QuadratureBudget { budget: self.budget, a: self.a, b: self.b });
        }
        self.evals += 1;
        let v = (self.f)(t);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFiniteIntegrand { t, value: v })
        }
    }
}

/// Neumaier-compensated running sum.
#[derive(Default)]
struct Accumulator {
    sum: f64,
    compensation: f64,
}

impl Accumulator {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}

struct Panel {
    a: f64,
    fa: f64,
    m: f64,
    fm: f64,
    b: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
}

#[inline]
fn simpson(a: f64, fa: f64, fm: f64, b: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

/// `∫_a^b f(t) dt` by the configured adaptive rule.
pub fn integrate<F>(mut f: F, a: f64, b: f64, cfg: &QuadConfig) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    if a == b {
        return Ok(0.0);
    }
    if a > b {
        return integrate(f, b, a, cfg).map(|v| -v);
    }
    let mut counter = Counter { f: &mut f, evals: 0, budget: cfg.max_evals, a, b };
    let edges = panel_edges(a, b, cfg);
    match cfg.rule {
        Rule::Simpson => simpson_adaptive(&mut counter, &edges, cfg),
        Rule::GaussKronrod => kronrod_adaptive(&mut counter, &edges, cfg),
    }
}

fn simpson_adaptive<F: FnMut(f64) -> f64>(counter: &mut Counter<'_, F>, edges: &[f64], cfg: &QuadConfig) -> Result<f64> {
    let panels = edges.len() - 1;
    let mut initial: Vec<Panel> = Vec::with_capacity(panels);
    let mut magnitude = 0.0;
    let mut f_left = counter.eval(edges[0])?;
    for w in edges.windows(2) {
        let (pa, pb) = (w[0], w[1]);
        let pm = 0.5 * (pa + pb);
        let fm = counter.eval(pm)?;
        let fb = counter.eval(pb)?;
        magnitude += simpson(pa, f_left.abs(), fm.abs(), pb, fb.abs());
        initial.push(Panel {
            a: pa,
            fa: f_left,
            m: pm,
            fm,
            b: pb,
            fb,
            whole: simpson(pa, f_left, fm, pb, fb),
            tol: 0.0,
            depth: 0,
        });
        f_left = fb;
    }
    let panel_tol = cfg.abs_tol.max(cfg.rel_tol * magnitude) / panels as f64;

    let mut acc = Accumulator::default();
    let mut stack: Vec<Panel> = Vec::with_capacity(64);
    for mut panel in initial {
        panel.tol = panel_tol;
        stack.push(panel);
        while let Some(s) = stack.pop() {
            let lm = 0.5 * (s.a + s.m);
            let rm = 0.5 * (s.m + s.b);
            let flm = counter.eval(lm)?;
            let frm = counter.eval(rm)?;
            let left = simpson(s.a, s.fa, flm, s.m, s.fm);
            let right = simpson(s.m, s.fm, frm, s.b, s.fb);
            let delta = left + right - s.whole;
            if delta.abs() <= 15.0 * s.tol || s.depth >= cfg.max_depth {
                acc.add(left + right + delta / 15.0);
            } else {
                let tol = 0.5 * s.tol;
                let depth = s.depth + 1;
                stack.push(Panel { a: s.m, fa: s.fm, m: rm, fm: frm, b: s.b, fb: s.fb, whole: right, tol, depth });
                stack.push(Panel { a: s.a, fa: s.fa, m: lm, fm: flm, b: s.m, fb: s.fm, whole: left, tol, depth });
            }
        }
    }
    Ok(acc.total())
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
/// Gauss weights at `XGK[1], XGK[3], XGK[5], XGK[7]`.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// `(K15, |K15 - G7|, ∫ |f| by K15)` on `[a, b]`.
fn kronrod<F: FnMut(f64) -> f64>(counter: &mut Counter<'_, F>, a: f64, b: f64) -> Result<(f64, f64, f64)> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = counter.eval(c)?;
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    let mut abs = WGK[7] * fc.abs();
    for j in 0..7 {
        let x = h * XGK[j];
        let (f1, f2) = (counter.eval(c - x)?, counter.eval(c + x)?);
        k += WGK[j] * (f1 + f2);
        abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            g += WG[j / 2] * (f1 + f2);
        }
    }
    Ok((k * h, ((k - g) * h).abs(), abs * h.abs()))
}

fn kronrod_adaptive<F: FnMut(f64) -> f64>(counter: &mut Counter<'_, F>, edges: &[f64], cfg: &QuadConfig) -> Result<f64> {
    let panels = edges.len() - 1;
    let mut initial = Vec::with_capacity(panels);
    let mut magnitude = 0.0;
    for w in edges.windows(2) {
        let (value, err, abs) = kronrod(counter, w[0], w[1])?;
        magnitude += abs;
        initial.push((w[0], w[1], value, err));
    }
    let panel_tol = cfg.abs_tol.max(cfg.rel_tol * magnitude) / panels as f64;

    let mut acc = Accumulator::default();
    let mut stack: Vec<(f64, f64, f64, f64, f64, u32)> = Vec::with_capacity(64);
    for (pa, pb, value, err) in initial {
        stack.push((pa, pb, value, err, panel_tol, 0));
        while let Some((a, b, value, err, tol, depth)) = stack.pop() {
            if err <= tol || depth >= cfg.max_depth {
                acc.add(value);
                continue;
            }
            let m = 0.5 * (a + b);
            let (lv, le, _) = kronrod(counter, a, m)?;
            let (rv, re, _) = kronrod(counter, m, b)?;
            stack.push((m, b, rv, re, 0.5 * tol, depth + 1));
            stack.push((a, m, lv, le, 0.5 * tol, depth + 1));
        }
    }
    Ok(acc.total())
}
