//! Numerical integration: adaptive Gauss–Kronrod (21 points) and
//! composite Gauss–Legendre panels, generic over the float type.

use num_traits::Float;

use crate::error::{Error, Result};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

fn c<T: Float>(x: f64) -> T {
    T::from(x).expect("float constant")
}

/// One 21-point Kronrod panel on `[a, b]`: `(integral, error estimate)`.
pub fn gk21<T: Float, F: FnMut(T) -> T>(f: &mut F, a: T, b: T) -> (T, T) {
    let half = c::<T>(0.5);
    let center = half * (a + b);
    let hlgth = half * (b - a);
    let dhlgth = hlgth.abs();

    let mut fv1 = [T::zero(); 10];
    let mut fv2 = [T::zero(); 10];
    let fc = f(center);
    let mut resg = T::zero();
    let mut resk = c::<T>(WGK[10]) * fc;
    let mut resabs = resk.abs();
    for j in 0..5 {
        let jtw = 2 * j + 1;
        let absc = hlgth * c(XGK[jtw]);
        let f1 = f(center - absc);
        let f2 = f(center + absc);
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        resg = resg + c::<T>(WG[j]) * (f1 + f2);
        resk = resk + c::<T>(WGK[jtw]) * (f1 + f2);
        resabs = resabs + c::<T>(WGK[jtw]) * (f1.abs() + f2.abs());
    }
    for j in 0..5 {
        let jtwm1 = 2 * j;
        let absc = hlgth * c(XGK[jtwm1]);
        let f1 = f(center - absc);
        let f2 = f(center + absc);
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        resk = resk + c::<T>(WGK[jtwm1]) * (f1 + f2);
        resabs = resabs + c::<T>(WGK[jtwm1]) * (f1.abs() + f2.abs());
    }
    let reskh = resk * half;
    let mut resasc = c::<T>(WGK[10]) * (fc - reskh).abs();
    for j in 0..10 {
        resasc = resasc + c::<T>(WGK[j]) * ((fv1[j] - reskh).abs() + (fv2[j] - reskh).abs());
    }
    let result = resk * hlgth;
    resabs = resabs * dhlgth;
    resasc = resasc * dhlgth;
    let mut err = ((resk - resg) * hlgth).abs();
    if resasc != T::zero() && err != T::zero() {
        let scale = (c::<T>(200.0) * err / resasc).powf(c(1.5));
        err = resasc * scale.min(T::one());
    }
    let floor = c::<T>(50.0) * T::epsilon() * resabs;
    if resabs > T::min_positive_value() / (c::<T>(50.0) * T::epsilon()) {
        err = err.max(floor);
    }
    (result, err)
}

#[derive(Debug, Clone, Copy)]
pub struct AdaptiveOptions<T> {
    pub abs_tol: T,
    pub rel_tol: T,
    /// Maximum bisection depth of any subinterval.
    pub max_depth: u32,
    pub max_intervals: usize,
}

impl<T: Float> Default for AdaptiveOptions<T> {
    fn default() -> Self {
        AdaptiveOptions { abs_tol: c(1e-10), rel_tol: c(1e-12), max_depth: 30, max_intervals: 4000 }
    }
}

impl<T: Float> AdaptiveOptions<T> {
    pub fn abs(tol: T) -> Self {
        AdaptiveOptions { abs_tol: tol, rel_tol: T::zero(), ..Self::default() }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult<T> {
    pub value: T,
    pub abs_error: T,
    pub intervals: usize,
    pub converged: bool,
}

impl<T: Float + std::fmt::LowerExp> QuadResult<T> {
    /// Turn a non-converged result into an error carrying the achieved tolerance.
    pub fn require(self, requested: T) -> Result<T> {
        if self.converged {
            Ok(self.value)
        } else {
            Err(Error::Quadrature {
                achieved: self.abs_error.to_f64().unwrap_or(f64::NAN),
                requested: requested.to_f64().unwrap_or(f64::NAN),
            })
        }
    }
}

struct Panel<T> {
    a: T,
    b: T,
    value: T,
    err: T,
    depth: u32,
}

/// Globally adaptive integration: the panel with the largest error is bisected
/// until the summed error meets `max(abs_tol, rel_tol |I|)`.
pub fn integrate<T: Float, F: FnMut(T) -> T>(mut f: F, a: T, b: T, opts: &AdaptiveOptions<T>) -> QuadResult<T> {
    let (v, e) = gk21(&mut f, a, b);
    let mut panels = vec![Panel { a, b, value: v, err: e, depth: 0 }];
    loop {
        let total: T = panels.iter().fold(T::zero(), |s, p| s + p.value);
        let err: T = panels.iter().fold(T::zero(), |s, p| s + p.err);
        let target = opts.abs_tol.max(opts.rel_tol * total.abs());
        if err <= target {
            return QuadResult { value: total, abs_error: err, intervals: panels.len(), converged: true };
        }
        let worst = panels
            .iter()
            .enumerate()
            .filter(|(_, p)| p.depth < opts.max_depth)
            .max_by(|x, y| x.1.err.partial_cmp(&y.1.err).unwrap_or(std::cmp::Ordering::Equal))
            .map(|(i, _)| i);
        let Some(i) = worst.filter(|_| panels.len() < opts.max_intervals) else {
            return QuadResult { value: total, abs_error: err, intervals: panels.len(), converged: false };
        };
        let p = panels.swap_remove(i);
        let mid = (p.a + p.b) * c(0.5);
        let (v1, e1) = gk21(&mut f, p.a, mid);
        let (v2, e2) = gk21(&mut f, mid, p.b);
        panels.push(Panel { a: p.a, b: mid, value: v1, err: e1, depth: p.depth + 1 });
        panels.push(Panel { a: mid, b: p.b, value: v2, err: e2, depth: p.depth + 1 });
    }
}

/// Gauss–Legendre rule on `[-1, 1]`, nodes ascending.
#[derive(Debug, Clone)]
pub struct GaussLegendre<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
}

impl<T: Float> GaussLegendre<T> {
    /// Nodes by Newton iteration on the Legendre three-term recurrence.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![T::zero(); n];
        let mut weights = vec![T::zero(); n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let guess = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut x: T = c(guess);
            let mut dp = T::one();
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x = x - dx;
                if dx.abs() <= T::epsilon() * c(4.0) {
                    let (_, d) = legendre(n, x);
                    dp = d;
                    break;
                }
            }
            let w = c::<T>(2.0) / ((T::one() - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = T::zero();
        }
        GaussLegendre { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes and weights mapped to `[a, b]`.
    pub fn mapped(&self, a: T, b: T) -> impl Iterator<Item = (T, T)> + '_ {
        let h = (b - a) * c(0.5);
        let m = (a + b) * c(0.5);
        self.nodes.iter().zip(&self.weights).map(move |(&x, &w)| (m + h * x, h * w))
    }

    pub fn integrate<F: FnMut(T) -> T>(&self, mut f: F, a: T, b: T) -> T {
        self.mapped(a, b).fold(T::zero(), |s, (x, w)| s + w * f(x))
    }

    /// Nodes and weights of the composite rule over consecutive `edges`.
    pub fn composite(&self, edges: &[T]) -> (Vec<T>, Vec<T>) {
        let mut xs = Vec::with_capacity(edges.len().saturating_sub(1) * self.len());
        let mut ws = Vec::with_capacity(xs.capacity());
        for e in edges.windows(2) {
            for (x, w) in self.mapped(e[0], e[1]) {
                xs.push(x);
                ws.push(w);
            }
        }
        (xs, ws)
    }
}

/// `(P_n(x), P_n'(x))`.
fn legendre<T: Float>(n: usize, x: T) -> (T, T) {
    let mut p0 = T::one();
    let mut p1 = x;
    if n == 0 {
        return (T::one(), T::zero());
    }
    for k in 2..=n {
        let kf: T = c(k as f64);
        let p2 = ((c::<T>(2.0) * kf - T::one()) * x * p1 - (kf - T::one()) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf: T = c(n as f64);
    let d = nf * (x * p1 - p0) / (x * x - T::one());
    (p1, d)
}
