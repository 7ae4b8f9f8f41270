//! Globally adaptive 21-point Gauss–Kronrod quadrature for vectors of complex
//! integrands.
//!
//! Error control is split by component: each real part is held to a relative
//! tolerance of itself, each imaginary part to a relative tolerance of the
//! complex magnitude, so a real part ten orders below its imaginary part is
//! still resolved.

use num_complex::Complex64;

#[allow(clippy::excessive_precision)]
mod tables {
    pub(super) const XGK: [f64; 11] = [
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

    pub(super) const WGK: [f64; 11] = [
        0.011_694_638_867_371_874_278_064_396_062_192,
        0.032_558_162_307_964_727_478_818_972_459_390,
        0.054_755_896_574_351_996_031_381_300_244_580,
        0.075_039_674_810_919_952_767_043_140_916_190,
        0.093_125_454_583_697_605_535_065_465_083_366,
        0.109_387_158_802_297_641_899_210_590_325_805,
        0.123_491_976_262_065_851_077_208_980_088_770,
        0.134_709_217_311_473_325_928_054_001_771_707,
        0.142_775_938_577_060_080_797_094_273_138_717,
        0.147_739_104_901_338_491_374_841_515_972_068,
        0.149_445_554_002_916_905_664_936_468_389_821,
    ];

    // 10-point Gauss weights for the odd-indexed Kronrod nodes.
    pub(super) const WG: [f64; 5] = [
        0.066_671_344_308_688_137_593_568_809_893_332,
        0.149_451_349_150_580_593_145_776_339_657_697,
        0.219_086_362_515_982_043_995_534_934_228_163,
        0.269_266_719_309_996_355_091_226_921_569_469,
        0.295_524_224_714_752_870_173_892_994_651_338,
    ];
}

use tables::{WG, WGK, XGK};

#[derive(Debug, Clone, Copy)]
pub(crate) struct Tolerance {
    pub rel: f64,
    pub abs: f64,
    pub max_subdivisions: usize,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Sum<const N: usize> {
    pub value: [Complex64; N],
    pub error_re: [f64; N],
    pub error_im: [f64; N],
}

impl<const N: usize> Sum<N> {
    fn zero() -> Self {
        Self {
            value: [Complex64::new(0.0, 0.0); N],
            error_re: [0.0; N],
            error_im: [0.0; N],
        }
    }

    fn add(&mut self, p: &Panel<N>) {
        for c in 0..N {
            self.value[c] += p.value[c];
            self.error_re[c] += p.error_re[c];
            self.error_im[c] += p.error_im[c];
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Estimate<const N: usize> {
    pub total: Sum<N>,
    /// One entry per input segment.
    pub segments: Vec<Sum<N>>,
    pub subdivisions: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel<const N: usize> {
    segment: usize,
    a: f64,
    b: f64,
    value: [Complex64; N],
    error_re: [f64; N],
    error_im: [f64; N],
}

// QUADPACK-style error rescaling for one real component.
fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 {
            res_asc * scale
        } else {
            res_asc
        };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

fn gauss_kronrod<const N: usize, F>(f: &F, segment: usize, a: f64, b: f64) -> Panel<N>
where
    F: Fn(usize, f64) -> [Complex64; N],
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let zero = [Complex64::new(0.0, 0.0); N];

    let mut samples = [(0.0, zero); 21];
    samples[0] = (WGK[10], f(segment, center));
    for j in 0..10 {
        let dx = half * XGK[j];
        samples[2 * j + 1] = (WGK[j], f(segment, center - dx));
        samples[2 * j + 2] = (WGK[j], f(segment, center + dx));
    }

    let mut kronrod = zero;
    let mut gauss = zero;
    // |f| integrals for the re and im parts
    let mut abs_re = [0.0; N];
    let mut abs_im = [0.0; N];
    for (idx, (w, fv)) in samples.iter().enumerate() {
        for c in 0..N {
            kronrod[c] += fv[c] * *w;
            abs_re[c] += w * fv[c].re.abs();
            abs_im[c] += w * fv[c].im.abs();
        }
        // gauss nodes are XGK[1], XGK[3], ..., XGK[9]
        if idx > 0 {
            let j = (idx - 1) / 2;
            if j % 2 == 1 {
                for c in 0..N {
                    gauss[c] += fv[c] * WG[j / 2];
                }
            }
        }
    }

    let mut error_re = [0.0; N];
    let mut error_im = [0.0; N];
    let mut value = zero;
    for c in 0..N {
        let mean = kronrod[c] * 0.5;
        let (mut asc_re, mut asc_im) = (0.0, 0.0);
        for (w, fv) in samples.iter() {
            asc_re += w * (fv[c].re - mean.re).abs();
            asc_im += w * (fv[c].im - mean.im).abs();
        }
        let h = half.abs();
        let diff = (kronrod[c] - gauss[c]) * half;
        error_re[c] = rescale_error(diff.re, abs_re[c] * h, asc_re * h);
        error_im[c] = rescale_error(diff.im, abs_im[c] * h, asc_im * h);
        value[c] = kronrod[c] * half;
    }

    Panel {
        segment,
        a,
        b,
        value,
        error_re,
        error_im,
    }
}

/// Outcome of a run that exhausted its subdivision budget.
#[derive(Debug, Clone)]
pub(crate) struct Exhausted<const N: usize>(pub Estimate<N>);

/// Integrates `f(segment, x)` over every segment, each given by its sorted
/// breakpoints. Panels from all segments compete for bisection, so the
/// tolerance applies to the grand total rather than to each segment.
pub(crate) fn integrate<const N: usize, F>(
    f: F,
    segments: &[Vec<f64>],
    tol: Tolerance,
) -> Result<Estimate<N>, Exhausted<N>>
where
    F: Fn(usize, f64) -> [Complex64; N],
{
    let mut panels: Vec<Panel<N>> = segments
        .iter()
        .enumerate()
        .flat_map(|(s, points)| {
            points
                .windows(2)
                .filter(|w| w[1] > w[0])
                .map(move |w| (s, w[0], w[1]))
        })
        .map(|(s, a, b)| gauss_kronrod(&f, s, a, b))
        .collect();
    let mut subdivisions = 0;

    loop {
        let mut total = Sum::zero();
        let mut per_segment = vec![Sum::zero(); segments.len()];
        for p in &panels {
            total.add(p);
            per_segment[p.segment].add(p);
        }
        let allowed_re: [f64; N] =
            std::array::from_fn(|c| (tol.rel * total.value[c].re.abs()).max(tol.abs));
        // imaginary parts are diagnostics: held to the complex magnitude
        let allowed_im: [f64; N] =
            std::array::from_fn(|c| (tol.rel * total.value[c].norm()).max(tol.abs));
        let converged = (0..N)
            .all(|c| total.error_re[c] <= allowed_re[c] && total.error_im[c] <= allowed_im[c]);
        if converged || subdivisions >= tol.max_subdivisions {
            let est = Estimate {
                total,
                segments: per_segment,
                subdivisions,
            };
            return if converged {
                Ok(est)
            } else {
                Err(Exhausted(est))
            };
        }

        // worst panel by its share of the most violated budget
        let score = |p: &Panel<N>| {
            (0..N)
                .map(|c| {
                    let re = if total.error_re[c] > allowed_re[c] {
                        p.error_re[c] / allowed_re[c]
                    } else {
                        0.0
                    };
                    let im = if total.error_im[c] > allowed_im[c] {
                        p.error_im[c] / allowed_im[c]
                    } else {
                        0.0
                    };
                    re.max(im)
                })
                .fold(0.0, f64::max)
        };
        let (worst, _) = panels.iter().enumerate().map(|(i, p)| (i, score(p))).fold(
            (0, f64::NEG_INFINITY),
            |acc, x| if x.1 > acc.1 { x } else { acc },
        );
        let p = panels.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        panels.push(gauss_kronrod(&f, p.segment, p.a, mid));
        panels.push(gauss_kronrod(&f, p.segment, mid, p.b));
        subdivisions += 1;
    }
}
