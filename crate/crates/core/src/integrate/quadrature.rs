//! Adaptive 7/15-point Gauss–Kronrod quadrature for complex-valued integrands
//! on real intervals.

#![allow(clippy::excessive_precision)]

use crate::Point;

// Kronrod abscissae on [0, 1] of the symmetric 15-point rule, outermost first;
// odd indices (and the centre) are the 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// One application of the rule pair.
#[derive(Debug, Clone, Copy)]
pub struct RulePair {
    pub kronrod: Point,
    pub gauss: Point,
    /// `∫|g|` by the Kronrod rule, used for the round-off floor.
    pub abs: f64,
}

pub fn gauss_kronrod<F, E>(g: &F, lo: f64, hi: f64) -> Result<RulePair, E>
where
    F: Fn(f64) -> Result<Point, E>,
{
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = g(center)?;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs = fc.norm() * WGK[7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = g(center - dx)?;
        let f2 = g(center + dx)?;
        let sum = f1 + f2;
        kronrod += sum * WGK[j];
        abs += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += sum * WG[j / 2];
        }
    }
    Ok(RulePair {
        kronrod: kronrod * half,
        gauss: gauss * half,
        abs: abs * half.abs(),
    })
}

/// Evaluations per rule application.
pub const RULE_POINTS: usize = 15;

/// Result of adaptive integration over one interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Adaptive {
    pub value: Point,
    pub error: f64,
    pub evaluations: usize,
}

/// Why adaptive integration stopped.
#[derive(Debug, Clone, PartialEq)]
pub enum AdaptiveError<E> {
    Integrand(E),
    /// The bisection cap was hit; carries the offending local estimate.
    DepthExceeded {
        estimate: f64,
    },
}

/// Integrates `g` over `[lo, hi]` to absolute tolerance `tol`.
///
/// An interval is accepted when `|K15 - G7|` is within its share of `tol`
/// (proportional to its length) or at the round-off floor
/// `50·ε_mach·∫|g|`; otherwise it is bisected, at most `max_depth` times.
pub fn integrate_adaptive<F, E>(g: &F, lo: f64, hi: f64, tol: f64, max_depth: u32) -> Result<Adaptive, AdaptiveError<E>>
where
    F: Fn(f64) -> Result<Point, E>,
{
    let density = tol / (hi - lo);
    let mut total = Adaptive {
        value: Point::new(0.0, 0.0),
        error: 0.0,
        evaluations: 0,
    };
    // Depth-first, left to right, so the summation order is fixed.
    let mut stack = vec![(lo, hi, 0u32)];
    while let Some((a, b, depth)) = stack.pop() {
        let pair = gauss_kronrod(g, a, b).map_err(AdaptiveError::Integrand)?;
        total.evaluations += RULE_POINTS;
        let estimate = (pair.kronrod - pair.gauss).norm();
        let allowed = density * (b - a);
        if estimate <= allowed || estimate <= 50.0 * f64::EPSILON * pair.abs {
            total.value += pair.kronrod;
            total.error += estimate;
        } else if depth >= max_depth {
            return Err(AdaptiveError::DepthExceeded { estimate });
        } else {
            let mid = 0.5 * (a + b);
            stack.push((mid, b, depth + 1));
            stack.push((a, mid, depth + 1));
        }
    }
    Ok(total)
}
