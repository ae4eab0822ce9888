//! Reference values computed with mpmath at 30 digits, rounded to f64.

use num_complex::Complex64;
use trirays::harmonic::disk_arc_measure;
use trirays::mero::{Example1, MeroMap};
use trirays::specfun::{airy, airy_zero};

fn c(v: [f64; 2]) -> Complex64 {
    Complex64::new(v[0], v[1])
}

fn rel(got: Complex64, want: Complex64) -> f64 {
    (got - want).norm() / want.norm().max(f64::MIN_POSITIVE)
}

/// `(x, y, Ai(x + iy), Ai'(x + iy))`.
const AIRY: &[(f64, f64, [f64; 2], [f64; 2])] = &[
    (0.0, 0.0, [3.550_280_538_878_172e-1, 0.0], [-2.588194037928068e-1, 0.0]),
    (1.0, 0.0, [1.3529241631288142e-1, 0.0], [-1.591_474_412_967_932e-1, 0.0]),
    (-1.0, 0.0, [5.355_608_832_923_521e-1, 0.0], [-1.016_056_711_664_521e-2, 0.0]),
    (2.5, 0.0, [1.572592338047049e-2, 0.0], [-2.625088103590323e-2, 0.0]),
    (-7.5, 0.0, [3.217_757_163_806_479e-1, 0.0], [3.188095066985546e-1, 0.0]),
    (1.0, 1.0, [6.0458308371838149e-2, -1.518895658771814e-1], [-1.306_279_534_996_475e-1, 1.6306759644932392e-1]),
    (-2.0, 3.0, [1.9473753244266918e+1, -1.982_011_735_065_675], [-1.977_811_614_950_742e1, -2.966_040_441_207_52e1]),
    (0.5, -4.0, [3.947_733_537_975_679e-1, -4.17742371411508], [4.688_234_135_792_249, 6.840291949302087]),
    (-5.0, -5.0, [-9.034_906_596_717_632e3, 1.6279459048837544e+4], [-3.0622676872538846e+4, -3.810_625_410_599_294e4]),
    (6.0, 2.0, [4.1656511224684e-6, 1.414274739134928e-5], [-4.958_161_520_664_514e-6, -3.725_375_272_056_508e-5]),
    (3.0, 7.0, [1.2352708443541312e-1, -2.028_898_335_822_264], [-3.3079227837632376, 4.518_524_129_474_448]),
    (-9.0, 0.5, [-5.838_578_750_934_235e-2, -6.917_742_831_970_595e-1], [-2.289_683_966_109_183, 1.9727535864019886e-1]),
    (12.0, -1.0, [-1.408_497_782_283_057e-13, -5.045_787_753_706_656e-14], [4.984_060_461_538_999e-13, 1.5589372135915516e-13]),
    (-0.3, 0.2, [4.334588356835327e-1, -4.878_121_235_541_881e-2], [-2.506_421_922_367_651e-1, -2.5258710702674193e-2]),
];

const AIRY_ZEROS: &[(u64, f64)] = &[
    (1, -2.338107410459767),
    (2, -4.087_949_444_130_97),
    (3, -5.520_559_828_095_551),
    (4, -6.786708090071759),
    (5, -7.944_133_587_120_853),
    (10, -1.2828776752865757e+1),
    (20, -2.0537332907677566e+1),
    (50, -3.802_100_867_725_525e1),
    (100, -6.045_555_727_411_67e1),
    (500, -1.7700925104647921e+2),
    (10000, -1.3046284637676948e+3),
];

/// `e^{i pi/3} Ai(w z) / Ai(conj(w) z)`.
const EXAMPLE1: &[(f64, f64, [f64; 2])] = &[
    (1.0, 0.0, [9.752_007_339_304_486e-1, 2.213_222_278_523_204e-1]),
    (0.5, 2.0, [-9.979_687_919_398_309e-1, -4.668916032542184]),
    (-3.0, 1.0, [-1.0554111990198526e+1, 3.1244202981604075e+1]),
    (4.0, -4.0, [1.000_780_600_541_69, -6.848_078_252_770_363e-4]),
    (-6.0, -0.5, [-5.425_199_562_058_257e-2, 6.689303375800787e-2]),
    (2.0, 5.0, [-1.7416420049959895e+1, -2.9644864372873433e+1]),
];

/// Poisson integral of the arc `[lo, hi]` at `x + iy`.
const DISK: &[(f64, f64, f64, f64, f64)] = &[
    (0.0, 0.0, 0.0, 1.0, 1.5915494309189534e-1),
    (0.3, -0.2, 0.0, 2.0, 2.7558079670251145e-1),
    (0.5, 0.5, 1.0, 4.0, 3.2354514411739596e-1),
    (-0.7, 0.1, 2.5, 3.5, 6.233_500_489_066_623e-1),
];

#[test]
fn airy_values() {
    for &(x, y, ai, aip) in AIRY {
        let v = airy(Complex64::new(x, y)).unwrap();
        assert!(rel(v.ai, c(ai)) < 1e-11, "Ai({x}, {y}) = {} vs {ai:?}", v.ai);
        assert!(rel(v.ai_prime, c(aip)) < 1e-11, "Ai'({x}, {y}) = {} vs {aip:?}", v.ai_prime);
    }
}

#[test]
fn airy_zeros() {
    for &(k, want) in AIRY_ZEROS {
        let got = airy_zero(k).unwrap();
        assert!((got - want).abs() <= 1e-12 * want.abs(), "a_{k} = {got} vs {want}");
    }
}

#[test]
fn example_map_values() {
    for &(x, y, want) in EXAMPLE1 {
        let got = Example1.value(Complex64::new(x, y)).unwrap();
        assert!(rel(got, c(want)) < 1e-10, "f({x}, {y}) = {got} vs {want:?}");
    }
}

#[test]
fn disk_measure() {
    for &(x, y, lo, hi, want) in DISK {
        let got = disk_arc_measure(Complex64::new(x, y), lo, hi).unwrap();
        assert!((got - want).abs() < 1e-13, "{got} vs {want}");
    }
}
