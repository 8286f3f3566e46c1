//! Walsh-Hadamard and nega-Hadamard spectra of a few small functions.

use negabent::spectra::{negaperiodic_acf, SpectrumSummary};
use negabent::{nega, walsh, BooleanFunction};

fn describe(name: &str, f: &BooleanFunction) {
    let s = SpectrumSummary::of(f);
    println!("{name}: degree {:?}, bent {}, negabent {}", f.degree(), s.bent, s.negabent);
}

fn main() {
    let inner = BooleanFunction::from_fn(4, |x| ((x & 1) & (x >> 2) ^ (x >> 1) & (x >> 3)) & 1 == 1);
    describe("x1x3 + x2x4", &inner);
    println!("  walsh {:?}", walsh(&inner).values);

    describe("zero", &BooleanFunction::zero(4));
    let nh = nega(&BooleanFunction::zero(4));
    println!("  |nega|^2 = {:?}", (0..16).map(|l| nh.abs_sq(l)).collect::<Vec<_>>());

    // negabent exactly when every nonzero shift has zero negaperiodic autocorrelation
    let f = BooleanFunction::from_fn(4, |x| x.count_ones() >= 2);
    let acf = negaperiodic_acf(&f);
    describe("weight at least two", &f);
    println!("  negaperiodic acf {acf:?}");
}
