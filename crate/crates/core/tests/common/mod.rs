#![allow(dead_code)]

use cvgeom::fieldexpr::{Jet2, Point};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Expressions that are smooth on `[-1, 1]^3`.
pub const SMOOTH_CORPUS: [&str; 50] = [
    "3",
    "x1",
    "x1 + x2 + x3",
    "x1*x2*x3",
    "x1^2 - x2^2",
    "x1^3 + 2*x2^2*x3",
    "(x1 + x2)^4",
    "x1^2*x2^2*x3^2",
    "-x1^2",
    "-(x1 - x3)^3",
    "1/(x1 + 3)",
    "x2/(x1^2 + 1)",
    "(x1 + x2)/(x3 + 4)",
    "1/(1 + x1^2 + x2^2 + x3^2)^2",
    "exp(x1)",
    "exp(x1*x2 - x3)",
    "exp(-(x1^2 + x2^2 + x3^2))",
    "log(x1 + 2)",
    "log(1 + x1^2 + x2^2)",
    "log(exp(x1) + exp(x2))",
    "sin(x1)",
    "cos(x2*x3)",
    "sin(x1 + 2*x2 - x3)",
    "sin(x1)*cos(x2)",
    "tan(x1/2)",
    "tan(0.3*(x1 + x2))",
    "sqrt(x1 + 2)",
    "sqrt(1 + x1^2 + x2^2 + x3^2)",
    "sqrt(exp(x1) + 1)",
    "x1^0.5 + 0",
    "(x1 + 2)^1.5",
    "(x2 + 3)^(-0.5)",
    "(x1 + 2)^(x2 + 1)",
    "2^x1",
    "e^(x1*x3)",
    "pi*x1^2",
    "(1 + 0.1*(x1+x2+x3)^2)",
    "0.1*sin(x1-x2) + (1 + 0.1*(x1+x2+x3)^2)",
    "(3*(x1+x2+x3)/sqrt(3) + 10)^(-2)",
    "1/(x1+x2+x3+5)^2",
    "x1*exp(x2)*sin(x3)",
    "cos(x1)^2 + sin(x1)^2",
    "log(2 + sin(x1*x2*x3))",
    "sqrt(4 - x1^2)",
    "exp(sin(x1) + cos(x2))",
    "(x1 - 2*x2 + x3)^2/(x1^2 + 2)",
    "x3^5 - x3^4 + x3^3",
    "-(-x1)",
    "2^-x2",
    "(x1*x2 + 1)^(-3)",
];

/// `x1^0.5` needs a positive base; its corpus entry is evaluated on a shifted box.
pub fn corpus_box(expr: &str) -> ([f64; 3], [f64; 3]) {
    if expr.starts_with("x1^0.5") {
        ([0.2, -0.9, -0.9], [0.9, 0.9, 0.9])
    } else {
        ([-0.9; 3], [0.9; 3])
    }
}

pub fn random_points(seed: u64, n: usize, min: [f64; 3], max: [f64; 3]) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| Point([0, 1, 2].map(|i| rng.gen_range(min[i]..=max[i]))))
        .collect()
}

/// Largest gradient and Hessian mismatch, each scaled by `1 + |value|`.
pub fn jet_gap(ad: &Jet2, fd: &Jet2) -> (f64, f64) {
    let scale = 1.0 + ad.value.abs();
    let grad = (0..3).map(|i| (ad.grad[i] - fd.grad[i]).abs()).fold(0.0, f64::max);
    (grad / scale, ad.hess.max_abs_diff(&fd.hess) / scale)
}

/// Cofactor inverse, kept separate from the library's inversion.
pub fn inverse3(m: [[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let c = |r: usize, s: usize| {
        let (r1, r2) = ((r + 1) % 3, (r + 2) % 3);
        let (s1, s2) = ((s + 1) % 3, (s + 2) % 3);
        m[r1][s1] * m[r2][s2] - m[r1][s2] * m[r2][s1]
    };
    let det = m[0][0] * c(0, 0) + m[0][1] * c(0, 1) + m[0][2] * c(0, 2);
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = c(j, i) / det;
        }
    }
    out
}
