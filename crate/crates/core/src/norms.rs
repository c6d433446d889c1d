//! Vector norms used throughout the solvers and reports.

/// Which l_p norm to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PNorm {
    One,
    Two,
    Inf,
}

/// The l_p norm of a vector for p in {1, 2, inf}.
pub fn norm_lp(v: &[f64], p: PNorm) -> f64 {
    match p {
        PNorm::One => v.iter().map(|x| x.abs()).sum(),
        PNorm::Two => v.iter().map(|x| x * x).sum::<f64>().sqrt(),
        PNorm::Inf => v.iter().fold(0.0, |m, x| m.max(x.abs())),
    }
}
