//! Matrix exponential for small dense matrices.
//!
//! Scaling-and-squaring with the order-13 Pade approximant (Higham's method),
//! with a short-circuit for nilpotent inputs where the series terminates and
//! is exact.

use nalgebra::DMatrix;

const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

/// `exp(A)` for a square matrix.
pub fn expm(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "expm requires a square matrix");

    if let Some(e) = try_nilpotent(a) {
        return e;
    }

    let norm = a.amax();
    let s = if norm > 5.4 {
        (norm / 5.4).log2().ceil() as i32
    } else {
        0
    };
    let scaled = a / 2f64.powi(s);

    let a2 = &scaled * &scaled;
    let a4 = &a2 * &a2;
    let a6 = &a2 * &a4;
    let id = DMatrix::identity(n, n);

    let u = &scaled
        * (&a6 * (PADE13[13] * &a6 + PADE13[11] * &a4 + PADE13[9] * &a2)
            + PADE13[7] * &a6
            + PADE13[5] * &a4
            + PADE13[3] * &a2
            + PADE13[1] * &id);
    let v = &a6 * (PADE13[12] * &a6 + PADE13[10] * &a4 + PADE13[8] * &a2)
        + PADE13[6] * &a6
        + PADE13[4] * &a4
        + PADE13[2] * &a2
        + PADE13[0] * &id;

    let mut r = (&v - &u)
        .lu()
        .solve(&(&v + &u))
        .expect("Pade denominator is singular");
    for _ in 0..s {
        r = &r * &r;
    }
    r
}

/// Terminating power series for nilpotent `A`; `None` if `A^k` does not
/// vanish within `k <= n`.
fn try_nilpotent(a: &DMatrix<f64>) -> Option<DMatrix<f64>> {
    let n = a.nrows();
    let scale = a.amax().max(1.0);
    let mut term = a.clone();
    let mut order = None;
    for k in 2..=n + 1 {
        term = &term * a;
        if term.amax() <= 1e-300 * scale {
            order = Some(k);
            break;
        }
    }
    let order = order?;
    let mut sum = DMatrix::identity(n, n);
    let mut pow = DMatrix::identity(n, n);
    let mut fact = 1.0;
    for k in 1..order {
        pow = &pow * a;
        fact *= k as f64;
        sum += &pow / fact;
    }
    Some(sum)
}
