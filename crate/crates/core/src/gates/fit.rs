use nalgebra::{DMatrix, DVector};

/// Outcome of a least-squares minimisation.
#[derive(Clone, Debug)]
pub(crate) struct LmOutcome {
    pub x: Vec<f64>,
    pub residual_max: f64,
}

fn jacobian<F: Fn(&[f64]) -> Vec<f64>>(f: &F, x: &[f64], m: usize) -> DMatrix<f64> {
    let n = x.len();
    let mut jac = DMatrix::zeros(m, n);
    let mut probe = x.to_vec();
    for k in 0..n {
        let h = 1e-6 * (1.0 + x[k].abs());
        probe[k] = x[k] + h;
        let plus = f(&probe);
        probe[k] = x[k] - h;
        let minus = f(&probe);
        probe[k] = x[k];
        for i in 0..m {
            jac[(i, k)] = (plus[i] - minus[i]) / (2.0 * h);
        }
    }
    jac
}

fn sq(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum()
}

/// Levenberg–Marquardt with a central-difference Jacobian.
pub(crate) fn levenberg_marquardt<F>(f: F, x0: Vec<f64>, max_iter: usize, tol: f64) -> LmOutcome
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    let mut x = x0;
    let mut r = f(&x);
    let m = r.len();
    let mut cost = sq(&r);
    let mut lambda = 1e-3;
    for _ in 0..max_iter {
        if r.iter().all(|v| v.abs() < tol) {
            break;
        }
        let jac = jacobian(&f, &x, m);
        let jt = jac.transpose();
        let jtj = &jt * &jac;
        let grad = &jt * DVector::from_column_slice(&r);
        let mut improved = false;
        while lambda < 1e12 {
            let mut a = jtj.clone();
            for k in 0..a.nrows() {
                a[(k, k)] += lambda * (jtj[(k, k)] + 1e-12);
            }
            let Some(step) = a.lu().solve(&(-&grad)) else {
                lambda *= 10.0;
                continue;
            };
            let trial: Vec<f64> = x.iter().zip(step.iter()).map(|(a, b)| a + b).collect();
            let r_trial = f(&trial);
            let c_trial = sq(&r_trial);
            if c_trial < cost {
                x = trial;
                r = r_trial;
                cost = c_trial;
                lambda = (lambda / 3.0).max(1e-15);
                improved = true;
                break;
            }
            lambda *= 4.0;
        }
        if !improved {
            break;
        }
    }
    LmOutcome {
        residual_max: r.iter().fold(0.0, |a, v| a.max(v.abs())),
        x,
    }
}
