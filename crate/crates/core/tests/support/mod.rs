//! Finite-difference curvature of `dt² + f(t)² g_c` in conformally flat
//! coordinates for the constant-curvature base `g_c`.

type Mat = [[f64; 4]; 4];

/// Metric `dt² + f(t)² g_c` with `g_c` the conformally flat metric of
/// constant curvature `c`, in coordinates `(t, x, y, z)`.
fn metric(f: &dyn Fn(f64) -> f64, c: f64, p: [f64; 4]) -> Mat {
    let r2 = p[1] * p[1] + p[2] * p[2] + p[3] * p[3];
    let conf = 1.0 / (1.0 + c * r2 / 4.0).powi(2);
    let w = f(p[0]).powi(2) * conf;
    let mut g = [[0.0; 4]; 4];
    g[0][0] = 1.0;
    for (i, row) in g.iter_mut().enumerate().skip(1) {
        row[i] = w;
    }
    g
}

fn shifted(p: [f64; 4], axis: usize, h: f64) -> [f64; 4] {
    let mut q = p;
    q[axis] += h;
    q
}

/// Fourth-order central difference of a tensor-valued map along `axis`.
fn d_axis<const N: usize>(g: &dyn Fn([f64; 4]) -> [f64; N], p: [f64; 4], axis: usize, h: f64) -> [f64; N] {
    let (m2, m1, p1, p2) = (g(shifted(p, axis, -2.0 * h)), g(shifted(p, axis, -h)), g(shifted(p, axis, h)), g(shifted(p, axis, 2.0 * h)));
    std::array::from_fn(|i| (m2[i] - 8.0 * m1[i] + 8.0 * p1[i] - p2[i]) / (12.0 * h))
}

fn flat(m: Mat) -> [f64; 16] {
    std::array::from_fn(|i| m[i / 4][i % 4])
}

/// Christoffel symbols `Γ^l_{jk}` flattened as `l*16 + j*4 + k`.
fn christoffel(f: &dyn Fn(f64) -> f64, c: f64, p: [f64; 4]) -> [f64; 64] {
    let g = metric(f, c, p);
    let gm = |q: [f64; 4]| flat(metric(f, c, q));
    let dg: [[f64; 16]; 4] = std::array::from_fn(|a| d_axis(&gm, p, a, 1e-4));
    let mut out = [0.0; 64];
    for l in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                // the metric is diagonal
                let inv = 1.0 / g[l][l];
                out[l * 16 + j * 4 + k] = 0.5 * inv * (dg[j][l * 4 + k] + dg[k][l * 4 + j] - dg[l][j * 4 + k]);
            }
        }
    }
    out
}

/// `R^l_{ijk}` with `R(∂_i, ∂_j)∂_k = R^l_{ijk} ∂_l` and
/// `R(X, Y) = ∇_X∇_Y − ∇_Y∇_X − ∇_{[X,Y]}`.
fn riemann(f: &dyn Fn(f64) -> f64, c: f64, p: [f64; 4], l: usize, i: usize, j: usize, k: usize) -> f64 {
    let gam = |q: [f64; 4]| christoffel(f, c, q);
    let g0 = gam(p);
    let di = d_axis(&gam, p, i, 1e-3);
    let dj = d_axis(&gam, p, j, 1e-3);
    let idx = |l: usize, j: usize, k: usize| l * 16 + j * 4 + k;
    let mut r = di[idx(l, j, k)] - dj[idx(l, i, k)];
    for m in 0..4 {
        r += g0[idx(l, i, m)] * g0[idx(m, j, k)] - g0[idx(l, j, m)] * g0[idx(m, i, k)];
    }
    r
}

/// Finite-difference versions of the four lemma components.
pub fn lemma_oracle(f: &dyn Fn(f64) -> f64, c: f64, t: f64) -> [f64; 4] {
    let p = [t, 0.0, 0.0, 0.0];
    let (tt, x, y) = (0, 1, 2);
    [riemann(f, c, p, x, tt, x, tt), riemann(f, c, p, tt, x, tt, x), riemann(f, c, p, tt, x, y, tt), riemann(f, c, p, y, x, y, x)]
}
