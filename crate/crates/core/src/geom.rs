//! Exact computational geometry over rational coordinates: squared
//! distances between points and segments, segment contact classification,
//! and quantitative affine-rank tests (smallest singular value).

use crate::rat::{rat_to_f64, Rat};
use num_traits::Zero;

pub fn sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Squared Euclidean distance between rational points.
pub fn dist_sq(a: &[Rat], b: &[Rat]) -> Rat {
    let d = sub(a, b);
    dot(&d, &d)
}

fn lerp(a: &[Rat], b: &[Rat], t: &Rat) -> Vec<Rat> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x + t * (y - x))
        .collect()
}

fn clamp01(t: Rat) -> Rat {
    if t < Rat::zero() {
        Rat::zero()
    } else if t > Rat::from_integer(1.into()) {
        Rat::from_integer(1.into())
    } else {
        t
    }
}

/// Exact squared distance from point `p` to segment `[a, b]`.
pub fn point_segment_dist_sq(p: &[Rat], a: &[Rat], b: &[Rat]) -> Rat {
    let u = sub(b, a);
    let uu = dot(&u, &u);
    if uu.is_zero() {
        return dist_sq(p, a);
    }
    let t = clamp01(dot(&sub(p, a), &u) / uu);
    dist_sq(p, &lerp(a, b, &t))
}

/// Exact squared distance between segments `[a, b]` and `[c, d]`.
///
/// Minimizes the quadratic |(a + s u) - (c + t v)|^2 over the unit square:
/// the interior stationary point (when the 2x2 Gram system is nonsingular)
/// and the four clamped edge minimizers are all candidates.
pub fn segment_segment_dist_sq(a: &[Rat], b: &[Rat], c: &[Rat], d: &[Rat]) -> Rat {
    let u = sub(b, a);
    let v = sub(d, c);
    let w = sub(a, c);
    let uu = dot(&u, &u);
    let vv = dot(&v, &v);
    let uv = dot(&u, &v);
    let det = &uu * &vv - &uv * &uv;

    let mut best: Option<Rat> = None;
    let mut consider = |s: Rat, t: Rat| {
        let p = lerp(a, b, &s);
        let q = lerp(c, d, &t);
        let dd = dist_sq(&p, &q);
        if best.as_ref().map_or(true, |b| dd < *b) {
            best = Some(dd);
        }
    };

    if !det.is_zero() {
        // Unconstrained minimizer of the quadratic.
        let wu = dot(&w, &u);
        let wv = dot(&w, &v);
        let s = (&uv * &wv - &vv * &wu) / &det;
        let t = (&uu * &wv - &uv * &wu) / &det;
        if s >= Rat::zero()
            && s <= Rat::from_integer(1.into())
            && t >= Rat::zero()
            && t <= Rat::from_integer(1.into())
        {
            consider(s, t);
        }
    }

    // Edge cases: one parameter pinned to an endpoint, other clamped.
    let edge = |p: &[Rat], e0: &[Rat], e1: &[Rat]| -> Rat {
        point_segment_dist_sq(p, e0, e1)
    };
    let mut best2 = edge(a, c, d);
    for cand in [edge(b, c, d), edge(c, a, b), edge(d, a, b)] {
        if cand < best2 {
            best2 = cand;
        }
    }
    if best.as_ref().map_or(true, |b| best2 < *b) {
        best = Some(best2);
    }
    best.unwrap()
}

/// How two closed segments touch each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegmentContact {
    /// Positive distance.
    Disjoint,
    /// They intersect exactly in one point which is an endpoint of both.
    SharedEndpoint,
    /// Any other nonempty intersection (a transversal crossing, an endpoint
    /// in the interior of the other segment, or a collinear overlap).
    Crossing,
}

/// Exact contact classification, used by renderers and injectivity checks.
pub fn classify_segments(a: &[Rat], b: &[Rat], c: &[Rat], d: &[Rat]) -> SegmentContact {
    let dsq = segment_segment_dist_sq(a, b, c, d);
    if !dsq.is_zero() {
        return SegmentContact::Disjoint;
    }
    let shared_pairs = [(a, c), (a, d), (b, c), (b, d)];
    let mut shared: Option<&[Rat]> = None;
    for (p, q) in shared_pairs {
        if p == q {
            if shared.is_some() {
                // Two shared endpoints: identical or fully overlapping segments.
                return SegmentContact::Crossing;
            }
            shared = Some(p);
        }
    }
    let Some(s) = shared else {
        return SegmentContact::Crossing;
    };
    // Touching at a shared endpoint: a crossing remains only if one segment
    // continues through the other, i.e. a non-shared endpoint lies on the
    // other segment, or the segments overlap collinearly beyond the shared
    // point. Both reduce to point-on-segment tests for non-shared endpoints.
    let other_a: &[Rat] = if a == s { b } else { a };
    let other_c: &[Rat] = if c == s { d } else { c };
    if point_segment_dist_sq(other_a, c, d).is_zero()
        || point_segment_dist_sq(other_c, a, b).is_zero()
    {
        return SegmentContact::Crossing;
    }
    SegmentContact::SharedEndpoint
}

/// Smallest singular value of the (rows x cols) difference matrix, as f64.
///
/// Rows up to 3 use closed-form symmetric eigenvalues of the Gram matrix;
/// larger matrices fall back to a dense SVD.
pub fn sigma_min(rows: &[Vec<f64>]) -> f64 {
    let m = rows.len();
    if m == 0 {
        return f64::INFINITY;
    }
    let n = rows[0].len();
    if m > n {
        // More rows than ambient dimension: rank deficiency is certain.
        return 0.0;
    }
    match m {
        1 => rows[0].iter().map(|x| x * x).sum::<f64>().sqrt(),
        2 => {
            let a = dot_f(&rows[0], &rows[0]);
            let b = dot_f(&rows[0], &rows[1]);
            let c = dot_f(&rows[1], &rows[1]);
            let tr = a + c;
            let disc = ((a - c) * (a - c) + 4.0 * b * b).max(0.0).sqrt();
            let lam_min = 0.5 * (tr - disc);
            lam_min.max(0.0).sqrt()
        }
        3 => sym3_min_eigenvalue(rows).max(0.0).sqrt(),
        _ => {
            let mat = nalgebra::DMatrix::from_fn(m, n, |i, j| rows[i][j]);
            let svd = mat.svd(false, false);
            svd.singular_values
                .iter()
                .cloned()
                .fold(f64::INFINITY, f64::min)
        }
    }
}

fn dot_f(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Minimal eigenvalue of the 3x3 Gram matrix of three row vectors
/// (trigonometric closed form for symmetric 3x3 matrices).
fn sym3_min_eigenvalue(rows: &[Vec<f64>]) -> f64 {
    let mut g = [[0.0f64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            g[i][j] = dot_f(&rows[i], &rows[j]);
        }
    }
    let p1 = g[0][1] * g[0][1] + g[0][2] * g[0][2] + g[1][2] * g[1][2];
    let q = (g[0][0] + g[1][1] + g[2][2]) / 3.0;
    if p1 == 0.0 {
        return g[0][0].min(g[1][1]).min(g[2][2]);
    }
    let p2 = (g[0][0] - q).powi(2) + (g[1][1] - q).powi(2) + (g[2][2] - q).powi(2) + 2.0 * p1;
    let p = (p2 / 6.0).sqrt();
    if p == 0.0 {
        return q;
    }
    let mut bmat = [[0.0f64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            bmat[i][j] = (g[i][j] - if i == j { q } else { 0.0 }) / p;
        }
    }
    let detb = bmat[0][0] * (bmat[1][1] * bmat[2][2] - bmat[1][2] * bmat[2][1])
        - bmat[0][1] * (bmat[1][0] * bmat[2][2] - bmat[1][2] * bmat[2][0])
        + bmat[0][2] * (bmat[1][0] * bmat[2][1] - bmat[1][1] * bmat[2][0]);
    let r = (detb / 2.0).clamp(-1.0, 1.0);
    let phi = r.acos() / 3.0;
    // Smallest eigenvalue uses phi + 2*pi/3.
    q + 2.0 * p * (phi + 2.0 * std::f64::consts::FRAC_PI_3).cos()
}

/// Convert rational coordinates to f64 for numeric rank tests.
pub fn coords_to_f64(p: &[Rat]) -> Vec<f64> {
    p.iter().map(rat_to_f64).collect()
}
