//! Finite simplicial complexes of dimension <= d with exact rational
//! geometric realizations, piecewise-linear maps, barycentric subdivision
//! and deterministic mesh generation.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::geom::dist_sq;
use crate::rat::{ceil_sqrt_int, Rat};

#[derive(Debug, Error)]
pub enum ComplexError {
    #[error("point-not-in-complex: {0}")]
    PointNotInComplex(String),
    #[error("bad-simplex: {0}")]
    BadSimplex(String),
    #[error("bad-point: {0}")]
    BadPoint(String),
    #[error("closure-failure: {0}")]
    ClosureFailure(String),
}

/// A finite abstract simplicial complex together with a geometric
/// realization: rational vertex coordinates in some R^N, and a downward
/// closed family of sorted vertex-index tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<Vec<Rat>>,
    simplices: BTreeSet<Vec<usize>>,
    dim: usize,
}

impl SimplicialComplex {
    /// Builds a complex from vertex coordinates and a generating family of
    /// simplices. The family is closed downward automatically; every vertex
    /// is added as a 0-simplex.
    pub fn new(
        vertices: Vec<Vec<Rat>>,
        simplices: impl IntoIterator<Item = Vec<usize>>,
    ) -> Result<Self, ComplexError> {
        if vertices.is_empty() {
            return Err(ComplexError::BadSimplex("complex needs at least one vertex".into()));
        }
        let ambient = vertices[0].len();
        if vertices.iter().any(|v| v.len() != ambient) {
            return Err(ComplexError::BadSimplex(
                "inconsistent ambient dimensions".into(),
            ));
        }
        let mut set: BTreeSet<Vec<usize>> = BTreeSet::new();
        for i in 0..vertices.len() {
            set.insert(vec![i]);
        }
        for mut s in simplices {
            s.sort_unstable();
            let before = s.len();
            s.dedup();
            if s.len() != before {
                return Err(ComplexError::BadSimplex(format!(
                    "repeated vertex in simplex {s:?}"
                )));
            }
            if s.iter().any(|&i| i >= vertices.len()) {
                return Err(ComplexError::BadSimplex(format!(
                    "vertex index out of range in {s:?}"
                )));
            }
            // Downward closure by subset enumeration (simplices are tiny).
            let k = s.len();
            for mask in 1u32..(1 << k) {
                let face: Vec<usize> = (0..k).filter(|&j| mask & (1 << j) != 0).map(|j| s[j]).collect();
                set.insert(face);
            }
        }
        let dim = set.iter().map(|s| s.len() - 1).max().unwrap_or(0);
        let complex = SimplicialComplex {
            vertices,
            simplices: set,
            dim,
        };
        complex.check_nondegenerate()?;
        Ok(complex)
    }

    /// Each simplex must be realized with affinely independent vertices,
    /// otherwise barycentric coordinates are not well defined.
    fn check_nondegenerate(&self) -> Result<(), ComplexError> {
        for s in self.maximal_simplices() {
            if s.len() < 2 {
                continue;
            }
            let base = &self.vertices[s[0]];
            let rows: Vec<Vec<Rat>> = s[1..]
                .iter()
                .map(|&i| crate::geom::sub(&self.vertices[i], base))
                .collect();
            if exact_rank(&rows) != rows.len() {
                return Err(ComplexError::BadSimplex(format!(
                    "degenerate simplex {s:?}: vertices are affinely dependent"
                )));
            }
        }
        Ok(())
    }

    /// Strict closure check used by the JSON interface: every face of every
    /// listed simplex of dimension >= 1 must itself be listed (0-simplices
    /// are implicit).
    pub fn check_closure_listed(
        vertex_count: usize,
        listed: &[Vec<usize>],
    ) -> Result<(), ComplexError> {
        let mut set: BTreeSet<Vec<usize>> = BTreeSet::new();
        for s in listed {
            let mut t = s.clone();
            t.sort_unstable();
            if t.iter().any(|&i| i >= vertex_count) {
                return Err(ComplexError::BadSimplex(format!(
                    "vertex index out of range in {s:?}"
                )));
            }
            set.insert(t);
        }
        for s in &set {
            if s.len() < 3 {
                continue;
            }
            for drop in 0..s.len() {
                let face: Vec<usize> = s
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != drop)
                    .map(|(_, &v)| v)
                    .collect();
                if !set.contains(&face) {
                    return Err(ComplexError::ClosureFailure(format!(
                        "face {face:?} of {s:?} is missing"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex(&self, i: usize) -> &[Rat] {
        &self.vertices[i]
    }

    pub fn ambient_dim(&self) -> usize {
        self.vertices[0].len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn simplices(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.simplices.iter()
    }

    pub fn contains_simplex(&self, s: &[usize]) -> bool {
        self.simplices.contains(s)
    }

    /// 1-simplices in deterministic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.simplices
            .iter()
            .filter(|s| s.len() == 2)
            .map(|s| (s[0], s[1]))
            .collect()
    }

    pub fn maximal_simplices(&self) -> Vec<Vec<usize>> {
        self.simplices
            .iter()
            .filter(|s| {
                !self
                    .simplices
                    .iter()
                    .any(|t| t.len() > s.len() && s.iter().all(|v| t.contains(v)))
            })
            .cloned()
            .collect()
    }

    /// Squared diameter of the realization (max over vertex pairs; the
    /// realization is a union of convex simplices so the max is attained
    /// at vertices).
    pub fn diameter_sq(&self) -> Rat {
        let mut best = Rat::zero();
        for i in 0..self.vertices.len() {
            for j in (i + 1)..self.vertices.len() {
                let d = dist_sq(&self.vertices[i], &self.vertices[j]);
                if d > best {
                    best = d;
                }
            }
        }
        best
    }

    /// Realization coordinates of a point.
    pub fn realize(&self, p: &ComplexPoint) -> Result<Vec<Rat>, ComplexError> {
        if !self.simplices.contains(&p.simplex) {
            return Err(ComplexError::PointNotInComplex(format!(
                "support {:?} is not a simplex of the complex",
                p.simplex
            )));
        }
        let mut coords = vec![Rat::zero(); self.ambient_dim()];
        for (idx, w) in p.simplex.iter().zip(&p.barycentric) {
            for (c, v) in coords.iter_mut().zip(&self.vertices[*idx]) {
                *c += w * v;
            }
        }
        Ok(coords)
    }

    /// Locates rational coordinates in the complex: scans simplices in
    /// lexicographic order and returns the point in the first (hence
    /// lexicographically smallest) containing simplex, canonicalized to its
    /// support face. Deterministic by construction.
    pub fn locate(&self, coords: &[Rat]) -> Result<ComplexPoint, ComplexError> {
        if coords.len() != self.ambient_dim() {
            return Err(ComplexError::BadPoint(format!(
                "coordinate dimension {} does not match ambient {}",
                coords.len(),
                self.ambient_dim()
            )));
        }
        for s in &self.simplices {
            // Cheap bounding-box rejection before the exact solve.
            let mut outside = false;
            for axis in 0..coords.len() {
                let mut lo = &self.vertices[s[0]][axis];
                let mut hi = lo;
                for &v in &s[1..] {
                    let c = &self.vertices[v][axis];
                    if c < lo {
                        lo = c;
                    }
                    if c > hi {
                        hi = c;
                    }
                }
                if coords[axis] < *lo || coords[axis] > *hi {
                    outside = true;
                    break;
                }
            }
            if outside {
                continue;
            }
            let verts: Vec<&[Rat]> = s.iter().map(|&i| self.vertex(i)).collect();
            if let Some(bary) = solve_barycentric(&verts, coords) {
                if bary.iter().all(|w| !w.is_negative()) {
                    return ComplexPoint::new(s.clone(), bary);
                }
            }
        }
        Err(ComplexError::PointNotInComplex(format!(
            "coordinates {:?} lie in no simplex",
            coords.iter().map(crate::rat::fmt_rat).collect::<Vec<_>>()
        )))
    }

    /// Standard barycentric subdivision, iterated `rounds` times. The
    /// realization is unchanged as a set; every simplex diameter shrinks by
    /// a factor <= d/(d+1) per round.
    pub fn barycentric_subdivide(&self, rounds: usize) -> SimplicialComplex {
        let mut current = self.clone();
        for _ in 0..rounds {
            current = current.subdivide_once();
        }
        current
    }

    fn subdivide_once(&self) -> SimplicialComplex {
        // One new vertex per simplex, at its barycenter.
        let mut index_of: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let mut vertices: Vec<Vec<Rat>> = Vec::new();
        for s in &self.simplices {
            let k = Rat::from_integer((s.len() as i64).into());
            let mut coords = vec![Rat::zero(); self.ambient_dim()];
            for &v in s {
                for (c, x) in coords.iter_mut().zip(&self.vertices[v]) {
                    *c += x;
                }
            }
            for c in coords.iter_mut() {
                *c /= &k;
            }
            index_of.insert(s.clone(), vertices.len());
            vertices.push(coords);
        }
        // Simplices: flags of strictly nested faces; maximal flags of the
        // maximal simplices generate everything (constructor closes down).
        let mut generators: Vec<Vec<usize>> = Vec::new();
        for top in self.maximal_simplices() {
            let mut flag: Vec<Vec<usize>> = Vec::new();
            build_flags(&top, &mut flag, &mut |chain| {
                generators.push(chain.iter().map(|f| index_of[f]).collect());
            });
        }
        SimplicialComplex::new(vertices, generators)
            .expect("subdivision of a valid complex is valid")
    }

    /// Deterministic mesh with covering radius <= h in the realization's
    /// intrinsic metric. Every vertex is included. Granularities are powers
    /// of two so meshes at pitches h and h/2 are nested.
    pub fn mesh_points(&self, h: &Rat) -> Vec<ComplexPoint> {
        assert!(h.is_positive(), "mesh pitch must be positive");
        let mut out: BTreeSet<ComplexPoint> = BTreeSet::new();
        for i in 0..self.vertices.len() {
            out.insert(ComplexPoint::vertex(i));
        }
        let h_sq = h * h;
        for s in self.maximal_simplices() {
            if s.len() < 2 {
                continue;
            }
            let mut d_sq = Rat::zero();
            for a in 0..s.len() {
                for b in (a + 1)..s.len() {
                    let d = dist_sq(&self.vertices[s[a]], &self.vertices[s[b]]);
                    if d > d_sq {
                        d_sq = d;
                    }
                }
            }
            // Splitting into s^k cells of diameter D/s bounds the covering
            // radius by D/s <= h; round up to a power of two for nesting.
            let s_needed = ceil_sqrt_int(&(&d_sq / &h_sq));
            let gran = s_needed.next_power_of_two();
            for comp in compositions(gran, s.len()) {
                let bary: Vec<Rat> = comp
                    .iter()
                    .map(|&a| Rat::new((a as i64).into(), (gran as i64).into()))
                    .collect();
                let p = ComplexPoint::new(s.clone(), bary).expect("lattice point is valid");
                out.insert(p);
            }
        }
        out.into_iter().collect()
    }
}

fn build_flags<F: FnMut(&[Vec<usize>])>(top: &[usize], flag: &mut Vec<Vec<usize>>, emit: &mut F) {
    // Chains sigma_0 < sigma_1 < ... = top, built by peeling one vertex at
    // a time; each ordering of the vertices yields one maximal flag.
    flag.push(top.to_vec());
    if top.len() == 1 {
        emit(flag);
    } else {
        for drop in 0..top.len() {
            let face: Vec<usize> = top
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != drop)
                .map(|(_, &v)| v)
                .collect();
            build_flags(&face, flag, emit);
        }
    }
    flag.pop();
}

/// All k-tuples of nonnegative integers summing to `total`.
fn compositions(total: u64, parts: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = vec![0u64; parts];
    fn rec(total: u64, idx: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if idx + 1 == cur.len() {
            cur[idx] = total;
            out.push(cur.clone());
            return;
        }
        for a in 0..=total {
            cur[idx] = a;
            rec(total - a, idx + 1, cur, out);
        }
    }
    rec(total, 0, &mut cur, &mut out);
    out
}

/// Exact rank of a small rational matrix (rows).
fn exact_rank(rows: &[Vec<Rat>]) -> usize {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let mut rank = 0;
    let cols = m.first().map_or(0, |r| r.len());
    let mut col = 0;
    while rank < m.len() && col < cols {
        if let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) {
            m.swap(rank, pivot);
            let pv = m[rank][col].clone();
            for r in (rank + 1)..m.len() {
                if m[r][col].is_zero() {
                    continue;
                }
                let factor = &m[r][col] / &pv;
                for c in col..cols {
                    let sub = &factor * &m[rank][c];
                    m[r][c] = &m[r][c] - &sub;
                }
            }
            rank += 1;
        }
        col += 1;
    }
    rank
}

/// Solves `sum w_i v_i = p`, `sum w_i = 1` exactly. Returns `None` when the
/// system is inconsistent (point outside the affine span).
fn solve_barycentric(verts: &[&[Rat]], p: &[Rat]) -> Option<Vec<Rat>> {
    let k = verts.len();
    let n = p.len();
    // Augmented (n+1) x (k+1) system.
    let mut m: Vec<Vec<Rat>> = Vec::with_capacity(n + 1);
    for row in 0..n {
        let mut r: Vec<Rat> = verts.iter().map(|v| v[row].clone()).collect();
        r.push(p[row].clone());
        m.push(r);
    }
    let mut last = vec![Rat::one(); k];
    last.push(Rat::one());
    m.push(last);

    let rows = m.len();
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..k {
        if let Some(pr) = (rank..rows).find(|&r| !m[r][col].is_zero()) {
            m.swap(rank, pr);
            let pv = m[rank][col].clone();
            for c in col..=k {
                m[rank][c] = &m[rank][c] / &pv;
            }
            for r in 0..rows {
                if r != rank && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in col..=k {
                        let sub = &f * &m[rank][c];
                        m[r][c] = &m[r][c] - &sub;
                    }
                }
            }
            pivot_cols.push(col);
            rank += 1;
        }
    }
    // Inconsistent if a zero row has nonzero RHS.
    for r in rank..rows {
        if !m[r][k].is_zero() {
            return None;
        }
    }
    // Affinely independent vertices give a unique solution; free columns
    // would mean degeneracy, which constructors reject.
    if rank != k {
        return None;
    }
    let mut w = vec![Rat::zero(); k];
    for (r, &col) in pivot_cols.iter().enumerate() {
        w[col] = m[r][k].clone();
    }
    Some(w)
}

/// A point of a complex: a support simplex and strictly positive rational
/// barycentric coordinates summing to one. Inputs may carry zero weights
/// (points on faces); they are canonicalized to the support face, so points
/// on shared faces compare equal regardless of which simplex produced them.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ComplexPoint {
    simplex: Vec<usize>,
    barycentric: Vec<Rat>,
}

impl ComplexPoint {
    pub fn new(simplex: Vec<usize>, barycentric: Vec<Rat>) -> Result<Self, ComplexError> {
        if simplex.len() != barycentric.len() {
            return Err(ComplexError::BadPoint(
                "weight count does not match simplex".into(),
            ));
        }
        if simplex.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ComplexError::BadPoint("simplex tuple not sorted".into()));
        }
        if barycentric.iter().any(|w| w.is_negative()) {
            return Err(ComplexError::BadPoint(
                "negative barycentric coordinate".into(),
            ));
        }
        let total: Rat = barycentric.iter().sum();
        if !total.is_one() {
            return Err(ComplexError::BadPoint(
                "barycentric coordinates must sum exactly to 1".into(),
            ));
        }
        // Canonicalize to the support face.
        let mut s = Vec::new();
        let mut b = Vec::new();
        for (idx, w) in simplex.into_iter().zip(barycentric) {
            if !w.is_zero() {
                s.push(idx);
                b.push(w);
            }
        }
        Ok(ComplexPoint {
            simplex: s,
            barycentric: b,
        })
    }

    pub fn vertex(i: usize) -> Self {
        ComplexPoint {
            simplex: vec![i],
            barycentric: vec![Rat::one()],
        }
    }

    /// Point at parameter `t` from `u` along the edge `[u, v]` (t in [0,1]).
    pub fn on_edge(u: usize, v: usize, t: Rat) -> Result<Self, ComplexError> {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        let (wu, wv) = if u < v {
            (Rat::one() - &t, t)
        } else {
            (t.clone(), Rat::one() - &t)
        };
        ComplexPoint::new(vec![a, b], vec![wu, wv])
    }

    pub fn simplex(&self) -> &[usize] {
        &self.simplex
    }

    pub fn barycentric(&self) -> &[Rat] {
        &self.barycentric
    }

    pub fn is_vertex(&self) -> Option<usize> {
        (self.simplex.len() == 1).then(|| self.simplex[0])
    }
}

use num_traits::Signed;

/// A piecewise-linear map: affine on each simplex of a subdivision of its
/// source, determined by rational images of the subdivision's vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PLMap {
    source: SimplicialComplex,
    domain: SimplicialComplex,
    target_dim: usize,
    images: Vec<Vec<Rat>>,
}

impl PLMap {
    /// `domain` must be a subdivision of `source` (same realization). The
    /// constructor verifies the cheap half of that contract: every domain
    /// vertex lies inside the source realization.
    pub fn new(
        source: SimplicialComplex,
        domain: SimplicialComplex,
        target_dim: usize,
        images: Vec<Vec<Rat>>,
    ) -> Result<Self, ComplexError> {
        if images.len() != domain.vertex_count() {
            return Err(ComplexError::BadSimplex(format!(
                "need one image per domain vertex ({} vs {})",
                images.len(),
                domain.vertex_count()
            )));
        }
        if images.iter().any(|p| p.len() != target_dim) {
            return Err(ComplexError::BadSimplex(
                "image dimension mismatch".into(),
            ));
        }
        if source != domain {
            for i in 0..domain.vertex_count() {
                source.locate(domain.vertex(i)).map_err(|_| {
                    ComplexError::BadSimplex(format!(
                        "domain vertex {i} lies outside the source realization"
                    ))
                })?;
            }
        }
        Ok(PLMap {
            source,
            domain,
            target_dim,
            images,
        })
    }

    /// The identity map of a realized complex.
    pub fn identity(k: &SimplicialComplex) -> Self {
        let images = (0..k.vertex_count()).map(|i| k.vertex(i).to_vec()).collect();
        PLMap {
            source: k.clone(),
            domain: k.clone(),
            target_dim: k.ambient_dim(),
            images,
        }
    }

    /// The constant map onto a single target point.
    pub fn constant(k: &SimplicialComplex, value: Vec<Rat>) -> Self {
        let target_dim = value.len();
        let images = vec![value; k.vertex_count()];
        PLMap {
            source: k.clone(),
            domain: k.clone(),
            target_dim,
            images,
        }
    }

    pub fn source(&self) -> &SimplicialComplex {
        &self.source
    }

    pub fn domain(&self) -> &SimplicialComplex {
        &self.domain
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn images(&self) -> &[Vec<Rat>] {
        &self.images
    }

    /// Replaces every vertex image (same domain).
    pub fn with_images(&self, images: Vec<Vec<Rat>>) -> Result<Self, ComplexError> {
        PLMap::new(
            self.source.clone(),
            self.domain.clone(),
            self.target_dim,
            images,
        )
    }

    /// Evaluates the map at a point of the source complex.
    pub fn evaluate(&self, x: &ComplexPoint) -> Result<Vec<Rat>, ComplexError> {
        let coords = self.source.realize(x)?;
        self.evaluate_coords(&coords)
    }

    /// Evaluates at realization coordinates (located in the domain
    /// subdivision first).
    pub fn evaluate_coords(&self, coords: &[Rat]) -> Result<Vec<Rat>, ComplexError> {
        let located = self.domain.locate(coords)?;
        let mut out = vec![Rat::zero(); self.target_dim];
        for (idx, w) in located.simplex.iter().zip(&located.barycentric) {
            for (o, img) in out.iter_mut().zip(&self.images[*idx]) {
                *o += w * img;
            }
        }
        Ok(out)
    }

    /// Image segments of the domain's 1-simplices, for exact separation and
    /// injectivity bookkeeping. Returns (endpoint indices, image pair).
    pub fn image_segments(&self) -> Vec<((usize, usize), (&[Rat], &[Rat]))> {
        self.domain
            .edges()
            .into_iter()
            .map(|(u, v)| ((u, v), (self.images[u].as_slice(), self.images[v].as_slice())))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rint};
    use rand::{Rng, SeedableRng};

    fn unit_segment() -> SimplicialComplex {
        SimplicialComplex::new(
            vec![vec![rint(0)], vec![rint(1)]],
            vec![vec![0, 1]],
        )
        .unwrap()
    }

    fn triangle_2d() -> SimplicialComplex {
        SimplicialComplex::new(
            vec![
                vec![rint(0), rint(0)],
                vec![rint(1), rint(0)],
                vec![rint(0), rint(1)],
            ],
            vec![vec![0, 1, 2]],
        )
        .unwrap()
    }

    /// Unit-length triangle boundary (equilateral with side 1), a 1-complex.
    fn triangle_boundary() -> SimplicialComplex {
        // Right triangle with rational coordinates does not have three unit
        // sides; use an abstract triangle realized in R^2 with sides 3-4-5
        // scaled? For unit sides we need irrational coordinates, so instead
        // realize each edge with length exactly 1 using a path in R^3 on
        // axis directions: v0=(0,0,0), v1=(1,0,0), v2=(1,1,0) has sides
        // 1, 1, sqrt(2). For the mesh count test we only need per-edge
        // lengths 1, so use edges of length 1: v0-v1, v1-v2, and v2-v3=v0?
        // Simplest: three unit edges forming a path is not a cycle; the
        // mesh-count example needs a cycle with three unit edges, realized
        // here as an abstract cycle on axis-aligned unit segments.
        SimplicialComplex::new(
            vec![
                vec![rint(0), rint(0)],
                vec![rint(1), rint(0)],
                vec![rint(1), rint(1)],
                vec![rint(0), rint(1)],
            ],
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]],
        )
        .unwrap()
    }

    #[test]
    fn closure_holds_after_construction() {
        let t = triangle_2d();
        for s in t.simplices() {
            let k = s.len();
            for mask in 1u32..(1 << k) {
                let face: Vec<usize> =
                    (0..k).filter(|&j| mask & (1 << j) != 0).map(|j| s[j]).collect();
                assert!(t.contains_simplex(&face), "missing face {face:?} of {s:?}");
            }
        }
    }

    #[test]
    fn subdivide_segment_once() {
        let k = unit_segment();
        let sd = k.barycentric_subdivide(1);
        assert_eq!(sd.vertex_count(), 3);
        assert_eq!(sd.edges().len(), 2);
        // The new vertex is the midpoint.
        let coords: Vec<_> = (0..3).map(|i| sd.vertex(i)[0].clone()).collect();
        assert!(coords.contains(&rat(1, 2)));
        // The two edges share exactly the midpoint vertex.
        let edges = sd.edges();
        let shared: Vec<usize> = (0..3)
            .filter(|&v| edges.iter().filter(|(a, b)| *a == v || *b == v).count() == 2)
            .collect();
        assert_eq!(shared.len(), 1);
        assert_eq!(sd.vertex(shared[0])[0], rat(1, 2));
    }

    #[test]
    fn subdivide_zero_rounds_is_identity() {
        let k = triangle_2d();
        assert_eq!(k.barycentric_subdivide(0), k);
    }

    #[test]
    fn subdivide_triangle_once_hand_count() {
        // Oracle: one barycenter per face of the 2-simplex.
        let k = triangle_2d();
        let faces: Vec<&Vec<usize>> = k.simplices().collect();
        let expected_vertices = faces.len(); // 3 + 3 + 1 = 7
        assert_eq!(expected_vertices, 7);
        let sd = k.barycentric_subdivide(1);
        assert_eq!(sd.vertex_count(), 7);
        let triangles = sd.simplices().filter(|s| s.len() == 3).count();
        assert_eq!(triangles, 6);
    }

    #[test]
    fn subdivision_shrinks_diameters() {
        let k = triangle_2d();
        let sd = k.barycentric_subdivide(1);
        // Max simplex diameter shrinks by <= d/(d+1) = 2/3 per round.
        let max_d = |c: &SimplicialComplex| -> Rat {
            let mut best = Rat::zero();
            for s in c.maximal_simplices() {
                for a in 0..s.len() {
                    for b in (a + 1)..s.len() {
                        let d = dist_sq(c.vertex(s[a]), c.vertex(s[b]));
                        if d > best {
                            best = d;
                        }
                    }
                }
            }
            best
        };
        let before = max_d(&k);
        let after = max_d(&sd);
        assert!(after <= before * rat(4, 9));
    }

    #[test]
    fn evaluate_pl_vertex_and_midpoint() {
        let k = unit_segment();
        let f = PLMap::new(
            k.clone(),
            k.clone(),
            2,
            vec![vec![rint(0), rint(0)], vec![rint(4), rint(2)]],
        )
        .unwrap();
        // Vertex case.
        assert_eq!(
            f.evaluate(&ComplexPoint::vertex(1)).unwrap(),
            vec![rint(4), rint(2)]
        );
        // Midpoint: average of the endpoint images.
        let mid = ComplexPoint::on_edge(0, 1, rat(1, 2)).unwrap();
        assert_eq!(f.evaluate(&mid).unwrap(), vec![rint(2), rint(1)]);
    }

    #[test]
    fn identity_map_returns_realization() {
        let k = triangle_2d();
        let f = PLMap::identity(&k);
        let p = ComplexPoint::new(vec![0, 1, 2], vec![rat(1, 2), rat(1, 4), rat(1, 4)]).unwrap();
        assert_eq!(f.evaluate(&p).unwrap(), k.realize(&p).unwrap());
    }

    #[test]
    fn face_agreement_is_exact() {
        // A point on the shared vertex of two edges evaluates identically
        // through either representation.
        let k = SimplicialComplex::new(
            vec![vec![rint(0)], vec![rint(1)], vec![rint(2)]],
            vec![vec![0, 1], vec![1, 2]],
        )
        .unwrap();
        let f = PLMap::new(
            k.clone(),
            k.clone(),
            1,
            vec![vec![rint(5)], vec![rint(7)], vec![rint(9)]],
        )
        .unwrap();
        let via_left = ComplexPoint::new(vec![0, 1], vec![rint(0), rint(1)]).unwrap();
        let via_right = ComplexPoint::new(vec![1, 2], vec![rint(1), rint(0)]).unwrap();
        assert_eq!(via_left, via_right); // canonicalization
        assert_eq!(f.evaluate(&via_left).unwrap(), f.evaluate(&via_right).unwrap());
    }

    #[test]
    fn locate_resolves_to_lex_smallest_support() {
        let k = triangle_2d();
        // Midpoint of the edge [0,1]: support is that edge.
        let p = k.locate(&[rat(1, 2), rint(0)]).unwrap();
        assert_eq!(p.simplex(), &[0, 1]);
        // Interior point: support is the full triangle.
        let q = k.locate(&[rat(1, 4), rat(1, 4)]).unwrap();
        assert_eq!(q.simplex(), &[0, 1, 2]);
        // Outside.
        assert!(k.locate(&[rint(2), rint(2)]).is_err());
    }

    #[test]
    fn subdivision_preserves_realization_exactly() {
        let k = triangle_2d();
        let sd = k.barycentric_subdivide(2);
        let ident = PLMap::identity(&k);
        let ident_sd = PLMap::identity(&sd);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let a = rng.gen_range(0..8u64);
            let b = rng.gen_range(0..8u64);
            let c = rng.gen_range(1..8u64);
            let total = a + b + c;
            let p = ComplexPoint::new(
                vec![0, 1, 2],
                vec![
                    Rat::new((a as i64).into(), (total as i64).into()),
                    Rat::new((b as i64).into(), (total as i64).into()),
                    Rat::new((c as i64).into(), (total as i64).into()),
                ],
            )
            .unwrap();
            let coords = k.realize(&p).unwrap();
            let before = ident.evaluate_coords(&coords).unwrap();
            let after = ident_sd.evaluate_coords(&coords).unwrap();
            assert_eq!(dist_sq(&before, &after), Rat::zero());
        }
    }

    #[test]
    fn mesh_segment_examples() {
        let k = unit_segment();
        // h = 1/2: parameters {0, 1/2, 1}.
        let mesh = k.mesh_points(&rat(1, 2));
        assert_eq!(mesh.len(), 3);
        // h >= diameter: the vertex set suffices and is returned.
        let mesh = k.mesh_points(&rint(2));
        assert_eq!(mesh.len(), 2);
        assert!(mesh.iter().all(|p| p.is_vertex().is_some()));
    }

    #[test]
    fn mesh_triangle_boundary_count_and_covering() {
        // Cycle of unit edges, h = 1/4: one point every 1/4 plus vertices.
        // (The spec's 3-edge example generalizes; this 4-edge cycle has
        // 4 vertices + 4*3 interior points = 16; the 3-edge case is checked
        // abstractly below via a path of three unit edges.)
        let k = triangle_boundary();
        let mesh = k.mesh_points(&rat(1, 4));
        assert_eq!(mesh.len(), 16);

        // Three unit edges (as in the example): 3 shared vertices + 9.
        let path = SimplicialComplex::new(
            vec![
                vec![rint(0), rint(0)],
                vec![rint(1), rint(0)],
                vec![rint(1), rint(1)],
                vec![rint(0), rint(1)],
            ],
            vec![vec![0, 1], vec![1, 2], vec![2, 3]],
        )
        .unwrap();
        let mesh = path.mesh_points(&rat(1, 4));
        assert_eq!(mesh.len(), 4 + 3 * 3);

        // Exhaustive covering scan: every sample on every edge lies within
        // h of some mesh point of the same edge (so intrinsic distance <= h).
        let h_sq = rat(1, 16);
        let realizations: Vec<Vec<Rat>> = mesh.iter().map(|p| path.realize(p).unwrap()).collect();
        for (u, v) in path.edges() {
            for i in 0..=64u64 {
                let t = Rat::new((i as i64).into(), 64.into());
                let p = ComplexPoint::on_edge(u, v, t).unwrap();
                let coords = path.realize(&p).unwrap();
                let covered = realizations.iter().any(|m| dist_sq(m, &coords) <= h_sq);
                assert!(covered);
            }
        }
    }

    #[test]
    fn mesh_nesting_for_dyadic_pitches() {
        let k = unit_segment();
        let coarse = k.mesh_points(&rat(1, 4));
        let fine = k.mesh_points(&rat(1, 8));
        for p in &coarse {
            assert!(fine.contains(p));
        }
    }

    #[test]
    fn degenerate_simplices_rejected() {
        let err = SimplicialComplex::new(
            vec![vec![rint(0), rint(0)], vec![rint(1), rint(0)], vec![rint(2), rint(0)]],
            vec![vec![0, 1, 2]],
        );
        assert!(err.is_err());
    }

    #[test]
    fn complex_point_validation() {
        assert!(ComplexPoint::new(vec![0, 1], vec![rat(1, 2), rat(1, 3)]).is_err());
        assert!(ComplexPoint::new(vec![0, 1], vec![rat(3, 2), rat(-1, 2)]).is_err());
        // Zero entries permitted and canonicalized away.
        let p = ComplexPoint::new(vec![0, 1], vec![rint(1), rint(0)]).unwrap();
        assert_eq!(p, ComplexPoint::vertex(0));
    }
}
