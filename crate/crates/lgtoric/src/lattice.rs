//! Exact integer lattice polytopes in rank 3.
//!
//! Everything here works over checked 64-bit integers: coordinates of the
//! census polytopes are tiny, but an overflow must surface as an error, never
//! as a wrapped value. The polytope carries both representations (vertices
//! and facet inequalities) plus the cached list of lattice points, which is
//! enumerated by a bounding-box scan and serves as the count oracle for every
//! formula downstream.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// A point of the rank-3 lattice M (or of its dual N; both are `Z^3`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePoint([i64; 3]);

impl LatticePoint {
    pub const ORIGIN: LatticePoint = LatticePoint([0, 0, 0]);

    pub fn new(x: i64, y: i64, z: i64) -> Self {
        LatticePoint([x, y, z])
    }

    pub fn coords(&self) -> [i64; 3] {
        self.0
    }

    pub fn is_origin(&self) -> bool {
        self.0 == [0, 0, 0]
    }

    /// Pairing `<self, other>`, erroring on overflow.
    pub fn dot(&self, other: &LatticePoint) -> Result<i64> {
        let mut acc: i64 = 0;
        for i in 0..3 {
            let term = self.0[i].checked_mul(other.0[i]).ok_or(Error::Overflow)?;
            acc = acc.checked_add(term).ok_or(Error::Overflow)?;
        }
        Ok(acc)
    }

    pub fn checked_sub(&self, other: &LatticePoint) -> Result<LatticePoint> {
        let mut out = [0i64; 3];
        for i in 0..3 {
            out[i] = self.0[i].checked_sub(other.0[i]).ok_or(Error::Overflow)?;
        }
        Ok(LatticePoint(out))
    }

    pub fn checked_neg(&self) -> Result<LatticePoint> {
        let mut out = [0i64; 3];
        for i in 0..3 {
            out[i] = self.0[i].checked_neg().ok_or(Error::Overflow)?;
        }
        Ok(LatticePoint(out))
    }

    /// Cross product, erroring on overflow.
    pub fn cross(&self, other: &LatticePoint) -> Result<LatticePoint> {
        let a = self.0;
        let b = other.0;
        let term = |i: usize, j: usize| -> Result<i64> {
            let left = a[i].checked_mul(b[j]).ok_or(Error::Overflow)?;
            let right = a[j].checked_mul(b[i]).ok_or(Error::Overflow)?;
            left.checked_sub(right).ok_or(Error::Overflow)
        };
        Ok(LatticePoint([term(1, 2)?, term(2, 0)?, term(0, 1)?]))
    }
}

impl From<[i64; 3]> for LatticePoint {
    fn from(coords: [i64; 3]) -> Self {
        LatticePoint(coords)
    }
}

impl std::fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

/// Determinant of the 3x3 matrix with the given columns.
pub fn det3(a: &LatticePoint, b: &LatticePoint, c: &LatticePoint) -> Result<i64> {
    a.cross(b)?.dot(c)
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn gcd3(v: [i64; 3]) -> i64 {
    gcd(gcd(v[0], v[1]), v[2])
}

/// One half-space of the H-representation: `{ x : <normal, x> >= -offset }`.
///
/// The normal is primitive (gcd of its coordinates is 1) and points inward.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct FacetInequality {
    normal: LatticePoint,
    offset: i64,
}

impl FacetInequality {
    pub fn normal(&self) -> LatticePoint {
        self.normal
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    /// `<normal, x> + offset`; zero on the facet, positive inside.
    pub fn slack(&self, x: &LatticePoint) -> Result<i64> {
        self.normal
            .dot(x)?
            .checked_add(self.offset)
            .ok_or(Error::Overflow)
    }

    pub fn contains(&self, x: &LatticePoint) -> Result<bool> {
        Ok(self.slack(x)? >= 0)
    }

    pub fn is_on(&self, x: &LatticePoint) -> Result<bool> {
        Ok(self.slack(x)? == 0)
    }
}

/// A full-dimensional lattice polytope in rank 3.
///
/// Vertices and facets are stored in lexicographic order so that identical
/// inputs always produce byte-identical output. The lattice point list is
/// computed eagerly at construction by the bounding-box scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePolytope {
    vertices: Vec<LatticePoint>,
    facets: Vec<FacetInequality>,
    lattice_points: Vec<LatticePoint>,
}

impl LatticePolytope {
    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn facets(&self) -> &[FacetInequality] {
        &self.facets
    }

    /// All lattice points of the polytope, in lexicographic order.
    pub fn lattice_points(&self) -> &[LatticePoint] {
        &self.lattice_points
    }

    /// Number of lattice points, written `l` in the count identities.
    pub fn point_count(&self) -> i64 {
        self.lattice_points.len() as i64
    }

    pub fn contains(&self, x: &LatticePoint) -> Result<bool> {
        for facet in &self.facets {
            if !facet.contains(x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Indices of facets whose hyperplane passes through `x`.
    pub fn facets_through(&self, x: &LatticePoint) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for (j, facet) in self.facets.iter().enumerate() {
            if facet.is_on(x)? {
                out.push(j);
            }
        }
        Ok(out)
    }

    /// Lattice points lying on at least one facet hyperplane.
    pub fn boundary_lattice_points(&self) -> Result<Vec<LatticePoint>> {
        let mut out = Vec::new();
        for p in &self.lattice_points {
            if !self.facets_through(p)?.is_empty() {
                out.push(*p);
            }
        }
        Ok(out)
    }

    /// Lattice points with strictly positive slack on every facet.
    pub fn interior_lattice_points(&self) -> Result<Vec<LatticePoint>> {
        let mut out = Vec::new();
        'points: for p in &self.lattice_points {
            for facet in &self.facets {
                if facet.slack(p)? == 0 {
                    continue 'points;
                }
            }
            out.push(*p);
        }
        Ok(out)
    }
}

/// A triangle of the working hull surface, vertices in outward orientation.
#[derive(Debug, Clone, Copy)]
struct Tri([usize; 3]);

impl Tri {
    fn directed_edges(&self) -> [(usize, usize); 3] {
        let [a, b, c] = self.0;
        [(a, b), (b, c), (c, a)]
    }
}

fn orient(pts: &[LatticePoint], tri: &Tri, q: usize) -> Result<i64> {
    let a = &pts[tri.0[0]];
    let u = pts[tri.0[1]].checked_sub(a)?;
    let v = pts[tri.0[2]].checked_sub(a)?;
    let w = pts[q].checked_sub(a)?;
    det3(&u, &v, &w)
}

fn edge_key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Compute the convex hull of a set of lattice points.
///
/// Incremental insertion with exact orientation predicates: start from a
/// tetrahedron of affinely independent points, then for each remaining point
/// delete the strictly visible triangles and cone the point onto the horizon
/// cycle. Points on the working surface are never hull vertices and are
/// skipped. The resulting triangle soup is condensed into an irredundant
/// facet list (coplanar triangles share one inequality) and a minimal vertex
/// list; both are sorted lexicographically.
///
/// # Errors
/// `DegenerateInput` if fewer than 4 distinct points or the points do not
/// affinely span rank 3; `Overflow` if a predicate overflows.
pub fn convex_hull(points: &[LatticePoint]) -> Result<LatticePolytope> {
    let mut pts: Vec<LatticePoint> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 4 {
        return Err(Error::DegenerateInput);
    }

    // Seed tetrahedron: first point, first distinct, first non-collinear,
    // first non-coplanar.
    let i0 = 0usize;
    let i1 = 1usize;
    let d01 = pts[i1].checked_sub(&pts[i0])?;
    let i2 = (2..pts.len())
        .map(|j| -> Result<Option<usize>> {
            let d = pts[j].checked_sub(&pts[i0])?;
            Ok((!d01.cross(&d)?.is_origin()).then_some(j))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .next()
        .ok_or(Error::DegenerateInput)?;
    let d02 = pts[i2].checked_sub(&pts[i0])?;
    let i3 = (2..pts.len())
        .filter(|&j| j != i2)
        .map(|j| -> Result<Option<usize>> {
            let d = pts[j].checked_sub(&pts[i0])?;
            Ok((det3(&d01, &d02, &d)? != 0).then_some(j))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .next()
        .ok_or(Error::DegenerateInput)?;

    let (a, mut b, mut c, d) = (i0, i1, i2, i3);
    let db = pts[b].checked_sub(&pts[a])?;
    let dc = pts[c].checked_sub(&pts[a])?;
    let dd = pts[d].checked_sub(&pts[a])?;
    if det3(&db, &dc, &dd)? < 0 {
        std::mem::swap(&mut b, &mut c);
    }
    // With det(b-a, c-a, d-a) > 0 these four triangles all face outward.
    let mut tris: Vec<Tri> = vec![
        Tri([a, c, b]),
        Tri([a, b, d]),
        Tri([a, d, c]),
        Tri([b, c, d]),
    ];

    let seed = [a, b, c, d];
    for q in 0..pts.len() {
        if seed.contains(&q) {
            continue;
        }
        let vis: Vec<bool> = tris
            .iter()
            .map(|t| Ok(orient(&pts, t, q)? > 0))
            .collect::<Result<Vec<_>>>()?;
        if !vis.iter().any(|&v| v) {
            continue; // inside or on the working hull: not a vertex
        }

        let mut edge_tris: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (ti, t) in tris.iter().enumerate() {
            for (u, v) in t.directed_edges() {
                edge_tris.entry(edge_key(u, v)).or_default().push(ti);
            }
        }

        // Horizon: directed edges of visible triangles whose neighbor is kept.
        let mut new_tris: Vec<Tri> = Vec::new();
        for (ti, t) in tris.iter().enumerate() {
            if !vis[ti] {
                continue;
            }
            for (u, v) in t.directed_edges() {
                let incident = &edge_tris[&edge_key(u, v)];
                if incident.len() != 2 {
                    return Err(Error::Internal(format!(
                        "hull surface edge with {} incident triangles",
                        incident.len()
                    )));
                }
                let other = if incident[0] == ti {
                    incident[1]
                } else {
                    incident[0]
                };
                if !vis[other] {
                    new_tris.push(Tri([u, v, q]));
                }
            }
        }

        let mut kept: Vec<Tri> = tris
            .iter()
            .zip(&vis)
            .filter(|(_, &v)| !v)
            .map(|(t, _)| *t)
            .collect();
        kept.append(&mut new_tris);
        tris = kept;

        // The surface must stay a closed 2-manifold after every insertion.
        let mut counts: HashMap<(usize, usize), usize> = HashMap::new();
        for t in &tris {
            for (u, v) in t.directed_edges() {
                *counts.entry(edge_key(u, v)).or_default() += 1;
            }
        }
        if counts.values().any(|&n| n != 2) {
            return Err(Error::Internal(
                "hull surface not closed after insertion".into(),
            ));
        }
    }

    finish_hull(&pts, &tris)
}

/// Turn the triangle soup into the canonical vertex/facet representation and
/// run the full H/V cross-validation.
fn finish_hull(pts: &[LatticePoint], tris: &[Tri]) -> Result<LatticePolytope> {
    let mut facets: Vec<FacetInequality> = Vec::new();
    for t in tris {
        let anchor = &pts[t.0[0]];
        let u = pts[t.0[1]].checked_sub(anchor)?;
        let v = pts[t.0[2]].checked_sub(anchor)?;
        let outward = u.cross(&v)?;
        let g = gcd3(outward.coords());
        if g == 0 {
            return Err(Error::Internal("degenerate hull triangle".into()));
        }
        let n = outward.coords().map(|x| x / g);
        let inward = LatticePoint::new(-n[0], -n[1], -n[2]);
        let offset = -inward.dot(anchor)?;
        facets.push(FacetInequality {
            normal: inward,
            offset,
        });
    }
    facets.sort();
    facets.dedup();

    for facet in &facets {
        for p in pts {
            if facet.slack(p)? < 0 {
                return Err(Error::Internal("input point outside hull facet".into()));
            }
        }
    }

    let mut referenced: Vec<usize> = tris.iter().flat_map(|t| t.0).collect();
    referenced.sort_unstable();
    referenced.dedup();

    let mut vertices: Vec<LatticePoint> = Vec::new();
    for &i in &referenced {
        let mut on = 0usize;
        for facet in &facets {
            if facet.is_on(&pts[i])? {
                on += 1;
            }
        }
        if on >= 3 {
            vertices.push(pts[i]);
        }
    }
    vertices.sort();

    for facet in &facets {
        let mut on = 0usize;
        for v in &vertices {
            if facet.is_on(v)? {
                on += 1;
            }
        }
        if on < 3 {
            return Err(Error::Internal(
                "facet supported by fewer than 3 vertices".into(),
            ));
        }
    }
    if vertices.len() < 4 || facets.len() < 4 {
        return Err(Error::Internal("hull output not full-dimensional".into()));
    }

    let lattice_points = scan_lattice_points(&vertices, &facets)?;
    Ok(LatticePolytope {
        vertices,
        facets,
        lattice_points,
    })
}

/// Brute-force lattice point enumeration over the vertex bounding box.
///
/// This scan is the count oracle of record: every `l` and `l*` used by the
/// Hodge-number formulas traces back to it.
fn scan_lattice_points(
    vertices: &[LatticePoint],
    facets: &[FacetInequality],
) -> Result<Vec<LatticePoint>> {
    let mut lo = [i64::MAX; 3];
    let mut hi = [i64::MIN; 3];
    for v in vertices {
        for i in 0..3 {
            lo[i] = lo[i].min(v.coords()[i]);
            hi[i] = hi[i].max(v.coords()[i]);
        }
    }
    let mut out = Vec::new();
    for x in lo[0]..=hi[0] {
        for y in lo[1]..=hi[1] {
            'z: for z in lo[2]..=hi[2] {
                let p = LatticePoint::new(x, y, z);
                for facet in facets {
                    if facet.slack(&p)? < 0 {
                        continue 'z;
                    }
                }
                out.push(p);
            }
        }
    }
    Ok(out)
}

/// A reflexive polytope has every facet at lattice distance 1 from the
/// origin, i.e. every inequality reads `<n, x> >= -1` with the origin
/// strictly inside.
pub fn is_reflexive(p: &LatticePolytope) -> bool {
    p.facets
        .iter()
        .all(|f| f.offset == 1 && f.slack(&LatticePoint::ORIGIN).is_ok_and(|s| s > 0))
}

/// Polar dual `{ y : <y, x> >= -1 for all x in P }` of a reflexive polytope.
///
/// For reflexive input the dual's vertices are exactly the facet normals of
/// the input, and the dual is reflexive again.
///
/// # Errors
/// `NotReflexive` if some facet offset differs from 1.
pub fn polar_dual(p: &LatticePolytope) -> Result<LatticePolytope> {
    if !is_reflexive(p) {
        return Err(Error::NotReflexive(
            "polar dual requires all facet offsets equal to 1".into(),
        ));
    }
    let normals: Vec<LatticePoint> = p.facets.iter().map(|f| f.normal).collect();
    let dual = convex_hull(&normals)?;
    let mut sorted = normals;
    sorted.sort();
    if dual.vertices != sorted {
        return Err(Error::Internal(
            "dual vertex set differs from facet normal set".into(),
        ));
    }
    if !is_reflexive(&dual) {
        return Err(Error::Internal(
            "polar dual of reflexive polytope not reflexive".into(),
        ));
    }
    Ok(dual)
}
