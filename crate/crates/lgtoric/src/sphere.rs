//! The dual intersection complex of the fiber at infinity: a maximal lattice
//! triangulation of the boundary of the dual polytope, certified to be a
//! 2-sphere by integer simplicial homology.
//!
//! Each 2-face is triangulated in exact 2D lattice coordinates obtained from
//! a unimodular basis of the facet plane. Every lattice point of the face
//! becomes a vertex, so the final triangles are empty and therefore
//! unimodular; this is checked, not assumed. Facet triangulations glue along
//! shared boundary points into a closed surface.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::faces::{DualPair, Face, FaceLattice, Side};
use crate::lattice::{det3, LatticePoint, LatticePolytope};
use crate::snf::{smith_normal_form, IntMat, SnfResult};

/// Unimodular coordinates on a facet plane: an anchor point and two lattice
/// directions spanning the plane's translation lattice.
struct FacetFrame {
    anchor: LatticePoint,
    /// Columns of the inverse of the unimodular matrix `[w, u, v]`, where
    /// `u, v` span the kernel of the facet normal.
    adjugate: [[i64; 3]; 3],
    det_sign: i64,
}

impl FacetFrame {
    /// Build a frame for the plane `<normal, x> = const` through `anchor`.
    fn new(normal: LatticePoint, anchor: LatticePoint) -> Result<FacetFrame> {
        // Column-reduce the normal (as a row vector) to (g, 0, 0) while
        // tracking the column operations on the identity; the last two
        // columns then span the kernel lattice.
        let mut a = normal.coords();
        let mut cols = [[1i64, 0, 0], [0, 1, 0], [0, 0, 1]];
        loop {
            let mut nz: Vec<usize> = (0..3).filter(|&i| a[i] != 0).collect();
            if nz.len() <= 1 {
                break;
            }
            nz.sort_by_key(|&i| a[i].abs());
            let (p, q) = (nz[0], nz[1]);
            let t = a[q] / a[p];
            a[q] -= t * a[p];
            for r in 0..3 {
                cols[q][r] = cols[q][r]
                    .checked_sub(t.checked_mul(cols[p][r]).ok_or(Error::Overflow)?)
                    .ok_or(Error::Overflow)?;
            }
        }
        let p = (0..3)
            .find(|&i| a[i] != 0)
            .ok_or_else(|| Error::Internal("zero facet normal".into()))?;
        if a[p].abs() != 1 {
            return Err(Error::Internal("facet normal is not primitive".into()));
        }
        let others: Vec<usize> = (0..3).filter(|&i| i != p).collect();
        let order = [p, others[0], others[1]];
        let mat: Vec<LatticePoint> = order.iter().map(|&i| LatticePoint::from(cols[i])).collect();

        let det = det3(&mat[0], &mat[1], &mat[2])?;
        if det.abs() != 1 {
            return Err(Error::Internal("frame matrix is not unimodular".into()));
        }
        // Adjugate of the column matrix [m0 m1 m2].
        let m = [mat[0].coords(), mat[1].coords(), mat[2].coords()];
        let cof = |r: usize, c: usize| -> i128 {
            let (r1, r2) = match r {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let (c1, c2) = match c {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let minor = i128::from(m[c1][r1]) * i128::from(m[c2][r2])
                - i128::from(m[c2][r1]) * i128::from(m[c1][r2]);
            if (r + c).is_multiple_of(2) {
                minor
            } else {
                -minor
            }
        };
        let mut adjugate = [[0i64; 3]; 3];
        for r in 0..3 {
            for c in 0..3 {
                // adj(V) is the transposed cofactor matrix.
                adjugate[r][c] = i64::try_from(cof(c, r)).map_err(|_| Error::Overflow)?;
            }
        }
        Ok(FacetFrame {
            anchor,
            adjugate,
            det_sign: det.signum(),
        })
    }

    /// Map a lattice point of the plane to its 2D lattice coordinates.
    fn to_2d(&self, x: &LatticePoint) -> Result<[i64; 2]> {
        let d = x.checked_sub(&self.anchor)?.coords();
        let mut y = [0i64; 3];
        for r in 0..3 {
            let mut acc = 0i64;
            for c in 0..3 {
                acc = acc
                    .checked_add(
                        self.adjugate[r][c]
                            .checked_mul(d[c])
                            .ok_or(Error::Overflow)?,
                    )
                    .ok_or(Error::Overflow)?;
            }
            y[r] = acc * self.det_sign;
        }
        if y[0] != 0 {
            return Err(Error::Internal("point is not on the facet plane".into()));
        }
        Ok([y[1], y[2]])
    }
}

// 2D orientation in i128: products of 64-bit differences can never wrap.
fn cross2(o: [i64; 2], a: [i64; 2], b: [i64; 2]) -> i128 {
    let dx1 = i128::from(a[0]) - i128::from(o[0]);
    let dy1 = i128::from(a[1]) - i128::from(o[1]);
    let dx2 = i128::from(b[0]) - i128::from(o[0]);
    let dy2 = i128::from(b[1]) - i128::from(o[1]);
    dx1 * dy2 - dy1 * dx2
}

/// Strict 2D convex hull (monotone chain), counterclockwise, collinear
/// boundary points dropped.
fn hull_2d(points: &[[i64; 2]]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by_key(|&i| points[i]);
    let mut lower: Vec<usize> = Vec::new();
    for &i in &idx {
        while lower.len() >= 2
            && cross2(
                points[lower[lower.len() - 2]],
                points[lower[lower.len() - 1]],
                points[i],
            ) <= 0
        {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in idx.iter().rev() {
        while upper.len() >= 2
            && cross2(
                points[upper[upper.len() - 2]],
                points[upper[upper.len() - 1]],
                points[i],
            ) <= 0
        {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Triangulate a 2-face using all of its lattice points as vertices.
///
/// Fan the polygon of strict vertices, then insert every remaining lattice
/// point: an interior point splits its triangle into three, a point on an
/// edge splits the one or two incident triangles. Every final triangle is
/// empty and hence unimodular, which is verified via its 2D determinant.
///
/// # Errors
/// `DegenerateFace` if the face is not 2-dimensional.
pub fn triangulate_facet(
    polytope: &LatticePolytope,
    face: &Face,
) -> Result<Vec<[LatticePoint; 3]>> {
    if face.dim() != 2 {
        return Err(Error::DegenerateFace);
    }
    let facet = &polytope.facets()[face.facet_ids()[0]];
    let pts3 = face.points();
    let frame = FacetFrame::new(facet.normal(), pts3[0])?;
    let pts2: Vec<[i64; 2]> = pts3.iter().map(|p| frame.to_2d(p)).collect::<Result<_>>()?;

    let mut polygon = hull_2d(&pts2);
    if polygon.len() < 3 {
        return Err(Error::DegenerateFace);
    }
    // Normalize to counterclockwise.
    let area2: i128 = polygon
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            let b = polygon[(i + 1) % polygon.len()];
            i128::from(pts2[a][0]) * i128::from(pts2[b][1])
                - i128::from(pts2[b][0]) * i128::from(pts2[a][1])
        })
        .sum();
    if area2 < 0 {
        polygon.reverse();
    }

    let mut tris: Vec<[usize; 3]> = (1..polygon.len() - 1)
        .map(|i| [polygon[0], polygon[i], polygon[i + 1]])
        .collect();

    let on_hull: Vec<bool> = {
        let mut f = vec![false; pts2.len()];
        for &i in &polygon {
            f[i] = true;
        }
        f
    };
    for p in 0..pts2.len() {
        if on_hull[p] {
            continue;
        }
        insert_point(&mut tris, &pts2, p)?;
    }

    for t in &tris {
        let det = cross2(pts2[t[0]], pts2[t[1]], pts2[t[2]]);
        if det != 1 {
            return Err(Error::Internal(format!(
                "triangle with normalized area {det} in facet triangulation"
            )));
        }
    }
    let boundary = face.ell() - face.ell_star();
    let expected = 2 * face.ell_star() + boundary - 2;
    if tris.len() as i64 != expected {
        return Err(Error::Internal(format!(
            "facet triangulation has {} triangles, lattice count predicts {expected}",
            tris.len()
        )));
    }

    Ok(tris
        .iter()
        .map(|t| [pts3[t[0]], pts3[t[1]], pts3[t[2]]])
        .collect())
}

/// Insert point `p` into a counterclockwise triangulation by a 1-to-3 split
/// (interior) or an edge split of the incident triangle(s).
fn insert_point(tris: &mut Vec<[usize; 3]>, pts2: &[[i64; 2]], p: usize) -> Result<()> {
    for ti in 0..tris.len() {
        let [a, b, c] = tris[ti];
        let s0 = cross2(pts2[a], pts2[b], pts2[p]);
        let s1 = cross2(pts2[b], pts2[c], pts2[p]);
        let s2 = cross2(pts2[c], pts2[a], pts2[p]);
        if s0 < 0 || s1 < 0 || s2 < 0 {
            continue;
        }
        let zeros = [s0 == 0, s1 == 0, s2 == 0];
        match zeros.iter().filter(|&&z| z).count() {
            0 => {
                tris.swap_remove(ti);
                tris.push([a, b, p]);
                tris.push([b, c, p]);
                tris.push([c, a, p]);
                return Ok(());
            }
            1 => {
                let (u, v, w) = if zeros[0] {
                    (a, b, c)
                } else if zeros[1] {
                    (b, c, a)
                } else {
                    (c, a, b)
                };
                // p lies on edge (u, v); w is the opposite vertex.
                tris.swap_remove(ti);
                tris.push([u, p, w]);
                tris.push([p, v, w]);
                if let Some(tj) = (0..tris.len()).find(|&tj| {
                    let t = tris[tj];
                    t.contains(&u) && t.contains(&v) && !t.contains(&p)
                }) {
                    let t = tris[tj];
                    let x = *t.iter().find(|&&x| x != u && x != v).unwrap();
                    tris.swap_remove(tj);
                    // Neighbor is (v, u, x) in ccw order.
                    tris.push([v, p, x]);
                    tris.push([p, u, x]);
                }
                return Ok(());
            }
            _ => {
                return Err(Error::Internal(
                    "lattice point coincides with a triangulation vertex".into(),
                ))
            }
        }
    }
    Err(Error::Internal(
        "lattice point not located in any triangle".into(),
    ))
}

/// The glued triangulation of the whole polytope boundary.
#[derive(Debug, Clone)]
pub struct SimplicialSurface {
    vertices: Vec<LatticePoint>,
    edges: Vec<[usize; 2]>,
    triangles: Vec<[usize; 3]>,
    facet_triangle_counts: Vec<usize>,
    unimodular_triangles: usize,
}

impl SimplicialSurface {
    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn facet_triangle_counts(&self) -> &[usize] {
        &self.facet_triangle_counts
    }

    /// All triangles passed the normalized-area-1 check during construction.
    pub fn all_unimodular(&self) -> bool {
        self.unimodular_triangles == self.triangles.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.triangles.len() as i64
    }
}

/// Triangulate every 2-face of a reflexive polytope and glue the results
/// along shared boundary lattice points.
///
/// The vertex set is exactly the boundary lattice points. Construction fails
/// with `Internal` if the glued surface is not closed (some edge not on
/// exactly two triangles).
pub fn boundary_complex(
    polytope: &LatticePolytope,
    faces: &FaceLattice,
) -> Result<SimplicialSurface> {
    let boundary = polytope.boundary_lattice_points()?;
    let index: HashMap<LatticePoint, usize> =
        boundary.iter().enumerate().map(|(i, p)| (*p, i)).collect();

    let mut triangles: Vec<[usize; 3]> = Vec::new();
    let mut facet_triangle_counts = Vec::new();
    let mut unimodular_triangles = 0usize;
    for face in faces.facets() {
        let tris = triangulate_facet(polytope, face)?;
        facet_triangle_counts.push(tris.len());
        unimodular_triangles += tris.len(); // area checked in triangulate_facet
        for t in tris {
            let mut ids = [index[&t[0]], index[&t[1]], index[&t[2]]];
            ids.sort_unstable();
            triangles.push(ids);
        }
    }
    triangles.sort_unstable();

    let mut edge_count: HashMap<[usize; 2], usize> = HashMap::new();
    for t in &triangles {
        for e in [[t[0], t[1]], [t[0], t[2]], [t[1], t[2]]] {
            *edge_count.entry(e).or_default() += 1;
        }
    }
    for (e, n) in &edge_count {
        if *n != 2 {
            return Err(Error::Internal(format!(
                "edge {e:?} lies in {n} triangles; surface not closed"
            )));
        }
    }
    let mut edges: Vec<[usize; 2]> = edge_count.into_keys().collect();
    edges.sort_unstable();

    Ok(SimplicialSurface {
        vertices: boundary,
        edges,
        triangles,
        facet_triangle_counts,
        unimodular_triangles,
    })
}

/// Boundary operator from edges to vertices, one column per edge.
pub fn boundary_map_1(surface: &SimplicialSurface) -> IntMat {
    let mut m = IntMat::zeros(surface.vertices.len(), surface.edges.len());
    for (j, e) in surface.edges.iter().enumerate() {
        m.set(e[0], j, -1);
        m.set(e[1], j, 1);
    }
    m
}

/// Boundary operator from triangles to edges with the sorted-vertex
/// orientation `[a,b,c] -> [b,c] - [a,c] + [a,b]`.
pub fn boundary_map_2(surface: &SimplicialSurface) -> IntMat {
    let edge_index: HashMap<[usize; 2], usize> = surface
        .edges
        .iter()
        .enumerate()
        .map(|(i, e)| (*e, i))
        .collect();
    let mut m = IntMat::zeros(surface.edges.len(), surface.triangles.len());
    for (j, t) in surface.triangles.iter().enumerate() {
        m.set(edge_index[&[t[1], t[2]]], j, 1);
        m.set(edge_index[&[t[0], t[2]]], j, -1);
        m.set(edge_index[&[t[0], t[1]]], j, 1);
    }
    m
}

/// Integer homology summary of a boundary complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SphereCheck {
    pub b0: i64,
    pub b1: i64,
    pub b2: i64,
    pub torsion_free: bool,
    pub euler: i64,
    pub vertices: usize,
    pub edges: usize,
    pub triangles: usize,
    pub all_unimodular: bool,
}

impl SphereCheck {
    /// Betti numbers (1, 0, 1), free first homology, Euler characteristic 2,
    /// and all triangles unimodular: the certificate that the complex is a
    /// triangulated 2-sphere.
    pub fn is_sphere(&self) -> bool {
        self.b0 == 1
            && self.b1 == 0
            && self.b2 == 1
            && self.torsion_free
            && self.euler == 2
            && self.all_unimodular
    }
}

/// Betti numbers and torsion of the surface via Smith normal form of the two
/// boundary operators.
pub fn sphere_check(surface: &SimplicialSurface) -> Result<SphereCheck> {
    let d1: SnfResult = smith_normal_form(&boundary_map_1(surface))?;
    let d2: SnfResult = smith_normal_form(&boundary_map_2(surface))?;
    let v = surface.vertices.len() as i64;
    let e = surface.edges.len() as i64;
    let t = surface.triangles.len() as i64;
    let r1 = d1.rank as i64;
    let r2 = d2.rank as i64;
    Ok(SphereCheck {
        b0: v - r1,
        b1: e - r1 - r2,
        b2: t - r2,
        torsion_free: d2.torsion_free(),
        euler: surface.euler_characteristic(),
        vertices: surface.vertices.len(),
        edges: surface.edges.len(),
        triangles: surface.triangles.len(),
        all_unimodular: surface.all_unimodular(),
    })
}

/// Build and check the dual intersection complex for the dual side of a
/// polar pair (the triangulation of the dual polytope's boundary).
pub fn sphere_check_pair(pair: &DualPair, side: Side) -> Result<SphereCheck> {
    let dual = side.other();
    let surface = boundary_complex(pair.polytope(dual), pair.faces(dual))?;
    sphere_check(&surface)
}
