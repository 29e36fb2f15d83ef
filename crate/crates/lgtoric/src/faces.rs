//! Face lattices of reflexive 3-polytopes and the face duality of a polar
//! pair.
//!
//! Faces are recovered combinatorially: a vertex face is a vertex together
//! with the facets through it, an edge is the intersection of a facet pair
//! sharing exactly two vertices, a 2-face is a facet. Each face carries its
//! lattice points and relative-interior lattice points, both filtered from
//! the owning polytope's point scan: a boundary point belongs to the relative
//! interior of the unique face whose facet set equals the set of facets
//! through the point.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::lattice::{is_reflexive, polar_dual, LatticePoint, LatticePolytope};

/// A proper face of a 3-polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    dim: usize,
    vertex_ids: Vec<usize>,
    facet_ids: Vec<usize>,
    points: Vec<LatticePoint>,
    interior_points: Vec<LatticePoint>,
}

impl Face {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Indices into the owning polytope's vertex list.
    pub fn vertex_ids(&self) -> &[usize] {
        &self.vertex_ids
    }

    /// Indices of the facets containing this face.
    pub fn facet_ids(&self) -> &[usize] {
        &self.facet_ids
    }

    /// Lattice points of the face.
    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    /// Lattice points in the relative interior of the face.
    pub fn interior_points(&self) -> &[LatticePoint] {
        &self.interior_points
    }

    /// `l`: number of lattice points of the face.
    pub fn ell(&self) -> i64 {
        self.points.len() as i64
    }

    /// `l*`: number of relative-interior lattice points of the face.
    pub fn ell_star(&self) -> i64 {
        self.interior_points.len() as i64
    }
}

/// All proper faces of a 3-polytope, grouped by dimension.
#[derive(Debug, Clone)]
pub struct FaceLattice {
    vertices: Vec<Face>,
    edges: Vec<Face>,
    facets: Vec<Face>,
}

impl FaceLattice {
    pub fn vertices(&self) -> &[Face] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Face] {
        &self.edges
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn faces_of_dim(&self, dim: usize) -> &[Face] {
        match dim {
            0 => &self.vertices,
            1 => &self.edges,
            2 => &self.facets,
            _ => &[],
        }
    }

    pub fn all_faces(&self) -> impl Iterator<Item = &Face> {
        self.vertices.iter().chain(&self.edges).chain(&self.facets)
    }

    /// `V - E + F`, which must be 2 for the boundary 2-sphere.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.facets.len() as i64
    }

    fn face(&self, dim: usize, idx: usize) -> &Face {
        &self.faces_of_dim(dim)[idx]
    }
}

/// Enumerate all proper faces of a reflexive polytope.
///
/// # Errors
/// `NotReflexive` for non-reflexive input; `Internal` if the combinatorial
/// sanity checks fail (an edge not on exactly two facets, a vertex on fewer
/// than three, or a broken Euler characteristic).
pub fn enumerate_faces(p: &LatticePolytope) -> Result<FaceLattice> {
    if !is_reflexive(p) {
        return Err(Error::NotReflexive(
            "face enumeration is defined for the reflexive census".into(),
        ));
    }

    let verts = p.vertices();
    let on_facet: Vec<Vec<usize>> = verts
        .iter()
        .map(|v| p.facets_through(v))
        .collect::<Result<_>>()?;

    let mut vertex_faces = Vec::with_capacity(verts.len());
    for (i, v) in verts.iter().enumerate() {
        if on_facet[i].len() < 3 {
            return Err(Error::Internal(format!(
                "vertex {v} lies on fewer than 3 facets"
            )));
        }
        vertex_faces.push(Face {
            dim: 0,
            vertex_ids: vec![i],
            facet_ids: on_facet[i].clone(),
            points: vec![*v],
            interior_points: vec![*v],
        });
    }

    // Edges arise as facet pairs sharing exactly two vertices.
    let mut edge_keys: Vec<[usize; 2]> = Vec::new();
    for j in 0..p.facets().len() {
        for k in (j + 1)..p.facets().len() {
            let common: Vec<usize> = (0..verts.len())
                .filter(|&i| on_facet[i].contains(&j) && on_facet[i].contains(&k))
                .collect();
            match common.len() {
                0 | 1 => {}
                2 => edge_keys.push([common[0], common[1]]),
                n => {
                    return Err(Error::Internal(format!(
                        "facets {j} and {k} share {n} vertices"
                    )))
                }
            }
        }
    }
    edge_keys.sort_unstable();
    edge_keys.dedup();

    let mut edge_faces = Vec::with_capacity(edge_keys.len());
    for key in &edge_keys {
        let facet_ids: Vec<usize> = on_facet[key[0]]
            .iter()
            .copied()
            .filter(|f| on_facet[key[1]].contains(f))
            .collect();
        if facet_ids.len() != 2 {
            return Err(Error::Internal(format!(
                "edge {:?} lies on {} facets",
                key,
                facet_ids.len()
            )));
        }
        let mut points = Vec::new();
        let mut interior_points = Vec::new();
        for pt in p.lattice_points() {
            let through = p.facets_through(pt)?;
            if facet_ids.iter().all(|f| through.contains(f)) {
                points.push(*pt);
                if through == facet_ids {
                    interior_points.push(*pt);
                }
            }
        }
        edge_faces.push(Face {
            dim: 1,
            vertex_ids: key.to_vec(),
            facet_ids,
            points,
            interior_points,
        });
    }

    let mut facet_faces = Vec::with_capacity(p.facets().len());
    for j in 0..p.facets().len() {
        let vertex_ids: Vec<usize> = (0..verts.len())
            .filter(|&i| on_facet[i].contains(&j))
            .collect();
        let mut points = Vec::new();
        let mut interior_points = Vec::new();
        for pt in p.lattice_points() {
            let through = p.facets_through(pt)?;
            if through.contains(&j) {
                points.push(*pt);
                if through == [j] {
                    interior_points.push(*pt);
                }
            }
        }
        facet_faces.push(Face {
            dim: 2,
            vertex_ids,
            facet_ids: vec![j],
            points,
            interior_points,
        });
    }

    let lattice = FaceLattice {
        vertices: vertex_faces,
        edges: edge_faces,
        facets: facet_faces,
    };
    if lattice.euler_characteristic() != 2 {
        return Err(Error::Internal(format!(
            "boundary Euler characteristic {} != 2",
            lattice.euler_characteristic()
        )));
    }
    Ok(lattice)
}

/// Which member of a polar pair a face or formula refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// The polytope the pair was built from.
    Primal,
    /// Its polar dual.
    Dual,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Primal => Side::Dual,
            Side::Dual => Side::Primal,
        }
    }

    fn index(self) -> usize {
        match self {
            Side::Primal => 0,
            Side::Dual => 1,
        }
    }
}

/// Reference to a face of one side of a dual pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FaceRef {
    pub side: Side,
    pub dim: usize,
    pub index: usize,
}

/// A reflexive polytope together with its polar dual, both face lattices,
/// and the face duality maps between them.
///
/// All duality bookkeeping goes through this type so M-side and N-side data
/// can never be mixed up silently.
#[derive(Debug, Clone)]
pub struct DualPair {
    polytopes: [LatticePolytope; 2],
    faces: [FaceLattice; 2],
    /// `dual_map[s][d][i]` is the index of the dual face (of dimension
    /// `2 - d`) on the other side of face `i` of dimension `d` on side `s`.
    dual_map: [[Vec<usize>; 3]; 2],
}

impl DualPair {
    /// Build the pair from a reflexive polytope by computing its polar dual.
    pub fn new(delta: LatticePolytope) -> Result<Self> {
        let dual = polar_dual(&delta)?;
        Self::from_parts_unchecked(delta, dual)
    }

    /// Build the pair from an explicitly supplied dual.
    ///
    /// # Errors
    /// `InvalidPair` if `claimed_dual` is not the polar dual of `delta`.
    pub fn from_parts(delta: LatticePolytope, claimed_dual: LatticePolytope) -> Result<Self> {
        let expected = polar_dual(&delta)?;
        if expected.vertices() != claimed_dual.vertices() {
            return Err(Error::InvalidPair(
                "supplied polytope is not the polar dual".into(),
            ));
        }
        Self::from_parts_unchecked(delta, expected)
    }

    fn from_parts_unchecked(delta: LatticePolytope, dual: LatticePolytope) -> Result<Self> {
        let faces = [enumerate_faces(&delta)?, enumerate_faces(&dual)?];
        let polytopes = [delta, dual];

        let mut dual_map: [[Vec<usize>; 3]; 2] = Default::default();
        for side in [Side::Primal, Side::Dual] {
            let s = side.index();
            for dim in 0..3 {
                let mut map = Vec::new();
                for idx in 0..faces[s].faces_of_dim(dim).len() {
                    map.push(compute_dual_face(&polytopes, &faces, side, dim, idx)?);
                }
                dual_map[s][dim] = map;
            }
        }

        let pair = DualPair {
            polytopes,
            faces,
            dual_map,
        };
        pair.check_duality_involution()?;
        Ok(pair)
    }

    pub fn polytope(&self, side: Side) -> &LatticePolytope {
        &self.polytopes[side.index()]
    }

    pub fn faces(&self, side: Side) -> &FaceLattice {
        &self.faces[side.index()]
    }

    /// The dual face of face `index` of dimension `dim` on `side`.
    ///
    /// Satisfies `dim F + dim F* = 2` and is an involution.
    pub fn dual_face(&self, side: Side, dim: usize, index: usize) -> FaceRef {
        FaceRef {
            side: side.other(),
            dim: 2 - dim,
            index: self.dual_map[side.index()][dim][index],
        }
    }

    /// [`Self::dual_face`] keyed by the face itself.
    ///
    /// # Errors
    /// `InvalidParameter` if `face` is not a face of `side`.
    pub fn dual_face_of(&self, side: Side, face: &Face) -> Result<&Face> {
        let index = self
            .faces(side)
            .faces_of_dim(face.dim())
            .iter()
            .position(|f| f.vertex_ids() == face.vertex_ids())
            .ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "no face of dimension {} with vertex set {:?}",
                    face.dim(),
                    face.vertex_ids()
                ))
            })?;
        Ok(self.face(self.dual_face(side, face.dim(), index)))
    }

    pub fn face(&self, fref: FaceRef) -> &Face {
        self.faces(fref.side).face(fref.dim, fref.index)
    }

    /// `l*` of the dual face, the quantity the count identities pair with
    /// `l*` of an edge.
    pub fn dual_ell_star(&self, side: Side, dim: usize, index: usize) -> i64 {
        self.face(self.dual_face(side, dim, index)).ell_star()
    }

    /// The smallest face of `side` whose relative interior contains `v`.
    ///
    /// # Errors
    /// `NotOnBoundary` if `v` is strictly interior or outside the polytope.
    pub fn minimal_face_containing(&self, side: Side, v: &LatticePoint) -> Result<FaceRef> {
        minimal_face_ref(self.polytope(side), self.faces(side), side, v)
    }

    fn check_duality_involution(&self) -> Result<()> {
        for side in [Side::Primal, Side::Dual] {
            for dim in 0..3 {
                for idx in 0..self.faces(side).faces_of_dim(dim).len() {
                    let there = self.dual_face(side, dim, idx);
                    let back = self.dual_face(there.side, there.dim, there.index);
                    if back.side != side || back.dim != dim || back.index != idx {
                        return Err(Error::Internal("face duality is not an involution".into()));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Find the face of the polytope on the other side cut out by
/// `{ s : <v, s> = -1 }` over all vertices `v` of the given face.
fn compute_dual_face(
    polytopes: &[LatticePolytope; 2],
    faces: &[FaceLattice; 2],
    side: Side,
    dim: usize,
    idx: usize,
) -> Result<usize> {
    let s = side.index();
    let o = side.other().index();
    let face = faces[s].face(dim, idx);
    let this_poly = &polytopes[s];
    let other_poly = &polytopes[o];

    // The vertices of `face` are facet normals of the other polytope; the
    // dual face is the intersection of the corresponding facets.
    let mut other_facets = Vec::new();
    for &vid in face.vertex_ids() {
        let v = this_poly.vertices()[vid];
        let fid = other_poly
            .facets()
            .iter()
            .position(|f| f.normal() == v)
            .ok_or_else(|| {
                Error::InvalidPair(format!("vertex {v} is not a facet normal of the partner"))
            })?;
        other_facets.push(fid);
    }

    let mut dual_vertex_ids = Vec::new();
    'verts: for (wid, w) in other_poly.vertices().iter().enumerate() {
        for &fid in &other_facets {
            if !other_poly.facets()[fid].is_on(w)? {
                continue 'verts;
            }
        }
        dual_vertex_ids.push(wid);
    }

    let want_dim = 2 - dim;
    faces[o]
        .faces_of_dim(want_dim)
        .iter()
        .position(|f| f.vertex_ids() == dual_vertex_ids)
        .ok_or_else(|| {
            Error::Internal(format!(
                "no face of dimension {want_dim} with vertex set {dual_vertex_ids:?}"
            ))
        })
}

fn minimal_face_ref(
    p: &LatticePolytope,
    lattice: &FaceLattice,
    side: Side,
    v: &LatticePoint,
) -> Result<FaceRef> {
    for facet in p.facets() {
        if facet.slack(v)? < 0 {
            return Err(Error::NotOnBoundary(v.coords()));
        }
    }
    let through = p.facets_through(v)?;
    if through.is_empty() {
        return Err(Error::NotOnBoundary(v.coords()));
    }
    for dim in 0..3 {
        if let Some(index) = lattice
            .faces_of_dim(dim)
            .iter()
            .position(|f| f.facet_ids() == through)
        {
            return Ok(FaceRef { side, dim, index });
        }
    }
    Err(Error::Internal(format!(
        "no face matches facet set {through:?} of {v}"
    )))
}

/// The smallest face of `p` whose relative interior contains `v`: the face
/// cut out by exactly the facets through `v`.
///
/// # Errors
/// `NotOnBoundary` if `v` is strictly interior or outside.
pub fn minimal_face_containing<'l>(
    p: &LatticePolytope,
    lattice: &'l FaceLattice,
    v: &LatticePoint,
) -> Result<&'l Face> {
    let fref = minimal_face_ref(p, lattice, Side::Primal, v)?;
    Ok(lattice.face(fref.dim, fref.index))
}

/// Check that the relative interiors of the proper faces, together with the
/// origin, partition the lattice points of a reflexive polytope.
pub fn point_count_partition_holds(p: &LatticePolytope, lattice: &FaceLattice) -> bool {
    let star_sum: i64 = lattice.all_faces().map(Face::ell_star).sum();
    p.point_count() == 1 + star_sum
}

/// Group the boundary lattice points by the dimension of their minimal face.
pub fn boundary_points_by_min_face(
    p: &LatticePolytope,
    lattice: &FaceLattice,
) -> Result<HashMap<usize, Vec<LatticePoint>>> {
    let mut out: HashMap<usize, Vec<LatticePoint>> = HashMap::new();
    for pt in p.boundary_lattice_points()? {
        let fref = minimal_face_ref(p, lattice, Side::Primal, &pt)?;
        out.entry(fref.dim).or_default().push(pt);
    }
    Ok(out)
}
