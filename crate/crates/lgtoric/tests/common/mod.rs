//! Independent oracles shared by the integration suites.
//!
//! Nothing here calls into the code paths under test: facets come from an
//! exhaustive search over point triples, lattice points from a standalone
//! box scan against those facets, and matrix ranks from fraction-free
//! elimination. These are the reference values the implementation is held
//! to.

#![allow(dead_code)]

use std::path::PathBuf;

use lgtoric::census::{parse_simple, CensusEntry};
use lgtoric::{DualPair, Face, LatticePoint, LatticePolytope, Side};

/// A facet as `(inward primitive normal, offset)`, meaning
/// `<n, x> >= -offset` for all points.
pub type OracleFacet = ([i64; 3], i64);

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn sub(a: [i64; 3], b: [i64; 3]) -> [i64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: [i64; 3], b: [i64; 3]) -> [i64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot(a: [i64; 3], b: [i64; 3]) -> i64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Every supporting plane through some triple of input points, found by
/// exhaustive search.
pub fn brute_force_facets(points: &[[i64; 3]]) -> Vec<OracleFacet> {
    let mut facets: Vec<OracleFacet> = Vec::new();
    let n = points.len();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let normal = cross(sub(points[j], points[i]), sub(points[k], points[i]));
                if normal == [0, 0, 0] {
                    continue;
                }
                let g = gcd(gcd(normal[0], normal[1]), normal[2]);
                let normal = [normal[0] / g, normal[1] / g, normal[2] / g];
                let d = dot(normal, points[i]);
                let above = points.iter().any(|p| dot(normal, *p) > d);
                let below = points.iter().any(|p| dot(normal, *p) < d);
                if above && below {
                    continue;
                }
                // Orient inward.
                let facet = if above {
                    (normal, -d)
                } else {
                    ([-normal[0], -normal[1], -normal[2]], d)
                };
                if !facets.contains(&facet) {
                    facets.push(facet);
                }
            }
        }
    }
    facets.sort();
    facets
}

/// Standalone bounding-box scan against a facet list.
pub fn brute_force_lattice_points(points: &[[i64; 3]], facets: &[OracleFacet]) -> Vec<[i64; 3]> {
    let mut lo = [i64::MAX; 3];
    let mut hi = [i64::MIN; 3];
    for p in points {
        for i in 0..3 {
            lo[i] = lo[i].min(p[i]);
            hi[i] = hi[i].max(p[i]);
        }
    }
    let mut out = Vec::new();
    for x in lo[0]..=hi[0] {
        for y in lo[1]..=hi[1] {
            for z in lo[2]..=hi[2] {
                let p = [x, y, z];
                if facets.iter().all(|(n, c)| dot(*n, p) + c >= 0) {
                    out.push(p);
                }
            }
        }
    }
    out
}

/// Count lattice points lying on exactly the given subset of facets
/// (`l*` of the face those facets cut out) and on at least that subset
/// (`l` of the face).
pub fn brute_force_face_counts(
    lattice_points: &[[i64; 3]],
    facets: &[OracleFacet],
    face_facets: &[usize],
) -> (i64, i64) {
    let mut ell = 0;
    let mut ell_star = 0;
    for p in lattice_points {
        let on: Vec<usize> = facets
            .iter()
            .enumerate()
            .filter(|(_, (n, c))| dot(*n, *p) + c == 0)
            .map(|(i, _)| i)
            .collect();
        if face_facets.iter().all(|f| on.contains(f)) {
            ell += 1;
            if on == face_facets {
                ell_star += 1;
            }
        }
    }
    (ell, ell_star)
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
///
/// Panics on overflow; the boundary operators under test are totally
/// unimodular, so intermediate values stay tiny.
pub fn bareiss_rank(matrix: &[Vec<i128>]) -> usize {
    let mut m: Vec<Vec<i128>> = matrix.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev: i128 = 1;
    for col in 0..cols {
        let Some(pivot_row) = (rank..rows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot_row);
        let pivot = m[rank][col];
        for r in 0..rows {
            if r == rank {
                continue;
            }
            for c in 0..cols {
                if c == col {
                    continue;
                }
                let num = pivot
                    .checked_mul(m[r][c])
                    .and_then(|a| m[r][col].checked_mul(m[rank][c]).map(|b| a - b))
                    .expect("Bareiss overflow");
                m[r][c] = num / prev;
            }
            m[r][col] = 0;
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

pub fn pt(x: i64, y: i64, z: i64) -> LatticePoint {
    LatticePoint::new(x, y, z)
}

pub fn cube_vertices() -> Vec<LatticePoint> {
    let mut vs = Vec::new();
    for &x in &[-1i64, 1] {
        for &y in &[-1i64, 1] {
            for &z in &[-1i64, 1] {
                vs.push(pt(x, y, z));
            }
        }
    }
    vs
}

pub fn octahedron_vertices() -> Vec<LatticePoint> {
    vec![
        pt(1, 0, 0),
        pt(-1, 0, 0),
        pt(0, 1, 0),
        pt(0, -1, 0),
        pt(0, 0, 1),
        pt(0, 0, -1),
    ]
}

pub fn p3_vertices() -> Vec<LatticePoint> {
    vec![pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1), pt(-1, -1, -1)]
}

pub fn pair_of(vertices: &[LatticePoint]) -> DualPair {
    DualPair::new(lgtoric::convex_hull(vertices).unwrap()).unwrap()
}

pub fn workspace_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .canonicalize()
        .expect("workspace root")
}

/// The bundled fixture polytopes.
pub fn fixture_entries() -> Vec<CensusEntry> {
    let path = workspace_root().join("data/fixtures.json");
    let text = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("cannot read {}: {e}", path.display()));
    parse_simple(&text).expect("fixtures parse")
}

/// The full census, when a copy has been supplied (either at
/// `data/census/RefPoly.d3` or via the `LGTORIC_CENSUS` environment
/// variable). `None` means the census tier is skipped.
pub fn census_entries() -> Option<Vec<CensusEntry>> {
    let path = std::env::var_os("LGTORIC_CENSUS")
        .map(PathBuf::from)
        .unwrap_or_else(|| workspace_root().join("data/census/RefPoly.d3"));
    let text = std::fs::read_to_string(&path).ok()?;
    Some(lgtoric::census::parse_any(&text).expect("census file parses"))
}

/// Recompute, by the independent scan, every face count of one side of a
/// pair, and check them against the counts the implementation consumed.
pub fn assert_face_counts_against_oracle(pair: &DualPair, side: Side) {
    let poly: &LatticePolytope = pair.polytope(side);
    let verts: Vec<[i64; 3]> = poly.vertices().iter().map(|v| v.coords()).collect();
    let oracle_facets = brute_force_facets(&verts);

    let impl_facets: Vec<OracleFacet> = poly
        .facets()
        .iter()
        .map(|f| (f.normal().coords(), f.offset()))
        .collect();
    assert_eq!(
        impl_facets, oracle_facets,
        "facet systems disagree with the triple-search oracle"
    );

    let oracle_points = brute_force_lattice_points(&verts, &oracle_facets);
    let impl_points: Vec<[i64; 3]> = poly.lattice_points().iter().map(|p| p.coords()).collect();
    assert_eq!(impl_points, oracle_points, "lattice point scans disagree");

    for face in pair.faces(side).all_faces() {
        let (ell, ell_star) =
            brute_force_face_counts(&oracle_points, &oracle_facets, face.facet_ids());
        assert_eq!(face.ell(), ell, "face l disagrees with oracle recount");
        assert_eq!(
            face.ell_star(),
            ell_star,
            "face l* disagrees with oracle recount"
        );
    }
}

/// Face lookup helper: the face of `side` with the given facet index set.
pub fn face_by_facets<'p>(pair: &'p DualPair, side: Side, facets: &[usize]) -> Option<&'p Face> {
    pair.faces(side)
        .all_faces()
        .find(|f| f.facet_ids() == facets)
}
