//! Hodge-number formulas for the crepant resolution and its
//! Landau-Ginzburg mirror, evaluated exactly from lattice point counts.
//!
//! Every function takes the polar pair and a [`Side`] naming which polytope
//! plays the role of the resolution's polytope; the mirror data then lives on
//! the other side. All outputs are exact integers.

use crate::error::Result;
use crate::faces::{DualPair, Side};
use crate::lattice::LatticePoint;

/// `h^{1,1}` of the crepant resolution: `l(P) - 4`.
pub fn h11_resolution(pair: &DualPair, side: Side) -> i64 {
    pair.polytope(side).point_count() - 4
}

/// Sum of `l*` over the 2-faces of `side`.
pub fn facet_star_sum(pair: &DualPair, side: Side) -> i64 {
    pair.faces(side).facets().iter().map(|f| f.ell_star()).sum()
}

/// Sum over the edges of `side` of `l*(F) * l*(F*)`, the correction term
/// shared by all the count identities.
pub fn edge_product_sum(pair: &DualPair, side: Side) -> i64 {
    pair.faces(side)
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| e.ell_star() * pair.dual_ell_star(side, 1, i))
        .sum()
}

/// `h^{2,1}` of the total space of the mirror fibration: genus contributions
/// of the blown-up curves, one per 2-face interior point of `side`.
pub fn h21_z(pair: &DualPair, side: Side) -> i64 {
    facet_star_sum(pair, side)
}

/// `h^{1,1}` of the total space from the closed form
/// `2 l(P*) - 5 - sum_{P*[2]} l* + sum_{P*[1]} l* l*(dual)`.
pub fn h11_z_closed(pair: &DualPair, side: Side) -> i64 {
    let other = side.other();
    2 * pair.polytope(other).point_count() - 5 - facet_star_sum(pair, other)
        + edge_product_sum(pair, other)
}

/// Rank of the Picard sublattice of a generic anticanonical K3 hypersurface
/// spanned by toric boundary curves:
/// `l(P) - 4 - sum_{P[2]} l* + sum_{P[1]} l* l*(dual)`, evaluated on the
/// polytope of `side`.
pub fn pic_toric_fiber(pair: &DualPair, side: Side) -> i64 {
    pair.polytope(side).point_count() - 4 - facet_star_sum(pair, side)
        + edge_product_sum(pair, side)
}

/// Rank of the cokernel of the restriction of `H^2` of the mirror total
/// space to `H^2` of a smooth K3 fiber: 22 minus the image rank, the image
/// rank being [`pic_toric_fiber`] of the other side.
///
/// This definitional route is the only one consistent with the count
/// identity: `f^{2,1} = ph - 2 + h^{2,1}(Z)` must reproduce
/// `h^{1,1}(X) = l(P) - 4`, which forces `ph = 22 - pic_toric_fiber(P*)`
/// (so `ph = 3` for the projective-space pair). A shortcut that drops the
/// `-4` from the image rank would come out smaller by exactly 2 and break
/// the identity on every example.
pub fn ph(pair: &DualPair, side: Side) -> i64 {
    22 - pic_toric_fiber(pair, side.other())
}

/// How a toric boundary divisor meets a generic anticanonical hypersurface,
/// classified by the minimal face of the corresponding boundary point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseLocusClass {
    /// Point interior to a 2-face: the divisor misses the hypersurface.
    Empty,
    /// Point interior to an edge: a union of disjoint smooth rational curves.
    RationalCurves { count: i64 },
    /// Vertex: a single smooth curve of the given genus.
    SingleCurve { genus: i64 },
}

impl BaseLocusClass {
    pub fn curve_count(&self) -> i64 {
        match *self {
            BaseLocusClass::Empty => 0,
            BaseLocusClass::RationalCurves { count } => count,
            BaseLocusClass::SingleCurve { .. } => 1,
        }
    }

    pub fn genus(&self) -> i64 {
        match *self {
            BaseLocusClass::SingleCurve { genus } => genus,
            _ => 0,
        }
    }
}

/// Per-point classification of the base locus of the anticanonical pencil,
/// i.e. the ledger of curves blown up to build the mirror total space.
///
/// `curve_count` is the direct sum over classified points; the closed form
/// `l(P*) - 1 - sum_{P*[2]} l* + sum_{P*[1]} l* l*(dual)` is carried
/// alongside so the identity between the two routes can be checked, not
/// assumed.
#[derive(Debug, Clone)]
pub struct BlowupLedger {
    entries: Vec<(LatticePoint, BaseLocusClass)>,
    curve_count: i64,
    genus_sum: i64,
    curve_count_closed_form: i64,
}

impl BlowupLedger {
    pub fn entries(&self) -> &[(LatticePoint, BaseLocusClass)] {
        &self.entries
    }

    /// Total number of irreducible curves in the base locus, summed directly.
    pub fn curve_count(&self) -> i64 {
        self.curve_count
    }

    /// Total genus of the blown-up curves.
    pub fn genus_sum(&self) -> i64 {
        self.genus_sum
    }

    /// The closed-form value for the curve count.
    pub fn curve_count_closed_form(&self) -> i64 {
        self.curve_count_closed_form
    }

    pub fn routes_agree(&self) -> bool {
        self.curve_count == self.curve_count_closed_form
    }
}

/// Classify every boundary lattice point of the dual side's polytope.
///
/// A point interior to a 2-face contributes nothing; a point interior to an
/// edge `F` contributes `1 + l*(F*)` rational curves; a vertex `v`
/// contributes a single curve whose genus is `l*` of the 2-face dual to `v`.
pub fn base_locus_ledger(pair: &DualPair, side: Side) -> Result<BlowupLedger> {
    let dual_side = side.other();
    let poly = pair.polytope(dual_side);

    let mut entries = Vec::new();
    let mut curve_count = 0;
    let mut genus_sum = 0;
    for v in poly.boundary_lattice_points()? {
        let gamma = pair.minimal_face_containing(dual_side, &v)?;
        let dual_star = pair.dual_ell_star(dual_side, gamma.dim, gamma.index);
        let class = match gamma.dim {
            0 => BaseLocusClass::SingleCurve { genus: dual_star },
            1 => BaseLocusClass::RationalCurves {
                count: 1 + dual_star,
            },
            _ => BaseLocusClass::Empty,
        };
        curve_count += class.curve_count();
        genus_sum += class.genus();
        entries.push((v, class));
    }

    let curve_count_closed_form = poly.point_count() - 1 - facet_star_sum(pair, dual_side)
        + edge_product_sum(pair, dual_side);

    Ok(BlowupLedger {
        entries,
        curve_count,
        genus_sum,
        curve_count_closed_form,
    })
}

/// Both sides of the count identity
/// `l(P) - 4 = 24 - l(P*) + sum_{P*[2]} l* - sum_{P*[1]} l* l*(dual) + sum_{P[2]} l*`,
/// computed independently. The caller asserts equality.
pub fn ks_lemma_check(pair: &DualPair, side: Side) -> (i64, i64) {
    let other = side.other();
    let lhs = pair.polytope(side).point_count() - 4;
    let rhs = 24 - pair.polytope(other).point_count() + facet_star_sum(pair, other)
        - edge_product_sum(pair, other)
        + facet_star_sum(pair, side);
    (lhs, rhs)
}

/// Both sides of the Picard-rank sum relation
/// `pic(S) + pic(S*) = 20 + sum_{P[1]} l*(F) l*(F*)`.
pub fn picard_sum_relation(pair: &DualPair) -> (i64, i64) {
    let lhs = pic_toric_fiber(pair, Side::Primal) + pic_toric_fiber(pair, Side::Dual);
    let rhs = 20 + edge_product_sum(pair, Side::Primal);
    (lhs, rhs)
}

/// The numerical invariants feeding the two Hodge diamonds.
///
/// `k` is zero for the toric family: `f^{2,2}` of the mirror vanishes, so
/// the singular fibers contribute no extra components.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ToricHodgeData {
    pub h11_x: i64,
    pub h21_z: i64,
    pub h11_z: i64,
    pub pic_toric_fiber: i64,
    pub ph: i64,
    pub k: i64,
    pub ell_delta: i64,
    pub ell_delta_dual: i64,
}

pub fn toric_hodge_data(pair: &DualPair, side: Side) -> ToricHodgeData {
    ToricHodgeData {
        h11_x: h11_resolution(pair, side),
        h21_z: h21_z(pair, side),
        h11_z: h11_z_closed(pair, side),
        pic_toric_fiber: pic_toric_fiber(pair, side.other()),
        ph: ph(pair, side),
        k: 0,
        ell_delta: pair.polytope(side).point_count(),
        ell_delta_dual: pair.polytope(side.other()).point_count(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{convex_hull, LatticePoint};

    fn pt(x: i64, y: i64, z: i64) -> LatticePoint {
        LatticePoint::new(x, y, z)
    }

    fn pair_of(vs: &[LatticePoint]) -> DualPair {
        DualPair::new(convex_hull(vs).unwrap()).unwrap()
    }

    fn cube_pair() -> DualPair {
        let mut vs = Vec::new();
        for &x in &[-1, 1] {
            for &y in &[-1, 1] {
                for &z in &[-1, 1] {
                    vs.push(pt(x, y, z));
                }
            }
        }
        pair_of(&vs)
    }

    fn oct_pair() -> DualPair {
        pair_of(&[
            pt(1, 0, 0),
            pt(-1, 0, 0),
            pt(0, 1, 0),
            pt(0, -1, 0),
            pt(0, 0, 1),
            pt(0, 0, -1),
        ])
    }

    fn p3_pair() -> DualPair {
        pair_of(&[pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1), pt(-1, -1, -1)])
    }

    #[test]
    fn h11_of_resolutions() {
        assert_eq!(h11_resolution(&p3_pair(), Side::Primal), 1);
        assert_eq!(h11_resolution(&cube_pair(), Side::Primal), 23);
        assert_eq!(h11_resolution(&oct_pair(), Side::Primal), 3);
    }

    #[test]
    fn h21_of_total_spaces() {
        assert_eq!(h21_z(&p3_pair(), Side::Primal), 0);
        assert_eq!(h21_z(&cube_pair(), Side::Primal), 6);
        assert_eq!(h21_z(&oct_pair(), Side::Primal), 0);
    }

    #[test]
    fn h11_closed_forms() {
        assert_eq!(h11_z_closed(&oct_pair(), Side::Primal), 2 * 27 - 5 - 6);
        assert_eq!(h11_z_closed(&cube_pair(), Side::Primal), 2 * 7 - 5);
        assert_eq!(h11_z_closed(&p3_pair(), Side::Primal), 2 * 35 - 5 - 12);
    }

    #[test]
    fn picard_ranks_of_fibers() {
        // Evaluated on the dual polytope of each pair.
        assert_eq!(pic_toric_fiber(&p3_pair(), Side::Dual), 19);
        assert_eq!(pic_toric_fiber(&cube_pair(), Side::Dual), 3);
        assert_eq!(pic_toric_fiber(&oct_pair(), Side::Dual), 17);
        // And on the primal side for the sum relation.
        assert_eq!(pic_toric_fiber(&p3_pair(), Side::Primal), 1);
        assert_eq!(pic_toric_fiber(&cube_pair(), Side::Primal), 17);
        assert_eq!(pic_toric_fiber(&oct_pair(), Side::Primal), 3);
    }

    #[test]
    fn ph_of_mirrors() {
        assert_eq!(ph(&p3_pair(), Side::Primal), 3);
        assert_eq!(ph(&oct_pair(), Side::Primal), 5);
        assert_eq!(ph(&cube_pair(), Side::Primal), 19);
    }

    #[test]
    fn ledger_totals_on_worked_pairs() {
        // Octahedron: the dual cube has 12 edge midpoints and 8 vertices.
        let ledger = base_locus_ledger(&oct_pair(), Side::Primal).unwrap();
        assert_eq!(ledger.curve_count(), 20);
        assert_eq!(ledger.curve_count_closed_form(), 27 - 1 - 6);
        assert!(ledger.routes_agree());
        assert_eq!(ledger.genus_sum(), 0);

        // Cube: the dual octahedron has 6 vertices, each blowing up a genus-1
        // curve (the dual cube facets each have one interior point).
        let ledger = base_locus_ledger(&cube_pair(), Side::Primal).unwrap();
        assert_eq!(ledger.curve_count(), 6);
        assert_eq!(ledger.curve_count_closed_form(), 7 - 1);
        assert!(ledger.routes_agree());
        assert_eq!(ledger.genus_sum(), 6);
        assert_eq!(ledger.genus_sum(), h21_z(&cube_pair(), Side::Primal));

        // The anticanonical simplex of the projective-space pair has 34
        // boundary points; all blown-up curves are rational.
        let ledger = base_locus_ledger(&p3_pair(), Side::Primal).unwrap();
        assert_eq!(ledger.entries().len(), 34);
        assert_eq!(ledger.genus_sum(), 0);
        assert_eq!(ledger.curve_count(), 4 + 18);
        assert!(ledger.routes_agree());
    }

    #[test]
    fn ledger_is_consistent_with_h11() {
        for pair in [cube_pair(), oct_pair(), p3_pair()] {
            let ledger = base_locus_ledger(&pair, Side::Primal).unwrap();
            let expected = pair.polytope(Side::Dual).point_count() - 4 + ledger.curve_count();
            assert_eq!(h11_z_closed(&pair, Side::Primal), expected);
        }
    }

    #[test]
    fn count_identity_on_worked_pairs() {
        assert_eq!(ks_lemma_check(&oct_pair(), Side::Primal), (3, 3));
        assert_eq!(ks_lemma_check(&cube_pair(), Side::Primal), (23, 23));
        assert_eq!(ks_lemma_check(&p3_pair(), Side::Primal), (1, 1));
        // Both orientations.
        assert_eq!(ks_lemma_check(&p3_pair(), Side::Dual), (31, 31));
    }

    #[test]
    fn picard_sum_on_worked_pairs() {
        assert_eq!(picard_sum_relation(&cube_pair()), (20, 20));
        assert_eq!(picard_sum_relation(&oct_pair()), (20, 20));
        assert_eq!(picard_sum_relation(&p3_pair()), (20, 20));
    }

    #[test]
    fn edge_product_sum_is_symmetric() {
        for pair in [cube_pair(), oct_pair(), p3_pair()] {
            assert_eq!(
                edge_product_sum(&pair, Side::Primal),
                edge_product_sum(&pair, Side::Dual)
            );
        }
    }
}
