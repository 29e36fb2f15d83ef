//! Hodge diamonds of both mirror partners and the entrywise verification of
//! the mirror pairing `h^{p,q}(X) = f^{3-q,p}(Y,w)`, together with all the
//! count identities the pairing rests on.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::faces::{DualPair, Side};
use crate::hodge::{
    self, base_locus_ledger, h11_z_closed, h21_z, ks_lemma_check, picard_sum_relation,
    toric_hodge_data, ToricHodgeData,
};
use crate::sphere::{sphere_check_pair, SphereCheck};

/// Which variety a diamond describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiamondKind {
    /// `h^{p,q}` of the smooth toric threefold.
    FanoHpq,
    /// `f^{p,q}` of its Landau-Ginzburg mirror.
    LgFpq,
}

/// A 4x4 grid of Hodge numbers indexed by `(p, q)` with `p, q` in `0..=3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HodgeDiamond {
    kind: DiamondKind,
    entries: [[i64; 4]; 4],
}

impl HodgeDiamond {
    pub fn kind(&self) -> DiamondKind {
        self.kind
    }

    pub fn entry(&self, p: usize, q: usize) -> i64 {
        self.entries[p][q]
    }

    pub fn entries(&self) -> &[[i64; 4]; 4] {
        &self.entries
    }

    /// `entry(p, q) == entry(q, p)` for all p, q.
    pub fn is_symmetric(&self) -> bool {
        (0..4).all(|p| (0..4).all(|q| self.entries[p][q] == self.entries[q][p]))
    }

    /// `entry(p, q) == entry(3-p, 3-q)` for all p, q.
    pub fn is_rotation_symmetric(&self) -> bool {
        (0..4).all(|p| (0..4).all(|q| self.entries[p][q] == self.entries[3 - p][3 - q]))
    }

    /// Mirror-side zero pattern: entries vanish away from `(1,1)`, `(2,2)`
    /// and the antidiagonal `p + q = 3`.
    pub fn zero_pattern_holds(&self) -> bool {
        (0..4).all(|p| {
            (0..4).all(|q| {
                let allowed = (p == 1 && q == 1) || (p == 2 && q == 2) || (p + q == 3);
                allowed || self.entries[p][q] == 0
            })
        })
    }
}

impl std::fmt::Display for HodgeDiamond {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let label = match self.kind {
            DiamondKind::FanoHpq => "h^{p,q}",
            DiamondKind::LgFpq => "f^{p,q}",
        };
        writeln!(f, "{label}  (rows p = 0..3, columns q = 0..3)")?;
        for p in 0..4 {
            let row: Vec<String> = (0..4)
                .map(|q| format!("{:>4}", self.entries[p][q]))
                .collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Assemble the mirror-side diamond from its three parameters:
/// `f^{3,0} = f^{0,3} = 1`, `f^{2,1} = f^{1,2} = ph - 2 + h12z`,
/// `f^{1,1} = f^{2,2} = k`, all other entries zero.
///
/// # Errors
/// `InvalidParameter` when `ph < 2` (the antidiagonal entry would go
/// negative) or a negative `k`/`h12z` is supplied.
pub fn assemble_f_diamond(ph: i64, k: i64, h12z: i64) -> Result<HodgeDiamond> {
    if ph < 2 {
        return Err(Error::InvalidParameter(format!(
            "ph = {ph}, but the diamond needs ph >= 2"
        )));
    }
    if k < 0 || h12z < 0 {
        return Err(Error::InvalidParameter(format!(
            "negative diamond parameter: k = {k}, h12z = {h12z}"
        )));
    }
    let mut e = [[0i64; 4]; 4];
    e[3][0] = 1;
    e[0][3] = 1;
    e[2][1] = ph - 2 + h12z;
    e[1][2] = ph - 2 + h12z;
    e[1][1] = k;
    e[2][2] = k;
    Ok(HodgeDiamond {
        kind: DiamondKind::LgFpq,
        entries: e,
    })
}

/// Diamond of the smooth toric threefold: diagonal `(1, l - 4, l - 4, 1)`,
/// zero off the diagonal.
pub fn toric_hodge_diamond(pair: &DualPair, side: Side) -> HodgeDiamond {
    let h11 = hodge::h11_resolution(pair, side);
    let mut e = [[0i64; 4]; 4];
    e[0][0] = 1;
    e[1][1] = h11;
    e[2][2] = h11;
    e[3][3] = 1;
    HodgeDiamond {
        kind: DiamondKind::FanoHpq,
        entries: e,
    }
}

/// The index pairing of mirror symmetry for threefolds.
pub fn mirror_index(p: usize, q: usize) -> (usize, usize) {
    (3 - q, p)
}

/// One comparison `h^{p,q}(X)` against `f^{3-q,p}(Y,w)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MirrorEntry {
    pub p: usize,
    pub q: usize,
    pub fano: i64,
    pub lg: i64,
}

impl MirrorEntry {
    pub fn passes(&self) -> bool {
        self.fano == self.lg
    }
}

/// A named two-sided identity check; both sides are kept so a failing census
/// entry shows its residual instead of a bare boolean.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub lhs: i64,
    pub rhs: i64,
}

impl IdentityCheck {
    pub fn passes(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Everything verified for one polytope: the invariants, both diamonds, the
/// sixteen mirror equalities, the count identities, and the sphere
/// certificate; `overall_pass` holds exactly when every sub-check does.
#[derive(Debug, Clone)]
pub struct VerificationRecord {
    pub id: usize,
    pub data: ToricHodgeData,
    pub fano_diamond: HodgeDiamond,
    pub lg_diamond: Option<HodgeDiamond>,
    pub mirror_entries: Vec<MirrorEntry>,
    pub identities: Vec<IdentityCheck>,
    pub sphere: SphereCheck,
    /// All 2-faces of the polytope are free of interior points; when set,
    /// the fibration has no reducible fibers away from infinity to account
    /// for, so `h^{2,1}` of the total space must vanish.
    pub extremal_flag: bool,
    pub elapsed: Duration,
}

impl VerificationRecord {
    pub fn mirror_ok(&self) -> bool {
        self.lg_diamond.is_some() && self.mirror_entries.iter().all(MirrorEntry::passes)
    }

    pub fn identities_ok(&self) -> bool {
        self.identities.iter().all(IdentityCheck::passes)
    }

    pub fn sphere_ok(&self) -> bool {
        self.sphere.is_sphere()
    }

    pub fn overall_pass(&self) -> bool {
        self.mirror_ok() && self.identities_ok() && self.sphere_ok()
    }

    pub fn identity(&self, name: &str) -> Option<&IdentityCheck> {
        self.identities.iter().find(|c| c.name == name)
    }
}

/// Run the full verification pipeline on a polar pair.
///
/// Identity failures are recorded in the result, never raised; only
/// construction-level problems (overflow, internal inconsistencies)
/// propagate as errors.
pub fn verify_mirror(pair: &DualPair, id: usize) -> Result<VerificationRecord> {
    let start = Instant::now();
    let side = Side::Primal;
    let data = toric_hodge_data(pair, side);

    let fano_diamond = toric_hodge_diamond(pair, side);
    let lg_diamond = match assemble_f_diamond(data.ph, data.k, data.h21_z) {
        Ok(d) => Some(d),
        Err(Error::InvalidParameter(_)) => None,
        Err(e) => return Err(e),
    };

    let mut mirror_entries = Vec::with_capacity(16);
    if let Some(lg) = &lg_diamond {
        for p in 0..4 {
            for q in 0..4 {
                let (mp, mq) = mirror_index(p, q);
                mirror_entries.push(MirrorEntry {
                    p,
                    q,
                    fano: fano_diamond.entry(p, q),
                    lg: lg.entry(mp, mq),
                });
            }
        }
    }

    let ledger = base_locus_ledger(pair, side)?;
    let sphere = sphere_check_pair(pair, side)?;

    let mut identities = Vec::new();
    let (lhs, rhs) = ks_lemma_check(pair, side);
    identities.push(IdentityCheck {
        name: "count_identity",
        lhs,
        rhs,
    });
    let (lhs, rhs) = ks_lemma_check(pair, side.other());
    identities.push(IdentityCheck {
        name: "count_identity_dual",
        lhs,
        rhs,
    });
    identities.push(IdentityCheck {
        name: "curve_count_two_routes",
        lhs: ledger.curve_count(),
        rhs: ledger.curve_count_closed_form(),
    });
    identities.push(IdentityCheck {
        name: "h11_z_from_ledger",
        lhs: h11_z_closed(pair, side),
        rhs: pair.polytope(side.other()).point_count() - 4 + ledger.curve_count(),
    });
    identities.push(IdentityCheck {
        name: "h21_z_is_genus_sum",
        lhs: h21_z(pair, side),
        rhs: ledger.genus_sum(),
    });
    let (lhs, rhs) = picard_sum_relation(pair);
    identities.push(IdentityCheck {
        name: "picard_rank_sum",
        lhs,
        rhs,
    });
    for s in [Side::Primal, Side::Dual] {
        let star_sum: i64 = pair.faces(s).all_faces().map(|f| f.ell_star()).sum();
        identities.push(IdentityCheck {
            name: match s {
                Side::Primal => "point_count_partition",
                Side::Dual => "point_count_partition_dual",
            },
            lhs: pair.polytope(s).point_count(),
            rhs: 1 + star_sum,
        });
    }
    let extremal_flag = pair.faces(side).facets().iter().all(|f| f.ell_star() == 0);
    identities.push(IdentityCheck {
        name: "extremal_implies_h21_zero",
        lhs: if extremal_flag { h21_z(pair, side) } else { 0 },
        rhs: 0,
    });
    // ph must be in the diamond's domain; equality encodes ph >= 2 because
    // the census keeps ph well above the bound.
    identities.push(IdentityCheck {
        name: "ph_in_domain",
        lhs: i64::from(data.ph >= 2),
        rhs: 1,
    });

    Ok(VerificationRecord {
        id,
        data,
        fano_diamond,
        lg_diamond,
        mirror_entries,
        identities,
        sphere,
        extremal_flag,
        elapsed: start.elapsed(),
    })
}

/// Extremality of a local system on the projective line minus the critical
/// set: the local non-invariant ranks must sum to twice the rank.
pub fn check_extremal(local_ranks: &[i64], rank: i64) -> bool {
    local_ranks.iter().sum::<i64>() == 2 * rank
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
    fn f_diamond_worked_parameters() {
        let d = assemble_f_diamond(3, 0, 0).unwrap();
        assert_eq!(d.entry(3, 0), 1);
        assert_eq!(d.entry(0, 3), 1);
        assert_eq!(d.entry(2, 1), 1);
        assert_eq!(d.entry(1, 2), 1);
        assert_eq!(d.entry(0, 0), 0);
        assert_eq!(d.entry(3, 3), 0);

        let d = assemble_f_diamond(2, 0, 0).unwrap();
        assert_eq!(d.entry(2, 1), 0);
        let nonzero: i64 = (0..4)
            .map(|p| (0..4).map(|q| d.entry(p, q)).sum::<i64>())
            .sum();
        assert_eq!(nonzero, 2, "only the two corner ones survive");

        let d = assemble_f_diamond(19, 0, 6).unwrap();
        assert_eq!(d.entry(2, 1), 23);
    }

    #[test]
    fn f_diamond_rejects_bad_parameters() {
        assert!(matches!(
            assemble_f_diamond(1, 0, 0),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            assemble_f_diamond(3, -1, 0),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn f_diamond_symmetries() {
        for (ph, k, h12z) in [(3, 0, 0), (5, 2, 7), (19, 0, 6), (2, 11, 0)] {
            let d = assemble_f_diamond(ph, k, h12z).unwrap();
            assert!(d.is_symmetric());
            assert!(d.is_rotation_symmetric());
            assert!(d.zero_pattern_holds());
        }
    }

    #[test]
    fn toric_diamonds_are_diagonal() {
        let d = toric_hodge_diamond(&p3_pair(), Side::Primal);
        assert_eq!(
            (0..4).map(|i| d.entry(i, i)).collect::<Vec<_>>(),
            vec![1, 1, 1, 1]
        );
        let d = toric_hodge_diamond(&cube_pair(), Side::Primal);
        assert_eq!(
            (0..4).map(|i| d.entry(i, i)).collect::<Vec<_>>(),
            vec![1, 23, 23, 1]
        );
        let d = toric_hodge_diamond(&oct_pair(), Side::Primal);
        assert_eq!(d.entry(1, 1), 3);
        assert!(d.is_symmetric());
    }

    #[test]
    fn mirror_index_has_period_four() {
        for p in 0..4 {
            for q in 0..4 {
                let mut idx = (p, q);
                for _ in 0..4 {
                    idx = mirror_index(idx.0, idx.1);
                }
                assert_eq!(idx, (p, q));
            }
        }
    }

    #[test]
    fn worked_pairs_verify() {
        for (pair, h11, f21) in [(p3_pair(), 1, 1), (cube_pair(), 23, 23), (oct_pair(), 3, 3)] {
            let rec = verify_mirror(&pair, 0).unwrap();
            assert!(rec.overall_pass(), "failed record: {rec:?}");
            assert_eq!(rec.fano_diamond.entry(1, 1), h11);
            assert_eq!(rec.lg_diamond.unwrap().entry(2, 1), f21);
            assert_eq!(rec.mirror_entries.len(), 16);
        }
    }

    #[test]
    fn p3_matches_the_rank_one_values() {
        let rec = verify_mirror(&p3_pair(), 0).unwrap();
        assert_eq!(rec.data.ph, 3);
        assert_eq!(rec.data.h21_z, 0);
        assert_eq!(rec.data.pic_toric_fiber, 19);
        assert!(rec.extremal_flag);
    }

    #[test]
    fn extremality_counter() {
        assert!(check_extremal(&[2, 2, 2], 3));
        assert!(!check_extremal(&[1, 1, 1], 3));
        assert!(check_extremal(&[2, 2, 1, 1], 3));
    }
}
