//! Global bookkeeping: assemble the per-place local dimensions and the
//! coinvariant dimension into the four-term exact sequence
//!
//!   0 -> Ker -> (sum of local terms at bad places and infinity)
//!     -> E[l]_{G_F} -> Coker -> 0
//!
//! and report dim Ker and dim Coker. When the boundary map is surjective
//! (full torsion or split-Cartan case) the cokernel vanishes and the kernel
//! is pinned; otherwise the exact sequence only bounds the split and the
//! report carries intervals. Undetermined local verdicts widen the middle
//! sum by [0, 2] per place.

use crate::curve::{bad_places, GlobalCurve};
use crate::error::Result;
use crate::funcfield::{Place, XPoly};
use crate::localdim::{
    classify_reduction, local_dim_from_info, LocalDim, LocalVerdict, ReductionInfo,
};
use crate::modl::{classify, surjectivity_flag, DimVerdict, ModLClass};
use crate::ring::Ring;

/// An integer dimension, possibly only known within bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DimBound {
    Known(i64),
    Interval(i64, i64),
}

impl DimBound {
    pub fn lo(&self) -> i64 {
        match self {
            DimBound::Known(v) => *v,
            DimBound::Interval(lo, _) => *lo,
        }
    }
    pub fn hi(&self) -> i64 {
        match self {
            DimBound::Known(v) => *v,
            DimBound::Interval(_, hi) => *hi,
        }
    }
    pub fn known(&self) -> Option<i64> {
        match self {
            DimBound::Known(v) => Some(*v),
            DimBound::Interval(_, _) => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Applicability {
    /// E[l]_{G_F} != 0: the exact sequence applies.
    Applicable,
    /// E[l]_{G_F} = 0: the hypothesis fails; only local data is reported.
    HypothesisFails,
    /// The coinvariant dimension is undetermined.
    Unknown,
}

#[derive(Clone)]
pub struct PlaceReport {
    pub info: ReductionInfo,
    pub dim: LocalDim,
}

#[derive(Clone)]
pub struct GlobalReport {
    pub curve: GlobalCurve,
    pub l: u64,
    /// Bad places other than infinity, sorted.
    pub bad_finite: Vec<PlaceReport>,
    /// The place at infinity, always part of the middle term.
    pub infinity: PlaceReport,
    pub modl: ModLClass,
    /// Sum of the local dimensions over bad finite places and infinity.
    pub sum_local: DimBound,
    pub applicable: Applicability,
    pub surjective: bool,
    pub ker_dim: Option<DimBound>,
    pub coker_dim: Option<DimBound>,
}

impl GlobalReport {
    /// sum - coinv - (ker - coker); zero whenever everything is known.
    pub fn exactness_residual(&self) -> Option<i64> {
        let sum = self.sum_local.known()?;
        let coinv = self.modl.coinv_dim.known()? as i64;
        let ker = self.ker_dim.as_ref()?.known()?;
        let coker = self.coker_dim.as_ref()?.known()?;
        Some(sum - coinv - (ker - coker))
    }
}

/// Run the full pipeline: bad places, local dimensions, mod-l
/// classification, and the exact-sequence bookkeeping.
pub fn build_report(c: &GlobalCurve, l: u64, extra_kernels: &[XPoly]) -> Result<GlobalReport> {
    let places = bad_places(c)?;
    let mut bad_finite = Vec::new();
    for place in places.iter().filter(|p| !p.is_infinity()) {
        let info = classify_reduction(c, place)?;
        let dim = local_dim_from_info(&info, l)?;
        bad_finite.push(PlaceReport { info, dim });
    }
    let inf = Place::infinity(c.field().base());
    let info = classify_reduction(c, &inf)?;
    let dim = local_dim_from_info(&info, l)?;
    let infinity = PlaceReport { info, dim };

    let modl = classify(c, l, extra_kernels)?;
    let surjective = surjectivity_flag(&modl);

    let mut known_sum: i64 = 0;
    let mut undetermined = 0i64;
    for pr in bad_finite.iter().chain(std::iter::once(&infinity)) {
        match pr.dim.verdict {
            LocalVerdict::Known(d) => known_sum += d as i64,
            LocalVerdict::Undetermined(_) => undetermined += 1,
        }
    }
    let sum_local = if undetermined == 0 {
        DimBound::Known(known_sum)
    } else {
        DimBound::Interval(known_sum, known_sum + 2 * undetermined)
    };

    let applicable = match &modl.coinv_dim {
        DimVerdict::Known(0) => Applicability::HypothesisFails,
        DimVerdict::Known(_) => Applicability::Applicable,
        DimVerdict::Undetermined(_) => Applicability::Unknown,
    };

    let (ker_dim, coker_dim) = match (applicable, &modl.coinv_dim) {
        (Applicability::Applicable, DimVerdict::Known(coinv)) => {
            let d = *coinv as i64;
            if surjective {
                // Coker = 0 and Ker = sum - coinv exactly
                let ker = match sum_local {
                    DimBound::Known(s) => {
                        debug_assert!(s - d >= 0, "exactness forces ker >= 0 under surjectivity");
                        DimBound::Known(s - d)
                    }
                    DimBound::Interval(lo, hi) => DimBound::Interval((lo - d).max(0), hi - d),
                };
                (Some(ker), Some(DimBound::Known(0)))
            } else {
                // ker - coker = sum - coinv with 0 <= coker <= coinv
                let ker = DimBound::Interval((sum_local.lo() - d).max(0), sum_local.hi());
                let coker = DimBound::Interval((d - sum_local.hi()).max(0), d);
                (Some(normalize(ker)), Some(normalize(coker)))
            }
        }
        _ => (None, None),
    };

    Ok(GlobalReport {
        curve: c.clone(),
        l,
        bad_finite,
        infinity,
        modl,
        sum_local,
        applicable,
        surjective,
        ker_dim,
        coker_dim,
    })
}

fn normalize(b: DimBound) -> DimBound {
    match b {
        DimBound::Interval(lo, hi) if lo == hi => DimBound::Known(lo),
        other => other,
    }
}

/// Torsion structures allowed for a non-isotrivial curve over F_q(t) with
/// torsion order prime to p: cyclic of order 1..10 or 12, Z/2 x Z/2m for
/// m <= 4, and (Z/3)^2, Z/3 x Z/6, (Z/4)^2, (Z/5)^2. In particular the
/// l-torsion rank can be 2 only for l in {2, 3, 5} and nonzero only for
/// l in {2, 3, 5, 7}.
#[derive(Clone, Debug)]
pub struct SanityReport {
    pub isotrivial: bool,
    /// (l, rank) for the primes checked.
    pub ranks: Vec<(u64, u8)>,
    pub warnings: Vec<String>,
}

/// Advisory check of computed torsion ranks against the allowed list.
pub fn torsion_sanity(c: &GlobalCurve) -> Result<SanityReport> {
    let k = c.field();
    let j = c.invariants().j;
    let isotrivial = j.as_constant().is_some();
    let mut ranks = Vec::new();
    let mut warnings = Vec::new();
    if isotrivial {
        warnings.push("curve is isotrivial (constant j); the torsion list does not apply".into());
        return Ok(SanityReport {
            isotrivial,
            ranks,
            warnings,
        });
    }
    for l in [2u64, 3, 5, 7] {
        if l == k.characteristic() {
            continue;
        }
        let rank = match crate::modl::rational_l_torsion(c, l) {
            Ok(t) => t.rank,
            Err(crate::error::Error::CandidateCapExceeded { .. }) => {
                warnings.push(format!("l = {l}: torsion search hit the candidate cap"));
                continue;
            }
            Err(e) => return Err(e),
        };
        ranks.push((l, rank));
        if rank == 2 && !matches!(l, 2 | 3 | 5) {
            warnings.push(format!(
                "rank-2 {l}-torsion contradicts the allowed torsion structures"
            ));
        }
        if rank >= 1 && !matches!(l, 2 | 3 | 5 | 7) {
            warnings.push(format!(
                "rational {l}-torsion contradicts the allowed torsion structures"
            ));
        }
    }
    Ok(SanityReport {
        isotrivial,
        ranks,
        warnings,
    })
}
