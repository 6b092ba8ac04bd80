//! Reduction types at a place and the local dimension dim V(E_v)/l.
//!
//! For residue characteristic > 3 the type falls out of the minimal-model
//! valuations: good when v(disc) = 0, multiplicative when v(c4) = 0 <
//! v(disc), additive otherwise. A multiplicative fiber is split exactly
//! when gamma = -c4/c6 is a square in the local field. The Tate parameter
//! is never expanded: v(q) = -v(j) and its leading coefficient is the
//! inverse of the leading coefficient of j, which decides l-th-power
//! membership for l != p.

use crate::curve::{minimal_model_at, specialize, FiniteCurve, GlobalCurve, LocalModel};
use crate::ellgroup::l_torsion_rank;
use crate::error::{Error, Result};
use crate::funcfield::{LocalLeading, Place};
use crate::gf::FieldElem;
use crate::ring::{Field, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionType {
    Good,
    SplitMultiplicative,
    NonsplitMultiplicative,
    Additive,
}

impl ReductionType {
    pub fn is_multiplicative(&self) -> bool {
        matches!(
            self,
            ReductionType::SplitMultiplicative | ReductionType::NonsplitMultiplicative
        )
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            ReductionType::Good => "good",
            ReductionType::SplitMultiplicative => "split_multiplicative",
            ReductionType::NonsplitMultiplicative => "nonsplit_multiplicative",
            ReductionType::Additive => "additive",
        }
    }
}

/// Valuation and leading coefficient of the Tate parameter, read off the
/// j-invariant.
#[derive(Clone, Debug)]
pub struct TatePeriodInfo {
    /// v(q) = -v(j) > 0.
    pub vq: i64,
    /// Leading coefficient of q: the inverse of the leading coefficient of j.
    pub q_leading: FieldElem,
}

#[derive(Clone)]
pub struct ReductionInfo {
    pub place: Place,
    pub model: LocalModel,
    pub rtype: ReductionType,
    /// Local data of gamma = -c4/c6 (multiplicative case only).
    pub gamma: Option<LocalLeading>,
    /// Tate parameter data (multiplicative case only).
    pub tate: Option<TatePeriodInfo>,
}

impl ReductionInfo {
    pub fn residue_order(&self) -> u64 {
        self.place.residue_order()
    }

    /// The special fiber, for good reduction.
    pub fn reduced_curve(&self) -> Result<FiniteCurve> {
        if self.rtype != ReductionType::Good {
            return Err(Error::WrongReductionType { expected: "good" });
        }
        let mp = self.model.measuring_place()?;
        specialize(&self.model.model, &mp)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UndeterminedReason {
    /// Additive reduction: only an injection into a good-reduction group
    /// over an extension is available, not a dimension.
    AdditiveReduction,
    /// Non-split multiplicative with l = 2, or l = 3 when 3 divides both
    /// v(j) and falls outside the covered residue conditions.
    NonsplitUncovered,
}

impl UndeterminedReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            UndeterminedReason::AdditiveReduction => "additive_reduction",
            UndeterminedReason::NonsplitUncovered => "nonsplit_uncovered",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalVerdict {
    Known(u8),
    Undetermined(UndeterminedReason),
}

impl LocalVerdict {
    pub fn known(&self) -> Option<u8> {
        match self {
            LocalVerdict::Known(d) => Some(*d),
            LocalVerdict::Undetermined(_) => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct LocalDim {
    pub place: Place,
    pub l: u64,
    pub verdict: LocalVerdict,
}

/// Classify the reduction of c at a place (independent of l).
pub fn classify_reduction(c: &GlobalCurve, place: &Place) -> Result<ReductionInfo> {
    let model = minimal_model_at(c, place)?;
    if model.vdisc == 0 {
        return Ok(ReductionInfo {
            place: place.clone(),
            model,
            rtype: ReductionType::Good,
            gamma: None,
            tate: None,
        });
    }
    let multiplicative = model.vc4 == Some(0);
    if !multiplicative {
        return Ok(ReductionInfo {
            place: place.clone(),
            model,
            rtype: ReductionType::Additive,
            gamma: None,
            tate: None,
        });
    }
    let k = c.field();
    let mp = model.measuring_place()?;
    let inv = model.model.invariants();
    debug_assert!(
        !k.is_zero(&inv.c6),
        "multiplicative reduction forces c6 != 0"
    );
    let gamma = k.div(&k.neg(&inv.c4), &inv.c6)?;
    let gl = mp.leading_at(&gamma)?;
    let split = gl.valuation % 2 == 0 && mp.residue_field().is_square(&gl.leading)?;
    let jl = mp.leading_at(&inv.j)?;
    debug_assert!(jl.valuation < 0, "multiplicative reduction has a j-pole");
    let tate = TatePeriodInfo {
        vq: -jl.valuation,
        q_leading: jl.leading.inv()?,
    };
    Ok(ReductionInfo {
        place: place.clone(),
        model,
        rtype: if split {
            ReductionType::SplitMultiplicative
        } else {
            ReductionType::NonsplitMultiplicative
        },
        gamma: Some(gl),
        tate: Some(tate),
    })
}

/// Whether the Tate parameter is an l-th power in the local field: true iff
/// l | v(q) and the leading coefficient of q is an l-th power in the
/// residue field (the higher unit group is l-divisible for l != p).
pub fn tate_is_lth_power(info: &ReductionInfo, l: u64) -> Result<bool> {
    let tate = info.tate.as_ref().ok_or(Error::WrongReductionType {
        expected: "multiplicative",
    })?;
    let p = info.place.base().p();
    if l == p {
        return Err(Error::LEqualsCharacteristic { l });
    }
    if tate.vq % l as i64 != 0 {
        return Ok(false);
    }
    info.model
        .measuring_place()?
        .residue_field()
        .is_lth_power(&tate.q_leading, l)
}

/// dim V(E_v)/l from the classified reduction:
/// good fibers give the l-torsion rank of the reduction,
/// split multiplicative fibers give 1 exactly when l | #k^x and the Tate
/// parameter is an l-th power, non-split fibers vanish in the covered
/// cases, and additive fibers stay undetermined.
pub fn local_dim(c: &GlobalCurve, place: &Place, l: u64) -> Result<LocalDim> {
    let info = classify_reduction(c, place)?;
    local_dim_from_info(&info, l)
}

pub fn local_dim_from_info(info: &ReductionInfo, l: u64) -> Result<LocalDim> {
    let p = info.place.base().p();
    if l == p {
        return Err(Error::LEqualsCharacteristic { l });
    }
    let verdict = match info.rtype {
        ReductionType::Good => {
            let reduced = info.reduced_curve()?;
            LocalVerdict::Known(l_torsion_rank(&reduced, l)?)
        }
        ReductionType::SplitMultiplicative => {
            let group_order = info.residue_order() - 1;
            if group_order % l == 0 && tate_is_lth_power(info, l)? {
                LocalVerdict::Known(1)
            } else {
                LocalVerdict::Known(0)
            }
        }
        ReductionType::NonsplitMultiplicative => {
            let vj = info
                .model
                .vj
                .expect("multiplicative reduction has finite v(j)");
            if l > 3 {
                LocalVerdict::Known(0)
            } else if l == 3 && ((info.residue_order() - 1) % 3 == 0 || vj % 3 != 0) {
                LocalVerdict::Known(0)
            } else {
                LocalVerdict::Undetermined(UndeterminedReason::NonsplitUncovered)
            }
        }
        ReductionType::Additive => {
            LocalVerdict::Undetermined(UndeterminedReason::AdditiveReduction)
        }
    };
    Ok(LocalDim {
        place: info.place.clone(),
        l,
        verdict,
    })
}
