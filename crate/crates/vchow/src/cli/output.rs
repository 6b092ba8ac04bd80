//! JSON document shapes and human-readable renderings for the CLI. Field
//! order in the JSON output is fixed by the struct declarations.

use crate::curve::GlobalCurve;
use crate::error::{Error, Result};
use crate::funcfield::{factor, FPoly, RatFn};
use crate::localdim::{tate_is_lth_power, LocalVerdict, ReductionInfo};
use crate::modl::{DimVerdict, ModLClass};
use crate::report::{Applicability, DimBound, GlobalReport, PlaceReport, SanityReport};
use crate::ring::Ring;
use serde::Serialize;

#[derive(Serialize)]
pub struct DimDto {
    pub status: &'static str,
    pub dim: Option<i64>,
    pub lo: Option<i64>,
    pub hi: Option<i64>,
    pub reason: Option<String>,
}

impl DimDto {
    pub fn known(v: i64) -> Self {
        DimDto {
            status: "known",
            dim: Some(v),
            lo: None,
            hi: None,
            reason: None,
        }
    }
    pub fn interval(lo: i64, hi: i64) -> Self {
        DimDto {
            status: "interval",
            dim: None,
            lo: Some(lo),
            hi: Some(hi),
            reason: None,
        }
    }
    pub fn undetermined(reason: String) -> Self {
        DimDto {
            status: "undetermined",
            dim: None,
            lo: None,
            hi: None,
            reason: Some(reason),
        }
    }

    pub fn from_local(v: &LocalVerdict) -> Self {
        match v {
            LocalVerdict::Known(d) => DimDto::known(*d as i64),
            LocalVerdict::Undetermined(r) => DimDto::undetermined(r.as_str().to_string()),
        }
    }

    pub fn from_verdict(v: &DimVerdict) -> Self {
        match v {
            DimVerdict::Known(d) => DimDto::known(*d as i64),
            DimVerdict::Undetermined(r) => DimDto::undetermined(r.clone()),
        }
    }

    pub fn from_bound(b: &DimBound) -> Self {
        match b {
            DimBound::Known(v) => DimDto::known(*v),
            DimBound::Interval(lo, hi) => DimDto::interval(*lo, *hi),
        }
    }

    pub fn is_known(&self) -> bool {
        self.status == "known"
    }
}

#[derive(Serialize)]
pub struct CurveDto {
    pub p: u64,
    pub n: usize,
    pub field_modulus: Option<String>,
    pub coefficients: [String; 5],
    pub equation: String,
}

impl CurveDto {
    pub fn new(c: &GlobalCurve) -> Self {
        let base = c.field().base();
        let a = c.coefficients();
        CurveDto {
            p: base.p(),
            n: base.degree(),
            field_modulus: if base.degree() > 1 {
                let fp = crate::gf::FiniteField::prime(base.p()).unwrap();
                let poly = crate::funcfield::Polynomial::from_ints(
                    &fp,
                    &base.modulus().iter().map(|&c| c as i64).collect::<Vec<_>>(),
                );
                Some(poly.display("g"))
            } else {
                None
            },
            coefficients: [
                a[0].to_string(),
                a[1].to_string(),
                a[2].to_string(),
                a[3].to_string(),
                a[4].to_string(),
            ],
            equation: c.display_equation("x", "y"),
        }
    }
}

/// Leading constant times monic irreducible powers, renderable.
pub fn factored_poly(f: &FPoly, var: &str) -> Result<String> {
    if f.is_zero() {
        return Ok("0".into());
    }
    let (lead, factors) = factor(f)?;
    let mut parts: Vec<String> = Vec::new();
    if !lead.is_one() || factors.is_empty() {
        parts.push(f.ring().fmt_elem(&lead, true));
    }
    for (pi, m) in &factors {
        let base = format!("({})", pi.display(var));
        if *m == 1 {
            parts.push(base);
        } else {
            parts.push(format!("{base}^{m}"));
        }
    }
    Ok(parts.join(" * "))
}

pub fn factored_ratfn(x: &RatFn, var: &str) -> Result<String> {
    if x.is_zero() {
        return Ok("0".into());
    }
    let num = factored_poly(x.num(), var)?;
    if x.den().is_one() {
        return Ok(num);
    }
    Ok(format!("({}) / ({})", num, factored_poly(x.den(), var)?))
}

#[derive(Serialize)]
pub struct InvariantsDto {
    pub curve: CurveDto,
    pub c4: String,
    pub c6: String,
    pub disc: String,
    pub j: String,
    pub c4_factored: String,
    pub disc_factored: String,
    pub j_factored: String,
}

impl InvariantsDto {
    pub fn new(c: &GlobalCurve) -> Result<Self> {
        let inv = c.invariants();
        Ok(InvariantsDto {
            curve: CurveDto::new(c),
            c4: inv.c4.to_string(),
            c6: inv.c6.to_string(),
            disc: inv.disc.to_string(),
            j: inv.j.to_string(),
            c4_factored: factored_ratfn(&inv.c4, "t")?,
            disc_factored: factored_ratfn(&inv.disc, "t")?,
            j_factored: factored_ratfn(&inv.j, "t")?,
        })
    }
}

#[derive(Serialize)]
pub struct PlaceDto {
    pub place: String,
    pub degree: usize,
    pub residue_order: u64,
    pub reduction_type: &'static str,
    pub vdisc: i64,
    pub vc4: Option<i64>,
    pub vj: Option<i64>,
    pub gamma_valuation: Option<i64>,
    pub gamma_leading: Option<String>,
    pub tate_vq: Option<i64>,
    pub tate_q_leading: Option<String>,
    pub tate_lth_power: Option<bool>,
    pub local_dim: Option<DimDto>,
}

impl PlaceDto {
    pub fn new(info: &ReductionInfo, l: Option<u64>, dim: Option<&LocalVerdict>) -> Result<Self> {
        let tate_lth = match (&info.tate, l) {
            (Some(_), Some(l)) => Some(tate_is_lth_power(info, l)?),
            _ => None,
        };
        Ok(PlaceDto {
            place: info.place.to_string(),
            degree: info.place.degree(),
            residue_order: info.place.residue_order(),
            reduction_type: info.rtype.as_str(),
            vdisc: info.model.vdisc,
            vc4: info.model.vc4,
            vj: info.model.vj,
            gamma_valuation: info.gamma.as_ref().map(|g| g.valuation),
            gamma_leading: info.gamma.as_ref().map(|g| g.leading.to_string()),
            tate_vq: info.tate.as_ref().map(|t| t.vq),
            tate_q_leading: info.tate.as_ref().map(|t| t.q_leading.to_string()),
            tate_lth_power: tate_lth,
            local_dim: dim.map(DimDto::from_local),
        })
    }

    pub fn from_report(pr: &PlaceReport, l: u64) -> Result<Self> {
        Self::new(&pr.info, Some(l), Some(&pr.dim.verdict))
    }
}

#[derive(Serialize)]
pub struct PointDto {
    pub x: String,
    pub y: String,
}

#[derive(Serialize)]
pub struct IsogenyDto {
    pub kernel_poly: String,
    pub codomain: String,
}

#[derive(Serialize)]
pub struct ClassDto {
    pub l: u64,
    pub torsion_rank: u8,
    pub torsion_points: Vec<PointDto>,
    pub chi_trivial: bool,
    pub case: &'static str,
    pub isogeny_search_complete: bool,
    pub isogenies: Vec<IsogenyDto>,
    pub coinvariant_dim: DimDto,
    pub notes: Vec<String>,
}

impl ClassDto {
    pub fn new(cls: &ModLClass) -> Self {
        ClassDto {
            l: cls.l,
            torsion_rank: cls.torsion_rank,
            torsion_points: cls
                .torsion_points
                .iter()
                .filter_map(|p| p.xy())
                .map(|(x, y)| PointDto {
                    x: x.to_string(),
                    y: y.to_string(),
                })
                .collect(),
            chi_trivial: cls.chi_trivial,
            case: cls.case.as_str(),
            isogeny_search_complete: cls.search_complete,
            isogenies: cls
                .isogenies
                .iter()
                .map(|i| IsogenyDto {
                    kernel_poly: i.kernel_poly.display("x"),
                    codomain: i.codomain.display_equation("x", "y"),
                })
                .collect(),
            coinvariant_dim: DimDto::from_verdict(&cls.coinv_dim),
            notes: cls.notes.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct ReportDto {
    pub curve: CurveDto,
    pub l: u64,
    pub bad_places: Vec<PlaceDto>,
    pub infinity: PlaceDto,
    pub classification: ClassDto,
    pub sum_local_dims: DimDto,
    pub applicable: &'static str,
    pub surjective: bool,
    pub ker_dim: DimDto,
    pub coker_dim: DimDto,
    pub exact_sequence: String,
    pub exactness_identity_holds: Option<bool>,
    pub sanity_warnings: Option<Vec<String>>,
}

impl ReportDto {
    pub fn new(r: &GlobalReport, sanity: Option<&SanityReport>) -> Result<Self> {
        let mut bad_places = Vec::new();
        for pr in &r.bad_finite {
            bad_places.push(PlaceDto::from_report(pr, r.l)?);
        }
        let applicable = match r.applicable {
            Applicability::Applicable => "yes",
            Applicability::HypothesisFails => "no",
            Applicability::Unknown => "unknown",
        };
        let ker = match (&r.ker_dim, r.applicable) {
            (Some(b), _) => DimDto::from_bound(b),
            (None, Applicability::HypothesisFails) => {
                DimDto::undetermined("the sequence requires nonzero coinvariants".into())
            }
            (None, _) => DimDto::undetermined("coinvariant dimension unknown".into()),
        };
        let coker = match (&r.coker_dim, r.applicable) {
            (Some(b), _) => DimDto::from_bound(b),
            (None, Applicability::HypothesisFails) => {
                DimDto::undetermined("the sequence requires nonzero coinvariants".into())
            }
            (None, _) => DimDto::undetermined("coinvariant dimension unknown".into()),
        };
        Ok(ReportDto {
            curve: CurveDto::new(&r.curve),
            l: r.l,
            bad_places,
            infinity: PlaceDto::from_report(&r.infinity, r.l)?,
            classification: ClassDto::new(&r.modl),
            sum_local_dims: DimDto::from_bound(&r.sum_local),
            applicable,
            surjective: r.surjective,
            ker_dim: ker,
            coker_dim: coker,
            exact_sequence: exact_sequence_string(r),
            exactness_identity_holds: r.exactness_residual().map(|v| v == 0),
            sanity_warnings: sanity.map(|s| s.warnings.clone()),
        })
    }
}

pub fn exact_sequence_string(r: &GlobalReport) -> String {
    let l = r.l;
    let mid = match r.sum_local {
        DimBound::Known(s) => format!("(F_{l})^{s}"),
        DimBound::Interval(lo, hi) => format!("(F_{l})^[{lo},{hi}]"),
    };
    let coinv = match &r.modl.coinv_dim {
        DimVerdict::Known(d) => format!("(F_{l})^{d}"),
        DimVerdict::Undetermined(_) => format!("E[{l}]_G"),
    };
    format!("0 -> Ker -> {mid} -> {coinv} -> Coker -> 0")
}

#[derive(Serialize)]
pub struct TorsionDto {
    pub l: u64,
    pub rank: u8,
    pub points: Vec<PointDto>,
}

#[derive(Serialize)]
pub struct PlacesDto {
    pub curve: CurveDto,
    pub bad_places: Vec<PlaceDto>,
    pub infinity_is_bad: bool,
}

#[derive(Serialize)]
pub struct ErrorBody {
    pub kind: &'static str,
    pub message: String,
    pub exit_code: i32,
}

#[derive(Serialize)]
pub struct ErrorDto {
    pub error: ErrorBody,
}

/// Exit code classification: 2 parse errors, 3 unsupported input, 4
/// resource bounds, 1 everything else.
pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => 2,
        Error::UnsupportedCharacteristic { .. }
        | Error::LEqualsCharacteristic { .. }
        | Error::LBoundExceeded { .. }
        | Error::NotPrime(_)
        | Error::NotIrreducible
        | Error::NotMonic
        | Error::InvalidPlace(_)
        | Error::SingularCurve
        | Error::InvalidKernel { .. } => 3,
        Error::EnumBoundExceeded { .. }
        | Error::CandidateCapExceeded { .. }
        | Error::OrderOverflow => 4,
        _ => 1,
    }
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse { .. } => "parse_error",
        Error::SingularCurve => "singular_curve",
        Error::UnsupportedCharacteristic { .. } => "unsupported_characteristic",
        Error::LEqualsCharacteristic { .. } => "l_equals_characteristic",
        Error::LBoundExceeded { .. } => "l_bound_exceeded",
        Error::EnumBoundExceeded { .. } => "enumeration_bound_exceeded",
        Error::CandidateCapExceeded { .. } => "candidate_cap_exceeded",
        Error::InvalidPlace(_) => "invalid_place",
        Error::InvalidKernel { .. } => "invalid_kernel",
        Error::NotIrreducible => "not_irreducible",
        Error::NotMonic => "not_monic",
        Error::NotPrime(_) => "not_prime",
        Error::OrderOverflow => "order_overflow",
        Error::DivisionByZero => "division_by_zero",
        Error::ZeroElement => "zero_element",
        Error::ZeroValuation => "zero_valuation",
        Error::NotIntegral => "not_integral",
        Error::WrongReductionType { .. } => "wrong_reduction_type",
        Error::SearchExhausted(_) => "search_exhausted",
    }
}

// ---- human-readable rendering ----

pub fn human_place_line(dto: &PlaceDto) -> String {
    let mut line = format!(
        "  {:<12} degree {}  {:<24} v(disc) = {}",
        dto.place, dto.degree, dto.reduction_type, dto.vdisc
    );
    if let Some(d) = &dto.local_dim {
        line.push_str(&format!("  dim V/l = {}", dim_str(d)));
    }
    line
}

pub fn dim_str(d: &DimDto) -> String {
    match d.status {
        "known" => d.dim.unwrap().to_string(),
        "interval" => format!("[{}, {}]", d.lo.unwrap(), d.hi.unwrap()),
        _ => format!(
            "undetermined ({})",
            d.reason.clone().unwrap_or_else(|| "no reason".into())
        ),
    }
}

pub fn human_report(r: &ReportDto) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "curve: {} over GF({})(t)\n",
        r.curve.equation,
        order_of(r)
    ));
    out.push_str(&format!("l = {}\n", r.l));
    out.push_str("bad places:\n");
    for p in &r.bad_places {
        out.push_str(&human_place_line(p));
        out.push('\n');
    }
    out.push_str("infinity:\n");
    out.push_str(&human_place_line(&r.infinity));
    out.push('\n');
    out.push_str(&format!(
        "classification: case = {}, torsion rank = {}, chi trivial = {}, search complete = {}\n",
        r.classification.case,
        r.classification.torsion_rank,
        r.classification.chi_trivial,
        r.classification.isogeny_search_complete
    ));
    out.push_str(&format!(
        "dim E[l]_G = {}\n",
        dim_str(&r.classification.coinvariant_dim)
    ));
    out.push_str(&format!(
        "sum of local dims = {}\n",
        dim_str(&r.sum_local_dims)
    ));
    out.push_str(&format!(
        "sequence applies (E[l]_G != 0): {}\n",
        r.applicable
    ));
    out.push_str(&format!("boundary map surjective: {}\n", r.surjective));
    out.push_str(&format!("exact sequence: {}\n", r.exact_sequence));
    out.push_str(&format!("dim Ker = {}\n", dim_str(&r.ker_dim)));
    out.push_str(&format!("dim Coker = {}\n", dim_str(&r.coker_dim)));
    if let Some(ok) = r.exactness_identity_holds {
        out.push_str(&format!("exactness identity holds: {ok}\n"));
    }
    if let Some(warnings) = &r.sanity_warnings {
        if warnings.is_empty() {
            out.push_str("torsion sanity: ok\n");
        } else {
            for w in warnings {
                out.push_str(&format!("torsion sanity warning: {w}\n"));
            }
        }
    }
    out
}

fn order_of(r: &ReportDto) -> u64 {
    (r.curve.p).pow(r.curve.n as u32)
}
