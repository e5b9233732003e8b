//! Evaluable certificates `Φ_{L,W}`: for a point `(x, b)` of the pair,
//! `exp x` lies in an exceptional stratum `W^{exp M}`, or its image in the
//! quotient by `exp M` lies in the exceptional stratum for `N_{L/M}(0)`,
//! or its image lies on one of finitely many torsion cosets.

use serde::Serialize;

use super::Configuration;
use crate::error::{PowError, Result};
use crate::exponent_field::ExponentScalar;
use crate::linalg::integer::IntRow;
use crate::subspace::{maximal_q_subspace, quotient_subspace, QLinearSubspace};
use crate::toric::{
    dim_variety, exceptional_locus_member, generic_fiber_dim, quotient_by_subtorus, torsion_cosets_bounded,
    LaurentIdeal, SubtorusSpec, TorsionCoset, TorusPoint,
};

/// Data attached to one candidate `M`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MData {
    pub m: QLinearSubspace,
    /// `d(W(s), exp M)`.
    pub fiber_dim: usize,
    /// Characters `y^{m_i}` giving coordinates on the quotient by `exp M`.
    pub characters: Vec<IntRow>,
    /// `W(s)/exp M` in those coordinates.
    pub quotient_variety: LaurentIdeal,
    /// `N_{L/M}(0)` in the quotient coordinates.
    pub quotient_n: QLinearSubspace,
    pub quotient_fiber_dim: Option<usize>,
    /// Characters of the quotient by `exp(M + N_{L/M}(0))`.
    pub torsion_characters: Vec<IntRow>,
    pub torsion_cosets: Vec<TorsionCoset>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "m", rename_all = "snake_case")]
pub enum Disjunct {
    /// `exp x ∈ W^{exp M}`.
    Exceptional(usize),
    /// `exp(x + M) ∈ (W/exp M)^{exp N_{L/M}(0)}`.
    QuotientExceptional(usize),
    /// `exp(x + M + N_{L/M}(0))` on a listed torsion coset.
    Torsion(usize),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PhiCertificate {
    pub config: Configuration,
    pub is_special: bool,
    pub torsion_bound: u64,
    pub budget: usize,
    pub ms: Vec<MData>,
    /// Evaluation order.
    pub disjuncts: Vec<Disjunct>,
}

/// An exact point of the pair: `exp x` (and optionally `x` and `b`
/// themselves for the `L`-membership check).
#[derive(Clone, Debug, PartialEq)]
pub struct PointData {
    pub w: TorusPoint,
    pub x: Option<Vec<ExponentScalar>>,
}

fn image(w: &TorusPoint, chars: &[IntRow]) -> TorusPoint {
    TorusPoint::new(chars.iter().map(|m| w.character(m)).collect())
}

/// Builds the certificate for the candidate list followed by `N_L(0)`
/// and `{0}` (duplicates dropped).
pub fn build_phi_certificate(
    config: &Configuration,
    candidates: &[QLinearSubspace],
    torsion_bound: u64,
    budget: usize,
) -> Result<PhiCertificate> {
    let n = config.n;
    let w = config.specialized_variety()?;
    let l0 = config.l0();
    let mut ms: Vec<QLinearSubspace> = Vec::new();
    for m in candidates.iter().cloned().chain([maximal_q_subspace(&l0), QLinearSubspace::zero(n, 0)]) {
        if m.l() != 0 || m.n() != n {
            return Err(PowError::DimensionMismatch { expected: n, found: m.ambient() });
        }
        if !ms.contains(&m) {
            ms.push(m);
        }
    }
    let dim_l = l0.dim();
    let dim_w = dim_variety(&w, budget)?.require()?;
    let is_special = crate::subspace::minimal_q_envelope(&config.linear).is_whole() && dim_l + dim_w < n;

    let mut data = Vec::new();
    for m in ms {
        let fiber_dim = generic_fiber_dim(&w, &m, budget)?;
        let characters = m.character_rows();
        let quotient_variety = quotient_by_subtorus(&w, &m, budget)?;
        let quotient_l0 = quotient_subspace(&l0, &m)?;
        let quotient_n = maximal_q_subspace(&quotient_l0);
        let quotient_fiber_dim = match dim_variety(&quotient_variety, budget)?.value() {
            Some(_) => Some(generic_fiber_dim(&quotient_variety, &quotient_n, budget)?),
            None => None,
        };
        let p = QLinearSubspace::pull_back(&characters, n, &quotient_n);
        let torsion_characters = p.character_rows();
        let wp = quotient_by_subtorus(&w, &p, budget)?;
        let torsion_cosets =
            torsion_cosets_bounded(&wp, &[SubtorusSpec::trivial(wp.nvars())], torsion_bound, budget)?;
        data.push(MData {
            m,
            fiber_dim,
            characters,
            quotient_variety,
            quotient_n,
            quotient_fiber_dim,
            torsion_characters,
            torsion_cosets,
        });
    }
    let mut disjuncts = Vec::new();
    for i in 0..data.len() {
        disjuncts.push(Disjunct::Exceptional(i));
        disjuncts.push(Disjunct::QuotientExceptional(i));
    }
    disjuncts.extend((0..data.len()).map(Disjunct::Torsion));
    Ok(PhiCertificate { config: config.clone(), is_special, torsion_bound, budget, ms: data, disjuncts })
}

/// Index of the first disjunct that holds at the point, or `None`.
pub fn eval_phi_certificate(cert: &PhiCertificate, point: &PointData) -> Result<Option<usize>> {
    let config = &cert.config;
    if point.w.len() != config.n {
        return Err(PowError::DimensionMismatch { expected: config.n, found: point.w.len() });
    }
    if let Some(x) = &point.x {
        if x.len() != config.n + config.l || !config.linear.contains_vector(x) {
            return Err(PowError::NotOnVariety);
        }
    }
    let w = config.specialized_variety()?;
    if !w.vanishes_at(&point.w) {
        return Err(PowError::NotOnVariety);
    }
    let budget = cert.budget;
    for (idx, d) in cert.disjuncts.iter().enumerate() {
        let holds = match *d {
            Disjunct::Exceptional(i) => exceptional_locus_member(&w, &cert.ms[i].m, &point.w, budget)?,
            Disjunct::QuotientExceptional(i) => {
                let md = &cert.ms[i];
                md.quotient_fiber_dim.is_some()
                    && exceptional_locus_member(
                        &md.quotient_variety,
                        &md.quotient_n,
                        &image(&point.w, &md.characters),
                        budget,
                    )?
            }
            Disjunct::Torsion(i) => {
                let md = &cert.ms[i];
                let img = image(&point.w, &md.torsion_characters);
                md.torsion_cosets.iter().any(|c| c.contains(&img))
            }
        };
        if holds {
            return Ok(Some(idx));
        }
    }
    Ok(None)
}
