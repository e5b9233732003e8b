//! The predimension `δ` of pairs `(L, W)` and the classification of pairs
//! into free, special and normal.
//!
//! A [`Configuration`] presents the generic point `(x, a)` of a `K`-linear
//! subspace `L ⊆ V^(n+l)` together with a variety `W` in the torus of the
//! same size. Everything here is computed on that generic point:
//!
//! * `lin.dim_K(x/a) = dim L(0)`
//! * `tr.deg(exp x / exp a) = dim W(s)` for the supplied values `s = exp a`
//! * `lin.dim_Q(x/a) = dim env(L) - dim env(pr_a L)`

mod certificate;
mod normality;

use num_rational::BigRational;
use serde::Serialize;

use crate::error::{PowError, Result};
use crate::numeric::mp::{MpComplex, MpContext};
use crate::subspace::{maximal_q_subspace, minimal_q_envelope, quotient_subspace, KLinearSubspace, QLinearSubspace};
use crate::toric::{
    buchberger, dim_variety, quotient_by_subtorus, specialize, LaurentIdeal, LaurentPoly, MonomialOrder, TermOrder,
    DEFAULT_PAIR_BUDGET,
};
pub use certificate::{build_phi_certificate, eval_phi_certificate, Disjunct, PhiCertificate, PointData};
pub use normality::{enumerate_rational_subspaces, NormalVerdict};

/// A pair `(L, W)` over `n` coordinates and `l` parameters.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Configuration {
    pub n: usize,
    pub l: usize,
    pub linear: KLinearSubspace,
    pub variety: LaurentIdeal,
    /// Exact values of `exp a`, used to specialize `W`.
    pub params: Option<Vec<BigRational>>,
}

impl Configuration {
    pub fn new(linear: KLinearSubspace, variety: LaurentIdeal, params: Option<Vec<BigRational>>) -> Result<Self> {
        let (n, l) = (linear.n(), linear.l());
        if variety.nvars() != n + l {
            return Err(PowError::DimensionMismatch { expected: n + l, found: variety.nvars() });
        }
        if let Some(p) = &params {
            if p.len() != l {
                return Err(PowError::DimensionMismatch { expected: l, found: p.len() });
            }
        }
        Ok(Configuration { n, l, linear, variety, params })
    }

    /// `l = 0` pair.
    pub fn plain(linear: KLinearSubspace, variety: LaurentIdeal) -> Result<Self> {
        Self::new(linear, variety, None)
    }

    /// `k` kernel elements: `L = V^k`, `W = {y = 1}`.
    pub fn kernel(k: usize) -> Self {
        let gens = (0..k).map(|i| LaurentPoly::var(k, i).sub(&LaurentPoly::from_int(k, 1))).collect();
        Configuration {
            n: k,
            l: 0,
            linear: KLinearSubspace::whole(k, 0),
            variety: LaurentIdeal::new(k, gens).expect("sizes agree"),
            params: None,
        }
    }

    /// `W(s)` over the `n` torus coordinates.
    pub fn specialized_variety(&self) -> Result<LaurentIdeal> {
        if self.l == 0 {
            return Ok(self.variety.clone());
        }
        let s = self.params.as_ref().ok_or(PowError::MissingParameters)?;
        specialize(&self.variety, s)
    }

    pub fn l0(&self) -> KLinearSubspace {
        self.linear.at_zero()
    }
}

/// The kernel of `exp`, presented as the cyclic group `ω Z`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum KernelSpec {
    /// A formal generator `ω`.
    Symbolic,
    /// `ω = 2πi` evaluated at the given precision.
    Numeric { precision_bits: usize },
}

impl KernelSpec {
    /// Q-rank of the kernel.
    pub fn rank(&self) -> usize {
        1
    }

    /// The generator as a complex number, when numeric.
    pub fn omega(&self) -> Option<MpComplex> {
        match self {
            KernelSpec::Symbolic => None,
            KernelSpec::Numeric { precision_bits } => {
                let mut ctx = MpContext::new(*precision_bits);
                let pi = ctx.pi();
                let two_pi = ctx.mul(&ctx.from_f64(2.0), &pi);
                Some(MpComplex { re: ctx.zero(), im: two_pi })
            }
        }
    }
}

/// The three dimensions entering `δ` at the generic point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaParts {
    pub lin_dim_k: usize,
    pub tr_deg: usize,
    pub lin_dim_q: usize,
}

impl DeltaParts {
    pub fn delta(&self) -> i64 {
        self.lin_dim_k as i64 + self.tr_deg as i64 - self.lin_dim_q as i64
    }
}

fn parameter_projection(l: &KLinearSubspace) -> KLinearSubspace {
    let keep: Vec<usize> = (l.n()..l.ambient()).collect();
    l.project(&keep, l.l(), 0)
}

pub fn delta_parts(config: &Configuration, budget: usize) -> Result<DeltaParts> {
    let w = config.specialized_variety()?;
    let tr_deg = dim_variety(&w, budget)?.require()?;
    let env = minimal_q_envelope(&config.linear).dim();
    let env_a = if config.l == 0 { 0 } else { minimal_q_envelope(&parameter_projection(&config.linear)).dim() };
    Ok(DeltaParts { lin_dim_k: config.l0().dim(), tr_deg, lin_dim_q: env - env_a })
}

/// `δ(x/a) = lin.dim_K + tr.deg - lin.dim_Q` at the generic point.
pub fn delta_of(config: &Configuration, budget: usize) -> Result<i64> {
    Ok(delta_parts(config, budget)?.delta())
}

/// `δ(big) - δ(small)`, where coordinate `i` of `small` is coordinate
/// `index_map[i]` of `big`. Both must share their parameters. The map is
/// checked: `small.L` must be the projection of `big.L`, and every
/// generator of `small.W` must vanish on `big.W`.
pub fn delta_relative(big: &Configuration, small: &Configuration, index_map: &[usize], budget: usize) -> Result<i64> {
    check_embedding(big, small, index_map, budget)?;
    Ok(delta_of(big, budget)? - delta_of(small, budget)?)
}

fn check_embedding(big: &Configuration, small: &Configuration, index_map: &[usize], budget: usize) -> Result<()> {
    if index_map.len() != small.n {
        return Err(PowError::BadEmbedding(format!(
            "index map has {} entries for {} coordinates",
            index_map.len(),
            small.n
        )));
    }
    if let Some(&i) = index_map.iter().find(|&&i| i >= big.n) {
        return Err(PowError::BadEmbedding(format!("index {} out of range 0..{}", i, big.n)));
    }
    let mut seen = vec![false; big.n];
    for &i in index_map {
        if std::mem::replace(&mut seen[i], true) {
            return Err(PowError::BadEmbedding(format!("index {i} used twice")));
        }
    }
    if big.l != small.l || big.params != small.params {
        return Err(PowError::BadEmbedding("parameters differ".into()));
    }
    let mut keep = index_map.to_vec();
    keep.extend(big.n..big.n + big.l);
    if big.linear.project(&keep, small.n, small.l) != small.linear {
        return Err(PowError::BadEmbedding("L does not project onto the smaller L".into()));
    }
    let wb = big.specialized_variety()?;
    let ws = small.specialized_variety()?;
    let gb = buchberger(&wb, MonomialOrder::GrevLex, budget)?;
    let order = TermOrder::grevlex(big.n);
    for g in ws.nonzero_generators() {
        let lifted = LaurentPoly::from_terms(
            big.n,
            g.terms().map(|(e, c)| {
                let mut x = vec![0i32; big.n];
                for (k, &i) in index_map.iter().enumerate() {
                    x[i] = e[k];
                }
                (x, c.clone())
            }),
        );
        if !gb.contains(&lifted.to_poly(big.n, 0, &order)) {
            return Err(PowError::BadEmbedding(format!("generator {g} does not vanish on the larger W")));
        }
    }
    Ok(())
}

/// Knobs for [`classify_pair_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Gröbner budget per computation.
    pub budget: usize,
    /// Largest number of subspaces examined by the normality search.
    pub subspace_cap: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { budget: DEFAULT_PAIR_BUDGET, subspace_cap: 4096 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairClassification {
    pub dim_l: usize,
    pub dim_w: usize,
    /// `env(L) ⊆ V^(n+l)`.
    pub envelope: QLinearSubspace,
    /// `N_L(0) = N_{L(0)} ⊆ V^n`.
    pub n_l: QLinearSubspace,
    pub is_free: bool,
    pub is_special: bool,
    pub normal_verdict: NormalVerdict,
    pub delta: i64,
}

pub fn classify_pair(config: &Configuration, height_bound: u32) -> Result<PairClassification> {
    classify_pair_with(config, height_bound, &ClassifyOptions::default())
}

pub fn classify_pair_with(
    config: &Configuration,
    height_bound: u32,
    opts: &ClassifyOptions,
) -> Result<PairClassification> {
    let w = config.specialized_variety()?;
    let parts = delta_parts(config, opts.budget)?;
    let envelope = minimal_q_envelope(&config.linear);
    let is_free = envelope.is_whole();
    let (dim_l, dim_w) = (parts.lin_dim_k, parts.tr_deg);
    let is_special = is_free && dim_l + dim_w < config.n;
    let l0 = config.l0();
    let normal_verdict = normality::check_normality(&l0, &w, height_bound, opts)?;
    Ok(PairClassification {
        dim_l,
        dim_w,
        envelope,
        n_l: maximal_q_subspace(&l0),
        is_free,
        is_special,
        normal_verdict,
        delta: parts.delta(),
    })
}

/// `(L/M, W/exp M)` in the quotient coordinates given by the characters of `M`.
pub fn quotient_pair(config: &Configuration, m: &QLinearSubspace, budget: usize) -> Result<Configuration> {
    if m.l() != 0 || m.n() != config.n {
        return Err(PowError::DimensionMismatch { expected: config.n, found: m.ambient() });
    }
    if !config.l0().contains(&m.to_k()) {
        return Err(PowError::NotContained);
    }
    let linear = quotient_subspace(&config.linear, m)?;
    let variety = quotient_by_subtorus(&config.variety, m, budget)?;
    Configuration::new(linear, variety, config.params.clone())
}

/// A configuration together with the declared dimension of its
/// intersection with the kernel.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelPresented {
    pub config: Configuration,
    pub kernel_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassVerdict {
    pub delta: i64,
    pub bound: i64,
    pub holds: bool,
}

/// `δ(X/ker) ≥ -d` for each presented configuration.
///
/// The configuration is read as `X ∪ ker`, with the kernel coordinates
/// included; since `δ(ker) = 0` the relative value is `δ` of the whole.
/// A declared kernel dimension above the kernel's rank cannot be realized
/// and fails the bound.
pub fn check_class_bound(
    configs: &[KernelPresented],
    d: i64,
    kernel: &KernelSpec,
    budget: usize,
) -> Result<Vec<ClassVerdict>> {
    configs
        .iter()
        .map(|c| {
            let delta = delta_of(&c.config, budget)?;
            let holds = c.kernel_dim <= kernel.rank() && delta >= -d;
            Ok(ClassVerdict { delta, bound: -d, holds })
        })
        .collect()
}
