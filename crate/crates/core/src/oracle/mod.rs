//! Ground truth for the Nakayama classifier, computed from scratch.
//!
//! Modules are quiver representations with exact rational matrices. Trace
//! ideals are built as sums of images of all homomorphisms, minimal
//! projective resolutions as iterated covers of kernels, and Ext groups as
//! cohomology of the Hom complex. An ideal `I` counts as homological when
//! `Ext^n(I, A/I)` vanishes in every degree.

mod algebra;
mod representation;
mod resolution;

pub use algebra::{is_idempotent_oracle, span_is_idempotent, BoundQuiverAlgebra};
pub use representation::{
    hom_basis, kernel, projective_cover, quotient, top_generators, trace_of, trace_submodule,
    ModuleMap, ProjectiveCover, Representation, Subrepresentation,
};
pub use resolution::{ext_between, ext_dims, projective_resolution, ProjectiveResolution};

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use thiserror::Error;

use crate::nakayama::{NakayamaPresentation, SubsetSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("representation does not satisfy the zero relation")]
    RelationViolated,
    #[error("maps do not commute with arrow {arrow}")]
    NotAMorphism { arrow: usize },
    #[error("projective cover is not surjective")]
    CoverNotSurjective,
    #[error("resolution needs more than {max_len} steps")]
    MaxLengthExceeded { max_len: usize },
    #[error("resolution is not exact: {0}")]
    NotExact(String),
}

pub type Result<T> = std::result::Result<T, OracleError>;

/// Lowest Ext degree taken into account when deciding homologicality.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtFrom {
    /// `Ext^n(I, A/I) = 0` for all `n >= 0`, including Hom.
    Zero,
    /// Only `n >= 1`.
    One,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleVerdict {
    pub subset: SubsetSpec,
    /// `ext[n] = dim Ext^n(I, A/I)` through the resolution length of `I`.
    pub ext: Vec<usize>,
    pub resolution_length: usize,
}

impl OracleVerdict {
    pub fn is_homological(&self, from: ExtFrom) -> bool {
        let start = match from {
            ExtFrom::Zero => 0,
            ExtFrom::One => 1,
        };
        self.ext.iter().skip(start).all(|&d| d == 0)
    }

    /// True when the two readings of the criterion give different answers.
    pub fn variants_disagree(&self) -> bool {
        self.is_homological(ExtFrom::Zero) != self.is_homological(ExtFrom::One)
    }

    pub fn max_nonzero_degree(&self) -> Option<usize> {
        self.ext.iter().rposition(|&d| d != 0)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ResolutionStats {
    pub built: usize,
    pub max_length: usize,
}

type ExtKey = (Representation, Representation);

/// Resolution bound handed to [`projective_resolution`]; far above the
/// global dimension of any algebra built here.
pub const MAX_RESOLUTION_LEN: usize = 8;

/// Per-algebra state shared across subset evaluations: the projectives and
/// caches of resolutions and Ext tables keyed by module.
pub struct OracleContext {
    presentation: NakayamaPresentation,
    alg: BoundQuiverAlgebra,
    projectives: Vec<Representation>,
    resolutions: Mutex<HashMap<Representation, Arc<ProjectiveResolution>>>,
    ext: Mutex<HashMap<ExtKey, Arc<Vec<usize>>>>,
    stats: Mutex<ResolutionStats>,
    whole_module: bool,
}

impl OracleContext {
    pub fn new(presentation: &NakayamaPresentation) -> Self {
        let alg = BoundQuiverAlgebra::from_presentation(presentation);
        let projectives = (1..=alg.n())
            .map(|t| alg.projective(t).expect("vertex in range"))
            .collect();
        OracleContext {
            presentation: *presentation,
            alg,
            projectives,
            resolutions: Mutex::new(HashMap::new()),
            ext: Mutex::new(HashMap::new()),
            stats: Mutex::new(ResolutionStats::default()),
            whole_module: false,
        }
    }

    /// Compute Ext on the full direct sums instead of summand by summand.
    pub fn with_whole_module(mut self, on: bool) -> Self {
        self.whole_module = on;
        self
    }

    pub fn presentation(&self) -> &NakayamaPresentation {
        &self.presentation
    }

    pub fn algebra(&self) -> &BoundQuiverAlgebra {
        &self.alg
    }

    pub fn projective(&self, t: usize) -> &Representation {
        &self.projectives[t - 1]
    }

    pub fn stats(&self) -> ResolutionStats {
        *self.stats.lock().expect("stats lock")
    }

    /// Trace of `⊕_{a in s} P(a)` inside `P(t)`.
    pub fn trace_in_projective(&self, s: SubsetSpec, t: usize) -> Subrepresentation {
        let target = self.projective(t);
        let maps: Vec<ModuleMap> = (1..=self.alg.n())
            .filter(|&a| s.contains(a))
            .flat_map(|a| hom_basis(self.projective(a), target))
            .collect();
        trace_submodule(&maps, target)
    }

    /// `I_S` as the list of its components `I_S ∩ P(t)`.
    pub fn trace_ideal(&self, s: SubsetSpec) -> Vec<Subrepresentation> {
        (1..=self.alg.n())
            .map(|t| self.trace_in_projective(s, t))
            .collect()
    }

    /// Resolves `m`, verifying exactness; cached by module.
    pub fn resolve(&self, m: &Representation) -> Result<Arc<ProjectiveResolution>> {
        if let Some(r) = self.resolutions.lock().expect("cache lock").get(m) {
            return Ok(Arc::clone(r));
        }
        let res = Arc::new(self.resolve_uncached(m)?);
        self.resolutions
            .lock()
            .expect("cache lock")
            .insert(m.clone(), Arc::clone(&res));
        Ok(res)
    }

    /// Every resolution cached so far, in no particular order.
    pub fn resolutions(&self) -> Vec<Arc<ProjectiveResolution>> {
        self.resolutions
            .lock()
            .expect("cache lock")
            .values()
            .cloned()
            .collect()
    }

    fn resolve_uncached(&self, m: &Representation) -> Result<ProjectiveResolution> {
        let res = projective_resolution(&self.alg, m, MAX_RESOLUTION_LEN)?;
        let mut stats = self.stats.lock().expect("stats lock");
        stats.built += 1;
        stats.max_length = stats.max_length.max(res.length());
        Ok(res)
    }

    fn ext_pair(&self, m: &Representation, n: &Representation) -> Result<Arc<Vec<usize>>> {
        let key = (m.clone(), n.clone());
        if let Some(e) = self.ext.lock().expect("cache lock").get(&key) {
            return Ok(Arc::clone(e));
        }
        let res = self.resolve(m)?;
        let table = Arc::new(ext_dims(&res, n, res.length()));
        self.ext
            .lock()
            .expect("cache lock")
            .insert(key, Arc::clone(&table));
        Ok(table)
    }

    /// Ext table of `(I_S, A/I_S)`.
    pub fn verdict(&self, s: SubsetSpec) -> Result<OracleVerdict> {
        let ideal = self.trace_ideal(s);
        let quotients: Vec<Representation> = ideal.iter().map(|sub| quotient(sub).0).collect();
        let parts: Vec<&Representation> = ideal
            .iter()
            .map(|sub| &sub.module)
            .filter(|m| !m.is_zero())
            .collect();
        let targets: Vec<&Representation> = quotients.iter().filter(|q| !q.is_zero()).collect();
        if self.whole_module {
            let n = self.alg.n();
            let i = if parts.is_empty() {
                Representation::zero(n)
            } else {
                Representation::direct_sum(&parts)
            };
            let q = if targets.is_empty() {
                Representation::zero(n)
            } else {
                Representation::direct_sum(&targets)
            };
            let res = self.resolve_uncached(&i)?;
            return Ok(OracleVerdict {
                subset: s,
                ext: ext_dims(&res, &q, res.length()),
                resolution_length: res.length(),
            });
        }
        let mut length = 0;
        for m in &parts {
            length = length.max(self.resolve(m)?.length());
        }
        let mut ext = vec![0usize; length + 1];
        for m in &parts {
            for q in &targets {
                for (d, v) in self.ext_pair(m, q)?.iter().enumerate() {
                    ext[d] += v;
                }
            }
        }
        Ok(OracleVerdict {
            subset: s,
            ext,
            resolution_length: length,
        })
    }

    /// Verdicts for all `2^n` subsets in mask order, evaluated on the
    /// current rayon pool.
    pub fn sweep(&self) -> Result<Vec<OracleVerdict>> {
        let subsets: Vec<SubsetSpec> = SubsetSpec::all(self.alg.n()).collect();
        self.verdicts(&subsets)
    }

    pub fn verdicts(&self, subsets: &[SubsetSpec]) -> Result<Vec<OracleVerdict>> {
        subsets.par_iter().map(|&s| self.verdict(s)).collect()
    }
}

/// One-shot evaluation of a single subset.
pub fn is_homological_oracle(alg: &NakayamaPresentation, s: SubsetSpec) -> Result<OracleVerdict> {
    OracleContext::new(alg).verdict(s)
}
