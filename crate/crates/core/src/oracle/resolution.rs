use crate::linalg::SpanBuilder;

use super::algebra::BoundQuiverAlgebra;
use super::representation::{hom_basis, kernel, projective_cover, ModuleMap, Representation};
use super::{OracleError, Result};

/// Minimal projective resolution
/// `0 -> P_m -> ... -> P_1 -> P_0 -> M -> 0`.
#[derive(Clone, Debug)]
pub struct ProjectiveResolution {
    pub module: Representation,
    /// Indecomposable summands of each `P_n`, by vertex.
    pub summands: Vec<Vec<usize>>,
    pub terms: Vec<Representation>,
    /// `P_0 -> M`; absent for the zero module.
    pub augmentation: Option<ModuleMap>,
    /// `differentials[n - 1]` is `d_n : P_n -> P_{n-1}`.
    pub differentials: Vec<ModuleMap>,
}

impl ProjectiveResolution {
    /// Index of the last nonzero term; 0 for projective and zero modules.
    pub fn length(&self) -> usize {
        self.terms.len().saturating_sub(1)
    }

    /// Checks `d^2 = 0` and exactness at every vertex by rank counting.
    pub fn check_exact(&self) -> Result<()> {
        let Some(aug) = &self.augmentation else {
            return if self.module.is_zero() {
                Ok(())
            } else {
                Err(OracleError::NotExact(
                    "nonzero module with empty resolution".into(),
                ))
            };
        };
        if let Some(d1) = self.differentials.first() {
            if !aug.after(d1).is_zero() {
                return Err(OracleError::NotExact(
                    "augmentation does not kill d_1".into(),
                ));
            }
        }
        for (idx, pair) in self.differentials.windows(2).enumerate() {
            if !pair[0].after(&pair[1]).is_zero() {
                return Err(OracleError::NotExact(format!(
                    "d_{} d_{} != 0",
                    idx + 1,
                    idx + 2
                )));
            }
        }
        let verts = self.module.num_vertices();
        for v in 0..verts {
            let aug_rank = aug.component(v).rank();
            if aug_rank != self.module.dims()[v] {
                return Err(OracleError::NotExact(format!(
                    "P_0 -> M not onto at vertex {}",
                    v + 1
                )));
            }
            for n in 0..self.terms.len() {
                let outgoing = if n == 0 {
                    aug_rank
                } else {
                    self.differentials[n - 1].component(v).rank()
                };
                let incoming = self
                    .differentials
                    .get(n)
                    .map_or(0, |d| d.component(v).rank());
                if outgoing + incoming != self.terms[n].dims()[v] {
                    return Err(OracleError::NotExact(format!(
                        "homology at P_{n}, vertex {}",
                        v + 1
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Iterated projective covers of kernels. Fails if a term beyond
/// `P_max_len` would be needed, and verifies exactness before returning.
pub fn projective_resolution(
    alg: &BoundQuiverAlgebra,
    m: &Representation,
    max_len: usize,
) -> Result<ProjectiveResolution> {
    let mut res = ProjectiveResolution {
        module: m.clone(),
        summands: Vec::new(),
        terms: Vec::new(),
        augmentation: None,
        differentials: Vec::new(),
    };
    let mut current = m.clone();
    let mut inclusion: Option<ModuleMap> = None;
    while !current.is_zero() {
        let n = res.terms.len();
        if n > max_len {
            return Err(OracleError::MaxLengthExceeded { max_len });
        }
        let cover = projective_cover(alg, &current)?;
        match &inclusion {
            None => res.augmentation = Some(cover.map.clone()),
            Some(inc) => res.differentials.push(inc.after(&cover.map)),
        }
        let k = kernel(&cover.map);
        res.summands.push(cover.summands);
        res.terms.push(cover.module);
        current = k.module;
        inclusion = Some(k.inclusion);
    }
    res.check_exact()?;
    Ok(res)
}

fn rank_of_maps(maps: &[ModuleMap]) -> usize {
    let Some(first) = maps.first() else {
        return 0;
    };
    let mut span = SpanBuilder::new(first.flatten().len());
    for f in maps {
        span.insert(f.flatten());
    }
    span.rank()
}

/// `dim Ext^n(M, N)` for `n = 0..=through_degree`, as the cohomology of
/// `Hom(P_., N)`.
pub fn ext_dims(
    res: &ProjectiveResolution,
    n: &Representation,
    through_degree: usize,
) -> Vec<usize> {
    let homs: Vec<Vec<ModuleMap>> = res.terms.iter().map(|p| hom_basis(p, n)).collect();
    // delta^d : Hom(P_d, N) -> Hom(P_{d+1}, N), f |-> f d_{d+1}
    let ranks: Vec<usize> = (0..res.terms.len())
        .map(|d| match res.differentials.get(d) {
            None => 0,
            Some(diff) => {
                let images: Vec<ModuleMap> = homs[d].iter().map(|f| f.after(diff)).collect();
                rank_of_maps(&images)
            }
        })
        .collect();
    (0..=through_degree)
        .map(|d| {
            if d >= res.terms.len() {
                return 0;
            }
            let before = if d == 0 { 0 } else { ranks[d - 1] };
            homs[d].len() - ranks[d] - before
        })
        .collect()
}

/// `Ext^n(M, N)` read off a freshly computed resolution of `M`.
pub fn ext_between(
    alg: &BoundQuiverAlgebra,
    m: &Representation,
    n: &Representation,
    through_degree: usize,
    max_len: usize,
) -> Result<Vec<usize>> {
    let res = projective_resolution(alg, m, max_len)?;
    Ok(ext_dims(&res, n, through_degree))
}
