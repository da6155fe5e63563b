use num_traits::{One, Zero};

use crate::linalg::{Matrix, Scalar, SpanBuilder};
use crate::nakayama::IntervalModule;

use super::algebra::BoundQuiverAlgebra;
use super::{OracleError, Result};

/// A module over a [`BoundQuiverAlgebra`]: a vector space per vertex and a
/// matrix per arrow. `maps[v]` goes from vertex `v + 1` to vertex `v + 2`
/// (1-based) and has shape `dims[v + 1] x dims[v]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Representation {
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl Representation {
    pub fn new(alg: &BoundQuiverAlgebra, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        let n = alg.n();
        if dims.len() != n || maps.len() + 1 != n {
            return Err(OracleError::Shape(format!(
                "expected {n} spaces and {} maps, got {} and {}",
                n - 1,
                dims.len(),
                maps.len()
            )));
        }
        for (v, m) in maps.iter().enumerate() {
            if m.rows() != dims[v + 1] || m.cols() != dims[v] {
                return Err(OracleError::Shape(format!(
                    "arrow {} -> {} has shape {}x{}, expected {}x{}",
                    v + 1,
                    v + 2,
                    m.rows(),
                    m.cols(),
                    dims[v + 1],
                    dims[v]
                )));
            }
        }
        if !alg.satisfies_relation(&dims, &maps) {
            return Err(OracleError::RelationViolated);
        }
        Ok(Representation { dims, maps })
    }

    pub(crate) fn from_parts(dims: Vec<usize>, maps: Vec<Matrix>) -> Self {
        Representation { dims, maps }
    }

    pub fn zero(n: usize) -> Self {
        Representation {
            dims: vec![0; n],
            maps: (1..n).map(|_| Matrix::zeros(0, 0)).collect(),
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn map(&self, v: usize) -> &Matrix {
        &self.maps[v]
    }

    pub fn num_vertices(&self) -> usize {
        self.dims.len()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn direct_sum(parts: &[&Representation]) -> Representation {
        let n = parts.first().map_or(0, |p| p.num_vertices());
        let dims = (0..n)
            .map(|v| parts.iter().map(|p| p.dims[v]).sum())
            .collect();
        let maps = (0..n.saturating_sub(1))
            .map(|v| {
                let blocks: Vec<&Matrix> = parts.iter().map(|p| &p.maps[v]).collect();
                Matrix::block_diagonal(&blocks)
            })
            .collect();
        Representation { dims, maps }
    }

    /// Recognizes a uniserial module with one-dimensional spaces on a
    /// contiguous support joined by nonzero maps.
    pub fn as_interval(&self) -> Option<IntervalModule> {
        let support: Vec<usize> = (0..self.dims.len()).filter(|&v| self.dims[v] > 0).collect();
        let (Some(&first), Some(&last)) = (support.first(), support.last()) else {
            return Some(IntervalModule::Zero);
        };
        if support.len() != last - first + 1 || support.iter().any(|&v| self.dims[v] != 1) {
            return None;
        }
        if (first..last).any(|v| self.maps[v].is_zero()) {
            return None;
        }
        Some(IntervalModule::new(first + 1, last + 1))
    }

    pub fn identity(&self) -> ModuleMap {
        ModuleMap {
            source: self.clone(),
            target: self.clone(),
            components: self.dims.iter().map(|&d| Matrix::identity(d)).collect(),
        }
    }
}

/// A homomorphism of representations; `components[v]` has shape
/// `target.dims[v] x source.dims[v]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    source: Representation,
    target: Representation,
    components: Vec<Matrix>,
}

impl ModuleMap {
    /// Checks shapes and every commuting square.
    pub fn new(
        source: Representation,
        target: Representation,
        components: Vec<Matrix>,
    ) -> Result<Self> {
        let n = source.num_vertices();
        if target.num_vertices() != n || components.len() != n {
            return Err(OracleError::Shape(
                "map between modules of different quivers".into(),
            ));
        }
        for (v, c) in components.iter().enumerate() {
            if c.rows() != target.dims[v] || c.cols() != source.dims[v] {
                return Err(OracleError::Shape(format!(
                    "component at vertex {} has shape {}x{}, expected {}x{}",
                    v + 1,
                    c.rows(),
                    c.cols(),
                    target.dims[v],
                    source.dims[v]
                )));
            }
        }
        for v in 0..n.saturating_sub(1) {
            let left = target.maps[v].mul(&components[v]);
            let right = components[v + 1].mul(&source.maps[v]);
            if left != right {
                return Err(OracleError::NotAMorphism { arrow: v + 1 });
            }
        }
        Ok(ModuleMap {
            source,
            target,
            components,
        })
    }

    pub fn zero(source: &Representation, target: &Representation) -> ModuleMap {
        let components = (0..source.num_vertices())
            .map(|v| Matrix::zeros(target.dims[v], source.dims[v]))
            .collect();
        ModuleMap {
            source: source.clone(),
            target: target.clone(),
            components,
        }
    }

    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn target(&self) -> &Representation {
        &self.target
    }

    pub fn component(&self, v: usize) -> &Matrix {
        &self.components[v]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Matrix::is_zero)
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &ModuleMap) -> ModuleMap {
        assert_eq!(first.target, self.source, "maps are not composable");
        ModuleMap {
            source: first.source.clone(),
            target: self.target.clone(),
            components: self
                .components
                .iter()
                .zip(&first.components)
                .map(|(g, f)| g.mul(f))
                .collect(),
        }
    }

    /// Entries of all components, vertex by vertex, row-major.
    pub fn flatten(&self) -> Vec<Scalar> {
        self.components
            .iter()
            .flat_map(|c| c.entries().iter().cloned())
            .collect()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.components.iter().map(Matrix::rank).collect()
    }
}

/// Basis of `Hom(m, n)`: the null space of the commuting-square system.
pub fn hom_basis(m: &Representation, n: &Representation) -> Vec<ModuleMap> {
    let verts = m.num_vertices();
    assert_eq!(verts, n.num_vertices(), "modules over different quivers");
    let mut offsets = Vec::with_capacity(verts + 1);
    let mut total = 0;
    for v in 0..verts {
        offsets.push(total);
        total += n.dims[v] * m.dims[v];
    }
    offsets.push(total);
    if total == 0 {
        return Vec::new();
    }
    let var = |v: usize, r: usize, c: usize| offsets[v] + r * m.dims[v] + c;
    let mut equations: Vec<Vec<Scalar>> = Vec::new();
    for v in 0..verts.saturating_sub(1) {
        let (mv, nv, nw) = (m.dims[v], n.dims[v], n.dims[v + 1]);
        let mw = m.dims[v + 1];
        // (N_v f_v - f_{v+1} M_v)[r][c] = 0
        for r in 0..nw {
            for c in 0..mv {
                let mut eq = vec![Scalar::zero(); total];
                for s in 0..nv {
                    let a = n.maps[v].get(r, s);
                    if !a.is_zero() {
                        eq[var(v, s, c)] += a;
                    }
                }
                for s in 0..mw {
                    let b = m.maps[v].get(s, c);
                    if !b.is_zero() {
                        eq[var(v + 1, r, s)] -= b;
                    }
                }
                if eq.iter().any(|x| !x.is_zero()) {
                    equations.push(eq);
                }
            }
        }
    }
    let solutions = if equations.is_empty() {
        (0..total)
            .map(|idx| {
                let mut x = vec![Scalar::zero(); total];
                x[idx] = Scalar::one();
                x
            })
            .collect()
    } else {
        Matrix::from_rows_vec(total, &equations).nullspace()
    };
    solutions
        .into_iter()
        .map(|x| {
            let components = (0..verts)
                .map(|v| {
                    let mut f = Matrix::zeros(n.dims[v], m.dims[v]);
                    for r in 0..n.dims[v] {
                        for c in 0..m.dims[v] {
                            f.set(r, c, x[var(v, r, c)].clone());
                        }
                    }
                    f
                })
                .collect();
            ModuleMap {
                source: m.clone(),
                target: n.clone(),
                components,
            }
        })
        .collect()
}

/// A subrepresentation together with its inclusion into the ambient module.
#[derive(Clone, Debug)]
pub struct Subrepresentation {
    pub module: Representation,
    pub inclusion: ModuleMap,
}

fn columns_basis(rows: usize, vectors: Vec<Vec<Scalar>>) -> Matrix {
    let mut span = SpanBuilder::new(rows);
    let mut kept = Vec::new();
    for v in vectors {
        if span.insert(v.clone()) {
            kept.push(v);
        }
    }
    Matrix::from_columns(rows, &kept)
}

/// Builds the subrepresentation with the given per-vertex bases. The bases
/// must already be stable under the arrows.
fn sub_from_bases(ambient: &Representation, bases: Vec<Matrix>) -> Subrepresentation {
    let n = ambient.num_vertices();
    let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
    let maps = (0..n.saturating_sub(1))
        .map(|v| {
            let image = ambient.maps[v].mul(&bases[v]);
            bases[v + 1]
                .solve(&image)
                .expect("subspace is closed under the arrow")
        })
        .collect();
    let module = Representation::from_parts(dims, maps);
    let inclusion = ModuleMap {
        source: module.clone(),
        target: ambient.clone(),
        components: bases,
    };
    Subrepresentation { module, inclusion }
}

/// Smallest subrepresentation of `target` containing the images of all
/// `maps`: span the images at each vertex, then push forward along arrows.
pub fn trace_submodule(maps: &[ModuleMap], target: &Representation) -> Subrepresentation {
    let n = target.num_vertices();
    let mut bases: Vec<Matrix> = Vec::with_capacity(n);
    for v in 0..n {
        let mut vectors: Vec<Vec<Scalar>> = Vec::new();
        for f in maps {
            assert_eq!(&f.target, target, "generator has the wrong target");
            vectors.extend(f.components[v].columns());
        }
        if v > 0 {
            vectors.extend(target.maps[v - 1].mul(&bases[v - 1]).columns());
        }
        bases.push(columns_basis(target.dims[v], vectors));
    }
    sub_from_bases(target, bases)
}

/// Trace of `source` in `target`: the sum of the images of all maps.
pub fn trace_of(source: &Representation, target: &Representation) -> Subrepresentation {
    trace_submodule(&hom_basis(source, target), target)
}

pub fn kernel(f: &ModuleMap) -> Subrepresentation {
    let bases = f
        .components
        .iter()
        .map(|c| Matrix::from_columns(c.cols(), &c.nullspace()))
        .collect();
    sub_from_bases(&f.source, bases)
}

/// `ambient / sub` with its projection. At each vertex the projection is
/// given by a basis of the annihilator of the subspace.
pub fn quotient(sub: &Subrepresentation) -> (Representation, ModuleMap) {
    let ambient = &sub.inclusion.target;
    let n = ambient.num_vertices();
    let projections: Vec<Matrix> = (0..n)
        .map(|v| {
            let w = &sub.inclusion.components[v];
            let rows = if w.cols() == 0 {
                (0..ambient.dims[v])
                    .map(|r| {
                        let mut e = vec![Scalar::zero(); ambient.dims[v]];
                        e[r] = Scalar::one();
                        e
                    })
                    .collect()
            } else {
                w.transpose().nullspace()
            };
            Matrix::from_rows_vec(ambient.dims[v], &rows)
        })
        .collect();
    let sections: Vec<Matrix> = projections
        .iter()
        .map(|q| {
            q.solve(&Matrix::identity(q.rows()))
                .expect("projection has full row rank")
        })
        .collect();
    let dims: Vec<usize> = projections.iter().map(Matrix::rows).collect();
    let maps = (0..n.saturating_sub(1))
        .map(|v| projections[v + 1].mul(&ambient.maps[v]).mul(&sections[v]))
        .collect();
    let module = Representation::from_parts(dims, maps);
    let projection = ModuleMap {
        source: ambient.clone(),
        target: module.clone(),
        components: projections,
    };
    (module, projection)
}

/// Vectors at each vertex spanning a complement of the incoming arrow's
/// image: their classes form a basis of the top.
pub fn top_generators(m: &Representation) -> Vec<(usize, Vec<Scalar>)> {
    let mut out = Vec::new();
    for v in 0..m.num_vertices() {
        let d = m.dims[v];
        let mut span = SpanBuilder::new(d);
        if v > 0 {
            for c in m.maps[v - 1].columns() {
                span.insert(c);
            }
        }
        for idx in 0..d {
            let mut e = vec![Scalar::zero(); d];
            e[idx] = Scalar::one();
            if span.insert(e.clone()) {
                out.push((v + 1, e));
            }
        }
    }
    out
}

/// Projective cover `P -> m`, with `P` a direct sum of indecomposable
/// projectives listed by vertex.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    pub summands: Vec<usize>,
    pub module: Representation,
    pub map: ModuleMap,
}

pub fn projective_cover(alg: &BoundQuiverAlgebra, m: &Representation) -> Result<ProjectiveCover> {
    let gens = top_generators(m);
    let n = m.num_vertices();
    let parts: Vec<Representation> = gens
        .iter()
        .map(|(t, _)| alg.projective(*t))
        .collect::<Result<_>>()?;
    let refs: Vec<&Representation> = parts.iter().collect();
    let module = if refs.is_empty() {
        Representation::zero(n)
    } else {
        Representation::direct_sum(&refs)
    };
    // walk each generator along the arrows; P(t) has at most one path t -> w
    let mut columns: Vec<Vec<Vec<Scalar>>> = vec![Vec::new(); n];
    for ((t, g), part) in gens.iter().zip(&parts) {
        let mut current = g.clone();
        for (w, column) in columns.iter_mut().enumerate().skip(t - 1) {
            if w > t - 1 {
                current = m.maps[w - 1].mul_vec(&current);
            }
            if part.dims[w] > 0 {
                debug_assert_eq!(part.dims[w], 1);
                column.push(current.clone());
            }
        }
    }
    let components: Vec<Matrix> = (0..n)
        .map(|w| Matrix::from_columns(m.dims[w], &columns[w]))
        .collect();
    let map = ModuleMap::new(module.clone(), m.clone(), components)?;
    if map.ranks() != m.dims {
        return Err(OracleError::CoverNotSurjective);
    }
    Ok(ProjectiveCover {
        summands: gens.into_iter().map(|(t, _)| t).collect(),
        module,
        map,
    })
}
