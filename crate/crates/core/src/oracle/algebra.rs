use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::linalg::{Scalar, SpanBuilder};
use crate::nakayama::{NakayamaPresentation, SubsetSpec};

use super::representation::Representation;
use super::{OracleError, Result};

/// The path algebra of `1 -> 2 -> ... -> n` modulo the path from `i` to `j`,
/// with its basis of nonzero paths. Vertices are 1-based.
#[derive(Clone, Debug)]
pub struct BoundQuiverAlgebra {
    n: usize,
    i: usize,
    j: usize,
    paths: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
}

impl BoundQuiverAlgebra {
    pub fn new(n: usize, i: usize, j: usize) -> Result<Self> {
        if n == 0 || i == 0 || j <= i + 1 || j > n {
            return Err(OracleError::Shape(format!(
                "relation {i} -> {j} does not fit a quiver with {n} vertices"
            )));
        }
        let mut paths = Vec::new();
        let mut index = HashMap::new();
        for u in 1..=n {
            for v in u..=n {
                if !(u <= i && v >= j) {
                    index.insert((u, v), paths.len());
                    paths.push((u, v));
                }
            }
        }
        Ok(BoundQuiverAlgebra {
            n,
            i,
            j,
            paths,
            index,
        })
    }

    pub fn from_presentation(p: &NakayamaPresentation) -> Self {
        BoundQuiverAlgebra::new(p.n(), p.i(), p.j()).expect("presentations are valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The zero relation as `(start, end)`.
    pub fn relation(&self) -> (usize, usize) {
        (self.i, self.j)
    }

    /// Nonzero paths `(source, target)`, the basis of the algebra.
    pub fn paths(&self) -> &[(usize, usize)] {
        &self.paths
    }

    pub fn dim(&self) -> usize {
        self.paths.len()
    }

    pub fn path_index(&self, source: usize, target: usize) -> Option<usize> {
        self.index.get(&(source, target)).copied()
    }

    /// Product of two basis paths (first `p`, then `q`), or `None` if zero.
    pub fn multiply(&self, p: usize, q: usize) -> Option<usize> {
        let (u, v) = self.paths[p];
        let (v2, w) = self.paths[q];
        if v != v2 {
            return None;
        }
        self.path_index(u, w)
    }

    /// Bilinear extension of [`Self::multiply`] to coordinate vectors.
    pub fn multiply_vectors(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim()];
        for (p, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (q, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                if let Some(r) = self.multiply(p, q) {
                    out[r] += a * b;
                }
            }
        }
        out
    }

    pub(crate) fn check_vertex(&self, t: usize) -> Result<()> {
        if t == 0 || t > self.n {
            Err(OracleError::Shape(format!(
                "vertex {t} out of range 1..={}",
                self.n
            )))
        } else {
            Ok(())
        }
    }

    /// `P(t) = e_t A`: at vertex `w` the paths `t -> w`, with arrows acting
    /// by right multiplication.
    pub fn projective(&self, t: usize) -> Result<Representation> {
        self.check_vertex(t)?;
        let basis_at = |w: usize| -> Vec<usize> { self.path_index(t, w).into_iter().collect() };
        let dims: Vec<usize> = (1..=self.n).map(|w| basis_at(w).len()).collect();
        let maps = (1..self.n)
            .map(|w| {
                let src = basis_at(w);
                let dst = basis_at(w + 1);
                let arrow = self.path_index(w, w + 1).expect("arrows are nonzero");
                let mut m = crate::linalg::Matrix::zeros(dst.len(), src.len());
                for (c, &p) in src.iter().enumerate() {
                    if let Some(q) = self.multiply(p, arrow) {
                        let r = dst
                            .iter()
                            .position(|&d| d == q)
                            .expect("target path listed");
                        m.set(r, c, Scalar::one());
                    }
                }
                m
            })
            .collect();
        Representation::new(self, dims, maps)
    }

    /// The uniserial module with one-dimensional spaces on `[a, b]`.
    pub fn interval(&self, a: usize, b: usize) -> Result<Representation> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        if a > b {
            return Err(OracleError::Shape(format!("empty interval [{a},{b}]")));
        }
        let dims: Vec<usize> = (1..=self.n)
            .map(|w| usize::from(a <= w && w <= b))
            .collect();
        let maps = (1..self.n)
            .map(|w| {
                let mut m = crate::linalg::Matrix::zeros(dims[w], dims[w - 1]);
                if dims[w] == 1 && dims[w - 1] == 1 {
                    m.set(0, 0, Scalar::one());
                }
                m
            })
            .collect();
        Representation::new(self, dims, maps)
    }

    pub fn simple(&self, t: usize) -> Result<Representation> {
        self.interval(t, t)
    }

    pub fn zero_module(&self) -> Representation {
        Representation::zero(self.n)
    }

    /// True when the composite of the arrow maps from `i` to `j` vanishes.
    pub fn satisfies_relation(&self, dims: &[usize], maps: &[crate::linalg::Matrix]) -> bool {
        let mut acc = crate::linalg::Matrix::identity(dims[self.i - 1]);
        for w in self.i..self.j {
            acc = maps[w - 1].mul(&acc);
        }
        acc.is_zero()
    }

    /// Coordinate vector of the idempotent `e_t`.
    pub fn idempotent(&self, t: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        v[self.path_index(t, t).expect("trivial paths are nonzero")] = Scalar::one();
        v
    }

    /// Basis of the two-sided ideal generated by `{e_t : t in s}`, found by
    /// closing the span under multiplication by basis paths on both sides.
    pub fn two_sided_ideal(&self, s: SubsetSpec) -> Vec<Vec<Scalar>> {
        let mut span = SpanBuilder::new(self.dim());
        let mut frontier: Vec<Vec<Scalar>> = (1..=self.n)
            .filter(|&t| s.contains(t))
            .map(|t| self.idempotent(t))
            .collect();
        while let Some(x) = frontier.pop() {
            if !span.insert(x.clone()) {
                continue;
            }
            for p in 0..self.dim() {
                let mut e = vec![Scalar::zero(); self.dim()];
                e[p] = Scalar::one();
                frontier.push(self.multiply_vectors(&x, &e));
                frontier.push(self.multiply_vectors(&e, &x));
            }
        }
        span.basis()
    }
}

/// Checks `I^2 = I` for the ideal generated by the idempotents in `s`.
pub fn is_idempotent_oracle(alg: &BoundQuiverAlgebra, s: SubsetSpec) -> bool {
    span_is_idempotent(alg, alg.two_sided_ideal(s))
}

/// `ideal` must be a linearly independent spanning set of a two-sided ideal.
pub fn span_is_idempotent(alg: &BoundQuiverAlgebra, ideal: Vec<Vec<Scalar>>) -> bool {
    let mut whole = SpanBuilder::new(alg.dim());
    for x in &ideal {
        whole.insert(x.clone());
    }
    let mut square = SpanBuilder::new(alg.dim());
    for x in &ideal {
        for y in &ideal {
            let xy = alg.multiply_vectors(x, y);
            if !whole.contains(&xy) {
                return false;
            }
            square.insert(xy);
        }
    }
    square.rank() == whole.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_basis() {
        let a = BoundQuiverAlgebra::new(4, 1, 4).unwrap();
        // 10 paths in A_4 minus the one from 1 to 4
        assert_eq!(a.dim(), 9);
        assert!(a.path_index(1, 4).is_none());
        let p12 = a.path_index(1, 2).unwrap();
        let p23 = a.path_index(2, 3).unwrap();
        let p34 = a.path_index(3, 4).unwrap();
        let p13 = a.multiply(p12, p23).unwrap();
        assert_eq!(a.paths()[p13], (1, 3));
        assert!(a.multiply(p13, p34).is_none());
        assert!(a.multiply(p23, p12).is_none());
    }

    #[test]
    fn projective_shapes() {
        let a = BoundQuiverAlgebra::new(4, 1, 4).unwrap();
        assert_eq!(a.projective(1).unwrap().dims(), &[1, 1, 1, 0]);
        assert_eq!(a.projective(2).unwrap().dims(), &[0, 1, 1, 1]);
        assert!(a.projective(5).is_err());
    }

    #[test]
    fn ideals() {
        let a = BoundQuiverAlgebra::new(4, 1, 4).unwrap();
        assert!(a.two_sided_ideal(SubsetSpec::empty()).is_empty());
        assert_eq!(a.two_sided_ideal(SubsetSpec::full(4)).len(), 9);
        // paths through vertex 2: (1,2),(1,3),(2,2),(2,3),(2,4)
        assert_eq!(a.two_sided_ideal(SubsetSpec::from_members([2])).len(), 5);
        for s in SubsetSpec::all(4) {
            assert!(is_idempotent_oracle(&a, s));
        }
    }

    #[test]
    fn radical_is_not_idempotent() {
        let a = BoundQuiverAlgebra::new(4, 1, 4).unwrap();
        let radical: Vec<Vec<Scalar>> = (0..a.dim())
            .filter(|&p| a.paths()[p].0 < a.paths()[p].1)
            .map(|p| {
                let mut v = vec![Scalar::zero(); a.dim()];
                v[p] = Scalar::one();
                v
            })
            .collect();
        assert!(!span_is_idempotent(&a, radical));
    }
}
