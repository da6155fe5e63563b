//! Words, messages and integer specializations of Brauer configurations,
//! and the family `Gamma_n` whose specialized words count non-homological
//! ideals.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::brauer::{BrauerConfiguration, Occurrence, Polygon, Vertex, VertexId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MessageError {
    #[error("Gamma_n needs n >= 4, got {0}")]
    GammaOutOfRange(usize),
    #[error("vertex {0} is not in the specialization's domain")]
    Unmapped(String),
    #[error("vertex label {0:?} is not an integer")]
    NonIntegerLabel(String),
    #[error(
        "vertices {a} and {b} share the image {image} but have multiplicities {mu_a} and {mu_b}"
    )]
    IllDefinedMultiplicity {
        a: String,
        b: String,
        image: BigInt,
        mu_a: u64,
        mu_b: u64,
    },
    #[error("closed form needs n >= 3, got {0}")]
    ClosedFormOutOfRange(usize),
}

/// `Gamma_n` for `n >= 4`: vertices `0..=n-2`, polygons
/// `U_k = {n-2, n-k-1}` for `k = 2..=n-1` (in that order), `mu(n-2) = 1`,
/// `mu(n-k-1) = n-2`, and `S_{n-2} = U_2 < U_3 < ... < U_{n-1}`.
pub fn gamma_n(n: usize) -> Result<BrauerConfiguration, MessageError> {
    if n < 4 {
        return Err(MessageError::GammaOutOfRange(n));
    }
    let hub = n - 2;
    let vertices = (0..=hub)
        .map(|v| Vertex {
            id: v.into(),
            mu: if v == hub { 1 } else { (n - 2) as u64 },
        })
        .collect();
    let polygons = (2..n).map(|k| Polygon::new([hub, n - k - 1])).collect();
    let mut orientation = BTreeMap::new();
    orientation.insert(
        VertexId::from(hub),
        (0..n - 2)
            .map(|p| Occurrence {
                polygon: p,
                occurrence: 0,
            })
            .collect(),
    );
    for k in 2..n {
        orientation.insert(
            VertexId::from(n - k - 1),
            vec![Occurrence {
                polygon: k - 2,
                occurrence: 0,
            }],
        );
    }
    Ok(BrauerConfiguration::new(vertices, polygons).with_orientation(orientation))
}

/// `alpha_1^{f_1} ... alpha_m^{f_m}`, ordered by first occurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    pub factors: Vec<(VertexId, usize)>,
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, e) in &self.factors {
            write!(f, "({v})")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

pub fn word(polygon: &Polygon) -> Word {
    let mut factors: Vec<(VertexId, usize)> = Vec::new();
    for e in polygon.entries() {
        match factors.iter_mut().find(|(v, _)| v == e) {
            Some((_, n)) => *n += 1,
            None => factors.push((e.clone(), 1)),
        }
    }
    Word { factors }
}

/// One word per polygon, in polygon order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Message {
    pub summands: Vec<Word>,
}

impl fmt::Display for Message {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.summands.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

pub fn message(config: &BrauerConfiguration) -> Message {
    Message {
        summands: config.polygons().iter().map(word).collect(),
    }
}

/// How the specialized factors of one word are combined, left to right.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fold {
    Sum,
    Product,
    /// `x_1 - x_2 - ... - x_m`
    OrderedDifference,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecializationRule {
    pub vertex_map: BTreeMap<VertexId, BigInt>,
    pub fold: Fold,
}

impl SpecializationRule {
    pub fn new(vertex_map: BTreeMap<VertexId, BigInt>, fold: Fold) -> Self {
        SpecializationRule { vertex_map, fold }
    }

    /// `e(alpha) = 2^alpha` on integer labels.
    pub fn pow2(config: &BrauerConfiguration, fold: Fold) -> Result<Self, MessageError> {
        Self::from_labels(config, fold, |x| {
            let exp = u32::try_from(x).map_err(|_| x)?;
            Ok(BigInt::from(2u8).pow(exp))
        })
    }

    /// `e(alpha) = alpha` on integer labels.
    pub fn identity(config: &BrauerConfiguration, fold: Fold) -> Result<Self, MessageError> {
        Self::from_labels(config, fold, |x| Ok(BigInt::from(x)))
    }

    pub fn constant(config: &BrauerConfiguration, value: i64, fold: Fold) -> Self {
        let vertex_map = config
            .vertices()
            .iter()
            .map(|v| (v.id.clone(), BigInt::from(value)))
            .collect();
        SpecializationRule { vertex_map, fold }
    }

    fn from_labels(
        config: &BrauerConfiguration,
        fold: Fold,
        f: impl Fn(i64) -> Result<BigInt, i64>,
    ) -> Result<Self, MessageError> {
        let mut vertex_map = BTreeMap::new();
        for v in config.vertices() {
            let x =
                v.id.as_integer()
                    .ok_or_else(|| MessageError::NonIntegerLabel(v.id.as_str().to_string()))?;
            let image =
                f(x).map_err(|_| MessageError::NonIntegerLabel(v.id.as_str().to_string()))?;
            vertex_map.insert(v.id.clone(), image);
        }
        Ok(SpecializationRule { vertex_map, fold })
    }

    /// Every vertex must be mapped, and vertices with equal images need
    /// equal multiplicities so that `mu^e` is well defined. Injectivity is
    /// not required.
    pub fn check(&self, config: &BrauerConfiguration) -> Result<(), MessageError> {
        let mut seen: BTreeMap<&BigInt, &Vertex> = BTreeMap::new();
        for v in config.vertices() {
            let image = self
                .vertex_map
                .get(&v.id)
                .ok_or_else(|| MessageError::Unmapped(v.id.as_str().to_string()))?;
            if let Some(prev) = seen.get(image) {
                if prev.mu != v.mu {
                    return Err(MessageError::IllDefinedMultiplicity {
                        a: prev.id.as_str().to_string(),
                        b: v.id.as_str().to_string(),
                        image: image.clone(),
                        mu_a: prev.mu,
                        mu_b: v.mu,
                    });
                }
            } else {
                seen.insert(image, v);
            }
        }
        Ok(())
    }
}

pub fn specialize_word(w: &Word, rule: &SpecializationRule) -> Result<BigInt, MessageError> {
    let mut values = Vec::new();
    for (v, e) in &w.factors {
        let x = rule
            .vertex_map
            .get(v)
            .ok_or_else(|| MessageError::Unmapped(v.as_str().to_string()))?;
        values.extend(std::iter::repeat_n(x, *e));
    }
    let mut it = values.into_iter();
    let Some(first) = it.next() else {
        return Ok(match rule.fold {
            Fold::Product => BigInt::one(),
            _ => BigInt::zero(),
        });
    };
    Ok(it.fold(first.clone(), |acc, x| match rule.fold {
        Fold::Sum => acc + x,
        Fold::Product => acc * x,
        Fold::OrderedDifference => acc - x,
    }))
}

/// Sum of the specialized words of all polygons.
pub fn specialized_message(
    config: &BrauerConfiguration,
    rule: &SpecializationRule,
) -> Result<BigInt, MessageError> {
    rule.check(config)?;
    let mut total = BigInt::zero();
    for w in message(config).summands {
        total += specialize_word(&w, rule)?;
    }
    Ok(total)
}

/// `(n-2) 2^(n-2) - 2^(n-2) + 1`, the value of the `Gamma_n` message under
/// `e = 2^alpha` with difference folding. Defined for `n >= 3`; the `n = 3`
/// value lies outside the range where `Gamma_n` itself exists.
pub fn gamma_message_closed_form(n: usize) -> Result<BigInt, MessageError> {
    if n < 3 {
        return Err(MessageError::ClosedFormOutOfRange(n));
    }
    let p = BigInt::one() << (n - 2);
    Ok(BigInt::from(n - 2) * &p - p + 1)
}
