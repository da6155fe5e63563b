use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

/// Opaque vertex label. Generators use decimal integers, including `"0"`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(label: impl Into<String>) -> Self {
        VertexId(label.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The label read as an integer, if it is one.
    pub fn as_integer(&self) -> Option<i64> {
        self.0.parse().ok()
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId(s.to_string())
    }
}

impl From<String> for VertexId {
    fn from(s: String) -> Self {
        VertexId(s)
    }
}

impl From<usize> for VertexId {
    fn from(v: usize) -> Self {
        VertexId(v.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: VertexId,
    pub mu: u64,
}

/// Polygon entries in presentation order; repetitions allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polygon(pub Vec<VertexId>);

impl Polygon {
    pub fn new<I, V>(entries: I) -> Self
    where
        I: IntoIterator<Item = V>,
        V: Into<VertexId>,
    {
        Polygon(entries.into_iter().map(Into::into).collect())
    }

    pub fn entries(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn occurrences_of(&self, v: &VertexId) -> usize {
        self.0.iter().filter(|x| *x == v).count()
    }

    /// Position in the entry list of the `occurrence`-th copy of `v`.
    pub fn position_of(&self, v: &VertexId, occurrence: usize) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, x)| *x == v)
            .nth(occurrence)
            .map(|(i, _)| i)
    }

    /// Which copy of its vertex the entry at `position` is.
    pub fn occurrence_index(&self, position: usize) -> usize {
        let v = &self.0[position];
        self.0[..position].iter().filter(|x| *x == v).count()
    }
}

/// One element of a successor sequence: the `occurrence`-th copy of the
/// vertex inside polygon `polygon` (both zero-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Occurrence {
    pub polygon: usize,
    pub occurrence: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DuplicateVertex(VertexId),
    /// B3: multiplicities are positive integers.
    NonPositiveMultiplicity(VertexId),
    UnknownVertexInPolygon {
        polygon: usize,
        vertex: VertexId,
    },
    /// B5
    VertexInNoPolygon(VertexId),
    /// B6
    PolygonTooSmall {
        polygon: usize,
        size: usize,
    },
    /// B7
    PolygonWithoutNonTruncatedVertex {
        polygon: usize,
    },
    OrientationUnknownVertex(VertexId),
    /// A successor sequence that is not a permutation of the vertex's occurrences.
    OrientationMismatch {
        vertex: VertexId,
        detail: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateVertex(v) => write!(f, "vertex {v} declared twice"),
            Violation::NonPositiveMultiplicity(v) => {
                write!(f, "B3: vertex {v} has multiplicity 0")
            }
            Violation::UnknownVertexInPolygon { polygon, vertex } => {
                write!(f, "polygon {polygon} uses undeclared vertex {vertex}")
            }
            Violation::VertexInNoPolygon(v) => write!(f, "B5: vertex {v} occurs in no polygon"),
            Violation::PolygonTooSmall { polygon, size } => {
                write!(f, "B6: polygon {polygon} has {size} entries")
            }
            Violation::PolygonWithoutNonTruncatedVertex { polygon } => {
                write!(f, "B7: polygon {polygon} has no vertex with val*mu > 1")
            }
            Violation::OrientationUnknownVertex(v) => {
                write!(f, "orientation given for undeclared vertex {v}")
            }
            Violation::OrientationMismatch { vertex, detail } => {
                write!(f, "successor sequence of {vertex}: {detail}")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrauerConfiguration {
    vertices: Vec<Vertex>,
    polygons: Vec<Polygon>,
    orientation: BTreeMap<VertexId, Vec<Occurrence>>,
}

impl BrauerConfiguration {
    /// A configuration with the default orientation. Nothing is validated
    /// here; see [`BrauerConfiguration::validate`].
    pub fn new(vertices: Vec<Vertex>, polygons: Vec<Polygon>) -> Self {
        BrauerConfiguration {
            vertices,
            polygons,
            orientation: BTreeMap::new(),
        }
    }

    /// Overrides the successor sequences of the listed vertices. Vertices
    /// absent from `orientation` keep the default order.
    pub fn with_orientation(mut self, orientation: BTreeMap<VertexId, Vec<Occurrence>>) -> Self {
        self.orientation = orientation;
        self
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn polygons(&self) -> &[Polygon] {
        &self.polygons
    }

    pub fn explicit_orientation(&self) -> &BTreeMap<VertexId, Vec<Occurrence>> {
        &self.orientation
    }

    pub fn vertex(&self, id: &VertexId) -> Option<&Vertex> {
        self.vertices.iter().find(|v| &v.id == id)
    }

    pub fn mu(&self, id: &VertexId) -> Option<u64> {
        self.vertex(id).map(|v| v.mu)
    }

    pub(crate) fn valency_unchecked(&self, v: &VertexId) -> usize {
        self.polygons.iter().map(|p| p.occurrences_of(v)).sum()
    }

    pub fn is_truncated(&self, v: &VertexId) -> bool {
        let mu = self.mu(v).unwrap_or(0);
        self.valency_unchecked(v) as u64 * mu == 1
    }

    /// The successor sequence `S_v`: the explicit one if supplied, otherwise
    /// all occurrences ordered by (polygon position, occurrence position).
    pub fn successor_sequence(&self, v: &VertexId) -> Vec<Occurrence> {
        if let Some(seq) = self.orientation.get(v) {
            return seq.clone();
        }
        self.default_sequence(v)
    }

    fn default_sequence(&self, v: &VertexId) -> Vec<Occurrence> {
        self.polygons
            .iter()
            .enumerate()
            .flat_map(|(p, poly)| {
                (0..poly.occurrences_of(v)).map(move |o| Occurrence {
                    polygon: p,
                    occurrence: o,
                })
            })
            .collect()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let mut seen = BTreeSet::new();
        for v in &self.vertices {
            if !seen.insert(v.id.clone()) {
                violations.push(Violation::DuplicateVertex(v.id.clone()));
            }
            if v.mu == 0 {
                violations.push(Violation::NonPositiveMultiplicity(v.id.clone()));
            }
        }
        for (p, poly) in self.polygons.iter().enumerate() {
            for entry in poly.entries() {
                if !seen.contains(entry) {
                    violations.push(Violation::UnknownVertexInPolygon {
                        polygon: p,
                        vertex: entry.clone(),
                    });
                }
            }
        }
        for v in &self.vertices {
            if self.valency_unchecked(&v.id) == 0 {
                violations.push(Violation::VertexInNoPolygon(v.id.clone()));
            }
        }
        for (p, poly) in self.polygons.iter().enumerate() {
            if poly.len() < 2 {
                violations.push(Violation::PolygonTooSmall {
                    polygon: p,
                    size: poly.len(),
                });
            }
            let has_big = poly.entries().iter().any(|e| {
                let mu = self.mu(e).unwrap_or(0);
                self.valency_unchecked(e) as u64 * mu > 1
            });
            if !has_big {
                violations.push(Violation::PolygonWithoutNonTruncatedVertex { polygon: p });
            }
        }
        for (v, seq) in &self.orientation {
            if !seen.contains(v) {
                violations.push(Violation::OrientationUnknownVertex(v.clone()));
                continue;
            }
            let mut expected: Vec<Occurrence> = self.default_sequence(v);
            let mut given = seq.clone();
            expected.sort();
            given.sort();
            if expected != given {
                violations.push(Violation::OrientationMismatch {
                    vertex: v.clone(),
                    detail: format!(
                        "expected each of the {} occurrences exactly once, got {:?}",
                        expected.len(),
                        seq.iter()
                            .map(|o| (o.polygon, o.occurrence))
                            .collect::<Vec<_>>()
                    ),
                });
            }
        }
        ValidationReport { violations }
    }

    pub(crate) fn is_connected(&self) -> bool {
        // union-find over vertices (0..nv) and polygons (nv..nv+np)
        let index: HashMap<&VertexId, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (&v.id, i))
            .collect();
        let nv = self.vertices.len();
        let total = nv + self.polygons.len();
        if total <= 1 {
            return true;
        }
        let mut parent: Vec<usize> = (0..total).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut c = x;
            while parent[c] != r {
                let next = parent[c];
                parent[c] = r;
                c = next;
            }
            r
        }
        for (p, poly) in self.polygons.iter().enumerate() {
            for e in poly.entries() {
                if let Some(&vi) = index.get(e) {
                    let a = find(&mut parent, vi);
                    let b = find(&mut parent, nv + p);
                    parent[a] = b;
                }
            }
        }
        let root = find(&mut parent, 0);
        (1..total).all(|x| find(&mut parent, x) == root)
    }

    pub(crate) fn reduced(&self) -> BrauerConfiguration {
        let mut polygons = self.polygons.clone();
        loop {
            let mut changed = false;
            for poly in polygons.iter_mut() {
                if poly.len() < 3 {
                    continue;
                }
                if let Some(pos) = poly.0.iter().position(|e| self.is_truncated(e)) {
                    poly.0.remove(pos);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let occurs = |id: &VertexId| polygons.iter().any(|p| p.occurrences_of(id) > 0);
        let vertices: Vec<Vertex> = self
            .vertices
            .iter()
            .filter(|v| occurs(&v.id) || self.valency_unchecked(&v.id) == 0)
            .cloned()
            .collect();
        let orientation = self
            .orientation
            .iter()
            .filter(|(id, _)| vertices.iter().any(|v| &v.id == *id))
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        BrauerConfiguration {
            vertices,
            polygons,
            orientation,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vx(id: &str, mu: u64) -> Vertex {
        Vertex { id: id.into(), mu }
    }

    #[test]
    fn single_entry_polygon_violates_b6() {
        let c = BrauerConfiguration::new(vec![vx("a", 2)], vec![Polygon::new(["a"])]);
        let r = c.validate();
        assert!(r.violations.contains(&Violation::PolygonTooSmall {
            polygon: 0,
            size: 1
        }));
    }

    #[test]
    fn all_truncated_polygon_violates_b7() {
        let c =
            BrauerConfiguration::new(vec![vx("a", 1), vx("b", 1)], vec![Polygon::new(["a", "b"])]);
        let r = c.validate();
        assert_eq!(
            r.violations,
            vec![Violation::PolygonWithoutNonTruncatedVertex { polygon: 0 }]
        );
    }

    #[test]
    fn unused_vertex_violates_b5() {
        let c =
            BrauerConfiguration::new(vec![vx("a", 1), vx("z", 1)], vec![Polygon::new(["a", "a"])]);
        assert_eq!(
            c.validate().violations,
            vec![Violation::VertexInNoPolygon("z".into())]
        );
    }

    #[test]
    fn bad_orientation_reported() {
        let mut o = BTreeMap::new();
        o.insert(
            VertexId::from("a"),
            vec![Occurrence {
                polygon: 0,
                occurrence: 0,
            }],
        );
        let c = BrauerConfiguration::new(
            vec![vx("a", 1), vx("b", 2), vx("c", 2)],
            vec![Polygon::new(["a", "b"]), Polygon::new(["a", "c"])],
        )
        .with_orientation(o);
        let r = c.validate();
        assert_eq!(r.violations.len(), 1);
        assert!(matches!(
            r.violations[0],
            Violation::OrientationMismatch { .. }
        ));
    }

    #[test]
    fn default_sequence_order() {
        let c = BrauerConfiguration::new(
            vec![vx("a", 1), vx("b", 1)],
            vec![Polygon::new(["b", "a", "a"]), Polygon::new(["a", "b"])],
        );
        let s = c.successor_sequence(&"a".into());
        let pairs: Vec<_> = s.iter().map(|o| (o.polygon, o.occurrence)).collect();
        assert_eq!(pairs, vec![(0, 0), (0, 1), (1, 0)]);
    }

    #[test]
    fn occurrence_positions() {
        let p = Polygon::new(["a", "b", "a"]);
        assert_eq!(p.position_of(&"a".into(), 1), Some(2));
        assert_eq!(p.occurrence_index(2), 1);
        assert_eq!(p.occurrence_index(1), 0);
    }
}
