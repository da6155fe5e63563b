use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::config::{BrauerConfiguration, Occurrence, VertexId};
use super::{BrauerError, Result};

/// Arrow `a_index^{vertex}` from polygon `source` to polygon `target`;
/// `index` is the 1-based position of the source occurrence in `S_vertex`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub vertex: VertexId,
    pub index: usize,
}

impl Arrow {
    pub fn label(&self) -> String {
        format!("a_{}^{{{}}}", self.index, self.vertex)
    }

    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigQuiver {
    /// One quiver vertex per polygon, numbered like the polygons.
    pub num_vertices: usize,
    pub arrows: Vec<Arrow>,
    /// For each non-truncated vertex, its arrows in successor-sequence order.
    cycles: Vec<(VertexId, Vec<usize>, Vec<Occurrence>)>,
}

impl ConfigQuiver {
    pub fn loop_count(&self) -> usize {
        self.arrows.iter().filter(|a| a.is_loop()).count()
    }

    /// Arrows induced by `v` in successor order, with the occurrences they leave from.
    pub fn cycle_of(&self, v: &VertexId) -> Option<(&[usize], &[Occurrence])> {
        self.cycles
            .iter()
            .find(|(id, _, _)| id == v)
            .map(|(_, arrows, occ)| (arrows.as_slice(), occ.as_slice()))
    }
}

pub fn build_quiver(config: &BrauerConfiguration) -> Result<ConfigQuiver> {
    let report = config.validate();
    if !report.is_valid() {
        return Err(BrauerError::Invalid(report));
    }
    let mut arrows = Vec::new();
    let mut cycles = Vec::new();
    for v in config.vertices() {
        if config.is_truncated(&v.id) {
            continue;
        }
        let seq = config.successor_sequence(&v.id);
        let t = seq.len();
        let mut ids = Vec::with_capacity(t);
        for p in 0..t {
            ids.push(arrows.len());
            arrows.push(Arrow {
                source: seq[p].polygon,
                target: seq[(p + 1) % t].polygon,
                vertex: v.id.clone(),
                index: p + 1,
            });
        }
        cycles.push((v.id.clone(), ids, seq));
    }
    Ok(ConfigQuiver {
        num_vertices: config.polygons().len(),
        arrows,
        cycles,
    })
}

/// A special cycle: the cycle of arrows induced by `vertex`, rotated so that it
/// starts at the quiver vertex of `base.polygon`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialCycle {
    pub vertex: VertexId,
    pub arrows: Vec<usize>,
    pub base: Occurrence,
}

impl SpecialCycle {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn first_arrow(&self) -> usize {
        self.arrows[0]
    }
}

/// All rotations of one vertex's cycle. The representative is the rotation
/// starting at the first element of the successor sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialCycleClass {
    pub vertex: VertexId,
    pub mu: u64,
    pub rotations: Vec<SpecialCycle>,
}

impl SpecialCycleClass {
    pub fn representative(&self) -> &SpecialCycle {
        &self.rotations[0]
    }
}

pub fn special_cycles(
    config: &BrauerConfiguration,
    quiver: &ConfigQuiver,
) -> Vec<SpecialCycleClass> {
    quiver
        .cycles
        .iter()
        .map(|(v, arrows, seq)| {
            let t = arrows.len();
            let rotations = (0..t)
                .map(|p| SpecialCycle {
                    vertex: v.clone(),
                    arrows: arrows[p..].iter().chain(&arrows[..p]).copied().collect(),
                    base: seq[p],
                })
                .collect();
            SpecialCycleClass {
                vertex: v.clone(),
                mu: config.mu(v).unwrap_or(1),
                rotations,
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclePower {
    pub cycle: SpecialCycle,
    pub power: u64,
}

impl CyclePower {
    /// The arrow sequence of `cycle^power`.
    pub fn path(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.cycle.len() * self.power as usize);
        for _ in 0..self.power {
            out.extend_from_slice(&self.cycle.arrows);
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationKind {
    TypeI,
    TypeII,
    TypeIII,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `left - right`, both special cycles at the quiver vertex of `polygon`.
    TypeI {
        polygon: usize,
        left: CyclePower,
        right: CyclePower,
    },
    /// `cycle^mu * arrow`, with `arrow` the first arrow of the cycle.
    TypeII { cycle: CyclePower, arrow: usize },
    /// The quadratic monomial `first * second`.
    TypeIII { first: usize, second: usize },
}

impl Relation {
    pub fn kind(&self) -> RelationKind {
        match self {
            Relation::TypeI { .. } => RelationKind::TypeI,
            Relation::TypeII { .. } => RelationKind::TypeII,
            Relation::TypeIII { .. } => RelationKind::TypeIII,
        }
    }

    pub fn render(&self, quiver: &ConfigQuiver) -> String {
        let cyc = |c: &CyclePower| {
            let body: Vec<String> = c
                .cycle
                .arrows
                .iter()
                .map(|&a| quiver.arrows[a].label())
                .collect();
            format!("({})^{}", body.join(" "), c.power)
        };
        match self {
            Relation::TypeI { left, right, .. } => format!("I: {} - {}", cyc(left), cyc(right)),
            Relation::TypeII { cycle, arrow } => {
                format!("II: {} {}", cyc(cycle), quiver.arrows[*arrow].label())
            }
            Relation::TypeIII { first, second } => format!(
                "III: {} {}",
                quiver.arrows[*first].label(),
                quiver.arrows[*second].label()
            ),
        }
    }
}

fn cycle_at<'a>(
    classes: &'a [SpecialCycleClass],
    vertex: &VertexId,
    at: Occurrence,
) -> Option<&'a SpecialCycle> {
    classes
        .iter()
        .find(|c| &c.vertex == vertex)?
        .rotations
        .iter()
        .find(|r| r.base == at)
}

/// Generators of the ideal of relations.
///
/// Type III only lists composable pairs `ab` (target of `a` is the source of
/// `b`); non-composable products already vanish in the path algebra.
pub fn relations(config: &BrauerConfiguration, quiver: &ConfigQuiver) -> Vec<Relation> {
    let classes = special_cycles(config, quiver);
    let mut out = Vec::new();

    for (p, poly) in config.polygons().iter().enumerate() {
        let cycles: Vec<(&SpecialCycle, u64)> = (0..poly.len())
            .filter_map(|pos| {
                let v = &poly.entries()[pos];
                if config.is_truncated(v) {
                    return None;
                }
                let at = Occurrence {
                    polygon: p,
                    occurrence: poly.occurrence_index(pos),
                };
                cycle_at(&classes, v, at).map(|c| (c, config.mu(v).unwrap_or(1)))
            })
            .collect();
        for a in 0..cycles.len() {
            for b in a + 1..cycles.len() {
                out.push(Relation::TypeI {
                    polygon: p,
                    left: CyclePower {
                        cycle: cycles[a].0.clone(),
                        power: cycles[a].1,
                    },
                    right: CyclePower {
                        cycle: cycles[b].0.clone(),
                        power: cycles[b].1,
                    },
                });
            }
        }
    }

    for class in &classes {
        for rot in &class.rotations {
            out.push(Relation::TypeII {
                cycle: CyclePower {
                    cycle: rot.clone(),
                    power: class.mu,
                },
                arrow: rot.first_arrow(),
            });
        }
    }

    let mut allowed: BTreeSet<(usize, usize)> = BTreeSet::new();
    for class in &classes {
        let cyc = &class.representative().arrows;
        let t = cyc.len();
        if t >= 2 {
            for p in 0..t {
                allowed.insert((cyc[p], cyc[(p + 1) % t]));
            }
        } else if class.mu > 1 {
            // loop of a valency-one vertex: its square is a subpath of C^mu
            allowed.insert((cyc[0], cyc[0]));
        }
    }
    for (a, arr_a) in quiver.arrows.iter().enumerate() {
        for (b, arr_b) in quiver.arrows.iter().enumerate() {
            if arr_a.target == arr_b.source && !allowed.contains(&(a, b)) {
                out.push(Relation::TypeIII {
                    first: a,
                    second: b,
                });
            }
        }
    }
    out
}

/// One relation per line.
pub fn relations_text(quiver: &ConfigQuiver, rels: &[Relation]) -> String {
    let mut s = String::new();
    for r in rels {
        s.push_str(&r.render(quiver));
        s.push('\n');
    }
    s
}

pub fn to_dot(config: &BrauerConfiguration, quiver: &ConfigQuiver) -> String {
    let mut s = String::from("digraph Q {\n");
    for (p, poly) in config.polygons().iter().enumerate() {
        let entries: Vec<&str> = poly.entries().iter().map(VertexId::as_str).collect();
        let _ = writeln!(s, "  v{p} [label=\"V{p} ({})\"];", entries.join(" "));
    }
    for a in &quiver.arrows {
        let _ = writeln!(
            s,
            "  v{} -> v{} [label=\"{}\"];",
            a.source,
            a.target,
            a.label()
        );
    }
    s.push_str("}\n");
    s
}
