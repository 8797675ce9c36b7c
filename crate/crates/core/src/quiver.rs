//! Finite quivers, their paths, and relations (linear combinations of parallel paths).

use std::cmp::Ordering;
use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::linalg::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite directed multigraph with named vertices and arrows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new() -> Self {
        Self::default()
    }

    /// The one-vertex quiver without arrows; its path algebra is the base field.
    pub fn point(vertex: &str) -> Self {
        let mut q = Quiver::new();
        q.add_vertex(vertex).expect("fresh quiver");
        q
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<usize> {
        if self.vertices.iter().any(|v| v == name) {
            return Err(Error::DuplicateName(name.to_string()));
        }
        self.vertices.push(name.to_string());
        Ok(self.vertices.len() - 1)
    }

    pub fn add_arrow(&mut self, name: &str, source: &str, target: &str) -> Result<usize> {
        if self.arrows.iter().any(|a| a.name == name) {
            return Err(Error::DuplicateName(name.to_string()));
        }
        let source = self.vertex_index(source)?;
        let target = self.vertex_index(target)?;
        self.arrows.push(Arrow {
            name: name.to_string(),
            source,
            target,
        });
        Ok(self.arrows.len() - 1)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn arrow_index(&self, name: &str) -> Result<usize> {
        self.arrows
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| Error::UnknownArrow(name.to_string()))
    }

    /// Kahn's algorithm; `None` when there is a directed cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    queue.push_back(a.target);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Every path of length at most `max_len`, ordered by length, then by the
    /// arrow sequence in declaration order (trivial paths in vertex order).
    pub fn paths_up_to(&self, max_len: usize) -> Vec<Path> {
        let mut all: Vec<Path> = (0..self.vertex_count()).map(Path::trivial).collect();
        let mut frontier: Vec<Path> = self
            .arrows
            .iter()
            .enumerate()
            .map(|(i, a)| Path {
                start: a.source,
                end: a.target,
                arrows: vec![i],
            })
            .collect();
        for _ in 0..max_len {
            if frontier.is_empty() {
                break;
            }
            let mut next = Vec::new();
            for p in &frontier {
                for (i, a) in self.arrows.iter().enumerate() {
                    if a.source == p.end {
                        let mut arrows = p.arrows.clone();
                        arrows.push(i);
                        next.push(Path {
                            start: p.start,
                            end: a.target,
                            arrows,
                        });
                    }
                }
            }
            all.append(&mut frontier);
            frontier = next;
        }
        all
    }

    /// Paths from `from` to `to` of length at most `max_len`, in the order of [`Quiver::paths_up_to`].
    pub fn enumerate_paths(&self, from: usize, to: usize, max_len: usize) -> Vec<Path> {
        self.paths_up_to(max_len)
            .into_iter()
            .filter(|p| p.start == from && p.end == to)
            .collect()
    }

    /// Length of the longest path, or `None` for a cyclic quiver.
    pub fn longest_path_len(&self) -> Option<usize> {
        let order = self.topological_order()?;
        let mut best = vec![0usize; self.vertex_count()];
        for v in order {
            for a in self.arrows.iter().filter(|a| a.source == v) {
                best[a.target] = best[a.target].max(best[v] + 1);
            }
        }
        Some(best.into_iter().max().unwrap_or(0))
    }

    /// Same vertices, every arrow reversed; arrow indices and names are kept.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    name: a.name.clone(),
                    source: a.target,
                    target: a.source,
                })
                .collect(),
        }
    }

    pub fn path_from_names(&self, names: &[&str]) -> Result<Path> {
        let arrows = names
            .iter()
            .map(|n| self.arrow_index(n))
            .collect::<Result<Vec<_>>>()?;
        Path::from_arrows(self, arrows)
    }

    pub fn render_path(&self, p: &Path) -> String {
        if p.is_trivial() {
            format!("e_{}", self.vertices[p.start])
        } else {
            p.arrows
                .iter()
                .map(|&a| self.arrows[a].name.as_str())
                .collect::<Vec<_>>()
                .join("*")
        }
    }
}

/// A path: a vertex (length 0) or a composable arrow sequence, written left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    start: usize,
    end: usize,
    arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path {
            start: v,
            end: v,
            arrows: Vec::new(),
        }
    }

    pub fn from_arrows(q: &Quiver, arrows: Vec<usize>) -> Result<Self> {
        let Some(&first) = arrows.first() else {
            return Err(Error::InvalidPath("empty arrow sequence".into()));
        };
        if arrows.iter().any(|&a| a >= q.arrow_count()) {
            return Err(Error::InvalidPath("arrow index out of range".into()));
        }
        for w in arrows.windows(2) {
            if q.arrow(w[0]).target != q.arrow(w[1]).source {
                return Err(Error::InvalidPath(format!(
                    "`{}` does not compose with `{}`",
                    q.arrow(w[0]).name,
                    q.arrow(w[1]).name
                )));
            }
        }
        Ok(Path {
            start: q.arrow(first).source,
            end: q.arrow(*arrows.last().unwrap()).target,
            arrows,
        })
    }

    /// Trusted constructor for callers that already know the arrows compose.
    pub(crate) fn from_parts(start: usize, end: usize, arrows: Vec<usize>) -> Self {
        Path { start, end, arrows }
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self) -> usize {
        self.end
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Concatenation `self` then `other`, if composable.
    pub fn compose(&self, other: &Path) -> Option<Path> {
        if self.end != other.start {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            start: self.start,
            end: other.end,
            arrows,
        })
    }

    /// The same path read in the opposite quiver.
    pub fn reversed(&self) -> Path {
        Path {
            start: self.end,
            end: self.start,
            arrows: self.arrows.iter().rev().copied().collect(),
        }
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.arrows.len(), &self.arrows, self.start).cmp(&(
            other.arrows.len(),
            &other.arrows,
            other.start,
        ))
    }
}

/// `Σ λ_r p_r`: nonzero coefficients on pairwise distinct parallel paths of length ≥ 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RelationCombo {
    terms: Vec<(Scalar, Path)>,
}

impl RelationCombo {
    pub fn new(q: &Quiver, terms: Vec<(Scalar, Path)>) -> Result<Self> {
        let rel = RelationCombo { terms };
        rel.validate(q)?;
        Ok(rel)
    }

    /// A single path as a relation.
    pub fn monomial(q: &Quiver, path: Path) -> Result<Self> {
        Self::new(q, vec![(Scalar::one(), path)])
    }

    pub fn validate(&self, q: &Quiver) -> Result<()> {
        let Some((_, first)) = self.terms.first() else {
            return Err(Error::InvalidRelation("empty relation".into()));
        };
        let mut seen = HashSet::new();
        for (c, p) in &self.terms {
            if c.is_zero() {
                return Err(Error::InvalidRelation("zero coefficient".into()));
            }
            if p.len() < 2 {
                return Err(Error::InvalidRelation(format!(
                    "path `{}` has length {} < 2",
                    q.render_path(p),
                    p.len()
                )));
            }
            if p.start != first.start || p.end != first.end {
                return Err(Error::InvalidRelation(format!(
                    "paths `{}` and `{}` are not parallel",
                    q.render_path(first),
                    q.render_path(p)
                )));
            }
            if !seen.insert(p.clone()) {
                return Err(Error::InvalidRelation(format!(
                    "path `{}` repeated",
                    q.render_path(p)
                )));
            }
        }
        Ok(())
    }

    pub fn terms(&self) -> &[(Scalar, Path)] {
        &self.terms
    }

    pub fn start(&self) -> usize {
        self.terms[0].1.start
    }

    pub fn end(&self) -> usize {
        self.terms[0].1.end
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn reversed(&self) -> RelationCombo {
        RelationCombo {
            terms: self
                .terms
                .iter()
                .map(|(c, p)| (c.clone(), p.reversed()))
                .collect(),
        }
    }

    pub fn render(&self, q: &Quiver) -> String {
        let mut out = String::new();
        for (k, (c, p)) in self.terms.iter().enumerate() {
            let neg = *c < Scalar::zero();
            let mag = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                out.push_str(&format!("{mag}*"));
            }
            out.push_str(&q.render_path(p));
        }
        out
    }
}

/// The opposite quiver together with the arrow-reversed relations.
pub fn opposite(q: &Quiver, rels: &[RelationCombo]) -> (Quiver, Vec<RelationCombo>) {
    (q.opposite(), rels.iter().map(RelationCombo::reversed).collect())
}
