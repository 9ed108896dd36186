//! Combinatorial filling certificates for a pair of multicurves.
//!
//! The union of two multicurves in minimal position is a 4-valent graph
//! whose vertices are crossings. Recording the cyclic order of the four
//! strands at each crossing makes it a fat graph; the multicurves fill the
//! surface iff that fat graph is connected and its faces rebuild a surface
//! of the expected genus.
//!
//! Text format, one item per line (`#` starts a comment):
//!
//! ```text
//! curve c1                 # optional; declares a curve with no crossings
//! v0: h0 h1 h2 h3          # half-edge ids in counterclockwise slot order
//! e0: v0.0 v1.2 c1         # edge joining two slots, labelled by its curve
//! ```
//!
//! Slots 0 and 2 of a vertex carry one strand and slots 1 and 3 the other;
//! the two strands belong to different families. A curve's family is read
//! from the first letter of its label (`c...` or `d...`).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fatgraph::FatGraph;
use crate::matrix::IntMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    C,
    D,
}

impl Family {
    pub fn of_label(label: &str) -> Option<Family> {
        match label.chars().next() {
            Some('c') => Some(Family::C),
            Some('d') => Some(Family::D),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RibbonVertex {
    pub name: String,
    pub half_edges: [String; 4],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Slot {
    pub vertex: usize,
    pub slot: usize,
}

impl Slot {
    fn half_edge(self) -> usize {
        4 * self.vertex + self.slot
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RibbonEdge {
    pub name: String,
    pub ends: [Slot; 2],
    pub curve: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RibbonConfig {
    vertices: Vec<RibbonVertex>,
    edges: Vec<RibbonEdge>,
    curves: BTreeSet<String>,
}

fn parse_err(file: &str, line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        file: file.to_string(),
        line,
        msg: msg.into(),
    }
}

impl RibbonConfig {
    pub fn parse(text: &str, file: &str) -> Result<Self> {
        let mut vertex_lines = Vec::new();
        let mut edge_lines = Vec::new();
        let mut curves = BTreeSet::new();

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("curve ") {
                let label = rest.trim();
                if Family::of_label(label).is_none() || label.contains(char::is_whitespace) {
                    return Err(parse_err(file, line_no, format!("bad curve label `{label}`")));
                }
                curves.insert(label.to_string());
                continue;
            }
            let (head, body) = line
                .split_once(':')
                .ok_or_else(|| parse_err(file, line_no, "expected `v<id>:` or `e<id>:`"))?;
            let head = head.trim();
            let tokens: Vec<&str> = body.split_whitespace().collect();
            if head.starts_with('v') {
                vertex_lines.push((line_no, head.to_string(), tokens));
            } else if head.starts_with('e') {
                edge_lines.push((line_no, head.to_string(), tokens));
            } else {
                return Err(parse_err(file, line_no, format!("unknown item `{head}`")));
            }
        }

        let mut vertex_index = BTreeMap::new();
        let mut half_edge_ids = BTreeSet::new();
        let mut vertices = Vec::new();
        for (line_no, name, tokens) in vertex_lines {
            if name[1..].parse::<u64>().is_err() {
                return Err(parse_err(file, line_no, format!("bad vertex id `{name}`")));
            }
            if tokens.len() != 4 {
                return Err(parse_err(
                    file,
                    line_no,
                    format!("vertex {name} has {} slots, expected 4", tokens.len()),
                ));
            }
            for t in &tokens {
                if !half_edge_ids.insert(t.to_string()) {
                    return Err(parse_err(file, line_no, format!("half-edge id `{t}` reused")));
                }
            }
            if vertex_index.insert(name.clone(), vertices.len()).is_some() {
                return Err(parse_err(file, line_no, format!("vertex {name} declared twice")));
            }
            vertices.push(RibbonVertex {
                name,
                half_edges: [0, 1, 2, 3].map(|k| tokens[k].to_string()),
            });
        }

        let mut used = BTreeMap::new();
        let mut edge_names = BTreeSet::new();
        let mut edges = Vec::new();
        for (line_no, name, tokens) in edge_lines {
            if name[1..].parse::<u64>().is_err() {
                return Err(parse_err(file, line_no, format!("bad edge id `{name}`")));
            }
            if !edge_names.insert(name.clone()) {
                return Err(parse_err(file, line_no, format!("edge {name} declared twice")));
            }
            if tokens.len() != 3 {
                return Err(parse_err(
                    file,
                    line_no,
                    "edge needs two endpoints `v<i>.<slot>` and a curve label",
                ));
            }
            let mut ends = [Slot { vertex: 0, slot: 0 }; 2];
            for (k, tok) in tokens[..2].iter().enumerate() {
                let (v, s) = tok
                    .split_once('.')
                    .ok_or_else(|| parse_err(file, line_no, format!("bad endpoint `{tok}`")))?;
                let vertex = *vertex_index
                    .get(v)
                    .ok_or_else(|| parse_err(file, line_no, format!("unknown vertex `{v}`")))?;
                let slot: usize = s
                    .parse()
                    .ok()
                    .filter(|&s| s < 4)
                    .ok_or_else(|| parse_err(file, line_no, format!("bad slot in `{tok}`")))?;
                let end = Slot { vertex, slot };
                if let Some(prev) = used.insert(end.half_edge(), line_no) {
                    return Err(parse_err(
                        file,
                        line_no,
                        format!("slot `{tok}` already used on line {prev}"),
                    ));
                }
                ends[k] = end;
            }
            let curve = tokens[2].to_string();
            if Family::of_label(&curve).is_none() {
                return Err(parse_err(
                    file,
                    line_no,
                    format!("curve label `{curve}` must start with `c` or `d`"),
                ));
            }
            curves.insert(curve.clone());
            edges.push(RibbonEdge { name, ends, curve });
        }

        let config = RibbonConfig {
            vertices,
            edges,
            curves,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn vertices(&self) -> &[RibbonVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[RibbonEdge] {
        &self.edges
    }

    /// All curve labels, sorted.
    pub fn curves(&self) -> impl Iterator<Item = &String> {
        self.curves.iter()
    }

    pub fn curves_of(&self, family: Family) -> Vec<String> {
        self.curves
            .iter()
            .filter(|c| Family::of_label(c) == Some(family))
            .cloned()
            .collect()
    }

    fn slot_curves(&self) -> Vec<Option<&str>> {
        let mut at = vec![None; 4 * self.vertices.len()];
        for e in &self.edges {
            for end in e.ends {
                at[end.half_edge()] = Some(e.curve.as_str());
            }
        }
        at
    }

    fn pairing(&self) -> Vec<usize> {
        let mut p = vec![usize::MAX; 4 * self.vertices.len()];
        for e in &self.edges {
            let (a, b) = (e.ends[0].half_edge(), e.ends[1].half_edge());
            p[a] = b;
            p[b] = a;
        }
        p
    }

    /// Every slot matched once, strands alternate between families, and
    /// each curve label runs along exactly one closed strand.
    pub fn validate(&self) -> Result<()> {
        let at = self.slot_curves();
        for (v, vert) in self.vertices.iter().enumerate() {
            let labels: Vec<&str> = (0..4)
                .map(|s| {
                    at[4 * v + s].ok_or_else(|| {
                        Error::MalformedRibbon(format!("slot {}.{s} is not matched", vert.name))
                    })
                })
                .collect::<Result<_>>()?;
            if labels[0] != labels[2] || labels[1] != labels[3] {
                return Err(Error::MalformedRibbon(format!(
                    "vertex {}: opposite slots carry different curves",
                    vert.name
                )));
            }
            if Family::of_label(labels[0]) == Family::of_label(labels[1]) {
                return Err(Error::MalformedRibbon(format!(
                    "vertex {}: both strands belong to the same family",
                    vert.name
                )));
            }
        }

        let pairing = self.pairing();
        let mut strands_per_curve: BTreeMap<&str, usize> = BTreeMap::new();
        let mut seen = vec![false; pairing.len()];
        for start in 0..pairing.len() {
            if seen[start] {
                continue;
            }
            let label = at[start].expect("validated above");
            let mut h = start;
            loop {
                let opposite = 4 * (h / 4) + (h % 4 + 2) % 4;
                seen[h] = true;
                seen[opposite] = true;
                h = pairing[opposite];
                if at[h] != Some(label) {
                    return Err(Error::MalformedRibbon(format!(
                        "strand of `{label}` changes label"
                    )));
                }
                if h == start || seen[h] {
                    break;
                }
            }
            if h != start {
                return Err(Error::MalformedRibbon(format!("strand of `{label}` does not close")));
            }
            *strands_per_curve.entry(label).or_default() += 1;
        }
        if let Some((c, n)) = strands_per_curve.iter().find(|(_, &n)| n > 1) {
            return Err(Error::MalformedRibbon(format!(
                "curve `{c}` has {n} components; label each component separately"
            )));
        }
        Ok(())
    }

    pub fn fat_graph(&self) -> Result<FatGraph> {
        let rotation: Vec<Vec<usize>> = (0..self.vertices.len())
            .map(|v| (0..4).map(|s| 4 * v + s).collect())
            .collect();
        FatGraph::new(&rotation, self.pairing())
    }

    /// `N[i][j]` = number of crossings between `c_i` and `d_j`.
    pub fn intersection_matrix(&self) -> IntMatrix {
        let cs = self.curves_of(Family::C);
        let ds = self.curves_of(Family::D);
        let at = self.slot_curves();
        let mut n = IntMatrix::zeros(cs.len(), ds.len());
        for v in 0..self.vertices.len() {
            let (a, b) = (at[4 * v].unwrap_or(""), at[4 * v + 1].unwrap_or(""));
            let (c, d) = if Family::of_label(a) == Some(Family::C) {
                (a, b)
            } else {
                (b, a)
            };
            if let (Some(i), Some(j)) = (
                cs.iter().position(|x| x == c),
                ds.iter().position(|x| x == d),
            ) {
                n[(i, j)] += 1;
            }
        }
        n
    }

    /// The same configuration with every edge of `curve` removed. Crossings
    /// on that curve are smoothed away by joining the other strand through.
    pub fn without_curve(&self, curve: &str) -> RibbonConfig {
        let at = self.slot_curves();
        let pairing = self.pairing();
        let mut keep = vec![true; self.vertices.len()];
        for v in 0..self.vertices.len() {
            if (0..4).any(|s| at[4 * v + s] == Some(curve)) {
                keep[v] = false;
            }
        }
        let new_index: Vec<Option<usize>> = keep
            .iter()
            .scan(0usize, |next, &k| {
                Some(k.then(|| {
                    *next += 1;
                    *next - 1
                }))
            })
            .collect();
        let vertices: Vec<RibbonVertex> = self
            .vertices
            .iter()
            .zip(&keep)
            .filter(|(_, &k)| k)
            .map(|(v, _)| v.clone())
            .collect();

        // walk along each surviving strand, skipping removed crossings
        let mut edges = Vec::new();
        let mut seen = vec![false; pairing.len()];
        for h in 0..pairing.len() {
            if seen[h] || !keep[h / 4] || at[h] == Some(curve) {
                continue;
            }
            seen[h] = true;
            let mut far = pairing[h];
            while !keep[far / 4] {
                far = pairing[4 * (far / 4) + (far % 4 + 2) % 4];
            }
            seen[far] = true;
            let slot = |x: usize| Slot {
                vertex: new_index[x / 4].expect("kept vertex"),
                slot: x % 4,
            };
            edges.push(RibbonEdge {
                name: format!("e{}", edges.len()),
                ends: [slot(h), slot(far)],
                curve: at[h].expect("matched").to_string(),
            });
        }
        let curves = self.curves.iter().filter(|c| *c != curve).cloned().collect();
        RibbonConfig {
            vertices,
            edges,
            curves,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let touched: BTreeSet<&str> = self.edges.iter().map(|e| e.curve.as_str()).collect();
        for c in &self.curves {
            if !touched.contains(c.as_str()) {
                let _ = writeln!(out, "curve {c}");
            }
        }
        for v in &self.vertices {
            let _ = writeln!(out, "{}: {}", v.name, v.half_edges.join(" "));
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "{}: {}.{} {}.{} {}",
                e.name,
                self.vertices[e.ends[0].vertex].name,
                e.ends[0].slot,
                self.vertices[e.ends[1].vertex].name,
                e.ends[1].slot,
                e.curve
            );
        }
        out
    }

    /// A random well-formed configuration with `crossings` vertices: slots
    /// 0/2 are matched among themselves (c strands), as are 1/3 (d strands).
    pub fn random<R: Rng>(crossings: usize, rng: &mut R) -> RibbonConfig {
        let vertices: Vec<RibbonVertex> = (0..crossings)
            .map(|v| RibbonVertex {
                name: format!("v{v}"),
                half_edges: [0, 1, 2, 3].map(|s| format!("h{}", 4 * v + s)),
            })
            .collect();
        let mut pairing = vec![usize::MAX; 4 * crossings];
        for parity in [0usize, 1] {
            let mut hs: Vec<usize> = (0..4 * crossings).filter(|h| h % 2 == parity).collect();
            hs.shuffle(rng);
            for pair in hs.chunks(2) {
                pairing[pair[0]] = pair[1];
                pairing[pair[1]] = pair[0];
            }
        }
        // label strands
        let mut label = vec![String::new(); 4 * crossings];
        let mut counts = [0usize; 2];
        for start in 0..pairing.len() {
            if !label[start].is_empty() {
                continue;
            }
            let fam = start % 2;
            counts[fam] += 1;
            let name = format!("{}{}", if fam == 0 { 'c' } else { 'd' }, counts[fam]);
            let mut h = start;
            loop {
                let opposite = 4 * (h / 4) + (h % 4 + 2) % 4;
                label[h] = name.clone();
                label[opposite] = name.clone();
                h = pairing[opposite];
                if h == start {
                    break;
                }
            }
        }
        let mut edges = Vec::new();
        for h in 0..pairing.len() {
            if h < pairing[h] {
                edges.push(RibbonEdge {
                    name: format!("e{}", edges.len()),
                    ends: [
                        Slot { vertex: h / 4, slot: h % 4 },
                        Slot {
                            vertex: pairing[h] / 4,
                            slot: pairing[h] % 4,
                        },
                    ],
                    curve: label[h].clone(),
                });
            }
        }
        let curves = label.into_iter().collect();
        RibbonConfig {
            vertices,
            edges,
            curves,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FillingReport {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub face_lengths: Vec<usize>,
    pub connected: bool,
    pub euler_characteristic: i64,
    pub inferred_genus: Option<i64>,
    /// Curves that cross nothing; their presence rules out filling.
    pub isolated_curves: Vec<String>,
    pub filling: bool,
}

/// Traces the faces of the crossing graph and decides whether the curves
/// fill a closed surface of genus `target_genus`.
pub fn verify_filling(ribbon: &RibbonConfig, target_genus: i64) -> Result<FillingReport> {
    ribbon.validate()?;
    let graph = ribbon.fat_graph()?;
    let faces = graph.faces();
    let touched: BTreeSet<&str> = ribbon.edges.iter().map(|e| e.curve.as_str()).collect();
    let isolated_curves: Vec<String> = ribbon
        .curves
        .iter()
        .filter(|c| !touched.contains(c.as_str()))
        .cloned()
        .collect();
    let connected = graph.is_connected();
    let chi = graph.euler_characteristic();
    let inferred_genus = graph.genus();
    let filling = connected && isolated_curves.is_empty() && inferred_genus == Some(target_genus);
    Ok(FillingReport {
        vertices: graph.num_vertices(),
        edges: graph.num_edges(),
        faces: faces.len(),
        face_lengths: faces.iter().map(Vec::len).collect(),
        connected,
        euler_characteristic: chi,
        inferred_genus,
        isolated_curves,
        filling,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const ONE_CROSSING: &str = "v0: h0 h1 h2 h3\ne0: v0.0 v0.2 c1\ne1: v0.1 v0.3 d1\n";

    #[test]
    fn one_crossing_is_a_torus() {
        let r = RibbonConfig::parse(ONE_CROSSING, "t").unwrap();
        let rep = verify_filling(&r, 1).unwrap();
        assert_eq!((rep.vertices, rep.edges, rep.faces), (1, 2, 1));
        assert_eq!(rep.euler_characteristic, 0);
        assert_eq!(rep.inferred_genus, Some(1));
        assert!(rep.filling);
        assert!(!verify_filling(&r, 2).unwrap().filling);
    }

    #[test]
    fn lone_curve_does_not_fill() {
        let r = RibbonConfig::parse("curve c1\n", "t").unwrap();
        let rep = verify_filling(&r, 1).unwrap();
        assert_eq!(rep.vertices, 0);
        assert!(!rep.filling);
        assert_eq!(rep.isolated_curves, vec!["c1".to_string()]);
    }

    #[test]
    fn parse_errors_cite_lines() {
        let bad = "v0: h0 h1 h2\n";
        match RibbonConfig::parse(bad, "f.rib") {
            Err(Error::Parse { file, line, .. }) => assert_eq!((file.as_str(), line), ("f.rib", 1)),
            other => panic!("unexpected {other:?}"),
        }
        let reused = "v0: h0 h1 h2 h3\ne0: v0.0 v0.2 c1\ne1: v0.0 v0.3 d1\n";
        assert!(matches!(
            RibbonConfig::parse(reused, "f"),
            Err(Error::Parse { line: 3, .. })
        ));
        let unmatched = "v0: h0 h1 h2 h3\ne0: v0.0 v0.2 c1\n";
        assert!(matches!(
            RibbonConfig::parse(unmatched, "f"),
            Err(Error::MalformedRibbon(_))
        ));
        let same_family = "v0: h0 h1 h2 h3\ne0: v0.0 v0.2 c1\ne1: v0.1 v0.3 c2\n";
        assert!(matches!(
            RibbonConfig::parse(same_family, "f"),
            Err(Error::MalformedRibbon(_))
        ));
        assert!(matches!(
            RibbonConfig::parse("e0: v9.0 v9.1 c1\n", "f"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn text_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let r = RibbonConfig::random(5, &mut rng);
        let back = RibbonConfig::parse(&r.to_text(), "rt").unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn removing_the_only_d_curve() {
        let r = RibbonConfig::parse(ONE_CROSSING, "t").unwrap();
        let stripped = r.without_curve("d1");
        assert_eq!(stripped.vertices().len(), 0);
        assert_eq!(stripped.curves().collect::<Vec<_>>(), vec!["c1"]);
        assert!(!verify_filling(&stripped, 1).unwrap().filling);
    }

    #[test]
    fn three_against_one_on_genus_two() {
        let r = RibbonConfig::parse(include_str!("../../data/genus2_filling.rib"), "fig").unwrap();
        let rep = verify_filling(&r, 2).unwrap();
        assert_eq!((rep.vertices, rep.edges, rep.faces), (4, 8, 2));
        assert_eq!(rep.inferred_genus, Some(2));
        assert!(rep.filling);
        assert_eq!(r.intersection_matrix().to_rows(), vec![vec![1], vec![2], vec![1]]);
        assert!(!verify_filling(&r.without_curve("d1"), 2).unwrap().filling);
    }
}
