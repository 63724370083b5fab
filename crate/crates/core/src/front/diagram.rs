//! Lagrangian resolution of a plat front as a 4-valent planar map.
//!
//! Crossings of the resolved diagram are the vertices; each vertex has four
//! ports in counterclockwise rotation order NE, NW, SW, SE. A front crossing
//! keeps its transversal strands (the descending strand enters NW and leaves
//! SE); a right cusp becomes a loop: its branches enter NW/SW and the loop
//! edge joins NE to SE, bounding a monogon. Left cusps are smooth, so the two
//! branches of a left cusp merge into a single edge. Faces are the orbits of
//! the rotation-system walk; the walk through head port p departs at the
//! clockwise-next port, claiming the quadrant between them for its face.

use super::plat::{self, PlatFront};
use super::FrontError;

pub const NE: usize = 0;
pub const NW: usize = 1;
pub const SW: usize = 2;
pub const SE: usize = 3;

/// Quadrant k spans ports k (clockwise end) and k+1 mod 4: 0 = N, 1 = W,
/// 2 = S, 3 = E. Reeb-positive quadrants are the horizontal ones, W and E.
pub fn quadrant_positive(q: usize) -> bool {
    q == 1 || q == 3
}

pub fn quadrant_name(q: usize) -> &'static str {
    ["N", "W", "S", "E"][q]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrossingKind {
    /// A crossing already present in the front.
    Front,
    /// The loop crossing created by resolving a right cusp; degree 1.
    CuspLoop,
}

#[derive(Clone, Debug)]
pub struct Crossing {
    pub name: String,
    pub kind: CrossingKind,
    pub degree: i64,
    pub comp_from: usize,
    pub comp_to: usize,
    /// Maslov potentials (over-strand, under-strand) at the crossing.
    pub potentials: (i64, i64),
}

/// An edge end: vertex and port.
pub type End = (usize, usize);

#[derive(Clone, Copy, Debug)]
pub struct Edge {
    pub ends: [End; 2],
}

/// A half-edge is (edge index, direction); direction d runs from ends[d]
/// to ends[1 - d].
pub type HalfEdge = (usize, usize);

#[derive(Clone, Debug)]
pub struct Face {
    /// Half-edges of the counterclockwise boundary walk.
    pub walk: Vec<HalfEdge>,
    /// Quadrants claimed at each walk step: (vertex, quadrant).
    pub corners: Vec<(usize, usize)>,
}

/// The resolved Lagrangian projection with its planar face complex.
#[derive(Clone, Debug)]
pub struct ResolvedDiagram {
    pub crossings: Vec<Crossing>,
    pub edges: Vec<Edge>,
    /// port_edge[v][p] = (edge, end index) attached at port p of vertex v.
    pub port_edge: Vec<[(usize, usize); 4]>,
    pub faces: Vec<Face>,
    pub outer_face: usize,
    /// face_of[(edge, dir)] = face claimed by that half-edge.
    face_of: Vec<[usize; 2]>,
    pub n_right_cusps: usize,
    pub n_front_crossings: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Attach {
    LeftCusp(usize),
    Port(usize, usize),
}

/// Resolves a front: builds vertices and edges, assigns Maslov potentials,
/// grades the crossings and traces the planar faces.
pub fn resolve(front: &PlatFront) -> Result<ResolvedDiagram, FrontError> {
    let tr = plat::trace(front);
    let comp = plat::components(&tr);
    let n_segments = tr.segments.len();

    // Vertices: front crossings first? No: event order overall, but names
    // are assigned per kind. Vertex ids follow event order of X and C events.
    let mut kinds: Vec<CrossingKind> = Vec::new();
    let mut west_att: Vec<Option<Attach>> = vec![None; n_segments];
    let mut east_att: Vec<Option<Attach>> = vec![None; n_segments];
    let mut vertex_of_crossing: Vec<usize> = Vec::new();
    let mut vertex_of_right_cusp: Vec<usize> = Vec::new();

    // Replay the sweep through the trace records, which are stored in event
    // order per kind.
    let mut next_crossing = 0;
    let mut next_left = 0;
    let mut next_right = 0;
    for event in &front.events {
        match event {
            super::PlatEvent::CuspOpen(_) => {
                let c = tr.left_cusps[next_left];
                next_left += 1;
                west_att[c.upper] = Some(Attach::LeftCusp(next_left - 1));
                west_att[c.lower] = Some(Attach::LeftCusp(next_left - 1));
            }
            super::PlatEvent::Cross(_) => {
                let c = tr.crossings[next_crossing];
                next_crossing += 1;
                let v = kinds.len();
                kinds.push(CrossingKind::Front);
                vertex_of_crossing.push(v);
                east_att[c.in_upper] = Some(Attach::Port(v, NW));
                east_att[c.in_lower] = Some(Attach::Port(v, SW));
                west_att[c.out_upper] = Some(Attach::Port(v, NE));
                west_att[c.out_lower] = Some(Attach::Port(v, SE));
            }
            super::PlatEvent::CuspClose(_) => {
                let c = tr.right_cusps[next_right];
                next_right += 1;
                let v = kinds.len();
                kinds.push(CrossingKind::CuspLoop);
                vertex_of_right_cusp.push(v);
                east_att[c.upper] = Some(Attach::Port(v, NW));
                east_att[c.lower] = Some(Attach::Port(v, SW));
            }
        }
    }
    let n_vertices = kinds.len();
    if n_vertices == 0 {
        return Err(FrontError::Internal("front with no crossings".into()));
    }

    // Maslov potentials per segment: constant through crossings, +1 jump
    // from the lower to the upper branch at every cusp.
    let potential = assign_potentials(&tr, n_segments)?;

    // Edges: merge left-cusp branch pairs, keep crossing-to-crossing
    // segments, add one loop edge per right cusp.
    let port_of = |a: Attach| -> End {
        match a {
            Attach::Port(v, p) => (v, p),
            Attach::LeftCusp(_) => unreachable!("left cusp ends were merged"),
        }
    };
    let mut edges: Vec<Edge> = Vec::new();
    // The arc around left cusp c runs from the lower branch's east end to
    // the upper branch's east end; for the first cusp the half-edge in that
    // direction has the outer face on its left.
    let mut first_cusp_halfedge: Option<HalfEdge> = None;
    for (ci, c) in tr.left_cusps.iter().enumerate() {
        let upper_end = port_of(east_att[c.upper].ok_or_else(dangling)?);
        let lower_end = port_of(east_att[c.lower].ok_or_else(dangling)?);
        let e = edges.len();
        edges.push(Edge {
            ends: [lower_end, upper_end],
        });
        if ci == 0 {
            first_cusp_halfedge = Some((e, 0));
        }
    }
    for s in 0..n_segments {
        if let Some(Attach::Port(v, p)) = west_att[s] {
            let east = port_of(east_att[s].ok_or_else(dangling)?);
            edges.push(Edge {
                ends: [(v, p), east],
            });
        }
    }
    for &v in &vertex_of_right_cusp {
        edges.push(Edge {
            ends: [(v, NE), (v, SE)],
        });
    }

    // Port lookup table.
    let mut port_edge = vec![[(usize::MAX, usize::MAX); 4]; n_vertices];
    for (e, edge) in edges.iter().enumerate() {
        for (k, &(v, p)) in edge.ends.iter().enumerate() {
            if port_edge[v][p].0 != usize::MAX {
                return Err(FrontError::Internal(format!(
                    "port ({v},{p}) attached twice"
                )));
            }
            port_edge[v][p] = (e, k);
        }
    }
    for (v, ports) in port_edge.iter().enumerate() {
        if ports.iter().any(|&(e, _)| e == usize::MAX) {
            return Err(FrontError::Internal(format!("vertex {v} has an open port")));
        }
    }

    // Face tracing: arriving at head port p, depart at the clockwise-next
    // port (p + 3 mod 4), claiming quadrant p + 3 mod 4.
    let n_half = 2 * edges.len();
    let half_id = |(e, d): HalfEdge| 2 * e + d;
    let mut face_of_flat = vec![usize::MAX; n_half];
    let mut faces: Vec<Face> = Vec::new();
    for e0 in 0..edges.len() {
        for d0 in 0..2 {
            if face_of_flat[half_id((e0, d0))] != usize::MAX {
                continue;
            }
            let fid = faces.len();
            let mut walk = Vec::new();
            let mut corners = Vec::new();
            let mut h = (e0, d0);
            loop {
                face_of_flat[half_id(h)] = fid;
                walk.push(h);
                let (v, p) = edges[h.0].ends[1 - h.1];
                let q = (p + 3) % 4;
                corners.push((v, q));
                let (e2, k2) = port_edge[v][q];
                h = (e2, k2);
                if h == (e0, d0) {
                    break;
                }
            }
            faces.push(Face { walk, corners });
        }
    }
    let face_of: Vec<[usize; 2]> = (0..edges.len())
        .map(|e| [face_of_flat[2 * e], face_of_flat[2 * e + 1]])
        .collect();

    // Euler check for the connected diagram components: v - e + f = 1 + c.
    let v = n_vertices as i64;
    let e = edges.len() as i64;
    let f = faces.len() as i64;
    let c = diagram_components(n_vertices, &edges) as i64;
    if v - e + f != 1 + c {
        return Err(FrontError::Internal(format!(
            "Euler check failed: v={v} e={e} f={f} components={c}"
        )));
    }

    let outer_face = {
        let h = first_cusp_halfedge.ok_or_else(dangling)?;
        face_of_flat[half_id(h)]
    };

    // Crossing data: names per kind in event order, degrees from potentials.
    let mut crossings = Vec::new();
    let mut n_a = 0;
    let mut n_b = 0;
    let mut next_crossing = 0;
    let mut next_right = 0;
    for kind in &kinds {
        match kind {
            CrossingKind::Front => {
                let c = tr.crossings[next_crossing];
                next_crossing += 1;
                n_b += 1;
                let over = potential[c.in_upper];
                let under = potential[c.in_lower];
                crossings.push(Crossing {
                    name: format!("b{n_b}"),
                    kind: *kind,
                    degree: over - under,
                    comp_from: comp[c.in_lower],
                    comp_to: comp[c.in_upper],
                    potentials: (over, under),
                });
            }
            CrossingKind::CuspLoop => {
                let c = tr.right_cusps[next_right];
                next_right += 1;
                n_a += 1;
                let upper = potential[c.upper];
                let lower = potential[c.lower];
                debug_assert_eq!(upper, lower + 1);
                crossings.push(Crossing {
                    name: format!("a{n_a}"),
                    kind: *kind,
                    degree: 1,
                    comp_from: comp[c.upper],
                    comp_to: comp[c.upper],
                    potentials: (upper, lower),
                });
            }
        }
    }

    Ok(ResolvedDiagram {
        crossings,
        edges,
        port_edge,
        faces,
        outer_face,
        face_of,
        n_right_cusps: tr.right_cusps.len(),
        n_front_crossings: tr.crossings.len(),
    })
}

fn dangling() -> FrontError {
    FrontError::Internal("dangling segment end".into())
}

fn assign_potentials(
    tr: &plat::FrontTrace,
    n_segments: usize,
) -> Result<Vec<i64>, FrontError> {
    // Union constraints as differences: mu(a) - mu(b) = delta on edges of a
    // constraint graph, solved by BFS per component.
    let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n_segments];
    let mut constrain = |a: usize, b: usize, delta: i64| {
        // mu(a) = mu(b) + delta
        adj[a].push((b, delta));
        adj[b].push((a, -delta));
    };
    for c in &tr.crossings {
        constrain(c.out_lower, c.in_upper, 0);
        constrain(c.out_upper, c.in_lower, 0);
    }
    for cusp in tr.left_cusps.iter().chain(&tr.right_cusps) {
        constrain(cusp.upper, cusp.lower, 1);
    }
    let mut potential = vec![i64::MAX; n_segments];
    for start in 0..n_segments {
        if potential[start] != i64::MAX {
            continue;
        }
        potential[start] = 0;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(s) = queue.pop_front() {
            for &(t, delta) in &adj[s] {
                let want = potential[s] - delta;
                if potential[t] == i64::MAX {
                    potential[t] = want;
                    queue.push_back(t);
                } else if potential[t] != want {
                    return Err(FrontError::InconsistentPotential);
                }
            }
        }
    }
    Ok(potential)
}

fn diagram_components(n_vertices: usize, edges: &[Edge]) -> usize {
    let mut parent: Vec<usize> = (0..n_vertices).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for e in edges {
        let a = find(&mut parent, e.ends[0].0);
        let b = find(&mut parent, e.ends[1].0);
        parent[a] = b;
    }
    (0..n_vertices)
        .filter(|&v| find(&mut parent, v) == v)
        .count()
}

impl ResolvedDiagram {
    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn face_of_halfedge(&self, h: HalfEdge) -> usize {
        self.face_of[h.0][h.1]
    }

    /// Bounded face indices, in trace order.
    pub fn bounded_faces(&self) -> Vec<usize> {
        (0..self.faces.len())
            .filter(|&f| f != self.outer_face)
            .collect()
    }

    /// Quadrants (vertex, quadrant) claimed by a face.
    pub fn face_quadrants(&self, f: usize) -> &[(usize, usize)] {
        &self.faces[f].corners
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::front::parse_plat;
    use crate::library;

    fn resolved(id: &str) -> ResolvedDiagram {
        resolve(&parse_plat(library::entry(id).unwrap().plat).unwrap()).unwrap()
    }

    #[test]
    fn unknot_resolution() {
        let r = resolved("unknot");
        assert_eq!(r.num_crossings(), 1);
        assert_eq!(r.crossings[0].degree, 1);
        assert_eq!(r.crossings[0].kind, CrossingKind::CuspLoop);
        assert_eq!(r.faces.len(), 3);
        assert_eq!(r.bounded_faces().len(), 2);
    }

    #[test]
    fn trefoil_resolution_counts_and_degrees() {
        let r = resolved("trefoil");
        assert_eq!(r.num_crossings(), 5);
        assert_eq!(r.n_front_crossings + r.n_right_cusps, 5);
        let deg1: Vec<&str> = r
            .crossings
            .iter()
            .filter(|c| c.degree == 1)
            .map(|c| c.name.as_str())
            .collect();
        let deg0: Vec<&str> = r
            .crossings
            .iter()
            .filter(|c| c.degree == 0)
            .map(|c| c.name.as_str())
            .collect();
        assert_eq!(deg1, vec!["a1", "a2"]);
        assert_eq!(deg0, vec!["b1", "b2", "b3"]);
        // 5 vertices, 10 edges, 7 faces.
        assert_eq!(r.edges.len(), 10);
        assert_eq!(r.faces.len(), 7);
        assert_eq!(r.bounded_faces().len(), 6);
    }

    #[test]
    fn trefoil_face_inventory() {
        // Two monogons (E corners at the cusp loops), two bigons, and the
        // two long strips with corners a:W and three b:N (resp. b:S).
        let r = resolved("trefoil");
        let mut signatures: Vec<Vec<String>> = r
            .bounded_faces()
            .iter()
            .map(|&f| {
                let mut sig: Vec<String> = r
                    .face_quadrants(f)
                    .iter()
                    .filter(|(v, q)| {
                        // Keep only actual corners of the face walk at
                        // distinct quadrants; all claims are corners here.
                        let _ = (v, q);
                        true
                    })
                    .map(|&(v, q)| {
                        format!("{}{}", r.crossings[v].name, quadrant_name(q))
                    })
                    .collect();
                sig.sort();
                sig
            })
            .collect();
        signatures.sort();
        let expect = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        assert!(signatures.contains(&expect(&["a1E"])));
        assert!(signatures.contains(&expect(&["a2E"])));
        assert!(signatures.contains(&expect(&["a1W", "b1N", "b2N", "b3N"])));
        assert!(signatures.contains(&expect(&["a2W", "b1S", "b2S", "b3S"])));
        assert!(signatures.contains(&expect(&["b1E", "b2W"])));
        assert!(signatures.contains(&expect(&["b2E", "b3W"])));
    }

    #[test]
    fn rotating_front_potential_fails() {
        // The once-stabilized unknot has rotation number 1: no Z-grading.
        let f = parse_plat("O1 X1 C1").unwrap();
        assert!(matches!(
            resolve(&f),
            Err(FrontError::InconsistentPotential)
        ));
    }

    #[test]
    fn cusp_potential_jump_is_one() {
        for id in ["unknot", "trefoil", "stab_unknot"] {
            let r = resolved(id);
            for c in &r.crossings {
                if c.kind == CrossingKind::CuspLoop {
                    assert_eq!(c.potentials.0, c.potentials.1 + 1);
                    assert_eq!(c.degree, 1);
                }
            }
        }
    }

    #[test]
    fn generator_count_is_crossings_plus_cusps() {
        for id in ["unknot", "trefoil", "chekanov_a", "chekanov_b", "stab_unknot"] {
            let r = resolved(id);
            assert_eq!(
                r.num_crossings(),
                r.n_front_crossings + r.n_right_cusps,
                "{id}"
            );
        }
    }
}
