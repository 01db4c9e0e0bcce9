//! Tilings of the Cayley tree of Z/2 * Z/2 * Z/2 by labeled tileset graphs,
//! the flow formulation of their existence, and the constructive
//! flow → periodic-tiling algorithm.
//!
//! A tileset graph has edges labeled a, b, c (loops and parallel edges
//! allowed). A flow assigns a rational to every vertex and edge so that for
//! each vertex and each label, the vertex value equals the sum over
//! incident edges of that label — a loop counted once: each vertex of the
//! quotient needs exactly one edge per label, and a fixed point of a loop's
//! involution realizes it as a self-loop, so the partition
//! ∪_{e ∈ D(v)} X_{v,e} = X_v forces single counting.
//!
//! All arithmetic here is exact rational; no floating point.

use crate::simplex::{phase1_feasibility, FarkasCertificate, SimplexOutcome};
use crate::{Error, Result};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Edge label of the three-generator free product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    A,
    B,
    C,
}

pub const LABELS: [Label; 3] = [Label::A, Label::B, Label::C];

impl Label {
    pub fn index(&self) -> usize {
        match self {
            Label::A => 0,
            Label::B => 1,
            Label::C => 2,
        }
    }

    pub fn as_char(&self) -> char {
        match self {
            Label::A => 'a',
            Label::B => 'b',
            Label::C => 'c',
        }
    }

    pub fn from_char(c: char) -> Result<Self> {
        match c {
            'a' => Ok(Label::A),
            'b' => Ok(Label::B),
            'c' => Ok(Label::C),
            _ => Err(Error::OutOfDomain),
        }
    }
}

/// An edge of a tileset graph: endpoints in input order, plus a label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TileEdge {
    pub u: usize,
    pub v: usize,
    pub label: Label,
}

/// A finite {a,b,c}-edge-labeled graph.
#[derive(Debug, Clone, PartialEq)]
pub struct TilesetGraph {
    pub vertex_names: Vec<String>,
    pub edges: Vec<TileEdge>,
}

impl TilesetGraph {
    pub fn new(vertex_names: Vec<String>, edges: Vec<TileEdge>) -> Result<Self> {
        let n = vertex_names.len();
        if edges.iter().any(|e| e.u >= n || e.v >= n) {
            return Err(Error::IndexMismatch);
        }
        Ok(TilesetGraph { vertex_names, edges })
    }

    /// Anonymous graph with vertices "v0", "v1", ...
    pub fn with_size(n: usize, edges: Vec<TileEdge>) -> Result<Self> {
        let names = (0..n).map(|i| format!("v{}", i)).collect();
        TilesetGraph::new(names, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    /// Edge ids labeled `d` incident to `v`; a loop appears once.
    pub fn label_edges_at(&self, v: usize, d: Label) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.label == d && (e.u == v || e.v == v))
            .map(|(i, _)| i)
    }
}

/// Exact rational weights on V ∪ E.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowVector {
    pub vertex_values: Vec<BigRational>,
    pub edge_values: Vec<BigRational>,
}

impl FlowVector {
    pub fn is_nonnegative(&self) -> bool {
        self.vertex_values
            .iter()
            .chain(self.edge_values.iter())
            .all(|x| x >= &BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.vertex_values
            .iter()
            .chain(self.edge_values.iter())
            .all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.vertex_values
            .iter()
            .chain(self.edge_values.iter())
            .all(|x| x.denom().is_one())
    }
}

/// Per-(vertex, label) residual of the flow equations; exact rationals,
/// zero everywhere iff the vector is a flow.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualTable {
    pub rows: Vec<(usize, Label, BigRational)>,
}

impl ResidualTable {
    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|(_, _, r)| r.is_zero())
    }
}

/// Residual f(v) - Σ_{e ∈ D(v)} f(e) for every vertex and label.
pub fn flow_residual(y: &TilesetGraph, f: &FlowVector) -> Result<ResidualTable> {
    if f.vertex_values.len() != y.vertex_count() || f.edge_values.len() != y.edges.len() {
        return Err(Error::IndexMismatch);
    }
    let mut rows = Vec::with_capacity(3 * y.vertex_count());
    for v in 0..y.vertex_count() {
        for d in LABELS {
            let mut r = f.vertex_values[v].clone();
            for e in y.label_edges_at(v, d) {
                r -= &f.edge_values[e];
            }
            rows.push((v, d, r));
        }
    }
    Ok(ResidualTable { rows })
}

/// Outcome of the positive-flow solve.
#[derive(Debug, Clone, PartialEq)]
pub enum FlowOutcome {
    /// A positive flow normalized so the vertex values sum to 1.
    Flow(FlowVector),
    /// No positive flow exists; carries a separating dual certificate.
    Infeasible(FarkasCertificate),
}

/// Assembles the LP system {flow equations, Σ_v f(v) = 1} over the columns
/// (vertex values, then edge values). Row order: (v, label) lexicographic,
/// then the normalization row.
pub fn flow_lp_system(y: &TilesetGraph) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
    let nv = y.vertex_count();
    let ne = y.edges.len();
    let n = nv + ne;
    let mut a: Vec<Vec<BigRational>> = Vec::with_capacity(3 * nv + 1);
    let mut b: Vec<BigRational> = Vec::with_capacity(3 * nv + 1);
    for v in 0..nv {
        for d in LABELS {
            let mut row = vec![BigRational::zero(); n];
            row[v] = BigRational::one();
            for e in y.label_edges_at(v, d) {
                row[nv + e] -= BigRational::one();
            }
            a.push(row);
            b.push(BigRational::zero());
        }
    }
    let mut norm_row = vec![BigRational::zero(); n];
    for cell in norm_row.iter_mut().take(nv) {
        *cell = BigRational::one();
    }
    a.push(norm_row);
    b.push(BigRational::one());
    (a, b)
}

/// Forced-zero presolve: if a live vertex has a label all of whose live
/// incident edges lead to dead vertices (in particular, no such edge at
/// all), nonnegativity forces its value and all its incident edge values
/// to zero. Returns (dead vertices, elimination order with labels).
/// A loop never qualifies: it keeps its own vertex alive.
fn forced_zero_elimination(y: &TilesetGraph) -> (Vec<bool>, Vec<(usize, Label)>) {
    let nv = y.vertex_count();
    let mut dead = vec![false; nv];
    let mut order: Vec<(usize, Label)> = Vec::new();
    loop {
        let mut progress = false;
        'vertices: for v in 0..nv {
            if dead[v] {
                continue;
            }
            for d in LABELS {
                let mut eliminable = true;
                for e in y.label_edges_at(v, d) {
                    let edge = &y.edges[e];
                    let other = if edge.u == v { edge.v } else { edge.u };
                    if edge.u == edge.v || !dead[other] {
                        eliminable = false;
                        break;
                    }
                }
                if eliminable {
                    dead[v] = true;
                    order.push((v, d));
                    progress = true;
                    continue 'vertices;
                }
            }
        }
        if !progress {
            return (dead, order);
        }
    }
}

/// Farkas certificate for a fully eliminated graph: cascaded multipliers on
/// the eliminating rows, processed in reverse elimination order so each
/// vertex's weight covers the compensations it must send to earlier ones.
fn elimination_certificate(y: &TilesetGraph, order: &[(usize, Label)]) -> FarkasCertificate {
    let nv = y.vertex_count();
    let row_of = |v: usize, d: Label| 3 * v + d.index();
    let mut dual = vec![BigRational::zero(); 3 * nv + 1];
    dual[3 * nv] = BigRational::one(); // normalization row
    let mut step_of = vec![usize::MAX; nv];
    for (i, (v, _)) in order.iter().enumerate() {
        step_of[*v] = i;
    }
    for (i, (v, d)) in order.iter().enumerate().rev() {
        // alpha = 1 + everything already accumulated on this vertex's rows.
        let mut alpha = BigRational::one();
        for dd in LABELS {
            alpha += &dual[row_of(*v, dd)];
        }
        dual[row_of(*v, *d)] -= &alpha;
        // Compensate the earlier-eliminated endpoints of the eliminating
        // label's edges.
        for e in y.label_edges_at(*v, *d) {
            let edge = &y.edges[e];
            let other = if edge.u == *v { edge.v } else { edge.u };
            debug_assert!(step_of[other] < i);
            dual[row_of(other, *d)] += &alpha;
        }
    }
    let cert = FarkasCertificate { dual, valid: false };
    let (a, b) = flow_lp_system(y);
    let valid = cert.check(&a, &b);
    FarkasCertificate { valid, ..cert }
}

/// Finds a positive flow by forced-zero presolve followed by exact phase-1
/// simplex with Bland's rule on {flow equations, Σ_v f(v) = 1, f ≥ 0} over
/// the surviving subgraph. Deterministic given Y. Any nonzero nonnegative
/// flow has Σ_v f(v) > 0, so the normalization loses nothing.
pub fn find_positive_flow(y: &TilesetGraph) -> Result<FlowOutcome> {
    let nv = y.vertex_count();
    if nv == 0 {
        return Err(Error::OutOfDomain);
    }
    let (dead, order) = forced_zero_elimination(y);
    if dead.iter().all(|d| *d) {
        return Ok(FlowOutcome::Infeasible(elimination_certificate(y, &order)));
    }
    let (sub, vmap, emap) = if order.is_empty() {
        (y.clone(), (0..nv).collect::<Vec<_>>(), (0..y.edges.len()).collect::<Vec<_>>())
    } else {
        let vmap: Vec<usize> = (0..nv).filter(|&v| !dead[v]).collect();
        let mut new_id = vec![usize::MAX; nv];
        for (i, &v) in vmap.iter().enumerate() {
            new_id[v] = i;
        }
        let mut emap = Vec::new();
        let mut edges = Vec::new();
        for (ei, e) in y.edges.iter().enumerate() {
            if !dead[e.u] && !dead[e.v] {
                emap.push(ei);
                edges.push(TileEdge { u: new_id[e.u], v: new_id[e.v], label: e.label });
            }
        }
        let names = vmap.iter().map(|&v| y.vertex_names[v].clone()).collect();
        (TilesetGraph::new(names, edges)?, vmap, emap)
    };
    let (a, b) = flow_lp_system(&sub);
    match phase1_feasibility(&a, &b) {
        SimplexOutcome::Feasible(x) => {
            let snv = sub.vertex_count();
            let mut flow = FlowVector {
                vertex_values: vec![BigRational::zero(); nv],
                edge_values: vec![BigRational::zero(); y.edges.len()],
            };
            for (i, &v) in vmap.iter().enumerate() {
                flow.vertex_values[v] = x[i].clone();
            }
            for (i, &e) in emap.iter().enumerate() {
                flow.edge_values[e] = x[snv + i].clone();
            }
            Ok(FlowOutcome::Flow(flow))
        }
        SimplexOutcome::Infeasible(_) if !order.is_empty() => {
            // Rebuild the certificate on the full system so it separates
            // the original polytope, not just the reduced one.
            let (fa, fb) = flow_lp_system(y);
            match phase1_feasibility(&fa, &fb) {
                SimplexOutcome::Infeasible(cert) => Ok(FlowOutcome::Infeasible(cert)),
                SimplexOutcome::Feasible(_) => Err(Error::NotAFlow),
            }
        }
        SimplexOutcome::Infeasible(cert) => Ok(FlowOutcome::Infeasible(cert)),
    }
}

/// Scales a flow by the least common denominator: the smallest positive
/// multiple with integer entries.
pub fn integerize(f: &FlowVector) -> FlowVector {
    let mut lcm = BigInt::one();
    for v in f.vertex_values.iter().chain(f.edge_values.iter()) {
        lcm = lcm.lcm(v.denom());
    }
    let s = BigRational::from_integer(lcm);
    FlowVector {
        vertex_values: f.vertex_values.iter().map(|v| v * &s).collect(),
        edge_values: f.edge_values.iter().map(|v| v * &s).collect(),
    }
}

/// A finite labeled complex with exactly one edge per label at each vertex:
/// three involutive neighbor maps (fixed points are label self-loops). The
/// universal cover of each connected component is the Cayley tree.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientComplex {
    /// neighbor[d][x] = the vertex joined to x by the label-d edge.
    pub neighbor: [Vec<usize>; 3],
}

/// An edge of the quotient, canonical form: x ≤ y.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QEdge {
    pub x: usize,
    pub y: usize,
    pub label: Label,
}

impl QuotientComplex {
    pub fn vertex_count(&self) -> usize {
        self.neighbor[0].len()
    }

    /// Canonical edge list: labels in a, b, c order, then lowest endpoint.
    pub fn edges(&self) -> Vec<QEdge> {
        let mut out = Vec::new();
        for d in LABELS {
            for x in 0..self.vertex_count() {
                let y = self.neighbor[d.index()][x];
                if x <= y {
                    out.push(QEdge { x, y, label: d });
                }
            }
        }
        out
    }

    /// Vertices of the connected component containing `start`, sorted.
    pub fn component_of(&self, start: usize) -> Vec<usize> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(x) = stack.pop() {
            for d in 0..3 {
                let y = self.neighbor[d][x];
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        (0..n).filter(|&i| seen[i]).collect()
    }
}

/// A label- and incidence-preserving morphism onto a tileset graph:
/// `vertex_map` sends quotient vertices to graph vertices; `edge_map` is
/// parallel to `QuotientComplex::edges()` and sends each quotient edge to a
/// graph edge id.
#[derive(Debug, Clone, PartialEq)]
pub struct TilingMorphism {
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<usize>,
}

/// Builds the full quotient complex of an integral positive flow: per
/// vertex v a block of Z(v) points, per (vertex, label) a partition into
/// consecutive sub-blocks of sizes Z(e) over the incident label edges in
/// edge-id order, matched across each edge by the order-preserving
/// bijection; loops carry the involution (0↔1)(2↔3)… with a fixed point if
/// odd. Deterministic.
pub fn build_full_quotient(
    y: &TilesetGraph,
    z: &FlowVector,
) -> Result<(QuotientComplex, TilingMorphism)> {
    if z.vertex_values.len() != y.vertex_count() || z.edge_values.len() != y.edges.len() {
        return Err(Error::IndexMismatch);
    }
    if !z.is_integral() {
        return Err(Error::NotIntegral);
    }
    if !z.is_nonnegative() || z.is_zero() || !flow_residual(y, z)?.is_zero() {
        return Err(Error::NotAFlow);
    }
    let to_usize = |v: &BigRational| -> Result<usize> {
        let (digits_sign, digits) = v.to_integer().to_u64_digits();
        if digits.len() > 1 || digits_sign == num_bigint::Sign::Minus {
            return Err(Error::OutOfDomain);
        }
        Ok(*digits.first().unwrap_or(&0) as usize)
    };
    let zv: Vec<usize> = z.vertex_values.iter().map(&to_usize).collect::<Result<_>>()?;
    let ze: Vec<usize> = z.edge_values.iter().map(&to_usize).collect::<Result<_>>()?;
    let nv = y.vertex_count();
    let mut offset = vec![0usize; nv + 1];
    for v in 0..nv {
        offset[v + 1] = offset[v] + zv[v];
    }
    let total = offset[nv];

    let mut neighbor: [Vec<usize>; 3] = [vec![0; total], vec![0; total], vec![0; total]];
    let mut owner: [Vec<usize>; 3] = [vec![0; total], vec![0; total], vec![0; total]];
    for d in LABELS {
        // Block starts of X_{v,e} at each endpoint, in edge-id order.
        let mut cursor = offset[..nv].to_vec();
        let mut start_u = vec![0usize; y.edges.len()];
        let mut start_v = vec![0usize; y.edges.len()];
        for (ei, e) in y.edges.iter().enumerate() {
            if e.label != d {
                continue;
            }
            if e.u == e.v {
                start_u[ei] = cursor[e.u];
                cursor[e.u] += ze[ei];
            } else {
                start_u[ei] = cursor[e.u];
                cursor[e.u] += ze[ei];
                start_v[ei] = cursor[e.v];
                cursor[e.v] += ze[ei];
            }
        }
        // The flow condition makes each cursor land exactly at the block end.
        for v in 0..nv {
            if cursor[v] != offset[v + 1] {
                return Err(Error::NotAFlow);
            }
        }
        for (ei, e) in y.edges.iter().enumerate() {
            if e.label != d || ze[ei] == 0 {
                continue;
            }
            if e.u == e.v {
                let s = start_u[ei];
                let k = ze[ei];
                for i in 0..k {
                    // Pair 0↔1, 2↔3, …; an odd leftover is a fixed point.
                    let j = if i % 2 == 0 {
                        if i + 1 < k {
                            i + 1
                        } else {
                            i
                        }
                    } else {
                        i - 1
                    };
                    neighbor[d.index()][s + i] = s + j;
                    owner[d.index()][s + i] = ei;
                }
            } else {
                let (su, sv) = (start_u[ei], start_v[ei]);
                for i in 0..ze[ei] {
                    neighbor[d.index()][su + i] = sv + i;
                    neighbor[d.index()][sv + i] = su + i;
                    owner[d.index()][su + i] = ei;
                    owner[d.index()][sv + i] = ei;
                }
            }
        }
    }
    let q = QuotientComplex { neighbor };
    let mut vertex_map = vec![0usize; total];
    for v in 0..nv {
        for x in offset[v]..offset[v + 1] {
            vertex_map[x] = v;
        }
    }
    let edge_map: Vec<usize> = q
        .edges()
        .iter()
        .map(|qe| owner[qe.label.index()][qe.x])
        .collect();
    Ok((q, TilingMorphism { vertex_map, edge_map }))
}

/// Builds a periodic tiling from an integral positive flow and returns the
/// connected component containing the lowest-indexed vertex (with its
/// restricted morphism).
pub fn build_periodic_tiling(
    y: &TilesetGraph,
    z: &FlowVector,
) -> Result<(QuotientComplex, TilingMorphism)> {
    let (q, m) = build_full_quotient(y, z)?;
    let comp = q.component_of(0);
    restrict_to_component(&q, &m, &comp)
}

fn restrict_to_component(
    q: &QuotientComplex,
    m: &TilingMorphism,
    comp: &[usize],
) -> Result<(QuotientComplex, TilingMorphism)> {
    let mut index_of = vec![usize::MAX; q.vertex_count()];
    for (new, &old) in comp.iter().enumerate() {
        index_of[old] = new;
    }
    let mut neighbor: [Vec<usize>; 3] =
        [vec![0; comp.len()], vec![0; comp.len()], vec![0; comp.len()]];
    for (new, &old) in comp.iter().enumerate() {
        for d in 0..3 {
            neighbor[d][new] = index_of[q.neighbor[d][old]];
        }
    }
    let sub = QuotientComplex { neighbor };
    // Rebuild the parallel edge map from the full one.
    let full_edges = q.edges();
    let mut owner_of = alloc::collections::BTreeMap::new();
    for (qe, &ye) in full_edges.iter().zip(m.edge_map.iter()) {
        owner_of.insert((qe.x, qe.y, qe.label), ye);
    }
    let mut edge_map = Vec::new();
    for qe in sub.edges() {
        let (ox, oy) = (comp[qe.x], comp[qe.y]);
        let key = (ox.min(oy), ox.max(oy), qe.label);
        edge_map.push(*owner_of.get(&key).ok_or(Error::InvalidTiling)?);
    }
    let vertex_map = comp.iter().map(|&old| m.vertex_map[old]).collect();
    Ok((sub, TilingMorphism { vertex_map, edge_map }))
}

/// A verification failure, carrying the offending position.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    NeighborNotInvolutive { label: Label, vertex: usize },
    VertexImageOutOfRange { vertex: usize },
    EdgeImageOutOfRange { edge: usize },
    LabelMismatch { edge: usize },
    IncidenceMismatch { edge: usize },
    EdgeCountMismatch,
}

/// Checks that (Q, m) is a tiling datum over Y: neighbor maps are total
/// involutions (one edge per label everywhere), and the morphism preserves
/// incidence and labels.
pub fn verify_tiling(
    q: &QuotientComplex,
    m: &TilingMorphism,
    y: &TilesetGraph,
) -> (bool, Vec<Violation>) {
    let mut violations = Vec::new();
    let n = q.vertex_count();
    for d in LABELS {
        for x in 0..n {
            let y1 = q.neighbor[d.index()][x];
            if y1 >= n || q.neighbor[d.index()][y1] != x {
                violations.push(Violation::NeighborNotInvolutive { label: d, vertex: x });
            }
        }
    }
    if m.vertex_map.len() != n {
        violations.push(Violation::EdgeCountMismatch);
        return (false, violations);
    }
    for (x, &v) in m.vertex_map.iter().enumerate() {
        if v >= y.vertex_count() {
            violations.push(Violation::VertexImageOutOfRange { vertex: x });
        }
    }
    let edges = q.edges();
    if m.edge_map.len() != edges.len() {
        violations.push(Violation::EdgeCountMismatch);
        return (false, violations);
    }
    for (i, (qe, &ye)) in edges.iter().zip(m.edge_map.iter()).enumerate() {
        if ye >= y.edges.len() {
            violations.push(Violation::EdgeImageOutOfRange { edge: i });
            continue;
        }
        let target = &y.edges[ye];
        if target.label != qe.label {
            violations.push(Violation::LabelMismatch { edge: i });
        }
        let (a, b) = (m.vertex_map[qe.x], m.vertex_map[qe.y]);
        let ok = (a == target.u && b == target.v) || (a == target.v && b == target.u);
        if !ok {
            violations.push(Violation::IncidenceMismatch { edge: i });
        }
    }
    (violations.is_empty(), violations)
}

/// Preimage counts of a verified tiling: Z(v) = #{x : m(x) = v} and, per
/// edge, the incidence-slot count (a quotient edge over a non-loop counts
/// once; over a loop it covers two slots unless it is itself a self-loop).
pub fn tiling_to_flow(
    q: &QuotientComplex,
    m: &TilingMorphism,
    y: &TilesetGraph,
) -> Result<FlowVector> {
    let (ok, _) = verify_tiling(q, m, y);
    if !ok {
        return Err(Error::InvalidTiling);
    }
    let mut zv = vec![BigRational::zero(); y.vertex_count()];
    for &v in &m.vertex_map {
        zv[v] += BigRational::one();
    }
    let mut ze = vec![BigRational::zero(); y.edges.len()];
    for (qe, &ye) in q.edges().iter().zip(m.edge_map.iter()) {
        let target = &y.edges[ye];
        let slots = if target.u == target.v {
            if qe.x == qe.y {
                1
            } else {
                2
            }
        } else {
            1
        };
        ze[ye] += BigRational::from_integer(BigInt::from(slots));
    }
    Ok(FlowVector { vertex_values: zv, edge_values: ze })
}

/// A vertex of the radius-R ball of the Cayley tree under a lifted tiling:
/// the reduced word from the basepoint, the quotient vertex it lands on,
/// and its image in the tileset graph.
#[derive(Debug, Clone, PartialEq)]
pub struct BallVertex {
    pub word: Vec<Label>,
    pub q_vertex: usize,
    pub y_vertex: usize,
}

/// Lifts the tiling to the radius-R ball of the tree around a basepoint of
/// Q: reduced words over {a,b,c} (a² = b² = c² = 1, so no immediate letter
/// repetition), mapped by following the neighbor maps. BFS order: length
/// first, then a < b < c.
pub fn lift_to_tree(
    q: &QuotientComplex,
    m: &TilingMorphism,
    y: &TilesetGraph,
    basepoint: usize,
    radius: usize,
) -> Result<Vec<BallVertex>> {
    let (ok, _) = verify_tiling(q, m, y);
    if !ok {
        return Err(Error::InvalidTiling);
    }
    if basepoint >= q.vertex_count() {
        return Err(Error::OutOfDomain);
    }
    let mut out = vec![BallVertex {
        word: Vec::new(),
        q_vertex: basepoint,
        y_vertex: m.vertex_map[basepoint],
    }];
    let mut frontier: Vec<usize> = vec![0];
    for _ in 0..radius {
        let mut next = Vec::new();
        for &idx in &frontier {
            let last = out[idx].word.last().copied();
            let at = out[idx].q_vertex;
            for d in LABELS {
                if last == Some(d) {
                    continue;
                }
                let mut word = out[idx].word.clone();
                word.push(d);
                let q_vertex = q.neighbor[d.index()][at];
                next.push(out.len());
                out.push(BallVertex { word, q_vertex, y_vertex: m.vertex_map[q_vertex] });
            }
        }
        frontier = next;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::rat;

    fn one_vertex_three_loops() -> TilesetGraph {
        TilesetGraph::with_size(
            1,
            vec![
                TileEdge { u: 0, v: 0, label: Label::A },
                TileEdge { u: 0, v: 0, label: Label::B },
                TileEdge { u: 0, v: 0, label: Label::C },
            ],
        )
        .unwrap()
    }

    fn two_vertex_parallel() -> TilesetGraph {
        TilesetGraph::with_size(
            2,
            vec![
                TileEdge { u: 0, v: 1, label: Label::A },
                TileEdge { u: 0, v: 1, label: Label::B },
                TileEdge { u: 0, v: 1, label: Label::C },
            ],
        )
        .unwrap()
    }

    #[test]
    fn residuals_on_fixture_graphs() {
        let y = one_vertex_three_loops();
        let f = FlowVector { vertex_values: vec![rat(1)], edge_values: vec![rat(1); 3] };
        assert!(flow_residual(&y, &f).unwrap().is_zero());
        let g = FlowVector {
            vertex_values: vec![rat(1)],
            edge_values: vec![rat(2), rat(1), rat(1)],
        };
        let table = flow_residual(&y, &g).unwrap();
        assert!(!table.is_zero());
        let bad: Vec<_> = table.rows.iter().filter(|(_, _, r)| !r.is_zero()).collect();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].0, 0);
        assert_eq!(bad[0].1, Label::A);
        assert_eq!(bad[0].2, rat(-1));

        let y2 = two_vertex_parallel();
        let f2 = FlowVector { vertex_values: vec![rat(1); 2], edge_values: vec![rat(1); 3] };
        assert!(flow_residual(&y2, &f2).unwrap().is_zero());
    }

    #[test]
    fn find_flow_on_fixtures() {
        let y = one_vertex_three_loops();
        match find_positive_flow(&y).unwrap() {
            FlowOutcome::Flow(f) => {
                assert_eq!(f.vertex_values[0], rat(1));
                assert_eq!(f.edge_values, vec![rat(1); 3]);
            }
            _ => panic!("expected flow"),
        }
    }

    #[test]
    fn missing_label_is_infeasible() {
        // A vertex with no a-edge forces everything to zero.
        let y = TilesetGraph::with_size(
            1,
            vec![
                TileEdge { u: 0, v: 0, label: Label::B },
                TileEdge { u: 0, v: 0, label: Label::C },
            ],
        )
        .unwrap();
        match find_positive_flow(&y).unwrap() {
            FlowOutcome::Infeasible(cert) => assert!(cert.valid),
            _ => panic!("expected infeasible"),
        }
    }

    #[test]
    fn integerize_examples() {
        let f = FlowVector {
            vertex_values: vec![BigRational::new(BigInt::from(1), BigInt::from(3))],
            edge_values: vec![BigRational::new(BigInt::from(2), BigInt::from(3))],
        };
        let g = integerize(&f);
        assert_eq!(g.vertex_values[0], rat(1));
        assert_eq!(g.edge_values[0], rat(2));
        let already = FlowVector { vertex_values: vec![rat(2)], edge_values: vec![rat(5)] };
        assert_eq!(integerize(&already), already);
    }

    #[test]
    fn build_single_vertex_quotient() {
        let y = one_vertex_three_loops();
        let z = FlowVector { vertex_values: vec![rat(1)], edge_values: vec![rat(1); 3] };
        let (q, m) = build_periodic_tiling(&y, &z).unwrap();
        assert_eq!(q.vertex_count(), 1);
        for d in 0..3 {
            assert_eq!(q.neighbor[d][0], 0);
        }
        let (ok, v) = verify_tiling(&q, &m, &y);
        assert!(ok, "{:?}", v);
        let back = tiling_to_flow(&q, &m, &y).unwrap();
        assert_eq!(back, z);
    }

    #[test]
    fn build_two_vertex_quotient_is_itself() {
        let y = two_vertex_parallel();
        let z = FlowVector { vertex_values: vec![rat(1); 2], edge_values: vec![rat(1); 3] };
        let (q, m) = build_periodic_tiling(&y, &z).unwrap();
        assert_eq!(q.vertex_count(), 2);
        for d in 0..3 {
            assert_eq!(q.neighbor[d][0], 1);
            assert_eq!(q.neighbor[d][1], 0);
        }
        let (ok, _) = verify_tiling(&q, &m, &y);
        assert!(ok);
        let back = tiling_to_flow(&q, &m, &y).unwrap();
        assert_eq!(back, z);
    }

    #[test]
    fn corrupted_tiling_is_rejected() {
        let y = two_vertex_parallel();
        let z = FlowVector { vertex_values: vec![rat(1); 2], edge_values: vec![rat(1); 3] };
        let (q, mut m) = build_periodic_tiling(&y, &z).unwrap();
        m.edge_map[0] = 1; // edge with the wrong label
        let (ok, violations) = verify_tiling(&q, &m, &y);
        assert!(!ok);
        assert!(violations
            .iter()
            .any(|v| matches!(v, Violation::LabelMismatch { edge: 0 })));
        assert_eq!(tiling_to_flow(&q, &m, &y), Err(Error::InvalidTiling));
    }

    #[test]
    fn non_involutive_quotient_is_rejected() {
        // a-neighbors forming a 3-cycle: not an involution.
        let q = QuotientComplex {
            neighbor: [vec![1, 2, 0], vec![0, 1, 2], vec![0, 1, 2]],
        };
        let y = one_vertex_three_loops();
        let m = TilingMorphism {
            vertex_map: vec![0; 3],
            edge_map: vec![0; q.edges().len()],
        };
        let (ok, violations) = verify_tiling(&q, &m, &y);
        assert!(!ok);
        assert!(violations
            .iter()
            .any(|v| matches!(v, Violation::NeighborNotInvolutive { .. })));
    }

    #[test]
    fn loop_flow_roundtrip_with_odd_multiplicity() {
        // Z(e) = 3 on each loop: odd involution blocks with fixed points.
        let y = one_vertex_three_loops();
        let z = FlowVector { vertex_values: vec![rat(3)], edge_values: vec![rat(3); 3] };
        let (q, m) = build_full_quotient(&y, &z).unwrap();
        assert_eq!(q.vertex_count(), 3);
        let (ok, _) = verify_tiling(&q, &m, &y);
        assert!(ok);
        let back = tiling_to_flow(&q, &m, &y).unwrap();
        assert_eq!(back, z);
    }

    #[test]
    fn ball_counts() {
        let y = two_vertex_parallel();
        let z = FlowVector { vertex_values: vec![rat(1); 2], edge_values: vec![rat(1); 3] };
        let (q, m) = build_periodic_tiling(&y, &z).unwrap();
        for r in 0..5usize {
            let ball = lift_to_tree(&q, &m, &y, 0, r).unwrap();
            let expect = if r == 0 { 1 } else { 1 + 3 * ((1 << r) - 1) };
            assert_eq!(ball.len(), expect);
        }
        let ball = lift_to_tree(&q, &m, &y, 0, 4).unwrap();
        for bv in &ball {
            assert_eq!(bv.y_vertex, bv.word.len() % 2);
        }
    }

    #[test]
    fn lift_cocycle_property() {
        // The lift from the image of w evaluated at u equals the lift from
        // the basepoint evaluated at w·u — the tree action on tilings
        // restricted to balls.
        let y = two_vertex_parallel();
        let z = FlowVector { vertex_values: vec![rat(1); 2], edge_values: vec![rat(1); 3] };
        let (q, m) = build_periodic_tiling(&y, &z).unwrap();
        let ball = lift_to_tree(&q, &m, &y, 0, 4).unwrap();
        for bv in &ball {
            if bv.word.len() > 2 {
                continue;
            }
            let inner = lift_to_tree(&q, &m, &y, bv.q_vertex, 2).unwrap();
            for iv in &inner {
                if iv.word.first() == bv.word.last() && !iv.word.is_empty() {
                    continue; // not reduced after concatenation
                }
                let mut joined = bv.word.clone();
                joined.extend(iv.word.iter().copied());
                if let Some(f) = ball.iter().find(|b| b.word == joined) {
                    assert_eq!(f.q_vertex, iv.q_vertex);
                }
            }
        }
    }

    #[test]
    fn full_quotient_doubles_with_doubled_flow() {
        let y = one_vertex_three_loops();
        let z1 = FlowVector { vertex_values: vec![rat(1)], edge_values: vec![rat(1); 3] };
        let z2 = FlowVector { vertex_values: vec![rat(2)], edge_values: vec![rat(2); 3] };
        let (q2, m2) = build_full_quotient(&y, &z2).unwrap();
        let back2 = tiling_to_flow(&q2, &m2, &y).unwrap();
        assert_eq!(back2, z2);
        let (q1, m1) = build_full_quotient(&y, &z1).unwrap();
        let back1 = tiling_to_flow(&q1, &m1, &y).unwrap();
        for i in 0..3 {
            assert_eq!(
                &back1.edge_values[i] * BigRational::from_integer(BigInt::from(2)),
                back2.edge_values[i]
            );
        }
    }

    #[test]
    fn rejects_non_flows() {
        let y = one_vertex_three_loops();
        let not_flow = FlowVector { vertex_values: vec![rat(1)], edge_values: vec![rat(2); 3] };
        assert_eq!(build_full_quotient(&y, &not_flow), Err(Error::NotAFlow));
        let not_integral = FlowVector {
            vertex_values: vec![BigRational::new(BigInt::from(1), BigInt::from(2))],
            edge_values: vec![BigRational::new(BigInt::from(1), BigInt::from(2)); 3],
        };
        assert_eq!(build_full_quotient(&y, &not_integral), Err(Error::NotIntegral));
    }
}
