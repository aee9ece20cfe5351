//! Decomposition of `exp(iγP)` into native two-qubit Pauli rotations.
//!
//! Every strategy peels the target with a sequence of two-qubit conjugators
//! `O₁ … O_p` and finishes with one parameterized gate on the final residual.
//! The emitted circuit, in time order, is
//!
//! ```text
//! exp(+iπ/4·O₁) … exp(+iπ/4·O_p)  exp(±iγ·H_p)  exp(-iπ/4·O_p) … exp(-iπ/4·O₁)
//! ```
//!
//! which is palindromic in generators with opposite fixed angles, so
//! consecutive decompositions can cancel at their seams.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::circuit::{Angle, Circuit, Gate, RotationGate};
use crate::error::{Error, Result};
use crate::graph::{build_spanning_plan, HardwareGraph, SpanningTreePlan};
use crate::pauli::{Pauli, PauliString, Sign};

/// Default name of the rotation parameter.
pub const DEFAULT_PARAM: &str = "gamma";

fn first_anticommuting(letter: Pauli) -> Pauli {
    *Pauli::PREFERENCE
        .iter()
        .find(|l| !l.commutes_with(letter))
        .expect("every non-identity letter anticommutes with another")
}

/// Two-qubit conjugator that removes `leaf` from `residual`.
///
/// The conjugator copies the residual's letter on `leaf`. On `parent` it
/// takes `preferred` when that letter anticommutes with the residual there,
/// otherwise the first of `X, Y, Z` that does. When the residual is `I` on
/// `parent` the preference order alone decides.
pub fn choose_conjugator(
    residual: &PauliString,
    leaf: usize,
    parent: usize,
    preferred: Option<Pauli>,
    graph: Option<&HardwareGraph>,
) -> Result<PauliString> {
    let n = residual.num_qubits();
    for v in [leaf, parent] {
        if v >= n {
            return Err(Error::NodeOutOfRange { node: v, n });
        }
    }
    if leaf == parent {
        return Err(Error::InvalidTarget(format!("leaf and parent are both {leaf}")));
    }
    if let Some(g) = graph {
        if !g.has_edge(leaf, parent) {
            return Err(Error::NotAnEdge(leaf, parent));
        }
    }
    let leaf_letter = residual.letter(leaf);
    if leaf_letter.is_identity() {
        return Err(Error::InvalidTarget(format!(
            "residual {residual} is the identity on leaf {leaf}"
        )));
    }
    let at_parent = residual.letter(parent);
    let parent_letter = match preferred {
        Some(p) if !p.is_identity() && (at_parent.is_identity() || !p.commutes_with(at_parent)) => p,
        _ if at_parent.is_identity() => Pauli::PREFERENCE[0],
        _ => first_anticommuting(at_parent),
    };
    PauliString::from_sparse(n, &[(leaf, leaf_letter), (parent, parent_letter)])
}

/// Running state of a nested decomposition on the full register.
#[derive(Debug, Clone)]
struct Nest {
    residual: PauliString,
    sign: Sign,
    conjugators: Vec<(PauliString, [usize; 2])>,
}

impl Nest {
    fn new(p: &PauliString) -> Result<Nest> {
        let sign = p
            .sign()
            .ok_or_else(|| Error::NonHermitian(p.to_string()))?;
        if p.support().is_empty() {
            return Err(Error::InvalidTarget("target has empty support".into()));
        }
        Ok(Nest {
            residual: p.unsigned(),
            sign,
            conjugators: Vec::new(),
        })
    }

    /// Applies the conjugator `o` on `pair`, replacing the residual.
    fn peel(&mut self, o: PauliString, pair: [usize; 2]) -> Result<()> {
        let (h, s) = PauliString::residual(&o, &self.residual)?;
        // The outer gate has angle +π/4, i.e. the pair conjugates with sign -1:
        // exp(-iπ/4 o) h exp(+iπ/4 o) = -s·p.
        self.sign = self.sign * -s;
        self.residual = h;
        self.conjugators.push((o, pair));
        Ok(())
    }

    fn peel_leaf(
        &mut self,
        leaf: usize,
        parent: usize,
        preferred: Option<Pauli>,
        graph: &HardwareGraph,
    ) -> Result<Pauli> {
        let o = choose_conjugator(&self.residual, leaf, parent, preferred, Some(graph))?;
        let parent_letter = o.letter(parent);
        self.peel(o, [leaf, parent])?;
        Ok(parent_letter)
    }

    /// Emits the nested circuit with the central gate on `center` qubits.
    fn finish(self, center: &[usize], param: &str) -> Result<Circuit> {
        let support: BTreeSet<usize> = self.residual.support().into_iter().collect();
        let wanted: BTreeSet<usize> = center.iter().copied().collect();
        if support != wanted {
            return Err(Error::InvalidDecomposition(format!(
                "final residual {} is not supported on {center:?}",
                self.residual
            )));
        }
        let n = self.residual.num_qubits();
        let mut c = Circuit::new(n);
        for (o, pair) in &self.conjugators {
            c.push(RotationGate::on(o, pair, Angle::quarter(Sign::Plus))?);
        }
        c.push(RotationGate::on(
            &self.residual,
            center,
            Angle::param(param, self.sign),
        )?);
        for (o, pair) in self.conjugators.iter().rev() {
            c.push(RotationGate::on(o, pair, Angle::quarter(Sign::Minus))?);
        }
        Ok(c)
    }
}

fn require_support(p: &PauliString, nodes: &[usize]) -> Result<()> {
    let support: BTreeSet<usize> = p.support().into_iter().collect();
    let want: BTreeSet<usize> = nodes.iter().copied().collect();
    if want.len() != nodes.len() {
        return Err(Error::InvalidTarget(format!("repeated node in {nodes:?}")));
    }
    if support != want {
        return Err(Error::SupportMismatch(format!(
            "target {p} is supported on {support:?}, expected {want:?}"
        )));
    }
    Ok(())
}

fn require_graph_size(p: &PauliString, g: &HardwareGraph) -> Result<()> {
    if p.num_qubits() != g.num_nodes() {
        return Err(Error::DimensionMismatch {
            left: p.num_qubits(),
            right: g.num_nodes(),
        });
    }
    Ok(())
}

fn peel_path(nest: &mut Nest, g: &HardwareGraph, order: &[usize], m: usize) -> Result<[usize; 2]> {
    let len = order.len();
    for i in 0..m - 1 {
        nest.peel_leaf(order[i], order[i + 1], None, g)?;
    }
    for j in (m + 1..len).rev() {
        nest.peel_leaf(order[j], order[j - 1], None, g)?;
    }
    Ok([order[m - 1], order[m]])
}

/// Path decomposition along `path_order` with the central gate on the
/// `m`-th and `(m+1)`-th path nodes (`m` is one-based, `1 ≤ m < len`).
pub fn decompose_path(
    p: &PauliString,
    g: &HardwareGraph,
    path_order: &[usize],
    m: usize,
    param: &str,
) -> Result<Circuit> {
    require_graph_size(p, g)?;
    require_support(p, path_order)?;
    let mut nest = Nest::new(p)?;
    if path_order.len() == 1 {
        return nest.finish(path_order, param);
    }
    for w in path_order.windows(2) {
        if !g.has_edge(w[0], w[1]) {
            return Err(Error::NotAnEdge(w[0], w[1]));
        }
    }
    let max = path_order.len() - 1;
    if m < 1 || m > max {
        return Err(Error::SplitOutOfRange { m, max });
    }
    let center = peel_path(&mut nest, g, path_order, m)?;
    nest.finish(&center, param)
}

/// Split index `⌈n/2⌉` that minimizes path depth.
pub fn default_split(len: usize) -> usize {
    len.div_ceil(2).max(1)
}

/// Depth of a path decomposition with split `m`, counted as in the
/// closed form `2(n-m+1)-3` for `m < ⌈n/2⌉`, else `2(m+1)-3`.
pub fn path_depth_formula(n: usize, m: usize) -> usize {
    if n < 2 {
        return 0;
    }
    if m < n.div_ceil(2) {
        2 * (n - m + 1) - 3
    } else {
        2 * (m + 1) - 3
    }
}

fn peel_star(nest: &mut Nest, g: &HardwareGraph, center: usize, leaves: &[usize]) -> Result<[usize; 2]> {
    let mut shared = None;
    for &leaf in &leaves[..leaves.len() - 1] {
        shared = Some(nest.peel_leaf(leaf, center, shared, g)?);
    }
    Ok([center, leaves[leaves.len() - 1]])
}

/// Star decomposition: every conjugator shares `center` and carries the same
/// letter there, so all of them run in one layer.
pub fn decompose_star(
    p: &PauliString,
    g: &HardwareGraph,
    center: usize,
    leaf_order: &[usize],
    param: &str,
) -> Result<Circuit> {
    require_graph_size(p, g)?;
    let mut nodes = vec![center];
    nodes.extend_from_slice(leaf_order);
    require_support(p, &nodes)?;
    let mut nest = Nest::new(p)?;
    if leaf_order.is_empty() {
        return nest.finish(&[center], param);
    }
    for &leaf in leaf_order {
        if !g.has_edge(leaf, center) {
            return Err(Error::NotAnEdge(leaf, center));
        }
    }
    let c = peel_star(&mut nest, g, center, leaf_order)?;
    nest.finish(&c, param)
}

/// Peels every generation of `plan` (leaves first) with star-pattern
/// conjugators and returns the central pair.
fn peel_tree(nest: &mut Nest, g: &HardwareGraph, plan: &SpanningTreePlan) -> Result<Vec<usize>> {
    let gens = plan.generations.len();
    for (i, generation) in plan.generations.iter().enumerate() {
        let last = i + 1 == gens;
        let mut members = generation.clone();
        let mut partner = None;
        if last && plan.secondary_root.is_none() {
            // The final star at the root keeps one child for the central gate.
            partner = members.pop();
        }
        let mut shared: BTreeMap<usize, Pauli> = BTreeMap::new();
        for &v in &members {
            let parent = plan.parent[v].expect("generation nodes have parents");
            let letter = nest.peel_leaf(v, parent, shared.get(&parent).copied(), g)?;
            shared.insert(parent, letter);
        }
        if let Some(p) = partner {
            return Ok(vec![plan.root, p]);
        }
    }
    Ok(match plan.secondary_root {
        Some(s) => vec![plan.root, s],
        None => vec![plan.root],
    })
}

/// Decomposition on an arbitrary connected graph via its spanning-tree plan.
/// `p` must act on every node of `g`.
pub fn decompose_general(p: &PauliString, g: &HardwareGraph, param: &str) -> Result<Circuit> {
    require_graph_size(p, g)?;
    g.require_connected()?;
    let all: Vec<usize> = (0..g.num_nodes()).collect();
    require_support(p, &all)?;
    let plan = build_spanning_plan(g)?;
    decompose_with_plan(p, g, &plan, param)
}

/// Like [`decompose_general`] with a precomputed plan.
pub fn decompose_with_plan(
    p: &PauliString,
    g: &HardwareGraph,
    plan: &SpanningTreePlan,
    param: &str,
) -> Result<Circuit> {
    let mut nest = Nest::new(p)?;
    let center = peel_tree(&mut nest, g, plan)?;
    nest.finish(&center, param)
}

/// A target whose support was extended to a connected node set.
#[derive(Debug, Clone)]
pub struct RoutedTarget {
    /// Residual acting exactly on `active`, scalar `+1`.
    pub residual: PauliString,
    /// Accumulated sign of the central parameter.
    pub sign: Sign,
    /// Support-extension conjugators, outermost first, with their qubit pairs.
    pub extension: Vec<(PauliString, [usize; 2])>,
    /// Connected node set, ascending.
    pub active: Vec<usize>,
}

impl RoutedTarget {
    fn into_nest(self) -> Nest {
        Nest {
            residual: self.residual,
            sign: self.sign,
            conjugators: self.extension,
        }
    }
}

/// Extends a target whose support is disconnected on `g` by adjoining the
/// intermediate qubits of shortest connecting paths, two gates per qubit.
pub fn route_support(p: &PauliString, g: &HardwareGraph) -> Result<RoutedTarget> {
    require_graph_size(p, g)?;
    let mut nest = Nest::new(p)?;
    loop {
        let support = nest.residual.support();
        let mut in_support = vec![false; g.num_nodes()];
        for &v in &support {
            in_support[v] = true;
        }
        // Component of the smallest support node inside the support.
        let mut in_comp = vec![false; g.num_nodes()];
        let mut stack = vec![support[0]];
        in_comp[support[0]] = true;
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if in_support[w] && !in_comp[w] {
                    in_comp[w] = true;
                    stack.push(w);
                }
            }
        }
        if support.iter().all(|&v| in_comp[v]) {
            return Ok(RoutedTarget {
                residual: nest.residual,
                sign: nest.sign,
                extension: nest.conjugators,
                active: support,
            });
        }

        // BFS from the component through non-support nodes to the nearest
        // other support node, ties toward smaller indices.
        let n = g.num_nodes();
        let mut dist = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for v in 0..n {
            if in_comp[v] {
                dist[v] = 0;
                queue.push_back(v);
            }
        }
        while let Some(u) = queue.pop_front() {
            if in_support[u] && !in_comp[u] {
                continue;
            }
            for &w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        let target = (0..n)
            .filter(|&v| in_support[v] && !in_comp[v] && dist[v] != usize::MAX)
            .min_by_key(|&v| (dist[v], v))
            .ok_or(Error::Disconnected)?;
        let mut chain = vec![target];
        let mut cur = target;
        while dist[cur] > 0 {
            cur = *g
                .neighbors(cur)
                .iter()
                .find(|&&w| dist[w] != usize::MAX && dist[w] + 1 == dist[cur] && (!in_support[w] || in_comp[w]))
                .expect("BFS predecessor exists");
            chain.push(cur);
        }
        chain.reverse();
        // chain = [component node, intermediates..., target]
        for w in chain.windows(2).take(chain.len() - 2) {
            let (from, to) = (w[0], w[1]);
            let at_from = nest.residual.letter(from);
            let o = PauliString::from_sparse(
                n,
                &[(from, first_anticommuting(at_from)), (to, Pauli::PREFERENCE[0])],
            )?;
            nest.peel(o, [from, to])?;
        }
    }
}

/// Decomposition strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Auto,
    Path,
    Star,
    General,
}

impl FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Strategy> {
        match s {
            "auto" => Ok(Strategy::Auto),
            "path" => Ok(Strategy::Path),
            "star" => Ok(Strategy::Star),
            "general" => Ok(Strategy::General),
            other => Err(Error::Unsupported(format!("strategy '{other}'"))),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Auto => "auto",
            Strategy::Path => "path",
            Strategy::Star => "star",
            Strategy::General => "general",
        })
    }
}

/// Options for [`decompose`].
#[derive(Debug, Clone)]
pub struct DecomposeOptions {
    pub strategy: Strategy,
    /// One-based path split; defaults to `⌈n/2⌉`.
    pub split: Option<usize>,
    pub param: String,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions {
            strategy: Strategy::Auto,
            split: None,
            param: DEFAULT_PARAM.to_string(),
        }
    }
}

/// Decomposition result with the strategy that was actually used.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub circuit: Circuit,
    pub strategy: Strategy,
    /// Diameter of the subgraph induced by the routed support.
    pub diameter: usize,
    /// Number of qubits adjoined by support routing.
    pub routed_qubits: usize,
}

/// Full pipeline: route the support, pick a strategy for the induced
/// subgraph, and emit the nested circuit on the original register.
pub fn decompose(p: &PauliString, g: &HardwareGraph, opts: &DecomposeOptions) -> Result<Decomposition> {
    let routed = route_support(p, g)?;
    let routed_qubits = routed.extension.len();
    let active = routed.active.clone();
    let sub = g.induced_subgraph(&active)?;
    let (diameter, _) = sub.diameter()?;
    let mut nest = routed.into_nest();
    let lift = |nodes: &[usize]| nodes.iter().map(|&v| active[v]).collect::<Vec<_>>();

    if active.len() == 1 {
        let circuit = nest.finish(&active, &opts.param)?;
        return Ok(Decomposition {
            circuit,
            strategy: opts.strategy,
            diameter,
            routed_qubits,
        });
    }

    let strategy = match opts.strategy {
        Strategy::Auto => {
            if sub.path_order().is_some() {
                Strategy::Path
            } else if sub.star_center().is_some() {
                Strategy::Star
            } else {
                Strategy::General
            }
        }
        s => s,
    };
    let center = match strategy {
        Strategy::Path => {
            let order = lift(
                &sub.path_order()
                    .ok_or_else(|| Error::Unsupported("support does not induce a path".into()))?,
            );
            let m = opts.split.unwrap_or_else(|| default_split(order.len()));
            if m < 1 || m >= order.len() {
                return Err(Error::SplitOutOfRange {
                    m,
                    max: order.len() - 1,
                });
            }
            peel_path(&mut nest, g, &order, m)?.to_vec()
        }
        Strategy::Star => {
            let c = sub
                .star_center()
                .ok_or_else(|| Error::Unsupported("support does not induce a star".into()))?;
            let leaves: Vec<usize> = (0..active.len()).filter(|&v| v != c).collect();
            peel_star(&mut nest, g, active[c], &lift(&leaves))?.to_vec()
        }
        Strategy::General | Strategy::Auto => {
            let plan = lift_plan(&build_spanning_plan(&sub)?, &active, g.num_nodes());
            peel_tree(&mut nest, g, &plan)?
        }
    };
    let circuit = nest.finish(&center, &opts.param)?;
    Ok(Decomposition {
        circuit,
        strategy,
        diameter,
        routed_qubits,
    })
}

fn lift_plan(plan: &SpanningTreePlan, active: &[usize], n: usize) -> SpanningTreePlan {
    let map = |v: usize| active[v];
    let mut parent = vec![None; n];
    let mut level = vec![0; n];
    for (v, p) in plan.parent.iter().enumerate() {
        parent[map(v)] = p.map(map);
        level[map(v)] = plan.level[v];
    }
    SpanningTreePlan {
        seed_path: plan.seed_path.iter().copied().map(map).collect(),
        root: map(plan.root),
        secondary_root: plan.secondary_root.map(map),
        parent,
        level,
        generations: plan
            .generations
            .iter()
            .map(|g| {
                let mut lifted: Vec<usize> = g.iter().copied().map(map).collect();
                lifted.sort_unstable();
                lifted
            })
            .collect(),
        height: plan.height,
        diameter: plan.diameter,
    }
}

/// CNOT-based reference construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaselineVariant {
    /// Parity accumulated along the path onto its last node.
    Ladder,
    /// Parity accumulated from both ends onto the middle node.
    XShaped,
}

impl FromStr for BaselineVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<BaselineVariant> {
        match s {
            "ladder" => Ok(BaselineVariant::Ladder),
            "x_shaped" | "x-shaped" => Ok(BaselineVariant::XShaped),
            other => Err(Error::Unsupported(format!("baseline variant '{other}'"))),
        }
    }
}

impl fmt::Display for BaselineVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BaselineVariant::Ladder => "ladder",
            BaselineVariant::XShaped => "x_shaped",
        })
    }
}

/// Textbook CNOT construction of `exp(iγP)` on the path `path_order`:
/// basis changes to `Z`, a CNOT parity network, one `Z` rotation, and the
/// mirrored uncomputation.
pub fn cnot_baseline(
    p: &PauliString,
    path_order: &[usize],
    variant: BaselineVariant,
    param: &str,
) -> Result<Circuit> {
    require_support(p, path_order)?;
    let sign = p.sign().ok_or_else(|| Error::NonHermitian(p.to_string()))?;
    let n = p.num_qubits();
    let len = path_order.len();

    let mut basis = Circuit::new(n);
    for &q in path_order {
        // B with B†·Z·B equal to the target letter.
        let change = match p.letter(q) {
            Pauli::X => Some((Pauli::Y, Sign::Plus)),
            Pauli::Y => Some((Pauli::X, Sign::Minus)),
            _ => None,
        };
        if let Some((l, s)) = change {
            basis.push(RotationGate::new(vec![q], vec![l], Angle::quarter(s))?);
        }
    }

    let mut network: Vec<Gate> = Vec::new();
    let pivot = match variant {
        BaselineVariant::Ladder => {
            for w in path_order.windows(2) {
                network.push(Gate::Cnot {
                    control: w[0],
                    target: w[1],
                });
            }
            len - 1
        }
        BaselineVariant::XShaped => {
            let mid = len / 2;
            for i in 0..mid {
                network.push(Gate::Cnot {
                    control: path_order[i],
                    target: path_order[i + 1],
                });
            }
            for i in (mid + 1..len).rev() {
                network.push(Gate::Cnot {
                    control: path_order[i],
                    target: path_order[i - 1],
                });
            }
            mid
        }
    };

    let mut c = Circuit::new(n);
    c.extend(&basis);
    for gate in &network {
        c.push(gate.clone());
    }
    c.push(RotationGate::new(
        vec![path_order[pivot]],
        vec![Pauli::Z],
        Angle::param(param, sign),
    )?);
    for gate in network.iter().rev() {
        c.push(gate.clone());
    }
    for gate in basis.gates.iter().rev() {
        let r = gate.as_rotation().expect("basis changes are rotations");
        c.push(RotationGate::new(r.qubits.clone(), r.letters.clone(), r.angle.negated())?);
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    fn generators(c: &Circuit) -> Vec<String> {
        c.rotations()
            .map(|r| {
                let mut s = String::new();
                for (q, l) in r.qubits.iter().zip(&r.letters) {
                    s.push_str(&format!("{}{}", l.to_char().to_ascii_lowercase(), q + 1));
                }
                s
            })
            .collect()
    }

    #[test]
    fn conjugator_examples() {
        let g = HardwareGraph::path(4);
        let o = choose_conjugator(&ps("ZZZZ"), 0, 1, None, Some(&g)).unwrap();
        assert_eq!(o, ps("ZXII"));
        let o = choose_conjugator(&ps("ZYZ"), 0, 1, None, None).unwrap();
        assert_eq!(o.letter(1), Pauli::X);
        let o = choose_conjugator(&ps("YXZ"), 2, 1, None, None).unwrap();
        assert_eq!(o, ps("IYZ"));
        assert!(!o.commutes(&ps("YXZ")).unwrap());
    }

    #[test]
    fn conjugator_preference_and_errors() {
        let o = choose_conjugator(&ps("ZZ"), 0, 1, Some(Pauli::Y), None).unwrap();
        assert_eq!(o, ps("ZY"));
        // Z does not anticommute with Z, so the preference is ignored.
        let o = choose_conjugator(&ps("ZZ"), 0, 1, Some(Pauli::Z), None).unwrap();
        assert_eq!(o, ps("ZX"));
        assert!(matches!(
            choose_conjugator(&ps("IZ"), 0, 1, None, None),
            Err(Error::InvalidTarget(_))
        ));
        let g = HardwareGraph::path(3);
        assert_eq!(
            choose_conjugator(&ps("ZZZ"), 0, 2, None, Some(&g)),
            Err(Error::NotAnEdge(0, 2))
        );
    }

    #[test]
    fn exhaustive_conjugators_anticommute() {
        let letters = [Pauli::X, Pauli::Y, Pauli::Z];
        for &a in &letters {
            for &b in &letters {
                for &c in &letters {
                    let r = PauliString::from_letters(&[a, b, c]);
                    for (leaf, parent) in [(0, 1), (1, 2), (2, 1), (1, 0)] {
                        let o = choose_conjugator(&r, leaf, parent, None, None).unwrap();
                        assert!(!o.commutes(&r).unwrap(), "{o} vs {r}");
                        let (h, _) = PauliString::residual(&o, &r).unwrap();
                        assert!(h.letter(leaf).is_identity());
                        assert!(!h.letter(parent).is_identity());
                    }
                }
            }
        }
    }

    #[test]
    fn plaquette_path_reproduces_golden_circuit() {
        // Path v1 - v2 - v4 - v3 on a square with corners 0,1,2,3.
        let g = HardwareGraph::new(4, [(0, 1), (1, 3), (3, 2), (2, 0)]).unwrap();
        let c = decompose_path(&ps("ZZZZ"), &g, &[0, 1, 3, 2], 2, "gamma").unwrap();
        assert_eq!(generators(&c), ["z1x2", "z3x4", "y2y4", "z3x4", "z1x2"]);
        let angles: Vec<String> = c.rotations().map(|r| r.angle.to_string()).collect();
        assert_eq!(angles, ["+pi/4", "+pi/4", "+gamma", "-pi/4", "-pi/4"]);
    }

    #[test]
    fn two_qubit_target_is_native() {
        let g = HardwareGraph::path(2);
        let c = decompose_path(&ps("XY"), &g, &[0, 1], 1, "g").unwrap();
        assert_eq!(c.len(), 1);
        let c = decompose_star(&ps("-XY"), &g, 0, &[1], "g").unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.rotations().next().unwrap().angle, Angle::param("g", Sign::Minus));
    }

    #[test]
    fn path_errors() {
        let g = HardwareGraph::path(4);
        let p = ps("ZZZZ");
        assert!(matches!(
            decompose_path(&p, &g, &[0, 1, 2], 1, "g"),
            Err(Error::SupportMismatch(_))
        ));
        assert_eq!(
            decompose_path(&p, &g, &[0, 2, 1, 3], 1, "g"),
            Err(Error::NotAnEdge(0, 2))
        );
        assert_eq!(
            decompose_path(&p, &g, &[0, 1, 2, 3], 4, "g"),
            Err(Error::SplitOutOfRange { m: 4, max: 3 })
        );
        assert!(decompose_path(&p, &g, &[0, 1, 2, 3], 0, "g").is_err());
        assert!(decompose_path(&ps("iZZZZ"), &g, &[0, 1, 2, 3], 2, "g").is_err());
    }

    #[test]
    fn path_counts() {
        for n in 2..=12 {
            let g = HardwareGraph::path(n);
            let p = PauliString::from_letters(&vec![Pauli::Z; n]);
            let order: Vec<usize> = (0..n).collect();
            for m in 1..n {
                let c = decompose_path(&p, &g, &order, m, "g").unwrap();
                assert_eq!(c.two_qubit_count(), 2 * n - 3);
                c.validate_edges(&g).unwrap();
            }
        }
    }

    #[test]
    fn star_shares_center_letter() {
        let g = HardwareGraph::star(6);
        let p = PauliString::from_letters(&[Pauli::Z; 6]);
        let c = decompose_star(&p, &g, 0, &[1, 2, 3, 4, 5], "g").unwrap();
        assert_eq!(c.two_qubit_count(), 9);
        let center_letters: BTreeSet<Pauli> = c.rotations().take(4).map(|r| r.letter_on(0)).collect();
        assert_eq!(center_letters.len(), 1);
        assert!(matches!(
            decompose_star(&p, &HardwareGraph::path(6), 0, &[1, 2, 3, 4, 5], "g"),
            Err(Error::NotAnEdge(..))
        ));
    }

    #[test]
    fn general_on_star_matches_star_strategy() {
        let g = HardwareGraph::star(6);
        let p = ps("XYZXYZ");
        let a = decompose_general(&p, &g, "g").unwrap();
        let b = decompose_star(&p, &g, 0, &[1, 2, 3, 4, 5], "g").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn general_requires_full_support_and_connectivity() {
        let g = HardwareGraph::path(3);
        assert!(matches!(
            decompose_general(&ps("ZIZ"), &g, "g"),
            Err(Error::SupportMismatch(_))
        ));
        let d = HardwareGraph::new(3, [(0, 1)]).unwrap();
        assert_eq!(decompose_general(&ps("ZZZ"), &d, "g"), Err(Error::Disconnected));
    }

    #[test]
    fn route_support_adjoins_intermediate_qubits() {
        let g = HardwareGraph::path(3);
        let r = route_support(&ps("XIX"), &g).unwrap();
        assert_eq!(r.active, vec![0, 1, 2]);
        assert_eq!(r.extension.len(), 1);
        let d = decompose(&ps("XIX"), &g, &DecomposeOptions::default()).unwrap();
        assert_eq!(d.circuit.two_qubit_count(), 5);
        assert_eq!(d.routed_qubits, 1);

        let full = route_support(&ps("XYX"), &g).unwrap();
        assert!(full.extension.is_empty());
        assert_eq!(full.residual, ps("XYX"));
    }

    #[test]
    fn single_qubit_target() {
        let g = HardwareGraph::path(3);
        let d = decompose(&ps("IYI"), &g, &DecomposeOptions::default()).unwrap();
        assert_eq!(d.circuit.len(), 1);
        assert_eq!(d.circuit.two_qubit_count(), 0);
        assert!(d.circuit.gates[0].as_rotation().unwrap().angle.is_param());
    }

    #[test]
    fn strategy_auto_detection() {
        let p = ps("ZZZZZ");
        let opts = DecomposeOptions::default();
        assert_eq!(decompose(&p, &HardwareGraph::path(5), &opts).unwrap().strategy, Strategy::Path);
        assert_eq!(decompose(&p, &HardwareGraph::star(5), &opts).unwrap().strategy, Strategy::Star);
        assert_eq!(
            decompose(&p, &HardwareGraph::cycle(5), &opts).unwrap().strategy,
            Strategy::General
        );
        let forced = DecomposeOptions {
            strategy: Strategy::Star,
            ..DecomposeOptions::default()
        };
        assert!(matches!(
            decompose(&p, &HardwareGraph::path(5), &forced),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn baseline_counts() {
        for n in 2..=9 {
            let p = PauliString::from_letters(&vec![Pauli::Z; n]);
            let order: Vec<usize> = (0..n).collect();
            for v in [BaselineVariant::Ladder, BaselineVariant::XShaped] {
                let c = cnot_baseline(&p, &order, v, "g").unwrap();
                assert_eq!(c.two_qubit_count(), 2 * (n - 1));
            }
        }
        assert!("zigzag".parse::<BaselineVariant>().is_err());
    }

    #[test]
    fn depth_formula_examples() {
        assert_eq!(path_depth_formula(6, 3), 5);
        assert_eq!(path_depth_formula(6, 1), 9);
        assert_eq!(path_depth_formula(4, 2), 3);
        assert_eq!(path_depth_formula(2, 1), 1);
    }
}
