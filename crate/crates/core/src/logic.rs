//! The equilibrium as the unique solution of a propositional system.
//!
//! One boolean `S_n` per node and outcome says whether `n` lies on the
//! equilibrium path. Three families of implications constrain them:
//!
//! * causal bridge `C_n`: `S_n => S_parent & !S_sibling...`,
//! * second principle `P2[U, r]`: if every outcome of `U` is out, the
//!   reaction path of the tree pruned of `U` reaches `r`,
//! * first principle `P1[U, o, r]`: if every outcome of `U` is out and `o` is
//!   on the path, then so is the preempting deviation `r`.
//!
//! Only the sets `U` reachable from the empty set in the outcome powerset
//! graph index equations. The graph is explored lazily, breadth first.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use crate::error::LogicError;
use crate::game::{GameTree, NodeId, OutcomeSet, Path, PlayerId};

pub const DEFAULT_VERTEX_LIMIT: usize = 4096;
pub const DEFAULT_VARIABLE_LIMIT: usize = 24;
/// Assignments are enumerated as bitmasks of this width.
const MAX_ENUMERABLE: usize = 32;

/// Size guards for the brute-force route.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LogicBounds {
    pub max_vertices: usize,
    pub max_variables: usize,
}

impl Default for LogicBounds {
    fn default() -> Self {
        LogicBounds {
            max_vertices: DEFAULT_VERTEX_LIMIT,
            max_variables: DEFAULT_VARIABLE_LIMIT,
        }
    }
}

/// The unique maximal dominance path of a pruned tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReactionPath {
    pub nodes: Vec<NodeId>,
}

impl ReactionPath {
    pub fn terminal(&self) -> NodeId {
        *self.nodes.last().expect("reaction paths start at the root")
    }
}

/// A reaction path extended by one deviation whose outcomes all beat
/// `target` for the player at the deviation point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreemptingPath {
    pub nodes: Vec<NodeId>,
    pub target: NodeId,
}

impl PreemptingPath {
    pub fn terminal(&self) -> NodeId {
        *self.nodes.last().expect("non-empty")
    }
}

/// Survivor view of a tree with some outcomes removed.
struct Pruned<'a> {
    tree: &'a GameTree,
    removed: &'a OutcomeSet,
}

impl<'a> Pruned<'a> {
    fn survivors(&self, node: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.tree
            .outcomes_below(node)
            .filter(move |o| !self.removed.contains(o))
    }

    /// Live children with the owner's (min, max) payoff over their survivors.
    fn live_children(&self, node: NodeId, owner: PlayerId) -> Vec<(NodeId, i64, i64)> {
        self.tree
            .children(node)
            .into_iter()
            .filter_map(|c| {
                let pays: Vec<i64> = self
                    .survivors(c)
                    .map(|o| self.tree.payoff(o, owner))
                    .collect();
                let min = *pays.iter().min()?;
                let max = *pays.iter().max()?;
                Some((c, min, max))
            })
            .collect()
    }

    fn reaction_path(&self) -> Result<ReactionPath, LogicError> {
        if self.survivors(self.tree.root()).next().is_none() {
            return Err(LogicError::NoSurvivors);
        }
        let mut node = self.tree.root();
        let mut nodes = vec![node];
        while let Some(owner) = self.tree.owner(node) {
            let live = self.live_children(node, owner);
            let next = live.iter().find(|(c, min, _)| {
                live.iter()
                    .filter(|(d, _, _)| d != c)
                    .all(|(_, _, max)| min > max)
            });
            match next {
                Some(&(c, _, _)) => {
                    nodes.push(c);
                    node = c;
                }
                None => break,
            }
        }
        Ok(ReactionPath { nodes })
    }

    fn preempting_paths(&self) -> Result<Vec<PreemptingPath>, LogicError> {
        let reaction = self.reaction_path()?;
        let at = reaction.terminal();
        let Some(owner) = self.tree.owner(at) else {
            return Ok(Vec::new());
        };
        let mut out = Vec::new();
        for (dev, min, _) in self.live_children(at, owner) {
            for o in self.survivors(at) {
                if !self.tree.is_descendant(o, dev) && self.tree.payoff(o, owner) < min {
                    let mut nodes = reaction.nodes.clone();
                    nodes.push(dev);
                    out.push(PreemptingPath { nodes, target: o });
                }
            }
        }
        Ok(out)
    }
}

/// Reaction path of the tree with `removed` outcomes pruned.
pub fn reaction_path(tree: &GameTree, removed: &OutcomeSet) -> Result<ReactionPath, LogicError> {
    Pruned { tree, removed }.reaction_path()
}

/// Preempting reaction paths of the pruned tree. Deviations hang off the
/// end of the (maximal) reaction path, and target surviving outcomes below
/// that point.
pub fn preempting_paths(
    tree: &GameTree,
    removed: &OutcomeSet,
) -> Result<Vec<PreemptingPath>, LogicError> {
    Pruned { tree, removed }.preempting_paths()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EdgeKind {
    Reaction { terminal: NodeId },
    Preempting { target: NodeId, terminal: NodeId },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowersetEdge {
    pub from: usize,
    pub to: usize,
    pub kind: EdgeKind,
}

/// The component of the outcome powerset graph reachable from the empty set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowersetGraph {
    /// Eliminated-outcome sets in discovery order; `vertices[0]` is empty.
    pub vertices: Vec<OutcomeSet>,
    pub edges: Vec<PowersetEdge>,
}

impl PowersetGraph {
    pub fn index_of(&self, set: &OutcomeSet) -> Option<usize> {
        self.vertices.iter().position(|v| v == set)
    }

    /// Edges leaving `vertex`.
    pub fn edges_from(&self, vertex: usize) -> impl Iterator<Item = &PowersetEdge> {
        self.edges.iter().filter(move |e| e.from == vertex)
    }
}

/// Breadth-first exploration from the empty set; fails once more than
/// `limit` vertices are discovered.
pub fn build_powerset_component(
    tree: &GameTree,
    limit: usize,
) -> Result<PowersetGraph, LogicError> {
    let all = tree.all_outcomes();
    let mut vertices = vec![OutcomeSet::new()];
    let mut seen: BTreeMap<OutcomeSet, usize> = BTreeMap::new();
    seen.insert(OutcomeSet::new(), 0);
    let mut queue = VecDeque::from([0usize]);
    let mut edges = Vec::new();

    while let Some(from) = queue.pop_front() {
        let removed = vertices[from].clone();
        let pruned = Pruned {
            tree,
            removed: &removed,
        };
        let reaction = pruned.reaction_path()?;
        let terminal = reaction.terminal();
        let kept = tree.descendants(terminal)?;
        let mut targets: Vec<(OutcomeSet, EdgeKind)> = vec![(
            removed
                .iter()
                .chain(all.difference(&kept))
                .copied()
                .collect(),
            EdgeKind::Reaction { terminal },
        )];
        for p in pruned.preempting_paths()? {
            let mut next = removed.clone();
            next.insert(p.target);
            targets.push((
                next,
                EdgeKind::Preempting {
                    target: p.target,
                    terminal: p.terminal(),
                },
            ));
        }
        for (set, kind) in targets {
            let to = match seen.get(&set) {
                Some(&i) => i,
                None => {
                    if vertices.len() >= limit {
                        return Err(LogicError::ComponentTooLarge { limit });
                    }
                    let i = vertices.len();
                    seen.insert(set.clone(), i);
                    vertices.push(set);
                    queue.push_back(i);
                    i
                }
            };
            edges.push(PowersetEdge { from, to, kind });
        }
    }
    Ok(PowersetGraph { vertices, edges })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Literal {
    Pos(NodeId),
    Neg(NodeId),
}

impl Literal {
    pub fn var(self) -> NodeId {
        match self {
            Literal::Pos(v) | Literal::Neg(v) => v,
        }
    }

    pub fn holds(self, value: bool) -> bool {
        match self {
            Literal::Pos(_) => value,
            Literal::Neg(_) => !value,
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Literal::Pos(v) => write!(f, "S{v}"),
            Literal::Neg(v) => write!(f, "!S{v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EquationTag {
    Causal(NodeId),
    First {
        removed: OutcomeSet,
        target: NodeId,
        terminal: NodeId,
    },
    Second {
        removed: OutcomeSet,
        terminal: NodeId,
    },
}

/// `premise_1 & ... => conclusion_1 & ...`; an empty side reads `true`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub tag: EquationTag,
    pub premise: Vec<Literal>,
    pub conclusion: Vec<Literal>,
}

impl Equation {
    pub fn satisfied_by(&self, value: impl Fn(NodeId) -> bool) -> bool {
        !self.premise.iter().all(|l| l.holds(value(l.var())))
            || self.conclusion.iter().all(|l| l.holds(value(l.var())))
    }

    /// Short tag such as `C_3`, `P1[{}, o3, o1]` or `P2[{o3}, o4]`.
    pub fn tag_text(&self, tree: &GameTree) -> String {
        let set = |s: &OutcomeSet| format!("{{{}}}", tree.labels(s).replace(' ', ", "));
        match &self.tag {
            EquationTag::Causal(n) => format!("C_{n}"),
            EquationTag::First {
                removed,
                target,
                terminal,
            } => format!(
                "P1[{}, {}, {}]",
                set(removed),
                tree.label(*target),
                tree.label(*terminal)
            ),
            EquationTag::Second { removed, terminal } => {
                format!("P2[{}, {}]", set(removed), tree.label(*terminal))
            }
        }
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |lits: &[Literal]| {
            if lits.is_empty() {
                "true".to_string()
            } else {
                lits.iter()
                    .map(|l| l.to_string())
                    .collect::<Vec<_>>()
                    .join(" & ")
            }
        };
        write!(f, "{} => {}", side(&self.premise), side(&self.conclusion))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquationSystem {
    /// One variable per node and outcome, in preorder.
    pub variables: Vec<NodeId>,
    /// Causal-bridge equations, then first-principle, then second-principle.
    pub equations: Vec<Equation>,
}

impl EquationSystem {
    /// Builds the system indexed by the explored powerset component.
    pub fn from_graph(tree: &GameTree, graph: &PowersetGraph) -> Self {
        let variables: Vec<NodeId> = tree.ids().collect();
        let mut equations = Vec::new();
        for &n in &variables {
            let conclusion = match tree.parent(n) {
                None => Vec::new(),
                Some(p) => std::iter::once(Literal::Pos(p))
                    .chain(
                        tree.children(p)
                            .into_iter()
                            .filter(|&s| s != n)
                            .map(Literal::Neg),
                    )
                    .collect(),
            };
            equations.push(Equation {
                tag: EquationTag::Causal(n),
                premise: vec![Literal::Pos(n)],
                conclusion,
            });
        }
        let absent = |u: &OutcomeSet| u.iter().map(|&o| Literal::Neg(o)).collect::<Vec<_>>();
        for edge in &graph.edges {
            if let EdgeKind::Preempting { target, terminal } = edge.kind {
                let removed = graph.vertices[edge.from].clone();
                let mut premise = absent(&removed);
                premise.push(Literal::Pos(target));
                equations.push(Equation {
                    tag: EquationTag::First {
                        removed,
                        target,
                        terminal,
                    },
                    premise,
                    conclusion: vec![Literal::Pos(terminal)],
                });
            }
        }
        for edge in &graph.edges {
            if let EdgeKind::Reaction { terminal } = edge.kind {
                let removed = graph.vertices[edge.from].clone();
                equations.push(Equation {
                    premise: absent(&removed),
                    tag: EquationTag::Second { removed, terminal },
                    conclusion: vec![Literal::Pos(terminal)],
                });
            }
        }
        EquationSystem {
            variables,
            equations,
        }
    }

    pub fn count(&self, kind: fn(&EquationTag) -> bool) -> usize {
        self.equations.iter().filter(|e| kind(&e.tag)).count()
    }

    /// Index of an equation that rules `outcome` out once exactly the outcomes
    /// of `removed` are known to be out: a first-principle equation on
    /// `(removed, outcome)`, or a second-principle equation on `removed` whose
    /// terminal does not lead to `outcome`.
    pub fn eliminating(
        &self,
        tree: &GameTree,
        removed: &OutcomeSet,
        outcome: NodeId,
    ) -> Option<usize> {
        self.equations.iter().position(|e| match &e.tag {
            EquationTag::First {
                removed: u, target, ..
            } => u == removed && *target == outcome,
            EquationTag::Second {
                removed: u,
                terminal,
            } => u == removed && !tree.is_descendant(outcome, *terminal),
            EquationTag::Causal(_) => false,
        })
    }
}

/// Powerset component and equation system in one go.
pub fn generate_equations(
    tree: &GameTree,
    vertex_limit: usize,
) -> Result<(EquationSystem, PowersetGraph), LogicError> {
    let graph = build_powerset_component(tree, vertex_limit)?;
    Ok((EquationSystem::from_graph(tree, &graph), graph))
}

/// Truth values of all variables, keyed by id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment(pub BTreeMap<NodeId, bool>);

impl Assignment {
    pub fn value(&self, var: NodeId) -> bool {
        self.0.get(&var).copied().unwrap_or(false)
    }

    /// True variables in variable order.
    pub fn true_vars(&self) -> Vec<NodeId> {
        self.0.iter().filter(|(_, &v)| v).map(|(&k, _)| k).collect()
    }
}

/// `premise => literal`, compiled to bitmasks over variable positions.
struct Clause {
    pos: u64,
    neg: u64,
    var: u64,
    value: bool,
}

/// Tries every assignment of the system's variables and returns the only
/// satisfying one.
pub fn solve_by_enumeration(
    system: &EquationSystem,
    max_variables: usize,
) -> Result<Assignment, LogicError> {
    let n = system.variables.len();
    let limit = max_variables.min(MAX_ENUMERABLE);
    if n > limit {
        return Err(LogicError::TooManyVariables { vars: n, limit });
    }
    let bit: BTreeMap<NodeId, u64> = system
        .variables
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, 1u64 << i))
        .collect();
    let mut clauses = Vec::new();
    for eq in &system.equations {
        let (mut pos, mut neg) = (0u64, 0u64);
        for l in &eq.premise {
            match *l {
                Literal::Pos(v) => pos |= bit[&v],
                Literal::Neg(v) => neg |= bit[&v],
            }
        }
        for l in &eq.conclusion {
            clauses.push(Clause {
                pos,
                neg,
                var: bit[&l.var()],
                value: matches!(l, Literal::Pos(_)),
            });
        }
    }
    // unconditional clauses prune the most assignments
    clauses.sort_by_key(|c| (c.pos | c.neg).count_ones());

    let mut found: Option<u64> = None;
    for a in 0..(1u64 << n) {
        let ok = clauses
            .iter()
            .all(|c| a & c.pos != c.pos || a & c.neg != 0 || ((a & c.var) != 0) == c.value);
        if ok {
            if found.is_some() {
                return Err(LogicError::MultipleSolutions);
            }
            found = Some(a);
        }
    }
    let a = found.ok_or(LogicError::NoSolution)?;
    Ok(Assignment(
        system
            .variables
            .iter()
            .map(|&v| (v, a & bit[&v] != 0))
            .collect(),
    ))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogicSolution {
    pub path: Path,
    pub outcome: NodeId,
    pub graph: PowersetGraph,
    pub system: EquationSystem,
    pub assignment: Assignment,
}

/// The equilibrium read off the unique solution of the equation system.
pub fn solve_ppe_logic(tree: &GameTree, bounds: LogicBounds) -> Result<LogicSolution, LogicError> {
    let vars = tree.len();
    let limit = bounds.max_variables.min(MAX_ENUMERABLE);
    if vars > limit {
        return Err(LogicError::TooManyVariables { vars, limit });
    }
    let (system, graph) = generate_equations(tree, bounds.max_vertices)?;
    let assignment = solve_by_enumeration(&system, bounds.max_variables)?;
    let on_path: Vec<NodeId> = tree.ids().filter(|&n| assignment.value(n)).collect();
    let path = Path(on_path);
    if !path.is_complete_in(tree) {
        return Err(LogicError::NotAPath);
    }
    Ok(LogicSolution {
        outcome: path.last(),
        path,
        graph,
        system,
        assignment,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn set(ids: &[u32]) -> OutcomeSet {
        ids.iter().map(|&i| NodeId(i)).collect()
    }

    #[test]
    fn assurance_reaction_paths() {
        let t = fixtures::assurance();
        assert_eq!(reaction_path(&t, &set(&[])).unwrap().terminal(), NodeId(0));
        assert_eq!(reaction_path(&t, &set(&[3])).unwrap().terminal(), NodeId(4));
        assert_eq!(reaction_path(&t, &set(&[1])).unwrap().terminal(), NodeId(3));
        assert_eq!(reaction_path(&t, &set(&[4])).unwrap().terminal(), NodeId(1));
        assert_eq!(
            reaction_path(&t, &set(&[1, 4])).unwrap().terminal(),
            NodeId(3)
        );
        assert_eq!(
            reaction_path(&t, &set(&[1, 3, 4])),
            Err(LogicError::NoSurvivors)
        );
    }

    #[test]
    fn assurance_single_preempting_path() {
        let t = fixtures::assurance();
        let paths = preempting_paths(&t, &set(&[])).unwrap();
        assert_eq!(paths.len(), 1);
        assert_eq!(paths[0].target, NodeId(3));
        assert_eq!(paths[0].terminal(), NodeId(1));
        assert!(preempting_paths(&fixtures::single(), &set(&[]))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn gamma_preempts_o4_with_n2() {
        let t = fixtures::gamma();
        let paths = preempting_paths(&t, &set(&[])).unwrap();
        assert!(paths
            .iter()
            .any(|p| p.target == NodeId(4) && p.terminal() == NodeId(2)));
    }

    #[test]
    fn assurance_component() {
        let t = fixtures::assurance();
        let g = build_powerset_component(&t, DEFAULT_VERTEX_LIMIT).unwrap();
        assert_eq!(g.vertices, vec![set(&[]), set(&[3]), set(&[1, 3])]);
        let edges: Vec<(usize, usize)> = g.edges.iter().map(|e| (e.from, e.to)).collect();
        assert_eq!(edges, vec![(0, 0), (0, 1), (1, 2), (2, 2)]);
        assert_eq!(
            build_powerset_component(&t, 2),
            Err(LogicError::ComponentTooLarge { limit: 2 })
        );
    }

    #[test]
    fn assurance_equations_and_solution() {
        let t = fixtures::assurance();
        let (sys, _) = generate_equations(&t, DEFAULT_VERTEX_LIMIT).unwrap();
        let text: Vec<String> = sys.equations.iter().map(|e| e.to_string()).collect();
        assert_eq!(
            text,
            vec![
                "S0 => true",
                "S1 => S0 & !S2",
                "S2 => S0 & !S1",
                "S3 => S2 & !S4",
                "S4 => S2 & !S3",
                "S3 => S1",
                "true => S0",
                "!S3 => S4",
                "!S1 & !S3 => S4",
            ]
        );
        let a = solve_by_enumeration(&sys, DEFAULT_VARIABLE_LIMIT).unwrap();
        assert_eq!(a.true_vars(), vec![NodeId(0), NodeId(2), NodeId(4)]);
        assert_eq!(
            solve_by_enumeration(&sys, 4),
            Err(LogicError::TooManyVariables { vars: 5, limit: 4 })
        );
    }

    #[test]
    fn single_outcome_system() {
        let t = fixtures::single();
        let (sys, g) = generate_equations(&t, DEFAULT_VERTEX_LIMIT).unwrap();
        assert_eq!(g.vertices, vec![set(&[])]);
        assert_eq!(g.edges.len(), 1);
        let text: Vec<String> = sys.equations.iter().map(|e| e.to_string()).collect();
        assert_eq!(text, vec!["S1 => true", "true => S1"]);
        let sol = solve_ppe_logic(&t, LogicBounds::default()).unwrap();
        assert_eq!(sol.outcome, NodeId(1));
    }

    #[test]
    fn enumeration_reports_missing_and_multiple_solutions() {
        let v = NodeId(0);
        let contradiction = EquationSystem {
            variables: vec![v],
            equations: vec![
                Equation {
                    tag: EquationTag::Causal(v),
                    premise: vec![],
                    conclusion: vec![Literal::Pos(v)],
                },
                Equation {
                    tag: EquationTag::Causal(v),
                    premise: vec![Literal::Pos(v)],
                    conclusion: vec![Literal::Neg(v)],
                },
            ],
        };
        assert_eq!(
            solve_by_enumeration(&contradiction, 24),
            Err(LogicError::NoSolution)
        );
        let free = EquationSystem {
            variables: vec![v],
            equations: vec![],
        };
        assert_eq!(
            solve_by_enumeration(&free, 24),
            Err(LogicError::MultipleSolutions)
        );
    }
}
