//! Game-tree data model.
//!
//! A [`GameTree`] is an immutable rooted tree of decision nodes and
//! payoff-labelled outcomes. Trees are built from the nested [`GameNode`]
//! description, which is validated once on construction:
//!
//! * ids are unique across nodes and outcomes,
//! * every decision node has at least one child,
//! * all outcomes carry one integer payoff per player (at least two players),
//! * preferences are strict: no player receives the same payoff twice.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::Range;

use crate::error::GameError;

/// Id of a node or outcome, unique within one tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// 0-based player index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlayerId(pub usize);

impl fmt::Display for PlayerId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}", self.0)
    }
}

/// A set of outcome ids, ordered for deterministic output.
pub type OutcomeSet = BTreeSet<NodeId>;

/// Nested description of a game, as written in the text format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GameNode {
    Decision {
        id: NodeId,
        owner: PlayerId,
        children: Vec<GameNode>,
    },
    Outcome {
        id: NodeId,
        payoffs: Vec<i64>,
    },
}

impl GameNode {
    pub fn decision(id: u32, owner: usize, children: Vec<GameNode>) -> Self {
        GameNode::Decision {
            id: NodeId(id),
            owner: PlayerId(owner),
            children,
        }
    }

    pub fn outcome(id: u32, payoffs: impl Into<Vec<i64>>) -> Self {
        GameNode::Outcome {
            id: NodeId(id),
            payoffs: payoffs.into(),
        }
    }

    pub fn id(&self) -> NodeId {
        match self {
            GameNode::Decision { id, .. } | GameNode::Outcome { id, .. } => *id,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Kind {
    Decision {
        owner: PlayerId,
        children: Vec<usize>,
    },
    Outcome {
        payoffs: Vec<i64>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Vertex {
    id: NodeId,
    parent: Option<usize>,
    kind: Kind,
    /// Positions in `GameTree::outcomes` of the outcomes below this vertex.
    leaves: Range<usize>,
}

/// Validated, immutable game tree. Vertices are stored in preorder, so the
/// outcomes below any vertex form a contiguous run of the preorder outcome
/// list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameTree {
    players: usize,
    vertices: Vec<Vertex>,
    index: BTreeMap<NodeId, usize>,
    outcomes: Vec<usize>,
}

impl GameTree {
    pub fn new(root: GameNode) -> Result<Self, GameError> {
        let players = first_arity(&root)?;
        if players < 2 {
            return Err(GameError::TooFewPlayers(players));
        }
        let mut tree = GameTree {
            players,
            vertices: Vec::new(),
            index: BTreeMap::new(),
            outcomes: Vec::new(),
        };
        tree.push(&root, None)?;
        tree.check_strict()?;
        Ok(tree)
    }

    fn push(&mut self, node: &GameNode, parent: Option<usize>) -> Result<usize, GameError> {
        let at = self.vertices.len();
        let id = node.id();
        if self.index.insert(id, at).is_some() {
            return Err(GameError::DuplicateId(id));
        }
        let first_leaf = self.outcomes.len();
        match node {
            GameNode::Outcome { payoffs, .. } => {
                if payoffs.len() != self.players {
                    return Err(GameError::PayoffArity {
                        outcome: id,
                        expected: self.players,
                        found: payoffs.len(),
                    });
                }
                self.outcomes.push(at);
                self.vertices.push(Vertex {
                    id,
                    parent,
                    kind: Kind::Outcome {
                        payoffs: payoffs.clone(),
                    },
                    leaves: first_leaf..first_leaf + 1,
                });
            }
            GameNode::Decision {
                owner, children, ..
            } => {
                if children.is_empty() {
                    return Err(GameError::EmptyNode(id));
                }
                if owner.0 >= self.players {
                    return Err(GameError::UnknownOwner {
                        node: id,
                        player: *owner,
                        players: self.players,
                    });
                }
                self.vertices.push(Vertex {
                    id,
                    parent,
                    kind: Kind::Decision {
                        owner: *owner,
                        children: Vec::with_capacity(children.len()),
                    },
                    leaves: first_leaf..first_leaf,
                });
                for child in children {
                    let c = self.push(child, Some(at))?;
                    if let Kind::Decision { children, .. } = &mut self.vertices[at].kind {
                        children.push(c);
                    }
                }
                self.vertices[at].leaves = first_leaf..self.outcomes.len();
            }
        }
        Ok(at)
    }

    fn check_strict(&self) -> Result<(), GameError> {
        for p in 0..self.players {
            let mut seen: HashMap<i64, NodeId> = HashMap::new();
            for &v in &self.outcomes {
                let vertex = &self.vertices[v];
                let pay = self.payoffs_at(v)[p];
                if let Some(first) = seen.insert(pay, vertex.id) {
                    return Err(GameError::TiedPayoffs {
                        player: PlayerId(p),
                        first,
                        second: vertex.id,
                        payoff: pay,
                    });
                }
            }
        }
        Ok(())
    }

    fn payoffs_at(&self, v: usize) -> &[i64] {
        match &self.vertices[v].kind {
            Kind::Outcome { payoffs } => payoffs,
            Kind::Decision { .. } => &[],
        }
    }

    fn at(&self, id: NodeId) -> Result<usize, GameError> {
        self.index.get(&id).copied().ok_or(GameError::UnknownId(id))
    }

    fn vertex(&self, id: NodeId) -> &Vertex {
        &self.vertices[self.index[&id]]
    }

    pub fn players(&self) -> usize {
        self.players
    }

    pub fn root(&self) -> NodeId {
        self.vertices[0].id
    }

    /// Number of nodes and outcomes.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, id: NodeId) -> bool {
        self.index.contains_key(&id)
    }

    /// All ids in preorder.
    pub fn ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.vertices.iter().map(|v| v.id)
    }

    /// Outcome ids in preorder.
    pub fn outcomes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.outcomes.iter().map(|&v| self.vertices[v].id)
    }

    pub fn outcome_count(&self) -> usize {
        self.outcomes.len()
    }

    pub fn all_outcomes(&self) -> OutcomeSet {
        self.outcomes().collect()
    }

    /// Decision-node ids in preorder.
    pub fn decision_nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.vertices
            .iter()
            .filter(|v| matches!(v.kind, Kind::Decision { .. }))
            .map(|v| v.id)
    }

    /// Panics on unknown ids.
    pub fn is_outcome(&self, id: NodeId) -> bool {
        matches!(self.vertex(id).kind, Kind::Outcome { .. })
    }

    /// Owner of a decision node; `None` for outcomes. Panics on unknown ids.
    pub fn owner(&self, id: NodeId) -> Option<PlayerId> {
        match self.vertex(id).kind {
            Kind::Decision { owner, .. } => Some(owner),
            Kind::Outcome { .. } => None,
        }
    }

    /// Children in stored order; empty for outcomes. Panics on unknown ids.
    pub fn children(&self, id: NodeId) -> Vec<NodeId> {
        match &self.vertex(id).kind {
            Kind::Decision { children, .. } => {
                children.iter().map(|&c| self.vertices[c].id).collect()
            }
            Kind::Outcome { .. } => Vec::new(),
        }
    }

    pub fn parent(&self, id: NodeId) -> Option<NodeId> {
        self.vertex(id).parent.map(|p| self.vertices[p].id)
    }

    /// Payoff vector of an outcome; `None` for decision nodes and unknown ids.
    pub fn payoffs(&self, id: NodeId) -> Option<&[i64]> {
        match &self.vertices[*self.index.get(&id)?].kind {
            Kind::Outcome { payoffs } => Some(payoffs),
            Kind::Decision { .. } => None,
        }
    }

    /// Payoff of `player` at outcome `id`. Panics if `id` is not an outcome.
    pub fn payoff(&self, id: NodeId, player: PlayerId) -> i64 {
        self.payoffs(id).expect("payoff of a decision node")[player.0]
    }

    /// Outcomes descending from `id` (reflexive for outcomes).
    pub fn descendants(&self, id: NodeId) -> Result<OutcomeSet, GameError> {
        let v = self.at(id)?;
        Ok(self.descendant_outcomes(v).collect())
    }

    fn descendant_outcomes(&self, v: usize) -> impl Iterator<Item = NodeId> + '_ {
        self.outcomes[self.vertices[v].leaves.clone()]
            .iter()
            .map(|&o| self.vertices[o].id)
    }

    /// Outcomes below `id` in preorder, without allocating a set.
    pub fn outcomes_below(&self, id: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.descendant_outcomes(self.index[&id])
    }

    /// Whether outcome (or node) `descendant` lies in the subtree of `ancestor`.
    pub fn is_descendant(&self, descendant: NodeId, ancestor: NodeId) -> bool {
        let from = self.index[&descendant];
        let target = self.index[&ancestor];
        // outcomes: leaf-range containment
        if let Kind::Outcome { .. } = self.vertices[from].kind {
            let pos = self.vertices[from].leaves.start;
            return self.vertices[target].leaves.contains(&pos);
        }
        let mut cur = Some(from);
        while let Some(v) = cur {
            if v == target {
                return true;
            }
            cur = self.vertices[v].parent;
        }
        false
    }

    /// The child of `node` whose subtree contains `descendant`.
    pub fn child_towards(&self, node: NodeId, descendant: NodeId) -> Option<NodeId> {
        self.children(node)
            .into_iter()
            .find(|&c| self.is_descendant(descendant, c))
    }

    /// Root-to-`id` path.
    pub fn path_to(&self, id: NodeId) -> Result<Path, GameError> {
        let mut v = Some(self.at(id)?);
        let mut nodes = Vec::new();
        while let Some(x) = v {
            nodes.push(self.vertices[x].id);
            v = self.vertices[x].parent;
        }
        nodes.reverse();
        Ok(Path(nodes))
    }

    /// Length of the longest root-to-outcome path, counted in edges.
    pub fn depth(&self) -> usize {
        self.outcomes
            .iter()
            .map(|&o| {
                let mut d = 0;
                let mut v = self.vertices[o].parent;
                while let Some(p) = v {
                    d += 1;
                    v = self.vertices[p].parent;
                }
                d
            })
            .max()
            .unwrap_or(0)
    }

    /// Nested description of the subtree at `id`.
    pub fn node_at(&self, id: NodeId) -> Result<GameNode, GameError> {
        Ok(self.describe(self.at(id)?))
    }

    /// Nested description of the whole tree; `GameTree::new(t.to_node())`
    /// reproduces `t`.
    pub fn to_node(&self) -> GameNode {
        self.describe(0)
    }

    fn describe(&self, v: usize) -> GameNode {
        let vertex = &self.vertices[v];
        match &vertex.kind {
            Kind::Outcome { payoffs } => GameNode::Outcome {
                id: vertex.id,
                payoffs: payoffs.clone(),
            },
            Kind::Decision { owner, children } => GameNode::Decision {
                id: vertex.id,
                owner: *owner,
                children: children.iter().map(|&c| self.describe(c)).collect(),
            },
        }
    }

    /// The subgame rooted at `id`, keeping the original player count.
    pub fn subtree(&self, id: NodeId) -> Result<GameTree, GameError> {
        let node = self.node_at(id)?;
        let mut sub = GameTree::new(node)?;
        sub.players = self.players;
        Ok(sub)
    }

    /// `n<id>` for decision nodes, `o<id>` for outcomes.
    pub fn label(&self, id: NodeId) -> String {
        if self.is_outcome(id) {
            format!("o{id}")
        } else {
            format!("n{id}")
        }
    }

    /// Space-separated labels of a set or sequence of ids.
    pub fn labels<'a>(&self, ids: impl IntoIterator<Item = &'a NodeId>) -> String {
        ids.into_iter()
            .map(|&id| self.label(id))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn first_arity(node: &GameNode) -> Result<usize, GameError> {
    match node {
        GameNode::Outcome { payoffs, .. } => Ok(payoffs.len()),
        GameNode::Decision { id, children, .. } => match children.first() {
            Some(child) => first_arity(child),
            None => Err(GameError::EmptyNode(*id)),
        },
    }
}

/// A root-to-node sequence; complete equilibrium paths end in an outcome.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path(pub Vec<NodeId>);

impl Path {
    pub fn nodes(&self) -> &[NodeId] {
        &self.0
    }

    pub fn last(&self) -> NodeId {
        *self.0.last().expect("empty path")
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Starts at the root, follows parent/child links, and ends at an outcome.
    pub fn is_complete_in(&self, tree: &GameTree) -> bool {
        let Some(&first) = self.0.first() else {
            return false;
        };
        if first != tree.root() || !self.0.iter().all(|&n| tree.contains(n)) {
            return false;
        }
        let links = self.0.windows(2).all(|w| tree.parent(w[1]) == Some(w[0]));
        let inner = self.0[..self.0.len() - 1]
            .iter()
            .all(|&n| !tree.is_outcome(n));
        links && inner && tree.is_outcome(self.last())
    }
}

impl From<Vec<NodeId>> for Path {
    fn from(nodes: Vec<NodeId>) -> Self {
        Path(nodes)
    }
}
