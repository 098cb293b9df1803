use std::collections::HashMap;

use crate::device::{DeviceError, Polarity, TransistorSpec};
use crate::float::Real;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NetlistError {
    #[error("duplicate node name {0:?}")]
    DuplicateNode(String),
    #[error("duplicate transistor id {0:?}")]
    DuplicateTransistor(String),
    #[error("unknown node {0:?}")]
    UnknownNode(String),
    #[error("netlist has no supply rail")]
    NoRail,
    #[error("transistor {id}: {source}")]
    BadDevice {
        id: String,
        #[source]
        source: DeviceError,
    },
}

/// Role of a node in the netlist.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NodeKind<F: Real> {
    /// Supply rail pinned to a voltage.
    Rail(F),
    /// Externally driven; must be assigned before solving.
    Input,
    /// Observed node; flagged if it ends up with no driven path.
    Output,
    Internal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NodeId(pub(crate) usize);

/// A switch-abstracted transistor: gate, source, drain and the electrical
/// spec that sets its effective threshold. `source` is the terminal the
/// channel conducts *from*; the built-in primitives orient it toward the
/// driving rail or input.
#[derive(Debug, Clone, PartialEq)]
pub struct Transistor<F: Real> {
    pub id: String,
    pub polarity: Polarity,
    pub gate: NodeId,
    pub source: NodeId,
    pub drain: NodeId,
    pub spec: TransistorSpec<F>,
}

/// A named netlist of nodes and transistors.
#[derive(Debug, Clone, PartialEq)]
pub struct Netlist<F: Real> {
    name: String,
    node_names: Vec<String>,
    node_kinds: Vec<NodeKind<F>>,
    index: HashMap<String, NodeId>,
    transistors: Vec<Transistor<F>>,
}

impl<F: Real> Netlist<F> {
    pub fn new(name: impl Into<String>) -> Self {
        Netlist {
            name: name.into(),
            node_names: Vec::new(),
            node_kinds: Vec::new(),
            index: HashMap::new(),
            transistors: Vec::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    fn add_node(&mut self, name: &str, kind: NodeKind<F>) -> Result<NodeId, NetlistError> {
        if self.index.contains_key(name) {
            return Err(NetlistError::DuplicateNode(name.to_string()));
        }
        let id = NodeId(self.node_names.len());
        self.node_names.push(name.to_string());
        self.node_kinds.push(kind);
        self.index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn rail(&mut self, name: &str, volts: F) -> Result<NodeId, NetlistError> {
        self.add_node(name, NodeKind::Rail(volts))
    }

    pub fn input(&mut self, name: &str) -> Result<NodeId, NetlistError> {
        self.add_node(name, NodeKind::Input)
    }

    pub fn output(&mut self, name: &str) -> Result<NodeId, NetlistError> {
        self.add_node(name, NodeKind::Output)
    }

    pub fn internal(&mut self, name: &str) -> Result<NodeId, NetlistError> {
        self.add_node(name, NodeKind::Internal)
    }

    /// Node id by name, creating an internal node on first use.
    pub fn node_or_internal(&mut self, name: &str) -> NodeId {
        match self.index.get(name) {
            Some(&id) => id,
            None => self.add_node(name, NodeKind::Internal).expect("name is new"),
        }
    }

    pub fn add_transistor(
        &mut self,
        id: impl Into<String>,
        polarity: Polarity,
        gate: NodeId,
        source: NodeId,
        drain: NodeId,
        spec: TransistorSpec<F>,
    ) -> Result<(), NetlistError> {
        let id = id.into();
        if self.transistors.iter().any(|t| t.id == id) {
            return Err(NetlistError::DuplicateTransistor(id));
        }
        spec.validate()
            .map_err(|source| NetlistError::BadDevice {
                id: id.clone(),
                source,
            })?;
        self.transistors.push(Transistor {
            id,
            polarity,
            gate,
            source,
            drain,
            spec,
        });
        Ok(())
    }

    pub fn node_id(&self, name: &str) -> Result<NodeId, NetlistError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| NetlistError::UnknownNode(name.to_string()))
    }

    pub fn node_name(&self, id: NodeId) -> &str {
        &self.node_names[id.0]
    }

    pub fn node_kind(&self, id: NodeId) -> NodeKind<F> {
        self.node_kinds[id.0]
    }

    pub fn node_count(&self) -> usize {
        self.node_names.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = (NodeId, &str, NodeKind<F>)> {
        self.node_names
            .iter()
            .zip(self.node_kinds.iter())
            .enumerate()
            .map(|(i, (n, k))| (NodeId(i), n.as_str(), *k))
    }

    pub fn transistors(&self) -> &[Transistor<F>] {
        &self.transistors
    }

    pub fn transistor(&self, id: &str) -> Option<&Transistor<F>> {
        self.transistors.iter().find(|t| t.id == id)
    }

    /// Must hold before solving: at least one rail, device specs legal.
    pub fn validate(&self) -> Result<(), NetlistError> {
        if !self
            .node_kinds
            .iter()
            .any(|k| matches!(k, NodeKind::Rail(_)))
        {
            return Err(NetlistError::NoRail);
        }
        for t in &self.transistors {
            t.spec.validate().map_err(|source| NetlistError::BadDevice {
                id: t.id.clone(),
                source,
            })?;
        }
        Ok(())
    }

    /// Copy with every back-bias scaled by `factor`; used by the bias
    /// sensitivity sweeps.
    pub fn with_scaled_vbb(&self, factor: F) -> Self {
        let mut out = self.clone();
        for t in &mut out.transistors {
            t.spec.vbb = t.spec.vbb * factor;
        }
        out
    }
}
