use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VarKind {
    Free,
    /// Defines a component of the SNC divisor `E`.
    Divisorial,
    /// Coordinate on the base; never a center variable.
    Parameter,
}

impl VarKind {
    pub fn parse(text: &str) -> Option<VarKind> {
        match text.trim() {
            "free" => Some(VarKind::Free),
            "divisorial" | "div" => Some(VarKind::Divisorial),
            "parameter" | "param" => Some(VarKind::Parameter),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            VarKind::Free => "free",
            VarKind::Divisorial => "divisorial",
            VarKind::Parameter => "parameter",
        }
    }
}

/// Ordered list of variable names with their kinds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarContext {
    names: Vec<String>,
    kinds: Vec<VarKind>,
}

impl VarContext {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = (S, VarKind)>) -> Result<Self> {
        let mut ctx = VarContext {
            names: Vec::new(),
            kinds: Vec::new(),
        };
        for (name, kind) in vars {
            ctx.push(name, kind)?;
        }
        Ok(ctx)
    }

    /// All variables free.
    pub fn free(names: &[&str]) -> Self {
        Self::new(names.iter().map(|n| (*n, VarKind::Free))).expect("distinct names")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn kind(&self, i: usize) -> VarKind {
        self.kinds[i]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn push(&mut self, name: impl Into<String>, kind: VarKind) -> Result<usize> {
        let name = name.into();
        if self.index(&name).is_some() {
            return Err(Error::DuplicateVariable(name));
        }
        self.names.push(name);
        self.kinds.push(kind);
        Ok(self.names.len() - 1)
    }

    pub fn set_kind(&mut self, i: usize, kind: VarKind) {
        self.kinds[i] = kind;
    }

    pub fn is_divisorial(&self, i: usize) -> bool {
        self.kinds[i] == VarKind::Divisorial
    }

    pub fn is_parameter(&self, i: usize) -> bool {
        self.kinds[i] == VarKind::Parameter
    }

    /// Mask of the variables that may carry a center (everything but parameters).
    pub fn center_mask(&self) -> Vec<bool> {
        self.kinds.iter().map(|k| *k != VarKind::Parameter).collect()
    }

    pub fn divisorial_vars(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.is_divisorial(i)).collect()
    }

    /// First unused name of the form `{prefix}{k}`, k = 1, 2, ...
    pub fn fresh_name(&self, prefix: &str) -> String {
        (1..)
            .map(|k| format!("{prefix}{k}"))
            .find(|n| self.index(n).is_none())
            .expect("unbounded")
    }
}
