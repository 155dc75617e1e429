use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::lattice::{EdgeKey, LocalOperator, PatchGeometry, Site, StringSpec};
use crate::linalg::{C64, ONE};
use crate::sim::{logical_basis_state, Branch, PureState};

/// A patch placed on the board.
///
/// `base` is always a rectangular geometry; `rotations` counts transversal
/// Fourier transforms applied since, and only its parity matters.
#[derive(Clone, Debug)]
pub struct Patch {
    pub name: String,
    base: PatchGeometry,
    rotated: Option<PatchGeometry>,
}

impl Patch {
    pub fn new(name: impl Into<String>, base: PatchGeometry) -> Self {
        Patch { name: name.into(), base, rotated: None }
    }

    /// Geometry currently encoding the patch.
    pub fn geometry(&self) -> &PatchGeometry {
        self.rotated.as_ref().unwrap_or(&self.base)
    }

    pub fn base(&self) -> &PatchGeometry {
        &self.base
    }

    pub fn is_rotated(&self) -> bool {
        self.rotated.is_some()
    }

    pub(crate) fn toggle_rotation(&mut self) {
        self.rotated = match self.rotated {
            Some(_) => None,
            None => Some(self.base.rotated()),
        };
    }
}

/// Several patches sharing one state vector. Qudit `i` of the state is the
/// edge `keys[i]` of the global grid.
#[derive(Clone, Debug)]
pub struct Board {
    d: usize,
    budget: usize,
    keys: Vec<EdgeKey>,
    patches: Vec<Patch>,
    state: PureState,
}

impl Board {
    pub fn new(d: usize, budget: usize) -> Result<Self> {
        Ok(Board { d, budget, keys: Vec::new(), patches: Vec::new(), state: PureState::from_amps(d, 0, vec![ONE])? })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn state(&self) -> &PureState {
        &self.state
    }

    pub fn keys(&self) -> &[EdgeKey] {
        &self.keys
    }

    pub fn patches(&self) -> &[Patch] {
        &self.patches
    }

    pub fn patch(&self, name: &str) -> Result<&Patch> {
        self.patches.iter().find(|p| p.name == name).ok_or_else(|| Error::Procedure(format!("no patch named {name:?}")))
    }

    pub(crate) fn patch_mut(&mut self, name: &str) -> Result<&mut Patch> {
        self.patches.iter_mut().find(|p| p.name == name).ok_or_else(|| Error::Procedure(format!("no patch named {name:?}")))
    }

    pub fn qudit(&self, key: EdgeKey) -> Result<usize> {
        self.keys.iter().position(|k| *k == key).ok_or_else(|| Error::Procedure(format!("edge {key:?} is not on the board")))
    }

    fn local_to_board(&self, g: &PatchGeometry) -> Result<Vec<usize>> {
        g.edges().iter().map(|k| self.qudit(*k)).collect()
    }

    /// Adds a patch together with its (normalized) state.
    pub fn add_patch(&mut self, patch: Patch, state: &PureState) -> Result<()> {
        if self.patches.iter().any(|p| p.name == patch.name) {
            return Err(Error::Procedure(format!("patch name {:?} already used", patch.name)));
        }
        let g = patch.geometry();
        if state.qudits() != g.edge_count() || state.d() != self.d {
            return Err(Error::Shape(format!("state of {} qudits for a patch of {} edges", state.qudits(), g.edge_count())));
        }
        if let Some(k) = g.edges().iter().find(|k| self.keys.contains(k)) {
            return Err(Error::Procedure(format!("patch {:?} overlaps the board at {k:?}", patch.name)));
        }
        self.state = self.state.tensor(state, self.budget)?;
        self.keys.extend_from_slice(g.edges());
        self.patches.push(patch);
        Ok(())
    }

    pub fn add_logical(&mut self, patch: Patch, k: i64) -> Result<()> {
        let s = logical_basis_state(patch.geometry(), k, self.budget)?;
        self.add_patch(patch, &s)
    }

    pub(crate) fn remove_patch_entry(&mut self, name: &str) -> Result<Patch> {
        let i = self.patches.iter().position(|p| p.name == name).ok_or_else(|| Error::Procedure(format!("no patch named {name:?}")))?;
        Ok(self.patches.remove(i))
    }

    pub(crate) fn insert_patch_entry(&mut self, index: usize, patch: Patch) {
        let i = index.min(self.patches.len());
        self.patches.insert(i, patch);
    }

    pub(crate) fn patch_index(&self, name: &str) -> Result<usize> {
        self.patches.iter().position(|p| p.name == name).ok_or_else(|| Error::Procedure(format!("no patch named {name:?}")))
    }

    pub fn replace_state(&mut self, state: PureState) {
        self.state = state;
    }

    /// Operator of patch `name` with support moved to board qudits.
    pub fn lift(&self, name: &str, op: &LocalOperator) -> Result<LocalOperator> {
        let map = self.local_to_board(self.patch(name)?.geometry())?;
        let support =
            op.support.iter().map(|e| map.get(*e).copied().ok_or(Error::Support { index: *e, edges: map.len() })).collect::<Result<_>>()?;
        Ok(LocalOperator { support, ..op.clone() })
    }

    pub fn lift_site(&self, g: &PatchGeometry, site: &Site) -> Result<Site> {
        let map = self.local_to_board(g)?;
        Ok(Site { kind: site.kind, pos: site.pos, edges: site.edges.iter().map(|(e, s)| (map[*e], *s)).collect() })
    }

    pub fn apply(&mut self, name: &str, op: &LocalOperator) -> Result<()> {
        let lifted = self.lift(name, op)?;
        self.state.apply(&lifted)
    }

    /// Applies a string operator of a patch geometry not yet registered on
    /// the board (edges are looked up by key).
    pub fn apply_string(&mut self, g: &PatchGeometry, s: &StringSpec, label: i64) -> Result<()> {
        let map = self.local_to_board(g)?;
        let op = s.operator(self.d, label);
        let support = op.support.iter().map(|e| map[*e]).collect();
        self.state.apply(&LocalOperator { support, ..op })
    }

    /// Appends a fresh edge in state `v`.
    pub fn adjoin_edge(&mut self, key: EdgeKey, v: &[C64]) -> Result<()> {
        if self.keys.contains(&key) {
            return Err(Error::Procedure(format!("edge {key:?} already on the board")));
        }
        self.state = self.state.adjoin(v, self.budget)?;
        self.keys.push(key);
        Ok(())
    }

    /// Turns measurement branches of the board state into boards.
    pub fn with_branches(&self, branches: Vec<Branch>, removed: Option<EdgeKey>) -> Vec<(i64, Board)> {
        let keys = match removed {
            Some(k) => self.keys.iter().copied().filter(|x| *x != k).collect(),
            None => self.keys.clone(),
        };
        branches
            .into_iter()
            .map(|b| {
                (b.outcome, Board { d: self.d, budget: self.budget, keys: keys.clone(), patches: self.patches.clone(), state: b.state })
            })
            .collect()
    }

    /// Registers a geometry under `name`, replacing the listed patches. All of
    /// its edges must already be on the board.
    pub(crate) fn regroup(&mut self, remove: &[&str], add: Vec<(usize, Patch)>) -> Result<()> {
        for r in remove {
            self.remove_patch_entry(r)?;
        }
        for (i, p) in add {
            self.local_to_board(p.geometry())?;
            self.insert_patch_entry(i, p);
        }
        let mut owned: HashMap<EdgeKey, usize> = HashMap::new();
        for p in &self.patches {
            for k in p.geometry().edges() {
                *owned.entry(*k).or_default() += 1;
            }
        }
        if owned.len() != self.keys.len() || owned.values().any(|c| *c != 1) {
            return Err(Error::Procedure("patches no longer partition the board".into()));
        }
        Ok(())
    }

    /// Logical basis product state of the listed patches in board qudit
    /// order; the patches must cover the board.
    pub fn logical_product(&self, names: &[String], digits: &[usize]) -> Result<PureState> {
        let mut s = PureState::from_amps(self.d, 0, vec![ONE])?;
        let mut order = Vec::new();
        for (name, k) in names.iter().zip(digits) {
            let g = self.patch(name)?.geometry();
            s = s.tensor(&logical_basis_state(g, *k as i64, self.budget)?, self.budget)?;
            order.extend(self.local_to_board(g)?);
        }
        if order.len() != self.keys.len() {
            return Err(Error::Procedure("output patches do not cover the board".into()));
        }
        // s has qudit i = board qudit order[i]; invert
        let mut inverse = vec![0; order.len()];
        for (i, b) in order.iter().enumerate() {
            inverse[*b] = i;
        }
        s.permute(&inverse)
    }
}
